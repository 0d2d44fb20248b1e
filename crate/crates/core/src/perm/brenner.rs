//! Every even permutation of `4n` points (n ≥ 2) is a product of four
//! fixed-point-free involutions.
//!
//! A permutation is a product of two fixed-point-free involutions exactly
//! when each cycle length occurs an even number of times: the dihedral group
//! generated by the two involutions splits every orbit into two equal cycles
//! of the product, and [`split_pair`] inverts that.

use alloc::vec::Vec;
use hashbrown::HashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Perm;
use crate::error::{Error, Result};
use crate::witness::{Tag, Witness};

/// Retry cap for the randomised search above eight points.
pub const DEFAULT_SEARCH_CAP: u64 = 200_000;

/// All fixed-point-free involutions of `n` points, lexicographic by images.
pub fn fpf_involutions(n: usize) -> Vec<Perm> {
    fn rec(img: &mut Vec<u32>, out: &mut Vec<Perm>) {
        let Some(i) = img.iter().position(|&x| x == u32::MAX) else {
            out.push(Perm::from_u32(img.clone()));
            return;
        };
        for j in i + 1..img.len() {
            if img[j] == u32::MAX {
                img[i] = j as u32;
                img[j] = i as u32;
                rec(img, out);
                img[j] = u32::MAX;
            }
        }
        img[i] = u32::MAX;
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut alloc::vec![u32::MAX; n], &mut out);
    }
    out.sort();
    out
}

/// `g = a·b` with `a, b` fixed-point-free involutions, if possible.
pub fn split_pair(g: &Perm) -> Option<(Perm, Perm)> {
    let n = g.degree();
    let mut by_len: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); n + 1];
    for c in g.all_cycles() {
        by_len[c.len()].push(c);
    }
    let mut a = alloc::vec![0u32; n];
    let mut b = alloc::vec![0u32; n];
    for cs in &by_len {
        if cs.len() % 2 == 1 {
            return None;
        }
        for pair in cs.chunks(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let l = x.len();
            for i in 0..l {
                // a: x_i <-> y_{-i}, b: x_i <-> y_{-i-1}
                let ya = y[(l - i) % l];
                let yb = y[(2 * l - i - 1) % l];
                a[x[i]] = ya as u32;
                a[ya] = x[i] as u32;
                b[x[i]] = yb as u32;
                b[yb] = x[i] as u32;
            }
        }
    }
    Some((Perm::from_u32(a), Perm::from_u32(b)))
}

/// True iff `g` is a product of two fixed-point-free involutions.
pub fn in_class_square(g: &Perm) -> bool {
    let t = g.cycle_type();
    let mut i = 0;
    while i < t.len() {
        let j = t[i..].iter().take_while(|&&x| x == t[i]).count();
        if j % 2 == 1 {
            return false;
        }
        i += j;
    }
    true
}

/// Brenner factorisation engine for a fixed degree.
///
/// On eight points it uses the full table of products `C·C` and scans it in
/// first-occurrence order; above that it samples `z ∈ C·C` at random.
pub struct Brenner {
    n: usize,
    class: Vec<Perm>,
    /// packed product -> first (i, j) with class[i]·class[j] equal to it
    table: HashMap<u64, (u16, u16)>,
    order: Vec<u64>,
    cap: u64,
    seed: u64,
}

impl Brenner {
    /// `n` is the number of points, a multiple of 4 and at least 8.
    pub fn new(n: usize) -> Result<Brenner> {
        Brenner::with_search(n, DEFAULT_SEARCH_CAP, 0)
    }

    pub fn with_search(n: usize, cap: u64, seed: u64) -> Result<Brenner> {
        if !n.is_multiple_of(4) || n < 8 {
            return Err(Error::Invalid(alloc::format!("Brenner needs 4n points with n >= 2, got {n}")));
        }
        let mut table = HashMap::new();
        let mut order = Vec::new();
        let class = if n == 8 { fpf_involutions(8) } else { Vec::new() };
        for (i, a) in class.iter().enumerate() {
            for (j, b) in class.iter().enumerate() {
                let k = a.mul(b).pack();
                table.entry(k).or_insert_with(|| {
                    order.push(k);
                    (i as u16, j as u16)
                });
            }
        }
        Ok(Brenner { n, class, table, order, cap, seed })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The fixed-point-free involutions when the table is built.
    pub fn class(&self) -> &[Perm] {
        &self.class
    }

    /// Size of `C·C` when the table is built.
    pub fn class_square_size(&self) -> usize {
        self.table.len()
    }

    fn lookup(&self, g: &Perm) -> Option<(Perm, Perm)> {
        if self.n == 8 {
            let &(i, j) = self.table.get(&g.pack())?;
            Some((self.class[i as usize].clone(), self.class[j as usize].clone()))
        } else {
            split_pair(g)
        }
    }

    /// `phi = π1·π2·π3·π4` with every πi of type `2^(n/2)`.
    pub fn factor(&self, phi: &Perm) -> Result<Witness<Perm>> {
        if phi.degree() != self.n {
            return Err(Error::DegreeMismatch(phi.degree(), self.n));
        }
        if !phi.is_even() {
            return Err(Error::NotEven);
        }
        let mut w = Witness::new(phi.clone());
        let (x, y) = self.split(phi)?;
        for p in [x.0, x.1, y.0, y.1] {
            w.push(p, Tag::Class);
        }
        Ok(w)
    }

    fn split(&self, phi: &Perm) -> Result<((Perm, Perm), (Perm, Perm))> {
        if let Some(ab) = self.lookup(phi) {
            let s = if self.n == 8 { self.class[0].clone() } else { fpf_involutions_first(self.n) };
            return Ok((ab, (s.clone(), s)));
        }
        if self.n == 8 {
            for &k in &self.order {
                let z = Perm::unpack(8, k);
                if let Some(cd) = self.lookup(&z.inverse().mul(phi)) {
                    return Ok((self.lookup(&z).unwrap(), cd));
                }
            }
            return Err(Error::SearchExhausted(self.order.len() as u64));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut pts: Vec<usize> = (0..self.n).collect();
        let mut rand_inv = |rng: &mut ChaCha8Rng| {
            pts.shuffle(rng);
            let mut img = alloc::vec![0u32; self.n];
            for c in pts.chunks(2) {
                img[c[0]] = c[1] as u32;
                img[c[1]] = c[0] as u32;
            }
            Perm::from_u32(img)
        };
        for _ in 0..self.cap {
            let a = rand_inv(&mut rng);
            let b = rand_inv(&mut rng);
            let z = a.mul(&b);
            if let Some(cd) = split_pair(&z.inverse().mul(phi)) {
                return Ok(((a, b), cd));
            }
        }
        Err(Error::SearchExhausted(self.cap))
    }
}

/// `(1 2)(3 4)..`, the least fixed-point-free involution.
fn fpf_involutions_first(n: usize) -> Perm {
    Perm::from_u32((0..n as u32).map(|i| i ^ 1).collect())
}

/// One-shot convenience wrapper around [`Brenner`].
pub fn brenner_factor(phi: &Perm) -> Result<Witness<Perm>> {
    Brenner::new(phi.degree())?.factor(phi)
}

/// `C·C` by brute force; used to cross-check the cycle-type criterion.
pub fn class_square_by_enumeration(n: usize) -> hashbrown::HashSet<u64> {
    let c = fpf_involutions(n);
    c.iter().flat_map(|a| c.iter().map(move |b| a.mul(b).pack())).collect()
}
