//! Covering a special linear group by powers of a conjugacy class.
//!
//! Elements are packed into `u128` codes (see [`Mat::pack`]) and multiplied
//! on small stack arrays; over GF(2) rows are bit masks.

use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use super::{sl_order, Mat};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};

/// Default cap on the group order for exhaustive work.
pub const DEFAULT_MAX_ORDER: u128 = 20_000_000;

/// Multiplication on packed codes of `d×d` matrices.
#[derive(Clone)]
pub struct Packed {
    f: Field,
    d: usize,
    bits: u32,
}

impl Packed {
    pub fn new(f: &Field, d: usize) -> Result<Packed> {
        let bits = Mat::pack_bits(f.q());
        if bits as usize * d * d > 128 || d > 8 {
            return Err(Error::TooLarge(alloc::format!("{d}x{d} over GF({}) does not pack", f.q())));
        }
        Ok(Packed { f: f.clone(), d, bits })
    }

    #[inline]
    fn unpack(&self, c: u128, out: &mut [Elt; 64]) {
        let n = self.d * self.d;
        let mask = (1u128 << self.bits) - 1;
        for (i, o) in out.iter_mut().enumerate().take(n) {
            *o = ((c >> (self.bits as usize * (n - 1 - i))) & mask) as Elt;
        }
    }

    #[inline]
    fn pack(&self, e: &[Elt; 64]) -> u128 {
        e[..self.d * self.d].iter().fold(0u128, |acc, &x| (acc << self.bits) | x as u128)
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let d = self.d;
        if self.bits == 1 && self.f.q() == 2 {
            // row i of a product: xor of rows k of b selected by row i of a
            let n = d * d;
            let row = |c: u128, i: usize| ((c >> (n - d * (i + 1))) & ((1 << d) - 1)) as u32;
            let mut out = 0u128;
            for i in 0..d {
                let ra = row(a, i);
                let mut r = 0u32;
                for k in 0..d {
                    if ra >> (d - 1 - k) & 1 == 1 {
                        r ^= row(b, k);
                    }
                }
                out = (out << d) | r as u128;
            }
            return out;
        }
        let mut x = [0; 64];
        let mut y = [0; 64];
        let mut z = [0; 64];
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let f = &self.f;
        for i in 0..d {
            for k in 0..d {
                let t = x[i * d + k];
                if t == 0 {
                    continue;
                }
                for j in 0..d {
                    let u = y[k * d + j];
                    if u != 0 {
                        z[i * d + j] = f.add(z[i * d + j], f.mul(t, u));
                    }
                }
            }
        }
        self.pack(&z)
    }

    pub fn code(&self, m: &Mat) -> u128 {
        m.pack().expect("checked in new")
    }

    pub fn mat(&self, c: u128) -> Mat {
        Mat::unpack(&self.f, self.d, c)
    }
}

/// Elementary matrices `I + E_ij`, generating `SL(d, p)`, plus scalar
/// multiples by a primitive element for non-prime fields.
fn sl_generators(f: &Field, d: usize) -> Vec<Mat> {
    let mut g = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for t in 0..f.k() {
                    g.push(Mat::elementary(f, d, i, j, f.p().pow(t)));
                }
            }
        }
    }
    g
}

/// Conjugacy class of `rep` in `SL(d, q)`, by orbit search.
pub fn conjugacy_class(rep: &Mat) -> Vec<u128> {
    let pk = Packed::new(rep.field(), rep.dim()).expect("packable");
    let gens: Vec<(u128, u128)> =
        sl_generators(rep.field(), rep.dim()).iter().map(|g| (pk.code(g), pk.code(&g.inv()))).collect();
    let start = pk.code(rep);
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(start);
    let mut stack = alloc::vec![start];
    while let Some(x) = stack.pop() {
        for &(g, gi) in &gens {
            let y = pk.mul(pk.mul(g, x), gi);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut v: Vec<u128> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Every element of `SL(d, q)` as packed codes, by closure under generators.
pub fn enumerate_group(f: &Field, d: usize, max_order: u128) -> Result<Vec<u128>> {
    let order = sl_order(f.q() as u64, d as u32);
    if order > max_order {
        return Err(Error::GroupTooLarge(order));
    }
    let pk = Packed::new(f, d)?;
    let gens: Vec<u128> = sl_generators(f, d).iter().map(|g| pk.code(g)).collect();
    let id = pk.code(&Mat::identity(f, d));
    let mut seen: HashSet<u128> = HashSet::with_capacity(order as usize);
    seen.insert(id);
    let mut stack = alloc::vec![id];
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = pk.mul(g, x);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    let mut v: Vec<u128> = seen.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

/// Distances from the identity in the Cayley graph on a class, and the
/// exact product sets `C^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringReport {
    pub q: u32,
    pub d: usize,
    pub group_order: u128,
    pub class_size: usize,
    /// number of elements at distance k, k = 0, 1, ..
    pub profile: Vec<usize>,
    pub radius: usize,
    /// `|C^k|` for k = 1..=kmax
    pub power_sizes: Vec<usize>,
    /// whether `C^k` contains every non-central element, k = 1..=kmax
    pub power_covers_noncentral: Vec<bool>,
}

impl CoveringReport {
    /// Least k with `C^k = G`.
    pub fn covering_number(&self) -> Option<usize> {
        self.power_sizes.iter().position(|&s| s as u128 == self.group_order).map(|i| i + 1)
    }

    /// Least k with `C^k ⊇ G ∖ Z(G)`.
    pub fn noncentral_covering_number(&self) -> Option<usize> {
        self.power_covers_noncentral.iter().position(|&b| b).map(|i| i + 1)
    }

}

fn is_scalar(m: &Mat) -> bool {
    m.is_diagonal() && (1..m.dim()).all(|i| m.get(i, i) == m.get(0, 0))
}

/// Exhaustive BFS and exact powers `C^1..C^kmax` of the class of `rep`.
pub fn class_covering_radius(rep: &Mat, kmax: usize, max_order: u128) -> Result<CoveringReport> {
    let f = rep.field().clone();
    let d = rep.dim();
    if rep.det() != 1 {
        return Err(Error::NotSpecial);
    }
    if is_scalar(rep) {
        return Err(Error::Invalid("class representative must be non-central".into()));
    }
    let group = enumerate_group(&f, d, max_order)?;
    let pk = Packed::new(&f, d)?;
    let index: HashMap<u128, u32> = group.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let class = conjugacy_class(rep);
    let n = group.len();
    let id = pk.code(&Mat::identity(&f, d));

    let mut dist = alloc::vec![u8::MAX; n];
    dist[index[&id] as usize] = 0;
    let mut frontier = alloc::vec![id];
    let mut profile = alloc::vec![1usize];
    let mut k = 0u8;
    while !frontier.is_empty() {
        k += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &c in &class {
                let y = pk.mul(x, c);
                let i = index[&y] as usize;
                if dist[i] == u8::MAX {
                    dist[i] = k;
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            profile.push(next.len());
        }
        frontier = next;
    }

    let central: Vec<usize> = group
        .iter()
        .enumerate()
        .filter(|(_, &c)| is_scalar(&pk.mat(c)))
        .map(|(i, _)| i)
        .collect();
    let mut power = alloc::vec![false; n];
    for &c in &class {
        power[index[&c] as usize] = true;
    }
    let mut power_sizes = Vec::new();
    let mut covers = Vec::new();
    for step in 1..=kmax {
        if step > 1 {
            let mut next = alloc::vec![false; n];
            for (i, _) in power.iter().enumerate().filter(|(_, &b)| b) {
                let x = group[i];
                for &c in &class {
                    next[index[&pk.mul(x, c)] as usize] = true;
                }
            }
            power = next;
        }
        let size = power.iter().filter(|&&b| b).count();
        let missing_noncentral = power.iter().enumerate().filter(|(i, &b)| !b && !central.contains(i)).count();
        power_sizes.push(size);
        covers.push(missing_noncentral == 0);
        if size == n && step >= 2 {
            // C^k = G implies C^(k+1) = G
            while power_sizes.len() < kmax {
                power_sizes.push(n);
                covers.push(true);
            }
            break;
        }
    }
    Ok(CoveringReport {
        q: f.q(),
        d,
        group_order: n as u128,
        class_size: class.len(),
        radius: profile.len() - 1,
        profile,
        power_sizes,
        power_covers_noncentral: covers,
    })
}

/// Sampled check for groups too large to enumerate: each sample is shown
/// to lie within distance `bound` by meeting in the middle of two balls.
/// Returns the largest distance seen, or `None` if some sample is farther.
pub fn sampled_distance_bound<R: rand::Rng>(rep: &Mat, samples: usize, rng: &mut R) -> Option<usize> {
    let f = rep.field().clone();
    let d = rep.dim();
    let pk = Packed::new(&f, d).ok()?;
    let class = conjugacy_class(rep);
    let id = pk.code(&Mat::identity(&f, d));
    // balls of radius 1 and 2
    let mut ball: HashMap<u128, u8> = HashMap::new();
    ball.insert(id, 0);
    for &c in &class {
        ball.insert(c, 1);
    }
    let mut b2 = Vec::new();
    for &a in &class {
        for &c in &class {
            let y = pk.mul(a, c);
            if !ball.contains_key(&y) {
                b2.push(y);
            }
        }
    }
    for y in b2 {
        ball.entry(y).or_insert(2);
    }
    let ball_list: Vec<(u128, u8)> = ball.iter().map(|(&k, &v)| (k, v)).collect();
    let mut worst = 0usize;
    for _ in 0..samples {
        let g = pk.code(&super::random_sl(&f, d, rng));
        if let Some(&dg) = ball.get(&g) {
            worst = worst.max(dg as usize);
            continue;
        }
        // g = x·y with x, y in the ball: y = x⁻¹ g, and x⁻¹ is in the ball too
        let mut best: Option<usize> = None;
        for &(x, dx) in &ball_list {
            if let Some(&dy) = ball.get(&pk.mul(x, g)) {
                let t = dx as usize + dy as usize;
                best = Some(best.map_or(t, |b: usize| b.min(t)));
                if t <= 3 {
                    break;
                }
            }
        }
        worst = worst.max(best?);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn packed_mul_agrees() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (q, d) in [(2u64, 4usize), (3, 4), (4, 3), (2, 8)] {
            let f = Field::of_order(q).unwrap();
            let pk = Packed::new(&f, d).unwrap();
            for _ in 0..100 {
                let a = crate::matrix::random_gl(&f, d, &mut rng);
                let b = crate::matrix::random_gl(&f, d, &mut rng);
                assert_eq!(pk.mat(pk.mul(pk.code(&a), pk.code(&b))), a.mul(&b));
            }
        }
    }

    #[test]
    fn group_enumeration() {
        let f = Field::prime(2).unwrap();
        assert_eq!(enumerate_group(&f, 3, DEFAULT_MAX_ORDER).unwrap().len(), 168);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(enumerate_group(&f3, 2, DEFAULT_MAX_ORDER).unwrap().len(), 24);
        assert_eq!(enumerate_group(&f3, 4, 1000), Err(Error::GroupTooLarge(sl_order(3, 4))));
    }

    #[test]
    fn sl42_covering() {
        let f = Field::prime(2).unwrap();
        let rep = Mat::perm(&f, &Perm::parse_cycles(4, "(1 2)(3 4)").unwrap());
        let r = class_covering_radius(&rep, 10, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.group_order, 20160);
        assert_eq!(r.profile[1], r.class_size);
        assert_eq!(r.profile.iter().sum::<usize>(), 20160);
        assert!(r.radius <= 5);
        assert!(r.noncentral_covering_number().unwrap() <= 5);
        assert!(r.power_covers_noncentral[4]);
        assert_eq!(r.power_sizes[9], 20160);
        assert!(class_covering_radius(&Mat::identity(&f, 4), 3, DEFAULT_MAX_ORDER).is_err());
    }
}
