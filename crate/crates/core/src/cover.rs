//! Covers of a finite window `G_0 × .. × G_{N-1}` of a group sequence, the
//! star product, bounded closures and the escape construction.
//!
//! The window stands in for the whole sequence: indices past `N` are
//! treated as trivially satisfied, and every counting hypothesis is checked
//! inside the window only.
//!
//! Elements are `u128` codes whose numeric order is the order used for
//! "least element" choices:
//! - `sym(k)`, `alt(k)` (`k ≤ 25`): images `π(0)..π(k-1)`, 5 bits each, first
//!   image most significant, so codes sort lexicographically;
//! - `cyclic(n)`: residues `0..n`;
//! - `sl(d,q)`: matrix entries via [`Mat::pack`], row-major, first entry most
//!   significant.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashSet;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{self, Mat};
use crate::perm::{self, Perm};

const BITS: u32 = 5;
const MAX_DEGREE: usize = 25;

/// Default cap on the number of covers a closure may hold.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// One group of the window.
#[derive(Clone, Debug, PartialEq)]
pub enum Group {
    Sym(usize),
    Alt(usize),
    Cyclic(u64),
    Sl { d: usize, f: Field },
}

fn pack_images(img: &[usize]) -> u128 {
    img.iter().fold(0u128, |acc, &x| (acc << BITS) | x as u128)
}

fn unpack_images(k: usize, code: u128) -> [u8; MAX_DEGREE] {
    let mut out = [0u8; MAX_DEGREE];
    for (i, o) in out.iter_mut().enumerate().take(k) {
        *o = ((code >> (BITS as usize * (k - 1 - i))) & 31) as u8;
    }
    out
}

impl Group {
    pub fn sym(k: usize) -> Result<Group> {
        Group::check_degree(k)?;
        Ok(Group::Sym(k))
    }

    pub fn alt(k: usize) -> Result<Group> {
        Group::check_degree(k)?;
        Ok(Group::Alt(k))
    }

    pub fn sl(d: usize, q: u64) -> Result<Group> {
        let f = Field::of_order(q)?;
        if d == 0 || Mat::pack_bits(f.q()) as usize * d * d > 128 {
            return Err(Error::TooLarge(format!("sl({d},{q}) does not pack into 128 bits")));
        }
        Ok(Group::Sl { d, f })
    }

    fn check_degree(k: usize) -> Result<()> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::TooLarge(format!("degree {k} (at most {MAX_DEGREE})")));
        }
        Ok(())
    }

    pub fn order(&self) -> u128 {
        match self {
            Group::Sym(k) => (1..=*k as u128).product(),
            Group::Alt(k) => ((1..=*k as u128).product::<u128>() / 2).max(1),
            Group::Cyclic(n) => *n as u128,
            Group::Sl { d, f } => matrix::sl_order(f.q() as u64, *d as u32),
        }
    }

    pub fn identity(&self) -> u128 {
        match self {
            Group::Sym(k) | Group::Alt(k) => pack_images(&(0..*k).collect::<Vec<_>>()),
            Group::Cyclic(_) => 0,
            Group::Sl { d, f } => Mat::identity(f, *d).pack().unwrap(),
        }
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        match self {
            Group::Sym(k) | Group::Alt(k) => {
                let (ia, ib) = (unpack_images(*k, a), unpack_images(*k, b));
                (0..*k).fold(0u128, |acc, x| (acc << BITS) | ia[ib[x] as usize] as u128)
            }
            Group::Cyclic(n) => (a + b) % *n as u128,
            Group::Sl { d, f } => Mat::unpack(f, *d, a).mul(&Mat::unpack(f, *d, b)).pack().unwrap(),
        }
    }

    pub fn inv(&self, a: u128) -> u128 {
        match self {
            Group::Sym(k) | Group::Alt(k) => {
                let ia = unpack_images(*k, a);
                let mut out = [0usize; MAX_DEGREE];
                for x in 0..*k {
                    out[ia[x] as usize] = x;
                }
                pack_images(&out[..*k])
            }
            Group::Cyclic(n) => (*n as u128 - a) % *n as u128,
            Group::Sl { d, f } => Mat::unpack(f, *d, a).inv().pack().unwrap(),
        }
    }

    pub fn contains(&self, a: u128) -> bool {
        match self {
            Group::Sym(k) | Group::Alt(k) => {
                if *k < 32 && a >> (BITS as usize * *k) != 0 {
                    return false;
                }
                let img: Vec<usize> = unpack_images(*k, a)[..*k].iter().map(|&x| x as usize).collect();
                match Perm::from_images(img) {
                    Ok(p) => !matches!(self, Group::Alt(_)) || p.is_even(),
                    Err(_) => false,
                }
            }
            Group::Cyclic(n) => a < *n as u128,
            Group::Sl { d, f } => {
                let bits = Mat::pack_bits(f.q()) as usize * d * d;
                if bits < 128 && a >> bits != 0 {
                    return false;
                }
                let m = Mat::unpack(f, *d, a);
                m.entries().iter().all(|&x| x < f.q()) && m.det() == 1
            }
        }
    }

    fn perm_of(&self, a: u128) -> Perm {
        let k = match self {
            Group::Sym(k) | Group::Alt(k) => *k,
            _ => unreachable!(),
        };
        Perm::from_images(unpack_images(k, a)[..k].iter().map(|&x| x as usize).collect()).expect("valid code")
    }

    /// Elements in increasing code order.
    pub fn elements(&self) -> alloc::boxed::Box<dyn Iterator<Item = u128> + '_> {
        match self {
            Group::Sym(k) => alloc::boxed::Box::new(perm::all_perms(*k).map(|p| pack_images(&p.images()))),
            Group::Alt(k) => alloc::boxed::Box::new(perm::alt(*k).map(|p| pack_images(&p.images()))),
            Group::Cyclic(n) => alloc::boxed::Box::new(0..*n as u128),
            Group::Sl { d, f } => {
                let q = f.q() as u128;
                let n = d * d;
                let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
                alloc::boxed::Box::new((0..total).filter_map(move |mut c| {
                    let mut e = vec![0u32; n];
                    for x in e.iter_mut().rev() {
                        *x = (c % q) as u32;
                        c /= q;
                    }
                    let m = Mat::from_fn(f, *d, |i, j| e[i * d + j]);
                    (m.det() == 1).then(|| m.pack().unwrap())
                }))
            }
        }
    }

    /// Least element not in `set`.
    pub fn least_outside(&self, set: &HashSet<u128>) -> Option<u128> {
        self.elements().find(|x| !set.contains(x))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> u128 {
        match self {
            Group::Sym(k) | Group::Alt(k) => {
                let mut img: Vec<usize> = (0..*k).collect();
                for i in (1..*k).rev() {
                    img.swap(i, rng.random_range(0..=i));
                }
                if matches!(self, Group::Alt(_)) && !Perm::from_images(img.clone()).unwrap().is_even() {
                    img.swap(0, 1);
                }
                pack_images(&img)
            }
            Group::Cyclic(n) => rng.random_range(0..*n) as u128,
            Group::Sl { d, f } => matrix::random_sl(f, *d, rng).pack().unwrap(),
        }
    }

    /// Cycle notation for permutations, the residue for cyclic groups, the
    /// matrix text form otherwise.
    pub fn fmt_elt(&self, a: u128) -> String {
        match self {
            Group::Sym(_) | Group::Alt(_) => self.perm_of(a).to_string(),
            Group::Cyclic(_) => a.to_string(),
            Group::Sl { d, f } => Mat::unpack(f, *d, a).to_text(),
        }
    }

    pub fn parse_elt(&self, s: &str) -> Result<u128> {
        let code = match self {
            Group::Sym(k) | Group::Alt(k) => pack_images(&Perm::parse_cycles(*k, s)?.images()),
            Group::Cyclic(_) => s.trim().parse::<u128>().map_err(|_| Error::Invalid(format!("bad residue {s:?}")))?,
            Group::Sl { d, f } => {
                let m = Mat::parse_text(s)?;
                if m.dim() != *d || m.field() != f {
                    return Err(Error::Invalid(format!("{s:?} is not in {self}")));
                }
                m.pack().unwrap()
            }
        };
        if !self.contains(code) {
            return Err(Error::Invalid(format!("{s:?} is not in {self}")));
        }
        Ok(code)
    }

    /// Identity and inverses exhaustively (up to `limit` elements) and
    /// associativity on `samples` random triples.
    pub fn self_check<R: Rng>(&self, rng: &mut R, limit: usize, samples: usize) -> bool {
        let e = self.identity();
        if !self.contains(e) {
            return false;
        }
        let ok = self.elements().take(limit).all(|a| {
            self.mul(a, e) == a && self.mul(e, a) == a && self.mul(a, self.inv(a)) == e && self.contains(self.inv(a))
        });
        ok && (0..samples).all(|_| {
            let (a, b, c) = (self.random(rng), self.random(rng), self.random(rng));
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Sym(k) => write!(f, "sym({k})"),
            Group::Alt(k) => write!(f, "alt({k})"),
            Group::Cyclic(n) => write!(f, "cyclic({n})"),
            Group::Sl { d, f: fl } => write!(f, "sl({d},{})", fl.q()),
        }
    }
}

impl FromStr for Group {
    type Err = Error;
    /// `sym(k)`, `alt(k)`, `cyclic(n)` or `sl(d,q)`.
    fn from_str(s: &str) -> Result<Group> {
        let bad = || Error::Invalid(format!("bad group descriptor {s:?}"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args: Vec<u64> = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(|a| a.trim().parse::<u64>())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (name.trim(), args.as_slice()) {
            ("sym", &[k]) => Group::sym(k as usize),
            ("alt", &[k]) => Group::alt(k as usize),
            ("cyclic", &[n]) if n > 0 => Ok(Group::Cyclic(n)),
            ("sl", &[d, q]) => Group::sl(d as usize, q),
            _ => Err(bad()),
        }
    }
}

/// A finite window of groups.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFamily {
    pub groups: Vec<Group>,
}

impl GroupFamily {
    pub fn new(groups: Vec<Group>) -> GroupFamily {
        GroupFamily { groups }
    }

    pub fn parse(descriptors: &[&str]) -> Result<GroupFamily> {
        Ok(GroupFamily { groups: descriptors.iter().map(|d| d.parse()).collect::<Result<_>>()? })
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn identity(&self) -> Vec<u128> {
        self.groups.iter().map(Group::identity).collect()
    }

    pub fn mul(&self, g: &[u128], h: &[u128]) -> Vec<u128> {
        self.groups.iter().zip(g.iter().zip(h)).map(|(gr, (&a, &b))| gr.mul(a, b)).collect()
    }

    pub fn inv(&self, g: &[u128]) -> Vec<u128> {
        self.groups.iter().zip(g).map(|(gr, &a)| gr.inv(a)).collect()
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Vec<u128> {
        self.groups.iter().map(|g| g.random(rng)).collect()
    }
}

/// Per-index finite subsets containing the identity and closed under
/// inverses. Sets are kept sorted and free of repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    pub sets: Vec<Vec<u128>>,
}

fn normalize(mut v: Vec<u128>) -> Vec<u128> {
    v.sort_unstable();
    v.dedup();
    v
}

impl Cover {
    /// Checks the cover axioms against `fam`.
    pub fn new(fam: &GroupFamily, sets: Vec<Vec<u128>>) -> Result<Cover> {
        if sets.len() != fam.len() {
            return Err(Error::ShapeMismatch);
        }
        let c = Cover { sets: sets.into_iter().map(normalize).collect() };
        for (n, (g, s)) in fam.groups.iter().zip(&c.sets).enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidCover(format!("empty set at index {n}")));
            }
            if let Some(x) = s.iter().find(|&&x| !g.contains(x)) {
                return Err(Error::InvalidCover(format!("code {x} at index {n} is not in {g}")));
            }
            if s.binary_search(&g.identity()).is_err() {
                return Err(Error::InvalidCover(format!("identity missing at index {n}")));
            }
            if s.iter().any(|&x| s.binary_search(&g.inv(x)).is_err()) {
                return Err(Error::InvalidCover(format!("not closed under inverses at index {n}")));
            }
        }
        Ok(c)
    }

    /// `{1}` at every index.
    pub fn trivial(fam: &GroupFamily) -> Cover {
        Cover { sets: fam.groups.iter().map(|g| vec![g.identity()]).collect() }
    }

    /// `{1, g(n), g(n)⁻¹}` at every index.
    pub fn generated_by(fam: &GroupFamily, g: &[u128]) -> Cover {
        Cover {
            sets: fam.groups.iter().zip(g).map(|(gr, &a)| normalize(vec![gr.identity(), a, gr.inv(a)])).collect(),
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// Whether `|c(n)| ≤ f(n)` throughout the window.
    pub fn is_f_cover(&self, f: &dyn Fn(usize) -> u128) -> bool {
        self.sets.iter().enumerate().all(|(n, s)| s.len() as u128 <= f(n))
    }

    /// `g(n) ∈ c(n)` for every index.
    pub fn covers(&self, g: &[u128]) -> Result<bool> {
        if g.len() != self.sets.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(self.sets.iter().zip(g).all(|(s, x)| s.binary_search(x).is_ok()))
    }
}

/// The default bound `f(n) = 2^(n+2)`.
pub fn default_bound(n: usize) -> u128 {
    1u128 << (n + 2)
}

/// `(c₁ * c₂)(n) = {ab, (ab)⁻¹ : a ∈ c₁(n), b ∈ c₂(n)}`.
pub fn star(fam: &GroupFamily, c1: &Cover, c2: &Cover) -> Result<Cover> {
    if c1.sets.len() != fam.len() || c2.sets.len() != fam.len() {
        return Err(Error::ShapeMismatch);
    }
    let sets = fam
        .groups
        .iter()
        .zip(c1.sets.iter().zip(&c2.sets))
        .map(|(g, (s1, s2))| {
            let mut out = Vec::with_capacity(2 * s1.len() * s2.len());
            for &a in s1 {
                for &b in s2 {
                    let ab = g.mul(a, b);
                    out.push(ab);
                    out.push(g.inv(ab));
                }
            }
            normalize(out)
        })
        .collect();
    Ok(Cover { sets })
}

/// A closure member with the star count and one expression producing it.
#[derive(Clone, Debug)]
pub struct ClosureEntry {
    pub cover: Cover,
    pub stars: usize,
    pub expr: String,
}

/// All distinct values of `*`-expressions over `covers` with at most
/// `depth` stars, deduplicated by value.
///
/// Order: by star count; within a count `k`, by the star count of the left
/// operand, then left operand, then right operand, each in closure order.
/// Inputs come first, named `c0, c1, ..`.
pub fn closure_enumerate(fam: &GroupFamily, covers: &[Cover], depth: usize, cap: usize) -> Result<Vec<ClosureEntry>> {
    let mut seen: HashSet<Cover> = HashSet::new();
    let mut out: Vec<ClosureEntry> = Vec::new();
    // level[k] = indices into `out` first reached with k stars
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, c) in covers.iter().enumerate() {
        if c.sets.len() != fam.len() {
            return Err(Error::ShapeMismatch);
        }
        if seen.insert(c.clone()) {
            level[0].push(out.len());
            out.push(ClosureEntry { cover: c.clone(), stars: 0, expr: format!("c{i}") });
        }
    }
    for k in 1..=depth {
        let mut cur = Vec::new();
        for i in 0..k {
            let j = k - 1 - i;
            for &a in &level[i] {
                for &b in &level[j] {
                    let c = star(fam, &out[a].cover, &out[b].cover)?;
                    if seen.insert(c.clone()) {
                        if out.len() >= cap {
                            return Err(Error::DepthExplosion(cap));
                        }
                        cur.push(out.len());
                        let expr = format!("({}*{})", out[a].expr, out[b].expr);
                        out.push(ClosureEntry { cover: c, stars: k, expr });
                    }
                }
            }
        }
        level.push(cur);
    }
    Ok(out)
}

/// Whether some member of the depth-bounded closure covers `g`.
pub fn covered_subgroup_contains(fam: &GroupFamily, covers: &[Cover], depth: usize, g: &[u128]) -> Result<bool> {
    if g.len() != fam.len() {
        return Err(Error::ShapeMismatch);
    }
    for e in closure_enumerate(fam, covers, depth, DEFAULT_CLOSURE_CAP)? {
        if e.cover.covers(g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of [`escape_element`].
#[derive(Clone, Debug)]
pub struct Escape {
    pub g: Vec<u128>,
    pub depth: usize,
    pub checked_covers: usize,
}

/// Size bound `2^s·f(n)^(s+1)` of an `s`-star product of `f`-covers.
pub fn product_bound(f: &dyn Fn(usize) -> u128, n: usize, stars: usize) -> u128 {
    let base = f(n);
    let mut b: u128 = 1u128 << stars.min(127);
    for _ in 0..=stars {
        b = b.saturating_mul(base);
    }
    b
}

/// A tuple covered by no member of the depth-bounded closure of `covers`.
///
/// The scheduled closure `d_0, d_1, ..` is diagonalised: `d_n` is escaped at
/// index `n` for `n < N-1`, and every `d_m` with `m ≥ N-1` at the last index.
/// Each index needs `|G_n|` strictly above the summed size bounds of its
/// assigned covers; `g(n)` is the least element outside their union.
pub fn escape_element(fam: &GroupFamily, covers: &[Cover], f: &dyn Fn(usize) -> u128, depth: usize) -> Result<Escape> {
    let n = fam.len();
    if n == 0 {
        return Err(Error::ShapeMismatch);
    }
    for (i, c) in covers.iter().enumerate() {
        if c.sets.len() != n {
            return Err(Error::ShapeMismatch);
        }
        if !c.is_f_cover(f) {
            return Err(Error::InvalidCover(format!("c{i} exceeds the size bound")));
        }
    }
    let schedule = closure_enumerate(fam, covers, depth, DEFAULT_CLOSURE_CAP)?;
    let slot = |m: usize| m.min(n - 1);
    let mut need = vec![0u128; n];
    for (m, e) in schedule.iter().enumerate() {
        let i = slot(m);
        need[i] = need[i].saturating_add(product_bound(f, i, e.stars));
    }
    for i in 0..n {
        if need[i] > 0 && fam.groups[i].order() <= need[i] {
            return Err(Error::HypothesisViolated { index: i });
        }
    }
    let mut taken: Vec<HashSet<u128>> = vec![HashSet::new(); n];
    for (m, e) in schedule.iter().enumerate() {
        let i = slot(m);
        taken[i].extend(e.cover.sets[i].iter().copied());
    }
    let g: Vec<u128> = fam
        .groups
        .iter()
        .zip(&taken)
        .enumerate()
        .map(|(i, (gr, t))| gr.least_outside(t).ok_or(Error::HypothesisViolated { index: i }))
        .collect::<Result<_>>()?;
    for e in &schedule {
        if e.cover.covers(&g)? {
            return Err(Error::Invalid(format!("escape tuple covered by {}", e.expr)));
        }
    }
    Ok(Escape { g, depth, checked_covers: schedule.len() })
}

/// `n` random covers `{1, b, b⁻¹}`.
pub fn random_covers<R: Rng>(fam: &GroupFamily, n: usize, rng: &mut R) -> Vec<Cover> {
    (0..n).map(|_| Cover::generated_by(fam, &fam.random(rng))).collect()
}

/// First `(c, d, e)` among covers `{1, a, a⁻¹}` with `(c*d)*e ≠ c*(d*e)`,
/// scanning `a` in element order at index 0 (identity elsewhere).
pub fn non_associative_witness(fam: &GroupFamily) -> Result<Option<[Cover; 3]>> {
    if fam.is_empty() {
        return Err(Error::ShapeMismatch);
    }
    let id = fam.identity();
    let basic: Vec<Cover> = fam.groups[0]
        .elements()
        .map(|a| {
            let mut g = id.clone();
            g[0] = a;
            Cover::generated_by(fam, &g)
        })
        .collect();
    for c in &basic {
        for d in &basic {
            let cd = star(fam, c, d)?;
            for e in &basic {
                let left = star(fam, &cd, e)?;
                let right = star(fam, c, &star(fam, d, e)?)?;
                if left != right {
                    return Ok(Some([c.clone(), d.clone(), e.clone()]));
                }
            }
        }
    }
    Ok(None)
}
