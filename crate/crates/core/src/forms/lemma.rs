//! Small-matrix identities `C = Σ Aᵢ·Aᵢᵀ` with `Aᵢ ∈ SL(n,p)` for diagonal
//! 0/1 patterns `C`, and the search that produces them.
//!
//! Matrices are codes: entry `(i,j)` is the base-p digit at position `i*n+j`.

use alloc::vec;
use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

/// Terms per pattern in the `SL(2,3)` table.
pub const SL23_TERMS: usize = 6;
/// Terms per pattern in the `SL(n,2)` block tables.
pub const GF2_TERMS: usize = 4;

/// `SL23[b]`: six matrices with `Σ A·Aᵀ = diag(b&1, b>>1&1)` over GF(3).
/// `SL23[b]`: six matrices with `Σ A·Aᵀ = diag(b&1, b>>1&1)` over GF(3).
pub const SL23: [[u32; SL23_TERMS]; 4] = [
    [15, 15, 15, 15, 15, 15],
    [15, 15, 15, 41, 37, 42],
    [15, 15, 15, 16, 17, 41],
    [15, 15, 15, 15, 15, 41],
];

// Block tables over GF(2), indexed by pattern bitmask.
pub const GF2_BLOCK3: [[u32; GF2_TERMS]; 8] = [
    [253, 253, 253, 253],
    [253, 253, 253, 225],
    [253, 253, 239, 204],
    [253, 253, 234, 206],
    [253, 253, 253, 85],
    [253, 253, 225, 85],
    [253, 253, 229, 115],
    [253, 253, 229, 473],
];
pub const GF2_BLOCK4: [[u32; GF2_TERMS]; 16] = [
    [62295, 62295, 62295, 62295],
    [62295, 62295, 16201, 15425],
    [62295, 62295, 62295, 15425],
    [62295, 62295, 62295, 16201],
    [62295, 62295, 62295, 13505],
    [62295, 62295, 62295, 13561],
    [62295, 62295, 16201, 13561],
    [62295, 62295, 16201, 13505],
    [62295, 62295, 16201, 5673],
    [62295, 62295, 62295, 5807],
    [62295, 62295, 16201, 5807],
    [62295, 62295, 62295, 5673],
    [62295, 62295, 62292, 4717],
    [62295, 62295, 62295, 4713],
    [62295, 62295, 62292, 7719],
    [62295, 62295, 62292, 4837],
];
pub const GF2_BLOCK5: [[u32; GF2_TERMS]; 32] = [
    [3571357, 3571357, 3571357, 3571357],
    [3571357, 3571357, 3571357, 3568257],
    [3571357, 3571357, 3571357, 3558545],
    [3571357, 3571357, 3571357, 3555457],
    [3571357, 3571357, 3560445, 3543665],
    [3571357, 3571357, 3560445, 3543553],
    [3571357, 3571357, 3559805, 3543921],
    [3571357, 3571357, 3559805, 3543809],
    [3571357, 3571357, 3571357, 3285745],
    [3571357, 3571357, 3571357, 3285633],
    [3571357, 3571357, 3558545, 3285745],
    [3571357, 3571357, 3558545, 3285633],
    [3571357, 3571357, 3559069, 3304849],
    [3571357, 3571357, 3559069, 3301761],
    [3571357, 3571357, 3559069, 4173969],
    [3571357, 3571357, 3559069, 4075649],
    [3571357, 3571357, 3571357, 1253975],
    [3571357, 3571357, 3568257, 1253975],
    [3571357, 3571357, 3571357, 1253457],
    [3571357, 3571357, 3568257, 1253457],
    [3571357, 3571357, 3568285, 1276239],
    [3571357, 3571357, 3568285, 32616996],
    [3571357, 3571357, 3568285, 1269833],
    [3571357, 3571357, 3568285, 2038035],
    [3571357, 3571357, 3571357, 1118545],
    [3571357, 3571357, 3568257, 1118545],
    [3571357, 3571357, 3571345, 1119049],
    [3571357, 3571357, 3571345, 1143253],
    [3571357, 3571357, 3568285, 1126981],
    [3571357, 3571357, 3568285, 1127381],
    [3571357, 3571357, 3555473, 1126981],
    [3571357, 3571357, 3555473, 1127381],
];

/// Table entry for an `n×n` GF(2) block.
pub fn gf2_block(n: usize, pattern: usize) -> &'static [u32; GF2_TERMS] {
    match n {
        3 => &GF2_BLOCK3[pattern],
        4 => &GF2_BLOCK4[pattern],
        5 => &GF2_BLOCK5[pattern],
        _ => panic!("no GF(2) block of size {n}"),
    }
}

/// Entries of a code, row-major.
pub fn decode(code: u32, n: usize, p: u32) -> Vec<u32> {
    let mut c = code;
    (0..n * n)
        .map(|_| {
            let x = c % p;
            c /= p;
            x
        })
        .collect()
}

fn encode(e: &[u32], p: u32) -> u32 {
    e.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn det_mod(e: &[u32], n: usize, p: u32) -> u32 {
    let mut m: Vec<u32> = e.to_vec();
    let mut det = 1u32;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r * n + c] != 0) else {
            return 0;
        };
        if r != c {
            for j in 0..n {
                m.swap(r * n + j, c * n + j);
            }
            det = (p - det) % p;
        }
        let piv = m[c * n + c];
        det = det * piv % p;
        let inv = (1..p).find(|&x| x * piv % p == 1).unwrap();
        for r in c + 1..n {
            let t = m[r * n + c] * inv % p;
            if t != 0 {
                for j in c..n {
                    m[r * n + j] = (m[r * n + j] + p * p - t * m[c * n + j] % p) % p;
                }
            }
        }
    }
    det
}

fn aat(e: &[u32], n: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| e[i * n + k] * e[j * n + k]).sum::<u32>() % p;
        }
    }
    out
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

/// Exact-k searcher over the values `A·Aᵀ`, `A ∈ SL(n,p)`.
pub struct LemmaSearch {
    n: usize,
    p: u32,
    /// value code -> least matrix code with that `A·Aᵀ`
    reps: HashMap<u32, u32>,
    values: Vec<u32>,
    pairs: HashSet<u32>,
}

impl LemmaSearch {
    /// Enumerates `SL(n,p)`; intended for `p^(n²)` up to about `2^25`.
    pub fn new(n: usize, p: u32) -> LemmaSearch {
        let total = (p as u64).pow((n * n) as u32);
        let mut reps = HashMap::new();
        for code in 0..total as u32 {
            let e = decode(code, n, p);
            if det_mod(&e, n, p) == 1 {
                reps.entry(encode(&aat(&e, n, p), p)).or_insert(code);
            }
        }
        let mut values: Vec<u32> = reps.keys().copied().collect();
        values.sort_unstable();
        let mut pairs = HashSet::new();
        for &a in &values {
            let ea = decode(a, n, p);
            for &b in &values {
                let s: Vec<u32> = ea.iter().zip(decode(b, n, p)).map(|(&x, y)| (x + y) % p).collect();
                pairs.insert(encode(&s, p));
            }
        }
        LemmaSearch { n, p, reps, values, pairs }
    }

    fn values_of(&self, target: &[u32], k: usize) -> Option<Vec<u32>> {
        let code = encode(target, self.p);
        match k {
            0 => target.iter().all(|&x| x == 0).then(Vec::new),
            1 => self.reps.contains_key(&code).then(|| vec![code]),
            2 if !self.pairs.contains(&code) => None,
            _ => {
                for &a in &self.values {
                    let rest = sub(target, &decode(a, self.n, self.p), self.p);
                    if let Some(mut v) = self.values_of(&rest, k - 1) {
                        v.insert(0, a);
                        return Some(v);
                    }
                }
                None
            }
        }
    }

    /// Least-first matrices `A₁..A_k` with `Σ Aᵢ·Aᵢᵀ = target`.
    pub fn decompose(&self, target: &[u32], k: usize) -> Option<Vec<u32>> {
        self.values_of(target, k).map(|v| v.iter().map(|c| self.reps[c]).collect())
    }

    /// Diagonal 0/1 pattern `b` as entries.
    pub fn pattern(&self, b: usize) -> Vec<u32> {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = (b >> i & 1) as u32;
        }
        e
    }

    /// Least k with the pattern an exact k-term sum.
    pub fn min_terms(&self, b: usize, kmax: usize) -> Option<usize> {
        let t = self.pattern(b);
        (0..=kmax).find(|&k| self.values_of(&t, k).is_some())
    }

    /// Full table for exact `k` terms, one row per pattern.
    pub fn table(&self, k: usize) -> Option<Vec<Vec<u32>>> {
        (0..1usize << self.n).map(|b| self.decompose(&self.pattern(b), k)).collect()
    }
}

/// Checks `Σ A·Aᵀ = pattern` with every `A` of determinant 1.
pub fn check_row(row: &[u32], n: usize, p: u32, pattern: usize) -> bool {
    let mut sum = vec![0; n * n];
    for &c in row {
        let e = decode(c, n, p);
        if det_mod(&e, n, p) != 1 {
            return false;
        }
        for (s, x) in sum.iter_mut().zip(aat(&e, n, p)) {
            *s = (*s + x) % p;
        }
    }
    (0..n * n).all(|i| sum[i] == if i % (n + 1) == 0 { (pattern >> (i / n) & 1) as u32 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_multiply_back() {
        for (b, row) in SL23.iter().enumerate() {
            assert!(check_row(row, 2, 3, b));
        }
        for n in 3..=5 {
            for b in 0..1 << n {
                assert!(check_row(gf2_block(n, b), n, 2, b), "n={n} b={b}");
            }
        }
    }

    #[test]
    fn regenerate_small_tables() {
        let s = LemmaSearch::new(2, 3);
        let t = s.table(SL23_TERMS).unwrap();
        assert!(t.iter().zip(SL23.iter()).all(|(a, b)| a[..] == b[..]));
        let s = LemmaSearch::new(3, 2);
        let t = s.table(GF2_TERMS).unwrap();
        assert!(t.iter().zip(GF2_BLOCK3.iter()).all(|(a, b)| a[..] == b[..]));
    }

    #[test]
    fn small_minima() {
        // fewer terms suffice than the tables use
        let s = LemmaSearch::new(2, 3);
        let m: Vec<_> = (0..4).map(|b| s.min_terms(b, 6).unwrap()).collect();
        assert_eq!(m, [0, 3, 3, 1]);
        let s = LemmaSearch::new(3, 2);
        assert!((0..8).all(|b| s.min_terms(b, 4).unwrap() <= 2));
        // 2×2 blocks over GF(2) never reach diag(1,0)
        let s = LemmaSearch::new(2, 2);
        assert_eq!(s.min_terms(1, 8), None);
    }

    #[cfg(feature = "big")]
    #[test]
    fn regenerate_large_tables() {
        for n in 4..=5 {
            let s = LemmaSearch::new(n, 2);
            let t = s.table(GF2_TERMS).unwrap();
            assert!((0..1 << n).all(|b| t[b][..] == gf2_block(n, b)[..]));
        }
    }
}
