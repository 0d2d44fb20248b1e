//! Permutations of `{0..n-1}` and the alternating group lemmas.
//!
//! Composition acts on the left: `(a * b)(x) = a(b(x))`. Points are 0-indexed
//! internally and printed 1-indexed in cycle notation.

pub mod brenner;
pub mod generic;
pub mod uni;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::witness::GroupElem;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Perm> {
        let n = img.len();
        let mut seen = alloc::vec![false; n];
        for &i in &img {
            if i >= n || seen[i] {
                return Err(Error::NotPermutation);
            }
            seen[i] = true;
        }
        Ok(Perm { img: img.into_iter().map(|i| i as u32).collect() })
    }

    pub(crate) fn from_u32(img: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(img.iter().map(|&x| x as usize).collect()).is_ok());
        Perm { img }
    }

    /// Product of the given 0-indexed cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut p = Perm::identity(n);
        for c in cycles {
            let mut img: Vec<usize> = (0..n).collect();
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::NotPermutation);
                }
                img[x] = c[(i + 1) % c.len()];
            }
            p = p.compose(&Perm::from_images(img)?)?;
        }
        Ok(p)
    }

    /// Parses 1-indexed cycle notation such as `(1 2)(3 4)` or `()`.
    /// Cycles are multiplied left to right as written.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Perm> {
        let bad = || Error::Invalid(alloc::format!("malformed cycle notation: {s:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cur: Option<Vec<usize>> = None;
        let mut num = String::new();
        let flush = |num: &mut String, cur: &mut Option<Vec<usize>>| -> Result<()> {
            if !num.is_empty() {
                let v: usize = num.parse().map_err(|_| bad())?;
                if v == 0 || v > n {
                    return Err(bad());
                }
                cur.as_mut().ok_or_else(bad)?.push(v - 1);
                num.clear();
            }
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '(' if cur.is_none() => cur = Some(Vec::new()),
                ')' => {
                    flush(&mut num, &mut cur)?;
                    let c = cur.take().ok_or_else(bad)?;
                    let mut sorted = c.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != c.len() {
                        return Err(bad());
                    }
                    cycles.push(c);
                }
                c if c.is_ascii_digit() => num.push(c),
                c if c.is_whitespace() || c == ',' => flush(&mut num, &mut cur)?,
                _ => return Err(bad()),
            }
        }
        if cur.is_some() || !num.is_empty() {
            return Err(bad());
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize).collect()
    }

    pub fn compose(&self, b: &Perm) -> Result<Perm> {
        if self.degree() != b.degree() {
            return Err(Error::DegreeMismatch(self.degree(), b.degree()));
        }
        Ok(self.mul(b))
    }

    /// `self ∘ b`; panics on a degree mismatch.
    pub fn mul(&self, b: &Perm) -> Perm {
        assert_eq!(self.degree(), b.degree(), "degree mismatch");
        Perm { img: b.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut r = alloc::vec![0u32; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        Perm { img: r }
    }

    /// `rho · self · rho⁻¹`.
    pub fn conjugate_by(&self, rho: &Perm) -> Perm {
        rho.mul(self).mul(&rho.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// All cycles, fixed points included, each starting at its least point,
    /// ordered by that point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths (fixed points included), largest first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.all_cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        (n - self.all_cycles().len()).is_multiple_of(2)
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.all_cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// Fixed-point-free involution (type `2^(n/2)`).
    pub fn is_fpf_involution(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| x as usize != i && self.img[x as usize] as usize == i)
    }

    pub fn is_involution(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| self.img[x as usize] as usize == i)
    }

    /// 4 bits per point; only for degree ≤ 16.
    pub fn pack(&self) -> u64 {
        debug_assert!(self.degree() <= 16);
        self.img.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << (4 * i))
    }

    pub fn unpack(n: usize, code: u64) -> Perm {
        Perm { img: (0..n).map(|i| ((code >> (4 * i)) & 15) as u32).collect() }
    }
}

impl GroupElem for Perm {
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
}

impl core::ops::Mul for &Perm {
    type Output = Perm;
    fn mul(self, b: &Perm) -> Perm {
        Perm::mul(self, b)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return f.write_str("()");
        }
        for c in cs {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All permutations of `n` points in lexicographic order of image arrays.
pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    let mut cur: Option<Vec<u32>> = Some((0..n as u32).collect());
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut a = out.clone();
        // next permutation
        let next = (|| {
            let i = (0..a.len().saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1])?;
            let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
            a.swap(i, j);
            a[i + 1..].reverse();
            Some(a)
        })();
        cur = next;
        Some(Perm { img: out })
    })
}

/// `Alt(n)` in lexicographic order.
pub fn alt(n: usize) -> impl Iterator<Item = Perm> {
    all_perms(n).filter(|p| p.is_even())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn worked_conjugation_example() {
        let a = c(7, "(1 2 3)");
        let b = c(7, "(1 3 5 7)");
        assert_eq!(a.mul(&b).mul(&a.inverse()), c(7, "(2 1 5 7)"));
        assert_eq!(b.conjugate_by(&a), c(7, "(2 1 5 7)"));
    }

    #[test]
    fn basics() {
        let id = Perm::identity(8);
        assert_eq!(id.cycle_type(), alloc::vec![1; 8]);
        assert!(id.is_even());
        assert_eq!(alloc::format!("{id}"), "()");
        let t = c(8, "(1 2)(3 4)(5 6)(7 8)");
        assert_eq!(t.cycle_type(), alloc::vec![2; 4]);
        assert!(t.is_even() && t.is_fpf_involution());
        assert_eq!(alloc::format!("{}", c(5, "(3 1)(2 5 4)")), "(1 3)(2 5 4)");
        assert_eq!(c(4, "(1 2 3 4)").order(), 4);
        assert!(!c(4, "(1 2)").is_even());
        assert_eq!(Perm::identity(3).compose(&Perm::identity(4)), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn parse_errors() {
        for s in ["(1 2 3", "(1 1)", "(0 1)", "(1 9)", "1 2)", "(a)"] {
            assert!(Perm::parse_cycles(8, s).is_err(), "{s}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_perms(5).count(), 120);
        assert_eq!(alt(6).count(), 360);
        let v: Vec<Perm> = all_perms(4).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pack_roundtrip() {
        for p in all_perms(5) {
            assert_eq!(Perm::unpack(5, p.pack()), p);
        }
    }
}
