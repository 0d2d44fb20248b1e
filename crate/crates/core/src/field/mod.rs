//! Exact arithmetic in GF(p^k).
//!
//! Elements are `u32` codes: the coefficient vector `(c0, .., c_{k-1})` of
//! the polynomial basis read as a base-p number with `c0` least significant.
//! The modulus is the monic irreducible of degree k whose lower coefficients
//! form the least such code, so codes are reproducible everywhere.

mod normal;
pub mod ntheory;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use normal::{frobenius_matrix_rank, moore_independent, normal_basis_generator, Embedding};
pub use ntheory::{is_prime, prime_power, zsigmondy_prime};

/// Field element code.
pub type Elt = u32;

/// Default cap on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get full addition and multiplication tables.
const TABLE_MAX: u32 = 256;

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// k+1 coefficients, least degree first, monic.
    modulus: Vec<u32>,
    pw: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
}

/// GF(p^k) with its fixed modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.p == o.0.p && self.0.k == o.0.k)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.k())
    }
}

impl fmt::Display for Field {
    /// Descriptor `p,k,m0 m1 .. mk`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},", self.p(), self.k())?;
        for (i, c) in self.0.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

// polynomial helpers over Z_p, coefficient vectors least degree first

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0);
    }
    r
}

fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    let mut x = code;
    for _ in 0..deg {
        c.push(x % p);
        x /= p;
    }
    c.push(1);
    c
}

/// Exhaustive factor search: no monic factor of degree 1..=deg/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            let mut r = poly_rem(f, &g, p);
            poly_trim(&mut r);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `k` over Z_p.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|code| monic_from_code(code, k, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(p^k) with the default order cap.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        Field::with_bound(p, k, DEFAULT_MAX_ORDER)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, a) = prime_power(q).ok_or(Error::NonPrime(q))?;
        Field::new(p, a)
    }

    pub fn with_bound(p: u64, k: u32, max_order: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeTooLarge { p, k });
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= max_order as u128 && q < u32::MAX as u128);
        let q = q.ok_or(Error::DegreeTooLarge { p, k })? as u32;
        let p = p as u32;
        let modulus = if k == 1 { vec![0, 1] } else { least_irreducible(p, k) };
        let pw = (0..=k).map(|i| p.pow(i)).collect();
        let mut inner = Inner { p, k, q, modulus, pw, add: Vec::new(), mul: Vec::new() };
        if q <= TABLE_MAX {
            let n = q as usize;
            let mut add = vec![0u8; n * n];
            let mut mul = vec![0u8; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = slow_add(&inner, a, b) as u8;
                    mul[a as usize * n + b as usize] = slow_mul(&inner, a, b) as u8;
                }
            }
            inner.add = add;
            inner.mul = mul;
        }
        Ok(Field(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn k(&self) -> u32 {
        self.0.k
    }
    /// Number of elements.
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn elements(&self) -> core::ops::Range<Elt> {
        0..self.0.q
    }
    pub fn nonzero(&self) -> core::ops::Range<Elt> {
        1..self.0.q
    }

    pub fn coeffs(&self, x: Elt) -> Vec<u32> {
        let p = self.0.p;
        let mut x = x;
        (0..self.0.k)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    /// Element with the given coefficients (reduced mod p; missing ones are 0).
    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elt> {
        if c.len() > self.0.k as usize {
            return Err(Error::Invalid(alloc::format!(
                "{} coefficients for a degree {} field",
                c.len(),
                self.0.k
            )));
        }
        Ok(c.iter().enumerate().map(|(i, &ci)| (ci % self.0.p) * self.0.pw[i]).sum())
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elt {
        n.rem_euclid(self.0.p as i64) as Elt
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let f = &self.0;
        if !f.add.is_empty() {
            return f.add[a as usize * f.q as usize + b as usize] as Elt;
        }
        slow_add(f, a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let f = &self.0;
        if f.p == 2 {
            return a;
        }
        let mut r = 0;
        let mut x = a;
        for i in 0..f.k as usize {
            let c = x % f.p;
            x /= f.p;
            r += ((f.p - c) % f.p) * f.pw[i];
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        let f = &self.0;
        if !f.mul.is_empty() {
            return f.mul[a as usize * f.q as usize + b as usize] as Elt;
        }
        slow_mul(f, a, b)
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse via `x^(q-2)`; `None` for zero.
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0.q as u64 - 2))
        }
    }

    /// Inverse of a nonzero element. Panics on zero.
    pub fn inv_nz(&self, a: Elt) -> Elt {
        self.inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Elt, b: Elt) -> Option<Elt> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `x^(p^e)`.
    pub fn frobenius(&self, x: Elt, e: u32) -> Elt {
        let mut y = x;
        for _ in 0..e % self.0.k {
            y = self.pow(y, self.0.p as u64);
        }
        y
    }

    /// Conjugation `x^(p^(k/2))` of a quadratic extension. Panics for odd k.
    pub fn conj(&self, x: Elt) -> Elt {
        assert!(self.0.k.is_multiple_of(2), "conjugation needs even degree");
        self.frobenius(x, self.0.k / 2)
    }

    /// Order of the base field of `conj`, i.e. `p^(k/2)`.
    pub fn conj_base_order(&self) -> Option<u32> {
        self.0.k.is_multiple_of(2).then(|| self.0.p.pow(self.0.k / 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, x: Elt) -> u64 {
        assert!(x != 0);
        let n = self.0.q as u64 - 1;
        let mut ord = n;
        for f in ntheory::prime_factors(n as u128) {
            let f = f as u64;
            while ord.is_multiple_of(f) && self.pow(x, ord / f) == 1 {
                ord /= f;
            }
        }
        ord
    }

    /// Least square root by scan, if any.
    pub fn sqrt(&self, x: Elt) -> Option<Elt> {
        self.elements().find(|&r| self.mul(r, r) == x)
    }

    pub fn is_square(&self, x: Elt) -> bool {
        self.sqrt(x).is_some()
    }

    /// `-1`.
    pub fn minus_one(&self) -> Elt {
        self.neg(1)
    }

    /// Formats an element as `p^k:c0,c1,..`.
    pub fn fmt_elt(&self, x: Elt) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        let _ = write!(s, "{}^{}:", self.0.p, self.0.k);
        for (i, c) in self.coeffs(x).iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s
    }
}

impl Field {
    /// Parses `p^k:c0,c1,..` (as printed by [`Field::fmt_elt`]) or a bare element code.
    pub fn parse_elt(&self, s: &str) -> Result<Elt> {
        let s = s.trim();
        let bad = || Error::Invalid(alloc::format!("bad element {s:?} for GF({}^{})", self.0.p, self.0.k));
        match s.split_once(':') {
            Some((head, tail)) => {
                let (p, k) = head.split_once('^').ok_or_else(bad)?;
                if p.parse::<u32>().ok() != Some(self.0.p) || k.parse::<u32>().ok() != Some(self.0.k) {
                    return Err(bad());
                }
                let c: Vec<u32> = tail.split(',').map(|x| x.trim().parse::<u32>()).collect::<core::result::Result<_, _>>().map_err(|_| bad())?;
                if c.iter().any(|&x| x >= self.0.p) {
                    return Err(bad());
                }
                self.from_coeffs(&c)
            }
            None => {
                let v: u32 = s.parse().map_err(|_| bad())?;
                if v >= self.0.q {
                    return Err(bad());
                }
                Ok(v)
            }
        }
    }

    /// Bare code for prime fields, `p^k:..` otherwise.
    pub fn fmt_short(&self, x: Elt) -> alloc::string::String {
        if self.0.k == 1 {
            alloc::format!("{x}")
        } else {
            self.fmt_elt(x)
        }
    }
}

fn slow_add(f: &Inner, a: Elt, b: Elt) -> Elt {
    if f.p == 2 {
        return a ^ b;
    }
    let (mut x, mut y, mut r) = (a, b, 0);
    for i in 0..f.k as usize {
        let c = (x % f.p + y % f.p) % f.p;
        x /= f.p;
        y /= f.p;
        r += c * f.pw[i];
    }
    r
}

fn slow_mul(f: &Inner, a: Elt, b: Elt) -> Elt {
    let k = f.k as usize;
    let p = f.p as u64;
    if k == 1 {
        return ((a as u64 * b as u64) % p) as Elt;
    }
    let mut ca = [0u64; 32];
    let mut cb = [0u64; 32];
    let (mut x, mut y) = (a, b);
    for i in 0..k {
        ca[i] = (x % f.p) as u64;
        cb[i] = (y % f.p) as u64;
        x /= f.p;
        y /= f.p;
    }
    let mut prod = [0u64; 64];
    for i in 0..k {
        if ca[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        }
    }
    for d in (k..2 * k - 1).rev() {
        let lead = prod[d];
        if lead == 0 {
            continue;
        }
        // x^k = -(m0 + .. + m_{k-1} x^{k-1})
        for i in 0..k {
            let m = f.modulus[i] as u64;
            prod[d - k + i] = (prod[d - k + i] + (p - lead) * m) % p;
        }
        prod[d] = 0;
    }
    let mut r = 0;
    for i in 0..k {
        r += prod[i] as Elt * f.pw[i];
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    // brute-force oracle: the monic quadratics with no root in Z_p
    #[test]
    fn quadratic_moduli_are_least_rootless() {
        for p in [2u32, 3, 5, 7] {
            let want = (0..p * p)
                .map(|c| (c % p, c / p))
                .find(|&(c0, c1)| (0..p).all(|x| (x * x + c1 * x + c0) % p != 0))
                .unwrap();
            let f = Field::new(p as u64, 2).unwrap();
            assert_eq!(f.modulus(), &[want.0, want.1, 1]);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NonPrime(4));
        assert!(matches!(Field::new(2, 21), Err(Error::DegreeTooLarge { .. })));
        assert!(Field::with_bound(2, 21, 1 << 21).is_ok());
    }

    #[test]
    fn gf4_frobenius() {
        let f = Field::new(2, 2).unwrap();
        let w = 2; // the class of x
        assert_eq!(f.frobenius(w, 1), 3);
        assert_eq!(f.mul(w, w), 3);
        assert_eq!(f.frobenius(w, 0), w);
        let g = Field::new(7, 1).unwrap();
        for x in g.elements() {
            assert_eq!(g.frobenius(x, 3), x);
        }
    }

    #[test]
    fn axioms_exhaustive_small() {
        for (p, k) in [(2, 3), (3, 2), (5, 1), (2, 4), (3, 3)] {
            let f = Field::new(p, k).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv_nz(a)), 1);
                }
                assert_eq!(f.frobenius(a, k), a);
                assert_eq!(f.pow(a, f.q() as u64), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn slow_path_matches_tables() {
        // GF(3^6) has no tables; compare against GF(3^6) arithmetic rebuilt slowly
        let f = Field::new(3, 6).unwrap();
        assert!(f.0.mul.is_empty());
        let g = Field::new(3, 2).unwrap();
        let a = f.from_coeffs(&[1, 2, 0, 1, 1, 2]).unwrap();
        assert_eq!(f.mul(a, f.inv_nz(a)), 1);
        assert_eq!(f.frobenius(a, 6), a);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(slow_mul(&g.0, x, y), g.mul(x, y));
            }
        }
    }

    #[test]
    fn format() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.fmt_elt(f.from_coeffs(&[2, 1]).unwrap()), "3^2:2,1");
        assert_eq!(alloc::format!("{f}"), "3,2,1 0 1");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![(2u64, 5u32), (3, 4), (5, 2), (7, 3), (2, 10), (11, 1)])
            .prop_map(|(p, k)| Field::new(p, k).unwrap())
    }

    proptest! {
        #[test]
        fn ring_laws(f in fields(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            // Frobenius is additive and multiplicative
            prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
            prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv_nz(a)), 1);
            }
        }
    }
}
