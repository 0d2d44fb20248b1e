//! Dense matrices over GF(q) and the SL(d,q) generation machinery.

pub mod bruhat;
pub mod double;
pub mod saxl;
pub mod step;
pub mod text;
pub mod torus;

use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::perm::Perm;
use crate::witness::GroupElem;

/// Square matrix over a finite field, row-major.
#[derive(Clone)]
pub struct Mat {
    f: Field,
    d: usize,
    e: Vec<Elt>,
}

impl PartialEq for Mat {
    fn eq(&self, o: &Self) -> bool {
        self.d == o.d && self.e == o.e && self.f == o.f
    }
}
impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.d.hash(h);
        self.e.hash(h);
    }
}

impl Mat {
    pub fn zero(f: &Field, d: usize) -> Mat {
        Mat { f: f.clone(), d, e: alloc::vec![0; d * d] }
    }

    pub fn identity(f: &Field, d: usize) -> Mat {
        let mut m = Mat::zero(f, d);
        for i in 0..d {
            m.e[i * d + i] = 1;
        }
        m
    }

    pub fn from_fn(f: &Field, d: usize, mut g: impl FnMut(usize, usize) -> Elt) -> Mat {
        let mut e = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                e.push(g(i, j));
            }
        }
        Mat { f: f.clone(), d, e }
    }

    pub fn from_rows(f: &Field, rows: &[Vec<Elt>]) -> Result<Mat> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Invalid("matrix rows must be square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= f.q()) {
            return Err(Error::Invalid("entry outside the field".into()));
        }
        Ok(Mat { f: f.clone(), d, e: rows.concat() })
    }

    /// Small-integer rows, reduced into the prime field.
    pub fn from_ints(f: &Field, rows: &[&[i64]]) -> Mat {
        let d = rows.len();
        Mat::from_fn(f, d, |i, j| f.from_int(rows[i][j]))
    }

    pub fn diag(f: &Field, v: &[Elt]) -> Mat {
        let mut m = Mat::zero(f, v.len());
        for (i, &x) in v.iter().enumerate() {
            m.e[i * v.len() + i] = x;
        }
        m
    }

    /// Permutation matrix with `P e_j = e_{σ(j)}`, so `P_a P_b = P_{ab}`.
    pub fn perm(f: &Field, s: &Perm) -> Mat {
        let d = s.degree();
        let mut m = Mat::zero(f, d);
        for j in 0..d {
            m.e[s.apply(j) * d + j] = 1;
        }
        m
    }

    /// `I + t·E_{ij}`.
    pub fn elementary(f: &Field, d: usize, i: usize, j: usize, t: Elt) -> Mat {
        let mut m = Mat::identity(f, d);
        m.e[i * d + j] = f.add(m.e[i * d + j], t);
        m
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.f
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.e[i * self.d + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elt) {
        self.e[i * self.d + j] = x;
    }
    pub fn entries(&self) -> &[Elt] {
        &self.e
    }
    pub fn row(&self, i: usize) -> &[Elt] {
        &self.e[i * self.d..(i + 1) * self.d]
    }
    pub fn rows(&self) -> Vec<Vec<Elt>> {
        (0..self.d).map(|i| self.row(i).to_vec()).collect()
    }

    fn same_shape(&self, o: &Mat) -> Result<()> {
        if self.d != o.d {
            return Err(Error::DimensionMismatch(self.d, o.d));
        }
        if self.f != o.f {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Mat) -> Result<Mat> {
        self.same_shape(o)?;
        Ok(self.mul(o))
    }

    /// Panics on shape mismatch.
    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.d, o.d, "dimension mismatch");
        let d = self.d;
        let f = &self.f;
        let mut e = alloc::vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.e[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let b = o.e[k * d + j];
                    if b != 0 {
                        e[i * d + j] = f.add(e[i * d + j], f.mul(a, b));
                    }
                }
            }
        }
        Mat { f: f.clone(), d, e }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.d, o.d, "dimension mismatch");
        let e = self.e.iter().zip(&o.e).map(|(&a, &b)| self.f.add(a, b)).collect();
        Mat { f: self.f.clone(), d: self.d, e }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat {
        self.map(|x| self.f.neg(x))
    }

    pub fn scale(&self, t: Elt) -> Mat {
        self.map(|x| self.f.mul(t, x))
    }

    pub fn map(&self, g: impl Fn(Elt) -> Elt) -> Mat {
        Mat { f: self.f.clone(), d: self.d, e: self.e.iter().map(|&x| g(x)).collect() }
    }

    /// Entrywise field conjugation (quadratic extensions only).
    pub fn conj(&self) -> Mat {
        self.map(|x| self.f.conj(x))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.f, self.d, |i, j| self.get(j, i))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| self.get(i, j) == (i == j) as Elt))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Zero/one matrix with exactly one 1 per row and column.
    pub fn as_permutation(&self) -> Option<Perm> {
        let mut img = alloc::vec![usize::MAX; self.d];
        for j in 0..self.d {
            for i in 0..self.d {
                match self.get(i, j) {
                    0 => {}
                    1 if img[j] == usize::MAX => img[j] = i,
                    _ => return None,
                }
            }
        }
        Perm::from_images(img).ok()
    }

    /// Row echelon reduction; returns (rank, determinant of the square part).
    fn eliminate(&self) -> (usize, Elt) {
        let f = &self.f;
        let d = self.d;
        let mut m = self.e.clone();
        let mut det = 1;
        let mut r = 0;
        for c in 0..d {
            let Some(p) = (r..d).find(|&i| m[i * d + c] != 0) else {
                det = 0;
                continue;
            };
            if p != r {
                for j in 0..d {
                    m.swap(p * d + j, r * d + j);
                }
                det = f.neg(det);
            }
            let piv = m[r * d + c];
            det = f.mul(det, piv);
            let inv = f.inv_nz(piv);
            for i in r + 1..d {
                let t = f.mul(m[i * d + c], inv);
                if t != 0 {
                    for j in c..d {
                        let v = f.mul(t, m[r * d + j]);
                        m[i * d + j] = f.sub(m[i * d + j], v);
                    }
                }
            }
            r += 1;
        }
        (r, det)
    }

    pub fn det(&self) -> Elt {
        self.eliminate().1
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn inverse(&self) -> Result<Mat> {
        let f = &self.f;
        let d = self.d;
        let mut a = self.e.clone();
        let mut b = Mat::identity(f, d).e;
        for c in 0..d {
            let p = (c..d).find(|&i| a[i * d + c] != 0).ok_or(Error::Singular)?;
            for j in 0..d {
                a.swap(p * d + j, c * d + j);
                b.swap(p * d + j, c * d + j);
            }
            let inv = f.inv_nz(a[c * d + c]);
            for j in 0..d {
                a[c * d + j] = f.mul(a[c * d + j], inv);
                b[c * d + j] = f.mul(b[c * d + j], inv);
            }
            for i in 0..d {
                let t = a[i * d + c];
                if i != c && t != 0 {
                    for j in 0..d {
                        let (x, y) = (f.mul(t, a[c * d + j]), f.mul(t, b[c * d + j]));
                        a[i * d + j] = f.sub(a[i * d + j], x);
                        b[i * d + j] = f.sub(b[i * d + j], y);
                    }
                }
            }
        }
        Ok(Mat { f: f.clone(), d, e: b })
    }

    /// Inverse of a matrix known to be invertible.
    pub fn inv(&self) -> Mat {
        self.inverse().expect("singular matrix")
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut r = Mat::identity(&self.f, self.d);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative order by repeated multiplication, up to `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=cap {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    /// `A v` for a column vector.
    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        (0..self.d)
            .map(|i| (0..self.d).fold(0, |acc, j| self.f.add(acc, self.f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<Elt> {
        (0..self.d).map(|i| self.get(i, j)).collect()
    }

    /// Square block starting at `(r, c)`.
    pub fn block(&self, r: usize, c: usize, size: usize) -> Mat {
        Mat::from_fn(&self.f, size, |i, j| self.get(r + i, c + j))
    }

    pub fn set_block(&mut self, r: usize, c: usize, b: &Mat) {
        for i in 0..b.d {
            for j in 0..b.d {
                self.set(r + i, c + j, b.get(i, j));
            }
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Mat) -> Mat {
        let mut m = Mat::zero(&self.f, self.d + o.d);
        m.set_block(0, 0, self);
        m.set_block(self.d, self.d, o);
        m
    }

    /// Bits per entry for [`Mat::pack`].
    pub fn pack_bits(q: u32) -> u32 {
        32 - (q - 1).leading_zeros()
    }

    /// Packs all entries into one `u128`; `None` if they do not fit.
    pub fn pack(&self) -> Option<u128> {
        let b = Mat::pack_bits(self.f.q());
        if b as usize * self.d * self.d > 128 {
            return None;
        }
        Some(self.e.iter().fold(0u128, |acc, &x| (acc << b) | x as u128))
    }

    pub fn unpack(f: &Field, d: usize, code: u128) -> Mat {
        let b = Mat::pack_bits(f.q());
        let mask = (1u128 << b) - 1;
        let n = d * d;
        let e = (0..n).map(|i| ((code >> (b as usize * (n - 1 - i))) & mask) as Elt).collect();
        Mat { f: f.clone(), d, e }
    }
}

impl GroupElem for Mat {
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn identity_like(&self) -> Self {
        Mat::identity(&self.f, self.d)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.d {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.d {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "] over GF({})", self.f.q())
    }
}

/// Every element of `SL(d, q)`, for small groups.
pub fn enumerate_sl(f: &Field, d: usize) -> Vec<Mat> {
    let q = f.q() as u64;
    let total = q.pow((d * d) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let m = Mat::from_fn(f, d, |_, _| {
            let x = (c % q) as Elt;
            c /= q;
            x
        });
        if m.det() == 1 {
            out.push(m);
        }
    }
    out
}

/// Uniform random element of `SL(d, q)` by rejection and rescaling.
pub fn random_sl<R: rand::Rng>(f: &Field, d: usize, rng: &mut R) -> Mat {
    loop {
        let mut m = Mat::from_fn(f, d, |_, _| rng.random_range(0..f.q()));
        let det = m.det();
        if det != 0 {
            let inv = f.inv_nz(det);
            for j in 0..d {
                let x = f.mul(m.get(0, j), inv);
                m.set(0, j, x);
            }
            return m;
        }
    }
}

/// Uniform random invertible matrix.
pub fn random_gl<R: rand::Rng>(f: &Field, d: usize, rng: &mut R) -> Mat {
    loop {
        let m = Mat::from_fn(f, d, |_, _| rng.random_range(0..f.q()));
        if m.det() != 0 {
            return m;
        }
    }
}

/// Order of `SL(d,q)`.
pub fn sl_order(q: u64, d: u32) -> u128 {
    let q = q as u128;
    let mut n = q.pow(d * (d - 1) / 2);
    for i in 2..=d {
        n *= q.pow(i) - 1;
    }
    n
}
