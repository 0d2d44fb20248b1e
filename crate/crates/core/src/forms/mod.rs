//! Form spaces of the classical groups and the identities used to generate
//! `Sp`, `SU` and `Ω` over their embedded subgroups.
//!
//! Ordered bases:
//!
//! | kind              | basis                          | form                       |
//! |-------------------|--------------------------------|----------------------------|
//! | `Symplectic`      | `e1..ed, f1..fd`               | `J = [[0, I], [-I, 0]]`    |
//! | `Hermitian`, even | `e1..ed, f1..fd`               | `[[0, I], [I, 0]]`         |
//! | `Hermitian`, odd  | `e1..ed, w, fd..f1`            | antidiagonal ones          |
//! | `QuadraticPlus`   | `e1..ed, f1..fd`               | `Q = Σ xᵢ·yᵢ`              |
//! | `QuadraticOdd`    | `e1..ed, f1..fd, w`            | `Q = Σ xᵢ·yᵢ + w²`         |
//! | `QuadraticMinus`  | `e1..ed, f1..fd, w, z`         | `Q = Σ xᵢ·yᵢ + w² + wz + νz²` |
//!
//! Here `ν` is the least element with `x² + x + ν` irreducible. Hermitian
//! spaces live over GF(q²) with `x̄ = x^q`.
//!
//! Orthogonal isometries are checked for preservation of `Q` and for
//! determinant 1 only. Membership of `Ω` (spinor norm, Dickson invariant) is
//! not tested.

pub mod lemma;
pub mod symmetric;
pub mod torus;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::matrix::Mat;
use crate::perm::Perm;

pub use symmetric::{
    diagonalize, four_squares, symmetric_module_factor, two_squares, SymGen,
    SymmetricCombination,
};
pub use torus::{lambda_split, sp_borel_torus_word, su3_torus_factor, Su3Factor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Symplectic,
    Hermitian,
    QuadraticPlus,
    QuadraticMinus,
    QuadraticOdd,
}

impl FormKind {
    pub fn is_quadratic(self) -> bool {
        matches!(self, FormKind::QuadraticPlus | FormKind::QuadraticMinus | FormKind::QuadraticOdd)
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Symplectic => "symplectic",
            FormKind::Hermitian => "hermitian",
            FormKind::QuadraticPlus => "quadratic-plus",
            FormKind::QuadraticMinus => "quadratic-minus",
            FormKind::QuadraticOdd => "quadratic-odd",
        })
    }
}

impl FromStr for FormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<FormKind> {
        Ok(match s {
            "symplectic" | "sp" => FormKind::Symplectic,
            "hermitian" | "unitary" | "su" => FormKind::Hermitian,
            "quadratic-plus" | "plus" => FormKind::QuadraticPlus,
            "quadratic-minus" | "minus" => FormKind::QuadraticMinus,
            "quadratic-odd" | "odd" => FormKind::QuadraticOdd,
            _ => return Err(Error::Invalid(format!("unknown form kind {s:?}"))),
        })
    }
}

/// A vector space with a non-degenerate form in its distinguished basis.
#[derive(Clone, Debug)]
pub struct FormSpace {
    kind: FormKind,
    field: Field,
    dim: usize,
    witt: usize,
    /// Bilinear, sesquilinear or polar form.
    gram: Mat,
    /// Upper triangular `Q`-matrix: `Q(v) = vᵀ·M·v`.
    quad: Option<Mat>,
    labels: Vec<String>,
}

impl FormSpace {
    /// Space of dimension `dim` over GF(q), or over GF(q²) for hermitian forms.
    pub fn new(kind: FormKind, dim: usize, q: u64) -> Result<FormSpace> {
        let field = match kind {
            FormKind::Hermitian => Field::of_order(q.checked_mul(q).ok_or(Error::TooLarge(format!("q = {q}")))?)?,
            _ => Field::of_order(q)?,
        };
        let witt = match kind {
            FormKind::Symplectic | FormKind::QuadraticPlus => {
                if !dim.is_multiple_of(2) || dim < 2 {
                    return Err(Error::Invalid(format!("{kind} needs even dimension, got {dim}")));
                }
                dim / 2
            }
            FormKind::QuadraticOdd => {
                if dim.is_multiple_of(2) || dim < 3 {
                    return Err(Error::Invalid(format!("{kind} needs odd dimension ≥ 3, got {dim}")));
                }
                dim / 2
            }
            FormKind::QuadraticMinus => {
                if !dim.is_multiple_of(2) || dim < 2 {
                    return Err(Error::Invalid(format!("{kind} needs even dimension, got {dim}")));
                }
                dim / 2 - 1
            }
            FormKind::Hermitian => {
                if dim < 2 {
                    return Err(Error::DimensionTooSmall(dim));
                }
                dim / 2
            }
        };
        let mut s = FormSpace {
            kind,
            field: field.clone(),
            dim,
            witt,
            gram: Mat::zero(&field, dim),
            quad: None,
            labels: Vec::new(),
        };
        s.labels = vec![String::new(); dim];
        for i in 0..witt {
            let (ei, fi) = (s.e(i), s.f(i));
            s.labels[ei] = format!("e{}", i + 1);
            s.labels[fi] = format!("f{}", i + 1);
        }
        if let Some(w) = s.w() {
            s.labels[w] = "w".into();
        }
        if let Some(z) = s.z() {
            s.labels[z] = "z".into();
        }
        let one = 1;
        if kind.is_quadratic() {
            let mut m = Mat::zero(&field, dim);
            for i in 0..witt {
                m.set(s.e(i), s.f(i), one);
            }
            if let Some(w) = s.w() {
                m.set(w, w, one);
            }
            if let Some(z) = s.z() {
                let w = s.w().unwrap();
                m.set(w, z, one);
                m.set(z, z, irreducible_nu(&field));
            }
            s.gram = m.add(&m.transpose());
            s.quad = Some(m);
        } else {
            let mut g = Mat::zero(&field, dim);
            let back = if kind == FormKind::Symplectic { field.minus_one() } else { one };
            for i in 0..witt {
                g.set(s.e(i), s.f(i), one);
                g.set(s.f(i), s.e(i), back);
            }
            if let Some(w) = s.w() {
                g.set(w, w, one);
            }
            s.gram = g;
        }
        Ok(s)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Number of hyperbolic pairs `d`.
    pub fn witt_index(&self) -> usize {
        self.witt
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn quad_matrix(&self) -> Option<&Mat> {
        self.quad.as_ref()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn hermitian_odd(&self) -> bool {
        self.kind == FormKind::Hermitian && self.dim % 2 == 1
    }

    /// Position of `e_{i+1}`.
    pub fn e(&self, i: usize) -> usize {
        i
    }

    /// Position of `f_{i+1}`.
    pub fn f(&self, i: usize) -> usize {
        if self.hermitian_odd() {
            2 * self.witt - i
        } else {
            self.witt + i
        }
    }

    /// Position of `w`, if the space has one.
    pub fn w(&self) -> Option<usize> {
        match self.kind {
            FormKind::QuadraticOdd | FormKind::QuadraticMinus => Some(2 * self.witt),
            FormKind::Hermitian if self.dim % 2 == 1 => Some(self.witt),
            _ => None,
        }
    }

    /// Position of `z`, if the space has one.
    pub fn z(&self) -> Option<usize> {
        (self.kind == FormKind::QuadraticMinus).then_some(2 * self.witt + 1)
    }

    fn check_vec(&self, u: &[Elt]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, u.len()));
        }
        Ok(())
    }

    fn check_mat(&self, a: &Mat) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, a.dim()));
        }
        if *a.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `(u, v)`: the polar form for quadratic kinds, `uᵀ·G·v̄` for hermitian.
    pub fn form_value(&self, u: &[Elt], v: &[Elt]) -> Result<Elt> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        let f = &self.field;
        let v: Vec<Elt> = if self.kind == FormKind::Hermitian {
            v.iter().map(|&x| f.conj(x)).collect()
        } else {
            v.to_vec()
        };
        let gv = self.gram.apply(&v);
        Ok(u.iter().zip(gv).fold(0, |acc, (&a, b)| f.add(acc, f.mul(a, b))))
    }

    /// `Q(u)` for quadratic kinds.
    pub fn quad_value(&self, u: &[Elt]) -> Result<Elt> {
        self.check_vec(u)?;
        let m = self.quad.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no quadratic form", self.kind)))?;
        let f = &self.field;
        let mu = m.apply(u);
        Ok(u.iter().zip(mu).fold(0, |acc, (&a, b)| f.add(acc, f.mul(a, b))))
    }

    /// Whether `a` preserves the form (and `Q`), with `det a = 1`.
    pub fn is_isometry(&self, a: &Mat) -> Result<bool> {
        self.check_mat(a)?;
        let at = a.transpose();
        let preserved = match self.kind {
            FormKind::Hermitian => at.mul(&self.gram).mul(&a.conj()) == self.gram,
            _ => at.mul(&self.gram).mul(a) == self.gram,
        };
        if !preserved || a.det() != 1 {
            return Ok(false);
        }
        if self.kind.is_quadratic() {
            for j in 0..self.dim {
                let mut ej = vec![0; self.dim];
                ej[j] = 1;
                if self.quad_value(&a.col(j))? != self.quad_value(&ej)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Representatives `w₁..w_d` of the Weyl group generators in `N`.
    ///
    /// `w_i` (`i < d`) swaps `eᵢ ↔ eᵢ₊₁` and `fᵢ ↔ fᵢ₊₁`. The last generator
    /// depends on the kind:
    /// - symplectic: `e_d ↦ -f_d`, `f_d ↦ e_d`;
    /// - hermitian: `e_d ↦ b̄⁻¹·f_d`, `f_d ↦ b·e_d` with `b` the least nonzero
    ///   element with `b̄ = -b` (`b = 1` in characteristic 2);
    /// - plus type: `e_{d-1} ↔ f_d`, `e_d ↔ f_{d-1}` (only for `d ≥ 2`);
    /// - odd and minus types: `e_d ↔ f_d` followed by the reflection in `w`
    ///   (plain swap in characteristic 2).
    pub fn weyl_generators(&self) -> Vec<Mat> {
        let d = self.witt;
        let f = &self.field;
        let n = self.dim;
        let mut out = Vec::new();
        let swap_pairs = |pairs: &[(usize, usize)]| {
            let mut img: Vec<usize> = (0..n).collect();
            for &(a, b) in pairs {
                img.swap(a, b);
            }
            Mat::perm(f, &Perm::from_images(img).expect("swap"))
        };
        for i in 0..d.saturating_sub(1) {
            out.push(swap_pairs(&[(self.e(i), self.e(i + 1)), (self.f(i), self.f(i + 1))]));
        }
        if d == 0 {
            return out;
        }
        let (ed, fd) = (self.e(d - 1), self.f(d - 1));
        match self.kind {
            FormKind::Symplectic => {
                let mut m = Mat::identity(f, n);
                m.set(ed, ed, 0);
                m.set(fd, fd, 0);
                m.set(fd, ed, f.minus_one());
                m.set(ed, fd, 1);
                out.push(m);
            }
            FormKind::Hermitian => {
                let b = f.nonzero().find(|&b| f.conj(b) == f.neg(b)).expect("skew element");
                let mut m = Mat::identity(f, n);
                m.set(ed, ed, 0);
                m.set(fd, fd, 0);
                m.set(fd, ed, f.inv_nz(f.conj(b)));
                m.set(ed, fd, b);
                out.push(m);
            }
            FormKind::QuadraticPlus => {
                if d >= 2 {
                    let (ec, fc) = (self.e(d - 2), self.f(d - 2));
                    out.push(swap_pairs(&[(ec, fd), (ed, fc)]));
                }
            }
            FormKind::QuadraticOdd | FormKind::QuadraticMinus => {
                let s = swap_pairs(&[(ed, fd)]);
                if f.p() == 2 {
                    out.push(s);
                } else {
                    out.push(s.mul(&self.reflection(self.w().unwrap())));
                }
            }
        }
        out
    }

    /// Reflection `x ↦ x - (x,v)/Q(v)·v` in the basis vector at `pos`.
    fn reflection(&self, pos: usize) -> Mat {
        let f = &self.field;
        let mut v = vec![0; self.dim];
        v[pos] = 1;
        let qv = self.quad_value(&v).expect("quadratic");
        let qi = f.inv_nz(qv);
        Mat::from_fn(f, self.dim, |i, j| {
            let delta = (i == j) as Elt;
            // column j is the image of basis vector j
            let c = f.mul(self.gram.get(j, pos), qi);
            f.sub(delta, f.mul(c, v[i]))
        })
    }

    /// Action of a monomial matrix on the frame `{e₁..e_d, f₁..f_d}`, points
    /// `0..d` for the `e`s and `d..2d` for the `f`s; `None` if `a` moves some
    /// frame line off the frame.
    pub fn frame_permutation(&self, a: &Mat) -> Option<Perm> {
        let d = self.witt;
        let frame: Vec<usize> = (0..d).map(|i| self.e(i)).chain((0..d).map(|i| self.f(i))).collect();
        let mut img = Vec::with_capacity(2 * d);
        for &src in &frame {
            let col = a.col(src);
            let nz: Vec<usize> = (0..self.dim).filter(|&r| col[r] != 0).collect();
            if nz.len() != 1 {
                return None;
            }
            img.push(frame.iter().position(|&x| x == nz[0])?);
        }
        Perm::from_images(img).ok()
    }
}

/// Least `ν` with `x² + x + ν` irreducible over `f`.
pub fn irreducible_nu(f: &Field) -> Elt {
    f.elements()
        .find(|&nu| f.elements().all(|x| f.add(f.add(f.mul(x, x), x), nu) != 0))
        .expect("every finite field has an irreducible quadratic")
}

/// `(π, φ)` with `u = π(v) + φ(v)` over Z₂, where `v` has ones in its first
/// `⌊d/2⌋` positions and `π(v)` moves entry `i` to position `π(i)`.
pub fn even_weight_decompose(u: &[bool], d: usize) -> Result<(Perm, Perm)> {
    if u.len() != d {
        return Err(Error::DimensionMismatch(d, u.len()));
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let support: Vec<usize> = (0..d).filter(|&i| u[i]).collect();
    if !support.len().is_multiple_of(2) {
        return Err(Error::OddWeight);
    }
    let t = d / 2;
    let h = support.len() / 2;
    let rest: Vec<usize> = (0..d).filter(|&i| !u[i]).collect();
    let common = &rest[..t - h];
    let a: Vec<usize> = support[..h].iter().chain(common).copied().collect();
    let b: Vec<usize> = support[h..].iter().chain(common).copied().collect();
    Ok((onto_front(&a, d), onto_front(&b, d)))
}

/// Permutation sending `0..k` to `set` in order and the rest increasingly.
fn onto_front(set: &[usize], d: usize) -> Perm {
    let mut img = set.to_vec();
    img.extend((0..d).filter(|i| !set.contains(i)));
    Perm::from_images(img).expect("bijection")
}

/// Image of a 0/1 vector under a coordinate permutation.
pub fn permute_vector(p: &Perm, v: &[bool]) -> Vec<bool> {
    let mut out = vec![false; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[p.apply(i)] = x;
    }
    out
}

fn rank_of(f: &Field, vs: &[&[Elt]]) -> usize {
    let d = vs[0].len();
    let n = d.max(vs.len());
    let m = Mat::from_fn(f, n, |i, j| if i < d && j < vs.len() { vs[j][i] } else { 0 });
    m.rank()
}

/// `A ∈ SL(d)` with `A·a = u` and `A·b = v`; both pairs independent, `d ≥ 3`.
pub fn map_pair(f: &Field, a: &[Elt], b: &[Elt], u: &[Elt], v: &[Elt]) -> Mat {
    let d = a.len();
    let complete = |x: &[Elt], y: &[Elt]| {
        let mut cols: Vec<Vec<Elt>> = vec![x.to_vec(), y.to_vec()];
        for j in 0..d {
            let mut e = vec![0; d];
            e[j] = 1;
            cols.push(e);
            let refs: Vec<&[Elt]> = cols.iter().map(|c| c.as_slice()).collect();
            if rank_of(f, &refs) < cols.len() {
                cols.pop();
            }
        }
        Mat::from_fn(f, d, |i, j| cols[j][i])
    };
    let m = complete(a, b);
    let mut n = complete(u, v);
    let s = f.div(m.det(), n.det()).expect("basis");
    for i in 0..d {
        let x = f.mul(n.get(i, 2), s);
        n.set(i, 2, x);
    }
    n.mul(&m.inv())
}

/// `(A, B)` in `SL(d,q)` with `A·a + B·a = x` and `A·b + B·b = y`.
///
/// Scans `(u, v)` in code order for both `(u, v)` and `(x-u, y-v)`
/// independent, then maps `(a, b)` onto each.
pub fn pair_span_decompose(f: &Field, x: &[Elt], y: &[Elt], a: &[Elt], b: &[Elt]) -> Result<(Mat, Mat)> {
    let d = a.len();
    for v in [x, y, b] {
        if v.len() != d {
            return Err(Error::DimensionMismatch(d, v.len()));
        }
    }
    if d < 3 {
        return Err(Error::DimensionTooSmall(d));
    }
    if rank_of(f, &[a, b]) < 2 {
        return Err(Error::DependentPair);
    }
    let q = f.q() as u64;
    let total = q.saturating_pow(d as u32);
    let vec_of = |mut c: u64| -> Vec<Elt> {
        (0..d)
            .map(|_| {
                let e = (c % q) as Elt;
                c /= q;
                e
            })
            .collect()
    };
    let sub = |p: &[Elt], r: &[Elt]| -> Vec<Elt> { p.iter().zip(r).map(|(&s, &t)| f.sub(s, t)).collect() };
    for cu in 1..total {
        let u = vec_of(cu);
        let xu = sub(x, &u);
        for cv in 1..total {
            let v = vec_of(cv);
            let yv = sub(y, &v);
            if rank_of(f, &[&u, &v]) == 2 && rank_of(f, &[&xu, &yv]) == 2 {
                return Ok((map_pair(f, a, b, &u, &v), map_pair(f, a, b, &xu, &yv)));
            }
        }
    }
    Err(Error::SearchExhausted(total.saturating_mul(total)))
}

#[cfg(test)]
mod tests;
