//! Torus elements of `Sp(2d,q)` and `SU(3,q)` as products of unipotents.

use alloc::vec;

use super::{FormKind, FormSpace};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::matrix::Mat;
use crate::witness::{Tag, Witness};

/// `X(t) = [[I, S(t)], [0, I]]`, `S(t) = t·E₁₁`, in `Sp(2d)`.
pub fn sp_x(f: &Field, d: usize, t: Elt) -> Mat {
    Mat::elementary(f, 2 * d, 0, d, t)
}

/// `Y(t) = [[I, 0], [S(t), I]]` in `Sp(2d)`.
pub fn sp_y(f: &Field, d: usize, t: Elt) -> Mat {
    Mat::elementary(f, 2 * d, d, 0, t)
}

/// `diag(D_λ, D_λ⁻¹)` with `D_λ = diag(λ, 1, .., 1)`, basis `e1..ed, f1..fd`.
pub fn sp_torus(f: &Field, d: usize, lam: Elt) -> Mat {
    let mut v = vec![1; 2 * d];
    v[0] = lam;
    v[d] = f.inv_nz(lam);
    Mat::diag(f, &v)
}

/// `X(λ)·Y(-λ⁻¹)·X(λ)·X(-1)·Y(1)·X(-1) = diag(D_λ, D_λ⁻¹)`.
pub fn sp_borel_torus_word(f: &Field, d: usize, lam: Elt) -> Result<Witness<Mat>> {
    if lam == 0 {
        return Err(Error::ZeroLambda);
    }
    if d < 1 {
        return Err(Error::DimensionTooSmall(d));
    }
    let m1 = f.minus_one();
    let li = f.inv_nz(lam);
    let mut w = Witness::new(sp_torus(f, d, lam));
    w.push(sp_x(f, d, lam), Tag::X);
    w.push(sp_y(f, d, f.neg(li)), Tag::Y);
    w.push(sp_x(f, d, lam), Tag::X);
    w.push(sp_x(f, d, m1), Tag::X);
    w.push(sp_y(f, d, 1), Tag::Y);
    w.push(sp_x(f, d, m1), Tag::X);
    Ok(w)
}

/// The hermitian space `(e, w, f)` of `SU(3,q)` over GF(q²).
pub fn su3_space(q: u64) -> Result<FormSpace> {
    FormSpace::new(FormKind::Hermitian, 3, q)
}

/// Least `ε` with `ε·ε̄ = -1`.
pub fn su3_epsilon(f: &Field) -> Elt {
    let m1 = f.minus_one();
    f.nonzero().find(|&e| f.mul(e, f.conj(e)) == m1).expect("norm is onto")
}

/// Least `t` with `λ⁻¹ + λ̄⁻¹ = t·t̄`, when `λ ∈ L`.
pub fn l_witness(f: &Field, lam: Elt) -> Option<Elt> {
    if lam == 0 {
        return None;
    }
    let li = f.inv_nz(lam);
    let s = f.add(li, f.conj(li));
    f.elements().find(|&t| f.mul(t, f.conj(t)) == s)
}

/// `antidiag(λ, -λ⁻¹·λ̄, λ̄⁻¹)`, the product `A₁·B·A₂`.
pub fn su3_cross(f: &Field, lam: Elt) -> Mat {
    let li = f.inv_nz(lam);
    let lb = f.conj(lam);
    let mut m = Mat::zero(f, 3);
    m.set(0, 2, lam);
    m.set(1, 1, f.neg(f.mul(li, lb)));
    m.set(2, 0, f.inv_nz(lb));
    m
}

/// `diag(λ, λ⁻¹·λ̄, λ̄⁻¹)`.
pub fn su3_torus(f: &Field, lam: Elt) -> Mat {
    let lb = f.conj(lam);
    Mat::diag(f, &[lam, f.mul(f.inv_nz(lam), lb), f.inv_nz(lb)])
}

#[derive(Clone, Debug)]
pub struct Su3Factor {
    pub a1: Mat,
    pub b: Mat,
    pub a2: Mat,
    pub t: Elt,
    pub eps: Elt,
}

impl Su3Factor {
    pub fn product(&self) -> Mat {
        self.a1.mul(&self.b).mul(&self.a2)
    }
}

/// Unipotents `A₁`, `A₂` (upper) and `B` (lower) in `SU(3,q)` with
/// `A₁·B·A₂ = antidiag(λ, -λ⁻¹·λ̄, λ̄⁻¹)`, for `λ ∈ L`.
pub fn su3_torus_factor(f: &Field, lam: Elt) -> Result<Su3Factor> {
    if lam == 0 {
        return Err(Error::ZeroLambda);
    }
    let t = l_witness(f, lam).ok_or(Error::NotInL)?;
    let eps = su3_epsilon(f);
    let ei = f.inv_nz(eps);
    let lb = f.conj(lam);
    let tb = f.conj(t);
    let m = |rows: [[Elt; 3]; 3]| Mat::from_rows(f, &rows.map(|r| r.to_vec())).unwrap();
    let a1 = m([[1, f.mul(ei, f.mul(lam, t)), lam], [0, 1, f.mul(eps, f.mul(lb, tb))], [0, 0, 1]]);
    let a2 = m([[1, f.mul(ei, f.mul(lb, t)), lam], [0, 1, f.mul(eps, f.mul(lam, tb))], [0, 0, 1]]);
    let b = m([[1, 0, 0], [f.neg(f.mul(eps, tb)), 1, 0], [f.inv_nz(lb), f.neg(f.mul(ei, t)), 1]]);
    Ok(Su3Factor { a1, b, a2, t, eps })
}

/// `(λ₁, λ₂)` in `L` with `λ = λ₁·λ̄₂⁻¹`, least `λ₂` first.
pub fn lambda_split(f: &Field, lam: Elt) -> Result<(Elt, Elt)> {
    if lam == 0 {
        return Err(Error::ZeroLambda);
    }
    for l2 in f.nonzero() {
        if l_witness(f, l2).is_none() {
            continue;
        }
        let l1 = f.mul(lam, f.conj(l2));
        if l_witness(f, l1).is_some() {
            return Ok((l1, l2));
        }
    }
    Err(Error::SearchExhausted(f.q() as u64))
}

/// `diag(λ, λ⁻¹·λ̄, λ̄⁻¹)` as six unipotent letters `A₁ B A₂ A₁' B' A₂'`.
pub fn su3_torus_word(f: &Field, lam: Elt) -> Result<Witness<Mat>> {
    let (l1, l2) = lambda_split(f, lam)?;
    let mut w = Witness::new(su3_torus(f, lam));
    for l in [l1, l2] {
        let s = su3_torus_factor(f, l)?;
        w.push(s.a1, Tag::X);
        w.push(s.b, Tag::Y);
        w.push(s.a2, Tag::X);
    }
    Ok(w)
}
