//! `SL(d+1,q)` words over the corner copies `S` (top-left) and `T`
//! (bottom-right) of `SL(d,q)`.

use alloc::vec::Vec;

use super::bruhat::bruhat_decompose;
use super::Mat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::Perm;
use crate::witness::{Tag, Witness};

/// Fixes the last basis vector and has determinant 1.
pub fn in_s(m: &Mat) -> bool {
    let n = m.dim() - 1;
    (0..n).all(|i| m.get(i, n) == 0 && m.get(n, i) == 0) && m.get(n, n) == 1 && m.det() == 1
}

/// Fixes the first basis vector and has determinant 1.
pub fn in_t(m: &Mat) -> bool {
    (1..m.dim()).all(|i| m.get(i, 0) == 0 && m.get(0, i) == 0) && m.get(0, 0) == 1 && m.det() == 1
}

/// Letter predicate for step witnesses.
pub fn step_letter_ok(m: &Mat, t: &Tag) -> bool {
    match t {
        Tag::S => in_s(m),
        Tag::T => in_t(m),
        _ => false,
    }
}

/// Signed permutation matrix of `σ` with determinant 1: `P_σ·diag(sgn σ, 1, ..)`.
pub fn signed_perm(f: &Field, s: &Perm) -> Mat {
    let mut m = Mat::perm(f, s);
    if !s.is_even() {
        let j = 0;
        let i = s.apply(j);
        m.set(i, j, f.minus_one());
    }
    m
}

/// A signed cyclic shift `c` with `c·S·c⁻¹ = T`.
pub fn s_to_t_conjugator(f: &Field, dim: usize) -> Mat {
    let shift = Perm::from_images((0..dim).map(|i| (i + 1) % dim).collect()).unwrap();
    signed_perm(f, &shift)
}

fn push_unipotent(w: &mut Vec<(Mat, Tag)>, u: &Mat) {
    let f = u.field();
    let n = u.dim();
    let last = n - 1;
    // U = [X,Y]·T_part·S_part with the corner entry in the commutator
    let z = u.get(0, last);
    if z != 0 {
        let x = Mat::elementary(f, n, 0, 1, 1);
        let y = Mat::elementary(f, n, 1, last, z);
        w.push((x.clone(), Tag::S));
        w.push((y.clone(), Tag::T));
        w.push((x.inv(), Tag::S));
        w.push((y.inv(), Tag::T));
    }
    let mut t = u.clone();
    let mut s = Mat::identity(f, n);
    for j in 1..n {
        t.set(0, j, 0);
        if j < last {
            s.set(0, j, u.get(0, j));
        }
    }
    w.push((t, Tag::T));
    w.push((s, Tag::S));
}

/// Signed permutation matrices for the Weyl part, as S and T letters.
fn push_weyl(w: &mut Vec<(Mat, Tag)>, f: &Field, s: &Perm) {
    let n = s.degree();
    let last = n - 1;
    let target = signed_perm(f, s);
    if s.fixes(last) {
        w.push((target, Tag::S));
        return;
    }
    // σ = ψ1·θ·ψ3 with ψ1, ψ3 fixing the last point and θ = (last-1 last)
    let theta = Perm::from_cycles(n, &[&[last - 1, last]]).unwrap();
    let c = s.inverse().apply(last);
    let psi3 = if c == last - 1 { Perm::identity(n) } else { Perm::from_cycles(n, &[&[c, last - 1]]).unwrap() };
    let psi1 = s.mul(&psi3.inverse()).mul(&theta);
    let mut rtheta = Mat::perm(f, &theta);
    rtheta.set(last - 1, last, f.minus_one());
    let (a, b) = (signed_perm(f, &psi1), signed_perm(f, &psi3));
    let rest = a.mul(&rtheta).mul(&b).inv().mul(&target);
    w.push((a, Tag::S));
    w.push((rtheta, Tag::T));
    w.push((b, Tag::S));
    push_diagonal(w, &rest);
}

/// `D = D1·D2` with `D1 = diag(λ1, λ1⁻¹, 1, ..)` and `D2 = diag(1, λ1λ2, λ3, ..)`.
fn push_diagonal(w: &mut Vec<(Mat, Tag)>, h: &Mat) {
    let f = h.field();
    let n = h.dim();
    let l1 = h.get(0, 0);
    let mut d1 = alloc::vec![1; n];
    d1[0] = l1;
    d1[1] = f.inv_nz(l1);
    let mut d2: Vec<_> = (0..n).map(|i| h.get(i, i)).collect();
    d2[0] = 1;
    d2[1] = f.mul(l1, h.get(1, 1));
    w.push((Mat::diag(f, &d1), Tag::S));
    w.push((Mat::diag(f, &d2), Tag::T));
}

/// Factors `phi ∈ SL(d+1, q)` (d ≥ 2) as a word in `S` and `T`.
pub fn sl_step_factor(phi: &Mat) -> Result<Witness<Mat>> {
    let n = phi.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if phi.det() != 1 {
        return Err(Error::NotSpecial);
    }
    let f = phi.field().clone();
    let mut out = Witness::new(phi.clone());
    if phi.is_identity() {
        return Ok(out);
    }
    if in_s(phi) {
        out.push(phi.clone(), Tag::S);
        return Ok(out);
    }
    let br = bruhat_decompose(phi)?;
    let sg = if br.sigma.is_even() { 1 } else { f.minus_one() };
    let mut sfix = alloc::vec![1; n];
    sfix[0] = sg;
    let sfix = Mat::diag(&f, &sfix);
    // φ = b1·W·b2' with W = P_σ·diag(s,1,..) of determinant 1
    let wm = br.w.mul(&sfix);
    let b2 = sfix.mul(&br.b2);
    let h1 = Mat::diag(&f, &(0..n).map(|i| br.b1.get(i, i)).collect::<Vec<_>>());
    let u1 = h1.inv().mul(&br.b1);
    let h2 = Mat::diag(&f, &(0..n).map(|i| b2.get(i, i)).collect::<Vec<_>>());
    let u2 = h2.inv().mul(&b2);
    let h2c = wm.mul(&h2).mul(&wm.inv());
    let u1c = h2c.inv().mul(&u1).mul(&h2c);
    let h = h1.mul(&h2c);
    let mut letters = Vec::new();
    push_diagonal(&mut letters, &h);
    push_unipotent(&mut letters, &u1c);
    push_weyl(&mut letters, &f, &br.sigma);
    push_unipotent(&mut letters, &u2);
    out.letters = letters;
    out.simplify(&[Tag::S, Tag::T]);
    debug_assert!(out.multiplies_back());
    Ok(out)
}
