//! The `SL(d,q)`-module of symmetric matrices under `S ↦ A·S·Aᵀ`, and its
//! uniform generation from two fixed generators `D₁`, `D₂`.
//!
//! | char  | `D₁`                 | `D₂`                   | terms      |
//! |-------|----------------------|------------------------|------------|
//! | `> 3` | `diag(1,0,..,0)`     | `diag(0,1,..,1)`       | 8          |
//! | `3`   | `diag(1,1,0,..,0)`   | `diag(δ,1,..,1)`       | 24         |
//! | `2`   | `diag(1,0,..,0)`     | `I`                    | 15         |
//!
//! with `δ = 1` for even `d`, else 0. In characteristic 2 with `d = 2` every
//! term uses `D₁` and there are at most 3.

use alloc::vec;
use alloc::vec::Vec;

use super::lemma::{self, GF2_TERMS, SL23, SL23_TERMS};
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::matrix::Mat;

/// Which generator a term conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymGen {
    D1,
    D2,
}

/// `target = Σ A·D·Aᵀ` over the terms `(A, D)`.
#[derive(Clone, Debug)]
pub struct SymmetricCombination {
    pub target: Mat,
    pub d1: Mat,
    pub d2: Mat,
    pub terms: Vec<(Mat, SymGen)>,
}

impl SymmetricCombination {
    pub fn generator(&self, g: SymGen) -> &Mat {
        match g {
            SymGen::D1 => &self.d1,
            SymGen::D2 => &self.d2,
        }
    }

    pub fn sum(&self) -> Mat {
        let f = self.target.field();
        let mut acc = Mat::zero(f, self.target.dim());
        for (a, g) in &self.terms {
            acc = acc.add(&a.mul(self.generator(*g)).mul(&a.transpose()));
        }
        acc
    }

    /// Sum matches and every coefficient lies in `SL(d,q)`.
    pub fn verify(&self) -> bool {
        self.terms.iter().all(|(a, _)| a.det() == 1) && self.sum() == self.target
    }
}

/// Fixed generators `(D₁, D₂)` for `d×d` matrices over `f`.
pub fn generators(f: &Field, d: usize) -> (Mat, Mat) {
    let diag = |g: &dyn Fn(usize) -> Elt| Mat::diag(f, &(0..d).map(g).collect::<Vec<_>>());
    match f.p() {
        3 => {
            let delta = d.is_multiple_of(2) as Elt;
            (diag(&|i| (i < 2) as Elt), diag(&|i| if i == 0 { delta } else { 1 }))
        }
        2 => (diag(&|i| (i == 0) as Elt), Mat::identity(f, d)),
        _ => (diag(&|i| (i == 0) as Elt), diag(&|i| (i > 0) as Elt)),
    }
}

/// Upper bound on the number of terms `symmetric_module_factor` returns.
pub fn case_bound(p: u32, d: usize) -> usize {
    match p {
        2 if d == 2 => 3,
        2 => 3 * (1 + GF2_TERMS),
        3 => 4 * SL23_TERMS,
        _ => 8,
    }
}

fn sqrt_table(f: &Field) -> Vec<Option<Elt>> {
    let mut t = vec![None; f.q() as usize];
    for r in f.elements() {
        let s = f.mul(r, r) as usize;
        if t[s].is_none() {
            t[s] = Some(r);
        }
    }
    t
}

/// Least `(β₁..β₄)`, all nonzero, with `Σ βᵢ² = lam`; characteristic `> 3`.
pub fn four_squares(f: &Field, lam: Elt) -> Result<[Elt; 4]> {
    if f.p() <= 3 {
        return Err(Error::BadCharacteristic(f.p() as u64));
    }
    let roots = sqrt_table(f);
    for b1 in f.nonzero() {
        let r1 = f.sub(lam, f.mul(b1, b1));
        for b2 in f.nonzero() {
            let r2 = f.sub(r1, f.mul(b2, b2));
            for b3 in f.nonzero() {
                let r3 = f.sub(r2, f.mul(b3, b3));
                if r3 != 0 {
                    if let Some(b4) = roots[r3 as usize] {
                        return Ok([b1, b2, b3, b4]);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(f.q() as u64))
}

/// Least `(α, β)` with `α² + β² = lam`.
pub fn two_squares(f: &Field, lam: Elt) -> (Elt, Elt) {
    let roots = sqrt_table(f);
    for a in f.elements() {
        if let Some(b) = roots[f.sub(lam, f.mul(a, a)) as usize] {
            return (a, b);
        }
    }
    unreachable!("every element of a finite field is a sum of two squares")
}

/// Row operation `row_dst += t·row_src` on `p`, applied as a congruence to `m`.
fn transvect(p: &mut Mat, m: &mut Mat, dst: usize, src: usize, t: Elt) {
    let f = p.field().clone();
    let d = p.dim();
    for j in 0..d {
        let x = f.add(p.get(dst, j), f.mul(t, p.get(src, j)));
        p.set(dst, j, x);
        let y = f.add(m.get(dst, j), f.mul(t, m.get(src, j)));
        m.set(dst, j, y);
    }
    for i in 0..d {
        let y = f.add(m.get(i, dst), f.mul(t, m.get(i, src)));
        m.set(i, dst, y);
    }
}

/// Swap of rows `i`, `j` with row `i` negated, so the operation has determinant 1.
fn signed_swap(p: &mut Mat, m: &mut Mat, i: usize, j: usize) {
    let f = p.field().clone();
    let d = p.dim();
    for c in 0..d {
        let (a, b) = (p.get(i, c), p.get(j, c));
        p.set(i, c, f.neg(b));
        p.set(j, c, a);
    }
    let old = m.clone();
    let sign = |r: usize| if r == i { f.minus_one() } else { 1 };
    let src = |r: usize| if r == i { j } else if r == j { i } else { r };
    for r in 0..d {
        for c in 0..d {
            let x = f.mul(f.mul(sign(r), sign(c)), old.get(src(r), src(c)));
            m.set(r, c, x);
        }
    }
}

/// `(P, λ)` with `det P = 1` and `P·S·Pᵀ = diag(λ)`.
///
/// Pivots on the least remaining nonzero diagonal entry. With only
/// off-diagonal entries left, odd characteristic adds one row to another;
/// characteristic 2 folds a remaining vector into an earlier pivot, and fails
/// with `Alternating` when there is none.
pub fn diagonalize(s: &Mat) -> Result<(Mat, Vec<Elt>)> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let f = s.field().clone();
    let d = s.dim();
    let mut p = Mat::identity(&f, d);
    let mut m = s.clone();
    let mut i = 0;
    while i < d {
        let piv = (i..d).find(|&j| m.get(j, j) != 0);
        let piv = match piv {
            Some(j) => j,
            None => {
                let off = (i..d).flat_map(|r| (r + 1..d).map(move |c| (r, c))).find(|&(r, c)| m.get(r, c) != 0);
                let Some((r, c)) = off else { break };
                if f.p() != 2 {
                    transvect(&mut p, &mut m, r, c, 1);
                    r
                } else {
                    let Some(k) = (0..i).rev().find(|&k| m.get(k, k) != 0) else {
                        return Err(Error::Alternating);
                    };
                    transvect(&mut p, &mut m, k, r, 1);
                    for y in i..d {
                        let t = f.div(m.get(y, k), m.get(k, k)).unwrap();
                        if t != 0 {
                            transvect(&mut p, &mut m, y, k, f.neg(t));
                        }
                    }
                    continue;
                }
            }
        };
        if piv != i {
            signed_swap(&mut p, &mut m, i, piv);
        }
        let a = m.get(i, i);
        for r in i + 1..d {
            let t = f.div(m.get(r, i), a).unwrap();
            if t != 0 {
                transvect(&mut p, &mut m, r, i, f.neg(t));
            }
        }
        i += 1;
    }
    debug_assert!(m.is_diagonal());
    Ok((p, (0..d).map(|k| m.get(k, k)).collect()))
}

fn is_alternating(s: &Mat) -> bool {
    (0..s.dim()).all(|i| s.get(i, i) == 0)
}

/// Three non-alternating symmetric matrices summing to `s` (characteristic 2, `d ≥ 3`).
pub fn non_alternating_split(s: &Mat) -> Result<[Mat; 3]> {
    let f = s.field();
    let d = s.dim();
    if d < 3 {
        return Err(Error::DimensionTooSmall(d));
    }
    let unit = |i: usize| Mat::from_fn(f, d, |r, c| (r == i && c == i) as Elt);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (a, b) = (unit(i), unit(j));
        let rest = s.sub(&a).sub(&b);
        if !is_alternating(&rest) {
            return Ok([a, b, rest]);
        }
    }
    unreachable!("one of the three splits leaves a nonzero diagonal entry")
}

/// Diagonal matrix with `det 1` scaling the nonzero entries of `alpha` and
/// absorbing the product at the free position `free`.
fn scaler(f: &Field, alpha: &[Elt], free: usize) -> Mat {
    let mut v: Vec<Elt> = alpha.iter().map(|&a| if a == 0 { 1 } else { a }).collect();
    v[free] = 1;
    let prod = v.iter().fold(1, |acc, &x| f.mul(acc, x));
    v[free] = f.inv_nz(prod);
    Mat::diag(f, &v)
}

/// Block-diagonal matrix from small integer blocks placed at `starts`.
fn block_matrix(f: &Field, d: usize, blocks: &[(usize, usize, u32)], p: u32) -> Mat {
    let mut m = Mat::identity(f, d);
    for &(start, n, code) in blocks {
        let e = lemma::decode(code, n, p);
        for r in 0..n {
            for c in 0..n {
                m.set(start + r, start + c, e[r * n + c]);
            }
        }
    }
    m
}

/// `Σ A·D·Aᵀ = s` over the fixed generators, with at most `case_bound` terms.
pub fn symmetric_module_factor(s: &Mat) -> Result<SymmetricCombination> {
    let f = s.field().clone();
    let d = s.dim();
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (d1, d2) = generators(&f, d);
    let mut out = SymmetricCombination { target: s.clone(), d1: d1.clone(), d2: d2.clone(), terms: Vec::new() };
    let zero = Mat::zero(&f, d);
    if *s == zero {
        return Ok(out);
    }
    if *s == d1 {
        out.terms.push((Mat::identity(&f, d), SymGen::D1));
        return Ok(out);
    }
    if *s == d2 {
        out.terms.push((Mat::identity(&f, d), SymGen::D2));
        return Ok(out);
    }
    if f.p() == 2 && d == 2 {
        out.terms = rank_one_terms(s);
        return Ok(out);
    }
    let parts: Vec<Mat> = if f.p() == 2 && is_alternating(s) { non_alternating_split(s)?.to_vec() } else { vec![s.clone()] };
    for part in parts {
        let (p, lam) = diagonalize(&part)?;
        let pinv = p.inv();
        let terms = match f.p() {
            2 => diagonal_char2(&f, &lam),
            3 => diagonal_char3(&f, &lam),
            _ => diagonal_large(&f, &lam)?,
        };
        out.terms.extend(terms.into_iter().map(|(a, g)| (pinv.mul(&a), g)));
    }
    Ok(out)
}

fn diagonal_large(f: &Field, lam: &[Elt]) -> Result<Vec<(Mat, SymGen)>> {
    let d = lam.len();
    let mut terms = Vec::new();
    if lam[0] != 0 {
        for b in four_squares(f, lam[0])? {
            let mut v = vec![1; d];
            v[0] = b;
            v[d - 1] = f.inv_nz(b);
            terms.push((Mat::diag(f, &v), SymGen::D1));
        }
    }
    if lam[1..].iter().any(|&x| x != 0) {
        let betas: Vec<[Elt; 4]> = lam[1..].iter().map(|&x| four_squares(f, x)).collect::<Result<_>>()?;
        for k in 0..4 {
            let mut alpha = vec![0; d];
            for i in 1..d {
                alpha[i] = betas[i - 1][k];
            }
            terms.push((scaler(f, &alpha, 0), SymGen::D2));
        }
    }
    Ok(terms)
}

fn diagonal_char3(f: &Field, lam: &[Elt]) -> Vec<(Mat, SymGen)> {
    let d = lam.len();
    let split: Vec<(Elt, Elt)> = lam.iter().map(|&x| two_squares(f, x)).collect();
    let mut terms = Vec::new();
    for pick in 0..2 {
        let alpha: Vec<Elt> = split.iter().map(|s| if pick == 0 { s.0 } else { s.1 }).collect();
        // D₁ part: coordinate 0 through the 2×2 block at (0,1)
        if alpha[0] != 0 {
            let mut r = vec![1; d];
            r[0] = alpha[0];
            r[1] = f.inv_nz(alpha[0]);
            let r = Mat::diag(f, &r);
            for &code in &SL23[1] {
                terms.push((r.mul(&block_matrix(f, d, &[(0, 2, code)], 3)), SymGen::D1));
            }
        }
        // D₂ part: coordinates 1.. through 2×2 blocks covering the support of D₂
        if alpha[1..].iter().any(|&a| a != 0) {
            let first = if d.is_multiple_of(2) { 0 } else { 1 };
            let bit = |i: usize| (i > 0 && alpha[i] != 0) as usize;
            let starts: Vec<usize> = (first..d).step_by(2).collect();
            let r = scaler(f, &alpha, 0);
            for k in 0..SL23_TERMS {
                let blocks: Vec<(usize, usize, u32)> =
                    starts.iter().map(|&s| (s, 2, SL23[bit(s) | bit(s + 1) << 1][k])).collect();
                terms.push((r.mul(&block_matrix(f, d, &blocks, 3)), SymGen::D2));
            }
        }
    }
    terms
}

/// Sizes in 3..=5 partitioning `d ≥ 3` coordinates.
fn gf2_blocks(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    while d - start > 5 {
        out.push((start, 3));
        start += 3;
    }
    out.push((start, d - start));
    out
}

fn diagonal_char2(f: &Field, lam: &[Elt]) -> Vec<(Mat, SymGen)> {
    let d = lam.len();
    let roots = sqrt_table(f);
    let alpha: Vec<Elt> = lam.iter().map(|&x| roots[x as usize].unwrap()).collect();
    let mut terms = Vec::new();
    if alpha[0] != 0 {
        let mut r = vec![1; d];
        r[0] = alpha[0];
        r[1] = f.inv_nz(alpha[0]);
        terms.push((Mat::diag(f, &r), SymGen::D1));
    }
    if alpha[1..].iter().any(|&a| a != 0) {
        let bit = |i: usize| (i > 0 && alpha[i] != 0) as usize;
        let r = scaler(f, &alpha, 0);
        let blocks = gf2_blocks(d);
        for k in 0..GF2_TERMS {
            let codes: Vec<(usize, usize, u32)> = blocks
                .iter()
                .map(|&(s, n)| {
                    let pat = (0..n).fold(0, |acc, i| acc | bit(s + i) << i);
                    (s, n, lemma::gf2_block(n, pat)[k])
                })
                .collect();
            terms.push((r.mul(&block_matrix(f, d, &codes, 2)), SymGen::D2));
        }
    }
    terms
}

/// `A` of determinant 1 with first column `a`, for `2×2` matrices.
fn with_first_column(f: &Field, a: [Elt; 2]) -> Mat {
    if a[0] != 0 {
        Mat::from_rows(f, &[vec![a[0], 0], vec![a[1], f.inv_nz(a[0])]]).unwrap()
    } else {
        Mat::from_rows(f, &[vec![0, f.neg(f.inv_nz(a[1]))], vec![a[1], 0]]).unwrap()
    }
}

/// Characteristic 2, `d = 2`: `s` as at most three rank-one terms `a·aᵀ = A·D₁·Aᵀ`.
fn rank_one_terms(s: &Mat) -> Vec<(Mat, SymGen)> {
    let f = s.field().clone();
    let roots = sqrt_table(&f);
    let (mut x, t, mut y) = (s.get(0, 0), s.get(0, 1), s.get(1, 1));
    let mut out = Vec::new();
    if t != 0 {
        out.push((with_first_column(&f, [1, t]), SymGen::D1));
        x = f.sub(x, 1);
        y = f.sub(y, f.mul(t, t));
    }
    if x != 0 {
        out.push((with_first_column(&f, [roots[x as usize].unwrap(), 0]), SymGen::D1));
    }
    if y != 0 {
        out.push((with_first_column(&f, [0, roots[y as usize].unwrap()]), SymGen::D1));
    }
    out
}
