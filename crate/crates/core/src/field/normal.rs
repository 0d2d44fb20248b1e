//! Subfield embeddings, Moore determinants and normal bases.

use alloc::vec;
use alloc::vec::Vec;

use super::{ntheory, Elt, Field};
use crate::error::{Error, Result};

/// Rank of a matrix (rows of codes) over `f`.
pub(crate) fn rank(f: &Field, rows: &[Vec<Elt>]) -> usize {
    let mut m: Vec<Vec<Elt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = f.inv_nz(m[r][c]);
        for j in c..ncols {
            m[r][j] = f.mul(m[r][j], inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let t = m[i][c];
                for j in c..ncols {
                    let v = f.mul(t, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves `A x = b` over Z_p, where `cols[j]` is column j of A.
fn solve_mod_p(p: u32, cols: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let n = cols.len();
    let rows = b.len();
    let pm = p as u64;
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut r: Vec<u64> = cols.iter().map(|c| c[i] as u64).collect();
            r.push(b[i] as u64);
            r
        })
        .collect();
    let inv = |x: u64| ntheory::pow_mod(x as u128, pm as u128 - 2, pm as u128) as u64;
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let iv = inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = *v * iv % pm;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let t = a[i][c];
                for j in 0..=n {
                    a[i][j] = (a[i][j] + pm * pm - t * a[r][j]) % pm;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (i, &c) in piv_cols.iter().enumerate() {
        x[c] = a[i][n] as u32;
    }
    Some(x)
}

/// GF(q) sitting inside a larger field of the same characteristic.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: Field,
    pub big: Field,
    /// images of 1, x, x^2, .. of the small field's polynomial basis
    powers: Vec<Elt>,
}

impl Embedding {
    /// Embeds `sub` into `big` by sending x to the least root of sub's modulus.
    pub fn new(sub: &Field, big: &Field) -> Result<Embedding> {
        if sub.p() != big.p() || !big.k().is_multiple_of(sub.k()) {
            return Err(Error::FieldMismatch);
        }
        let m = sub.modulus();
        let eval = |r: Elt| {
            let mut acc = 0;
            for &c in m.iter().rev() {
                acc = big.add(big.mul(acc, r), c);
            }
            acc
        };
        let root = if sub.k() == 1 {
            0
        } else {
            big.elements().find(|&r| eval(r) == 0).ok_or(Error::FieldMismatch)?
        };
        let powers = (0..sub.k()).map(|i| big.pow(root, i as u64)).collect();
        Ok(Embedding { sub: sub.clone(), big: big.clone(), powers })
    }

    pub fn embed(&self, x: Elt) -> Elt {
        let mut acc = 0;
        for (c, &r) in self.sub.coeffs(x).iter().zip(&self.powers) {
            acc = self.big.add(acc, self.big.mul(*c, r));
        }
        acc
    }

    /// Coordinates of `y` in a GF(q)-basis of the big field.
    pub fn coords(&self, basis: &[Elt], y: Elt) -> Option<Vec<Elt>> {
        let a = self.sub.k() as usize;
        let mut cols = Vec::with_capacity(a * basis.len());
        for &b in basis {
            for &r in &self.powers {
                cols.push(self.big.coeffs(self.big.mul(r, b)));
            }
        }
        let sol = solve_mod_p(self.big.p(), &cols, &self.big.coeffs(y))?;
        Some(sol.chunks(a).map(|c| self.sub.from_coeffs(c).unwrap()).collect())
    }
}

/// Moore criterion: `xs` are independent over GF(q) iff det(x_j^(q^i)) ≠ 0.
pub fn moore_independent(big: &Field, q: u64, xs: &[Elt]) -> bool {
    let rows: Vec<Vec<Elt>> = (0..xs.len())
        .map(|i| xs.iter().map(|&x| big.pow(x, q.pow(i as u32))).collect())
        .collect();
    rank(big, &rows) == xs.len()
}

/// Rank over GF(p) of the coefficient matrix of the orbit `x, x^p', ..`
/// where p' = q is prime.
pub fn frobenius_matrix_rank(big: &Field, q: u64, x: Elt, d: usize) -> usize {
    let p = Field::prime(big.p() as u64).unwrap();
    let rows: Vec<Vec<Elt>> =
        (0..d).map(|j| big.coeffs(big.pow(x, q.pow(j as u32)))).collect();
    rank(&p, &rows)
}

/// Least element of GF(q^d) (by code) generating a normal basis over GF(q).
pub fn normal_basis_generator(q: u64, d: u32) -> Result<(Field, Elt)> {
    let (p, a) = ntheory::prime_power(q).ok_or(Error::NonPrime(q))?;
    let big = Field::new(p, a * d)?;
    let tau = big
        .nonzero()
        .find(|&x| {
            let orbit: Vec<Elt> = (0..d).map(|j| big.pow(x, q.pow(j))).collect();
            moore_independent(&big, q, &orbit)
        })
        .expect("normal bases exist");
    Ok((big, tau))
}
