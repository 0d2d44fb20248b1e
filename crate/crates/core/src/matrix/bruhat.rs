//! Bruhat decomposition `a = b1·w·b2` with `b1, b2` upper triangular.

use super::Mat;
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq)]
pub struct BruhatForm {
    pub b1: Mat,
    pub w: Mat,
    pub b2: Mat,
    /// the permutation of `w`, `w e_j = e_{σ(j)}`
    pub sigma: Perm,
}

/// Columns are processed left to right. Each column is first cleared on the
/// rows already used as pivots (column operations), then the lowest
/// remaining nonzero row becomes its pivot and the unused rows above it are
/// cleared (row operations). Both kinds of operation are upper unitriangular,
/// so `L·a·R = P·D` and `a = L⁻¹·P·(D·R⁻¹)`.
pub fn bruhat_decompose(a: &Mat) -> Result<BruhatForm> {
    let f = a.field().clone();
    let d = a.dim();
    let mut m = a.clone();
    let mut l = Mat::identity(&f, d);
    let mut r = Mat::identity(&f, d);
    let mut used = alloc::vec![false; d];
    let mut pivots: alloc::vec::Vec<(usize, usize)> = alloc::vec::Vec::new();
    for j in 0..d {
        for &(pi, pc) in &pivots {
            let t = f.div(m.get(pi, j), m.get(pi, pc)).unwrap();
            if t != 0 {
                let nt = f.neg(t);
                for i in 0..d {
                    let v = f.add(m.get(i, j), f.mul(nt, m.get(i, pc)));
                    m.set(i, j, v);
                    let v = f.add(r.get(i, j), f.mul(nt, r.get(i, pc)));
                    r.set(i, j, v);
                }
            }
        }
        let p = (0..d).rev().find(|&i| !used[i] && m.get(i, j) != 0).ok_or(Error::Singular)?;
        for i in 0..p {
            if used[i] || m.get(i, j) == 0 {
                continue;
            }
            let nt = f.neg(f.div(m.get(i, j), m.get(p, j)).unwrap());
            for c in 0..d {
                let v = f.add(m.get(i, c), f.mul(nt, m.get(p, c)));
                m.set(i, c, v);
                let v = f.add(l.get(i, c), f.mul(nt, l.get(p, c)));
                l.set(i, c, v);
            }
        }
        used[p] = true;
        pivots.push((p, j));
    }
    let mut img = alloc::vec![0usize; d];
    let mut dg = alloc::vec![0; d];
    for &(p, j) in &pivots {
        img[j] = p;
        dg[j] = m.get(p, j);
    }
    let sigma = Perm::from_images(img)?;
    let w = Mat::perm(&f, &sigma);
    let b1 = l.inv();
    let b2 = Mat::diag(&f, &dg).mul(&r.inv());
    Ok(BruhatForm { b1, w, b2, sigma })
}
