//! The class `C(4n,q)` of type `2^(2n)` permutation-like involutions, the
//! regular torus factorisation `ψ = π1·π2`, and generic sequences of
//! permutation matrices.

use alloc::vec::Vec;

use super::Mat;
use crate::error::Result;
use crate::field::{normal_basis_generator, zsigmondy_prime, Elt, Embedding, Field};
use crate::perm::generic::generic_sequence;
use crate::perm::Perm;

/// Membership in `C(4n, q)` through conjugacy invariants.
///
/// In odd characteristic: an involution of determinant 1 whose fixed space
/// has dimension 2n. In characteristic 2: an involution with
/// `rank(A - I) = 2n`.
pub fn in_class_c(a: &Mat) -> bool {
    let m = a.dim();
    if !m.is_multiple_of(4) || m == 0 {
        return false;
    }
    let id = Mat::identity(a.field(), m);
    if !a.mul(a).is_identity() {
        return false;
    }
    let r = a.sub(&id).rank();
    if a.field().p() == 2 {
        r == m / 2
    } else {
        m - r == m / 2 && a.det() == 1
    }
}

/// Output of [`regular_torus_factor`].
#[derive(Clone, Debug)]
pub struct TorusFactor {
    /// GF(q^(4n))
    pub big: Field,
    /// normal basis `τ^(q^j)`, j = 0..4n
    pub basis: Vec<Elt>,
    /// the primitive prime divisor of `q^(4n) - 1`
    pub prime: u64,
    /// element of order `prime` in `big`
    pub gamma: Elt,
    /// multiplication by `gamma`
    pub psi: Mat,
    /// the Frobenius power `x ↦ x^(q^(2n))`
    pub pi1: Mat,
    pub pi2: Mat,
}

/// `ψ = π1·π2` with `π1, π2 ∈ C(4n, q)` and `ψ` of order the least
/// primitive prime divisor of `q^(4n) - 1`.
pub fn regular_torus_factor(q: u64, n: usize) -> Result<TorusFactor> {
    let m = 4 * n;
    let prime = zsigmondy_prime(q, m as u32)?;
    let (big, tau) = normal_basis_generator(q, m as u32)?;
    let sub = Field::of_order(q)?;
    let emb = Embedding::new(&sub, &big)?;
    let basis: Vec<Elt> = (0..m).map(|j| big.pow(tau, q.pow(j as u32))).collect();
    let e = (big.q() as u64 - 1) / prime;
    let gamma = big.nonzero().map(|x| big.pow(x, e)).find(|&g| g != 1).expect("nontrivial power exists");
    let mut psi = Mat::zero(&sub, m);
    for (j, &b) in basis.iter().enumerate() {
        let c = emb.coords(&basis, big.mul(gamma, b)).expect("basis spans");
        for (i, &x) in c.iter().enumerate() {
            psi.set(i, j, x);
        }
    }
    let g = Perm::from_images((0..m).map(|j| (j + 2 * n) % m).collect())?;
    let pi1 = Mat::perm(&sub, &g);
    let pi2 = pi1.mul(&psi);
    Ok(TorusFactor { big, basis, prime, gamma, psi, pi1, pi2 })
}

/// Permutation matrices of the canonical generic sequence over GF(q).
pub fn sl_generic_sequence(m: usize, q: u64, t: usize) -> Result<Vec<Mat>> {
    let f = Field::of_order(q)?;
    Ok(generic_sequence(m, t).iter().map(|p| Mat::perm(&f, p)).collect())
}
