//! Double-coset factorisations over point stabilisers and block subgroups.

use alloc::vec::Vec;

use super::brenner::Brenner;
use super::Perm;
use crate::error::{Error, Result};
use crate::witness::{Tag, Witness};

/// `(m-2 m-1)(m m+1)` in 1-indexed points, acting on `m+1` points.
pub fn uni1_theta(m: usize) -> Perm {
    Perm::from_cycles(m + 1, &[&[m - 3, m - 2], &[m - 1, m]]).unwrap()
}

/// `phi = ψ1·θ·ψ2·θ·ψ3` with each ψ in `Alt(m)`, the stabiliser of the last
/// point of `Alt(m+1)`.
pub fn uni1_factor(phi: &Perm, m: usize) -> Result<Witness<Perm>> {
    if m < 3 {
        return Err(Error::DimensionTooSmall(m));
    }
    if phi.degree() != m + 1 {
        return Err(Error::DegreeMismatch(phi.degree(), m + 1));
    }
    if !phi.is_even() {
        return Err(Error::NotEven);
    }
    let theta = uni1_theta(m);
    let id = Perm::identity(m + 1);
    let mut w = Witness::new(phi.clone());
    if phi.fixes(m) {
        for (p, t) in [(phi.clone(), Tag::Psi), (theta.clone(), Tag::Theta), (id.clone(), Tag::Psi), (theta, Tag::Theta), (id, Tag::Psi)] {
            w.push(p, t);
        }
        return Ok(w);
    }
    let psi2 = Perm::from_cycles(m + 1, &[&[m - 3, m - 2, m - 1]]).unwrap();
    let tau = theta.mul(&psi2).mul(&theta);
    let a = tau.inverse().apply(m);
    let c = phi.inverse().apply(m);
    let psi3 = if a == c {
        id
    } else {
        let x = (0..m).find(|&x| x != a && x != c).unwrap();
        Perm::from_cycles(m + 1, &[&[c, a, x]]).unwrap()
    };
    let psi1 = phi.mul(&psi3.inverse()).mul(&tau.inverse());
    for (p, t) in [(psi1, Tag::Psi), (theta.clone(), Tag::Theta), (psi2, Tag::Psi), (theta, Tag::Theta), (psi3, Tag::Psi)] {
        w.push(p, t);
    }
    Ok(w)
}

/// Membership predicate for uni1 letters.
pub fn uni1_letter_ok(m: usize, p: &Perm, t: &Tag) -> bool {
    match t {
        Tag::Psi => p.is_even() && p.fixes(m),
        Tag::Theta => *p == uni1_theta(m),
        _ => false,
    }
}

/// The uni2 connective on `8n` points.
///
/// It swaps `2j-1` with `4n+2j` (1-indexed) for `j = 1..2n`, so it is an
/// involution carrying the two halves onto the even and odd points.
pub fn uni2_theta(n: usize) -> Perm {
    let mut img: Vec<usize> = (0..8 * n).collect();
    for k in 0..2 * n {
        let (a, b) = (2 * k, 4 * n + 2 * k + 1);
        img[a] = b;
        img[b] = a;
    }
    Perm::from_images(img).unwrap()
}

fn restricted_is_even(p: &Perm, lo: usize, hi: usize) -> bool {
    let mut img: Vec<usize> = (0..p.degree()).collect();
    for i in lo..hi {
        img[i] = p.apply(i);
    }
    Perm::from_images(img).map(|q| q.is_even()).unwrap_or(false)
}

/// `Γ = Alt{1..4n} × Alt{4n+1..8n}`.
pub fn in_gamma(p: &Perm) -> bool {
    let h = p.degree() / 2;
    (0..h).all(|i| p.apply(i) < h) && restricted_is_even(p, 0, h) && restricted_is_even(p, h, 2 * h)
}

/// Membership predicate for uni2 letters on `8n` points.
pub fn uni2_letter_ok(n: usize, p: &Perm, t: &Tag) -> bool {
    match t {
        Tag::Gamma => in_gamma(p),
        Tag::Theta => *p == uni2_theta(n),
        _ => false,
    }
}

/// Factors uni2 targets on `8n` points; holds the Brenner engine.
pub struct Uni2 {
    n: usize,
    theta: Perm,
    brenner: Brenner,
}

impl Uni2 {
    pub fn new(n: usize) -> Result<Uni2> {
        if n == 0 {
            return Err(Error::DimensionTooSmall(0));
        }
        Ok(Uni2 { n, theta: uni2_theta(n), brenner: Brenner::new(8 * n)? })
    }

    pub fn theta(&self) -> &Perm {
        &self.theta
    }

    /// For `phi` of type `2^(4n)`: returns `(ψ1, ψ2)` in Γ with
    /// `phi = ψ1⁻¹·θ·ψ2·θ·ψ1`, plus whether the first case of the
    /// construction applied.
    pub fn involution_core(&self, phi: &Perm) -> Result<(Perm, Perm, bool)> {
        let n = self.n;
        let h = 4 * n;
        if phi.degree() != 8 * n {
            return Err(Error::DegreeMismatch(phi.degree(), 8 * n));
        }
        if !phi.is_fpf_involution() {
            return Err(Error::Invalid("expected a fixed-point-free involution".into()));
        }
        let cross: Vec<usize> = (0..h).filter(|&l| phi.apply(l) >= h).collect();
        let case1 = cross.len() >= 2 * n;
        let (d, e): (Vec<usize>, Vec<usize>) = if case1 {
            let d: Vec<usize> = cross[..2 * n].to_vec();
            let e = d.iter().map(|&x| phi.apply(x)).collect();
            (d, e)
        } else {
            let pick = |lo: usize, hi: usize| -> Vec<usize> {
                let mut out = Vec::new();
                for l in lo..hi {
                    let r = phi.apply(l);
                    if out.len() < 2 * n && r > l && (lo..hi).contains(&r) {
                        out.push(l);
                        out.push(r);
                    }
                }
                out
            };
            (pick(0, h), pick(h, 2 * h))
        };
        debug_assert!(d.len() == 2 * n && e.len() == 2 * n);
        // 1-based even points are odd 0-based indices
        let mut img = alloc::vec![0usize; 8 * n];
        for (set, lo) in [(&d, 0usize), (&e, h)] {
            let mut inside: Vec<usize> = set.clone();
            inside.sort_unstable();
            let outside: Vec<usize> = (lo..lo + h).filter(|x| !inside.contains(x)).collect();
            for (i, &x) in inside.iter().enumerate() {
                img[x] = lo + 2 * i + 1;
            }
            for (i, &x) in outside.iter().enumerate() {
                img[x] = lo + 2 * i;
            }
            let tmp = Perm::from_images({
                let mut v: Vec<usize> = (0..8 * n).collect();
                v[lo..lo + h].copy_from_slice(&img[lo..lo + h]);
                v
            })?;
            if !tmp.is_even() {
                img.swap(inside[0], inside[1]);
            }
        }
        let psi1 = Perm::from_images(img)?;
        let psi2 = self.theta.mul(&psi1).mul(phi).mul(&psi1.inverse()).mul(&self.theta);
        debug_assert!(in_gamma(&psi1) && in_gamma(&psi2));
        Ok((psi1, psi2, case1))
    }

    /// `phi = ψ1 θ ψ2 θ .. θ ψ9` with every ψ in Γ.
    pub fn factor(&self, phi: &Perm) -> Result<Witness<Perm>> {
        if phi.degree() != 8 * self.n {
            return Err(Error::DegreeMismatch(phi.degree(), 8 * self.n));
        }
        if !phi.is_even() {
            return Err(Error::NotEven);
        }
        let mut w = Witness::new(phi.clone());
        let id = Perm::identity(8 * self.n);
        if phi.is_identity() {
            for i in 0..9 {
                if i > 0 {
                    w.push(self.theta.clone(), Tag::Theta);
                }
                w.push(id.clone(), Tag::Gamma);
            }
            return Ok(w);
        }
        let pis = self.brenner.factor(phi)?;
        let mut carry = id;
        for (pi, _) in &pis.letters {
            let (p1, p2, _) = self.involution_core(pi)?;
            w.push(carry.mul(&p1.inverse()), Tag::Gamma);
            w.push(self.theta.clone(), Tag::Theta);
            w.push(p2, Tag::Gamma);
            w.push(self.theta.clone(), Tag::Theta);
            carry = p1;
        }
        w.push(carry, Tag::Gamma);
        Ok(w)
    }
}

/// One-shot convenience wrapper around [`Uni2`].
pub fn uni2_factor(phi: &Perm, n: usize) -> Result<Witness<Perm>> {
    Uni2::new(n)?.factor(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::alt;

    fn c(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn uni1_examples() {
        let w = uni1_factor(&Perm::identity(4), 3).unwrap();
        assert!(w.letters.iter().all(|(p, t)| *t == Tag::Theta || p.is_identity()));
        let phi = c(6, "(1 2 3)");
        let w = uni1_factor(&phi, 5).unwrap();
        assert_eq!(w.letters[0].0, phi);
        let phi = c(4, "(3 4)(1 2)");
        let w = uni1_factor(&phi, 3).unwrap();
        assert!(w.validate(|p, t| uni1_letter_ok(3, p, t)));
        assert_eq!(uni1_factor(&c(4, "(1 2)"), 3), Err(Error::NotEven));
        assert_eq!(uni1_factor(&c(5, "(1 2 3)"), 3), Err(Error::DegreeMismatch(5, 4)));
    }

    #[test]
    fn uni1_brute_force_agrees_on_alt4() {
        // for m = 3 a witness exists iff brute force over Alt(3)^3 finds one
        let stab: Vec<Perm> = alt(4).filter(|p| p.fixes(3)).collect();
        assert_eq!(stab.len(), 3);
        let th = uni1_theta(3);
        for phi in alt(4) {
            let brute = stab.iter().any(|a| {
                stab.iter().any(|b| stab.iter().any(|c| a.mul(&th).mul(b).mul(&th).mul(c) == phi))
            });
            assert!(brute);
            assert!(uni1_factor(&phi, 3).unwrap().validate(|p, t| uni1_letter_ok(3, p, t)));
        }
    }

    #[test]
    fn uni1_exhaustive_small() {
        for m in 3..=6 {
            for phi in alt(m + 1) {
                let w = uni1_factor(&phi, m).unwrap();
                assert_eq!(w.len(), 5);
                assert!(w.validate(|p, t| uni1_letter_ok(m, p, t)), "{phi}");
            }
        }
    }

    #[test]
    fn theta_shapes() {
        assert_eq!(uni1_theta(5), c(6, "(3 4)(5 6)"));
        assert_eq!(uni2_theta(1), c(8, "(1 6)(3 8)"));
        for n in 1..4 {
            let t = uni2_theta(n);
            assert!(t.is_involution() && t.is_even());
            // θ Γ θ = Alt(evens) × Alt(odds)
            let h = 4 * n;
            for i in 0..h {
                assert_eq!(t.apply(i) % 2, 1);
            }
            for i in h..2 * h {
                assert_eq!(t.apply(i) % 2, 0);
            }
        }
    }

    #[test]
    fn uni2_core_cases() {
        let u = Uni2::new(1).unwrap();
        // every point crosses: first case
        let phi = c(8, "(1 5)(2 6)(3 7)(4 8)");
        let (p1, p2, case1) = u.involution_core(&phi).unwrap();
        assert!(case1);
        assert_eq!(p1.inverse().mul(u.theta()).mul(&p2).mul(u.theta()).mul(&p1), phi);
        // no point crosses: second case
        let phi = c(8, "(1 2)(3 4)(5 6)(7 8)");
        let (p1, p2, case1) = u.involution_core(&phi).unwrap();
        assert!(!case1);
        assert!(in_gamma(&p1) && in_gamma(&p2));
        assert_eq!(p1.inverse().mul(u.theta()).mul(&p2).mul(u.theta()).mul(&p1), phi);
    }

    #[test]
    fn uni2_examples() {
        let u = Uni2::new(1).unwrap();
        let w = u.factor(&Perm::identity(8)).unwrap();
        assert_eq!(w.len(), 17);
        assert!(w.validate(|p, t| uni2_letter_ok(1, p, t)));
        let w = u.factor(&c(8, "(1 2 3)(5 6 7)")).unwrap();
        assert_eq!(w.letters.iter().filter(|(_, t)| *t == Tag::Gamma).count(), 9);
        assert_eq!(w.letters.iter().filter(|(_, t)| *t == Tag::Theta).count(), 8);
        assert!(w.validate(|p, t| uni2_letter_ok(1, p, t)));
    }

    #[test]
    fn uni2_sampled_on_16_points() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let u = Uni2::new(2).unwrap();
        for _ in 0..100 {
            let mut v: Vec<usize> = (0..16).collect();
            v.shuffle(&mut rng);
            let mut g = Perm::from_images(v).unwrap();
            if !g.is_even() {
                g = c(16, "(1 2)").mul(&g);
            }
            let w = u.factor(&g).unwrap();
            assert!(w.validate(|p, t| uni2_letter_ok(2, p, t)));
        }
    }
}
