//! Generic sequences: commuting fixed-point-free involutions of `2^m`
//! points generating a semiregular elementary abelian group, with the tail
//! repeating the element at index `m-1`.

use alloc::vec::Vec;
use hashbrown::HashSet;

use super::brenner::fpf_involutions;
use super::{all_perms, Perm};
use crate::error::{Error, Result};

/// XOR translations by unit vectors; index `i ≥ m` repeats index `m-1`.
pub fn generic_sequence(m: usize, t: usize) -> Vec<Perm> {
    let n = 1usize << m;
    (0..=t)
        .map(|i| {
            let bit = 1u32 << i.min(m - 1);
            Perm::from_u32((0..n as u32).map(|x| x ^ bit).collect())
        })
        .collect()
}

/// All products of subsets of `gens`, deduplicated, identity first and the
/// rest in image-lexicographic order.
pub fn group_elements(gens: &[Perm], n: usize) -> Vec<Perm> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = alloc::vec![id.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut rest: Vec<Perm> = seen.into_iter().filter(|p| !p.is_identity()).collect();
    rest.sort();
    let mut out = alloc::vec![id];
    out.extend(rest);
    out
}

/// Checks the definition verbatim.
pub fn is_generic(seq: &[Perm], m: usize) -> bool {
    let n = 1usize << m;
    if seq.is_empty() || m == 0 || seq.iter().any(|p| p.degree() != n || !p.is_even()) {
        return false;
    }
    let r = (seq.len() - 1).min(m - 1);
    let head = &seq[..=r];
    if seq[r..].iter().any(|p| *p != seq[r]) && seq.len() > m {
        return false;
    }
    if !head.iter().all(|p| p.is_involution()) {
        return false;
    }
    for a in head {
        for b in head {
            if a.mul(b) != b.mul(a) {
                return false;
            }
        }
    }
    let g = group_elements(head, n);
    g.len() == 1 << (r + 1) && g[1..].iter().all(|p| p.is_fpf_involution())
}

/// Orbits of the group generated by `gens`, each sorted, ordered by least
/// element.
pub fn orbit_decomposition(gens: &[Perm], n: usize) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orb = alloc::vec![s];
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// A type `2^(2^(m-1))` element of the diagonal subgroup centralising the
/// group generated by `seq`.
///
/// Base points are the least points of the orbits; `Δ_k` is the image of the
/// base set under the k-th group element. On `Δ_1` we take the involution
/// pairing consecutive sorted points and copy it to every `Δ_k`.
pub fn diagonal_centralizer_element(seq: &[Perm], m: usize) -> Result<Perm> {
    let t = seq.len().checked_sub(1).ok_or(Error::Invalid("empty sequence".into()))?;
    if t + 1 >= m {
        return Err(Error::TailRegime(t));
    }
    let n = 1usize << m;
    let e = group_elements(seq, n);
    let orbits = orbit_decomposition(seq, n);
    let base: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let mut img: Vec<usize> = (0..n).collect();
    for pk in &e {
        for pair in base.chunks(2) {
            let (a, b) = (pk.apply(pair[0]), pk.apply(pair[1]));
            img[a] = b;
            img[b] = a;
        }
    }
    Perm::from_images(img)
}

/// The sets `Δ_k` used by [`diagonal_centralizer_element`].
pub fn delta_sets(seq: &[Perm], m: usize) -> Vec<Vec<usize>> {
    let n = 1usize << m;
    let base: Vec<usize> = orbit_decomposition(seq, n).iter().map(|o| o[0]).collect();
    group_elements(seq, n).iter().map(|pk| base.iter().map(|&a| pk.apply(a)).collect()).collect()
}

/// Appends the next element of a generic sequence.
pub fn extend_generic(seq: &[Perm], m: usize) -> Result<Vec<Perm>> {
    let mut out = seq.to_vec();
    if seq.len() >= m {
        out.push(seq[m - 1].clone());
    } else {
        out.push(diagonal_centralizer_element(seq, m)?);
    }
    Ok(out)
}

/// Outcome of the exhaustive conjugacy scan on eight points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub t: usize,
    /// sequences of length t+1 passing [`is_generic`]
    pub generic: usize,
    /// size of the Sym(8)-orbit of the canonical sequence
    pub sym_orbit: usize,
    /// number of Alt(8)-orbits into which that Sym(8)-orbit splits
    pub alt_orbits: usize,
}

impl ConjugacyReport {
    pub fn unique_up_to_sym(&self) -> bool {
        self.generic == self.sym_orbit
    }
}

fn pack_seq(seq: &[Perm]) -> Vec<u64> {
    seq.iter().map(Perm::pack).collect()
}

/// Enumerates every generic sequence of length `t+1` on 8 points and
/// compares with the conjugation orbit of the canonical one.
pub fn sym_conjugacy_scan(t: usize) -> ConjugacyReport {
    let m = 3;
    let canon = generic_sequence(m, t);
    let mut sym_orbit: HashSet<Vec<u64>> = HashSet::new();
    let mut alt_orbit: HashSet<Vec<u64>> = HashSet::new();
    for rho in all_perms(8) {
        let conj: Vec<Perm> = canon.iter().map(|p| p.conjugate_by(&rho)).collect();
        let k = pack_seq(&conj);
        if rho.is_even() {
            alt_orbit.insert(k.clone());
        }
        sym_orbit.insert(k);
    }
    let class = fpf_involutions(8);
    let mut count = 0usize;
    let mut all_in_orbit = true;
    let mut cur: Vec<Perm> = Vec::new();
    fn rec(
        cur: &mut Vec<Perm>,
        t: usize,
        class: &[Perm],
        orbit: &HashSet<Vec<u64>>,
        count: &mut usize,
        ok: &mut bool,
    ) {
        if cur.len() == t + 1 {
            if is_generic(cur, 3) {
                *count += 1;
                *ok &= orbit.contains(&pack_seq(cur));
            }
            return;
        }
        if cur.len() >= 3 {
            let last = cur[2].clone();
            cur.push(last);
            rec(cur, t, class, orbit, count, ok);
            cur.pop();
            return;
        }
        for c in class {
            if cur.iter().all(|p| p.mul(c) == c.mul(p)) {
                cur.push(c.clone());
                rec(cur, t, class, orbit, count, ok);
                cur.pop();
            }
        }
    }
    rec(&mut cur, t, &class, &sym_orbit, &mut count, &mut all_in_orbit);
    ConjugacyReport {
        t,
        generic: if all_in_orbit { count } else { usize::MAX },
        sym_orbit: sym_orbit.len(),
        alt_orbits: sym_orbit.len() / alt_orbit.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sequences_are_generic() {
        for m in 2..=6 {
            for t in 0..=8 {
                assert!(is_generic(&generic_sequence(m, t), m), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn examples() {
        let s = generic_sequence(3, 0);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].cycle_type(), alloc::vec![2; 4]);
        assert_eq!(orbit_decomposition(&generic_sequence(3, 2), 8).len(), 1);
        let s = generic_sequence(3, 5);
        assert!(s[3..].iter().all(|p| *p == s[2]));
        let o = orbit_decomposition(&generic_sequence(3, 1), 8);
        assert_eq!(o, alloc::vec![alloc::vec![0, 1, 2, 3], alloc::vec![4, 5, 6, 7]]);
        assert_eq!(orbit_decomposition(&[Perm::identity(5)], 5).len(), 5);
    }

    #[test]
    fn non_generic_inputs() {
        let three = Perm::parse_cycles(8, "(1 2 3)").unwrap();
        assert!(!is_generic(&[three], 3));
        let s = generic_sequence(3, 0);
        assert!(!is_generic(&[s[0].clone(), s[0].clone()], 3));
        // a broken tail
        let mut s = generic_sequence(3, 4);
        s[4] = s[0].clone();
        assert!(!is_generic(&s, 3));
    }

    #[test]
    fn centralizer_elements() {
        for m in 2..=5 {
            let n = 1 << m;
            for t in 0..m - 1 {
                let seq = generic_sequence(m, t);
                let tau = diagonal_centralizer_element(&seq, m).unwrap();
                assert_eq!(tau.cycle_type(), alloc::vec![2; n / 2]);
                assert!(tau.is_even());
                for p in &seq {
                    assert_eq!(tau.mul(p), p.mul(&tau));
                }
                // stabilises every Δ_k and acts the same way on each
                let deltas = delta_sets(&seq, m);
                let e = group_elements(&seq, n);
                for (k, d) in deltas.iter().enumerate() {
                    assert!(d.iter().all(|x| d.contains(&tau.apply(*x))));
                    for (i, &x) in d.iter().enumerate() {
                        assert_eq!(x, e[k].apply(deltas[0][i]));
                        assert_eq!(tau.apply(x), e[k].apply(tau.apply(deltas[0][i])));
                    }
                }
            }
            let tail = generic_sequence(m, m - 1);
            assert_eq!(diagonal_centralizer_element(&tail, m), Err(Error::TailRegime(m - 1)));
        }
    }

    #[test]
    fn extension_stays_generic() {
        let s = extend_generic(&generic_sequence(3, 2), 3).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s[3], s[2]);
        let s = extend_generic(&generic_sequence(4, 0), 4).unwrap();
        assert!(is_generic(&s, 4));
        let mut s = generic_sequence(5, 0);
        while s.len() < 8 {
            s = extend_generic(&s, 5).unwrap();
            assert!(is_generic(&s, 5), "len {}", s.len());
        }
    }

    #[test]
    fn unique_up_to_sym_conjugacy() {
        for t in 0..=2 {
            let r = sym_conjugacy_scan(t);
            assert!(r.unique_up_to_sym(), "{r:?}");
            assert!(r.alt_orbits >= 1);
        }
    }
}
