use super::symmetric::case_bound;
use super::torus::*;
use super::*;
use crate::perm::Perm;
use alloc::collections::BTreeSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [(FormKind, usize); 8] = [
    (FormKind::Symplectic, 4),
    (FormKind::Symplectic, 6),
    (FormKind::Hermitian, 4),
    (FormKind::Hermitian, 5),
    (FormKind::QuadraticPlus, 6),
    (FormKind::QuadraticOdd, 5),
    (FormKind::QuadraticMinus, 6),
    (FormKind::QuadraticMinus, 8),
];

fn all_spaces() -> Vec<FormSpace> {
    let mut out = Vec::new();
    for &(k, n) in &KINDS {
        for q in [2, 3, 4, 5] {
            out.push(FormSpace::new(k, n, q).unwrap());
        }
    }
    out
}

#[test]
fn gram_relations() {
    for s in all_spaces() {
        let n = s.dim();
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        for i in 0..s.witt_index() {
            for j in 0..s.witt_index() {
                let ef = s.form_value(&unit(s.e(i)), &unit(s.f(j))).unwrap();
                assert_eq!(ef, (i == j) as Elt, "{:?}", s.kind());
                assert_eq!(s.form_value(&unit(s.e(i)), &unit(s.e(j))).unwrap(), 0);
                assert_eq!(s.form_value(&unit(s.f(i)), &unit(s.f(j))).unwrap(), 0);
            }
            if s.kind().is_quadratic() {
                assert_eq!(s.quad_value(&unit(s.e(i))).unwrap(), 0);
                assert_eq!(s.quad_value(&unit(s.f(i))).unwrap(), 0);
            }
            for x in [s.w(), s.z()].into_iter().flatten() {
                assert_eq!(s.form_value(&unit(x), &unit(s.e(i))).unwrap(), 0);
                assert_eq!(s.form_value(&unit(x), &unit(s.f(i))).unwrap(), 0);
            }
        }
        if let Some(w) = s.w() {
            let v = if s.kind().is_quadratic() { s.quad_value(&unit(w)).unwrap() } else { s.form_value(&unit(w), &unit(w)).unwrap() };
            assert_eq!(v, 1);
        }
        if let (Some(w), Some(z)) = (s.w(), s.z()) {
            // <w, z> has no singular vectors
            let f = s.field();
            for a in f.elements() {
                for b in f.elements() {
                    if (a, b) != (0, 0) {
                        let mut v = vec![0; n];
                        v[w] = a;
                        v[z] = b;
                        assert_ne!(s.quad_value(&v).unwrap(), 0);
                    }
                }
            }
        }
    }
}

#[test]
fn polar_form_matches_quadratic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in all_spaces().into_iter().filter(|s| s.kind().is_quadratic()) {
        let f = s.field().clone();
        for _ in 0..50 {
            let u: Vec<Elt> = (0..s.dim()).map(|_| rng.random_range(0..f.q())).collect();
            let v: Vec<Elt> = (0..s.dim()).map(|_| rng.random_range(0..f.q())).collect();
            let uv: Vec<Elt> = u.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect();
            let polar = f.sub(f.sub(s.quad_value(&uv).unwrap(), s.quad_value(&u).unwrap()), s.quad_value(&v).unwrap());
            assert_eq!(s.form_value(&u, &v).unwrap(), polar);
        }
    }
}

#[test]
fn identity_is_isometry() {
    for s in all_spaces() {
        assert!(s.is_isometry(&Mat::identity(s.field(), s.dim())).unwrap());
    }
}

#[test]
fn dimension_mismatch() {
    let s = FormSpace::new(FormKind::Symplectic, 4, 3).unwrap();
    let f = s.field().clone();
    assert!(matches!(s.is_isometry(&Mat::identity(&f, 3)), Err(Error::DimensionMismatch(4, 3))));
    assert!(matches!(s.form_value(&[1, 0], &[0, 1, 0, 0]), Err(Error::DimensionMismatch(4, 2))));
}

#[test]
fn sp_weyl_generators_as_stated() {
    let s = FormSpace::new(FormKind::Symplectic, 4, 5).unwrap();
    let f = s.field().clone();
    let w = s.weyl_generators();
    assert_eq!(w.len(), 2);
    // w1 permutes (e1 e2)(f1 f2)
    let p = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
    assert_eq!(w[0], Mat::perm(&f, &p));
    // w2: e2 -> -f2, f2 -> e2
    assert_eq!(w[1].col(1), vec![0, 0, 0, 4]);
    assert_eq!(w[1].col(3), vec![0, 1, 0, 0]);
    assert!(s.is_isometry(&w[1]).unwrap());
    // w_d² is -1 on <e_d, f_d> and 1 elsewhere
    assert_eq!(w[1].mul(&w[1]), Mat::diag(&f, &[1, 4, 1, 4]));
}

#[test]
fn diagonal_torus_is_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for q in [3, 5, 7, 9] {
        for d in 2..=3 {
            let s = FormSpace::new(FormKind::Symplectic, 2 * d, q).unwrap();
            let f = s.field().clone();
            for _ in 0..10 {
                let lam = rng.random_range(1..f.q());
                let a = sp_torus(&f, d, lam);
                assert!(s.is_isometry(&a).unwrap());
                // direct bilinear evaluation on the basis
                for i in 0..2 * d {
                    for j in 0..2 * d {
                        let (ci, cj) = (a.col(i), a.col(j));
                        let mut ei = vec![0; 2 * d];
                        ei[i] = 1;
                        let mut ej = vec![0; 2 * d];
                        ej[j] = 1;
                        assert_eq!(s.form_value(&ci, &cj).unwrap(), s.form_value(&ei, &ej).unwrap());
                    }
                }
                // a non-inverse pattern breaks it
                if lam != 1 && f.mul(lam, lam) != 1 {
                    let mut v = vec![1; 2 * d];
                    v[0] = lam;
                    v[d] = lam;
                    assert!(!s.is_isometry(&Mat::diag(&f, &v)).unwrap());
                }
            }
        }
    }
}

fn closure_size(gens: &[Perm]) -> usize {
    let n = gens[0].degree();
    let mut seen = BTreeSet::new();
    let mut stack = vec![Perm::identity(n)];
    seen.insert(Perm::identity(n));
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn weyl_generators_are_isometries_with_right_frame_group() {
    for s in all_spaces() {
        let w = s.weyl_generators();
        let d = s.witt_index();
        for g in &w {
            assert!(s.is_isometry(g).unwrap(), "{:?} dim {} q {}", s.kind(), s.dim(), s.field().q());
        }
        let perms: Vec<Perm> = w.iter().map(|g| s.frame_permutation(g).expect("monomial on frame")).collect();
        let expect = match s.kind() {
            FormKind::QuadraticPlus => (1 << (d - 1)) * factorial(d),
            _ => (1 << d) * factorial(d),
        };
        assert_eq!(closure_size(&perms), expect, "{:?} {}", s.kind(), s.dim());
        if s.kind() == FormKind::QuadraticPlus {
            assert!(perms.iter().all(|p| p.is_even()));
        }
    }
}

/// Least lex nonzero solution by independent brute force.
fn four_squares_oracle(f: &Field, lam: Elt) -> [Elt; 4] {
    for a in f.nonzero() {
        for b in f.nonzero() {
            for c in f.nonzero() {
                for e in f.nonzero() {
                    let s = [a, b, c, e].iter().fold(0, |acc, &x| f.add(acc, f.mul(x, x)));
                    if s == lam {
                        return [a, b, c, e];
                    }
                }
            }
        }
    }
    panic!("no solution")
}

#[test]
fn four_squares_examples() {
    let f5 = Field::of_order(5).unwrap();
    assert_eq!(four_squares(&f5, 4).unwrap(), [1, 1, 1, 1]);
    assert_eq!(four_squares(&f5, 0).unwrap(), [1, 1, 2, 2]);
    for q in [5, 7, 11, 13, 25] {
        let f = Field::of_order(q).unwrap();
        for lam in f.elements() {
            assert_eq!(four_squares(&f, lam).unwrap(), four_squares_oracle(&f, lam));
        }
    }
    let f3 = Field::of_order(3).unwrap();
    assert!(matches!(four_squares(&f3, 1), Err(Error::BadCharacteristic(3))));
}

#[test]
fn two_squares_everywhere() {
    let f3 = Field::of_order(3).unwrap();
    assert_eq!(two_squares(&f3, 0), (0, 0));
    assert_eq!(two_squares(&f3, 2), (1, 1));
    for q in [2, 3, 4, 5, 7, 8, 9, 25, 27] {
        let f = Field::of_order(q).unwrap();
        for lam in f.elements() {
            let (a, b) = two_squares(&f, lam);
            assert_eq!(f.add(f.mul(a, a), f.mul(b, b)), lam);
        }
    }
}

fn all_symmetric(f: &Field, d: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = f.q() as u64;
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let total = q.pow(slots.len() as u32);
    (0..total).map(move |mut c| {
        let mut m = Mat::zero(f, d);
        for &(i, j) in &slots {
            let x = (c % q) as Elt;
            c /= q;
            m.set(i, j, x);
            m.set(j, i, x);
        }
        m
    })
}

#[test]
fn diagonalize_congruence() {
    for q in [2, 3, 4, 5, 9] {
        let f = Field::of_order(q).unwrap();
        for d in 2..=3 {
            for s in all_symmetric(&f, d) {
                let alternating = (0..d).all(|i| s.get(i, i) == 0) && !s.is_diagonal();
                match diagonalize(&s) {
                    Ok((p, lam)) => {
                        assert_eq!(p.det(), 1);
                        assert_eq!(p.mul(&s).mul(&p.transpose()), Mat::diag(&f, &lam));
                    }
                    Err(Error::Alternating) => assert!(f.p() == 2 && alternating),
                    Err(e) => panic!("{e:?}"),
                }
            }
        }
    }
}

#[test]
fn symmetric_examples() {
    let f = Field::of_order(5).unwrap();
    let z = Mat::zero(&f, 2);
    assert!(symmetric_module_factor(&z).unwrap().terms.is_empty());
    let (d1, _) = symmetric::generators(&f, 2);
    let c = symmetric_module_factor(&d1).unwrap();
    assert_eq!(c.terms, vec![(Mat::identity(&f, 2), SymGen::D1)]);
    let s = Mat::diag(&f, &[2, 3]);
    let c = symmetric_module_factor(&s).unwrap();
    assert!(c.verify());
    assert!(c.terms.len() <= 8);
}

#[test]
fn symmetric_module_exhaustive() {
    for q in [2, 3, 4, 5, 7, 9] {
        let f = Field::of_order(q).unwrap();
        for d in 2..=3 {
            let bound = case_bound(f.p(), d);
            for s in all_symmetric(&f, d) {
                let c = symmetric_module_factor(&s).unwrap();
                assert!(c.verify(), "q={q} d={d} {s:?}");
                assert!(c.terms.len() <= bound, "q={q} d={d} {} terms", c.terms.len());
            }
        }
    }
}

#[test]
fn symmetric_module_larger_dims() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in [2, 3, 4, 5, 8, 9] {
        let f = Field::of_order(q).unwrap();
        for d in 4..=9 {
            for _ in 0..20 {
                let mut s = Mat::zero(&f, d);
                for i in 0..d {
                    for j in i..d {
                        let x = rng.random_range(0..f.q());
                        s.set(i, j, x);
                        s.set(j, i, x);
                    }
                }
                let c = symmetric_module_factor(&s).unwrap();
                assert!(c.verify());
                assert!(c.terms.len() <= case_bound(f.p(), d));
            }
        }
    }
}

#[test]
fn sp_torus_word_all_lambda() {
    for q in [3, 4, 5, 7, 9, 11] {
        let f = Field::of_order(q).unwrap();
        for d in 2..=3 {
            let s = FormSpace::new(FormKind::Symplectic, 2 * d, q).unwrap();
            for lam in f.nonzero() {
                let w = sp_borel_torus_word(&f, d, lam).unwrap();
                assert_eq!(w.len(), 6);
                assert!(w.multiplies_back());
                assert!(w.letters.iter().all(|(m, _)| s.is_isometry(m).unwrap()));
            }
        }
    }
}

#[test]
fn sp_torus_word_examples() {
    let f = Field::of_order(5).unwrap();
    let w = sp_borel_torus_word(&f, 2, 1).unwrap();
    assert!(w.product().is_identity());
    // (e1, e2, f1, f2): λ on e1, λ⁻¹ = 3 on f1
    let w = sp_borel_torus_word(&f, 2, 2).unwrap();
    assert_eq!(w.product(), Mat::diag(&f, &[2, 1, 3, 1]));
    assert!(matches!(sp_borel_torus_word(&f, 2, 0), Err(Error::ZeroLambda)));
    let f2 = Field::of_order(2).unwrap();
    assert!(sp_borel_torus_word(&f2, 2, 1).unwrap().product().is_identity());
}

#[test]
fn su3_identities() {
    for q in [2, 3, 4, 5] {
        let s = su3_space(q).unwrap();
        let f = s.field().clone();
        let eps = su3_epsilon(&f);
        assert_eq!(f.mul(eps, f.conj(eps)), f.minus_one());
        let mut members = 0;
        for lam in f.nonzero() {
            match su3_torus_factor(&f, lam) {
                Ok(x) => {
                    members += 1;
                    // independent check of the membership condition
                    let li = f.inv_nz(lam);
                    assert_eq!(f.add(li, f.conj(li)), f.mul(x.t, f.conj(x.t)));
                    for m in [&x.a1, &x.b, &x.a2] {
                        assert!(s.is_isometry(m).unwrap(), "q={q} lam={lam}");
                    }
                    assert!(x.a1.is_upper_triangular() && x.a2.is_upper_triangular());
                    assert!(x.b.transpose().is_upper_triangular());
                    assert_eq!(x.product(), su3_cross(&f, lam));
                }
                Err(Error::NotInL) => assert!(f.elements().all(|t| {
                    let li = f.inv_nz(lam);
                    f.add(li, f.conj(li)) != f.mul(t, f.conj(t))
                })),
                Err(e) => panic!("{e:?}"),
            }
            let (l1, l2) = lambda_split(&f, lam).unwrap();
            assert_eq!(f.mul(l1, f.inv_nz(f.conj(l2))), lam);
            let w = su3_torus_word(&f, lam).unwrap();
            assert!(w.multiplies_back());
            assert!(w.letters.iter().all(|(m, _)| s.is_isometry(m).unwrap()));
            assert!(s.is_isometry(&w.target).unwrap());
        }
        assert!(members > 0);
    }
}

#[test]
fn lambda_split_prefers_one() {
    for q in [2, 3, 4, 5] {
        let f = Field::of_order(q * q).unwrap();
        if l_witness(&f, 1).is_some() {
            for lam in f.nonzero().filter(|&l| l_witness(&f, l).is_some()) {
                assert_eq!(lambda_split(&f, lam).unwrap(), (lam, 1));
            }
        }
    }
}

fn xor(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x ^ y).collect()
}

#[test]
fn even_weight_examples() {
    let (p, q) = even_weight_decompose(&[false; 4], 4).unwrap();
    assert!(p.is_identity() && q.is_identity());
    let v = [true, true, false, false];
    let (p, q) = even_weight_decompose(&[true; 4], 4).unwrap();
    assert_eq!(permute_vector(&p, &v), vec![true, true, false, false]);
    assert_eq!(permute_vector(&q, &v), vec![false, false, true, true]);
    assert!(matches!(even_weight_decompose(&[true, false, false], 3), Err(Error::OddWeight)));
}

#[test]
fn even_weight_all_up_to_12() {
    for d in 2..=12usize {
        let v: Vec<bool> = (0..d).map(|i| i < d / 2).collect();
        for code in 0u32..1 << d {
            let u: Vec<bool> = (0..d).map(|i| code >> i & 1 == 1).collect();
            match even_weight_decompose(&u, d) {
                Ok((p, q)) => {
                    assert_eq!(xor(&permute_vector(&p, &v), &permute_vector(&q, &v)), u);
                }
                Err(Error::OddWeight) => assert_eq!(code.count_ones() % 2, 1),
                Err(e) => panic!("{e:?}"),
            }
        }
    }
}

#[test]
fn pair_span_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for q in [2, 3] {
        let f = Field::of_order(q).unwrap();
        for d in 3..=4 {
            let mut done = 0;
            while done < 1000 {
                let mut v = || -> Vec<Elt> { (0..d).map(|_| rng.random_range(0..f.q())).collect() };
                let (x, y, a, b) = (v(), v(), v(), v());
                let apply = |m: &Mat, u: &[Elt]| m.apply(u);
                match pair_span_decompose(&f, &x, &y, &a, &b) {
                    Ok((ma, mb)) => {
                        assert_eq!(ma.det(), 1);
                        assert_eq!(mb.det(), 1);
                        let sa: Vec<Elt> = apply(&ma, &a).iter().zip(apply(&mb, &a)).map(|(&s, t)| f.add(s, t)).collect();
                        let sb: Vec<Elt> = apply(&ma, &b).iter().zip(apply(&mb, &b)).map(|(&s, t)| f.add(s, t)).collect();
                        assert_eq!((sa, sb), (x, y));
                        done += 1;
                    }
                    Err(Error::DependentPair) => {}
                    Err(e) => panic!("{e:?}"),
                }
            }
        }
    }
}

#[test]
fn pair_span_edge_cases() {
    let f = Field::of_order(2).unwrap();
    let (a, b) = (vec![1, 0, 0], vec![0, 1, 0]);
    let (ma, mb) = pair_span_decompose(&f, &a, &b, &a, &b).unwrap();
    assert_eq!(ma.add(&mb).apply(&a), a);
    assert_eq!(ma.add(&mb).apply(&b), b);
    let (ma, mb) = pair_span_decompose(&f, &[0, 0, 0], &[0, 0, 0], &a, &b).unwrap();
    assert_eq!(ma.apply(&a), mb.apply(&a));
    assert_eq!(ma.apply(&b), mb.apply(&b));
    assert!(matches!(pair_span_decompose(&f, &a, &b, &a, &a), Err(Error::DependentPair)));
    assert!(matches!(pair_span_decompose(&f, &[1, 0], &[0, 1], &[1, 0], &[0, 1]), Err(Error::DimensionTooSmall(2))));
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn symmetric_factor_reconstructs(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9, 11]), d in 2usize..6, seed: u64) {
            let f = Field::of_order(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = Mat::zero(&f, d);
            for i in 0..d {
                for j in i..d {
                    let x = rng.random_range(0..f.q());
                    s.set(i, j, x);
                    s.set(j, i, x);
                }
            }
            let c = symmetric_module_factor(&s).unwrap();
            prop_assert!(c.verify());
            prop_assert!(c.terms.len() <= case_bound(f.p(), d));
        }

        #[test]
        fn even_weight_roundtrip(bits in prop::collection::vec(any::<bool>(), 2..24)) {
            let d = bits.len();
            let v: Vec<bool> = (0..d).map(|i| i < d / 2).collect();
            match even_weight_decompose(&bits, d) {
                Ok((p, q)) => prop_assert_eq!(xor(&permute_vector(&p, &v), &permute_vector(&q, &v)), bits),
                Err(e) => {
                    prop_assert!(matches!(e, Error::OddWeight));
                    prop_assert_eq!(bits.iter().filter(|&&b| b).count() % 2, 1);
                }
            }
        }
    }
}
