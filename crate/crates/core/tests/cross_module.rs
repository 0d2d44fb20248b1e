//! Checks that span several modules of the public API.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ugen_core::cover::{self, Cover, GroupFamily};
use ugen_core::matrix::{random_sl, step, torus};
use ugen_core::perm::uni::{uni2_factor, uni2_theta};
use ugen_core::perm::{self, Perm};
use ugen_core::{Field, Mat};

#[test]
fn permutation_matrices_carry_uni2_words() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let mut img: Vec<usize> = (0..8).collect();
        rand::seq::SliceRandom::shuffle(&mut img[..], &mut rng);
        let mut phi = Perm::from_images(img).unwrap();
        if !phi.is_even() {
            phi = phi.mul(&Perm::parse_cycles(8, "(1 2)").unwrap());
        }
        let w = uni2_factor(&phi, 1).unwrap();
        let prod = w.letters.iter().fold(Mat::identity(&f, 8), |acc, (p, _)| acc.mul(&Mat::perm(&f, p)));
        assert_eq!(prod, Mat::perm(&f, &phi));
    }
    assert!(Mat::perm(&f, &uni2_theta(1)).mul(&Mat::perm(&f, &uni2_theta(1))).is_identity());
}

#[test]
fn step_words_survive_text_roundtrip() {
    let f = Field::of_order(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let phi = random_sl(&f, 4, &mut rng);
        let w = step::sl_step_factor(&phi).unwrap();
        let reread: Vec<Mat> = w.letters.iter().map(|(m, _)| Mat::parse_text(&m.to_text()).unwrap()).collect();
        let prod = reread.iter().fold(Mat::identity(&f, 4), |acc, m| acc.mul(m));
        assert_eq!(prod, phi);
    }
}

#[test]
fn torus_involution_is_a_permutation_matrix() {
    let t = torus::regular_torus_factor(2, 1).unwrap();
    assert_eq!(t.pi1.det(), 1);
    let p = t.pi1.as_permutation().unwrap();
    assert_eq!(Mat::perm(t.pi1.field(), &p), t.pi1);
    assert_eq!(p.cycle_type(), vec![2, 2]);
}

#[test]
fn covers_over_matrix_and_permutation_windows() {
    let fam = GroupFamily::parse(&["sl(2,3)", "alt(5)", "sl(3,2)"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cs = cover::random_covers(&fam, 2, &mut rng);
    let closure = cover::closure_enumerate(&fam, &cs, 2, 10_000).unwrap();
    assert!(closure.iter().all(|e| Cover::new(&fam, e.cover.sets.clone()).is_ok()));
    let g: Vec<u128> = fam.groups.iter().map(|g| g.identity()).collect();
    assert!(cover::covered_subgroup_contains(&fam, &cs, 0, &g).unwrap());
    // matrix elements print and parse through the group descriptor
    for (gr, s) in fam.groups.iter().zip(&cs[0].sets) {
        for &x in s {
            assert_eq!(gr.parse_elt(&gr.fmt_elt(x)).unwrap(), x);
        }
    }
    assert_eq!(perm::alt(5).count() as u128, fam.groups[1].order());
}
