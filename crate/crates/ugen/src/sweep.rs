//! Exhaustive and sampled sweeps behind `ugen verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use ugen_core::forms::{self, torus as ft};
use ugen_core::matrix::double::{split_nonsingular, DoubleFactor};
use ugen_core::matrix::saxl::{class_covering_radius, sampled_distance_bound, DEFAULT_MAX_ORDER};
use ugen_core::matrix::{enumerate_sl, random_sl, sl_order, step, torus};
use ugen_core::perm::brenner::Brenner;
use ugen_core::perm::generic::{diagonal_centralizer_element, generic_sequence, is_generic, sym_conjugacy_scan};
use ugen_core::perm::uni::{uni1_factor, Uni2};
use ugen_core::perm::{self, Perm};
use ugen_core::{Field, Mat};

use crate::error::CliError;
use crate::lemma::{mat_witness_ok, perm_witness_ok, Lemma, Params};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    #[default]
    Quick,
    Full,
    Big,
}

impl Profile {
    /// Random cases per sampled sweep.
    pub fn samples(self) -> usize {
        match self {
            Profile::Quick => 100,
            Profile::Full | Profile::Big => 1000,
        }
    }

    /// Largest group swept exhaustively by the SL sweeps.
    pub fn exhaustive_cap(self) -> u128 {
        match self {
            Profile::Quick => 200,
            Profile::Full => 20_000,
            Profile::Big => 200_000,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
            Profile::Big => "big",
        })
    }
}

/// `3..7` (inclusive), `3..=7`, `2,3,5` or a single number.
pub fn parse_list(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::usage(format!("bad range {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Sweepable properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Lemma(Lemma),
    Saxl,
    Split,
    Symmetric,
    Generic,
}

impl FromStr for Check {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Check, CliError> {
        Ok(match s {
            "saxl" => Check::Saxl,
            "split" => Check::Split,
            "symmetric" => Check::Symmetric,
            "generic" => Check::Generic,
            other => Check::Lemma(other.parse()?),
        })
    }
}

/// Range parameters of a sweep; unset ones take per-check defaults.
#[derive(Clone, Debug, Default)]
pub struct SweepArgs {
    pub m: Option<String>,
    pub n: Option<String>,
    pub d: Option<String>,
    pub q: Option<String>,
    pub t: Option<String>,
    pub bound: Option<u64>,
    pub seed: u64,
    pub profile: Profile,
}

impl SweepArgs {
    fn list(&self, v: &Option<String>, default: &str) -> Result<Vec<u64>, CliError> {
        parse_list(v.as_deref().unwrap_or(default))
    }
}

/// Case and failure counts with the first counterexample.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tally {
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn merge(&mut self, o: &Tally) {
        self.cases += o.cases;
        self.failures += o.failures;
        if self.first_failure.is_none() {
            self.first_failure.clone_from(&o.first_failure);
        }
    }
}

/// One block of a sweep: its parameters and tally.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub params: Value,
    #[serde(flatten)]
    pub tally: Tally,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

fn block(params: Value, tally: Tally) -> Block {
    Block { params, tally, details: Value::Null }
}

pub fn random_even<R: Rng>(n: usize, rng: &mut R) -> Perm {
    let mut img: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        img.swap(i, rng.random_range(0..=i));
    }
    let p = Perm::from_images(img.clone()).expect("shuffle is a bijection");
    if p.is_even() {
        p
    } else {
        img.swap(0, 1);
        Perm::from_images(img).expect("shuffle is a bijection")
    }
}

fn field(q: u64) -> Result<Field, CliError> {
    Ok(Field::of_order(q)?)
}

pub fn run(check: Check, a: &SweepArgs) -> Result<Vec<Block>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    match check {
        Check::Lemma(Lemma::Uni1) => a.list(&a.m, "3..7")?.into_iter().map(|m| uni1(m as usize)).collect(),
        Check::Lemma(Lemma::Uni2) => {
            a.list(&a.n, "1")?.into_iter().map(|n| uni2(n as usize, a.profile, &mut rng)).collect()
        }
        Check::Lemma(Lemma::Brenner) => {
            a.list(&a.n, "2")?.into_iter().map(|n| brenner(n as usize, a.profile, &mut rng)).collect()
        }
        Check::Lemma(Lemma::SpWord) => {
            let mut out = Vec::new();
            for d in a.list(&a.d, "2,3")? {
                for q in a.list(&a.q, "3,4,5,7,9,11")? {
                    out.push(sp_word(d as usize, q)?);
                }
            }
            Ok(out)
        }
        Check::Lemma(Lemma::Su3) => a.list(&a.q, "2..5")?.into_iter().map(su3).collect(),
        Check::Lemma(Lemma::SlStep) => {
            let mut out = Vec::new();
            for d in a.list(&a.d, "3")? {
                for q in a.list(&a.q, "2")? {
                    out.push(sl_step(d as usize, q, a.profile, &mut rng)?);
                }
            }
            Ok(out)
        }
        Check::Lemma(Lemma::SlDouble) => {
            let mut out = Vec::new();
            for d in a.list(&a.d, "1")? {
                for q in a.list(&a.q, "2")? {
                    out.push(sl_double(d as usize, q, a.profile, &mut rng)?);
                }
            }
            Ok(out)
        }
        Check::Lemma(Lemma::Torus) => {
            let mut out = Vec::new();
            for q in a.list(&a.q, "2,3")? {
                for n in a.list(&a.n, "1")? {
                    out.push(regular_torus(q, n as usize)?);
                }
            }
            Ok(out)
        }
        Check::Saxl => {
            let mut out = Vec::new();
            for q in a.list(&a.q, "2")? {
                for n in a.list(&a.n, "1")? {
                    out.push(saxl(q, n as usize, a.bound.unwrap_or(5) as usize, a.profile, &mut rng)?);
                }
            }
            Ok(out)
        }
        Check::Split => {
            let mut out = Vec::new();
            for d in a.list(&a.d, "2,3")? {
                for q in a.list(&a.q, "2,3")? {
                    out.push(split(d as usize, q, a.profile)?);
                }
            }
            Ok(out)
        }
        Check::Symmetric => {
            let mut out = Vec::new();
            for d in a.list(&a.d, "2,3")? {
                for q in a.list(&a.q, "2,3,5,7,9")? {
                    out.push(symmetric(d as usize, q)?);
                }
            }
            Ok(out)
        }
        Check::Generic => generic(&a.list(&a.m, "2..6")?, *a.list(&a.t, "8")?.last().unwrap_or(&8) as usize),
    }
}

pub fn uni1(m: usize) -> Result<Block, CliError> {
    if m < 3 {
        return Err(CliError::usage("uni1 needs m >= 3"));
    }
    let p = Params { m: Some(m as u64), ..Params::default() };
    let mut t = Tally::default();
    for phi in perm::alt(m + 1) {
        let ok = uni1_factor(&phi, m).is_ok_and(|w| perm_witness_ok(Lemma::Uni1, &p, &w));
        t.record(ok, || format!("m={m} phi={phi}"));
    }
    Ok(block(json!({"m": m}), t))
}

pub fn uni2<R: Rng>(n: usize, profile: Profile, rng: &mut R) -> Result<Block, CliError> {
    let engine = Uni2::new(n)?;
    let p = Params { n: Some(n as u64), ..Params::default() };
    let mut t = Tally::default();
    let one = |phi: &Perm, t: &mut Tally| {
        let ok = engine.factor(phi).is_ok_and(|w| perm_witness_ok(Lemma::Uni2, &p, &w));
        t.record(ok, || format!("n={n} phi={phi}"));
    };
    let mode = if n == 1 {
        perm::alt(8).for_each(|phi| one(&phi, &mut t));
        "exhaustive"
    } else {
        (0..profile.samples()).for_each(|_| one(&random_even(8 * n, rng), &mut t));
        "sampled"
    };
    Ok(block(json!({"n": n, "mode": mode}), t))
}

pub fn brenner<R: Rng>(n: usize, profile: Profile, rng: &mut R) -> Result<Block, CliError> {
    let engine = Brenner::new(4 * n)?;
    let p = Params { n: Some(n as u64), ..Params::default() };
    let mut t = Tally::default();
    let one = |phi: &Perm, t: &mut Tally| {
        let ok = engine.factor(phi).is_ok_and(|w| perm_witness_ok(Lemma::Brenner, &p, &w));
        t.record(ok, || format!("n={n} phi={phi}"));
    };
    let mode = if n == 2 {
        perm::alt(8).for_each(|phi| one(&phi, &mut t));
        "exhaustive"
    } else {
        (0..profile.samples()).for_each(|_| one(&random_even(4 * n, rng), &mut t));
        "sampled"
    };
    Ok(block(json!({"n": n, "mode": mode}), t))
}

pub fn sp_word(d: usize, q: u64) -> Result<Block, CliError> {
    let f = field(q)?;
    let p = Params { d: Some(d as u64), q: Some(q), ..Params::default() };
    let mut t = Tally::default();
    for lam in f.nonzero() {
        let ok = ft::sp_borel_torus_word(&f, d, lam).is_ok_and(|w| {
            w.target == ft::sp_torus(&f, d, lam) && mat_witness_ok(Lemma::SpWord, &p, &w).unwrap_or(false)
        });
        t.record(ok, || format!("d={d} q={q} lambda={}", f.fmt_elt(lam)));
    }
    Ok(block(json!({"d": d, "q": q}), t))
}

/// The three-factor identity for every `λ ∈ L`, and the splitting
/// `λ = λ₁·λ̄₂⁻¹` with the six-letter word for every nonzero `λ`.
pub fn su3(q: u64) -> Result<Block, CliError> {
    let space = ft::su3_space(q)?;
    let f = space.field().clone();
    let p = Params { q: Some(q), ..Params::default() };
    let upper = |m: &Mat| m.is_upper_triangular() && (0..3).all(|i| m.get(i, i) == 1);
    let lower = |m: &Mat| upper(&m.transpose());
    let iso = |m: &Mat| space.is_isometry(m).unwrap_or(false);
    let mut t = Tally::default();
    let mut in_l = 0usize;
    for lam in f.nonzero() {
        if ft::l_witness(&f, lam).is_some() {
            in_l += 1;
            let ok = ft::su3_torus_factor(&f, lam).is_ok_and(|s| {
                s.product() == ft::su3_cross(&f, lam)
                    && upper(&s.a1)
                    && upper(&s.a2)
                    && lower(&s.b)
                    && [&s.a1, &s.b, &s.a2].iter().all(|m| iso(m))
            });
            t.record(ok, || format!("q={q} factor lambda={}", f.fmt_elt(lam)));
        }
        let split_ok = ft::lambda_split(&f, lam).is_ok_and(|(l1, l2)| {
            ft::l_witness(&f, l1).is_some()
                && ft::l_witness(&f, l2).is_some()
                && f.mul(l1, f.inv_nz(f.conj(l2))) == lam
        });
        let word_ok = ft::su3_torus_word(&f, lam).is_ok_and(|w| {
            w.target == ft::su3_torus(&f, lam) && mat_witness_ok(Lemma::Su3, &p, &w).unwrap_or(false)
        });
        t.record(split_ok && word_ok, || format!("q={q} split lambda={}", f.fmt_elt(lam)));
    }
    let mut b = block(json!({"q": q}), t);
    b.details = json!({"l_size": in_l});
    Ok(b)
}

fn sl_cases<R: Rng>(f: &Field, d: usize, profile: Profile, rng: &mut R) -> (Vec<Mat>, &'static str) {
    if sl_order(f.q() as u64, d as u32) <= profile.exhaustive_cap() {
        (enumerate_sl(f, d), "exhaustive")
    } else {
        ((0..profile.samples()).map(|_| random_sl(f, d, rng)).collect(), "sampled")
    }
}

pub fn sl_step<R: Rng>(d: usize, q: u64, profile: Profile, rng: &mut R) -> Result<Block, CliError> {
    let f = field(q)?;
    let p = Params::default();
    let (cases, mode) = sl_cases(&f, d, profile, rng);
    let mut t = Tally::default();
    for phi in &cases {
        let ok = step::sl_step_factor(phi).is_ok_and(|w| mat_witness_ok(Lemma::SlStep, &p, &w).unwrap_or(false));
        t.record(ok, || format!("d={d} q={q} phi={}", phi.to_text()));
    }
    Ok(block(json!({"d": d, "q": q, "mode": mode}), t))
}

pub fn sl_double<R: Rng>(d: usize, q: u64, profile: Profile, rng: &mut R) -> Result<Block, CliError> {
    let f = field(q)?;
    let engine = DoubleFactor::new(&f, d)?;
    let p = Params::default();
    let mut t = Tally::default();
    for _ in 0..profile.samples() {
        let phi = random_sl(&f, 8 * d, rng);
        let ok = engine.factor(&phi).is_ok_and(|w| mat_witness_ok(Lemma::SlDouble, &p, &w).unwrap_or(false));
        t.record(ok, || format!("d={d} q={q} phi={}", phi.to_text()));
    }
    Ok(block(json!({"d": d, "q": q, "mode": "sampled"}), t))
}

pub fn regular_torus(q: u64, n: usize) -> Result<Block, CliError> {
    let r = torus::regular_torus_factor(q, n)?;
    let mut t = Tally::default();
    let zs = ugen_core::field::ntheory::zsigmondy_prime(q, 4 * n as u32)?;
    let checks = [
        ("prime", r.prime == zs),
        ("order", r.psi.order(100_000) == Some(r.prime)),
        ("product", r.pi1.mul(&r.pi2) == r.psi),
        ("involutions", r.pi1.mul(&r.pi1).is_identity() && r.pi2.mul(&r.pi2).is_identity()),
        ("inversion", r.pi1.mul(&r.psi).mul(&r.pi1.inv()) == r.psi.inv()),
        ("class", torus::in_class_c(&r.pi1) && torus::in_class_c(&r.pi2)),
    ];
    for (name, ok) in checks {
        t.record(ok, || format!("q={q} n={n} {name}"));
    }
    let mut b = block(json!({"q": q, "n": n}), t);
    b.details = json!({"prime": r.prime});
    Ok(b)
}

/// Class of `diag` of `2n` transposition blocks in `SL(4n,q)`.
pub fn saxl_rep(q: u64, n: usize) -> Result<Mat, CliError> {
    let f = field(q)?;
    let d = 4 * n;
    let pairs: Vec<[usize; 2]> = (0..2 * n).map(|i| [2 * i, 2 * i + 1]).collect();
    let cycles: Vec<&[usize]> = pairs.iter().map(|p| &p[..]).collect();
    Ok(Mat::perm(&f, &Perm::from_cycles(d, &cycles)?))
}

pub fn saxl<R: Rng>(q: u64, n: usize, bound: usize, profile: Profile, rng: &mut R) -> Result<Block, CliError> {
    let rep = saxl_rep(q, n)?;
    let d = 4 * n;
    let order = sl_order(q, d as u32);
    let mut t = Tally::default();
    if order <= 100_000 {
        let r = class_covering_radius(&rep, 2 * bound, DEFAULT_MAX_ORDER)?;
        let nc = r.noncentral_covering_number();
        let all = r.covering_number();
        t.record(nc.is_some_and(|k| k <= bound), || format!("q={q} d={d} non-central covering number {nc:?}"));
        t.record(r.radius <= 2 * bound, || format!("q={q} d={d} radius {}", r.radius));
        let mut b = block(json!({"q": q, "d": d, "bound": bound, "mode": "exhaustive"}), t);
        b.details = json!({
            "group_order": r.group_order.to_string(),
            "class_size": r.class_size,
            "profile": r.profile,
            "radius": r.radius,
            "noncentral_covering_number": nc,
            "covering_number": all,
        });
        return Ok(b);
    }
    if profile != Profile::Big {
        return Err(CliError::cap(format!("SL({d},{q}) of order {order} needs --profile big")));
    }
    let worst = sampled_distance_bound(&rep, profile.samples(), rng);
    t.record(worst.is_some_and(|w| w <= bound), || format!("q={q} d={d} sampled distance {worst:?}"));
    let mut b = block(json!({"q": q, "d": d, "bound": bound, "mode": "sampled"}), t);
    b.details = json!({"group_order": order.to_string(), "worst_distance": worst});
    Ok(b)
}

fn all_matrices(f: &Field, d: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = f.q() as u64;
    let total = q.pow((d * d) as u32);
    (0..total).map(move |mut c| {
        Mat::from_fn(f, d, |_, _| {
            let x = (c % q) as u32;
            c /= q;
            x
        })
    })
}

pub fn split(d: usize, q: u64, profile: Profile) -> Result<Block, CliError> {
    let f = field(q)?;
    let total = (q as u128).pow((d * d) as u32);
    if total > 100 * profile.exhaustive_cap().max(1_000_000) {
        return Err(CliError::cap(format!("{total} matrices is too many to sweep")));
    }
    let mut t = Tally::default();
    for s in all_matrices(&f, d) {
        let ok = split_nonsingular(&s).is_ok_and(|(a, b)| a.add(&b) == s && a.det() != 0 && b.det() != 0);
        t.record(ok, || format!("d={d} q={q} s={}", s.to_text()));
    }
    Ok(block(json!({"d": d, "q": q}), t))
}

/// Every symmetric `d×d` matrix over GF(q).
pub fn symmetric_matrices(f: &Field, d: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = f.q() as u64;
    let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let total = q.pow(slots.len() as u32);
    (0..total).map(move |mut c| {
        let mut m = Mat::zero(f, d);
        for &(i, j) in &slots {
            let x = (c % q) as u32;
            c /= q;
            m.set(i, j, x);
            m.set(j, i, x);
        }
        m
    })
}

pub fn symmetric(d: usize, q: u64) -> Result<Block, CliError> {
    let f = field(q)?;
    let bound = forms::symmetric::case_bound(f.p(), d);
    let mut t = Tally::default();
    let mut most = 0usize;
    for s in symmetric_matrices(&f, d) {
        let r = forms::symmetric_module_factor(&s);
        let ok = r.as_ref().is_ok_and(|c| c.verify() && c.target == s && c.terms.len() <= bound);
        if let Ok(c) = &r {
            most = most.max(c.terms.len());
        }
        t.record(ok, || format!("d={d} q={q} s={}", s.to_text()));
    }
    let mut b = block(json!({"d": d, "q": q}), t);
    b.details = json!({"term_bound": bound, "most_terms": most});
    Ok(b)
}

pub fn generic(ms: &[u64], tmax: usize) -> Result<Vec<Block>, CliError> {
    let mut out = Vec::new();
    for &m in ms {
        let m = m as usize;
        // on two points the only involution is odd
        if !(2..=8).contains(&m) {
            return Err(CliError::usage(format!("generic needs 2 <= m <= 8, got {m}")));
        }
        let mut t = Tally::default();
        for tt in 0..=tmax {
            let ok = is_generic(&generic_sequence(m, tt), m);
            t.record(ok, || format!("m={m} t={tt} canonical sequence"));
        }
        if (2..=5).contains(&m) {
            for tt in 0..m - 1 {
                let seq = generic_sequence(m, tt);
                let ok = diagonal_centralizer_element(&seq, m).is_ok_and(|tau| {
                    tau.is_fpf_involution() && tau.is_even() && seq.iter().all(|p| tau.mul(p) == p.mul(&tau))
                });
                t.record(ok, || format!("m={m} t={tt} centralizer element"));
            }
        }
        let mut b = block(json!({"m": m, "t": tmax}), t);
        if m == 3 {
            let scans: Vec<Value> = (0..=2)
                .map(|tt| {
                    let r = sym_conjugacy_scan(tt);
                    b.tally.record(r.unique_up_to_sym(), || format!("m=3 t={tt} conjugacy"));
                    json!({"t": tt, "generic": r.generic, "sym_orbit": r.sym_orbit, "alt_orbits": r.alt_orbits})
                })
                .collect();
            b.details = json!({ "conjugacy": scans });
        }
        out.push(b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::default();
        t.record(true, || unreachable!());
        t.record(false, || "a".into());
        t.record(false, || "b".into());
        let mut u = Tally::default();
        u.merge(&t);
        assert_eq!(u, Tally { cases: 3, failures: 2, first_failure: Some("a".into()) });
    }

    #[test]
    fn checks_parse() {
        assert_eq!("saxl".parse::<Check>().unwrap(), Check::Saxl);
        assert_eq!("uni2".parse::<Check>().unwrap(), Check::Lemma(Lemma::Uni2));
        assert!("uni3".parse::<Check>().is_err());
    }

    #[test]
    fn symmetric_matrix_count() {
        let f = Field::of_order(3).unwrap();
        let all: Vec<Mat> = symmetric_matrices(&f, 2).collect();
        assert_eq!(all.len(), 27);
        assert!(all.iter().all(Mat::is_symmetric));
    }

    #[test]
    fn generic_rejects_two_points() {
        assert!(generic(&[1], 3).is_err());
        assert_eq!(generic(&[2], 3).unwrap()[0].tally.failures, 0);
    }
}
