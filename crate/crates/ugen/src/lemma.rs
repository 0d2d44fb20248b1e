//! The registered factorisation lemmas, their witness JSON and re-validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use ugen_core::forms::torus as ft;
use ugen_core::matrix::double::DoubleConnectives;
use ugen_core::matrix::{step, torus};
use ugen_core::perm::{brenner, uni};
use ugen_core::{Field, Mat, Perm, Tag, Witness};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    Uni1,
    Uni2,
    Brenner,
    SlStep,
    SlDouble,
    SpWord,
    Su3,
    Torus,
}

impl Lemma {
    pub const ALL: [Lemma; 8] =
        [Lemma::Uni1, Lemma::Uni2, Lemma::Brenner, Lemma::SlStep, Lemma::SlDouble, Lemma::SpWord, Lemma::Su3, Lemma::Torus];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Uni1 => "uni1",
            Lemma::Uni2 => "uni2",
            Lemma::Brenner => "brenner",
            Lemma::SlStep => "sl-step",
            Lemma::SlDouble => "sl-double",
            Lemma::SpWord => "sp-word",
            Lemma::Su3 => "su3",
            Lemma::Torus => "torus",
        }
    }

    /// Exact witness length, where the lemma fixes one.
    pub fn word_length(self) -> Option<usize> {
        match self {
            Lemma::Uni1 => Some(5),
            Lemma::Uni2 => Some(17),
            Lemma::Brenner => Some(4),
            Lemma::SpWord | Lemma::Su3 => Some(6),
            Lemma::Torus => Some(2),
            Lemma::SlStep | Lemma::SlDouble => None,
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Lemma, CliError> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| CliError::usage(format!("unknown lemma {s:?}")))
    }
}

/// Numeric parameters of a single factorisation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
}

fn need(v: Option<u64>, name: &str) -> Result<usize, CliError> {
    v.map(|x| x as usize).ok_or_else(|| CliError::usage(format!("--{name} is required")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LetterJson {
    pub letter: String,
    pub tag: String,
}

/// A witness as written to reports. Permutations use 1-indexed cycle
/// notation on the degree implied by the parameters; matrices use
/// `d,q;row|row` text.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub lemma: String,
    pub params: Params,
    pub target: String,
    pub letters: Vec<LetterJson>,
    pub valid: bool,
}

fn perm_degree(lemma: Lemma, p: &Params) -> Result<usize, CliError> {
    Ok(match lemma {
        Lemma::Uni1 => need(p.m, "m")? + 1,
        Lemma::Uni2 => 8 * need(p.n, "n")?,
        Lemma::Brenner => 4 * need(p.n, "n")?,
        _ => unreachable!(),
    })
}

fn is_perm_lemma(l: Lemma) -> bool {
    matches!(l, Lemma::Uni1 | Lemma::Uni2 | Lemma::Brenner)
}

fn to_json<E>(lemma: Lemma, p: &Params, w: &Witness<E>, fmt: impl Fn(&E) -> String, valid: bool) -> WitnessJson {
    WitnessJson {
        lemma: lemma.name().into(),
        params: p.clone(),
        target: fmt(&w.target),
        letters: w.letters.iter().map(|(e, t)| LetterJson { letter: fmt(e), tag: t.to_string() }).collect(),
        valid,
    }
}

fn su3_field(q: usize) -> Result<Field, CliError> {
    Ok(ft::su3_space(q as u64)?.field().clone())
}

/// Factors `target` with `lemma`. `torus` ignores the target.
pub fn factorize(lemma: Lemma, target: &str, p: &Params) -> Result<WitnessJson, CliError> {
    if is_perm_lemma(lemma) {
        let deg = perm_degree(lemma, p)?;
        let phi = Perm::parse_cycles(deg, target).map_err(CliError::parse)?;
        let w = match lemma {
            Lemma::Uni1 => uni::uni1_factor(&phi, deg - 1)?,
            Lemma::Uni2 => uni::Uni2::new(deg / 8)?.factor(&phi)?,
            _ => brenner::brenner_factor(&phi)?,
        };
        let valid = perm_witness_ok(lemma, p, &w);
        return Ok(to_json(lemma, p, &w, |e| e.to_string(), valid));
    }
    let w = match lemma {
        Lemma::SlStep => step::sl_step_factor(&Mat::parse_text(target).map_err(CliError::parse)?)?,
        Lemma::SlDouble => ugen_core::matrix::double::sl_double_factor(&Mat::parse_text(target).map_err(CliError::parse)?)?,
        Lemma::SpWord => {
            let (d, q) = (need(p.d, "d")?, need(p.q, "q")?);
            let f = Field::of_order(q as u64)?;
            ft::sp_borel_torus_word(&f, d, f.parse_elt(target).map_err(CliError::parse)?)?
        }
        Lemma::Su3 => {
            let f = su3_field(need(p.q, "q")?)?;
            ft::su3_torus_word(&f, f.parse_elt(target).map_err(CliError::parse)?)?
        }
        Lemma::Torus => {
            let t = torus::regular_torus_factor(need(p.q, "q")? as u64, need(p.n, "n")?)?;
            let mut w = Witness::new(t.psi.clone());
            w.push(t.pi1, Tag::Class);
            w.push(t.pi2, Tag::Class);
            w
        }
        _ => unreachable!(),
    };
    let valid = mat_witness_ok(lemma, p, &w)?;
    Ok(to_json(lemma, p, &w, Mat::to_text, valid))
}

fn length_ok<E: ugen_core::witness::GroupElem>(lemma: Lemma, w: &Witness<E>) -> bool {
    lemma.word_length().is_none_or(|n| n == w.len())
}

/// Multiply-back, letter membership and word length.
pub fn perm_witness_ok(lemma: Lemma, p: &Params, w: &Witness<Perm>) -> bool {
    let ok = match lemma {
        Lemma::Uni1 => {
            let m = w.target.degree() - 1;
            w.validate(|e, t| uni::uni1_letter_ok(m, e, t))
        }
        Lemma::Uni2 => {
            let n = w.target.degree() / 8;
            w.validate(|e, t| uni::uni2_letter_ok(n, e, t))
        }
        Lemma::Brenner => w.validate(|e, t| *t == Tag::Class && e.is_fpf_involution()),
        _ => false,
    };
    let deg_ok = perm_degree(lemma, p).is_ok_and(|d| d == w.target.degree());
    ok && deg_ok && length_ok(lemma, w)
}

/// As [`perm_witness_ok`] for the matrix lemmas.
pub fn mat_witness_ok(lemma: Lemma, p: &Params, w: &Witness<Mat>) -> Result<bool, CliError> {
    let f = w.target.field().clone();
    let dim = w.target.dim();
    let ok = match lemma {
        Lemma::SlStep => w.validate(step::step_letter_ok),
        Lemma::SlDouble => {
            if !dim.is_multiple_of(8) {
                return Ok(false);
            }
            let conn = DoubleConnectives::new(&f, dim / 8);
            w.validate(|e, t| conn.letter_ok(e, t))
        }
        Lemma::SpWord => {
            let d = need(p.d, "d")?;
            dim == 2 * d
                && w.validate(|e, t| match t {
                    Tag::X => *e == ft::sp_x(&f, d, e.get(0, d)),
                    Tag::Y => *e == ft::sp_y(&f, d, e.get(d, 0)),
                    _ => false,
                })
        }
        Lemma::Su3 => {
            let space = ft::su3_space(need(p.q, "q")? as u64)?;
            let unitri = |e: &Mat, upper: bool| {
                (0..3).all(|i| e.get(i, i) == 1)
                    && (0..3).all(|i| (0..3).all(|j| (i == j) || ((j > i) == upper) || e.get(i, j) == 0))
            };
            space.field() == &f
                && w.validate(|e, t| {
                    let iso = space.is_isometry(e).unwrap_or(false);
                    iso && match t {
                        Tag::X => unitri(e, true),
                        Tag::Y => unitri(e, false),
                        _ => false,
                    }
                })
        }
        Lemma::Torus => w.validate(|e, t| *t == Tag::Class && torus::in_class_c(e)),
        _ => false,
    };
    Ok(ok && length_ok(lemma, w))
}

fn parse_tag(s: &str) -> Result<Tag, CliError> {
    s.parse::<Tag>().map_err(|_| CliError::parse(format!("bad tag {s:?}")))
}

/// Rebuilds the witness from its JSON and re-runs every check.
pub fn recheck(j: &WitnessJson) -> Result<bool, CliError> {
    let lemma: Lemma = j.lemma.parse()?;
    if is_perm_lemma(lemma) {
        let deg = perm_degree(lemma, &j.params)?;
        let parse = |s: &str| Perm::parse_cycles(deg, s).map_err(CliError::parse);
        let mut w = Witness::new(parse(&j.target)?);
        for l in &j.letters {
            w.push(parse(&l.letter)?, parse_tag(&l.tag)?);
        }
        return Ok(perm_witness_ok(lemma, &j.params, &w));
    }
    let parse = |s: &str| Mat::parse_text(s).map_err(CliError::parse);
    let mut w = Witness::new(parse(&j.target)?);
    for l in &j.letters {
        let e = parse(&l.letter)?;
        if e.dim() != w.target.dim() || e.field() != w.target.field() {
            return Ok(false);
        }
        w.push(e, parse_tag(&l.tag)?);
    }
    let expected = match lemma {
        Lemma::SpWord => {
            let f = w.target.field().clone();
            let lam = w.target.get(0, 0);
            lam != 0 && w.target == ft::sp_torus(&f, need(j.params.d, "d")?, lam)
        }
        Lemma::Su3 => {
            let lam = w.target.get(0, 0);
            lam != 0 && w.target == ft::su3_torus(w.target.field(), lam)
        }
        Lemma::Torus => {
            let psi = &w.target;
            w.letters.first().is_some_and(|(p1, _)| p1.mul(psi).mul(&p1.inv()) == psi.inv())
        }
        _ => true,
    };
    Ok(expected && mat_witness_ok(lemma, &j.params, &w)?)
}
