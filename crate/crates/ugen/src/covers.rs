//! JSON forms of covers, cover lists and escape reports.
//!
//! A single cover is `{"window": [..], "sets": [[..], ..]}`; a list of
//! covers over one window is `{"window": [..], "covers": [[[..], ..], ..]}`.
//! Elements are written with [`Group::fmt_elt`]: cycles for permutation
//! groups, residues for cyclic groups, `d,q;row|row` for matrices.

use serde::{Deserialize, Serialize};
use ugen_core::cover::{Cover, Escape, GroupFamily};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverJson {
    pub window: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoversJson {
    pub window: Vec<String>,
    pub covers: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EscapeJson {
    pub g: Vec<String>,
    pub depth: usize,
    pub checked_covers: usize,
}

pub fn family(window: &[String]) -> Result<GroupFamily, CliError> {
    let ds: Vec<&str> = window.iter().map(String::as_str).collect();
    Ok(GroupFamily::parse(&ds)?)
}

pub fn window_of(fam: &GroupFamily) -> Vec<String> {
    fam.groups.iter().map(ToString::to_string).collect()
}

pub fn sets_to_strings(fam: &GroupFamily, c: &Cover) -> Vec<Vec<String>> {
    fam.groups.iter().zip(&c.sets).map(|(g, s)| s.iter().map(|&x| g.fmt_elt(x)).collect()).collect()
}

pub fn parse_sets(fam: &GroupFamily, sets: &[Vec<String>]) -> Result<Cover, CliError> {
    if sets.len() != fam.len() {
        return Err(CliError::usage(format!("{} sets for a window of {}", sets.len(), fam.len())));
    }
    let codes = fam
        .groups
        .iter()
        .zip(sets)
        .map(|(g, s)| s.iter().map(|x| g.parse_elt(x)).collect::<Result<Vec<u128>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cover::new(fam, codes)?)
}

pub fn tuple_to_strings(fam: &GroupFamily, g: &[u128]) -> Vec<String> {
    fam.groups.iter().zip(g).map(|(gr, &x)| gr.fmt_elt(x)).collect()
}

pub fn cover_json(fam: &GroupFamily, c: &Cover) -> CoverJson {
    CoverJson { window: window_of(fam), sets: sets_to_strings(fam, c) }
}

pub fn covers_json(fam: &GroupFamily, cs: &[Cover]) -> CoversJson {
    CoversJson { window: window_of(fam), covers: cs.iter().map(|c| sets_to_strings(fam, c)).collect() }
}

pub fn escape_json(fam: &GroupFamily, e: &Escape) -> EscapeJson {
    EscapeJson { g: tuple_to_strings(fam, &e.g), depth: e.depth, checked_covers: e.checked_covers }
}

/// Reads either file shape into a window and a list of covers.
pub fn load(text: &str) -> Result<(GroupFamily, Vec<Cover>), CliError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("covers").is_some() {
        let j: CoversJson = serde_json::from_value(v)?;
        let fam = family(&j.window)?;
        let cs = j.covers.iter().map(|s| parse_sets(&fam, s)).collect::<Result<_, _>>()?;
        Ok((fam, cs))
    } else {
        let j: CoverJson = serde_json::from_value(v)?;
        let fam = family(&j.window)?;
        let c = parse_sets(&fam, &j.sets)?;
        Ok((fam, vec![c]))
    }
}
