//! Text form of a matrix: `d,q;r0|r1|..`, each row space-separated entries.
//!
//! Entries over prime fields are plain integers; over GF(p^k), k > 1, they
//! are `p^k:c0,..,c_{k-1}` with `c0` the constant coefficient. Bare element
//! codes are accepted on input for any field.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Mat;
use crate::error::{Error, Result};
use crate::field::Field;

impl Mat {
    pub fn to_text(&self) -> String {
        let f = self.field();
        let rows: Vec<String> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| f.fmt_short(self.get(i, j))).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{},{};{}", self.dim(), f.q(), rows.join("|"))
    }

    pub fn parse_text(s: &str) -> Result<Mat> {
        let bad = |why: &str| Error::Invalid(format!("bad matrix {s:?}: {why}"));
        let (head, body) = s.trim().split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let (d, q) = head.split_once(',').ok_or_else(|| bad("header is not d,q"))?;
        let d: usize = d.trim().parse().map_err(|_| bad("dimension"))?;
        let q: u64 = q.trim().parse().map_err(|_| bad("field order"))?;
        let f = Field::of_order(q)?;
        let rows: Vec<&str> = body.split('|').collect();
        if rows.len() != d {
            return Err(bad("row count"));
        }
        let mut m = Mat::zero(&f, d);
        for (i, r) in rows.iter().enumerate() {
            let entries: Vec<&str> = r.split_whitespace().collect();
            if entries.len() != d {
                return Err(bad("row length"));
            }
            for (j, e) in entries.iter().enumerate() {
                m.set(i, j, f.parse_elt(e)?);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for q in [2, 4, 5, 9] {
            let f = Field::of_order(q).unwrap();
            let m = Mat::from_fn(&f, 3, |i, j| ((i * 3 + j) as u32) % f.q());
            let t = m.to_text();
            assert_eq!(Mat::parse_text(&t).unwrap(), m);
        }
        let f = Field::of_order(3).unwrap();
        assert_eq!(Mat::parse_text("2,3;1 2|0 1").unwrap(), Mat::from_ints(&f, &[&[1, 2], &[0, 1]]));
        let f4 = Field::of_order(4).unwrap();
        assert_eq!(Mat::parse_text("2,4;2^2:0,1 0|0 1").unwrap().get(0, 0), f4.from_coeffs(&[0, 1]).unwrap());
        for bad in ["2,3;1 2", "2,3;1 2|0", "2,3;1 5|0 1", "2;1 0|0 1", "2,6;1 0|0 1", "2,4;2^3:1 0|0 1"] {
            assert!(Mat::parse_text(bad).is_err(), "{bad}");
        }
    }
}
