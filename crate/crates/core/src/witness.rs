//! Factorization witnesses: an ordered word of tagged letters with a target.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Which subgroup, class or connective a letter is drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    /// Point stabiliser `Alt(m)` inside `Alt(m+1)`.
    Psi,
    /// Fixed connective of the permutation lemmas.
    Theta,
    /// Conjugacy class of fixed-point-free involutions.
    Class,
    /// Top-left embedded `SL(d,q)`.
    S,
    /// Bottom-right embedded `SL(d,q)`.
    T,
    /// Block diagonal subgroup `Alt(Δ0)×Alt(Δ1)` or `SL(E0)×SL(E1)`.
    Gamma,
    /// Upper unipotent `X(t)` of the symplectic torus word.
    X,
    /// Lower unipotent `Y(t)` of the symplectic torus word.
    Y,
    /// Named fixed element (or its inverse).
    Conn { name: String, inverse: bool },
}

impl Tag {
    pub fn conn(name: &str) -> Tag {
        Tag::Conn { name: name.into(), inverse: false }
    }
    pub fn conn_inv(name: &str) -> Tag {
        Tag::Conn { name: name.into(), inverse: true }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Psi => f.write_str("psi"),
            Tag::Theta => f.write_str("theta"),
            Tag::Class => f.write_str("class"),
            Tag::S => f.write_str("S"),
            Tag::T => f.write_str("T"),
            Tag::Gamma => f.write_str("gamma"),
            Tag::X => f.write_str("X"),
            Tag::Y => f.write_str("Y"),
            Tag::Conn { name, inverse: false } => write!(f, "{name}"),
            Tag::Conn { name, inverse: true } => write!(f, "{name}^-1"),
        }
    }
}

impl core::str::FromStr for Tag {
    type Err = ();
    fn from_str(s: &str) -> Result<Tag, ()> {
        Ok(match s {
            "psi" => Tag::Psi,
            "theta" => Tag::Theta,
            "class" => Tag::Class,
            "S" => Tag::S,
            "T" => Tag::T,
            "gamma" => Tag::Gamma,
            "X" => Tag::X,
            "Y" => Tag::Y,
            "" => return Err(()),
            other => match other.strip_suffix("^-1") {
                Some(n) => Tag::conn_inv(n),
                None => Tag::conn(other),
            },
        })
    }
}

/// Group elements a witness can multiply.
pub trait GroupElem: Clone + PartialEq {
    /// `self · other`, acting on the left.
    fn op(&self, other: &Self) -> Self;
    /// The identity of the group `self` lives in.
    fn identity_like(&self) -> Self;
    fn inverse(&self) -> Self;
}

/// `target = letters[0] · letters[1] · ..`
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<E> {
    pub target: E,
    pub letters: Vec<(E, Tag)>,
}

impl<E: GroupElem> Witness<E> {
    pub fn new(target: E) -> Self {
        Witness { target, letters: Vec::new() }
    }

    pub fn push(&mut self, e: E, t: Tag) {
        self.letters.push((e, t));
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn product(&self) -> E {
        let mut acc = self.target.identity_like();
        for (e, _) in &self.letters {
            acc = acc.op(e);
        }
        acc
    }

    pub fn multiplies_back(&self) -> bool {
        self.product() == self.target
    }

    /// Product check plus a membership predicate on every letter.
    pub fn validate(&self, mut ok: impl FnMut(&E, &Tag) -> bool) -> bool {
        self.multiplies_back() && self.letters.iter().all(|(e, t)| ok(e, t))
    }

    /// Drops identity letters and multiplies together adjacent letters whose
    /// tag is in `mergeable`.
    pub fn simplify(&mut self, mergeable: &[Tag]) {
        let mut out: Vec<(E, Tag)> = Vec::with_capacity(self.letters.len());
        for (e, t) in self.letters.drain(..) {
            if let Some((last, lt)) = out.last_mut() {
                if *lt == t && mergeable.contains(&t) {
                    *last = last.op(&e);
                    continue;
                }
            }
            out.push((e, t));
        }
        out.retain(|(e, t)| !(mergeable.contains(t) && *e == e.identity_like()));
        // merging may have created new neighbours after removals
        let again = out.windows(2).any(|w| w[0].1 == w[1].1 && mergeable.contains(&w[0].1));
        self.letters = out;
        if again {
            self.simplify(mergeable);
        }
    }
}
