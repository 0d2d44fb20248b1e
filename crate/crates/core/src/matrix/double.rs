//! `SL(8d,q)` words over `Γ = SL(E0) × SL(E1)`, the stabiliser of the two
//! halves of the basis, plus a few fixed connectives.

use alloc::string::String;
use alloc::vec::Vec;

use super::bruhat::bruhat_decompose;
use super::step::signed_perm;
use super::Mat;
use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::perm::uni::Uni2;
use crate::perm::Perm;
use crate::witness::{Tag, Witness};

/// Invertible matrices with `s = X·J_r·Y`, `J_r = diag(1,..,1,0,..)`.
fn rank_normal_form(s: &Mat) -> (Mat, usize, Mat) {
    let f = s.field().clone();
    let d = s.dim();
    let mut m = s.clone();
    let mut l = Mat::identity(&f, d);
    let mut r = Mat::identity(&f, d);
    let swap_rows = |m: &mut Mat, a: usize, b: usize| {
        for j in 0..d {
            let (x, y) = (m.get(a, j), m.get(b, j));
            m.set(a, j, y);
            m.set(b, j, x);
        }
    };
    let swap_cols = |m: &mut Mat, a: usize, b: usize| {
        for i in 0..d {
            let (x, y) = (m.get(i, a), m.get(i, b));
            m.set(i, a, y);
            m.set(i, b, x);
        }
    };
    let mut k = 0;
    while k < d {
        let Some((pi, pj)) = (k..d).flat_map(|i| (k..d).map(move |j| (i, j))).find(|&(i, j)| m.get(i, j) != 0)
        else {
            break;
        };
        swap_rows(&mut m, k, pi);
        swap_rows(&mut l, k, pi);
        swap_cols(&mut m, k, pj);
        swap_cols(&mut r, k, pj);
        let inv = f.inv_nz(m.get(k, k));
        for j in 0..d {
            m.set(k, j, f.mul(inv, m.get(k, j)));
            l.set(k, j, f.mul(inv, l.get(k, j)));
        }
        for i in 0..d {
            let t = m.get(i, k);
            if i != k && t != 0 {
                for j in 0..d {
                    let v = f.sub(m.get(i, j), f.mul(t, m.get(k, j)));
                    m.set(i, j, v);
                    let v = f.sub(l.get(i, j), f.mul(t, l.get(k, j)));
                    l.set(i, j, v);
                }
            }
        }
        for j in 0..d {
            let t = m.get(k, j);
            if j != k && t != 0 {
                for i in 0..d {
                    let v = f.sub(m.get(i, j), f.mul(t, m.get(i, k)));
                    m.set(i, j, v);
                    let v = f.sub(r.get(i, j), f.mul(t, r.get(i, k)));
                    r.set(i, j, v);
                }
            }
        }
        k += 1;
    }
    // l·s·r = J_k
    (l.inv(), k, r.inv())
}

/// Companion matrix of `x^d + a·x + 1` (ones on the superdiagonal).
fn companion(f: &Field, d: usize, a: Elt) -> Mat {
    let mut m = Mat::zero(f, d);
    for i in 0..d - 1 {
        m.set(i, i + 1, 1);
    }
    m.set(d - 1, 0, f.minus_one());
    if d > 1 {
        let v = f.add(m.get(d - 1, 1), f.neg(a));
        m.set(d - 1, 1, v);
    }
    m
}

/// `s = s1 + s2` with both summands invertible.
pub fn split_nonsingular(s: &Mat) -> Result<(Mat, Mat)> {
    let f = s.field().clone();
    let d = s.dim();
    let id = Mat::identity(&f, d);
    if s.entries().iter().all(|&x| x == 0) {
        return Ok((id.clone(), id.neg()));
    }
    if d == 1 {
        let x = s.get(0, 0);
        let a = f.nonzero().find(|&a| a != x).ok_or(Error::NoSplit)?;
        return Ok((Mat::diag(&f, &[a]), Mat::diag(&f, &[f.sub(x, a)])));
    }
    let (p, r, q) = rank_normal_form(s);
    if r < d {
        // J_r + Z and -Z are invertible for the cyclic shift Z
        let mut z = Mat::zero(&f, d);
        for i in 0..d {
            z.set(i, (i + 1) % d, 1);
        }
        let mut j = Mat::zero(&f, d);
        for i in 0..r {
            j.set(i, i, 1);
        }
        let s1 = p.mul(&j.add(&z)).mul(&q);
        let s2 = p.mul(&z.neg()).mul(&q);
        return Ok((s1, s2));
    }
    // 1 is not a root of x^d + a x + 1, so I - A is invertible
    let a = if f.p() == 2 { 1 } else { 0 };
    let pa = p.mul(&companion(&f, d, a)).mul(&q);
    Ok((s.sub(&pa), pa))
}

/// Name of the unipotent connective `[[I, J_i], [0, I]]`.
pub fn xj_name(i: usize) -> String {
    alloc::format!("xj{i}")
}

/// The fixed elements a double witness may use besides Γ.
#[derive(Clone, Debug)]
pub struct DoubleConnectives {
    /// `[[I, J_i],[0, I]]` for i = 1..4
    pub xj: [Mat; 4],
    /// signed transposition of basis vectors 2 and 4d+1 (1-indexed)
    pub pi: Mat,
    /// permutation matrix of the uni2 connective
    pub theta: Mat,
}

impl DoubleConnectives {
    pub fn new(f: &Field, d: usize) -> DoubleConnectives {
        let n = 8 * d;
        let h = 4 * d;
        let b = 2 * d;
        let xj = core::array::from_fn(|k| {
            let mut m = Mat::identity(f, n);
            for i in 0..b {
                let (r, c) = match k {
                    0 => (i, i),
                    1 => (b + i, b + i),
                    2 => (i, b + i),
                    _ => (b + i, i),
                };
                m.set(r, h + c, 1);
            }
            m
        });
        let pi = signed_perm(f, &Perm::from_cycles(n, &[&[1, h]]).unwrap());
        let theta = Mat::perm(f, &crate::perm::uni::uni2_theta(d));
        DoubleConnectives { xj, pi, theta }
    }

    pub fn get(&self, name: &str) -> Option<&Mat> {
        match name {
            "xj1" => Some(&self.xj[0]),
            "xj2" => Some(&self.xj[1]),
            "xj3" => Some(&self.xj[2]),
            "xj4" => Some(&self.xj[3]),
            "pi" => Some(&self.pi),
            "theta" => Some(&self.theta),
            _ => None,
        }
    }

    /// Letter predicate: Γ membership or equality with a named connective.
    pub fn letter_ok(&self, m: &Mat, t: &Tag) -> bool {
        match t {
            Tag::Gamma => in_gamma(m),
            Tag::Conn { name, inverse } => match self.get(name) {
                Some(c) if *inverse => *m == c.inv(),
                Some(c) => m == c,
                None => false,
            },
            _ => false,
        }
    }
}

/// Block diagonal for the two halves, each block of determinant 1.
pub fn in_gamma(m: &Mat) -> bool {
    let h = m.dim() / 2;
    let off = (0..h).all(|i| (h..2 * h).all(|j| m.get(i, j) == 0 && m.get(j, i) == 0));
    off && m.block(0, 0, h).det() == 1 && m.block(h, h, h).det() == 1
}

/// Factors elements of `SL(8d, q)`.
pub struct DoubleFactor {
    d: usize,
    f: Field,
    conn: DoubleConnectives,
    uni2: Uni2,
}

impl DoubleFactor {
    pub fn new(f: &Field, d: usize) -> Result<DoubleFactor> {
        if d == 0 {
            return Err(Error::DimensionTooSmall(0));
        }
        Ok(DoubleFactor { d, f: f.clone(), conn: DoubleConnectives::new(f, d), uni2: Uni2::new(d)? })
    }

    pub fn connectives(&self) -> &DoubleConnectives {
        &self.conn
    }

    fn gamma(&self, a: &Mat, b: &Mat) -> Mat {
        a.direct_sum(b)
    }

    /// `[[I, S],[0, I]]` as eight conjugates of the `xj` connectives.
    fn push_translation(&self, w: &mut Vec<(Mat, Tag)>, s: &Mat) -> Result<()> {
        let f = &self.f;
        let b = 2 * self.d;
        let id_h = Mat::identity(f, 4 * self.d);
        let blocks = [s.block(0, 0, b), s.block(0, b, b), s.block(b, 0, b), s.block(b, b, b)];
        let mut split: Vec<(Mat, Mat)> = Vec::new();
        for blk in &blocks {
            split.push(split_nonsingular(blk)?);
        }
        for round in 0..2 {
            let pick = |i: usize| if round == 0 { &split[i].0 } else { &split[i].1 };
            let (b1, b2, b3, b4) = (pick(0), pick(1), pick(2), pick(3));
            let cs = [
                (b1.direct_sum(&b1.inv()), 1),
                (b4.inv().direct_sum(b4), 2),
                (b2.direct_sum(&b2.inv()), 3),
                (b3.inv().direct_sum(b3), 4),
            ];
            for (c, i) in cs {
                w.push((self.gamma(&c, &id_h), Tag::Gamma));
                w.push((self.conn.xj[i - 1].clone(), Tag::conn(&xj_name(i))));
                w.push((self.gamma(&c.inv(), &id_h), Tag::Gamma));
            }
        }
        Ok(())
    }

    fn push_unipotent(&self, w: &mut Vec<(Mat, Tag)>, u: &Mat) -> Result<()> {
        let h = 4 * self.d;
        let u0 = u.block(0, 0, h);
        let u1 = u.block(h, h, h);
        let s = u0.inv().mul(&u.block(0, h, h));
        w.push((self.gamma(&u0, &u1), Tag::Gamma));
        self.push_translation(w, &s)
    }

    /// Diagonal of determinant 1 as `G·π·K_μ·π⁻¹`.
    fn push_diagonal(&self, w: &mut Vec<(Mat, Tag)>, dm: &Mat) {
        let f = &self.f;
        let n = 8 * self.d;
        let h = 4 * self.d;
        let mu = (0..h).fold(1, |acc, i| f.mul(acc, dm.get(i, i)));
        let mut g: Vec<Elt> = (0..n).map(|i| dm.get(i, i)).collect();
        g[0] = f.mul(g[0], f.inv_nz(mu));
        g[h] = f.mul(g[h], mu);
        w.push((Mat::diag(f, &g), Tag::Gamma));
        if mu != 1 {
            let mut k = alloc::vec![1; n];
            k[0] = mu;
            k[1] = f.inv_nz(mu);
            w.push((self.conn.pi.clone(), Tag::conn("pi")));
            w.push((Mat::diag(f, &k), Tag::Gamma));
            w.push((self.conn.pi.inv(), Tag::conn_inv("pi")));
        }
    }

    /// Signed permutation matrix of determinant 1 via the uni2 word.
    fn push_weyl(&self, w: &mut Vec<(Mat, Tag)>, wm: &Mat, sigma: &Perm) -> Result<()> {
        let f = &self.f;
        let n = 8 * self.d;
        let (even, fix) = if sigma.is_even() {
            (sigma.clone(), None)
        } else {
            let tau = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
            (sigma.mul(&tau), Some(signed_perm(f, &tau)))
        };
        let uw = self.uni2.factor(&even)?;
        let mut acc = Mat::identity(f, n);
        for (p, t) in &uw.letters {
            let m = Mat::perm(f, p);
            acc = acc.mul(&m);
            match t {
                Tag::Theta => w.push((m, Tag::conn("theta"))),
                _ => w.push((m, Tag::Gamma)),
            }
        }
        if let Some(r) = fix {
            acc = acc.mul(&r);
            w.push((r, Tag::Gamma));
        }
        let rest = acc.inv().mul(wm);
        self.push_diagonal(w, &rest);
        Ok(())
    }

    pub fn factor(&self, phi: &Mat) -> Result<Witness<Mat>> {
        let f = &self.f;
        let n = 8 * self.d;
        if phi.dim() != n {
            return Err(Error::DimensionMismatch(phi.dim(), n));
        }
        if phi.field() != f {
            return Err(Error::FieldMismatch);
        }
        if phi.det() != 1 {
            return Err(Error::NotSpecial);
        }
        let mut out = Witness::new(phi.clone());
        if phi.is_identity() {
            return Ok(out);
        }
        if in_gamma(phi) {
            out.push(phi.clone(), Tag::Gamma);
            return Ok(out);
        }
        let br = bruhat_decompose(phi)?;
        let mut sfix = alloc::vec![1; n];
        if !br.sigma.is_even() {
            sfix[0] = f.minus_one();
        }
        let sfix = Mat::diag(f, &sfix);
        let wm = br.w.mul(&sfix);
        let b2 = sfix.mul(&br.b2);
        let diag_of = |m: &Mat| Mat::diag(f, &(0..n).map(|i| m.get(i, i)).collect::<Vec<_>>());
        let h1 = diag_of(&br.b1);
        let u1 = h1.inv().mul(&br.b1);
        let h2 = diag_of(&b2);
        let u2 = h2.inv().mul(&b2);
        let h2c = wm.mul(&h2).mul(&wm.inv());
        let u1c = h2c.inv().mul(&u1).mul(&h2c);
        let hh = h1.mul(&h2c);
        let mut letters = Vec::new();
        self.push_diagonal(&mut letters, &hh);
        self.push_unipotent(&mut letters, &u1c)?;
        self.push_weyl(&mut letters, &wm, &br.sigma)?;
        self.push_unipotent(&mut letters, &u2)?;
        out.letters = letters;
        out.simplify(&[Tag::Gamma]);
        debug_assert!(out.multiplies_back());
        Ok(out)
    }
}

/// One-shot wrapper around [`DoubleFactor`].
pub fn sl_double_factor(phi: &Mat) -> Result<Witness<Mat>> {
    if !phi.dim().is_multiple_of(8) || phi.dim() == 0 {
        return Err(Error::DimensionTooSmall(phi.dim()));
    }
    DoubleFactor::new(phi.field(), phi.dim() / 8)?.factor(phi)
}
