//! Trivectors in the third exterior power of a 9-dimensional space.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use thiserror::Error;

use crate::field::Mat;
use crate::scalar::{CycScalar, Cursor, ScalarError};

pub const NTRIPLES: usize = 84;

/// Sorted index triples (1-based), lexicographic order.
pub fn triples() -> &'static [[usize; 3]; NTRIPLES] {
    static T: OnceLock<[[usize; 3]; NTRIPLES]> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = [[0; 3]; NTRIPLES];
        let mut n = 0;
        for i in 1..=9 {
            for j in i + 1..=9 {
                for k in j + 1..=9 {
                    out[n] = [i, j, k];
                    n += 1;
                }
            }
        }
        out
    })
}

/// Position of a strictly increasing triple.
pub fn triple_index(i: usize, j: usize, k: usize) -> usize {
    static IDX: OnceLock<Vec<usize>> = OnceLock::new();
    let tab = IDX.get_or_init(|| {
        let mut t = vec![usize::MAX; 1000];
        for (n, [a, b, c]) in triples().iter().enumerate() {
            t[a * 100 + b * 10 + c] = n;
        }
        t
    });
    tab[i * 100 + j * 10 + k]
}

/// Sort three distinct indices, returning the sign of the permutation.
pub fn sort_triple(mut t: [usize; 3]) -> Option<(i64, [usize; 3])> {
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return None;
    }
    let mut sign = 1;
    for a in 0..2 {
        for b in 0..2 - a {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some((sign, t))
}

fn pair_index(a: usize, b: usize) -> usize {
    // 1-based a < b, lexicographic over 36 pairs
    let mut n = 0;
    for i in 1..a {
        n += 9 - i;
    }
    n + (b - a - 1)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrivectorError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("repeated index in e{0}{1}{2} at position {3}")]
    RepeatedIndex(usize, usize, usize, usize),
    #[error("index 0 is not allowed (position {0})")]
    ZeroIndex(usize),
    #[error("singular matrix")]
    Singular,
}

/// An element of the third exterior power, as 84 coefficients on e_ijk with i<j<k.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Trivector {
    pub coeffs: Vec<CycScalar>,
}

impl Trivector {
    pub fn zero() -> Self {
        Trivector {
            coeffs: vec![CycScalar::zero(); NTRIPLES],
        }
    }

    /// e_i ^ e_j ^ e_k for distinct 1-based indices, sign-normalized.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut t = Trivector::zero();
        let (s, [a, b, c]) = sort_triple([i, j, k]).expect("distinct indices");
        t.coeffs[triple_index(a, b, c)] = CycScalar::from_i64(s);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> CycScalar {
        match sort_triple([i, j, k]) {
            Some((s, [a, b, c])) => &self.coeffs[triple_index(a, b, c)] * &CycScalar::from_i64(s),
            None => CycScalar::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Trivector {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Trivector {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Trivector {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Trivector {
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &CycScalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn parse(text: &str) -> Result<Self, TrivectorError> {
        parse_trivector(text)
    }

    /// The 9x36 flattening: row m holds the contraction of e_m^* with t.
    pub fn flattening(&self) -> Mat<CycScalar> {
        let mut m = Mat::zeros(9, 36);
        for (n, c) in self.support() {
            let [i, j, k] = triples()[n];
            // iota_phi(e_ijk) = phi(e_i) e_jk - phi(e_j) e_ik + phi(e_k) e_ij
            let upd = |m: &mut Mat<CycScalar>, row: usize, a: usize, b: usize, neg: bool| {
                let idx = pair_index(a, b);
                let v = if neg { m.get(row - 1, idx) - c } else { m.get(row - 1, idx) + c };
                m.set(row - 1, idx, v);
            };
            upd(&mut m, i, j, k, false);
            upd(&mut m, j, i, k, true);
            upd(&mut m, k, i, j, false);
        }
        m
    }
}

impl Default for Trivector {
    fn default() -> Self {
        Trivector::zero()
    }
}

/// Rank: the minimal dimension of a subspace U with t in the third power of U.
pub fn rank(t: &Trivector) -> usize {
    if t.is_zero() {
        return 0;
    }
    t.flattening().rank()
}

/// Third compound matrix of g: the action of g on the 84 basis trivectors.
pub fn compound3(g: &Mat<CycScalar>) -> Mat<CycScalar> {
    assert_eq!((g.rows, g.cols), (9, 9));
    let tr = triples();
    let mut out = Mat::zeros(NTRIPLES, NTRIPLES);
    for (col, [i, j, k]) in tr.iter().enumerate() {
        for (row, [a, b, c]) in tr.iter().enumerate() {
            let m = |r: usize, s: usize| g.get(r - 1, s - 1);
            let d = &(&(m(*a, *i) * &(m(*b, *j) * m(*c, *k) - m(*b, *k) * m(*c, *j)))
                - &(m(*a, *j) * &(m(*b, *i) * m(*c, *k) - m(*b, *k) * m(*c, *i))))
                + &(m(*a, *k) * &(m(*b, *i) * m(*c, *j) - m(*b, *j) * m(*c, *i)));
            if !d.is_zero() {
                out.set(row, col, d);
            }
        }
    }
    out
}

/// Apply an invertible 9x9 matrix: e_i^e_j^e_k -> g e_i ^ g e_j ^ g e_k.
pub fn wedge_action(g: &Mat<CycScalar>, t: &Trivector) -> Result<Trivector, TrivectorError> {
    if g.det().is_zero() {
        return Err(TrivectorError::Singular);
    }
    Ok(wedge_action_unchecked(g, t))
}

/// Wedge action without the invertibility check.
pub fn wedge_action_unchecked(g: &Mat<CycScalar>, t: &Trivector) -> Trivector {
    let tr = triples();
    let mut out = Trivector::zero();
    let m = |r: usize, s: usize| g.get(r - 1, s - 1);
    for (n, c) in t.support() {
        let [i, j, k] = tr[n];
        for (row, [a, b, cc]) in tr.iter().enumerate() {
            let d = &(&(m(*a, i) * &(m(*b, j) * m(*cc, k) - m(*b, k) * m(*cc, j)))
                - &(m(*a, j) * &(m(*b, i) * m(*cc, k) - m(*b, k) * m(*cc, i))))
                + &(m(*a, k) * &(m(*b, i) * m(*cc, j) - m(*b, j) * m(*cc, i)));
            if !d.is_zero() {
                out.coeffs[row] = &out.coeffs[row] + &(&d * c);
            }
        }
    }
    out
}

/// Leibniz action of a 9x9 matrix (the derivative of the wedge action).
pub fn inf_action(x: &Mat<CycScalar>, t: &Trivector) -> Trivector {
    assert_eq!((x.rows, x.cols), (9, 9));
    let tr = triples();
    let mut out = Trivector::zero();
    for (n, c) in t.support() {
        let idx = tr[n];
        for slot in 0..3 {
            let src = idx[slot];
            for dst in 1..=9 {
                let a = x.get(dst - 1, src - 1);
                if a.is_zero() {
                    continue;
                }
                let mut t2 = idx;
                t2[slot] = dst;
                if let Some((s, [p, q, r])) = sort_triple(t2) {
                    let k = triple_index(p, q, r);
                    let v = &(a * c) * &CycScalar::from_i64(s);
                    out.coeffs[k] = &out.coeffs[k] + &v;
                }
            }
        }
    }
    out
}

impl fmt::Display for Trivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (n, c) in self.support() {
            let [i, j, k] = triples()[n];
            let (neg, mag) = split_sign(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                if mag.display_terms() > 1 {
                    out.push_str(&format!("({})*", mag));
                } else {
                    out.push_str(&format!("{}*", mag));
                }
            }
            out.push_str(&format!("e{}{}{}", i, j, k));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Trivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// leading display coefficient decides the printed sign
fn split_sign(c: &CycScalar) -> (bool, CycScalar) {
    use num_traits::Signed;
    let d = c.display_coords();
    let lead = d.iter().find(|q| !q.is_zero());
    match lead {
        Some(q) if q.is_negative() => (true, -c),
        _ => (false, c.clone()),
    }
}

/// Parse expressions such as `e123 + e456 - 1/2*e789` or `(1+i)*e129`.
pub fn parse_trivector(text: &str) -> Result<Trivector, TrivectorError> {
    let mut cur = Cursor::new(text);
    let mut out = Trivector::zero();
    if cur.peek() == Some(b'0') && cur.peek_at(1).is_none() {
        return Ok(out);
    }
    let mut first = true;
    loop {
        let mut sign = CycScalar::one();
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -sign;
            }
            None if !first => break,
            _ if first => {}
            _ => return Err(cur.err("expected '+' or '-'").into()),
        }
        first = false;
        let coef = if cur.at_basis_symbol() {
            CycScalar::one()
        } else {
            let c = cur.term()?;
            if cur.peek() != Some(b'*') {
                return Err(cur.err("expected '*' before basis trivector").into());
            }
            cur.pos += 1;
            c
        };
        if !cur.at_basis_symbol() {
            return Err(cur.err("expected e<digit><digit><digit>").into());
        }
        cur.skip_ws();
        let start = cur.pos;
        cur.pos += 1;
        let mut digits = Vec::new();
        while cur.pos < cur.s.len() && cur.s[cur.pos].is_ascii_digit() {
            digits.push((cur.s[cur.pos] - b'0') as usize);
            cur.pos += 1;
        }
        if digits.len() != 3 {
            return Err(ScalarError::Syntax {
                pos: start,
                msg: "a basis trivector needs exactly three digits".into(),
            }
            .into());
        }
        if digits.contains(&0) {
            return Err(TrivectorError::ZeroIndex(start));
        }
        let Some((s, [a, b, c])) = sort_triple([digits[0], digits[1], digits[2]]) else {
            return Err(TrivectorError::RepeatedIndex(digits[0], digits[1], digits[2], start));
        };
        let k = triple_index(a, b, c);
        let v = &(&sign * &coef) * &CycScalar::from_i64(s);
        out.coeffs[k] = &out.coeffs[k] + &v;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}
