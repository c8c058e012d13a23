//! Built-in tables and the harness that re-checks them.
//!
//! Three data files are embedded: the semisimple families p^{k,j} with their
//! conditions and parameter groups, one record per row of the mixed-element
//! tables, and the matrices and trivectors of the worked examples.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cartan::{self, CVec};
use crate::classify;
use crate::e8::algebra;
use crate::field::Mat;
use crate::realform::{self, RealFormData};
use crate::scalar::{parse_scalar, CycScalar};
use crate::trivector::{self, parse_trivector, Trivector};

pub const FAMILIES_TXT: &str = include_str!("../data/families.txt");
pub const MIXED_TABLES_TXT: &str = include_str!("../data/mixed_tables.txt");
pub const EXAMPLES_TXT: &str = include_str!("../data/examples.txt");
pub const ORBITREPS_SAMPLE_TXT: &str = include_str!("../data/orbitreps_sample.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate record {id}")]
    Duplicate { line: usize, id: String },
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("family {tag} takes {expected} parameters, got {got}")]
    Arity { tag: FamilyTag, expected: usize, got: usize },
    #[error("expression: {0}")]
    Expr(String),
    #[error("{0}")]
    Io(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Parse { line, msg: msg.into() }
}

// ---------------------------------------------------------------------------
// Polynomial expressions in the parameters l1, l2, ...

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(CycScalar),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> CatalogError {
        CatalogError::Expr(format!("{msg} at position {}", self.pos))
    }

    fn sum(&mut self) -> Result<Expr, CatalogError> {
        let mut e = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.product()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    e = Expr::Add(Box::new(e), Box::new(self.product()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    e = Expr::Sub(Box::new(e), Box::new(self.product()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, CatalogError> {
        let mut e = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    e = Expr::Mul(Box::new(e), Box::new(self.power()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    e = Expr::Div(Box::new(e), Box::new(self.power()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn power(&mut self) -> Result<Expr, CatalogError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.natural()?;
            let n = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<u64, CatalogError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected a number"))
    }

    fn atom(&mut self) -> Result<Expr, CatalogError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let n = i64::try_from(n).map_err(|_| self.err("number too large"))?;
                Ok(Expr::Const(CycScalar::from_i64(n)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let sym = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match sym {
                    "i" => Ok(Expr::Const(CycScalar::i())),
                    "r3" => Ok(Expr::Const(CycScalar::sqrt3())),
                    "z3" => Ok(Expr::Const(CycScalar::zeta3())),
                    _ => match sym.strip_prefix('l').and_then(|d| d.parse::<usize>().ok()) {
                        Some(k) if k >= 1 => Ok(Expr::Var(k - 1)),
                        _ => Err(CatalogError::Expr(format!("unknown symbol {sym}"))),
                    },
                }
            }
            Some(_) => Err(self.err("expected a factor")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, CatalogError> {
        let mut p = ExprParser { s: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, vars: &[CycScalar]) -> Result<CycScalar, CatalogError> {
        Ok(match self {
            Expr::Const(c) => c.clone(),
            Expr::Var(k) => vars.get(*k).cloned().ok_or_else(|| CatalogError::Expr(format!("l{} is not bound", k + 1)))?,
            Expr::Neg(a) => -a.eval(vars)?,
            Expr::Add(a, b) => &a.eval(vars)? + &b.eval(vars)?,
            Expr::Sub(a, b) => &a.eval(vars)? - &b.eval(vars)?,
            Expr::Mul(a, b) => &a.eval(vars)? * &b.eval(vars)?,
            Expr::Div(a, b) => a.eval(vars)?.checked_div(&b.eval(vars)?).map_err(|e| CatalogError::Expr(e.to_string()))?,
            Expr::Pow(a, n) => a.eval(vars)?.pow(*n),
        })
    }

    /// One more than the largest parameter index used.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(k) => k + 1,
            Expr::Neg(a) | Expr::Pow(a, _) => a.arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.arity().max(b.arity()),
        }
    }
}

// ---------------------------------------------------------------------------
// Semisimple families

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyTag {
    pub k: u8,
    pub j: u8,
}

impl FamilyTag {
    pub fn new(k: u8, j: u8) -> Self {
        FamilyTag { k, j }
    }

    pub fn is_canonical(self) -> bool {
        self.j == 1
    }

    pub fn canonical(self) -> FamilyTag {
        FamilyTag { k: self.k, j: 1 }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.k, self.j)
    }
}

impl FromStr for FamilyTag {
    type Err = CatalogError;

    /// Accepts `k_j`, `k,j` and `pk_j`.
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let t = s.trim().trim_start_matches('p');
        let (a, b) = t.split_once(['_', ',']).ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))?;
        match (a.trim().parse(), b.trim().parse()) {
            (Ok(k), Ok(j)) => Ok(FamilyTag { k, j }),
            _ => Err(CatalogError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub tag: FamilyTag,
    pub params: usize,
    pub terms: Vec<(Expr, Trivector)>,
    /// Nonvanishing conditions as used here.
    pub conditions: Vec<Expr>,
    /// Conditions as printed in the source tables, where they differ.
    pub stated: Vec<Expr>,
    pub cartan: Option<[Expr; 4]>,
    pub complex: Option<[Expr; 4]>,
    pub real: Option<[Expr; 4]>,
    pub generators: Vec<Mat<CycScalar>>,
    pub order: usize,
    pub bad: Vec<Vec<CycScalar>>,
}

fn check_arity(tag: FamilyTag, expected: usize, l: &[CycScalar]) -> Result<(), CatalogError> {
    if l.len() != expected {
        return Err(CatalogError::Arity { tag, expected, got: l.len() });
    }
    Ok(())
}

fn eval_cvec(e: &[Expr; 4], l: &[CycScalar]) -> Result<CVec, CatalogError> {
    Ok([e[0].eval(l)?, e[1].eval(l)?, e[2].eval(l)?, e[3].eval(l)?])
}

impl Family {
    /// The element p^{k,j} at the parameter point l.
    pub fn element(&self, l: &[CycScalar]) -> Result<Trivector, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        let mut out = Trivector::zero();
        for (c, t) in &self.terms {
            out = out.add(&t.scale(&c.eval(l)?));
        }
        Ok(out)
    }

    fn all_nonzero(&self, conds: &[Expr], l: &[CycScalar]) -> Result<bool, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        for c in conds {
            if c.eval(l)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn admissible(&self, l: &[CycScalar]) -> Result<bool, CatalogError> {
        self.all_nonzero(&self.conditions, l)
    }

    /// The conditions as printed; differs from `admissible` only for the
    /// families whose printed conditions were corrected.
    pub fn admissible_as_stated(&self, l: &[CycScalar]) -> Result<bool, CatalogError> {
        if self.stated.is_empty() {
            return self.admissible(l);
        }
        self.all_nonzero(&self.stated, l)
    }

    pub fn cartan_point(&self, l: &[CycScalar]) -> Result<Option<CVec>, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        self.cartan.as_ref().map(|e| eval_cvec(e, l)).transpose()
    }

    /// Coordinates in C of an SL(9,C)-conjugate.
    pub fn complex_point(&self, l: &[CycScalar]) -> Result<Option<CVec>, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        match &self.complex {
            Some(e) => Ok(Some(eval_cvec(e, l)?)),
            None => self.cartan_point(l),
        }
    }

    /// Coordinates in C of an SL(9,R)-conjugate.
    pub fn real_point(&self, l: &[CycScalar]) -> Result<Option<CVec>, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        match &self.real {
            Some(e) => Ok(Some(eval_cvec(e, l)?)),
            None => self.cartan_point(l),
        }
    }

    /// All elements of the finite group acting on parameters.
    pub fn group(&self) -> Vec<Mat<CycScalar>> {
        let m = self.params;
        let key = |g: &Mat<CycScalar>| g.data.clone();
        let mut seen: HashSet<Vec<CycScalar>> = HashSet::new();
        let id = Mat::identity(m);
        seen.insert(key(&id));
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = out[i].mul(g);
                if seen.insert(key(&h)) {
                    out.push(h);
                }
            }
            i += 1;
        }
        out
    }

    pub fn act(g: &Mat<CycScalar>, l: &[CycScalar]) -> Vec<CycScalar> {
        g.mul_vec(l)
    }

    /// Whether two parameter points give the same real orbit, by scanning the group.
    pub fn same_orbit(&self, l: &[CycScalar], m: &[CycScalar]) -> Result<bool, CatalogError> {
        check_arity(self.tag, self.params, l)?;
        check_arity(self.tag, self.params, m)?;
        Ok(self.group().iter().any(|g| Self::act(g, l) == m))
    }

    /// Deterministic admissible integer points with entries in -9..=9.
    pub fn sample_points(&self, n: usize) -> Vec<Vec<CycScalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 * self.tag.k as u64 + self.tag.j as u64);
        let mut out: Vec<Vec<CycScalar>> = Vec::new();
        for _ in 0..10_000 {
            if out.len() == n {
                break;
            }
            let l: Vec<CycScalar> = (0..self.params)
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=9);
                    CycScalar::from_i64(if rng.gen_bool(0.5) { v } else { -v })
                })
                .collect();
            if self.admissible(&l).unwrap_or(false) && !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }
}

fn parse_int_matrix(text: &str, line: usize) -> Result<Mat<CycScalar>, CatalogError> {
    let t = text.trim();
    let inner = t
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or_else(|| parse_err(line, format!("bad matrix {t}")))?;
    let mut rows = Vec::new();
    for r in inner.split("],[") {
        let row: Result<Vec<CycScalar>, _> = r.split(',').map(|x| parse_scalar(x.trim())).collect();
        rows.push(row.map_err(|e| parse_err(line, e.to_string()))?);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(line, "matrix is not square"));
    }
    Ok(Mat::from_rows(rows))
}

fn parse_cvec_exprs(text: &str, line: usize) -> Result<[Expr; 4], CatalogError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(parse_err(line, "expected four coordinates"));
    }
    let e: Result<Vec<Expr>, _> = parts.iter().map(|p| Expr::parse(p)).collect();
    let e = e.map_err(|err| parse_err(line, err.to_string()))?;
    Ok([e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()])
}

/// Parse the families file format.
pub fn parse_families(text: &str) -> Result<Vec<Family>, CatalogError> {
    let mut out: Vec<Family> = Vec::new();
    let mut cur: Option<Family> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        if key == "family" {
            if cur.is_some() {
                return Err(parse_err(line, "family block not closed"));
            }
            cur = Some(Family {
                tag: rest.parse()?,
                params: 0,
                terms: Vec::new(),
                conditions: Vec::new(),
                stated: Vec::new(),
                cartan: None,
                complex: None,
                real: None,
                generators: Vec::new(),
                order: 0,
                bad: Vec::new(),
            });
            continue;
        }
        let fam = cur.as_mut().ok_or_else(|| parse_err(line, "line outside a family block"))?;
        let expr = |s: &str| Expr::parse(s).map_err(|e| parse_err(line, e.to_string()));
        match key {
            "params" => fam.params = rest.parse().map_err(|_| parse_err(line, "bad parameter count"))?,
            "term" => {
                let (c, t) = rest.split_once(':').ok_or_else(|| parse_err(line, "term needs ':'"))?;
                let t = t.trim();
                let tv = match t.strip_prefix('p').and_then(|d| d.parse::<usize>().ok()) {
                    Some(k @ 1..=4) => parse_trivector(cartan::P_TEXT[k - 1]),
                    _ => parse_trivector(t),
                };
                fam.terms.push((expr(c)?, tv.map_err(|e| parse_err(line, e.to_string()))?));
            }
            "cond" => fam.conditions.push(expr(rest)?),
            "stated" => fam.stated.push(expr(rest)?),
            "cartan" => fam.cartan = Some(parse_cvec_exprs(rest, line)?),
            "complex" => fam.complex = Some(parse_cvec_exprs(rest, line)?),
            "real" => fam.real = Some(parse_cvec_exprs(rest, line)?),
            "group" => {
                for m in rest.split(';') {
                    fam.generators.push(parse_int_matrix(m, line)?);
                }
            }
            "order" => fam.order = rest.parse().map_err(|_| parse_err(line, "bad order"))?,
            "bad" => {
                let v: Result<Vec<CycScalar>, _> = rest.split(',').map(|x| parse_scalar(x.trim())).collect();
                fam.bad.push(v.map_err(|e| parse_err(line, e.to_string()))?);
            }
            "end" => {
                let fam = cur.take().unwrap();
                let used = fam
                    .terms
                    .iter()
                    .map(|(e, _)| e.arity())
                    .chain(fam.conditions.iter().map(Expr::arity))
                    .max()
                    .unwrap_or(0);
                if used > fam.params || fam.bad.iter().any(|b| b.len() != fam.params) {
                    return Err(parse_err(line, format!("family {}: parameter count mismatch", fam.tag)));
                }
                if fam.generators.iter().any(|g| g.rows != fam.params) {
                    return Err(parse_err(line, format!("family {}: group acts on the wrong dimension", fam.tag)));
                }
                if out.iter().any(|f| f.tag == fam.tag) {
                    return Err(parse_err(line, format!("duplicate family {}", fam.tag)));
                }
                out.push(fam);
            }
            _ => return Err(parse_err(line, format!("unknown key {key}"))),
        }
    }
    if cur.is_some() {
        return Err(parse_err(text.lines().count(), "unterminated family block"));
    }
    Ok(out)
}

pub fn families() -> &'static [Family] {
    static F: OnceLock<Vec<Family>> = OnceLock::new();
    F.get_or_init(|| parse_families(FAMILIES_TXT).expect("embedded families parse"))
}

pub fn family(tag: FamilyTag) -> Option<&'static Family> {
    families().iter().find(|f| f.tag == tag)
}

/// The condition check for the canonical set F_k.
pub fn family_conditions(k: usize, params: &[CycScalar]) -> Result<bool, CatalogError> {
    let tag = FamilyTag::new(k as u8, 1);
    match family(tag) {
        Some(f) => f.admissible(params),
        // F_7 is the single point 0
        None if k == 7 => Ok(params.is_empty()),
        None => Err(CatalogError::UnknownFamily(tag.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Centralizer types

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    Sl3C,
    Sl2C,
    Sl3R,
    Su12,
    Su3,
    Sl2R,
    Su2,
    T,
    U,
}

impl Summand {
    pub const ALL: [Summand; 9] = [
        Summand::Sl3C,
        Summand::Sl2C,
        Summand::Sl3R,
        Summand::Su12,
        Summand::Su3,
        Summand::Sl2R,
        Summand::Su2,
        Summand::T,
        Summand::U,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Summand::T => "t",
            Summand::U => "u",
            Summand::Sl2R => "sl2R",
            Summand::Su2 => "su2",
            Summand::Sl3R => "sl3R",
            Summand::Su12 => "su12",
            Summand::Su3 => "su3",
            Summand::Sl2C => "sl2C",
            Summand::Sl3C => "sl3C",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Summand::T | Summand::U => 1,
            Summand::Sl2R | Summand::Su2 => 3,
            Summand::Sl3R | Summand::Su12 | Summand::Su3 => 8,
            Summand::Sl2C => 6,
            Summand::Sl3C => 16,
        }
    }

    /// Killing signature (positive, negative) of a semisimple summand.
    pub fn signature(self) -> (usize, usize) {
        match self {
            Summand::T => (1, 0),
            Summand::U => (0, 1),
            Summand::Sl2R => (2, 1),
            Summand::Su2 => (0, 3),
            Summand::Sl3R => (5, 3),
            Summand::Su12 => (4, 4),
            Summand::Su3 => (0, 8),
            Summand::Sl2C => (3, 3),
            Summand::Sl3C => (8, 8),
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Summand::Sl2C | Summand::Sl3C)
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, Summand::T | Summand::U)
    }
}

impl FromStr for Summand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Summand::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| format!("unknown summand {s}"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CentralizerType {
    pub summands: BTreeMap<Summand, usize>,
}

impl CentralizerType {
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|(s, m)| s.dim() * m).sum()
    }

    pub fn count(&self, s: Summand) -> usize {
        self.summands.get(&s).copied().unwrap_or(0)
    }

    fn semisimple_list(&self) -> Vec<Summand> {
        let mut v = Vec::new();
        for (s, m) in &self.summands {
            if !s.is_abelian() {
                v.extend(std::iter::repeat_n(*s, *m));
            }
        }
        v
    }

    /// Whether computed real-form invariants are consistent with this type.
    pub fn matches(&self, data: &RealFormData) -> Result<(), String> {
        if data.dim != self.dim() {
            return Err(format!("dimension {} vs declared {}", data.dim, self.dim()));
        }
        let want = (self.count(Summand::T), self.count(Summand::U));
        if data.center != want {
            return Err(format!("center (t,u) = {:?} vs declared {:?}", data.center, want));
        }
        let summands = self.semisimple_list();
        let mut owner = vec![usize::MAX; summands.len()];
        if assign(&summands, &data.ideals, &mut owner, 0) {
            Ok(())
        } else {
            let got: Vec<String> = data
                .ideals
                .iter()
                .map(|i| format!("dim {} sig {:?} centroid {:?}", i.dim, i.signature, i.centroid))
                .collect();
            Err(format!("semisimple part [{}] does not match declared type", got.join("; ")))
        }
    }
}

/// Assign declared summands to computed ideals so that invariants add up.
fn assign(summands: &[Summand], ideals: &[realform::IdealInvariants], owner: &mut [usize], next: usize) -> bool {
    if next == summands.len() {
        return ideals.iter().enumerate().all(|(k, ideal)| {
            let group: Vec<Summand> = summands.iter().zip(owner.iter()).filter(|(_, &o)| o == k).map(|(s, _)| *s).collect();
            let dim: usize = group.iter().map(|s| s.dim()).sum();
            let pos: usize = group.iter().map(|s| s.signature().0).sum();
            let neg: usize = group.iter().map(|s| s.signature().1).sum();
            let cent: usize = group.iter().map(|s| if s.is_complex() { 2 } else { 1 }).sum();
            let single_complex = group.len() == 1 && group[0].is_complex();
            dim == ideal.dim
                && (pos, neg) == ideal.signature
                && ideal.centroid.is_none_or(|c| c == cent)
                && ideal.complex_type.is_none_or(|c| c == single_complex)
        });
    }
    for k in 0..ideals.len() {
        let used_dim: usize = summands[..next].iter().zip(owner.iter()).filter(|(_, &o)| o == k).map(|(s, _)| s.dim()).sum();
        if used_dim + summands[next].dim() > ideals[k].dim {
            continue;
        }
        owner[next] = k;
        if assign(summands, ideals, owner, next + 1) {
            return true;
        }
        owner[next] = usize::MAX;
    }
    false
}

impl FromStr for CentralizerType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let mut out = CentralizerType::default();
        if s == "0" {
            return Ok(out);
        }
        for part in s.split('+') {
            let part = part.trim();
            let (m, name) = match part.split_once('*') {
                Some((m, n)) => (m.trim().parse::<usize>().map_err(|_| format!("bad multiplicity in {part}"))?, n.trim()),
                None => (1, part),
            };
            if m == 0 {
                return Err(format!("zero multiplicity in {part}"));
            }
            *out.summands.entry(name.parse()?).or_insert(0) += m;
        }
        Ok(out)
    }
}

impl fmt::Display for CentralizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(s, m)| if *m == 1 { s.name().to_string() } else { format!("{m}*{}", s.name()) })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

// ---------------------------------------------------------------------------
// Orbit records

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecordFamily {
    Nilpotent,
    /// A semisimple orbit p^{k,j} itself.
    Semisimple(FamilyTag),
    /// A row of the table of mixed elements with semisimple part p^{k,j}.
    Table(FamilyTag),
}

impl fmt::Display for RecordFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordFamily::Nilpotent => write!(f, "nil"),
            RecordFamily::Semisimple(_) => write!(f, "ss"),
            RecordFamily::Table(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Declared {
    pub centralizer: Option<CentralizerType>,
    pub dim: Option<usize>,
    pub rank: Option<usize>,
    pub characteristic: Option<[i64; 8]>,
    pub compgroup: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub family: RecordFamily,
    pub number: u32,
    pub variant: Option<String>,
    pub representative: Trivector,
    pub declared: Declared,
    pub line: usize,
}

impl OrbitRecord {
    pub fn id(&self) -> String {
        let tag = match self.family {
            RecordFamily::Semisimple(t) => format!("ss {t}"),
            other => other.to_string(),
        };
        match &self.variant {
            Some(v) => format!("{tag} {}{v}", self.number),
            None => format!("{tag} {}", self.number),
        }
    }

    pub fn family_tag(&self) -> Option<FamilyTag> {
        match self.family {
            RecordFamily::Nilpotent => None,
            RecordFamily::Semisimple(t) | RecordFamily::Table(t) => Some(t),
        }
    }
}

fn parse_record(t: &str, line: usize) -> Result<OrbitRecord, CatalogError> {
    let (head, rest) = t.split_once(':').ok_or_else(|| parse_err(line, "expected ':'"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    if toks.first() != Some(&"orbit") || !(3..=4).contains(&toks.len()) {
        return Err(parse_err(line, "expected 'orbit <family> <number> [variant]'"));
    }
    let number: u32 = toks[2].parse().map_err(|_| parse_err(line, format!("bad row number {}", toks[2])))?;
    let variant = toks.get(3).map(|v| v.to_string());
    let mut fields = rest.split(';');
    let rep_text = fields.next().unwrap().trim();
    let representative = parse_trivector(rep_text).map_err(|e| parse_err(line, format!("representative: {e}")))?;
    let mut declared = Declared::default();
    let mut params: Option<FamilyTag> = None;
    for kv in fields {
        let kv = kv.trim();
        let (k, v) = kv.split_once('=').ok_or_else(|| parse_err(line, format!("bad field {kv}")))?;
        let v = v.trim();
        let num = |v: &str| v.parse::<usize>().map_err(|_| parse_err(line, format!("bad value for {k}")));
        match k.trim() {
            "centralizer" => declared.centralizer = Some(v.parse().map_err(|e: String| parse_err(line, e))?),
            "dim" => declared.dim = Some(num(v)?),
            "rank" => declared.rank = Some(num(v)?),
            "compgroup" => declared.compgroup = Some(num(v)?),
            "char" => {
                let xs: Result<Vec<i64>, _> = v.split(',').map(|x| x.trim().parse::<i64>()).collect();
                let xs = xs.map_err(|_| parse_err(line, "bad characteristic"))?;
                let arr: [i64; 8] = xs.try_into().map_err(|_| parse_err(line, "characteristic needs 8 entries"))?;
                declared.characteristic = Some(arr);
            }
            "params" => params = Some(v.parse().map_err(|_| parse_err(line, format!("bad condition tag {v}")))?),
            other => return Err(parse_err(line, format!("unknown field {other}"))),
        }
    }
    let family = match toks[1] {
        "nil" => {
            if params.is_some() {
                return Err(parse_err(line, "nilpotent records take no params"));
            }
            RecordFamily::Nilpotent
        }
        "ss" => RecordFamily::Semisimple(params.ok_or_else(|| parse_err(line, "semisimple record needs params="))?),
        tok => {
            let tag: FamilyTag = tok.parse().map_err(|_| parse_err(line, format!("unknown family {tok}")))?;
            if params.is_some_and(|p| p != tag) {
                return Err(parse_err(line, "params= disagrees with the family"));
            }
            RecordFamily::Table(tag)
        }
    };
    if let Some(tag) = family_of(family) {
        if self::family(tag).is_none() {
            return Err(parse_err(line, format!("unknown family {tag}")));
        }
    }
    if let Some(d) = declared.dim {
        if d > 80 {
            return Err(parse_err(line, "orbit dimension exceeds 80"));
        }
        if let Some(c) = &declared.centralizer {
            if family == RecordFamily::Nilpotent && c.dim() > 80 - d {
                return Err(parse_err(line, "centralizer type too large for the orbit dimension"));
            }
        }
    }
    if declared.rank.is_some_and(|r| r > 9) {
        return Err(parse_err(line, "rank exceeds 9"));
    }
    Ok(OrbitRecord { family, number, variant, representative, declared, line })
}

fn family_of(f: RecordFamily) -> Option<FamilyTag> {
    match f {
        RecordFamily::Nilpotent => None,
        RecordFamily::Semisimple(t) | RecordFamily::Table(t) => Some(t),
    }
}

/// Parse records in the line-oriented record grammar.
pub fn parse_catalog(text: &str) -> Result<Vec<OrbitRecord>, CatalogError> {
    let mut out = Vec::new();
    let mut seen: HashSet<(RecordFamily, u32, Option<String>)> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let r = parse_record(t, line)?;
        if !seen.insert((r.family, r.number, r.variant.clone())) {
            return Err(CatalogError::Duplicate { line, id: r.id() });
        }
        out.push(r);
    }
    Ok(out)
}

pub fn load_catalog(path: &std::path::Path) -> Result<Vec<OrbitRecord>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

const SEMISIMPLE_RECORDS: &str = "orbit ss 11: 0; params=1_1; centralizer=0\n";

/// Mixed-table rows, the generic semisimple orbit, and the nilpotent sample.
pub fn builtin_catalog() -> Vec<OrbitRecord> {
    let mut v = parse_catalog(MIXED_TABLES_TXT).expect("embedded tables parse");
    v.extend(parse_catalog(SEMISIMPLE_RECORDS).expect("embedded records parse"));
    v.extend(parse_catalog(ORBITREPS_SAMPLE_TXT).expect("embedded sample parses"));
    v
}

pub fn find_record(records: &[OrbitRecord], tag: FamilyTag, number: u32) -> Vec<&OrbitRecord> {
    records.iter().filter(|r| r.family == RecordFamily::Table(tag) && r.number == number).collect()
}

// ---------------------------------------------------------------------------
// Worked-example data

#[derive(Clone, Debug, Default)]
pub struct Examples {
    pub matrices: BTreeMap<String, Mat<CycScalar>>,
    pub trivectors: BTreeMap<String, Trivector>,
}

impl Examples {
    pub fn matrix(&self, name: &str) -> &Mat<CycScalar> {
        self.matrices.get(name).unwrap_or_else(|| panic!("no example matrix {name}"))
    }

    pub fn trivector(&self, name: &str) -> &Trivector {
        self.trivectors.get(name).unwrap_or_else(|| panic!("no example trivector {name}"))
    }
}

/// Parse `matrix <name> ... end` blocks and `trivector <name> = <expr>` lines.
pub fn parse_examples(text: &str) -> Result<Examples, CatalogError> {
    let mut ex = Examples::default();
    let mut open: Option<(String, Vec<Vec<CycScalar>>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some((name, rows)) = open.as_mut() {
            if t == "end" {
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return Err(parse_err(line, format!("matrix {name} is not square")));
                }
                let (name, rows) = open.take().unwrap();
                ex.matrices.insert(name, Mat::from_rows(rows));
            } else {
                let row: Result<Vec<CycScalar>, _> = t.split_whitespace().map(parse_scalar).collect();
                rows.push(row.map_err(|e| parse_err(line, e.to_string()))?);
            }
            continue;
        }
        if let Some(name) = t.strip_prefix("matrix ") {
            open = Some((name.trim().to_string(), Vec::new()));
        } else if let Some(rest) = t.strip_prefix("trivector ") {
            let (name, expr) = rest.split_once('=').ok_or_else(|| parse_err(line, "expected '='"))?;
            let tv = parse_trivector(expr.trim()).map_err(|e| parse_err(line, e.to_string()))?;
            ex.trivectors.insert(name.trim().to_string(), tv);
        } else {
            return Err(parse_err(line, format!("unexpected line {t}")));
        }
    }
    if open.is_some() {
        return Err(parse_err(text.lines().count(), "unterminated matrix"));
    }
    Ok(ex)
}

pub fn examples() -> &'static Examples {
    static E: OnceLock<Examples> = OnceLock::new();
    E.get_or_init(|| parse_examples(EXAMPLES_TXT).expect("embedded examples parse"))
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    pub fn new(claim: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { claim: claim.into(), ok, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{status} {}", self.claim)
        } else {
            write!(f, "{status} {} ({})", self.claim, self.detail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecordReport {
    pub id: String,
    pub points: Vec<Vec<CycScalar>>,
    pub checks: Vec<Check>,
}

impl RecordReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

pub fn format_point(l: &[CycScalar]) -> String {
    let parts: Vec<String> = l.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Checks shared by every record at one parameter point.
fn check_element(p: &Trivector, e: &Trivector, r: &OrbitRecord, at: &str, checks: &mut Vec<Check>) {
    let alg = algebra();
    let xp = alg.g1_iso(p);
    let xe = alg.g1_iso(e);
    let push = |checks: &mut Vec<Check>, claim: &str, ok: bool, detail: String| {
        checks.push(Check::new(format!("{claim}{at}"), ok, detail));
    };

    push(checks, "[p,e] = 0", alg.bracket(&xp, &xe).is_zero(), String::new());
    if !xe.is_zero() {
        push(checks, "e nilpotent", classify::is_nilpotent(&xe), String::new());
    }
    match classify::jordan_decompose(&xp.add(&xe)) {
        Ok((s, n)) => {
            let ok = s == xp && n == xe;
            let detail = if ok {
                String::new()
            } else {
                let sp = alg.g1_iso_inv(&s).map(|t| t.to_string()).unwrap_or_default();
                format!("semisimple part {sp}")
            };
            push(checks, "Jordan decomposition recovers (p,e)", ok, detail);
        }
        Err(err) => push(checks, "Jordan decomposition recovers (p,e)", false, err.to_string()),
    }

    let mut gens = vec![xp.clone()];
    if !xe.is_zero() {
        match classify::sl2_triple_centralizing(&xe, &xp) {
            Ok(t) => {
                push(checks, "sl2-triple in z(p)", true, String::new());
                if r.family == RecordFamily::Nilpotent {
                    match classify::characteristic(&t.h) {
                        Ok(ch) => {
                            if let Some(want) = r.declared.characteristic {
                                push(checks, "characteristic", ch == want, format!("{ch:?}"));
                            }
                        }
                        Err(err) => push(checks, "characteristic", false, err.to_string()),
                    }
                }
                gens.extend([t.h, xe.clone(), t.f]);
            }
            Err(err) => {
                push(checks, "sl2-triple in z(p)", false, err.to_string());
                return;
            }
        }
    }
    let z = classify::stabilizer_algebra(&gens);
    if let Some(c) = &r.declared.centralizer {
        push(checks, "centralizer dimension", z.len() == c.dim(), format!("{} vs {}", z.len(), c.dim()));
        let mats: Result<Vec<Mat<CycScalar>>, _> = z.iter().map(|x| alg.psi_inv(x)).collect();
        match mats {
            Ok(m) => match realform::real_form(&m) {
                Ok(data) => match c.matches(&data) {
                    Ok(()) => push(checks, "centralizer real form", true, c.to_string()),
                    Err(msg) => push(checks, "centralizer real form", false, msg),
                },
                Err(err) => push(checks, "centralizer real form", false, err.to_string()),
            },
            Err(err) => push(checks, "centralizer real form", false, err.to_string()),
        }
    }
    if r.family == RecordFamily::Nilpotent {
        if let Some(d) = r.declared.dim {
            let od = classify::orbit_dimension(&xe);
            push(checks, "orbit dimension", od == d, format!("{od}"));
        }
        if let Some(rk) = r.declared.rank {
            let got = trivector::rank(e);
            push(checks, "rank", got == rk, format!("{got}"));
        }
    }
}

/// Verify one record at the given parameter points (ignored for nilpotent records).
pub fn verify_record(r: &OrbitRecord, params: &[Vec<CycScalar>]) -> RecordReport {
    let mut checks = Vec::new();
    let mut points = Vec::new();
    match family_of(r.family) {
        None => check_element(&Trivector::zero(), &r.representative, r, "", &mut checks),
        Some(tag) => {
            let Some(fam) = family(tag) else {
                checks.push(Check::new("family exists", false, tag.to_string()));
                return RecordReport { id: r.id(), points, checks };
            };
            if params.is_empty() {
                checks.push(Check::new("parameter points supplied", false, String::new()));
            }
            for l in params {
                let at = format!(" at {}", format_point(l));
                match fam.admissible(l) {
                    Ok(true) => {}
                    Ok(false) => {
                        checks.push(Check::new(format!("parameters admissible{at}"), false, String::new()));
                        continue;
                    }
                    Err(e) => {
                        checks.push(Check::new(format!("parameters admissible{at}"), false, e.to_string()));
                        continue;
                    }
                }
                points.push(l.clone());
                let p = fam.element(l).expect("arity checked");
                check_element(&p, &r.representative, r, &at, &mut checks);
            }
        }
    }
    RecordReport { id: r.id(), points, checks }
}

/// Verify with the family's deterministic sample points.
pub fn verify_record_sampled(r: &OrbitRecord, npoints: usize) -> RecordReport {
    let pts = r.family_tag().and_then(family).map(|f| f.sample_points(npoints)).unwrap_or_default();
    verify_record(r, &pts)
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub reports: Vec<RecordReport>,
    pub replays: Vec<Check>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(RecordReport::passed) && self.replays.iter().all(|c| c.ok)
    }

    pub fn failed_records(&self) -> Vec<&RecordReport> {
        self.reports.iter().filter(|r| !r.passed()).collect()
    }
}

pub fn verify_records(records: &[OrbitRecord], npoints: usize, parallel: bool) -> Vec<RecordReport> {
    if parallel {
        records.par_iter().map(|r| verify_record_sampled(r, npoints)).collect()
    } else {
        records.iter().map(|r| verify_record_sampled(r, npoints)).collect()
    }
}

/// The built-in catalog at three points per family plus the worked-example replays.
pub fn verify_all(parallel: bool) -> Summary {
    Summary {
        reports: verify_records(&builtin_catalog(), 3, parallel),
        replays: replay_examples(),
    }
}

// ---------------------------------------------------------------------------
// Worked-example replays

fn diag(v: &[CycScalar]) -> Mat<CycScalar> {
    let n = v.len();
    Mat::from_fn(n, n, |r, c| if r == c { v[r].clone() } else { CycScalar::zero() })
}

fn conj_mat(m: &Mat<CycScalar>) -> Mat<CycScalar> {
    m.map(|x| x.conj())
}

/// The torus X(a,b) of the orbit-47 stabilizer.
pub fn orbit47_torus(a: &CycScalar, b: &CycScalar) -> Mat<CycScalar> {
    let ai = a.inv().expect("nonzero");
    let bi = b.inv().expect("nonzero");
    let ab = &ai * &bi;
    diag(&[
        ab.clone(),
        ai.pow(2),
        a.clone(),
        (a * b).pow(2),
        bi.pow(2),
        b.clone(),
        ab,
        a.clone(),
        b.clone(),
    ])
}

/// The torus T_4 of the stabilizer of q in F_3.
pub fn t4_torus(t: &[CycScalar; 4]) -> Mat<CycScalar> {
    let inv = |x: &CycScalar| x.inv().expect("nonzero");
    diag(&[
        t[0].clone(),
        t[1].clone(),
        inv(&(&t[0] * &t[1])),
        t[2].clone(),
        t[3].clone(),
        inv(&(&t[2] * &t[3])),
        inv(&(&t[0] * &t[2])),
        inv(&(&t[1] * &t[3])),
        &(&t[0] * &t[1]) * &(&t[2] * &t[3]),
    ])
}

/// The torus T_1 of the mixed example.
pub fn t1_torus(s: &CycScalar) -> Mat<CycScalar> {
    let one = CycScalar::one();
    let si = s.inv().expect("nonzero");
    diag(&[one.clone(), s.clone(), si.clone(), s.clone(), si.clone(), one.clone(), si, one, s.clone()])
}

/// mu(x) = n * conj(x) on trivectors.
pub fn mu(n: &Mat<CycScalar>, x: &Trivector) -> Trivector {
    trivector::wedge_action_unchecked(n, &x.conj())
}

/// Matrix identities and outputs of the worked examples.
pub fn replay_examples() -> Vec<Check> {
    let ex = examples();
    let s = |n: i64| CycScalar::from_i64(n);
    let mut out = Vec::new();
    let act = |g: &Mat<CycScalar>, t: &Trivector| trivector::wedge_action_unchecked(g, t);

    // nilpotent orbit 47
    let g0 = ex.matrix("g0_47");
    let u0 = ex.matrix("u0");
    let e47 = ex.trivector("e47");
    out.push(Check::new("orbit 47: g0 fixes e", act(g0, e47) == *e47, ""));
    let x23 = orbit47_torus(&s(2), &s(3));
    out.push(Check::new("orbit 47: X(a,b) fixes e", act(&x23, e47) == *e47, ""));
    out.push(Check::new("orbit 47: g0^2 = X(1,-1)", g0.mul(g0) == orbit47_torus(&s(1), &s(-1)), ""));
    let conj = g0.mul(&x23).mul(&g0.inverse().unwrap());
    let want = orbit47_torus(&s(2), &(&s(2) * &s(3)).inv().unwrap());
    out.push(Check::new("orbit 47: g0 X(a,b) g0^-1 = X(a,1/(ab))", conj == want, ""));
    let g1 = g0.mul(&orbit47_torus(&s(-1), &s(1)));
    out.push(Check::new("orbit 47: g1^2 = 1", g1.mul(&g1) == Mat::identity(9), ""));
    out.push(Check::new("orbit 47: det u0 = 1", u0.det().is_one(), ""));
    let cocycle = u0.inverse().map(|ui| ui.mul(&conj_mat(u0)));
    out.push(Check::new("orbit 47: u0^-1 conj(u0) = g1", cocycle.as_ref() == Some(&g1), ""));
    let u0e = act(u0, e47);
    out.push(Check::new("orbit 47: u0.e", u0e == *ex.trivector("u0e47"), u0e.to_string()));

    // Fm3
    let n3 = ex.matrix("n3");
    let g3 = ex.matrix("g3");
    out.push(Check::new("Fm3: n3^2 = 1", n3.mul(n3) == Mat::identity(9), ""));
    let c3 = g3.inverse().map(|gi| gi.mul(&conj_mat(g3)));
    out.push(Check::new("Fm3: g3^-1 conj(g3) = n3", c3.as_ref() == Some(n3), ""));
    let p = cartan::p_basis();
    for (x, y) in [(1, 2), (3, -1)] {
        let l1 = &s(x) + &(&CycScalar::i() * &s(y));
        let l2 = &s(x) - &(&CycScalar::i() * &s(y));
        let q = p[0].scale(&l1).add(&p[1].scale(&l2));
        let want = ex.trivector("pxy_x").scale(&s(x)).add(&ex.trivector("pxy_y").scale(&s(y)));
        let got = act(g3, &q);
        out.push(Check::new(format!("Fm3: g3.q = p_(x,y) at ({x},{y})"), got == want, got.to_string()));
    }
    let t = [s(2), s(3), s(5), s(-7)];
    let lhs = n3.mul(&conj_mat(&t4_torus(&t))).mul(&n3.inverse().unwrap());
    let inv = |x: &CycScalar| x.inv().unwrap();
    let rhs = t4_torus(&[
        t[0].conj(),
        inv(&(&t[0] * &t[2])).conj(),
        inv(&(&t[0] * &t[1])).conj(),
        (&(&t[0] * &t[1]) * &(&t[2] * &t[3])).conj(),
    ]);
    out.push(Check::new("Fm3: sigma_q on T4", lhs == rhs, ""));

    // mixed example over F3
    let g0m = ex.matrix("g0_mixed");
    let n0 = ex.matrix("n0");
    let a = ex.matrix("a_mixed");
    let e = ex.trivector("e_mixed");
    let e_prime = ex.trivector("e_prime");
    let e1 = ex.trivector("e1_mixed");
    out.push(Check::new("mixed: mu(e') = e'", mu(n3, e_prime) == *e_prime, ""));
    out.push(Check::new("mixed: g3.e' = e1", act(g3, e_prime) == *e1, act(g3, e_prime).to_string()));
    out.push(Check::new("mixed: g0.e = e1", act(g0m, e) == *e1, act(g0m, e).to_string()));
    let c0 = g0m.inverse().map(|gi| gi.mul(&conj_mat(g0m)));
    out.push(Check::new("mixed: n0 = g0^-1 conj(g0)", c0.as_ref() == Some(n0), ""));
    for sv in [s(2), CycScalar::i()] {
        let lhs = n0.mul(&conj_mat(&t1_torus(&sv))).mul(&n0.inverse().unwrap());
        let rhs = t1_torus(&sv.conj().inv().unwrap());
        out.push(Check::new(format!("mixed: sigma(T1(s)) = T1(1/conj s) at s={sv}"), lhs == rhs, ""));
    }
    let c = t1_torus(&s(-1));
    let lhs = a.mul(&c);
    let rhs = n0.mul(&conj_mat(a)).mul(&n0.inverse().unwrap());
    out.push(Check::new("mixed: a c = n0 conj(a) n0^-1", lhs == rhs, ""));
    let ea = act(&g0m.mul(a), e);
    out.push(Check::new("mixed: g0 a.e", ea == *ex.trivector("ea_mixed"), ea.to_string()));
    out.push(Check::new("mixed: g0 a.e is real", ea.is_real(), ""));
    out
}

/// ad-charpoly agreement between p^{k,j} and its stated conjugates in C.
pub fn charpoly_agreement(fam: &Family, l: &[CycScalar]) -> Vec<Check> {
    let alg = algebra();
    let at = format!(" {} at {}", fam.tag, format_point(l));
    let mut out = Vec::new();
    let own = fam.element(l).map_err(|e| e.to_string()).and_then(|t| classify::ad_cube_charpoly(&alg.g1_iso(&t)).map_err(|e| e.to_string()));
    let own = match own {
        Ok(c) => c,
        Err(e) => return vec![Check::new(format!("charpoly{at}"), false, e)],
    };
    let targets: [(&str, Result<Option<CVec>, CatalogError>); 2] =
        [("complex conjugate", fam.complex_point(l)), ("real conjugate", fam.real_point(l))];
    for (label, pt) in targets {
        match pt {
            Ok(Some(x)) => {
                let other = classify::ad_cube_charpoly(&alg.g1_iso(&cartan::point(&x)));
                let ok = other.as_ref().is_ok_and(|c| *c == own);
                out.push(Check::new(format!("charpoly agrees with {label}{at}"), ok, ""));
            }
            Ok(None) => {}
            Err(e) => out.push(Check::new(format!("charpoly agrees with {label}{at}"), false, e.to_string())),
        }
    }
    out
}

/// The element -2 e137 + p^{6,2} against its stated conjugate with semisimple part in C.
pub fn p62_mixed_agreement(l: &CycScalar) -> Check {
    let alg = algebra();
    let ex = examples();
    let fam = family(FamilyTag::new(6, 2)).expect("family 6_2");
    let x = fam.element(std::slice::from_ref(l)).unwrap().add(ex.trivector("p62_nil"));
    let r = &(CycScalar::sqrt3() / CycScalar::from_i64(3)) * l;
    let y = cartan::point(&[CycScalar::zero(), r.clone(), r.clone(), r]).add(&ex.trivector("p62_cartan_nil").scale(l));
    let a = classify::ad_cube_charpoly(&alg.g1_iso(&x));
    let b = classify::ad_cube_charpoly(&alg.g1_iso(&y));
    let ok = matches!((&a, &b), (Ok(a), Ok(b)) if a == b);
    Check::new(format!("p62 mixed element charpoly at l={l}"), ok, "")
}

/// Nonzero elements of a family's parameter group act within the family:
/// p(g.l) lies in the same SL(9,C)-orbit, checked through the ad-charpoly.
pub fn group_invariance(fam: &Family, l: &[CycScalar]) -> Result<bool, CatalogError> {
    let alg = algebra();
    let base = classify::ad_cube_charpoly(&alg.g1_iso(&fam.element(l)?)).map_err(|e| CatalogError::Expr(e.to_string()))?;
    for g in &fam.generators {
        let m = Family::act(g, l);
        let c = classify::ad_cube_charpoly(&alg.g1_iso(&fam.element(&m)?)).map_err(|e| CatalogError::Expr(e.to_string()))?;
        if c != base {
            return Ok(false);
        }
    }
    Ok(true)
}
