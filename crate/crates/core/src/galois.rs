//! Real Galois cohomology for Gal(C/R) acting on matrix groups, tori and
//! their extensions, with the solvers that turn cohomology classes into real
//! orbit representatives.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::cartan::{self, m4_mul, LittleWeylGroup, M4};
use crate::catalog;
use crate::classify;
use crate::e8::algebra;
use crate::field::Mat;
use crate::scalar::{parse_scalar, CycScalar};
use crate::trivector::{self, Trivector};

pub type IMat = Vec<Vec<i64>>;

const FINITE_BOUND: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group has more than {0} elements")]
    TooLarge(usize),
    #[error("not an involution")]
    NotInvolution,
    #[error("group is not closed under the involution")]
    NotClosed,
    #[error("needs manual fiber data: {0}")]
    NeedsFiberData(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("not a cocycle")]
    NotCocycle,
    #[error("search budget exhausted after {tries} candidates (solution space of dimension {basis_dim})")]
    Budget { tries: usize, basis_dim: usize },
    #[error("no witness found at step {step}: {what}")]
    WitnessNotFound { step: usize, what: String },
    #[error("{0}")]
    Unsupported(String),
}

// ---------------------------------------------------------------------------
// Integer lattices

fn identity_imat(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let (m, k) = (a.len(), b.len());
    let n = b.first().map_or(0, |r| r.len());
    (0..m).map(|i| (0..n).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn imat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn imat_add_scalar(a: &IMat, s: i64) -> IMat {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] += s;
    }
    out
}

fn transpose(a: &IMat, cols: usize) -> IMat {
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// U A V = D with U, V unimodular and D diagonal (not necessarily in
/// divisibility order).
struct Smith {
    diag: Vec<i64>,
    rank: usize,
    uinv: IMat,
    v: IMat,
    vinv: IMat,
}

fn smith(a: &IMat, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut a = a.clone();
    let mut uinv = identity_imat(m);
    let mut v = identity_imat(n);
    let mut vinv = identity_imat(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in uinv.iter_mut() {
            row.swap(t, pi);
        }
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        vinv.swap(t, pj);
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                for j in 0..n {
                    a[i][j] -= q * a[t][j];
                }
                for row in uinv.iter_mut() {
                    row[t] += q * row[i];
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
                let rj = vinv[j].clone();
                for (x, y) in vinv[t].iter_mut().zip(&rj) {
                    *x += q * y;
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if clean {
            if a[t][t] < 0 {
                for x in a[t].iter_mut() {
                    *x = -*x;
                }
                for row in uinv.iter_mut() {
                    row[t] = -row[t];
                }
            }
            t += 1;
        }
    }
    let diag = (0..m.min(n)).map(|i| a[i][i]).collect();
    Smith { diag, rank: t, uinv, v, vinv }
}

/// Basis (columns) of the integer kernel of a.
fn integer_kernel(a: &IMat, cols: usize) -> Vec<Vec<i64>> {
    let s = smith(a, cols);
    (s.rank..cols).map(|j| s.v.iter().map(|r| r[j]).collect()).collect()
}

/// ker(k) / im(i) for integer matrices with i's image inside ker(k).
/// Returns generators (in the ambient lattice) with their orders.
fn lattice_quotient(k: &IMat, i: &IMat, r: usize) -> Result<Vec<(Vec<i64>, i64)>, GaloisError> {
    let sk = smith(k, r);
    let kb: Vec<Vec<i64>> = (sk.rank..r).map(|j| sk.v.iter().map(|row| row[j]).collect()).collect();
    let kdim = kb.len();
    if kdim == 0 {
        return Ok(Vec::new());
    }
    // coordinates of the generators of im(i) in the kernel basis
    let coords: IMat = {
        let full = imat_mul(&sk.vinv, i);
        full[sk.rank..].to_vec()
    };
    let sq = smith(&coords, r);
    let mut out = Vec::new();
    for idx in 0..kdim {
        let d = if idx < sq.rank { sq.diag[idx] } else { 0 };
        if d == 1 {
            continue;
        }
        if d == 0 {
            return Err(GaloisError::NotInvolution);
        }
        let c: Vec<i64> = sq.uinv.iter().map(|row| row[idx]).collect();
        let v: Vec<i64> = (0..r).map(|a| (0..kdim).map(|b| kb[b][a] * c[b]).sum()).collect();
        out.push((v, d));
    }
    Ok(out)
}

fn check_involution(s: &IMat) -> Result<usize, GaloisError> {
    let r = s.len();
    if s.iter().any(|row| row.len() != r) || imat_mul(s, s) != identity_imat(r) {
        return Err(GaloisError::NotInvolution);
    }
    Ok(r)
}

/// Cohomology of a torus with Gamma acting on cocharacters by sigma_star
/// (composed with complex conjugation on C*).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCohomology {
    /// Cocharacters v; the class is represented by v(-1).
    pub h1: Vec<Vec<i64>>,
    /// Cocharacters v; the H^2 class is represented by v(-1).
    pub h2: Vec<Vec<i64>>,
    /// Numbers of trivial, sign and regular summands.
    pub summands: (usize, usize, usize),
}

fn subset_sums(gens: &[(Vec<i64>, i64)], r: usize) -> Result<Vec<Vec<i64>>, GaloisError> {
    if gens.iter().any(|(_, d)| *d != 2) {
        return Err(GaloisError::NotInvolution);
    }
    let mut out = vec![vec![0; r]];
    for (g, _) in gens {
        let more: Vec<Vec<i64>> = out.iter().map(|v| v.iter().zip(g).map(|(a, b)| a + b).collect()).collect();
        out.extend(more);
    }
    Ok(out)
}

pub fn torus_cohomology(sigma_star: &IMat) -> Result<TorusCohomology, GaloisError> {
    let r = check_involution(sigma_star)?;
    let plus = imat_add_scalar(sigma_star, 1);
    let minus = imat_add_scalar(sigma_star, -1);
    let h1 = lattice_quotient(&plus, &minus, r)?;
    let h2 = lattice_quotient(&minus, &plus, r)?;
    let (a, b) = (h2.len(), h1.len());
    if (r - a - b) % 2 != 0 {
        return Err(GaloisError::NotInvolution);
    }
    Ok(TorusCohomology {
        h1: subset_sums(&h1, r)?,
        h2: subset_sums(&h2, r)?,
        summands: (a, b, (r - a - b) / 2),
    })
}

/// H^1 of a torus: classes represented by v(-1) for the listed cocharacters.
pub fn h1_torus(sigma_star: &IMat) -> Result<Vec<Vec<i64>>, GaloisError> {
    Ok(torus_cohomology(sigma_star)?.h1)
}

pub fn h2_torus(sigma_star: &IMat) -> Result<Vec<Vec<i64>>, GaloisError> {
    Ok(torus_cohomology(sigma_star)?.h2)
}

// ---------------------------------------------------------------------------
// Gamma-groups

#[derive(Clone, Debug, PartialEq)]
pub enum Sigma {
    /// a -> conj(a)
    Plain,
    /// a -> n conj(a) n^-1
    Twist { n: Mat<CycScalar>, n_inv: Mat<CycScalar> },
}

fn conj_mat(m: &Mat<CycScalar>) -> Mat<CycScalar> {
    m.map(|x| x.conj())
}

impl Sigma {
    pub fn twist(n: Mat<CycScalar>) -> Option<Sigma> {
        let n_inv = n.inverse()?;
        Some(Sigma::Twist { n, n_inv })
    }

    pub fn apply(&self, a: &Mat<CycScalar>) -> Mat<CycScalar> {
        match self {
            Sigma::Plain => conj_mat(a),
            Sigma::Twist { n, n_inv } => n.mul(&conj_mat(a)).mul(n_inv),
        }
    }

    /// mu(x) = n conj(x) on trivectors.
    pub fn apply_trivector(&self, x: &Trivector) -> Trivector {
        match self {
            Sigma::Plain => x.conj(),
            Sigma::Twist { n, .. } => trivector::wedge_action_unchecked(n, &x.conj()),
        }
    }

    pub fn matrix(&self) -> Option<&Mat<CycScalar>> {
        match self {
            Sigma::Plain => None,
            Sigma::Twist { n, .. } => Some(n),
        }
    }

    /// Precompose with conjugation by g: a -> g sigma(a) g^-1.
    pub fn conjugated_by(&self, g: &Mat<CycScalar>) -> Option<Sigma> {
        match self {
            Sigma::Plain => Sigma::twist(g.clone()),
            Sigma::Twist { n, .. } => Sigma::twist(g.mul(n)),
        }
    }
}

/// A torus of diagonal matrices T(t) with entries prod_j t_j^{E_ij}.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPart {
    pub rank: usize,
    pub exponents: IMat,
    /// Stated action on cocharacters: sigma(T(t))_k = prod_j conj(t_j)^{S_kj}.
    pub involution: IMat,
}

fn int_pow(x: &CycScalar, e: i64) -> CycScalar {
    if e >= 0 {
        x.pow(e as u32)
    } else {
        x.inv().expect("nonzero torus parameter").pow((-e) as u32)
    }
}

impl TorusPart {
    pub fn diagonal(&self, t: &[CycScalar]) -> Vec<CycScalar> {
        self.exponents
            .iter()
            .map(|row| {
                let mut acc = CycScalar::one();
                for (e, x) in row.iter().zip(t) {
                    if *e != 0 {
                        acc = &acc * &int_pow(x, *e);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn element(&self, t: &[CycScalar]) -> Mat<CycScalar> {
        let d = self.diagonal(t);
        let n = d.len();
        Mat::from_fn(n, n, |r, c| if r == c { d[r].clone() } else { CycScalar::zero() })
    }

    /// v(-1) for a cocharacter v.
    pub fn at_minus_one(&self, v: &[i64]) -> Mat<CycScalar> {
        let n = self.exponents.len();
        Mat::from_fn(n, n, |r, c| {
            if r != c {
                return CycScalar::zero();
            }
            let e: i64 = self.exponents[r].iter().zip(v).map(|(a, b)| a * b).sum();
            CycScalar::from_i64(if e.rem_euclid(2) == 0 { 1 } else { -1 })
        })
    }

    /// Solve E w = m over the integers.
    fn cocharacter_of(&self, m: &[i64]) -> Option<Vec<i64>> {
        let rows: Vec<Vec<CycScalar>> =
            self.exponents.iter().map(|r| r.iter().map(|&x| CycScalar::from_i64(x)).collect()).collect();
        let a = Mat::from_rows(rows);
        let rhs: Vec<CycScalar> = m.iter().map(|&x| CycScalar::from_i64(x)).collect();
        let w = a.solve(&rhs)?;
        let w: Option<Vec<i64>> = w.iter().map(|x| x.to_rational().filter(|q| q.is_integer()).and_then(|q| i64::try_from(q.to_integer()).ok())).collect();
        let w = w?;
        (imat_vec(&self.exponents, &w) == m).then_some(w)
    }

    /// The action on cocharacters read off from matrices: sigma(T(2^{e_k}))
    /// is diagonal with entries that are powers of 2.
    pub fn derive_involution(&self, sigma: &Sigma) -> Option<IMat> {
        let r = self.rank;
        let mut cols = Vec::with_capacity(r);
        for k in 0..r {
            let mut t = vec![CycScalar::one(); r];
            t[k] = CycScalar::from_i64(2);
            let img = sigma.apply(&self.element(&t));
            let n = img.rows;
            let mut m = Vec::with_capacity(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && !img.get(i, j).is_zero() {
                        return None;
                    }
                }
                m.push(log2_exact(img.get(i, i))?);
            }
            cols.push(self.cocharacter_of(&m)?);
        }
        Some((0..r).map(|i| (0..r).map(|k| cols[k][i]).collect()).collect())
    }

    /// Weights of T on the support of a trivector.
    pub fn weights_on(&self, x: &Trivector) -> IMat {
        let tr = trivector::triples();
        x.support()
            .map(|(k, _)| {
                let [a, b, c] = tr[k];
                (0..self.rank).map(|j| self.exponents[a - 1][j] + self.exponents[b - 1][j] + self.exponents[c - 1][j]).collect()
            })
            .collect()
    }
}

fn log2_exact(x: &CycScalar) -> Option<i64> {
    let q = x.to_rational()?;
    let (n, d) = (q.numer().clone(), q.denom().clone());
    let two = num_bigint::BigInt::from(2);
    let one = num_bigint::BigInt::from(1);
    let pow_of_two = |mut v: num_bigint::BigInt| -> Option<i64> {
        let mut k = 0;
        while v > one {
            if (&v % &two) != num_bigint::BigInt::from(0) {
                return None;
            }
            v /= &two;
            k += 1;
        }
        (v == one).then_some(k)
    };
    Some(pow_of_two(n)? - pow_of_two(d)?)
}

/// A group with an anti-regular involution, described by finite generators,
/// an optional diagonal torus, and the involution.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaGroup {
    pub dim: usize,
    pub generators: Vec<Mat<CycScalar>>,
    /// Order of the component group, when the torus part is present.
    pub components: Option<usize>,
    pub torus: Option<TorusPart>,
    pub sigma: Sigma,
}

fn parse_rows(lines: &[(usize, &str)], count: usize) -> Result<Vec<Vec<String>>, GaloisError> {
    if lines.len() < count {
        let line = lines.last().map_or(0, |l| l.0);
        return Err(GaloisError::Parse { line, msg: format!("expected {count} rows") });
    }
    Ok(lines[..count].iter().map(|(_, l)| l.split_whitespace().map(str::to_string).collect()).collect())
}

fn scalar_rows(rows: Vec<Vec<String>>, line: usize) -> Result<Mat<CycScalar>, GaloisError> {
    let parsed: Result<Vec<Vec<CycScalar>>, _> =
        rows.iter().map(|r| r.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<_>, _>>()).collect();
    let parsed = parsed.map_err(|e| GaloisError::Parse { line, msg: e.to_string() })?;
    let n = parsed.len();
    if parsed.iter().any(|r| r.len() != n) {
        return Err(GaloisError::Parse { line, msg: "matrix is not square".into() });
    }
    Ok(Mat::from_rows(parsed))
}

fn int_rows(rows: Vec<Vec<String>>, width: usize, line: usize) -> Result<IMat, GaloisError> {
    rows.iter()
        .map(|r| {
            if r.len() != width {
                return Err(GaloisError::Parse { line, msg: format!("expected {width} entries") });
            }
            r.iter().map(|x| x.parse::<i64>().map_err(|_| GaloisError::Parse { line, msg: format!("bad integer {x}") })).collect()
        })
        .collect()
}

impl GammaGroup {
    pub fn finite(generators: Vec<Mat<CycScalar>>, sigma: Sigma) -> GammaGroup {
        let dim = generators.first().map_or(1, |g| g.rows);
        GammaGroup { dim, generators, components: None, torus: None, sigma }
    }

    /// Parse the `[finite]` / `[torus]` / `[sigma]` description format.
    /// `twist <name>` refers to a worked-example matrix.
    pub fn parse(text: &str) -> Result<GammaGroup, GaloisError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut generators = Vec::new();
        let mut components = None;
        let mut torus: Option<TorusPart> = None;
        let mut sigma = Sigma::Plain;
        let mut section = "";
        let mut i = 0;
        let err = |line: usize, msg: &str| GaloisError::Parse { line, msg: msg.to_string() };
        while i < lines.len() {
            let (ln, l) = lines[i];
            if l.starts_with('[') {
                section = match l {
                    "[finite]" => "finite",
                    "[torus]" => "torus",
                    "[sigma]" => "sigma",
                    _ => return Err(err(ln, "unknown section")),
                };
                i += 1;
                continue;
            }
            let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let rest = rest.trim();
            match (section, key) {
                ("finite", "components") => {
                    components = Some(rest.parse().map_err(|_| err(ln, "bad component count"))?);
                    i += 1;
                }
                ("finite", "gen") => {
                    let n = lines.get(i + 1).map_or(0, |(_, r)| r.split_whitespace().count());
                    let rows = parse_rows(&lines[i + 1..], n)?;
                    generators.push(scalar_rows(rows, ln)?);
                    i += 1 + n;
                }
                ("torus", "rank") => {
                    let r: usize = rest.parse().map_err(|_| err(ln, "bad rank"))?;
                    torus = Some(TorusPart { rank: r, exponents: Vec::new(), involution: Vec::new() });
                    i += 1;
                }
                ("torus", "exponents") => {
                    let t = torus.as_mut().ok_or_else(|| err(ln, "rank must come first"))?;
                    let mut n = 0;
                    while lines.get(i + 1 + n).is_some_and(|(_, r)| r.split_whitespace().all(|x| x.parse::<i64>().is_ok())) {
                        n += 1;
                    }
                    t.exponents = int_rows(parse_rows(&lines[i + 1..], n)?, t.rank, ln)?;
                    i += 1 + n;
                }
                ("torus", "involution") => {
                    let t = torus.as_mut().ok_or_else(|| err(ln, "rank must come first"))?;
                    t.involution = int_rows(parse_rows(&lines[i + 1..], t.rank)?, t.rank, ln)?;
                    i += 1 + t.rank;
                }
                ("sigma", "plain") => {
                    sigma = Sigma::Plain;
                    i += 1;
                }
                ("sigma", "twist") => {
                    let m = if rest.is_empty() {
                        let n = lines.get(i + 1).map_or(0, |(_, r)| r.split_whitespace().count());
                        let rows = parse_rows(&lines[i + 1..], n)?;
                        i += 1 + n;
                        scalar_rows(rows, ln)?
                    } else {
                        i += 1;
                        catalog::examples().matrices.get(rest).cloned().ok_or_else(|| err(ln, "unknown matrix name"))?
                    };
                    sigma = Sigma::twist(m).ok_or_else(|| err(ln, "twist is not invertible"))?;
                }
                _ => return Err(err(ln, &format!("unexpected '{key}'"))),
            }
        }
        let dim = generators
            .first()
            .map(|g| g.rows)
            .or_else(|| torus.as_ref().map(|t| t.exponents.len()))
            .or_else(|| sigma.matrix().map(|m| m.rows))
            .unwrap_or(1);
        if generators.iter().any(|g| g.rows != dim) {
            return Err(err(0, "generators of different sizes"));
        }
        if let Some(t) = &torus {
            if t.exponents.len() != dim || t.involution.len() != t.rank {
                return Err(err(0, "torus data has the wrong shape"));
            }
            check_involution(&t.involution)?;
        }
        Ok(GammaGroup { dim, generators, components, torus, sigma })
    }
}

// ---------------------------------------------------------------------------
// Finite groups

/// Elements addressed by index with a multiplication and an involution.
pub trait IndexedGammaGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inverse(&self, a: usize) -> usize;
    fn sigma(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedH1 {
    /// (representative, orbit size), neutral class first.
    pub classes: Vec<(usize, usize)>,
    /// Class index of each cocycle, None for non-cocycles.
    pub class_of: Vec<Option<usize>>,
}

/// Orbits of a -> g^-1 c sigma(g) on the cocycles c sigma(c) = 1.
pub fn h1_indexed<G: IndexedGammaGroup>(g: &G) -> IndexedH1 {
    let n = g.order();
    let id = g.identity();
    let is_cocycle: Vec<bool> = (0..n).into_par_iter().map(|c| g.mul(c, g.sigma(c)) == id).collect();
    let gens: Vec<(usize, usize)> = g.generators().into_iter().map(|s| (g.inverse(s), g.sigma(s))).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes = Vec::new();
    let order_of_start = std::iter::once(id).chain((0..n).filter(|&c| c != id));
    for start in order_of_start {
        if !is_cocycle[start] || class_of[start].is_some() {
            continue;
        }
        let k = classes.len();
        class_of[start] = Some(k);
        let mut stack = vec![start];
        let mut size = 1;
        while let Some(c) = stack.pop() {
            for &(ginv, gs) in &gens {
                let d = g.mul(g.mul(ginv, c), gs);
                if class_of[d].is_none() {
                    class_of[d] = Some(k);
                    size += 1;
                    stack.push(d);
                }
            }
        }
        classes.push((start, size));
    }
    IndexedH1 { classes, class_of }
}

/// An explicitly enumerated matrix group.
pub struct FiniteGroup {
    pub elements: Vec<Mat<CycScalar>>,
    index: HashMap<Vec<CycScalar>, usize>,
    gens: Vec<usize>,
    sigma_idx: Vec<usize>,
    table: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    pub fn closure(gens: &[Mat<CycScalar>], sigma: &Sigma, dim: usize, bound: usize) -> Result<FiniteGroup, GaloisError> {
        let id = Mat::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.data.clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for g in gens {
                let h = elements[i].mul(g);
                if !index.contains_key(&h.data) {
                    index.insert(h.data.clone(), elements.len());
                    elements.push(h);
                    if elements.len() > bound {
                        return Err(GaloisError::TooLarge(bound));
                    }
                }
            }
            i += 1;
        }
        Self::finish(elements, index, gens, sigma)
    }

    /// From a complete list of elements.
    pub fn from_elements(elements: Vec<Mat<CycScalar>>, sigma: &Sigma) -> Result<FiniteGroup, GaloisError> {
        let index: HashMap<Vec<CycScalar>, usize> = elements.iter().enumerate().map(|(i, m)| (m.data.clone(), i)).collect();
        let gens = elements.clone();
        Self::finish(elements, index, &gens, sigma)
    }

    fn finish(
        elements: Vec<Mat<CycScalar>>,
        index: HashMap<Vec<CycScalar>, usize>,
        gens: &[Mat<CycScalar>],
        sigma: &Sigma,
    ) -> Result<FiniteGroup, GaloisError> {
        let sigma_idx: Option<Vec<usize>> = elements.iter().map(|m| index.get(&sigma.apply(m).data).copied()).collect();
        let sigma_idx = sigma_idx.ok_or(GaloisError::NotClosed)?;
        let gens = gens.iter().map(|g| index[&g.data]).collect();
        let mut fg = FiniteGroup { elements, index, gens, sigma_idx, table: None };
        if fg.elements.len() <= 4096 {
            let n = fg.elements.len();
            let table: Option<Vec<Vec<usize>>> = (0..n)
                .into_par_iter()
                .map(|a| (0..n).map(|b| fg.index.get(&fg.elements[a].mul(&fg.elements[b]).data).copied()).collect())
                .collect();
            fg.table = Some(table.ok_or(GaloisError::NotClosed)?);
        }
        Ok(fg)
    }

    pub fn index_of(&self, m: &Mat<CycScalar>) -> Option<usize> {
        self.index.get(&m.data).copied()
    }
}

impl IndexedGammaGroup for FiniteGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a][b],
            None => self.index[&self.elements[a].mul(&self.elements[b]).data],
        }
    }
    fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse().expect("invertible").data]
    }
    fn sigma(&self, a: usize) -> usize {
        self.sigma_idx[a]
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleClass {
    pub representative: Mat<CycScalar>,
    pub class_id: usize,
}

impl fmt::Display for CocycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_matrix(&self.representative))
    }
}

pub fn format_matrix(m: &Mat<CycScalar>) -> String {
    let rows: Vec<String> =
        (0..m.rows).map(|r| m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
    rows.join("; ")
}

pub struct H1Finite {
    pub group: FiniteGroup,
    pub h1: IndexedH1,
}

impl H1Finite {
    pub fn classes(&self) -> Vec<CocycleClass> {
        self.h1
            .classes
            .iter()
            .enumerate()
            .map(|(k, &(rep, _))| CocycleClass { representative: self.group.elements[rep].clone(), class_id: k })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.h1.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h1.classes.is_empty()
    }

    pub fn class_of(&self, m: &Mat<CycScalar>) -> Option<usize> {
        self.group.index_of(m).and_then(|i| self.h1.class_of[i])
    }
}

pub fn h1_finite(g: &GammaGroup) -> Result<H1Finite, GaloisError> {
    let group = FiniteGroup::closure(&g.generators, &g.sigma, g.dim, FINITE_BOUND)?;
    let h1 = h1_indexed(&group);
    Ok(H1Finite { group, h1 })
}

pub fn h1_of_elements(elements: Vec<Mat<CycScalar>>, sigma: &Sigma) -> Result<H1Finite, GaloisError> {
    let group = FiniteGroup::from_elements(elements, sigma)?;
    let h1 = h1_indexed(&group);
    Ok(H1Finite { group, h1 })
}

/// W with complex conjugation of matrices in the p-basis.
pub struct WeylGamma<'a> {
    w: &'a LittleWeylGroup,
    conj: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    id: usize,
}

impl<'a> WeylGamma<'a> {
    pub fn new(w: &'a LittleWeylGroup) -> WeylGamma<'a> {
        let conj: Vec<u32> = w
            .elements()
            .par_iter()
            .map(|m| {
                let c: M4 = std::array::from_fn(|k| m[k].conj());
                w.index_of(&c).expect("W is closed under conjugation")
            })
            .collect();
        let inv: Vec<u32> = (0..w.order() as u32).into_par_iter().map(|a| w.inverse(a)).collect();
        let gens = (0..w.generators.len()).map(|r| w.generator_index(r) as usize).collect();
        let id = w.index_of(&cartan::m4_identity()).unwrap() as usize;
        WeylGamma { w, conj, inv, gens, id }
    }
}

impl IndexedGammaGroup for WeylGamma<'_> {
    fn order(&self) -> usize {
        self.w.order()
    }
    fn identity(&self) -> usize {
        self.id
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.w.index_of(&m4_mul(self.w.element(a as u32), self.w.element(b as u32))).unwrap() as usize
    }
    fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    fn sigma(&self, a: usize) -> usize {
        self.conj[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// H^1 of the little Weyl group by brute force.
pub fn h1_weyl() -> IndexedH1 {
    h1_indexed(&WeylGamma::new(cartan::weyl_group()))
}

/// H^1 of the order-3^5 centralizer of the Cartan subspace.
pub fn h1_cartan_centralizer() -> Result<H1Finite, GaloisError> {
    h1_of_elements(cartan::cartan_centralizer(), &Sigma::Plain)
}

// ---------------------------------------------------------------------------
// Extensions of finite groups by tori

fn torus_involution(t: &TorusPart, sigma: &Sigma) -> Result<IMat, GaloisError> {
    t.derive_involution(sigma).ok_or_else(|| GaloisError::NeedsFiberData("the involution does not preserve the torus".into()))
}

/// H^1 of a group whose identity component is a torus. Implements two
/// patterns: component groups of odd order, and component groups of order 2
/// generated by the supplied lift.
pub fn h1_mixed(g: &GammaGroup) -> Result<Vec<CocycleClass>, GaloisError> {
    let Some(t) = &g.torus else {
        return Ok(h1_finite(g)?.classes());
    };
    let comps = g.components.unwrap_or(1);
    let s = torus_involution(t, &g.sigma)?;
    let fiber = h1_torus(&s)?;
    let mk = |reps: Vec<Mat<CycScalar>>| -> Vec<CocycleClass> {
        reps.into_iter().enumerate().map(|(k, m)| CocycleClass { representative: m, class_id: k }).collect()
    };
    if comps % 2 == 1 {
        return Ok(mk(fiber.iter().map(|v| t.at_minus_one(v)).collect()));
    }
    if comps != 2 || g.generators.len() != 1 {
        return Err(GaloisError::NeedsFiberData(format!("component group of order {comps}")));
    }
    if fiber.len() != 1 {
        return Err(GaloisError::NeedsFiberData("torus fiber over [1] is not a single class".into()));
    }
    // lift of the nontrivial component that is a cocycle
    let c = &g.generators[0];
    let id = Mat::identity(g.dim);
    let lift = fiber_lifts(t, c).into_iter().find(|x| x.mul(&g.sigma.apply(x)) == id);
    let Some(lift) = lift else {
        return Err(GaloisError::NeedsFiberData("no cocycle among the 2-torsion lifts of the component".into()));
    };
    let twisted = g.sigma.conjugated_by(&lift).ok_or(GaloisError::NotCocycle)?;
    let s2 = torus_involution(t, &twisted)?;
    let fiber2 = h1_torus(&s2)?;
    if fiber2.len() != 1 {
        return Err(GaloisError::NeedsFiberData("twisted torus fiber is not a single class".into()));
    }
    Ok(mk(vec![id, lift]))
}

fn fiber_lifts(t: &TorusPart, c: &Mat<CycScalar>) -> Vec<Mat<CycScalar>> {
    let r = t.rank;
    (0..1u32 << r)
        .map(|bits| {
            let v: Vec<i64> = (0..r).map(|k| i64::from(bits >> k & 1)).collect();
            c.mul(&t.at_minus_one(&v))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct H2Group {
    /// Representatives of Z^2 / B^2, neutral first.
    pub representatives: Vec<Mat<CycScalar>>,
}

impl H2Group {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }
}

/// H^2 = A^Gamma / {a sigma(a)} of an abelian Gamma-group (finite or torus).
pub fn h2_abelian(g: &GammaGroup) -> Result<H2Group, GaloisError> {
    match (&g.torus, g.generators.is_empty()) {
        (Some(t), true) => {
            let s = torus_involution(t, &g.sigma)?;
            Ok(H2Group { representatives: h2_torus(&s)?.iter().map(|v| t.at_minus_one(v)).collect() })
        }
        (None, _) => {
            let group = FiniteGroup::closure(&g.generators, &g.sigma, g.dim, FINITE_BOUND)?;
            let n = group.order();
            for a in 0..n {
                for &b in &group.gens {
                    if group.mul(a, b) != group.mul(b, a) {
                        return Err(GaloisError::NotAbelian);
                    }
                }
            }
            let fixed: Vec<usize> = (0..n).filter(|&a| group.sigma(a) == a).collect();
            let norms: std::collections::HashSet<usize> = (0..n).map(|a| group.mul(a, group.sigma(a))).collect();
            let mut covered: std::collections::HashSet<usize> = std::collections::HashSet::new();
            let mut reps = Vec::new();
            for &z in &fixed {
                if covered.contains(&z) {
                    continue;
                }
                for &b in &norms {
                    covered.insert(group.mul(z, b));
                }
                reps.push(group.elements[z].clone());
            }
            Ok(H2Group { representatives: reps })
        }
        _ => Err(GaloisError::Unsupported("H^2 of a torus with a nontrivial finite part".into())),
    }
}

/// Class of d in H^2 of a torus with involution sigma_star on cocharacters,
/// d given by its torus parameters. Returns a real character negative on d
/// (an obstruction certificate) or None when [d] = 1.
pub fn h2_torus_obstruction(sigma_star: &IMat, d: &[CycScalar]) -> Result<Option<Vec<i64>>, GaloisError> {
    let r = check_involution(sigma_star)?;
    // characters m with chi_m o sigma = conj o chi_m: (S^T - 1) m = 0
    let st = transpose(sigma_star, r);
    let chars = integer_kernel(&imat_add_scalar(&st, -1), r);
    for m in chars {
        let mut val = CycScalar::one();
        for (x, e) in d.iter().zip(&m) {
            if *e != 0 {
                val = &val * &int_pow(x, *e);
            }
        }
        match val.sign_real() {
            Some(-1) => return Ok(Some(m)),
            Some(_) => {}
            None => return Err(GaloisError::NotCocycle),
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Cocycles in SL(9)

fn re(z: &CycScalar) -> CycScalar {
    &(z + &z.conj()) * &CycScalar::from_frac(1, 2)
}

fn im(z: &CycScalar) -> CycScalar {
    // (z - conj z) / (2i)
    &(z - &z.conj()) * &(&CycScalar::i() * &CycScalar::from_frac(-1, 2))
}

/// Real basis of {g : conj(g) = g a}.
pub fn cocycle_solution_space(a: &Mat<CycScalar>) -> Vec<Mat<CycScalar>> {
    let n = a.rows;
    let nn = n * n;
    // vec(g a)_{(j,k)} = sum_l g_{jl} a_{lk}
    let mut m: Mat<CycScalar> = Mat::zeros(2 * nn, 2 * nn);
    for j in 0..n {
        for k in 0..n {
            let row = j * n + k;
            for l in 0..n {
                let col = j * n + l;
                let alk = a.get(l, k);
                if alk.is_zero() {
                    continue;
                }
                let (ar, ai) = (re(alk), im(alk));
                // real part: x - (Ar x - Ai y) = 0 ; imaginary: -y - (Ai x + Ar y) = 0
                m.set(row, col, &m.get(row, col).clone() - &ar);
                m.set(row, nn + col, &m.get(row, nn + col).clone() + &ai);
                m.set(nn + row, col, &m.get(nn + row, col).clone() - &ai);
                m.set(nn + row, nn + col, &m.get(nn + row, nn + col).clone() - &ar);
            }
            let one = CycScalar::one();
            m.set(row, row, &m.get(row, row).clone() + &one);
            m.set(nn + row, nn + row, &m.get(nn + row, nn + row).clone() - &one);
        }
    }
    m.kernel()
        .into_iter()
        .map(|v| Mat::from_fn(n, n, |r, c| &v[r * n + c] + &(&CycScalar::i() * &v[nn + r * n + c])))
        .collect()
}

/// g with g^-1 conj(g) = a and det g = 1, by seeded search over small
/// integer combinations of a real basis of solutions.
pub fn solve_cocycle_sl9(a: &Mat<CycScalar>, seed: u64) -> Result<Mat<CycScalar>, GaloisError> {
    let n = a.rows;
    let id = Mat::identity(n);
    if a.mul(&conj_mat(a)) != id {
        return Err(GaloisError::NotCocycle);
    }
    if *a == id {
        return Ok(id);
    }
    let basis = cocycle_solution_space(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const TRIES: usize = 400;
    for attempt in 0..TRIES {
        // sparse first: up to 9 basis elements, then wider combinations
        let size = if attempt < 300 { 2 + attempt % 8 } else { 9 << (attempt % 3) }.min(basis.len());
        let mut g = Mat::zeros(n, n);
        for _ in 0..size {
            let b = &basis[rng.gen_range(0..basis.len())];
            let mut c: i64 = rng.gen_range(-3..=3);
            if c == 0 {
                c = 1;
            }
            g = g.add(&b.scale(&CycScalar::from_i64(c)));
        }
        let det = g.det();
        if det.is_zero() {
            continue;
        }
        // det g is real; a real diagonal factor on the left keeps conj(g) = g a
        let Ok(dinv) = det.inv() else { continue };
        if !dinv.is_real() {
            continue;
        }
        let mut d = Mat::identity(n);
        d.set(0, 0, dinv);
        let g = d.mul(&g);
        debug_assert!(g.det().is_one());
        if g.inverse().map(|gi| gi.mul(&conj_mat(&g))) == Some(a.clone()) {
            return Ok(g);
        }
    }
    Err(GaloisError::Budget { tries: TRIES, basis_dim: basis.len() })
}

/// Real orbit representatives g.base for g^-1 conj(g) = c, one per class.
/// `base` must be real and fixed by each class representative.
pub fn real_orbit_reps(base: &Trivector, classes: &[CocycleClass], seed: u64) -> Result<Vec<Trivector>, GaloisError> {
    let mut out = Vec::new();
    for c in classes {
        if trivector::wedge_action_unchecked(&c.representative, base) != *base {
            return Err(GaloisError::NotCocycle);
        }
        let g = solve_cocycle_sl9(&c.representative, seed)?;
        let y = trivector::wedge_action_unchecked(&g, base);
        debug_assert!(y.is_real());
        out.push(y);
    }
    Ok(out)
}

/// Bounded search over torus points with coordinates in the 12th roots of
/// unity, optionally multiplied by elements of the finite part.
#[derive(Clone, Debug)]
pub struct WitnessSearch {
    pub roots_of_unity: u32,
    pub max_candidates: usize,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch { roots_of_unity: 12, max_candidates: 200_000 }
    }
}

fn roots_of_unity(k: u32) -> Vec<CycScalar> {
    assert!(12 % k == 0, "only divisors of 12 are available");
    let z = CycScalar::zeta12().pow(12 / k);
    (0..k).map(|j| z.pow(j)).collect()
}

/// Torus parameters on the grid, in a fixed order.
fn torus_grid(rank: usize, search: &WitnessSearch) -> impl Iterator<Item = Vec<CycScalar>> {
    let roots = roots_of_unity(search.roots_of_unity);
    let k = roots.len();
    let total = k.checked_pow(rank as u32).unwrap_or(usize::MAX).min(search.max_candidates);
    (0..total).map(move |mut code| {
        (0..rank)
            .map(|_| {
                let r = roots[code % k].clone();
                code /= k;
                r
            })
            .collect()
    })
}

fn diag_act(d: &[CycScalar], x: &Trivector) -> Trivector {
    let tr = trivector::triples();
    let mut out = Trivector::zero();
    for (k, c) in x.support() {
        let [a, b, cc] = tr[k];
        let f = &(&d[a - 1] * &d[b - 1]) * &d[cc - 1];
        let [a, b, cc] = [a, b, cc];
        out = out.add(&Trivector::basis(a, b, cc).scale(&(c * &f)));
    }
    out
}

/// a in the torus with a c = sigma(a), by grid search.
pub fn twisted_coboundary(
    torus: &TorusPart,
    sigma: &Sigma,
    c: &Mat<CycScalar>,
    search: &WitnessSearch,
) -> Result<Mat<CycScalar>, GaloisError> {
    for params in torus_grid(torus.rank, search) {
        let a = torus.element(&params);
        if a.mul(c) == sigma.apply(&a) {
            return Ok(a);
        }
    }
    Err(GaloisError::WitnessNotFound { step: 0, what: "a with a c = sigma(a)".into() })
}

/// Representatives g0 a.e, one per class, where g0^-1 conj(g0) is the twist
/// of `sigma` and a c = sigma(a) with a in `torus`.
pub fn twisted_orbit_reps(
    torus: &TorusPart,
    sigma: &Sigma,
    e: &Trivector,
    g0: &Mat<CycScalar>,
    classes: &[CocycleClass],
    search: &WitnessSearch,
) -> Result<Vec<Trivector>, GaloisError> {
    let mut out = Vec::new();
    for c in classes {
        let a = twisted_coboundary(torus, sigma, &c.representative, search)?;
        out.push(trivector::wedge_action_unchecked(&g0.mul(&a), e));
    }
    Ok(out)
}

/// z(q) intersected with g1, as trivectors.
pub fn centralizer_in_g1(q: &Trivector) -> Vec<Trivector> {
    let alg = algebra();
    let qa = alg.g1_iso(q);
    let tr = trivector::triples();
    let cols: Vec<_> = tr.iter().map(|&[a, b, c]| alg.bracket(&qa, &alg.g1_iso(&Trivector::basis(a, b, c)))).collect();
    let m = Mat::from_fn(cols[0].coords.len(), cols.len(), |r, c| cols[c].coords[r].clone());
    m.kernel().into_iter().map(|k| Trivector { coeffs: k }).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum RealPoint {
    /// y = u.e with mu(y) = y.
    Point { y: Trivector, h0: Mat<CycScalar>, d: Mat<CycScalar> },
    /// [d] nontrivial in H^2, certified by a real character negative on d.
    Obstruction { d: Mat<CycScalar>, character: Vec<i64> },
}

/// The H^2 method for a mu-fixed point in the H-orbit of e, where H is the
/// torus part of `h` with the involution tau = sigma of `h` and mu(x) = n conj(x).
pub fn real_point_via_h2(e: &Trivector, h: &GammaGroup, search: &WitnessSearch) -> Result<RealPoint, GaloisError> {
    let t = h.torus.as_ref().ok_or_else(|| GaloisError::Unsupported("H must have a torus part".into()))?;
    let tau = &h.sigma;
    let mu_e = tau.apply_trivector(e);
    // step 1: h0 with mu(e) = h0^-1 e
    let p0 = torus_grid(t.rank, search)
        .find(|p| diag_act(&t.diagonal(p), &mu_e) == *e)
        .ok_or_else(|| GaloisError::WitnessNotFound { step: 1, what: "h0 with h0.mu(e) = e".into() })?;
    let h0 = t.element(&p0);
    // steps 2 and 3: C = Z_H(e), nu = Ad(h0) tau, d = h0 tau(h0)
    let d = h0.mul(&tau.apply(&h0));
    let s = torus_involution(t, tau)?;
    let dp: Vec<CycScalar> = {
        // parameters of d: p0 * conj(p0)^S
        (0..t.rank)
            .map(|k| {
                let mut acc = p0[k].clone();
                for j in 0..t.rank {
                    if s[k][j] != 0 {
                        acc = &acc * &int_pow(&p0[j].conj(), s[k][j]);
                    }
                }
                acc
            })
            .collect()
    };
    if t.element(&dp) != d {
        return Err(GaloisError::Unsupported("tau(h0) does not match the stated torus involution".into()));
    }
    let weights = t.weights_on(e);
    let lattice = integer_kernel(&weights, t.rank);
    let nu_full = torus_involution(t, &tau.conjugated_by(&h0).ok_or(GaloisError::NotCocycle)?)?;
    // characters of C fixed by nu: m orthogonal to (nu - 1) L
    let moved: IMat = lattice.iter().map(|l| imat_vec(&imat_add_scalar(&nu_full, -1), l)).collect();
    let chars = integer_kernel(&moved, t.rank);
    for m in &chars {
        let mut val = CycScalar::one();
        for (x, k) in dp.iter().zip(m) {
            if *k != 0 {
                val = &val * &int_pow(x, *k);
            }
        }
        if val.sign_real() == Some(-1) {
            return Ok(RealPoint::Obstruction { d, character: m.clone() });
        }
    }
    // step 4: c in C with c nu(c) d = 1
    let id = Mat::identity(h.dim);
    let nu = |c: &Mat<CycScalar>| h0.mul(&tau.apply(c)).mul(&h0.inverse().unwrap());
    let c = torus_grid(t.rank, search)
        .map(|p| t.element(&p))
        .find(|c| diag_act(&(0..h.dim).map(|i| c.get(i, i).clone()).collect::<Vec<_>>(), e) == *e && c.mul(&nu(c)).mul(&d) == id)
        .ok_or_else(|| GaloisError::WitnessNotFound { step: 4, what: "c with c nu(c) d = 1".into() })?;
    let h1 = c.mul(&h0);
    // step 5: u with u h1 tau(u)^-1 = 1
    let u = torus_grid(t.rank, search)
        .map(|p| t.element(&p))
        .find(|u| u.mul(&h1) == tau.apply(u))
        .ok_or_else(|| GaloisError::WitnessNotFound { step: 5, what: "u with u h1 = tau(u)".into() })?;
    let y = trivector::wedge_action_unchecked(&u, e);
    if tau.apply_trivector(&y) != y {
        return Err(GaloisError::WitnessNotFound { step: 5, what: "u.e is not mu-fixed".into() });
    }
    Ok(RealPoint::Point { y, h0, d })
}

/// Candidates u (in u_+), i u (u in u_-) and u1 + i u2 that are mu-fixed
/// and nilpotent, for mu(x) = n conj(x) on the real points of a subspace.
pub fn mu_fixed_search(n: &Mat<CycScalar>, subspace: &[Trivector], bound: i64) -> Vec<Trivector> {
    let real_span = {
        let mut vs: Vec<Vec<CycScalar>> = Vec::new();
        for b in subspace {
            vs.push(b.coeffs.iter().map(re).collect());
            vs.push(b.coeffs.iter().map(im).collect());
        }
        let ech = Mat::from_rows(vs).rref();
        (0..ech.pivots.len()).map(|r| Trivector { coeffs: ech.mat.row(r).to_vec() }).collect::<Vec<_>>()
    };
    let eigen = |sign: i64| -> Vec<Trivector> {
        if real_span.is_empty() {
            return Vec::new();
        }
        let cols: Vec<Trivector> = real_span
            .iter()
            .map(|r| trivector::wedge_action_unchecked(n, r).sub(&r.scale(&CycScalar::from_i64(sign))))
            .collect();
        let m = Mat::from_fn(trivector::NTRIPLES, cols.len(), |row, c| cols[c].coeffs[row].clone());
        m.kernel()
            .into_iter()
            .map(|k| {
                let mut acc = Trivector::zero();
                for (c, r) in k.iter().zip(&real_span) {
                    acc = acc.add(&r.scale(c));
                }
                acc
            })
            .collect()
    };
    let plus = eigen(1);
    let minus = eigen(-1);
    let combos = |basis: &[Trivector]| -> Vec<Trivector> {
        let k = basis.len();
        let width = (2 * bound + 1) as usize;
        let total = width.checked_pow(k as u32).unwrap_or(usize::MAX).min(20_000);
        (1..total)
            .map(|mut code| {
                let mut acc = Trivector::zero();
                for b in basis {
                    let c = (code % width) as i64 - bound;
                    code /= width;
                    if c != 0 {
                        acc = acc.add(&b.scale(&CycScalar::from_i64(c)));
                    }
                }
                acc
            })
            .filter(|x| !x.is_zero())
            .collect()
    };
    let pc = combos(&plus);
    let mc: Vec<Trivector> = combos(&minus).into_iter().map(|x| x.scale(&CycScalar::i())).collect();
    let mut cands: Vec<Trivector> = pc.clone();
    cands.extend(mc.iter().cloned());
    for a in &pc {
        for b in &mc {
            cands.push(a.add(b));
        }
    }
    let mu = |x: &Trivector| trivector::wedge_action_unchecked(n, &x.conj());
    let alg = algebra();
    let mut out: Vec<Trivector> = cands
        .into_par_iter()
        .filter(|x| mu(x) == *x && classify::is_nilpotent(&alg.g1_iso(x)))
        .collect();
    out.dedup();
    out
}
