//! Semisimple/nilpotent typing, homogeneous Jordan decomposition, sl2-triples,
//! characteristics and stabilizer algebras for elements of g1.
//!
//! Decisions are made by exact certificates:
//! * e is nilpotent iff [h, e] = 2e has a solution h (graded Jacobson-Morozov
//!   in one direction, an eigenvalue shift argument in the other);
//! * x is semisimple iff the Killing form is nondegenerate on the centralizer
//!   of x (a nonzero nilpotent part would lie in its radical).
//!
//! The Jordan decomposition itself is found modulo word-size primes and then
//! certified with both tests above.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::e8::{algebra, AlgElement, GradedAlgebra, DIM, RANK};
use crate::field::{rational_roots, Mat};
use crate::modular::{self, embed, from_embeddings, poly, primes, reconstruct_cyc, zeta12_roots, Crt};
use crate::scalar::CycScalar;
use crate::trivector::{self, Trivector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("element is not homogeneous of degree 1")]
    NotInG1,
    #[error("no homogeneous sl2-triple through this element")]
    NoTriple,
    #[error("eigenvalues are not rational")]
    NonRational,
    #[error("modular reconstruction did not stabilize")]
    Reconstruction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Zero,
    Nilpotent,
    Semisimple,
    Mixed,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Zero => "zero",
            Kind::Nilpotent => "nilpotent",
            Kind::Semisimple => "semisimple",
            Kind::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub h: AlgElement,
    pub e: AlgElement,
    pub f: AlgElement,
}

impl Sl2Triple {
    pub fn check(&self, alg: &GradedAlgebra) -> bool {
        let two = CycScalar::from_i64(2);
        alg.bracket(&self.e, &self.f) == self.h
            && alg.bracket(&self.h, &self.e) == self.e.scale(&two)
            && alg.bracket(&self.h, &self.f) == self.f.scale(&-two)
            && self.h.support().all(|(i, _)| alg.basis_degree(i) == 0)
            && self.e.support().all(|(i, _)| alg.basis_degree(i) == 1)
            && self.f.support().all(|(i, _)| alg.basis_degree(i) == -1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyReport {
    pub kind: Kind,
    pub semisimple_part: Trivector,
    pub nilpotent_part: Trivector,
    pub rank: usize,
    pub orbit_dim: usize,
    pub characteristic: Option<[i64; 8]>,
    pub stabilizer_dim: usize,
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "dim: {}", self.orbit_dim)?;
        writeln!(f, "stabilizer_dim: {}", self.stabilizer_dim)?;
        if let Some(c) = &self.characteristic {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            writeln!(f, "characteristic: {}", s.join(" "))?;
        }
        writeln!(f, "semisimple_part: {}", self.semisimple_part)?;
        write!(f, "nilpotent_part: {}", self.nilpotent_part)
    }
}

pub(crate) fn basis_of_degree(alg: &GradedAlgebra, d: i8) -> &[usize] {
    match d {
        -1 => &alg.g_minus,
        0 => &alg.g0,
        _ => &alg.g1,
    }
}

fn wrap(d: i8) -> i8 {
    ((d + 4) % 3) - 1
}

/// Matrix of ad x restricted to g_from, with values in g_to.
pub(crate) fn ad_block(alg: &GradedAlgebra, x: &AlgElement, from: &[usize], to: &[usize]) -> Mat<CycScalar> {
    let mut pos = vec![usize::MAX; DIM];
    for (r, &b) in to.iter().enumerate() {
        pos[b] = r;
    }
    let mut m = Mat::zeros(to.len(), from.len());
    for (i, a) in x.support() {
        for (c, &j) in from.iter().enumerate() {
            for &(k, coef) in alg.bracket_basis(i, j) {
                let r = pos[k as usize];
                assert!(r != usize::MAX, "bracket leaves the target block");
                let v = m.get(r, c) + &(a * &CycScalar::from_i64(coef as i64));
                m.set(r, c, v);
            }
        }
    }
    m
}

pub(crate) fn lift(idx: &[usize], v: &[CycScalar]) -> AlgElement {
    let mut x = AlgElement::zero();
    for (&i, c) in idx.iter().zip(v) {
        x.coords[i] = c.clone();
    }
    x
}

fn restrict(x: &AlgElement, idx: &[usize]) -> Vec<CycScalar> {
    idx.iter().map(|&i| x.coords[i].clone()).collect()
}

/// Basis of the centralizer z_g(x).
pub fn centralizer(x: &AlgElement) -> Vec<AlgElement> {
    let alg = algebra();
    match x.degree(alg) {
        None if x.is_zero() => (0..DIM).map(AlgElement::basis).collect(),
        Some(d) => {
            let mut out = Vec::new();
            for e in [-1i8, 0, 1] {
                let from = basis_of_degree(alg, e);
                let to = basis_of_degree(alg, wrap(e + d));
                for v in ad_block(alg, x, from, to).kernel() {
                    out.push(lift(from, &v));
                }
            }
            out
        }
        None => {
            let all: Vec<usize> = (0..DIM).collect();
            alg.ad_matrix(x).kernel().into_iter().map(|v| lift(&all, &v)).collect()
        }
    }
}

fn gram(alg: &GradedAlgebra, basis: &[AlgElement]) -> Mat<CycScalar> {
    let n = basis.len();
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = alg.killing(&basis[i], &basis[j]);
            g.set(j, i, v.clone());
            g.set(i, j, v);
        }
    }
    g
}

/// Exact semisimplicity test: the Killing form is nondegenerate on z_g(x).
pub fn is_semisimple(x: &AlgElement) -> bool {
    if x.is_zero() {
        return true;
    }
    let alg = algebra();
    let z = centralizer(x);
    gram(alg, &z).rank() == z.len()
}

/// An h with [h, x] = 2x, taken in g0 when x is homogeneous.
pub fn nilpotency_certificate(x: &AlgElement) -> Option<AlgElement> {
    let alg = algebra();
    if x.is_zero() {
        return Some(AlgElement::zero());
    }
    let (from, to): (Vec<usize>, Vec<usize>) = match x.degree(alg) {
        Some(d) => (alg.g0.clone(), basis_of_degree(alg, d).to_vec()),
        None => ((0..DIM).collect(), (0..DIM).collect()),
    };
    // [x, h] = -2x
    let m = ad_block(alg, x, &from, &to);
    let rhs: Vec<CycScalar> = restrict(x, &to).iter().map(|c| c * &CycScalar::from_i64(-2)).collect();
    m.solve(&rhs).map(|h| lift(&from, &h))
}

pub fn is_nilpotent(x: &AlgElement) -> bool {
    nilpotency_certificate(x).is_some()
}

/// The element h0 of the Cartan subalgebra with alpha(h0) = height(alpha).
fn rho_coweight(alg: &GradedAlgebra) -> Vec<i64> {
    let rs = &alg.rs;
    let a = Mat::from_fn(8, 8, |i, j| {
        BigRational::from_integer(rs.inner(rs.simple_roots[i], rs.simple_roots[j]).into())
    });
    let ones = vec![BigRational::one(); 8];
    let c = a.solve(&ones).unwrap();
    c.iter().map(|q| i64::try_from(q.to_integer()).unwrap()).collect()
}

struct ModAd {
    n: usize,
    p: u64,
    mat: Vec<u64>,
}

impl ModAd {
    fn new(alg: &GradedAlgebra, x: &[(usize, u64)], p: u64) -> Self {
        let n = DIM;
        let mut mat = vec![0u64; n * n];
        for &(i, a) in x {
            for j in 0..n {
                for &(k, c) in alg.bracket_basis(i, j) {
                    let c = (c as i64).rem_euclid(p as i64) as u64;
                    let idx = k as usize * n + j;
                    mat[idx] = (mat[idx] + modular::mul_mod(a, c, p)) % p;
                }
            }
        }
        ModAd { n, p, mat }
    }

    fn apply(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        (0..self.n)
            .map(|i| {
                let row = &self.mat[i * self.n..(i + 1) * self.n];
                let mut acc: u128 = 0;
                for (a, b) in row.iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc += *a as u128 * *b as u128;
                    }
                }
                (acc % p) as u64
            })
            .collect()
    }

    /// Krylov vectors A^k v (k < deg) and the minimal polynomial of v.
    fn krylov(&self, v: &[u64]) -> (Vec<Vec<u64>>, Vec<u64>) {
        let p = self.p;
        let mut basis: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
        let mut kry = Vec::new();
        let mut cur = v.to_vec();
        for k in 0..=self.n {
            let mut r = cur.clone();
            let mut combo = vec![0u64; k + 1];
            combo[k] = 1;
            for (piv, b, c) in &basis {
                let f = r[*piv];
                if f == 0 {
                    continue;
                }
                for (x, y) in r.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = (*x + p - modular::mul_mod(f, *y, p)) % p;
                    }
                }
                for (x, y) in combo.iter_mut().zip(c) {
                    if *y != 0 {
                        *x = (*x + p - modular::mul_mod(f, *y, p)) % p;
                    }
                }
            }
            match r.iter().position(|x| *x != 0) {
                None => return (kry, combo),
                Some(piv) => {
                    let inv = modular::inv_mod(r[piv], p);
                    r.iter_mut().for_each(|x| *x = modular::mul_mod(*x, inv, p));
                    combo.iter_mut().for_each(|x| *x = modular::mul_mod(*x, inv, p));
                    basis.push((piv, r, combo));
                }
            }
            let next = self.apply(&cur);
            kry.push(std::mem::replace(&mut cur, next));
        }
        unreachable!("Krylov space exceeds the dimension")
    }
}

fn embed_element(x: &AlgElement, p: u64, roots: &[u64; 4]) -> Option<Vec<(usize, [u64; 4])>> {
    x.support().map(|(i, c)| embed(c, p, roots).map(|v| (i, v))).collect()
}

/// Semisimple part of x in g1 at one embedding modulo p.
fn semisimple_part_mod(alg: &GradedAlgebra, x: &[(usize, u64)], p: u64, h0: &[u64]) -> Option<Vec<u64>> {
    let ad = ModAd::new(alg, x, p);
    let (kry, mu) = ad.krylov(h0);
    let q = poly::jordan_chevalley(&mu, p)?;
    let mut w = vec![0u64; DIM];
    for (j, &c) in q.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (a, b) in w.iter_mut().zip(&kry[j]) {
            *a = (*a + modular::mul_mod(c, *b, p)) % p;
        }
    }
    // w = [x_s, h0] = -height * x_s on g1
    let mut out = Vec::with_capacity(alg.g1.len());
    for i in 0..DIM {
        if alg.basis_degree(i) != 1 && w[i] != 0 {
            return None;
        }
    }
    for &b in &alg.g1 {
        let ht = alg.rs.height[b - RANK];
        let hinv = modular::inv_mod((ht as i64).rem_euclid(p as i64) as u64, p);
        out.push((p - modular::mul_mod(w[b], hinv, p)) % p);
    }
    Some(out)
}

/// Homogeneous Jordan decomposition x = x_s + x_n of an element of g1.
pub fn jordan_decompose(x: &AlgElement) -> Result<(AlgElement, AlgElement), ClassifyError> {
    let alg = algebra();
    if x.is_zero() {
        return Ok((AlgElement::zero(), AlgElement::zero()));
    }
    if x.degree(alg) != Some(1) {
        return Err(ClassifyError::NotInG1);
    }
    if is_nilpotent(x) {
        return Ok((AlgElement::zero(), x.clone()));
    }
    let rational = x.support().all(|(_, c)| c.is_rational());
    let coweight = rho_coweight(alg);
    let mut crt = Crt::new(alg.g1.len() * 4);
    let mut last: Option<Vec<CycScalar>> = None;
    for p in primes(80) {
        let roots = zeta12_roots(p);
        let Some(xe) = embed_element(x, p, &roots) else { continue };
        let h0: Vec<u64> = (0..DIM)
            .map(|i| if i < RANK { coweight[i].rem_euclid(p as i64) as u64 } else { 0 })
            .collect();
        let nemb = if rational { 1 } else { 4 };
        let mut per_emb = Vec::with_capacity(nemb);
        for k in 0..nemb {
            let xk: Vec<(usize, u64)> = xe.iter().map(|(i, v)| (*i, v[k])).collect();
            match semisimple_part_mod(alg, &xk, p, &h0) {
                Some(v) => per_emb.push(v),
                None => break,
            }
        }
        if per_emb.len() != nemb {
            continue;
        }
        let mut flat = Vec::with_capacity(alg.g1.len() * 4);
        for j in 0..alg.g1.len() {
            if rational {
                flat.extend([per_emb[0][j], 0, 0, 0]);
            } else {
                let vals = [per_emb[0][j], per_emb[1][j], per_emb[2][j], per_emb[3][j]];
                flat.extend(from_embeddings(vals, roots, p));
            }
        }
        crt.add_prime(p, &flat);
        let Some(cand) = reconstruct_cyc(&crt) else { continue };
        if last.as_ref() == Some(&cand) {
            let xs = lift(&alg.g1, &cand);
            let xn = x.sub(&xs);
            if alg.bracket(&xs, &xn).is_zero() && is_nilpotent(&xn) && is_semisimple(&xs) {
                return Ok((xs, xn));
            }
        }
        last = Some(cand);
    }
    Err(ClassifyError::Reconstruction)
}

/// Minimal polynomial of ad x (low to high), from local minimal polynomials
/// of several pseudo-random vectors modulo primes; confirmed at one further
/// prime. Typing decisions never rely on it.
pub fn min_poly(x: &AlgElement) -> Result<Vec<CycScalar>, ClassifyError> {
    let alg = algebra();
    let rational = x.support().all(|(_, c)| c.is_rational());
    let mut crt: Option<Crt> = None;
    let mut last: Option<Vec<CycScalar>> = None;
    for (round, p) in primes(80).into_iter().enumerate() {
        let roots = zeta12_roots(p);
        let Some(xe) = embed_element(x, p, &roots) else { continue };
        let nemb = if rational { 1 } else { 4 };
        let mut polys = Vec::new();
        for k in 0..nemb {
            let xk: Vec<(usize, u64)> = xe.iter().map(|(i, v)| (*i, v[k])).collect();
            let ad = ModAd::new(alg, &xk, p);
            let mut m = vec![1u64];
            for s in 0..3u64 {
                let v: Vec<u64> = (0..DIM as u64)
                    .map(|i| (i * 7919 + s * 104729 + round as u64 * 31 + 1).pow(2) % p)
                    .collect();
                let (_, mu) = ad.krylov(&v);
                let g = poly::gcd(&m, &mu, p);
                m = poly::divrem(&poly::mul(&m, &mu, p), &g, p).0;
            }
            polys.push(poly::monic(&m, p));
        }
        let deg = polys[0].len();
        if polys.iter().any(|q| q.len() != deg) {
            continue;
        }
        let mut flat = Vec::with_capacity(deg * 4);
        for j in 0..deg {
            if rational {
                flat.extend([polys[0][j], 0, 0, 0]);
            } else {
                flat.extend(from_embeddings([polys[0][j], polys[1][j], polys[2][j], polys[3][j]], roots, p));
            }
        }
        let c = crt.get_or_insert_with(|| Crt::new(deg * 4));
        if c.residues.len() != deg * 4 {
            // degree changed: start over at this prime
            *c = Crt::new(deg * 4);
            last = None;
        }
        c.add_prime(p, &flat);
        if let Some(cand) = reconstruct_cyc(c) {
            if last.as_ref() == Some(&cand) {
                return Ok(cand);
            }
            last = Some(cand);
        }
    }
    Err(ClassifyError::Reconstruction)
}

/// Homogeneous sl2-triple (h, e, f) with h in [e, g(-1)].
pub fn sl2_triple(e: &AlgElement) -> Result<Sl2Triple, ClassifyError> {
    let alg = algebra();
    let n = alg.g_minus.len();
    sl2_triple_in(e, &Mat::identity(n))
}

/// Homogeneous sl2-triple with h, f in the centralizer of the semisimple
/// element p (which must commute with e).
pub fn sl2_triple_centralizing(e: &AlgElement, p: &AlgElement) -> Result<Sl2Triple, ClassifyError> {
    let alg = algebra();
    if p.is_zero() {
        return sl2_triple(e);
    }
    let k = ad_block(alg, p, &alg.g_minus, &alg.g0).kernel();
    if k.is_empty() {
        return Err(ClassifyError::NoTriple);
    }
    let basis = Mat::from_fn(alg.g_minus.len(), k.len(), |r, c| k[c][r].clone());
    sl2_triple_in(e, &basis)
}

/// Triple with y and f drawn from the column span of `space` (coordinates on g(-1)).
fn sl2_triple_in(e: &AlgElement, space: &Mat<CycScalar>) -> Result<Sl2Triple, ClassifyError> {
    let alg = algebra();
    if e.is_zero() || e.degree(alg) != Some(1) {
        return Err(ClassifyError::NoTriple);
    }
    let n = alg.g_minus.len();
    // y in g(-1) with [[e, y], e] = 2e
    let mut l = Mat::zeros(alg.g1.len(), n);
    for (c, &b) in alg.g_minus.iter().enumerate() {
        let eb = alg.bracket(e, &AlgElement::basis(b));
        let v = alg.bracket(&eb, e);
        for (r, &k) in alg.g1.iter().enumerate() {
            if !v.coords[k].is_zero() {
                l.set(r, c, v.coords[k].clone());
            }
        }
    }
    let rhs: Vec<CycScalar> = restrict(e, &alg.g1).iter().map(|c| c * &CycScalar::from_i64(2)).collect();
    let y = l.mul(space).solve(&rhs).ok_or(ClassifyError::NoTriple)?;
    let h = alg.bracket(e, &lift(&alg.g_minus, &space.mul_vec(&y)));
    // f in g(-1): [e, f] = h and [h, f] + 2f = 0
    let a = ad_block(alg, e, &alg.g_minus, &alg.g0);
    let b = ad_block(alg, &h, &alg.g_minus, &alg.g_minus);
    let rows = a.rows + b.rows;
    let m = Mat::from_fn(rows, n, |r, c| {
        if r < a.rows {
            a.get(r, c).clone()
        } else {
            let mut v = b.get(r - a.rows, c).clone();
            if r - a.rows == c {
                v += &CycScalar::from_i64(2);
            }
            v
        }
    });
    let mut rhs = restrict(&h, &alg.g0);
    rhs.extend(std::iter::repeat_n(CycScalar::zero(), b.rows));
    let f = m.mul(space).solve(&rhs).ok_or(ClassifyError::NoTriple)?;
    let t = Sl2Triple {
        h,
        e: e.clone(),
        f: lift(&alg.g_minus, &space.mul_vec(&f)),
    };
    debug_assert!(t.check(alg));
    Ok(t)
}

/// Simple-root values of the dominant diagonal form of psi^-1(h).
pub fn characteristic(h: &AlgElement) -> Result<[i64; 8], ClassifyError> {
    let alg = algebra();
    let x = alg.psi_inv(h).map_err(|_| ClassifyError::NonRational)?;
    let cp: Option<Vec<BigRational>> = x.charpoly().iter().map(|c| c.to_rational()).collect();
    let cp = cp.ok_or(ClassifyError::NonRational)?;
    let mut ev = rational_roots(&cp).ok_or(ClassifyError::NonRational)?;
    ev.sort_by(|a, b| b.cmp(a));
    let mut out = [0i64; 8];
    for k in 0..8 {
        let d = &ev[k] - &ev[k + 1];
        if !d.is_integer() {
            return Err(ClassifyError::NonRational);
        }
        out[k] = i64::try_from(d.to_integer()).map_err(|_| ClassifyError::NonRational)?;
    }
    Ok(out)
}

/// Basis (as elements of g0) of {X in sl9 : [psi X, x] = 0 for all x in xs}.
pub fn stabilizer_algebra(xs: &[AlgElement]) -> Vec<AlgElement> {
    let alg = algebra();
    let all: Vec<usize> = (0..DIM).collect();
    let mut blocks = Vec::new();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        match x.degree(alg) {
            // [b, x] = -[x, b]; the sign does not change the kernel
            Some(d) => blocks.push(ad_block(alg, x, &alg.g0, basis_of_degree(alg, d))),
            None => blocks.push(ad_block(alg, x, &alg.g0, &all)),
        }
    }
    if blocks.is_empty() {
        return alg.g0.iter().map(|&i| AlgElement::basis(i)).collect();
    }
    let rows: usize = blocks.iter().map(|b| b.rows).sum();
    let mut m = Mat::zeros(rows, alg.g0.len());
    let mut r0 = 0;
    for b in &blocks {
        for r in 0..b.rows {
            for c in 0..b.cols {
                let v = b.get(r, c);
                if !v.is_zero() {
                    m.set(r0 + r, c, v.clone());
                }
            }
        }
        r0 += b.rows;
    }
    m.kernel().into_iter().map(|v| lift(&alg.g0, &v)).collect()
}

pub fn orbit_dimension(x: &AlgElement) -> usize {
    algebra().g0.len() - stabilizer_algebra(std::slice::from_ref(x)).len()
}

/// Signature (positive, negative, null) of the Killing form of g restricted
/// to the real span of a basis with real coordinates.
pub fn killing_signature(basis: &[AlgElement]) -> Option<(usize, usize, usize)> {
    let alg = algebra();
    let g = gram(alg, basis);
    real_signature(g)
}

/// Signature of a real symmetric matrix over Q(sqrt3) by congruence.
pub fn real_signature(mut g: Mat<CycScalar>) -> Option<(usize, usize, usize)> {
    let n = g.rows;
    let (mut pos, mut neg, mut null) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let _ = first;
        // a nonzero diagonal pivot, or make one from an off-diagonal entry
        let piv = active.iter().copied().find(|&i| !g.get(i, i).is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !g.get(i, j).is_zero());
                match pair {
                    None => {
                        null += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // row/col i += row/col j
                        for k in 0..n {
                            let v = g.get(i, k) + g.get(j, k);
                            g.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = g.get(k, i) + g.get(k, j);
                            g.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let d = g.get(piv, piv).clone();
        match d.sign_real()? {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!(),
        }
        let dinv = d.inv().ok()?;
        active.retain(|&i| i != piv);
        for &i in &active {
            let f = g.get(i, piv) * &dinv;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = g.get(i, j) - &(&f * g.get(piv, j));
                g.set(i, j, v);
            }
        }
    }
    Some((pos, neg, null))
}

/// Full typing report for a trivector.
pub fn classify(t: &Trivector) -> Result<ClassifyReport, ClassifyError> {
    let alg = algebra();
    let x = alg.g1_iso(t);
    let (xs, xn) = jordan_decompose(&x)?;
    let kind = match (xs.is_zero(), xn.is_zero()) {
        (true, true) => Kind::Zero,
        (true, false) => Kind::Nilpotent,
        (false, true) => Kind::Semisimple,
        (false, false) => Kind::Mixed,
    };
    let characteristic = if xn.is_zero() {
        None
    } else {
        Some(characteristic(&sl2_triple(&xn)?.h)?)
    };
    let stabilizer_dim = stabilizer_algebra(std::slice::from_ref(&x)).len();
    Ok(ClassifyReport {
        kind,
        semisimple_part: alg.g1_iso_inv(&xs).unwrap(),
        nilpotent_part: alg.g1_iso_inv(&xn).unwrap(),
        rank: trivector::rank(t),
        orbit_dim: alg.g0.len() - stabilizer_dim,
        characteristic,
        stabilizer_dim,
    })
}

/// Charpoly of ad x for x in g1, via t^8 * det(t^3 - B0) with B0 the
/// restriction of (ad x)^3 to g0. Coefficients of det(s - B0), low to high.
pub fn ad_cube_charpoly(x: &AlgElement) -> Result<Vec<CycScalar>, ClassifyError> {
    let alg = algebra();
    if !x.is_zero() && x.degree(alg) != Some(1) {
        return Err(ClassifyError::NotInG1);
    }
    let a0 = ad_block(alg, x, &alg.g0, &alg.g1);
    let a1 = ad_block(alg, x, &alg.g1, &alg.g_minus);
    let am = ad_block(alg, x, &alg.g_minus, &alg.g0);
    let b0 = am.mul(&a1.mul(&a0));
    Ok(charpoly_certified(&b0))
}

/// Charpoly of a square matrix over Q(z12), computed modulo primes until the
/// modulus exceeds a Hadamard-type bound on the (denominator-cleared)
/// coefficients, so the integer lift is exact.
pub fn charpoly_certified(m: &Mat<CycScalar>) -> Vec<CycScalar> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let n = m.rows;
    // common denominator D; D*M has entries in Z[z12]
    let mut den = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            let (_, d) = m.get(i, j).numerators();
            den = den.lcm(&d);
        }
    }
    let dm = m.map(|c| c * &CycScalar::from_rational(&BigRational::from_integer(den.clone())));
    // Every conjugate of an entry sum(n_k z^k) is at most sum |n_k| < 2^(maxbits+2).
    // Each k x k principal minor is bounded by the product of its row norms
    // (Hadamard), so every coefficient is below prod_i (1 + R_i) with R_i the
    // full row norm. Power-basis coordinates are at most twice the largest
    // conjugate, and the symmetric lift needs one more bit.
    let mut log_bound = 2.0;
    for i in 0..n {
        let maxbits = (0..n)
            .map(|j| {
                let (nums, _) = dm.get(i, j).numerators();
                nums.iter().map(|x| x.bits()).max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0);
        if maxbits > 0 {
            log_bound += 1.0 + maxbits as f64 + 2.0 + 0.5 * (n as f64).log2();
        }
    }
    let mut crt = Crt::new((n + 1) * 4);
    let rational = (0..n).all(|i| (0..n).all(|j| dm.get(i, j).is_rational()));
    let mut bits = 0f64;
    for p in primes(4096) {
        let roots = zeta12_roots(p);
        let nemb = if rational { 1 } else { 4 };
        let mut polys = Vec::new();
        for k in 0..nemb {
            let mat: Vec<u64> = (0..n * n)
                .map(|idx| dm.get(idx / n, idx % n).reduce_mod(p, roots[k]).unwrap())
                .collect();
            polys.push(modular::charpoly_mod(mat, n, p));
        }
        let mut flat = Vec::with_capacity((n + 1) * 4);
        for j in 0..=n {
            if rational {
                flat.extend([polys[0][j], 0, 0, 0]);
            } else {
                flat.extend(from_embeddings([polys[0][j], polys[1][j], polys[2][j], polys[3][j]], roots, p));
            }
        }
        crt.add_prime(p, &flat);
        bits += (p as f64).log2();
        if bits > log_bound + 8.0 {
            break;
        }
    }
    let ints = crt.symmetric();
    let denq = BigRational::from_integer(den);
    (0..=n)
        .map(|j| {
            let c: [BigRational; 4] = std::array::from_fn(|k| BigRational::from_integer(ints[4 * j + k].clone()));
            // undo the scaling: coefficient of s^j carries D^(n-j)
            let scale = num_traits::pow(denq.clone(), n - j);
            CycScalar::from_power_basis(c.map(|q| q / &scale))
        })
        .collect()
}
