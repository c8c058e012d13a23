//! The E8 root system with its Z/3-grading by the A8 subsystem, a Chevalley
//! basis, the Killing form, and the identifications g0 = sl9 and g1 = third
//! exterior power of k^9.
//!
//! Roots live in Z^9 modulo the all-ones vector. Representatives are chosen
//! with coordinate sum in -4..=4, so the sum is 0 on g0-roots, 3 on g1-roots
//! and -3 on g(-1)-roots. The inner product is u.v - (sum u)(sum v)/9.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::field::Mat;
use crate::scalar::CycScalar;
use crate::trivector::{self, Trivector, NTRIPLES};

pub type Root = [i8; 9];
pub type Sl9Matrix = Mat<CycScalar>;

pub const DIM: usize = 248;
pub const RANK: usize = 8;
pub const NROOTS: usize = 240;
const NONE: u8 = u8::MAX;
const ZERO_SUM: u8 = u8::MAX - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum E8Error {
    #[error("element is not in g0")]
    NotInG0,
    #[error("element is not in g1")]
    NotInG1,
    #[error("matrix has nonzero trace")]
    NotTraceless,
    #[error("expected a 9x9 matrix")]
    Shape,
}

fn normalize(mut v: [i32; 9]) -> Root {
    let mut s: i32 = v.iter().sum();
    while s > 4 {
        v.iter_mut().for_each(|x| *x -= 1);
        s -= 9;
    }
    while s < -4 {
        v.iter_mut().for_each(|x| *x += 1);
        s += 9;
    }
    let mut out = [0i8; 9];
    for (o, x) in out.iter_mut().zip(v) {
        *o = x as i8;
    }
    out
}

fn add_roots(a: &Root, b: &Root) -> Root {
    let mut v = [0i32; 9];
    for k in 0..9 {
        v[k] = a[k] as i32 + b[k] as i32;
    }
    normalize(v)
}

fn neg_root(a: &Root) -> Root {
    let mut v = [0i32; 9];
    for k in 0..9 {
        v[k] = -(a[k] as i32);
    }
    normalize(v)
}

/// (u, v) = u.v - (sum u)(sum v)/9; integral on the root lattice.
pub fn inner(a: &Root, b: &Root) -> i32 {
    let dot: i32 = a.iter().zip(b).map(|(x, y)| *x as i32 * *y as i32).sum();
    let sa: i32 = a.iter().map(|x| *x as i32).sum();
    let sb: i32 = b.iter().map(|x| *x as i32).sum();
    dot - sa * sb / 9
}

/// eps_i - eps_j, 1-based.
pub fn eps_diff(i: usize, j: usize) -> Root {
    let mut v = [0i32; 9];
    v[i - 1] += 1;
    v[j - 1] -= 1;
    normalize(v)
}

/// eps_i + eps_j + eps_k, 1-based.
pub fn eps_triple(i: usize, j: usize, k: usize) -> Root {
    let mut v = [0i32; 9];
    v[i - 1] += 1;
    v[j - 1] += 1;
    v[k - 1] += 1;
    normalize(v)
}

pub struct GradedRootSystem {
    pub roots: Vec<Root>,
    pub degree: Vec<i8>,
    /// Coordinates in the simple roots.
    pub coords: Vec<[i32; 8]>,
    pub height: Vec<i32>,
    /// Indices of alpha_1..alpha_8.
    pub simple_roots: [usize; 8],
    /// Index of eps_8 - eps_9.
    pub a8a: usize,
    pub theta_star_orbits: Vec<[usize; 6]>,
    index: HashMap<Root, usize>,
    sum: Vec<u8>,
}

impl GradedRootSystem {
    fn build() -> Self {
        let mut all: Vec<Root> = Vec::new();
        for i in 1..=9 {
            for j in 1..=9 {
                if i != j {
                    all.push(eps_diff(i, j));
                }
            }
        }
        for t in trivector::triples() {
            let r = eps_triple(t[0], t[1], t[2]);
            all.push(r);
            all.push(neg_root(&r));
        }
        let simple: Vec<Root> = (1..=7)
            .map(|i| eps_diff(i, i + 1))
            .chain(std::iter::once(eps_triple(6, 7, 8)))
            .collect();
        let cartan = Mat::from_fn(8, 8, |i, j| {
            BigRational::from_integer(inner(&simple[i], &simple[j]).into())
        });
        let cinv = cartan.inverse().expect("Cartan matrix is invertible");
        let coords_of = |r: &Root| -> [i32; 8] {
            let mut c = [0i32; 8];
            for (i, ci) in c.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for j in 0..8 {
                    acc += cinv.get(i, j) * BigRational::from_integer(inner(r, &simple[j]).into());
                }
                assert!(acc.is_integer());
                *ci = acc.to_integer().try_into().unwrap();
            }
            c
        };
        let mut pos: Vec<(Root, [i32; 8])> = all
            .iter()
            .map(|r| (*r, coords_of(r)))
            .filter(|(_, c)| c.iter().all(|x| *x >= 0))
            .collect();
        assert_eq!(pos.len(), 120);
        pos.sort_by_key(|(_, c)| (c.iter().sum::<i32>(), *c));
        let mut roots = Vec::with_capacity(NROOTS);
        let mut coords = Vec::with_capacity(NROOTS);
        for (r, c) in &pos {
            roots.push(*r);
            coords.push(*c);
        }
        for (r, c) in &pos {
            roots.push(neg_root(r));
            coords.push(c.map(|x| -x));
        }
        let index: HashMap<Root, usize> = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let degree = roots
            .iter()
            .map(|r| (r.iter().map(|x| *x as i32).sum::<i32>() / 3) as i8)
            .collect();
        let height = coords.iter().map(|c| c.iter().sum()).collect();
        let mut sum = vec![NONE; NROOTS * NROOTS];
        for a in 0..NROOTS {
            for b in 0..NROOTS {
                let s = add_roots(&roots[a], &roots[b]);
                if s == [0; 9] {
                    sum[a * NROOTS + b] = ZERO_SUM;
                } else if let Some(&k) = index.get(&s) {
                    sum[a * NROOTS + b] = k as u8;
                }
            }
        }
        let simple_roots = std::array::from_fn(|i| index[&simple[i]]);
        let a8a = index[&eps_diff(8, 9)];
        let mut rs = GradedRootSystem {
            roots,
            degree,
            coords,
            height,
            simple_roots,
            a8a,
            theta_star_orbits: Vec::new(),
            index,
            sum,
        };
        rs.theta_star_orbits = rs.compute_theta_orbits();
        rs
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < NROOTS / 2
    }

    pub fn neg(&self, r: usize) -> usize {
        (r + NROOTS / 2) % NROOTS
    }

    /// Index of a + b when it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        match self.sum[a * NROOTS + b] {
            NONE | ZERO_SUM => None,
            k => Some(k as usize),
        }
    }

    pub fn inner(&self, a: usize, b: usize) -> i32 {
        inner(&self.roots[a], &self.roots[b])
    }

    fn reflect(&self, v: &Root, r: &Root) -> Root {
        let c = inner(v, r);
        let mut w = [0i32; 9];
        for k in 0..9 {
            w[k] = v[k] as i32 - c * r[k] as i32;
        }
        normalize(w)
    }

    /// A regular element of order 3 of type 4A2 in W(E8): the Coxeter elements
    /// of the A2 subsystems on {1,2,3}, {4,5,6}, {7,8,9} and
    /// {eps123, eps456, eps789}. It models the action of the grading
    /// automorphism on the roots of a Cartan subalgebra inside g1.
    pub fn order3_element(&self, v: &Root) -> Root {
        let v = self.reflect(v, &eps_triple(4, 5, 6));
        let v = self.reflect(&v, &eps_triple(1, 2, 3));
        let mut w = [0i32; 9];
        for b in 0..3 {
            for k in 0..3 {
                w[3 * b + (k + 1) % 3] = v[3 * b + k] as i32;
            }
        }
        normalize(w)
    }

    fn compute_theta_orbits(&self) -> Vec<[usize; 6]> {
        let mut seen = vec![false; NROOTS];
        let mut out = Vec::new();
        for r in 0..NROOTS {
            if seen[r] {
                continue;
            }
            let a = self.roots[r];
            let b = self.order3_element(&a);
            let c = self.order3_element(&b);
            assert_eq!(self.order3_element(&c), a);
            let mut orb = [
                self.index[&a],
                self.index[&b],
                self.index[&c],
                self.index[&neg_root(&a)],
                self.index[&neg_root(&b)],
                self.index[&neg_root(&c)],
            ];
            orb.sort();
            for &k in &orb {
                assert!(!seen[k]);
                seen[k] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn count_by_degree(&self) -> (usize, usize, usize) {
        let c = |d: i8| self.degree.iter().filter(|x| **x == d).count();
        (c(-1), c(0), c(1))
    }
}

/// Sparse integer combination of basis elements.
pub type Sparse = Vec<(u16, i32)>;

pub struct GradedAlgebra {
    pub rs: GradedRootSystem,
    table: Vec<Sparse>,
    killing: Vec<Sparse>,
    pub labels: Vec<String>,
    pub g_minus: Vec<usize>,
    pub g0: Vec<usize>,
    pub g1: Vec<usize>,
    basis_degree: Vec<i8>,
    label_index: HashMap<String, usize>,
    /// psi(E_pq) = psi_sign[p][q] * x_{eps_p - eps_q}, 0-based p != q.
    psi_sign: [[i32; 9]; 9],
    /// h^A_k in the basis h_1..h_8.
    ha: [[i32; 8]; 8],
    ha_inv_t: Mat<BigRational>,
    /// g1_iso(e_t) = g1_sign[t] * x_{eps_t}.
    g1_sign: Vec<i32>,
    g1_root: Vec<usize>,
    g1_triple: HashMap<usize, usize>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra(dim {})", DIM)
    }
}

/// Basis index of the root vector at root index r.
#[inline]
pub fn xr(r: usize) -> usize {
    RANK + r
}

fn root_label(r: &Root) -> String {
    let s: i32 = r.iter().map(|x| *x as i32).sum();
    let mut out = String::from("x");
    match s {
        0 => {
            let i = r.iter().position(|x| *x == 1).unwrap();
            let j = r.iter().position(|x| *x == -1).unwrap();
            out.push_str(&format!("+{}-{}", i + 1, j + 1));
        }
        3 => {
            for (k, x) in r.iter().enumerate() {
                if *x == 1 {
                    out.push_str(&format!("+{}", k + 1));
                }
            }
        }
        _ => {
            for (k, x) in r.iter().enumerate() {
                if *x == -1 {
                    out.push_str(&format!("-{}", k + 1));
                }
            }
        }
    }
    out
}

impl GradedAlgebra {
    fn build() -> Self {
        let rs = GradedRootSystem::build();
        let n = structure_constants(&rs);
        let mut table = vec![Sparse::new(); DIM * DIM];
        for k in 0..RANK {
            let ak = rs.simple_roots[k];
            for r in 0..NROOTS {
                let c = rs.inner(r, ak);
                if c != 0 {
                    table[k * DIM + xr(r)] = vec![(xr(r) as u16, c)];
                    table[xr(r) * DIM + k] = vec![(xr(r) as u16, -c)];
                }
            }
        }
        for a in 0..NROOTS {
            for b in 0..NROOTS {
                let entry = &mut table[xr(a) * DIM + xr(b)];
                if b == rs.neg(a) {
                    // [x_a, x_-a] = -h_a
                    *entry = rs.coords[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| (i as u16, -c))
                        .collect();
                } else if let Some(s) = rs.sum_index(a, b) {
                    *entry = vec![(xr(s) as u16, n[a * NROOTS + b] as i32)];
                }
            }
        }
        let mut labels: Vec<String> = (1..=8).map(|i| format!("h{i}")).collect();
        labels.extend(rs.roots.iter().map(root_label));
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut basis_degree = vec![0i8; RANK];
        basis_degree.extend(rs.degree.iter().copied());
        let by = |d: i8| (0..DIM).filter(|i| basis_degree[*i] == d).collect::<Vec<_>>();
        let (g_minus, g0, g1) = (by(-1), by(0), by(1));

        let mut alg = GradedAlgebra {
            rs,
            table,
            killing: Vec::new(),
            labels,
            g_minus,
            g0,
            g1,
            basis_degree,
            label_index,
            psi_sign: [[0; 9]; 9],
            ha: [[0; 8]; 8],
            ha_inv_t: Mat::zeros(8, 8),
            g1_sign: Vec::new(),
            g1_root: Vec::new(),
            g1_triple: HashMap::new(),
        };
        alg.killing = (0..DIM).map(|i| alg.killing_row(i)).collect();
        alg.init_psi();
        alg.init_g1();
        alg
    }

    /// The bracket of two basis elements.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * DIM + j]
    }

    pub fn basis_degree(&self, i: usize) -> i8 {
        self.basis_degree[i]
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// Root vector x_r for a root given as a 9-tuple.
    pub fn root_vector(&self, r: &Root) -> Option<usize> {
        self.rs.index_of(r).map(xr)
    }

    /// Weight of a basis element (zero for the Cartan part).
    pub fn weight(&self, i: usize) -> Root {
        if i < RANK {
            [0; 9]
        } else {
            self.rs.roots[i - RANK]
        }
    }

    fn killing_row(&self, i: usize) -> Sparse {
        let partners: Vec<usize> = if i < RANK {
            (0..RANK).collect()
        } else {
            vec![xr(self.rs.neg(i - RANK))]
        };
        let mut out = Sparse::new();
        for j in partners {
            // tr(ad b_i ad b_j)
            let mut tr: i64 = 0;
            for k in 0..DIM {
                for &(m, c) in self.bracket_basis(j, k) {
                    for &(l, d) in self.bracket_basis(i, m as usize) {
                        if l as usize == k {
                            tr += (c * d) as i64;
                        }
                    }
                }
            }
            if tr != 0 {
                out.push((j as u16, tr as i32));
            }
        }
        out
    }

    /// Nonzero entries kappa(b_i, b_j) for the fixed i.
    pub fn killing_row_sparse(&self, i: usize) -> &Sparse {
        &self.killing[i]
    }

    pub fn killing_basis(&self, i: usize, j: usize) -> i64 {
        self.killing[i]
            .iter()
            .find(|(k, _)| *k as usize == j)
            .map_or(0, |(_, c)| *c as i64)
    }

    pub fn killing(&self, x: &AlgElement, y: &AlgElement) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, a) in x.support() {
            for &(j, c) in &self.killing[i] {
                let b = &y.coords[j as usize];
                if !b.is_zero() {
                    acc += &(&(a * b) * &CycScalar::from_i64(c as i64));
                }
            }
        }
        acc
    }

    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                let t = self.bracket_basis(i, j);
                if t.is_empty() {
                    continue;
                }
                let ab = a * b;
                for &(k, c) in t {
                    let k = k as usize;
                    out.coords[k] += &(&ab * &CycScalar::from_i64(c as i64));
                }
            }
        }
        out
    }

    /// Matrix of ad x: column j holds [x, b_j].
    pub fn ad_matrix(&self, x: &AlgElement) -> Mat<CycScalar> {
        let mut m = Mat::zeros(DIM, DIM);
        for (i, a) in x.support() {
            for j in 0..DIM {
                for &(k, c) in self.bracket_basis(i, j) {
                    let v = m.get(k as usize, j) + &(a * &CycScalar::from_i64(c as i64));
                    m.set(k as usize, j, v);
                }
            }
        }
        m
    }

    fn init_psi(&mut self) {
        let rs = &self.rs;
        let mut sign = [[0i32; 9]; 9];
        let nconst = |a: usize, b: usize| -> i32 {
            let t = &self.table[xr(a) * DIM + xr(b)];
            assert_eq!(t.len(), 1);
            t[0].1
        };
        let ri = |p: usize, q: usize| rs.index_of(&eps_diff(p + 1, q + 1)).unwrap();
        for d in 1..9 {
            for p in 0..9 - d {
                let q = p + d;
                if d == 1 {
                    sign[p][q] = 1;
                    sign[q][p] = -1;
                } else {
                    // E_pq = [E_p,p+1, E_p+1,q];  E_qp = [E_q,q-1, E_q-1,p]
                    sign[p][q] = sign[p][p + 1] * sign[p + 1][q] * nconst(ri(p, p + 1), ri(p + 1, q));
                    sign[q][p] = sign[q][q - 1] * sign[q - 1][p] * nconst(ri(q, q - 1), ri(q - 1, p));
                }
            }
        }
        self.psi_sign = sign;
        let mut ha = [[0i32; 8]; 8];
        for (k, row) in ha.iter_mut().enumerate().take(7) {
            row[k] = 1;
        }
        ha[7] = rs.coords[rs.a8a];
        self.ha = ha;
        let m = Mat::from_fn(8, 8, |i, j| BigRational::from_integer(ha[j][i].into()));
        self.ha_inv_t = m.inverse().expect("A8 coroots span the Cartan subalgebra");
    }

    /// Root index and sign with psi(E_pq) = sign * x_r (1-based p != q).
    pub fn psi_elementary(&self, p: usize, q: usize) -> (usize, i32) {
        let r = self.rs.index_of(&eps_diff(p, q)).unwrap();
        (r, self.psi_sign[p - 1][q - 1])
    }

    /// h^A_k = psi(E_kk - E_k+1,k+1) in the basis h_1..h_8.
    pub fn h_a8(&self, k: usize) -> [i32; 8] {
        self.ha[k - 1]
    }

    pub fn psi(&self, x: &Sl9Matrix) -> Result<AlgElement, E8Error> {
        if x.rows != 9 || x.cols != 9 {
            return Err(E8Error::Shape);
        }
        if !x.trace().is_zero() {
            return Err(E8Error::NotTraceless);
        }
        let mut out = AlgElement::zero();
        for p in 1..=9 {
            for q in 1..=9 {
                let a = x.get(p - 1, q - 1);
                if p != q && !a.is_zero() {
                    let (r, s) = self.psi_elementary(p, q);
                    out.coords[xr(r)] += &(a * &CycScalar::from_i64(s as i64));
                }
            }
        }
        let mut partial = CycScalar::zero();
        for k in 0..8 {
            partial += x.get(k, k);
            if partial.is_zero() {
                continue;
            }
            for l in 0..8 {
                if self.ha[k][l] != 0 {
                    out.coords[l] += &(&partial * &CycScalar::from_i64(self.ha[k][l] as i64));
                }
            }
        }
        Ok(out)
    }

    pub fn psi_inv(&self, x: &AlgElement) -> Result<Sl9Matrix, E8Error> {
        if x.support().any(|(i, _)| self.basis_degree[i] != 0) {
            return Err(E8Error::NotInG0);
        }
        let mut m = Mat::zeros(9, 9);
        for p in 1..=9 {
            for q in 1..=9 {
                if p != q {
                    let (r, s) = self.psi_elementary(p, q);
                    let c = &x.coords[xr(r)];
                    if !c.is_zero() {
                        m.set(p - 1, q - 1, c * &CycScalar::from_i64(s as i64));
                    }
                }
            }
        }
        let mut partial = Vec::with_capacity(8);
        for k in 0..8 {
            let mut acc = CycScalar::zero();
            for l in 0..8 {
                let c = self.ha_inv_t.get(k, l);
                if !c.is_zero() {
                    acc += &(&x.coords[l] * &CycScalar::from_rational(c));
                }
            }
            partial.push(acc);
        }
        let mut prev = CycScalar::zero();
        for k in 0..8 {
            m.set(k, k, &partial[k] - &prev);
            prev = partial[k].clone();
        }
        m.set(8, 8, -prev);
        Ok(m)
    }

    fn init_g1(&mut self) {
        let tr = trivector::triples();
        let g1_root: Vec<usize> = tr
            .iter()
            .map(|t| self.rs.index_of(&eps_triple(t[0], t[1], t[2])).unwrap())
            .collect();
        let mut sign = vec![0i32; NTRIPLES];
        let anchor = trivector::triple_index(6, 7, 8);
        assert_eq!(g1_root[anchor], self.rs.simple_roots[7]);
        sign[anchor] = 1;
        let mut queue = VecDeque::from([anchor]);
        while let Some(t) = queue.pop_front() {
            let idx = tr[t];
            for a in 1..9 {
                for (p, q) in [(a, a + 1), (a + 1, a)] {
                    // E_pq e_t replaces index q by p
                    let Some(slot) = idx.iter().position(|x| *x == q) else { continue };
                    let mut t2 = idx;
                    t2[slot] = p;
                    let Some((sigma, [i, j, k])) = trivector::sort_triple(t2) else { continue };
                    let t2i = trivector::triple_index(i, j, k);
                    if sign[t2i] != 0 {
                        continue;
                    }
                    let (r, s) = self.psi_elementary(p, q);
                    let br = self.bracket_basis(xr(r), xr(g1_root[t]));
                    assert_eq!(br.len(), 1);
                    assert_eq!(br[0].0 as usize, xr(g1_root[t2i]));
                    sign[t2i] = sign[t] * s * br[0].1 * sigma as i32;
                    queue.push_back(t2i);
                }
            }
        }
        assert!(sign.iter().all(|s| *s == 1 || *s == -1));
        self.g1_triple = g1_root.iter().enumerate().map(|(t, r)| (*r, t)).collect();
        self.g1_sign = sign;
        self.g1_root = g1_root;
    }

    /// Basis index and sign with g1_iso(e_t) = sign * b_index.
    pub fn g1_basis(&self, t: usize) -> (usize, i32) {
        (xr(self.g1_root[t]), self.g1_sign[t])
    }

    pub fn g1_iso(&self, t: &Trivector) -> AlgElement {
        let mut out = AlgElement::zero();
        for (n, c) in t.support() {
            let (b, s) = self.g1_basis(n);
            out.coords[b] = if s == 1 { c.clone() } else { -c };
        }
        out
    }

    pub fn g1_iso_inv(&self, x: &AlgElement) -> Result<Trivector, E8Error> {
        let mut t = Trivector::zero();
        for (i, c) in x.support() {
            if self.basis_degree[i] != 1 {
                return Err(E8Error::NotInG1);
            }
            let n = self.g1_triple[&(i - RANK)];
            t.coeffs[n] = if self.g1_sign[n] == 1 { c.clone() } else { -c };
        }
        Ok(t)
    }

    /// Dual identification of g(-1) with the third exterior power of the dual
    /// space: e^t maps to the Killing dual of g1_iso(e_t), scaled to a root vector.
    pub fn gm1_basis(&self, t: usize) -> (usize, i32) {
        let (b, s) = self.g1_basis(t);
        (xr(self.rs.neg(b - RANK)), s)
    }

    /// Indices (i, j, k) with [b_i, [b_j, b_k]] + cyclic != 0.
    pub fn jacobi_violation(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc: Vec<(u16, i64)> = Vec::new();
        let mut push = |a: usize, b: usize, c: usize| {
            for &(m, x) in self.bracket_basis(b, c) {
                for &(l, y) in self.bracket_basis(a, m as usize) {
                    match acc.iter_mut().find(|(z, _)| *z == l) {
                        Some(e) => e.1 += x as i64 * y as i64,
                        None => acc.push((l, x as i64 * y as i64)),
                    }
                }
            }
        };
        push(i, j, k);
        push(j, k, i);
        push(k, i, j);
        acc.iter().any(|(_, v)| *v != 0)
    }

    /// Line records of the nonzero brackets [b_i, b_j] with i < j.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let t = self.bracket_basis(i, j);
                if t.is_empty() {
                    continue;
                }
                let terms: Vec<String> =
                    t.iter().map(|(k, c)| format!("{}*{}", c, self.labels[*k as usize])).collect();
                out.push_str(&format!("[{},{}] = {}\n", self.labels[i], self.labels[j], terms.join(" + ")));
            }
        }
        out
    }
}

/// Structure constants N(a, b) for [x_a, x_b] = N x_(a+b), in the convention
/// x_-a = -e_-a for a > 0 where e is a standard Chevalley basis with
/// [e_a, e_-a] = h_a.
fn structure_constants(rs: &GradedRootSystem) -> Vec<i8> {
    const UNSET: i8 = i8::MIN;
    let mut memo = vec![UNSET; NROOTS * NROOTS];
    // extraspecial pair of each positive non-simple root
    let mut extra: Vec<Option<(usize, usize)>> = vec![None; NROOTS];
    for xi in 0..NROOTS / 2 {
        for a in 0..NROOTS / 2 {
            let b = rs.sum_index(xi, rs.neg(a));
            if let Some(b) = b {
                if rs.is_positive(b) {
                    extra[xi] = Some((a, b));
                    break;
                }
            }
        }
    }

    fn nstd(
        rs: &GradedRootSystem,
        extra: &[Option<(usize, usize)>],
        memo: &mut Vec<i8>,
        a: usize,
        b: usize,
    ) -> i8 {
        let key = a * NROOTS + b;
        if memo[key] != UNSET {
            return memo[key];
        }
        let Some(s) = rs.sum_index(a, b) else {
            return 0;
        };
        let (pa, pb) = (rs.is_positive(a), rs.is_positive(b));
        let v = if pa && pb {
            let (al, be) = extra[s].unwrap();
            if (a, b) == (al, be) {
                1
            } else if (a, b) == (be, al) {
                -1
            } else {
                let (nal, nbe) = (rs.neg(al), rs.neg(be));
                let t1 = if rs.sum_index(b, nal).is_some() {
                    nstd(rs, extra, memo, b, nal) * nstd(rs, extra, memo, a, nbe)
                } else {
                    0
                };
                let t2 = if rs.sum_index(nal, a).is_some() {
                    nstd(rs, extra, memo, nal, a) * nstd(rs, extra, memo, b, nbe)
                } else {
                    0
                };
                t1 + t2
            }
        } else if !pa && !pb {
            -nstd(rs, extra, memo, rs.neg(a), rs.neg(b))
        } else {
            // N(a,b) = N(b,c) = N(c,a) when a + b + c = 0
            let c = rs.neg(s);
            if pa {
                if rs.is_positive(c) {
                    nstd(rs, extra, memo, c, a)
                } else {
                    nstd(rs, extra, memo, b, c)
                }
            } else if rs.is_positive(c) {
                nstd(rs, extra, memo, b, c)
            } else {
                nstd(rs, extra, memo, c, a)
            }
        };
        memo[key] = v;
        v
    }

    let mut out = vec![0i8; NROOTS * NROOTS];
    let sgn = |r: usize| if rs.is_positive(r) { 1i8 } else { -1 };
    for a in 0..NROOTS {
        for b in 0..NROOTS {
            if let Some(s) = rs.sum_index(a, b) {
                let n = nstd(rs, &extra, &mut memo, a, b);
                assert!(n == 1 || n == -1, "N({a},{b}) = {n}");
                out[a * NROOTS + b] = sgn(a) * sgn(b) * sgn(s) * n;
            }
        }
    }
    out
}

/// An element of g in coordinates over the fixed basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElement {
    pub coords: Vec<CycScalar>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement {
            coords: vec![CycScalar::zero(); DIM],
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.coords[i] = CycScalar::one();
        x
    }

    pub fn from_coords(coords: Vec<CycScalar>) -> Self {
        assert_eq!(coords.len(), DIM);
        AlgElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &CycScalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AlgElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        AlgElement {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Projection onto g_d for d in {-1, 0, 1}.
    pub fn component(&self, alg: &GradedAlgebra, d: i8) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.support() {
            if alg.basis_degree(i) == d {
                out.coords[i] = c.clone();
            }
        }
        out
    }

    /// The degree if the element is homogeneous and nonzero.
    pub fn degree(&self, alg: &GradedAlgebra) -> Option<i8> {
        let mut d = None;
        for (i, _) in self.support() {
            let e = alg.basis_degree(i);
            if d.is_some_and(|x| x != e) {
                return None;
            }
            d = Some(e);
        }
        d
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.is_real())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = algebra();
        let terms: Vec<String> = self.support().map(|(i, c)| format!("({})*{}", c, alg.labels[i])).collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

static ALGEBRA: OnceLock<GradedAlgebra> = OnceLock::new();

/// The shared algebra, built on first use.
pub fn algebra() -> &'static GradedAlgebra {
    ALGEBRA.get_or_init(GradedAlgebra::build)
}

/// Root system and algebra.
pub fn build() -> (&'static GradedRootSystem, &'static GradedAlgebra) {
    let a = algebra();
    (&a.rs, a)
}

/// Elementary matrix E_pq (1-based).
pub fn elementary(p: usize, q: usize) -> Sl9Matrix {
    let mut m = Mat::zeros(9, 9);
    m.set(p - 1, q - 1, CycScalar::one());
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_counts() {
        let (rs, alg) = build();
        assert_eq!(rs.count_by_degree(), (84, 72, 84));
        assert_eq!((alg.g_minus.len(), alg.g0.len(), alg.g1.len()), (84, 80, 84));
        assert_eq!(rs.theta_star_orbits.len(), 40);
        assert_eq!(rs.height[NROOTS / 2 - 1], 29);
    }

    #[test]
    fn generator_relations() {
        let (rs, alg) = build();
        for (i, &a) in rs.simple_roots.iter().enumerate() {
            let t = alg.bracket_basis(xr(a), xr(rs.neg(a)));
            assert_eq!(t, &vec![(i as u16, -1)]);
            assert_eq!(alg.bracket_basis(i, xr(a)), &vec![(xr(a) as u16, 2)]);
        }
    }

    #[test]
    fn psi_generators() {
        let alg = algebra();
        let (r, s) = alg.psi_elementary(1, 2);
        assert_eq!((r, s), (alg.rs.simple_roots[0], 1));
        let mut d = Mat::zeros(9, 9);
        d.set(0, 0, CycScalar::one());
        d.set(1, 1, -CycScalar::one());
        assert_eq!(alg.psi(&d).unwrap(), AlgElement::basis(0));
        assert_eq!(alg.psi_inv(&AlgElement::basis(0)).unwrap(), d);
        let anchor = Trivector::basis(6, 7, 8);
        assert_eq!(alg.g1_iso(&anchor), AlgElement::basis(xr(alg.rs.simple_roots[7])));
    }
}
