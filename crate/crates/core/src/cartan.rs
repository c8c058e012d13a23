//! The Cartan subspace C = span(p1, .., p4) of g1, its Cartan subalgebra,
//! restricted roots and the little Weyl group W generated by 40 complex
//! reflections of order 3.
//!
//! Coordinates on C are always taken with respect to p1, .., p4. Restricted
//! roots are joint eigenvalues of ad(p1), .., ad(p4); each is an Eisenstein
//! integer of norm at most 3, which makes exact enumeration cheap.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{ad_block, lift, stabilizer_algebra};
use crate::e8::{algebra, AlgElement};
use crate::field::Mat;
use crate::modular::{charpoly_mod, primes, zeta12_roots};
use crate::scalar::CycScalar;
use crate::trivector::{self, Trivector};

pub const P_TEXT: [&str; 4] = [
    "e123 + e456 + e789",
    "e147 + e258 + e369",
    "e159 + e267 + e348",
    "e168 + e249 + e357",
];

/// A vector or functional on C in p-coordinates.
pub type CVec = [CycScalar; 4];
/// A 4x4 matrix on C, row-major.
pub type M4 = [CycScalar; 16];

const SAFETY_BOUND: usize = 1_000_000;
const WEYL_ORDER: usize = 155_520;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("group closure exceeded {0} elements")]
    ClosureTooLarge(usize),
    #[error("wrong parameter arity: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("degenerate restricted root")]
    Degenerate,
}

pub struct CartanData {
    pub basis: [Trivector; 4],
    pub elements: [AlgElement; 4],
    /// Basis of c = z_g(C): the first four span c meet g(-1), the last four are p1..p4.
    pub cartan_subalgebra: Vec<AlgElement>,
    /// All 240 joint eigenvalue functionals, with a root vector for each.
    pub root_functionals: Vec<CVec>,
    pub root_vectors: Vec<AlgElement>,
    /// Indices into `root_functionals`: the six multiples u*alpha, u^6 = 1.
    pub lines: Vec<[usize; 6]>,
    /// One functional per line.
    pub restricted_roots: Vec<CVec>,
    pub kappa_c: Mat<CycScalar>,
    /// The standard Hermitian form of the trivector coordinates, restricted to C.
    pub hermitian_c: Mat<CycScalar>,
}

#[derive(Clone, Debug)]
pub struct Reflection {
    pub alpha: CVec,
    pub p_alpha: CVec,
    pub matrix: Mat<CycScalar>,
}

pub fn p_basis() -> [Trivector; 4] {
    P_TEXT.map(|s| trivector::parse_trivector(s).unwrap())
}

fn int(n: i64) -> CycScalar {
    CycScalar::from_i64(n)
}

pub fn cvec_from_ints(v: [i64; 4]) -> CVec {
    v.map(int)
}

/// The trivector sum_i x_i p_i.
pub fn point(x: &CVec) -> Trivector {
    let b = p_basis();
    let mut t = Trivector::zero();
    for (c, p) in x.iter().zip(b.iter()) {
        t = t.add(&p.scale(c));
    }
    t
}

/// p-coordinates of a trivector lying in C.
pub fn coordinates(t: &Trivector) -> Option<CVec> {
    let b = p_basis();
    let x: CVec = std::array::from_fn(|i| {
        let (idx, c) = b[i].support().next().unwrap();
        t.coeffs[idx].clone() / c.clone()
    });
    if point(&x) == *t {
        Some(x)
    } else {
        None
    }
}

pub fn eval(alpha: &CVec, x: &CVec) -> CycScalar {
    let mut s = CycScalar::zero();
    for (a, b) in alpha.iter().zip(x) {
        s += &(a * b);
    }
    s
}

/// The 13 Eisenstein integers of norm at most 3.
fn small_eisenstein() -> Vec<CycScalar> {
    let z = CycScalar::zeta3();
    let units = [int(1), z.clone(), &z * &z];
    let s = &int(1) + &(&z * &int(2));
    let mut out = vec![CycScalar::zero()];
    for sign in [1, -1] {
        for u in &units {
            out.push(u * &int(sign));
        }
        for u in &units {
            out.push(&(u * &s) * &int(sign));
        }
    }
    out
}

fn sixth_roots() -> [CycScalar; 6] {
    let z = CycScalar::zeta3();
    let z2 = &z * &z;
    [int(1), z.clone(), z2.clone(), int(-1), -z, -z2]
}

fn build() -> CartanData {
    let alg = algebra();
    let basis = p_basis();
    let elements = basis.clone().map(|t| alg.g1_iso(&t));

    // c = common kernel of ad(p_i), computed degree by degree
    let mut cartan_subalgebra = Vec::new();
    for (from, to) in [(&alg.g_minus, &alg.g0), (&alg.g0, &alg.g1), (&alg.g1, &alg.g_minus)] {
        let blocks: Vec<Mat<CycScalar>> = elements.iter().map(|p| ad_block(alg, p, from, to)).collect();
        let stacked = Mat::from_fn(4 * to.len(), from.len(), |r, c| {
            blocks[r / to.len()].get(r % to.len(), c).clone()
        });
        for v in stacked.kernel() {
            cartan_subalgebra.push(lift(from, &v));
        }
    }

    let (root_functionals, root_vectors) = restricted_root_spaces(&elements);

    let units = sixth_roots();
    let mut seen = vec![false; root_functionals.len()];
    let mut lines = Vec::new();
    let pos: HashMap<&CVec, usize> = root_functionals.iter().enumerate().map(|(i, a)| (a, i)).collect();
    for i in 0..root_functionals.len() {
        if seen[i] {
            continue;
        }
        let line: [usize; 6] = std::array::from_fn(|k| {
            let m = root_functionals[i].clone().map(|a| &a * &units[k]);
            *pos.get(&m).expect("restricted roots are not closed under sixth roots of unity")
        });
        for &j in &line {
            seen[j] = true;
        }
        lines.push(line);
    }
    let restricted_roots = lines.iter().map(|l| root_functionals[l[0]].clone()).collect();

    let kappa_c = Mat::from_fn(4, 4, |i, j| alg.killing(&elements[i], &elements[j]));
    let hermitian_c = Mat::from_fn(4, 4, |i, j| {
        let mut s = CycScalar::zero();
        for (a, b) in basis[i].coeffs.iter().zip(&basis[j].coeffs) {
            s += &(a * &b.conj());
        }
        s
    });

    CartanData {
        basis,
        elements,
        cartan_subalgebra,
        root_functionals,
        root_vectors,
        lines,
        restricted_roots,
        kappa_c,
        hermitian_c,
    }
}

/// Joint eigenvalues and eigenvectors of ad(p1..p4) with nonzero eigenvalue.
///
/// Candidates are screened modulo a prime through the characteristic
/// polynomial of B = (ad p)^3 on g0 for a generic p in C, and then certified
/// exactly by building the eigenvector from ker(B - s^3).
fn restricted_root_spaces(ps: &[AlgElement; 4]) -> (Vec<CVec>, Vec<AlgElement>) {
    let alg = algebra();
    let weights = [1i64, 3, 7, 19];
    let mut gen = AlgElement::zero();
    for (p, w) in ps.iter().zip(weights) {
        gen = gen.add(&p.scale(&int(w)));
    }
    let a0 = ad_block(alg, &gen, &alg.g0, &alg.g1);
    let a1 = ad_block(alg, &gen, &alg.g1, &alg.g_minus);
    let am = ad_block(alg, &gen, &alg.g_minus, &alg.g0);
    let b0 = am.mul(&a1.mul(&a0));
    let n = b0.rows;

    let ell = primes(1)[0];
    let w = zeta12_roots(ell)[0];
    let red = |c: &CycScalar| c.reduce_mod(ell, w).unwrap();
    let cp = charpoly_mod((0..n * n).map(|k| red(b0.get(k / n, k % n))).collect(), n, ell);
    let eval_mod = |x: u64| {
        let mut acc = 0u64;
        for c in cp.iter().rev() {
            acc = ((acc as u128 * x as u128 + *c as u128) % ell as u128) as u64;
        }
        acc
    };

    let vals = small_eisenstein();
    let vals_mod: Vec<u64> = vals.iter().map(red).collect();
    let mut candidates = Vec::new();
    for code in 1..vals.len().pow(4) {
        let digits = [code % 13, (code / 13) % 13, (code / 169) % 13, code / 2197];
        let mut s = 0u64;
        for (d, wt) in digits.iter().zip(weights) {
            s = (s + vals_mod[*d] * wt as u64) % ell;
        }
        if s == 0 {
            continue;
        }
        let s3 = ((s as u128 * s as u128 % ell as u128) * s as u128 % ell as u128) as u64;
        if eval_mod(s3) == 0 {
            candidates.push(digits.map(|d| vals[d].clone()));
        }
    }

    let mut kernels: HashMap<CycScalar, Vec<Vec<CycScalar>>> = HashMap::new();
    let mut out_f = Vec::new();
    let mut out_v = Vec::new();
    for alpha in candidates {
        let s = eval(&alpha, &cvec_from_ints(weights));
        let s3 = s.pow(3);
        let ker = kernels
            .entry(s3.clone())
            .or_insert_with(|| b0.sub(&Mat::identity(n).scale(&s3)).kernel());
        let sinv = int(1) / s.clone();
        for w0 in ker.iter() {
            let w1: Vec<CycScalar> = a0.mul_vec(w0).iter().map(|c| c * &sinv).collect();
            let wm: Vec<CycScalar> = a1.mul_vec(&w1).iter().map(|c| c * &sinv).collect();
            let v = lift(&alg.g0, w0).add(&lift(&alg.g1, &w1)).add(&lift(&alg.g_minus, &wm));
            if v.is_zero() {
                continue;
            }
            let joint = ps.iter().zip(&alpha).all(|(p, a)| alg.bracket(p, &v) == v.scale(a));
            if joint {
                out_f.push(alpha.clone());
                out_v.push(v);
                break;
            }
        }
    }
    assert_eq!(out_f.len(), 240, "restricted root enumeration is incomplete");
    (out_f, out_v)
}

pub fn cartan() -> &'static CartanData {
    static DATA: OnceLock<CartanData> = OnceLock::new();
    DATA.get_or_init(build)
}

pub fn build_cartan() -> &'static CartanData {
    cartan()
}

impl CartanData {
    /// Index of a functional among the 240, if it is one.
    pub fn root_index(&self, f: &CVec) -> Option<usize> {
        self.root_functionals.iter().position(|a| a == f)
    }

    /// Line containing the given root functional index.
    pub fn line_of(&self, r: usize) -> usize {
        self.lines.iter().position(|l| l.contains(&r)).unwrap()
    }

    /// The g1-part of the coroot [x_b, x_-b] of a root b on the line,
    /// in p-coordinates.
    pub fn coroot_projection(&self, line: usize) -> Result<CVec, CartanError> {
        let alg = algebra();
        for k in 0..3 {
            let r = self.lines[line][k];
            let neg = self.lines[line][k + 3];
            let h = alg.bracket(&self.root_vectors[r], &self.root_vectors[neg]).component(alg, 1);
            if h.is_zero() {
                continue;
            }
            let t = alg.g1_iso_inv(&h).map_err(|_| CartanError::Degenerate)?;
            return coordinates(&t).ok_or(CartanError::Degenerate);
        }
        Err(CartanError::Degenerate)
    }

    /// The reflection w_alpha for a line, with p_alpha obtained from the coroot.
    pub fn reflection_for(&self, line: usize) -> Result<Reflection, CartanError> {
        let alpha = self.restricted_roots[line].clone();
        let u = self.coroot_projection(line)?;
        reflection_from(alpha, u)
    }

    /// p_alpha taken Hermitian-orthogonal to ker(alpha) instead.
    pub fn reflection_hermitian(&self, line: usize) -> Result<Reflection, CartanError> {
        let alpha = self.restricted_roots[line].clone();
        let u = alpha.clone().map(|a| a.conj());
        reflection_from(alpha, u)
    }

    pub fn reflections(&self) -> Vec<Reflection> {
        (0..self.lines.len()).map(|l| self.reflection_for(l).unwrap()).collect()
    }

    /// Lines whose functional vanishes at x.
    pub fn vanishing_lines(&self, x: &CVec) -> Vec<usize> {
        (0..self.restricted_roots.len())
            .filter(|&l| eval(&self.restricted_roots[l], x).is_zero())
            .collect()
    }
}

fn reflection_from(alpha: CVec, u: CVec) -> Result<Reflection, CartanError> {
    let au = eval(&alpha, &u);
    if au.is_zero() {
        return Err(CartanError::Degenerate);
    }
    let f = (&int(1) - &CycScalar::zeta3()) / au;
    let p_alpha = u.map(|c| &c * &f);
    let matrix = Mat::from_fn(4, 4, |i, j| {
        let d = if i == j { int(1) } else { CycScalar::zero() };
        &d - &(&p_alpha[i] * &alpha[j])
    });
    Ok(Reflection { alpha, p_alpha, matrix })
}

pub fn to_m4(m: &Mat<CycScalar>) -> M4 {
    std::array::from_fn(|k| m.get(k / 4, k % 4).clone())
}

pub fn from_m4(m: &M4) -> Mat<CycScalar> {
    Mat::from_fn(4, 4, |i, j| m[4 * i + j].clone())
}

pub fn m4_identity() -> M4 {
    std::array::from_fn(|k| if k % 5 == 0 { int(1) } else { CycScalar::zero() })
}

pub fn m4_mul(a: &M4, b: &M4) -> M4 {
    std::array::from_fn(|k| {
        let (i, j) = (k / 4, k % 4);
        let mut s = CycScalar::zero();
        for t in 0..4 {
            if !a[4 * i + t].is_zero() && !b[4 * t + j].is_zero() {
                s += &(&a[4 * i + t] * &b[4 * t + j]);
            }
        }
        s
    })
}

pub fn m4_apply(a: &M4, x: &CVec) -> CVec {
    std::array::from_fn(|i| {
        let mut s = CycScalar::zero();
        for t in 0..4 {
            s += &(&a[4 * i + t] * &x[t]);
        }
        s
    })
}

/// Conjugate transpose; the inverse of every element of W.
pub fn m4_adjoint(a: &M4) -> M4 {
    std::array::from_fn(|k| a[4 * (k % 4) + k / 4].conj())
}

pub fn m4_is_real(a: &M4) -> bool {
    a.iter().all(|c| c.is_real())
}

/// (w_r * g) = g - p_r (alpha_r^T g).
fn apply_reflection(r: &Reflection, g: &M4) -> M4 {
    let y: [CycScalar; 4] = std::array::from_fn(|j| {
        let mut s = CycScalar::zero();
        for i in 0..4 {
            if !r.alpha[i].is_zero() && !g[4 * i + j].is_zero() {
                s += &(&r.alpha[i] * &g[4 * i + j]);
            }
        }
        s
    });
    std::array::from_fn(|k| {
        let (i, j) = (k / 4, k % 4);
        if r.p_alpha[i].is_zero() || y[j].is_zero() {
            g[k].clone()
        } else {
            &g[k] - &(&r.p_alpha[i] * &y[j])
        }
    })
}

fn fingerprint(m: &M4) -> u64 {
    let mut h = DefaultHasher::new();
    m.hash(&mut h);
    h.finish()
}

/// Exact set of 4x4 matrices with stable insertion indices.
#[derive(Default)]
struct MatrixSet {
    elements: Vec<M4>,
    index: HashMap<u64, Vec<u32>>,
}

impl MatrixSet {
    fn find(&self, h: u64, m: &M4) -> Option<u32> {
        self.index.get(&h)?.iter().copied().find(|&i| self.elements[i as usize] == *m)
    }

    fn insert(&mut self, h: u64, m: M4) -> (u32, bool) {
        if let Some(i) = self.find(h, &m) {
            return (i, false);
        }
        let i = self.elements.len() as u32;
        self.elements.push(m);
        self.index.entry(h).or_default().push(i);
        (i, true)
    }
}

/// Breadth-first closure of a generating set of reflections. Returns the
/// elements and, for each, (parent, generator) with element = gen * parent.
fn closure(gens: &[Reflection], bound: usize) -> Result<(MatrixSet, Vec<(u32, u8)>), CartanError> {
    let mut set = MatrixSet::default();
    let id = m4_identity();
    set.insert(fingerprint(&id), id);
    let mut tree = vec![(0u32, u8::MAX)];
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        let found: Vec<(u64, M4, u32, u8)> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let g = &set.elements[i as usize];
                let set = &set;
                gens.iter().enumerate().filter_map(move |(r, w)| {
                    let m = apply_reflection(w, g);
                    let h = fingerprint(&m);
                    match set.find(h, &m) {
                        Some(_) => None,
                        None => Some((h, m, i, r as u8)),
                    }
                })
            })
            .collect();
        let mut next = Vec::new();
        for (h, m, parent, r) in found {
            let (i, fresh) = set.insert(h, m);
            if fresh {
                tree.push((parent, r));
                next.push(i);
            }
        }
        if set.elements.len() > bound {
            return Err(CartanError::ClosureTooLarge(bound));
        }
        frontier = next;
    }
    Ok((set, tree))
}

pub struct LittleWeylGroup {
    pub generators: Vec<Reflection>,
    set: MatrixSet,
    tree: Vec<(u32, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Sorted element indices into the enumerated W.
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.elements.binary_search(&i).is_ok()
    }
}

/// Gamma_p = N / W_p as coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub representatives: Vec<u32>,
    /// Product table on coset indices, present when the quotient is small.
    pub table: Option<Vec<Vec<usize>>>,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }
}

impl LittleWeylGroup {
    pub fn enumerate(generators: Vec<Reflection>) -> Result<Self, CartanError> {
        let (set, tree) = closure(&generators, SAFETY_BOUND)?;
        Ok(LittleWeylGroup { generators, set, tree })
    }

    /// Rebuild from a stored BFS tree (see `tree`).
    pub fn from_tree(generators: Vec<Reflection>, tree: &[(u32, u8)]) -> Option<Self> {
        let mut set = MatrixSet::default();
        for (k, &(parent, r)) in tree.iter().enumerate() {
            let m = if k == 0 {
                m4_identity()
            } else {
                let p = set.elements.get(parent as usize)?;
                apply_reflection(generators.get(r as usize)?, p)
            };
            let (_, fresh) = set.insert(fingerprint(&m), m);
            if !fresh {
                return None;
            }
        }
        Some(LittleWeylGroup { generators, set, tree: tree.to_vec() })
    }

    pub fn tree(&self) -> &[(u32, u8)] {
        &self.tree
    }

    pub fn order(&self) -> usize {
        self.set.elements.len()
    }

    pub fn element(&self, i: u32) -> &M4 {
        &self.set.elements[i as usize]
    }

    pub fn elements(&self) -> &[M4] {
        &self.set.elements
    }

    pub fn index_of(&self, m: &M4) -> Option<u32> {
        self.set.find(fingerprint(m), m)
    }

    pub fn contains(&self, m: &Mat<CycScalar>) -> bool {
        m.rows == 4 && m.cols == 4 && self.index_of(&to_m4(m)).is_some()
    }

    pub fn generator_index(&self, r: usize) -> u32 {
        self.index_of(&to_m4(&self.generators[r].matrix)).unwrap()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index_of(&m4_mul(self.element(a), self.element(b))).expect("W is closed")
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.index_of(&m4_adjoint(self.element(a))).expect("W is unitary")
    }

    /// Distinct conjugates g x g^-1 over all g in W.
    pub fn conjugacy_class(&self, x: u32) -> Vec<u32> {
        let xm = self.element(x);
        let mut out: Vec<u32> = self
            .set
            .elements
            .par_iter()
            .map(|g| self.index_of(&m4_mul(&m4_mul(g, xm), &m4_adjoint(g))).unwrap())
            .collect::<HashSet<u32>>()
            .into_iter()
            .collect();
        out.sort_unstable();
        out
    }

    /// Closure of the given elements inside W.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let mut seen: HashSet<u32> = HashSet::new();
        let id = self.index_of(&m4_identity()).unwrap();
        seen.insert(id);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &a in &frontier {
                for &g in gens {
                    let b = self.mul(g, a);
                    if seen.insert(b) {
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<u32> = seen.into_iter().collect();
        elements.sort_unstable();
        Subgroup { elements, generators: gens.to_vec() }
    }

    /// W_p = subgroup generated by the reflections fixing p.
    pub fn reflection_subgroup(&self, p: &CVec) -> Subgroup {
        let data = cartan();
        let lines = data.vanishing_lines(p);
        if lines.len() == self.generators.len() {
            let all: Vec<u32> = (0..self.order() as u32).collect();
            let gens = lines.iter().map(|&l| self.generator_index(l)).collect();
            return Subgroup { elements: all, generators: gens };
        }
        let gens: Vec<u32> = lines.iter().map(|&l| self.generator_index(l)).collect();
        self.subgroup(&gens)
    }

    /// Stabilizer of p, by scanning W.
    pub fn stabilizer(&self, p: &CVec) -> Subgroup {
        let elements: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&i| m4_apply(self.element(i), p) == *p)
            .collect();
        Subgroup { generators: Vec::new(), elements }
    }

    pub fn normalizer(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = if sub.generators.is_empty() { sub.elements.clone() } else { sub.generators.clone() };
        let elements: Vec<u32> = (0..self.order() as u32)
            .into_par_iter()
            .filter(|&v| {
                let vm = self.element(v);
                let vi = m4_adjoint(vm);
                gens.iter().all(|&s| {
                    let c = m4_mul(&m4_mul(vm, self.element(s)), &vi);
                    sub.contains(self.index_of(&c).unwrap())
                })
            })
            .collect();
        Subgroup { generators: Vec::new(), elements }
    }

    /// N / S for S normal in N.
    pub fn gamma_p(&self, n: &Subgroup, s: &Subgroup) -> QuotientGroup {
        let mut coset_of: HashMap<u32, usize> = HashMap::new();
        let mut representatives = Vec::new();
        for &v in &n.elements {
            if coset_of.contains_key(&v) {
                continue;
            }
            let id = representatives.len();
            representatives.push(v);
            for &w in &s.elements {
                coset_of.insert(self.mul(v, w), id);
            }
        }
        let table = (representatives.len() <= 512).then(|| {
            representatives
                .iter()
                .map(|&a| representatives.iter().map(|&b| coset_of[&self.mul(a, b)]).collect())
                .collect()
        });
        QuotientGroup { representatives, table }
    }

    /// Elements with real entries.
    pub fn real_elements(&self) -> Vec<u32> {
        (0..self.order() as u32).filter(|&i| m4_is_real(self.element(i))).collect()
    }

    /// A set of four reflections generating W: screened modulo a prime and
    /// confirmed by exact closure.
    pub fn four_generators(&self) -> Option<[usize; 4]> {
        let ell = primes(2)[1];
        let w = zeta12_roots(ell)[0];
        let red: Vec<[u64; 16]> = self
            .generators
            .iter()
            .map(|r| to_m4(&r.matrix).map(|c| c.reduce_mod(ell, w).unwrap()))
            .collect();
        let n = self.generators.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let g = [red[a], red[b], red[c], red[d]];
                        if closure_mod(&g, ell, self.order()) != self.order() {
                            continue;
                        }
                        let gens: Vec<Reflection> = [a, b, c, d].iter().map(|&i| self.generators[i].clone()).collect();
                        if let Ok((set, _)) = closure(&gens, SAFETY_BOUND) {
                            if set.elements.len() == self.order() {
                                return Some([a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn mul_mod4(a: &[u64; 16], b: &[u64; 16], p: u64) -> [u64; 16] {
    std::array::from_fn(|k| {
        let (i, j) = (k / 4, k % 4);
        let mut s: u128 = 0;
        for t in 0..4 {
            s += a[4 * i + t] as u128 * b[4 * t + j] as u128;
        }
        (s % p as u128) as u64
    })
}

/// Order of the group generated modulo p, stopping past `cap`.
fn closure_mod(gens: &[[u64; 16]], p: u64, cap: usize) -> usize {
    let id: [u64; 16] = std::array::from_fn(|k| (k % 5 == 0) as u64);
    let mut seen: HashSet<[u64; 16]> = HashSet::new();
    seen.insert(id);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in gens {
                let b = mul_mod4(g, a, p);
                if seen.insert(b) {
                    next.push(b);
                }
            }
        }
        if seen.len() > cap {
            break;
        }
        frontier = next;
    }
    seen.len()
}

fn weyl_cell() -> &'static OnceLock<LittleWeylGroup> {
    static CELL: OnceLock<LittleWeylGroup> = OnceLock::new();
    &CELL
}

/// The enumerated little Weyl group, built once per process.
pub fn weyl_group() -> &'static LittleWeylGroup {
    weyl_cell().get_or_init(|| LittleWeylGroup::enumerate(cartan().reflections()).expect("W closure"))
}

/// Install a group rebuilt from a cached BFS tree. Returns false if a group is
/// already present or the tree does not reproduce a closed group of the
/// expected order.
pub fn install_weyl_group_from_tree(tree: &[(u32, u8)]) -> bool {
    match LittleWeylGroup::from_tree(cartan().reflections(), tree) {
        Some(w) if w.order() == WEYL_ORDER && closed_under_generators(&w) => weyl_cell().set(w).is_ok(),
        _ => false,
    }
}

fn closed_under_generators(w: &LittleWeylGroup) -> bool {
    w.set
        .elements
        .par_iter()
        .all(|g| w.generators.iter().all(|r| w.index_of(&apply_reflection(r, g)).is_some()))
}

/// Reference points q_k of the canonical sets F_k (F_7 is the origin).
pub fn reference_points() -> [CVec; 7] {
    [
        cvec_from_ints([1, 3, 7, 19]),
        cvec_from_ints([1, 2, -3, 0]),
        cvec_from_ints([1, 2, 0, 0]),
        cvec_from_ints([1, 0, 2, -2]),
        cvec_from_ints([0, 0, 1, -1]),
        cvec_from_ints([1, 0, 0, 0]),
        cvec_from_ints([0, 0, 0, 0]),
    ]
}

fn fixed_dim(p: &CVec) -> usize {
    let data = cartan();
    let lines = data.vanishing_lines(p);
    if lines.is_empty() {
        return 4;
    }
    let m = Mat::from_rows(lines.iter().map(|&l| data.restricted_roots[l].to_vec()).collect());
    4 - m.rank()
}

struct FamilyKeys {
    keys: Vec<(usize, usize)>,
}

fn family_keys() -> &'static FamilyKeys {
    static K: OnceLock<FamilyKeys> = OnceLock::new();
    K.get_or_init(|| {
        let w = weyl_group();
        let q = reference_points();
        let keys = q.iter().map(|x| (w.reflection_subgroup(x).order(), fixed_dim(x))).collect();
        FamilyKeys { keys }
    })
}

/// Index k of the canonical set F_k containing a W-conjugate of p.
pub fn canonical_family(p: &CVec) -> usize {
    if p.iter().all(|c| c.is_zero()) {
        return 7;
    }
    let data = cartan();
    let lines = data.vanishing_lines(p);
    if lines.is_empty() {
        return 1;
    }
    let w = weyl_group();
    let fk = family_keys();
    let key = (w.reflection_subgroup(p).order(), fixed_dim(p));
    let matches: Vec<usize> = (1..6).filter(|&k| fk.keys[k] == key).collect();
    if matches.len() == 1 {
        return matches[0] + 1;
    }
    let mut target = lines.clone();
    target.sort_unstable();
    for &k in &matches {
        let q = &reference_points()[k];
        let hit = w.elements().par_iter().any(|g| {
            let mut l = data.vanishing_lines(&m4_apply(g, q));
            l.sort_unstable();
            l == target
        });
        if hit {
            return k + 1;
        }
    }
    unreachable!("every point of C lies in one of the seven canonical sets")
}

/// Whether the stated finite group of family p^{k,j} maps l to m.
pub fn same_real_orbit(
    tag: crate::catalog::FamilyTag,
    l: &[CycScalar],
    m: &[CycScalar],
) -> Result<bool, crate::catalog::CatalogError> {
    crate::catalog::family(tag).ok_or(crate::catalog::CatalogError::UnknownFamily(tag.to_string()))?.same_orbit(l, m)
}

/// The centralizer of C in SL(9): monomial matrices g e_j = d_j e_s(j) with
/// sixth-root-of-unity entries fixing every p_i. The stabilizer in sl9 is
/// zero, so the group is finite and lies in this candidate set.
pub fn cartan_centralizer() -> Vec<Mat<CycScalar>> {
    let data = cartan();
    let supports: Vec<Vec<[usize; 3]>> = data
        .basis
        .iter()
        .map(|p| p.support().map(|(idx, _)| trivector::triples()[idx].map(|a| a - 1)).collect())
        .collect();
    let z6 = CycScalar::zeta12().pow(2);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..9).collect();
    loop {
        if permutation_fixes_supports(&perm, &supports) {
            // exponent sum over each triple: 0 for an even reordering of its image, 3 for odd
            let cons: Vec<([usize; 3], u32)> = supports
                .iter()
                .flatten()
                .map(|t| (*t, if permutation_sign(&t.map(|a| perm[a])) == 1 { 0 } else { 3 }))
                .collect();
            let det_target = if permutation_sign(&perm) == 1 { 0 } else { 3 };
            for code in 0..6u32.pow(9) {
                let k: [u32; 9] = std::array::from_fn(|j| (code / 6u32.pow(j as u32)) % 6);
                if k.iter().sum::<u32>() % 6 != det_target {
                    continue;
                }
                if cons.iter().all(|(t, r)| (k[t[0]] + k[t[1]] + k[t[2]]) % 6 == *r) {
                    let g = Mat::from_fn(9, 9, |i, j| {
                        if i == perm[j] {
                            z6.pow(k[j])
                        } else {
                            CycScalar::zero()
                        }
                    });
                    out.push(g);
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn permutation_fixes_supports(perm: &[usize], supports: &[Vec<[usize; 3]>]) -> bool {
    supports.iter().all(|sup| {
        sup.iter().all(|t| {
            let mut img = t.map(|a| perm[a]);
            img.sort_unstable();
            sup.contains(&img)
        })
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Dimension of the common stabilizer of p1..p4 in g0.
pub fn cartan_stabilizer_dim() -> usize {
    stabilizer_algebra(&cartan().elements).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_subalgebra_shape() {
        let d = cartan();
        assert_eq!(d.cartan_subalgebra.len(), 8);
        assert_eq!(d.lines.len(), 40);
        assert!(d.kappa_c.is_zero());
    }
}
