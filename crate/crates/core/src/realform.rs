//! Real-form invariants of a reductive subalgebra of sl(9,R) given by a real
//! basis of 9x9 matrices: center split into real and imaginary parts, and
//! the semisimple part cut into ideals with their trace-form signatures.

use crate::classify::real_signature;
use crate::field::{Mat, SpanBasis};
use crate::scalar::CycScalar;

type Vector = Vec<CycScalar>;

/// Invariants of one ideal of the semisimple part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInvariants {
    pub dim: usize,
    /// Trace-form signature (positive, negative).
    pub signature: (usize, usize),
    /// Dimension of the centroid, when computed.
    pub centroid: Option<usize>,
    /// For a two-dimensional centroid: whether it is a field (complex type).
    pub complex_type: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFormData {
    pub dim: usize,
    /// Central elements with real eigenvalues and with imaginary eigenvalues.
    pub center: (usize, usize),
    pub ideals: Vec<IdealInvariants>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealFormError {
    #[error("basis is not real")]
    NotReal,
    #[error("algebra is not reductive")]
    NotReductive,
    #[error("basis is linearly dependent")]
    Dependent,
}

/// Coordinates with respect to a linearly independent family of vectors.
struct Coords {
    pivots: Vec<usize>,
    inv: Mat<CycScalar>,
}

impl Coords {
    fn new(basis: &[Vector]) -> Option<Coords> {
        let m = basis.len();
        if m == 0 {
            return Some(Coords { pivots: Vec::new(), inv: Mat::zeros(0, 0) });
        }
        let t = Mat::from_rows(basis.to_vec());
        let ech = t.rref();
        if ech.pivots.len() != m {
            return None;
        }
        let pivots = ech.pivots.clone();
        let sub = Mat::from_fn(m, m, |r, c| basis[c][pivots[r]].clone());
        Some(Coords { inv: sub.inverse()?, pivots })
    }

    fn of(&self, v: &[CycScalar]) -> Vector {
        let w: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.inv.mul_vec(&w)
    }
}

fn combine(basis: &[Vector], c: &[CycScalar]) -> Vector {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = vec![CycScalar::zero(); n];
    for (b, x) in basis.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(b) {
            if !y.is_zero() {
                *o += &(x * y);
            }
        }
    }
    out
}

fn flatten(m: &Mat<CycScalar>) -> Vector {
    m.data.clone()
}

fn commutator(a: &Mat<CycScalar>, b: &Mat<CycScalar>) -> Mat<CycScalar> {
    a.mul(b).sub(&b.mul(a))
}

fn echelon_basis(vs: Vec<Vector>) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let ech = Mat::from_rows(vs).rref();
    (0..ech.pivots.len()).map(|r| ech.mat.row(r).to_vec()).collect()
}

/// Structure of the algebra in coordinates of the given basis.
struct Structure {
    n: usize,
    /// ad[i] has column j equal to the coordinates of [b_i, b_j].
    ad: Vec<Mat<CycScalar>>,
    /// Trace form tr(b_i b_j).
    gram: Mat<CycScalar>,
}

impl Structure {
    fn ad_of(&self, x: &[CycScalar]) -> Mat<CycScalar> {
        let mut out = Mat::zeros(self.n, self.n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.ad[i].scale(c));
            }
        }
        out
    }

    fn form(&self, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
        let gy = self.gram.mul_vec(y);
        let mut acc = CycScalar::zero();
        for (a, b) in x.iter().zip(&gy) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    fn gram_on(&self, basis: &[Vector]) -> Mat<CycScalar> {
        let m = basis.len();
        Mat::from_fn(m, m, |r, c| self.form(&basis[r], &basis[c]))
    }
}

/// Analyse the real Lie algebra spanned by the given real matrices.
pub fn real_form(basis: &[Mat<CycScalar>]) -> Result<RealFormData, RealFormError> {
    if basis.iter().any(|m| m.data.iter().any(|x| !x.is_real())) {
        return Err(RealFormError::NotReal);
    }
    let n = basis.len();
    if n == 0 {
        return Ok(RealFormData { dim: 0, center: (0, 0), ideals: Vec::new() });
    }
    let flat: Vec<Vector> = basis.iter().map(flatten).collect();
    let coords = Coords::new(&flat).ok_or(RealFormError::Dependent)?;
    let mut ad = Vec::with_capacity(n);
    for i in 0..n {
        let cols: Vec<Vector> = (0..n).map(|j| coords.of(&flatten(&commutator(&basis[i], &basis[j])))).collect();
        ad.push(Mat::from_fn(n, n, |r, c| cols[c][r].clone()));
    }
    let gram = Mat::from_fn(n, n, |r, c| basis[r].mul(&basis[c]).trace());
    let st = Structure { n, ad, gram };

    // center: sum_i c_i [b_i, b_j] = 0 for every j
    let cm = Mat::from_fn(n * n, n, |r, i| st.ad[i].get(r % n, r / n).clone());
    let center = cm.kernel();
    let derived = echelon_basis(
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i < j).map(|(i, j)| st.ad[i].col(j)).collect(),
    );
    let mut joint = SpanBasis::new(n);
    for v in center.iter().chain(&derived) {
        joint.insert(v);
    }
    if joint.len() != n || center.len() + derived.len() != n {
        return Err(RealFormError::NotReductive);
    }
    let (pos, neg, null) = real_signature(st.gram_on(&center)).ok_or(RealFormError::NotReal)?;
    if null != 0 {
        return Err(RealFormError::NotReductive);
    }

    let parts = split_ideals(&st, &derived)?;
    let mut ideals = Vec::new();
    for part in &parts {
        let (p, q, z) = real_signature(st.gram_on(part)).ok_or(RealFormError::NotReal)?;
        if z != 0 {
            return Err(RealFormError::NotReductive);
        }
        let dim = part.len();
        let (centroid, complex_type) = if p == q || dim <= 8 {
            let cent = centroid(&st, part)?;
            let ct = if cent.len() == 2 { Some(is_field(&cent)) } else { None };
            (Some(cent.len()), ct)
        } else {
            (None, None)
        };
        ideals.push(IdealInvariants { dim, signature: (p, q), centroid, complex_type });
    }
    Ok(RealFormData { dim: n, center: (pos, neg), ideals })
}

fn ideal_generated(st: &Structure, s_ads: &[Mat<CycScalar>], v: &[CycScalar]) -> Vec<Vector> {
    let mut span = SpanBasis::new(st.n);
    let mut out = Vec::new();
    if span.insert(v) {
        out.push(v.to_vec());
    }
    let mut i = 0;
    while i < out.len() {
        let w = out[i].clone();
        for a in s_ads {
            let u = a.mul_vec(&w);
            if span.insert(&u) {
                out.push(u);
            }
        }
        i += 1;
    }
    out
}

fn intersect(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = a[0].len();
    let m = Mat::from_fn(n, a.len() + b.len(), |r, c| {
        if c < a.len() {
            a[c][r].clone()
        } else {
            -b[c - a.len()][r].clone()
        }
    });
    let ker = m.kernel();
    echelon_basis(ker.iter().map(|k| combine(a, &k[..a.len()])).collect())
}

fn orthogonal_within(st: &Structure, part: &[Vector], other: &[Vector]) -> Vec<Vector> {
    let m = Mat::from_fn(other.len(), part.len(), |r, c| st.form(&other[r], &part[c]));
    echelon_basis(m.kernel().iter().map(|k| combine(part, k)).collect())
}

fn split_ideals(st: &Structure, s: &[Vector]) -> Result<Vec<Vec<Vector>>, RealFormError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let s_ads: Vec<Mat<CycScalar>> = s.iter().map(|v| st.ad_of(v)).collect();
    let mut parts = vec![s.to_vec()];
    for v in s {
        let ideal = ideal_generated(st, &s_ads, v);
        if ideal.len() == s.len() {
            continue;
        }
        let mut next = Vec::new();
        for p in parts {
            let a = intersect(&p, &ideal);
            let b = orthogonal_within(st, &p, &ideal);
            if a.is_empty() || b.is_empty() {
                next.push(p);
                continue;
            }
            if a.len() + b.len() != p.len() {
                return Err(RealFormError::NotReductive);
            }
            next.push(a);
            next.push(b);
        }
        parts = next;
    }
    Ok(parts)
}

/// Basis of the centroid of an ideal, as matrices in coordinates of `part`.
fn centroid(st: &Structure, part: &[Vector]) -> Result<Vec<Mat<CycScalar>>, RealFormError> {
    let m = part.len();
    let pc = Coords::new(part).ok_or(RealFormError::Dependent)?;
    let a: Vec<Mat<CycScalar>> = part
        .iter()
        .map(|x| {
            let adx = st.ad_of(x);
            let cols: Vec<Vector> = part.iter().map(|y| pc.of(&adx.mul_vec(y))).collect();
            Mat::from_fn(m, m, |r, c| cols[c][r].clone())
        })
        .collect();

    // a module map is fixed by its values on cyclic generators
    let mut span = SpanBasis::new(m);
    let mut us: Vec<(Vector, usize, Mat<CycScalar>)> = Vec::new();
    let mut roots = 0;
    for start in 0..m {
        let mut e = vec![CycScalar::zero(); m];
        e[start] = CycScalar::one();
        if !span.insert(&e) {
            continue;
        }
        let first = us.len();
        us.push((e, roots, Mat::identity(m)));
        let mut i = first;
        while i < us.len() {
            let (u, _, w) = us[i].clone();
            for aj in &a {
                let v = aj.mul_vec(&u);
                if span.insert(&v) {
                    us.push((v, roots, aj.mul(&w)));
                }
            }
            i += 1;
        }
        roots += 1;
    }
    let u = Mat::from_fn(m, m, |r, c| us[c].0[r].clone());
    let uinv = u.inverse().ok_or(RealFormError::Dependent)?;
    let unknowns = m * roots;
    // L_l maps the unknown vectors w_r to T(u_l) = W_l w_{r(l)}
    let lmaps: Vec<Mat<CycScalar>> = us
        .iter()
        .map(|(_, r, w)| Mat::from_fn(m, unknowns, |i, c| if c / m == *r { w.get(i, c % m).clone() } else { CycScalar::zero() }))
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    for aj in &a {
        for k in 0..m {
            let c = uinv.mul_vec(&aj.mul_vec(&us[k].0));
            let mut lhs = aj.mul(&lmaps[k]).scale(&-CycScalar::one());
            for (l, cl) in c.iter().enumerate() {
                if !cl.is_zero() {
                    lhs = lhs.add(&lmaps[l].scale(cl));
                }
            }
            for r in 0..m {
                let row = lhs.row(r).to_vec();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut e = vec![CycScalar::zero(); unknowns];
                e[i] = CycScalar::one();
                e
            })
            .collect()
    } else {
        Mat::from_rows(rows).kernel()
    };
    Ok(ker
        .iter()
        .map(|w| {
            let images: Vec<Vector> = lmaps.iter().map(|l| l.mul_vec(w)).collect();
            Mat::from_fn(m, m, |r, c| images[c][r].clone()).mul(&uinv)
        })
        .collect())
}

/// For a two-dimensional centroid spanned by 1 and T: T^2 = alpha T + beta
/// has no real root exactly when the centroid is a field.
fn is_field(cent: &[Mat<CycScalar>]) -> bool {
    let m = cent[0].rows;
    let id = Mat::identity(m);
    let is_scalar = |t: &Mat<CycScalar>| {
        let c = t.get(0, 0).clone();
        t.sub(&id.scale(&c)).is_zero()
    };
    let t = if is_scalar(&cent[0]) { &cent[1] } else { &cent[0] };
    let t2 = t.mul(t);
    let sys = Mat::from_fn(m * m, 2, |r, c| if c == 0 { t.data[r].clone() } else { id.data[r].clone() });
    let Some(ab) = sys.solve(&t2.data) else { return false };
    let disc = &(&ab[0] * &ab[0]) + &(&CycScalar::from_i64(4) * &ab[1]);
    disc.sign_real() == Some(-1)
}
