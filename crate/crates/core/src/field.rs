//! Dense exact linear algebra, generic over a field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::CycScalar;

/// Exact field operations needed by the linear algebra routines.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv_ref(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    /// Size estimate used to prefer small pivots.
    fn cost(&self) -> u64;
}

impl Field for CycScalar {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_int(n: i64) -> Self {
        CycScalar::from_i64(n)
    }
    fn cost(&self) -> u64 {
        self.height()
    }
}

impl Field for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn cost(&self) -> u64 {
        self.numer().abs().bits() + self.denom().bits()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form data.
pub struct Echelon<F> {
    pub mat: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out: Mat<F> = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.add_ref(self.get(i, i));
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form, choosing the cheapest pivot in each column.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for i in r..m.rows {
                let v = m.get(i, c);
                if !v.is_zero() {
                    let cost = v.cost();
                    if best.is_none_or(|(_, bc)| cost < bc) {
                        best = Some((i, cost));
                    }
                }
            }
            let Some((pi, _)) = best else { continue };
            if pi != r {
                for j in 0..m.cols {
                    m.data.swap(pi * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv_ref().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = m.data[idx].mul_ref(&inv);
                }
            }
            let prow: Vec<(usize, F)> = (c..m.cols)
                .filter(|&j| !m.get(r, j).is_zero())
                .map(|j| (j, m.get(r, j).clone()))
                .collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, pv) in prow.iter() {
                    let idx = i * m.cols + j;
                    m.data[idx] = m.data[idx].sub_ref(&f.mul_ref(pv));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let e = self.rref();
        kernel_from_echelon(&e, self.cols)
    }

    /// Basis of the left kernel {w : w M = 0}.
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        self.transpose().kernel()
    }

    /// One solution of M x = b, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in e.pivots.iter().enumerate() {
            x[c] = e.mat.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let mut best: Option<(usize, u64)> = None;
            for i in c..n {
                let v = m.get(i, c);
                if !v.is_zero() {
                    let cost = v.cost();
                    if best.is_none_or(|(_, bc)| cost < bc) {
                        best = Some((i, cost));
                    }
                }
            }
            let Some((pi, _)) = best else { return F::zero() };
            if pi != c {
                for j in 0..n {
                    m.data.swap(pi * n + j, c * n + j);
                }
                det = det.neg_ref();
            }
            let p = m.get(c, c).clone();
            det = det.mul_ref(&p);
            let inv = p.inv_ref().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c).mul_ref(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(c, j).clone();
                    if !v.is_zero() {
                        let idx = i * n + j;
                        m.data[idx] = m.data[idx].sub_ref(&f.mul_ref(&v));
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| e.mat.get(i, n + j).clone()))
    }

    /// Characteristic polynomial det(tI - M), coefficients from low to high degree.
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Hessenberg reduction followed by the standard recurrence
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(pi) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else { continue };
            if pi != c + 1 {
                for j in 0..n {
                    h.data.swap(pi * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + pi, i * n + c + 1);
                }
            }
            let inv = h.get(c + 1, c).inv_ref().unwrap();
            for i in c + 2..n {
                let f = h.get(i, c).mul_ref(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(c + 1, j).clone();
                    if !v.is_zero() {
                        let idx = i * n + j;
                        h.data[idx] = h.data[idx].sub_ref(&f.mul_ref(&v));
                    }
                }
                for k in 0..n {
                    let v = h.get(k, i).clone();
                    if !v.is_zero() {
                        let idx = k * n + c + 1;
                        h.data[idx] = h.data[idx].add_ref(&f.mul_ref(&v));
                    }
                }
            }
        }
        let mut polys: Vec<Vec<F>> = vec![vec![F::one()]];
        for m in 1..=n {
            let mut p = poly_shift_sub(&polys[m - 1], h.get(m - 1, m - 1));
            let mut prod = F::one();
            for i in 1..m {
                prod = prod.mul_ref(h.get(m - i, m - i - 1));
                let coef = prod.mul_ref(h.get(m - i - 1, m - 1));
                if coef.is_zero() {
                    continue;
                }
                let q = &polys[m - i - 1];
                for (k, qk) in q.iter().enumerate() {
                    p[k] = p[k].sub_ref(&coef.mul_ref(qk));
                }
            }
            polys.push(p);
        }
        polys.pop().unwrap()
    }
}

// (t - a) * p
fn poly_shift_sub<F: Field>(p: &[F], a: &F) -> Vec<F> {
    let mut out = vec![F::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] = out[k + 1].add_ref(c);
        out[k] = out[k].sub_ref(&a.mul_ref(c));
    }
    out
}

pub fn kernel_from_echelon<F: Field>(e: &Echelon<F>, cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &c) in e.pivots.iter().enumerate() {
            v[c] = e.mat.get(r, free).neg_ref();
        }
        basis.push(v);
    }
    basis
}

/// Incremental echelon basis used for span membership and independence tests.
#[derive(Clone)]
pub struct SpanBasis<F> {
    dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> SpanBasis<F> {
    pub fn new(dim: usize) -> Self {
        SpanBasis { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    w[j] = w[j].sub_ref(&f.mul_ref(&row[j]));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert v; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].inv_ref().unwrap();
        let w: Vec<F> = w.iter().map(|x| x.mul_ref(&inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !w[j].is_zero() {
                    row[j] = row[j].sub_ref(&f.mul_ref(&w[j]));
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Evaluate a polynomial (low to high coefficients) at x.
pub fn poly_eval<F: Field>(p: &[F], x: &F) -> F {
    let mut acc = F::zero();
    for c in p.iter().rev() {
        acc = acc.mul_ref(x).add_ref(c);
    }
    acc
}

/// Rational roots of a polynomial with rational coefficients, with multiplicity.
pub fn rational_roots(p: &[BigRational]) -> Option<Vec<BigRational>> {
    use num_integer::Integer;
    let mut p: Vec<BigRational> = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let deg = p.len().checked_sub(1)?;
    let mut roots = Vec::new();
    // strip zero roots
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        roots.push(BigRational::zero());
    }
    if p.len() == 1 {
        return Some(roots);
    }
    // clear denominators
    let mut l = BigInt::one();
    for c in &p {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let num_divs = divisors(&a0)?;
    let den_divs = divisors(&an)?;
    let mut cur = p;
    for d in &den_divs {
        for n in &num_divs {
            for sgn in [1i32, -1] {
                let cand = BigRational::new(n * BigInt::from(sgn), d.clone());
                loop {
                    if cur.len() <= 1 {
                        break;
                    }
                    let (q, r) = synthetic_div(&cur, &cand);
                    if r.is_zero() {
                        roots.push(cand.clone());
                        cur = q;
                    } else {
                        break;
                    }
                }
            }
        }
    }
    if roots.len() == deg {
        Some(roots)
    } else {
        None
    }
}

fn synthetic_div(p: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = p.len();
    let mut q = vec![BigRational::zero(); n - 1];
    let mut acc = BigRational::zero();
    for k in (0..n).rev() {
        acc = &acc * r + &p[k];
        if k > 0 {
            q[k - 1] = acc.clone();
        }
    }
    (q, acc)
}

// positive divisors by trial division; gives up above 2^64
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let mut m = n.to_u64()?;
    if m == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            let mut e = 0;
            while m % f == 0 {
                m /= f;
                e += 1;
            }
            primes.push((f, e));
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort();
    Some(divs.into_iter().map(BigInt::from).collect())
}
