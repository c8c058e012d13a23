//! Word-size prime field arithmetic, Chinese remaindering and rational
//! reconstruction.
//!
//! Primes are congruent to 1 mod 12, so Q(z12) has four embeddings into F_p
//! (one per root of x^4 - x^2 + 1), and an element of Z[z12] is recovered from
//! its four images by a 4x4 Vandermonde solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::CycScalar;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes p = 1 mod 12 just below 2^31, in decreasing order.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 31) - ((1u64 << 31) % 12) + 1;
    while out.len() < count {
        n -= 12;
        if is_prime(n) {
            out.push(n);
        }
    }
    out
}

/// The four roots of x^4 - x^2 + 1 in F_p, as w, w^5, w^7, w^11.
pub fn zeta12_roots(p: u64) -> [u64; 4] {
    assert_eq!(p % 12, 1);
    for g in 2..p {
        let w = pow_mod(g, (p - 1) / 12, p);
        if pow_mod(w, 4, p) != 1 && pow_mod(w, 6, p) != 1 {
            return [w, pow_mod(w, 5, p), pow_mod(w, 7, p), pow_mod(w, 11, p)];
        }
    }
    unreachable!("no primitive 12th root")
}

/// Solve for (a0..a3) from the values a0 + a1 w + a2 w^2 + a3 w^3 at the four roots.
pub fn from_embeddings(vals: [u64; 4], roots: [u64; 4], p: u64) -> [u64; 4] {
    let mut m = [[0u64; 5]; 4];
    for r in 0..4 {
        let mut pw = 1u64;
        for c in 0..4 {
            m[r][c] = pw;
            pw = mul_mod(pw, roots[r], p);
        }
        m[r][4] = vals[r] % p;
    }
    for c in 0..4 {
        let piv = (c..4).find(|&r| m[r][c] != 0).expect("distinct roots");
        m.swap(c, piv);
        let inv = inv_mod(m[c][c], p);
        for j in 0..5 {
            m[c][j] = mul_mod(m[c][j], inv, p);
        }
        for r in 0..4 {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..5 {
                    m[r][j] = (m[r][j] + p - mul_mod(f, m[c][j], p)) % p;
                }
            }
        }
    }
    [m[0][4], m[1][4], m[2][4], m[3][4]]
}

/// Incremental Chinese remaindering of a residue vector.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub residues: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            residues: vec![BigInt::zero(); len],
        }
    }

    pub fn add_prime(&mut self, p: u64, vals: &[u64]) {
        assert_eq!(vals.len(), self.residues.len());
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).to_u64().unwrap();
        let inv = inv_mod(m_mod_p, p);
        for (r, &v) in self.residues.iter_mut().zip(vals) {
            let r_mod_p = (&*r % &pb).to_u64().unwrap();
            let t = mul_mod((v + p - r_mod_p) % p, inv, p);
            *r += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every residue; None if some entry fails.
    pub fn reconstruct(&self) -> Option<Vec<BigRational>> {
        self.residues
            .iter()
            .map(|r| rational_reconstruct(r, &self.modulus))
            .collect()
    }

    /// Symmetric-range integer lift of every residue.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus / 2;
        self.residues
            .iter()
            .map(|r| if *r > half { r - &self.modulus } else { r.clone() })
            .collect()
    }
}

/// Find n/d = a mod m with |n|, d below sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Reconstruct cyclotomic scalars from power-basis residues, 4 per entry.
pub fn reconstruct_cyc(crt: &Crt) -> Option<Vec<CycScalar>> {
    let q = crt.reconstruct()?;
    Some(
        q.chunks(4)
            .map(|c| CycScalar::from_power_basis([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
            .collect(),
    )
}

/// Reduce a scalar at every embedding of a prime; None if p divides a denominator.
pub fn embed(x: &CycScalar, p: u64, roots: &[u64; 4]) -> Option<[u64; 4]> {
    Some([
        x.reduce_mod(p, roots[0])?,
        x.reduce_mod(p, roots[1])?,
        x.reduce_mod(p, roots[2])?,
        x.reduce_mod(p, roots[3])?,
    ])
}

/// Dense polynomials over F_p, coefficients from low to high degree.
pub mod poly {
    use super::{inv_mod, mul_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect())
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect())
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let pp = p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let o = &mut out[i + j];
                *o += x as u128 * y as u128;
                if *o >= pp * pp * 4 {
                    *o %= pp;
                }
            }
        }
        trim(out.into_iter().map(|x| (x % pp) as u64).collect())
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        trim(a.iter().map(|x| mul_mod(*x, c, p)).collect())
    }

    /// Quotient and remainder; b must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - mul_mod(c, bi, p)) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn deriv(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| mul_mod(*c, i as u64 % p, p)).collect())
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            Some(&l) => scale(a, inv_mod(l, p), p),
            None => Vec::new(),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    /// Inverse of a modulo m, if gcd(a, m) = 1.
    pub fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r2) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv_mod(r0[0], p);
        Some(rem(&scale(&s0, c, p), m, p))
    }

    /// f(q) mod m by Horner's rule.
    pub fn compose_mod(f: &[u64], q: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut acc: Vec<u64> = Vec::new();
        for &c in f.iter().rev() {
            acc = rem(&add(&mul(&acc, q, p), &[c], p), m, p);
        }
        acc
    }

    /// Jordan-Chevalley polynomial: q = t mod the squarefree part of mu with
    /// mu0(q) = 0 mod mu, so that q(A) is the semisimple part of A.
    pub fn jordan_chevalley(mu: &[u64], p: u64) -> Option<Vec<u64>> {
        let g = gcd(mu, &deriv(mu, p), p);
        let mu0 = divrem(mu, &g, p).0;
        let d0 = deriv(&mu0, p);
        let mut q = rem(&[0, 1], mu, p);
        for _ in 0..64 {
            let f = compose_mod(&mu0, &q, mu, p);
            if f.is_empty() {
                return Some(q);
            }
            let d = compose_mod(&d0, &q, mu, p);
            let dinv = inv_mod_poly(&d, mu, p)?;
            q = sub(&q, &rem(&mul(&f, &dinv, p), mu, p), p);
        }
        None
    }
}

/// Characteristic polynomial of a dense n x n matrix over F_p (row-major),
/// coefficients from low to high degree.
pub fn charpoly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    for c in 0..n.saturating_sub(2) {
        let Some(pi) = (c + 1..n).find(|&i| h[i * n + c] != 0) else { continue };
        if pi != c + 1 {
            for j in 0..n {
                h.swap(pi * n + j, (c + 1) * n + j);
            }
            for i in 0..n {
                h.swap(i * n + pi, i * n + c + 1);
            }
        }
        let inv = inv_mod(h[(c + 1) * n + c], p);
        for i in c + 2..n {
            let f = mul_mod(h[i * n + c], inv, p);
            if f == 0 {
                continue;
            }
            for j in 0..n {
                let v = h[(c + 1) * n + j];
                if v != 0 {
                    h[i * n + j] = (h[i * n + j] + p - mul_mod(f, v, p)) % p;
                }
            }
            for k in 0..n {
                let v = h[k * n + i];
                if v != 0 {
                    h[k * n + c + 1] = (h[k * n + c + 1] + mul_mod(f, v, p)) % p;
                }
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let a = h[(m - 1) * n + m - 1];
        let mut cur = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % p;
            cur[k] = (cur[k] + p - mul_mod(a, c, p)) % p;
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = mul_mod(prod, h[(m - i) * n + m - i - 1], p);
            let coef = mul_mod(prod, h[(m - i - 1) * n + m - 1], p);
            if coef == 0 {
                continue;
            }
            for (k, &qk) in polys[m - i - 1].iter().enumerate() {
                cur[k] = (cur[k] + p - mul_mod(coef, qk, p)) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}
