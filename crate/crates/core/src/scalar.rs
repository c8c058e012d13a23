//! Exact arithmetic in the cyclotomic field Q(z12).
//!
//! Elements are stored as four rationals over a common denominator in the
//! power basis {1, z, z^2, z^3} of a primitive 12th root of unity `z`, reduced
//! modulo x^4 - x^2 + 1. Values whose numerators and denominator fit in 62
//! bits stay on an inline fast path; everything else spills to big integers.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

const SMALL_LIMIT: i128 = 1 << 62;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small([i64; 4], i64),
    Big(Box<([BigInt; 4], BigInt)>),
}

/// An element of Q(z12), immutable and cheap to clone on the fast path.
#[derive(Clone, PartialEq, Eq)]
pub struct CycScalar {
    repr: Repr,
}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{sym}' at position {pos}")]
    UnknownSymbol { pos: usize, sym: String },
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            break;
        }
    }
    a << shift
}

fn from_i128(mut n: [i128; 4], mut d: i128) -> CycScalar {
    debug_assert!(d != 0);
    if d < 0 {
        d = -d;
        for x in n.iter_mut() {
            *x = -*x;
        }
    }
    if n.iter().all(|x| *x == 0) {
        return CycScalar::zero();
    }
    let mut g = d.unsigned_abs();
    for x in n.iter() {
        if g == 1 {
            break;
        }
        g = gcd_u128(g, x.unsigned_abs());
    }
    if g > 1 {
        let g = g as i128;
        d /= g;
        for x in n.iter_mut() {
            *x /= g;
        }
    }
    if d < SMALL_LIMIT && n.iter().all(|x| x.abs() < SMALL_LIMIT) {
        CycScalar {
            repr: Repr::Small([n[0] as i64, n[1] as i64, n[2] as i64, n[3] as i64], d as i64),
        }
    } else {
        let nb = [
            BigInt::from(n[0]),
            BigInt::from(n[1]),
            BigInt::from(n[2]),
            BigInt::from(n[3]),
        ];
        CycScalar {
            repr: Repr::Big(Box::new((nb, BigInt::from(d)))),
        }
    }
}

fn from_big(mut n: [BigInt; 4], mut d: BigInt) -> CycScalar {
    debug_assert!(!d.is_zero());
    if d.is_negative() {
        d = -d;
        for x in n.iter_mut() {
            *x = -x.clone();
        }
    }
    if n.iter().all(|x| x.is_zero()) {
        return CycScalar::zero();
    }
    let mut g = d.clone();
    for x in n.iter() {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if !g.is_one() {
        d /= &g;
        for x in n.iter_mut() {
            *x /= &g;
        }
    }
    let lim = BigInt::from(SMALL_LIMIT);
    if d < lim && n.iter().all(|x| x.abs() < lim) {
        CycScalar {
            repr: Repr::Small(
                [
                    n[0].to_i64().unwrap(),
                    n[1].to_i64().unwrap(),
                    n[2].to_i64().unwrap(),
                    n[3].to_i64().unwrap(),
                ],
                d.to_i64().unwrap(),
            ),
        }
    } else {
        CycScalar {
            repr: Repr::Big(Box::new((n, d))),
        }
    }
}

// product of two cubics reduced modulo x^4 - x^2 + 1
fn reduce7<T>(c: [T; 7]) -> [T; 4]
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    let [c0, c1, c2, c3, c4, c5, c6] = c;
    [
        c0 - c4.clone() - c6,
        c1 - c5.clone(),
        c2 + c4,
        c3 + c5,
    ]
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            repr: Repr::Small([0; 4], 1),
        }
    }

    pub fn one() -> Self {
        CycScalar::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        from_i128([n as i128, 0, 0, 0], 1)
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        from_i128([n as i128, 0, 0, 0], d as i128)
    }

    pub fn from_rational(q: &BigRational) -> Self {
        from_big(
            [q.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            q.denom().clone(),
        )
    }

    /// Build from rational coordinates in the power basis {1, z, z^2, z^3}.
    pub fn from_power_basis(c: [BigRational; 4]) -> Self {
        let mut d = BigInt::one();
        for q in c.iter() {
            d = d.lcm(q.denom());
        }
        let n = c.map(|q| q.numer() * (&d / q.denom()));
        from_big(n, d)
    }

    /// Build from coordinates (a, b, c, d) meaning a + b*sqrt3 + c*i + d*i*sqrt3.
    pub fn from_display_basis(c: [BigRational; 4]) -> Self {
        let [r, s, u, v] = c;
        let two = BigRational::from_integer(BigInt::from(2));
        CycScalar::from_power_basis([&r - &v, &s * &two, &v * &two, &u - &s])
    }

    /// The primitive 12th root of unity z = (sqrt3 + i)/2.
    pub fn zeta12() -> Self {
        from_i128([0, 1, 0, 0], 1)
    }

    pub fn i() -> Self {
        from_i128([0, 0, 0, 1], 1)
    }

    pub fn sqrt3() -> Self {
        from_i128([0, 2, 0, -1], 1)
    }

    /// Primitive cube root of unity (-1 + i*sqrt3)/2.
    pub fn zeta3() -> Self {
        from_i128([-1, 0, 1, 0], 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Small(n, _) if n.iter().all(|x| *x == 0))
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Small([1, 0, 0, 0], 1))
    }

    fn big_parts(&self) -> ([BigInt; 4], BigInt) {
        match &self.repr {
            Repr::Small(n, d) => (n.map(BigInt::from), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    /// Power basis coordinates as rationals.
    pub fn power_coords(&self) -> [BigRational; 4] {
        let (n, d) = self.big_parts();
        n.map(|x| BigRational::new(x, d.clone()))
    }

    /// Coordinates (a, b, c, d) in the display basis {1, sqrt3, i, i*sqrt3}.
    pub fn display_coords(&self) -> [BigRational; 4] {
        let [a0, a1, a2, a3] = self.power_coords();
        let two = BigRational::from_integer(BigInt::from(2));
        [
            &a0 + &a2 / &two,
            &a1 / &two,
            &a1 / &two + &a3,
            &a2 / &two,
        ]
    }

    /// True if the value lies in Q.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small(n, _) => n[1] == 0 && n[2] == 0 && n[3] == 0,
            Repr::Big(b) => b.0[1].is_zero() && b.0[2].is_zero() && b.0[3].is_zero(),
        }
    }

    /// The rational value, if the element is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.power_coords()[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugation z -> z^-1.
    pub fn conj(&self) -> Self {
        // z^-1 = z - z^3, z^-2 = 1 - z^2, z^-3 = -z^3
        match &self.repr {
            Repr::Small(n, d) => {
                let n = n.map(|x| x as i128);
                from_i128([n[0] + n[2], n[1], -n[2], -n[1] - n[3]], *d as i128)
            }
            Repr::Big(b) => {
                let n = &b.0;
                from_big(
                    [&n[0] + &n[2], n[1].clone(), -&n[2], -&n[1] - &n[3]],
                    b.1.clone(),
                )
            }
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // a * conj(a) lies in Q(sqrt3)
        let c = self.conj();
        let nrm = self * &c;
        let [r, s, _, _] = nrm.display_coords();
        let den = &r * &r - BigRational::from_integer(BigInt::from(3)) * &s * &s;
        let inv_real = CycScalar::from_display_basis([
            &r / &den,
            -(&s / &den),
            BigRational::zero(),
            BigRational::zero(),
        ]);
        Ok(&c * &inv_real)
    }

    /// Exact sign of a real value r + s*sqrt3; None when not real.
    pub fn sign_real(&self) -> Option<i32> {
        if !self.is_real() {
            return None;
        }
        let [r, s, _, _] = self.display_coords();
        let (sr, ss) = (sign_of(r.numer()), sign_of(s.numer()));
        if sr == 0 || ss == 0 || sr == ss {
            return Some(if sr != 0 { sr } else { ss });
        }
        // opposite signs: compare r^2 with 3 s^2
        let three = BigRational::from_integer(BigInt::from(3));
        let d = &r * &r - three * &s * &s;
        Some(sr * sign_of(d.numer()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Bit-size heuristic used for pivot selection.
    pub fn height(&self) -> u64 {
        match &self.repr {
            Repr::Small(n, d) => {
                let m = n.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).max(*d as u64);
                let terms = n.iter().filter(|x| **x != 0).count() as u64;
                (64 - m.leading_zeros() as u64) + 4 * terms
            }
            Repr::Big(b) => {
                let m = b.0.iter().map(|x| x.bits()).max().unwrap_or(0).max(b.1.bits());
                m + 16 + 4 * b.0.iter().filter(|x| !x.is_zero()).count() as u64
            }
        }
    }

    /// Common denominator and integer numerators in the power basis.
    pub fn numerators(&self) -> ([BigInt; 4], BigInt) {
        self.big_parts()
    }

    /// Floating-point approximation (re, im), for reports only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let [a, b, c, d] = self.display_coords();
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        let s3 = 3f64.sqrt();
        (f(&a) + f(&b) * s3, f(&c) + f(&d) * s3)
    }

    /// Evaluate under the ring map Z[z][1/den] -> F_p sending z to `w`.
    /// Returns None when p divides the denominator.
    pub fn reduce_mod(&self, p: u64, w: u64) -> Option<u64> {
        let (n, d) = match &self.repr {
            Repr::Small(n, d) => {
                let r = |x: i64| x.rem_euclid(p as i64) as u64;
                (n.map(r), r(*d))
            }
            Repr::Big(b) => {
                let pb = BigInt::from(p);
                let r = |x: &BigInt| x.mod_floor(&pb).to_u64().unwrap();
                ([r(&b.0[0]), r(&b.0[1]), r(&b.0[2]), r(&b.0[3])], r(&b.1))
            }
        };
        if d == 0 {
            return None;
        }
        let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut acc = 0u64;
        let mut pw = 1u64;
        for c in n.iter() {
            acc = (acc + mulm(*c, pw)) % p;
            pw = mulm(pw, w);
        }
        Some(mulm(acc, crate::modular::inv_mod(d, p)))
    }

    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        parse_scalar(text)
    }
}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_i64(n)
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, o: &CycScalar) -> CycScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        match (&self.repr, &o.repr) {
            (Repr::Small(a, da), Repr::Small(b, db)) => {
                let (da, db) = (*da as i128, *db as i128);
                if da == db {
                    from_i128(
                        [
                            a[0] as i128 + b[0] as i128,
                            a[1] as i128 + b[1] as i128,
                            a[2] as i128 + b[2] as i128,
                            a[3] as i128 + b[3] as i128,
                        ],
                        da,
                    )
                } else {
                    let f = |k: usize| a[k] as i128 * db + b[k] as i128 * da;
                    from_i128([f(0), f(1), f(2), f(3)], da * db)
                }
            }
            _ => {
                let (a, da) = self.big_parts();
                let (b, db) = o.big_parts();
                let n = [0, 1, 2, 3].map(|k| &a[k] * &db + &b[k] * &da);
                from_big(n, da * db)
            }
        }
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        match &self.repr {
            Repr::Small(n, d) => CycScalar {
                repr: Repr::Small(n.map(|x| -x), *d),
            },
            Repr::Big(b) => CycScalar {
                repr: Repr::Big(Box::new((b.0.clone().map(|x| -x), b.1.clone()))),
            },
        }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, o: &CycScalar) -> CycScalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, o: &CycScalar) -> CycScalar {
        if self.is_zero() || o.is_zero() {
            return CycScalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        match (&self.repr, &o.repr) {
            (Repr::Small(a, da), Repr::Small(b, db)) => {
                let a = a.map(|x| x as i128);
                let b = b.map(|x| x as i128);
                let mut c = [0i128; 7];
                for i in 0..4 {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..4 {
                        c[i + j] += a[i] * b[j];
                    }
                }
                from_i128(reduce7(c), *da as i128 * *db as i128)
            }
            _ => {
                let (a, da) = self.big_parts();
                let (b, db) = o.big_parts();
                let mut c: [BigInt; 7] = Default::default();
                for i in 0..4 {
                    if a[i].is_zero() {
                        continue;
                    }
                    for j in 0..4 {
                        c[i + j] += &a[i] * &b[j];
                    }
                }
                from_big(reduce7(c), da * db)
            }
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, o: CycScalar) -> CycScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, o: &CycScalar) -> CycScalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Div<CycScalar> for CycScalar {
    type Output = CycScalar;
    /// Panics on division by zero; use `checked_div` for a fallible variant.
    fn div(self, o: CycScalar) -> CycScalar {
        self.checked_div(&o).expect("division by zero")
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, o: &CycScalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, o: &CycScalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, o: &CycScalar) {
        *self = &*self * o;
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        CycScalar::one()
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl CycScalar {
    /// Number of nonzero display-basis components.
    pub fn display_terms(&self) -> usize {
        self.display_coords().iter().filter(|q| !q.is_zero()).count()
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.display_coords();
        let syms = ["", "r3", "i", "i*r3"];
        let mut out = String::new();
        for (k, q) in c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if k == 0 {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(syms[k]);
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(syms[k]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recursive-descent parser shared with the trivector grammar.
pub(crate) struct Cursor<'a> {
    pub(crate) s: &'a [u8],
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub(crate) fn peek_at(&self, off: usize) -> Option<u8> {
        let mut p = self.pos;
        while p < self.s.len() && self.s[p].is_ascii_whitespace() {
            p += 1;
        }
        self.s.get(p + off).copied()
    }

    pub(crate) fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn natural(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse::<BigInt>().unwrap())
    }

    fn rational(&mut self) -> Result<CycScalar, ScalarError> {
        let n = self.natural()?;
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let d = self.natural()?;
                if d.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                return Ok(CycScalar::from_rational(&BigRational::new(n, d)));
            }
            self.pos = save;
        }
        Ok(CycScalar::from_rational(&BigRational::from_integer(n)))
    }

    fn factor(&mut self) -> Result<CycScalar, ScalarError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(b'(') => {
                self.pos += 1;
                let v = self.scalar()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let sym = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match sym {
                    "i" => Ok(CycScalar::i()),
                    "r3" => Ok(CycScalar::sqrt3()),
                    "z3" => Ok(CycScalar::zeta3()),
                    _ => Err(ScalarError::UnknownSymbol {
                        pos: start,
                        sym: sym.to_string(),
                    }),
                }
            }
            Some(_) => Err(self.err("expected a factor")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// True if the next factor is a trivector basis symbol `e<digits>`.
    pub(crate) fn at_basis_symbol(&self) -> bool {
        self.peek_at(0) == Some(b'e') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit())
    }

    pub(crate) fn term(&mut self) -> Result<CycScalar, ScalarError> {
        let mut v = self.factor()?;
        loop {
            if self.peek() == Some(b'*') {
                let save = self.pos;
                self.pos += 1;
                if self.at_basis_symbol() {
                    self.pos = save;
                    return Ok(v);
                }
                let f = self.factor()?;
                v = &v * &f;
            } else {
                break;
            }
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.natural()?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            v = &v * &CycScalar::from_rational(&BigRational::new(BigInt::one(), d));
        }
        Ok(v)
    }

    pub(crate) fn scalar(&mut self) -> Result<CycScalar, ScalarError> {
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut v = self.term()?;
        if neg {
            v = -v;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = &v + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    v = &v - &t;
                }
                _ => break,
            }
        }
        Ok(v)
    }
}

/// Parse a scalar such as `-1/2`, `(-1+i*r3)/2`, `3*i` or `z3`.
pub fn parse_scalar(text: &str) -> Result<CycScalar, ScalarError> {
    let mut c = Cursor::new(text);
    let v = c.scalar()?;
    if c.peek().is_some() {
        return Err(c.err("trailing input"));
    }
    Ok(v)
}

/// Sign of a BigInt as -1, 0, 1.
pub(crate) fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> CycScalar {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn constants() {
        let i = CycScalar::i();
        assert_eq!(&i * &i, CycScalar::from_i64(-1));
        let r3 = CycScalar::sqrt3();
        assert_eq!(&r3 * &r3, CycScalar::from_i64(3));
        let z = CycScalar::zeta3();
        assert!(!z.is_one());
        assert!(z.pow(3).is_one());
        assert_eq!(CycScalar::zeta12().pow(12), CycScalar::one());
        assert_ne!(CycScalar::zeta12().pow(6), CycScalar::one());
    }

    #[test]
    fn zeta_from_display_form() {
        // (-1 + i*sqrt3)/2 expanded by hand: z^2 - 1 in the power basis
        let expect = CycScalar::from_power_basis([
            BigRational::from_integer((-1).into()),
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
        ]);
        assert_eq!(s("(-1+i*r3)/2"), expect);
        assert_eq!(s("(-1+i*r3)/2"), s("z3"));
    }

    #[test]
    fn conjugation() {
        assert_eq!(CycScalar::i().conj(), -CycScalar::i());
        assert_eq!(CycScalar::sqrt3().conj(), CycScalar::sqrt3());
        let z = CycScalar::zeta3();
        assert_eq!(z.conj(), &z * &z);
        assert_eq!(CycScalar::zeta12().conj(), CycScalar::zeta12().pow(11));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(s("1/2"), CycScalar::from_frac(1, 2));
        assert_eq!(s("3*i"), &CycScalar::from_i64(3) * &CycScalar::i());
        assert_eq!(s("-1/2"), CycScalar::from_frac(-1, 2));
        assert_eq!(s("i*r3/2 - 1/2"), s("z3"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_scalar("1+"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(
            parse_scalar("2*q"),
            Err(ScalarError::UnknownSymbol { pos: 2, .. })
        ));
        assert!(matches!(parse_scalar("1/0"), Err(ScalarError::DivisionByZero)));
        assert!(parse_scalar("(1+i").is_err());
    }

    #[test]
    fn inverse_and_division() {
        let a = s("3 + 2*i - 5*r3 + 1/7*i*r3");
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(CycScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn big_path_roundtrip() {
        let a = s("123456789012345678901234567890/7 + 3*i");
        let b = s("98765432109876543210987654321*r3 - 1/3");
        let p = &a * &b;
        assert_eq!(&p * &b.inv().unwrap(), a);
        assert_eq!(parse_scalar(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn real_signs() {
        assert_eq!(s("2-r3").sign_real(), Some(1));
        assert_eq!(s("1-r3").sign_real(), Some(-1));
        assert_eq!(s("-7/4+r3").sign_real(), Some(-1));
        assert_eq!(s("0").sign_real(), Some(0));
        assert_eq!(s("i").sign_real(), None);
    }

    #[test]
    fn formatter() {
        assert_eq!(s("z3").to_string(), "-1/2+1/2*i*r3");
        assert_eq!(CycScalar::zero().to_string(), "0");
        assert_eq!(s("-i").to_string(), "-i");
    }
}
