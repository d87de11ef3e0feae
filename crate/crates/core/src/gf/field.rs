use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Conway polynomials, coefficients low-to-high, for `p ∈ {2,3,5}` and
/// `2 ≤ e ≤ 8`.
const CONWAY: &[(u32, &[u32])] = &[
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 2, 1, 0, 2, 0, 1]),
    (3, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (5, &[2, 1, 4, 0, 1]),
    (5, &[3, 4, 0, 0, 0, 1]),
    (5, &[2, 0, 1, 4, 1, 0, 1]),
    (5, &[3, 3, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 4, 3, 0, 1, 0, 0, 0, 1]),
];

pub const MAX_EXTENSION_DEGREE: u32 = 8;
/// Largest field order for which log/exp tables are built.
const MAX_FIELD_ORDER: u64 = 1 << 24;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parameters of `GF(p^e)`: the prime, the degree and a monic irreducible
/// modulus of degree `e` (coefficients low-to-high). `GF(p)` uses the modulus `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            p,
            e: 1,
            modulus: vec![0, 1],
        })
    }

    /// The standard modulus for `GF(p^e)`: Conway polynomials for
    /// `p ∈ {2,3,5}`, otherwise the lexicographically first monic irreducible.
    pub fn standard(p: u32, e: u32) -> Result<Self> {
        if e == 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || e > MAX_EXTENSION_DEGREE {
            return Err(Error::UnsupportedField { p, e });
        }
        if let Some(&(_, m)) = CONWAY.iter().filter(|(q, _)| *q == p).nth((e - 2) as usize) {
            return Self::with_modulus(p, m.to_vec());
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(q) = q else {
            return Err(Error::UnsupportedField { p, e });
        };
        // Monic polynomials of degree e, in order of their low coefficients.
        for low in 0..q {
            let mut m = digits(low as u32, p, e as usize);
            m.push(1);
            if is_irreducible(&m, p) {
                return Ok(FieldSpec { p, e, modulus: m });
            }
        }
        Err(Error::UnsupportedField { p, e })
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus);
        }
        let e = (modulus.len() - 1) as u32;
        if e == 1 {
            // Any linear modulus gives the prime field; normalise to x.
            return Self::prime(p);
        }
        if e > MAX_EXTENSION_DEGREE
            || (p as u64)
                .checked_pow(e)
                .is_none_or(|q| q > MAX_FIELD_ORDER)
        {
            return Err(Error::UnsupportedField { p, e });
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        Ok(FieldSpec { p, e, modulus })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }
}

fn digits(mut code: u32, p: u32, e: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(e + 1);
    for _ in 0..e {
        out.push(code % p);
        code /= p;
    }
    out
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree ≤ deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = γ^i` for a primitive element γ, `i < q-1`; empty for prime fields.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `GF(p^e)`. Elements are encoded as `u32` codes
/// `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` where `c_i` are the coefficients of
/// the polynomial representative. Prime-field elements keep their usual value,
/// so `GF(p)` codes embed unchanged into every extension.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.e())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order();
        let (exp, log) = if spec.e == 1 {
            (Vec::new(), Vec::new())
        } else {
            build_tables(&spec)
        };
        Field(Arc::new(Inner { spec, q, exp, log }))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::prime(p)?))
    }

    pub fn standard(p: u32, e: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::standard(p, e)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn e(&self) -> u32 {
        self.0.spec.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.spec.e == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if self.is_prime_field() {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0, 1);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p();
        if self.is_prime_field() {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else if p == 2 {
            a
        } else {
            let mut a = a;
            let (mut out, mut place) = (0, 1);
            while a > 0 {
                out += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.is_prime_field() {
            return (a as u64 * b as u64 % self.p() as u64) as u32;
        }
        let inner = &*self.0;
        let n = inner.q - 1;
        let s = inner.log[a as usize] + inner.log[b as usize];
        inner.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.is_prime_field() {
            return Some(self.pow(a, (self.p() - 2) as u64));
        }
        let inner = &*self.0;
        let n = inner.q - 1;
        Some(inner.exp[((n - inner.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Coefficients of the polynomial representative, low-to-high, length `e`.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.p(), self.e() as usize)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        let p = self.p();
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p)
    }

    /// Textual encoding: the integer for prime fields, `c0+c1*t+c2*t^2...`
    /// with every coefficient spelled out for extensions.
    pub fn format(&self, a: u32) -> String {
        let mut s = String::new();
        if self.is_prime_field() {
            let _ = write!(s, "{a}");
            return s;
        }
        for (i, c) in self.coefficients(a).into_iter().enumerate() {
            let _ = match i {
                0 => write!(s, "{c}"),
                1 => write!(s, "+{c}*t"),
                _ => write!(s, "+{c}*t^{i}"),
            };
        }
        s
    }

    pub fn parse(&self, text: &str) -> Option<u32> {
        let p = self.p();
        if self.is_prime_field() {
            return text.trim().parse::<u32>().ok().filter(|&v| v < p);
        }
        let e = self.e() as usize;
        let mut coeffs = vec![0u32; e];
        for term in text.split('+') {
            let term = term.trim();
            let (c, power) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, "t")) => (c, 1),
                Some((c, t)) => (c, t.strip_prefix("t^")?.parse().ok()?),
            };
            let c: u32 = c.trim().parse().ok().filter(|&v| v < p)?;
            *coeffs.get_mut(power)? = c;
        }
        Some(self.from_coefficients(&coeffs))
    }

    pub fn elem(&self, code: u32) -> FieldElem {
        debug_assert!(code < self.order());
        FieldElem {
            field: self.clone(),
            code,
        }
    }
}

/// Multiplication of codes by polynomial arithmetic; only used to seed tables.
fn slow_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let p = spec.p;
    let e = spec.e as usize;
    let (da, db) = (digits(a, p, e), digits(b, p, e));
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let r = poly_rem(&prod, &spec.modulus, p);
    r.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn build_tables(spec: &FieldSpec) -> (Vec<u32>, Vec<u32>) {
    let q = spec.order();
    let n = q - 1;
    // The Conway moduli make x primitive; other moduli fall back to a search.
    for gamma in core::iter::once(spec.p).chain(2..q) {
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        let mut primitive = true;
        for i in 0..n {
            if i > 0 && x == 1 {
                primitive = false;
                break;
            }
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(spec, x, gamma);
        }
        if primitive && x == 1 {
            return (exp, log);
        }
    }
    unreachable!("every finite field has a primitive element")
}

/// An element together with its field, for ordinary operator syntax.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    code: u32,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

impl FieldElem {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn inv(&self) -> Option<FieldElem> {
        self.field.inv(self.code).map(|c| self.field.elem(c))
    }

    pub fn pow(&self, k: u64) -> FieldElem {
        self.field.elem(self.field.pow(self.code, k))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                assert!(self.field == rhs.field, "field mismatch");
                let code = self.field.$method(self.code, rhs.code);
                FieldElem {
                    field: self.field,
                    code,
                }
            }
        }

        impl $tr for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                assert!(self.field == rhs.field, "field mismatch");
                self.field.elem(self.field.$method(self.code, rhs.code))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let code = self.field.neg(self.code);
        FieldElem {
            field: self.field,
            code,
        }
    }
}
