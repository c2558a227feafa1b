//! Exact arithmetic in small finite fields GF(p^k).
//!
//! Elements are stored as a single byte: the polynomial-basis coefficient
//! vector `c0 + c1 x + ... + c_{k-1} x^{k-1}` packed as the integer
//! `c0 + c1 p + ... + c_{k-1} p^{k-1}`. All four operations are table driven;
//! the tables are built once when the field is made.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus has degree {got}, expected monic of degree {want}")]
    DegreeMismatch { want: u32, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field of order {0} is too large (at most 256 elements supported)")]
    TooLarge(u64),
    #[error("coefficient {0} is out of range for GF({1})")]
    BadCoefficient(u32, u32),
}

/// A field element, packed as its base-p digit code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Polynomial-basis coefficients, low degree first.
    pub fn coeffs(self, field: &FieldSpec) -> Vec<u8> {
        let p = field.p as u32;
        let mut c = self.0 as u32;
        (0..field.k)
            .map(|_| {
                let d = (c % p) as u8;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: &[u8]) -> Result<FieldElem, FieldError> {
        if coeffs.len() != field.k as usize {
            return Err(FieldError::DegreeMismatch {
                want: field.k as u32,
                got: coeffs.len(),
            });
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= field.p {
                return Err(FieldError::BadCoefficient(c as u32, field.p as u32));
            }
            code = code * field.p as u32 + c as u32;
        }
        Ok(FieldElem(code as u8))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Binary,
    Prime,
    Extension,
}

/// GF(p^k) with a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct FieldSpec {
    p: u8,
    k: u8,
    modulus: Vec<u8>,
    q: usize,
    kind: Kind,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    // floor(v / p) == (v * magic) >> 10 for every v < 64
    magic: u16,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.k, self.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p) as ascending coefficient vectors.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("invertible residue")
}

fn is_irreducible(modulus: &[u8], p: u32) -> bool {
    let f: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
    let deg = f.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push((t % p as usize) as u32);
                t /= p as usize;
            }
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing the
/// ascending coefficient lists.
fn default_modulus(p: u32, k: u32) -> Vec<u8> {
    let count = (p as usize).pow(k);
    (0..count)
        .map(|idx| {
            // idx enumerates [c0, c1, ..] with c0 most significant
            let mut digits = vec![0u8; k as usize];
            let mut t = idx;
            for slot in digits.iter_mut().rev() {
                *slot = (t % p as usize) as u8;
                t /= p as usize;
            }
            digits.push(1);
            digits
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Build GF(p^k). When `modulus` is absent the smallest monic irreducible is used.
pub fn field_make(p: u32, k: u32, modulus: Option<&[u8]>) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::DegreeMismatch { want: 1, got: 0 });
    }
    let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
    if q > 256 {
        return Err(FieldError::TooLarge(q));
    }
    let modulus = match modulus {
        Some(m) => {
            if m.len() != k as usize + 1 || m.last() != Some(&1) {
                return Err(FieldError::DegreeMismatch {
                    want: k,
                    got: m.len().saturating_sub(1),
                });
            }
            if let Some(&c) = m.iter().find(|&&c| c as u32 >= p) {
                return Err(FieldError::BadCoefficient(c as u32, p));
            }
            if !is_irreducible(m, p) {
                return Err(FieldError::ReducibleModulus(p));
            }
            m.to_vec()
        }
        None => default_modulus(p, k),
    };
    let q = q as usize;
    let kind = match (p, k) {
        (2, 1) => Kind::Binary,
        (p, 1) if p <= 7 => Kind::Prime,
        _ => Kind::Extension,
    };

    let decode = |code: usize| -> Vec<u32> {
        let mut c = code;
        (0..k)
            .map(|_| {
                let d = (c % p as usize) as u32;
                c /= p as usize;
                d
            })
            .collect()
    };
    let encode = |v: &[u32]| -> u8 {
        let mut code = 0usize;
        for &c in v.iter().rev() {
            code = code * p as usize + c as usize;
        }
        code as u8
    };
    let modu: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = decode(a);
        for b in 0..q {
            let db = decode(b);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = encode(&s);
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &modu, p);
            r.resize(k as usize, 0);
            mul[a * q + b] = encode(&r);
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
        .collect();
    let inv = (0..q)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
            }
        })
        .collect();
    Ok(FieldSpec {
        p: p as u8,
        k: k as u8,
        modulus,
        q,
        kind,
        add,
        mul,
        neg,
        inv,
        magic: 1024_u16.div_ceil(p as u16),
    })
}

impl FieldSpec {
    /// Shorthand for the prime field GF(p).
    pub fn prime(p: u32) -> Result<FieldSpec, FieldError> {
        field_make(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }
    pub fn k(&self) -> u32 {
        self.k as u32
    }
    pub fn order(&self) -> usize {
        self.q
    }
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as u16).map(|c| FieldElem(c as u8))
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        (x.0 as usize) < self.q
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.0 as usize * self.q + b.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.0 as usize * self.q + b.0 as usize])
    }
    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(FieldElem(self.inv[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer under Z -> GF(p) -> K.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u8)
    }

    /// Generic entry point mirroring the four supported operations.
    pub fn arith(&self, op: FieldOp, x: FieldElem, y: Option<FieldElem>) -> Result<FieldElem, FieldError> {
        let y = || y.unwrap_or(FieldElem::ZERO);
        Ok(match op {
            FieldOp::Add => self.add(x, y()),
            FieldOp::Mul => self.mul(x, y()),
            FieldOp::Neg => self.neg(x),
            FieldOp::Inv => self.inv(x)?,
        })
    }

    /// `Some(ω)` with ω³ = 1, ω ≠ 1 when such an element exists.
    pub fn primitive_cube_root(&self) -> Option<FieldElem> {
        if !(self.q - 1).is_multiple_of(3) {
            return None;
        }
        self.elements()
            .find(|&w| w != FieldElem::ONE && !w.is_zero() && self.pow(w, 3) == FieldElem::ONE)
    }

    pub fn has_primitive_cube_root(&self) -> bool {
        self.primitive_cube_root().is_some()
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u8], c: FieldElem, src: &[u8]) {
        debug_assert_eq!(dst.len(), src.len());
        if c.is_zero() {
            return;
        }
        match self.kind {
            Kind::Binary => {
                for (a, &b) in dst.iter_mut().zip(src) {
                    *a ^= b;
                }
            }
            Kind::Prime => {
                let p = self.p as u16;
                let c = c.0 as u16;
                let magic = self.magic;
                for (a, &b) in dst.iter_mut().zip(src) {
                    let v = *a as u16 + c * b as u16;
                    *a = (v - p * ((v * magic) >> 10)) as u8;
                }
            }
            Kind::Extension => {
                let q = self.q;
                let row = &self.mul[c.0 as usize * q..(c.0 as usize + 1) * q];
                for (a, &b) in dst.iter_mut().zip(src) {
                    *a = self.add[*a as usize * q + row[b as usize] as usize];
                }
            }
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [u8], c: FieldElem) {
        let q = self.q;
        let row = &self.mul[c.0 as usize * q..(c.0 as usize + 1) * q];
        for a in v.iter_mut() {
            *a = row[*a as usize];
        }
    }

    /// Certificate header line, e.g. `field p=2 k=2 modulus=1,1,1`.
    pub fn header_line(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("field p={} k={} modulus={}", self.p, self.k, m.join(","))
    }

    /// Token for a field element as used in certificate bodies: the decimal
    /// value of its base-p digit code (so ω in GF(4) is `2`, ω+1 is `3`).
    pub fn token(&self, x: FieldElem) -> String {
        x.0.to_string()
    }

    pub fn parse_token(&self, s: &str) -> Option<FieldElem> {
        let v: u16 = s.parse().ok()?;
        if (v as usize) < self.q {
            Some(FieldElem(v as u8))
        } else {
            None
        }
    }
}
