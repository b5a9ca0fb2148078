//! Arithmetic in GF(p^n) over a fixed polynomial basis.
//!
//! Elements are carried around as their integer code `Σ aᵢ pⁱ`, where `aᵢ`
//! is the coefficient of `xⁱ` in the polynomial basis. Code 0 is the zero
//! element and code 1 is the unit. Multiplication goes through log/antilog
//! tables built from a primitive element, addition is XOR in characteristic
//! 2 and a precomputed table otherwise.
//!
//! ```
//! use orthogoval::field::Field;
//!
//! let gf16 = Field::gf(16).unwrap();
//! assert_eq!(gf16.spec().modulus, vec![1, 1, 0, 0, 1]); // x^4 + x + 1
//! let a = 7;
//! assert_eq!(gf16.mul(a, gf16.inv(a).unwrap()), 1);
//! ```

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order in characteristic 2 (enough for the GL(2n, F₂) search at n = 8).
pub const MAX_ORDER_CHAR2: u32 = 1 << 16;
/// Largest supported order in odd characteristic.
pub const MAX_ORDER_ODD: u32 = 729;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, n)` with `q = p^n`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Serializable description of a field: characteristic, degree and modulus
/// (coefficients constant term first, monic, length `n + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.n)
    }
}

/// Dense polynomials over GF(p), coefficient `i` is the coefficient of `xⁱ`.
mod poly {
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        (1..p).find(|&b| a * b % p == 1).expect("nonzero residue mod prime")
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let dm = degree(m).expect("nonzero modulus");
        let lead_inv = inv_mod(m[dm], p);
        let mut r = a.to_vec();
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let f = r[dr] * lead_inv % p;
            let shift = dr - dm;
            for (i, &c) in m.iter().enumerate() {
                r[i + shift] = (r[i + shift] + p - f * c % p) % p;
            }
        }
        r.truncate(dm.max(1));
        r.resize(dm.max(1), 0);
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    /// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let Some(deg) = degree(m) else { return false };
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut f = super::digits(code, p, d);
                f.push(1);
                let r = rem(m, &f, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplicative order of `x` modulo `m`, or `None` if it is not `p^n - 1`.
fn x_is_primitive(m: &[u32], p: u32, n: u32) -> bool {
    let q1 = p.pow(n) - 1;
    let mut x = vec![0; n as usize];
    if n == 1 {
        // x reduces to the constant -m0.
        x[0] = (p - m[0] % p) % p;
    } else {
        x[1] = 1;
    }
    let mut acc = x.clone();
    for k in 1..=q1 {
        if acc[0] == 1 && acc[1..].iter().all(|&c| c == 0) {
            return k == q1;
        }
        acc = poly::mulmod(&acc, &x, m, p);
    }
    false
}

/// Default modulus for GF(p^n).
///
/// A handful of orders use fixed polynomials so that printed examples are
/// reproduced exactly; everything else uses the least primitive monic
/// polynomial, ordering candidates by the integer code of their lower
/// coefficients.
pub fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    match (p, n) {
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 0, 1, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (2, 6) => vec![1, 1, 0, 0, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        _ => {
            let count = (p as u64).pow(n);
            (0..count)
                .map(|code| {
                    let mut m = digits(code, p, n as usize);
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && x_is_primitive(m, p, n))
                .expect("a primitive polynomial exists for every degree")
        }
    }
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    generator: u32,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] unused
    log: Vec<u32>,
    /// add table (odd characteristic only), row-major q×q
    add: Vec<u16>,
    neg: Vec<u32>,
}

/// A finite field GF(p^n). Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.spec.p, self.0.spec.n, self.0.spec.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^n), with the default modulus when `modulus` is `None`.
    pub fn new(p: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::UnsupportedField { p, n, reason: "degree must be positive".into() });
        }
        if ![2, 3, 5, 7].contains(&p) {
            return Err(Error::UnsupportedField { p, n, reason: "characteristic must be 2, 3, 5 or 7".into() });
        }
        let max = if p == 2 { MAX_ORDER_CHAR2 } else { MAX_ORDER_ODD };
        let q = (p as u64).pow(n);
        if q > max as u64 {
            return Err(Error::UnsupportedField { p, n, reason: format!("order {q} exceeds {max}") });
        }
        let q = q as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", n + 1, m.len())));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if m[n as usize] != 1 {
                    return Err(Error::InvalidModulus("not monic".into()));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus(format!("{m:?} is reducible over GF({p})")));
                }
                m
            }
            None => default_modulus(p, n),
        };
        let spec = FieldSpec { p, n, modulus };
        Ok(Field(Arc::new(Inner::build(spec, q))))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        Field::new(spec.p, spec.n, Some(spec.modulus.clone()))
    }

    /// GF(q) with the default modulus.
    pub fn gf(q: u32) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, n, None)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn n(&self) -> u32 {
        self.0.spec.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// The designated primitive element (least code of multiplicative order q-1).
    pub fn generator(&self) -> u32 {
        self.0.generator
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.p(), self.n() as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        undigits(coeffs, self.p())
    }

    /// Image of the prime-field integer `k` (reduced mod p).
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p() as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.0.spec.p == 2 {
            a ^ b
        } else {
            self.0.add[(a * self.0.q + b) as usize] as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
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
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.0;
        let l = inner.log[a as usize];
        Ok(inner.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let q1 = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64 * (e % q1) % q1;
        self.0.exp[l as usize]
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: u32, e: u32) -> u32 {
        let q1 = (self.0.q - 1) as u64;
        let mut exp = 1u64;
        for _ in 0..e {
            exp = exp * self.p() as u64 % q1.max(1);
        }
        // p^e ≡ exp (mod q-1); for nonzero a this determines the power, and
        // keep the exponent positive so that 0 maps to 0.
        if exp == 0 {
            exp = q1;
        }
        self.pow(a, exp)
    }

    /// Discrete log to the designated generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> u32 {
        self.0.exp[(k % (self.0.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let q1 = self.0.q as u64 - 1;
        Some(q1 / gcd(l, q1))
    }

    /// Product computed by polynomial multiplication and reduction, without tables.
    pub fn mul_by_reduction(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p(), &self.0.spec.modulus);
        let r = poly::mulmod(&self.coeffs(a), &self.coeffs(b), m, p);
        self.from_coeffs(&r)
    }

    /// Evaluates `Σ coeffs[i] x^i` at `x`.
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Determinant of a 3×3 matrix given row-major.
    pub fn det3(&self, m: [[u32; 3]; 3]) -> u32 {
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            self.sub(self.mul(m[r1][c1], m[r2][c2]), self.mul(m[r1][c2], m[r2][c1]))
        };
        let t0 = self.mul(m[0][0], minor(1, 2, 1, 2));
        let t1 = self.mul(m[0][1], minor(1, 2, 0, 2));
        let t2 = self.mul(m[0][2], minor(1, 2, 0, 1));
        self.add(self.sub(t0, t1), t2)
    }

    /// Whether the three vectors are linearly independent.
    pub fn independent3(&self, a: [u32; 3], b: [u32; 3], c: [u32; 3]) -> bool {
        self.det3([a, b, c]) != 0
    }
}

impl Inner {
    fn build(spec: FieldSpec, q: u32) -> Inner {
        let p = spec.p;
        let n = spec.n as usize;
        let add = if p == 2 {
            Vec::new()
        } else {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits(a as u64, p, n);
                for b in 0..q {
                    let db = digits(b as u64, p, n);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = undigits(&s, p) as u16;
                }
            }
            t
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a as u64, p, n).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let mulmod = |a: u32, b: u32| -> u32 {
            let r = poly::mulmod(&digits(a as u64, p, n), &digits(b as u64, p, n), &spec.modulus, p);
            undigits(&r, p)
        };
        // Least element whose powers run through all q-1 nonzero elements.
        let q1 = q - 1;
        let mut generator = 1;
        let mut exp = Vec::new();
        for g in 1..q {
            let mut pows = Vec::with_capacity(q1 as usize);
            let mut acc = 1u32;
            loop {
                pows.push(acc);
                acc = mulmod(acc, g);
                if acc == 1 || pows.len() > q1 as usize {
                    break;
                }
            }
            if pows.len() == q1 as usize {
                generator = g;
                exp = pows;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Inner { spec, q, generator, exp: doubled, log, add, neg }
    }
}

/// Embedding of `small` into `big` as a subfield: the image of each code of
/// `small`, obtained by sending `x` to the least root of `small`'s modulus.
pub fn embed_subfield(small: &Field, big: &Field) -> Result<Vec<u32>> {
    if small.p() != big.p() || !big.n().is_multiple_of(small.n()) {
        return Err(Error::InvalidArgument(format!("{small:?} is not a subfield of {big:?}")));
    }
    let modulus = &small.spec().modulus;
    let root = big
        .elements()
        .find(|&r| big.eval_poly(modulus, r) == 0)
        .ok_or_else(|| Error::Construction("modulus has no root in the extension".into()))?;
    Ok(small
        .elements()
        .map(|a| big.eval_poly(&small.coeffs(a), root))
        .collect())
}

/// Whether `x³ + b x + c` has a root in the field (for cubics: reducible).
pub fn depressed_cubic_has_root(field: &Field, b: u32, c: u32) -> bool {
    field.elements().any(|x| {
        let x3 = field.mul(field.mul(x, x), x);
        field.add(field.add(x3, field.mul(b, x)), c) == 0
    })
}

/// All `(b, c)` with `c ≠ 0` and `x³ + bx + c` irreducible, in lexicographic code order.
pub fn irreducible_depressed_cubics(field: &Field) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for b in field.elements() {
        for c in 1..field.q() {
            if !depressed_cubic_has_root(field, b, c) {
                out.push((b, c));
            }
        }
    }
    out
}

/// First irreducible `x³ + bx + c` in lexicographic order of `(b, c)`.
pub fn find_irreducible_cubic_depressed(field: &Field) -> Result<(u32, u32)> {
    if field.p() != 2 {
        return Err(Error::InvalidArgument("depressed cubic search requires characteristic 2".into()));
    }
    for b in field.elements() {
        for c in 1..field.q() {
            if !depressed_cubic_has_root(field, b, c) {
                return Ok((b, c));
            }
        }
    }
    Err(Error::Construction("no irreducible depressed cubic".into()))
}
