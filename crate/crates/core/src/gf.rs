//! Exact arithmetic in small finite fields GF(p^m).
//!
//! A [`Field`] is an immutable description of GF(p^m): the characteristic,
//! the extension degree, and (for m > 1) a monic irreducible modulus over
//! GF(p). Elements are canonical encodings `sum c_i * p^i` of their
//! coefficient vectors, wrapped in [`FieldElement`] together with the field
//! identity so that elements of different fields cannot be mixed silently.
//!
//! Fields constructed through [`Field::new`] are capped at order 2^16 and
//! carry log/exp tables for O(1) multiplication. Larger extension fields
//! (needed internally to split x^n - 1 when building cyclic codes) are
//! created with [`Field::new_internal`] and fall back to polynomial
//! arithmetic per operation.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest order accepted by the public constructor.
pub const MAX_PUBLIC_ORDER: u64 = 1 << 16;

/// Errors from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {0} exceeds the supported maximum {MAX_PUBLIC_ORDER}")]
    OrderTooLarge(u64),
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: u32, got: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("modulus coefficient {0} is not reduced mod {1}")]
    BadModulusCoefficient(u64, u64),
    #[error("a prime field takes no modulus")]
    UnexpectedModulus,
    #[error("element encoding {0} is out of range for a field of order {1}")]
    ElementOutOfRange(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no inverse, so negative powers of zero are undefined")]
    NegativePowerOfZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("0 is neither a quadratic residue nor a non-residue")]
    ZeroResidueClass,
}

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    m: u32,
    q: u64,
    /// Ascending coefficients of the monic modulus, length m + 1.
    /// Empty for prime fields.
    modulus: Vec<u64>,
    /// Structural hash of (p, m, modulus); equal fields share it.
    id: u64,
    tables: Option<MulTables>,
}

#[derive(Debug)]
struct MulTables {
    /// exp[i] = g^i for a fixed primitive element g, i in [0, q-1).
    exp: Vec<u32>,
    /// log[e] = i with exp[i] = e; log[0] is unused.
    log: Vec<u32>,
}

/// A finite field GF(p^m), cheap to clone and safe to share across threads.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

/// An element of a specific [`Field`], stored as its canonical encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field_id: u64,
    code: u64,
}

impl FieldElement {
    /// Canonical encoding of the element: `sum c_i * p^i`.
    pub fn code(self) -> u64 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
            && self.0.p == other.0.p
            && self.0.m == other.0.m
            && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.m)
        }
    }
}

fn fnv1a(parts: impl IntoIterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for byte in part.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

impl Field {
    /// Builds GF(p^m) with the canonical modulus: the lexicographically
    /// smallest monic irreducible of degree m over GF(p), ordering
    /// candidates by their coefficient encoding. The order p^m must not
    /// exceed 2^16.
    pub fn new(p: u64, m: u32) -> Result<Field, FieldError> {
        Self::check_pm(p, m)?;
        let q = checked_pow(p, m).ok_or(FieldError::OrderTooLarge(u64::MAX))?;
        if q > MAX_PUBLIC_ORDER {
            return Err(FieldError::OrderTooLarge(q));
        }
        let modulus = if m == 1 {
            Vec::new()
        } else {
            primepoly::smallest_irreducible(p, m)
        };
        Self::build(p, m, q, modulus, true)
    }

    /// Builds GF(p^m) with a caller-supplied monic irreducible modulus
    /// (ascending coefficients, length m + 1).
    pub fn with_modulus(p: u64, m: u32, modulus: &[u64]) -> Result<Field, FieldError> {
        Self::check_pm(p, m)?;
        if m == 1 {
            if !modulus.is_empty() {
                return Err(FieldError::UnexpectedModulus);
            }
            return Self::new(p, 1);
        }
        let q = checked_pow(p, m).ok_or(FieldError::OrderTooLarge(u64::MAX))?;
        if q > MAX_PUBLIC_ORDER {
            return Err(FieldError::OrderTooLarge(q));
        }
        if modulus.len() != m as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(FieldError::BadModulusDegree {
                expected: m,
                got: modulus.len().saturating_sub(1) as u32,
            });
        }
        for &c in modulus {
            if c >= p {
                return Err(FieldError::BadModulusCoefficient(c, p));
            }
        }
        if !primepoly::is_irreducible(modulus, p) {
            return Err(FieldError::ReducibleModulus(p));
        }
        Self::build(p, m, q, modulus.to_vec(), true)
    }

    /// Builds an extension field that may exceed the public order cap.
    /// No multiplication tables are generated; arithmetic decodes to
    /// coefficient vectors per operation. Used to find roots of x^n - 1.
    pub(crate) fn new_internal(p: u64, m: u32) -> Result<Field, FieldError> {
        Self::check_pm(p, m)?;
        let q = checked_pow(p, m).ok_or(FieldError::OrderTooLarge(u64::MAX))?;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            primepoly::smallest_irreducible(p, m)
        };
        Self::build(p, m, q, modulus, q <= MAX_PUBLIC_ORDER)
    }

    fn check_pm(p: u64, m: u32) -> Result<(), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::DegreeZero);
        }
        Ok(())
    }

    fn build(p: u64, m: u32, q: u64, modulus: Vec<u64>, tables: bool) -> Result<Field, FieldError> {
        let id = fnv1a([p, m as u64].into_iter().chain(modulus.iter().copied()));
        let mut repr = FieldRepr {
            p,
            m,
            q,
            modulus,
            id,
            tables: None,
        };
        if tables && m > 1 {
            repr.tables = Some(build_tables(&repr));
        }
        Ok(Field(Arc::new(repr)))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// The field order q = p^m.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Ascending coefficients of the modulus (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of x, i.e. the canonical generator of the polynomial basis.
    /// For prime fields this is simply 1.
    pub fn polynomial_generator(&self) -> FieldElement {
        if self.0.m == 1 {
            self.one()
        } else {
            self.wrap(self.0.p)
        }
    }

    /// Wraps a canonical encoding as an element.
    pub fn element(&self, code: u64) -> Result<FieldElement, FieldError> {
        if code >= self.0.q {
            return Err(FieldError::ElementOutOfRange(code, self.0.q));
        }
        Ok(self.wrap(code))
    }

    /// Element from an ascending coefficient vector (length at most m).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.m as usize {
            return Err(FieldError::ElementOutOfRange(u64::MAX, self.0.q));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(FieldError::ElementOutOfRange(c, self.0.q));
            }
            code = code * self.0.p + c;
        }
        Ok(self.wrap(code))
    }

    /// Ascending coefficient vector of an element, length m.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        self.check(a);
        self.decode(a.code)
    }

    /// Iterates over all field elements in canonical encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |c| self.wrap(c))
    }

    fn wrap(&self, code: u64) -> FieldElement {
        FieldElement {
            field_id: self.0.id,
            code,
        }
    }

    #[track_caller]
    fn check(&self, a: FieldElement) {
        assert_eq!(
            a.field_id, self.0.id,
            "element of a different field passed to {self}"
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.wrap(self.add_raw(a.code, b.code))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.wrap(self.sub_raw(a.code, b.code))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        self.wrap(self.neg_raw(a.code))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        self.wrap(self.mul_raw(a.code, b.code))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.code == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(a.code)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        let binv = self.inv(b)?;
        Ok(self.wrap(self.mul_raw(a.code, binv.code)))
    }

    /// `a^e`; e = 0 yields 1 and negative exponents go through the inverse.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        self.check(a);
        if e == 0 {
            return Ok(self.one());
        }
        let (base, exp) = if e < 0 {
            if a.code == 0 {
                return Err(FieldError::NegativePowerOfZero);
            }
            (self.inv_raw(a.code), e.unsigned_abs())
        } else {
            (a.code, e as u64)
        };
        Ok(self.wrap(self.pow_raw(base, exp)))
    }

    // -- raw arithmetic on canonical encodings; used by the linear algebra --

    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let r = &*self.0;
        if r.m == 1 {
            return (a + b) % r.p;
        }
        if r.p == 2 {
            return a ^ b;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut x, mut y) = (a, b);
        for _ in 0..r.m {
            out += ((x % r.p + y % r.p) % r.p) * mult;
            x /= r.p;
            y /= r.p;
            mult *= r.p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        let r = &*self.0;
        if r.m == 1 {
            return (r.p - a) % r.p;
        }
        if r.p == 2 {
            return a;
        }
        let mut out = 0u64;
        let mut mult = 1u64;
        let mut x = a;
        for _ in 0..r.m {
            out += ((r.p - x % r.p) % r.p) * mult;
            x /= r.p;
            mult *= r.p;
        }
        out
    }

    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let r = &*self.0;
        if r.m == 1 {
            return a * b % r.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &r.tables {
            let la = t.log[a as usize] as u64;
            let lb = t.log[b as usize] as u64;
            return t.exp[((la + lb) % (r.q - 1)) as usize] as u64;
        }
        let av = self.decode(a);
        let bv = self.decode(b);
        self.encode(&poly_mulmod(&av, &bv, &r.modulus, r.p))
    }

    pub(crate) fn inv_raw(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        let r = &*self.0;
        if r.m == 1 {
            return mod_pow(a, r.p - 2, r.p);
        }
        if let Some(t) = &r.tables {
            let la = t.log[a as usize] as u64;
            return t.exp[((r.q - 1 - la) % (r.q - 1)) as usize] as u64;
        }
        self.pow_raw(a, r.q - 2)
    }

    pub(crate) fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        // Lagrange: exponents act mod q - 1 on non-zero elements.
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        e %= self.0.q - 1;
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        let r = &*self.0;
        let mut v = vec![0u64; r.m as usize];
        let mut x = code;
        for slot in v.iter_mut() {
            *slot = x % r.p;
            x /= r.p;
        }
        v
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let p = self.0.p;
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * p + c;
        }
        code
    }
}

fn build_tables(repr: &FieldRepr) -> MulTables {
    let q = repr.q;
    let mul = |a: u64, b: u64| -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let decode = |code: u64| {
            let mut v = vec![0u64; repr.m as usize];
            let mut x = code;
            for slot in v.iter_mut() {
                *slot = x % repr.p;
                x /= repr.p;
            }
            v
        };
        let prod = poly_mulmod(&decode(a), &decode(b), &repr.modulus, repr.p);
        let mut code = 0u64;
        for &c in prod.iter().rev() {
            code = code * repr.p + c;
        }
        code
    };
    let pow = |mut base: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    // Find a primitive element by checking the order against the prime
    // factorization of q - 1.
    let factors = factorize(q - 1);
    let mut gen = 0;
    for cand in 2..q {
        if factors.iter().all(|&(f, _)| pow(cand, (q - 1) / f) != 1) {
            gen = cand;
            break;
        }
    }
    assert_ne!(gen, 0, "no primitive element found");
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u64;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = acc as u32;
        log[acc as usize] = i as u32;
        acc = mul(acc, gen);
    }
    debug_assert_eq!(acc, 1);
    MulTables { exp, log }
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.checked_mul(p)?;
    }
    Some(q)
}

/// Schoolbook product of two coefficient vectors reduced mod a monic
/// modulus, all over GF(p). Inputs have length deg(modulus); so does the
/// output.
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut buf = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + ai * bj) % p;
        }
    }
    for i in (m..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        for (j, &mj) in modulus.iter().enumerate().take(m) {
            // x^m = -sum modulus_j x^j
            buf[i - m + j] = (buf[i - m + j] + c * ((p - mj) % p)) % p;
        }
    }
    buf.truncate(m);
    buf
}

/// Euler's criterion: is `a` a square modulo the odd prime `n`?
pub fn is_quadratic_residue(a: u64, n: u64) -> Result<bool, FieldError> {
    if n < 3 || !is_prime(n) {
        return Err(FieldError::NotOddPrime(n));
    }
    let a = a % n;
    if a == 0 {
        return Err(FieldError::ZeroResidueClass);
    }
    Ok(mod_pow(a, (n - 1) / 2, n) == 1)
}

pub(crate) fn mod_pow(mut base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc: u64 = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Polynomial arithmetic over prime fields GF(p), on ascending coefficient
/// vectors. Only what irreducibility testing needs.
pub(crate) mod primepoly {
    use super::{checked_pow, is_prime};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of a modulo the monic polynomial f.
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        while r.len() > df {
            // r -= lead * x^shift * f; monic f clears the leading term.
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - df;
            for (j, &fj) in f.iter().enumerate() {
                let idx = shift + j;
                r[idx] = (r[idx] + lead * ((p - fj) % p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    /// x^e mod f by square and multiply.
    pub fn x_powmod(e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(&[0, 1], f, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // Make b monic before reducing.
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = super::mod_pow(lead, p - 2, p);
                for c in b.iter_mut() {
                    *c = *c * inv % p;
                }
            }
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub_x(mut v: Vec<u64>, p: u64) -> Vec<u64> {
        if v.len() < 2 {
            v.resize(2, 0);
        }
        v[1] = (v[1] + p - 1) % p;
        trim(&mut v);
        v
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        debug_assert!(is_prime(p));
        let m = f.len() - 1;
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        if f[0] == 0 {
            return false; // divisible by x
        }
        // x^(p^m) == x mod f
        let qm = match checked_pow(p, m as u32) {
            Some(v) => v,
            None => return false,
        };
        let frob_m = x_powmod(qm, f, p);
        if sub_x(frob_m, p) != Vec::<u64>::new() {
            return false;
        }
        // gcd(x^(p^(m/t)) - x, f) == 1 for every prime t | m
        for (t, _) in super::factorize(m as u64) {
            let e = checked_pow(p, (m as u64 / t) as u32).unwrap();
            let frob = x_powmod(e, f, p);
            let g = gcd(f, &sub_x(frob, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// The canonical modulus: smallest monic irreducible of degree m over
    /// GF(p), ordering candidates by the encoding of their low coefficients.
    pub fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
        let count = checked_pow(p, m).expect("degree in range");
        for enc in 0..count {
            let mut f = vec![0u64; m as usize + 1];
            let mut x = enc;
            for slot in f.iter_mut().take(m as usize) {
                *slot = x % p;
                x /= p;
            }
            f[m as usize] = 1;
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }
}
