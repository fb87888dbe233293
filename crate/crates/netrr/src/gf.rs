//! Exact arithmetic in the finite fields `F_{p^m}`.
//!
//! Elements are represented by their integer code in `[0, q)`: the base-`p`
//! digit encoding of the polynomial-basis coordinates (little-endian, so the
//! code of `c0 + c1*x + ...` is `c0 + c1*p + ...`). All field operations are
//! table lookups; the tables are built once at construction, which keeps every
//! downstream algorithm exact and fast at the sizes this crate targets.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Soft upper bound on the field size. Everything downstream is exhaustive,
/// so larger fields would only produce runs that never finish. Override with
/// the `NETRR_MAX_Q` environment variable.
pub const DEFAULT_MAX_Q: u64 = 81;

fn max_q() -> u64 {
    std::env::var("NETRR_MAX_Q")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_Q)
}

/// Serializable description of a field: `{p, m, modulus}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: usize,
    /// Coefficients of the monic modulus, degree 0 first, length `m + 1`.
    /// For `m = 1` this is `[0, 1]` by convention (the prime field needs none).
    pub modulus: Vec<u64>,
}

struct FieldData {
    spec: FieldSpec,
    q: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
    frob_q: Vec<u32>,
}

/// A finite field `F_{p^m}`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, lowest degree first, used only during
// construction (irreducibility testing and the reduction table).
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = mod_inv(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] * lead_inv) % p;
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = (r[idx] + p - (c * b[i]) % p) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn mod_inv(a: u64, p: u64) -> u64 {
        // p is small and prime
        let mut x = 1u64;
        for _ in 0..p - 2 {
            x = (x * a) % p;
        }
        x
    }
}

/// True iff `modulus` (monic, degree m over F_p) has no monic divisor of
/// degree between 1 and m/2.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        // all monic polynomials of degree d: p^d of them
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                div.push(rest % p);
                rest /= p;
            }
            div.push(1);
            if poly::rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `m` over `F_p`,
/// ordering by the coefficient tuple `(c_{m-1}, ..., c_0)` — equivalently by
/// the integer code of the non-leading coefficients, low digits less
/// significant.
fn least_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for idx in 0..count {
        let mut cand = Vec::with_capacity(m + 1);
        let mut rest = idx;
        for _ in 0..m {
            cand.push(rest % p);
            rest /= p;
        }
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

impl Field {
    /// Build `F_{p^m}`. When `modulus` is `None` the lexicographically least
    /// monic irreducible of degree `m` is selected, so the representation is
    /// deterministic across runs.
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<Field, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::BadDegree(m));
        }
        let q = p.checked_pow(m as u32).ok_or(Error::FieldTooLarge {
            q: u64::MAX,
            cap: max_q(),
        })?;
        if q > max_q() {
            return Err(Error::FieldTooLarge { q, cap: max_q() });
        }
        let modulus = match modulus {
            Some(mv) => {
                if mv.len() != m + 1 || mv[m] != 1 || mv.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus);
                }
                if !is_irreducible(&mv, p) {
                    return Err(Error::ReducibleModulus);
                }
                mv
            }
            None => {
                if m == 1 {
                    vec![0, 1]
                } else {
                    least_irreducible(p, m)
                }
            }
        };

        let qn = q as usize;
        let decode = |code: u64| -> Vec<u64> {
            let mut c = Vec::with_capacity(m);
            let mut rest = code;
            for _ in 0..m {
                c.push(rest % p);
                rest /= p;
            }
            c
        };
        let encode = |coeffs: &[u64]| -> u32 {
            let mut code = 0u64;
            for (i, &c) in coeffs.iter().enumerate().take(m) {
                code += c * p.pow(i as u32);
            }
            code as u32
        };

        let mut add = vec![0u32; qn * qn];
        let mut mul = vec![0u32; qn * qn];
        for a in 0..qn {
            let ca = decode(a as u64);
            for b in 0..qn {
                let cb = decode(b as u64);
                let sum: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                add[a * qn + b] = encode(&sum);

                let mut prod = vec![0u64; 2 * m - 1];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly::rem(&prod, &modulus, p);
                red.resize(m, 0);
                mul[a * qn + b] = encode(&red);
            }
        }
        let mut neg = vec![0u32; qn];
        for a in 0..qn {
            let ca = decode(a as u64);
            let n: Vec<u64> = ca.iter().map(|&x| (p - x) % p).collect();
            neg[a] = encode(&n);
        }
        let mut inv = vec![0u32; qn];
        for a in 1..qn {
            for b in 1..qn {
                if mul[a * qn + b] == 1 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        // x -> x^q for every subfield size q dividing: we only ever need the
        // full Frobenius power table lazily; store x^p here and compose.
        let mut frob_q = vec![0u32; qn];
        for a in 0..qn {
            let mut acc = 1u32;
            for _ in 0..p {
                acc = mul[a * qn + acc as usize];
            }
            frob_q[a] = acc;
        }

        Ok(Field(Arc::new(FieldData {
            spec: FieldSpec { p, m, modulus },
            q,
            add,
            mul,
            inv,
            neg,
            frob_q,
        })))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field, Error> {
        Field::new(spec.p, spec.m, Some(spec.modulus.clone()))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.p
    }

    pub fn degree(&self) -> usize {
        self.0.spec.m
    }

    /// The number of elements `q = p^m`.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    // Code-level arithmetic. Callers are responsible for codes being < q;
    // every public constructor enforces that.
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero (checked paths go through
    /// [`FieldElement::div`]).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.0.inv[a as usize]
    }

    /// `x^p`, the absolute Frobenius.
    #[inline]
    pub fn frobenius_p(&self, a: u32) -> u32 {
        self.0.frob_q[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { code: 0, field: self.clone() }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { code: 1, field: self.clone() }
    }

    /// Element with the given integer code (base-`p` digit encoding).
    pub fn element(&self, code: u64) -> Result<FieldElement, Error> {
        if code >= self.0.q {
            return Err(Error::CodeOutOfRange { code, q: self.0.q });
        }
        Ok(FieldElement { code: code as u32, field: self.clone() })
    }

    /// All `q` elements in base-`p` digit order of their coordinates. This
    /// ordering is what makes point enumeration and all outputs canonical.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |c| FieldElement { code: c as u32, field: self.clone() })
    }

    /// The subfield of index 2, as the set of codes fixed by `x -> x^{p^{m/2}}`.
    /// Only defined for even extension degree.
    pub fn index_two_subfield_codes(&self) -> Vec<u32> {
        assert!(self.degree() % 2 == 0, "no index-2 subfield");
        let half = self.degree() / 2;
        (0..self.0.q as u32)
            .filter(|&a| {
                let mut x = a;
                for _ in 0..half {
                    x = self.frobenius_p(x);
                }
                x == a
            })
            .collect()
    }
}

/// An element of a [`Field`], identified by its integer code.
#[derive(Clone)]
pub struct FieldElement {
    code: u32,
    field: Field,
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{:?}", self.code, self.field)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Polynomial-basis coordinates, constant term first, length `m`.
    pub fn coeffs(&self) -> Vec<u64> {
        let p = self.field.characteristic();
        let mut rest = self.code as u64;
        (0..self.field.degree())
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), Error> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(other)?;
        Ok(FieldElement { code: self.field.add(self.code, other.code), field: self.field.clone() })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(other)?;
        Ok(FieldElement { code: self.field.sub(self.code, other.code), field: self.field.clone() })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(other)?;
        Ok(FieldElement { code: self.field.mul(self.code, other.code), field: self.field.clone() })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self.field.inv(other.code);
        Ok(FieldElement { code: self.field.mul(self.code, inv), field: self.field.clone() })
    }
}
