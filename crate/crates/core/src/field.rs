//! Exact coefficient arithmetic over the rationals and over finite fields
//! `GF(p^k)`, with extensions represented as quotients by a stored monic
//! irreducible modulus.
//!
//! Every element is a canonical value: rationals are kept in lowest terms
//! with positive denominator, finite-field coordinates are reduced into
//! `[0, p)`. Equality of representations is equality of elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Hard cap on the extension degree `k` of constructed finite fields.
pub const MAX_EXTENSION_DEGREE: usize = 4;
/// Hard cap on the order of constructed extension fields (k >= 2); keeps
/// exhaustive searches (irreducibility, square roots, unity roots) cheap.
pub const MAX_EXTENSION_ORDER: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("extension degree {0} exceeds the supported cap of {MAX_EXTENSION_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("modulus must be monic of degree {expected}, coefficients listed low to high")]
    BadModulus { expected: usize },
    #[error("field order exceeds the supported cap for extension fields")]
    OrderTooLarge,
    #[error("cannot embed an element of {from} into {to}")]
    Embed { from: String, to: String },
    #[error("field literal error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// Description of a coefficient field: the rationals, or `GF(p^k)`.
///
/// For `k >= 2` the modulus is a monic irreducible polynomial over `GF(p)`,
/// stored low-to-high including the leading 1 (length `k + 1`). Prime fields
/// carry no modulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldDesc {
    Rationals,
    Finite { p: u64, k: usize, modulus: Vec<u64> },
}

/// Canonical element representation; see [`FieldElement`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Repr {
    Rat(BigRational),
    /// Coordinates of the element in the basis `1, T, ..., T^(k-1)`,
    /// each reduced into `[0, p)`. Length is exactly `k`.
    Fin(Vec<u64>),
}

/// An exact element of a [`FieldDesc`]. Immutable; safe to share across
/// threads. Identical representation is equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    field: FieldDesc,
    repr: Repr,
}

// ---------------------------------------------------------------------------
// small prime-field helpers (u64 with u128 intermediates)
// ---------------------------------------------------------------------------

fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "invm of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

/// Deterministic primality test by trial division; desk-scale inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// dense univariate polynomials over GF(p), low-to-high, used only for
// modulus arithmetic inside extension fields
mod fp_poly {
    use super::{invm, mulm, subm};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = super::addm(out[i + j], mulm(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` by monic `m`.
    pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if c != 0 {
                for (i, &mc) in m.iter().enumerate() {
                    r[shift + i] = subm(r[shift + i], mulm(c, mc, p), p);
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    /// Inverse of `a` modulo monic irreducible `m` via extended Euclid.
    pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        // invariants: r0 = t0*a mod m, r1 = t1*a mod m
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let qt1 = mul(&q, &t1, p);
            let tn = sub(&t0, &qt1, p);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = tn;
        }
        // r0 is a nonzero constant gcd; scale t0 by its inverse
        debug_assert_eq!(r0.len(), 1, "inverse of non-unit in extension field");
        let s = invm(r0[0], p);
        let mut out: Vec<u64> = t0.iter().map(|&c| mulm(c, s, p)).collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = subm(x, y, p);
        }
        trim(&mut out);
        out
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = invm(b[db], p);
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let c = mulm(*r.last().unwrap(), lead_inv, p);
            let shift = r.len() - 1 - db;
            q[shift] = c;
            if c != 0 {
                for (i, &bc) in b.iter().enumerate() {
                    r[shift + i] = subm(r[shift + i], mulm(c, bc, p), p);
                }
            }
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }
}

/// Is the monic polynomial (low-to-high, degree k <= 4) irreducible over GF(p)?
/// Exhaustive: root search for k <= 3, plus quadratic-divisor search for k = 4.
fn is_irreducible_monic(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    debug_assert!(m[k] == 1 && (2..=4).contains(&k));
    let eval = |poly: &[u64], x: u64| -> u64 {
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = addm(mulm(acc, x, p), c, p);
        }
        acc
    };
    for x in 0..p {
        if eval(m, x) == 0 {
            return false;
        }
    }
    if k < 4 {
        return true;
    }
    // degree 4 with no roots: reducible only as a product of two monic
    // irreducible quadratics; trial-divide by every monic quadratic
    for c0 in 0..p {
        for c1 in 0..p {
            let q = [c0, c1, 1];
            let (_, r) = fp_poly::divrem(m, &q, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Build a validated finite-field description `GF(p^k)`.
///
/// With `modulus` absent and `k > 1`, deterministically selects the first
/// monic irreducible of degree `k` over `GF(p)` in the canonical element
/// order (non-leading coefficients read as base-`p` digits, most
/// significant last).
pub fn make_extension_field(
    p: u64,
    k: usize,
    modulus: Option<Vec<u64>>,
) -> Result<FieldDesc, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 || k > MAX_EXTENSION_DEGREE {
        return Err(FieldError::DegreeTooLarge(k));
    }
    if k == 1 {
        if modulus.as_ref().is_some_and(|m| m.len() > 2) {
            return Err(FieldError::BadModulus { expected: 1 });
        }
        return Ok(FieldDesc::Finite { p, k: 1, modulus: vec![] });
    }
    let order = (p as u128).pow(k as u32);
    if order > MAX_EXTENSION_ORDER {
        return Err(FieldError::OrderTooLarge);
    }
    if let Some(mut m) = modulus {
        for c in m.iter_mut() {
            *c %= p;
        }
        if m.len() != k + 1 || m[k] != 1 {
            return Err(FieldError::BadModulus { expected: k });
        }
        if !is_irreducible_monic(&m, p) {
            return Err(FieldError::ReducibleModulus { p });
        }
        Ok(FieldDesc::Finite { p, k, modulus: m })
    } else {
        let count = (p as u128).pow(k as u32);
        for n in 0..count {
            let mut m = Vec::with_capacity(k + 1);
            let mut rest = n;
            for _ in 0..k {
                m.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            m.push(1);
            if is_irreducible_monic(&m, p) {
                return Ok(FieldDesc::Finite { p, k, modulus: m });
            }
        }
        unreachable!("an irreducible polynomial of degree {k} exists over GF({p})")
    }
}

impl FieldDesc {
    /// The prime field `GF(p)`.
    pub fn prime_field(p: u64) -> Result<FieldDesc, FieldError> {
        make_extension_field(p, 1, None)
    }

    /// The paper's `ch(k)`: 0 for the rationals, `p` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rationals => 0,
            FieldDesc::Finite { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDesc::Finite { .. })
    }

    pub fn extension_degree(&self) -> usize {
        match self {
            FieldDesc::Rationals => 1,
            FieldDesc::Finite { k, .. } => *k,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::Finite { p, k, .. } => Some((*p as u128).pow(*k as u32)),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldDesc::Rationals => self.element(Repr::Rat(BigRational::zero())),
            FieldDesc::Finite { k, .. } => self.element(Repr::Fin(vec![0; *k])),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            FieldDesc::Rationals => self.element(Repr::Rat(BigRational::from(n.clone()))),
            FieldDesc::Finite { p, k, .. } => {
                let pb = BigInt::from(*p);
                let r = ((n % &pb) + &pb) % &pb;
                let r: u64 = r.try_into().expect("residue fits in u64");
                let mut v = vec![0u64; *k];
                v[0] = r;
                self.element(Repr::Fin(v))
            }
        }
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        match self {
            FieldDesc::Rationals => self.element(Repr::Rat(q)),
            FieldDesc::Finite { .. } => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.div(&den)
            }
        }
    }

    /// Element from extension coordinates (low-to-high, length <= k).
    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        match self {
            FieldDesc::Rationals => panic!("from_coords on the rationals"),
            FieldDesc::Finite { p, k, .. } => {
                assert!(coords.len() <= *k, "too many coordinates");
                let mut v = vec![0u64; *k];
                for (i, &c) in coords.iter().enumerate() {
                    v[i] = c % p;
                }
                self.element(Repr::Fin(v))
            }
        }
    }

    fn element(&self, repr: Repr) -> FieldElement {
        FieldElement { field: self.clone(), repr }
    }

    /// All elements of a finite field in canonical order (index order).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let (p, k) = match self {
            FieldDesc::Rationals => panic!("elements() on the rationals"),
            FieldDesc::Finite { p, k, .. } => (*p, *k),
        };
        let q = (p as u128).pow(k as u32);
        (0..q).map(move |n| {
            let mut v = vec![0u64; k];
            let mut rest = n;
            for c in v.iter_mut() {
                *c = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            self.element(Repr::Fin(v))
        })
    }

    /// Parse a field literal: `Q`, `GF(p)`, `GF(p^k)`, or
    /// `GF(p^k; m0,m1,...,1)` with modulus coefficients low-to-high.
    pub fn parse(text: &str) -> Result<FieldDesc, FieldError> {
        let s = text.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldDesc::Rationals);
        }
        let err = |at: usize, msg: &str| FieldError::Parse { at, msg: msg.to_string() };
        let body = s
            .strip_prefix("GF(")
            .or_else(|| s.strip_prefix("gf("))
            .ok_or_else(|| err(0, "expected `Q` or `GF(...)`"))?;
        let body = body.strip_suffix(')').ok_or_else(|| err(s.len(), "missing `)`"))?;
        let (head, modulus) = match body.split_once(';') {
            Some((h, m)) => (h, Some(m)),
            None => (body, None),
        };
        let (p_str, k_str) = match head.split_once('^') {
            Some((p, k)) => (p, Some(k)),
            None => (head, None),
        };
        let p: u64 =
            p_str.trim().parse().map_err(|_| err(3, "expected a prime number"))?;
        let k: usize = match k_str {
            Some(t) => t.trim().parse().map_err(|_| err(3, "bad extension degree"))?,
            None => 1,
        };
        let modulus = match modulus {
            None => None,
            Some(m) => {
                let coeffs: Result<Vec<u64>, _> =
                    m.split(',').map(|c| c.trim().parse::<u64>()).collect();
                Some(coeffs.map_err(|_| err(3, "bad modulus coefficient"))?)
            }
        };
        make_extension_field(p, k, modulus)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::Finite { p, k: 1, .. } => write!(f, "GF({p})"),
            FieldDesc::Finite { p, k, modulus } => {
                let m: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "GF({p}^{k}; {})", m.join(","))
            }
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Fin(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The rational value, for elements of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Fin(_) => None,
        }
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => self.field.element(Repr::Rat(a + b)),
            (Repr::Fin(a), Repr::Fin(b)) => {
                let p = self.field.characteristic();
                let v = a.iter().zip(b).map(|(&x, &y)| addm(x, y, p)).collect();
                self.field.element(Repr::Fin(v))
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => self.field.element(Repr::Rat(a - b)),
            (Repr::Fin(a), Repr::Fin(b)) => {
                let p = self.field.characteristic();
                let v = a.iter().zip(b).map(|(&x, &y)| subm(x, y, p)).collect();
                self.field.element(Repr::Fin(v))
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        self.field.zero().sub(self)
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => self.field.element(Repr::Rat(a * b)),
            (Repr::Fin(a), Repr::Fin(b)) => {
                let (p, k, modulus) = match &self.field {
                    FieldDesc::Finite { p, k, modulus } => (*p, *k, modulus),
                    _ => unreachable!(),
                };
                if k == 1 {
                    return self.field.element(Repr::Fin(vec![mulm(a[0], b[0], p)]));
                }
                let prod = fp_poly::mul(a, b, p);
                let mut v = fp_poly::rem_monic(&prod, modulus, p);
                v.resize(k, 0);
                self.field.element(Repr::Fin(v))
            }
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.repr {
            Repr::Rat(a) => self.field.element(Repr::Rat(a.recip())),
            Repr::Fin(a) => {
                let (p, k, modulus) = match &self.field {
                    FieldDesc::Finite { p, k, modulus } => (*p, *k, modulus),
                    _ => unreachable!(),
                };
                if k == 1 {
                    return self.field.element(Repr::Fin(vec![invm(a[0], p)]));
                }
                let mut v = fp_poly::inv_mod(a, modulus, p);
                v.resize(k, 0);
                self.field.element(Repr::Fin(v))
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical index of a finite-field element (its position in the
    /// iteration order of [`FieldDesc::elements`]).
    pub fn canonical_index(&self) -> Option<u128> {
        match &self.repr {
            Repr::Rat(_) => None,
            Repr::Fin(v) => {
                let p = self.field.characteristic() as u128;
                let mut idx = 0u128;
                for &c in v.iter().rev() {
                    idx = idx * p + c as u128;
                }
                Some(idx)
            }
        }
    }

    /// Total order used for deterministic tie-breaking. For finite fields
    /// this is the canonical index order; for rationals, magnitude first
    /// with the nonnegative representative preferred.
    pub fn canonical_cmp(&self, other: &FieldElement) -> std::cmp::Ordering {
        self.check_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => {
                let key = |r: &BigRational| (r.abs(), r.is_negative());
                key(a).cmp(&key(b)).then_with(|| a.cmp(b))
            }
            (Repr::Fin(_), Repr::Fin(_)) => {
                self.canonical_index().cmp(&other.canonical_index())
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Fin(v) => {
                if v.len() == 1 {
                    write!(f, "{}", v[0])
                } else {
                    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    write!(f, "[{}]", parts.join(","))
                }
            }
        }
    }
}

/// Square root in the element's own field, if one exists.
///
/// Deterministic: in characteristic != 2 the returned root is the
/// canonically smaller of the two; in characteristic 2 the root is unique.
pub fn sqrt_in_field(a: &FieldElement) -> Option<FieldElement> {
    match &a.repr {
        Repr::Rat(r) => {
            if r.is_negative() {
                return None;
            }
            let num = r.numer().magnitude().sqrt();
            let den = r.denom().magnitude().sqrt();
            let cand = BigRational::new(BigInt::from(num), BigInt::from(den));
            if &(&cand * &cand) == r {
                Some(a.field.element(Repr::Rat(cand)))
            } else {
                None
            }
        }
        Repr::Fin(_) => {
            let field = &a.field;
            let q = field.order().unwrap();
            if a.is_zero() {
                return Some(field.zero());
            }
            if field.characteristic() == 2 {
                // Frobenius: squaring is bijective, root = a^(q/2)
                let b = a.pow(q / 2);
                debug_assert_eq!(b.mul(&b), *a);
                return Some(b);
            }
            // Euler criterion, then exhaustive scan in canonical order for
            // the smaller root. Extension fields are capped small; prime
            // fields that exceed the scan cap use the exponent formula.
            if a.pow((q - 1) / 2) != field.one() {
                return None;
            }
            if q <= MAX_EXTENSION_ORDER {
                return field.elements().find(|b| b.mul(b) == *a);
            }
            if q % 4 == 3 {
                let b = a.pow((q + 1) / 4);
                let nb = b.neg();
                let min = if b.canonical_cmp(&nb).is_le() { b } else { nb };
                debug_assert_eq!(min.mul(&min), *a);
                return Some(min);
            }
            // large prime field with q % 4 == 1: Tonelli-Shanks
            let p = field.characteristic();
            let (mut s, mut m) = (q - 1, 0u32);
            while s % 2 == 0 {
                s /= 2;
                m += 1;
            }
            let mut z = 2u64;
            while powm(z, (q - 1) / 2, p) == 1 {
                z += 1;
            }
            let av = match &a.repr {
                Repr::Fin(v) => v[0],
                _ => unreachable!(),
            };
            let mut c = powm(z, s, p);
            let mut t = powm(av, s, p);
            let mut r = powm(av, (s + 1) / 2, p);
            while t != 1 {
                let mut i = 0u32;
                let mut tt = t;
                while tt != 1 {
                    tt = mulm(tt, tt, p);
                    i += 1;
                }
                let b = powm(c, 1 << (m - i - 1) as u128, p);
                m = i;
                c = mulm(b, b, p);
                t = mulm(t, c, p);
                r = mulm(r, b, p);
            }
            let root = field.from_coords(&[r]);
            let nroot = root.neg();
            let min = if root.canonical_cmp(&nroot).is_le() { root } else { nroot };
            debug_assert_eq!(min.mul(&min), *a);
            Some(min)
        }
    }
}

/// A primitive `m`-th root of unity, if the field contains one.
///
/// Finite fields: exists iff `m` divides `q - 1`. Rationals: only
/// `m = 1` (giving 1) and `m = 2` (giving -1). Deterministic: the
/// canonically smallest such element.
pub fn primitive_mth_root(m: u64, field: &FieldDesc) -> Option<FieldElement> {
    assert!(m >= 1);
    match field {
        FieldDesc::Rationals => match m {
            1 => Some(field.one()),
            2 => Some(field.from_i64(-1)),
            _ => None,
        },
        FieldDesc::Finite { .. } => {
            let q = field.order().unwrap();
            if (q - 1) % m as u128 != 0 {
                return None;
            }
            field.elements().find(|e| {
                !e.is_zero()
                    && e.pow(m as u128).is_one()
                    && (1..m).all(|i| !e.pow(i as u128).is_one())
            })
        }
    }
}

/// Embed an element into a compatible larger field.
///
/// Supported embeddings: `Q -> Q`, `GF(p^k) -> GF(p^k)` (identity),
/// `GF(p) -> GF(p^k)` (constants), and `GF(p^k) -> GF(p^(k*m))` by mapping
/// the generator to the canonically first root of the source modulus in the
/// target (found by exhaustive search).
pub fn embed(a: &FieldElement, target: &FieldDesc) -> Result<FieldElement, FieldError> {
    if a.field == *target {
        return Ok(a.clone());
    }
    let err = || FieldError::Embed { from: a.field.to_string(), to: target.to_string() };
    match (&a.field, target) {
        (
            FieldDesc::Finite { p, k, modulus },
            FieldDesc::Finite { p: tp, k: tk, .. },
        ) if p == tp && tk % k == 0 => {
            let coords = match &a.repr {
                Repr::Fin(v) => v,
                _ => unreachable!(),
            };
            if *k == 1 {
                return Ok(target.from_coords(&[coords[0]]));
            }
            let root = modulus_root_in(modulus, *p, target).ok_or_else(err)?;
            let mut acc = target.zero();
            let mut pw = target.one();
            for &c in coords {
                acc = acc.add(&pw.mul(&target.from_coords(&[c])));
                pw = pw.mul(&root);
            }
            Ok(acc)
        }
        _ => Err(err()),
    }
}

/// First root (canonical order) of a monic GF(p)-polynomial inside `target`.
fn modulus_root_in(modulus: &[u64], _p: u64, target: &FieldDesc) -> Option<FieldElement> {
    target.elements().find(|x| {
        let mut acc = target.zero();
        for &c in modulus.iter().rev() {
            acc = acc.mul(x).add(&target.from_coords(&[c]));
        }
        acc.is_zero()
    })
}

/// The quadratic extension of a finite field, when constructible within the
/// degree cap: `GF(p^k) -> GF(p^(2k))` with the canonical modulus.
pub fn quadratic_extension(field: &FieldDesc) -> Result<FieldDesc, FieldError> {
    match field {
        FieldDesc::Rationals => Err(FieldError::Embed {
            from: field.to_string(),
            to: "a quadratic extension of Q".to_string(),
        }),
        FieldDesc::Finite { p, k, .. } => make_extension_field(*p, 2 * k, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime_field(p).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        assert_eq!(gf(3).characteristic(), 3);
        assert_eq!(make_extension_field(4, 1, None), Err(FieldError::NotPrime(4)));
    }

    #[test]
    fn gf9_default_modulus_is_t2_plus_1() {
        // T^2 + 1 has no root mod 3 and is first in the canonical scan
        let f9 = make_extension_field(3, 2, None).unwrap();
        match &f9 {
            FieldDesc::Finite { modulus, .. } => assert_eq!(modulus, &vec![1, 0, 1]),
            _ => panic!(),
        }
        assert_eq!(f9.order(), Some(9));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // T^2 - 1 = (T-1)(T+1) over GF(3)
        assert_eq!(
            make_extension_field(3, 2, Some(vec![2, 0, 1])),
            Err(FieldError::ReducibleModulus { p: 3 })
        );
        assert_eq!(make_extension_field(3, 5, None), Err(FieldError::DegreeTooLarge(5)));
    }

    #[test]
    fn arithmetic_in_gf9() {
        let f9 = make_extension_field(3, 2, None).unwrap();
        let t = f9.from_coords(&[0, 1]);
        // T^2 = -1 = 2
        assert_eq!(t.mul(&t), f9.from_i64(2));
        for a in f9.elements() {
            if !a.is_zero() {
                assert!(a.mul(&a.inv()).is_one());
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        let q = FieldDesc::Rationals;
        assert_eq!(sqrt_in_field(&q.from_i64(4)), Some(q.from_i64(2)));
        assert_eq!(sqrt_in_field(&q.from_i64(2)), None);
        assert_eq!(
            sqrt_in_field(&q.from_rational(BigRational::new(9.into(), 4.into()))),
            Some(q.from_rational(BigRational::new(3.into(), 2.into())))
        );

        // squares mod 3 are {0, 1}
        assert_eq!(sqrt_in_field(&gf(3).from_i64(2)), None);

        let f9 = make_extension_field(3, 2, None).unwrap();
        let two = f9.from_i64(2);
        let b = sqrt_in_field(&two).expect("2 is a square in GF(9)");
        assert_eq!(b.mul(&b), two);
    }

    #[test]
    fn sqrt_canonical_choice() {
        let f7 = gf(7);
        // 4 = 2^2 = 5^2; canonical pick is 2
        assert_eq!(sqrt_in_field(&f7.from_i64(4)), Some(f7.from_i64(2)));
    }

    #[test]
    fn sqrt_char2_always_succeeds() {
        for f in [gf(2), make_extension_field(2, 2, None).unwrap(),
                  make_extension_field(2, 3, None).unwrap()] {
            for a in f.elements() {
                let b = sqrt_in_field(&a).expect("char-2 squaring is bijective");
                assert_eq!(b.mul(&b), a);
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_mth_root(4, &gf(5)), Some(gf(5).from_i64(2)));
        assert_eq!(
            primitive_mth_root(2, &FieldDesc::Rationals),
            Some(FieldDesc::Rationals.from_i64(-1))
        );
        assert_eq!(primitive_mth_root(3, &gf(5)), None);
    }

    #[test]
    fn primitive_root_iff_m_divides_order() {
        // exhaustive over every field of order <= 81 and m <= 20
        let mut fields = vec![];
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                  61, 67, 71, 73, 79] {
            let mut k = 1;
            while (p as u128).pow(k as u32) <= 81 {
                fields.push(make_extension_field(p, k, None).unwrap());
                k += 1;
                if k > MAX_EXTENSION_DEGREE {
                    break;
                }
            }
        }
        for f in fields {
            let q = f.order().unwrap();
            for m in 1..=20u64 {
                let got = primitive_mth_root(m, &f);
                if (q - 1) % m as u128 == 0 {
                    let e = got.expect("root must exist");
                    assert!(e.pow(m as u128).is_one());
                    assert!((1..m).all(|i| !e.pow(i as u128).is_one()));
                } else {
                    assert!(got.is_none(), "no primitive {m}-th root in {f}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let fields = [
            FieldDesc::Rationals,
            gf(7),
            make_extension_field(3, 2, None).unwrap(),
            make_extension_field(2, 4, None).unwrap(),
        ];
        for f in &fields {
            let sample: Vec<FieldElement> = match f {
                FieldDesc::Rationals => (-6..6)
                    .map(|n| {
                        f.from_rational(BigRational::new(n.into(), ((n % 3) + 4).into()))
                    })
                    .collect(),
                _ => f.elements().collect(),
            };
            for a in &sample {
                for b in &sample {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in sample.iter().take(5) {
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
                assert_eq!(a.add(&a.neg()), f.zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv()).is_one());
                }
            }
        }
    }

    #[test]
    fn embedding_gf3_into_gf9_and_gf81() {
        let f3 = gf(3);
        let f9 = make_extension_field(3, 2, None).unwrap();
        let f81 = make_extension_field(3, 4, None).unwrap();
        for a in f3.elements() {
            let b = embed(&a, &f9).unwrap();
            assert_eq!(b.mul(&b), embed(&a.mul(&a), &f9).unwrap());
        }
        // GF(9) -> GF(81): ring homomorphism on all pairs
        let imgs: Vec<(FieldElement, FieldElement)> =
            f9.elements().map(|a| (embed(&a, &f81).unwrap(), a)).collect();
        for (ia, a) in &imgs {
            for (ib, b) in &imgs {
                assert_eq!(ia.add(ib), embed(&a.add(b), &f81).unwrap());
                assert_eq!(ia.mul(ib), embed(&a.mul(b), &f81).unwrap());
            }
        }
        // injective
        for (i, (ia, _)) in imgs.iter().enumerate() {
            for (ib, _) in imgs.iter().skip(i + 1) {
                assert_ne!(ia, ib);
            }
        }
    }

    #[test]
    fn field_literal_parsing() {
        assert_eq!(FieldDesc::parse("Q").unwrap(), FieldDesc::Rationals);
        assert_eq!(FieldDesc::parse("GF(5)").unwrap(), gf(5));
        let f9 = FieldDesc::parse("GF(3^2)").unwrap();
        assert_eq!(f9.order(), Some(9));
        let f9b = FieldDesc::parse("GF(3^2; 1,0,1)").unwrap();
        assert_eq!(f9, f9b);
        assert!(FieldDesc::parse("GF(4)").is_err());
        assert!(FieldDesc::parse("GF(3^2; 2,0,1)").is_err());
    }
}
