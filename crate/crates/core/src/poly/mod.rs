//! Exact multivariate polynomial and homogeneous-form arithmetic.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero coefficients,
//! ordered by graded lex with `X0 > X1 > ...` throughout, so leading-term
//! logic, division and square-root extraction are reproducible.

pub mod parse;
pub(crate) mod unipoly;

use crate::field::{self, embed, FieldDesc, FieldElement, FieldError};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operand sizes do not match: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("coefficient is not an integer")]
    NonIntegerCoefficient,
    #[error("form is not primitive (content != 1)")]
    NotPrimitive,
    #[error("division by the zero form")]
    DivisionByZeroForm,
    #[error("too many variables: {nvars} (supported: {max})")]
    TooManyVariables { nvars: usize, max: usize },
    #[error("search field has {order} elements (cap: {max})")]
    FieldTooLarge { order: u128, max: u128 },
    #[error("polynomial is not homogeneous of the expected degree")]
    NonHomogeneous,
    #[error("form is zero")]
    ZeroForm,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector with the graded-lex order (total degree first, then
/// lexicographic with `X0` heaviest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn quotient(&self, by: &Mono) -> Option<Mono> {
        if !by.divides(self) {
            return None;
        }
        Some(Mono(self.0.iter().zip(&by.0).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a fixed coefficient field.
///
/// Invariant: no stored coefficient is zero; the zero polynomial has an
/// empty term map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    field: FieldDesc,
    nvars: usize,
    terms: BTreeMap<Mono, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &FieldDesc, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldDesc, nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Mono(vec![0; nvars]), c);
        p
    }

    pub fn variable(field: &FieldDesc, nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut e = vec![0; nvars];
        e[idx] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(Mono(e), field.one());
        p
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> FieldElement {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Mono, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.total_degree())
    }

    /// `Some(d)` when every term has total degree `d`; `None` for the zero
    /// polynomial or an inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total_degree();
        it.all(|m| m.total_degree() == d).then_some(d)
    }

    /// Add `c * X^mono` in place, dropping the slot if it cancels.
    pub fn add_term(&mut self, mono: Mono, c: FieldElement) {
        assert_eq!(mono.0.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert!(self.field == other.field, "field mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.field, self.nvars);
        }
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute each variable by a polynomial (all over the same field
    /// and variable count as the images).
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let (ifield, invars) = match images.first() {
            Some(p) => (p.field.clone(), p.nvars),
            None => (self.field.clone(), 0),
        };
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(&ifield, invars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&ifield, invars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((v, e))
                    .or_insert_with(|| images[v].pow(e))
                    .clone();
                term = term.mul(&pw);
            }
            out = out.add(&term);
        }
        out
    }

    /// Apply `f` to every coefficient, re-collecting into `target`.
    pub fn map_coeffs(
        &self,
        target: &FieldDesc,
        mut f: impl FnMut(&FieldElement) -> FieldElement,
    ) -> MultiPoly {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Embed coefficients into a larger field (see [`field::embed`]).
    pub fn embed_into(&self, target: &FieldDesc) -> Result<MultiPoly, FieldError> {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), embed(c, target)?);
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, if the division leaves no remainder.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_compatible(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading_term().expect("divisor is nonzero");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MultiPoly::zero(&self.field, self.nvars);
        while let Some((rm, rc)) = r.leading_term() {
            let tm = rm.quotient(&dm)?;
            let tc = rc.div(&dc);
            q.add_term(tm.clone(), tc.clone());
            let mut t = MultiPoly::zero(&self.field, self.nvars);
            t.add_term(tm, tc);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// gcd of the integer coefficients; the paper's `A(F)`. Zero for the
    /// zero polynomial.
    pub fn content(&self) -> Result<BigUint, PolyError> {
        let mut g = BigUint::zero();
        for (_, c) in &self.terms {
            let r = c.as_rational().ok_or(PolyError::NonIntegerCoefficient)?;
            if !r.denom().is_one() {
                return Err(PolyError::NonIntegerCoefficient);
            }
            g = g.gcd(r.numer().magnitude());
        }
        Ok(g)
    }

    /// Maximum coefficient magnitude of a primitive integer polynomial.
    pub fn height(&self) -> Result<BigUint, PolyError> {
        if self.content()? != BigUint::one() {
            return Err(PolyError::NotPrimitive);
        }
        let mut h = BigUint::zero();
        for (_, c) in &self.terms {
            let m = c.as_rational().unwrap().numer().magnitude().clone();
            h = h.max(m);
        }
        Ok(h)
    }

    /// Square root in the polynomial ring, if one exists, allowing (for
    /// finite fields) a quadratic coefficient extension when `allow_ext`
    /// is set. Works for inhomogeneous polynomials as well; the result is
    /// returned together with the field it lives in.
    ///
    /// Deterministic: the leading coefficient of the root is the canonical
    /// [`field::sqrt_in_field`] choice.
    pub fn sqrt(&self, allow_ext: bool) -> Option<(MultiPoly, FieldDesc)> {
        if self.is_zero() {
            return Some((self.clone(), self.field.clone()));
        }
        if self.field.characteristic() == 2 {
            // squaring is coefficientwise Frobenius on doubled exponents
            let mut root = MultiPoly::zero(&self.field, self.nvars);
            for (m, c) in &self.terms {
                if m.0.iter().any(|&e| e % 2 != 0) {
                    return None;
                }
                let half = Mono(m.0.iter().map(|&e| e / 2).collect());
                root.add_term(half, field::sqrt_in_field(c)?);
            }
            debug_assert_eq!(root.mul(&root), *self);
            return Some((root, self.field.clone()));
        }
        let (lm, lc) = self.leading_term().expect("nonzero");
        let (lm, lc) = (lm.clone(), lc.clone());
        if lm.0.iter().any(|&e| e % 2 != 0) {
            return None;
        }
        let s = match field::sqrt_in_field(&lc) {
            Some(s) => s,
            None => {
                if !allow_ext {
                    return None;
                }
                let ext = field::quadratic_extension(&self.field).ok()?;
                let lifted = self.embed_into(&ext).ok()?;
                return lifted.sqrt(false).map(|(g, _)| (g, ext));
            }
        };
        let half = Mono(lm.0.iter().map(|&e| e / 2).collect());
        let mut g = MultiPoly::zero(&self.field, self.nvars);
        g.add_term(half.clone(), s.clone());
        let two_s = s.add(&s);
        let mut guard = 0usize;
        loop {
            let r = self.sub(&g.mul(&g));
            if r.is_zero() {
                return Some((g, self.field.clone()));
            }
            let (rm, rc) = r.leading_term().unwrap();
            let tm = rm.quotient(&half)?;
            if tm >= half {
                // next term would not be below the leading term: not a square
                return None;
            }
            g.add_term(tm, rc.div(&two_s));
            guard += 1;
            if guard > 4096 {
                return None;
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, c.neg()),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("X{i}") } else { format!("X{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A homogeneous polynomial with its degree certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    poly: MultiPoly,
    degree: u32,
}

impl Form {
    /// Wrap a polynomial, inferring the degree. The zero polynomial gets
    /// degree 0; use [`Form::with_degree`] when a specific degree matters.
    pub fn new(poly: MultiPoly) -> Result<Form, PolyError> {
        match poly.homogeneous_degree() {
            Some(d) => Ok(Form { poly, degree: d }),
            None if poly.is_zero() => Ok(Form { poly, degree: 0 }),
            None => Err(PolyError::NonHomogeneous),
        }
    }

    /// Wrap a polynomial known to be homogeneous of degree `d` (the zero
    /// polynomial is accepted at any degree).
    pub fn with_degree(poly: MultiPoly, d: u32) -> Result<Form, PolyError> {
        if !poly.is_zero() && poly.homogeneous_degree() != Some(d) {
            return Err(PolyError::NonHomogeneous);
        }
        Ok(Form { poly, degree: d })
    }

    pub fn zero(field: &FieldDesc, nvars: usize, degree: u32) -> Form {
        Form { poly: MultiPoly::zero(field, nvars), degree }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &FieldDesc {
        self.poly.field()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &FieldElement) -> Form {
        Form { poly: self.poly.scale(c), degree: self.degree }
    }

    pub fn embed_into(&self, target: &FieldDesc) -> Result<Form, FieldError> {
        Ok(Form { poly: self.poly.embed_into(target)?, degree: self.degree })
    }

    /// Split `F` into `[F_0, ..., F_d]` with `F = sum F_i * X0^(d-i)`;
    /// `F_i` is homogeneous of degree `i` in the remaining variables.
    pub fn decompose_by_x0(&self) -> Vec<Form> {
        let d = self.degree as usize;
        let mut parts =
            vec![MultiPoly::zero(self.field(), self.nvars()); d + 1];
        for (m, c) in self.poly.terms() {
            let e0 = m.0[0] as usize;
            let i = d - e0;
            let mut rest = m.0.clone();
            rest[0] = 0;
            parts[i].add_term(Mono(rest), c.clone());
        }
        parts
            .into_iter()
            .enumerate()
            .map(|(i, p)| Form { poly: p, degree: i as u32 })
            .collect()
    }

    /// Reassemble from X0-parts: `parts[i]` of degree `i`, free of `X0`.
    pub fn from_x0_parts(parts: &[Form]) -> Result<Form, PolyError> {
        assert!(!parts.is_empty());
        let d = (parts.len() - 1) as u32;
        let field = parts[0].field().clone();
        let nvars = parts[0].nvars();
        let mut acc = MultiPoly::zero(&field, nvars);
        for (i, part) in parts.iter().enumerate() {
            if !part.is_zero() && part.poly.homogeneous_degree() != Some(i as u32) {
                return Err(PolyError::NonHomogeneous);
            }
            for (m, c) in part.poly.terms() {
                if m.0[0] != 0 {
                    return Err(PolyError::NonHomogeneous);
                }
                let mut e = m.0.clone();
                e[0] = d - i as u32;
                acc.add_term(Mono(e), c.clone());
            }
        }
        Form::with_degree(acc, d)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// An invertible matrix acting on forms by substitution: row `r` is the
/// image of variable `X_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearChange {
    field: FieldDesc,
    size: usize,
    entries: Vec<FieldElement>, // row-major, size * size
}

impl LinearChange {
    /// Validate invertibility by exact Gaussian elimination.
    pub fn new(
        field: &FieldDesc,
        size: usize,
        entries: Vec<FieldElement>,
    ) -> Result<LinearChange, PolyError> {
        if entries.len() != size * size {
            return Err(PolyError::SizeMismatch { expected: size * size, got: entries.len() });
        }
        let m = LinearChange { field: field.clone(), size, entries };
        if m.determinant().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn identity(field: &FieldDesc, size: usize) -> LinearChange {
        let mut entries = vec![field.zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = field.one();
        }
        LinearChange { field: field.clone(), size, entries }
    }

    /// Matrix with the given first row and identity rows below; the shape
    /// of every projection-compatible automorphism after normalization.
    pub fn with_first_row(
        field: &FieldDesc,
        row: Vec<FieldElement>,
    ) -> Result<LinearChange, PolyError> {
        let size = row.len();
        let mut m = Self::identity(field, size);
        for (j, c) in row.into_iter().enumerate() {
            m.entries[j] = c;
        }
        if m.entry(0, 0).is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn determinant(&self) -> FieldElement {
        let n = self.size;
        let mut a = self.entries.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero());
            let Some(pivot) = pivot else {
                return self.field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pv = a[col * n + col].clone();
            det = det.mul(&pv);
            let pinv = pv.inv();
            for r in (col + 1)..n {
                let factor = a[r * n + col].mul(&pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[r * n + j].sub(&factor.mul(&a[col * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Matrix product; note `(A.mul_mat(B)) * F == B * (A * F)` under the
    /// substitution action.
    pub fn mul_mat(&self, other: &LinearChange) -> LinearChange {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut entries = vec![self.field.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        LinearChange { field: self.field.clone(), size: n, entries }
    }

    pub fn inverse(&self) -> LinearChange {
        let n = self.size;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(&self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .expect("invertible by construction");
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = a[col * n + col].inv();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&pinv);
                inv[col * n + j] = inv[col * n + j].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let v = a[r * n + j].sub(&factor.mul(&a[col * n + j]));
                    a[r * n + j] = v;
                    let w = inv[r * n + j].sub(&factor.mul(&inv[col * n + j]));
                    inv[r * n + j] = w;
                }
            }
        }
        LinearChange { field: self.field.clone(), size: n, entries: inv }
    }

    /// Image of a coordinate vector (matrix times column vector).
    pub fn map_point(&self, point: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(point.len(), self.size);
        (0..self.size)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.size {
                    acc = acc.add(&self.entry(i, j).mul(&point[j]));
                }
                acc
            })
            .collect()
    }

    pub fn embed_into(&self, target: &FieldDesc) -> Result<LinearChange, FieldError> {
        let entries: Result<Vec<_>, _> =
            self.entries.iter().map(|c| embed(c, target)).collect();
        Ok(LinearChange { field: target.clone(), size: self.size, entries: entries? })
    }
}

impl fmt::Display for LinearChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The action `A * F = F(row-combinations)`: variable `X_r` is replaced by
/// `sum_c A[r][c] X_c`. Composition satisfies `(A.mul_mat(B)) * F = B * (A * F)`.
pub fn apply_linear_change(a: &LinearChange, form: &Form) -> Result<Form, PolyError> {
    if a.size() != form.nvars() {
        return Err(PolyError::SizeMismatch { expected: form.nvars(), got: a.size() });
    }
    if a.field() != form.field() {
        return Err(PolyError::FieldMismatch);
    }
    let images: Vec<MultiPoly> = (0..a.size())
        .map(|r| {
            let mut img = MultiPoly::zero(a.field(), a.size());
            for c in 0..a.size() {
                let mut e = vec![0u32; a.size()];
                e[c] = 1;
                img.add_term(Mono(e), a.entry(r, c).clone());
            }
            img
        })
        .collect();
    Form::with_degree(form.poly().substitute(&images), form.degree())
}

/// Exact quotient of forms, when the division is exact.
pub fn exact_divide_form(n: &Form, d: &Form) -> Result<Option<Form>, PolyError> {
    if d.is_zero() {
        return Err(PolyError::DivisionByZeroForm);
    }
    if n.field() != d.field() {
        return Err(PolyError::FieldMismatch);
    }
    if n.is_zero() {
        return Ok(Some(Form::zero(n.field(), n.nvars(), 0)));
    }
    if n.degree() < d.degree() {
        return Ok(None);
    }
    Ok(n.poly()
        .exact_div(d.poly())
        .map(|q| Form { degree: n.degree() - d.degree(), poly: q }))
}

/// Square root of a form; see [`MultiPoly::sqrt`] for the algorithm and the
/// deterministic sign convention.
pub fn sqrt_form(q: &Form, allow_quadratic_extension: bool) -> Option<(Form, FieldDesc)> {
    if q.is_zero() || q.degree() % 2 != 0 {
        return None;
    }
    let (g, fld) = q.poly().sqrt(allow_quadratic_extension)?;
    Some((Form { poly: g, degree: q.degree() / 2 }, fld))
}

/// Cap on the search-field order for exhaustive linear-form enumeration.
pub const LINEAR_SEARCH_ORDER_CAP: u128 = 81;
/// Cap on the variable count for exhaustive linear-form enumeration.
pub const LINEAR_SEARCH_NVARS_CAP: usize = 3;

/// All normalized degree-1 forms over a small finite field (first nonzero
/// coefficient equal to 1).
pub fn normalized_linear_forms(
    field: &FieldDesc,
    nvars: usize,
) -> Result<Vec<Form>, PolyError> {
    let order = field.order().ok_or(PolyError::FieldTooLarge {
        order: u128::MAX,
        max: LINEAR_SEARCH_ORDER_CAP,
    })?;
    if order > LINEAR_SEARCH_ORDER_CAP {
        return Err(PolyError::FieldTooLarge { order, max: LINEAR_SEARCH_ORDER_CAP });
    }
    if nvars > LINEAR_SEARCH_NVARS_CAP {
        return Err(PolyError::TooManyVariables { nvars, max: LINEAR_SEARCH_NVARS_CAP });
    }
    let elements: Vec<FieldElement> = field.elements().collect();
    let mut out = Vec::new();
    for pivot in 0..nvars {
        let tail = nvars - pivot - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut p = MultiPoly::zero(field, nvars);
            let mut e = vec![0u32; nvars];
            e[pivot] = 1;
            p.add_term(Mono(e), field.one());
            for (t, &i) in idx.iter().enumerate() {
                if i > 0 {
                    let mut e = vec![0u32; nvars];
                    e[pivot + 1 + t] = 1;
                    p.add_term(Mono(e), elements[i].clone());
                }
            }
            out.push(Form { poly: p, degree: 1 });
            // odometer over the tail coefficients
            let mut carry = true;
            for slot in idx.iter_mut().rev() {
                if carry {
                    *slot += 1;
                    if *slot == elements.len() {
                        *slot = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}

/// All normalized degree-1 factors of `F` over `search_field`, with exact
/// multiplicities. Complete by exhaustive enumeration.
pub fn linear_factors(
    form: &Form,
    search_field: &FieldDesc,
) -> Result<Vec<(Form, usize)>, PolyError> {
    if form.is_zero() {
        return Err(PolyError::ZeroForm);
    }
    let f = if form.field() == search_field {
        form.clone()
    } else {
        form.embed_into(search_field)?
    };
    let mut out = Vec::new();
    for line in normalized_linear_forms(search_field, f.nvars())? {
        let mut mult = 0usize;
        let mut rest = f.clone();
        while let Some(q) = exact_divide_form(&rest, &line)? {
            mult += 1;
            rest = q;
            if rest.degree() == 0 {
                break;
            }
        }
        if mult > 0 {
            out.push((line, mult));
        }
    }
    Ok(out)
}

/// Outcome of the advisory irreducibility check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Irreducibility {
    /// An exact verified factor was found.
    Reducible(Form),
    /// A degree-preserving line restriction was irreducible over the field;
    /// this proves irreducibility over that field (not over its closure).
    ProbablyIrreducible,
    Unknown,
}

// xorshift-style generator so the heuristic stays dependency-free and
// reproducible
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Advisory irreducibility test. `Reducible` always carries an exact
/// verified factor; `ProbablyIrreducible` is backed by an irreducible
/// degree-`d` line specialization; everything else is `Unknown`.
pub fn irreducibility_heuristic(form: &Form, trials: u32) -> Irreducibility {
    if form.is_zero() || form.degree() == 0 {
        return Irreducibility::Unknown;
    }
    // common variable factor: every term divisible by some X_i
    for v in 0..form.nvars() {
        if form.poly().terms().all(|(m, _)| m.0[v] > 0) {
            let var = MultiPoly::variable(form.field(), form.nvars(), v);
            return Irreducibility::Reducible(Form { poly: var, degree: 1 });
        }
    }
    if form.degree() == 1 {
        return Irreducibility::ProbablyIrreducible;
    }
    match form.field() {
        FieldDesc::Rationals => {
            // try reductions at small primes; an irreducible degree-d
            // reduction of a primitive integer form certifies
            // irreducibility over Q (Gauss)
            let Ok(int_form) = clear_denominators(form) else {
                return Irreducibility::Unknown;
            };
            for p in [2u64, 3, 5, 7, 11, 13] {
                let fp = FieldDesc::prime_field(p).unwrap();
                let reduced = int_form.poly().map_coeffs(&fp, |c| {
                    fp.from_bigint(c.as_rational().unwrap().numer())
                });
                if reduced.is_zero() {
                    continue;
                }
                let rf = Form { poly: reduced, degree: form.degree() };
                if irreducibility_heuristic(&rf, trials) == Irreducibility::ProbablyIrreducible {
                    return Irreducibility::ProbablyIrreducible;
                }
            }
            Irreducibility::Unknown
        }
        FieldDesc::Finite { .. } => {
            let order = form.field().order().unwrap();
            if form.nvars() <= LINEAR_SEARCH_NVARS_CAP && order <= LINEAR_SEARCH_ORDER_CAP {
                if let Ok(factors) = linear_factors(form, form.field()) {
                    if let Some((factor, _)) = factors.into_iter().next() {
                        if factor.degree() < form.degree() {
                            return Irreducibility::Reducible(factor);
                        }
                    }
                }
            }
            // random line restrictions; one irreducible degree-d
            // specialization settles it for this field
            let mut rng = SplitMix64(0x5eed ^ (order as u64));
            let elements: Vec<FieldElement> = form.field().elements().collect();
            let d = form.degree();
            let mut valid = 0u32;
            let mut attempts = 0u32;
            while valid < trials && attempts < trials.saturating_mul(4) {
                attempts += 1;
                let a: Vec<FieldElement> = (0..form.nvars())
                    .map(|_| elements[(rng.next() % elements.len() as u64) as usize].clone())
                    .collect();
                let b: Vec<FieldElement> = (0..form.nvars())
                    .map(|_| elements[(rng.next() % elements.len() as u64) as usize].clone())
                    .collect();
                let Some(f) = restrict_to_line(form, &a, &b) else {
                    continue;
                };
                if f.degree() != Some(d as usize) {
                    continue;
                }
                valid += 1;
                if f.is_squarefree() && f.is_irreducible() {
                    return Irreducibility::ProbablyIrreducible;
                }
            }
            Irreducibility::Unknown
        }
    }
}

/// Restriction of a form to the line `X_i = a_i*S + b_i*T`, returned as a
/// univariate polynomial in `t` (the dehomogenization at `S = 1`). `None`
/// when the restriction vanishes identically.
fn restrict_to_line(
    form: &Form,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Option<unipoly::UniPoly> {
    let field = form.field();
    let d = form.degree() as usize;
    let mut coeffs = vec![field.zero(); d + 1];
    for (m, c) in form.poly().terms() {
        // expand prod (a_i + b_i t)^{e_i}
        let mut term = vec![field.zero(); d + 1];
        term[0] = c.clone();
        let mut deg = 0usize;
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                let mut next = vec![field.zero(); d + 1];
                for (j, tc) in term.iter().enumerate().take(deg + 1) {
                    if tc.is_zero() {
                        continue;
                    }
                    next[j] = next[j].add(&tc.mul(&a[i]));
                    next[j + 1] = next[j + 1].add(&tc.mul(&b[i]));
                }
                term = next;
                deg += 1;
            }
        }
        for (j, tc) in term.into_iter().enumerate() {
            coeffs[j] = coeffs[j].add(&tc);
        }
    }
    let p = unipoly::UniPoly::from_coeffs(field, coeffs);
    (!p.is_zero()).then_some(p)
}

/// Multiply through by the least common denominator (and nothing else):
/// the result has integer coefficients.
pub fn clear_denominators(form: &Form) -> Result<Form, PolyError> {
    if form.field() != &FieldDesc::Rationals {
        return Err(PolyError::FieldMismatch);
    }
    let mut lcm = BigUint::one();
    for (_, c) in form.poly().terms() {
        lcm = lcm.lcm(c.as_rational().unwrap().denom().magnitude());
    }
    let factor = FieldDesc::Rationals.from_bigint(&BigInt::from(lcm));
    Ok(form.scale(&factor))
}
