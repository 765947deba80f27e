//! Integer-form bookkeeping and characteristic transfer: primitivity,
//! per-part contents, height, the explicit prime bounds, eligible-prime
//! predicates, reduction mod p, and the transfer scan that checks a source
//! verdict against a list of target characteristics.

use crate::batch;
use crate::check::{check_auto, GaloisVerdict, ProjectionKind};
use crate::field::{is_prime, FieldDesc};
use crate::poly::{irreducibility_heuristic, Form, Irreducibility, PolyError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("the zero form has no content normalization")]
    ZeroForm,
    #[error("integer coefficients are required")]
    NonIntegerCoefficient,
    #[error("rational coefficients are required (field was {0})")]
    WrongField(FieldDesc),
    #[error("degree {0} < 4 is out of scope")]
    DegreeTooSmall(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A primitive integer form with its cached `X0`-decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerForm {
    form: Form,
    parts: Vec<Form>,
}

impl IntegerForm {
    /// Normalize a nonzero integer form to its primitive part, returning
    /// the extracted content alongside.
    pub fn new(raw: &Form) -> Result<(IntegerForm, BigUint), TransferError> {
        if raw.field() != &FieldDesc::Rationals {
            return Err(TransferError::WrongField(raw.field().clone()));
        }
        if raw.is_zero() {
            return Err(TransferError::ZeroForm);
        }
        let content = raw.poly().content().map_err(|e| match e {
            PolyError::NonIntegerCoefficient => TransferError::NonIntegerCoefficient,
            other => TransferError::Poly(other),
        })?;
        let inv = FieldDesc::Rationals
            .from_bigint(&content.clone().into())
            .inv();
        let primitive = raw.scale(&inv);
        debug_assert_eq!(primitive.poly().content().unwrap(), BigUint::one());
        let parts = primitive.decompose_by_x0();
        Ok((IntegerForm { form: primitive, parts }, content))
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn parts(&self) -> &[Form] {
        &self.parts
    }

    /// The content `A(F_i)` of the `i`-th decomposition part (0 for the
    /// zero part, which every prime divides).
    pub fn part_content(&self, i: usize) -> BigUint {
        self.parts[i].poly().content().expect("integer parts")
    }

    /// Height of the (primitive) form.
    pub fn height(&self) -> BigUint {
        self.form.poly().height().expect("primitive integer form")
    }

    /// Coefficient-wise reduction mod `p`; terms may drop out.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Form, TransferError> {
        if !is_prime(p) {
            return Err(TransferError::NotPrime(p));
        }
        let fp = FieldDesc::prime_field(p).unwrap();
        let reduced = self
            .form
            .poly()
            .map_coeffs(&fp, |c| fp.from_bigint(c.as_rational().unwrap().numer()));
        Ok(Form::with_degree(reduced, self.degree()).expect("reduction stays homogeneous"))
    }
}

/// The inner transfer bound `d * (2 (d-1) H)^(d-1)`.
pub fn inner_bound(d: u32, h: &BigUint) -> Result<BigUint, TransferError> {
    if d < 4 {
        return Err(TransferError::DegreeTooSmall(d));
    }
    let base = BigUint::from(2u32) * BigUint::from(d - 1) * h;
    Ok(BigUint::from(d) * base.pow(d - 1))
}

/// The outer transfer bound `((2d) H)^d`.
pub fn outer_bound(d: u32, h: &BigUint) -> Result<BigUint, TransferError> {
    if d < 4 {
        return Err(TransferError::DegreeTooSmall(d));
    }
    let base = BigUint::from(2 * d) * h;
    Ok(base.pow(d))
}

fn divides(p: u64, n: &BigUint) -> bool {
    // the zero content counts as divisible by every prime
    n.is_zero() || (n % BigUint::from(p)).is_zero()
}

/// Content-divisibility predicate for inner Galois reduction at `p`:
/// `p` does not divide `A(F_1)` and divides `A(F_i)` for
/// `i = 0, 2, ..., d-1`.
pub fn thm51_inner(form: &IntegerForm, p: u64) -> Result<bool, TransferError> {
    if !is_prime(p) {
        return Err(TransferError::NotPrime(p));
    }
    let d = form.degree() as usize;
    if divides(p, &form.part_content(1)) {
        return Ok(false);
    }
    let ok = std::iter::once(0)
        .chain(2..d)
        .all(|i| divides(p, &form.part_content(i)));
    Ok(ok)
}

/// Content-divisibility predicate for outer Galois reduction at `p`:
/// `p` does not divide `A(F_0)` and divides `A(F_i)` for `i = 1, ..., d-1`.
pub fn thm51_outer(form: &IntegerForm, p: u64) -> Result<bool, TransferError> {
    if !is_prime(p) {
        return Err(TransferError::NotPrime(p));
    }
    let d = form.degree() as usize;
    if divides(p, &form.part_content(0)) {
        return Ok(false);
    }
    Ok((1..d).all(|i| divides(p, &form.part_content(i))))
}

/// Outcome at one target characteristic (`q = 0` means the rationals).
#[derive(Clone, PartialEq, Debug)]
pub struct TargetOutcome {
    pub q: u64,
    pub predicted_eligible: bool,
    pub verdict: GaloisVerdict,
    pub irreducibility: Irreducibility,
}

/// Full transfer-scan report.
#[derive(Clone, PartialEq, Debug)]
pub struct TransferReport {
    pub kind: ProjectionKind,
    pub source: u64,
    pub bound: BigUint,
    pub bound_satisfied: bool,
    pub eligibility_modulus: BigUint,
    pub source_verdict: GaloisVerdict,
    pub tested_targets: Vec<TargetOutcome>,
}

/// Run the source checker, compute the eligibility modulus
/// (`(d-1) A(F_1)` inner, `d A(F_0)` outer), and check every target:
/// a target `q` is predicted eligible iff `q = 0` or `q` does not divide
/// the modulus. Per-target work runs in parallel; the report keeps the
/// given target order.
pub fn transfer_scan(
    form: &IntegerForm,
    kind: ProjectionKind,
    source_p: u64,
    targets: &[u64],
    assume_irreducible: bool,
    irreducibility_trials: u32,
) -> Result<TransferReport, TransferError> {
    if source_p != 0 && !is_prime(source_p) {
        return Err(TransferError::NotPrime(source_p));
    }
    for &q in targets {
        if q != 0 && !is_prime(q) {
            return Err(TransferError::NotPrime(q));
        }
    }
    let d = form.degree();
    if d < 4 {
        return Err(TransferError::DegreeTooSmall(d));
    }
    let anchor_content = match kind {
        ProjectionKind::Inner => form.part_content(1),
        ProjectionKind::Outer => form.part_content(0),
    };
    if anchor_content.is_zero() {
        return Err(TransferError::PreconditionFailed(match kind {
            ProjectionKind::Inner => "F1 = 0: the hypersurface is singular at P".to_string(),
            ProjectionKind::Outer => "F0 = 0: P lies on the hypersurface".to_string(),
        }));
    }
    let eligibility_modulus = match kind {
        ProjectionKind::Inner => BigUint::from(d as u64 - 1) * &anchor_content,
        ProjectionKind::Outer => BigUint::from(d as u64) * &anchor_content,
    };
    let h = form.height();
    let bound = match kind {
        ProjectionKind::Inner => inner_bound(d, &h)?,
        ProjectionKind::Outer => outer_bound(d, &h)?,
    };
    let bound_satisfied = source_p == 0 || BigUint::from(source_p) > bound;

    let form_at = |q: u64| -> Form {
        if q == 0 {
            form.form().clone()
        } else {
            form.reduce_mod_p(q).expect("target primality checked")
        }
    };
    let source_verdict = check_auto(&form_at(source_p), kind, assume_irreducible, None);

    let tested_targets = batch::map_batch(targets.to_vec(), |q| {
        let target_form = form_at(q);
        let predicted_eligible = q == 0 || !divides(q, &eligibility_modulus);
        let irreducibility = irreducibility_heuristic(&target_form, irreducibility_trials);
        let verdict = check_auto(&target_form, kind, assume_irreducible, None);
        TargetOutcome { q, predicted_eligible, verdict, irreducibility }
    });

    Ok(TransferReport {
        kind,
        source: source_p,
        bound,
        bound_satisfied,
        eligibility_modulus,
        source_verdict,
        tested_targets,
    })
}

/// All primes up to and including `n`.
pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&m| is_prime(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::GaloisStatus;
    use crate::poly::parse::parse_form_with_nvars;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn f(text: &str) -> Form {
        parse_form_with_nvars(text, &q(), 3).unwrap()
    }

    #[test]
    fn primitive_normalization() {
        let (form, content) = IntegerForm::new(&f("2*X0^4 + 4*X1^4")).unwrap();
        assert_eq!(content, BigUint::from(2u32));
        assert_eq!(form.form(), &f("X0^4 + 2*X1^4"));

        let (form, content) = IntegerForm::new(&f("X0^3*X2 + X1^4 + X2^4")).unwrap();
        assert_eq!(content, BigUint::one());
        assert_eq!(form.form(), &f("X0^3*X2 + X1^4 + X2^4"));

        // gcd(6, 10, 15) = 1
        let (_, content) =
            IntegerForm::new(&f("6*X0^4 + 10*X1^4 + 15*X2^4")).unwrap();
        assert_eq!(content, BigUint::one());

        assert_eq!(
            IntegerForm::new(&Form::zero(&q(), 3, 4)),
            Err(TransferError::ZeroForm)
        );
        assert_eq!(
            IntegerForm::new(&f("1/2*X0^4 + X1^4")),
            Err(TransferError::NonIntegerCoefficient)
        );
    }

    #[test]
    fn reduction_examples() {
        let (form, _) =
            IntegerForm::new(&f("X1*X0^3 + 5*X1*X2*X0^2 + 5*X2^3*X0 + X2^4 + X1^4"))
                .unwrap();
        let f5 = FieldDesc::prime_field(5).unwrap();
        let reduced = form.reduce_mod_p(5).unwrap();
        assert_eq!(
            reduced,
            parse_form_with_nvars("X1*X0^3 + X2^4 + X1^4", &f5, 3).unwrap()
        );

        let (form, _) = IntegerForm::new(&f("X0^4 + X1^4")).unwrap();
        let f2 = FieldDesc::prime_field(2).unwrap();
        assert_eq!(
            form.reduce_mod_p(2).unwrap(),
            parse_form_with_nvars("X0^4 + X1^4", &f2, 3).unwrap()
        );

        let (form, _) = IntegerForm::new(&f("7*X0^4 + X1^4")).unwrap();
        let f7 = FieldDesc::prime_field(7).unwrap();
        assert_eq!(
            form.reduce_mod_p(7).unwrap(),
            parse_form_with_nvars("X1^4", &f7, 3).unwrap()
        );
        assert_eq!(form.reduce_mod_p(6), Err(TransferError::NotPrime(6)));
    }

    #[test]
    fn bounds_exact_values() {
        let one = BigUint::one();
        assert_eq!(inner_bound(4, &one).unwrap(), BigUint::from(864u32));
        assert_eq!(
            inner_bound(4, &BigUint::from(2u32)).unwrap(),
            BigUint::from(6912u32)
        );
        assert_eq!(inner_bound(5, &one).unwrap(), BigUint::from(20480u32));
        assert_eq!(outer_bound(4, &one).unwrap(), BigUint::from(4096u32));
        assert_eq!(
            outer_bound(4, &BigUint::from(3u32)).unwrap(),
            BigUint::from(331776u32)
        );
        assert_eq!(outer_bound(5, &one).unwrap(), BigUint::from(100000u32));
        assert_eq!(inner_bound(3, &one), Err(TransferError::DegreeTooSmall(3)));
    }

    #[test]
    fn bounds_monotone() {
        let mut prev_inner = BigUint::zero();
        let mut prev_outer = BigUint::zero();
        for h in 1u32..6 {
            let h = BigUint::from(h);
            let bi = inner_bound(4, &h).unwrap();
            let bo = outer_bound(4, &h).unwrap();
            assert!(bi > prev_inner && bo > prev_outer);
            prev_inner = bi;
            prev_outer = bo;
        }
        for d in 4u32..8 {
            assert!(inner_bound(d + 1, &BigUint::one()).unwrap()
                > inner_bound(d, &BigUint::one()).unwrap());
            assert!(outer_bound(d + 1, &BigUint::one()).unwrap()
                > outer_bound(d, &BigUint::one()).unwrap());
        }
    }

    #[test]
    fn thm51_inner_fixture() {
        let (form, _) =
            IntegerForm::new(&f("X1*X0^3 + 5*X1*X2*X0^2 + 5*X2^3*X0 + X2^4 + X1^4"))
                .unwrap();
        assert!(thm51_inner(&form, 5).unwrap());
        assert!(!thm51_inner(&form, 3).unwrap());
        // F1 = 0: A(F1) = 0 is divisible by every prime
        let (form, _) = IntegerForm::new(&f("X0^4 + X1^4")).unwrap();
        assert!(!thm51_inner(&form, 5).unwrap());
    }

    #[test]
    fn thm51_outer_fixture() {
        let (form, _) =
            IntegerForm::new(&f("X0^4 + 3*X1*X0^3 + 3*X1^2*X2*X0 + X1^4 + X2^4"))
                .unwrap();
        assert!(thm51_outer(&form, 3).unwrap());
        assert!(!thm51_outer(&form, 2).unwrap());
        let (fermat, _) = IntegerForm::new(&f("X0^4 + X1^4 + X2^4")).unwrap();
        for p in [2, 3, 5, 7, 11] {
            assert!(thm51_outer(&fermat, p).unwrap());
        }
    }

    #[test]
    fn transfer_scan_inner_fixture() {
        let (form, _) = IntegerForm::new(&f("X0^3*X2 + X1^4 + X2^4")).unwrap();
        let report = transfer_scan(
            &form,
            ProjectionKind::Inner,
            0,
            &[2, 3, 5, 7],
            true,
            8,
        )
        .unwrap();
        assert_eq!(report.eligibility_modulus, BigUint::from(3u32));
        assert_eq!(report.bound, BigUint::from(864u32));
        assert!(report.bound_satisfied);
        assert_eq!(report.source_verdict.status, GaloisStatus::ExtendableGalois);
        let eligible: Vec<u64> = report
            .tested_targets
            .iter()
            .filter(|t| t.predicted_eligible)
            .map(|t| t.q)
            .collect();
        assert_eq!(eligible, vec![2, 5, 7]);
        for t in &report.tested_targets {
            if t.predicted_eligible {
                assert_eq!(t.verdict.status, GaloisStatus::ExtendableGalois, "q = {}", t.q);
            }
        }
    }

    #[test]
    fn transfer_scan_outer_fixture() {
        let (form, _) = IntegerForm::new(&f("X0^4 + X1^4 + X2^4")).unwrap();
        let report = transfer_scan(
            &form,
            ProjectionKind::Outer,
            0,
            &[3, 5, 7],
            true,
            8,
        )
        .unwrap();
        assert_eq!(report.eligibility_modulus, BigUint::from(4u32));
        assert_eq!(report.bound, BigUint::from(4096u32));
        for t in &report.tested_targets {
            assert!(t.predicted_eligible);
            assert_eq!(t.verdict.status, GaloisStatus::ExtendableGalois, "q = {}", t.q);
        }
    }

    #[test]
    fn transfer_scan_rejects_vanishing_anchor() {
        let (form, _) = IntegerForm::new(&f("X0^4 + X1^4 + X2^4")).unwrap();
        assert!(matches!(
            transfer_scan(&form, ProjectionKind::Inner, 0, &[5], false, 4),
            Err(TransferError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn primes_upto_20() {
        assert_eq!(primes_upto(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
