//! Galois-group classification for cubics and quartics whose coefficients
//! are multivariate polynomials: discriminants via `b1^2 - 4 b2`, resolvent
//! cubics, polynomial square tests, and the characteristic-2/3 degenerate
//! forms.

use crate::field::FieldDesc;
use crate::poly::{
    linear_factors, normalized_linear_forms, sqrt_form, Form, MultiPoly,
    PolyError, LINEAR_SEARCH_ORDER_CAP,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolventError {
    #[error("wrong characteristic: expected {expected}, got {got}")]
    WrongCharacteristic { expected: u64, got: u64 },
    #[error("coefficients live in different fields")]
    FieldMismatch,
    #[error("search field has {order} elements (cap: {max})")]
    FieldTooLarge { order: u128, max: u128 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Invariants of the cubic `x^3 + a1 x^2 + a2 x + a3`.
///
/// `delta = b1^2 - 4*b2` is the discriminant; this identity is pinned by
/// tests against a Sylvester-resultant oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicInvariants {
    pub b1: MultiPoly,
    pub b2: MultiPoly,
    pub delta: MultiPoly,
}

fn check_common(polys: &[&MultiPoly]) -> Result<(FieldDesc, usize), ResolventError> {
    let field = polys[0].field().clone();
    let nvars = polys[0].nvars();
    for p in polys {
        if p.field() != &field || p.nvars() != nvars {
            return Err(ResolventError::FieldMismatch);
        }
    }
    Ok((field, nvars))
}

/// `b1 = a1 a2 - 3 a3`, `b2 = a2^3 + 9 a3^2 - 6 a1 a2 a3 + a1^3 a3`,
/// `delta = b1^2 - 4 b2`.
pub fn cubic_invariants(
    a1: &MultiPoly,
    a2: &MultiPoly,
    a3: &MultiPoly,
) -> Result<CubicInvariants, ResolventError> {
    let (field, _) = check_common(&[a1, a2, a3])?;
    let c = |n: i64| field.from_i64(n);
    let b1 = a1.mul(a2).sub(&a3.scale(&c(3)));
    let b2 = a2
        .pow(3)
        .add(&a3.mul(a3).scale(&c(9)))
        .sub(&a1.mul(a2).mul(a3).scale(&c(6)))
        .add(&a1.pow(3).mul(a3));
    let delta = b1.mul(&b1).sub(&b2.scale(&c(4)));
    Ok(CubicInvariants { b1, b2, delta })
}

/// Galois group of a separable irreducible cubic over the fraction field of
/// the coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubicClass {
    /// Discriminant is a square: splitting field of degree 3, cyclic group.
    Cyclic3,
    /// Discriminant is not a square: full symmetric group on three letters.
    Sym3,
    /// Vanishing discriminant; the cubic is not separable.
    NotApplicable,
}

/// Classify the cubic's Galois group by the discriminant square test.
///
/// The caller asserts separability and irreducibility over the fraction
/// field; for reducible inputs the answer is unspecified. Squares are tested
/// in the polynomial ring: a square in the fraction field of a unique
/// factorization ring is a square in the ring times a constant square, and
/// constants are settled by the exact field square root.
pub fn classify_cubic_galois(
    a1: &MultiPoly,
    a2: &MultiPoly,
    a3: &MultiPoly,
) -> Result<CubicClass, ResolventError> {
    let inv = cubic_invariants(a1, a2, a3)?;
    if inv.delta.is_zero() {
        return Ok(CubicClass::NotApplicable);
    }
    Ok(match inv.delta.sqrt(false) {
        Some(_) => CubicClass::Cyclic3,
        None => CubicClass::Sym3,
    })
}

/// Coefficients of the resolvent cubic `t^3 + b1 t^2 + b2 t + b3` of the
/// quartic `x^4 + a1 x^3 + a2 x^2 + a3 x + a4`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResolventCubic {
    pub b1: MultiPoly,
    pub b2: MultiPoly,
    pub b3: MultiPoly,
}

/// `b1 = -a2`, `b2 = a1 a3 - 4 a4`, `b3 = -a4 (a1^2 - 4 a2) - a3^2`.
pub fn resolvent_cubic(
    a1: &MultiPoly,
    a2: &MultiPoly,
    a3: &MultiPoly,
    a4: &MultiPoly,
) -> Result<ResolventCubic, ResolventError> {
    let (field, _) = check_common(&[a1, a2, a3, a4])?;
    let c = |n: i64| field.from_i64(n);
    let b1 = a2.neg();
    let b2 = a1.mul(a3).sub(&a4.scale(&c(4)));
    let b3 = a4
        .mul(&a1.mul(a1).sub(&a2.scale(&c(4))))
        .neg()
        .sub(&a3.mul(a3));
    Ok(ResolventCubic { b1, b2, b3 })
}

/// In characteristic 2 with `a1 = 0` the resolvent degenerates to
/// `t^3 + a2 t^2 + a3^2`, and the shift `t = t' + a2` depresses it to
/// `t'^3 + a2^2 t' + a3^2`; this returns the depressed coefficients
/// `(a2^2, a3^2)`.
pub fn depressed_resolvent_char2(
    a2: &MultiPoly,
    a3: &MultiPoly,
) -> Result<(MultiPoly, MultiPoly), ResolventError> {
    let (field, _) = check_common(&[a2, a3])?;
    if field.characteristic() != 2 {
        return Err(ResolventError::WrongCharacteristic {
            expected: 2,
            got: field.characteristic(),
        });
    }
    Ok((a2.mul(a2), a3.mul(a3)))
}

/// Split `T^3 + F2 T + F3` into three nonzero degree-1 root forms over a
/// small characteristic-2 field, if possible.
///
/// Every root divides `F3` in the polynomial ring (`B (B^2 + F2) = F3`), so
/// first-root candidates come from the exhaustive linear-factor search of
/// `F3` (scaled by every nonzero constant); the deflated quadratic
/// `T^2 + B1 T + (F2 + B1^2)` is then solved by exhaustive enumeration of
/// degree-1 forms, and `B3 = B1 + B2`. The elementary-symmetric-function
/// identities are verified before returning.
pub fn split_cubic_char2(
    f2: &Form,
    f3: &Form,
    search_field: &FieldDesc,
) -> Result<Option<(Form, Form, Form)>, ResolventError> {
    if search_field.characteristic() != 2 {
        return Err(ResolventError::WrongCharacteristic {
            expected: 2,
            got: search_field.characteristic(),
        });
    }
    let order = search_field.order().unwrap();
    if order > LINEAR_SEARCH_ORDER_CAP {
        return Err(ResolventError::FieldTooLarge { order, max: LINEAR_SEARCH_ORDER_CAP });
    }
    let f2 = f2.embed_into(search_field).map_err(PolyError::from)?;
    let f3 = f3.embed_into(search_field).map_err(PolyError::from)?;
    let nvars = f3.nvars();

    let nonzero_scalars: Vec<_> =
        search_field.elements().filter(|c| !c.is_zero()).collect();
    let mut candidates: Vec<Form> = Vec::new();
    if f3.is_zero() {
        // roots of T(T^2 + F2): 0 and the double square root of F2
        if let Some((g, fld)) = sqrt_form(&f2, false) {
            if fld == *search_field {
                candidates.push(g);
            }
        }
    } else {
        for (line, _) in linear_factors(&f3, search_field)? {
            for c in &nonzero_scalars {
                candidates.push(line.scale(c));
            }
        }
    }

    let is_root = |b: &Form| -> bool {
        let val = b
            .poly()
            .pow(3)
            .add(&f2.poly().mul(b.poly()))
            .add(f3.poly());
        val.is_zero()
    };

    let all_linear: Vec<Form> = normalized_linear_forms(search_field, nvars)?
        .into_iter()
        .flat_map(|l| nonzero_scalars.iter().map(move |c| l.scale(c)).collect::<Vec<_>>())
        .collect();

    for b1 in candidates.into_iter().filter(|b| !b.is_zero() && is_root(b)) {
        // deflate to T^2 + B1 T + (F2 + B1^2)
        let c = f2.poly().add(&b1.poly().mul(b1.poly()));
        for b2 in &all_linear {
            let quad = b2
                .poly()
                .mul(b2.poly())
                .add(&b1.poly().mul(b2.poly()))
                .add(&c);
            if !quad.is_zero() {
                continue;
            }
            let b3 = Form::new(b1.poly().add(b2.poly())).expect("sum of linear forms");
            if b3.is_zero() {
                continue;
            }
            // symmetric-function identities
            let e1 = b1.poly().add(b2.poly()).add(b3.poly());
            let e2 = b1
                .poly()
                .mul(b2.poly())
                .add(&b1.poly().mul(b3.poly()))
                .add(&b2.poly().mul(b3.poly()));
            let e3 = b1.poly().mul(b2.poly()).mul(b3.poly());
            if e1.is_zero() && e2 == *f2.poly() && e3 == *f3.poly() {
                return Ok(Some((b1, b2.clone(), b3)));
            }
        }
    }
    Ok(None)
}

/// In characteristic 3, find `B` with `a2 = -B^2` when it exists; the root
/// may live in the quadratic coefficient extension when the flag is set.
pub fn char3_negsquare(
    a2: &MultiPoly,
    allow_quadratic_extension: bool,
) -> Result<Option<MultiPoly>, ResolventError> {
    if a2.field().characteristic() != 3 {
        return Err(ResolventError::WrongCharacteristic {
            expected: 3,
            got: a2.field().characteristic(),
        });
    }
    Ok(a2.neg().sqrt(allow_quadratic_extension).map(|(b, _)| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_form, parse_multipoly, parse_multipoly_with_nvars};

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::prime_field(p).unwrap()
    }

    #[test]
    fn depressed_cubic_discriminant_symbolically() {
        // a1 = 0, a2 = Y0, a3 = Y1 as polynomial indeterminates:
        // delta must equal -4 Y0^3 - 27 Y1^2 identically
        let zero = MultiPoly::zero(&q(), 2);
        let a2 = parse_multipoly_with_nvars("X0", &q(), 2).unwrap();
        let a3 = parse_multipoly_with_nvars("X1", &q(), 2).unwrap();
        let inv = cubic_invariants(&zero, &a2, &a3).unwrap();
        let expected = parse_multipoly_with_nvars("-4*X0^3 - 27*X1^2", &q(), 2).unwrap();
        assert_eq!(inv.delta, expected);
        assert_eq!(inv.b1, a3.scale(&q().from_i64(-3)));
        assert_eq!(
            inv.b2,
            a2.pow(3).add(&a3.mul(&a3).scale(&q().from_i64(9)))
        );
    }

    #[test]
    fn discriminant_numeric_examples() {
        let c = |n: i64| MultiPoly::constant(&q(), 1, q().from_i64(n));
        // x^3 + 1: delta = -27
        let inv = cubic_invariants(&c(0), &c(0), &c(1)).unwrap();
        assert_eq!(inv.delta, c(-27));
        // x^3 - 3x + 1: delta = 81
        let inv = cubic_invariants(&c(0), &c(-3), &c(1)).unwrap();
        assert_eq!(inv.delta, c(81));
    }

    #[test]
    fn classify_cubics_over_q() {
        let c = |n: i64| MultiPoly::constant(&q(), 1, q().from_i64(n));
        // x^3 - 3x + 1: delta = 81 = 9^2
        assert_eq!(
            classify_cubic_galois(&c(0), &c(-3), &c(1)).unwrap(),
            CubicClass::Cyclic3
        );
        // x^3 - x - 1: delta = -23
        assert_eq!(
            classify_cubic_galois(&c(0), &c(-1), &c(-1)).unwrap(),
            CubicClass::Sym3
        );
        // x^3 - 3x + 2 = (x-1)^2 (x+2): delta = 0
        assert_eq!(
            classify_cubic_galois(&c(0), &c(-3), &c(2)).unwrap(),
            CubicClass::NotApplicable
        );
    }

    #[test]
    fn resolvent_cubic_substitutions() {
        let zero = MultiPoly::zero(&q(), 1);
        let a = |n: i64| MultiPoly::constant(&q(), 1, q().from_i64(n));
        // (0, 0, 0, a4) -> (0, -4 a4, 0)
        let r = resolvent_cubic(&zero, &zero, &zero, &a(3)).unwrap();
        assert!(r.b1.is_zero());
        assert_eq!(r.b2, a(-12));
        assert!(r.b3.is_zero());
        // (0, a2, a3, 0) -> (-a2, 0, -a3^2)
        let r = resolvent_cubic(&zero, &a(5), &a(7), &zero).unwrap();
        assert_eq!(r.b1, a(-5));
        assert!(r.b2.is_zero());
        assert_eq!(r.b3, a(-49));
    }

    #[test]
    fn resolvent_cubic_char2_simplification_symbolic() {
        // over GF(2) with a1 = 0 and symbolic a2, a3, a4:
        // (b1, b2, b3) = (a2, 0, a3^2)
        let f2 = gf(2);
        let zero = MultiPoly::zero(&f2, 3);
        let a2 = parse_multipoly_with_nvars("X0", &f2, 3).unwrap();
        let a3 = parse_multipoly_with_nvars("X1", &f2, 3).unwrap();
        let a4 = parse_multipoly_with_nvars("X2", &f2, 3).unwrap();
        let r = resolvent_cubic(&zero, &a2, &a3, &a4).unwrap();
        assert_eq!(r.b1, a2);
        assert!(r.b2.is_zero());
        assert_eq!(r.b3, a3.mul(&a3));
    }

    #[test]
    fn depressed_resolvent_examples() {
        let f2 = gf(2);
        let a2 = parse_multipoly("X1^2 + X1*X2 + X2^2", &f2).unwrap();
        let a3 = parse_multipoly_with_nvars("X1^2*X2 + X1*X2^2", &f2, 3).unwrap();
        let (d2, d3) = depressed_resolvent_char2(&a2, &a3).unwrap();
        assert_eq!(d2, a2.mul(&a2));
        assert_eq!(d3, a3.mul(&a3));

        let zero = MultiPoly::zero(&f2, 3);
        let (d2, d3) = depressed_resolvent_char2(&zero, &a3).unwrap();
        assert!(d2.is_zero());
        assert_eq!(d3, a3.mul(&a3));

        assert_eq!(
            depressed_resolvent_char2(
                &MultiPoly::zero(&gf(3), 2),
                &MultiPoly::zero(&gf(3), 2)
            ),
            Err(ResolventError::WrongCharacteristic { expected: 2, got: 3 })
        );
    }

    #[test]
    fn split_cubic_klein_fixture() {
        let f2f = gf(2);
        let f2 = parse_form("X1^2 + X1*X2 + X2^2", &f2f).unwrap();
        let f3 = parse_form("X1^2*X2 + X1*X2^2", &f2f).unwrap();
        let (b1, b2, b3) = split_cubic_char2(&f2, &f3, &f2f).unwrap().unwrap();
        let mut names: Vec<String> =
            [&b1, &b2, &b3].iter().map(|b| b.to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["X1", "X1 + X2", "X2"]);
    }

    #[test]
    fn split_cubic_zero_f3_has_no_nonzero_triple() {
        let f2f = gf(2);
        let f2 = parse_form("X1^2", &f2f).unwrap();
        let f3 = Form::zero(&f2f, 2, 3);
        assert_eq!(split_cubic_char2(&f2, &f3, &f2f).unwrap(), None);
    }

    #[test]
    fn split_cubic_no_root_in_small_fields() {
        let f2f = gf(2);
        let f4 = crate::field::make_extension_field(2, 2, None).unwrap();
        let f2 = Form::zero(&f2f, 3, 2);
        let f3 = parse_form("X1^2*X2", &f2f).unwrap();
        assert_eq!(split_cubic_char2(&f2, &f3, &f2f).unwrap(), None);
        assert_eq!(split_cubic_char2(&f2, &f3, &f4).unwrap(), None);
    }

    #[test]
    fn split_cubic_verifies_symmetric_functions() {
        // roots {X1, X2, X1+X2} synthesized over GF(4)
        let f4 = crate::field::make_extension_field(2, 2, None).unwrap();
        let b1 = parse_form_in(&f4, "X1");
        let b2 = parse_form_in(&f4, "X2");
        let b3 = Form::new(b1.poly().add(b2.poly())).unwrap();
        let e2 = Form::new(
            b1.poly()
                .mul(b2.poly())
                .add(&b1.poly().mul(b3.poly()))
                .add(&b2.poly().mul(b3.poly())),
        )
        .unwrap();
        let e3 = Form::new(b1.poly().mul(b2.poly()).mul(b3.poly())).unwrap();
        let (c1, c2, c3) = split_cubic_char2(&e2, &e3, &f4).unwrap().unwrap();
        let sum = c1.poly().add(c2.poly()).add(c3.poly());
        assert!(sum.is_zero());
        let prod = c1.poly().mul(c2.poly()).mul(c3.poly());
        assert_eq!(prod, *e3.poly());
    }

    fn parse_form_in(field: &FieldDesc, text: &str) -> Form {
        crate::poly::parse::parse_form_with_nvars(text, field, 3).unwrap()
    }

    #[test]
    fn char3_negsquare_examples() {
        let f3 = gf(3);
        // a2 = -X2^2 -> B = X2
        let a2 = parse_multipoly_with_nvars("-X2^2", &f3, 3).unwrap();
        let b = char3_negsquare(&a2, false).unwrap().unwrap();
        assert_eq!(b, parse_multipoly_with_nvars("X2", &f3, 3).unwrap());
        // 2 = -1 mod 3, so 2 X2^2 = -(X2^2)
        let a2 = parse_multipoly_with_nvars("2*X2^2", &f3, 3).unwrap();
        let b = char3_negsquare(&a2, false).unwrap().unwrap();
        assert_eq!(b, parse_multipoly_with_nvars("X2", &f3, 3).unwrap());
        // X1 X2 is not minus a square
        let a2 = parse_multipoly_with_nvars("X1*X2", &f3, 3).unwrap();
        assert_eq!(char3_negsquare(&a2, true).unwrap(), None);
    }
}
