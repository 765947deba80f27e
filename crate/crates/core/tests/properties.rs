//! Randomized algebraic invariants for the field and polynomial layers.

mod common;

use common::*;
use galois_core::field::{make_extension_field, sqrt_in_field, FieldDesc};
use galois_core::poly::{
    apply_linear_change, exact_divide_form, linear_factors, normalized_linear_forms,
    sqrt_form, Form, LinearChange,
};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn rational(field: &FieldDesc, n: i64, d: i64) -> galois_core::FieldElement {
    field.from_rational(big_ratio(n, d.max(1)))
}

proptest! {
    #[test]
    fn rational_field_axioms(
        an in -50i64..50, ad in 1i64..20,
        bn in -50i64..50, bd in 1i64..20,
        cn in -50i64..50, cd in 1i64..20,
    ) {
        let q = FieldDesc::Rationals;
        let a = rational(&q, an, ad);
        let b = rational(&q, bn, bd);
        let c = rational(&q, cn, cd);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn finite_field_axioms(ai in 0u64..49, bi in 0u64..49, ci in 0u64..49, pick in 0usize..3) {
        let field = match pick {
            0 => gf(7),
            1 => make_extension_field(2, 4, None).unwrap(),
            _ => make_extension_field(7, 2, None).unwrap(),
        };
        let order = field.order().unwrap() as u64;
        let nth = |i: u64| field.elements().nth((i % order) as usize).unwrap();
        let (a, b, c) = (nth(ai), nth(bi), nth(ci));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn sqrt_is_exact_when_present(n in -100i64..100, d in 1i64..30) {
        let q = FieldDesc::Rationals;
        let a = rational(&q, n, d);
        let sq = a.mul(&a);
        let r = sqrt_in_field(&sq).expect("squares have roots");
        prop_assert_eq!(r.mul(&r), sq);
    }
}

#[test]
fn decompose_reassemble_roundtrip_500_per_field() {
    let fields = [
        q(),
        gf(2),
        gf(3),
        gf(5),
        make_extension_field(3, 2, None).unwrap(),
    ];
    for field in &fields {
        let mut r = rng(0xdec0);
        for _ in 0..500 {
            let d = r.random_range(4..=6);
            let form = random_form(&mut r, field, 3, d);
            let parts = form.decompose_by_x0();
            assert_eq!(parts.len() as u32, d + 1);
            for (i, part) in parts.iter().enumerate() {
                assert!(part.is_zero() || part.poly().homogeneous_degree() == Some(i as u32));
                assert!(part.poly().terms().all(|(m, _)| m.0[0] == 0));
            }
            assert_eq!(Form::from_x0_parts(&parts).unwrap(), form);
        }
    }
}

#[test]
fn content_is_multiplicative() {
    let field = q();
    let mut r = rng(0x6a55);
    for _ in 0..200 {
        let df = r.random_range(1..=3);
        let f = random_form(&mut r, &field, 3, df);
        let dg = r.random_range(1..=3);
        let g = random_form(&mut r, &field, 3, dg);
        let prod = f.poly().mul(g.poly());
        let cf = f.poly().content().unwrap();
        let cg = g.poly().content().unwrap();
        assert_eq!(prod.content().unwrap(), cf * cg);
    }
}

#[test]
fn linear_change_composition_and_degree() {
    for field in [q(), gf(7)] {
        let mut r = rng(0xc0de);
        let id = LinearChange::identity(&field, 3);
        for _ in 0..100 {
            let a = random_upper_triangular(&mut r, &field, 3);
            let b = random_upper_triangular(&mut r, &field, 3);
            let form = random_form(&mut r, &field, 3, 4);
            let lhs = apply_linear_change(&a.mul_mat(&b), &form).unwrap();
            let rhs =
                apply_linear_change(&b, &apply_linear_change(&a, &form).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs.degree(), form.degree());
            assert_eq!(apply_linear_change(&id, &form).unwrap(), form);
        }
    }
}

#[test]
fn exact_division_inverts_multiplication() {
    for field in [q(), gf(5)] {
        let mut r = rng(0xd1f);
        for _ in 0..200 {
            let dn = r.random_range(1..=3);
            let n = random_form(&mut r, &field, 3, dn);
            let dd = r.random_range(1..=2);
            let d = random_form(&mut r, &field, 3, dd);
            let prod = Form::new(n.poly().mul(d.poly())).unwrap();
            let quot = exact_divide_form(&prod, &d).unwrap().expect("constructed product");
            assert_eq!(quot, n);
        }
    }
}

#[test]
fn sqrt_of_square_returns_canonical_root() {
    for field in [q(), gf(5), gf(7), make_extension_field(2, 2, None).unwrap()] {
        let mut r = rng(0x5c47);
        for _ in 0..200 {
            let dg = r.random_range(1..=2);
            let g = random_form(&mut r, &field, 3, dg);
            let sq = Form::new(g.poly().mul(g.poly())).unwrap();
            let (root, fld) = sqrt_form(&sq, false).expect("squares have roots");
            assert_eq!(fld, field);
            assert!(root == g || *root.poly() == g.poly().neg(), "{g} vs {root}");
            let back = root.poly().mul(root.poly());
            assert_eq!(back, *sq.poly());
        }
    }
}

#[test]
fn linear_factor_search_is_complete() {
    let field = gf(3);
    let mut r = rng(0x11f);
    let all_lines = normalized_linear_forms(&field, 3).unwrap();
    for _ in 0..50 {
        let df = r.random_range(2..=4);
        let form = random_form(&mut r, &field, 3, df);
        let found = linear_factors(&form, &field).unwrap();
        for line in &all_lines {
            let divides = exact_divide_form(&form, line).unwrap().is_some();
            let listed = found.iter().any(|(l, _)| l == line);
            assert_eq!(divides, listed, "{form} vs {line}");
        }
        for (line, mult) in &found {
            // multiplicity is exact: L^mult divides, L^(mult+1) does not
            let mut rest = form.clone();
            for _ in 0..*mult {
                rest = exact_divide_form(&rest, line).unwrap().expect("multiplicity");
            }
            if rest.degree() >= 1 {
                assert!(exact_divide_form(&rest, line).unwrap().is_none());
            }
        }
    }
}

#[test]
fn primitive_normalization_has_unit_content() {
    let mut r = rng(0xabcd);
    for _ in 0..100 {
        let raw = random_form(&mut r, &q(), 3, 4);
        let factor = r.random_range(2..=9);
        let scaled = raw.scale(&q().from_i64(factor));
        let (form, content) = galois_core::transfer::IntegerForm::new(&scaled).unwrap();
        assert_eq!(form.form().poly().content().unwrap(), BigUint::one());
        let original = scaled.poly().content().unwrap();
        assert_eq!(content, original);
    }
}
