#![allow(dead_code)]

//! Shared helpers for the integration suites: seeded random generators for
//! fields, forms and coordinate changes, plus independent oracles (Sylvester
//! resultants, brute-force reassembly) that never call the code paths they
//! are checking.

use galois_core::field::{FieldDesc, FieldElement};
use galois_core::poly::{Form, LinearChange, Mono, MultiPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> FieldDesc {
    FieldDesc::Rationals
}

pub fn gf(p: u64) -> FieldDesc {
    FieldDesc::prime_field(p).unwrap()
}

/// Random element; rationals draw small integers so contents stay readable.
pub fn random_element(rng: &mut ChaCha8Rng, field: &FieldDesc) -> FieldElement {
    match field {
        FieldDesc::Rationals => field.from_i64(rng.random_range(-9..=9)),
        FieldDesc::Finite { .. } => {
            let order = field.order().unwrap() as u64;
            let idx = rng.random_range(0..order);
            field
                .elements()
                .nth(idx as usize)
                .expect("index in range")
        }
    }
}

pub fn random_nonzero_element(rng: &mut ChaCha8Rng, field: &FieldDesc) -> FieldElement {
    loop {
        let e = random_element(rng, field);
        if !e.is_zero() {
            return e;
        }
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Mono>) {
        if prefix.len() + 1 == nvars {
            let mut full = prefix.clone();
            full.push(d);
            out.push(Mono(full));
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Random homogeneous form of exact degree `d` (nonzero).
pub fn random_form(rng: &mut ChaCha8Rng, field: &FieldDesc, nvars: usize, d: u32) -> Form {
    let monos = monomials_of_degree(nvars, d);
    loop {
        let mut poly = MultiPoly::zero(field, nvars);
        for m in &monos {
            if rng.random_bool(0.6) {
                poly.add_term(m.clone(), random_element(rng, field));
            }
        }
        if !poly.is_zero() {
            return Form::with_degree(poly, d).unwrap();
        }
    }
}

/// Random form of degree `d` free of `X0` (a decomposition part).
pub fn random_part(rng: &mut ChaCha8Rng, field: &FieldDesc, nvars: usize, d: u32) -> Form {
    let monos: Vec<Mono> = monomials_of_degree(nvars, d)
        .into_iter()
        .filter(|m| m.0[0] == 0)
        .collect();
    let mut poly = MultiPoly::zero(field, nvars);
    for m in &monos {
        if rng.random_bool(0.5) {
            poly.add_term(m.clone(), random_element(rng, field));
        }
    }
    Form::with_degree(poly, d).unwrap()
}

fn random_nonzero_part(rng: &mut ChaCha8Rng, field: &FieldDesc, nvars: usize, d: u32) -> Form {
    loop {
        let f = random_part(rng, field, nvars, d);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random quartic with `F0 = 0` and `F1 != 0` (smooth at the projection
/// center): the inner checker's input family.
pub fn random_inner_quartic(rng: &mut ChaCha8Rng, field: &FieldDesc, nvars: usize) -> Form {
    let parts = [
        Form::zero(field, nvars, 0),
        random_nonzero_part(rng, field, nvars, 1),
        random_part(rng, field, nvars, 2),
        random_part(rng, field, nvars, 3),
        random_nonzero_part(rng, field, nvars, 4),
    ];
    Form::from_x0_parts(&parts).unwrap()
}

/// Random quartic with `F0 = 1`: the outer checker's input family.
pub fn random_outer_quartic(rng: &mut ChaCha8Rng, field: &FieldDesc, nvars: usize) -> Form {
    let parts = [
        Form::with_degree(MultiPoly::constant(field, nvars, field.one()), 0).unwrap(),
        random_part(rng, field, nvars, 1),
        random_part(rng, field, nvars, 2),
        random_part(rng, field, nvars, 3),
        random_nonzero_part(rng, field, nvars, 4),
    ];
    Form::from_x0_parts(&parts).unwrap()
}

/// Random invertible matrix with `a_i1 = 0` below the diagonal entry of the
/// first column and nonzero diagonal (upper-triangular), the disguising
/// change used by the positive-family suite.
pub fn random_upper_triangular(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    size: usize,
) -> LinearChange {
    loop {
        let mut entries = vec![field.zero(); size * size];
        for i in 0..size {
            for j in 0..size {
                if i == j {
                    entries[i * size + j] = random_nonzero_element(rng, field);
                } else if j > i {
                    entries[i * size + j] = random_element(rng, field);
                }
            }
        }
        if let Ok(m) = LinearChange::new(field, size, entries) {
            return m;
        }
    }
}

/// Normal form `X_{n+1} X0^(d-1) + H_d` with random `H_d`.
pub fn inner_normal_form(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    d: u32,
) -> Form {
    let mut parts = vec![Form::zero(field, nvars, 0)];
    let last_var = Form::new(MultiPoly::variable(field, nvars, nvars - 1)).unwrap();
    parts.push(last_var);
    for i in 2..d {
        parts.push(Form::zero(field, nvars, i));
    }
    parts.push(random_nonzero_part(rng, field, nvars, d));
    Form::from_x0_parts(&parts).unwrap()
}

/// Normal form `X0^d + H_d` with random `H_d`.
pub fn outer_normal_form(
    rng: &mut ChaCha8Rng,
    field: &FieldDesc,
    nvars: usize,
    d: u32,
) -> Form {
    let mut parts =
        vec![Form::with_degree(MultiPoly::constant(field, nvars, field.one()), 0).unwrap()];
    for i in 1..d {
        parts.push(Form::zero(field, nvars, i));
    }
    parts.push(random_nonzero_part(rng, field, nvars, d));
    Form::from_x0_parts(&parts).unwrap()
}

/// Determinant of a square matrix of polynomials by Laplace expansion;
/// exact, independent of the library's elimination code.
pub fn poly_det(entries: &[MultiPoly], n: usize) -> MultiPoly {
    assert_eq!(entries.len(), n * n);
    let field = entries[0].field().clone();
    let nvars = entries[0].nvars();
    if n == 1 {
        return entries[0].clone();
    }
    let mut acc = MultiPoly::zero(&field, nvars);
    for col in 0..n {
        if entries[col].is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 1..n {
            for c in 0..n {
                if c != col {
                    minor.push(entries[r * n + c].clone());
                }
            }
        }
        let cof = entries[col].mul(&poly_det(&minor, n - 1));
        if col % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

/// Discriminant of the monic cubic `x^3 + a1 x^2 + a2 x + a3` as
/// `-Res(f, f')` with the resultant computed from the Sylvester matrix.
pub fn discriminant_by_resultant(
    a1: &MultiPoly,
    a2: &MultiPoly,
    a3: &MultiPoly,
) -> MultiPoly {
    let field = a1.field().clone();
    let nvars = a1.nvars();
    let zero = MultiPoly::zero(&field, nvars);
    let one = MultiPoly::constant(&field, nvars, field.one());
    let c = |n: i64| MultiPoly::constant(&field, nvars, field.from_i64(n));
    // f  = x^3 + a1 x^2 + a2 x + a3, descending: [1, a1, a2, a3]
    // f' = 3x^2 + 2 a1 x + a2,      descending: [3, 2 a1, a2]
    let two_a1 = a1.scale(&field.from_i64(2));
    #[rustfmt::skip]
    let sylvester = vec![
        one.clone(), a1.clone(),   a2.clone(),  a3.clone(), zero.clone(),
        zero.clone(), one,         a1.clone(),  a2.clone(), a3.clone(),
        c(3),        two_a1.clone(), a2.clone(), zero.clone(), zero.clone(),
        zero.clone(), c(3),        two_a1.clone(), a2.clone(), zero.clone(),
        zero.clone(), zero,        c(3),        two_a1,     a2.clone(),
    ];
    poly_det(&sylvester, 5).neg()
}

/// Evaluate the quartic `x^4 + a x^2 + b x + c`-style polynomial given by
/// descending coefficients at a field element.
pub fn eval_monic(coeffs_desc: &[FieldElement], x: &FieldElement) -> FieldElement {
    let field = x.field().clone();
    let mut acc = field.zero();
    for c in coeffs_desc {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Constant polynomial helper.
pub fn constant(field: &FieldDesc, nvars: usize, v: &FieldElement) -> MultiPoly {
    MultiPoly::constant(field, nvars, v.clone())
}

/// Rational from an integer pair.
pub fn big_ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
