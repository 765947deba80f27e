//! Independent ground truth: exhaustively enumerate the projection-compatible
//! automorphisms of a plane curve over a small finite field by brute-force
//! search over candidate matrices, and classify the resulting group.
//!
//! After normalizing `P = [1:0:...:0]`, every projection-compatible
//! automorphism is induced by a matrix with a free first row and identity
//! rows below, so the search space is the `(q-1) q^(n+1)` first rows. The
//! candidate space is partitioned into chunks evaluated in parallel; the
//! merged result is deterministic (candidates keep enumeration order).

use crate::batch;
use crate::check::{generator_shape_ok, GroupDesc};
use crate::field::{make_extension_field, FieldDesc, FieldElement, FieldError};
use crate::poly::{Form, LinearChange, MultiPoly, PolyError};
use crate::ProjectionKind;
use thiserror::Error;

/// Cap on the order of the oracle's search field.
pub const ORACLE_ORDER_CAP: u128 = 81;
/// Cap on the number of variables (plane curves: `n = 1`, three variables).
pub const ORACLE_NVARS_CAP: usize = 3;
/// Cap on the extension degree of the search field over the input field.
pub const ORACLE_EXTENSION_CAP: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("too many variables: {nvars} (oracle cap: {ORACLE_NVARS_CAP})")]
    TooManyVariables { nvars: usize },
    #[error("search field has {order} elements (oracle cap: {ORACLE_ORDER_CAP})")]
    FieldTooLarge { order: u128 },
    #[error("extension degree {0} exceeds the oracle cap of {ORACLE_EXTENSION_CAP}")]
    ExtensionTooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One verified stabilizer element: `matrix * F = scalar * F`, with the
/// matrix in the first-row shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizerElement {
    pub matrix: LinearChange,
    pub scalar: FieldElement,
    pub order: u64,
}

/// The full enumerated group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleResult {
    pub elements: Vec<StabilizerElement>,
    pub order: usize,
    pub structure: GroupDesc,
    pub search_field: FieldDesc,
}

impl OracleResult {
    pub fn element_order_multiset(&self) -> Vec<(u64, usize)> {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for e in &self.elements {
            *counts.entry(e.order).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

fn decode_row(
    elements: &[FieldElement],
    nvars: usize,
    mut idx: usize,
) -> Vec<FieldElement> {
    let base = elements.len();
    let mut row = Vec::with_capacity(nvars);
    for _ in 0..nvars {
        row.push(elements[idx % base].clone());
        idx /= base;
    }
    row
}

/// Exact field arithmetic as lookup tables; element = canonical index.
/// Valid because search fields are capped at 81 elements.
struct TableField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl TableField {
    fn build(field: &FieldDesc, elems: &[FieldElement]) -> TableField {
        let q = elems.len();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = a.add(b).canonical_index().unwrap() as u8;
                mul[i * q + j] = a.mul(b).canonical_index().unwrap() as u8;
            }
        }
        debug_assert_eq!(field.order(), Some(q as u128));
        TableField { q, add, mul }
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        (1..self.q as u8).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

/// Dense packed-monomial polynomial over a [`TableField`]: the coefficient
/// of `X0^e0 X1^e1 X2^e2` sits at `e0 + e1*stride + e2*stride^2`.
fn to_packed(poly: &MultiPoly, stride: usize) -> Vec<(usize, u8)> {
    poly.terms()
        .map(|(m, c)| {
            let mut packed = 0usize;
            let mut base = 1usize;
            for &e in &m.0 {
                packed += e as usize * base;
                base *= stride;
            }
            (packed, c.canonical_index().unwrap() as u8)
        })
        .collect()
}

/// Enumerate all matrices `S` (free first row, identity below) over the
/// degree-`extension_degree` extension of the coefficient field with
/// `S * F = t F` for some scalar `t`, together with element orders and the
/// group structure.
pub fn enumerate_stabilizer(
    form: &Form,
    extension_degree: usize,
) -> Result<OracleResult, OracleError> {
    let nvars = form.nvars();
    if nvars > ORACLE_NVARS_CAP {
        return Err(OracleError::TooManyVariables { nvars });
    }
    if extension_degree == 0 || extension_degree > ORACLE_EXTENSION_CAP {
        return Err(OracleError::ExtensionTooLarge(extension_degree));
    }
    if form.is_zero() {
        return Err(OracleError::Precondition("the zero form has no hypersurface".into()));
    }
    let base = form.field().clone();
    let (p, k) = match &base {
        FieldDesc::Finite { p, k, .. } => (*p, *k),
        FieldDesc::Rationals => {
            return Err(OracleError::Precondition(
                "the oracle enumerates over finite fields only".into(),
            ))
        }
    };
    let search_field = if extension_degree == 1 {
        base.clone()
    } else {
        make_extension_field(p, k * extension_degree, None)?
    };
    let order = search_field.order().unwrap();
    if order > ORACLE_ORDER_CAP {
        return Err(OracleError::FieldTooLarge { order });
    }
    let f = form.embed_into(&search_field)?;
    let d = f.degree() as usize;
    let parts = f.decompose_by_x0();

    let elements: Vec<FieldElement> = search_field.elements().collect();
    let q = elements.len();
    let total = q.pow(nvars as u32);

    // Hot path: lookup-table field arithmetic on dense packed monomials.
    // Since rows below the first are identity, S*F = sum F_i * L^(d-i)
    // where L is the first-row linear form. Hits are re-verified in exact
    // arithmetic afterwards.
    let table = TableField::build(&search_field, &elements);
    let stride = d + 1;
    let dense_len = stride * stride * stride;
    let mut f_dense = vec![0u8; dense_len];
    for (packed, c) in to_packed(f.poly(), stride) {
        f_dense[packed] = c;
    }
    let lead_packed = to_packed(f.poly(), stride)
        .into_iter()
        .map(|(m, _)| m)
        .max_by_key(|&m| {
            // graded-lex on (total degree, e0, e1): reconstruct exponents
            let e0 = m % stride;
            let e1 = (m / stride) % stride;
            let e2 = m / (stride * stride);
            (e0 + e1 + e2, e0, e1)
        })
        .unwrap();
    let lead_inv = table.inv(f_dense[lead_packed]);
    let parts_packed: Vec<Vec<(usize, u8)>> =
        parts.iter().map(|p| to_packed(p.poly(), stride)).collect();

    let sparse_mul = |a: &[(usize, u8)], b: &[(usize, u8)]| -> Vec<(usize, u8)> {
        let mut out: Vec<(usize, u8)> = Vec::with_capacity(a.len() * b.len());
        for &(am, ac) in a {
            for &(bm, bc) in b {
                let m = am + bm;
                let c = table.mul(ac, bc);
                if c == 0 {
                    continue;
                }
                match out.iter_mut().find(|(om, _)| *om == m) {
                    Some((_, oc)) => *oc = table.add(*oc, c),
                    None => out.push((m, c)),
                }
            }
        }
        out.retain(|&(_, c)| c != 0);
        out
    };

    let hits: Vec<usize> = batch::map_chunks(total, 4096, |range| {
        let mut found = Vec::new();
        let mut moved = vec![0u8; dense_len];
        let mut touched: Vec<usize> = Vec::new();
        for idx in range {
            if idx % q == 0 {
                continue; // s11 = 0
            }
            let mut line: Vec<(usize, u8)> = Vec::with_capacity(3);
            let mut rest = idx;
            let mut base = 1usize;
            for _ in 0..nvars {
                let digit = (rest % q) as u8;
                if digit != 0 {
                    line.push((base, digit));
                }
                rest /= q;
                base *= stride;
            }
            let mut powers: Vec<Vec<(usize, u8)>> = Vec::with_capacity(d + 1);
            powers.push(vec![(0, 1)]);
            for j in 1..=d {
                let next = sparse_mul(&powers[j - 1], &line);
                powers.push(next);
            }
            for &m in &touched {
                moved[m] = 0;
            }
            touched.clear();
            for (i, part) in parts_packed.iter().enumerate() {
                for &(am, ac) in part {
                    for &(bm, bc) in &powers[d - i] {
                        let m = am + bm;
                        moved[m] = table.add(moved[m], table.mul(ac, bc));
                        touched.push(m);
                    }
                }
            }
            let t = table.mul(moved[lead_packed], lead_inv);
            if t == 0 {
                continue;
            }
            if (0..dense_len).all(|m| moved[m] == table.mul(t, f_dense[m])) {
                found.push(idx);
            }
        }
        found
    });

    let identity = LinearChange::identity(&search_field, nvars);
    let mut stab_elements = Vec::with_capacity(hits.len());
    for idx in hits {
        let row = decode_row(&elements, nvars, idx);
        let matrix = LinearChange::with_first_row(&search_field, row).expect("s11 != 0");
        // exact re-verification of the table-arithmetic hit
        let scalar = crate::check::stabilizer_scalar(&matrix, &f)
            .expect("table hit must re-verify exactly");
        let mut pw = matrix.clone();
        let mut ord = 1u64;
        while pw != identity {
            pw = pw.mul_mat(&matrix);
            ord += 1;
            assert!(ord <= 1_000_000, "element order runaway");
        }
        stab_elements.push(StabilizerElement { matrix, scalar, order: ord });
    }

    let n = stab_elements.len();
    assert!(n >= 1, "the identity is always a stabilizer");
    // closure and inverse-closure self-check (subgroup property)
    if n <= 512 {
        let key = |m: &LinearChange| -> Vec<u128> {
            m.row(0).iter().map(|c| c.canonical_index().unwrap()).collect()
        };
        let keys: std::collections::HashSet<Vec<u128>> =
            stab_elements.iter().map(|e| key(&e.matrix)).collect();
        for a in &stab_elements {
            assert!(
                keys.contains(&key(&a.matrix.inverse())),
                "stabilizer not closed under inverses"
            );
            for b in &stab_elements {
                let prod = a.matrix.mul_mat(&b.matrix);
                debug_assert!(generator_shape_ok(&prod) || prod.entry(0, 0).is_zero() == false);
                assert!(
                    keys.contains(&key(&prod)),
                    "stabilizer not closed under products"
                );
            }
        }
    }

    let structure = classify_group(&stab_elements, p);
    Ok(OracleResult {
        order: n,
        elements: stab_elements,
        structure,
        search_field,
    })
}

fn classify_group(elements: &[StabilizerElement], p: u64) -> GroupDesc {
    let n = elements.len() as u64;
    if n == 1 {
        return GroupDesc::Trivial;
    }
    if elements.iter().any(|e| e.order == n) {
        return GroupDesc::Cyclic(n);
    }
    if n == 4 && elements.iter().all(|e| e.order <= 2) {
        return GroupDesc::KleinFour;
    }
    // try the p^e * l decomposition with l | p^e - 1
    let mut l = n;
    let mut e = 0u32;
    while l % p == 0 {
        l /= p;
        e += 1;
    }
    if e > 0 && l >= 1 && (p.pow(e) - 1) % l == 0 {
        return GroupDesc::ElemAbelianSemidirect { p, e, l };
    }
    let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
    for el in elements {
        *counts.entry(el.order).or_default() += 1;
    }
    GroupDesc::Other { order: n, element_orders: counts.into_iter().collect() }
}

/// Ground-truth Galois test: the enumerated group order equals the
/// projection degree (`d - 1` inner, `d` outer). The enumeration runs over
/// the degree-`e` extension, an under-approximation of the algebraic
/// closure: a `false` at the cap means "not Galois at this extension
/// degree".
pub fn brute_force_is_galois(
    form: &Form,
    kind: ProjectionKind,
    extension_degree: usize,
) -> Result<bool, OracleError> {
    let parts = form.decompose_by_x0();
    match kind {
        ProjectionKind::Inner => {
            if !parts[0].is_zero() || parts[1].is_zero() {
                return Err(OracleError::Precondition(
                    "inner projection needs F0 = 0 and F1 != 0".into(),
                ));
            }
        }
        ProjectionKind::Outer => {
            if parts[0].is_zero() {
                return Err(OracleError::Precondition(
                    "outer projection needs F0 != 0".into(),
                ));
            }
        }
    }
    let result = enumerate_stabilizer(form, extension_degree)?;
    let expected = match kind {
        ProjectionKind::Inner => form.degree() as usize - 1,
        ProjectionKind::Outer => form.degree() as usize,
    };
    Ok(result.order == expected)
}
