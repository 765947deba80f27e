//! Decision procedures for extendable inner/outer Galois points at the
//! normalized point `P = [1:0:...:0]`: the general-degree substitution
//! criterion and the quartic characteristic-2/3 special cases, with witness
//! extraction (normalizing substitution, square-root form, cubic root
//! triple, group generator) and Galois-group reporting.

use crate::field::{
    embed, primitive_mth_root, quadratic_extension, FieldDesc, FieldElement,
};
use crate::poly::{
    apply_linear_change, exact_divide_form, sqrt_form, Form, LinearChange, MultiPoly,
    PolyError, LINEAR_SEARCH_ORDER_CAP,
};
use crate::resolvent;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("point has no nonzero coordinate")]
    ZeroPoint,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Whether the projection center lies on the hypersurface (inner) or off
/// it (outer).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ProjectionKind {
    Inner,
    Outer,
}

impl fmt::Display for ProjectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionKind::Inner => write!(f, "inner"),
            ProjectionKind::Outer => write!(f, "outer"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GaloisStatus {
    ExtendableGalois,
    NotGalois,
    PreconditionFailed,
    ExtensionRequired,
    Unknown,
}

impl fmt::Display for GaloisStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GaloisStatus::ExtendableGalois => "extendable Galois",
            GaloisStatus::NotGalois => "not Galois",
            GaloisStatus::PreconditionFailed => "precondition failed",
            GaloisStatus::ExtensionRequired => "extension required",
            GaloisStatus::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Isomorphism type of the reported group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupDesc {
    Trivial,
    Cyclic(u64),
    KleinFour,
    /// `(Z/p)^e` semidirect `Z/l` with `l` prime to `p`.
    ElemAbelianSemidirect { p: u64, e: u32, l: u64 },
    /// Unrecognized: order plus the multiset of element orders.
    Other { order: u64, element_orders: Vec<(u64, usize)> },
}

impl GroupDesc {
    /// Collapse the standard coincidences so that equivalent descriptions
    /// compare equal: `C1 = trivial`, `(Z/p)^1 = Cp`, `(Z/2)^2 = Klein four`.
    pub fn canonical(&self) -> GroupDesc {
        match self {
            GroupDesc::Cyclic(1) => GroupDesc::Trivial,
            GroupDesc::ElemAbelianSemidirect { p, e: 1, l: 1 } => GroupDesc::Cyclic(*p),
            GroupDesc::ElemAbelianSemidirect { p: 2, e: 2, l: 1 } => GroupDesc::KleinFour,
            other => other.clone(),
        }
    }

    pub fn is_equivalent(&self, other: &GroupDesc) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDesc::Trivial => Some(1),
            GroupDesc::Cyclic(m) => Some(*m),
            GroupDesc::KleinFour => Some(4),
            GroupDesc::ElemAbelianSemidirect { p, e, l } => Some(p.pow(*e) * l),
            GroupDesc::Other { order, .. } => Some(*order),
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Trivial => write!(f, "1"),
            GroupDesc::Cyclic(m) => write!(f, "C{m}"),
            GroupDesc::KleinFour => write!(f, "C2 x C2"),
            GroupDesc::ElemAbelianSemidirect { p, e, l } => {
                if *l == 1 {
                    write!(f, "(Z/{p})^{e}")
                } else {
                    write!(f, "(Z/{p})^{e} x| Z/{l}")
                }
            }
            GroupDesc::Other { order, element_orders } => {
                let parts: Vec<String> = element_orders
                    .iter()
                    .map(|(o, n)| format!("{n} of order {o}"))
                    .collect();
                write!(f, "order {order} ({})", parts.join(", "))
            }
        }
    }
}

/// Certificate data for an `ExtendableGalois` verdict. All polynomial data
/// lives in `field`, which is the input field or a quadratic extension of it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessData {
    pub field: FieldDesc,
    /// Matrix `W` with `W * (scaled input) = normal_form`.
    pub substitution: LinearChange,
    pub normal_form: Form,
    /// Scalar `s` such that the substitution applies to `s * F` (outer
    /// checks normalize the `X0^d` coefficient to 1); `None` means no
    /// scaling was applied.
    pub scaling: Option<FieldElement>,
    /// Characteristic-3 inner quartics: the form `G` with `F3 = -G^2 F1`.
    pub square_root: Option<Form>,
    /// Characteristic-2 outer quartics: the root triple of
    /// `T^3 + F2 T + F3`.
    pub cubic_roots: Option<Vec<Form>>,
    /// A matrix generating the projection-compatible automorphism group;
    /// absent when the needed root of unity lives outside the field.
    pub generator: Option<LinearChange>,
    /// Scalar `t` with `generator * F = t F`.
    pub generator_scalar: Option<FieldElement>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaloisVerdict {
    pub status: GaloisStatus,
    pub kind: ProjectionKind,
    pub witness: Option<WitnessData>,
    pub group: Option<GroupDesc>,
    pub assumed_irreducible: bool,
    pub notes: Vec<String>,
}

impl GaloisVerdict {
    fn bare(
        status: GaloisStatus,
        kind: ProjectionKind,
        assumed_irreducible: bool,
        note: impl Into<String>,
    ) -> GaloisVerdict {
        GaloisVerdict {
            status,
            kind,
            witness: None,
            group: None,
            assumed_irreducible,
            notes: vec![note.into()],
        }
    }
}

/// An invertible change of coordinates `M` with `M(P) = [1:0:...:0]`.
///
/// Deterministic construction: permute the first nonzero coordinate into
/// slot 0, scale it to 1, then clear the remaining coordinates. To check a
/// form `F` at `P`, substitute with `M.inverse()` and test the transformed
/// form at `[1:0:...:0]`.
pub fn normalize_point(
    point: &[FieldElement],
    field: &FieldDesc,
) -> Result<LinearChange, CheckError> {
    let n = point.len();
    let j = point
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(CheckError::ZeroPoint)?;
    // swap 0 <-> j
    let mut swap = LinearChange::identity(field, n);
    let mut entries: Vec<FieldElement> = (0..n * n)
        .map(|i| swap.entry(i / n, i % n).clone())
        .collect();
    if j != 0 {
        entries[0] = field.zero();
        entries[j] = field.one();
        entries[j * n] = field.one();
        entries[j * n + j] = field.zero();
    }
    swap = LinearChange::new(field, n, entries).expect("permutation is invertible");
    let moved = swap.map_point(point);
    // scale slot 0 to 1
    let mut entries: Vec<FieldElement> = LinearChange::identity(field, n)
        .row(0)
        .to_vec();
    entries[0] = moved[0].inv();
    let mut full = vec![field.zero(); n * n];
    full[..n].clone_from_slice(&entries);
    for i in 1..n {
        full[i * n + i] = field.one();
    }
    let scale = LinearChange::new(field, n, full).expect("scaling is invertible");
    let scaled = scale.map_point(&moved);
    // clear slots 1..n
    let mut full = vec![field.zero(); n * n];
    full[0] = field.one();
    for i in 1..n {
        full[i * n + i] = field.one();
        full[i * n] = scaled[i].neg();
    }
    let clear = LinearChange::new(field, n, full).expect("shear is invertible");
    let m = clear.mul_mat(&scale).mul_mat(&swap);
    debug_assert!({
        let img = m.map_point(point);
        img[0].is_one() && img[1..].iter().all(|c| c.is_zero())
    });
    Ok(m)
}

fn linear_coeffs(form: &Form) -> Vec<FieldElement> {
    let n = form.nvars();
    (0..n)
        .map(|c| {
            let mut e = vec![0u32; n];
            e[c] = 1;
            form.poly().coeff(&crate::poly::Mono(e))
        })
        .collect()
}

/// Matrix `C = diag(1, B)` with `C * F1 = X_{n+1}` for a nonzero linear
/// form `F1` in `X1..X_{n+1}`.
fn normalizer_to_last_variable(f1: &Form) -> LinearChange {
    let field = f1.field().clone();
    let n = f1.nvars();
    let last = n - 1;
    let a = linear_coeffs(f1);
    debug_assert!(a[0].is_zero(), "F1 must not involve X0");
    let j = (1..n)
        .rev()
        .find(|&c| !a[c].is_zero())
        .expect("F1 is nonzero");
    // swap X_j <-> X_last, then divide the last row suitably
    let mut swap_entries = vec![field.zero(); n * n];
    for i in 0..n {
        swap_entries[i * n + i] = field.one();
    }
    if j != last {
        swap_entries[j * n + j] = field.zero();
        swap_entries[last * n + last] = field.zero();
        swap_entries[j * n + last] = field.one();
        swap_entries[last * n + j] = field.one();
    }
    let swap = LinearChange::new(&field, n, swap_entries).unwrap();
    // coefficients after the swap: a'_c = a_{swap(c)}
    let mut ap = a.clone();
    ap.swap(j, last);
    let inv = ap[last].inv();
    let mut entries = vec![field.zero(); n * n];
    for i in 0..n {
        entries[i * n + i] = field.one();
    }
    for c in 1..last {
        entries[last * n + c] = ap[c].mul(&inv).neg();
    }
    entries[last * n + last] = inv;
    let b0 = LinearChange::new(&field, n, entries).unwrap();
    // C = swap . b0 so that C*F1 = F1(C X) = X_{n+1}
    let c = swap.mul_mat(&b0);
    debug_assert_eq!(
        apply_linear_change(&c, f1).unwrap(),
        Form::new(MultiPoly::variable(&field, n, last)).unwrap()
    );
    c
}

/// Translation `X0 <- X0 + L` as a matrix: first row `(1, l_1, ..., l_{n+1})`,
/// identity below.
fn x0_translation(field: &FieldDesc, coeffs: &[FieldElement]) -> LinearChange {
    let mut row = vec![field.one()];
    row.extend(coeffs[1..].iter().cloned());
    LinearChange::with_first_row(field, row).expect("translation is invertible")
}

/// Conjugate the diagonal generator `diag(e, 1, .., 1)` back through the
/// normalizing substitution `w`; the result has identity rows below the
/// first and fixes the original form.
fn conjugated_generator(w: &LinearChange, e: &FieldElement) -> LinearChange {
    let field = w.field().clone();
    let n = w.size();
    let mut diag = LinearChange::identity(&field, n);
    let mut entries: Vec<FieldElement> = (0..n * n)
        .map(|i| diag.entry(i / n, i % n).clone())
        .collect();
    entries[0] = e.clone();
    diag = LinearChange::new(&field, n, entries).unwrap();
    let v = w.mul_mat(&diag).mul_mat(&w.inverse());
    debug_assert!(generator_shape_ok(&v));
    v
}

/// Rows below the first must be identity rows (the projection-compatible
/// shape).
pub fn generator_shape_ok(m: &LinearChange) -> bool {
    let n = m.size();
    (1..n).all(|i| {
        (0..n).all(|j| {
            let e = m.entry(i, j);
            if i == j {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    })
}

/// Scalar `t` with `m * F = t F`, when it exists.
pub fn stabilizer_scalar(m: &LinearChange, form: &Form) -> Option<FieldElement> {
    let moved = apply_linear_change(m, form).ok()?;
    let (lm, lc) = form.poly().leading_term()?;
    let t = moved.poly().coeff(lm).div(lc);
    if t.is_zero() {
        return None;
    }
    (moved == form.scale(&t)).then_some(t)
}

struct Decomposed {
    parts: Vec<Form>,
    d: u32,
}

fn precheck(
    form: &Form,
    kind: ProjectionKind,
    assumed: bool,
) -> Result<Decomposed, Box<GaloisVerdict>> {
    if form.is_zero() {
        return Err(Box::new(GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assumed,
            "the zero form does not define a hypersurface",
        )));
    }
    let d = form.degree();
    if d < 4 {
        return Err(Box::new(GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assumed,
            format!("degree {d} < 4 is out of scope"),
        )));
    }
    Ok(Decomposed { parts: form.decompose_by_x0(), d })
}

/// General-degree extendable inner Galois test at `P = [1:0:...:0]`,
/// valid when the characteristic does not divide `d - 1`.
///
/// Procedure: require `F0 = 0` and `F1 != 0`; divide `G2 = F2 / F1` (failure
/// is a rejection); substitute `X0 <- X0 - G2/(d-1)`; accept exactly when
/// the middle parts `H2..H_{d-1}` of the transformed form all vanish. On
/// acceptance the witness composes this translation with a change mapping
/// `F1` to `X_{n+1}`, reaching the normal form `X_{n+1} X0^(d-1) + H_d`.
pub fn check_inner_general(form: &Form, assume_irreducible: bool) -> GaloisVerdict {
    let kind = ProjectionKind::Inner;
    let dec = match precheck(form, kind, assume_irreducible) {
        Ok(d) => d,
        Err(v) => return *v,
    };
    let (parts, d) = (dec.parts, dec.d);
    let field = form.field().clone();
    let ch = field.characteristic();
    if ch != 0 && (d as u64 - 1) % ch == 0 {
        return GaloisVerdict::bare(
            GaloisStatus::Unknown,
            kind,
            assume_irreducible,
            format!("characteristic {ch} divides d-1 = {}; no general criterion applies", d - 1),
        );
    }
    if !parts[0].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "P does not lie on the hypersurface (F0 != 0)",
        );
    }
    let f1 = parts[1].clone();
    if f1.is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "the hypersurface is singular at P (F1 = 0)",
        );
    }
    let g2 = if parts[2].is_zero() {
        Form::zero(&field, form.nvars(), 1)
    } else {
        match exact_divide_form(&parts[2], &f1).expect("F1 nonzero") {
            Some(q) => q,
            None => {
                return GaloisVerdict::bare(
                    GaloisStatus::NotGalois,
                    kind,
                    assume_irreducible,
                    "F2 is not divisible by F1",
                )
            }
        }
    };
    let dm1_inv = field.from_i64(d as i64 - 1).inv();
    let shift: Vec<FieldElement> = linear_coeffs(&g2)
        .iter()
        .map(|c| c.mul(&dm1_inv).neg())
        .collect();
    let t = x0_translation(&field, &shift);
    let translated = apply_linear_change(&t, form).expect("sizes match");
    let h = translated.decompose_by_x0();
    debug_assert!(h[0].is_zero() && h[1] == f1 && h[2].is_zero());
    for (i, part) in h.iter().enumerate().take(d as usize).skip(3) {
        if !part.is_zero() {
            return GaloisVerdict::bare(
                GaloisStatus::NotGalois,
                kind,
                assume_irreducible,
                format!("middle coefficient H{i} survives the normalizing substitution"),
            );
        }
    }
    // normal form: send F1 to X_{n+1}
    let c = normalizer_to_last_variable(&f1);
    let substitution = t.mul_mat(&c);
    let normal_form = apply_linear_change(&c, &translated).expect("sizes match");
    let mut notes = vec![format!(
        "normal form reached by X0 <- X0 - ({g2})/{} followed by mapping F1 = {f1} to X{}",
        d - 1,
        form.nvars() - 1
    )];
    let (generator, generator_scalar) = match primitive_mth_root(d as u64 - 1, &field) {
        Some(e) => {
            let v = conjugated_generator(&substitution, &e);
            let t = stabilizer_scalar(&v, form).expect("generator fixes the form");
            (Some(v), Some(t))
        }
        None => {
            notes.push(format!(
                "group generator needs a primitive {}-th root of unity, which lives in an extension of {field}",
                d - 1
            ));
            (None, None)
        }
    };
    GaloisVerdict {
        status: GaloisStatus::ExtendableGalois,
        kind,
        witness: Some(WitnessData {
            field: field.clone(),
            substitution,
            normal_form,
            scaling: None,
            square_root: None,
            cubic_roots: None,
            generator,
            generator_scalar,
        }),
        group: Some(GroupDesc::Cyclic(d as u64 - 1)),
        assumed_irreducible: assume_irreducible,
        notes,
    }
}

/// General-degree extendable outer Galois test at `P = [1:0:...:0]`,
/// valid when the characteristic does not divide `d`.
///
/// Requires `F0` to be a nonzero constant; the form is scaled so `F0 = 1`
/// (the factor is recorded), then `X0 <- X0 - F1/d` must kill every middle
/// part `H1..H_{d-1}`, reaching the normal form `X0^d + H_d`.
pub fn check_outer_general(form: &Form, assume_irreducible: bool) -> GaloisVerdict {
    let kind = ProjectionKind::Outer;
    let dec = match precheck(form, kind, assume_irreducible) {
        Ok(d) => d,
        Err(v) => return *v,
    };
    let (parts, d) = (dec.parts, dec.d);
    let field = form.field().clone();
    let ch = field.characteristic();
    if ch != 0 && d as u64 % ch == 0 {
        return GaloisVerdict::bare(
            GaloisStatus::Unknown,
            kind,
            assume_irreducible,
            format!("characteristic {ch} divides d = {d}; no general criterion applies"),
        );
    }
    if parts[0].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "P lies on the hypersurface (F0 = 0)",
        );
    }
    let c0 = parts[0].poly().coeff(&crate::poly::Mono(vec![0; form.nvars()]));
    let s = c0.inv();
    let scaled = form.scale(&s);
    let sparts = scaled.decompose_by_x0();
    let d_inv = field.from_i64(d as i64).inv();
    let shift: Vec<FieldElement> = linear_coeffs(&sparts[1])
        .iter()
        .map(|c| c.mul(&d_inv).neg())
        .collect();
    let t = x0_translation(&field, &shift);
    let translated = apply_linear_change(&t, &scaled).expect("sizes match");
    let h = translated.decompose_by_x0();
    debug_assert!(h[1].is_zero());
    for (i, part) in h.iter().enumerate().take(d as usize).skip(1) {
        if !part.is_zero() {
            return GaloisVerdict::bare(
                GaloisStatus::NotGalois,
                kind,
                assume_irreducible,
                format!("middle coefficient H{i} survives the normalizing substitution"),
            );
        }
    }
    let mut notes = vec![format!(
        "form scaled by {s} so that F0 = 1, then X0 <- X0 - (F1)/{d}"
    )];
    let (generator, generator_scalar) = match primitive_mth_root(d as u64, &field) {
        Some(e) => {
            let v = conjugated_generator(&t, &e);
            let tsc = stabilizer_scalar(&v, form).expect("generator fixes the form");
            (Some(v), Some(tsc))
        }
        None => {
            notes.push(format!(
                "group generator needs a primitive {d}-th root of unity, which lives in an extension of {field}"
            ));
            (None, None)
        }
    };
    GaloisVerdict {
        status: GaloisStatus::ExtendableGalois,
        kind,
        witness: Some(WitnessData {
            field: field.clone(),
            substitution: t,
            normal_form: translated,
            scaling: Some(s),
            square_root: None,
            cubic_roots: None,
            generator,
            generator_scalar,
        }),
        group: Some(GroupDesc::Cyclic(d as u64)),
        assumed_irreducible: assume_irreducible,
        notes,
    }
}

/// Characteristic-3 inner quartic test: accept exactly when `F2 = 0` and
/// `-F3 / F1` is the square of a nonzero form `G` (a quadratic coefficient
/// extension is permitted; the verdict then carries that field). The
/// witness generator is the translation `X0 <- X0 + G`, which fixes the
/// form exactly and has order 3.
pub fn check_inner_quartic_char3(form: &Form, assume_irreducible: bool) -> GaloisVerdict {
    let kind = ProjectionKind::Inner;
    let field = form.field().clone();
    if field.characteristic() != 3 || form.degree() != 4 {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "this test applies to quartics in characteristic 3",
        );
    }
    let dec = match precheck(form, kind, assume_irreducible) {
        Ok(d) => d,
        Err(v) => return *v,
    };
    let parts = dec.parts;
    if !parts[0].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "P does not lie on the hypersurface (F0 != 0)",
        );
    }
    let f1 = parts[1].clone();
    if f1.is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "the hypersurface is singular at P (F1 = 0)",
        );
    }
    if !parts[2].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::NotGalois,
            kind,
            assume_irreducible,
            "F2 != 0",
        );
    }
    if parts[3].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::NotGalois,
            kind,
            assume_irreducible,
            "F3 = 0 forces G = 0, but a nonzero G is required",
        );
    }
    let neg_f3 = Form::with_degree(parts[3].poly().neg(), 3).unwrap();
    let q = match exact_divide_form(&neg_f3, &f1).expect("F1 nonzero") {
        Some(q) => q,
        None => {
            return GaloisVerdict::bare(
                GaloisStatus::NotGalois,
                kind,
                assume_irreducible,
                "-F3 is not divisible by F1",
            )
        }
    };
    let (g, wfield) = match sqrt_form(&q, false) {
        Some(pair) => pair,
        None => {
            if field.is_finite() && quadratic_extension(&field).is_err() {
                // the coefficient square root may live just beyond the
                // constructible extensions
                return GaloisVerdict::bare(
                    GaloisStatus::ExtensionRequired,
                    kind,
                    assume_irreducible,
                    "-F3/F1 may become a square only over a quadratic extension beyond the degree cap",
                );
            }
            match sqrt_form(&q, true) {
                Some(pair) => pair,
                None => {
                    return GaloisVerdict::bare(
                        GaloisStatus::NotGalois,
                        kind,
                        assume_irreducible,
                        "-F3/F1 is not a square (quadratic coefficient extension included)",
                    )
                }
            }
        }
    };
    let form_w = form.embed_into(&wfield).expect("embedding exists");
    let f1_w = f1.embed_into(&wfield).expect("embedding exists");
    let gen = x0_translation(&wfield, &linear_coeffs_of_poly(g.poly(), form.nvars()));
    debug_assert_eq!(apply_linear_change(&gen, &form_w).unwrap(), form_w);
    let c = normalizer_to_last_variable(&f1_w);
    let normal_form = apply_linear_change(&c, &form_w).expect("sizes match");
    let mut notes = vec![
        "for smooth-at-P quartics in characteristic 3 with F2 = 0, Galois and extendable Galois coincide".to_string(),
    ];
    if wfield != field {
        notes.push(format!("witness data lives in the quadratic extension {wfield}"));
    }
    GaloisVerdict {
        status: GaloisStatus::ExtendableGalois,
        kind,
        witness: Some(WitnessData {
            field: wfield,
            substitution: c,
            normal_form,
            scaling: None,
            square_root: Some(g),
            cubic_roots: None,
            generator: Some(gen.clone()),
            generator_scalar: stabilizer_scalar(&gen, &form_w),
        }),
        group: Some(GroupDesc::Cyclic(3)),
        assumed_irreducible: assume_irreducible,
        notes,
    }
}

fn linear_coeffs_of_poly(p: &MultiPoly, nvars: usize) -> Vec<FieldElement> {
    (0..nvars)
        .map(|c| {
            let mut e = vec![0u32; nvars];
            e[c] = 1;
            p.coeff(&crate::poly::Mono(e))
        })
        .collect()
}

/// Characteristic-2 outer quartic test: reject when `F1 != 0`; otherwise
/// accept exactly when `T^3 + F2 T + F3` splits into three nonzero linear
/// root forms over `search_field` or its quadratic extension. When the
/// bounded search is exhausted without a decision the verdict is
/// `ExtensionRequired`, never `NotGalois`.
pub fn check_outer_quartic_char2(
    form: &Form,
    assume_irreducible: bool,
    search_field: &FieldDesc,
) -> GaloisVerdict {
    let kind = ProjectionKind::Outer;
    let field = form.field().clone();
    if field.characteristic() != 2 || form.degree() != 4 {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "this test applies to quartics in characteristic 2",
        );
    }
    let dec = match precheck(form, kind, assume_irreducible) {
        Ok(d) => d,
        Err(v) => return *v,
    };
    let parts = dec.parts;
    if parts[0].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::PreconditionFailed,
            kind,
            assume_irreducible,
            "P lies on the hypersurface (F0 = 0)",
        );
    }
    let c0 = parts[0].poly().coeff(&crate::poly::Mono(vec![0; form.nvars()]));
    let s = c0.inv();
    let scaled = form.scale(&s);
    let sparts = scaled.decompose_by_x0();
    if !sparts[1].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::NotGalois,
            kind,
            assume_irreducible,
            "F1 != 0",
        );
    }
    if sparts[3].is_zero() {
        return GaloisVerdict::bare(
            GaloisStatus::NotGalois,
            kind,
            assume_irreducible,
            "F3 = 0: the cubic T^3 + F2 T has the root 0, so no triple of nonzero roots exists in any extension",
        );
    }
    let mut tried = vec![search_field.clone()];
    if let Ok(ext) = quadratic_extension(search_field) {
        if ext.order().unwrap() <= LINEAR_SEARCH_ORDER_CAP {
            tried.push(ext);
        }
    }
    for wfield in tried {
        let split = resolvent::split_cubic_char2(&sparts[2], &sparts[3], &wfield);
        let triple = match split {
            Ok(t) => t,
            Err(e) => {
                return GaloisVerdict::bare(
                    GaloisStatus::PreconditionFailed,
                    kind,
                    assume_irreducible,
                    format!("cubic splitter rejected the input: {e}"),
                )
            }
        };
        if let Some((b1, b2, b3)) = triple {
            let form_w = form.embed_into(&wfield).expect("embedding exists");
            let scaled_w = scaled.embed_into(&wfield).expect("embedding exists");
            let gens: Vec<LinearChange> = [&b1, &b2, &b3]
                .iter()
                .map(|b| {
                    x0_translation(&wfield, &linear_coeffs_of_poly(b.poly(), form.nvars()))
                })
                .collect();
            debug_assert!(gens
                .iter()
                .all(|g| apply_linear_change(g, &form_w).unwrap() == form_w));
            let mut notes = vec![
                "for outer quartics in characteristic 2 with F1 = 0 and a split cubic, Galois with Klein-four group and extendable Galois coincide".to_string(),
                format!("form scaled by {s} so that F0 = 1"),
            ];
            if wfield != *search_field {
                notes.push(format!("roots found over the quadratic extension {wfield}"));
            }
            let scalar = stabilizer_scalar(&gens[0], &form_w);
            return GaloisVerdict {
                status: GaloisStatus::ExtendableGalois,
                kind,
                witness: Some(WitnessData {
                    field: wfield.clone(),
                    substitution: LinearChange::identity(&wfield, form.nvars()),
                    normal_form: scaled_w,
                    scaling: Some(s),
                    square_root: None,
                    cubic_roots: Some(vec![b1, b2, b3]),
                    generator: Some(gens[0].clone()),
                    generator_scalar: scalar,
                }),
                group: Some(GroupDesc::KleinFour),
                assumed_irreducible: assume_irreducible,
                notes,
            };
        }
    }
    GaloisVerdict::bare(
        GaloisStatus::ExtensionRequired,
        kind,
        assume_irreducible,
        format!(
            "no nonzero root triple over {search_field} or its quadratic extension; roots might exist in a larger field"
        ),
    )
}

/// Closed-form inner quartic criterion for characteristic != 3:
/// `3 F1 F3 - F2^2 = 0`. Agrees with [`check_inner_general`] on quartics.
pub fn quartic_inner_identity(form: &Form) -> Result<bool, CheckError> {
    if form.field().characteristic() == 3 {
        return Err(CheckError::Precondition(
            "identity requires characteristic != 3".to_string(),
        ));
    }
    if form.degree() != 4 || form.is_zero() {
        return Err(CheckError::Precondition("a nonzero quartic is required".to_string()));
    }
    let parts = form.decompose_by_x0();
    if !parts[0].is_zero() || parts[1].is_zero() {
        return Err(CheckError::Precondition(
            "F0 = 0 and F1 != 0 are required".to_string(),
        ));
    }
    let three = form.field().from_i64(3);
    let lhs = parts[1]
        .poly()
        .mul(parts[3].poly())
        .scale(&three)
        .sub(&parts[2].poly().mul(parts[2].poly()));
    Ok(lhs.is_zero())
}

/// Closed-form outer quartic criterion for characteristic != 2:
/// `F2 = (3/8) F1^2` and `F3 = c F1^3` with the proportionality constant
/// `c = 1/16` pinned by the symbolic expansion of `X0 <- X0 - F1/4` (the
/// printed constant `9/32` fails the binomial case `(X0+L)^4 + F4`, which
/// is manifestly accepted). Agrees with [`check_outer_general`] on quartics.
pub fn quartic_outer_identity(form: &Form) -> Result<bool, CheckError> {
    if form.field().characteristic() == 2 {
        return Err(CheckError::Precondition(
            "identity requires characteristic != 2".to_string(),
        ));
    }
    if form.degree() != 4 || form.is_zero() {
        return Err(CheckError::Precondition("a nonzero quartic is required".to_string()));
    }
    let parts = form.decompose_by_x0();
    if parts[0].is_zero() {
        return Err(CheckError::Precondition("F0 != 0 is required".to_string()));
    }
    let field = form.field().clone();
    let c0 = parts[0].poly().coeff(&crate::poly::Mono(vec![0; form.nvars()]));
    let s = c0.inv();
    let f1 = parts[1].poly().scale(&s);
    let f2 = parts[2].poly().scale(&s);
    let f3 = parts[3].poly().scale(&s);
    let c_38 = field.from_i64(3).div(&field.from_i64(8));
    let c_116 = field.from_i64(16).inv();
    let cond_a = f2.sub(&f1.mul(&f1).scale(&c_38)).is_zero();
    let cond_b = f3.sub(&f1.pow(3).scale(&c_116)).is_zero();
    Ok(cond_a && cond_b)
}

/// The group structure a Galois point's group must have: cyclic of order
/// `m = d-1` (inner) or `m = d` (outer) when the characteristic is prime to
/// `m`, and `(Z/p)^e x| Z/l` with `m = p^e l` otherwise. Reporting only.
pub fn galois_group_label(d: u32, ch: u64, kind: ProjectionKind) -> GroupDesc {
    let m = match kind {
        ProjectionKind::Inner => d as u64 - 1,
        ProjectionKind::Outer => d as u64,
    };
    if ch == 0 || m % ch != 0 {
        return GroupDesc::Cyclic(m);
    }
    let mut l = m;
    let mut e = 0u32;
    while l % ch == 0 {
        l /= ch;
        e += 1;
    }
    GroupDesc::ElemAbelianSemidirect { p: ch, e, l }
}

/// Dispatch to the applicable checker for the field's characteristic.
/// `search_field` feeds the characteristic-2 outer quartic root search and
/// defaults to the form's own field.
pub fn check_auto(
    form: &Form,
    kind: ProjectionKind,
    assume_irreducible: bool,
    search_field: Option<&FieldDesc>,
) -> GaloisVerdict {
    let ch = form.field().characteristic();
    let d = form.degree();
    match kind {
        ProjectionKind::Inner => {
            if ch == 3 && d == 4 {
                check_inner_quartic_char3(form, assume_irreducible)
            } else if ch == 0 || d == 0 || (d as u64 - 1) % ch != 0 {
                check_inner_general(form, assume_irreducible)
            } else {
                GaloisVerdict::bare(
                    GaloisStatus::Unknown,
                    kind,
                    assume_irreducible,
                    format!(
                        "characteristic {ch} divides d-1 = {}; only the quartic characteristic-3 case is decidable",
                        d.max(1) - 1
                    ),
                )
            }
        }
        ProjectionKind::Outer => {
            if ch == 2 && d == 4 {
                let sf = search_field.cloned().unwrap_or_else(|| form.field().clone());
                check_outer_quartic_char2(form, assume_irreducible, &sf)
            } else if ch == 0 || d as u64 % ch != 0 {
                check_outer_general(form, assume_irreducible)
            } else {
                GaloisVerdict::bare(
                    GaloisStatus::Unknown,
                    kind,
                    assume_irreducible,
                    format!(
                        "characteristic {ch} divides d = {d}; only the quartic characteristic-2 case is decidable"
                    ),
                )
            }
        }
    }
}

/// Re-verify a positive verdict's certificate against the input form.
/// Returns a description of the first violation, if any.
pub fn verify_witness(form: &Form, verdict: &GaloisVerdict) -> Result<(), String> {
    if verdict.status != GaloisStatus::ExtendableGalois {
        return Ok(());
    }
    let w = verdict
        .witness
        .as_ref()
        .ok_or("positive verdict without witness data")?;
    let form_w = form
        .embed_into(&w.field)
        .map_err(|e| format!("witness field does not contain the input: {e}"))?;
    let scaled = match &w.scaling {
        Some(s) => {
            let s_w = embed(s, &w.field).map_err(|e| e.to_string())?;
            form_w.scale(&s_w)
        }
        None => form_w.clone(),
    };
    let reached = apply_linear_change(&w.substitution, &scaled)
        .map_err(|e| format!("substitution does not apply: {e}"))?;
    if reached != w.normal_form {
        return Err("substitution does not reach the stored normal form".to_string());
    }
    if let Some(gen) = &w.generator {
        if !generator_shape_ok(gen) {
            return Err("generator rows below the first are not identity rows".to_string());
        }
        let t = stabilizer_scalar(gen, &form_w)
            .ok_or("generator does not stabilize the form")?;
        if let Some(stored) = &w.generator_scalar {
            if *stored != t {
                return Err("stored generator scalar is wrong".to_string());
            }
        }
    }
    if let Some(g) = &w.square_root {
        let parts = form_w.decompose_by_x0();
        let lhs = g.poly().mul(g.poly()).mul(parts[1].poly()).neg();
        if lhs != *parts[3].poly() {
            return Err("square-root witness does not satisfy F3 = -G^2 F1".to_string());
        }
        if g.is_zero() {
            return Err("square-root witness is zero".to_string());
        }
    }
    if let Some(roots) = &w.cubic_roots {
        let parts = scaled.decompose_by_x0();
        for b in roots {
            if b.is_zero() {
                return Err("cubic root witness is zero".to_string());
            }
            let val = b
                .poly()
                .pow(3)
                .add(&parts[2].poly().mul(b.poly()))
                .add(parts[3].poly());
            if !val.is_zero() {
                return Err("cubic root witness does not solve T^3 + F2 T + F3".to_string());
            }
            let tr = x0_translation(&w.field, &linear_coeffs_of_poly(b.poly(), form.nvars()));
            if apply_linear_change(&tr, &form_w).map_err(|e| e.to_string())? != form_w {
                return Err("cubic root translation does not fix the form".to_string());
            }
        }
    }
    Ok(())
}
