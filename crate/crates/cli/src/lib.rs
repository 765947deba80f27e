//! Command-line front end: parse polynomial/field/point inputs, dispatch to
//! the checkers, transfer scans, resolvent classification and the oracle,
//! and emit human-readable tables plus a machine-readable JSON report.

pub mod report;

use clap::{Args, Parser, Subcommand};
use galois_core::check::{check_auto, normalize_point};
use galois_core::field::FieldDesc;
use galois_core::oracle::{brute_force_is_galois, enumerate_stabilizer};
use galois_core::poly::parse::parse_multipoly;
use galois_core::poly::{apply_linear_change, clear_denominators, Form, MultiPoly};
use galois_core::resolvent::{
    classify_cubic_galois, cubic_invariants, depressed_resolvent_char2, resolvent_cubic,
    CubicClass,
};
use galois_core::transfer::{primes_upto, transfer_scan, IntegerForm};
use galois_core::ProjectionKind;
use report::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    CheckInner,
    CheckOuter,
    Transfer,
    Oracle,
    Resolvent,
    Content,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckInner => "check-inner",
            Command::CheckOuter => "check-outer",
            Command::Transfer => "transfer",
            Command::Oracle => "oracle",
            Command::Resolvent => "resolvent",
            Command::Content => "content",
        }
    }
}

/// A fully validated unit of work.
#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub field: FieldDesc,
    pub poly_text: String,
    pub point: Vec<i64>,
    pub assume_irreducible: bool,
    pub ext_degree: usize,
    pub kind: Option<ProjectionKind>,
    pub source: u64,
    pub targets: Vec<u64>,
    pub json: bool,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Coefficient field: `Q`, `GF(p)`, `GF(p^k)`, or `GF(p^k; m0,m1,...,1)`
    #[arg(long, default_value = "Q")]
    field: String,
    /// Polynomial text, or `@file` to read it from a file
    #[arg(long)]
    poly: String,
    /// Projection center as comma-separated integer coordinates
    /// (default: 1,0,...,0)
    #[arg(long)]
    point: Option<String>,
    /// Record that irreducibility is asserted by the caller
    #[arg(long)]
    assume_irreducible: bool,
    /// Extension degree for brute-force searches (1 or 2)
    #[arg(long, default_value_t = 2)]
    ext_degree: usize,
    /// Emit the full JSON report on stdout
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TransferArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Projection kind at the source: `inner` or `outer`
    #[arg(long)]
    kind: String,
    /// Source characteristic: 0 (rationals) or a prime
    #[arg(long, default_value_t = 0)]
    source: u64,
    /// Targets: a comma-separated list of characteristics, or `upto:N`
    #[arg(long)]
    targets: String,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also compare the group order against the projection degree for this
    /// kind: `inner` or `outer`
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Parser, Debug)]
#[command(
    name = "galois-point",
    version,
    about = "Decide extendable Galois points of projective hypersurfaces in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Is the point an extendable inner Galois point (point on the
    /// hypersurface)?
    CheckInner(CommonArgs),
    /// Is the point an extendable outer Galois point (point off the
    /// hypersurface)?
    CheckOuter(CommonArgs),
    /// Characteristic-transfer scan of an integer form over a target list
    Transfer(TransferArgs),
    /// Brute-force enumeration of the projection-compatible automorphisms
    Oracle(OracleArgs),
    /// Cubic/quartic resolvent invariants of a polynomial in X0
    Resolvent(CommonArgs),
    /// Content, primitive part, height, and per-part contents of an
    /// integer form
    Content(CommonArgs),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

fn err(msg: impl Into<String>) -> CliError {
    CliError { message: msg.into() }
}

fn parse_kind(text: &str) -> Result<ProjectionKind, CliError> {
    match text {
        "inner" => Ok(ProjectionKind::Inner),
        "outer" => Ok(ProjectionKind::Outer),
        other => Err(err(format!("unknown projection kind `{other}` (inner|outer)"))),
    }
}

fn parse_targets(text: &str) -> Result<Vec<u64>, CliError> {
    if let Some(n) = text.strip_prefix("upto:") {
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| err(format!("bad target bound in `{text}`")))?;
        return Ok(primes_upto(n));
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| err(format!("bad target `{t}` (0 or a prime)")))
        })
        .collect()
}

fn resolve_common(
    command: Command,
    c: &CommonArgs,
    kind: Option<ProjectionKind>,
    source: u64,
    targets: Vec<u64>,
) -> Result<Job, CliError> {
    let field = FieldDesc::parse(&c.field).map_err(|e| err(format!("--field: {e}")))?;
    let poly_text = if let Some(path) = c.poly.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| err(format!("--poly: cannot read {path}: {e}")))?
            .trim()
            .to_string()
    } else {
        c.poly.clone()
    };
    let point = match &c.point {
        None => vec![],
        Some(text) => text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| err(format!("--point: bad coordinate `{t}`")))
            })
            .collect::<Result<_, _>>()?,
    };
    if !(1..=2).contains(&c.ext_degree) {
        return Err(err("--ext-degree must be 1 or 2"));
    }
    Ok(Job {
        command,
        field,
        poly_text,
        point,
        assume_irreducible: c.assume_irreducible,
        ext_degree: c.ext_degree,
        kind,
        source,
        targets,
        json: c.json,
    })
}

/// Parse an argv vector (including the binary name) into a validated job.
pub fn parse_job<I, S>(argv: I) -> Result<Job, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| err(e.to_string()))?;
    match cli.cmd {
        Cmd::CheckInner(c) => resolve_common(Command::CheckInner, &c, None, 0, vec![]),
        Cmd::CheckOuter(c) => resolve_common(Command::CheckOuter, &c, None, 0, vec![]),
        Cmd::Transfer(t) => {
            let kind = parse_kind(&t.kind)?;
            let targets = parse_targets(&t.targets)?;
            resolve_common(Command::Transfer, &t.common, Some(kind), t.source, targets)
        }
        Cmd::Oracle(o) => {
            let kind = o.kind.as_deref().map(parse_kind).transpose()?;
            resolve_common(Command::Oracle, &o.common, kind, 0, vec![])
        }
        Cmd::Resolvent(c) => resolve_common(Command::Resolvent, &c, None, 0, vec![]),
        Cmd::Content(c) => resolve_common(Command::Content, &c, None, 0, vec![]),
    }
}

fn parse_input_form(job: &Job) -> Result<Form, CliError> {
    let poly = parse_multipoly(&job.poly_text, &job.field)
        .map_err(|e| err(format!("--poly: {e}")))?;
    Form::new(poly).map_err(|e| err(format!("--poly: {e}")))
}

/// Move the requested projection center to `[1:0:...:0]` by substituting
/// with the inverse of the normalizing matrix.
fn normalized_form(job: &Job, form: &Form) -> Result<Form, CliError> {
    if job.point.is_empty() {
        return Ok(form.clone());
    }
    if job.point.len() != form.nvars() {
        return Err(err(format!(
            "--point: dimension mismatch: {} coordinates for {} variables",
            job.point.len(),
            form.nvars()
        )));
    }
    let coords: Vec<_> = job.point.iter().map(|&c| job.field.from_i64(c)).collect();
    let m = normalize_point(&coords, &job.field).map_err(|e| err(e.to_string()))?;
    apply_linear_change(&m.inverse(), form).map_err(|e| err(e.to_string()))
}

fn point_strings(job: &Job, nvars: usize) -> Vec<String> {
    if job.point.is_empty() {
        (0..nvars)
            .map(|i| if i == 0 { "1".to_string() } else { "0".to_string() })
            .collect()
    } else {
        job.point.iter().map(|c| c.to_string()).collect()
    }
}

fn base_report(job: &Job, nvars: usize) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        command: job.command.name().to_string(),
        field: job.field.to_string(),
        poly: job.poly_text.clone(),
        point: point_strings(job, nvars),
        exit_code: 0,
        verdict: None,
        transfer: None,
        oracle: None,
        resolvent: None,
        content: None,
        error: None,
    }
}

fn run_check(job: &Job, kind: ProjectionKind) -> Result<Report, CliError> {
    let form = parse_input_form(job)?;
    let form = normalized_form(job, &form)?;
    let verdict = check_auto(&form, kind, job.assume_irreducible, None);
    let mut report = base_report(job, form.nvars());
    report.exit_code = exit_code_for(verdict.status);
    report.verdict = Some(verdict_json(&verdict));
    Ok(report)
}

fn run_transfer(job: &Job) -> Result<Report, CliError> {
    let form = parse_input_form(job)?;
    let form = normalized_form(job, &form)?;
    let integral = clear_denominators(&form).map_err(|e| err(e.to_string()))?;
    let (iform, _) = IntegerForm::new(&integral).map_err(|e| err(e.to_string()))?;
    let kind = job.kind.expect("transfer always carries a kind");
    let scan = transfer_scan(
        &iform,
        kind,
        job.source,
        &job.targets,
        job.assume_irreducible,
        8,
    )
    .map_err(|e| err(e.to_string()))?;
    let mut report = base_report(job, form.nvars());
    report.exit_code = exit_code_for(scan.source_verdict.status);
    report.transfer = Some(transfer_json(&scan));
    Ok(report)
}

fn run_oracle(job: &Job) -> Result<Report, CliError> {
    let form = parse_input_form(job)?;
    let form = normalized_form(job, &form)?;
    let result =
        enumerate_stabilizer(&form, job.ext_degree).map_err(|e| err(e.to_string()))?;
    let is_galois = match job.kind {
        Some(kind) => Some(
            brute_force_is_galois(&form, kind, job.ext_degree)
                .map_err(|e| err(e.to_string()))?,
        ),
        None => None,
    };
    let mut report = base_report(job, form.nvars());
    report.oracle = Some(oracle_json(&result, is_galois));
    Ok(report)
}

fn class_string(class: CubicClass) -> &'static str {
    match class {
        CubicClass::Cyclic3 => "C3",
        CubicClass::Sym3 => "S3",
        CubicClass::NotApplicable => "not-applicable (vanishing discriminant)",
    }
}

fn run_resolvent(job: &Job) -> Result<Report, CliError> {
    let poly = parse_multipoly(&job.poly_text, &job.field)
        .map_err(|e| err(format!("--poly: {e}")))?;
    let nvars = poly.nvars();
    // view as a monic polynomial in X0 with coefficients in the rest
    let deg = poly
        .terms()
        .map(|(m, _)| m.0[0])
        .max()
        .ok_or_else(|| err("--poly: the zero polynomial has no resolvent"))?;
    if deg != 3 && deg != 4 {
        return Err(err(format!("resolvent needs degree 3 or 4 in X0, got {deg}")));
    }
    let mut coeffs = vec![MultiPoly::zero(&job.field, nvars); deg as usize + 1];
    for (m, c) in poly.terms() {
        let mut rest = m.0.clone();
        let e0 = rest[0];
        rest[0] = 0;
        coeffs[(deg - e0) as usize].add_term(galois_core::poly::Mono(rest), c.clone());
    }
    let lead = coeffs[0].clone();
    let lead_const = lead.coeff(&galois_core::poly::Mono(vec![0; nvars]));
    if lead.num_terms() != 1 || lead_const.is_zero() {
        return Err(err("--poly: the X0-leading coefficient must be a nonzero constant"));
    }
    let inv = lead_const.inv();
    for c in coeffs.iter_mut() {
        *c = c.scale(&inv);
    }
    let mut report = base_report(job, nvars);
    if deg == 3 {
        let inv3 = cubic_invariants(&coeffs[1], &coeffs[2], &coeffs[3])
            .map_err(|e| err(e.to_string()))?;
        let class = classify_cubic_galois(&coeffs[1], &coeffs[2], &coeffs[3])
            .map_err(|e| err(e.to_string()))?;
        report.exit_code = if class == CubicClass::NotApplicable { 2 } else { 0 };
        report.resolvent = Some(ResolventJson {
            degree: 3,
            b1: inv3.b1.to_string(),
            b2: inv3.b2.to_string(),
            b3: None,
            delta: Some(inv3.delta.to_string()),
            class: Some(class_string(class).to_string()),
            depressed_char2: None,
        });
    } else {
        let rc = resolvent_cubic(&coeffs[1], &coeffs[2], &coeffs[3], &coeffs[4])
            .map_err(|e| err(e.to_string()))?;
        let depressed = if job.field.characteristic() == 2 && coeffs[1].is_zero() {
            let (d2, d3) = depressed_resolvent_char2(&coeffs[2], &coeffs[3])
                .map_err(|e| err(e.to_string()))?;
            Some((d2.to_string(), d3.to_string()))
        } else {
            None
        };
        report.resolvent = Some(ResolventJson {
            degree: 4,
            b1: rc.b1.to_string(),
            b2: rc.b2.to_string(),
            b3: Some(rc.b3.to_string()),
            delta: None,
            class: None,
            depressed_char2: depressed,
        });
    }
    Ok(report)
}

fn run_content(job: &Job) -> Result<Report, CliError> {
    let form = parse_input_form(job)?;
    let integral = clear_denominators(&form).map_err(|e| err(e.to_string()))?;
    let (iform, content) = IntegerForm::new(&integral).map_err(|e| err(e.to_string()))?;
    let mut report = base_report(job, form.nvars());
    report.content = Some(ContentJson {
        content: content.to_string(),
        primitive: iform.form().to_string(),
        height: iform.height().to_string(),
        part_contents: (0..=iform.degree() as usize)
            .map(|i| iform.part_content(i).to_string())
            .collect(),
    });
    Ok(report)
}

/// Execute a job; the report carries the exit code.
pub fn run_job(job: &Job) -> Result<Report, CliError> {
    match job.command {
        Command::CheckInner => run_check(job, ProjectionKind::Inner),
        Command::CheckOuter => run_check(job, ProjectionKind::Outer),
        Command::Transfer => run_transfer(job),
        Command::Oracle => run_oracle(job),
        Command::Resolvent => run_resolvent(job),
        Command::Content => run_content(job),
    }
}

/// Human-readable table for a report.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: &str| {
        out.push_str(&format!("{k:<22} {v}\n"));
    };
    line("command", &report.command);
    line("field", &report.field);
    line("poly", &report.poly);
    line("point", &report.point.join(","));
    if let Some(v) = &report.verdict {
        line("status", &v.status);
        line("kind", &v.kind);
        if let Some(g) = &v.group {
            line("group", g);
        }
        line("assumed irreducible", &v.assumed_irreducible.to_string());
        if let Some(w) = &v.witness {
            line("witness field", &w.field);
            line("normal form", &w.normal_form);
            if let Some(s) = &w.scaling {
                line("scaling", s);
            }
            if let Some(g) = &w.square_root {
                line("square root G", g);
            }
            if let Some(roots) = &w.cubic_roots {
                line("cubic roots", &roots.join(" | "));
            }
            if let Some(rows) = &w.generator {
                let flat: Vec<String> = rows.iter().map(|r| r.join(",")).collect();
                line("generator", &format!("[{}]", flat.join(" ; ")));
            }
        }
        for note in &v.notes {
            line("note", note);
        }
    }
    if let Some(t) = &report.transfer {
        line("kind", &t.kind);
        line("source", &t.source);
        line("source status", &t.source_verdict.status);
        line("bound", &t.bound);
        line("bound satisfied", &t.bound_satisfied.to_string());
        line("eligibility modulus", &t.eligibility_modulus);
        for target in &t.tested_targets {
            line(
                &format!("target {}", target.q),
                &format!(
                    "eligible={} status={} irreducibility={}",
                    target.predicted_eligible, target.status, target.irreducibility
                ),
            );
        }
    }
    if let Some(o) = &report.oracle {
        line("search field", &o.search_field);
        line("order", &o.order.to_string());
        line("structure", &o.structure);
        let orders: Vec<String> = o
            .element_orders
            .iter()
            .map(|(ord, n)| format!("{n} of order {ord}"))
            .collect();
        line("element orders", &orders.join(", "));
        if let Some(g) = o.is_galois {
            line("galois (oracle)", &g.to_string());
        }
    }
    if let Some(r) = &report.resolvent {
        line("degree", &r.degree.to_string());
        line("b1", &r.b1);
        line("b2", &r.b2);
        if let Some(b3) = &r.b3 {
            line("b3", b3);
        }
        if let Some(d) = &r.delta {
            line("delta", d);
        }
        if let Some(c) = &r.class {
            line("class", c);
        }
        if let Some((d2, d3)) = &r.depressed_char2 {
            line("depressed cubic", &format!("t^3 + ({d2})*t + ({d3})"));
        }
    }
    if let Some(c) = &report.content {
        line("content", &c.content);
        line("primitive part", &c.primitive);
        line("height", &c.height);
        line("part contents", &c.part_contents.join(", "));
    }
    line("exit code", &report.exit_code.to_string());
    out
}
