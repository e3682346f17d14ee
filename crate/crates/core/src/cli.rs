//! Command-line front end.
//!
//! Every command loads a spec file, runs one computation and produces a
//! [`Report`]. With `--json` the report is printed as a single JSON
//! document whose layout is described by `docs/report.schema.json`.
//! Exit status is 0 for a definitive verdict, 2 for an inconclusive
//! search and 1 for any error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::{load_spec, parse_inner_product, SignedMulti, Spec, SpecError};
use crate::coxeter::{ek, phi, primitive_derivation, shift_target, shift_verify, CoxeterData, CoxeterError};
use crate::expr::ParseError;
use crate::logmod::{
    find_basis, is_member, omega_module_member, pairing, saito_check, BasisCertificate, FreeBasis, LogVectorField,
    MembershipReport, PairingError, SaitoFailure,
};
use crate::poly::{fmt_rational, LinForm};

#[derive(Debug, Parser)]
#[command(name = "genlog", version, about = "Exact computations with generalized logarithmic modules")]
pub struct Cli {
    /// Spec file describing the arrangement.
    #[arg(long, global = true, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Inner product overriding the spec file: a path or an inline matrix.
    #[arg(long = "inner-product", global = true, value_name = "PATH-or-inline")]
    pub inner_product: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test membership of a field.
    Member {
        #[arg(allow_hyphen_values = true)]
        field: String,
    },
    /// Certify a basis by the determinant criterion.
    Saito {
        #[arg(required = true, allow_hyphen_values = true)]
        fields: Vec<String>,
    },
    /// Search for a homogeneous basis degree by degree.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        max_degree: i64,
    },
    /// Pair a field with a form-side field.
    Pairing {
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(allow_hyphen_values = true)]
        omega: String,
    },
    /// Reflection-group computations; needs a `[coxeter]` section.
    Coxeter {
        #[command(subcommand)]
        action: CoxeterCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoxeterCommand {
    /// The primitive derivation.
    Primitive,
    /// The invariant field E_k.
    Ek { k: u32 },
    /// Images of fields under the shift map.
    Phi {
        k: u32,
        #[arg(required = true, allow_hyphen_values = true)]
        fields: Vec<String>,
    },
    /// Certify that the shift map sends a basis to a basis.
    ShiftVerify {
        k: u32,
        #[arg(required = true, allow_hyphen_values = true)]
        fields: Vec<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("invalid {what}: {error}")]
    Parse { what: String, error: ParseError },
    #[error("expected {expected} field expressions, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("field {index} has {found} components, expected {expected}")]
    Components { index: usize, expected: usize, found: usize },
    #[error("the spec file has no [coxeter] section")]
    NoCoxeter,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

impl CliError {
    fn offset(&self) -> Option<usize> {
        match self {
            CliError::Parse { error, .. } => Some(error.offset),
            CliError::Spec(SpecError::Expression { source, .. }) => Some(source.offset),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InputDigest {
    pub role: String,
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub verdict: String,
    pub payload: Value,
    pub timing: Timing,
}

/// Verdict and payload before the bookkeeping fields are attached.
struct Outcome {
    verdict: &'static str,
    payload: Value,
    code: i32,
}

impl Outcome {
    fn definitive(verdict: &'static str, payload: Value) -> Self {
        Outcome { verdict, payload, code: 0 }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

struct Context {
    spec: Spec,
    inputs: Vec<InputDigest>,
}

impl Context {
    fn load(cli: &Cli) -> Result<Self, CliError> {
        let path = cli
            .spec
            .as_ref()
            .ok_or_else(|| CliError::Usage("--spec PATH is required".into()))?;
        let text = read(path)?;
        let mut inputs = vec![InputDigest {
            role: "spec".into(),
            source: path.display().to_string(),
            sha256: digest(text.as_bytes()),
        }];
        let mut spec = load_spec(&text)?;
        if let Some(ip) = &cli.inner_product {
            let candidate = Path::new(ip);
            let (source, body) = if candidate.is_file() {
                (ip.clone(), read(candidate)?)
            } else {
                ("inline".to_string(), ip.clone())
            };
            inputs.push(InputDigest {
                role: "inner-product".into(),
                source,
                sha256: digest(body.as_bytes()),
            });
            spec.inner_product = parse_inner_product(&body, spec.arrangement.dim())?;
        }
        Ok(Context { spec, inputs })
    }

    fn vars(&self) -> &[String] {
        self.spec.arrangement.vars()
    }

    fn field(&self, src: &str, what: String) -> Result<LogVectorField, CliError> {
        let forms = self.spec.arrangement.forms();
        let t = LogVectorField::parse(src, self.vars(), &forms).map_err(|error| CliError::Parse { what, error })?;
        Ok(t)
    }

    fn fields(&self, srcs: &[String]) -> Result<Vec<LogVectorField>, CliError> {
        srcs.iter()
            .enumerate()
            .map(|(i, s)| self.field(s, format!("field {}", i + 1)))
            .collect()
    }

    fn show(&self, t: &LogVectorField) -> String {
        t.display(self.vars()).to_string()
    }

    fn form(&self, f: &LinForm) -> String {
        f.display(self.vars()).to_string()
    }

    fn coxeter(&self) -> Result<CoxeterData, CliError> {
        CoxeterData::from_spec(&self.spec)?.ok_or(CliError::NoCoxeter)
    }
}

fn violations(ctx: &Context, report: &MembershipReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "hyperplane": ctx.form(&v.hyperplane),
                    "condition": v.kind.as_str(),
                    "witness": v.witness.display(ctx.vars()).to_string(),
                })
            })
            .collect(),
    )
}

fn free_basis(ctx: &Context, fb: &FreeBasis) -> Value {
    json!({
        "basis": fb.basis.iter().map(|t| ctx.show(t)).collect::<Vec<_>>(),
        "exponents": fb.exponents,
        "scalar": fmt_rational(&fb.scalar),
        "determinant": fb.determinant.display(ctx.vars()).to_string(),
    })
}

fn saito_failure(ctx: &Context, e: &SaitoFailure) -> Value {
    let mut out = json!({ "reason": e.to_string() });
    if let SaitoFailure::NotMember { index, report } = e {
        out["field"] = json!(index + 1);
        out["violations"] = violations(ctx, report);
    }
    out
}

fn arrangement(ctx: &Context, a: &SignedMulti) -> Value {
    Value::Array(
        a.hyperplanes()
            .iter()
            .map(|h| json!({ "form": ctx.form(&h.form), "multiplicity": h.multiplicity }))
            .collect(),
    )
}

/// `Q+` as a product of its linear factors.
fn factored(ctx: &Context, a: &SignedMulti) -> String {
    let parts: Vec<String> = a
        .plus()
        .map(|(f, k)| {
            let s = ctx.form(f);
            let base = if f.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() > 1 {
                format!("({})", s)
            } else {
                s
            };
            if k > 1 {
                format!("{}^{}", base, k)
            } else {
                base
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn member(ctx: &Context, src: &str) -> Result<Outcome, CliError> {
    let t = ctx.field(src, "field".into())?;
    check_components(ctx, 0, &t)?;
    let report = is_member(&t, &ctx.spec.arrangement, &ctx.spec.inner_product);
    let verdict = if report.is_member() { "member" } else { "non-member" };
    Ok(Outcome::definitive(
        verdict,
        json!({ "field": ctx.show(&t), "violations": violations(ctx, &report) }),
    ))
}

fn check_components(ctx: &Context, index: usize, t: &LogVectorField) -> Result<(), CliError> {
    let expected = ctx.spec.arrangement.dim();
    if t.nvars() != expected {
        return Err(CliError::Components {
            index: index + 1,
            expected,
            found: t.nvars(),
        });
    }
    Ok(())
}

fn expect_arity(ctx: &Context, srcs: &[String]) -> Result<Vec<LogVectorField>, CliError> {
    let expected = ctx.spec.arrangement.dim();
    if srcs.len() != expected {
        return Err(CliError::Arity {
            expected,
            found: srcs.len(),
        });
    }
    ctx.fields(srcs)
}

fn saito(ctx: &Context, srcs: &[String]) -> Result<Outcome, CliError> {
    let thetas = expect_arity(ctx, srcs)?;
    Ok(match saito_check(&thetas, &ctx.spec.arrangement, &ctx.spec.inner_product) {
        Ok(fb) => Outcome::definitive("free", free_basis(ctx, &fb)),
        Err(e) => Outcome::definitive("not-basis", saito_failure(ctx, &e)),
    })
}

fn basis(ctx: &Context, max_degree: i64) -> Result<Outcome, CliError> {
    let cert = find_basis(&ctx.spec.arrangement, &ctx.spec.inner_product, max_degree);
    let shown = |gens: &[LogVectorField]| gens.iter().map(|t| ctx.show(t)).collect::<Vec<_>>();
    Ok(match &cert {
        BasisCertificate::Free(fb) => {
            let mut p = free_basis(ctx, fb);
            p["max_degree"] = json!(max_degree);
            Outcome::definitive("free", p)
        }
        BasisCertificate::NotFree(ev) => Outcome::definitive(
            "not-free",
            json!({
                "max_degree": max_degree,
                "degree": ev.degree,
                "generator_degrees": ev.generator_degrees,
                "generators": shown(&ev.generators),
            }),
        ),
        BasisCertificate::Inconclusive { generators, .. } => Outcome {
            verdict: "inconclusive",
            payload: json!({ "max_degree": max_degree, "generators": shown(generators) }),
            code: 2,
        },
    })
}

fn pairing_cmd(ctx: &Context, theta: &str, omega: &str) -> Result<Outcome, CliError> {
    let t = ctx.field(theta, "field 1".into())?;
    let o = ctx.field(omega, "field 2".into())?;
    check_components(ctx, 0, &t)?;
    check_components(ctx, 1, &o)?;
    let (a, g) = (&ctx.spec.arrangement, &ctx.spec.inner_product);
    let mut payload = json!({
        "theta": ctx.show(&t),
        "omega": ctx.show(&o),
        "theta_member": is_member(&t, a, g).is_member(),
        "omega_member": omega_module_member(&o, a, g).is_member(),
    });
    let verdict = match pairing(&t, &o, g) {
        Ok(p) => {
            payload["value"] = json!(p.display(ctx.vars()).to_string());
            "polynomial"
        }
        Err(PairingError::NotPolynomial { pole, value }) => {
            payload["value"] = json!(value.display(ctx.vars()).to_string());
            payload["pole"] = json!(ctx.form(&pole));
            "not-polynomial"
        }
    };
    Ok(Outcome::definitive(verdict, payload))
}

fn coxeter(ctx: &Context, action: &CoxeterCommand) -> Result<Outcome, CliError> {
    let c = ctx.coxeter()?;
    let vars = ctx.vars();
    match action {
        CoxeterCommand::Primitive => {
            let d = primitive_derivation(&c)?;
            Ok(Outcome::definitive(
                "computed",
                json!({
                    "field": ctx.show(&d),
                    "invariants": c.invariants.iter().map(|p| p.display(vars).to_string()).collect::<Vec<_>>(),
                    "values": c.invariants.iter().map(|p| d.apply(p).display(vars).to_string()).collect::<Vec<_>>(),
                    "coxeter_number": c.h,
                    "group_order": c.group.len(),
                }),
            ))
        }
        CoxeterCommand::Ek { k } => {
            let e = ek(&c, *k)?;
            Ok(Outcome::definitive(
                "computed",
                json!({ "k": k, "field": ctx.show(&e.field), "degree": e.field.degree() }),
            ))
        }
        CoxeterCommand::Phi { k, fields } => {
            let target = shift_target(&c, &ctx.spec.arrangement, *k)?;
            let e = ek(&c, *k)?;
            let thetas = ctx.fields(fields)?;
            let mut images = Vec::new();
            for (i, t) in thetas.iter().enumerate() {
                check_components(ctx, i, t)?;
                let img = phi(t, &e);
                images.push(json!({
                    "input": ctx.show(t),
                    "image": ctx.show(&img),
                    "degree": img.degree(),
                    "member": is_member(&img, &target, &c.g).is_member(),
                }));
            }
            Ok(Outcome::definitive(
                "computed",
                json!({ "k": k, "ek": ctx.show(&e.field), "target": arrangement(ctx, &target), "images": images }),
            ))
        }
        CoxeterCommand::ShiftVerify { k, fields } => {
            let thetas = expect_arity(ctx, fields)?;
            let cert = shift_verify(&c, &ctx.spec.arrangement, *k, &thetas)?;
            Ok(Outcome::definitive(
                "free",
                json!({
                    "k": k,
                    "ek": ctx.show(&cert.ek.field),
                    "source": free_basis(ctx, &cert.source),
                    "target": arrangement(ctx, &cert.target),
                    "target_polynomial": factored(ctx, &cert.target),
                    "image": free_basis(ctx, &cert.image),
                }),
            ))
        }
    }
}

fn execute(cli: &Cli, ctx: &Context) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Member { field } => member(ctx, field),
        Command::Saito { fields } => saito(ctx, fields),
        Command::Basis { max_degree } => basis(ctx, *max_degree),
        Command::Pairing { theta, omega } => pairing_cmd(ctx, theta, omega),
        Command::Coxeter { action } => coxeter(ctx, action),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, x) in map {
                render(out, k, x, indent + 1);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array() && !x.is_string()) => {
            let shown: Vec<String> = items.iter().map(render_scalar).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", shown.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for x in items {
                match x {
                    Value::Object(map) => {
                        let mut first = true;
                        for (k, y) in map {
                            let lead = if first { "- " } else { "  " };
                            first = false;
                            let mut sub = String::new();
                            render(&mut sub, k, y, 0);
                            for (i, line) in sub.lines().enumerate() {
                                let l = if i == 0 { lead } else { "  " };
                                let _ = writeln!(out, "{pad}  {l}{line}");
                            }
                        }
                    }
                    other => {
                        let _ = writeln!(out, "{pad}  - {}", render_scalar(other));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", render_scalar(other));
        }
    }
}

fn human(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", report.verdict);
    for input in &report.inputs {
        let _ = writeln!(out, "{}: {} (sha256 {})", input.role, input.source, &input.sha256[..12]);
    }
    if let Value::Object(map) = &report.payload {
        for (k, v) in map {
            render(&mut out, k, v, 0);
        }
    }
    out
}

fn finish(report: Report, code: i32, json_mode: bool, stderr: String) -> Output {
    let stdout = if json_mode {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else if report.verdict == "error" {
        String::new()
    } else {
        human(&report)
    };
    Output { code, stdout, stderr }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let start = Instant::now();
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let json_mode = echo.iter().any(|a| a == "--json");
    let elapsed = |start: Instant| Timing {
        elapsed_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
    };
    let error_report = |inputs: Vec<InputDigest>, message: String, offset: Option<usize>| {
        let mut payload = json!({ "error": message });
        if let Some(o) = offset {
            payload["offset"] = json!(o);
        }
        Report {
            command: echo.clone(),
            inputs,
            verdict: "error".into(),
            payload,
            timing: elapsed(start),
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return finish(error_report(Vec::new(), first, None), 1, json_mode, message);
        }
    };
    let ctx = match Context::load(&cli) {
        Ok(ctx) => ctx,
        Err(e) => {
            let msg = e.to_string();
            return finish(error_report(Vec::new(), msg.clone(), e.offset()), 1, cli.json, format!("error: {msg}\n"));
        }
    };
    match execute(&cli, &ctx) {
        Ok(outcome) => {
            let report = Report {
                command: echo.clone(),
                inputs: ctx.inputs.clone(),
                verdict: outcome.verdict.into(),
                payload: outcome.payload,
                timing: elapsed(start),
            };
            finish(report, outcome.code, cli.json, String::new())
        }
        Err(e) => {
            let msg = e.to_string();
            finish(
                error_report(ctx.inputs.clone(), msg.clone(), e.offset()),
                1,
                cli.json,
                format!("error: {msg}\n"),
            )
        }
    }
}
