//! Command line front end: parse an instance, run a command, render the
//! result as text or JSON.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use ncdiv::algebra::{Algebra, AlgebraError, Elem};
use ncdiv::divergence::{check_divergence_law, functional_matrix, ibp_report, integral, integral_window, Divergence};
use ncdiv::fodc::Calculus;
use ncdiv::gallery::{self, Family, GalleryEntry, Instance, SuiteOutcome};
use ncdiv::io::{parse_functional, InstanceSpec, SpecError};
use ncdiv::linear::{Field, Matrix, Q};
use ncdiv::report::{Report, SAMPLE_LIMIT};
use serde_json::{json, Value};

pub const SCHEMA: &str = "ncdiv.report/1";

/// Exit codes.
pub const CLEAN: i32 = 0;
pub const VIOLATIONS: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ncdiv",
    version,
    about = "Exact checks for twisted multi-derivations, divergences and integrals"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Degree window for graded algebras.
    #[arg(long, global = true)]
    window: Option<i64>,
    /// File with a claimed integral functional (array of scalars or object
    /// from basis labels to scalars).
    #[arg(long, global = true)]
    lambda: Option<PathBuf>,
    /// Offending instances shown per check.
    #[arg(long, global = true, default_value_t = SAMPLE_LIMIT)]
    max_violations: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every applicable axiom and derived-identity check.
    Check { spec: String },
    /// The module of forms, its relations and the differential.
    Calculus { spec: String },
    /// The divergence on hom generators and its Leibniz law.
    Divergence { spec: String },
    /// The cokernel integral, or verification of a claimed one.
    Integral { spec: String },
    /// Integration by parts residuals.
    Ibp { spec: String },
    /// Runs a gallery entry's full suite; lists entries without a name.
    Gallery {
        name: Option<String>,
        /// Write the instance as a spec file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Spec(SpecError),
    Io(String),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(e) => write!(f, "{e}"),
            CliError::Io(e) | CliError::Input(e) => write!(f, "{e}"),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Spec(e)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Spec(SpecError::Algebra(e))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.use_stderr() {
                true => Outcome {
                    code: INPUT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                },
                false => Outcome {
                    code: CLEAN,
                    stdout: text,
                    stderr: String::new(),
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(e),
    }
}

/// 0 when clean, 3 when only consequences fail, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.is_clean() {
        CLEAN
    } else if report.defining_clean() {
        INCONSISTENT
    } else {
        VIOLATIONS
    }
}

struct Loaded {
    instance: Instance<Q>,
    family: Option<Family<Q>>,
}

fn gallery_name(name: &str, window: Option<i64>) -> String {
    match (name, window) {
        ("supercircle", Some(w)) => format!("supercircle:{w}"),
        _ => name.to_string(),
    }
}

/// A spec file, or a gallery name when no such file exists.
fn load(cli: &Cli, spec: &str) -> Result<Loaded, CliError> {
    let path = PathBuf::from(spec);
    let mut loaded = if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let spec = InstanceSpec::parse(&text)?;
        Loaded {
            instance: spec.to_instance(cli.window)?,
            family: None,
        }
    } else {
        let base = spec.split(':').next().unwrap_or(spec);
        if !gallery::GALLERY.iter().any(|g| g.split(':').next() == Some(base)) {
            return Err(CliError::Io(format!("{spec}: no such file or gallery entry")));
        }
        let GalleryEntry { instance, family } = gallery::by_name(&gallery_name(spec, cli.window))?;
        Loaded {
            instance,
            family: Some(family),
        }
    };
    if let Some(p) = &cli.lambda {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        loaded.instance.claimed_lambda = Some(parse_functional(&text, &loaded.instance.algebra)?);
    }
    Ok(loaded)
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    match &cli.command {
        Command::Check { spec } => {
            let l = load(cli, spec)?;
            let out = suite(&l)?;
            Ok(render_suite(cli, "check", &l.instance, &out))
        }
        Command::Calculus { spec } => calculus_command(cli, &load(cli, spec)?),
        Command::Divergence { spec } => divergence_command(cli, &load(cli, spec)?),
        Command::Integral { spec } => integral_command(cli, &load(cli, spec)?),
        Command::Ibp { spec } => ibp_command(cli, &load(cli, spec)?),
        Command::Gallery { name: None, .. } => {
            let mut s = String::new();
            if cli.json {
                s = json!({"schema": SCHEMA, "command": "gallery", "entries": gallery::GALLERY}).to_string() + "\n";
            } else {
                for g in gallery::GALLERY {
                    writeln!(s, "{g}").unwrap();
                }
            }
            Ok((CLEAN, s))
        }
        Command::Gallery {
            name: Some(name),
            export,
        } => {
            let entry = gallery::by_name::<Q>(&gallery_name(name, cli.window))?;
            if let Some(path) = export {
                let spec = InstanceSpec::from_instance(&entry.instance);
                std::fs::write(path, spec.to_json() + "\n")
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let l = Loaded {
                instance: entry.instance,
                family: Some(entry.family),
            };
            let out = suite(&l)?;
            Ok(render_suite(cli, "gallery", &l.instance, &out))
        }
    }
}

fn suite(l: &Loaded) -> Result<SuiteOutcome<Q>, CliError> {
    Ok(match &l.family {
        Some(family) => gallery::full_suite(&GalleryEntry {
            instance: l.instance.clone(),
            family: family.clone(),
        })?,
        None => gallery::run_suite(&l.instance)?,
    })
}

fn report_json(report: &Report, k: usize) -> Value {
    serde_json::to_value(report.truncated(k)).expect("reports serialize")
}

fn lambda_table(alg: &Algebra<Q>, lambda: &Matrix<Q>) -> Vec<(String, Vec<Q>)> {
    (0..alg.dim())
        .map(|a| (alg.label(a).to_string(), lambda.column(a)))
        .collect()
}

fn vec_string<F: Field>(v: &[F]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn render_suite(cli: &Cli, command: &str, inst: &Instance<Q>, out: &SuiteOutcome<Q>) -> (i32, String) {
    let alg = &inst.algebra;
    let code = exit_code(&out.report);
    let module_dim = out.calculus.as_ref().map(Calculus::module_dim);
    let table = out.lambda.as_ref().map(|l| lambda_table(alg, l));
    if cli.json {
        let v = json!({
            "schema": SCHEMA,
            "command": command,
            "instance": inst.name,
            "dim": alg.dim(),
            "n": inst.derivation.n(),
            "module_dim": module_dim,
            "hom_dim": out.hom_dim,
            "dim_coker": out.integral.as_ref().map(|i| i.dim_coker()),
            "lambda": table.as_ref().map(|t| t.iter().map(|(l, v)| json!({"basis": l, "value": strings(v)})).collect::<Vec<_>>()),
            "reference_scalar": out.scalar.as_ref().map(ToString::to_string),
            "clean": out.report.is_clean(),
            "exit_code": code,
            "report": report_json(&out.report, cli.max_violations),
        });
        return (code, v.to_string() + "\n");
    }
    let mut s = String::new();
    writeln!(
        s,
        "instance {} (dim A = {}, n = {})",
        inst.name,
        alg.dim(),
        inst.derivation.n()
    )
    .unwrap();
    if let Some(w) = alg.window() {
        writeln!(s, "window |k| <= {w}").unwrap();
    }
    if let Some(m) = module_dim {
        writeln!(s, "dim M = {m}").unwrap();
    }
    if let Some(h) = out.hom_dim {
        writeln!(s, "dim Hom_A(M, A) = {h}").unwrap();
    }
    if let Some(int) = &out.integral {
        writeln!(s, "dim coker = {}", int.dim_coker()).unwrap();
    }
    if let Some(t) = &table {
        writeln!(s, "Λ:").unwrap();
        for (l, v) in t {
            writeln!(s, "  {l}: {}", vec_string(v)).unwrap();
        }
    }
    if let Some(c) = &out.scalar {
        writeln!(s, "Λ = {c} · reference").unwrap();
    }
    write!(s, "{}", out.report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(&out.report)).unwrap();
    (code, s)
}

fn status_line(report: &Report) -> String {
    match exit_code(report) {
        CLEAN => format!("clean ({} checks)", report.checks.len()),
        INCONSISTENT => format!(
            "{} violations of derived identities with all defining axioms satisfied",
            report.total_violations()
        ),
        _ => format!("{} violations", report.total_violations()),
    }
}

fn format_form(alg: &Algebra<Q>, m: &[Elem<Q>]) -> String {
    let terms: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| format!("({})ω_{}", alg.format(x), j + 1))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn build_calculus(l: &Loaded) -> Result<Result<Calculus<Q>, Report>, CliError> {
    match l.instance.calculus() {
        Ok(c) => Ok(Ok(c)),
        Err(AlgebraError::Axioms(r)) => Ok(Err(*r)),
        Err(e) => Err(e.into()),
    }
}

fn axiom_failure(cli: &Cli, command: &str, inst: &Instance<Q>, report: &Report) -> (i32, String) {
    let code = exit_code(report).max(VIOLATIONS);
    if cli.json {
        let v = json!({
            "schema": SCHEMA,
            "command": command,
            "instance": inst.name,
            "clean": false,
            "exit_code": code,
            "report": report_json(report, cli.max_violations),
        });
        return (code, v.to_string() + "\n");
    }
    let mut s = format!("instance {}: the calculus axioms fail\n", inst.name);
    write!(s, "{}", report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(report)).unwrap();
    (code, s)
}

fn calculus_command(cli: &Cli, l: &Loaded) -> Result<(i32, String), CliError> {
    let inst = &l.instance;
    let alg = &inst.algebra;
    let calc = match build_calculus(l)? {
        Ok(c) => c,
        Err(r) => return Ok(axiom_failure(cli, "calculus", inst, &r)),
    };
    let n = calc.n();
    let mut relations = Vec::new();
    let mut differentials = Vec::new();
    for a in 0..alg.dim() {
        let e = alg.basis(a);
        for i in 0..n {
            let r = match calc.relation(i, &e) {
                Ok(m) => Some(format_form(alg, &m)),
                Err(AlgebraError::WindowOverflow { .. }) => None,
                Err(err) => return Err(err.into()),
            };
            relations.push((i, a, r));
        }
        differentials.push((a, format_form(alg, &calc.d(&e)?)));
    }
    let report = calc.invariant_report();
    let code = exit_code(&report);
    if cli.json {
        let v = json!({
            "schema": SCHEMA,
            "command": "calculus",
            "instance": inst.name,
            "n": n,
            "free": calc.is_free(),
            "module_dim": calc.module_dim(),
            "relations": relations.iter().map(|(i, a, r)| json!({"omega": i + 1, "a": alg.label(*a), "value": r})).collect::<Vec<_>>(),
            "d": differentials.iter().map(|(a, r)| json!({"a": alg.label(*a), "value": r})).collect::<Vec<_>>(),
            "clean": report.is_clean(),
            "exit_code": code,
            "report": report_json(&report, cli.max_violations),
        });
        return Ok((code, v.to_string() + "\n"));
    }
    let mut s = String::new();
    writeln!(s, "instance {}", inst.name).unwrap();
    writeln!(
        s,
        "rank n = {n} ({}), dim M = {}",
        if calc.is_free() { "free" } else { "π ≠ 𝕀" },
        calc.module_dim()
    )
    .unwrap();
    writeln!(s, "relations:").unwrap();
    for (i, a, r) in &relations {
        let r = r.as_deref().unwrap_or("outside window");
        writeln!(s, "  ω_{}·{} = {r}", i + 1, alg.label(*a)).unwrap();
    }
    writeln!(s, "differential:").unwrap();
    for (a, r) in &differentials {
        writeln!(s, "  d({}) = {r}", alg.label(*a)).unwrap();
    }
    write!(s, "{}", report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(&report)).unwrap();
    Ok((code, s))
}

fn divergence_of(l: &Loaded) -> Result<Result<Divergence<Q>, Report>, CliError> {
    let p = l
        .instance
        .projectively_free()
        .ok_or_else(|| CliError::Input("the divergence needs σ̄ and σ̂ (a projectively free derivation)".into()))??;
    let calc = match build_calculus(l)? {
        Ok(c) => c,
        Err(r) => return Ok(Err(r)),
    };
    Ok(Ok(Divergence::from_calculus(calc, &p)?))
}

fn divergence_command(cli: &Cli, l: &Loaded) -> Result<(i32, String), CliError> {
    let inst = &l.instance;
    let alg = &inst.algebra;
    let div = match divergence_of(l)? {
        Ok(d) => d,
        Err(r) => return Ok(axiom_failure(cli, "divergence", inst, &r)),
    };
    let homs = div.calculus().hom_generators()?;
    let report = check_divergence_law(&div, &homs);
    let code = exit_code(&report);
    let rows: Vec<(String, String)> = homs
        .iter()
        .map(|f| (div.calculus().format(&f.values), alg.format(&div.apply(f))))
        .collect();
    if cli.json {
        let v = json!({
            "schema": SCHEMA,
            "command": "divergence",
            "instance": inst.name,
            "generators": rows.iter().map(|(f, d)| json!({"f": f, "divergence": d})).collect::<Vec<_>>(),
            "clean": report.is_clean(),
            "exit_code": code,
            "report": report_json(&report, cli.max_violations),
        });
        return Ok((code, v.to_string() + "\n"));
    }
    let mut s = format!("instance {}\n", inst.name);
    writeln!(s, "∇ on {} hom generators (f(ω_1), …, f(ω_n)):", rows.len()).unwrap();
    for (f, d) in &rows {
        writeln!(s, "  ∇{f} = {d}").unwrap();
    }
    write!(s, "{}", report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(&report)).unwrap();
    Ok((code, s))
}

fn integral_command(cli: &Cli, l: &Loaded) -> Result<(i32, String), CliError> {
    let inst = &l.instance;
    let alg = &inst.algebra;
    let div = match divergence_of(l)? {
        Ok(d) => d,
        Err(r) => return Ok(axiom_failure(cli, "integral", inst, &r)),
    };
    let mut report = Report::new();
    let mut s = format!("instance {}\n", inst.name);
    let mut j = json!({"schema": SCHEMA, "command": "integral", "instance": inst.name});
    if !alg.is_graded() {
        let int = integral(&div)?;
        let lambda = int.matrix();
        let image: Vec<String> = int
            .image()
            .basis_vectors()
            .into_iter()
            .map(|v| alg.format(&Elem::from_coords(v)))
            .collect();
        writeln!(s, "dim coker = {}", int.dim_coker()).unwrap();
        writeln!(s, "V = span{{{}}}", image.join(", ")).unwrap();
        writeln!(s, "Λ:").unwrap();
        let table = lambda_table(alg, &lambda);
        for (label, v) in &table {
            writeln!(s, "  {label}: {}", vec_string(v)).unwrap();
        }
        j["dim_coker"] = json!(int.dim_coker());
        j["image"] = json!(image);
        j["lambda"] = json!(table
            .iter()
            .map(|(l, v)| json!({"basis": l, "value": strings(v)}))
            .collect::<Vec<_>>());
        if let Some(reference) = &inst.reference {
            let scalar = (int.dim_coker() == 1)
                .then(|| gallery::hopf::proportionality(lambda.row(0), reference))
                .flatten();
            let mut c = ncdiv::report::Check::defining("Λ proportional to the reference functional");
            c.record(
                scalar.is_some(),
                || "Λ".into(),
                || "not a multiple of the reference".into(),
            );
            report.push(c);
            if let Some(c) = &scalar {
                writeln!(s, "Λ = {c} · reference").unwrap();
            }
            j["reference_scalar"] = json!(scalar.map(|c| c.to_string()));
        }
    }
    match &inst.claimed_lambda {
        Some(claimed) => {
            let w = integral_window(&div, claimed)?;
            writeln!(
                s,
                "claimed Λ checked on {} generators; span of their divergences has dimension {}",
                w.report.checks[1].checked,
                w.image.dim()
            )
            .unwrap();
            j["verified_span_dim"] = json!(w.image.dim());
            report.extend(w.report);
        }
        None if alg.is_graded() => {
            return Err(CliError::Input(
                "graded algebras need a claimed integral (--lambda or options.lambda)".into(),
            ))
        }
        None => {}
    }
    let code = exit_code(&report);
    if cli.json {
        j["clean"] = json!(report.is_clean());
        j["exit_code"] = json!(code);
        j["report"] = report_json(&report, cli.max_violations);
        return Ok((code, j.to_string() + "\n"));
    }
    write!(s, "{}", report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(&report)).unwrap();
    Ok((code, s))
}

fn abs(q: &Q) -> Q {
    if *q < Q::from(0) {
        -q.clone()
    } else {
        q.clone()
    }
}

fn ibp_command(cli: &Cli, l: &Loaded) -> Result<(i32, String), CliError> {
    let inst = &l.instance;
    let alg = &inst.algebra;
    let div = match divergence_of(l)? {
        Ok(d) => d,
        Err(r) => return Ok(axiom_failure(cli, "ibp", inst, &r)),
    };
    if !div.calculus().is_free() {
        return Err(CliError::Input("integration by parts is only offered for π = 𝕀".into()));
    }
    let lambda = match (&inst.claimed_lambda, alg.is_graded()) {
        (Some(c), _) => functional_matrix(c),
        (None, false) => integral(&div)?.matrix(),
        (None, true) => {
            return Err(CliError::Input(
                "graded algebras need a claimed integral (--lambda or options.lambda)".into(),
            ))
        }
    };
    let report = ibp_report(&div, &lambda)?;
    let mut max = Q::from(0);
    for i in 0..div.twisted().n() {
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                match div.ibp_residual(&lambda, &alg.basis(a), &alg.basis(b), i) {
                    Ok(r) => {
                        for x in &r {
                            if abs(x) > max {
                                max = abs(x);
                            }
                        }
                    }
                    Err(AlgebraError::WindowOverflow { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    let code = exit_code(&report);
    if cli.json {
        let v = json!({
            "schema": SCHEMA,
            "command": "ibp",
            "instance": inst.name,
            "max_residual": max.to_string(),
            "clean": report.is_clean(),
            "exit_code": code,
            "report": report_json(&report, cli.max_violations),
        });
        return Ok((code, v.to_string() + "\n"));
    }
    let mut s = format!("instance {}\n", inst.name);
    writeln!(s, "max residual {max}").unwrap();
    write!(s, "{}", report.truncated(cli.max_violations)).unwrap();
    writeln!(s, "{}", status_line(&report)).unwrap();
    Ok((code, s))
}
