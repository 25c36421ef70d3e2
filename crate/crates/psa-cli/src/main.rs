use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use psa_core::classify::{classify_s, classify_w, fil0_basis, sing_in_span};
use psa_core::config::{parse_algebra, parse_pi, parse_u, preset, resolve_trunc, ChiSpec};
use psa_core::hopf::Hopf;
use psa_core::liecore::{omega_rep, DRep, GlRep, LieData, TraceForm};
use psa_core::pseudoalg::AxiomReport;
use psa_core::modules::{build_tensor_s, build_tensor_w, sing_solve_s, sing_solve_w};
use psa_core::suites::{derham_suite, verify_all, NamedCheck, SuiteReport};
use psa_core::Error;

#[derive(Parser)]
#[command(name = "psa", version, about = "Exact verification for the Lie pseudoalgebras W(d) and S(d,χ)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf, dual, pseudoalgebra, S(d,χ) and annihilation-algebra suites.
    Verify(Job),
    /// Singular vectors of a tensor module.
    Singular(Job),
    /// The twisted pseudo de Rham complex: d² = 0, contraction identities, exactness.
    Derham(Job),
    /// Classification verdict for a tensor module.
    Classify(Job),
    /// Merge several JSON reports into one.
    ReportMerge(MergeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "W")]
    W,
    #[value(name = "S")]
    S,
}

#[derive(Args)]
struct Job {
    /// Preset name (abelianN, heis3, sl2, solv2) or path to an algebra JSON file.
    #[arg(long, default_value = "abelian2")]
    alg: String,
    /// zero, tr_ad, or comma-separated values χ(∂_1),…,χ(∂_N).
    #[arg(long)]
    chi: Option<String>,
    /// trivial, trivial:m, adjoint, nil2, tr_ad, or char:c1,…,cN.
    #[arg(long)]
    pi: Option<String>,
    /// omega:n, trivial, standard, sym2, sl_adjoint; append +t to shift by the trace character.
    #[arg(long)]
    u: Option<String>,
    #[arg(long, value_enum, default_value = "W")]
    mode: Mode,
    /// Truncation degree D (default: PSA_TRUNC or 6).
    #[arg(long)]
    trunc: Option<usize>,
    /// Filtration bound for solvers and exactness reports.
    #[arg(long)]
    fil: Option<usize>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MergeArgs {
    /// Report files to merge, in order.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

struct Resolved {
    lie: LieData,
    alg_name: String,
    chi_spec: ChiSpec,
    chi: TraceForm,
    pi: DRep,
    pi_name: String,
    u: GlRep,
    u_name: String,
    trunc: usize,
}

fn resolve(job: &Job) -> psa_core::Result<Resolved> {
    let (lie, file) = match preset(&job.alg) {
        Ok(lie) => (lie, None),
        Err(e) => {
            let path = Path::new(&job.alg);
            if !path.exists() {
                return Err(e);
            }
            let text = std::fs::read_to_string(path).map_err(|err| Error::Config(format!("{}: {err}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|err| Error::Config(format!("{}: {err}", path.display())))?;
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("algebra").to_string();
            let f = parse_algebra(&v, &name)?;
            (f.lie.clone(), Some(f))
        }
    };
    let n = lie.dim();
    let chi_spec = match &job.chi {
        Some(s) => ChiSpec::parse(s)?,
        None => file.as_ref().and_then(|f| f.chi.clone()).unwrap_or(ChiSpec::Zero),
    };
    let chi = chi_spec.resolve(&lie)?;
    let (pi, pi_name) = match (&job.pi, file.as_ref().and_then(|f| f.pi.clone())) {
        (Some(s), _) => (parse_pi(&lie, s)?, s.clone()),
        (None, Some(p)) => (p, "file".into()),
        (None, None) => (DRep::trivial(&lie, 1), "trivial".into()),
    };
    let (u, u_name) = match (&job.u, file.as_ref().and_then(|f| f.u.clone())) {
        (Some(s), _) => (parse_u(n, s)?, s.clone()),
        (None, Some(u)) => (u, "file".into()),
        (None, None) => (omega_rep(n, 0)?, "omega:0".into()),
    };
    let trunc = resolve_trunc(job.trunc)?;
    if trunc < 3 {
        return Err(Error::Config(format!("truncation {trunc} is below the minimum 3")));
    }
    Ok(Resolved { alg_name: job.alg.clone(), lie, chi_spec, chi, pi, pi_name, u, u_name, trunc })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::W => "W",
        Mode::S => "S",
    }
}

fn config_json(cmd: &str, job: &Job, r: &Resolved, fil: Option<usize>) -> Value {
    json!({
        "command": cmd,
        "algebra": r.alg_name,
        "dim": r.lie.dim(),
        "chi": match &r.chi_spec { ChiSpec::Zero => json!("zero"), ChiSpec::TrAd => json!("tr_ad"), ChiSpec::Explicit(_) => json!(r.chi.0.iter().map(psa_core::rational::fmt_q).collect::<Vec<_>>()) },
        "pi": r.pi_name,
        "pi_dim": r.pi.dim,
        "u": r.u_name,
        "u_dim": r.u.dim,
        "mode": mode_name(job.mode),
        "trunc": r.trunc,
        "fil": fil,
    })
}

struct Outcome {
    report: Value,
    text: Vec<String>,
    passed: bool,
}

fn check_lines(s: &SuiteReport) -> Vec<String> {
    s.checks.iter().map(line_of).collect()
}

fn line_of(c: &NamedCheck) -> String {
    let tag = if c.passed() {
        "PASS"
    } else if c.known_deviation {
        "DEVIATION"
    } else {
        "FAIL"
    };
    format!("[{tag}] {} ({} checked, {} failures)", c.name, c.checked, c.failures.len())
}

fn cmd_verify(job: &Job) -> psa_core::Result<Outcome> {
    let r = resolve(job)?;
    let hopf = Hopf::new(r.lie.clone());
    let suite = verify_all(&hopf, r.trunc)?;
    let passed = suite.passed();
    let report = json!({"config": config_json("verify", job, &r, None), "passed": passed, "checks": suite.to_json()});
    Ok(Outcome { report, text: check_lines(&suite), passed })
}

fn cmd_singular(job: &Job) -> psa_core::Result<Outcome> {
    let r = resolve(job)?;
    let hopf = Hopf::new(r.lie.clone());
    let n = r.lie.dim();
    let (v, sing, bound, fil) = match job.mode {
        Mode::W => {
            let fil = job.fil.unwrap_or(2);
            let v = build_tensor_w(&hopf, &r.pi, &r.u)?;
            let sing = sing_solve_w(&hopf, &v, fil)?;
            (v, sing, 1, fil)
        }
        Mode::S => {
            let fil = job.fil.unwrap_or(3);
            let v = build_tensor_s(&hopf, &r.pi, &r.u)?;
            let sing = sing_solve_s(&hopf, &v, &r.chi, fil)?;
            (v, sing, 2, fil)
        }
    };
    let above = sing.basis.iter().filter(|b| b.degree().unwrap_or(0) > bound).count();
    let fil0 = sing_in_span(&sing, &fil0_basis(n, v.rank()), n, v.rank());
    let mut checks = SuiteReport::default();
    let mut agree = AxiomReport { checked: 1, failures: vec![] };
    if !sing.agree {
        agree.failures.push(format!("coefficient system dim {} vs annihilation system dim {}", sing.dim(), sing.ann_dim));
    }
    checks.push(NamedCheck::new("coefficient and annihilation systems agree", agree));
    let mut bound_rep = AxiomReport { checked: sing.dim(), failures: vec![] };
    if above > 0 {
        bound_rep.failures.push(format!("{above} singular vectors above fil^{bound}"));
    }
    checks.push(NamedCheck::new(&format!("singular vectors lie in fil^{bound}"), bound_rep));
    let mut fil0_rep = AxiomReport { checked: 1, failures: vec![] };
    if !fil0 {
        fil0_rep.failures.push("fil^0 not contained in sing".into());
    }
    checks.push(NamedCheck::new("fil^0 is singular", fil0_rep));
    let passed = checks.passed();
    let mut text = vec![format!("dim sing = {}", sing.dim())];
    text.push(format!("degree blocks: {:?}", (0..=fil).map(|k| sing.basis.iter().filter(|b| b.degree().unwrap_or(0) == k).count()).collect::<Vec<_>>()));
    text.extend(check_lines(&checks));
    let report = json!({
        "config": config_json("singular", job, &r, Some(fil)),
        "passed": passed,
        "dim": sing.dim(),
        "sing": sing.to_json(),
        "checks": checks.to_json(),
    });
    Ok(Outcome { report, text, passed })
}

fn cmd_derham(job: &Job) -> psa_core::Result<Outcome> {
    let r = resolve(job)?;
    if r.trunc < 4 {
        return Err(Error::Config(format!("de Rham jobs need truncation at least 4, got {}", r.trunc)));
    }
    let pstar = job.fil.unwrap_or(4).min(r.trunc - 1);
    let hopf = Hopf::new(r.lie.clone());
    let (suite, ex) = derham_suite(&hopf, &r.pi, pstar)?;
    let passed = suite.passed();
    let mut text = check_lines(&suite);
    for e in &ex.entries {
        text.push(format!(
            "  n={} p={}: ker {} image {} fil {} [{}] {}",
            e.degree,
            e.fil,
            e.ker_dim,
            e.image_dim,
            e.fil_dim,
            e.expected,
            if e.passed { "ok" } else { "FAIL" }
        ));
    }
    let report = json!({"config": config_json("derham", job, &r, Some(pstar)), "passed": passed, "checks": suite.to_json(), "exactness": ex});
    Ok(Outcome { report, text, passed })
}

fn cmd_classify(job: &Job) -> psa_core::Result<Outcome> {
    let r = resolve(job)?;
    let hopf = Hopf::new(r.lie.clone());
    let (rep, fil) = match job.mode {
        Mode::W => {
            let fil = job.fil.unwrap_or(2);
            (classify_w(&hopf, &r.pi, &r.u, fil)?, fil)
        }
        Mode::S => {
            let fil = job.fil.unwrap_or(3);
            (classify_s(&hopf, &r.pi, &r.u, &r.chi, fil)?, fil)
        }
    };
    let passed = rep.passed();
    let mut text = vec![rep.verdict.summary().to_string()];
    for c in &rep.checks {
        text.push(format!("[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name));
    }
    let report = json!({"config": config_json("classify", job, &r, Some(fil)), "passed": passed, "classification": rep.to_json()});
    Ok(Outcome { report, text, passed })
}

fn cmd_merge(args: &MergeArgs) -> anyhow::Result<Outcome> {
    let mut reports = Vec::new();
    for p in &args.inputs {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
        reports.push(v);
    }
    let passed = reports.iter().all(|r| r.get("passed") == Some(&json!(true)));
    let text = reports
        .iter()
        .zip(&args.inputs)
        .map(|(r, p)| format!("[{}] {}", if r.get("passed") == Some(&json!(true)) { "PASS" } else { "FAIL" }, p.display()))
        .collect();
    Ok(Outcome { report: json!({"passed": passed, "reports": reports}), text, passed })
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::TruncationExceeded { .. } => 3,
        Error::Config(_)
        | Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::DimensionTooSmall(_)
        | Error::JacobiViolation { .. }
        | Error::AntisymmetryViolation { .. }
        | Error::TraceFormInvalid { .. }
        | Error::RepInvalid(_) => 2,
        _ => 4,
    }
}

fn emit(out: &Outcome, path: Option<&PathBuf>, as_json: bool) -> anyhow::Result<()> {
    let pretty = serde_json::to_string_pretty(&out.report)?;
    if let Some(p) = path {
        std::fs::write(p, format!("{pretty}\n")).with_context(|| format!("writing {}", p.display()))?;
    }
    if as_json {
        println!("{pretty}");
    } else {
        for l in &out.text {
            println!("{l}");
        }
        println!("{}", if out.passed { "result: PASS" } else { "result: FAIL" });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out, as_json) = match &cli.command {
        Command::Verify(j) => (cmd_verify(j), j.out.as_ref(), j.json),
        Command::Singular(j) => (cmd_singular(j), j.out.as_ref(), j.json),
        Command::Derham(j) => (cmd_derham(j), j.out.as_ref(), j.json),
        Command::Classify(j) => (cmd_classify(j), j.out.as_ref(), j.json),
        Command::ReportMerge(m) => {
            return match cmd_merge(m).and_then(|o| emit(&o, m.out.as_ref(), m.json).map(|_| o.passed)) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            };
        }
    };
    match result {
        Ok(o) => match emit(&o, out, as_json) {
            Ok(()) if o.passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(4)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
