//! `torickh`: command-line front end.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails, 2 for
//! malformed or invalid input, 3 when a command's hypothesis does not hold.

mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use serde_json::{json, Value};

use toric_kh::io::{
    canonical_fan_string, e2_report, fan_json, monoid_json, parse_fan, parse_monoid,
    parse_polytope, vector_json, vectors_json, IoError,
};
use toric_kh::kh::{proj_lower_bounds, KhAssembly, KhError};
use toric_kh::linalg::Vector;
use toric_kh::monoid::{AffineMonoid, MonoidError};
use toric_kh::polyhedral::{
    normal_fan, parse_catalog_expression, quasi_projective_certificate, CatalogEntry, Fan,
    PolyhedralError, ProjectivityCertificate,
};
use toric_kh::spectral::{
    betti_formula, frobenius_is_multiplicative, frobenius_on_e1, purity_check, E1Page,
    SpectralError,
};
use toric_kh::verify;

use cache::Cache;

#[derive(Parser)]
#[command(name = "torickh", version, about = "Exact cohomology and homotopy K-theory ranks of toric varieties")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Read the input object from FILE instead of stdin.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commands on a fan `{"dim": d, "max_cones": [[ray, ...], ...]}`.
    Fan {
        /// A complete projective fan containing the input, for quasi-projectivity.
        #[arg(long, value_name = "FILE")]
        superfan: Option<PathBuf>,
        #[command(subcommand)]
        command: FanCommand,
    },
    /// Commands on a lattice polytope `{"dim": d, "vertices": [point, ...]}`.
    Polytope {
        #[command(subcommand)]
        command: PolytopeCommand,
    },
    /// Commands on an affine monoid `{"rank": r, "generators": [vector, ...]}`.
    Monoid {
        #[command(subcommand)]
        command: MonoidCommand,
    },
    /// Print a catalog fan as JSON, by name and parameters or as an expression such as
    /// `product(projective_space(1),hirzebruch(2))`.
    Catalog(CatalogArgs),
    /// Run the full acceptance suite.
    VerifyAll,
}

#[derive(Subcommand)]
enum FanCommand {
    Info,
    E2,
    Betti,
    Purity,
    Frobenius {
        #[arg(long)]
        c: u64,
    },
    Kh {
        #[arg(long)]
        n: usize,
    },
    CheckCorC {
        /// Check degrees `0..=N`.
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum PolytopeCommand {
    NormalFan,
    Np,
}

#[derive(Subcommand)]
enum MonoidCommand {
    Normalize,
    Seminormalize,
    Gap {
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    ConjectureK0 {
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    Frobenius {
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
}

#[derive(Args)]
struct CatalogArgs {
    name: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, value_delimiter = ',')]
    weights: Vec<i64>,
}

#[derive(Debug)]
enum Failure {
    /// Malformed or invalid input.
    Input(String),
    /// A hypothesis of the command does not hold.
    Hypothesis(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("cannot read input: {e}"))
    }
}

impl From<PolyhedralError> for Failure {
    fn from(e: PolyhedralError) -> Self {
        match e {
            PolyhedralError::NotComplete => Failure::Hypothesis(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Hypothesis(predicate) => Failure::Hypothesis(predicate.to_string()),
            SpectralError::InvalidMultiplier | SpectralError::InvalidPage(_) => Failure::Input(e.to_string()),
            other => panic!("internal error: {other}"),
        }
    }
}

impl From<MonoidError> for Failure {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::NotPositive | MonoidError::NotPointed | MonoidError::MembershipUndecided => {
                Failure::Hypothesis(format!("monoid is not positive ({e})"))
            }
            MonoidError::DimensionMismatch { .. } | MonoidError::NotAFace => Failure::Input(e.to_string()),
            other => Failure::Hypothesis(other.to_string()),
        }
    }
}

impl From<KhError> for Failure {
    fn from(e: KhError) -> Self {
        match e {
            KhError::Polyhedral(p) => p.into(),
            KhError::Spectral(s) => s.into(),
            other => panic!("internal error: {other}"),
        }
    }
}

/// What a command printed and whether its checks passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, passed: true }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    Ok(match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    })
}

fn show(v: &[num_bigint::BigInt]) -> String {
    format!("({})", v.iter().join(","))
}

fn show_all(vs: &[Vector]) -> String {
    vs.iter().map(|v| show(v)).join(" ")
}

fn certificate_name(cert: &ProjectivityCertificate) -> String {
    match cert {
        ProjectivityCertificate::Projective => "projective".into(),
        ProjectivityCertificate::SubfanOf(name) => format!("quasi-projective (subfan of {name})"),
        ProjectivityCertificate::NotQuasiProjective => "not quasi-projective".into(),
        ProjectivityCertificate::Uncertified => "uncertified".into(),
    }
}

fn run_fan(cli: &Cli, superfan: &Option<PathBuf>, command: &FanCommand) -> Result<Outcome, Failure> {
    let fan = parse_fan(&read_input(&cli.input)?)?;
    let superfan = match superfan {
        Some(p) => Some(parse_fan(&std::fs::read_to_string(p)?)?),
        None => None,
    };
    match command {
        FanCommand::Info => fan_info(&fan, superfan.as_ref()),
        FanCommand::E2 => fan_e2(&fan),
        FanCommand::Betti => fan_betti(&fan),
        FanCommand::Purity => {
            let e2 = E1Page::build(&fan)?.page2()?;
            let report = purity_check(&fan, &e2)?;
            let text = if report.passed {
                "pure: pass".to_string()
            } else {
                let cells = report.offending.iter().map(|(p, q)| format!("({p},{q})")).join(" ");
                format!("pure: fail at {cells}")
            };
            Ok(Outcome {
                text,
                json: serde_json::to_value(&report).expect("serializable"),
                passed: report.passed,
            })
        }
        FanCommand::Frobenius { c } => {
            let e1 = E1Page::build(&fan)?;
            let (_, report) = frobenius_on_e1(&e1, *c)?;
            let multiplicative = frobenius_is_multiplicative(&e1, *c, 2)?;
            let scalars = report.row_scalars.iter().join(" ");
            let text = format!(
                "c = {c}\nrow scalars: {scalars}\ncommutes with d1: {}\nrow eigenvalues: {}\n({c}*2)_* = {c}_* 2_*: {multiplicative}",
                report.commutes_with_d1, report.row_eigenvalues_hold
            );
            let json = json!({
                "c": c,
                "row_scalars": report.row_scalars.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "commutes_with_d1": report.commutes_with_d1,
                "row_eigenvalues_hold": report.row_eigenvalues_hold,
                "multiplicative": multiplicative,
            });
            Ok(Outcome {
                text,
                json,
                passed: report.passed() && multiplicative,
            })
        }
        FanCommand::Kh { n } => {
            let assembly = KhAssembly::new(&fan, superfan.as_ref())?;
            let row = assembly.kh_ranks(*n)?;
            let mut text = format!("{row}\nregime: {}", assembly.regime);
            if assembly.regime.is_conjectural() {
                text.push_str(" (conjectural regime)");
            }
            let json = json!({
                "n": row.n,
                "terms": row.terms,
                "regime": assembly.regime,
                "weights": assembly.provenance(),
            });
            Ok(Outcome::ok(text, json))
        }
        FanCommand::CheckCorC { n_max } => {
            let assembly = KhAssembly::new(&fan, superfan.as_ref())?;
            let report = assembly.check_corollary_c(0..=*n_max)?;
            let verdict = if report.passed { "pass" } else { "fail" };
            let mut text = format!("KH_n = K_n(R)^{} for n = 0..{n_max}: {verdict}\nregime: {}", report.m, report.regime);
            if report.informational {
                text.push_str(" (hypothesis not certified; informational)");
            }
            Ok(Outcome {
                text,
                json: serde_json::to_value(&report).expect("serializable"),
                passed: report.passed,
            })
        }
    }
}

fn fan_info(fan: &Fan, superfan: Option<&Fan>) -> Result<Outcome, Failure> {
    let certificate = quasi_projective_certificate(fan, superfan)?;
    let regime = toric_kh::kh::classify(fan, superfan)?;
    let f = fan.f_vector();
    let text = format!(
        "dimension: {}\nmaximal cones: {}\nf-vector: {}\nrays: {}\ncomplete: {}\nsimplicial: {}\nsmooth: {}\nprojectivity: {}\nregime: {regime}",
        fan.dim(),
        fan.max_cones().len(),
        f.iter().join(" "),
        show_all(&fan.rays()),
        fan.is_complete(),
        fan.is_simplicial(),
        fan.is_smooth(),
        certificate_name(&certificate),
    );
    let json = json!({
        "dim": fan.dim(),
        "max_cones": fan.max_cones().len(),
        "f_vector": f,
        "rays": vectors_json(&fan.rays()),
        "complete": fan.is_complete(),
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
        "projectivity": certificate_name(&certificate),
        "regime": regime,
    });
    Ok(Outcome::ok(text, json))
}

fn report_passed(report: &Value) -> bool {
    report["checks"]
        .as_object()
        .is_none_or(|checks| checks.values().all(|v| v.as_bool() != Some(false)))
        && report["purity"].as_bool() != Some(false)
}

fn fan_e2(fan: &Fan) -> Result<Outcome, Failure> {
    let cache = Cache::from_env();
    let key = Cache::key("e2", &canonical_fan_string(fan));
    let report = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(hit) => hit,
        None => {
            let report = e2_report(fan)?;
            if let Some(c) = &cache {
                c.put(&key, &report);
            }
            report
        }
    };
    let mut lines = Vec::new();
    for cell in report["E2"].as_array().into_iter().flatten() {
        let free = cell[2].as_u64().unwrap_or(0);
        let mut parts = Vec::new();
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in cell[3].as_array().into_iter().flatten() {
            parts.push(format!("Z/{}", t.as_str().unwrap_or("?")));
        }
        lines.push(format!("E2^{{{},{}}} = {}", cell[0], cell[1], parts.join(" + ")));
    }
    if lines.is_empty() {
        lines.push("E2 = 0".into());
    }
    if let Some(betti) = report["betti"].as_array() {
        lines.push(format!("betti: {}", betti.iter().join(" ")));
    }
    Ok(Outcome {
        passed: report_passed(&report),
        text: lines.join("\n"),
        json: report,
    })
}

fn fan_betti(fan: &Fan) -> Result<Outcome, Failure> {
    let betti = betti_formula(fan)?;
    let diagonals = E1Page::build(fan)?.page2()?.anti_diagonals();
    let matches = diagonals.iter().enumerate().all(|(m, &dim)| {
        let expected = if m % 2 == 0 { betti.even.get(m / 2).copied().unwrap_or(0) } else { 0 };
        dim as i64 == expected
    });
    let relation = if betti.sum_rule_holds() { "=" } else { "!=" };
    let text = format!(
        "{} (sum {} {relation} m)",
        betti.even.iter().join(" "),
        betti.sum
    );
    let json = json!({
        "betti": betti.even,
        "sum": betti.sum,
        "m": betti.max_cones,
        "sum_rule": betti.sum_rule_holds(),
        "matches_e2": matches,
    });
    Ok(Outcome {
        text,
        json,
        passed: betti.sum_rule_holds() && matches,
    })
}

fn run_polytope(cli: &Cli, command: &PolytopeCommand) -> Result<Outcome, Failure> {
    let p = parse_polytope(&read_input(&cli.input)?)?;
    match command {
        PolytopeCommand::NormalFan => {
            let fan = normal_fan(&p)?;
            let json = fan_json(&fan);
            Ok(Outcome::ok(json.to_string(), json))
        }
        PolytopeCommand::Np => {
            let counts = proj_lower_bounds(&p)?;
            let mut text = format!(
                "n_P = {}\nsplit count n_P + 1 = {}\nvertices = {}",
                counts.n_p, counts.split_count, counts.vertices
            );
            let mut passed = counts.n_p <= p.dim();
            if let Some(m) = counts.normal_fan_rank {
                text.push_str(&format!("\nnormal fan rank m = {m}"));
                passed &= m == counts.vertices;
            }
            Ok(Outcome {
                text,
                json: serde_json::to_value(&counts).expect("serializable"),
                passed,
            })
        }
    }
}

fn monoid_outcome(label: &str, m: &AffineMonoid) -> Outcome {
    Outcome::ok(format!("{label}: {}", show_all(m.generators())), monoid_json(m))
}

fn run_monoid(cli: &Cli, command: &MonoidCommand) -> Result<Outcome, Failure> {
    let m = parse_monoid(&read_input(&cli.input)?)?;
    match command {
        MonoidCommand::Normalize => {
            let n = m.normalization();
            let mut out = monoid_outcome("n(M)", &n);
            out.text.push_str(&format!("\nnormal: {}", m.is_normal()?));
            Ok(out)
        }
        MonoidCommand::Seminormalize => {
            let sn = m.seminormalization()?;
            let mut out = monoid_outcome("sn(M)", &sn);
            out.text.push_str(&format!("\nseminormal: {}", sn == m));
            Ok(out)
        }
        MonoidCommand::Gap { bound } => {
            let gap = m.gap(*bound)?;
            let mut text = format!("gap up to degree {bound}: {{{}}}", show_all(&gap.elements));
            if gap.truncated {
                text.push_str("\nwarning: elements near the bound; the gap may be infinite");
            }
            let json = json!({
                "grading": vector_json(&gap.grading),
                "bound": gap.bound,
                "elements": vectors_json(&gap.elements),
                "truncated": gap.truncated,
            });
            Ok(Outcome::ok(text, json))
        }
        MonoidCommand::ConjectureK0 { bound } => {
            let report = m.verify_conjecture_k0(*bound)?;
            let mut lines = vec![format!("gap: {{{}}}", show_all(&report.gap.elements))];
            for face in &report.faces {
                let cert = face
                    .certificate
                    .as_ref()
                    .map_or("none found".to_string(), |c| show(&c.element));
                lines.push(format!("face {}: m_F = {cert}", show_all(&face.face_rays)));
            }
            lines.push(format!("(a) conductor elements: {}", report.clause_a));
            lines.push(format!("(b) Frobenius support: {}", report.clause_b));
            let c0 = report.nilpotence_c0.map_or("none up to 64".to_string(), |c| c.to_string());
            lines.push(format!("c0 = {c0}"));
            lines.push(format!("(c) module structure: {}", report.clause_c));
            lines.push(format!("(d) finite generation: {}", report.clause_d));
            let json = json!({
                "gap": vectors_json(&report.gap.elements),
                "truncated": report.gap.truncated,
                "faces": report.faces.iter().map(|f| json!({
                    "rays": vectors_json(&f.face_rays),
                    "m_F": f.certificate.as_ref().map(|c| vector_json(&c.element)),
                })).collect::<Vec<_>>(),
                "clause_a": report.clause_a.to_string(),
                "clause_b": report.clause_b.to_string(),
                "clause_c": report.clause_c.to_string(),
                "clause_d": report.clause_d.to_string(),
                "c0": report.nilpotence_c0,
                "frobenius": report.frobenius.iter().map(|f| json!({
                    "c": f.c, "support_law": f.support_law_holds, "kills_gap": f.kills_gap,
                })).collect::<Vec<_>>(),
            });
            Ok(Outcome {
                text: lines.join("\n"),
                json,
                passed: report.passed(),
            })
        }
        MonoidCommand::Frobenius { c, bound } => {
            let gap = m.gap(*bound)?;
            let map = m.frobenius_on_gap(*c, &gap)?;
            let mut lines: Vec<String> = map
                .images
                .iter()
                .map(|(x, img)| format!("{} -> {}", show(x), img.as_ref().map_or("0".into(), |y| show(y))))
                .collect();
            lines.push(format!("support law: {}", map.support_law_holds));
            lines.push(format!("kills gap: {}", map.is_zero));
            let json = json!({
                "c": c,
                "images": map.images.iter().map(|(x, img)| json!([vector_json(x), img.as_ref().map(|y| vector_json(y))])).collect::<Vec<_>>(),
                "support_law": map.support_law_holds,
                "kills_gap": map.is_zero,
            });
            Ok(Outcome {
                text: lines.join("\n"),
                json,
                passed: map.support_law_holds,
            })
        }
    }
}

fn catalog_entry(args: &CatalogArgs) -> Result<CatalogEntry, Failure> {
    if args.name.contains('(') {
        return Ok(parse_catalog_expression(&args.name)?);
    }
    let need_d = || args.d.ok_or_else(|| Failure::Input(format!("`{}` needs --d", args.name)));
    Ok(match args.name.as_str() {
        "projective_space" => CatalogEntry::ProjectiveSpace(need_d()?),
        "affine_orthant" => CatalogEntry::AffineOrthant(need_d()?),
        "torus" => CatalogEntry::Torus(need_d()?),
        "hirzebruch" => CatalogEntry::Hirzebruch(
            args.a.ok_or_else(|| Failure::Input("`hirzebruch` needs --a".into()))?,
        ),
        "weighted_projective" => {
            if args.weights.is_empty() {
                return Err(Failure::Input("`weighted_projective` needs --weights".into()));
            }
            CatalogEntry::WeightedProjective(args.weights.clone())
        }
        other => return Err(PolyhedralError::UnknownCatalogEntry(other.to_string()).into()),
    })
}

fn run_catalog(args: &CatalogArgs) -> Result<Outcome, Failure> {
    let fan = catalog_entry(args)?.build()?;
    let json = fan_json(&fan);
    Ok(Outcome::ok(json.to_string(), json))
}

fn run_verify_all() -> Outcome {
    let outcomes = verify::run_all();
    Outcome {
        text: outcomes.iter().join("\n"),
        json: serde_json::to_value(&outcomes).expect("serializable"),
        passed: outcomes.iter().all(|o| o.passed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fan { superfan, command } => run_fan(&cli, superfan, command),
        Command::Polytope { command } => run_polytope(&cli, command),
        Command::Monoid { command } => run_monoid(&cli, command),
        Command::Catalog(args) => run_catalog(args),
        Command::VerifyAll => Ok(run_verify_all()),
    };
    match result {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.json);
            } else {
                println!("{}", outcome.text);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("hypothesis violated: {msg}");
            ExitCode::from(3)
        }
    }
}
