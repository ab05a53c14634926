//! Command line harness: compute symmetric function expressions, run named
//! checks over parameter sweeps, enumerate path families with their
//! statistics, and manage the Macdonald basis disk cache.
//!
//! Exit codes: 0 when everything passes (conjecture refutations are findings,
//! not failures), 1 when a proved identity fails, 2 on usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thetaops::checks::{self, CheckReport, CheckStatus};
use thetaops::combinat::Composition;
use thetaops::error::Error;
use thetaops::expr;
use thetaops::macdonald::MacdonaldCtx;
use thetaops::paths::families;
use thetaops::paths::schedule::DiagWord;
use thetaops::paths::zeta;
use thetaops::symfun::Basis;

#[derive(Parser)]
#[command(name = "thetaops", version, about = "Exact Macdonald operator and lattice path toolkit")]
struct Cli {
    /// Macdonald basis cache directory (default: $THETAOPS_CACHE or ./cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print the result as JSON.
    Compute(ComputeArgs),
    /// Run a suite of checks (theorems | conjectures | identities | all) or
    /// a single named check.
    Check(CheckArgs),
    /// Enumerate a path family with statistics.
    Enumerate(EnumArgs),
    /// Manage the Macdonald basis disk cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Expression, e.g. "theta(e(1); nabla(e(1)))"
    expr: String,
    /// Output basis
    #[arg(long, default_value = "s")]
    basis: String,
    /// Degree budget
    #[arg(long, default_value_t = 8)]
    n_max: u32,
}

#[derive(Args)]
struct CheckArgs {
    /// theorems | conjectures | identities | all, or a single check name
    suite: String,
    /// Degree budget for the sweeps
    #[arg(long, default_value_t = 5)]
    n_max: i64,
    /// Parameters for a single named check, repeated key=value
    #[arg(long = "param")]
    params: Vec<String>,
    /// Parallel jobs for sweeps
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format (json | csv)
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct EnumArgs {
    /// LD | LSQ | LDaug | LDvalley | Pref | Park | Dstar | Dbullet | D
    family: String,
    /// Family size arguments (LD/LSQ/Pref/Park: m n; LDaug: m n s;
    /// LDvalley: n k r; Dstar/Dbullet: n k; D: n)
    args: Vec<usize>,
    /// Number of decorated rises for LD/LSQ
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Include per-object statistics columns
    #[arg(long)]
    stats: bool,
    /// Also aggregate the q,t,x enumerator into monomial-basis JSON
    #[arg(long)]
    aggregate: bool,
    /// Emit zeta images alongside Dyck-path objects
    #[arg(long)]
    zeta: bool,
    /// Output format (csv | json)
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CacheArgs {
    /// build | verify | purge
    action: String,
    /// Degree
    n: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("THETAOPS_CACHE").map(PathBuf::from));
    match run(cli, cache_dir) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli, cache_dir: Option<PathBuf>) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Compute(args) => {
            let ctx = make_ctx(cache_dir);
            let basis = parse_basis(&args.basis)?;
            let f = expr::eval(&ctx, &args.expr, args.n_max)?;
            let out = ctx.convert(&f, basis)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check(args) => {
            let ctx = make_ctx(cache_dir);
            let list = match args.suite.as_str() {
                "theorems" => checks::suite_theorems(args.n_max),
                "conjectures" => checks::suite_conjectures(args.n_max),
                "identities" => checks::suite_identities(args.n_max),
                "all" => {
                    let mut v = checks::suite_theorems(args.n_max);
                    v.extend(checks::suite_identities(args.n_max));
                    v.extend(checks::suite_conjectures(args.n_max));
                    v
                }
                name => {
                    let mut params = BTreeMap::new();
                    for kv in &args.params {
                        let (k, v) = kv.split_once('=').ok_or_else(|| {
                            Error::Domain(format!("--param needs key=value, got {kv:?}"))
                        })?;
                        let v: i64 = v
                            .parse()
                            .map_err(|_| Error::Domain(format!("bad value in {kv:?}")))?;
                        params.insert(k.to_string(), v);
                    }
                    vec![(name.to_string(), params)]
                }
            };
            let mut any_theorem_failure = false;
            let results = checks::run_suite(&ctx, &list, args.jobs.max(1));
            let mut stdout = std::io::stdout().lock();
            for r in results {
                let report = r?;
                any_theorem_failure |= report.is_theorem_failure();
                emit_report(&mut stdout, &report, &args.format)?;
            }
            Ok(if any_theorem_failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Enumerate(args) => {
            let text = enumerate(&args)?;
            match &args.out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cache(args) => {
            let dir = cache_dir.unwrap_or_else(|| PathBuf::from("cache"));
            match args.action.as_str() {
                "build" => {
                    let t0 = std::time::Instant::now();
                    let ctx = MacdonaldCtx::with_cache_dir(&dir);
                    ctx.basis(args.n)?;
                    println!(
                        "built degree {} into {} in {} ms",
                        args.n,
                        dir.display(),
                        t0.elapsed().as_millis()
                    );
                }
                "verify" => {
                    thetaops::cache::verify_degree(&dir, args.n)?;
                    println!("degree {} cache OK", args.n);
                }
                "purge" => {
                    let removed = thetaops::cache::purge_degree(&dir, args.n)?;
                    println!(
                        "degree {}: {}",
                        args.n,
                        if removed { "removed" } else { "no cache file" }
                    );
                }
                other => {
                    return Err(Error::Domain(format!(
                        "unknown cache action {other:?} (build | verify | purge)"
                    )))
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn make_ctx(cache_dir: Option<PathBuf>) -> MacdonaldCtx {
    match cache_dir {
        Some(dir) => MacdonaldCtx::with_cache_dir(dir),
        None => MacdonaldCtx::new(),
    }
}

fn parse_basis(tag: &str) -> Result<Basis, Error> {
    Basis::from_tag(tag)
}

fn emit_report(
    w: &mut impl Write,
    report: &CheckReport,
    format: &str,
) -> Result<(), Error> {
    match format {
        "json" => writeln!(w, "{}", serde_json::to_string(report)?)?,
        "csv" => {
            let status = match report.status {
                CheckStatus::TheoremPass => "THEOREM_PASS",
                CheckStatus::TheoremFail => "THEOREM_FAIL",
                CheckStatus::ConjConfirmed => "CONJ_CONFIRMED",
                CheckStatus::ConjRefuted => "CONJ_REFUTED",
            };
            let params: Vec<String> = report
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(
                w,
                "{},{},{},{}",
                report.name,
                params.join(" "),
                status,
                report.wall_time_ms
            )?;
        }
        other => return Err(Error::Domain(format!("unknown format {other:?}"))),
    }
    Ok(())
}

fn enumerate(args: &EnumArgs) -> Result<String, Error> {
    let need = |n: usize| -> Result<(), Error> {
        if args.args.len() != n {
            return Err(Error::Domain(format!(
                "family {} takes {} positional arguments",
                args.family, n
            )));
        }
        Ok(())
    };
    let mut rows: Vec<ObjRow> = Vec::new();
    let mut labelled: Vec<thetaops::paths::LabelledPath> = Vec::new();
    let mut nvars = 0usize;
    match args.family.as_str() {
        "LD" | "LSQ" => {
            need(2)?;
            let (m, n) = (args.args[0], args.args[1]);
            nvars = n;
            labelled = if args.family == "LD" {
                families::ld(m, n, args.k)
            } else {
                families::lsq(m, n, args.k)
            };
        }
        "LDaug" => {
            need(3)?;
            let (m, n, s) = (args.args[0], args.args[1], args.args[2]);
            nvars = n;
            labelled = families::ld_aug(m, n, s);
        }
        "LDvalley" => {
            need(3)?;
            let (n, k, r) = (args.args[0], args.args[1], args.args[2]);
            nvars = n;
            labelled = families::ld_valley(n, k, r);
        }
        "Pref" | "Park" => {
            need(2)?;
            let (m, n) = (args.args[0], args.args[1]);
            nvars = n;
            labelled = if args.family == "Pref" {
                families::pref(m, n)
            } else {
                families::park(m, n)
            };
        }
        "Dstar" => {
            need(2)?;
            for p in families::d_star(args.args[0], args.args[1]) {
                rows.push(ObjRow::decorated(&p));
            }
        }
        "Dbullet" => {
            need(2)?;
            for p in families::d_bullet(args.args[0], args.args[1]) {
                rows.push(ObjRow::corner(&p));
            }
        }
        "D" => {
            need(1)?;
            for path in families::dyck_paths(args.args[0]) {
                let dp = thetaops::paths::DecoratedPath {
                    path: path.clone(),
                    dr: vec![],
                };
                let mut row = ObjRow::decorated(&dp);
                if args.zeta {
                    let img = zeta::zeta_unlabelled(&dp);
                    row.extra = Some(format!(
                        "zeta={} inv_side_bounce={}",
                        img.path,
                        img.bounce()
                    ));
                }
                rows.push(row);
            }
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown family {other:?} (LD | LSQ | LDaug | LDvalley | Pref | Park | Dstar | Dbullet | D)"
            )))
        }
    }
    for p in &labelled {
        rows.push(ObjRow::labelled(p));
    }

    let mut out = String::new();
    match args.format.as_str() {
        "csv" => {
            out.push_str("object");
            if args.stats {
                out.push_str(",area,dinv,touch,shift,dcomp,reading_word");
            }
            out.push('\n');
            for r in &rows {
                out.push_str(&r.object);
                if args.stats {
                    out.push_str(&format!(
                        ",{},{},{},{},{},{}",
                        r.area,
                        r.dinv.map(|d| d.to_string()).unwrap_or_default(),
                        r.touch.map(|t| t.to_string()).unwrap_or_default(),
                        r.shift,
                        r.dcomp.clone().unwrap_or_default(),
                        r.reading_word.clone().unwrap_or_default(),
                    ));
                }
                if let Some(extra) = &r.extra {
                    out.push(',');
                    out.push_str(extra);
                }
                out.push('\n');
            }
        }
        "json" => {
            out.push_str(&serde_json::to_string_pretty(&rows)?);
            out.push('\n');
        }
        other => return Err(Error::Domain(format!("unknown format {other:?}"))),
    }
    if args.aggregate {
        if labelled.is_empty() {
            return Err(Error::Domain(
                "--aggregate applies to labelled families".into(),
            ));
        }
        let enumerator = families::qtx_enumerator(&labelled, nvars);
        let sym = enumerator.to_symfunc()?;
        out.push_str(&serde_json::to_string(&sym)?);
        out.push('\n');
    }
    Ok(out)
}

#[derive(serde::Serialize)]
struct ObjRow {
    object: String,
    area: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dinv: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    touch: Option<usize>,
    shift: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dcomp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reading_word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<String>,
}

impl ObjRow {
    fn labelled(p: &thetaops::paths::LabelledPath) -> ObjRow {
        let dw: Vec<String> = p.reading_word().iter().map(|v| v.to_string()).collect();
        ObjRow {
            object: p.canonical_string(),
            area: p.area(),
            dinv: Some(p.dinv()),
            touch: Some(p.touch()),
            shift: p.shift(),
            dcomp: Some(comp_string(&p.dcomp())),
            reading_word: Some(dw.join("")),
            extra: diagword_note(p),
        }
    }

    fn decorated(p: &thetaops::paths::DecoratedPath) -> ObjRow {
        ObjRow {
            object: format!("{:?}", p),
            area: p.area(),
            dinv: None,
            touch: Some(p.touch_rows().len()),
            shift: p.path.shift(),
            dcomp: Some(comp_string(&p.dcomp())),
            reading_word: None,
            extra: None,
        }
    }

    fn corner(p: &thetaops::paths::CornerPath) -> ObjRow {
        ObjRow {
            object: format!("{:?}", p),
            area: p.bounce(),
            dinv: None,
            touch: None,
            shift: 0,
            dcomp: Some(comp_string(&zeta::dcomp_prime(p))),
            reading_word: None,
            extra: Some("area column holds bounce".into()),
        }
    }
}

fn comp_string(alpha: &Composition) -> String {
    let parts: Vec<String> = alpha.parts().iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(","))
}

fn diagword_note(p: &thetaops::paths::LabelledPath) -> Option<String> {
    if p.labels.iter().any(|l| l.is_inf()) {
        return None;
    }
    let dw = DiagWord::from_path(p);
    let word: Vec<String> = dw.word().iter().map(|v| v.to_string()).collect();
    Some(format!("diagword={}", word.join("")))
}
