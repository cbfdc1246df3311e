mod bench;
mod checks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nekrasov_core::exactalg::{EvalConfig, Exp};
use nekrasov_core::prepotential::{ALTERNATIVE_DIRECTIONS, DEFAULT_DIRECTIONS};
use serde_json::json;

use checks::{PolylogSuite, QSeriesKind, Settings};
use report::{Check, Report};

const MAX_RANK: usize = 3;
const MAX_ORDER: u32 = 5;

#[derive(Parser)]
#[command(
    name = "nekrasov",
    version,
    about = "Exact checks of instanton partition functions and blowup equations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON report (or the bench CSV) to this path.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Randomized)]
    mode: Mode,
    /// Evaluation points per randomized equality test.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Record per-check wall time in the JSON report (makes it run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    /// Lift the rank ≤ 3 and order ≤ 5 guardrails.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Randomized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Directions {
    Default,
    Alternative,
}

#[derive(Subcommand)]
enum Cmd {
    /// Z_0..Z_N by fixed-point enumeration, with symmetry checks.
    ComputeZ {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        order: u32,
    },
    /// Blowup equations for one class k, at one d or all 0 ≤ d ≤ r.
    VerifyBlowup {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        /// q-order cap, possibly fractional such as 5/4.
        #[arg(long, value_parser = parse_exp)]
        order: Exp,
    },
    /// Z_1..Z_N from the blowup recursion, cross-checked against enumeration.
    SolveRecursion {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        order: u32,
    },
    /// Regularity of e1 e2 log Z and the genus expansion F0, H, G, F1.
    ProbePrepotential {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Directions::Default)]
        directions: Directions,
        /// Recompute with the other ray set and compare.
        #[arg(long)]
        compare: bool,
    },
    /// Contact term equation for rank two.
    VerifyContact {
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Genus-one modular identities for rank two.
    VerifyGenus1 {
        #[arg(long, default_value_t = 2)]
        order: u32,
    },
    /// Formal q-expansions of eta and theta11'.
    Qseries {
        #[arg(value_enum)]
        kind: QSeriesKind,
        #[arg(long, default_value_t = 20)]
        order: u32,
    },
    /// Polylogarithm identities and the perturbative gamma function.
    VerifyPolylog {
        #[arg(long, value_enum, default_value_t = PolylogSuite::All)]
        suite: PolylogSuite,
        /// Working precision in bits.
        #[arg(long, default_value_t = 128)]
        prec: usize,
    },
    /// Timing grid over (r, n), emitted as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Thread counts whose results must be bit-identical.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
        threads: Vec<usize>,
    },
    /// Every check at the given rank and order.
    All {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        order: u32,
    },
}

fn parse_exp(s: &str) -> Result<Exp, String> {
    s.parse::<Exp>()
        .map_err(|e| format!("expected an integer or a fraction p/q: {e}"))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("NEKRASOV_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // ignore failure: the pool may already be initialized in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let g = &cli.global;
    if let Some(msg) = guardrail(&cli.cmd, g.allow_large) {
        return usage_error(&msg);
    }
    let s = Settings {
        exact: g.mode == Mode::Exact,
        cfg: EvalConfig {
            trials: g.trials.max(1),
            seed: g.seed,
            ..EvalConfig::default()
        },
    };

    if let Cmd::Bench { ranks, max_n, threads } = &cli.cmd {
        let csv = bench::to_csv(&bench::grid(ranks, *max_n, threads, &s.cfg));
        print!("{csv}");
        if let Some(p) = &g.output {
            if let Err(e) = std::fs::write(p, &csv) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        return ExitCode::SUCCESS;
    }

    let (name, config, checks, data) = run(&cli.cmd, s, g.seed);
    let mut report = Report::new(name, config, checks, g.timings);
    report.data = data;
    match g.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if let Some(p) = &g.output {
        if let Err(e) = std::fs::write(p, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", p.display());
            return ExitCode::from(1);
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn guardrail(cmd: &Cmd, allow: bool) -> Option<String> {
    if allow {
        return None;
    }
    let (rank, order) = match cmd {
        Cmd::ComputeZ { rank, order }
        | Cmd::SolveRecursion { rank, order }
        | Cmd::ProbePrepotential { rank, order, .. }
        | Cmd::All { rank, order } => (Some(*rank), Some(*order)),
        Cmd::VerifyBlowup { rank, order, .. } => (Some(*rank), Some(order.ceil().to_integer().max(0) as u32)),
        Cmd::VerifyContact { order } | Cmd::VerifyGenus1 { order } => (None, Some(*order)),
        Cmd::Bench { ranks, max_n, .. } => (ranks.iter().copied().max(), Some(*max_n)),
        Cmd::Qseries { .. } | Cmd::VerifyPolylog { .. } => (None, None),
    };
    if rank.is_some_and(|r| r == 0 || r > MAX_RANK) {
        return Some(format!(
            "rank must be between 1 and {MAX_RANK} (use --allow-large to override)"
        ));
    }
    if order.is_some_and(|n| n > MAX_ORDER) {
        return Some(format!("order above {MAX_ORDER} (use --allow-large to override)"));
    }
    if let Cmd::VerifyBlowup { rank, k, d, .. } = cmd {
        if *k >= *rank || d.is_some_and(|d| d > *rank) {
            return Some(format!(
                "need 0 ≤ k < r and 0 ≤ d ≤ r, got k = {k}, d = {d:?}, r = {rank}"
            ));
        }
    }
    None
}

type RunOutput = (&'static str, serde_json::Value, Vec<Check>, serde_json::Value);

fn run(cmd: &Cmd, s: Settings, seed: u64) -> RunOutput {
    let mode = if s.exact { "exact" } else { "randomized" };
    let base = json!({ "mode": mode, "trials": s.cfg.trials, "seed": seed });
    let with = |extra: serde_json::Value| {
        let mut c = base.clone();
        c.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
        c
    };
    let none = serde_json::Value::Null;
    match cmd {
        Cmd::ComputeZ { rank, order } => {
            let (c, data) = checks::compute_z(*rank, *order, s);
            ("compute-z", with(json!({ "rank": rank, "order": order })), c, data)
        }
        Cmd::VerifyBlowup { rank, k, d, order } => {
            let ds: Vec<usize> = d.map_or_else(|| (0..=*rank).collect(), |d| vec![d]);
            let c = checks::verify_blowup(*rank, *k, &ds, *order, s);
            let cfg =
                with(json!({ "rank": rank, "k": k, "d": ds, "order": nekrasov_core::exactalg::json::exp_str(order) }));
            ("verify-blowup", cfg, c, none)
        }
        Cmd::SolveRecursion { rank, order } => (
            "solve-recursion",
            with(json!({ "rank": rank, "order": order })),
            checks::recursion(*rank, *order, s),
            none,
        ),
        Cmd::ProbePrepotential {
            rank,
            order,
            directions,
            compare,
        } => {
            let dirs = match directions {
                Directions::Default => &DEFAULT_DIRECTIONS,
                Directions::Alternative => &ALTERNATIVE_DIRECTIONS,
            };
            let (c, data) = checks::probe_prepotential(*rank, *order, dirs, *compare);
            (
                "probe-prepotential",
                with(json!({ "rank": rank, "order": order, "directions": dirs })),
                c,
                data,
            )
        }
        Cmd::VerifyContact { order } => (
            "verify-contact",
            with(json!({ "order": order })),
            checks::contact(*order, s),
            none,
        ),
        Cmd::VerifyGenus1 { order } => (
            "verify-genus1",
            with(json!({ "order": order })),
            checks::genus1(*order, s),
            none,
        ),
        Cmd::Qseries { kind, order } => {
            let k = match kind {
                QSeriesKind::Eta => "eta",
                QSeriesKind::ThetaDeriv => "theta-deriv",
            };
            (
                "qseries",
                json!({ "kind": k, "order": order }),
                checks::qseries(*kind, *order),
                none,
            )
        }
        Cmd::VerifyPolylog { suite, prec } => {
            let cfg = json!({ "suite": format!("{suite:?}").to_lowercase(), "prec": prec, "seed": seed });
            ("verify-polylog", cfg, checks::polylog(*suite, *prec, seed), none)
        }
        Cmd::All { rank, order } => (
            "all",
            with(json!({ "rank": rank, "order": order })),
            run_all(*rank, *order, s, seed),
            none,
        ),
        Cmd::Bench { .. } => unreachable!("bench is handled before report assembly"),
    }
}

fn run_all(rank: usize, order: u32, s: Settings, seed: u64) -> Vec<Check> {
    let mut out = checks::compute_z(rank, order, s).0;
    out.extend(checks::verify_blowup(
        rank,
        0,
        &(0..=rank).collect::<Vec<_>>(),
        Exp::from(order as i64),
        s,
    ));
    for k in 1..rank {
        let ord = checks::blowup_order(rank, k, order);
        let mut cs = checks::verify_blowup(rank, k, &(0..=rank).collect::<Vec<_>>(), ord, s);
        out.append(&mut cs);
    }
    out.extend(checks::lsym(rank));
    out.extend(checks::recursion(rank, order, s));
    if rank <= 2 {
        out.extend(checks::probe_prepotential(rank, order, &DEFAULT_DIRECTIONS, true).0);
    }
    if rank == 2 {
        out.extend(checks::genus1(order, s));
        out.extend(checks::contact(order.min(2), s));
    }
    out.extend(checks::qseries(QSeriesKind::Eta, 30));
    out.extend(checks::qseries(QSeriesKind::ThetaDeriv, 20));
    out.extend(checks::polylog(PolylogSuite::All, 128, seed));
    out
}
