//! Command-line front end: one subcommand per library entry point, with
//! JSON/CSV/text rendering, a content-addressed result cache for the scans,
//! and deterministic output everywhere.

mod cache;
mod config;
mod render;
mod report;

use bnlab::{
    bn::Rat, check_condition, classify, conjectured_maximal_loci, distinguish_pair, dm_threshold,
    expected_maximal_loci, filtration_bound, gram_of, knutsen_counterexample, potential_dm_lifts,
    region_samples, scan_l2_parallel, scan_unexpected_containments, strategy_threshold, CheckMode,
    DistinguishCaps, FiltrationType, LatticeVector, LiftWindow, LinearSeries, SearchCaps, Strength,
    Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use render::Format;
use report::RunReport;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bnlab",
    version,
    about = "exact Brill-Noether loci computations",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Emit tabular results as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Cache directory override (default: $BNLAB_CACHE or .bnlab-cache).
    #[arg(long, global = true)]
    cache_dir: Option<String>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrengthArg {
    DiscRatio,
    ExactH,
}

impl From<StrengthArg> for Strength {
    fn from(s: StrengthArg) -> Strength {
        match s {
            StrengthArg::DiscRatio => Strength::DiscRatio,
            StrengthArg::ExactH => Strength::ExactH,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    L1,
    L2,
    L3,
}

impl From<ModeArg> for CheckMode {
    fn from(m: ModeArg) -> CheckMode {
        match m {
            ModeArg::L1 => CheckMode::L1,
            ModeArg::L2 => CheckMode::L2,
            ModeArg::L3 => CheckMode::L3,
        }
    }
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    genus: i64,
    #[arg(long)]
    rank: i64,
    #[arg(long)]
    degree: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Expected and conjectured maximal loci of a genus.
    Loci {
        #[arg(long)]
        genus: i64,
    },
    /// Classify a single series.
    Classify(SeriesArgs),
    /// Scan a genus range for failures of the sublattice condition L2.
    ScanL2 {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        #[arg(long, value_enum, default_value = "disc-ratio")]
        strength: StrengthArg,
        /// Worker threads for per-genus fan-out; 0 reads bnlab.toml.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check one of the sublattice conditions for a fixed series.
    Check {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        other_rank: Option<i64>,
        #[arg(long)]
        other_degree: Option<i64>,
        #[arg(long, value_enum, default_value = "disc-ratio")]
        strength: StrengthArg,
    },
    /// Numeric candidates for a Donagi-Morrison lift.
    LiftCandidates {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        degree_cap: Option<i64>,
        #[arg(long)]
        gamma_low: Option<i64>,
        /// Widen the degree cap to 2g - 4.
        #[arg(long)]
        widen: bool,
    },
    /// Terminal-filtration degree bounds and the admissible set.
    Filtrations {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        gamma: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        mu: i64,
    },
    /// Degree thresholds for guaranteed rank-3 lifts.
    Threshold {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        gamma: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        mu: i64,
        /// Rank for the companion stability threshold.
        #[arg(long, default_value_t = 3)]
        rank: i64,
    },
    /// Lattice computations for Lambda^r_{g,d}.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Replay the non-containment argument between two expected maximal loci.
    Distinguish {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        a_rank: i64,
        #[arg(long)]
        a_degree: i64,
        #[arg(long)]
        b_rank: i64,
        #[arg(long)]
        b_degree: i64,
        #[arg(long)]
        nef_cap: Option<i64>,
    },
    /// Scan for containments induced by expected secant spaces.
    SecantScan {
        #[arg(long)]
        max_genus: i64,
    },
    /// Sample the constraint-region curves in the (r, gamma) plane.
    Region {
        #[arg(long)]
        genus: i64,
        /// Step for r, as an integer or fraction p/q.
        #[arg(long, default_value = "1")]
        step: String,
    },
    /// The rank-3 counterexample family datum for even a >= b >= 4.
    Counterexample {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
}

#[derive(Subcommand)]
enum LatticeOp {
    /// Discriminant of Lambda^r_{g,d}.
    Disc(SeriesArgs),
    /// Existence of a nonzero isotropic class.
    Isotropic(SeriesArgs),
    /// Exact representability of an even square.
    Represents {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        norm: i64,
    },
    /// H-preserving embedding of Lambda^{r'}_{g,d'}.
    Embeds {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        sub_rank: i64,
        #[arg(long)]
        sub_degree: i64,
    },
    /// Surface invariants m, mu and (-2)-class data.
    Invariants(SeriesArgs),
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn series_json(s: &LinearSeries) -> serde_json::Value {
    json!([s.r, s.d])
}

fn vector_json(v: &LatticeVector) -> serde_json::Value {
    // coordinates can exceed 53 bits, so ship them as strings
    json!([v.a.to_string(), v.b.to_string()])
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let parts: Vec<&str> = s.split('/').collect();
    match parts.as_slice() {
        [n] => n
            .parse::<i128>()
            .map(Rat::from_integer)
            .map_err(|e| e.to_string()),
        [n, d] => {
            let n = n.parse::<i128>().map_err(|e| e.to_string())?;
            let d = d.parse::<i128>().map_err(|e| e.to_string())?;
            if d <= 0 {
                return Err("step denominator must be positive".into());
            }
            Ok(Rat::new(n, d))
        }
        _ => Err(format!("cannot parse rational: {s}")),
    }
}

/// Exit status: 0 success, 1 a checked condition failed, 2 usage error,
/// 3 a bounded search was capped without a decision.
fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match (cli.json, cli.csv) {
        (true, true) => {
            eprintln!("error: --json and --csv are mutually exclusive");
            return ExitCode::from(2);
        }
        (true, false) => Format::Json,
        (false, true) => Format::Csv,
        (false, false) => Format::Text,
    };
    match run(&cli) {
        Ok((report, failed)) => {
            let rendered = match render::render(&report, format) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            print!("{rendered}");
            if failed {
                ExitCode::from(1)
            } else if !report.complete {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Build the report; the boolean marks a failed checked condition.
fn run(cli: &Cli) -> Result<(RunReport, bool), String> {
    let version = env!("CARGO_PKG_VERSION").to_string();
    let mut report = RunReport::new(version);
    let mut failed = false;
    match &cli.command {
        Command::Loci { genus } => {
            if *genus < 3 {
                return Err("loci needs --genus >= 3".into());
            }
            report.command("loci");
            report.param("genus", genus);
            let expected = expected_maximal_loci(*genus);
            let conjectured = conjectured_maximal_loci(*genus);
            report.results = json!({
                "expected": expected.iter().map(series_json).collect::<Vec<_>>(),
                "conjectured": conjectured.iter().map(series_json).collect::<Vec<_>>(),
            });
        }
        Command::Classify(s) => {
            report.command("classify");
            report.param("genus", &s.genus);
            report.param("rank", &s.rank);
            report.param("degree", &s.degree);
            if s.genus < 2 || s.rank < 0 || s.degree < 0 {
                return Err("classify needs genus >= 2, rank >= 0, degree >= 0".into());
            }
            let c = classify(LinearSeries::new(s.genus, s.rank, s.degree));
            report.results = json!({
                "rho": c.rho,
                "gamma": c.gamma,
                "delta": c.delta,
                "bn_special": c.bn_special,
                "noncomputing": c.noncomputing,
                "in_l2_window": c.in_l2_window,
            });
        }
        Command::ScanL2 {
            from,
            to,
            strength,
            jobs,
        } => {
            let jobs = if *jobs == 0 {
                config::load().jobs.unwrap_or(1)
            } else {
                *jobs
            };
            report.command("scan-l2");
            report.param("from", from);
            report.param("to", to);
            report.param("strength", &Strength::from(*strength));
            if !(2 <= *from && from <= to) {
                return Err("scan-l2 needs 2 <= from <= to".into());
            }
            let compute = |report: &mut RunReport| {
                let fails = scan_l2_parallel(*from, *to, (*strength).into(), jobs);
                let mut genera: Vec<i64> = fails.iter().map(|f| f.g).collect();
                genera.dedup();
                report.results = json!({
                    "exception_genera": genera,
                    "failures": fails.iter().map(|f| json!({
                        "genus": f.g,
                        "host": series_json(&f.host),
                        "survivors": f.survivors.iter().map(|s| json!({
                            "series": [s.s, s.e],
                            "disc_sub": s.disc_sub,
                            "disc_host": s.disc_host,
                            "isomorphic": s.isomorphic,
                        })).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                });
            };
            cache::with_cache(cli, &mut report, compute)?;
            failed = report.results["exception_genera"]
                .as_array()
                .is_some_and(|a| !a.is_empty());
        }
        Command::Check {
            mode,
            series,
            other_rank,
            other_degree,
            strength,
        } => {
            report.command("check");
            report.param("mode", &CheckMode::from(*mode));
            report.param("genus", &series.genus);
            report.param("rank", &series.rank);
            report.param("degree", &series.degree);
            report.param("strength", &Strength::from(*strength));
            let other = match (other_rank, other_degree) {
                (Some(r), Some(d)) => {
                    report.param("other_rank", r);
                    report.param("other_degree", d);
                    Some(LinearSeries::new(series.genus, *r, *d))
                }
                (None, None) => None,
                _ => return Err("--other-rank and --other-degree go together".into()),
            };
            let fixed = LinearSeries::new(series.genus, series.rank, series.degree);
            let rep = check_condition(
                (*mode).into(),
                series.genus,
                fixed,
                other,
                (*strength).into(),
            )
            .map_err(|e| e.to_string())?;
            failed = !rep.holds();
            report.results = json!({
                "holds": rep.holds(),
                "holds_up_to_isomorphism": rep.holds_up_to_isomorphism(),
                "survivors": rep.survivors.iter().map(|s| json!({
                    "series": [s.s, s.e],
                    "disc_sub": s.disc_sub,
                    "disc_host": s.disc_host,
                    "isomorphic": s.isomorphic,
                    "witness": s.witness.as_ref().map(vector_json),
                    "primitive": s.primitive,
                })).collect::<Vec<_>>(),
            });
        }
        Command::LiftCandidates {
            series,
            degree_cap,
            gamma_low,
            widen,
        } => {
            report.command("lift-candidates");
            report.param("genus", &series.genus);
            report.param("rank", &series.rank);
            report.param("degree", &series.degree);
            if let Some(c) = degree_cap {
                report.param("degree_cap", c);
            }
            if let Some(g) = gamma_low {
                report.param("gamma_low", g);
            }
            if *widen {
                report.param("widen", &true);
            }
            let window = LiftWindow {
                degree_cap: degree_cap.or_else(|| config::load().lift_degree_cap),
                gamma_low: *gamma_low,
                widen: *widen,
            };
            let cands = potential_dm_lifts(series.genus, series.rank, series.degree, window)
                .map_err(|e| e.to_string())?;
            report.results = json!(cands
                .iter()
                .map(|c| json!({
                    "series": [c.s, c.e],
                    "gram": [c.lattice.h2, c.lattice.hl, c.lattice.l2],
                    "disc": c.lattice.disc(),
                }))
                .collect::<Vec<_>>());
        }
        Command::Filtrations {
            genus,
            degree,
            gamma,
            m,
            mu,
        } => {
            report.command("filtrations");
            report.param("genus", genus);
            report.param("degree", degree);
            report.param("gamma", gamma);
            report.param("m", m);
            report.param("mu", mu);
            let bounds: Vec<serde_json::Value> = FiltrationType::ALL
                .iter()
                .map(|f| {
                    json!({
                        "filtration": f.flag(),
                        "bound": filtration_bound(*f, *genus, *gamma, *m, *mu).map(|b| rat_str(&b)),
                    })
                })
                .collect();
            let adm: Vec<&str> = bnlab::admissible_filtrations(*genus, *degree, *gamma, *m, *mu)
                .iter()
                .map(|f| f.flag())
                .collect();
            report.results = json!({ "bounds": bounds, "admissible": adm });
        }
        Command::Threshold {
            genus,
            gamma,
            m,
            mu,
            rank,
        } => {
            report.command("threshold");
            report.param("genus", genus);
            report.param("gamma", gamma);
            report.param("m", m);
            report.param("mu", mu);
            report.param("rank", rank);
            let t = dm_threshold(*genus, *gamma, *m, *mu);
            report.results = json!({
                "dm_threshold": rat_str(&t.value),
                "applicable": t.applicable,
                "strategy_threshold": rat_str(&strategy_threshold(*genus, *rank)),
            });
        }
        Command::Lattice { op } => return run_lattice(op, report),
        Command::Distinguish {
            genus,
            a_rank,
            a_degree,
            b_rank,
            b_degree,
            nef_cap,
        } => {
            let nef_cap = nef_cap
                .or_else(|| config::load().nef_cap)
                .unwrap_or_else(|| DistinguishCaps::default().nef_cap);
            report.command("distinguish");
            report.param("genus", genus);
            report.param("a_rank", a_rank);
            report.param("a_degree", a_degree);
            report.param("b_rank", b_rank);
            report.param("b_degree", b_degree);
            report.cap("nef_cap", &nef_cap);
            let trace = distinguish_pair(
                *genus,
                LinearSeries::new(*genus, *a_rank, *a_degree),
                LinearSeries::new(*genus, *b_rank, *b_degree),
                DistinguishCaps { nef_cap },
            )
            .map_err(|e| e.to_string())?;
            report.complete = trace.complete;
            failed = trace.verdict == Verdict::Inconclusive;
            report.results = json!({
                "claim": format!("M^{}_{{{},{}}} not contained in M^{}_{{{},{}}}",
                    a_rank, genus, a_degree, b_rank, genus, b_degree),
                "verdict": trace.verdict.to_string(),
                "steps": trace.steps.iter().map(|s| json!({
                    "rule": s.rule,
                    "anchor": s.anchor,
                    "evidence": s.evidence,
                })).collect::<Vec<_>>(),
            });
        }
        Command::SecantScan { max_genus } => {
            report.command("secant-scan");
            report.param("max_genus", max_genus);
            if *max_genus < 3 {
                return Err("secant-scan needs --max-genus >= 3".into());
            }
            let compute = |report: &mut RunReport| {
                let hits = scan_unexpected_containments(*max_genus);
                report.results = json!(hits
                    .iter()
                    .map(|h| json!({
                        "genus": h.g,
                        "source": series_json(&h.source),
                        "secant": { "k": h.config.k, "l": h.config.l },
                        "expected_dim": h.expected_dim,
                        "count": h.count,
                        "projected": series_json(&h.projected),
                    }))
                    .collect::<Vec<_>>());
            };
            cache::with_cache(cli, &mut report, compute)?;
        }
        Command::Region { genus, step } => {
            report.command("region");
            report.param("genus", genus);
            report.param("step", step);
            if *genus < 2 {
                return Err("region needs --genus >= 2".into());
            }
            let step = parse_rat(step)?;
            if step <= Rat::from_integer(0) {
                return Err("step must be positive".into());
            }
            let rows = region_samples(*genus, step);
            report.results = json!(rows
                .iter()
                .map(|s| json!({
                    "r": rat_str(&s.r),
                    "gamma_rho": rat_str(&s.gamma_rho),
                    "gamma_delta": render::decimal(&s.gamma_delta),
                }))
                .collect::<Vec<_>>());
        }
        Command::Counterexample { a, b } => {
            report.command("counterexample");
            report.param("a", a);
            report.param("b", b);
            let k = knutsen_counterexample(*a, *b).map_err(|e| e.to_string())?;
            report.results = json!({
                "gram": [k.lattice.h2, k.lattice.hl, k.lattice.l2],
                "curve_class": [1, 1],
                "curve_class_square": k.curve_class_square,
                "genus": k.genus,
                "series": series_json(&k.series),
                "rho": k.rho,
            });
        }
    }
    Ok((report, failed))
}

fn run_lattice(op: &LatticeOp, mut report: RunReport) -> Result<(RunReport, bool), String> {
    let fill = |report: &mut RunReport, s: &SeriesArgs| {
        report.param("genus", &s.genus);
        report.param("rank", &s.rank);
        report.param("degree", &s.degree);
    };
    match op {
        LatticeOp::Disc(s) => {
            report.command("lattice-disc");
            fill(&mut report, s);
            let l = gram_of(s.genus, s.rank, s.degree);
            report.results = json!({
                "gram": [l.h2, l.hl, l.l2],
                "disc": l.disc(),
            });
        }
        LatticeOp::Isotropic(s) => {
            report.command("lattice-isotropic");
            fill(&mut report, s);
            let l = gram_of(s.genus, s.rank, s.degree);
            let exists = l.isotropic_exists().map_err(|e| e.to_string())?;
            let witness = l.isotropic_witness().map_err(|e| e.to_string())?;
            report.results = json!({
                "exists": exists,
                "witness": witness.as_ref().map(vector_json),
            });
        }
        LatticeOp::Represents { series, norm } => {
            report.command("lattice-represents");
            fill(&mut report, series);
            report.param("norm", norm);
            let l = gram_of(series.genus, series.rank, series.degree);
            let witness = l.represents(*norm).map_err(|e| e.to_string())?;
            report.results = json!({
                "represented": witness.is_some(),
                "witness": witness.as_ref().map(vector_json),
            });
        }
        LatticeOp::Embeds {
            series,
            sub_rank,
            sub_degree,
        } => {
            report.command("lattice-embeds");
            fill(&mut report, series);
            report.param("sub_rank", sub_rank);
            report.param("sub_degree", sub_degree);
            let l = gram_of(series.genus, series.rank, series.degree);
            let emb = l
                .embeds_preserving_h(*sub_rank, *sub_degree)
                .map_err(|e| e.to_string())?;
            report.results = json!({
                "embeds": emb.is_some(),
                "witness": emb.as_ref().map(|e| vector_json(&e.vector)),
                "primitive": emb.as_ref().map(|e| e.primitive),
                "index": emb.as_ref().map(|e| e.index),
            });
        }
        LatticeOp::Invariants(s) => {
            report.command("lattice-invariants");
            fill(&mut report, s);
            let l = gram_of(s.genus, s.rank, s.degree);
            let si = l
                .surface_invariants(SearchCaps::default())
                .map_err(|e| e.to_string())?;
            report.results = json!({
                "has_isotropic": si.has_isotropic,
                "m": si.m,
                "mu": si.mu,
                "minus_two_exists": si.minus_two_exists,
                "h_orthogonal_minus_two": si.h_orthogonal_minus_two,
            });
        }
    }
    Ok((report, false))
}
