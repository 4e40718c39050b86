use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use quadit::exact::{
    check_nu_bounds_for, falling_coeffs, nu_paths_agree, nu_weights, CurveCountTable, DyadicRational,
    MuSequence, MU_EXACT_CAP,
};
use quadit::field::{FieldContext, PolyMap, QuadMap};
use quadit::graph::{count_proper, proper_graphs, WeightedCompleteGraph};
use quadit::harness::{
    corollary1_scan, emit, factor_with_restarts, identity_check, lemma1_sweep, table1, theorem1_sweep,
    translate_general_quadratic, ExperimentConfig, Format, RhoOutcome, DEFAULT_RESTARTS,
};
use quadit::image::{image_iterate, rho_histogram};
use quadit::orbit::{critical_orbit_distinct, orbit_shape, CollisionPair, OrbitShape};

/// Exact computations and experiments for iterated quadratic maps over F_p.
#[derive(Parser)]
#[command(name = "quadit", version)]
struct Cli {
    #[command(flatten)]
    out: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: quadit::Error| e.to_string())
}

#[derive(Args, Clone)]
struct SweepArgs {
    /// Primes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    prime: Vec<u64>,
    /// Largest level.
    #[arg(long, default_value_t = 3)]
    r: u32,
    /// Smallest level.
    #[arg(long, default_value_t = 0)]
    rmin: u32,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl SweepArgs {
    fn config(&self, out: &Output) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(self.prime.clone(), self.rmin, self.r, self.samples, self.seed);
        cfg.threads = self.threads;
        cfg.format = out.format;
        cfg.output = out.out.clone();
        cfg
    }
}

#[derive(Args, Clone, Copy)]
struct MapArgs {
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    a: u64,
    #[arg(long, default_value_t = 1)]
    c: u64,
}

impl MapArgs {
    fn map(&self) -> Result<QuadMap> {
        let ctx = FieldContext::new(self.prime)?;
        Ok(QuadMap::new(ctx, self.a, self.c)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// mu_r and nu_r = 2/mu_r for r = 0..=R, with the bounds r+2 <= nu_r <= r+3+ln r.
    Mu {
        #[arg(long)]
        r: u32,
        /// Print numerators in full however long.
        #[arg(long)]
        full: bool,
    },
    /// Weights nu(r; m) of E(X; r) = sum_m nu(r; m) e^{mX}.
    NuWeights {
        #[arg(long)]
        r: u32,
    },
    /// Curve counts N(r; k).
    CurveCounts {
        #[arg(long)]
        rmax: u32,
        #[arg(long)]
        kmax: u32,
    },
    /// Coefficients of prod_{j=1}^{2^r} (j - T) / (2^r)!.
    Coeffs {
        #[arg(long)]
        r: u32,
    },
    /// Count (and optionally list) proper complete (D, k)-graphs.
    ProperGraphs {
        #[arg(long, allow_hyphen_values = true)]
        d: i8,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        list: bool,
    },
    /// Tail and cycle length of m under aX^2 + c.
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 0)]
        m: u64,
    },
    /// #f^r(F_p) for r = 0..=R against mu_r p.
    ImageSize {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        r: u32,
    },
    /// Moments N(r; k) = sum_m rho_r(m)^k for k = 0..=K.
    Moments {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
    },
    /// p - sum_k C_{r,k} N(r; k) = #f^r(F_p) and the factorization of f^r(X) - f^r(Y).
    IdentityCheck(SweepArgs),
    /// Cycle lengths of 0 under X^3 + c, binned by l/p.
    Table1 {
        #[arg(long, value_delimiter = ',', required = true)]
        prime: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// #f^r(F_p) - mu_r p over seeded maps.
    Theorem1Sweep(SweepArgs),
    /// N(r; 2) - (r + 1) p over seeded maps.
    Lemma1Sweep(SweepArgs),
    /// First repeat in the orbit of 0 over seeded maps.
    Corollary1Scan(SweepArgs),
    /// Pollard rho on an odd composite.
    Pollard {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        c: u64,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = 1 << 22)]
        max_steps: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: u32,
    },
    /// Conjugate aX^2 + bX + c to aX^2 + c' by X -> X + d.
    Translate {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
    },
}

/// Longest numerator printed without `--full`.
const SHORT_BITS: u64 = 4096;

fn dyadic_text(x: &DyadicRational, full: bool) -> String {
    if full || x.numerator().bits() <= SHORT_BITS {
        x.to_string()
    } else {
        format!("<{}-bit numerator>/2^{}", x.numerator().bits(), x.log2_denominator())
    }
}

#[derive(Serialize)]
struct MuRow {
    r: u32,
    mu: String,
    mu_f64: f64,
    nu_f64: f64,
    exact: bool,
    nu_paths_agree: Option<bool>,
    lower_bound: Option<bool>,
    upper_bound: Option<bool>,
}

#[derive(Serialize)]
struct IndexedValue {
    index: u64,
    value: String,
}

#[derive(Serialize)]
struct CurveCountRow {
    r: u32,
    k: u32,
    count: String,
}

#[derive(Serialize)]
struct ProperGraphReport {
    d: i8,
    k: usize,
    count: String,
    curve_count: String,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    graphs: Option<Vec<WeightedCompleteGraph>>,
}

#[derive(Serialize)]
struct ProperGraphRow {
    d: i8,
    k: usize,
    count: String,
    curve_count: String,
    agree: bool,
}

#[derive(Serialize)]
struct OrbitReport {
    p: u64,
    a: u64,
    c: u64,
    m: u64,
    tail: u64,
    cycle: u64,
    critical_collision_i: Option<u64>,
    critical_collision_j: Option<u64>,
}

#[derive(Serialize)]
struct ImageRow {
    p: u64,
    a: u64,
    c: u64,
    r: u32,
    size: u64,
    mu_p: f64,
    deviation: String,
    hypothesis: bool,
}

#[derive(Serialize)]
struct MomentRow {
    p: u64,
    a: u64,
    c: u64,
    r: u32,
    k: u32,
    moment: String,
}

#[derive(Serialize)]
struct TranslateReport {
    p: u64,
    a: u64,
    c_prime: u64,
    d: u64,
}

#[derive(Serialize)]
struct PollardRow {
    n: u64,
    factor: Option<u64>,
    cofactor: Option<u64>,
}

#[derive(Serialize)]
struct PollardReport {
    n: u64,
    factor: Option<u64>,
    cofactor: Option<u64>,
    outcome: RhoOutcome,
    constants_tried: Vec<u64>,
}

fn run(cli: Cli) -> Result<bool> {
    let fmt = cli.out.format;
    let path = cli.out.out.as_deref();
    match cli.command {
        Command::Mu { r, full } => {
            let rows: Vec<MuRow> = MuSequence::new()
                .take(r as usize + 1)
                .map(|m| {
                    let bounds = (m.r >= 1).then(|| check_nu_bounds_for(&m));
                    MuRow {
                        r: m.r,
                        mu: dyadic_text(&m.value, full),
                        mu_f64: m.value.to_f64(),
                        nu_f64: 2.0 / m.value.to_f64(),
                        exact: m.exact,
                        nu_paths_agree: (m.r <= 20).then(|| nu_paths_agree(m.r)),
                        lower_bound: bounds.map(|b| b.lower_holds),
                        upper_bound: bounds.map(|b| b.upper_certified),
                    }
                })
                .collect();
            let ok = rows.iter().all(|x| {
                x.nu_paths_agree != Some(false) && x.lower_bound != Some(false) && x.upper_bound != Some(false)
            });
            if r > MU_EXACT_CAP {
                eprintln!("note: values past r = {MU_EXACT_CAP} are rounded and flagged inexact");
            }
            emit(&rows, &rows, fmt, path)?;
            Ok(ok)
        }
        Command::NuWeights { r } => {
            let w = nu_weights(r)?;
            let rows: Vec<IndexedValue> = w
                .support()
                .into_iter()
                .map(|(m, x)| IndexedValue { index: m as u64, value: x.to_string() })
                .collect();
            emit(&w, &rows, fmt, path)?;
            Ok(w.total() == DyadicRational::one())
        }
        Command::CurveCounts { rmax, kmax } => {
            let t = CurveCountTable::new(rmax, kmax)?;
            let rows: Vec<CurveCountRow> = (0..=rmax)
                .flat_map(|r| (0..=kmax).map(move |k| (r, k)))
                .map(|(r, k)| CurveCountRow { r, k, count: t.get(r, k).to_string() })
                .collect();
            emit(&t, &rows, fmt, path)?;
            Ok(true)
        }
        Command::Coeffs { r } => {
            let c = falling_coeffs(r)?;
            let rows: Vec<IndexedValue> = c
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, x)| IndexedValue { index: k as u64, value: x.to_string() })
                .collect();
            emit(&c, &rows, fmt, path)?;
            Ok(true)
        }
        Command::ProperGraphs { d, k, list } => {
            let count = count_proper(d, k)?;
            let r = (d as i32 + 1) as u32;
            let expected = quadit::exact::curve_count(r, k as u32)?;
            let agree = count == expected;
            let graphs = if list { Some(proper_graphs(d, k)?) } else { None };
            let row = ProperGraphRow {
                d,
                k,
                count: count.to_string(),
                curve_count: expected.to_string(),
                agree,
            };
            let report = ProperGraphReport {
                d,
                k,
                count: row.count.clone(),
                curve_count: row.curve_count.clone(),
                agree,
                graphs,
            };
            emit(&report, &[row], fmt, path)?;
            Ok(agree)
        }
        Command::Orbit { map, m } => {
            let f = map.map()?;
            let OrbitShape { tail, cycle } = orbit_shape(&f, f.context().element(m))?;
            let collision: Option<CollisionPair> = critical_orbit_distinct(&f, map.prime).1;
            let report = OrbitReport {
                p: map.prime,
                a: f.a(),
                c: f.c(),
                m: m % map.prime,
                tail,
                cycle,
                critical_collision_i: collision.map(|x| x.i),
                critical_collision_j: collision.map(|x| x.j),
            };
            emit(&report, &[&report], fmt, path)?;
            Ok(true)
        }
        Command::ImageSize { map, r } => {
            let f = map.map()?;
            let p = map.prime;
            let mus: Vec<_> = MuSequence::new().take(r as usize + 1).collect();
            let mut rows = Vec::new();
            for level in 0..=r {
                let size = image_iterate(&f, level)?.size();
                let main = &mus[level as usize].value * &DyadicRational::from_integer(p);
                let dev = &DyadicRational::from_integer(size) - &main;
                rows.push(ImageRow {
                    p,
                    a: f.a(),
                    c: f.c(),
                    r: level,
                    size,
                    mu_p: main.to_f64(),
                    deviation: dyadic_text(&dev, false),
                    hypothesis: critical_orbit_distinct(&f, level as u64).0,
                });
            }
            emit(&rows, &rows, fmt, path)?;
            Ok(true)
        }
        Command::Moments { map, r, k } => {
            let f = map.map()?;
            let h = rho_histogram(&f, r)?;
            let rows: Vec<MomentRow> = (0..=k)
                .map(|j| MomentRow {
                    p: map.prime,
                    a: f.a(),
                    c: f.c(),
                    r,
                    k: j,
                    moment: h.moment(j).to_string(),
                })
                .collect();
            let ok = k < 1 || rows[1].moment == map.prime.to_string();
            emit(&rows, &rows, fmt, path)?;
            Ok(ok)
        }
        Command::IdentityCheck(args) => {
            let rep = identity_check(&args.config(&cli.out))?;
            emit(&rep, &rep.records, fmt, path)?;
            Ok(rep.passed())
        }
        Command::Table1 { prime, threads } => {
            let mut reports = Vec::new();
            for p in prime {
                reports.push(table1(p, threads)?);
            }
            let ok = reports.iter().all(|t| t.total() == t.p - 1);
            let rows: Vec<_> = reports.iter().flat_map(|t| t.rows()).collect();
            emit(&reports, &rows, fmt, path)?;
            Ok(ok)
        }
        Command::Theorem1Sweep(args) => {
            let rep = theorem1_sweep(&args.config(&cli.out))?;
            emit(&rep, &rep.records, fmt, path)?;
            Ok(rep.passed())
        }
        Command::Lemma1Sweep(args) => {
            let rep = lemma1_sweep(&args.config(&cli.out))?;
            emit(&rep, &rep.records, fmt, path)?;
            Ok(rep.passed())
        }
        Command::Corollary1Scan(args) => {
            let rep = corollary1_scan(&args.config(&cli.out))?;
            emit(&rep, &rep.records, fmt, path)?;
            Ok(rep.passed())
        }
        Command::Pollard { n, a, c, m, max_steps, restarts } => {
            let rep = factor_with_restarts(n, a, c, m, max_steps, restarts)?;
            let factor = match rep.outcome {
                RhoOutcome::Factor(d) => Some(d),
                RhoOutcome::Failure(_) => None,
            };
            let ok = factor.is_none_or(|d| n % d == 0 && d > 1 && d < n);
            let report = PollardReport {
                n,
                factor,
                cofactor: rep.cofactor,
                outcome: rep.outcome,
                constants_tried: rep.constants_tried,
            };
            let row = PollardRow { n, factor, cofactor: report.cofactor };
            emit(&report, &[row], fmt, path)?;
            Ok(ok)
        }
        Command::Translate { prime, a, b, c } => {
            let ctx = FieldContext::new(prime)?;
            let (g, d) = translate_general_quadratic(ctx, a, b, c)?;
            let report = TranslateReport { p: prime, a: g.a(), c_prime: g.c(), d: d.value() };
            emit(&report, &[&report], fmt, path)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).context("quadit") {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("quadit: a checked property failed; see the output for details");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e:#}");
            ExitCode::FAILURE
        }
    }
}
