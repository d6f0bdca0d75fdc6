//! `dwtap`: secrecy-rate bounds for the degraded Gaussian diamond-wiretap
//! channel from the command line.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a numerical check
//! fails.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diamond_wiretap::analysis::{
    capacity_window, default_comparison, detect_thresholds, symmetric_capacity, CapacityFamily, Scheme,
    ThresholdReport, ThresholdSearch,
};
use diamond_wiretap::oracles::{validate_closed_forms, DmcDocument};
use diamond_wiretap::sweep::{columns_for, FullEvaluation, Scenario, Sweep, SweepParam, SweepRow};
use diamond_wiretap::{ChannelParams, Error, RandomnessBudget};
use serde::Serialize;

use output::{csv, json, num, KvDoc};

#[derive(Parser)]
#[command(
    name = "dwtap",
    version,
    about = "Secrecy capacity bounds for the Gaussian diamond-wiretap channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every bound at one parameter point.
    Eval {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value = "both", value_parser = parse_scenario)]
        scenario: Scenario,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Bounds along a grid of one parameter.
    Sweep {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_parser = parse_sweep_param)]
        param: SweepParam,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// C2 - C1 when sweeping c.
        #[arg(long, default_value_t = 0.0)]
        c2_offset: f64,
        #[arg(long, default_value = "both", value_parser = parse_scenario)]
        scenario: Scenario,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Link capacities where multicoding starts or stops beating its
    /// special cases.
    Thresholds {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 3.0)]
        to: f64,
        #[arg(long, default_value_t = 301)]
        steps: usize,
        #[arg(long, default_value_t = 0.0)]
        c2_offset: f64,
        #[arg(long, default_value = "both", value_parser = parse_scenario)]
        scenario: Scenario,
        /// Scheme to test (overrides the scenario default).
        #[arg(long, value_parser = parse_scheme)]
        lhs: Option<Scheme>,
        /// Comma-separated schemes to compare against.
        #[arg(long, value_delimiter = ',', value_parser = parse_scheme)]
        rhs: Vec<Scheme>,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Whether the scenario-2 bounds meet for a symmetric channel.
    Capacity {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Cross-check the closed forms against the log-determinant oracle.
    OracleCheck {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
    /// Rates of a finite-alphabet channel read from a JSON document.
    Dmc {
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = Format::Kv)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Kv,
    Json,
}

#[derive(Args, Clone)]
struct ChannelArgs {
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
    /// Shorthand for --p1 P --p2 P.
    #[arg(long, conflicts_with_all = ["p1", "p2"])]
    p: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    /// Shorthand for --c1 C --c2 C.
    #[arg(long, conflicts_with_all = ["c1", "c2"])]
    c: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    /// Randomness rate available for the fictitious message, or `inf`.
    #[arg(long, default_value = "inf", value_parser = parse_budget)]
    rprime: RandomnessBudget,
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    s.parse()
}

fn parse_sweep_param(s: &str) -> Result<SweepParam, String> {
    s.parse()
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
}

fn parse_budget(s: &str) -> Result<RandomnessBudget, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. }
            | Error::Domain { .. }
            | Error::EmptyInterval { .. }
            | Error::AsymmetricParams
            | Error::InvalidPmf(_)
            | Error::BudgetInfeasible { .. }
            | Error::EmptyFeasibleSet { .. } => Failure::Invalid(e.to_string()),
            Error::NoSignChange { .. }
            | Error::SingularCovariance { .. }
            | Error::NumericalMismatch { .. } => Failure::Numerical(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

impl ChannelArgs {
    /// Resolves the shorthand flags. `defaults` fills in values the caller
    /// will overwrite anyway (the swept parameter).
    fn resolve(&self, defaults: [Option<f64>; 5]) -> Result<ChannelParams, Failure> {
        let pick = |name: &str, v: Option<f64>, d: Option<f64>| {
            v.or(d)
                .ok_or_else(|| Failure::Invalid(format!("missing --{name}")))
        };
        let [dp1, dp2, dc1, dc2, dg] = defaults;
        let p1 = pick("p1 (or --p)", self.p1.or(self.p), dp1)?;
        let p2 = pick("p2 (or --p)", self.p2.or(self.p), dp2)?;
        let c1 = pick("c1 (or --c)", self.c1.or(self.c), dc1)?;
        let c2 = pick("c2 (or --c)", self.c2.or(self.c), dc2)?;
        let g = pick("g", self.g, dg)?;
        Ok(ChannelParams::new(p1, p2, c1, c2, g)?)
    }

    fn params(&self) -> Result<ChannelParams, Failure> {
        self.resolve([None; 5])
    }
}

#[derive(Serialize)]
struct EvalDocument<'a> {
    params: ChannelParams,
    budget: RandomnessBudget,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario_one: Option<&'a diamond_wiretap::scenario_one::ScenarioOneBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario_two: Option<&'a diamond_wiretap::scenario_two::ScenarioTwoBounds>,
    no_secrecy_upper: f64,
    no_secrecy_lower: f64,
}

fn params_kv(doc: &mut KvDoc, p: &ChannelParams, budget: RandomnessBudget) {
    doc.num("p1", p.p1());
    doc.num("p2", p.p2());
    doc.num("c1", p.c1());
    doc.num("c2", p.c2());
    doc.num("g", p.g());
    doc.put("rprime", budget.to_string());
}

fn cmd_eval(channel: &ChannelArgs, scenario: Scenario, format: Format) -> CmdResult {
    let p = channel.params()?;
    let e = FullEvaluation::new(&p, channel.rprime);
    Ok(match format {
        Format::Json => json(&EvalDocument {
            params: p,
            budget: channel.rprime,
            scenario_one: scenario.includes_one().then_some(&e.scenario_one),
            scenario_two: scenario.includes_two().then_some(&e.scenario_two),
            no_secrecy_upper: e.no_secrecy.upper.rate,
            no_secrecy_lower: e.no_secrecy.lower,
        }),
        Format::Csv => {
            let row = SweepRow::from_evaluation(f64::NAN, &e);
            let cols: Vec<(&str, f64)> = row.columns_for(scenario).into_iter().skip(1).collect();
            let header: Vec<&str> = cols.iter().map(|c| c.0).collect();
            csv(&header, [cols.iter().map(|c| num(c.1)).collect()])
        }
        Format::Kv => {
            let mut doc = KvDoc::default();
            params_kv(&mut doc, &p, channel.rprime);
            if scenario.includes_one() {
                let s = &e.scenario_one;
                doc.bound("ub1", &s.upper);
                doc.bound("lb1_df", &s.lower_df);
                doc.bound("lb1_pdf", &s.lower_pdf);
                doc.bound("lb1_pdfm", &s.lower_pdfm);
                doc.num("lb1", s.lower);
                for (i, d) in s.diagnostics.iter().enumerate() {
                    doc.put(format!("scenario1.diagnostic.{}", i + 1), d.clone());
                }
            }
            if scenario.includes_two() {
                let s = &e.scenario_two;
                doc.bound("ub2", &s.upper);
                doc.bound("lb2_df", &s.lower_df);
                doc.bound("lb2_pdfdfm", &s.lower_pdfdfm);
                doc.bound("lb2_pdfpdfm", &s.lower_pdfpdfm);
                doc.bound("lb2_pdfdf", &s.lower_pdfdf);
                doc.bound("lb2_pdfpdf", &s.lower_pdfpdf);
                doc.num("lb2", s.lower);
                doc.put("lb2_pdfpdfm.indicator", s.indicator_satisfied.to_string());
                for (i, d) in s.diagnostics.iter().enumerate() {
                    doc.put(format!("scenario2.diagnostic.{}", i + 1), d.clone());
                }
            }
            doc.num("nosecrecy_ub", e.no_secrecy.upper.rate);
            doc.num("nosecrecy_lb", e.no_secrecy.lower);
            doc.render()
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    channel: &ChannelArgs,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    c2_offset: f64,
    scenario: Scenario,
    format: Format,
) -> CmdResult {
    if !(from.is_finite() && to.is_finite()) {
        return Err(Failure::Invalid("--from and --to must be finite".into()));
    }
    // The swept parameter need not be given; `from` stands in for it.
    let defaults = match param {
        SweepParam::C => [None, None, Some(from), Some(from + c2_offset), None],
        SweepParam::P => [Some(from), Some(from), None, None, None],
        SweepParam::G => [None, None, None, None, Some(from)],
    };
    let base = channel.resolve(defaults)?;
    let sweep = Sweep {
        param,
        from,
        to,
        steps,
        base,
        c2_offset,
        budget: channel.rprime,
    };
    let rows = sweep.run()?;
    let key = param.to_string();
    Ok(match format {
        Format::Csv => {
            let mut header = columns_for(scenario);
            header[0] = &key;
            csv(
                &header,
                rows.iter()
                    .map(|r| r.columns_for(scenario).into_iter().map(|(_, v)| num(v)).collect()),
            )
        }
        Format::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    r.columns_for(scenario)
                        .into_iter()
                        .enumerate()
                        .map(|(i, (name, v))| {
                            let name = if i == 0 { key.clone() } else { name.to_string() };
                            (name, serde_json::json!(v))
                        })
                        .collect()
                })
                .collect();
            json(&objects)
        }
        Format::Kv => return Err(Failure::Invalid("sweep output is csv or json".into())),
    })
}

#[derive(Serialize)]
struct ThresholdDocument {
    scenario: &'static str,
    report: ThresholdReport,
    winning_intervals: Vec<(f64, f64)>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_thresholds(
    channel: &ChannelArgs,
    search: ThresholdSearch,
    c2_offset: f64,
    scenario: Scenario,
    lhs: Option<Scheme>,
    rhs: &[Scheme],
    format: Format,
) -> CmdResult {
    let probe = channel.resolve([None, None, Some(0.0), Some(c2_offset), None])?;
    if channel.c.is_some() || channel.c1.is_some() || channel.c2.is_some() {
        return Err(Failure::Invalid(
            "thresholds sweeps C; use --from/--to/--c2-offset".into(),
        ));
    }
    let family = CapacityFamily {
        p1: probe.p1(),
        p2: probe.p2(),
        g: probe.g(),
        c2_offset,
    };
    let mut runs: Vec<(&'static str, Scheme, Vec<Scheme>)> = Vec::new();
    if lhs.is_some() || !rhs.is_empty() {
        let (Some(l), false) = (lhs, rhs.is_empty()) else {
            return Err(Failure::Invalid("--lhs and --rhs go together".into()));
        };
        runs.push(("custom", l, rhs.to_vec()));
    } else {
        if scenario.includes_one() {
            let (l, r) = default_comparison(false);
            runs.push(("1", l, r));
        }
        if scenario.includes_two() {
            let (l, r) = default_comparison(true);
            runs.push(("2", l, r));
        }
    }
    let docs = runs
        .into_iter()
        .map(|(name, l, r)| {
            let report = detect_thresholds(&family, channel.rprime, l, &r, &search)?;
            Ok(ThresholdDocument {
                scenario: name,
                winning_intervals: report.winning_intervals(&search),
                report,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    Ok(match format {
        Format::Json => json(&docs),
        Format::Csv => csv(
            &["scenario", "lhs", "c", "before", "after", "tied"],
            docs.iter().flat_map(|d| {
                d.report.crossings.iter().map(|c| {
                    vec![
                        d.scenario.to_string(),
                        d.report.lhs.to_string(),
                        num(c.c),
                        format!("{:?}", c.before).to_lowercase(),
                        format!("{:?}", c.after).to_lowercase(),
                        c.tied.iter().map(|s| s.name()).collect::<Vec<_>>().join(";"),
                    ]
                })
            }),
        ),
        Format::Kv => {
            let mut doc = KvDoc::default();
            doc.num("p1", family.p1);
            doc.num("p2", family.p2);
            doc.num("g", family.g);
            doc.num("c2_offset", c2_offset);
            doc.put("rprime", channel.rprime.to_string());
            for d in &docs {
                let pre = format!("scenario{}", d.scenario);
                doc.put(format!("{pre}.lhs"), d.report.lhs.name());
                let rhs: Vec<_> = d.report.rhs.iter().map(|s| s.name()).collect();
                doc.put(format!("{pre}.rhs"), rhs.join(","));
                for (i, c) in d.report.crossings.iter().enumerate() {
                    doc.put(
                        format!("{pre}.crossing.{}", i + 1),
                        format!("{} {:?}->{:?}", num(c.c), c.before, c.after).to_lowercase(),
                    );
                }
                for (i, (a, b)) in d.winning_intervals.iter().enumerate() {
                    doc.put(
                        format!("{pre}.wins.{}", i + 1),
                        format!("{} {}", num(*a), num(*b)),
                    );
                }
            }
            doc.render()
        }
    })
}

fn cmd_capacity(channel: &ChannelArgs, format: Format) -> CmdResult {
    let p = channel.params()?;
    let v = symmetric_capacity(&p, channel.rprime)?;
    let (lo, hi) = capacity_window(p.p1())?;
    Ok(match format {
        Format::Json => json(&v),
        Format::Csv => csv(
            &[
                "applies",
                "rho_prime",
                "capacity",
                "window_lo",
                "window_hi",
                "ub2",
                "lb2",
            ],
            [vec![
                v.applies.to_string(),
                v.rho_prime.map_or("nan".into(), num),
                v.capacity.map_or("nan".into(), |c| num(c.value())),
                num(lo),
                num(hi),
                num(v.upper),
                num(v.lower),
            ]],
        ),
        Format::Kv => {
            let mut doc = KvDoc::default();
            params_kv(&mut doc, &p, channel.rprime);
            doc.put("applies", v.applies.to_string());
            doc.num("window.lo", v.condition_lower);
            doc.num("window.hi", v.condition_upper);
            if let (Some(r), Some(c)) = (v.rho_prime, v.capacity) {
                doc.num("rho_prime", r);
                doc.num("capacity", c.value());
            }
            doc.put("auxiliary", format!("{:?}", v.auxiliary));
            doc.num("ub2", v.upper);
            doc.num("lb2", v.lower);
            for (i, d) in v.diagnostics.iter().enumerate() {
                doc.put(format!("diagnostic.{}", i + 1), d.clone());
            }
            doc.render()
        }
    })
}

fn cmd_oracle_check(trials: usize, seed: u64, tol: f64, format: Format) -> CmdResult {
    let r = validate_closed_forms(trials, seed, tol)?;
    let text = match format {
        Format::Json => json(&r),
        Format::Csv => csv(
            &[
                "trial",
                "identity",
                "p1",
                "p2",
                "g",
                "rho",
                "closed_form",
                "oracle",
                "deviation",
            ],
            r.failures.iter().map(|d| {
                vec![
                    d.trial.to_string(),
                    format!("{:?}", d.identity).to_lowercase(),
                    num(d.p1),
                    num(d.p2),
                    num(d.g),
                    num(d.rho),
                    num(d.closed_form),
                    num(d.oracle),
                    num(d.deviation),
                ]
            }),
        ),
        Format::Kv => {
            let mut doc = KvDoc::default();
            doc.put("trials", r.trials.to_string());
            doc.put("seed", r.seed.to_string());
            doc.num("tolerance", r.tolerance);
            doc.put("checks", r.checks.to_string());
            doc.put("skipped", r.skipped.to_string());
            doc.num("max_deviation", r.max_deviation);
            doc.put("failures", r.failures.len().to_string());
            doc.put("result", if r.passed() { "pass" } else { "fail" });
            doc.render()
        }
    };
    if r.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Numerical(format!(
            "{} of {} checks exceed tolerance {}",
            r.failures.len(),
            r.checks,
            num(tol)
        )))
    }
}

fn cmd_dmc(path: &str, format: Format) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {path}: {e}")))?;
    let doc = DmcDocument::parse(&text)?;
    let r = doc.rates()?;
    Ok(match format {
        Format::Json => json(&r),
        Format::Csv => csv(
            &["df", "pdfm", "df2", "pdfdfm", "pdfpdfm"],
            [[r.df, r.pdfm, r.df2, r.pdfdfm, r.pdfpdfm].map(num).to_vec()],
        ),
        Format::Kv => {
            let mut kv = KvDoc::default();
            kv.num("c1", doc.c1);
            kv.num("c2", doc.c2);
            kv.num("df", r.df);
            kv.num("pdfm", r.pdfm);
            kv.num("df2", r.df2);
            kv.num("pdfdfm", r.pdfdfm);
            kv.num("pdfpdfm", r.pdfpdfm);
            let i = r.info;
            kv.num("info.sum_y", i.sum_y);
            kv.num("info.sum_z", i.sum_z);
            kv.num("info.x1_y_given_x2", i.x1_y_given_x2);
            kv.num("info.x2_y_given_x1", i.x2_y_given_x1);
            kv.num("info.x1_x2", i.x1_x2);
            kv.num("info.x1_z", i.x1_z);
            kv.num("info.x2_z", i.x2_z);
            kv.render()
        }
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Eval {
            channel,
            scenario,
            format,
        } => cmd_eval(&channel, scenario, format),
        Command::Sweep {
            channel,
            param,
            from,
            to,
            steps,
            c2_offset,
            scenario,
            format,
        } => cmd_sweep(&channel, param, from, to, steps, c2_offset, scenario, format),
        Command::Thresholds {
            channel,
            from,
            to,
            steps,
            c2_offset,
            scenario,
            lhs,
            rhs,
            format,
        } => {
            let search = ThresholdSearch {
                from,
                to,
                steps,
                ..ThresholdSearch::default()
            };
            cmd_thresholds(&channel, search, c2_offset, scenario, lhs, &rhs, format)
        }
        Command::Capacity { channel, format } => cmd_capacity(&channel, format),
        Command::OracleCheck {
            trials,
            seed,
            tol,
            format,
        } => cmd_oracle_check(trials, seed, tol, format),
        Command::Dmc { path, format } => cmd_dmc(&path, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
