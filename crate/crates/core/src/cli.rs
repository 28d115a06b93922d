//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 the property holds, 1 it fails (a witness is printed),
//! 2 bad input or flags, 3 an internal cross-check failed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::crossing::{
    check_family_sc, check_mixture_sc, check_mixture_sc_grid, check_srm, CrossingVerdict,
    FunctionFamily,
};
use crate::equivalence::{
    all_differences, check_proposition, differences_family, gen_positive_instance, gen_random_instance,
    run_campaign, CampaignConfig, Fault, InstanceGenParams, PropositionReport,
};
use crate::instance::{param_to_json, parse_instance, Instance, UtilityPair};
use crate::rational::Rational;
use crate::risk_order::{
    build_transform, check_lra_definition, check_lra_grid, check_lra_pratt, check_lra_transform,
    RiskOrderVerdict,
};
use crate::table::{expected_value, ParamUtilityTable};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const THREADS_ENV: &str = "RISKORDER_THREADS";

#[derive(Parser, Debug)]
#[command(name = "riskorder", version, about = "Exact checks for comparative risk aversion and single-crossing conditions")]
struct Cli {
    /// Emit machine-readable JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is u less risk-averse than v? Input: a utility pair.
    CheckLra {
        #[arg(long, value_enum, default_value_t = LraMethod::All)]
        method: LraMethod,
        /// Grid resolution for --method grid.
        #[arg(long)]
        denom_bound: Option<u32>,
        input: String,
    },
    /// Construct the increasing convex map with u = φ(v). Input: a utility pair.
    BuildTransform { input: String },
    /// Is every member single-crossing? Input: a function family.
    CheckSc { input: String },
    /// Signed-ratio monotonicity. Input: a function family.
    CheckSrm { input: String },
    /// Is every mixture single-crossing? Input: a family, or a parameterised
    /// utility (checked per difference family).
    CheckAggregate {
        #[arg(long, value_enum, default_value_t = AggregateMethod::Exact)]
        method: AggregateMethod,
        #[arg(long)]
        denom_bound: Option<u32>,
        input: String,
    },
    /// Compare both sides of the risk-aversion / single-crossing equivalence.
    /// Input: a parameterised utility.
    CheckProposition { input: String },
    /// Print a random parameterised-utility instance.
    GenRandom {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        alternatives: usize,
        #[arg(long, default_value_t = 3)]
        params: usize,
        /// Probability of declaring each forward pair, as "p/q" or integer.
        #[arg(long, default_value = "1/2")]
        density: String,
        #[arg(long, default_value_t = 10)]
        max_numerator: u32,
        #[arg(long, default_value_t = 4)]
        max_denominator: u32,
        /// Build a chain instance on which every slice pair is ordered
        /// (requires density 1).
        #[arg(long)]
        positive: bool,
    },
    /// Randomized cross-check of every route.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LraMethod {
    Definition,
    Pratt,
    Transform,
    Grid,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AggregateMethod {
    Exact,
    Grid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InjectedFault {
    FlipSrm,
}

const DEFAULT_DENOM_BOUND: u32 = 6;

/// Everything a run may touch besides argv.
#[derive(Debug, Clone, Default)]
pub struct Context {
    /// Bytes read when the input argument is `-`.
    pub stdin: Vec<u8>,
    /// Where reproducers are written.
    pub workdir: PathBuf,
    pub threads: Option<usize>,
}

impl Context {
    /// Working directory and thread cap from the process environment; stdin
    /// is read lazily by the binary.
    pub fn from_env(stdin: Vec<u8>) -> Result<Self, String> {
        Ok(Context {
            stdin,
            workdir: std::env::current_dir().map_err(|e| e.to_string())?,
            threads: threads_from_env()?,
        })
    }
}

pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got {s:?}")),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Output {
    fn new(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout: stdout.into_bytes(),
            stderr: Vec::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_INPUT,
            stdout: Vec::new(),
            stderr: format!("error: {message}\n").into_bytes(),
        }
    }

    fn internal(stdout: String, message: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_INTERNAL,
            stdout: stdout.into_bytes(),
            stderr: format!("internal error: {message}\n").into_bytes(),
        }
    }

    pub fn stdout_str(&self) -> &str {
        std::str::from_utf8(&self.stdout).unwrap_or("")
    }

    pub fn stderr_str(&self) -> &str {
        std::str::from_utf8(&self.stderr).unwrap_or("")
    }
}

fn code_for(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serialises");
    s.push('\n');
    s
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<S: AsRef<str>>(argv: &[S], ctx: &Context) -> Output {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::new(EXIT_HOLDS, text),
                _ => Output {
                    code: EXIT_INPUT,
                    stdout: Vec::new(),
                    stderr: text.into_bytes(),
                },
            };
        }
    };
    let json = cli.json;
    match cli.command {
        Command::CheckLra { method, denom_bound, input } => {
            if denom_bound.is_some() && method != LraMethod::Grid {
                return Output::input_error("--denom-bound is only valid with --method grid");
            }
            with_input(ctx, &input, |inst| match inst {
                Instance::Pair(p) => check_lra_cmd(&p, method, denom_bound, json),
                other => wrong_kind(&other, "a utility pair"),
            })
        }
        Command::BuildTransform { input } => with_input(ctx, &input, |inst| match inst {
            Instance::Pair(p) => build_transform_cmd(&p, json),
            other => wrong_kind(&other, "a utility pair"),
        }),
        Command::CheckSc { input } => with_input(ctx, &input, |inst| match inst {
            Instance::Family(f) => crossing_cmd(&f.family, check_family_sc(&f.family), "single-crossing", json),
            other => wrong_kind(&other, "a function family"),
        }),
        Command::CheckSrm { input } => with_input(ctx, &input, |inst| match inst {
            Instance::Family(f) => crossing_cmd(&f.family, check_srm(&f.family), "signed-ratio monotonicity", json),
            other => wrong_kind(&other, "a function family"),
        }),
        Command::CheckAggregate { method, denom_bound, input } => {
            if denom_bound.is_some() && method != AggregateMethod::Grid {
                return Output::input_error("--denom-bound is only valid with --method grid");
            }
            if denom_bound == Some(0) {
                return Output::input_error("--denom-bound must be positive");
            }
            let bound = denom_bound.unwrap_or(DEFAULT_DENOM_BOUND);
            let check = move |fam: &FunctionFamily| match method {
                AggregateMethod::Exact => check_mixture_sc(fam),
                AggregateMethod::Grid => check_mixture_sc_grid(fam, bound),
            };
            with_input(ctx, &input, |inst| match inst {
                Instance::Family(f) => crossing_cmd(&f.family, check(&f.family), "mixture single-crossing", json),
                Instance::Param(p) => aggregate_param_cmd(&p.table, &check, json),
                other => wrong_kind(&other, "a function family or parameterised utility"),
            })
        }
        Command::CheckProposition { input } => with_input(ctx, &input, |inst| match inst {
            Instance::Param(p) => proposition_cmd(&p.table, json),
            other => wrong_kind(&other, "a parameterised utility"),
        }),
        Command::GenRandom {
            seed,
            alternatives,
            params,
            density,
            max_numerator,
            max_denominator,
            positive,
        } => {
            let density: Rational = match density.parse() {
                Ok(d) => d,
                Err(e) => return Output::input_error(format!("--density: {e}")),
            };
            let gp = InstanceGenParams {
                seed,
                n_alternatives: alternatives,
                n_params: params,
                relation_density: density,
                max_abs_numerator: max_numerator,
                max_denominator,
            };
            let table = if positive {
                gen_positive_instance(&gp)
            } else {
                gen_random_instance(&gp)
            };
            match table {
                Ok(t) => Output::new(EXIT_HOLDS, pretty(&param_to_json(&t))),
                Err(e) => Output::input_error(e),
            }
        }
        Command::Selftest { instances, seed, inject_fault } => {
            if instances == 0 {
                return Output::input_error("--instances must be at least 1");
            }
            let config = CampaignConfig {
                instances,
                seed,
                fault: match inject_fault {
                    Some(InjectedFault::FlipSrm) => Fault::FlipSrmInequality,
                    None => Fault::None,
                },
                threads: ctx.threads,
            };
            selftest_cmd(&config, ctx, json)
        }
    }
}

fn with_input(ctx: &Context, input: &str, f: impl FnOnce(Instance) -> Output) -> Output {
    let bytes = if input == "-" {
        ctx.stdin.clone()
    } else {
        let path = PathBuf::from(input);
        let path = if path.is_relative() { ctx.workdir.join(path) } else { path };
        match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) => return Output::input_error(format!("cannot read {input}: {e}")),
        }
    };
    match parse_instance(&bytes) {
        Ok(inst) => f(inst),
        Err(e) => Output::input_error(e),
    }
}

fn wrong_kind(inst: &Instance, wanted: &str) -> Output {
    Output::input_error(format!("expected {wanted}, got a {}", inst.kind()))
}

fn lra_lines(out: &mut String, v: &RiskOrderVerdict, pair: &UtilityPair) {
    let _ = writeln!(out, "{}: {}", v.route, word(v.holds));
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  {}", w.explain(&pair.u, &pair.v));
    }
}

fn check_lra_cmd(pair: &UtilityPair, method: LraMethod, bound: Option<u32>, json: bool) -> Output {
    let (u, v) = (&pair.u, &pair.v);
    let bound = bound.unwrap_or(DEFAULT_DENOM_BOUND);
    if bound == 0 {
        return Output::input_error("--denom-bound must be positive");
    }
    let verdicts: Vec<RiskOrderVerdict> = match method {
        LraMethod::Definition => vec![check_lra_definition(u, v).expect("shared domain")],
        LraMethod::Pratt => vec![check_lra_pratt(u, v).expect("shared domain")],
        LraMethod::Transform => vec![check_lra_transform(u, v).expect("shared domain")],
        LraMethod::Grid => vec![check_lra_grid(u, v, bound).expect("shared domain")],
        LraMethod::All => vec![
            check_lra_definition(u, v).expect("shared domain"),
            check_lra_pratt(u, v).expect("shared domain"),
            check_lra_transform(u, v).expect("shared domain"),
        ],
    };
    let holds = verdicts[0].holds;
    let agree = verdicts.iter().all(|x| x.holds == holds);
    let lottery = pair.lottery.as_ref().map(|p| {
        let eu = expected_value(u, p).expect("shared domain");
        let ev = expected_value(v, p).expect("shared domain");
        let broken: Vec<String> = (0..u.len())
            .filter(|&y| (u.value(y) >= &eu && v.value(y) < &ev) || (u.value(y) > &eu && v.value(y) <= &ev))
            .map(|y| u.domain().label(y).to_string())
            .collect();
        (p, eu, ev, broken)
    });

    let text = if json {
        let mut obj = if verdicts.len() == 1 {
            serde_json::to_value(&verdicts[0]).expect("verdict serialises")
        } else {
            json!({ "holds": holds, "routes": verdicts })
        };
        if let Some((p, eu, ev, broken)) = &lottery {
            obj["lottery_check"] = json!({
                "lottery": p,
                "expected_u": eu,
                "expected_v": ev,
                "violated_at": broken,
            });
        }
        pretty(&obj)
    } else {
        let mut out = String::new();
        for verdict in &verdicts {
            lra_lines(&mut out, verdict, pair);
        }
        if let Some((p, eu, ev, broken)) = &lottery {
            let _ = writeln!(out, "lottery p = {p}: E_p[u] = {eu}, E_p[v] = {ev}");
            if broken.is_empty() {
                let _ = writeln!(out, "  consistent with u less risk-averse than v at every y");
            } else {
                let _ = writeln!(out, "  implication broken at y in {{{}}}", broken.join(", "));
            }
        }
        out
    };
    if !agree {
        return Output::internal(text, "routes disagree on this input");
    }
    Output::new(code_for(holds), text)
}

fn build_transform_cmd(pair: &UtilityPair, json: bool) -> Output {
    match build_transform(&pair.u, &pair.v) {
        Ok(phi) => {
            let text = if json {
                pretty(&json!({
                    "holds": true,
                    "route": "transform",
                    "knots": phi.knots(),
                    "slopes": phi.slopes(),
                }))
            } else {
                let knots: Vec<String> = phi.knots().iter().map(|(t, y)| format!("({t}, {y})")).collect();
                let slopes: Vec<String> = phi.slopes().iter().map(|s| s.to_string()).collect();
                format!(
                    "transform: holds\n  knots: {}\n  slopes: {}\n",
                    knots.join(" "),
                    if slopes.is_empty() { "-".to_string() } else { slopes.join(" ") }
                )
            };
            Output::new(EXIT_HOLDS, text)
        }
        Err(e) => {
            let verdict = check_lra_transform(&pair.u, &pair.v).expect("shared domain");
            let text = if json {
                pretty(&json!({
                    "holds": false,
                    "route": "transform",
                    "error": e.to_string(),
                    "witness": verdict.witness,
                }))
            } else {
                let mut out = format!("transform: fails\n  {e}\n");
                if let Some(w) = &verdict.witness {
                    let _ = writeln!(out, "  {}", w.explain(&pair.u, &pair.v));
                }
                out
            };
            Output::new(EXIT_FAILS, text)
        }
    }
}

fn crossing_cmd(family: &FunctionFamily, verdict: CrossingVerdict, what: &str, json: bool) -> Output {
    let text = if json {
        pretty(&serde_json::to_value(&verdict).expect("verdict serialises"))
    } else {
        let mut out = format!("{what}: {}\n", word(verdict.holds));
        if let Some(w) = &verdict.witness {
            let _ = writeln!(out, "  {}", w.explain(family));
        }
        out
    };
    Output::new(code_for(verdict.holds), text)
}

fn aggregate_param_cmd(
    table: &ParamUtilityTable,
    check: &dyn Fn(&FunctionFamily) -> CrossingVerdict,
    json: bool,
) -> Output {
    let per_y: Vec<(String, FunctionFamily, CrossingVerdict)> = table
        .alternatives()
        .labels()
        .iter()
        .map(|y| {
            let fam = differences_family(table, y).expect("label from table");
            let v = check(&fam);
            (y.clone(), fam, v)
        })
        .collect();
    let holds = per_y.iter().all(|(_, _, v)| v.holds);
    let text = if json {
        let items: Vec<Value> = per_y
            .iter()
            .map(|(y, _, v)| json!({ "y": y, "verdict": v }))
            .collect();
        pretty(&json!({ "holds": holds, "per_y": items }))
    } else {
        let mut out = format!("mixture single-crossing of difference families: {}\n", word(holds));
        for (y, fam, v) in &per_y {
            let _ = writeln!(out, "  y = {y}: {}", word(v.holds));
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "    {}", w.explain(fam));
            }
        }
        out
    };
    Output::new(code_for(holds), text)
}

fn proposition_text(table: &ParamUtilityTable, r: &PropositionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "side (a), every lower slice less risk-averse: {}", word(r.side_a.holds));
    if let Some(p) = r.side_a.first_failure() {
        let (t, tp) = (
            table.params().index_of(&p.theta).expect("label"),
            table.params().index_of(&p.theta_prime).expect("label"),
        );
        let _ = writeln!(out, "  first failing pair {} <= {}", p.theta, p.theta_prime);
        if let Some(w) = &p.verdict.witness {
            let _ = writeln!(out, "  {}", w.explain(&table.slice(t), &table.slice(tp)));
        }
    }
    let _ = writeln!(out, "side (a) by ordinal + compression: {}", word(r.side_a_pratt.holds));
    let _ = writeln!(out, "side (b): {}", word(r.side_b.holds));
    let _ = writeln!(out, "  single-crossing differences: {}", word(r.side_b.sc.holds));
    if let Some(w) = &r.side_b.sc.witness {
        let _ = writeln!(out, "    {}", w.explain(&all_differences(table)));
    }
    for (y, v) in &r.side_b.srm {
        let _ = writeln!(out, "  signed-ratio monotonicity, y = {y}: {}", word(v.holds));
        if let Some(w) = &v.witness {
            let fam = differences_family(table, y).expect("label");
            let _ = writeln!(out, "    {}", w.explain(&fam));
        }
    }
    let _ = writeln!(out, "mixture route: {}", word(r.mixture_holds()));
    for (y, v) in r.mixture.iter().filter(|(_, v)| !v.holds) {
        if let Some(w) = &v.witness {
            let fam = differences_family(table, y).expect("label");
            let _ = writeln!(out, "  y = {y}: {}", w.explain(&fam));
        }
    }
    let _ = writeln!(out, "agree: {}", if r.agree { "yes" } else { "no" });
    out
}

fn proposition_cmd(table: &ParamUtilityTable, json: bool) -> Output {
    match check_proposition(table) {
        Ok(report) => {
            let text = if json {
                pretty(&serde_json::to_value(&report).expect("report serialises"))
            } else {
                proposition_text(table, &report)
            };
            Output::new(code_for(report.holds()), text)
        }
        Err(v) => Output::internal(String::new(), v),
    }
}

fn selftest_cmd(config: &CampaignConfig, ctx: &Context, json: bool) -> Output {
    let summary = run_campaign(config);
    let mut dumped = Vec::new();
    for (name, violation) in &summary.failures {
        let path = ctx.workdir.join(format!("riskorder-repro-{}-{name}.json", config.seed));
        match std::fs::write(&path, pretty(&violation.instance)) {
            Ok(()) => dumped.push((path, violation.message.clone())),
            Err(e) => {
                return Output::internal(String::new(), format!("cannot write {}: {e}", path.display()))
            }
        }
    }
    let text = if json {
        let mut v = serde_json::to_value(&summary).expect("summary serialises");
        v["passed"] = json!(summary.passed());
        v["reproducers"] = json!(dumped
            .iter()
            .map(|(p, m)| json!({ "file": p.file_name().map(|f| f.to_string_lossy().into_owned()), "message": m }))
            .collect::<Vec<_>>());
        pretty(&v)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "instances: {} random + {} constructive", summary.random_instances, summary.constructive_instances);
        let _ = writeln!(out, "side (a) held on: {}", summary.holding);
        let _ = writeln!(out, "proof routes matched: {}/{}", summary.proof_routes_matched, summary.total());
        let _ = writeln!(out, "disagreements: {}", summary.disagreements);
        let _ = writeln!(out, "oracle mismatches: {}", summary.oracle_mismatches);
        for (p, m) in &dumped {
            let _ = writeln!(out, "reproducer: {} ({m})", p.file_name().unwrap_or_default().to_string_lossy());
        }
        let _ = writeln!(out, "{}", if summary.passed() { "selftest passed" } else { "selftest FAILED" });
        out
    };
    if summary.passed() {
        Output::new(EXIT_HOLDS, text)
    } else {
        Output::internal(text, "cross-checks disagreed; see reproducers")
    }
}
