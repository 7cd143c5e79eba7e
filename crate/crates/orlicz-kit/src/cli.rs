//! Command-line front end.
//!
//! Everything routes through [`run`], which takes the argument vector and a
//! writer, so the integration tests drive the binary in-process. Exit codes:
//! `0` the command ran and every checked statement held, `1` the command ran
//! and some checked statement failed (a bound missed, routes disagreed, a
//! campaign found counterexamples), `2` the inputs were unusable (bad flags,
//! unreadable files, malformed descriptors, or a computation that could not
//! be carried out).
//!
//! Anywhere a descriptor is expected, the argument is either a path or —
//! when it starts with `{` — the JSON itself. `--json` wraps the result in
//! a `{"schema": 1, …}` envelope with floats printed to 17 significant
//! digits, enough to round-trip `f64` exactly.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::fuzz::{run_campaign, CampaignConfig, CheckKind};
use crate::measure::SimpleFunction;
use crate::multipliers::{
    estimate_constants, example_asymptotics_audit, holder_verify, pwm_bruteforce, ratio_curve,
    witness, witness_y3, GridSpec,
};
use crate::norms::{lux_norm, weak_norm, weak_sup_form1, weak_sup_form2, weak_sup_form3};
use crate::tol;
use crate::xreal::ExtReal;
use crate::young::{YoungClass, YoungFunction};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Young(#[from] crate::young::YoungError),
    #[error("{0}")]
    Measure(#[from] crate::measure::MeasureError),
    #[error("{0}")]
    Norm(#[from] crate::norms::NormError),
    #[error("{0}")]
    Multiplier(#[from] crate::multipliers::MultiplierError),
    #[error("{0}")]
    Fuzz(#[from] crate::fuzz::FuzzError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Msg(String),
}

#[derive(Parser)]
#[command(
    name = "orlicz-kit",
    version,
    about = "Young-function calculus and weak Orlicz quasi-norms on finite atomic spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weak or Luxemburg norm of a simple function.
    Norm(NormArgs),
    /// Generalized inverse of a Young function at a level.
    Inverse(InverseArgs),
    /// Pointwise product/quotient constants of a triple, with the ratio curve.
    Constants(ConstantsArgs),
    /// Verify the product-norm bound on a concrete pair.
    HolderCheck(HolderArgs),
    /// Build the converse witness for a concrete function and check it.
    WitnessCheck(WitnessArgs),
    /// Brute-force lower bound on a pointwise multiplier norm.
    PwmBound(PwmArgs),
    /// Cross-check the three routes to the weak supremum.
    EquivCheck(EquivArgs),
    /// Growth-rate tables for the worked parametric families.
    Examples(ExamplesArgs),
    /// Seeded randomized campaign over the library invariants.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct NormArgs {
    /// Young function (JSON inline or path)
    #[arg(long)]
    phi: String,
    /// Simple function (JSON or CSV, inline or path)
    #[arg(long)]
    f: String,
    /// Which norm to compute
    #[arg(long, default_value = "weak", value_parser = ["weak", "lux"])]
    kind: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InverseArgs {
    #[arg(long)]
    phi: String,
    /// Level u ≥ 0, or "inf"
    #[arg(long)]
    u: String,
    /// Use the branch that maps ∞ to the finiteness endpoint
    #[arg(long)]
    alt: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-9)]
    lo: f64,
    #[arg(long, default_value_t = 1e9)]
    hi: f64,
    #[arg(long, default_value_t = 2001)]
    points: usize,
}

impl GridArgs {
    fn spec(&self) -> GridSpec {
        GridSpec {
            lo: self.lo,
            hi: self.hi,
            points: self.points,
        }
    }
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    phi1: String,
    #[arg(long)]
    phi2: String,
    #[arg(long)]
    phi3: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Emit the full ratio curve as CSV rows (text mode only)
    #[arg(long)]
    curve: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HolderArgs {
    #[arg(long)]
    phi1: String,
    #[arg(long)]
    phi2: String,
    #[arg(long)]
    phi3: String,
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    /// Claimed upper constant; estimated from the triple when omitted
    #[arg(long)]
    constant: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    phi1: String,
    #[arg(long)]
    phi2: String,
    #[arg(long)]
    phi3: String,
    #[arg(long)]
    g: String,
    /// Claimed lower constant; estimated from the triple when omitted
    #[arg(long)]
    constant: Option<f64>,
    /// Envelope parameter in (0,1), used when Φ2 or Φ3 has a finite jump
    #[arg(long, default_value_t = 0.9)]
    delta: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PwmArgs {
    #[arg(long)]
    phi1: String,
    #[arg(long)]
    phi2: String,
    #[arg(long)]
    g: String,
    /// Number of ratio evaluations the search may spend
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    phi: String,
    #[arg(long)]
    f: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExamplesArgs {
    #[arg(long, default_value_t = 801)]
    points: usize,
    /// Emit the sampled ratio curves as CSV rows (text mode only)
    #[arg(long)]
    curve: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FuzzArgs {
    /// Campaign config (JSON inline or path); flags below override it
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    max_atoms: Option<usize>,
    #[arg(long)]
    max_segments: Option<usize>,
    /// Comma-separated check names (e.g. "holder,witness,quasi-triangle")
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Parses the argument vector, runs the command, writes the report to
/// `out`, and returns the process exit code.
pub fn run<I, T, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Norm(a) => cmd_norm(a, out),
        Cmd::Inverse(a) => cmd_inverse(a, out),
        Cmd::Constants(a) => cmd_constants(a, out),
        Cmd::HolderCheck(a) => cmd_holder(a, out),
        Cmd::WitnessCheck(a) => cmd_witness(a, out),
        Cmd::PwmBound(a) => cmd_pwm(a, out),
        Cmd::EquivCheck(a) => cmd_equiv(a, out),
        Cmd::Examples(a) => cmd_examples(a, out),
        Cmd::Fuzz(a) => cmd_fuzz(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

// ----- input loading ----------------------------------------------------------

/// Inline JSON if the argument starts with `{`, otherwise file contents.
fn load_text(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn load_young(arg: &str) -> Result<YoungFunction, CliError> {
    Ok(YoungFunction::from_json(&load_text(arg)?)?)
}

/// JSON if the content starts with `{`, otherwise `weight,value` CSV.
fn load_simple(arg: &str) -> Result<SimpleFunction, CliError> {
    let text = load_text(arg)?;
    if text.trim_start().starts_with('{') {
        Ok(SimpleFunction::from_json(&text)?)
    } else {
        Ok(SimpleFunction::from_csv(&text)?)
    }
}

fn parse_level(s: &str) -> Result<ExtReal, CliError> {
    if s.trim() == "inf" {
        return Ok(ExtReal::INF);
    }
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Msg(format!("level must be a number or \"inf\", got {s:?}")))?;
    ExtReal::new(v).map_err(|e| CliError::Msg(e.to_string()))
}

// ----- output ----------------------------------------------------------------

/// JSON formatter printing every float with 17 significant digits, so a
/// reader parsing the output recovers the exact bit pattern.
struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn emit_json<W: Write, T: Serialize>(
    out: &mut W,
    command: &str,
    payload: &T,
) -> Result<(), CliError> {
    let envelope = json!({
        "schema": 1,
        "command": command,
        "result": serde_json::to_value(payload)?,
    });
    let mut ser = serde_json::Serializer::with_formatter(&mut *out, Sig17);
    envelope.serialize(&mut ser)?;
    writeln!(out)?;
    Ok(())
}

// ----- commands ----------------------------------------------------------------

fn cmd_norm<W: Write>(a: NormArgs, out: &mut W) -> Result<i32, CliError> {
    let phi = load_young(&a.phi)?;
    let f = load_simple(&a.f)?;
    let n = match a.kind.as_str() {
        "weak" => weak_norm(&phi, &f)?,
        _ => lux_norm(&phi, &f)?,
    };
    if a.json {
        emit_json(out, "norm", &json!({ "kind": a.kind, "norm": n }))?;
    } else {
        writeln!(out, "{} norm = {}", a.kind, n.value)?;
        writeln!(out, "method = {:?}", n.method)?;
        if let Some(r) = n.residual {
            writeln!(out, "criterion residual at the norm = {r}")?;
        }
    }
    Ok(0)
}

fn cmd_inverse<W: Write>(a: InverseArgs, out: &mut W) -> Result<i32, CliError> {
    let phi = load_young(&a.phi)?;
    let u = parse_level(&a.u)?;
    let value = if a.alt {
        phi.inverse_alt(u)
    } else {
        phi.inverse(u)
    };
    if a.json {
        emit_json(
            out,
            "inverse",
            &json!({ "u": u, "alt": a.alt, "value": value }),
        )?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(0)
}

fn cmd_constants<W: Write>(a: ConstantsArgs, out: &mut W) -> Result<i32, CliError> {
    let phi1 = load_young(&a.phi1)?;
    let phi2 = load_young(&a.phi2)?;
    let phi3 = load_young(&a.phi3)?;
    let grid = a.grid.spec();
    let constants = estimate_constants(&phi1, &phi2, &phi3, &grid)?;
    if a.json {
        let curve = ratio_curve(&phi1, &phi2, &phi3, &grid)?;
        let rows: Vec<_> = curve
            .iter()
            .map(|&(u, up, lo)| json!({ "u": u, "upper": up, "lower": lo }))
            .collect();
        emit_json(
            out,
            "constants",
            &json!({ "constants": constants, "curve": rows }),
        )?;
        return Ok(0);
    }
    writeln!(
        out,
        "# c_upper = {} at u = {}{}",
        constants.c_upper,
        constants.argmax_upper,
        if constants.upper_unbounded {
            " (unbounded)"
        } else {
            ""
        }
    )?;
    writeln!(
        out,
        "# c_lower = {} at u = {}{}",
        constants.c_lower,
        constants.argmax_lower,
        if constants.lower_unbounded {
            " (unbounded)"
        } else {
            ""
        }
    )?;
    if a.curve {
        writeln!(out, "u,upper,lower")?;
        for (u, up, lo) in ratio_curve(&phi1, &phi2, &phi3, &grid)? {
            writeln!(out, "{u},{up},{lo}")?;
        }
    }
    Ok(0)
}

fn cmd_holder<W: Write>(a: HolderArgs, out: &mut W) -> Result<i32, CliError> {
    let phi1 = load_young(&a.phi1)?;
    let phi2 = load_young(&a.phi2)?;
    let phi3 = load_young(&a.phi3)?;
    let f = load_simple(&a.f)?;
    let g = load_simple(&a.g)?;
    let c = match a.constant {
        Some(c) => c,
        None => {
            let mut constants = estimate_constants(&phi1, &phi2, &phi3, &a.grid.spec())?;
            let (nf, ng) = (weak_norm(&phi1, &f)?.value, weak_norm(&phi3, &g)?.value);
            if nf > 0.0 && ng > 0.0 {
                let levels: Vec<f64> = f
                    .values()
                    .iter()
                    .zip(g.values())
                    .filter_map(|(&fv, &gv)| {
                        phi1.eval_f(fv / nf).max(phi3.eval_f(gv / ng)).to_finite()
                    })
                    .collect();
                constants.augment_upper_at(&phi1, &phi2, &phi3, &levels);
            }
            if !constants.c_upper.is_finite() || constants.c_upper == 0.0 {
                writeln!(
                    out,
                    "FAIL no finite product constant at the levels this pair touches"
                )?;
                return Ok(1);
            }
            constants.c_upper
        }
    };
    let rep = holder_verify(&phi1, &phi2, &phi3, c, &f, &g)?;
    if a.json {
        emit_json(out, "holder-check", &rep)?;
    } else {
        writeln!(
            out,
            "{} ‖fg‖ = {} ≤ 4·{}·{}·{} = {}",
            if rep.ok() { "PASS" } else { "FAIL" },
            rep.norm_fg,
            rep.constant,
            rep.norm_f,
            rep.norm_g,
            rep.bound
        )?;
        for line in &rep.failures {
            writeln!(out, "  {line}")?;
        }
    }
    Ok(if rep.ok() { 0 } else { 1 })
}

fn cmd_witness<W: Write>(a: WitnessArgs, out: &mut W) -> Result<i32, CliError> {
    let phi1 = load_young(&a.phi1)?;
    let phi2 = load_young(&a.phi2)?;
    let phi3 = load_young(&a.phi3)?;
    let g = load_simple(&a.g)?;
    let needs_envelope = phi2.classify() == YoungClass::Y3 || phi3.classify() == YoungClass::Y3;
    let c = match a.constant {
        Some(c) => c,
        None => {
            let mut constants = estimate_constants(&phi1, &phi2, &phi3, &a.grid.spec())?;
            let ng = weak_norm(&phi3, &g)?.value;
            if ng > 0.0 {
                let mut levels: Vec<f64> = g
                    .values()
                    .iter()
                    .filter_map(|&gv| phi3.eval_f(gv / ng).to_finite().filter(|&u| u > 0.0))
                    .collect();
                if phi3.classify() == YoungClass::Y3 {
                    let psi3 = phi3.envelope_y2(a.delta)?;
                    let npsi = weak_norm(&psi3, &g)?.value;
                    levels.extend(g.values().iter().filter_map(|&gv| {
                        psi3.eval_f(gv / npsi).to_finite().filter(|&u| u > 0.0)
                    }));
                }
                constants.augment_lower_at(&phi1, &phi2, &phi3, &levels);
            }
            if !constants.c_lower.is_finite() || constants.c_lower == 0.0 {
                writeln!(
                    out,
                    "FAIL no finite quotient constant at the levels this function touches"
                )?;
                return Ok(1);
            }
            constants.c_lower
        }
    };
    let rep = if needs_envelope {
        witness_y3(&phi1, &phi2, &phi3, c, &g, a.delta)?
    } else {
        witness(&phi1, &phi2, &phi3, c, &g)?
    };
    if a.json {
        emit_json(out, "witness-check", &rep)?;
    } else {
        writeln!(
            out,
            "{} ‖hg‖ = {} ≥ ({}/{})·‖g‖ = {}",
            if rep.ok() { "PASS" } else { "FAIL" },
            rep.norm_hg,
            rep.factor,
            rep.constant,
            rep.lower_bound
        )?;
        writeln!(out, "‖h‖ = {} (must be ≤ 1)", rep.norm_h)?;
        for line in &rep.failures {
            writeln!(out, "  {line}")?;
        }
    }
    Ok(if rep.ok() { 0 } else { 1 })
}

fn cmd_pwm<W: Write>(a: PwmArgs, out: &mut W) -> Result<i32, CliError> {
    let phi1 = load_young(&a.phi1)?;
    let phi2 = load_young(&a.phi2)?;
    let g = load_simple(&a.g)?;
    let rep = pwm_bruteforce(&phi1, &phi2, &g, a.budget, &[])?;
    if a.json {
        emit_json(out, "pwm-bound", &rep)?;
    } else {
        writeln!(
            out,
            "M(g) ≥ {} ({} of {} evaluations spent)",
            rep.best_ratio, rep.evaluations, rep.budget
        )?;
        writeln!(out, "attained by f = {}", rep.best.to_json())?;
    }
    Ok(0)
}

fn cmd_equiv<W: Write>(a: EquivArgs, out: &mut W) -> Result<i32, CliError> {
    let phi = load_young(&a.phi)?;
    let f = load_simple(&a.f)?;
    let (s1, s2, s3) = if f.is_zero() {
        (ExtReal::ZERO, ExtReal::ZERO, ExtReal::ZERO)
    } else {
        let layers = f.canonicalize()?;
        (
            weak_sup_form1(&phi, &layers),
            weak_sup_form2(&phi, &layers),
            weak_sup_form3(&phi, &f),
        )
    };
    // Worst pairwise relative discrepancy among finite values; structural
    // 0/∞ patterns must agree exactly.
    let vals = [s1, s2, s3];
    let patterns_agree = vals.iter().all(|v| v.is_infinite() == s1.is_infinite())
        && vals.iter().all(|v| v.is_zero() == s1.is_zero());
    let mut worst = 0.0f64;
    if patterns_agree && s1.is_finite() {
        let fs = [s1.as_f64(), s2.as_f64(), s3.as_f64()];
        let scale = fs.iter().copied().fold(0.0, f64::max).max(1e-300);
        for a in &fs {
            for b in &fs {
                worst = worst.max((a - b).abs() / scale);
            }
        }
    }
    let ok = patterns_agree && (s1.is_infinite() || worst <= tol::EQUIV_CHECK_REL);
    if a.json {
        emit_json(
            out,
            "equiv-check",
            &json!({
                "layer_cake": s1,
                "inverse_only": s2,
                "pushforward": s3,
                "max_rel_discrepancy": worst,
                "ok": ok,
            }),
        )?;
    } else {
        writeln!(out, "layer-cake route   = {s1}")?;
        writeln!(out, "inverse-only route = {s2}")?;
        writeln!(out, "pushforward route  = {s3}")?;
        writeln!(
            out,
            "{} max relative discrepancy = {worst}",
            if ok { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_examples<W: Write>(a: ExamplesArgs, out: &mut W) -> Result<i32, CliError> {
    let reports = example_asymptotics_audit(a.points);
    let all_stable = reports.iter().all(|r| r.stable);
    if a.json {
        emit_json(out, "examples", &reports)?;
        return Ok(if all_stable { 0 } else { 1 });
    }
    for rep in &reports {
        writeln!(
            out,
            "# {}: K = {} (extended grid {}), rel change = {} → {}",
            rep.label,
            rep.k_base,
            rep.k_extended,
            rep.rel_change,
            if rep.stable { "stable" } else { "UNSTABLE" }
        )?;
        if a.curve {
            writeln!(out, "u,ratio")?;
            for (u, r) in &rep.curve {
                writeln!(out, "{u},{r}")?;
            }
        }
    }
    Ok(if all_stable { 0 } else { 1 })
}

fn cmd_fuzz<W: Write>(a: FuzzArgs, out: &mut W) -> Result<i32, CliError> {
    let mut cfg = match &a.config {
        Some(arg) => serde_json::from_str(&load_text(arg)?)?,
        None => CampaignConfig::default(),
    };
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(cases) = a.cases {
        cfg.cases = cases;
    }
    if let Some(n) = a.max_atoms {
        cfg.max_atoms = n;
    }
    if let Some(n) = a.max_segments {
        cfg.max_segments = n;
    }
    if let Some(list) = &a.checks {
        cfg.checks = list
            .split(',')
            .map(|name| {
                serde_json::from_value(serde_json::Value::String(name.trim().to_string()))
                    .map_err(|_| CliError::Msg(format!("unknown check {name:?}")))
            })
            .collect::<Result<Vec<CheckKind>, _>>()?;
    }
    let rep = run_campaign(&cfg)?;
    if a.json {
        emit_json(out, "fuzz", &rep)?;
    } else {
        writeln!(
            out,
            "seed {} · {} cases · {} threads · {} ms",
            rep.seed, rep.cases, rep.threads, rep.wall_time_ms
        )?;
        for st in &rep.stats {
            writeln!(
                out,
                "{:?}: {} runs, {} passed, {} failed, {} skipped",
                st.check, st.runs, st.passes, st.failures, st.skips
            )?;
        }
        for ce in &rep.counterexamples {
            writeln!(
                out,
                "counterexample: case {} {:?} sub_seed {} — {}",
                ce.case_index, ce.check, ce.sub_seed, ce.detail
            )?;
        }
    }
    Ok(if rep.all_passed() { 0 } else { 1 })
}
