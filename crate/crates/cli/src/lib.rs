//! The `superdirac` command line: argument grammar, command dispatch, output
//! rendering and exit codes.

pub mod cache;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use superdirac::oscillator::{dirac_index_character, dirac_index_trivial, transfer_factor_check};
use superdirac::rootdata::{positive_roots, rho, Kind, Weight};
use superdirac::superalg::{
    build_module, build_structure, dirac_cohomology, verify_dirac_square_with, PbwOrder, TensorAlgebra,
};
use superdirac::weylchar::{character_b, character_osp, freudenthal_multiplicities, weyl_dimension, HighestWeight};
use superdirac::{lifting, Error};

use cache::{Cache, CacheKey};
use suite::{verify_suite, Limits, Selection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const CHARACTER_RANK_LIMIT: usize = 4;
const SYMBOLIC_RANK_LIMIT: usize = 2;
const DEFAULT_ORDER: &str = "12";

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "superdirac", version, about = "Exact characters, symplectic Dirac operators and metaplectic lifting for osp(1|2n)")]
pub struct Cli {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached results.
    #[arg(long, global = true, value_name = "DIR", default_value = cache::DEFAULT_DIR)]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    B,
    C,
    Osp,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::B => Kind::B,
            KindArg::C => Kind::C,
            KindArg::Osp => Kind::Osp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharKind {
    B,
    Osp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Forward,
    Inverse,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots, simple roots and ρ.
    Roots {
        #[arg(long = "type", value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
    },
    /// Irreducible character of highest weight Λ.
    Character {
        #[arg(long = "type", value_enum, default_value = "osp")]
        kind: CharKind,
        /// Rank; defaults to the length of --hw.
        #[arg(long)]
        n: Option<usize>,
        /// Highest weight as comma-separated rationals, e.g. 2 or 1,0.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        hw: Weight,
        #[arg(long, default_value_t = CHARACTER_RANK_LIMIT)]
        max_rank: usize,
    },
    /// Weight multiplicities by Freudenthal's recursion.
    Mult {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        hw: Weight,
        /// Report only this weight.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Option<Weight>,
        #[arg(long, default_value_t = CHARACTER_RANK_LIMIT)]
        max_rank: usize,
    },
    /// Dimension by the Weyl dimension formula.
    Dim {
        #[arg(long = "type", value_enum, default_value = "osp")]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        hw: Weight,
        #[arg(long, default_value_t = CHARACTER_RANK_LIMIT)]
        max_rank: usize,
    },
    /// Φ·D₁ = 1 and expand(D_B/D_C) = Φ; with --param, the SO/Mp transfer
    /// identity for λ = (a₁,…,a_k,b₁,…,b_l).
    TransferFactor {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = DEFAULT_ORDER)]
        order: usize,
        /// Positive genuine λ, a's then b's.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        param: Option<Weight>,
        /// Number of a's in --param; defaults to all of them.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = CHARACTER_RANK_LIMIT)]
        max_rank: usize,
    },
    /// ch V_Λ·(ch M⁺ − ch M⁻) against N_{Λ+ρ}/D_C; trivial module without --hw.
    DiracIndex {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        hw: Option<Weight>,
        #[arg(long, default_value = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = CHARACTER_RANK_LIMIT)]
        max_rank: usize,
    },
    /// The lifting Γ on Θ = e^{λ}/D.
    Lift {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        param: Weight,
        #[arg(long, value_enum, default_value = "forward")]
        direction: DirectionArg,
    },
    /// Discrete series parameter λ ↦ λ − w⁻¹ω_n.
    LiftDs {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        param: Weight,
        /// Map a genuine λ′ back to λ.
        #[arg(long)]
        inverse: bool,
    },
    /// D² + Ω_g⊗1 − Ω_{g₀Δ} + C = 0 by exact normal ordering.
    DiracSquare {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Use the Koszul sign rule between the two tensor factors.
        #[arg(long)]
        koszul: bool,
        #[arg(long, default_value_t = SYMBOLIC_RANK_LIMIT)]
        max_rank: usize,
    },
    /// Dirac cohomology of the osp(1|2) module of highest weight m.
    DiracCohomology {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Highest weight m ∈ ℤ≥0.
        #[arg(long)]
        hw: u32,
        #[arg(long, default_value = DEFAULT_ORDER)]
        order: usize,
    },
    /// Run verification suites and print a report.
    Verify {
        /// all, or a comma-separated list of denominator, characters,
        /// oscillator, kostant, dirac-square, cohomology, hc-image, lifting,
        /// transfer.
        #[arg(long, default_value = "all")]
        suite: Selection,
        #[arg(long, default_value_t = SYMBOLIC_RANK_LIMIT)]
        n_max: usize,
        #[arg(long, default_value = DEFAULT_ORDER)]
        order: usize,
        /// Worker threads; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

/// Outcome of a command before rendering.
struct Output {
    value: Value,
    table: String,
    pass: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRank(_)
            | Error::RankMismatch { .. }
            | Error::RankLimit { .. }
            | Error::NonRegular(_)
            | Error::Spinorial(_)
            | Error::NotDominant(_)
            | Error::MixedParity(_)
            | Error::WrongParity { .. }
            | Error::OrderTooSmall(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_rank(n: Option<usize>, w: &Weight, limit: usize) -> Res<usize> {
    let rank = w.rank();
    if let Some(n) = n {
        if n != rank {
            return Err(usage(format!("--n {n} does not match the {rank} coordinates given")));
        }
    }
    check_limit(rank, limit)?;
    Ok(rank)
}

fn check_limit(n: usize, limit: usize) -> Res<()> {
    if n == 0 {
        return Err(Error::InvalidRank(0).into());
    }
    if n > limit {
        return Err(Error::RankLimit { rank: n, limit }.into());
    }
    Ok(())
}

fn doubled_list(ws: &[Weight]) -> Vec<Vec<i64>> {
    ws.iter().map(|w| w.doubled().to_vec()).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Payloads are cached as compact JSON; the table is rebuilt from them so
/// hits and recomputation print the same bytes.
fn cached(cache: &Cache, key: CacheKey, compute: impl FnOnce() -> Res<Value>) -> Res<Value> {
    let text = cache.get_or_compute(&key, || compute().map(|v| v.to_string()))?;
    serde_json::from_str(&text).map_err(|e| Failure::Internal(format!("cached payload: {e}")))
}

fn half(d: i64) -> String {
    superdirac::rootdata::format_half(d)
}

fn weight_text(doubled: &Value) -> String {
    let parts: Vec<String> = doubled
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_i64).map(half).collect())
        .unwrap_or_default();
    format!("({})", parts.join(", "))
}

fn terms_table(terms: &Value) -> String {
    let mut out = String::new();
    for t in terms.as_array().into_iter().flatten() {
        out.push_str(&format!("  {:>6}  {}\n", t["coef"].as_str().unwrap_or("?"), weight_text(&t["2exp"])));
    }
    out
}

fn series_table(series: &Value) -> String {
    format!(
        "  offset {} order {}\n{}",
        weight_text(&series["offset2"]),
        series["order"],
        terms_table(&series["terms"])
    )
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_roots(kind: KindArg, n: usize) -> Res<Output> {
    check_limit(n, CHARACTER_RANK_LIMIT)?;
    let kind: Kind = kind.into();
    let data = positive_roots(kind, n)?;
    let r = rho(kind, n)?;
    let value = json!({
        "kind": kind,
        "n": n,
        "even_positive_roots": doubled_list(&data.even_positive_roots),
        "odd_positive_roots": doubled_list(&data.odd_positive_roots),
        "simple_roots": doubled_list(&data.simple_roots()),
        "rho": r.doubled(),
    });
    let mut table = format!("{kind} rank {n}\nrho = ({r})\nsimple roots:\n");
    for a in data.simple_roots() {
        table.push_str(&format!("  ({a})\n"));
    }
    table.push_str(&format!("even positive roots ({}):\n", data.even_positive_roots.len()));
    for a in &data.even_positive_roots {
        table.push_str(&format!("  ({a})\n"));
    }
    if !data.odd_positive_roots.is_empty() {
        table.push_str(&format!("odd positive roots ({}):\n", data.odd_positive_roots.len()));
        for a in &data.odd_positive_roots {
            table.push_str(&format!("  ({a})\n"));
        }
    }
    Ok(Output { value, table, pass: true })
}

fn character_table(v: &Value) -> String {
    format!(
        "{} character, highest weight {}, p = {}\ndimension {}\ninfinitesimal character {}\n{}",
        v["kind"].as_str().unwrap_or("?"),
        weight_text(&v["highest_weight"]["2lambda"]),
        v["highest_weight"]["p"],
        v["dimension"].as_str().unwrap_or("?"),
        weight_text(&v["inf_char"]),
        terms_table(&v["terms"])
    )
}

fn cmd_character(cache: &Cache, kind: CharKind, n: Option<usize>, hw: &Weight, max_rank: usize) -> Res<Output> {
    let n = check_rank(n, hw, max_rank)?;
    let label = match kind {
        CharKind::B => "character-B",
        CharKind::Osp => "character-OSP",
    };
    let value = cached(cache, CacheKey::new(label, n, hw.to_string(), 0), || {
        let h = HighestWeight::new(hw.clone())?;
        let rec = match kind {
            CharKind::B => character_b(&h)?,
            CharKind::Osp => character_osp(&h)?,
        };
        Ok(to_value(&rec.to_json()))
    })?;
    let table = character_table(&value);
    Ok(Output { value, table, pass: true })
}

fn cmd_mult(cache: &Cache, n: Option<usize>, hw: &Weight, weight: Option<&Weight>, max_rank: usize) -> Res<Output> {
    let n = check_rank(n, hw, max_rank)?;
    if let Some(mu) = weight {
        if mu.rank() != n {
            return Err(usage(format!("--weight has {} coordinates, expected {n}", mu.rank())));
        }
    }
    let full = cached(cache, CacheKey::new("mult", n, hw.to_string(), 0), || {
        let h = HighestWeight::new(hw.clone())?;
        let m = freudenthal_multiplicities(&h)?;
        let terms: Vec<Value> = m
            .iter()
            .rev()
            .map(|(w, c)| json!({"2exp": w.doubled(), "coef": c.to_string()}))
            .collect();
        Ok(json!({
            "n": n,
            "highest_weight": {"2lambda": h.weight().doubled(), "p": h.coefficients()},
            "multiplicities": terms,
        }))
    })?;
    let (value, table) = match weight {
        Some(mu) => {
            let coef = full["multiplicities"]
                .as_array()
                .into_iter()
                .flatten()
                .find(|t| t["2exp"] == json!(mu.doubled()))
                .map(|t| t["coef"].as_str().unwrap_or("0").to_string())
                .unwrap_or_else(|| "0".into());
            let table = format!("multiplicity of ({mu}) in V({hw}) = {coef}\n");
            (
                json!({"n": n, "highest_weight": full["highest_weight"], "weight": mu.doubled(), "multiplicity": coef}),
                table,
            )
        }
        None => {
            let table = format!("weight multiplicities of V({hw})\n{}", terms_table(&full["multiplicities"]));
            (full, table)
        }
    };
    Ok(Output { value, table, pass: true })
}

fn cmd_dim(kind: KindArg, n: Option<usize>, hw: &Weight, max_rank: usize) -> Res<Output> {
    let n = check_rank(n, hw, max_rank)?;
    let kind: Kind = kind.into();
    let h = HighestWeight::new(hw.clone())?;
    let d = weyl_dimension(&h, kind)?;
    let value = json!({
        "kind": kind,
        "n": n,
        "highest_weight": {"2lambda": h.weight().doubled(), "p": h.coefficients()},
        "dimension": d.to_string(),
    });
    Ok(Output {
        value,
        table: format!("dim V({hw}) for {kind} = {d}\n"),
        pass: true,
    })
}

fn cmd_transfer(n: usize, order: usize, param: Option<&Weight>, k: Option<usize>, max_rank: usize) -> Res<Output> {
    match param {
        None => {
            check_limit(n, max_rank)?;
            let c = transfer_factor_check(n, order)?;
            let table = format!(
                "transfer factor, n = {n}, order {order}\n  Phi * D_1 = 1: {}\n  expand(D_B/D_C) = {}Phi\n{}\n",
                c.inverse_ok,
                match c.matched_sign {
                    1 => "+",
                    -1 => "-",
                    _ => "neither +/-",
                },
                verdict(c.pass)
            );
            Ok(Output {
                value: to_value(&c),
                table,
                pass: c.pass,
            })
        }
        Some(lam) => {
            let n = check_rank(Some(n), lam, max_rank)?;
            let k = k.unwrap_or(n);
            let c = lifting::verify_adams_transfer(lam, k, order)?;
            let mut value = to_value(&c.to_json());
            value["numerator_ok"] = json!(c.numerator_ok);
            value["series_ok"] = json!(c.series_ok);
            let table = format!(
                "lambda = ({}), lambda' = ({}), orbit sign {:+}\n  numerators: {}\n  series to order {order}: {}\n{}\n",
                c.lambda,
                c.lambda_prime,
                c.orbit_sign,
                c.numerator_ok,
                c.series_ok,
                verdict(c.pass)
            );
            Ok(Output { value, table, pass: c.pass })
        }
    }
}

fn cmd_dirac_index(n: Option<usize>, hw: Option<&Weight>, order: usize, max_rank: usize) -> Res<Output> {
    let cert = match hw {
        Some(w) => {
            check_rank(n, w, max_rank)?;
            dirac_index_character(&HighestWeight::new(w.clone())?, order)?
        }
        None => {
            let n = n.ok_or_else(|| usage("give --n for the trivial module or --hw"))?;
            check_limit(n, max_rank)?;
            dirac_index_trivial(n, order)?
        }
    };
    let json = cert.to_json();
    let value = to_value(&json);
    let table = format!(
        "{} n = {} order {}\nch V * (ch M+ - ch M-):\n{}expansion of N/D_C:\n{}{}\n",
        json.identity,
        json.n,
        json.order,
        series_table(&value["lhs"]),
        series_table(&value["rhs"]),
        verdict(json.pass)
    );
    Ok(Output {
        value,
        table,
        pass: json.pass,
    })
}

fn coeff_list(theta: &lifting::VirtualCharacter) -> Vec<Value> {
    theta
        .coeffs()
        .iter()
        .map(|(w, a)| json!({"perm": w.perm(), "signs": w.signs(), "a": a.to_string()}))
        .collect()
}

fn cmd_lift(n: Option<usize>, param: &Weight, direction: DirectionArg) -> Res<Output> {
    check_rank(n, param, CHARACTER_RANK_LIMIT)?;
    let p = lifting::classify(param)?;
    let theta = lifting::VirtualCharacter::basic(&p)?;
    let dir = match direction {
        DirectionArg::Forward => lifting::Direction::Forward,
        DirectionArg::Inverse => lifting::Direction::Inverse,
    };
    let out = lifting::lift_gamma(&theta, dir)?;
    let value = json!({
        "direction": dir,
        "lambda": theta.lambda_dom().to_string(),
        "lambda_prime": out.lambda_dom().to_string(),
        "parameter": out.lambda_dom().to_json(),
        "coeffs": coeff_list(&out),
    });
    let table = format!(
        "Gamma ({}): ({}) -> ({}) [{}], {} coefficient(s) carried over\n",
        match direction {
            DirectionArg::Forward => "forward",
            DirectionArg::Inverse => "inverse",
        },
        theta.lambda_dom(),
        out.lambda_dom(),
        out.lambda_dom().parity().name(),
        out.coeffs().len()
    );
    Ok(Output { value, table, pass: true })
}

fn cmd_lift_ds(n: Option<usize>, param: &Weight, inverse: bool) -> Res<Output> {
    check_rank(n, param, CHARACTER_RANK_LIMIT)?;
    let p = lifting::classify(param)?;
    let out = if inverse {
        lifting::unlift_ds_parameter(&p)?
    } else {
        lifting::lift_ds_parameter(&p)?
    };
    let value = json!({
        "lambda": p.to_string(),
        "lambda_prime": out.to_string(),
        "parameter": out.to_json(),
    });
    let table = format!("({}) [{}] -> ({}) [{}]\n", p, p.parity().name(), out, out.parity().name());
    Ok(Output { value, table, pass: true })
}

fn cmd_dirac_square(cache: &Cache, n: usize, koszul: bool, max_rank: usize) -> Res<Output> {
    check_limit(n, max_rank)?;
    let label = if koszul { "dirac-square-koszul" } else { "dirac-square" };
    let value = cached(cache, CacheKey::new(label, n, "", 0), || {
        let s = build_structure(n)?;
        let alg = if koszul {
            TensorAlgebra::with_order(&s, PbwOrder::standard(&s), true)
        } else {
            TensorAlgebra::new(&s)
        };
        let out = verify_dirac_square_with(&alg)?;
        Ok(json!({
            "n": n,
            "koszul_signs": koszul,
            "kostant_constant": out.kostant.to_string(),
            "square": out.certificate,
            "invariance": out.invariance,
            "pass": out.certificate.pass && out.invariance.pass,
        }))
    })?;
    let pass = value["pass"].as_bool().unwrap_or(false);
    let mut table = format!(
        "n = {n}{}\nKostant constant C = {}\n",
        if koszul { " (Koszul signs)" } else { "" },
        value["kostant_constant"].as_str().unwrap_or("?")
    );
    for part in ["square", "invariance"] {
        let cert = &value[part];
        table.push_str(&format!("{}: {}\n", cert["identity"].as_str().unwrap_or(part), verdict(cert["pass"] == json!(true))));
        for t in cert["residual_terms"].as_array().into_iter().flatten() {
            table.push_str(&format!("  residual {}\n", t.as_str().unwrap_or("?")));
        }
    }
    table.push_str(&format!("{}\n", verdict(pass)));
    Ok(Output { value, table, pass })
}

fn cmd_dirac_cohomology(cache: &Cache, n: usize, m: u32, order: usize) -> Res<Output> {
    if n != 1 {
        return Err(usage(format!("dirac-cohomology is implemented for n = 1 only, got --n {n}")));
    }
    let value = cached(cache, CacheKey::new("dirac-cohomology", 1, m.to_string(), order), || {
        let s = build_structure(1)?;
        let v = build_module(&s, m)?;
        Ok(to_value(&dirac_cohomology(&v, order)?.to_json()))
    })?;
    let pass = value["pass"].as_bool().unwrap_or(false);
    let mut table = format!("V of highest weight {m}, order {order}\n");
    for (label, key) in [("H+", "hplus"), ("H-", "hminus")] {
        for pair in value[key].as_array().into_iter().flatten() {
            table.push_str(&format!("  {label} {} dim {}\n", weight_text(&pair[0]), pair[1]));
        }
    }
    table.push_str(&format!(
        "Euler characteristic matches ch V * (ch M+ - ch M-): {}\nkernel scalar {}: {}\n{}\n",
        value["euler_ok"],
        value["kernel_scalar"].as_str().unwrap_or("?"),
        value["kernel_scalar_ok"],
        verdict(pass)
    ));
    Ok(Output { value, table, pass })
}

fn cmd_verify(selection: &Selection, n_max: usize, order: usize, jobs: usize) -> Res<Output> {
    let jobs = if jobs == 0 {
        std::thread::available_parallelism().map_or(1, |x| x.get())
    } else {
        jobs
    };
    let report = verify_suite(selection, Limits { n_max, order }, jobs)?;
    let mut table = String::new();
    for e in &report.entries {
        let case = if e.case.is_empty() { String::new() } else { format!(" [{}]", e.case) };
        table.push_str(&format!("{} {:<12} {:<26} n={}{case}\n", verdict(e.pass), e.suite, e.identity, e.n));
    }
    table.push_str(&format!("{} of {} checks passed\n", report.total - report.failed, report.total));
    let pass = report.pass;
    Ok(Output {
        value: to_value(&report),
        table,
        pass,
    })
}

fn dispatch(cli: &Cli, cache: &Cache) -> Res<Output> {
    match &cli.command {
        Command::Roots { kind, n } => cmd_roots(*kind, *n),
        Command::Character { kind, n, hw, max_rank } => cmd_character(cache, *kind, *n, hw, *max_rank),
        Command::Mult { n, hw, weight, max_rank } => cmd_mult(cache, *n, hw, weight.as_ref(), *max_rank),
        Command::Dim { kind, n, hw, max_rank } => cmd_dim(*kind, *n, hw, *max_rank),
        Command::TransferFactor { n, order, param, k, max_rank } => cmd_transfer(*n, *order, param.as_ref(), *k, *max_rank),
        Command::DiracIndex { n, hw, order, max_rank } => cmd_dirac_index(*n, hw.as_ref(), *order, *max_rank),
        Command::Lift { n, param, direction } => cmd_lift(*n, param, *direction),
        Command::LiftDs { n, param, inverse } => cmd_lift_ds(*n, param, *inverse),
        Command::DiracSquare { n, koszul, max_rank } => cmd_dirac_square(cache, *n, *koszul, *max_rank),
        Command::DiracCohomology { n, hw, order } => cmd_dirac_cohomology(cache, *n, *hw, *order),
        Command::Verify { suite, n_max, order, jobs } => cmd_verify(suite, *n_max, *order, *jobs),
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 when an identity fails, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let code = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { EXIT_OK };
                    let _ = write!(out, "{}", e.render());
                    code
                }
                _ => {
                    let text = e.render().to_string();
                    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
                    let _ = writeln!(err, "{first}");
                    let _ = writeln!(err, "hint: run `superdirac --help` or `superdirac <command> --help`");
                    EXIT_USAGE
                }
            };
        }
    };
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(&cli.cache_dir)
    };
    let result = dispatch(&cli, &cache);
    for w in cache.take_warnings() {
        let _ = writeln!(err, "warning: {w}");
    }
    match result {
        Ok(o) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&o.value).expect("serializable") + "\n"
            } else {
                o.table
            };
            let _ = out.write_all(text.as_bytes());
            if o.pass {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "hint: check the input against `superdirac <command> --help`");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
