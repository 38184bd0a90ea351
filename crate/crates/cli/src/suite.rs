//! The verification runner behind `superdirac verify`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use superdirac::charring::{odd_denominator, weyl_denominator, weyl_numerator};
use superdirac::linalg::{q, q_frac};
use superdirac::oscillator::{dirac_index_character, transfer_factor_check};
use superdirac::rootdata::{rho, Kind};
use superdirac::superalg::{
    build_module, build_structure, casimir, dirac_cohomology, hc_image, kostant_constant, verify_dirac_square_with,
    Polynomial, TensorAlgebra,
};
use superdirac::weylchar::{
    character_b, character_osp, freudenthal_multiplicities, highest_weight_grid, infinitesimal_character, weyl_dimension,
};
use superdirac::{lifting, Error, Result};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Denominator,
    Characters,
    Oscillator,
    Kostant,
    DiracSquare,
    Cohomology,
    HcImage,
    Lifting,
    Transfer,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Denominator,
        Suite::Characters,
        Suite::Oscillator,
        Suite::Kostant,
        Suite::DiracSquare,
        Suite::Cohomology,
        Suite::HcImage,
        Suite::Lifting,
        Suite::Transfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Denominator => "denominator",
            Suite::Characters => "characters",
            Suite::Oscillator => "oscillator",
            Suite::Kostant => "kostant",
            Suite::DiracSquare => "dirac-square",
            Suite::Cohomology => "cohomology",
            Suite::HcImage => "hc-image",
            Suite::Lifting => "lifting",
            Suite::Transfer => "transfer",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name or "all".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection(pub Vec<Suite>);

impl FromStr for Selection {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            match Suite::ALL.iter().find(|x| x.name() == part) {
                Some(x) => out.push(*x),
                None => {
                    let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                    return Err(format!("unknown suite '{part}' (expected all, {})", names.join(", ")));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(Selection(out))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub n_max: usize,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub suite: Suite,
    pub identity: String,
    /// What the check certifies.
    pub anchor: String,
    pub n: usize,
    pub case: String,
    pub pass: bool,
    /// The failing certificate, inlined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_version: u32,
    pub suites: Vec<Suite>,
    pub limits: Limits,
    pub total: usize,
    pub failed: usize,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

const ANCHOR_DENOMINATOR: &str = "Weyl denominator identity";
const ANCHOR_FACTOR: &str = "transfer factor: D_C = D_B * D_1";
const ANCHOR_CHARACTERS: &str = "osp(1|2n) and so(2n+1) characters coincide";
const ANCHOR_INFCHAR: &str = "infinitesimal characters coincide";
const ANCHOR_OSCILLATOR: &str = "oscillator module character inverts D_1";
const ANCHOR_INDEX: &str = "symplectic Dirac index";
const ANCHOR_KOSTANT: &str = "Kostant constant";
const ANCHOR_SQUARE: &str = "square of the symplectic Dirac operator";
const ANCHOR_COHOMOLOGY: &str = "Dirac cohomology and infinitesimal character";
const ANCHOR_HC: &str = "Harish-Chandra image of the Casimir";
const ANCHOR_LIFT: &str = "lifting of discrete series parameters";
const ANCHOR_TRANSFER: &str = "SO(2n+1) to Mp(2n) character transfer";

fn entry(suite: Suite, identity: &str, anchor: &str, n: usize, case: String, pass: bool, cert: impl FnOnce() -> Value) -> Entry {
    Entry {
        suite,
        identity: identity.into(),
        anchor: anchor.into(),
        n,
        case,
        pass,
        certificate: if pass { None } else { Some(cert()) },
    }
}

/// One independent unit of work.
#[derive(Debug, Clone)]
enum Task {
    Denominator(usize),
    Character(usize, Vec<i64>),
    Transfer(usize),
    Index(usize, Vec<i64>),
    Kostant(usize),
    Square(usize),
    Cohomology(u32),
    HcImage,
    Bijection(usize),
    Adams(Vec<i64>, usize),
}

fn tasks(suite: Suite, limits: Limits) -> Vec<Task> {
    let n_max = limits.n_max;
    let grid = |n_cap: usize, p_max: i64| -> Vec<(usize, Vec<i64>)> {
        (1..=n_max.min(n_cap))
            .flat_map(|n| highest_weight_grid(n, p_max).into_iter().map(move |hw| (n, hw.coefficients().to_vec())))
            .collect()
    };
    match suite {
        Suite::Denominator => (1..=n_max.min(4)).map(Task::Denominator).collect(),
        Suite::Characters => grid(3, 3).into_iter().map(|(n, p)| Task::Character(n, p)).collect(),
        Suite::Oscillator => {
            let mut t: Vec<Task> = (1..=n_max.min(3)).map(Task::Transfer).collect();
            t.extend(grid(2, 2).into_iter().map(|(n, p)| Task::Index(n, p)));
            t
        }
        Suite::Kostant => (1..=n_max.min(2)).map(Task::Kostant).collect(),
        Suite::DiracSquare => (1..=n_max.min(2)).map(Task::Square).collect(),
        Suite::Cohomology => (0..=4).map(Task::Cohomology).collect(),
        Suite::HcImage => vec![Task::HcImage],
        Suite::Lifting => (1..=n_max.min(3)).map(Task::Bijection).collect(),
        Suite::Transfer => (1..=n_max.min(2))
            .flat_map(|n| lifting::adams_parameters(n, 7))
            .map(|(lam, k)| Task::Adams(lam.doubled().to_vec(), k))
            .collect(),
    }
}

fn run_task(suite: Suite, task: &Task, limits: Limits) -> Result<Vec<Entry>> {
    let order = limits.order;
    Ok(match task {
        Task::Denominator(n) => {
            let n = *n;
            let mut out = Vec::new();
            for kind in [Kind::B, Kind::C] {
                let num = weyl_numerator(&rho(kind, n)?)?;
                let den = weyl_denominator(kind, n)?;
                let pass = num == den;
                out.push(entry(suite, "weyl-denominator", ANCHOR_DENOMINATOR, n, kind.to_string(), pass, || {
                    json!({"numerator": num.to_json_terms(), "denominator": den.to_json_terms()})
                }));
            }
            let lhs = weyl_denominator(Kind::C, n)?;
            let rhs = &weyl_denominator(Kind::B, n)? * &odd_denominator(n)?;
            let diff = lhs.checked_sub(&rhs)?;
            out.push(entry(suite, "denominator-factorization", ANCHOR_FACTOR, n, String::new(), diff.is_zero(), || {
                json!({"residual": diff.to_json_terms()})
            }));
            out
        }
        Task::Character(n, p) => {
            let hw = superdirac::weylchar::HighestWeight::from_coefficients(p)?;
            let b = character_b(&hw)?;
            let o = character_osp(&hw)?;
            let f = freudenthal_multiplicities(&hw)?;
            let dim = weyl_dimension(&hw, Kind::B)?;
            let agree = b.character == o.character && b.character.terms() == &f && b.dimension == dim;
            let case = hw.weight().to_string();
            let inf_b = infinitesimal_character(&hw, Kind::B)?;
            let inf_o = infinitesimal_character(&hw, Kind::Osp)?;
            vec![
                entry(suite, "character-agreement", ANCHOR_CHARACTERS, *n, case.clone(), agree, || {
                    json!({"character_b": b.to_json(), "character_osp": o.to_json(), "weyl_dimension": dim.to_string()})
                }),
                entry(suite, "infinitesimal-character", ANCHOR_INFCHAR, *n, case, inf_b == inf_o, || {
                    json!({"b": inf_b.doubled(), "osp": inf_o.doubled()})
                }),
            ]
        }
        Task::Transfer(n) => {
            let c = transfer_factor_check(*n, order)?;
            vec![entry(suite, "transfer-factor", ANCHOR_OSCILLATOR, *n, String::new(), c.pass, || json!(c))]
        }
        Task::Index(n, p) => {
            let hw = superdirac::weylchar::HighestWeight::from_coefficients(p)?;
            let c = dirac_index_character(&hw, order)?;
            vec![entry(suite, "dirac-index", ANCHOR_INDEX, *n, hw.weight().to_string(), c.verdict, || json!(c.to_json()))]
        }
        Task::Kostant(n) => {
            let k = kostant_constant(&build_structure(*n)?)?;
            vec![entry(suite, "kostant-constant", ANCHOR_KOSTANT, *n, k.value.clone(), k.agree, || json!(k))]
        }
        Task::Square(n) => {
            let s = build_structure(*n)?;
            let alg = TensorAlgebra::new(&s);
            let out = verify_dirac_square_with(&alg)?;
            let central = casimir(&alg).is_ok();
            vec![
                entry(suite, "dirac-square", ANCHOR_SQUARE, *n, String::new(), out.certificate.pass, || json!(out.certificate)),
                entry(suite, "dirac-invariance", ANCHOR_SQUARE, *n, String::new(), out.invariance.pass, || json!(out.invariance)),
                entry(suite, "casimir-central", ANCHOR_SQUARE, *n, String::new(), central, || json!({"central": false})),
            ]
        }
        Task::Cohomology(m) => {
            let s = build_structure(1)?;
            let v = build_module(&s, *m)?;
            let r = dirac_cohomology(&v, order.max(2 * v.dim()))?;
            vec![entry(suite, "dirac-cohomology", ANCHOR_COHOMOLOGY, 1, m.to_string(), r.pass(), || json!(r.to_json()))]
        }
        Task::HcImage => {
            let s = build_structure(1)?;
            let alg = TensorAlgebra::new(&s);
            let omega = casimir(&alg)?;
            let gamma = hc_image(&s, &omega)?;
            let mut pass = gamma == Polynomial::new(vec![q_frac(-1, 2), q(0), q(2)]);
            let mut scalars = Vec::new();
            for m in 0..=4u32 {
                let v = build_module(&s, m)?;
                let expected = gamma.eval(&(q(i64::from(m)) + q_frac(1, 2)));
                let got = v.scalar_of(&omega)?;
                pass &= got.as_ref() == Some(&expected);
                scalars.push(json!({"m": m, "scalar": got.map(|c| c.to_string()), "expected": expected.to_string()}));
            }
            vec![entry(suite, "hc-image", ANCHOR_HC, 1, String::new(), pass, || {
                json!({"gamma": gamma.to_string(), "scalars": scalars})
            })]
        }
        Task::Bijection(n) => {
            let r = lifting::bijection_suite(*n, 6)?;
            let mut out = vec![entry(suite, "bijection", ANCHOR_LIFT, *n, "bound 6".into(), r.pass, || json!(r))];
            if *n == 2 || *n == 3 {
                let (input, want) = if *n == 2 { ("2,1", "3/2,1/2") } else { ("3,1,-2", "5/2,1/2,-3/2") };
                let got = lifting::lift_ds_parameter(&lifting::classify(&input.parse()?)?)?;
                let ok = got.lambda().to_string() == want;
                out.push(entry(suite, "lift-example", ANCHOR_LIFT, *n, input.into(), ok, || {
                    json!({"lambda": input, "lambda_prime": got.lambda().to_string(), "expected": want})
                }));
            }
            out
        }
        Task::Adams(d, k) => {
            let lam = superdirac::rootdata::Weight::from_doubled(d.clone());
            let c = lifting::verify_adams_transfer(&lam, *k, order)?;
            let case = format!("{lam}; k={k}");
            vec![entry(suite, "adams-transfer", ANCHOR_TRANSFER, lam.rank(), case, c.pass, || json!(c.to_json()))]
        }
    })
}

/// Runs every selected identity, in parallel on `jobs` threads, and sorts
/// the entries canonically.
pub fn verify_suite(selection: &Selection, limits: Limits, jobs: usize) -> Result<Report> {
    if limits.n_max == 0 {
        return Err(Error::InvalidRank(0));
    }
    if limits.order == 0 {
        return Err(Error::OrderTooSmall(0));
    }
    let work: Vec<(Suite, Task)> = selection.0.iter().flat_map(|&s| tasks(s, limits).into_iter().map(move |t| (s, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Structural(format!("thread pool: {e}")))?;
    let results: Vec<Result<Vec<Entry>>> = pool.install(|| work.par_iter().map(|(s, t)| run_task(*s, t, limits)).collect());
    let mut entries = Vec::new();
    for r in results {
        entries.extend(r?);
    }
    entries.sort_by(|a, b| (a.suite, &a.identity, a.n, &a.case).cmp(&(b.suite, &b.identity, b.n, &b.case)));
    let failed = entries.iter().filter(|e| !e.pass).count();
    Ok(Report {
        report_version: REPORT_VERSION,
        suites: selection.0.clone(),
        limits,
        total: entries.len(),
        failed,
        pass: failed == 0,
        entries,
    })
}
