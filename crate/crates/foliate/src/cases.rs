//! Built-in corpus: named forms with their parameters.

use std::fmt;

use foliate_core::algebra::rational::Rational;
use foliate_core::blowup::{reduce, ReduceOptions, ReductionTree};
use foliate_core::families;
use foliate_core::localtypes::JetOrder;
use foliate_core::numerics::{CForm, C64};
use foliate_core::{rat, DiffForm};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub enum Case {
    /// `lambda x dy - y dx`
    Linear(Rational),
    /// `x^(k+1) dy - y (1 + mu x^k) dx`
    ModelSn { k: u32, mu: Rational },
    Euler,
    OmegaN(u32),
    PsiPullback,
    Radial,
    Omega1,
    Sqrt2,
    Split,
    Cusp,
    /// The model saddle-node `x^2 dy - y dx` blown up once.
    BlownSn,
    /// Hand-built hub carrying one `omega_n` branch per entry.
    Hub(Vec<u32>),
}

/// Optional parameters given as flags; they override `key=value` pairs in the
/// case string.
#[derive(Clone, Debug, Default)]
pub struct CaseParams {
    pub lambda: Option<String>,
    pub k: Option<u32>,
    pub mu: Option<String>,
    pub n: Option<u32>,
    pub ns: Option<String>,
}

pub const NAMES: &[&str] = &[
    "linear", "model_sn", "euler", "omega_n", "psi_pullback", "radial", "omega_1", "sqrt2", "split",
    "cusp", "blown_sn", "hub",
];

pub fn parse_rational(s: &str) -> CliResult<Rational> {
    let bad = || CliError::Usage(format!("'{s}' is not a rational number p/q"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: num_bigint::BigInt = p.parse().map_err(|_| bad())?;
    let q: num_bigint::BigInt = q.parse().map_err(|_| bad())?;
    if q == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn parse_u32(key: &str, s: &str) -> CliResult<u32> {
    s.parse().map_err(|_| CliError::Usage(format!("{key}={s} is not a non-negative integer")))
}

impl Case {
    pub fn resolve(spec: &str, params: &CaseParams) -> CliResult<Case> {
        let mut words = spec.split_whitespace();
        let name = words.next().ok_or_else(|| CliError::Usage("empty case name".into()))?;
        let mut p = CaseParams::default();
        for w in words {
            let (key, value) = w
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value in case, found '{w}'")))?;
            match key {
                "lambda" => p.lambda = Some(value.into()),
                "k" => p.k = Some(parse_u32(key, value)?),
                "mu" => p.mu = Some(value.into()),
                "n" => p.n = Some(parse_u32(key, value)?),
                "ns" => p.ns = Some(value.into()),
                _ => return Err(CliError::Usage(format!("unknown case parameter '{key}'"))),
            }
        }
        let lambda = params.lambda.clone().or(p.lambda);
        let k = params.k.or(p.k);
        let mu = params.mu.clone().or(p.mu);
        let n = params.n.or(p.n);
        let ns = params.ns.clone().or(p.ns);
        Ok(match name {
            "linear" => Case::Linear(parse_rational(lambda.as_deref().unwrap_or("-2/3"))?),
            "model_sn" => {
                let k = k.unwrap_or(1);
                if k == 0 {
                    return Err(CliError::Usage("model_sn needs k >= 1".into()));
                }
                Case::ModelSn { k, mu: parse_rational(mu.as_deref().unwrap_or("0"))? }
            }
            "euler" => Case::Euler,
            "omega_n" => {
                let n = n.unwrap_or(1);
                if n == 0 {
                    return Err(CliError::Usage("omega_n needs n >= 1".into()));
                }
                Case::OmegaN(n)
            }
            "psi_pullback" => Case::PsiPullback,
            "radial" => Case::Radial,
            "omega_1" => Case::Omega1,
            "sqrt2" => Case::Sqrt2,
            "split" => Case::Split,
            "cusp" => Case::Cusp,
            "blown_sn" => Case::BlownSn,
            "hub" => {
                let ns = ns.as_deref().unwrap_or("1,2");
                let ns = ns
                    .split(',')
                    .map(|s| parse_u32("ns", s.trim()))
                    .collect::<CliResult<Vec<u32>>>()?;
                if ns.is_empty() || ns.contains(&0) {
                    return Err(CliError::Usage("hub needs positive branch lengths".into()));
                }
                Case::Hub(ns)
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown case '{name}'; known cases: {}",
                    NAMES.join(", ")
                )))
            }
        })
    }

    /// The 1-form, except for the hand-built hub.
    pub fn form(&self) -> CliResult<Option<DiffForm>> {
        Ok(Some(match self {
            Case::Linear(l) => families::linear(l)?,
            Case::ModelSn { k, mu } => families::model_saddle_node(*k, mu)?,
            Case::Euler => families::euler(),
            Case::OmegaN(n) => families::omega_n(*n)?,
            Case::PsiPullback => families::psi_pullback(),
            Case::Radial => families::radial(),
            Case::Omega1 => families::omega_1(),
            Case::Sqrt2 => families::sqrt2_example(),
            Case::Split => families::split_example(),
            Case::Cusp => families::cusp(),
            Case::BlownSn => families::model_saddle_node(1, &rat(0, 1))?,
            Case::Hub(_) => return Ok(None),
        }))
    }

    pub fn require_form(&self) -> CliResult<DiffForm> {
        self.form()?
            .ok_or_else(|| CliError::Usage(format!("case '{self}' is a synthetic tree, not a form")))
    }

    pub fn reduce_options(&self, jets: JetOrder) -> ReduceOptions {
        ReduceOptions {
            jets,
            force_initial_blowup: matches!(self, Case::BlownSn),
            ..ReduceOptions::default()
        }
    }

    pub fn tree(&self, jets: JetOrder) -> CliResult<ReductionTree> {
        match self {
            Case::Hub(ns) => Ok(families::hub_construction(ns)?),
            _ => Ok(reduce(&self.require_form()?, &self.reduce_options(jets))?),
        }
    }

    pub fn numeric_form(&self) -> CliResult<CForm> {
        Ok(CForm::from_form(&self.require_form()?)?)
    }

    /// The cases run by `corpus` when no case is given.
    pub fn catalog() -> Vec<Case> {
        let mut out = vec![
            Case::Omega1,
            Case::Linear(rat(-2, 3)),
            Case::ModelSn { k: 1, mu: rat(-1, 1) },
            Case::ModelSn { k: 1, mu: rat(0, 1) },
            Case::ModelSn { k: 2, mu: rat(1, 3) },
            Case::Euler,
        ];
        out.extend((1..=5).map(Case::OmegaN));
        out.extend([
            Case::PsiPullback,
            Case::Radial,
            Case::Sqrt2,
            Case::Split,
            Case::Cusp,
            Case::BlownSn,
            Case::Hub(vec![1, 2]),
        ]);
        out
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::document::rational_string as r;
        match self {
            Case::Linear(l) => write!(f, "linear lambda={}", r(l)),
            Case::ModelSn { k, mu } => write!(f, "model_sn k={k} mu={}", r(mu)),
            Case::Euler => write!(f, "euler"),
            Case::OmegaN(n) => write!(f, "omega_n n={n}"),
            Case::PsiPullback => write!(f, "psi_pullback"),
            Case::Radial => write!(f, "radial"),
            Case::Omega1 => write!(f, "omega_1"),
            Case::Sqrt2 => write!(f, "sqrt2"),
            Case::Split => write!(f, "split"),
            Case::Cusp => write!(f, "cusp"),
            Case::BlownSn => write!(f, "blown_sn"),
            Case::Hub(ns) => {
                let ns: Vec<String> = ns.iter().map(u32::to_string).collect();
                write!(f, "hub ns={}", ns.join(","))
            }
        }
    }
}

/// Complex literal: `a`, `bi`, `a+bi`, `a-i`, ...
pub fn parse_complex(s: &str) -> CliResult<C64> {
    let bad = || CliError::Usage(format!("'{s}' is not a complex number a+bi"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im.trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(C64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}
