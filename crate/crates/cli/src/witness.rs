//! Witness files.
//!
//! Inputs and witnesses are series in `S`, one per line, in either chart;
//! blank lines and `#` comments are ignored. Witnesses carry their reduced
//! validity as a trailing `O(v)` term.
//!
//! | kind     | input lines   | witness lines      | residual                        |
//! |----------|---------------|--------------------|---------------------------------|
//! | `szeta`  | `a`           | `b`                | `b zeta - a(1 - gamma)`         |
//! | `sdelta` | `r`           | `c_zeta`, `c_tau`  | `(c_zeta zeta + c_tau tau - r)(1 - gamma)` |
//! | `cross`  | `a`, `b`      | `c`                | `c tau - a`, `c zeta - b`       |

use std::fmt::Write as _;

use serde::Serialize;

use profree_core::{
    cross_witness, solve_s_delta, solve_s_zeta, AntisymElem, ChartHint, DeltaWitness, Params,
    SElem, Series,
};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Szeta,
    Sdelta,
    Cross,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Szeta => "szeta",
            WitnessKind::Sdelta => "sdelta",
            WitnessKind::Cross => "cross",
        }
    }

    fn input_arity(self) -> usize {
        if self == WitnessKind::Cross { 2 } else { 1 }
    }

    fn witness_arity(self) -> usize {
        if self == WitnessKind::Sdelta { 2 } else { 1 }
    }
}

/// Parses the values of a series file.
pub fn read_values(text: &str, params: Params) -> Result<Vec<SElem>> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let column = raw.len() - trimmed.len() + 1;
        let series = Series::parse(trimmed, params, ChartHint::S)
            .map_err(|e| CliError::at(line, column, e))?;
        out.push(SElem::new(series).map_err(|e| CliError::Line { line, source: e })?);
    }
    Ok(out)
}

fn exactly(values: Vec<SElem>, expected: usize) -> Result<Vec<SElem>> {
    if values.len() != expected {
        return Err(CliError::Arity { expected, found: values.len() });
    }
    Ok(values)
}

/// A computed or loaded witness with the residuals of its defining equations.
#[derive(Debug, Clone)]
pub struct Witness {
    pub kind: WitnessKind,
    pub values: Vec<SElem>,
    pub residuals: Vec<SElem>,
}

impl Witness {
    pub fn validity(&self) -> u32 {
        self.residuals.iter().map(SElem::validity).min().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.residuals.iter().all(SElem::is_zero)
    }

    /// The witness file.
    pub fn render(&self) -> String {
        let mut out = format!("# {} witness\n", self.kind.name());
        for v in &self.values {
            writeln!(out, "{v}").expect("writing to a string");
        }
        out
    }

    pub fn summary(&self, output: Option<&str>) -> WitnessSummary {
        WitnessSummary {
            kind: self.kind.name().to_string(),
            output: output.map(str::to_string),
            validity: self.validity(),
            residual: self.residuals.iter().map(|r| r.to_string()).collect(),
            zero: self.is_exact(),
        }
    }
}

/// The verification line printed after a witness command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub kind: String,
    pub output: Option<String>,
    pub validity: u32,
    pub residual: Vec<String>,
    pub zero: bool,
}

fn antisym(value: SElem) -> Result<AntisymElem> {
    Ok(AntisymElem::new(value)?)
}

fn residuals(kind: WitnessKind, inputs: &[SElem], values: &[SElem]) -> Result<Vec<SElem>> {
    let params = inputs[0].params();
    let (zeta, tau) = (SElem::zeta(params), SElem::tau(params));
    Ok(match kind {
        WitnessKind::Szeta => vec![&(&values[0] * &zeta) - &inputs[0].antisymmetrize()],
        WitnessKind::Sdelta => {
            let w = DeltaWitness { zeta_coeff: values[0].clone(), tau_coeff: values[1].clone() };
            vec![&w.image() - &inputs[0].antisymmetrize()]
        }
        WitnessKind::Cross => vec![
            &(&values[0] * &tau) - &inputs[0],
            &(&values[0] * &zeta) - &inputs[1],
        ],
    })
}

/// Solves the instance in `input`.
pub fn solve(kind: WitnessKind, input: &str, params: Params) -> Result<Witness> {
    let inputs = exactly(read_values(input, params)?, kind.input_arity())?;
    let values = match kind {
        WitnessKind::Szeta => vec![solve_s_zeta(&inputs[0])?.into_elem()],
        WitnessKind::Sdelta => {
            let w = solve_s_delta(&inputs[0])?;
            vec![w.zeta_coeff, w.tau_coeff]
        }
        WitnessKind::Cross => {
            let a = antisym(inputs[0].clone())?;
            let b = antisym(inputs[1].clone())?;
            vec![cross_witness(&a, &b)?.into_elem()]
        }
    };
    let residuals = residuals(kind, &inputs, &values)?;
    Ok(Witness { kind, values, residuals })
}

/// Re-checks a witness file against its instance.
pub fn check(kind: WitnessKind, input: &str, witness: &str, params: Params) -> Result<Witness> {
    let inputs = exactly(read_values(input, params)?, kind.input_arity())?;
    let values = exactly(read_values(witness, params)?, kind.witness_arity())?;
    let residuals = residuals(kind, &inputs, &values)?;
    Ok(Witness { kind, values, residuals })
}
