//! Scenario files: one JSON object or an array of them, each tagged by
//! `kind`, with optional `name` and `tolerances`.

use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::adelic::{f64_to_rational, parse_rational, RadiusEntry};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A square matrix given row-major either as nested rows or flat.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput<T> {
    Rows(Vec<Vec<T>>),
    Flat(Vec<T>),
}

impl<T: Clone> MatrixInput<T> {
    pub fn rows(&self) -> Result<Vec<Vec<T>>> {
        match self {
            MatrixInput::Rows(rows) => Ok(rows.clone()),
            MatrixInput::Flat(flat) => {
                let n = (flat.len() as f64).sqrt().round() as usize;
                if n * n != flat.len() {
                    return Err(Error::Schema(format!(
                        "field `entries`: {} values do not form a square matrix",
                        flat.len()
                    )));
                }
                if n == 0 {
                    return Ok(Vec::new());
                }
                Ok(flat.chunks(n).map(<[T]>::to_vec).collect())
            }
        }
    }
}

/// An exact rational given as an integer, a decimal or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Integer(i64),
    Decimal(f64),
    Text(String),
}

impl RationalInput {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalInput::Integer(k) => Ok(BigRational::from_integer((*k).into())),
            RationalInput::Decimal(x) => f64_to_rational(*x),
            RationalInput::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GreenPayload {
    pub entries: MatrixInput<f64>,
    /// 1-based index sets; defaults to singletons.
    #[serde(default)]
    pub orbits: Option<Vec<Vec<usize>>>,
    /// Permutations in 1-based one-line notation.
    #[serde(default)]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, alias = "s")]
    pub weights: Option<Vec<f64>>,
    /// `true` requires the equilibrium, `false` skips it; when absent it is
    /// attempted for negative definite matrices only.
    #[serde(default)]
    pub equilibrium: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GamePayload {
    pub entries: MatrixInput<f64>,
    #[serde(default)]
    pub shift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolydiskPayload {
    pub d: usize,
    #[serde(default)]
    pub radii: Vec<RadiusEntry>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackPayload {
    pub d: usize,
    pub degree: u64,
    pub multiplicity: u64,
    #[serde(default)]
    pub divisor_degree: Option<f64>,
    #[serde(default)]
    pub radii: Vec<RadiusEntry>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateInput {
    pub d: usize,
    pub degree: u64,
    pub multiplicity: u64,
    #[serde(default)]
    pub radii: Vec<RadiusEntry>,
    /// Whether `π⁻¹(B(r))` is known to lie in the set.
    pub contained: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FmBoundPayload {
    pub candidates: Vec<CandidateInput>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparePayload {
    pub d: usize,
    pub degree: u64,
    pub multiplicity: u64,
    #[serde(default)]
    pub radii: Vec<RadiusEntry>,
    pub candidates: Vec<CandidateInput>,
}

fn default_count() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPayload {
    pub d: usize,
    #[serde(default)]
    pub radii: Vec<RadiusEntry>,
    #[serde(default = "default_count")]
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermInput {
    pub monomial: Vec<u64>,
    pub coefficient: RationalInput,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentsPayload {
    pub points: Vec<Vec<u64>>,
    #[serde(default)]
    pub polynomial: Option<Vec<TermInput>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharpolyPayload {
    pub entries: MatrixInput<RationalInput>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Green(GreenPayload),
    Game(GamePayload),
    Polydisk(PolydiskPayload),
    Pullback(PullbackPayload),
    FmBound(FmBoundPayload),
    Witness(WitnessPayload),
    Exponents(ExponentsPayload),
    Charpoly(CharpolyPayload),
    Compare(ComparePayload),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Green(_) => "green",
            Payload::Game(_) => "game",
            Payload::Polydisk(_) => "polydisk",
            Payload::Pullback(_) => "pullback",
            Payload::FmBound(_) => "fm_bound",
            Payload::Witness(_) => "witness",
            Payload::Exponents(_) => "exponents",
            Payload::Charpoly(_) => "charpoly",
            Payload::Compare(_) => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    pub tolerances: Tolerances,
    pub payload: Payload,
}

/// A scenario as read from input: the raw object, kept for the report
/// echo, and its parse result.
#[derive(Debug, Clone)]
pub struct ParsedScenario {
    pub raw: Value,
    pub scenario: Result<Scenario>,
}

/// Splits the input into scenario objects. Only a syntactically broken
/// document or a top level that is neither an object nor an array fails
/// as a whole.
pub fn parse_document(text: &str, base: &Tolerances) -> Result<Vec<ParsedScenario>> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    let items = match doc {
        Value::Array(items) => items,
        obj @ Value::Object(_) => vec![obj],
        _ => {
            return Err(Error::Schema(
                "top level must be a scenario object or an array of them".into(),
            ))
        }
    };
    Ok(items
        .into_iter()
        .map(|raw| {
            let scenario = parse_scenario(&raw, base);
            ParsedScenario { raw, scenario }
        })
        .collect())
}

pub fn parse_scenario(raw: &Value, base: &Tolerances) -> Result<Scenario> {
    let Value::Object(map) = raw else {
        return Err(Error::Schema("scenario must be an object".into()));
    };
    let mut map = map.clone();
    if !map.contains_key("kind") {
        return Err(Error::Schema("missing field `kind`".into()));
    }
    let name = match map.remove("name") {
        None => None,
        Some(Value::String(s)) => Some(s),
        Some(_) => return Err(Error::Schema("field `name` must be a string".into())),
    };
    let tolerances = match map.remove("tolerances") {
        None => *base,
        Some(overrides) => merge_tolerances(base, overrides)?,
    };
    let payload: Payload = serde_json::from_value(Value::Object(map))
        .map_err(|e| Error::Schema(e.to_string()))?;
    Ok(Scenario {
        name,
        tolerances,
        payload,
    })
}

fn merge_tolerances(base: &Tolerances, overrides: Value) -> Result<Tolerances> {
    let Value::Object(overrides) = overrides else {
        return Err(Error::Schema("field `tolerances` must be an object".into()));
    };
    let mut merged = match serde_json::to_value(base) {
        Ok(Value::Object(m)) => m,
        _ => unreachable!("tolerances serialize to an object"),
    };
    merged.extend(overrides);
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| Error::Schema(format!("field `tolerances`: {e}")))
}

pub const SCHEMA: &str = r#"Scenario input: a JSON object or an array of objects.

Common fields
  kind         one of green, game, polydisk, pullback, fm_bound, witness,
               exponents, charpoly, compare (required)
  name         string, echoed in the report (optional)
  tolerances   object overriding any of: pivot, definiteness,
               condition_limit, equal_components, f_symmetry, game_gap,
               relative, archimedean, grid_step (optional)

Radius assignments
  radii        array of {"place": "inf" | prime, "value": number | "p/q"}
               places not listed have radius 1

green
  entries      symmetric matrix, nested rows or flat row-major (required)
  orbits       array of 1-based index arrays partitioning the indices
  generators   array of permutations in 1-based one-line notation
  weights      nonnegative weight vector, alias "s"
  equilibrium  true | false; absent means "if negative definite"

game
  entries      square payoff matrix (required)
  shift        real c; also reports Val(G + cJ)

polydisk
  d            dimension (required)
  radii

pullback
  d, degree, multiplicity   positive integers (required)
  divisor_degree            |X'| > 0; on curves multiplicity * |X'| = degree
  radii

fm_bound
  candidates   array of {d, degree, multiplicity, radii, contained: bool}

compare
  d, degree, multiplicity, radii   the pulled-back polydisk
  candidates                       as in fm_bound

witness
  d            dimension (required)
  radii        must satisfy |r| > 1
  count        number of witness points (default 10)

exponents
  points       array of exponent vectors of equal length (required)
  polynomial   array of {"monomial": [..], "coefficient": integer | "p/q"}

charpoly
  entries      square matrix of integers, decimals or "p/q" strings

Exit codes
  0 all scenarios ok, 1 schema or input error, 2 numeric failure,
  3 hypothesis failure (boundary optimum, subcritical radii).
  A batch exits with the code of its first failing scenario.
"#;
