//! JSON shapes. Big integers travel as decimal strings.

use serde::{Deserialize, Serialize};

use squares_core::catalog::FamilyParams;
use squares_core::{BigInt, SquareSystem};

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct SystemOutput {
    pub n: usize,
    pub roots: Vec<String>,
    pub certificates: Vec<String>,
    pub s: String,
    pub reduced: bool,
}

impl From<&SquareSystem> for SystemOutput {
    fn from(sys: &SquareSystem) -> Self {
        SystemOutput {
            n: sys.n(),
            roots: strings(&sys.roots),
            certificates: strings(&sys.certificates),
            s: sys.s.to_string(),
            reduced: true,
        }
    }
}

#[derive(Serialize)]
pub struct SweepLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<[String; 2]>,
    #[serde(flatten)]
    pub system: SystemOutput,
}

impl SweepLine {
    pub fn new(point: &FamilyParams, sys: &SquareSystem) -> Self {
        let (t, params) = match point {
            FamilyParams::T(t) => (Some(t.to_string()), None),
            FamilyParams::Pair(a, b) => (None, Some([a.to_string(), b.to_string()])),
        };
        SweepLine {
            t,
            params,
            system: sys.into(),
        }
    }
}

/// An integer given either as a JSON string or a JSON number.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Text(String),
    Number(serde_json::Number),
}

impl IntText {
    fn parse(&self) -> Result<BigInt, String> {
        let text = match self {
            IntText::Text(s) => s.clone(),
            IntText::Number(n) => n.to_string(),
        };
        text.trim().parse().map_err(|_| format!("`{text}` is not an integer"))
    }
}

#[derive(Deserialize)]
pub struct SystemInput {
    pub n: Option<usize>,
    pub roots: Vec<IntText>,
    #[serde(default)]
    pub certificates: Vec<IntText>,
    pub s: Option<IntText>,
}

impl SystemInput {
    /// Missing `s` is taken as the sum of the squared roots.
    pub fn into_system(self) -> Result<SquareSystem, String> {
        let parse_all = |v: &[IntText]| v.iter().map(IntText::parse).collect::<Result<Vec<_>, _>>();
        let roots = parse_all(&self.roots)?;
        let certificates = parse_all(&self.certificates)?;
        let s = match &self.s {
            Some(s) => s.parse()?,
            None => roots.iter().map(|x| x * x).sum(),
        };
        Ok(SquareSystem { roots, certificates, s })
    }
}
