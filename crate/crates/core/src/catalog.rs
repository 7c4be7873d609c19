//! Known parametric families, stored as coefficient tuples in
//! `data/families.txt`, with evaluation and regeneration checks.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::derive::{method2_chain, pipeline};
use crate::evolve::{method1, transform};
use crate::exactmath::{vec_gcd, BigInt};
use crate::polyfield::HomogPoly;
use crate::seeds::{seed_n5_simple, seed_n6, ChainSolution, SquareSystem};
use crate::verify::{chain_from_system, system_from_chain, validate_system};
use crate::{Error, Result};

const CATALOG_TEXT: &str = include_str!("../data/families.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Tuples in two parameters `(u, v)`.
    Homogeneous,
    /// Tuples in one parameter `t`, evaluated at `(t, 1)`.
    Univariate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRecord {
    pub id: String,
    pub n: usize,
    pub degree: usize,
    pub kind: FamilyKind,
    /// The family has equal roots by construction.
    pub repeats: bool,
    pub roots: Vec<HomogPoly>,
    /// Empty when only roots are stored.
    pub certificates: Vec<HomogPoly>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<FamilyRecord> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let [id, n, degree, kind, rest @ ..] = fields.as_slice() else {
        return Err(parse_error(line, "header needs `id n degree kind`"));
    };
    let number = |s: &str| s.parse::<usize>().map_err(|e| parse_error(line, format!("`{s}`: {e}")));
    let kind = match *kind {
        "homog" => FamilyKind::Homogeneous,
        "univariate" => FamilyKind::Univariate,
        other => return Err(parse_error(line, format!("unknown kind `{other}`"))),
    };
    let repeats = match rest {
        [] => false,
        ["repeats"] => true,
        _ => return Err(parse_error(line, format!("unexpected header fields {rest:?}"))),
    };
    Ok(FamilyRecord {
        id: id.to_string(),
        n: number(n)?,
        degree: number(degree)?,
        kind,
        repeats,
        roots: Vec::new(),
        certificates: Vec::new(),
    })
}

fn finish(record: FamilyRecord, line: usize) -> Result<FamilyRecord> {
    if record.roots.len() != record.n {
        return Err(parse_error(
            line,
            format!("{}: expected {} roots, found {}", record.id, record.n, record.roots.len()),
        ));
    }
    if !record.certificates.is_empty() && record.certificates.len() != record.n {
        return Err(parse_error(line, format!("{}: incomplete certificates", record.id)));
    }
    Ok(record)
}

/// Parses catalog text: `#` comments, blank lines, a header per record,
/// then `xK = (...)` and optional `yK = (...)` lines in order.
pub fn parse_catalog(text: &str) -> Result<Vec<FamilyRecord>> {
    let mut records = Vec::new();
    let mut current: Option<FamilyRecord> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let Some((name, tuple)) = content.split_once('=') else {
            if let Some(done) = current.take() {
                records.push(finish(done, line)?);
            }
            current = Some(parse_header(line, content)?);
            continue;
        };
        let record = current
            .as_mut()
            .ok_or_else(|| parse_error(line, "tuple before any header"))?;
        let poly: HomogPoly = tuple.parse().map_err(|e| match e {
            Error::Parse { message, .. } => parse_error(line, message),
            other => other,
        })?;
        if poly.degree() != record.degree {
            return Err(parse_error(
                line,
                format!("tuple has degree {}, header says {}", poly.degree(), record.degree),
            ));
        }
        let name = name.trim();
        let (target, prefix) = match name.chars().next() {
            Some('x') => (&mut record.roots, 'x'),
            Some('y') => (&mut record.certificates, 'y'),
            _ => return Err(parse_error(line, format!("unknown entry `{name}`"))),
        };
        let expected = format!("{prefix}{}", target.len() + 1);
        if name != expected {
            return Err(parse_error(line, format!("expected `{expected}`, found `{name}`")));
        }
        target.push(poly);
    }
    if let Some(done) = current.take() {
        records.push(finish(done, text.lines().count())?);
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// The built-in records, sorted by id.
pub fn families() -> &'static [FamilyRecord] {
    static RECORDS: OnceLock<Vec<FamilyRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| parse_catalog(CATALOG_TEXT).expect("built-in catalog is well formed"))
}

pub fn list_families() -> Vec<&'static str> {
    families().iter().map(|r| r.id.as_str()).collect()
}

pub fn family(id: &str) -> Result<&'static FamilyRecord> {
    families()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Evaluation point: a pair `(u, v)`, or `t` meaning `(t, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Pair(BigInt, BigInt),
    T(BigInt),
}

impl FamilyParams {
    fn pair(&self) -> (BigInt, BigInt) {
        match self {
            FamilyParams::Pair(u, v) => (u.clone(), v.clone()),
            FamilyParams::T(t) => (t.clone(), BigInt::one()),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::Pair(u, v) => write!(f, "({u}, {v})"),
            FamilyParams::T(t) => write!(f, "t = {t}"),
        }
    }
}

impl FamilyRecord {
    /// Evaluates, gcd-reduces and validates. Families without repeats must
    /// give distinct nonzero roots at the point.
    pub fn eval(&self, params: &FamilyParams) -> Result<SquareSystem> {
        let (u, v) = params.pair();
        let roots: Vec<BigInt> = self.roots.iter().map(|p| p.eval(&u, &v)).collect();
        let g = vec_gcd(&roots).map_err(|_| Error::Degenerate(format!("{}: all roots vanish at {params}", self.id)))?;
        let roots: Vec<BigInt> = roots.iter().map(|x| x / &g).collect();
        if let Some(i) = roots.iter().position(Zero::is_zero) {
            return Err(Error::Degenerate(format!("{}: x_{} vanishes at {params}", self.id, i + 1)));
        }
        let system = if self.certificates.is_empty() {
            system_from_chain(&chain_from_system(&SquareSystem {
                roots,
                certificates: Vec::new(),
                s: BigInt::zero(),
            })?)?
        } else {
            let pairs = roots
                .into_iter()
                .zip(&self.certificates)
                .map(|(x, y)| (x, y.eval(&u, &v) / &g))
                .collect();
            system_from_chain(&ChainSolution::new(pairs))?
        };
        let report = validate_system(&system, !self.repeats);
        if !report.is_valid() {
            return Err(Error::Degenerate(format!("{} at {params}: {report}", self.id)));
        }
        Ok(system)
    }
}

pub fn eval_family(id: &str, params: &FamilyParams) -> Result<SquareSystem> {
    family(id)?.eval(params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub params: FamilyParams,
    pub catalog: Vec<BigInt>,
    pub regenerated: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub id: String,
    pub points: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "OK ({} points)", self.points);
        }
        writeln!(f, "MISMATCH at {} of {} points", self.mismatches.len(), self.points)?;
        for m in &self.mismatches {
            writeln!(f, "  at {}:", m.params)?;
            for (i, (c, r)) in m.catalog.iter().zip(&m.regenerated).enumerate() {
                let mark = if c == r { ' ' } else { '!' };
                writeln!(f, "  {mark} root {}: catalog {c}, regenerated {r}", i + 1)?;
            }
        }
        Ok(())
    }
}

const CROSS_CHECK_POINTS: usize = 10;

fn sorted_abs(values: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = values.into_iter().map(|x| x.abs()).collect();
    v.sort();
    v
}

fn reduced_roots(chain: &ChainSolution) -> Vec<BigInt> {
    sorted_abs(chain.reduced().pairs.into_iter().map(|(x, _)| x))
}

/// Independent construction of each record's roots at a point.
fn regenerate(id: &str, params: &FamilyParams) -> Result<Vec<BigInt>> {
    let (u, v) = params.pair();
    let t = &u;
    match id {
        "n5-method1-deg17" => Ok(method1(5, t)?.system.sorted_roots()),
        "n5-method1-deg6" => Ok(reduced_roots(&transform(&seed_n5_simple(t)?)?.solution)),
        "n6-method1-deg18" => Ok(reduced_roots(&transform(&seed_n6(t)?)?.solution)),
        "n5-method2-deg10" => Ok(reduced_roots(&method2_chain(5, &u, &v)?)),
        "n5-method2-deg30" => Ok(pipeline(5, &u, &v)?.sorted_roots()),
        "n6-method2-deg38" => Ok(pipeline(6, &u, &v)?.sorted_roots()),
        _ => Err(Error::Unsupported(format!("no generator for family {id}"))),
    }
}

fn sample_points(kind: FamilyKind) -> impl Iterator<Item = FamilyParams> {
    let univariate = (2..64i64).map(|t| FamilyParams::T(t.into()));
    let homogeneous = (2..64i64).flat_map(|sum| {
        (1..sum).filter_map(move |u| {
            let v = sum - u;
            (num_integer::gcd(u, v) == 1).then(|| FamilyParams::Pair(u.into(), v.into()))
        })
    });
    let points: Box<dyn Iterator<Item = FamilyParams>> = match kind {
        FamilyKind::Univariate => Box::new(univariate),
        FamilyKind::Homogeneous => Box::new(homogeneous),
    };
    points
}

/// Regenerates the record at ten non-degenerate points through the
/// construction pipelines and compares root multisets after gcd reduction.
pub fn cross_check(id: &str) -> Result<CrossCheckReport> {
    let record = family(id)?;
    let mut report = CrossCheckReport {
        id: id.to_string(),
        points: 0,
        mismatches: Vec::new(),
    };
    for params in sample_points(record.kind) {
        if report.points == CROSS_CHECK_POINTS {
            break;
        }
        let catalog = match record.eval(&params) {
            Ok(sys) => sys.sorted_roots(),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        };
        let regenerated = match regenerate(id, &params) {
            Ok(roots) => roots,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        };
        report.points += 1;
        if catalog != regenerated {
            report.mismatches.push(Mismatch {
                params,
                catalog,
                regenerated,
            });
        }
    }
    if report.points < CROSS_CHECK_POINTS {
        return Err(Error::Degenerate(format!(
            "{id}: only {} usable sample points",
            report.points
        )));
    }
    Ok(report)
}
