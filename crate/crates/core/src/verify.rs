//! Independent validation of chain solutions and square systems, and the
//! conversions between the two.
//!
//! Checks here recompute everything from the roots with `isqrt`; nothing
//! produced by the constructions is trusted.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::exactmath::{exact_sqrt, isqrt, BigInt};
use crate::seeds::{ChainSolution, SquareSystem};
use crate::{Error, Result};

/// Per-pair outcome of [`validate_chain`]. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    /// `Σ x_i^2`, the value every pair norm must equal.
    pub root_sum: BigInt,
    /// `(index, x_i^2 + y_i^2)` for every pair whose norm differs.
    pub failures: Vec<(usize, BigInt)>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid chain, s = {}", self.root_sum);
        }
        write!(f, "sum of root squares {}", self.root_sum)?;
        for (i, norm) in &self.failures {
            write!(f, "; pair {i} has norm {norm}")?;
        }
        Ok(())
    }
}

pub fn validate_chain(sol: &ChainSolution) -> ChainReport {
    let root_sum = sol.sum_of_root_squares();
    let failures = sol
        .pairs
        .iter()
        .enumerate()
        .filter_map(|(i, (x, y))| {
            let norm = x * x + y * y;
            (norm != root_sum).then_some((i + 1, norm))
        })
        .collect();
    ChainReport { root_sum, failures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemFailure {
    /// Root and certificate counts differ.
    Shape { roots: usize, certificates: usize },
    SumMismatch { stated: BigInt, actual: BigInt },
    ZeroRoot { index: usize },
    NotSquare { index: usize, exclusion_sum: BigInt },
    CertificateMismatch { index: usize, stated: BigInt, actual: BigInt },
    Repeated { first: usize, second: usize },
}

impl fmt::Display for SystemFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemFailure::Shape { roots, certificates } => {
                write!(f, "{roots} roots but {certificates} certificates")
            }
            SystemFailure::SumMismatch { stated, actual } => {
                write!(f, "stated s = {stated} but the squares sum to {actual}")
            }
            SystemFailure::ZeroRoot { index } => write!(f, "root {index} is zero"),
            SystemFailure::NotSquare { index, exclusion_sum } => {
                write!(f, "excluding root {index} leaves {exclusion_sum}, not a square")
            }
            SystemFailure::CertificateMismatch { index, stated, actual } => {
                write!(f, "certificate {index} is {stated}, expected {actual}")
            }
            SystemFailure::Repeated { first, second } => {
                write!(f, "roots {first} and {second} have equal magnitude")
            }
        }
    }
}

/// Outcome of [`validate_system`]. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    pub exclusion_sums: Vec<BigInt>,
    pub failures: Vec<SystemFailure>,
}

impl SystemReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SystemReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid system of {} squares", self.exclusion_sums.len());
        }
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Recomputes every exclusion sum and checks it is a perfect square. An empty
/// certificate list skips the certificate comparison.
pub fn validate_system(sys: &SquareSystem, require_distinct: bool) -> SystemReport {
    let mut failures = Vec::new();
    let squares: Vec<BigInt> = sys.roots.iter().map(|x| x * x).collect();
    let total: BigInt = squares.iter().sum();
    if sys.s != total {
        failures.push(SystemFailure::SumMismatch {
            stated: sys.s.clone(),
            actual: total.clone(),
        });
    }
    let check_certs = !sys.certificates.is_empty();
    if check_certs && sys.certificates.len() != sys.roots.len() {
        failures.push(SystemFailure::Shape {
            roots: sys.roots.len(),
            certificates: sys.certificates.len(),
        });
    }
    let exclusion_sums: Vec<BigInt> = squares.iter().map(|sq| &total - sq).collect();
    for (i, (root, rest)) in sys.roots.iter().zip(&exclusion_sums).enumerate() {
        let index = i + 1;
        if root.is_zero() {
            failures.push(SystemFailure::ZeroRoot { index });
        }
        let root_of_rest = match isqrt(rest) {
            Ok(r) if &(&r * &r) == rest => r,
            _ => {
                failures.push(SystemFailure::NotSquare {
                    index,
                    exclusion_sum: rest.clone(),
                });
                continue;
            }
        };
        if let Some(cert) = sys.certificates.get(i).filter(|_| check_certs) {
            if cert.abs() != root_of_rest {
                failures.push(SystemFailure::CertificateMismatch {
                    index,
                    stated: cert.clone(),
                    actual: root_of_rest,
                });
            }
        }
    }
    if require_distinct {
        let mut order: Vec<usize> = (0..sys.roots.len()).collect();
        order.sort_by_key(|&i| sys.roots[i].abs());
        for w in order.windows(2) {
            if sys.roots[w[0]].abs() == sys.roots[w[1]].abs() {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                failures.push(SystemFailure::Repeated {
                    first: a + 1,
                    second: b + 1,
                });
            }
        }
    }
    SystemReport {
        exclusion_sums,
        failures,
    }
}

/// Reads roots and certificates off a valid chain, with nonnegative signs.
pub fn system_from_chain(sol: &ChainSolution) -> Result<SquareSystem> {
    let report = validate_chain(sol);
    if !report.is_valid() {
        return Err(Error::Contract(format!("not a chain solution: {report}")));
    }
    Ok(SquareSystem {
        roots: sol.pairs.iter().map(|(x, _)| x.abs()).collect(),
        certificates: sol.pairs.iter().map(|(_, y)| y.abs()).collect(),
        s: report.root_sum,
    })
}

/// Rebuilds the chain from the roots alone, taking `y_i` as the exact square
/// root of the `i`-th exclusion sum.
pub fn chain_from_system(sys: &SquareSystem) -> Result<ChainSolution> {
    let total: BigInt = sys.roots.iter().map(|x| x * x).sum();
    let mut bad = Vec::new();
    let mut pairs = Vec::with_capacity(sys.roots.len());
    for (i, x) in sys.roots.iter().enumerate() {
        let rest = &total - x * x;
        match exact_sqrt(&rest) {
            Some(y) => pairs.push((x.abs(), y)),
            None => bad.push(format!("{} (index {})", rest, i + 1)),
        }
    }
    if !bad.is_empty() {
        return Err(Error::Domain(format!(
            "exclusion sums not perfect squares: {}",
            bad.join(", ")
        )));
    }
    Ok(ChainSolution::new(pairs))
}

/// Builds a system from roots alone, deriving certificates and `s`.
pub fn system_from_roots(roots: &[BigInt]) -> Result<SquareSystem> {
    system_from_chain(&chain_from_system(&SquareSystem {
        roots: roots.to_vec(),
        certificates: Vec::new(),
        s: BigInt::zero(),
    })?)
}
