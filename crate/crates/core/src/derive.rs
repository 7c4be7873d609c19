//! The second construction method: fill the chain from a multi-way
//! representation, then choose parameters that make the residual
//! `Σ x_j^2 - (x_1^2 + y_1^2)` vanish.
//!
//! Symbolic work runs with one parameter pair dehomogenized to `(t, 1)`;
//! everything else is a polynomial or rational function in `t`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::evolve::transform;
use crate::exactmath::{vec_gcd, BigInt, Rational};
use crate::identities::{chain4, chain8, ParameterVector, RepresentationPair};
use crate::polyfield::{interpolate, Field, HomogPoly, Poly, RatFunc, Ring};
use crate::seeds::{ChainSolution, SquareSystem};
use crate::verify::{system_from_chain, validate_system};
use crate::{Error, Result};

/// Which multi-way representation feeds the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainWidth {
    /// Four representations from three parameter pairs.
    Four,
    /// Eight representations from four parameter pairs.
    Eight,
}

impl ChainWidth {
    pub fn representations(self) -> usize {
        match self {
            ChainWidth::Four => 4,
            ChainWidth::Eight => 8,
        }
    }

    pub fn parameter_pairs(self) -> usize {
        match self {
            ChainWidth::Four => 3,
            ChainWidth::Eight => 4,
        }
    }

    pub fn build<R: Ring>(self, params: &[(R, R)]) -> Result<Vec<RepresentationPair<R>>> {
        if params.len() != self.parameter_pairs() {
            return Err(Error::Contract(format!(
                "{self:?} chain takes {} parameter pairs, got {}",
                self.parameter_pairs(),
                params.len()
            )));
        }
        let params = ParameterVector::new(params.to_vec());
        Ok(match self {
            ChainWidth::Four => chain4(&params),
            ChainWidth::Eight => chain8(&params),
        })
    }
}

/// How a representation `a^2 + b^2` fills a slot `(x_j, y_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `(a, b)`
    Direct,
    /// `(-a, b)`
    Negated,
    /// `(b, a)`
    Swapped,
    /// `(-b, a)`
    NegatedSwapped,
}

impl Orientation {
    fn apply<R: Ring>(self, rep: &RepresentationPair<R>) -> (R, R) {
        match self {
            Orientation::Direct => (rep.a.clone(), rep.b.clone()),
            Orientation::Negated => (-rep.a.clone(), rep.b.clone()),
            Orientation::Swapped => (rep.b.clone(), rep.a.clone()),
            Orientation::NegatedSwapped => (-rep.b.clone(), rep.a.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    /// 0-based index into the chain.
    pub source: usize,
    pub orientation: Orientation,
}

const fn slot(source: usize, orientation: Orientation) -> Slot {
    Slot { source, orientation }
}

/// One slot per pair `(x_j, y_j)`. Every slot has the chain's common norm,
/// so the assignment always satisfies the equal-sum condition; only the
/// root-sum condition remains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAssignment {
    pub width: ChainWidth,
    pub slots: Vec<Slot>,
}

use Orientation::{Direct as D, Negated as N, Swapped as W};

const N5_SLOTS: [Slot; 5] = [slot(0, D), slot(1, D), slot(2, D), slot(0, N), slot(1, N)];
const N6_SLOTS: [Slot; 6] = [slot(0, D), slot(2, W), slot(3, D), slot(4, D), slot(5, D), slot(6, D)];
const N7_SLOTS: [Slot; 7] = [
    slot(4, D),
    slot(4, N),
    slot(0, D),
    slot(1, D),
    slot(3, D),
    slot(5, D),
    slot(6, W),
];
const N8_SLOTS: [Slot; 8] = [
    slot(0, D),
    slot(0, N),
    slot(4, D),
    slot(4, N),
    slot(1, D),
    slot(3, D),
    slot(5, D),
    slot(6, W),
];

impl ChainAssignment {
    pub fn new(width: ChainWidth, slots: Vec<Slot>) -> Result<Self> {
        if let Some(bad) = slots.iter().find(|s| s.source >= width.representations()) {
            return Err(Error::Contract(format!(
                "slot source {} outside a chain of {}",
                bad.source,
                width.representations()
            )));
        }
        Ok(ChainAssignment { width, slots })
    }

    /// The built-in assignment for `n` in 5..=8.
    pub fn builtin(n: usize) -> Result<Self> {
        let (width, slots): (ChainWidth, &[Slot]) = match n {
            5 => (ChainWidth::Four, &N5_SLOTS),
            6 => (ChainWidth::Eight, &N6_SLOTS),
            7 => (ChainWidth::Eight, &N7_SLOTS),
            8 => (ChainWidth::Eight, &N8_SLOTS),
            _ => return Err(Error::Unsupported(format!("no built-in chain assignment for n = {n}"))),
        };
        Ok(ChainAssignment {
            width,
            slots: slots.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// Fills every slot from the chain built on `params`.
    pub fn chain<R: Ring>(&self, params: &[(R, R)]) -> Result<ChainSolution<R>> {
        let reps = self.width.build(params)?;
        Ok(ChainSolution::new(
            self.slots
                .iter()
                .map(|s| s.orientation.apply(&reps[s.source]))
                .collect(),
        ))
    }
}

/// `Σ x_j^2 - (x_1^2 + y_1^2)`; zero exactly when the root-sum condition holds.
pub fn residual<R: Ring>(assignment: &ChainAssignment, params: &[(R, R)]) -> Result<R> {
    let chain = assignment.chain(params)?;
    Ok(chain.sum_of_root_squares() - chain.s())
}

/// `a u^2 + b u v + c v^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm<R> {
    pub a: R,
    pub b: R,
    pub c: R,
}

impl<R: Ring> QuadraticForm<R> {
    pub fn eval(&self, u: &R, v: &R) -> R {
        self.a.clone() * u.square() + self.b.clone() * u.clone() * v.clone() + self.c.clone() * v.square()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> QuadraticForm<S> {
        QuadraticForm {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
        }
    }

    /// Reads the coefficients off values at `(1,0)`, `(0,1)` and `(1,1)` of
    /// a function known to be a quadratic form.
    pub fn from_samples(mut sample: impl FnMut(&R, &R) -> Result<R>) -> Result<Self> {
        let (zero, one) = (R::zero(), R::one());
        let a = sample(&one, &zero)?;
        let c = sample(&zero, &one)?;
        let b = sample(&one, &one)? - a.clone() - c.clone();
        Ok(QuadraticForm { a, b, c })
    }
}

/// The residual as a quadratic form in the parameter pair at `unknown`; the
/// entry of `params` at that index is ignored.
pub fn residual_form<R: Ring>(
    assignment: &ChainAssignment,
    params: &[(R, R)],
    unknown: usize,
) -> Result<QuadraticForm<R>> {
    if unknown >= params.len() {
        return Err(Error::Contract(format!("unknown pair {unknown} out of range")));
    }
    let mut trial = params.to_vec();
    let form = QuadraticForm::from_samples(|u: &R, v: &R| {
        trial[unknown] = (u.clone(), v.clone());
        residual(assignment, &trial)
    })?;
    if form.is_zero() {
        return Err(Error::Degenerate(format!(
            "residual does not depend on parameter pair {}",
            unknown + 1
        )));
    }
    Ok(form)
}

/// `b^2 - 4ac`.
pub fn discriminant<R: Ring>(form: &QuadraticForm<R>) -> Result<R> {
    if form.a.is_zero() {
        return Err(Error::Degenerate("leading coefficient is zero; the form is linear".into()));
    }
    Ok(form.b.square() - R::from_i64(4) * form.a.clone() * form.c.clone())
}

/// Coefficients (lowest first) of a quartic `g(k)` from its values at
/// `k = 0..=4`.
pub fn quartic_from_samples<F: Field>(mut sample: impl FnMut(&F) -> Result<F>) -> Result<Vec<F>> {
    let nodes: Vec<F> = (0..5).map(F::from_i64).collect();
    let values = nodes.iter().map(&mut sample).collect::<Result<Vec<_>>>()?;
    let mut coeffs = interpolate(&nodes, &values)?;
    coeffs.resize(5, F::zero());
    Ok(coeffs)
}

/// Which end of the quartic is matched against a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FermatAnchor {
    /// Square leading coefficient; kills the cubic and quadratic terms.
    Leading,
    /// Square constant term; kills the linear and quadratic terms.
    Constant,
}

/// A value `u` at which `e + d u + c u^2 + b u^3 + a u^4` is a square, found
/// by matching the quartic against the square of a quadratic and solving
/// the leftover linear condition.
pub fn fermat_square<F: Field>(quartic: &[F], anchor: FermatAnchor) -> Result<F> {
    if quartic.len() != 5 || quartic[4].is_zero() {
        return Err(Error::Domain("expected a quartic with nonzero leading coefficient".into()));
    }
    let two = F::from_i64(2);
    let (lin, konst) = match anchor {
        FermatAnchor::Leading => {
            let alpha = quartic[4]
                .sqrt_exact()
                .ok_or_else(|| Error::Unsupported("leading coefficient is not a square".into()))?;
            let beta = quartic[3].clone() / (two.clone() * alpha.clone());
            let gamma = (quartic[2].clone() - beta.square()) / (two.clone() * alpha);
            // Remainder (d - 2 beta gamma) u + (e - gamma^2).
            (
                quartic[1].clone() - two * beta * gamma.clone(),
                quartic[0].clone() - gamma.square(),
            )
        }
        FermatAnchor::Constant => {
            let eps = quartic[0]
                .sqrt_exact()
                .filter(|e| !e.is_zero())
                .ok_or_else(|| Error::Unsupported("constant term is not a nonzero square".into()))?;
            let beta = quartic[1].clone() / (two.clone() * eps.clone());
            let alpha = (quartic[2].clone() - beta.square()) / (two.clone() * eps);
            // Remainder u^3 ((a - alpha^2) u + (b - 2 alpha beta)).
            (
                quartic[4].clone() - alpha.square(),
                quartic[3].clone() - two * alpha * beta,
            )
        }
    };
    if lin.is_zero() {
        return Err(if konst.is_zero() {
            Error::Degenerate("quartic is identically a square".into())
        } else {
            Error::NoRationalRoot("linear condition has no solution".into())
        });
    }
    Ok(-konst / lin)
}

/// Results of both anchors, skipping those that fail.
pub fn fermat_points<F: Field>(quartic: &[F]) -> Vec<(FermatAnchor, F)> {
    [FermatAnchor::Constant, FermatAnchor::Leading]
        .into_iter()
        .filter_map(|anchor| fermat_square(quartic, anchor).ok().map(|u| (anchor, u)))
        .collect()
}

/// Both roots `(u : v)` of a form over a field. A form with `a = 0` is
/// solved linearly: `(1 : 0)` and `(-c : b)`.
pub fn solve_quadratic<F: Field>(form: &QuadraticForm<F>) -> Result<[(F, F); 2]> {
    if form.a.is_zero() {
        if form.b.is_zero() {
            return Err(Error::Degenerate("form has no linear or quadratic part".into()));
        }
        return Ok([(F::one(), F::zero()), (-form.c.clone(), form.b.clone())]);
    }
    let disc = discriminant(form)?;
    let root = disc
        .sqrt_exact()
        .ok_or_else(|| Error::NoRationalRoot("discriminant is not a square".into()))?;
    let two_a = F::from_i64(2) * form.a.clone();
    Ok([
        (root.clone() - form.b.clone(), two_a.clone()),
        (-root - form.b.clone(), two_a),
    ])
}

/// The other root from the product of roots: `(c v0 : a u0)`.
pub fn vieta_second_root<F: Field>(form: &QuadraticForm<F>, known: &(F, F)) -> Result<(F, F)> {
    if !form.eval(&known.0, &known.1).is_zero() {
        return Err(Error::Contract("known point is not a root of the form".into()));
    }
    let root = (form.c.clone() * known.1.clone(), form.a.clone() * known.0.clone());
    if root.0.is_zero() && root.1.is_zero() {
        return Err(Error::Degenerate("second root is undefined".into()));
    }
    Ok(root)
}

/// A projective pair of polynomials in the dehomogenized parameter.
pub type PolyPair = (Poly, Poly);

/// Clears denominators and common factors: integer coefficients, coprime
/// over the rationals, joint content 1, and the first nonzero component
/// with positive leading coefficient.
pub fn projective_normalize(u: &RatFunc, v: &RatFunc) -> Result<PolyPair> {
    if u.is_zero() && v.is_zero() {
        return Err(Error::Degenerate("projective pair (0 : 0)".into()));
    }
    let first = u.num() * v.den();
    let second = v.num() * u.den();
    let g = Poly::gcd(&first, &second);
    let (first, second) = (first.div_exact(&g)?, second.div_exact(&g)?);
    let (c1, _) = first.content_and_primitive();
    let (c2, _) = second.content_and_primitive();
    let content = if c1.is_zero() {
        c2
    } else if c2.is_zero() {
        c1
    } else {
        let num = c1.numer().gcd(c2.numer());
        let den = c1.denom().lcm(c2.denom());
        let sign = if c1.is_negative() { -BigInt::one() } else { BigInt::one() };
        Rational::new(sign * num, den)
    };
    let inv = content.recip();
    Ok((first.scale(&inv), second.scale(&inv)))
}

/// `u1 v2 == u2 v1`.
pub fn projectively_equal(x: &PolyPair, y: &PolyPair) -> bool {
    &x.0 * &y.1 == &x.1 * &y.0
}

/// A closed-form parameter pair as homogeneous coefficient tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParameterForm {
    pub first: &'static [i64],
    pub second: &'static [i64],
}

impl ParameterForm {
    pub fn homog(&self) -> (HomogPoly, HomogPoly) {
        (HomogPoly::from_i64s(self.first), HomogPoly::from_i64s(self.second))
    }

    pub fn eval_in<R: Ring>(&self, u: &R, v: &R) -> (R, R) {
        let (f, s) = self.homog();
        (f.eval_in(u, v), s.eval_in(u, v))
    }

    pub fn dehomogenized(&self) -> PolyPair {
        let (f, s) = self.homog();
        (f.dehomogenize(), s.dehomogenize())
    }
}

/// Closed-form parameter substitutions for the second method.
pub mod closed_forms {
    use super::ParameterForm;

    const fn pf(first: &'static [i64], second: &'static [i64]) -> ParameterForm {
        ParameterForm { first, second }
    }

    /// Five squares, in terms of `q`.
    pub const N5_P: ParameterForm = pf(&[0, 4, 0, -4, 0], &[3, 0, 0, 0, 3]);
    pub const N5_R: ParameterForm = pf(&[6, -17, 24, -12, -2, 3], &[3, -2, -12, 24, -17, 6]);

    /// Six squares, in terms of `p`.
    pub const N6_R: ParameterForm = pf(&[0, -2, 0, 14, 0, -14, 0, 2, 0], &[1, 0, 8, 0, -2, 0, 8, 0, 1]);
    pub const N6_S: ParameterForm = pf(&[0, 2, 0, -2, 0], &[1, 0, 2, 0, 1]);
    pub const N6_Q: ParameterForm = pf(
        &[
            1, 0, 26, 0, 184, 0, 126, 0, 2105, 0, -2972, 0, 7288, 0, -5284, 0, 2435, 0, -94, 0, 272, 0, 6, 0, 3, 0,
        ],
        &[
            0, 3, 0, 6, 0, 272, 0, -94, 0, 2435, 0, -5284, 0, 7288, 0, -2972, 0, 2105, 0, 126, 0, 184, 0, 26, 0, 1,
        ],
    );

    /// Seven squares, in terms of `p`.
    pub const N7_R: ParameterForm = pf(&[5, 0, 10, 0, 5], &[0, 8, 0, -8, 0]);
    pub const N7_S: ParameterForm = pf(&[25, 0, 164, 0, 22, 0, 164, 0, 25], &[0, 16, 0, -240, 0, 240, 0, -16, 0]);
    pub const N7_Q: ParameterForm = pf(
        &[
            78125, 0, 1399500, 0, 8937610, 0, 23564092, 0, 78166867, 0, 3600152, 0, 182941900, 0, -64814760, 0,
            51621283, 0, 17916188, 0, 14166858, 0, 2174060, 0, 248125, 0,
        ],
        &[
            0, 248125, 0, 2174060, 0, 14166858, 0, 17916188, 0, 51621283, 0, -64814760, 0, 182941900, 0, 3600152,
            0, 78166867, 0, 23564092, 0, 8937610, 0, 1399500, 0, 78125,
        ],
    );

    /// Eight squares, in terms of `p`.
    pub const N8_R: ParameterForm = pf(&[6, 0, 12, 0, 6], &[0, 8, 0, -8, 0]);
    pub const N8_S: ParameterForm = pf(&[9, 0, 52, 0, 22, 0, 52, 0, 9], &[0, 8, 0, -56, 0, 56, 0, -8, 0]);
    pub const N8_Q: ParameterForm = pf(
        &[
            729, 0, 11916, 0, 68162, 0, 165308, 0, 512615, 0, 324248, 0, 968668, 0, 148568, 0, 481719, 0, 168924,
            0, 114434, 0, 18668, 0, 2025, 0,
        ],
        &[
            0, 2025, 0, 18668, 0, 114434, 0, 168924, 0, 481719, 0, 148568, 0, 968668, 0, 324248, 0, 512615, 0,
            165308, 0, 68162, 0, 11916, 0, 729,
        ],
    );
}

use closed_forms::*;

fn primitive_params(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let g = vec_gcd([a, b]).map_err(|_| Error::Degenerate("parameter pair (0, 0)".into()))?;
    Ok((a / &g, b / &g))
}

/// The assigned chain for `n` in 5..=8 at an integer parameter pair, before
/// any transform. For `n = 5` the pair is `q`; otherwise it is `p`.
pub fn method2_chain(n: usize, a: &BigInt, b: &BigInt) -> Result<ChainSolution> {
    let (a, b) = primitive_params(a, b)?;
    let x = (a, b);
    let params = match n {
        5 => vec![N5_P.eval_in(&x.0, &x.1), x.clone(), N5_R.eval_in(&x.0, &x.1)],
        6 => vec![
            x.clone(),
            N6_Q.eval_in(&x.0, &x.1),
            N6_R.eval_in(&x.0, &x.1),
            N6_S.eval_in(&x.0, &x.1),
        ],
        7 => vec![
            x.clone(),
            N7_Q.eval_in(&x.0, &x.1),
            N7_R.eval_in(&x.0, &x.1),
            N7_S.eval_in(&x.0, &x.1),
        ],
        8 => vec![
            x.clone(),
            N8_Q.eval_in(&x.0, &x.1),
            N8_R.eval_in(&x.0, &x.1),
            N8_S.eval_in(&x.0, &x.1),
        ],
        _ => return Err(Error::Unsupported(format!("no second-method pipeline for n = {n}"))),
    };
    if let Some(k) = params.iter().position(|(u, v)| u.is_zero() && v.is_zero()) {
        return Err(Error::Degenerate(format!("parameter pair {} vanishes", k + 1)));
    }
    ChainAssignment::builtin(n)?.chain(&params)
}

/// Runs the full second method for `n` in 5..=8: chain, one transform for
/// `n != 6`, gcd reduction, validation.
pub fn pipeline(n: usize, a: &BigInt, b: &BigInt) -> Result<SquareSystem> {
    let chain = method2_chain(n, a, b)?;
    let chain = if n == 6 { chain } else { transform(&chain)?.solution };
    let chain = chain.reduced();
    if let Some(i) = chain.zero_roots().first() {
        return Err(Error::Degenerate(format!("x_{} vanishes at ({a}, {b})", i + 1)));
    }
    if !chain.has_distinct_roots() {
        return Err(Error::Degenerate(format!("roots coincide at ({a}, {b})")));
    }
    let system = system_from_chain(&chain)?;
    let report = validate_system(&system, true);
    if !report.is_valid() {
        return Err(Error::Contract(format!("pipeline output failed validation: {report}")));
    }
    Ok(system)
}

pub fn pipeline_n5(q1: &BigInt, q2: &BigInt) -> Result<SquareSystem> {
    pipeline(5, q1, q2)
}

pub fn pipeline_n6(p1: &BigInt, p2: &BigInt) -> Result<SquareSystem> {
    pipeline(6, p1, p2)
}

pub fn pipeline_n7(p1: &BigInt, p2: &BigInt) -> Result<SquareSystem> {
    pipeline(7, p1, p2)
}

pub fn pipeline_n8(p1: &BigInt, p2: &BigInt) -> Result<SquareSystem> {
    pipeline(8, p1, p2)
}

/// Parameter pairs recovered by solving the residual from scratch, as
/// candidate lists in the dehomogenized parameter `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rederived {
    pub p: Vec<PolyPair>,
    pub r: Vec<PolyPair>,
    /// Paired index by index with `q` when `q` is obtained from each `s`.
    pub s: Vec<PolyPair>,
    pub q: Vec<PolyPair>,
}

fn poly_pair(u: &Poly, v: &Poly) -> (Poly, Poly) {
    (u.clone(), v.clone())
}

fn to_field(form: &QuadraticForm<Poly>) -> QuadraticForm<RatFunc> {
    form.map(|c| RatFunc::from_poly(c.clone()))
}

fn normalized_roots(form: &QuadraticForm<Poly>) -> Result<Vec<PolyPair>> {
    solve_quadratic(&to_field(form))?
        .iter()
        .map(|(u, v)| projective_normalize(u, v))
        .collect()
}

/// The quartic in the first coordinate of pair `varying` (second coordinate
/// 1) given by the discriminant of the residual in pair `unknown`.
fn discriminant_quartic(
    assignment: &ChainAssignment,
    params: &[(Poly, Poly)],
    unknown: usize,
    varying: usize,
) -> Result<Vec<RatFunc>> {
    let mut trial = params.to_vec();
    quartic_from_samples(|k: &RatFunc| {
        let k = k.num().clone();
        trial[varying] = (k, Poly::one());
        let form = residual_form(assignment, &trial, unknown)?;
        Ok(RatFunc::from_poly(discriminant(&form)?))
    })
}

fn fermat_pair(quartic: &[RatFunc]) -> Result<PolyPair> {
    let u = fermat_square(quartic, FermatAnchor::Constant)?;
    projective_normalize(&u, &RatFunc::one())
}

fn pick_nontrivial(roots: Vec<PolyPair>) -> Result<PolyPair> {
    roots
        .into_iter()
        .find(|(_, v)| !v.is_zero())
        .ok_or_else(|| Error::Degenerate("only the trivial root (1 : 0)".into()))
}

/// Derives the five-square parameters with `q = (t, 1)`: `p` by Fermat's
/// method on the discriminant in `r`, then both roots `r`.
fn rederive_n5() -> Result<Rederived> {
    let assignment = ChainAssignment::builtin(5)?;
    let t = Poly::x();
    let q = poly_pair(&t, &Poly::one());
    let placeholder = (Poly::one(), Poly::zero());
    let params = vec![placeholder.clone(), q.clone(), placeholder];
    let p = fermat_pair(&discriminant_quartic(&assignment, &params, 2, 0)?)?;
    let params = vec![p.clone(), q, (Poly::zero(), Poly::zero())];
    let r = normalized_roots(&residual_form(&assignment, &params, 2)?)?;
    Ok(Rederived {
        p: vec![p],
        r,
        ..Rederived::default()
    })
}

/// Six squares with `q = p = (t, 1)`: `r` by Fermat's method on the
/// discriminant in `s`, both roots `s`, and for each the second root `q`.
fn rederive_n6() -> Result<Rederived> {
    let assignment = ChainAssignment::builtin(6)?;
    let p = poly_pair(&Poly::x(), &Poly::one());
    let blank = (Poly::zero(), Poly::zero());
    let params = vec![p.clone(), p.clone(), blank.clone(), blank.clone()];
    let r = fermat_pair(&discriminant_quartic(&assignment, &params, 3, 2)?)?;
    let params = vec![p.clone(), p.clone(), r.clone(), blank.clone()];
    let s_roots = normalized_roots(&residual_form(&assignment, &params, 3)?)?;
    let mut q_roots = Vec::new();
    for s in &s_roots {
        let params = vec![p.clone(), blank.clone(), r.clone(), s.clone()];
        q_roots.push(second_q(&assignment, &params, &p)?);
    }
    Ok(Rederived {
        r: vec![r],
        s: s_roots,
        q: q_roots,
        ..Rederived::default()
    })
}

fn second_q(assignment: &ChainAssignment, params: &[(Poly, Poly)], p: &PolyPair) -> Result<PolyPair> {
    let form = to_field(&residual_form(assignment, params, 1)?);
    let known = (RatFunc::from_poly(p.0.clone()), RatFunc::from_poly(p.1.clone()));
    let (u, v) = vieta_second_root(&form, &known)?;
    projective_normalize(&u, &v)
}

/// Seven and eight squares with `q = p = (t, 1)`: the coefficient of
/// `s_1^2` is a form in `r` without an `r_1^2` term, so `r` comes from a
/// linear condition; then the form in `s` is linear too; `q` is the second
/// root of the form in `q`.
fn rederive_linear(n: usize) -> Result<Rederived> {
    let assignment = ChainAssignment::builtin(n)?;
    let p = poly_pair(&Poly::x(), &Poly::one());
    let blank = (Poly::zero(), Poly::zero());
    let mut trial = vec![p.clone(), p.clone(), blank.clone(), blank.clone()];
    let s_leading = QuadraticForm::from_samples(|u: &Poly, v: &Poly| {
        trial[2] = (u.clone(), v.clone());
        Ok(residual_form(&assignment, &trial, 3)?.a)
    })?;
    let r_roots = normalized_roots(&s_leading)?;
    let r = pick_nontrivial(r_roots.clone())?;
    let params = vec![p.clone(), p.clone(), r.clone(), blank.clone()];
    let s_roots = normalized_roots(&residual_form(&assignment, &params, 3)?)?;
    let s = pick_nontrivial(s_roots)?;
    let params = vec![p.clone(), blank, r, s.clone()];
    let q = second_q(&assignment, &params, &p)?;
    Ok(Rederived {
        r: r_roots,
        s: vec![s],
        q: vec![q],
        ..Rederived::default()
    })
}

/// Re-derives the closed-form parameter substitutions for `n` in 5..=8.
pub fn rederive(n: usize) -> Result<Rederived> {
    match n {
        5 => rederive_n5(),
        6 => rederive_n6(),
        7 | 8 => rederive_linear(n),
        _ => Err(Error::Unsupported(format!("no derivation for n = {n}"))),
    }
}

/// Closed-form substitutions for `n`, each with the name of its pair.
pub fn closed_form_pairs(n: usize) -> Vec<(&'static str, ParameterForm)> {
    match n {
        5 => vec![("p", N5_P), ("r", N5_R)],
        6 => vec![("r", N6_R), ("s", N6_S), ("q", N6_Q)],
        7 => vec![("r", N7_R), ("s", N7_S), ("q", N7_Q)],
        8 => vec![("r", N8_R), ("s", N8_S), ("q", N8_Q)],
        _ => Vec::new(),
    }
}

impl Rederived {
    pub fn candidates(&self, name: &str) -> &[PolyPair] {
        match name {
            "p" => &self.p,
            "q" => &self.q,
            "r" => &self.r,
            "s" => &self.s,
            _ => &[],
        }
    }
}
