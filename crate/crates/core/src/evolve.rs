//! The chain-solution transform, its inverse, and the sign-flip driver that
//! iterates it until every root is distinct.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmath::BigInt;
use crate::polyfield::Ring;
use crate::seeds::{general_family, seed_n5_simple, ChainSolution, SquareSystem};
use crate::verify::{system_from_chain, validate_chain};
use crate::{Error, Result};

/// `cross = Σ x_i y_i` and `root_norm = Σ x_i^2` of a chain solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformCoefficients<R = BigInt> {
    pub cross: R,
    pub root_norm: R,
}

impl<R: Ring> TransformCoefficients<R> {
    pub fn of(sol: &ChainSolution<R>) -> Self {
        let cross = sol
            .pairs
            .iter()
            .fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        TransformCoefficients {
            cross,
            root_norm: sol.sum_of_root_squares(),
        }
    }

    /// `(n-2) S` and `2 P`, the two multipliers of the transform.
    fn multipliers(&self, n: usize) -> (R, R) {
        (
            R::from_i64(n as i64 - 2) * self.root_norm.clone(),
            R::from_i64(2) * self.cross.clone(),
        )
    }
}

/// Applies `X = (n-2)S x - 2P y`, `Y = 2P x + (n-2)S y` without validation
/// or reduction. Works over any ring.
pub fn transform_pairs<R: Ring>(sol: &ChainSolution<R>) -> (ChainSolution<R>, TransformCoefficients<R>) {
    let coeffs = TransformCoefficients::of(sol);
    let (k, p2) = coeffs.multipliers(sol.n());
    let pairs = sol
        .pairs
        .iter()
        .map(|(x, y)| {
            (
                k.clone() * x.clone() - p2.clone() * y.clone(),
                p2.clone() * x.clone() + k.clone() * y.clone(),
            )
        })
        .collect();
    (ChainSolution::new(pairs), coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutput {
    pub solution: ChainSolution,
    pub coeffs: TransformCoefficients,
    /// Indices whose new root is zero. Such an output is still a valid chain
    /// but cannot serve as a square system.
    pub zero_roots: Vec<usize>,
}

/// Transforms a valid integer chain solution. The output is not reduced.
pub fn transform(sol: &ChainSolution) -> Result<TransformOutput> {
    let report = validate_chain(sol);
    if !report.is_valid() {
        return Err(Error::Contract(format!("transform input is not a chain solution: {report}")));
    }
    if sol.sum_of_root_squares().is_zero() {
        return Err(Error::Degenerate("transform input has all roots zero".into()));
    }
    let (solution, coeffs) = transform_pairs(sol);
    let zero_roots = solution.zero_roots();
    Ok(TransformOutput {
        solution,
        coeffs,
        zero_roots,
    })
}

/// Recovers the pre-image of `image` under the transform with the given
/// coefficients.
pub fn inverse_transform(image: &ChainSolution, coeffs: &TransformCoefficients) -> Result<ChainSolution> {
    let (k, p2) = coeffs.multipliers(image.n());
    let denom = &k * &k + &p2 * &p2;
    if denom.is_zero() {
        return Err(Error::Degenerate("inverse transform denominator vanishes".into()));
    }
    let exact = |num: BigInt, i: usize| -> Result<BigInt> {
        let (q, r) = num.div_rem(&denom);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotAnImage(format!("pair {} is not divisible by {denom}", i + 1)))
        }
    };
    let pairs = image
        .pairs
        .iter()
        .enumerate()
        .map(|(i, (x, y))| Ok((exact(&k * x + &p2 * y, i)?, exact(&k * y - &p2 * x, i)?)))
        .collect::<Result<Vec<_>>>()?;
    let pre = ChainSolution::new(pairs);
    if TransformCoefficients::of(&pre) != *coeffs {
        return Err(Error::NotAnImage("pre-image does not reproduce the coefficients".into()));
    }
    Ok(pre)
}

/// Negates `x_i` at each index.
pub fn flip(sol: &ChainSolution, indices: &[usize]) -> Result<ChainSolution> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= sol.n()) {
        return Err(Error::Contract(format!("flip index {bad} out of range for n = {}", sol.n())));
    }
    Ok(sol.flip_roots(indices))
}

/// Divides out the gcd of all entries.
pub fn reduce(sol: &ChainSolution) -> ChainSolution {
    sol.reduced()
}

/// Index sets negated before each transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipSchedule {
    Rounds(Vec<Vec<usize>>),
    /// Chooses the flips round by round from the current block structure.
    Auto,
}

impl FlipSchedule {
    pub fn rounds(rounds: Vec<Vec<usize>>) -> Result<Self> {
        if rounds.iter().any(Vec::is_empty) {
            return Err(Error::Contract("flip schedule rounds must be nonempty".into()));
        }
        Ok(FlipSchedule::Rounds(rounds))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinctified {
    pub system: SquareSystem,
    /// The final chain, with signs, after the last reduction.
    pub chain: ChainSolution,
    pub rounds: usize,
}

const MAX_AUTO_ROUNDS: usize = 24;

/// Groups indices by `|x|`; within a group, pairs with the same sign type
/// `sign(x) * sign(y)` differ at most by an overall sign and stay tied under
/// the transform.
fn root_classes(sol: &ChainSolution) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, (x, _)) in sol.pairs.iter().enumerate() {
        classes.entry(x.abs()).or_default().push(i);
    }
    classes.into_values().collect()
}

fn sign_type(pair: &(BigInt, BigInt)) -> bool {
    pair.0.is_negative() != pair.1.is_negative()
}

/// Sizes of the tied blocks, largest first.
fn multiplicities(sol: &ChainSolution) -> Vec<usize> {
    let mut sizes: Vec<usize> = root_classes(sol).into_iter().map(|c| c.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn tied_blocks(sol: &ChainSolution) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    for class in root_classes(sol) {
        let (neg, pos): (Vec<usize>, Vec<usize>) = class.into_iter().partition(|&i| sign_type(&sol.pairs[i]));
        blocks.extend([pos, neg].into_iter().filter(|b| b.len() > 1));
    }
    blocks
}

/// Binary round: in each `|x|` class, move half the surplus of the majority
/// sign type to the other type by negating trailing members.
fn binary_flips(sol: &ChainSolution) -> Vec<usize> {
    let mut flips = Vec::new();
    for class in root_classes(sol) {
        let (neg, pos): (Vec<usize>, Vec<usize>) = class.into_iter().partition(|&i| sign_type(&sol.pairs[i]));
        let (major, minor) = if pos.len() >= neg.len() { (pos, neg) } else { (neg, pos) };
        let surplus = (major.len() - minor.len()) / 2;
        flips.extend_from_slice(&major[major.len() - surplus..]);
    }
    flips.sort_unstable();
    flips
}

fn is_finished(sol: &ChainSolution) -> bool {
    sol.zero_roots().is_empty() && sol.has_distinct_roots()
}

fn step(sol: &ChainSolution, flips: &[usize]) -> Result<ChainSolution> {
    let flipped = flip(sol, flips)?;
    Ok(transform(&flipped)?.solution.reduced())
}

/// Runs sign flips and transforms until all `|x_i|` are distinct and
/// nonzero, reducing by the gcd after every transform.
pub fn distinctify(sol: &ChainSolution, schedule: &FlipSchedule) -> Result<Distinctified> {
    let report = validate_chain(sol);
    if !report.is_valid() {
        return Err(Error::Contract(format!("distinctify input is not a chain solution: {report}")));
    }
    let mut current = sol.reduced();
    let mut rounds = 0;
    match schedule {
        FlipSchedule::Rounds(sets) => {
            for set in sets {
                current = step(&current, set)?;
                rounds += 1;
            }
        }
        FlipSchedule::Auto => {
            let mut stalled = false;
            while !is_finished(&current) {
                if rounds == MAX_AUTO_ROUNDS {
                    break;
                }
                let flips = if stalled {
                    // One member of the first tied block.
                    tied_blocks(&current)
                        .first()
                        .map(|b| vec![*b.last().unwrap()])
                        .unwrap_or_default()
                } else {
                    binary_flips(&current)
                };
                let before = multiplicities(&current);
                current = step(&current, &flips)?;
                rounds += 1;
                stalled = multiplicities(&current) == before && current.zero_roots().is_empty();
            }
        }
    }
    if !is_finished(&current) {
        return Err(Error::ScheduleExhausted {
            rounds,
            multiplicities: multiplicities(&current),
        });
    }
    Ok(Distinctified {
        system: system_from_chain(&current)?,
        chain: current,
        rounds,
    })
}

/// First-method output for `n` squares at parameter `t`.
///
/// For `n = 5` the seed is the special family with `m = 2`; for `n = 6` the
/// fixed two-round schedule is used, which also negates a lone pair in
/// the second round. Every other `n >= 3` uses the first family with the
/// automatic schedule.
pub fn method1(n: usize, t: &BigInt) -> Result<Distinctified> {
    match n {
        5 => distinctify(&seed_n5_simple(t)?, &FlipSchedule::Auto),
        6 => distinctify(
            &general_family(6, t)?,
            &FlipSchedule::rounds(vec![vec![2, 3], vec![1, 3, 5]])?,
        ),
        _ => distinctify(&general_family(n, t)?, &FlipSchedule::Auto),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::Poly;
    use crate::seeds::{general_family_pairs, square_count_family, seed_n6};
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn transform_seed_n5_t1() {
        let seed = seed_n5_simple(&b(1)).unwrap();
        let out = transform(&seed).unwrap();
        assert_eq!(out.coeffs, TransformCoefficients { cross: b(8), root_norm: b(20) });
        for ((x, y), (xx, yy)) in seed.pairs.iter().zip(&out.solution.pairs) {
            assert_eq!(*xx, 60 * x - 16 * y);
            assert_eq!(*yy, 16 * x + 60 * y);
        }
        assert!(validate_chain(&out.solution).is_valid());
        assert!(out.zero_roots.is_empty());
    }

    #[test]
    fn transform_of_n5_seed_gives_sextic_family() {
        let t = Poly::x();
        let seed = ChainSolution::new(crate::seeds::square_count_family_pairs(2, &t)).flip_roots(&[2, 3]);
        let (image, _) = transform_pairs(&seed);
        let t2 = t.square();
        let x5 = (t2.clone() * Poly::from_ints(&[3]) - Poly::from_ints(&[1]))
            * (t2.square() * Poly::from_ints(&[27]) - t2 * Poly::from_ints(&[2]) + Poly::from_ints(&[3]));
        assert_eq!(image.pairs[4].0.monic(), x5.monic());
    }

    #[test]
    fn transform_rejects_invalid_input() {
        let mut seed = seed_n5_simple(&b(1)).unwrap();
        seed.pairs[0].0 += 1;
        assert!(matches!(transform(&seed), Err(Error::Contract(_))));
    }

    #[test]
    fn inverse_round_trips() {
        for seed in [seed_n5_simple(&b(1)).unwrap(), seed_n6(&b(2)).unwrap()] {
            let out = transform(&seed).unwrap();
            assert_eq!(inverse_transform(&out.solution, &out.coeffs).unwrap(), seed);
        }
    }

    #[test]
    fn inverse_rejects_corrupted_image() {
        let seed = seed_n5_simple(&b(1)).unwrap();
        let mut out = transform(&seed).unwrap();
        out.solution.pairs[0].0 += 1;
        assert!(matches!(
            inverse_transform(&out.solution, &out.coeffs),
            Err(Error::NotAnImage(_))
        ));
    }

    #[test]
    fn flip_examples() {
        let seed = seed_n5_simple(&b(1)).unwrap();
        assert_eq!(flip(&flip(&seed, &[0, 4]).unwrap(), &[0, 4]).unwrap(), seed);
        let flipped = flip(&seed, &[0]).unwrap();
        assert_eq!(TransformCoefficients::of(&flipped).cross, b(-8));
        let all = flip(&seed, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(TransformCoefficients::of(&all).root_norm, b(20));
        assert!(matches!(flip(&seed, &[5]), Err(Error::Contract(_))));
    }

    #[test]
    fn method1_n5_golden() {
        let out = method1(5, &b(2)).unwrap();
        assert_eq!(out.rounds, 2);
        let expected = [
            "458176368356",
            "461523666596",
            "487111462076",
            "501821857691",
            "1238143955524",
        ];
        assert_eq!(out.system.sorted_roots(), expected.map(big).to_vec());
    }

    #[test]
    fn method1_n6_golden() {
        let out = method1(6, &b(2)).unwrap();
        let expected = [
            "15095604154947000",
            "37271037420836643",
            "43162876561115524",
            "252608637530397000",
            "492116002633350000",
            "669794768570400000",
        ];
        assert_eq!(out.system.sorted_roots(), expected.map(big).to_vec());
    }

    #[test]
    fn auto_on_seed_n6_is_distinct() {
        let out = distinctify(&seed_n6(&b(2)).unwrap(), &FlipSchedule::Auto).unwrap();
        assert_eq!(out.rounds, 2);
        assert!(out.system.has_distinct_roots());
        assert!(crate::verify::validate_system(&out.system, true).is_valid());
    }

    #[test]
    fn auto_on_n7_takes_three_rounds() {
        let out = method1(7, &b(2)).unwrap();
        assert_eq!(out.rounds, 3);
        assert!(crate::verify::validate_system(&out.system, true).is_valid());
    }

    #[test]
    fn short_schedule_is_exhausted() {
        let seed = general_family(6, &b(2)).unwrap();
        let err = distinctify(&seed, &FlipSchedule::rounds(vec![vec![2, 3]]).unwrap()).unwrap_err();
        match err {
            Error::ScheduleExhausted { rounds, multiplicities } => {
                assert_eq!(rounds, 1);
                assert_eq!(multiplicities[0], 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(FlipSchedule::rounds(vec![vec![]]).is_err());
    }

    #[test]
    fn binary_schedule_rounds_match_block_exponent() {
        // n - 2 = 2^m identical pairs in the first family.
        for m in 1..=4u32 {
            let n = 2usize.pow(m) + 2;
            for t in [2i64, 3, 5] {
                let out = distinctify(&general_family(n, &b(t)).unwrap(), &FlipSchedule::Auto).unwrap();
                assert_eq!(out.rounds, m as usize, "n={n} t={t}");
            }
        }
        // m^2 = 4 identical pairs in the special family.
        let out = distinctify(&square_count_family(2, &b(3)).unwrap(), &FlipSchedule::Auto).unwrap();
        assert_eq!(out.rounds, 2);
    }

    #[test]
    fn degree_growth_over_polynomials() {
        for n in [5usize, 6, 7] {
            let seed = ChainSolution::new(general_family_pairs(n, &Poly::x()));
            let d = seed
                .pairs
                .iter()
                .flat_map(|(x, y)| [x.degree(), y.degree()])
                .flatten()
                .max()
                .unwrap();
            let (image, _) = transform_pairs(&seed);
            for (x, y) in &image.pairs {
                assert!(x.degree().unwrap_or(0) <= 3 * d);
                assert!(y.degree().unwrap_or(0) <= 3 * d);
            }
            assert_eq!(image.sum_of_root_squares(), image.s());
        }
    }

    fn seed_strategy() -> impl Strategy<Value = ChainSolution> {
        prop_oneof![
            (3usize..10, 2i64..40).prop_map(|(n, t)| general_family(n, &BigInt::from(t)).unwrap()),
            (2usize..4, 1i64..40).prop_map(|(m, t)| square_count_family(m, &BigInt::from(t)).unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn transform_properties(seed in seed_strategy(), mask in any::<u16>()) {
            let flips: Vec<usize> = (0..seed.n()).filter(|i| mask >> i & 1 == 1).collect();
            let sol = flip(&seed, &flips).unwrap();
            let out = transform(&sol).unwrap();
            prop_assert!(validate_chain(&out.solution).is_valid());
            prop_assert_eq!(inverse_transform(&out.solution, &out.coeffs).unwrap(), sol.clone());
            for i in 0..sol.n() {
                for j in 0..sol.n() {
                    prop_assert_eq!(
                        sol.pairs[i] == sol.pairs[j],
                        out.solution.pairs[i] == out.solution.pairs[j]
                    );
                }
            }
        }
    }
}
