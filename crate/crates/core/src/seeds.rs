//! Chain solutions, square systems, and the repeated-square families that
//! seed the first construction method.

use num_traits::{Signed, Zero};

use crate::exactmath::{vec_gcd, BigInt};
use crate::polyfield::Ring;
use crate::{Error, Result};

/// Pairs `(x_i, y_i)` with `x_i^2 + y_i^2 = s` for every `i` and
/// `x_1^2 + ... + x_n^2 = s`.
///
/// Signs are kept: they feed the transform coefficients. Construction does
/// not validate; see [`crate::verify::validate_chain`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainSolution<R = BigInt> {
    pub pairs: Vec<(R, R)>,
}

impl<R: Ring> ChainSolution<R> {
    pub fn new(pairs: Vec<(R, R)>) -> Self {
        ChainSolution { pairs }
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// The common sum, read off the first pair.
    pub fn s(&self) -> R {
        self.pairs
            .first()
            .map(|(x, y)| x.square() + y.square())
            .unwrap_or_else(R::zero)
    }

    pub fn sum_of_root_squares(&self) -> R {
        self.pairs
            .iter()
            .fold(R::zero(), |acc, (x, _)| acc + x.square())
    }

    pub fn roots(&self) -> impl Iterator<Item = &R> {
        self.pairs.iter().map(|(x, _)| x)
    }

    /// Negates `x_i` for each listed index. Panics on an index out of range.
    pub fn flip_roots(&self, indices: &[usize]) -> Self {
        let mut pairs = self.pairs.clone();
        for &i in indices {
            let x = pairs[i].0.clone();
            pairs[i].0 = -x;
        }
        ChainSolution { pairs }
    }
}

impl ChainSolution<BigInt> {
    pub fn from_i64s(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(x, y)| (x.into(), y.into())).collect())
    }

    /// Divides every entry by the positive gcd of all entries.
    pub fn reduced(&self) -> Self {
        let Ok(g) = vec_gcd(self.pairs.iter().flat_map(|(x, y)| [x, y])) else {
            return self.clone();
        };
        ChainSolution::new(
            self.pairs
                .iter()
                .map(|(x, y)| (x / &g, y / &g))
                .collect(),
        )
    }

    pub fn zero_roots(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .enumerate()
            .filter_map(|(i, (x, _))| x.is_zero().then_some(i))
            .collect()
    }

    /// True when the `|x_i|` are pairwise distinct.
    pub fn has_distinct_roots(&self) -> bool {
        let mut abs: Vec<BigInt> = self.roots().map(|x| x.abs()).collect();
        abs.sort();
        abs.windows(2).all(|w| w[0] != w[1])
    }
}

/// `n` roots whose squares have a square sum after excluding any one, with
/// the certificates `y_i = sqrt(sum - x_i^2)`. Roots and certificates are
/// reported nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareSystem {
    pub roots: Vec<BigInt>,
    pub certificates: Vec<BigInt>,
    pub s: BigInt,
}

impl SquareSystem {
    pub fn n(&self) -> usize {
        self.roots.len()
    }

    pub fn sorted_roots(&self) -> Vec<BigInt> {
        let mut r: Vec<BigInt> = self.roots.iter().map(|x| x.abs()).collect();
        r.sort();
        r
    }

    pub fn has_distinct_roots(&self) -> bool {
        self.sorted_roots().windows(2).all(|w| w[0] != w[1])
    }
}

/// First repeated-square family for `n >= 3`, generic in the ring.
pub fn general_family_pairs<R: Ring>(n: usize, t: &R) -> Vec<(R, R)> {
    let c = |v: i64| R::from_i64(v);
    let nn = c(n as i64);
    let t2 = t.square();
    let t4 = t2.square();
    let tp1 = t2.clone() + c(1);
    let tm1 = t2.clone() - c(1);

    let x_rep = c(8) * t.clone() * tp1.clone() * tm1.clone();
    let y_rep = (nn.clone() - c(2)) * tp1.clone() * tp1.clone() * tp1;

    let quart = |a: i64, b: i64| {
        (nn.clone() + c(a)) * t4.clone()
            + (c(2) * nn.clone() + c(b)) * t2.clone()
            + (nn.clone() + c(a))
    };
    let two_t = c(2) * t.clone();
    let x_pen = tm1.clone() * quart(-2, -20);
    let y_pen = two_t.clone() * quart(2, -12);
    let x_last = two_t * quart(-6, 4);
    let y_last = tm1 * quart(-2, 12);

    let mut pairs = vec![(x_rep, y_rep); n - 2];
    pairs.push((x_pen, y_pen));
    pairs.push((x_last, y_last));
    pairs
}

/// Second family, `n = m^2 + 1`: `n - 1` copies of `(2t, (n-2)t^2 + 1)` and
/// `((n-2)t^2 - 1, 2mt)`.
pub fn square_count_family_pairs<R: Ring>(m: usize, t: &R) -> Vec<(R, R)> {
    let n = m * m + 1;
    let c = |v: i64| R::from_i64(v);
    let k = c(n as i64 - 2) * t.square();
    let mut pairs = vec![(c(2) * t.clone(), k.clone() + c(1)); n - 1];
    pairs.push((k - c(1), c(2 * m as i64) * t.clone()));
    pairs
}

fn reject_zero_roots(sol: ChainSolution, what: &str, t: &BigInt) -> Result<ChainSolution> {
    match sol.zero_roots().first() {
        Some(i) => Err(Error::Degenerate(format!(
            "{what}: x_{} vanishes at t = {t}",
            i + 1
        ))),
        None => Ok(sol),
    }
}

/// Integer instance of the first family; errors when `n < 3` or a root
/// vanishes (`t` in {0, 1, -1} or a root of a quartic factor).
pub fn general_family(n: usize, t: &BigInt) -> Result<ChainSolution> {
    if n < 3 {
        return Err(Error::Domain(format!("repeated-square family needs n >= 3, got {n}")));
    }
    let sol = ChainSolution::new(general_family_pairs(n, t));
    reject_zero_roots(sol, "general_family", t)
}

pub fn square_count_family(m: usize, t: &BigInt) -> Result<ChainSolution> {
    if m < 2 {
        return Err(Error::Domain(format!("special family needs m >= 2, got {m}")));
    }
    let sol = ChainSolution::new(square_count_family_pairs(m, t));
    reject_zero_roots(sol, "square_count_family", t)
}

/// Five-square seed: the `m = 2` special family with `x_3`, `x_4` negated.
pub fn seed_n5_simple(t: &BigInt) -> Result<ChainSolution> {
    Ok(square_count_family(2, t)?.flip_roots(&[2, 3]))
}

/// Six-square seed: the first family at `n = 6` with `x_3`, `x_4` negated.
pub fn seed_n6(t: &BigInt) -> Result<ChainSolution> {
    Ok(general_family(6, t)?.flip_roots(&[2, 3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::validate_chain;
    use num_traits::pow;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn xs(sol: &ChainSolution) -> Vec<BigInt> {
        sol.roots().cloned().collect()
    }

    /// Exclusion sums straight from the roots.
    fn exclusion_sums(sol: &ChainSolution) -> Vec<BigInt> {
        let total = sol.sum_of_root_squares();
        sol.roots().map(|x| &total - x * x).collect()
    }

    #[test]
    fn general_n5_t2() {
        let sol = general_family(5, &b(2)).unwrap();
        assert_eq!(xs(&sol), vec![b(240), b(240), b(240), b(33), b(156)]);
        let sums = exclusion_sums(&sol);
        assert_eq!(sums[0], b(140625));
        assert_eq!(sums[0], b(375 * 375));
        assert!(validate_chain(&sol).is_valid());
    }

    #[test]
    fn general_n6_t2_matches_seed_n6() {
        let sol = general_family(6, &b(2)).unwrap();
        assert_eq!(xs(&sol)[..4], [b(240), b(240), b(240), b(240)]);
        let seed = seed_n6(&b(2)).unwrap();
        assert_eq!(seed.pairs[0], (b(240), b(500)));
        assert_eq!(seed.pairs[2], (b(-240), b(500)));
        assert_eq!(seed.pairs[4], (b(108), b(544)));
        assert_eq!(seed.pairs[5], (b(256), b(492)));
        assert_eq!(seed.s(), b(307600));
        assert!(validate_chain(&seed).is_valid());
        let seed3 = seed_n6(&b(3)).unwrap();
        assert!(validate_chain(&seed3).is_valid());
        assert_eq!(seed3.pairs[1].0, seed3.pairs[0].0);
        assert_eq!(seed3.pairs[2].0, -seed3.pairs[0].0.clone());
    }

    #[test]
    fn general_n3_t2() {
        let sol = general_family(3, &b(2)).unwrap();
        assert!(validate_chain(&sol).is_valid());
        for s in exclusion_sums(&sol) {
            assert!(crate::exactmath::is_perfect_square(&s));
        }
    }

    #[test]
    fn general_rejects_degenerate_t() {
        for t in [0, 1, -1] {
            assert!(matches!(general_family(5, &b(t)), Err(Error::Degenerate(_))));
        }
        assert!(matches!(general_family(2, &b(2)), Err(Error::Domain(_))));
        // n = 6 gives x_n = 32 t^3: only t = 0 is bad there, plus the block at +-1.
        assert!(general_family(6, &b(2)).is_ok());
    }

    #[test]
    fn special_examples() {
        let sol = square_count_family(2, &b(1)).unwrap();
        assert_eq!(xs(&sol), vec![b(2); 5]);
        assert_eq!(sol.s(), b(20));
        assert!(exclusion_sums(&sol).iter().all(|s| *s == b(16)));

        let sol = square_count_family(2, &b(3)).unwrap();
        assert_eq!(xs(&sol), vec![b(6), b(6), b(6), b(6), b(26)]);
        let sums = exclusion_sums(&sol);
        assert_eq!(sums[0], b(28 * 28));
        assert_eq!(sums[4], b(144));

        let sol = square_count_family(3, &b(1)).unwrap();
        assert_eq!(sol.n(), 10);
        assert_eq!(xs(&sol)[..9], vec![b(2); 9][..]);
        assert_eq!(xs(&sol)[9], b(7));
        assert!(validate_chain(&sol).is_valid());

        assert!(matches!(square_count_family(2, &b(0)), Err(Error::Degenerate(_))));
        assert!(matches!(square_count_family(1, &b(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn seed_n5_examples() {
        let sol = seed_n5_simple(&b(1)).unwrap();
        assert_eq!(
            sol,
            ChainSolution::from_i64s(&[(2, 4), (2, 4), (-2, 4), (-2, 4), (2, 4)])
        );
        assert_eq!(sol.s(), b(20));
        let sol = seed_n5_simple(&b(2)).unwrap();
        assert_eq!(sol.pairs[4], (b(11), b(8)));
        assert_eq!(sol.s(), b(185));
        for t in [3, -4, 17] {
            let sol = seed_n5_simple(&b(t)).unwrap();
            assert_eq!(sol.pairs[0].0, -sol.pairs[2].0.clone());
        }
        assert!(matches!(seed_n5_simple(&b(0)), Err(Error::Degenerate(_))));
        assert!(matches!(seed_n6(&b(1)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn general_family_exclusion_sums_n3_to_12() {
        for n in 3..=12usize {
            let nn = b(n as i64);
            for t in 2..22i64 {
                let tt = b(t);
                let t2 = &tt * &tt;
                let t4 = &t2 * &t2;
                let sol = general_family(n, &tt).unwrap();
                assert!(validate_chain(&sol).is_valid(), "n={n} t={t}");
                let sums = exclusion_sums(&sol);
                let first = (&nn - 2) * (&nn - 2) * pow(&t2 + 1, 6);
                let q1 = (&nn + 2) * &t4 + (2 * &nn - 12) * &t2 + &nn + 2;
                let pen = 4 * &t2 * &q1 * &q1;
                let q2 = (&nn - 2) * &t4 + (2 * &nn + 12) * &t2 + &nn - 2;
                let last = (&t2 - 1) * (&t2 - 1) * &q2 * &q2;
                assert!(sums[..n - 2].iter().all(|s| *s == first));
                assert_eq!(sums[n - 2], pen);
                assert_eq!(sums[n - 1], last);
            }
        }
    }
}
