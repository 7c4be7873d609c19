//! Two-square composition and the multi-way representation chains built
//! from it.
//!
//! All functions are generic over [`Ring`], so the same code produces
//! integer chains and chains of parameter polynomials.

use crate::exactmath::BigInt;
use crate::polyfield::Ring;

/// One representation `a^2 + b^2` of a chain's common norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationPair<R = BigInt> {
    pub a: R,
    pub b: R,
}

impl<R: Ring> RepresentationPair<R> {
    pub fn new(a: R, b: R) -> Self {
        RepresentationPair { a, b }
    }

    pub fn norm(&self) -> R {
        self.a.square() + self.b.square()
    }
}

/// Ordered parameter pairs `(u_1, u_2)`; three for [`chain4`], four for
/// [`chain8`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterVector<R = BigInt> {
    pub pairs: Vec<(R, R)>,
}

impl<R: Ring> ParameterVector<R> {
    pub fn new(pairs: Vec<(R, R)>) -> Self {
        ParameterVector { pairs }
    }

    /// Product of the pair norms, the common value of every chain entry.
    pub fn norm_product(&self) -> R {
        self.pairs
            .iter()
            .fold(R::one(), |acc, (u, v)| acc * (u.square() + v.square()))
    }

    pub fn has_zero_pair(&self) -> bool {
        self.pairs.iter().any(|(u, v)| u.is_zero() && v.is_zero())
    }
}

/// Both products of `(u1^2 + u2^2)(v1^2 + v2^2)` as a sum of two squares.
pub fn compose<R: Ring>(u1: &R, u2: &R, v1: &R, v2: &R) -> (RepresentationPair<R>, RepresentationPair<R>) {
    let m = |a: &R, b: &R| a.clone() * b.clone();
    (
        RepresentationPair::new(m(u1, v1) - m(u2, v2), m(u1, v2) + m(u2, v1)),
        RepresentationPair::new(m(u1, v1) + m(u2, v2), m(u1, v2) - m(u2, v1)),
    )
}

/// The product of three pair norms as one sum of two squares.
pub fn product3<R: Ring>(f1: &R, f2: &R, g1: &R, g2: &R, h1: &R, h2: &R) -> RepresentationPair<R> {
    let m = |a: &R, b: &R| a.clone() * b.clone();
    let plus = m(f1, g1) + m(f2, g2);
    let cross = m(f1, g2) - m(f2, g1);
    RepresentationPair::new(
        m(&plus, h1) + m(&cross, h2),
        m(&(-cross), h1) + m(&plus, h2),
    )
}

/// The product of four pair norms as one sum of two squares.
#[allow(clippy::too_many_arguments)]
pub fn product4<R: Ring>(
    e1: &R,
    e2: &R,
    f1: &R,
    f2: &R,
    g1: &R,
    g2: &R,
    h1: &R,
    h2: &R,
) -> RepresentationPair<R> {
    let m3 = |a: &R, b: &R, c: &R| a.clone() * b.clone() * c.clone();
    let k1 = m3(e1, f2, g1) - m3(e1, f1, g2) - m3(e2, f1, g1) - m3(e2, f2, g2);
    let k2 = m3(e1, f1, g1) + m3(e1, f2, g2) - m3(e2, f1, g2) + m3(e2, f2, g1);
    let k3 = m3(e1, f1, g2) - m3(e1, f2, g1) + m3(e2, f1, g1) + m3(e2, f2, g2);
    RepresentationPair::new(
        k1 * h1.clone() + k2.clone() * h2.clone(),
        k2 * h1.clone() + k3 * h2.clone(),
    )
}

/// Sign masks applied to the second coordinate of each parameter pair.
/// `true` negates. Row `i` produces `(a_(i+1), b_(i+1))`.
const CHAIN4_FLIPS: [[bool; 3]; 4] = [
    [false, false, false],
    [true, false, false],
    [false, true, false],
    [false, false, true],
];

const CHAIN8_FLIPS: [[bool; 4]; 8] = [
    [false, false, false, false],
    [true, false, false, false],
    [false, true, false, false],
    [false, false, true, false],
    [false, false, false, true],
    [true, true, false, false],
    [true, false, true, false],
    [true, false, false, true],
];

fn flipped<R: Ring>(pair: &(R, R), flip: bool) -> (R, R) {
    if flip {
        (pair.0.clone(), -pair.1.clone())
    } else {
        pair.clone()
    }
}

/// Four representations of `(p1^2+p2^2)(q1^2+q2^2)(r1^2+r2^2)`.
///
/// Panics unless `params` holds exactly three pairs.
pub fn chain4<R: Ring>(params: &ParameterVector<R>) -> Vec<RepresentationPair<R>> {
    assert_eq!(params.pairs.len(), 3, "chain4 takes three parameter pairs");
    CHAIN4_FLIPS
        .iter()
        .map(|mask| {
            let [p, q, r] = [0, 1, 2].map(|k| flipped(&params.pairs[k], mask[k]));
            product3(&p.0, &p.1, &q.0, &q.1, &r.0, &r.1)
        })
        .collect()
}

/// Eight representations of the product of four pair norms.
///
/// Panics unless `params` holds exactly four pairs.
pub fn chain8<R: Ring>(params: &ParameterVector<R>) -> Vec<RepresentationPair<R>> {
    assert_eq!(params.pairs.len(), 4, "chain8 takes four parameter pairs");
    CHAIN8_FLIPS
        .iter()
        .map(|mask| {
            let [p, q, r, s] = [0, 1, 2, 3].map(|k| flipped(&params.pairs[k], mask[k]));
            product4(&p.0, &p.1, &q.0, &q.1, &r.0, &r.1, &s.0, &s.1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pv(pairs: &[(i64, i64)]) -> ParameterVector {
        ParameterVector::new(pairs.iter().map(|&(u, v)| (b(u), b(v))).collect())
    }

    fn rp(a: i64, bb: i64) -> RepresentationPair {
        RepresentationPair::new(b(a), b(bb))
    }

    #[test]
    fn compose_examples() {
        let (l, r) = compose(&b(1), &b(0), &b(7), &b(-3));
        assert_eq!((l, r), (rp(7, -3), rp(7, -3)));
        assert_eq!(compose(&b(1), &b(2), &b(2), &b(1)), (rp(0, 5), rp(4, -3)));
        let (l, r) = compose(&b(2), &b(3), &b(1), &b(5));
        assert_eq!((l.clone(), r.clone()), (rp(-13, 13), rp(17, 7)));
        assert_eq!(l.norm(), b(338));
        assert_eq!(r.norm(), b(338));
    }

    #[test]
    fn product3_examples() {
        assert_eq!(product3(&b(1), &b(0), &b(1), &b(0), &b(1), &b(0)), rp(1, 0));
        let v = product3(&b(1), &b(2), &b(3), &b(4), &b(5), &b(6));
        // (f1g1+f2g2, f1g2-f2g1) = (11, -2); then (11*5 - 2*6, 2*5 + 11*6)
        assert_eq!(v, rp(43, 76));
        assert_eq!(v.norm(), b(5 * 25 * 61));
        let v = product3(&b(1), &b(-1), &b(1), &b(1), &b(1), &b(1));
        assert_eq!(v, rp(2, -2));
        assert_eq!(v.norm(), b(8));
    }

    #[test]
    fn product4_examples() {
        let one = b(1);
        let zero = b(0);
        let v = product4(&one, &zero, &one, &zero, &one, &zero, &one, &zero);
        assert_eq!(v.norm(), b(1));
        let v = product4(&one, &one, &one, &one, &one, &one, &one, &one);
        assert_eq!(v.norm(), b(16));
        let two = b(2);
        let v = product4(&one, &two, &one, &two, &one, &two, &one, &two);
        assert_eq!(v.norm(), b(625));
    }

    #[test]
    fn chain4_examples() {
        assert_eq!(chain4(&pv(&[(1, 0), (1, 0), (1, 0)])), vec![rp(1, 0); 4]);
        for pair in chain4(&pv(&[(1, 2), (1, 2), (1, 2)])) {
            assert_eq!(pair.norm(), b(125));
        }
        let params = pv(&[(2, 1), (3, 2), (4, 1)]);
        assert_eq!(params.norm_product(), b(1105));
        for pair in chain4(&params) {
            assert_eq!(pair.norm(), b(1105));
        }
    }

    #[test]
    fn chain8_examples() {
        let units = chain8(&pv(&[(1, 0), (1, 0), (1, 0), (1, 0)]));
        assert_eq!(units.len(), 8);
        assert!(units.iter().all(|p| p.norm() == b(1)));
        for pair in chain8(&pv(&[(1, 2), (1, 2), (1, 2), (1, 2)])) {
            assert_eq!(pair.norm(), b(625));
        }
        for pair in chain8(&pv(&[(1, 1), (2, 1), (3, 1), (4, 1)])) {
            assert_eq!(pair.norm(), b(1700));
        }
    }

    #[test]
    fn chain_rows_match_literal_substitution() {
        let (p1, p2, q1, q2, r1, r2, s1, s2) = (b(2), b(-3), b(5), b(7), b(-1), b(4), b(6), b(11));
        let c4 = chain4(&ParameterVector::new(vec![
            (p1.clone(), p2.clone()),
            (q1.clone(), q2.clone()),
            (r1.clone(), r2.clone()),
        ]));
        assert_eq!(c4[1], product3(&p1, &-p2.clone(), &q1, &q2, &r1, &r2));
        assert_eq!(c4[2], product3(&p1, &p2, &q1, &-q2.clone(), &r1, &r2));
        assert_eq!(c4[3], product3(&p1, &p2, &q1, &q2, &r1, &-r2.clone()));
        let c8 = chain8(&ParameterVector::new(vec![
            (p1.clone(), p2.clone()),
            (q1.clone(), q2.clone()),
            (r1.clone(), r2.clone()),
            (s1.clone(), s2.clone()),
        ]));
        let np2 = -p2.clone();
        assert_eq!(c8[5], product4(&p1, &np2, &q1, &-q2.clone(), &r1, &r2, &s1, &s2));
        assert_eq!(c8[6], product4(&p1, &np2, &q1, &q2, &r1, &-r2.clone(), &s1, &s2));
        assert_eq!(c8[7], product4(&p1, &np2, &q1, &q2, &r1, &r2, &s1, &-s2.clone()));
        assert_eq!(c8[4], product4(&p1, &p2, &q1, &q2, &r1, &r2, &s1, &-s2.clone()));
    }

    proptest! {
        #[test]
        fn compose_norms(u1 in -1000i64..1000, u2 in -1000i64..1000, v1 in -1000i64..1000, v2 in -1000i64..1000) {
            let (l, r) = compose(&b(u1), &b(u2), &b(v1), &b(v2));
            let n = b(u1 * u1 + u2 * u2) * b(v1 * v1 + v2 * v2);
            prop_assert_eq!(l.norm(), n.clone());
            prop_assert_eq!(r.norm(), n);
        }
    }
}
