//! Exact univariate polynomials over the rationals, rational functions, and
//! the homogeneous coefficient-tuple notation `(c_0, ..., c_n)` for
//! `sum_j c_j u^(n-j) v^j`.
//!
//! Derivations run dehomogenized: the second variable of every parameter
//! pair is set to one and degrees are tracked separately.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{rational_sqrt, exact_sqrt, BigInt, Rational};
use crate::{Error, Result};

/// Commutative ring with the operations the constructions need.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Exact square roots, where they exist in the ring.
pub trait SquareRoot: Sized {
    fn sqrt_exact(&self) -> Option<Self>;
}

pub trait Field: Ring + SquareRoot + Div<Output = Self> {}

impl Ring for BigInt {
    fn from_int(v: &BigInt) -> Self {
        v.clone()
    }
}

impl SquareRoot for BigInt {
    fn sqrt_exact(&self) -> Option<Self> {
        exact_sqrt(self)
    }
}

impl Ring for Rational {
    fn from_int(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
}

impl SquareRoot for Rational {
    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

impl Field for Rational {}

/// Dense polynomial with rational coefficients, lowest degree first.
/// Never carries trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// From integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Rational content `c` and primitive part `p` with `self = c * p`,
    /// where `p` has coprime integer coefficients and positive leading
    /// coefficient.
    pub fn content_and_primitive(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::zero(), Poly::zero());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim = Poly::new(
            ints.iter()
                .map(|v| Rational::from_integer(v / &g))
                .collect(),
        );
        (Rational::new(g, den_lcm), prim)
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::Domain("polynomial division by zero".into()));
        };
        let lc_inv = divisor.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0)` is zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Exact square root over the rationals (leading coefficient positive).
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let m = deg / 2;
        let top = rational_sqrt(self.leading()?)?;
        let two_top = &top + &top;
        let mut g = vec![Rational::zero(); m + 1];
        g[m] = top;
        for k in (0..m).rev() {
            // coefficient of x^(m+k) in g^2, excluding the 2*g_m*g_k term
            let mut acc = Rational::zero();
            for i in (k + 1)..m {
                let j = m + k - i;
                if j > k && j < m {
                    acc += &g[i] * &g[j];
                }
            }
            g[k] = (self.coeff(m + k) - acc) / &two_top;
        }
        let root = Poly::new(g);
        (&root * &root == *self).then_some(root)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t {
                $tr::$m(&self, rhs)
            }
        }
    )*
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::from_ints(&[1])
    }
}

impl Ring for Poly {
    fn from_int(v: &BigInt) -> Self {
        Poly::constant(Rational::from_integer(v.clone()))
    }
}

impl SquareRoot for Poly {
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
}

/// Rational function `num / den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading().expect("nonzero").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a rational point; `None` where the denominator vanishes.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        (!d.is_zero()).then(|| self.num.eval(at) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero rational function".into()));
        }
        if rhs.is_poly() && rhs.num.is_constant() {
            let c = rhs.num.coeff(0) / rhs.den.coeff(0);
            return Ok(RatFunc {
                num: self.num.scale(&c.recip()),
                den: self.den.clone(),
            });
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_poly() && rhs.is_poly() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFunc, Add::add, Sub::sub, Mul::mul, Div::div);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl Ring for RatFunc {
    fn from_int(v: &BigInt) -> Self {
        RatFunc::from_poly(Poly::from_int(v))
    }
}

impl SquareRoot for RatFunc {
    fn sqrt_exact(&self) -> Option<Self> {
        // den is monic, so its root (if any) is monic as well
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFunc::canonical(n, d))
    }
}

impl Field for RatFunc {}

/// Homogeneous bivariate polynomial `sum_j c_j u^(n-j) v^j`, stored as the
/// tuple `(c_0, ..., c_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    coeffs: Vec<BigInt>,
}

impl HomogPoly {
    /// Panics on an empty tuple; a degree-0 form has one coefficient.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a homogeneous form needs at least one coefficient");
        HomogPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        self.eval_in(u, v)
    }

    /// Evaluation in any ring, e.g. at `(t, 1)` over polynomials.
    pub fn eval_in<R: Ring>(&self, u: &R, v: &R) -> R {
        // Horner in u with v-powers accumulated alongside.
        let mut acc = R::zero();
        let mut vpow = R::one();
        let n = self.degree();
        let mut terms = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            terms.push(vpow.clone());
            vpow = vpow * v.clone();
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            acc = acc * u.clone() + R::from_int(c) * terms[j].clone();
        }
        acc
    }

    /// Sets `v = 1`: the coefficient of `x^k` is `c_(n-k)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .rev()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Inverse of [`HomogPoly::dehomogenize`] for a chosen total degree.
    pub fn homogenize(p: &Poly, degree: usize) -> Result<HomogPoly> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::Domain(format!(
                "polynomial of degree {} does not fit degree {degree}",
                p.degree().unwrap_or(0)
            )));
        }
        let ints = p
            .integer_coeffs()
            .ok_or_else(|| Error::Domain("non-integral coefficient".into()))?;
        let coeffs = (0..=degree)
            .map(|j| ints.get(degree - j).cloned().unwrap_or_default())
            .collect();
        Ok(HomogPoly { coeffs })
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for HomogPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse { line: 0, message: m.to_string() };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("tuple must be parenthesized"))?;
        let coeffs = inner
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| bad(&format!("`{}`: {e}", t.trim()))))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomogPoly::new(coeffs))
    }
}

/// Coefficients (lowest first) of the polynomial of degree `< nodes.len()`
/// through the given points, by Newton divided differences.
pub fn interpolate<F: Field>(nodes: &[F], values: &[F]) -> Result<Vec<F>> {
    if nodes.len() != values.len() || nodes.is_empty() {
        return Err(Error::Domain("interpolation needs matching, nonempty nodes and values".into()));
    }
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = nodes[i].clone() - nodes[i - level].clone();
            if den.is_zero() {
                return Err(Error::Domain("repeated interpolation node".into()));
            }
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / den;
        }
    }
    // Expand the Newton form from the innermost coefficient outwards.
    let mut coeffs: Vec<F> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![F::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c.clone();
            next[k] = next[k].clone() - c.clone() * nodes[i].clone();
        }
        next[0] = next[0].clone() + dd[i].clone();
        coeffs = next;
    }
    Ok(coeffs)
}
