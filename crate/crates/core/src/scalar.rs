//! Exact scalars.
//!
//! Values of Γ and 1/Γ at integer and half-odd arguments are rational
//! multiples of an integer power of √π, so [`ExactScalar`] stores exactly
//! that pair. Arguments are carried as [`HalfInt`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rising factorial ∏_{j<n} (a + j).
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        if term.is_zero() {
            return Rational::zero();
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Generalized binomial coefficient `(a)_k`-style: `(a-k+1)_k / k!`.
pub fn binomial(a: &Rational, k: u64) -> Rational {
    let start = a - Rational::from_integer(BigInt::from(k)) + Rational::one();
    pochhammer(&start, k) / Rational::from_integer(factorial(k))
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A number of the form `twice / 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// True on the poles of Γ: 0, −1, −2, …
    pub fn is_nonpositive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    pub fn is_zero(self) -> bool {
        self.twice == 0
    }

    pub fn from_rational(r: &Rational) -> Option<Self> {
        let doubled = r * int(2);
        if !doubled.is_integer() {
            return None;
        }
        i64::try_from(doubled.to_integer())
            .ok()
            .map(HalfInt::from_twice)
    }

    pub fn to_rational(self) -> Rational {
        rat(self.twice, 2)
    }

    pub fn checked_add(self, other: HalfInt) -> Option<HalfInt> {
        self.twice.checked_add(other.twice).map(HalfInt::from_twice)
    }

    /// `self + k` for an integer `k`.
    pub fn shift(self, k: i64) -> HalfInt {
        HalfInt::from_twice(self.twice + 2 * k)
    }

    pub fn scale(self, k: i64) -> HalfInt {
        HalfInt::from_twice(self.twice * k)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        self.checked_add(rhs).expect("half-integer overflow")
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(
            self.twice
                .checked_sub(rhs.twice)
                .expect("half-integer overflow"),
        )
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl From<HalfInt> for Rational {
    fn from(h: HalfInt) -> Rational {
        h.to_rational()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        HalfInt::from_rational(&r).ok_or_else(|| Error::Param(format!("{s} is not a half-integer")))
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Param(format!("cannot parse `{s}` as a rational"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `rat · π^(sqrt_pi_pow/2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactScalar {
    rat: Rational,
    sqrt_pi_pow: i32,
}

impl ExactScalar {
    pub fn new(rat: Rational, sqrt_pi_pow: i32) -> Self {
        let sqrt_pi_pow = if rat.is_zero() { 0 } else { sqrt_pi_pow };
        ExactScalar { rat, sqrt_pi_pow }
    }

    pub fn zero() -> Self {
        ExactScalar::new(Rational::zero(), 0)
    }

    pub fn one() -> Self {
        ExactScalar::new(Rational::one(), 0)
    }

    pub fn sqrt_pi() -> Self {
        ExactScalar::new(Rational::one(), 1)
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::new(int(n), 0)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn sqrt_pi_pow(&self) -> i32 {
        self.sqrt_pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sqrt_pi_pow == 0 && self.rat.is_one()
    }

    /// The rational value when no power of √π remains.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.sqrt_pi_pow == 0).then_some(&self.rat)
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ExactScalar::new(self.rat.recip(), -self.sqrt_pi_pow))
    }

    pub fn pow(&self, k: u32) -> Self {
        ExactScalar::new(Pow::pow(&self.rat, k), self.sqrt_pi_pow * k as i32)
    }

    pub fn try_add(&self, other: &ExactScalar) -> Result<ExactScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.sqrt_pi_pow != other.sqrt_pi_pow {
            return Err(Error::MixedPiPowers(self.sqrt_pi_pow, other.sqrt_pi_pow));
        }
        Ok(ExactScalar::new(&self.rat + &other.rat, self.sqrt_pi_pow))
    }

    pub fn mul_rat(&self, r: &Rational) -> Self {
        ExactScalar::new(&self.rat * r, self.sqrt_pi_pow)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        r * std::f64::consts::PI.powf(self.sqrt_pi_pow as f64 / 2.0)
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::new(r, 0)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-&self.rat, self.sqrt_pi_pow)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.rat * &rhs.rat, self.sqrt_pi_pow + rhs.sqrt_pi_pow)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        match self.sqrt_pi_pow {
            0 => Ok(()),
            2 => write!(f, " pi"),
            p if p % 2 == 0 => write!(f, " pi^({})", p / 2),
            p => write!(f, " pi^({p}/2)"),
        }
    }
}

/// Γ(a) for integer or half-odd `a`.
pub fn gamma_half(a: HalfInt) -> Result<ExactScalar> {
    if a.is_nonpositive_integer() {
        return Err(Error::Pole(a));
    }
    if let Some(n) = a.as_integer() {
        return Ok(ExactScalar::new(
            Rational::from_integer(factorial(n as u64 - 1)),
            0,
        ));
    }
    // Γ(1/2 + k) = (1/2)_k √π; for a < 1/2 walk down from Γ(1/2).
    let half = rat(1, 2);
    let value = if a.twice() > 0 {
        let k = ((a.twice() - 1) / 2) as u64;
        pochhammer(&half, k)
    } else {
        let steps = ((1 - a.twice()) / 2) as u64;
        pochhammer(&a.to_rational(), steps).recip()
    };
    Ok(ExactScalar::new(value, 1))
}

/// 1/Γ(a); zero on ℤ≤0.
pub fn recip_gamma(a: HalfInt) -> ExactScalar {
    match gamma_half(a) {
        Ok(g) => g.recip().expect("gamma has no zeros"),
        Err(_) => ExactScalar::zero(),
    }
}

/// Γ(a)/Γ(b). Exact rational telescoping when `a - b` is an integer.
pub fn gamma_ratio(a: HalfInt, b: HalfInt) -> Result<ExactScalar> {
    if a.is_nonpositive_integer() {
        return Err(Error::Pole(a));
    }
    let diff = a - b;
    if let Some(k) = diff.as_integer() {
        if b.is_nonpositive_integer() {
            return Ok(ExactScalar::zero());
        }
        let value = if k >= 0 {
            pochhammer(&b.to_rational(), k as u64)
        } else {
            pochhammer(&a.to_rational(), (-k) as u64).recip()
        };
        return Ok(ExactScalar::from(value));
    }
    Ok(&gamma_half(a)? * &recip_gamma(b))
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: HalfInt, b: HalfInt) -> Result<ExactScalar> {
    for p in [a, b, a + b] {
        if p.is_nonpositive_integer() {
            return Err(Error::Pole(p));
        }
    }
    Ok(&gamma_half(a)? * &gamma_ratio(b, a + b)?)
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}
