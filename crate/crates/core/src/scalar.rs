//! Exact scalars: arbitrary precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact integer `n`-th root of a nonnegative rational, if it exists.
pub fn rational_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if x.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return rational_nth_root(&-x, n).map(|r| -r);
    }
    let num = x.numer().nth_root(n);
    let den = x.denom().nth_root(n);
    if num.pow(n) == *x.numer() && den.pow(n) == *x.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// `x^e` for a possibly negative exponent; panics on `0^e` with `e < 0`.
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    let p = x.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// An element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero Gaussian rational");
        Self::new(&self.re / &n, -&self.im / &n)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            n >>= 1;
        }
        acc
    }

    /// For a real value, its sign; `None` when the value is not real or is zero.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.im.is_zero() || self.re.is_zero() {
            return None;
        }
        Some(if self.re.is_positive() { 1 } else { -1 })
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Formats as `3/2`, `-i`, `1/4i` or `1+1/4i`; the output parses back via `FromStr`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            write!(f, "i")
        } else if (-&self.im).is_one() {
            write!(f, "-i")
        } else {
            fmt_rational(&self.im, f)?;
            write!(f, "i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        crate::parse::parse_complex_literal(s)
    }
}

/// A unit complex number known exactly: either a Gaussian rational of norm one,
/// or the root of unity `exp(2 pi i step / order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    Exact(GaussianRational),
    RootOfUnity { order: u32, step: u32 },
}

impl Phase {
    pub fn one() -> Self {
        Phase::Exact(GaussianRational::one())
    }

    /// Reduced root-of-unity token.
    pub fn root(order: u32, step: i64) -> Self {
        assert!(order > 0);
        let step = step.rem_euclid(order as i64) as u32;
        let g = step.gcd(&order).max(1);
        let (order, step) = if step == 0 {
            (1, 0)
        } else {
            (order / g, step / g)
        };
        Phase::RootOfUnity { order, step }
    }

    /// The value in Q(i), when it lies there.
    pub fn to_gaussian(&self) -> Option<GaussianRational> {
        match self {
            Phase::Exact(c) => Some(c.clone()),
            Phase::RootOfUnity { order, step } => {
                let quarter = match (*order, *step) {
                    (1, _) => 0,
                    (2, 1) => 2,
                    (4, s) => s,
                    _ => return None,
                };
                Some(match quarter % 4 {
                    0 => GaussianRational::one(),
                    1 => GaussianRational::i(),
                    2 => GaussianRational::from(-1),
                    _ => -GaussianRational::i(),
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Phase::Exact(c) => c.norm_sq().is_one(),
            Phase::RootOfUnity { .. } => true,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Exact(c) => write!(f, "{c}"),
            Phase::RootOfUnity { order, step } => match self.to_gaussian() {
                Some(c) => write!(f, "{c}"),
                None => write!(f, "exp(2pi*i*{step}/{order})"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn norm_is_multiplicative() {
        let x = g(3, -2);
        let y = GaussianRational::new(rat(1, 2), rat(-5, 3));
        assert_eq!((&x * &y).norm_sq(), x.norm_sq() * y.norm_sq());
        assert_eq!(x.conj().conj(), x);
        assert!(GaussianRational::zero().norm_sq().is_zero());
    }

    #[test]
    fn inverse_and_powers() {
        let x = g(1, 1);
        assert_eq!(&x * &x.inv(), GaussianRational::one());
        assert_eq!(x.pow(2), g(0, 2));
        assert_eq!(x.pow(-2), GaussianRational::new(rat(0, 1), rat(-1, 2)));
    }

    #[test]
    fn display_round_trips() {
        for x in [
            g(0, 0),
            g(3, 0),
            g(0, 1),
            g(0, -1),
            GaussianRational::new(rat(1, 1), rat(1, 4)),
            GaussianRational::new(rat(-2, 3), rat(-5, 7)),
        ] {
            let s = x.to_string();
            assert_eq!(s.parse::<GaussianRational>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Phase::root(8, 2), Phase::RootOfUnity { order: 4, step: 1 });
        assert_eq!(Phase::root(4, 1).to_gaussian(), Some(g(0, 1)));
        assert_eq!(Phase::root(8, 1).to_gaussian(), None);
        assert_eq!(Phase::root(6, 6), Phase::RootOfUnity { order: 1, step: 0 });
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&rat(16, 81), 4), Some(rat(2, 3)));
        assert_eq!(rational_nth_root(&rat(2, 1), 2), None);
        assert_eq!(rational_nth_root(&rat(-8, 1), 3), Some(int(-2)));
    }
}
