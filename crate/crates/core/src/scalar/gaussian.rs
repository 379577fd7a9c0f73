use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expr::{self, ExprError};

/// An element `re + im*i` of the field Q(i).
///
/// Both parts are `BigRational`, which keeps itself in lowest terms with a
/// positive denominator, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    /// `(re_num/re_den) + (im_num/im_den)*i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_imaginary(q: &BigRational) -> String {
    if q.is_one() {
        "i".to_string()
    } else if (-q).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rational(q))
    }
}

impl GaussianRational {
    /// True when the canonical rendering is a single signed token (no inner
    /// `+`/`-` between parts), so it can be juxtaposed with `*` safely.
    pub fn is_single_part(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }

    pub(crate) fn is_negative_single(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

/// Canonical form: `a/b`, `c/d*i`, or `a/b + c/d*i` (`-` when the imaginary
/// part is negative). Integers drop the denominator and a unit imaginary
/// part renders as `i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", fmt_imaginary(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}", fmt_rational(&self.re), sign, fmt_imaginary(&self.im.abs()))
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        expr::parse_constant(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_one_plus_i() {
        let a = GaussianRational::from_parts(1, 1, 1, 1);
        assert_eq!(&a * &a.conj(), GaussianRational::from_int(2));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::rational(-3, 6).to_string(), "-1/2");
        assert_eq!(GaussianRational::from_parts(0, 1, 1, 2).to_string(), "1/2*i");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(GaussianRational::from_parts(1, 3, -1, 1).to_string(), "1/3 - i");
        assert_eq!(GaussianRational::from_parts(2, 1, 5, 4).to_string(), "2 + 5/4*i");
    }

    #[test]
    fn inverse() {
        let a = GaussianRational::from_parts(3, 2, -7, 5);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-1/2", "1/2*i", "i", "-i", "1/3 - i", "2 + 5/4*i"] {
            let g: GaussianRational = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }
}
