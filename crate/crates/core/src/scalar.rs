//! Exact scalars.
//!
//! Every value that leaves a solver is a [`HalfInt`]: an exact multiple of
//! one half stored as its doubled integer. Intermediate values that are not
//! guaranteed to be half-integral use [`Rat`].

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Exact rational with positive, reduced denominator.
pub type Rat = Ratio<i64>;

/// An exact half-integer; the value is `doubled / 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    /// Twice the value.
    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rat(self) -> Rat {
        Rat::new(self.0, 2)
    }

    /// Converts a rational that is an exact multiple of one half.
    pub fn from_rat(r: Rat) -> Option<Self> {
        let doubled = r * 2;
        if doubled.is_integer() {
            doubled.to_integer().to_i64().map(HalfInt)
        } else {
            None
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.0 -= rhs.0;
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a HalfInt> for HalfInt {
    fn sum<I: Iterator<Item = &'a HalfInt>>(iter: I) -> HalfInt {
        iter.copied().sum()
    }
}

impl From<HalfInt> for Rat {
    fn from(h: HalfInt) -> Rat {
        h.to_rat()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Formats a rational as `p` or `p/q`, independent of locale.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_zero() || r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
