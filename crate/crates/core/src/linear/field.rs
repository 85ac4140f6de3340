use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors raised by scalar arithmetic and scalar parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// An exact field of characteristic zero.
///
/// Every implementation contains the rationals; `from_rational` is that
/// embedding. Equality is exact equality of canonical representatives.
pub trait Field:
    Clone
    + Eq
    + Debug
    + Display
    + FromStr<Err = ScalarError>
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Q) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Q::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * &other.inv()?)
    }

    /// Product without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other
    }
}

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn new(numer: i64, denom: i64) -> Q {
        assert!(denom != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(r: BigRational) -> Q {
        Q(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl FromStr for Q {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Q, ScalarError> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Q(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(Q(BigRational::from_integer(n)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $assign_tr:ident, $assign_m:ident) => {
        impl $tr for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                Q($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                Q($tr::$m(self.0, &rhs.0))
            }
        }
        impl<'a> $assign_tr<&'a Q> for Q {
            fn $assign_m(&mut self, rhs: &'a Q) {
                $assign_tr::$assign_m(&mut self.0, &rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Q> for Q {
    type Output = Q;
    fn mul(self, rhs: &'a Q) -> Q {
        Q(self.0 * &rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q(BigRational::zero())
    }

    fn one() -> Q {
        Q(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn from_rational(q: &Q) -> Q {
        q.clone()
    }

    fn inv(&self) -> Result<Q, ScalarError> {
        if self.0.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Q(self.0.recip()))
        }
    }

    fn mul_ref(&self, other: &Q) -> Q {
        Q(&self.0 * &other.0)
    }
}
