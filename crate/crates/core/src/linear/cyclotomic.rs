use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, ScalarError, Q};
use super::poly::{self, Poly};

/// An element of the cyclotomic field Q(ζ_N), stored as its coefficient
/// vector in the power basis 1, ζ, …, ζ^(φ(N)-1).
///
/// `N = 1` (and `N = 2`) is the field of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<const N: usize> {
    coeffs: Vec<BigRational>,
}

impl<const N: usize> Cyclotomic<N> {
    pub(crate) fn modulus() -> Poly {
        poly::cyclotomic_polynomial(N)
    }

    /// Degree of the extension, φ(N).
    pub fn degree() -> usize {
        Self::modulus().len() - 1
    }

    /// The primitive root of unity ζ_N.
    pub fn zeta() -> Self {
        Self::from_poly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    pub fn coefficients(&self) -> Vec<Q> {
        self.coeffs.iter().cloned().map(Q::from_big).collect()
    }

    pub fn from_coefficients(coeffs: &[Q]) -> Self {
        Self::from_poly(coeffs.iter().map(|q| q.as_big().clone()).collect())
    }

    fn from_poly(p: Poly) -> Self {
        let m = Self::modulus();
        let mut r = poly::divrem(&p, &m).1;
        r.resize(m.len() - 1, BigRational::zero());
        Cyclotomic { coeffs: r }
    }

    fn as_poly(&self) -> Poly {
        let mut p = self.coeffs.clone();
        poly::trim(&mut p);
        p
    }
}

impl<const N: usize> Display for Cyclotomic<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@zeta{N}")
    }
}

impl<const N: usize> Debug for Cyclotomic<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl<const N: usize> FromStr for Cyclotomic<N> {
    type Err = ScalarError;

    /// Accepts `[c0,c1,...]@zetaN` with exactly φ(N) coefficients, or a bare
    /// rational.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        let Some((body, order)) = t.split_once("@zeta") else {
            return Ok(Self::from_rational(&t.parse::<Q>()?));
        };
        let order: usize = order.trim().parse().map_err(|_| err())?;
        if order != N {
            return Err(err());
        }
        let inner = body
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(err)?;
        let coeffs = inner
            .split(',')
            .map(|c| c.parse::<Q>())
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != Self::degree() {
            return Err(err());
        }
        Ok(Self::from_coefficients(&coeffs))
    }
}

impl<const N: usize> Add for Cyclotomic<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<'a, const N: usize> Add<&'a Cyclotomic<N>> for Cyclotomic<N> {
    type Output = Self;
    fn add(mut self, rhs: &'a Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a, const N: usize> AddAssign<&'a Cyclotomic<N>> for Cyclotomic<N> {
    fn add_assign(&mut self, rhs: &'a Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<const N: usize> Sub for Cyclotomic<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<'a, const N: usize> Sub<&'a Cyclotomic<N>> for Cyclotomic<N> {
    type Output = Self;
    fn sub(mut self, rhs: &'a Self) -> Self {
        self -= rhs;
        self
    }
}

impl<'a, const N: usize> SubAssign<&'a Cyclotomic<N>> for Cyclotomic<N> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl<const N: usize> Mul for Cyclotomic<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a, const N: usize> Mul<&'a Cyclotomic<N>> for Cyclotomic<N> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        Self::from_poly(poly::mul(&self.as_poly(), &rhs.as_poly()))
    }
}

impl<const N: usize> Neg for Cyclotomic<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<const N: usize> Field for Cyclotomic<N> {
    fn zero() -> Self {
        Cyclotomic {
            coeffs: vec![BigRational::zero(); Self::degree()],
        }
    }

    fn one() -> Self {
        Self::from_rational(&Q::from(1))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn from_rational(q: &Q) -> Self {
        let mut coeffs = vec![BigRational::zero(); Self::degree()];
        coeffs[0] = q.as_big().clone();
        Cyclotomic { coeffs }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let inv = poly::inverse_mod(&self.as_poly(), &Self::modulus()).ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::from_poly(inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Z3 = Cyclotomic<3>;
    type Z4 = Cyclotomic<4>;
    type Z5 = Cyclotomic<5>;

    #[test]
    fn order_one_is_rational() {
        assert_eq!(Cyclotomic::<1>::degree(), 1);
        assert_eq!(Cyclotomic::<1>::zeta(), Cyclotomic::<1>::one());
        let half = Cyclotomic::<1>::from_rational(&Q::new(1, 2));
        assert_eq!(half.clone() + &half, Cyclotomic::<1>::one());
    }

    #[test]
    fn zeta_four_squares_to_minus_one() {
        let z = Z4::zeta();
        assert_eq!(z.clone() * &z, -Z4::one());
        assert_eq!(z.pow(4), Z4::one());
    }

    #[test]
    fn zeta_three_identity() {
        let z = Z3::zeta();
        let lhs = (Z3::one() + &z) * (Z3::one() + &z.pow(2));
        assert_eq!(lhs, Z3::one());
        assert_eq!(z.pow(3), Z3::one());
    }

    #[test]
    fn zeta_n_has_order_n() {
        assert_eq!(Cyclotomic::<12>::zeta().pow(12), Cyclotomic::<12>::one());
        assert_ne!(Cyclotomic::<12>::zeta().pow(6), Cyclotomic::<12>::one());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(Z5::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn string_form() {
        let z = Z3::zeta();
        assert_eq!(z.to_string(), "[0,1]@zeta3");
        assert_eq!("[0,1]@zeta3".parse::<Z3>().unwrap(), z);
        assert_eq!("1/2".parse::<Z3>().unwrap(), Z3::from_rational(&Q::new(1, 2)));
        assert!("[0,1]@zeta4".parse::<Z3>().is_err());
        assert!("[0,1,2]@zeta3".parse::<Z3>().is_err());
    }

    fn z5() -> impl Strategy<Value = Z5> {
        proptest::collection::vec((-6i64..6, 1i64..4), 4)
            .prop_map(|v| Z5::from_coefficients(&v.into_iter().map(|(n, d)| Q::new(n, d)).collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn field_axioms(a in z5(), b in z5(), c in z5()) {
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
            prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
            prop_assert_eq!(a.clone() * &b, b.clone() * &a);
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * &a.inv().unwrap(), Z5::one());
            }
            prop_assert_eq!(a.to_string().parse::<Z5>().unwrap(), a);
        }
    }
}
