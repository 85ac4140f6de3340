//! Dense univariate polynomials over the rationals, coefficients stored from
//! the constant term upwards. Only what the cyclotomic fields need.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, y) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// The n-th cyclotomic polynomial, monic with integer coefficients.
pub(crate) fn cyclotomic_polynomial(n: usize) -> Poly {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut p = vec![BigRational::zero(); n + 1];
    p[0] = -BigRational::one();
    p[n] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divrem(&p, &cyclotomic_polynomial(d)).0;
        }
    }
    p
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (m.clone(), divrem(a, m).1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; it must be a nonzero constant.
    match degree(&r0) {
        Some(0) => {
            let c = r0[0].clone();
            let mut inv: Poly = s0.iter().map(|x| x / &c).collect();
            inv = divrem(&inv, m).1;
            Some(inv)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(p: &Poly) -> Vec<i64> {
        p.iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn inverse_modulo_phi() {
        let m = cyclotomic_polynomial(5);
        let a: Poly = vec![BigRational::from_integer(BigInt::from(2)), BigRational::one()];
        let inv = inverse_mod(&a, &m).unwrap();
        let prod = divrem(&mul(&a, &inv), &m).1;
        assert_eq!(prod, vec![BigRational::one()]);
    }
}
