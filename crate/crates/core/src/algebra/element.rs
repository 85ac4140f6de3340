use std::ops::{Add, Neg, Sub};

use crate::linear::Field;

/// A finitely supported element, as its coordinate vector in the algebra's
/// basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Elem<F>(Vec<F>);

impl<F: Field> Elem<F> {
    pub fn zero(dim: usize) -> Self {
        Elem(vec![F::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![F::zero(); dim];
        v[i] = F::one();
        Elem(v)
    }

    pub fn from_coords(coords: Vec<F>) -> Self {
        Elem(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [F] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<F> {
        self.0
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(F::is_zero)
    }

    /// Nonzero coordinates in basis order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &F)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn scale(&self, s: &F) -> Self {
        Elem(self.0.iter().map(|x| x.mul_ref(s)).collect())
    }

    pub fn add_scaled(&mut self, other: &Self, s: &F) {
        assert_eq!(self.dim(), other.dim(), "element dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &b.mul_ref(s);
            }
        }
    }
}

impl<'a, F: Field> Add<&'a Elem<F>> for Elem<F> {
    type Output = Elem<F>;
    fn add(mut self, rhs: &'a Elem<F>) -> Elem<F> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        self
    }
}

impl<F: Field> Add for Elem<F> {
    type Output = Elem<F>;
    fn add(self, rhs: Elem<F>) -> Elem<F> {
        self + &rhs
    }
}

impl<'a, F: Field> Sub<&'a Elem<F>> for Elem<F> {
    type Output = Elem<F>;
    fn sub(mut self, rhs: &'a Elem<F>) -> Elem<F> {
        assert_eq!(self.dim(), rhs.dim(), "element dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
        self
    }
}

impl<F: Field> Sub for Elem<F> {
    type Output = Elem<F>;
    fn sub(self, rhs: Elem<F>) -> Elem<F> {
        self - &rhs
    }
}

impl<F: Field> Neg for Elem<F> {
    type Output = Elem<F>;
    fn neg(self) -> Elem<F> {
        Elem(self.0.into_iter().map(|x| -x).collect())
    }
}
