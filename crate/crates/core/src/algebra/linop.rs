use super::{Algebra, AlgebraError, Elem};
use crate::linear::{Field, Matrix};

/// A linear endomorphism of an algebra, stored as a square matrix whose
/// column `c` is the image of basis element `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinOp<F> {
    matrix: Matrix<F>,
}

impl<F: Field> LinOp<F> {
    pub fn from_matrix(matrix: Matrix<F>) -> Result<Self, AlgebraError> {
        if matrix.rows() != matrix.cols() {
            return Err(AlgebraError::Malformed(format!(
                "operator matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinOp { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        LinOp {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LinOp {
            matrix: Matrix::zeros(dim, dim),
        }
    }

    /// The operator sending basis element `c` to `images[c]`.
    pub fn from_images(images: &[Elem<F>]) -> Self {
        let d = images.len();
        LinOp {
            matrix: Matrix::from_fn(d, d, |r, c| images[c].coeff(r).clone()),
        }
    }

    pub fn from_basis_fn(dim: usize, f: impl Fn(usize) -> Elem<F>) -> Self {
        let images: Vec<_> = (0..dim).map(f).collect();
        Self::from_images(&images)
    }

    pub fn try_from_basis_fn(
        dim: usize,
        f: impl Fn(usize) -> Result<Elem<F>, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let images = (0..dim).map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_images(&images))
    }

    /// Right multiplication `a ↦ a·x`.
    pub fn right_mul(alg: &Algebra<F>, x: &Elem<F>) -> Result<Self, AlgebraError> {
        Self::try_from_basis_fn(alg.dim(), |c| alg.mul(&alg.basis(c), x))
    }

    /// Left multiplication `a ↦ x·a`.
    pub fn left_mul(alg: &Algebra<F>, x: &Elem<F>) -> Result<Self, AlgebraError> {
        Self::try_from_basis_fn(alg.dim(), |c| alg.mul(x, &alg.basis(c)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, a: &Elem<F>) -> Elem<F> {
        Elem::from_coords(self.matrix.mul_vec(a.coords()))
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Self) -> Self {
        LinOp {
            matrix: self.matrix.mul(&g.matrix),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LinOp {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LinOp {
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        LinOp {
            matrix: self.matrix.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.dim())
    }

    /// Inverse operator, if invertible.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.dim();
        let cols: Option<Vec<Vec<F>>> = (0..d)
            .map(|c| {
                let mut e = vec![F::zero(); d];
                e[c] = F::one();
                self.matrix.solve(&e)
            })
            .collect();
        let inv = LinOp {
            matrix: Matrix::from_columns(d, &cols?),
        };
        inv.compose(self).is_identity().then_some(inv)
    }
}
