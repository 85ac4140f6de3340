use super::{Algebra, AlgebraError, Elem, LinOp};
use crate::linear::Field;

/// An `n × n` grid of operators on one algebra: an element of
/// `M_n(End A)`, or a linear map `A → M_n(A)` read entrywise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpMatrix<F> {
    n: usize,
    dim: usize,
    entries: Vec<LinOp<F>>,
}

impl<F: Field> OpMatrix<F> {
    /// `entries` is row-major and must have `n²` operators of size `dim`.
    pub fn new(n: usize, dim: usize, entries: Vec<LinOp<F>>) -> Result<Self, AlgebraError> {
        if entries.len() != n * n {
            return Err(AlgebraError::Malformed(format!(
                "operator matrix of size {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(op) = entries.iter().find(|op| op.dim() != dim) {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: op.dim(),
            });
        }
        Ok(OpMatrix { n, dim, entries })
    }

    pub fn from_fn(n: usize, dim: usize, mut f: impl FnMut(usize, usize) -> LinOp<F>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let op = f(i, j);
                assert_eq!(op.dim(), dim, "operator dimension mismatch");
                entries.push(op);
            }
        }
        OpMatrix { n, dim, entries }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        Self::from_fn(
            n,
            dim,
            |i, j| if i == j { LinOp::identity(dim) } else { LinOp::zero(dim) },
        )
    }

    pub fn zero(n: usize, dim: usize) -> Self {
        Self::from_fn(n, dim, |_, _| LinOp::zero(dim))
    }

    pub fn diagonal(dim: usize, diag: &[LinOp<F>]) -> Self {
        Self::from_fn(
            diag.len(),
            dim,
            |i, j| if i == j { diag[i].clone() } else { LinOp::zero(dim) },
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LinOp<F> {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LinOp<F> {
        &mut self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[LinOp<F>] {
        &self.entries
    }

    /// Swaps entries `(i, j)` and `(j, i)`; the operators are untouched.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.dim, |i, j| self.get(j, i).clone())
    }

    /// `(F • G)_ij = Σ_k F_ik ∘ G_kj`, applying the `G` factor first.
    pub fn bullet(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self::from_fn(self.n, self.dim, |i, j| {
            let mut acc = LinOp::zero(self.dim);
            for k in 0..self.n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.compose(b));
                }
            }
            acc
        }))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let op = self.get(i, j);
                if i == j {
                    op.is_identity()
                } else {
                    op.is_zero()
                }
            })
        })
    }

    /// `a ↦ (F_ij(a))`, the matrix `F(a) ∈ M_n(A)`.
    pub fn eval(&self, a: &Elem<F>) -> AlgMatrix<F> {
        AlgMatrix {
            n: self.n,
            entries: self.entries.iter().map(|op| op.apply(a)).collect(),
        }
    }

    /// Each entry `p_ij` becomes right multiplication `a ↦ a p_ij`.
    pub fn embed(alg: &Algebra<F>, p: &AlgMatrix<F>) -> Result<Self, AlgebraError> {
        let entries = p
            .entries
            .iter()
            .map(|x| LinOp::right_mul(alg, x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OpMatrix {
            n: p.n,
            dim: alg.dim(),
            entries,
        })
    }

    /// Entrywise composition `op ∘ F_ij`.
    pub fn map(&self, f: impl Fn(&LinOp<F>) -> LinOp<F>) -> Self {
        OpMatrix {
            n: self.n,
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// An `n × n` matrix with entries in an algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgMatrix<F> {
    n: usize,
    entries: Vec<Elem<F>>,
}

impl<F: Field> AlgMatrix<F> {
    /// Row-major entries.
    pub fn new(n: usize, entries: Vec<Elem<F>>) -> Result<Self, AlgebraError> {
        if entries.len() != n * n {
            return Err(AlgebraError::Malformed(format!(
                "matrix of size {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(d) = entries.first().map(Elem::dim) {
            if let Some(e) = entries.iter().find(|e| e.dim() != d) {
                return Err(AlgebraError::DimensionMismatch {
                    expected: d,
                    found: e.dim(),
                });
            }
        }
        Ok(AlgMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Elem<F>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        AlgMatrix { n, entries }
    }

    pub fn identity(alg: &Algebra<F>, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { alg.unit().clone() } else { alg.zero() })
    }

    pub fn zero(alg: &Algebra<F>, n: usize) -> Self {
        Self::from_fn(n, |_, _| alg.zero())
    }

    pub fn diagonal(alg: &Algebra<F>, diag: &[Elem<F>]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i].clone() } else { alg.zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem<F> {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Elem<F>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<Elem<F>> {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    fn check_size(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(AlgebraError::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn mul(&self, alg: &Algebra<F>, other: &Self) -> Result<Self, AlgebraError> {
        self.check_size(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = alg.zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &alg.mul(a, b)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(AlgMatrix { n, entries })
    }

    /// The product in `M_n(A^op)`: `(p ⋆ q)_ij = Σ_k q_kj p_ik`. This is the
    /// product that [`OpMatrix::embed`] turns into `•`.
    pub fn mul_opposite(&self, alg: &Algebra<F>, other: &Self) -> Result<Self, AlgebraError> {
        self.check_size(other)?;
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = alg.zero();
                for k in 0..n {
                    let (a, b) = (other.get(k, j), self.get(i, k));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &alg.mul(a, b)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(AlgMatrix { n, entries })
    }

    pub fn is_idempotent(&self, alg: &Algebra<F>) -> Result<bool, AlgebraError> {
        Ok(self.mul(alg, self)? == *self)
    }

    pub fn is_identity(&self, alg: &Algebra<F>) -> bool {
        *self == Self::identity(alg, self.n)
    }

    /// Row vector times matrix: `(v p)_j = Σ_i v_i p_ij`.
    pub fn apply_row(&self, alg: &Algebra<F>, row: &[Elem<F>]) -> Result<Vec<Elem<F>>, AlgebraError> {
        if row.len() != self.n {
            return Err(AlgebraError::SizeMismatch {
                left: row.len(),
                right: self.n,
            });
        }
        (0..self.n)
            .map(|j| {
                let mut acc = alg.zero();
                for (i, v) in row.iter().enumerate() {
                    let p = self.get(i, j);
                    if !v.is_zero() && !p.is_zero() {
                        acc = acc + &alg.mul(v, p)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Entrywise `a · p_ij`.
    pub fn left_scale(&self, alg: &Algebra<F>, a: &Elem<F>) -> Result<Self, AlgebraError> {
        let entries = self.entries.iter().map(|p| alg.mul(a, p)).collect::<Result<_, _>>()?;
        Ok(AlgMatrix { n: self.n, entries })
    }

    /// Entrywise `p_ij · a`.
    pub fn right_scale(&self, alg: &Algebra<F>, a: &Elem<F>) -> Result<Self, AlgebraError> {
        let entries = self.entries.iter().map(|p| alg.mul(p, a)).collect::<Result<_, _>>()?;
        Ok(AlgMatrix { n: self.n, entries })
    }

    /// First differing entry against `other`, formatted for reports.
    pub fn first_difference(&self, alg: &Algebra<F>, other: &Self) -> Option<String> {
        let n = self.n;
        (0..n * n).find(|&k| self.entries[k] != other.entries[k]).map(|k| {
            format!(
                "entry ({}, {}): {} vs {}",
                k / n,
                k % n,
                alg.format(&self.entries[k]),
                alg.format(&other.entries[k])
            )
        })
    }
}
