use super::field::Field;
use super::matrix::Matrix;

/// A subspace of `F^ambient`, presented by a basis in reduced row echelon
/// form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspacePresentation<F> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> SubspacePresentation<F> {
    pub fn zero(ambient: usize) -> Self {
        SubspacePresentation {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspacePresentation {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
        assert_eq!(m.cols(), ambient, "vectors must live in the ambient space");
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        let basis = Matrix::from_fn(k, m.cols(), |i, j| r.get(i, j).clone());
        SubspacePresentation {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// The null space `{v : m·v = 0}`.
    pub fn kernel(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vec<F>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); m.cols()];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect();
        Self::span(m.cols(), &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts multiples of the basis rows so every pivot coordinate of
    /// the result is zero.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(row).iter().enumerate() {
                if !x.is_zero() {
                    out[j] -= &c.mul_ref(x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Coordinates of a vector of this subspace with respect to the RREF
    /// basis; `None` if the vector is not in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        self.basis.vec_mul(coords)
    }

    pub fn quotient(&self) -> Quotient<F> {
        Quotient::new(self.clone())
    }
}

/// The quotient `F^ambient / V` with coordinates indexed by the non-pivot
/// columns of `V`, in ambient order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<F> {
    subspace: SubspacePresentation<F>,
    free: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(subspace: SubspacePresentation<F>) -> Self {
        let free = (0..subspace.ambient).filter(|c| !subspace.pivots.contains(c)).collect();
        Quotient { subspace, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn subspace(&self) -> &SubspacePresentation<F> {
        &self.subspace
    }

    /// Ambient indices that carry the quotient coordinates.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn coords(&self, v: &[F]) -> Vec<F> {
        let r = self.subspace.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    /// The canonical representative: quotient coordinates placed on the
    /// non-pivot columns, zero elsewhere.
    pub fn section(&self, q: &[F]) -> Vec<F> {
        assert_eq!(q.len(), self.dim());
        let mut v = vec![F::zero(); self.subspace.ambient];
        for (x, &c) in q.iter().zip(&self.free) {
            v[c] = x.clone();
        }
        v
    }

    /// The coordinate map as a `dim × ambient` matrix.
    pub fn matrix(&self) -> Matrix<F> {
        let n = self.subspace.ambient;
        let cols: Vec<Vec<F>> = (0..n)
            .map(|j| {
                let mut e = vec![F::zero(); n];
                e[j] = F::one();
                self.coords(&e)
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::matrix::tests::small_matrix;
    use crate::linear::Q;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = SubspacePresentation::kernel(&Matrix::<Q>::zeros(2, 2));
        assert_eq!(k.dim(), 2);
        assert_eq!(k, SubspacePresentation::full(2));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(SubspacePresentation::kernel(&Matrix::<Q>::identity(3)).dim(), 0);
    }

    #[test]
    fn kernel_of_single_equation() {
        let m = Matrix::from_rows(vec![v(&[1, 1])]).unwrap();
        let k = SubspacePresentation::kernel(&m);
        assert_eq!(k.basis_vectors(), vec![v(&[1, -1])]);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let q = SubspacePresentation::<Q>::zero(3).quotient();
        assert_eq!(q.matrix(), Matrix::identity(3));
    }

    #[test]
    fn quotient_by_antidiagonal_sums_coordinates() {
        let q = SubspacePresentation::span(2, &[v(&[1, -1])]).quotient();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coords(&v(&[3, 5])), v(&[8]));
        assert_eq!(q.matrix(), Matrix::from_rows(vec![v(&[1, 1])]).unwrap());
        assert_eq!(q.section(&v(&[8])), v(&[0, 8]));
    }

    #[test]
    fn quotient_by_everything_is_zero_dimensional() {
        let q = SubspacePresentation::<Q>::full(2).quotient();
        assert_eq!(q.dim(), 0);
        assert!(q.coords(&v(&[4, 1])).is_empty());
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix()) {
            let k = SubspacePresentation::kernel(&a);
            prop_assert_eq!(k.dim() + a.rank(), a.cols());
            for b in k.basis_vectors() {
                prop_assert!(a.mul_vec(&b).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn quotient_kills_subspace_and_splits(a in small_matrix()) {
            let s = SubspacePresentation::row_space(&a);
            let q = s.quotient();
            prop_assert_eq!(q.dim() + s.dim(), a.cols());
            for b in s.basis_vectors() {
                prop_assert!(q.coords(&b).iter().all(|x| x.is_zero()));
            }
            let probe: Vec<Q> = (0..q.dim()).map(|i| Q::from(i as i64 + 1)).collect();
            prop_assert_eq!(q.coords(&q.section(&probe)), probe);
        }
    }
}
