//! Basis-presented associative unital algebras and operator matrices over
//! them.
//!
//! A finite-dimensional algebra is given by structure constants. A graded
//! algebra (such as the Laurent–Grassmann model of functions on the
//! supercircle) is stored through a finite degree window: products whose
//! degree leaves the window are undefined and raise
//! [`AlgebraError::WindowOverflow`], so every check over such an algebra is
//! finite and exact.

mod builders;
mod element;
mod hopf;
mod linop;
mod matrices;

use std::fmt;

pub use builders::{
    grassmann_extension, laurent_grassmann, laurent_index, matrix_units, polynomial_quotient, FiniteGroup,
    GrassmannExtension,
};
pub use element::Elem;
pub use hopf::HopfData;
pub use linop::LinOp;
pub use matrices::{AlgMatrix, OpMatrix};

use crate::linear::Field;
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operand has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix sizes {left} and {right} do not agree")]
    SizeMismatch { left: usize, right: usize },
    #[error("product {left} * {right} leaves the degree window")]
    WindowOverflow { left: String, right: String },
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("algebra axioms fail:\n{0}")]
    Axioms(Box<Report>),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{0}")]
    Unsupported(String),
}

/// How the basis of an algebra is organised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Structure constants on a finite basis.
    FiniteDim,
    /// A graded basis truncated to degrees in `[-window, window]`.
    Graded {
        degrees: Vec<i64>,
        window: i64,
        /// Name of the builtin family that produced the algebra.
        builtin: String,
    },
}

type Terms<F> = Vec<(usize, F)>;

/// An associative unital algebra over `F` with a distinguished basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra<F> {
    labels: Vec<String>,
    /// `table[i * dim + j]` is `e_i * e_j` as sparse terms, or `None` when the
    /// product is outside the stored window.
    table: Vec<Option<Terms<F>>>,
    unit: Elem<F>,
    presentation: Presentation,
}

impl<F: Field> Algebra<F> {
    /// Validates associativity and the unit on all basis triples.
    ///
    /// `constants[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`.
    pub fn from_structure_constants(
        labels: Vec<String>,
        constants: Vec<Vec<Vec<F>>>,
        unit: Vec<F>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::from_structure_constants_unchecked(labels, constants, unit)?;
        alg.require_axioms()?;
        Ok(alg)
    }

    /// Builds the algebra after checking only the shape of the data. Use
    /// [`Algebra::axiom_report`] to inspect the axioms.
    pub fn from_structure_constants_unchecked(
        labels: Vec<String>,
        constants: Vec<Vec<Vec<F>>>,
        unit: Vec<F>,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if constants.len() != d
            || constants
                .iter()
                .any(|row| row.len() != d || row.iter().any(|c| c.len() != d))
        {
            return Err(AlgebraError::Malformed(format!(
                "structure constants must be {d}x{d}x{d}"
            )));
        }
        if unit.len() != d {
            return Err(AlgebraError::Malformed(format!("unit must have {d} coordinates")));
        }
        let table = constants
            .into_iter()
            .flatten()
            .map(|c| Some(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()))
            .collect();
        Ok(Algebra {
            labels,
            table,
            unit: Elem::from_coords(unit),
            presentation: Presentation::FiniteDim,
        })
    }

    /// A graded algebra truncated to `|degree| <= window`. `rule(i, j)`
    /// returns the product of basis elements as sparse terms, or `None` if
    /// it leaves the window.
    pub fn graded(
        builtin: impl Into<String>,
        labels: Vec<String>,
        degrees: Vec<i64>,
        window: i64,
        rule: impl Fn(usize, usize) -> Option<Vec<(usize, F)>>,
        unit: Elem<F>,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        if degrees.len() != d || unit.dim() != d {
            return Err(AlgebraError::Malformed("graded data of inconsistent length".into()));
        }
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(rule(i, j).map(|t| t.into_iter().filter(|(_, x)| !x.is_zero()).collect()));
            }
        }
        let alg = Algebra {
            labels,
            table,
            unit,
            presentation: Presentation::Graded {
                degrees,
                window,
                builtin: builtin.into(),
            },
        };
        alg.require_axioms()?;
        Ok(alg)
    }

    fn require_axioms(&self) -> Result<(), AlgebraError> {
        let report = self.axiom_report();
        if report.is_clean() {
            Ok(())
        } else {
            Err(AlgebraError::Axioms(Box::new(report)))
        }
    }

    /// Associativity on all basis triples and the two-sided unit law on all
    /// basis elements. Triples whose products leave the window are skipped.
    pub fn axiom_report(&self) -> Report {
        let d = self.dim();
        let mut assoc = Check::defining("associativity");
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let outcome = (|| {
                        let ij = self.mul(&self.basis(i), &self.basis(j))?;
                        let jk = self.mul(&self.basis(j), &self.basis(k))?;
                        let l = self.mul(&ij, &self.basis(k))?;
                        let r = self.mul(&self.basis(i), &jk)?;
                        Ok((l != r).then(|| format!("{} != {}", self.format(&l), self.format(&r))))
                    })();
                    assoc.record_result(outcome, || {
                        format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[k])
                    });
                }
            }
        }
        let mut unit = Check::defining("unit");
        for i in 0..d {
            let e = self.basis(i);
            let outcome = (|| {
                let l = self.mul(&self.unit, &e)?;
                let r = self.mul(&e, &self.unit)?;
                Ok((l != e || r != e).then(|| format!("1*e = {}, e*1 = {}", self.format(&l), self.format(&r))))
            })();
            unit.record_result(outcome, || self.labels[i].clone());
        }
        Report {
            checks: vec![assoc, unit],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.presentation, Presentation::Graded { .. })
    }

    /// Degree of a basis element; zero for finite-dimensional algebras.
    pub fn degree(&self, i: usize) -> i64 {
        match &self.presentation {
            Presentation::FiniteDim => 0,
            Presentation::Graded { degrees, .. } => degrees[i],
        }
    }

    pub fn window(&self) -> Option<i64> {
        match &self.presentation {
            Presentation::FiniteDim => None,
            Presentation::Graded { window, .. } => Some(*window),
        }
    }

    pub fn unit(&self) -> &Elem<F> {
        &self.unit
    }

    pub fn zero(&self) -> Elem<F> {
        Elem::zero(self.dim())
    }

    pub fn basis(&self, i: usize) -> Elem<F> {
        Elem::basis(self.dim(), i)
    }

    pub fn basis_elements(&self) -> Vec<Elem<F>> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// `e_i * e_j` as sparse terms; `None` outside the window.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<&[(usize, F)]> {
        self.table[i * self.dim() + j].as_deref()
    }

    /// Structure constants, if every basis product is defined.
    pub fn structure_constants(&self) -> Option<Vec<Vec<Vec<F>>>> {
        let d = self.dim();
        let mut out = vec![vec![vec![F::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j)? {
                    out[i][j][*k] = c.clone();
                }
            }
        }
        Some(out)
    }

    pub fn check_dim(&self, a: &Elem<F>) -> Result<(), AlgebraError> {
        if a.dim() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            })
        }
    }

    pub fn mul(&self, a: &Elem<F>, b: &Elem<F>) -> Result<Elem<F>, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut out = vec![F::zero(); self.dim()];
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                let terms = self.basis_product(i, j).ok_or_else(|| AlgebraError::WindowOverflow {
                    left: self.labels[i].clone(),
                    right: self.labels[j].clone(),
                })?;
                if terms.is_empty() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in terms {
                    out[*k] += &xy.mul_ref(c);
                }
            }
        }
        Ok(Elem::from_coords(out))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Human-readable form, e.g. `2*e_g - 1/2*e_e`.
    pub fn format(&self, a: &Elem<F>) -> String {
        let mut out = String::new();
        for (i, c) in a.support() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) if !m.starts_with('[') => (true, m.to_string()),
                _ => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag == "1" {
                out.push_str(&self.labels[i]);
            } else {
                out.push_str(&format!("{mag}*{}", self.labels[i]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// An element from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, F)]) -> Result<Elem<F>, AlgebraError> {
        let mut out = self.zero();
        for (label, c) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| AlgebraError::Malformed(format!("unknown basis label {label:?}")))?;
            out.coords_mut()[i] += c;
        }
        Ok(out)
    }
}

impl<F> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("labels", &self.labels)
            .field("presentation", &self.presentation)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Q;

    fn q(n: i64) -> Q {
        Q::from(n)
    }

    fn z2_functions() -> Algebra<Q> {
        FiniteGroup::cyclic(2).function_algebra::<Q>().algebra().clone()
    }

    #[test]
    fn unit_is_neutral() {
        let a = z2_functions();
        for e in a.basis_elements() {
            assert_eq!(a.mul(a.unit(), &e).unwrap(), e);
            assert_eq!(a.mul(&e, a.unit()).unwrap(), e);
        }
    }

    #[test]
    fn indicators_multiply_pointwise() {
        let a = z2_functions();
        let (e, g) = (a.basis(0), a.basis(1));
        assert!(a.mul(&e, &g).unwrap().is_zero());
        assert_eq!(a.mul(&e, &e).unwrap(), e);
    }

    #[test]
    fn theta_squares_to_zero() {
        let a = laurent_grassmann::<Q>(2).unwrap();
        let th = a.element(&[("z^0θ", q(1))]).unwrap();
        assert!(a.mul(&th, &th).unwrap().is_zero());
    }

    #[test]
    fn mixed_operands_rejected() {
        let a = z2_functions();
        let b = laurent_grassmann::<Q>(2).unwrap();
        assert!(matches!(
            a.mul(a.unit(), b.unit()),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn perturbed_structure_constant_rejected() {
        let a = z2_functions();
        let mut c = a.structure_constants().unwrap();
        c[1][1][0] = q(1);
        let err = Algebra::from_structure_constants(a.labels().to_vec(), c, a.unit().coords().to_vec());
        assert!(matches!(err, Err(AlgebraError::Axioms(_))));
    }

    #[test]
    fn malformed_shapes_rejected() {
        let r = Algebra::<Q>::from_structure_constants(vec!["x".into()], vec![vec![vec![]]], vec![q(1)]);
        assert!(matches!(r, Err(AlgebraError::Malformed(_))));
    }

    #[test]
    fn formatting() {
        let a = z2_functions();
        let x = Elem::from_coords(vec![q(2), q(-1)]);
        assert_eq!(a.format(&x), "2*e - g");
        assert_eq!(a.format(&a.zero()), "0");
        let y = Elem::from_coords(vec![Q::new(-1, 2), q(1)]);
        assert_eq!(a.format(&y), "-1/2*e + g");
    }

    #[test]
    fn laurent_window_overflow_is_an_error() {
        let a = laurent_grassmann::<Q>(2).unwrap();
        let z2 = a.element(&[("z^2", q(1))]).unwrap();
        let z1 = a.element(&[("z^1", q(1))]).unwrap();
        assert!(matches!(a.mul(&z2, &z1), Err(AlgebraError::WindowOverflow { .. })));
    }
}
