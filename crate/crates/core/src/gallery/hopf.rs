//! Covariant calculi on finite-dimensional Hopf algebras from functionals
//! `θ_ij`, `χ_i`.

use crate::algebra::{AlgebraError, Elem, FiniteGroup, HopfData, LinOp, OpMatrix};
use crate::derivation::{MultiDerivation, ProjectivelyFreeDerivation};
use crate::linear::{Field, Matrix, SubspacePresentation};
use crate::report::{Check, Report};

/// An `n × n` array `θ` and a vector `χ` of functionals, each given by its
/// values on the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantFunctionals<F> {
    pub theta: Vec<Vec<Vec<F>>>,
    pub chi: Vec<Vec<F>>,
}

impl<F: Field> CovariantFunctionals<F> {
    pub fn n(&self) -> usize {
        self.chi.len()
    }
}

/// `θ_ij = δ_ij ev_{g_i}` and `χ_i = ev_{g_i} − ε` for distinct non-identity
/// elements `g_i`.
pub fn finite_group_functionals<F: Field>(
    g: &FiniteGroup,
    subset: &[usize],
) -> Result<CovariantFunctionals<F>, AlgebraError> {
    let order = g.order();
    for (k, &x) in subset.iter().enumerate() {
        if x >= order {
            return Err(AlgebraError::Malformed(format!("group element {x} out of range")));
        }
        if x == g.identity() {
            return Err(AlgebraError::Malformed(
                "the identity cannot generate a partial derivative".into(),
            ));
        }
        if subset[..k].contains(&x) {
            return Err(AlgebraError::Malformed(format!(
                "group element {} repeated",
                g.labels()[x]
            )));
        }
    }
    let ev = |x: usize| -> Vec<F> { (0..order).map(|y| if x == y { F::one() } else { F::zero() }).collect() };
    let n = subset.len();
    let theta = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ev(subset[i]) } else { vec![F::zero(); order] })
                .collect()
        })
        .collect();
    let eps = ev(g.identity());
    let chi = subset
        .iter()
        .map(|&x| ev(x).iter().zip(&eps).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    Ok(CovariantFunctionals { theta, chi })
}

/// `θ_ij(ab) = Σ_k θ_ik(a)θ_kj(b)`, `θ_ij(1) = δ_ij` and
/// `χ_i(ab) = Σ_j χ_j(a)θ_ji(b) + ε(a)χ_i(b)` on all basis pairs.
pub fn functional_report<F: Field>(h: &HopfData<F>, fun: &CovariantFunctionals<F>) -> Report {
    let alg = h.algebra();
    let d = alg.dim();
    let n = fun.n();
    let ev = HopfData::eval;
    let mut theta_mult = Check::defining("θ_ij(ab) = Σ_k θ_ik(a)θ_kj(b)");
    let mut theta_unit = Check::defining("θ_ij(1) = δ_ij");
    let mut chi = Check::defining("χ_i(ab) = Σ_j χ_j(a)θ_ji(b) + ε(a)χ_i(b)");
    for a in 0..d {
        for b in 0..d {
            let ab = match alg.mul(&alg.basis(a), &alg.basis(b)) {
                Ok(x) => x,
                Err(e) => {
                    theta_mult.fail(format!("a={}, b={}", alg.label(a), alg.label(b)), e);
                    continue;
                }
            };
            let (ea, eb) = (alg.basis(a), alg.basis(b));
            for i in 0..n {
                for j in 0..n {
                    let lhs = ev(&fun.theta[i][j], &ab);
                    let mut rhs = F::zero();
                    for k in 0..n {
                        rhs += &ev(&fun.theta[i][k], &ea).mul_ref(&ev(&fun.theta[k][j], &eb));
                    }
                    theta_mult.record(
                        lhs == rhs,
                        || format!("i={}, j={}, a={}, b={}", i + 1, j + 1, alg.label(a), alg.label(b)),
                        || format!("{lhs} != {rhs}"),
                    );
                }
                let lhs = ev(&fun.chi[i], &ab);
                let mut rhs = ev(h.counit(), &ea).mul_ref(&ev(&fun.chi[i], &eb));
                for j in 0..n {
                    rhs += &ev(&fun.chi[j], &ea).mul_ref(&ev(&fun.theta[j][i], &eb));
                }
                chi.record(
                    lhs == rhs,
                    || format!("i={}, a={}, b={}", i + 1, alg.label(a), alg.label(b)),
                    || format!("{lhs} != {rhs}"),
                );
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let v = ev(&fun.theta[i][j], alg.unit());
            let expected = if i == j { F::one() } else { F::zero() };
            theta_unit.record(v == expected, || format!("i={}, j={}", i + 1, j + 1), || format!("{v}"));
        }
    }
    Report {
        checks: vec![theta_mult, theta_unit, chi],
    }
}

fn s_inv_squared<F: Field>(h: &HopfData<F>) -> LinOp<F> {
    h.antipode_inv().compose(h.antipode_inv())
}

fn op_matrix<F: Field>(n: usize, dim: usize, f: impl Fn(usize, usize) -> LinOp<F>) -> OpMatrix<F> {
    let mut m = OpMatrix::zero(n, dim);
    for i in 0..n {
        for j in 0..n {
            *m.get_mut(i, j) = f(i, j);
        }
    }
    m
}

/// `∂_i = χ_i ⊳`, `σ_ij = θ_ij ⊳`, `σ̄_ij = (θ_ji∘S⁻¹) ⊳`,
/// `σ̂_ij = (θ_ij∘S⁻²) ⊳`, with `π = 𝕀`.
pub fn covariant_derivation<F: Field>(
    h: &HopfData<F>,
    fun: &CovariantFunctionals<F>,
) -> Result<ProjectivelyFreeDerivation<F>, AlgebraError> {
    let alg = h.algebra();
    let dim = alg.dim();
    let n = fun.n();
    let s2 = s_inv_squared(h);
    let sigma = op_matrix(n, dim, |i, j| h.hit(&fun.theta[i][j]));
    let bar = op_matrix(n, dim, |i, j| {
        h.hit(&HopfData::precompose(&fun.theta[j][i], h.antipode_inv()))
    });
    let hat = op_matrix(n, dim, |i, j| h.hit(&HopfData::precompose(&fun.theta[i][j], &s2)));
    let partial = fun.chi.iter().map(|c| h.hit(c)).collect();
    let d = MultiDerivation::new(partial, sigma)?;
    ProjectivelyFreeDerivation::free(alg, d, bar, hat)
}

/// `(χ_i∘S⁻²) ⊳`.
pub fn twisted_partials<F: Field>(h: &HopfData<F>, fun: &CovariantFunctionals<F>) -> Vec<LinOp<F>> {
    let s2 = s_inv_squared(h);
    fun.chi.iter().map(|c| h.hit(&HopfData::precompose(c, &s2))).collect()
}

/// Both residual families `λ((χ_i∘S⁻²) ⊳ a)` and `λ(S²(∂_i(a)))` on all
/// basis `a`.
pub fn right_integral_annihilation<F: Field>(h: &HopfData<F>, fun: &CovariantFunctionals<F>, lambda: &[F]) -> Report {
    let alg = h.algebra();
    let s2 = h.antipode().compose(h.antipode());
    let mut hit = Check::derived("λ((χ_i∘S⁻²) ⊳ a) = 0");
    let mut squared = Check::derived("λ(S²(∂_i(a))) = 0");
    for (i, t) in twisted_partials(h, fun).iter().enumerate() {
        let partial = h.hit(&fun.chi[i]);
        for a in 0..alg.dim() {
            let e = alg.basis(a);
            let r1 = HopfData::eval(lambda, &t.apply(&e));
            hit.record(
                r1.is_zero(),
                || format!("i={}, a={}", i + 1, alg.label(a)),
                || format!("residual {r1}"),
            );
            let r2 = HopfData::eval(lambda, &s2.apply(&partial.apply(&e)));
            squared.record(
                r2.is_zero(),
                || format!("i={}, a={}", i + 1, alg.label(a)),
                || format!("residual {r2}"),
            );
        }
    }
    Report {
        checks: vec![hit, squared],
    }
}

/// All functionals `λ` with `λ((χ_i∘S⁻²) ⊳ a) = 0` for every `a` and `i`.
pub fn annihilator<F: Field>(h: &HopfData<F>, fun: &CovariantFunctionals<F>) -> SubspacePresentation<F> {
    let alg = h.algebra();
    let d = alg.dim();
    let mut rows = Vec::new();
    for t in twisted_partials(h, fun) {
        for a in 0..d {
            rows.push(t.apply(&alg.basis(a)).into_coords());
        }
    }
    if rows.is_empty() {
        return SubspacePresentation::full(d);
    }
    SubspacePresentation::kernel(&Matrix::from_rows(rows).expect("rows have equal length"))
}

/// The scalar `c ≠ 0` with `lambda = c · reference`, if any.
pub fn proportionality<F: Field>(lambda: &[F], reference: &[F]) -> Option<F> {
    if lambda.len() != reference.len() {
        return None;
    }
    let k = reference.iter().position(|x| !x.is_zero())?;
    let c = lambda[k].div(&reference[k]).ok()?;
    if c.is_zero() {
        return None;
    }
    lambda
        .iter()
        .zip(reference)
        .all(|(l, r)| *l == c.mul_ref(r))
        .then_some(c)
}

/// `Σ_g ev_g` on the function algebra of a group of the given order.
pub fn haar_functional<F: Field>(order: usize) -> Vec<F> {
    vec![F::one(); order]
}

/// The counit as a functional, for negative controls.
pub fn counit_functional<F: Field>(h: &HopfData<F>) -> Vec<F> {
    h.counit().to_vec()
}

/// `true` when `a ↦ λ(a)` vanishes on `a`.
pub fn kills<F: Field>(lambda: &[F], a: &Elem<F>) -> bool {
    HopfData::eval(lambda, a).is_zero()
}
