//! The divergence `∇(f) = Σ_i ∂^σ_i(f(ω_i))`, its cokernel integral `Λ`,
//! and integration by parts.

use crate::algebra::{Algebra, AlgebraError, Elem, OpMatrix};
use crate::derivation::{sigma_twist, MultiDerivation, ProjectivelyFreeDerivation};
use crate::fodc::{Calculus, HomElement};
use crate::linear::{Field, Matrix, Quotient, SubspacePresentation};
use crate::report::{Check, Report};

#[derive(Clone, Debug)]
pub struct Divergence<F> {
    calculus: Calculus<F>,
    /// `(∂^σ, σ̂)`.
    twisted: MultiDerivation<F>,
}

impl<F: Field> Divergence<F> {
    /// Builds (and verifies) the calculus of `p`, then the twisted partials.
    pub fn new(alg: &Algebra<F>, p: &ProjectivelyFreeDerivation<F>) -> Result<Self, AlgebraError> {
        let calculus = Calculus::build(alg, &p.derivation, &p.system.base, Some(p.sigma_bar()))?;
        Self::from_calculus(calculus, p)
    }

    /// Uses an already constructed calculus of `p`.
    pub fn from_calculus(calculus: Calculus<F>, p: &ProjectivelyFreeDerivation<F>) -> Result<Self, AlgebraError> {
        let twisted = sigma_twist(calculus.algebra(), p)?;
        Ok(Divergence { calculus, twisted })
    }

    pub fn calculus(&self) -> &Calculus<F> {
        &self.calculus
    }

    pub fn algebra(&self) -> &Algebra<F> {
        self.calculus.algebra()
    }

    /// The twisted partials `∂^σ_i` with twist `σ̂`.
    pub fn twisted(&self) -> &MultiDerivation<F> {
        &self.twisted
    }

    pub fn sigma_hat(&self) -> &OpMatrix<F> {
        &self.twisted.sigma
    }

    /// `∇(f) = Σ_i ∂^σ_i(f(ω_i))`.
    pub fn apply(&self, f: &HomElement<F>) -> Elem<F> {
        let mut out = self.algebra().zero();
        for (p, v) in self.twisted.partial.iter().zip(&f.values) {
            if !v.is_zero() {
                out = out + &p.apply(v);
            }
        }
        out
    }

    /// `∇` on a map given only by its values on the `ω_i`.
    pub fn apply_values(&self, values: &[Elem<F>]) -> Elem<F> {
        let f = HomElement {
            values: values.to_vec(),
            matrix: None,
        };
        self.apply(&f)
    }

    /// `f ↦ f a` on values: `(f a)(ω_i) = f(a ω_i)`.
    fn right_values(&self, f: &HomElement<F>, a: &Elem<F>) -> Result<Vec<Elem<F>>, AlgebraError> {
        let c = &self.calculus;
        (0..c.n()).map(|i| c.eval(f, &c.left_action(a, &c.omega(i))?)).collect()
    }

    /// `Λ(∂^σ_i(a))` for the functional with matrix `lambda`.
    fn lambda_of(lambda: &Matrix<F>, a: &Elem<F>) -> Vec<F> {
        lambda.mul_vec(a.coords())
    }

    fn require_free(&self) -> Result<(), AlgebraError> {
        if self.calculus.is_free() {
            Ok(())
        } else {
            Err(AlgebraError::Unsupported(
                "integration by parts is stated for free multi-derivations (π = 𝕀)".into(),
            ))
        }
    }

    /// `Λ(a ∂^σ_i(b)) + Σ_l Λ(∂^σ_l(a) σ̂_li(b))`.
    pub fn ibp_residual(&self, lambda: &Matrix<F>, a: &Elem<F>, b: &Elem<F>, i: usize) -> Result<Vec<F>, AlgebraError> {
        self.require_free()?;
        let alg = self.algebra();
        let mut total = alg.mul(a, &self.twisted.partial[i].apply(b))?;
        for (l, pl) in self.twisted.partial.iter().enumerate() {
            let hat = self.sigma_hat().get(l, i).apply(b);
            let da = pl.apply(a);
            if !hat.is_zero() && !da.is_zero() {
                total = total + &alg.mul(&da, &hat)?;
            }
        }
        Ok(Self::lambda_of(lambda, &total))
    }
}

/// The divergence law `∇(f a) = ∇(f) a + f(da)` on the given hom elements
/// and all basis `a`.
pub fn check_divergence_law<F: Field>(div: &Divergence<F>, homs: &[HomElement<F>]) -> Report {
    let c = div.calculus();
    let alg = div.algebra();
    let mut check = Check::derived("divergence law ∇(fa) = ∇(f)a + f(da)");
    for (k, f) in homs.iter().enumerate() {
        let nf = div.apply(f);
        for a in 0..alg.dim() {
            let outcome = (|| {
                let e = alg.basis(a);
                let lhs = div.apply_values(&div.right_values(f, &e)?);
                let rhs = alg.mul(&nf, &e)? + &c.eval(f, &c.d(&e)?)?;
                Ok((lhs != rhs).then(|| format!("{} != {}", alg.format(&lhs), alg.format(&rhs))))
            })();
            check.record_result(outcome, || format!("f#{k}, a={}", alg.label(a)));
        }
    }
    Report { checks: vec![check] }
}

/// `coker ∇` with deterministic quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralPresentation<F> {
    quotient: Quotient<F>,
}

impl<F: Field> IntegralPresentation<F> {
    /// The image `V = ∇(Hom)`.
    pub fn image(&self) -> &SubspacePresentation<F> {
        self.quotient.subspace()
    }

    pub fn dim_coker(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &Quotient<F> {
        &self.quotient
    }

    /// `Λ(a)` in quotient coordinates.
    pub fn lambda(&self, a: &Elem<F>) -> Vec<F> {
        self.quotient.coords(a.coords())
    }

    /// `Λ` as a `dim coker × dim A` matrix.
    pub fn matrix(&self) -> Matrix<F> {
        self.quotient.matrix()
    }
}

/// `V = span ∇(f)` over the hom basis and its quotient map.
pub fn integral<F: Field>(div: &Divergence<F>) -> Result<IntegralPresentation<F>, AlgebraError> {
    let alg = div.algebra();
    if alg.is_graded() {
        return Err(AlgebraError::Unsupported(
            "the image of ∇ is infinite-dimensional here; verify a claimed integral with integral_window".into(),
        ));
    }
    let homs = div.calculus().hom_basis()?;
    let images: Vec<Vec<F>> = homs.iter().map(|f| div.apply(f).into_coords()).collect();
    let image = SubspacePresentation::span(alg.dim(), &images);
    Ok(IntegralPresentation {
        quotient: image.quotient(),
    })
}

/// Result of verifying a claimed integral on a degree window.
#[derive(Clone, Debug)]
pub struct WindowIntegral<F> {
    pub report: Report,
    /// Span of the divergences of all window generators that stayed inside
    /// the window.
    pub image: SubspacePresentation<F>,
}

/// Checks that `claimed` (values on the basis) is nonzero and kills `∇(f)`
/// for every window hom generator.
pub fn integral_window<F: Field>(div: &Divergence<F>, claimed: &[F]) -> Result<WindowIntegral<F>, AlgebraError> {
    let alg = div.algebra();
    if claimed.len() != alg.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: alg.dim(),
            found: claimed.len(),
        });
    }
    let mut nonzero = Check::defining("Λ nonzero");
    nonzero.record(
        claimed.iter().any(|x| !x.is_zero()),
        || "Λ".into(),
        || "the claimed functional is zero".into(),
    );
    let mut kills = Check::defining("Λ∘∇ = 0 on window generators");
    let mut images = Vec::new();
    let gens = div.calculus().hom_generators()?;
    for (k, f) in gens.iter().enumerate() {
        let v = div.apply(f);
        let value = dot(claimed, v.coords());
        kills.record(
            value.is_zero(),
            || format!("f#{k} = {}", describe_values(alg, &f.values)),
            || format!("Λ(∇f) = Λ({}) = {value}", alg.format(&v)),
        );
        images.push(v.into_coords());
    }
    Ok(WindowIntegral {
        report: Report {
            checks: vec![nonzero, kills],
        },
        image: SubspacePresentation::span(alg.dim(), &images),
    })
}

fn describe_values<F: Field>(alg: &Algebra<F>, values: &[Elem<F>]) -> String {
    let parts: Vec<String> = values.iter().map(|v| alg.format(v)).collect();
    format!("({})", parts.join(", "))
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let mut s = F::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &x.mul_ref(y);
        }
    }
    s
}

/// A claimed functional as a `1 × d` matrix.
pub fn functional_matrix<F: Field>(values: &[F]) -> Matrix<F> {
    Matrix::from_fn(1, values.len(), |_, c| values[c].clone())
}

/// Integration by parts on all basis pairs and indices. Errors unless the
/// derivation is free.
pub fn ibp_report<F: Field>(div: &Divergence<F>, lambda: &Matrix<F>) -> Result<Report, AlgebraError> {
    div.require_free()?;
    let alg = div.algebra();
    let mut check = Check::derived("integration by parts");
    let n = div.twisted().n();
    for i in 0..n {
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let outcome = div.ibp_residual(lambda, &alg.basis(a), &alg.basis(b), i).map(|r| {
                    r.iter()
                        .any(|x| !x.is_zero())
                        .then(|| format!("residual {}", format_vec(&r)))
                });
                check.record_result(outcome, || {
                    format!("i={}, a={}, b={}", i + 1, alg.label(a), alg.label(b))
                });
            }
        }
    }
    Ok(Report { checks: vec![check] })
}

/// `Λ(∂^σ_i(a)) = 0` for all basis `a` and all `i`.
pub fn exactness_check<F: Field>(div: &Divergence<F>, lambda: &Matrix<F>) -> Report {
    let alg = div.algebra();
    let mut check = Check::derived("Λ∘∂^σ = 0");
    for (i, p) in div.twisted().partial.iter().enumerate() {
        for a in 0..alg.dim() {
            let r = Divergence::lambda_of(lambda, &p.apply(&alg.basis(a)));
            check.record(
                r.iter().all(F::is_zero),
                || format!("i={}, a={}", i + 1, alg.label(a)),
                || format!("Λ = {}", format_vec(&r)),
            );
        }
    }
    Report { checks: vec![check] }
}

pub(crate) fn format_vec<F: Field>(v: &[F]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteGroup, LinOp};
    use crate::linear::Q;

    fn z2() -> (Algebra<Q>, ProjectivelyFreeDerivation<Q>) {
        let g = FiniteGroup::cyclic(2);
        let a = g.function_algebra::<Q>().algebra().clone();
        let r = g.right_translation::<Q>(1);
        let sigma = OpMatrix::diagonal(2, std::slice::from_ref(&r));
        let d = MultiDerivation::new(vec![r.sub(&LinOp::identity(2))], sigma.clone()).unwrap();
        let p = ProjectivelyFreeDerivation::free(&a, d, sigma.clone(), sigma).unwrap();
        (a, p)
    }

    #[test]
    fn z2_integral_is_the_sum() {
        let (a, p) = z2();
        let div = Divergence::new(&a, &p).unwrap();
        let int = integral(&div).unwrap();
        assert_eq!(int.dim_coker(), 1);
        assert_eq!(int.lambda(&a.basis(0)), vec![Q::from(1)]);
        assert_eq!(int.lambda(&a.basis(1)), vec![Q::from(1)]);
        let homs = div.calculus().hom_basis().unwrap();
        assert!(check_divergence_law(&div, &homs).is_clean());
        assert!(ibp_report(&div, &int.matrix()).unwrap().is_clean());
        assert!(exactness_check(&div, &int.matrix()).is_clean());
    }

    #[test]
    fn z2_ibp_sample() {
        let (a, p) = z2();
        let div = Divergence::new(&a, &p).unwrap();
        let lambda = integral(&div).unwrap().matrix();
        let e = a.basis(0);
        // Λ(e ∂(e)) = Λ(-e) = -1.
        let lhs = Divergence::lambda_of(&lambda, &a.mul(&e, &div.twisted().partial[0].apply(&e)).unwrap());
        assert_eq!(lhs, vec![Q::from(-1)]);
        assert_eq!(div.ibp_residual(&lambda, &e, &e, 0).unwrap(), vec![Q::from(0)]);
    }

    #[test]
    fn zero_derivation_integral_is_identity() {
        let (a, p) = z2();
        let d = MultiDerivation::zero(p.derivation.sigma.clone());
        let q = ProjectivelyFreeDerivation::free(&a, d, p.sigma_bar().clone(), p.sigma_hat.clone()).unwrap();
        let div = Divergence::new(&a, &q).unwrap();
        let int = integral(&div).unwrap();
        assert_eq!(int.dim_coker(), 2);
        assert_eq!(int.matrix(), Matrix::identity(2));
    }

    #[test]
    fn divergence_of_a_xi_is_partial() {
        let (a, p) = z2();
        let div = Divergence::new(&a, &p).unwrap();
        for b in 0..2 {
            let f = div.calculus().hom_from_values(vec![a.basis(b)]).unwrap();
            assert_eq!(div.apply(&f), div.twisted().partial[0].apply(&a.basis(b)));
        }
    }

    #[test]
    fn zero_functional_rejected() {
        let (a, p) = z2();
        let div = Divergence::new(&a, &p).unwrap();
        let w = integral_window(&div, &[Q::from(0), Q::from(0)]).unwrap();
        assert!(!w.report.check("Λ nonzero").unwrap().is_clean());
    }
}
