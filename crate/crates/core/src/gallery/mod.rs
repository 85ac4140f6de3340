//! Worked examples wired into every applicable checker.

pub mod hopf;
pub mod inner;
pub mod supercircle;

use crate::algebra::{polynomial_quotient, AlgMatrix, Algebra, AlgebraError, FiniteGroup, HopfData, LinOp, OpMatrix};
use crate::derivation::{
    check_projective, full_report, preprojective_report, MultiDerivation, PreProjectiveSystem, ProjectiveSystem,
    ProjectivelyFreeDerivation,
};
use crate::divergence::{
    check_divergence_law, exactness_check, functional_matrix, ibp_report, integral, integral_window, Divergence,
    IntegralPresentation, WindowIntegral,
};
use crate::fodc::Calculus;
use crate::linear::{Field, Matrix, SubspacePresentation};
use crate::report::{Check, Report};

pub use hopf::CovariantFunctionals;
pub use inner::InnerData;
pub use supercircle::SupercircleModel;

/// The named gallery entries (the supercircle at its default window).
pub const GALLERY: [&str; 5] = ["z2-haar", "z3-haar", "supercircle:4", "inner-z2", "preproj-toy"];

/// Everything the checkers need: `(A; ∂, σ; π, σ̃)` plus optional `σ̄`, `σ̂`
/// and integral data.
#[derive(Clone, Debug)]
pub struct Instance<F> {
    pub name: String,
    pub algebra: Algebra<F>,
    pub derivation: MultiDerivation<F>,
    pub system: PreProjectiveSystem<F>,
    pub sigma_bar: Option<OpMatrix<F>>,
    pub sigma_hat: Option<OpMatrix<F>>,
    /// A claimed integral, by its values on the basis.
    pub claimed_lambda: Option<Vec<F>>,
    /// A functional the computed integral is compared with up to a scalar.
    pub reference: Option<Vec<F>>,
}

impl<F: Field> Instance<F> {
    fn from_projectively_free(name: &str, algebra: Algebra<F>, p: ProjectivelyFreeDerivation<F>) -> Self {
        Instance {
            name: name.to_string(),
            algebra,
            derivation: p.derivation,
            system: p.system.base,
            sigma_bar: Some(p.system.sigma_bar),
            sigma_hat: Some(p.sigma_hat),
            claimed_lambda: None,
            reference: None,
        }
    }

    pub fn is_free(&self) -> bool {
        self.system.is_free(&self.algebra)
    }

    /// The projectively free derivation, when both `σ̄` and `σ̂` are present.
    pub fn projectively_free(&self) -> Option<Result<ProjectivelyFreeDerivation<F>, AlgebraError>> {
        let (bar, hat) = (self.sigma_bar.as_ref()?, self.sigma_hat.as_ref()?);
        let system = ProjectiveSystem {
            base: self.system.clone(),
            sigma_bar: bar.clone(),
        };
        Some(ProjectivelyFreeDerivation::new(
            self.derivation.clone(),
            system,
            hat.clone(),
        ))
    }

    /// Algebra axioms and every applicable check on `(∂, σ)` and the system.
    pub fn system_report(&self) -> Report {
        let alg = &self.algebra;
        let mut report = alg.axiom_report();
        match self.projectively_free() {
            Some(Ok(p)) => report.extend(full_report(alg, &p)),
            Some(Err(e)) => {
                let mut c = Check::defining("instance shape");
                c.fail("σ̄, σ̂", e);
                report.push(c);
            }
            None => {
                report.extend(preprojective_report(alg, &self.derivation, &self.system));
                if let Some(bar) = &self.sigma_bar {
                    report.extend(check_projective(
                        alg,
                        &ProjectiveSystem {
                            base: self.system.clone(),
                            sigma_bar: bar.clone(),
                        },
                    ));
                }
            }
        }
        report
    }

    pub fn calculus(&self) -> Result<Calculus<F>, AlgebraError> {
        Calculus::build(&self.algebra, &self.derivation, &self.system, self.sigma_bar.as_ref())
    }
}

/// Family-specific data behind a gallery instance.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Family<F> {
    Hopf {
        group: FiniteGroup,
        hopf: HopfData<F>,
        functionals: CovariantFunctionals<F>,
    },
    Inner(InnerData<F>),
    Supercircle {
        window: i64,
    },
    PreProjective,
}

#[derive(Clone, Debug)]
pub struct GalleryEntry<F> {
    pub instance: Instance<F>,
    pub family: Family<F>,
}

/// The function algebra of `group` with the covariant calculus of the
/// given non-identity elements, compared against the Haar functional.
pub fn hopf_entry<F: Field>(name: &str, group: FiniteGroup, subset: &[usize]) -> Result<GalleryEntry<F>, AlgebraError> {
    let hopf = group.function_algebra::<F>();
    let functionals = hopf::finite_group_functionals(&group, subset)?;
    let p = hopf::covariant_derivation(&hopf, &functionals)?;
    let mut instance = Instance::from_projectively_free(name, hopf.algebra().clone(), p);
    instance.reference = Some(hopf::haar_functional(group.order()));
    Ok(GalleryEntry {
        instance,
        family: Family::Hopf {
            group,
            hopf,
            functionals,
        },
    })
}

pub fn z2_haar<F: Field>() -> GalleryEntry<F> {
    hopf_entry("z2-haar", FiniteGroup::cyclic(2), &[1]).expect("valid subset")
}

pub fn z3_haar<F: Field>() -> GalleryEntry<F> {
    hopf_entry("z3-haar", FiniteGroup::cyclic(3), &[1, 2]).expect("valid subset")
}

/// Functions on `ℤ₂` with `σ = σ̄ = σ̂ = R_g` and `δ = e_e`.
pub fn inner_z2<F: Field>() -> GalleryEntry<F> {
    let group = FiniteGroup::cyclic(2);
    let alg = group.function_algebra::<F>().algebra().clone();
    let r = group.right_translation::<F>(1);
    let sigma = OpMatrix::diagonal(2, &[r]);
    let data = InnerData::new(sigma.clone(), vec![alg.basis(0)]).expect("one δ per row");
    let d = inner::inner_calculus(&alg, &data).expect("R_g is an algebra map");
    let p = ProjectivelyFreeDerivation::free(&alg, d, sigma.clone(), sigma).expect("sizes agree");
    let mut instance = Instance::from_projectively_free("inner-z2", alg, p);
    instance.reference = Some(vec![F::one(), F::zero()]);
    GalleryEntry {
        instance,
        family: Family::Inner(data),
    }
}

/// The supercircle with window `w`, carrying the Berezin integral as its
/// claimed `Λ`.
pub fn supercircle_entry<F: Field>(w: i64) -> Result<GalleryEntry<F>, AlgebraError> {
    let m = supercircle::supercircle::<F>(w)?;
    let mut instance = Instance::from_projectively_free(&format!("supercircle:{w}"), m.algebra, m.derivation);
    instance.claimed_lambda = Some(m.berezin);
    Ok(GalleryEntry {
        instance,
        family: Family::Supercircle { window: w },
    })
}

/// `A = 𝕜[t]/(t² − t)`, `π = diag(t, 0)`, `σ = σ̃ = π` acting by right
/// multiplication, `∂ = (R_{1−t}, id)`. Pre-projective but not projective.
pub fn preproj_toy<F: Field>() -> GalleryEntry<F> {
    let alg = polynomial_quotient::<F>(&[F::zero(), -F::one()]).expect("monic modulus");
    let pi = AlgMatrix::diagonal(&alg, &[alg.basis(1), alg.zero()]);
    let sigma = OpMatrix::embed(&alg, &pi).expect("sizes agree");
    let one_minus_t = alg.unit().clone() - &alg.basis(1);
    let partial = vec![
        LinOp::right_mul(&alg, &one_minus_t).expect("in range"),
        LinOp::identity(2),
    ];
    let derivation = MultiDerivation::new(partial, sigma.clone()).expect("sizes agree");
    let system = PreProjectiveSystem::new(pi, sigma, None).expect("sizes agree");
    GalleryEntry {
        instance: Instance {
            name: "preproj-toy".into(),
            algebra: alg,
            derivation,
            system,
            sigma_bar: None,
            sigma_hat: None,
            claimed_lambda: None,
            reference: None,
        },
        family: Family::PreProjective,
    }
}

/// Looks up `z2-haar`, `z3-haar`, `supercircle:<W>`, `inner-z2` or
/// `preproj-toy`.
pub fn by_name<F: Field>(name: &str) -> Result<GalleryEntry<F>, AlgebraError> {
    match name {
        "z2-haar" => Ok(z2_haar()),
        "z3-haar" => Ok(z3_haar()),
        "inner-z2" => Ok(inner_z2()),
        "preproj-toy" => Ok(preproj_toy()),
        "supercircle" => supercircle_entry(4),
        _ => match name.strip_prefix("supercircle:") {
            Some(w) => {
                let w: i64 = w
                    .parse()
                    .map_err(|_| AlgebraError::Malformed(format!("bad supercircle window {w:?}")))?;
                supercircle_entry(w)
            }
            None => Err(AlgebraError::Malformed(format!("unknown gallery entry {name:?}"))),
        },
    }
}

/// Results of running every applicable checker on an instance.
#[derive(Clone, Debug)]
pub struct SuiteOutcome<F> {
    pub report: Report,
    pub calculus: Option<Calculus<F>>,
    pub divergence: Option<Divergence<F>>,
    pub hom_dim: Option<usize>,
    pub integral: Option<IntegralPresentation<F>>,
    pub window: Option<WindowIntegral<F>>,
    /// The `Λ` used for integration by parts and exactness.
    pub lambda: Option<Matrix<F>>,
    /// `Λ = c · reference` for this `c`.
    pub scalar: Option<F>,
}

/// Runs the generic checkers of every module on an instance.
pub fn run_suite<F: Field>(inst: &Instance<F>) -> Result<SuiteOutcome<F>, AlgebraError> {
    let mut out = SuiteOutcome {
        report: inst.system_report(),
        calculus: None,
        divergence: None,
        hom_dim: None,
        integral: None,
        window: None,
        lambda: None,
        scalar: None,
    };
    let calc = match inst.calculus() {
        Ok(c) => c,
        Err(AlgebraError::Axioms(r)) => {
            out.report.extend(*r);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.report.extend(calc.invariant_report());
    let homs = calc.hom_generators()?;
    if !inst.algebra.is_graded() {
        out.hom_dim = Some(homs.len());
    }
    out.report.extend(calc.hom_report(&homs));
    out.calculus = Some(calc.clone());
    let p = match inst.projectively_free() {
        Some(p) => p?,
        None => return Ok(out),
    };

    let mut rec = Check::derived("reconstruction f = Σ ξ_i σ̂_ik(f(ω_k))");
    for (k, f) in homs.iter().enumerate() {
        calc.reconstruction_check(f, &p.sigma_hat, None, &mut rec, &format!("f#{k}"));
    }
    out.report.push(rec);

    let div = Divergence::from_calculus(calc, &p)?;
    out.report.extend(check_divergence_law(&div, &homs));
    if !inst.algebra.is_graded() {
        let int = integral(&div)?;
        let lambda = int.matrix();
        if let Some(reference) = &inst.reference {
            let mut c = Check::defining("Λ proportional to the reference functional");
            let row = (int.dim_coker() == 1).then(|| lambda.row(0).to_vec());
            out.scalar = row.as_ref().and_then(|r| hopf::proportionality(r, reference));
            c.record(
                out.scalar.is_some(),
                || "Λ".into(),
                || format!("dim coker = {}, Λ = {:?}", int.dim_coker(), lambda.to_rows()),
            );
            out.report.push(c);
        }
        out.lambda = Some(lambda);
        out.integral = Some(int);
    }
    if let Some(claimed) = &inst.claimed_lambda {
        let w = integral_window(&div, claimed)?;
        out.report.extend(w.report.clone());
        out.window = Some(w);
        if out.lambda.is_none() {
            out.lambda = Some(functional_matrix(claimed));
        }
    }
    if let Some(lambda) = &out.lambda {
        out.report.extend(exactness_check(&div, lambda));
        if div.calculus().is_free() {
            out.report.extend(ibp_report(&div, lambda)?);
        }
    }
    out.divergence = Some(div);
    Ok(out)
}

/// The generic suite plus the family-specific checks.
pub fn full_suite<F: Field>(entry: &GalleryEntry<F>) -> Result<SuiteOutcome<F>, AlgebraError> {
    let mut out = run_suite(&entry.instance)?;
    let alg = &entry.instance.algebra;
    match &entry.family {
        Family::Hopf {
            hopf: h,
            functionals,
            group,
        } => {
            out.report.extend(h.axiom_report());
            out.report.extend(hopf::functional_report(h, functionals));
            out.report.extend(hopf::right_integral_annihilation(
                h,
                functionals,
                &hopf::haar_functional(group.order()),
            ));
            if let Some(div) = &out.divergence {
                let mut c = Check::derived("∂^σ_i = (χ_i∘S⁻²) ⊳");
                for (i, (l, r)) in div
                    .twisted()
                    .partial
                    .iter()
                    .zip(hopf::twisted_partials(h, functionals))
                    .enumerate()
                {
                    c.record(*l == r, || format!("i={}", i + 1), || "operators differ".into());
                }
                out.report.push(c);
            }
            if let Some(lambda) = &out.lambda {
                let mut c = Check::derived("annihilator of (χ_i∘S⁻²) ⊳ A equals span Λ");
                let span = SubspacePresentation::row_space(lambda);
                let ann = hopf::annihilator(h, functionals);
                c.record(
                    span == ann,
                    || "Λ".into(),
                    || format!("dim span Λ = {}, dim annihilator = {}", span.dim(), ann.dim()),
                );
                out.report.push(c);
            }
        }
        Family::Inner(data) => {
            out.report.extend(data.algebra_map_report(alg));
            if let Some(calc) = &out.calculus {
                out.report.extend(inner::innerness_check(calc, data));
            }
            if let (Some(lambda), Some(bar), Some(hat)) =
                (&out.lambda, &entry.instance.sigma_bar, &entry.instance.sigma_hat)
            {
                out.report
                    .extend(inner::inner_integral_identity(alg, data, bar, hat, lambda));
            }
        }
        Family::Supercircle { window } => {
            if let Some(div) = &out.divergence {
                out.report.extend(supercircle::divergence_formula_check(div, *window));
            }
        }
        Family::PreProjective => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Q;

    #[test]
    fn every_entry_is_clean() {
        for name in GALLERY {
            let entry = by_name::<Q>(name).unwrap();
            let out = full_suite(&entry).unwrap();
            assert!(out.report.is_clean(), "{name}:\n{}", out.report);
        }
    }

    #[test]
    fn haar_scalars() {
        for name in ["z2-haar", "z3-haar"] {
            let out = full_suite(&by_name::<Q>(name).unwrap()).unwrap();
            assert_eq!(out.integral.as_ref().unwrap().dim_coker(), 1);
            assert!(out.scalar.is_some());
        }
    }

    #[test]
    fn inner_integral_is_first_coefficient() {
        let out = full_suite(&inner_z2::<Q>()).unwrap();
        let int = out.integral.unwrap();
        assert_eq!(int.dim_coker(), 1);
        assert_eq!(out.scalar, Some(Q::from(1)));
    }

    #[test]
    fn toy_has_no_divergence() {
        let out = full_suite(&preproj_toy::<Q>()).unwrap();
        assert!(out.divergence.is_none());
        assert_eq!(out.calculus.unwrap().module_dim(), 1);
    }

    #[test]
    fn names() {
        assert!(by_name::<Q>("supercircle:3").is_ok());
        assert!(by_name::<Q>("supercircle:1").is_err());
        assert!(by_name::<Q>("supercircle:x").is_err());
        assert!(by_name::<Q>("z5").is_err());
    }
}
