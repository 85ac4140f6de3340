//! Inner calculi `∂_i(a) = Σ_j δ_j σ_ji(a) − a δ_i` for an algebra map `σ`.

use crate::algebra::{Algebra, AlgebraError, Elem, LinOp, OpMatrix};
use crate::derivation::{algebra_map_check, MultiDerivation};
use crate::fodc::{Calculus, ModElem};
use crate::linear::{Field, Matrix};
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerData<F> {
    pub sigma: OpMatrix<F>,
    pub delta: Vec<Elem<F>>,
}

impl<F: Field> InnerData<F> {
    pub fn new(sigma: OpMatrix<F>, delta: Vec<Elem<F>>) -> Result<Self, AlgebraError> {
        if sigma.n() != delta.len() {
            return Err(AlgebraError::SizeMismatch {
                left: sigma.n(),
                right: delta.len(),
            });
        }
        Ok(InnerData { sigma, delta })
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    /// `σ(ab) = σ(a)σ(b)` and `σ(1) = 𝕀`.
    pub fn algebra_map_report(&self, alg: &Algebra<F>) -> Report {
        Report {
            checks: vec![algebra_map_check(alg, &self.sigma, "σ algebra map")],
        }
    }
}

/// The twisted multi-derivation of an inner datum. Errors if `σ` is not an
/// algebra map.
pub fn inner_calculus<F: Field>(alg: &Algebra<F>, data: &InnerData<F>) -> Result<MultiDerivation<F>, AlgebraError> {
    let report = data.algebra_map_report(alg);
    if !report.is_clean() {
        return Err(AlgebraError::Axioms(Box::new(report)));
    }
    let n = data.n();
    let partial = (0..n)
        .map(|i| {
            LinOp::try_from_basis_fn(alg.dim(), |a| {
                let e = alg.basis(a);
                let mut out = -alg.mul(&e, &data.delta[i])?;
                for (j, dj) in data.delta.iter().enumerate() {
                    out = out + &alg.mul(dj, &data.sigma.get(j, i).apply(&e))?;
                }
                Ok(out)
            })
        })
        .collect::<Result<_, _>>()?;
    MultiDerivation::new(partial, data.sigma.clone())
}

/// `D = Σ_i δ_i ω_i` in the module of `calc`.
pub fn inner_form<F: Field>(calc: &Calculus<F>, data: &InnerData<F>) -> Result<ModElem<F>, AlgebraError> {
    let alg = calc.algebra();
    let mut out = vec![alg.zero(); calc.n()];
    for (i, di) in data.delta.iter().enumerate() {
        let term = calc.left_action(di, &calc.omega(i))?;
        for (o, t) in out.iter_mut().zip(term) {
            *o = o.clone() + &t;
        }
    }
    Ok(out)
}

/// `d(a) = D·a − a·D` on every basis element.
pub fn innerness_check<F: Field>(calc: &Calculus<F>, data: &InnerData<F>) -> Report {
    let alg = calc.algebra();
    let mut check = Check::derived("inner: d(a) = D·a − a·D");
    match inner_form(calc, data) {
        Ok(form) => {
            for a in 0..alg.dim() {
                let outcome = (|| {
                    let e = alg.basis(a);
                    let lhs = calc.d(&e)?;
                    let right = calc.right_action(&form, &e)?;
                    let left = calc.left_action(&e, &form)?;
                    let rhs: ModElem<F> = right.into_iter().zip(left).map(|(r, l)| r - l).collect();
                    Ok((lhs != rhs).then(|| format!("{} != {}", calc.format(&lhs), calc.format(&rhs))))
                })();
                check.record_result(outcome, || format!("a={}", alg.label(a)));
            }
        }
        Err(e) => check.fail("D", e),
    }
    Report { checks: vec![check] }
}

/// Residuals of `Λ(Σ_{k,l} σ̄_kl(δ_l)σ̂_ki(a)) = Λ(Σ_l a σ̄_il(δ_l))` for all
/// basis `a` and all `i`.
pub fn inner_integral_identity<F: Field>(
    alg: &Algebra<F>,
    data: &InnerData<F>,
    sigma_bar: &OpMatrix<F>,
    sigma_hat: &OpMatrix<F>,
    lambda: &Matrix<F>,
) -> Report {
    let n = data.n();
    let mut check = Check::derived("Λ(Σ σ̄_kl(δ_l)σ̂_ki(a)) = Λ(Σ a σ̄_il(δ_l))");
    // bar_delta[k] = Σ_l σ̄_kl(δ_l).
    let bar_delta: Vec<Elem<F>> = (0..n)
        .map(|k| {
            let mut s = alg.zero();
            for (l, dl) in data.delta.iter().enumerate() {
                s = s + &sigma_bar.get(k, l).apply(dl);
            }
            s
        })
        .collect();
    for i in 0..n {
        for a in 0..alg.dim() {
            let outcome = (|| {
                let e = alg.basis(a);
                let mut lhs = alg.zero();
                for (k, bk) in bar_delta.iter().enumerate() {
                    lhs = lhs + &alg.mul(bk, &sigma_hat.get(k, i).apply(&e))?;
                }
                let rhs = alg.mul(&e, &bar_delta[i])?;
                let r = lambda.mul_vec((lhs - &rhs).coords());
                Ok(r.iter()
                    .any(|x| !x.is_zero())
                    .then(|| format!("residual {}", crate::divergence::format_vec(&r))))
            })();
            check.record_result(outcome, || format!("i={}, a={}", i + 1, alg.label(a)));
        }
    }
    Report { checks: vec![check] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::derivation::{check_multiderivation, PreProjectiveSystem};
    use crate::linear::Q;
    use proptest::prelude::*;

    fn z2() -> (Algebra<Q>, LinOp<Q>) {
        let g = FiniteGroup::cyclic(2);
        (g.function_algebra::<Q>().algebra().clone(), g.right_translation(1))
    }

    #[test]
    fn zero_delta_gives_zero() {
        let (a, r) = z2();
        let data = InnerData::new(OpMatrix::diagonal(2, &[r]), vec![a.zero()]).unwrap();
        let d = inner_calculus(&a, &data).unwrap();
        assert!(d.partial[0].is_zero());
    }

    #[test]
    fn z2_inner_values() {
        let (a, r) = z2();
        let data = InnerData::new(OpMatrix::diagonal(2, &[r]), vec![a.basis(0)]).unwrap();
        let d = inner_calculus(&a, &data).unwrap();
        // ∂(e_e) = e_e e_g − e_e e_e = −e_e; ∂(e_g) = e_e e_e − e_g e_e = e_e.
        assert_eq!(d.partial[0].apply(&a.basis(0)), -a.basis(0));
        assert_eq!(d.partial[0].apply(&a.basis(1)), a.basis(0));
        assert!(check_multiderivation(&a, &d).is_clean());
        let s = PreProjectiveSystem::free(&a, d.sigma.clone());
        let c = Calculus::build(&a, &d, &s, None).unwrap();
        assert!(innerness_check(&c, &data).is_clean());
    }

    #[test]
    fn non_multiplicative_sigma_rejected() {
        let (a, _) = z2();
        let data = InnerData::new(OpMatrix::diagonal(2, &[LinOp::zero(2)]), vec![a.basis(0)]).unwrap();
        assert!(inner_calculus(&a, &data).is_err());
    }

    fn small() -> impl Strategy<Value = Q> {
        (-3i64..=3).prop_map(Q::from)
    }

    proptest! {
        #[test]
        fn random_delta_gives_multiderivation(c in proptest::collection::vec(small(), 4)) {
            let g = FiniteGroup::cyclic(3);
            let a = g.function_algebra::<Q>().algebra().clone();
            let sigma = OpMatrix::diagonal(3, &[g.right_translation(1), g.right_translation(2)]);
            let delta = vec![
                Elem::from_coords(vec![c[0].clone(), c[1].clone(), Q::from(0)]),
                Elem::from_coords(vec![Q::from(0), c[2].clone(), c[3].clone()]),
            ];
            let data = InnerData::new(sigma, delta).unwrap();
            let d = inner_calculus(&a, &data).unwrap();
            prop_assert!(check_multiderivation(&a, &d).is_clean());
            let s = PreProjectiveSystem::free(&a, d.sigma.clone());
            let calc = Calculus::build(&a, &d, &s, None).unwrap();
            prop_assert!(innerness_check(&calc, &data).is_clean());
        }
    }
}
