//! Functions `a⁰ + a¹θ` on the supercircle as Laurent polynomials in
//! `z = e^{2πix}` with `∂_x` rescaled to `z d/dz`.

use crate::algebra::{laurent_grassmann, laurent_index, Algebra, AlgebraError, Elem, LinOp, OpMatrix};
use crate::derivation::{MultiDerivation, ProjectivelyFreeDerivation};
use crate::divergence::Divergence;
use crate::linear::Field;
use crate::report::{Check, Report};

#[derive(Clone, Debug)]
pub struct SupercircleModel<F> {
    pub window: i64,
    pub algebra: Algebra<F>,
    pub derivation: ProjectivelyFreeDerivation<F>,
    /// `z^kθ^ε ↦ δ_{k,0}δ_{ε,1}`.
    pub berezin: Vec<F>,
}

fn split(w: i64, i: usize) -> (i64, bool) {
    (i as i64 / 2 - w, i % 2 == 1)
}

/// `∂_x(z^kθ^ε) = k z^kθ^ε`.
pub fn partial_x<F: Field>(w: i64) -> LinOp<F> {
    let d = laurent_index(w, w, true) + 1;
    LinOp::from_basis_fn(d, |i| Elem::basis(d, i).scale(&F::from_i64(split(w, i).0)))
}

/// `∂_θ(z^kθ) = z^k`, `∂_θ(z^k) = 0`.
pub fn partial_theta<F: Field>(w: i64) -> LinOp<F> {
    let d = laurent_index(w, w, true) + 1;
    LinOp::from_basis_fn(d, |i| {
        if i % 2 == 1 {
            Elem::basis(d, i - 1)
        } else {
            Elem::zero(d)
        }
    })
}

/// `z^kθ^ε ↦ (−1)^ε z^kθ^ε`.
pub fn parity<F: Field>(w: i64) -> LinOp<F> {
    let d = laurent_index(w, w, true) + 1;
    LinOp::from_basis_fn(d, |i| {
        let e = Elem::basis(d, i);
        if i % 2 == 1 {
            -e
        } else {
            e
        }
    })
}

/// The model with window `w ≥ 2`, `σ = diag(id, parity)` and `σ̄ = σ̂ = σ`.
pub fn supercircle<F: Field>(w: i64) -> Result<SupercircleModel<F>, AlgebraError> {
    if w < 2 {
        return Err(AlgebraError::Malformed(
            "the supercircle window must be at least 2".into(),
        ));
    }
    let algebra = laurent_grassmann::<F>(w)?;
    let d = algebra.dim();
    let sigma = OpMatrix::diagonal(d, &[LinOp::identity(d), parity(w)]);
    let derivation = MultiDerivation::new(vec![partial_x(w), partial_theta(w)], sigma.clone())?;
    let derivation = ProjectivelyFreeDerivation::free(&algebra, derivation, sigma.clone(), sigma)?;
    let mut berezin = vec![F::zero(); d];
    berezin[laurent_index(w, 0, true)] = F::one();
    Ok(SupercircleModel {
        window: w,
        algebra,
        derivation,
        berezin,
    })
}

/// `∂_x f_x − ∂_θ f_θ`, computed coefficientwise.
pub fn divergence_formula<F: Field>(w: i64, fx: &Elem<F>, ftheta: &Elem<F>) -> Elem<F> {
    let mut out = vec![F::zero(); fx.dim()];
    for (i, c) in fx.support() {
        out[i] += &c.mul_ref(&F::from_i64(split(w, i).0));
    }
    for (i, c) in ftheta.support() {
        if i % 2 == 1 {
            out[i - 1] -= c;
        }
    }
    Elem::from_coords(out)
}

/// Compares `∇` with `∂_x f_x − ∂_θ f_θ` on every window hom generator.
pub fn divergence_formula_check<F: Field>(div: &Divergence<F>, w: i64) -> Report {
    let alg = div.algebra();
    let mut check = Check::derived("∇(f) = ∂_x f_x − ∂_θ f_θ");
    match div.calculus().hom_window() {
        Ok(gens) => {
            for f in &gens {
                let lhs = div.apply(f);
                let rhs = divergence_formula(w, &f.values[0], &f.values[1]);
                check.record(
                    lhs == rhs,
                    || format!("f = ({}, {})", alg.format(&f.values[0]), alg.format(&f.values[1])),
                    || format!("{} != {}", alg.format(&lhs), alg.format(&rhs)),
                );
            }
        }
        Err(e) => check.fail("hom window", e),
    }
    Report { checks: vec![check] }
}
