//! Closed-form values checked against hand computations.

use ncdiv::algebra::{laurent_index, Elem, HopfData, OpMatrix};
use ncdiv::derivation::{check_multiderivation, ProjectivelyFreeDerivation};
use ncdiv::divergence::{exactness_check, ibp_report, integral, integral_window, Divergence};
use ncdiv::gallery::{self, hopf, inner, supercircle, Family};
use ncdiv::linear::{Cyclotomic, Field, Matrix, Q};

fn q(n: i64) -> Q {
    Q::from(n)
}

fn divergence_of(name: &str) -> Divergence<Q> {
    let inst = gallery::by_name::<Q>(name).unwrap().instance;
    let p = inst.projectively_free().unwrap().unwrap();
    Divergence::new(&inst.algebra, &p).unwrap()
}

#[test]
fn z2_image_is_differences() {
    let div = divergence_of("z2-haar");
    let int = integral(&div).unwrap();
    let alg = div.algebra();
    // V = span{e_e − e_g}: the hom space is spanned by a ξ, so V = ∂^σ(A) = (R_g − id)(A).
    assert_eq!(int.image().dim(), 1);
    assert!(int.image().contains(&[q(1), q(-1)]));
    for (a, b) in [(1, 0), (0, 1), (3, -7), (2, 5)] {
        let x = Elem::from_coords(vec![q(a), q(b)]);
        assert_eq!(int.lambda(&x), vec![q(a + b)]);
    }
    assert_eq!(alg.labels(), ["e", "g"]);
}

#[test]
fn z2_ibp_example() {
    let div = divergence_of("z2-haar");
    let alg = div.algebra().clone();
    let lambda = integral(&div).unwrap().matrix();
    let (e, g) = (alg.basis(0), alg.basis(1));
    let d = &div.twisted().partial[0];
    // Λ(e ∂(e)) = Λ(e(e_g − e_e)) = Λ(−e_e) = −1.
    assert_eq!(lambda.mul_vec(alg.mul(&e, &d.apply(&e)).unwrap().coords()), vec![q(-1)]);
    // Λ(∂(e) σ̂(e)) = Λ((e_g − e_e) e_g) = 1.
    let hat = div.sigma_hat().get(0, 0).apply(&e);
    assert_eq!(hat, g);
    assert_eq!(
        lambda.mul_vec(alg.mul(&d.apply(&e), &hat).unwrap().coords()),
        vec![q(1)]
    );
    assert_eq!(div.ibp_residual(&lambda, &e, &e, 0).unwrap(), vec![q(0)]);
    // a = 1 gives Λ(∂(b)) on both sides.
    for b in 0..2 {
        assert_eq!(
            div.ibp_residual(&lambda, alg.unit(), &alg.basis(b), 0).unwrap(),
            vec![q(0)]
        );
    }
}

#[test]
fn z3_integral_is_sum_of_values() {
    let div = divergence_of("z3-haar");
    let int = integral(&div).unwrap();
    assert_eq!(int.dim_coker(), 1);
    let row = int.matrix().row(0).to_vec();
    let c = hopf::proportionality(&row, &[q(1), q(1), q(1)]).unwrap();
    assert!(!c.is_zero());
    for diff in [[q(1), q(-1), q(0)], [q(0), q(1), q(-1)]] {
        assert!(int.image().contains(&diff));
    }
}

#[test]
fn z2_chi_relation_by_hand() {
    let entry = gallery::z2_haar::<Q>();
    let Family::Hopf {
        hopf: h, functionals, ..
    } = &entry.family
    else {
        panic!()
    };
    // χ(ab) = a(g)b(g) − a(e)b(e) = χ(a)θ(b) + ε(a)χ(b) for functions a, b.
    let alg = h.algebra();
    for (a0, a1, b0, b1) in [(1, 2, 3, 4), (-1, 0, 5, 2), (2, 2, -3, 1)] {
        let a = Elem::from_coords(vec![q(a0), q(a1)]);
        let b = Elem::from_coords(vec![q(b0), q(b1)]);
        let ab = alg.mul(&a, &b).unwrap();
        let chi = |x: &Elem<Q>| HopfData::eval(&functionals.chi[0], x);
        let theta = |x: &Elem<Q>| HopfData::eval(&functionals.theta[0][0], x);
        let eps = |x: &Elem<Q>| HopfData::eval(h.counit(), x);
        assert_eq!(chi(&ab), q(a1 * b1 - a0 * b0));
        assert_eq!(chi(&ab), chi(&a) * theta(&b) + eps(&a) * chi(&b));
    }
}

#[test]
fn counit_fails_right_integral() {
    let entry = gallery::z2_haar::<Q>();
    let Family::Hopf {
        hopf: h, functionals, ..
    } = &entry.family
    else {
        panic!()
    };
    let r = hopf::right_integral_annihilation(h, functionals, h.counit());
    let c = r.check("λ((χ_i∘S⁻²) ⊳ a) = 0").unwrap();
    assert!(c.samples.iter().any(|v| v.location == "i=1, a=g"));
}

#[test]
fn berezin_closed_forms() {
    let m = supercircle::supercircle::<Q>(4).unwrap();
    let w = 4;
    let lam = |k: i64, odd: bool| m.berezin[laurent_index(w, k, odd)].clone();
    assert_eq!(lam(0, true), q(1));
    assert_eq!(lam(2, true), q(0));
    for k in -w..=w {
        assert_eq!(lam(k, false), q(0));
    }
    // z²θ = ∂_x(z²θ)/2 is exact.
    let z2t = m.algebra.basis(laurent_index(w, 2, true));
    assert_eq!(supercircle::partial_x::<Q>(w).apply(&z2t), z2t.scale(&q(2)));
}

#[test]
fn supercircle_even_functional_fails_on_theta() {
    let w = 4;
    let m = supercircle::supercircle::<Q>(w).unwrap();
    let div = Divergence::new(&m.algebra, &m.derivation).unwrap();
    let theta = m.algebra.basis(laurent_index(w, 0, true));
    let f = div.calculus().hom_from_values(vec![m.algebra.zero(), -theta]).unwrap();
    assert_eq!(div.apply(&f), m.algebra.unit().clone());
    let mut even = vec![q(0); m.algebra.dim()];
    even[laurent_index(w, 0, false)] = q(1);
    let report = integral_window(&div, &even).unwrap().report;
    let check = report.check("Λ∘∇ = 0 on window generators").unwrap();
    assert_eq!(check.violations, 1);
    assert!(check.samples[0].location.contains("z^0θ"));
}

#[test]
fn supercircle_ibp_example() {
    let w = 4;
    let m = supercircle::supercircle::<Q>(w).unwrap();
    let div = Divergence::new(&m.algebra, &m.derivation).unwrap();
    let lambda = Matrix::from_fn(1, m.algebra.dim(), |_, c| m.berezin[c].clone());
    let z = m.algebra.basis(laurent_index(w, 1, false));
    let zinv = m.algebra.basis(laurent_index(w, -1, false));
    // a = z, b = z⁻¹, i = x: Λ(z·(−z⁻¹)) + Λ(z·z⁻¹) with both even, so 0.
    assert_eq!(div.ibp_residual(&lambda, &z, &zinv, 0).unwrap(), vec![q(0)]);
    let t = m.algebra.basis(laurent_index(w, 0, true));
    let one = m.algebra.unit().clone();
    // a = 1, b = θ, i = θ: Λ(∂^σ_θ θ) = Λ(−1) = 0.
    assert_eq!(div.ibp_residual(&lambda, &one, &t, 1).unwrap(), vec![q(0)]);
    assert!(exactness_check(&div, &lambda).is_clean());
}

#[test]
fn supercircle_divergence_formula() {
    let w = 3;
    let fx = Elem::from_coords((0..4 * w as usize + 2).map(|i| q(i as i64 % 3 - 1)).collect());
    let ft = Elem::from_coords((0..4 * w as usize + 2).map(|i| q(i as i64 % 5 - 2)).collect());
    let m = supercircle::supercircle::<Q>(w).unwrap();
    let div = Divergence::new(&m.algebra, &m.derivation).unwrap();
    let f = div.calculus().hom_from_values(vec![fx.clone(), ft.clone()]).unwrap();
    let expected = supercircle::partial_x::<Q>(w).apply(&fx) - &supercircle::partial_theta::<Q>(w).apply(&ft);
    assert_eq!(div.apply(&f), expected);
}

#[test]
fn inner_identity_at_unit() {
    let entry = gallery::inner_z2::<Q>();
    let Family::Inner(data) = &entry.family else { panic!() };
    let inst = &entry.instance;
    let lambda = Matrix::from_fn(1, 2, |_, c| if c == 0 { q(1) } else { q(0) });
    let r = inner::inner_integral_identity(
        &inst.algebra,
        data,
        inst.sigma_bar.as_ref().unwrap(),
        inst.sigma_hat.as_ref().unwrap(),
        &lambda,
    );
    assert!(r.is_clean());
}

#[test]
fn cyclotomic_instances() {
    type K = Cyclotomic<3>;
    let entry = gallery::z3_haar::<K>();
    let out = gallery::full_suite(&entry).unwrap();
    assert!(out.report.is_clean(), "{}", out.report);
    assert_eq!(out.integral.unwrap().dim_coker(), 1);

    // An inner calculus on functions on ℤ₃ with a genuinely cyclotomic δ.
    let g = ncdiv::algebra::FiniteGroup::cyclic(3);
    let alg = g.function_algebra::<K>().algebra().clone();
    let r = g.right_translation::<K>(1);
    let zeta = K::zeta();
    let delta = Elem::from_coords(vec![K::one(), zeta.clone(), zeta.pow(2)]);
    let sigma = OpMatrix::diagonal(3, std::slice::from_ref(&r));
    let data = inner::InnerData::new(sigma.clone(), vec![delta]).unwrap();
    let d = inner::inner_calculus(&alg, &data).unwrap();
    assert!(check_multiderivation(&alg, &d).is_clean());
    let bar = OpMatrix::diagonal(3, &[g.right_translation::<K>(2)]);
    let p = ProjectivelyFreeDerivation::free(&alg, d, bar.clone(), sigma).unwrap();
    let div = Divergence::new(&alg, &p).unwrap();
    let lambda = integral(&div).unwrap().matrix();
    assert!(ibp_report(&div, &lambda).unwrap().is_clean());
}
