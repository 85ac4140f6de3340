//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncdiv::algebra::{laurent_index, Elem};
use ncdiv::derivation::derived_identities;
use ncdiv::divergence::{check_divergence_law, ibp_report, integral, integral_window, Divergence};
use ncdiv::fodc::HomElement;
use ncdiv::gallery::{self, hopf, supercircle, Family, GALLERY};
use ncdiv::linear::Q;
use ncdiv::report::Report;
use rand::Rng;

const RANDOM_SYSTEMS: u64 = 24;
const RECONSTRUCTIONS: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn divergence_of(name: &str) -> Divergence<Q> {
    let inst = gallery::by_name::<Q>(name).unwrap().instance;
    let p = inst.projectively_free().unwrap().unwrap();
    Divergence::new(&inst.algebra, &p).unwrap()
}

fn clean(what: &str, r: &Report) -> Result<(), String> {
    if r.is_clean() {
        Ok(())
    } else {
        Err(format!("{what}: {} violations", r.total_violations()))
    }
}

fn criterion_1() -> Outcome {
    for name in GALLERY {
        let inst = gallery::by_name::<Q>(name).unwrap().instance;
        clean(name, &derived_identities(&inst.algebra, &inst.system))?;
    }
    for seed in 0..RANDOM_SYSTEMS {
        let s = common::random_system(seed);
        clean(
            &format!("random seed {seed}"),
            &derived_identities(&s.algebra, &s.system),
        )?;
    }
    Ok(format!("{} gallery, {RANDOM_SYSTEMS} random", GALLERY.len()))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for name in ["z2-haar", "z3-haar", "inner-z2", "supercircle:4"] {
        let div = divergence_of(name);
        let homs = div.calculus().hom_generators().unwrap();
        let r = check_divergence_law(&div, &homs);
        clean(name, &r)?;
        checked += r.checks[0].checked;
    }
    Ok(format!("{checked} pairs, preproj-toy has no divergence"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for name in ["z2-haar", "z3-haar", "inner-z2", "supercircle:4"] {
        let entry = gallery::by_name::<Q>(name).unwrap();
        let div = divergence_of(name);
        let lambda = match &entry.instance.claimed_lambda {
            Some(v) => ncdiv::divergence::functional_matrix(v),
            None => integral(&div).unwrap().matrix(),
        };
        let r = ibp_report(&div, &lambda).map_err(|e| format!("{name}: {e}"))?;
        clean(name, &r)?;
        checked += r.checks[0].checked;
    }
    Ok(format!("{checked} residuals"))
}

fn criterion_4() -> Outcome {
    let mut detail = Vec::new();
    for name in ["z2-haar", "z3-haar"] {
        let entry = gallery::by_name::<Q>(name).unwrap();
        let Family::Hopf {
            hopf: h,
            functionals,
            group,
        } = &entry.family
        else {
            return Err(format!("{name} is not a Hopf instance"));
        };
        let div = divergence_of(name);
        let int = integral(&div).unwrap();
        if int.dim_coker() != 1 {
            return Err(format!("{name}: dim coker = {}", int.dim_coker()));
        }
        let haar = hopf::haar_functional::<Q>(group.order());
        let row = int.matrix().row(0).to_vec();
        let c = hopf::proportionality(&row, &haar).ok_or(format!("{name}: Λ not ∝ Σ ev_g"))?;
        if !hopf::right_integral_annihilation(h, functionals, &haar).is_clean() {
            return Err(format!("{name}: Σ ev_g has a nonzero residual"));
        }
        if hopf::right_integral_annihilation(h, functionals, h.counit()).is_clean() {
            return Err(format!("{name}: ε has zero residuals"));
        }
        detail.push(format!("{name} Λ = {c}·Σ ev_g"));
    }
    Ok(detail.join(", "))
}

fn criterion_5() -> Outcome {
    let w = 8;
    let m = supercircle::supercircle::<Q>(w).unwrap();
    let div = Divergence::new(&m.algebra, &m.derivation).unwrap();
    let win = integral_window(&div, &m.berezin).map_err(|e| e.to_string())?;
    clean("window integral", &win.report)?;
    clean("divergence formula", &supercircle::divergence_formula_check(&div, w))?;
    let alg = &m.algebra;
    let theta = alg.basis(laurent_index(w, 0, true));
    let z = alg.basis(laurent_index(w, 1, false));
    let f = div.calculus().hom_from_values(vec![alg.zero(), theta]).unwrap();
    if div.apply(&f) != -alg.unit().clone() {
        return Err("∇(0, θ) ≠ −1".into());
    }
    let f = div.calculus().hom_from_values(vec![z.clone(), alg.zero()]).unwrap();
    if div.apply(&f) != z {
        return Err("∇(z, 0) ≠ z".into());
    }
    let skipped: usize = win.report.checks.iter().map(|c| c.skipped).sum();
    Ok(format!("W = {w}, {skipped} outside window"))
}

fn random_combination(div: &Divergence<Q>, homs: &[HomElement<Q>], rng: &mut impl Rng) -> HomElement<Q> {
    let alg = div.algebra();
    let mut values = vec![alg.zero(); div.calculus().n()];
    for f in homs {
        let c = Q::from(rng.gen_range(-5..=5));
        for (v, x) in values.iter_mut().zip(&f.values) {
            v.add_scaled(x, &c);
        }
    }
    div.calculus().hom_from_values(values).unwrap()
}

fn low_degree(w: i64, dim: usize, rng: &mut impl Rng) -> Elem<Q> {
    let mut coords = vec![Q::from(0); dim];
    for k in -1..=1 {
        for odd in [false, true] {
            coords[laurent_index(w, k, odd)] = Q::from(rng.gen_range(-3..=3));
        }
    }
    Elem::from_coords(coords)
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    let mut total = 0;
    for name in ["z2-haar", "z3-haar", "inner-z2", "supercircle:4"] {
        let div = divergence_of(name);
        let c = div.calculus();
        let alg = div.algebra();
        let homs = if alg.is_graded() {
            Vec::new()
        } else {
            c.hom_basis().unwrap()
        };
        for k in 0..RECONSTRUCTIONS {
            let f = if alg.is_graded() {
                let values = (0..c.n()).map(|_| low_degree(4, alg.dim(), &mut rng)).collect();
                c.hom_from_values(values).unwrap()
            } else {
                random_combination(&div, &homs, &mut rng)
            };
            let g = c
                .reconstruct(&f, div.sigma_hat())
                .map_err(|e| format!("{name} #{k}: {e}"))?;
            if g.values != f.values || g.matrix != f.matrix {
                return Err(format!("{name} #{k}: reconstruction differs"));
            }
            total += 1;
        }
    }
    Ok(format!("{total} elements"))
}

fn criterion_7() -> Outcome {
    let mutants = common::z2_mutants();
    for (what, inst) in &mutants {
        let report = gallery::run_suite(inst).map_err(|e| format!("{what}: {e}"))?.report;
        if report.is_clean() {
            return Err(format!("{what} not caught"));
        }
    }
    Ok(format!("{} perturbations caught", mutants.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("derived identities vanish", criterion_1, 5),
        ("divergence law", criterion_2, 5),
        ("integration by parts", criterion_3, 10),
        ("Haar integral", criterion_4, 10),
        ("supercircle W = 8", criterion_5, 10),
        ("reconstruction", criterion_6, 10),
        ("perturbations detected", criterion_7, 10),
    ];
    let mut failed = 0;
    for (k, (name, run, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*bound);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {bound} s bound")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {status} ({} ms, bound {bound} s) {name}: {detail}",
            k + 1,
            elapsed.as_millis()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
