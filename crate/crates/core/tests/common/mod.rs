#![allow(dead_code)]

use ncdiv::algebra::{polynomial_quotient, AlgMatrix, Algebra, Elem, LinOp, OpMatrix};
use ncdiv::derivation::{MultiDerivation, PreProjectiveSystem};
use ncdiv::linear::{Field, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A commutative algebra `ℚ[t]/(f)` with a pre-projective system built from
/// a random idempotent `π = U E U⁻¹`.
pub struct RandomSystem {
    pub algebra: Algebra<Q>,
    pub roots: Vec<i64>,
    pub pi: AlgMatrix<Q>,
    pub derivation: MultiDerivation<Q>,
    pub system: PreProjectiveSystem<Q>,
    /// Whether `σ` carries the extra term `aY(𝕀 − π)`.
    pub skewed: bool,
    /// `dim_ℚ A^n π`, read off from the diagonal idempotents.
    pub module_dim: usize,
}

/// `(t − r_1)⋯(t − r_d)` as the lower coefficients of a monic polynomial.
fn monic_from_roots(roots: &[i64]) -> Vec<Q> {
    let mut coeffs = vec![Q::from(1)];
    for &r in roots {
        let mut next = vec![Q::from(0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &(c.clone() * Q::from(r));
        }
        coeffs = next;
    }
    coeffs.pop();
    coeffs
}

/// The Lagrange idempotent that is 1 at `roots[i]` and 0 at the others.
fn lagrange(alg: &Algebra<Q>, roots: &[i64], i: usize) -> Elem<Q> {
    let t = alg.basis(1.min(alg.dim() - 1));
    let mut out = alg.unit().clone();
    for (j, &r) in roots.iter().enumerate() {
        if j == i {
            continue;
        }
        let factor = (t.clone() - &alg.unit().scale(&Q::from(r))).scale(&Q::new(1, roots[i] - r));
        out = alg.mul(&out, &factor).unwrap();
    }
    out
}

fn small_element(rng: &mut ChaCha8Rng, alg: &Algebra<Q>) -> Elem<Q> {
    Elem::from_coords((0..alg.dim()).map(|_| Q::from(rng.gen_range(-2..=2))).collect())
}

fn elementary(alg: &Algebra<Q>, n: usize, i: usize, j: usize, c: &Elem<Q>) -> AlgMatrix<Q> {
    AlgMatrix::from_fn(n, |r, s| {
        if r == s {
            alg.unit().clone()
        } else if (r, s) == (i, j) {
            c.clone()
        } else {
            alg.zero()
        }
    })
}

pub fn random_system(seed: u64) -> RandomSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=4usize);
    let mut pool: Vec<i64> = (-3..=3).collect();
    pool.shuffle(&mut rng);
    let roots: Vec<i64> = pool[..d].to_vec();
    let algebra = polynomial_quotient::<Q>(&monic_from_roots(&roots)).unwrap();
    let idempotents: Vec<Elem<Q>> = (0..d).map(|i| lagrange(&algebra, &roots, i)).collect();
    let n = rng.gen_range(1..=3usize);

    let mut module_dim = 0;
    let diag: Vec<Elem<Q>> = (0..n)
        .map(|_| {
            let mut e = algebra.zero();
            for p in &idempotents {
                if rng.gen_bool(0.5) {
                    e = e + p;
                    module_dim += 1;
                }
            }
            e
        })
        .collect();
    let e = AlgMatrix::diagonal(&algebra, &diag);

    let mut u = AlgMatrix::identity(&algebra, n);
    let mut u_inv = AlgMatrix::identity(&algebra, n);
    if n > 1 {
        for _ in 0..rng.gen_range(0..=3) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = small_element(&mut rng, &algebra);
            u = u.mul(&algebra, &elementary(&algebra, n, i, j, &c)).unwrap();
            u_inv = elementary(&algebra, n, i, j, &-c).mul(&algebra, &u_inv).unwrap();
        }
    }
    let pi = u.mul(&algebra, &e).unwrap().mul(&algebra, &u_inv).unwrap();

    let skewed = rng.gen_bool(0.3);
    let sigma_matrix = if skewed {
        let y = AlgMatrix::from_fn(n, |_, _| small_element(&mut rng, &algebra));
        let complement = AlgMatrix::from_fn(n, |i, j| {
            let id = if i == j { algebra.unit().clone() } else { algebra.zero() };
            id - pi.get(i, j)
        });
        let extra = y.mul(&algebra, &complement).unwrap();
        AlgMatrix::from_fn(n, |i, j| pi.get(i, j).clone() + extra.get(i, j))
    } else {
        pi.clone()
    };
    let sigma = OpMatrix::embed(&algebra, &sigma_matrix).unwrap();
    let sigma_tilde = OpMatrix::embed(&algebra, &pi).unwrap();
    let derivation = if skewed {
        MultiDerivation::zero(sigma.clone())
    } else {
        // ∂_i(a) = a c_i with c = δπ − δ, so that cπ = 0.
        let delta: Vec<Elem<Q>> = (0..n).map(|_| small_element(&mut rng, &algebra)).collect();
        let dpi = pi.apply_row(&algebra, &delta).unwrap();
        let partial = dpi
            .iter()
            .zip(&delta)
            .map(|(x, y)| LinOp::right_mul(&algebra, &(x.clone() - y)).unwrap())
            .collect();
        MultiDerivation::new(partial, sigma.clone()).unwrap()
    };
    let system = PreProjectiveSystem::new(pi.clone(), sigma, Some(sigma_tilde)).unwrap();
    RandomSystem {
        algebra,
        roots,
        pi,
        derivation,
        system,
        skewed,
        module_dim,
    }
}

/// `k` small integer coefficients.
pub fn small_coefficients(rng: &mut ChaCha8Rng, k: usize) -> Vec<Q> {
    (0..k).map(|_| Q::from(rng.gen_range(-3..=3))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// Every `+1` perturbation of `z2-haar`: first each structure constant, then
/// each matrix entry of `σ_11`, applied to `σ` and `σ̃` alike.
pub fn z2_mutants() -> Vec<(String, ncdiv::gallery::Instance<Q>)> {
    let base = ncdiv::gallery::z2_haar::<Q>().instance;
    let alg = &base.algebra;
    let labels = alg.labels().to_vec();
    let constants = alg.structure_constants().unwrap();
    let d = alg.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut c = constants.clone();
                c[i][j][k] += &Q::from(1);
                let mutated =
                    Algebra::from_structure_constants_unchecked(labels.clone(), c, alg.unit().coords().to_vec())
                        .unwrap();
                let mut inst = base.clone();
                inst.algebra = mutated;
                out.push((format!("m[{i}][{j}][{k}]"), inst));
            }
        }
    }
    for r in 0..d {
        for c in 0..d {
            let mut inst = base.clone();
            let mut m = inst.derivation.sigma.get(0, 0).matrix().clone();
            *m.get_mut(r, c) += &Q::from(1);
            let op = LinOp::from_matrix(m).unwrap();
            *inst.derivation.sigma.get_mut(0, 0) = op.clone();
            *inst.system.sigma.get_mut(0, 0) = op.clone();
            *inst.system.sigma_tilde.get_mut(0, 0) = op;
            out.push((format!("σ_11[{r}][{c}]"), inst));
        }
    }
    out
}
