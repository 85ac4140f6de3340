use super::{Algebra, AlgebraError, Elem, LinOp};
use crate::linear::{Field, Matrix};
use crate::report::{Check, Report};

/// A finite-dimensional Hopf algebra on top of a basis-presented algebra.
///
/// The coproduct is a `d² × d` matrix: column `x` holds `Δ(e_x)` with the
/// coefficient of `e_y ⊗ e_z` in row `y * d + z`.
#[derive(Clone, Debug)]
pub struct HopfData<F> {
    algebra: Algebra<F>,
    coproduct: Matrix<F>,
    counit: Vec<F>,
    antipode: LinOp<F>,
    antipode_inv: LinOp<F>,
}

impl<F: Field> HopfData<F> {
    /// Checks shapes and bijectivity of the antipode. The Hopf axioms are
    /// reported by [`HopfData::axiom_report`].
    pub fn new(
        algebra: Algebra<F>,
        coproduct: Matrix<F>,
        counit: Vec<F>,
        antipode: LinOp<F>,
    ) -> Result<Self, AlgebraError> {
        let d = algebra.dim();
        if algebra.is_graded() {
            return Err(AlgebraError::Unsupported(
                "Hopf data needs a finite-dimensional algebra".into(),
            ));
        }
        if coproduct.rows() != d * d || coproduct.cols() != d {
            return Err(AlgebraError::Malformed(format!("coproduct must be {}x{d}", d * d)));
        }
        if counit.len() != d || antipode.dim() != d {
            return Err(AlgebraError::Malformed("counit or antipode has the wrong size".into()));
        }
        let antipode_inv = antipode
            .inverse()
            .ok_or_else(|| AlgebraError::Malformed("antipode is not invertible".into()))?;
        Ok(HopfData {
            algebra,
            coproduct,
            counit,
            antipode,
            antipode_inv,
        })
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn coproduct(&self) -> &Matrix<F> {
        &self.coproduct
    }

    pub fn counit(&self) -> &[F] {
        &self.counit
    }

    pub fn antipode(&self) -> &LinOp<F> {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &LinOp<F> {
        &self.antipode_inv
    }

    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn delta(&self, x: usize, y: usize, z: usize) -> &F {
        self.coproduct.get(y * self.dim() + z, x)
    }

    /// `Δ(a)` as a `d × d` coefficient grid.
    pub fn coproduct_of(&self, a: &Elem<F>) -> Vec<Vec<F>> {
        let d = self.dim();
        let mut out = vec![vec![F::zero(); d]; d];
        for (x, c) in a.support() {
            for (y, row) in out.iter_mut().enumerate() {
                for (z, slot) in row.iter_mut().enumerate() {
                    let t = self.delta(x, y, z);
                    if !t.is_zero() {
                        *slot += &t.mul_ref(c);
                    }
                }
            }
        }
        out
    }

    /// Evaluates a functional given by its values on the basis.
    pub fn eval(f: &[F], a: &Elem<F>) -> F {
        let mut s = F::zero();
        for (i, c) in a.support() {
            s += &f[i].mul_ref(c);
        }
        s
    }

    /// The hit action `f ⊳ a = a₍₁₎ f(a₍₂₎)`.
    pub fn hit(&self, f: &[F]) -> LinOp<F> {
        let d = self.dim();
        LinOp::from_basis_fn(d, |x| {
            let mut out = vec![F::zero(); d];
            for (y, slot) in out.iter_mut().enumerate() {
                for (z, fz) in f.iter().enumerate() {
                    let t = self.delta(x, y, z);
                    if !t.is_zero() && !fz.is_zero() {
                        *slot += &t.mul_ref(fz);
                    }
                }
            }
            Elem::from_coords(out)
        })
    }

    /// `f ∘ op` as a functional.
    pub fn precompose(f: &[F], op: &LinOp<F>) -> Vec<F> {
        op.matrix().vec_mul(f)
    }

    /// Convolution `(f * g)(a) = f(a₍₁₎) g(a₍₂₎)`.
    pub fn convolution(&self, f: &[F], g: &[F]) -> Vec<F> {
        let d = self.dim();
        (0..d)
            .map(|x| {
                let mut s = F::zero();
                for y in 0..d {
                    for z in 0..d {
                        let t = self.delta(x, y, z);
                        if !t.is_zero() {
                            s += &t.mul_ref(&f[y]).mul_ref(&g[z]);
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// Coassociativity, counit, antipode, multiplicativity of `Δ` and `ε`,
    /// and `S⁻¹` really inverting `S`.
    pub fn axiom_report(&self) -> Report {
        let d = self.dim();
        let alg = &self.algebra;
        let label = |x: usize| alg.label(x).to_string();
        let mut report = Report::new();

        let mut coassoc = Check::defining("coassociativity");
        for x in 0..d {
            let c = self.coproduct_of(&alg.basis(x));
            let mut ok = true;
            'outer: for u in 0..d {
                for v in 0..d {
                    for w in 0..d {
                        let mut l = F::zero();
                        let mut r = F::zero();
                        for y in 0..d {
                            l += &c[y][w].mul_ref(self.delta(y, u, v));
                            r += &c[u][y].mul_ref(self.delta(y, v, w));
                        }
                        if l != r {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            coassoc.record(ok, || label(x), || "(Δ⊗id)Δ differs from (id⊗Δ)Δ".into());
        }
        report.push(coassoc);

        let mut counit = Check::defining("counit");
        for x in 0..d {
            let c = self.coproduct_of(&alg.basis(x));
            let mut left = vec![F::zero(); d];
            let mut right = vec![F::zero(); d];
            for y in 0..d {
                for z in 0..d {
                    left[z] += &self.counit[y].mul_ref(&c[y][z]);
                    right[y] += &self.counit[z].mul_ref(&c[y][z]);
                }
            }
            let e = alg.basis(x);
            let ok = Elem::from_coords(left) == e && Elem::from_coords(right) == e;
            counit.record(ok, || label(x), || "(ε⊗id)Δ or (id⊗ε)Δ is not the identity".into());
        }
        report.push(counit);

        let mut antipode = Check::defining("antipode");
        for x in 0..d {
            let outcome = (|| {
                let c = self.coproduct_of(&alg.basis(x));
                let mut left = alg.zero();
                let mut right = alg.zero();
                for y in 0..d {
                    for z in 0..d {
                        if c[y][z].is_zero() {
                            continue;
                        }
                        let sy = self.antipode.apply(&alg.basis(y));
                        let sz = self.antipode.apply(&alg.basis(z));
                        left.add_scaled(&alg.mul(&sy, &alg.basis(z))?, &c[y][z]);
                        right.add_scaled(&alg.mul(&alg.basis(y), &sz)?, &c[y][z]);
                    }
                }
                let expected = alg.unit().scale(&self.counit[x]);
                Ok((left != expected || right != expected)
                    .then(|| format!("S(a1)a2 = {}, a1S(a2) = {}", alg.format(&left), alg.format(&right))))
            })();
            antipode.record_result(outcome, || label(x));
        }
        report.push(antipode);

        let mut mult = Check::defining("coproduct multiplicative");
        let mut eps_mult = Check::defining("counit multiplicative");
        for a in 0..d {
            for b in 0..d {
                let outcome = (|| {
                    let ab = alg.mul(&alg.basis(a), &alg.basis(b))?;
                    let lhs = self.coproduct_of(&ab);
                    let ca = self.coproduct_of(&alg.basis(a));
                    let cb = self.coproduct_of(&alg.basis(b));
                    let mut rhs = vec![vec![F::zero(); d]; d];
                    for p in 0..d {
                        for q in 0..d {
                            if ca[p][q].is_zero() {
                                continue;
                            }
                            for r in 0..d {
                                for s in 0..d {
                                    if cb[r][s].is_zero() {
                                        continue;
                                    }
                                    let k = ca[p][q].mul_ref(&cb[r][s]);
                                    let left = alg.mul(&alg.basis(p), &alg.basis(r))?;
                                    let right = alg.mul(&alg.basis(q), &alg.basis(s))?;
                                    for (u, lu) in left.support() {
                                        for (v, rv) in right.support() {
                                            rhs[u][v] += &k.mul_ref(lu).mul_ref(rv);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    Ok((lhs != rhs).then(|| "Δ(ab) != Δ(a)Δ(b)".to_string()))
                })();
                mult.record_result(outcome, || format!("({}, {})", label(a), label(b)));
                let outcome = alg.mul(&alg.basis(a), &alg.basis(b)).map(|ab| {
                    let l = Self::eval(&self.counit, &ab);
                    let r = self.counit[a].mul_ref(&self.counit[b]);
                    (l != r).then(|| format!("ε(ab) = {l}, ε(a)ε(b) = {r}"))
                });
                eps_mult.record_result(outcome, || format!("({}, {})", label(a), label(b)));
            }
        }
        let mut unit_cp = Check::defining("coproduct unital");
        let c1 = self.coproduct_of(alg.unit());
        let u = alg.unit().coords();
        let ok = (0..d).all(|y| (0..d).all(|z| c1[y][z] == u[y].mul_ref(&u[z])))
            && Self::eval(&self.counit, alg.unit()).is_one();
        unit_cp.record(ok, || "1".into(), || "Δ(1) != 1⊗1 or ε(1) != 1".into());
        report.push(mult);
        report.push(eps_mult);
        report.push(unit_cp);

        let mut inv = Check::defining("antipode inverse");
        inv.record(
            self.antipode.compose(&self.antipode_inv).is_identity(),
            || "S".into(),
            || "S∘S⁻¹ is not the identity".into(),
        );
        report.push(inv);
        report
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::FiniteGroup;
    use crate::linear::Q;

    #[test]
    fn group_function_algebras_are_hopf() {
        for n in 1..=4 {
            let h = FiniteGroup::cyclic(n).function_algebra::<Q>();
            let r = h.axiom_report();
            assert!(r.is_clean(), "Z_{n}:\n{r}");
        }
    }

    #[test]
    fn non_abelian_group_is_hopf() {
        // S_3 as permutations of {0,1,2}.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let g = FiniteGroup::from_table(table).unwrap();
        let h = g.function_algebra::<Q>();
        assert!(h.axiom_report().is_clean());
    }

    #[test]
    fn evaluation_hits_as_right_translation() {
        let g = FiniteGroup::cyclic(3);
        let h = g.function_algebra::<Q>();
        for x in 0..3 {
            let mut ev = vec![Q::from(0); 3];
            ev[x] = Q::from(1);
            assert_eq!(h.hit(&ev), g.right_translation(x));
        }
    }

    #[test]
    fn counit_is_convolution_unit() {
        let h = FiniteGroup::cyclic(3).function_algebra::<Q>();
        let f = vec![Q::from(2), Q::new(1, 3), Q::from(-5)];
        assert_eq!(h.convolution(h.counit(), &f), f);
        assert_eq!(h.convolution(&f, h.counit()), f);
    }

    #[test]
    fn broken_antipode_detected() {
        let g = FiniteGroup::cyclic(3);
        let h = g.function_algebra::<Q>();
        let bad = super::HopfData::new(
            h.algebra().clone(),
            h.coproduct().clone(),
            h.counit().to_vec(),
            crate::algebra::LinOp::identity(3),
        )
        .unwrap();
        assert!(!bad.axiom_report().check("antipode").unwrap().is_clean());
    }
}
