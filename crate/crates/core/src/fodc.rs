//! The first-order calculus `Ω¹ = M = A^n π` built from a twisted
//! multi-derivation and a (pre-)projective system.
//!
//! Module elements are row vectors `m = (m_1, …, m_n)` with `m π = m`. The
//! generators are `ω_i` = row `i` of `π` and the left duals are the
//! coordinate projections `η_j(m) = m_j`.

use crate::algebra::{Algebra, AlgebraError, Elem, LinOp, OpMatrix};
use crate::derivation::{MultiDerivation, PreProjectiveSystem};
use crate::linear::{Field, Matrix, SubspacePresentation};
use crate::report::{Check, Report};

/// An element of `M`, as a row vector over `A`.
pub type ModElem<F> = Vec<Elem<F>>;

#[derive(Clone, Debug)]
pub struct Calculus<F> {
    algebra: Algebra<F>,
    derivation: MultiDerivation<F>,
    system: PreProjectiveSystem<F>,
    sigma_bar: Option<OpMatrix<F>>,
    /// A 𝕜-basis of `M`.
    basis: Vec<ModElem<F>>,
    /// `M` inside `A^n` with coordinates flattened slot by slot; `None` when
    /// `M = A^n` (free case), where coordinates are the flattened vector.
    module: Option<SubspacePresentation<F>>,
}

impl<F: Field> Calculus<F> {
    /// Builds the calculus and verifies every invariant in
    /// [`Calculus::invariant_report`]; a violation aborts construction.
    pub fn build(
        algebra: &Algebra<F>,
        derivation: &MultiDerivation<F>,
        system: &PreProjectiveSystem<F>,
        sigma_bar: Option<&OpMatrix<F>>,
    ) -> Result<Self, AlgebraError> {
        let calc = Self::new_unchecked(algebra, derivation, system, sigma_bar)?;
        let report = calc.invariant_report();
        if report.is_clean() {
            Ok(calc)
        } else {
            Err(AlgebraError::Axioms(Box::new(report)))
        }
    }

    /// Builds the module without verifying the calculus invariants.
    pub fn new_unchecked(
        algebra: &Algebra<F>,
        derivation: &MultiDerivation<F>,
        system: &PreProjectiveSystem<F>,
        sigma_bar: Option<&OpMatrix<F>>,
    ) -> Result<Self, AlgebraError> {
        let n = derivation.n();
        let d = algebra.dim();
        for m in [system.n(), sigma_bar.map_or(n, OpMatrix::n)] {
            if m != n {
                return Err(AlgebraError::SizeMismatch { left: n, right: m });
            }
        }
        if derivation.dim() != d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: derivation.dim(),
            });
        }
        let free = system.is_free(algebra);
        if algebra.is_graded() && !free {
            return Err(AlgebraError::Unsupported(
                "graded algebras are supported with π = 𝕀 only".into(),
            ));
        }
        let unit_rows = || {
            (0..n).flat_map(move |i| {
                (0..d).map(move |a| {
                    let mut row = vec![Elem::zero(d); n];
                    row[i] = Elem::basis(d, a);
                    row
                })
            })
        };
        let (basis, module) = if free {
            (unit_rows().collect(), None)
        } else {
            let rows = unit_rows()
                .map(|row| system.pi.apply_row(algebra, &row).map(|m| flatten(&m)))
                .collect::<Result<Vec<_>, _>>()?;
            let module = SubspacePresentation::span(n * d, &rows);
            let basis = module.basis_vectors().iter().map(|v| unflatten(v, n, d)).collect();
            (basis, Some(module))
        };
        Ok(Calculus {
            algebra: algebra.clone(),
            derivation: derivation.clone(),
            system: system.clone(),
            sigma_bar: sigma_bar.cloned(),
            basis,
            module,
        })
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.algebra
    }

    pub fn derivation(&self) -> &MultiDerivation<F> {
        &self.derivation
    }

    pub fn system(&self) -> &PreProjectiveSystem<F> {
        &self.system
    }

    pub fn sigma_bar(&self) -> Option<&OpMatrix<F>> {
        self.sigma_bar.as_ref()
    }

    pub fn n(&self) -> usize {
        self.derivation.n()
    }

    pub fn is_free(&self) -> bool {
        self.module.is_none()
    }

    /// The 𝕜-dimension of `M` (within the window for graded algebras).
    pub fn module_dim(&self) -> usize {
        self.basis.len()
    }

    /// A 𝕜-basis of `M`.
    pub fn module_basis(&self) -> &[ModElem<F>] {
        &self.basis
    }

    pub fn omega(&self, i: usize) -> ModElem<F> {
        self.system.pi.row(i)
    }

    pub fn eta(&self, j: usize, m: &[Elem<F>]) -> Elem<F> {
        m[j].clone()
    }

    /// Coordinates of `m` in [`Calculus::module_basis`]; `None` if `m ∉ M`.
    pub fn coordinates(&self, m: &[Elem<F>]) -> Option<Vec<F>> {
        let v = flatten(m);
        match &self.module {
            Some(module) => module.coordinates(&v),
            None => Some(v),
        }
    }

    pub fn contains(&self, m: &[Elem<F>]) -> bool {
        self.coordinates(m).is_some()
    }

    /// `a · m`.
    pub fn left_action(&self, a: &Elem<F>, m: &[Elem<F>]) -> Result<ModElem<F>, AlgebraError> {
        m.iter().map(|x| self.algebra.mul(a, x)).collect()
    }

    /// `m · a = Σ_{i,j} η_i(m) σ̃_ij(a) ω_j`.
    pub fn right_action(&self, m: &[Elem<F>], a: &Elem<F>) -> Result<ModElem<F>, AlgebraError> {
        let alg = &self.algebra;
        let st = self.system.sigma_tilde.eval(a);
        let w = st.apply_row(alg, m)?;
        self.system.pi.apply_row(alg, &w)
    }

    /// `da = Σ_i ∂_i(a) ω_i = ∂(a) π`.
    pub fn d(&self, a: &Elem<F>) -> Result<ModElem<F>, AlgebraError> {
        self.system.pi.apply_row(&self.algebra, &self.derivation.apply(a))
    }

    /// `ξ_i(m) = Σ_j σ̄_ij(η_j(m))`.
    pub fn xi(&self, i: usize, m: &[Elem<F>]) -> Result<Elem<F>, AlgebraError> {
        let bar = self
            .sigma_bar
            .as_ref()
            .ok_or_else(|| AlgebraError::Unsupported("ξ needs σ̄ (a projective system)".into()))?;
        let mut out = self.algebra.zero();
        for (j, mj) in m.iter().enumerate() {
            if !mj.is_zero() {
                out = out + &bar.get(i, j).apply(mj);
            }
        }
        Ok(out)
    }

    /// `ω_i · a = Σ_j σ_ij(a) ω_j`, as the row `(σ_i1(a), …, σ_in(a)) π`.
    pub fn relation(&self, i: usize, a: &Elem<F>) -> Result<ModElem<F>, AlgebraError> {
        let row = self.system.sigma.eval(a).row(i);
        self.system.pi.apply_row(&self.algebra, &row)
    }

    pub fn format(&self, m: &[Elem<F>]) -> String {
        let parts: Vec<String> = m.iter().map(|x| self.algebra.format(x)).collect();
        format!("({})", parts.join(", "))
    }

    /// Invariants of the calculus, each on a finite spanning family:
    /// dual basis and `η_j(ω_i) = π_ij`, unitality and associativity of the
    /// right action, the relations `ω_i a = Σ_j σ_ij(a)ω_j = Σ_j σ̃_ij(a)ω_j`,
    /// the Leibniz rule for `d`, and when `σ̄` is present the right dual
    /// basis `ξ` and `a ω_i = Σ_j ω_j σ̄_ji(a)`.
    ///
    /// The right action is left `A`-linear by construction, so
    /// associativity is checked on the generators `ω_i`.
    pub fn invariant_report(&self) -> Report {
        let alg = &self.algebra;
        let n = self.n();
        let d = alg.dim();
        let mut report = Report::new();
        let loc_m = |s: usize| format!("m=#{s}");

        let mut dual = Check::defining("dual basis Σ η_i(m) ω_i = m");
        for (s, m) in self.basis.iter().enumerate() {
            let outcome = self
                .system
                .pi
                .apply_row(alg, m)
                .map(|mp| (mp != *m).then(|| format!("{} != {}", self.format(&mp), self.format(m))));
            dual.record_result(outcome, || loc_m(s));
        }
        for i in 0..n {
            let w = self.omega(i);
            for j in 0..n {
                dual.record(
                    self.eta(j, &w) == *self.system.pi.get(i, j),
                    || format!("η_{}(ω_{})", j + 1, i + 1),
                    || "differs from π".into(),
                );
            }
        }
        report.push(dual);

        let mut unital = Check::defining("right action unital");
        for (s, m) in self.basis.iter().enumerate() {
            let outcome = self
                .right_action(m, alg.unit())
                .map(|r| (r != *m).then(|| format!("m·1 = {}", self.format(&r))));
            unital.record_result(outcome, || loc_m(s));
        }
        report.push(unital);

        let mut assoc = Check::defining("right action associative");
        for i in 0..n {
            let w = self.omega(i);
            let wa: Vec<_> = (0..d).map(|a| self.right_action(&w, &alg.basis(a))).collect();
            for a in 0..d {
                for b in 0..d {
                    let outcome = (|| {
                        let lhs = self.right_action(wa[a].as_ref().map_err(Clone::clone)?, &alg.basis(b))?;
                        let ab = alg.mul(&alg.basis(a), &alg.basis(b))?;
                        let rhs = self.right_action(&w, &ab)?;
                        Ok((lhs != rhs).then(|| format!("{} != {}", self.format(&lhs), self.format(&rhs))))
                    })();
                    assoc.record_result(outcome, || {
                        format!("ω_{}, a={}, b={}", i + 1, alg.label(a), alg.label(b))
                    });
                }
            }
        }
        report.push(assoc);

        let mut rel = Check::defining("ω_i a = Σ σ_ij(a) ω_j = Σ σ̃_ij(a) ω_j");
        for i in 0..n {
            for a in 0..d {
                let outcome = (|| {
                    let e = alg.basis(a);
                    let lhs = self.right_action(&self.omega(i), &e)?;
                    let via_sigma = self.relation(i, &e)?;
                    let via_tilde = self
                        .system
                        .pi
                        .apply_row(alg, &self.system.sigma_tilde.eval(&e).row(i))?;
                    Ok((lhs != via_sigma || lhs != via_tilde).then(|| {
                        format!(
                            "{} vs {} vs {}",
                            self.format(&lhs),
                            self.format(&via_sigma),
                            self.format(&via_tilde)
                        )
                    }))
                })();
                rel.record_result(outcome, || format!("i={}, a={}", i + 1, alg.label(a)));
            }
        }
        report.push(rel);

        let mut leibniz = Check::defining("Leibniz rule d(ab) = d(a)b + a d(b)");
        let ds: Vec<_> = (0..d).map(|a| self.d(&alg.basis(a))).collect();
        for a in 0..d {
            for b in 0..d {
                let outcome = (|| {
                    let ab = alg.mul(&alg.basis(a), &alg.basis(b))?;
                    let lhs = self.d(&ab)?;
                    let da = ds[a].as_ref().map_err(Clone::clone)?;
                    let db = ds[b].as_ref().map_err(Clone::clone)?;
                    let r1 = self.right_action(da, &alg.basis(b))?;
                    let r2 = self.left_action(&alg.basis(a), db)?;
                    let rhs: ModElem<F> = r1.into_iter().zip(r2).map(|(x, y)| x + &y).collect();
                    Ok((lhs != rhs).then(|| format!("{} != {}", self.format(&lhs), self.format(&rhs))))
                })();
                leibniz.record_result(outcome, || format!("a={}, b={}", alg.label(a), alg.label(b)));
            }
        }
        report.push(leibniz);

        if self.sigma_bar.is_some() {
            report.extend(self.right_dual_report());
        }
        report
    }

    fn right_dual_report(&self) -> Report {
        let alg = &self.algebra;
        let n = self.n();
        let d = alg.dim();
        let mut report = Report::new();

        let mut gen = Check::defining("right dual basis Σ ω_i ξ_i(m) = m");
        let mut lin = Check::defining("ξ_i(m a) = ξ_i(m) a");
        for (s, m) in self.basis.iter().enumerate() {
            let outcome = (|| {
                let mut sum = vec![alg.zero(); n];
                for i in 0..n {
                    let part = self.right_action(&self.omega(i), &self.xi(i, m)?)?;
                    for (x, y) in sum.iter_mut().zip(part) {
                        *x = x.clone() + &y;
                    }
                }
                Ok((sum != *m).then(|| format!("{} != {}", self.format(&sum), self.format(m))))
            })();
            gen.record_result(outcome, || format!("m=#{s}"));
            for a in 0..d {
                for i in 0..n {
                    let outcome = (|| {
                        let e = alg.basis(a);
                        let lhs = self.xi(i, &self.right_action(m, &e)?)?;
                        let rhs = alg.mul(&self.xi(i, m)?, &e)?;
                        Ok((lhs != rhs).then(|| format!("{} != {}", alg.format(&lhs), alg.format(&rhs))))
                    })();
                    lin.record_result(outcome, || format!("m=#{s}, a={}, i={}", alg.label(a), i + 1));
                }
            }
        }
        report.push(gen);
        report.push(lin);

        let bar = self.sigma_bar.as_ref().expect("checked by caller");
        let mut left = Check::derived("a ω_i = Σ_j ω_j σ̄_ji(a)");
        for i in 0..n {
            for a in 0..d {
                let outcome = (|| {
                    let e = alg.basis(a);
                    let lhs = self.left_action(&e, &self.omega(i))?;
                    let mut rhs = vec![alg.zero(); n];
                    for j in 0..n {
                        let part = self.right_action(&self.omega(j), &bar.get(j, i).apply(&e))?;
                        for (x, y) in rhs.iter_mut().zip(part) {
                            *x = x.clone() + &y;
                        }
                    }
                    Ok((lhs != rhs).then(|| format!("{} != {}", self.format(&lhs), self.format(&rhs))))
                })();
                left.record_result(outcome, || format!("i={}, a={}", i + 1, alg.label(a)));
            }
        }
        report.push(left);
        report
    }

    /// A right `A`-linear map given by arbitrary values on the `ω_k`,
    /// extended by `f(m) = Σ_k f(ω_k) ξ_k(m)`. Needs `σ̄`.
    pub fn hom_from_values(&self, values: Vec<Elem<F>>) -> Result<HomElement<F>, AlgebraError> {
        if self.sigma_bar.is_none() {
            return Err(AlgebraError::Unsupported("hom elements from values need σ̄".into()));
        }
        if values.len() != self.n() {
            return Err(AlgebraError::SizeMismatch {
                left: values.len(),
                right: self.n(),
            });
        }
        let mut f = HomElement { values, matrix: None };
        if !self.algebra.is_graded() {
            f.matrix = Some(self.tabulate(|m| self.eval(&f, m))?);
        }
        Ok(f)
    }

    /// The `d × dim M` matrix of a map on the module basis.
    fn tabulate(&self, f: impl Fn(&[Elem<F>]) -> Result<Elem<F>, AlgebraError>) -> Result<Matrix<F>, AlgebraError> {
        let cols = self
            .basis
            .iter()
            .map(|m| f(m).map(Elem::into_coords))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(self.algebra.dim(), &cols))
    }

    /// `f(m)`.
    pub fn eval(&self, f: &HomElement<F>, m: &[Elem<F>]) -> Result<Elem<F>, AlgebraError> {
        match &f.matrix {
            Some(x) => {
                let c = self
                    .coordinates(m)
                    .ok_or_else(|| AlgebraError::Malformed(format!("{} is not in the module", self.format(m))))?;
                Ok(Elem::from_coords(x.mul_vec(&c)))
            }
            None => {
                let mut out = self.algebra.zero();
                for (k, v) in f.values.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let x = self.xi(k, m)?;
                    if !x.is_zero() {
                        out = out + &self.algebra.mul(v, &x)?;
                    }
                }
                Ok(out)
            }
        }
    }

    /// `(f a)(m) = f(a m)`.
    pub fn hom_right_action(&self, f: &HomElement<F>, a: &Elem<F>) -> Result<HomElement<F>, AlgebraError> {
        let values = (0..self.n())
            .map(|i| self.eval(f, &self.left_action(a, &self.omega(i))?))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = match &f.matrix {
            Some(_) => Some(self.tabulate(|m| self.eval(f, &self.left_action(a, m)?))?),
            None => None,
        };
        Ok(HomElement { values, matrix })
    }

    /// A 𝕜-basis of `Hom_A(M, A)`: the kernel of the constraints
    /// `f(m_s a_t) − f(m_s) a_t = 0` over the module basis `m_s` and algebra
    /// basis `a_t`, with unknowns the values of `f` on the module basis.
    pub fn hom_basis(&self) -> Result<Vec<HomElement<F>>, AlgebraError> {
        let alg = &self.algebra;
        if alg.is_graded() {
            return Err(AlgebraError::Unsupported("graded algebras use hom_window".into()));
        }
        let d = alg.dim();
        let dm = self.module_dim();
        if dm == 0 {
            return Ok(Vec::new());
        }
        // Unknown X[p][r] (coefficient of e_p in f(m_r)) at column p*dm + r.
        let var = |p: usize, r: usize| p * dm + r;
        let right: Vec<_> = (0..d)
            .map(|t| LinOp::right_mul(alg, &alg.basis(t)))
            .collect::<Result<_, _>>()?;
        let mut rows = Vec::new();
        for s in 0..dm {
            for t in 0..d {
                let image = self.right_action(&self.basis[s], &alg.basis(t))?;
                let c = self
                    .coordinates(&image)
                    .ok_or_else(|| AlgebraError::Malformed("right action leaves the module".into()))?;
                let rt = right[t].matrix();
                for p in 0..d {
                    let mut row = vec![F::zero(); d * dm];
                    for (r, cr) in c.iter().enumerate() {
                        if !cr.is_zero() {
                            row[var(p, r)] += cr;
                        }
                    }
                    for q in 0..d {
                        let x = rt.get(p, q);
                        if !x.is_zero() {
                            row[var(q, s)] -= x;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let system = Matrix::from_rows(rows).expect("rows of equal length");
        let kernel = SubspacePresentation::kernel(&system);
        kernel
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let x = Matrix::from_fn(d, dm, |p, r| v[var(p, r)].clone());
                let mut f = HomElement {
                    values: Vec::new(),
                    matrix: Some(x),
                };
                f.values = (0..self.n())
                    .map(|i| self.eval(&f, &self.omega(i)))
                    .collect::<Result<_, _>>()?;
                Ok(f)
            })
            .collect()
    }

    /// Window generators of `Hom_A(M, A)` for a graded algebra: `f_{i,b}`
    /// with `f(ω_i) = e_b` and `f(ω_j) = 0` otherwise. Needs `σ̄`.
    pub fn hom_window(&self) -> Result<Vec<HomElement<F>>, AlgebraError> {
        let n = self.n();
        let d = self.algebra.dim();
        let mut out = Vec::with_capacity(n * d);
        for i in 0..n {
            for b in 0..d {
                let mut values = vec![self.algebra.zero(); n];
                values[i] = self.algebra.basis(b);
                out.push(self.hom_from_values(values)?);
            }
        }
        Ok(out)
    }

    /// Generators of `Hom_A(M, A)`: [`Calculus::hom_basis`] for
    /// finite-dimensional algebras, [`Calculus::hom_window`] otherwise.
    pub fn hom_generators(&self) -> Result<Vec<HomElement<F>>, AlgebraError> {
        if self.algebra.is_graded() {
            self.hom_window()
        } else {
            self.hom_basis()
        }
    }

    /// Right linearity `f(m a) = f(m) a` on the module basis and algebra
    /// basis.
    pub fn hom_linearity(&self, f: &HomElement<F>, check: &mut Check, label: &str) {
        let alg = &self.algebra;
        for (s, m) in self.basis.iter().enumerate() {
            for a in 0..alg.dim() {
                let outcome = (|| {
                    let e = alg.basis(a);
                    let lhs = self.eval(f, &self.right_action(m, &e)?)?;
                    let rhs = alg.mul(&self.eval(f, m)?, &e)?;
                    Ok((lhs != rhs).then(|| format!("{} != {}", alg.format(&lhs), alg.format(&rhs))))
                })();
                check.record_result(outcome, || format!("{label}, m=#{s}, a={}", alg.label(a)));
            }
        }
    }

    /// Right linearity of each element and closure of the span under
    /// `f ↦ f a` (finite-dimensional algebras).
    pub fn hom_report(&self, homs: &[HomElement<F>]) -> Report {
        let alg = &self.algebra;
        let mut linear = Check::defining("hom elements right A-linear");
        for (k, f) in homs.iter().enumerate() {
            self.hom_linearity(f, &mut linear, &format!("f#{k}"));
        }
        let mut report = Report { checks: vec![linear] };
        if alg.is_graded() {
            return report;
        }
        let mut closed = Check::derived("hom span closed under right action");
        let flat = |f: &HomElement<F>| f.matrix.as_ref().map(|m| m.to_rows().concat());
        let vectors: Vec<Vec<F>> = homs.iter().filter_map(flat).collect();
        let span = SubspacePresentation::span(alg.dim() * self.module_dim(), &vectors);
        for (k, f) in homs.iter().enumerate() {
            for a in 0..alg.dim() {
                let outcome = self.hom_right_action(f, &alg.basis(a)).map(|fa| match flat(&fa) {
                    Some(v) if span.contains(&v) => None,
                    Some(_) => Some("f a leaves the span".to_string()),
                    None => None,
                });
                closed.record_result(outcome, || format!("f#{k}, a={}", alg.label(a)));
            }
        }
        report.push(closed);
        report
    }

    /// `f'(m) = Σ_{i,k} ξ_i(σ̂_ik(f(ω_k)) m)`, returned by its values and,
    /// for finite-dimensional algebras, its matrix.
    pub fn reconstruct(&self, f: &HomElement<F>, sigma_hat: &OpMatrix<F>) -> Result<HomElement<F>, AlgebraError> {
        let n = self.n();
        let coeffs: Vec<Vec<Elem<F>>> = (0..n)
            .map(|i| (0..n).map(|k| sigma_hat.get(i, k).apply(&f.values[k])).collect())
            .collect();
        let apply = |m: &[Elem<F>]| -> Result<Elem<F>, AlgebraError> {
            let mut out = self.algebra.zero();
            for (i, row) in coeffs.iter().enumerate() {
                for c in row {
                    if !c.is_zero() {
                        out = out + &self.xi(i, &self.left_action(c, m)?)?;
                    }
                }
            }
            Ok(out)
        };
        let values = (0..n).map(|j| apply(&self.omega(j))).collect::<Result<Vec<_>, _>>()?;
        let matrix = match self.algebra.is_graded() {
            true => None,
            false => Some(self.tabulate(apply)?),
        };
        Ok(HomElement { values, matrix })
    }

    /// Compares the reconstruction of `f` with `f` on the given module
    /// elements (the module basis when `None`).
    pub fn reconstruction_check(
        &self,
        f: &HomElement<F>,
        sigma_hat: &OpMatrix<F>,
        probes: Option<&[ModElem<F>]>,
        check: &mut Check,
        label: &str,
    ) {
        let alg = &self.algebra;
        let probes = probes.unwrap_or(&self.basis);
        let rebuilt = match self.reconstruct(f, sigma_hat) {
            Ok(g) => g,
            Err(AlgebraError::WindowOverflow { .. }) => {
                check.skipped += probes.len();
                return;
            }
            Err(e) => {
                check.fail(label, e);
                return;
            }
        };
        for (s, m) in probes.iter().enumerate() {
            let outcome = (|| {
                let lhs = self.eval(&rebuilt, m)?;
                let rhs = self.eval(f, m)?;
                Ok((lhs != rhs).then(|| format!("{} != {}", alg.format(&lhs), alg.format(&rhs))))
            })();
            check.record_result(outcome, || format!("{label}, m=#{s}"));
        }
    }
}

/// A right `A`-module map `M → A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement<F> {
    /// `f(ω_1), …, f(ω_n)`.
    pub values: Vec<Elem<F>>,
    /// `d × dim M` matrix on the module basis, for finite-dimensional algebras.
    pub matrix: Option<Matrix<F>>,
}

fn flatten<F: Field>(m: &[Elem<F>]) -> Vec<F> {
    m.iter().flat_map(|x| x.coords().iter().cloned()).collect()
}

fn unflatten<F: Field>(v: &[F], n: usize, d: usize) -> ModElem<F> {
    (0..n)
        .map(|i| Elem::from_coords(v[i * d..(i + 1) * d].to_vec()))
        .collect()
}
