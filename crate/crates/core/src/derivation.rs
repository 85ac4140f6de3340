//! Twisted multi-derivations, (pre-)projective systems and their twists.
//!
//! Every checker quantifies over basis elements (or basis pairs), which is
//! enough by linearity. Violations are returned as [`Report`] data.

use crate::algebra::{AlgMatrix, Algebra, AlgebraError, Elem, LinOp, OpMatrix};
use crate::linear::{Field, Matrix};
use crate::report::{Check, Report};

/// `(∂, σ)`: `n` partials and an `n × n` twist with
/// `∂_i(ab) = Σ_j ∂_j(a) σ_ji(b) + a ∂_i(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDerivation<F> {
    pub partial: Vec<LinOp<F>>,
    pub sigma: OpMatrix<F>,
}

impl<F: Field> MultiDerivation<F> {
    pub fn new(partial: Vec<LinOp<F>>, sigma: OpMatrix<F>) -> Result<Self, AlgebraError> {
        if partial.len() != sigma.n() {
            return Err(AlgebraError::SizeMismatch {
                left: partial.len(),
                right: sigma.n(),
            });
        }
        if let Some(p) = partial.iter().find(|p| p.dim() != sigma.dim()) {
            return Err(AlgebraError::DimensionMismatch {
                expected: sigma.dim(),
                found: p.dim(),
            });
        }
        Ok(MultiDerivation { partial, sigma })
    }

    /// The zero derivation twisted by `σ`.
    pub fn zero(sigma: OpMatrix<F>) -> Self {
        let partial = vec![LinOp::zero(sigma.dim()); sigma.n()];
        MultiDerivation { partial, sigma }
    }

    pub fn n(&self) -> usize {
        self.partial.len()
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    /// `∂(a) = (∂_1(a), …, ∂_n(a))`.
    pub fn apply(&self, a: &Elem<F>) -> Vec<Elem<F>> {
        self.partial.iter().map(|p| p.apply(a)).collect()
    }
}

/// `(π, σ, σ̃)` with `π` idempotent, `σ̃(b)σ(a)π = σ̃(ba)π`, `σ̃(1) = π` and
/// `σ(a)π = πσ̃(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreProjectiveSystem<F> {
    pub pi: AlgMatrix<F>,
    pub sigma: OpMatrix<F>,
    pub sigma_tilde: OpMatrix<F>,
}

impl<F: Field> PreProjectiveSystem<F> {
    pub fn new(pi: AlgMatrix<F>, sigma: OpMatrix<F>, sigma_tilde: Option<OpMatrix<F>>) -> Result<Self, AlgebraError> {
        let sigma_tilde = sigma_tilde.unwrap_or_else(|| sigma.clone());
        for (n, what) in [(pi.n(), "π"), (sigma_tilde.n(), "σ̃")] {
            if n != sigma.n() {
                return Err(AlgebraError::Malformed(format!(
                    "{what} has size {n}, σ has size {}",
                    sigma.n()
                )));
            }
        }
        if sigma_tilde.dim() != sigma.dim() || pi.entries().iter().any(|e| e.dim() != sigma.dim()) {
            return Err(AlgebraError::Malformed(
                "system entries act on different algebras".into(),
            ));
        }
        Ok(PreProjectiveSystem { pi, sigma, sigma_tilde })
    }

    /// `π = 𝕀`, `σ̃ = σ`.
    pub fn free(alg: &Algebra<F>, sigma: OpMatrix<F>) -> Self {
        PreProjectiveSystem {
            pi: AlgMatrix::identity(alg, sigma.n()),
            sigma_tilde: sigma.clone(),
            sigma,
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn is_free(&self, alg: &Algebra<F>) -> bool {
        self.pi.is_identity(alg)
    }
}

/// A pre-projective system with an algebra map `σ̄` such that
/// `σ̄ • σ̃^T = 𝕀` and `σ^T • σ̄ = π` (see [`check_projective`] for the entry
/// order of the second equation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSystem<F> {
    pub base: PreProjectiveSystem<F>,
    pub sigma_bar: OpMatrix<F>,
}

/// `(∂, σ; σ̃, σ̄, σ̂; π)` with `σ̂ • σ̄^T = 𝕀 = σ̄^T • σ̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivelyFreeDerivation<F> {
    pub derivation: MultiDerivation<F>,
    pub system: ProjectiveSystem<F>,
    pub sigma_hat: OpMatrix<F>,
}

impl<F: Field> ProjectivelyFreeDerivation<F> {
    pub fn new(
        derivation: MultiDerivation<F>,
        system: ProjectiveSystem<F>,
        sigma_hat: OpMatrix<F>,
    ) -> Result<Self, AlgebraError> {
        let n = derivation.n();
        for m in [system.sigma_bar.n(), sigma_hat.n(), system.base.n()] {
            if m != n {
                return Err(AlgebraError::SizeMismatch { left: n, right: m });
            }
        }
        Ok(ProjectivelyFreeDerivation {
            derivation,
            system,
            sigma_hat,
        })
    }

    /// The free case `(∂, σ; σ̄, σ̂)` with `π = 𝕀` and `σ̃ = σ`.
    pub fn free(
        alg: &Algebra<F>,
        derivation: MultiDerivation<F>,
        sigma_bar: OpMatrix<F>,
        sigma_hat: OpMatrix<F>,
    ) -> Result<Self, AlgebraError> {
        let base = PreProjectiveSystem::free(alg, derivation.sigma.clone());
        Self::new(derivation, ProjectiveSystem { base, sigma_bar }, sigma_hat)
    }

    pub fn n(&self) -> usize {
        self.derivation.n()
    }

    pub fn pi(&self) -> &AlgMatrix<F> {
        &self.system.base.pi
    }

    pub fn sigma_bar(&self) -> &OpMatrix<F> {
        &self.system.sigma_bar
    }

    pub fn is_free(&self, alg: &Algebra<F>) -> bool {
        self.system.base.is_free(alg)
    }
}

/// Products of all basis pairs, computed once per check.
struct Products<F> {
    dim: usize,
    table: Vec<Result<Elem<F>, AlgebraError>>,
}

impl<F: Field> Products<F> {
    fn new(alg: &Algebra<F>) -> Self {
        let dim = alg.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                table.push(alg.mul(&alg.basis(a), &alg.basis(b)));
            }
        }
        Products { dim, table }
    }

    fn get(&self, a: usize, b: usize) -> Result<&Elem<F>, AlgebraError> {
        self.table[a * self.dim + b].as_ref().map_err(Clone::clone)
    }
}

fn mismatch<F: Field>(alg: &Algebra<F>, lhs: &Elem<F>, rhs: &Elem<F>) -> Option<String> {
    (lhs != rhs).then(|| format!("{} != {}", alg.format(lhs), alg.format(rhs)))
}

fn matrix_mismatch<F: Field>(alg: &Algebra<F>, lhs: &AlgMatrix<F>, rhs: &AlgMatrix<F>) -> Option<String> {
    lhs.first_difference(alg, rhs)
}

fn pair<F: Field>(alg: &Algebra<F>, a: usize, b: usize) -> String {
    format!("a={}, b={}", alg.label(a), alg.label(b))
}

fn evaluations<F: Field>(alg: &Algebra<F>, m: &OpMatrix<F>) -> Vec<AlgMatrix<F>> {
    (0..alg.dim()).map(|a| m.eval(&alg.basis(a))).collect()
}

/// Compares two operator matrices entry by entry; each entry is one
/// checked instance.
fn compare_op_matrices<F: Field>(check: &mut Check, lhs: &OpMatrix<F>, rhs: &OpMatrix<F>) {
    let n = lhs.n();
    for i in 0..n {
        for j in 0..n {
            let (l, r) = (lhs.get(i, j), rhs.get(i, j));
            check.record(
                l == r,
                || format!("entry ({}, {})", i + 1, j + 1),
                || first_column_difference(l, r),
            );
        }
    }
}

fn first_column_difference<F: Field>(l: &LinOp<F>, r: &LinOp<F>) -> String {
    let d = l.dim();
    match (0..d).find(|&c| l.matrix().column(c) != r.matrix().column(c)) {
        Some(c) => format!("operators differ on basis element {c}"),
        None => "operators differ".into(),
    }
}

/// The twisted Leibniz rule on all `(i, a, b)`.
pub fn check_multiderivation<F: Field>(alg: &Algebra<F>, d: &MultiDerivation<F>) -> Report {
    leibniz_report(alg, d, "twisted Leibniz rule", false)
}

fn leibniz_report<F: Field>(alg: &Algebra<F>, d: &MultiDerivation<F>, name: &str, derived: bool) -> Report {
    let mut check = if derived {
        Check::derived(name)
    } else {
        Check::defining(name)
    };
    let dim = alg.dim();
    if d.dim() != dim {
        check.fail(
            "shape",
            AlgebraError::DimensionMismatch {
                expected: dim,
                found: d.dim(),
            },
        );
        return Report { checks: vec![check] };
    }
    let products = Products::new(alg);
    let partials: Vec<Vec<Elem<F>>> = (0..dim).map(|a| d.apply(&alg.basis(a))).collect();
    let sig = evaluations(alg, &d.sigma);
    for i in 0..d.n() {
        for a in 0..dim {
            for b in 0..dim {
                let outcome = (|| {
                    let ab = products.get(a, b)?;
                    let lhs = d.partial[i].apply(ab);
                    let mut rhs = alg.mul(&alg.basis(a), &partials[b][i])?;
                    for (j, pj) in partials[a].iter().enumerate() {
                        let s = sig[b].get(j, i);
                        if !pj.is_zero() && !s.is_zero() {
                            rhs = rhs + &alg.mul(pj, s)?;
                        }
                    }
                    Ok(mismatch(alg, &lhs, &rhs))
                })();
                check.record_result(outcome, || format!("i={}, {}", i + 1, pair(alg, a, b)));
            }
        }
    }
    Report { checks: vec![check] }
}

/// The defining equations of a pre-projective system plus idempotency of `π`.
pub fn check_preprojective<F: Field>(alg: &Algebra<F>, s: &PreProjectiveSystem<F>) -> Report {
    let dim = alg.dim();
    let mut report = Report::new();
    let pi = &s.pi;

    let mut idem = Check::defining("π idempotent");
    let outcome = pi.mul(alg, pi).map(|pp| matrix_mismatch(alg, &pp, pi));
    idem.record_result(outcome, || "π".into());
    report.push(idem);

    let products = Products::new(alg);
    let sig = evaluations(alg, &s.sigma);
    let sigt = evaluations(alg, &s.sigma_tilde);

    let mut tsi = Check::defining("σ̃(b)σ(a)π = σ̃(ba)π");
    for a in 0..dim {
        for b in 0..dim {
            let outcome = (|| {
                let lhs = sigt[b].mul(alg, &sig[a])?.mul(alg, pi)?;
                let ba = products.get(b, a)?;
                let rhs = s.sigma_tilde.eval(ba).mul(alg, pi)?;
                Ok(matrix_mismatch(alg, &lhs, &rhs))
            })();
            tsi.record_result(outcome, || pair(alg, a, b));
        }
    }
    report.push(tsi);

    let mut norm = Check::defining("σ̃(1) = π");
    let one = s.sigma_tilde.eval(alg.unit());
    norm.record(
        one == *pi,
        || "1".into(),
        || matrix_mismatch(alg, &one, pi).unwrap_or_default(),
    );
    report.push(norm);

    let mut inter = Check::defining("σ(a)π = πσ̃(a)");
    for a in 0..dim {
        let outcome = (|| {
            let lhs = sig[a].mul(alg, pi)?;
            let rhs = pi.mul(alg, &sigt[a])?;
            Ok(matrix_mismatch(alg, &lhs, &rhs))
        })();
        inter.record_result(outcome, || format!("a={}", alg.label(a)));
    }
    report.push(inter);
    report
}

/// The seven identities every pre-projective system satisfies. Each is
/// recomputed directly from `(π, σ, σ̃)`; none reuses the defining checks.
pub fn derived_identities<F: Field>(alg: &Algebra<F>, s: &PreProjectiveSystem<F>) -> Report {
    let dim = alg.dim();
    let pi = &s.pi;
    let sig = evaluations(alg, &s.sigma);
    let sigt = evaluations(alg, &s.sigma_tilde);
    let products = Products::new(alg);
    let mut report = Report::new();

    type Single<'a, F> = Box<dyn Fn(usize) -> Result<(AlgMatrix<F>, AlgMatrix<F>), AlgebraError> + 'a>;
    let singles: Vec<(&str, Single<'_, F>)> = vec![
        (
            "πσ(a)π = σ̃(a)π",
            Box::new(|a| Ok((pi.mul(alg, &sig[a])?.mul(alg, pi)?, sigt[a].mul(alg, pi)?))),
        ),
        (
            "πσ̃(a) = σ̃(a)π",
            Box::new(|a| Ok((pi.mul(alg, &sigt[a])?, sigt[a].mul(alg, pi)?))),
        ),
        (
            "πσ̃(a)π = σ̃(a)π",
            Box::new(|a| Ok((pi.mul(alg, &sigt[a])?.mul(alg, pi)?, sigt[a].mul(alg, pi)?))),
        ),
        (
            "σ(a)π = σ̃(a)π",
            Box::new(|a| Ok((sig[a].mul(alg, pi)?, sigt[a].mul(alg, pi)?))),
        ),
        (
            "πσ(a)π = σ(a)π",
            Box::new(|a| Ok((pi.mul(alg, &sig[a])?.mul(alg, pi)?, sig[a].mul(alg, pi)?))),
        ),
    ];
    for (name, f) in singles {
        let mut check = Check::derived(name);
        for a in 0..dim {
            let outcome = f(a).map(|(l, r)| matrix_mismatch(alg, &l, &r));
            check.record_result(outcome, || format!("a={}", alg.label(a)));
        }
        report.push(check);
    }

    let mut tsi_alg = Check::derived("σ̃(b)σ̃(a)π = σ̃(ba)π = σ̃(b)πσ̃(a)");
    let mut sig_alg = Check::derived("σ(b)σ(a)π = σ(ba)π, σ(1)π = π");
    for a in 0..dim {
        for b in 0..dim {
            let outcome = (|| {
                let ba = products.get(b, a)?;
                let first = sigt[b].mul(alg, &sigt[a])?.mul(alg, pi)?;
                let middle = s.sigma_tilde.eval(ba).mul(alg, pi)?;
                let last = sigt[b].mul(alg, pi)?.mul(alg, &sigt[a])?;
                Ok(matrix_mismatch(alg, &first, &middle).or_else(|| matrix_mismatch(alg, &middle, &last)))
            })();
            tsi_alg.record_result(outcome, || pair(alg, a, b));
            let outcome = (|| {
                let ba = products.get(b, a)?;
                let lhs = sig[b].mul(alg, &sig[a])?.mul(alg, pi)?;
                let rhs = s.sigma.eval(ba).mul(alg, pi)?;
                Ok(matrix_mismatch(alg, &lhs, &rhs))
            })();
            sig_alg.record_result(outcome, || pair(alg, a, b));
        }
    }
    let outcome = s
        .sigma
        .eval(alg.unit())
        .mul(alg, pi)
        .map(|l| matrix_mismatch(alg, &l, pi));
    sig_alg.record_result(outcome, || "a=1".into());
    report.push(tsi_alg);
    report.push(sig_alg);
    report
}

/// `m(ab) = m(a)m(b)` on basis pairs and `m(1) = 𝕀`.
pub fn algebra_map_check<F: Field>(alg: &Algebra<F>, m: &OpMatrix<F>, name: &str) -> Check {
    multiplicativity(alg, m, name, false)
}

fn multiplicativity<F: Field>(alg: &Algebra<F>, m: &OpMatrix<F>, name: &str, derived: bool) -> Check {
    let mut check = if derived {
        Check::derived(name)
    } else {
        Check::defining(name)
    };
    let dim = alg.dim();
    let products = Products::new(alg);
    let vals = evaluations(alg, m);
    for a in 0..dim {
        for b in 0..dim {
            let outcome = (|| {
                let lhs = m.eval(products.get(a, b)?);
                let rhs = vals[a].mul(alg, &vals[b])?;
                Ok(matrix_mismatch(alg, &lhs, &rhs))
            })();
            check.record_result(outcome, || pair(alg, a, b));
        }
    }
    let one = m.eval(alg.unit());
    let id = AlgMatrix::identity(alg, m.n());
    check.record(
        one == id,
        || "a=1".into(),
        || matrix_mismatch(alg, &one, &id).unwrap_or_default(),
    );
    check
}

/// `σ̄` multiplicative and unital, `σ̄ • σ̃^T = 𝕀`, and `σ^T • σ̄ = π`.
///
/// With `•` composing the right factor first, the second equation in the
/// form `aπ_ij = Σ_k σ_kj(σ̄_ki(a))` is entry `(j, i)` of `σ^T • σ̄`, so it
/// is checked against the entry transpose of `π` embedded by right
/// multiplication.
pub fn check_projective<F: Field>(alg: &Algebra<F>, s: &ProjectiveSystem<F>) -> Report {
    let mut report = Report::new();
    let base = &s.base;
    let n = base.n();
    report.push(multiplicativity(alg, &s.sigma_bar, "σ̄ algebra map", false));

    let mut left = Check::defining("σ̄ • σ̃^T = 𝕀");
    match s.sigma_bar.bullet(&base.sigma_tilde.transpose()) {
        Ok(m) => compare_op_matrices(&mut left, &m, &OpMatrix::identity(n, alg.dim())),
        Err(e) => left.fail("shape", e),
    }
    report.push(left);

    let mut right = Check::defining("σ^T • σ̄ = π");
    let rhs = OpMatrix::embed(alg, &base.pi.transpose());
    match (base.sigma.transpose().bullet(&s.sigma_bar), rhs) {
        (Ok(m), Ok(p)) => compare_op_matrices(&mut right, &m, &p),
        (Err(e), _) | (_, Err(e)) => right.fail("shape", e),
    }
    report.push(right);
    report
}

/// The equations for `σ̂`, the free-case constraint `σ̃ = σ`, and the
/// derived fact that `σ̂` is an algebra map.
pub fn check_projectively_free<F: Field>(alg: &Algebra<F>, p: &ProjectivelyFreeDerivation<F>) -> Report {
    let mut report = Report::new();
    let n = p.n();
    let dim = alg.dim();
    let bar_t = p.sigma_bar().transpose();

    let mut shared = Check::defining("σ of derivation and system agree");
    shared.record(
        p.derivation.sigma == p.system.base.sigma,
        || "σ".into(),
        || "the derivation and the system carry different σ".into(),
    );
    report.push(shared);

    let mut hb = Check::defining("σ̂ • σ̄^T = 𝕀");
    match p.sigma_hat.bullet(&bar_t) {
        Ok(m) => compare_op_matrices(&mut hb, &m, &OpMatrix::identity(n, dim)),
        Err(e) => hb.fail("shape", e),
    }
    report.push(hb);

    let mut bh = Check::defining("σ̄^T • σ̂ = 𝕀");
    match bar_t.bullet(&p.sigma_hat) {
        Ok(m) => compare_op_matrices(&mut bh, &m, &OpMatrix::identity(n, dim)),
        Err(e) => bh.fail("shape", e),
    }
    report.push(bh);

    if p.is_free(alg) {
        let mut free = Check::defining("free: σ̃ = σ");
        compare_op_matrices(&mut free, &p.system.base.sigma_tilde, &p.system.base.sigma);
        report.push(free);
    }

    report.push(multiplicativity(alg, &p.sigma_hat, "σ̂ algebra map", true));
    report
}

/// `(∂^π, σ̃)` with `∂^π_i(a) = Σ_j ∂_j(a) π_ji`.
pub fn pi_twist<F: Field>(
    alg: &Algebra<F>,
    d: &MultiDerivation<F>,
    s: &PreProjectiveSystem<F>,
) -> Result<MultiDerivation<F>, AlgebraError> {
    let n = d.n();
    if s.n() != n {
        return Err(AlgebraError::SizeMismatch { left: n, right: s.n() });
    }
    if s.is_free(alg) {
        return MultiDerivation::new(d.partial.clone(), s.sigma_tilde.clone());
    }
    let partial = (0..n)
        .map(|i| {
            LinOp::try_from_basis_fn(alg.dim(), |a| {
                let da = d.apply(&alg.basis(a));
                let mut out = alg.zero();
                for (j, dj) in da.iter().enumerate() {
                    out = out + &alg.mul(dj, s.pi.get(j, i))?;
                }
                Ok(out)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    MultiDerivation::new(partial, s.sigma_tilde.clone())
}

/// `(∂^σ, σ̂)` with `∂^σ_i = Σ_{j,k} σ̄_kj ∘ ∂^π_j ∘ σ̂_ki`.
pub fn sigma_twist<F: Field>(
    alg: &Algebra<F>,
    p: &ProjectivelyFreeDerivation<F>,
) -> Result<MultiDerivation<F>, AlgebraError> {
    let dpi = pi_twist(alg, &p.derivation, &p.system.base)?;
    let n = p.n();
    let bar = p.sigma_bar();
    let partial = (0..n)
        .map(|i| {
            let mut acc = LinOp::zero(alg.dim());
            for k in 0..n {
                let hat = p.sigma_hat.get(k, i);
                if hat.is_zero() {
                    continue;
                }
                for (j, dj) in dpi.partial.iter().enumerate() {
                    let b = bar.get(k, j);
                    if !b.is_zero() && !dj.is_zero() {
                        acc = acc.add(&b.compose(&dj.compose(hat)));
                    }
                }
            }
            acc
        })
        .collect();
    MultiDerivation::new(partial, p.sigma_hat.clone())
}

/// Every applicable check for a projectively free derivation: the defining
/// axioms, the seven derived identities, and the twisted Leibniz rule for
/// both twists (consequences of the axioms).
pub fn full_report<F: Field>(alg: &Algebra<F>, p: &ProjectivelyFreeDerivation<F>) -> Report {
    let mut report = check_multiderivation(alg, &p.derivation);
    report.extend(check_preprojective(alg, &p.system.base));
    report.extend(derived_identities(alg, &p.system.base));
    report.extend(check_projective(alg, &p.system));
    report.extend(check_projectively_free(alg, p));
    report.extend(twist_report(alg, p));
    report
}

/// The twisted Leibniz rule for `(∂^π, σ̃)` and `(∂^σ, σ̂)`, as derived checks.
pub fn twist_report<F: Field>(alg: &Algebra<F>, p: &ProjectivelyFreeDerivation<F>) -> Report {
    let mut report = Report::new();
    match pi_twist(alg, &p.derivation, &p.system.base) {
        Ok(d) => report.extend(leibniz_report(alg, &d, "twisted Leibniz rule for (∂^π, σ̃)", true)),
        Err(e) => {
            let mut c = Check::derived("twisted Leibniz rule for (∂^π, σ̃)");
            c.fail("construction", e);
            report.push(c);
        }
    }
    match sigma_twist(alg, p) {
        Ok(d) => report.extend(leibniz_report(alg, &d, "twisted Leibniz rule for (∂^σ, σ̂)", true)),
        Err(e) => {
            let mut c = Check::derived("twisted Leibniz rule for (∂^σ, σ̂)");
            c.fail("construction", e);
            report.push(c);
        }
    }
    report
}

/// Checks for a derivation over a system that is only pre-projective.
pub fn preprojective_report<F: Field>(alg: &Algebra<F>, d: &MultiDerivation<F>, s: &PreProjectiveSystem<F>) -> Report {
    let mut report = check_multiderivation(alg, d);
    report.extend(check_preprojective(alg, s));
    report.extend(derived_identities(alg, s));
    match pi_twist(alg, d, s) {
        Ok(dp) => report.extend(leibniz_report(alg, &dp, "twisted Leibniz rule for (∂^π, σ̃)", true)),
        Err(e) => {
            let mut c = Check::derived("twisted Leibniz rule for (∂^π, σ̃)");
            c.fail("construction", e);
            report.push(c);
        }
    }
    report
}

/// Outcome of [`sigma_bar_solvability`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solvability {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub solvable: bool,
}

/// Largest number of unknowns [`sigma_bar_solvability`] accepts.
pub const SOLVABILITY_LIMIT: usize = 2500;

/// Whether the linear equations `σ̄ • σ̃^T = 𝕀` and `σ^T • σ̄ = π` admit any
/// solution in the `n²d²` matrix entries of `σ̄`. Multiplicativity is not
/// imposed.
pub fn sigma_bar_solvability<F: Field>(
    alg: &Algebra<F>,
    s: &PreProjectiveSystem<F>,
) -> Result<Solvability, AlgebraError> {
    if alg.is_graded() {
        return Err(AlgebraError::Unsupported(
            "solvability diagnostic needs a finite-dimensional algebra".into(),
        ));
    }
    let n = s.n();
    let d = alg.dim();
    let unknowns = n * n * d * d;
    if unknowns > SOLVABILITY_LIMIT {
        return Err(AlgebraError::Unsupported(format!(
            "{unknowns} unknowns exceed the diagnostic limit of {SOLVABILITY_LIMIT}"
        )));
    }
    // Unknown X_kl[r][c] sits at column ((k*n + l)*d + r)*d + c.
    let var = |k: usize, l: usize, r: usize, c: usize| ((k * n + l) * d + r) * d + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    // (σ̄ • σ̃^T)_ij = Σ_l X_il ∘ σ̃_jl = δ_ij id.
    for i in 0..n {
        for j in 0..n {
            for r in 0..d {
                for c2 in 0..d {
                    let mut row = vec![F::zero(); unknowns];
                    for l in 0..n {
                        let t = s.sigma_tilde.get(j, l).matrix();
                        for c in 0..d {
                            let x = t.get(c, c2);
                            if !x.is_zero() {
                                row[var(i, l, r, c)] += x;
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(if i == j && r == c2 { F::one() } else { F::zero() });
                }
            }
        }
    }
    // (σ^T • σ̄)_ij = Σ_k σ_ki ∘ X_kj = right multiplication by π_ji.
    for i in 0..n {
        for j in 0..n {
            let target = LinOp::right_mul(alg, s.pi.get(j, i))?;
            for r in 0..d {
                for c in 0..d {
                    let mut row = vec![F::zero(); unknowns];
                    for k in 0..n {
                        let sm = s.sigma.get(k, i).matrix();
                        for m in 0..d {
                            let x = sm.get(r, m);
                            if !x.is_zero() {
                                row[var(k, j, m, c)] += x;
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(target.matrix().get(r, c).clone());
                }
            }
        }
    }
    let equations = rows.len();
    let system = Matrix::from_rows(rows).unwrap_or_else(|| Matrix::zeros(0, unknowns));
    let rank = system.rank();
    let solvable = equations == 0 || system.solve(&rhs).is_some();
    Ok(Solvability {
        unknowns,
        equations,
        rank,
        solvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{polynomial_quotient, FiniteGroup};
    use crate::linear::Q;

    fn z2() -> (Algebra<Q>, LinOp<Q>) {
        let g = FiniteGroup::cyclic(2);
        (g.function_algebra::<Q>().algebra().clone(), g.right_translation(1))
    }

    #[test]
    fn zero_derivation_is_valid() {
        let (a, r) = z2();
        let d = MultiDerivation::zero(OpMatrix::diagonal(2, &[r]));
        assert!(check_multiderivation(&a, &d).is_clean());
    }

    #[test]
    fn translation_derivation_needs_its_twist() {
        let (a, r) = z2();
        let partial = vec![r.sub(&LinOp::identity(2))];
        let good = MultiDerivation::new(partial.clone(), OpMatrix::diagonal(2, &[r])).unwrap();
        assert!(check_multiderivation(&a, &good).is_clean());
        let bad = MultiDerivation::new(partial, OpMatrix::identity(1, 2)).unwrap();
        let report = check_multiderivation(&a, &bad);
        let check = &report.checks[0];
        assert!(check.violations > 0);
        assert!(check.samples.iter().any(|v| v.location == "i=1, a=e, b=g"));
    }

    #[test]
    fn free_algebra_map_is_preprojective() {
        let (a, r) = z2();
        let s = PreProjectiveSystem::free(&a, OpMatrix::diagonal(2, &[r]));
        assert!(check_preprojective(&a, &s).is_clean());
        assert!(derived_identities(&a, &s).is_clean());
        assert_eq!(derived_identities(&a, &s).checks.len(), 7);
    }

    fn toy() -> (Algebra<Q>, PreProjectiveSystem<Q>) {
        let a = polynomial_quotient::<Q>(&[Q::from(0), Q::from(-1)]).unwrap();
        let pi = AlgMatrix::diagonal(&a, &[a.basis(1), a.zero()]);
        let sigma = OpMatrix::embed(&a, &pi).unwrap();
        let s = PreProjectiveSystem::new(pi, sigma, None).unwrap();
        (a, s)
    }

    #[test]
    fn commutative_right_multiplication_system() {
        let (a, s) = toy();
        assert!(check_preprojective(&a, &s).is_clean());
        assert!(derived_identities(&a, &s).is_clean());
    }

    #[test]
    fn wrong_normalisation_reported() {
        let (a, mut s) = toy();
        *s.sigma_tilde.get_mut(1, 1) = LinOp::identity(2);
        let r = check_preprojective(&a, &s);
        assert!(!r.check("σ̃(1) = π").unwrap().is_clean());
    }

    #[test]
    fn pi_twist_is_identity_when_free() {
        let (a, r) = z2();
        let d = MultiDerivation::new(vec![r.sub(&LinOp::identity(2))], OpMatrix::diagonal(2, &[r])).unwrap();
        let s = PreProjectiveSystem::free(&a, d.sigma.clone());
        assert_eq!(pi_twist(&a, &d, &s).unwrap(), d);
    }

    #[test]
    fn z2_twists() {
        let (a, r) = z2();
        let d = MultiDerivation::new(
            vec![r.sub(&LinOp::identity(2))],
            OpMatrix::diagonal(2, std::slice::from_ref(&r)),
        )
        .unwrap();
        let bar = OpMatrix::diagonal(2, std::slice::from_ref(&r));
        let p = ProjectivelyFreeDerivation::free(&a, d.clone(), bar.clone(), bar).unwrap();
        let report = full_report(&a, &p);
        assert!(report.is_clean(), "{report}");
        assert_eq!(sigma_twist(&a, &p).unwrap().partial, d.partial);
    }

    #[test]
    fn zero_derivation_twists_to_zero() {
        let (a, r) = z2();
        let d = MultiDerivation::zero(OpMatrix::diagonal(2, std::slice::from_ref(&r)));
        let bar = OpMatrix::diagonal(2, &[r]);
        let p = ProjectivelyFreeDerivation::free(&a, d, bar.clone(), bar).unwrap();
        assert!(sigma_twist(&a, &p).unwrap().partial.iter().all(LinOp::is_zero));
    }

    #[test]
    fn solvability_of_sigma_bar() {
        let (a, r) = z2();
        let s = PreProjectiveSystem::free(&a, OpMatrix::diagonal(2, &[r]));
        let sol = sigma_bar_solvability(&a, &s).unwrap();
        assert!(sol.solvable);
        assert_eq!(sol.unknowns, 4);
        // σ = 0 admits no σ̄ with σ̄ • σ^T = 𝕀.
        let zero = PreProjectiveSystem::free(&a, OpMatrix::zero(1, 2));
        assert!(!sigma_bar_solvability(&a, &zero).unwrap().solvable);
    }

    #[test]
    fn size_mismatch_rejected() {
        let (_, r) = z2();
        assert!(MultiDerivation::new(vec![], OpMatrix::diagonal(2, &[r])).is_err());
    }
}
