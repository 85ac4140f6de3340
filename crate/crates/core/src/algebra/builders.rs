use super::hopf::HopfData;
use super::{Algebra, AlgebraError, Elem, LinOp};
use crate::linear::{Field, Matrix};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::NotAGroup("empty table".into()));
        }
        if labels.len() != n {
            return Err(AlgebraError::NotAGroup(format!(
                "{} labels for {n} elements",
                labels.len()
            )));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(AlgebraError::NotAGroup("table is not a closed square".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::NotAGroup(format!(
                            "({} {}) {} differs from {} ({} {})",
                            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| AlgebraError::NotAGroup("no identity".into()))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| AlgebraError::NotAGroup(format!("{} has no inverse", labels[x])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverses,
        })
    }

    /// Table-only constructor with generated labels `x0, x1, …`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let labels = (0..table.len()).map(|i| format!("x{i}")).collect();
        Self::new(labels, table)
    }

    /// The cyclic group `Z_n` with elements labelled `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(labels, table).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `(R_g a)(y) = a(y g)`, i.e. `e_x ↦ e_{x g⁻¹}` on indicator functions.
    pub fn right_translation<F: Field>(&self, g: usize) -> LinOp<F> {
        let n = self.order();
        let gi = self.inverse(g);
        LinOp::from_basis_fn(n, |x| Elem::basis(n, self.mul(x, gi)))
    }

    /// Functions on the group with pointwise product (basis: indicator
    /// functions), together with `Δ(e_x) = Σ_{yz=x} e_y⊗e_z`, `ε = ev_e` and
    /// `S(e_x) = e_{x⁻¹}`.
    pub fn function_algebra<F: Field>(&self) -> HopfData<F> {
        let n = self.order();
        let constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| if i == j && j == k { F::one() } else { F::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let algebra = Algebra::from_structure_constants(self.labels.clone(), constants, vec![F::one(); n])
            .expect("function algebra is associative and unital");
        let coproduct = Matrix::from_fn(n * n, n, |row, x| {
            let (y, z) = (row / n, row % n);
            if self.mul(y, z) == x {
                F::one()
            } else {
                F::zero()
            }
        });
        let counit = (0..n)
            .map(|x| if x == self.identity { F::one() } else { F::zero() })
            .collect();
        let antipode = LinOp::from_basis_fn(n, |x| Elem::basis(n, self.inverse(x)));
        HopfData::new(algebra, coproduct, counit, antipode).expect("group antipode is bijective")
    }
}

/// `F[t]/(f)` for the monic polynomial `f = t^d + c_{d-1} t^{d-1} + … + c_0`,
/// given the lower coefficients `[c_0, …, c_{d-1}]`. Basis `1, t, …, t^{d-1}`.
pub fn polynomial_quotient<F: Field>(lower: &[F]) -> Result<Algebra<F>, AlgebraError> {
    let d = lower.len();
    if d == 0 {
        return Err(AlgebraError::Malformed("modulus must have positive degree".into()));
    }
    // powers[k] = t^k reduced, for k < 2d - 1.
    let mut powers: Vec<Vec<F>> = (0..d)
        .map(|k| {
            let mut v = vec![F::zero(); d];
            v[k] = F::one();
            v
        })
        .collect();
    for k in d..(2 * d - 1) {
        let prev = &powers[k - 1];
        // t * prev: shift up, fold the t^d term back.
        let top = prev[d - 1].clone();
        let mut next = vec![F::zero(); d];
        for i in (1..d).rev() {
            next[i] = prev[i - 1].clone();
        }
        for (i, c) in lower.iter().enumerate() {
            next[i] -= &top.mul_ref(c);
        }
        powers.push(next);
    }
    let labels = (0..d)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        })
        .collect();
    let constants = (0..d)
        .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut unit = vec![F::zero(); d];
    unit[0] = F::one();
    Algebra::from_structure_constants(labels, constants, unit)
}

/// The full matrix algebra `M_k(F)` on matrix units `E_ij`.
pub fn matrix_units<F: Field>(k: usize) -> Algebra<F> {
    let d = k * k;
    let labels = (0..d).map(|x| format!("E{}{}", x / k + 1, x % k + 1)).collect();
    let constants = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let (i, j) = (a / k, a % k);
                    let (l, m) = (b / k, b % k);
                    let mut v = vec![F::zero(); d];
                    if j == l {
                        v[i * k + m] = F::one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    let unit = (0..d)
        .map(|x| if x / k == x % k { F::one() } else { F::zero() })
        .collect();
    Algebra::from_structure_constants(labels, constants, unit).expect("matrix units form an algebra")
}

/// Index of `z^k θ^odd` in [`laurent_grassmann`] with window `w`.
pub fn laurent_index(w: i64, k: i64, odd: bool) -> usize {
    (2 * (k + w) + i64::from(odd)) as usize
}

/// Laurent polynomials in `z` with a Grassmann generator `θ` (`θ² = 0`,
/// `θ` commuting with `z`), truncated to `|k| ≤ window`. Basis `z^k` and
/// `z^kθ`, degree `k`, ordered by `k` and then parity.
pub fn laurent_grassmann<F: Field>(window: i64) -> Result<Algebra<F>, AlgebraError> {
    if window < 1 {
        return Err(AlgebraError::Malformed("window must be at least 1".into()));
    }
    let w = window;
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for k in -w..=w {
        labels.push(format!("z^{k}"));
        labels.push(format!("z^{k}θ"));
        degrees.push(k);
        degrees.push(k);
    }
    let split = |i: usize| (i as i64 / 2 - w, i % 2 == 1);
    let rule = |i: usize, j: usize| {
        let (ka, oa) = split(i);
        let (kb, ob) = split(j);
        if oa && ob {
            return Some(Vec::new());
        }
        let k = ka + kb;
        (k.abs() <= w).then(|| vec![(laurent_index(w, k, oa || ob), F::one())])
    };
    let unit = Elem::basis(labels.len(), laurent_index(w, 0, false));
    Algebra::graded("laurent_grassmann", labels, degrees, w, rule, unit)
}

/// `B ⊕ Bθ` for a commutative finite-dimensional `B`, with `θ² = 0` and `θ`
/// central.
#[derive(Clone, Debug)]
pub struct GrassmannExtension<F> {
    pub algebra: Algebra<F>,
    /// `b + b'θ ↦ b − b'θ`.
    pub parity: LinOp<F>,
    /// `b + b'θ ↦ b'`.
    pub odd_part: LinOp<F>,
    pub base_dim: usize,
}

pub fn grassmann_extension<F: Field>(base: &Algebra<F>) -> Result<GrassmannExtension<F>, AlgebraError> {
    if base.is_graded() {
        return Err(AlgebraError::Unsupported(
            "Grassmann extension needs a finite-dimensional base".into(),
        ));
    }
    if !base.is_commutative() {
        return Err(AlgebraError::Unsupported(
            "Grassmann extension needs a commutative base".into(),
        ));
    }
    let d = base.dim();
    let constants = base.structure_constants().expect("finite-dimensional");
    let mut labels: Vec<String> = base.labels().to_vec();
    labels.extend(base.labels().iter().map(|l| format!("{l}θ")));
    let mut ext = vec![vec![vec![F::zero(); 2 * d]; 2 * d]; 2 * d];
    for i in 0..2 * d {
        for j in 0..2 * d {
            let (bi, oi) = (i % d, i >= d);
            let (bj, oj) = (j % d, j >= d);
            if oi && oj {
                continue;
            }
            let shift = if oi || oj { d } else { 0 };
            for k in 0..d {
                ext[i][j][k + shift] = constants[bi][bj][k].clone();
            }
        }
    }
    let mut unit = base.unit().coords().to_vec();
    unit.extend(vec![F::zero(); d]);
    let algebra = Algebra::from_structure_constants(labels, ext, unit)?;
    let parity = LinOp::from_basis_fn(2 * d, |i| {
        let e = Elem::basis(2 * d, i);
        if i >= d {
            -e
        } else {
            e
        }
    });
    let odd_part = LinOp::from_basis_fn(2 * d, |i| {
        if i >= d {
            Elem::basis(2 * d, i - d)
        } else {
            Elem::zero(2 * d)
        }
    });
    Ok(GrassmannExtension {
        algebra,
        parity,
        odd_part,
        base_dim: d,
    })
}
