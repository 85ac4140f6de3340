//! JSON instance specifications. Scalars are strings so that exact values
//! survive the round trip.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    laurent_grassmann, AlgMatrix, Algebra, AlgebraError, Elem, FiniteGroup, LinOp, OpMatrix, Presentation,
};
use crate::derivation::{MultiDerivation, PreProjectiveSystem};
use crate::gallery::Instance;
use crate::linear::{Field, Matrix};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad scalar {value:?} at {path}: {message}")]
    Scalar {
        path: String,
        value: String,
        message: String,
    },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A complete instance: algebra, system and options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: AlgebraSpec,
    pub system: SystemSpec,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Inline(InlineAlgebra),
    Group(GroupAlgebra),
    Builtin(BuiltinAlgebra),
}

/// Structure constants: `mul[i][j]` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineAlgebra {
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mul: Vec<Vec<Vec<String>>>,
}

/// Functions on a finite group with the given multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupAlgebra {
    pub group_table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinAlgebra {
    pub builtin: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
}

/// Operator matrices are `d × d` with the image of `e_c` in column `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub n: usize,
    pub partial: Vec<Vec<Vec<String>>>,
    pub sigma: Vec<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_tilde: Option<Vec<Vec<Vec<Vec<String>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_bar: Option<Vec<Vec<Vec<Vec<String>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_hat: Option<Vec<Vec<Vec<Vec<String>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    /// Claimed integral, by its values on the basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    /// Functional the computed integral is compared with up to a scalar.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<String>>,
}

impl InstanceSpec {
    pub fn parse(json: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs always serialize")
    }

    /// Validates and builds the instance. `window` overrides the window of a
    /// builtin algebra.
    pub fn to_instance<F: Field>(&self, window: Option<i64>) -> Result<Instance<F>, SpecError> {
        let algebra = self.algebra.build::<F>(window.or(self.options.window))?;
        let d = algebra.dim();
        let s = &self.system;
        let n = s.n;
        if s.partial.len() != n {
            return Err(SpecError::Shape(format!(
                "system.partial has {} entries, n = {n}",
                s.partial.len()
            )));
        }
        let partial = s
            .partial
            .iter()
            .enumerate()
            .map(|(i, m)| linop(m, d, &format!("system.partial[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let sigma = op_matrix(&s.sigma, n, d, "system.sigma")?;
        let tilde = s
            .sigma_tilde
            .as_ref()
            .map(|m| op_matrix(m, n, d, "system.sigma_tilde"))
            .transpose()?;
        let sigma_bar = s
            .sigma_bar
            .as_ref()
            .map(|m| op_matrix(m, n, d, "system.sigma_bar"))
            .transpose()?;
        let sigma_hat = s
            .sigma_hat
            .as_ref()
            .map(|m| op_matrix(m, n, d, "system.sigma_hat"))
            .transpose()?;
        let pi = match &s.pi {
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(SpecError::Shape(format!("system.pi must be {n}x{n}")));
                }
                let mut entries = Vec::with_capacity(n * n);
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        entries.push(element::<F>(v, d, &format!("system.pi[{i}][{j}]"))?);
                    }
                }
                AlgMatrix::from_fn(n, |i, j| entries[i * n + j].clone())
            }
            None => AlgMatrix::identity(&algebra, n),
        };
        let derivation = MultiDerivation::new(partial, sigma.clone())?;
        let system = PreProjectiveSystem::new(pi, sigma, tilde)?;
        let functional = |v: &Option<Vec<String>>, path: &str| v.as_ref().map(|v| scalars::<F>(v, d, path)).transpose();
        Ok(Instance {
            name: self.name.clone().unwrap_or_else(|| "instance".into()),
            claimed_lambda: functional(&self.options.lambda, "options.lambda")?,
            reference: functional(&self.options.reference, "options.reference")?,
            algebra,
            derivation,
            system,
            sigma_bar,
            sigma_hat,
        })
    }

    /// The specification of an instance. Graded algebras are written as
    /// their builtin name and window.
    pub fn from_instance<F: Field>(inst: &Instance<F>) -> Self {
        let alg = &inst.algebra;
        let algebra = match alg.presentation() {
            Presentation::Graded { window, builtin, .. } => AlgebraSpec::Builtin(BuiltinAlgebra {
                builtin: builtin.clone(),
                window: Some(*window),
            }),
            Presentation::FiniteDim => {
                let constants = alg.structure_constants().expect("finite-dimensional");
                AlgebraSpec::Inline(InlineAlgebra {
                    dim: alg.dim(),
                    basis: alg.labels().to_vec(),
                    unit: strings(alg.unit().coords()),
                    mul: constants
                        .iter()
                        .map(|row| row.iter().map(|v| strings(v)).collect())
                        .collect(),
                })
            }
        };
        let s = &inst.system;
        let free = s.is_free(alg);
        let system = SystemSpec {
            n: inst.derivation.n(),
            partial: inst.derivation.partial.iter().map(linop_strings).collect(),
            sigma: op_strings(&s.sigma),
            sigma_tilde: (s.sigma_tilde != s.sigma).then(|| op_strings(&s.sigma_tilde)),
            sigma_bar: inst.sigma_bar.as_ref().map(op_strings),
            sigma_hat: inst.sigma_hat.as_ref().map(op_strings),
            pi: (!free).then(|| {
                (0..s.pi.n())
                    .map(|i| (0..s.pi.n()).map(|j| strings(s.pi.get(i, j).coords())).collect())
                    .collect()
            }),
        };
        InstanceSpec {
            name: Some(inst.name.clone()),
            algebra,
            system,
            options: OptionsSpec {
                window: alg.window(),
                lambda: inst.claimed_lambda.as_deref().map(strings),
                reference: inst.reference.as_deref().map(strings),
            },
        }
    }
}

impl AlgebraSpec {
    pub fn build<F: Field>(&self, window: Option<i64>) -> Result<Algebra<F>, SpecError> {
        match self {
            AlgebraSpec::Inline(a) => {
                if a.basis.len() != a.dim {
                    return Err(SpecError::Shape(format!(
                        "algebra.basis has {} labels, dim = {}",
                        a.basis.len(),
                        a.dim
                    )));
                }
                if a.mul.len() != a.dim || a.mul.iter().any(|r| r.len() != a.dim) {
                    return Err(SpecError::Shape(format!("algebra.mul must be {0}x{0}", a.dim)));
                }
                let unit = scalars::<F>(&a.unit, a.dim, "algebra.unit")?;
                let mut constants = Vec::with_capacity(a.dim);
                for (i, row) in a.mul.iter().enumerate() {
                    let mut out = Vec::with_capacity(a.dim);
                    for (j, v) in row.iter().enumerate() {
                        out.push(scalars::<F>(v, a.dim, &format!("algebra.mul[{i}][{j}]"))?);
                    }
                    constants.push(out);
                }
                Ok(Algebra::from_structure_constants_unchecked(
                    a.basis.clone(),
                    constants,
                    unit,
                )?)
            }
            AlgebraSpec::Group(g) => {
                let group = match &g.labels {
                    Some(labels) => FiniteGroup::new(labels.clone(), g.group_table.clone())?,
                    None => FiniteGroup::from_table(g.group_table.clone())?,
                };
                Ok(group.function_algebra::<F>().algebra().clone())
            }
            AlgebraSpec::Builtin(b) => {
                let w = window
                    .or(b.window)
                    .ok_or_else(|| SpecError::Shape(format!("builtin algebra {:?} needs a window", b.builtin)))?;
                match b.builtin.as_str() {
                    "laurent_grassmann" | "supercircle" => Ok(laurent_grassmann::<F>(w)?),
                    other => Err(SpecError::Shape(format!("unknown builtin algebra {other:?}"))),
                }
            }
        }
    }
}

/// Parses a functional given either as an array of scalars or as an object
/// from basis labels to scalars (missing labels are zero).
pub fn parse_functional<F: Field>(json: &str, alg: &Algebra<F>) -> Result<Vec<F>, SpecError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Functional {
        List(Vec<String>),
        Map(BTreeMap<String, String>),
    }
    match serde_json::from_str::<Functional>(json)? {
        Functional::List(v) => scalars(&v, alg.dim(), "lambda"),
        Functional::Map(m) => {
            let mut out = vec![F::zero(); alg.dim()];
            for (label, value) in &m {
                let i = alg
                    .index_of(label)
                    .ok_or_else(|| SpecError::Shape(format!("lambda: unknown basis label {label:?}")))?;
                out[i] = scalar(value, &format!("lambda.{label}"))?;
            }
            Ok(out)
        }
    }
}

fn scalar<F: Field>(s: &str, path: &str) -> Result<F, SpecError> {
    s.trim().parse::<F>().map_err(|e| SpecError::Scalar {
        path: path.to_string(),
        value: s.to_string(),
        message: e.to_string(),
    })
}

fn scalars<F: Field>(v: &[String], d: usize, path: &str) -> Result<Vec<F>, SpecError> {
    if v.len() != d {
        return Err(SpecError::Shape(format!("{path} has length {}, expected {d}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| scalar(s, &format!("{path}[{i}]")))
        .collect()
}

fn element<F: Field>(v: &[String], d: usize, path: &str) -> Result<Elem<F>, SpecError> {
    Ok(Elem::from_coords(scalars(v, d, path)?))
}

fn linop<F: Field>(m: &[Vec<String>], d: usize, path: &str) -> Result<LinOp<F>, SpecError> {
    if m.len() != d {
        return Err(SpecError::Shape(format!("{path} has {} rows, expected {d}", m.len())));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(r, row)| scalars(row, d, &format!("{path}[{r}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = Matrix::from_rows(rows).expect("rows have equal length");
    Ok(LinOp::from_matrix(matrix)?)
}

fn op_matrix<F: Field>(m: &[Vec<Vec<Vec<String>>>], n: usize, d: usize, path: &str) -> Result<OpMatrix<F>, SpecError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(SpecError::Shape(format!("{path} must be {n}x{n}")));
    }
    let mut out = OpMatrix::zero(n, d);
    for (i, row) in m.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            *out.get_mut(i, j) = linop(entry, d, &format!("{path}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

fn strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn linop_strings<F: Field>(op: &LinOp<F>) -> Vec<Vec<String>> {
    op.matrix().to_rows().iter().map(|r| strings(r)).collect()
}

fn op_strings<F: Field>(m: &OpMatrix<F>) -> Vec<Vec<Vec<Vec<String>>>> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| linop_strings(m.get(i, j))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{by_name, GALLERY};
    use crate::linear::Q;

    #[test]
    fn round_trip_is_exact() {
        for name in GALLERY {
            let inst = by_name::<Q>(name).unwrap().instance;
            let spec = InstanceSpec::from_instance(&inst);
            let back = InstanceSpec::parse(&spec.to_json()).unwrap();
            assert_eq!(back, spec);
            let rebuilt = back.to_instance::<Q>(None).unwrap();
            assert_eq!(rebuilt.derivation, inst.derivation, "{name}");
            assert_eq!(rebuilt.system, inst.system, "{name}");
            assert_eq!(rebuilt.algebra, inst.algebra, "{name}");
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let spec = InstanceSpec::from_instance(&by_name::<Q>("z2-haar").unwrap().instance);
        let mut v: serde_json::Value = serde_json::from_str(&spec.to_json()).unwrap();
        v["system"]["extra"] = serde_json::json!(1);
        assert!(InstanceSpec::parse(&v.to_string()).is_err());
        let mut v: serde_json::Value = serde_json::from_str(&spec.to_json()).unwrap();
        v["surplus"] = serde_json::json!(1);
        assert!(InstanceSpec::parse(&v.to_string()).is_err());
    }

    #[test]
    fn group_table_spec() {
        let json = r#"{
            "algebra": {"group_table": [[0, 1], [1, 0]], "labels": ["e", "g"]},
            "system": {"n": 1,
                       "partial": [[["-1", "1"], ["1", "-1"]]],
                       "sigma": [[[["0", "1"], ["1", "0"]]]]}
        }"#;
        let inst = InstanceSpec::parse(json).unwrap().to_instance::<Q>(None).unwrap();
        assert_eq!(inst.derivation, by_name::<Q>("z2-haar").unwrap().instance.derivation);
    }

    #[test]
    fn bad_scalar_reports_path() {
        let json = r#"{
            "algebra": {"dim": 1, "basis": ["1"], "unit": ["one"], "mul": [[["1"]]]},
            "system": {"n": 0, "partial": [], "sigma": []}
        }"#;
        let err = InstanceSpec::parse(json).unwrap().to_instance::<Q>(None).unwrap_err();
        assert!(err.to_string().contains("algebra.unit[0]"), "{err}");
    }

    #[test]
    fn functional_forms() {
        let alg = by_name::<Q>("z2-haar").unwrap().instance.algebra;
        assert_eq!(
            parse_functional::<Q>(r#"["1", "1/2"]"#, &alg).unwrap(),
            vec![Q::from(1), Q::new(1, 2)]
        );
        assert_eq!(
            parse_functional::<Q>(r#"{"g": "3"}"#, &alg).unwrap(),
            vec![Q::from(0), Q::from(3)]
        );
        assert!(parse_functional::<Q>(r#"{"h": "3"}"#, &alg).is_err());
    }

    #[test]
    fn window_override() {
        let spec = InstanceSpec::from_instance(&by_name::<Q>("supercircle:2").unwrap().instance);
        assert!(spec.to_instance::<Q>(Some(3)).is_err());
        assert!(spec.to_instance::<Q>(Some(2)).is_ok());
    }
}
