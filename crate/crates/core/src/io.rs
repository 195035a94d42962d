//! JSON schemas for groups, functions, representations, states, tomograms
//! and grids, plus a deterministic writer: keys sorted, floats rendered as
//! `%.12e`, so identical inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_group::FiniteGroup;
use crate::group_algebra::GroupFunction;
use crate::irrep::{Irrep, IrrepRegistry};
use crate::linalg::CMat;
use crate::quadrature::QuadratureGrid;
use crate::su2::SU2Element;

// ---------------------------------------------------------------------
// Input models (serde).
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub mul_table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionJson {
    pub group: String,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrepJson {
    pub group: String,
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegistryJson {
    pub group: GroupJson,
    pub irreps: Vec<IrrepJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TomogramJson {
    pub group: String,
    pub irrep: String,
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TargetsJson {
    pub targets: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    pub order: usize,
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

/// Output of `su2 tomogram`, self-contained for reconstruction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Su2TomogramJson {
    pub two_j: i64,
    pub grid: GridJson,
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Su3ParamsJson {
    pub params: Vec<f64>,
    #[serde(default)]
    pub xi: Option<[f64; 2]>,
}

// ---------------------------------------------------------------------
// Conversions.
// ---------------------------------------------------------------------

pub fn complex_from_pair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn matrix_from_json(rows: &[Vec<[f64; 2]>]) -> Result<CMat> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::InvalidParameter("matrix is not square".into()));
        }
        if row.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
        }
    }
    Ok(CMat::from_fn(n, n, |i, j| complex_from_pair(rows[i][j])))
}

pub fn matrix_to_json(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn group_from_json(doc: &GroupJson) -> Result<Arc<FiniteGroup>> {
    if doc.mul_table.len() != doc.order {
        return Err(Error::NotAGroup {
            reason: format!(
                "declared order {} does not match table size {}",
                doc.order,
                doc.mul_table.len()
            ),
        });
    }
    FiniteGroup::build(&doc.mul_table, &doc.name)
}

pub fn group_to_json(group: &FiniteGroup) -> GroupJson {
    GroupJson {
        name: group.name().to_string(),
        order: group.order(),
        mul_table: group.mul_table(),
    }
}

pub fn function_from_json(doc: &FunctionJson, group: Arc<FiniteGroup>) -> Result<GroupFunction> {
    GroupFunction::new(group, doc.values.iter().map(|&p| complex_from_pair(p)).collect())
}

pub fn function_to_json(f: &GroupFunction) -> FunctionJson {
    FunctionJson {
        group: f.group().name().to_string(),
        values: f.values().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn irrep_from_json(doc: &IrrepJson, group: Arc<FiniteGroup>) -> Result<Irrep> {
    let matrices = doc
        .matrices
        .iter()
        .map(|m| matrix_from_json(m))
        .collect::<Result<Vec<_>>>()?;
    for m in &matrices {
        if m.nrows() != doc.dim {
            return Err(Error::DimensionMismatch {
                expected: doc.dim,
                got: m.nrows(),
            });
        }
    }
    Irrep::new(group, &doc.label, matrices)
}

pub fn irrep_to_json(d: &Irrep) -> IrrepJson {
    IrrepJson {
        group: d.group().name().to_string(),
        label: d.label().to_string(),
        dim: d.dim(),
        matrices: d.matrices().iter().map(matrix_to_json).collect(),
    }
}

pub fn registry_to_json(registry: &IrrepRegistry) -> RegistryJson {
    RegistryJson {
        group: group_to_json(registry.group()),
        irreps: registry.irreps().iter().map(irrep_to_json).collect(),
    }
}

pub fn registry_from_json(doc: &RegistryJson) -> Result<IrrepRegistry> {
    let group = group_from_json(&doc.group)?;
    let irreps = doc
        .irreps
        .iter()
        .map(|d| irrep_from_json(d, group.clone()))
        .collect::<Result<Vec<_>>>()?;
    IrrepRegistry::new(group, irreps)
}

pub fn grid_to_json(grid: &QuadratureGrid) -> GridJson {
    GridJson {
        order: grid.order(),
        nodes: grid
            .nodes()
            .iter()
            .map(|g| [g.alpha, g.beta, g.gamma])
            .collect(),
        weights: grid.weights().to_vec(),
    }
}

pub fn grid_from_json(doc: &GridJson) -> Result<QuadratureGrid> {
    let nodes = doc
        .nodes
        .iter()
        .map(|&[a, b, g]| SU2Element::new(a, b, g))
        .collect::<Result<Vec<_>>>()?;
    QuadratureGrid::from_parts(nodes, doc.weights.clone(), doc.order)
}

/// Load registries from a path: either a single registry JSON file, or a
/// directory holding group JSONs (files with a `mul_table`) and irrep
/// JSONs attached to their groups by name, scanned in filename order.
pub fn load_registries(path: &Path) -> Result<Vec<IrrepRegistry>> {
    if path.is_file() {
        let doc: RegistryJson = read_json(path)?;
        return Ok(vec![registry_from_json(&doc)?]);
    }
    let mut entries: Vec<_> = std::fs::read_dir(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read registry {path:?}: {e}")))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    entries.sort();
    let mut groups: Vec<Arc<FiniteGroup>> = Vec::new();
    let mut irrep_docs: Vec<IrrepJson> = Vec::new();
    for file in &entries {
        let value: serde_json::Value = read_json(file)?;
        if value.get("mul_table").is_some() {
            let doc: GroupJson = serde_json::from_value(value)
                .map_err(|e| Error::InvalidParameter(format!("{file:?}: {e}")))?;
            groups.push(group_from_json(&doc)?);
        } else if value.get("matrices").is_some() {
            let doc: IrrepJson = serde_json::from_value(value)
                .map_err(|e| Error::InvalidParameter(format!("{file:?}: {e}")))?;
            irrep_docs.push(doc);
        }
    }
    if groups.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "registry directory {path:?} holds no group JSON"
        )));
    }
    groups
        .into_iter()
        .map(|group| {
            let irreps = irrep_docs
                .iter()
                .filter(|d| d.group == group.name())
                .map(|d| irrep_from_json(d, group.clone()))
                .collect::<Result<Vec<_>>>()?;
            IrrepRegistry::new(group, irreps)
        })
        .collect()
}

/// Load exactly one registry; errors when a directory holds several groups.
pub fn load_registry(path: &Path) -> Result<IrrepRegistry> {
    let mut regs = load_registries(path)?;
    if regs.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "expected exactly one group in {path:?}, found {}",
            regs.len()
        )));
    }
    Ok(regs.remove(0))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {path:?}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidParameter(format!("{path:?}: {e}")))
}

// ---------------------------------------------------------------------
// Deterministic JSON writer.
// ---------------------------------------------------------------------

/// A JSON value with deterministic serialization: object keys sorted,
/// every float rendered as `%.12e`.
#[derive(Debug, Clone)]
pub enum Doc {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Arr(Vec<Doc>),
    Obj(BTreeMap<String, Doc>),
}

impl Doc {
    pub fn obj(pairs: Vec<(&str, Doc)>) -> Doc {
        Doc::Obj(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn floats(values: impl IntoIterator<Item = f64>) -> Doc {
        Doc::Arr(values.into_iter().map(Doc::Float).collect())
    }

    pub fn complex(z: Complex64) -> Doc {
        Doc::Arr(vec![Doc::Float(z.re), Doc::Float(z.im)])
    }

    pub fn matrix(m: &CMat) -> Doc {
        Doc::Arr(
            (0..m.nrows())
                .map(|i| Doc::Arr((0..m.ncols()).map(|j| Doc::complex(m[(i, j)])).collect()))
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Doc::Null => out.push_str("null"),
            Doc::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Doc::Int(i) => out.push_str(&i.to_string()),
            Doc::Float(f) => out.push_str(&format_float(*f)),
            Doc::Str(s) => {
                out.push('"');
                for ch in s.chars() {
                    match ch {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Doc::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Doc::Obj(map) => {
                out.push('{');
                for (i, (k, v)) in map.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    Doc::Str(k.clone()).write(out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

/// `%.12e` with a signed two-digit exponent, matching the C format.
pub fn format_float(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value }; // normalize −0.0
    let raw = format!("{:.12e}", v);
    // Rust renders "1.234567890123e5" / "e-5"; pad to e+05 / e-05.
    match raw.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ('-', d),
                None => ('+', exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => raw,
    }
}
