//! JSON files describing an algebra object by its blocks.
//!
//! `mu[c]` is the `c`-block of `μ : A ⊗ A → A` in the tensor layout of the
//! engine; `iota[u]` is the `u`-block of `ι : 1 → A` for each unit `u`.

use super::{AlgebraObject, IntAlgError};
use crate::fusion::{bundled, Category, FusionData, Mor};
use crate::json;
use crate::numcore::CMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::rc::Rc;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    /// Bundled category name or a path relative to the file.
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<f64>>,
    pub mult: BTreeMap<String, usize>,
    pub mu: BTreeMap<String, serde_json::Value>,
    pub iota: BTreeMap<String, serde_json::Value>,
}

/// Resolve a category reference, then install the weight `psi` (or the one stored with the data, or all ones).
pub fn load_category(reference: &str, base: Option<&Path>, psi: Option<&[f64]>) -> Result<Rc<Category>, IntAlgError> {
    let data = if bundled::source(reference).is_some() {
        bundled::load(reference)?
    } else {
        let path = match base {
            Some(b) => b.join(reference),
            None => PathBuf::from(reference),
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| IntAlgError::Schema(format!("cannot read category `{}`: {e}", path.display())))?;
        FusionData::from_json_str(&text)?
    };
    let weights = match psi {
        Some(p) => p.to_vec(),
        None => data.psi.clone().unwrap_or_else(|| vec![1.0; data.sheets()]),
    };
    Ok(Rc::new(Category::new(data, &weights)?))
}

pub fn parse_algebra(text: &str, base: Option<&Path>) -> Result<AlgebraObject, IntAlgError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| IntAlgError::Schema(e.to_string()))?;
    let cat = load_category(&file.category, base, file.psi.as_deref())?;
    from_file(cat, &file)
}

pub fn load_algebra(path: &Path) -> Result<AlgebraObject, IntAlgError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IntAlgError::Schema(format!("cannot read `{}`: {e}", path.display())))?;
    parse_algebra(&text, path.parent())
}

pub fn from_file(cat: Rc<Category>, file: &AlgebraFile) -> Result<AlgebraObject, IntAlgError> {
    let d = &cat.data;
    let mut mult = vec![0; cat.rank()];
    for (label, &n) in &file.mult {
        mult[d.index(label)?] = n;
    }
    let obj = cat.obj(mult, "A");
    let aa = cat.tensor_obj(&obj, &obj);
    let one = cat.unit();
    let mut mu = cat.zero_mor(&aa, &obj);
    for (label, v) in &file.mu {
        let k = d.index(label)?;
        mu.blocks[k] = block(v, obj.mult[k], aa.mult[k], label, "mu")?;
    }
    let mut iota = cat.zero_mor(&one, &obj);
    for (label, v) in &file.iota {
        let k = d.index(label)?;
        if one.mult[k] == 0 {
            return Err(IntAlgError::Schema(format!("iota block `{label}` is not a unit")));
        }
        iota.blocks[k] = block(v, obj.mult[k], 1, label, "iota")?;
    }
    AlgebraObject::new(cat, obj, mu, iota)
}

fn block(v: &serde_json::Value, rows: usize, cols: usize, label: &str, what: &str) -> Result<CMatrix, IntAlgError> {
    let m = json::from_value(v).map_err(|e| IntAlgError::Schema(format!("{what}[{label}]: {e}")))?;
    let m = if m.nrows() == 0 { CMatrix::zeros(rows, cols) } else { m };
    if m.nrows() != rows || m.ncols() != cols {
        return Err(IntAlgError::Schema(format!(
            "{what}[{label}] is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m)
}

fn blocks_json(cat: &Category, m: &Mor, skip_empty: bool) -> BTreeMap<String, serde_json::Value> {
    let mut out = BTreeMap::new();
    for (k, b) in m.blocks.iter().enumerate() {
        if skip_empty && (b.nrows() == 0 || b.ncols() == 0) {
            continue;
        }
        out.insert(cat.data.simples[k].clone(), serde_json::to_value(json::to_rows(b)).unwrap());
    }
    out
}

/// Inverse of [`from_file`].
pub fn algebra_to_file(alg: &AlgebraObject, category: &str) -> AlgebraFile {
    let cat = &alg.cat;
    let mult = alg
        .obj
        .mult
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(k, &n)| (cat.data.simples[k].clone(), n))
        .collect();
    AlgebraFile {
        category: category.to_string(),
        psi: Some(cat.udf.psi.clone()),
        mult,
        mu: blocks_json(cat, &alg.mu, true),
        iota: blocks_json(cat, &alg.iota, true),
    }
}
