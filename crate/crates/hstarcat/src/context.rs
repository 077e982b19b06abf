use crate::report::Fail;
use hstar_core::fusion::{bundled, Category, FusionData};
use hstar_core::intalg::{from_file, AlgebraFile, AlgebraObject};
use hstar_core::Tolerance;
use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::rc::Rc;

pub struct Ctx {
    pub tol: Tolerance,
    pub seed: u64,
    pub inputs: BTreeMap<String, String>,
}

/// An algebra given either as a path (relative to the referring file) or inline.
#[derive(Clone, Debug, serde::Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

impl Ctx {
    pub fn new(tol: f64, seed: u64) -> Self {
        Ctx {
            tol: Tolerance::uniform(tol),
            seed,
            inputs: BTreeMap::new(),
        }
    }

    fn record(&mut self, key: String, bytes: &[u8]) {
        self.inputs.insert(key, hex::encode(Sha256::digest(bytes)));
    }

    pub fn read(&mut self, path: &Path) -> Result<String, Fail> {
        let bytes = std::fs::read(path).map_err(|e| Fail::Input(format!("cannot read `{}`: {e}", path.display())))?;
        self.record(path.display().to_string(), &bytes);
        String::from_utf8(bytes).map_err(|_| Fail::Input(format!("`{}` is not UTF-8", path.display())))
    }

    pub fn parse<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, Fail> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Fail::Input(format!("`{}`: {e}", path.display())))
    }

    /// A bundled dataset name, or a path resolved against `base`.
    pub fn fusion_data(&mut self, reference: &str, base: Option<&Path>) -> Result<FusionData, Fail> {
        let path = match base {
            Some(b) => b.join(reference),
            None => PathBuf::from(reference),
        };
        match bundled::source(reference) {
            // Bundled data is re-validated on every load.
            Some(src) if !path.exists() => {
                self.record(format!("bundled:{reference}"), src.as_bytes());
                Ok(bundled::load(reference)?)
            }
            _ => Ok(FusionData::from_json_str(&self.read(&path)?)?),
        }
    }

    /// The category with weight `psi`, else the weight stored with the data, else all ones.
    pub fn category(&mut self, reference: &str, base: Option<&Path>, psi: Option<&[f64]>) -> Result<Rc<Category>, Fail> {
        let data = self.fusion_data(reference, base)?;
        let weights = match psi {
            Some(p) => p.to_vec(),
            None => data.psi.clone().unwrap_or_else(|| vec![1.0; data.sheets()]),
        };
        Ok(Rc::new(Category::new(data, &weights)?))
    }

    /// Resolve an algebra reference; `cat` overrides the category named in the file.
    pub fn algebra_file(&mut self, r: &AlgebraRef, base: Option<&Path>) -> Result<(AlgebraFile, Option<PathBuf>), Fail> {
        match r {
            AlgebraRef::Inline(f) => Ok(((**f).clone(), base.map(Path::to_path_buf))),
            AlgebraRef::Path(p) => {
                let path = match base {
                    Some(b) => b.join(p),
                    None => PathBuf::from(p),
                };
                let file: AlgebraFile = self.parse(&path)?;
                Ok((file, path.parent().map(Path::to_path_buf)))
            }
        }
    }

    pub fn algebra(
        &mut self,
        r: &AlgebraRef,
        base: Option<&Path>,
        cat: Option<Rc<Category>>,
    ) -> Result<AlgebraObject, Fail> {
        let (file, dir) = self.algebra_file(r, base)?;
        let cat = match cat {
            Some(c) => c,
            None => self.category(&file.category, dir.as_deref(), file.psi.as_deref())?,
        };
        Ok(from_file(cat, &file)?)
    }
}
