//! Skeletal multifusion data and its JSON form.

use super::FusionError;
use crate::json;
use crate::numcore::{c, CMatrix};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// A fusion-tree basis element: intermediate simple and two vertex indices.
pub type TreeIndex = (usize, usize, usize);

/// One F-block between the two bracketings of `a ⊗ b ⊗ c → d`.
#[derive(Clone, Debug)]
pub struct FBlock {
    /// Rows: `((ab)→e, α), (ec→d, β)`.
    pub left: Vec<TreeIndex>,
    /// Columns: `(bc→f, γ), (af→d, δ)`.
    pub right: Vec<TreeIndex>,
    pub matrix: CMatrix,
}

#[derive(Clone, Debug)]
pub struct FusionData {
    pub simples: Vec<String>,
    /// Simple index of `1_i` for each sheet `i`.
    pub units: Vec<usize>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub dual: Vec<usize>,
    n: Vec<usize>,
    fblocks: HashMap<[usize; 4], FBlock>,
    pub psi: Option<Vec<f64>>,
}

/// On-disk layout of [`FusionData`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionJson {
    pub simples: Vec<String>,
    pub units: Vec<String>,
    #[serde(default)]
    pub grading: BTreeMap<String, [usize; 2]>,
    #[serde(default)]
    pub dual: BTreeMap<String, String>,
    #[serde(rename = "N")]
    pub n: BTreeMap<String, usize>,
    #[serde(rename = "F", default)]
    pub f: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<f64>>,
}

fn schema(msg: impl Into<String>) -> FusionError {
    FusionError::Schema(msg.into())
}

impl FusionData {
    pub fn from_json_str(s: &str) -> Result<Self, FusionError> {
        let raw: FusionJson = serde_json::from_str(s).map_err(|e| schema(e.to_string()))?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &FusionJson) -> Result<Self, FusionError> {
        let r = raw.simples.len();
        if r == 0 {
            return Err(schema("no simples"));
        }
        let index: HashMap<&str, usize> = raw
            .simples
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        if index.len() != r {
            return Err(schema("duplicate simple label"));
        }
        let look = |l: &str| -> Result<usize, FusionError> {
            index
                .get(l)
                .copied()
                .ok_or_else(|| FusionError::UnknownLabel(l.to_string()))
        };
        let units = raw
            .units
            .iter()
            .map(|u| look(u))
            .collect::<Result<Vec<_>, _>>()?;
        if units.is_empty() {
            return Err(schema("no unit summands"));
        }
        let k = units.len();

        let mut source = vec![usize::MAX; r];
        let mut target = vec![usize::MAX; r];
        for (l, &[i, j]) in &raw.grading {
            let a = look(l)?;
            if i >= k || j >= k {
                return Err(schema(format!("grading of `{l}` out of range")));
            }
            source[a] = i;
            target[a] = j;
        }
        for (i, &u) in units.iter().enumerate() {
            if source[u] == usize::MAX {
                source[u] = i;
                target[u] = i;
            }
        }
        for a in 0..r {
            if source[a] == usize::MAX {
                if k == 1 {
                    source[a] = 0;
                    target[a] = 0;
                } else {
                    return Err(schema(format!("missing grading for `{}`", raw.simples[a])));
                }
            }
        }

        let mut n = vec![0usize; r * r * r];
        for (key, &v) in &raw.n {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(schema(format!("bad N key `{key}`")));
            }
            let (a, b, cc) = (look(parts[0])?, look(parts[1])?, look(parts[2])?);
            n[(a * r + b) * r + cc] = v;
        }
        // Unit fusion rules are implied unless stated.
        for a in 0..r {
            let (ls, rs) = (units[source[a]], units[target[a]]);
            let lkey = format!("{},{},{}", raw.simples[ls], raw.simples[a], raw.simples[a]);
            let rkey = format!("{},{},{}", raw.simples[a], raw.simples[rs], raw.simples[a]);
            if !raw.n.contains_key(&lkey) {
                n[(ls * r + a) * r + a] = 1;
            }
            if !raw.n.contains_key(&rkey) {
                n[(a * r + rs) * r + a] = 1;
            }
        }

        let mut dual = vec![usize::MAX; r];
        for (a, b) in &raw.dual {
            dual[look(a)?] = look(b)?;
        }
        for a in 0..r {
            if dual[a] == usize::MAX {
                let u = units[source[a]];
                let found: Vec<usize> = (0..r).filter(|&b| n[(a * r + b) * r + u] > 0).collect();
                match found.as_slice() {
                    [b] => dual[a] = *b,
                    _ => return Err(schema(format!("cannot infer dual of `{}`", raw.simples[a]))),
                }
            }
        }

        let mut explicit = HashMap::new();
        for (key, v) in &raw.f {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(schema(format!("bad F key `{key}`")));
            }
            let q = [look(parts[0])?, look(parts[1])?, look(parts[2])?, look(parts[3])?];
            let m = json::from_value(v).map_err(|e| schema(format!("F `{key}`: {e}")))?;
            explicit.insert(q, m);
        }

        let mut data = FusionData {
            simples: raw.simples.clone(),
            units,
            source,
            target,
            dual,
            n,
            fblocks: HashMap::new(),
            psi: raw.psi.clone(),
        };
        data.install_f(explicit)?;
        Ok(data)
    }

    /// Build from dense tables; `f` lists explicit blocks only.
    pub fn from_parts(
        simples: Vec<String>,
        units: Vec<usize>,
        source: Vec<usize>,
        target: Vec<usize>,
        dual: Vec<usize>,
        n: Vec<usize>,
        f: HashMap<[usize; 4], CMatrix>,
    ) -> Result<Self, FusionError> {
        let r = simples.len();
        if n.len() != r * r * r || source.len() != r || target.len() != r || dual.len() != r {
            return Err(schema("table sizes disagree with the number of simples"));
        }
        let mut data = FusionData {
            simples,
            units,
            source,
            target,
            dual,
            n,
            fblocks: HashMap::new(),
            psi: None,
        };
        data.install_f(f)?;
        Ok(data)
    }

    fn install_f(&mut self, mut explicit: HashMap<[usize; 4], CMatrix>) -> Result<(), FusionError> {
        let r = self.rank();
        let graded = self.grading_consistent();
        for a in 0..r {
            for b in 0..r {
                if graded && self.target[a] != self.source[b] {
                    continue;
                }
                for cc in 0..r {
                    if graded && self.target[b] != self.source[cc] {
                        continue;
                    }
                    for d in 0..r {
                        if graded && (self.source[d] != self.source[a] || self.target[d] != self.target[cc]) {
                            continue;
                        }
                        let left = self.left_basis(a, b, cc, d);
                        let right = self.right_basis(a, b, cc, d);
                        let key = [a, b, cc, d];
                        let given = explicit.remove(&key);
                        if left.is_empty() && right.is_empty() {
                            if given.is_some() {
                                return Err(schema(format!("F block {} is not admissible", self.key(&key))));
                            }
                            continue;
                        }
                        if left.len() != right.len() {
                            return Err(schema(format!(
                                "F block {} has {} left trees but {} right trees",
                                self.key(&key),
                                left.len(),
                                right.len()
                            )));
                        }
                        let matrix = match given {
                            Some(m) => {
                                if m.nrows() != left.len() || m.ncols() != right.len() {
                                    return Err(schema(format!(
                                        "F block {} must be {}x{}",
                                        self.key(&key),
                                        left.len(),
                                        right.len()
                                    )));
                                }
                                m
                            }
                            None if left.len() == 1 => CMatrix::from_element(1, 1, c(1.0)),
                            None => return Err(schema(format!("missing F block {}", self.key(&key)))),
                        };
                        self.fblocks.insert(key, FBlock { left, right, matrix });
                    }
                }
            }
        }
        if let Some((key, _)) = explicit.into_iter().next() {
            return Err(schema(format!("F block {} is not admissible", self.key(&key))));
        }
        Ok(())
    }

    /// `N_{ab}^c = 0` unless `t(a) = s(b)`, `s(c) = s(a)` and `t(c) = t(b)`.
    pub fn grading_consistent(&self) -> bool {
        let r = self.rank();
        (0..r).all(|a| {
            (0..r).all(|b| {
                (0..r).all(|cc| {
                    self.nmult(a, b, cc) == 0
                        || (self.target[a] == self.source[b]
                            && self.source[cc] == self.source[a]
                            && self.target[cc] == self.target[b])
                })
            })
        })
    }

    fn key(&self, q: &[usize; 4]) -> String {
        q.iter().map(|&i| self.simples[i].as_str()).collect::<Vec<_>>().join(",")
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn sheets(&self) -> usize {
        self.units.len()
    }

    pub fn index(&self, label: &str) -> Result<usize, FusionError> {
        self.simples
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| FusionError::UnknownLabel(label.to_string()))
    }

    /// `N_{ab}^c`.
    pub fn nmult(&self, a: usize, b: usize, cc: usize) -> usize {
        let r = self.rank();
        self.n[(a * r + b) * r + cc]
    }

    pub fn unit_sheet(&self, a: usize) -> Option<usize> {
        self.units.iter().position(|&u| u == a)
    }

    pub fn left_basis(&self, a: usize, b: usize, cc: usize, d: usize) -> Vec<TreeIndex> {
        let mut out = Vec::new();
        for e in 0..self.rank() {
            let (x, y) = (self.nmult(a, b, e), self.nmult(e, cc, d));
            for al in 0..x {
                for be in 0..y {
                    out.push((e, al, be));
                }
            }
        }
        out
    }

    pub fn right_basis(&self, a: usize, b: usize, cc: usize, d: usize) -> Vec<TreeIndex> {
        let mut out = Vec::new();
        for f in 0..self.rank() {
            let (x, y) = (self.nmult(b, cc, f), self.nmult(a, f, d));
            for ga in 0..x {
                for de in 0..y {
                    out.push((f, ga, de));
                }
            }
        }
        out
    }

    pub fn fblock(&self, a: usize, b: usize, cc: usize, d: usize) -> Option<&FBlock> {
        self.fblocks.get(&[a, b, cc, d])
    }

    pub fn fblocks(&self) -> impl Iterator<Item = (&[usize; 4], &FBlock)> {
        self.fblocks.iter()
    }

    /// Replace one F-block; shape must be preserved.
    pub fn set_fblock(&mut self, q: [usize; 4], m: CMatrix) -> Result<(), FusionError> {
        let blk = self
            .fblocks
            .get_mut(&q)
            .ok_or_else(|| schema("F block is not admissible"))?;
        if blk.matrix.shape() != m.shape() {
            return Err(schema("F block shape changed"));
        }
        blk.matrix = m;
        Ok(())
    }

    pub fn to_json(&self) -> FusionJson {
        let r = self.rank();
        let l = |i: usize| self.simples[i].clone();
        let mut n = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    let v = self.nmult(a, b, cc);
                    if v > 0 {
                        n.insert(format!("{},{},{}", l(a), l(b), l(cc)), v);
                    }
                }
            }
        }
        let mut f = BTreeMap::new();
        for (q, blk) in &self.fblocks {
            let trivial = blk.matrix.nrows() == 1 && (blk.matrix[(0, 0)] - c(1.0)).norm() == 0.0;
            if !trivial {
                f.insert(self.key(q), serde_json::to_value(json::to_rows(&blk.matrix)).unwrap());
            }
        }
        FusionJson {
            simples: self.simples.clone(),
            units: self.units.iter().map(|&u| l(u)).collect(),
            grading: (0..r).map(|a| (l(a), [self.source[a], self.target[a]])).collect(),
            dual: (0..r).map(|a| (l(a), l(self.dual[a]))).collect(),
            n,
            f,
            psi: self.psi.clone(),
        }
    }

    /// Connected components of the sheet graph with an edge `s(c) ~ t(c)` per simple.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.sheets();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..self.rank() {
            let (x, y) = (find(&mut parent, self.source[a]), find(&mut parent, self.target[a]));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..k {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }
}
