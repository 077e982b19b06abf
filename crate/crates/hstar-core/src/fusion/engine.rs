//! Skeletal evaluation of morphisms in a unitary multifusion category.
//!
//! An object is a multiplicity vector over the simples. A morphism stores one
//! `target_mult × source_mult` matrix per simple. The summand of `X ⊗ Y` over
//! a simple `e` is laid out by pairs `(a, b)` in lexicographic order, each pair
//! contributing `m_X(a) · m_Y(b) · N_{ab}^e` basis vectors indexed by
//! `(i · m_Y(b) + j) · N_{ab}^e + α`.

use super::data::FusionData;
use super::udf::{fpdims, UdfData};
use super::FusionError;
use crate::numcore::{c, frob, split_projection, CMatrix, Tolerance};
use crate::sample::{self, SampleRng};
use num_complex::Complex64;
use std::rc::Rc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obj {
    pub mult: Vec<usize>,
    pub tag: Rc<str>,
}

impl Obj {
    pub fn new(mult: Vec<usize>, tag: &str) -> Self {
        Obj {
            mult,
            tag: Rc::from(tag),
        }
    }

    pub fn retag(&self, tag: &str) -> Obj {
        Obj::new(self.mult.clone(), tag)
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct Mor {
    pub src: Obj,
    pub tgt: Obj,
    pub blocks: Vec<CMatrix>,
}

impl Mor {
    /// `self ∘ g`.
    pub fn after(&self, g: &Mor) -> Mor {
        assert!(
            g.tgt == self.src,
            "composing through `{}` into `{}`",
            g.tgt.tag,
            self.src.tag
        );
        Mor {
            src: g.src.clone(),
            tgt: self.tgt.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn dagger(&self) -> Mor {
        Mor {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Mor {
        Mor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn add(&self, other: &Mor) -> Mor {
        assert!(self.src == other.src && self.tgt == other.tgt, "adding morphisms of different types");
        Mor {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(|b| frob(b).powi(2)).sum::<f64>().sqrt()
    }

    /// Same matrices with relabelled endpoints of equal multiplicities.
    pub fn cast(&self, src: &Obj, tgt: &Obj) -> Mor {
        assert_eq!(src.mult, self.src.mult, "cast changes the source");
        assert_eq!(tgt.mult, self.tgt.mult, "cast changes the target");
        Mor {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks: self.blocks.clone(),
        }
    }

    /// Entries flattened block by block in column-major order.
    pub fn flatten(&self) -> Vec<Complex64> {
        self.blocks.iter().flat_map(|b| b.iter().copied()).collect()
    }

    pub fn unflatten(src: &Obj, tgt: &Obj, v: &[Complex64]) -> Mor {
        let mut pos = 0;
        let blocks = tgt
            .mult
            .iter()
            .zip(&src.mult)
            .map(|(&r, &k)| {
                let m = CMatrix::from_column_slice(r, k, &v[pos..pos + r * k]);
                pos += r * k;
                m
            })
            .collect();
        Mor {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks,
        }
    }

    pub fn flat_len(src: &Obj, tgt: &Obj) -> usize {
        src.mult.iter().zip(&tgt.mult).map(|(a, b)| a * b).sum()
    }
}

/// Offsets of the `(a, b)` pair blocks inside each summand of `X ⊗ Y`.
struct Layout {
    r: usize,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl Layout {
    fn at(&self, e: usize, a: usize, b: usize) -> usize {
        self.offsets[e][a * self.r + b]
    }
}

/// A multifusion category with a chosen spherical weight.
#[derive(Clone, Debug)]
pub struct Category {
    pub data: FusionData,
    pub udf: UdfData,
    prods: Vec<Vec<(usize, usize)>>,
}

const NONE: usize = usize::MAX;

impl Category {
    pub fn new(data: FusionData, psi: &[f64]) -> Result<Self, FusionError> {
        let fp = fpdims(&data)?;
        let udf = UdfData::new(&data, &fp, psi)?;
        Ok(Self::with_udf(data, udf))
    }

    pub fn with_udf(data: FusionData, udf: UdfData) -> Self {
        let r = data.rank();
        let mut prods = vec![Vec::new(); r * r];
        for a in 0..r {
            for b in 0..r {
                for e in 0..r {
                    let n = data.nmult(a, b, e);
                    if n > 0 {
                        prods[a * r + b].push((e, n));
                    }
                }
            }
        }
        Category { data, udf, prods }
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn n(&self, a: usize, b: usize, e: usize) -> usize {
        self.data.nmult(a, b, e)
    }

    pub fn obj(&self, mult: Vec<usize>, tag: &str) -> Obj {
        assert_eq!(mult.len(), self.rank());
        Obj::new(mult, tag)
    }

    pub fn zero(&self) -> Obj {
        Obj::new(vec![0; self.rank()], "0")
    }

    pub fn simple(&self, a: usize) -> Obj {
        let mut mult = vec![0; self.rank()];
        mult[a] = 1;
        Obj::new(mult, &self.data.simples[a])
    }

    /// `1 = ⊕_i 1_i`.
    pub fn unit(&self) -> Obj {
        let mut mult = vec![0; self.rank()];
        for &u in &self.data.units {
            mult[u] = 1;
        }
        Obj::new(mult, "1")
    }

    pub fn id(&self, x: &Obj) -> Mor {
        Mor {
            src: x.clone(),
            tgt: x.clone(),
            blocks: x.mult.iter().map(|&m| CMatrix::identity(m, m)).collect(),
        }
    }

    pub fn zero_mor(&self, src: &Obj, tgt: &Obj) -> Mor {
        Mor {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks: tgt
                .mult
                .iter()
                .zip(&src.mult)
                .map(|(&r, &k)| CMatrix::zeros(r, k))
                .collect(),
        }
    }

    pub fn random_mor(&self, rng: &mut SampleRng, src: &Obj, tgt: &Obj) -> Mor {
        Mor {
            src: src.clone(),
            tgt: tgt.clone(),
            blocks: tgt
                .mult
                .iter()
                .zip(&src.mult)
                .map(|(&r, &k)| sample::matrix(rng, r, k))
                .collect(),
        }
    }

    fn layout(&self, x: &Obj, y: &Obj) -> Layout {
        let r = self.rank();
        let mut offsets = vec![vec![NONE; r * r]; r];
        let mut dims = vec![0; r];
        for a in 0..r {
            if x.mult[a] == 0 {
                continue;
            }
            for b in 0..r {
                if y.mult[b] == 0 {
                    continue;
                }
                for &(e, n) in &self.prods[a * r + b] {
                    offsets[e][a * r + b] = dims[e];
                    dims[e] += x.mult[a] * y.mult[b] * n;
                }
            }
        }
        Layout { r, offsets, dims }
    }

    pub fn tensor_obj(&self, x: &Obj, y: &Obj) -> Obj {
        let dims = self.layout(x, y).dims;
        Obj::new(dims, &format!("({}⊗{})", x.tag, y.tag))
    }

    pub fn tensor(&self, f: &Mor, g: &Mor) -> Mor {
        let r = self.rank();
        let src_l = self.layout(&f.src, &g.src);
        let tgt_l = self.layout(&f.tgt, &g.tgt);
        let src = Obj::new(src_l.dims.clone(), &format!("({}⊗{})", f.src.tag, g.src.tag));
        let tgt = Obj::new(tgt_l.dims.clone(), &format!("({}⊗{})", f.tgt.tag, g.tgt.tag));
        let mut blocks: Vec<CMatrix> = (0..r).map(|e| CMatrix::zeros(tgt.mult[e], src.mult[e])).collect();
        for a in 0..r {
            let (fa, fs) = (f.tgt.mult[a], f.src.mult[a]);
            if fa == 0 || fs == 0 {
                continue;
            }
            for b in 0..r {
                let (gt, gs) = (g.tgt.mult[b], g.src.mult[b]);
                if gt == 0 || gs == 0 {
                    continue;
                }
                let fg = f.blocks[a].kronecker(&g.blocks[b]);
                for &(e, n) in &self.prods[a * r + b] {
                    let (ro, co) = (tgt_l.at(e, a, b), src_l.at(e, a, b));
                    for p in 0..fg.nrows() {
                        for q in 0..fg.ncols() {
                            let z = fg[(p, q)];
                            if z.norm_sqr() == 0.0 {
                                continue;
                            }
                            for al in 0..n {
                                blocks[e][(ro + p * n + al, co + q * n + al)] = z;
                            }
                        }
                    }
                }
            }
        }
        Mor { src, tgt, blocks }
    }

    /// Position of basis vector `(a, i, b, j, α)` inside the `e`-summand of `X ⊗ Y`.
    #[allow(clippy::too_many_arguments)]
    pub fn tensor_index(&self, x: &Obj, y: &Obj, e: usize, a: usize, i: usize, b: usize, j: usize, al: usize) -> usize {
        let l = self.layout(x, y);
        let off = l.at(e, a, b);
        assert!(off != NONE, "no ({a},{b}) channel into {e}");
        off + (i * y.mult[b] + j) * self.n(a, b, e) + al
    }

    /// Trivalent vertex `e → a ⊗ b` for channel `α`, an isometry.
    pub fn vertex(&self, a: usize, b: usize, e: usize, al: usize) -> Mor {
        let (x, y) = (self.simple(a), self.simple(b));
        let tgt = self.tensor_obj(&x, &y);
        let mut m = self.zero_mor(&self.simple(e), &tgt);
        let idx = self.tensor_index(&x, &y, e, a, 0, b, 0, al);
        m.blocks[e][(idx, 0)] = c(1.0);
        m
    }

    /// `α_{X,Y,Z} : (X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`.
    pub fn assoc(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor {
        let r = self.rank();
        let xy_l = self.layout(x, y);
        let xy = Obj::new(xy_l.dims.clone(), &format!("({}⊗{})", x.tag, y.tag));
        let s_l = self.layout(&xy, z);
        let yz_l = self.layout(y, z);
        let yz = Obj::new(yz_l.dims.clone(), &format!("({}⊗{})", y.tag, z.tag));
        let t_l = self.layout(x, &yz);
        let src = Obj::new(s_l.dims.clone(), &format!("({}⊗{})", xy.tag, z.tag));
        let tgt = Obj::new(t_l.dims.clone(), &format!("({}⊗{})", x.tag, yz.tag));
        let mut blocks: Vec<CMatrix> = (0..r).map(|d| CMatrix::zeros(tgt.mult[d], src.mult[d])).collect();
        for a in 0..r {
            let ma = x.mult[a];
            if ma == 0 {
                continue;
            }
            for b in 0..r {
                let mb = y.mult[b];
                if mb == 0 {
                    continue;
                }
                for cc in 0..r {
                    let mc = z.mult[cc];
                    if mc == 0 {
                        continue;
                    }
                    for d in 0..r {
                        let Some(blk) = self.data.fblock(a, b, cc, d) else {
                            continue;
                        };
                        for (li, &(e, al, be)) in blk.left.iter().enumerate() {
                            let (nab, necd) = (self.n(a, b, e), self.n(e, cc, d));
                            for (ri, &(f, ga, de)) in blk.right.iter().enumerate() {
                                let coef = blk.matrix[(li, ri)];
                                if coef.norm_sqr() == 0.0 {
                                    continue;
                                }
                                let (nbc, nafd) = (self.n(b, cc, f), self.n(a, f, d));
                                let myz = yz.mult[f];
                                for i in 0..ma {
                                    for j in 0..mb {
                                        let p = xy_l.at(e, a, b) + (i * mb + j) * nab + al;
                                        for k in 0..mc {
                                            let s = s_l.at(d, e, cc) + (p * mc + k) * necd + be;
                                            let q = yz_l.at(f, b, cc) + (j * mc + k) * nbc + ga;
                                            let t = t_l.at(d, a, f) + (i * myz + q) * nafd + de;
                                            blocks[d][(t, s)] = coef;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Mor { src, tgt, blocks }
    }

    pub fn assoc_inv(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor {
        self.assoc(x, y, z).dagger()
    }

    /// `λ_X : 1 ⊗ X → X`.
    pub fn lunit(&self, x: &Obj) -> Mor {
        let src = self.tensor_obj(&self.unit(), x);
        debug_assert_eq!(src.mult, x.mult);
        self.id(x).cast(&src, x)
    }

    /// `ρ_X : X ⊗ 1 → X`.
    pub fn runit(&self, x: &Obj) -> Mor {
        let src = self.tensor_obj(x, &self.unit());
        debug_assert_eq!(src.mult, x.mult);
        self.id(x).cast(&src, x)
    }

    pub fn dual_obj(&self, x: &Obj) -> Obj {
        let mut mult = vec![0; self.rank()];
        for (a, &m) in x.mult.iter().enumerate() {
            mult[self.data.dual[a]] = m;
        }
        Obj::new(mult, &format!("{}^∨", x.tag))
    }

    /// `ev_X : X^∨ ⊗ X → 1`.
    pub fn ev(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(&xd, x);
        let src = Obj::new(l.dims.clone(), &format!("({}⊗{})", xd.tag, x.tag));
        let mut out = self.zero_mor(&src, &self.unit());
        for (a, &m) in x.mult.iter().enumerate() {
            let ad = self.data.dual[a];
            let u = self.data.units[self.data.target[a]];
            let n = self.n(ad, a, u);
            for i in 0..m {
                let col = l.at(u, ad, a) + (i * m + i) * n;
                out.blocks[u][(0, col)] = self.udf.ev[a];
            }
        }
        out
    }

    /// `coev_X : 1 → X ⊗ X^∨`.
    pub fn coev(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(x, &xd);
        let tgt = Obj::new(l.dims.clone(), &format!("({}⊗{})", x.tag, xd.tag));
        let mut out = self.zero_mor(&self.unit(), &tgt);
        for (a, &m) in x.mult.iter().enumerate() {
            let ad = self.data.dual[a];
            let u = self.data.units[self.data.source[a]];
            let n = self.n(a, ad, u);
            for i in 0..m {
                let row = l.at(u, a, ad) + (i * m + i) * n;
                out.blocks[u][(row, 0)] = self.udf.coev[a];
            }
        }
        out
    }

    /// Per-sheet scalars of an endomorphism of `1`.
    pub fn unit_scalars(&self, f: &Mor) -> Vec<Complex64> {
        self.data.units.iter().map(|&u| f.blocks[u][(0, 0)]).collect()
    }

    /// `coev_X† (f ⊗ id) coev_X`.
    pub fn tr_l(&self, f: &Mor) -> Vec<Complex64> {
        let x = &f.src;
        let co = self.coev(x);
        let mid = self.tensor(f, &self.id(&self.dual_obj(x)));
        self.unit_scalars(&co.dagger().after(&mid.after(&co)))
    }

    /// `ev_X (id ⊗ f) ev_X†`.
    pub fn tr_r(&self, f: &Mor) -> Vec<Complex64> {
        let x = &f.src;
        let e = self.ev(x);
        let mid = self.tensor(&self.id(&self.dual_obj(x)), f);
        self.unit_scalars(&e.after(&mid.after(&e.dagger())))
    }

    pub fn psi_of(&self, v: &[Complex64]) -> Complex64 {
        v.iter().zip(&self.udf.psi).map(|(z, &p)| z * p).sum()
    }

    /// `Tr^C(f) = Σ_c d_c tr(f_c)`.
    pub fn trace(&self, f: &Mor) -> Complex64 {
        f.blocks.iter().zip(&self.udf.dims).map(|(b, &d)| b.trace() * d).sum()
    }

    /// `ψ(f)` for an endomorphism of `1`.
    pub fn psi_unit(&self, f: &Mor) -> Complex64 {
        self.psi_of(&self.unit_scalars(f))
    }

    /// Direct sum with its inclusion isometries.
    pub fn oplus(&self, xs: &[Obj], tag: &str) -> (Obj, Vec<Mor>) {
        let r = self.rank();
        let mut mult = vec![0; r];
        for x in xs {
            for (m, &k) in mult.iter_mut().zip(&x.mult) {
                *m += k;
            }
        }
        let sum = Obj::new(mult, tag);
        let mut offsets = vec![0; r];
        let mut incs = Vec::with_capacity(xs.len());
        for x in xs {
            let mut inc = self.zero_mor(x, &sum);
            for a in 0..r {
                for i in 0..x.mult[a] {
                    inc.blocks[a][(offsets[a] + i, i)] = c(1.0);
                }
                offsets[a] += x.mult[a];
            }
            incs.push(inc);
        }
        (sum, incs)
    }

    /// Split an orthogonal projection `p = V V†`, returning `V : image → X`.
    pub fn split(&self, p: &Mor, tag: &str, tol: &Tolerance) -> Result<Mor, FusionError> {
        let mut blocks = Vec::with_capacity(self.rank());
        for b in &p.blocks {
            blocks.push(split_projection(b, tol).map_err(|e| FusionError::Numeric(e.to_string()))?);
        }
        let img = Obj::new(blocks.iter().map(|b| b.ncols()).collect(), tag);
        Ok(Mor {
            src: img,
            tgt: p.tgt.clone(),
            blocks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::bundled;

    #[test]
    fn fibonacci_tensor_and_assoc_unitary() {
        let cat = Category::new(bundled::fibonacci(), &[1.0]).unwrap();
        let t = cat.simple(1);
        let tt = cat.tensor_obj(&t, &t);
        assert_eq!(tt.mult, vec![1, 1]);
        let a = cat.assoc(&t, &t, &t);
        let d = a.dagger().after(&a).sub(&cat.id(&a.src)).norm();
        assert!(d < 1e-12);
    }

    #[test]
    fn zigzag_fibonacci() {
        let cat = Category::new(bundled::fibonacci(), &[1.0]).unwrap();
        let x = cat.obj(vec![1, 2], "X");
        let xd = cat.dual_obj(&x);
        let z = cat
            .runit(&x)
            .after(&cat.tensor(&cat.id(&x), &cat.ev(&x)))
            .after(&cat.assoc(&x, &xd, &x))
            .after(&cat.tensor(&cat.coev(&x), &cat.id(&x)))
            .after(&cat.lunit(&x).dagger());
        assert!(z.sub(&cat.id(&x)).norm() < 1e-12);
    }

    #[test]
    #[should_panic(expected = "composing through")]
    fn bracketing_mistake_is_caught() {
        let cat = Category::new(bundled::fibonacci(), &[1.0]).unwrap();
        let t = cat.simple(1);
        let a = cat.assoc(&t, &t, &t);
        let _ = a.after(&a);
    }

    #[test]
    fn flatten_round_trip() {
        let cat = Category::new(bundled::ising(), &[1.0]).unwrap();
        let x = cat.obj(vec![1, 2, 0], "X");
        let y = cat.obj(vec![2, 1, 1], "Y");
        let f = cat.random_mor(&mut sample::rng(3), &x, &y);
        let g = Mor::unflatten(&x, &y, &f.flatten());
        assert!(g.sub(&f).norm() == 0.0);
        assert_eq!(Mor::flat_len(&x, &y), 4);
    }
}
