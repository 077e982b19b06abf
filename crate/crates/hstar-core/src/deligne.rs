//! The ladder model of the relative Deligne product `M ⊠_C N`.
//!
//! `M` is realized as left `A`-modules in `C` (a right `C`-module through `m ◁ c = m ⊗ c`)
//! and `N` as right `B`-modules (a left `C`-module through `c ▷ n = c ⊗ n`). With `A = 1`
//! or `B = 1` the corresponding side is `C` itself.
//!
//! A ladder morphism `m₁ ⊠ n₁ → m₂ ⊠ n₂` is a finite sum of terms `f ⊗ g` with
//! `f : m₁ → m₂ ◁ c` and `g : c ▷ n₁ → n₂` for simple `c`.

use crate::fusion::{Category, Mor, Obj};
use crate::intalg::{
    bimodule_homs, left_module_trace, module_category, module_trace, simple_left_modules, AlgebraObject, Bimodule,
    IntAlgError,
};
use crate::numcore::{CMatrix, Tolerance};
use crate::sample;
use num_complex::Complex64;
use serde::Serialize;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeligneError {
    #[error("module categories over different middle categories: {0}")]
    MixedMiddleCategory(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    IntAlg(#[from] IntAlgError),
}

impl DeligneError {
    pub fn axiom(&self) -> &'static str {
        match self {
            DeligneError::MixedMiddleCategory(_) => "middle category",
            DeligneError::ShapeMismatch(_) => "schema",
            DeligneError::IntAlg(e) => e.axiom(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LadderObject {
    pub label: String,
    /// Left `A`-module, an `A`-`1` bimodule.
    pub m: Bimodule,
    /// Right `B`-module, a `1`-`B` bimodule.
    pub n: Bimodule,
}

#[derive(Clone, Debug)]
pub struct LadderTerm {
    pub c: usize,
    /// `m₁ → m₂ ⊗ c`.
    pub f: Mor,
    /// `c ⊗ n₁ → n₂`.
    pub g: Mor,
}

#[derive(Clone, Debug)]
pub struct LadderHom {
    pub src: LadderObject,
    pub tgt: LadderObject,
    pub terms: Vec<LadderTerm>,
}

/// Idempotent-completed object: a ladder object with a projection.
#[derive(Clone, Debug)]
pub struct CompletedObject {
    pub base: LadderObject,
    pub projection: LadderHom,
}

fn same_middle(x: &Category, y: &Category) -> bool {
    x.data.simples == y.data.simples
        && x.data.units == y.data.units
        && x.data.dual == y.data.dual
        && x.udf.psi == y.udf.psi
        && x.udf.dims == y.udf.dims
}

fn same_bimodule(x: &Bimodule, y: &Bimodule) -> bool {
    x.obj.mult == y.obj.mult
        && x.lam.sub(&y.lam.cast(&x.lam.src, &x.lam.tgt)).norm() < 1e-12
        && x.rho.sub(&y.rho.cast(&x.rho.src, &x.rho.tgt)).norm() < 1e-12
}

/// The ladder category for left `A`-modules against right `B`-modules.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub cat: Rc<Category>,
    pub a: AlgebraObject,
    pub b: AlgebraObject,
    binv_a: Mor,
    binv_b: Mor,
}

impl Ladder {
    pub fn new(a: &AlgebraObject, b: &AlgebraObject, tol: &Tolerance) -> Result<Self, DeligneError> {
        if !same_middle(&a.cat, &b.cat) {
            return Err(DeligneError::MixedMiddleCategory(format!(
                "{:?} vs {:?}",
                a.cat.data.simples, b.cat.data.simples
            )));
        }
        Ok(Ladder {
            cat: a.cat.clone(),
            a: a.clone(),
            b: b.clone(),
            binv_a: a.dressed_unit(-1.0, tol)?,
            binv_b: b.dressed_unit(-1.0, tol)?,
        })
    }

    /// `C ⊠_C C`.
    pub fn regular(cat: Rc<Category>) -> Self {
        let one = AlgebraObject::trivial(cat.clone());
        let id = cat.id(&cat.unit());
        Ladder {
            cat,
            a: one.clone(),
            b: one,
            binv_a: id.clone(),
            binv_b: id,
        }
    }

    pub fn object(&self, label: &str, m: &Bimodule, n: &Bimodule) -> Result<LadderObject, DeligneError> {
        if !same_middle(&m.left.cat, &self.cat) || !same_middle(&n.left.cat, &self.cat) {
            return Err(DeligneError::MixedMiddleCategory(label.to_string()));
        }
        if m.right.obj.mult != self.cat.unit().mult || n.left.obj.mult != self.cat.unit().mult {
            return Err(DeligneError::ShapeMismatch(format!("{label}: wrong module sides")));
        }
        Ok(LadderObject {
            label: label.to_string(),
            m: m.clone(),
            n: n.clone(),
        })
    }

    /// `x ⊠ y` for objects `x, y` of `C` when both sides are `C`.
    pub fn object_of(&self, x: &Obj, y: &Obj) -> LadderObject {
        let one = AlgebraObject::trivial(self.cat.clone());
        let side = |o: &Obj| {
            let cat = &self.cat;
            Bimodule::new(one.clone(), one.clone(), o.clone(), cat.lunit(o), cat.runit(o))
        };
        LadderObject {
            label: format!("{}⊠{}", x.tag, y.tag),
            m: side(x),
            n: side(y),
        }
    }

    /// Simple objects `m ⊠ n` over the simple modules of both sides.
    pub fn simple_objects(&self, tol: &Tolerance, seed: u64) -> Result<Vec<LadderObject>, DeligneError> {
        let ms = simple_left_modules(&self.a, tol, seed);
        let mc = module_category(&self.b, tol, seed)?;
        let mut out = Vec::new();
        for (lm, m) in &ms {
            for (ln, n) in mc.labels.iter().zip(&mc.simples) {
                let n = Bimodule::from_right(&self.b, n);
                out.push(self.object(&format!("{lm}⊠{ln}"), m, &n)?);
            }
        }
        Ok(out)
    }

    /// `m ◁ c = m ⊗ c` with `λ = (λ_m ⊗ id) α⁻¹`.
    pub fn act_right(&self, m: &Bimodule, x: &Obj) -> Bimodule {
        let cat = &self.cat;
        let obj = cat.tensor_obj(&m.obj, x);
        let lam = cat
            .tensor(&m.lam, &cat.id(x))
            .after(&cat.assoc_inv(&m.left.obj, &m.obj, x));
        let rho = cat.runit(&obj);
        Bimodule::new(m.left.clone(), m.right.clone(), obj, lam, rho)
    }

    /// `c ▷ n = c ⊗ n` with `ρ = (id ⊗ ρ_n) α`.
    pub fn act_left(&self, x: &Obj, n: &Bimodule) -> Bimodule {
        let cat = &self.cat;
        let obj = cat.tensor_obj(x, &n.obj);
        let lam = cat.lunit(&obj);
        let rho = cat
            .tensor(&cat.id(x), &n.rho)
            .after(&cat.assoc(x, &n.obj, &n.right.obj));
        Bimodule::new(n.left.clone(), n.right.clone(), obj, lam, rho)
    }

    /// Orthonormal bases of `M(m₁ → m₂ ◁ c)` and `N(c ▷ n₁ → n₂)`.
    pub fn component_bases(&self, src: &LadderObject, tgt: &LadderObject, c: usize) -> (Vec<Mor>, Vec<Mor>) {
        let x = self.cat.simple(c);
        let fb = bimodule_homs(&src.m, &self.act_right(&tgt.m, &x));
        if fb.is_empty() {
            return (fb, Vec::new());
        }
        let gb = bimodule_homs(&self.act_left(&x, &src.n), &tgt.n);
        (fb, gb)
    }

    pub fn hom_dim(&self, src: &LadderObject, tgt: &LadderObject) -> usize {
        (0..self.cat.rank())
            .map(|c| {
                let (fb, gb) = self.component_bases(src, tgt, c);
                fb.len() * gb.len()
            })
            .sum()
    }

    pub fn random_hom(&self, rng: &mut sample::SampleRng, src: &LadderObject, tgt: &LadderObject) -> LadderHom {
        let mut terms = Vec::new();
        for c in 0..self.cat.rank() {
            let (fb, gb) = self.component_bases(src, tgt, c);
            if fb.is_empty() {
                continue;
            }
            for g in gb {
                let mut f = fb[0].scale(Complex64::new(0.0, 0.0));
                for b in &fb {
                    f = f.add(&b.scale(sample::complex(rng)));
                }
                terms.push(LadderTerm { c, f, g });
            }
        }
        LadderHom {
            src: src.clone(),
            tgt: tgt.clone(),
            terms,
        }
    }

    fn unit_piece(&self, j: usize) -> (usize, Mor) {
        let u = self.cat.data.units[j];
        let mut p = self.cat.zero_mor(&self.cat.unit(), &self.cat.simple(u));
        p.blocks[u][(0, 0)] = Complex64::new(1.0, 0.0);
        (u, p)
    }

    pub fn identity(&self, x: &LadderObject) -> LadderHom {
        let cat = &self.cat;
        let mut terms = Vec::new();
        for j in 0..cat.data.sheets() {
            let (u, p) = self.unit_piece(j);
            let f = cat
                .tensor(&cat.id(&x.m.obj), &p)
                .after(&cat.runit(&x.m.obj).dagger());
            let g = cat.lunit(&x.n.obj).after(&cat.tensor(&p.dagger(), &cat.id(&x.n.obj)));
            if f.norm() > 0.0 && g.norm() > 0.0 {
                terms.push(LadderTerm { c: u, f, g });
            }
        }
        LadderHom {
            src: x.clone(),
            tgt: x.clone(),
            terms,
        }
    }

    fn check_match(&self, x: &LadderObject, y: &LadderObject) -> Result<(), DeligneError> {
        if same_bimodule(&x.m, &y.m) && same_bimodule(&x.n, &y.n) {
            Ok(())
        } else {
            Err(DeligneError::ShapeMismatch(format!("{} vs {}", x.label, y.label)))
        }
    }

    /// Rewrite the terms over the orthonormal component bases, one term per `N`-basis vector.
    pub fn normalize(&self, h: &LadderHom) -> LadderHom {
        let mut terms = Vec::new();
        for c in 0..self.cat.rank() {
            if !h.terms.iter().any(|t| t.c == c) {
                continue;
            }
            let (fb, gb) = self.component_bases(&h.src, &h.tgt, c);
            let coeffs = component_coefficients(h, c, &fb, &gb);
            for (s, g) in gb.iter().enumerate() {
                let mut f = self.cat.zero_mor(&fb[0].src, &fb[0].tgt);
                for (r, b) in fb.iter().enumerate() {
                    f = f.add(&b.scale(coeffs[(r, s)]));
                }
                if f.norm() > 0.0 {
                    terms.push(LadderTerm { c, f, g: g.clone() });
                }
            }
        }
        LadderHom {
            src: h.src.clone(),
            tgt: h.tgt.clone(),
            terms,
        }
    }

    /// `G ∘ F`: stack the ladders and fuse the two middle strings through trivalent vertices.
    pub fn compose(&self, g: &LadderHom, f: &LadderHom) -> Result<LadderHom, DeligneError> {
        self.check_match(&f.tgt, &g.src)?;
        let cat = &self.cat;
        let (m2, m3) = (&f.tgt.m.obj, &g.tgt.m.obj);
        let (n1, n2, n3) = (&f.src.n.obj, &f.tgt.n.obj, &g.tgt.n.obj);
        let mut terms = Vec::new();
        for tf in &f.terms {
            let a = tf.c;
            let xa = cat.simple(a);
            for tg in &g.terms {
                let b = tg.c;
                let xb = cat.simple(b);
                let f2 = tg.f.cast(m2, &cat.tensor_obj(m3, &xb));
                let g2 = tg.g.cast(&cat.tensor_obj(&xb, n2), n3);
                let top = cat
                    .assoc(m3, &xb, &xa)
                    .after(&cat.tensor(&f2, &cat.id(&xa)))
                    .after(&tf.f);
                let bottom = g2
                    .after(&cat.tensor(&cat.id(&xb), &tf.g))
                    .after(&cat.assoc(&xb, &xa, n1));
                for e in 0..cat.rank() {
                    for al in 0..cat.n(b, a, e) {
                        let v = cat.vertex(b, a, e, al);
                        let fe = cat.tensor(&cat.id(m3), &v.dagger()).after(&top);
                        let ge = bottom.after(&cat.tensor(&v, &cat.id(n1)));
                        terms.push(LadderTerm { c: e, f: fe, g: ge });
                    }
                }
            }
        }
        Ok(self.normalize(&LadderHom {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            terms,
        }))
    }

    /// Componentwise dagger with the middle string bent back by `coev` on `M` and `ev` on `N`.
    pub fn dagger(&self, h: &LadderHom) -> LadderHom {
        let cat = &self.cat;
        let (m1, m2) = (&h.src.m.obj, &h.tgt.m.obj);
        let (n1, n2) = (&h.src.n.obj, &h.tgt.n.obj);
        let terms = h
            .terms
            .iter()
            .map(|t| {
                let x = cat.simple(t.c);
                let cd = cat.data.dual[t.c];
                let xd = cat.dual_obj(&x);
                let f = cat
                    .tensor(&t.f.dagger(), &cat.id(&xd))
                    .after(&cat.assoc_inv(m2, &x, &xd))
                    .after(&cat.tensor(&cat.id(m2), &cat.coev(&x)))
                    .after(&cat.runit(m2).dagger());
                let g = cat
                    .lunit(n1)
                    .after(&cat.tensor(&cat.ev(&x), &cat.id(n1)))
                    .after(&cat.assoc_inv(&xd, &x, n1))
                    .after(&cat.tensor(&cat.id(&xd), &t.g.dagger()));
                let xc = cat.simple(cd);
                LadderTerm {
                    c: cd,
                    f: f.cast(m2, &cat.tensor_obj(m1, &xc)),
                    g: g.cast(&cat.tensor_obj(&xc, n2), n1),
                }
            })
            .collect();
        LadderHom {
            src: h.tgt.clone(),
            tgt: h.src.clone(),
            terms,
        }
    }

    /// `Σ_j d_{1_j}⁻¹ Tr^M(f_j) Tr^N(g_j)` over the components with `c = 1_j`.
    pub fn trace(&self, h: &LadderHom) -> Complex64 {
        let cat = &self.cat;
        let (m, n) = (&h.src.m, &h.src.n);
        let mut out = Complex64::new(0.0, 0.0);
        for j in 0..cat.data.sheets() {
            let (u, p) = self.unit_piece(j);
            for t in h.terms.iter().filter(|t| t.c == u) {
                let f = cat
                    .runit(&m.obj)
                    .after(&cat.tensor(&cat.id(&m.obj), &p.dagger()))
                    .after(&t.f.cast(&m.obj, &cat.tensor_obj(&m.obj, &cat.simple(u))));
                let g = t
                    .g
                    .cast(&cat.tensor_obj(&cat.simple(u), &n.obj), &n.obj)
                    .after(&cat.tensor(&p, &cat.id(&n.obj)))
                    .after(&cat.lunit(&n.obj).dagger());
                out += self.trace_m(m, &f) * self.trace_n(n, &g) / cat.udf.dims[u];
            }
        }
        out
    }

    pub fn trace_m(&self, m: &Bimodule, f: &Mor) -> Complex64 {
        left_module_trace(&self.a, &self.binv_a, m, f)
    }

    pub fn trace_n(&self, n: &Bimodule, g: &Mor) -> Complex64 {
        module_trace(&self.b, &self.binv_b, &n.as_right_module(), g)
    }

    /// Image `Σ (id ⊗ g) α (f ⊗ id) : m₁ ⊗ n₁ → m₂ ⊗ n₂` under the realization functor.
    pub fn realize(&self, h: &LadderHom) -> Mor {
        let cat = &self.cat;
        let (m1, m2) = (&h.src.m.obj, &h.tgt.m.obj);
        let (n1, n2) = (&h.src.n.obj, &h.tgt.n.obj);
        let mut out = cat.zero_mor(&cat.tensor_obj(m1, n1), &cat.tensor_obj(m2, n2));
        for t in &h.terms {
            let x = cat.simple(t.c);
            let f = t.f.cast(m1, &cat.tensor_obj(m2, &x));
            let g = t.g.cast(&cat.tensor_obj(&x, n1), n2);
            let r = cat
                .tensor(&cat.id(m2), &g)
                .after(&cat.assoc(m2, &x, n1))
                .after(&cat.tensor(&f, &cat.id(n1)));
            out = out.add(&r);
        }
        out
    }

    /// Canonical coordinates `Σ vec(f) vec(g)ᵀ` per simple `c`.
    pub fn coordinates(&self, h: &LadderHom) -> Vec<CMatrix> {
        (0..self.cat.rank())
            .map(|c| {
                let mut acc: Option<CMatrix> = None;
                for t in h.terms.iter().filter(|t| t.c == c) {
                    let (fv, gv) = (t.f.flatten(), t.g.flatten());
                    let f = CMatrix::from_vec(fv.len(), 1, fv);
                    let g = CMatrix::from_vec(gv.len(), 1, gv);
                    let k = &f * g.transpose();
                    acc = Some(match acc {
                        Some(a) => a + k,
                        None => k,
                    });
                }
                acc.unwrap_or_else(|| CMatrix::zeros(0, 0))
            })
            .collect()
    }

    /// Frobenius distance between the canonical coordinates of two parallel ladder morphisms.
    pub fn distance(&self, x: &LadderHom, y: &LadderHom) -> f64 {
        let (cx, cy) = (self.coordinates(x), self.coordinates(y));
        cx.iter()
            .zip(&cy)
            .map(|(a, b)| match (a.nrows(), b.nrows()) {
                (0, 0) => 0.0,
                (0, _) => b.norm_squared(),
                (_, 0) => a.norm_squared(),
                _ => (a - b).norm_squared(),
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, h: &LadderHom, z: Complex64) -> LadderHom {
        let mut out = h.clone();
        for t in out.terms.iter_mut() {
            t.f = t.f.scale(z);
        }
        out
    }

    pub fn add(&self, x: &LadderHom, y: &LadderHom) -> LadderHom {
        let mut out = x.clone();
        out.terms.extend(y.terms.iter().cloned());
        out
    }

    /// `Tr(p F p)` on a completed object.
    pub fn completed_trace(&self, x: &CompletedObject, h: &LadderHom) -> Result<Complex64, DeligneError> {
        let php = self.compose(&x.projection, &self.compose(h, &x.projection)?)?;
        Ok(self.trace(&php))
    }

    /// `‖p² − p‖ + ‖p† − p‖` in canonical coordinates.
    pub fn projection_defect(&self, x: &CompletedObject) -> Result<f64, DeligneError> {
        let p = &x.projection;
        let pp = self.compose(p, p)?;
        Ok(self.distance(&pp, p) + self.distance(&self.dagger(p), p))
    }
}

fn component_coefficients(h: &LadderHom, c: usize, fb: &[Mor], gb: &[Mor]) -> CMatrix {
    let mut out = CMatrix::zeros(fb.len(), gb.len());
    for t in h.terms.iter().filter(|t| t.c == c) {
        let fv = t.f.flatten();
        let gv = t.g.flatten();
        let pf: Vec<Complex64> = fb.iter().map(|b| inner(&b.flatten(), &fv)).collect();
        let pg: Vec<Complex64> = gb.iter().map(|b| inner(&b.flatten(), &gv)).collect();
        for (r, x) in pf.iter().enumerate() {
            for (s, y) in pg.iter().enumerate() {
                out[(r, s)] += x * y;
            }
        }
    }
    out
}

/// The common sheet of the simple summands of `x` under `side`, if there is exactly one.
fn sheet_of(x: &Obj, side: &[usize]) -> Option<usize> {
    let mut it = x.mult.iter().enumerate().filter(|(_, &k)| k > 0).map(|(a, _)| side[a]);
    let first = it.next()?;
    it.all(|s| s == first).then_some(first)
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn ladder_hom_dim(ladder: &Ladder, src: &LadderObject, tgt: &LadderObject) -> Result<usize, DeligneError> {
    for x in [src, tgt] {
        if !same_middle(&x.m.left.cat, &ladder.cat) || !same_middle(&x.n.left.cat, &ladder.cat) {
            return Err(DeligneError::MixedMiddleCategory(x.label.clone()));
        }
    }
    Ok(ladder.hom_dim(src, tgt))
}

pub fn ladder_compose(ladder: &Ladder, g: &LadderHom, f: &LadderHom) -> Result<LadderHom, DeligneError> {
    ladder.compose(g, f)
}

pub fn ladder_trace(ladder: &Ladder, h: &LadderHom) -> Complex64 {
    ladder.trace(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryCertificate {
    pub accept: bool,
    pub samples: usize,
    pub max_gap: f64,
}

/// Compare the ladder trace on `m ⊠ c` with the trace of the image `m ⊗ c` in `M`
/// for random endomorphisms, cycling over simple `m` and simple `c`.
pub fn right_action_isometry(
    a: &AlgebraObject,
    samples: usize,
    tol: &Tolerance,
    seed: u64,
) -> Result<IsometryCertificate, DeligneError> {
    let cat = a.cat.clone();
    let ladder = Ladder::new(a, &AlgebraObject::trivial(cat.clone()), tol)?;
    let ms = simple_left_modules(a, tol, seed);
    let one = AlgebraObject::trivial(cat.clone());
    let mut pairs = Vec::new();
    for (lm, m) in &ms {
        for c in 0..cat.rank() {
            let x = cat.simple(c);
            let n = Bimodule::new(one.clone(), one.clone(), x.clone(), cat.lunit(&x), cat.runit(&x));
            pairs.push(ladder.object(&format!("{lm}⊠{}", cat.data.simples[c]), m, &n)?);
        }
    }
    let mut rng = sample::rng(seed);
    let mut gap: f64 = 0.0;
    let mut accept = true;
    for s in 0..samples {
        let x = &pairs[s % pairs.len()];
        let h = ladder.random_hom(&mut rng, x, x);
        let lt = ladder.trace(&h);
        let image = ladder.act_right(&x.m, &x.n.obj);
        let img = ladder.realize(&h).cast(&image.obj, &image.obj);
        let mt = ladder.trace_m(&image, &img);
        let g = (lt - mt).norm();
        gap = gap.max(g);
        accept &= tol.accepts(g, lt.norm().max(mt.norm()));
    }
    Ok(IsometryCertificate {
        accept,
        samples,
        max_gap: gap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderCertificate {
    pub accept: bool,
    pub objects: usize,
    pub samples: usize,
    /// `|Tr(id_{m⊠n}) − d_m d_n / d_{1_j}|`.
    pub identity_trace_residual: f64,
    pub traciality_residual: f64,
    /// `Tr(F† F) ≥ 0` violations, as the most negative real part or any imaginary part.
    pub positivity_residual: f64,
    pub dagger_residual: f64,
    /// Functoriality of the realization `m ⊠ n ↦ m ⊗ n`.
    pub realization_residual: f64,
    pub identity_residual: f64,
    pub hom_dims: Vec<(String, String, usize)>,
}

/// Sampled checks of the ladder category on its simple objects.
pub fn check_ladder(ladder: &Ladder, samples: usize, tol: &Tolerance, seed: u64) -> Result<LadderCertificate, DeligneError> {
    let cat = &ladder.cat;
    let objs = ladder.simple_objects(tol, seed)?;
    let mut rng = sample::rng(seed ^ 0x5eed);
    let mut hom_dims = Vec::new();
    let mut id_trace: f64 = 0.0;
    let mut ident: f64 = 0.0;
    for x in &objs {
        let dm = ladder.trace_m(&x.m, &cat.id(&x.m.obj)).re;
        let dn = ladder.trace_n(&x.n, &cat.id(&x.n.obj)).re;
        let expect: f64 = (0..cat.data.sheets())
            .map(|j| {
                let u = cat.data.units[j];
                if sheet_of(&x.m.obj, &cat.data.target) == Some(j) && sheet_of(&x.n.obj, &cat.data.source) == Some(j) {
                    dm * dn / cat.udf.dims[u]
                } else {
                    0.0
                }
            })
            .sum();
        let got = ladder.trace(&ladder.identity(x));
        id_trace = id_trace.max((got - Complex64::new(expect, 0.0)).norm());
        for y in &objs {
            hom_dims.push((x.label.clone(), y.label.clone(), ladder.hom_dim(x, y)));
        }
    }
    let mut tracial: f64 = 0.0;
    let mut positive: f64 = 0.0;
    let mut dag: f64 = 0.0;
    let mut real: f64 = 0.0;
    let mut used = 0;
    let live: Vec<&LadderObject> = objs.iter().filter(|x| !ladder.identity(x).terms.is_empty()).collect();
    if !live.is_empty() {
        for s in 0..samples {
            let x = live[s % live.len()];
            let y = live[(s * 7 + 3) % live.len()];
            let z = live[(s * 5 + 1) % live.len()];
            let f = ladder.random_hom(&mut rng, x, y);
            let g = ladder.random_hom(&mut rng, y, x);
            let h = ladder.random_hom(&mut rng, y, z);
            let fg = ladder.trace(&ladder.compose(&g, &f)?);
            let gf = ladder.trace(&ladder.compose(&f, &g)?);
            tracial = tracial.max((fg - gf).norm() / (1.0 + fg.norm()));
            let ff = ladder.trace(&ladder.compose(&ladder.dagger(&f), &f)?);
            positive = positive.max((-ff.re).max(0.0)).max(ff.im.abs());
            let hf = ladder.compose(&h, &f)?;
            let lhs = ladder.dagger(&hf);
            let rhs = ladder.compose(&ladder.dagger(&f), &ladder.dagger(&h))?;
            dag = dag.max(ladder.distance(&lhs, &rhs));
            dag = dag.max(ladder.distance(&ladder.dagger(&ladder.dagger(&f)), &f));
            let r = ladder.realize(&hf).sub(&ladder.realize(&h).after(&ladder.realize(&f)));
            real = real.max(r.norm());
            let idf = ladder.compose(&ladder.identity(y), &f)?;
            let fid = ladder.compose(&f, &ladder.identity(x))?;
            ident = ident.max(ladder.distance(&idf, &f)).max(ladder.distance(&fid, &f));
            used += 1;
        }
    }
    let accept = [id_trace, tracial, positive, dag, real, ident].iter().all(|&r| tol.accepts(r, 1.0));
    Ok(LadderCertificate {
        accept,
        objects: objs.len(),
        samples: used,
        identity_trace_residual: id_trace,
        traciality_residual: tracial,
        positivity_residual: positive,
        dagger_residual: dag,
        realization_residual: real,
        identity_residual: ident,
        hom_dims,
    })
}

/// `|Tr_{m ⊠ (n ⊗ d)}(F) − Tr_{m ⊠ n}(ptr_d F)|` for random `F`, closing `d` on the right
/// of the `N` side with `coev_d` and `coev_d†`. Both sides are `C`.
pub fn right_module_trace_residual(ladder: &Ladder, samples: usize, seed: u64) -> f64 {
    let cat = ladder.cat.clone();
    let r = cat.rank();
    let mut rng = sample::rng(seed);
    let mut worst: f64 = 0.0;
    for s in 0..samples {
        let (m, n, d) = (s % r, (s / r) % r, (s * 3 + 1) % r);
        let (xm, xn, xd) = (cat.simple(m), cat.simple(n), cat.simple(d));
        let nd = cat.tensor_obj(&xn, &xd);
        let big = ladder.object_of(&xm, &nd);
        if ladder.identity(&big).terms.is_empty() {
            continue;
        }
        let small = ladder.object_of(&xm, &xn);
        let h = ladder.random_hom(&mut rng, &big, &big);
        let dd = cat.dual_obj(&xd);
        let co = cat.coev(&xd);
        let terms = h
            .terms
            .iter()
            .map(|t| {
                let xc = cat.simple(t.c);
                let cn = cat.tensor_obj(&xc, &xn);
                let g = t.g.cast(&cat.tensor_obj(&xc, &nd), &nd);
                let p = cat
                    .runit(&xn)
                    .after(&cat.tensor(&cat.id(&xn), &co.dagger()))
                    .after(&cat.assoc(&xn, &xd, &dd))
                    .after(&cat.tensor(&g, &cat.id(&dd)))
                    .after(&cat.tensor(&cat.assoc(&xc, &xn, &xd), &cat.id(&dd)))
                    .after(&cat.assoc_inv(&cn, &xd, &dd))
                    .after(&cat.tensor(&cat.id(&cn), &co))
                    .after(&cat.runit(&cn).dagger());
                LadderTerm {
                    c: t.c,
                    f: t.f.clone(),
                    g: p,
                }
            })
            .collect();
        let closed = LadderHom {
            src: small.clone(),
            tgt: small,
            terms,
        };
        let a = ladder.trace(&h);
        let b = ladder.trace(&closed);
        worst = worst.max((a - b).norm() / (1.0 + a.norm()));
    }
    worst
}
