//! Presentations whose objects are lists of sheets of a multifusion category.
//!
//! An object `a = (s_1, …, s_r)` stands for `1_{s_1} ⊞ … ⊞ 1_{s_r}`. Hom
//! categories between `a` and `b` are read off the linking category
//! `M_{a++b}(C)`: a 1-morphism `a → b` is an object supported on simples
//! `(p, q, c)` with `p` in the `a` part and `q` in the `b` part.

use super::matrix::{matrix_category, matrix_simples};
use super::Hilb3Error;
use crate::fusion::{validate, Category, FusionData, Mor, Obj, ValidationCertificate};
use crate::hilb2::TwoHilbertSpace;
use crate::intalg::unitary_residual;
use crate::numcore::{c, CMatrix, Tolerance};
use crate::sample;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::rc::Rc;

#[derive(Clone, Debug)]
pub struct Pre3HilbPresentation {
    /// Multifusion category carrying the weight `ψ`.
    pub base: Rc<Category>,
    /// Each object as a list of sheets of `base`.
    pub objects: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

/// `M_{a++b}(C)` with the weight copied from `C`.
#[derive(Clone, Debug)]
pub struct Linking {
    pub cat: Rc<Category>,
    pub sheets: Vec<usize>,
    /// Number of sheets in the `a` part.
    pub left: usize,
    /// Each simple as `(p, q, c)` with `c` a simple of the base.
    pub triples: Vec<(usize, usize, usize)>,
    /// `true` for simples whose base simple is a unit.
    pub unit_type: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsometryKind {
    Isometry,
    Coisometry,
    IsometricEquivalence,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryCertificate {
    pub kind: IsometryKind,
    /// Unitarity defect of `coev_X : 1_a → X ⊗ X^∨`.
    pub coev_defect: f64,
    /// Unitarity defect of `ev_X : X^∨ ⊗ X → 1_b`.
    pub ev_defect: f64,
    /// `‖ev† ev − id‖`, which vanishes whenever `coev` is unitary.
    pub ev_isometry_defect: f64,
    /// `‖coev† coev − id‖`, which vanishes whenever `ev` is unitary.
    pub coev_isometry_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkingCertificate {
    pub labels: Vec<String>,
    pub psi: Vec<f64>,
    pub components: usize,
    pub validation: ValidationCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomCertificate {
    pub samples: usize,
    /// Largest `|Ψ_b(left loop) − Ψ_a(right loop)|`, relative to `1 + |value|`.
    pub left_right_residual: f64,
    /// Largest gap between `ψ_q` and its reconstruction from `ψ_p` through a simple `p → q`.
    pub weight_reconstruction_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumCertificate {
    pub accept: bool,
    /// `‖Σ_j ev_j ev_j† − id_{1_t}‖` over the sheets of the sum.
    pub sum_defect: f64,
    /// `‖Σ_j coev_j† coev_j − id‖` on each summand, maximised.
    pub coev_defect: f64,
    /// `|Ψ_t(f) − Σ_j Ψ_{a_j}(coev_j† (id ⊗ f ⊗ id) coev_j)|` over samples.
    pub additivity_residual: f64,
    pub inclusions: Vec<IsometryKind>,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    pub label: String,
    pub sheet: usize,
    pub psi: f64,
    /// Classification of the inclusion `(s_p) → a`.
    pub kind: IsometryKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `‖Σ_p ev_p ev_p† − id_{1_a}‖`.
    pub sum_defect: f64,
}

fn category_on(base: &Category, sheets: &[usize]) -> Result<Rc<Category>, Hilb3Error> {
    let data = matrix_category(&base.data, sheets)?;
    let psi: Vec<f64> = sheets.iter().map(|&s| base.udf.psi[s]).collect();
    Ok(Rc::new(Category::new(data, &psi)?))
}

impl Pre3HilbPresentation {
    /// `B(C)`: one object `★` made of all sheets.
    pub fn delooping(base: Rc<Category>) -> Self {
        let k = base.data.sheets();
        Pre3HilbPresentation {
            base,
            objects: vec![(0..k).collect()],
            labels: vec!["★".into()],
        }
    }

    /// One object per sheet, labelled `★i`.
    pub fn by_sheets(base: Rc<Category>) -> Self {
        let k = base.data.sheets();
        Pre3HilbPresentation {
            base,
            objects: (0..k).map(|s| vec![s]).collect(),
            labels: (0..k).map(|s| format!("★{s}")).collect(),
        }
    }

    pub fn new(base: Rc<Category>, objects: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, Hilb3Error> {
        let k = base.data.sheets();
        if objects.len() != labels.len() {
            return Err(Hilb3Error::Invalid("one label per object".into()));
        }
        if let Some(bad) = objects.iter().flatten().find(|&&s| s >= k) {
            return Err(Hilb3Error::Invalid(format!("sheet {bad} out of range")));
        }
        Ok(Pre3HilbPresentation { base, objects, labels })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, label: &str) -> Result<usize, Hilb3Error> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Hilb3Error::UnknownObject(label.into()))
    }

    fn check(&self, a: usize) -> Result<&[usize], Hilb3Error> {
        self.objects
            .get(a)
            .map(|v| v.as_slice())
            .ok_or_else(|| Hilb3Error::UnknownObject(format!("#{a}")))
    }

    /// `Ψ_a` as a weight vector on the sheets of `a`.
    pub fn psi(&self, a: usize) -> Result<Vec<f64>, Hilb3Error> {
        Ok(self.check(a)?.iter().map(|&s| self.base.udf.psi[s]).collect())
    }

    /// `End(a)`; for `a` listing every sheet once in order this is `base` itself.
    pub fn end_category(&self, a: usize) -> Result<Rc<Category>, Hilb3Error> {
        let sheets = self.check(a)?;
        if sheets.iter().copied().eq(0..self.base.data.sheets()) {
            return Ok(self.base.clone());
        }
        category_on(&self.base, sheets)
    }

    /// The Hilbert direct sum of the listed objects, appended as a new object.
    pub fn boxplus(&mut self, parts: &[usize]) -> Result<usize, Hilb3Error> {
        let mut sheets = Vec::new();
        for &p in parts {
            sheets.extend_from_slice(self.check(p)?);
        }
        let label = if parts.is_empty() {
            "()".to_string()
        } else {
            parts.iter().map(|&p| self.labels[p].as_str()).collect::<Vec<_>>().join("⊞")
        };
        if let Some(i) = self.objects.iter().position(|o| *o == sheets) {
            return Ok(i);
        }
        self.objects.push(sheets);
        self.labels.push(label);
        Ok(self.objects.len() - 1)
    }

    pub fn linking(&self, a: usize, b: usize) -> Result<Linking, Hilb3Error> {
        let mut sheets = self.check(a)?.to_vec();
        let left = sheets.len();
        sheets.extend_from_slice(self.check(b)?);
        let cat = category_on(&self.base, &sheets)?;
        let triples = matrix_simples(&self.base.data, &sheets);
        let unit_type = triples.iter().map(|&(_, _, c)| self.base.data.units.contains(&c)).collect();
        Ok(Linking {
            cat,
            sheets,
            left,
            triples,
            unit_type,
        })
    }
}

impl Linking {
    /// Indices of the simples `a → b`.
    pub fn hom_simples(&self) -> Vec<usize> {
        let d = &self.cat.data;
        (0..d.rank())
            .filter(|&i| d.source[i] < self.left && d.target[i] >= self.left)
            .collect()
    }

    /// The identity-type simple from sheet `p` to sheet `q` (positions in `a++b`).
    pub fn unit_link(&self, p: usize, q: usize) -> Option<usize> {
        (0..self.triples.len()).find(|&i| self.unit_type[i] && self.triples[i].0 == p && self.triples[i].1 == q)
    }

    /// `1_a` (`left = true`) or `1_b` as a subobject of `1`, with its inclusion.
    pub fn part_unit(&self, left: bool) -> (Obj, Mor) {
        let cat = &self.cat;
        let d = &cat.data;
        let mut mult = vec![0; cat.rank()];
        for (p, &u) in d.units.iter().enumerate() {
            if (p < self.left) == left {
                mult[u] = 1;
            }
        }
        let obj = cat.obj(mult, if left { "1_a" } else { "1_b" });
        let mut inc = cat.zero_mor(&obj, &cat.unit());
        for (k, &m) in obj.mult.iter().enumerate() {
            if m == 1 {
                inc.blocks[k][(0, 0)] = c(1.0);
            }
        }
        (obj, inc)
    }

    fn supported_in_hom(&self, x: &Obj) -> bool {
        let hom = self.hom_simples();
        !x.is_zero() && x.mult.iter().enumerate().all(|(i, &m)| m == 0 || hom.contains(&i))
    }
}

pub fn linking_e1(x: &Pre3HilbPresentation, a: usize, b: usize, tol: &Tolerance) -> Result<LinkingCertificate, Hilb3Error> {
    let l = x.linking(a, b)?;
    let data: &FusionData = &l.cat.data;
    Ok(LinkingCertificate {
        labels: data.simples.clone(),
        psi: l.cat.udf.psi.clone(),
        components: data.components().len(),
        validation: validate(data, tol),
    })
}

pub(crate) fn classify(coev_unitary: bool, ev_unitary: bool) -> IsometryKind {
    match (coev_unitary, ev_unitary) {
        (true, true) => IsometryKind::IsometricEquivalence,
        (true, false) => IsometryKind::Isometry,
        (false, true) => IsometryKind::Coisometry,
        (false, false) => IsometryKind::Neither,
    }
}

pub(crate) fn id_defect(m: &Mor) -> f64 {
    let id = Mor {
        src: m.src.clone(),
        tgt: m.tgt.clone(),
        blocks: m.src.mult.iter().map(|&k| CMatrix::identity(k, k)).collect(),
    };
    m.sub(&id).norm()
}

/// Restricted `coev_X : 1_a → X ⊗ X^∨` and `ev_X : X^∨ ⊗ X → 1_b`.
fn duality_maps(l: &Linking, x: &Obj) -> Result<(Mor, Mor), Hilb3Error> {
    if !l.supported_in_hom(x) {
        return Err(Hilb3Error::MissingDualityData(format!("`{}` is not a nonzero 1-morphism a → b", x.tag)));
    }
    let cat = &l.cat;
    let (_, inc_a) = l.part_unit(true);
    let (_, inc_b) = l.part_unit(false);
    let coev = cat.coev(x).after(&inc_a);
    let ev = inc_b.dagger().after(&cat.ev(x));
    Ok((coev, ev))
}

/// Classify a 1-morphism `X : a → b` given as an object of the linking category.
pub fn certify_isometry_1mor(l: &Linking, x: &Obj, tol: &Tolerance) -> Result<IsometryCertificate, Hilb3Error> {
    let (coev, ev) = duality_maps(l, x)?;
    let coev_defect = unitary_residual(&coev);
    let ev_defect = unitary_residual(&ev);
    let scale = 1.0 + (x.total() as f64).sqrt();
    Ok(IsometryCertificate {
        kind: classify(tol.accepts(coev_defect, scale), tol.accepts(ev_defect, scale)),
        coev_defect,
        ev_defect,
        ev_isometry_defect: id_defect(&ev.dagger().after(&ev)),
        coev_isometry_defect: id_defect(&coev.dagger().after(&coev)),
    })
}

const HOM_SAMPLES: usize = 8;

/// The 2-Hilbert space `Hom(a, b)` with `Tr(f) = Ψ_b(ev (id ⊗ f) ev†)`, checked against `Ψ_a(coev† (f ⊗ id) coev)`.
pub fn hom_two_hilbert(
    x: &Pre3HilbPresentation,
    a: usize,
    b: usize,
    tol: &Tolerance,
    seed: u64,
) -> Result<(TwoHilbertSpace, HomCertificate), Hilb3Error> {
    let l = x.linking(a, b)?;
    let cat = &l.cat;
    let hom = l.hom_simples();
    let mut labels = Vec::with_capacity(hom.len());
    let mut dims = Vec::with_capacity(hom.len());
    let mut recon: f64 = 0.0;
    let psi = &cat.udf.psi;
    for &s in &hom {
        let x = cat.simple(s);
        let id = cat.id(&x);
        labels.push(cat.data.simples[s].clone());
        dims.push(cat.psi_of(&cat.tr_r(&id)).re);
        let (p, q) = (cat.data.source[s], cat.data.target[s]);
        let (coev, ev) = duality_maps(&l, &x)?;
        let through = eev_scalar(&coev.dagger().after(&coev), cat.data.units[p]).re * psi[p];
        let lam = eev_scalar(&ev.after(&ev.dagger()), cat.data.units[q]).re;
        recon = recon.max((through / lam - psi[q]).abs() / psi[q]);
    }
    let mut rng = sample::rng(seed);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    if !hom.is_empty() {
        for _ in 0..HOM_SAMPLES {
            let mut mult = vec![0; cat.rank()];
            for &s in &hom {
                mult[s] = rng.gen_range(0..3);
            }
            if mult.iter().all(|&m| m == 0) {
                mult[hom[0]] = 1;
            }
            let obj = cat.obj(mult, "X");
            let f = cat.random_mor(&mut rng, &obj, &obj);
            let left = cat.psi_of(&cat.tr_r(&f));
            let right = cat.psi_of(&cat.tr_l(&f));
            worst = worst.max((left - right).norm() / (1.0 + left.norm()));
            samples += 1;
        }
    }
    if !tol.accepts(worst, 1.0) {
        return Err(crate::fusion::FusionError::NotSpherical { residual: worst }.into());
    }
    let space = TwoHilbertSpace::new(labels, dims).map_err(|e| Hilb3Error::Invalid(e.to_string()))?;
    Ok((
        space,
        HomCertificate {
            samples,
            left_right_residual: worst,
            weight_reconstruction_residual: recon,
        },
    ))
}

/// Add every binary Hilbert direct sum of the existing objects.
pub fn hilbert_sum_completion(x: &Pre3HilbPresentation) -> Result<Pre3HilbPresentation, Hilb3Error> {
    let mut out = x.clone();
    let n = x.len();
    for i in 0..n {
        for j in 0..n {
            out.boxplus(&[i, j])?;
        }
    }
    Ok(out)
}

impl Pre3HilbPresentation {
    /// The inclusion `I_j : a_j → t` of the `j`-th part of `t = a_1 ⊞ … ⊞ a_r`, inside `L(a_j, t)`.
    pub fn inclusion(&self, part: usize, t: usize, offset: usize) -> Result<(Linking, Obj), Hilb3Error> {
        let l = self.linking(part, t)?;
        let r = l.left;
        let mut mult = vec![0; l.cat.rank()];
        for p in 0..r {
            let i = l
                .unit_link(p, r + offset + p)
                .ok_or_else(|| Hilb3Error::Invalid("parts do not match the sum".into()))?;
            mult[i] = 1;
        }
        let obj = l.cat.obj(mult, &format!("I{part}"));
        Ok((l, obj))
    }

    /// Certify `t = parts[0] ⊞ parts[1] ⊞ …` as a Hilbert direct sum.
    pub fn direct_sum_certificate(
        &self,
        t: usize,
        parts: &[usize],
        tol: &Tolerance,
        seed: u64,
    ) -> Result<DirectSumCertificate, Hilb3Error> {
        let concat: Vec<usize> = parts.iter().flat_map(|&p| self.objects[p].clone()).collect();
        if self.check(t)? != concat.as_slice() {
            return Err(Hilb3Error::Invalid("object is not the concatenation of the parts".into()));
        }
        let nt = concat.len();
        let mut total = vec![c(0.0); nt];
        let mut coev_defect: f64 = 0.0;
        let mut kinds = Vec::new();
        let mut links = Vec::new();
        let mut offset = 0;
        for &p in parts {
            let (l, i) = self.inclusion(p, t, offset)?;
            let (coev, ev) = duality_maps(&l, &i)?;
            let eev = ev.after(&ev.dagger());
            for (q, t) in total.iter_mut().enumerate() {
                *t += eev_scalar(&eev, l.cat.data.units[l.left + q]);
            }
            coev_defect = coev_defect.max(id_defect(&coev.dagger().after(&coev)));
            kinds.push(certify_isometry_1mor(&l, &i, tol)?.kind);
            links.push((l, i, offset));
            offset += self.objects[p].len();
        }
        let sum_defect = total.iter().map(|z| (z - c(1.0)).norm_sqr()).sum::<f64>().sqrt();

        let mut rng = sample::rng(seed);
        let psi_t: Vec<f64> = concat.iter().map(|&s| self.base.udf.psi[s]).collect();
        let mut worst: f64 = 0.0;
        for _ in 0..HOM_SAMPLES {
            let z: Vec<Complex64> = (0..nt).map(|_| sample::complex(&mut rng)).collect();
            let lhs: Complex64 = z.iter().zip(&psi_t).map(|(z, &p)| z * p).sum();
            let mut rhs = c(0.0);
            for (l, i, _) in &links {
                let cat = &l.cat;
                let one = cat.unit();
                let mut f = cat.zero_mor(&one, &one);
                for (q, zq) in z.iter().enumerate() {
                    f.blocks[cat.data.units[l.left + q]][(0, 0)] = *zq;
                }
                let g = cat.runit(i).after(&cat.tensor(&cat.id(i), &f)).after(&cat.runit(i).dagger());
                rhs += cat.psi_of(&cat.tr_l(&g));
            }
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
        let accept = tol.accepts(sum_defect, 1.0) && tol.accepts(worst, 1.0) && tol.accepts(coev_defect, 1.0);
        Ok(DirectSumCertificate {
            accept,
            sum_defect,
            coev_defect,
            additivity_residual: worst,
            inclusions: kinds,
            samples: HOM_SAMPLES,
        })
    }
}

fn eev_scalar(m: &Mor, u: usize) -> Complex64 {
    if m.blocks[u].nrows() == 0 {
        c(0.0)
    } else {
        m.blocks[u][(0, 0)]
    }
}

/// Split `1_a` into its sheets, each included by an isometry `(s_p) → a`.
pub fn decompose_simples(x: &Pre3HilbPresentation, a: usize, tol: &Tolerance) -> Result<Decomposition, Hilb3Error> {
    let sheets = x.check(a)?.to_vec();
    let mut work = x.clone();
    let mut total = vec![c(0.0); sheets.len()];
    let mut summands = Vec::new();
    for (p, &s) in sheets.iter().enumerate() {
        let single = match work.objects.iter().position(|o| *o == [s]) {
            Some(i) => i,
            None => {
                work.objects.push(vec![s]);
                work.labels.push(format!("★{s}"));
                work.objects.len() - 1
            }
        };
        let l = work.linking(single, a)?;
        let d = &l.cat.data;
        let i = l.unit_link(0, 1 + p).ok_or_else(|| Hilb3Error::Invalid("missing inclusion".into()))?;
        let inc = l.cat.simple(i);
        let cert = certify_isometry_1mor(&l, &inc, tol)?;
        let (_, ev) = duality_maps(&l, &inc)?;
        let eev = ev.after(&ev.dagger());
        for (q, t) in total.iter_mut().enumerate() {
            *t += eev_scalar(&eev, d.units[1 + q]);
        }
        summands.push(Summand {
            label: format!("{}[{p}]", x.labels[a]),
            sheet: s,
            psi: x.base.udf.psi[s],
            kind: cert.kind,
        });
    }
    let sum_defect = total.iter().map(|z| (z - c(1.0)).norm_sqr()).sum::<f64>().sqrt();
    Ok(Decomposition { summands, sum_defect })
}
