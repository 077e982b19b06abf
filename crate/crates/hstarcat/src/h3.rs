use crate::context::{AlgebraRef, Ctx};
use crate::fusion::udf_report;
use crate::report::{Body, Fail};
use hstar_core::hilb3::{
    decompose_simples, gauge_perturbed, hilbert_sum_completion, hom_two_hilbert, hstar_monad_completion, induced_monad,
    linking_e1, split_monad, theorem_b_check, uaf_uniqueness_check, MonadSplitting, Pre3HilbPresentation,
};
use hstar_core::intalg::AlgebraObject;
use hstar_core::{json, Tolerance};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectSpec {
    label: String,
    sheets: Vec<usize>,
}

/// A presentation by sheet lists of a multifusion category, with H*-monads on one object.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompleteFile {
    category: String,
    #[serde(default)]
    psi: Option<Vec<f64>>,
    /// Defaults to one object per sheet.
    #[serde(default)]
    objects: Option<Vec<ObjectSpec>>,
    /// Object carrying the monads; defaults to the first.
    #[serde(default)]
    base: Option<String>,
    /// Algebras in `End(base)`.
    #[serde(default)]
    monads: BTreeMap<String, AlgebraRef>,
}

#[derive(Serialize)]
struct HomSpace {
    source: String,
    target: String,
    labels: Vec<String>,
    dims: Vec<f64>,
    linking_components: usize,
}

#[derive(Serialize)]
struct SumReport {
    object: String,
    parts: [String; 2],
    sum_defect: f64,
    additivity_residual: f64,
    decomposition_defect: f64,
    summands: Vec<String>,
}

#[derive(Serialize)]
struct MonadReport {
    label: String,
    psi: f64,
    modules: Vec<String>,
    module_dims: Vec<f64>,
    simple_summands: usize,
    linking_accept: bool,
    u_defect: f64,
}

struct Worst {
    value: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0 }
    }
    fn see(&mut self, v: f64) {
        self.value = self.value.max(v);
    }
}

pub fn complete(ctx: &mut Ctx, body: &mut Body, file: &Path) -> Result<(), Fail> {
    let tol = ctx.tol;
    let seed = ctx.seed;
    let spec: CompleteFile = ctx.parse(file)?;
    let dir = file.parent();
    let cat = ctx.category(&spec.category, dir, spec.psi.as_deref())?;
    let pres = match spec.objects {
        Some(objs) => {
            let (labels, sheets) = objs.into_iter().map(|o| (o.label, o.sheets)).unzip();
            Pre3HilbPresentation::new(cat, sheets, labels)?
        }
        None => Pre3HilbPresentation::by_sheets(cat),
    };
    let n = pres.len();

    // Hom 2-Hilbert spaces and the linking categories.
    let mut homs = Vec::new();
    let (mut lr, mut wr) = (Worst::new(), Worst::new());
    for a in 0..n {
        for b in 0..n {
            let (space, cert) = hom_two_hilbert(&pres, a, b, &tol, seed)?;
            lr.see(cert.left_right_residual);
            wr.see(cert.weight_reconstruction_residual);
            let link = linking_e1(&pres, a, b, &tol)?;
            if let Some(f) = link.validation.failures.first() {
                body.flag(&format!("linking_{a}_{b}"), f, false);
            }
            homs.push(HomSpace {
                source: pres.labels[a].clone(),
                target: pres.labels[b].clone(),
                labels: space.labels,
                dims: space.dims,
                linking_components: link.components,
            });
        }
    }
    body.bound(&tol, "hom_left_right_residual", "sphericality", lr.value, 1.0);
    body.bound(&tol, "hom_weight_residual", "weight compatibility", wr.value, 1.0);

    // Binary Hilbert direct sums.
    let full = hilbert_sum_completion(&pres)?;
    let mut sums = Vec::new();
    let (mut sd, mut ad, mut dd) = (Worst::new(), Worst::new(), Worst::new());
    for i in 0..n {
        for j in 0..n {
            let concat: Vec<usize> = pres.objects[i].iter().chain(&pres.objects[j]).copied().collect();
            let t = full
                .objects
                .iter()
                .position(|o| *o == concat)
                .ok_or_else(|| Fail::Input("direct sum missing from the completion".into()))?;
            let cert = full.direct_sum_certificate(t, &[i, j], &tol, seed)?;
            let dec = decompose_simples(&full, t, &tol)?;
            sd.see(cert.sum_defect.max(cert.coev_defect));
            ad.see(cert.additivity_residual);
            dd.see(dec.sum_defect);
            sums.push(SumReport {
                object: full.labels[t].clone(),
                parts: [pres.labels[i].clone(), pres.labels[j].clone()],
                sum_defect: cert.sum_defect,
                additivity_residual: cert.additivity_residual,
                decomposition_defect: dec.sum_defect,
                summands: dec.summands.into_iter().map(|s| s.label).collect(),
            });
        }
    }
    body.bound(&tol, "direct_sum_defect", "Hilbert direct sum", sd.value, 1.0);
    body.bound(&tol, "direct_sum_additivity", "weight additivity", ad.value, 1.0);
    body.bound(&tol, "decomposition_defect", "Hilbert direct sum", dd.value, 1.0);

    // Monads on the base object.
    let base = match &spec.base {
        Some(l) => pres.object(l)?,
        None => 0,
    };
    let end = pres.end_category(base)?;
    let mut monads = Vec::new();
    for (label, r) in &spec.monads {
        monads.push((label.clone(), ctx.algebra(r, dir, Some(end.clone()))?));
    }
    let mc = hstar_monad_completion(&pres, base, monads, &tol, seed)?;
    for (label, ok) in mc.certificate.monads.iter().zip(&mc.certificate.hstar) {
        body.flag(&format!("monad_{label}_hstar"), "H*-algebra", *ok);
    }
    body.bound(&tol, "monad_sphericality_residual", "sphericality", mc.certificate.sphericality_residual, 1.0);
    let mut reports = Vec::new();
    let (mut hr, mut dr, mut ur) = (Worst::new(), Worst::new(), Worst::new());
    for (i, m) in mc.monads.iter().enumerate() {
        let hom = mc.hom(0, i, &tol, seed)?;
        hr.see(hom.left_right_residual);
        let ring = mc.linking(i, i, &tol, seed)?;
        body.flag(&format!("monad_{}_fusion_ring", m.label), "fusion ring", ring.accept);
        let (count, defect) = mc.decompose(i, &tol, seed);
        dr.see(defect);
        let split = split_over_unit(&m.alg, &tol, seed)?;
        body.flag(&format!("monad_{}_split", m.label), "monad splitting", split.certificate.accept);
        ur.see(split.certificate.u_defect);
        reports.push(MonadReport {
            label: m.label.clone(),
            psi: mc.certificate.psi[i],
            modules: hom.labels,
            module_dims: hom.space.dims,
            simple_summands: count,
            linking_accept: ring.accept,
            u_defect: split.certificate.u_defect,
        });
    }
    body.bound(&tol, "monad_hom_residual", "sphericality", hr.value, 1.0);
    body.bound(&tol, "monad_decomposition_defect", "Hilbert direct sum", dr.value, 1.0);
    body.bound(&tol, "split_u_defect", "monad splitting", ur.value, 1.0);

    body.put("objects", &pres.labels);
    body.put("homs", homs);
    body.put("sums", sums);
    body.put("monad_certificate", &mc.certificate);
    body.put("monads", reports);
    Ok(())
}

/// `A` over the trivial monad, through `ι_A`.
fn split_over_unit(a: &AlgebraObject, tol: &Tolerance, seed: u64) -> Result<MonadSplitting, Fail> {
    let one = AlgebraObject::trivial(a.cat.clone());
    Ok(split_monad(&one, a, &a.iota, tol, seed)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitFile {
    /// Defaults to the trivial monad on the category of `b`.
    #[serde(default)]
    a: Option<AlgebraRef>,
    /// An algebra, or `"induced"` for `A ⊗ A^∨` with its canonical map from `A`.
    b: AlgebraRef,
    /// Blocks of `j : A → B`; defaults to `ι_B`, the induced map, or the identity.
    #[serde(default)]
    j: Option<BTreeMap<String, serde_json::Value>>,
}

pub fn split(ctx: &mut Ctx, body: &mut Body, file: &Path) -> Result<(), Fail> {
    let tol = ctx.tol;
    let spec: SplitFile = ctx.parse(file)?;
    let dir = file.parent();
    let induced = matches!(&spec.b, AlgebraRef::Path(p) if p == "induced");
    let (a, b, j) = match (&spec.a, induced) {
        (Some(ar), true) => {
            let a = ctx.algebra(ar, dir, None)?;
            let (b, j) = induced_monad(&a);
            (a, b, j)
        }
        (None, true) => return Err(Fail::Input("`induced` needs `a`".into())),
        (None, false) => {
            let b = ctx.algebra(&spec.b, dir, None)?;
            let a = AlgebraObject::trivial(b.cat.clone());
            let j = b.iota.clone();
            (a, b, j)
        }
        (Some(ar), false) => {
            let a = ctx.algebra(ar, dir, None)?;
            let b = ctx.algebra(&spec.b, dir, Some(a.cat.clone()))?;
            let cat = &a.cat;
            let j = match &spec.j {
                Some(blocks) => {
                    let mut j = cat.zero_mor(&a.obj, &b.obj);
                    for (label, v) in blocks {
                        let k = cat.data.index(label)?;
                        let m = json::from_value(v).map_err(|e| Fail::Input(format!("j[{label}]: {e}")))?;
                        if m.shape() != j.blocks[k].shape() {
                            return Err(Fail::Input(format!("j[{label}] has the wrong shape")));
                        }
                        j.blocks[k] = m;
                    }
                    j
                }
                None if a.obj.mult == b.obj.mult => cat.id(&a.obj),
                None => return Err(Fail::Input("`j` is required when A and B differ".into())),
            };
            (a, b, j)
        }
    };
    if spec.j.is_some() && (spec.a.is_none() || induced) {
        return Err(Fail::Input("`j` is only read when both `a` and `b` are algebras".into()));
    }
    let s = split_monad(&a, &b, &j, &tol, ctx.seed)?;
    let c = &s.certificate;
    let scale = 1.0 + s.u.norm();
    body.flag("ev_surjective", "monad splitting", c.ev_gram_min > tol.abs_eps);
    body.bound(&tol, "promoted_ev_defect", "unitarity", c.promoted_ev_defect, 1.0);
    body.bound(&tol, "u_defect", "unitarity", c.u_defect, scale);
    body.bound(&tol, "unit_residual", "unitality", c.unit_residual, scale);
    body.bound(&tol, "intertwining_residual", "bimodule intertwining", c.intertwining_residual, scale);
    body.flag("dual_certificate", "duality", c.dual_certificate);
    body.put("certificate", c);
    body.put("a", crate::alg::multiplicities(&a));
    body.put("b", crate::alg::multiplicities(&b));
    let kind = hstar_core::hilb3::certify_bimodule_1mor(&s.module, &tol, ctx.seed)?;
    body.put("module_kind", kind.kind);
    Ok(())
}

pub fn theorem_b(ctx: &mut Ctx, body: &mut Body, file: &str, psi: Option<&[f64]>) -> Result<(), Fail> {
    let tol = ctx.tol;
    let cat = ctx.category(file, None, psi)?;
    let cert = theorem_b_check(&cat, &tol, ctx.seed)?;
    let scale = 1.0 + cert.psi_1;
    body.bound(&tol, "weight_gap", "weight comparison", cert.gap, scale);
    body.bound(&tol, "hstar_weight_residual", "weight comparison", (cert.psi_hstar - cert.psi_1).abs(), scale);
    body.bound(&tol, "module_weight_residual", "weight comparison", (cert.psi_mod - cert.psi_1).abs(), scale);
    body.put("theorem_b", &cert);

    let perturbed = gauge_perturbed(&cat, ctx.seed);
    let uaf = uaf_uniqueness_check(&cat.data, &cat.udf, &perturbed, &tol, ctx.seed)?;
    body.bound(&tol, "uaf_zeta_defect", "unitary adjoint uniqueness", uaf.max_defect, 1.0);
    body.put("uaf", &uaf);

    let mut sub = Body::default();
    udf_report(ctx, &mut sub, &cat)?;
    body.checks.extend(sub.checks);
    body.put("udf", sub.result);
    Ok(())
}
