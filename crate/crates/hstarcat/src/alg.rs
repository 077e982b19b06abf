use crate::context::{AlgebraRef, Ctx};
use crate::report::{Body, Fail};
use hstar_core::intalg::{
    algebra_to_file, internal_end, module_category, standardize as standardize_alg, verify_hstar, AlgebraFile,
    AlgebraObject, HStarAlgCertificate, RightModule,
};
use std::path::PathBuf;

pub struct Loaded {
    pub alg: AlgebraObject,
    /// Category reference written back into derived algebra files.
    pub category: String,
}

pub type Run = fn(&mut Ctx, &mut Body, &Loaded) -> Result<(), Fail>;

pub fn load(ctx: &mut Ctx, files: &[PathBuf]) -> Result<Loaded, Fail> {
    match files {
        [alg] => {
            let (file, _) = ctx.algebra_file(&AlgebraRef::Path(alg.display().to_string()), None)?;
            let alg = ctx.algebra(&AlgebraRef::Inline(Box::new(file.clone())), alg.parent(), None)?;
            Ok(Loaded {
                alg,
                category: file.category,
            })
        }
        [cat, alg] => {
            let file: AlgebraFile = ctx.parse(alg)?;
            let reference = cat.display().to_string();
            let cat = ctx.category(&reference, None, file.psi.as_deref())?;
            let alg = ctx.algebra(&AlgebraRef::Inline(Box::new(file)), None, Some(cat))?;
            Ok(Loaded {
                alg,
                category: reference,
            })
        }
        _ => Err(Fail::Input("expected `[category.json] algebra.json`".into())),
    }
}

/// Record the H*-algebra checks; the first failed axiom rejects.
pub fn record_hstar(body: &mut Body, cert: &HStarAlgCertificate, prefix: &str) {
    let failed = cert.failed_axiom.as_deref().unwrap_or("");
    body.check(&format!("{prefix}unit_residual"), "unitality", cert.unit_residual, true);
    body.check(&format!("{prefix}assoc_residual"), "associativity", cert.assoc_residual, true);
    body.check(
        &format!("{prefix}frobenius_residual"),
        "H*1 Frobenius",
        cert.frobenius_residual,
        failed != "H*1 Frobenius",
    );
    body.check(
        &format!("{prefix}bubble_condition"),
        "H*2 separability",
        cert.bubble_condition,
        failed != "H*2 separability",
    );
    body.check(
        &format!("{prefix}standardness_residual"),
        "H*3 standardness",
        cert.standardness_residual,
        failed != "H*3 standardness",
    );
}

fn verified(ctx: &Ctx, body: &mut Body, a: &AlgebraObject) -> Result<bool, Fail> {
    let cert = verify_hstar(a, &ctx.tol)?;
    record_hstar(body, &cert, "");
    body.put("hstar", &cert);
    Ok(cert.accept)
}

pub fn verify(ctx: &mut Ctx, body: &mut Body, l: &Loaded) -> Result<(), Fail> {
    let a = &l.alg;
    body.put("multiplicities", multiplicities(a));
    verified(ctx, body, a)?;
    Ok(())
}

pub fn standardize(ctx: &mut Ctx, body: &mut Body, l: &Loaded) -> Result<(), Fail> {
    let tol = ctx.tol;
    let s = standardize_alg(&l.alg, &tol)?;
    let cert = verify_hstar(&s, &tol)?;
    record_hstar(body, &cert, "");
    body.bound(&tol, "bubble_defect", "Q-system normalization", cert.bubble_defect, 1.0);
    body.put("hstar", &cert);
    body.put("algebra", algebra_to_file(&s, &l.category));
    Ok(())
}

pub fn modcat(ctx: &mut Ctx, body: &mut Body, l: &Loaded) -> Result<(), Fail> {
    if !verified(ctx, body, &l.alg)? {
        return Ok(());
    }
    let tol = ctx.tol;
    let mc = module_category(&l.alg, &tol, ctx.seed)?;
    let c = &mc.certificate;
    let scale = 1.0 + mc.space.dims.iter().cloned().fold(0.0, f64::max);
    body.bound(&tol, "action_residual", "module axioms", c.action_residual, scale);
    body.bound(&tol, "retraction_residual", "module trace", c.retraction_residual, scale);
    body.bound(&tol, "module_trace_residual", "module trace", c.module_trace_residual, scale);
    body.bound(&tol, "traciality_residual", "traciality", c.traciality_residual, scale);
    body.flag("module_category", "module trace", c.accept);
    body.put("labels", &mc.labels);
    body.put("dims", &mc.space.dims);
    body.put("free_multiplicity", &mc.free_multiplicity);
    body.put("certificate", c);
    Ok(())
}

pub fn intend(ctx: &mut Ctx, body: &mut Body, l: &Loaded) -> Result<(), Fail> {
    if !verified(ctx, body, &l.alg)? {
        return Ok(());
    }
    let tol = ctx.tol;
    let a = &l.alg;
    let mc = module_category(a, &tol, ctx.seed)?;
    let ie = internal_end(&mc, &RightModule::regular(a))?;
    let (_, cmp) = ie.comparison(&mc)?;
    let scale = 1.0 + a.mu.norm();
    body.bound(&tol, "comparison_unitarity_defect", "internal end recognition", cmp.unitarity_defect, 1.0);
    body.bound(
        &tol,
        "comparison_multiplicativity_residual",
        "internal end recognition",
        cmp.multiplicativity_residual,
        scale,
    );
    body.bound(&tol, "comparison_unit_residual", "internal end recognition", cmp.unit_residual, scale);
    let end_cert = verify_hstar(&ie.algebra, &tol)?;
    record_hstar(body, &end_cert, "end_");
    body.put("comparison", &cmp);
    body.put("internal_end", &end_cert);
    body.put("internal_end_multiplicities", multiplicities(&ie.algebra));
    Ok(())
}

pub fn multiplicities(a: &AlgebraObject) -> std::collections::BTreeMap<String, usize> {
    a.cat
        .data
        .simples
        .iter()
        .zip(&a.obj.mult)
        .filter(|(_, &m)| m > 0)
        .map(|(s, &m)| (s.clone(), m))
        .collect()
}
