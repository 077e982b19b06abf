use crate::context::Ctx;
use crate::report::{Body, Fail};
use hstar_core::fusion::validate::zigzag_residual;
use hstar_core::fusion::{canonical_two_hilbert, loop_eval, renorm_scalar, validate as validate_data, Category, LoopSide};
use serde::Serialize;

pub fn validate(ctx: &mut Ctx, body: &mut Body, file: &str) -> Result<(), Fail> {
    let data = ctx.fusion_data(file, None)?;
    let cert = validate_data(&data, &ctx.tol);
    let failed = |name: &str| cert.failures.iter().any(|f| f == name);
    for (name, &ok) in &cert.integer_checks {
        body.flag(&format!("integer_{name}"), "fusion ring", ok);
    }
    body.check("pentagon_residual", "pentagon", cert.pentagon_residual, !failed("pentagon"));
    body.check("f_unitarity_defect", "F unitarity", cert.f_unitarity_defect, !failed("F unitarity"));
    body.check("unit_leg_defect", "triangle", cert.unit_leg_defect, !failed("triangle"));
    match cert.fp_residual {
        Some(r) => body.check("fp_residual", "FPdim multiplicativity", r, !failed("FPdim multiplicativity")),
        None => body.flag("fpdims", "FPdim", false),
    }
    match cert.zigzag_residual {
        Some(z) => body.check("zigzag_residual", "zig-zag", z, !failed("zig-zag")),
        None => body.flag("duality gauge", "duality gauge", !failed("duality gauge")),
    }
    body.put("simples", &data.simples);
    body.put("sheets", data.sheets());
    body.put("components", data.components());
    body.put("certificate", &cert);
    Ok(())
}

#[derive(Serialize)]
struct Loop {
    label: String,
    left: f64,
    right: f64,
    dim: f64,
}

pub fn udf(ctx: &mut Ctx, body: &mut Body, file: &str, psi: Option<&[f64]>) -> Result<(), Fail> {
    let cat = ctx.category(file, None, psi)?;
    udf_report(ctx, body, &cat)
}

pub fn udf_report(ctx: &mut Ctx, body: &mut Body, cat: &Category) -> Result<(), Fail> {
    let tol = ctx.tol;
    let d = &cat.data;
    let u = &cat.udf;
    body.bound(&tol, "dimension_chain_residual", "weight compatibility", u.chain_residual, 1.0);

    // Closed loops against d_c/ψ_{s(c)} and d_c/ψ_{t(c)}.
    let mut loops = Vec::new();
    let mut gap: f64 = 0.0;
    for (a, label) in d.simples.iter().enumerate() {
        let left = loop_eval(cat, label, LoopSide::L)?;
        let right = loop_eval(cat, label, LoopSide::R)?;
        let (s, t) = (d.source[a], d.target[a]);
        gap = gap.max((left - u.dims[a] / u.psi[s]).abs() / (1.0 + u.dims[a]));
        gap = gap.max((right - u.dims[a] / u.psi[t]).abs() / (1.0 + u.dims[a]));
        loops.push(Loop {
            label: label.clone(),
            left,
            right,
            dim: u.dims[a],
        });
    }
    body.bound(&tol, "loop_residual", "bubble popping", gap, 1.0);

    let z = zigzag_residual(cat);
    body.bound(&tol, "zigzag_residual", "zig-zag", z, 1.0);

    let renorm = renorm_scalar(cat, &tol)?;
    body.bound(&tol, "renormalization_gap", "renormalization independence", renorm.max_gap, 1.0);

    match canonical_two_hilbert(cat, &tol, ctx.seed) {
        Ok((space, check)) => {
            body.bound(&tol, "left_trace_residual", "sphericality", check.left_residual, 1.0);
            body.bound(&tol, "right_trace_residual", "sphericality", check.right_residual, 1.0);
            body.put("sphericality", check);
            body.put("two_hilbert_dims", space.dims);
        }
        Err(e) => return Err(e.into()),
    }
    body.put("psi", &u.psi);
    body.put("fpdims", &u.fpdims);
    body.put("dims", &u.dims);
    body.put("loops", loops);
    body.put("renormalization", renorm);
    Ok(())
}
