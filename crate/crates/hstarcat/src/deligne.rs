use crate::alg::record_hstar;
use crate::context::{AlgebraRef, Ctx};
use crate::report::{Body, Fail};
use hstar_core::deligne::{check_ladder, right_action_isometry, Ladder};
use hstar_core::intalg::{verify_hstar, AlgebraFile, AlgebraObject};
use std::path::Path;

const SAMPLES: usize = 20;

pub fn check(ctx: &mut Ctx, body: &mut Body, m: &Path, c: &str, n: Option<&Path>) -> Result<(), Fail> {
    let tol = ctx.tol;
    let mfile: AlgebraFile = ctx.parse(m)?;
    let cat = ctx.category(c, None, mfile.psi.as_deref())?;
    let a = ctx.algebra(&AlgebraRef::Inline(Box::new(mfile)), None, Some(cat.clone()))?;
    let b = match n {
        Some(p) => {
            let f: AlgebraFile = ctx.parse(p)?;
            ctx.algebra(&AlgebraRef::Inline(Box::new(f)), None, Some(cat.clone()))?
        }
        None => AlgebraObject::trivial(cat.clone()),
    };
    for (prefix, alg) in [("m_", &a), ("n_", &b)] {
        let cert = verify_hstar(alg, &tol)?;
        record_hstar(body, &cert, prefix);
        if !cert.accept {
            return Ok(());
        }
    }

    let ladder = Ladder::new(&a, &b, &tol)?;
    let cert = check_ladder(&ladder, SAMPLES, &tol, ctx.seed)?;
    body.bound(&tol, "identity_trace_residual", "relative Deligne trace", cert.identity_trace_residual, 1.0);
    body.bound(&tol, "traciality_residual", "traciality", cert.traciality_residual, 1.0);
    body.bound(&tol, "positivity_residual", "trace positivity", cert.positivity_residual, 1.0);
    body.bound(&tol, "dagger_residual", "dagger", cert.dagger_residual, 1.0);
    body.bound(&tol, "realization_residual", "functoriality", cert.realization_residual, 1.0);
    body.bound(&tol, "identity_residual", "identity", cert.identity_residual, 1.0);
    body.put("ladder", &cert);

    if n.is_none() {
        let iso = right_action_isometry(&a, SAMPLES, &tol, ctx.seed)?;
        body.check("right_action_gap", "right action isometry", iso.max_gap, iso.accept);
        body.put("right_action", &iso);
    }
    Ok(())
}
