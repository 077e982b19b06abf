use crate::context::Ctx;
use crate::report::{Body, Fail};
use hstar_core::hstar1::{gns as gns_rep, simple_modules, verify_hstar_algebra, HStarAlgebra, TraceInput};
use hstar_core::{json, sample, CMatrix};
use serde::{Deserialize, Serialize};
use std::path::Path;

const LAW_SAMPLES: usize = 20;

/// `⊕_i M_{n_i}(ℂ)` with either block weights or a functional `φ(a) = Σ_i tr(Φ_i a_i)`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HStarFile {
    blocks: Vec<usize>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
    #[serde(default)]
    functional: Option<Vec<serde_json::Value>>,
}

fn load(ctx: &mut Ctx, body: &mut Body, file: &Path) -> Result<HStarAlgebra, Fail> {
    let f: HStarFile = ctx.parse(file)?;
    let input = match (f.weights, f.functional) {
        (Some(w), None) => TraceInput::Weights(w),
        (None, Some(phis)) => {
            let ms: Result<Vec<CMatrix>, String> = phis.iter().map(json::from_value).collect();
            TraceInput::Functional(ms.map_err(|e| Fail::Input(format!("functional: {e}")))?)
        }
        _ => return Err(Fail::Input("give exactly one of `weights` and `functional`".into())),
    };
    let tol = ctx.tol;
    match verify_hstar_algebra(&f.blocks, &input, &tol, ctx.seed) {
        Ok((alg, cert)) => {
            body.bound(&tol, "traciality_residual", "traciality", cert.traciality_residual, 1.0);
            body.flag("positivity", "trace positivity", cert.positivity_margin > tol.abs_eps);
            body.put("certificate", &cert);
            Ok(alg)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn verify(ctx: &mut Ctx, body: &mut Body, file: &Path) -> Result<(), Fail> {
    let a = load(ctx, body, file)?;
    body.put("algebra", &a);
    Ok(())
}

#[derive(Serialize)]
struct Simple {
    block: usize,
    dim: f64,
    weight: f64,
}

pub fn gns(ctx: &mut Ctx, body: &mut Body, file: &Path) -> Result<(), Fail> {
    let tol = ctx.tol;
    let a = load(ctx, body, file)?;
    let rep = gns_rep(&a);
    let mut rng = sample::rng(ctx.seed);
    let mut law: f64 = 0.0;
    for _ in 0..LAW_SAMPLES {
        let xi = rep.random_vector(&mut rng);
        let eta = rep.random_vector(&mut rng);
        law = law.max(rep.law_residual(&xi, &eta));
    }
    body.bound(&tol, "module_law_residual", "H*-module trace", law, 1.0);

    let total = a.trace(&a.one()).re;
    let qdim = rep.quantum_dim();
    body.bound(&tol, "gns_dim_residual", "H*-module trace", (qdim - total).abs(), total);

    let simples: Vec<Simple> = simple_modules(&a)
        .into_iter()
        .enumerate()
        .map(|(i, (_, d))| Simple {
            block: i,
            dim: d,
            weight: a.weights[i],
        })
        .collect();
    let gap = simples.iter().map(|s| (s.dim - s.weight).abs()).fold(0.0, f64::max);
    body.bound(&tol, "simple_dim_residual", "H*-module trace", gap, 1.0);
    body.put("gns_dim", rep.dim());
    body.put("gns_quantum_dim", qdim);
    body.put("simples", simples);
    Ok(())
}
