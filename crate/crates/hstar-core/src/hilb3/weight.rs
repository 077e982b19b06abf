//! Weights on module categories, the comparison at the unit summand, and
//! uniqueness of unitary duality data.

use super::monad::monad_psi;
use super::Hilb3Error;
use crate::fusion::validate::zigzag_residual;
use crate::fusion::{canonical_two_hilbert, renorm_scalar, Category, FusionData, Mor, UdfData};
use crate::intalg::{module_category, unitary_residual, AlgebraObject, ModuleCategory};
use crate::numcore::{c, Tolerance};
use crate::sample;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::rc::Rc;

#[derive(Clone, Debug, Serialize)]
pub struct WeightValue {
    /// `Σ_m d_m Tr_m(η_m)`.
    #[serde(with = "crate::json::scalar")]
    pub raw: Complex64,
    pub prefactor: f64,
    #[serde(with = "crate::json::scalar")]
    pub value: Complex64,
    /// Gap against the same value renormalized by the per-sheet scalar.
    pub cross_check_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremBCertificate {
    pub accept: bool,
    pub psi_1: f64,
    /// `Ψ` of the standard unit summand in the algebra picture.
    pub psi_hstar: f64,
    /// Renormalized `Ψ` at the column module.
    pub psi_mod: f64,
    pub prefactor: f64,
    pub module_dims: Vec<f64>,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct UafCertificate {
    pub accept: bool,
    /// Unitarity defect of `ζ_X` per simple.
    pub zeta_defects: Vec<f64>,
    pub max_defect: f64,
    /// Sphericality residuals of the two candidates.
    pub spherical_residuals: [f64; 2],
}

fn sheet_of_module(mc: &ModuleCategory) -> usize {
    let d = &mc.alg.cat.data;
    mc.simples
        .first()
        .and_then(|m| m.obj.mult.iter().position(|&k| k > 0))
        .map(|k| d.source[k])
        .unwrap_or(0)
}

/// `Ψ_M(η) = Σ_m d_m² η_m` for a natural endomorphism acting by `η_m` on the simple `m`, renormalized per component.
pub fn weight_mod_dagger(mc: &ModuleCategory, eta: &[Complex64], tol: &Tolerance) -> Result<WeightValue, Hilb3Error> {
    if eta.len() != mc.rank() {
        return Err(Hilb3Error::Invalid(format!("expected {} scalars, got {}", mc.rank(), eta.len())));
    }
    let cat = &mc.alg.cat;
    let report = renorm_scalar(cat, tol)?;
    let sheet = sheet_of_module(mc);
    let comp = report
        .components
        .iter()
        .find(|c| c.sheets.contains(&sheet))
        .ok_or_else(|| Hilb3Error::Invalid("module sheet outside every component".into()))?;
    let raw: Complex64 = mc.space.dims.iter().zip(eta).map(|(&d, &z)| z * d * d).sum();
    let value = raw * comp.prefactor;
    let other = raw / report.per_sheet[sheet];
    Ok(WeightValue {
        raw,
        prefactor: comp.prefactor,
        value,
        cross_check_gap: (value - other).norm(),
    })
}

/// Compare both weights at the unit summand `1_1` of an indecomposable category.
pub fn theorem_b_check(cat: &Rc<Category>, tol: &Tolerance, seed: u64) -> Result<TheoremBCertificate, Hilb3Error> {
    let comps = cat.data.components().len();
    if comps != 1 {
        return Err(Hilb3Error::Decomposable(comps));
    }
    let psi_1 = cat.udf.psi[0];
    let alg = unit_summand(cat)?;
    let psi_hstar = monad_psi(&alg, &alg.id(), tol)?.re;
    let mc = module_category(&alg, tol, seed)?;
    let w = weight_mod_dagger(&mc, &vec![c(1.0); mc.rank()], tol)?;
    let (psi_mod, prefactor, module_dims) = (w.value.re, w.prefactor, mc.space.dims.clone());
    let gap = (psi_hstar - psi_mod).abs();
    let scale = 1.0 + psi_1;
    let accept = tol.accepts(gap, scale)
        && tol.accepts((psi_hstar - psi_1).abs(), scale)
        && tol.accepts((psi_mod - psi_1).abs(), scale);
    Ok(TheoremBCertificate {
        accept,
        psi_1,
        psi_hstar,
        psi_mod,
        prefactor,
        module_dims,
        gap,
    })
}

/// `1_1 ⊂ 1` with `μ = λ` and `ι` the inclusion.
fn unit_summand(cat: &Rc<Category>) -> Result<AlgebraObject, Hilb3Error> {
    let u = cat.data.units[0];
    let mut mult = vec![0; cat.rank()];
    mult[u] = 1;
    let obj = cat.obj(mult, "1_1");
    let aa = cat.tensor_obj(&obj, &obj);
    let mut mu = cat.zero_mor(&aa, &obj);
    mu.blocks[u][(0, 0)] = c(1.0);
    let mut iota = cat.zero_mor(&cat.unit(), &obj);
    iota.blocks[u][(0, 0)] = c(1.0);
    Ok(AlgebraObject::new(cat.clone(), obj, mu, iota)?)
}

/// Duality data with `ev_a ↦ z_a ev_a`, `coev_a ↦ z̄_a coev_a` for random phases with `z_{ā} = z_a`.
pub fn gauge_perturbed(cat: &Category, seed: u64) -> UdfData {
    let mut rng = sample::rng(seed);
    let d = &cat.data;
    let mut phase = vec![None; cat.rank()];
    for a in 0..cat.rank() {
        if phase[a].is_none() {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex64::from_polar(1.0, t);
            phase[a] = Some(z);
            phase[d.dual[a]] = Some(z);
        }
    }
    let mut udf = cat.udf.clone();
    for a in 0..cat.rank() {
        let z = phase[a].unwrap();
        udf.ev[a] *= z;
        udf.coev[a] *= z.conj();
    }
    udf
}

/// Duality data with every non-unit `coev` scaled by `s` and `ev` by `1/s`.
pub fn rescaled_coev(cat: &Category, s: f64) -> UdfData {
    let mut udf = cat.udf.clone();
    for a in 0..cat.rank() {
        if !cat.data.units.contains(&a) {
            udf.coev[a] *= s;
            udf.ev[a] /= s;
        }
    }
    udf
}

fn spherical_residual(cat: &Category, tol: &Tolerance, seed: u64) -> f64 {
    let zz = zigzag_residual(cat);
    match canonical_two_hilbert(cat, tol, seed) {
        Ok((_, s)) => zz.max(s.left_residual).max(s.right_residual),
        Err(crate::fusion::FusionError::NotSpherical { residual }) => residual.max(zz),
        Err(_) => f64::INFINITY,
    }
}

/// `ζ_X = λ (ev¹_X ⊗ id) α⁻¹ (id ⊗ coev²_X) ρ† : X^∨ → X^*` for each simple `X`.
pub fn uaf_uniqueness_check(
    data: &FusionData,
    first: &UdfData,
    second: &UdfData,
    tol: &Tolerance,
    seed: u64,
) -> Result<UafCertificate, Hilb3Error> {
    let one = Category::with_udf(data.clone(), first.clone());
    let two = Category::with_udf(data.clone(), second.clone());
    let r1 = spherical_residual(&one, tol, seed);
    let r2 = spherical_residual(&two, tol, seed);
    for r in [r1, r2] {
        if !tol.accepts(r, 1.0) {
            return Err(Hilb3Error::CandidateNotSpherical { residual: r });
        }
    }
    let mut defects = Vec::with_capacity(one.rank());
    for a in 0..one.rank() {
        let x = one.simple(a);
        let xd = one.dual_obj(&x);
        let zeta: Mor = one
            .lunit(&xd)
            .after(&one.tensor(&one.ev(&x), &one.id(&xd)))
            .after(&one.assoc_inv(&xd, &x, &xd))
            .after(&one.tensor(&one.id(&xd), &two.coev(&x)))
            .after(&one.runit(&xd).dagger());
        defects.push(unitary_residual(&zeta));
    }
    let max_defect = defects.iter().copied().fold(0.0, f64::max);
    Ok(UafCertificate {
        accept: tol.accepts(max_defect, 1.0),
        zeta_defects: defects,
        max_defect,
        spherical_residuals: [r1, r2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::bundled;
    use crate::hilb3::direct_sum;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cat(d: FusionData, psi: &[f64]) -> Rc<Category> {
        Rc::new(Category::new(d, psi).unwrap())
    }

    fn whole(c: &Rc<Category>) -> ModuleCategory {
        module_category(&AlgebraObject::trivial(c.clone()), &tol(), 0).unwrap()
    }

    #[test]
    fn weights_on_module_categories() {
        let h = cat(bundled::hilb(), &[1.0]);
        let w = weight_mod_dagger(&whole(&h), &[c(1.0)], &tol()).unwrap();
        assert!((w.value - c(1.0)).norm() < 1e-14 && w.prefactor == 1.0);

        // Column of Hilb[ℤ/2]: two simples of dimension 1, FPdim 2.
        let z2 = cat(bundled::z2(), &[1.0]);
        let w = weight_mod_dagger(&whole(&z2), &[c(1.0), c(1.0)], &tol()).unwrap();
        assert!((w.raw - c(2.0)).norm() < 1e-12 && (w.prefactor - 0.5).abs() < 1e-12);
        assert!((w.value - c(1.0)).norm() < 1e-12 && w.cross_check_gap < 1e-12);

        // Ising: Σ d² = 1 + 2 + 1 over FPdim 4.
        let ising = cat(bundled::ising(), &[1.0]);
        let w = weight_mod_dagger(&whole(&ising), &[c(1.0); 3], &tol()).unwrap();
        assert!((w.raw - c(4.0)).norm() < 1e-10 && (w.value - c(1.0)).norm() < 1e-10);

        assert!(weight_mod_dagger(&whole(&ising), &[c(1.0)], &tol()).is_err());
    }

    #[test]
    fn theorem_b_on_bundled_categories() {
        for (d, psi) in [
            (bundled::hilb(), vec![1.0]),
            (bundled::z2(), vec![1.0]),
            (bundled::fibonacci(), vec![1.0]),
            (bundled::ising(), vec![1.0]),
            (bundled::fibonacci(), vec![2.5]),
            (bundled::matrix2_hilb(), vec![2.0, 0.5]),
        ] {
            let c = cat(d, &psi);
            let cert = theorem_b_check(&c, &tol(), 0).unwrap();
            assert!(cert.accept, "{cert:?}");
            assert!((cert.psi_hstar - psi[0]).abs() < 1e-9 && cert.gap < 1e-9);
        }
    }

    #[test]
    fn fibonacci_column_sum() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let cert = theorem_b_check(&cat(bundled::fibonacci(), &[1.0]), &tol(), 0).unwrap();
        assert!((cert.prefactor - 1.0 / (1.0 + phi * phi)).abs() < 1e-12);
    }

    #[test]
    fn decomposable_is_refused() {
        let mut d = direct_sum(&bundled::z2(), &bundled::hilb()).unwrap();
        d.psi = None;
        assert!(matches!(
            theorem_b_check(&cat(d, &[1.0, 1.0]), &tol(), 0),
            Err(Hilb3Error::Decomposable(2))
        ));
    }

    #[test]
    fn uaf_uniqueness() {
        let fib = cat(bundled::fibonacci(), &[1.0]);
        let same = uaf_uniqueness_check(&fib.data, &fib.udf, &fib.udf, &tol(), 0).unwrap();
        assert!(same.accept && same.max_defect < 1e-12);
        for seed in 0..4 {
            let g = gauge_perturbed(&fib, seed);
            let cert = uaf_uniqueness_check(&fib.data, &fib.udf, &g, &tol(), seed).unwrap();
            assert!(cert.accept && cert.max_defect < 1e-9, "{cert:?}");
        }
        let bad = rescaled_coev(&fib, 1.5);
        assert!(matches!(
            uaf_uniqueness_check(&fib.data, &fib.udf, &bad, &tol(), 0),
            Err(Hilb3Error::CandidateNotSpherical { .. })
        ));
    }
}
