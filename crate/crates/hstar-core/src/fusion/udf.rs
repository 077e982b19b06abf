//! Frobenius-Perron dimensions, dualities induced by a spherical weight,
//! closed loops, and the renormalization scalar.

use super::data::FusionData;
use super::engine::Category;
use super::FusionError;
use crate::hilb2::TwoHilbertSpace;
use crate::numcore::c;
use crate::sample;
use crate::Tolerance;
use num_complex::Complex64;
use serde::Serialize;

const FP_TOL: f64 = 1e-12;
const FP_MAX_ITERS: usize = 100_000;

/// Frobenius-Perron dimension of every simple.
///
/// Diagonal blocks use the positive eigenvector of the regular element;
/// off-diagonal simples use `FP(c)² = FP(c ⊗ c̄)`.
pub fn fpdims(data: &FusionData) -> Result<Vec<f64>, FusionError> {
    let r = data.rank();
    let mut fp = vec![0.0; r];
    for (i, &u) in data.units.iter().enumerate() {
        let block: Vec<usize> = (0..r)
            .filter(|&a| data.source[a] == i && data.target[a] == i)
            .collect();
        let pos = |a: usize| block.iter().position(|&b| b == a);
        let n = block.len();
        // (R + I) with R the regular element of the diagonal block.
        let mut m = vec![vec![0.0f64; n]; n];
        for (yi, &y) in block.iter().enumerate() {
            m[yi][yi] += 1.0;
            for &cc in &block {
                for (xi, &x) in block.iter().enumerate() {
                    m[yi][xi] += data.nmult(cc, x, y) as f64;
                }
            }
        }
        let mut v = vec![1.0f64; n];
        let mut converged = false;
        for _ in 0..FP_MAX_ITERS {
            let w: Vec<f64> = (0..n).map(|y| (0..n).map(|x| m[y][x] * v[x]).sum()).collect();
            let top = w.iter().cloned().fold(0.0, f64::max);
            if !(top > 0.0) {
                return Err(FusionError::FpDim(format!("sheet {i} has a nilpotent regular element")));
            }
            let w: Vec<f64> = w.iter().map(|x| x / top).collect();
            let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = w;
            if delta < FP_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(FusionError::FpDim(format!("power iteration on sheet {i} did not converge")));
        }
        let ui = pos(u).ok_or_else(|| FusionError::FpDim(format!("unit of sheet {i} is not diagonal")))?;
        for (k, &a) in block.iter().enumerate() {
            fp[a] = v[k] / v[ui];
        }
    }
    for a in 0..r {
        if data.source[a] != data.target[a] {
            let ad = data.dual[a];
            let s: f64 = (0..r)
                .filter(|&x| data.source[x] == data.source[a] && data.target[x] == data.source[a])
                .map(|x| data.nmult(a, ad, x) as f64 * fp[x])
                .sum();
            if !(s > 0.0) {
                return Err(FusionError::FpDim(format!("`{}` ⊗ dual vanishes", data.simples[a])));
            }
            fp[a] = s.sqrt();
        }
    }
    Ok(fp)
}

/// `max |FP(a)FP(b) − Σ_c N_{ab}^c FP(c)|` over composable pairs.
pub fn fp_residual(data: &FusionData, fp: &[f64]) -> f64 {
    let r = data.rank();
    let mut worst: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            if data.target[a] != data.source[b] {
                continue;
            }
            let rhs: f64 = (0..r).map(|cc| data.nmult(a, b, cc) as f64 * fp[cc]).sum();
            worst = worst.max((fp[a] * fp[b] - rhs).abs());
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum WeightNormalization {
    #[default]
    AsGiven,
    /// Rescale so that `ψ(id_1) = 1`.
    UnitTotal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphericalWeight {
    pub psi: Vec<f64>,
    pub normalization: WeightNormalization,
}

impl SphericalWeight {
    pub fn new(psi: Vec<f64>) -> Self {
        SphericalWeight {
            psi,
            normalization: WeightNormalization::AsGiven,
        }
    }

    pub fn ones(k: usize) -> Self {
        Self::new(vec![1.0; k])
    }

    pub fn resolved(&self) -> Vec<f64> {
        match self.normalization {
            WeightNormalization::AsGiven => self.psi.clone(),
            WeightNormalization::UnitTotal => {
                let t: f64 = self.psi.iter().sum();
                self.psi.iter().map(|p| p / t).collect()
            }
        }
    }

    /// `ψ(id_1) = Σ_i ψ_i`.
    pub fn total(&self) -> f64 {
        self.resolved().iter().sum()
    }
}

/// The unitary dual functor singled out by a spherical weight.
#[derive(Clone, Debug, Serialize)]
pub struct UdfData {
    pub psi: Vec<f64>,
    pub fpdims: Vec<f64>,
    /// `d_c`.
    pub dims: Vec<f64>,
    pub dim_l: Vec<f64>,
    pub dim_r: Vec<f64>,
    #[serde(skip)]
    pub ev: Vec<Complex64>,
    #[serde(skip)]
    pub coev: Vec<Complex64>,
    /// `max |d_{s(c)} dim_L(c) − d_c| + |d_{t(c)} dim_R(c) − d_c|`.
    pub chain_residual: f64,
}

impl UdfData {
    pub fn new(data: &FusionData, fp: &[f64], psi: &[f64]) -> Result<Self, FusionError> {
        let k = data.sheets();
        if psi.len() != k {
            return Err(FusionError::Schema(format!("expected {k} weights, got {}", psi.len())));
        }
        if let Some((sheet, &weight)) = psi.iter().enumerate().find(|(_, &p)| !(p > 0.0) || !p.is_finite()) {
            return Err(FusionError::NonPositiveWeight { sheet, weight });
        }
        let r = data.rank();
        let mut dims = vec![0.0; r];
        let mut dim_l = vec![0.0; r];
        let mut dim_r = vec![0.0; r];
        let mut ev = vec![c(0.0); r];
        let mut coev = vec![c(0.0); r];
        let mut chain: f64 = 0.0;
        for a in 0..r {
            let (s, t) = (data.source[a], data.target[a]);
            dims[a] = (psi[s] * psi[t]).sqrt() * fp[a];
            dim_l[a] = dims[a] / psi[s];
            dim_r[a] = dims[a] / psi[t];
            chain = chain.max((psi[s] * dim_l[a] - dims[a]).abs() + (psi[t] * dim_r[a] - dims[a]).abs());
            let ad = data.dual[a];
            let (us, ut) = (data.units[s], data.units[t]);
            let blk = data
                .fblock(a, ad, a, a)
                .ok_or_else(|| FusionError::Gauge(format!("no F block for `{}`", data.simples[a])))?;
            let li = blk.left.iter().position(|&(e, _, _)| e == us);
            let ri = blk.right.iter().position(|&(f, _, _)| f == ut);
            let (Some(li), Some(ri)) = (li, ri) else {
                return Err(FusionError::Gauge(format!("`{}` has no duality channel", data.simples[a])));
            };
            let entry = blk.matrix[(li, ri)];
            if (entry.norm() * fp[a] - 1.0).abs() > 1e-8 {
                return Err(FusionError::Gauge(format!(
                    "|F[1,1]| for `{}` is {:.6}, expected 1/FPdim = {:.6}",
                    data.simples[a],
                    entry.norm(),
                    1.0 / fp[a]
                )));
            }
            ev[a] = c(dim_r[a].sqrt());
            coev[a] = c(1.0) / (entry * ev[a]);
        }
        Ok(UdfData {
            psi: psi.to_vec(),
            fpdims: fp.to_vec(),
            dims,
            dim_l,
            dim_r,
            ev,
            coev,
            chain_residual: chain,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoopSide {
    L,
    R,
}

/// Closed `c`-loop: `coev_c† coev_c` on sheet `s(c)` or `ev_c ev_c†` on sheet `t(c)`.
pub fn loop_eval(cat: &Category, label: &str, side: LoopSide) -> Result<f64, FusionError> {
    let a = cat.data.index(label)?;
    let x = cat.simple(a);
    let (m, sheet) = match side {
        LoopSide::L => {
            let co = cat.coev(&x);
            (co.dagger().after(&co), cat.data.source[a])
        }
        LoopSide::R => {
            let e = cat.ev(&x);
            (e.after(&e.dagger()), cat.data.target[a])
        }
    };
    Ok(cat.unit_scalars(&m)[sheet].re)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRenorm {
    pub sheets: Vec<usize>,
    pub fpdim_total: f64,
    pub psi_total: f64,
    pub closed_form: f64,
    /// `k² / (FPdim(C) ψ(id))`.
    pub prefactor: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RenormReport {
    /// `v_i = Σ_j Σ_{c ∈ Irr(C_ij)} d_c² / d_i`.
    pub per_sheet: Vec<f64>,
    pub components: Vec<ComponentRenorm>,
    pub max_gap: f64,
}

pub fn renorm_scalar(cat: &Category, tol: &Tolerance) -> Result<RenormReport, FusionError> {
    let data = &cat.data;
    let psi = &cat.udf.psi;
    let mut per_sheet = vec![0.0; data.sheets()];
    for a in 0..data.rank() {
        let s = data.source[a];
        per_sheet[s] += cat.udf.dims[a].powi(2) / psi[s];
    }
    let mut components = Vec::new();
    let mut gap: f64 = 0.0;
    for sheets in data.components() {
        let fpdim_total: f64 = (0..data.rank())
            .filter(|&a| sheets.contains(&data.source[a]))
            .map(|a| cat.udf.fpdims[a].powi(2))
            .sum();
        let psi_total: f64 = sheets.iter().map(|&i| psi[i]).sum();
        let k = sheets.len() as f64;
        let closed_form = fpdim_total * psi_total / (k * k);
        for &i in &sheets {
            let g = (per_sheet[i] - closed_form).abs();
            if !tol.accepts(g, closed_form) {
                return Err(FusionError::IndependenceViolation { gap: g });
            }
            gap = gap.max(g);
        }
        components.push(ComponentRenorm {
            sheets,
            fpdim_total,
            psi_total,
            closed_form,
            prefactor: 1.0 / closed_form,
        });
    }
    Ok(RenormReport {
        per_sheet,
        components,
        max_gap: gap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SphericalCheck {
    pub samples: usize,
    pub left_residual: f64,
    pub right_residual: f64,
}

const SPHERICAL_SAMPLES: usize = 8;

/// The underlying 2-Hilbert space, after checking `Tr = ψ∘tr_L = ψ∘tr_R` on samples.
pub fn canonical_two_hilbert(
    cat: &Category,
    tol: &Tolerance,
    seed: u64,
) -> Result<(TwoHilbertSpace, SphericalCheck), FusionError> {
    use rand::Rng;
    let mut rng = sample::rng(seed);
    let (mut lr, mut rr) = (0.0f64, 0.0f64);
    for _ in 0..SPHERICAL_SAMPLES {
        let mult = (0..cat.rank()).map(|_| rng.gen_range(0..3)).collect();
        let x = cat.obj(mult, "X");
        let f = cat.random_mor(&mut rng, &x, &x);
        let tr = cat.trace(&f);
        let l = cat.psi_of(&cat.tr_l(&f));
        let rt = cat.psi_of(&cat.tr_r(&f));
        let scale = 1.0 + tr.norm();
        lr = lr.max((l - tr).norm() / scale);
        rr = rr.max((rt - tr).norm() / scale);
    }
    if !tol.accepts(lr.max(rr), 1.0) {
        return Err(FusionError::NotSpherical { residual: lr.max(rr) });
    }
    let space = TwoHilbertSpace::new(cat.data.simples.clone(), cat.udf.dims.clone())
        .map_err(|e| FusionError::Invalid(e.to_string()))?;
    Ok((
        space,
        SphericalCheck {
            samples: SPHERICAL_SAMPLES,
            left_residual: lr,
            right_residual: rr,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::bundled;

    const PHI: f64 = 1.618_033_988_749_895;

    fn cat(d: FusionData, psi: &[f64]) -> Category {
        Category::new(d, psi).unwrap()
    }

    /// Independent oracle: the largest root of the characteristic polynomial of `N_a`
    /// restricted to a diagonal block, via the quadratic formula for rank two.
    #[test]
    fn fpdims_match_fusion_rule_roots() {
        let fp = fpdims(&bundled::fibonacci()).unwrap();
        // N_τ = [[0,1],[1,1]] has eigenvalues (1 ± √5)/2.
        assert!((fp[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-11);
        let fp = fpdims(&bundled::ising()).unwrap();
        assert!((fp[1] - 2f64.sqrt()).abs() < 1e-11 && (fp[2] - 1.0).abs() < 1e-12);
        let fp = fpdims(&bundled::matrix2_hilb()).unwrap();
        assert!(fp.iter().all(|x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn udf_examples() {
        let h = cat(bundled::hilb(), &[1.0]);
        assert_eq!(h.udf.dims, vec![1.0]);
        assert!((loop_eval(&h, "1", LoopSide::L).unwrap() - 1.0).abs() < 1e-14);

        let f = cat(bundled::fibonacci(), &[1.0]);
        assert!((f.udf.dims[1] - PHI).abs() < 1e-11);

        let m = cat(bundled::matrix2_hilb(), &[1.0, 4.0]);
        let want = [1.0, 2.0, 2.0, 4.0];
        for (d, w) in m.udf.dims.iter().zip(want) {
            assert!((d - w).abs() < 1e-12);
        }
        assert!((loop_eval(&m, "e12", LoopSide::L).unwrap() - 2.0).abs() < 1e-12);
        assert!((loop_eval(&m, "e12", LoopSide::R).unwrap() - 0.5).abs() < 1e-12);
        assert!(m.udf.chain_residual < 1e-12);
    }

    #[test]
    fn loop_examples() {
        let f = cat(bundled::fibonacci(), &[1.0]);
        assert!((loop_eval(&f, "1", LoopSide::R).unwrap() - 1.0).abs() < 1e-14);
        assert!((loop_eval(&f, "t", LoopSide::L).unwrap() - 1.618_033_988_7).abs() < 1e-9);
        assert!(matches!(loop_eval(&f, "x", LoopSide::L), Err(FusionError::UnknownLabel(_))));
    }

    #[test]
    fn weight_errors() {
        assert!(matches!(
            Category::new(bundled::matrix2_hilb(), &[1.0, -2.0]),
            Err(FusionError::NonPositiveWeight { sheet: 1, .. })
        ));
    }

    #[test]
    fn renorm_examples() {
        let tol = Tolerance::default();
        let h = renorm_scalar(&cat(bundled::hilb(), &[1.0]), &tol).unwrap();
        assert!((h.per_sheet[0] - 1.0).abs() < 1e-14 && (h.components[0].prefactor - 1.0).abs() < 1e-14);

        let f = renorm_scalar(&cat(bundled::fibonacci(), &[1.0]), &tol).unwrap();
        assert!((f.per_sheet[0] - (1.0 + PHI * PHI)).abs() < 1e-10);
        assert!((f.components[0].prefactor - 1.0 / (1.0 + PHI * PHI)).abs() < 1e-10);

        let m = renorm_scalar(&cat(bundled::matrix2_hilb(), &[1.0, 1.0]), &tol).unwrap();
        assert!((m.per_sheet[0] - 2.0).abs() < 1e-12 && (m.per_sheet[1] - 2.0).abs() < 1e-12);
        assert!((m.components[0].closed_form - 2.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_examples() {
        let tol = Tolerance::default();
        let (h, _) = canonical_two_hilbert(&cat(bundled::hilb(), &[1.0]), &tol, 0).unwrap();
        assert_eq!(h.dims, vec![1.0]);
        let (i, chk) = canonical_two_hilbert(&cat(bundled::ising(), &[1.0]), &tol, 1).unwrap();
        assert!((i.dims[1] - 2f64.sqrt()).abs() < 1e-11 && (i.dims[2] - 1.0).abs() < 1e-12);
        assert!(chk.left_residual < 1e-12 && chk.right_residual < 1e-12);
        let (m, _) = canonical_two_hilbert(&cat(bundled::matrix2_hilb(), &[1.0, 4.0]), &tol, 2).unwrap();
        for (d, w) in m.dims.iter().zip([1.0, 2.0, 2.0, 4.0]) {
            assert!((d - w).abs() < 1e-12);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn gauge_scaling(l in 0.1f64..10.0, p in 0.1f64..10.0) {
                let base = cat(bundled::matrix2_hilb(), &[1.0, p]);
                let scaled = cat(bundled::matrix2_hilb(), &[l, l * p]);
                for a in 0..4 {
                    prop_assert!((scaled.udf.dims[a] - l * base.udf.dims[a]).abs() < 1e-10 * l * base.udf.dims[a]);
                    prop_assert!((scaled.udf.dim_l[a] - base.udf.dim_l[a]).abs() < 1e-10 * base.udf.dim_l[a]);
                }
            }

            #[test]
            fn left_right_spherical(seed in 0u64..1000, p in 0.2f64..5.0) {
                let m = cat(bundled::matrix2_hilb(), &[1.0, p]);
                prop_assert!(canonical_two_hilbert(&m, &Tolerance::default(), seed).is_ok());
                let i = cat(bundled::ising(), &[p]);
                prop_assert!(canonical_two_hilbert(&i, &Tolerance::default(), seed).is_ok());
            }

            #[test]
            fn per_sheet_independence(p in 0.1f64..10.0, q in 0.1f64..10.0) {
                let m = cat(bundled::matrix2_hilb(), &[p, q]);
                let rep = renorm_scalar(&m, &Tolerance::default()).unwrap();
                prop_assert!(rep.max_gap < 1e-9 * rep.components[0].closed_form);
            }

            #[test]
            fn loops_match_dim_ratios(p in 0.1f64..10.0) {
                let m = cat(bundled::matrix2_hilb(), &[1.0, p]);
                for l in ["e11", "e12", "e21", "e22"] {
                    let a = m.data.index(l).unwrap();
                    let want_l = m.udf.dims[a] / m.udf.psi[m.data.source[a]];
                    let want_r = m.udf.dims[a] / m.udf.psi[m.data.target[a]];
                    prop_assert!((loop_eval(&m, l, LoopSide::L).unwrap() - want_l).abs() < 1e-10 * want_l);
                    prop_assert!((loop_eval(&m, l, LoopSide::R).unwrap() - want_r).abs() < 1e-10 * want_r);
                }
            }
        }
    }
}
