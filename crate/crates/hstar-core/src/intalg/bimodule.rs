//! Bimodules, relative tensor products and the δ = 0 duality.

use super::module::{eigen_split, module_homs, module_trace, random_combination, RightModule, HOM_CUT};
use super::{AlgebraObject, IntAlgError};
use crate::fusion::{Mor, Obj};
use crate::numcore::{c, nullspace, CMatrix, Tolerance};
use num_complex::Complex64;
use crate::sample;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: AlgebraObject,
    pub right: AlgebraObject,
    pub obj: Obj,
    /// `λ : A ⊗ M → M`.
    pub lam: Mor,
    /// `ρ : M ⊗ B → M`.
    pub rho: Mor,
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleResiduals {
    pub left_assoc: f64,
    pub left_unit: f64,
    pub right_assoc: f64,
    pub right_unit: f64,
    pub middle: f64,
}

impl BimoduleResiduals {
    pub fn max(&self) -> f64 {
        [self.left_assoc, self.left_unit, self.right_assoc, self.right_unit, self.middle]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Same algebra up to rounding.
pub fn same_algebra(a: &AlgebraObject, b: &AlgebraObject) -> bool {
    a.cat.data.simples == b.cat.data.simples
        && a.obj.mult == b.obj.mult
        && a.mu.sub(&b.mu.cast(&a.mu.src, &a.mu.tgt)).norm() < 1e-12
        && a.iota.sub(&b.iota.cast(&a.iota.src, &a.iota.tgt)).norm() < 1e-12
}

impl Bimodule {
    pub fn new(left: AlgebraObject, right: AlgebraObject, obj: Obj, lam: Mor, rho: Mor) -> Self {
        let cat = left.cat.clone();
        let lam = lam.cast(&cat.tensor_obj(&left.obj, &obj), &obj);
        let rho = rho.cast(&cat.tensor_obj(&obj, &right.obj), &obj);
        Bimodule { left, right, obj, lam, rho }
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(alg: &AlgebraObject) -> Self {
        Bimodule::new(alg.clone(), alg.clone(), alg.obj.clone(), alg.mu.clone(), alg.mu.clone())
    }

    /// `A` as an `A`-`1` bimodule.
    pub fn left_regular(alg: &AlgebraObject) -> Self {
        let one = AlgebraObject::trivial(alg.cat.clone());
        let rho = alg.cat.runit(&alg.obj);
        Bimodule::new(alg.clone(), one, alg.obj.clone(), alg.mu.clone(), rho)
    }

    /// A right `A`-module as a `1`-`A` bimodule.
    pub fn from_right(alg: &AlgebraObject, m: &RightModule) -> Self {
        let one = AlgebraObject::trivial(alg.cat.clone());
        let lam = alg.cat.lunit(&m.obj);
        Bimodule::new(one, alg.clone(), m.obj.clone(), lam, m.rho.clone())
    }

    /// `X ⊗ A` as a `1`-`A` bimodule.
    pub fn free_right(alg: &AlgebraObject, x: &Obj) -> Self {
        Self::from_right(alg, &RightModule::free(alg, x))
    }

    /// `A ⊗ X` as an `A`-`1` bimodule with `λ = (μ ⊗ id) α⁻¹`.
    pub fn free_left(alg: &AlgebraObject, x: &Obj) -> Self {
        let cat = &alg.cat;
        let obj = cat.tensor_obj(&alg.obj, x);
        let lam = cat
            .tensor(&alg.mu, &cat.id(x))
            .after(&cat.assoc_inv(&alg.obj, &alg.obj, x));
        let one = AlgebraObject::trivial(cat.clone());
        let rho = cat.runit(&obj);
        Bimodule::new(alg.clone(), one, obj, lam, rho)
    }

    pub fn as_right_module(&self) -> RightModule {
        RightModule {
            obj: self.obj.clone(),
            rho: self.rho.clone(),
        }
    }

    pub fn residuals(&self) -> BimoduleResiduals {
        let cat = &self.left.cat;
        let (a, b, m) = (&self.left.obj, &self.right.obj, &self.obj);
        let idm = cat.id(m);
        let (right_assoc, right_unit) = self.as_right_module().action_residual(&self.right);
        let l1 = self.lam.after(&cat.tensor(&self.left.mu, &idm));
        let l2 = self
            .lam
            .after(&cat.tensor(&self.left.id(), &self.lam))
            .after(&cat.assoc(a, a, m));
        let lu = self
            .lam
            .after(&cat.tensor(&self.left.iota, &idm))
            .after(&cat.lunit(m).dagger());
        let mid1 = self.rho.after(&cat.tensor(&self.lam, &self.right.id()));
        let mid2 = self
            .lam
            .after(&cat.tensor(&self.left.id(), &self.rho))
            .after(&cat.assoc(a, m, b));
        BimoduleResiduals {
            left_assoc: l1.sub(&l2).norm(),
            left_unit: lu.sub(&idm).norm(),
            right_assoc,
            right_unit,
            middle: mid1.sub(&mid2).norm(),
        }
    }

    /// `λ (β_A^{-1/2} ι ⊗ id) λ_1†` and `ρ (id ⊗ β_B^{-1/2} ι) ρ_1†`.
    fn dressings(&self, tol: &Tolerance) -> Result<(Mor, Mor), IntAlgError> {
        let cat = &self.left.cat;
        let m = &self.obj;
        let idm = cat.id(m);
        let ia = self.left.dressed_unit(-0.5, tol)?;
        let ib = self.right.dressed_unit(-0.5, tol)?;
        let da = self.lam.after(&cat.tensor(&ia, &idm)).after(&cat.lunit(m).dagger());
        let db = self.rho.after(&cat.tensor(&idm, &ib)).after(&cat.runit(m).dagger());
        Ok((da, db))
    }
}

/// `p_{M,N} = (ρ_M ⊗ λ_N) α (α⁻¹ ⊗ id) ((id ⊗ μ†β⁻¹ι) ⊗ id) (ρ_1† ⊗ id)` on `M ⊗ N`.
pub fn separability_idempotent(m: &Bimodule, n: &Bimodule, tol: &Tolerance) -> Result<Mor, IntAlgError> {
    if !same_algebra(&m.right, &n.left) {
        return Err(IntAlgError::AlgebraMismatch("right algebra of M differs from left algebra of N".into()));
    }
    let cat = &m.left.cat;
    let b = &m.right;
    let (x, y) = (&m.obj, &n.obj);
    let w = b.mu.dagger().after(&b.dressed_unit(-1.0, tol)?);
    let xb = cat.tensor_obj(x, &b.obj);
    let idy = cat.id(y);
    Ok(cat
        .tensor(&m.rho, &n.lam)
        .after(&cat.assoc(&xb, &b.obj, y))
        .after(&cat.tensor(&cat.assoc_inv(x, &b.obj, &b.obj), &idy))
        .after(&cat.tensor(&cat.tensor(&cat.id(x), &w), &idy))
        .after(&cat.tensor(&cat.runit(x).dagger(), &idy)))
}

#[derive(Clone, Debug)]
pub struct RelativeTensor {
    pub product: Bimodule,
    /// `V : M ⊠ N → M ⊗ N` with `V V† = p_{M,N}`.
    pub inclusion: Mor,
    pub projection: Mor,
    pub projection_defect: f64,
}

pub fn relative_tensor(m: &Bimodule, n: &Bimodule, tol: &Tolerance) -> Result<RelativeTensor, IntAlgError> {
    let cat = m.left.cat.clone();
    let p = separability_idempotent(m, n, tol)?;
    let defect = p.after(&p).sub(&p).norm().max(p.dagger().sub(&p).norm());
    if !tol.accepts(defect, 1.0 + p.norm()) {
        return Err(IntAlgError::NotProjection { defect });
    }
    let tag = format!("({}⊠{})", m.obj.tag, n.obj.tag);
    let v = cat.split(&p, &tag, tol)?;
    let obj = v.src.clone();
    let (a, cc) = (&m.left, &n.right);
    let (x, y) = (&m.obj, &n.obj);
    let vd = v.dagger();
    let lam = vd
        .after(&cat.tensor(&m.lam, &cat.id(y)))
        .after(&cat.assoc_inv(&a.obj, x, y))
        .after(&cat.tensor(&a.id(), &v));
    let rho = vd
        .after(&cat.tensor(&cat.id(x), &n.rho))
        .after(&cat.assoc(x, y, &cc.obj))
        .after(&cat.tensor(&v, &cc.id()));
    let product = Bimodule::new(a.clone(), cc.clone(), obj, lam, rho);
    Ok(RelativeTensor {
        product,
        inclusion: v,
        projection: p,
        projection_defect: defect,
    })
}

/// `A ⊠_A N → N`, `λ_N (β^{-1/2} ⊗ id) V`.
pub fn left_unitor(rt: &RelativeTensor, n: &Bimodule, tol: &Tolerance) -> Result<Mor, IntAlgError> {
    let cat = &n.left.cat;
    let x = n.left.bubble_pow(-0.5, tol)?;
    Ok(n.lam.after(&cat.tensor(&x, &cat.id(&n.obj))).after(&rt.inclusion))
}

/// `M ⊠_B B → M`, `ρ_M (id ⊗ β^{-1/2}) V`.
pub fn right_unitor(rt: &RelativeTensor, m: &Bimodule, tol: &Tolerance) -> Result<Mor, IntAlgError> {
    let cat = &m.left.cat;
    let x = m.right.bubble_pow(-0.5, tol)?;
    Ok(m.rho.after(&cat.tensor(&cat.id(&m.obj), &x)).after(&rt.inclusion))
}

/// `max(‖u†u − id‖, ‖uu† − id‖)`.
pub fn unitary_residual(u: &Mor) -> f64 {
    let a = u.dagger().after(u);
    let b = u.after(&u.dagger());
    let ida = Mor {
        src: a.src.clone(),
        tgt: a.tgt.clone(),
        blocks: a.src.mult.iter().map(|&k| crate::numcore::CMatrix::identity(k, k)).collect(),
    };
    let idb = Mor {
        src: b.src.clone(),
        tgt: b.tgt.clone(),
        blocks: b.src.mult.iter().map(|&k| crate::numcore::CMatrix::identity(k, k)).collect(),
    };
    a.sub(&ida).norm().max(b.sub(&idb).norm())
}

/// `M^∨` with `λ = ρ (id ⊗ coev_M†)(id ⊗ ρ_M ⊗ id)(ev_M† ⊗ id) λ_1†` and
/// `ρ = λ (ev_M ⊗ id)(id ⊗ λ_M ⊗ id)(id ⊗ coev_M) ρ_1†`.
pub fn dual_bimodule(m: &Bimodule) -> Bimodule {
    let cat = &m.left.cat;
    let (a, b) = (&m.left, &m.right);
    let x = &m.obj;
    let xd = cat.dual_obj(x);
    let idxd = cat.id(&xd);
    let (ev, coev) = (cat.ev(x), cat.coev(x));

    let bxd = cat.tensor_obj(&b.obj, &xd);
    let lam = cat
        .runit(&xd)
        .after(&cat.tensor(&idxd, &coev.dagger()))
        .after(&cat.tensor(&idxd, &cat.tensor(&m.rho, &idxd)))
        .after(&cat.tensor(&idxd, &cat.assoc_inv(x, &b.obj, &xd)))
        .after(&cat.assoc(&xd, x, &bxd))
        .after(&cat.tensor(&ev.dagger(), &cat.id(&bxd)))
        .after(&cat.lunit(&bxd).dagger());

    let xda = cat.tensor_obj(&xd, &a.obj);
    let rho = cat
        .lunit(&xd)
        .after(&cat.tensor(&ev, &idxd))
        .after(&cat.tensor(&cat.tensor(&idxd, &m.lam), &idxd))
        .after(&cat.tensor(&cat.assoc(&xd, &a.obj, x), &idxd))
        .after(&cat.assoc_inv(&xda, x, &xd))
        .after(&cat.tensor(&cat.id(&xda), &coev))
        .after(&cat.runit(&xda).dagger());
    Bimodule::new(b.clone(), a.clone(), xd, lam, rho)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualCertificate {
    pub accept: bool,
    pub dual_action_residual: f64,
    pub zigzag_residual: f64,
    /// Largest relative gap `|‖mate f‖² − ‖f‖²| / (1 + ‖f‖²)`.
    pub isometry_residual: f64,
    pub round_trip_residual: f64,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct DualData {
    pub module: Bimodule,
    pub dual: Bimodule,
    /// `ev⁰ : M^∨ ⊗ M → B`.
    pub ev0: Mor,
    /// `coev⁰ : A → M ⊗ M^∨`.
    pub coev0: Mor,
    pub certificate: DualCertificate,
}

/// Number of random bimodule maps tested by [`bimodule_dual_delta0`].
pub const DUAL_SAMPLES: usize = 20;

pub fn bimodule_dual_delta0(m: &Bimodule, tol: &Tolerance, seed: u64) -> Result<DualData, IntAlgError> {
    let cat = m.left.cat.clone();
    let (a, b) = (&m.left, &m.right);
    let x = &m.obj;
    let xd = cat.dual_obj(x);
    let dual = dual_bimodule(m);
    let (da, db) = m.dressings(tol)?;

    let ev0 = cat
        .lunit(&b.obj)
        .after(&cat.tensor(&cat.ev(x), &b.id()))
        .after(&cat.assoc_inv(&xd, x, &b.obj))
        .after(&cat.tensor(&cat.id(&xd), &m.rho.dagger().after(&da)));
    let coev0 = cat
        .tensor(&db.after(&m.lam), &cat.id(&xd))
        .after(&cat.assoc_inv(&a.obj, x, &xd))
        .after(&cat.tensor(&a.id(), &cat.coev(x)))
        .after(&cat.runit(&a.obj).dagger());

    let mut data = DualData {
        module: m.clone(),
        dual,
        ev0,
        coev0,
        certificate: DualCertificate {
            accept: false,
            dual_action_residual: 0.0,
            zigzag_residual: 0.0,
            isometry_residual: 0.0,
            round_trip_residual: 0.0,
            samples: 0,
        },
    };
    data.certificate = data.certify(tol, seed)?;
    Ok(data)
}

impl DualData {
    /// Both zig-zag composites minus the identity.
    pub fn zigzag_residual(&self, tol: &Tolerance) -> Result<f64, IntAlgError> {
        let m = &self.module;
        let d = &self.dual;
        let cat = &m.left.cat;
        let (a, b) = (&m.left, &m.right);
        let (x, xd) = (&m.obj, &d.obj);

        let ra = Bimodule::regular(a);
        let rb = Bimodule::regular(b);
        let p_am = separability_idempotent(&ra, m, tol)?;
        let p_mb = separability_idempotent(m, &rb, tol)?;
        let ba = a.bubble_pow(-0.5, tol)?;
        let bb = b.bubble_pow(-0.5, tol)?;
        let first = m
            .rho
            .after(&cat.tensor(&cat.id(x), &bb))
            .after(&p_mb)
            .after(&cat.tensor(&cat.id(x), &self.ev0))
            .after(&cat.assoc(x, xd, x))
            .after(&cat.tensor(&self.coev0, &cat.id(x)))
            .after(&p_am)
            .after(&cat.tensor(&ba, &cat.id(x)))
            .after(&m.lam.dagger());

        let p_bd = separability_idempotent(&rb, d, tol)?;
        let p_da = separability_idempotent(d, &ra, tol)?;
        let second = d
            .lam
            .after(&cat.tensor(&bb, &cat.id(xd)))
            .after(&p_bd)
            .after(&cat.tensor(&self.ev0, &cat.id(xd)))
            .after(&cat.assoc_inv(xd, x, xd))
            .after(&cat.tensor(&cat.id(xd), &self.coev0))
            .after(&p_da)
            .after(&cat.tensor(&cat.id(xd), &ba))
            .after(&d.rho.dagger());
        Ok(first
            .sub(&cat.id(x))
            .norm()
            .max(second.sub(&cat.id(xd)).norm()))
    }
}

/// Data for transporting maps across `- ⊠_A M ⊣ - ⊠_B M^∨` between a `1`-`A`
/// bimodule `X` and a `1`-`B` bimodule `Y`.
pub struct MateContext<'a> {
    pub data: &'a DualData,
    pub x: Bimodule,
    pub y: Bimodule,
    /// `X ⊠_A M`.
    pub xm: RelativeTensor,
    /// `Y ⊠_B M^∨`.
    pub ymd: RelativeTensor,
    p_xa: Mor,
    p_yb: Mor,
}

impl DualData {
    pub fn context(&self, x: &Bimodule, y: &Bimodule, tol: &Tolerance) -> Result<MateContext<'_>, IntAlgError> {
        let xm = relative_tensor(x, &self.module, tol)?;
        let ymd = relative_tensor(y, &self.dual, tol)?;
        let p_xa = separability_idempotent(x, &Bimodule::regular(&self.module.left), tol)?;
        let p_yb = separability_idempotent(y, &Bimodule::regular(&self.module.right), tol)?;
        Ok(MateContext {
            data: self,
            x: x.clone(),
            y: y.clone(),
            xm,
            ymd,
            p_xa,
            p_yb,
        })
    }

    fn certify(&self, tol: &Tolerance, seed: u64) -> Result<DualCertificate, IntAlgError> {
        let m = &self.module;
        let cat = m.left.cat.clone();
        let dual_action_residual = self.dual.residuals().max();
        let zigzag_residual = self.zigzag_residual(tol)?;
        let mut rng = sample::rng(seed);
        let (mut iso, mut round): (f64, f64) = (0.0, 0.0);
        let mut samples = 0;
        let mut tested_spaces = 0;
        'outer: for pass in 0..DUAL_SAMPLES {
            for cc in 0..cat.rank() {
                let x = Bimodule::free_right(&m.left, &cat.simple(cc));
                if x.obj.is_zero() {
                    continue;
                }
                let probe = relative_tensor(&x, m, tol)?;
                if probe.product.obj.is_zero() {
                    continue;
                }
                let y = Bimodule::from_right(&m.right, &probe.product.as_right_module());
                let ctx = self.context(&x, &y, tol)?;
                let basis = module_homs(&m.right, &ctx.xm.product.as_right_module(), &y.as_right_module());
                if basis.is_empty() {
                    continue;
                }
                if pass == 0 {
                    tested_spaces += 1;
                }
                let mut f = cat.zero_mor(&ctx.xm.product.obj, &y.obj);
                for e in &basis {
                    f = f.add(&e.scale(sample::complex(&mut rng)));
                }
                let g = ctx.mate(&f, tol)?;
                let nf = ctx.norm_b(&f, tol)?;
                let ng = ctx.norm_a(&g, tol)?;
                iso = iso.max((nf - ng).abs() / (1.0 + nf.abs()));
                let back = ctx.inverse_mate(&g, tol)?;
                round = round.max(back.sub(&f).norm() / (1.0 + f.norm()));
                samples += 1;
                if samples >= DUAL_SAMPLES {
                    break 'outer;
                }
            }
            if tested_spaces == 0 {
                break;
            }
        }
        let accept = tol.accepts(dual_action_residual, 1.0)
            && tol.accepts(zigzag_residual, 1.0)
            && tol.accepts(iso, 1.0)
            && tol.accepts(round, 1.0)
            && (samples > 0 || m.obj.is_zero());
        Ok(DualCertificate {
            accept,
            dual_action_residual,
            zigzag_residual,
            isometry_residual: iso,
            round_trip_residual: round,
            samples,
        })
    }
}

impl MateContext<'_> {
    /// `C_B(X ⊠_A M → Y) → C_A(X → Y ⊠_B M^∨)`.
    pub fn mate(&self, f: &Mor, tol: &Tolerance) -> Result<Mor, IntAlgError> {
        let d = self.data;
        let m = &d.module;
        let cat = &m.left.cat;
        let x = &self.x.obj;
        let ft = f.after(&self.xm.inclusion.dagger());
        let unit_inv = self
            .p_xa
            .after(&cat.tensor(&cat.id(x), &m.left.bubble_pow(-0.5, tol)?))
            .after(&self.x.rho.dagger());
        Ok(self
            .ymd
            .inclusion
            .dagger()
            .after(&cat.tensor(&ft, &cat.id(&d.dual.obj)))
            .after(&cat.assoc_inv(x, &m.obj, &d.dual.obj))
            .after(&cat.tensor(&cat.id(x), &d.coev0))
            .after(&unit_inv))
    }

    /// `C_A(X → Y ⊠_B M^∨) → C_B(X ⊠_A M → Y)`.
    pub fn inverse_mate(&self, g: &Mor, tol: &Tolerance) -> Result<Mor, IntAlgError> {
        let d = self.data;
        let m = &d.module;
        let cat = &m.left.cat;
        let y = &self.y.obj;
        let gt = self.ymd.inclusion.after(g);
        let unitor = self
            .y
            .rho
            .after(&cat.tensor(&cat.id(y), &m.right.bubble_pow(-0.5, tol)?))
            .after(&self.p_yb);
        Ok(unitor
            .after(&cat.tensor(&cat.id(y), &d.ev0))
            .after(&cat.assoc(y, &d.dual.obj, &m.obj))
            .after(&cat.tensor(&gt, &cat.id(&m.obj)))
            .after(&self.xm.inclusion))
    }

    /// `Tr^{C_B}_{X ⊠ M}(f† f)`.
    pub fn norm_b(&self, f: &Mor, tol: &Tolerance) -> Result<f64, IntAlgError> {
        let b = &self.data.module.right;
        let unit = b.dressed_unit(-1.0, tol)?;
        Ok(module_trace(b, &unit, &self.xm.product.as_right_module(), &f.dagger().after(f)).re)
    }

    /// `Tr^{C_A}_X(g† g)`.
    pub fn norm_a(&self, g: &Mor, tol: &Tolerance) -> Result<f64, IntAlgError> {
        let a = &self.data.module.left;
        let unit = a.dressed_unit(-1.0, tol)?;
        Ok(module_trace(a, &unit, &self.x.as_right_module(), &g.dagger().after(g)).re)
    }
}

/// Basis of bimodule maps `M → N`, orthonormal for the entrywise inner product.
pub fn bimodule_homs(m: &Bimodule, n: &Bimodule) -> Vec<Mor> {
    let cat = &m.left.cat;
    let len = Mor::flat_len(&m.obj, &n.obj);
    if len == 0 {
        return Vec::new();
    }
    let am = cat.tensor_obj(&m.left.obj, &m.obj);
    let mb = cat.tensor_obj(&m.obj, &m.right.obj);
    let r1 = Mor::flat_len(&am, &n.obj);
    let rows = r1 + Mor::flat_len(&mb, &n.obj);
    let mut lin = CMatrix::zeros(rows, len);
    let mut e = vec![c(0.0); len];
    let (ida, idb) = (m.left.id(), m.right.id());
    for k in 0..len {
        e[k] = c(1.0);
        let f = Mor::unflatten(&m.obj, &n.obj, &e);
        let l = f.after(&m.lam).sub(&n.lam.after(&cat.tensor(&ida, &f)));
        let r = f.after(&m.rho).sub(&n.rho.after(&cat.tensor(&f, &idb)));
        for (row, z) in l.flatten().into_iter().chain(r.flatten()).enumerate() {
            lin[(row, k)] = z;
        }
        e[k] = c(0.0);
    }
    let ker = nullspace(&lin, HOM_CUT);
    (0..ker.ncols())
        .map(|j| {
            let v: Vec<Complex64> = ker.column(j).iter().copied().collect();
            Mor::unflatten(&m.obj, &n.obj, &v)
        })
        .collect()
}

impl Bimodule {
    /// Sub-bimodule cut out by an isometry `V : S → M` whose range projection is a bimodule map.
    pub fn restrict(&self, v: &Mor) -> Bimodule {
        let cat = &self.left.cat;
        let vd = v.dagger();
        let lam = vd.after(&self.lam).after(&cat.tensor(&self.left.id(), v));
        let rho = vd.after(&self.rho).after(&cat.tensor(v, &self.right.id()));
        Bimodule::new(self.left.clone(), self.right.clone(), v.src.clone(), lam, rho)
    }
}

/// Simple summands of a bimodule, as isometries into it.
pub fn split_bimodule(m: &Bimodule, rng: &mut sample::SampleRng, tol: &Tolerance) -> Vec<Mor> {
    let cat = &m.left.cat;
    let basis = bimodule_homs(m, m);
    if basis.len() <= 1 {
        return vec![cat.id(&m.obj)];
    }
    let h0 = random_combination(rng, &basis, &m.obj, &m.obj, &m.left);
    eigen_split(cat, &h0.add(&h0.dagger()), tol)
}

/// `Tr(f) = Tr^C(λ_M (β⁻¹ι ⊗ f) λ_1†)` for an endomorphism of a left `A`-module.
pub fn left_module_trace(alg: &AlgebraObject, binv_iota: &Mor, m: &Bimodule, f: &Mor) -> Complex64 {
    let cat = &alg.cat;
    let g = m
        .lam
        .after(&cat.tensor(binv_iota, f))
        .after(&cat.lunit(&m.obj).dagger());
    cat.trace(&g)
}

/// The simple left `A`-modules, found inside `A ⊗ c` for each simple `c`, with labels `A{c}` or `A{c}.{k}`.
pub fn simple_left_modules(alg: &AlgebraObject, tol: &Tolerance, seed: u64) -> Vec<(String, Bimodule)> {
    let cat = &alg.cat;
    let mut rng = sample::rng(seed);
    let mut out: Vec<(String, Bimodule)> = Vec::new();
    for cc in 0..cat.rank() {
        let free = Bimodule::free_left(alg, &cat.simple(cc));
        if free.obj.is_zero() {
            continue;
        }
        let parts = split_bimodule(&free, &mut rng, tol);
        let n = parts.len();
        for (k, v) in parts.iter().enumerate() {
            let name = &cat.data.simples[cc];
            let label = if n == 1 { format!("A{name}") } else { format!("A{name}.{k}") };
            let s = free.restrict(&v.cast(&v.src.retag(&label), &free.obj));
            if !out.iter().any(|(_, t)| !bimodule_homs(&s, t).is_empty()) {
                out.push((label, s));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{bundled, Category, FusionData};
    use crate::intalg::{module_category, standardize};
    use std::rc::Rc;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cat(d: FusionData) -> Rc<Category> {
        let k = d.sheets();
        Rc::new(Category::new(d, &vec![1.0; k]).unwrap())
    }

    fn ising_q() -> AlgebraObject {
        let a = AlgebraObject::group_algebra(cat(bundled::ising()), &[0, 2], 1.0, "A").unwrap();
        standardize(&a, &tol()).unwrap()
    }

    #[test]
    fn trivial_middle_algebra_gives_identity_projection() {
        let c = cat(bundled::fibonacci());
        let one = AlgebraObject::trivial(c.clone());
        let m = Bimodule::from_right(&one, &RightModule::new(&one, c.simple(1), c.runit(&c.simple(1))));
        let n = Bimodule::free_left(&one, &c.obj(vec![1, 1], "N"));
        let p = separability_idempotent(&m, &n, &tol()).unwrap();
        assert!(p.sub(&c.id(&p.src)).norm() < 1e-12);
        let rt = relative_tensor(&m, &n, &tol()).unwrap();
        assert_eq!(rt.product.obj.mult, c.tensor_obj(&m.obj, &n.obj).mult);
    }

    #[test]
    fn ising_a_box_a_is_a() {
        let a = ising_q();
        let ra = Bimodule::regular(&a);
        let rt = relative_tensor(&ra, &ra, &tol()).unwrap();
        assert_eq!(rt.product.obj.mult, a.obj.mult);
        assert!(rt.product.residuals().max() < 1e-10);
        assert!(unitary_residual(&left_unitor(&rt, &ra, &tol()).unwrap()) < 1e-9);
        assert!(unitary_residual(&right_unitor(&rt, &ra, &tol()).unwrap()) < 1e-9);
    }

    /// `(c ⊗ A) ⊠_A (A ⊗ c^∨) ≅ c ⊗ A ⊗ c^∨` as objects.
    #[test]
    fn free_bimodules_compose_to_pair_components() {
        let a = ising_q();
        let c = a.cat.clone();
        let s = c.simple(1);
        let sd = c.dual_obj(&s);
        let m = Bimodule::free_right(&a, &s);
        let n = Bimodule::free_left(&a, &sd);
        let rt = relative_tensor(&m, &n, &tol()).unwrap();
        let expect = c.tensor_obj(&s, &c.tensor_obj(&a.obj, &sd));
        assert_eq!(rt.product.obj.mult, expect.mult);
        assert_eq!(rt.product.obj.mult, vec![2, 0, 2]);
    }

    #[test]
    fn mismatched_middle_algebra_rejected() {
        let a = ising_q();
        let b = AlgebraObject::trivial(a.cat.clone());
        let err = relative_tensor(&Bimodule::regular(&a), &Bimodule::regular(&b), &tol()).unwrap_err();
        assert_eq!(err.axiom(), "algebra mismatch");
    }

    #[test]
    fn dual_of_regular_bimodule() {
        let a = ising_q();
        let d = bimodule_dual_delta0(&Bimodule::regular(&a), &tol(), 1).unwrap();
        assert_eq!(d.dual.obj.mult, a.obj.mult);
        assert!(d.certificate.zigzag_residual < 1e-12);
        assert!(d.certificate.accept, "{:?}", d.certificate);
    }

    #[test]
    fn z2_left_regular_adjunction_isometric() {
        let a = AlgebraObject::group_algebra(cat(bundled::z2()), &[0, 1], 0.5f64.sqrt(), "A").unwrap();
        let d = bimodule_dual_delta0(&Bimodule::left_regular(&a), &tol(), 2).unwrap();
        assert_eq!(d.certificate.samples, DUAL_SAMPLES);
        assert!(d.certificate.isometry_residual < 1e-9, "{:?}", d.certificate);
        assert!(d.certificate.accept);
    }

    #[test]
    fn ising_sigma_module_adjunction_isometric() {
        let a = ising_q();
        let mc = module_category(&a, &tol(), 3).unwrap();
        let sigma = mc.labels.iter().position(|l| l.starts_with('s')).unwrap();
        let m = Bimodule::from_right(&a, &mc.simples[sigma]);
        let d = bimodule_dual_delta0(&m, &tol(), 4).unwrap();
        assert_eq!(d.certificate.samples, DUAL_SAMPLES);
        assert!(d.certificate.isometry_residual < 1e-8, "{:?}", d.certificate);
        assert!(d.certificate.round_trip_residual < 1e-8);
        assert!(d.certificate.accept);
    }
}
