//! H*-monads on one object of a presentation and the bimodule 2-category they span.
//!
//! A 1-morphism `A → B` between monads is an `A`-`B` bimodule; its dual and
//! (co)evaluations are the δ = 0 data of [`bimodule_dual_delta0`]. The weight
//! on `End(1_A)` is `Ψ_A(f) = Ψ_a(ι† f β⁻¹ ι)`.

use super::presentation::{classify, id_defect, IsometryCertificate, Pre3HilbPresentation};
use super::Hilb3Error;
use crate::fusion::{Category, Mor, Obj};
use crate::hilb2::TwoHilbertSpace;
use crate::intalg::{
    bimodule_dual_delta0, bimodule_homs, relative_tensor, separability_idempotent, split_bimodule, unitary_residual,
    mor_pow, verify_hstar, AlgebraObject, Bimodule, DualData,
};
use crate::numcore::{c, Tolerance};
use crate::sample;
use num_complex::Complex64;
use serde::Serialize;
use std::rc::Rc;

#[derive(Clone, Debug)]
pub struct HStarMonad {
    pub label: String,
    /// Index of the underlying object of the presentation.
    pub base: usize,
    pub alg: AlgebraObject,
}

#[derive(Clone, Debug)]
pub struct MonadCompletion {
    pub presentation: Pre3HilbPresentation,
    pub base: usize,
    /// `End(base)`.
    pub cat: Rc<Category>,
    pub monads: Vec<HStarMonad>,
    pub certificate: MonadCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonadCertificate {
    pub accept: bool,
    pub monads: Vec<String>,
    /// Verdict of the H*-algebra check per monad.
    pub hstar: Vec<bool>,
    /// `Ψ_A(id)` per monad.
    pub psi: Vec<f64>,
    /// Largest relative gap between the two closed loops of a bimodule endomorphism.
    pub sphericality_residual: f64,
    pub samples: usize,
}

/// Simple 1-morphisms between two monads with their duality data.
#[derive(Clone, Debug)]
pub struct MonadHom {
    pub labels: Vec<String>,
    pub simples: Vec<Bimodule>,
    pub duals: Vec<DualData>,
    pub space: TwoHilbertSpace,
    pub left_right_residual: f64,
}

/// The fusion ring of the linking 2-category on two monads.
#[derive(Clone, Debug, Serialize)]
pub struct LinkingRing {
    pub accept: bool,
    pub labels: Vec<String>,
    /// Position of each simple as `(source monad, target monad)`.
    pub blocks: Vec<(usize, usize)>,
    pub units: Vec<usize>,
    /// `N[(x * r + y) * r + z]`.
    pub n: Vec<usize>,
    pub dims: Vec<f64>,
    pub associative: bool,
    pub unital: bool,
    pub has_duals: bool,
    /// Largest relative gap in `d_x d_y / d_u = Σ_z N_{xy}^z d_z`.
    pub dim_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitCertificate {
    pub accept: bool,
    /// Algebra-map residual of `j : A → B`.
    pub map_residual: f64,
    /// Smallest eigenvalue of `ev ev†` on `B`.
    pub ev_gram_min: f64,
    /// Unitarity defect of `ev : X^∨ ⊠_A X → B`.
    pub ev_defect: f64,
    /// `‖e e† − id‖` for the polar part `e = (ev ev†)^{-1/2} ev`.
    pub promoted_ev_defect: f64,
    /// Unitarity defect of `u : B → X ⊠_B X^∨`.
    pub u_defect: f64,
    /// `‖u j − coev‖`.
    pub unit_residual: f64,
    /// `A`-`A` bimodule intertwining residual of `u`.
    pub intertwining_residual: f64,
    pub dual_certificate: bool,
}

#[derive(Clone, Debug)]
pub struct MonadSplitting {
    /// `B` as its own H*-monad.
    pub object: AlgebraObject,
    /// `B` as an `A`-`B` bimodule.
    pub module: Bimodule,
    pub u: Mor,
    pub certificate: SplitCertificate,
}

/// `A ⊗ x ⊗ B` with the free actions.
pub fn free_bimodule(a: &AlgebraObject, b: &AlgebraObject, x: &Obj) -> Bimodule {
    let cat = &a.cat;
    let ax = cat.tensor_obj(&a.obj, x);
    let obj = cat.tensor_obj(&ax, &b.obj);
    let lam = cat
        .tensor(&cat.tensor(&a.mu, &cat.id(x)).after(&cat.assoc_inv(&a.obj, &a.obj, x)), &b.id())
        .after(&cat.assoc_inv(&a.obj, &ax, &b.obj));
    let rho = cat.tensor(&cat.id(&ax), &b.mu).after(&cat.assoc(&ax, &b.obj, &b.obj));
    Bimodule::new(a.clone(), b.clone(), obj, lam, rho)
}

/// `Ψ_A(f) = ψ(ι† f β⁻¹ ι)` for `f ∈ End(A)`.
pub fn monad_psi(a: &AlgebraObject, f: &Mor, tol: &Tolerance) -> Result<Complex64, Hilb3Error> {
    let g = a.iota.dagger().after(f).after(&a.dressed_unit(-1.0, tol)?);
    Ok(a.cat.psi_unit(&g))
}

/// `(Ψ_B(ev (id ⊠ f) ev†), Ψ_A(coev† (f ⊠ id) coev))` for an endomorphism of `M : A → B`.
pub fn closed_loops(d: &DualData, f: &Mor, tol: &Tolerance) -> Result<(Complex64, Complex64), Hilb3Error> {
    let m = &d.module;
    let cat = &m.left.cat;
    let p = separability_idempotent(&d.dual, m, tol)?;
    let g = d
        .ev0
        .after(&p)
        .after(&cat.tensor(&cat.id(&d.dual.obj), f))
        .after(&p)
        .after(&d.ev0.dagger());
    let q = separability_idempotent(m, &d.dual, tol)?;
    let h = d
        .coev0
        .dagger()
        .after(&q)
        .after(&cat.tensor(f, &cat.id(&d.dual.obj)))
        .after(&q)
        .after(&d.coev0);
    Ok((monad_psi(&m.right, &g, tol)?, monad_psi(&m.left, &h, tol)?))
}

/// Simple `A`-`B` bimodules, found inside `A ⊗ c ⊗ B`.
pub fn simple_bimodules(a: &AlgebraObject, b: &AlgebraObject, tol: &Tolerance, seed: u64) -> Vec<(String, Bimodule)> {
    let cat = &a.cat;
    let mut rng = sample::rng(seed);
    let mut out: Vec<(String, Bimodule)> = Vec::new();
    for cc in 0..cat.rank() {
        let free = free_bimodule(a, b, &cat.simple(cc));
        if free.obj.is_zero() {
            continue;
        }
        let parts = split_bimodule(&free, &mut rng, tol);
        let n = parts.len();
        for (k, v) in parts.iter().enumerate() {
            let name = &cat.data.simples[cc];
            let label = if n == 1 { format!("M{name}") } else { format!("M{name}.{k}") };
            let s = free.restrict(&v.cast(&v.src.retag(&label), &free.obj));
            if !out.iter().any(|(_, t)| !bimodule_homs(&s, t).is_empty()) {
                out.push((label, s));
            }
        }
    }
    out
}

fn random_endo(rng: &mut sample::SampleRng, m: &Bimodule) -> Option<Mor> {
    let basis = bimodule_homs(m, m);
    let first = basis.first()?.clone();
    let mut f = first.scale(c(0.0));
    for b in &basis {
        f = f.add(&b.scale(sample::complex(rng)));
    }
    Some(f)
}

/// Number of sampled endomorphisms per pair of monads.
const LOOP_SAMPLES: usize = 4;

pub fn hstar_monad_completion(
    x: &Pre3HilbPresentation,
    base: usize,
    monads: Vec<(String, AlgebraObject)>,
    tol: &Tolerance,
    seed: u64,
) -> Result<MonadCompletion, Hilb3Error> {
    let cat = x.end_category(base)?;
    let mut list = vec![HStarMonad {
        label: format!("1_{}", x.labels[base]),
        base,
        alg: AlgebraObject::trivial(cat.clone()),
    }];
    for (label, alg) in monads {
        if alg.cat.data.simples != cat.data.simples || alg.cat.udf.psi != cat.udf.psi {
            return Err(Hilb3Error::Invalid(format!("monad `{label}` does not live on End({})", x.labels[base])));
        }
        list.push(HStarMonad { label, base, alg });
    }
    let mut hstar = Vec::new();
    let mut psi = Vec::new();
    for m in &list {
        hstar.push(verify_hstar(&m.alg, tol)?.accept);
        psi.push(monad_psi(&m.alg, &m.alg.id(), tol)?.re);
    }
    let mut rng = sample::rng(seed);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for (i, mi) in list.iter().enumerate() {
        for (j, mj) in list.iter().enumerate() {
            let mut taken = 0;
            for cc in 0..cat.rank() {
                if taken == LOOP_SAMPLES {
                    break;
                }
                let free = free_bimodule(&mi.alg, &mj.alg, &cat.simple(cc));
                if free.obj.is_zero() {
                    continue;
                }
                let f = match random_endo(&mut rng, &free) {
                    Some(f) => f,
                    None => continue,
                };
                let d = bimodule_dual_delta0(&free, tol, seed ^ ((i * 31 + j) as u64))?;
                let (l, r) = closed_loops(&d, &f, tol)?;
                worst = worst.max((l - r).norm() / (1.0 + l.norm()));
                taken += 1;
                samples += 1;
            }
        }
    }
    let accept = hstar.iter().all(|&h| h) && tol.accepts(worst, 1.0);
    let certificate = MonadCertificate {
        accept,
        monads: list.iter().map(|m| m.label.clone()).collect(),
        hstar,
        psi,
        sphericality_residual: worst,
        samples,
    };
    Ok(MonadCompletion {
        presentation: x.clone(),
        base,
        cat,
        monads: list,
        certificate,
    })
}

impl MonadCompletion {
    pub fn monad(&self, label: &str) -> Result<usize, Hilb3Error> {
        self.monads
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| Hilb3Error::UnknownObject(label.into()))
    }

    pub fn psi(&self, i: usize, f: &Mor, tol: &Tolerance) -> Result<Complex64, Hilb3Error> {
        monad_psi(&self.monads[i].alg, f, tol)
    }

    /// `Hom(A_i, A_j)` as a 2-Hilbert space with dimensions from the closed loops.
    pub fn hom(&self, i: usize, j: usize, tol: &Tolerance, seed: u64) -> Result<MonadHom, Hilb3Error> {
        let (a, b) = (&self.monads[i].alg, &self.monads[j].alg);
        let found = simple_bimodules(a, b, tol, seed);
        let mut labels = Vec::new();
        let mut simples = Vec::new();
        let mut duals = Vec::new();
        let mut dims = Vec::new();
        let mut worst: f64 = 0.0;
        for (k, (label, m)) in found.into_iter().enumerate() {
            let d = bimodule_dual_delta0(&m, tol, seed.wrapping_add(k as u64))?;
            let (l, r) = closed_loops(&d, &m.left.cat.id(&m.obj), tol)?;
            worst = worst.max((l - r).norm() / (1.0 + l.norm()));
            dims.push(l.re);
            labels.push(label);
            simples.push(m);
            duals.push(d);
        }
        let space = TwoHilbertSpace::new(labels.clone(), dims).map_err(|e| Hilb3Error::Invalid(e.to_string()))?;
        Ok(MonadHom {
            labels,
            simples,
            duals,
            space,
            left_right_residual: worst,
        })
    }

    /// Fusion ring of the linking 2-category on `A_i` and `A_j`.
    pub fn linking(&self, i: usize, j: usize, tol: &Tolerance, seed: u64) -> Result<LinkingRing, Hilb3Error> {
        let ids: Vec<usize> = if i == j { vec![i] } else { vec![i, j] };
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        let mut simples: Vec<Bimodule> = Vec::new();
        let mut dims = Vec::new();
        for &s in &ids {
            for &t in &ids {
                let h = self.hom(s, t, tol, seed)?;
                for (k, m) in h.simples.into_iter().enumerate() {
                    labels.push(format!("{}:{}→{}", h.labels[k], self.monads[s].label, self.monads[t].label));
                    blocks.push((s, t));
                    dims.push(h.space.dims[k]);
                    simples.push(m);
                }
            }
        }
        let r = simples.len();
        let mut n = vec![0; r * r * r];
        for x in 0..r {
            for y in 0..r {
                if blocks[x].1 != blocks[y].0 {
                    continue;
                }
                let prod = relative_tensor(&simples[x], &simples[y], tol)?.product;
                for z in 0..r {
                    if blocks[z] == (blocks[x].0, blocks[y].1) && !prod.obj.is_zero() {
                        n[(x * r + y) * r + z] = bimodule_homs(&simples[z], &prod).len();
                    }
                }
            }
        }
        let units: Vec<usize> = (0..r)
            .filter(|&z| {
                let (s, t) = blocks[z];
                s == t && !bimodule_homs(&Bimodule::regular(&self.monads[s].alg), &simples[z]).is_empty()
            })
            .collect();
        let nn = |x: usize, y: usize, z: usize| n[(x * r + y) * r + z];
        let mut associative = true;
        for a in 0..r {
            for b in 0..r {
                for cc in 0..r {
                    for d in 0..r {
                        let lhs: usize = (0..r).map(|e| nn(a, b, e) * nn(e, cc, d)).sum();
                        let rhs: usize = (0..r).map(|f| nn(b, cc, f) * nn(a, f, d)).sum();
                        associative &= lhs == rhs;
                    }
                }
            }
        }
        let mut unital = true;
        for x in 0..r {
            for y in 0..r {
                let l: usize = units.iter().map(|&u| nn(u, x, y)).sum();
                let rr: usize = units.iter().map(|&u| nn(x, u, y)).sum();
                let want = usize::from(x == y);
                unital &= l == want && rr == want;
            }
        }
        let mut has_duals = true;
        for x in 0..r {
            has_duals &= (0..r).any(|y| units.iter().any(|&u| nn(x, y, u) == 1));
        }
        let mut dim_residual: f64 = 0.0;
        for x in 0..r {
            for y in 0..r {
                let mid = units.iter().copied().find(|&u| nn(x, u, x) == 1 && nn(u, y, y) == 1);
                let Some(u) = mid else { continue };
                let lhs = dims[x] * dims[y] / dims[u];
                let rhs: f64 = (0..r).map(|z| nn(x, y, z) as f64 * dims[z]).sum();
                dim_residual = dim_residual.max((lhs - rhs).abs() / (1.0 + lhs));
            }
        }
        let accept = associative && unital && has_duals && tol.accepts(dim_residual, 1.0);
        Ok(LinkingRing {
            accept,
            labels,
            blocks,
            units,
            n,
            dims,
            associative,
            unital,
            has_duals,
            dim_residual,
        })
    }

    /// Split `1_A` into simple summands, as projections summing to the identity.
    pub fn decompose(&self, i: usize, tol: &Tolerance, seed: u64) -> (usize, f64) {
        let alg = &self.monads[i].alg;
        let reg = Bimodule::regular(alg);
        let mut rng = sample::rng(seed);
        let parts = split_bimodule(&reg, &mut rng, tol);
        let mut total = alg.id().scale(c(0.0));
        for v in &parts {
            total = total.add(&v.after(&v.dagger()));
        }
        (parts.len(), total.sub(&alg.id()).norm())
    }
}

/// `B = X ⊗ X^∨` for `X = A` as a left `A`-module, with the unital algebra map `A → B`.
pub fn induced_monad(a: &AlgebraObject) -> (AlgebraObject, Mor) {
    let cat = &a.cat;
    let x = &a.obj;
    let b = AlgebraObject::pair_algebra(cat.clone(), x, "B");
    let xd = cat.dual_obj(x);
    let j = cat
        .tensor(&a.mu, &cat.id(&xd))
        .after(&cat.assoc_inv(&a.obj, x, &xd))
        .after(&cat.tensor(&a.id(), &cat.coev(x)))
        .after(&cat.runit(&a.obj).dagger());
    let j = j.cast(&a.obj, &b.obj);
    (b, j)
}

/// Split the monad `B` over `A` (given by a unital algebra map `j : A → B`) through `B` as an `A`-`B` bimodule.
pub fn split_monad(
    a: &AlgebraObject,
    b: &AlgebraObject,
    j: &Mor,
    tol: &Tolerance,
    seed: u64,
) -> Result<MonadSplitting, Hilb3Error> {
    let cat = a.cat.clone();
    let j = j.cast(&a.obj, &b.obj);
    let map_residual = b
        .mu
        .after(&cat.tensor(&j, &j))
        .sub(&j.after(&a.mu))
        .norm()
        .max(j.after(&a.iota).sub(&b.iota).norm());
    if !tol.accepts(map_residual, 1.0 + j.norm()) {
        return Err(Hilb3Error::Invalid(format!("j is not a unital algebra map (residual {map_residual:.3e})")));
    }
    let lam = b.mu.after(&cat.tensor(&j, &b.id()));
    let module = Bimodule::new(a.clone(), b.clone(), b.obj.clone(), lam, b.mu.clone());
    let dd = bimodule_dual_delta0(&module, tol, seed)?;

    let ev_side = relative_tensor(&dd.dual, &module, tol)?;
    let ev = dd.ev0.after(&ev_side.inclusion);
    let gram = ev.after(&ev.dagger());
    let ev_gram_min = gram
        .blocks
        .iter()
        .filter(|m| m.nrows() > 0)
        .flat_map(|m| m.clone().symmetric_eigenvalues().iter().copied().collect::<Vec<_>>())
        .fold(f64::INFINITY, f64::min);
    let ev_defect = unitary_residual(&ev);
    let polar = mor_pow(&gram, -0.5, tol)?.after(&ev);
    let pg = polar.after(&polar.dagger());
    let promoted_ev_defect = pg.sub(&b.id().cast(&pg.src, &pg.tgt)).norm();

    let co_side = relative_tensor(&module, &dd.dual, tol)?;
    let v = &co_side.inclusion;
    let xd = &dd.dual.obj;
    let x = &module.obj;
    let seed_vec = dd.coev0.after(&a.iota);
    let u = v
        .dagger()
        .after(&cat.tensor(&b.mu.cast(&cat.tensor_obj(&b.obj, x), x), &cat.id(xd)))
        .after(&cat.assoc_inv(&b.obj, x, xd))
        .after(&cat.tensor(&b.id(), &seed_vec))
        .after(&cat.runit(&b.obj).dagger());
    let u_defect = unitary_residual(&u);
    let unit_residual = u.after(&j).sub(&v.dagger().after(&dd.coev0)).norm();

    // `B` as an `A`-`A` bimodule against the product `X ⊠_B X^∨`.
    let prod = &co_side.product;
    let b_lam = b.mu.after(&cat.tensor(&j, &b.id()));
    let b_rho = b.mu.after(&cat.tensor(&b.id(), &j));
    let l = u
        .after(&b_lam)
        .sub(&prod.lam.after(&cat.tensor(&a.id(), &u)))
        .norm();
    let r = u
        .after(&b_rho)
        .sub(&prod.rho.after(&cat.tensor(&u, &a.id())))
        .norm();
    let intertwining_residual = l.max(r);

    let scale = 1.0 + u.norm();
    let accept = ev_gram_min > tol.abs_eps
        && tol.accepts(promoted_ev_defect, 1.0)
        && tol.accepts(u_defect, scale)
        && tol.accepts(unit_residual, scale)
        && tol.accepts(intertwining_residual, scale)
        && dd.certificate.accept;
    Ok(MonadSplitting {
        object: b.clone(),
        module,
        u,
        certificate: SplitCertificate {
            accept,
            map_residual,
            ev_gram_min,
            ev_defect,
            promoted_ev_defect,
            u_defect,
            unit_residual,
            intertwining_residual,
            dual_certificate: dd.certificate.accept,
        },
    })
}

/// Classify a bimodule `M : A → B` by its evaluation `ev⁰ V : M^∨ ⊠_A M → B` and
/// coevaluation `V† coev⁰ : A → M ⊠_B M^∨`.
pub fn certify_bimodule_1mor(m: &Bimodule, tol: &Tolerance, seed: u64) -> Result<IsometryCertificate, Hilb3Error> {
    let dd = bimodule_dual_delta0(m, tol, seed)?;
    let ev = dd.ev0.after(&relative_tensor(&dd.dual, m, tol)?.inclusion);
    let coev = relative_tensor(m, &dd.dual, tol)?.inclusion.dagger().after(&dd.coev0);
    let coev_defect = unitary_residual(&coev);
    let ev_defect = unitary_residual(&ev);
    let scale = 1.0 + m.obj.total() as f64;
    Ok(IsometryCertificate {
        kind: classify(tol.accepts(coev_defect, scale), tol.accepts(ev_defect, scale)),
        coev_defect,
        ev_defect,
        ev_isometry_defect: id_defect(&ev.dagger().after(&ev)),
        coev_isometry_defect: id_defect(&coev.dagger().after(&coev)),
    })
}

/// `X` as a left module over `X ⊗ X^∨` and a right module over `1`.
pub fn pair_module(alg: &AlgebraObject, x: &Obj) -> Bimodule {
    let cat = &alg.cat;
    let xd = cat.dual_obj(x);
    let lam = cat
        .runit(x)
        .after(&cat.tensor(&cat.id(x), &cat.ev(x)))
        .after(&cat.assoc(x, &xd, x));
    let one = AlgebraObject::trivial(cat.clone());
    let rho = cat.runit(x);
    Bimodule::new(alg.clone(), one, x.clone(), lam, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{bundled, FusionData};
    use crate::hilb3::IsometryKind;
    use crate::intalg::module_category;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cat(d: FusionData) -> Rc<Category> {
        Rc::new(Category::new(d, &[1.0]).unwrap())
    }

    fn z2_group(c: &Rc<Category>) -> AlgebraObject {
        AlgebraObject::group_algebra(c.clone(), &[0, 1], 0.5f64.sqrt(), "A").unwrap()
    }

    #[test]
    fn finite_hstar_algebras_over_hilb() {
        let x = Pre3HilbPresentation::delooping(cat(bundled::hilb()));
        let mc = hstar_monad_completion(&x, 0, vec![], &tol(), 0).unwrap();
        assert!(mc.certificate.accept);
        assert!((mc.certificate.psi[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn group_algebra_weight_matches_its_module() {
        let c = cat(bundled::z2());
        let a = z2_group(&c);
        let x = Pre3HilbPresentation::delooping(c);
        let mc = hstar_monad_completion(&x, 0, vec![("A".into(), a.clone())], &tol(), 0).unwrap();
        assert!(mc.certificate.accept, "{:?}", mc.certificate);
        // ι = √2 e, bubble = 1: Ψ_A(id) = |ι|² = 2.
        assert!((mc.certificate.psi[1] - 2.0).abs() < 1e-12);
        let modules = module_category(&a, &tol(), 0).unwrap();
        assert_eq!(modules.rank(), 1);
        assert!((modules.space.dims[0] - mc.certificate.psi[1]).abs() < 1e-12);
        let h = mc.hom(0, 1, &tol(), 0).unwrap();
        assert_eq!(h.space.rank(), 1);
        assert!((h.space.dims[0] - 2.0).abs() < 1e-12);
        assert!(h.left_right_residual < 1e-12);
    }

    #[test]
    fn hom_dims_agree_with_module_categories() {
        for (name, a) in crate::intalg::examples() {
            if !["z2-group", "ising-one-psi", "fibonacci-pair-tau"].contains(&name) {
                continue;
            }
            let x = Pre3HilbPresentation::delooping(a.cat.clone());
            let mc = hstar_monad_completion(&x, 0, vec![("A".into(), a.clone())], &tol(), 3).unwrap();
            let h = mc.hom(0, 1, &tol(), 3).unwrap();
            let modules = module_category(&a, &tol(), 3).unwrap();
            let mut got = h.space.dims.clone();
            let mut want = modules.space.dims.clone();
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            assert_eq!(got.len(), want.len(), "{name}");
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-9, "{name}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn linking_ring_of_unit_and_group_algebra() {
        let c = cat(bundled::z2());
        let x = Pre3HilbPresentation::delooping(c.clone());
        let mc = hstar_monad_completion(&x, 0, vec![("A".into(), z2_group(&c))], &tol(), 0).unwrap();
        let ring = mc.linking(0, 1, &tol(), 0).unwrap();
        assert!(ring.accept, "{ring:?}");
        assert_eq!(ring.units.len(), 2);
        // 1 → 1: {1, g}; 1 → A and A → 1: one each; A → A: two characters.
        assert_eq!(ring.labels.len(), 6);
    }

    #[test]
    fn splittings() {
        let c = cat(bundled::z2());
        let a = z2_group(&c);
        let one = AlgebraObject::trivial(c.clone());
        let s = split_monad(&one, &a, &a.iota, &tol(), 0).unwrap();
        assert!(s.certificate.accept, "{:?}", s.certificate);
        assert!(s.certificate.u_defect < 1e-9);

        let s = split_monad(&a, &a, &a.id(), &tol(), 0).unwrap();
        assert!(s.certificate.accept && s.certificate.ev_defect < 1e-12);

        let ising = cat(bundled::ising());
        let a = AlgebraObject::group_algebra(ising, &[0, 2], 0.5f64.sqrt(), "A").unwrap();
        let (b, j) = induced_monad(&a);
        let s = split_monad(&a, &b, &j, &tol(), 0).unwrap();
        assert!(s.certificate.accept, "{:?}", s.certificate);
        assert!(s.certificate.u_defect < 1e-8);
    }

    #[test]
    fn non_algebra_map_is_rejected() {
        let z2 = cat(bundled::z2());
        let a = z2_group(&z2);
        let one = AlgebraObject::trivial(z2);
        assert!(split_monad(&one, &a, &a.iota.scale(c(2.0)), &tol(), 0).is_err());
    }

    #[test]
    fn pair_splitting_is_an_isometric_equivalence() {
        for (d, k) in [(bundled::fibonacci(), 1), (bundled::ising(), 1)] {
            let c = cat(d);
            let x = c.simple(k);
            let a = AlgebraObject::pair_algebra(c.clone(), &x, "A");
            let m = pair_module(&a, &x);
            assert!(m.residuals().max() < 1e-12);
            let cert = certify_bimodule_1mor(&m, &tol(), 0).unwrap();
            assert_eq!(cert.kind, IsometryKind::IsometricEquivalence);
            assert!(cert.ev_defect < 1e-9);
        }
    }

    #[test]
    fn group_algebra_has_one_summand() {
        let c = cat(bundled::z2());
        let x = Pre3HilbPresentation::delooping(c.clone());
        let mc = hstar_monad_completion(&x, 0, vec![("A".into(), z2_group(&c))], &tol(), 0).unwrap();
        let (n, defect) = mc.decompose(1, &tol(), 0);
        assert_eq!(n, 1);
        assert!(defect < 1e-12);
    }

    #[test]
    fn foreign_monad_is_rejected() {
        let x = Pre3HilbPresentation::delooping(cat(bundled::z2()));
        let other = AlgebraObject::trivial(cat(bundled::fibonacci()));
        assert!(hstar_monad_completion(&x, 0, vec![("B".into(), other)], &tol(), 0).is_err());
    }
}
