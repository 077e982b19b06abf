//! Right modules, the module category `C_A` with its trace, and internal ends.

use super::{AlgebraObject, IntAlgError};
use crate::fusion::{Category, Mor, Obj};
use crate::hilb2::TwoHilbertSpace;
use crate::numcore::{c, eigh, nullspace, orthonormalize, unitarity_defect, CMatrix, Tolerance};
use crate::sample;
use num_complex::Complex64;
use serde::Serialize;

/// Cut for singular values when solving for module maps.
pub(crate) const HOM_CUT: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RightModule {
    pub obj: Obj,
    /// `ρ : M ⊗ A → M`.
    pub rho: Mor,
}

impl RightModule {
    pub fn new(alg: &AlgebraObject, obj: Obj, rho: Mor) -> Self {
        let src = alg.cat.tensor_obj(&obj, &alg.obj);
        let rho = rho.cast(&src, &obj);
        RightModule { obj, rho }
    }

    /// `A` acting on itself by `μ`.
    pub fn regular(alg: &AlgebraObject) -> Self {
        RightModule {
            obj: alg.obj.clone(),
            rho: alg.mu.clone(),
        }
    }

    /// `X ⊗ A` with `ρ = (id ⊗ μ) α`.
    pub fn free(alg: &AlgebraObject, x: &Obj) -> Self {
        let cat = &alg.cat;
        let obj = cat.tensor_obj(x, &alg.obj);
        let rho = cat
            .tensor(&cat.id(x), &alg.mu)
            .after(&cat.assoc(x, &alg.obj, &alg.obj));
        RightModule { obj, rho }
    }

    /// `X ⊗ M` with `ρ = (id ⊗ ρ_M) α`.
    pub fn tensor_left(&self, alg: &AlgebraObject, x: &Obj) -> Self {
        let cat = &alg.cat;
        let obj = cat.tensor_obj(x, &self.obj);
        let rho = cat
            .tensor(&cat.id(x), &self.rho)
            .after(&cat.assoc(x, &self.obj, &alg.obj));
        RightModule { obj, rho }
    }

    /// Submodule cut out by an isometry `V : S → M` whose range projection is a module map.
    pub fn restrict(&self, alg: &AlgebraObject, v: &Mor) -> Self {
        let cat = &alg.cat;
        let rho = v.dagger().after(&self.rho).after(&cat.tensor(v, &alg.id()));
        RightModule::new(alg, v.src.clone(), rho)
    }

    /// Associativity and unit residuals of the action.
    pub fn action_residual(&self, alg: &AlgebraObject) -> (f64, f64) {
        let cat = &alg.cat;
        let (m, a) = (&self.obj, &alg.obj);
        let lhs = self.rho.after(&cat.tensor(&self.rho, &alg.id()));
        let rhs = self
            .rho
            .after(&cat.tensor(&cat.id(m), &alg.mu))
            .after(&cat.assoc(m, a, a));
        let unit = self
            .rho
            .after(&cat.tensor(&cat.id(m), &alg.iota))
            .after(&cat.runit(m).dagger());
        (lhs.sub(&rhs).norm(), unit.sub(&cat.id(m)).norm())
    }

    /// `‖f ρ_M − ρ_N (f ⊗ id)‖`.
    pub fn intertwining_residual(&self, alg: &AlgebraObject, f: &Mor, tgt: &RightModule) -> f64 {
        let lhs = f.after(&self.rho);
        let rhs = tgt.rho.after(&alg.cat.tensor(f, &alg.id()));
        lhs.sub(&rhs).norm()
    }
}

/// Basis of `C_A(M → N)`, orthonormal for the entrywise inner product.
pub fn module_homs(alg: &AlgebraObject, m: &RightModule, n: &RightModule) -> Vec<Mor> {
    let cat = &alg.cat;
    let len = Mor::flat_len(&m.obj, &n.obj);
    if len == 0 {
        return Vec::new();
    }
    let ma = cat.tensor_obj(&m.obj, &alg.obj);
    let rows = Mor::flat_len(&ma, &n.obj);
    let mut lin = CMatrix::zeros(rows, len);
    let mut e = vec![c(0.0); len];
    for k in 0..len {
        e[k] = c(1.0);
        let f = Mor::unflatten(&m.obj, &n.obj, &e);
        let col = f.after(&m.rho).sub(&n.rho.after(&cat.tensor(&f, &alg.id()))).flatten();
        for (r, z) in col.into_iter().enumerate() {
            lin[(r, k)] = z;
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

/// `Tr^{C_A}_M(f) = Tr^C(ρ_M (f ⊗ β⁻¹ι) ρ⁻¹)` with `ρ` the right unitor.
pub fn module_trace(alg: &AlgebraObject, binv_iota: &Mor, m: &RightModule, f: &Mor) -> Complex64 {
    let cat = &alg.cat;
    let g = m
        .rho
        .after(&cat.tensor(f, binv_iota))
        .after(&cat.runit(&m.obj).dagger());
    cat.trace(&g)
}

pub(crate) fn random_combination(rng: &mut sample::SampleRng, basis: &[Mor], src: &Obj, tgt: &Obj, alg: &AlgebraObject) -> Mor {
    let mut out = alg.cat.zero_mor(src, tgt);
    for b in basis {
        out = out.add(&b.scale(sample::complex(rng)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleTraceCertificate {
    pub accept: bool,
    pub samples: usize,
    /// Largest module-axiom residual among the simple modules.
    pub action_residual: f64,
    /// Direct formula against the free-module retraction.
    pub retraction_residual: f64,
    /// Left `C`-module trace property on `c ⊗ S`.
    pub module_trace_residual: f64,
    pub traciality_residual: f64,
}

#[derive(Clone, Debug)]
pub struct ModuleCategory {
    pub alg: AlgebraObject,
    pub labels: Vec<String>,
    pub simples: Vec<RightModule>,
    /// `free_multiplicity[c][s]`: copies of simple `s` inside `c ⊗ A`.
    pub free_multiplicity: Vec<Vec<usize>>,
    pub space: TwoHilbertSpace,
    pub binv_iota: Mor,
    pub certificate: ModuleTraceCertificate,
}

/// Split a module into simple submodules using a generic Hermitian module endomorphism.
///
/// Eigenvectors for one eigenvalue across all blocks span one simple summand.
fn split_module(alg: &AlgebraObject, m: &RightModule, rng: &mut sample::SampleRng, tol: &Tolerance) -> Vec<Mor> {
    let basis = module_homs(alg, m, m);
    if basis.len() <= 1 {
        return vec![alg.cat.id(&m.obj)];
    }
    let h0 = random_combination(rng, &basis, &m.obj, &m.obj, alg);
    eigen_split(&alg.cat, &h0.add(&h0.dagger()), tol)
}

/// Isometries onto the eigenspaces of a Hermitian endomorphism, one per eigenvalue
/// cluster with the eigenvectors of every block collected together.
pub(crate) fn eigen_split(cat: &Category, h: &Mor, tol: &Tolerance) -> Vec<Mor> {
    let mut eig: Vec<(f64, usize, nalgebra::DVector<Complex64>)> = Vec::new();
    for (a, b) in h.blocks.iter().enumerate() {
        if b.nrows() == 0 {
            continue;
        }
        let (vals, vecs) = eigh(b);
        for (j, &v) in vals.iter().enumerate() {
            eig.push((v, a, vecs.column(j).into_owned()));
        }
    }
    eig.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let scale = 1.0 + h.norm();
    let gap = (tol.abs_eps * 1e3).max(1e-7) * scale;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (k, e) in eig.iter().enumerate() {
        match clusters.last_mut() {
            Some(cl) if (eig[cl[0]].0 - e.0).abs() <= gap => cl.push(k),
            _ => clusters.push(vec![k]),
        }
    }
    let r = cat.rank();
    clusters
        .into_iter()
        .map(|cl| {
            let mut mult = vec![0; r];
            for &k in &cl {
                mult[eig[k].1] += 1;
            }
            let sub = Obj::new(mult.clone(), "S");
            let mut v = cat.zero_mor(&sub, &h.src);
            let mut col = vec![0; r];
            for &k in &cl {
                let a = eig[k].1;
                v.blocks[a].set_column(col[a], &eig[k].2);
                col[a] += 1;
            }
            v
        })
        .collect()
}

fn label_for(c: &str, k: usize, parts: usize) -> String {
    if parts == 1 {
        format!("{c}A")
    } else {
        format!("{c}A.{k}")
    }
}

/// Enumerate the simple right `A`-modules and install the trace on `C_A`.
pub fn module_category(alg: &AlgebraObject, tol: &Tolerance, seed: u64) -> Result<ModuleCategory, IntAlgError> {
    let cat = alg.cat.clone();
    let binv_iota = alg.dressed_unit(-1.0, tol)?;
    let mut rng = sample::rng(seed);
    let mut simples: Vec<RightModule> = Vec::new();
    let mut labels = Vec::new();
    let mut free_multiplicity = Vec::new();
    let mut action: f64 = 0.0;
    for cc in 0..cat.rank() {
        let free = RightModule::free(alg, &cat.simple(cc));
        let mut counts = vec![0; simples.len()];
        if free.obj.is_zero() {
            free_multiplicity.push(counts);
            continue;
        }
        let parts = split_module(alg, &free, &mut rng, tol);
        let n = parts.len();
        for (k, v) in parts.iter().enumerate() {
            let label = label_for(&cat.data.simples[cc], k, n);
            let s = free.restrict(alg, &v.cast(&v.src.retag(&label), &free.obj));
            let (ra, ru) = s.action_residual(alg);
            action = action.max(ra).max(ru);
            match simples.iter().position(|t| !module_homs(alg, &s, t).is_empty()) {
                Some(j) => counts[j] += 1,
                None => {
                    simples.push(s);
                    labels.push(label);
                    counts.push(1);
                }
            }
        }
        free_multiplicity.push(counts);
    }
    let k = simples.len();
    for row in free_multiplicity.iter_mut() {
        row.resize(k, 0);
    }
    let mut dims = Vec::with_capacity(k);
    for s in &simples {
        dims.push(module_trace(alg, &binv_iota, s, &cat.id(&s.obj)).re);
    }
    let space = TwoHilbertSpace::new(labels.clone(), dims)
        .map_err(|e| IntAlgError::NotModule(e.to_string()))?;
    let mut mc = ModuleCategory {
        alg: alg.clone(),
        labels,
        simples,
        free_multiplicity,
        space,
        binv_iota,
        certificate: ModuleTraceCertificate {
            accept: false,
            samples: 0,
            action_residual: action,
            retraction_residual: 0.0,
            module_trace_residual: 0.0,
            traciality_residual: 0.0,
        },
    };
    mc.certificate = mc.certify(tol, &mut rng)?;
    Ok(mc)
}

impl ModuleCategory {
    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn trace(&self, m: &RightModule, f: &Mor) -> Complex64 {
        module_trace(&self.alg, &self.binv_iota, m, f)
    }

    /// The same trace computed through `M ⊗ A`, the retraction `ρ_M (id ⊗ β^{-1/2})`,
    /// the left `C`-module trace property, and `Tr_A(h) = ψ(ι† h ι)`.
    pub fn trace_via_free(&self, m: &RightModule, f: &Mor, tol: &Tolerance) -> Result<Complex64, IntAlgError> {
        let alg = &self.alg;
        let cat = &alg.cat;
        let (x, a) = (&m.obj, &alg.obj);
        let r = m.rho.after(&cat.tensor(&cat.id(x), &alg.bubble_pow(-0.5, tol)?));
        let g = r.dagger().after(f).after(&r);
        let xd = cat.dual_obj(x);
        let ida = alg.id();
        let ev = cat.ev(x);
        let h = cat
            .lunit(a)
            .after(&cat.tensor(&ev, &ida))
            .after(&cat.assoc_inv(&xd, x, a))
            .after(&cat.tensor(&cat.id(&xd), &g))
            .after(&cat.assoc(&xd, x, a))
            .after(&cat.tensor(&ev.dagger(), &ida))
            .after(&cat.lunit(a).dagger());
        Ok(alg.trace_on_a(&h))
    }

    /// Random element of `C_A(M → N)`.
    pub fn random_hom(&self, rng: &mut sample::SampleRng, m: &RightModule, n: &RightModule) -> Mor {
        let basis = module_homs(&self.alg, m, n);
        random_combination(rng, &basis, &m.obj, &n.obj, &self.alg)
    }

    fn certify(&self, tol: &Tolerance, rng: &mut sample::SampleRng) -> Result<ModuleTraceCertificate, IntAlgError> {
        let alg = &self.alg;
        let cat = &alg.cat;
        let mut retraction: f64 = 0.0;
        let mut left: f64 = 0.0;
        let mut tracial: f64 = 0.0;
        let mut samples = 0;
        for s in &self.simples {
            let f = self.random_hom(rng, s, s);
            let direct = self.trace(s, &f);
            let via = self.trace_via_free(s, &f, tol)?;
            retraction = retraction.max((direct - via).norm() / (1.0 + direct.norm()));
            for cc in 0..cat.rank() {
                let x = cat.simple(cc);
                let cs = s.tensor_left(alg, &x);
                if cs.obj.is_zero() {
                    continue;
                }
                let g = self.random_hom(rng, &cs, &cs);
                let lhs = self.trace(&cs, &g);
                let rhs = self.trace(s, &self.partial_trace(&x, s, &g));
                left = left.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
                let g2 = self.random_hom(rng, &cs, &cs);
                let ab = self.trace(&cs, &g.after(&g2));
                let ba = self.trace(&cs, &g2.after(&g));
                tracial = tracial.max((ab - ba).norm() / (1.0 + ab.norm()));
                samples += 1;
            }
        }
        let action = self.certificate.action_residual;
        let accept = tol.accepts(action, 1.0)
            && tol.accepts(retraction, 1.0)
            && tol.accepts(left, 1.0)
            && tol.accepts(tracial, 1.0);
        Ok(ModuleTraceCertificate {
            accept,
            samples,
            action_residual: action,
            retraction_residual: retraction,
            module_trace_residual: left,
            traciality_residual: tracial,
        })
    }

    /// `λ (ev_X ⊗ id) α⁻¹ (id ⊗ g) α (ev_X† ⊗ id) λ†` for `g ∈ End(X ⊗ M)`.
    pub fn partial_trace(&self, x: &Obj, m: &RightModule, g: &Mor) -> Mor {
        let cat = &self.alg.cat;
        let xd = cat.dual_obj(x);
        let ev = cat.ev(x);
        let idm = cat.id(&m.obj);
        let g = g.cast(&cat.tensor_obj(x, &m.obj), &cat.tensor_obj(x, &m.obj));
        cat.lunit(&m.obj)
            .after(&cat.tensor(&ev, &idm))
            .after(&cat.assoc_inv(&xd, x, &m.obj))
            .after(&cat.tensor(&cat.id(&xd), &g))
            .after(&cat.assoc(&xd, x, &m.obj))
            .after(&cat.tensor(&ev.dagger(), &idm))
            .after(&cat.lunit(&m.obj).dagger())
    }

    /// `⟨F|G⟩ = d_c⁻¹ Tr_{c ⊗ M}(F† G)` for `F, G ∈ C_A(c ⊗ M → N)`.
    pub fn generalized_inner(&self, cc: usize, m: &RightModule, f: &Mor, g: &Mor) -> Complex64 {
        let cat = &self.alg.cat;
        let cm = m.tensor_left(&self.alg, &cat.simple(cc));
        let prod = f.dagger().after(g).cast(&cm.obj, &cm.obj);
        self.trace(&cm, &prod) / cat.udf.dims[cc]
    }

    /// Orthonormal basis of `C_A(c ⊗ M → N)` for [`Self::generalized_inner`].
    pub fn generalized_basis(&self, cc: usize, m: &RightModule, n: &RightModule) -> Vec<Mor> {
        let alg = &self.alg;
        let cm = m.tensor_left(alg, &alg.cat.simple(cc));
        if cm.obj.is_zero() {
            return Vec::new();
        }
        let raw = module_homs(alg, &cm, n);
        let k = raw.len();
        if k == 0 {
            return raw;
        }
        let mut gram = CMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = self.generalized_inner(cc, m, &raw[i], &raw[j]);
            }
        }
        let coeffs = orthonormalize(&CMatrix::identity(k, k), &gram, HOM_CUT);
        (0..coeffs.ncols())
            .map(|j| {
                let mut out = alg.cat.zero_mor(&raw[0].src, &raw[0].tgt);
                for (i, r) in raw.iter().enumerate() {
                    out = out.add(&r.scale(coeffs[(i, j)]));
                }
                out
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct InternalEnd {
    pub algebra: AlgebraObject,
    /// Orthonormal basis of `C_A(c ⊗ m → m)` for each simple `c`.
    pub bases: Vec<Vec<Mor>>,
}

/// `[m, m] = ⊕_c d_c⁻¹ C_A(c ⊗ m → m) ⊗ c` with composition as multiplication.
pub fn internal_end(mc: &ModuleCategory, m: &RightModule) -> Result<InternalEnd, IntAlgError> {
    let alg = &mc.alg;
    let cat = alg.cat.clone();
    let r = cat.rank();
    let bases: Vec<Vec<Mor>> = (0..r).map(|cc| mc.generalized_basis(cc, m, m)).collect();
    let e = cat.obj(bases.iter().map(Vec::len).collect(), &format!("[{},{}]", m.obj.tag, m.obj.tag));
    let ee = cat.tensor_obj(&e, &e);
    let mut mu = cat.zero_mor(&ee, &e);
    let expand = |k: usize, x: &Mor| -> Vec<Complex64> {
        bases[k].iter().map(|h| mc.generalized_inner(k, m, h, x)).collect()
    };
    for a in 0..r {
        for b in 0..r {
            if bases[a].is_empty() || bases[b].is_empty() {
                continue;
            }
            let (xa, xb) = (cat.simple(a), cat.simple(b));
            for k in 0..r {
                let n = cat.data.nmult(a, b, k);
                if n == 0 || bases[k].is_empty() {
                    continue;
                }
                for al in 0..n {
                    let v = cat.tensor(&cat.vertex(a, b, k, al), &cat.id(&m.obj));
                    for (i, f) in bases[a].iter().enumerate() {
                        for (j, g) in bases[b].iter().enumerate() {
                            let x = f
                                .after(&cat.tensor(&cat.id(&xa), g))
                                .after(&cat.assoc(&xa, &xb, &m.obj))
                                .after(&v);
                            let col = cat.tensor_index(&e, &e, k, a, i, b, j, al);
                            for (row, z) in expand(k, &x).into_iter().enumerate() {
                                mu.blocks[k][(row, col)] = z;
                            }
                        }
                    }
                }
            }
        }
    }
    let one = cat.unit();
    let mut iota = cat.zero_mor(&one, &e);
    for &u in &cat.data.units {
        if bases[u].is_empty() {
            continue;
        }
        let mut inc = cat.zero_mor(&cat.simple(u), &one);
        inc.blocks[u][(0, 0)] = c(1.0);
        let lam = cat.lunit(&m.obj).after(&cat.tensor(&inc, &cat.id(&m.obj)));
        for (row, z) in expand(u, &lam).into_iter().enumerate() {
            iota.blocks[u][(row, 0)] = z;
        }
    }
    let algebra = AlgebraObject::new(cat, e, mu, iota)?;
    Ok(InternalEnd { algebra, bases })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonCertificate {
    pub unitarity_defect: f64,
    pub multiplicativity_residual: f64,
    pub unit_residual: f64,
}

impl InternalEnd {
    /// The canonical map `A → [A, A]`, sending `f : s → A` to `μ (f ⊗ id)`.
    pub fn comparison(&self, mc: &ModuleCategory) -> Result<(Mor, ComparisonCertificate), IntAlgError> {
        let alg = &mc.alg;
        let cat = &alg.cat;
        let m = RightModule::regular(alg);
        if self.algebra.obj.mult != alg.obj.mult {
            return Err(IntAlgError::AlgebraMismatch("[A, A] and A have different multiplicities".into()));
        }
        let mut phi = cat.zero_mor(&alg.obj, &self.algebra.obj);
        let mut defect: f64 = 0.0;
        for s in 0..cat.rank() {
            let n = alg.obj.mult[s];
            if n == 0 {
                continue;
            }
            for j in 0..n {
                let mut e = cat.zero_mor(&cat.simple(s), &alg.obj);
                e.blocks[s][(j, 0)] = c(1.0);
                let x = alg.mu.after(&cat.tensor(&e, &alg.id()));
                for (k, h) in self.bases[s].iter().enumerate() {
                    phi.blocks[s][(k, j)] = mc.generalized_inner(s, &m, h, &x);
                }
            }
            defect = defect.max(unitarity_defect(&phi.blocks[s]).unwrap_or(f64::INFINITY));
        }
        let e = &self.algebra;
        let lhs = phi.after(&alg.mu);
        let rhs = e.mu.after(&cat.tensor(&phi, &phi));
        let unit = phi.after(&alg.iota).sub(&e.iota).norm();
        Ok((
            phi,
            ComparisonCertificate {
                unitarity_defect: defect,
                multiplicativity_residual: lhs.sub(&rhs).norm(),
                unit_residual: unit,
            },
        ))
    }
}
