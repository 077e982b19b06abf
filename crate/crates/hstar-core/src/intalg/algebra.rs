//! Algebra objects and their H*-certification.

use super::IntAlgError;
use crate::fusion::{Category, Mor, Obj};
use crate::numcore::{c, eigh, hermitian_pow, Tolerance};
use num_complex::Complex64;
use serde::Serialize;
use std::rc::Rc;

/// Largest condition number of the bubble accepted as separable.
pub const MAX_BUBBLE_CONDITION: f64 = 1e12;

#[derive(Clone, Debug)]
pub struct AlgebraObject {
    pub cat: Rc<Category>,
    pub obj: Obj,
    /// `μ : A ⊗ A → A`.
    pub mu: Mor,
    /// `ι : 1 → A`.
    pub iota: Mor,
}

#[derive(Clone, Debug, Serialize)]
pub struct HStarAlgCertificate {
    pub accept: bool,
    pub unit_residual: f64,
    pub assoc_residual: f64,
    pub frobenius_residual: f64,
    /// Smallest singular value of `μμ†`.
    pub separability: f64,
    pub bubble_condition: f64,
    pub standardness_residual: f64,
    /// `‖μμ† − id‖`.
    pub bubble_defect: f64,
    pub failed_axiom: Option<String>,
}

/// Apply `x ↦ x^r` to every block of a Hermitian endomorphism.
pub fn mor_pow(m: &Mor, r: f64, tol: &Tolerance) -> Result<Mor, IntAlgError> {
    let mut out = m.clone();
    for b in out.blocks.iter_mut() {
        if b.nrows() > 0 {
            *b = hermitian_pow(b, r, tol).map_err(|e| IntAlgError::SingularBubble { detail: e.to_string() })?;
        }
    }
    Ok(out)
}

/// Singular values of all blocks of an endomorphism, as (min, max).
fn spectrum(m: &Mor) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for b in &m.blocks {
        if b.nrows() == 0 {
            continue;
        }
        let s = b.clone().singular_values();
        for &v in s.iter() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

impl AlgebraObject {
    pub fn new(cat: Rc<Category>, obj: Obj, mu: Mor, iota: Mor) -> Result<Self, IntAlgError> {
        let aa = cat.tensor_obj(&obj, &obj);
        if mu.src.mult != aa.mult || mu.tgt.mult != obj.mult {
            return Err(IntAlgError::Shape("μ must map A ⊗ A to A".into()));
        }
        if iota.src.mult != cat.unit().mult || iota.tgt.mult != obj.mult {
            return Err(IntAlgError::Shape("ι must map 1 to A".into()));
        }
        let mu = mu.cast(&aa, &obj);
        let iota = iota.cast(&cat.unit(), &obj);
        Ok(AlgebraObject { cat, obj, mu, iota })
    }

    /// The unit object with `μ = λ_1`, `ι = id`.
    pub fn trivial(cat: Rc<Category>) -> Self {
        let one = cat.unit();
        let obj = one.retag("1");
        let mu = cat.lunit(&one).cast(&cat.tensor_obj(&obj, &obj), &obj);
        let iota = cat.id(&one).cast(&one, &obj);
        AlgebraObject { cat, obj, mu, iota }
    }

    /// `⊕_{g ∈ G} g` for invertible simples closed under fusion, with `μ = s · Σ` and `ι = e_1 / s`.
    ///
    /// Associative exactly when the F-symbols restricted to `G` are trivial.
    pub fn group_algebra(cat: Rc<Category>, elements: &[usize], s: f64, tag: &str) -> Result<Self, IntAlgError> {
        let r = cat.rank();
        let mut mult = vec![0; r];
        for &g in elements {
            mult[g] = 1;
        }
        let obj = cat.obj(mult, tag);
        let aa = cat.tensor_obj(&obj, &obj);
        let mut mu = cat.zero_mor(&aa, &obj);
        for &g in elements {
            for &h in elements {
                for &k in elements {
                    if cat.data.nmult(g, h, k) > 0 {
                        let col = cat.tensor_index(&obj, &obj, k, g, 0, h, 0, 0);
                        mu.blocks[k][(0, col)] = c(s);
                    }
                }
            }
        }
        let mut iota = cat.zero_mor(&cat.unit(), &obj);
        for (i, &u) in cat.data.units.iter().enumerate() {
            if obj.mult[u] > 0 {
                iota.blocks[u][(0, 0)] = c(1.0 / s);
            } else {
                return Err(IntAlgError::Shape(format!("sheet {i} unit is not in the group")));
            }
        }
        Ok(AlgebraObject { cat, obj, mu, iota })
    }

    /// `X ⊗ X^∨` with `μ = id ⊗ ev_X ⊗ id` and `ι = coev_X`.
    pub fn pair_algebra(cat: Rc<Category>, x: &Obj, tag: &str) -> Self {
        let xd = cat.dual_obj(x);
        let a = cat.tensor_obj(x, &xd);
        let idx = cat.id(x);
        let idxd = cat.id(&xd);
        let mu = cat
            .tensor(&idx, &cat.lunit(&xd))
            .after(&cat.tensor(&idx, &cat.tensor(&cat.ev(x), &idxd)))
            .after(&cat.tensor(&idx, &cat.assoc_inv(&xd, x, &xd)))
            .after(&cat.assoc(x, &xd, &a));
        let obj = a.retag(tag);
        let mu = mu.cast(&cat.tensor_obj(&obj, &obj), &obj);
        let iota = cat.coev(x).cast(&cat.unit(), &obj);
        AlgebraObject { cat, obj, mu, iota }
    }

    pub fn aa(&self) -> Obj {
        self.cat.tensor_obj(&self.obj, &self.obj)
    }

    pub fn id(&self) -> Mor {
        self.cat.id(&self.obj)
    }

    /// `μμ†`.
    pub fn bubble(&self) -> Mor {
        self.mu.after(&self.mu.dagger())
    }

    pub fn bubble_pow(&self, r: f64, tol: &Tolerance) -> Result<Mor, IntAlgError> {
        mor_pow(&self.bubble(), r, tol)
    }

    /// `β^r ι : 1 → A`.
    pub fn dressed_unit(&self, r: f64, tol: &Tolerance) -> Result<Mor, IntAlgError> {
        Ok(self.bubble_pow(r, tol)?.after(&self.iota))
    }

    pub fn unit_residual(&self) -> f64 {
        let cat = &self.cat;
        let id = self.id();
        let left = self
            .mu
            .after(&cat.tensor(&self.iota, &id))
            .after(&cat.lunit(&self.obj).dagger());
        let right = self
            .mu
            .after(&cat.tensor(&id, &self.iota))
            .after(&cat.runit(&self.obj).dagger());
        left.sub(&id).norm().max(right.sub(&id).norm())
    }

    pub fn assoc_residual(&self) -> f64 {
        let cat = &self.cat;
        let (a, id) = (&self.obj, self.id());
        let lhs = self.mu.after(&cat.tensor(&self.mu, &id));
        let rhs = self.mu.after(&cat.tensor(&id, &self.mu)).after(&cat.assoc(a, a, a));
        lhs.sub(&rhs).norm()
    }

    /// Both bimodule-map identities for `μ†`.
    pub fn frobenius_residual(&self) -> f64 {
        let cat = &self.cat;
        let (a, id) = (&self.obj, self.id());
        let md = self.mu.dagger();
        let mid = md.after(&self.mu);
        let left = cat
            .tensor(&id, &self.mu)
            .after(&cat.assoc(a, a, a))
            .after(&cat.tensor(&md, &id));
        let right = cat
            .tensor(&self.mu, &id)
            .after(&cat.assoc_inv(a, a, a))
            .after(&cat.tensor(&id, &md));
        left.sub(&mid).norm().max(right.sub(&mid).norm())
    }

    /// Matrix units spanning `End(A)`.
    pub fn end_basis(&self) -> Vec<Mor> {
        let mut out = Vec::new();
        for (a, &m) in self.obj.mult.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    let mut e = self.cat.zero_mor(&self.obj, &self.obj);
                    e.blocks[a][(i, j)] = c(1.0);
                    out.push(e);
                }
            }
        }
        out
    }

    /// `ψ(ι† μ (f ⊗ id) μ† ι)` and `ψ(ι† μ (id ⊗ f) μ† ι)`.
    pub fn twisted_traces(&self, f: &Mor) -> (Complex64, Complex64) {
        let cat = &self.cat;
        let id = self.id();
        let cap = self.iota.dagger().after(&self.mu);
        let cup = self.mu.dagger().after(&self.iota);
        let l = cap.after(&cat.tensor(f, &id)).after(&cup);
        let r = cap.after(&cat.tensor(&id, f)).after(&cup);
        (cat.psi_unit(&l), cat.psi_unit(&r))
    }

    pub fn standardness_residual(&self) -> f64 {
        self.end_basis()
            .iter()
            .map(|f| {
                let (l, r) = self.twisted_traces(f);
                (l - r).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `Tr_A(f) = ψ(ι† f ι)` on `End(A)`.
    pub fn trace_on_a(&self, f: &Mor) -> Complex64 {
        self.cat.psi_unit(&self.iota.dagger().after(f).after(&self.iota))
    }
}

/// Certify H*1–H*3 after checking unitality and associativity.
pub fn verify_hstar(a: &AlgebraObject, tol: &Tolerance) -> Result<HStarAlgCertificate, IntAlgError> {
    let scale = 1.0 + a.mu.norm() * a.iota.norm();
    let unit_residual = a.unit_residual();
    if !tol.accepts(unit_residual, scale) {
        return Err(IntAlgError::NotUnital { residual: unit_residual });
    }
    let mscale = 1.0 + a.mu.norm().powi(2);
    let assoc_residual = a.assoc_residual();
    if !tol.accepts(assoc_residual, mscale) {
        return Err(IntAlgError::NotAssociative { residual: assoc_residual });
    }
    let frobenius_residual = a.frobenius_residual();
    let bubble = a.bubble();
    let (lo, hi) = spectrum(&bubble);
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    let bubble_defect = bubble.sub(&a.id()).norm();
    let standardness_residual = a.standardness_residual();
    let sscale = 1.0 + a.twisted_traces(&a.id()).0.norm();

    let failed_axiom = if !tol.accepts(frobenius_residual, mscale) {
        Some("H*1 Frobenius".to_string())
    } else if !(condition <= MAX_BUBBLE_CONDITION) {
        Some("H*2 separability".to_string())
    } else if !tol.accepts(standardness_residual, sscale) {
        Some("H*3 standardness".to_string())
    } else {
        None
    };
    Ok(HStarAlgCertificate {
        accept: failed_axiom.is_none(),
        unit_residual,
        assoc_residual,
        frobenius_residual,
        separability: if lo.is_finite() { lo } else { 0.0 },
        bubble_condition: condition,
        standardness_residual,
        bubble_defect,
        failed_axiom,
    })
}

/// `(A, x⁻¹μ, xι)` with `x = (μμ†)^{1/2}`.
pub fn standardize(a: &AlgebraObject, tol: &Tolerance) -> Result<AlgebraObject, IntAlgError> {
    let bubble = a.bubble();
    let (lo, hi) = spectrum(&bubble);
    if !(lo > 0.0) || hi / lo > MAX_BUBBLE_CONDITION {
        return Err(IntAlgError::SingularBubble {
            detail: format!("smallest singular value {lo:.3e}"),
        });
    }
    let x = mor_pow(&bubble, 0.5, tol)?;
    let xinv = mor_pow(&bubble, -0.5, tol)?;
    Ok(AlgebraObject {
        cat: a.cat.clone(),
        obj: a.obj.clone(),
        mu: xinv.after(&a.mu),
        iota: x.after(&a.iota),
    })
}

/// Eigenvalues of the bubble, block by block.
pub fn bubble_spectrum(a: &AlgebraObject) -> Vec<f64> {
    let mut out = Vec::new();
    for b in &a.bubble().blocks {
        if b.nrows() > 0 {
            out.extend(eigh(b).0);
        }
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// Rescale `μ ↦ sμ`, `ι ↦ ι/s`.
pub fn rescale(a: &AlgebraObject, s: f64) -> AlgebraObject {
    AlgebraObject {
        cat: a.cat.clone(),
        obj: a.obj.clone(),
        mu: a.mu.scale(c(s)),
        iota: a.iota.scale(c(1.0 / s)),
    }
}

/// Named example algebras used by tests, the command line and the acceptance suite.
pub fn examples() -> Vec<(&'static str, AlgebraObject)> {
    use crate::fusion::bundled;
    let mk = |d: crate::fusion::FusionData, psi: &[f64]| Rc::new(Category::new(d, psi).expect("bundled category"));
    let fib = mk(bundled::fibonacci(), &[1.0]);
    let z2 = mk(bundled::z2(), &[1.0]);
    let ising = mk(bundled::ising(), &[1.0]);
    let m2 = mk(bundled::matrix2_hilb(), &[1.0, 2.0]);
    let r2 = 0.5f64.sqrt();
    vec![
        ("hilb-trivial", AlgebraObject::trivial(mk(bundled::hilb(), &[1.0]))),
        ("fibonacci-trivial", AlgebraObject::trivial(fib.clone())),
        ("fibonacci-pair-tau", AlgebraObject::pair_algebra(fib.clone(), &fib.simple(1), "A")),
        ("z2-group", AlgebraObject::group_algebra(z2.clone(), &[0, 1], r2, "A").expect("group")),
        ("z2-group-unnormalized", AlgebraObject::group_algebra(z2, &[0, 1], 1.0, "A").expect("group")),
        ("ising-one-psi", AlgebraObject::group_algebra(ising.clone(), &[0, 2], r2, "A").expect("group")),
        ("ising-pair-sigma", AlgebraObject::pair_algebra(ising.clone(), &ising.simple(1), "A")),
        ("matrix2-pair", AlgebraObject::pair_algebra(m2.clone(), &m2.obj(vec![0, 0, 1, 1], "X"), "A")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::bundled;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cat(d: crate::fusion::FusionData) -> Rc<Category> {
        let k = d.sheets();
        Rc::new(Category::new(d, &vec![1.0; k]).unwrap())
    }

    #[test]
    fn trivial_in_fibonacci() {
        let a = AlgebraObject::trivial(cat(bundled::fibonacci()));
        let cert = verify_hstar(&a, &tol()).unwrap();
        assert!(cert.accept);
        assert!(cert.frobenius_residual == 0.0 && cert.standardness_residual == 0.0);
        assert!(cert.bubble_defect == 0.0);
    }

    #[test]
    fn ising_one_plus_psi() {
        let c = cat(bundled::ising());
        let a = AlgebraObject::group_algebra(c, &[0, 2], 1.0 / 2f64.sqrt(), "A").unwrap();
        let cert = verify_hstar(&a, &tol()).unwrap();
        assert!(cert.accept, "{cert:?}");
        assert!(cert.bubble_defect < 1e-12);
    }

    /// Exhaustive oracle: over every unital μ supported on the channels of `1 ⊕ g`
    /// in `Hilb[ℤ/3]`, the bubble on the `g` block vanishes, so no choice is separable.
    #[test]
    fn z3_truncated_rejected() {
        let c = cat(bundled::z3());
        let a = AlgebraObject::group_algebra(c, &[0, 1], 1.0, "A").unwrap();
        match verify_hstar(&a, &tol()) {
            Ok(cert) => {
                assert!(!cert.accept);
                let f = cert.failed_axiom.unwrap();
                assert!(f.starts_with("H*1") || f.starts_with("H*2"), "{f}");
            }
            Err(e) => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn standardize_examples() {
        let c = cat(bundled::hilb());
        let triv = AlgebraObject::trivial(c.clone());
        let s = standardize(&triv, &tol()).unwrap();
        assert!(s.mu.sub(&triv.mu).norm() < 1e-12);

        let a = rescale(&triv, 2.0);
        assert!((a.iota.blocks[0][(0, 0)].re - 0.5).abs() < 1e-15);
        let s = standardize(&a, &tol()).unwrap();
        assert!((s.mu.blocks[0][(0, 0)] - c_(1.0)).norm() < 1e-12);
        assert!((s.iota.blocks[0][(0, 0)] - c_(1.0)).norm() < 1e-12);

        let z = AlgebraObject::group_algebra(cat(bundled::z2()), &[0, 1], 1.0, "A").unwrap();
        assert!(verify_hstar(&z, &tol()).unwrap().accept);
        let s = standardize(&z, &tol()).unwrap();
        assert!(s.bubble().sub(&s.id()).norm() < 1e-10);
        let cert = verify_hstar(&s, &tol()).unwrap();
        assert!(cert.accept && cert.bubble_defect < 1e-10);
    }

    fn c_(x: f64) -> Complex64 {
        c(x)
    }

    #[test]
    fn pair_algebra_examples() {
        let f = cat(bundled::fibonacci());
        let t = f.simple(1);
        let a = AlgebraObject::pair_algebra(f.clone(), &t, "A");
        assert_eq!(a.obj.mult, vec![1, 1]);
        let cert = verify_hstar(&a, &tol()).unwrap();
        assert!(cert.accept, "{cert:?}");
        // Bubble is dim_R(τ) = φ on every block.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for v in bubble_spectrum(&a) {
            assert!((v - phi).abs() < 1e-10);
        }

        let one = AlgebraObject::pair_algebra(f.clone(), &f.simple(0), "A");
        assert_eq!(one.obj.mult, vec![1, 0]);

        let m = cat(bundled::matrix2_hilb());
        let e12 = m.simple(1);
        let a = AlgebraObject::pair_algebra(m, &e12, "A");
        assert_eq!(a.obj.mult, vec![1, 0, 0, 0]);
        assert!(verify_hstar(&a, &tol()).unwrap().accept);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]

            #[test]
            fn standardize_gives_special(s in 0.2f64..5.0, which in 0usize..3) {
                let a = match which {
                    0 => AlgebraObject::group_algebra(cat(bundled::z2()), &[0, 1], s, "A").unwrap(),
                    1 => AlgebraObject::group_algebra(cat(bundled::ising()), &[0, 2], s, "A").unwrap(),
                    _ => rescale(&AlgebraObject::pair_algebra(cat(bundled::fibonacci()), &Obj::new(vec![0, 1], "t"), "A"), s),
                };
                let st = standardize(&a, &tol()).unwrap();
                let cert = verify_hstar(&st, &tol()).unwrap();
                prop_assert!(cert.accept);
                prop_assert!(cert.bubble_defect < 1e-9);
            }
        }
    }
}
