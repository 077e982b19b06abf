//! Skeletal 2-Hilbert spaces, dagger functors between them, and isometries.

use crate::hstar1::{self, HStarAlgebra, HStarError};
use crate::numcore::{c, unitarity_defect, CMatrix};
use crate::sample::{self, SampleRng};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Hilb2Error {
    #[error("quantum dimension of `{label}` is {dim}, not positive")]
    NonPositiveDim { label: String, dim: f64 },
    #[error("{labels} labels but {dims} dimensions")]
    LabelCount { labels: usize, dims: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Algebra(#[from] HStarError),
}

/// Semisimple category given by its simple labels and their quantum dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoHilbertSpace {
    pub labels: Vec<String>,
    pub dims: Vec<f64>,
}

impl TwoHilbertSpace {
    pub fn new(labels: Vec<String>, dims: Vec<f64>) -> Result<Self, Hilb2Error> {
        let s = TwoHilbertSpace { labels, dims };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), Hilb2Error> {
        if self.labels.len() != self.dims.len() {
            return Err(Hilb2Error::LabelCount {
                labels: self.labels.len(),
                dims: self.dims.len(),
            });
        }
        for (l, &d) in self.labels.iter().zip(&self.dims) {
            if !(d > 0.0) || !d.is_finite() {
                return Err(Hilb2Error::NonPositiveDim {
                    label: l.clone(),
                    dim: d,
                });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn simple(&self, s: usize) -> H2Object {
        let mut mult = vec![0; self.rank()];
        mult[s] = 1;
        H2Object { mult }
    }

    /// `⊕ Irr(C)`.
    pub fn all_simples(&self) -> H2Object {
        H2Object {
            mult: vec![1; self.rank()],
        }
    }

    /// `d_X = Σ_s m_s d_s`.
    pub fn dim_of(&self, x: &H2Object) -> f64 {
        x.mult.iter().zip(&self.dims).map(|(&m, d)| m as f64 * d).sum()
    }

    pub fn identity(&self, x: &H2Object) -> H2Morphism {
        H2Morphism {
            source: x.clone(),
            target: x.clone(),
            blocks: x.mult.iter().map(|&m| CMatrix::identity(m, m)).collect(),
        }
    }

    pub fn random_morphism(&self, rng: &mut SampleRng, source: &H2Object, target: &H2Object) -> H2Morphism {
        H2Morphism {
            source: source.clone(),
            target: target.clone(),
            blocks: source
                .mult
                .iter()
                .zip(&target.mult)
                .map(|(&m, &n)| sample::matrix(rng, n, m))
                .collect(),
        }
    }

    /// `Tr(f) = Σ_s d_s tr(f_s)`.
    pub fn trace(&self, f: &H2Morphism) -> Result<Complex64, Hilb2Error> {
        if f.source != f.target {
            return Err(Hilb2Error::ShapeMismatch("trace of a non-endomorphism".into()));
        }
        self.check(f)?;
        Ok(f.blocks.iter().zip(&self.dims).map(|(b, &d)| b.trace() * d).sum())
    }

    /// `⟨f|g⟩ = Tr(f† g)`.
    pub fn inner(&self, f: &H2Morphism, g: &H2Morphism) -> Result<Complex64, Hilb2Error> {
        self.trace(&f.dagger().compose(g)?)
    }

    fn check(&self, f: &H2Morphism) -> Result<(), Hilb2Error> {
        if f.blocks.len() != self.rank() || f.source.mult.len() != self.rank() {
            return Err(Hilb2Error::ShapeMismatch("label count".into()));
        }
        Ok(())
    }
}

/// An object as a multiplicity per simple label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H2Object {
    #[serde(rename = "multiplicity")]
    pub mult: Vec<usize>,
}

impl H2Object {
    pub fn direct_sum(&self, other: &H2Object) -> H2Object {
        H2Object {
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct H2Morphism {
    pub source: H2Object,
    pub target: H2Object,
    /// One `target_mult × source_mult` matrix per label.
    pub blocks: Vec<CMatrix>,
}

impl H2Morphism {
    pub fn dagger(&self) -> H2Morphism {
        H2Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &H2Morphism) -> Result<H2Morphism, Hilb2Error> {
        if g.target != self.source {
            return Err(Hilb2Error::ShapeMismatch("composition of non-composable morphisms".into()));
        }
        Ok(H2Morphism {
            source: g.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a * b).collect(),
        })
    }
}

/// Summand of the generalized-element decomposition of an object.
#[derive(Clone, Debug, Serialize)]
pub struct YonedaSummand {
    pub label: usize,
    pub hom_dim: usize,
    pub scaling: f64,
    #[serde(with = "crate::json")]
    pub gram: CMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct YonedaDecomposition {
    pub summands: Vec<YonedaSummand>,
    /// Unitarity defect of the comparison map `⊕_s d_s^{-1} C(s→c) ⊗ s → c`.
    pub comparison_defect: f64,
}

/// Decompose `c ≅ ⊕_s d_s^{-1} C(s → c) ⊗ s`.
pub fn yoneda_decompose(space: &TwoHilbertSpace, x: &H2Object) -> Result<YonedaDecomposition, Hilb2Error> {
    if x.mult.len() != space.rank() {
        return Err(Hilb2Error::ShapeMismatch("object label count".into()));
    }
    let mut summands = Vec::new();
    let mut defect: f64 = 0.0;
    for (s, &m) in x.mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let simple = space.simple(s);
        // Basis of C(s → c): the elementary inclusions.
        let basis: Vec<H2Morphism> = (0..m)
            .map(|k| {
                let mut blocks: Vec<CMatrix> = x
                    .mult
                    .iter()
                    .zip(&simple.mult)
                    .map(|(&t, &u)| CMatrix::zeros(t, u))
                    .collect();
                blocks[s][(k, 0)] = c(1.0);
                H2Morphism {
                    source: simple.clone(),
                    target: x.clone(),
                    blocks,
                }
            })
            .collect();
        let scaling = 1.0 / space.dims[s];
        let mut gram = CMatrix::zeros(m, m);
        for (k, f) in basis.iter().enumerate() {
            for (l, g) in basis.iter().enumerate() {
                gram[(k, l)] = space.inner(f, g)? * scaling;
            }
        }
        defect = defect.max(unitarity_defect(&gram).unwrap_or(f64::INFINITY));
        summands.push(YonedaSummand {
            label: s,
            hom_dim: m,
            scaling,
            gram,
        });
    }
    Ok(YonedaDecomposition {
        summands,
        comparison_defect: defect,
    })
}

/// Dagger functor determined by its multiplicity matrix `M[t][s]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DagFunctor {
    pub domain: TwoHilbertSpace,
    pub codomain: TwoHilbertSpace,
    pub matrix: Vec<Vec<usize>>,
}

impl DagFunctor {
    pub fn new(domain: TwoHilbertSpace, codomain: TwoHilbertSpace, matrix: Vec<Vec<usize>>) -> Result<Self, Hilb2Error> {
        if matrix.len() != codomain.rank() || matrix.iter().any(|r| r.len() != domain.rank()) {
            return Err(Hilb2Error::ShapeMismatch(format!(
                "functor matrix must be {}×{}",
                codomain.rank(),
                domain.rank()
            )));
        }
        Ok(DagFunctor {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: &TwoHilbertSpace) -> Self {
        let n = space.rank();
        let matrix = (0..n).map(|t| (0..n).map(|s| usize::from(s == t)).collect()).collect();
        DagFunctor {
            domain: space.clone(),
            codomain: space.clone(),
            matrix,
        }
    }

    pub fn apply(&self, x: &H2Object) -> H2Object {
        H2Object {
            mult: self
                .matrix
                .iter()
                .map(|row| row.iter().zip(&x.mult).map(|(a, b)| a * b).sum())
                .collect(),
        }
    }

    pub fn image_of_simple(&self, s: usize) -> H2Object {
        H2Object {
            mult: self.matrix.iter().map(|row| row[s]).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionCertificate {
    /// Largest unitarity defect of a mate map `B(F a → b) → A(a → F* b)`.
    pub mate_defect: f64,
    /// Largest deviation of `Tr_a(m m†) / Tr_{Fa}(f f†)` from 1 over basis vectors.
    pub gram_ratio_gap: f64,
}

/// Mate map on simples `a`, `b` in orthonormal bases, with its scalar coefficient.
///
/// Both hom spaces are `ℂ^{M[b][a]}`; the norms are `d_b |v|²` and `d_a |v|²`.
fn mate_coefficient(f: &DagFunctor, a: usize, b: usize) -> f64 {
    (f.codomain.dims[b] / f.domain.dims[a]).sqrt()
}

pub fn unitary_adjoint(f: &DagFunctor) -> (DagFunctor, AdjunctionCertificate) {
    let n = f.domain.rank();
    let m = f.codomain.rank();
    let matrix = (0..n).map(|s| (0..m).map(|t| f.matrix[t][s]).collect()).collect();
    let adj = DagFunctor {
        domain: f.codomain.clone(),
        codomain: f.domain.clone(),
        matrix,
    };
    let mut mate_defect: f64 = 0.0;
    let mut ratio_gap: f64 = 0.0;
    for a in 0..n {
        for b in 0..m {
            let k = f.matrix[b][a];
            if k == 0 {
                continue;
            }
            let coeff = mate_coefficient(f, a, b);
            let da = f.domain.dims[a];
            let db = f.codomain.dims[b];
            // Orthonormal bases are e_j / sqrt(d_b) and e_j / sqrt(d_a).
            let mate = CMatrix::identity(k, k) * c(coeff * da.sqrt() / db.sqrt());
            mate_defect = mate_defect.max(unitarity_defect(&mate).unwrap_or(f64::INFINITY));
            for j in 0..k {
                let mut v = CMatrix::zeros(k, 1);
                v[(j, 0)] = c(1.0);
                let lhs = db * (v.adjoint() * &v)[(0, 0)].re;
                let w = &v * c(coeff);
                let rhs = da * (w.adjoint() * &w)[(0, 0)].re;
                ratio_gap = ratio_gap.max((rhs / lhs - 1.0).abs());
            }
        }
    }
    (
        adj,
        AdjunctionCertificate {
            mate_defect,
            gram_ratio_gap: ratio_gap,
        },
    )
}

/// A natural endomorphism of a functor: `ρ_s ∈ End(F(s))` for each source simple.
#[derive(Clone, Debug)]
pub struct NatEndo {
    pub components: Vec<H2Morphism>,
}

impl NatEndo {
    pub fn identity(f: &DagFunctor) -> Self {
        NatEndo {
            components: (0..f.domain.rank())
                .map(|s| f.codomain.identity(&f.image_of_simple(s)))
                .collect(),
        }
    }

    pub fn random(f: &DagFunctor, rng: &mut SampleRng) -> Self {
        NatEndo {
            components: (0..f.domain.rank())
                .map(|s| {
                    let x = f.image_of_simple(s);
                    f.codomain.random_morphism(rng, &x, &x)
                })
                .collect(),
        }
    }

    pub fn compose(&self, other: &NatEndo) -> Result<NatEndo, Hilb2Error> {
        Ok(NatEndo {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.compose(b))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `Tr_F(ρ) = Σ_s d_s Tr_{F(s)}(ρ_s)`.
pub fn functor_trace(f: &DagFunctor, rho: &NatEndo) -> Result<Complex64, Hilb2Error> {
    if rho.components.len() != f.domain.rank() {
        return Err(Hilb2Error::ShapeMismatch("one component per source simple".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (s, comp) in rho.components.iter().enumerate() {
        if comp.source != f.image_of_simple(s) {
            return Err(Hilb2Error::ShapeMismatch(format!("component {s} is not an endomorphism of F({s})")));
        }
        total += f.codomain.trace(comp)? * f.domain.dims[s];
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryCertificate {
    pub accept: bool,
    pub fully_faithful: bool,
    /// `|d_{F(s)} − d_s|` per source label.
    pub gaps: Vec<f64>,
}

pub fn isometry_check(f: &DagFunctor, tol: &crate::Tolerance) -> IsometryCertificate {
    let n = f.domain.rank();
    let mut images = Vec::with_capacity(n);
    let mut faithful = true;
    for s in 0..n {
        let col: Vec<usize> = f.matrix.iter().map(|r| r[s]).collect();
        let total: usize = col.iter().sum();
        match col.iter().position(|&x| x == 1) {
            Some(t) if total == 1 => images.push(t),
            _ => faithful = false,
        }
    }
    let mut seen = images.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != images.len() {
        faithful = false;
    }
    let gaps: Vec<f64> = (0..n)
        .map(|s| (f.codomain.dim_of(&f.image_of_simple(s)) - f.domain.dims[s]).abs())
        .collect();
    let dims_ok = gaps
        .iter()
        .zip(&f.domain.dims)
        .all(|(&g, &d)| tol.accepts(g, d));
    IsometryCertificate {
        accept: faithful && dims_ok,
        fully_faithful: faithful,
        gaps,
    }
}

/// The category of right Hilbert modules over `A` as a 2-Hilbert space.
pub fn mod_dagger_as_2hilb(a: &HStarAlgebra) -> Result<TwoHilbertSpace, Hilb2Error> {
    let simples = hstar1::simple_modules(a);
    let labels = (0..simples.len()).map(|i| format!("M{i}")).collect();
    let dims = simples.into_iter().map(|(_, d)| d).collect();
    TwoHilbertSpace::new(labels, dims)
}

/// `C → Mod†(End(⊕ Irr C), Tr)` followed by the canonical comparison functor.
pub fn round_trip(space: &TwoHilbertSpace, tol: &crate::Tolerance) -> Result<(TwoHilbertSpace, IsometryCertificate), Hilb2Error> {
    let x = space.all_simples();
    let a = hstar1::linking_algebra(&[(space, &x)])?;
    let recovered = mod_dagger_as_2hilb(&a)?;
    let comparison = DagFunctor::new(space.clone(), recovered.clone(), DagFunctor::identity(space).matrix)?;
    let cert = isometry_check(&comparison, tol);
    Ok((recovered, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tolerance;

    fn space(dims: &[f64]) -> TwoHilbertSpace {
        TwoHilbertSpace::new((0..dims.len()).map(|i| format!("s{i}")).collect(), dims.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            TwoHilbertSpace::new(vec!["a".into()], vec![0.0]),
            Err(Hilb2Error::NonPositiveDim { .. })
        ));
        assert!(matches!(
            TwoHilbertSpace::new(vec!["a".into()], vec![]),
            Err(Hilb2Error::LabelCount { .. })
        ));
    }

    #[test]
    fn yoneda_examples() {
        let s = space(&[1.0]);
        let y = yoneda_decompose(&s, &s.simple(0)).unwrap();
        assert_eq!(y.summands.len(), 1);
        assert!((y.summands[0].gram[(0, 0)] - c(1.0)).norm() < 1e-14);
        assert!(y.comparison_defect < 1e-14);

        let y = yoneda_decompose(&s, &H2Object { mult: vec![2] }).unwrap();
        assert_eq!(y.summands[0].hom_dim, 2);
        assert!(crate::numcore::frob(&(&y.summands[0].gram - CMatrix::identity(2, 2))) < 1e-14);

        let s2 = space(&[1.0, 3.0]);
        let y = yoneda_decompose(&s2, &H2Object { mult: vec![1, 2] }).unwrap();
        let dims: Vec<usize> = y.summands.iter().map(|x| x.hom_dim).collect();
        assert_eq!(dims, vec![1, 2]);
        assert!((y.summands[0].scaling - 1.0).abs() < 1e-15);
        assert!((y.summands[1].scaling - 1.0 / 3.0).abs() < 1e-15);
        assert!(y.comparison_defect < 1e-12);
    }

    #[test]
    fn adjoint_examples() {
        let s = space(&[1.0]);
        let (adj, cert) = unitary_adjoint(&DagFunctor::identity(&s));
        assert_eq!(adj.matrix, vec![vec![1]]);
        assert!(cert.mate_defect < 1e-14);

        let f = DagFunctor::new(space(&[1.0]), space(&[2.0]), vec![vec![1]]).unwrap();
        let (adj, cert) = unitary_adjoint(&f);
        assert_eq!(adj.matrix, vec![vec![1]]);
        assert!(cert.gram_ratio_gap < 1e-14 && cert.mate_defect < 1e-14);

        let f = DagFunctor::new(space(&[1.0, 1.0]), space(&[1.0]), vec![vec![1, 1]]).unwrap();
        let (adj, cert) = unitary_adjoint(&f);
        assert_eq!(adj.matrix, vec![vec![1], vec![1]]);
        assert!(cert.gram_ratio_gap < 1e-12);
        let (back, _) = unitary_adjoint(&adj);
        assert_eq!(back.matrix, f.matrix);
    }

    #[test]
    fn functor_trace_examples() {
        let s = space(&[1.0]);
        let id = DagFunctor::identity(&s);
        assert!((functor_trace(&id, &NatEndo::identity(&id)).unwrap() - c(1.0)).norm() < 1e-14);

        // Σ_s d_s Tr_{F(s)}(id) = Σ_s d_s² for the identity functor.
        let s2 = space(&[1.0, 2.0]);
        let id = DagFunctor::identity(&s2);
        assert!((functor_trace(&id, &NatEndo::identity(&id)).unwrap() - c(5.0)).norm() < 1e-14);

        let bad = NatEndo { components: vec![] };
        assert!(matches!(functor_trace(&id, &bad), Err(Hilb2Error::ShapeMismatch(_))));
    }

    #[test]
    fn isometry_examples() {
        let tol = Tolerance::default();
        let s = space(&[1.0]);
        assert!(isometry_check(&DagFunctor::identity(&s), &tol).accept);

        let f = DagFunctor::new(space(&[1.0]), space(&[2.0]), vec![vec![1]]).unwrap();
        let cert = isometry_check(&f, &tol);
        assert!(!cert.accept);
        assert!((cert.gaps[0] - 1.0).abs() < 1e-15);

        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let f = DagFunctor::new(
            space(&[1.0, phi]),
            space(&[1.0, phi, 5.0]),
            vec![vec![1, 0], vec![0, 1], vec![0, 0]],
        )
        .unwrap();
        assert!(isometry_check(&f, &tol).accept);

        let fold = DagFunctor::new(space(&[1.0, 1.0]), space(&[1.0]), vec![vec![1, 1]]).unwrap();
        assert!(!isometry_check(&fold, &tol).fully_faithful);
    }

    #[test]
    fn mod_dagger_examples() {
        let a = HStarAlgebra::new(vec![1], vec![1.0]).unwrap();
        let h = mod_dagger_as_2hilb(&a).unwrap();
        assert_eq!(h.rank(), 1);
        assert!((h.dims[0] - 1.0).abs() < 1e-10);

        let (rec, cert) = round_trip(&space(&[1.0, 3.0]), &Tolerance::default()).unwrap();
        assert!((rec.dims[0] - 1.0).abs() < 1e-9 && (rec.dims[1] - 3.0).abs() < 1e-9);
        assert!(cert.accept);

        // A simple module over (M_2, tr) has dimension equal to the block weight.
        let m2 = HStarAlgebra::new(vec![2], vec![1.0]).unwrap();
        assert!((mod_dagger_as_2hilb(&m2).unwrap().dims[0] - 1.0).abs() < 1e-10);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        fn random_space(rng: &mut SampleRng, max: usize) -> TwoHilbertSpace {
            let n = rng.gen_range(1..=max);
            space(&(0..n).map(|_| rng.gen_range(0.3..6.0)).collect::<Vec<_>>())
        }

        fn random_object(rng: &mut SampleRng, s: &TwoHilbertSpace) -> H2Object {
            H2Object {
                mult: (0..s.rank()).map(|_| rng.gen_range(0..3)).collect(),
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn pairing_compatibility(seed in 0u64..10_000) {
                let mut rng = sample::rng(seed);
                let s = random_space(&mut rng, 4);
                let (x, y, z) = (random_object(&mut rng, &s), random_object(&mut rng, &s), random_object(&mut rng, &s));
                let f = s.random_morphism(&mut rng, &x, &y);
                let g = s.random_morphism(&mut rng, &y, &z);
                let h = s.random_morphism(&mut rng, &x, &z);
                let a = s.inner(&g, &h.compose(&f.dagger()).unwrap()).unwrap();
                let b = s.inner(&g.compose(&f).unwrap(), &h).unwrap();
                let cc = s.inner(&f, &g.dagger().compose(&h).unwrap()).unwrap();
                let scale = 1.0 + a.norm();
                prop_assert!((a - b).norm() < 1e-10 * scale);
                prop_assert!((b - cc).norm() < 1e-10 * scale);
            }

            #[test]
            fn yoneda_unitary(seed in 0u64..10_000) {
                let mut rng = sample::rng(seed);
                let s = random_space(&mut rng, 4);
                let x = random_object(&mut rng, &s);
                prop_assert!(yoneda_decompose(&s, &x).unwrap().comparison_defect < 1e-10);
            }

            #[test]
            fn double_adjoint(seed in 0u64..10_000) {
                let mut rng = sample::rng(seed);
                let a = random_space(&mut rng, 3);
                let b = random_space(&mut rng, 3);
                let m = (0..b.rank()).map(|_| (0..a.rank()).map(|_| rng.gen_range(0..3)).collect()).collect();
                let f = DagFunctor::new(a, b, m).unwrap();
                let (adj, c1) = unitary_adjoint(&f);
                let (back, c2) = unitary_adjoint(&adj);
                prop_assert_eq!(&back.matrix, &f.matrix);
                prop_assert!(c1.mate_defect < 1e-12 && c2.mate_defect < 1e-12);
            }

            #[test]
            fn functor_trace_is_tracial(seed in 0u64..10_000) {
                let mut rng = sample::rng(seed);
                let a = random_space(&mut rng, 3);
                let b = random_space(&mut rng, 3);
                let m = (0..b.rank()).map(|_| (0..a.rank()).map(|_| rng.gen_range(0..3)).collect()).collect();
                let f = DagFunctor::new(a, b, m).unwrap();
                let rho = NatEndo::random(&f, &mut rng);
                let sigma = NatEndo::random(&f, &mut rng);
                let x = functor_trace(&f, &sigma.compose(&rho).unwrap()).unwrap();
                let y = functor_trace(&f, &rho.compose(&sigma).unwrap()).unwrap();
                prop_assert!((x - y).norm() < 1e-12 * (1.0 + x.norm()));
            }

            #[test]
            fn round_trip_recovers(seed in 0u64..10_000) {
                let mut rng = sample::rng(seed);
                let s = random_space(&mut rng, 4);
                let (rec, cert) = round_trip(&s, &Tolerance::default()).unwrap();
                prop_assert!(cert.accept);
                for (x, y) in rec.dims.iter().zip(&s.dims) {
                    prop_assert!((x - y).abs() < 1e-9 * y);
                }
            }
        }
    }
}
