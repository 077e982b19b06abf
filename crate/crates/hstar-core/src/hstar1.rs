//! Finite-dimensional H*-algebras, their Hilbert modules, and linking algebras.

use crate::hilb2::{H2Object, TwoHilbertSpace};
use crate::numcore::{c, eigh, frob, CMatrix, Tolerance};
use crate::sample::{self, SampleRng};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element of a multimatrix algebra, one square block per summand.
pub type Element = Vec<CMatrix>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HStarError {
    #[error("weight {weight} of block {block} is not positive")]
    NonPositiveWeight { block: usize, weight: f64 },
    #[error("trace is not tracial (residual {residual:.3e})")]
    TracialityViolation { residual: f64 },
    #[error("trace is not positive (margin {margin:.3e})")]
    PositivityViolation { margin: f64 },
    #[error("malformed algebra data: {0}")]
    Shape(String),
    #[error("objects live in different 2-Hilbert spaces")]
    MixedAmbientCategory,
}

impl HStarError {
    pub fn axiom(&self) -> &'static str {
        match self {
            HStarError::NonPositiveWeight { .. } | HStarError::PositivityViolation { .. } => {
                "trace positivity"
            }
            HStarError::TracialityViolation { .. } => "traciality",
            HStarError::Shape(_) | HStarError::MixedAmbientCategory => "input",
        }
    }
}

/// `⊕_i M_{n_i}(ℂ)` with the trace `Tr(a) = Σ_i w_i tr(a_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HStarAlgebra {
    pub blocks: Vec<usize>,
    pub weights: Vec<f64>,
}

impl HStarAlgebra {
    pub fn new(blocks: Vec<usize>, weights: Vec<f64>) -> Result<Self, HStarError> {
        if blocks.len() != weights.len() {
            return Err(HStarError::Shape(format!(
                "{} blocks but {} weights",
                blocks.len(),
                weights.len()
            )));
        }
        if let Some(b) = blocks.iter().position(|&n| n == 0) {
            return Err(HStarError::Shape(format!("block {b} has size 0")));
        }
        if let Some((block, &weight)) = weights.iter().enumerate().find(|(_, &w)| !(w > 0.0)) {
            return Err(HStarError::NonPositiveWeight { block, weight });
        }
        Ok(HStarAlgebra { blocks, weights })
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    pub fn trace(&self, a: &Element) -> Complex64 {
        a.iter()
            .zip(&self.weights)
            .map(|(x, &w)| x.trace() * w)
            .sum()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    pub fn star(&self, a: &Element) -> Element {
        a.iter().map(|x| x.adjoint()).collect()
    }

    pub fn one(&self) -> Element {
        self.blocks.iter().map(|&n| CMatrix::identity(n, n)).collect()
    }

    pub fn inner(&self, a: &Element, b: &Element) -> Complex64 {
        self.trace(&self.mul(&self.star(a), b))
    }

    pub fn random_element(&self, rng: &mut SampleRng) -> Element {
        self.blocks.iter().map(|&n| sample::matrix(rng, n, n)).collect()
    }

    /// Matrix unit `e_{jk}` in block `i`.
    pub fn unit(&self, i: usize, j: usize, k: usize) -> Element {
        self.blocks
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut m = CMatrix::zeros(n, n);
                if b == i {
                    m[(j, k)] = c(1.0);
                }
                m
            })
            .collect()
    }

    /// Coordinates in the orthonormal GNS basis `e_{jk} / sqrt(w_i)`.
    fn coords(&self, a: &Element) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, x) in a.iter().enumerate() {
            let s = self.weights[i].sqrt();
            for j in 0..self.blocks[i] {
                for k in 0..self.blocks[i] {
                    out.push(x[(j, k)] * s);
                }
            }
        }
        out
    }

    fn from_coords(&self, v: &[Complex64]) -> Element {
        let mut pos = 0;
        self.blocks
            .iter()
            .zip(&self.weights)
            .map(|(&n, &w)| {
                let s = w.sqrt();
                let m = CMatrix::from_fn(n, n, |j, k| v[pos + j * n + k] / s);
                pos += n * n;
                m
            })
            .collect()
    }

    /// Random algebra with at most `max_blocks` blocks of size at most `max_size`.
    pub fn random(rng: &mut SampleRng, max_blocks: usize, max_size: usize) -> Self {
        use rand::Rng;
        let k = rng.gen_range(1..=max_blocks);
        let blocks = (0..k).map(|_| rng.gen_range(1..=max_size)).collect();
        let weights = (0..k).map(|_| rng.gen_range(0.2..5.0)).collect();
        HStarAlgebra { blocks, weights }
    }
}

/// How the trace is supplied to [`verify_hstar_algebra`].
#[derive(Clone, Debug)]
pub enum TraceInput {
    Weights(Vec<f64>),
    /// `φ(a) = Σ_i tr(Φ_i a_i)` for the given matrices `Φ_i`.
    Functional(Vec<CMatrix>),
}

#[derive(Clone, Debug, Serialize)]
pub struct HStarCertificate {
    pub blocks: Vec<usize>,
    pub weights: Vec<f64>,
    pub seed: u64,
    pub samples: usize,
    pub traciality_residual: f64,
    pub projection_residual: f64,
    pub positivity_margin: f64,
}

const TRACE_SAMPLES: usize = 24;

/// Certify that the supplied functional is a faithful positive trace.
pub fn verify_hstar_algebra(
    blocks: &[usize],
    input: &TraceInput,
    tol: &Tolerance,
    seed: u64,
) -> Result<(HStarAlgebra, HStarCertificate), HStarError> {
    if blocks.iter().any(|&n| n == 0) {
        return Err(HStarError::Shape("zero block size".into()));
    }
    let phis: Vec<CMatrix> = match input {
        TraceInput::Weights(w) => {
            if w.len() != blocks.len() {
                return Err(HStarError::Shape("weight count mismatch".into()));
            }
            if let Some((block, &weight)) = w.iter().enumerate().find(|(_, &x)| !(x > 0.0)) {
                return Err(HStarError::NonPositiveWeight { block, weight });
            }
            blocks
                .iter()
                .zip(w)
                .map(|(&n, &x)| CMatrix::identity(n, n) * c(x))
                .collect()
        }
        TraceInput::Functional(f) => {
            if f.len() != blocks.len()
                || f.iter().zip(blocks).any(|(m, &n)| m.nrows() != n || m.ncols() != n)
            {
                return Err(HStarError::Shape("functional shape mismatch".into()));
            }
            f.clone()
        }
    };
    let phi = |a: &Element| -> Complex64 { phis.iter().zip(a).map(|(p, x)| (p * x).trace()).sum() };

    let shape = HStarAlgebra {
        blocks: blocks.to_vec(),
        weights: vec![1.0; blocks.len()],
    };
    let mut rng = sample::rng(seed);
    let mut residual = 0.0f64;
    let mut scale = 1.0f64;
    for _ in 0..TRACE_SAMPLES {
        let a = shape.random_element(&mut rng);
        let b = shape.random_element(&mut rng);
        let ab = phi(&shape.mul(&a, &b));
        let ba = phi(&shape.mul(&b, &a));
        residual = residual.max((ab - ba).norm());
        scale = scale.max(ab.norm());
    }
    // Matrix-unit pairs catch functionals that random sampling could miss.
    for (i, &n) in blocks.iter().enumerate() {
        for j in 0..n {
            for k in 0..n {
                let a = shape.unit(i, j, k);
                let b = shape.unit(i, k, j);
                let d = phi(&shape.mul(&a, &b)) - phi(&shape.mul(&b, &a));
                residual = residual.max(d.norm());
            }
        }
    }

    let mut weights = Vec::with_capacity(blocks.len());
    let mut projection: f64 = 0.0;
    let mut margin = f64::INFINITY;
    for (p, &n) in phis.iter().zip(blocks) {
        let w = p.trace() / n as f64;
        projection = projection.max(frob(&(p - CMatrix::identity(n, n) * w)));
        let (vals, _) = eigh(&((p + p.adjoint()) * c(0.5)));
        margin = margin.min(*vals.last().unwrap_or(&0.0));
        margin = margin.min(w.re);
        if w.im.abs() > tol.bound(w.norm()) {
            margin = margin.min(-w.im.abs());
        }
        weights.push(w.re);
    }

    let cert = HStarCertificate {
        blocks: blocks.to_vec(),
        weights: weights.clone(),
        seed,
        samples: TRACE_SAMPLES,
        traciality_residual: tol.report(residual, scale),
        projection_residual: projection,
        positivity_margin: margin,
    };
    if !tol.accepts(residual, scale) || !tol.accepts(projection, scale) {
        return Err(HStarError::TracialityViolation {
            residual: residual.max(projection),
        });
    }
    if !(margin > tol.abs_eps) {
        return Err(HStarError::PositivityViolation { margin });
    }
    let alg = HStarAlgebra::new(blocks.to_vec(), weights)?;
    Ok((alg, cert))
}

/// A right Hilbert module `H = ⊕_i ℂ^{m_i × n_i}` over an H*-algebra.
///
/// `H` carries the inner product `⟨η|ξ⟩_H = Σ_i w_i tr(η_i† ξ_i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HStarModuleRep {
    pub algebra: HStarAlgebra,
    pub mults: Vec<usize>,
}

/// A vector of a module, one `m_i × n_i` block per summand.
pub type ModVector = Vec<CMatrix>;

impl HStarModuleRep {
    pub fn new(algebra: HStarAlgebra, mults: Vec<usize>) -> Result<Self, HStarError> {
        if mults.len() != algebra.blocks.len() {
            return Err(HStarError::Shape("multiplicity count mismatch".into()));
        }
        Ok(HStarModuleRep { algebra, mults })
    }

    pub fn dim(&self) -> usize {
        self.mults
            .iter()
            .zip(&self.algebra.blocks)
            .map(|(m, n)| m * n)
            .sum()
    }

    /// Gram matrix of the matrix-unit basis of `H`.
    pub fn gram(&self) -> CMatrix {
        let mut diag = Vec::with_capacity(self.dim());
        for (i, (&m, &n)) in self.mults.iter().zip(&self.algebra.blocks).enumerate() {
            diag.extend(std::iter::repeat(c(self.algebra.weights[i])).take(m * n));
        }
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    pub fn random_vector(&self, rng: &mut SampleRng) -> ModVector {
        self.mults
            .iter()
            .zip(&self.algebra.blocks)
            .map(|(&m, &n)| sample::matrix(rng, m, n))
            .collect()
    }

    fn basis_vector(&self, idx: usize) -> ModVector {
        let mut v: ModVector = self
            .mults
            .iter()
            .zip(&self.algebra.blocks)
            .map(|(&m, &n)| CMatrix::zeros(m, n))
            .collect();
        let mut rest = idx;
        for (i, (&m, &n)) in self.mults.iter().zip(&self.algebra.blocks).enumerate() {
            if rest < m * n {
                v[i][(rest / n, rest % n)] = c(1.0);
                break;
            }
            rest -= m * n;
        }
        v
    }

    fn coords(&self, xi: &ModVector) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.dim());
        for (i, x) in xi.iter().enumerate() {
            let s = self.algebra.weights[i].sqrt();
            for j in 0..x.nrows() {
                for k in 0..x.ncols() {
                    out.push(x[(j, k)] * s);
                }
            }
        }
        out
    }

    /// The creation operator `|ξ⟩ : A → H`, `a ↦ ξ a`, in orthonormal coordinates.
    pub fn creation(&self, xi: &ModVector) -> CMatrix {
        let alg = &self.algebra;
        let mut out = CMatrix::zeros(self.dim(), alg.dim());
        let mut col = 0;
        for (i, &n) in alg.blocks.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    let mut u = alg.unit(i, j, k);
                    u[i] /= c(alg.weights[i].sqrt());
                    let image: ModVector = xi.iter().zip(&u).map(|(x, a)| x * a).collect();
                    for (r, z) in self.coords(&image).into_iter().enumerate() {
                        out[(r, col)] = z;
                    }
                    col += 1;
                }
            }
        }
        out
    }

    /// The A-valued inner product `⟨η|ξ⟩_A = |η⟩† |ξ⟩ ∈ End(A_A) ≅ A`.
    pub fn a_inner(&self, eta: &ModVector, xi: &ModVector) -> Element {
        let alg = &self.algebra;
        let op = self.creation(eta).adjoint() * self.creation(xi);
        let one = nalgebra::DVector::from_vec(alg.coords(&alg.one()));
        let image = op * one;
        alg.from_coords(image.as_slice())
    }

    /// Left blocks of `|ξ⟩⟨η| ∈ End(H_A)`.
    pub fn rank_one(&self, xi: &ModVector, eta: &ModVector) -> Vec<CMatrix> {
        let op = self.creation(xi) * self.creation(eta).adjoint();
        self.left_blocks(&op)
    }

    /// Read off `T_i` from a module endomorphism acting as `ζ_i ↦ T_i ζ_i`.
    pub fn left_blocks(&self, op: &CMatrix) -> Vec<CMatrix> {
        let mut offset = 0;
        let mut out = Vec::with_capacity(self.mults.len());
        for (&m, &n) in self.mults.iter().zip(&self.algebra.blocks) {
            let t = CMatrix::from_fn(m, m, |j, l| op[(offset + j * n, offset + l * n)]);
            out.push(t);
            offset += m * n;
        }
        out
    }

    /// `Tr_H(T) = Σ_i w_i tr(T_i)` on `End(H_A) = ⊕_i M_{m_i}`.
    pub fn trace_endo(&self, t: &[CMatrix]) -> Complex64 {
        t.iter()
            .zip(&self.algebra.weights)
            .map(|(x, &w)| x.trace() * w)
            .sum()
    }

    /// `|Tr_H(|ξ⟩⟨η|) − Tr_A(⟨η|ξ⟩_A)|`.
    pub fn law_residual(&self, xi: &ModVector, eta: &ModVector) -> f64 {
        let lhs = self.trace_endo(&self.rank_one(xi, eta));
        let rhs = self.algebra.trace(&self.a_inner(eta, xi));
        (lhs - rhs).norm()
    }

    /// `Tr_H(id)` from a rank-one decomposition `id = Σ c_{jl} |e_j⟩⟨e_l|`.
    pub fn quantum_dim(&self) -> f64 {
        let d = self.dim();
        let basis: Vec<ModVector> = (0..d).map(|k| self.basis_vector(k)).collect();
        let creations: Vec<CMatrix> = basis.iter().map(|v| self.creation(v)).collect();
        let mut system = CMatrix::zeros(d * d, d * d);
        for j in 0..d {
            for l in 0..d {
                let op = &creations[j] * creations[l].adjoint();
                for (r, z) in op.iter().enumerate() {
                    system[(r, j * d + l)] = *z;
                }
            }
        }
        let id = CMatrix::identity(d, d);
        let rhs = nalgebra::DVector::from_iterator(d * d, id.iter().copied());
        let svd = system.svd(true, true);
        let coeffs = svd.solve(&rhs, 1e-12).expect("svd solve");
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..d {
            for l in 0..d {
                let z = coeffs[j * d + l];
                if z.norm() > 0.0 {
                    total += z * self.algebra.trace(&self.a_inner(&basis[l], &basis[j]));
                }
            }
        }
        total.re
    }
}

/// `A` as a right module over itself.
pub fn gns(a: &HStarAlgebra) -> HStarModuleRep {
    HStarModuleRep {
        algebra: a.clone(),
        mults: a.blocks.clone(),
    }
}

/// One simple module (a row space of block `i`) per block, with its quantum dimension.
pub fn simple_modules(a: &HStarAlgebra) -> Vec<(HStarModuleRep, f64)> {
    (0..a.blocks.len())
        .map(|i| {
            let mut mults = vec![0; a.blocks.len()];
            mults[i] = 1;
            let m = HStarModuleRep {
                algebra: a.clone(),
                mults,
            };
            let d = m.quantum_dim();
            (m, d)
        })
        .collect()
}

/// The linking algebra `⊕_{i,j} Hom(a_j → a_i)` of objects in one 2-Hilbert space.
///
/// Its blocks are `M_{N_s}` for each label `s` with total multiplicity `N_s > 0`,
/// weighted by the quantum dimension `d_s`.
pub fn linking_algebra(objects: &[(&TwoHilbertSpace, &H2Object)]) -> Result<HStarAlgebra, HStarError> {
    let Some((space, _)) = objects.first() else {
        return Err(HStarError::Shape("no objects".into()));
    };
    if objects.iter().any(|(s, o)| *s != *space || o.mult.len() != space.labels.len()) {
        return Err(HStarError::MixedAmbientCategory);
    }
    let mut blocks = Vec::new();
    let mut weights = Vec::new();
    for (s, &d) in space.dims.iter().enumerate() {
        let total: usize = objects.iter().map(|(_, o)| o.mult[s]).sum();
        if total > 0 {
            blocks.push(total);
            weights.push(d);
        }
    }
    let alg = HStarAlgebra::new(blocks, weights)?;
    verify_hstar_algebra(
        &alg.blocks,
        &TraceInput::Weights(alg.weights.clone()),
        &Tolerance::default(),
        0,
    )?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn scalar_trace_accepted() {
        let (_, cert) = verify_hstar_algebra(&[1], &TraceInput::Weights(vec![1.0]), &tol(), 0).unwrap();
        assert!(cert.traciality_residual < 1e-12);
    }

    #[test]
    fn matrix_trace_accepted() {
        let (_, cert) = verify_hstar_algebra(&[2], &TraceInput::Weights(vec![1.0]), &tol(), 7).unwrap();
        assert!(cert.traciality_residual < 1e-12);
    }

    #[test]
    fn corner_functional_rejected() {
        let mut phi = CMatrix::zeros(2, 2);
        phi[(0, 0)] = c(1.0);
        // φ(e12 e21) = 1 while φ(e21 e12) = 0.
        let err = verify_hstar_algebra(&[2], &TraceInput::Functional(vec![phi]), &tol(), 0).unwrap_err();
        match err {
            HStarError::TracialityViolation { residual } => assert!(residual >= 1.0 - 1e-12),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn scalar_functional_projects_to_weight() {
        let phi = CMatrix::identity(3, 3) * c(2.5);
        let (alg, _) = verify_hstar_algebra(&[3], &TraceInput::Functional(vec![phi]), &tol(), 0).unwrap();
        assert!((alg.weights[0] - 2.5).abs() < 1e-14);
    }

    #[test]
    fn negative_weight_rejected() {
        assert!(matches!(
            verify_hstar_algebra(&[1, 2], &TraceInput::Weights(vec![1.0, -1.0]), &tol(), 0),
            Err(HStarError::NonPositiveWeight { block: 1, .. })
        ));
        let phi = CMatrix::identity(1, 1) * c(-1.0);
        assert!(matches!(
            verify_hstar_algebra(&[1], &TraceInput::Functional(vec![phi]), &tol(), 0),
            Err(HStarError::PositivityViolation { .. })
        ));
    }

    #[test]
    fn gns_examples() {
        let a = HStarAlgebra::new(vec![1], vec![1.0]).unwrap();
        let h = gns(&a);
        assert_eq!(h.dim(), 1);
        assert!((a.inner(&a.one(), &a.one()) - c(1.0)).norm() < 1e-14);

        let m2 = HStarAlgebra::new(vec![2], vec![1.0]).unwrap();
        assert_eq!(gns(&m2).dim(), 4);
        for (j, k) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (l, m) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let ip = m2.inner(&m2.unit(0, j, k), &m2.unit(0, l, m));
                let want = if (j, k) == (l, m) { 1.0 } else { 0.0 };
                assert!((ip - c(want)).norm() < 1e-14);
            }
        }

        let cc = HStarAlgebra::new(vec![1, 1], vec![2.0, 3.0]).unwrap();
        assert!((cc.inner(&cc.one(), &cc.one()) - c(5.0)).norm() < 1e-14);
    }

    /// Independent oracle: `A_A ≅ ⊕_i n_i H_i` forces `Σ_i n_i d_i = Tr_A(1)`
    /// blockwise, so `d_i = w_i`.
    fn oracle_dims(a: &HStarAlgebra) -> Vec<f64> {
        let one = a.one();
        (0..a.blocks.len())
            .map(|i| {
                let mut part = one.clone();
                for (b, m) in part.iter_mut().enumerate() {
                    if b != i {
                        m.fill(c(0.0));
                    }
                }
                a.trace(&part).re / a.blocks[i] as f64
            })
            .collect()
    }

    #[test]
    fn simple_module_dims() {
        for (blocks, weights) in [
            (vec![1], vec![1.0]),
            (vec![2], vec![1.0]),
            (vec![1, 2], vec![1.0, 3.0]),
        ] {
            let a = HStarAlgebra::new(blocks, weights).unwrap();
            let dims: Vec<f64> = simple_modules(&a).into_iter().map(|(_, d)| d).collect();
            let want = oracle_dims(&a);
            for (d, w) in dims.iter().zip(&want) {
                assert!((d - w).abs() < 1e-10, "{dims:?} vs {want:?}");
            }
        }
        let a = HStarAlgebra::new(vec![1, 2], vec![1.0, 3.0]).unwrap();
        let dims: Vec<f64> = simple_modules(&a).into_iter().map(|(_, d)| d).collect();
        assert!((dims[0] - 1.0).abs() < 1e-10 && (dims[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn free_module_dimension_count() {
        let a = HStarAlgebra::new(vec![1, 3, 2], vec![0.5, 1.0, 2.0]).unwrap();
        let simples = simple_modules(&a);
        let count: usize = simples
            .iter()
            .zip(&a.blocks)
            .map(|((m, _), &n)| n * m.dim())
            .sum();
        assert_eq!(count, gns(&a).dim());
        let total: f64 = simples.iter().zip(&a.blocks).map(|((_, d), &n)| n as f64 * d).sum();
        assert!((total - a.trace(&a.one()).re).abs() < 1e-10);
    }

    #[test]
    fn module_law_on_random_vectors() {
        let mut rng = sample::rng(1);
        let a = HStarAlgebra::new(vec![2, 1], vec![1.5, 0.7]).unwrap();
        let h = HStarModuleRep::new(a, vec![3, 2]).unwrap();
        for _ in 0..5 {
            let xi = h.random_vector(&mut rng);
            let eta = h.random_vector(&mut rng);
            assert!(h.law_residual(&xi, &eta) < 1e-12);
        }
        assert!(crate::numcore::hermitian_defect(&h.gram()) < 1e-15);
    }

    #[test]
    fn linking_examples() {
        let hilb = TwoHilbertSpace::new(vec!["a".into()], vec![1.0]).unwrap();
        let a = H2Object { mult: vec![1] };
        let l = linking_algebra(&[(&hilb, &a)]).unwrap();
        assert_eq!((l.blocks.clone(), l.weights.clone()), (vec![1], vec![1.0]));
        let l2 = linking_algebra(&[(&hilb, &a), (&hilb, &a)]).unwrap();
        assert_eq!(l2.blocks, vec![2]);

        let s = TwoHilbertSpace::new(vec!["s".into()], vec![2.0]).unwrap();
        let one = H2Object { mult: vec![1] };
        let two = H2Object { mult: vec![2] };
        let l3 = linking_algebra(&[(&s, &one), (&s, &two)]).unwrap();
        assert_eq!((l3.blocks, l3.weights), (vec![3], vec![2.0]));

        assert_eq!(
            linking_algebra(&[(&hilb, &a), (&s, &one)]),
            Err(HStarError::MixedAmbientCategory)
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn random_algebras_are_tracial(seed in 0u64..5000) {
                let mut rng = sample::rng(seed);
                let a = HStarAlgebra::random(&mut rng, 3, 4);
                let (_, cert) = verify_hstar_algebra(&a.blocks, &TraceInput::Weights(a.weights.clone()), &tol(), seed).unwrap();
                prop_assert!(cert.traciality_residual < 1e-9);
                prop_assert!(cert.positivity_margin > 0.0);
            }

            #[test]
            fn module_law_holds(seed in 0u64..5000) {
                let mut rng = sample::rng(seed);
                let a = HStarAlgebra::random(&mut rng, 3, 3);
                use rand::Rng;
                let mults = a.blocks.iter().map(|_| rng.gen_range(0..3)).collect();
                let h = HStarModuleRep::new(a, mults).unwrap();
                let xi = h.random_vector(&mut rng);
                let eta = h.random_vector(&mut rng);
                prop_assert!(h.law_residual(&xi, &eta) < 1e-9);
            }
        }
    }
}
