//! Dense complex linear algebra and the tolerance policy.
//!
//! Everything here is generic over the real scalar `T`; the rest of the crate
//! works with the `f64` aliases [`CMatrix`] and [`Tolerance`].

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense complex matrix over the real scalar `T`.
pub type CMat<T> = DMatrix<Complex<T>>;

/// Double precision complex matrix.
pub type CMatrix = CMat<f64>;

/// Double precision tolerance.
pub type Tolerance = Tol<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ResidualMode {
    /// Residuals are reported as raw norms.
    #[default]
    Absolute,
    /// Residuals are reported divided by `max(1, scale)`.
    Relative,
}

/// Acceptance thresholds shared by every check.
///
/// A residual `r` measured against a quantity of size `s` passes when
/// `r <= abs_eps + rel_eps * s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tol<T> {
    pub abs_eps: T,
    pub rel_eps: T,
    #[serde(default)]
    pub mode: ResidualMode,
}

impl<T: RealField + Copy> Default for Tol<T> {
    fn default() -> Self {
        Self::uniform(nalgebra::convert(1e-9))
    }
}

impl<T: RealField + Copy> Tol<T> {
    /// Panics if either threshold is negative or NaN.
    pub fn new(abs_eps: T, rel_eps: T) -> Self {
        assert!(
            abs_eps >= T::zero() && rel_eps >= T::zero(),
            "tolerances must be nonnegative"
        );
        Tol {
            abs_eps,
            rel_eps,
            mode: ResidualMode::Absolute,
        }
    }

    pub fn uniform(eps: T) -> Self {
        Self::new(eps, eps)
    }

    pub fn with_mode(mut self, mode: ResidualMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn bound(&self, scale: T) -> T {
        self.abs_eps + self.rel_eps * scale.abs()
    }

    pub fn accepts(&self, residual: T, scale: T) -> bool {
        residual <= self.bound(scale)
    }

    /// The residual as it should appear in a report.
    pub fn report(&self, residual: T, scale: T) -> T {
        match self.mode {
            ResidualMode::Absolute => residual,
            ResidualMode::Relative => residual / scale.abs().max(T::one()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("eigenvalue {value:.3e} is below the negative tolerance")]
    NegativeEigenvalue { value: f64 },
    #[error("matrix is not an orthogonal projection (defect {defect:.3e})")]
    NotProjection { defect: f64 },
    #[error("matrix is singular (smallest eigenvalue {value:.3e})")]
    Singular { value: f64 },
}

fn to_f64<T: RealField + Copy>(x: T) -> f64 {
    nalgebra::try_convert::<T, f64>(x).unwrap_or(f64::NAN)
}

pub fn c<T: RealField + Copy>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

pub fn frob<T: RealField + Copy>(m: &CMat<T>) -> T {
    m.iter()
        .fold(T::zero(), |acc, z| acc + z.norm_sqr())
        .sqrt()
}

pub fn ensure_square<T: RealField + Copy>(m: &CMat<T>) -> Result<usize, NumError> {
    if m.nrows() != m.ncols() {
        return Err(NumError::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn hermitian_defect<T: RealField + Copy>(m: &CMat<T>) -> T {
    frob(&(m - m.adjoint()))
}

/// Multiply column `j` so that its first coordinate of non-negligible modulus
/// is real and positive.
fn normalize_phase<T: RealField + Copy>(v: &mut CMat<T>, j: usize) {
    let col = v.column(j);
    let peak = col.iter().fold(T::zero(), |a, z| a.max(z.norm_sqr().sqrt()));
    if peak == T::zero() {
        return;
    }
    let cut = peak * nalgebra::convert::<f64, T>(1e-8);
    if let Some(z) = col.iter().find(|z| z.norm_sqr().sqrt() > cut).copied() {
        let phase = z.conj() / c(z.norm_sqr().sqrt());
        v.column_mut(j).iter_mut().for_each(|x| *x *= phase);
    }
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues in descending order
/// and phase-normalized eigenvectors as columns.
pub fn eigh<T: RealField + Copy>(m: &CMat<T>) -> (Vec<T>, CMat<T>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let herm = (m + m.adjoint()) * c(nalgebra::convert::<f64, T>(0.5));
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vecs = CMat::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (k, &i) in order.iter().enumerate() {
        vals.push(eig.eigenvalues[i]);
        vecs.set_column(k, &eig.eigenvectors.column(i));
        normalize_phase(&mut vecs, k);
    }
    (vals, vecs)
}

fn check_hermitian<T: RealField + Copy>(m: &CMat<T>, tol: &Tol<T>) -> Result<(), NumError> {
    ensure_square(m)?;
    let d = hermitian_defect(m);
    if !tol.accepts(d, frob(m)) {
        return Err(NumError::NotHermitian { defect: to_f64(d) });
    }
    Ok(())
}

fn rebuild<T: RealField + Copy>(vals: &[T], vecs: &CMat<T>, f: impl Fn(T) -> T) -> CMat<T> {
    let n = vals.len();
    let mut scaled = vecs.clone();
    for j in 0..n {
        let s = c(f(vals[j]));
        scaled.column_mut(j).iter_mut().for_each(|x| *x *= s);
    }
    scaled * vecs.adjoint()
}

/// Eigenvalues at or below this are rounding noise.
fn noise_floor<T: RealField + Copy>(vals: &[T]) -> T {
    let top = vals.iter().fold(T::one(), |a, &v| a.max(v.abs()));
    let n = nalgebra::convert::<f64, T>(vals.len().max(1) as f64);
    T::default_epsilon() * nalgebra::convert::<f64, T>(16.0) * n * top
}

/// Positive square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-abs_eps, 0)` and rounding noise are clamped to zero.
pub fn hermitian_sqrt<T: RealField + Copy>(m: &CMat<T>, tol: &Tol<T>) -> Result<CMat<T>, NumError> {
    check_hermitian(m, tol)?;
    let (vals, vecs) = eigh(m);
    if let Some(&low) = vals.last() {
        if low < -tol.abs_eps {
            return Err(NumError::NegativeEigenvalue { value: to_f64(low) });
        }
    }
    let floor = noise_floor(&vals);
    Ok(rebuild(&vals, &vecs, |x| if x <= floor { T::zero() } else { x.sqrt() }))
}

/// `M^r` for a Hermitian positive definite `M`.
pub fn hermitian_pow<T: RealField + Copy>(
    m: &CMat<T>,
    r: T,
    tol: &Tol<T>,
) -> Result<CMat<T>, NumError> {
    check_hermitian(m, tol)?;
    let (vals, vecs) = eigh(m);
    if let Some(&low) = vals.last() {
        if low <= tol.abs_eps {
            return Err(if low < -tol.abs_eps {
                NumError::NegativeEigenvalue { value: to_f64(low) }
            } else {
                NumError::Singular { value: to_f64(low) }
            });
        }
    }
    Ok(rebuild(&vals, &vecs, |x| x.powf(r)))
}

/// Condition number `max eig / min eig` of a Hermitian positive matrix.
pub fn hermitian_condition<T: RealField + Copy>(m: &CMat<T>) -> T {
    let (vals, _) = eigh(m);
    match (vals.first(), vals.last()) {
        (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
        (Some(_), Some(_)) => T::max_value().unwrap_or(T::one() / T::default_epsilon()),
        _ => T::one(),
    }
}

/// Isometry `V` with `V V^† = P` for an orthogonal projection `P`.
///
/// Columns follow descending eigenvalue of `P` and are phase normalized.
pub fn split_projection<T: RealField + Copy>(p: &CMat<T>, tol: &Tol<T>) -> Result<CMat<T>, NumError> {
    let n = ensure_square(p)?;
    let scale = frob(p).max(T::one());
    let herm = hermitian_defect(p);
    let idem = frob(&(p * p - p));
    let defect = herm.max(idem);
    if !tol.accepts(defect, scale) {
        return Err(NumError::NotProjection { defect: to_f64(defect) });
    }
    let (vals, vecs) = eigh(p);
    let half = nalgebra::convert::<f64, T>(0.5);
    let rank = vals.iter().filter(|&&v| v > half).count();
    let mut v = CMat::zeros(n, rank);
    for j in 0..rank {
        v.set_column(j, &vecs.column(j));
    }
    Ok(v)
}

/// `max(‖M†M − I‖_F, ‖MM† − I‖_F)`.
pub fn unitarity_defect<T: RealField + Copy>(m: &CMat<T>) -> Result<T, NumError> {
    let n = ensure_square(m)?;
    let id = CMat::<T>::identity(n, n);
    let a = frob(&(m.adjoint() * m - &id));
    let b = frob(&(m * m.adjoint() - &id));
    Ok(a.max(b))
}

/// `‖V†V − I‖_F`.
pub fn isometry_defect<T: RealField + Copy>(v: &CMat<T>) -> T {
    let k = v.ncols();
    frob(&(v.adjoint() * v - CMat::<T>::identity(k, k)))
}

/// Orthonormal basis of the kernel of `a`, as columns.
///
/// Singular values below `cut * max(1, σ_max)` count as zero.
pub fn nullspace<T: RealField + Copy>(a: &CMat<T>, cut: T) -> CMat<T> {
    let (m, n) = (a.nrows(), a.ncols());
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    if m == 0 {
        return CMat::identity(n, n);
    }
    // Pad to square so the SVD returns a full right singular basis.
    let rows = m.max(n);
    let mut padded = CMat::zeros(rows, n);
    padded.rows_mut(0, m).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors");
    let sv = &svd.singular_values;
    let top = sv.iter().fold(T::zero(), |x, &y| x.max(y)).max(T::one());
    let keep: Vec<usize> = (0..n).filter(|&j| sv[j] <= cut * top).collect();
    let mut out = CMat::zeros(n, keep.len());
    for (k, &j) in keep.iter().enumerate() {
        let row = v_t.row(j).adjoint();
        out.set_column(k, &row);
        normalize_phase(&mut out, k);
    }
    out
}

/// Gram–Schmidt on the columns of `v` for the inner product `⟨x|y⟩ = x† G y`.
/// Columns that become dependent are dropped.
pub fn orthonormalize<T: RealField + Copy>(v: &CMat<T>, gram: &CMat<T>, cut: T) -> CMat<T> {
    let mut cols: Vec<nalgebra::DVector<Complex<T>>> = Vec::new();
    for j in 0..v.ncols() {
        let mut x = v.column(j).into_owned();
        for q in &cols {
            let coeff = (q.adjoint() * gram * &x)[(0, 0)];
            x -= q * coeff;
        }
        let nrm = (x.adjoint() * gram * &x)[(0, 0)].re;
        if nrm > cut * cut {
            x /= c(nrm.sqrt());
            cols.push(x);
        }
    }
    let mut out = CMat::zeros(v.nrows(), cols.len());
    for (j, q) in cols.iter().enumerate() {
        out.set_column(j, q);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_mat(rng: &mut ChaCha8Rng, r: usize, k: usize) -> CMatrix {
        CMatrix::from_fn(r, k, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn sqrt_of_identity_and_diagonal() {
        let tol = Tolerance::default();
        let id = CMatrix::identity(3, 3);
        assert!(frob(&(hermitian_sqrt(&id, &tol).unwrap() - &id)) < 1e-14);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(4.0), c(9.0)]));
        let s = hermitian_sqrt(&d, &tol).unwrap();
        assert!((s[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!((s[(1, 1)].re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = rand_mat(&mut rng, 4, 4);
        let m = b.adjoint() * &b;
        let s = hermitian_sqrt(&m, &Tolerance::default()).unwrap();
        assert!(frob(&(&s * &s - &m)) < 1e-8);
        assert!(hermitian_defect(&s) < 1e-12);
    }

    #[test]
    fn sqrt_rejects_bad_input() {
        let tol = Tolerance::default();
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = c(1.0);
        assert!(matches!(hermitian_sqrt(&m, &tol), Err(NumError::NotHermitian { .. })));
        let neg = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-0.5)]));
        assert!(matches!(hermitian_sqrt(&neg, &tol), Err(NumError::NegativeEigenvalue { .. })));
        let tiny = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-1e-12)]));
        let s = hermitian_sqrt(&tiny, &tol).unwrap();
        assert!(s[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn split_examples() {
        let tol = Tolerance::default();
        let v = split_projection(&CMatrix::identity(2, 2), &tol).unwrap();
        assert_eq!(v.ncols(), 2);
        assert!(frob(&(&v * v.adjoint() - CMatrix::identity(2, 2))) < 1e-14);
        let v0 = split_projection(&CMatrix::zeros(2, 2), &tol).unwrap();
        assert_eq!(v0.ncols(), 0);
        let p = CMatrix::from_element(2, 2, c(0.5));
        let v1 = split_projection(&p, &tol).unwrap();
        assert_eq!(v1.ncols(), 1);
        assert!(frob(&(&v1 * v1.adjoint() - &p)) < 1e-12);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v1[(0, 0)].re - r).abs() < 1e-12 && v1[(0, 0)].im.abs() < 1e-15);
        assert!(matches!(
            split_projection(&CMatrix::from_element(2, 2, c(1.0)), &tol),
            Err(NumError::NotProjection { .. })
        ));
    }

    #[test]
    fn unitarity_examples() {
        assert_eq!(unitarity_defect(&CMatrix::identity(4, 4)).unwrap(), 0.0);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(1.0)]));
        assert!((unitarity_defect(&d).unwrap() - 3.0).abs() < 1e-14);
        assert!(matches!(
            unitarity_defect(&CMatrix::zeros(2, 3)),
            Err(NumError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn householder_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = rand_mat(&mut rng, 5, 1);
        let nrm2 = (v.adjoint() * &v)[(0, 0)].re;
        let h = CMatrix::identity(5, 5) - &v * v.adjoint() * c(2.0 / nrm2);
        assert!(unitarity_defect(&h).unwrap() < 1e-12);
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = rand_mat(&mut rng, 2, 5);
        let k = nullspace(&b, 1e-8);
        assert_eq!(k.ncols(), 3);
        assert!(frob(&(&b * &k)) < 1e-10);
        assert!(isometry_defect(&k) < 1e-10);
    }

    #[test]
    fn generic_over_f32() {
        let tol: Tol<f32> = Tol::uniform(1e-4);
        let d = CMat::<f32>::from_diagonal(&nalgebra::DVector::from_vec(vec![c(4.0f32), c(1.0)]));
        let s = hermitian_sqrt(&d, &tol).unwrap();
        assert!((s[(0, 0)].re - 2.0).abs() < 1e-5);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn sqrt_fixes_projections(seed in 0u64..10_000, n in 1usize..6, r in 0usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r = r.min(n);
                let q = rand_mat(&mut rng, n, n).qr().q();
                let v = q.columns(0, r).into_owned();
                let p = &v * v.adjoint();
                let s = hermitian_sqrt(&p, &Tolerance::default()).unwrap();
                prop_assert!(frob(&(s - &p)) < 1e-9);
            }

            #[test]
            fn split_gives_isometry(seed in 0u64..10_000, n in 1usize..6, r in 0usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let r = r.min(n);
                let q = rand_mat(&mut rng, n, n).qr().q();
                let v = q.columns(0, r).into_owned();
                let p = &v * v.adjoint();
                let w = split_projection(&p, &Tolerance::default()).unwrap();
                prop_assert_eq!(w.ncols(), r);
                prop_assert!(isometry_defect(&w) < 1e-9);
                prop_assert!(frob(&(&w * w.adjoint() - &p)) < 1e-9);
            }

            #[test]
            fn deterministic(seed in 0u64..10_000) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let b = rand_mat(&mut rng, 3, 3);
                let m = b.adjoint() * &b;
                let tol = Tolerance::default();
                prop_assert_eq!(hermitian_sqrt(&m, &tol).unwrap(), hermitian_sqrt(&m, &tol).unwrap());
            }
        }
    }
}
