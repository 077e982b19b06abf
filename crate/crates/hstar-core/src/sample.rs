//! Seeded random data used by the samplers.

use crate::numcore::{c, CMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut SampleRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn hermitian(rng: &mut SampleRng, n: usize) -> CMatrix {
    let m = matrix(rng, n, n);
    (&m + m.adjoint()) * c(0.5)
}

pub fn vector(rng: &mut SampleRng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex(rng)).collect()
}
