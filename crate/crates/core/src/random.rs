//! Seeded random inputs for tests, the verification suite and the solver.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::matforms::{blade, Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::scalar::{gauss, GaussRat, Scalar, C64};

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[−1, 1)`.
pub fn matrix(rng: &mut impl Rng, size: usize) -> Matrix<C64> {
    Matrix::from_fn(size, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Gaussian rationals with small numerators and denominators.
pub fn gauss_matrix(rng: &mut impl Rng, size: usize) -> Matrix<GaussRat> {
    Matrix::from_fn(size, |_, _| {
        gauss(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(1..=6))
    })
}

/// A random homogeneous form: every grade-`k` coefficient drawn by `entry`.
pub fn form_with<S: Scalar, R: Rng>(
    calc: &Calculus<S>,
    rng: &mut R,
    k: usize,
    mut entry: impl FnMut(&mut R, usize) -> Matrix<S>,
) -> DiffForm<S> {
    let mut f = calc.zero();
    for b in blade::of_grade(calc.dim(), k) {
        f.add_term(b, entry(rng, calc.size()));
    }
    f
}

pub fn form(calc: &Calculus<C64>, rng: &mut impl Rng, k: usize) -> DiffForm<C64> {
    form_with(calc, rng, k, |r, n| matrix(r, n))
}

pub fn gauss_form(calc: &Calculus<GaussRat>, rng: &mut impl Rng, k: usize) -> DiffForm<GaussRat> {
    form_with(calc, rng, k, |r, n| gauss_matrix(r, n))
}

/// A random form with every grade present.
pub fn mixed_form(calc: &Calculus<C64>, rng: &mut impl Rng) -> DiffForm<C64> {
    (0..=calc.dim()).fold(calc.zero(), |acc, k| &acc + &form(calc, rng, k))
}
