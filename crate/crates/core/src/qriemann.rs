//! Quantum Riemannian structure on `Ω•(M_N)`: volume form, metrics,
//! integral, Hodge stars, codifferentials and Laplace–de Rham operators.
//!
//! The metric makes the monomials `h^I` orthonormal. Its left version is
//! `⟨h^I p̂, h^J p⟩_L = δ_IJ p̂ p*` and the right one is
//! `⟨h^I p̂, h^J p⟩_R = δ_IJ p̂* p`. The integral is `∫ p·dvol = tr(p)/N`.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matforms::blade::{self, Blade};
use crate::matforms::{Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl<S: Scalar> Calculus<S> {
    /// The normalized trace `tr(p)/N`.
    pub fn state(&self, p: &Matrix<S>) -> S {
        p.trace() * S::ratio(1, self.size() as i64)
    }

    /// `∫ p·dvol = s(p)`. Only top-grade forms can be integrated.
    pub fn integral(&self, a: &DiffForm<S>) -> Result<S> {
        a.check_grade(self.dim())?;
        Ok(self.state(&a.coeff(blade::top(self.dim()))))
    }

    /// The `M_N`-valued metric, summed over all grades.
    pub fn metric(&self, a: &DiffForm<S>, b: &DiffForm<S>, side: Side) -> Matrix<S> {
        let mut out = Matrix::zeros(self.size());
        for (i, p) in a.terms() {
            if let Some(q) = b.get(i) {
                let term = match side {
                    Side::Left => p * &q.adjoint(),
                    Side::Right => &p.adjoint() * q,
                };
                out = &out + &term;
            }
        }
        out
    }

    /// `⟨a|b⟩ = ∫⟨a, b⟩ dvol`. Linear in `a` on the left side, in `b` on the right.
    pub fn hodge_inner(&self, a: &DiffForm<S>, b: &DiffForm<S>, side: Side) -> S {
        self.state(&self.metric(a, b, side))
    }

    fn hodge_left(&self, a: &DiffForm<S>, inverse: bool) -> DiffForm<S> {
        let d = self.dim();
        let mut out = self.zero();
        for (b, p) in a.terms() {
            let k = blade::grade(b);
            let mut sign = blade::complement_sign(b, d);
            if inverse && (k * (d - k)) % 2 == 1 {
                sign = -sign;
            }
            let q = p.adjoint();
            out.add_term(blade::top(d) & !b, if sign > 0 { q } else { -q });
        }
        out
    }

    /// The antilinear Hodge star. `⋆_L(h^I p) = sgn(I, Iᶜ) h^{Iᶜ} p*` and
    /// `⋆_R = ∗ ∘ ⋆_L ∘ ∗`.
    pub fn hodge(&self, a: &DiffForm<S>, side: Side) -> DiffForm<S> {
        match side {
            Side::Left => self.hodge_left(a, false),
            Side::Right => self.star(&self.hodge_left(&self.star(a), false)),
        }
    }

    /// Inverse of [`Calculus::hodge`]; on grade `j` it is `(−1)^{j(d−j)} ⋆`.
    pub fn hodge_inv(&self, a: &DiffForm<S>, side: Side) -> DiffForm<S> {
        match side {
            Side::Left => self.hodge_left(a, true),
            Side::Right => self.star(&self.hodge_left(&self.star(a), true)),
        }
    }

    /// `d^{⋆L} = (−1)^{k+1} ⋆_L⁻¹ d ⋆_L` on grade `k+1`, zero on functions;
    /// `d^{⋆R} = ∗ d^{⋆L} ∗`.
    pub fn codifferential(&self, a: &DiffForm<S>, side: Side) -> DiffForm<S> {
        if side == Side::Right {
            return self.star(&self.codifferential(&self.star(a), Side::Left));
        }
        let mut out = self.zero();
        for j in a.grades() {
            if j == 0 {
                continue;
            }
            let x = self.hodge_inv(
                &self.differential(&self.hodge(&a.part(j), Side::Left)),
                Side::Left,
            );
            out = if j % 2 == 0 { &out + &x } else { &out - &x };
        }
        out
    }

    /// `Δ = d d^⋆ + d^⋆ d`.
    pub fn laplacian(&self, a: &DiffForm<S>, side: Side) -> DiffForm<S> {
        let x = self.differential(&self.codifferential(a, side));
        let y = self.codifferential(&self.differential(a), side);
        &x + &y
    }

    /// Basis of grade-`k` forms: `h^I ⊗ E_rc` with `I` ascending, then `(r, c)` row-major.
    pub fn grade_basis(&self, k: usize) -> Vec<DiffForm<S>> {
        let n = self.size();
        let mut out = Vec::new();
        for b in blade::of_grade(self.dim(), k) {
            for r in 0..n {
                for c in 0..n {
                    out.push(DiffForm::monomial(b, Matrix::unit(n, r, c)));
                }
            }
        }
        out
    }

    /// Coordinates of the grade-`k` part of `a` in [`Calculus::grade_basis`].
    pub fn coordinates(&self, a: &DiffForm<S>, k: usize) -> Vec<S> {
        let blades: Vec<Blade> = blade::of_grade(self.dim(), k);
        let mut out = Vec::with_capacity(blades.len() * self.size() * self.size());
        for b in blades {
            out.extend(a.coeff(b).entries().iter().cloned());
        }
        out
    }
}

impl Calculus<C64> {
    /// Operator matrix of `Δ` on grade `k` and the Gram matrix of the Hodge
    /// inner product, both in [`Calculus::grade_basis`].
    ///
    /// The Gram matrix is taken linear in the second slot, so `G·Δ` is
    /// hermitian exactly when `Δ` is symmetric.
    pub fn laplacian_matrices(&self, k: usize, side: Side) -> (DMatrix<C64>, DMatrix<C64>) {
        let basis = self.grade_basis(k);
        let m = basis.len();
        let mut op = DMatrix::zeros(m, m);
        let mut gram = DMatrix::zeros(m, m);
        for (j, e) in basis.iter().enumerate() {
            let col = self.coordinates(&self.laplacian(e, side), k);
            for (i, v) in col.into_iter().enumerate() {
                op[(i, j)] = v;
            }
            for (i, f) in basis.iter().enumerate() {
                gram[(i, j)] = self.sesquilinear(f, e, side);
            }
        }
        (op, gram)
    }

    /// Hodge inner product arranged to be antilinear in `a`, linear in `b`.
    fn sesquilinear(&self, a: &DiffForm<C64>, b: &DiffForm<C64>, side: Side) -> C64 {
        match side {
            Side::Left => self.hodge_inner(b, a, side),
            Side::Right => self.hodge_inner(a, b, side),
        }
    }

    /// `G·Δ`, hermitian iff `Δ` is symmetric for the Hodge inner product.
    pub fn laplacian_gram(&self, k: usize, side: Side) -> DMatrix<C64> {
        let (op, gram) = self.laplacian_matrices(k, side);
        gram * op
    }

    /// Largest entry of `G·Δ − (G·Δ)ᴴ`.
    pub fn laplacian_hermiticity_defect(&self, k: usize, side: Side) -> f64 {
        let h = self.laplacian_gram(k, side);
        (&h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Ascending eigenvalues of `Δ` on grade-`k` forms.
    pub fn spectrum(&self, k: usize, side: Side) -> Result<Vec<f64>> {
        if k > self.dim() {
            return Err(Error::Grade(format!(
                "grade {k} exceeds the top grade {}",
                self.dim()
            )));
        }
        let (op, gram) = self.laplacian_matrices(k, side);
        let h = &gram * &op;
        let chol = gram
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Domain("Gram matrix is not positive definite".into()))?;
        let l_inv = chol
            .l()
            .try_inverse()
            .ok_or_else(|| Error::Domain("singular Gram factor".into()))?;
        let mut reduced = &l_inv * h * l_inv.adjoint();
        // symmetrize away rounding before the hermitian solver
        reduced = (&reduced + reduced.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(reduced);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("Laplacian eigenvalue".into()));
        }
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }

    /// Spectra of every grade `0..=d`, computed in parallel.
    pub fn spectra(&self, side: Side) -> Result<Vec<Vec<f64>>> {
        (0..=self.dim())
            .into_par_iter()
            .map(|k| self.spectrum(k, side))
            .collect()
    }
}
