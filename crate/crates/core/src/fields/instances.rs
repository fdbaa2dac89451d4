//! Closed-form instances on `M₂`: the generator connection `A = Σ_j h^j S_j`
//! and the two coupled triplets built on it and on `ω^triv`.

use super::{FieldConfiguration, PolynomialPotential};
use crate::error::Result;
use crate::matforms::{Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::qbundle::GaugeConnection;
use crate::scalar::Scalar;

/// `Σ_j h^j ⊗ S_j`.
pub fn generator_connection<S: Scalar>(calc: &Calculus<S>) -> GaugeConnection<S> {
    let coeffs: Vec<Matrix<S>> = (0..calc.dim()).map(|k| calc.generator(k).clone()).collect();
    GaugeConnection::new(DiffForm::one_form(&coeffs).expect("one coefficient per generator"))
        .expect("grade one by construction")
}

/// `Σ_k S_k`.
pub fn generator_sum<S: Scalar>(calc: &Calculus<S>) -> Matrix<S> {
    (0..calc.dim()).fold(Matrix::zeros(calc.size()), |acc, k| &acc + calc.generator(k))
}

/// `ω^triv`, `T₁ = (ΣS_k)⊗z`, `T₂ = z⁻¹⊗(ΣS_k)`, `V(q) = 2q`, charge 1.
pub fn triplet_trivial<S: Scalar>(calc: &Calculus<S>) -> Result<FieldConfiguration<S>> {
    let p = generator_sum(calc);
    FieldConfiguration::new(
        GaugeConnection::trivial(calc.size()),
        1,
        p.clone(),
        p,
        PolynomialPotential::new(vec![0.0, 2.0])?,
    )
}

/// `A = Σ_j h^j S_j`, `T₁ = √3 T¹`, `T₂ = T⁻¹`, `V(q) = −¾q`, charge 1.
/// Needs a scalar type containing `√3`.
pub fn triplet_generator<S: Scalar>(calc: &Calculus<S>) -> Result<FieldConfiguration<S>> {
    let n = calc.size();
    FieldConfiguration::new(
        generator_connection(calc),
        1,
        Matrix::scalar(n, S::from_f64(3f64.sqrt())),
        Matrix::identity(n),
        PolynomialPotential::new(vec![0.0, -0.75])?,
    )
}
