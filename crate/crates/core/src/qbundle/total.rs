//! A slow reference model of the total-space calculus `Ω•(M) ⊗ Γ^∧`.
//!
//! An element of a single charge is `β ⊗ zⁿ + ν ⊗ zⁿς`. The rules used are
//! `dzⁿ = n zⁿ ς`, `dς = 0`, `ς∧ς = 0`, `ς* = −ς`, `z* = z⁻¹`, with `ς`
//! central against functions and the graded sign rule for everything else.
//! Nothing in the fast path calls this; it exists to pin signs.

use super::GaugeConnection;
use crate::error::Result;
use crate::matforms::{Calculus, DiffForm};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TotalForm<S> {
    pub charge: i64,
    /// Coefficient of `zⁿ`.
    pub base: DiffForm<S>,
    /// Coefficient of `zⁿ ς`.
    pub vert: DiffForm<S>,
}

fn graded_sign<S: Scalar>(f: &DiffForm<S>, odd: bool) -> DiffForm<S> {
    f.map(|b, p| {
        if odd && crate::matforms::blade::grade(b) % 2 == 1 {
            -p
        } else {
            p.clone()
        }
    })
}

impl<S: Scalar> TotalForm<S> {
    /// `μ ⊗ zⁿ`.
    pub fn horizontal(charge: i64, mu: DiffForm<S>) -> Self {
        let size = mu.size();
        TotalForm {
            charge,
            base: mu,
            vert: DiffForm::zero(size),
        }
    }

    /// `ω(ς) = A ⊗ 1 + Id ⊗ ς`.
    pub fn connection(c: &GaugeConnection<S>) -> Self {
        let size = c.size();
        TotalForm {
            charge: 0,
            base: c.potential().clone(),
            vert: DiffForm::function(crate::matrix::Matrix::identity(size)),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        TotalForm {
            charge: self.charge,
            base: self.base.scale(s),
            vert: self.vert.scale(s),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.charge, other.charge, "charge mismatch");
        TotalForm {
            charge: self.charge,
            base: &self.base - &other.base,
            vert: &self.vert - &other.vert,
        }
    }

    /// Graded product; charges add.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let base = self.base.wedge(&other.base)?;
        // (α zⁿ)(δ z^m ς) = αδ z^{n+m} ς and (β zⁿ ς)(γ z^m) = (−1)^{|γ|} βγ z^{n+m} ς
        let v1 = self.base.wedge(&other.vert)?;
        let v2 = self.vert.wedge(&graded_sign(&other.base, true))?;
        Ok(TotalForm {
            charge: self.charge + other.charge,
            base,
            vert: &v1 + &v2,
        })
    }
}

impl<S: Scalar> Calculus<S> {
    /// The total-space differential.
    pub fn total_differential(&self, t: &TotalForm<S>) -> TotalForm<S> {
        let n = S::from_int(t.charge);
        // d(β zⁿ) = dβ zⁿ + (−1)^{|β|} n β zⁿ ς ; d(ν zⁿ ς) = dν zⁿ ς
        let from_base = graded_sign(&t.base, true).scale(&n);
        TotalForm {
            charge: t.charge,
            base: self.differential(&t.base),
            vert: &self.differential(&t.vert) + &from_base,
        }
    }

    /// The graded ∗ on the total space.
    pub fn total_star(&self, t: &TotalForm<S>) -> TotalForm<S> {
        // (ν ⊗ zⁿς)* = (−1)^{|ν|} ν* ⊗ (zⁿς)* and (zⁿς)* = −z^{−n}ς
        TotalForm {
            charge: -t.charge,
            base: self.star(&t.base),
            vert: -graded_sign(&self.star(&t.vert), true),
        }
    }

    /// `D^ω(φ) = dφ − (−1)^k φ⁽⁰⁾ ω(π(φ⁽¹⁾))` for a horizontal `φ = μ ⊗ zⁿ`
    /// of degree `k`, using `π(zⁿ) = nς`.
    pub fn total_cov_derivative(
        &self,
        c: &GaugeConnection<S>,
        phi: &TotalForm<S>,
    ) -> Result<TotalForm<S>> {
        let n = S::from_int(phi.charge);
        let omega = TotalForm::connection(c).scale(&n);
        let mut out = self.total_differential(phi);
        for k in phi.base.grades() {
            let part = TotalForm::horizontal(phi.charge, phi.base.part(k));
            let prod = part.product(&omega)?;
            let prod = if k % 2 == 0 { prod } else { prod.scale(&S::from_int(-1)) };
            out = out.sub(&prod);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::GaussRat;

    #[test]
    fn total_differential_squares_to_zero() {
        let c = Calculus::<GaussRat>::new(2).unwrap();
        let t = TotalForm {
            charge: 3,
            base: DiffForm::monomial(0b001, c.generator(1).clone()),
            vert: DiffForm::function(c.generator(2).clone()),
        };
        let dd = c.total_differential(&c.total_differential(&t));
        assert!(dd.base.is_zero() && dd.vert.is_zero());
    }

    #[test]
    fn covariant_derivative_is_horizontal() {
        let c = Calculus::<GaussRat>::new(2).unwrap();
        let a = GaugeConnection::new(DiffForm::monomial(0b010, c.generator(0).clone())).unwrap();
        let phi = TotalForm::horizontal(2, DiffForm::function(Matrix::identity(2)));
        let d = c.total_cov_derivative(&a, &phi).unwrap();
        assert!(d.vert.is_zero());
    }
}
