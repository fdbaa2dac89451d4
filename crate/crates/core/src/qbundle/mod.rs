//! The trivial quantum principal `U(1)`-bundle over `M_N`.
//!
//! A connection is `ω(ς) = A ⊗ 1 + 1 ⊗ ς` for a one-form `A` on the base.
//! Associated-bundle sections of charge `n` are single matrix coefficients
//! against the frame `Tⁿ(w) = w Id ⊗ zⁿ`, and bundle-valued forms are
//! identified with base forms through `μ ⊗ T ↦ μ p`.
//!
//! On a left form of degree `k` and charge `n` the exterior covariant
//! derivative is `d^∇ μ = dμ − (−1)^k n μ∧A`. Right forms use the
//! ∗-conjugate, `d^∇̂ μ = dμ + n A*∧μ`. Both are derived from the
//! total-space evaluator in [`total`].

pub mod total;

use crate::error::{Error, Result};
use crate::matforms::{Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::qriemann::Side;
use crate::scalar::Scalar;

/// A connection, stored as its gauge potential `A = A^ω(ς)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeConnection<S> {
    potential: DiffForm<S>,
}

/// A direction `λ = λ(ς)` in the affine space of connections.
pub type ConnectionDisplacement<S> = DiffForm<S>;

impl<S: Scalar> GaugeConnection<S> {
    pub fn new(potential: DiffForm<S>) -> Result<Self> {
        potential.check_grade(1)?;
        Ok(GaugeConnection { potential })
    }

    /// `ω^triv`, with `A = 0`.
    pub fn trivial(size: usize) -> Self {
        GaugeConnection {
            potential: DiffForm::zero(size),
        }
    }

    pub fn potential(&self) -> &DiffForm<S> {
        &self.potential
    }

    pub fn size(&self) -> usize {
        self.potential.size()
    }

    /// `ω + λ`.
    pub fn displaced(&self, lambda: &ConnectionDisplacement<S>) -> Result<Self> {
        lambda.check_grade(1)?;
        lambda.check_size(self.size())?;
        Ok(GaugeConnection {
            potential: &self.potential + lambda,
        })
    }

    /// Every coefficient of `A` is a multiple of the identity.
    pub fn is_regular(&self) -> bool {
        self.potential
            .terms()
            .all(|(_, p)| p.is_scalar_multiple_of_identity())
    }
}

/// A charged section: `p Tⁿ` on the left, `Tⁿ p` on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargedSection<S> {
    pub charge: i64,
    pub side: Side,
    pub coeff: Matrix<S>,
}

impl<S: Scalar> ChargedSection<S> {
    pub fn new(charge: i64, side: Side, coeff: Matrix<S>) -> Self {
        ChargedSection {
            charge,
            side,
            coeff,
        }
    }

    /// The frame `Tⁿ` itself.
    pub fn frame(charge: i64, side: Side, size: usize) -> Self {
        Self::new(charge, side, Matrix::identity(size))
    }

    /// The section as a degree-0 bundle-valued form.
    pub fn to_form(&self) -> QvbForm<S> {
        QvbForm::new(self.charge, self.side, DiffForm::function(self.coeff.clone()))
    }

    /// Base-valued pairing: `p₁ p₂*` on the left, `p₁* p₂` on the right.
    pub fn pairing(&self, other: &Self) -> Result<Matrix<S>> {
        check_compatible(self.charge, self.side, other.charge, other.side)?;
        Ok(match self.side {
            Side::Left => &self.coeff * &other.coeff.adjoint(),
            Side::Right => &self.coeff.adjoint() * &other.coeff,
        })
    }
}

/// A bundle-valued form, stored as its base-form factor.
#[derive(Clone, Debug, PartialEq)]
pub struct QvbForm<S> {
    pub charge: i64,
    pub side: Side,
    pub form: DiffForm<S>,
}

impl<S: Scalar> QvbForm<S> {
    pub fn new(charge: i64, side: Side, form: DiffForm<S>) -> Self {
        QvbForm { charge, side, form }
    }

    fn with_form(&self, form: DiffForm<S>) -> Self {
        QvbForm::new(self.charge, self.side, form)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.with_form(self.form.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self.charge, self.side, other.charge, other.side)?;
        Ok(self.with_form(&self.form + &other.form))
    }
}

fn check_compatible(n1: i64, s1: Side, n2: i64, s2: Side) -> Result<()> {
    if n1 != n2 || s1 != s2 {
        return Err(Error::Domain(format!(
            "cannot pair a charge {n1} {s1:?} form with a charge {n2} {s2:?} form"
        )));
    }
    Ok(())
}

/// `Υ(μ ⊗ T) = μ p` on the left, `Υ̃(T ⊗ μ) = p μ` on the right.
pub fn upsilon<S: Scalar>(mu: &DiffForm<S>, t: &ChargedSection<S>) -> QvbForm<S> {
    let form = match t.side {
        Side::Left => mu.right_mul(&t.coeff),
        Side::Right => mu.left_mul(&t.coeff),
    };
    QvbForm::new(t.charge, t.side, form)
}

/// Inverse of [`upsilon`]: the form factor against the frame `Tⁿ`.
pub fn upsilon_inv<S: Scalar>(psi: &QvbForm<S>) -> (DiffForm<S>, ChargedSection<S>) {
    (
        psi.form.clone(),
        ChargedSection::frame(psi.charge, psi.side, psi.form.size()),
    )
}

impl<S: Scalar> Calculus<S> {
    /// `F = dA`; the embedded differential vanishes for this bundle.
    pub fn curvature(&self, c: &GaugeConnection<S>) -> DiffForm<S> {
        self.differential(c.potential())
    }

    /// `ω̂ = ω`, which for this bundle means `A* = −A`.
    pub fn is_real(&self, c: &GaugeConnection<S>) -> bool {
        self.star(c.potential()) == -c.potential()
    }

    /// The conjugate connection `ω̂`, with potential `−A*`.
    pub fn conjugate_connection(&self, c: &GaugeConnection<S>) -> GaugeConnection<S> {
        GaugeConnection {
            potential: -self.star(c.potential()),
        }
    }

    /// `K^λ` on a bundle-valued form: `−(−1)^k n μ∧λ` on the left and
    /// `n λ*∧μ` on the right.
    pub fn displacement_k_form(
        &self,
        lambda: &ConnectionDisplacement<S>,
        psi: &QvbForm<S>,
    ) -> Result<QvbForm<S>> {
        lambda.check_grade(1)?;
        let n = S::from_int(psi.charge);
        let mut out = self.zero();
        for k in psi.form.grades() {
            let part = psi.form.part(k);
            let term = match psi.side {
                Side::Left => {
                    let x = part.wedge(lambda)?.scale(&n);
                    if k % 2 == 0 {
                        -x
                    } else {
                        x
                    }
                }
                Side::Right => self.star(lambda).wedge(&part)?.scale(&n),
            };
            out = &out + &term;
        }
        Ok(psi.with_form(out))
    }

    /// `K^λ(T) = (D^{ω+λ} − D^ω)(T)` on a section.
    pub fn displacement_k(
        &self,
        lambda: &ConnectionDisplacement<S>,
        t: &ChargedSection<S>,
    ) -> Result<QvbForm<S>> {
        self.displacement_k_form(lambda, &t.to_form())
    }

    /// The exterior covariant derivative on bundle-valued forms.
    pub fn cov_exterior(&self, c: &GaugeConnection<S>, psi: &QvbForm<S>) -> Result<QvbForm<S>> {
        psi.form.check_size(self.size())?;
        c.potential().check_size(self.size())?;
        let k = self.displacement_k_form(c.potential(), psi)?;
        Ok(psi.with_form(&self.differential(&psi.form) + &k.form))
    }

    /// `∇T` for a charged section.
    pub fn cov_derivative(&self, c: &GaugeConnection<S>, t: &ChargedSection<S>) -> Result<QvbForm<S>> {
        self.cov_exterior(c, &t.to_form())
    }

    /// Adjoint of `K^λ` for the bundle inner product.
    pub fn displacement_k_adjoint(
        &self,
        lambda: &ConnectionDisplacement<S>,
        psi: &QvbForm<S>,
    ) -> Result<QvbForm<S>> {
        lambda.check_grade(1)?;
        if psi.side == Side::Right {
            let flipped = QvbForm::new(-psi.charge, Side::Left, self.star(&psi.form));
            let out = self.displacement_k_adjoint(lambda, &flipped)?;
            return Ok(psi.with_form(self.star(&out.form)));
        }
        // adjoint of μ ↦ μ∧λ is β ↦ ⋆⁻¹(λ ∧ ⋆β)
        let n = S::from_int(psi.charge);
        let mut out = self.zero();
        for j in psi.form.grades() {
            if j == 0 {
                continue;
            }
            let star = self.hodge(&psi.form.part(j), Side::Left);
            let x = self
                .hodge_inv(&lambda.wedge(&star)?, Side::Left)
                .scale(&n);
            // μ has degree j − 1
            out = if (j - 1) % 2 == 0 { &out - &x } else { &out + &x };
        }
        Ok(psi.with_form(out))
    }

    /// The adjoint of [`Calculus::cov_exterior`] for [`Calculus::qvb_inner`].
    ///
    /// For real connections this is `(−1)^{k+1} ⋆⁻¹ d^∇ ⋆` with the linear
    /// Hodge star (see [`Calculus::cov_codifferential_formula`]). For other
    /// connections that expression is not an adjoint, so the `K^A` part is
    /// transposed directly.
    pub fn cov_codifferential(&self, c: &GaugeConnection<S>, psi: &QvbForm<S>) -> Result<QvbForm<S>> {
        let k = self.displacement_k_adjoint(c.potential(), psi)?;
        Ok(psi.with_form(&self.codifferential(&psi.form, psi.side) + &k.form))
    }

    /// `(−1)^{k+1} ⋆ℓ⁻¹ d^∇ ⋆ℓ` on degree `k+1`, with the linear star
    /// `⋆ℓ = ∗ ∘ ⋆_L`. Right forms are handled by ∗-conjugation to the left.
    pub fn cov_codifferential_formula(
        &self,
        c: &GaugeConnection<S>,
        psi: &QvbForm<S>,
    ) -> Result<QvbForm<S>> {
        if psi.side == Side::Right {
            let flipped = QvbForm::new(-psi.charge, Side::Left, self.star(&psi.form));
            let out = self.cov_codifferential_formula(c, &flipped)?;
            return Ok(psi.with_form(self.star(&out.form)));
        }
        let mut out = self.zero();
        for j in psi.form.grades() {
            if j == 0 {
                continue;
            }
            let lin = self.star(&self.hodge(&psi.form.part(j), Side::Left));
            let inner = self.cov_exterior(c, &psi.with_form(lin))?;
            let back = self.hodge_inv(&self.star(&inner.form), Side::Left);
            out = if j % 2 == 0 { &out + &back } else { &out - &back };
        }
        Ok(psi.with_form(out))
    }

    /// `□ = d^∇ d^{∇⋆} + d^{∇⋆} d^∇`.
    pub fn cov_laplacian(&self, c: &GaugeConnection<S>, psi: &QvbForm<S>) -> Result<QvbForm<S>> {
        let a = self.cov_exterior(c, &self.cov_codifferential(c, psi)?)?;
        let b = self.cov_codifferential(c, &self.cov_exterior(c, psi)?)?;
        a.add(&b)
    }

    /// `⟨ψ̂|ψ⟩` for bundle-valued forms of equal charge and side.
    pub fn qvb_inner(&self, a: &QvbForm<S>, b: &QvbForm<S>) -> Result<S> {
        check_compatible(a.charge, a.side, b.charge, b.side)?;
        Ok(self.hodge_inner(&a.form, &b.form, a.side))
    }

    /// `S^ω` for this bundle: the zero map, raising degree by one.
    pub fn s_omega(&self, _c: &GaugeConnection<S>, psi: &QvbForm<S>) -> QvbForm<S> {
        psi.with_form(self.zero())
    }

    /// The adjoint of `S^ω`, also zero.
    pub fn s_omega_adjoint(&self, _c: &GaugeConnection<S>, psi: &QvbForm<S>) -> QvbForm<S> {
        psi.with_form(self.zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    fn calc() -> Calculus<GaussRat> {
        Calculus::new(2).unwrap()
    }

    fn sum_hs(c: &Calculus<GaussRat>) -> GaugeConnection<GaussRat> {
        let gens: Vec<_> = (0..3).map(|k| c.generator(k).clone()).collect();
        GaugeConnection::new(DiffForm::one_form(&gens).unwrap()).unwrap()
    }

    #[test]
    fn regularity() {
        let c = calc();
        assert!(GaugeConnection::new(c.h(0)).unwrap().is_regular());
        assert!(GaugeConnection::<GaussRat>::trivial(2).is_regular());
        assert!(!sum_hs(&c).is_regular());
    }

    #[test]
    fn reality() {
        let c = calc();
        let ih = GaugeConnection::new(c.h(0).scale(&GaussRat::i())).unwrap();
        assert!(c.is_real(&ih));
        assert!(!c.is_real(&GaugeConnection::new(c.h(0)).unwrap()));
        assert!(c.is_real(&GaugeConnection::trivial(2)));
    }

    #[test]
    fn curvature_of_h1() {
        let c = calc();
        let f = c.curvature(&GaugeConnection::new(c.h(0)).unwrap());
        assert_eq!(f, DiffForm::monomial(0b110, Matrix::identity(2)));
    }

    #[test]
    fn unit_section_derivative_is_minus_a() {
        let c = calc();
        let a = sum_hs(&c);
        let t = ChargedSection::frame(1, Side::Left, 2);
        let got = c.cov_derivative(&a, &t).unwrap();
        assert_eq!(got.form, -a.potential());
    }

    #[test]
    fn charge_zero_ignores_the_connection() {
        let c = calc();
        let p = c.generator(0).clone();
        let t = ChargedSection::new(0, Side::Left, p.clone());
        let got = c.cov_derivative(&sum_hs(&c), &t).unwrap();
        assert_eq!(got.form, c.differential(&DiffForm::function(p)));
    }

    #[test]
    fn grade_zero_codifferential_is_zero() {
        let c = calc();
        let psi = ChargedSection::frame(2, Side::Left, 2).to_form();
        assert!(c.cov_codifferential(&sum_hs(&c), &psi).unwrap().form.is_zero());
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let c = calc();
        let a = ChargedSection::frame(1, Side::Left, 2).to_form();
        let b = ChargedSection::frame(2, Side::Left, 2).to_form();
        let r = ChargedSection::frame(1, Side::Right, 2).to_form();
        assert!(matches!(c.qvb_inner(&a, &b), Err(Error::Domain(_))));
        assert!(matches!(c.qvb_inner(&a, &r), Err(Error::Domain(_))));
        assert_eq!(c.qvb_inner(&a, &a).unwrap(), GaussRat::one());
    }

    #[test]
    fn k_of_unit_section() {
        let c = calc();
        let lam = sum_hs(&c).potential().clone();
        let t = ChargedSection::frame(1, Side::Left, 2);
        assert_eq!(c.displacement_k(&lam, &t).unwrap().form, -&lam);
        let t0 = ChargedSection::frame(0, Side::Left, 2);
        assert!(c.displacement_k(&lam, &t0).unwrap().form.is_zero());
    }

    #[test]
    fn upsilon_round_trip() {
        let c = calc();
        let psi = QvbForm::new(3, Side::Left, DiffForm::monomial(0b101, c.generator(1).clone()));
        let (mu, t) = upsilon_inv(&psi);
        assert_eq!(upsilon(&mu, &t), psi);
    }
}
