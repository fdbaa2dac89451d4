//! Actions and field equations for Yang–Mills, scalar matter and the
//! coupled theory on the trivial `U(1)` bundle.
//!
//! A [`FieldConfiguration`] holds `(ω, T₁, T₂)` with `T₁ = P₁ Tⁿ` a left
//! section of charge `n` and `T₂ = T⁻ⁿ P₂` a right section of charge `−n`.
//! The coupled Lagrangian is
//!
//! ```text
//! L = −¼(⟨F|F⟩_L + ⟨F̂|F̂⟩_R) + ¼(⟨∇T₁|∇T₁⟩_L − ∫V(P₁P₁*) − ⟨∇̂T₂|∇̂T₂⟩_R + ∫V(P₂*P₂))
//! ```
//!
//! with `F = dA` and `F̂ = −F*`. Residuals are normalized so that the real
//! first variation along a direction is a fixed multiple of their pairing
//! with it (see [`fd`]).

pub mod fd;
pub mod instances;
pub mod solver;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matforms::{Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::qbundle::{ChargedSection, GaugeConnection, QvbForm};
use crate::qriemann::Side;
use crate::scalar::{Scalar, C64};

/// `V(q) = Σ c_k q^k` with real coefficients, evaluated by matrix powers.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PolynomialPotential {
    coeffs: Vec<f64>,
}

impl PolynomialPotential {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("potential coefficient {c} is not finite")));
        }
        Ok(PolynomialPotential { coeffs })
    }

    pub fn zero() -> Self {
        PolynomialPotential { coeffs: Vec::new() }
    }

    /// Parses `"c0,c1,..."`. Whitespace around entries is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad potential coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn horner<S: Scalar>(cs: &[S], q: &Matrix<S>) -> Matrix<S> {
        let mut acc = Matrix::zeros(q.size());
        for c in cs.iter().rev() {
            acc = &(&acc * q) + &Matrix::scalar(q.size(), c.clone());
        }
        acc
    }

    pub fn eval<S: Scalar>(&self, q: &Matrix<S>) -> Matrix<S> {
        let cs: Vec<S> = self.coeffs.iter().map(|c| S::from_f64(*c)).collect();
        Self::horner(&cs, q)
    }

    /// The formal derivative `V′(q) = Σ k c_k q^{k−1}`.
    pub fn derivative<S: Scalar>(&self, q: &Matrix<S>) -> Matrix<S> {
        let cs: Vec<S> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| S::from_f64(*c) * S::from_int(k as i64))
            .collect();
        Self::horner(&cs, q)
    }
}

/// `(ω, T₁, T₂)` together with the potential.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldConfiguration<S> {
    pub connection: GaugeConnection<S>,
    pub left: ChargedSection<S>,
    pub right: ChargedSection<S>,
    pub potential: PolynomialPotential,
}

impl<S: Scalar> FieldConfiguration<S> {
    /// `T₁ = P₁ Tⁿ`, `T₂ = T⁻ⁿ P₂`.
    pub fn new(
        connection: GaugeConnection<S>,
        charge: i64,
        p1: Matrix<S>,
        p2: Matrix<S>,
        potential: PolynomialPotential,
    ) -> Result<Self> {
        p1.check_size(connection.size())?;
        p2.check_size(connection.size())?;
        Ok(FieldConfiguration {
            connection,
            left: ChargedSection::new(charge, Side::Left, p1),
            right: ChargedSection::new(-charge, Side::Right, p2),
            potential,
        })
    }

    /// Coefficients in the normalization `T₁ = (1/n) p₁ Tⁿ`, `T₂ = −(1/n) T⁻ⁿ p₂`.
    pub fn from_scaled(
        connection: GaugeConnection<S>,
        charge: i64,
        p1: &Matrix<S>,
        p2: &Matrix<S>,
        potential: PolynomialPotential,
    ) -> Result<Self> {
        if charge == 0 {
            return Err(Error::Domain("the scaled normalization needs n ≠ 0".into()));
        }
        let inv = S::ratio(1, charge);
        Self::new(
            connection,
            charge,
            p1.scale(&inv),
            p2.scale(&-inv),
            potential,
        )
    }

    pub fn charge(&self) -> i64 {
        self.left.charge
    }

    pub fn check(&self) -> Result<()> {
        if self.left.side != Side::Left || self.right.side != Side::Right {
            return Err(Error::Domain("sections are on the wrong sides".into()));
        }
        if self.left.charge != -self.right.charge {
            return Err(Error::Domain(format!(
                "section charges {} and {} are not opposite",
                self.left.charge, self.right.charge
            )));
        }
        Ok(())
    }

    pub fn with_connection(&self, c: GaugeConnection<S>) -> Self {
        FieldConfiguration {
            connection: c,
            ..self.clone()
        }
    }

    pub fn with_sections(&self, p1: Matrix<S>, p2: Matrix<S>) -> Self {
        let mut out = self.clone();
        out.left.coeff = p1;
        out.right.coeff = p2;
        out
    }
}

/// Left and right Yang–Mills residuals, `d^{⋆L} F` and `d^{⋆R} F̂`.
#[derive(Clone, Debug, PartialEq)]
pub struct YmResidual<S> {
    pub left: DiffForm<S>,
    pub right: DiffForm<S>,
}

impl<S: Scalar> Calculus<S> {
    /// `−¼(⟨F|F⟩_L + ⟨F̂|F̂⟩_R)`.
    pub fn ym_action(&self, c: &GaugeConnection<S>) -> S {
        let f = self.curvature(c);
        let fh = -self.star(&f);
        (self.hodge_inner(&f, &f, Side::Left) + self.hodge_inner(&fh, &fh, Side::Right))
            * S::ratio(-1, 4)
    }

    /// `¼(⟨∇T₁|∇T₁⟩_L − ∫V(⟨T₁,T₁⟩_L) − ⟨∇̂T₂|∇̂T₂⟩_R + ∫V(⟨T₂,T₂⟩_R))`.
    pub fn gsm_action(&self, cfg: &FieldConfiguration<S>) -> Result<S> {
        cfg.check()?;
        let c = &cfg.connection;
        let g1 = self.cov_derivative(c, &cfg.left)?;
        let g2 = self.cov_derivative(c, &cfg.right)?;
        let v1 = self.state(&cfg.potential.eval(&cfg.left.pairing(&cfg.left)?));
        let v2 = self.state(&cfg.potential.eval(&cfg.right.pairing(&cfg.right)?));
        Ok((self.qvb_inner(&g1, &g1)? - v1 - self.qvb_inner(&g2, &g2)? + v2) * S::ratio(1, 4))
    }

    /// The scalar-matter action of charge-0 sections; the connection drops out.
    pub fn sm_action(
        &self,
        t1: &ChargedSection<S>,
        t2: &ChargedSection<S>,
        potential: &PolynomialPotential,
    ) -> Result<S> {
        if t1.charge != 0 || t2.charge != 0 {
            return Err(Error::Domain("scalar matter sections must have charge 0".into()));
        }
        let cfg = FieldConfiguration {
            connection: GaugeConnection::trivial(self.size()),
            left: t1.clone(),
            right: t2.clone(),
            potential: potential.clone(),
        };
        self.gsm_action(&cfg)
    }

    pub fn total_action(&self, cfg: &FieldConfiguration<S>) -> Result<S> {
        Ok(self.ym_action(&cfg.connection) + self.gsm_action(cfg)?)
    }

    pub fn ym_residual(&self, c: &GaugeConnection<S>) -> YmResidual<S> {
        let f = self.curvature(c);
        YmResidual {
            left: self.codifferential(&f, Side::Left),
            right: self.codifferential(&-self.star(&f), Side::Right),
        }
    }

    /// `⟨λ|left⟩_L + ⟨λ̂|right⟩_R` with `λ̂ = −λ*`.
    pub fn ym_pairing(&self, lambda: &DiffForm<S>, r: &YmResidual<S>) -> S {
        let lh = -self.star(lambda);
        self.hodge_inner(lambda, &r.left, Side::Left) + self.hodge_inner(&lh, &r.right, Side::Right)
    }

    /// Per-section scalar-matter residuals, `d^{⋆L}dp − V′(pp*)* p` for the
    /// left sections and `d^{⋆L}d(p*) − V′(p*p) p*` for the right ones.
    pub fn sm_residuals(
        &self,
        t1: &[Matrix<S>],
        t2: &[Matrix<S>],
        potential: &PolynomialPotential,
    ) -> (Vec<Matrix<S>>, Vec<Matrix<S>>) {
        let lap = |p: &Matrix<S>| {
            self.laplacian(&DiffForm::function(p.clone()), Side::Left)
                .coeff(0)
        };
        let left = t1
            .iter()
            .map(|p| {
                let v = potential.derivative(&(p * &p.adjoint())).adjoint();
                &lap(p) - &(&v * p)
            })
            .collect();
        let right = t2
            .iter()
            .map(|p| {
                let ps = p.adjoint();
                let v = potential.derivative(&(&ps * p));
                &lap(&ps) - &(&v * &ps)
            })
            .collect();
        (left, right)
    }

    /// The coupled connection equation in the `P` normalization,
    /// `−n P₁*dP₁ + n P₂dP₂* + n²P₁*P₁A − n²P₂P₂*A − 2d^{⋆L}dA`.
    ///
    /// With `p₁ = nP₁` and `p₂ = −nP₂` this is
    /// `−(1/n)(p₁*dp₁ − p₂dp₂*) + p₁*p₁A − p₂p₂*A − 2d^{⋆L}dA`. For `n = 0`
    /// it is `−2 d^{⋆L}dA`.
    pub fn ymsm_connection_residual(&self, cfg: &FieldConfiguration<S>) -> Result<DiffForm<S>> {
        cfg.check()?;
        let n = S::from_int(cfg.charge());
        let n2 = n.clone() * n.clone();
        let a = cfg.connection.potential();
        let p1 = &cfg.left.coeff;
        let p2 = &cfg.right.coeff;
        let dp1 = self.differential(&DiffForm::function(p1.clone()));
        let dp2s = self.differential(&DiffForm::function(p2.adjoint()));
        let kinetic = &dp2s.left_mul(p2) - &dp1.left_mul(&p1.adjoint());
        let mass = &a.left_mul(&(&p1.adjoint() * p1)) - &a.left_mul(&(p2 * &p2.adjoint()));
        let ym = self.codifferential(&self.curvature(&cfg.connection), Side::Left);
        Ok(&(&kinetic.scale(&n) + &mass.scale(&n2)) - &ym.scale(&S::from_int(2)))
    }

    /// Section equations: `∇^⋆∇T₁ − V′(P₁P₁*)* P₁` on the left and
    /// `∇̂^⋆∇̂T₂ − P₂ V′(P₂*P₂)*` on the right, with the adjoints of
    /// [`Calculus::cov_codifferential`].
    pub fn ymsm_section_residuals(
        &self,
        cfg: &FieldConfiguration<S>,
    ) -> Result<(QvbForm<S>, QvbForm<S>)> {
        self.section_residuals_with(cfg, |c, psi| self.cov_codifferential(c, psi))
    }

    /// As [`Calculus::ymsm_section_residuals`] but with the star-conjugated
    /// derivative `(−1)^{k+1} ⋆ℓ⁻¹ d^∇ ⋆ℓ` in place of the adjoint. The two
    /// agree for real connections.
    pub fn ymsm_section_residuals_formula(
        &self,
        cfg: &FieldConfiguration<S>,
    ) -> Result<(QvbForm<S>, QvbForm<S>)> {
        self.section_residuals_with(cfg, |c, psi| self.cov_codifferential_formula(c, psi))
    }

    fn section_residuals_with(
        &self,
        cfg: &FieldConfiguration<S>,
        adjoint: impl Fn(&GaugeConnection<S>, &QvbForm<S>) -> Result<QvbForm<S>>,
    ) -> Result<(QvbForm<S>, QvbForm<S>)> {
        cfg.check()?;
        let c = &cfg.connection;
        let p1 = &cfg.left.coeff;
        let p2 = &cfg.right.coeff;
        let box1 = adjoint(c, &self.cov_derivative(c, &cfg.left)?)?;
        let box2 = adjoint(c, &self.cov_derivative(c, &cfg.right)?)?;
        let v1 = &cfg.potential.derivative(&(p1 * &p1.adjoint())).adjoint() * p1;
        let v2 = p2 * &cfg.potential.derivative(&(&p2.adjoint() * p2)).adjoint();
        let r1 = box1.add(&QvbForm::new(cfg.left.charge, Side::Left, DiffForm::function(-v1)))?;
        let r2 = box2.add(&QvbForm::new(cfg.right.charge, Side::Right, DiffForm::function(-v2)))?;
        Ok((r1, r2))
    }

    /// The expanded second-order section operators in the scaled
    /// normalization `p₁ = nP₁`, `p₂ = −nP₂`, term by term:
    ///
    /// ```text
    /// left  = (1/n)d^{⋆L}dp₁ + ⋆⁻¹(d((⋆A)p₁*)) + ⋆⁻¹(A*(⋆dp₁)) + n⋆⁻¹(A*(⋆A)p₁*)
    /// right = −(1/n)d^{⋆R}dp₂ − ⋆_R⁻¹(d(p₂*(⋆_R A*))) − ⋆_R⁻¹((⋆_R dp₂)A) + n⋆_R⁻¹(p₂*(⋆_R A*)A)
    /// ```
    ///
    /// Returned as the coefficients of `Tⁿ` and `T⁻ⁿ`. Requires `n ≠ 0`.
    pub fn ymsm_section_operators_expanded(
        &self,
        cfg: &FieldConfiguration<S>,
    ) -> Result<(Matrix<S>, Matrix<S>)> {
        cfg.check()?;
        let n = cfg.charge();
        if n == 0 {
            return Err(Error::Domain("the expanded operators need n ≠ 0".into()));
        }
        let ns = S::from_int(n);
        let inv = S::ratio(1, n);
        let a = cfg.connection.potential();
        let a_star = self.star(a);
        let p1 = cfg.left.coeff.scale(&ns);
        let p2 = cfg.right.coeff.scale(&-ns.clone());
        let func = |p: &Matrix<S>| DiffForm::function(p.clone());
        let (l, r) = (Side::Left, Side::Right);

        let dp1 = self.differential(&func(&p1));
        let t1 = self.codifferential(&dp1, l).scale(&inv);
        let t2 = self.hodge_inv(&self.differential(&self.hodge(a, l).right_mul(&p1.adjoint())), l);
        let t3 = self.hodge_inv(&a_star.wedge(&self.hodge(&dp1, l))?, l);
        let t4 = self
            .hodge_inv(&a_star.wedge(&self.hodge(a, l))?.right_mul(&p1.adjoint()), l)
            .scale(&ns);
        let left = &(&(&t1 + &t2) + &t3) + &t4;

        let dp2 = self.differential(&func(&p2));
        let u1 = self.codifferential(&dp2, r).scale(&-inv);
        let u2 = self.hodge_inv(&self.differential(&self.hodge(&a_star, r).left_mul(&p2.adjoint())), r);
        let u3 = self.hodge_inv(&self.hodge(&dp2, r).wedge(a)?, r);
        let u4 = self
            .hodge_inv(&self.hodge(&a_star, r).left_mul(&p2.adjoint()).wedge(a)?, r)
            .scale(&ns);
        let right = &(&(&u1 - &u2) - &u3) + &u4;
        Ok((left.coeff(0), right.coeff(0)))
    }

    /// `(d^{∇⋆})² F` for the adjoint (charge-0) representation.
    pub fn continuity_residual(&self, c: &GaugeConnection<S>) -> Result<DiffForm<S>> {
        let f = QvbForm::new(0, Side::Left, self.curvature(c));
        let once = self.cov_codifferential(c, &f)?;
        let twice = self.cov_codifferential(c, &once)?;
        let s = self.s_omega_adjoint(c, &once);
        Ok(&twice.form - &s.form)
    }
}

/// Hodge norm `√⟨μ|μ⟩_L` of a form.
pub fn hodge_norm(calc: &Calculus<C64>, mu: &DiffForm<C64>) -> f64 {
    calc.hodge_inner(mu, mu, Side::Left).re.max(0.0).sqrt()
}

/// Least-squares `p` with `dp ≈ A`, and the Hodge norm of `dp − A`.
pub fn reconstruct_potential(calc: &Calculus<C64>, a: &DiffForm<C64>) -> Result<(Matrix<C64>, f64)> {
    a.check_grade(1)?;
    let n = calc.size();
    let basis = calc.grade_basis(0);
    let rows = calc.dim() * n * n;
    let mut d = DMatrix::<C64>::zeros(rows, basis.len());
    for (j, e) in basis.iter().enumerate() {
        for (i, v) in calc.coordinates(&calc.differential(e), 1).into_iter().enumerate() {
            d[(i, j)] = v;
        }
    }
    let rhs = DVector::from_vec(calc.coordinates(a, 1));
    let svd = d.svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Domain(format!("least squares failed: {e}")))?;
    let p = Matrix::from_row_major(sol.iter().copied().collect())?;
    let resid = &calc.differential(&DiffForm::function(p.clone())) - a;
    Ok((p, hodge_norm(calc, &resid)))
}
