//! Central-difference first variations of the actions, the independent
//! check on every analytic residual.
//!
//! For a real parameter `t` and a direction `v`, the analytic derivatives
//! are
//!
//! | action | direction | `d/dt S(x + t v)` |
//! |---|---|---|
//! | YM | `λ` | `−½ Re(⟨λ|d^{⋆L}F⟩_L + ⟨λ̂|d^{⋆R}F̂⟩_R)` |
//! | total | `λ` | `½ Re⟨λ|R_conn⟩_L` |
//! | total | `U₁` | `½ Re⟨U₁|R₁⟩_L` |
//! | total | `U₂` | `−½ Re⟨U₂|R₂⟩_R` |

use crate::error::Result;
use crate::matforms::{Calculus, DiffForm};
use crate::matrix::Matrix;
use crate::qriemann::Side;
use crate::scalar::C64;

use super::FieldConfiguration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    YangMills,
    ScalarMatter,
    Total,
}

/// A tangent direction at a configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum Variation {
    Connection(DiffForm<C64>),
    LeftSection(Matrix<C64>),
    RightSection(Matrix<C64>),
}

impl Variation {
    pub fn scale(&self, s: C64) -> Self {
        match self {
            Variation::Connection(l) => Variation::Connection(l.scale(&s)),
            Variation::LeftSection(u) => Variation::LeftSection(u.scale(&s)),
            Variation::RightSection(u) => Variation::RightSection(u.scale(&s)),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Variation::Connection(_) => "connection",
            Variation::LeftSection(_) => "left_section",
            Variation::RightSection(_) => "right_section",
        }
    }
}

/// `|a − b| / max(|a|, |b|)`, falling back to `|a − b|` when both are below `1e−9`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < 1e-9 {
        (a - b).abs()
    } else {
        (a - b).abs() / scale
    }
}

impl Calculus<C64> {
    pub fn action_value(&self, cfg: &FieldConfiguration<C64>, kind: ActionKind) -> Result<f64> {
        Ok(match kind {
            ActionKind::YangMills => self.ym_action(&cfg.connection).re,
            ActionKind::ScalarMatter => self.gsm_action(cfg)?.re,
            ActionKind::Total => self.total_action(cfg)?.re,
        })
    }

    /// `x + t v`.
    pub fn displace(
        &self,
        cfg: &FieldConfiguration<C64>,
        v: &Variation,
        t: f64,
    ) -> Result<FieldConfiguration<C64>> {
        let t = C64::new(t, 0.0);
        Ok(match v {
            Variation::Connection(l) => {
                cfg.with_connection(cfg.connection.displaced(&l.scale(&t))?)
            }
            Variation::LeftSection(u) => {
                cfg.with_sections(&cfg.left.coeff + &u.scale(&t), cfg.right.coeff.clone())
            }
            Variation::RightSection(u) => {
                cfg.with_sections(cfg.left.coeff.clone(), &cfg.right.coeff + &u.scale(&t))
            }
        })
    }

    /// `(S(x + h v) − S(x − h v)) / 2h`.
    pub fn action_gradient_fd(
        &self,
        cfg: &FieldConfiguration<C64>,
        kind: ActionKind,
        v: &Variation,
        step: f64,
    ) -> Result<f64> {
        assert!(step > 0.0, "finite-difference step must be positive");
        let plus = self.action_value(&self.displace(cfg, v, step)?, kind)?;
        let minus = self.action_value(&self.displace(cfg, v, -step)?, kind)?;
        Ok((plus - minus) / (2.0 * step))
    }

    /// The same derivative from the analytic residuals.
    pub fn action_gradient_analytic(
        &self,
        cfg: &FieldConfiguration<C64>,
        kind: ActionKind,
        v: &Variation,
    ) -> Result<f64> {
        let ym_part = |l: &DiffForm<C64>| {
            -0.5 * self.ym_pairing(l, &self.ym_residual(&cfg.connection)).re
        };
        Ok(match (kind, v) {
            (ActionKind::YangMills, Variation::Connection(l)) => ym_part(l),
            (ActionKind::YangMills, _) => 0.0,
            (_, Variation::Connection(l)) => {
                let r = self.ymsm_connection_residual(cfg)?;
                let total = 0.5 * self.hodge_inner(l, &r, Side::Left).re;
                if kind == ActionKind::Total {
                    total
                } else {
                    total - ym_part(l)
                }
            }
            (_, Variation::LeftSection(u)) => {
                let (r1, _) = self.ymsm_section_residuals(cfg)?;
                0.5 * self
                    .hodge_inner(&DiffForm::function(u.clone()), &r1.form, Side::Left)
                    .re
            }
            (_, Variation::RightSection(u)) => {
                let (_, r2) = self.ymsm_section_residuals(cfg)?;
                -0.5 * self
                    .hodge_inner(&DiffForm::function(u.clone()), &r2.form, Side::Right)
                    .re
            }
        })
    }
}
