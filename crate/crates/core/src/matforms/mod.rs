//! The derivation-based differential calculus on `M_N(ℂ)`.
//!
//! Forms are sums `Σ_I h^I ⊗ p_I` where `h¹, …, h^d` are the duals of the
//! derivations `X_k = i[S_k, −]`. The differential is the
//! Chevalley–Eilenberg differential of the Lie algebra spanned by the `S_k`
//! under the bracket `i[−,−]`, with values in `M_N`.

pub mod blade;
mod form;

pub use blade::Blade;
pub use form::{generator_count, DiffForm};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// How `∗` acts on a positive-grade monomial `h^I ⊗ p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarRule {
    /// `(h^I p)* = h^I p*` in every grade.
    Uniform,
    /// `(h^I p)* = (−1)^{k(k−1)/2} h^I p*`, the reversal sign.
    Reversal,
}

/// The sign choices that the calculus leaves open, kept as data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConventionLedger {
    pub id: &'static str,
    /// `dh^c = dh_sign · (−Σ_{a<b} f_ab^c h^{ab})` where `i[S_a,S_b] = Σ_c f_ab^c S_c`.
    pub dh_sign: i32,
    pub star: StarRule,
}

impl ConventionLedger {
    /// Alternation wedge, `dh^c = −Σ_{a<b} f_ab^c h^{ab}`, generators ∗-fixed.
    pub const STANDARD: ConventionLedger = ConventionLedger {
        id: "alt-wedge/dh-minus-f/star-uniform",
        dh_sign: 1,
        star: StarRule::Uniform,
    };

    /// Every combination of the two binary choices, standard first.
    pub fn all() -> [ConventionLedger; 4] {
        [
            Self::STANDARD,
            ConventionLedger {
                id: "alt-wedge/dh-plus-f/star-uniform",
                dh_sign: -1,
                star: StarRule::Uniform,
            },
            ConventionLedger {
                id: "alt-wedge/dh-minus-f/star-reversal",
                dh_sign: 1,
                star: StarRule::Reversal,
            },
            ConventionLedger {
                id: "alt-wedge/dh-plus-f/star-reversal",
                dh_sign: -1,
                star: StarRule::Reversal,
            },
        ]
    }

    fn star_sign(&self, grade: usize) -> bool {
        match self.star {
            StarRule::Uniform => true,
            StarRule::Reversal => (grade * grade.saturating_sub(1) / 2).is_multiple_of(2),
        }
    }
}

impl Default for ConventionLedger {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Traceless hermitian generators `S_k` with `tr(S_a S_b) = δ_ab / 2`.
#[derive(Clone, Debug)]
pub struct DerivationBasis<S> {
    generators: Vec<Matrix<S>>,
    /// `f[(a·d + b)·d + c] = f_ab^c`.
    structure: Vec<S>,
}

impl<S: Scalar> DerivationBasis<S> {
    /// Generalized Gell-Mann matrices divided by two. For `N = 2` these are
    /// `σ₁/2, σ₂/2, σ₃/2`.
    ///
    /// Ordered block by block: for each column `k = 2..N`, the symmetric and
    /// antisymmetric off-diagonal pair for every row `j < k`, then the
    /// diagonal generator of that block. Exact scalars fail for `N ≥ 3`
    /// where the diagonal normalization is irrational.
    pub fn standard(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::Dimension(format!("algebra size {size} < 2")));
        }
        if generator_count(size) > blade::MAX_GENERATORS {
            return Err(Error::Unsupported(format!("algebra size {size} is too large")));
        }
        let half = S::ratio(1, 2);
        let mut gens = Vec::with_capacity(generator_count(size));
        for k in 1..size {
            for j in 0..k {
                let mut sym = Matrix::zeros(size);
                sym.set(j, k, half.clone());
                sym.set(k, j, half.clone());
                gens.push(sym);
                let mut anti = Matrix::zeros(size);
                anti.set(j, k, -(S::i() * half.clone()));
                anti.set(k, j, S::i() * half.clone());
                gens.push(anti);
            }
            let l = k as i64;
            let c = S::sqrt_ratio(1, 2 * l * (l + 1)).ok_or_else(|| {
                Error::Unsupported(format!(
                    "the diagonal generator for N = {size} is irrational; exact scalars only support N = 2"
                ))
            })?;
            let mut diag = Matrix::zeros(size);
            for i in 0..k {
                diag.set(i, i, c.clone());
            }
            diag.set(k, k, c * S::from_int(-l));
            gens.push(diag);
        }
        let d = gens.len();
        let two = S::from_int(2);
        let mut structure = Vec::with_capacity(d * d * d);
        for a in 0..d {
            for b in 0..d {
                let br = gens[a].commutator(&gens[b]).scale(&S::i());
                for gc in &gens {
                    structure.push(two.clone() * (&br * gc).trace());
                }
            }
        }
        Ok(DerivationBasis {
            generators: gens,
            structure,
        })
    }

    pub fn size(&self) -> usize {
        self.generators[0].size()
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Matrix<S>] {
        &self.generators
    }

    /// `f_ab^c` with `i[S_a, S_b] = Σ_c f_ab^c S_c` (zero-based indices).
    pub fn structure(&self, a: usize, b: usize, c: usize) -> &S {
        let d = self.dim();
        &self.structure[(a * d + b) * d + c]
    }
}

/// `Ω•(M_N)` with its differential and ∗-involution.
#[derive(Clone, Debug)]
pub struct Calculus<S> {
    basis: DerivationBasis<S>,
    ledger: ConventionLedger,
    /// `dh^c` as a list of `(h^{ab}, coefficient)`.
    dh: Vec<Vec<(Blade, S)>>,
}

impl<S: Scalar> Calculus<S> {
    pub fn new(size: usize) -> Result<Self> {
        Self::with_ledger(size, ConventionLedger::STANDARD)
    }

    pub fn with_ledger(size: usize, ledger: ConventionLedger) -> Result<Self> {
        let basis = DerivationBasis::standard(size)?;
        let d = basis.dim();
        let sign = S::from_int(-ledger.dh_sign as i64);
        let dh = (0..d)
            .map(|c| {
                let mut terms = Vec::new();
                for a in 0..d {
                    for b in a + 1..d {
                        let f: &S = basis.structure(a, b, c);
                        if !f.is_zero() {
                            terms.push((1u64 << a | 1u64 << b, sign.clone() * f.clone()));
                        }
                    }
                }
                terms
            })
            .collect();
        Ok(Calculus { basis, ledger, dh })
    }

    pub fn size(&self) -> usize {
        self.basis.size()
    }

    /// Number of generators `d = N² − 1`, also the top grade.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &DerivationBasis<S> {
        &self.basis
    }

    pub fn ledger(&self) -> &ConventionLedger {
        &self.ledger
    }

    /// `S_k`, zero-based.
    pub fn generator(&self, k: usize) -> &Matrix<S> {
        &self.basis.generators[k]
    }

    /// `X_k(p) = i[S_k, p]`.
    pub fn derivation(&self, k: usize, p: &Matrix<S>) -> Matrix<S> {
        self.basis.generators[k].commutator(p).scale(&S::i())
    }

    pub fn zero(&self) -> DiffForm<S> {
        DiffForm::zero(self.size())
    }

    /// The unit `𝟙 = Id` as a grade-0 form.
    pub fn one(&self) -> DiffForm<S> {
        DiffForm::function(Matrix::identity(self.size()))
    }

    /// `h^{j+1} ⊗ Id`.
    pub fn h(&self, j: usize) -> DiffForm<S> {
        DiffForm::monomial(1 << j, Matrix::identity(self.size()))
    }

    /// `dvol = h^{1…d} ⊗ Id`.
    pub fn volume(&self) -> DiffForm<S> {
        DiffForm::monomial(blade::top(self.dim()), Matrix::identity(self.size()))
    }

    /// `dh^I` for a single monomial.
    pub fn d_blade(&self, b: Blade) -> Vec<(Blade, S)> {
        let mut out: Vec<(Blade, S)> = Vec::new();
        let idx = blade::indices(b);
        for (pos, &c) in idx.iter().enumerate() {
            let lower = b & ((1u64 << c) - 1);
            let upper = b & !((1u64 << (c + 1)) - 1);
            for (ab, f) in &self.dh[c] {
                let Some(s1) = blade::wedge_sign(lower, *ab) else {
                    continue;
                };
                let Some(s2) = blade::wedge_sign(lower | ab, upper) else {
                    continue;
                };
                let sign = s1 * s2 * if pos % 2 == 0 { 1 } else { -1 };
                let coef = if sign > 0 { f.clone() } else { -f.clone() };
                let target = lower | ab | upper;
                match out.iter_mut().find(|(t, _)| *t == target) {
                    Some(entry) => entry.1 += coef,
                    None => out.push((target, coef)),
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// The differential `d(h^I p) = (dh^I) p + (−1)^{|I|} h^I ∧ dp`,
    /// with `dp = Σ_k h^k X_k(p)`.
    pub fn differential(&self, a: &DiffForm<S>) -> DiffForm<S> {
        assert_eq!(a.size(), self.size(), "form size does not match the calculus");
        let mut out = self.zero();
        for (b, p) in a.terms() {
            for (t, f) in self.d_blade(b) {
                out.add_term(t, p.scale(&f));
            }
            let parity = blade::grade(b).is_multiple_of(2);
            for k in 0..self.dim() {
                if let Some(s) = blade::wedge_sign(b, 1 << k) {
                    let x = self.derivation(k, p);
                    out.add_term(b | 1 << k, if (s > 0) == parity { x } else { -x });
                }
            }
        }
        out
    }

    /// The antilinear involution: conjugate transpose of every coefficient,
    /// with the sign given by the ledger's [`StarRule`].
    pub fn star(&self, a: &DiffForm<S>) -> DiffForm<S> {
        a.map(|b, p| {
            let q = p.adjoint();
            if self.ledger.star_sign(blade::grade(b)) {
                q
            } else {
                -q
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;
    use crate::scalar::{GaussRat, C64};

    fn calc() -> Calculus<GaussRat> {
        Calculus::new(2).unwrap()
    }

    #[test]
    fn n2_generators_are_half_pauli() {
        let c = calc();
        let half = GaussRat::ratio(1, 2);
        for (k, s) in pauli::<GaussRat>().iter().enumerate() {
            assert_eq!(*c.generator(k), s.scale(&half));
        }
    }

    #[test]
    fn n2_structure_constants_are_minus_epsilon() {
        let c = calc();
        let b = c.basis();
        assert_eq!(*b.structure(0, 1, 2), GaussRat::from_int(-1));
        assert_eq!(*b.structure(1, 0, 2), GaussRat::from_int(1));
        assert_eq!(*b.structure(1, 2, 0), GaussRat::from_int(-1));
        assert_eq!(*b.structure(0, 2, 1), GaussRat::from_int(1));
        assert!(b.structure(0, 0, 1).is_zero());
    }

    #[test]
    fn generators_are_orthonormal_for_n3() {
        let b = DerivationBasis::<C64>::standard(3).unwrap();
        assert_eq!(b.dim(), 8);
        for (i, x) in b.generators().iter().enumerate() {
            assert!(x.trace().norm() < 1e-15);
            assert!(x.max_abs_diff(&x.adjoint()) < 1e-15);
            for (j, y) in b.generators().iter().enumerate() {
                let t = (x * y).trace();
                let expect = if i == j { 0.5 } else { 0.0 };
                assert!((t - C64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_mode_rejects_n3() {
        assert!(matches!(
            Calculus::<GaussRat>::new(3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn dh_for_n2() {
        let c = calc();
        let one = GaussRat::one();
        assert_eq!(c.d_blade(0b001), vec![(0b110, one.clone())]);
        assert_eq!(c.d_blade(0b010), vec![(0b101, -one.clone())]);
        assert_eq!(c.d_blade(0b100), vec![(0b011, one)]);
    }

    #[test]
    fn derivations_kill_the_unit() {
        let c = calc();
        assert!(c.differential(&c.one()).is_zero());
    }

    #[test]
    fn d_of_s1() {
        let c = calc();
        let s = |k: usize| c.generator(k).clone();
        let got = c.differential(&DiffForm::function(s(0)));
        let want = &DiffForm::monomial(0b010, s(2)) - &DiffForm::monomial(0b100, s(1));
        assert_eq!(got, want);
    }

    #[test]
    fn d_of_h1_is_h23() {
        let c = calc();
        assert_eq!(
            c.differential(&c.h(0)),
            DiffForm::monomial(0b110, Matrix::identity(2))
        );
    }

    #[test]
    fn generators_are_star_fixed() {
        let c = calc();
        let a = DiffForm::monomial(0b001, c.generator(0).clone());
        assert_eq!(c.star(&a), a);
    }
}
