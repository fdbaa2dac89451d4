use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::blade::{self, Blade};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, C64};

/// An element of `Ω•(M_N)`: a finite sum `Σ_I h^I ⊗ p_I`.
///
/// The `h^I` are central, so left and right matrix multiplication act on
/// coefficients. Components that are exactly zero are not stored.
#[derive(Clone)]
pub struct DiffForm<S> {
    size: usize,
    comps: BTreeMap<Blade, Matrix<S>>,
}

/// Number of derivations `d = N² − 1` for `M_N`.
pub fn generator_count(size: usize) -> usize {
    size * size - 1
}

impl<S: Scalar> DiffForm<S> {
    pub fn zero(size: usize) -> Self {
        DiffForm {
            size,
            comps: BTreeMap::new(),
        }
    }

    /// A grade-0 form.
    pub fn function(p: Matrix<S>) -> Self {
        let mut f = Self::zero(p.size());
        f.add_term(0, p);
        f
    }

    /// `h^I ⊗ p`.
    pub fn monomial(blade: Blade, p: Matrix<S>) -> Self {
        let mut f = Self::zero(p.size());
        assert!(
            blade <= blade::top(f.dim()),
            "blade {blade:#b} exceeds {} generators",
            f.dim()
        );
        f.add_term(blade, p);
        f
    }

    /// `Σ_j h^j ⊗ p_j` from one coefficient per generator.
    pub fn one_form(coeffs: &[Matrix<S>]) -> Result<Self> {
        let size = coeffs
            .first()
            .map(Matrix::size)
            .ok_or_else(|| Error::Dimension("empty coefficient list".into()))?;
        let f = Self::zero(size);
        if coeffs.len() != f.dim() {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                f.dim()
            )));
        }
        Self::from_terms(size, coeffs.iter().enumerate().map(|(j, p)| (1 << j, p.clone())))
    }

    /// Sums the given terms, validating sizes and blade ranges.
    pub fn from_terms(size: usize, terms: impl IntoIterator<Item = (Blade, Matrix<S>)>) -> Result<Self> {
        if size < 2 {
            return Err(Error::Dimension(format!("algebra size {size} < 2")));
        }
        let mut f = Self::zero(size);
        if f.dim() > blade::MAX_GENERATORS {
            return Err(Error::Unsupported(format!("{} generators", f.dim())));
        }
        for (b, p) in terms {
            p.check_size(size)?;
            if b > blade::top(f.dim()) {
                return Err(Error::Grade(format!(
                    "monomial {b:#b} has an index above {}",
                    f.dim()
                )));
            }
            f.add_term(b, p);
        }
        Ok(f)
    }

    /// Algebra size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of generators `d`.
    pub fn dim(&self) -> usize {
        generator_count(self.size)
    }

    /// Adds `h^I ⊗ p` in place.
    pub fn add_term(&mut self, blade: Blade, p: Matrix<S>) {
        assert_eq!(p.size(), self.size, "matrix size mismatch");
        let sum = match self.comps.remove(&blade) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.comps.insert(blade, sum);
        }
    }

    pub fn get(&self, blade: Blade) -> Option<&Matrix<S>> {
        self.comps.get(&blade)
    }

    /// Coefficient of `h^I`, zero when absent.
    pub fn coeff(&self, blade: Blade) -> Matrix<S> {
        self.comps
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Matrix<S>)> {
        self.comps.iter().map(|(b, p)| (*b, p))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The grade-`k` part.
    pub fn part(&self, k: usize) -> Self {
        DiffForm {
            size: self.size,
            comps: self
                .comps
                .iter()
                .filter(|(b, _)| blade::grade(**b) == k)
                .map(|(b, p)| (*b, p.clone()))
                .collect(),
        }
    }

    /// Grades with a nonzero component, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.comps.keys().map(|b| blade::grade(*b)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// `true` if every nonzero component has grade `k` (vacuous for zero).
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.comps.keys().all(|b| blade::grade(*b) == k)
    }

    pub fn check_grade(&self, k: usize) -> Result<()> {
        if self.is_homogeneous(k) {
            Ok(())
        } else {
            Err(Error::Grade(format!(
                "expected a grade-{k} form, found grades {:?}",
                self.grades()
            )))
        }
    }

    pub fn check_size(&self, size: usize) -> Result<()> {
        if self.size != size {
            return Err(Error::Dimension(format!(
                "form over M_{}, expected M_{}",
                self.size, size
            )));
        }
        Ok(())
    }

    /// Applies `f` to every coefficient, keeping the blade.
    pub fn map(&self, mut f: impl FnMut(Blade, &Matrix<S>) -> Matrix<S>) -> Self {
        let mut out = Self::zero(self.size);
        for (b, p) in &self.comps {
            out.add_term(*b, f(*b, p));
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|_, p| p.scale(s))
    }

    /// `p · μ`.
    pub fn left_mul(&self, p: &Matrix<S>) -> Self {
        self.map(|_, q| p * q)
    }

    /// `μ · p`.
    pub fn right_mul(&self, p: &Matrix<S>) -> Self {
        self.map(|_, q| q * p)
    }

    /// The graded product `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        other.check_size(self.size)?;
        let mut out = Self::zero(self.size);
        for (a, p) in &self.comps {
            for (b, q) in &other.comps {
                if let Some(sign) = blade::wedge_sign(*a, *b) {
                    let pq = p * q;
                    out.add_term(a | b, if sign > 0 { pq } else { -pq });
                }
            }
        }
        Ok(out)
    }

    pub fn to_c64(&self) -> DiffForm<C64> {
        DiffForm {
            size: self.size,
            comps: self.comps.iter().map(|(b, p)| (*b, p.to_c64())).collect(),
        }
    }

    /// Squared Frobenius norm of all coefficients together.
    pub fn frobenius_sqr(&self) -> f64 {
        self.comps.values().map(Matrix::frobenius_sqr).sum()
    }
}

impl DiffForm<C64> {
    /// Largest entrywise modulus of `self − other` over all components.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let diff = self - other;
        diff.comps
            .values()
            .map(|p| p.max_abs_diff(&Matrix::zeros(p.size())))
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&DiffForm::zero(self.size))
    }

    /// Drops coefficients whose entries are all below `eps` in modulus.
    pub fn chop(&self, eps: f64) -> Self {
        DiffForm {
            size: self.size,
            comps: self
                .comps
                .iter()
                .filter(|(_, p)| p.entries().iter().any(|e| e.norm() > eps))
                .map(|(b, p)| (*b, p.clone()))
                .collect(),
        }
    }
}

impl<S: PartialEq> PartialEq for DiffForm<S> {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.comps == other.comps
    }
}

impl<S: fmt::Debug> fmt::Debug for DiffForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = generator_count(self.size);
        let mut m = f.debug_map();
        for (b, p) in &self.comps {
            m.entry(&format!("h[{}]", blade::label(*b, dim)), p);
        }
        m.finish()
    }
}

impl<S: Scalar> Add for &DiffForm<S> {
    type Output = DiffForm<S>;
    fn add(self, rhs: &DiffForm<S>) -> DiffForm<S> {
        assert_eq!(self.size, rhs.size, "form size mismatch");
        let mut out = self.clone();
        for (b, p) in &rhs.comps {
            out.add_term(*b, p.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &DiffForm<S> {
    type Output = DiffForm<S>;
    fn sub(self, rhs: &DiffForm<S>) -> DiffForm<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &DiffForm<S> {
    type Output = DiffForm<S>;
    fn neg(self) -> DiffForm<S> {
        self.map(|_, p| -p)
    }
}

impl<S: Scalar> Add for DiffForm<S> {
    type Output = DiffForm<S>;
    fn add(self, rhs: DiffForm<S>) -> DiffForm<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for DiffForm<S> {
    type Output = DiffForm<S>;
    fn sub(self, rhs: DiffForm<S>) -> DiffForm<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for DiffForm<S> {
    type Output = DiffForm<S>;
    fn neg(self) -> DiffForm<S> {
        -&self
    }
}
