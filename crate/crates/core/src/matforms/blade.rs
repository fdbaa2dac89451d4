//! Grassmann monomials `h^I` encoded as bitmasks over the generator indices.
//!
//! Bit `j` set means `h^{j+1}` is a factor. Factors are always taken in
//! increasing index order, so a mask names an ordered monomial without
//! ambiguity.

use crate::error::{Error, Result};

/// A basis monomial `h^{j₁…j_k}`, `j₁ < … < j_k`, as a bitmask (bit `j` is `h^{j+1}`).
pub type Blade = u64;

/// Largest number of generators a [`Blade`] can address.
pub const MAX_GENERATORS: usize = 63;

pub fn grade(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Zero-based generator indices of `b`, ascending.
pub fn indices(b: Blade) -> Vec<usize> {
    (0..64).filter(|j| b >> j & 1 == 1).collect()
}

pub fn from_indices(idx: &[usize]) -> Option<Blade> {
    let mut b = 0u64;
    for &j in idx {
        if j >= MAX_GENERATORS || b >> j & 1 == 1 {
            return None;
        }
        b |= 1 << j;
    }
    Some(b)
}

/// The top monomial `h^{1…d}`.
pub fn top(dim: usize) -> Blade {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Sign of `h^a ∧ h^b = ±h^{a∪b}`; `None` when the monomials share a factor.
///
/// The sign counts the transpositions needed to sort the concatenation,
/// i.e. pairs `(i ∈ a, j ∈ b)` with `i > j`.
pub fn wedge_sign(a: Blade, b: Blade) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of the permutation taking `(I, Iᶜ)` to `(1, …, d)`.
pub fn complement_sign(b: Blade, dim: usize) -> i32 {
    wedge_sign(b, top(dim) & !b).expect("complement is disjoint")
}

/// Every blade of the given grade over `dim` generators, ascending as integers.
pub fn of_grade(dim: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    if k > dim {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    // Gosper's hack over the k-subsets
    let mut b: u64 = (1u64 << k) - 1;
    let limit = top(dim);
    while b <= limit {
        out.push(b);
        let c = b & b.wrapping_neg();
        let r = b + c;
        if r == 0 {
            break;
        }
        b = (((r ^ b) >> 2) / c) | r;
    }
    out
}

/// One-based label: `""`, `"1"`, `"13"`. With more than nine generators the
/// indices are dot-separated (`"1.10"`).
pub fn label(b: Blade, dim: usize) -> String {
    let idx: Vec<String> = indices(b).iter().map(|j| (j + 1).to_string()).collect();
    if dim > 9 {
        idx.join(".")
    } else {
        idx.concat()
    }
}

/// Inverse of [`label`]. Indices must be strictly increasing and `≤ dim`.
pub fn parse_label(s: &str, dim: usize) -> Result<Blade> {
    let parts: Vec<&str> = if s.is_empty() {
        Vec::new()
    } else if s.contains('.') || dim > 9 {
        s.split('.').collect()
    } else {
        s.split("").filter(|c| !c.is_empty()).collect()
    };
    let mut b = 0u64;
    let mut last = 0usize;
    for p in parts {
        let j: usize = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {p:?} in blade label {s:?}")))?;
        if j == 0 || j > dim || j <= last {
            return Err(Error::Parse(format!(
                "blade label {s:?} must list strictly increasing indices in 1..={dim}"
            )));
        }
        last = j;
        b |= 1 << (j - 1);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_of_small_products() {
        assert_eq!(wedge_sign(0b001, 0b010), Some(1));
        assert_eq!(wedge_sign(0b010, 0b001), Some(-1));
        assert_eq!(wedge_sign(0b001, 0b001), None);
        // h^2 ∧ h^{13} = −h^{123}
        assert_eq!(wedge_sign(0b010, 0b101), Some(-1));
        assert_eq!(complement_sign(0b101, 3), -1);
        assert_eq!(complement_sign(0b001, 3), 1);
    }

    #[test]
    fn grade_enumeration() {
        assert_eq!(of_grade(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(of_grade(3, 0), vec![0]);
        assert!(of_grade(3, 4).is_empty());
        assert_eq!(of_grade(8, 4).len(), 70);
    }

    #[test]
    fn labels_round_trip() {
        for b in 0..8u64 {
            assert_eq!(parse_label(&label(b, 3), 3).unwrap(), b);
        }
        assert_eq!(label(1 << 9 | 1, 15), "1.10");
        assert_eq!(parse_label("1.10", 15).unwrap(), 1 << 9 | 1);
        assert!(parse_label("21", 3).is_err());
        assert!(parse_label("4", 3).is_err());
        assert!(parse_label("x", 3).is_err());
    }
}
