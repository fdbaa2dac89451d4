//! JSON and CSV encodings shared by reports, configuration files and the CLI.
//!
//! Matrices are row-major nested arrays of `[re, im]` pairs. A form is an
//! object from blade labels (`""`, `"1"`, `"13"`, ...) to matrices. Floats
//! are written in shortest round-trip form, so values survive a
//! write/read cycle bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matforms::{blade, generator_count, DiffForm};
use crate::matrix::Matrix;
use crate::qbundle::GaugeConnection;
use crate::scalar::C64;

pub type MatrixJson = Vec<Vec<[f64; 2]>>;
pub type FormJson = BTreeMap<String, MatrixJson>;

pub fn matrix_to_json(p: &Matrix<C64>) -> MatrixJson {
    let n = p.size();
    (0..n)
        .map(|r| (0..n).map(|c| [p.get(r, c).re, p.get(r, c).im]).collect())
        .collect()
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix<C64>> {
    let n = m.len();
    if n < 2 {
        return Err(Error::Dimension(format!("matrix has {n} rows, need at least 2")));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "row {r} has {} entries in a {n}x{n} matrix",
                row.len()
            )));
        }
        for (c, [re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::NonFinite(format!("matrix entry ({r}, {c})")));
            }
            entries.push(C64::new(*re, *im));
        }
    }
    Matrix::from_row_major(entries)
}

pub fn form_to_json(f: &DiffForm<C64>) -> FormJson {
    f.terms()
        .map(|(b, p)| (blade::label(b, f.dim()), matrix_to_json(p)))
        .collect()
}

/// Reads a form over `M_size`. Labels must be valid for `N² − 1` generators.
pub fn form_from_json(f: &FormJson, size: usize) -> Result<DiffForm<C64>> {
    if size < 2 || generator_count(size) > blade::MAX_GENERATORS {
        return Err(Error::Dimension(format!("unsupported algebra size {size}")));
    }
    let dim = generator_count(size);
    let terms = f
        .iter()
        .map(|(label, m)| {
            let b = blade::parse_label(label, dim)?;
            let p = matrix_from_json(m)?;
            p.check_size(size)?;
            Ok((b, p))
        })
        .collect::<Result<Vec<_>>>()?;
    DiffForm::from_terms(size, terms)
}

pub fn parse_form(text: &str, size: usize) -> Result<DiffForm<C64>> {
    let raw: FormJson = serde_json::from_str(text)?;
    form_from_json(&raw, size)
}

/// `{"A": [m₁, …, m_d], "charge_tests": [n, …]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionJson {
    #[serde(rename = "A")]
    pub a: Vec<MatrixJson>,
    #[serde(default)]
    pub charge_tests: Vec<i64>,
}

impl ConnectionJson {
    pub fn from_connection(c: &GaugeConnection<C64>, charge_tests: Vec<i64>) -> Self {
        let a = c.potential();
        ConnectionJson {
            a: (0..a.dim()).map(|j| matrix_to_json(&a.coeff(1 << j))).collect(),
            charge_tests,
        }
    }

    pub fn to_connection(&self) -> Result<GaugeConnection<C64>> {
        let coeffs = self
            .a
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>>>()?;
        let size = coeffs.first().map_or(0, Matrix::size);
        for p in &coeffs {
            p.check_size(size)?;
        }
        GaugeConnection::new(DiffForm::one_form(&coeffs)?)
    }
}

pub fn parse_connection(text: &str) -> Result<(GaugeConnection<C64>, Vec<i64>)> {
    let raw: ConnectionJson = serde_json::from_str(text)?;
    Ok((raw.to_connection()?, raw.charge_tests))
}

/// `grade,index,eigenvalue` rows in ascending order, 17 significant digits.
pub fn spectrum_csv(spectra: &[(usize, Vec<f64>)]) -> String {
    let mut out = String::from("grade,index,eigenvalue\n");
    for (k, vals) in spectra {
        for (i, v) in vals.iter().enumerate() {
            writeln!(out, "{k},{i},{v:.16e}").expect("writing to a String cannot fail");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matforms::Calculus;
    use crate::random;

    #[test]
    fn form_round_trip_is_lossless() {
        let c = Calculus::<C64>::new(2).unwrap();
        let mut rng = random::rng(5);
        let f = random::mixed_form(&c, &mut rng);
        let text = serde_json::to_string(&form_to_json(&f)).unwrap();
        assert_eq!(parse_form(&text, 2).unwrap(), f);
    }

    #[test]
    fn labels_follow_generator_order() {
        let f = DiffForm::monomial(0b101, Matrix::<C64>::identity(2));
        let j = form_to_json(&f);
        assert_eq!(j.keys().collect::<Vec<_>>(), vec!["13"]);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse_form(r#"{"31": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#, 2).is_err());
        assert!(parse_form(r#"{"4": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#, 2).is_err());
        assert!(parse_form(r#"{"1": [[[1,0],[0,0]]]}"#, 2).is_err());
        assert!(parse_form(r#"{"1": [[[1,0]],[[0,0],[1,0]]]}"#, 2).is_err());
        assert!(parse_form("[]", 2).is_err());
        assert!(parse_connection(r#"{"A": []}"#).is_err());
        assert!(parse_connection(r#"{"A": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn connection_round_trip() {
        let c = Calculus::<C64>::new(2).unwrap();
        let mut rng = random::rng(9);
        let a = GaugeConnection::new(random::form(&c, &mut rng, 1)).unwrap();
        let text = serde_json::to_string(&ConnectionJson::from_connection(&a, vec![1, -2])).unwrap();
        let (b, charges) = parse_connection(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(charges, vec![1, -2]);
    }

    #[test]
    fn spectrum_csv_layout() {
        let s = spectrum_csv(&[(0, vec![0.0, 2.0])]);
        assert_eq!(s, "grade,index,eigenvalue\n0,0,0.0000000000000000e0\n0,1,2.0000000000000000e0\n");
    }
}
