//! JSON matrix format.
//!
//! ```json
//! {"m": 1, "entries": [[0, 0], [1.5, 0], [-1.5, 0], [0, 0]]}
//! ```
//!
//! Entries are row-major `[re, im]` pairs. A part may be a JSON number or a
//! string holding a rational literal (`"-2/3"`, `"0.125"`), which is read
//! exactly in exact mode. Square matrices use `"n"` instead of `"m"`; kernels
//! carry a `"labels"` array naming the ground-set points.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::block::BlockSkewMatrix;
use super::matrix::Matrix;
use super::scalar::{parse_rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    entries: Vec<[Value; 2]>,
}

fn part(v: &Value) -> Result<BigRational> {
    let text = match v {
        Value::Number(x) => x.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("matrix entry part must be a number or string, got {other}"))),
    };
    parse_rational(&text).ok_or_else(|| Error::Parse(format!("cannot read {text:?} as a number")))
}

fn entries<S: Scalar>(doc: &MatrixDoc, dim: usize) -> Result<Matrix<S>> {
    if doc.entries.len() != dim * dim {
        return Err(Error::Parse(format!("expected {} entries for a {dim}x{dim} matrix, found {}", dim * dim, doc.entries.len())));
    }
    let data = doc
        .entries
        .iter()
        .map(|[re, im]| Ok(S::from_rational_parts(&part(re)?, &part(im)?)))
        .collect::<Result<Vec<S>>>()?;
    Matrix::from_vec(dim, dim, data)
}

fn doc_entries<S: Scalar>(a: &Matrix<S>) -> Vec<[Value; 2]> {
    a.data()
        .iter()
        .map(|x| {
            let z = x.to_c64();
            [Value::from(z.re), Value::from(z.im)]
        })
        .collect()
}

/// Reads a `2m x 2m` skew matrix; skew-symmetry is validated.
pub fn read_block_skew<S: Scalar>(text: &str) -> Result<BlockSkewMatrix<S>> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let m = doc.m.ok_or_else(|| Error::Parse("skew matrix JSON needs an \"m\" field".into()))?;
    BlockSkewMatrix::new(entries(&doc, 2 * m)?)
}

/// Reads an `n x n` matrix.
pub fn read_square<S: Scalar>(text: &str) -> Result<Matrix<S>> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let n = doc.n.ok_or_else(|| Error::Parse("square matrix JSON needs an \"n\" field".into()))?;
    entries(&doc, n)
}

/// Reads a kernel: ground-set labels plus the `2N x 2N` block matrix.
/// Without `"labels"` the points are named `0, 1, ..`.
pub fn read_kernel<S: Scalar>(text: &str) -> Result<(Vec<String>, BlockSkewMatrix<S>)> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    let size = match (&doc.labels, doc.m) {
        (Some(l), Some(m)) if l.len() != m => {
            return Err(Error::Parse(format!("{} labels but m = {m}", l.len())));
        }
        (Some(l), _) => l.len(),
        (None, Some(m)) => m,
        (None, None) => return Err(Error::Parse("kernel JSON needs \"labels\" or \"m\"".into())),
    };
    let labels = doc.labels.clone().unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
    Ok((labels, BlockSkewMatrix::new(entries(&doc, 2 * size)?)?))
}

pub fn write_block_skew<S: Scalar>(b: &BlockSkewMatrix<S>) -> String {
    let doc = MatrixDoc { labels: None, m: Some(b.m()), n: None, entries: doc_entries(b.as_matrix()) };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn write_square<S: Scalar>(a: &Matrix<S>) -> String {
    let doc = MatrixDoc { labels: None, m: None, n: Some(a.rows()), entries: doc_entries(a) };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn write_kernel<S: Scalar>(labels: &[String], b: &BlockSkewMatrix<S>) -> String {
    let doc = MatrixDoc { labels: Some(labels.to_vec()), m: Some(b.m()), n: None, entries: doc_entries(b.as_matrix()) };
    serde_json::to_string(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewmat::scalar::{C64, QC};

    #[test]
    fn round_trip_float() {
        let b = BlockSkewMatrix::<C64>::from_upper(2, |k, l| C64::new((k + l) as f64, k as f64 * 0.5));
        let back: BlockSkewMatrix<C64> = read_block_skew(&write_block_skew(&b)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn exact_strings() {
        let text = r#"{"m": 1, "entries": [[0,0],["1/3",0],["-1/3",0],[0,0]]}"#;
        let b: BlockSkewMatrix<QC> = read_block_skew(text).unwrap();
        assert_eq!(b.entry(0, 1), &QC::from_ratio(1, 3));
        let decimal = r#"{"m": 1, "entries": [[0,0],[0.1,0],[-0.1,0],[0,0]]}"#;
        let b: BlockSkewMatrix<QC> = read_block_skew(decimal).unwrap();
        assert_eq!(b.entry(0, 1), &QC::from_ratio(1, 10));
    }

    #[test]
    fn rejects_bad_input() {
        let non_skew = r#"{"m": 1, "entries": [[0,0],[1,0],[1,0],[0,0]]}"#;
        assert!(matches!(read_block_skew::<C64>(non_skew), Err(Error::NotSkewSymmetric { .. })));
        let short = r#"{"m": 1, "entries": [[0,0]]}"#;
        assert!(matches!(read_block_skew::<C64>(short), Err(Error::Parse(_))));
        assert!(matches!(read_block_skew::<C64>("{"), Err(Error::Json(_))));
    }

    #[test]
    fn square_and_kernel() {
        let a: Matrix<QC> = read_square(r#"{"n": 2, "entries": [[1,0],[2,0],[3,0],[4,"1/2"]]}"#).unwrap();
        assert_eq!(a[(1, 1)], QC::from_int(4) + QC::new(BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into())));
        let (labels, k): (_, BlockSkewMatrix<C64>) =
            read_kernel(r#"{"labels": ["x"], "entries": [[0,0],[0.2,0],[-0.2,0],[0,0]]}"#).unwrap();
        assert_eq!(labels, vec!["x".to_string()]);
        assert_eq!(k.m(), 1);
    }
}
