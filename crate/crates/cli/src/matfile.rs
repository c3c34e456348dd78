//! The on-disk matrix format: one JSON document with the shape, the optional
//! bipartition, and row-major `[re, im]` entry pairs. Floats serialize as
//! shortest round-trip decimals, so write-then-read is bit-exact.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use entop::tensor::{Bipartition, DenseMatrix};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<usize>,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &DenseMatrix, bp: Option<Bipartition>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            d1: bp.map(|b| b.d1()),
            d2: bp.map(|b| b.d2()),
            data: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<DenseMatrix, CliError> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Input(format!(
                "matrix file carries {} entries for a {}x{} matrix",
                self.data.len(),
                self.rows,
                self.cols
            )));
        }
        if let (Some(d1), Some(d2)) = (self.d1, self.d2) {
            if d1 * d2 != self.rows {
                return Err(CliError::Input(format!(
                    "matrix file bipartition {d1}x{d2} does not match {} rows",
                    self.rows
                )));
            }
        }
        let entries = self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok(DenseMatrix::new(self.rows, self.cols, entries)?)
    }

    pub fn bipartition(&self) -> Option<(usize, usize)> {
        self.d1.zip(self.d2)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inconsistent_shapes() {
        let file = MatrixFile { rows: 2, cols: 2, d1: None, d2: None, data: vec![[1.0, 0.0]; 3] };
        assert!(file.to_matrix().is_err());

        let file = MatrixFile {
            rows: 4,
            cols: 4,
            d1: Some(2),
            d2: Some(3),
            data: vec![[0.0, 0.0]; 16],
        };
        assert!(file.to_matrix().is_err());
    }

    #[test]
    fn rejects_non_finite_entries() {
        let file = MatrixFile {
            rows: 1,
            cols: 1,
            d1: None,
            d2: None,
            data: vec![[f64::INFINITY, 0.0]],
        };
        assert!(file.to_matrix().is_err());
    }
}
