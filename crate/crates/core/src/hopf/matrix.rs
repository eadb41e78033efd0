use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::element::{json_int, ModuleElement};
use crate::packed_words::PackedWord;

/// An integer matrix whose rows and columns are labeled by packed words.
/// For a linear map, column `c` holds the image of basis element `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    row_basis: Vec<PackedWord>,
    col_basis: Vec<PackedWord>,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_fn(
        row_basis: Vec<PackedWord>,
        col_basis: Vec<PackedWord>,
        mut entry: impl FnMut(usize, usize) -> BigInt,
    ) -> Self {
        let rows = (0..row_basis.len())
            .map(|r| (0..col_basis.len()).map(|c| entry(r, c)).collect())
            .collect();
        IntMatrix {
            row_basis,
            col_basis,
            rows,
        }
    }

    /// Matrix of a linear map given by the images of `basis`, in that basis.
    pub fn from_images(basis: Vec<PackedWord>, images: &[ModuleElement]) -> Self {
        assert_eq!(basis.len(), images.len());
        let rows = basis
            .iter()
            .map(|r| images.iter().map(|img| img.coeff(r)).collect())
            .collect();
        IntMatrix {
            row_basis: basis.clone(),
            col_basis: basis,
            rows,
        }
    }

    /// Builds a square matrix from plain integer rows, for tests and fixtures.
    pub fn square(basis: Vec<PackedWord>, rows: &[&[i64]]) -> Self {
        assert!(rows.len() == basis.len() && rows.iter().all(|r| r.len() == basis.len()));
        IntMatrix {
            col_basis: basis.clone(),
            row_basis: basis,
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        }
    }

    pub fn row_basis(&self) -> &[PackedWord] {
        &self.row_basis
    }

    pub fn col_basis(&self) -> &[PackedWord] {
        &self.col_basis
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn is_square(&self) -> bool {
        self.row_basis == self.col_basis
    }

    /// Rows as machine integers, when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.col_basis != other.row_basis {
            return Err(Error::LengthMismatch {
                left: self.col_basis.len(),
                right: other.row_basis.len(),
            });
        }
        let inner = self.col_basis.len();
        let mut rows = vec![vec![BigInt::zero(); other.col_basis.len()]; self.row_basis.len()];
        for (r, out_row) in rows.iter_mut().enumerate() {
            for k in 0..inner {
                let a = &self.rows[r][k];
                if a.is_zero() {
                    continue;
                }
                for (c, out) in out_row.iter_mut().enumerate() {
                    let b = &other.rows[k][c];
                    if !b.is_zero() {
                        *out += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix {
            row_basis: self.row_basis.clone(),
            col_basis: other.col_basis.clone(),
            rows,
        })
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.col_basis.clone(), self.row_basis.clone(), |r, c| {
            self.rows[c][r].clone()
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.row_basis.len(), self.col_basis.len());
        let n = self.rows.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// True iff, after ordering rows and columns by `order`, the matrix is
    /// lower triangular with ones on the diagonal.
    pub fn is_unitriangular_under(&self, order: &[usize]) -> bool {
        order.iter().enumerate().all(|(i, &r)| {
            order.iter().enumerate().all(|(j, &c)| {
                let v = &self.rows[r][c];
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => v.is_one(),
                    std::cmp::Ordering::Less => v.is_zero(),
                    std::cmp::Ordering::Greater => true,
                }
            })
        })
    }

    /// `{"basis": [...], "rows": [[...]]}` for square matrices, with separate
    /// `row_basis` and `col_basis` otherwise.
    pub fn to_json_value(&self) -> serde_json::Value {
        let words = |b: &[PackedWord]| -> Vec<String> { b.iter().map(|w| w.to_text()).collect() };
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(json_int::to_value).collect())
            .collect();
        if self.is_square() {
            serde_json::json!({ "basis": words(&self.row_basis), "rows": rows })
        } else {
            serde_json::json!({
                "row_basis": words(&self.row_basis),
                "col_basis": words(&self.col_basis),
                "rows": rows,
            })
        }
    }

    /// Aligned text with the column basis as a header row and the row basis as
    /// a leading column.
    pub fn to_text(&self) -> String {
        let label = |w: &PackedWord| w.to_string();
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec![String::new()];
        header.extend(self.col_basis.iter().map(label));
        cells.push(header);
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = vec![label(&self.row_basis[r])];
            line.extend(row.iter().map(|v| v.to_string()));
            cells.push(line);
        }
        let columns = cells[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| {
                cells
                    .iter()
                    .map(|l| l[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in &cells {
            let padded: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{}{}", " ".repeat(w - cell.chars().count()), cell))
                .collect();
            let _ = writeln!(out, "{}", padded.join(" ").trim_end());
        }
        out
    }
}
