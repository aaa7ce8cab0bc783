//! Exact Gaussian elimination over F_q.
//!
//! Matrices store element indices and do all pivoting through the field's
//! lookup tables, so elimination is branch-light and allocation-free per step.
//! Everything is exact; there are no tolerances anywhere.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FqElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>, // element indices, row-major
}

impl FqMatrix {
    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FqElem>,
    ) -> Result<FqMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let data = entries.iter().map(|e| field.elem_index(e)).collect();
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Build directly from element indices (hot paths).
    pub fn from_index_data(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u8>,
    ) -> Result<FqMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FqElem {
        self.field.elem_at(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FqElem) {
        self.data[i * self.cols + j] = self.field.elem_index(v);
    }

    pub fn identity(field: &FieldSpec, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut data = vec![0u8; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        FqMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Row-reduce a copy; returns (reduced data, pivot columns).
    fn rref(&self) -> (Vec<u8>, Vec<usize>) {
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = f.inv_idx(a[r * cols + c]).expect("pivot nonzero");
            if inv != 1 {
                for j in c..cols {
                    a[r * cols + j] = f.mul_idx(inv, a[r * cols + j]);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = a[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul_idx(factor, a[r * cols + j]);
                    a[i * cols + j] = f.sub_idx(a[i * cols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Some solution of Mx = b, or None when the system is inconsistent.
    pub fn solve(&self, b: &[FqElem]) -> Result<Option<Vec<FqElem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let f = &self.field;
        let cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for (i, rhs) in b.iter().enumerate() {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.push(f.elem_index(rhs));
        }
        let aug = FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols,
            data,
        };
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the augmented column
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = f.elem_at(red[r * cols + self.cols]).clone();
        }
        Ok(Some(x))
    }

    /// Whether v lies in the row space (rank does not grow when appending it).
    pub fn row_space_contains(&self, v: &[FqElem]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let base_rank = self.rank();
        let mut data = self.data.clone();
        data.extend(v.iter().map(|e| self.field.elem_index(e)));
        let extended = FqMatrix {
            field: self.field.clone(),
            rows: self.rows + 1,
            cols: self.cols,
            data,
        };
        Ok(extended.rank() == base_rank)
    }

    pub fn mat_vec(&self, x: &[FqElem]) -> Result<Vec<FqElem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let f = &self.field;
        let xi: Vec<u8> = x.iter().map(|e| f.elem_index(e)).collect();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut acc = 0u8;
            for (&a, &b) in row.iter().zip(&xi) {
                acc = f.add_idx(acc, f.mul_idx(a, b));
            }
            out.push(f.elem_at(acc).clone());
        }
        Ok(out)
    }
}
