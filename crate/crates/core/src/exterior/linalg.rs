//! Dense Gaussian elimination over a [`Field`].

use super::field::Field;

/// Reduced row echelon form of a row list: only the nonzero rows are kept,
/// `pivots[r]` is the leading column of row `r`, and pivot columns are
/// zero outside their own row.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Row-reduces `rows` (each of length `width`) to reduced echelon form.
pub fn row_reduce<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, width: usize) -> Echelon<F::Elem> {
    debug_assert!(rows.iter().all(|r| r.len() == width));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        let Some(found) = (top..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(top, found);
        let inv = field.inv(&rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut().skip(col) {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}

pub fn rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, width: usize) -> usize {
    row_reduce(field, rows, width).rank()
}
