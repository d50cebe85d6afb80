//! Incremental reduced row echelon form over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

/// Rows kept in reduced echelon form: every row has a leading 1 in its pivot
/// column and no other row has a nonzero entry there.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivot_row: vec![None; width] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Basis rows, each sorted by column.
    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn insert_sparse(&mut self, v: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        let mut dense = vec![Rational::zero(); self.width];
        for (c, x) in v {
            dense[c] += x;
        }
        self.insert_dense(dense)
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub fn insert_dense(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.width);
        if self.is_full() {
            return false;
        }
        // Rows only touch their own pivot among pivot columns, so a single
        // pass clears every pivot column of v.
        for col in 0..self.width {
            if v[col].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[col] {
                let factor = v[col].clone();
                for (c, x) in &self.rows[r] {
                    v[*c] -= &factor * x;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[pivot];
        let new_row: SparseRow =
            v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x * &inv)).collect();
        for row in &mut self.rows {
            let Ok(pos) = row.binary_search_by_key(&pivot, |(c, _)| *c) else { continue };
            let factor = row[pos].1.clone();
            *row = merge_sub(row, &new_row, &factor);
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }
}

/// `a − factor·b` for column-sorted sparse rows.
fn merge_sub(a: &SparseRow, b: &SparseRow, factor: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(factor * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - factor * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
