//! Exact rank of sparse matrices over `ℚ`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::poly::Coeff;

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Coeff)>;

/// Incremental row echelon form. Rows are reduced against the pivots seen so
/// far; a row that survives becomes a new pivot.
#[derive(Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row, returning true when it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(pivot) => row = axpy(&row, pivot, &-lead),
                None => {
                    let inv = lead.recip();
                    if !inv.is_one() {
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
    }
}

/// `a + c·b` for sorted sparse rows.
fn axpy(a: &SparseRow, b: &SparseRow, c: &Coeff) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1 * c;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the matrix with the given rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for mut row in rows {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        e.insert(row);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Coeff {
        Coeff::from_integer(x.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(Vec::<SparseRow>::new()), 0);
        let rows = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(2)), (1, q(4))], vec![(2, q(3))]];
        assert_eq!(rank(rows), 2);
        let rows = vec![vec![(0, q(1)), (1, q(1))], vec![(1, q(1)), (2, q(1))], vec![(0, q(1)), (2, q(-1))]];
        assert_eq!(rank(rows), 2);
    }
}
