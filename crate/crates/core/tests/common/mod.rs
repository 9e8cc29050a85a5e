//! Brute-force enumerations shared by the oracle and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use tca_core::Partition;

/// Weight multiplicities of `S_λ(ℂⁿ)` by filling every semistandard tableau.
pub fn ssyt_weights(lambda: &Partition, n: usize) -> BTreeMap<Vec<u32>, u64> {
    let cells: Vec<(usize, usize)> =
        lambda.parts().iter().enumerate().flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j))).collect();
    let mut grid = vec![vec![0usize; lambda.columns() as usize]; lambda.rows()];
    let mut out = BTreeMap::new();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        if k == cells.len() {
            let mut w = vec![0u32; n];
            for &(i, j) in cells {
                w[grid[i][j] - 1] += 1;
            }
            *out.entry(w).or_default() += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo = if i > 0 { lo.max(grid[i - 1][j] + 1) } else { lo };
        for v in lo..=n {
            grid[i][j] = v;
            fill(k + 1, cells, grid, n, out);
        }
    }
    fill(0, &cells, &mut grid, n, &mut out);
    out
}

/// Exponent vectors of degree `k` in `nv` variables.
pub fn all_exponents(nv: usize, k: u32) -> Vec<Vec<u16>> {
    if nv == 1 {
        return vec![vec![k as u16]];
    }
    (0..=k).flat_map(|a| all_exponents(nv - 1, k - a).into_iter().map(move |mut e| {
        e.insert(0, a as u16);
        e
    })).collect()
}

