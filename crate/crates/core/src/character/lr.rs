//! Littlewood–Richardson coefficients by direct enumeration of LR skew
//! tableaux, behind a shareable memo table.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::partition::Partition;

type LrKey = (Partition, Partition, Partition);

/// Thread-safe memo table for `c^ν_{λμ}`.
#[derive(Debug, Default)]
pub struct LrCache {
    table: RwLock<HashMap<LrKey, u64>>,
}

impl LrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coefficient(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        // c^ν_{λμ} = c^ν_{μλ}; store under a canonical key
        let (a, b) = if lambda.graded_cmp(mu).is_le() { (lambda, mu) } else { (mu, lambda) };
        let key = (a.clone(), b.clone(), nu.clone());
        if let Some(&c) = self.table.read().expect("lr cache poisoned").get(&key) {
            return c;
        }
        let c = count_lr_tableaux(lambda, mu, nu);
        self.table.write().expect("lr cache poisoned").insert(key, c);
        c
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("lr cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_cache() -> &'static LrCache {
    static CACHE: OnceLock<LrCache> = OnceLock::new();
    CACHE.get_or_init(LrCache::new)
}

/// `c^ν_{λμ}`, the multiplicity of `S_ν` in `S_λ ⊗ S_μ`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    global_cache().coefficient(lambda, mu, nu)
}

/// Counts fillings of `ν/λ` with content `μ` that are semistandard and whose
/// reverse reading word is a lattice word. Uncached.
pub fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !lambda.is_contained_in(nu) || !mu.is_contained_in(nu) {
        return 0;
    }
    // reading order: rows top to bottom, each row right to left
    let mut cells = Vec::with_capacity(mu.size() as usize);
    for i in 0..nu.rows() {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let mut grid: Vec<Vec<u8>> = nu.parts().iter().map(|&len| vec![0; len as usize]).collect();
    let mut used = vec![0u32; mu.rows() + 1];
    let mut state = LrSearch { lambda, mu: mu.parts(), cells: &cells, grid: &mut grid, used: &mut used };
    state.run(0)
}

struct LrSearch<'a> {
    lambda: &'a Partition,
    mu: &'a [u32],
    cells: &'a [(usize, usize)],
    grid: &'a mut Vec<Vec<u8>>,
    used: &'a mut Vec<u32>,
}

impl LrSearch<'_> {
    fn run(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (i, j) = self.cells[idx];
        // weakly increasing along the row: bounded by the entry to the right
        let upper = if j + 1 < self.grid[i].len() && j + 1 >= self.lambda.part(i) as usize {
            self.grid[i][j + 1] as usize
        } else {
            self.mu.len()
        };
        // strictly increasing down columns, only against skew cells above
        let lower = if i > 0 && j >= self.lambda.part(i - 1) as usize { self.grid[i - 1][j] as usize + 1 } else { 1 };
        // an entry in row i (0-based) of an LR tableau is at most i + 1
        let upper = upper.min(i + 1);
        let mut total = 0;
        for v in lower..=upper {
            if self.used[v] >= self.mu[v - 1] {
                continue;
            }
            if v > 1 && self.used[v] + 1 > self.used[v - 1] {
                continue;
            }
            self.used[v] += 1;
            self.grid[i][j] = v as u8;
            total += self.run(idx + 1);
            self.grid[i][j] = 0;
            self.used[v] -= 1;
        }
        total
    }
}
