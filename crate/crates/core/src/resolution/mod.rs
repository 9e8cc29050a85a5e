//! Graded Betti numbers of `A(ℂⁿ)/I`, computed twice: from a Schreyer
//! resolution and from Koszul homology split by torus weight. Also the
//! Schur decomposition of Tor and its linear strands.

mod koszul;
mod schreyer;
mod strands;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::character::CharacterError;
use crate::poly::{hilbert_function, GroebnerBasis, Ideal, IdealError, MonomialOrder, ResourceLimits};

pub use koszul::{check_gl_stable, koszul_betti, koszul_tor, Grading, TorProfile};
pub use strands::{extract_strands, StrandFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("resource limit exceeded: {what} reached {value} (limit {limit})")]
    ResourceLimit { what: &'static str, value: usize, limit: usize },
    #[error("resolution did not terminate within {bound} steps")]
    LengthExceeded { bound: usize },
    #[error("generator {index} mixes GL_n torus weights: {generator}")]
    TorusUnstable { index: usize, generator: String },
    #[error("the ideal is not GL_n-stable: E[{to},{from}] moves generator {index} outside it")]
    NotGlStable { index: usize, to: usize, from: usize },
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}

impl ResolutionError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            ResolutionError::ResourceLimit { .. }
                | ResolutionError::Ideal(IdealError::Groebner(crate::poly::GroebnerError::ResourceLimit { .. }))
        )
    }
}

/// Graded Betti numbers `β_{p,j} = dim Tor_p(A/I, ℚ)_j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    num_vars: usize,
    entries: BTreeMap<(u32, u32), u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub p: u32,
    pub j: u32,
    pub beta: u64,
}

impl BettiTable {
    pub fn new(num_vars: usize) -> Self {
        BettiTable { num_vars, entries: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Sets `β_{p,j}`; zero removes the entry.
    pub fn set(&mut self, p: u32, j: u32, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(p, j));
        } else {
            self.entries.insert((p, j), beta);
        }
    }

    pub fn get(&self, p: u32, j: u32) -> u64 {
        self.entries.get(&(p, j)).copied().unwrap_or(0)
    }

    /// Non-zero entries ordered by `(p, j)`.
    pub fn entries(&self) -> impl Iterator<Item = BettiEntry> + '_ {
        self.entries.iter().map(|(&(p, j), &beta)| BettiEntry { p, j, beta })
    }

    pub fn total(&self, p: u32) -> u64 {
        self.entries.range((p, 0)..=(p, u32::MAX)).map(|(_, b)| b).sum()
    }

    /// Length of the minimal resolution; `None` for the zero module.
    pub fn pdim(&self) -> Option<u32> {
        self.entries.keys().map(|&(p, _)| p).max()
    }

    /// `Σ_p (−1)^p β_{p,j}` for each `j`, the numerator of the Hilbert series
    /// over `(1−t)^{num_vars}`.
    pub fn hilbert_numerator(&self) -> BTreeMap<u32, BigInt> {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for e in self.entries() {
            let v = BigInt::from(e.beta);
            let slot = out.entry(e.j).or_default();
            if e.p % 2 == 0 {
                *slot += v;
            } else {
                *slot -= v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Conventional layout: columns are homological degrees `p`, rows are
    /// `j − p`.
    pub fn render(&self) -> String {
        let Some(pdim) = self.pdim() else {
            return "zero module\n".to_string();
        };
        let reg = self.entries.keys().map(|&(p, j)| j - p).max().unwrap_or(0);
        let min_row = self.entries.keys().map(|&(p, j)| j - p).min().unwrap_or(0);
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut cols: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new(), "total:".to_string()];
        for row in min_row..=reg {
            header.push(format!("{row}:"));
        }
        cols.push(header);
        for p in 0..=pdim {
            let mut col = vec![p.to_string(), cell(self.total(p))];
            for row in min_row..=reg {
                col.push(cell(self.get(p, p + row)));
            }
            cols.push(col);
        }
        let widths: Vec<usize> = cols.iter().map(|c| c.iter().map(String::len).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for line in 0..cols[0].len() {
            let mut s = String::new();
            for (k, col) in cols.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{:>w$}", col[line], w = widths[k]);
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            num_vars: usize,
            pdim: Option<u32>,
            entries: Vec<BettiEntry>,
        }
        Repr { num_vars: self.num_vars, pdim: self.pdim(), entries: self.entries().collect() }.serialize(s)
    }
}

fn proper_basis(ideal: &Ideal, limits: &ResourceLimits) -> Result<GroebnerBasis, ResolutionError> {
    ideal.check_homogeneous()?;
    let gb = ideal.groebner_basis(MonomialOrder::GRevLex, limits)?;
    if gb.is_unit_ideal() {
        return Err(IdealError::UnitIdeal.into());
    }
    Ok(gb)
}

/// Betti table of the minimal free resolution of `A(ℂⁿ)/I`, from a Schreyer
/// resolution with constant entries cancelled.
pub fn minimal_free_resolution(ideal: &Ideal, limits: &ResourceLimits) -> Result<BettiTable, ResolutionError> {
    let gb = proper_basis(ideal, limits)?;
    let res = schreyer::schreyer_resolution(&gb, limits)?;
    Ok(res.betti(ideal.num_vars()))
}

pub fn pdim(ideal: &Ideal, limits: &ResourceLimits) -> Result<u32, ResolutionError> {
    Ok(minimal_free_resolution(ideal, limits)?.pdim().unwrap_or(0))
}

/// `dn − pdim`.
pub fn depth(ideal: &Ideal, limits: &ResourceLimits) -> Result<u32, ResolutionError> {
    Ok(ideal.num_vars() as u32 - pdim(ideal, limits)?)
}

/// Compares the Betti numbers against the Hilbert function: the alternating
/// sums must equal the coefficients of `H(t)·(1−t)^{dn}`, with `H` counted
/// from standard monomials.
pub fn hilbert_series_consistent(ideal: &Ideal, betti: &BettiTable, limits: &ResourceLimits) -> Result<bool, ResolutionError> {
    let gb = proper_basis(ideal, limits)?;
    let nv = ideal.num_vars();
    let numerator = betti.hilbert_numerator();
    let top = betti.entries().map(|e| e.j).max().unwrap_or(0) + 1;
    let h: Vec<BigUint> = (0..=top).map(|k| hilbert_function(&gb, k)).collect();
    for k in 0..=top {
        let mut coeff = BigInt::zero();
        let mut binom = BigInt::from(1);
        for i in 0..=(k as usize).min(nv) {
            let term = &binom * BigInt::from(h[k as usize - i].clone());
            if i % 2 == 0 {
                coeff += term;
            } else {
                coeff -= term;
            }
            binom = binom * BigInt::from(nv - i) / BigInt::from(i + 1);
        }
        if coeff != numerator.get(&k).cloned().unwrap_or_default() {
            return Ok(false);
        }
    }
    Ok(true)
}
