//! Dominant-weight multiplicities of `GL_n`-representations and their
//! conversion to Schur characters by Kostka inversion.

use std::collections::BTreeMap;

use super::{kostka, CharacterError, SchurCharacter};
use crate::partition::Partition;

/// Multiplicities of dominant weights (weakly decreasing vectors of length
/// `rank`) in a torus character.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightMultiplicity {
    rank: usize,
    weights: BTreeMap<Vec<u32>, u64>,
}

impl WeightMultiplicity {
    pub fn new(rank: usize) -> Self {
        WeightMultiplicity { rank, weights: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Records `m` at `weight`. Non-dominant weights carry no information
    /// beyond their dominant rearrangement and are skipped.
    pub fn add(&mut self, weight: Vec<u32>, m: u64) -> Result<(), CharacterError> {
        if weight.len() != self.rank {
            return Err(CharacterError::WeightLength { weight, rank: self.rank });
        }
        if m == 0 || weight.windows(2).any(|w| w[0] < w[1]) {
            return Ok(());
        }
        *self.weights.entry(weight).or_insert(0) += m;
        Ok(())
    }

    pub fn get(&self, weight: &[u32]) -> u64 {
        self.weights.get(weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, u64)> {
        self.weights.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn padded(lambda: &Partition, rank: usize) -> Vec<u32> {
    (0..rank).map(|i| lambda.part(i)).collect()
}

/// Decomposes a polynomial torus character into Schur functors by greedy
/// Kostka subtraction, always peeling the lexicographically largest
/// remaining dominant weight. The result is truncated at the largest
/// degree present.
pub fn weights_to_schur(w: &WeightMultiplicity) -> Result<SchurCharacter, CharacterError> {
    let rank = w.rank;
    let mut residual: BTreeMap<Vec<u32>, i128> = w.weights.iter().map(|(k, &v)| (k.clone(), v as i128)).collect();
    let top_degree = w.weights.keys().map(|k| k.iter().sum::<u32>()).max().unwrap_or(0);
    let mut out = SchurCharacter::zero(top_degree);
    while let Some((top, &m)) = residual.iter().next_back() {
        let lambda = Partition::from_unsorted(top.clone());
        for mu in Partition::all_of_size(lambda.size(), rank, lambda.columns()) {
            let k = kostka(&lambda, mu.parts()) as i128;
            if k == 0 {
                continue;
            }
            let key = padded(&mu, rank);
            let entry = residual.entry(key.clone()).or_insert(0);
            *entry -= m * k;
            if *entry < 0 {
                return Err(CharacterError::NotPolynomialCharacter { weight: key });
            }
            if *entry == 0 {
                residual.remove(&key);
            }
        }
        out.add_term(lambda, i64::try_from(m).expect("multiplicity overflows i64"));
    }
    Ok(out)
}

/// Dominant-weight multiplicities of `Θ(ℂ^rank)`.
pub fn schur_to_weights(theta: &SchurCharacter, rank: usize) -> Result<WeightMultiplicity, CharacterError> {
    if theta.is_virtual() {
        return Err(CharacterError::VirtualCharacter);
    }
    let mut out = WeightMultiplicity::new(rank);
    for (lambda, m) in theta.terms() {
        if lambda.rows() > rank {
            continue;
        }
        for mu in Partition::all_of_size(lambda.size(), rank, lambda.columns()) {
            let k = kostka(lambda, mu.parts());
            out.add(padded(&mu, rank), k * m as u64)?;
        }
    }
    Ok(out)
}
