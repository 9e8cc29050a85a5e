//! Integer partitions, the labels of Schur functors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("cannot pad {partition} with rows of length {n}: first part exceeds {n}")]
    InvalidPadding { partition: Partition, n: u32 },
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("invalid partition syntax at column {column}: {message}")]
    Syntax { column: usize, message: String },
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored, so `[]` is the unique empty partition.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition, dropping zero parts. Fails if the non-zero
    /// prefix is not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary non-negative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// The rectangle `(n^r)`.
    pub fn rectangle(n: u32, r: usize) -> Self {
        if n == 0 {
            return Partition::empty();
        }
        Partition { parts: vec![n; r] }
    }

    pub fn single_row(k: u32) -> Self {
        Partition::rectangle(k, 1)
    }

    /// The single column `(1^k)`.
    pub fn single_column(k: usize) -> Self {
        Partition::rectangle(1, k)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-based), reading missing parts as zero.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn columns(&self) -> u32 {
        self.part(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.columns() as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `λ[n^r]`: prepend `r` rows of length `n`. Requires `n ≥ λ₁`.
    pub fn pad(&self, n: u32, r: usize) -> Result<Partition, PartitionError> {
        if n < self.columns() {
            return Err(PartitionError::InvalidPadding { partition: self.clone(), n });
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let mut parts = vec![n; r];
        parts.extend_from_slice(&self.parts);
        Ok(Partition { parts })
    }

    /// Containment of Young diagrams: `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.rows() <= other.rows() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Dimension of `S_λ(ℂⁿ)` by the hook-content formula.
    pub fn dim_schur(&self, n: u32) -> BigUint {
        if self.rows() > n as usize {
            return BigUint::zero();
        }
        let conj = self.transpose();
        let mut num = BigInt::one();
        let mut den = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                num *= BigInt::from(n as i64 + j as i64 - i as i64);
                let hook = (row as usize - j) + (conj.parts[j] as usize - i) - 1;
                den *= BigUint::from(hook);
            }
        }
        debug_assert!(!num.is_negative());
        num.magnitude() / den
    }

    /// All partitions of `k` with at most `max_rows` rows and parts at most
    /// `max_part`, in lexicographically decreasing order.
    pub fn all_of_size(k: u32, max_rows: usize, max_part: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill_partitions(k, max_rows, max_part.min(k), &mut cur, &mut out);
        out
    }

    /// All partitions of size at most `k` (graded, within a size
    /// lexicographically decreasing).
    pub fn all_up_to(k: u32, max_rows: usize, max_part: u32) -> Vec<Partition> {
        (0..=k).flat_map(|s| Partition::all_of_size(s, max_rows, max_part)).collect()
    }

    /// Graded-lex comparison: smaller size first, then lexicographically
    /// larger parts first.
    pub fn graded_cmp(&self, other: &Partition) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.parts.cmp(&self.parts))
    }
}

fn fill_partitions(rest: u32, rows: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if rows == 0 {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        cur.push(p);
        fill_partitions(rest - p, rows - 1, p, cur, out);
        cur.pop();
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_cmp(other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |column: usize, message: &str| PartitionError::Syntax { column, message: message.to_string() };
        let trimmed = s.trim_start();
        let offset = s.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        let inner = trimmed
            .strip_prefix('[')
            .ok_or_else(|| syntax(offset + 1, "expected '['"))?
            .strip_suffix(']')
            .ok_or_else(|| syntax(offset + trimmed.len(), "expected ']'"))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut column = offset + 2;
        for piece in inner.split(',') {
            let value = piece
                .trim()
                .parse::<u32>()
                .map_err(|_| syntax(column, "expected a non-negative integer"))?;
            parts.push(value);
            column += piece.len() + 1;
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
