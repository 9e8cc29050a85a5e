use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Variables `x_{i,j}` of a `d × n` matrix, stored row-major. Variable
/// `x_{i,j}` (1-based) has index `(i-1)·n + (j-1)`; lower index means
/// smaller variable in every monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableGrid {
    pub d: u32,
    pub n: u32,
}

impl VariableGrid {
    pub fn new(d: u32, n: u32) -> Self {
        assert!(d >= 1, "a variable grid needs at least one row");
        VariableGrid { d, n }
    }

    pub fn num_vars(&self) -> usize {
        (self.d * self.n) as usize
    }

    /// Index of `x_{i,j}` for 1-based `i`, `j`.
    pub fn index(&self, i: u32, j: u32) -> Option<usize> {
        (1..=self.d).contains(&i).then_some(())?;
        (1..=self.n).contains(&j).then_some(())?;
        Some(((i - 1) * self.n + (j - 1)) as usize)
    }

    /// 1-based `(row, column)` of a variable index.
    pub fn position(&self, var: usize) -> (u32, u32) {
        let n = self.n as usize;
        ((var / n) as u32 + 1, (var % n) as u32 + 1)
    }

    pub fn column_of(&self, var: usize) -> usize {
        var % self.n as usize
    }

    pub fn row_of(&self, var: usize) -> usize {
        var / self.n as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic.
    #[default]
    GRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GRevLex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        })
    }
}

/// An exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars].into_boxed_slice(), degree: 0 }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: exps.into_boxed_slice(), degree }
    }

    pub fn variable(num_vars: usize, var: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn mul_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[var] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables present. Requires at most 128 variables.
    pub fn support_mask(&self) -> u128 {
        debug_assert!(self.exps.len() <= 128);
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
    }

    /// Exponent sums per column of the grid (the `GL_n` torus weight).
    pub fn column_weight(&self, grid: &VariableGrid) -> Vec<u32> {
        let mut w = vec![0u32; grid.n as usize];
        for (v, &e) in self.exps.iter().enumerate() {
            w[grid.column_of(v)] += e as u32;
        }
        w
    }

    /// Exponent sums per row of the grid (the torus weight on `E`).
    pub fn row_weight(&self, grid: &VariableGrid) -> Vec<u32> {
        let mut w = vec![0u32; grid.d as usize];
        for (v, &e) in self.exps.iter().enumerate() {
            w[grid.row_of(v)] += e as u32;
        }
        w
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// All monomials of total degree `k` in `num_vars` variables, in no
/// particular order.
pub fn monomials_of_degree(num_vars: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; num_vars];
    fn rec(var: usize, rest: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var + 1 >= exps.len() {
            if let Some(last) = exps.len().checked_sub(1) {
                exps[last] = rest as u16;
                out.push(Monomial::from_exponents(exps.clone()));
                exps[last] = 0;
            } else if rest == 0 {
                out.push(Monomial::from_exponents(Vec::new()));
            }
            return;
        }
        for e in 0..=rest {
            exps[var] = e as u16;
            rec(var + 1, rest - e, exps, out);
        }
        exps[var] = 0;
    }
    rec(0, k, &mut exps, &mut out);
    out
}
