use num_bigint::BigUint;
use thiserror::Error;

use super::groebner::{buchberger, GroebnerBasis, GroebnerError, ResourceLimits};
use super::monomial::{Monomial, MonomialOrder, VariableGrid};
use super::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("the ideal is the whole ring; its quotient has no dimension")]
    UnitIdeal,
    #[error("generator {index} is not homogeneous: {generator}")]
    NotHomogeneous { index: usize, generator: String },
    #[error("generator {index} does not live on the ideal's {expected:?} grid")]
    WrongGrid { index: usize, expected: VariableGrid },
    #[error("{0} variables exceed the 128 supported by the dimension search")]
    TooManyVariables(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A finitely generated ideal of `ℚ[x_{i,j}]` over a [`VariableGrid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    grid: VariableGrid,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(grid: VariableGrid, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if let Some(index) = generators.iter().position(|g| g.grid() != grid) {
            return Err(IdealError::WrongGrid { index, expected: grid });
        }
        Ok(Ideal { grid, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(grid: VariableGrid) -> Self {
        Ideal { grid, generators: Vec::new() }
    }

    /// The ideal of all variables.
    pub fn maximal(grid: VariableGrid, order: MonomialOrder) -> Self {
        let nv = grid.num_vars();
        let gens = (0..nv)
            .map(|v| Polynomial::monomial(grid, order, Monomial::variable(nv, v), num_traits::One::one()))
            .collect();
        Ideal { grid, generators: gens }
    }

    pub fn grid(&self) -> VariableGrid {
        self.grid
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn num_vars(&self) -> usize {
        self.grid.num_vars()
    }

    pub fn check_homogeneous(&self) -> Result<(), IdealError> {
        match self.generators.iter().position(|g| !g.is_homogeneous()) {
            Some(index) => Err(IdealError::NotHomogeneous { index, generator: self.generators[index].to_string() }),
            None => Ok(()),
        }
    }

    pub fn groebner_basis(&self, order: MonomialOrder, limits: &ResourceLimits) -> Result<GroebnerBasis, IdealError> {
        Ok(buchberger(self, order, limits)?)
    }

    /// Krull dimension of the quotient ring, using the given order.
    pub fn krull_dimension_with(&self, order: MonomialOrder, limits: &ResourceLimits) -> Result<u32, IdealError> {
        krull_dimension(&self.groebner_basis(order, limits)?)
    }

    /// Krull dimension of the quotient ring (grevlex).
    pub fn krull_dimension(&self, limits: &ResourceLimits) -> Result<u32, IdealError> {
        self.krull_dimension_with(MonomialOrder::GRevLex, limits)
    }

    /// Number of degree-`k` standard monomials.
    pub fn hilbert_function(&self, k: u32, limits: &ResourceLimits) -> Result<BigUint, IdealError> {
        self.check_homogeneous()?;
        let gb = self.groebner_basis(MonomialOrder::GRevLex, limits)?;
        Ok(hilbert_function(&gb, k))
    }

    /// Applies a permutation of the variables to every generator.
    pub fn permute_variables(&self, perm: &[usize]) -> Ideal {
        Ideal { grid: self.grid, generators: self.generators.iter().map(|g| g.permute_variables(perm)).collect() }
    }
}

/// Dimension of `R/I` as the largest set of variables on which no leading
/// monomial of the basis is supported.
pub fn krull_dimension(gb: &GroebnerBasis) -> Result<u32, IdealError> {
    if gb.is_unit_ideal() {
        return Err(IdealError::UnitIdeal);
    }
    let nv = gb.grid().num_vars();
    if nv > 128 {
        return Err(IdealError::TooManyVariables(nv));
    }
    let mut supports: Vec<u128> = gb.leading_monomials().map(Monomial::support_mask).collect();
    supports.sort_unstable();
    supports.dedup();
    let mut best = 0u32;
    independent_search(0, nv, 0, 0, &supports, &mut best);
    Ok(best)
}

fn independent_search(var: usize, nv: usize, chosen: u128, size: u32, supports: &[u128], best: &mut u32) {
    if size > *best {
        *best = size;
    }
    if var == nv || size + (nv - var) as u32 <= *best {
        return;
    }
    let with = chosen | (1u128 << var);
    if !supports.iter().any(|&s| s & !with == 0) {
        independent_search(var + 1, nv, with, size + 1, supports, best);
    }
    independent_search(var + 1, nv, chosen, size, supports, best);
}

/// Standard monomials of degree `k`: those outside the initial ideal.
pub fn standard_monomials(gb: &GroebnerBasis, k: u32) -> Vec<Monomial> {
    let nv = gb.grid().num_vars();
    let leads: Vec<&Monomial> = gb.leading_monomials().collect();
    let mut out = Vec::new();
    let mut exps = vec![0u16; nv];
    walk_standard(0, k, &mut exps, &leads, &mut out);
    out
}

// Assigns exponents variable by variable from the highest index down; a
// partial assignment is pruned as soon as a leading monomial supported on
// the assigned variables divides it.
fn walk_standard(depth: usize, rest: u32, exps: &mut [u16], leads: &[&Monomial], out: &mut Vec<Monomial>) {
    let nv = exps.len();
    if depth == nv {
        if rest == 0 {
            out.push(Monomial::from_exponents(exps.to_vec()));
        }
        return;
    }
    let var = nv - 1 - depth;
    let range = if var == 0 { rest..=rest } else { 0..=rest };
    for e in range {
        exps[var] = e as u16;
        let blocked = leads.iter().any(|lm| {
            lm.exponents()[..var].iter().all(|&x| x == 0)
                && lm.exponents()[var..].iter().zip(&exps[var..]).all(|(a, b)| a <= b)
        });
        if !blocked {
            walk_standard(depth + 1, rest - e, exps, leads, out);
        }
    }
    exps[var] = 0;
}

pub fn hilbert_function(gb: &GroebnerBasis, k: u32) -> BigUint {
    if gb.grid().num_vars() == 0 {
        return BigUint::from(u32::from(k == 0 && !gb.is_unit_ideal()));
    }
    BigUint::from(standard_monomials(gb, k).len())
}
