//! Buchberger's algorithm with the product and chain criteria, producing
//! reduced Gröbner bases over `ℚ`.

use std::collections::HashSet;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ideal::Ideal;
use super::monomial::{Monomial, MonomialOrder, VariableGrid};
use super::polynomial::{Coeff, Polynomial};

/// Hard ceilings on intermediate sizes. Exceeding one aborts the
/// computation with [`GroebnerError::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLimits {
    /// Maximum number of polynomials in a basis (also bounds the number of
    /// generators in one level of a resolution).
    pub max_basis: usize,
    /// Maximum number of terms in any intermediate polynomial.
    pub max_monomials: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits { max_basis: 50_000, max_monomials: 500_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource limit exceeded: {what} reached {value} (limit {limit})")]
    ResourceLimit { what: &'static str, value: usize, limit: usize },
    #[error("polynomial lives on a {found:?} grid with order {found_order}, expected {expected:?} with {expected_order}")]
    Mismatch { expected: VariableGrid, expected_order: MonomialOrder, found: VariableGrid, found_order: MonomialOrder },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    grid: VariableGrid,
    order: MonomialOrder,
    /// Monic, inter-reduced, sorted by increasing leading monomial.
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn grid(&self) -> VariableGrid {
        self.grid
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("basis elements are non-zero"))
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(Polynomial::is_unit)
    }

    /// True when no leading monomial divides `m`.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|lm| lm.divides(m))
    }

    fn check(&self, f: &Polynomial) -> Result<(), GroebnerError> {
        if f.grid() != self.grid || f.order() != self.order {
            return Err(GroebnerError::Mismatch {
                expected: self.grid,
                expected_order: self.order,
                found: f.grid(),
                found_order: f.order(),
            });
        }
        Ok(())
    }

    /// The unique remainder of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        self.check(f)?;
        reduce(f, &self.basis, usize::MAX).map(|(r, _)| r)
    }

    /// Division with remainder: `f = Σ q_i g_i + r`, with the quotients
    /// indexed like [`polynomials`](Self::polynomials).
    pub fn divide(&self, f: &Polynomial) -> Result<(Vec<Polynomial>, Polynomial), GroebnerError> {
        self.check(f)?;
        let mut quotients = vec![Polynomial::zero(self.grid, self.order); self.basis.len()];
        let mut rest = f.clone();
        let mut remainder = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            match self.basis.iter().position(|g| g.leading_monomial().unwrap().divides(&m)) {
                Some(i) => {
                    let g = &self.basis[i];
                    let (lm, lc) = g.leading_term().unwrap();
                    let q = lm.quotient_of(&m).unwrap();
                    let coeff = &c / lc;
                    quotients[i] = quotients[i].add(&Polynomial::monomial(self.grid, self.order, q.clone(), coeff.clone()));
                    rest = rest.add_scaled(g, &q, &-coeff);
                }
                None => {
                    remainder.push((m.clone(), c.clone()));
                    rest = rest.add_scaled(&Polynomial::monomial(self.grid, self.order, m, c), &Monomial::one(self.grid.num_vars()), &-Coeff::one());
                }
            }
        }
        Ok((quotients, Polynomial::from_terms(self.grid, self.order, remainder)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Full reduction of `f` by `basis`. Returns the remainder and the number of
/// reduction steps taken.
fn reduce(f: &Polynomial, basis: &[Polynomial], max_monomials: usize) -> Result<(Polynomial, usize), GroebnerError> {
    let grid = f.grid();
    let order = f.order();
    let one = Monomial::one(grid.num_vars());
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, Coeff)> = Vec::new();
    let mut steps = 0;
    while let Some((m, c)) = rest.leading_term().cloned() {
        if rest.len() > max_monomials {
            return Err(GroebnerError::ResourceLimit { what: "polynomial terms", value: rest.len(), limit: max_monomials });
        }
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let q = lm.quotient_of(&m).unwrap();
                rest = rest.add_scaled(g, &q, &(-(&c / lc)));
                steps += 1;
            }
            None => {
                let lead = Polynomial::monomial(grid, order, m.clone(), c.clone());
                rest = rest.add_scaled(&lead, &one, &-Coeff::one());
                remainder.push((m, c));
            }
        }
    }
    Ok((Polynomial::from_terms(grid, order, remainder), steps))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn push(h: Polynomial, basis: &mut Vec<Polynomial>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>) {
    let h = h.monic();
    let j = basis.len();
    let lm = h.leading_monomial().unwrap().clone();
    for (i, g) in basis.iter().enumerate() {
        let lcm = g.leading_monomial().unwrap().lcm(&lm);
        pairs.push(Pair { i, j, lcm });
        pending.insert((i, j));
    }
    basis.push(h);
}

/// Reduced Gröbner basis of `ideal` for `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, limits: &ResourceLimits) -> Result<GroebnerBasis, GroebnerError> {
    let grid = ideal.grid();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for g in ideal.generators() {
        let g = g.with_order(order);
        if g.is_zero() {
            continue;
        }
        let (r, _) = reduce(&g, &basis, limits.max_monomials)?;
        if !r.is_zero() {
            check_size(basis.len() + 1, limits)?;
            push(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        // normal selection strategy; ties broken by index for determinism
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let lm_i = basis[i].leading_monomial().unwrap();
        let lm_j = basis[j].leading_monomial().unwrap();
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &lcm);
        let (r, _) = reduce(&s, &basis, limits.max_monomials)?;
        if !r.is_zero() {
            check_size(basis.len() + 1, limits)?;
            push(r, &mut basis, &mut pairs, &mut pending);
        }
    }

    Ok(GroebnerBasis { grid, order, basis: inter_reduce(basis, limits)? })
}

fn check_size(size: usize, limits: &ResourceLimits) -> Result<(), GroebnerError> {
    if size > limits.max_basis {
        return Err(GroebnerError::ResourceLimit { what: "basis size", value: size, limit: limits.max_basis });
    }
    Ok(())
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let (lf, cf) = f.leading_term().unwrap();
    let (lg, cg) = g.leading_term().unwrap();
    let a = lf.quotient_of(lcm).unwrap();
    let b = lg.quotient_of(lcm).unwrap();
    f.mul_term(&a, &cf.recip()).add_scaled(g, &b, &-cg.recip())
}

fn inter_reduce(basis: Vec<Polynomial>, limits: &ResourceLimits) -> Result<Vec<Polynomial>, GroebnerError> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading_monomial().unwrap();
            k != idx && lh.divides(lm) && (lh != lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let g = &minimal[idx];
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = g.sub(&Polynomial::monomial(g.grid(), g.order(), lm.clone(), lc.clone()));
        let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, h)| h.clone()).collect();
        let (tail, _) = reduce(&tail, &others, limits.max_monomials)?;
        let full = tail.add(&Polynomial::monomial(g.grid(), g.order(), lm, lc));
        reduced.push(full.monic());
    }
    let order = reduced.first().map(|g| g.order()).unwrap_or_default();
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    debug_assert!(reduced.iter().all(|g| g.leading_term().unwrap().1.is_one()));
    Ok(reduced)
}

/// Checks Buchberger's criterion directly: every S-polynomial reduces to
/// zero. Used by tests as an independent witness.
pub fn is_groebner_basis(polys: &[Polynomial]) -> bool {
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let lcm = polys[i].leading_monomial().unwrap().lcm(polys[j].leading_monomial().unwrap());
            let s = s_polynomial(&polys[i], &polys[j], &lcm);
            match reduce(&s, polys, usize::MAX) {
                Ok((r, _)) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}
