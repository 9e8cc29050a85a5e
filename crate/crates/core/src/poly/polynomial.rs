use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder, VariableGrid};

pub type Coeff = BigRational;

/// A sparse polynomial over `ℚ` in the variables of a [`VariableGrid`],
/// with terms kept in strictly decreasing order for its monomial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    grid: VariableGrid,
    order: MonomialOrder,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(grid: VariableGrid, order: MonomialOrder) -> Self {
        Polynomial { grid, order, terms: Vec::new() }
    }

    pub fn constant(grid: VariableGrid, order: MonomialOrder, c: Coeff) -> Self {
        Self::monomial(grid, order, Monomial::one(grid.num_vars()), c)
    }

    pub fn monomial(grid: VariableGrid, order: MonomialOrder, m: Monomial, c: Coeff) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { grid, order, terms }
    }

    /// The variable `x_{i,j}` (1-based). Panics if out of range.
    pub fn var(grid: VariableGrid, order: MonomialOrder, i: u32, j: u32) -> Self {
        let idx = grid.index(i, j).expect("variable outside the grid");
        Self::monomial(grid, order, Monomial::variable(grid.num_vars(), idx), Coeff::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(grid: VariableGrid, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { grid, order, terms: merged }
    }

    pub fn grid(&self) -> VariableGrid {
        self.grid
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// True for a non-zero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// True when every term has the same `GL_n`-torus weight.
    pub fn is_column_homogeneous(&self) -> bool {
        let mut weights = self.terms.iter().map(|(m, _)| m.column_weight(&self.grid));
        match weights.next() {
            Some(first) => weights.all(|w| w == first),
            None => true,
        }
    }

    /// True when every term has the same weight for both tori.
    pub fn is_bihomogeneous(&self) -> bool {
        let key = |m: &Monomial| (m.row_weight(&self.grid), m.column_weight(&self.grid));
        let mut weights = self.terms.iter().map(|(m, _)| key(m));
        match weights.next() {
            Some(first) => weights.all(|w| w == first),
            None => true,
        }
    }

    /// Re-sorts the terms for another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(self.grid, order, self.terms.iter().cloned())
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.grid, self.order);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { grid: self.grid, order: self.order, terms }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.grid, self.order);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { grid: self.grid, order: self.order, terms }
    }

    /// `self + c · m · other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, m: &Monomial, c: &Coeff) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, x)| (t.mul(m), x * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => self.order.cmp(ma, mb),
            };
            match step {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (ma, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                }
            }
        }
        Polynomial { grid: self.grid, order: self.order, terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &Monomial::one(self.grid.num_vars()), &Coeff::one())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &Monomial::one(self.grid.num_vars()), &-Coeff::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.grid, self.order);
        for (m, c) in &other.terms {
            acc = acc.add_scaled(self, m, c);
        }
        acc
    }

    /// Applies a variable substitution `x_v ↦ x_{perm[v]}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u16; m.num_vars()];
            for (v, &e) in m.exponents().iter().enumerate() {
                exps[perm[v]] += e;
            }
            (Monomial::from_exponents(exps), c.clone())
        });
        Polynomial::from_terms(self.grid, self.order, terms)
    }

    /// The derivation `Σ_i x_{i,to} ∂/∂x_{i,from}` (the `gl_n` operator
    /// `E_{to,from}` acting on columns), for 0-based columns.
    pub fn column_operator(&self, to: usize, from: usize) -> Polynomial {
        let grid = self.grid;
        let n = grid.n as usize;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            for row in 0..grid.d as usize {
                let src = row * n + from;
                let e = m.exponents()[src];
                if e == 0 {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[src] -= 1;
                exps[row * n + to] += 1;
                terms.push((Monomial::from_exponents(exps), c * Coeff::from_integer(e.into())));
            }
        }
        Polynomial::from_terms(grid, self.order, terms)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, grid: &VariableGrid, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let (i, j) = grid.position(v);
        write!(f, "x[{i},{j}]")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.grid, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
