//! Schreyer resolutions: syzygies of a Gröbner basis form a Gröbner basis
//! for the induced order, so the frame can be iterated level by level. The
//! result is free but usually not minimal; minimal Betti numbers are read off
//! the constant parts of the differentials.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;

use super::{BettiTable, ResolutionError};
use crate::linalg::{self, SparseRow};
use crate::poly::{Coeff, GroebnerBasis, Monomial, MonomialOrder, ResourceLimits};

#[derive(Clone)]
struct Term {
    /// `mono · K[comp]`, the monomial the Schreyer order compares first.
    key: Monomial,
    comp: usize,
    mono: Monomial,
    coeff: Coeff,
}

/// Basis of one free module with its induced order.
struct Frame {
    keys: Vec<Monomial>,
    /// Tie-break for equal keys; smaller rank is the greater term.
    ranks: Vec<usize>,
    /// Chains of component indices down to `F_0`; ranks sort these.
    chains: Vec<Vec<usize>>,
    degrees: Vec<u32>,
}

impl Frame {
    fn cmp(&self, order: MonomialOrder, a: &Term, b: &Term) -> Ordering {
        order.cmp(&a.key, &b.key).then_with(|| self.ranks[b.comp].cmp(&self.ranks[a.comp]))
    }

    fn from_chains(keys: Vec<Monomial>, chains: Vec<Vec<usize>>) -> Frame {
        let mut idx: Vec<usize> = (0..chains.len()).collect();
        idx.sort_by(|&a, &b| chains[a].cmp(&chains[b]));
        let mut ranks = vec![0; chains.len()];
        for (r, i) in idx.into_iter().enumerate() {
            ranks[i] = r;
        }
        let degrees = keys.iter().map(Monomial::degree).collect();
        Frame { keys, ranks, chains, degrees }
    }
}

/// A vector in a free module, terms strictly decreasing.
#[derive(Clone)]
struct Element {
    terms: Vec<Term>,
}

impl Element {
    fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    fn from_terms(frame: &Frame, order: MonomialOrder, mut terms: Vec<Term>) -> Element {
        terms.sort_by(|a, b| frame.cmp(order, b, a));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        Element { terms: merged }
    }

    /// `self + c · m · other`.
    fn add_scaled(&self, other: &Element, m: &Monomial, c: &Coeff, frame: &Frame, order: MonomialOrder) -> Element {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|t| Term { key: t.key.mul(m), comp: t.comp, mono: t.mono.mul(m), coeff: &t.coeff * c })
            .peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => frame.cmp(order, x, y),
            };
            match step {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = &x.coeff + y.coeff;
                    if !s.is_zero() {
                        out.push(Term { coeff: s, ..x.clone() });
                    }
                }
            }
        }
        Element { terms: out }
    }
}

/// The frame of a (non-minimal) free resolution of `A/I` together with the
/// differentials: `images[p]` lists `d_{p+1}` of the basis of `F_{p+1}`.
pub(crate) struct SchreyerResolution {
    frames: Vec<Frame>,
    images: Vec<Vec<Element>>,
}

pub(crate) fn schreyer_resolution(gb: &GroebnerBasis, limits: &ResourceLimits) -> Result<SchreyerResolution, ResolutionError> {
    let order = gb.order();
    let nv = gb.grid().num_vars();
    let base = Frame::from_chains(vec![Monomial::one(nv)], vec![vec![0]]);
    let mut gens: Vec<Element> = gb
        .polynomials()
        .iter()
        .map(|g| Element {
            terms: g
                .terms()
                .iter()
                .map(|(m, c)| Term { key: m.clone(), comp: 0, mono: m.clone(), coeff: c.clone() })
                .collect(),
        })
        .collect();
    sort_for_termination(&mut gens);

    let mut frames = vec![base];
    let mut images: Vec<Vec<Element>> = Vec::new();
    while !gens.is_empty() {
        if images.len() > nv {
            return Err(ResolutionError::LengthExceeded { bound: nv });
        }
        if gens.len() > limits.max_basis {
            return Err(ResolutionError::ResourceLimit { what: "resolution rank", value: gens.len(), limit: limits.max_basis });
        }
        let below = frames.last().unwrap();
        let keys: Vec<Monomial> = gens.iter().map(|g| g.lead().unwrap().key.clone()).collect();
        let chains: Vec<Vec<usize>> = gens
            .iter()
            .enumerate()
            .map(|(a, g)| {
                let mut chain = below.chains[g.lead().unwrap().comp].clone();
                chain.push(a);
                chain
            })
            .collect();
        let frame = Frame::from_chains(keys, chains);
        let mut next = syzygies(&gens, below, &frame, order, limits)?;
        sort_for_termination(&mut next);
        frames.push(frame);
        images.push(std::mem::replace(&mut gens, next));
    }
    Ok(SchreyerResolution { frames, images })
}

// Within one lead component, lead monomials must decrease in lex order; this
// is what bounds the length of the Schreyer resolution.
fn sort_for_termination(elems: &mut [Element]) {
    elems.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        la.comp.cmp(&lb.comp).then_with(|| MonomialOrder::Lex.cmp(&lb.mono, &la.mono))
    });
}

/// Syzygies of `gens` (a Gröbner basis in the module with frame `below`),
/// expressed in the free module with frame `frame`.
fn syzygies(
    gens: &[Element],
    below: &Frame,
    frame: &Frame,
    order: MonomialOrder,
    limits: &ResourceLimits,
) -> Result<Vec<Element>, ResolutionError> {
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, g) in gens.iter().enumerate() {
        by_comp.entry(g.lead().unwrap().comp).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        let li = gi.lead().unwrap();
        // minimal generators of the quotient ideal (lm_j : lm_i), j > i
        let mut cands: Vec<(Monomial, usize)> = by_comp[&li.comp]
            .iter()
            .filter(|&&j| j > i)
            .map(|&j| (li.mono.quotient_of(&li.mono.lcm(&gens[j].lead().unwrap().mono)).unwrap(), j))
            .collect();
        cands.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.1.cmp(&b.1)));
        let mut minimal: Vec<(Monomial, usize)> = Vec::new();
        for (m, j) in cands {
            if !minimal.iter().any(|(q, _)| q.divides(&m)) {
                minimal.push((m, j));
            }
        }
        for (mi, j) in minimal {
            let lj = gens[j].lead().unwrap();
            let mj = lj.mono.quotient_of(&li.mono.mul(&mi)).unwrap();
            let ci = li.coeff.recip();
            let cj = -lj.coeff.recip();
            let zero = Element { terms: Vec::new() };
            let s = zero.add_scaled(gi, &mi, &ci, below, order).add_scaled(&gens[j], &mj, &cj, below, order);
            let mut syz = vec![term(frame, i, mi, ci), term(frame, j, mj, cj)];
            divide(s, gens, &by_comp, below, order, limits, |k, q, c| syz.push(term(frame, k, q, -c)))?;
            out.push(Element::from_terms(frame, order, syz));
            if out.len() > limits.max_basis {
                return Err(ResolutionError::ResourceLimit { what: "resolution rank", value: out.len(), limit: limits.max_basis });
            }
        }
    }
    Ok(out)
}

fn term(frame: &Frame, comp: usize, mono: Monomial, coeff: Coeff) -> Term {
    Term { key: mono.mul(&frame.keys[comp]), comp, mono, coeff }
}

/// Top-reduces `f` to zero by `gens`, reporting each quotient term.
fn divide(
    mut f: Element,
    gens: &[Element],
    by_comp: &HashMap<usize, Vec<usize>>,
    frame: &Frame,
    order: MonomialOrder,
    limits: &ResourceLimits,
    mut quotient: impl FnMut(usize, Monomial, Coeff),
) -> Result<(), ResolutionError> {
    while let Some(lt) = f.lead() {
        if f.terms.len() > limits.max_monomials {
            return Err(ResolutionError::ResourceLimit { what: "syzygy terms", value: f.terms.len(), limit: limits.max_monomials });
        }
        let k = by_comp
            .get(&lt.comp)
            .and_then(|ks| ks.iter().copied().find(|&k| gens[k].lead().unwrap().mono.divides(&lt.mono)))
            .ok_or(ResolutionError::Internal("S-vector does not reduce to zero"))?;
        let lk = gens[k].lead().unwrap();
        let q = lk.mono.quotient_of(&lt.mono).unwrap();
        let c = &lt.coeff / &lk.coeff;
        f = f.add_scaled(&gens[k], &q, &-c.clone(), frame, order);
        quotient(k, q, c);
    }
    Ok(())
}

impl SchreyerResolution {
    /// Length of the (non-minimal) frame.
    #[cfg(test)]
    pub(crate) fn length(&self) -> usize {
        self.images.len()
    }

    #[cfg(test)]
    pub(crate) fn ranks(&self) -> Vec<usize> {
        self.frames.iter().map(|f| f.keys.len()).collect()
    }

    /// Minimal graded Betti numbers: `β_{p,j} = dim F_{p,j} − rank d̄_p −
    /// rank d̄_{p+1}` in degree `j`, with `d̄` the constant part of `d`.
    pub(crate) fn betti(&self, num_vars: usize) -> BettiTable {
        let levels = self.frames.len();
        // const_rank[p][j] = rank of d̄_p in degree j, for p ≥ 1
        let mut const_rank: Vec<HashMap<u32, usize>> = vec![HashMap::new(); levels + 1];
        for p in 1..levels {
            let source = &self.frames[p];
            let mut by_degree: HashMap<u32, Vec<SparseRow>> = HashMap::new();
            for (a, img) in self.images[p - 1].iter().enumerate() {
                let row: SparseRow =
                    img.terms.iter().filter(|t| t.mono.is_one()).map(|t| (t.comp, t.coeff.clone())).collect();
                if !row.is_empty() {
                    by_degree.entry(source.degrees[a]).or_default().push(row);
                }
            }
            for (j, rows) in by_degree {
                const_rank[p].insert(j, linalg::rank(rows));
            }
        }
        let mut table = BettiTable::new(num_vars);
        for (p, frame) in self.frames.iter().enumerate() {
            let mut dims: HashMap<u32, usize> = HashMap::new();
            for &j in &frame.degrees {
                *dims.entry(j).or_default() += 1;
            }
            for (j, dim) in dims {
                let r_in = const_rank[p].get(&j).copied().unwrap_or(0);
                let r_out = const_rank[p + 1].get(&j).copied().unwrap_or(0);
                table.set(p as u32, j, (dim - r_in - r_out) as u64);
            }
        }
        table
    }
}

/// Checks that consecutive differentials compose to zero: every entry of
/// `d_p ∘ d_{p+1}` vanishes. Used by tests as a witness that the frame is a
/// complex.
#[cfg(test)]
pub(crate) fn is_complex(res: &SchreyerResolution, gb: &GroebnerBasis) -> bool {
    use crate::poly::Polynomial;
    let grid = gb.grid();
    let order = gb.order();
    let as_poly = |e: &Element, comps: usize| -> Vec<Polynomial> {
        let mut v = vec![Vec::new(); comps];
        for t in &e.terms {
            v[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        v.into_iter().map(|terms| Polynomial::from_terms(grid, order, terms)).collect()
    };
    for p in 1..res.images.len() {
        let lower = &res.images[p - 1];
        let lower_polys: Vec<Vec<Polynomial>> = lower.iter().map(|e| as_poly(e, res.frames[p - 1].keys.len())).collect();
        for e in &res.images[p] {
            let coeffs = as_poly(e, lower.len());
            let width = res.frames[p - 1].keys.len();
            for c in 0..width {
                let mut acc = Polynomial::zero(grid, order);
                for (a, q) in coeffs.iter().enumerate() {
                    acc = acc.add(&q.mul(&lower_polys[a][c]));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
