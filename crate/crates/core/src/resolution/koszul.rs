//! Tor of `A/I` against the residue field as homology of the Koszul complex
//! `A/I ⊗ Λ•(x)`, computed one torus weight at a time.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{proper_basis, BettiTable, ResolutionError};
use crate::character::{weights_to_schur, SchurCharacter, WeightMultiplicity};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{standard_monomials, Coeff, GroebnerBasis, Ideal, Monomial, Polynomial, ResourceLimits, VariableGrid};

/// How the Koszul complex is split before taking homology. Finer gradings
/// give smaller linear algebra problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Total degree only.
    Total,
    /// `GL_n` torus weight (exponent sums per column).
    Column,
    /// Row and column weights together.
    Bi,
}

impl Grading {
    /// Finest grading all generators are homogeneous for.
    pub fn finest_for(ideal: &Ideal) -> Grading {
        let gens = ideal.generators();
        if gens.iter().all(Polynomial::is_bihomogeneous) {
            Grading::Bi
        } else if gens.iter().all(Polynomial::is_column_homogeneous) {
            Grading::Column
        } else {
            Grading::Total
        }
    }
}

type Cell = (u128, Monomial);

struct Koszul<'a> {
    gb: &'a GroebnerBasis,
    grid: VariableGrid,
    grading: Grading,
    dominant_only: bool,
    nv: usize,
    max_gen_degree: u32,
    lcm_degree: u32,
    standard: HashMap<u32, Vec<Monomial>>,
    normal_forms: HashMap<(usize, Monomial), Vec<(Monomial, Coeff)>>,
}

impl<'a> Koszul<'a> {
    fn new(gb: &'a GroebnerBasis, grading: Grading, dominant_only: bool) -> Self {
        let grid = gb.grid();
        let nv = grid.num_vars();
        let lcm = gb.leading_monomials().fold(Monomial::one(nv), |acc, m| acc.lcm(m));
        Koszul {
            gb,
            grid,
            grading,
            dominant_only,
            nv,
            max_gen_degree: gb.leading_monomials().map(Monomial::degree).max().unwrap_or(0),
            lcm_degree: lcm.degree(),
            standard: HashMap::new(),
            normal_forms: HashMap::new(),
        }
    }

    fn weight(&self, m: &Monomial) -> Vec<u32> {
        match self.grading {
            Grading::Total => vec![m.degree()],
            Grading::Column => m.column_weight(&self.grid),
            Grading::Bi => {
                let mut w = m.row_weight(&self.grid);
                w.extend(m.column_weight(&self.grid));
                w
            }
        }
    }

    fn column_part<'w>(&self, w: &'w [u32]) -> &'w [u32] {
        match self.grading {
            Grading::Bi => &w[self.grid.d as usize..],
            _ => w,
        }
    }

    /// Largest internal degree of `Tor_p`: Betti numbers of `I` are bounded
    /// by those of its initial ideal, whose Taylor resolution lives in
    /// degrees of lcms of `p` minimal generators.
    fn max_degree(&self, p: usize) -> u32 {
        if p == 0 {
            0
        } else {
            (p as u32 * self.max_gen_degree).min(self.lcm_degree)
        }
    }

    fn standard(&mut self, k: u32) -> &[Monomial] {
        let gb = self.gb;
        self.standard.entry(k).or_insert_with(|| standard_monomials(gb, k))
    }

    fn normal_form(&mut self, var: usize, s: &Monomial) -> &[(Monomial, Coeff)] {
        let key = (var, s.clone());
        if !self.normal_forms.contains_key(&key) {
            let f = Polynomial::monomial(self.grid, self.gb.order(), s.mul_var(var), Coeff::one());
            let nf = self.gb.normal_form(&f).expect("same grid and order").terms().to_vec();
            self.normal_forms.insert(key.clone(), nf);
        }
        &self.normal_forms[&key]
    }

    /// Basis of `C_p` in total degree `j`, grouped by weight.
    fn chains(&mut self, p: usize, j: u32) -> HashMap<Vec<u32>, Vec<Cell>> {
        let mut out: HashMap<Vec<u32>, Vec<Cell>> = HashMap::new();
        if p as u32 > j || p > self.nv {
            return out;
        }
        let standard = self.standard(j - p as u32).to_vec();
        let mut subsets = Vec::new();
        subsets_of_size(self.nv, p, 0, 0, &mut subsets);
        for mask in subsets {
            let sm = mask_monomial(self.nv, mask);
            let sw = self.weight(&sm);
            for s in &standard {
                let w: Vec<u32> = sw.iter().zip(self.weight(s)).map(|(a, b)| a + b).collect();
                if self.dominant_only && self.column_part(&w).windows(2).any(|x| x[0] < x[1]) {
                    continue;
                }
                out.entry(w).or_default().push((mask, s.clone()));
            }
        }
        out
    }

    /// Rank of `∂_p : C_p(w) → C_{p−1}(w)`.
    fn boundary_rank(&mut self, source: &[Cell], target: &[Cell]) -> usize {
        if source.is_empty() || target.is_empty() {
            return 0;
        }
        let index: HashMap<&Cell, usize> = target.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut ech = Echelon::new();
        for (mask, s) in source {
            let mut row: Vec<(usize, Coeff)> = Vec::new();
            let mut sign = Coeff::one();
            for v in 0..self.nv {
                if mask & (1u128 << v) == 0 {
                    continue;
                }
                let rest = mask & !(1u128 << v);
                for (m, c) in self.normal_form(v, s).to_vec() {
                    let col = index[&(rest, m)];
                    row.push((col, &sign * c));
                }
                sign = -sign;
            }
            row.sort_by_key(|(c, _)| *c);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !num_traits::Zero::is_zero(v));
            ech.insert(merged);
        }
        ech.rank()
    }

    /// `dim Tor_p(A/I)_{j, w}` for every `p`, `j` and weight `w`.
    fn homology(&mut self, limits: &ResourceLimits) -> Result<BTreeMap<(usize, Vec<u32>), u64>, ResolutionError> {
        let mut out = BTreeMap::new();
        out.insert((0, self.weight(&Monomial::one(self.nv))), 1);
        if self.max_gen_degree == 0 {
            return Ok(out);
        }
        for j in 1..=self.lcm_degree {
            let p_min = j.div_ceil(self.max_gen_degree) as usize;
            let p_max = (j as usize).min(self.nv);
            if p_min > p_max {
                continue;
            }
            let lo = p_min.saturating_sub(1);
            let hi = (p_max + 1).min(self.nv);
            let mut chains: BTreeMap<usize, HashMap<Vec<u32>, Vec<Cell>>> = BTreeMap::new();
            for p in lo..=hi {
                let c = self.chains(p, j);
                let size: usize = c.values().map(Vec::len).sum();
                if size > limits.max_monomials {
                    return Err(ResolutionError::ResourceLimit { what: "Koszul chain dimension", value: size, limit: limits.max_monomials });
                }
                chains.insert(p, c);
            }
            let empty = HashMap::new();
            let mut weights: Vec<Vec<u32>> =
                (p_min..=p_max).flat_map(|p| chains.get(&p).unwrap_or(&empty).keys().cloned()).collect();
            weights.sort();
            weights.dedup();
            for w in weights {
                let cell = |p: usize| -> Vec<Cell> {
                    chains.get(&p).and_then(|c| c.get(&w)).cloned().unwrap_or_default()
                };
                let mut rank_cache: HashMap<usize, usize> = HashMap::new();
                for p in p_min..=p_max {
                    let cp = cell(p);
                    if cp.is_empty() {
                        continue;
                    }
                    let r_in = match rank_cache.get(&p) {
                        Some(&r) => r,
                        None if p == 0 => 0,
                        None => self.boundary_rank(&cp, &cell(p - 1)),
                    };
                    let r_out = if p < self.nv { self.boundary_rank(&cell(p + 1), &cp) } else { 0 };
                    rank_cache.insert(p + 1, r_out);
                    let h = cp.len() - r_in - r_out;
                    if h > 0 {
                        out.insert((p, w.clone()), h as u64);
                    }
                }
            }
        }
        Ok(out)
    }

    fn degree_of(&self, w: &[u32]) -> u32 {
        self.column_part(w).iter().sum()
    }
}

fn subsets_of_size(nv: usize, p: usize, start: usize, mask: u128, out: &mut Vec<u128>) {
    if p == 0 {
        out.push(mask);
        return;
    }
    for v in start..nv {
        if nv - v < p {
            break;
        }
        subsets_of_size(nv, p - 1, v + 1, mask | (1u128 << v), out);
    }
}

fn mask_monomial(nv: usize, mask: u128) -> Monomial {
    Monomial::from_exponents((0..nv).map(|v| ((mask >> v) & 1) as u16).collect())
}

/// Betti numbers of `A/I` from Koszul homology, for any homogeneous ideal.
pub fn koszul_betti(ideal: &Ideal, limits: &ResourceLimits) -> Result<BettiTable, ResolutionError> {
    let gb = proper_basis(ideal, limits)?;
    if ideal.num_vars() > 128 {
        return Err(crate::poly::IdealError::TooManyVariables(ideal.num_vars()).into());
    }
    let mut k = Koszul::new(&gb, Grading::finest_for(ideal), false);
    let homology = k.homology(limits)?;
    let mut table = BettiTable::new(ideal.num_vars());
    for ((p, w), dim) in homology {
        let j = match k.grading {
            Grading::Total => w[0],
            _ => k.degree_of(&w),
        };
        let old = table.get(p as u32, j);
        table.set(p as u32, j, old + dim);
    }
    Ok(table)
}

/// `GL_n`-characters of `Tor_p(A(ℂⁿ)/I, ℚ)`, graded by partition size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorProfile {
    rank: u32,
    num_vars: usize,
    tor: BTreeMap<u32, SchurCharacter>,
}

impl TorProfile {
    /// The rank `n` of `GL_n`.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn tor(&self, p: u32) -> Option<&SchurCharacter> {
        self.tor.get(&p)
    }

    /// Non-zero `Tor_p` in increasing `p`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &SchurCharacter)> {
        self.tor.iter().map(|(&p, c)| (p, c))
    }

    pub fn pdim(&self) -> u32 {
        self.tor.keys().copied().max().unwrap_or(0)
    }

    /// Depth as `dn` minus the top non-vanishing Koszul homology.
    pub fn depth(&self) -> u32 {
        self.num_vars as u32 - self.pdim()
    }

    /// Collapses each character to dimensions via `dim S_λ(ℂⁿ)`.
    pub fn betti_table(&self) -> BettiTable {
        let mut table = BettiTable::new(self.num_vars);
        for (&p, theta) in &self.tor {
            for (lambda, m) in theta.terms() {
                let dim = lambda.dim_schur(self.rank).to_u64().expect("Betti number overflows u64");
                let j = lambda.size();
                let old = table.get(p, j);
                table.set(p, j, old + dim * m as u64);
            }
        }
        table
    }
}

impl Serialize for TorProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            p: u32,
            character: &'a SchurCharacter,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            rank: u32,
            tor: Vec<Entry<'a>>,
        }
        Repr { rank: self.rank, tor: self.tor.iter().map(|(&p, character)| Entry { p, character }).collect() }.serialize(s)
    }
}

/// Checks that `I` is stable under `GL_n` acting on columns: generators are
/// torus-homogeneous and every operator `E_{to,from}` keeps them in `I`.
pub fn check_gl_stable(ideal: &Ideal, gb: &GroebnerBasis) -> Result<(), ResolutionError> {
    for (index, g) in ideal.generators().iter().enumerate() {
        if !g.is_column_homogeneous() {
            return Err(ResolutionError::TorusUnstable { index, generator: g.to_string() });
        }
    }
    let n = ideal.grid().n as usize;
    for (index, g) in ideal.generators().iter().enumerate() {
        let g = g.with_order(gb.order());
        for to in 0..n {
            for from in 0..n {
                if to != from && !gb.contains(&g.column_operator(to, from)).expect("same grid and order") {
                    return Err(ResolutionError::NotGlStable { index, to: to + 1, from: from + 1 });
                }
            }
        }
    }
    Ok(())
}

/// Schur decomposition of Tor for a `GL_n`-stable homogeneous ideal. Only
/// dominant torus weights are computed; the row index of the grid is summed
/// out.
pub fn koszul_tor(ideal: &Ideal, limits: &ResourceLimits) -> Result<TorProfile, ResolutionError> {
    let gb = proper_basis(ideal, limits)?;
    check_gl_stable(ideal, &gb)?;
    let grading = match Grading::finest_for(ideal) {
        Grading::Bi => Grading::Bi,
        _ => Grading::Column,
    };
    let n = ideal.grid().n;
    let mut k = Koszul::new(&gb, grading, true);
    let homology = k.homology(limits)?;
    let mut per_p: BTreeMap<usize, WeightMultiplicity> = BTreeMap::new();
    for ((p, w), dim) in homology {
        let col = k.column_part(&w).to_vec();
        per_p.entry(p).or_insert_with(|| WeightMultiplicity::new(n as usize)).add(col, dim)?;
    }
    let mut tor = BTreeMap::new();
    for (p, weights) in per_p {
        let theta = weights_to_schur(&weights)?.with_truncation(k.max_degree(p));
        if !theta.is_zero() {
            tor.insert(p as u32, theta);
        }
    }
    Ok(TorProfile { rank: n, num_vars: ideal.num_vars(), tor })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ideal, minors};
    use super::super::minimal_free_resolution;
    use super::*;
    use crate::partition::Partition;
    use crate::poly::MonomialOrder;

    #[test]
    fn residue_field_is_exterior_powers() {
        let limits = ResourceLimits::default();
        let m = Ideal::maximal(VariableGrid::new(1, 2), MonomialOrder::GRevLex);
        let t = koszul_tor(&m, &limits).unwrap();
        for p in 0..=2u32 {
            let theta = t.tor(p).unwrap();
            assert_eq!(theta.len(), 1);
            assert_eq!(theta.multiplicity(&Partition::single_column(p as usize)), 1);
        }
        assert_eq!(t.pdim(), 2);
    }

    #[test]
    fn minors_tor1_is_second_exterior_power() {
        let limits = ResourceLimits::default();
        let t = koszul_tor(&minors(2, 3), &limits).unwrap();
        let t1 = t.tor(1).unwrap();
        assert_eq!(t1.to_string(), "s[1,1]");
        assert_eq!(t.betti_table(), minimal_free_resolution(&minors(2, 3), &limits).unwrap());
    }

    #[test]
    fn koszul_betti_matches_schreyer() {
        let limits = ResourceLimits::default();
        for i in [
            minors(2, 3),
            minors(3, 3),
            ideal(2, 2, &["x[1,1]^2", "x[1,1]*x[2,2] + x[1,2]^2"]),
            ideal(2, 2, &["x[1,1]^2 + x[2,2]*x[1,2]", "x[2,1]^3"]),
        ] {
            assert_eq!(koszul_betti(&i, &limits).unwrap(), minimal_free_resolution(&i, &limits).unwrap());
        }
    }

    #[test]
    fn unstable_ideals_are_rejected() {
        let limits = ResourceLimits::default();
        let mixed = ideal(1, 2, &["x[1,1]^2 + x[1,2]^2"]);
        assert!(matches!(koszul_tor(&mixed, &limits), Err(ResolutionError::TorusUnstable { index: 0, .. })));
        let corner = ideal(2, 2, &["x[1,1]"]);
        assert!(matches!(koszul_tor(&corner, &limits), Err(ResolutionError::NotGlStable { index: 0, .. })));
    }
}
