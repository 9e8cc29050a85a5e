use std::collections::BTreeMap;

use serde::Serialize;

use super::TorProfile;
use crate::character::SchurCharacter;

/// Characters of the strand modules `F_k`, read off `Tor` at one rank `n₀`:
/// `F_k` in degree `p + k` is the transpose of `Tor_p` in that degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandFamily {
    /// Rank the strands were extracted at.
    pub n0: u32,
    strands: BTreeMap<u32, SchurCharacter>,
    /// Set once the extraction at `n₀ − 1` agreed after restriction.
    stable: bool,
}

/// Places `dagger(Tor_{p, p+k})` into strand `k`.
pub fn extract_strands(t: &TorProfile) -> StrandFamily {
    let truncation = t.iter().map(|(_, c)| c.truncation()).max().unwrap_or(0);
    let mut strands: BTreeMap<u32, SchurCharacter> = BTreeMap::new();
    for (p, theta) in t.iter() {
        for (lambda, m) in theta.dagger().terms() {
            let k = lambda.size() - p;
            strands.entry(k).or_insert_with(|| SchurCharacter::zero(truncation)).add_term(lambda.clone(), m);
        }
    }
    StrandFamily { n0: t.rank(), strands, stable: false }
}

impl StrandFamily {
    pub fn strand(&self, k: u32) -> Option<&SchurCharacter> {
        self.strands.get(&k)
    }

    /// Non-zero strands in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &SchurCharacter)> {
        self.strands.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Restricts every strand to partitions with at most `n` columns, i.e.
    /// to what is visible at rank `n`.
    pub fn restrict(&self, n: u32) -> BTreeMap<u32, SchurCharacter> {
        self.strands
            .iter()
            .map(|(&k, c)| (k, c.restrict_columns(n)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Compares with the extraction one rank lower. Agreement after
    /// restriction to `n₀ − 1` columns marks this family stable.
    pub fn confirm_with(&mut self, lower: &StrandFamily) -> bool {
        let agree = lower.n0 + 1 == self.n0 && {
            let mine = self.restrict(lower.n0);
            let theirs = lower.restrict(lower.n0);
            mine.len() == theirs.len()
                && mine.iter().zip(&theirs).all(|((k1, a), (k2, b))| {
                    k1 == k2 && a.terms().collect::<Vec<_>>() == b.terms().collect::<Vec<_>>()
                })
        };
        self.stable = agree;
        agree
    }
}

#[cfg(test)]
mod tests {
    use super::super::koszul_tor;
    use super::*;
    use crate::partition::Partition;
    use crate::poly::{Ideal, MonomialOrder, ResourceLimits, VariableGrid};

    #[test]
    fn residue_field_strand_is_sym() {
        let limits = ResourceLimits::default();
        let m = Ideal::maximal(VariableGrid::new(1, 3), MonomialOrder::GRevLex);
        let s = extract_strands(&koszul_tor(&m, &limits).unwrap());
        assert_eq!(s.iter().count(), 1);
        let f0 = s.strand(0).unwrap();
        for p in 0..=3 {
            assert_eq!(f0.multiplicity(&Partition::single_row(p)), 1);
        }
        assert_eq!(f0.len(), 4);
    }

    #[test]
    fn free_module_has_trivial_strand() {
        let limits = ResourceLimits::default();
        let s = extract_strands(&koszul_tor(&Ideal::zero(VariableGrid::new(2, 2)), &limits).unwrap());
        assert_eq!(s.iter().count(), 1);
        assert_eq!(s.strand(0).unwrap().to_string(), "s[]");
    }

    #[test]
    fn stabilization_check() {
        let limits = ResourceLimits::default();
        let tor = |n| koszul_tor(&Ideal::maximal(VariableGrid::new(1, n), MonomialOrder::GRevLex), &limits).unwrap();
        let mut hi = extract_strands(&tor(4));
        let lo = extract_strands(&tor(3));
        assert!(hi.confirm_with(&lo));
        assert!(hi.is_stable());
        let mut skip = extract_strands(&tor(4));
        assert!(!skip.confirm_with(&extract_strands(&tor(2))));
    }
}
