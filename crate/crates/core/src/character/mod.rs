//! Formal Schur characters `Σ m_λ s_λ`, truncated at a degree.
//!
//! A [`SchurCharacter`] records multiplicities of Schur functors for every
//! partition of size at most its truncation degree; nothing is claimed
//! above that degree.

mod kostka;
mod lr;
mod weights;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

pub use kostka::kostka;
pub use lr::{count_lr_tableaux, lr_coefficient, LrCache};
pub use weights::{schur_to_weights, weights_to_schur, WeightMultiplicity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("degree {k} exceeds the truncation degree {truncation}")]
    UncertifiedDegree { k: u32, truncation: u32 },
    #[error("γ is undefined for a virtual character")]
    VirtualCharacter,
    #[error("weight data is not a polynomial character: residual at {weight:?} would become negative")]
    NotPolynomialCharacter { weight: Vec<u32> },
    #[error("weight {weight:?} does not have length {rank}")]
    WeightLength { weight: Vec<u32>, rank: usize },
    #[error("invalid rank parameters: r = {r} exceeds d = {d}")]
    RankOutOfRange { d: u32, r: u32 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct SchurCharacter {
    terms: BTreeMap<Partition, i64>,
    truncation: u32,
}

/// Result of evaluating `γ(Θ; n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma {
    pub value: u32,
    pub certified: bool,
    /// A partition attaining the maximum, if any qualifies.
    pub witness: Option<Partition>,
}

impl SchurCharacter {
    /// The zero character, complete through degree `truncation`.
    pub fn zero(truncation: u32) -> Self {
        SchurCharacter { terms: BTreeMap::new(), truncation }
    }

    /// `s_λ` truncated at `|λ|`.
    pub fn schur(lambda: Partition) -> Self {
        let truncation = lambda.size();
        let mut c = Self::zero(truncation);
        c.add_term(lambda, 1);
        c
    }

    /// `s_∅ = 1`, complete to any degree.
    pub fn one(truncation: u32) -> Self {
        let mut c = Self::zero(truncation);
        c.add_term(Partition::empty(), 1);
        c
    }

    pub fn from_terms(truncation: u32, terms: impl IntoIterator<Item = (Partition, i64)>) -> Self {
        let mut c = Self::zero(truncation);
        for (lambda, m) in terms {
            c.add_term(lambda, m);
        }
        c
    }

    /// Adds `m · s_λ`. Terms above the truncation degree are discarded.
    pub fn add_term(&mut self, lambda: Partition, m: i64) {
        if m == 0 || lambda.size() > self.truncation {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(m);
            }
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Re-labels the truncation degree, dropping terms above it.
    pub fn with_truncation(mut self, truncation: u32) -> Self {
        self.truncation = truncation;
        self.terms.retain(|lambda, _| lambda.size() <= truncation);
        self
    }

    pub fn multiplicity(&self, lambda: &Partition) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    /// Non-zero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when some multiplicity is negative (a Grothendieck-group class
    /// rather than an actual representation).
    pub fn is_virtual(&self) -> bool {
        self.terms.values().any(|&m| m < 0)
    }

    /// The degree-`k` part of the character.
    pub fn degree_part(&self, k: u32) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms().filter(move |(lambda, _)| lambda.size() == k)
    }

    /// Restricts to partitions with at most `n` columns.
    pub fn restrict_columns(&self, n: u32) -> SchurCharacter {
        let mut out = Self::zero(self.truncation);
        for (lambda, m) in self.terms() {
            if lambda.columns() <= n {
                out.add_term(lambda.clone(), m);
            }
        }
        out
    }

    /// Product in the ring of symmetric functions, via LR coefficients.
    pub fn lr_multiply(&self, other: &SchurCharacter) -> SchurCharacter {
        let truncation = self.truncation.min(other.truncation);
        let mut out = Self::zero(truncation);
        for (lambda, a) in self.terms() {
            for (mu, b) in other.terms() {
                let size = lambda.size() + mu.size();
                if size > truncation {
                    continue;
                }
                let max_rows = lambda.rows() + mu.rows();
                let max_part = lambda.columns() + mu.columns();
                for nu in Partition::all_of_size(size, max_rows, max_part) {
                    if !lambda.is_contained_in(&nu) || !mu.is_contained_in(&nu) {
                        continue;
                    }
                    let c = lr_coefficient(lambda, mu, &nu);
                    if c > 0 {
                        out.add_term(nu, c as i64 * a * b);
                    }
                }
            }
        }
        out
    }

    /// Applies `λ ↦ λ†` to every term.
    pub fn dagger(&self) -> SchurCharacter {
        let mut out = Self::zero(self.truncation);
        for (lambda, m) in self.terms() {
            out.add_term(lambda.transpose(), m);
        }
        out
    }

    /// `γ(Θ; n)`: the largest size of a partition with at most `n` columns
    /// and non-zero multiplicity. `cert_bound` is a proven upper bound for
    /// γ at this `n`; the answer is certified when the truncation degree
    /// reaches it.
    pub fn gamma(&self, n: u32, cert_bound: u32) -> Result<Gamma, CharacterError> {
        if self.is_virtual() {
            return Err(CharacterError::VirtualCharacter);
        }
        let witness = self
            .terms
            .keys()
            .filter(|lambda| lambda.columns() <= n)
            .max_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.graded_cmp(a)))
            .cloned();
        Ok(Gamma {
            value: witness.as_ref().map_or(0, Partition::size),
            certified: self.truncation >= cert_bound,
            witness,
        })
    }

    /// Dimension of the degree-`k` piece of `M(ℂⁿ)`.
    pub fn specialize_hilbert(&self, n: u32, k: u32) -> Result<BigUint, CharacterError> {
        if k > self.truncation {
            return Err(CharacterError::UncertifiedDegree { k, truncation: self.truncation });
        }
        let mut total = num_bigint::BigInt::zero();
        for (lambda, m) in self.degree_part(k) {
            total += num_bigint::BigInt::from(m) * num_bigint::BigInt::from(lambda.dim_schur(n));
        }
        Ok(total.to_biguint().expect("negative dimension from a virtual character"))
    }
}

/// Character of `A/𝔞_r` (with `A = Sym(V⊗E)`, `dim E = d`) through degree
/// `truncation`: `Σ_{ℓ(λ) ≤ r} dim S_λ(ℂ^d) · s_λ`. With `r = d` this is the
/// character of `A` itself.
///
/// # Panics
/// If a multiplicity does not fit in an `i64`.
pub fn cauchy_character(d: u32, r: u32, truncation: u32) -> Result<SchurCharacter, CharacterError> {
    if r > d {
        return Err(CharacterError::RankOutOfRange { d, r });
    }
    let mut out = SchurCharacter::zero(truncation);
    for lambda in Partition::all_up_to(truncation, r as usize, u32::MAX) {
        let dim = lambda.dim_schur(d).to_i64().expect("multiplicity overflows i64");
        out.add_term(lambda, dim);
    }
    Ok(out)
}

/// Value at `n` of the Hilbert polynomial of the Grassmannian `Gr_r(ℂ^d)` in
/// its Plücker embedding, `dim S_{(n^r)}(ℂ^d)`.
pub fn grassmannian_hilbert(d: u32, r: u32, n: u32) -> Result<BigUint, CharacterError> {
    if r > d {
        return Err(CharacterError::RankOutOfRange { d, r });
    }
    Ok(Partition::rectangle(n, r as usize).dim_schur(d))
}

impl fmt::Display for SchurCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, m)) in self.terms().enumerate() {
            let (sign, abs) = if m < 0 { ("-", -m) } else { ("+", m) };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if abs != 1 {
                write!(f, "{abs}*")?;
            }
            write!(f, "s{lambda}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SchurCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (deg ≤ {})", self.truncation)
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterRecord {
    truncation_degree: u32,
    #[serde(rename = "virtual")]
    is_virtual: bool,
    terms: Vec<(Partition, i64)>,
}

impl Serialize for SchurCharacter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CharacterRecord {
            truncation_degree: self.truncation,
            is_virtual: self.is_virtual(),
            terms: self.terms().map(|(k, v)| (k.clone(), v)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SchurCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = CharacterRecord::deserialize(deserializer)?;
        if let Some((lambda, _)) = record.terms.iter().find(|(l, _)| l.size() > record.truncation_degree) {
            return Err(serde::de::Error::custom(format!(
                "partition {lambda} exceeds truncation degree {}",
                record.truncation_degree
            )));
        }
        let c = SchurCharacter::from_terms(record.truncation_degree, record.terms);
        if c.is_virtual() != record.is_virtual {
            return Err(serde::de::Error::custom("virtual flag disagrees with multiplicities"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(parts: &[u32]) -> SchurCharacter {
        SchurCharacter::schur(p(parts))
    }

    #[test]
    fn multiply_unit_and_pieri() {
        let theta = SchurCharacter::from_terms(5, [(p(&[2, 1]), 2), (p(&[3]), 1), (p(&[]), 4)]);
        assert_eq!(SchurCharacter::one(5).lr_multiply(&theta), theta);
        let sq = s(&[1]).with_truncation(2).lr_multiply(&s(&[1]).with_truncation(2));
        assert_eq!(sq, SchurCharacter::from_terms(2, [(p(&[2]), 1), (p(&[1, 1]), 1)]));
    }

    #[test]
    fn padded_partition_has_multiplicity_one() {
        for n in 2..7u32 {
            let prod = s(&[2, 1]).with_truncation(3 + n).lr_multiply(&s(&[n]).with_truncation(3 + n));
            assert_eq!(prod.multiplicity(&p(&[2, 1]).pad(n, 1).unwrap()), 1, "n = {n}");
        }
    }

    #[test]
    fn cauchy_examples() {
        for d in 1..4 {
            assert_eq!(cauchy_character(d, 0, 6).unwrap(), SchurCharacter::one(6));
        }
        let expected = SchurCharacter::from_terms(3, [(p(&[]), 1), (p(&[1]), 2), (p(&[2]), 3), (p(&[3]), 4)]);
        assert_eq!(cauchy_character(2, 1, 3).unwrap(), expected);
        assert!(cauchy_character(2, 3, 3).is_err());
    }

    #[test]
    fn gamma_examples() {
        for (d, r) in [(1, 1), (2, 1), (3, 2), (3, 3)] {
            for n in r..6 {
                let theta = cauchy_character(d, r, r * n).unwrap();
                let g = theta.gamma(n, r * n).unwrap();
                assert_eq!(g.value, r * n);
                assert!(g.certified);
            }
        }
        assert_eq!(SchurCharacter::one(3).gamma(4, 0).unwrap().value, 0);
        let theta = SchurCharacter::from_terms(2, [(p(&[]), 1), (p(&[1]), 1), (p(&[2]), 1), (p(&[1, 1]), 1)]);
        let g = theta.gamma(1, 2).unwrap();
        assert_eq!(g.value, 2);
        assert_eq!(g.witness, Some(p(&[1, 1])));
        // truncation below the bound is not certified
        assert!(!cauchy_character(2, 1, 3).unwrap().gamma(4, 4).unwrap().certified);
        let virt = SchurCharacter::from_terms(2, [(p(&[1]), -1)]);
        assert_eq!(virt.gamma(1, 0), Err(CharacterError::VirtualCharacter));
        assert!(virt.is_virtual());
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(s(&[3]).dagger(), s(&[1, 1, 1]));
        assert_eq!(s(&[2, 1]).dagger(), s(&[2, 1]));
        let theta = cauchy_character(3, 2, 6).unwrap();
        assert_eq!(theta.dagger().dagger(), theta);
    }

    #[test]
    fn specialize_examples() {
        let full1 = cauchy_character(1, 1, 6).unwrap();
        let full3 = cauchy_character(3, 3, 6).unwrap();
        for n in 0..5u32 {
            for k in 0..=6u32 {
                assert_eq!(full1.specialize_hilbert(n, k).unwrap(), monomial_count(n, k));
                assert_eq!(full3.specialize_hilbert(n, k).unwrap(), monomial_count(3 * n, k));
            }
        }
        let det = cauchy_character(2, 1, 3).unwrap();
        assert_eq!(det.specialize_hilbert(2, 2).unwrap(), BigUint::from(9u32));
        assert_eq!(
            det.specialize_hilbert(2, 4),
            Err(CharacterError::UncertifiedDegree { k: 4, truncation: 3 })
        );
    }

    // C(vars + k - 1, k)
    fn monomial_count(vars: u32, k: u32) -> BigUint {
        if vars == 0 {
            return BigUint::from(u32::from(k == 0));
        }
        let mut acc = BigUint::from(1u32);
        for i in 0..k {
            acc = acc * BigUint::from(vars + k - 1 - i) / BigUint::from(i + 1);
        }
        acc
    }

    #[test]
    fn grassmannian_examples() {
        for n in 0..8 {
            assert_eq!(grassmannian_hilbert(2, 1, n).unwrap(), BigUint::from(n + 1));
        }
        assert_eq!(grassmannian_hilbert(4, 2, 1).unwrap(), BigUint::from(6u32));
        for n in 0..5u32 {
            let theta = cauchy_character(4, 2, 2 * n).unwrap();
            let m = theta.multiplicity(&Partition::empty().pad(n, 2).unwrap());
            assert_eq!(BigUint::from(m as u64), grassmannian_hilbert(4, 2, n).unwrap());
        }
    }

    #[test]
    fn serialization_is_stable() {
        let theta = cauchy_character(2, 2, 2).unwrap();
        let json = serde_json::to_string(&theta).unwrap();
        assert_eq!(
            json,
            r#"{"truncation_degree":2,"virtual":false,"terms":[["[]",1],["[1]",2],["[2]",3],["[1,1]",1]]}"#
        );
        let back: SchurCharacter = serde_json::from_str(&json).unwrap();
        assert_eq!(back, theta);
        assert_eq!(theta.to_string(), "s[] + 2*s[1] + 3*s[2] + s[1,1]");
        let bad = r#"{"truncation_degree":1,"virtual":false,"terms":[["[2]",1]]}"#;
        assert!(serde_json::from_str::<SchurCharacter>(bad).is_err());
    }

    fn arb_character(max_deg: u32) -> impl Strategy<Value = SchurCharacter> {
        let shapes = Partition::all_up_to(max_deg, usize::MAX, u32::MAX);
        prop::collection::vec((0..shapes.len(), 1i64..4), 0..5).prop_map(move |picks| {
            SchurCharacter::from_terms(max_deg, picks.into_iter().map(|(i, m)| (shapes[i].clone(), m)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn lr_product_is_commutative_and_associative(
            a in arb_character(4), b in arb_character(4), c in arb_character(3)
        ) {
            let a = a.with_truncation(10);
            let b = b.with_truncation(10);
            let c = c.with_truncation(10);
            prop_assert_eq!(a.lr_multiply(&b), b.lr_multiply(&a));
            prop_assert_eq!(a.lr_multiply(&b).lr_multiply(&c), a.lr_multiply(&b.lr_multiply(&c)));
        }
    }
}
