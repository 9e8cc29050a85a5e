//! Brute-force oracles for the combinatorial and commutative-algebra kernels.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use tca_core::character::lr_coefficient;
use tca_core::poly::{Ideal, Monomial, MonomialOrder, Polynomial, ResourceLimits, VariableGrid};
use tca_core::{cauchy_character, Partition, SchurCharacter};

use common::{all_exponents, ssyt_weights};

#[test]
fn dim_schur_counts_tableaux() {
    for k in 0..=8 {
        for lambda in Partition::all_of_size(k, usize::MAX, u32::MAX) {
            for n in 1..=5 {
                let count: u64 = ssyt_weights(&lambda, n).values().sum();
                assert_eq!(lambda.dim_schur(n as u32), BigUint::from(count), "{lambda} n={n}");
            }
        }
    }
}

/// `c^ν_{λμ}` as the coefficient of `x^{ν+δ}` in `a_δ · s_λ · s_μ`.
fn lr_by_alternant(lambda: &Partition, mu: &Partition, n: usize) -> BTreeMap<Vec<u32>, i64> {
    let wl = ssyt_weights(lambda, n);
    let wm = ssyt_weights(mu, n);
    let mut product: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (a, x) in &wl {
        for (b, y) in &wm {
            let w: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
            *product.entry(w).or_default() += (x * y) as i64;
        }
    }
    let mut alternant: Vec<(Vec<u32>, i64)> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let exps = p.iter().map(|&k| (n - 1 - k) as u32).collect();
        alternant.push((exps, if inversions % 2 == 0 { 1 } else { -1 }));
    });
    let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (w, m) in &product {
        for (e, s) in &alternant {
            let x: Vec<u32> = w.iter().zip(e).map(|(p, q)| p + q).collect();
            if x.windows(2).all(|p| p[0] > p[1]) {
                let nu: Vec<u32> = x.iter().enumerate().map(|(i, v)| v - (n - 1 - i) as u32).collect();
                *out.entry(nu).or_default() += m * s;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn partition(parts: &[u32]) -> Partition {
    Partition::from_unsorted(parts.to_vec())
}

#[test]
fn lr_matches_weight_products() {
    let l21 = partition(&[2, 1]);
    assert_eq!(lr_coefficient(&l21, &l21, &partition(&[4, 2])), 1);
    assert_eq!(lr_coefficient(&l21, &l21, &partition(&[3, 2, 1])), 2);
    let pairs = [(vec![2, 1], vec![2, 1]), (vec![2], vec![1, 1]), (vec![3, 1], vec![2]), (vec![2, 2], vec![2, 1])];
    for (a, b) in pairs {
        let (a, b) = (partition(&a), partition(&b));
        let n = (a.rows() + b.rows()).max(1);
        let oracle = lr_by_alternant(&a, &b, n);
        for nu in Partition::all_of_size(a.size() + b.size(), n, u32::MAX) {
            let mut key = nu.parts().to_vec();
            key.resize(n, 0);
            let expected = oracle.get(&key).copied().unwrap_or(0);
            assert_eq!(lr_coefficient(&a, &b, &nu) as i64, expected, "c^{nu}_{{{a},{b}}}");
        }
    }
}

#[test]
fn lr_against_cauchy_stays_in_padding() {
    for k in 0..=4 {
        for lambda in Partition::all_of_size(k, usize::MAX, u32::MAX) {
            for d in 1..=3 {
                for r in 1..=d {
                    let truncation = k + 5;
                    let product = SchurCharacter::schur(lambda.clone())
                        .with_truncation(truncation)
                        .lr_multiply(&cauchy_character(d, r, truncation).unwrap());
                    for (nu, m) in product.terms() {
                        assert!(m > 0);
                        let n = nu.columns().max(lambda.columns());
                        assert!(nu.is_contained_in(&lambda.pad(n, r as usize).unwrap()), "{nu} from {lambda}, r={r}");
                    }
                }
            }
        }
    }
}

fn arb_character() -> impl Strategy<Value = SchurCharacter> {
    let shapes = Partition::all_up_to(7, 4, 5);
    prop::collection::vec((0..shapes.len(), 1i64..5), 0..6)
        .prop_map(move |picks| SchurCharacter::from_terms(7, picks.into_iter().map(|(i, m)| (shapes[i].clone(), m))))
}

proptest! {
    #[test]
    fn gamma_is_monotone(theta in arb_character()) {
        let mut last = 0;
        for n in 0..8 {
            let g = theta.gamma(n, 0).unwrap();
            prop_assert!(g.value >= last);
            if let Some(w) = &g.witness {
                prop_assert!(w.columns() <= n);
                prop_assert_eq!(w.size(), g.value);
            }
            last = g.value;
        }
    }
}

const ORDER: MonomialOrder = MonomialOrder::GRevLex;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Random homogeneous polynomials of degree 2 on the 2 × 2 grid.
fn arb_generators() -> impl Strategy<Value = Vec<Vec<(usize, usize, i64)>>> {
    prop::collection::vec(prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 1..4), 1..4)
}

fn build(grid: VariableGrid, order: MonomialOrder, spec: &[Vec<(usize, usize, i64)>]) -> Vec<Polynomial> {
    spec.iter()
        .map(|terms| {
            Polynomial::from_terms(
                grid,
                order,
                terms.iter().map(|&(a, b, c)| (Monomial::variable(4, a).mul_var(b), q(c))),
            )
        })
        .filter(|p| !p.is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_basis_ignores_generator_order(spec in arb_generators(), rot in 0usize..4) {
        let grid = VariableGrid::new(2, 2);
        let gens = build(grid, ORDER, &spec);
        prop_assume!(!gens.is_empty());
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        let limits = ResourceLimits::default();
        let a = Ideal::new(grid, gens).unwrap().groebner_basis(ORDER, &limits).unwrap();
        let b = Ideal::new(grid, shuffled).unwrap().groebner_basis(ORDER, &limits).unwrap();
        prop_assert_eq!(a.polynomials(), b.polynomials());
    }

    #[test]
    fn division_certifies_membership(spec in arb_generators(), mult in prop::collection::vec((0usize..4, -2i64..3), 1..4)) {
        let grid = VariableGrid::new(2, 2);
        let gens = build(grid, ORDER, &spec);
        prop_assume!(!gens.is_empty());
        let limits = ResourceLimits::default();
        let gb = Ideal::new(grid, gens.clone()).unwrap().groebner_basis(ORDER, &limits).unwrap();
        // f = Σ c_i x_{v_i} g_i lies in the ideal
        let mut f = Polynomial::zero(grid, ORDER);
        for (g, &(v, c)) in gens.iter().zip(mult.iter().cycle()) {
            f = f.add(&g.mul_term(&Monomial::variable(4, v), &q(c)));
        }
        let (quotients, rem) = gb.divide(&f).unwrap();
        prop_assert!(rem.is_zero());
        let mut back = Polynomial::zero(grid, ORDER);
        for (qi, bi) in quotients.iter().zip(gb.polynomials()) {
            back = back.add(&qi.mul(bi));
        }
        prop_assert_eq!(back, f);
    }

    #[test]
    fn krull_dimension_ignores_the_order(spec in arb_generators()) {
        let grid = VariableGrid::new(2, 2);
        let limits = ResourceLimits::default();
        let a = Ideal::new(grid, build(grid, MonomialOrder::GRevLex, &spec)).unwrap();
        let b = Ideal::new(grid, build(grid, MonomialOrder::Lex, &spec)).unwrap();
        let ga = a.groebner_basis(MonomialOrder::GRevLex, &limits).unwrap();
        prop_assume!(!ga.is_unit_ideal());
        prop_assert_eq!(
            a.krull_dimension_with(MonomialOrder::GRevLex, &limits).unwrap(),
            b.krull_dimension_with(MonomialOrder::Lex, &limits).unwrap()
        );
    }
}

/// Monomial ideals from exponent vectors on the 2 × 3 grid.
fn arb_monomial_ideal() -> impl Strategy<Value = Vec<Vec<u16>>> {
    prop::collection::vec(prop::collection::vec(0u16..3, 6), 1..5)
        .prop_map(|gens| gens.into_iter().filter(|e| e.iter().any(|&x| x > 0)).collect())
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_ideals_match_brute_force(gens in arb_monomial_ideal()) {
        prop_assume!(!gens.is_empty());
        let grid = VariableGrid::new(2, 3);
        let polys = gens
            .iter()
            .map(|e| Polynomial::monomial(grid, ORDER, Monomial::from_exponents(e.clone()), BigRational::one()))
            .collect();
        let ideal = Ideal::new(grid, polys).unwrap();
        let limits = ResourceLimits::default();
        for k in 0..=5 {
            let count = all_exponents(6, k).iter().filter(|m| !gens.iter().any(|g| divides(g, m))).count();
            prop_assert_eq!(ideal.hilbert_function(k, &limits).unwrap().to_usize().unwrap(), count);
        }
        // largest set of variables containing no generator's support
        let best = (0u32..64)
            .filter(|s| gens.iter().all(|g| g.iter().enumerate().any(|(v, &x)| x > 0 && s & (1 << v) == 0)))
            .map(u32::count_ones)
            .max()
            .unwrap();
        prop_assert_eq!(ideal.krull_dimension(&limits).unwrap(), best);
    }
}

#[test]
fn specialization_counts_monomials_of_the_full_ring() {
    // A(ℂⁿ) with d rows is a polynomial ring in dn variables
    for d in 1..=3 {
        let theta = cauchy_character(d, d, 6).unwrap();
        for n in 1..=3 {
            for k in 0..=6 {
                let expected = all_exponents((d * n) as usize, k).len();
                assert_eq!(theta.specialize_hilbert(n, k).unwrap().to_usize().unwrap(), expected);
            }
        }
    }
    assert!(SchurCharacter::zero(3).specialize_hilbert(2, 2).unwrap().is_zero());
}
