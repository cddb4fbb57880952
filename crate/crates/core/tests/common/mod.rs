//! Randomised invariants shared by the property suite and the acceptance run.
//! Each runs 100 cases from a fixed seed.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use secant_core::linalg::det_rat;
use secant_core::multiindex::{all_weights, binomial, exponents, Permutation};
use secant_core::polyring::{psi_component, Rat};
use secant_core::prolong::{kappa, total_monomials_by_weight, Config as Cfg};
use secant_core::quintics::pfaffian_rat;
use secant_core::symmetry::{split_kappa_component, SplitSpec};
use secant_core::{MultiIndex, SMonomial, SPolynomial};

pub const CASES: u32 = 100;

pub fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(
        config,
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    )
}

fn run<S: Strategy>(
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(seed).run(&strategy, test).map_err(|e| e.to_string())
}

fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn multi_index(len: usize, total: u32) -> impl Strategy<Value = MultiIndex> {
    let all = exponents(len - 1, total);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn monomial(len: usize, d: u32, degree: usize) -> impl Strategy<Value = SMonomial> {
    prop::collection::vec(multi_index(len, d), degree).prop_map(SMonomial::from_vars)
}

/// `(στ)α = σ(τα)`, the identity acts trivially, `τ⁻¹τ = 1`, and on monomials
/// `weight(φ_τ m) = τ weight(m)`.
pub fn group_action_laws() -> Result<(), String> {
    let strat = (2usize..=6).prop_flat_map(|len| {
        (
            multi_index(len, 5),
            permutation(len),
            permutation(len),
            monomial(len, 3, 4),
        )
    });
    run(1, strat, |(alpha, s, t, m)| {
        let len = alpha.len();
        prop_assert_eq!(s.compose(&t).apply(&alpha), s.apply(&t.apply(&alpha)));
        prop_assert_eq!(Permutation::identity(len).apply(&alpha), alpha.clone());
        prop_assert!(t.inverse().compose(&t).is_identity());
        prop_assert_eq!(
            m.apply_perm(&s.compose(&t)),
            m.apply_perm(&t).apply_perm(&s)
        );
        prop_assert_eq!(m.apply_perm(&s).weight(len), s.apply(&m.weight(len)));
        Ok(())
    })
}

/// `Σ_β dim L_β = C(N + k + 1, k + 1)`.
pub fn mass_conservation() -> Result<(), String> {
    let strat = (1u32..=4, 1u32..=4, 1usize..=3).prop_filter("small enough", |&(k, d, n)| {
        let big_n = binomial(n as u64 + d as u64, d as u64) - 1;
        binomial(big_n + k as u64 + 1, k as u64 + 1) <= 400_000
    });
    run(2, strat, |(k, d, n)| {
        let big_n = binomial(n as u64 + d as u64, d as u64) - 1;
        let total = total_monomials_by_weight(Cfg::new(k, d, n));
        prop_assert_eq!(total, binomial(big_n + k as u64 + 1, k as u64 + 1));
        Ok(())
    })
}

const SPLIT_CONFIGS: [(u32, u32, usize); 4] = [(2, 3, 2), (3, 3, 2), (3, 4, 2), (4, 3, 3)];

fn split_case() -> impl Strategy<Value = ((u32, u32, usize), MultiIndex, Vec<bool>)> {
    (0..SPLIT_CONFIGS.len())
        .prop_flat_map(|c| {
            let (k, d, n) = SPLIT_CONFIGS[c];
            let ws: Vec<MultiIndex> = all_weights(n, d * (k + 1))
                .into_iter()
                .filter(|b| SplitSpec::stabilizing(b).is_some())
                .collect();
            (
                Just((k, d, n)),
                (0..ws.len()).prop_map(move |i| ws[i].clone()),
            )
        })
        .prop_flat_map(|(cfg, beta)| {
            let t = SplitSpec::stabilizing(&beta).unwrap().transpositions.len();
            (
                Just(cfg),
                Just(beta),
                prop::collection::vec(any::<bool>(), t),
            )
        })
}

/// The sign components of a group of transpositions fixing `β` add up to `κ_β`.
pub fn split_additivity() -> Result<(), String> {
    run(3, split_case(), |((k, d, n), beta, keep)| {
        let full = SplitSpec::stabilizing(&beta).unwrap();
        let mut chosen: Vec<(usize, usize)> = full
            .transpositions
            .iter()
            .zip(&keep)
            .filter(|(_, &b)| b)
            .map(|(t, _)| *t)
            .collect();
        if chosen.is_empty() {
            chosen.push(full.transpositions[0]);
        }
        let spec = SplitSpec::new(chosen.clone(), vec![1; chosen.len()]).unwrap();
        let cfg = Cfg::new(k, d, n);
        let mut sum = 0;
        for s in spec.all_patterns() {
            let c = split_kappa_component(&beta, cfg, &s)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(c.certified);
            sum += c.kappa;
        }
        let whole = kappa(&beta, k, d, n, false).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(sum, whole.kappa, "{} split by {}", beta, spec);
        Ok(())
    })
}

/// `Pf(A)² = det A` for integer skew-symmetric `A`.
pub fn pfaffian_squared_is_det() -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|h| {
        prop::collection::vec(-6i64..=6, h * (2 * h - 1)).prop_map(move |v| (2 * h, v))
    });
    run(4, strat, |(size, upper)| {
        let mut a = vec![vec![Rat::from_integer(BigInt::from(0)); size]; size];
        let mut it = upper.into_iter();
        for i in 0..size {
            for j in i + 1..size {
                let x = Rat::from_integer(BigInt::from(it.next().unwrap()));
                a[j][i] = -x.clone();
                a[i][j] = x;
            }
        }
        let pf = pfaffian_rat(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&pf * &pf, det_rat(&a));
        Ok(())
    })
}

/// `Ψ_{φ_τ m}(φ_τ f) = τ · Ψ_m(f)`.
pub fn psi_equivariance() -> Result<(), String> {
    let strat = (1usize..=3, 2u32..=4, 2u32..=3).prop_flat_map(|(n, d, k)| {
        let len = n + 1;
        (
            Just(k),
            prop::collection::vec((monomial(len, d, k as usize + 1), -5i64..=5), 1..6),
            monomial(len, d, k as usize - 1),
            permutation(len),
        )
    });
    run(5, strat, |(k, terms, m, tau)| {
        let len = tau.len();
        let f = SPolynomial::from_terms(
            terms
                .into_iter()
                .map(|(mono, c)| (mono, Rat::from_integer(BigInt::from(c)))),
        );
        if f.is_zero() {
            return Ok(());
        }
        let lhs = psi_component(&f.apply_perm(&tau), &m.apply_perm(&tau), k, len)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let rhs = psi_component(&f, &m, k, len)
            .map_err(|e| TestCaseError::fail(e.to_string()))?
            .apply_perm(&tau);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// All property suites, in a fixed order, with their outcomes.
pub fn all() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("group-action laws", group_action_laws()),
        ("direct-sum mass conservation", mass_conservation()),
        ("split-kappa additivity", split_additivity()),
        ("Pf^2 = det", pfaffian_squared_is_det()),
        ("permutation-equivariance of Psi", psi_equivariance()),
    ]
}

/// Draws one value from a strategy with a fixed seed.
pub fn sample<S: Strategy>(seed: u8, s: S) -> S::Value {
    s.new_tree(&mut runner(seed)).unwrap().current()
}
