//! Independent brute-force verifiers. These realize the sequence-infimum
//! definition of the intersection number literally — enumerate multisets of
//! family members and take the best supremum — so they share no code with
//! the game solver and can certify it. They are deliberately unclever: no
//! pruning, just bounded enumeration behind an explicit budget.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::intersection::{intersection_number, sequence_average, IntersectionReport};
use crate::model::SetSystem;
use crate::rational::Rational;

/// Whether a brute-force minimum has been matched against an independently
/// computed value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exactness {
    /// Equal to the game value supplied for cross-checking.
    Certified,
    /// An enumeration minimum only; longer sequences could in principle do
    /// better.
    UpperBoundOnly,
}

/// Best sequence found by enumeration up to a length bound.
#[derive(Clone, Debug)]
pub struct BruteForceResult {
    pub best_value: Rational,
    /// Multiplicity per family member of the best multiset found.
    pub best_multiplicities: Vec<u64>,
    pub searched_max_length: u64,
    pub exactness: Exactness,
}

impl BruteForceResult {
    /// Marks the result certified when it matches `value`; returns whether
    /// it did.
    pub fn certify_against(&mut self, value: &Rational) -> bool {
        if self.best_value == *value {
            self.exactness = Exactness::Certified;
            true
        } else {
            false
        }
    }
}

/// Number of nonempty multisets of size at most `max_len` over `k` symbols:
/// `C(max_len + k, k) − 1`. Saturates at `u128::MAX` on overflow.
pub fn multiset_count(k: u64, max_len: u64) -> u128 {
    // C(max_len + k, k) computed incrementally and exactly.
    let mut acc: u128 = 1;
    for i in 1..=k {
        let num = (max_len + i) as u128;
        acc = match acc.checked_mul(num) {
            Some(x) => x / i as u128,
            None => return u128::MAX,
        };
    }
    acc - 1
}

/// Minimizes `sup_ω s(β)(ω)` over every multiset `β` of family members with
/// size between 1 and `max_len`. Multisets, not ordered sequences: the
/// averaged function does not see order. Fails up front with
/// [`Error::BudgetTooLarge`] when the enumeration would exceed `budget`
/// multisets.
pub fn bruteforce_intersection(
    system: &SetSystem,
    max_len: u64,
    budget: u64,
) -> Result<BruteForceResult> {
    if system.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if max_len == 0 {
        return Err(Error::EmptySequence);
    }
    let k = system.len();
    let needed = multiset_count(k as u64, max_len);
    if needed > budget as u128 {
        return Err(Error::BudgetTooLarge { needed, cap: budget });
    }

    let n = system.ground().len();
    let mut search = Search {
        system,
        max_len,
        // counts[ω] = how many sets of the current multiset contain atom ω.
        counts: vec![0u64; n],
        mult: vec![0u64; k],
        // Best so far as the exact fraction best_num / best_den; starts
        // above 1, so the first evaluated multiset always takes over.
        best_num: 2,
        best_den: 1,
        best_mult: vec![0u64; k],
    };
    search.dfs(0, 0);

    Ok(BruteForceResult {
        best_value: Rational::from_big(
            BigInt::from(search.best_num),
            BigInt::from(search.best_den),
        )
        .expect("positive denominator"),
        best_multiplicities: search.best_mult,
        searched_max_length: max_len,
        exactness: Exactness::UpperBoundOnly,
    })
}

struct Search<'a> {
    system: &'a SetSystem,
    max_len: u64,
    counts: Vec<u64>,
    mult: Vec<u64>,
    best_num: u64,
    best_den: u64,
    best_mult: Vec<u64>,
}

impl Search<'_> {
    /// Depth-first enumeration of multisets as nondecreasing index
    /// sequences, evaluating the supremum of the running average at every
    /// node. Exact comparisons by cross-multiplication in 128 bits.
    fn dfs(&mut self, start: usize, len: u64) {
        for idx in start..self.system.len() {
            let member = self.system.member(idx);
            for atom in member.iter() {
                self.counts[atom] += 1;
            }
            self.mult[idx] += 1;
            let new_len = len + 1;
            let sup = self.counts.iter().copied().max().unwrap_or(0);
            if (sup as u128) * (self.best_den as u128)
                < (self.best_num as u128) * (new_len as u128)
            {
                self.best_num = sup;
                self.best_den = new_len;
                self.best_mult.clone_from_slice(&self.mult);
            }
            if new_len < self.max_len {
                self.dfs(idx, new_len);
            }
            self.mult[idx] -= 1;
            for atom in member.iter() {
                self.counts[atom] -= 1;
            }
        }
    }
}

/// Clears the denominators of a rational probability vector: returns the
/// multiset in which member `i` appears `weights[i] × L` times, where `L`
/// is the least common multiple of the denominators. The averaged function
/// of the result equals the weighted combination exactly.
pub fn witness_from_strategy(weights: &[Rational]) -> Vec<u64> {
    assert!(
        weights.iter().all(|w| !w.is_negative()),
        "weights must be nonnegative"
    );
    assert_eq!(
        weights.iter().sum::<Rational>(),
        Rational::one(),
        "weights must sum to one"
    );
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    weights
        .iter()
        .map(|w| {
            let scaled = w.numer() * &lcm / w.denom();
            scaled
                .to_u64()
                .expect("witness multiplicities fit in 64 bits at desk scale")
        })
        .collect()
}

/// Outcome of an end-to-end certification of the minimax identity on one
/// instance: the game value, the supremum of the averaged witness sequence,
/// and the brute-force minimum at (at least) the witness length must all
/// agree exactly.
#[derive(Clone, Debug)]
pub struct MinimaxCertificate {
    pub verdict: bool,
    pub report: IntersectionReport,
    pub witness_supremum: Rational,
    pub bruteforce: BruteForceResult,
}

/// Certifies the minimax identity on `system`. The brute force searches all
/// multisets up to `max(witness length, min_search_len)` under the given
/// budget.
pub fn verify_minimax(
    system: &SetSystem,
    min_search_len: u64,
    budget: u64,
) -> Result<MinimaxCertificate> {
    let report = intersection_number(system)?;
    let beta = report.witness_sequence.expand(system);
    let s = sequence_average(system.ground(), &beta)?;
    let witness_supremum = s.sup();
    let search_len = report.witness_sequence.len().max(min_search_len).max(1);
    let mut bruteforce = bruteforce_intersection(system, search_len, budget)?;
    let certified = bruteforce.certify_against(&report.value);
    let verdict = certified && witness_supremum == report.value;
    Ok(MinimaxCertificate {
        verdict,
        report,
        witness_supremum,
        bruteforce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GroundSet;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn triangle() -> SetSystem {
        let g = GroundSet::numbered(3).unwrap();
        SetSystem::from_labels(
            g,
            [["1", "2"], ["2", "3"], ["1", "3"]].iter().map(|m| m.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn multiset_counts() {
        // 3 symbols, lengths 1..=2: 3 + 6 = 9 multisets.
        assert_eq!(multiset_count(3, 2), 9);
        assert_eq!(multiset_count(1, 5), 5);
        assert_eq!(multiset_count(7, 3), 119);
    }

    #[test]
    fn triangle_pairs_then_triples() {
        let sys = triangle();
        // Any pair of edges shares a point, so length ≤ 2 cannot beat 1.
        let bf = bruteforce_intersection(&sys, 2, 1_000).unwrap();
        assert_eq!(bf.best_value, r("1"));
        // One copy of each edge averages to 2/3 everywhere.
        let bf = bruteforce_intersection(&sys, 3, 1_000).unwrap();
        assert_eq!(bf.best_value, r("2/3"));
        assert_eq!(bf.best_multiplicities, vec![1, 1, 1]);
        assert_eq!(bf.exactness, Exactness::UpperBoundOnly);
    }

    #[test]
    fn single_set_is_one() {
        let g = GroundSet::numbered(2).unwrap();
        let sys = SetSystem::from_labels(g, [["1", "2"]].iter().map(|m| m.iter().copied()))
            .unwrap();
        let bf = bruteforce_intersection(&sys, 1, 1_000).unwrap();
        assert_eq!(bf.best_value, r("1"));
    }

    #[test]
    fn budget_is_enforced() {
        let sys = triangle();
        match bruteforce_intersection(&sys, 40, 100).unwrap_err() {
            Error::BudgetTooLarge { needed, cap } => {
                assert!(needed > 100);
                assert_eq!(cap, 100);
            }
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn monotone_in_max_len() {
        let sys = triangle();
        let mut prev: Option<Rational> = None;
        for len in 1..=5 {
            let bf = bruteforce_intersection(&sys, len, 100_000).unwrap();
            if let Some(p) = prev {
                assert!(bf.best_value <= p);
            }
            prev = Some(bf.best_value);
        }
    }

    #[test]
    fn witness_from_strategy_examples() {
        assert_eq!(
            witness_from_strategy(&[r("1/3"), r("1/3"), r("1/3")]),
            vec![1, 1, 1]
        );
        assert_eq!(witness_from_strategy(&[r("1/2"), r("1/2")]), vec![1, 1]);
        assert_eq!(witness_from_strategy(&[r("2/3"), r("1/3")]), vec![2, 1]);
        assert_eq!(witness_from_strategy(&[r("1"), r("0")]), vec![1, 0]);
    }

    #[test]
    fn verify_minimax_triangle() {
        let cert = verify_minimax(&triangle(), 0, 1_000_000).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.report.value, r("2/3"));
        assert_eq!(cert.bruteforce.exactness, Exactness::Certified);
    }

    #[test]
    fn verify_minimax_disjoint_singletons() {
        for k in 2..=5usize {
            let g = GroundSet::numbered(k).unwrap();
            let members: Vec<Vec<String>> = (1..=k).map(|i| vec![i.to_string()]).collect();
            let sys = SetSystem::from_labels(g, members).unwrap();
            let cert = verify_minimax(&sys, 0, 1_000_000).unwrap();
            assert!(cert.verdict);
            assert_eq!(cert.report.value, Rational::new(1, k as i64));
        }
    }
}
