//! Intersection numbers of set families, in four flavours: the plain one,
//! the weighted one against a sublinear functional, and the two relative
//! ones against a proper ideal (by restricting sets, or by masking the
//! averaged functions — the order-theoretic form, which collapses to the
//! same value).
//!
//! Each flavour reduces to an exact zero-sum matrix game: columns are the
//! family members, rows are whatever the supremum ranges over (atoms,
//! vertices of the functional, atoms off the ideal), entries are the row
//! object applied to the column set. The infimum over finite sequences in
//! the defining formula equals the game value because rational mixtures are
//! exactly realizable as integer-multiplicity sequences; every report
//! carries that sequence as its witness.

use crate::error::{Error, Result};
use crate::lp::{solve_matrix_game, GameMatrix, GameSolution};
use crate::model::{GroundSet, Ideal, Measure, SetSystem, SimpleFunction, Subset, VertexFunctional};
use crate::oracle::witness_from_strategy;
use crate::rational::Rational;

/// Finite multiset over the members of a set family, stored as one
/// multiplicity per member (aligned with `SetSystem::family`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessSequence {
    multiplicities: Vec<u64>,
}

impl WitnessSequence {
    pub fn new(multiplicities: Vec<u64>) -> Self {
        WitnessSequence { multiplicities }
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Total length of the sequence.
    pub fn len(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The sequence as an explicit list of sets.
    pub fn expand(&self, system: &SetSystem) -> Vec<Subset> {
        let mut out = Vec::new();
        for (i, &m) in self.multiplicities.iter().enumerate() {
            for _ in 0..m {
                out.push(system.member(i));
            }
        }
        out
    }
}

/// Result of an intersection-number computation: the exact value together
/// with both optimality witnesses of the underlying game.
///
/// `optimal_weights` is the minimizing convex combination over the family;
/// `witness_sequence` realizes those weights with integer multiplicities
/// (weights times the least common denominator). `optimal_measure` attains
/// the value from the other side: its infimum over the family (taken off
/// the ideal, in the relative flavours) equals the value exactly.
#[derive(Clone, Debug)]
pub struct IntersectionReport {
    pub value: Rational,
    pub optimal_measure: Measure,
    pub optimal_weights: Vec<Rational>,
    pub witness_sequence: WitnessSequence,
}

/// The averaged indicator function of a finite sequence of sets:
/// `s(β)(ω) = (1/|β|) Σ_{B∈β} 1_B(ω)`.
pub fn sequence_average(ground: &GroundSet, beta: &[Subset]) -> Result<SimpleFunction> {
    if beta.is_empty() {
        return Err(Error::EmptySequence);
    }
    for b in beta {
        ground.check(*b)?;
    }
    let len = Rational::from_int(beta.len() as i64);
    let values = (0..ground.len())
        .map(|i| {
            let count = beta.iter().filter(|b| b.contains(i)).count() as i64;
            Rational::from_int(count) / &len
        })
        .collect();
    SimpleFunction::new(ground.clone(), values)
}

fn weighted_average(system: &SetSystem, weights: &[Rational]) -> SimpleFunction {
    let ground = system.ground();
    let values = (0..ground.len())
        .map(|i| {
            system
                .family()
                .iter()
                .zip(weights)
                .filter(|(b, _)| b.contains(i))
                .map(|(_, w)| w.clone())
                .sum()
        })
        .collect();
    SimpleFunction::new(ground.clone(), values).expect("lengths match")
}

fn game_report(solution: GameSolution, measure: Measure) -> IntersectionReport {
    let witness = WitnessSequence::new(witness_from_strategy(&solution.col_strategy));
    IntersectionReport {
        value: solution.value,
        optimal_measure: measure,
        optimal_weights: solution.col_strategy,
        witness_sequence: witness,
    }
}

/// The intersection number of a family: the infimum over finite sequences
/// from the family of the supremum of their averaged indicator function.
/// Always in `(0, 1]` for a family of nonempty sets.
pub fn intersection_number(system: &SetSystem) -> Result<IntersectionReport> {
    if system.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let ground = system.ground();
    let entries = (0..ground.len())
        .map(|atom| {
            system
                .family()
                .iter()
                .map(|b| {
                    if b.contains(atom) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let solution = solve_matrix_game(&GameMatrix::new(entries));
    let measure = Measure::new(ground.clone(), solution.row_strategy.clone())
        .expect("strategy is nonnegative");
    let report = game_report(solution, measure);

    // Certificates: the witness sequence attains the value from above, the
    // measure from below, and the value is in (0, 1].
    let s = weighted_average(system, &report.optimal_weights);
    assert_eq!(s.sup(), report.value);
    let inf = system
        .family()
        .iter()
        .map(|b| report.optimal_measure.of_subset(*b))
        .reduce(Rational::min)
        .expect("nonempty family");
    assert_eq!(inf, report.value);
    assert!(report.value.is_positive() && report.value <= Rational::one());
    Ok(report)
}

/// Weighted intersection number `inf_β π(s(β))` against a vertex
/// functional. Rows of the game are the vertices; the optimal measure is
/// the row-strategy mixture of vertices, which is dominated by the
/// functional by construction.
pub fn intersection_number_pi(
    pi: &VertexFunctional,
    system: &SetSystem,
) -> Result<IntersectionReport> {
    if system.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if pi.ground() != system.ground() {
        return Err(Error::GroundSetMismatch);
    }
    let entries = pi
        .vertices()
        .iter()
        .map(|m| system.family().iter().map(|b| m.of_subset(*b)).collect())
        .collect();
    let solution = solve_matrix_game(&GameMatrix::new(entries));
    let parts: Vec<(Rational, &Measure)> = solution
        .row_strategy
        .iter()
        .cloned()
        .zip(pi.vertices())
        .collect();
    let measure = Measure::mix(&parts).expect("vertices share the ground set");
    let report = game_report(solution, measure);

    let s = weighted_average(system, &report.optimal_weights);
    assert_eq!(pi.evaluate(&s)?, report.value);
    let inf = system
        .family()
        .iter()
        .map(|b| report.optimal_measure.of_subset(*b))
        .reduce(Rational::min)
        .expect("nonempty family");
    assert_eq!(inf, report.value);
    Ok(report)
}

/// Intersection number relative to a proper ideal: sets are cut down to the
/// complement of the generator and the supremum ranges there. A member that
/// vanishes off the ideal stays in the family and forces the value to zero.
pub fn intersection_number_ideal(
    ideal: &Ideal,
    system: &SetSystem,
) -> Result<IntersectionReport> {
    if system.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if ideal.ground() != system.ground() {
        return Err(Error::GroundSetMismatch);
    }
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let ground = system.ground();
    let co: Vec<usize> = ideal.co_support().iter().collect();
    let entries = co
        .iter()
        .map(|&atom| {
            system
                .family()
                .iter()
                .map(|b| {
                    if b.contains(atom) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let solution = solve_matrix_game(&GameMatrix::new(entries));
    let mut mass = vec![Rational::zero(); ground.len()];
    for (pos, &atom) in co.iter().enumerate() {
        mass[atom] = solution.row_strategy[pos].clone();
    }
    let measure = Measure::new(ground.clone(), mass).expect("strategy nonnegative");
    let report = game_report(solution, measure);
    assert_relative_certificate(ideal, system, &report);
    Ok(report)
}

/// Intersection number of the equivalence-class form: for each sequence the
/// inner infimum over functions agreeing with `s(β)` off the ideal is taken,
/// which masks the averaged function to zero on the generator. Computed as
/// the game over all atoms with masked columns; the value coincides with
/// [`intersection_number_ideal`] on every input.
pub fn intersection_number_order(
    ideal: &Ideal,
    system: &SetSystem,
) -> Result<IntersectionReport> {
    if system.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if ideal.ground() != system.ground() {
        return Err(Error::GroundSetMismatch);
    }
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let ground = system.ground();
    let generator = ideal.generator();
    let entries = (0..ground.len())
        .map(|atom| {
            system
                .family()
                .iter()
                .map(|b| {
                    if b.minus(generator).contains(atom) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let solution = solve_matrix_game(&GameMatrix::new(entries));
    // Project stray mass off the ideal (possible only in value-zero games,
    // where any probability certifies the infimum).
    let co = ideal.co_support();
    let mut mass: Vec<Rational> = (0..ground.len())
        .map(|i| {
            if co.contains(i) {
                solution.row_strategy[i].clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let total: Rational = mass.iter().sum();
    let measure = if total.is_positive() {
        for m in mass.iter_mut() {
            *m /= &total;
        }
        Measure::new(ground.clone(), mass).expect("nonnegative")
    } else {
        Measure::uniform_on(ground.clone(), co).expect("proper ideal has co-support")
    };
    let report = game_report(solution, measure);
    assert_relative_certificate(ideal, system, &report);
    Ok(report)
}

fn assert_relative_certificate(ideal: &Ideal, system: &SetSystem, report: &IntersectionReport) {
    let co = ideal.co_support();
    let s = weighted_average(system, &report.optimal_weights);
    let sup = s.sup_over(co).expect("proper ideal has co-support");
    assert_eq!(sup, report.value);
    let inf = system
        .family()
        .iter()
        .map(|b| report.optimal_measure.of_subset(b.minus(ideal.generator())))
        .reduce(Rational::min)
        .expect("nonempty family");
    assert_eq!(inf, report.value);
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn system_strategy(max_atoms: usize, max_sets: usize) -> impl Strategy<Value = SetSystem> {
        (2..=max_atoms).prop_flat_map(move |n| {
            proptest::collection::vec(1u64..(1u64 << n), 1..=max_sets).prop_map(move |bits| {
                let ground = GroundSet::numbered(n).unwrap();
                SetSystem::new(ground, bits.into_iter().map(Subset::from_bits).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Enlarging the family can only lower the intersection number.
        #[test]
        fn monotone_under_enlargement(sys in system_strategy(4, 4), extra in proptest::collection::vec(1u64..16, 1..=3)) {
            let n = sys.ground().len();
            let small = intersection_number(&sys).unwrap();
            let mut members = sys.family().to_vec();
            for bits in extra {
                let clipped = bits & ((1 << n) - 1);
                if clipped != 0 {
                    members.push(Subset::from_bits(clipped));
                }
            }
            let bigger = SetSystem::new(sys.ground().clone(), members).unwrap();
            let big = intersection_number(&bigger).unwrap();
            prop_assert!(big.value <= small.value);
        }

        /// A family containing k pairwise disjoint sets has value at most 1/k.
        #[test]
        fn disjoint_members_cap_the_value(sys in system_strategy(4, 3), k in 2usize..=4) {
            let n = sys.ground().len();
            let k = k.min(n);
            let mut members = sys.family().to_vec();
            members.extend((0..k).map(Subset::singleton));
            let system = SetSystem::new(sys.ground().clone(), members).unwrap();
            let report = intersection_number(&system).unwrap();
            prop_assert!(report.value <= Rational::new(1, k as i64));
        }

        /// The weighted intersection number against the all-point-masses
        /// functional is the plain one.
        #[test]
        fn point_mass_functional_recovers_plain(sys in system_strategy(4, 4)) {
            let plain = intersection_number(&sys).unwrap();
            let pi = VertexFunctional::all_point_masses(sys.ground().clone());
            let weighted = intersection_number_pi(&pi, &sys).unwrap();
            prop_assert_eq!(plain.value, weighted.value);
        }

        /// The relative variants agree with each other, and with the plain
        /// number below (restriction can only shrink sets).
        #[test]
        fn relative_variants_agree(sys in system_strategy(4, 4), gen_bits in 0u64..8) {
            let n = sys.ground().len();
            let generator = Subset::from_bits(gen_bits & ((1 << n) - 1) & !(1 << (n - 1)));
            let ideal = Ideal::principal(sys.ground().clone(), generator).unwrap();
            let by_ideal = intersection_number_ideal(&ideal, &sys).unwrap();
            let by_order = intersection_number_order(&ideal, &sys).unwrap();
            prop_assert_eq!(&by_ideal.value, &by_order.value);
            let plain = intersection_number(&sys).unwrap();
            prop_assert!(by_ideal.value <= plain.value);
        }
    }
}
