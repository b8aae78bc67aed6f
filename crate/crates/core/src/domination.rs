//! Weak domination of families of probabilities: the common null ideal, a
//! dominating average with its certificates, the conditional-closure
//! vertices, a greedy countable (here: atom-bounded) dominating subfamily,
//! and the norming identity that equates the measure-side and ideal-side
//! evaluations of a function.

use crate::error::{Error, Result};
use crate::model::{GroundSet, Ideal, Measure, SimpleFunction, Subset};
use crate::rational::Rational;

/// Nonempty family of probability measures on one ground set.
#[derive(Clone, Debug)]
pub struct MeasureFamily {
    ground: GroundSet,
    members: Vec<Measure>,
}

impl MeasureFamily {
    pub fn new(members: Vec<Measure>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyMeasureFamily)?;
        let ground = first.ground().clone();
        for (i, m) in members.iter().enumerate() {
            if *m.ground() != ground {
                return Err(Error::GroundSetMismatch);
            }
            if !m.is_probability() {
                return Err(Error::NotAProbability(i));
            }
        }
        Ok(MeasureFamily { ground, members })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[Measure] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The ideal of sets null under every member: generated by the atoms
/// outside every support. Always proper, since members are probabilities.
pub fn common_null_ideal(family: &MeasureFamily) -> Ideal {
    let union_support = family
        .members
        .iter()
        .fold(Subset::EMPTY, |acc, m| acc.union(m.support()));
    Ideal::principal(
        family.ground.clone(),
        family.ground.complement(union_support),
    )
    .expect("complement in range")
}

/// A weakly dominating measure with its certificates: the measure itself,
/// the proof that its null ideal is exactly the family's common one, and
/// the convex coefficients expressing it over the conditional vertices.
#[derive(Clone, Debug)]
pub struct WeakDominationReport {
    pub measure: Measure,
    pub null_ideal: Ideal,
    /// Pairs `(index into mstar_vertices, weight)` summing the measure.
    pub mstar_weights: Vec<(usize, Rational)>,
}

/// The uniform average of the family. Its null atoms are exactly the
/// common null atoms, so it weakly dominates the family; and as a convex
/// combination of the members (which are their own conditionals on the
/// ground set) it lies in the conditional closure.
pub fn weakly_dominating_measure(family: &MeasureFamily) -> WeakDominationReport {
    let share = Rational::new(1, family.len() as i64);
    let parts: Vec<(Rational, &Measure)> = family
        .members
        .iter()
        .map(|m| (share.clone(), m))
        .collect();
    let measure = Measure::mix(&parts).expect("same ground set");
    let null_ideal = common_null_ideal(family);
    assert_eq!(measure.null_ideal().generator(), null_ideal.generator());

    let vertices = mstar_vertices(family);
    let mut weights: Vec<(usize, Rational)> = Vec::new();
    for member in &family.members {
        let idx = vertices
            .iter()
            .position(|v| v == member)
            .expect("each member is its own conditional on the full ground set");
        match weights.iter_mut().find(|(i, _)| *i == idx) {
            Some((_, w)) => *w += &share,
            None => weights.push((idx, share.clone())),
        }
    }
    weights.sort_by_key(|(i, _)| *i);
    let rebuilt = Measure::mix(
        &weights
            .iter()
            .map(|(i, w)| (w.clone(), &vertices[*i]))
            .collect::<Vec<_>>(),
    )
    .expect("same ground set");
    assert_eq!(rebuilt, measure);

    WeakDominationReport {
        measure,
        null_ideal,
        mstar_weights: weights,
    }
}

/// All conditional restrictions `m_A` over members `m` and sets `A` with
/// `m(A) > 0`, deduplicated in order of first appearance (members in family
/// order, sets in bitmask order). Their convex hull is the conditional
/// closure of the family; on a finite ground set the hull of finitely many
/// points is closed, so no closure operation is needed.
pub fn mstar_vertices(family: &MeasureFamily) -> Vec<Measure> {
    let mut out: Vec<Measure> = Vec::new();
    for m in &family.members {
        for a in family.ground.nonempty_subsets() {
            if m.of_subset(a).is_positive() {
                let cond = m.restrict(a).expect("positive mass");
                if !out.contains(&cond) {
                    out.push(cond);
                }
            }
        }
    }
    out
}

/// Greedy weakly dominating subfamily: repeatedly pick the member covering
/// the most atoms not yet supported (lowest index on ties) until the union
/// of supports is reached. At most one pick per atom, so the subfamily size
/// never exceeds the atom count.
pub fn halmos_savage_subset(family: &MeasureFamily) -> Vec<usize> {
    let universe = family
        .members
        .iter()
        .fold(Subset::EMPTY, |acc, m| acc.union(m.support()));
    let mut covered = Subset::EMPTY;
    let mut picked = Vec::new();
    while covered != universe {
        let mut best: Option<(usize, u32)> = None;
        for (i, m) in family.members.iter().enumerate() {
            let gain = m.support().minus(covered).cardinality();
            if gain == 0 {
                continue;
            }
            best = match best {
                None => Some((i, gain)),
                Some((bi, bg)) => {
                    if gain > bg {
                        Some((i, gain))
                    } else {
                        Some((bi, bg))
                    }
                }
            };
        }
        let (idx, _) = best.expect("universe is the union of supports");
        covered = covered.union(family.members[idx].support());
        picked.push(idx);
    }
    picked
}

/// Both sides of the norming identity for a proper ideal: the measure-side
/// value `max {m(f) : m a probability vanishing on the generator}` (the
/// maximum ranges over the point masses off the ideal) and the ideal-side
/// value `inf_{N ∈ 𝓝} sup_{Nᶜ} f` (enumerated over all members of the
/// ideal). The two are always equal; the verdict records the comparison.
#[derive(Clone, Debug)]
pub struct NormingReport {
    pub verdict: bool,
    pub measure_side: Rational,
    pub ideal_side: Rational,
    /// Atom index of a point mass attaining the measure side.
    pub witness_atom: usize,
}

pub fn check_norming(ideal: &Ideal, f: &SimpleFunction) -> Result<NormingReport> {
    if ideal.ground() != f.ground() {
        return Err(Error::GroundSetMismatch);
    }
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let co = ideal.co_support();
    let (witness_atom, measure_side) = co
        .iter()
        .map(|i| (i, f.value(i).clone()))
        .max_by(|(_, a), (_, b)| a.cmp(b))
        .expect("proper ideal has co-support");

    let ideal_side = ideal
        .members()
        .into_iter()
        .filter_map(|n| f.sup_over(ideal.ground().complement(n)))
        .reduce(Rational::min)
        .expect("the complement of a proper ideal's member is nonempty");

    Ok(NormingReport {
        verdict: measure_side == ideal_side,
        measure_side,
        ideal_side,
        witness_atom,
    })
}
