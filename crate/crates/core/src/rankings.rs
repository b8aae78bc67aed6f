//! Almost-sure rankings: partial orders on functions induced by a measure
//! (`f ≥ g` off a null set) or by an ideal, the consistency axioms such
//! orders must satisfy, and the representability test that turns a proper
//! ideal back into a measure whose order has exactly that null collection.
//!
//! On a finite ground set the almost-sure condition `inf_{t>0} m(f−g<−t)=0`
//! stabilizes: the sets `{f−g < −t}` are constant for small `t`, equal to
//! `{f < g}`, so the order reduces to `m({f < g}) = 0` and everything is
//! decidable exactly.

use std::fmt;

use crate::error::{Error, Result};
use crate::intersection::intersection_number_order;
use crate::model::{GroundSet, Ideal, Measure, SetSystem, SimpleFunction, Subset};
use crate::rational::Rational;

/// Decision procedure for an opaque order on functions.
pub type OrderOracle = Box<dyn Fn(&SimpleFunction, &SimpleFunction) -> bool>;

/// How an almost-sure order is specified. Measure- and ideal-backed orders
/// are totally computable; an oracle can only be probed pointwise.
pub enum OrderSpec {
    MeasureBacked(Measure),
    IdealBacked(Ideal),
    Oracle(OrderOracle),
}

impl fmt::Debug for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::MeasureBacked(m) => write!(f, "MeasureBacked({m:?})"),
            OrderSpec::IdealBacked(n) => write!(f, "IdealBacked({n:?})"),
            OrderSpec::Oracle(_) => write!(f, "Oracle(..)"),
        }
    }
}

impl OrderSpec {
    /// Backed by a measure with positive total mass.
    pub fn measure_backed(m: Measure) -> Result<Self> {
        if !m.total().is_positive() {
            return Err(Error::ZeroTotalMeasure);
        }
        Ok(OrderSpec::MeasureBacked(m))
    }

    /// Backed by a proper ideal: `f ≥ g` when `{f < g}` is in the ideal.
    pub fn ideal_backed(n: Ideal) -> Result<Self> {
        if !n.is_proper() {
            return Err(Error::ImproperIdeal);
        }
        Ok(OrderSpec::IdealBacked(n))
    }

    pub fn oracle(decide: OrderOracle) -> Self {
        OrderSpec::Oracle(decide)
    }
}

/// Decides `f ≥ g` under the order.
pub fn order_compare(
    spec: &OrderSpec,
    f: &SimpleFunction,
    g: &SimpleFunction,
) -> Result<bool> {
    if f.ground() != g.ground() {
        return Err(Error::GroundSetMismatch);
    }
    match spec {
        OrderSpec::MeasureBacked(m) => {
            if m.ground() != f.ground() {
                return Err(Error::GroundSetMismatch);
            }
            let below = f.strictly_below(g)?;
            Ok(m.of_subset(below).is_zero())
        }
        OrderSpec::IdealBacked(n) => {
            if n.ground() != f.ground() {
                return Err(Error::GroundSetMismatch);
            }
            let below = f.strictly_below(g)?;
            Ok(n.contains(below))
        }
        OrderSpec::Oracle(decide) => Ok(decide(f, g)),
    }
}

/// A counterexample to one of the axioms, carried verbatim for reporting.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub f: SimpleFunction,
    pub g: Option<SimpleFunction>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomVerdict {
    fn pass() -> Self {
        AxiomVerdict {
            holds: true,
            counterexample: None,
        }
    }

    fn fail(f: &SimpleFunction, g: Option<&SimpleFunction>, detail: String) -> Self {
        AxiomVerdict {
            holds: false,
            counterexample: Some(Counterexample {
                f: f.clone(),
                g: g.cloned(),
                detail,
            }),
        }
    }
}

/// Verdicts for the five consistency axioms. For measure- and ideal-backed
/// orders the checks are exact on the supplied grid; for oracle-backed
/// orders the robustness axiom is tested on a finite list of epsilons only,
/// which `oracle_epsilon_caveat` records.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub verdicts: [AxiomVerdict; 5],
    pub oracle_epsilon_caveat: bool,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }
}

/// All functions with values drawn from `values`, in lexicographic order of
/// the value indices, truncated at `cap`.
pub fn grid_functions(
    ground: &GroundSet,
    values: &[Rational],
    cap: usize,
) -> Vec<SimpleFunction> {
    let n = ground.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        if out.len() >= cap {
            break;
        }
        let vals: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
        out.push(SimpleFunction::new(ground.clone(), vals).expect("lengths match"));
        for pos in (0..n).rev() {
            idx[pos] += 1;
            if idx[pos] < values.len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    out
}

/// The default grid values `{−1, −1/2, 0, 1/2, 1}`.
pub fn default_grid_values() -> Vec<Rational> {
    ["-1", "-1/2", "0", "1/2", "1"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// Checks the five axioms of a probabilistically representable order over
/// all instances drawn from `grid` (functions) and `scalars` (positive
/// entries serve as truncation levels, multipliers and epsilons).
pub fn axioms_check(
    spec: &OrderSpec,
    grid: &[SimpleFunction],
    scalars: &[Rational],
) -> Result<AxiomReport> {
    let ground = grid
        .first()
        .map(|f| f.ground().clone())
        .ok_or(Error::EmptySequence)?;
    let zero = SimpleFunction::zero(ground.clone());
    let one = SimpleFunction::constant(ground.clone(), Rational::one());
    let positives: Vec<Rational> = scalars.iter().filter(|s| s.is_positive()).cloned().collect();

    // (i) 0 is not strictly above 1.
    let axiom_i = {
        let zero_ge_one = order_compare(spec, &zero, &one)?;
        let one_ge_zero = order_compare(spec, &one, &zero)?;
        if zero_ge_one && !one_ge_zero {
            AxiomVerdict::fail(&zero, Some(&one), "0 ranks strictly above 1".into())
        } else {
            AxiomVerdict::pass()
        }
    };

    // (ii) f ≥ 0 and a > 0 imply f ∧ a ≥ 0.
    let mut axiom_ii = AxiomVerdict::pass();
    'ii: for f in grid {
        if !order_compare(spec, f, &zero)? {
            continue;
        }
        for a in &positives {
            let truncated = f.min_with_constant(a);
            if !order_compare(spec, &truncated, &zero)? {
                axiom_ii = AxiomVerdict::fail(
                    f,
                    None,
                    format!("f ranks above 0 but f ∧ {a} does not"),
                );
                break 'ii;
            }
        }
    }

    // (iii) pointwise nonnegative functions rank above 0.
    let mut axiom_iii = AxiomVerdict::pass();
    for f in grid {
        if f.is_nonnegative() && !order_compare(spec, f, &zero)? {
            axiom_iii = AxiomVerdict::fail(f, None, "f ≥ 0 pointwise but not in the order".into());
            break;
        }
    }

    // (iv) f ≥ g implies bf + h ≥ bg + h for positive bounded b.
    let mut multipliers: Vec<SimpleFunction> = positives
        .iter()
        .map(|a| SimpleFunction::constant(ground.clone(), a.clone()))
        .collect();
    for f in grid {
        if f.values().iter().all(Rational::is_positive) {
            multipliers.push(f.clone());
        }
    }
    let mut axiom_iv = AxiomVerdict::pass();
    'iv: for f in grid {
        for g in grid {
            if !order_compare(spec, f, g)? {
                continue;
            }
            for h in grid {
                for b in &multipliers {
                    let lhs = b.mul_pointwise(f)?.add(h)?;
                    let rhs = b.mul_pointwise(g)?.add(h)?;
                    if !order_compare(spec, &lhs, &rhs)? {
                        axiom_iv = AxiomVerdict::fail(
                            f,
                            Some(g),
                            "scaling by a positive multiplier and shifting broke the comparison"
                                .into(),
                        );
                        break 'iv;
                    }
                }
            }
        }
    }

    // (v) f + ε ≥ 0 for all ε > 0 implies f ≥ 0.
    let mut axiom_v = AxiomVerdict::pass();
    let mut caveat = false;
    for f in grid {
        let premise = match spec {
            OrderSpec::MeasureBacked(_) | OrderSpec::IdealBacked(_) => {
                // Exact: {f < −ε} stabilizes to {f < 0} once ε is below the
                // smallest magnitude of a negative value.
                let eps = f
                    .values()
                    .iter()
                    .filter(|v| v.is_negative())
                    .map(|v| -v / Rational::from_int(2))
                    .reduce(Rational::min);
                match eps {
                    Some(e) => order_compare(spec, &f.add_constant(&e), &zero)?,
                    None => true, // no negative values: {f < −ε} is empty for all ε
                }
            }
            OrderSpec::Oracle(_) => {
                caveat = true;
                let mut all = true;
                for e in &positives {
                    if !order_compare(spec, &f.add_constant(e), &zero)? {
                        all = false;
                        break;
                    }
                }
                all
            }
        };
        if premise && !order_compare(spec, f, &zero)? {
            axiom_v = AxiomVerdict::fail(
                f,
                None,
                "f + ε ranks above 0 for every tested ε but f does not".into(),
            );
            break;
        }
    }

    Ok(AxiomReport {
        verdicts: [axiom_i, axiom_ii, axiom_iii, axiom_iv, axiom_v],
        oracle_epsilon_caveat: caveat,
    })
}

/// Input to the representability test: a principal ideal, or an explicit
/// collection that must first be validated as one.
#[derive(Clone, Debug)]
pub enum IdealSpec {
    Principal(Ideal),
    Explicit(Vec<Subset>),
}

/// One threshold family of the constructed decomposition together with its
/// order-form intersection number.
#[derive(Clone, Debug)]
pub struct RepresentabilityFamily {
    /// The family is `{A : m(A) > 1/denominator}`.
    pub threshold_denominator: u64,
    pub system: SetSystem,
    pub value: Rational,
}

/// A successful representation: the validated ideal, the canonical measure
/// (uniform off the generator) whose order has exactly that null
/// collection, and the explicit threshold decomposition with every family's
/// order-form intersection number strictly positive.
#[derive(Clone, Debug)]
pub struct RepresentabilityReport {
    pub ideal: Ideal,
    pub measure: Measure,
    pub families: Vec<RepresentabilityFamily>,
}

/// Decides whether the given collection is the null collection of some
/// probability, and if so constructs one: the uniform probability off the
/// generator. Rejections carry the violated closure rule and its witness.
pub fn representability(ground: &GroundSet, spec: &IdealSpec) -> Result<RepresentabilityReport> {
    let ideal = match spec {
        IdealSpec::Principal(n) => {
            if n.ground() != ground {
                return Err(Error::GroundSetMismatch);
            }
            if !n.is_proper() {
                return Err(Error::ImproperIdeal);
            }
            n.clone()
        }
        IdealSpec::Explicit(members) => Ideal::validate_explicit(ground, members)?,
    };

    let co = ideal.co_support();
    let measure = Measure::uniform_on(ground.clone(), co).expect("proper ideal has co-support");
    assert_eq!(measure.null_ideal().generator(), ideal.generator());

    // Threshold decomposition: families {A : m(A) > 1/n} for n up to one
    // past the support size cover everything off the ideal.
    let support_size = co.cardinality() as u64;
    let mut families = Vec::new();
    let mut covered_all = ideal.generator();
    for denominator in 1..=(support_size + 1) {
        let threshold = Rational::new(1, denominator as i64);
        let members: Vec<Subset> = ground
            .nonempty_subsets()
            .filter(|a| measure.of_subset(*a) > threshold)
            .collect();
        if members.is_empty() {
            continue;
        }
        let system = SetSystem::new(ground.clone(), members)?;
        let report = intersection_number_order(&ideal, &system)?;
        assert!(report.value.is_positive());
        assert!(report.value >= threshold);
        for member in system.family() {
            covered_all = covered_all.union(*member);
        }
        families.push(RepresentabilityFamily {
            threshold_denominator: denominator,
            system,
            value: report.value,
        });
    }
    // Coverage certificate: every nonempty set is in the ideal or in some
    // family.
    for a in ground.nonempty_subsets() {
        assert!(
            ideal.contains(a) || families.iter().any(|f| f.system.contains(a)),
            "threshold decomposition must cover the powerset"
        );
    }

    Ok(RepresentabilityReport {
        ideal,
        measure,
        families,
    })
}
