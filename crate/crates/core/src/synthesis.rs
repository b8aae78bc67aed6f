//! From measures to decompositions and back: threshold families, coverage
//! verification, synthesis of strictly positive measures as weighted
//! mixtures of per-family optimal measures, exact normalization of vertex
//! functionals, and certified two-sided bounds on their nonlinearity
//! modulus.

use crate::error::{Error, Result};
use crate::intersection::{
    intersection_number, intersection_number_ideal, intersection_number_pi, IntersectionReport,
};
use crate::model::{GroundSet, Ideal, Measure, SetSystem, Subset, VertexFunctional};
use crate::rational::Rational;

/// The family `{A ≠ ∅ : m(A) > ε}` (strict inequality). Empty when the
/// threshold reaches the total mass; callers can see that on the result.
pub fn threshold_family(measure: &Measure, epsilon: &Rational) -> Result<SetSystem> {
    if !epsilon.is_positive() {
        return Err(Error::BadThreshold(epsilon.to_string()));
    }
    let ground = measure.ground();
    let members = ground
        .nonempty_subsets()
        .filter(|a| &measure.of_subset(*a) > epsilon)
        .collect();
    SetSystem::new(ground.clone(), members)
}

/// The family `{A ≠ ∅ : π(1_A) > ε}` for a vertex functional.
pub fn threshold_family_pi(pi: &VertexFunctional, epsilon: &Rational) -> Result<SetSystem> {
    if !epsilon.is_positive() {
        return Err(Error::BadThreshold(epsilon.to_string()));
    }
    let ground = pi.ground();
    let members = ground
        .nonempty_subsets()
        .filter(|a| &pi.of_subset(*a) > epsilon)
        .collect();
    SetSystem::new(ground.clone(), members)
}

/// A claimed decomposition of the powerset: finitely many families plus a
/// null part. `ideal_part = None` is the trivial `{∅}` marker: only the
/// empty set is exempt from coverage.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ground: GroundSet,
    pub families: Vec<SetSystem>,
    pub ideal_part: Option<Ideal>,
}

/// Which intersection number each family must win under, and which null
/// collection absorbs the uncovered sets: the decomposition's own ideal
/// part in the plain mode, the functional's null ideal in the weighted
/// mode, the given ideal in the relative mode.
#[derive(Clone, Debug)]
pub enum DecompositionMode {
    Plain,
    Pi(VertexFunctional),
    Ideal(Ideal),
}

/// Per-family values plus the coverage verdict.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub verdict: bool,
    pub covered: bool,
    pub uncovered: Option<Subset>,
    pub family_values: Vec<Rational>,
}

fn effective_null_part(d: &Decomposition, mode: &DecompositionMode) -> Result<Ideal> {
    let ideal = match mode {
        DecompositionMode::Plain => d
            .ideal_part
            .clone()
            .unwrap_or_else(|| Ideal::trivial(d.ground.clone())),
        DecompositionMode::Pi(pi) => {
            if pi.ground() != &d.ground {
                return Err(Error::GroundSetMismatch);
            }
            pi.neg_ideal()
        }
        DecompositionMode::Ideal(n) => {
            if n.ground() != &d.ground {
                return Err(Error::GroundSetMismatch);
            }
            if !n.is_proper() {
                return Err(Error::ImproperIdeal);
            }
            n.clone()
        }
    };
    if ideal.ground() != &d.ground {
        return Err(Error::GroundSetMismatch);
    }
    Ok(ideal)
}

fn family_reports(
    d: &Decomposition,
    mode: &DecompositionMode,
) -> Result<Vec<IntersectionReport>> {
    d.families
        .iter()
        .map(|family| {
            if family.ground() != &d.ground {
                return Err(Error::GroundSetMismatch);
            }
            match mode {
                DecompositionMode::Plain => intersection_number(family),
                DecompositionMode::Pi(pi) => intersection_number_pi(pi, family),
                DecompositionMode::Ideal(n) => intersection_number_ideal(n, family),
            }
        })
        .collect()
}

/// Checks that every nonempty subset of the ground set lies in some family
/// or in the null part, and that every family's intersection number (in the
/// requested mode) is strictly positive.
pub fn verify_decomposition(
    d: &Decomposition,
    mode: &DecompositionMode,
) -> Result<DecompositionReport> {
    let null_part = effective_null_part(d, mode)?;
    let mut uncovered = None;
    for a in d.ground.nonempty_subsets() {
        if null_part.contains(a) {
            continue;
        }
        if !d.families.iter().any(|f| f.contains(a)) {
            uncovered = Some(a);
            break;
        }
    }
    let covered = uncovered.is_none();
    let reports = family_reports(d, mode)?;
    let family_values: Vec<Rational> = reports.into_iter().map(|r| r.value).collect();
    let verdict = covered && family_values.iter().all(Rational::is_positive);
    Ok(DecompositionReport {
        verdict,
        covered,
        uncovered,
        family_values,
    })
}

/// Builds a measure that is strictly positive on every set of every family,
/// as the mixture `Σₙ wₙ mₙ` of the families' optimal measures with weights
/// `wₙ = 2⁻ⁿ / (1 − 2⁻ᴺ)` (the geometric weights, renormalized to the
/// finitely many families). The result is scaled to a probability; in the
/// relative modes the mass lives off the ideal, so strict positivity is
/// guaranteed off the null part only.
pub fn synthesize_strictly_positive(
    d: &Decomposition,
    mode: &DecompositionMode,
) -> Result<Measure> {
    let check = verify_decomposition(d, mode)?;
    if !check.verdict {
        let why = match &check.uncovered {
            Some(a) => format!("set {:?} is uncovered", d.ground.labels_of(*a)),
            None => "some family has intersection number zero".to_string(),
        };
        return Err(Error::InvalidDecomposition(why));
    }
    let reports = family_reports(d, mode)?;
    let mut weights = Vec::with_capacity(reports.len());
    let mut w = Rational::new(1, 2);
    for _ in 0..reports.len() {
        weights.push(w.clone());
        w /= Rational::from_int(2);
    }
    let total_weight: Rational = weights.iter().sum();
    let parts: Vec<(Rational, &Measure)> = weights
        .iter()
        .map(|w| w / &total_weight)
        .zip(reports.iter().map(|r| &r.optimal_measure))
        .collect();
    let mixture = Measure::mix(&parts)?;
    let total = mixture.total();
    let measure = if total == Rational::one() {
        mixture
    } else {
        // Weighted-mode vertices need not be probabilities; rescale.
        assert!(total.is_positive(), "verified decomposition has mass");
        mixture.scale(&total.recip())?
    };
    for family in &d.families {
        for member in family.family() {
            assert!(measure.of_subset(*member).is_positive());
        }
    }
    Ok(measure)
}

/// Certified lower and upper bounds on the nonlinearity modulus of a vertex
/// functional: the supremal relative gap between `Σ aᵢ π(fᵢ)` and
/// `π(Σ aᵢ fᵢ)` over convex combinations of nonnegative functions.
#[derive(Clone, Debug)]
pub struct ModulusBounds {
    /// Best gap found by exhaustive search over uniform combinations of at
    /// most `search_len` indicators — a lower bound only; the true supremum
    /// ranges over all combinations of all nonnegative functions.
    pub lower: Rational,
    /// `#vertices − 1`, valid for every vertex functional because the sum
    /// of vertex values bounds each maximum from above.
    pub upper: Rational,
}

/// Searches uniform combinations of up to `search_len` indicator functions
/// for the worst relative gap, and pairs it with the `k − 1` upper bound.
pub fn nonlinearity_modulus_bounds(
    pi: &VertexFunctional,
    search_len: u64,
) -> Result<ModulusBounds> {
    if pi.vertices().iter().all(|v| !v.total().is_positive()) {
        return Err(Error::DegenerateFunctional);
    }
    let ground = pi.ground();
    let indicators: Vec<Subset> = ground.nonempty_subsets().collect();
    let pi_of: Vec<Rational> = indicators.iter().map(|s| pi.of_subset(*s)).collect();

    // Uniform combination of the multiset = (sum of vertex values over the
    // multiset) vs (value of the averaged function), both scaled by the
    // length; the ratio is scale-free, so work with plain sums.
    struct Search<'a> {
        pi: &'a VertexFunctional,
        indicators: &'a [Subset],
        pi_of: &'a [Rational],
        counts: Vec<u64>,
        sum_values: Rational,
        best: Option<Rational>,
    }

    impl Search<'_> {
        fn evaluate(&mut self) {
            // π of the unnormalized sum Σ counts_i · 1_{A_i}; the ratio is
            // invariant under the 1/N scaling, so the sum suffices.
            let ground = self.pi.ground();
            let sum_fn: Vec<Rational> = (0..ground.len())
                .map(|atom| {
                    let c: u64 = self
                        .indicators
                        .iter()
                        .zip(&self.counts)
                        .filter(|(s, _)| s.contains(atom))
                        .map(|(_, c)| *c)
                        .sum();
                    Rational::from_int(c as i64)
                })
                .collect();
            let f = crate::model::SimpleFunction::new(ground.clone(), sum_fn)
                .expect("lengths match");
            let pi_sum = self.pi.evaluate(&f).expect("same ground");
            if !pi_sum.is_positive() {
                return;
            }
            let ratio = (&self.sum_values - &pi_sum) / &pi_sum;
            self.best = Some(match self.best.take() {
                None => ratio,
                Some(b) => b.max(ratio),
            });
        }

        fn dfs(&mut self, start: usize, len: u64, max_len: u64) {
            for idx in start..self.indicators.len() {
                self.counts[idx] += 1;
                self.sum_values += &self.pi_of[idx];
                self.evaluate();
                if len + 1 < max_len {
                    self.dfs(idx, len + 1, max_len);
                }
                self.sum_values -= &self.pi_of[idx];
                self.counts[idx] -= 1;
            }
        }
    }

    let mut search = Search {
        pi,
        indicators: &indicators,
        pi_of: &pi_of,
        counts: vec![0; indicators.len()],
        sum_values: Rational::zero(),
        best: None,
    };
    search.dfs(0, 0, search_len.max(1));

    let lower = search.best.unwrap_or_else(Rational::zero);
    let upper = Rational::from_int(pi.len() as i64 - 1);
    assert!(lower <= upper);
    assert!(!lower.is_negative());
    Ok(ModulusBounds { lower, upper })
}

/// Exact normalization of a vertex functional: the largest functional below
/// it that is additive with respect to constants,
/// `π̂(f) = inf_a π(a + f) − a`.
///
/// The infimum of the piecewise-linear envelope `a ↦ maxᵢ (mᵢ(f) + a·(tᵢ−1))`
/// is taken over the slope-zero mixtures of its pieces: vertices with total
/// mass one survive as they are, and each pair with totals on opposite
/// sides of one contributes the unique mixture of the two with total
/// exactly one (this also captures the flat limit when no crossing exists).
/// Every resulting vertex is a probability, so `π̂(1) = 1 = −π̂(−1)` holds by
/// construction and `π ≥ π̂` everywhere.
///
/// Requires `maxᵢ tᵢ ≥ 1 ≥ minᵢ tᵢ`; otherwise the functional dominates no
/// probability and [`Error::NormalizationImpossible`] is returned.
pub fn normalize_functional(pi: &VertexFunctional) -> Result<VertexFunctional> {
    let totals = pi.totals();
    let one = Rational::one();
    let max_total = totals.iter().cloned().reduce(Rational::max).expect("vertices");
    let min_total = totals.iter().cloned().reduce(Rational::min).expect("vertices");
    if max_total < one || min_total > one {
        return Err(Error::NormalizationImpossible);
    }

    let mut vertices: Vec<Measure> = Vec::new();
    let push = |m: Measure, out: &mut Vec<Measure>| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    for (v, t) in pi.vertices().iter().zip(&totals) {
        if *t == one {
            push(v.clone(), &mut vertices);
        }
    }
    for (vi, ti) in pi.vertices().iter().zip(&totals) {
        let si = ti - &one;
        if !si.is_positive() {
            continue;
        }
        for (vj, tj) in pi.vertices().iter().zip(&totals) {
            let sj = tj - &one;
            if !sj.is_negative() {
                continue;
            }
            // Mix to total exactly one: λ·tᵢ + (1−λ)·tⱼ = 1.
            let lambda = -&sj / (&si - &sj);
            let mix = Measure::mix(&[(lambda.clone(), vi), (one.clone() - &lambda, vj)])?;
            debug_assert_eq!(mix.total(), one);
            push(mix, &mut vertices);
        }
    }
    VertexFunctional::new(pi.ground().clone(), vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SimpleFunction;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gs(n: usize) -> GroundSet {
        GroundSet::numbered(n).unwrap()
    }

    #[test]
    fn threshold_examples() {
        let m = Measure::uniform(gs(3));
        let fam = threshold_family(&m, &r("1/2")).unwrap();
        let g = m.ground();
        let expect = [
            g.subset_of_labels(["1", "2"]).unwrap(),
            g.subset_of_labels(["1", "3"]).unwrap(),
            g.subset_of_labels(["2", "3"]).unwrap(),
            g.full(),
        ];
        assert_eq!(fam.len(), 4);
        for e in expect {
            assert!(fam.contains(e));
        }

        let m = Measure::point_mass(gs(2), 0);
        let fam = threshold_family(&m, &r("1/2")).unwrap();
        assert_eq!(fam.len(), 2);
        assert!(fam.contains(Subset::singleton(0)));
        assert!(fam.contains(m.ground().full()));

        // The boundary is strict: at ε = total the family is empty.
        let fam = threshold_family(&m, &r("1")).unwrap();
        assert!(fam.is_empty());

        assert_eq!(
            threshold_family(&m, &r("0")).unwrap_err(),
            Error::BadThreshold("0".into())
        );
    }

    fn powerset_decomposition(n: usize) -> Decomposition {
        let g = gs(n);
        let members: Vec<Subset> = g.nonempty_subsets().collect();
        let family = SetSystem::new(g.clone(), members).unwrap();
        Decomposition {
            ground: g,
            families: vec![family],
            ideal_part: None,
        }
    }

    #[test]
    fn verify_powerset_of_two() {
        let d = powerset_decomposition(2);
        let rep = verify_decomposition(&d, &DecompositionMode::Plain).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.family_values, vec![r("1/2")]);
    }

    #[test]
    fn verify_duplicated_family_is_idempotent() {
        let mut d = powerset_decomposition(2);
        d.families.push(d.families[0].clone());
        let rep = verify_decomposition(&d, &DecompositionMode::Plain).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.family_values, vec![r("1/2"), r("1/2")]);
    }

    #[test]
    fn verify_coverage_failure() {
        let g = gs(2);
        let family = SetSystem::new(g.clone(), vec![Subset::singleton(0)]).unwrap();
        let d = Decomposition {
            ground: g,
            families: vec![family],
            ideal_part: None,
        };
        let rep = verify_decomposition(&d, &DecompositionMode::Plain).unwrap();
        assert!(!rep.verdict);
        assert!(!rep.covered);
        assert_eq!(rep.uncovered, Some(Subset::singleton(1)));
    }

    #[test]
    fn synthesize_from_powerset() {
        let d = powerset_decomposition(2);
        let m = synthesize_strictly_positive(&d, &DecompositionMode::Plain).unwrap();
        assert_eq!(m.masses(), &[r("1/2"), r("1/2")]);
        assert!(m.is_probability());
    }

    #[test]
    fn synthesize_two_families_mixture() {
        // Families whose optimal measures favour different atoms; the
        // mixture must be positive on all three nonempty sets.
        let g = gs(2);
        let f1 = SetSystem::new(g.clone(), vec![Subset::singleton(0), g.full()]).unwrap();
        let f2 = SetSystem::new(g.clone(), vec![Subset::singleton(1)]).unwrap();
        let d = Decomposition {
            ground: g.clone(),
            families: vec![f1, f2],
            ideal_part: None,
        };
        let m = synthesize_strictly_positive(&d, &DecompositionMode::Plain).unwrap();
        assert!(m.is_probability());
        for a in g.nonempty_subsets() {
            assert!(m.of_subset(a).is_positive());
        }
    }

    #[test]
    fn synthesize_rejects_bad_decomposition() {
        let g = gs(2);
        let family = SetSystem::new(g.clone(), vec![Subset::singleton(0)]).unwrap();
        let d = Decomposition {
            ground: g,
            families: vec![family],
            ideal_part: None,
        };
        assert!(matches!(
            synthesize_strictly_positive(&d, &DecompositionMode::Plain).unwrap_err(),
            Error::InvalidDecomposition(_)
        ));
    }

    #[test]
    fn threshold_bound_roundtrip() {
        // Thresholds of a strictly positive probability cover the powerset
        // once the threshold drops below the minimum atom mass; synthesis
        // then returns a strictly positive probability.
        let g = gs(3);
        let m = Measure::new(g.clone(), vec![r("1/2"), r("1/3"), r("1/6")]).unwrap();
        let mut families = Vec::new();
        let mut eps = r("1/2");
        loop {
            let fam = threshold_family(&m, &eps).unwrap();
            if !fam.is_empty() {
                families.push(fam);
            }
            let min_mass = m.masses().iter().cloned().reduce(Rational::min).unwrap();
            if eps < min_mass {
                break;
            }
            eps /= r("2");
        }
        let d = Decomposition {
            ground: g.clone(),
            families,
            ideal_part: None,
        };
        let rep = verify_decomposition(&d, &DecompositionMode::Plain).unwrap();
        assert!(rep.verdict);
        let synth = synthesize_strictly_positive(&d, &DecompositionMode::Plain).unwrap();
        assert!(synth.is_probability());
        for a in g.nonempty_subsets() {
            assert!(synth.of_subset(a).is_positive());
        }
    }

    #[test]
    fn normalize_flat_limit() {
        // Vertices {2δ₁, δ₂}: the normalized functional is evaluation at
        // the second atom.
        let g = gs(2);
        let two_delta1 = Measure::new(g.clone(), vec![r("2"), r("0")]).unwrap();
        let delta2 = Measure::point_mass(g.clone(), 1);
        let pi = VertexFunctional::new(g.clone(), vec![two_delta1, delta2.clone()]).unwrap();
        let hat = normalize_functional(&pi).unwrap();
        assert_eq!(hat.vertices(), &[delta2]);
        let f = SimpleFunction::new(g, vec![r("5"), r("-3")]).unwrap();
        assert_eq!(hat.evaluate(&f).unwrap(), r("-3"));
    }

    #[test]
    fn normalize_probability_vertices_unchanged() {
        let g = gs(2);
        let pi = VertexFunctional::new(
            g.clone(),
            vec![Measure::point_mass(g.clone(), 0), Measure::uniform(g)],
        )
        .unwrap();
        let hat = normalize_functional(&pi).unwrap();
        assert_eq!(hat.vertices(), pi.vertices());
    }

    #[test]
    fn normalize_breakpoint_mixture() {
        // Vertices {(3/2)δ₁, (1/2)δ₂}: π̂(f) = (3f(1) + f(2))/4 and
        // π̂(1) = 1 = −π̂(−1).
        let g = gs(2);
        let v1 = Measure::new(g.clone(), vec![r("3/2"), r("0")]).unwrap();
        let v2 = Measure::new(g.clone(), vec![r("0"), r("1/2")]).unwrap();
        let pi = VertexFunctional::new(g.clone(), vec![v1, v2]).unwrap();
        let hat = normalize_functional(&pi).unwrap();
        assert_eq!(hat.len(), 1);
        assert_eq!(hat.vertices()[0].masses(), &[r("3/4"), r("1/4")]);
        let one = SimpleFunction::constant(g.clone(), r("1"));
        let neg_one = SimpleFunction::constant(g, r("-1"));
        assert_eq!(hat.evaluate(&one).unwrap(), r("1"));
        assert_eq!(-hat.evaluate(&neg_one).unwrap(), r("1"));
    }

    #[test]
    fn normalize_rejects_impossible() {
        let g = gs(2);
        let heavy = Measure::new(g.clone(), vec![r("2"), r("0")]).unwrap();
        let pi = VertexFunctional::new(g.clone(), vec![heavy.clone(), heavy]).unwrap();
        assert_eq!(
            normalize_functional(&pi).unwrap_err(),
            Error::NormalizationImpossible
        );
        let light = Measure::new(g.clone(), vec![r("1/4"), r("0")]).unwrap();
        let pi = VertexFunctional::new(g, vec![light]).unwrap();
        assert_eq!(
            normalize_functional(&pi).unwrap_err(),
            Error::NormalizationImpossible
        );
    }

    #[test]
    fn normalize_dominated_and_constant_additive_on_grid() {
        let g = gs(2);
        let v1 = Measure::new(g.clone(), vec![r("5/4"), r("1/4")]).unwrap();
        let v2 = Measure::new(g.clone(), vec![r("0"), r("3/4")]).unwrap();
        let pi = VertexFunctional::new(g.clone(), vec![v1, v2]).unwrap();
        let hat = normalize_functional(&pi).unwrap();
        let grid = [r("-1"), r("-1/2"), r("0"), r("1/2"), r("1")];
        for a in &grid {
            for b in &grid {
                let f = SimpleFunction::new(g.clone(), vec![a.clone(), b.clone()]).unwrap();
                let pf = pi.evaluate(&f).unwrap();
                let hf = hat.evaluate(&f).unwrap();
                assert!(pf >= hf);
                for c in &grid {
                    let shifted = f.add_constant(c);
                    assert_eq!(hat.evaluate(&shifted).unwrap(), &hf + c);
                }
            }
        }
    }

    #[test]
    fn modulus_two_point_masses() {
        let g = gs(2);
        let pi = VertexFunctional::new(
            g.clone(),
            vec![Measure::point_mass(g.clone(), 0), Measure::point_mass(g, 1)],
        )
        .unwrap();
        let b = nonlinearity_modulus_bounds(&pi, 2).unwrap();
        // Hand value: f₁ = 1_{1}, f₂ = 1_{2} uniform gives (1 − 1/2)/(1/2) = 1.
        assert_eq!(b.lower, r("1"));
        assert_eq!(b.upper, r("1"));
    }

    #[test]
    fn modulus_linear_functional_is_zero() {
        let g = gs(3);
        let pi = VertexFunctional::new(g.clone(), vec![Measure::uniform(g)]).unwrap();
        let b = nonlinearity_modulus_bounds(&pi, 3).unwrap();
        assert_eq!(b.lower, r("0"));
        assert_eq!(b.upper, r("0"));
    }

    #[test]
    fn modulus_three_point_masses() {
        let g = gs(3);
        let pi = VertexFunctional::all_point_masses(g);
        let b = nonlinearity_modulus_bounds(&pi, 3).unwrap();
        assert_eq!(b.lower, r("2"));
        assert_eq!(b.upper, r("2"));
    }

    #[test]
    fn modulus_rejects_zero_functional() {
        let g = gs(2);
        let pi = VertexFunctional::new(g.clone(), vec![Measure::zero(g)]).unwrap();
        assert_eq!(
            nonlinearity_modulus_bounds(&pi, 2).unwrap_err(),
            Error::DegenerateFunctional
        );
    }

    #[test]
    fn lemma_bound_on_pi_thresholds() {
        // I_π({A : π(1_A) > ε}) ≥ ε / #vertices, exactly.
        let g = gs(3);
        let v1 = Measure::new(g.clone(), vec![r("1/2"), r("1/2"), r("0")]).unwrap();
        let v2 = Measure::new(g.clone(), vec![r("0"), r("1/4"), r("3/4")]).unwrap();
        let pi = VertexFunctional::new(g, vec![v1, v2]).unwrap();
        for eps in [r("1/2"), r("1/3"), r("1/4")] {
            let fam = threshold_family_pi(&pi, &eps).unwrap();
            if fam.is_empty() {
                continue;
            }
            let rep = intersection_number_pi(&pi, &fam).unwrap();
            assert!(rep.value >= eps / r("2"));
        }
    }
}
