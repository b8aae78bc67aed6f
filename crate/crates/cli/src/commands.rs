//! One handler per subcommand: pull the needed sections out of the
//! instance, call the library, shape the result as JSON.

use serde_json::{json, Map, Value};

use kelley::domination::{
    check_norming, halmos_savage_subset, mstar_vertices, weakly_dominating_measure,
    MeasureFamily,
};
use kelley::intersection::{
    intersection_number, intersection_number_ideal, intersection_number_order,
    intersection_number_pi,
};
use kelley::lp::{solve_matrix_game, GameMatrix};
use kelley::oracle::verify_minimax;
use kelley::rankings::{
    axioms_check, default_grid_values, grid_functions, order_compare, representability,
    IdealSpec, OrderSpec,
};
use kelley::synthesis::{
    nonlinearity_modulus_bounds, normalize_functional, synthesize_strictly_positive,
    threshold_family, verify_decomposition, Decomposition, DecompositionMode,
};
use kelley::{Ideal, Measure, Rational, SetSystem, Subset, VertexFunctional};

use crate::instance::InstanceDocument;
use crate::output;
use crate::{classify, CliError};

fn need<'a, T>(section: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    section
        .as_ref()
        .ok_or_else(|| CliError::Input(format!("this command requires the `{name}` section")))
}

fn need_sets(doc: &InstanceDocument) -> Result<&SetSystem, CliError> {
    need(&doc.sets, "sets")
}

/// The principal ideal generated by the listed sets: everything inside
/// their union.
fn principal_ideal(doc: &InstanceDocument) -> Result<Ideal, CliError> {
    let generators = need(&doc.ideal_generators, "ideal")?;
    let union = generators
        .iter()
        .fold(Subset::EMPTY, |acc, g| acc.union(*g));
    Ideal::principal(doc.ground.clone(), union).map_err(classify)
}

fn measure_family(doc: &InstanceDocument) -> Result<MeasureFamily, CliError> {
    let members = need(&doc.measures, "measures")?;
    MeasureFamily::new(members.clone()).map_err(classify)
}

pub fn intersection(doc: &InstanceDocument) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let report = intersection_number(sets).map_err(classify)?;
    Ok(output::intersection_report(sets, &report))
}

pub fn intersection_pi(doc: &InstanceDocument) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let pi = need(&doc.functional, "functional")?;
    let report = intersection_number_pi(pi, sets).map_err(classify)?;
    Ok(output::intersection_report(sets, &report))
}

pub fn intersection_ideal(doc: &InstanceDocument) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let ideal = principal_ideal(doc)?;
    let report = intersection_number_ideal(&ideal, sets).map_err(classify)?;
    Ok(output::intersection_report(sets, &report))
}

pub fn intersection_order(doc: &InstanceDocument) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let ideal = principal_ideal(doc)?;
    let report = intersection_number_order(&ideal, sets).map_err(classify)?;
    Ok(output::intersection_report(sets, &report))
}

/// Rows are the listed measures, columns the listed sets, payoffs
/// `m_i(B_j)`. An arbitrary nonnegative matrix can be encoded by making
/// the sets singletons.
pub fn game(doc: &InstanceDocument) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let rows = need(&doc.measures, "measures")?;
    if rows.is_empty() {
        return Err(CliError::Semantic("`measures` must be nonempty".into()));
    }
    if sets.is_empty() {
        return Err(CliError::Semantic("`sets` must be nonempty".into()));
    }
    let entries = rows
        .iter()
        .map(|m| sets.family().iter().map(|b| m.of_subset(*b)).collect())
        .collect();
    let solution = solve_matrix_game(&GameMatrix::new(entries));
    Ok(json!({
        "value": output::rational(&solution.value),
        "row_strategy": output::rationals(&solution.row_strategy),
        "col_strategy": output::rationals(&solution.col_strategy),
    }))
}

pub fn threshold(doc: &InstanceDocument, epsilon: Option<&str>) -> Result<Value, CliError> {
    let measure = need(&doc.measure, "measure")?;
    let eps_text =
        epsilon.ok_or_else(|| CliError::Input("`threshold` requires --epsilon".into()))?;
    let eps: Rational = eps_text
        .parse()
        .map_err(|_| CliError::Input(format!("--epsilon: `{eps_text}` is not a rational")))?;
    if !eps.is_positive() {
        return Err(CliError::Input(format!(
            "--epsilon must be positive, got {eps}"
        )));
    }
    let family = threshold_family(measure, &eps).map_err(classify)?;
    Ok(json!({
        "family": output::subsets(family.ground(), family.family()),
        "empty": family.is_empty(),
    }))
}

/// Mode inference for decompositions: a `functional` section means the
/// weighted form, an `ideal` section the relative form, neither the plain
/// form.
fn decomposition_inputs(
    doc: &InstanceDocument,
) -> Result<(Decomposition, DecompositionMode), CliError> {
    let families = need(&doc.families, "families")?;
    let (mode, ideal_part) = if let Some(pi) = &doc.functional {
        let pi: &VertexFunctional = pi;
        (DecompositionMode::Pi(pi.clone()), Some(pi.neg_ideal()))
    } else if doc.ideal_generators.is_some() {
        let ideal = principal_ideal(doc)?;
        (DecompositionMode::Ideal(ideal.clone()), Some(ideal))
    } else {
        (DecompositionMode::Plain, None)
    };
    let d = Decomposition {
        ground: doc.ground.clone(),
        families: families.clone(),
        ideal_part,
    };
    Ok((d, mode))
}

pub fn decompose_verify(doc: &InstanceDocument) -> Result<Value, CliError> {
    let (d, mode) = decomposition_inputs(doc)?;
    let report = verify_decomposition(&d, &mode).map_err(classify)?;
    let mut out = Map::new();
    out.insert("verdict".into(), json!(report.verdict));
    out.insert("covered".into(), json!(report.covered));
    out.insert("values".into(), output::rationals(&report.family_values));
    if let Some(a) = report.uncovered {
        out.insert("uncovered".into(), output::subset(&doc.ground, a));
    }
    Ok(Value::Object(out))
}

pub fn synthesize(doc: &InstanceDocument) -> Result<Value, CliError> {
    let (d, mode) = decomposition_inputs(doc)?;
    let measure = synthesize_strictly_positive(&d, &mode).map_err(classify)?;
    Ok(json!({ "measure": output::measure(&measure) }))
}

pub fn normalize(doc: &InstanceDocument) -> Result<Value, CliError> {
    let pi = need(&doc.functional, "functional")?;
    let hat = normalize_functional(pi).map_err(classify)?;
    let one = kelley::SimpleFunction::constant(doc.ground.clone(), Rational::one());
    let minus_one =
        kelley::SimpleFunction::constant(doc.ground.clone(), -Rational::one());
    let hat_one = hat.evaluate(&one).map_err(classify)?;
    let neg_hat_minus_one = -hat.evaluate(&minus_one).map_err(classify)?;
    Ok(json!({
        "vertices": output::measures(hat.vertices()),
        "value_at_one": output::rational(&hat_one),
        "neg_value_at_minus_one": output::rational(&neg_hat_minus_one),
    }))
}

pub fn modulus(doc: &InstanceDocument, max_len: u64) -> Result<Value, CliError> {
    let pi = need(&doc.functional, "functional")?;
    let search_len = if max_len == 0 { 3 } else { max_len };
    let bounds = nonlinearity_modulus_bounds(pi, search_len).map_err(classify)?;
    Ok(json!({
        "lower": output::rational(&bounds.lower),
        "upper": output::rational(&bounds.upper),
        "lower_note": "search over uniform indicator combinations; certified lower bound only",
        "search_len": search_len,
    }))
}

pub fn ideal_repr(doc: &InstanceDocument) -> Result<Value, CliError> {
    let members = need(&doc.ideal_generators, "ideal")?;
    let report = representability(&doc.ground, &IdealSpec::Explicit(members.clone()))
        .map_err(classify)?;
    Ok(json!({
        "generator": output::subset(&doc.ground, report.ideal.generator()),
        "measure": output::measure(&report.measure),
    }))
}

pub fn dominate(doc: &InstanceDocument) -> Result<Value, CliError> {
    let family = measure_family(doc)?;
    let report = weakly_dominating_measure(&family);
    let mut weights = Map::new();
    for (idx, w) in &report.mstar_weights {
        weights.insert(idx.to_string(), output::rational(w));
    }
    Ok(json!({
        "measure": output::measure(&report.measure),
        "null_generator": output::subset(&doc.ground, report.null_ideal.generator()),
        "mstar_weights": Value::Object(weights),
    }))
}

pub fn mstar(doc: &InstanceDocument) -> Result<Value, CliError> {
    let family = measure_family(doc)?;
    let vertices = mstar_vertices(&family);
    Ok(json!({ "vertices": output::measures(&vertices) }))
}

pub fn hs_subset(doc: &InstanceDocument) -> Result<Value, CliError> {
    let family = measure_family(doc)?;
    let picked = halmos_savage_subset(&family);
    let sub = MeasureFamily::new(
        picked
            .iter()
            .map(|&i| family.members()[i].clone())
            .collect(),
    )
    .map_err(classify)?;
    let ideal = kelley::domination::common_null_ideal(&sub);
    Ok(json!({
        "indices": picked,
        "null_generator": output::subset(&doc.ground, ideal.generator()),
    }))
}

pub fn norming(doc: &InstanceDocument) -> Result<Value, CliError> {
    let ideal = principal_ideal(doc)?;
    let order = need(&doc.order, "order")?;
    let f = need(&order.f, "order.f")?;
    let report = check_norming(&ideal, f).map_err(classify)?;
    Ok(json!({
        "verdict": report.verdict,
        "measure_side": output::rational(&report.measure_side),
        "ideal_side": output::rational(&report.ideal_side),
        "witness_atom": doc.ground.atom(report.witness_atom),
    }))
}

fn backed_order(doc: &InstanceDocument) -> Result<OrderSpec, CliError> {
    let order = need(&doc.order, "order")?;
    let backing = order
        .backing
        .as_deref()
        .ok_or_else(|| CliError::Input("this command requires `order.backing`".into()))?;
    match backing {
        "measure" => {
            let m: &Measure = need(&doc.measure, "measure")?;
            OrderSpec::measure_backed(m.clone()).map_err(classify)
        }
        "ideal" => {
            let ideal = principal_ideal(doc)?;
            OrderSpec::ideal_backed(ideal).map_err(classify)
        }
        _ => unreachable!("validated at parse time"),
    }
}

pub fn ranking_compare(doc: &InstanceDocument) -> Result<Value, CliError> {
    let spec = backed_order(doc)?;
    let order = need(&doc.order, "order")?;
    let f = need(&order.f, "order.f")?;
    let g = need(&order.g, "order.g")?;
    let verdict = order_compare(&spec, f, g).map_err(classify)?;
    Ok(json!({ "verdict": verdict }))
}

pub fn ranking_axioms(doc: &InstanceDocument, grid_cap: Option<usize>) -> Result<Value, CliError> {
    let spec = backed_order(doc)?;
    let cap = grid_cap.unwrap_or(625);
    if cap == 0 {
        return Err(CliError::Input("--grid must be positive".into()));
    }
    // Five grid values up to two atoms, three beyond: the scaling axiom is
    // quartic in the grid size.
    let values = if doc.ground.len() <= 2 {
        default_grid_values()
    } else {
        vec![-Rational::one(), Rational::zero(), Rational::one()]
    };
    let grid = grid_functions(&doc.ground, &values, cap);
    let scalars = [
        Rational::new(1, 4),
        Rational::new(1, 2),
        Rational::one(),
        Rational::from_int(2),
    ];
    let report = axioms_check(&spec, &grid, &scalars).map_err(classify)?;
    let mut axioms = Map::new();
    for (name, verdict) in ["i", "ii", "iii", "iv", "v"].iter().zip(&report.verdicts) {
        let mut entry = Map::new();
        entry.insert("holds".into(), json!(verdict.holds));
        if let Some(ce) = &verdict.counterexample {
            let mut detail = Map::new();
            detail.insert("detail".into(), json!(ce.detail));
            detail.insert("f".into(), output::rationals(ce.f.values()));
            if let Some(g) = &ce.g {
                detail.insert("g".into(), output::rationals(g.values()));
            }
            entry.insert("counterexample".into(), Value::Object(detail));
        }
        axioms.insert((*name).into(), Value::Object(entry));
    }
    Ok(json!({
        "axioms": Value::Object(axioms),
        "grid_size": grid.len(),
        "oracle_epsilon_caveat": report.oracle_epsilon_caveat,
    }))
}

pub fn ranking_represent(doc: &InstanceDocument, explicit: bool) -> Result<Value, CliError> {
    let members = need(&doc.ideal_generators, "ideal")?;
    let spec = if explicit {
        IdealSpec::Explicit(members.clone())
    } else {
        let union = members.iter().fold(Subset::EMPTY, |acc, g| acc.union(*g));
        IdealSpec::Principal(Ideal::principal(doc.ground.clone(), union).map_err(classify)?)
    };
    let report = representability(&doc.ground, &spec).map_err(classify)?;
    let families: Vec<Value> = report
        .families
        .iter()
        .map(|f| {
            json!({
                "threshold": format!("1/{}", f.threshold_denominator),
                "sets": output::subsets(&doc.ground, f.system.family()),
                "value": output::rational(&f.value),
            })
        })
        .collect();
    Ok(json!({
        "generator": output::subset(&doc.ground, report.ideal.generator()),
        "measure": output::measure(&report.measure),
        "families": families,
    }))
}

pub fn verify(doc: &InstanceDocument, max_len: u64) -> Result<Value, CliError> {
    let sets = need_sets(doc)?;
    let cert = verify_minimax(sets, max_len, 100_000_000).map_err(classify)?;
    Ok(json!({
        "verdict": cert.verdict,
        "value": output::rational(&cert.report.value),
        "witness_length": cert.report.witness_sequence.len(),
        "witness_sequence": output::witness(cert.report.witness_sequence.multiplicities()),
        "bruteforce_value": output::rational(&cert.bruteforce.best_value),
        "searched_max_length": cert.bruteforce.searched_max_length,
    }))
}
