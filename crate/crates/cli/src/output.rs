//! Result-to-JSON conversion. All rationals are emitted as canonical
//! strings, subsets as label arrays in atom order, measures as full
//! label-to-value maps; map keys are sorted by the JSON layer, so output is
//! deterministic byte for byte.

use serde_json::{json, Map, Value};

use kelley::intersection::IntersectionReport;
use kelley::{GroundSet, Measure, Rational, SetSystem, Subset};

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn subset(ground: &GroundSet, s: Subset) -> Value {
    Value::Array(
        ground
            .labels_of(s)
            .into_iter()
            .map(Value::String)
            .collect(),
    )
}

pub fn subsets(ground: &GroundSet, list: &[Subset]) -> Value {
    Value::Array(list.iter().map(|s| subset(ground, *s)).collect())
}

pub fn measure(m: &Measure) -> Value {
    let mut map = Map::new();
    for (i, mass) in m.masses().iter().enumerate() {
        map.insert(m.ground().atom(i).to_string(), rational(mass));
    }
    Value::Object(map)
}

pub fn measures(ms: &[Measure]) -> Value {
    Value::Array(ms.iter().map(measure).collect())
}

/// Witness multisets as `{family index: multiplicity}` with zero
/// multiplicities omitted.
pub fn witness(multiplicities: &[u64]) -> Value {
    let mut map = Map::new();
    for (i, &m) in multiplicities.iter().enumerate() {
        if m > 0 {
            map.insert(i.to_string(), json!(m));
        }
    }
    Value::Object(map)
}

pub fn intersection_report(system: &SetSystem, report: &IntersectionReport) -> Value {
    json!({
        "value": rational(&report.value),
        "measure": measure(&report.optimal_measure),
        "weights": rationals(&report.optimal_weights),
        "witness_sequence": witness(report.witness_sequence.multiplicities()),
        "sets": subsets(system.ground(), system.family()),
    })
}
