//! Strict parsing of JSON instance documents. Every section is optional —
//! each command demands the ones it needs — but unknown keys, unknown atom
//! labels and malformed rationals are always rejected.

use std::collections::BTreeSet;

use serde_json::{Map, Value};

use kelley::{GroundSet, Measure, Rational, SetSystem, SimpleFunction, Subset, VertexFunctional};

use crate::CliError;

/// Parsed instance: the ground set plus whichever sections were present.
pub struct InstanceDocument {
    pub ground: GroundSet,
    pub sets: Option<SetSystem>,
    pub measure: Option<Measure>,
    pub measures: Option<Vec<Measure>>,
    /// The raw list under `ideal.generators`; commands interpret it either
    /// as generators of a principal ideal or as an explicit enumeration.
    pub ideal_generators: Option<Vec<Subset>>,
    pub functional: Option<VertexFunctional>,
    pub families: Option<Vec<SetSystem>>,
    pub order: Option<OrderSection>,
}

pub struct OrderSection {
    pub backing: Option<String>,
    pub f: Option<SimpleFunction>,
    pub g: Option<SimpleFunction>,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn object<'v>(value: &'v Value, what: &str) -> Result<&'v Map<String, Value>, CliError> {
    value
        .as_object()
        .ok_or_else(|| input(format!("`{what}` must be a JSON object")))
}

fn string_list(value: &Value, what: &str) -> Result<Vec<String>, CliError> {
    let arr = value
        .as_array()
        .ok_or_else(|| input(format!("`{what}` must be an array")))?;
    arr.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| input(format!("`{what}` must contain strings")))
        })
        .collect()
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<(), CliError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(input(format!("unknown key `{key}` in {what}")));
        }
    }
    Ok(())
}

fn parse_rational(value: &Value, what: &str) -> Result<Rational, CliError> {
    let s = value
        .as_str()
        .ok_or_else(|| input(format!("{what} must be a rational string \"p/q\"")))?;
    s.parse()
        .map_err(|_| input(format!("{what}: `{s}` is not a valid rational")))
}

fn parse_subset(ground: &GroundSet, value: &Value, what: &str) -> Result<Subset, CliError> {
    let labels = string_list(value, what)?;
    ground
        .subset_of_labels(&labels)
        .map_err(|e| input(format!("{what}: {e}")))
}

/// A `{label: "p/q"}` map over the ground set; omitted atoms default to
/// zero, duplicate or unknown labels are rejected.
fn parse_atom_map(
    ground: &GroundSet,
    value: &Value,
    what: &str,
) -> Result<Vec<(String, Rational)>, CliError> {
    let map = object(value, what)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (label, v) in map {
        if ground.index_of(label).is_none() {
            return Err(input(format!("{what}: unknown label `{label}`")));
        }
        if !seen.insert(label.clone()) {
            return Err(input(format!("{what}: duplicate label `{label}`")));
        }
        out.push((label.clone(), parse_rational(v, &format!("{what}.{label}"))?));
    }
    Ok(out)
}

fn parse_measure(ground: &GroundSet, value: &Value, what: &str) -> Result<Measure, CliError> {
    let masses = parse_atom_map(ground, value, what)?;
    Measure::from_masses(ground.clone(), masses).map_err(|e| input(format!("{what}: {e}")))
}

fn parse_function(
    ground: &GroundSet,
    value: &Value,
    what: &str,
) -> Result<SimpleFunction, CliError> {
    let entries = parse_atom_map(ground, value, what)?;
    let mut values = vec![Rational::zero(); ground.len()];
    for (label, v) in entries {
        let idx = ground.index_of(&label).expect("validated above");
        values[idx] = v;
    }
    SimpleFunction::new(ground.clone(), values).map_err(|e| input(format!("{what}: {e}")))
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| input(format!("malformed JSON: {e}")))?;
    let root = object(&value, "instance")?;
    check_keys(
        root,
        &[
            "ground", "sets", "measure", "measures", "ideal", "functional", "families", "order",
        ],
        "the instance document",
    )?;

    let ground_value = root
        .get("ground")
        .ok_or_else(|| input("missing required key `ground`"))?;
    let ground = GroundSet::new(string_list(ground_value, "ground")?)
        .map_err(|e| input(format!("ground: {e}")))?;

    let sets = root
        .get("sets")
        .map(|v| -> Result<SetSystem, CliError> {
            let arr = v
                .as_array()
                .ok_or_else(|| input("`sets` must be an array of label arrays"))?;
            let members = arr
                .iter()
                .map(|s| parse_subset(&ground, s, "sets"))
                .collect::<Result<Vec<_>, _>>()?;
            SetSystem::new(ground.clone(), members).map_err(|e| input(format!("sets: {e}")))
        })
        .transpose()?;

    let measure = root
        .get("measure")
        .map(|v| parse_measure(&ground, v, "measure"))
        .transpose()?;

    let measures = root
        .get("measures")
        .map(|v| -> Result<Vec<Measure>, CliError> {
            let arr = v
                .as_array()
                .ok_or_else(|| input("`measures` must be an array of measures"))?;
            arr.iter()
                .enumerate()
                .map(|(i, m)| parse_measure(&ground, m, &format!("measures[{i}]")))
                .collect()
        })
        .transpose()?;

    let ideal_generators = root
        .get("ideal")
        .map(|v| -> Result<Vec<Subset>, CliError> {
            let obj = object(v, "ideal")?;
            check_keys(obj, &["generators"], "`ideal`")?;
            let gens = obj
                .get("generators")
                .ok_or_else(|| input("`ideal` must contain `generators`"))?;
            let arr = gens
                .as_array()
                .ok_or_else(|| input("`ideal.generators` must be an array of label arrays"))?;
            arr.iter()
                .map(|s| parse_subset(&ground, s, "ideal.generators"))
                .collect()
        })
        .transpose()?;

    let functional = root
        .get("functional")
        .map(|v| -> Result<VertexFunctional, CliError> {
            let obj = object(v, "functional")?;
            check_keys(obj, &["vertices"], "`functional`")?;
            let verts = obj
                .get("vertices")
                .ok_or_else(|| input("`functional` must contain `vertices`"))?;
            let arr = verts
                .as_array()
                .ok_or_else(|| input("`functional.vertices` must be an array of measures"))?;
            let vertices = arr
                .iter()
                .enumerate()
                .map(|(i, m)| parse_measure(&ground, m, &format!("functional.vertices[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            VertexFunctional::new(ground.clone(), vertices)
                .map_err(|e| input(format!("functional: {e}")))
        })
        .transpose()?;

    let families = root
        .get("families")
        .map(|v| -> Result<Vec<SetSystem>, CliError> {
            let arr = v
                .as_array()
                .ok_or_else(|| input("`families` must be an array of set families"))?;
            arr.iter()
                .enumerate()
                .map(|(i, fam)| {
                    let sets = fam.as_array().ok_or_else(|| {
                        input(format!("families[{i}] must be an array of label arrays"))
                    })?;
                    let members = sets
                        .iter()
                        .map(|s| parse_subset(&ground, s, &format!("families[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    SetSystem::new(ground.clone(), members)
                        .map_err(|e| input(format!("families[{i}]: {e}")))
                })
                .collect()
        })
        .transpose()?;

    let order = root
        .get("order")
        .map(|v| -> Result<OrderSection, CliError> {
            let obj = object(v, "order")?;
            check_keys(obj, &["backing", "f", "g"], "`order`")?;
            let backing = obj
                .get("backing")
                .map(|b| {
                    b.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| input("`order.backing` must be a string"))
                })
                .transpose()?;
            if let Some(b) = &backing {
                if b != "measure" && b != "ideal" {
                    return Err(input(format!(
                        "`order.backing` must be \"measure\" or \"ideal\", got `{b}`"
                    )));
                }
            }
            let f = obj
                .get("f")
                .map(|fv| parse_function(&ground, fv, "order.f"))
                .transpose()?;
            let g = obj
                .get("g")
                .map(|gv| parse_function(&ground, gv, "order.g"))
                .transpose()?;
            Ok(OrderSection { backing, f, g })
        })
        .transpose()?;

    Ok(InstanceDocument {
        ground,
        sets,
        measure,
        measures,
        ideal_generators,
        functional,
        families,
        order,
    })
}
