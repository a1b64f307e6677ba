//! JSON instance files.
//!
//! ```json
//! { "q": 4, "kind": "ifc",
//!   "states": [ { "n11": 2, "n21": 1, "n22": 4, "p": "1/2" },
//!               { "n11": 1, "n21": 4, "n22": 1, "p": "1/2" } ] }
//! ```
//!
//! `kind = "mac"` records carry `n1`, `n2`, `p` instead. `p` is a string
//! `"a/b"` or an integer (string or JSON number).

use serde_json::{json, Map, Value};

use super::{FadingDistribution, Level, MacDistribution, MacState, ModelError, StateTriple};
use crate::scalar::Probability;

/// A parsed instance of either channel family.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance<T> {
    Ifc(FadingDistribution<T>),
    Mac(MacDistribution<T>),
}

impl<T: Probability> Instance<T> {
    pub fn q(&self) -> Level {
        match self {
            Instance::Ifc(d) => d.q(),
            Instance::Mac(d) => d.q(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Ifc(_) => "ifc",
            Instance::Mac(_) => "mac",
        }
    }
}

fn syntax(msg: impl Into<String>) -> ModelError {
    ModelError::Syntax(msg.into())
}

fn level_field(record: &Map<String, Value>, name: &str, q: Level, idx: usize) -> Result<Level, ModelError> {
    let v = record.get(name).ok_or_else(|| syntax(format!("state {idx}: missing field `{name}`")))?;
    let n = v.as_i64().ok_or_else(|| syntax(format!("state {idx}: `{name}` must be an integer")))?;
    if n < 0 || n > i64::from(q) {
        return Err(ModelError::LevelOutOfRange { level: n, q });
    }
    Ok(n as Level)
}

fn probability_field<T: Probability>(record: &Map<String, Value>, idx: usize) -> Result<T, ModelError> {
    let v = record.get("p").ok_or_else(|| syntax(format!("state {idx}: missing field `p`")))?;
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(syntax(format!("state {idx}: `p` must be a rational string or an integer"))),
    };
    T::parse_probability(&text).ok_or_else(|| syntax(format!("state {idx}: cannot parse probability `{text}`")))
}

fn check_fields(record: &Map<String, Value>, allowed: &[&str], idx: usize) -> Result<(), ModelError> {
    for key in record.keys() {
        if key == "n12" {
            return Err(ModelError::TwoSided);
        }
        if !allowed.contains(&key.as_str()) {
            return Err(syntax(format!("state {idx}: unknown field `{key}`")));
        }
    }
    Ok(())
}

/// Parses and validates an instance file.
pub fn parse_instance<T: Probability>(text: &str) -> Result<Instance<T>, ModelError> {
    let root: Value = serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
    let root = root.as_object().ok_or_else(|| syntax("instance must be a JSON object"))?;
    for key in root.keys() {
        if !["q", "kind", "states"].contains(&key.as_str()) {
            return Err(syntax(format!("unknown top-level field `{key}`")));
        }
    }
    let q = root.get("q").and_then(Value::as_u64).ok_or_else(|| syntax("`q` must be a positive integer"))?;
    let q = Level::try_from(q).map_err(|_| ModelError::InvalidDepth(Level::MAX))?;
    let kind = root.get("kind").and_then(Value::as_str).unwrap_or("ifc");
    let states = root.get("states").and_then(Value::as_array).ok_or_else(|| syntax("`states` must be a list"))?;

    let records = states
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_object().map(|o| (i, o)).ok_or_else(|| syntax(format!("state {i}: not an object"))))
        .collect::<Result<Vec<_>, _>>()?;

    match kind {
        "ifc" => {
            let atoms = records
                .into_iter()
                .map(|(i, r)| {
                    check_fields(r, &["n11", "n21", "n22", "p"], i)?;
                    let s = StateTriple::new(
                        level_field(r, "n11", q, i)?,
                        level_field(r, "n21", q, i)?,
                        level_field(r, "n22", q, i)?,
                    );
                    Ok((s, probability_field(r, i)?))
                })
                .collect::<Result<Vec<_>, ModelError>>()?;
            Ok(Instance::Ifc(FadingDistribution::new(q, atoms)?))
        }
        "mac" => {
            let atoms = records
                .into_iter()
                .map(|(i, r)| {
                    check_fields(r, &["n1", "n2", "p"], i)?;
                    let s = MacState::new(level_field(r, "n1", q, i)?, level_field(r, "n2", q, i)?);
                    Ok((s, probability_field(r, i)?))
                })
                .collect::<Result<Vec<_>, ModelError>>()?;
            Ok(Instance::Mac(MacDistribution::new(q, atoms)?))
        }
        other => Err(syntax(format!("unknown kind `{other}`"))),
    }
}

/// Renders an instance in the file format; probabilities use their exact
/// `Display` form.
pub fn serialize_instance<T: Probability>(instance: &Instance<T>) -> String {
    let value = match instance {
        Instance::Ifc(d) => json!({
            "q": d.q(),
            "kind": "ifc",
            "states": d.atoms().iter().map(|(s, p)| json!({
                "n11": s.n11, "n21": s.n21, "n22": s.n22, "p": p.to_string(),
            })).collect::<Vec<_>>(),
        }),
        Instance::Mac(d) => json!({
            "q": d.q(),
            "kind": "mac",
            "states": d.atoms().iter().map(|(s, p)| json!({
                "n1": s.n1, "n2": s.n2, "p": p.to_string(),
            })).collect::<Vec<_>>(),
        }),
    };
    serde_json::to_string_pretty(&value).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rational, Rational};

    const EXAMPLE2: &str = r#"{"q": 4, "kind": "ifc", "states": [
        {"n11": 2, "n21": 1, "n22": 4, "p": "1/2"},
        {"n11": 1, "n21": 4, "n22": 1, "p": "1/2"}]}"#;

    #[test]
    fn parses_ifc_file() {
        let inst: Instance<Rational> = parse_instance(EXAMPLE2).unwrap();
        let Instance::Ifc(d) = inst else { panic!("expected ifc") };
        assert_eq!(d.atoms()[0], (StateTriple::new(2, 1, 4), rational(1, 2)));
        assert_eq!(d.atoms()[1], (StateTriple::new(1, 4, 1), rational(1, 2)));
    }

    #[test]
    fn reduces_probabilities() {
        let text = r#"{"q": 2, "states": [{"n11": 1, "n21": 0, "n22": 2, "p": "2/4"},
                                          {"n11": 2, "n21": 0, "n22": 2, "p": "1/2"}]}"#;
        let Instance::Ifc(d) = parse_instance::<Rational>(text).unwrap() else { panic!() };
        assert_eq!(d.atoms()[0].1.to_string(), "1/2");
    }

    #[test]
    fn integer_probability_and_mac_kind() {
        let text = r#"{"q": 4, "kind": "mac", "states": [{"n1": 4, "n2": 3, "p": 1}]}"#;
        let Instance::Mac(d) = parse_instance::<Rational>(text).unwrap() else { panic!() };
        assert_eq!(d.atoms()[0], (MacState::new(4, 3), rational(1, 1)));
    }

    #[test]
    fn error_paths() {
        let bad = |t: &str| parse_instance::<Rational>(t).unwrap_err();
        assert!(matches!(bad("{"), ModelError::Syntax(_)));
        assert!(matches!(
            bad(r#"{"q": 4, "states": [{"n11": 5, "n21": 0, "n22": 0, "p": "1"}]}"#),
            ModelError::LevelOutOfRange { level: 5, q: 4 }
        ));
        assert!(matches!(
            bad(r#"{"q": 4, "states": [{"n11": -1, "n21": 0, "n22": 0, "p": "1"}]}"#),
            ModelError::LevelOutOfRange { level: -1, q: 4 }
        ));
        assert!(matches!(
            bad(r#"{"q": 2, "states": [{"n11": 1, "n21": 1, "n22": 1, "p": "1/3"}]}"#),
            ModelError::NonUnitMass(_)
        ));
        assert!(matches!(
            bad(r#"{"q": 2, "states": [{"n11": 1, "n12": 1, "n21": 1, "n22": 1, "p": "1"}]}"#),
            ModelError::TwoSided
        ));
        assert!(matches!(
            bad(r#"{"q": 2, "states": [{"n11": 1, "n21": 1, "n22": 1, "p": "half"}]}"#),
            ModelError::Syntax(_)
        ));
        assert!(matches!(bad(r#"{"q": 2, "kind": "bc", "states": []}"#), ModelError::Syntax(_)));
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let inst: Instance<Rational> = parse_instance(EXAMPLE2).unwrap();
        let back: Instance<Rational> = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, back);
    }
}
