//! Effective configuration: per-command defaults, overlaid by the JSON file,
//! overlaid by command-line flags.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::LabError;

pub fn load(path: Option<&Path>) -> Result<Option<Value>, LabError> {
    let Some(path) = path else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
    if !v.is_object() {
        return Err(LabError::Config(format!("{}: top level must be an object", path.display())));
    }
    Ok(Some(v))
}

/// Merge `file` and `flags` (a struct of `Option`s serialized with `None`
/// skipped) into the typed config `C`, whose serde defaults supply the rest.
pub fn resolve<F: Serialize, C: DeserializeOwned>(file: Option<&Value>, flags: &F) -> Result<C, LabError> {
    let mut merged = Map::new();
    if let Some(Value::Object(m)) = file {
        merged.extend(m.clone());
    }
    match serde_json::to_value(flags).map_err(|e| LabError::Config(e.to_string()))? {
        Value::Object(m) => merged.extend(m.into_iter().filter(|(_, v)| !v.is_null())),
        _ => unreachable!("flag structs serialize to objects"),
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| LabError::Config(e.to_string()))
}

pub fn is_false(b: &bool) -> bool {
    !*b
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;
    use serde_json::json;

    #[derive(Serialize)]
    struct Flags {
        #[serde(skip_serializing_if = "Option::is_none")]
        tau: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        runs: Option<usize>,
    }

    #[derive(Deserialize, Debug, PartialEq)]
    #[serde(default, deny_unknown_fields)]
    struct Conf {
        tau: f64,
        runs: usize,
    }

    impl Default for Conf {
        fn default() -> Self {
            Conf { tau: 1.0, runs: 10 }
        }
    }

    #[test]
    fn flags_override_file_override_defaults() {
        let file = json!({"tau": 2.0, "runs": 50});
        let c: Conf = resolve(Some(&file), &Flags { tau: Some(3.0), runs: None }).unwrap();
        assert_eq!(c, Conf { tau: 3.0, runs: 50 });
        let c: Conf = resolve(None, &Flags { tau: None, runs: None }).unwrap();
        assert_eq!(c, Conf::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let file = json!({"tua": 2.0});
        assert!(resolve::<_, Conf>(Some(&file), &Flags { tau: None, runs: None }).is_err());
    }
}
