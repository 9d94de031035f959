//! The `ncdivisor/1` JSON format for a collective normal divisor. Surface
//! and component keys are `"1"`, `"2"`, `"3"`; each maps to the list of
//! classes `c_{1,i}, ..., c_{α,i}` (or witnesses `G_{1,i}, ...`).

use std::collections::BTreeMap;

use serde::Deserialize;

use super::CollectiveDivisor;
use crate::error::{Error, Result};
use crate::exactlat::LatticeVector;
use crate::ncconfig::NCConfiguration;

pub const DIVISOR_SCHEMA: &str = "ncdivisor/1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorDoc {
    schema: String,
    classes: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default)]
    witnesses: Option<BTreeMap<String, Vec<Vec<i64>>>>,
}

fn per_index(map: &BTreeMap<String, Vec<Vec<i64>>>, what: &str) -> Result<[Vec<LatticeVector>; 3]> {
    if let Some(k) = map.keys().find(|k| !["1", "2", "3"].contains(&k.as_str())) {
        return Err(Error::Parse(format!("{what}: key `{k}` is not 1, 2 or 3")));
    }
    let get = |k: &str| -> Result<Vec<LatticeVector>> {
        let rows = map
            .get(k)
            .ok_or_else(|| Error::Parse(format!("{what}: missing key `{k}`")))?;
        Ok(rows.iter().map(|r| LatticeVector::from_i64(r)).collect())
    };
    Ok([get("1")?, get("2")?, get("3")?])
}

/// Parses a divisor against `config`; `m_l` is read off `D1`.
pub fn divisor_from_json(config: &NCConfiguration, text: &str) -> Result<CollectiveDivisor> {
    let doc: DivisorDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema != DIVISOR_SCHEMA {
        return Err(Error::Parse(format!(
            "schema `{}` is not `{DIVISOR_SCHEMA}`",
            doc.schema
        )));
    }
    let classes = per_index(&doc.classes, "classes")?;
    if classes.iter().any(|c| c.len() != classes[0].len()) {
        return Err(Error::Parse("every surface needs the same number of curves".into()));
    }
    for (s, list) in classes.iter().enumerate() {
        for c in list {
            config.surfaces[s].lattice.check(c, "curve class")?;
        }
    }
    let witnesses = doc.witnesses.as_ref().map(|w| per_index(w, "witnesses")).transpose()?;
    CollectiveDivisor::new(config, classes, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{base_configuration, FamilyId};

    #[test]
    fn parses_quintic_divisor() {
        let y = base_configuration(FamilyId::Quintic).unwrap();
        let text = r#"{"schema":"ncdivisor/1","classes":{"1":[[1],[4]],"2":[[1],[4]],"3":[[1],[4]]}}"#;
        let c = divisor_from_json(&y, text).unwrap();
        assert_eq!(c.alpha(), 2);
        assert_eq!(c.gamma(), 15.into());
        assert!(!c.g_witness_present());
    }

    #[test]
    fn rejects_malformed() {
        let y = base_configuration(FamilyId::Quintic).unwrap();
        for text in [
            r#"{"schema":"ncdivisor/2","classes":{"1":[[5]],"2":[[5]],"3":[[5]]}}"#,
            r#"{"schema":"ncdivisor/1","classes":{"1":[[5]],"2":[[5]]}}"#,
            r#"{"schema":"ncdivisor/1","classes":{"1":[[5]],"2":[[5]],"3":[[5],[0]]}}"#,
            r#"{"schema":"ncdivisor/1","classes":{"1":[[5,1]],"2":[[5]],"3":[[5]]}}"#,
            r#"{"schema":"ncdivisor/1","classes":{"1":[[5.5]],"2":[[5]],"3":[[5]]}}"#,
            r#"{"schema":"ncdivisor/1","classes":{"1":[[5]],"2":[[5]],"4":[[5]]}}"#,
        ] {
            assert!(matches!(divisor_from_json(&y, text), Err(Error::Parse(_) | Error::DimensionMismatch { .. })), "{text}");
        }
    }
}
