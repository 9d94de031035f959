//! The `ncconfig/1` JSON format. Component and surface keys are 1-based
//! strings; every number must be an integer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{
    adjacent, component_id, surface_id, ChernNumbers, ComponentGeometry, NCConfiguration,
    SurfaceGeometry, TripleCurve,
};
use crate::error::{Error, Result};
use crate::exactlat::{IntegerMatrix, IntersectionLattice, LatticeVector};

pub const CONFIG_SCHEMA: &str = "ncconfig/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    components: Vec<ComponentDoc>,
    surfaces: Vec<SurfaceDoc>,
    triple: TripleCurveDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h2_total: Option<usize>,
    #[serde(default)]
    lattice_is_full: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    name: String,
    euler: i64,
    h2_rank: usize,
    class_labels: Vec<String>,
    polarization: Vec<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    boundary: BTreeMap<String, Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chern_numbers: Option<ChernNumbers>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceDoc {
    name: String,
    gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    canonical: Vec<i64>,
    tau_class: Vec<i64>,
    euler: i64,
    #[serde(default)]
    restrictions: BTreeMap<String, Vec<Vec<i64>>>,
    boundary_self: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleCurveDoc {
    euler: i64,
    connected: bool,
}

fn parse_key(key: &str, what: &str) -> Result<usize> {
    match key {
        "1" => Ok(0),
        "2" => Ok(1),
        "3" => Ok(2),
        _ => Err(Error::Parse(format!("{what}: component key `{key}` is not 1, 2 or 3"))),
    }
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Parses an `ncconfig/1` document. Structural problems (wrong schema tag,
/// non-integer numbers, asymmetric Gram matrices, unknown keys) are parse
/// errors; geometric inconsistencies are left to [`super::validate`].
pub fn config_from_json(text: &str) -> Result<NCConfiguration> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema != CONFIG_SCHEMA {
        return Err(Error::Parse(format!(
            "schema `{}` is not `{CONFIG_SCHEMA}`",
            doc.schema
        )));
    }
    if doc.components.len() != 3 || doc.surfaces.len() != 3 {
        return Err(Error::Parse(format!(
            "expected 3 components and 3 surfaces, found {} and {}",
            doc.components.len(),
            doc.surfaces.len()
        )));
    }

    let mut components = Vec::with_capacity(3);
    for (i, c) in doc.components.into_iter().enumerate() {
        let what = component_id(i);
        if c.h2_rank != c.class_labels.len() {
            return Err(Error::Parse(format!(
                "{what}: h2_rank {} but {} class labels",
                c.h2_rank,
                c.class_labels.len()
            )));
        }
        let mut boundary = BTreeMap::new();
        for (key, v) in c.boundary {
            let j = parse_key(&key, &what)?;
            if j == i {
                return Err(Error::Parse(format!("{what}: boundary keyed by itself")));
            }
            boundary.insert(j, LatticeVector::from_i64(&v));
        }
        components.push(ComponentGeometry {
            name: c.name,
            euler: c.euler,
            class_labels: c.class_labels,
            polarization: LatticeVector::from_i64(&c.polarization),
            boundary,
            chern_numbers: c.chern_numbers,
        });
    }
    let components: [ComponentGeometry; 3] = components.try_into().expect("three components");

    let mut surfaces = Vec::with_capacity(3);
    for (s, d) in doc.surfaces.into_iter().enumerate() {
        let what = surface_id(s);
        let rank = d.gram.len();
        let labels = d
            .labels
            .unwrap_or_else(|| (1..=rank).map(|k| format!("b{k}")).collect());
        let lattice = IntersectionLattice::new(d.name.clone(), big_rows(&d.gram), labels)?;
        let adj = adjacent(s);
        let position = |key: &str| -> Result<usize> {
            let c = parse_key(key, &what)?;
            adj.iter().position(|&a| a == c).ok_or_else(|| {
                Error::Parse(format!("{what} is not contained in {}", component_id(c)))
            })
        };
        let mut restrictions: [Option<IntegerMatrix>; 2] = [None, None];
        for (key, rows) in d.restrictions {
            let k = position(&key)?;
            let cols = components[adj[k]].h2_rank();
            restrictions[k] = Some(
                IntegerMatrix::from_rows(big_rows(&rows), cols)
                    .map_err(|e| Error::Parse(format!("{what} restriction from {key}: {e}")))?,
            );
        }
        let mut normals: [Option<LatticeVector>; 2] = [None, None];
        for (key, v) in d.boundary_self {
            normals[position(&key)?] = Some(LatticeVector::from_i64(&v));
        }
        let [Some(n0), Some(n1)] = normals else {
            return Err(Error::Parse(format!(
                "{what}: boundary_self must give the normal class in both {} and {}",
                component_id(adj[0]),
                component_id(adj[1])
            )));
        };
        surfaces.push(SurfaceGeometry {
            name: d.name,
            lattice,
            canonical: LatticeVector::from_i64(&d.canonical),
            tau_class: LatticeVector::from_i64(&d.tau_class),
            euler: d.euler,
            restrictions,
            boundary_self: [n0, n1],
        });
    }
    let surfaces: [SurfaceGeometry; 3] = surfaces.try_into().expect("three surfaces");

    Ok(NCConfiguration {
        name: doc.name.unwrap_or_else(|| "unnamed".to_string()),
        components,
        surfaces,
        triple: TripleCurve {
            euler: doc.triple.euler,
            connected: doc.triple.connected,
        },
        h2_total: doc.h2_total,
        lattice_is_full: doc.lattice_is_full,
        notes: doc.notes,
    })
}

fn small_rows(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| LatticeVector::new(r.clone()).to_i64())
        .collect()
}

/// Serializes to the `ncconfig/1` JSON value; fails only if a number exceeds 64 bits.
pub fn config_to_value(config: &NCConfiguration) -> Result<serde_json::Value> {
    let components = config
        .components
        .iter()
        .map(|c| {
            Ok(ComponentDoc {
                name: c.name.clone(),
                euler: c.euler,
                h2_rank: c.h2_rank(),
                class_labels: c.class_labels.clone(),
                polarization: c.polarization.to_i64()?,
                boundary: c
                    .boundary
                    .iter()
                    .map(|(j, v)| Ok(((j + 1).to_string(), v.to_i64()?)))
                    .collect::<Result<_>>()?,
                chern_numbers: c.chern_numbers,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let surfaces = config
        .surfaces
        .iter()
        .enumerate()
        .map(|(s, d)| {
            let adj = adjacent(s);
            let mut restrictions = BTreeMap::new();
            let mut boundary_self = BTreeMap::new();
            for k in 0..2 {
                let key = (adj[k] + 1).to_string();
                if let Some(m) = &d.restrictions[k] {
                    restrictions.insert(key.clone(), small_rows(&m.to_rows())?);
                }
                boundary_self.insert(key, d.boundary_self[k].to_i64()?);
            }
            Ok(SurfaceDoc {
                name: d.name.clone(),
                gram: small_rows(d.lattice.gram())?,
                labels: Some(d.lattice.labels().to_vec()),
                canonical: d.canonical.to_i64()?,
                tau_class: d.tau_class.to_i64()?,
                euler: d.euler,
                restrictions,
                boundary_self,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = ConfigDoc {
        schema: CONFIG_SCHEMA.to_string(),
        name: Some(config.name.clone()),
        components,
        surfaces,
        triple: TripleCurveDoc {
            euler: config.triple.euler,
            connected: config.triple.connected,
        },
        h2_total: config.h2_total,
        lattice_is_full: config.lattice_is_full,
        notes: config.notes.clone(),
    };
    serde_json::to_value(doc).map_err(|e| Error::Parse(e.to_string()))
}

pub fn config_to_json(config: &NCConfiguration) -> Result<String> {
    let value = config_to_value(config)?;
    serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))
}
