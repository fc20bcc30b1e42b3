//! Model, partition and projection files.
//!
//! Model files are JSON of the shape
//! `{"points":[{"id":"x11","props":["r"]}],"edges":[["x11","x12"]]}`;
//! partition files are `{"classes":[["x11","x21"],["x12"]]}`; projection
//! files are `{"map":{"x11":"q0"}}`. Unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimize::MinimizationResult;
use crate::model::QdModel;
use crate::partition::Partition;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    points: Vec<PointEntry>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    props: Vec<String>,
}

/// Parse a model file. Point order in the file becomes point-id order.
pub fn load_model(text: &str) -> Result<QdModel> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("model file: {e}")))?;
    let points: Vec<(String, Vec<String>)> = file
        .points
        .into_iter()
        .map(|p| (p.id, p.props))
        .collect();
    let point_refs: Vec<(&str, Vec<&str>)> = points
        .iter()
        .map(|(id, props)| (id.as_str(), props.iter().map(|s| s.as_str()).collect()))
        .collect();
    let edge_refs: Vec<(&str, &str)> = file
        .edges
        .iter()
        .map(|(s, d)| (s.as_str(), d.as_str()))
        .collect();
    QdModel::new(&point_refs, &edge_refs)
}

/// Serialize a model canonically: points in id order with sorted props,
/// edges sorted by endpoint ids. `load_model(save_model(m))` reproduces
/// `m` exactly and re-saving is byte-stable.
pub fn save_model(model: &QdModel) -> String {
    let points: Vec<PointEntry> = (0..model.len())
        .map(|x| PointEntry {
            id: model.name(x).to_string(),
            props: model.label(x).to_vec(),
        })
        .collect();
    let edges: Vec<(String, String)> = model
        .edges()
        .map(|(s, d)| (model.name(s).to_string(), model.name(d).to_string()))
        .collect();
    let file = ModelFile { points, edges };
    serde_json::to_string_pretty(&file).expect("model serializes")
}

/// Validate raw model-file text without constructing a model, reporting
/// every problem instead of stopping at the first.
pub fn validate_model_text(text: &str) -> crate::model::Diagnostics {
    let mut d = crate::model::Diagnostics::default();
    let file: ModelFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => {
            d.push_error(format!("model file does not match the schema: {e}"));
            return d;
        }
    };
    if file.points.is_empty() {
        d.push_error("model has no points (the carrier must be non-empty)".into());
    }
    let mut seen = std::collections::HashSet::new();
    for p in &file.points {
        if !seen.insert(p.id.as_str()) {
            d.push_error(format!("duplicate point id {:?}", p.id));
        }
    }
    for (s, t) in &file.edges {
        for end in [s, t] {
            if !seen.contains(end.as_str()) {
                d.push_error(format!("edge [{s:?}, {t:?}] references unknown point {end:?}"));
            }
        }
    }
    d
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionFile {
    classes: Vec<Vec<String>>,
}

pub fn load_partition(text: &str, model: &QdModel) -> Result<Partition> {
    let file: PartitionFile =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("partition file: {e}")))?;
    let mut classes = Vec::with_capacity(file.classes.len());
    for class in &file.classes {
        let mut ids = Vec::with_capacity(class.len());
        for name in class {
            ids.push(model.point(name)?);
        }
        classes.push(ids);
    }
    Partition::from_classes(model.len(), &classes)
}

pub fn save_partition(model: &QdModel, partition: &Partition) -> String {
    let classes: Vec<Vec<String>> = partition
        .classes()
        .iter()
        .map(|cls| cls.iter().map(|&x| model.name(x).to_string()).collect())
        .collect();
    serde_json::to_string_pretty(&PartitionFile { classes }).expect("partition serializes")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectionFile {
    map: BTreeMap<String, String>,
}

/// Serialize the projection of a minimization result.
pub fn save_projection(model: &QdModel, result: &MinimizationResult) -> String {
    let map: BTreeMap<String, String> = (0..model.len())
        .map(|x| {
            (
                model.name(x).to_string(),
                result.quotient.name(result.projection[x]).to_string(),
            )
        })
        .collect();
    serde_json::to_string_pretty(&ProjectionFile { map }).expect("projection serializes")
}
