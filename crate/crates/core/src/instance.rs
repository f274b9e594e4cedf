//! JSON file formats for instances and measurement reports.
//!
//! Files are label-driven: points carry the construction role names and the
//! insertion order references labels, not indices. Serialization is
//! deterministic (struct field order, shortest round-trip float repr), so
//! identical inputs produce byte-identical files.

use crate::construction::InsertionOrder;
use crate::error::{Error, Result};
use crate::generators::{GenParams, GeneratedInstance};
use crate::geometry::{ConeSystem, Point};
use crate::metrics::PairStretch;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const INSTANCE_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyMeta {
    pub name: String,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<GenParams>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: String,
    pub m: u32,
    pub points: Vec<LabeledPoint>,
    pub order: Vec<String>,
    pub family: Option<FamilyMeta>,
}

impl InstanceFile {
    pub fn from_generated(g: &GeneratedInstance) -> Self {
        Self {
            version: INSTANCE_VERSION.into(),
            m: g.system.m(),
            points: g
                .labels
                .iter()
                .zip(&g.points)
                .map(|(label, p)| LabeledPoint {
                    label: label.clone(),
                    x: p.x,
                    y: p.y,
                })
                .collect(),
            order: g
                .order
                .as_slice()
                .iter()
                .map(|&i| g.labels[i].clone())
                .collect(),
            family: Some(FamilyMeta {
                name: g.family.kind.name().into(),
                k: g.family.k,
                params: Some(g.params.clone()),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::BadInstance(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != INSTANCE_VERSION {
            return Err(Error::BadInstance(format!(
                "unsupported version {:?}",
                self.version
            )));
        }
        if self.m < 3 {
            return Err(Error::BadInstance(format!("m must be >= 3, got {}", self.m)));
        }
        let mut seen = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::BadInstance(format!(
                    "point {:?} has non-finite coordinates",
                    p.label
                )));
            }
            if seen.insert(p.label.clone(), i).is_some() {
                return Err(Error::BadInstance(format!("duplicate label {:?}", p.label)));
            }
        }
        if self.order.len() != self.points.len() {
            return Err(Error::BadInstance(
                "order must list every point label exactly once".into(),
            ));
        }
        let mut used = vec![false; self.points.len()];
        for label in &self.order {
            match seen.get(label) {
                Some(&i) if !used[i] => used[i] = true,
                Some(_) => {
                    return Err(Error::BadInstance(format!(
                        "label {label:?} repeated in order"
                    )))
                }
                None => {
                    return Err(Error::BadInstance(format!(
                        "order references unknown label {label:?}"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn system(&self) -> Result<ConeSystem> {
        ConeSystem::new(self.m)
    }

    pub fn point_list(&self) -> Vec<Point> {
        self.points.iter().map(|p| Point::new(p.x, p.y)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.label.clone()).collect()
    }

    pub fn insertion_order(&self) -> Result<InsertionOrder> {
        let index: HashMap<&str, usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.label.as_str(), i))
            .collect();
        let order: Vec<usize> = self
            .order
            .iter()
            .map(|l| index[l.as_str()])
            .collect();
        InsertionOrder::new(order, self.points.len())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PerPairRow {
    pub u: String,
    pub w: String,
    pub graph_distance: f64,
    pub euclidean: f64,
    /// Null for disconnected pairs.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub m: u32,
    pub mode: String,
    pub max_stretch: f64,
    pub witness: (String, String),
    pub upper_bound: Option<f64>,
    pub lower_bound: Option<f64>,
    pub disconnected: bool,
    pub checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_pair: Option<Vec<PerPairRow>>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadInstance(e.to_string()))
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn per_pair_rows(labels: &[String], pairs: &[PairStretch]) -> Vec<PerPairRow> {
    pairs
        .iter()
        .map(|p| PerPairRow {
            u: labels[p.u].clone(),
            w: labels[p.w].clone(),
            graph_distance: p.graph_distance,
            euclidean: p.euclidean,
            ratio: p.ratio,
        })
        .collect()
}

/// Per-pair rows as CSV with a header line.
pub fn per_pair_csv(rows: &[PerPairRow]) -> String {
    let mut out = String::from("u,w,graph_distance,euclidean,ratio\n");
    for r in rows {
        let ratio = r
            .ratio
            .map(|x| format!("{x}"))
            .unwrap_or_else(|| "unreachable".into());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.u, r.w, r.graph_distance, r.euclidean, ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random;

    #[test]
    fn round_trip_is_identity_on_canonical_form() {
        let inst = gen_random(8, 12, 3, 1.0).unwrap();
        let file = InstanceFile::from_generated(&inst);
        let text = file.to_json();
        let reparsed = InstanceFile::from_json(&text).unwrap();
        assert_eq!(text, reparsed.to_json());
        assert_eq!(file.point_list(), reparsed.point_list());
        assert_eq!(
            file.insertion_order().unwrap(),
            reparsed.insertion_order().unwrap()
        );
    }

    #[test]
    fn validation_rejects_broken_files() {
        let inst = gen_random(8, 4, 3, 1.0).unwrap();
        let mut file = InstanceFile::from_generated(&inst);
        file.order[0] = "nope".into();
        assert!(matches!(
            InstanceFile::from_json(&file.to_json()),
            Err(Error::BadInstance(_))
        ));

        let mut file = InstanceFile::from_generated(&inst);
        file.points[1].label = file.points[0].label.clone();
        assert!(InstanceFile::from_json(&file.to_json()).is_err());

        let mut file = InstanceFile::from_generated(&inst);
        file.order.pop();
        assert!(InstanceFile::from_json(&file.to_json()).is_err());

        assert!(InstanceFile::from_json("{\"version\":\"1\"").is_err());
    }
}
