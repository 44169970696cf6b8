use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dendrogram::{format_cutoff, DepthRecord, Dendrogram};
use crate::{Error, Result};

/// Value of the `format` field of every trace document.
pub const TRACE_FORMAT: &str = "adaptive-linkage-trace";
const TRACE_VERSION: u32 = 1;

/// Provenance stored alongside a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunMetadata {
    /// `adaptive` or a stepwise linkage name.
    pub method: String,
    /// `sample`, `population` or `none`.
    pub sd_mode: String,
    pub dataset_sha256: String,
    pub columns: Vec<String>,
}

/// The serialized trace: one entry per depth with the cut-off and the
/// clusters formed, each listed by its sorted leaf labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub format: String,
    pub version: u32,
    pub method: String,
    pub sd_mode: String,
    pub dataset_sha256: String,
    pub columns: Vec<String>,
    pub labels: Vec<String>,
    pub records: Vec<RecordEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordEntry {
    pub depth: usize,
    /// Two-decimal display value.
    pub cutoff: String,
    /// Full precision.
    pub cutoff_exact: f64,
    pub groups: Vec<Vec<String>>,
}

/// A trace loaded back from a document.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub metadata: RunMetadata,
    pub labels: Vec<String>,
    pub records: Vec<DepthRecord>,
}

impl Trace {
    pub fn to_dendrogram(&self) -> Result<Dendrogram> {
        Dendrogram::from_trace(self.labels.clone(), self.records.clone())
    }

    pub fn to_document(&self) -> TraceDocument {
        document(&self.labels, &self.records, &self.metadata)
    }
}

pub fn write_trace(d: &Dendrogram, metadata: &RunMetadata) -> TraceDocument {
    document(d.labels(), d.trace(), metadata)
}

fn document(labels: &[String], records: &[DepthRecord], metadata: &RunMetadata) -> TraceDocument {
    let records = records
        .iter()
        .map(|r| RecordEntry {
            depth: r.depth,
            cutoff: format_cutoff(r.cutoff),
            cutoff_exact: r.cutoff,
            groups: r
                .groups
                .iter()
                .map(|g| {
                    let mut names: Vec<String> = g.iter().map(|&l| labels[l].clone()).collect();
                    names.sort();
                    names
                })
                .collect(),
        })
        .collect();
    TraceDocument {
        format: TRACE_FORMAT.to_owned(),
        version: TRACE_VERSION,
        method: metadata.method.clone(),
        sd_mode: metadata.sd_mode.clone(),
        dataset_sha256: metadata.dataset_sha256.clone(),
        columns: metadata.columns.clone(),
        labels: labels.to_vec(),
        records,
    }
}

impl TraceDocument {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

/// Validates `doc` and converts it back into depth records.
pub fn read_trace(doc: &TraceDocument) -> Result<Trace> {
    if doc.format != TRACE_FORMAT {
        return Err(Error::Schema(format!("unexpected format `{}`", doc.format)));
    }
    if doc.version != TRACE_VERSION {
        return Err(Error::Schema(format!("unsupported version {}", doc.version)));
    }
    let mut index = HashMap::with_capacity(doc.labels.len());
    for (i, l) in doc.labels.iter().enumerate() {
        if l.is_empty() || index.insert(l.as_str(), i).is_some() {
            return Err(Error::Schema(format!("invalid or duplicate label `{l}`")));
        }
    }
    let mut records = Vec::with_capacity(doc.records.len());
    for entry in &doc.records {
        if !(entry.cutoff_exact.is_finite() && entry.cutoff_exact >= 0.0) {
            return Err(Error::Schema(format!(
                "invalid cut-off at depth {}",
                entry.depth
            )));
        }
        if entry.cutoff != format_cutoff(entry.cutoff_exact) {
            return Err(Error::Schema(format!(
                "display cut-off `{}` disagrees with {} at depth {}",
                entry.cutoff, entry.cutoff_exact, entry.depth
            )));
        }
        let groups = entry
            .groups
            .iter()
            .map(|g| {
                let mut leaves = g
                    .iter()
                    .map(|l| {
                        index
                            .get(l.as_str())
                            .copied()
                            .ok_or_else(|| Error::Schema(format!("unknown label `{l}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                leaves.sort_unstable();
                Ok(leaves)
            })
            .collect::<Result<Vec<_>>>()?;
        records.push(DepthRecord {
            depth: entry.depth,
            cutoff: entry.cutoff_exact,
            groups,
        });
    }
    let trace = Trace {
        metadata: RunMetadata {
            method: doc.method.clone(),
            sd_mode: doc.sd_mode.clone(),
            dataset_sha256: doc.dataset_sha256.clone(),
            columns: doc.columns.clone(),
        },
        labels: doc.labels.clone(),
        records,
    };
    trace.to_dendrogram().map_err(|e| match e {
        Error::Schema(m) => Error::Schema(m),
        other => Error::Schema(other.to_string()),
    })?;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive::build_dendrogram;
    use crate::data::{NormalizedDataset, SdMode};
    use crate::io::{dataset_sha256, fixture::Fixture};

    fn meta(columns: &[String]) -> RunMetadata {
        RunMetadata {
            method: "adaptive".into(),
            sd_mode: "sample".into(),
            dataset_sha256: "00".into(),
            columns: columns.to_vec(),
        }
    }

    #[test]
    fn single_leaf_has_no_records() {
        let nd = NormalizedDataset::from_coords(vec!["a".into()], vec![vec![0.0]]).unwrap();
        let d = build_dendrogram(&nd).unwrap();
        let doc = write_trace(&d, &meta(nd.column_names()));
        assert!(doc.records.is_empty());
        let back = read_trace(&TraceDocument::from_json(&doc.to_json()).unwrap()).unwrap();
        assert!(back.records.is_empty());
    }

    #[test]
    fn para_round_trip() {
        let data = Fixture::Para.dataset();
        let nd = data.normalize(SdMode::Sample).unwrap();
        let d = build_dendrogram(&nd).unwrap();
        let mut m = meta(nd.column_names());
        m.dataset_sha256 = dataset_sha256(&data);
        let doc = write_trace(&d, &m);
        assert_eq!(doc.records[0].cutoff, "1.05");
        assert_eq!(doc.records[0].groups[0], vec!["Br", "Cl"]);

        let json = doc.to_json();
        let trace = read_trace(&TraceDocument::from_json(&json).unwrap()).unwrap();
        assert_eq!(trace.records, d.trace());
        assert_eq!(trace.metadata, m);
        assert_eq!(trace.to_document().to_json(), json);
        assert_eq!(trace.to_dendrogram().unwrap(), d);
    }

    #[test]
    fn schema_errors() {
        let nd = NormalizedDataset::from_coords(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0], vec![1.0], vec![5.0]],
        )
        .unwrap();
        let d = build_dendrogram(&nd).unwrap();
        let good = write_trace(&d, &meta(nd.column_names()));

        assert!(matches!(TraceDocument::from_json("{"), Err(Error::Schema(_))));
        assert!(matches!(
            TraceDocument::from_json(&good.to_json().replace("\"version\"", "\"extra\": 1, \"version\"")),
            Err(Error::Schema(_))
        ));

        let mut bad = good.clone();
        bad.format = "other".into();
        assert!(read_trace(&bad).is_err());

        let mut bad = good.clone();
        bad.records[0].cutoff = "9.99".into();
        assert!(read_trace(&bad).is_err());

        let mut bad = good.clone();
        bad.records[0].groups[0][0] = "zzz".into();
        assert!(read_trace(&bad).is_err());

        let mut bad = good.clone();
        bad.records.swap(0, 1);
        assert!(read_trace(&bad).is_err());

        let mut bad = good;
        bad.labels[1] = "a".into();
        assert!(read_trace(&bad).is_err());
    }
}
