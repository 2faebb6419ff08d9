//! Serialized forms. Sequences are arrays of entries; untwisted trees are
//! `{"sequences": [[1],[3]], "gluing": [1]}` and matrices replace `gluing`
//! with a full `levels` matrix.

use std::fmt;
use std::io::Write;

use arf_core::verify::{Report, Violation};
use arf_core::{
    validate_sequence, validate_tree, MultiplicitySequence, TreeMatrix, UntwistedTree,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub sequences: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gluing: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<Vec<u32>>>,
}

impl From<&UntwistedTree> for TreeJson {
    fn from(t: &UntwistedTree) -> Self {
        TreeJson {
            sequences: sequences_json(t.sequences()),
            gluing: Some(t.gluing().to_vec()),
            levels: None,
        }
    }
}

impl From<&TreeMatrix> for TreeJson {
    fn from(m: &TreeMatrix) -> Self {
        TreeJson {
            sequences: sequences_json(m.sequences()),
            gluing: None,
            levels: Some(m.rows()),
        }
    }
}

fn sequences_json(seqs: &[MultiplicitySequence]) -> Vec<Vec<u32>> {
    seqs.iter().map(|m| m.entries().to_vec()).collect()
}

/// A tree read from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedTree {
    Untwisted(UntwistedTree),
    Matrix(TreeMatrix),
}

#[derive(Debug)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

impl TreeJson {
    /// Validates into a tree. A one-branch tree may omit `gluing`.
    pub fn parse(self) -> Result<ParsedTree, FormatError> {
        let sequences = self
            .sequences
            .iter()
            .enumerate()
            .map(|(i, v)| {
                validate_sequence(v)
                    .map_err(|e| FormatError(format!("sequence {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let invalid = |e: arf_core::tree::TreeError| FormatError(format!("invalid tree: {e}"));
        match (self.gluing, self.levels) {
            (Some(_), Some(_)) => Err(FormatError("give either gluing or levels, not both".into())),
            (None, Some(levels)) => TreeMatrix::new(sequences, &levels)
                .map(ParsedTree::Matrix)
                .map_err(invalid),
            (gluing, None) => validate_tree(sequences, gluing.unwrap_or_default())
                .map(ParsedTree::Untwisted)
                .map_err(invalid),
        }
    }
}

pub fn parse_tree(text: &str) -> Result<ParsedTree, FormatError> {
    let json: TreeJson =
        serde_json::from_str(text).map_err(|e| FormatError(format!("malformed tree JSON: {e}")))?;
    json.parse()
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub axiom: String,
    pub witness_vectors: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub checked: u64,
    pub unchecked: u64,
    pub violations: Vec<ViolationJson>,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        ReportJson {
            checked: r.checked,
            unchecked: r.unchecked,
            violations: r.violations.iter().map(violation_json).collect(),
        }
    }
}

fn violation_json(v: &Violation) -> ViolationJson {
    ViolationJson {
        axiom: v.axiom.name().to_string(),
        witness_vectors: v.witness_vectors.clone(),
    }
}

/// Writes a count table in the layout `r\n,0,1,...`, one row per rank,
/// with optional extra labeled rows underneath.
pub fn write_table<W: Write>(
    out: W,
    rows: &[Vec<u64>],
    extra: &[(&str, Vec<u64>)],
) -> Result<(), csv::Error> {
    let width = rows.first().map_or(0, Vec::len);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![String::from("r\\n")];
    header.extend((0..width).map(|n| n.to_string()));
    w.write_record(&header)?;
    for (r, row) in rows.iter().enumerate() {
        let mut record = vec![(r + 1).to_string()];
        record.extend(row.iter().map(u64::to_string));
        w.write_record(&record)?;
    }
    for (label, row) in extra {
        let mut record = vec![label.to_string()];
        record.extend(row.iter().map(u64::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
