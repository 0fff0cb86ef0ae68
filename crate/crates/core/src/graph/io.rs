use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, Label, Vertex};
use crate::error::{Error, Result};

/// Wire form of a graph: `{"order": N, "edges": [[u,v],...], "labels": {...}}`.
/// Field order and the sorted label map make the serialization byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    pub labels: BTreeMap<Vertex, Label>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            order: g.order(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: g
                .labels()
                .map_or_else(BTreeMap::new, |l| l.iter().cloned().enumerate().collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Graph> {
        let g = Graph::new(raw.order, raw.edges.iter().map(|&[u, v]| (u, v)))?;
        if raw.labels.is_empty() {
            return Ok(g);
        }
        if let Some((&v, _)) = raw.labels.iter().find(|(&v, _)| v >= raw.order) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: raw.order,
            });
        }
        if raw.labels.len() != raw.order {
            return Err(Error::LabelCount(raw.labels.len(), raw.order));
        }
        g.with_labels(raw.labels.into_values().collect())
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&GraphJson::from(self))
            .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::try_from(raw)
    }

    /// Graphviz rendering; vertices are named by id and labelled by their
    /// structured label when one exists.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", dot_id(name));
        for v in self.vertices() {
            match self.label(v) {
                Some(label) => {
                    let _ = writeln!(
                        out,
                        "  {v} [label=\"{}\"];",
                        label.to_string().replace('"', "\\\"")
                    );
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for &(u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}
