//! Text (`n m` header, then `u v` lines) and JSON (`{"n":..,"edges":[[u,v],..]}`)
//! graph formats, both 1-based.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect() }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges_one_based(j.n, &edges)
    }
}

impl Graph {
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let nums = parse_ints(header)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse(format!("expected header \"n m\", got {header:?}")));
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let e = parse_ints(line)?;
            let [u, v] = e[..] else {
                return Err(Error::Parse(format!("expected edge \"u v\", got {line:?}")));
            };
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
        }
        Graph::from_edges_one_based(n, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph JSON serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::try_from(&j)
    }
}

fn parse_ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not a vertex count or id: {t:?}"))))
        .collect()
}
