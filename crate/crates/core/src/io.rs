//! graph6, DOT and JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const G6_SMALL: usize = 62;
const G6_MEDIUM: usize = 258_047;

fn push_n(out: &mut Vec<u8>, n: usize) {
    if n <= G6_SMALL {
        out.push(n as u8 + 63);
    } else if n <= G6_MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// graph6 encoding without a trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_n(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b} outside the graph6 range")));
    }
    let word = |slice: &[u8]| slice.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (word(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => (word(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::Parse("truncated graph6 size header".into())),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for {n} vertices",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::build(n, &edges)
}

/// Graphviz rendering; labels, when given, are shown next to the vertex index.
pub fn to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        match labels {
            Some(l) => writeln!(out, "  {v} [label=\"{v}:{}\"];", l[v]).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (u, v) in g.edge_list() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub adjacency: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, Vec<usize>>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph, labels: Option<&[String]>) -> Self {
        let labels = labels.map(|l| {
            let mut map: BTreeMap<String, Vec<usize>> = BTreeMap::new();
            for (v, tag) in l.iter().enumerate() {
                map.entry(tag.clone()).or_default().push(v);
            }
            map
        });
        GraphJson {
            n: g.n(),
            adjacency: (0..g.n()).map(|v| g.neighbors(v).iter().collect()).collect(),
            labels,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        if self.adjacency.len() != self.n {
            return Err(Error::Parse("adjacency list length differs from n".into()));
        }
        let mut edges = Vec::new();
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                edges.push((u, v));
            }
        }
        let g = Graph::build(self.n, &edges)?;
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.len() != g.degree(u) {
                return Err(Error::Parse(format!("adjacency of vertex {u} is not symmetric")));
            }
        }
        Ok(g)
    }
}

pub fn to_json(g: &Graph, labels: Option<&[String]>) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g, labels)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::kneser;

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        let p = kneser(5, 2).unwrap();
        let back = from_graph6(&to_graph6(&p)).unwrap();
        assert_eq!(back, p);
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn large_headers_round_trip() {
        let g = Graph::build(100, &[(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C\u{1}").is_err());
    }

    #[test]
    fn json_round_trip_and_symmetry_check() {
        let p = kneser(5, 2).unwrap();
        assert_eq!(from_json(&to_json(&p, None)).unwrap(), p);
        assert!(from_json(r#"{"n":2,"adjacency":[[1],[]]}"#).is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = to_dot(&Graph::complete(3), None);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
