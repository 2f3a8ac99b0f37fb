//! Exact copy counting.
//!
//! A copy of `F` in `G` is counted once per edge-preserving injection modulo
//! automorphisms of `F`. The engine imposes ordering conditions so that each
//! copy is met by exactly one embedding; `count_injections` runs the same
//! search without them as an independent check.

pub mod automorphism;
mod engine;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use serde::Serialize;

pub use automorphism::{automorphism_count, automorphisms, symmetry_conditions};
pub use engine::{PreparedPattern, Sink, Tally};

use crate::constructions::{LabeledHost, PartLabel};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::report::{ser_u128, ser_u128_map};

/// Automorphism enumeration bound used when a classification key needs the group.
pub const AUT_ENUMERATION_CAP: usize = 5_000_000;

fn normalize(e: Edge) -> Edge {
    (e.0.min(e.1), e.0.max(e.1))
}

struct Classify<'a, K, F> {
    key: &'a F,
    map: BTreeMap<K, u128>,
}

impl<K, F> Sink for Classify<'_, K, F>
where
    K: Ord + Send,
    F: Fn(&[usize]) -> K + Sync,
{
    const BULK: bool = false;

    fn leaf(&mut self, image: &[usize]) -> Result<()> {
        let c = self.map.entry((self.key)(image)).or_insert(0);
        *c = c.checked_add(1).ok_or(Error::Overflow("class count"))?;
        Ok(())
    }

    fn bulk(&mut self, _: u32) -> Result<()> {
        unreachable!("classification visits every embedding")
    }

    fn merge(&mut self, other: Self) -> Result<()> {
        for (k, v) in other.map {
            let c = self.map.entry(k).or_insert(0);
            *c = c.checked_add(v).ok_or(Error::Overflow("class count"))?;
        }
        Ok(())
    }
}

impl PreparedPattern {
    fn check_host(&self, g: &Graph) -> Result<()> {
        if g.n() > crate::graph::HOST_LIMIT {
            return Err(Error::SizeCeiling {
                what: "host vertex count",
                size: g.n(),
                limit: crate::graph::HOST_LIMIT,
            });
        }
        Ok(())
    }

    /// Number of copies of the pattern in `g`.
    pub fn copies(&self, g: &Graph) -> Result<u128> {
        self.check_host(g)?;
        Ok(engine::search(self, g, &[], true, Tally::default)?.0)
    }

    /// Same as [`copies`](Self::copies) on the calling thread only.
    pub fn copies_serial(&self, g: &Graph) -> Result<u128> {
        self.check_host(g)?;
        Ok(engine::search(self, g, &[], false, Tally::default)?.0)
    }

    /// Edge-preserving injections, counted without symmetry breaking.
    pub fn injections(&self, g: &Graph) -> Result<u128> {
        self.check_host(g)?;
        Ok(engine::search(&self.unbroken(), g, &[], true, Tally::default)?.0)
    }

    fn checked_required(&self, g: &Graph, required: &[Edge]) -> Result<Vec<Edge>> {
        self.check_host(g)?;
        let set: BTreeSet<Edge> = required.iter().map(|&e| normalize(e)).collect();
        for &(a, b) in &set {
            if !g.has_edge(a, b) {
                return Err(Error::MissingEdge(a, b));
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Copies whose edge set contains every edge of `required`.
    pub fn copies_containing(&self, g: &Graph, required: &[Edge], parallel: bool) -> Result<u128> {
        let req = self.checked_required(g, required)?;
        Ok(engine::search(self, g, &req, parallel, Tally::default)?.0)
    }

    /// Copies containing `required`, grouped by `key`. The key must take the
    /// same value on every embedding of a copy.
    pub fn classify<K, F>(&self, g: &Graph, required: &[Edge], key: F) -> Result<BTreeMap<K, u128>>
    where
        K: Ord + Send,
        F: Fn(&[usize]) -> K + Sync,
    {
        let req = self.checked_required(g, required)?;
        let s = engine::search(self, g, &req, true, || Classify {
            key: &key,
            map: BTreeMap::new(),
        })?;
        Ok(s.map)
    }
}

pub fn count_injections(f: &Graph, g: &Graph) -> Result<u128> {
    PreparedPattern::new(f)?.injections(g)
}

pub fn count_copies(f: &Graph, g: &Graph) -> Result<u128> {
    PreparedPattern::new(f)?.copies(g)
}

/// Copies of `F` containing all of `required` and no edge of `forbidden`
/// outside `required`.
pub fn count_copies_with_required(f: &Graph, g: &Graph, required: &[Edge], forbidden: &[Edge]) -> Result<u128> {
    let p = PreparedPattern::new(f)?;
    let req: HashSet<Edge> = required.iter().map(|&e| normalize(e)).collect();
    let drop: Vec<Edge> = forbidden
        .iter()
        .map(|&e| normalize(e))
        .filter(|e| !req.contains(e) && g.has_edge(e.0, e.1))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let host = g.delete_edges(&drop)?;
    p.copies_containing(&host, required, true)
}

/// Where each piece of the pattern lands: per piece, how many of its
/// vertices sit in each labelled host part.
pub type PieceSignature = Vec<Vec<(PartLabel, usize)>>;

fn signature(image: &[usize], labels: &[PartLabel], pieces: &[Vec<usize>]) -> PieceSignature {
    pieces
        .iter()
        .map(|piece| {
            let mut m: BTreeMap<PartLabel, usize> = BTreeMap::new();
            for &v in piece {
                *m.entry(labels[image[v]]).or_insert(0) += 1;
            }
            m.into_iter().collect()
        })
        .collect()
}

pub fn format_signature(sig: &PieceSignature, names: &[String]) -> String {
    sig.iter()
        .enumerate()
        .map(|(i, piece)| {
            let name = names.get(i).cloned().unwrap_or_else(|| format!("P{i}"));
            let body: Vec<String> = piece.iter().map(|(l, c)| format!("{l}:{c}")).collect();
            format!("{name}[{}]", body.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Copies of a pieced pattern grouped by piece signature over the host labels.
pub fn classify_by_pieces(
    p: &PreparedPattern,
    host: &LabeledHost,
    pieces: &[Vec<usize>],
) -> Result<BTreeMap<PieceSignature, u128>> {
    let f = p.graph().n();
    let mut seen = vec![false; f];
    for &v in pieces.iter().flatten() {
        if v >= f || seen[v] {
            return Err(Error::invalid("pieces do not partition the pattern vertices"));
        }
        seen[v] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::invalid("pieces do not partition the pattern vertices"));
    }
    let search = automorphism::AutSearch::new(p.graph())?;
    let orbit = search.orbits(&[]);
    let mut piece_of = vec![0; f];
    for (i, piece) in pieces.iter().enumerate() {
        for &v in piece {
            piece_of[v] = i;
        }
    }
    let stable = (0..f).all(|v| (0..f).all(|w| orbit[v] != orbit[w] || piece_of[v] == piece_of[w]));
    let labels = &host.labels;
    if stable {
        p.classify(&host.graph, &[], |img| signature(img, labels, pieces))
    } else {
        // a copy's signature is taken as the least over its embeddings
        let auts = search.enumerate(AUT_ENUMERATION_CAP)?;
        p.classify(&host.graph, &[], |img| {
            auts.iter()
                .map(|s| {
                    let moved: Vec<usize> = (0..f).map(|v| img[s[v]]).collect();
                    signature(&moved, labels, pieces)
                })
                .min()
                .expect("identity is an automorphism")
        })
    }
}

/// Copies grouped by how many pattern vertices land in `marked`.
pub fn classify_by_vertex_hits(p: &PreparedPattern, g: &Graph, marked: &[usize]) -> Result<BTreeMap<usize, u128>> {
    let mut member = vec![false; g.n()];
    for &v in marked {
        *member
            .get_mut(v)
            .ok_or(Error::VertexOutOfRange { vertex: v, n: g.n() })? = true;
    }
    p.classify(g, &[], |img| img.iter().filter(|&&v| member[v]).count())
}

/// Number of pattern edges whose image lies in `set`.
pub fn edges_in(pattern_edges: &[Edge], image: &[usize], set: &HashSet<Edge>) -> usize {
    pattern_edges
        .iter()
        .filter(|&&(x, y)| set.contains(&normalize((image[x], image[y]))))
        .count()
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub schema: u32,
    pub pattern_id: String,
    pub host_id: String,
    #[serde(serialize_with = "ser_u128")]
    pub copies: u128,
    #[serde(serialize_with = "ser_u128")]
    pub injections: u128,
    #[serde(serialize_with = "ser_u128")]
    pub aut: u128,
    /// True when `injections` was counted independently rather than derived.
    pub injections_counted: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_map")]
    pub classification: Option<BTreeMap<String, u128>>,
    pub method: &'static str,
    pub elapsed_ms: f64,
}

fn ser_opt_map<S: serde::Serializer>(m: &Option<BTreeMap<String, u128>>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_u128_map(m, s),
        None => s.serialize_none(),
    }
}

impl CountReport {
    /// Counts copies (and, when `cross_check`, injections independently,
    /// asserting `injections = copies * aut`).
    pub fn compute(pattern_id: &str, f: &Graph, host_id: &str, g: &Graph, cross_check: bool) -> Result<Self> {
        let start = Instant::now();
        let p = PreparedPattern::new(f)?;
        let copies = p.copies(g)?;
        let derived = copies.checked_mul(p.aut()).ok_or(Error::Overflow("injection count"))?;
        if cross_check {
            let inj = p.injections(g)?;
            if inj != derived {
                return Err(Error::Consistency(format!(
                    "injections {inj} differ from copies {copies} times aut {}",
                    p.aut()
                )));
            }
        }
        Ok(CountReport {
            schema: 1,
            pattern_id: pattern_id.into(),
            host_id: host_id.into(),
            copies,
            injections: derived,
            aut: p.aut(),
            injections_counted: cross_check,
            classification: None,
            method: "brute-force",
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    }

    /// Adds a piece-signature histogram; its total must match the plain count.
    pub fn classified(
        pattern_id: &str,
        f: &Graph,
        pieces: &[Vec<usize>],
        names: &[String],
        host_id: &str,
        host: &LabeledHost,
    ) -> Result<Self> {
        let start = Instant::now();
        let mut report = Self::compute(pattern_id, f, host_id, &host.graph, false)?;
        let p = PreparedPattern::new(f)?;
        let hist = classify_by_pieces(&p, host, pieces)?;
        let total = hist
            .values()
            .try_fold(0u128, |a, &b| a.checked_add(b))
            .ok_or(Error::Overflow("class total"))?;
        if total != report.copies {
            return Err(Error::Consistency(format!(
                "classified total {total} differs from count {}",
                report.copies
            )));
        }
        report.classification = Some(hist.iter().map(|(k, &v)| (format_signature(k, names), v)).collect());
        report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, h_nrk, h_with_edge, kneser, pattern_section3, Elementary};

    #[test]
    fn small_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(count_injections(&Graph::complete(2), &k4).unwrap(), 12);
        assert_eq!(count_injections(&Graph::complete(3), &k4).unwrap(), 24);
        let m2 = elementary(Elementary::Matching(2)).unwrap();
        assert_eq!(count_injections(&m2, &k4).unwrap(), 24);
        assert_eq!(count_copies(&m2, &k4).unwrap(), 3);
        assert_eq!(count_copies(&Graph::complete(3), &k4).unwrap(), 4);
        assert_eq!(count_copies(&Graph::complete(5), &k4).unwrap(), 0);
    }

    #[test]
    fn required_edges() {
        let k4 = Graph::complete(4);
        let k3 = Graph::complete(3);
        assert_eq!(count_copies_with_required(&k3, &k4, &[(0, 1)], &[]).unwrap(), 2);
        let c5 = elementary(Elementary::Cycle(5)).unwrap();
        assert_eq!(count_copies_with_required(&k3, &c5, &[(0, 1)], &[]).unwrap(), 0);
        assert_eq!(
            count_copies_with_required(&k3, &c5, &[(0, 2)], &[]).unwrap_err(),
            Error::MissingEdge(0, 2)
        );
        // forbidding one of the two other triangles through (0,1)
        assert_eq!(count_copies_with_required(&k3, &k4, &[(0, 1)], &[(0, 2)]).unwrap(), 1);
    }

    #[test]
    fn extremal_host_is_free_and_single_edge_host_is_not() {
        let f = pattern_section3(2).unwrap().graph;
        assert_eq!(count_copies(&f, &h_nrk(13, 3, 2).unwrap().graph).unwrap(), 0);
        assert_eq!(count_copies(&f, &h_with_edge(13, 3, 2, 0).unwrap().graph).unwrap(), 576);
        let p = kneser(5, 2).unwrap();
        assert!(count_copies(&p, &h_with_edge(14, 2, 3, 0).unwrap().graph).unwrap() > 0);
    }

    #[test]
    fn classification_single_label_class() {
        let host = crate::constructions::turan(6, 1).unwrap();
        let k2 = Graph::complete(2);
        let p = PreparedPattern::new(&k2).unwrap();
        // T_1(6) has no edges at all; use K_6 labelled as one part
        let mut h = host.clone();
        h.graph = Graph::complete(6);
        let hist = classify_by_pieces(&p, &h, &[vec![0, 1]]).unwrap();
        assert_eq!(hist.len(), 1);
        assert_eq!(hist.values().sum::<u128>(), 15);
    }

    #[test]
    fn classification_with_swappable_pieces_uses_group_minimum() {
        // pieces {0,1} and {2,3} of M2 are exchanged by an automorphism
        let m2 = elementary(Elementary::Matching(2)).unwrap();
        let p = PreparedPattern::new(&m2).unwrap();
        let host = crate::constructions::h_with_edge(6, 2, 1, 0).unwrap();
        let hist = classify_by_pieces(&p, &host, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(hist.values().sum::<u128>(), count_copies(&m2, &host.graph).unwrap());
    }
}
