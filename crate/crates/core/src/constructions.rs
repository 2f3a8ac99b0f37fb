//! Generators for pattern graphs and labelled host constructions.
//!
//! Hosts lay out their vertices as the top set `X` first, then the Turán
//! parts `V1, V2, ...` in descending size order. Part indices in this API are
//! zero-based; the display names (`V1`, `C1`) are one-based.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, HOST_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PartLabel {
    /// The top clique (or top independent set) `X`.
    Top,
    /// Ordinary vertex of Turán part `i`.
    Part(usize),
    /// Star centre placed inside Turán part `i`.
    Center(usize),
}

impl PartLabel {
    /// Turán part containing the vertex, centres included.
    pub fn part(self) -> Option<usize> {
        match self {
            PartLabel::Top => None,
            PartLabel::Part(i) | PartLabel::Center(i) => Some(i),
        }
    }

    pub fn in_top_or_center(self) -> bool {
        matches!(self, PartLabel::Top | PartLabel::Center(_))
    }
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartLabel::Top => write!(f, "X"),
            PartLabel::Part(i) => write!(f, "V{}", i + 1),
            PartLabel::Center(i) => write!(f, "C{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HostManifest {
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub parts: BTreeMap<String, Vec<usize>>,
    pub marked_edges: Vec<Edge>,
    pub edges: usize,
}

/// A host graph together with its part structure.
#[derive(Clone, Debug)]
pub struct LabeledHost {
    pub graph: Graph,
    pub labels: Vec<PartLabel>,
    /// `parts[i]` lists the vertices of `Vi`, star centres included.
    pub parts: Vec<Vec<usize>>,
    pub top: Vec<usize>,
    pub centers: Vec<usize>,
    /// Edges added inside parts (single extra edge or star edges).
    pub marked: Vec<Edge>,
    pub family: String,
    pub params: BTreeMap<String, i64>,
}

impl LabeledHost {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }

    pub fn manifest(&self) -> HostManifest {
        let mut parts: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (v, l) in self.labels.iter().enumerate() {
            parts.entry(l.to_string()).or_default().push(v);
        }
        HostManifest {
            family: self.family.clone(),
            params: self.params.clone(),
            parts,
            marked_edges: self.marked.clone(),
            edges: self.graph.edge_count(),
        }
    }

    fn check_edges(&self, expected: u64) -> Result<()> {
        if self.graph.edge_count() as u64 != expected {
            return Err(Error::Consistency(format!(
                "{} has {} edges, closed form gives {expected}",
                self.family,
                self.graph.edge_count()
            )));
        }
        Ok(())
    }

    fn with_family(mut self, family: &str, params: &[(&str, i64)]) -> Self {
        self.family = family.to_string();
        self.params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        self
    }
}

/// Balanced part sizes in descending order.
pub fn part_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

pub fn turan_edges(n: usize, r: usize) -> u64 {
    if r == 0 {
        return 0;
    }
    let sizes = part_sizes(n, r);
    let n = n as u64;
    let sq: u64 = sizes.iter().map(|&s| (s as u64) * (s as u64)).sum();
    (n * n - sq) / 2
}

pub fn h_nrk_edges(n: usize, r: usize, k: usize) -> u64 {
    let x = k.saturating_sub(1) as u64;
    let rest = n.saturating_sub(k.saturating_sub(1));
    x * x.saturating_sub(1) / 2 + x * rest as u64 + turan_edges(rest, r)
}

// X of size `top` (clique or independent) joined to a balanced r-partite graph
fn top_plus_turan(n: usize, r: usize, top: usize, top_clique: bool) -> Result<LabeledHost> {
    if r == 0 {
        return Err(Error::invalid("need at least one part"));
    }
    if n > HOST_LIMIT {
        return Err(Error::SizeCeiling {
            what: "host vertex count",
            size: n,
            limit: HOST_LIMIT,
        });
    }
    if top > n {
        return Err(Error::invalid(format!("top set of size {top} exceeds n = {n}")));
    }
    let mut g = Graph::empty(n);
    let mut labels = vec![PartLabel::Top; top];
    let mut parts = Vec::with_capacity(r);
    let mut next = top;
    for (i, size) in part_sizes(n - top, r).into_iter().enumerate() {
        parts.push((next..next + size).collect::<Vec<_>>());
        labels.extend(std::iter::repeat_n(PartLabel::Part(i), size));
        next += size;
    }
    for u in 0..n {
        for v in u + 1..n {
            let adjacent = match (labels[u], labels[v]) {
                (PartLabel::Top, PartLabel::Top) => top_clique,
                (PartLabel::Top, _) | (_, PartLabel::Top) => true,
                (a, b) => a != b,
            };
            if adjacent {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(LabeledHost {
        graph: g,
        labels,
        parts,
        top: (0..top).collect(),
        centers: Vec::new(),
        marked: Vec::new(),
        family: String::new(),
        params: BTreeMap::new(),
    })
}

/// Turán graph `T_r(n)`.
pub fn turan(n: usize, r: usize) -> Result<LabeledHost> {
    let h = top_plus_turan(n, r, 0, true)?.with_family("turan", &[("n", n as i64), ("r", r as i64)]);
    h.check_edges(turan_edges(n, r))?;
    Ok(h)
}

fn check_nrk(n: usize, r: usize, k: usize) -> Result<()> {
    if r < 1 || k < 1 {
        return Err(Error::invalid("need r >= 1 and k >= 1"));
    }
    if n < k - 1 + r {
        return Err(Error::invalid(format!("n = {n} is below k - 1 + r = {}", k - 1 + r)));
    }
    Ok(())
}

/// `H(n,r,k) = K_{k-1} + T_r(n-k+1)`.
pub fn h_nrk(n: usize, r: usize, k: usize) -> Result<LabeledHost> {
    check_nrk(n, r, k)?;
    let h =
        top_plus_turan(n, r, k - 1, true)?.with_family("h_nrk", &[("n", n as i64), ("r", r as i64), ("k", k as i64)]);
    h.check_edges(h_nrk_edges(n, r, k))?;
    Ok(h)
}

/// `H(n,r,k)` plus one edge between the first two vertices of part `part`.
pub fn h_with_edge(n: usize, r: usize, k: usize, part: usize) -> Result<LabeledHost> {
    let mut h = h_nrk(n, r, k)?;
    let vs = h
        .parts
        .get(part)
        .ok_or_else(|| Error::invalid(format!("no part {part}")))?;
    if vs.len() < 2 {
        return Err(Error::invalid(format!("part {part} has fewer than two vertices")));
    }
    let e = (vs[0], vs[1]);
    h.graph.insert_edge(e.0, e.1);
    h.marked.push(e);
    let h = h.with_family(
        "h_with_edge",
        &[("n", n as i64), ("r", r as i64), ("k", k as i64), ("part", part as i64)],
    );
    h.check_edges(h_nrk_edges(n, r, k) + 1)?;
    Ok(h)
}

/// `T_r(n)` plus a `k`-edge matching on the first `2k` vertices of part `part`.
pub fn turan_with_matching(n: usize, r: usize, k: usize, part: usize) -> Result<LabeledHost> {
    let mut h = turan(n, r)?;
    let vs = h
        .parts
        .get(part)
        .ok_or_else(|| Error::invalid(format!("no part {part}")))?;
    if vs.len() < 2 * k {
        return Err(Error::invalid(format!("part {part} has fewer than {} vertices", 2 * k)));
    }
    let m: Vec<Edge> = (0..k).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
    for &(u, v) in &m {
        h.graph.insert_edge(u, v);
    }
    h.marked = m;
    let h = h.with_family(
        "turan_with_matching",
        &[("n", n as i64), ("r", r as i64), ("k", k as i64), ("part", part as i64)],
    );
    h.check_edges(turan_edges(n, r) + k as u64)?;
    Ok(h)
}

/// `I_{k-1} + T_r(n-k+1)` plus one edge `e` in part `part`, with every edge
/// between `V(e)` and the top removed.
pub fn h_detached_edge(n: usize, r: usize, k: usize, part: usize) -> Result<LabeledHost> {
    check_nrk(n, r, k)?;
    let mut h = top_plus_turan(n, r, k - 1, false)?;
    let vs = h
        .parts
        .get(part)
        .ok_or_else(|| Error::invalid(format!("no part {part}")))?;
    if vs.len() < 2 {
        return Err(Error::invalid(format!("part {part} has fewer than two vertices")));
    }
    let e = (vs[0], vs[1]);
    h.graph.insert_edge(e.0, e.1);
    for x in 0..k - 1 {
        h.graph.remove_edge_mut(x, e.0);
        h.graph.remove_edge_mut(x, e.1);
    }
    h.marked.push(e);
    let h = h.with_family(
        "h_detached_edge",
        &[("n", n as i64), ("r", r as i64), ("k", k as i64), ("part", part as i64)],
    );
    let expected = turan_edges(n - k + 1, r) + ((k - 1) * (n - k + 1 - 2)) as u64 + 1;
    h.check_edges(expected)?;
    Ok(h)
}

fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// The three-part host with a star of `q + C(k,2)` edges in `V1` whose
/// centre is cut off from the independent top set.
pub fn h_star_section3(n: usize, k: usize, q: usize) -> Result<LabeledHost> {
    check_nrk(n, 3, k)?;
    let t = q + k * (k - 1) / 2 + 1;
    let mut h = top_plus_turan(n, 3, k - 1, false)?;
    let v1 = h.parts[0].clone();
    if v1.len() < t {
        return Err(Error::invalid(format!(
            "V1 too small: star needs {t} vertices, V1 has {}",
            v1.len()
        )));
    }
    let center = v1[0];
    for &leaf in &v1[1..t] {
        h.graph.insert_edge(center, leaf);
        h.marked.push((center, leaf));
    }
    for x in 0..k - 1 {
        h.graph.remove_edge_mut(x, center);
    }
    h.labels[center] = PartLabel::Center(0);
    h.centers = vec![center];
    let h = h.with_family("h_star", &[("n", n as i64), ("k", k as i64), ("q", q as i64)]);
    h.check_edges(h_nrk_edges(n, 3, k) + q as u64)?;
    Ok(h)
}

/// Where to put the star of `h_nrkq`.
#[derive(Clone, Copy, Debug)]
pub enum StarPlacement<'a> {
    Part(usize),
    /// The part minimising the copies of this pattern that use one added edge.
    Minimizing(&'a Graph),
}

/// `H(n,r,k)` with a star `S_{q+1}` inside one part.
pub fn h_nrkq(n: usize, r: usize, k: usize, q: usize, placement: StarPlacement<'_>) -> Result<LabeledHost> {
    check_nrk(n, r, k)?;
    let sizes = part_sizes(n - (k - 1), r);
    let part = match placement {
        StarPlacement::Part(i) => {
            if i >= r {
                return Err(Error::invalid(format!("no part {i}")));
            }
            i
        }
        StarPlacement::Minimizing(f) => {
            // copies through one added edge depend only on the part, so the
            // single-edge host decides
            let mut best: Option<(u128, usize)> = None;
            for i in (0..r).filter(|&i| sizes[i] > q) {
                let c = crate::counting::count_copies(f, &h_with_edge(n, r, k, i)?.graph)?;
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, i));
                }
            }
            best.ok_or_else(|| Error::invalid(format!("no part has {} vertices", q + 1)))?
                .1
        }
    };
    let mut profile = vec![0; r];
    profile[part] = q;
    let h = h_l(n, r, k, &StarProfile(profile))?;
    let h = h.with_family(
        "h_nrkq",
        &[
            ("n", n as i64),
            ("r", r as i64),
            ("k", k as i64),
            ("q", q as i64),
            ("part", part as i64),
        ],
    );
    Ok(h)
}

/// Star sizes `(l1, ..., lr)` for `H(L)`; a zero entry means no star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarProfile(pub Vec<usize>);

impl StarProfile {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of positive entries.
    pub fn alpha(&self) -> usize {
        self.0.iter().filter(|&&l| l > 0).count()
    }
}

/// `H(L)`: a star with `l_i` edges in part `i`, centred at the part's first vertex.
pub fn h_l(n: usize, r: usize, k: usize, profile: &StarProfile) -> Result<LabeledHost> {
    if profile.0.len() != r {
        return Err(Error::invalid(format!(
            "profile has {} entries, expected {r}",
            profile.0.len()
        )));
    }
    let mut h = h_nrk(n, r, k)?;
    for (i, &l) in profile.0.iter().enumerate() {
        if l == 0 {
            continue;
        }
        let vs = h.parts[i].clone();
        if l + 1 > vs.len() {
            return Err(Error::invalid(format!(
                "star with {l} edges does not fit in part {i} of size {}",
                vs.len()
            )));
        }
        let center = vs[0];
        for &leaf in &vs[1..=l] {
            h.graph.insert_edge(center, leaf);
            h.marked.push((center, leaf));
        }
        h.labels[center] = PartLabel::Center(i);
        h.centers.push(center);
    }
    let mut params = vec![("n", n as i64), ("r", r as i64), ("k", k as i64)];
    let names: Vec<String> = (1..=r).map(|i| format!("l{i}")).collect();
    for (name, &l) in names.iter().zip(&profile.0) {
        params.push((name.as_str(), l as i64));
    }
    let h = h.with_family("h_l", &params);
    h.check_edges(h_nrk_edges(n, r, k) + profile.total() as u64)?;
    Ok(h)
}

/// `H'(L)`: `H(L)` with every edge inside `X ∪ C` removed.
pub fn h_prime_l(n: usize, r: usize, k: usize, profile: &StarProfile) -> Result<LabeledHost> {
    let mut h = h_l(n, r, k, profile)?;
    let special: Vec<usize> = h.top.iter().chain(&h.centers).copied().collect();
    for (i, &u) in special.iter().enumerate() {
        for &v in &special[i + 1..] {
            h.graph.remove_edge_mut(u, v);
        }
    }
    let expected = h_nrk_edges(n, r, k) + profile.total() as u64 - binom2((k - 1 + profile.alpha()) as u64);
    h.family = "h_prime_l".into();
    h.check_edges(expected)?;
    Ok(h)
}

/// Kneser graph `K(t, m)` on the `m`-subsets of `0..t` in lexicographic order.
pub fn kneser(t: usize, m: usize) -> Result<Graph> {
    if m == 0 || t < 2 * m + 1 {
        return Err(Error::invalid(format!(
            "Kneser graph needs m >= 1 and t >= 2m + 1, got t = {t}, m = {m}"
        )));
    }
    if t > 64 {
        return Err(Error::invalid("ground set above 64 elements"));
    }
    let mut sets: Vec<u64> = Vec::new();
    fn rec(start: usize, t: usize, left: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=t - left {
            rec(i + 1, t, left - 1, cur | (1u64 << i), out);
        }
    }
    rec(0, t, m, 0, &mut sets);
    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::build(sets.len(), &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `M_k`: `k` disjoint edges.
    Matching(usize),
    /// `S_k`: star on `k` vertices, centre 0.
    Star(usize),
    /// `P_k`: path on `k` vertices.
    Path(usize),
    /// `I_k`: `k` isolated vertices.
    Independent(usize),
    Complete(usize),
    Cycle(usize),
    Turan {
        n: usize,
        r: usize,
    },
}

pub fn elementary(kind: Elementary) -> Result<Graph> {
    match kind {
        Elementary::Matching(k) => Graph::build(2 * k, &(0..k).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>()),
        Elementary::Star(k) => Graph::build(k, &(1..k).map(|i| (0, i)).collect::<Vec<_>>()),
        Elementary::Path(k) => Graph::build(k, &(1..k).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        Elementary::Independent(k) => Ok(Graph::empty(k)),
        Elementary::Complete(k) => Ok(Graph::complete(k)),
        Elementary::Cycle(k) => {
            if k < 3 {
                return Err(Error::invalid("cycles need at least three vertices"));
            }
            Graph::build(k, &(0..k).map(|i| (i, (i + 1) % k)).collect::<Vec<_>>())
        }
        Elementary::Turan { n, r } => Ok(turan(n, r)?.graph),
    }
}

/// A pattern together with a named split of its vertices.
#[derive(Clone, Debug)]
pub struct PiecedPattern {
    pub graph: Graph,
    pub pieces: Vec<Vec<usize>>,
    pub piece_names: Vec<String>,
}

/// `M_k + (P_4 ∪ M_{k-2})`: vertices `0..2k` carry the matching `A`, the
/// rest carry `B` with the path first.
pub fn pattern_section3(k: usize) -> Result<PiecedPattern> {
    if k < 2 {
        return Err(Error::invalid("pattern needs k >= 2"));
    }
    let a = elementary(Elementary::Matching(k))?;
    let b = elementary(Elementary::Path(4))?.disjoint_union(&elementary(Elementary::Matching(k - 2))?);
    let graph = a.join(&b);
    let expected = k + 3 + (k - 2) + (2 * k) * (2 * k);
    if graph.edge_count() != expected {
        return Err(Error::Consistency("pattern edge count".into()));
    }
    Ok(PiecedPattern {
        graph,
        pieces: vec![(0..2 * k).collect(), (2 * k..4 * k).collect()],
        piece_names: vec!["A".into(), "B".into()],
    })
}

/// `M_k + k·S_{s+1}` plus one edge between the centres of the first two stars.
/// Vertices `0..2k` carry the matching; star `j` then occupies a block of
/// `s + 1` vertices with its centre first.
pub fn pattern_fig1b(k: usize, s: usize) -> Result<PiecedPattern> {
    if k < 3 || s < 2 {
        return Err(Error::invalid("pattern needs k >= 3 and s >= 2"));
    }
    let m = elementary(Elementary::Matching(k))?;
    let stars = elementary(Elementary::Star(s + 1))?.scalar_union(k);
    let mut graph = m.join(&stars);
    let c0 = 2 * k;
    let c1 = 2 * k + s + 1;
    graph.insert_edge(c0, c1);
    let expected = k + k * s + 2 * k * k * (s + 1) + 1;
    if graph.edge_count() != expected {
        return Err(Error::Consistency("pattern edge count".into()));
    }
    Ok(PiecedPattern {
        pieces: vec![(0..2 * k).collect(), (2 * k..graph.n()).collect()],
        graph,
        piece_names: vec!["M".into(), "S".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chromatic_number;

    #[test]
    fn turan_graphs() {
        let t = turan(4, 2).unwrap();
        assert_eq!(t.graph.edge_count(), 4);
        assert_eq!(turan_edges(5, 2), 6);
        let t = turan(9, 3).unwrap();
        assert_eq!((t.part_sizes(), t.graph.edge_count()), (vec![3, 3, 3], 27));
        assert_eq!(part_sizes(10, 3), vec![4, 3, 3]);
    }

    #[test]
    fn extremal_hosts() {
        assert_eq!(h_nrk_edges(10, 3, 2), 36);
        assert_eq!(h_nrk(10, 3, 2).unwrap().graph.edge_count(), 36);
        assert_eq!(h_nrk(9, 3, 1).unwrap().graph, turan(9, 3).unwrap().graph);
        assert_eq!(h_nrk(20, 2, 3).unwrap().graph.edge_count(), 118);
        assert!(h_nrk(3, 3, 2).is_err());
        let h = h_nrk(12, 3, 3).unwrap();
        let rest: Vec<usize> = (2..12).collect();
        assert_eq!(h.graph.induced(&rest).unwrap(), turan(10, 3).unwrap().graph);
        for v in 2..12 {
            assert!(h.graph.has_edge(0, v) && h.graph.has_edge(1, v));
        }
    }

    #[test]
    fn single_edge_hosts() {
        let h = h_with_edge(13, 3, 2, 0).unwrap();
        assert_eq!(h.graph.edge_count() as u64, h_nrk_edges(13, 3, 2) + 1);
        let h = h_with_edge(9, 2, 1, 0).unwrap();
        assert_eq!(h.parts[0].len(), 5);
        assert_eq!(h.marked, vec![(0, 1)]);
        assert!(h_with_edge(4, 3, 2, 2).is_err());
    }

    #[test]
    fn star_host_for_the_counterexample() {
        let h = h_star_section3(18, 2, 4).unwrap();
        assert_eq!(h.graph.edge_count() as u64, h_nrk_edges(18, 3, 2) + 4);
        let c = h.centers[0];
        let inside = h.parts[0].iter().filter(|&&v| h.graph.has_edge(c, v)).count();
        assert_eq!(inside, 4 + 1);
        assert!(h.top.iter().all(|&x| !h.graph.has_edge(x, c)));
        let h = h_star_section3(24, 3, 4).unwrap();
        assert!(!h.graph.has_edge(0, 1), "top set is independent");
        assert!(h_star_section3(18, 2, 5).is_err());
    }

    #[test]
    fn star_profile_hosts() {
        let l = StarProfile(vec![2, 0, 1]);
        let h = h_l(14, 3, 2, &l).unwrap();
        assert_eq!(h.graph.edge_count() as u64, h_nrk_edges(14, 3, 2) + 3);
        assert_eq!(h.centers.len(), 2);
        let hp = h_prime_l(14, 3, 2, &l).unwrap();
        assert_eq!(h.graph.edge_count() - hp.graph.edge_count(), 3);
        let k1 = h_prime_l(9, 3, 1, &StarProfile(vec![2, 0, 0])).unwrap();
        assert_eq!(k1.graph.edge_count() as u64, turan_edges(9, 3) + 2);
        assert!(h_l(9, 3, 1, &StarProfile(vec![3, 0, 0])).is_err());
        let star = h_nrkq(10, 3, 2, 2, StarPlacement::Part(1)).unwrap();
        let c = star.centers[0];
        assert_eq!(star.labels[c], PartLabel::Center(1));
        let leaves: Vec<usize> = star.marked.iter().map(|e| e.1).collect();
        assert!(star.graph.is_stable(&leaves));
    }

    #[test]
    fn kneser_graphs() {
        let p = kneser(5, 2).unwrap();
        assert_eq!((p.n(), p.edge_count(), p.max_degree()), (10, 15, 3));
        let k6 = kneser(6, 2).unwrap();
        assert_eq!((k6.n(), k6.edge_count()), (15, 45));
        assert!((0..15).all(|v| k6.degree(v) == 6));
        assert!(kneser(4, 2).is_err());
    }

    #[test]
    fn patterns() {
        let f = pattern_section3(2).unwrap();
        assert_eq!((f.graph.n(), f.graph.edge_count()), (8, 21));
        assert_eq!(chromatic_number(&f.graph).unwrap(), 4);
        assert_eq!(pattern_section3(3).unwrap().graph.n(), 12);
        let b = pattern_fig1b(3, 2).unwrap();
        assert_eq!(b.graph.n(), 15);
        assert_eq!(chromatic_number(&b.graph).unwrap(), 4);
        assert!(b.graph.has_edge(6, 9));
        assert!(pattern_fig1b(2, 2).is_err());
    }

    #[test]
    fn elementary_graphs() {
        assert_eq!(elementary(Elementary::Star(3)).unwrap().edge_count(), 2);
        let m3 = elementary(Elementary::Matching(3)).unwrap();
        assert_eq!((m3.n(), m3.edge_count()), (6, 3));
        let p4 = elementary(Elementary::Path(4)).unwrap();
        assert_eq!((p4.n(), p4.edge_count()), (4, 3));
    }
}
