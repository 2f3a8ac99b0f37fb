//! Embedding types and admissibility.
//!
//! A type of `F` is an ordered partition `(S_0, S_1, ..., S_r)` of its vertices;
//! `F_i` is the subgraph of `F` induced on `S_i`. `S_0` is the top and the
//! union of the remaining pieces is the bottom.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::{self, Caps};
use crate::counting::count_copies_with_required;
use crate::criticality::is_color_k_critical;
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, matching_number, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingType {
    r: usize,
    /// Part index in `0..=r` for each vertex of `F`.
    assignment: Vec<usize>,
}

impl EmbeddingType {
    pub fn new(r: usize, assignment: Vec<usize>) -> Result<Self> {
        if let Some(&p) = assignment.iter().find(|&&p| p > r) {
            return Err(Error::invalid(format!("part {p} out of range 0..={r}")));
        }
        Ok(EmbeddingType { r, assignment })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Vertex lists `S_0, ..., S_r`.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.r + 1];
        for (v, &p) in self.assignment.iter().enumerate() {
            out[p].push(v);
        }
        out
    }

    pub fn top_size(&self) -> usize {
        self.assignment.iter().filter(|&&p| p == 0).count()
    }

    /// `E(𝓕)`: the edges of `f` with both ends in one part.
    pub fn edges(&self, f: &Graph) -> Vec<Edge> {
        f.edge_list()
            .into_iter()
            .filter(|&(u, v)| self.assignment[u] == self.assignment[v])
            .collect()
    }

    /// `F_i` on the vertices of `S_i` in increasing order.
    pub fn piece(&self, f: &Graph, i: usize) -> Result<Graph> {
        f.induced(&self.parts()[i])
    }

    /// The top `F_0`.
    pub fn top(&self, f: &Graph) -> Result<Graph> {
        self.piece(f, 0)
    }

    /// The bottom `F_1 ∪ ... ∪ F_r`, on `V(F) \ S_0` in increasing order.
    pub fn bottom(&self, f: &Graph) -> Result<Graph> {
        let keep: Vec<usize> = (0..f.n()).filter(|&v| self.assignment[v] != 0).collect();
        let mut pos = vec![usize::MAX; f.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges(f)
            .into_iter()
            .filter(|&(u, _)| self.assignment[u] != 0)
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        Graph::build(keep.len(), &edges)
    }
}

impl Serialize for EmbeddingType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeStats {
    /// `|S_0|`.
    pub top_size: usize,
    /// Matching number of the bottom.
    pub nu: usize,
    /// Isolated vertices of the bottom.
    pub isolated: usize,
    pub top_has_edge: bool,
}

pub fn type_stats(f: &Graph, ty: &EmbeddingType) -> Result<TypeStats> {
    check_len(f, ty)?;
    let bottom = ty.bottom(f)?;
    Ok(TypeStats {
        top_size: ty.top_size(),
        nu: matching_number(&bottom)?,
        isolated: bottom.isolated_vertices(),
        top_has_edge: ty.top(f)?.edge_count() > 0,
    })
}

fn check_len(f: &Graph, ty: &EmbeddingType) -> Result<()> {
    if ty.assignment.len() != f.n() {
        return Err(Error::invalid(format!(
            "type covers {} vertices, pattern has {}",
            ty.assignment.len(),
            f.n()
        )));
    }
    Ok(())
}

/// `(r+1)^f` as a cap-check quantity.
pub fn type_count(f: usize, r: usize) -> u128 {
    (0..f).fold(1u128, |acc, _| acc.saturating_mul(r as u128 + 1))
}

/// All types with a given top, the bottom vertices assigned in odometer order
/// (lowest vertex changes fastest).
fn with_top(f: usize, r: usize, top: &[usize]) -> impl Iterator<Item = EmbeddingType> {
    let rest: Vec<usize> = (0..f).filter(|v| !top.contains(v)).collect();
    let mut base = vec![0usize; f];
    for &v in &rest {
        base[v] = 1;
    }
    let total = (0..rest.len()).fold(1usize, |a, _| a * r);
    (0..total).map(move |mut code| {
        let mut a = base.clone();
        for &v in &rest {
            a[v] = 1 + code % r;
            code /= r;
        }
        EmbeddingType { r, assignment: a }
    })
}

/// Every type of an `f`-vertex pattern, by increasing `|S_0|`, then by `S_0`
/// in lexicographic order, then by bottom assignment.
pub fn enumerate_types(f: &Graph, r: usize, caps: &Caps) -> Result<impl Iterator<Item = EmbeddingType>> {
    if r < 2 {
        return Err(Error::invalid("types need r >= 2"));
    }
    let n = f.n();
    f.masks()?;
    caps::check("embedding types", type_count(n, r), caps.types)?;
    Ok((0..=n).flat_map(move |l| (0..n).combinations(l).flat_map(move |top| with_top(n, r, &top))))
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolatingType {
    #[serde(rename = "type")]
    pub ty: EmbeddingType,
    pub stats: TypeStats,
    /// `"A"` or `"B"`.
    pub condition: &'static str,
    pub required_nu: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub chi: usize,
    pub k: usize,
    pub admissible: bool,
    pub types_total: String,
    pub types_checked: String,
    /// True when every type was examined (always the case for an admissible verdict).
    pub complete: bool,
    pub violating: Option<ViolatingType>,
}

fn violation(f: &Graph, k: usize, ty: &EmbeddingType) -> Result<Option<ViolatingType>> {
    let stats = type_stats(f, ty)?;
    let (condition, need) = if stats.top_has_edge { ("B", k + 1) } else { ("A", k) };
    let need = need.saturating_sub(stats.top_size);
    Ok((stats.nu < need).then(|| ViolatingType {
        ty: ty.clone(),
        stats,
        condition,
        required_nu: need,
    }))
}

/// Scans the types in enumeration order and stops at the first violation
/// when `early_exit`. Parallel over tops of each size.
fn scan(f: &Graph, k: usize, r: usize, caps: &Caps, early_exit: bool) -> Result<AdmissibilityReport> {
    let n = f.n();
    let total = type_count(n, r);
    caps::check("embedding types", total, caps.types)?;
    let mut checked: u128 = 0;
    let mut first: Option<ViolatingType> = None;
    for l in 0..=n {
        let tops: Vec<Vec<usize>> = (0..n).combinations(l).collect();
        let per_top: Vec<(u128, Option<ViolatingType>)> = tops
            .par_iter()
            .map(|top| -> Result<(u128, Option<ViolatingType>)> {
                let mut seen = 0u128;
                let mut found = None;
                for ty in with_top(n, r, top) {
                    seen += 1;
                    if found.is_none() {
                        found = violation(f, k, &ty)?;
                        if found.is_some() && early_exit {
                            break;
                        }
                    }
                }
                Ok((seen, found))
            })
            .collect::<Result<_>>()?;
        for (seen, v) in per_top {
            checked += seen;
            if first.is_none() {
                first = v;
                if first.is_some() && early_exit {
                    return Ok(report(f, k, total, checked, first));
                }
            }
        }
    }
    Ok(report(f, k, total, checked, first))
}

fn report(f: &Graph, k: usize, total: u128, checked: u128, v: Option<ViolatingType>) -> AdmissibilityReport {
    AdmissibilityReport {
        chi: chromatic_number(f).unwrap_or(0),
        k,
        admissible: v.is_none(),
        types_total: total.to_string(),
        types_checked: checked.to_string(),
        complete: checked == total,
        violating: v,
    }
}

fn admissibility_preconditions(f: &Graph, k: usize, caps: &Caps) -> Result<usize> {
    let chi = chromatic_number(f)?;
    if chi < 3 {
        return Err(Error::precondition(format!("admissibility needs χ(F) >= 3, got {chi}")));
    }
    if !is_color_k_critical(f, k, caps)?.is_critical {
        return Err(Error::precondition(format!("pattern is not colour-{k}-critical")));
    }
    Ok(chi - 1)
}

/// Decides admissibility, stopping at the first violating type.
pub fn is_admissible(f: &Graph, k: usize, caps: &Caps) -> Result<AdmissibilityReport> {
    let r = admissibility_preconditions(f, k, caps)?;
    scan(f, k, r, caps, true)
}

/// Like [`is_admissible`] but walks every type, so `types_checked` always
/// equals `types_total`.
pub fn admissibility_report(f: &Graph, k: usize, caps: &Caps) -> Result<AdmissibilityReport> {
    let r = admissibility_preconditions(f, k, caps)?;
    scan(f, k, r, caps, false)
}

/// The host `K_𝓕`: an independent top of size `|S_0|` carrying `E(F_0)`, joined
/// to the complete `r`-partite graph on parts of the given sizes, with `E(F_i)`
/// placed on the first `|S_i|` vertices of part `i`. Returns the host and the
/// image of `E(𝓕)`.
pub fn k_type_host(f: &Graph, ty: &EmbeddingType, part_sizes: &[usize]) -> Result<(Graph, Vec<Edge>)> {
    check_len(f, ty)?;
    if part_sizes.len() != ty.r {
        return Err(Error::invalid(format!("expected {} part sizes", ty.r)));
    }
    let parts = ty.parts();
    for (i, &size) in part_sizes.iter().enumerate() {
        if size < parts[i + 1].len() {
            return Err(Error::invalid(format!(
                "part {} has {} vertices, type needs {}",
                i + 1,
                size,
                parts[i + 1].len()
            )));
        }
    }
    let l = parts[0].len();
    let mut offset = vec![0usize; ty.r + 1];
    offset[1] = l;
    for i in 1..ty.r {
        offset[i + 1] = offset[i] + part_sizes[i - 1];
    }
    let n = l + part_sizes.iter().sum::<usize>();
    let mut place = vec![0usize; f.n()];
    for (i, part) in parts.iter().enumerate() {
        for (j, &v) in part.iter().enumerate() {
            place[v] = offset[i] + j;
        }
    }
    let part_of = |x: usize| {
        if x < l {
            0
        } else {
            (1..=ty.r).rev().find(|&i| x >= offset[i]).unwrap_or(0)
        }
    };
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let (px, py) = (part_of(x), part_of(y));
            if px != py {
                edges.push((x, y));
            }
        }
    }
    let required: Vec<Edge> = ty.edges(f).into_iter().map(|(u, v)| (place[u], place[v])).collect();
    edges.extend(&required);
    Ok((Graph::build(n, &edges)?, required))
}

/// `c_𝓕(n_1, ..., n_r)`: copies of `F` in `K_𝓕` containing every edge of `E(𝓕)`.
pub fn type_count_exact(f: &Graph, ty: &EmbeddingType, part_sizes: &[usize]) -> Result<u128> {
    let (host, required) = k_type_host(f, ty, part_sizes)?;
    count_copies_with_required(f, &host, &required, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, kneser, pattern_section3, Elementary};
    use crate::graph::matching::matching_number_exhaustive;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn enumeration_size_and_order() {
        let k2 = Graph::complete(2);
        let all: Vec<_> = enumerate_types(&k2, 2, &caps()).unwrap().collect();
        assert_eq!(all.len(), 9);
        let tops: Vec<usize> = all.iter().map(|t| t.top_size()).collect();
        assert!(tops.windows(2).all(|w| w[0] <= w[1]));
        let uniq: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(uniq.len(), 9);
        assert_eq!(
            enumerate_types(&kneser(5, 2).unwrap(), 2, &caps()).unwrap().count(),
            59049
        );
        let tight = Caps { types: 8, ..caps() };
        assert!(matches!(
            enumerate_types(&k2, 2, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn stats_of_small_types() {
        let k3 = Graph::complete(3);
        let s = type_stats(&k3, &EmbeddingType::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!((s.nu, s.isolated, s.top_has_edge), (1, 0, false));
        let s = type_stats(&k3, &EmbeddingType::new(2, vec![0, 1, 2]).unwrap()).unwrap();
        assert_eq!((s.top_size, s.nu, s.isolated), (1, 0, 2));
        let p4 = elementary(Elementary::Path(4)).unwrap();
        let s = type_stats(&p4, &EmbeddingType::new(2, vec![0, 1, 1, 0]).unwrap()).unwrap();
        assert_eq!((s.nu, s.isolated, s.top_has_edge), (1, 0, false));
    }

    #[test]
    fn bottom_matching_agrees_with_exhaustive() {
        let f = pattern_section3(2).unwrap().graph;
        for ty in enumerate_types(&f, 3, &caps()).unwrap().step_by(97) {
            let b = ty.bottom(&f).unwrap();
            let s = type_stats(&f, &ty).unwrap();
            if b.edge_count() <= 16 {
                assert_eq!(s.nu, matching_number_exhaustive(&b));
            }
            assert!(s.nu + s.isolated <= f.n() - s.top_size);
        }
    }

    #[test]
    fn admissibility_verdicts() {
        assert!(is_admissible(&Graph::complete(4), 1, &caps()).unwrap().admissible);
        let two = Graph::complete(3).scalar_union(2);
        let rep = admissibility_report(&two, 2, &caps()).unwrap();
        assert!(rep.admissible && rep.complete);
        assert!(is_admissible(&Graph::complete(3), 2, &caps()).is_err());
    }

    #[test]
    fn section3_pattern_has_a_violating_type() {
        let f = pattern_section3(2).unwrap().graph;
        let rep = is_admissible(&f, 2, &caps()).unwrap();
        assert!(!rep.admissible);
        let v = rep.violating.unwrap();
        assert!(v.stats.nu < v.required_nu);
        // the type singled out in the open question: S_0 is the middle edge of P_4
        let ty = EmbeddingType::new(3, vec![2, 3, 2, 3, 1, 0, 0, 1]).unwrap();
        let s = type_stats(&f, &ty).unwrap();
        assert!(s.top_has_edge && s.nu == 0);
        let full = admissibility_report(&f, 2, &caps()).unwrap();
        assert!(full.complete && full.types_checked == "65536");
    }

    #[test]
    fn type_host_counts() {
        let k3 = Graph::complete(3);
        let ty = EmbeddingType::new(2, vec![1, 1, 2]).unwrap();
        assert_eq!(type_count_exact(&k3, &ty, &[3, 3]).unwrap(), 3);
        assert_eq!(type_count_exact(&k3, &ty, &[2, 1]).unwrap(), 1);
        let ty = EmbeddingType::new(2, vec![0, 1, 2]).unwrap();
        let counts: Vec<u128> = (1..5).map(|m| type_count_exact(&k3, &ty, &[m, m]).unwrap()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        assert!(type_count_exact(&k3, &ty, &[0, 1]).is_err());
    }
}
