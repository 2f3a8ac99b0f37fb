//! Colour-k-criticality and the critical-subset parameters.
//!
//! Throughout, `F` has chromatic number `r + 1`. A graph is colour-k-critical
//! when some `k` edges can be deleted to make it `r`-colourable while no
//! `k - 1` vertex deletions can.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::caps::{self, Caps};
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, coloring::is_proper, enumerate_proper_colorings, k_colorable, Edge, Graph};

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    EdgeSet,
    VertexSet,
    KTuple,
    Matching,
}

/// Deleted vertices and edges together with an `r`-colouring of what is left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    /// Colour per original vertex; `None` on deleted vertices.
    pub coloring: Vec<Option<usize>>,
}

impl CriticalWitness {
    /// Re-checks the certificate from scratch.
    pub fn verify(&self, f: &Graph, r: usize) -> bool {
        let Ok((g, keep)) = remove(f, &self.vertices, &self.edges) else {
            return false;
        };
        if self.coloring.len() != f.n() {
            return false;
        }
        let mut c = Vec::with_capacity(keep.len());
        for (v, col) in self.coloring.iter().enumerate() {
            let deleted = self.vertices.contains(&v);
            match (deleted, col) {
                (true, None) => {}
                (false, Some(x)) if *x < r => c.push(*x),
                _ => return false,
            }
        }
        is_proper(&g, &c)
    }
}

/// `F - vertices - edges`, with the surviving original indices in order.
pub(crate) fn remove(f: &Graph, vertices: &[usize], edges: &[Edge]) -> Result<(Graph, Vec<usize>)> {
    let without_edges = f.delete_edges(edges)?;
    let keep: Vec<usize> = (0..f.n()).filter(|v| !vertices.contains(v)).collect();
    Ok((without_edges.induced(&keep)?, keep))
}

fn lift(keep: &[usize], n: usize, c: &[usize]) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        out[v] = Some(c[i]);
    }
    out
}

fn r_coloring_after(f: &Graph, r: usize, vertices: &[usize], edges: &[Edge]) -> Result<Option<Vec<Option<usize>>>> {
    let (g, keep) = remove(f, vertices, edges)?;
    Ok(k_colorable(&g, r)?.map(|c| lift(&keep, f.n(), &c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalityReport {
    pub chi: usize,
    pub k: usize,
    pub is_critical: bool,
    /// Number of `(k-1)`-vertex deletions examined.
    pub deletions_checked: u64,
    /// A `(k-1)`-set whose deletion lowers the chromatic number, if any.
    pub violating_deletion: Option<Vec<usize>>,
    /// A `k`-matching whose deletion lowers the chromatic number, if any.
    pub witness: Option<CriticalWitness>,
}

fn chi_and_r(f: &Graph) -> Result<(usize, usize)> {
    let chi = chromatic_number(f)?;
    if chi == 0 {
        return Err(Error::precondition("pattern has no vertices"));
    }
    Ok((chi, chi - 1))
}

/// All `k`-edge matchings of `f`.
pub fn matchings(f: &Graph, k: usize, cap: u64) -> Result<Vec<Vec<Edge>>> {
    f.masks()?;
    let edges = f.edge_list();
    caps::check("k-edge subsets", caps::choose(edges.len(), k), cap)?;
    fn rec(edges: &[Edge], start: usize, k: usize, used: u64, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..edges.len() {
            let (u, v) = edges[i];
            let m = (1u64 << u) | (1u64 << v);
            if used & m == 0 {
                cur.push((u, v));
                rec(edges, i + 1, k, used | m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&edges, 0, k, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Decides colour-k-criticality.
///
/// Every `(k-1)`-vertex deletion is checked first. Once those all keep the
/// chromatic number, any `k` edges whose deletion lowers it must be pairwise
/// disjoint (otherwise a shared endpoint plus one endpoint of each remaining
/// edge would be a `(k-1)`-vertex deletion doing the same), so only
/// `k`-matchings are searched.
pub fn is_color_k_critical(f: &Graph, k: usize, caps: &Caps) -> Result<CriticalityReport> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    f.masks()?;
    let (chi, r) = chi_and_r(f)?;
    let mut report = CriticalityReport {
        chi,
        k,
        is_critical: false,
        deletions_checked: 0,
        violating_deletion: None,
        witness: None,
    };
    let total = caps::choose(f.n(), k - 1);
    caps::check("vertex deletions", total, caps.subsets)?;
    let subsets: Vec<Vec<usize>> = (0..f.n()).combinations(k - 1).collect();
    report.deletions_checked = subsets.len() as u64;
    let bad = subsets
        .par_iter()
        .map(|s| -> Result<Option<Vec<usize>>> {
            let (g, _) = remove(f, s, &[])?;
            Ok(k_colorable(&g, r)?.map(|_| s.clone()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    if let Some(s) = bad {
        report.violating_deletion = Some(s);
        return Ok(report);
    }
    for m in matchings(f, k, caps.subsets)? {
        if let Some(c) = r_coloring_after(f, r, &[], &m)? {
            report.witness = Some(CriticalWitness {
                kind: WitnessKind::Matching,
                vertices: Vec::new(),
                edges: m,
                coloring: c,
            });
            report.is_critical = true;
            break;
        }
    }
    Ok(report)
}

/// `(x_1, ..., x_{k-1}; uv)` with `F - X - uv` `r`-colourable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalTuple {
    pub x: Vec<usize>,
    pub edge: Edge,
}

/// Every critical `k`-tuple, with `X` in increasing lexicographic order and the
/// edge in edge-list order.
pub fn critical_k_tuples(f: &Graph, k: usize, caps: &Caps) -> Result<Vec<CriticalTuple>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let (_, r) = chi_and_r(f)?;
    caps::check("vertex deletions", caps::choose(f.n(), k - 1), caps.subsets)?;
    let edges = f.edge_list();
    let subsets: Vec<Vec<usize>> = (0..f.n()).combinations(k - 1).collect();
    let found: Vec<Vec<CriticalTuple>> = subsets
        .par_iter()
        .map(|x| -> Result<Vec<CriticalTuple>> {
            let mut out = Vec::new();
            for &(u, v) in edges.iter().filter(|(u, v)| !x.contains(u) && !x.contains(v)) {
                if r_coloring_after(f, r, x, &[(u, v)])?.is_some() {
                    out.push(CriticalTuple {
                        x: x.clone(),
                        edge: (u, v),
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Every `k`-matching whose deletion leaves an `r`-colourable graph.
pub fn critical_matchings(f: &Graph, k: usize, caps: &Caps) -> Result<Vec<Vec<Edge>>> {
    let (_, r) = chi_and_r(f)?;
    let all = matchings(f, k, caps.subsets)?;
    let keep: Vec<bool> = all
        .par_iter()
        .map(|m| Ok(r_coloring_after(f, r, &[], m)?.is_some()))
        .collect::<Result<_>>()?;
    Ok(all.into_iter().zip(keep).filter_map(|(m, k)| k.then_some(m)).collect())
}

/// A minimum vertex set whose deletion lowers the chromatic number to `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSubset {
    pub a: Vec<usize>,
    pub stable: bool,
    pub delta1: ExtNat,
    pub delta2: ExtNat,
}

/// λ(F): least size of a deletion set leaving an `r`-colourable graph.
pub fn lambda(f: &Graph, caps: &Caps) -> Result<usize> {
    Ok(minimum_deletion_sets(f, caps)?.0)
}

fn minimum_deletion_sets(f: &Graph, caps: &Caps) -> Result<(usize, Vec<Vec<usize>>)> {
    let (_, r) = chi_and_r(f)?;
    let mut examined: u128 = 0;
    for size in 0..=f.n() {
        examined += caps::choose(f.n(), size);
        caps::check("vertex deletions", examined, caps.subsets)?;
        let subsets: Vec<Vec<usize>> = (0..f.n()).combinations(size).collect();
        let ok: Vec<bool> = subsets
            .par_iter()
            .map(|a| {
                let (g, _) = remove(f, a, &[])?;
                Ok(k_colorable(&g, r)?.is_some())
            })
            .collect::<Result<_>>()?;
        let hits: Vec<Vec<usize>> = subsets
            .into_iter()
            .zip(ok)
            .filter_map(|(a, k)| k.then_some(a))
            .collect();
        if !hits.is_empty() {
            return Ok((size, hits));
        }
    }
    unreachable!("deleting every vertex leaves the empty graph")
}

/// Every value `|N_F(x) ∩ U_j|` over `x ∈ A` and colour classes `U_j` of
/// proper `r`-colourings of `F - A`.
fn neighbourhood_values(f: &Graph, a: &[usize], r: usize, caps: &Caps) -> Result<BTreeSet<u64>> {
    let (g, keep) = remove(f, a, &[])?;
    let masks = f.masks()?;
    let mut values = BTreeSet::new();
    let mut seen: u64 = 0;
    // by colour class, which survivors are adjacent to each x
    let adj_keep: Vec<Vec<bool>> = a
        .iter()
        .map(|&x| keep.iter().map(|&v| masks[x] >> v & 1 == 1).collect())
        .collect();
    for c in enumerate_proper_colorings(&g, r, &[])? {
        seen += 1;
        caps::check("colourings", seen as u128, caps.colorings)?;
        for row in &adj_keep {
            let mut cnt = vec![0u64; r];
            for (i, &adj) in row.iter().enumerate() {
                if adj {
                    cnt[c[i]] += 1;
                }
            }
            values.extend(cnt);
        }
    }
    Ok(values)
}

fn least_at_least(values: &BTreeSet<u64>, ell: u64) -> ExtNat {
    values
        .range(ell..)
        .next()
        .map_or(ExtNat::Infinite, |&v| ExtNat::Finite(v))
}

/// δ_ℓ(A), read as a minimum over triples (x, partition, part).
pub fn delta_ell(f: &Graph, a: &[usize], ell: u64, caps: &Caps) -> Result<ExtNat> {
    let (chi, r) = chi_and_r(f)?;
    let (lam, sets) = minimum_deletion_sets(f, caps)?;
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if sorted.len() != lam || !sets.contains(&sorted) {
        return Err(Error::precondition(format!(
            "{a:?} is not a critical subset (λ = {lam}, χ = {chi})"
        )));
    }
    Ok(least_at_least(&neighbourhood_values(f, a, r, caps)?, ell))
}

/// The family of critical subsets with their δ₁ and δ₂.
pub fn critical_subsets(f: &Graph, caps: &Caps) -> Result<Vec<CriticalSubset>> {
    let (_, r) = chi_and_r(f)?;
    let (_, sets) = minimum_deletion_sets(f, caps)?;
    sets.par_iter()
        .map(|a| {
            let values = neighbourhood_values(f, a, r, caps)?;
            Ok(CriticalSubset {
                stable: f.is_stable(a),
                delta1: least_at_least(&values, 1),
                delta2: least_at_least(&values, 2),
                a: a.clone(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub chi: usize,
    pub lambda: usize,
    pub t: ExtNat,
    pub s: ExtNat,
    pub critical_subsets: Vec<CriticalSubset>,
}

/// λ, t and s in one pass over the critical subsets.
pub fn parameters(f: &Graph, caps: &Caps) -> Result<Parameters> {
    let chi = chromatic_number(f)?;
    let subsets = critical_subsets(f, caps)?;
    let lambda = subsets.first().map_or(0, |s| s.a.len());
    let t = subsets
        .iter()
        .filter(|s| s.stable)
        .map(|s| s.delta2)
        .min()
        .unwrap_or(ExtNat::Infinite);
    let s = subsets
        .iter()
        .filter(|s| !s.stable)
        .map(|s| s.delta1)
        .min()
        .unwrap_or(ExtNat::Infinite);
    Ok(Parameters {
        chi,
        lambda,
        t,
        s,
        critical_subsets: subsets,
    })
}

pub fn t_param(f: &Graph, caps: &Caps) -> Result<ExtNat> {
    Ok(parameters(f, caps)?.t)
}

pub fn s_param(f: &Graph, caps: &Caps) -> Result<ExtNat> {
    Ok(parameters(f, caps)?.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{kneser, pattern_section3};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn classical_and_kneser_criticality() {
        let r = is_color_k_critical(&Graph::complete(4), 1, &caps()).unwrap();
        assert!(r.is_critical);
        let p = kneser(5, 2).unwrap();
        let r = is_color_k_critical(&p, 3, &caps()).unwrap();
        assert!(r.is_critical);
        assert_eq!(r.deletions_checked, 45);
        let w = r.witness.unwrap();
        assert!(w.verify(&p, 2));
        assert_eq!(w.edges.len(), 3);
        assert!(!is_color_k_critical(&p, 2, &caps()).unwrap().is_critical);
        let f = pattern_section3(2).unwrap().graph;
        assert!(is_color_k_critical(&f, 2, &caps()).unwrap().is_critical);
    }

    #[test]
    fn tuples_and_matchings_of_small_graphs() {
        let k3 = Graph::complete(3);
        assert_eq!(critical_k_tuples(&k3, 1, &caps()).unwrap().len(), 3);
        assert_eq!(critical_k_tuples(&Graph::complete(4), 1, &caps()).unwrap().len(), 6);
        assert_eq!(critical_matchings(&k3, 1, &caps()).unwrap().len(), 3);
        let two = k3.scalar_union(2);
        assert_eq!(critical_matchings(&two, 2, &caps()).unwrap().len(), 9);
        let f = pattern_section3(2).unwrap().graph;
        let ms = critical_matchings(&f, 2, &caps()).unwrap();
        assert!(ms.contains(&vec![(0, 1), (2, 3)]));
    }

    #[test]
    fn lambda_and_delta() {
        assert_eq!(lambda(&kneser(5, 2).unwrap(), &caps()).unwrap(), 3);
        assert_eq!(lambda(&Graph::complete(4), &caps()).unwrap(), 1);
        let k3 = Graph::complete(3);
        assert_eq!(delta_ell(&k3, &[0], 1, &caps()).unwrap(), ExtNat::Finite(1));
        assert_eq!(delta_ell(&k3, &[0], 2, &caps()).unwrap(), ExtNat::Infinite);
        assert!(delta_ell(&k3, &[0, 1], 1, &caps()).is_err());
    }

    #[test]
    fn disjoint_cliques_have_infinite_parameters() {
        let p = parameters(&Graph::complete(3).scalar_union(2), &caps()).unwrap();
        assert_eq!((p.t, p.s), (ExtNat::Infinite, ExtNat::Infinite));
        assert!(p.critical_subsets.iter().all(|s| s.stable));
    }

    #[test]
    fn fig1b_parameters() {
        use crate::constructions::pattern_fig1b;
        let f = pattern_fig1b(3, 2).unwrap().graph;
        let p = parameters(&f, &caps()).unwrap();
        assert_eq!((p.chi, p.t, p.s), (4, ExtNat::Finite(4), ExtNat::Finite(2)));
        let f = pattern_fig1b(3, 3).unwrap().graph;
        let p = parameters(&f, &caps()).unwrap();
        assert_eq!((p.t, p.s), (ExtNat::Finite(5), ExtNat::Finite(3)));
    }

    #[test]
    fn ext_nat_order() {
        assert!(ExtNat::Finite(u64::MAX) < ExtNat::Infinite);
        assert_eq!(ExtNat::Infinite.to_string(), "inf");
    }
}
