//! `t_F(n, q)`: least copies of `F` after adding `q` edges inside the parts of
//! `H(n, r, k)`.
//!
//! Permuting the vertices of a part, or swapping two parts of equal size, is an
//! automorphism of `H(n, r, k)`. A placement is therefore determined up to
//! isomorphism by one small graph per part, taken up to isomorphism, and by the
//! multiset of those graphs over each class of equal-size parts.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::{self, Caps};
use crate::constructions::h_nrk;
use crate::counting::PreparedPattern;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::report::ser_u128;

use super::r_of;

/// Largest `q` handled by [`t_exact`].
pub const SPREAD_Q_LIMIT: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct TExactReport {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    #[serde(serialize_with = "ser_u128")]
    pub value: u128,
    /// Placements counted.
    pub placements: u64,
    /// One minimising choice of added edges.
    pub argmin: Vec<Edge>,
}

/// Smallest edge list under relabelling of `0..m`.
fn canonical(edges: &[Edge], m: usize) -> Vec<Edge> {
    (0..m)
        .permutations(m)
        .map(|p| {
            let mut e: Vec<Edge> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Isomorphism classes of graphs with `j` edges and no isolated vertices, on
/// vertices `0..m` (`m` = vertices used).
fn edge_classes(j: usize) -> Vec<(usize, Vec<Edge>)> {
    let mut level: BTreeSet<(usize, Vec<Edge>)> = BTreeSet::new();
    level.insert((0, Vec::new()));
    for _ in 0..j {
        let mut next = BTreeSet::new();
        for (m, edges) in &level {
            let m = *m;
            let mut grow = |a: usize, b: usize, m2: usize| {
                let mut e = edges.clone();
                e.push((a, b));
                next.insert((m2, canonical(&e, m2)));
            };
            for a in 0..m {
                for b in a + 1..m {
                    if !edges.contains(&(a, b)) {
                        grow(a, b, m);
                    }
                }
                grow(a, m, m + 1);
            }
            grow(m, m + 1, m + 2);
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Orbit representatives of `q`-edge placements for the given part sizes.
fn representatives(sizes: &[usize], q: usize) -> Vec<Vec<(usize, usize)>> {
    let classes: Vec<Vec<(usize, Vec<Edge>)>> = (0..=q).map(edge_classes).collect();
    let mut out = BTreeSet::new();
    fn rec(
        sizes: &[usize],
        classes: &[Vec<(usize, Vec<Edge>)>],
        left: usize,
        i: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        if i == sizes.len() {
            if left == 0 {
                let mut key = cur.clone();
                // sort inside each run of equal part sizes
                let mut start = 0;
                while start < sizes.len() {
                    let end = (start..sizes.len())
                        .find(|&e| sizes[e] != sizes[start])
                        .unwrap_or(sizes.len());
                    key[start..end].sort_unstable();
                    start = end;
                }
                out.insert(key);
            }
            return;
        }
        for j in 0..=left {
            for (c, (m, _)) in classes[j].iter().enumerate() {
                if *m <= sizes[i] {
                    cur.push((j, c));
                    rec(sizes, classes, left - j, i + 1, cur, out);
                    cur.pop();
                }
            }
        }
    }
    rec(sizes, &classes, q, 0, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

fn count_min(p: &PreparedPattern, base: &Graph, placements: &[Vec<Edge>]) -> Result<(u128, Vec<Edge>)> {
    let counted: Vec<(u128, usize)> = placements
        .par_iter()
        .enumerate()
        .map(|(i, extra)| Ok((p.copies(&base.add_edges(extra)?)?, i)))
        .collect::<Result<_>>()?;
    let (value, i) = counted
        .into_iter()
        .min()
        .ok_or_else(|| Error::invalid("no placement fits"))?;
    Ok((value, placements[i].clone()))
}

/// Exact `t_F(n, q)` over orbit representatives of the placements.
pub fn t_exact(f: &Graph, k: usize, n: usize, q: usize, caps: &Caps) -> Result<TExactReport> {
    if q > SPREAD_Q_LIMIT {
        return Err(Error::invalid(format!(
            "q = {q} exceeds the supported {SPREAD_Q_LIMIT}"
        )));
    }
    let r = r_of(f)?;
    let host = h_nrk(n, r, k)?;
    let sizes = host.part_sizes();
    let classes: Vec<Vec<(usize, Vec<Edge>)>> = (0..=q).map(edge_classes).collect();
    let reps = representatives(&sizes, q);
    caps::check("edge placements", reps.len() as u128, caps.placements)?;
    let placements: Vec<Vec<Edge>> = reps
        .iter()
        .map(|rep| {
            rep.iter()
                .enumerate()
                .flat_map(|(part, &(j, c))| {
                    let vs = &host.parts[part];
                    classes[j][c].1.iter().map(move |&(a, b)| (vs[a], vs[b]))
                })
                .collect()
        })
        .collect();
    let p = PreparedPattern::new(f)?;
    let (value, argmin) = count_min(&p, &host.graph, &placements)?;
    Ok(TExactReport {
        n,
        k,
        q,
        value,
        placements: placements.len() as u64,
        argmin,
    })
}

/// `t_F(n, q)` by trying every `q`-set of missing pairs. Exponential; kept as
/// an independent check on [`t_exact`].
pub fn t_exhaustive(f: &Graph, k: usize, n: usize, q: usize, caps: &Caps) -> Result<TExactReport> {
    let r = r_of(f)?;
    let host = h_nrk(n, r, k)?;
    let missing: Vec<Edge> = host
        .parts
        .iter()
        .flat_map(|vs| vs.iter().copied().tuple_combinations())
        .collect();
    caps::check("edge placements", caps::choose(missing.len(), q), caps.placements)?;
    let placements: Vec<Vec<Edge>> = missing.into_iter().combinations(q).collect();
    let p = PreparedPattern::new(f)?;
    let (value, argmin) = count_min(&p, &host.graph, &placements)?;
    Ok(TExactReport {
        n,
        k,
        q,
        value,
        placements: placements.len() as u64,
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_class_counts() {
        // graphs without isolated vertices by edge count: 1, 1, 2, 5, 11
        let counts: Vec<usize> = (0..5).map(|j| edge_classes(j).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 11]);
    }

    #[test]
    fn representatives_respect_part_symmetry() {
        // two equal parts, one edge: a single orbit
        assert_eq!(representatives(&[3, 3], 1).len(), 1);
        assert_eq!(representatives(&[4, 3], 1).len(), 2);
        // P3 or 2K2 in one part, or an edge in each
        assert_eq!(representatives(&[4, 4], 2).len(), 3);
        // 2K2 does not fit in a part of three
        assert_eq!(representatives(&[3, 3], 2).len(), 2);
    }

    #[test]
    fn orbit_search_matches_exhaustive() {
        let caps = Caps::default();
        let k3 = Graph::complete(3);
        for q in 1..=3 {
            let a = t_exact(&k3, 1, 8, q, &caps).unwrap();
            let b = t_exhaustive(&k3, 1, 8, q, &caps).unwrap();
            assert_eq!(a.value, b.value);
        }
        assert_eq!(t_exact(&k3, 1, 8, 1, &caps).unwrap().value, 4);
    }
}
