//! Colour-class size histograms over critical tuples and matchings.
//!
//! Every copy of a colour-k-critical `F` in one of the hosts below must use
//! all of the added edges and (for the edge hosts) map exactly `k - 1`
//! vertices onto the top; otherwise deleting one endpoint per unused added
//! edge would be a deletion of at most `k - 1` vertices leaving `F`
//! `r`-colourable. A copy is therefore fixed by a critical structure, a proper
//! colouring of the rest (the host part of each vertex), and a choice of host
//! vertices per class. The histogram records, for each vector of class sizes,
//! how many (structure, colouring) pairs produce it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::{self, Caps};
use crate::counting::automorphism_count;
use crate::criticality::{critical_k_tuples, critical_matchings, is_color_k_critical, remove};
use crate::error::{Error, Result};
use crate::graph::{coloring::is_proper, enumerate_proper_colorings, Edge, Graph};
use crate::scalar::{add, div_exact, falling, from_u128, mul, Exact};

use super::r_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    /// `K_{k-1}` joined to the parts, one extra edge in a part.
    AddedEdge,
    /// No top, a `k`-matching in a part.
    Matching,
    /// Independent top of size `k - 1`, one extra edge `e` in a part and no
    /// edges between `V(e)` and the top.
    DetachedEdge,
}

impl ProfileKind {
    pub fn top_size(self, k: usize) -> usize {
        match self {
            ProfileKind::Matching => 0,
            _ => k - 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriticalProfile {
    pub kind: ProfileKind,
    pub k: usize,
    pub r: usize,
    pub aut: u128,
    /// Number of critical structures contributing.
    pub structures: usize,
    /// Class-size vector `[x_0, x_1, ..., x_{r-1}]` to multiplicity. Class 0 is
    /// the part holding the added edges and excludes their endpoints.
    pub histogram: BTreeMap<Vec<u64>, u128>,
}

struct Structure {
    top: Vec<usize>,
    edges: Vec<Edge>,
}

impl CriticalProfile {
    pub fn build(f: &Graph, k: usize, kind: ProfileKind, caps: &Caps) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        let r = r_of(f)?;
        if !is_color_k_critical(f, k, caps)?.is_critical {
            return Err(Error::precondition(format!("pattern is not colour-{k}-critical")));
        }
        let structures: Vec<Structure> = match kind {
            ProfileKind::AddedEdge | ProfileKind::DetachedEdge => critical_k_tuples(f, k, caps)?
                .into_iter()
                .filter(|t| kind == ProfileKind::AddedEdge || detached(f, &t.x, t.edge))
                .map(|t| Structure {
                    top: t.x,
                    edges: vec![t.edge],
                })
                .collect(),
            ProfileKind::Matching => critical_matchings(f, k, caps)?
                .into_iter()
                .map(|m| Structure {
                    top: Vec::new(),
                    edges: m,
                })
                .collect(),
        };
        let parts: Vec<BTreeMap<Vec<u64>, u128>> = structures
            .par_iter()
            .map(|s| histogram_for(f, r, s, caps))
            .collect::<Result<_>>()?;
        let mut histogram = BTreeMap::new();
        for part in parts {
            merge(&mut histogram, part)?;
        }
        Ok(CriticalProfile {
            kind,
            k,
            r,
            aut: automorphism_count(f)?,
            structures: structures.len(),
            histogram,
        })
    }

    /// Host vertices of the special part taken by the added edges.
    pub fn reserved(&self) -> u64 {
        match self.kind {
            ProfileKind::Matching => 2 * self.k as u64,
            _ => 2,
        }
    }

    /// Ways to place the top and the added edges once the structure is fixed.
    fn placement_factor<T: Exact>(&self) -> Result<T> {
        let k = self.k as u64;
        match self.kind {
            // (k-1)! orders on the top, 2 orientations of the edge
            ProfileKind::AddedEdge | ProfileKind::DetachedEdge => mul(&falling(k - 1, k - 1)?, &from_u128(2)?),
            // k! assignments to host edges, 2^k orientations
            ProfileKind::Matching => mul(&falling(k, k)?, &from_u128(1u128 << k)?),
        }
    }

    /// Exact copy count with the added edges in part `special` of a host with
    /// the given part sizes.
    pub fn evaluate<T: Exact>(&self, sizes: &[usize], special: usize) -> Result<T> {
        if sizes.len() != self.r {
            return Err(Error::invalid(format!(
                "expected {} part sizes, got {}",
                self.r,
                sizes.len()
            )));
        }
        if special >= self.r {
            return Err(Error::invalid(format!("no part {special}")));
        }
        let reserved = self.reserved();
        if (sizes[special] as u64) < reserved {
            return Err(Error::invalid(format!(
                "part {special} has {} vertices, the added edges need {reserved}",
                sizes[special]
            )));
        }
        // class 0 goes to `special`, the others to the remaining parts in
        // order; the histogram is symmetric in classes 1..r
        let others: Vec<u64> = (0..self.r).filter(|&i| i != special).map(|i| sizes[i] as u64).collect();
        let mut total = T::zero();
        for (vector, &mult) in &self.histogram {
            let mut term: T = falling(sizes[special] as u64 - reserved, vector[0])?;
            for (j, &x) in vector[1..].iter().enumerate() {
                if term.is_zero() {
                    break;
                }
                term = mul(&term, &falling(others[j], x)?)?;
            }
            if !term.is_zero() {
                total = add(&total, &mul(&term, &from_u128(mult)?)?)?;
            }
        }
        let total = mul(&total, &self.placement_factor()?)?;
        div_exact(&total, &from_u128(self.aut)?)
    }
}

/// The top is stable and sends no edge to the ends of `e`.
fn detached(f: &Graph, top: &[usize], (u, v): Edge) -> bool {
    f.is_stable(top) && top.iter().all(|&x| !f.has_edge(x, u) && !f.has_edge(x, v))
}

fn merge(into: &mut BTreeMap<Vec<u64>, u128>, from: BTreeMap<Vec<u64>, u128>) -> Result<()> {
    for (key, v) in from {
        let c = into.entry(key).or_insert(0);
        *c = c.checked_add(v).ok_or(Error::Overflow("colouring histogram"))?;
    }
    Ok(())
}

/// Colourings of `F - top - edges` with every endpoint of `edges` in class 0.
fn histogram_for(f: &Graph, r: usize, s: &Structure, caps: &Caps) -> Result<BTreeMap<Vec<u64>, u128>> {
    let (g, keep) = remove(f, &s.top, &s.edges)?;
    let mut pos = vec![usize::MAX; f.n()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let mut fixed = vec![None; keep.len()];
    let mut endpoints = 0u64;
    for &(u, v) in &s.edges {
        for w in [u, v] {
            if fixed[pos[w]].is_none() {
                endpoints += 1;
            }
            fixed[pos[w]] = Some(0);
        }
    }
    let mut out = BTreeMap::new();
    // endpoints forced into one class may already clash
    let pinned: Vec<usize> = (0..keep.len()).filter(|&i| fixed[i].is_some()).collect();
    let sub = g.induced(&pinned)?;
    if !is_proper(&sub, &vec![0; pinned.len()]) {
        return Ok(out);
    }
    let mut seen: u128 = 0;
    for c in enumerate_proper_colorings(&g, r, &fixed)? {
        seen += 1;
        caps::check("colourings", seen, caps.colorings)?;
        let mut sizes = vec![0u64; r];
        for &col in &c {
            sizes[col] += 1;
        }
        sizes[0] -= endpoints;
        *out.entry(sizes).or_insert(0) += 1;
    }
    Ok(out)
}
