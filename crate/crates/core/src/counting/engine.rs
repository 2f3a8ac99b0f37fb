//! Backtracking embedding search over host bitsets.

use rayon::prelude::*;

use super::automorphism::{automorphism_count, symmetry_conditions};
use crate::error::{Error, Result};
use crate::graph::{words_for, BitIter, Edge, Graph};

/// A pattern prepared for repeated counting: search order, back-neighbours
/// and the ordering conditions that pick one embedding per copy.
#[derive(Clone, Debug)]
pub struct PreparedPattern {
    graph: Graph,
    masks: Vec<u64>,
    aut: u128,
    /// Pattern vertex placed at each depth.
    order: Vec<usize>,
    /// Earlier depths adjacent to each depth.
    back: Vec<Vec<usize>>,
    /// Earlier depths whose image must be smaller than this depth's image.
    lower: Vec<Vec<usize>>,
    /// Earlier depths whose image must be larger.
    upper: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl PreparedPattern {
    pub fn new(f: &Graph) -> Result<Self> {
        let masks = f.masks()?;
        let aut = automorphism_count(f)?;
        let conds = symmetry_conditions(f)?;
        Ok(Self::with_conditions(f, masks, aut, &conds))
    }

    fn with_conditions(f: &Graph, masks: Vec<u64>, aut: u128, conds: &[(usize, usize)]) -> Self {
        let n = f.n();
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (masks[v] & placed).count_ones(),
                        masks[v].count_ones(),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("vertex left");
            order.push(v);
            placed |= 1u64 << v;
        }
        let mut depth_of = vec![0; n];
        for (d, &v) in order.iter().enumerate() {
            depth_of[v] = d;
        }
        let back = (0..n)
            .map(|d| (0..d).filter(|&e| masks[order[d]] >> order[e] & 1 == 1).collect())
            .collect();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(a, b) in conds {
            let (da, db) = (depth_of[a], depth_of[b]);
            if da < db {
                lower[db].push(da);
            } else {
                upper[da].push(db);
            }
        }
        let degree = order.iter().map(|&v| masks[v].count_ones() as usize).collect();
        PreparedPattern {
            graph: f.clone(),
            masks,
            aut,
            order,
            back,
            lower,
            upper,
            degree,
        }
    }

    /// The same search without symmetry breaking; counts every injection.
    pub fn unbroken(&self) -> Self {
        Self::with_conditions(&self.graph, self.masks.clone(), self.aut, &[])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn aut(&self) -> u128 {
        self.aut
    }

    pub fn broken(&self) -> bool {
        self.lower.iter().chain(&self.upper).any(|l| !l.is_empty())
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }
}

/// Receives every completed embedding, as the host image of each pattern vertex.
pub trait Sink: Send {
    /// When true, last-level candidates are counted by popcount instead of visited.
    const BULK: bool;
    fn leaf(&mut self, image: &[usize]) -> Result<()>;
    fn bulk(&mut self, count: u32) -> Result<()>;
    fn merge(&mut self, other: Self) -> Result<()>;
}

#[derive(Default)]
pub struct Tally(pub u128);

impl Sink for Tally {
    const BULK: bool = true;

    fn leaf(&mut self, _: &[usize]) -> Result<()> {
        self.bulk(1)
    }

    fn bulk(&mut self, count: u32) -> Result<()> {
        self.0 = self
            .0
            .checked_add(count as u128)
            .ok_or(Error::Overflow("embedding count"))?;
        Ok(())
    }

    fn merge(&mut self, other: Self) -> Result<()> {
        self.0 = self.0.checked_add(other.0).ok_or(Error::Overflow("embedding count"))?;
        Ok(())
    }
}

/// Host-side data shared by all workers.
pub(crate) struct HostView<'a> {
    adj: Vec<&'a [u64]>,
    n: usize,
    words: usize,
    /// Host vertices of degree at least `degree[d]` for each depth.
    deg_ok: Vec<Vec<u64>>,
    required: &'a [Edge],
    /// For each host vertex, indices into `required` of incident required edges.
    req_at: Vec<Vec<usize>>,
    req_endpoints: usize,
}

impl<'a> HostView<'a> {
    pub(crate) fn new(p: &PreparedPattern, g: &'a Graph, required: &'a [Edge]) -> Self {
        let n = g.n();
        let words = words_for(n);
        let adj: Vec<&[u64]> = (0..n).map(|v| g.neighbors(v).words()).collect();
        let deg_ok = p
            .degree
            .iter()
            .map(|&d| {
                let mut m = vec![0u64; words];
                for v in (0..n).filter(|&v| g.degree(v) >= d) {
                    m[v >> 6] |= 1u64 << (v & 63);
                }
                m
            })
            .collect();
        let mut req_at = vec![Vec::new(); if required.is_empty() { 0 } else { n }];
        let mut ends = std::collections::BTreeSet::new();
        for (i, &(a, b)) in required.iter().enumerate() {
            req_at[a].push(i);
            req_at[b].push(i);
            ends.insert(a);
            ends.insert(b);
        }
        HostView {
            adj,
            n,
            words,
            deg_ok,
            required,
            req_at,
            req_endpoints: ends.len(),
        }
    }
}

struct Worker<'p, 'h> {
    p: &'p PreparedPattern,
    h: &'h HostView<'h>,
    /// Host image per depth.
    img: Vec<usize>,
    /// Host image per pattern vertex.
    image: Vec<usize>,
    /// Pattern vertex placed on each host vertex (only tracked with required edges).
    inverse: Vec<usize>,
    used: Vec<u64>,
    bufs: Vec<Vec<u64>>,
    missing: usize,
}

const FREE: usize = usize::MAX;

impl<'p, 'h> Worker<'p, 'h> {
    fn new(p: &'p PreparedPattern, h: &'h HostView<'h>) -> Self {
        let f = p.order.len();
        Worker {
            p,
            h,
            img: vec![FREE; f],
            image: vec![FREE; f],
            inverse: if h.required.is_empty() {
                Vec::new()
            } else {
                vec![FREE; h.n]
            },
            used: vec![0; h.words],
            bufs: vec![vec![0; h.words]; f],
            missing: h.req_endpoints,
        }
    }

    fn candidates(&mut self, d: usize) -> bool {
        let p = self.p;
        let h = self.h;
        let buf = &mut self.bufs[d];
        buf.copy_from_slice(&h.deg_ok[d]);
        for &e in &p.back[d] {
            let a = h.adj[self.img[e]];
            for (x, y) in buf.iter_mut().zip(a) {
                *x &= y;
            }
        }
        for (x, y) in buf.iter_mut().zip(&self.used) {
            *x &= !y;
        }
        let lo = p.lower[d].iter().map(|&e| self.img[e]).max();
        let hi = p.upper[d].iter().map(|&e| self.img[e]).min();
        if let Some(lo) = lo {
            // keep only indices > lo
            let w = lo >> 6;
            for x in buf[..w].iter_mut() {
                *x = 0;
            }
            let bit = lo & 63;
            buf[w] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
        if let Some(hi) = hi {
            // keep only indices < hi
            let w = hi >> 6;
            buf[w] &= (1u64 << (hi & 63)) - 1;
            for x in buf[w + 1..].iter_mut() {
                *x = 0;
            }
        }
        buf.iter().any(|&x| x != 0)
    }

    // required-edge consistency of putting host vertex `v` at depth `d`
    fn admissible(&self, d: usize, v: usize) -> bool {
        let x = self.p.order[d];
        for &i in &self.h.req_at[v] {
            let (a, b) = self.h.required[i];
            let other = if a == v { b } else { a };
            let y = self.inverse[other];
            if y != FREE && self.p.masks[x] >> y & 1 == 0 {
                return false;
            }
        }
        true
    }

    fn place(&mut self, d: usize, v: usize) {
        let x = self.p.order[d];
        self.img[d] = v;
        self.image[x] = v;
        self.used[v >> 6] |= 1u64 << (v & 63);
        if !self.inverse.is_empty() {
            self.inverse[v] = x;
            if !self.h.req_at[v].is_empty() {
                self.missing -= 1;
            }
        }
    }

    fn unplace(&mut self, d: usize, v: usize) {
        let x = self.p.order[d];
        self.img[d] = FREE;
        self.image[x] = FREE;
        self.used[v >> 6] &= !(1u64 << (v & 63));
        if !self.inverse.is_empty() {
            self.inverse[v] = FREE;
            if !self.h.req_at[v].is_empty() {
                self.missing += 1;
            }
        }
    }

    fn run<S: Sink>(&mut self, d: usize, sink: &mut S) -> Result<()> {
        let f = self.p.order.len();
        if !self.candidates(d) {
            return Ok(());
        }
        let constrained = !self.inverse.is_empty();
        if d + 1 == f && S::BULK && (!constrained || self.missing == 0) {
            let c: u32 = self.bufs[d].iter().map(|w| w.count_ones()).sum();
            return sink.bulk(c);
        }
        let remaining_after = f - d - 1;
        for wi in 0..self.h.words {
            let word = self.bufs[d][wi];
            for b in BitIter(word) {
                let v = (wi << 6) | b;
                if constrained {
                    let hits = usize::from(!self.h.req_at[v].is_empty());
                    if self.missing - hits > remaining_after || !self.admissible(d, v) {
                        continue;
                    }
                }
                self.place(d, v);
                let res = if d + 1 == f {
                    sink.leaf(&self.image)
                } else {
                    self.run(d + 1, sink)
                };
                self.unplace(d, v);
                res?;
            }
        }
        Ok(())
    }

    fn run_root<S: Sink>(&mut self, v: usize, sink: &mut S) -> Result<()> {
        if !self.inverse.is_empty() {
            let hits = usize::from(!self.h.req_at[v].is_empty());
            if self.missing - hits > self.p.order.len() - 1 {
                return Ok(());
            }
        }
        self.place(0, v);
        let res = if self.p.order.len() == 1 {
            sink.leaf(&self.image)
        } else {
            self.run(1, sink)
        };
        self.unplace(0, v);
        res
    }
}

fn roots(p: &PreparedPattern, h: &HostView<'_>) -> Vec<usize> {
    let mut w = Worker::new(p, h);
    if !w.candidates(0) {
        return Vec::new();
    }
    w.bufs[0]
        .iter()
        .enumerate()
        .flat_map(|(i, &word)| BitIter(word).map(move |b| (i << 6) | b))
        .collect()
}

/// Runs the search, splitting on the root candidates when `parallel`.
pub(crate) fn search<S, M>(p: &PreparedPattern, g: &Graph, required: &[Edge], parallel: bool, make: M) -> Result<S>
where
    S: Sink,
    M: Fn() -> S + Sync,
{
    let f = p.order.len();
    if f > g.n() {
        return Ok(make());
    }
    if f == 0 {
        let mut s = make();
        s.leaf(&[])?;
        return Ok(s);
    }
    let h = HostView::new(p, g, required);
    let rs = roots(p, &h);
    if parallel && rs.len() > 1 {
        rs.par_iter()
            .map_init(
                || Worker::new(p, &h),
                |w, &v| {
                    let mut s = make();
                    w.run_root(v, &mut s)?;
                    Ok(s)
                },
            )
            .try_reduce(&make, |mut a, b| {
                a.merge(b)?;
                Ok(a)
            })
    } else {
        let mut w = Worker::new(p, &h);
        let mut s = make();
        for v in rs {
            w.run_root(v, &mut s)?;
        }
        Ok(s)
    }
}
