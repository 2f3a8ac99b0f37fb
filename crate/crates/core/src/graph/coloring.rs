//! Exact colouring: chromatic number, k-colourability with a certificate,
//! and enumeration of labelled proper colourings.

use super::{low_bits, mask_iter, Graph};
use crate::error::Result;

/// Proper colouring as one colour index per vertex.
pub type Coloring = Vec<usize>;

struct Dsatur<'a> {
    adj: &'a [u64],
    n: usize,
    k: usize,
    color: Vec<usize>,
    // per vertex, bitmask of colours already on a neighbour
    sat: Vec<u64>,
}

const NONE: usize = usize::MAX;

impl Dsatur<'_> {
    fn pick(&self, uncolored: u64) -> usize {
        let mut best = NONE;
        let mut key = (0u32, 0u32);
        for v in mask_iter(uncolored) {
            let k = (self.sat[v].count_ones(), (self.adj[v] & uncolored).count_ones());
            if best == NONE || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    fn solve(&mut self, uncolored: u64, used: usize) -> bool {
        if uncolored == 0 {
            return true;
        }
        let v = self.pick(uncolored);
        if self.sat[v].count_ones() as usize >= self.k {
            return false;
        }
        let rest = uncolored & !(1u64 << v);
        // colours beyond `used` are interchangeable, so only the first new one is tried
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.sat[v] & (1u64 << c) != 0 {
                continue;
            }
            self.color[v] = c;
            let mut touched = Vec::new();
            for u in mask_iter(self.adj[v] & rest) {
                if self.sat[u] & (1u64 << c) == 0 {
                    self.sat[u] |= 1u64 << c;
                    touched.push(u);
                }
            }
            if self.solve(rest, used.max(c + 1)) {
                return true;
            }
            for u in touched {
                self.sat[u] &= !(1u64 << c);
            }
        }
        self.color[v] = NONE;
        false
    }
}

/// Decides whether `g` has a proper `k`-colouring and returns one if so.
pub fn k_colorable(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    let adj = g.masks()?;
    let n = g.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    if k >= n {
        return Ok(Some((0..n).collect()));
    }
    let mut s = Dsatur {
        adj: &adj,
        n,
        k,
        color: vec![NONE; n],
        sat: vec![0; n],
    };
    if s.solve(low_bits(s.n), 0) {
        Ok(Some(s.color))
    } else {
        Ok(None)
    }
}

fn greedy_clique(adj: &[u64], n: usize) -> usize {
    let mut best = 0;
    for start in 0..n {
        let mut clique = 1;
        let mut cand = adj[start];
        while cand != 0 {
            let v = mask_iter(cand)
                .max_by_key(|&v| (adj[v] & cand).count_ones())
                .expect("non-empty");
            clique += 1;
            cand &= adj[v];
        }
        best = best.max(clique);
    }
    best
}

fn greedy_colors(adj: &[u64], n: usize) -> usize {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let mut color = vec![NONE; n];
    let mut used = 0;
    for &v in &order {
        let mut taken = 0u64;
        for u in mask_iter(adj[v]) {
            if color[u] != NONE {
                taken |= 1u64 << color[u];
            }
        }
        let c = (!taken).trailing_zeros() as usize;
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Exact chromatic number; zero for the empty graph.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let adj = g.masks()?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let lo = greedy_clique(&adj, n);
    let hi = greedy_colors(&adj, n);
    for k in lo..hi {
        if k_colorable(g, k)?.is_some() {
            return Ok(k);
        }
    }
    Ok(hi)
}

/// Iterator over the proper colourings of a graph with colours `0..r`
/// that agree with a fixed partial assignment. Colour classes are labelled,
/// so permuting colours gives distinct colourings.
pub struct ProperColorings {
    adj: Vec<u64>,
    order: Vec<usize>,
    allowed: Vec<u64>,
    color: Vec<usize>,
    started: bool,
    done: bool,
}

impl ProperColorings {
    // gives order[pos] its least admissible colour >= from
    fn try_advance(&mut self, pos: usize, from: usize) -> bool {
        let v = self.order[pos];
        self.color[v] = NONE;
        let mut busy = 0u64;
        for u in mask_iter(self.adj[v]) {
            if self.color[u] != NONE {
                busy |= 1u64 << self.color[u];
            }
        }
        let free = self.allowed[v] & !busy & !low_bits(from);
        if free == 0 {
            false
        } else {
            self.color[v] = free.trailing_zeros() as usize;
            true
        }
    }
}

impl Iterator for ProperColorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let n = self.order.len();
        let (mut pos, mut from) = if self.started {
            (n - 1, self.color[self.order[n - 1]] + 1)
        } else {
            self.started = true;
            if n == 0 {
                self.done = true;
                return Some(Vec::new());
            }
            (0, 0)
        };
        loop {
            if self.try_advance(pos, from) {
                pos += 1;
                from = 0;
                if pos == n {
                    return Some(self.color.clone());
                }
            } else {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
                from = self.color[self.order[pos]] + 1;
            }
        }
    }
}

/// Enumerates every proper `r`-colouring of `g` extending `fixed`
/// (`fixed[v] = Some(c)` pins vertex `v` to colour `c`).
pub fn enumerate_proper_colorings(g: &Graph, r: usize, fixed: &[Option<usize>]) -> Result<ProperColorings> {
    let adj = g.masks()?;
    let n = g.n();
    if r > 64 {
        return Err(crate::Error::invalid("at most 64 colours are supported"));
    }
    if fixed.len() > n {
        return Err(crate::Error::invalid("fixed assignment longer than vertex count"));
    }
    let mut allowed = vec![low_bits(r); n];
    for (v, c) in fixed.iter().enumerate() {
        if let Some(c) = *c {
            if c >= r {
                return Err(crate::Error::invalid(format!("fixed colour {c} not below {r}")));
            }
            allowed[v] = 1u64 << c;
        }
    }
    for (v, c) in fixed.iter().enumerate() {
        if let Some(c) = *c {
            for u in mask_iter(adj[v]) {
                if fixed.get(u).copied().flatten() == Some(c) {
                    return Err(crate::Error::precondition("fixed assignment is not proper"));
                }
            }
        }
    }
    // pinned first, then each next vertex with the most already-ordered neighbours
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    for v in 0..n {
        if fixed.get(v).copied().flatten().is_some() {
            order.push(v);
            placed |= 1u64 << v;
        }
    }
    while order.len() < n {
        let v = mask_iter(low_bits(n) & !placed)
            .max_by_key(|&v| {
                (
                    (adj[v] & placed).count_ones(),
                    adj[v].count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("vertex left");
        order.push(v);
        placed |= 1u64 << v;
    }
    Ok(ProperColorings {
        adj,
        order,
        allowed,
        color: vec![NONE; n],
        started: false,
        done: r == 0 && n > 0,
    })
}

/// Number of labelled proper `r`-colourings.
pub fn count_proper_colorings(g: &Graph, r: usize) -> Result<u128> {
    Ok(enumerate_proper_colorings(g, r, &[])?.count() as u128)
}

pub fn is_proper(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.n() && g.edge_list().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, kneser, turan, Elementary};

    fn cycle(n: usize) -> Graph {
        elementary(Elementary::Cycle(n)).unwrap()
    }

    #[test]
    fn chromatic_numbers_of_small_families() {
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&kneser(5, 2).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&turan(9, 3).unwrap().graph).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete(7)).unwrap(), 7);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&kneser(7, 2).unwrap()).unwrap(), 5);
    }

    #[test]
    fn colorability_certificates() {
        let p = kneser(5, 2).unwrap();
        assert!(k_colorable(&p, 2).unwrap().is_none());
        let c = k_colorable(&p, 3).unwrap().unwrap();
        assert!(is_proper(&p, &c) && c.iter().all(|&x| x < 3));
        assert!(k_colorable(&Graph::empty(5), 1).unwrap().is_some());
        assert!(k_colorable(&Graph::complete(2), 0).unwrap().is_none());
    }

    #[test]
    fn coloring_enumeration_counts() {
        assert_eq!(count_proper_colorings(&Graph::complete(3), 3).unwrap(), 6);
        assert_eq!(count_proper_colorings(&Graph::empty(2), 2).unwrap(), 4);
        let p3 = elementary(Elementary::Path(3)).unwrap();
        let fixed = [None, Some(1), None];
        let all: Vec<_> = enumerate_proper_colorings(&p3, 2, &fixed).unwrap().collect();
        assert_eq!(all, vec![vec![0, 1, 0]]);
        assert_eq!(count_proper_colorings(&Graph::complete(3), 2).unwrap(), 0);
        assert_eq!(count_proper_colorings(&Graph::empty(0), 2).unwrap(), 1);
        assert_eq!(count_proper_colorings(&Graph::empty(2), 0).unwrap(), 0);
    }

    #[test]
    fn enumeration_yields_distinct_proper_colorings() {
        let g = cycle(6);
        let all: Vec<_> = enumerate_proper_colorings(&g, 3, &[]).unwrap().collect();
        // chromatic polynomial of C_n at r: (r-1)^n + (-1)^n (r-1)
        assert_eq!(all.len(), 64 + 2);
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|c| is_proper(&g, c)));
    }

    #[test]
    fn improper_fixed_assignment_rejected() {
        let k2 = Graph::complete(2);
        assert!(enumerate_proper_colorings(&k2, 2, &[Some(0), Some(0)]).is_err());
    }
}
