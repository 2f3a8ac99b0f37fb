//! Exact matching number by branch and bound.
//!
//! Branching uses a minimum-degree vertex `v` of the remaining graph and
//! tries every partner of `v`. An "unmatched" branch is never needed: if a
//! maximum matching misses a non-isolated `v`, swapping in an edge at `v` keeps
//! it maximum.

use super::{mask_iter, Graph};
use crate::error::Result;

struct Search<'a> {
    adj: &'a [u64],
    best: usize,
}

impl Search<'_> {
    fn strip_isolated(&self, mut alive: u64) -> u64 {
        for v in mask_iter(alive) {
            if self.adj[v] & alive == 0 {
                alive &= !(1u64 << v);
            }
        }
        alive
    }

    fn run(&mut self, alive: u64, size: usize) {
        let alive = self.strip_isolated(alive);
        if size + (alive.count_ones() as usize) / 2 <= self.best {
            return;
        }
        if alive == 0 {
            self.best = size;
            return;
        }
        let v = mask_iter(alive)
            .min_by_key(|&v| (self.adj[v] & alive).count_ones())
            .expect("non-empty");
        for u in mask_iter(self.adj[v] & alive) {
            self.run(alive & !(1u64 << v) & !(1u64 << u), size + 1);
        }
    }
}

fn greedy(adj: &[u64], mut alive: u64) -> usize {
    let mut size = 0;
    while let Some(v) = mask_iter(alive)
        .filter(|&v| adj[v] & alive != 0)
        .min_by_key(|&v| (adj[v] & alive).count_ones())
    {
        let u = mask_iter(adj[v] & alive)
            .min_by_key(|&u| (adj[u] & alive).count_ones())
            .expect("has neighbour");
        alive &= !(1u64 << v) & !(1u64 << u);
        size += 1;
    }
    size
}

/// Maximum matching size ν(G).
pub fn matching_number(g: &Graph) -> Result<usize> {
    let adj = g.masks()?;
    let all = super::low_bits(g.n());
    let mut s = Search {
        adj: &adj,
        best: greedy(&adj, all),
    };
    s.run(all, 0);
    Ok(s.best)
}

#[cfg(test)]
pub(crate) fn matching_number_exhaustive(g: &Graph) -> usize {
    // every edge subset; a matching iff no vertex is covered twice
    let edges = g.edge_list();
    assert!(edges.len() <= 20, "oracle limited to small edge sets");
    let mut best = 0;
    for subset in 0u32..(1u32 << edges.len()) {
        let mut covered = 0u64;
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                let m = (1u64 << u) | (1u64 << v);
                if covered & m != 0 {
                    ok = false;
                    break;
                }
                covered |= m;
            }
        }
        if ok {
            best = best.max(subset.count_ones() as usize);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, kneser, Elementary};

    #[test]
    fn matching_numbers() {
        assert_eq!(matching_number(&elementary(Elementary::Path(4)).unwrap()).unwrap(), 2);
        assert_eq!(matching_number(&Graph::complete(5)).unwrap(), 2);
        assert_eq!(matching_number(&kneser(5, 2).unwrap()).unwrap(), 5);
        assert_eq!(
            matching_number(&elementary(Elementary::Matching(4)).unwrap()).unwrap(),
            4
        );
        assert_eq!(matching_number(&Graph::empty(6)).unwrap(), 0);
        assert_eq!(matching_number(&elementary(Elementary::Star(7)).unwrap()).unwrap(), 1);
    }

    #[test]
    fn agrees_with_exhaustive_on_petersen() {
        let p = kneser(5, 2).unwrap();
        assert_eq!(matching_number_exhaustive(&p), 5);
    }
}
