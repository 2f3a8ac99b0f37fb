//! Automorphisms of pattern graphs (at most 64 vertices).
//!
//! Group sizes come from a stabiliser chain: the orbit of each vertex under the
//! pointwise stabiliser of the earlier ones is found by existence searches, and
//! |Aut| is the product of the orbit sizes. Nothing here enumerates the whole
//! group unless asked to.

use crate::error::{Error, Result};
use crate::graph::{mask_iter, Graph};

pub(crate) struct AutSearch {
    adj: Vec<u64>,
    n: usize,
    // cheap invariant: degree plus sorted neighbour degrees
    color: Vec<Vec<u32>>,
    order: Vec<usize>,
}

impl AutSearch {
    pub(crate) fn new(g: &Graph) -> Result<Self> {
        let adj = g.masks()?;
        let n = g.n();
        let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
        let color = (0..n)
            .map(|v| {
                let mut c: Vec<u32> = mask_iter(adj[v]).map(|u| deg[u]).collect();
                c.sort_unstable();
                c.insert(0, deg[v]);
                c
            })
            .collect();
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| ((adj[v] & placed).count_ones(), deg[v], std::cmp::Reverse(v)))
                .expect("vertex left");
            order.push(v);
            placed |= 1u64 << v;
        }
        Ok(AutSearch { adj, n, color, order })
    }

    fn compatible(&self, map: &[usize], v: usize, w: usize) -> bool {
        if self.color[v] != self.color[w] {
            return false;
        }
        for (u, &m) in map.iter().enumerate().take(self.n) {
            if m != usize::MAX && (self.adj[v] >> u & 1) != (self.adj[w] >> m & 1) {
                return false;
            }
        }
        true
    }

    // Extends the partial map; `visit` returns false to stop the search.
    fn extend(&self, map: &mut [usize], used: &mut u64, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.n {
            return visit(map);
        }
        let v = self.order[pos];
        if map[v] != usize::MAX {
            return self.extend(map, used, pos + 1, visit);
        }
        for w in 0..self.n {
            if *used >> w & 1 == 1 || !self.compatible(map, v, w) {
                continue;
            }
            map[v] = w;
            *used |= 1u64 << w;
            let go_on = self.extend(map, used, pos + 1, visit);
            map[v] = usize::MAX;
            *used &= !(1u64 << w);
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Is there an automorphism fixing `fixed` pointwise and sending `v` to `w`?
    pub(crate) fn exists(&self, fixed: &[usize], v: usize, w: usize) -> bool {
        if v == w {
            return true;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = 0u64;
        for &x in fixed {
            map[x] = x;
            used |= 1u64 << x;
        }
        if used >> w & 1 == 1 || map[v] != usize::MAX || !self.compatible(&map, v, w) {
            return false;
        }
        map[v] = w;
        used |= 1u64 << w;
        let mut found = false;
        self.extend(&mut map, &mut used, 0, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Orbit partition of the pointwise stabiliser of `fixed`, as an orbit id per vertex.
    pub(crate) fn orbits(&self, fixed: &[usize]) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if id[v] != usize::MAX {
                continue;
            }
            id[v] = next;
            if !fixed.contains(&v) {
                for (w, slot) in id.iter_mut().enumerate().skip(v + 1) {
                    if *slot == usize::MAX && !fixed.contains(&w) && self.exists(fixed, v, w) {
                        *slot = next;
                    }
                }
            }
            next += 1;
        }
        id
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn enumerate(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; self.n];
        let mut used = 0u64;
        let mut over = false;
        self.extend(&mut map, &mut used, 0, &mut |m| {
            if out.len() == cap {
                over = true;
                return false;
            }
            out.push(m.to_vec());
            true
        });
        if over {
            return Err(Error::CapExceeded {
                what: "automorphism enumeration",
                needed: format!("more than {cap}"),
                cap: cap as u64,
            });
        }
        Ok(out)
    }
}

/// Exact |Aut(F)|.
pub fn automorphism_count(f: &Graph) -> Result<u128> {
    let s = AutSearch::new(f)?;
    let mut fixed = Vec::new();
    let mut total: u128 = 1;
    for v in s.order.clone() {
        let orbit = (0..s.n())
            .filter(|&w| !fixed.contains(&w) && s.exists(&fixed, v, w))
            .count() as u128;
        total = total.checked_mul(orbit).ok_or(Error::Overflow("automorphism count"))?;
        fixed.push(v);
    }
    Ok(total)
}

/// Every automorphism as a vertex map, failing once more than `cap` exist.
pub fn automorphisms(f: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    AutSearch::new(f)?.enumerate(cap)
}

/// Ordering conditions `(a, b)`, meaning `f(a) < f(b)`, under which every copy
/// of `F` has exactly one embedding.
///
/// Repeatedly pick the vertex with the largest orbit under the current
/// stabiliser, require it to carry the smallest image in its orbit, then fix it.
pub fn symmetry_conditions(f: &Graph) -> Result<Vec<(usize, usize)>> {
    let s = AutSearch::new(f)?;
    let mut fixed: Vec<usize> = Vec::new();
    let mut conds = Vec::new();
    loop {
        let ids = s.orbits(&fixed);
        let mut size = vec![0usize; s.n()];
        for &i in &ids {
            size[i] += 1;
        }
        let Some(v) = (0..s.n())
            .filter(|&v| size[ids[v]] > 1)
            .max_by_key(|&v| (size[ids[v]], std::cmp::Reverse(v)))
        else {
            break;
        };
        for w in (0..s.n()).filter(|&w| w != v && ids[w] == ids[v]) {
            conds.push((v, w));
        }
        fixed.push(v);
    }
    Ok(conds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{elementary, kneser, pattern_section3, Elementary};

    fn brute_aut(g: &Graph) -> u128 {
        // all n! permutations via Heap's algorithm
        let n = g.n();
        let edges = g.edge_list();
        let mut p: Vec<usize> = (0..n).collect();
        let mut c = vec![0; n];
        let test = |p: &[usize]| edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v]));
        let mut count = test(&p) as u128;
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    p.swap(0, i);
                } else {
                    p.swap(c[i], i);
                }
                count += test(&p) as u128;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        count
    }

    #[test]
    fn known_group_orders() {
        assert_eq!(automorphism_count(&Graph::complete(4)).unwrap(), 24);
        assert_eq!(
            automorphism_count(&elementary(Elementary::Path(4)).unwrap()).unwrap(),
            2
        );
        assert_eq!(automorphism_count(&kneser(5, 2).unwrap()).unwrap(), 120);
        assert_eq!(automorphism_count(&kneser(6, 2).unwrap()).unwrap(), 720);
        assert_eq!(
            automorphism_count(&elementary(Elementary::Matching(3)).unwrap()).unwrap(),
            48
        );
        assert_eq!(automorphism_count(&Graph::empty(20)).unwrap(), 2432902008176640000);
        assert_eq!(automorphism_count(&pattern_section3(2).unwrap().graph).unwrap(), 16);
    }

    #[test]
    fn stabiliser_chain_matches_permutation_oracle() {
        let graphs = [
            elementary(Elementary::Cycle(6)).unwrap(),
            elementary(Elementary::Star(5)).unwrap(),
            Graph::complete(3).scalar_union(2),
            pattern_section3(2).unwrap().graph,
            Graph::build(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (5, 6)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(automorphism_count(g).unwrap(), brute_aut(g), "{g:?}");
            assert_eq!(automorphisms(g, 100_000).unwrap().len() as u128, brute_aut(g));
        }
    }

    #[test]
    fn enumeration_cap_is_loud() {
        assert!(automorphisms(&Graph::empty(9), 1000).unwrap_err().is_resource_cap());
    }
}
