//! Exact evaluators for the counting quantities built from critical colourings,
//! with the closed forms for the three-part construction and the Petersen graph.
//!
//! All arithmetic is generic over [`Exact`]; pick `u128` for speed or
//! [`BigCount`](crate::BigCount) when values may be large.

mod profile;
mod section3;
mod spread;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

pub use profile::{CriticalProfile, ProfileKind};
pub use section3::{
    main_term_ratio, petersen_c_formula, sec3_ci, sec3_hstar_main, sec3_ordering_holds, sec3_threshold,
    verify_counterexample, CounterexampleReport, ExactDecomposition,
};
pub use spread::{t_exact, t_exhaustive, TExactReport, SPREAD_Q_LIMIT};

use crate::caps::Caps;
use crate::constructions::part_sizes;
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, Graph};
use crate::report::{ser_big, ser_opt_big};
use crate::scalar::{to_big, Exact};

/// A formula value next to an optional brute-force value.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub quantity: String,
    pub params: BTreeMap<String, i64>,
    #[serde(serialize_with = "ser_big")]
    pub formula_value: BigUint,
    #[serde(serialize_with = "ser_opt_big")]
    pub oracle_value: Option<BigUint>,
    pub agreement: Option<bool>,
}

impl FormulaReport {
    pub fn new<T: Exact>(quantity: &str, params: &[(&str, i64)], formula: &T) -> Self {
        FormulaReport {
            quantity: quantity.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            formula_value: to_big(formula),
            oracle_value: None,
            agreement: None,
        }
    }

    pub fn with_oracle(mut self, oracle: u128) -> Self {
        let o = BigUint::from(oracle);
        self.agreement = Some(o == self.formula_value);
        self.oracle_value = Some(o);
        self
    }
}

fn r_of(f: &Graph) -> Result<usize> {
    let chi = chromatic_number(f)?;
    if chi < 2 {
        return Err(Error::precondition("pattern needs chromatic number at least 2"));
    }
    Ok(chi - 1)
}

/// Minimum of `eval(p)` over the parts `p` admitted by `usable`.
fn min_over_parts<T: Exact>(
    sizes: &[usize],
    usable: impl Fn(usize) -> bool,
    eval: impl Fn(usize) -> Result<T>,
) -> Result<T> {
    let mut best: Option<T> = None;
    for p in (0..sizes.len()).filter(|&p| usable(sizes[p])) {
        let v = eval(p)?;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.ok_or_else(|| Error::invalid("no part is large enough for the added edges"))
}

/// `c(n_1, ..., n_r; F)`: copies of `F` in `K_{k-1}` joined to the complete
/// multipartite graph with the given part sizes, plus one edge inside part
/// `edge_part`.
pub fn c_parts<T: Exact>(f: &Graph, k: usize, sizes: &[usize], edge_part: usize, caps: &Caps) -> Result<T> {
    CriticalProfile::build(f, k, ProfileKind::AddedEdge, caps)?.evaluate(sizes, edge_part)
}

/// `c(n, F)`: the least of [`c_parts`] over the part receiving the edge, on the
/// balanced partition of `n - k + 1` vertices.
pub fn c_min<T: Exact>(f: &Graph, k: usize, n: usize, caps: &Caps) -> Result<T> {
    let profile = CriticalProfile::build(f, k, ProfileKind::AddedEdge, caps)?;
    profile.minimum(n)
}

/// `d(n, F)`: least copies of `F` in `T_r(n)` plus a `k`-matching inside one part.
pub fn d_eval<T: Exact>(f: &Graph, k: usize, n: usize, caps: &Caps) -> Result<T> {
    CriticalProfile::build(f, k, ProfileKind::Matching, caps)?.minimum(n)
}

/// `f(n, F)`: least copies of `F` in `I_{k-1} + T_r(n-k+1)` plus an edge `e`
/// inside one part, with all edges between `V(e)` and the top removed.
pub fn f_eval<T: Exact>(f: &Graph, k: usize, n: usize, caps: &Caps) -> Result<T> {
    CriticalProfile::build(f, k, ProfileKind::DetachedEdge, caps)?.minimum(n)
}

impl CriticalProfile {
    /// Host part sizes for order `n`.
    pub fn part_sizes(&self, n: usize) -> Result<Vec<usize>> {
        let top = self.kind.top_size(self.k);
        if n < top + self.r {
            return Err(Error::invalid(format!(
                "n = {n} too small for r = {} and k = {}",
                self.r, self.k
            )));
        }
        Ok(part_sizes(n - top, self.r))
    }

    /// Least value over the part carrying the added edges.
    pub fn minimum<T: Exact>(&self, n: usize) -> Result<T> {
        let sizes = self.part_sizes(n)?;
        let need = self.reserved() as usize;
        min_over_parts(&sizes, |s| s >= need, |p| self.evaluate(&sizes, p))
    }
}

#[cfg(test)]
mod tests;
