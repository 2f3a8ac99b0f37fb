//! Closed forms for `M_k + (P_4 ∪ M_{k-2})` in three-part hosts, the star host
//! `H*`, and the Petersen graph.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::constructions::{h_star_section3, part_sizes, pattern_section3};
use crate::counting::{edges_in, PreparedPattern};
use crate::error::{Error, Result};
use crate::report::ser_big;
use crate::scalar::{binomial, factorial, from_u64, mul, ratio, Exact};

fn sizes3(n: usize, k: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::invalid("the three-part formulas need k >= 2"));
    }
    if n < k + 2 {
        return Err(Error::invalid(format!("n = {n} too small for k = {k}")));
    }
    Ok(part_sizes(n - k + 1, 3))
}

/// `C(n_i - 2, k-1) C(n_j, k) C(n_l, k)` with `i` the edge part.
fn binomial_core<T: Exact>(sizes: &[usize], i: usize, k: usize) -> Result<T> {
    let k = k as i64;
    let mut acc: T = binomial(sizes[i] as i64 - 2, k - 1)?;
    for (j, &s) in sizes.iter().enumerate() {
        if j != i {
            acc = mul(&acc, &binomial(s as i64, k)?)?;
        }
    }
    Ok(acc)
}

fn k_factorials<T: Exact>(k: usize) -> Result<T> {
    let k = k as u64;
    mul(&factorial::<T>(k - 1)?, &factorial(k)?)
}

/// Copies of the pattern when the extra edge sits in part `i` (zero-based):
/// `(k-1)(5k-2)/2 (k-1)! k! C(n_i-2, k-1) C(n_j, k) C(n_l, k)`.
pub fn sec3_ci<T: Exact>(n: usize, k: usize, i: usize) -> Result<T> {
    let sizes = sizes3(n, k)?;
    if i >= 3 {
        return Err(Error::invalid(format!("no part {i}")));
    }
    let k64 = k as u64;
    let lead: T = from_u64((k64 - 1) * (5 * k64 - 2) / 2)?;
    mul(&mul(&lead, &k_factorials(k)?)?, &binomial_core(&sizes, i, k)?)
}

/// Main term of the star-host count:
/// `(q + C(k,2)) (k-1)(2k-1) (k-1)! k! C(n_1-2, k-1) C(n_2, k) C(n_3, k)`.
pub fn sec3_hstar_main<T: Exact>(n: usize, k: usize, q: usize) -> Result<T> {
    let sizes = sizes3(n, k)?;
    let k64 = k as u64;
    let lead: T = from_u64((q as u64 + k64 * (k64 - 1) / 2) * (k64 - 1) * (2 * k64 - 1))?;
    mul(&mul(&lead, &k_factorials(k)?)?, &binomial_core(&sizes, 0, k)?)
}

/// Least `q` with `(q + C(k,2))(2k-1) < q(5k-2)/2`.
pub fn sec3_threshold(k: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::invalid("threshold needs k >= 2"));
    }
    let k = k as u64;
    let pairs = k * (k - 1) / 2;
    // doubled to stay integral
    Ok((0..)
        .find(|&q| 2 * (q + pairs) * (2 * k - 1) < q * (5 * k - 2))
        .expect("left side grows slower"))
}

/// `C(x-1, k-1) C(x, k) < C(x-2, k-1) C(x+1, k)`: moving the spare vertex out
/// of the edge part lowers the count.
pub fn sec3_ordering_holds(x: usize, k: usize) -> Result<bool> {
    let (x, k) = (x as i64, k as i64);
    let lhs: BigUint = mul(&binomial(x - 1, k - 1)?, &binomial(x, k)?)?;
    let rhs: BigUint = mul(&binomial(x - 2, k - 1)?, &binomial(x + 1, k)?)?;
    Ok(lhs < rhs)
}

/// `sec3_hstar_main / (q * sec3_ci(part 0))`.
pub fn main_term_ratio(n: usize, k: usize, q: usize) -> Result<BigRational> {
    if q == 0 {
        return Err(Error::invalid("ratio needs q >= 1"));
    }
    let num: BigUint = sec3_hstar_main(n, k, q)?;
    let den: BigUint = sec3_ci::<BigUint>(n, k, 0)? * BigUint::from(q);
    if den == BigUint::from(0u32) {
        return Err(Error::invalid(format!("c(n,F) vanishes at n = {n}")));
    }
    Ok(ratio(&num, &den))
}

/// `96 C(ceil(n/2) - 3, 2) C(floor(n/2) - 1, 4)`.
pub fn petersen_c_formula<T: Exact>(n: usize) -> Result<T> {
    if n < 13 {
        return Err(Error::invalid("the Petersen formula is stated for n >= 13"));
    }
    let hi = n.div_ceil(2) as i64;
    let lo = (n / 2) as i64;
    mul(&mul(&from_u64(96)?, &binomial(hi - 3, 2)?)?, &binomial(lo - 1, 4)?)
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Exact count of the pattern in `H*` split by how many star edges a copy uses.
#[derive(Clone, Debug, Serialize)]
pub struct ExactDecomposition {
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
    /// Star-edge usage (`"0"`, `"1"`, `">=2"`) to copies.
    pub by_star_edges: BTreeMap<String, String>,
    #[serde(serialize_with = "ser_big")]
    pub remainder: BigUint,
    /// `total = main term + remainder` with the remainder the `>= 2` class
    /// and nothing in the `0` class.
    pub reconciles: bool,
    /// The one-star-edge class equals the main term.
    pub one_edge_class_is_main: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub threshold: u64,
    #[serde(serialize_with = "ser_big")]
    pub main_term: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub c_main: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub q_times_c: BigUint,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: BigRational,
    pub ratio_below_one: bool,
    pub exact: Option<ExactDecomposition>,
}

/// Compares the star host against `q` single-edge hosts. With `exact`, also
/// builds `H*` and counts the pattern in it.
pub fn verify_counterexample(n: usize, k: usize, q: usize, exact: bool) -> Result<CounterexampleReport> {
    let main_term: BigUint = sec3_hstar_main(n, k, q)?;
    let c_main: BigUint = sec3_ci(n, k, 0)?;
    let ratio = main_term_ratio(n, k, q)?;
    let one = BigRational::from_integer(1.into());
    let exact = if exact {
        Some(decompose(n, k, q, &main_term)?)
    } else {
        None
    };
    Ok(CounterexampleReport {
        n,
        k,
        q,
        threshold: sec3_threshold(k)?,
        q_times_c: &c_main * BigUint::from(q),
        main_term,
        c_main,
        ratio_below_one: ratio < one,
        ratio,
        exact,
    })
}

fn decompose(n: usize, k: usize, q: usize, main: &BigUint) -> Result<ExactDecomposition> {
    let host = h_star_section3(n, k, q)?;
    let f = pattern_section3(k)?.graph;
    let p = PreparedPattern::new(&f)?;
    let star: HashSet<_> = host.marked.iter().copied().collect();
    let edges = f.edge_list();
    let classes = p.classify(&host.graph, &[], |img| edges_in(&edges, img, &star).min(2))?;
    let total_count = p.copies(&host.graph)?;
    let get = |c: usize| classes.get(&c).copied().unwrap_or(0);
    let sum = get(0) + get(1) + get(2);
    if sum != total_count {
        return Err(Error::Consistency(format!(
            "classes sum to {sum}, count is {total_count}"
        )));
    }
    let total = BigUint::from(total_count);
    let remainder = BigUint::from(get(2));
    let by_star_edges = [("0", get(0)), ("1", get(1)), (">=2", get(2))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    Ok(ExactDecomposition {
        reconciles: get(0) == 0 && total == main + &remainder,
        one_edge_class_is_main: BigUint::from(get(1)) == *main,
        total,
        by_star_edges,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::to_big;
    use num_traits::ToPrimitive;

    #[test]
    fn threshold_closed_form() {
        for k in 2..8 {
            assert_eq!(sec3_threshold(k).unwrap(), ((k - 1) * (2 * k - 1) + 1) as u64);
        }
    }

    #[test]
    fn petersen_values() {
        assert_eq!(petersen_c_formula::<u128>(16).unwrap(), 33600);
        assert_eq!(petersen_c_formula::<u128>(18).unwrap(), 100800);
        assert_eq!(petersen_c_formula::<u128>(20).unwrap(), 254016);
        assert!(petersen_c_formula::<u128>(12).is_err());
    }

    #[test]
    fn eq1_small_values() {
        // parts (4,4,4): 4 * 1 * 2 * C(2,1) C(4,2) C(4,2)
        assert_eq!(sec3_ci::<u128>(13, 2, 0).unwrap(), 576);
        let big: BigUint = sec3_ci(13, 2, 2).unwrap();
        assert_eq!(to_big(&sec3_ci::<u128>(13, 2, 2).unwrap()), big);
    }

    #[test]
    fn ratio_at_large_n() {
        let r = main_term_ratio(1_000_000, 2, 4).unwrap();
        assert_eq!(r, BigRational::new(30.into(), 32.into()));
        let at = main_term_ratio(1_000_000, 3, 10).unwrap();
        assert!(at >= BigRational::from_integer(1.into()));
        let above = main_term_ratio(1_000_000, 3, 11).unwrap();
        assert!(above < BigRational::from_integer(1.into()));
        assert!(above.to_integer().to_u8() == Some(0));
    }
}
