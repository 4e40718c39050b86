use num_bigint::BigUint;
use rayon::prelude::*;

use super::{check_shape, WeightedCompleteGraph};
use crate::error::{Error, Result};

/// Default cap on the number of weight assignments enumerated.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

/// Every triple, with weights sorted ascending `x <= y <= z`, has
/// `x = y = z = -1` or `x < y = z`.
pub fn is_proper(g: &WeightedCompleteGraph) -> bool {
    proper_weights(g.k(), g.weights())
}

fn proper_weights(k: usize, w: &[i8]) -> bool {
    let mut e = 0;
    // edge (a, b) sits at index row[a] + b - a - 1
    let mut row = [0usize; 8];
    for (a, r) in row.iter_mut().enumerate().take(k) {
        *r = e;
        e += k - a - 1;
    }
    let at = |a: usize, b: usize| w[row[a] + b - a - 1];
    for a in 0..k {
        for b in a + 1..k {
            let ab = at(a, b);
            for c in b + 1..k {
                let mut t = [ab, at(a, c), at(b, c)];
                t.sort_unstable();
                let ok = (t[2] == -1) || (t[0] < t[1] && t[1] == t[2]);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn decode(index: u64, base: u64, out: &mut [i8]) {
    let mut idx = index;
    for w in out.iter_mut() {
        *w = (idx % base) as i8 - 1;
        idx /= base;
    }
}

fn assignment_count(d_max: i8, k: usize, budget: u128) -> Result<(u64, u64)> {
    check_shape(k, d_max)?;
    let edges = (k * (k - 1) / 2) as u32;
    let base = (d_max as i64 + 2) as u64;
    let total = (base as u128).pow(edges);
    if total > budget {
        return Err(Error::EnumerationBudget { needed: total, budget });
    }
    Ok((base, total as u64))
}

/// Number of proper complete `(D, k)`-graphs, by exhaustive enumeration.
pub fn count_proper(d_max: i8, k: usize) -> Result<BigUint> {
    count_proper_with_budget(d_max, k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn count_proper_with_budget(d_max: i8, k: usize, budget: u128) -> Result<BigUint> {
    let (base, total) = assignment_count(d_max, k, budget)?;
    let edges = k * (k - 1) / 2;
    const CHUNK: u64 = 1 << 14;
    let count: u64 = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut buf = vec![0i8; edges];
            let end = ((chunk + 1) * CHUNK).min(total);
            (chunk * CHUNK..end)
                .filter(|&idx| {
                    decode(idx, base, &mut buf);
                    proper_weights(k, &buf)
                })
                .count() as u64
        })
        .sum();
    Ok(BigUint::from(count))
}

/// All proper complete `(D, k)`-graphs, in enumeration order.
pub fn proper_graphs(d_max: i8, k: usize) -> Result<Vec<WeightedCompleteGraph>> {
    let (base, total) = assignment_count(d_max, k, DEFAULT_ENUMERATION_BUDGET)?;
    let edges = k * (k - 1) / 2;
    let mut buf = vec![0i8; edges];
    let mut out = Vec::new();
    for idx in 0..total {
        decode(idx, base, &mut buf);
        if proper_weights(k, &buf) {
            out.push(WeightedCompleteGraph::from_weights(k, d_max, &buf)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::curve_count;

    fn g3(w: [i8; 3], d: i8) -> WeightedCompleteGraph {
        WeightedCompleteGraph::from_weights(3, d, &w).unwrap()
    }

    #[test]
    fn triangle_examples() {
        assert!(is_proper(&g3([-1, -1, -1], 0)));
        assert!(is_proper(&g3([-1, 0, 0], 0)));
        assert!(is_proper(&g3([0, -1, 0], 0)));
        assert!(!is_proper(&g3([0, 0, 0], 0)));
        assert!(!is_proper(&g3([-1, -1, 0], 0)));
        assert!(!is_proper(&g3([-1, 0, 1], 1)));
        assert!(is_proper(&g3([1, 0, 1], 1)));
    }

    #[test]
    fn counts() {
        for k in 1..=6 {
            assert_eq!(count_proper(-1, k).unwrap(), BigUint::from(1u32));
        }
        assert_eq!(count_proper(0, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(count_proper(1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(count_proper(0, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(proper_graphs(0, 3).unwrap().len(), 4);
    }

    #[test]
    fn matches_curve_counts() {
        for r in 1..=3u32 {
            for k in 2..=4usize {
                let want = curve_count(r, k as u32).unwrap();
                assert_eq!(count_proper(r as i8 - 1, k).unwrap(), want, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn listing_agrees_with_count() {
        for d in -1..=1i8 {
            for k in 2..=4 {
                let listed = proper_graphs(d, k).unwrap();
                assert_eq!(BigUint::from(listed.len()), count_proper(d, k).unwrap());
                assert!(listed.iter().all(is_proper));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            count_proper_with_budget(2, 5, 1000),
            Err(Error::EnumerationBudget { needed: 1_048_576, budget: 1000 })
        ));
    }
}
