//! Trajectories `m, f(m), f^2(m), ...`: tail and cycle lengths, cycle lengths
//! of the cubic permutations, and the critical orbit of `aX^2 + c`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CubicMap, FieldContext, FieldElement, PolyMap, QuadMap};
use crate::nt::multiplicative_order;

/// Tail length `t` and cycle length `c` of a trajectory: `f^{t+c}(m) = f^t(m)`
/// with both minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitShape {
    pub tail: u64,
    pub cycle: u64,
}

/// First repetition `f^i(0) = f^j(0)` with `i < j`, `j` minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CollisionPair {
    pub i: u64,
    pub j: u64,
}

/// Exact `(tail, cycle)` of the trajectory of `m` by Brent's method.
pub fn orbit_shape<M: PolyMap + ?Sized>(f: &M, m: FieldElement) -> Result<OrbitShape> {
    let x0 = f.context().bind(m)?;
    Ok(orbit_shape_raw(f, x0))
}

pub(crate) fn orbit_shape_raw<M: PolyMap + ?Sized>(f: &M, x0: u64) -> OrbitShape {
    // cycle length: the hare runs ahead in windows of doubling size
    let mut power = 1u64;
    let mut cycle = 1u64;
    let mut tortoise = x0;
    let mut hare = f.apply(x0);
    while tortoise != hare {
        if power == cycle {
            tortoise = hare;
            power *= 2;
            cycle = 0;
        }
        hare = f.apply(hare);
        cycle += 1;
    }
    // tail: two walkers `cycle` apart meet at the cycle entry
    let mut tortoise = x0;
    let mut hare = f.iterate_raw(x0, cycle);
    let mut tail = 0;
    while tortoise != hare {
        tortoise = f.apply(tortoise);
        hare = f.apply(hare);
        tail += 1;
    }
    OrbitShape { tail, cycle }
}

/// Predicted cycle length of `m` under `X^2`: with `r = ord_p(m)` odd, the
/// trajectory `m^{2^j}` is purely periodic with period `ord_r(2)`.
pub fn squaring_cycle_length_prediction(ctx: &FieldContext, m: FieldElement) -> Result<u64> {
    let m = ctx.bind(m)?;
    if m == 0 {
        return Err(Error::ZeroElement);
    }
    let p = ctx.p();
    let r = multiplicative_order(m, p).expect("nonzero element of a prime field");
    if r.is_multiple_of(2) {
        return Err(Error::EvenOrder { m, p, order: r });
    }
    Ok(multiplicative_order(2, r).expect("2 is a unit mod odd r"))
}

/// Least `l >= 1` with `g^l(0) = 0`. The orbit of 0 is purely periodic since
/// `g` is a bijection.
pub fn permutation_cycle_length(g: &CubicMap) -> u64 {
    let mut x = g.apply(0);
    let mut l = 1;
    while x != 0 {
        x = g.apply(x);
        l += 1;
    }
    l
}

/// Whether `f^0(0), ..., f^r(0)` are pairwise distinct; otherwise the first
/// collision (least `j`, then least `i`).
pub fn critical_orbit_distinct(f: &QuadMap, r: u64) -> (bool, Option<CollisionPair>) {
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut x = 0;
    for j in 0..=r {
        if let Some(&i) = seen.get(&x) {
            return (false, Some(CollisionPair { i, j }));
        }
        seen.insert(x, j);
        x = f.apply(x);
    }
    (true, None)
}

/// Minimal `(i, j)` with `f^i(0) = f^j(0)`; always `j <= p`.
pub fn first_recurrence(f: &QuadMap) -> CollisionPair {
    let shape = orbit_shape_raw(f, 0);
    CollisionPair {
        i: shape.tail,
        j: shape.tail + shape.cycle,
    }
}

/// Largest prime accepted by [`functional_graph_summary`].
pub const FUNCTIONAL_GRAPH_MAX_P: u64 = 1_000_000;

/// Whole-graph statistics of `Gamma_f`, for inspection on small fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalGraphSummary {
    pub p: u64,
    /// Number of connected components, one cycle each.
    pub components: u64,
    /// Number of vertices lying on a cycle (sum of all cycle lengths).
    pub cyclic_points: u64,
    /// Longest pre-cyclic path.
    pub max_tail: u64,
    pub max_cycle: u64,
}

pub fn functional_graph_summary<M: PolyMap + ?Sized>(f: &M) -> Result<FunctionalGraphSummary> {
    let p = f.context().p();
    if p > FUNCTIONAL_GRAPH_MAX_P {
        return Err(Error::MemoryBudget {
            needed: p * 16,
            budget: FUNCTIONAL_GRAPH_MAX_P * 16,
        });
    }
    let n = p as usize;
    // tail[v]: distance to the cycle; cyc[v]: cycle length of v's component
    const UNSEEN: u64 = u64::MAX;
    const ACTIVE: u64 = u64::MAX - 1;
    let mut tail = vec![UNSEEN; n];
    let mut cyc = vec![0u64; n];
    let mut summary = FunctionalGraphSummary {
        p,
        components: 0,
        cyclic_points: 0,
        max_tail: 0,
        max_cycle: 0,
    };
    let mut path = Vec::new();
    for start in 0..n {
        if tail[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = start;
        while tail[v] == UNSEEN {
            tail[v] = ACTIVE;
            path.push(v);
            v = f.apply(v as u64) as usize;
        }
        let mut rest = path.len();
        if tail[v] == ACTIVE {
            // closed a new cycle starting at v
            let pos = path.iter().position(|&u| u == v).unwrap();
            let len = (path.len() - pos) as u64;
            for &u in &path[pos..] {
                tail[u] = 0;
                cyc[u] = len;
            }
            summary.components += 1;
            summary.cyclic_points += len;
            summary.max_cycle = summary.max_cycle.max(len);
            rest = pos;
        }
        for &u in path[..rest].iter().rev() {
            let next = f.apply(u as u64) as usize;
            tail[u] = tail[next] + 1;
            cyc[u] = cyc[next];
            summary.max_tail = summary.max_tail.max(tail[u]);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime;
    use proptest::prelude::*;

    fn field(p: u64) -> FieldContext {
        FieldContext::new(p).unwrap()
    }

    /// Stores every visited value; the first revisit gives (t, c).
    fn naive_shape<M: PolyMap>(f: &M, x0: u64) -> OrbitShape {
        let mut seen = HashMap::new();
        let mut x = x0;
        let mut j = 0u64;
        loop {
            if let Some(&i) = seen.get(&x) {
                return OrbitShape {
                    tail: i,
                    cycle: j - i,
                };
            }
            seen.insert(x, j);
            x = f.apply(x);
            j += 1;
        }
    }

    #[test]
    fn shape_examples() {
        let k7 = field(7);
        let f = QuadMap::new(k7, 1, 5).unwrap(); // X^2 - 2
        assert_eq!(
            orbit_shape(&f, k7.element(2)).unwrap(),
            OrbitShape { tail: 0, cycle: 1 }
        );
        let k11 = field(11);
        let sq = QuadMap::monic(k11, 0);
        assert_eq!(
            orbit_shape(&sq, k11.element(3)).unwrap(),
            OrbitShape { tail: 0, cycle: 4 }
        );
        let k5 = field(5);
        let g = QuadMap::monic(k5, 1);
        assert_eq!(
            orbit_shape(&g, k5.element(0)).unwrap(),
            OrbitShape { tail: 0, cycle: 3 }
        );
    }

    #[test]
    fn brent_matches_naive_exhaustively() {
        for p in [3u64, 5, 7, 11, 13, 101, 1009] {
            let k = field(p);
            for c in 0..p.min(12) {
                let f = QuadMap::new(k, 1 + c % (p - 1), c).unwrap();
                for m in 0..p {
                    let shape = orbit_shape_raw(&f, m);
                    assert_eq!(shape, naive_shape(&f, m));
                    assert!(shape.tail + shape.cycle <= p + 1);
                }
            }
        }
    }

    #[test]
    fn brent_matches_naive_for_every_map_at_p_10007() {
        let k = field(10007);
        for c in [0u64, 1, 2, 3, 10005, 4242] {
            let f = QuadMap::monic(k, c);
            for m in 0..10007 {
                assert_eq!(orbit_shape_raw(&f, m), naive_shape(&f, m));
            }
        }
    }

    #[test]
    fn squaring_prediction_examples() {
        let k11 = field(11);
        assert_eq!(squaring_cycle_length_prediction(&k11, k11.element(3)), Ok(4));
        let k7 = field(7);
        assert_eq!(squaring_cycle_length_prediction(&k7, k7.element(2)), Ok(2));
        let k5 = field(5);
        assert_eq!(squaring_cycle_length_prediction(&k5, k5.element(1)), Ok(1));
        assert_eq!(
            squaring_cycle_length_prediction(&k5, k5.element(0)),
            Err(Error::ZeroElement)
        );
        assert_eq!(
            squaring_cycle_length_prediction(&k5, k5.element(2)),
            Err(Error::EvenOrder { m: 2, p: 5, order: 4 })
        );
    }

    #[test]
    fn squaring_prediction_matches_orbits() {
        for p in (3..2000u64).filter(|&p| is_prime(p)) {
            let k = field(p);
            let sq = QuadMap::monic(k, 0);
            for m in 1..p {
                if let Ok(l) = squaring_cycle_length_prediction(&k, k.element(m)) {
                    let shape = orbit_shape_raw(&sq, m);
                    assert_eq!(shape, OrbitShape { tail: 0, cycle: l }, "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn cubic_cycle_examples() {
        let k5 = field(5);
        let lens: Vec<u64> = (1..5)
            .map(|c| permutation_cycle_length(&CubicMap::new(k5, c).unwrap()))
            .collect();
        assert_eq!(lens, vec![4, 2, 2, 4]);
    }

    #[test]
    fn cubic_orbits_are_pure_cycles() {
        for p in [5u64, 11, 17, 23, 101, 1013] {
            let k = field(p);
            for c in 0..p.min(30) {
                let g = CubicMap::new(k, c).unwrap();
                let shape = orbit_shape_raw(&g, 0);
                assert_eq!(shape.tail, 0);
                assert_eq!(shape.cycle, permutation_cycle_length(&g));
                let summary = functional_graph_summary(&g).unwrap();
                assert_eq!(summary.cyclic_points, p);
                assert_eq!(summary.max_tail, 0);
            }
        }
    }

    #[test]
    fn critical_orbit_examples() {
        for p in [7u64, 11, 101] {
            let sq = QuadMap::monic(field(p), 0);
            assert_eq!(
                critical_orbit_distinct(&sq, 3),
                (false, Some(CollisionPair { i: 0, j: 1 }))
            );
            assert_eq!(first_recurrence(&sq), CollisionPair { i: 0, j: 1 });
            let cheb = QuadMap::new(field(p), 1, p - 2).unwrap();
            assert_eq!(
                critical_orbit_distinct(&cheb, 3),
                (false, Some(CollisionPair { i: 2, j: 3 }))
            );
        }
        let f = QuadMap::monic(field(5), 1);
        assert_eq!(critical_orbit_distinct(&f, 2), (true, None));
        assert_eq!(
            critical_orbit_distinct(&f, 3),
            (false, Some(CollisionPair { i: 0, j: 3 }))
        );
        assert_eq!(first_recurrence(&f), CollisionPair { i: 0, j: 3 });
    }

    #[test]
    fn functional_graph_summary_matches_orbits() {
        let k = field(1009);
        let f = QuadMap::monic(k, 7);
        let summary = functional_graph_summary(&f).unwrap();
        let shapes: Vec<_> = (0..1009).map(|m| orbit_shape_raw(&f, m)).collect();
        let cyclic = shapes.iter().filter(|s| s.tail == 0).count() as u64;
        assert_eq!(summary.cyclic_points, cyclic);
        assert_eq!(summary.max_tail, shapes.iter().map(|s| s.tail).max().unwrap());
        assert_eq!(summary.max_cycle, shapes.iter().map(|s| s.cycle).max().unwrap());
    }

    proptest! {
        #[test]
        fn first_recurrence_agrees_with_shape(a in 1u64..10007, c in 0u64..10007) {
            let k = field(10007);
            let f = QuadMap::new(k, a, c).unwrap();
            let shape = orbit_shape(&f, k.element(0)).unwrap();
            let pair = first_recurrence(&f);
            prop_assert_eq!(pair, CollisionPair { i: shape.tail, j: shape.tail + shape.cycle });
            prop_assert!(pair.j <= 10007);
        }

        #[test]
        fn distinctness_is_monotone(a in 1u64..1009, c in 0u64..1009, r in 0u64..40) {
            let f = QuadMap::new(field(1009), a, c).unwrap();
            if critical_orbit_distinct(&f, r).0 {
                for s in 0..r {
                    prop_assert!(critical_orbit_distinct(&f, s).0);
                }
            } else {
                let pair = critical_orbit_distinct(&f, r).1.unwrap();
                prop_assert_eq!(pair, first_recurrence(&f));
            }
        }
    }
}
