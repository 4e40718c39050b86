use serde::Serialize;

use super::proper::is_proper;
use super::{check_shape, PartialGraph, VertexSet, WeightedCompleteGraph};
use crate::error::{Error, Result};

/// A path `order[0] - order[1] - ... - order[k-1]` with edge weights
/// `weights[s] = d(order[s], order[s+1])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainGraph {
    d_max: i8,
    order: Vec<usize>,
    weights: Vec<i8>,
}

impl ChainGraph {
    pub fn new(d_max: i8, order: Vec<usize>, weights: Vec<i8>) -> Result<Self> {
        let k = order.len();
        check_shape(k, d_max)?;
        let mut seen = VertexSet::empty();
        for &v in &order {
            if v >= k || seen.contains(v) {
                return Err(Error::VertexCount(k));
            }
            seen.insert(v);
        }
        if weights.len() + 1 != k {
            return Err(Error::VertexCount(k));
        }
        if let Some(&w) = weights.iter().find(|&&w| w < -1 || w > d_max) {
            return Err(Error::WeightOutOfRange { weight: w, max: d_max });
        }
        Ok(Self { d_max, order, weights })
    }

    pub fn k(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weights(&self) -> &[i8] {
        &self.weights
    }

    /// For every run of at least two consecutive edges, the largest weight
    /// is `-1` or occurs once.
    pub fn has_chain_property(&self) -> bool {
        let w = &self.weights;
        for s in 0..w.len() {
            let (mut max, mut hits) = (w[s], 1);
            for &x in &w[s + 1..] {
                if x > max {
                    max = x;
                    hits = 1;
                } else if x == max {
                    hits += 1;
                }
                if max != -1 && hits > 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_partial(&self) -> PartialGraph {
        let mut g = PartialGraph::empty(self.k(), self.d_max).expect("validated shape");
        for (s, &w) in self.weights.iter().enumerate() {
            g.set(self.order[s], self.order[s + 1], w).expect("validated weight");
        }
        g
    }
}

/// Splits `set` along its largest weight `top >= 0`: fixing the first pair
/// `(i0, j0)` with weight `top`, `A = {i : d(i, j0) = top}` and `B` is the
/// rest. `A` is relabelled to hold the smallest vertex of `set`.
fn split_within(g: &WeightedCompleteGraph, set: VertexSet, top: i8) -> (VertexSet, VertexSet) {
    let vs: Vec<usize> = set.iter().collect();
    let (_, j0) = vs
        .iter()
        .enumerate()
        .flat_map(|(x, &i)| vs[x + 1..].iter().map(move |&j| (i, j)))
        .find(|&(i, j)| g.get(i, j) == top)
        .expect("top weight is attained");
    let mut a = VertexSet::empty();
    for &i in &vs {
        if i != j0 && g.get(i, j0) == top {
            a.insert(i);
        }
    }
    let b = set.minus(a);
    if a.contains(vs[0]) {
        (a, b)
    } else {
        (b, a)
    }
}

/// The partition `A, B` of the vertices with every cross weight `D` and
/// every inner weight below `D`. `A` holds vertex 0.
pub fn split_partition(g: &WeightedCompleteGraph) -> Result<(VertexSet, VertexSet)> {
    if g.k() < 2 {
        return Err(Error::VertexCount(g.k()));
    }
    if !is_proper(g) {
        return Err(Error::NotProper);
    }
    if g.d_max() < 0 || !g.is_strict() {
        return Err(Error::NotStrict);
    }
    Ok(split_within(g, VertexSet::all(g.k()), g.d_max()))
}

/// A chain subgraph of `g` that generates `g` under [`closure`].
pub fn build_chain(g: &WeightedCompleteGraph) -> Result<ChainGraph> {
    if !is_proper(g) {
        return Err(Error::NotProper);
    }
    let (order, weights) = chain_on(g, VertexSet::all(g.k()));
    ChainGraph::new(g.d_max(), order, weights)
}

fn chain_on(g: &WeightedCompleteGraph, set: VertexSet) -> (Vec<usize>, Vec<i8>) {
    match g.max_weight_within(set) {
        None => (set.iter().collect(), Vec::new()),
        Some(-1) => (set.iter().collect(), vec![-1; set.len() - 1]),
        Some(top) => {
            let (a, b) = split_within(g, set, top);
            let (mut order, mut weights) = chain_on(g, a);
            let (order_b, weights_b) = chain_on(g, b);
            weights.push(top);
            weights.extend(weights_b);
            order.extend(order_b);
            (order, weights)
        }
    }
}

/// Applies the completion rule until nothing changes: for distinct
/// `a, b, c` with `ab`, `bc` present, `ac` absent and either
/// `d(a,b) = d(b,c) = -1` or `d(a,b) < d(b,c)`, add `ac` with weight
/// `d(b,c)`. Triples are scanned in lexicographic order.
pub fn closure_partial(g0: &PartialGraph) -> PartialGraph {
    let mut g = g0.clone();
    let k = g.k();
    loop {
        let mut changed = false;
        for a in 0..k {
            for b in 0..k {
                if b == a {
                    continue;
                }
                for c in 0..k {
                    if c == a || c == b || g.get(a, c).is_some() {
                        continue;
                    }
                    if let (Some(ab), Some(bc)) = (g.get(a, b), g.get(b, c)) {
                        if (ab == -1 && bc == -1) || ab < bc {
                            g.set(a, c, bc).expect("weight from an existing edge");
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return g;
        }
    }
}

pub fn closure(g0: &PartialGraph) -> Result<WeightedCompleteGraph> {
    let g = closure_partial(g0);
    g.to_complete()
        .ok_or(Error::ClosureIncomplete { missing: g.missing() })
}
