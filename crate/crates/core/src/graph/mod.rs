//! Weighted complete graphs on at most eight vertices, their properness,
//! split partitions, chain subgraphs and closure, and the graphs attached
//! to solutions of `f^r(x_1) = ... = f^r(x_k)`.
//!
//! Vertices are numbered from 0. Weights lie in `[-1, D]`.

mod chain;
mod proper;
mod solution;

pub use chain::{build_chain, closure, closure_partial, split_partition, ChainGraph};
pub use proper::{
    count_proper, count_proper_with_budget, is_proper, proper_graphs, DEFAULT_ENUMERATION_BUDGET,
};
pub use solution::{minimal_level, solution_graph};

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 8;

/// A set of vertices as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u8);

impl VertexSet {
    pub fn empty() -> Self {
        Self(0)
    }

    /// `{0, ..., k-1}`.
    pub fn all(k: usize) -> Self {
        Self(((1u16 << k) - 1) as u8)
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn minus(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&v| self.contains(v))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Index of edge `{i, j}`, `i < j`, in row-major upper-triangular order.
fn edge_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

fn check_shape(k: usize, d_max: i8) -> Result<()> {
    if k == 0 || k > MAX_VERTICES {
        return Err(Error::VertexCount(k));
    }
    if d_max < -1 {
        return Err(Error::WeightOutOfRange { weight: d_max, max: d_max });
    }
    Ok(())
}

/// A complete `(D, k)`-graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCompleteGraph {
    k: usize,
    d_max: i8,
    weights: Vec<i8>,
}

impl WeightedCompleteGraph {
    /// All weights `-1`.
    pub fn new(k: usize, d_max: i8) -> Result<Self> {
        check_shape(k, d_max)?;
        Ok(Self {
            k,
            d_max,
            weights: vec![-1; k * (k - 1) / 2],
        })
    }

    /// Weights listed in the order `(0,1), (0,2), ..., (0,k-1), (1,2), ...`.
    pub fn from_weights(k: usize, d_max: i8, weights: &[i8]) -> Result<Self> {
        check_shape(k, d_max)?;
        if weights.len() != k * (k - 1) / 2 {
            return Err(Error::VertexCount(k));
        }
        if let Some(&w) = weights.iter().find(|&&w| w < -1 || w > d_max) {
            return Err(Error::WeightOutOfRange { weight: w, max: d_max });
        }
        Ok(Self {
            k,
            d_max,
            weights: weights.to_vec(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_max(&self) -> i8 {
        self.d_max
    }

    pub fn weights(&self) -> &[i8] {
        &self.weights
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        assert!(i != j && i < self.k && j < self.k, "edge ({i}, {j}) out of range");
        self.weights[edge_index(self.k, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, w: i8) -> Result<()> {
        if w < -1 || w > self.d_max {
            return Err(Error::WeightOutOfRange { weight: w, max: self.d_max });
        }
        assert!(i != j && i < self.k && j < self.k, "edge ({i}, {j}) out of range");
        self.weights[edge_index(self.k, i, j)] = w;
        Ok(())
    }

    /// Some edge has weight exactly `D`.
    pub fn is_strict(&self) -> bool {
        self.weights.contains(&self.d_max)
    }

    /// Largest weight among edges inside `set`, or `None` below two vertices.
    pub fn max_weight_within(&self, set: VertexSet) -> Option<i8> {
        let vs: Vec<usize> = set.iter().collect();
        let mut best = None;
        for (x, &i) in vs.iter().enumerate() {
            for &j in &vs[x + 1..] {
                best = best.max(Some(self.get(i, j)));
            }
        }
        best
    }

    /// Symmetric matrix with `-1` placeholders on the diagonal.
    pub fn matrix(&self) -> Vec<Vec<i8>> {
        (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| if i == j { -1 } else { self.get(i, j) })
                    .collect()
            })
            .collect()
    }
}

impl Serialize for WeightedCompleteGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WeightedCompleteGraph", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("d", &self.d_max)?;
        st.serialize_field("weights", &self.matrix())?;
        st.end()
    }
}

/// A `(D, k)`-graph with some edges absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialGraph {
    k: usize,
    d_max: i8,
    weights: Vec<Option<i8>>,
}

impl PartialGraph {
    pub fn empty(k: usize, d_max: i8) -> Result<Self> {
        check_shape(k, d_max)?;
        Ok(Self {
            k,
            d_max,
            weights: vec![None; k * (k - 1) / 2],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_max(&self) -> i8 {
        self.d_max
    }

    pub fn get(&self, i: usize, j: usize) -> Option<i8> {
        self.weights[edge_index(self.k, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, w: i8) -> Result<()> {
        if w < -1 || w > self.d_max {
            return Err(Error::WeightOutOfRange { weight: w, max: self.d_max });
        }
        assert!(i != j && i < self.k && j < self.k, "edge ({i}, {j}) out of range");
        self.weights[edge_index(self.k, i, j)] = Some(w);
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.weights.iter().filter(|w| w.is_some()).count()
    }

    pub fn missing(&self) -> usize {
        self.weights.len() - self.edge_count()
    }

    /// The complete graph, if every edge is present.
    pub fn to_complete(&self) -> Option<WeightedCompleteGraph> {
        let weights: Option<Vec<i8>> = self.weights.iter().copied().collect();
        weights.map(|weights| WeightedCompleteGraph {
            k: self.k,
            d_max: self.d_max,
            weights,
        })
    }

    /// Whether each present edge has the same weight in `g`.
    pub fn is_subgraph_of(&self, g: &WeightedCompleteGraph) -> bool {
        self.k == g.k
            && self
                .weights
                .iter()
                .zip(&g.weights)
                .all(|(a, &b)| a.is_none_or(|a| a == b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_indices_are_a_bijection() {
        for k in 2..=MAX_VERTICES {
            let mut seen = vec![false; k * (k - 1) / 2];
            for i in 0..k {
                for j in i + 1..k {
                    let e = edge_index(k, i, j);
                    assert_eq!(e, edge_index(k, j, i));
                    assert!(!seen[e]);
                    seen[e] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn shape_checks() {
        assert!(matches!(WeightedCompleteGraph::new(0, 1), Err(Error::VertexCount(0))));
        assert!(matches!(WeightedCompleteGraph::new(9, 1), Err(Error::VertexCount(9))));
        assert!(matches!(
            WeightedCompleteGraph::from_weights(2, 0, &[1]),
            Err(Error::WeightOutOfRange { weight: 1, max: 0 })
        ));
        let mut g = WeightedCompleteGraph::new(3, 1).unwrap();
        g.set(2, 0, 1).unwrap();
        assert_eq!(g.get(0, 2), 1);
        assert!(g.is_strict());
        assert_eq!(g.max_weight_within(VertexSet(0b011)), Some(-1));
    }

    #[test]
    fn vertex_sets() {
        let mut s = VertexSet::empty();
        s.insert(3);
        s.insert(0);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(VertexSet::all(8).len(), 8);
        assert_eq!(VertexSet::all(4).minus(s).iter().collect::<Vec<_>>(), vec![1, 2]);
    }
}
