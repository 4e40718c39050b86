use super::proper::is_proper;
use super::WeightedCompleteGraph;
use crate::error::{Error, Result};
use crate::field::{PolyMap, QuadMap};

/// Least `d` in `-1..r` with `phi(x, y; d) = 0`.
pub fn minimal_level(f: &QuadMap, x: u64, y: u64, r: u32) -> Option<i8> {
    (-1..r as i64)
        .find(|&d| f.phi_raw(x, y, d) == 0)
        .map(|d| d as i8)
}

/// The graph of a solution of `f^r(x_1) = ... = f^r(x_k)`: `d(i, j)` is
/// the least level at which `x_i` and `x_j` are linked. The result is an
/// `(r-1, k)`-graph and is checked to be proper.
pub fn solution_graph(f: &QuadMap, xs: &[u64], r: u32) -> Result<WeightedCompleteGraph> {
    if r > i8::MAX as u32 {
        return Err(Error::InvalidLevel(r as i64));
    }
    let ctx = f.context();
    let xs: Vec<u64> = xs
        .iter()
        .map(|&x| ctx.bind(ctx.element(x)))
        .collect::<Result<_>>()?;
    let mut g = WeightedCompleteGraph::new(xs.len(), r as i8 - 1)?;
    let target = xs.first().map(|&x| f.iterate_raw(x, r as u64));
    if let Some(i) = xs.iter().position(|&x| Some(f.iterate_raw(x, r as u64)) != target) {
        return Err(Error::NotOnDiagonal(i as u32));
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = minimal_level(f, xs[i], xs[j], r).ok_or(Error::ImproperSolutionGraph)?;
            g.set(i, j, d)?;
        }
    }
    if !is_proper(&g) {
        return Err(Error::ImproperSolutionGraph);
    }
    Ok(g)
}
