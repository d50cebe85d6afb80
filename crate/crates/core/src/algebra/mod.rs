//! Hilbert functions by exact linear algebra.
//!
//! [`subalgebra_hilbert`] works inside the truncated edge algebra, where each
//! `φ_e` satisfies `φ_e^(t+1) = 0`, and measures the subalgebra generated by
//! the signed vertex sums `X_i`. [`quotient_hilbert`] works in the polynomial
//! ring on vertex variables modulo the powers `(Σ_{i∈I} x_i)^(t·D_I + 1)`,
//! one degree at a time.

pub mod linalg;
mod quotient;
mod subalgebra;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub use quotient::{quotient_hilbert, quotient_hilbert_traced};
pub use subalgebra::{subalgebra_hilbert, subalgebra_hilbert_traced};

pub const DEFAULT_MAX_BASIS: u64 = 200_000;
pub const DEFAULT_MAX_SUBSET_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraBounds {
    /// Cap on `(t+1)^e`, the dimension of the truncated edge algebra.
    pub max_basis: u64,
    /// Cap on the vertex count, since all `2^n − 1` subsets are visited.
    pub max_subset_vertices: usize,
}

impl Default for AlgebraBounds {
    fn default() -> Self {
        AlgebraBounds { max_basis: DEFAULT_MAX_BASIS, max_subset_vertices: DEFAULT_MAX_SUBSET_VERTICES }
    }
}

/// Shape and rank of the matrix reduced in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTrace {
    pub degree: usize,
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
}

/// Sign matrix of the generators: row `i`, column `e` is `+1` if `i` is the
/// smaller endpoint of `e`, `−1` if the larger, `0` otherwise. Loop
/// columns are zero.
pub fn generator_matrix(g: &Multigraph) -> Vec<Vec<i8>> {
    let mut m = vec![vec![0i8; g.edge_count()]; g.vertex_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a != b {
            m[a.min(b)][e] += 1;
            m[a.max(b)][e] -= 1;
        }
    }
    m
}

/// Number of edges with exactly one endpoint in the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutDegrees {
    vertex_count: usize,
    /// Indexed by bitmask; entry 0 is unused.
    degrees: Vec<u32>,
}

impl CutDegrees {
    pub fn get(&self, subset: &[usize]) -> u32 {
        self.degrees[subset.iter().fold(0usize, |m, &v| m | 1 << v)]
    }

    pub fn get_mask(&self, mask: usize) -> u32 {
        self.degrees[mask]
    }

    /// Nonempty subsets as `(bitmask, D_I)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.degrees.iter().copied().enumerate().skip(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
}

pub fn cut_degrees(g: &Multigraph, max_vertices: usize) -> Result<CutDegrees> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::SubsetBound { vertices: n, limit: max_vertices });
    }
    let degrees = (0..1usize << n)
        .map(|mask| {
            let inside = |v: usize| mask >> v & 1 == 1;
            g.edges().iter().filter(|&&(a, b)| inside(a) != inside(b)).count() as u32
        })
        .collect();
    Ok(CutDegrees { vertex_count: n, degrees })
}

/// Dimension-level check that the quotient and the subalgebra agree.
pub fn isomorphism_check(g: &Multigraph, t: u32, bounds: AlgebraBounds) -> Result<bool> {
    Ok(subalgebra_hilbert(g, t, bounds)? == quotient_hilbert(g, t, bounds)?)
}
