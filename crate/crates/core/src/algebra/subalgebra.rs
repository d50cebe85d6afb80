use num_traits::{One, Zero};

use super::linalg::Echelon;
use super::{AlgebraBounds, DegreeTrace};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::hilbert::HilbertFunction;
use crate::poly::Rational;

/// Monomial basis of the truncated edge algebra, grouped by degree.
/// A monomial `Π φ_e^(a_e)` with `0 ≤ a_e ≤ t` is encoded as `Σ a_e (t+1)^e`.
struct PhiBasis {
    radix: usize,
    place: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    position: Vec<u32>,
}

impl PhiBasis {
    fn new(edges: usize, t: u32, max_basis: u64) -> Result<Self> {
        let radix = t as usize + 1;
        let size = (radix as u64)
            .checked_pow(edges as u32)
            .filter(|&s| s <= max_basis)
            .ok_or(Error::BasisBound { size: (radix as u64).saturating_pow(edges as u32), limit: max_basis })?
            as usize;
        let place: Vec<usize> = (0..edges).map(|e| radix.pow(e as u32)).collect();
        let mut by_degree = vec![Vec::new(); edges * t as usize + 1];
        let mut position = vec![0u32; size];
        for (code, slot) in position.iter_mut().enumerate() {
            let mut rest = code;
            let mut deg = 0;
            while rest > 0 {
                deg += rest % radix;
                rest /= radix;
            }
            *slot = by_degree[deg].len() as u32;
            by_degree[deg].push(code);
        }
        Ok(PhiBasis { radix, place, by_degree, position })
    }

    fn exponent(&self, code: usize, edge: usize) -> usize {
        code / self.place[edge] % self.radix
    }
}

pub fn subalgebra_hilbert(g: &Multigraph, t: u32, bounds: AlgebraBounds) -> Result<HilbertFunction> {
    subalgebra_hilbert_traced(g, t, bounds).map(|(h, _)| h)
}

/// Degree-k component of the subalgebra generated by
/// `X_i = Σ_e c_{i,e} φ_e`, computed as the span of `X_i · C_(k−1)`.
///
/// Within each connected component the `X_i` sum to zero, so the generator
/// at the component's largest vertex is dropped.
pub fn subalgebra_hilbert_traced(
    g: &Multigraph,
    t: u32,
    bounds: AlgebraBounds,
) -> Result<(HilbertFunction, Vec<DegreeTrace>)> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    let basis = PhiBasis::new(g.edge_count(), t, bounds.max_basis)?;
    let top = g.edge_count() * t as usize;

    let labels = g.component_labels();
    let mut last_of = vec![0; g.vertex_count()];
    for (v, &c) in labels.iter().enumerate() {
        last_of[c] = v;
    }
    let generators: Vec<Vec<(usize, i64)>> = (0..g.vertex_count())
        .filter(|&v| last_of[labels[v]] != v)
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| a != b && (a == v || b == v))
                .map(|(e, &(a, b))| (e, if v == a.min(b) { 1 } else { -1 }))
                .collect::<Vec<_>>()
        })
        .filter(|gen| !gen.is_empty())
        .collect();

    let mut dims = vec![1u64];
    let mut trace = Vec::new();
    let mut current = Echelon::new(1);
    current.insert_sparse([(0, Rational::one())]);

    for k in 1..=top {
        let width = basis.by_degree[k].len();
        let mut next = Echelon::new(width);
        let mut rows = 0;
        'fill: for row in current.rows() {
            for gen in &generators {
                if next.is_full() {
                    break 'fill;
                }
                let mut dense = vec![Rational::zero(); width];
                for (col, c) in row {
                    let code = basis.by_degree[k - 1][*col];
                    for &(e, sign) in gen {
                        if basis.exponent(code, e) < t as usize {
                            let target = basis.position[code + basis.place[e]] as usize;
                            if sign > 0 {
                                dense[target] += c;
                            } else {
                                dense[target] -= c;
                            }
                        }
                    }
                }
                rows += 1;
                next.insert_dense(dense);
            }
        }
        trace.push(DegreeTrace { degree: k, rows, columns: width, rank: next.rank() });
        dims.push(next.rank() as u64);
        if next.rank() == 0 {
            break;
        }
        current = next;
    }
    Ok((HilbertFunction::new(t, dims).padded(top + 1), trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn dims(gr: &Multigraph, t: u32) -> Vec<u64> {
        subalgebra_hilbert(gr, t, AlgebraBounds::default()).unwrap().dims
    }

    #[test]
    fn examples() {
        assert_eq!(dims(&g(2, &[(0, 1)]), 2), vec![1, 1, 1]);
        assert_eq!(dims(&g(3, &[(0, 1), (1, 2), (0, 2)]), 1), vec![1, 2, 3, 1]);
        assert_eq!(dims(&Multigraph::empty(0), 3), vec![1]);
        assert_eq!(dims(&g(1, &[(0, 0)]), 2), vec![1, 0, 0]);
    }

    #[test]
    fn degree_one_is_graph_rank() {
        let gr = g(5, &[(0, 1), (1, 2), (3, 4), (3, 4)]);
        assert_eq!(dims(&gr, 2)[1], gr.rank() as u64);
    }

    #[test]
    fn basis_bound() {
        let gr = g(2, &[(0, 1); 5]);
        let b = AlgebraBounds { max_basis: 100, ..Default::default() };
        assert_eq!(subalgebra_hilbert(&gr, 2, b), Err(Error::BasisBound { size: 243, limit: 100 }));
    }

    #[test]
    fn trace_shapes() {
        let (_, trace) = subalgebra_hilbert_traced(&g(2, &[(0, 1)]), 2, AlgebraBounds::default()).unwrap();
        assert_eq!(trace[0], DegreeTrace { degree: 1, rows: 1, columns: 1, rank: 1 });
    }
}
