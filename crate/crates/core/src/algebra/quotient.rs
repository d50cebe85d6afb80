use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use super::linalg::Echelon;
use super::{cut_degrees, AlgebraBounds, DegreeTrace};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::hilbert::HilbertFunction;
use crate::poly::Rational;

type Exps = Vec<u16>;

/// Monomials of one degree in the free variables.
struct Monomials {
    list: Vec<Exps>,
    index: HashMap<Exps, usize>,
}

impl Monomials {
    fn of_degree(vars: usize, k: usize) -> Self {
        fn fill(vars: usize, left: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
            if cur.len() + 1 == vars {
                cur.push(left as u16);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a as u16);
                fill(vars, left - a, cur, out);
                cur.pop();
            }
        }
        let mut list = Vec::new();
        if vars == 0 {
            if k == 0 {
                list.push(Vec::new());
            }
        } else {
            fill(vars, k, &mut Vec::with_capacity(vars), &mut list);
        }
        let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Monomials { list, index }
    }
}

/// `ℓ^d` for a linear form with integer coefficients, as exponent → coefficient.
fn linear_power(form: &[i64], d: usize) -> HashMap<Exps, BigInt> {
    let mut acc: HashMap<Exps, BigInt> = HashMap::from([(vec![0u16; form.len()], BigInt::from(1))]);
    for _ in 0..d {
        let mut next: HashMap<Exps, BigInt> = HashMap::new();
        for (m, c) in &acc {
            for (j, &a) in form.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[j] += 1;
                *next.entry(m2).or_default() += c * a;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

pub fn quotient_hilbert(g: &Multigraph, t: u32, bounds: AlgebraBounds) -> Result<HilbertFunction> {
    quotient_hilbert_traced(g, t, bounds).map(|(h, _)| h)
}

/// Degree-wise Macaulay ranks of the ideal generated by
/// `(Σ_{i∈I} x_i)^(t·D_I + 1)` over nonempty vertex subsets `I`.
///
/// Subsets with `D_I = 0` are unions of components and contribute linear
/// forms; these are solved first by eliminating the largest vertex variable
/// of each component. The remaining generators become powers of linear forms
/// in the `v − c` free variables, and the degree-k ideal component is spanned
/// by `x_j · I_(k−1)` together with the generators of degree exactly `k`.
pub fn quotient_hilbert_traced(
    g: &Multigraph,
    t: u32,
    bounds: AlgebraBounds,
) -> Result<(HilbertFunction, Vec<DegreeTrace>)> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    let cuts = cut_degrees(g, bounds.max_subset_vertices)?;
    let n = g.vertex_count();
    let top = g.edge_count() * t as usize;
    let max_degree = top + n;

    let labels = g.component_labels();
    let mut last_of = vec![0; n];
    for (v, &c) in labels.iter().enumerate() {
        last_of[c] = v;
    }
    let free: Vec<usize> = (0..n).filter(|&v| last_of[labels[v]] != v).collect();
    let vars = free.len();

    let biggest = binomial(BigInt::from(vars + max_degree), BigInt::from(vars));
    if vars > 0 && biggest > BigInt::from(bounds.max_basis) {
        return Err(Error::BasisBound { size: biggest.to_u64().unwrap_or(u64::MAX), limit: bounds.max_basis });
    }

    // Distinct (form, degree) pairs; complementary subsets give ±ℓ.
    let mut generators: BTreeSet<(usize, Vec<i64>)> = BTreeSet::new();
    for (mask, d_cut) in cuts.iter() {
        if d_cut == 0 {
            continue;
        }
        let inside = |v: usize| (mask >> v & 1) as i64;
        let mut form: Vec<i64> = free.iter().map(|&v| inside(v) - inside(last_of[labels[v]])).collect();
        if let Some(&lead) = form.iter().find(|&&a| a != 0) {
            if lead < 0 {
                form.iter_mut().for_each(|a| *a = -*a);
            }
        }
        let degree = (t * d_cut + 1) as usize;
        if degree <= max_degree {
            generators.insert((degree, form));
        }
    }

    let mut dims = vec![1u64];
    let mut trace = Vec::new();
    let mut prev_monomials = Monomials::of_degree(vars, 0);
    let mut current = Echelon::new(prev_monomials.list.len());

    for k in 1..=max_degree {
        let monomials = Monomials::of_degree(vars, k);
        let width = monomials.list.len();
        let mut next = Echelon::new(width);
        let mut rows = 0;

        'lift: for row in current.rows() {
            for j in 0..vars {
                if next.is_full() {
                    break 'lift;
                }
                rows += 1;
                next.insert_sparse(row.iter().map(|(col, c)| {
                    let mut m = prev_monomials.list[*col].clone();
                    m[j] += 1;
                    (monomials.index[&m], c.clone())
                }));
            }
        }
        for (_, form) in generators.range((k, Vec::new())..(k + 1, Vec::new())) {
            if next.is_full() {
                break;
            }
            rows += 1;
            next.insert_sparse(
                linear_power(form, k).into_iter().map(|(m, c)| (monomials.index[&m], Rational::from_integer(c))),
            );
        }

        let dim = (width - next.rank()) as u64;
        trace.push(DegreeTrace { degree: k, rows, columns: width, rank: next.rank() });
        dims.push(dim);
        if dim == 0 {
            break;
        }
        if k > top {
            return Err(Error::DegreeOverflow { degree: k, dim, top });
        }
        current = next;
        prev_monomials = monomials;
    }
    dims.truncate(top + 1);
    Ok((HilbertFunction::new(t, dims).padded(top + 1), trace))
}
