//! Deletion–contraction for the Tutte polynomial and for its clone-graph
//! variant `J_G = T_Ĝ`, plus the substitution that turns `T_G` into the
//! Hilbert function of the forest algebra.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::ActivityTable;
use crate::graph::{EdgeClass, Multigraph};
use crate::hilbert::{to_dim, HilbertFunction};
use crate::poly::{Laurent, Poly1, Poly2, Rational};

pub const DEFAULT_RECURSION_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    DeletionContraction,
    ActivityExpansion,
    CloneOf { t: u32 },
    Recovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuttePoly {
    pub poly: Poly2,
    pub provenance: Provenance,
}

/// `J_G(x, y)`, the Tutte polynomial of the t-clone graph computed on `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JPoly {
    pub poly: Poly2,
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TutteOptions {
    /// Maximum number of non-cached recursion nodes.
    pub budget: u64,
    pub memo: bool,
}

impl Default for TutteOptions {
    fn default() -> Self {
        TutteOptions { budget: DEFAULT_RECURSION_BUDGET, memo: true }
    }
}

/// Per-case multipliers of a deletion–contraction recurrence.
struct Rule {
    loop_factor: Poly2,
    bridge_factor: Poly2,
    contract_factor: Poly2,
}

impl Rule {
    fn tutte() -> Rule {
        Rule { loop_factor: Poly2::y(), bridge_factor: Poly2::x(), contract_factor: Poly2::one() }
    }

    /// Loops give `y^t`; an ordinary edge gives `z·J(G·e) + J(G−e)` with
    /// `z = 1 + … + y^(t−1)`; a bridge gives `z·J(G·e) + (x−1)·J(G−e)`,
    /// which collapses to `(z + x − 1)·J(G·e)` because deleting and
    /// contracting a bridge yield the same polynomial.
    fn clone(t: u32) -> Rule {
        let z = Poly2::from_terms((0..t).map(|j| ((0, j), 1)));
        Rule {
            loop_factor: Poly2::monomial((0, t), 1),
            bridge_factor: &(&z + &Poly2::x()) - &Poly2::one(),
            contract_factor: z,
        }
    }
}

/// Relabels vertices in BFS order (roots taken by increasing degree, then
/// id) and returns the sorted edge list. Isolated vertices are dropped. Equal
/// keys imply isomorphic graphs, which is all a Tutte cache needs.
fn canonical_key(g: &Multigraph) -> Vec<(u16, u16)> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        adj[a].push(b);
        if a != b {
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut roots: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
    roots.sort_by_key(|&v| (adj[v].len(), v));
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for r in roots {
        if label[r] != usize::MAX {
            continue;
        }
        label[r] = next;
        next += 1;
        queue.push_back(r);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if label[w] == usize::MAX {
                    label[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut key: Vec<(u16, u16)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (label[a] as u16, label[b] as u16);
            (x.min(y), x.max(y))
        })
        .collect();
    key.sort_unstable();
    key
}

struct Expander {
    rule: Rule,
    opts: TutteOptions,
    calls: u64,
    memo: HashMap<Vec<(u16, u16)>, Poly2>,
}

impl Expander {
    fn new(rule: Rule, opts: TutteOptions) -> Self {
        Expander { rule, opts, calls: 0, memo: HashMap::new() }
    }

    fn expand(&mut self, g: &Multigraph) -> Result<Poly2> {
        // Peel loops, then bridges, before branching.
        let loops = g.loop_count() as u32;
        let mut g = if loops > 0 {
            let keep = g.edges().iter().copied().filter(|(a, b)| a != b).collect();
            Multigraph::new(g.vertex_count(), keep)?
        } else {
            g.clone()
        };
        let bridges: Vec<usize> = (0..g.edge_count()).filter(|&i| g.classify(i) == Ok(EdgeClass::Bridge)).collect();
        for &i in bridges.iter().rev() {
            g = g.contract(i)?;
        }
        let factor = &self.rule.loop_factor.pow(loops) * &self.rule.bridge_factor.pow(bridges.len() as u32);

        if g.edge_count() == 0 {
            return Ok(factor);
        }

        let key = self.opts.memo.then(|| canonical_key(&g));
        if let Some(hit) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok(&factor * hit);
        }
        self.calls += 1;
        if self.calls > self.opts.budget {
            return Err(Error::BudgetExceeded { limit: self.opts.budget });
        }

        // Every remaining edge is ordinary; pivot on the last one.
        let last = g.edge_count() - 1;
        let contracted = self.expand(&g.contract(last)?)?;
        let deleted = self.expand(&g.delete(last)?)?;
        let value = &(&self.rule.contract_factor * &contracted) + &deleted;

        if let Some(k) = key {
            self.memo.insert(k, value.clone());
        }
        Ok(&factor * &value)
    }
}

pub fn tutte_with(g: &Multigraph, opts: TutteOptions) -> Result<TuttePoly> {
    let poly = Expander::new(Rule::tutte(), opts).expand(g)?;
    Ok(TuttePoly { poly, provenance: Provenance::DeletionContraction })
}

pub fn tutte(g: &Multigraph) -> Result<TuttePoly> {
    tutte_with(g, TutteOptions::default())
}

/// `Σ N[a][b] (x−1)^((v−c)−a) y^b`.
pub fn tutte_via_activity(table: &ActivityTable) -> TuttePoly {
    let rank = (table.v - table.c) as u32;
    let x_minus_one = &Poly2::x() - &Poly2::one();
    let mut poly = Poly2::zero();
    for (&(a, b), &n) in &table.counts {
        let term = x_minus_one.pow(rank - a).shift((0, b)).scale(&BigInt::from(n));
        poly = &poly + &term;
    }
    TuttePoly { poly, provenance: Provenance::ActivityExpansion }
}

pub fn j_poly_with(g: &Multigraph, t: u32, opts: TutteOptions) -> Result<JPoly> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    let poly = Expander::new(Rule::clone(t), opts).expand(g)?;
    Ok(JPoly { poly, t })
}

pub fn j_poly(g: &Multigraph, t: u32) -> Result<JPoly> {
    j_poly_with(g, t, TutteOptions::default())
}

/// Whether `J_G` agrees coefficientwise with the Tutte polynomial of the
/// explicit clone graph.
pub fn j_poly_clone_check(g: &Multigraph, t: u32, opts: TutteOptions) -> Result<bool> {
    let direct = j_poly_with(g, t, opts)?;
    let clone = g.clone_graph(t)?;
    Ok(direct.poly == tutte_with(&clone.graph, opts)?.poly)
}

/// Which exponent of the substituted Laurent polynomial is read as `dim_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientIndex {
    /// `t·e − (v − c) − k`: consistent with the labeled-forest count.
    RankShift,
    /// `t·e − c + v + 1 − k`.
    VertexShift,
}

/// `z^(v−c) · T_G(1/(z·y) + 1, y^t)` with `z = 1 + y + … + y^(t−1)`,
/// expanded term by term. Each `x^i` contributes `Σ_m C(i,m) z^(v−c−m) y^(−m)`,
/// and `i ≤ v − c` keeps every power of `z` nonnegative.
pub fn substituted_laurent(tutte: &Poly2, rank: u32, t: u32) -> Result<Laurent> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    assert!(tutte.x_degree() <= rank, "x-degree of a Tutte polynomial exceeds the graph rank");
    let z = Poly1::geometric_block(t, 0).to_laurent();
    let mut z_pow = vec![Laurent::one()];
    for _ in 0..rank {
        let next = z_pow.last().unwrap() * &z;
        z_pow.push(next);
    }
    let mut out = Laurent::zero();
    for ((i, j), c) in tutte.terms() {
        for m in 0..=i {
            let coeff = c * binomial(BigInt::from(i), BigInt::from(m));
            let shift = (t * j) as i32 - m as i32;
            out = &out + &z_pow[(rank - m) as usize].shift(shift).scale(&coeff);
        }
    }
    Ok(out)
}

pub fn hilbert_from_tutte_poly(
    tutte: &Poly2,
    g: &Multigraph,
    t: u32,
    index: CoefficientIndex,
) -> Result<HilbertFunction> {
    let rank = g.rank() as i64;
    let laurent = substituted_laurent(tutte, rank as u32, t)?;
    let top = t as i64 * g.edge_count() as i64;
    let base = match index {
        CoefficientIndex::RankShift => top - rank,
        CoefficientIndex::VertexShift => top + rank + 1,
    };
    let dims = (0..=top).map(|k| to_dim(&laurent.coefficient((base - k) as i32), k)).collect::<Result<_>>()?;
    Ok(HilbertFunction::new(t, dims))
}

pub fn hilbert_from_tutte_with(
    g: &Multigraph,
    t: u32,
    index: CoefficientIndex,
    opts: TutteOptions,
) -> Result<HilbertFunction> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    hilbert_from_tutte_poly(&tutte_with(g, opts)?.poly, g, t, index)
}

pub fn hilbert_from_tutte(g: &Multigraph, t: u32) -> Result<HilbertFunction> {
    hilbert_from_tutte_with(g, t, CoefficientIndex::RankShift, TutteOptions::default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySample {
    pub y: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub samples: Vec<IdentitySample>,
}

impl IdentityReport {
    pub fn all_equal(&self) -> bool {
        self.samples.iter().all(|s| s.lhs == s.rhs)
    }
}

/// Distinct rationals avoiding `0` and `±1`: 2, −2, 1/2, −1/2, 3, −3, …
pub fn default_samples(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut q = 2i64;
    while out.len() < count {
        let a = Rational::from_integer(q.into());
        let b = Rational::new(1.into(), q.into());
        for s in [a.clone(), -a, b.clone(), -b] {
            if out.len() < count {
                out.push(s);
            }
        }
        q += 1;
    }
    out
}

/// Evaluates both sides of
/// `J_G(1 + 1/y, y) = ((y^t − 1)/(y − 1))^(v−c) · T_G((y^(t+1) − 1)/(y^(t+1) − y), y^t)`
/// exactly at each sample. Both sides times `y^(v−c)` are polynomials of
/// degree at most `t·e`, so `t·e + 1` distinct samples certify the identity.
pub fn identity_check(j: &JPoly, tutte: &Poly2, rank: usize, samples: &[Rational]) -> Result<IdentityReport> {
    let t = j.t;
    let one = Rational::one();
    let mut out = Vec::with_capacity(samples.len());
    for y in samples {
        let y_t = num_traits::pow(y.clone(), t as usize);
        let y_t1 = &y_t * y;
        if y.is_zero() || y.is_one() || (&y_t1 - y).is_zero() {
            return Err(Error::ForbiddenSample(y.to_string()));
        }
        let lhs = j.poly.eval_at(&(&one + &one / y), y)?;
        let z = (&y_t - &one) / (y - &one);
        let x = (&y_t1 - &one) / (&y_t1 - y);
        let rhs = num_traits::pow(z, rank) * tutte.eval_at(&x, &y_t)?;
        out.push(IdentitySample { y: y.clone(), lhs, rhs });
    }
    Ok(IdentityReport { samples: out })
}

pub fn lemma_eq_check(g: &Multigraph, t: u32, samples: &[Rational], opts: TutteOptions) -> Result<IdentityReport> {
    let j = j_poly_with(g, t, opts)?;
    let tp = tutte_with(g, opts)?;
    identity_check(&j, &tp.poly, g.rank(), samples)
}
