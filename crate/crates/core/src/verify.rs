//! Cross-method verification: every Hilbert function method on one graph,
//! the clone and identity checks, and the corpus-wide invariants.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{quotient_hilbert, subalgebra_hilbert, AlgebraBounds};
use crate::corpus::NamedGraph;
use crate::error::{Error, Result};
use crate::forest::{self, ActivityTable, DEFAULT_MAX_FORESTS};
use crate::graph::Multigraph;
use crate::hilbert::HilbertFunction;
use crate::poly::Rational;
use crate::recovery::recover_tutte;
use crate::tutte::{self, TutteOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Forests,
    Tutte,
    Subalgebra,
    Quotient,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Forests, Method::Tutte, Method::Subalgebra, Method::Quotient];

    pub fn name(self) -> &'static str {
        match self {
            Method::Forests => "forests",
            Method::Tutte => "tutte",
            Method::Subalgebra => "subalgebra",
            Method::Quotient => "quotient",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_forests: u64,
    pub algebra: AlgebraBounds,
    pub tutte: TutteOptions,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_forests: DEFAULT_MAX_FORESTS, algebra: AlgebraBounds::default(), tutte: TutteOptions::default() }
    }
}

pub fn hilbert(g: &Multigraph, t: u32, method: Method, bounds: &Bounds) -> Result<HilbertFunction> {
    match method {
        Method::Forests => forest::hilbert_from_forests(g, t, bounds.max_forests),
        Method::Tutte => tutte::hilbert_from_tutte_with(g, t, tutte::CoefficientIndex::RankShift, bounds.tutte),
        Method::Subalgebra => subalgebra_hilbert(g, t, bounds.algebra),
        Method::Quotient => quotient_hilbert(g, t, bounds.algebra),
    }
}

/// Graded counts for `t = 1` read straight off the activity table: the
/// degree-k piece counts subforests `F` with `act(F) = e − |F| − k`.
pub fn untwisted_grading(table: &ActivityTable) -> Vec<u64> {
    let mut dims = vec![0; table.e + 1];
    for (&(a, b), &n) in &table.counts {
        dims[table.e - a as usize - b as usize] += n;
    }
    dims
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub hilbert: HilbertFunction,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFlag {
    pub left: Method,
    pub right: Method,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub graph: String,
    pub t: u32,
    pub methods: Vec<MethodResult>,
    pub agreement: Vec<PairFlag>,
    /// `J_G` equals the Tutte polynomial of the explicit clone graph.
    pub clone_check: bool,
    pub activity_bijection_checked: u64,
    pub activity_bijection_violations: usize,
    pub identity_samples: usize,
    pub identity_holds: bool,
    pub pass: bool,
}

/// Runs every method plus the identity checks on one graph. `samples`
/// defaults to `t·e + 1` evaluation points.
pub fn verify_graph(
    name: &str,
    g: &Multigraph,
    t: u32,
    bounds: &Bounds,
    samples: Option<usize>,
) -> Result<VerifyReport> {
    let mut methods = Vec::new();
    for method in Method::ALL {
        let start = Instant::now();
        let h = hilbert(g, t, method, bounds)?;
        methods.push(MethodResult { method, hilbert: h, elapsed: start.elapsed() });
    }
    let mut agreement = Vec::new();
    for (i, a) in methods.iter().enumerate() {
        for b in &methods[i + 1..] {
            agreement.push(PairFlag { left: a.method, right: b.method, equal: a.hilbert == b.hilbert });
        }
    }
    let clone_check = tutte::j_poly_clone_check(g, t, bounds.tutte)?;
    let bijection = forest::clone_activity_check(g, t, bounds.max_forests)?;
    let count = samples.unwrap_or(t as usize * g.edge_count() + 1);
    let identity = tutte::lemma_eq_check(g, t, &tutte::default_samples(count), bounds.tutte)?;

    let pass = agreement.iter().all(|p| p.equal) && clone_check && bijection.passed() && identity.all_equal();
    Ok(VerifyReport {
        graph: name.to_string(),
        t,
        methods,
        agreement,
        clone_check,
        activity_bijection_checked: bijection.checked,
        activity_bijection_violations: bijection.violations.len(),
        identity_samples: identity.samples.len(),
        identity_holds: identity.all_equal(),
        pass,
    })
}

/// One corpus-wide property on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    pub graph: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<VerifyReport>,
    pub checks: Vec<CheckLine>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusOptions {
    pub ts: Vec<u32>,
    pub seed: u64,
    pub permutations: usize,
    pub samples: Option<usize>,
    pub bounds: Bounds,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { ts: vec![1, 2, 3], seed: 0, permutations: 5, samples: None, bounds: Bounds::default() }
    }
}

/// Seeded random edge orders of `g`.
pub fn random_orders(g: &Multigraph, seed: u64, count: usize) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut order: Vec<usize> = (0..g.edge_count()).collect();
            order.shuffle(&mut rng);
            g.permute_edges(&order).expect("a shuffle is a permutation")
        })
        .collect()
}

fn int(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

fn all_methods(g: &Multigraph, t: u32, bounds: &Bounds) -> Result<Vec<HilbertFunction>> {
    Method::ALL.iter().map(|&m| hilbert(g, t, m, bounds)).collect()
}

fn check_graph(ng: &NamedGraph, opts: &CorpusOptions, checks: &mut Vec<CheckLine>) -> Result<()> {
    let g = &ng.graph;
    let b = &opts.bounds;
    let mut line = |check: &str, passed: bool, detail: String| {
        checks.push(CheckLine { check: check.into(), graph: ng.name.clone(), passed, detail });
    };

    let table = forest::activity_table(g, b.max_forests)?;
    let t1 = forest::hilbert_from_table(&table, 1)?;
    line("t1-degeneration", t1.dims == untwisted_grading(&table), format!("{t1}"));

    let tp = tutte::tutte_with(g, b.tutte)?;
    let one = int(1);
    let two = int(2);
    let t11 = tp.poly.eval_at(&one, &one)?;
    let t21 = tp.poly.eval_at(&two, &one)?;
    let counts_ok =
        t11 == int(table.maximal()) && t21 == int(table.total()) && tutte::tutte_via_activity(&table).poly == tp.poly;
    line("tutte-specializations", counts_ok, format!("T(1,1)={t11} T(2,1)={t21}"));

    let mut sums_ok = true;
    for &t in &opts.ts {
        let h = forest::hilbert_from_table(&table, t)?;
        // t^(v−c) · T((t+1)/t, 1)
        let tr = int(t);
        let x = (&tr + &one) / &tr;
        let via_tutte = num_traits::pow(tr.clone(), g.rank()) * tp.poly.eval_at(&x, &one)?;
        sums_ok &= int(h.total()) == via_tutte && BigInt::from(h.total()) == table.labeled_count(t);
    }
    line("dimension-sums", sums_ok, String::new());

    let mut order_ok = true;
    for perm in random_orders(g, opts.seed, opts.permutations) {
        order_ok &= forest::activity_table(&perm, b.max_forests)? == table;
        for &t in &opts.ts {
            order_ok &= all_methods(&perm, t, b)? == all_methods(g, t, b)?;
        }
    }
    line("order-invariance", order_ok, format!("{} permutations", opts.permutations));

    if g.vertex_count() > 0 {
        let looped = g.with_loop(0)?;
        let mut loops_ok = true;
        for &t in &opts.ts {
            let padded: Vec<HilbertFunction> =
                all_methods(g, t, b)?.into_iter().map(|h| h.padded(t as usize * looped.edge_count() + 1)).collect();
            loops_ok &= all_methods(&looped, t, b)? == padded;
        }
        line("loop-invariance", loops_ok, String::new());
    }

    if g.is_connected() && g.loop_count() == 0 {
        let n = g.vertex_count();
        let mut ok = true;
        for t in [n as u32, n as u32 + 1] {
            let h = forest::hilbert_from_forests(g, t, b.max_forests)?;
            ok &= recover_tutte(&h, t, n).map_err(Error::from)?.poly == tp.poly;
        }
        line("recovery-round-trip", ok, format!("t in {{{n}, {}}}", n + 1));
    }
    Ok(())
}

pub fn verify_corpus(graphs: &[NamedGraph], opts: &CorpusOptions) -> Result<CorpusReport> {
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for ng in graphs {
        for &t in &opts.ts {
            entries.push(verify_graph(&ng.name, &ng.graph, t, &opts.bounds, opts.samples)?);
        }
        check_graph(ng, opts, &mut checks)?;
    }
    let pass = entries.iter().all(|e| e.pass) && checks.iter().all(|c| c.passed);
    Ok(CorpusReport { entries, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn triangle_all_methods() {
        let tri = corpus::by_name("triangle").unwrap().graph;
        let rep = verify_graph("triangle", &tri, 1, &Bounds::default(), None).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.agreement.len(), 6);
        assert!(rep.methods.iter().all(|m| m.hilbert.dims == [1, 2, 3, 1]));
        assert_eq!(rep.identity_samples, 4);
    }

    #[test]
    fn untwisted_triangle() {
        let table = forest::activity_table(&corpus::by_name("triangle").unwrap().graph, 100).unwrap();
        assert_eq!(untwisted_grading(&table), vec![1, 2, 3, 1]);
    }

    #[test]
    fn orders_are_seeded() {
        let k4 = corpus::by_name("k4").unwrap().graph;
        assert_eq!(random_orders(&k4, 7, 3), random_orders(&k4, 7, 3));
        assert_ne!(random_orders(&k4, 7, 3), random_orders(&k4, 8, 3));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!("all".parse::<Method>().is_err());
    }

    #[test]
    fn bound_errors_propagate() {
        let k4 = corpus::by_name("k4").unwrap().graph;
        let b = Bounds { max_forests: 10, ..Default::default() };
        assert_eq!(verify_graph("k4", &k4, 1, &b, None), Err(Error::ForestBound { limit: 10 }));
    }
}
