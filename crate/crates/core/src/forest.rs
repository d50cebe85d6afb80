//! Subforest enumeration, external activity, and the labeled-forest side of
//! the Hilbert function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::hilbert::{to_dim, HilbertFunction};
use crate::poly::Poly1;

pub const DEFAULT_MAX_FORESTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestRecord {
    pub edges: Vec<usize>,
    pub activity: usize,
    /// Externally active edges; together with `edges` this is `F⁺`.
    pub active: Vec<usize>,
}

impl ForestRecord {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges neither in the forest nor externally active (`F⁻`).
    pub fn inactive(&self, edge_count: usize) -> Vec<usize> {
        let mut plus = vec![false; edge_count];
        for &e in self.edges.iter().chain(&self.active) {
            plus[e] = true;
        }
        (0..edge_count).filter(|&e| !plus[e]).collect()
    }
}

/// A subforest with a label in `1..=t` on each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledForest {
    pub edges: Vec<usize>,
    pub labels: Vec<u32>,
}

impl LabeledForest {
    pub fn weight(&self) -> u64 {
        self.labels.iter().map(|&l| l as u64).sum()
    }
}

/// Counts `N[a][b]` of subforests with `a` edges and external activity `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityTable {
    pub v: usize,
    pub e: usize,
    pub c: usize,
    pub counts: BTreeMap<(u32, u32), u64>,
}

impl ActivityTable {
    pub fn get(&self, size: u32, activity: u32) -> u64 {
        self.counts.get(&(size, activity)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of forests of maximal size `v - c`.
    pub fn maximal(&self) -> u64 {
        let r = (self.v - self.c) as u32;
        self.counts.iter().filter(|((a, _), _)| *a == r).map(|(_, n)| n).sum()
    }

    /// `Σ_F t^|F|`, the number of t-labeled forests.
    pub fn labeled_count(&self, t: u32) -> BigInt {
        self.counts.iter().map(|(&(a, _), &n)| BigInt::from(t).pow(a) * n).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct ActivityTableJson {
    v: usize,
    e: usize,
    c: usize,
    counts: Vec<[u64; 3]>,
}

impl Serialize for ActivityTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ActivityTableJson {
            v: self.v,
            e: self.e,
            c: self.c,
            counts: self.counts.iter().map(|(&(a, b), &n)| [a as u64, b as u64, n]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ActivityTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ActivityTableJson::deserialize(d)?;
        let mut counts = BTreeMap::new();
        for [a, b, n] in raw.counts {
            if n > 0 {
                *counts.entry((a as u32, b as u32)).or_insert(0) += n;
            }
        }
        Ok(ActivityTable { v: raw.v, e: raw.e, c: raw.c, counts })
    }
}

/// Calls `visit` on every acyclic edge subset, in lexicographic order of the
/// sorted index sequences (∅, {0}, {0,1}, …).
pub fn visit_subforests(g: &Multigraph, limit: u64, mut visit: impl FnMut(&[usize])) -> Result<u64> {
    fn go(
        g: &Multigraph,
        start: usize,
        uf: &mut UnionFind,
        current: &mut Vec<usize>,
        seen: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        *seen += 1;
        if *seen > limit {
            return Err(Error::ForestBound { limit });
        }
        visit(current);
        for i in start..g.edge_count() {
            let (a, b) = g.edges()[i];
            if uf.connected(a, b) {
                continue;
            }
            uf.union(a, b);
            current.push(i);
            go(g, i + 1, uf, current, seen, limit, visit)?;
            current.pop();
            uf.rollback();
        }
        Ok(())
    }

    let mut uf = UnionFind::new(g.vertex_count());
    let mut seen = 0;
    go(g, 0, &mut uf, &mut Vec::new(), &mut seen, limit, &mut visit)?;
    Ok(seen)
}

/// Activity of an acyclic subset whose indices are known to be valid.
///
/// Edge `e ∉ F` closes a cycle with `e` minimal exactly when its endpoints are
/// already joined by forest edges of larger index, so one sweep from the top
/// edge down settles every edge.
fn activity_of(g: &Multigraph, in_forest: &[bool]) -> Vec<usize> {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut active = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate().rev() {
        if in_forest[i] {
            uf.union(a, b);
        } else if uf.connected(a, b) {
            active.push(i);
        }
    }
    active.reverse();
    active
}

fn membership(g: &Multigraph, forest: &[usize]) -> Vec<bool> {
    let mut in_forest = vec![false; g.edge_count()];
    for &i in forest {
        in_forest[i] = true;
    }
    in_forest
}

/// Externally active edges of `forest` with respect to the edge order of `g`.
pub fn external_activity(g: &Multigraph, forest: &[usize]) -> Result<(usize, Vec<usize>)> {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut in_forest = vec![false; g.edge_count()];
    for &i in forest {
        let (a, b) = g.edge(i)?;
        if in_forest[i] || !uf.union(a, b) {
            return Err(Error::CyclicSubset);
        }
        in_forest[i] = true;
    }
    let active = activity_of(g, &in_forest);
    Ok((active.len(), active))
}

pub fn enumerate_subforests(g: &Multigraph, limit: u64) -> Result<Vec<ForestRecord>> {
    let mut out = Vec::new();
    visit_subforests(g, limit, |f| {
        let active = activity_of(g, &membership(g, f));
        out.push(ForestRecord { edges: f.to_vec(), activity: active.len(), active });
    })?;
    Ok(out)
}

pub fn activity_table(g: &Multigraph, limit: u64) -> Result<ActivityTable> {
    let mut counts = BTreeMap::new();
    visit_subforests(g, limit, |f| {
        let act = activity_of(g, &membership(g, f)).len();
        *counts.entry((f.len() as u32, act as u32)).or_insert(0) += 1;
    })?;
    Ok(ActivityTable { v: g.vertex_count(), e: g.edge_count(), c: g.component_count(), counts })
}

/// `Σ_F y^(ω(F) + t·act(F))` over t-labeled forests, built from the table as
/// `Σ N[a][b] (y + … + y^t)^a y^(t b)`.
pub fn weight_gf(table: &ActivityTable, t: u32) -> Result<Poly1> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    let block = Poly1::geometric_block(t, 1);
    let mut powers = vec![Poly1::one()];
    let mut out = Poly1::zero();
    for (&(a, b), &n) in &table.counts {
        while powers.len() <= a as usize {
            let next = powers.last().unwrap() * &block;
            powers.push(next);
        }
        out = &out + &powers[a as usize].shift(t * b).scale(&BigInt::from(n));
    }
    Ok(out)
}

/// `dim_k = #{labeled F : ω(F) = t·(e − act(F)) − k}`, i.e. the coefficient of
/// `y^(t·e − k)` in [`weight_gf`].
pub fn hilbert_from_table(table: &ActivityTable, t: u32) -> Result<HilbertFunction> {
    let gf = weight_gf(table, t)?;
    let top = t as usize * table.e;
    let dims = (0..=top)
        .map(|k| {
            let exp = (top - k) as u32;
            to_dim(&gf.coefficient(exp), k as i64)
        })
        .collect::<Result<_>>()?;
    Ok(HilbertFunction::new(t, dims))
}

pub fn hilbert_from_forests(g: &Multigraph, t: u32, limit: u64) -> Result<HilbertFunction> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    hilbert_from_table(&activity_table(g, limit)?, t)
}

/// Calls `visit` on every t-labeled forest of `g`.
pub fn visit_labeled_forests(g: &Multigraph, t: u32, limit: u64, mut visit: impl FnMut(&LabeledForest)) -> Result<u64> {
    if t == 0 {
        return Err(Error::ZeroLabels);
    }
    let mut forests = Vec::new();
    visit_subforests(g, limit, |f| forests.push(f.to_vec()))?;
    let mut seen = 0u64;
    for edges in forests {
        let mut lf = LabeledForest { labels: vec![1; edges.len()], edges };
        loop {
            seen += 1;
            if seen > limit {
                return Err(Error::ForestBound { limit });
            }
            visit(&lf);
            // odometer over labels
            let Some(pos) = lf.labels.iter().rposition(|&l| l < t) else { break };
            lf.labels[pos] += 1;
            for l in &mut lf.labels[pos + 1..] {
                *l = 1;
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneActivityViolation {
    pub edges: Vec<usize>,
    pub labels: Vec<u32>,
    pub expected: i64,
    pub found: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloneActivityReport {
    pub checked: u64,
    pub violations: Vec<CloneActivityViolation>,
}

impl CloneActivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Maps each t-labeled forest of `g` to the forest of the clone graph that
/// picks the copy matching each label, and checks
/// `act_clone = t·act + ω − |F|` for every one.
pub fn clone_activity_check(g: &Multigraph, t: u32, limit: u64) -> Result<CloneActivityReport> {
    let clone = g.clone_graph(t)?;
    let mut violations = Vec::new();
    let mut failure = None;
    let checked = visit_labeled_forests(g, t, limit, |lf| {
        if failure.is_some() {
            return;
        }
        let image: Vec<usize> = lf.edges.iter().zip(&lf.labels).map(|(&e, &l)| clone.clone_index(e, l)).collect();
        let base = activity_of(g, &membership(g, &lf.edges)).len() as i64;
        let expected = t as i64 * base + lf.weight() as i64 - lf.edges.len() as i64;
        match external_activity(&clone.graph, &image) {
            Ok((found, _)) if found as i64 == expected => {}
            Ok((found, _)) => violations.push(CloneActivityViolation {
                edges: lf.edges.clone(),
                labels: lf.labels.clone(),
                expected,
                found: found as i64,
            }),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(CloneActivityReport { checked, violations }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn triangle() -> Multigraph {
        g(3, &[(0, 1), (1, 2), (0, 2)])
    }

    /// Subsets by bitmask, acyclicity by brute-force union-find, activity by
    /// explicit path search in the forest.
    fn brute_table(g: &Multigraph) -> BTreeMap<(u32, u32), u64> {
        let m = g.edge_count();
        let mut counts = BTreeMap::new();
        for mask in 0u32..(1 << m) {
            let f: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let mut uf = UnionFind::new(g.vertex_count());
            if !f.iter().all(|&i| uf.union(g.edges()[i].0, g.edges()[i].1)) {
                continue;
            }
            let mut act = 0;
            for e in (0..m).filter(|i| mask >> i & 1 == 0) {
                let (a, b) = g.edges()[e];
                if let Some(path) = forest_path(g, &f, a, b) {
                    if path.iter().all(|&p| p > e) {
                        act += 1;
                    }
                }
            }
            *counts.entry((f.len() as u32, act)).or_insert(0) += 1;
        }
        counts
    }

    fn forest_path(g: &Multigraph, f: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
        fn dfs(g: &Multigraph, f: &[usize], at: usize, to: usize, via: Option<usize>, path: &mut Vec<usize>) -> bool {
            if at == to {
                return true;
            }
            for &e in f {
                if Some(e) == via {
                    continue;
                }
                let (a, b) = g.edges()[e];
                let next = if a == at {
                    b
                } else if b == at {
                    a
                } else {
                    continue;
                };
                path.push(e);
                if dfs(g, f, next, to, Some(e), path) {
                    return true;
                }
                path.pop();
            }
            false
        }
        let mut path = Vec::new();
        dfs(g, f, from, to, None, &mut path).then_some(path)
    }

    #[test]
    fn triangle_forests() {
        let recs = enumerate_subforests(&triangle(), DEFAULT_MAX_FORESTS).unwrap();
        let sets: Vec<Vec<usize>> = recs.iter().map(|r| r.edges.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
        let rec = recs.iter().find(|r| r.edges == [1, 2]).unwrap();
        assert_eq!((rec.activity, rec.active.clone()), (1, vec![0]));
        assert_eq!(rec.inactive(3), Vec::<usize>::new());
        assert_eq!(recs.iter().find(|r| r.edges == [0, 1]).unwrap().inactive(3), vec![2]);
    }

    #[test]
    fn degenerate_forests() {
        let recs = enumerate_subforests(&g(1, &[(0, 0)]), 10).unwrap();
        assert_eq!(recs, vec![ForestRecord { edges: vec![], activity: 1, active: vec![0] }]);
        let recs = enumerate_subforests(&Multigraph::empty(0), 10).unwrap();
        assert_eq!(recs, vec![ForestRecord { edges: vec![], activity: 0, active: vec![] }]);
    }

    #[test]
    fn forest_bound_is_enforced() {
        assert_eq!(enumerate_subforests(&triangle(), 6), Err(Error::ForestBound { limit: 6 }));
        assert!(enumerate_subforests(&triangle(), 7).is_ok());
    }

    #[test]
    fn activity_examples() {
        assert_eq!(external_activity(&triangle(), &[1, 2]).unwrap().0, 1);
        assert_eq!(external_activity(&triangle(), &[0, 1]).unwrap().0, 0);
        let par = g(2, &[(0, 1), (0, 1)]);
        assert_eq!(external_activity(&par, &[1]).unwrap().0, 1);
        assert_eq!(external_activity(&par, &[0]).unwrap().0, 0);
        assert_eq!(external_activity(&triangle(), &[0, 1, 2]), Err(Error::CyclicSubset));
        assert_eq!(external_activity(&par, &[0, 0]), Err(Error::CyclicSubset));
        assert!(matches!(external_activity(&par, &[4]), Err(Error::InvalidEdge { .. })));
    }

    #[test]
    fn tables() {
        let t = activity_table(&triangle(), DEFAULT_MAX_FORESTS).unwrap();
        let expected: BTreeMap<_, _> = [((0, 0), 1), ((1, 0), 3), ((2, 0), 2), ((2, 1), 1)].into();
        assert_eq!(t.counts, expected);
        assert_eq!(t.counts, brute_table(&triangle()));
        let t = activity_table(&g(2, &[(0, 1)]), 10).unwrap();
        assert_eq!(t.counts, [((0, 0), 1), ((1, 0), 1)].into());
        let t = activity_table(&g(1, &[(0, 0)]), 10).unwrap();
        assert_eq!(t.counts, [((0, 1), 1)].into());
    }

    #[test]
    fn table_matches_brute_force_on_dense_multigraphs() {
        let graphs = [
            g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]),
            g(3, &[(0, 1), (0, 1), (1, 2), (2, 2), (0, 2), (1, 2)]),
            g(5, &[(0, 1), (2, 3), (3, 4), (4, 2), (1, 1)]),
        ];
        for gr in &graphs {
            assert_eq!(activity_table(gr, DEFAULT_MAX_FORESTS).unwrap().counts, brute_table(gr), "{gr}");
        }
    }

    #[test]
    fn table_json() {
        let t = activity_table(&triangle(), 100).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"v":3,"e":3,"c":1,"counts":[[0,0,1],[1,0,3],[2,0,2],[2,1,1]]}"#);
        assert_eq!(serde_json::from_str::<ActivityTable>(&json).unwrap(), t);
    }

    #[test]
    fn weight_generating_functions() {
        let edge = activity_table(&g(2, &[(0, 1)]), 10).unwrap();
        assert_eq!(weight_gf(&edge, 2).unwrap(), Poly1::from_terms([(0, 1), (1, 1), (2, 1)]));
        let lp = activity_table(&g(1, &[(0, 0)]), 10).unwrap();
        assert_eq!(weight_gf(&lp, 1).unwrap(), Poly1::monomial(1, 1));

        // Brute force: materialize every labeled forest.
        let tri = triangle();
        for t in 1..=3 {
            let mut oracle = Poly1::zero();
            visit_labeled_forests(&tri, t, 1000, |lf| {
                let act = external_activity(&tri, &lf.edges).unwrap().0 as u32;
                oracle.add_term(lf.weight() as u32 + t * act, 1.into());
            })
            .unwrap();
            let table = activity_table(&tri, 100).unwrap();
            assert_eq!(weight_gf(&table, t).unwrap(), oracle);
        }
        let table = activity_table(&tri, 100).unwrap();
        assert_eq!(weight_gf(&table, 1).unwrap(), Poly1::from_terms([(0, 1), (1, 3), (2, 2), (3, 1)]));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_from_forests(&triangle(), 1, 100).unwrap().dims, vec![1, 2, 3, 1]);
        assert_eq!(hilbert_from_forests(&g(2, &[(0, 1)]), 2, 100).unwrap().dims, vec![1, 1, 1]);
        assert_eq!(hilbert_from_forests(&g(1, &[(0, 0)]), 5, 100).unwrap().dims, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(hilbert_from_forests(&Multigraph::empty(0), 3, 100).unwrap().dims, vec![1]);
        assert_eq!(hilbert_from_forests(&triangle(), 0, 100), Err(Error::ZeroLabels));
    }

    #[test]
    fn labeled_forest_weights_are_bounded() {
        let t = 3;
        let n = visit_labeled_forests(&triangle(), t, 1000, |lf| {
            let k = lf.edges.len() as u64;
            assert!(k <= lf.weight() && lf.weight() <= t as u64 * k);
        })
        .unwrap();
        // 1 + 3·3 + 3·9
        assert_eq!(n, 37);
    }

    #[test]
    fn clone_activity_examples() {
        let rep = clone_activity_check(&g(2, &[(0, 1)]), 2, 100).unwrap();
        assert_eq!((rep.checked, rep.passed()), (3, true));
        let rep = clone_activity_check(&triangle(), 2, 100).unwrap();
        assert_eq!((rep.checked, rep.passed()), (19, true));
        let rep = clone_activity_check(&triangle(), 1, 100).unwrap();
        assert_eq!((rep.checked, rep.passed()), (7, true));
    }
}
