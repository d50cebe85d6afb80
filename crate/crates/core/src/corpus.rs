//! Built-in desk-scale test graphs.
//!
//! Together they hit every recurrence case (loops, bridges, ordinary
//! edges), parallel edges, disconnected inputs, and both tree-like and
//! cycle-rich shapes.

use crate::graph::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Multigraph,
}

fn named(name: &str, n: usize, edges: &[(usize, usize)]) -> NamedGraph {
    NamedGraph { name: name.to_string(), graph: Multigraph::new(n, edges.to_vec()).expect("corpus graph") }
}

pub fn builtin() -> Vec<NamedGraph> {
    vec![
        named("empty", 0, &[]),
        named("k1-loop", 1, &[(0, 0)]),
        named("edge", 2, &[(0, 1)]),
        named("double-edge", 2, &[(0, 1), (0, 1)]),
        named("path3", 3, &[(0, 1), (1, 2)]),
        named("triangle", 3, &[(0, 1), (1, 2), (0, 2)]),
        named("triangle-loop", 3, &[(0, 1), (1, 2), (0, 2), (0, 0)]),
        named("two-edges", 4, &[(0, 1), (2, 3)]),
        named("k4", 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        named("c4", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
        named("triple-edge", 2, &[(0, 1), (0, 1), (0, 1)]),
    ]
}

pub fn by_name(name: &str) -> Option<NamedGraph> {
    builtin().into_iter().find(|g| g.name == name)
}
