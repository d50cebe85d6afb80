//! Disjoint-set forest used for cycle detection during forest enumeration.
//!
//! Union by size without path compression, so every union can be undone in
//! O(1). Backtracking enumerators push a union, recurse, then roll it back.

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], history: Vec::new(), components: n }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Merges the classes of `a` and `b`. Returns `false` if they were already
    /// joined. Either way one history entry is recorded for [`rollback`].
    ///
    /// [`rollback`]: UnionFind::rollback
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.components -= 1;
        self.history.push(Some((big, small)));
        true
    }

    /// Undoes the most recent [`union`](UnionFind::union).
    pub fn rollback(&mut self) {
        if let Some(Some((big, small))) = self.history.pop() {
            self.parent[small] = small;
            self.size[big] -= self.size[small];
            self.components += 1;
        }
    }
}
