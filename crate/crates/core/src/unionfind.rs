//! Disjoint sets, plain and with a parity label per element.

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when the two were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Relabels the classes as `0..k` in order of first appearance.
    pub fn components(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}

/// Union-find where each element carries a bit relative to its root; used to
/// test whether a system `x_i + x_j = w_ij (mod 2)` is solvable.
#[derive(Clone, Debug)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parity[x] ^= p;
        self.parent[x] = root;
        (root, self.parity[x])
    }

    /// Imposes `x_a + x_b = w`; returns `false` on contradiction.
    pub fn relate(&mut self, a: usize, b: usize, w: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == w & 1;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ (w & 1);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_components() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(0, 4));
        let (ids, k) = uf.components();
        assert_eq!(k, 3);
        assert_eq!(ids, vec![0, 1, 2, 0, 0]);
    }

    #[test]
    fn odd_cycle_is_contradiction() {
        let mut p = ParityUnionFind::new(3);
        assert!(p.relate(0, 1, 1));
        assert!(p.relate(1, 2, 1));
        assert!(!p.relate(0, 2, 1));
        assert!(p.relate(0, 2, 0));
    }
}
