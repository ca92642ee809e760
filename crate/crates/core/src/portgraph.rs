//! 4-valent port graphs: the common backend for diagram generators, splices
//! and band moves. A port graph is traced into PD tuples.

use crate::diagram::DiagramError;

/// Dart index = `4 * node + port`. Ports are numbered in the cyclic order
/// used for PD tuples; `over_odd[v]` says the over-strand uses ports 1 and 3.
#[derive(Clone, Debug)]
pub(crate) struct PortGraph {
    pub over_odd: Vec<bool>,
    pub link: Vec<usize>,
}

impl PortGraph {
    pub fn new(nodes: usize) -> Self {
        PortGraph {
            over_odd: vec![true; nodes],
            link: vec![usize::MAX; 4 * nodes],
        }
    }

    pub fn connect(&mut self, a: usize, b: usize) {
        debug_assert!(self.link[a] == usize::MAX && self.link[b] == usize::MAX);
        self.link[a] = b;
        self.link[b] = a;
    }

    pub fn nodes(&self) -> usize {
        self.over_odd.len()
    }

    /// Labels edges consecutively along the knot, starting by leaving
    /// `start` (a dart), and emits one tuple per node beginning at the
    /// incoming under-port.
    pub fn trace(&self, start: usize) -> Result<Vec<[u32; 4]>, DiagramError> {
        let n = self.nodes();
        if self.link.iter().any(|&l| l == usize::MAX) {
            return Err(DiagramError::Malformed("dangling port".into()));
        }
        let mut label = vec![0u32; 4 * n];
        let mut incoming = vec![false; 4 * n];
        let mut next = 1u32;
        let mut out = start;
        loop {
            if label[out] != 0 {
                break;
            }
            let inn = self.link[out];
            label[out] = next;
            label[inn] = next;
            incoming[inn] = true;
            next += 1;
            out = 4 * (inn / 4) + (inn % 4 + 2) % 4;
        }
        let traced = (next - 1) as usize;
        if traced != 2 * n {
            let comps = self.count_components();
            return Err(DiagramError::MultiComponent { components: comps });
        }
        let mut tuples = Vec::with_capacity(n);
        for v in 0..n {
            let under = if self.over_odd[v] { [0, 2] } else { [1, 3] };
            let first = if incoming[4 * v + under[0]] {
                under[0]
            } else {
                under[1]
            };
            let t = [0, 1, 2, 3].map(|k| label[4 * v + (first + k) % 4]);
            tuples.push(t);
        }
        Ok(tuples)
    }

    pub fn count_components(&self) -> usize {
        let mut seen = vec![false; self.link.len()];
        let mut comps = 0;
        for s in 0..self.link.len() {
            if seen[s] {
                continue;
            }
            comps += 1;
            let mut out = s;
            while !seen[out] {
                seen[out] = true;
                let inn = self.link[out];
                seen[inn] = true;
                out = 4 * (inn / 4) + (inn % 4 + 2) % 4;
            }
        }
        comps
    }
}
