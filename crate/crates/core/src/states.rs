//! Kauffman states, their circles and the state surfaces they span.
//!
//! A state picks an A- or B-resolution at every crossing. The resolved
//! diagram is a family of disjoint circles; the state surface is the union
//! of disks bounded by the circles, stacked by nesting, joined by one
//! half-twisted band per crossing.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::KnotDiagram;
use crate::unionfind::{ParityUnionFind, UnionFind};

pub const DEFAULT_STATE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("diagram has {crossings} crossings; state enumeration is capped at {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Resolution {
    A,
    B,
}

impl Resolution {
    pub fn flip(self) -> Resolution {
        match self {
            Resolution::A => Resolution::B,
            Resolution::B => Resolution::A,
        }
    }
}

/// A resolution of every crossing, together with the resulting circles.
#[derive(Clone, Debug)]
pub struct State<'a> {
    diagram: &'a KnotDiagram,
    choices: Vec<Resolution>,
    circle_of_edge: Vec<usize>,
    circle_count: usize,
    depth: Vec<usize>,
}

/// Where a point of the `(e, b1)` plane came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    StateSurface,
    Twisted,
    Pinch,
    Edgepath,
    BandMove,
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub e: i64,
    pub b1: i64,
    pub orientable: bool,
    pub provenance: Provenance,
}

impl SurfacePoint {
    pub fn new(e: i64, b1: i64, orientable: bool, provenance: Provenance) -> Self {
        SurfacePoint {
            e,
            b1,
            orientable,
            provenance,
        }
    }

    /// The normal Euler number of a spanning surface is `2 b1 mod 4`.
    pub fn parity_ok(&self) -> bool {
        (self.e - 2 * self.b1).rem_euclid(4) == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// Adds `k` half-twisted bands of one sign (a boundary connected sum with
/// `k` unknotted Möbius bands).
pub fn add_twisted_band(p: SurfacePoint, sign: TwistSign, k: u32) -> SurfacePoint {
    let k = k as i64;
    let de = match sign {
        TwistSign::Positive => 2 * k,
        TwistSign::Negative => -2 * k,
    };
    SurfacePoint {
        e: p.e + de,
        b1: p.b1 + k,
        orientable: p.orientable && k == 0,
        provenance: Provenance::Twisted,
    }
}

#[derive(Clone, Debug)]
pub struct StateSurface<'a> {
    pub state: State<'a>,
    pub b1: i64,
    pub e: i64,
    pub orientable: bool,
}

impl StateSurface<'_> {
    pub fn point(&self) -> SurfacePoint {
        SurfacePoint::new(self.e, self.b1, self.orientable, Provenance::StateSurface)
    }

    pub fn report(&self) -> StateReport {
        StateReport {
            choices: self.state.choice_string(),
            circles: self.state.circle_count(),
            b1: self.b1,
            e: self.e,
            orientable: self.orientable,
            basic: self.state.is_basic(),
        }
    }
}

/// JSON row for one state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateReport {
    pub choices: String,
    pub circles: usize,
    pub b1: i64,
    pub e: i64,
    pub orientable: bool,
    pub basic: bool,
}

/// Edges (0-based) at the two arcs a resolution leaves at a crossing; the
/// arcs are `(p0, p3), (p1, p2)` for A and `(p0, p1), (p2, p3)` for B.
fn joined_pairs(edges: [u32; 4], r: Resolution) -> [(usize, usize); 2] {
    let e = edges.map(|l| (l - 1) as usize);
    match r {
        Resolution::A => [(e[0], e[3]), (e[1], e[2])],
        Resolution::B => [(e[0], e[1]), (e[2], e[3])],
    }
}

impl<'a> State<'a> {
    /// # Panics
    /// If `choices` does not have one entry per crossing.
    pub fn new(diagram: &'a KnotDiagram, choices: Vec<Resolution>) -> Self {
        assert_eq!(
            choices.len(),
            diagram.crossing_count(),
            "one resolution per crossing"
        );
        let (circle_of_edge, circle_count) = circles(diagram, &choices);
        let mut s = State {
            diagram,
            choices,
            circle_of_edge,
            circle_count,
            depth: Vec::new(),
        };
        s.depth = s.nesting();
        s
    }

    /// Bit `i` set means crossing `i` is B-resolved.
    pub fn from_mask(diagram: &'a KnotDiagram, mask: u64) -> Self {
        let choices = (0..diagram.crossing_count())
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Resolution::B
                } else {
                    Resolution::A
                }
            })
            .collect();
        State::new(diagram, choices)
    }

    pub fn all_a(diagram: &'a KnotDiagram) -> Self {
        State::new(diagram, vec![Resolution::A; diagram.crossing_count()])
    }

    pub fn all_b(diagram: &'a KnotDiagram) -> Self {
        State::new(diagram, vec![Resolution::B; diagram.crossing_count()])
    }

    /// The oriented smoothing everywhere: A at positive crossings, B at
    /// negative ones. Its circles are the Seifert circles.
    pub fn seifert(diagram: &'a KnotDiagram) -> Self {
        let choices = diagram
            .crossings()
            .iter()
            .map(|c| if c.sign > 0 { Resolution::A } else { Resolution::B })
            .collect();
        State::new(diagram, choices)
    }

    pub fn diagram(&self) -> &'a KnotDiagram {
        self.diagram
    }

    pub fn choices(&self) -> &[Resolution] {
        &self.choices
    }

    pub fn mask(&self) -> u64 {
        self.choices
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == Resolution::B)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn choice_string(&self) -> String {
        self.choices
            .iter()
            .map(|r| match r {
                Resolution::A => 'A',
                Resolution::B => 'B',
            })
            .collect()
    }

    pub fn a_count(&self) -> usize {
        self.choices.iter().filter(|r| **r == Resolution::A).count()
    }

    pub fn b_count(&self) -> usize {
        self.choices.len() - self.a_count()
    }

    /// `|s|`.
    pub fn circle_count(&self) -> usize {
        self.circle_count
    }

    /// Circle carrying edge `label`.
    pub fn circle_of(&self, label: u32) -> usize {
        self.circle_of_edge[(label - 1) as usize]
    }

    pub fn nesting_depth(&self) -> &[usize] {
        &self.depth
    }

    /// The two circles joined by the band at crossing `x`.
    pub fn band_ends(&self, x: usize) -> (usize, usize) {
        let [(a, _), (b, _)] = joined_pairs(self.diagram.crossings()[x].edges, self.choices[x]);
        (self.circle_of_edge[a], self.circle_of_edge[b])
    }

    /// No band joins a circle to itself.
    pub fn is_basic(&self) -> bool {
        (0..self.choices.len()).all(|x| {
            let (a, b) = self.band_ends(x);
            a != b
        })
    }

    /// Depth of each circle in the region/circle tree, rooted at the region
    /// containing the largest face of the diagram.
    fn nesting(&self) -> Vec<usize> {
        let d = self.diagram;
        if d.crossing_count() == 0 {
            return vec![0];
        }
        let faces = d.faces();
        let mut uf = UnionFind::new(faces.count());
        for (x, r) in self.choices.iter().enumerate() {
            match r {
                Resolution::A => uf.union(faces.at(x, 1), faces.at(x, 3)),
                Resolution::B => uf.union(faces.at(x, 0), faces.at(x, 2)),
            };
        }
        let (region_of_face, regions) = uf.components();
        let mut sides: Vec<Vec<usize>> = vec![Vec::new(); self.circle_count];
        let mut touching: Vec<Vec<usize>> = vec![Vec::new(); regions];
        for dart in 0..4 * d.crossing_count() {
            let circle = self.circle_of_edge[(d.edge_at(dart) - 1) as usize];
            let (x, p) = (dart / 4, dart % 4);
            for r in [region_of_face[faces.at(x, p)], region_of_face[faces.at(x, p + 1)]] {
                if !sides[circle].contains(&r) {
                    sides[circle].push(r);
                    touching[r].push(circle);
                }
            }
        }
        let sizes = faces.sizes();
        let biggest = (0..faces.count())
            .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
            .unwrap_or(0);
        let root = region_of_face[biggest];
        let mut region_depth = vec![usize::MAX; regions];
        let mut depth = vec![usize::MAX; self.circle_count];
        region_depth[root] = 0;
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            for &c in &touching[r] {
                if depth[c] != usize::MAX {
                    continue;
                }
                depth[c] = region_depth[r];
                for &other in &sides[c] {
                    if region_depth[other] == usize::MAX {
                        region_depth[other] = region_depth[r] + 1;
                        stack.push(other);
                    }
                }
            }
        }
        depth
    }

    /// Whether the state surface is orientable: propagate an orientation
    /// across the bands, where each band flips it and each change of nesting
    /// parity flips it back.
    pub fn orientable(&self) -> bool {
        let mut puf = ParityUnionFind::new(self.circle_count);
        for x in 0..self.choices.len() {
            let (a, b) = self.band_ends(x);
            if a == b {
                return false;
            }
            let w = 1 ^ ((self.depth[a] + self.depth[b]) % 2) as u8;
            if !puf.relate(a, b, w) {
                return false;
            }
        }
        true
    }

    pub fn surface(self) -> StateSurface<'a> {
        let c = self.diagram.crossing_count() as i64;
        let b1 = 1 + c - self.circle_count as i64;
        let e = self.a_count() as i64 - self.b_count() as i64 - self.diagram.writhe();
        let orientable = self.orientable();
        StateSurface {
            state: self,
            b1,
            e,
            orientable,
        }
    }
}

fn circles(d: &KnotDiagram, choices: &[Resolution]) -> (Vec<usize>, usize) {
    if d.crossing_count() == 0 {
        return (Vec::new(), 1);
    }
    let mut uf = UnionFind::new(d.edge_count());
    for (c, &r) in d.crossings().iter().zip(choices) {
        for (a, b) in joined_pairs(c.edges, r) {
            uf.union(a, b);
        }
    }
    uf.components()
}

pub fn resolve<'a>(d: &'a KnotDiagram, choices: &[Resolution]) -> State<'a> {
    State::new(d, choices.to_vec())
}

pub fn state_surface<'a>(s: State<'a>) -> StateSurface<'a> {
    s.surface()
}

pub fn orientability(s: &State<'_>) -> bool {
    s.orientable()
}

/// Bitmasks of all states (or only basic ones), ascending.
pub fn state_masks(d: &KnotDiagram, basic_only: bool, cap: usize) -> Result<Vec<u64>, StateError> {
    let c = d.crossing_count();
    if c > cap || c >= 64 {
        return Err(StateError::TooManyCrossings { crossings: c, cap });
    }
    if !basic_only {
        return Ok((0..1u64 << c).collect());
    }
    let edges: Vec<[u32; 4]> = d.tuples();
    let mut out = Vec::new();
    basic_dfs(&edges, 0, 0, UnionFind::new(d.edge_count().max(1)), &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Joining arcs only merges circles, so a band that already has both ends
/// on one circle rules out every completion of the partial state.
fn basic_dfs(edges: &[[u32; 4]], x: usize, mask: u64, uf: UnionFind, out: &mut Vec<u64>) {
    if x == edges.len() {
        out.push(mask);
        return;
    }
    for (bit, r) in [(0, Resolution::A), (1, Resolution::B)] {
        let mut u = uf.clone();
        for (a, b) in joined_pairs(edges[x], r) {
            u.union(a, b);
        }
        let mask = mask | bit << x;
        let ok = (0..=x).all(|y| {
            let ry = if mask >> y & 1 == 1 { Resolution::B } else { Resolution::A };
            let [(a, _), (b, _)] = joined_pairs(edges[y], ry);
            u.find(a) != u.find(b)
        });
        if ok {
            basic_dfs(edges, x + 1, mask, u, out);
        }
    }
}

pub fn enumerate_states(d: &KnotDiagram, basic_only: bool) -> Result<Vec<State<'_>>, StateError> {
    enumerate_states_capped(d, basic_only, DEFAULT_STATE_CAP)
}

pub fn enumerate_states_capped(
    d: &KnotDiagram,
    basic_only: bool,
    cap: usize,
) -> Result<Vec<State<'_>>, StateError> {
    let masks = state_masks(d, basic_only, cap)?;
    Ok(masks.into_par_iter().map(|m| State::from_mask(d, m)).collect())
}

/// `(e, b1, orientable)` of every state surface, in mask order.
pub fn surface_points(
    d: &KnotDiagram,
    basic_only: bool,
    cap: usize,
) -> Result<Vec<SurfacePoint>, StateError> {
    let masks = state_masks(d, basic_only, cap)?;
    Ok(masks
        .into_par_iter()
        .map(|m| State::from_mask(d, m).surface().point())
        .collect())
}

/// Laurent polynomial in `A`: exponent to coefficient, zeros dropped.
pub type Laurent = BTreeMap<i64, i64>;

fn laurent_mul(x: &Laurent, y: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, a) in x {
        for (j, b) in y {
            *out.entry(i + j).or_insert(0) += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Kauffman bracket `Σ A^(a-b) δ^(|s|-1)` with `δ = -A² - A⁻²`, normalized by
/// `(-A³)^(-w)`. An invariant of the knot, and `{0: 1}` on unknot diagrams.
pub fn normalized_bracket(d: &KnotDiagram, cap: usize) -> Result<Laurent, StateError> {
    let masks = state_masks(d, false, cap)?;
    let c = d.crossing_count();
    let circles: Vec<(i64, usize)> = masks
        .into_par_iter()
        .map(|m| {
            let s = State::from_mask(d, m);
            (s.a_count() as i64 - s.b_count() as i64, s.circle_count())
        })
        .collect();
    let delta: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut powers = vec![Laurent::from([(0, 1)])];
    for i in 1..=c + 1 {
        let next = laurent_mul(&powers[i - 1], &delta);
        powers.push(next);
    }
    let mut sum = Laurent::new();
    for (shift, n) in circles {
        for (k, v) in &powers[n - 1] {
            *sum.entry(k + shift).or_insert(0) += v;
        }
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out: Laurent = sum
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(k, v)| (k - 3 * w, sign * v))
        .collect();
    out.retain(|_, c| *c != 0);
    Ok(out)
}
