//! Planar diagrams of knots given by PD codes.
//!
//! A crossing is a tuple `X(a,b,c,d)` of edge labels listed in cyclic order
//! around the crossing, starting at the incoming under-edge. The under-strand
//! runs `a -> c`; the over-strand runs `b -> d` on a positive crossing and
//! `d -> b` on a negative one. With this reading the code
//! `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)` is the all-positive trefoil (writhe
//! +3), and the A-resolution of `X(a,b,c,d)` joins the arcs `(a,d)` and
//! `(b,c)`.
//!
//! Diagrams are normalized on construction: edges are relabelled `1..2c`
//! consecutively along the strand walk that starts at edge 1, so codes that
//! are already labelled that way come back unchanged.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::portgraph::PortGraph;
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD token `{0}`")]
    MalformedToken(String),
    #[error("edge label {label} is used {count} times (expected exactly 2)")]
    LabelCount { label: u32, count: usize },
    #[error("edge label {label} is outside 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("diagram has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("under-strand directions are inconsistent with the strand walk")]
    InconsistentOrientation,
    #[error("rotation system is not planar ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("torus parameters ({p},{q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("edges {0} and {1} do not share a region")]
    NoCommonRegion(u32, u32),
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// One crossing: the PD tuple and its sign under the strand-walk orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [u32; 4],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DiagramJson", try_from = "DiagramJson")]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    label: Option<String>,
    /// `link[d]` is the dart at the other end of the edge leaving dart `d`
    /// (dart = `4 * crossing + position`).
    link: Vec<usize>,
    /// Whether the strand walk enters the crossing through dart `d`.
    incoming: Vec<bool>,
}

/// JSON form `{name, pd: [[a,b,c,d], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default)]
    pub name: Option<String>,
    pub pd: Vec<[u32; 4]>,
}

impl From<KnotDiagram> for DiagramJson {
    fn from(d: KnotDiagram) -> Self {
        DiagramJson {
            name: d.label.clone(),
            pd: d.tuples(),
        }
    }
}

impl TryFrom<DiagramJson> for KnotDiagram {
    type Error = DiagramError;
    fn try_from(j: DiagramJson) -> Result<Self, Self::Error> {
        KnotDiagram::from_tuples(j.pd, j.name)
    }
}

/// Regions of the diagram. Corner `(x, r)` is the corner of crossing `x`
/// between positions `r-1` and `r` (mod 4).
#[derive(Clone, Debug)]
pub struct Faces {
    corner: Vec<usize>,
    count: usize,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn at(&self, crossing: usize, r: usize) -> usize {
        self.corner[4 * crossing + r % 4]
    }

    /// Number of crossing corners on each face.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count];
        for &f in &self.corner {
            s[f] += 1;
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Proper 2-coloring of the regions. White is the class of the corners
/// hugged by A-resolutions at crossing 0, so on an alternating diagram the
/// white regions are exactly the regions bounded by the all-A state circles.
#[derive(Clone, Debug)]
pub struct CheckerboardColoring {
    pub faces: Faces,
    pub color: Vec<Color>,
}

impl CheckerboardColoring {
    pub fn regions(&self) -> usize {
        self.faces.count()
    }

    /// `(white, white, black, black)` regions at a crossing, in corner order.
    pub fn incidences(&self, crossing: usize) -> ([usize; 2], [usize; 2]) {
        let f: [usize; 4] = [0, 1, 2, 3].map(|r| self.faces.at(crossing, r));
        if self.color[f[0]] == Color::White {
            ([f[0], f[2]], [f[1], f[3]])
        } else {
            ([f[1], f[3]], [f[0], f[2]])
        }
    }

    pub fn regions_of(&self, c: Color) -> Vec<usize> {
        (0..self.regions()).filter(|&f| self.color[f] == c).collect()
    }
}

impl KnotDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        KnotDiagram {
            crossings: Vec::new(),
            label: Some("unknot".into()),
            link: Vec::new(),
            incoming: Vec::new(),
        }
    }

    pub fn from_tuples(tuples: Vec<[u32; 4]>, label: Option<String>) -> Result<Self, DiagramError> {
        let c = tuples.len();
        if c == 0 {
            let mut u = KnotDiagram::unknot();
            u.label = label;
            return Ok(u);
        }
        let max = 2 * c as u32;
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); 2 * c];
        for (x, t) in tuples.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                if l == 0 || l > max {
                    return Err(DiagramError::LabelOutOfRange { label: l, max });
                }
                occ[(l - 1) as usize].push(4 * x + p);
            }
        }
        for (i, o) in occ.iter().enumerate() {
            if o.len() != 2 {
                return Err(DiagramError::LabelCount {
                    label: i as u32 + 1,
                    count: o.len(),
                });
            }
        }
        let mut uf = UnionFind::new(c);
        for o in &occ {
            uf.union(o[0] / 4, o[1] / 4);
        }
        if uf.components().1 != 1 {
            return Err(DiagramError::DisconnectedDiagram);
        }
        let mut pg = PortGraph::new(c);
        for o in &occ {
            pg.connect(o[0], o[1]);
        }

        // Walk from edge 1 in the direction that enters every under-strand at
        // position 0.
        let start = {
            let [d0, d1] = [occ[0][0], occ[0][1]];
            let entries = |out: usize| -> (usize, usize, usize) {
                let (mut at_a, mut at_c, mut steps) = (0, 0, 0);
                let mut o = out;
                loop {
                    let inn = pg.link[o];
                    steps += 1;
                    match inn % 4 {
                        0 => at_a += 1,
                        2 => at_c += 1,
                        _ => {}
                    }
                    o = 4 * (inn / 4) + (inn % 4 + 2) % 4;
                    if o == out || steps > 2 * c {
                        break;
                    }
                }
                (at_a, at_c, steps)
            };
            let (a, cc, steps) = entries(d0);
            if steps != 2 * c {
                return Err(DiagramError::MultiComponent {
                    components: pg.count_components(),
                });
            }
            if cc == 0 {
                d0
            } else if a == 0 {
                d1
            } else {
                return Err(DiagramError::InconsistentOrientation);
            }
        };
        let relabelled = pg.trace(start)?;
        let d = Self::assemble(relabelled, label);
        let faces = d.faces().count();
        if faces != c + 2 {
            return Err(DiagramError::NonPlanar {
                faces,
                expected: c + 2,
            });
        }
        Ok(d)
    }

    /// Builds the internal tables from tuples already labelled along the walk.
    fn assemble(tuples: Vec<[u32; 4]>, label: Option<String>) -> Self {
        let c = tuples.len();
        let mut occ = vec![[usize::MAX; 2]; 2 * c];
        for (x, t) in tuples.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                let slot = &mut occ[(l - 1) as usize];
                if slot[0] == usize::MAX {
                    slot[0] = 4 * x + p;
                } else {
                    slot[1] = 4 * x + p;
                }
            }
        }
        let mut link = vec![0; 4 * c];
        for o in &occ {
            link[o[0]] = o[1];
            link[o[1]] = o[0];
        }
        // Edge l runs from its tail to its head; the head is where edge l+1
        // (cyclically) does not leave from. Walk from the tail of edge 1.
        let mut incoming = vec![false; 4 * c];
        let tail1 = {
            // the dart of edge 1 whose opposite position carries edge 2c
            // (the edge entering that crossing) is the tail
            let [d0, d1] = occ[0];
            let opposite = |d: usize| tuples[d / 4][(d % 4 + 2) % 4];
            if opposite(d0) == 2 * c as u32 && opposite(d1) != 2 * c as u32 {
                d0
            } else if opposite(d1) == 2 * c as u32 && opposite(d0) != 2 * c as u32 {
                d1
            } else if d0 % 4 == 0 {
                d1
            } else {
                d0
            }
        };
        let mut out = tail1;
        for _ in 0..2 * c {
            let inn = link[out];
            incoming[inn] = true;
            out = 4 * (inn / 4) + (inn % 4 + 2) % 4;
        }
        let crossings = tuples
            .into_iter()
            .enumerate()
            .map(|(x, edges)| Crossing {
                edges,
                sign: if incoming[4 * x + 1] { 1 } else { -1 },
            })
            .collect();
        KnotDiagram {
            crossings,
            label,
            link,
            incoming,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn tuples(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.edges).collect()
    }

    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                format!("X({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Edge label at a dart.
    pub(crate) fn edge_at(&self, dart: usize) -> u32 {
        self.crossings[dart / 4].edges[dart % 4]
    }

    /// Dart `4x + p` joined to `dart` by an edge.
    pub fn other_end(&self, dart: usize) -> usize {
        self.link[dart]
    }

    pub fn is_incoming(&self, dart: usize) -> bool {
        self.incoming[dart]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// `(positive, negative)` crossing counts.
    pub fn signed_counts(&self) -> (usize, usize) {
        let p = self.crossings.iter().filter(|c| c.sign > 0).count();
        (p, self.crossings.len() - p)
    }

    /// Over- and under-passes alternate along the strand.
    pub fn is_alternating(&self) -> bool {
        // an edge leaving an under-crossing must arrive at an over-crossing
        (0..4 * self.crossing_count())
            .filter(|&d| !self.incoming[d])
            .all(|d| (d % 2) != (self.link[d] % 2))
    }

    /// No crossing meets the same region at two opposite corners.
    pub fn is_reduced(&self) -> bool {
        let f = self.faces();
        (0..self.crossing_count()).all(|x| f.at(x, 0) != f.at(x, 2) && f.at(x, 1) != f.at(x, 3))
    }

    /// Mirror image: every tuple is read in the opposite cyclic direction.
    pub fn mirror(&self) -> KnotDiagram {
        let tuples = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                [a, d, cc, b]
            })
            .collect();
        let label = self.label.as_ref().map(|l| format!("mirror({l})"));
        Self::assemble(tuples, label)
    }

    pub fn faces(&self) -> Faces {
        let n = 4 * self.crossing_count();
        let mut corner = vec![usize::MAX; n];
        let mut count = 0;
        for d in 0..n {
            if corner[d] != usize::MAX {
                continue;
            }
            let mut e = d;
            while corner[e] == usize::MAX {
                corner[e] = count;
                let a = self.link[e];
                e = 4 * (a / 4) + (a % 4 + 1) % 4;
            }
            count += 1;
        }
        if n == 0 {
            count = 2;
        }
        Faces { corner, count }
    }

    pub fn checkerboard(&self) -> CheckerboardColoring {
        let faces = self.faces();
        let k = faces.count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
        for x in 0..self.crossing_count() {
            for r in 0..4 {
                let (f, g) = (faces.at(x, r), faces.at(x, r + 1));
                adj[f].push(g);
                adj[g].push(f);
            }
        }
        let mut color: Vec<Option<Color>> = vec![None; k];
        let root = if self.crossing_count() == 0 { 0 } else { faces.at(0, 0) };
        let mut queue = VecDeque::new();
        color[root] = Some(Color::White);
        queue.push_back(root);
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap_or(Color::White);
            for &g in &adj[f] {
                if color[g].is_none() {
                    color[g] = Some(c.other());
                    queue.push_back(g);
                }
            }
        }
        if self.crossing_count() == 0 {
            color[1] = Some(Color::Black);
        }
        CheckerboardColoring {
            faces,
            color: color.into_iter().map(|c| c.unwrap_or(Color::White)).collect(),
        }
    }

    fn port_graph(&self) -> PortGraph {
        PortGraph {
            over_odd: vec![true; self.crossing_count()],
            link: self.link.clone(),
        }
    }

    /// The boundary of every region, as `(from, to)` dart pairs in traversal
    /// order: the edge leaving dart `from` arrives at dart `to`.
    pub(crate) fn face_boundaries(&self) -> Vec<Vec<(usize, usize)>> {
        let faces = self.faces();
        let mut out = vec![Vec::new(); faces.count()];
        let mut seen = vec![false; 4 * self.crossing_count()];
        for d in 0..seen.len() {
            if seen[d] {
                continue;
            }
            let f = faces.corner[d];
            let mut e = d;
            while !seen[e] {
                seen[e] = true;
                let a = self.link[e];
                out[f].push((e, a));
                e = 4 * (a / 4) + (a % 4 + 1) % 4;
            }
        }
        out
    }

    /// Attaches a flat (blackboard) band between edges `e1` and `e2`, which
    /// must lie on a common region. The crossings are unchanged; the result
    /// is traced again and must be a knot.
    pub fn flat_band(&self, e1: u32, e2: u32) -> Result<KnotDiagram, DiagramError> {
        if e1 == e2 {
            return Err(DiagramError::BadParameter("band needs two distinct edges".into()));
        }
        for boundary in self.face_boundaries() {
            let i = boundary.iter().position(|&(d, _)| self.edge_at(d) == e1);
            let j = boundary.iter().position(|&(d, _)| self.edge_at(d) == e2);
            if let (Some(i), Some(j)) = (i, j) {
                let (p1, q1) = boundary[i];
                let (p2, q2) = boundary[j];
                let mut pg = self.port_graph();
                for d in [p1, q1, p2, q2] {
                    pg.link[d] = usize::MAX;
                }
                pg.connect(p1, q2);
                pg.connect(q1, p2);
                let tuples = pg.trace(0)?;
                return KnotDiagram::from_tuples(tuples, None);
            }
        }
        Err(DiagramError::NoCommonRegion(e1, e2))
    }

    /// Edges bounding each region, in traversal order.
    pub fn region_edges(&self) -> Vec<Vec<u32>> {
        self.face_boundaries()
            .into_iter()
            .map(|b| b.into_iter().map(|(d, _)| self.edge_at(d)).collect())
            .collect()
    }

    /// Connected sum, splicing the last edge of each diagram.
    pub fn connected_sum(&self, other: &KnotDiagram) -> KnotDiagram {
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} # {b}")),
            _ => None,
        };
        if other.crossing_count() == 0 {
            return self.clone();
        }
        if self.crossing_count() == 0 {
            return other.clone();
        }
        let n1 = self.edge_count() as u32;
        let n = n1 + other.edge_count() as u32;
        let mut t1 = self.tuples();
        let mut t2: Vec<[u32; 4]> = other
            .tuples()
            .into_iter()
            .map(|t| t.map(|l| l + n1))
            .collect();
        let head1 = (0..4 * self.crossing_count())
            .find(|&d| self.edge_at(d) == n1 && self.incoming[d])
            .expect("every edge has a head");
        let head2 = (0..4 * other.crossing_count())
            .find(|&d| other.edge_at(d) + n1 == n && other.incoming[d])
            .expect("every edge has a head");
        t1[head1 / 4][head1 % 4] = n;
        t2[head2 / 4][head2 % 4] = n1;
        t1.extend(t2);
        KnotDiagram::from_tuples(t1, label).expect("connected sum of knots is a knot")
    }

    /// Standard pretzel diagram `P(q_1, ..., q_N)`: `N` vertical twist
    /// columns, column `i` carrying `|q_i|` crossings.
    pub fn pretzel(params: &[i64]) -> Result<KnotDiagram, DiagramError> {
        if params.is_empty() || params.contains(&0) {
            return Err(DiagramError::BadParameter(
                "pretzel parameters must be nonzero and nonempty".into(),
            ));
        }
        // ports in cyclic order: 0 = SW, 1 = NW, 2 = NE, 3 = SE
        let total: usize = params.iter().map(|q| q.unsigned_abs() as usize).sum();
        let mut pg = PortGraph::new(total);
        let mut columns = Vec::with_capacity(params.len());
        let mut next = 0;
        for &q in params {
            let m = q.unsigned_abs() as usize;
            let nodes: Vec<usize> = (next..next + m).collect();
            next += m;
            for &v in &nodes {
                pg.over_odd[v] = q < 0;
            }
            for w in nodes.windows(2) {
                pg.connect(4 * w[0] + 1, 4 * w[1]);
                pg.connect(4 * w[0] + 2, 4 * w[1] + 3);
            }
            let (bot, top) = (nodes[0], nodes[m - 1]);
            // (top-left, top-right, bottom-left, bottom-right)
            columns.push((4 * top + 1, 4 * top + 2, 4 * bot, 4 * bot + 3));
        }
        let n = columns.len();
        for i in 0..n {
            let j = (i + 1) % n;
            pg.connect(columns[i].1, columns[j].0);
            pg.connect(columns[i].3, columns[j].2);
        }
        let tuples = pg.trace(columns[0].0)?;
        let name = format!(
            "P({})",
            params.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
        );
        KnotDiagram::from_tuples(tuples, Some(name))
    }

    /// Closure of the positive braid `(s_1 ... s_{q-1})^p`.
    pub fn torus(p: i64, q: i64) -> Result<KnotDiagram, DiagramError> {
        if p < 2 || q < 2 {
            return Err(DiagramError::BadParameter(format!(
                "torus diagram needs p, q >= 2, got ({p},{q})"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(DiagramError::NotCoprime { p, q });
        }
        let (p, q) = (p as usize, q as usize);
        let mut pg = PortGraph::new(p * (q - 1));
        let mut first_bottom: Vec<Option<usize>> = vec![None; q];
        let mut top: Vec<Option<usize>> = vec![None; q];
        let mut v = 0;
        for _ in 0..p {
            for i in 0..q - 1 {
                // over-strand SW -> NE: a positive crossing
                pg.over_odd[v] = false;
                for (pos, port, up) in [(i, 0, 1), (i + 1, 3, 2)] {
                    match top[pos] {
                        Some(t) => pg.connect(t, 4 * v + port),
                        None => first_bottom[pos] = Some(4 * v + port),
                    }
                    top[pos] = Some(4 * v + up);
                }
                v += 1;
            }
        }
        for pos in 0..q {
            if let (Some(t), Some(b)) = (top[pos], first_bottom[pos]) {
                pg.connect(t, b);
            }
        }
        let tuples = pg.trace(first_bottom[0].unwrap_or(0))?;
        KnotDiagram::from_tuples(tuples, Some(format!("T({p},{q})")))
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

/// Parses `X(a,b,c,d)` tuples separated by whitespace or semicolons.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let mut tuples = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ';' || c == ',');
        if rest.is_empty() {
            break;
        }
        let end = rest.find(')').ok_or_else(|| DiagramError::MalformedToken(rest.into()))?;
        let token = &rest[..=end];
        rest = &rest[end + 1..];
        let body = token
            .strip_prefix('X')
            .map(str::trim_start)
            .and_then(|t| t.strip_prefix('('))
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| DiagramError::MalformedToken(token.into()))?;
        let nums: Vec<u32> = body
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| DiagramError::MalformedToken(token.into()))?;
        let tuple: [u32; 4] = nums
            .try_into()
            .map_err(|_| DiagramError::MalformedToken(token.into()))?;
        tuples.push(tuple);
    }
    KnotDiagram::from_tuples(tuples, None)
}

impl std::str::FromStr for KnotDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Free-function forms of the diagram operations.
pub fn writhe(d: &KnotDiagram) -> i64 {
    d.writhe()
}

pub fn pretzel_diagram(params: &[i64]) -> Result<KnotDiagram, DiagramError> {
    KnotDiagram::pretzel(params)
}

pub fn torus_diagram(p: i64, q: i64) -> Result<KnotDiagram, DiagramError> {
    KnotDiagram::torus(p, q)
}

pub fn connected_sum(d1: &KnotDiagram, d2: &KnotDiagram) -> KnotDiagram {
    d1.connected_sum(d2)
}

pub mod fixtures {
    //! Diagrams used throughout the tests and the bundled catalog.
    use super::*;

    pub const TREFOIL_PD: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    /// Alternating 5_2 diagram with writhe -5.
    pub const FIVE_TWO_PD: &str = "X(1,5,2,4) X(3,9,4,8) X(5,1,6,10) X(9,7,10,6) X(7,3,8,2)";
    pub const FIGURE_EIGHT_PD: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    pub fn trefoil() -> KnotDiagram {
        parse_pd(TREFOIL_PD).unwrap().with_label("3_1")
    }

    pub fn five_two() -> KnotDiagram {
        parse_pd(FIVE_TWO_PD).unwrap().with_label("5_2")
    }

    pub fn figure_eight() -> KnotDiagram {
        parse_pd(FIGURE_EIGHT_PD).unwrap().with_label("4_1")
    }

    /// One-crossing diagram of the unknot (a single Reidemeister I kink).
    pub fn kink() -> KnotDiagram {
        parse_pd("X(1,2,2,1)").unwrap().with_label("kink")
    }
}
