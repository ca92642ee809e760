//! Edgepath systems for pretzel knots with odd-length strands.
//!
//! Vertices of the edgepath diagram are `<p/q> = (1 - 1/q, p/q)`, the
//! horizontal endpoints `<p/q>° = (1, p/q)` and `<1/0> = (-1, 0)`. Paths are
//! stored in traversal order, right to left; they print left to right.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geography::{gamma_rational, GeographyRegion, Wedge};
use crate::rational::{self, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdgepathError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramVertex {
    Interior { p: i64, q: i64 },
    Horizontal { p: i64, q: i64 },
    Infinity,
}

impl DiagramVertex {
    pub fn interior(p: i64, q: i64) -> Self {
        let g = p.gcd(&q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        DiagramVertex::Interior {
            p: s * p / g,
            q: s * q / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        DiagramVertex::Interior { p: n, q: 1 }
    }

    /// `p/q` of the vertex; `1/0` at infinity.
    pub fn slope(&self) -> (i64, i64) {
        match *self {
            DiagramVertex::Interior { p, q } | DiagramVertex::Horizontal { p, q } => (p, q),
            DiagramVertex::Infinity => (1, 0),
        }
    }

    pub fn uv(&self) -> (Rational, Rational) {
        match *self {
            DiagramVertex::Interior { p, q } => (int(1) - Rational::new(1, q), Rational::new(p, q)),
            DiagramVertex::Horizontal { p, q } => (int(1), Rational::new(p, q)),
            DiagramVertex::Infinity => (int(-1), int(0)),
        }
    }
}

impl fmt::Display for DiagramVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DiagramVertex::Interior { p, q: 1 } => write!(f, "<{p}>"),
            DiagramVertex::Interior { p, q } => write!(f, "<{p}/{q}>"),
            DiagramVertex::Horizontal { p, q: 1 } => write!(f, "<{p}>°"),
            DiagramVertex::Horizontal { p, q } => write!(f, "<{p}/{q}>°"),
            DiagramVertex::Infinity => write!(f, "<1/0>"),
        }
    }
}

/// Vertices joined by an edge of the diagram.
fn adjacent(a: (i64, i64), b: (i64, i64)) -> bool {
    (a.0 * b.1 - a.1 * b.0).abs() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// A whole edge `left - right` (including horizontal and infinity edges).
    Complete { left: DiagramVertex, right: DiagramVertex },
    /// Vertical edge at `u = 0` between integers, traversed `from -> to`.
    Vertical { from: i64, to: i64 },
    /// `(λ<left> + (1-λ)<right>) - <right>`, with `λ = fraction`.
    Partial {
        left: DiagramVertex,
        right: DiagramVertex,
        fraction: Rational,
    },
}

impl Edge {
    fn is_infinity(&self) -> bool {
        matches!(self, Edge::Complete { left: DiagramVertex::Infinity, .. })
    }

    fn is_horizontal(&self) -> bool {
        matches!(self, Edge::Complete { right: DiagramVertex::Horizontal { .. }, .. })
    }

    /// `ε(e) = ps - qr`; vertical edges are `+1` going up.
    pub fn sign(&self) -> i64 {
        match *self {
            Edge::Complete { left, right } | Edge::Partial { left, right, .. } => {
                let (p, q) = left.slope();
                let (r, s) = right.slope();
                p * s - q * r
            }
            Edge::Vertical { from, to } => (to - from).signum(),
        }
    }

    /// Length counted in the half-plane `u >= 0`.
    pub fn length(&self) -> Rational {
        match *self {
            Edge::Partial { fraction, .. } => fraction,
            _ if self.is_infinity() || self.is_horizontal() => int(0),
            _ => int(1),
        }
    }

    /// `τ(e) = -2 ε(e) |e|`.
    pub fn twist(&self) -> Rational {
        if self.is_infinity() || self.is_horizontal() {
            return int(0);
        }
        self.length() * (-2 * self.sign())
    }

    /// Vertex reached by traversing the edge (its left end), when it is one.
    fn left_vertex(&self) -> Option<DiagramVertex> {
        match *self {
            Edge::Complete { left, .. } => Some(left),
            Edge::Vertical { to, .. } => Some(DiagramVertex::integer(to)),
            Edge::Partial { .. } => None,
        }
    }

    fn right_vertex(&self) -> DiagramVertex {
        match *self {
            Edge::Complete { right, .. } | Edge::Partial { right, .. } => right,
            Edge::Vertical { from, .. } => DiagramVertex::integer(from),
        }
    }

    fn left_point(&self) -> (Rational, Rational) {
        match *self {
            Edge::Partial { left, right, fraction } => {
                let (p, q) = left.slope();
                let (r, s) = right.slope();
                let den = fraction * q + (int(1) - fraction) * s;
                let v = (fraction * p + (int(1) - fraction) * r) / den;
                (int(1) - den.recip(), v)
            }
            _ => self.left_vertex().map(|v| v.uv()).unwrap_or((int(0), int(0))),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Edge::Complete { left, right } => write!(f, "{left}-{right}"),
            Edge::Vertical { from, to } => write!(f, "<{to}>|<{from}>"),
            Edge::Partial { left, right, fraction } => {
                write!(f, "({fraction}{left}+{}{right})-{right}", int(1) - fraction)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Sigma,
    Rho,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edgepath {
    pub tangle: i64,
    pub shape: Shape,
    /// Right to left.
    pub edges: Vec<Edge>,
    /// Position of a constant path (one that never leaves the horizontal
    /// edge).
    pub constant_at: Option<(Rational, Rational)>,
}

/// `σ_p = <0> - <1/p>` or `ρ_p = <±1> - <±1/2> - ... - <±1/|p|>`.
pub fn basic_edgepath(p: i64, shape: Shape) -> Result<Edgepath, EdgepathError> {
    if p.abs() < 2 {
        return Err(EdgepathError::BadParameter(format!("|p| must be at least 2, got {p}")));
    }
    let (s, m) = (p.signum(), p.abs());
    let edges = match shape {
        Shape::Sigma => vec![Edge::Complete {
            left: DiagramVertex::integer(0),
            right: DiagramVertex::interior(s, m),
        }],
        Shape::Rho => (2..=m)
            .rev()
            .map(|k| Edge::Complete {
                left: DiagramVertex::interior(s, k - 1),
                right: DiagramVertex::interior(s, k),
            })
            .collect(),
    };
    Ok(Edgepath {
        tangle: p,
        shape,
        edges,
        constant_at: None,
    })
}

impl Edgepath {
    pub fn length(&self) -> Rational {
        self.edges.iter().map(Edge::length).sum()
    }

    pub fn twist(&self) -> Rational {
        self.edges.iter().map(Edge::twist).sum()
    }

    /// Left endpoint `(u, v)`.
    pub fn endpoint(&self) -> (Rational, Rational) {
        if let Some(pt) = self.constant_at {
            return pt;
        }
        self.edges.last().map(Edge::left_point).unwrap_or((int(0), int(0)))
    }

    fn start(&self) -> DiagramVertex {
        DiagramVertex::interior(self.tangle.signum(), self.tangle.abs())
    }

    /// `v` of the basic path extended by its horizontal edge, at `u` in
    /// `[0, 1]`.
    fn extended_v(&self, u: Rational) -> Rational {
        let (u1, v1) = self.start().uv();
        if u >= u1 {
            return v1;
        }
        for e in &self.edges {
            if let Edge::Complete { left, right } = e {
                let (ul, vl) = left.uv();
                let (ur, vr) = right.uv();
                if ul <= u && u <= ur {
                    return vl + (vr - vl) * (u - ul) / (ur - ul);
                }
            }
        }
        self.endpoint().1
    }

    /// `u` of every vertex on the extended path.
    fn breakpoints(&self) -> Vec<Rational> {
        let mut out = vec![int(1)];
        for e in &self.edges {
            out.push(e.right_vertex().uv().0);
            out.push(e.left_point().0);
        }
        out
    }

    /// Traversal is monotone right to left, never retraces and never runs
    /// along two sides of one triangle in succession.
    pub fn is_valid(&self) -> bool {
        for e in &self.edges {
            if let Edge::Complete { left, right } = e {
                if !adjacent(left.slope(), right.slope()) && !e.is_horizontal() {
                    return false;
                }
            }
            if let Edge::Vertical { from, to } = e {
                if (from - to).abs() != 1 {
                    return false;
                }
            }
        }
        for w in self.edges.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let Some(mid) = a.left_vertex() else {
                return false;
            };
            if b.right_vertex() != mid {
                return false;
            }
            if b.left_point().0 > a.right_vertex().uv().0 {
                return false;
            }
            let x = a.right_vertex();
            if let Some(z) = b.left_vertex() {
                if z == x || adjacent(x.slope(), z.slope()) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Edgepath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.shape {
            Shape::Sigma => "sigma",
            Shape::Rho => "rho",
        };
        let ups = self.edges.iter().filter(|e| matches!(e, Edge::Vertical { from, to } if to > from)).count();
        let downs = self.edges.iter().filter(|e| matches!(e, Edge::Vertical { from, to } if to < from)).count();
        write!(f, "{name}{}{}{}", self.tangle, "+".repeat(ups), "-".repeat(downs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemType {
    Basic,
    I,
    II,
    III,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgepathSystem {
    pub params: Vec<i64>,
    /// Basic system index: strand 0 is the most significant bit, a set bit
    /// means ρ.
    pub index: usize,
    pub kind: SystemType,
    pub paths: Vec<Edgepath>,
    pub u0: Option<Rational>,
    /// `#Λ`.
    pub sheets: i64,
    /// `τ(Λ_S)` of the all-σ Seifert system.
    pub seifert_twist: Rational,
}

fn seifert_twist(params: &[i64]) -> Rational {
    params.iter().map(|&p| int(2 * p.signum())).sum()
}

/// All `2^N` assignments of σ or ρ to the strands.
pub fn enumerate_basic_systems(params: &[i64]) -> Result<Vec<EdgepathSystem>, EdgepathError> {
    let n = params.len();
    if n >= 20 {
        return Err(EdgepathError::BadParameter("too many strands".into()));
    }
    let tau_s = seifert_twist(params);
    (0..1usize << n)
        .map(|index| {
            let paths = params
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let rho = index >> (n - 1 - i) & 1 == 1;
                    basic_edgepath(p, if rho { Shape::Rho } else { Shape::Sigma })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(EdgepathSystem {
                params: params.to_vec(),
                index,
                kind: SystemType::Basic,
                paths,
                u0: None,
                sheets: 1,
                seifert_twist: tau_s,
            })
        })
        .collect()
}

impl EdgepathSystem {
    pub fn name(&self) -> String {
        match self.kind {
            SystemType::Basic => format!("~{}", self.index),
            SystemType::I => "I".into(),
            SystemType::II => format!("II_{}", self.index),
            SystemType::III => format!("III_{}", self.index),
        }
    }

    /// `|Λ|`.
    pub fn length(&self) -> Rational {
        self.paths.iter().map(Edgepath::length).sum()
    }

    /// `τ(Λ)`.
    pub fn twist(&self) -> Rational {
        self.paths.iter().map(Edgepath::twist).sum()
    }

    /// Sum over paths of the extended `v` at `u`.
    pub fn extended_sum(&self, u: Rational) -> Rational {
        self.paths.iter().map(|p| p.extended_v(u)).sum()
    }

    pub fn euler_characteristic(&self) -> Option<Rational> {
        let len = self.length();
        match self.kind {
            SystemType::Basic => None,
            SystemType::I => {
                let n = int(self.paths.len() as i64);
                let u0 = self.u0?;
                let per_sheet = -len + n - (n - int(2)) / (int(1) - u0);
                Some(per_sheet * self.sheets)
            }
            SystemType::II => Some(int(2) - len),
            SystemType::III => Some(-len),
        }
    }

    pub fn b1(&self) -> Option<Rational> {
        self.euler_characteristic().map(|chi| int(1) - chi)
    }

    /// `e(Λ) = τ(Λ_S) - τ(Λ)`.
    pub fn normal_euler(&self) -> Rational {
        self.seifert_twist - self.twist()
    }

    pub fn is_valid(&self) -> bool {
        self.paths.iter().all(Edgepath::is_valid)
    }
}

impl fmt::Display for EdgepathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paths: Vec<String> = self.paths.iter().map(|p| p.to_string()).collect();
        write!(f, "{}: {{{}}}", self.name(), paths.join(", "))
    }
}

/// Roots in `(0, 1)` of the piecewise-linear sum of the extended paths.
pub fn type_i_roots(system: &EdgepathSystem) -> Vec<Rational> {
    let mut bps: Vec<Rational> = system.paths.iter().flat_map(|p| p.breakpoints()).collect();
    bps.retain(|u| *u >= int(0) && *u <= int(1));
    bps.sort();
    bps.dedup();
    let mut roots = Vec::new();
    for w in bps.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (system.extended_sum(a), system.extended_sum(b));
        if fa.is_zero() && fb.is_zero() {
            continue;
        }
        if fa.is_zero() {
            roots.push(a);
        } else if fb.is_zero() {
            roots.push(b);
        } else if fa.signum() != fb.signum() {
            roots.push(a + fa * (b - a) / (fa - fb));
        }
    }
    roots.retain(|u| *u > int(0) && *u < int(1));
    roots.sort();
    roots.dedup();
    roots
}

/// Fraction `λ` of the partial edge `left - right` ending at `u0`.
fn partial_fraction(left: DiagramVertex, right: DiagramVertex, u0: Rational) -> Rational {
    let q = int(left.slope().1);
    let s = int(right.slope().1);
    let w = int(1) - u0;
    (s * w - int(1)) / (w * (s - q))
}

fn truncate(path: &Edgepath, u0: Rational) -> Edgepath {
    let (u_start, v_start) = path.start().uv();
    if u0 > u_start {
        return Edgepath {
            edges: Vec::new(),
            constant_at: Some((u0, v_start)),
            ..path.clone()
        };
    }
    let mut edges = Vec::new();
    for e in &path.edges {
        let Edge::Complete { left, right } = *e else {
            continue;
        };
        let (ul, ur) = (left.uv().0, right.uv().0);
        if ul >= u0 {
            edges.push(*e);
        } else if ur > u0 {
            edges.push(Edge::Partial {
                left,
                right,
                fraction: partial_fraction(left, right, u0),
            });
        }
    }
    Edgepath {
        edges,
        ..path.clone()
    }
}

pub fn complete_type_i(systems: &[EdgepathSystem]) -> Vec<EdgepathSystem> {
    let mut out = Vec::new();
    for s in systems {
        for u0 in type_i_roots(s) {
            let paths: Vec<Edgepath> = s.paths.iter().map(|p| truncate(p, u0)).collect();
            let sheets = paths
                .iter()
                .flat_map(|p| p.edges.iter())
                .map(|e| e.length().denom().abs())
                .fold(1, |acc: i64, d| acc.lcm(&d));
            out.push(EdgepathSystem {
                kind: SystemType::I,
                paths,
                u0: Some(u0),
                sheets,
                ..s.clone()
            });
        }
    }
    out
}

/// Count vectors summing to `m`, largest first entries first.
fn compositions(m: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if m == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=m).rev() {
        for mut rest in compositions(m - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn with_verticals(path: &Edgepath, count: usize, dir: i64) -> Edgepath {
    let mut p = path.clone();
    let mut at = path.endpoint().1.to_integer();
    for _ in 0..count {
        p.edges.push(Edge::Vertical { from: at, to: at + dir });
        at += dir;
    }
    p
}

/// Every valid placement of the minimal vertical edges making the endpoint
/// heights sum to zero.
pub fn type_ii_placements(s: &EdgepathSystem) -> Vec<EdgepathSystem> {
    let total: Rational = s.paths.iter().map(|p| p.endpoint().1).sum();
    let m = total.abs().to_integer() as usize;
    let dir = -total.signum().to_integer();
    compositions(m, s.paths.len())
        .into_iter()
        .map(|counts| {
            let paths = s
                .paths
                .iter()
                .zip(&counts)
                .map(|(p, &c)| with_verticals(p, c, dir))
                .collect();
            EdgepathSystem {
                kind: SystemType::II,
                paths,
                ..s.clone()
            }
        })
        .filter(EdgepathSystem::is_valid)
        .collect()
}

/// First valid placement of each system. Panics if two placements of one
/// system disagree on `(e, b1)`.
pub fn complete_type_ii(systems: &[EdgepathSystem]) -> Vec<EdgepathSystem> {
    systems
        .iter()
        .filter_map(|s| {
            let all = type_ii_placements(s);
            let first = all.first()?.clone();
            let key = (first.normal_euler(), first.b1());
            assert!(
                all.iter().all(|o| (o.normal_euler(), o.b1()) == key),
                "vertical placements of {} disagree",
                s.name()
            );
            Some(first)
        })
        .collect()
}

pub fn complete_type_iii(systems: &[EdgepathSystem]) -> Vec<EdgepathSystem> {
    systems
        .iter()
        .map(|s| {
            let paths = s
                .paths
                .iter()
                .map(|p| {
                    let mut p = p.clone();
                    let end = p.edges.last().and_then(Edge::left_vertex).unwrap_or(DiagramVertex::integer(0));
                    p.edges.push(Edge::Complete {
                        left: DiagramVertex::Infinity,
                        right: end,
                    });
                    p
                })
                .collect();
            EdgepathSystem {
                kind: SystemType::III,
                paths,
                ..s.clone()
            }
        })
        .collect()
}

pub fn length(s: &EdgepathSystem) -> Rational {
    s.length()
}

pub fn edge_sign(e: &Edge) -> i64 {
    e.sign()
}

pub fn twist(s: &EdgepathSystem) -> Rational {
    s.twist()
}

pub fn euler_characteristic(s: &EdgepathSystem) -> Option<Rational> {
    s.euler_characteristic()
}

pub fn normal_euler(s: &EdgepathSystem) -> Rational {
    s.normal_euler()
}

/// One row of a candidate-surface table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSurface {
    pub system: String,
    #[serde(with = "rational::serde_rational")]
    pub e: Rational,
    #[serde(with = "rational::serde_rational")]
    pub b1: Rational,
    #[serde(with = "rational::serde_rational")]
    pub chi: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gamma_plus: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gamma_minus: Rational,
    /// Closed form `(n+2)/2 - 4/(n+1)` for the Type I row of `P(-3,3,n)`,
    /// which sits ½ below `b1 - σ + e/2`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_minus_closed_form: Option<Rational>,
}

impl CandidateSurface {
    fn from_system(s: &EdgepathSystem, sigma: i64) -> Self {
        let e = s.normal_euler();
        let chi = s.euler_characteristic().unwrap_or_default();
        let b1 = int(1) - chi;
        let g = gamma_rational(e, b1, sigma);
        CandidateSurface {
            system: s.name(),
            e,
            b1,
            chi,
            gamma_plus: g.gamma_plus,
            gamma_minus: g.gamma_minus,
            gamma_minus_closed_form: None,
        }
    }

    /// The smaller of the two `Γ⁻` values, for lower bounds.
    pub fn conservative_gamma_minus(&self) -> Rational {
        self.gamma_minus_closed_form
            .map_or(self.gamma_minus, |c| c.min(self.gamma_minus))
    }
}

/// All completed systems: Type I, then Type II and Type III by index.
pub fn completed_systems(params: &[i64]) -> Result<Vec<EdgepathSystem>, EdgepathError> {
    let basic = enumerate_basic_systems(params)?;
    let mut out = complete_type_i(&basic);
    out.extend(complete_type_ii(&basic));
    out.extend(complete_type_iii(&basic));
    Ok(out)
}

pub fn candidate_table_for(params: &[i64], sigma: i64) -> Result<Vec<CandidateSurface>, EdgepathError> {
    if params.len() < 3 || params.iter().any(|p| p.abs() < 3 || p % 2 == 0) {
        return Err(EdgepathError::BadParameter(
            "need at least three odd strands with |p| >= 3".into(),
        ));
    }
    Ok(completed_systems(params)?
        .iter()
        .map(|s| CandidateSurface::from_system(s, sigma))
        .collect())
}

/// Table for `P(-3, 3, n)`: `Λᴵ`, `Λᴵᴵ₀..₇`, `Λᴵᴵᴵ₀..₇`.
pub fn candidate_table(n: i64, sigma: i64) -> Result<Vec<CandidateSurface>, EdgepathError> {
    if n < 3 || n % 2 == 0 {
        return Err(EdgepathError::BadParameter(format!("n must be odd and >= 3, got {n}")));
    }
    let mut rows = candidate_table_for(&[-3, 3, n], sigma)?;
    for r in rows.iter_mut().filter(|r| r.system == "I") {
        r.gamma_minus_closed_form = Some(Rational::new(n + 2, 2) - Rational::new(4, n + 1));
    }
    Ok(rows)
}

/// Geography generated by candidates that can be spanning surfaces: rows
/// with integral, parity-consistent `(e, b1)`, with the Seifert row replaced
/// by its two single twists.
pub fn candidate_region(rows: &[CandidateSurface]) -> GeographyRegion {
    let mut wedges = Vec::new();
    for r in rows {
        if !r.e.is_integer() || !r.b1.is_integer() {
            continue;
        }
        let (e, b) = (r.e.to_integer(), r.b1.to_integer());
        if (e - 2 * b).rem_euclid(4) != 0 {
            continue;
        }
        if r.system == "II_0" {
            wedges.push(Wedge::new(e + 2, b + 1));
            wedges.push(Wedge::new(e - 2, b + 1));
        } else {
            wedges.push(Wedge::new(e, b));
        }
    }
    GeographyRegion::new(wedges)
}

/// CSV with the columns of the published table.
pub fn table_csv(rows: &[CandidateSurface]) -> String {
    let mut out = String::from("system,e,b1,gamma_plus,gamma_minus\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.system, r.e, r.b1, r.gamma_plus, r.gamma_minus
        ));
    }
    out
}
