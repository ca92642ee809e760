//! The `(e, b)` plane: wedges, regions and the Euler-normalized Betti
//! numbers `Γ±(F) = b1(F) ± (σ - e(F)/2)`.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::KnotDiagram;
use crate::rational::{self, Rational};
use crate::signature::goeritz_signature;
use crate::states::{add_twisted_band, state_masks, State, SurfacePoint, TwistSign, DEFAULT_STATE_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeographyError {
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("diagram is not reduced")]
    NotReduced,
    #[error("empty input")]
    EmptyInput,
    #[error("missing invariant `{0}`")]
    MissingInvariant(&'static str),
    #[error(transparent)]
    States(#[from] crate::states::StateError),
}

/// Lattice wedge `W(E,B)`: points with `|e - E|/2 <= b - B` and
/// `e ≡ 2b (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wedge {
    pub apex_e: i64,
    pub apex_b: i64,
}

impl Wedge {
    pub fn new(apex_e: i64, apex_b: i64) -> Self {
        Wedge { apex_e, apex_b }
    }

    pub fn apex_parity_ok(&self) -> bool {
        (self.apex_e - 2 * self.apex_b).rem_euclid(4) == 0
    }

    pub fn contains(&self, e: i64, b: i64) -> bool {
        self.apex_parity_ok()
            && (e - 2 * b).rem_euclid(4) == 0
            && (e - self.apex_e).abs() <= 2 * (b - self.apex_b)
    }

    /// `W(other) ⊆ W(self)`.
    pub fn dominates(&self, other: &Wedge) -> bool {
        self.contains(other.apex_e, other.apex_b)
    }
}

impl From<SurfacePoint> for Wedge {
    fn from(p: SurfacePoint) -> Self {
        Wedge::new(p.e, p.b1)
    }
}

/// Union of wedges. `generators` keeps every wedge supplied; `apexes` is the
/// normalized set, with no apex lying in another member's wedge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyRegion {
    pub generators: Vec<Wedge>,
    pub apexes: Vec<Wedge>,
}

impl GeographyRegion {
    pub fn new(wedges: impl IntoIterator<Item = Wedge>) -> Self {
        let generators: Vec<Wedge> = wedges.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let apexes = normalize(&generators);
        GeographyRegion { generators, apexes }
    }

    pub fn contains(&self, e: i64, b: i64) -> bool {
        self.apexes.iter().any(|w| w.contains(e, b))
    }

    /// Lowest height of a point of the region.
    pub fn min_height(&self) -> Option<i64> {
        self.apexes.iter().map(|w| w.apex_b).min()
    }

    pub fn normalized(&self) -> GeographyRegion {
        GeographyRegion::new(self.apexes.iter().copied())
    }

    /// The region with `e ↦ -e`.
    pub fn reflected(&self) -> GeographyRegion {
        let flip = |ws: &[Wedge]| ws.iter().map(|w| Wedge::new(-w.apex_e, w.apex_b)).collect::<BTreeSet<_>>();
        GeographyRegion {
            generators: flip(&self.generators).into_iter().collect(),
            apexes: flip(&self.apexes).into_iter().collect(),
        }
    }
}

/// Dominance-minimal subset, sorted.
pub fn normalize(wedges: &[Wedge]) -> Vec<Wedge> {
    let set: BTreeSet<Wedge> = wedges.iter().copied().collect();
    set.iter()
        .filter(|w| !set.iter().any(|v| v != *w && v.dominates(w)))
        .copied()
        .collect()
}

/// Rational wedge `|e - u| <= 2(b - v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalWedge {
    #[serde(with = "rational::serde_rational")]
    pub apex_u: Rational,
    #[serde(with = "rational::serde_rational")]
    pub apex_v: Rational,
}

impl RationalWedge {
    pub fn contains(&self, e: Rational, b: Rational) -> bool {
        (e - self.apex_u).abs() <= (b - self.apex_v) * 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPair {
    #[serde(with = "rational::serde_rational")]
    pub gamma_plus: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gamma_minus: Rational,
}

impl GammaPair {
    pub fn new(gamma_plus: Rational, gamma_minus: Rational) -> Self {
        GammaPair {
            gamma_plus,
            gamma_minus,
        }
    }

    pub fn ints(plus: i64, minus: i64) -> Self {
        GammaPair::new(rational::int(plus), rational::int(minus))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gamma_plus >= rational::int(0) && self.gamma_minus >= rational::int(0)
    }

    /// `γ̄ = (γ̂⁺ + γ̂⁻) / 2`.
    pub fn mean(&self) -> Rational {
        (self.gamma_plus + self.gamma_minus) / 2
    }
}

/// `(Γ⁺, Γ⁻)` of a rational point.
pub fn gamma_rational(e: Rational, b1: Rational, sigma: i64) -> GammaPair {
    let s = rational::int(sigma) - e / 2;
    GammaPair::new(b1 + s, b1 - s)
}

pub fn gamma(p: &SurfacePoint, sigma: i64) -> GammaPair {
    gamma_rational(rational::int(p.e), rational::int(p.b1), sigma)
}

/// `Γ^sign` is unchanged by adding `1..=k_max` twisted bands of that sign.
pub fn gamma_invariance_under_twist(p: &SurfacePoint, sign: TwistSign, sigma: i64, k_max: u32) -> bool {
    let pick = |g: GammaPair| match sign {
        TwistSign::Positive => g.gamma_plus,
        TwistSign::Negative => g.gamma_minus,
    };
    let base = pick(gamma(p, sigma));
    (1..=k_max).all(|k| pick(gamma(&add_twisted_band(*p, sign, k), sigma)) == base)
}

/// Generators of the spanning-surface geography of a reduced alternating
/// diagram: non-orientable basic state surfaces, and both single twists of
/// orientable ones.
pub fn alternating_region(d: &KnotDiagram) -> Result<GeographyRegion, GeographyError> {
    if !d.is_alternating() {
        return Err(GeographyError::NotAlternating);
    }
    if !d.is_reduced() {
        return Err(GeographyError::NotReduced);
    }
    Ok(GeographyRegion::new(basic_generators(d, DEFAULT_STATE_CAP)?))
}

fn basic_generators(d: &KnotDiagram, cap: usize) -> Result<Vec<Wedge>, GeographyError> {
    let mut out = Vec::new();
    for m in state_masks(d, true, cap)? {
        let p = State::from_mask(d, m).surface().point();
        if p.orientable {
            out.push(add_twisted_band(p, TwistSign::Positive, 1).into());
            out.push(add_twisted_band(p, TwistSign::Negative, 1).into());
        } else {
            out.push(p.into());
        }
    }
    Ok(out)
}

pub fn gamma3_from_region(r: &GeographyRegion) -> Result<i64, GeographyError> {
    r.min_height().ok_or(GeographyError::EmptyInput)
}

pub fn gamma_hat_from_surfaces(surfaces: &[SurfacePoint], sigma: i64) -> Result<GammaPair, GeographyError> {
    let pts: Vec<_> = surfaces
        .iter()
        .map(|p| (rational::int(p.e), rational::int(p.b1)))
        .collect();
    rational_wedge_bound(&pts, sigma)
}

/// Componentwise minimum of `Γ±` over rational candidates.
pub fn rational_wedge_bound(candidates: &[(Rational, Rational)], sigma: i64) -> Result<GammaPair, GeographyError> {
    let gs: Vec<GammaPair> = candidates.iter().map(|&(e, b)| gamma_rational(e, b, sigma)).collect();
    let plus = gs.iter().map(|g| g.gamma_plus).min().ok_or(GeographyError::EmptyInput)?;
    let minus = gs.iter().map(|g| g.gamma_minus).min().ok_or(GeographyError::EmptyInput)?;
    Ok(GammaPair::new(plus, minus))
}

/// Lower bound for spanning surfaces from a rational bound: `Γ±` of a
/// spanning surface is an even integer.
pub fn even_lower_bound(g: GammaPair) -> (i64, i64) {
    (rational::ceil_even(g.gamma_plus), rational::ceil_even(g.gamma_minus))
}

/// `½(c + 2 - |s_A| - |s_B|)`.
pub fn turaev_genus_diagram(d: &KnotDiagram) -> i64 {
    let c = d.crossing_count() as i64;
    let sa = State::all_a(d).circle_count() as i64;
    let sb = State::all_b(d).circle_count() as i64;
    (c + 2 - sa - sb) / 2
}

/// `(Γ⁺(F_A) + Γ⁻(F_B)) / 2`, which equals the diagram's Turaev genus.
pub fn turaev_via_gamma(d: &KnotDiagram, sigma: i64) -> Rational {
    let fa = State::all_a(d).surface().point();
    let fb = State::all_b(d).surface().point();
    (gamma(&fa, sigma).gamma_plus + gamma(&fb, sigma).gamma_minus) / 2
}

/// Turaev genus of the diagram, checked against the `Γ` identity with the
/// Goeritz signature.
pub fn turaev_checked(d: &KnotDiagram) -> (i64, Rational) {
    let g = turaev_genus_diagram(d);
    let via = turaev_via_gamma(d, goeritz_signature(d));
    assert_eq!(rational::int(g), via, "Turaev identity failed on {d}");
    (g, via)
}

pub fn gl_wedge(sigma: i64) -> Wedge {
    Wedge::new(2 * sigma, 0)
}

pub fn upsilon_wedge(upsilon: i64) -> Wedge {
    Wedge::new(4 * upsilon, 0)
}

/// `(max(σ - 2υ, 0), max(2υ - σ, 0))`, lower bounds for `γ̂±₄`.
pub fn oss_sg_bounds(sigma: i64, upsilon: i64) -> (i64, i64) {
    ((sigma - 2 * upsilon).max(0), (2 * upsilon - sigma).max(0))
}

/// `|υ - σ/2|`, a lower bound for `γ₄`.
pub fn oss_gamma4_bound(sigma: i64, upsilon: i64) -> Rational {
    (rational::int(upsilon) - rational::frac(sigma, 2)).abs()
}

pub fn require_upsilon(upsilon: Option<i64>) -> Result<i64, GeographyError> {
    upsilon.ok_or(GeographyError::MissingInvariant("upsilon"))
}

pub fn connected_sum_gamma(g1: GammaPair, g2: GammaPair) -> GammaPair {
    GammaPair::new(g1.gamma_plus + g2.gamma_plus, g1.gamma_minus + g2.gamma_minus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Exact,
    Upper,
    Lower,
}

/// JSON geography report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyReport {
    pub apexes: Vec<[i64; 2]>,
    pub generators: Vec<[i64; 2]>,
    pub gamma3: i64,
    #[serde(with = "rational::serde_rational")]
    pub gamma_hat_plus: Rational,
    #[serde(with = "rational::serde_rational")]
    pub gamma_hat_minus: Rational,
    pub bound_kind: BoundKind,
}

impl GeographyReport {
    pub fn new(region: &GeographyRegion, sigma: i64, bound_kind: BoundKind) -> Result<Self, GeographyError> {
        let pts: Vec<SurfacePoint> = region
            .apexes
            .iter()
            .map(|w| SurfacePoint::new(w.apex_e, w.apex_b, false, crate::states::Provenance::StateSurface))
            .collect();
        let g = gamma_hat_from_surfaces(&pts, sigma)?;
        let pairs = |ws: &[Wedge]| ws.iter().map(|w| [w.apex_e, w.apex_b]).collect();
        Ok(GeographyReport {
            apexes: pairs(&region.apexes),
            generators: pairs(&region.generators),
            gamma3: gamma3_from_region(region)?,
            gamma_hat_plus: g.gamma_plus,
            gamma_hat_minus: g.gamma_minus,
            bound_kind,
        })
    }
}

/// Region generated by every state surface of an arbitrary diagram, with
/// both twists of orientable ones. Only an upper bound for `γ̂±₃` and `γ₃`.
pub fn state_region(d: &KnotDiagram, basic_only: bool, cap: usize) -> Result<GeographyRegion, GeographyError> {
    let mut out = Vec::new();
    for m in state_masks(d, basic_only, cap)? {
        let p = State::from_mask(d, m).surface().point();
        if p.orientable {
            out.push(add_twisted_band(p, TwistSign::Positive, 1).into());
            out.push(add_twisted_band(p, TwistSign::Negative, 1).into());
        } else {
            out.push(p.into());
        }
    }
    Ok(GeographyRegion::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;
    use crate::rational::{frac, int};
    use crate::states::Provenance;

    fn w(e: i64, b: i64) -> Wedge {
        Wedge::new(e, b)
    }

    #[test]
    fn wedge_membership() {
        let a = w(-6, 1);
        assert!(a.contains(-6, 1));
        assert!(a.contains(-2, 3));
        assert!(!a.contains(-2, 2));
        assert!(a.contains(-4, 2));
        assert!(!a.contains(-5, 3));
        assert!(!w(1, 0).contains(1, 0));
    }

    #[test]
    fn trefoil_region() {
        let r = alternating_region(&trefoil()).unwrap();
        assert_eq!(r.generators, vec![w(-6, 1), w(-2, 3), w(2, 3)]);
        assert_eq!(r.apexes, vec![w(-6, 1), w(2, 3)]);
        assert_eq!(gamma3_from_region(&r), Ok(1));
        let rep = GeographyReport::new(&r, -2, BoundKind::Exact).unwrap();
        assert_eq!((rep.gamma_hat_plus, rep.gamma_hat_minus), (int(0), int(0)));
    }

    #[test]
    fn five_two_region() {
        let r = alternating_region(&five_two()).unwrap();
        assert_eq!(r.generators, vec![w(-2, 3), w(2, 3), w(4, 2), w(10, 3)]);
        assert_eq!(r.apexes, vec![w(-2, 3), w(4, 2), w(10, 3)]);
        let p = KnotDiagram::pretzel(&[-3, 3, 3]).unwrap();
        assert_eq!(alternating_region(&p), Err(GeographyError::NotAlternating));
    }

    #[test]
    fn gammas() {
        let p = |e, b| SurfacePoint::new(e, b, false, Provenance::External);
        assert_eq!(gamma(&p(-6, 1), -2), GammaPair::ints(2, 0));
        assert_eq!(gamma(&p(0, 2), -2), GammaPair::ints(0, 4));
        assert_eq!(gamma(&p(-12, 2), -6).gamma_minus, int(2));
        assert!(gamma_invariance_under_twist(&p(0, 2), TwistSign::Positive, -2, 5));
        assert!(gamma_invariance_under_twist(&p(-6, 1), TwistSign::Negative, -2, 5));
        assert!(gamma_invariance_under_twist(&p(4, 2), TwistSign::Positive, 2, 5));
        assert_eq!(gamma(&p(4, 2), 2).gamma_plus, int(2));
    }

    #[test]
    fn turaev() {
        assert_eq!(turaev_checked(&trefoil()).0, 0);
        assert_eq!(turaev_checked(&five_two()).0, 0);
        let p = KnotDiagram::pretzel(&[-3, 3, 3]).unwrap();
        assert_eq!(turaev_checked(&p).0, 1);
    }

    #[test]
    fn slice_torus_bounds() {
        assert_eq!(oss_sg_bounds(-6, -2), (0, 2));
        assert_eq!(oss_gamma4_bound(-6, -2), int(1));
        assert_eq!(oss_sg_bounds(0, 0), (0, 0));
        assert_eq!(oss_gamma4_bound(0, 0), int(0));
        assert_eq!(gl_wedge(-2), w(-4, 0));
        assert_eq!(upsilon_wedge(-2), w(-8, 0));
        assert_eq!(require_upsilon(None), Err(GeographyError::MissingInvariant("upsilon")));
    }

    #[test]
    fn rational_bounds() {
        assert_eq!(rational_wedge_bound(&[(int(0), int(0))], 0), Ok(GammaPair::ints(0, 0)));
        assert_eq!(rational_wedge_bound(&[], 0), Err(GeographyError::EmptyInput));
        let g = GammaPair::new(frac(1, 3), frac(7, 3));
        assert_eq!(even_lower_bound(g), (2, 4));
        let rw = RationalWedge {
            apex_u: frac(-4, 3),
            apex_v: frac(1, 2),
        };
        assert!(rw.contains(int(0), frac(7, 6)));
        assert!(!rw.contains(int(0), int(1)));
    }

    #[test]
    fn sums() {
        let p3 = GammaPair::ints(0, 2);
        let mut acc = GammaPair::ints(0, 0);
        for n in 1..=5 {
            acc = connected_sum_gamma(acc, p3);
            assert_eq!(acc, GammaPair::ints(0, 2 * n));
        }
        assert_eq!(connected_sum_gamma(p3, GammaPair::ints(2, 0)), GammaPair::ints(2, 2));
    }

    #[test]
    fn report_json() {
        let r = alternating_region(&trefoil()).unwrap();
        let rep = GeographyReport::new(&r, -2, BoundKind::Exact).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["apexes"], serde_json::json!([[-6, 1], [2, 3]]));
        assert_eq!(v["bound_kind"], "exact");
        assert_eq!(v["gamma_hat_minus"], 0);
    }
}
