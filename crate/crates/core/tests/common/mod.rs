//! Strategies and checks shared by the property and acceptance suites.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use crossgeo::diagram::{fixtures, KnotDiagram};
use crossgeo::geography::{gamma_invariance_under_twist, gl_wedge, normalize, state_region, GeographyRegion, Wedge};
use crossgeo::signature::goeritz_signature;
use crossgeo::states::{State, TwistSign, DEFAULT_STATE_CAP};

pub const MAX_CROSSINGS: usize = 12;

pub fn pretzels() -> impl Strategy<Value = KnotDiagram> {
    prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 3..=4).prop_filter_map("pretzel knot", |ps| {
        let total: i64 = ps.iter().map(|p| p.abs()).sum();
        if total as usize > MAX_CROSSINGS {
            return None;
        }
        KnotDiagram::pretzel(&ps).ok()
    })
}

pub fn torus_knots() -> impl Strategy<Value = KnotDiagram> {
    prop::sample::select(vec![(3, 2), (5, 2), (7, 2), (9, 2), (11, 2), (4, 3), (5, 3)])
        .prop_map(|(p, q)| KnotDiagram::torus(p, q).unwrap())
}

pub fn alternating() -> impl Strategy<Value = KnotDiagram> {
    let base = vec![fixtures::trefoil(), fixtures::five_two(), fixtures::figure_eight()];
    (prop::sample::select(base.clone()), prop::option::of(prop::sample::select(base)))
        .prop_map(|(a, b)| match b {
            Some(b) => a.connected_sum(&b),
            None => a,
        })
}

pub fn diagrams() -> impl Strategy<Value = KnotDiagram> {
    (prop_oneof![pretzels(), torus_knots(), alternating()], any::<bool>())
        .prop_map(|(d, m)| if m { d.mirror() } else { d })
}

/// A diagram with a sample of its states: the extremes, the Seifert state
/// and random masks.
pub fn diagram_with_masks() -> impl Strategy<Value = (KnotDiagram, Vec<u64>)> {
    (diagrams(), prop::collection::vec(any::<u64>(), 24)).prop_map(|(d, raw)| {
        let full = (1u64 << d.crossing_count()) - 1;
        let mut masks: Vec<u64> = raw.into_iter().map(|m| m & full).collect();
        masks.extend([0, full, State::seifert(&d).mask()]);
        (d, masks)
    })
}

/// Parity-valid wedges.
pub fn wedges() -> impl Strategy<Value = Vec<Wedge>> {
    prop::collection::vec((-6i64..=6, 0i64..=8), 0..12)
        .prop_map(|v| v.into_iter().map(|(t, b)| Wedge::new(2 * b + 4 * t, b)).collect())
}

/// Parity, membership in `W_σ`, `e = 0` when orientable, and orientable
/// exactly at the Seifert state.
pub fn check_state_surfaces(d: &KnotDiagram, masks: &[u64]) -> Result<(), TestCaseError> {
    let sigma = goeritz_signature(d);
    let w = gl_wedge(sigma);
    let seifert = State::seifert(d).mask();
    for &m in masks {
        let p = State::from_mask(d, m).surface().point();
        prop_assert!((p.e - 2 * p.b1).rem_euclid(4) == 0, "parity at {:?}", p);
        prop_assert!(w.contains(p.e, p.b1), "{:?} outside W({})", p, sigma);
        if p.orientable {
            prop_assert_eq!(p.e, 0);
        }
        prop_assert_eq!(p.orientable, m == seifert, "mask {:b} of {}", m, d);
    }
    Ok(())
}

pub fn check_twist(d: &KnotDiagram, masks: &[u64]) -> Result<(), TestCaseError> {
    let sigma = goeritz_signature(d);
    for &m in masks.iter().take(6) {
        let p = State::from_mask(d, m).surface().point();
        prop_assert!(gamma_invariance_under_twist(&p, TwistSign::Positive, sigma, 4));
        prop_assert!(gamma_invariance_under_twist(&p, TwistSign::Negative, sigma, 4));
    }
    Ok(())
}

pub fn check_normalization(ws: &[Wedge]) -> Result<(), TestCaseError> {
    let once = normalize(ws);
    prop_assert_eq!(normalize(&once), once.clone());
    let r = GeographyRegion::new(ws.iter().copied());
    prop_assert_eq!(r.normalized().apexes, r.apexes.clone());
    for w in ws {
        prop_assert!(r.contains(w.apex_e, w.apex_b));
    }
    Ok(())
}

pub fn check_mirror(d: &KnotDiagram) -> Result<(), TestCaseError> {
    let m = d.mirror();
    prop_assert_eq!(goeritz_signature(&m), -goeritz_signature(d));
    let r = state_region(d, true, DEFAULT_STATE_CAP).unwrap();
    let rm = state_region(&m, true, DEFAULT_STATE_CAP).unwrap();
    prop_assert_eq!(rm, r.reflected());
    Ok(())
}

/// Flat band across the first three-sided region, between the first two
/// edges whose band leaves a knot.
pub fn scripted_band(d: &KnotDiagram) -> Option<KnotDiagram> {
    let regions = d.region_edges();
    let region = regions.iter().find(|r| r.len() == 3)?;
    for i in 0..region.len() {
        for j in i + 1..region.len() {
            if let Ok(d1) = d.flat_band(region[i], region[j]) {
                return Some(d1);
            }
        }
    }
    None
}
