//! Pinch moves on torus knots `T(p,q)` with `pq` even, and the pinch
//! surfaces they build in the 3-sphere (`F3`) and in the 4-ball (`F4`).

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::states::{Provenance, SurfacePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("pq = {0} is odd")]
    OddProduct(i64),
    #[error("({p},{q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// `(p,q)` pairs from the input down to the trivial `(0,1)` (in either
/// order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchSequence {
    pub steps: Vec<(i64, i64)>,
    /// First step with `min(p,q) <= 1`.
    pub first_unknot_index: usize,
}

fn is_unknot((p, q): (i64, i64)) -> bool {
    p.min(q) <= 1
}

fn check(p: i64, q: i64) -> Result<(), TorusError> {
    if p < 0 || q < 0 {
        return Err(TorusError::BadParameter(format!("negative parameter in ({p},{q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(TorusError::NotCoprime { p, q });
    }
    if (p * q).is_odd() {
        return Err(TorusError::OddProduct(p * q));
    }
    Ok(())
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
fn inverse(a: i64, m: i64) -> i64 {
    let g = a.extended_gcd(&m);
    g.x.rem_euclid(m)
}

/// One pinch: `(|p - 2t|, |q - 2h|)` with `t ≡ -q⁻¹ (mod p)` and
/// `h ≡ p⁻¹ (mod q)`.
pub fn pinch_step(p: i64, q: i64) -> Result<(i64, i64), TorusError> {
    check(p, q)?;
    if p < 2 || q < 2 {
        return Err(TorusError::BadParameter(format!("pinch needs p, q >= 2, got ({p},{q})")));
    }
    let t = (-inverse(q, p)).rem_euclid(p);
    let h = inverse(p, q);
    Ok(((p - 2 * t).abs(), (q - 2 * h).abs()))
}

pub fn pinch_sequence(p: i64, q: i64) -> Result<PinchSequence, TorusError> {
    check(p, q)?;
    let mut steps = vec![(p, q)];
    let mut cur = (p, q);
    while !is_unknot(cur) {
        cur = pinch_step(cur.0, cur.1)?;
        steps.push(cur);
    }
    let first_unknot_index = steps.len() - 1;
    // T(k,1) with k even: each further pinch lowers k by 2
    match cur {
        (k, 1) if k >= 2 => steps.extend((0..k / 2).map(|i| (k - 2 * (i + 1), 1))),
        (1, k) if k >= 2 => steps.extend((0..k / 2).map(|i| (1, k - 2 * (i + 1)))),
        _ => {}
    }
    Ok(PinchSequence {
        steps,
        first_unknot_index,
    })
}

impl PinchSequence {
    /// Pinches down to `T(0,1)`.
    pub fn total_pinches(&self) -> usize {
        self.steps.len() - 1
    }
}

/// `F3(p,q)`: every pinch band, capped by a meridian disk. `e = -pq`.
pub fn pinch_surface_3(p: i64, q: i64) -> Result<SurfacePoint, TorusError> {
    let s = pinch_sequence(p, q)?;
    Ok(SurfacePoint::new(-p * q, s.total_pinches() as i64, false, Provenance::Pinch))
}

/// `F4(p,q)`: pinch down to the first unknot `T(r,1)` and cap with a disk
/// in the 4-ball. `e = r - pq`.
pub fn pinch_surface_4(p: i64, q: i64) -> Result<SurfacePoint, TorusError> {
    let s = pinch_sequence(p, q)?;
    let last = s.steps[s.first_unknot_index];
    let r = if last.1 == 1 { last.0 } else { last.1 };
    let b1 = s.first_unknot_index as i64;
    Ok(SurfacePoint::new(r - p * q, b1, b1 == 0, Provenance::Pinch))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EB {
    pub e: i64,
    pub b1: i64,
}

impl From<SurfacePoint> for EB {
    fn from(p: SurfacePoint) -> Self {
        EB { e: p.e, b1: p.b1 }
    }
}

/// JSON report `{sequence, f3, f4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchReport {
    pub sequence: Vec<[i64; 2]>,
    pub f3: EB,
    pub f4: EB,
}

pub fn pinch_report(p: i64, q: i64) -> Result<PinchReport, TorusError> {
    let s = pinch_sequence(p, q)?;
    Ok(PinchReport {
        sequence: s.steps.iter().map(|&(a, b)| [a, b]).collect(),
        f3: pinch_surface_3(p, q)?.into(),
        f4: pinch_surface_4(p, q)?.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eb(p: SurfacePoint) -> (i64, i64) {
        (p.e, p.b1)
    }

    #[test]
    fn steps() {
        assert_eq!(pinch_step(4, 3), Ok((2, 1)));
        assert_eq!(pinch_step(3, 2), Ok((1, 0)));
        assert_eq!(pinch_step(6, 5), Ok((4, 3)));
        assert_eq!(pinch_step(5, 3), Err(TorusError::OddProduct(15)));
        assert_eq!(pinch_step(4, 2), Err(TorusError::NotCoprime { p: 4, q: 2 }));
    }

    #[test]
    fn surfaces() {
        assert_eq!(eb(pinch_surface_3(3, 2).unwrap()), (-6, 1));
        assert_eq!(eb(pinch_surface_3(4, 3).unwrap()), (-12, 2));
        assert_eq!(eb(pinch_surface_3(2, 1).unwrap()), (-2, 1));
        assert_eq!(eb(pinch_surface_4(4, 3).unwrap()), (-10, 1));
        assert_eq!(eb(pinch_surface_4(3, 2).unwrap()), (-6, 1));
        assert_eq!(eb(pinch_surface_4(2, 1).unwrap()), (0, 0));
        assert_eq!(pinch_surface_4(6, 5).unwrap().b1, 2);
    }

    #[test]
    fn sequences() {
        let s = pinch_sequence(4, 3).unwrap();
        assert_eq!(s.steps, vec![(4, 3), (2, 1), (0, 1)]);
        assert_eq!(s.first_unknot_index, 1);
        let s = pinch_sequence(3, 2).unwrap();
        assert_eq!(s.steps, vec![(3, 2), (1, 0)]);
    }

    #[test]
    fn report_json() {
        let r = pinch_report(4, 3).unwrap();
        assert_eq!(
            serde_json::to_value(&r).unwrap(),
            serde_json::json!({"sequence":[[4,3],[2,1],[0,1]],"f3":{"e":-12,"b1":2},"f4":{"e":-10,"b1":1}})
        );
    }
}
