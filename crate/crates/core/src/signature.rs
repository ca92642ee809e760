//! Knot signatures from diagrams.
//!
//! The main route is the Gordon–Litherland form of a checkerboard surface:
//! the Goeritz matrix `G` of the surface, whose signature is `σ(F)`, and the
//! correction `μ` summed over crossings whose checkerboard band disagrees
//! with the oriented smoothing. Then `σ(K) = σ(G) - μ`, and `μ = -e(F)/2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Color, KnotDiagram};
use crate::states::{Resolution, State};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("diagram is not reduced")]
    NotReduced,
    #[error("closed form is undefined at k = r(r+1) (k = {k}, r = {r})")]
    Undefined { k: i64, r: i64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// Signature of a symmetric integer matrix, by exact congruence
/// diagonalization.
pub fn matrix_signature(m: &[Vec<i64>]) -> i64 {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut sig = 0;
    while !a.is_empty() {
        let n = a.len();
        if let Some(k) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let p = a[k][k].clone();
            sig += if p.is_positive() { 1 } else { -1 };
            let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
            a = rest
                .iter()
                .map(|&i| {
                    rest.iter()
                        .map(|&j| &a[i][j] - &a[i][k] * &a[k][j] / &p)
                        .collect()
                })
                .collect();
            continue;
        }
        let Some((i, j)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        // zero-diagonal 2x2 block [[0,b],[b,0]] has signature 0
        let b = a[i][j].clone();
        let rest: Vec<usize> = (0..n).filter(|&l| l != i && l != j).collect();
        a = rest
            .iter()
            .map(|&l| {
                rest.iter()
                    .map(|&q| &a[l][q] - (&a[l][i] * &a[q][j] + &a[l][j] * &a[q][i]) / &b)
                    .collect()
            })
            .collect();
    }
    sig
}

/// Gordon–Litherland data of one checkerboard surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzData {
    /// Color of the regions making up the surface; the matrix is indexed by
    /// the regions of the other color, less the first.
    pub surface: Color,
    pub matrix: Vec<Vec<i64>>,
    /// `μ`, the sum of band signs over crossings of the second type.
    pub correction: i64,
    /// `σ(F)`, the signature of the matrix.
    pub sigma_f: i64,
    pub sigma_k: i64,
}

/// The state whose surface is the checkerboard surface of color `c`.
pub fn checkerboard_state(d: &KnotDiagram, c: Color) -> State<'_> {
    let cb = d.checkerboard();
    let choices = (0..d.crossing_count())
        .map(|x| {
            if cb.color[cb.faces.at(x, 0)] == c {
                Resolution::A
            } else {
                Resolution::B
            }
        })
        .collect();
    State::new(d, choices)
}

pub fn gl_checkerboard_form(d: &KnotDiagram, c: Color) -> GoeritzData {
    let cb = d.checkerboard();
    let others = cb.regions_of(c.other());
    let index = |f: usize| others.iter().position(|&g| g == f);
    let n = others.len();
    let mut g = vec![vec![0i64; n]; n];
    let mut correction = 0;
    for (x, crossing) in d.crossings().iter().enumerate() {
        let surface_at_0 = cb.color[cb.faces.at(x, 0)] == c;
        let w = if surface_at_0 { -1 } else { 1 };
        // the oriented smoothing is A at positive crossings
        if surface_at_0 != (crossing.sign > 0) {
            correction += w;
        }
        let (f1, f3) = if surface_at_0 {
            (cb.faces.at(x, 1), cb.faces.at(x, 3))
        } else {
            (cb.faces.at(x, 0), cb.faces.at(x, 2))
        };
        if f1 == f3 {
            continue;
        }
        let (i, j) = (index(f1).unwrap_or(0), index(f3).unwrap_or(0));
        g[i][i] += w;
        g[j][j] += w;
        g[i][j] -= w;
        g[j][i] -= w;
    }
    let matrix: Vec<Vec<i64>> = g.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    let sigma_f = matrix_signature(&matrix);
    GoeritzData {
        surface: c,
        matrix,
        correction,
        sigma_f,
        sigma_k: sigma_f - correction,
    }
}

pub fn goeritz_signature(d: &KnotDiagram) -> i64 {
    gl_checkerboard_form(d, Color::Black).sigma_k
}

/// `½(-wri + |s_A| - |s_B|)` on a reduced alternating diagram.
pub fn traczyk_signature(d: &KnotDiagram) -> Result<i64, SignatureError> {
    if !d.is_alternating() {
        return Err(SignatureError::NotAlternating);
    }
    if !d.is_reduced() {
        return Err(SignatureError::NotReduced);
    }
    let sa = State::all_a(d).circle_count() as i64;
    let sb = State::all_b(d).circle_count() as i64;
    Ok((-d.writhe() + sa - sb) / 2)
}

/// Closed-form signature of `P(-k, r, -r-1)` for odd positive `k, r`.
pub fn pretzel_gap_signature(k: i64, r: i64) -> Result<i64, SignatureError> {
    if k > 0 && r > 0 && k == r * (r + 1) {
        return Err(SignatureError::Undefined { k, r });
    }
    if k <= 0 || r <= 0 || k % 2 == 0 || r % 2 == 0 {
        return Err(SignatureError::BadParameter(format!(
            "k and r must be odd and positive, got ({k},{r})"
        )));
    }
    let t = r * (r + 1);
    match k.cmp(&t) {
        std::cmp::Ordering::Less => Ok(k - r),
        std::cmp::Ordering::Greater => Ok(k - r - 2),
        std::cmp::Ordering::Equal => Err(SignatureError::Undefined { k, r }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Goeritz,
    Traczyk,
    PretzelClosedForm,
}

/// JSON form of a signature computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub sigma: i64,
    pub method: Method,
    pub goeritz_dim: Option<usize>,
    pub correction: Option<i64>,
}

impl SignatureReport {
    pub fn goeritz(d: &KnotDiagram) -> Self {
        let g = gl_checkerboard_form(d, Color::Black);
        SignatureReport {
            sigma: g.sigma_k,
            method: Method::Goeritz,
            goeritz_dim: Some(g.matrix.len()),
            correction: Some(g.correction),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn small_matrices() {
        assert_eq!(matrix_signature(&[]), 0);
        assert_eq!(matrix_signature(&[vec![3]]), 1);
        assert_eq!(matrix_signature(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(matrix_signature(&[vec![-2, 1], vec![1, -2]]), -2);
        assert_eq!(
            matrix_signature(&[vec![0, 2, 1], vec![2, 0, 1], vec![1, 1, 0]]),
            -1
        );
    }

    #[test]
    fn trefoil_forms() {
        let t = trefoil();
        let white = gl_checkerboard_form(&t, Color::White);
        assert_eq!(white.matrix, vec![vec![-2, 1], vec![1, -2]]);
        assert_eq!((white.sigma_f, white.correction, white.sigma_k), (-2, 0, -2));
        let black = gl_checkerboard_form(&t, Color::Black);
        assert_eq!(black.matrix, vec![vec![3]]);
        assert_eq!((black.sigma_f, black.correction, black.sigma_k), (1, 3, -2));
        assert_eq!(goeritz_signature(&t), -2);
        assert_eq!(traczyk_signature(&t), Ok(-2));
    }

    #[test]
    fn checkerboard_states() {
        let t = trefoil();
        assert_eq!(checkerboard_state(&t, Color::White).mask(), 0);
        assert_eq!(checkerboard_state(&t, Color::Black).mask(), 0b111);
    }

    #[test]
    fn five_two_and_torus() {
        let d = five_two();
        assert_eq!(traczyk_signature(&d), Ok(2));
        assert_eq!(goeritz_signature(&d), 2);
        assert_eq!(gl_checkerboard_form(&d, Color::White).sigma_f, -3);
        assert_eq!(goeritz_signature(&KnotDiagram::torus(4, 3).unwrap()), -6);
    }

    #[test]
    fn pretzel_signatures() {
        let p = KnotDiagram::pretzel(&[-3, 3, 3]).unwrap();
        assert_eq!(goeritz_signature(&p), 0);
        assert_eq!(traczyk_signature(&p), Err(SignatureError::NotAlternating));
        assert_eq!(pretzel_gap_signature(5, 1), Ok(2));
        assert_eq!(pretzel_gap_signature(3, 3), Ok(0));
        assert_eq!(pretzel_gap_signature(9, 1), Ok(6));
        assert_eq!(pretzel_gap_signature(2, 1), Err(SignatureError::Undefined { k: 2, r: 1 }));
        assert_eq!(pretzel_gap_signature(12, 3), Err(SignatureError::Undefined { k: 12, r: 3 }));
        assert!(matches!(pretzel_gap_signature(4, 1), Err(SignatureError::BadParameter(_))));
    }

    #[test]
    fn not_reduced() {
        let k = trefoil().connected_sum(&kink());
        assert_eq!(traczyk_signature(&k), Err(SignatureError::NotReduced));
        assert_eq!(goeritz_signature(&k), -2);
    }
}
