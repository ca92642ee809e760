//! Independent checks of computed values.

use nalgebra::DMatrix;
use proptest::prelude::*;

use crossgeo::catalog::bundled_catalog;
use crossgeo::diagram::{fixtures, KnotDiagram};
use crossgeo::edgepath::candidate_table;
use crossgeo::rational::int;
use crossgeo::signature::{goeritz_signature, matrix_signature, pretzel_gap_signature, traczyk_signature};
use crossgeo::states::{normalized_bracket, State, DEFAULT_STATE_CAP};

fn eigen_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let a = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
    a.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&l| if l > 1e-9 { 1 } else if l < -1e-9 { -1 } else { 0 })
        .sum()
}

fn symmetric(n: usize, entries: Vec<i64>) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    let mut it = entries.into_iter();
    for i in 0..n {
        for j in i..n {
            let v = it.next().unwrap_or(0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

proptest! {
    #[test]
    fn matrix_signature_matches_eigenvalues(n in 0usize..7, entries in prop::collection::vec(-3i64..=3, 28)) {
        let m = symmetric(n, entries);
        prop_assert_eq!(matrix_signature(&m), eigen_signature(&m));
    }

    #[test]
    fn low_rank_matrices(v in prop::collection::vec(-2i64..=2, 1..6), w in prop::collection::vec(-2i64..=2, 6)) {
        // v vᵀ - w wᵀ has at most one positive and one negative eigenvalue
        let n = v.len();
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| v[i] * v[j] - w[i] * w[j]).collect()).collect();
        prop_assert_eq!(matrix_signature(&m), eigen_signature(&m));
    }
}

/// Upsilon at `t = 1` of a positive torus knot from its semigroup:
/// `max_m { -2 #(S ∩ [0,m)) - (g - m) }` over `0 <= m <= 2g`.
fn torus_upsilon(p: i64, q: i64) -> i64 {
    let g = (p - 1) * (q - 1) / 2;
    let in_s = |x: i64| (0..=x / p).any(|a| (x - a * p) % q == 0);
    (0..=2 * g)
        .map(|m| -2 * (0..m).filter(|&x| in_s(x)).count() as i64 - (g - m))
        .max()
        .unwrap()
}

#[test]
fn bundled_upsilon_values() {
    let cat = bundled_catalog();
    for (name, p, q) in [("T(4,3)", 4, 3), ("T(6,5)", 6, 5), ("T(8,7)", 8, 7)] {
        let rec = cat.find(name).unwrap();
        assert_eq!(rec.upsilon, Some(torus_upsilon(p, q)), "{name}");
        assert!(rec.note.is_some());
    }
    assert_eq!(torus_upsilon(3, 2), -1);
    assert_eq!(torus_upsilon(5, 2), -2);
}

#[test]
fn traczyk_agrees_with_goeritz() {
    let mut ds = vec![
        fixtures::trefoil(),
        fixtures::five_two(),
        fixtures::figure_eight(),
        fixtures::trefoil().connected_sum(&fixtures::five_two()),
        KnotDiagram::torus(5, 2).unwrap(),
        KnotDiagram::torus(7, 2).unwrap(),
        KnotDiagram::pretzel(&[3, 3, 3]).unwrap(),
        KnotDiagram::pretzel(&[-3, -5, -1]).unwrap(),
    ];
    ds.extend(ds.clone().iter().map(KnotDiagram::mirror));
    for d in &ds {
        assert_eq!(traczyk_signature(d), Ok(goeritz_signature(d)), "{d}");
    }
}

#[test]
fn known_signatures() {
    // torus knot signatures from the Gordon-Litherland-Murasugi recursion
    for (p, q, s) in [(3, 2, -2), (5, 2, -4), (4, 3, -6), (5, 3, -8), (7, 2, -6)] {
        assert_eq!(goeritz_signature(&KnotDiagram::torus(p, q).unwrap()), s, "T({p},{q})");
    }
    for (k, r) in [(5, 1), (9, 1), (5, 3), (9, 3), (3, 1), (7, 3), (15, 3)] {
        let d = KnotDiagram::pretzel(&[-k, r, -r - 1]).unwrap();
        assert_eq!(Ok(goeritz_signature(&d)), pretzel_gap_signature(k, r), "({k},{r})");
    }
}

#[test]
fn bracket_is_a_knot_invariant() {
    let t = normalized_bracket(&fixtures::trefoil(), DEFAULT_STATE_CAP).unwrap();
    let tk = normalized_bracket(&fixtures::trefoil().connected_sum(&fixtures::kink()), DEFAULT_STATE_CAP).unwrap();
    assert_eq!(t, tk);
    // V(t) = t + t³ - t⁴ with t = A⁻⁴
    assert_eq!(t, [(-4, 1), (-12, 1), (-16, -1)].into_iter().collect());
    let e = normalized_bracket(&fixtures::figure_eight(), DEFAULT_STATE_CAP).unwrap();
    assert_eq!(e, normalized_bracket(&fixtures::figure_eight().mirror(), DEFAULT_STATE_CAP).unwrap());
}

#[test]
fn seifert_state_circles() {
    // Seifert circles of a braid closure are the braid strands
    for (p, q) in [(3, 2), (4, 3), (5, 2), (5, 3)] {
        let d = KnotDiagram::torus(p, q).unwrap();
        let s = State::seifert(&d);
        assert!(s.orientable());
        assert_eq!(s.circle_count() as i64, q);
        let f = s.surface();
        assert_eq!((f.e, f.b1), (0, (p - 1) * (q - 1)));
    }
}

/// Rows `(e, b1, Γ⁺, Γ⁻)` of the Type II and Type III tables in closed form.
fn table_rows(n: i64) -> Vec<(&'static str, [i64; 4])> {
    vec![
        ("II_0", [0, 2, 2, 2]),
        ("II_1", [2 * n - 2, n + 1, 2, 2 * n]),
        ("II_2", [4, 4, 2, 6]),
        ("II_3", [2 * n + 2, n + 3, 2, 2 * n + 4]),
        ("II_4", [-4, 4, 6, 2]),
        ("II_5", [2 * n - 6, n + 1, 4, 2 * n - 2]),
        ("II_6", [0, 4, 4, 4]),
        ("II_7", [2 * n - 2, n + 3, 4, 2 * n + 2]),
        ("III_0", [0, 4, 4, 4]),
        ("III_1", [2 * n, n + 2, 2, 2 * n + 2]),
        ("III_2", [6, 5, 2, 8]),
        ("III_3", [2 * n + 6, n + 3, 0, 2 * n + 6]),
        ("III_4", [-6, 5, 8, 2]),
        ("III_5", [2 * n - 6, n + 3, 6, 2 * n]),
        ("III_6", [0, 6, 6, 6]),
        ("III_7", [2 * n, n + 4, 4, 2 * n + 4]),
    ]
}

#[test]
fn candidate_tables_closed_form() {
    for n in [3, 5, 7, 9, 11] {
        let rows = candidate_table(n, 0).unwrap();
        for (name, [e, b, gp, gm]) in table_rows(n) {
            let r = rows.iter().find(|r| r.system == name).unwrap();
            assert_eq!((r.e, r.b1, r.gamma_plus, r.gamma_minus), (int(e), int(b), int(gp), int(gm)), "{name} at n={n}");
        }
    }
}
