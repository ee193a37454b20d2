use proptest::prelude::*;
use spectral_chroma::lp::{complementary_slackness, primal_residual, solve_lp, LinearProgram, LpStatus, Relation, Sense};

/// Solves the square system by Gaussian elimination with partial pivoting.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-9 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| a[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / a[c][c];
    }
    Some(x)
}

/// `max cᵀx : Ax <= b, x >= 0` by enumerating every basic solution.
fn vertex_oracle(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> f64 {
    let n = c.len();
    let mut planes: Vec<(Vec<f64>, f64)> = a.iter().cloned().zip(b.iter().copied()).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        planes.push((e, 0.0));
    }
    let m = planes.len();
    let mut best = f64::NEG_INFINITY;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<&(Vec<f64>, f64)> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| &planes[i]).collect();
        let Some(x) = solve_square(
            chosen.iter().map(|p| p.0.clone()).collect(),
            chosen.iter().map(|p| p.1).collect(),
        ) else {
            continue;
        };
        let feasible = x.iter().all(|&v| v >= -1e-9)
            && a.iter().zip(b).all(|(row, bi)| row.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= bi + 1e-9);
        if feasible {
            best = best.max(c.iter().zip(&x).map(|(p, q)| p * q).sum());
        }
    }
    best
}

fn packing_strategy() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(n, m)| {
        (
            proptest::collection::vec(proptest::collection::vec(0u8..6, n), m),
            proptest::collection::vec(1u8..12, m),
            proptest::collection::vec(0u8..8, n),
        )
            .prop_map(move |(a, b, c)| {
                let mut a: Vec<Vec<f64>> = a.into_iter().map(|r| r.into_iter().map(f64::from).collect()).collect();
                let mut b: Vec<f64> = b.into_iter().map(f64::from).collect();
                a.push(vec![1.0; n]);
                b.push(20.0);
                (a, b, c.into_iter().map(f64::from).collect())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn packing_optimum_matches_vertex_enumeration((a, b, c) in packing_strategy()) {
        let mut p = LinearProgram::new(Sense::Maximize, c.clone());
        for (row, &bi) in a.iter().zip(&b) {
            p.add_row(row.clone(), Relation::Le, bi);
        }
        let s = solve_lp(&p).unwrap();
        prop_assert_eq!(s.status, LpStatus::Optimal);
        let oracle = vertex_oracle(&a, &b, &c);
        prop_assert!((s.objective - oracle).abs() <= 1e-8 * (1.0 + oracle.abs()), "{} vs {}", s.objective, oracle);
        prop_assert!(primal_residual(&p, &s.x) <= 1e-9);
        prop_assert!((s.objective - s.dual_objective).abs() <= 1e-8 * (1.0 + oracle.abs()));
        prop_assert!(complementary_slackness(&p, &s) <= 1e-8 * (1.0 + oracle.abs()));
        prop_assert!(s.duals.iter().all(|&y| y >= -1e-9));
        for j in 0..c.len() {
            let col: f64 = a.iter().zip(&s.duals).map(|(row, y)| row[j] * y).sum();
            prop_assert!(col >= c[j] - 1e-8);
        }
    }

    #[test]
    fn covering_dual_has_the_same_value((a, b, c) in packing_strategy()) {
        let m = a.len();
        let n = c.len();
        let cost = b.clone();
        let mut d = LinearProgram::new(Sense::Minimize, cost);
        for j in 0..n {
            d.add_row((0..m).map(|i| a[i][j]).collect(), Relation::Ge, c[j]);
        }
        let s = solve_lp(&d).unwrap();
        prop_assert_eq!(s.status, LpStatus::Optimal);
        let oracle = vertex_oracle(&a, &b, &c);
        prop_assert!((s.objective - oracle).abs() <= 1e-8 * (1.0 + oracle.abs()));
        prop_assert!(s.duals.iter().all(|&y| y >= -1e-9));
    }

    #[test]
    fn equality_rows_with_bounds_are_respected(t in 0.0f64..4.0, u in 1.0f64..3.0) {
        let mut p = LinearProgram::new(Sense::Minimize, vec![1.0, 2.0]);
        p.add_row(vec![1.0, 1.0], Relation::Eq, t + u);
        p.set_bounds(0, 0.0, Some(u));
        let s = solve_lp(&p).unwrap();
        prop_assert_eq!(s.status, LpStatus::Optimal);
        prop_assert!((s.x[0] - u).abs() <= 1e-9 && (s.x[1] - t).abs() <= 1e-9);
        prop_assert!((s.objective - (u + 2.0 * t)).abs() <= 1e-9);
    }
}

#[test]
fn infeasible_and_unbounded_are_reported() {
    let mut p = LinearProgram::new(Sense::Maximize, vec![1.0]);
    p.add_row(vec![1.0], Relation::Ge, 2.0);
    assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    p.add_row(vec![1.0], Relation::Le, 1.0);
    assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
}
