mod common;

use bilinred::model::{frac, int, ints, Matrix, Rational};
use bilinred::relax::{
    build_relaxation, lp_file_text, mccormick_rows, solve_lp, LpStatus, Mode, RowKind,
};
use bilinred::{BilinearSystem, Bounds, Objective, Sense};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn with_box(s: BilinearSystem, bx: Bounds, obj: Objective) -> BilinearSystem {
    s.with_bounds(bx).unwrap().with_objective(obj).unwrap()
}

/// `n = 2` instance feasible on the unit box, random objective.
fn tiny_instance(seed: u64) -> BilinearSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=2);
    let s = common::random_system(&mut rng, m, 2);
    // re-center b on an interior point so the box intersects Ax = b
    let xstar = vec![frac(rng.random_range(1..=3), 4), frac(rng.random_range(1..=3), 4)];
    let b = s.a().mul_vec(&xstar);
    let s = BilinearSystem::new(s.a().clone(), b).unwrap();
    let coef = |rng: &mut ChaCha8Rng| int(rng.random_range(-3..=3));
    let obj = Objective {
        x: vec![coef(&mut rng), coef(&mut rng)],
        w: vec![coef(&mut rng), coef(&mut rng)],
        y: coef(&mut rng),
        sense: if rng.random_bool(0.5) { Sense::Min } else { Sense::Max },
    };
    with_box(s, Bounds::unit(2), obj)
}

#[test]
fn golden_min_w1_full_mode() {
    let s = with_box(
        BilinearSystem::new(Matrix::from_ints(&[[1, 1]]), ints(&[1])).unwrap(),
        Bounds::unit(2),
        Objective { x: ints(&[0, 0]), w: ints(&[1, 0]), y: int(0), sense: Sense::Min },
    );
    let lp = build_relaxation(&s, Mode::Full).unwrap();
    assert_eq!(lp.num_vars(), 5);
    // frozen from the vertex enumeration below
    let golden = int(0);
    assert_eq!(common::vertex_enumeration_opt(&lp), Some(golden.clone()));
    let sol = solve_lp(&lp);
    assert_eq!(sol.status, LpStatus::Optimal);
    assert_eq!(sol.value, Some(golden));
}

#[test]
fn golden_fractional_optimum() {
    // min w1 - w2 + x1 over x1 + 2 x2 = 1 on x in [0,1]^2, y in [-1, 2]
    let s = with_box(
        BilinearSystem::new(Matrix::from_ints(&[[1, 2]]), ints(&[1])).unwrap(),
        Bounds::new(ints(&[0, 0]), ints(&[1, 1]), int(-1), int(2)).unwrap(),
        Objective { x: ints(&[1, 0]), w: ints(&[1, -1]), y: int(0), sense: Sense::Min },
    );
    for mode in [Mode::Full, Mode::Reduced] {
        let lp = build_relaxation(&s, mode).unwrap();
        let oracle = common::vertex_enumeration_opt(&lp).unwrap();
        let sol = solve_lp(&lp);
        assert_eq!(sol.value.as_ref(), Some(&oracle), "{mode:?}");
        assert!(lp.is_feasible(sol.point.as_ref().unwrap()));
    }
    let full = solve_lp(&build_relaxation(&s, Mode::Full).unwrap()).value.unwrap();
    let reduced = solve_lp(&build_relaxation(&s, Mode::Reduced).unwrap()).value.unwrap();
    // frozen from the vertex enumeration; the bilinear minimum itself is -1
    // (x = (0, 1/2), y = 2), so here the full relaxation is tight and the
    // reduced one is not
    assert_eq!(full, int(-1));
    assert_eq!(reduced, int(-2));
}

#[test]
fn simplex_agrees_with_vertex_enumeration() {
    for seed in 0..30 {
        let s = tiny_instance(seed);
        for mode in [Mode::Full, Mode::Reduced] {
            let lp = build_relaxation(&s, mode).unwrap();
            let oracle = common::vertex_enumeration_opt(&lp).expect("bounded and feasible");
            let sol = solve_lp(&lp);
            assert_eq!(sol.status, LpStatus::Optimal, "seed {seed} {mode:?}");
            assert_eq!(sol.value, Some(oracle), "seed {seed} {mode:?}");
            let point = sol.point.unwrap();
            assert!(lp.is_feasible(&point));
            assert_eq!(lp.objective_value(&point), sol.value.unwrap());
        }
    }
}

#[test]
fn reduced_mode_structure() {
    for seed in 0..20 {
        let s = tiny_instance(seed);
        let full = build_relaxation(&s, Mode::Full).unwrap();
        let reduced = build_relaxation(&s, Mode::Reduced).unwrap();
        assert_eq!(
            full.count_rows(RowKind::Envelope) - reduced.count_rows(RowKind::Envelope),
            4 * s.m()
        );
        assert_eq!(reduced.count_rows(RowKind::Reduction), s.m());
        assert_eq!(full.count_rows(RowKind::Reduction), 0);
        assert_eq!(full.rows.len(), s.m() + 4 * s.n());
        assert_eq!(reduced.rows.len(), 2 * s.m() + 4 * (s.n() - s.m()));
    }
}

#[test]
fn permuted_rows_give_same_optimum() {
    for seed in 0..20 {
        let s = tiny_instance(seed);
        for mode in [Mode::Full, Mode::Reduced] {
            let lp = build_relaxation(&s, mode).unwrap();
            let mut rev = lp.clone();
            rev.rows.reverse();
            let mut rotated = lp.clone();
            rotated.rows.rotate_left(3);
            let v = solve_lp(&lp).value;
            assert_eq!(solve_lp(&rev).value, v);
            assert_eq!(solve_lp(&rotated).value, v);
        }
    }
}

#[test]
fn lp_file_row_counts() {
    let s = with_box(
        BilinearSystem::new(Matrix::from_ints(&[[1, 1]]), ints(&[1])).unwrap(),
        Bounds::unit(2),
        Objective { x: ints(&[0, 0]), w: ints(&[1, 0]), y: int(0), sense: Sense::Min },
    );
    let count = |mode| {
        lp_file_text(&build_relaxation(&s, mode).unwrap())
            .lines()
            .filter(|l| l.starts_with(" c"))
            .count()
    };
    assert_eq!(count(Mode::Full), 9);
    assert_eq!(count(Mode::Reduced), 6);
}

fn box_strategy() -> impl Strategy<Value = (Rational, Rational, Rational, Rational)> {
    (-6i64..=6, 0i64..=6, -6i64..=6, 0i64..=6)
        .prop_map(|(xl, dx, yl, dy)| (frac(xl, 2), frac(xl + dx, 2), frac(yl, 2), frac(yl + dy, 2)))
}

proptest! {
    #[test]
    fn envelopes_contain_the_graph(
        (xlo, xhi, ylo, yhi) in box_strategy(),
        sx in 0i64..=8,
        sy in 0i64..=8,
    ) {
        let bx = Bounds::new(vec![xlo.clone()], vec![xhi.clone()], ylo.clone(), yhi.clone()).unwrap();
        let x = &xlo + (&xhi - &xlo) * frac(sx, 8);
        let y = &ylo + (&yhi - &ylo) * frac(sy, 8);
        let w = &x * &y;
        let point = vec![x, w, y];
        for row in mccormick_rows(0, &bx).unwrap() {
            prop_assert!(row.is_satisfied(&point));
        }
    }
}
