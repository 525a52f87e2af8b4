use proptest::prelude::*;
use winsor_core::oracle::problem::{augment_grid, default_grid, uniform_grid};
use winsor_core::tolerance::close_rel;
use winsor_core::*;

fn spec(m: f64, s: f64) -> MomentSpec {
    MomentSpec::new(m, s).unwrap()
}

fn strike(c: f64) -> Strike {
    Strike::new(c).unwrap()
}

/// Positive mean with σ ≤ 5m, so the default positive grid always admits a
/// distribution.
fn positive_problem() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.1f64..10.0, 0.02f64..5.0, 0.01f64..4.0).prop_map(|(m, ratio, cmul)| {
        let s = m * ratio;
        let t = (m * m + s * s) / (2.0 * m);
        (m, s, t * cmul)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn duality_and_reduction((m, s, c) in positive_problem()) {
        let sp = spec(m, s);
        let k = strike(c);
        let sol = scarf_min(sp, k).unwrap();
        prop_assert!(close_rel(lo_max(sp, k).unwrap() + sol.min_winsorized, m, 1e-12, sp.scale(k)));
        let z = standardize(k, sp);
        let inf = standardized_scarf_inf(sp.mean_std(), z.strike_std).unwrap();
        prop_assert!(close_rel(sol.min_winsorized, m + s * inf.value, 1e-12, sp.scale(k)));
        prop_assert!(sol.min_winsorized >= winsorized_floor(sp, k));
        prop_assert!(sol.min_winsorized <= c.min(m) + 1e-12 * sp.scale(k));
    }

    #[test]
    fn extremal_is_feasible_and_attains((m, s, c) in positive_problem()) {
        let sp = spec(m, s);
        let sol = scarf_min(sp, strike(c)).unwrap();
        let e = sol.extremal.unwrap();
        prop_assert!(e.low() >= 0.0);
        prop_assert!(e.low() <= c && c <= e.high());
        prop_assert!(close_rel(e.mean(), m, 1e-12, sp.scale(strike(c))));
        prop_assert!(close_rel(e.variance(), s * s, 1e-12, sp.scale(strike(c)).powi(2)));
        prop_assert!(close_rel(e.winsorized_expectation(c), sol.min_winsorized, 1e-12, sp.scale(strike(c))));
    }

    #[test]
    fn scarf_min_is_monotone_in_strike((m, s, c) in positive_problem(), dc in 0.0f64..1.0) {
        let sp = spec(m, s);
        let a = scarf_min(sp, strike(c)).unwrap().min_winsorized;
        let b = scarf_min(sp, strike(c + dc)).unwrap().min_winsorized;
        prop_assert!(b >= a - 1e-12 * sp.scale(strike(c + dc)));
    }

    #[test]
    fn p_m_threshold_matches_branch(mu in 0.05f64..20.0, c in -3.0f64..3.0) {
        prop_assume!(c > -mu);
        let inf = standardized_scarf_inf(mu, c).unwrap();
        let pm = p_m(mu).unwrap();
        let ps = p_star(c);
        // p* ≥ p_m exactly on the high-strike side of (1 − μ²)/(2μ).
        if (ps - pm).abs() > 1e-12 {
            prop_assert_eq!(ps > pm, inf.branch == Branch::HighStrike);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_never_beats_closed_form((m, s, c) in positive_problem(), n in 8usize..40) {
        let sp = spec(m, s);
        let k = strike(c);
        let closed = scarf_min(sp, k).unwrap().min_winsorized;
        let grid = augment_grid(&default_grid(sp, Some(0.0), n), &[c]);
        let problem = OracleProblem::new(sp, k, grid, Some(0.0), None).unwrap();
        match oracle_min(&problem) {
            Ok(sol) => {
                prop_assert!(sol.value >= closed - 1e-9);
                prop_assert!(sol.argmin.len() <= 3);
                prop_assert!((sol.argmin.mean() - m).abs() <= 1e-9 * sp.scale(k));
            }
            Err(BoundsError::Infeasible) => {}
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
    }

    #[test]
    fn tail_constrained_oracle_respects_l_c(c in -2.0f64..2.0, t in 0.05f64..0.95, n in 10usize..24) {
        let interval = feasible_p_interval(c);
        let p = interval.lower + t * interval.width();
        prop_assume!(p > 0.0 && p < 1.0);
        let sp = spec(0.0, 1.0);
        let two = two_point_from_p(p).unwrap();
        prop_assume!(two.low() < c && c < two.high());
        let grid = augment_grid(&uniform_grid(-6.0, 6.0, n), &[c, two.low(), two.high()]);
        let problem = OracleProblem::new(sp, strike(c), grid, None, Some(p)).unwrap();
        let sol = oracle_min(&problem).unwrap();
        let l = l_value(p, c).unwrap();
        prop_assert!(sol.argmin.len() <= 4);
        prop_assert!((sol.argmin.prob_le(c) - p).abs() <= 1e-9);
        // The two-point member is on the grid, so the oracle attains L_c(p).
        prop_assert!((sol.value - l).abs() <= 1e-9, "{} vs {}", sol.value, l);
    }

    #[test]
    fn sampled_distributions_obey_lattice_and_remark(seed in any::<u64>(), m in -2.0f64..2.0, s in 0.2f64..3.0) {
        let sp = spec(m, s);
        let grid = default_grid(sp, None, 25);
        for d in random_feasible_batch(sp, &grid, None, seed, 10).unwrap() {
            prop_assert!((d.mean() - m).abs() <= 1e-12 * sp.scale(strike(0.0)));
            prop_assert!((d.variance() - s * s).abs() <= 1e-12 * sp.scale(strike(0.0)).powi(2));
            for &c in d.support().iter().chain([m, m + s, m - 0.5 * s].iter()) {
                let k = strike(c);
                prop_assert!((expected_call(&d, k) - (d.mean() - winsorized_expectation(&d, k))).abs() <= 1e-12 * sp.scale(k));
                let tail_mean = d.expect(|x| if x > c { x } else { 0.0 });
                prop_assert!(tail_mean >= m * d.prob_gt(c) - 1e-9);
            }
        }
    }
}

#[test]
fn verification_is_deterministic() {
    let a = verify_scarf(spec(1.3, 0.7), strike(1.1), 60, 25, 9).unwrap();
    let b = verify_scarf(spec(1.3, 0.7), strike(1.1), 60, 25, 9).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    let a = verify_dlp(spec(0.4, 1.2), strike(-0.3), 10, 25, 4).unwrap();
    let b = verify_dlp(spec(0.4, 1.2), strike(-0.3), 10, 25, 4).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn oracle_matches_closed_form_on_both_branches() {
    for (m, s, c) in [
        (1.0, 1.0, 0.5),
        (1.0, 1.0, 3.0),
        (2.0, 0.5, 2.0),
        (0.5, 2.0, 0.1),
    ] {
        let r = verify_scarf(spec(m, s), strike(c), 120, 30, 1).unwrap();
        assert!(r.gap.abs() <= 1e-9, "({m}, {s}, {c}): {r:?}");
        assert!(r.worst_violation >= -1e-9);
        assert!(r.oracle_distribution.len() <= 3);
    }
}
