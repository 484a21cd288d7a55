use curvkit::diameter::{closed_form_d, estimate_d, estimate_lozenge, mc_sphere_moment};
use curvkit::numkit::OPT_TOL;

#[test]
fn estimates_decrease_in_n_and_stay_in_the_sandwich() {
    let values: Vec<f64> = (3..=6).map(|n| estimate_d(2, n, 4, 1).unwrap().value).collect();
    for w in values.windows(2) {
        assert!(w[0] >= w[1] - OPT_TOL, "{values:?}");
    }
    let limit = closed_form_d(2, 4).unwrap();
    for v in &values {
        // circle_design(5) exists for N >= 5, and 3m/(m+2) is also the
        // exact value for N = 3, 4.
        assert!(*v >= limit - OPT_TOL && *v <= 2.0, "{v}");
    }
}

#[test]
fn full_dimension_is_trivial() {
    let e = estimate_d(3, 3, 2, 0).unwrap();
    assert_eq!(e.value, 3.0);
}

#[test]
fn moment_estimates_bracket_the_closed_form() {
    for (m, p) in [(2, 4), (4, 4), (3, 6)] {
        let e = mc_sphere_moment(m, p, 200_000, 5).unwrap();
        let d = closed_form_d(m, p).unwrap();
        assert!((e.diameter() - d).abs() < 4.0 * e.diameter_stderr(), "m={m} p={p}: {} vs {d}", e.diameter());
    }
}

#[test]
fn weighted_search_is_no_worse_than_uniform() {
    let plain = estimate_d(2, 4, 4, 2).unwrap().value;
    let weighted = estimate_lozenge(2, 4, 4, 2).unwrap();
    assert!(weighted.quartic_value <= plain + OPT_TOL);
    assert!((weighted.norm_ratio() - weighted.quartic_value.powf(0.25)).abs() < 1e-15);
}
