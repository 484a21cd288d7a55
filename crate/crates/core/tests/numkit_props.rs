use curvkit::numkit::{self, orthonormalize, ratio4, stream_rng, sup_ratio, SubspaceBasis};
use proptest::prelude::*;

fn nonzero_vec(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, 1..=max_len).prop_filter("nonzero", |v| numkit::norm(v) > 1e-3)
}

/// Brute force over the unit circle of coefficients: a dense grid, then
/// golden-section refinement around the best few cells.
fn grid_sup(b: &SubspaceBasis) -> f64 {
    let f = |t: f64| ratio4(&b.combine(&[t.cos(), t.sin()])).unwrap();
    let n = 20_000;
    let h = std::f64::consts::PI / n as f64;
    let mut cells: Vec<(f64, f64)> = (0..n).map(|i| (f(i as f64 * h), i as f64 * h)).collect();
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    cells
        .iter()
        .take(8)
        .map(|&(_, t0)| {
            let (mut a, mut c) = (t0 - h, t0 + h);
            for _ in 0..80 {
                let x1 = c - g * (c - a);
                let x2 = a + g * (c - a);
                if f(x1) > f(x2) {
                    c = x2;
                } else {
                    a = x1;
                }
            }
            f(0.5 * (a + c))
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio4_is_scale_invariant(x in nonzero_vec(12), lambda in prop_oneof![-1e3f64..-1e-3, 1e-3f64..1e3]) {
        let scaled: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        let (a, b) = (ratio4(&x).unwrap(), ratio4(&scaled).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn ratio4_lies_between_one_and_n(x in nonzero_vec(12)) {
        let r = ratio4(&x).unwrap();
        prop_assert!(r >= 1.0 - 1e-12 && r <= x.len() as f64 + 1e-12);
    }

    #[test]
    fn sup_ratio_grows_under_basis_extension(m in 1usize..4, extra in 1usize..4, seed in 0u64..1000) {
        let n = m + extra;
        let mut rng = stream_rng(seed, 0);
        let big = SubspaceBasis::random(m + 1, n, &mut rng).unwrap();
        let small = SubspaceBasis::new(big.rows()[..m].to_vec()).unwrap();
        let s = sup_ratio(&small, 16, seed).value;
        let b = sup_ratio(&big, 16, seed).value;
        prop_assert!(b >= s - numkit::OPT_TOL, "{b} < {s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sup_ratio_matches_the_grid_oracle(n in 2usize..=4, seed in 0u64..10_000) {
        let mut rng = stream_rng(seed, 1);
        let b = SubspaceBasis::random(2, n, &mut rng).unwrap();
        let oracle = grid_sup(&b);
        let got = sup_ratio(&b, numkit::DEFAULT_RESTARTS, seed).value;
        prop_assert!((got - oracle).abs() < 1e-6, "sup_ratio {got} vs grid {oracle}");
    }
}

#[test]
fn grid_oracle_agrees_on_a_known_plane() {
    let b = orthonormalize(vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 1.0, 0.0]]).unwrap();
    // x = (c, s/√2, s/√2, 0): ratio4 = 4(c⁴ + s⁴/2), maximal at c = ±1.
    assert!((grid_sup(&b) - 4.0).abs() < 1e-9);
    assert!((sup_ratio(&b, 8, 0).value - 4.0).abs() < 1e-9);
}
