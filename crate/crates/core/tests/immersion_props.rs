use curvkit::cli::reproduce::catalog_instances;
use curvkit::immersions::{
    self, curvature_report, equivariant_from_subspace, random_quadratic, second_fundamental_form, ImmersionSpec, Sampler,
};
use curvkit::numkit::{self, stream_rng, sup_ratio, SubspaceBasis, DEFAULT_RESTARTS};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn instance(name: &str, p: &[(&str, f64)]) -> ImmersionSpec {
    let params: BTreeMap<String, f64> = p.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    immersions::by_name(name, &params).unwrap()
}

fn all_instances() -> Vec<ImmersionSpec> {
    catalog_instances().into_iter().map(|(name, p)| instance(name, &p)).collect()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + b.abs())
}

#[test]
fn jets_match_central_differences() {
    for spec in all_instances() {
        let h = 1e-5 * spec.domain().scale().max(1e-3);
        for x in Sampler::light(100, 4).points(spec.domain()) {
            let jet = spec.jet(&x).unwrap();
            for a in 0..spec.m() {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[a] += h;
                xm[a] -= h;
                let (fp, fm) = (spec.eval(&xp).unwrap(), spec.eval(&xm).unwrap());
                let (jp, jm) = (spec.jet(&xp).unwrap().jacobian, spec.jet(&xm).unwrap().jacobian);
                for k in 0..spec.n() {
                    let d = (fp[k] - fm[k]) / (2.0 * h);
                    assert!(close(jet.jacobian[(k, a)], d, 1e-5), "{} d{a}f{k}", spec.name());
                    for b in 0..spec.m() {
                        let d2 = (jp[(k, b)] - jm[(k, b)]) / (2.0 * h);
                        assert!(close(jet.hessians[k][(a, b)], d2, 1e-5), "{} d{a}d{b}f{k}", spec.name());
                    }
                }
            }
        }
    }
}

// Induced metric, its first derivatives, and the geodesic acceleration
// -Γ(v, v) at x.
fn geodesic_rhs(spec: &ImmersionSpec, x: &[f64], v: &[f64]) -> Vec<f64> {
    let m = spec.m();
    let jet = spec.jet(x).unwrap();
    let j = &jet.jacobian;
    let g = j.transpose() * j;
    // dg[k](i, j) = ∂_k g_ij
    let dg: Vec<DMatrix<f64>> = (0..m)
        .map(|k| {
            DMatrix::from_fn(m, m, |a, b| {
                (0..spec.n()).map(|c| jet.hessians[c][(a, k)] * j[(c, b)] + j[(c, a)] * jet.hessians[c][(b, k)]).sum()
            })
        })
        .collect();
    let ginv = g.try_inverse().unwrap();
    let mut gamma_vv = DVector::zeros(m);
    for l in 0..m {
        let mut s = 0.0;
        for kk in 0..m {
            let mut inner = 0.0;
            for a in 0..m {
                for b in 0..m {
                    inner += v[a] * v[b] * (dg[a][(kk, b)] + dg[b][(kk, a)] - dg[kk][(a, b)]);
                }
            }
            s += 0.5 * ginv[(l, kk)] * inner;
        }
        gamma_vv[l] = s;
    }
    gamma_vv.iter().map(|x| -x).collect()
}

fn flow(spec: &ImmersionSpec, x: &[f64], v: &[f64], t: f64, steps: usize) -> Vec<f64> {
    let m = x.len();
    let dt = t / steps as f64;
    let mut state: Vec<f64> = x.iter().chain(v).copied().collect();
    let f = |s: &[f64]| -> Vec<f64> {
        let acc = geodesic_rhs(spec, &s[..m], &s[m..]);
        s[m..].iter().copied().chain(acc).collect()
    };
    let axpy = |s: &[f64], k: &[f64], c: f64| -> Vec<f64> { s.iter().zip(k).map(|(a, b)| a + c * b).collect() };
    for _ in 0..steps {
        let k1 = f(&state);
        let k2 = f(&axpy(&state, &k1, dt / 2.0));
        let k3 = f(&axpy(&state, &k2, dt / 2.0));
        let k4 = f(&axpy(&state, &k3, dt));
        for i in 0..2 * m {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    state[..m].to_vec()
}

#[test]
fn geodesic_acceleration_matches_second_fundamental_form() {
    let h = 2e-3;
    for spec in all_instances().into_iter().filter(|s| s.n() > s.m()) {
        let mut rng = stream_rng(9, 0);
        for x in Sampler::light(3, 21).points(spec.domain()) {
            let ii = second_fundamental_form(&spec, &x).unwrap();
            let w = numkit::random_unit_vector(&mut rng, spec.m());
            let v: Vec<f64> = (0..spec.m()).map(|a| (0..spec.m()).map(|i| ii.frame[i][a] * w[i]).sum()).collect();
            let ahead = spec.eval(&flow(&spec, &x, &v, h, 20)).unwrap();
            let behind = spec.eval(&flow(&spec, &x, &v, -h, 20)).unwrap();
            let here = spec.eval(&x).unwrap();
            let acc: Vec<f64> = (0..spec.n()).map(|k| (ahead[k] - 2.0 * here[k] + behind[k]) / (h * h)).collect();
            let expected = numkit::norm(&ii.quadratic(&w));
            let got = numkit::norm(&acc);
            assert!((got - expected).abs() < 1e-4 * (1.0 + expected), "{}: {got} vs {expected}", spec.name());
        }
    }
}

#[test]
fn curvature_bounds_hold_on_catalog() {
    for spec in all_instances() {
        for x in Sampler::light(4, 2).points(spec.domain()) {
            let r = curvature_report(&spec, &x, DEFAULT_RESTARTS, 0).unwrap();
            let (m, k) = (spec.m() as f64, spec.codim() as f64);
            let c2 = r.curv_perp * r.curv_perp;
            assert!(r.pi_residual() < 1e-8, "{}", spec.name());
            assert!(r.pi_avg <= c2 + 1e-9, "{}", spec.name());
            assert!(r.ii_l2 * r.ii_l2 <= (m * m).min(k * m) * c2 + 1e-6, "{}", spec.name());
            assert!((r.pi_mc - r.pi_avg).abs() <= 5.0 * r.pi_mc_stderr + 1e-12, "{}", spec.name());
        }
    }
}

#[test]
fn frames_are_normal_where_present() {
    for spec in all_instances().into_iter().filter(ImmersionSpec::has_frame) {
        for x in Sampler::light(8, 3).points(spec.domain()) {
            let res = spec.frame_residual(&x).unwrap().unwrap();
            assert!(res < 1e-9, "{}: {res}", spec.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clifford_curvature_is_the_quartic_ratio(n in 1usize..9, seed in 0u64..10_000) {
        let spec = immersions::clifford_torus(n, None).unwrap();
        let x = Sampler::light(1, seed).points(spec.domain()).remove(0);
        let ii = second_fundamental_form(&spec, &x).unwrap();
        let mut rng = stream_rng(seed, 1);
        for _ in 0..10 {
            let u = numkit::random_unit_vector(&mut rng, n);
            let star = (numkit::lp_norm(&u, 4).unwrap() / numkit::lp_norm(&u, 2).unwrap()).powi(2);
            prop_assert!((numkit::norm(&ii.quadratic(&u)) - star).abs() < 1e-9);
        }
    }

    #[test]
    fn equivariant_tori_are_isometric_and_respect_petrunin(m in 2usize..4, extra in 1usize..4, seed in 0u64..10_000) {
        let n = m + extra;
        let mut rng = stream_rng(seed, 2);
        let b = SubspaceBasis::random(m, n, &mut rng).unwrap();
        let spec = equivariant_from_subspace(&b).unwrap();
        let x = Sampler::light(1, seed).points(spec.domain()).remove(0);
        let j = spec.jet(&x).unwrap().jacobian;
        let g = j.transpose() * &j;
        let dev = (g - DMatrix::identity(m, m)).abs().max();
        prop_assert!(dev < 1e-9, "metric deviation {dev:e}");
        let c = curvature_report(&spec, &x, DEFAULT_RESTARTS, seed).unwrap().curv_perp;
        let r = sup_ratio(&b, DEFAULT_RESTARTS, seed).value;
        prop_assert!((c - r.sqrt()).abs() < 1e-6, "{c} vs sqrt({r})");
        let md = m as f64;
        prop_assert!(c >= (3.0 * md / (md + 2.0)).sqrt() - 1e-6);
    }

    #[test]
    fn pi_identity_on_random_jets(m in 1usize..5, extra in 1usize..4, seed in 0u64..100_000) {
        let spec = random_quadratic(m, m + extra, seed).unwrap();
        let x = Sampler::light(1, seed).points(spec.domain()).remove(0);
        let r = curvature_report(&spec, &x, 8, seed).unwrap();
        prop_assert!(r.pi_residual() < 1e-8);
        prop_assert!(r.pi_avg <= r.curv_perp * r.curv_perp + 1e-9);
    }
}
