//! Defining a new immersion from jet arithmetic: the helicoid
//! (u, v) -> (u cos v, u sin v, v / 2), whose curvature peaks on its axis.

use curvkit::immersions::{curv_perp_global, curvature_report, Domain, ImmersionSpec, Jet, Sampler};
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = Arc::new(|x: &[Jet]| vec![&x[0] * x[1].cos(), &x[0] * x[1].sin(), x[1].scale(0.5)]);
    let domain = Domain::boxed(vec![-1.0, 0.0], vec![1.0, 6.0]);
    let helicoid = ImmersionSpec::new("helicoid", 2, 3, domain, map);

    for u in [0.0, 0.25, 0.5, 1.0] {
        let r = curvature_report(&helicoid, &[u, 1.0], 16, 0)?;
        // Principal curvatures are +-c/(c^2 + u^2) with c = 1/2.
        println!("u = {u}: curv {:.9}, exact {:.9}, mean {:.1e}", r.curv_perp, 0.5 / (0.25 + u * u), r.mean_curv);
    }
    let g = curv_perp_global(&helicoid, &Sampler::light(256, 0), 16, 0)?;
    println!("sampled sup {:.6} near u = {:.3}", g.sup, g.point[0]);
    Ok(())
}
