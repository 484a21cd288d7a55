//! Sampled global curvature of tubes and of the recursive torus-by-torus
//! construction, against the bound (m/k + 1)sqrt(m + k).

use curvkit::immersions::{
    clifford_torus, curv_perp_global, round_torus, torus_by_torus, tube_boundary, Sampler,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let torus = round_torus(2.0 / 3.0, 1.0 / 3.0)?;
    let g = curv_perp_global(&torus, &Sampler::light(512, 0), 16, 0)?;
    println!("round torus: {:.6} at {:?}", g.sup, g.point);

    let tube = tube_boundary(&clifford_torus(2, None)?, 1.0 / (2.0 * 2f64.sqrt()))?;
    let g = curv_perp_global(&tube, &Sampler::light(512, 0), 16, 0)?;
    println!("tube over the Clifford torus: {:.6} (2sqrt2 + 1 = {:.6})", g.sup, 2.0 * 2f64.sqrt() + 1.0);

    for (k, i) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
        let spec = torus_by_torus(k, i)?;
        let (m, kf) = (spec.m() as f64, k as f64);
        let g = curv_perp_global(&spec, &Sampler::light(128, 0), 16, 0)?;
        println!("T^{} in B^{}: {:.6} <= {:.6}", spec.m(), spec.n(), g.sup, (m / kf + 1.0) * (m + kf).sqrt());
    }
    Ok(())
}
