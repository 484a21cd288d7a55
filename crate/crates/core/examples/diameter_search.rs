//! Searches for planes in R^N with small L4/L2 distortion and compares them
//! with the large-N limit 3m/(m+2).

use curvkit::diameter::{closed_form_d, estimate_d, mc_sphere_moment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 2;
    println!("D({m}, inf, 4) = {}", closed_form_d(m, 4)?);
    let mc = mc_sphere_moment(m, 4, 200_000, 0)?;
    println!("monte carlo: {:.5} +- {:.5}", mc.diameter(), mc.diameter_stderr());

    for n in [3, 4, 6, 10] {
        let e = estimate_d(m, n, 4, 0)?;
        println!("N = {n:>2}: sup ratio {:.9}  (excess constant {:+.3e})", e.value, e.empirical_constant());
    }
    Ok(())
}
