//! Closed-form scalar-curvature values, Bessel-zero brackets, band widths
//! and the curvature lower bounds.

use curvkit::scalarbounds::{
    band_max_radius, bessel_zero_bracket, evaluate, lower_bound_catalog, BoundsKind, BoundsQuery,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=6 {
        let q = BoundsQuery { n: Some(n), ..Default::default() };
        println!("ball B^{n}: {:?}", evaluate(BoundsKind::Ball, &q)?);
    }
    for nu in [1.0, 2.5, 10.0] {
        let (lo, hi) = bessel_zero_bracket(nu)?;
        println!("j_{nu}: [{lo:.4}, {hi:.4}]");
    }
    let sc = 4.0 * std::f64::consts::PI.powi(2) * 3.0;
    println!("band width for Sc of the unit 3-cube: r <= {:?}", band_max_radius(sc, &[f64::INFINITY])?);

    for m in [2, 3, 6] {
        let q = BoundsQuery { m: Some(m), k: Some(1), ..Default::default() };
        println!(
            "m={m}: petrunin {:.6}, sphere {:.6}",
            lower_bound_catalog(BoundsKind::Petrunin, &q)?,
            lower_bound_catalog(BoundsKind::SphereLower, &q)?
        );
    }
    Ok(())
}
