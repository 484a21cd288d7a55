//! Expansion constants of rolled bands and of normal exponential maps into
//! the unit ball.

use curvkit::immersions::{
    clifford_torus, expansion_min, normal_exponential, rolled_band, rolled_band_product, round_torus, ImmersionError,
    Sampler,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sampler = Sampler::light(4096, 0);
    for (n, r, eps) in [(2, 1.0, 0.1), (3, 1.0, 0.1), (3, 1.0, 0.3)] {
        let e = expansion_min(&rolled_band(n, r, eps)?, &sampler)?;
        println!("rolled band n={n} r={r} eps={eps}: {:.12}", e.min_singular);
    }
    let square = expansion_min(&rolled_band_product(2, 0.6)?, &sampler)?;
    println!("product band: {:.12}", square.min_singular);

    let clifford = normal_exponential(&clifford_torus(2, None)?, 0.35)?;
    println!("Clifford normal exponential, r = 0.35: {:.6}", expansion_min(&clifford, &sampler)?.min_singular);

    let torus = round_torus(2.0 / 3.0, 1.0 / 3.0)?;
    match normal_exponential(&torus, 0.3) {
        Err(ImmersionError::FocalRadius { limit, .. }) => println!("round torus: r must stay below {limit:.4}"),
        other => println!("round torus: {other:?}"),
    }
    let fine = normal_exponential(&torus, 0.24)?;
    println!("round torus, r = 0.24: {:.6}", expansion_min(&fine, &sampler)?.min_singular);
    Ok(())
}
