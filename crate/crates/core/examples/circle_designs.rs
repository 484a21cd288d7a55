//! Builds, verifies, searches for and serializes spherical 4-designs, and
//! shows the plane they span has a constant quartic ratio.

use curvkit::designs::{circle_design, read_design, search_design, verify_design, write_design};
use curvkit::diameter::design_to_subspace;
use curvkit::numkit::{ratio4, sup_ratio};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=7 {
        let c = verify_design(&circle_design(n)?, 4)?;
        println!("{n}-gon: pass={} residuals ({:.1e}, {:.1e}, {:.1e})", c.pass, c.residual2, c.residual3, c.residual4);
    }

    let hexagon = circle_design(6)?;
    let plane = design_to_subspace(&hexagon)?;
    let samples: Vec<f64> = (0..5)
        .map(|k| {
            let t = k as f64 * 0.7;
            ratio4(&plane.combine(&[t.cos(), t.sin()])).unwrap()
        })
        .collect();
    println!("ratio4 along the hexagon plane: {samples:.12?}");
    println!("sup ratio: {:.12}", sup_ratio(&plane, 16, 0).value);

    let found = search_design(3, 12, 0, 200)?;
    println!("12 points on S^2: residual {:.2e} after {} iterations", found.residual(), found.iterations);
    let text = write_design(&found.design);
    assert_eq!(read_design(&text)?, found.design);
    print!("{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
