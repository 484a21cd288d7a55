//! Normal curvature of flat tori in the unit ball: the Clifford torus, the
//! equivariant torus spanned by a circle design, and the Veronese surface.

use curvkit::designs::circle_design;
use curvkit::diameter::design_to_subspace;
use curvkit::immersions::{clifford_torus, curvature_report, equivariant_from_subspace, spherical_curv, veronese};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2, 3, 8] {
        let r = curvature_report(&clifford_torus(n, None)?, &vec![0.0; n], 32, 0)?;
        println!("Clifford T^{n}: curv {:.9}  Pi {:.9}", r.curv_perp, r.pi_avg);
    }

    let plane = design_to_subspace(&circle_design(6)?)?;
    let torus = equivariant_from_subspace(&plane)?;
    for x in [[0.0, 0.0], [0.4, 1.3], [2.0, -0.7]] {
        println!("design torus at {x:?}: curv {:.12}", curvature_report(&torus, &x, 32, 0)?.curv_perp);
    }

    for m in [2, 3] {
        let c = curvature_report(&veronese(m)?, &vec![0.0; m], 32, 0)?.curv_perp;
        println!("Veronese RP^{m}: ball {c:.9}, sphere {:.9}", spherical_curv(c)?);
    }
    Ok(())
}
