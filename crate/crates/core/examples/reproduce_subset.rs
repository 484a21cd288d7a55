//! Runs a handful of claim checks and prints the report both ways.

use curvkit::cli::reproduce::{claim_ids, reproduce, Ctx};

fn main() {
    let ctx = Ctx { seed: 0, design_file: None };
    let wanted: Vec<String> = claim_ids(&ctx).into_iter().filter(|id| id.starts_with("veronese") || id.starts_with("bessel")).collect();
    let report = reproduce(&ctx, &wanted);
    print!("{}", report.render_text());
    println!("{}", serde_json::to_string(&report.claims[0]).expect("json"));
}
