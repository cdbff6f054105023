//! Seeded random pairs never beat the analytic minimum, and reducing them never
//! increases the perimeter.

use double_bubble::oracle::certify_lower_bound;

fn main() -> double_bubble::error::Result<()> {
    for alpha in [0.1, 0.4, 1.0] {
        let rep = certify_lower_bound(alpha, 400, 2024)?;
        println!(
            "alpha {alpha:<4} checked {} skipped {} min gap {:.3e} violations {}",
            rep.checked,
            rep.skipped,
            rep.min_gap,
            rep.violations.len()
        );
    }
    Ok(())
}
