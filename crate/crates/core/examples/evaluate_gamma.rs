//! The minimal double bubble perimeter and its minimizers at a few ratios.

use double_bubble::kkt::{gamma_perimeter, global_minimizer};

fn main() -> double_bubble::error::Result<()> {
    for alpha in [0.05, 0.1875, 0.25, 0.5, 0.75, 1.0] {
        let res = global_minimizer(alpha)?;
        println!(
            "alpha {alpha:<6} perimeter {:.9} ({})",
            gamma_perimeter(alpha)?,
            res.branch_label
        );
        for sol in &res.minimizers {
            println!(
                "    {:?}",
                sol.config.expect("minimizers carry a configuration")
            );
        }
    }
    Ok(())
}
