//! Brute-force nested grid search over the family, compared with the closed form.

use double_bubble::oracle::grid_search_family;

fn main() -> double_bubble::error::Result<()> {
    for alpha in [0.1, 0.25, 0.5, 1.0] {
        let rep = grid_search_family(alpha, 6)?;
        println!(
            "alpha {alpha:<5} search {:.9} analytic {:.9} gap {:.2e} ({} evaluations)",
            rep.best_perimeter, rep.analytic_perimeter, rep.gap, rep.evaluations
        );
    }
    Ok(())
}
