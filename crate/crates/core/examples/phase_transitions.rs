//! Critical ratios in closed form, then rediscovered by finite differences.

use double_bubble::kkt::critical_alphas;
use double_bubble::oracle::detect_kinks;

fn main() -> double_bubble::error::Result<()> {
    let c = critical_alphas();
    println!("closed form: first {:.12}, second {}", c.first, c.second);
    let rep = detect_kinks(1e-4, 1e-5)?;
    for k in &rep.first_order {
        println!(
            "first-order kink near {:.6} (slope jump {:.4})",
            k.alpha, k.jump
        );
    }
    for k in &rep.second_order {
        println!(
            "second-order kink near {:.6} (curvature jump {:.4})",
            k.alpha, k.jump
        );
    }
    Ok(())
}
