//! Every KKT branch for both volume assignments, with the first violated
//! constraint of the infeasible ones.

use double_bubble::family::VolumeAssignment;
use double_bubble::kkt::all_branches;

fn main() {
    for alpha in [0.05, 0.25, 0.75] {
        for asg in VolumeAssignment::both(alpha) {
            println!("areas {asg}");
            for sol in all_branches(asg) {
                let status = sol.violated.as_deref().unwrap_or("valid");
                println!(
                    "    {:<22} {:>12.9}  {status}",
                    sol.branch.to_string(),
                    sol.perimeter
                );
            }
        }
    }
}
