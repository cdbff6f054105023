//! Random staircase pairs of each layout, reduced into the configuration family.

use double_bubble::geometry::double_bubble_perimeter;
use double_bubble::oracle::{sample_staircase_pair, StaircaseSpec};
use double_bubble::reduce::{classify, reduce, CaseKind};

fn main() -> double_bubble::error::Result<()> {
    let layouts = [
        CaseKind::Contained,
        CaseKind::TwoCorners,
        CaseKind::OneCorner,
        CaseKind::DisjointBoxes,
    ];
    for (seed, layout) in layouts.into_iter().enumerate() {
        let pair = sample_staircase_pair(
            &StaircaseSpec::new(seed as u64, 4, (1.0, 0.4)).with_layout(layout),
        )?;
        let red = reduce(&pair)?;
        println!(
            "{:?}: rho_DB {:.6} -> {:.6} as {} ({:?})",
            classify(&pair).kind,
            double_bubble_perimeter(&pair),
            red.perimeter(),
            red.config.variant_name(),
            red.method
        );
    }
    Ok(())
}
