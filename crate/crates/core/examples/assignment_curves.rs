//! Both per-assignment curves as CSV, ready for any plotting tool.

use double_bubble::cli::{linspace, sweep, write_csv};

fn main() -> double_bubble::error::Result<()> {
    let rows = sweep(&linspace(0.0125, 1.0, 80)?, true)?;
    write_csv(&rows, &mut std::io::stdout().lock())
}
