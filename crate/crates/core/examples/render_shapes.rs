//! Writes SVG drawings of the minimizing shape in each regime.
//! Pass an output directory, or the system temp directory is used.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use double_bubble::cli::render_svg;
use double_bubble::kkt::global_minimizer;

fn main() -> double_bubble::error::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    for (name, alpha) in [("embedded", 0.1), ("kissing", 0.3), ("tied", 0.75)] {
        let cfg = global_minimizer(alpha)?.minimizers[0]
            .config
            .expect("minimizers carry a configuration");
        let path = dir.join(format!("double_bubble_{name}.svg"));
        render_svg(&cfg, &mut BufWriter::new(File::create(&path)?))?;
        println!("{}", path.display());
    }
    Ok(())
}
