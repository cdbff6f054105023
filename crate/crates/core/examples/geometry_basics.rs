//! Exact l1 measurements on a hand-built pair: an L-shaped region with a
//! square nested in its notch.

use double_bubble::geometry::{
    area, double_bubble_perimeter, shared_boundary_length, BubblePair, Point, RectilinearPolygon,
};

fn main() -> double_bubble::error::Result<()> {
    let l_shape = RectilinearPolygon::new(
        [
            (0.0, 0.0),
            (3.0, 0.0),
            (3.0, 1.0),
            (1.0, 1.0),
            (1.0, 3.0),
            (0.0, 3.0),
        ]
        .into_iter()
        .map(|(x, y)| Point::new(x, y))
        .collect(),
    )?;
    let square = RectilinearPolygon::rectangle(1.0, 1.0, 2.0, 2.0)?;
    let pair = BubblePair::new(l_shape, square)?;

    println!(
        "areas        {} and {}",
        area(pair.first()),
        area(pair.second())
    );
    println!(
        "perimeters   {} and {}",
        pair.first().perimeter(),
        pair.second().perimeter()
    );
    println!(
        "shared wall  {}",
        shared_boundary_length(pair.first(), pair.second())
    );
    println!("rho_DB       {}", double_bubble_perimeter(&pair));
    Ok(())
}
