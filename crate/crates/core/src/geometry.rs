//! Exact l1 geometry for axis-aligned polygons.
//!
//! Every edge of a [`RectilinearPolygon`] is horizontal or vertical, so the
//! l1 length of the boundary is the plain sum of `|dx| + |dy|` over its edges
//! and the shared boundary of two polygons is a sum of one-dimensional
//! interval overlaps on common lines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used for coordinates and derived lengths.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    fn near(self, other: Point) -> bool {
        (self.x - other.x).abs() <= EPS && (self.y - other.y).abs() <= EPS
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// l1 length of a polyline, closing it back to the first point when `closed`.
pub fn l1_length(points: &[Point], closed: bool) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::MalformedInput(format!(
            "polyline needs at least 2 points, got {}",
            points.len()
        )));
    }
    let mut total: f64 = points
        .windows(2)
        .map(|w| (w[1].x - w[0].x).abs() + (w[1].y - w[0].y).abs())
        .sum();
    if closed {
        let (first, last) = (points[0], points[points.len() - 1]);
        total += (first.x - last.x).abs() + (first.y - last.y).abs();
    }
    Ok(total)
}

/// An axis-aligned edge, stored with `lo <= hi` along its running axis.
#[derive(Debug, Clone, Copy)]
enum Edge {
    Horizontal { y: f64, lo: f64, hi: f64 },
    Vertical { x: f64, lo: f64, hi: f64 },
}

impl Edge {
    fn between(a: Point, b: Point) -> Edge {
        if (a.y - b.y).abs() <= EPS {
            Edge::Horizontal {
                y: a.y,
                lo: a.x.min(b.x),
                hi: a.x.max(b.x),
            }
        } else {
            Edge::Vertical {
                x: a.x,
                lo: a.y.min(b.y),
                hi: a.y.max(b.y),
            }
        }
    }

    /// Closed bounding rectangle `(xmin, xmax, ymin, ymax)`.
    fn extent(self) -> (f64, f64, f64, f64) {
        match self {
            Edge::Horizontal { y, lo, hi } => (lo, hi, y, y),
            Edge::Vertical { x, lo, hi } => (x, x, lo, hi),
        }
    }

    fn touches(self, other: Edge) -> bool {
        let (ax0, ax1, ay0, ay1) = self.extent();
        let (bx0, bx1, by0, by1) = other.extent();
        ax0 <= bx1 + EPS && bx0 <= ax1 + EPS && ay0 <= by1 + EPS && by0 <= ay1 + EPS
    }

    /// Length of the one-dimensional overlap with a collinear edge; zero otherwise.
    fn collinear_overlap(self, other: Edge) -> f64 {
        let overlap =
            |lo1: f64, hi1: f64, lo2: f64, hi2: f64| (hi1.min(hi2) - lo1.max(lo2)).max(0.0);
        match (self, other) {
            (
                Edge::Horizontal {
                    y: y1,
                    lo: l1,
                    hi: h1,
                },
                Edge::Horizontal {
                    y: y2,
                    lo: l2,
                    hi: h2,
                },
            ) if (y1 - y2).abs() <= EPS => overlap(l1, h1, l2, h2),
            (
                Edge::Vertical {
                    x: x1,
                    lo: l1,
                    hi: h1,
                },
                Edge::Vertical {
                    x: x2,
                    lo: l2,
                    hi: h2,
                },
            ) if (x1 - x2).abs() <= EPS => overlap(l1, h1, l2, h2),
            _ => 0.0,
        }
    }
}

/// Closed, simple, axis-aligned polygon stored counterclockwise with
/// alternating horizontal and vertical edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon")]
pub struct RectilinearPolygon {
    vertices: Vec<Point>,
}

#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<RawPolygon> for RectilinearPolygon {
    type Error = Error;

    fn try_from(raw: RawPolygon) -> Result<Self> {
        RectilinearPolygon::new(raw.vertices)
    }
}

impl RectilinearPolygon {
    /// Normalizes (drops repeated points, merges collinear edges, orients
    /// counterclockwise) and validates the vertex cycle.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices
            .iter()
            .any(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(Error::MalformedInput("non-finite coordinate".into()));
        }
        let mut pts = vertices;
        dedup_cyclic(&mut pts);
        for i in 0..pts.len() {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            if (a.x - b.x).abs() > EPS && (a.y - b.y).abs() > EPS {
                return Err(Error::MalformedInput(format!(
                    "edge ({}, {}) -> ({}, {}) is not axis-aligned",
                    a.x, a.y, b.x, b.y
                )));
            }
        }
        merge_collinear(&mut pts);
        if pts.len() < 4 {
            return Err(Error::MalformedInput(format!(
                "polygon degenerates to {} vertices",
                pts.len()
            )));
        }
        let signed = signed_area(&pts);
        if signed.abs() <= EPS {
            return Err(Error::MalformedInput("polygon has zero area".into()));
        }
        if signed < 0.0 {
            pts.reverse();
        }
        let poly = RectilinearPolygon { vertices: pts };
        poly.check_simple()?;
        Ok(poly)
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        RectilinearPolygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_rectangle(&self) -> bool {
        self.vertices.len() == 4
    }

    fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Edge::between(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn check_simple(&self) -> Result<()> {
        let edges: Vec<Edge> = self.edges().collect();
        let n = edges.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent && edges[i].touches(edges[j]) {
                    return Err(Error::MalformedInput(format!(
                        "boundary is not simple: edges {i} and {j} meet"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn perimeter(&self) -> f64 {
        l1_length(&self.vertices, true).expect("a valid polygon has at least 4 vertices")
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let mut b = BoundingBox {
            left: f64::INFINITY,
            right: f64::NEG_INFINITY,
            bottom: f64::INFINITY,
            top: f64::NEG_INFINITY,
        };
        for p in &self.vertices {
            b.left = b.left.min(p.x);
            b.right = b.right.max(p.x);
            b.bottom = b.bottom.min(p.y);
            b.top = b.top.max(p.y);
        }
        b
    }

    /// Strict interior test by ray casting; undefined for points on the boundary.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if (a.x - b.x).abs() <= EPS && (a.y > p.y) != (b.y > p.y) && p.x < a.x {
                inside = !inside;
            }
        }
        inside
    }

    /// Image under `(x, y) -> (s x + dx, s y + dy)`.
    pub fn transformed(&self, scale: f64, dx: f64, dy: f64) -> Result<Self> {
        RectilinearPolygon::new(
            self.vertices
                .iter()
                .map(|p| Point::new(scale * p.x + dx, scale * p.y + dy))
                .collect(),
        )
    }

    /// Interior extent along the vertical line `x = cx`, as sorted disjoint intervals.
    /// `cx` must not coincide with a vertex abscissa.
    fn column(&self, cx: f64) -> Vec<(f64, f64)> {
        let mut ys: Vec<f64> = self
            .edges()
            .filter_map(|e| match e {
                Edge::Horizontal { y, lo, hi } if lo < cx && cx < hi => Some(y),
                _ => None,
            })
            .collect();
        ys.sort_by(f64::total_cmp);
        ys.chunks_exact(2).map(|c| (c[0], c[1])).collect()
    }
}

fn dedup_cyclic(pts: &mut Vec<Point>) {
    pts.dedup_by(|b, a| a.near(*b));
    while pts.len() > 1 && pts[0].near(pts[pts.len() - 1]) {
        pts.pop();
    }
}

/// Drops vertices whose neighbours lie on the same axis line, including spikes.
fn merge_collinear(pts: &mut Vec<Point>) {
    loop {
        let n = pts.len();
        if n < 3 {
            return;
        }
        let found = (0..n).find(|&i| {
            let (p, c, q) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            ((p.x - c.x).abs() <= EPS && (c.x - q.x).abs() <= EPS)
                || ((p.y - c.y).abs() <= EPS && (c.y - q.y).abs() <= EPS)
        });
        match found {
            Some(i) => {
                pts.remove(i);
                dedup_cyclic(pts);
            }
            None => return,
        }
    }
}

fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice / 2.0
}

/// Area enclosed by a valid polygon.
pub fn area(p: &RectilinearPolygon) -> f64 {
    p.area()
}

/// Total length of collinear edge overlaps; isolated touching points count zero.
pub fn shared_boundary_length(p: &RectilinearPolygon, q: &RectilinearPolygon) -> f64 {
    p.edges()
        .map(|e| q.edges().map(|f| e.collinear_overlap(f)).sum::<f64>())
        .sum()
}

/// Tight axis-aligned box of a polygon.
pub fn bounding_box(p: &RectilinearPolygon) -> BoundingBox {
    p.bounding_box()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub left: f64,
    pub right: f64,
    pub bottom: f64,
    pub top: f64,
}

impl BoundingBox {
    pub fn new(left: f64, right: f64, bottom: f64, top: f64) -> Result<Self> {
        if left < right && bottom < top {
            Ok(BoundingBox {
                left,
                right,
                bottom,
                top,
            })
        } else {
            Err(Error::MalformedInput(format!(
                "empty box [{left}, {right}] x [{bottom}, {top}]"
            )))
        }
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }

    pub fn height(&self) -> f64 {
        self.top - self.bottom
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn perimeter(&self) -> f64 {
        2.0 * (self.width() + self.height())
    }

    /// Closed containment with tolerance.
    pub fn contains_point(&self, p: Point) -> bool {
        p.x >= self.left - EPS
            && p.x <= self.right + EPS
            && p.y >= self.bottom - EPS
            && p.y <= self.top + EPS
    }

    pub fn contains_box(&self, other: &BoundingBox) -> bool {
        other.corners().iter().all(|&c| self.contains_point(c))
    }

    /// Corners in the order bottom-left, bottom-right, top-right, top-left.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.left, self.bottom),
            Point::new(self.right, self.bottom),
            Point::new(self.right, self.top),
            Point::new(self.left, self.top),
        ]
    }

    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox {
            left: self.left.min(other.left),
            right: self.right.max(other.right),
            bottom: self.bottom.min(other.bottom),
            top: self.top.max(other.top),
        }
    }

    pub fn to_polygon(&self) -> RectilinearPolygon {
        RectilinearPolygon::rectangle(self.left, self.bottom, self.right, self.top)
            .expect("a bounding box is a non-degenerate rectangle")
    }
}

/// Two polygons with disjoint interiors; boundaries may share segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct BubblePair {
    first: RectilinearPolygon,
    second: RectilinearPolygon,
}

#[derive(Deserialize)]
struct RawPair {
    first: RectilinearPolygon,
    second: RectilinearPolygon,
}

impl TryFrom<RawPair> for BubblePair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        BubblePair::new(raw.first, raw.second)
    }
}

impl BubblePair {
    pub fn new(first: RectilinearPolygon, second: RectilinearPolygon) -> Result<Self> {
        if interiors_overlap(&first, &second) {
            return Err(Error::MalformedInput("polygon interiors overlap".into()));
        }
        Ok(BubblePair { first, second })
    }

    pub fn first(&self) -> &RectilinearPolygon {
        &self.first
    }

    pub fn second(&self) -> &RectilinearPolygon {
        &self.second
    }

    pub fn swapped(&self) -> BubblePair {
        BubblePair {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    pub fn transformed(&self, scale: f64, dx: f64, dy: f64) -> Result<Self> {
        BubblePair::new(
            self.first.transformed(scale, dx, dy)?,
            self.second.transformed(scale, dx, dy)?,
        )
    }

    pub fn perimeter(&self) -> f64 {
        double_bubble_perimeter(self)
    }
}

/// `rho(first) + rho(second) - rho(shared boundary)`.
pub fn double_bubble_perimeter(pair: &BubblePair) -> f64 {
    pair.first.perimeter() + pair.second.perimeter()
        - shared_boundary_length(&pair.first, &pair.second)
}

/// Sweeps the compressed columns between consecutive vertex abscissae and
/// intersects the interior intervals of both polygons in each column.
fn interiors_overlap(p: &RectilinearPolygon, q: &RectilinearPolygon) -> bool {
    let (bp, bq) = (p.bounding_box(), q.bounding_box());
    if bp.right <= bq.left + EPS
        || bq.right <= bp.left + EPS
        || bp.top <= bq.bottom + EPS
        || bq.top <= bp.bottom + EPS
    {
        return false;
    }
    let mut xs: Vec<f64> = p.vertices.iter().chain(&q.vertices).map(|v| v.x).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|b, a| (*b - *a).abs() <= EPS);
    xs.windows(2).filter(|w| w[1] - w[0] > EPS).any(|w| {
        let cx = 0.5 * (w[0] + w[1]);
        let (cp, cq) = (p.column(cx), q.column(cx));
        cp.iter()
            .any(|&(a0, a1)| cq.iter().any(|&(b0, b1)| a1.min(b1) - a0.max(b0) > EPS))
    })
}
