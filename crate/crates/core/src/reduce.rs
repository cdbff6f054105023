//! Reduction of an arbitrary rectilinear pair to a family configuration with
//! the same areas and no larger double bubble perimeter.
//!
//! Everything runs on the two bounding boxes. For any pair,
//! `ρ_DB ≥ 2(W_A + H_A + W_B + H_B) − ov_x − ov_y`, where `ov_x` and `ov_y` are
//! the overlaps of the box projections: a line crossing both regions meets at
//! least three boundary points. Every family configuration attains this bound
//! with equality, so a construction whose parameters stay inside the
//! box-derived bounds can only lower the perimeter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{validate, FamilyConfig, VolumeAssignment};
use crate::geometry::{area, double_bubble_perimeter, BoundingBox, BubblePair, EPS};
use crate::kkt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    Contained,
    TwoCorners,
    OneCorner,
    DisjointBoxes,
    CrossOverlap,
}

impl CaseKind {
    fn rank(self) -> u8 {
        self as u8
    }
}

/// Which polygon of the pair plays the role of `B`, the region whose box corners are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContainmentCase {
    pub kind: CaseKind,
    /// Sides of `B`'s box lying on `A`'s box boundary; only counted for `Contained`.
    pub touching_sides: u8,
    pub b_role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Built from the bounding boxes by sliding, cutting and shrinking.
    Construction,
    /// No construction fit below the input perimeter; the configuration is the
    /// analytic optimum for the exact areas.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    pub config: FamilyConfig,
    /// `(β, γ)`: areas of the config's first and second region.
    pub assignment: VolumeAssignment,
    pub case: ContainmentCase,
    /// True when the config's first region stands for the pair's second polygon.
    pub swapped: bool,
    pub method: Method,
    pub input_perimeter: f64,
}

impl Reduction {
    pub fn perimeter(&self) -> f64 {
        self.config.closed_form_perimeter()
    }
}

#[derive(Debug, Clone, Copy)]
struct Span {
    lo: f64,
    hi: f64,
}

impl Span {
    fn len(self) -> f64 {
        self.hi - self.lo
    }

    fn overlap(self, o: Span) -> f64 {
        (self.hi.min(o.hi) - self.lo.max(o.lo)).max(0.0)
    }

    /// How many endpoints of `o` lie in this closed span.
    fn endpoints_in(self, o: Span, tol: f64) -> u8 {
        let inside = |v: f64| v >= self.lo - tol && v <= self.hi + tol;
        inside(o.lo) as u8 + inside(o.hi) as u8
    }

    /// `(overlap, protrusion)` of a partially overlapping span `o`.
    fn split(self, o: Span) -> (f64, f64) {
        let q = self.overlap(o);
        let p = if o.hi > self.hi {
            o.hi - self.hi
        } else {
            self.lo - o.lo
        };
        (q, p.max(0.0))
    }
}

/// The pair seen with a fixed choice of which polygon is `A`.
#[derive(Debug, Clone, Copy)]
struct Frame {
    ax: Span,
    ay: Span,
    bx: Span,
    by: Span,
    m_a: f64,
    m_b: f64,
    tol: f64,
}

fn spans(b: &BoundingBox) -> (Span, Span) {
    (
        Span {
            lo: b.left,
            hi: b.right,
        },
        Span {
            lo: b.bottom,
            hi: b.top,
        },
    )
}

impl Frame {
    fn new(pair: &BubblePair, b_role: Role) -> Frame {
        let (a, b) = match b_role {
            Role::Second => (pair.first(), pair.second()),
            Role::First => (pair.second(), pair.first()),
        };
        let (ax, ay) = spans(&a.bounding_box());
        let (bx, by) = spans(&b.bounding_box());
        let scale = [ax.len(), ay.len(), bx.len(), by.len()]
            .into_iter()
            .fold(1.0, f64::max);
        Frame {
            ax,
            ay,
            bx,
            by,
            m_a: area(a),
            m_b: area(b),
            tol: EPS * scale,
        }
    }

    fn kind(&self) -> CaseKind {
        let nx = self.ax.endpoints_in(self.bx, self.tol);
        let ny = self.ay.endpoints_in(self.by, self.tol);
        match nx * ny {
            4 => CaseKind::Contained,
            2 => CaseKind::TwoCorners,
            1 => CaseKind::OneCorner,
            _ if self.ax.overlap(self.bx) <= self.tol || self.ay.overlap(self.by) <= self.tol => {
                CaseKind::DisjointBoxes
            }
            _ => CaseKind::CrossOverlap,
        }
    }

    fn touching_sides(&self) -> u8 {
        let near = |u: f64, v: f64| (u - v).abs() <= self.tol;
        near(self.ax.lo, self.bx.lo) as u8
            + near(self.ax.hi, self.bx.hi) as u8
            + near(self.ay.lo, self.by.lo) as u8
            + near(self.ay.hi, self.by.hi) as u8
    }
}

/// A candidate output, remembering whether its first region stands for `A`.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    config: FamilyConfig,
    first_is_a: bool,
}

/// Upper bounds for the six general parameters: rectangle `b × a`, wrap `c..f`.
#[derive(Debug, Clone, Copy)]
struct Bounds {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
}

impl Bounds {
    /// Moving the rectangle's top or right edge inward hands the freed strip
    /// to the wrap; each move by `t` lowers the bound perimeter by `t`.
    fn variants(self, steps: usize) -> Vec<Bounds> {
        let mut out = vec![self];
        for k in 1..=steps {
            let frac = k as f64 / (steps + 1) as f64;
            let t = self.e * frac;
            out.push(Bounds {
                a: self.a - t,
                c: self.c + t,
                e: self.e - t,
                ..self
            });
            let t = self.d * frac;
            out.push(Bounds {
                b: self.b - t,
                f: self.f + t,
                d: self.d - t,
                ..self
            });
        }
        out
    }
}

const GRID: usize = 8;

fn cheapest(configs: impl IntoIterator<Item = FamilyConfig>) -> Option<FamilyConfig> {
    configs
        .into_iter()
        .filter(|c| c.shape_violations().is_empty())
        .min_by(|x, y| {
            x.closed_form_perimeter()
                .total_cmp(&y.closed_form_perimeter())
        })
}

/// Wraps a second region of area `m` around the top-right corner of a `b × a`
/// rectangle, sharing `d` of the top and `e` of the right side, with the
/// overhangs capped by `c_max` and `f_max`. Degenerate wraps become kissing.
fn wrap(a: f64, b: f64, d: f64, e: f64, c_max: f64, f_max: f64, m: f64) -> Option<FamilyConfig> {
    let mut out = Vec::new();
    if e > 0.0 && m / e <= f_max * (1.0 + 1e-12) {
        out.push(FamilyConfig::Kissing {
            a: b,
            b: a,
            c: m / e,
            d: e,
        });
    }
    if d > 0.0 && m / d <= c_max * (1.0 + 1e-12) {
        out.push(FamilyConfig::Kissing { a, b, c: m / d, d });
    }
    if c_max > 0.0 && f_max > 0.0 {
        for k in 1..=GRID {
            let f = f_max * k as f64 / GRID as f64;
            let c = (m - e * f) / (d + f);
            if c > 0.0 && c <= c_max * (1.0 + 1e-12) {
                out.push(FamilyConfig::General { a, b, c, d, e, f });
            }
        }
    }
    cheapest(out)
}

/// Best general configuration with every parameter inside `bounds`, rectangle
/// area `m1` and wrap area `m2`.
fn fit_general(bounds: Bounds, m1: f64, m2: f64) -> Option<FamilyConfig> {
    let mut out = Vec::new();
    for i in 1..=GRID {
        let d = bounds.d * i as f64 / GRID as f64;
        for j in 1..=GRID {
            let e = bounds.e * j as f64 / GRID as f64;
            let lo = e.max(m1 / bounds.b);
            let hi = bounds.a.min(m1 / d);
            if lo.is_nan() || hi.is_nan() || lo > hi {
                continue;
            }
            let a = m1.sqrt().clamp(lo, hi);
            out.extend(wrap(a, m1 / a, d, e, bounds.c, bounds.f, m2));
        }
    }
    cheapest(out)
}

fn kiss(m_a: f64, h_a: f64, m_b: f64, h_b: f64) -> Candidate {
    if h_a >= h_b {
        Candidate {
            config: FamilyConfig::Kissing {
                a: m_a / h_a,
                b: h_a,
                c: m_b / h_b,
                d: h_b,
            },
            first_is_a: true,
        }
    } else {
        Candidate {
            config: FamilyConfig::Kissing {
                a: m_b / h_b,
                b: h_b,
                c: m_a / h_a,
                d: h_a,
            },
            first_is_a: false,
        }
    }
}

/// Both boxes pushed into side-to-side contact, each shrunk along the contact normal.
fn contact_candidates(fr: &Frame) -> Vec<Candidate> {
    vec![
        kiss(fr.m_a, fr.ay.len(), fr.m_b, fr.by.len()),
        kiss(fr.m_a, fr.ax.len(), fr.m_b, fr.bx.len()),
    ]
}

/// `B` as a corner box inside `A`'s box, or stacked across the full width or height.
fn contained_candidates(fr: &Frame) -> Vec<Candidate> {
    let (wa, ha, wb, hb) = (fr.ax.len(), fr.ay.len(), fr.bx.len(), fr.by.len());
    let (m_a, m_b) = (fr.m_a, fr.m_b);
    let total = m_a + m_b;
    let mut out = Vec::new();
    let side = m_b.sqrt().clamp((m_b / hb).min(wb), wb);
    for (w, h) in [(wb, m_b / wb), (m_b / hb, hb), (side, m_b / side)] {
        let lo = (total / ha).max(w);
        let hi = wa.min(total / h);
        if hi - lo <= 8.0 * fr.tol {
            continue;
        }
        let margin = (0.25 * (hi - lo)).min(1e-7 * fr.tol / EPS);
        let outer_w = total.sqrt().clamp(lo + margin, hi - margin);
        out.push(Candidate {
            config: FamilyConfig::Embedded {
                a: h,
                b: w,
                c: total / outer_w,
                d: outer_w,
            },
            first_is_a: false,
        });
    }
    for len in [wa, ha] {
        out.push(Candidate {
            config: FamilyConfig::Kissing {
                a: m_a / len,
                b: len,
                c: m_b / len,
                d: len,
            },
            first_is_a: true,
        });
    }
    out
}

/// `B` protrudes past one side of `A`'s box. `B` slides flush with an edge of
/// `A`'s box, keeps the protrusion, and reaches back into `A` only as far as
/// its area requires.
fn two_corner_candidates(fr: &Frame) -> Vec<Candidate> {
    let (along_a, along_b, across_a, across_b) = if fr.ax.endpoints_in(fr.bx, fr.tol) == 2 {
        (fr.ay, fr.by, fr.ax, fr.bx)
    } else {
        (fr.ax, fr.bx, fr.ay, fr.by)
    };
    let (w, h, hb) = (along_a.len(), across_a.len(), across_b.len());
    let (_, p) = along_a.split(along_b);
    if fr.m_b <= p * hb * (1.0 + 1e-12) {
        let config = FamilyConfig::Kissing {
            a: fr.m_a / h,
            b: h,
            c: fr.m_b / hb,
            d: hb,
        };
        return vec![Candidate {
            config,
            first_is_a: true,
        }];
    }
    let s = fr.m_b / hb - p;
    wrap(hb, s + p, s, hb, h - hb, w - s, fr.m_a)
        .map(|config| Candidate {
            config,
            first_is_a: false,
        })
        .into_iter()
        .collect()
}

/// `B`'s box covers one corner of `A`'s box. Either box becomes the rectangle
/// and the other region wraps it, after trading strips of the overlap.
fn one_corner_candidates(fr: &Frame) -> Vec<Candidate> {
    let (w, h) = (fr.ax.len(), fr.ay.len());
    let (d, f) = fr.ax.split(fr.bx);
    let (e, c) = fr.ay.split(fr.by);
    let a_rect = Bounds {
        a: h,
        b: w,
        c,
        d,
        e,
        f,
    };
    let b_rect = Bounds {
        a: e + c,
        b: d + f,
        c: h - e,
        d,
        e,
        f: w - d,
    };
    let mut out = Vec::new();
    for bounds in a_rect.variants(4) {
        out.extend(fit_general(bounds, fr.m_a, fr.m_b).map(|config| Candidate {
            config,
            first_is_a: true,
        }));
    }
    for bounds in b_rect.variants(4) {
        out.extend(fit_general(bounds, fr.m_b, fr.m_a).map(|config| Candidate {
            config,
            first_is_a: false,
        }));
    }
    out
}

/// Classifies the pair by how many corners of one box lie in the other,
/// trying both role assignments.
pub fn classify(pair: &BubblePair) -> ContainmentCase {
    classify_frames(pair).0
}

fn classify_frames(pair: &BubblePair) -> (ContainmentCase, Vec<(Role, Frame)>) {
    let frames: Vec<(Role, Frame, CaseKind)> = [Role::Second, Role::First]
        .into_iter()
        .map(|role| {
            let fr = Frame::new(pair, role);
            (role, fr, fr.kind())
        })
        .collect();
    let best = frames.iter().map(|f| f.2.rank()).min().unwrap_or(u8::MAX);
    let matching: Vec<(Role, Frame, CaseKind)> =
        frames.into_iter().filter(|f| f.2.rank() == best).collect();
    let (role, fr, kind) = matching[0];
    let touching_sides = if kind == CaseKind::Contained {
        fr.touching_sides()
    } else {
        0
    };
    let case = ContainmentCase {
        kind,
        touching_sides,
        b_role: role,
    };
    (case, matching.into_iter().map(|(r, f, _)| (r, f)).collect())
}

fn fallback(m_first: f64, m_second: f64) -> (FamilyConfig, bool) {
    let asg = VolumeAssignment {
        beta: m_first,
        gamma: m_second,
    };
    let direct = kkt::all_branches(asg).into_iter().map(|s| (s, false));
    let flipped = kkt::all_branches(asg.swapped())
        .into_iter()
        .map(|s| (s, true));
    let (sol, swapped) = direct
        .chain(flipped)
        .filter(|(s, _)| s.valid)
        .min_by(|x, y| x.0.perimeter.total_cmp(&y.0.perimeter))
        .expect("the tied kissing branch is always valid");
    (sol.config.expect("valid solutions carry a config"), swapped)
}

/// Maps the pair to a family configuration with the same areas and no larger perimeter.
pub fn reduce(pair: &BubblePair) -> Result<Reduction> {
    let (case, frames) = classify_frames(pair);
    let perimeter = double_bubble_perimeter(pair);
    let (m_first, m_second) = (area(pair.first()), area(pair.second()));
    if case.kind == CaseKind::CrossOverlap {
        let fr = &frames[0].1;
        return Err(Error::UnsupportedCase(format!(
            "each bounding box spans the other along one axis: A^□ x=[{}, {}] y=[{}, {}], B^□ x=[{}, {}] y=[{}, {}]",
            fr.ax.lo, fr.ax.hi, fr.ay.lo, fr.ay.hi, fr.bx.lo, fr.bx.hi, fr.by.lo, fr.by.hi
        )));
    }

    let limit = perimeter + EPS * perimeter.max(1.0);
    let mut best: Option<(FamilyConfig, bool)> = None;
    for (role, fr) in &frames {
        let mut candidates = contact_candidates(fr);
        match case.kind {
            CaseKind::Contained => candidates.extend(contained_candidates(fr)),
            CaseKind::TwoCorners => candidates.extend(two_corner_candidates(fr)),
            CaseKind::OneCorner => candidates.extend(one_corner_candidates(fr)),
            _ => {}
        }
        for cand in candidates {
            // first_is_a with A = pair.first() means no swap.
            let swapped = cand.first_is_a == (*role == Role::First);
            let asg = if swapped {
                VolumeAssignment {
                    beta: m_second,
                    gamma: m_first,
                }
            } else {
                VolumeAssignment {
                    beta: m_first,
                    gamma: m_second,
                }
            };
            let cost = cand.config.closed_form_perimeter();
            if cost > limit || !validate(&cand.config, asg).is_valid() {
                continue;
            }
            if best.is_none_or(|(b, _)| cost < b.closed_form_perimeter()) {
                best = Some((cand.config, swapped));
            }
        }
    }

    let (config, swapped, method) = match best {
        Some((config, swapped)) => (config, swapped, Method::Construction),
        None => {
            let (config, swapped) = fallback(m_first, m_second);
            (config, swapped, Method::Fallback)
        }
    };
    let (beta, gamma) = config.areas();
    Ok(Reduction {
        config,
        assignment: VolumeAssignment { beta, gamma },
        case,
        swapped,
        method,
        input_perimeter: perimeter,
    })
}

/// Rescales uniformly so the larger region has area 1; returns the scale factor.
pub fn normalize_scale(pair: &BubblePair) -> Result<(BubblePair, f64)> {
    let larger = area(pair.first()).max(area(pair.second()));
    let scale = 1.0 / larger.sqrt();
    Ok((pair.transformed(scale, 0.0, 0.0)?, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, RectilinearPolygon};

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> RectilinearPolygon {
        RectilinearPolygon::rectangle(x0, y0, x1, y1).unwrap()
    }

    fn poly(pts: &[(f64, f64)]) -> RectilinearPolygon {
        RectilinearPolygon::new(pts.iter().copied().map(Point::from).collect()).unwrap()
    }

    fn boxes_case(b: (f64, f64, f64, f64)) -> ContainmentCase {
        // A thin L spanning [0, 4]² so that B fits without overlap.
        let a = poly(&[
            (0.0, 0.0),
            (4.0, 0.0),
            (4.0, 0.1),
            (0.1, 0.1),
            (0.1, 4.0),
            (0.0, 4.0),
        ]);
        let pair = BubblePair::new(a, rect(b.0, b.1, b.2, b.3)).unwrap();
        classify(&pair)
    }

    #[test]
    fn classify_examples() {
        let c = boxes_case((1.0, 1.0, 2.0, 2.0));
        assert_eq!(
            (c.kind, c.touching_sides, c.b_role),
            (CaseKind::Contained, 0, Role::Second)
        );
        assert_eq!(boxes_case((3.0, 1.0, 5.0, 2.0)).kind, CaseKind::TwoCorners);
        assert_eq!(boxes_case((3.0, 3.0, 5.0, 5.0)).kind, CaseKind::OneCorner);
        assert_eq!(
            boxes_case((5.0, 1.0, 6.0, 2.0)).kind,
            CaseKind::DisjointBoxes
        );
        assert_eq!(
            boxes_case((1.0, -1.0, 2.0, -0.5)).kind,
            CaseKind::DisjointBoxes
        );
    }

    #[test]
    fn cross_overlap_boxes() {
        // Unreachable for disjoint connected regions, so exercised on raw boxes.
        let fr = Frame {
            ax: Span { lo: 0.0, hi: 3.0 },
            ay: Span { lo: 1.0, hi: 2.0 },
            bx: Span { lo: 1.0, hi: 2.0 },
            by: Span { lo: 0.0, hi: 3.0 },
            m_a: 1.0,
            m_b: 1.0,
            tol: EPS,
        };
        assert_eq!(fr.kind(), CaseKind::CrossOverlap);
    }

    #[test]
    fn notched_plug_reduces_below_input() {
        let u = poly(&[
            (0.0, 0.0),
            (3.0, 0.0),
            (3.0, 3.0),
            (2.0, 3.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 3.0),
            (0.0, 3.0),
        ]);
        let pair = BubblePair::new(u, rect(1.0, 1.0, 2.0, 2.0)).unwrap();
        assert_eq!(double_bubble_perimeter(&pair), 17.0);
        let red = reduce(&pair).unwrap();
        assert_eq!(red.case.kind, CaseKind::Contained);
        assert_eq!(red.method, Method::Construction);
        assert!(red.perimeter() <= 17.0 + 1e-9);
        let (p, q) = red.config.areas();
        let (for_first, for_second) = if red.swapped { (q, p) } else { (p, q) };
        assert!((for_first - 7.0).abs() < 1e-9 && (for_second - 1.0).abs() < 1e-9);
    }

    #[test]
    fn kissing_is_a_fixed_point() {
        let cfg = FamilyConfig::Kissing {
            a: 1.3,
            b: 1.0,
            c: 0.4,
            d: 0.6,
        };
        let red = reduce(&cfg.realize().unwrap()).unwrap();
        assert_eq!(red.config, cfg);
        assert!(!red.swapped);
    }

    #[test]
    fn embedded_and_general_do_not_grow() {
        for cfg in [
            FamilyConfig::Embedded {
                a: 0.5,
                b: 0.7,
                c: 1.5,
                d: 1.2,
            },
            FamilyConfig::General {
                a: 1.0,
                b: 1.2,
                c: 0.3,
                d: 0.5,
                e: 0.4,
                f: 0.35,
            },
        ] {
            let pair = cfg.realize().unwrap();
            let red = reduce(&pair).unwrap();
            assert!(
                red.perimeter() <= cfg.closed_form_perimeter() + 1e-9,
                "{cfg:?} -> {red:?}"
            );
            assert_eq!(red.method, Method::Construction);
        }
    }

    #[test]
    fn interlocking_corner_without_slack() {
        // Both regions claim part of the box overlap and fill the union of the boxes.
        let a = poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.5, 1.0),
            (1.5, 1.5),
            (1.0, 1.5),
            (1.0, 2.0),
            (0.0, 2.0),
        ]);
        let b = poly(&[
            (1.5, 1.0),
            (3.0, 1.0),
            (3.0, 3.0),
            (1.0, 3.0),
            (1.0, 1.5),
            (1.5, 1.5),
        ]);
        let pair = BubblePair::new(a, b).unwrap();
        assert_eq!(double_bubble_perimeter(&pair), 14.0);
        let red = reduce(&pair).unwrap();
        assert_eq!(red.case.kind, CaseKind::OneCorner);
        assert!(red.perimeter() <= 14.0 + 1e-9, "{red:?}");
        let (p, q) = red.config.areas();
        let (for_first, for_second) = if red.swapped { (q, p) } else { (p, q) };
        assert!((for_first - 3.25).abs() < 1e-9 && (for_second - 3.75).abs() < 1e-9);
        assert_eq!(red.method, Method::Construction);
    }

    #[test]
    fn fallback_keeps_exact_areas() {
        for (m1, m2) in [(1.0, 0.1), (0.3, 2.0), (1.0, 1.0)] {
            let (cfg, swapped) = fallback(m1, m2);
            let (p, q) = cfg.areas();
            let (for_first, for_second) = if swapped { (q, p) } else { (p, q) };
            assert!((for_first - m1).abs() < 1e-12 && (for_second - m2).abs() < 1e-12);
            let alpha = m1.min(m2) / m1.max(m2);
            let expected = m1.max(m2).sqrt() * kkt::gamma_perimeter(alpha).unwrap();
            assert!((cfg.closed_form_perimeter() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn disjoint_squares_kiss() {
        let pair = BubblePair::new(rect(0.0, 0.0, 1.0, 1.0), rect(3.0, 5.0, 4.0, 6.0)).unwrap();
        assert_eq!(double_bubble_perimeter(&pair), 8.0);
        let red = reduce(&pair).unwrap();
        assert_eq!(red.case.kind, CaseKind::DisjointBoxes);
        assert_eq!(
            red.config,
            FamilyConfig::Kissing {
                a: 1.0,
                b: 1.0,
                c: 1.0,
                d: 1.0
            }
        );
        assert_eq!(red.perimeter(), 7.0);
    }

    #[test]
    fn normalize_examples() {
        let pair = BubblePair::new(rect(0.0, 0.0, 2.0, 2.0), rect(2.0, 0.0, 3.0, 1.0)).unwrap();
        let (scaled, s) = normalize_scale(&pair).unwrap();
        assert!((s - 0.5).abs() < 1e-15);
        assert!((area(scaled.second()) - 0.25).abs() < 1e-12);

        let pair = BubblePair::new(rect(0.0, 0.0, 1.0, 1.0), rect(1.0, 0.0, 2.0, 1.0)).unwrap();
        assert_eq!(normalize_scale(&pair).unwrap().1, 1.0);

        let pair = BubblePair::new(rect(0.0, 0.0, 0.5, 1.0), rect(0.5, 0.0, 0.52, 1.0)).unwrap();
        let (scaled, s) = normalize_scale(&pair).unwrap();
        assert!((s - 2f64.sqrt()).abs() < 1e-12);
        assert!((area(scaled.second()) - 0.04).abs() < 1e-12);
    }
}
