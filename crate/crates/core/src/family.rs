//! The finite family of candidate configurations: kissing rectangles, an
//! embedded corner rectangle, and the general six-parameter corner wrap.
//!
//! Parameter roles follow the labelled drawings of the family:
//!
//! * `Kissing { a, b, c, d }`: rectangle `a` wide and `b` tall, with a second
//!   rectangle `c` wide and `d` tall flush against its right side (`b >= d`).
//! * `Embedded { a, b, c, d }`: inner rectangle `b` wide and `a` tall sitting
//!   in the top-right corner of an outer rectangle `d` wide and `c` tall.
//! * `General { a, b, c, d, e, f }`: rectangle `b` wide and `a` tall; the
//!   second region wraps its top-right corner, sharing `d` of the top side and
//!   `e` of the right side, overhanging by `c` above and `f` to the right.
//!
//! In every variant the first region is the `ab` rectangle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BubblePair, Point, RectilinearPolygon, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "lowercase")]
pub enum FamilyConfig {
    Kissing {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
    Embedded {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    },
    General {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        e: f64,
        f: f64,
    },
}

/// Which area the `ab` rectangle carries (`beta`) and which the other region carries (`gamma`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeAssignment {
    pub beta: f64,
    pub gamma: f64,
}

impl VolumeAssignment {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if beta > 0.0 && gamma > 0.0 && beta.is_finite() && gamma.is_finite() {
            Ok(VolumeAssignment { beta, gamma })
        } else {
            Err(Error::MalformedInput(format!(
                "areas must be positive, got ({beta}, {gamma})"
            )))
        }
    }

    /// `(beta, gamma) = (1, alpha)`.
    pub fn unit_first(alpha: f64) -> Self {
        VolumeAssignment {
            beta: 1.0,
            gamma: alpha,
        }
    }

    /// `(beta, gamma) = (alpha, 1)`.
    pub fn unit_second(alpha: f64) -> Self {
        VolumeAssignment {
            beta: alpha,
            gamma: 1.0,
        }
    }

    /// Both assignments for a ratio, unit-first first.
    pub fn both(alpha: f64) -> [Self; 2] {
        [Self::unit_first(alpha), Self::unit_second(alpha)]
    }

    pub fn swapped(self) -> Self {
        VolumeAssignment {
            beta: self.gamma,
            gamma: self.beta,
        }
    }
}

impl fmt::Display for VolumeAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.beta, self.gamma)
    }
}

/// Outcome of [`validate`]: the list of violated constraints, empty when valid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&str> {
        self.violations.first().map(String::as_str)
    }
}

fn close(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() <= EPS * rhs.abs().max(1.0)
}

impl FamilyConfig {
    pub fn variant_name(&self) -> &'static str {
        match self {
            FamilyConfig::Kissing { .. } => "kissing",
            FamilyConfig::Embedded { .. } => "embedded",
            FamilyConfig::General { .. } => "general",
        }
    }

    /// Named parameters in `a..f` order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            FamilyConfig::Kissing { a, b, c, d } | FamilyConfig::Embedded { a, b, c, d } => {
                vec![("a", a), ("b", b), ("c", c), ("d", d)]
            }
            FamilyConfig::General { a, b, c, d, e, f } => {
                vec![("a", a), ("b", b), ("c", c), ("d", d), ("e", e), ("f", f)]
            }
        }
    }

    /// Every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> FamilyConfig {
        match *self {
            FamilyConfig::Kissing { a, b, c, d } => FamilyConfig::Kissing {
                a: s * a,
                b: s * b,
                c: s * c,
                d: s * d,
            },
            FamilyConfig::Embedded { a, b, c, d } => FamilyConfig::Embedded {
                a: s * a,
                b: s * b,
                c: s * c,
                d: s * d,
            },
            FamilyConfig::General { a, b, c, d, e, f } => FamilyConfig::General {
                a: s * a,
                b: s * b,
                c: s * c,
                d: s * d,
                e: s * e,
                f: s * f,
            },
        }
    }

    /// Positivity and ordering constraints, independent of any area target.
    pub fn shape_violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .params()
            .into_iter()
            .filter(|&(_, v)| !(v.is_finite() && v > EPS))
            .map(|(name, _)| format!("{name} > 0 (positivity)"))
            .collect();
        match *self {
            FamilyConfig::Kissing { b, d, .. } => {
                if b < d - EPS {
                    out.push("b ≥ d".into());
                }
            }
            FamilyConfig::Embedded { a, b, c, d } => {
                if c <= a + EPS {
                    out.push("c > a".into());
                }
                if d <= b + EPS {
                    out.push("d > b".into());
                }
            }
            FamilyConfig::General { a, b, d, e, .. } => {
                if b < d - EPS {
                    out.push("b ≥ d".into());
                }
                if e > a + EPS {
                    out.push("e ≤ a".into());
                }
            }
        }
        out
    }

    pub fn closed_form_perimeter(&self) -> f64 {
        match *self {
            FamilyConfig::Kissing { a, b, c, d } => 2.0 * (a + b + c) + d,
            FamilyConfig::Embedded { a, b, c, d } => 2.0 * (c + d) + a + b,
            FamilyConfig::General { a, b, c, d, e, f } => 2.0 * (a + b + c + f) + (d + e),
        }
    }

    /// `(area of the ab rectangle, area of the other region)`.
    pub fn areas(&self) -> (f64, f64) {
        match *self {
            FamilyConfig::Kissing { a, b, c, d } => (a * b, c * d),
            FamilyConfig::Embedded { a, b, c, d } => (a * b, c * d - a * b),
            FamilyConfig::General { a, b, c, d, e, f } => (a * b, c * d + c * f + e * f),
        }
    }

    /// Concrete polygons, `ab` rectangle anchored at the origin.
    pub fn realize(&self) -> Result<BubblePair> {
        let violations = self.shape_violations();
        if !violations.is_empty() {
            return Err(Error::Constraint(violations.join(", ")));
        }
        let poly = |pts: &[(f64, f64)]| {
            RectilinearPolygon::new(pts.iter().copied().map(Point::from).collect())
        };
        let (first, second) = match *self {
            FamilyConfig::Kissing { a, b, c, d } => (
                RectilinearPolygon::rectangle(0.0, 0.0, a, b)?,
                RectilinearPolygon::rectangle(a, 0.0, a + c, d)?,
            ),
            FamilyConfig::Embedded { a, b, c, d } => (
                RectilinearPolygon::rectangle(d - b, c - a, d, c)?,
                poly(&[
                    (0.0, 0.0),
                    (d, 0.0),
                    (d, c - a),
                    (d - b, c - a),
                    (d - b, c),
                    (0.0, c),
                ])?,
            ),
            FamilyConfig::General { a, b, c, d, e, f } => (
                RectilinearPolygon::rectangle(0.0, 0.0, b, a)?,
                poly(&[
                    (b, a - e),
                    (b + f, a - e),
                    (b + f, a + c),
                    (b - d, a + c),
                    (b - d, a),
                    (b, a),
                ])?,
            ),
        };
        BubblePair::new(first, second)
    }
}

/// Checks positivity, ordering and the two area equations of the variant.
pub fn validate(cfg: &FamilyConfig, asg: VolumeAssignment) -> ValidityReport {
    let mut violations = cfg.shape_violations();
    let (first, second) = cfg.areas();
    if !close(first, asg.beta) {
        violations.push("ab = β".into());
    }
    if !close(second, asg.gamma) {
        violations.push(
            match cfg {
                FamilyConfig::Kissing { .. } => "cd = γ",
                FamilyConfig::Embedded { .. } => "cd − ab = γ",
                FamilyConfig::General { .. } => "cd + cf + ef = γ",
            }
            .into(),
        );
    }
    ValidityReport { violations }
}

pub fn closed_form_perimeter(cfg: &FamilyConfig) -> f64 {
    cfg.closed_form_perimeter()
}

pub fn areas(cfg: &FamilyConfig) -> (f64, f64) {
    cfg.areas()
}

pub fn realize(cfg: &FamilyConfig) -> Result<BubblePair> {
    cfg.realize()
}
