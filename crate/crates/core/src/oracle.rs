//! Independent checks of the analytic results: brute-force search over the
//! family, seeded random rectilinear pairs, and finite-difference kink detection.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, Error, Result};
use crate::family::{FamilyConfig, VolumeAssignment};
use crate::geometry::{area, double_bubble_perimeter, BubblePair, Point, RectilinearPolygon};
use crate::kkt::{critical_alphas, gamma_perimeter, global_minimizer};
use crate::reduce::{classify, normalize_scale, reduce, CaseKind, Method};

const POINTS_PER_AXIS: usize = 11;
const PARAM_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub alpha: f64,
    pub best_config: FamilyConfig,
    pub best_perimeter: f64,
    pub analytic_perimeter: f64,
    pub gap: f64,
    pub evaluations: u64,
}

type Objective = fn(&[f64], VolumeAssignment) -> Option<(f64, FamilyConfig)>;

fn kissing_point(x: &[f64], asg: VolumeAssignment) -> Option<(f64, FamilyConfig)> {
    let (a, c) = (x[0], x[1]);
    let (b, d) = (asg.beta / a, asg.gamma / c);
    (b >= d).then_some((2.0 * (a + b + c) + d, FamilyConfig::Kissing { a, b, c, d }))
}

fn embedded_point(x: &[f64], asg: VolumeAssignment) -> Option<(f64, FamilyConfig)> {
    let (a, d) = (x[0], x[1]);
    let (b, c) = (asg.beta / a, (asg.beta + asg.gamma) / d);
    (c > a && d > b).then_some((2.0 * (c + d) + a + b, FamilyConfig::Embedded { a, b, c, d }))
}

fn general_point(x: &[f64], asg: VolumeAssignment) -> Option<(f64, FamilyConfig)> {
    let (a, c, d, e) = (x[0], x[1], x[2], x[3]);
    let b = asg.beta / a;
    let f = (asg.gamma - c * d) / (c + e);
    (b >= d && e <= a && f > 0.0).then_some((
        2.0 * (a + b + c + f) + d + e,
        FamilyConfig::General { a, b, c, d, e, f },
    ))
}

/// Nested uniform grids: each level re-centres on the incumbent and shrinks the window tenfold.
fn nested_search(
    dim: usize,
    lo: f64,
    hi: f64,
    levels: usize,
    asg: VolumeAssignment,
    objective: Objective,
    evaluations: &mut u64,
) -> Option<(f64, FamilyConfig)> {
    let mut window = vec![(lo, hi); dim];
    let mut best: Option<(f64, FamilyConfig, Vec<f64>)> = None;
    let mut x = vec![0.0; dim];
    for _ in 0..levels {
        let total = POINTS_PER_AXIS.pow(dim as u32);
        for idx in 0..total {
            let mut rest = idx;
            for (k, xk) in x.iter_mut().enumerate() {
                let (wl, wh) = window[k];
                *xk =
                    wl + (wh - wl) * (rest % POINTS_PER_AXIS) as f64 / (POINTS_PER_AXIS - 1) as f64;
                rest /= POINTS_PER_AXIS;
            }
            *evaluations += 1;
            if let Some((p, cfg)) = objective(&x, asg) {
                if best.as_ref().is_none_or(|b| p < b.0) {
                    best = Some((p, cfg, x.clone()));
                }
            }
        }
        let Some((_, _, centre)) = &best else { break };
        for (k, w) in window.iter_mut().enumerate() {
            let width = (w.1 - w.0) / 10.0;
            let start = (centre[k] - width / 2.0).clamp(lo, hi - width);
            *w = (start, start + width);
        }
    }
    best.map(|(p, cfg, _)| (p, cfg))
}

/// Brute-force minimum over every variant and both assignments.
pub fn grid_search_family(alpha: f64, levels: usize) -> Result<SearchReport> {
    check_alpha(alpha)?;
    if levels == 0 {
        return Err(Error::MalformedInput("levels must be at least 1".into()));
    }
    // Any parameter longer than half of a known configuration's perimeter is wasteful.
    let example = 4.0 + 2.0 * (2.0 * alpha).sqrt();
    let hi = example / 2.0;
    let mut evaluations = 0;
    let mut best: Option<(f64, FamilyConfig)> = None;
    for asg in VolumeAssignment::both(alpha) {
        for (dim, objective) in [
            (2, kissing_point as Objective),
            (2, embedded_point),
            (4, general_point),
        ] {
            if let Some(found) = nested_search(
                dim,
                PARAM_FLOOR,
                hi,
                levels,
                asg,
                objective,
                &mut evaluations,
            ) {
                if best.as_ref().is_none_or(|b| found.0 < b.0) {
                    best = Some(found);
                }
            }
        }
    }
    let (best_perimeter, best_config) = best.expect("the family always has feasible points");
    let analytic_perimeter = gamma_perimeter(alpha)?;
    Ok(SearchReport {
        alpha,
        best_config,
        best_perimeter,
        analytic_perimeter,
        gap: best_perimeter - analytic_perimeter,
        evaluations,
    })
}

/// Seed and shape of a random pair of staircase polygons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaircaseSpec {
    pub seed: u64,
    /// Number of columns of the first polygon.
    pub steps: usize,
    pub target_areas: (f64, f64),
    /// Requested box layout; chosen from the seed when absent.
    #[serde(default)]
    pub layout: Option<CaseKind>,
}

impl StaircaseSpec {
    pub fn new(seed: u64, steps: usize, target_areas: (f64, f64)) -> Self {
        StaircaseSpec {
            seed,
            steps,
            target_areas,
            layout: None,
        }
    }

    pub fn with_layout(mut self, layout: CaseKind) -> Self {
        self.layout = Some(layout);
        self
    }
}

/// An x-monotone polygon made of vertical columns `[xs[i], xs[i+1]] × spans[i]`.
#[derive(Debug, Clone)]
struct Columns {
    xs: Vec<f64>,
    spans: Vec<(f64, f64)>,
}

impl Columns {
    fn width(&self) -> f64 {
        self.xs[self.xs.len() - 1] - self.xs[0]
    }

    fn area(&self) -> f64 {
        self.spans
            .iter()
            .enumerate()
            .map(|(i, s)| (self.xs[i + 1] - self.xs[i]) * (s.1 - s.0))
            .sum()
    }

    fn area_within(&self, x0: f64, x1: f64) -> f64 {
        self.spans
            .iter()
            .enumerate()
            .map(|(i, s)| (self.xs[i + 1].min(x1) - self.xs[i].max(x0)).max(0.0) * (s.1 - s.0))
            .sum()
    }

    /// Area of the part of each column below and above the line `y = h`.
    fn area_split(&self, h: f64) -> (f64, f64) {
        let mut below = 0.0;
        let mut above = 0.0;
        for (i, &(b, t)) in self.spans.iter().enumerate() {
            let w = self.xs[i + 1] - self.xs[i];
            below += w * (t.min(h) - b.min(h));
            above += w * (t.max(h) - b.max(h));
        }
        (below, above)
    }

    fn map_x(&mut self, f: impl Fn(f64) -> f64) {
        self.xs.iter_mut().for_each(|x| *x = f(*x));
    }

    fn map_y(&mut self, f: impl Fn(f64) -> f64) {
        self.spans.iter_mut().for_each(|s| *s = (f(s.0), f(s.1)));
    }

    fn polygon(&self) -> Result<RectilinearPolygon> {
        let n = self.spans.len();
        let mut pts = Vec::with_capacity(4 * n);
        for i in 0..n {
            pts.push(Point::new(self.xs[i], self.spans[i].0));
            pts.push(Point::new(self.xs[i + 1], self.spans[i].0));
        }
        for i in (0..n).rev() {
            pts.push(Point::new(self.xs[i + 1], self.spans[i].1));
            pts.push(Point::new(self.xs[i], self.spans[i].1));
        }
        RectilinearPolygon::new(pts)
    }
}

fn random_widths(rng: &mut ChaCha8Rng, n: usize, total: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w * total / sum).collect()
}

/// Tops for columns with the given bottoms so that neighbours overlap.
fn connected_tops(rng: &mut ChaCha8Rng, bots: &[f64], ceiling: f64, lift: (f64, f64)) -> Vec<f64> {
    (0..bots.len())
        .map(|j| {
            let lo = bots[j]
                .max(if j > 0 { bots[j - 1] } else { f64::MIN })
                .max(bots.get(j + 1).copied().unwrap_or(f64::MIN));
            lo + rng.gen_range(lift.0..lift.1) * (ceiling - lo)
        })
        .collect()
}

/// `B`'s columns resting on the tops of `A`'s columns over `[x0, x1]`.
fn resting_columns(
    rng: &mut ChaCha8Rng,
    a: &Columns,
    x0: f64,
    x1: f64,
    ceiling: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![x0];
    let mut bots = Vec::new();
    for (i, &(_, t)) in a.spans.iter().enumerate() {
        let (l, r) = (a.xs[i].max(x0), a.xs[i + 1].min(x1));
        if r <= l {
            continue;
        }
        xs.push(r);
        let gap = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(0.0..0.5) * (ceiling - t)
        };
        bots.push(t + gap);
    }
    (xs, bots)
}

fn choose_layout(rng: &mut ChaCha8Rng, steps: usize) -> CaseKind {
    // A single column cannot host a pocket or a corner notch, so one step keeps both rectangles.
    let mut options = vec![CaseKind::TwoCorners, CaseKind::DisjointBoxes];
    if steps >= 2 {
        options.extend([CaseKind::OneCorner, CaseKind::Contained]);
    }
    *options.choose(rng).expect("non-empty")
}

fn attempt(
    rng: &mut ChaCha8Rng,
    steps: usize,
    layout: CaseKind,
    ratio: f64,
) -> Option<(Columns, Columns)> {
    let n = steps;
    let widths: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let mut xs = vec![0.0];
    for w in &widths {
        xs.push(xs[xs.len() - 1] + w);
    }
    let spans: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0.0..0.5), rng.gen_range(1.0..3.0)))
        .collect();
    let mut a = Columns { xs, spans };
    let w_total = a.width();
    let top = a.spans.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let highest = a.spans.iter().position(|s| s.1 == top).expect("non-empty");

    let inset = |rng: &mut ChaCha8Rng, i: usize| rng.gen_range(0.0..0.4) * (a.xs[i + 1] - a.xs[i]);
    let mut b = match layout {
        CaseKind::Contained => {
            if n < 2 {
                return None;
            }
            // A run of columns avoiding the highest one leaves a pocket under A's box top.
            let pick: Vec<usize> = (0..n).filter(|&i| i != highest).collect();
            let i = *pick.choose(rng)?;
            let (mut j, mut k) = (i, i + 1);
            while j > 0 && j - 1 != highest && rng.gen_bool(0.5) {
                j -= 1;
            }
            while k < n && k != highest && rng.gen_bool(0.5) {
                k += 1;
            }
            let x0 = a.xs[j] + inset(rng, j);
            let x1 = a.xs[k] - inset(rng, k - 1);
            // Thin slabs under the pocket leave room for a large B.
            for i in j..k {
                let (b, t) = a.spans[i];
                a.spans[i].0 = t - rng.gen_range(0.1..0.5) * (t - b);
            }
            for i in 0..n {
                let left = if i > 0 { a.spans[i - 1].1 } else { f64::MAX };
                let right = a.spans.get(i + 1).map_or(f64::MAX, |s| s.1);
                a.spans[i].0 = a.spans[i].0.min(left.min(right) - 0.05);
            }
            let (bxs, bots) = resting_columns(rng, &a, x0, x1, top);
            let tops = connected_tops(rng, &bots, top, (0.2, 1.0));
            Columns {
                xs: bxs,
                spans: bots.into_iter().zip(tops).collect(),
            }
        }
        CaseKind::TwoCorners => {
            let j = rng.gen_range(0..n);
            let k = rng.gen_range(j + 1..=n);
            let x0 = a.xs[j] + inset(rng, j);
            let x1 = a.xs[k] - inset(rng, k - 1);
            let ceiling = top + rng.gen_range(0.2..1.5);
            let (bxs, bots) = resting_columns(rng, &a, x0, x1, top);
            let mut tops = connected_tops(rng, &bots, ceiling, (0.1, 1.0));
            let peak = rng.gen_range(0..tops.len());
            tops[peak] = ceiling;
            Columns {
                xs: bxs,
                spans: bots.into_iter().zip(tops).collect(),
            }
        }
        CaseKind::OneCorner => {
            let j = rng.gen_range(0..n);
            let x0 = a.xs[j] + rng.gen_range(0.1..0.9) * (a.xs[j + 1] - a.xs[j]);
            let (mut bxs, mut bots) = resting_columns(rng, &a, x0, w_total, top);
            let lowest = bots.iter().copied().fold(f64::MAX, f64::min);
            let extra = rng.gen_range(1..=n);
            let span = rng.gen_range(0.3..1.5);
            for w in random_widths(rng, extra, span) {
                bxs.push(bxs[bxs.len() - 1] + w);
                bots.push(rng.gen_range(lowest..=top));
            }
            let ceiling = top + rng.gen_range(0.2..1.5);
            let mut tops = connected_tops(rng, &bots, ceiling, (0.1, 1.0));
            let peak = rng.gen_range(0..tops.len());
            tops[peak] = ceiling;
            Columns {
                xs: bxs,
                spans: bots.into_iter().zip(tops).collect(),
            }
        }
        CaseKind::DisjointBoxes => {
            let x0 = w_total + rng.gen_range(0.05..1.0);
            let m = rng.gen_range(1..=n);
            let mut bxs = vec![x0];
            let span = rng.gen_range(0.5..3.0);
            for w in random_widths(rng, m, span) {
                bxs.push(bxs[bxs.len() - 1] + w);
            }
            let bots: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let ceiling = bots.iter().copied().fold(f64::MIN, f64::max) + rng.gen_range(0.5..2.0);
            let tops = connected_tops(rng, &bots, ceiling, (0.2, 1.0));
            Columns {
                xs: bxs,
                spans: bots.into_iter().zip(tops).collect(),
            }
        }
        CaseKind::CrossOverlap => return None,
    };

    // Bring B's area to `ratio` times A's: grow B into free space or shrink A's
    // outer columns, then lower A's bottom edge to absorb what is left.
    let needed = ratio * a.area();
    if b.area() < needed {
        match layout {
            CaseKind::Contained => {
                let (x0, x1) = (b.xs[0], b.xs[b.xs.len() - 1]);
                let inner = a.area_within(x0, x1);
                let outer = a.area() - inner;
                let kappa = (b.area() / ratio - inner) / outer;
                if kappa.is_nan() || kappa <= 0.05 {
                    return None;
                }
                a.map_x(|x| {
                    if x < x0 {
                        x0 - kappa * (x0 - x)
                    } else if x > x1 {
                        x1 + kappa * (x - x1)
                    } else {
                        x
                    }
                });
            }
            CaseKind::TwoCorners | CaseKind::OneCorner => {
                let (below, above) = b.area_split(top);
                let k = (needed - below) / above;
                b.map_y(|y| if y > top { top + k * (y - top) } else { y });
            }
            _ => {
                let lo = b.spans.iter().map(|s| s.0).fold(f64::MAX, f64::min);
                let k = needed / b.area();
                b.map_y(|y| lo + k * (y - lo));
            }
        }
    }
    let deficit = b.area() / ratio - a.area();
    if deficit > 0.0 {
        let drop = deficit / a.width();
        a.spans.iter_mut().for_each(|s| s.0 -= drop);
    }
    Some((a, b))
}

fn dihedral(p: &RectilinearPolygon, code: u8) -> Result<RectilinearPolygon> {
    let map = |q: &Point| {
        let (mut x, mut y) = (q.x, q.y);
        if code & 1 != 0 {
            x = -x;
        }
        if code & 2 != 0 {
            y = -y;
        }
        if code & 4 != 0 {
            std::mem::swap(&mut x, &mut y);
        }
        Point::new(x, y)
    };
    RectilinearPolygon::new(p.vertices().iter().map(map).collect())
}

const MAX_ATTEMPTS: usize = 64;

/// Deterministic pair of staircase polygons with the requested areas.
pub fn sample_staircase_pair(spec: &StaircaseSpec) -> Result<BubblePair> {
    let (ta, tb) = spec.target_areas;
    if spec.steps == 0 || !(ta > 0.0 && tb > 0.0 && ta.is_finite() && tb.is_finite()) {
        return Err(Error::MalformedInput(format!(
            "invalid staircase spec {spec:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let layout = spec
        .layout
        .unwrap_or_else(|| choose_layout(&mut rng, spec.steps));
    for _ in 0..MAX_ATTEMPTS {
        let Some((a, b)) = attempt(&mut rng, spec.steps, layout, tb / ta) else {
            continue;
        };
        let code: u8 = rng.gen_range(0..8);
        let s = (ta / a.area()).sqrt();
        let Ok(first) = a
            .polygon()
            .and_then(|p| p.transformed(s, 0.0, 0.0))
            .and_then(|p| dihedral(&p, code))
        else {
            continue;
        };
        let Ok(second) = b
            .polygon()
            .and_then(|p| p.transformed(s, 0.0, 0.0))
            .and_then(|p| dihedral(&p, code))
        else {
            continue;
        };
        let Ok(pair) = BubblePair::new(first, second) else {
            continue;
        };
        let exact = (area(pair.first()) - ta).abs() <= 1e-9 * ta.max(1.0)
            && (area(pair.second()) - tb).abs() <= 1e-9 * tb.max(1.0);
        if exact && classify(&pair).kind == layout {
            return Ok(pair);
        }
    }
    Err(Error::Generation(format!(
        "no {layout:?} pair after {MAX_ATTEMPTS} attempts for {spec:?}"
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub alpha: f64,
    pub samples: usize,
    pub checked: usize,
    /// Unsupported or ungeneratable samples, never silently dropped.
    pub skipped: usize,
    pub fallbacks: usize,
    /// Checked samples per case, in `Contained, TwoCorners, OneCorner, DisjointBoxes` order.
    pub by_case: Vec<(CaseKind, usize)>,
    pub min_gap: f64,
    pub violations: Vec<String>,
}

/// Checks `gamma_perimeter(α) ≤ ρ_DB` and the reduction chain on random pairs with areas `(1, α)`.
pub fn certify_lower_bound(alpha: f64, samples: usize, seed: u64) -> Result<CertifyReport> {
    check_alpha(alpha)?;
    let bound = gamma_perimeter(alpha)?;
    let chi = global_minimizer(alpha)?.minimizers[0]
        .config
        .expect("minimizers are valid");
    let mut report = CertifyReport {
        alpha,
        samples,
        checked: 0,
        skipped: 0,
        fallbacks: 0,
        by_case: Vec::new(),
        min_gap: f64::INFINITY,
        violations: Vec::new(),
    };
    let layouts = [
        CaseKind::Contained,
        CaseKind::TwoCorners,
        CaseKind::OneCorner,
        CaseKind::DisjointBoxes,
    ];
    report.by_case = layouts.iter().map(|&k| (k, 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let pair = if i == 0 {
            chi.realize()
        } else {
            let spec = StaircaseSpec::new(rng.gen(), rng.gen_range(2..=6), (1.0, alpha))
                .with_layout(layouts[i % 4]);
            sample_staircase_pair(&spec)
        };
        let Ok(pair) = pair else {
            report.skipped += 1;
            continue;
        };
        let (pair, _) = normalize_scale(&pair)?;
        let measured = double_bubble_perimeter(&pair);
        report.min_gap = report.min_gap.min(measured - bound);
        if bound > measured + 1e-9 {
            report
                .violations
                .push(format!("sample {i}: ρ_DB {measured} below bound {bound}"));
        }
        match reduce(&pair) {
            Ok(red) => {
                report.checked += 1;
                if let Some(slot) = report.by_case.iter_mut().find(|(k, _)| *k == red.case.kind) {
                    slot.1 += 1;
                }
                let (a, b) = (area(pair.first()), area(pair.second()));
                let (a, b) = if red.swapped { (b, a) } else { (a, b) };
                let (p, q) = red.config.areas();
                if (p - a).abs() > 1e-9 * a.max(1.0) || (q - b).abs() > 1e-9 * b.max(1.0) {
                    report
                        .violations
                        .push(format!("sample {i}: areas ({a}, {b}) became ({p}, {q})"));
                }
                if red.method == Method::Fallback {
                    report.fallbacks += 1;
                }
                let out = red.perimeter();
                if out > measured + 1e-9 {
                    report.violations.push(format!(
                        "sample {i}: reduction grew perimeter {measured} -> {out}"
                    ));
                }
                if bound > out + 1e-9 {
                    report.violations.push(format!(
                        "sample {i}: reduced perimeter {out} below bound {bound}"
                    ));
                }
            }
            Err(Error::UnsupportedCase(_)) => report.skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kink {
    pub alpha: f64,
    /// Change of the differenced quantity across the kink.
    pub jump: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KinkReport {
    pub grid_step: f64,
    pub fd_step: f64,
    pub first_order: Vec<Kink>,
    pub second_order: Vec<Kink>,
}

/// Flags differences that exceed ten times the larger of the differences two
/// cells away on either side; adjacent flags merge into one kink.
fn jumps(alphas: &[f64], values: &[f64], floor: f64, excluded: &dyn Fn(f64) -> bool) -> Vec<Kink> {
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let n = diffs.len();
    let mut flagged: Vec<usize> = Vec::new();
    for k in 0..n {
        let mid = 0.5 * (alphas[k] + alphas[k + 1]);
        if excluded(mid) {
            continue;
        }
        let left = if k >= 2 { diffs[k - 2].abs() } else { 0.0 };
        let right = if k + 2 < n { diffs[k + 2].abs() } else { 0.0 };
        if diffs[k].abs() > 10.0 * left.max(right).max(floor) {
            flagged.push(k);
        }
    }
    let mut out: Vec<Kink> = Vec::new();
    let mut i = 0;
    while i < flagged.len() {
        let mut j = i;
        while j + 1 < flagged.len() && flagged[j + 1] == flagged[j] + 1 {
            j += 1;
        }
        let cluster = &flagged[i..=j];
        let weight: f64 = cluster.iter().map(|&k| diffs[k].abs()).sum();
        let alpha = cluster
            .iter()
            .map(|&k| 0.5 * (alphas[k] + alphas[k + 1]) * diffs[k].abs())
            .sum::<f64>()
            / weight;
        out.push(Kink {
            alpha,
            jump: cluster.iter().map(|&k| diffs[k]).sum(),
        });
        i = j + 1;
    }
    out
}

/// Scans `gamma_perimeter` for jumps in its first and second central differences.
pub fn detect_kinks(grid_step: f64, fd_step: f64) -> Result<KinkReport> {
    if !(fd_step > 0.0 && fd_step < grid_step && grid_step < 0.1) {
        return Err(Error::MalformedInput(format!(
            "need 0 < fd_step < grid_step < 0.1, got fd_step={fd_step}, grid_step={grid_step}"
        )));
    }
    let h = fd_step;
    let g = |a: f64| gamma_perimeter(a).expect("inside (0, 1]");
    let count = ((1.0 - 2.0 * h) / grid_step).floor() as usize;
    let alphas: Vec<f64> = (1..count)
        .map(|k| h + k as f64 * grid_step)
        .filter(|&a| a + h <= 1.0)
        .collect();
    let (mut d1, mut d2) = (
        Vec::with_capacity(alphas.len()),
        Vec::with_capacity(alphas.len()),
    );
    for &a in &alphas {
        let (lo, mid, hi) = (g(a - h), g(a), g(a + h));
        d1.push((hi - lo) / (2.0 * h));
        d2.push((hi - 2.0 * mid + lo) / (h * h));
    }
    let noise = 64.0 * f64::EPSILON * 8.0;
    let first_order = jumps(&alphas, &d1, noise / h, &|_| false);
    let near_first = |a: f64| {
        first_order
            .iter()
            .any(|k| (a - k.alpha).abs() <= 3.0 * grid_step + h)
    };
    let second_order = jumps(&alphas, &d2, noise / (h * h), &near_first);
    Ok(KinkReport {
        grid_step,
        fd_step,
        first_order,
        second_order,
    })
}

/// Compares the detected kinks with the closed-form critical ratios: exactly
/// one kink of each order, each within `tol`. Returns the discrepancies.
pub fn kink_discrepancies(report: &KinkReport, tol: f64) -> Vec<String> {
    let expected = critical_alphas();
    let mut out = Vec::new();
    for (name, found, target) in [
        ("first-order", &report.first_order, expected.first),
        ("second-order", &report.second_order, expected.second),
    ] {
        match found.as_slice() {
            [k] if (k.alpha - target).abs() <= tol => {}
            [k] => out.push(format!(
                "{name} kink at {} is not within {tol} of {target}",
                k.alpha
            )),
            ks => out.push(format!(
                "expected one {name} kink near {target}, found {}",
                ks.len()
            )),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerReport {
    pub samples: usize,
    /// Largest `|gamma_perimeter − global_minimizer.perimeter|` seen.
    pub max_disagreement: f64,
    /// Largest `|ρ_DB(realize) − closed form|` over the returned minimizers.
    pub max_realization_error: f64,
    pub minimizers_at_critical: usize,
    pub violations: Vec<String>,
}

/// Checks the piecewise formula against the branch enumeration at random
/// ratios, realizes every minimizer, and checks non-uniqueness at the first
/// critical ratio.
pub fn check_minimizers(samples: usize, seed: u64) -> Result<MinimizerReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MinimizerReport {
        samples,
        max_disagreement: 0.0,
        max_realization_error: 0.0,
        minimizers_at_critical: 0,
        violations: Vec::new(),
    };
    for _ in 0..samples {
        // (0, 1]: flip the half-open [0, 1) draw.
        let alpha = 1.0 - rng.gen::<f64>();
        let closed = gamma_perimeter(alpha)?;
        let found = global_minimizer(alpha)?;
        let diff = (closed - found.perimeter).abs();
        report.max_disagreement = report.max_disagreement.max(diff);
        if diff > 1e-9 {
            report.violations.push(format!(
                "alpha {alpha}: piecewise {closed} vs minimizer {}",
                found.perimeter
            ));
        }
        for sol in &found.minimizers {
            let cfg = sol
                .config
                .ok_or_else(|| Error::Constraint(format!("{} has no config", sol.branch)))?;
            let err = (double_bubble_perimeter(&cfg.realize()?) - sol.perimeter).abs();
            report.max_realization_error = report.max_realization_error.max(err);
            if err > 1e-9 {
                report
                    .violations
                    .push(format!("alpha {alpha}: {} realizes {err} away", sol.branch));
            }
        }
    }
    let critical = critical_alphas();
    let at = global_minimizer(critical.first)?;
    report.minimizers_at_critical = at.minimizers.len();
    if critical.residual > 1e-12 {
        report.violations.push(format!(
            "branches differ by {} at the critical ratio",
            critical.residual
        ));
    }
    if at.minimizers.len() < 2 {
        report.violations.push(format!(
            "{} minimizer(s) at the critical ratio",
            at.minimizers.len()
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub levels: usize,
    pub searches: Vec<SearchReport>,
    pub violations: Vec<String>,
}

/// Runs the grid search at `count` evenly spaced ratios in `(0, 1]` and
/// requires each gap to lie in `[−1e-9, 1e-5]`.
pub fn oracle_agreement(count: usize, levels: usize) -> Result<AgreementReport> {
    let mut report = AgreementReport {
        levels,
        searches: Vec::with_capacity(count),
        violations: Vec::new(),
    };
    for k in 1..=count {
        let rep = grid_search_family(k as f64 / count as f64, levels)?;
        if !(-1e-9..=1e-5).contains(&rep.gap) {
            report
                .violations
                .push(format!("alpha {}: gap {}", rep.alpha, rep.gap));
        }
        report.searches.push(rep);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kkt::alpha_one;

    #[test]
    fn grid_search_examples() {
        for (alpha, expected) in [(0.25, 5.4142136), (1.0, 6.9282032), (0.1, 4.8276909)] {
            let rep = grid_search_family(alpha, 6).unwrap();
            assert!((rep.best_perimeter - expected).abs() < 1e-5, "{rep:?}");
            assert!(rep.gap >= -1e-9 && rep.gap <= 1e-5, "{rep:?}");
        }
    }

    #[test]
    fn sampler_examples() {
        let spec = StaircaseSpec::new(1, 1, (1.0, 0.5));
        let pair = sample_staircase_pair(&spec).unwrap();
        assert!(pair.first().is_rectangle() && pair.second().is_rectangle());
        assert!(
            (area(pair.first()) - 1.0).abs() < 1e-9 && (area(pair.second()) - 0.5).abs() < 1e-9
        );

        let spec = StaircaseSpec::new(7, 5, (1.0, 0.3));
        let p1 = sample_staircase_pair(&spec).unwrap();
        let p2 = sample_staircase_pair(&spec).unwrap();
        assert_eq!(
            serde_json::to_string(&p1).unwrap(),
            serde_json::to_string(&p2).unwrap()
        );
        assert!((area(p1.second()) - 0.3).abs() < 1e-9);
    }

    #[test]
    fn sampler_hits_each_layout() {
        for layout in [
            CaseKind::Contained,
            CaseKind::TwoCorners,
            CaseKind::OneCorner,
            CaseKind::DisjointBoxes,
        ] {
            for seed in 0..40 {
                let spec = StaircaseSpec::new(
                    seed,
                    1 + (seed as usize % 6).max(1),
                    (1.0, 0.05 + seed as f64 / 45.0),
                )
                .with_layout(layout);
                let pair = sample_staircase_pair(&spec)
                    .unwrap_or_else(|e| panic!("{layout:?} {seed}: {e}"));
                assert_eq!(classify(&pair).kind, layout);
            }
        }
    }

    #[test]
    fn certify_examples() {
        for alpha in [0.3, 1.0] {
            let rep = certify_lower_bound(alpha, 200, 11).unwrap();
            assert!(rep.violations.is_empty(), "{rep:?}");
            assert!(rep.min_gap >= -1e-9);
        }
        let rep = certify_lower_bound(0.5, 1, 3).unwrap();
        assert!(rep.min_gap.abs() < 1e-9);
    }

    #[test]
    fn kinks_found_where_expected() {
        let rep = detect_kinks(1e-4, 1e-5).unwrap();
        assert_eq!(rep.first_order.len(), 1, "{:?}", rep.first_order);
        assert!((rep.first_order[0].alpha - alpha_one()).abs() < 1e-4);
        assert_eq!(rep.second_order.len(), 1, "{:?}", rep.second_order);
        assert!((rep.second_order[0].alpha - 0.5).abs() < 1e-4);
        assert!(rep
            .first_order
            .iter()
            .chain(&rep.second_order)
            .all(|k| !(0.25..0.45).contains(&k.alpha)));
        assert!(kink_discrepancies(&rep, 1e-4).is_empty());
    }

    #[test]
    fn minimizer_check_small() {
        let rep = check_minimizers(200, 5).unwrap();
        assert!(rep.violations.is_empty(), "{rep:?}");
        assert!(rep.minimizers_at_critical >= 2);
    }
}
