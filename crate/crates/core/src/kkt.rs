//! Closed-form stationary points of the perimeter over each variant of the
//! family, and the resulting minimum as a function of the area ratio.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, Result};
use crate::family::{validate, FamilyConfig, VolumeAssignment};

/// Two candidates are co-minimizers when their perimeters differ by at most this much.
pub const MINIMIZER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchLabel {
    KissingUnconstrained,
    KissingConstrained,
    Embedded,
    GeneralUnconstrained,
    GeneralMu1,
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Same spelling as the serialized form.
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSolution {
    pub branch: BranchLabel,
    pub assignment: VolumeAssignment,
    pub config: Option<FamilyConfig>,
    pub perimeter: f64,
    pub valid: bool,
    pub violated: Option<String>,
}

impl BranchSolution {
    fn checked(branch: BranchLabel, assignment: VolumeAssignment, config: FamilyConfig) -> Self {
        let report = validate(&config, assignment);
        BranchSolution {
            branch,
            assignment,
            perimeter: config.closed_form_perimeter(),
            valid: report.is_valid(),
            violated: report.first_violation().map(str::to_owned),
            config: Some(config),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaResult {
    pub alpha: f64,
    pub perimeter: f64,
    pub minimizers: Vec<BranchSolution>,
    pub branch_label: BranchLabel,
}

/// The unconstrained kissing point and the one with the shared side equal to
/// the full height (`b = d`).
pub fn solve_kissing(asg: VolumeAssignment) -> Vec<BranchSolution> {
    let VolumeAssignment { beta, gamma } = asg;
    let root = beta.sqrt();
    let free = FamilyConfig::Kissing {
        a: root,
        b: root,
        c: (gamma / 2.0).sqrt(),
        d: (2.0 * gamma).sqrt(),
    };
    let h = (2.0 * (beta + gamma) / 3.0).sqrt();
    let tied = FamilyConfig::Kissing {
        a: beta / h,
        b: h,
        c: gamma / h,
        d: h,
    };
    vec![
        BranchSolution::checked(BranchLabel::KissingUnconstrained, asg, free),
        BranchSolution::checked(BranchLabel::KissingConstrained, asg, tied),
    ]
}

pub fn solve_embedded(asg: VolumeAssignment) -> BranchSolution {
    let inner = asg.beta.sqrt();
    let outer = (asg.beta + asg.gamma).sqrt();
    let cfg = FamilyConfig::Embedded {
        a: inner,
        b: inner,
        c: outer,
        d: outer,
    };
    BranchSolution::checked(BranchLabel::Embedded, asg, cfg)
}

/// Interior stationary point of the general variant, with no inequality active.
pub fn solve_general_unconstrained(asg: VolumeAssignment) -> BranchSolution {
    let a = asg.beta.sqrt();
    let c = (asg.gamma / 3.0).sqrt();
    let d = asg.gamma / (3.0 * c);
    let f = (asg.gamma - c * d) / (2.0 * c);
    let cfg = FamilyConfig::General {
        a,
        b: asg.beta / a,
        c,
        d,
        e: c,
        f,
    };
    BranchSolution::checked(BranchLabel::GeneralUnconstrained, asg, cfg)
}

/// Stationary point of the general variant with `ad = β` active.
pub fn solve_general_mu1(asg: VolumeAssignment) -> BranchSolution {
    let VolumeAssignment { beta, gamma } = asg;
    let a = (beta / 2.0).sqrt();
    let d = (2.0 * beta).sqrt();
    let c = ((2.0 * beta).sqrt() + (2.0 * beta + 16.0 * gamma).sqrt()) / 8.0;
    let f = (gamma - c * d) / (2.0 * c);
    let cfg = FamilyConfig::General {
        a,
        b: beta / a,
        c,
        d,
        e: c,
        f,
    };
    BranchSolution::checked(BranchLabel::GeneralMu1, asg, cfg)
}

/// The compound expression for the `ad = β` branch, written out term by term.
pub fn general_mu1_expression(asg: VolumeAssignment) -> f64 {
    let VolumeAssignment { beta, gamma } = asg;
    let r = (2.0 * beta).sqrt();
    let c = (r + (2.0 * beta + 16.0 * gamma).sqrt()) / 8.0;
    let half = (beta / 2.0).sqrt();
    2.0 * (half + beta / half + c + (gamma - c * r) / (2.0 * c)) + (r + c)
}

/// Every branch solved for one assignment, valid or not.
pub fn all_branches(asg: VolumeAssignment) -> Vec<BranchSolution> {
    let mut out = solve_kissing(asg);
    out.push(solve_embedded(asg));
    out.push(solve_general_unconstrained(asg));
    out.push(solve_general_mu1(asg));
    out
}

fn argmin(candidates: impl IntoIterator<Item = BranchSolution>) -> Option<BranchSolution> {
    candidates
        .into_iter()
        .filter(|s| s.valid)
        .min_by(|x, y| x.perimeter.total_cmp(&y.perimeter))
}

/// Smallest valid branch for one assignment.
///
/// Kissing rectangles are symmetric in the two region labels, so the kissing
/// pair solved for the swapped assignment also counts; such a solution keeps
/// its own (swapped) `assignment` field.
pub fn per_assignment_minimum(alpha: f64, asg: VolumeAssignment) -> Result<BranchSolution> {
    check_alpha(alpha)?;
    let mut candidates = all_branches(asg);
    candidates.extend(solve_kissing(asg.swapped()));
    Ok(argmin(candidates).expect("the tied kissing branch is always valid"))
}

pub fn global_minimizer(alpha: f64) -> Result<GammaResult> {
    check_alpha(alpha)?;
    let valid: Vec<BranchSolution> = VolumeAssignment::both(alpha)
        .into_iter()
        .flat_map(all_branches)
        .filter(|s| s.valid)
        .collect();
    let perimeter = valid
        .iter()
        .map(|s| s.perimeter)
        .fold(f64::INFINITY, f64::min);
    let mut minimizers: Vec<BranchSolution> = Vec::new();
    for s in valid
        .into_iter()
        .filter(|s| s.perimeter - perimeter <= MINIMIZER_TOL)
    {
        // Branches can coincide (the tie `b = d` is also the free optimum at ½).
        if !minimizers.iter().any(|m| same_shape(m, &s)) {
            minimizers.push(s);
        }
    }
    Ok(GammaResult {
        alpha,
        perimeter,
        minimizers,
        branch_label: theorem_branch(alpha),
    })
}

fn same_shape(x: &BranchSolution, y: &BranchSolution) -> bool {
    let (Some(p), Some(q)) = (x.config, y.config) else {
        return false;
    };
    p.variant_name() == q.variant_name()
        && p.params()
            .iter()
            .zip(q.params())
            .all(|((_, u), (_, v))| (u - v).abs() <= MINIMIZER_TOL)
}

/// First critical ratio, where the embedded and kissing values cross.
pub fn alpha_one() -> f64 {
    (688.0 - 480.0 * 2f64.sqrt()) / 49.0
}

/// Which piece of the piecewise formula applies; junctions belong to the closed pieces.
pub fn theorem_branch(alpha: f64) -> BranchLabel {
    if alpha <= alpha_one() {
        BranchLabel::Embedded
    } else if alpha < 0.5 {
        BranchLabel::KissingUnconstrained
    } else {
        BranchLabel::KissingConstrained
    }
}

fn embedded_value(alpha: f64) -> f64 {
    4.0 * (1.0 + alpha).sqrt() + 2.0 * alpha.sqrt()
}

fn kissing_value(alpha: f64) -> f64 {
    4.0 + 2.0 * (2.0 * alpha).sqrt()
}

fn tied_value(alpha: f64) -> f64 {
    2.0 * (6.0 * (1.0 + alpha)).sqrt()
}

/// Minimal double bubble perimeter for areas `1` and `alpha`.
pub fn gamma_perimeter(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(match theorem_branch(alpha) {
        BranchLabel::Embedded => embedded_value(alpha),
        BranchLabel::KissingUnconstrained => kissing_value(alpha),
        _ => tied_value(alpha),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalAlphas {
    /// Closed form of the first-derivative kink.
    pub first: f64,
    /// Second-derivative kink.
    pub second: f64,
    /// Root of `embedded − kissing` found by bisection.
    pub bisection_root: f64,
    /// `|embedded − kissing|` at `first`.
    pub residual: f64,
}

pub fn critical_alphas() -> CriticalAlphas {
    let gap = |a: f64| embedded_value(a) - kissing_value(a);
    let (mut lo, mut hi) = (0.1, 0.3);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    while hi - lo > f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let first = alpha_one();
    CriticalAlphas {
        first,
        second: 0.5,
        bisection_root: 0.5 * (lo + hi),
        residual: gap(first).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::double_bubble_perimeter;

    fn asg(beta: f64, gamma: f64) -> VolumeAssignment {
        VolumeAssignment::new(beta, gamma).unwrap()
    }

    #[test]
    fn kissing_examples() {
        let sols = solve_kissing(asg(1.0, 0.25));
        assert!(sols[0].valid);
        assert!((sols[0].perimeter - 5.4142136).abs() < 5e-8);

        let sols = solve_kissing(asg(1.0, 1.0));
        assert!(!sols[0].valid);
        assert!(sols[1].valid);
        assert!((sols[1].perimeter - 6.9282032).abs() < 5e-8);

        let sols = solve_kissing(asg(0.25, 1.0));
        assert_eq!(sols[0].violated.as_deref(), Some("b ≥ d"));
    }

    #[test]
    fn embedded_examples() {
        let s = solve_embedded(asg(0.1, 1.0));
        assert!(s.valid);
        assert!((s.perimeter - 4.8276909).abs() < 5e-8);
        let tiny = solve_embedded(asg(1e-12, 1.0));
        assert!((tiny.perimeter - 4.0).abs() < 1e-5);
        let big = solve_embedded(asg(1.0, 0.5));
        assert!((big.perimeter - 6.8989795).abs() < 5e-8);
        assert!(big.perimeter > 6.0);
    }

    #[test]
    fn general_unconstrained_formula() {
        let s = solve_general_unconstrained(asg(1.0, 0.3));
        assert!((s.perimeter - (4.0 + 6.0 * 0.1f64.sqrt())).abs() < 1e-12);
        assert!((s.perimeter - 5.8973666).abs() < 5e-8);
        let s = solve_general_unconstrained(asg(0.3, 1.0));
        let expected = 4.0 * 0.3f64.sqrt() + 2.0 * 3f64.sqrt();
        assert!((s.perimeter - expected).abs() < 1e-12);
    }

    #[test]
    fn general_mu1_values() {
        let s = solve_general_mu1(asg(0.1, 1.0));
        let Some(FamilyConfig::General { a, c, e, .. }) = s.config else {
            panic!()
        };
        assert!((c - 0.5590170).abs() < 5e-8 && c == e);
        assert!((a - 0.2236068).abs() < 5e-8);
        assert!(!s.valid);
        assert_eq!(s.violated.as_deref(), Some("e ≤ a"));

        // Below the true minimum, which is why feasibility has to rule it out.
        let expr = general_mu1_expression(asg(0.05, 1.0));
        assert!((expr - 4.4200753).abs() < 5e-8);
        assert!(expr < gamma_perimeter(0.05).unwrap());
        assert!(!solve_general_mu1(asg(0.05, 1.0)).valid);
        for &(b, g) in &[(0.05, 1.0), (1.0, 0.3), (0.7, 1.0), (2.0, 0.1)] {
            let direct = solve_general_mu1(asg(b, g)).perimeter;
            assert!((direct - general_mu1_expression(asg(b, g))).abs() < 1e-12);
        }
    }

    #[test]
    fn per_assignment_examples() {
        let red = per_assignment_minimum(0.05, VolumeAssignment::unit_first(0.05)).unwrap();
        assert!((red.perimeter - 4.6324555).abs() < 5e-8);
        let blue = per_assignment_minimum(0.05, VolumeAssignment::unit_second(0.05)).unwrap();
        assert!((blue.perimeter - 4.5459939).abs() < 5e-8);
        for asg in VolumeAssignment::both(0.75) {
            let s = per_assignment_minimum(0.75, asg).unwrap();
            assert!((s.perimeter - 6.4807407).abs() < 5e-8);
        }
        assert!(per_assignment_minimum(0.0, VolumeAssignment::unit_first(0.0)).is_err());
    }

    #[test]
    fn global_examples() {
        let g = global_minimizer(0.1).unwrap();
        assert!((g.perimeter - 4.8276909).abs() < 5e-8);
        assert_eq!(g.branch_label, BranchLabel::Embedded);
        assert_eq!(g.minimizers[0].branch, BranchLabel::Embedded);

        let g = global_minimizer(0.3).unwrap();
        assert!((g.perimeter - 5.5491933).abs() < 5e-8);
        assert_eq!(g.branch_label, BranchLabel::KissingUnconstrained);

        let g = global_minimizer(alpha_one()).unwrap();
        let branches: Vec<_> = g.minimizers.iter().map(|s| s.branch).collect();
        assert!(branches.contains(&BranchLabel::Embedded));
        assert!(branches.contains(&BranchLabel::KissingUnconstrained));

        assert!(global_minimizer(1.5).is_err());
        assert!(global_minimizer(f64::NAN).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!((gamma_perimeter(0.5).unwrap() - 6.0).abs() < 1e-12);
        assert!((gamma_perimeter(1.0).unwrap() - 6.9282032).abs() < 5e-8);
        assert!((gamma_perimeter(0.0125).unwrap() - 4.2485292).abs() < 5e-8);
    }

    #[test]
    fn critical_values() {
        let crit = critical_alphas();
        assert!((crit.first - 0.187295715528864).abs() < 1e-14);
        assert_eq!(crit.second, 0.5);
        assert!((crit.bisection_root - crit.first).abs() < 1e-12);
        assert!(crit.residual < 1e-12);
    }

    #[test]
    fn continuity_and_monotonicity() {
        let a1 = alpha_one();
        assert!((embedded_value(a1) - kissing_value(a1)).abs() < 1e-9);
        assert!((kissing_value(0.5) - tied_value(0.5)).abs() < 1e-9);
        let mut prev = 0.0;
        for i in 1..=2000 {
            let v = gamma_perimeter(i as f64 / 2000.0).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn valid_solutions_round_trip() {
        for i in 1..=200 {
            let alpha = i as f64 / 200.0;
            for asg in VolumeAssignment::both(alpha) {
                for s in all_branches(asg).into_iter().filter(|s| s.valid) {
                    let cfg = s.config.unwrap();
                    let (p, q) = cfg.areas();
                    assert!((p - asg.beta).abs() < 1e-9 && (q - asg.gamma).abs() < 1e-9);
                    let pair = cfg.realize().unwrap();
                    assert!((double_bubble_perimeter(&pair) - s.perimeter).abs() < 1e-9);
                    assert!(
                        s.perimeter >= gamma_perimeter(alpha).unwrap() - 1e-9,
                        "{s:?}"
                    );
                }
            }
        }
    }
}
