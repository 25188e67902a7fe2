//! The closed set of idempotent points and its open gaps.

use crate::operator::{grid, Operator};

use super::{BISECTION_WIDTH, SNAP_TOL};

/// `|U(p,p) - p|` at or below this counts as idempotent.
pub const IDEMPOTENT_TOL: f64 = 1e-9;

pub fn is_idempotent(op: &Operator, p: f64) -> bool {
    (op.apply(p, p) - p).abs() <= IDEMPOTENT_TOL
}

/// Maximal closed intervals of idempotent points (possibly single points)
/// and the open gaps between them.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentSet {
    pub intervals: Vec<(f64, f64)>,
    pub gaps: Vec<(f64, f64)>,
}

impl IdempotentSet {
    pub fn contains(&self, p: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= p && p <= hi)
    }

    /// The gap containing `p`, if any.
    pub fn gap_containing(&self, p: f64) -> Option<(f64, f64)> {
        self.gaps.iter().copied().find(|&(lo, hi)| lo < p && p < hi)
    }

    /// Gaps inside `[0, e]`.
    pub fn lower_gaps(&self, e: f64) -> Vec<(f64, f64)> {
        self.gaps.iter().copied().filter(|&(_, hi)| hi <= e).collect()
    }

    /// Gaps inside `[e, 1]`.
    pub fn upper_gaps(&self, e: f64) -> Vec<(f64, f64)> {
        self.gaps.iter().copied().filter(|&(lo, _)| lo >= e).collect()
    }

    /// Endpoints of all intervals.
    pub fn borders(&self) -> Vec<f64> {
        let mut points: Vec<f64> = self.intervals.iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
        points.dedup();
        points
    }
}

/// Boundary between an idempotent point `inside` and a non-idempotent
/// point `outside`, returned on the idempotent side.
fn refine_border(op: &Operator, inside: f64, outside: f64) -> f64 {
    let (mut good, mut bad) = (inside, outside);
    while (bad - good).abs() > BISECTION_WIDTH {
        let mid = 0.5 * (good + bad);
        if is_idempotent(op, mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    if (good - inside).abs() <= SNAP_TOL {
        inside
    } else {
        good
    }
}

/// Samples `U(p,p)` on a grid (plus the neutral element) and refines each
/// border of the idempotent set by bisection. Borders within `1e-6` of a
/// sampled idempotent are identified with it.
///
/// ```
/// use uninorm::analysis::find_idempotents;
/// use uninorm::operators::min_tnorm;
///
/// let set = find_idempotents(&min_tnorm(), 101);
/// assert_eq!(set.intervals, vec![(0.0, 1.0)]);
/// assert!(set.gaps.is_empty());
/// ```
pub fn find_idempotents(op: &Operator, grid_n: usize) -> IdempotentSet {
    let mut points = grid(grid_n);
    let e = op.neutral();
    if !points.contains(&e) {
        points.push(e);
        points.sort_by(f64::total_cmp);
    }
    let flags: Vec<bool> = points.iter().map(|&p| is_idempotent(op, p)).collect();
    let mut intervals = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if !flags[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < points.len() && flags[i + 1] {
            i += 1;
        }
        let lo = if start > 0 {
            refine_border(op, points[start], points[start - 1])
        } else {
            points[start]
        };
        let hi = if i + 1 < points.len() {
            refine_border(op, points[i], points[i + 1])
        } else {
            points[i]
        };
        if lo <= e && e <= hi && hi - lo <= SNAP_TOL {
            intervals.push((e, e));
        } else {
            intervals.push((lo, hi));
        }
        i += 1;
    }
    let mut gaps = Vec::new();
    let mut reach = 0.0;
    for &(lo, hi) in &intervals {
        if lo > reach {
            gaps.push((reach, lo));
        }
        reach = hi;
    }
    if reach < 1.0 {
        gaps.push((reach, 1.0));
    }
    IdempotentSet { intervals, gaps }
}
