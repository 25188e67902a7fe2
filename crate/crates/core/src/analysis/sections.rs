//! Sections `z -> U(x, z)` and where they pass the neutral element.

use crate::error::{check_unit, Error, Result};
use crate::operator::{grid, Operator};

use super::BISECTION_WIDTH;

/// Width of the bracket across which a jump is measured.
pub const JUMP_BRACKET: f64 = 1e-9;

/// Smallest value change across [`JUMP_BRACKET`] counted as a jump.
pub const JUMP_THRESHOLD: f64 = 1e-6;

const SCAN_POINTS: usize = 201;
const REFINE_STEPS: usize = 34;

/// Where a section leaves the lower half: `below = sup{z : U(x,z) < e}` and
/// `above = inf{z : U(x,z) > e}`, each resolved to [`BISECTION_WIDTH`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub below: f64,
    pub above: f64,
}

impl Crossing {
    /// A single representative location; `below` once the bracket has
    /// collapsed, since bisection lands exactly on dyadic breakpoints.
    pub fn point(&self) -> f64 {
        if self.width() <= 2.0 * BISECTION_WIDTH {
            self.below
        } else {
            0.5 * (self.below + self.above)
        }
    }

    pub fn width(&self) -> f64 {
        (self.above - self.below).max(0.0)
    }
}

/// Largest `z` with `pred(z)` for a predicate true on a prefix of `[0,1]`.
fn last_true(pred: impl Fn(f64) -> bool) -> f64 {
    if !pred(0.0) {
        return 0.0;
    }
    if pred(1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Locates where the section at `x` passes the neutral element.
pub fn section_crossing(op: &Operator, x: f64) -> Crossing {
    let e = op.neutral();
    let below = last_true(|z| op.apply(x, z) < e);
    let above = if op.apply(x, 0.0) > e {
        0.0
    } else if op.apply(x, 1.0) <= e {
        1.0
    } else {
        1.0 - last_true(|t| op.apply(x, 1.0 - t) > e)
    };
    Crossing {
        below: below.min(above),
        above: above.max(below),
    }
}

fn increase(op: &Operator, x: f64, lo: f64, hi: f64) -> f64 {
    op.apply(x, hi) - op.apply(x, lo)
}

/// Narrows a cell to the sub-bracket carrying the larger increase.
fn refine_jump(op: &Operator, x: f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    for _ in 0..REFINE_STEPS {
        if hi - lo <= JUMP_BRACKET {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if increase(op, x, lo, mid) >= increase(op, x, mid, hi) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// The jump location of the monotone section at `x`, if it has one.
///
/// The jump, when present, sits where the section passes the neutral
/// element. The rest of the section is scanned as well; a second jump means
/// the operator lies outside the class this analysis assumes and is
/// reported as [`Error::MultipleJumps`].
///
/// ```
/// use uninorm::analysis::section_discontinuity;
/// use uninorm::generator::Generator;
/// use uninorm::operator::Annihilator;
/// use uninorm::uninorms::make_representable;
///
/// let u = make_representable(&Generator::logistic(0.5)?, Annihilator::Conjunctive)?;
/// assert_eq!(section_discontinuity(&u, 0.3)?, None);
/// # Ok::<(), uninorm::Error>(())
/// ```
pub fn section_discontinuity(op: &Operator, x: f64) -> Result<Option<f64>> {
    check_unit(x)?;
    let crossing = section_crossing(op, x);
    let lo = (crossing.below - 0.5 * JUMP_BRACKET).max(0.0);
    let hi = (crossing.above + 0.5 * JUMP_BRACKET).min(1.0);
    let mut locations = Vec::new();
    if increase(op, x, lo, hi) > JUMP_THRESHOLD {
        locations.push(crossing.point());
    }
    let zs = grid(SCAN_POINTS);
    for w in zs.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        if z1 >= lo && z0 <= hi {
            continue;
        }
        if increase(op, x, z0, z1) <= JUMP_THRESHOLD {
            continue;
        }
        let (a, b) = refine_jump(op, x, z0, z1);
        if increase(op, x, a, b) > JUMP_THRESHOLD {
            let at = 0.5 * (a + b);
            if locations.iter().all(|&p: &f64| (p - at).abs() > 2.0 * JUMP_BRACKET) {
                locations.push(at);
            }
        }
    }
    match locations.len() {
        0 => Ok(None),
        1 => Ok(Some(locations[0])),
        _ => {
            locations.sort_by(f64::total_cmp);
            Err(Error::MultipleJumps { x, locations })
        }
    }
}
