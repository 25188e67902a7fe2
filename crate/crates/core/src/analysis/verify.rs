use rayon::prelude::*;

use crate::operator::{grid, Operator};

/// Largest pointwise difference between two handles and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseReport {
    pub max_diff: f64,
    pub witness: (f64, f64),
    pub left: f64,
    pub right: f64,
    pub tol: f64,
}

impl PointwiseReport {
    pub fn passed(&self) -> bool {
        self.max_diff <= self.tol
    }
}

/// Compares two handles on a `grid_n x grid_n` grid.
///
/// ```
/// use uninorm::analysis::verify_pointwise;
/// use uninorm::operators::{min_tnorm, product_tnorm};
///
/// let same = verify_pointwise(&min_tnorm(), &min_tnorm(), 11, 0.0);
/// assert_eq!(same.max_diff, 0.0);
/// let apart = verify_pointwise(&min_tnorm(), &product_tnorm(), 11, 1e-9);
/// assert!((apart.max_diff - 0.25).abs() < 1e-12);
/// assert_eq!(apart.witness, (0.5, 0.5));
/// ```
pub fn verify_pointwise(a: &Operator, b: &Operator, grid_n: usize, tol: f64) -> PointwiseReport {
    let points = grid(grid_n);
    let empty = PointwiseReport {
        max_diff: 0.0,
        witness: (0.0, 0.0),
        left: a.apply(0.0, 0.0),
        right: b.apply(0.0, 0.0),
        tol,
    };
    points
        .par_iter()
        .map(|&x| {
            let mut best = empty;
            for &y in &points {
                let (left, right) = (a.apply(x, y), b.apply(x, y));
                let diff = (left - right).abs();
                if diff > best.max_diff || diff.is_nan() {
                    best = PointwiseReport {
                        max_diff: if diff.is_nan() { f64::INFINITY } else { diff },
                        witness: (x, y),
                        left,
                        right,
                        tol,
                    };
                }
            }
            best
        })
        .reduce(|| empty, |p, q| if q.max_diff > p.max_diff { q } else { p })
}
