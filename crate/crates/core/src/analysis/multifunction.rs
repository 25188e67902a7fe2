//! The characterizing multi-function `r`, sampled as a staircase polyline.
//!
//! For each grid column the section crossing gives the points where `r`
//! meets that column. Consecutive columns are joined either directly or,
//! when the drop between them is too large for a continuous curve, by a
//! vertical step whose position is found by bisection.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operator::{grid, Operator};

use super::idempotents::IDEMPOTENT_TOL;
use super::sections::{section_crossing, Crossing};
use super::BISECTION_WIDTH;

/// Level differences at or below this are flat.
const FLAT_TOL: f64 = 1e-6;
/// Vertices closer than this are merged.
const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum SegmentKind {
    /// Sampled points `(x, r(x))` in increasing `x`.
    StrictlyDecreasing { curve: Vec<(f64, f64)> },
    Horizontal { level: f64 },
    Vertical { y_lo: f64, y_hi: f64 },
}

/// A maximal piece of the graph; vertical pieces have `x_lo == x_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub x_lo: f64,
    pub x_hi: f64,
    pub kind: SegmentKind,
}

impl Segment {
    /// The upper-left end.
    pub fn start(&self) -> (f64, f64) {
        match &self.kind {
            SegmentKind::StrictlyDecreasing { curve } => curve[0],
            SegmentKind::Horizontal { level } => (self.x_lo, *level),
            SegmentKind::Vertical { y_hi, .. } => (self.x_lo, *y_hi),
        }
    }

    /// The lower-right end.
    pub fn end(&self) -> (f64, f64) {
        match &self.kind {
            SegmentKind::StrictlyDecreasing { curve } => curve[curve.len() - 1],
            SegmentKind::Horizontal { level } => (self.x_hi, *level),
            SegmentKind::Vertical { y_lo, .. } => (self.x_hi, *y_lo),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SegmentKind::StrictlyDecreasing { .. } => "strictly-decreasing",
            SegmentKind::Horizontal { .. } => "horizontal",
            SegmentKind::Vertical { .. } => "vertical",
        }
    }
}

/// The graph of `r` as an ordered chain of maximal segments.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiFunctionGraph {
    pub segments: Vec<Segment>,
    /// Vertices of the underlying polyline from `(0,1)` to `(1,0)`.
    pub vertices: Vec<(f64, f64)>,
    pub grid_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Flat,
    Down,
    Drop,
}

fn piece_kind(p: (f64, f64), q: (f64, f64)) -> Piece {
    if (q.0 - p.0).abs() <= MERGE_TOL {
        Piece::Drop
    } else if (q.1 - p.1).abs() <= FLAT_TOL {
        Piece::Flat
    } else {
        Piece::Down
    }
}

/// Finds the position of a vertical step of `r` between two columns, or
/// `None` when the drop is spread out (a steep but continuous curve).
fn locate_step(op: &Operator, x0: f64, x1: f64, top: f64, bottom: f64) -> Option<(f64, Crossing, Crossing)> {
    let level = 0.5 * (top + bottom);
    let (mut lo, mut hi) = (x0, x1);
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if section_crossing(op, mid).point() >= level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let left = section_crossing(op, lo);
    let right = section_crossing(op, hi);
    if left.below - right.above >= 0.5 * (top - bottom) {
        Some((lo, left, right))
    } else {
        None
    }
}

impl MultiFunctionGraph {
    fn from_vertices(vertices: Vec<(f64, f64)>, grid_n: usize) -> Self {
        let mut segments: Vec<Segment> = Vec::new();
        for w in vertices.windows(2) {
            let (p, q) = (w[0], w[1]);
            let piece = piece_kind(p, q);
            if let Some(last) = segments.last_mut() {
                let extended = match (&mut last.kind, piece) {
                    (SegmentKind::Horizontal { level }, Piece::Flat) if (q.1 - *level).abs() <= FLAT_TOL => {
                        last.x_hi = q.0;
                        true
                    }
                    (SegmentKind::Vertical { y_lo, .. }, Piece::Drop) if (q.0 - last.x_lo).abs() <= MERGE_TOL => {
                        *y_lo = q.1;
                        true
                    }
                    (SegmentKind::StrictlyDecreasing { curve }, Piece::Down) => {
                        curve.push(q);
                        last.x_hi = q.0;
                        true
                    }
                    _ => false,
                };
                if extended {
                    continue;
                }
            }
            segments.push(match piece {
                Piece::Flat => Segment {
                    x_lo: p.0,
                    x_hi: q.0,
                    kind: SegmentKind::Horizontal { level: p.1 },
                },
                Piece::Drop => Segment {
                    x_lo: p.0,
                    x_hi: p.0,
                    kind: SegmentKind::Vertical { y_lo: q.1, y_hi: p.1 },
                },
                Piece::Down => Segment {
                    x_lo: p.0,
                    x_hi: q.0,
                    kind: SegmentKind::StrictlyDecreasing { curve: vec![p, q] },
                },
            });
        }
        Self {
            segments,
            vertices,
            grid_n,
        }
    }

    fn step(&self) -> f64 {
        1.0 / (self.grid_n - 1) as f64
    }

    /// Euclidean distance from `p` to the polyline.
    pub fn distance_to(&self, p: (f64, f64)) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| point_segment_distance(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// The points of the graph above `x` as `[lo, hi]`.
    pub fn values_at(&self, x: f64) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for w in self.vertices.windows(2) {
            let (p, q) = (w[0], w[1]);
            if x < p.0.min(q.0) - MERGE_TOL || x > p.0.max(q.0) + MERGE_TOL {
                continue;
            }
            let (y0, y1) = if (q.0 - p.0).abs() <= MERGE_TOL {
                (p.1.min(q.1), p.1.max(q.1))
            } else {
                let t = ((x - p.0) / (q.0 - p.0)).clamp(0.0, 1.0);
                let y = p.1 + t * (q.1 - p.1);
                (y, y)
            };
            lo = lo.min(y0);
            hi = hi.max(y1);
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Along the chain `x` never decreases and `y` never increases.
    pub fn check_non_increasing(&self) -> Result<()> {
        for w in self.vertices.windows(2) {
            let (p, q) = (w[0], w[1]);
            if q.0 < p.0 - MERGE_TOL || q.1 > p.1 + FLAT_TOL {
                return Err(Error::Invariant {
                    x: q.0,
                    y: q.1,
                    detail: format!("the graph rises from ({}, {}) to ({}, {})", p.0, p.1, q.0, q.1),
                });
            }
        }
        Ok(())
    }

    /// Consecutive maximal segments meet within one grid step.
    pub fn check_connected(&self) -> Result<()> {
        let h = self.step();
        for w in self.segments.windows(2) {
            let (p, q) = (w[0].end(), w[1].start());
            if (p.0 - q.0).abs().max((p.1 - q.1).abs()) > h + MERGE_TOL {
                return Err(Error::Invariant {
                    x: p.0,
                    y: p.1,
                    detail: format!("segment ends at ({}, {}) but the next starts at ({}, {})", p.0, p.1, q.0, q.1),
                });
            }
        }
        Ok(())
    }

    /// Every vertex mirrored across the diagonal lies within two grid steps
    /// of the graph.
    pub fn check_symmetric(&self) -> Result<()> {
        let tol = 2.0 * self.step();
        for &(x, y) in &self.vertices {
            let distance = self.distance_to((y, x));
            if distance > tol {
                return Err(Error::Invariant {
                    x,
                    y,
                    detail: format!("the mirror point ({y}, {x}) is {distance:e} away from the graph"),
                });
            }
        }
        Ok(())
    }

    /// Both coordinates of every segment endpoint are idempotent.
    pub fn check_idempotent_borders(&self, op: &Operator) -> Result<()> {
        for s in &self.segments {
            for (x, y) in [s.start(), s.end()] {
                for p in [x, y] {
                    let defect = (op.apply(p, p) - p).abs();
                    if defect > IDEMPOTENT_TOL {
                        return Err(Error::Invariant {
                            x,
                            y,
                            detail: format!(
                                "{} segment border coordinate {p} is not idempotent (defect {defect:e})",
                                s.kind_name()
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// All structural checks: ordering, connectedness, symmetry and
    /// idempotent borders.
    pub fn validate(&self, op: &Operator) -> Result<()> {
        self.check_non_increasing()?;
        self.check_connected()?;
        self.check_symmetric()?;
        self.check_idempotent_borders(op)
    }
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()
}

fn push_vertex(vertices: &mut Vec<(f64, f64)>, p: (f64, f64)) {
    if let Some(&last) = vertices.last() {
        if (last.0 - p.0).abs() <= MERGE_TOL && (last.1 - p.1).abs() <= MERGE_TOL {
            return;
        }
    }
    vertices.push(p);
}

/// Samples `r` on `grid_n` columns and assembles its maximal segments.
///
/// The result is not validated; call [`MultiFunctionGraph::validate`] to
/// check the structural invariants.
pub fn extract_multifunction(op: &Operator, grid_n: usize) -> MultiFunctionGraph {
    let xs = grid(grid_n);
    let h = 1.0 / (grid_n - 1) as f64;
    let crossings: Vec<Crossing> = xs.par_iter().map(|&x| section_crossing(op, x)).collect();
    let mut vertices = vec![(0.0, 1.0)];
    for i in 0..grid_n {
        let c = crossings[i];
        push_vertex(&mut vertices, (xs[i], c.above));
        push_vertex(&mut vertices, (xs[i], c.below));
        if i + 1 == grid_n {
            break;
        }
        let next = crossings[i + 1];
        if c.below - next.above > 2.0 * h {
            if let Some((x0, left, right)) = locate_step(op, xs[i], xs[i + 1], c.below, next.above) {
                let x0 = if x0 - xs[i] <= MERGE_TOL {
                    xs[i]
                } else if xs[i + 1] - x0 <= MERGE_TOL {
                    xs[i + 1]
                } else {
                    x0
                };
                push_vertex(&mut vertices, (x0, left.below));
                push_vertex(&mut vertices, (x0, right.above));
            }
        }
    }
    let last = vertices.len() - 1;
    if vertices[last].1 <= MERGE_TOL {
        vertices[last].1 = 0.0;
    }
    push_vertex(&mut vertices, (1.0, 0.0));
    // Flatten the leading corner so the first vertex is exact.
    if vertices.len() > 1 && vertices[1].0 == 0.0 && (vertices[1].1 - 1.0).abs() <= MERGE_TOL {
        vertices.remove(1);
    }
    MultiFunctionGraph::from_vertices(vertices, grid_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;
    use crate::operator::Annihilator;
    use crate::operators::{min_tnorm, probabilistic_sum, product_tnorm};
    use crate::uninorms::{make_representable, make_s_internal, make_u_min, BoundaryRule, InternalBoundary};

    #[test]
    fn representable_graph_is_one_decreasing_segment() {
        let u = make_representable(&Generator::logistic(0.5).unwrap(), Annihilator::Conjunctive).unwrap();
        let graph = extract_multifunction(&u, 101);
        assert_eq!(graph.segments.len(), 1, "{:?}", graph.segments);
        let s = &graph.segments[0];
        assert_eq!(s.kind_name(), "strictly-decreasing");
        assert_eq!(s.start(), (0.0, 1.0));
        assert_eq!(s.end(), (1.0, 0.0));
        graph.validate(&u).unwrap();
        let (lo, hi) = graph.values_at(0.3).unwrap();
        assert!((lo - 0.7).abs() < 1e-9 && (hi - 0.7).abs() < 1e-9);
    }

    #[test]
    fn u_min_graph_is_a_staircase() {
        let u = make_u_min(&product_tnorm(), &probabilistic_sum(), 0.5).unwrap();
        let graph = extract_multifunction(&u, 101);
        let kinds: Vec<&str> = graph.segments.iter().map(Segment::kind_name).collect();
        assert_eq!(kinds, vec!["horizontal", "vertical", "horizontal", "vertical"]);
        let close = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9;
        assert_eq!(graph.segments[0].start(), (0.0, 1.0));
        assert!(close(graph.segments[1].start(), (0.5, 1.0)));
        assert!(close(graph.segments[1].end(), (0.5, 0.5)));
        assert!(close(graph.segments[3].start(), (1.0, 0.5)));
        assert_eq!(graph.segments[3].end(), (1.0, 0.0));
        graph.validate(&u).unwrap();
    }

    #[test]
    fn min_degenerates_to_the_border_lines() {
        let graph = extract_multifunction(&min_tnorm(), 51);
        let kinds: Vec<&str> = graph.segments.iter().map(Segment::kind_name).collect();
        assert_eq!(kinds, vec!["horizontal", "vertical"]);
        assert_eq!(graph.segments[0].end(), (1.0, 1.0));
    }

    #[test]
    fn s_internal_graph_is_its_switching_curve() {
        let u = make_s_internal(&InternalBoundary::complement(BoundaryRule::TakeMin));
        let graph = extract_multifunction(&u, 101);
        assert_eq!(graph.segments.len(), 1);
        assert!((graph.values_at(0.2).unwrap().0 - 0.8).abs() < 1e-9);
        graph.validate(&u).unwrap();
    }

    #[test]
    fn asymmetric_polylines_fail_validation() {
        let graph = MultiFunctionGraph::from_vertices(vec![(0.0, 1.0), (0.0, 0.9), (0.5, 0.9), (0.5, 0.0), (1.0, 0.0)], 11);
        assert!(graph.check_non_increasing().is_ok());
        assert!(graph.check_symmetric().is_err());
        let rising = MultiFunctionGraph::from_vertices(vec![(0.0, 1.0), (0.5, 0.2), (0.6, 0.6), (1.0, 0.0)], 11);
        assert!(rising.check_non_increasing().is_err());
    }
}
