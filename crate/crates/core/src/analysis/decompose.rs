//! Recovery of an extended ordinal sum from a black-box uninorm.
//!
//! The unit interval is cut at the borders of the idempotent set. Every
//! idempotent-free gap and every idempotent band is classified by the shape
//! of the multi-function above it: strictly decreasing pieces below the
//! neutral element pair with the piece above it that their values fill,
//! flat pieces become one-sided summands sitting at their level. Each
//! summand carries the operator restricted to its block and rescaled to
//! the unit square, so the reconstruction is exact up to rounding.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extended_sum::{Choice, ExtendedOrdinalSumSpec, PointFamily};
use crate::operator::{grid, OpKind, Operator};
use crate::operators::CLASSIFY_GRID;
use crate::ordinal_sum::{OrdinalSumSpec, Summand};

use super::idempotents::{find_idempotents, IdempotentSet, IDEMPOTENT_TOL};
use super::sections::{section_crossing, Crossing};
use super::verify::verify_pointwise;
use super::SNAP_TOL;

pub const DECOMPOSE_GRID: usize = 201;
pub const DECOMPOSE_TOL: f64 = 1e-6;

/// Level differences of the multi-function at or below this are flat.
const FLAT_TOL: f64 = 1e-6;

/// What a recovered summand carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SummandKind {
    /// Two paired gaps with a strictly decreasing multi-function.
    Representable,
    /// Two paired idempotent bands with a strictly decreasing multi-function.
    SInternal,
    /// A gap below the neutral element with a flat multi-function.
    ArchimedeanTNorm,
    /// A gap above the neutral element with a flat multi-function.
    ArchimedeanTConorm,
    /// A one-sided idempotent band.
    Internal,
}

impl SummandKind {
    pub fn name(self) -> &'static str {
        match self {
            SummandKind::Representable => "representable",
            SummandKind::SInternal => "s-internal",
            SummandKind::ArchimedeanTNorm => "archimedean-tnorm",
            SummandKind::ArchimedeanTConorm => "archimedean-tconorm",
            SummandKind::Internal => "internal",
        }
    }
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the pieces of the unit interval were classified.
///
/// `lower_gaps` and `upper_gaps` are the idempotent-free open intervals
/// below and above the neutral element. The `k*` lists sort the lower
/// pieces and the `n*` lists the upper ones: `1` strictly decreasing gap,
/// `2` flat gap, `3` strictly decreasing idempotent band, `4` flat band.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClassificationSets {
    pub lower_gaps: Vec<(f64, f64)>,
    pub upper_gaps: Vec<(f64, f64)>,
    pub k1: Vec<(f64, f64)>,
    pub k2: Vec<(f64, f64)>,
    pub k3: Vec<(f64, f64)>,
    pub k4: Vec<(f64, f64)>,
    pub n1: Vec<(f64, f64)>,
    pub n2: Vec<(f64, f64)>,
    pub n3: Vec<(f64, f64)>,
    pub n4: Vec<(f64, f64)>,
    pub b_set: Vec<f64>,
    pub c_set: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub spec: ExtendedOrdinalSumSpec,
    /// One entry per summand of `spec.base()`.
    pub summand_kinds: Vec<SummandKind>,
    /// Largest `|U - V|` over the verification grid.
    pub residual: f64,
    pub witness: (f64, f64),
    pub classification: ClassificationSets,
}

impl DecompositionResult {
    pub fn summands(&self) -> &[Summand] {
        self.spec.base().summands()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Flat(f64),
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    gap: bool,
    shape: Shape,
}

/// Flat when the three probes agree, decreasing when they strictly fall.
fn probe_shape(op: &Operator, lo: f64, hi: f64) -> Result<Shape> {
    let ys: Vec<f64> = [0.25, 0.5, 0.75]
        .iter()
        .map(|t| section_crossing(op, lo + t * (hi - lo)).point())
        .collect();
    let spread = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ys.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread <= FLAT_TOL {
        Ok(Shape::Flat(ys[1]))
    } else if ys[0] > ys[1] && ys[1] > ys[2] {
        Ok(Shape::Decreasing)
    } else {
        Err(Error::NotMember(format!(
            "the multi-function over ({lo}, {hi}) is neither flat nor strictly decreasing"
        )))
    }
}

/// Splits an idempotent band into runs where the sampled multi-function is
/// flat or strictly decreasing.
fn band_pieces(op: &Operator, lo: f64, hi: f64, xs: &[f64], crossings: &[Crossing]) -> Result<Vec<Piece>> {
    let columns: Vec<(f64, f64)> = xs
        .iter()
        .zip(crossings)
        .filter(|(&x, _)| lo <= x && x <= hi)
        .map(|(&x, c)| (x, c.point()))
        .collect();
    if columns.len() < 3 {
        let shape = probe_shape(op, lo, hi)?;
        return Ok(vec![Piece { lo, hi, gap: false, shape }]);
    }
    let link = |p: (f64, f64), q: (f64, f64)| {
        if (q.1 - p.1).abs() <= FLAT_TOL {
            Shape::Flat(p.1)
        } else {
            Shape::Decreasing
        }
    };
    let mut pieces: Vec<Piece> = Vec::new();
    for w in columns.windows(2) {
        let shape = link(w[0], w[1]);
        let same = match (pieces.last().map(|p| p.shape), shape) {
            (Some(Shape::Flat(a)), Shape::Flat(b)) => (a - b).abs() <= FLAT_TOL,
            (Some(Shape::Decreasing), Shape::Decreasing) => true,
            _ => false,
        };
        if same {
            pieces.last_mut().expect("non-empty").hi = w[1].0;
        } else {
            pieces.push(Piece {
                lo: w[0].0,
                hi: w[1].0,
                gap: false,
                shape,
            });
        }
    }
    pieces.first_mut().expect("non-empty").lo = lo;
    pieces.last_mut().expect("non-empty").hi = hi;
    Ok(pieces)
}

/// Tiles `[lo, hi]` with gap pieces and band pieces.
fn pieces_between(
    op: &Operator,
    idem: &IdempotentSet,
    lo: f64,
    hi: f64,
    xs: &[f64],
    crossings: &[Crossing],
) -> Result<Vec<Piece>> {
    let mut pieces = Vec::new();
    let mut cursor = lo;
    for &(g0, g1) in &idem.gaps {
        if g1 <= lo || g0 >= hi {
            continue;
        }
        if g0 < lo || g1 > hi {
            return Err(Error::NotMember(format!(
                "the idempotent-free interval ({g0}, {g1}) contains the neutral element"
            )));
        }
        if g0 > cursor {
            pieces.extend(band_pieces(op, cursor, g0, xs, crossings)?);
        }
        pieces.push(Piece {
            lo: g0,
            hi: g1,
            gap: true,
            shape: probe_shape(op, g0, g1)?,
        });
        cursor = g1;
    }
    if cursor < hi {
        pieces.extend(band_pieces(op, cursor, hi, xs, crossings)?);
    }
    Ok(pieces)
}

fn snap(value: f64, candidates: &[f64], xs: &[f64]) -> f64 {
    let nearest = |set: &[f64]| {
        set.iter()
            .copied()
            .min_by(|a, b| (a - value).abs().total_cmp(&(b - value).abs()))
            .filter(|c| (c - value).abs() <= SNAP_TOL)
    };
    nearest(candidates).or_else(|| nearest(xs)).unwrap_or(value)
}

fn restrict_lower(op: &Operator, a: f64, b: f64) -> Operator {
    let u = op.clone();
    Operator::new(OpKind::TNorm, 1.0, format!("{} on [{a}, {b}]", op.label()), move |x, y| {
        if y >= 1.0 {
            return x;
        }
        let value = u.apply(a + (b - a) * x, a + (b - a) * y);
        ((value - a) / (b - a)).clamp(0.0, 1.0)
    })
    .with_numeric_inversion(op.uses_numeric_inversion())
}

fn restrict_upper(op: &Operator, c: f64, d: f64) -> Operator {
    let u = op.clone();
    Operator::new(OpKind::TConorm, 0.0, format!("{} on [{c}, {d}]", op.label()), move |x, y| {
        if x <= 0.0 {
            return y;
        }
        let value = u.apply(c + (d - c) * x, c + (d - c) * y);
        ((value - c) / (d - c)).clamp(0.0, 1.0)
    })
    .with_numeric_inversion(op.uses_numeric_inversion())
}

fn restrict_complete(op: &Operator, a: f64, b: f64, c: f64, d: f64) -> Operator {
    if a == 0.0 && d == 1.0 && b == c && b == op.neutral() {
        return op.clone();
    }
    let u = op.clone();
    let inner = (b - a) / ((b - a) + (d - c));
    let label = format!("{} on [{a}, {b}] x [{c}, {d}]", op.label());
    Operator::new(OpKind::Uninorm, inner, label, move |x, y| {
        if x == inner {
            return y;
        }
        if y == inner {
            return x;
        }
        let forward = |t: f64| {
            if t < inner {
                a + (b - a) * t / inner
            } else {
                d - (1.0 - t) * (d - c) / (1.0 - inner)
            }
        };
        let z = u.apply(forward(x), forward(y));
        if z < b {
            (inner * (z - a) / (b - a)).clamp(0.0, inner)
        } else if z > c {
            (1.0 - (d - z) * (1.0 - inner) / (d - c)).clamp(inner, 1.0)
        } else {
            inner
        }
    })
    .with_numeric_inversion(op.uses_numeric_inversion())
}

/// The admissible choice matching the row of `op` through the family's point.
fn read_choice(op: &Operator, family: &PointFamily, probes: &[f64]) -> Result<(f64, Choice)> {
    let x = family.point;
    family
        .admissible
        .iter()
        .copied()
        .find(|choice| {
            probes.iter().all(|&y| {
                let expected = if choice.contains(y) { x.min(y) } else { x.max(y) };
                (op.apply(x, y) - expected).abs() <= IDEMPOTENT_TOL
            })
        })
        .map(|choice| (x, choice))
        .ok_or_else(|| Error::InvalidChoice {
            point: x,
            detail: "the row through this point matches no admissible choice".into(),
        })
}

/// [`decompose_with_tol`] at the default residual tolerance `1e-6`.
pub fn decompose(op: &Operator, grid_n: usize) -> Result<DecompositionResult> {
    decompose_with_tol(op, grid_n, DECOMPOSE_TOL)
}

/// Recovers an extended ordinal sum reproducing `op` on a `grid_n` grid.
///
/// Fails with [`Error::DegenerateNeutral`] unless the neutral element is
/// interior, with [`Error::NotMember`] when the sampled structure is not
/// that of a uninorm with continuous underlying operations, and with
/// [`Error::Residual`] when the reconstruction misses `op` by more than
/// `tol` somewhere on the grid.
///
/// ```
/// use uninorm::analysis::{decompose, SummandKind};
/// use uninorm::operators::{probabilistic_sum, product_tnorm};
/// use uninorm::uninorms::make_u_min;
///
/// let u = make_u_min(&product_tnorm(), &probabilistic_sum(), 0.5)?;
/// let result = decompose(&u, 101)?;
/// assert_eq!(result.summand_kinds, vec![SummandKind::ArchimedeanTNorm, SummandKind::ArchimedeanTConorm]);
/// assert!(result.residual <= 1e-6);
/// # Ok::<(), uninorm::Error>(())
/// ```
pub fn decompose_with_tol(op: &Operator, grid_n: usize, tol: f64) -> Result<DecompositionResult> {
    let e = op.neutral();
    if !(e > 0.0 && e < 1.0) {
        return Err(Error::DegenerateNeutral { e });
    }
    let idem = find_idempotents(op, grid_n);
    let xs = grid(grid_n);
    let crossings: Vec<Crossing> = xs.par_iter().map(|&x| section_crossing(op, x)).collect();
    let lower = pieces_between(op, &idem, 0.0, e, &xs, &crossings)?;
    let upper = pieces_between(op, &idem, e, 1.0, &xs, &crossings)?;

    let mut candidates = vec![0.0, e, 1.0];
    for p in lower.iter().chain(&upper) {
        candidates.extend([p.lo, p.hi]);
    }

    let mut classification = ClassificationSets {
        lower_gaps: idem.lower_gaps(e),
        upper_gaps: idem.upper_gaps(e),
        ..Default::default()
    };
    for p in &lower {
        let list = match (p.gap, p.shape) {
            (true, Shape::Decreasing) => &mut classification.k1,
            (true, Shape::Flat(_)) => &mut classification.k2,
            (false, Shape::Decreasing) => &mut classification.k3,
            (false, Shape::Flat(_)) => &mut classification.k4,
        };
        list.push((p.lo, p.hi));
    }
    for p in &upper {
        let list = match (p.gap, p.shape) {
            (true, Shape::Decreasing) => &mut classification.n1,
            (true, Shape::Flat(_)) => &mut classification.n2,
            (false, Shape::Decreasing) => &mut classification.n3,
            (false, Shape::Flat(_)) => &mut classification.n4,
        };
        list.push((p.lo, p.hi));
    }

    let mut summands = Vec::new();
    let mut kinds = Vec::new();
    let mut paired = vec![false; upper.len()];
    for p in &lower {
        match p.shape {
            Shape::Decreasing => {
                let y = section_crossing(op, 0.5 * (p.lo + p.hi)).point();
                let j = upper
                    .iter()
                    .position(|q| q.lo < y && y < q.hi && q.shape == Shape::Decreasing && q.gap == p.gap)
                    .ok_or_else(|| {
                        Error::NotMember(format!(
                            "no matching piece above the neutral element for ({}, {})",
                            p.lo, p.hi
                        ))
                    })?;
                if paired[j] {
                    return Err(Error::NotMember(format!(
                        "the piece ({}, {}) is paired twice",
                        upper[j].lo, upper[j].hi
                    )));
                }
                paired[j] = true;
                let q = upper[j];
                summands.push(Summand::new(p.lo, p.hi, q.lo, q.hi, restrict_complete(op, p.lo, p.hi, q.lo, q.hi)));
                kinds.push(if p.gap {
                    SummandKind::Representable
                } else {
                    SummandKind::SInternal
                });
            }
            Shape::Flat(level) => {
                let level = snap(level, &candidates, &xs);
                if level < e {
                    return Err(Error::NotMember(format!(
                        "the multi-function over ({}, {}) sits at {level}, below the neutral element",
                        p.lo, p.hi
                    )));
                }
                summands.push(Summand::new(p.lo, p.hi, level, level, restrict_lower(op, p.lo, p.hi)));
                kinds.push(if p.gap {
                    SummandKind::ArchimedeanTNorm
                } else {
                    SummandKind::Internal
                });
            }
        }
    }
    for (j, q) in upper.iter().enumerate() {
        match q.shape {
            Shape::Decreasing if !paired[j] => {
                return Err(Error::NotMember(format!(
                    "the piece ({}, {}) has no partner below the neutral element",
                    q.lo, q.hi
                )));
            }
            Shape::Decreasing => {}
            Shape::Flat(level) => {
                let level = snap(level, &candidates, &xs);
                if level > e {
                    return Err(Error::NotMember(format!(
                        "the multi-function over ({}, {}) sits at {level}, above the neutral element",
                        q.lo, q.hi
                    )));
                }
                summands.push(Summand::new(level, level, q.lo, q.hi, restrict_upper(op, q.lo, q.hi)));
                kinds.push(if q.gap {
                    SummandKind::ArchimedeanTConorm
                } else {
                    SummandKind::Internal
                });
            }
        }
    }

    let base = OrdinalSumSpec::new(e, summands)
        .map_err(|err| Error::NotMember(format!("the recovered summands do not assemble: {err}")))?;
    classification.b_set = base.derived().b_set.clone();
    classification.c_set = base.derived().c_set.clone();

    let families = crate::extended_sum::compute_choice_families(&base, CLASSIFY_GRID)?;
    let mut probes = base.probe_points();
    probes.extend(xs.iter().copied());
    let g = families
        .g
        .iter()
        .map(|f| read_choice(op, f, &probes))
        .collect::<Result<Vec<_>>>()?;
    let h = families
        .h
        .iter()
        .map(|f| read_choice(op, f, &probes))
        .collect::<Result<Vec<_>>>()?;
    let spec = ExtendedOrdinalSumSpec::new(base, &g, &h)?;

    let report = verify_pointwise(op, &spec.to_operator(), grid_n, tol);
    if !report.passed() {
        return Err(Error::Residual {
            residual: report.max_diff,
            tol,
            x: report.witness.0,
            y: report.witness.1,
        });
    }
    Ok(DecompositionResult {
        spec,
        summand_kinds: kinds,
        residual: report.max_diff,
        witness: report.witness,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;
    use crate::operator::Annihilator;
    use crate::operators::{bounded_sum, probabilistic_sum, product_tnorm};
    use crate::uninorms::{make_representable, make_s_internal, make_u_max, BoundaryRule, InternalBoundary};

    #[test]
    fn representable_is_a_single_summand() {
        let u = make_representable(&Generator::logistic(0.5).unwrap(), Annihilator::Conjunctive).unwrap();
        let result = decompose(&u, 101).unwrap();
        assert_eq!(result.summand_kinds, vec![SummandKind::Representable]);
        let s = &result.summands()[0];
        assert_eq!((s.a, s.b, s.c, s.d), (0.0, 0.5, 0.5, 1.0));
        assert_eq!(result.residual, 0.0, "{:?} at {:?}", result.summands(), result.witness);
        assert_eq!(result.classification.k1, vec![(0.0, 0.5)]);
        assert_eq!(result.classification.n1, vec![(0.5, 1.0)]);
    }

    #[test]
    fn s_internal_is_a_single_band_summand() {
        let u = make_s_internal(&InternalBoundary::complement(BoundaryRule::TakeMin));
        let result = decompose(&u, 101).unwrap();
        assert_eq!(result.summand_kinds, vec![SummandKind::SInternal]);
        assert_eq!(result.residual, 0.0);
        assert!(result.classification.lower_gaps.is_empty());
    }

    #[test]
    fn u_max_splits_into_one_sided_summands() {
        let u = make_u_max(&product_tnorm(), &bounded_sum(), 0.4).unwrap();
        let result = decompose(&u, 101).unwrap();
        let bounds: Vec<(f64, f64, f64, f64)> = result.summands().iter().map(|s| (s.a, s.b, s.c, s.d)).collect();
        assert_eq!(bounds, vec![(0.0, 0.4, 0.4, 0.4), (0.0, 0.0, 0.4, 1.0)]);
        assert_eq!(
            result.summand_kinds,
            vec![SummandKind::ArchimedeanTNorm, SummandKind::ArchimedeanTConorm]
        );
        assert!(result.residual <= 1e-12, "{}", result.residual);
    }

    #[test]
    fn degenerate_neutral_elements_are_reported() {
        let err = decompose(&probabilistic_sum(), 51).unwrap_err();
        assert_eq!(err, Error::DegenerateNeutral { e: 0.0 });
    }

    #[test]
    fn operators_outside_the_class_are_rejected() {
        // Monotone, but its sections cross the neutral element in a rising way.
        let odd = Operator::new(OpKind::Uninorm, 0.5, "odd", |x, y| {
            if x == 0.5 {
                y
            } else if y == 0.5 {
                x
            } else {
                (x + y) / 2.0
            }
        });
        assert!(decompose(&odd, 51).is_err());
    }
}
