//! Uninorm constructions: representable, `U_min`/`U_max`, s-internal,
//! underlying operations and the two border variants.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_unit, construction, Error, Result};
use crate::generator::{Generator, GeneratorKind};
use crate::operator::{grid, Annihilator, OpKind, Operator};
use crate::operators::require_kind;

/// `f^{-1}(f(x) + f(y))`, with `U(0,1)` fixed by `policy`.
pub fn make_representable(gen: &Generator, policy: Annihilator) -> Result<Operator> {
    if gen.kind() != GeneratorKind::Bipolar {
        return Err(construction(
            "representable generator",
            format!("expected a bipolar generator, found {} ({})", gen.kind(), gen.name()),
        ));
    }
    let (at_zero, at_one) = gen.endpoint_values();
    if at_zero != f64::NEG_INFINITY || at_one != f64::INFINITY {
        return Err(construction(
            "representable generator",
            format!("endpoint values ({at_zero}, {at_one}) are not (-inf, +inf)"),
        ));
    }
    let neutral = gen.inverse(0.0);
    let corner = policy.value();
    let g = gen.clone();
    let label = format!(
        "representable[{}, {}]",
        gen.name(),
        match policy {
            Annihilator::Conjunctive => "conjunctive",
            Annihilator::Disjunctive => "disjunctive",
        }
    );
    Ok(Operator::new(OpKind::Uninorm, neutral, label, move |x, y| {
        if (x == 0.0 && y == 1.0) || (x == 1.0 && y == 0.0) {
            corner
        } else if x == neutral {
            y
        } else if y == neutral {
            x
        } else {
            g.inverse(g.eval(x) + g.eval(y))
        }
    })
    .with_numeric_inversion(!gen.is_closed_form()))
}

fn check_underlying_pair(tnorm: &Operator, tconorm: &Operator, e: f64) -> Result<()> {
    require_kind(tnorm, OpKind::TNorm)?;
    require_kind(tconorm, OpKind::TConorm)?;
    check_unit(e)?;
    Ok(())
}

/// Rescaled `T` on `[0,e]^2`, rescaled `C` on `[e,1]^2`, `min` elsewhere.
pub fn make_u_min(tnorm: &Operator, tconorm: &Operator, e: f64) -> Result<Operator> {
    check_underlying_pair(tnorm, tconorm, e)?;
    Ok(cross_band(tnorm, tconorm, e, false))
}

/// Rescaled `T` on `[0,e]^2`, rescaled `C` on `[e,1]^2`, `max` elsewhere.
pub fn make_u_max(tnorm: &Operator, tconorm: &Operator, e: f64) -> Result<Operator> {
    check_underlying_pair(tnorm, tconorm, e)?;
    Ok(cross_band(tnorm, tconorm, e, true))
}

fn cross_band(tnorm: &Operator, tconorm: &Operator, e: f64, take_max: bool) -> Operator {
    let t = tnorm.clone();
    let c = tconorm.clone();
    let numeric = t.uses_numeric_inversion() || c.uses_numeric_inversion();
    let label = format!(
        "{}({}, {}, {e})",
        if take_max { "u_max" } else { "u_min" },
        t.label(),
        c.label()
    );
    Operator::new(OpKind::Uninorm, e, label, move |x, y| {
        if x == e {
            y
        } else if y == e {
            x
        } else if y <= e {
            (e * t.apply(x / e, y / e)).clamp(0.0, e)
        } else if x >= e {
            let w = 1.0 - e;
            (e + w * c.apply((x - e) / w, (y - e) / w)).clamp(e, 1.0)
        } else if take_max {
            y
        } else {
            x
        }
    })
    .with_numeric_inversion(numeric)
}

/// Which value an s-internal uninorm takes on its switching curve.
#[derive(Clone)]
pub enum BoundaryRule {
    TakeMin,
    TakeMax,
    /// Called with the ordered pair `(x, y)`, `x <= y`; `true` selects `min`.
    Custom(Arc<dyn Fn(f64, f64) -> bool + Send + Sync>),
}

impl fmt::Debug for BoundaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryRule::TakeMin => f.write_str("TakeMin"),
            BoundaryRule::TakeMax => f.write_str("TakeMax"),
            BoundaryRule::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// Points within this distance of the switching curve count as on it.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A strictly decreasing involutive switching curve plus its on-curve rule.
#[derive(Clone)]
pub struct InternalBoundary {
    curve: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    rule: BoundaryRule,
    name: Arc<str>,
}

impl InternalBoundary {
    /// Validates that `curve` maps `[0,1]` onto itself, strictly decreasing
    /// and involutive on samples.
    pub fn new<F>(name: impl Into<String>, curve: F, rule: BoundaryRule) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name: String = name.into();
        let samples = grid(257);
        let mut prev = f64::INFINITY;
        for &x in &samples {
            let v = curve(x);
            if !(0.0..=1.0).contains(&v) || v >= prev {
                return Err(construction(
                    "switching curve",
                    format!("{name} is not strictly decreasing into [0,1] near x = {x}"),
                ));
            }
            if (curve(v) - x).abs() > 1e-9 {
                return Err(construction(
                    "switching curve",
                    format!("{name} is not symmetric: v(v({x})) = {}", curve(v)),
                ));
            }
            prev = v;
        }
        Ok(Self {
            curve: Arc::new(curve),
            rule,
            name: Arc::from(name),
        })
    }

    /// `v(x) = 1 - x`.
    pub fn complement(rule: BoundaryRule) -> Self {
        Self::new("complement", |x: f64| 1.0 - x, rule).expect("complement curve is valid")
    }

    /// `v(x) = (1 - x^p)^{1/p}`.
    pub fn power(p: f64, rule: BoundaryRule) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(construction("switching curve", format!("power {p} must be positive")));
        }
        Self::new(
            format!("power({p})"),
            move |x: f64| (1.0 - x.powf(p)).max(0.0).powf(1.0 / p),
            rule,
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.curve)(x)
    }

    pub fn rule(&self) -> &BoundaryRule {
        &self.rule
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The fixed point of the curve, by bisection.
    pub fn fixed_point(&self) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..200 {
            if hi - lo <= 1e-15 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let v = self.eval(mid);
            if v == mid {
                return mid;
            }
            if v > mid {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

impl fmt::Debug for InternalBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InternalBoundary")
            .field("name", &self.name)
            .field("rule", &self.rule)
            .finish()
    }
}

/// `min` below the switching curve, `max` above it, the rule on it.
pub fn make_s_internal(boundary: &InternalBoundary) -> Operator {
    let b = boundary.clone();
    let e = boundary.fixed_point();
    Operator::new(
        OpKind::Uninorm,
        e,
        format!("s_internal[{}, {:?}]", boundary.name(), boundary.rule()),
        move |x, y| {
            if x == e {
                return y;
            }
            if y == e {
                return x;
            }
            let v = b.eval(x);
            if y < v - BOUNDARY_TOL {
                x
            } else if y > v + BOUNDARY_TOL {
                y
            } else {
                let take_min = match &b.rule {
                    BoundaryRule::TakeMin => true,
                    BoundaryRule::TakeMax => false,
                    BoundaryRule::Custom(choose) => choose(x, y),
                };
                if take_min {
                    x
                } else {
                    y
                }
            }
        },
    )
}

/// `T_U(x,y) = U(e x, e y) / e`.
pub fn underlying_tnorm(u: &Operator) -> Result<Operator> {
    let e = u.neutral();
    if e <= 0.0 {
        return Err(Error::DegenerateNeutral { e });
    }
    let inner = u.clone();
    Ok(Operator::new(OpKind::TNorm, 1.0, format!("T[{}]", u.label()), move |x, y| {
        (inner.apply(e * x, e * y) / e).clamp(0.0, 1.0)
    })
    .with_numeric_inversion(u.uses_numeric_inversion()))
}

/// `C_U(x,y) = (U(e + (1-e) x, e + (1-e) y) - e) / (1 - e)`.
pub fn underlying_tconorm(u: &Operator) -> Result<Operator> {
    let e = u.neutral();
    if e >= 1.0 {
        return Err(Error::DegenerateNeutral { e });
    }
    let inner = u.clone();
    let w = 1.0 - e;
    Ok(Operator::new(OpKind::TConorm, 0.0, format!("C[{}]", u.label()), move |x, y| {
        ((inner.apply(e + w * x, e + w * y) - e) / w).clamp(0.0, 1.0)
    })
    .with_numeric_inversion(u.uses_numeric_inversion()))
}

/// Both underlying operations of a proper uninorm.
pub fn underlying_ops(u: &Operator) -> Result<(Operator, Operator)> {
    Ok((underlying_tnorm(u)?, underlying_tconorm(u)?))
}

/// Reads `U(1,0)`.
pub fn classify_conjunctive(u: &Operator) -> Result<Annihilator> {
    let value = u.apply(1.0, 0.0);
    if value.abs() <= 1e-9 {
        Ok(Annihilator::Conjunctive)
    } else if (value - 1.0).abs() <= 1e-9 {
        Ok(Annihilator::Disjunctive)
    } else {
        Err(Error::Inconsistent { value })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Valid,
    /// Associativity fails; `witness` is a triple `(x, y, z)` with
    /// `V(V(x,y),z) != V(x,V(y,z))`.
    Invalid {
        witness: (f64, f64, f64),
        reason: String,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// A border-modified operator together with its validity verdict.
#[derive(Debug, Clone)]
pub struct BorderVariant {
    pub op: Operator,
    pub verdict: Verdict,
}

/// Default sampling resolution for the border-variant verdict.
pub const BORDER_GRID: usize = 101;

const ZERO_ONE_TOL: f64 = 1e-12;
const STRUCTURE_TOL: f64 = 1e-9;

struct Extremes {
    zeros: Vec<(f64, f64)>,
    ones: Vec<(f64, f64)>,
}

fn interior_extremes(u: &Operator, points: &[f64]) -> Extremes {
    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i..] {
            let value = u.apply(x, y);
            if value <= ZERO_ONE_TOL {
                zeros.push((x, y));
            } else if value >= 1.0 - ZERO_ONE_TOL {
                ones.push((x, y));
            }
        }
    }
    Extremes { zeros, ones }
}

/// `1` on the top border, `0` on the rest of the bottom border, `U` elsewhere.
pub fn border_variant_star(u: &Operator, grid_n: usize) -> BorderVariant {
    let inner = u.clone();
    let op = Operator::new(OpKind::Uninorm, u.neutral(), format!("star({})", u.label()), move |x, y| {
        if y == 1.0 {
            1.0
        } else if x == 0.0 {
            0.0
        } else {
            inner.apply(x, y)
        }
    })
    .with_numeric_inversion(u.uses_numeric_inversion());
    let verdict = star_verdict(u, &op, grid_n);
    BorderVariant { op, verdict }
}

/// `0` on the bottom border, `1` on the rest of the top border, `U` elsewhere.
pub fn border_variant_substar(u: &Operator, grid_n: usize) -> BorderVariant {
    let inner = u.clone();
    let op = Operator::new(
        OpKind::Uninorm,
        u.neutral(),
        format!("substar({})", u.label()),
        move |x, y| {
            if x == 0.0 {
                0.0
            } else if y == 1.0 {
                1.0
            } else {
                inner.apply(x, y)
            }
        },
    )
    .with_numeric_inversion(u.uses_numeric_inversion());
    let verdict = substar_verdict(u, &op, grid_n);
    BorderVariant { op, verdict }
}

fn interior_points(grid_n: usize) -> Vec<f64> {
    let g = grid(grid_n.max(3));
    g[1..g.len() - 1].to_vec()
}

fn star_verdict(u: &Operator, star: &Operator, grid_n: usize) -> Verdict {
    let points = interior_points(grid_n);
    let extremes = interior_extremes(u, &points);
    if let Some(&(x1, x2)) = extremes.ones.first() {
        return Verdict::Invalid {
            witness: (x1, x2, 0.0),
            reason: format!("U({x1}, {x2}) = 1 inside the open square"),
        };
    }
    if extremes.zeros.is_empty() {
        return Verdict::Valid;
    }
    let e = u.neutral();
    let reach = extremes
        .zeros
        .iter()
        .map(|&(x, y)| x.max(y))
        .fold(0.0, f64::max);
    let f = smallest_idempotent_at_least(u, &points, reach);
    for &x in points.iter().filter(|&&x| x < f) {
        for &y in points.iter().filter(|&&y| y >= e) {
            if (u.apply(x, y) - x).abs() > STRUCTURE_TOL {
                let partners: Vec<f64> = extremes
                    .zeros
                    .iter()
                    .filter_map(|&(a, b)| {
                        if a == x {
                            Some(b)
                        } else if b == x {
                            Some(a)
                        } else {
                            None
                        }
                    })
                    .collect();
                let witness = worst_triple(star, x, y, &partners);
                return Verdict::Invalid {
                    witness,
                    reason: format!(
                        "U({x}, {y}) = {} differs from {x} below the idempotent {f}",
                        u.apply(x, y)
                    ),
                };
            }
        }
    }
    Verdict::Valid
}

fn substar_verdict(u: &Operator, substar: &Operator, grid_n: usize) -> Verdict {
    let points = interior_points(grid_n);
    let extremes = interior_extremes(u, &points);
    if let Some(&(x1, x2)) = extremes.zeros.first() {
        return Verdict::Invalid {
            witness: (x1, x2, 1.0),
            reason: format!("U({x1}, {x2}) = 0 inside the open square"),
        };
    }
    if extremes.ones.is_empty() {
        return Verdict::Valid;
    }
    let e = u.neutral();
    let reach = extremes
        .ones
        .iter()
        .map(|&(x, y)| x.min(y))
        .fold(1.0, f64::min);
    let g = largest_idempotent_at_most(u, &points, reach);
    for &x in points.iter().filter(|&&x| x > g) {
        for &y in points.iter().filter(|&&y| y <= e) {
            if (u.apply(x, y) - x).abs() > STRUCTURE_TOL {
                let partners: Vec<f64> = extremes
                    .ones
                    .iter()
                    .filter_map(|&(a, b)| {
                        if a == x {
                            Some(b)
                        } else if b == x {
                            Some(a)
                        } else {
                            None
                        }
                    })
                    .collect();
                let witness = worst_triple(substar, x, y, &partners);
                return Verdict::Invalid {
                    witness,
                    reason: format!(
                        "U({x}, {y}) = {} differs from {x} above the idempotent {g}",
                        u.apply(x, y)
                    ),
                };
            }
        }
    }
    Verdict::Valid
}

fn is_idempotent(u: &Operator, p: f64) -> bool {
    (u.apply(p, p) - p).abs() <= STRUCTURE_TOL
}

fn smallest_idempotent_at_least(u: &Operator, points: &[f64], bound: f64) -> f64 {
    points
        .iter()
        .copied()
        .filter(|&p| p >= bound && is_idempotent(u, p))
        .fold(1.0, f64::min)
}

fn largest_idempotent_at_most(u: &Operator, points: &[f64], bound: f64) -> f64 {
    points
        .iter()
        .copied()
        .filter(|&p| p <= bound && is_idempotent(u, p))
        .fold(0.0, f64::max)
}

/// Among the orderings of `{x, y, p}` for the given partners, returns the
/// triple with the largest associativity defect.
fn worst_triple(op: &Operator, x: f64, y: f64, partners: &[f64]) -> (f64, f64, f64) {
    let mut best = (x, y, partners.first().copied().unwrap_or(x));
    let mut worst = -1.0;
    for &p in partners {
        for triple in [(x, y, p), (x, p, y), (y, x, p), (y, p, x), (p, x, y), (p, y, x)] {
            let (a, b, c) = triple;
            let defect = (op.apply(op.apply(a, b), c) - op.apply(a, op.apply(b, c))).abs();
            if defect > worst {
                worst = defect;
                best = triple;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{
        bounded_sum, lukasiewicz_tnorm, min_tnorm, probabilistic_sum, product_tnorm,
    };

    fn logistic(policy: Annihilator) -> Operator {
        make_representable(&Generator::logistic(0.5).unwrap(), policy).unwrap()
    }

    fn associativity_defect(op: &Operator, (a, b, c): (f64, f64, f64)) -> f64 {
        (op.apply(op.apply(a, b), c) - op.apply(a, op.apply(b, c))).abs()
    }

    #[test]
    fn representable_examples() {
        let u = logistic(Annihilator::Conjunctive);
        assert!((u.neutral() - 0.5).abs() < 1e-15);
        for x in grid(101).into_iter().filter(|&x| x < 1.0) {
            assert!((u.apply(0.5, x) - x).abs() <= 1e-12);
        }
        let oracle = |x: f64, y: f64| x * y / (x * y + (1.0 - x) * (1.0 - y));
        assert!((u.apply(0.8, 0.8) - oracle(0.8, 0.8)).abs() <= 1e-12);
        assert!((oracle(0.8, 0.8) - 16.0 / 17.0).abs() <= 1e-15);
        assert_eq!(u.apply(0.0, 1.0), 0.0);
        assert_eq!(logistic(Annihilator::Disjunctive).apply(1.0, 0.0), 1.0);
    }

    #[test]
    fn representable_needs_a_bipolar_generator() {
        assert!(make_representable(&Generator::product(), Annihilator::Conjunctive).is_err());
    }

    #[test]
    fn cross_band_examples() {
        let dual = crate::operators::dualize(&product_tnorm()).unwrap();
        let u_min = make_u_min(&product_tnorm(), &dual, 0.5).unwrap();
        assert_eq!(u_min.apply(0.25, 0.75), 0.25);
        assert!((u_min.apply(0.25, 0.25) - 0.5 * (0.5 * 0.5)).abs() <= 1e-15);
        let u_max = make_u_max(&product_tnorm(), &dual, 0.5).unwrap();
        assert_eq!(u_max.apply(0.25, 0.75), 0.75);
        assert!(make_u_min(&dual, &dual, 0.5).is_err());
    }

    #[test]
    fn s_internal_examples() {
        let u = make_s_internal(&InternalBoundary::complement(BoundaryRule::TakeMin));
        assert!((u.neutral() - 0.5).abs() < 1e-12);
        assert_eq!(u.apply(0.3, 0.5), 0.3);
        assert_eq!(u.apply(0.3, 0.9), 0.9);
        assert_eq!(u.apply(0.3, 0.7), 0.3);
        let by_max = make_s_internal(&InternalBoundary::complement(BoundaryRule::TakeMax));
        assert_eq!(by_max.apply(0.3, 0.7), 0.7);
    }

    #[test]
    fn s_internal_is_internal_everywhere_sampled() {
        let b = InternalBoundary::power(2.0, BoundaryRule::TakeMin).unwrap();
        let u = make_s_internal(&b);
        assert!((u.neutral() - 0.5_f64.sqrt()).abs() < 1e-12);
        for x in grid(51) {
            for y in grid(51) {
                let v = u.apply(x, y);
                assert!(v == x || v == y);
            }
        }
    }

    #[test]
    fn switching_curves_are_validated() {
        assert!(InternalBoundary::new("rising", |x| x, BoundaryRule::TakeMin).is_err());
        let asymmetric = |x: f64| (1.0 - x) * (1.0 - x);
        assert!(InternalBoundary::new("square", asymmetric, BoundaryRule::TakeMin).is_err());
    }

    #[test]
    fn underlying_operations() {
        let dual = crate::operators::dualize(&product_tnorm()).unwrap();
        let u_min = make_u_min(&product_tnorm(), &dual, 0.5).unwrap();
        let (t, c) = underlying_ops(&u_min).unwrap();
        for x in grid(21) {
            for y in grid(21) {
                assert!((t.apply(x, y) - x * y).abs() <= 1e-12);
                assert!((c.apply(x, y) - (x + y - x * y)).abs() <= 1e-12);
            }
        }
        let rep = logistic(Annihilator::Conjunctive);
        let t = underlying_tnorm(&rep).unwrap();
        let closed = |x: f64, y: f64| x * y / (x * y + (1.0 - x) * (1.0 - y));
        let restricted = |x: f64, y: f64| 2.0 * closed(x / 2.0, y / 2.0);
        let hamacher_two = |x: f64, y: f64| x * y / (2.0 - x - y + x * y);
        for x in grid(21) {
            for y in grid(21) {
                assert!((restricted(x, y) - hamacher_two(x, y)).abs() <= 1e-15);
                assert!((t.apply(x, y) - restricted(x, y)).abs() <= 1e-12, "{x} {y}");
            }
        }
        let t = underlying_tnorm(&min_tnorm()).unwrap();
        assert_eq!(t.apply(0.3, 0.6), 0.3);
        assert!(matches!(
            underlying_tconorm(&min_tnorm()),
            Err(Error::DegenerateNeutral { .. })
        ));
    }

    #[test]
    fn conjunctive_classification() {
        let c = probabilistic_sum();
        assert_eq!(
            classify_conjunctive(&make_u_min(&product_tnorm(), &c, 0.4).unwrap()).unwrap(),
            Annihilator::Conjunctive
        );
        assert_eq!(
            classify_conjunctive(&make_u_max(&product_tnorm(), &c, 0.4).unwrap()).unwrap(),
            Annihilator::Disjunctive
        );
        assert_eq!(
            classify_conjunctive(&logistic(Annihilator::Disjunctive)).unwrap(),
            Annihilator::Disjunctive
        );
        let broken = Operator::new(OpKind::Uninorm, 0.5, "broken", |_, _| 0.5);
        assert!(matches!(classify_conjunctive(&broken), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn border_variants_of_a_representable_uninorm_are_valid() {
        let u = logistic(Annihilator::Conjunctive);
        let star = border_variant_star(&u, BORDER_GRID);
        assert!(star.verdict.is_valid());
        for x in grid(11).into_iter().filter(|&x| x > 0.0) {
            assert_eq!(star.op.apply(x, 1.0), 1.0);
        }
        assert!(border_variant_substar(&u, BORDER_GRID).verdict.is_valid());
    }

    #[test]
    fn star_of_min_takes_one_on_the_top_border() {
        let star = border_variant_star(&min_tnorm(), BORDER_GRID);
        assert_eq!(star.op.apply(0.5, 1.0), 1.0);
    }

    #[test]
    fn substar_with_interior_zeros_is_invalid_with_the_expected_witness() {
        let u = make_u_min(&lukasiewicz_tnorm(), &probabilistic_sum(), 0.5).unwrap();
        let sub = border_variant_substar(&u, BORDER_GRID);
        match sub.verdict {
            Verdict::Invalid { witness: (x1, x2, z), .. } => {
                assert_eq!(z, 1.0);
                assert_eq!(u.apply(x1, x2), 0.0);
                assert_eq!(sub.op.apply(x1, 1.0), 1.0);
                assert_eq!(sub.op.apply(sub.op.apply(x1, x2), 1.0), 0.0);
                assert_eq!(sub.op.apply(x1, sub.op.apply(x2, 1.0)), 1.0);
            }
            Verdict::Valid => panic!("expected an invalid verdict"),
        }
    }

    #[test]
    fn star_verdict_follows_the_prefix_structure() {
        let prefixed = make_u_min(&lukasiewicz_tnorm(), &probabilistic_sum(), 0.5).unwrap();
        assert!(border_variant_star(&prefixed, BORDER_GRID).verdict.is_valid());
        let not_prefixed = make_u_max(&lukasiewicz_tnorm(), &probabilistic_sum(), 0.5).unwrap();
        let star = border_variant_star(&not_prefixed, BORDER_GRID);
        match &star.verdict {
            Verdict::Invalid { witness, .. } => {
                assert!(associativity_defect(&star.op, *witness) > 1e-3, "{witness:?}");
            }
            Verdict::Valid => panic!("expected an invalid verdict"),
        }
    }

    #[test]
    fn star_with_interior_ones_is_invalid() {
        let u = make_u_min(&product_tnorm(), &bounded_sum(), 0.5).unwrap();
        match border_variant_star(&u, BORDER_GRID).verdict {
            Verdict::Invalid { witness: (x1, x2, z), .. } => {
                assert_eq!(z, 0.0);
                assert_eq!(u.apply(x1, x2), 1.0);
            }
            Verdict::Valid => panic!("expected an invalid verdict"),
        }
    }
}
