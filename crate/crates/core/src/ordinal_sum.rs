//! Ordinal sums of uninorms.
//!
//! Each summand `<a, b, c, d, U_k>` places a copy of `U_k` on
//! `[a,b) ∪ {v} ∪ (c,d]` through a piecewise-linear transform, and the
//! remaining points are filled by `min`/`max` according to how the
//! summands nest around the neutral element.

use std::fmt;

use crate::error::{check_unit, construction, Error, Result};
use crate::operator::{Annihilator, OpKind, Operator};
use crate::uninorms::classify_conjunctive;

/// The piecewise-linear transform sending `[0,e)` onto `[a,b)`, `e` to `v`
/// and `(e,1]` onto `(c,d]`.
pub fn transform_point(a: f64, b: f64, c: f64, d: f64, e: f64, v: f64, x: f64) -> f64 {
    if x < e {
        (b - a) * (x / e) + a
    } else if x == e {
        v
    } else {
        d - (1.0 - x) * (d - c) / (1.0 - e)
    }
}

/// A uninorm conjugated onto `([a,b) ∪ {v} ∪ (c,d])^2`.
#[derive(Debug, Clone)]
pub struct TransformedUninorm {
    op: Operator,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    v: f64,
    identity: bool,
}

impl TransformedUninorm {
    pub fn op(&self) -> &Operator {
        &self.op
    }

    /// `(a, b, c, d, v)`.
    pub fn placement(&self) -> (f64, f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d, self.v)
    }

    /// Whether `x` lies in `[a,b) ∪ (c,d]`.
    pub fn in_open_support(&self, x: f64) -> bool {
        (self.a <= x && x < self.b) || (self.c < x && x <= self.d)
    }

    /// Whether `x` lies in `[a,b) ∪ {v} ∪ (c,d]`.
    pub fn in_support(&self, x: f64) -> bool {
        x == self.v || self.in_open_support(x)
    }

    fn forward(&self, x: f64) -> f64 {
        if self.identity {
            return x;
        }
        let e = self.op.neutral();
        let value = transform_point(self.a, self.b, self.c, self.d, e, self.v, x);
        if x < e {
            value.clamp(self.a, self.b)
        } else if x > e {
            value.clamp(self.c, self.d)
        } else {
            value
        }
    }

    fn backward(&self, x: f64) -> f64 {
        if self.identity {
            return x;
        }
        let e = self.op.neutral();
        if x == self.v {
            e
        } else if x < self.b {
            let t = e * (x - self.a) / (self.b - self.a);
            t.min(e)
        } else {
            let t = 1.0 - (self.d - x) * (1.0 - e) / (self.d - self.c);
            t.max(e)
        }
    }

    pub(crate) fn apply(&self, x: f64, y: f64) -> f64 {
        self.forward(self.op.apply(self.backward(x), self.backward(y)))
    }

    /// Conjugated evaluation; points off the support are rejected.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !self.in_support(x) || !self.in_support(y) {
            return Err(Error::OutOfSupport { x, y });
        }
        Ok(self.apply(x, y))
    }
}

/// Conjugates `u` onto `([a,b) ∪ {v} ∪ (c,d])^2`.
pub fn transform_uninorm(
    u: &Operator,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    v: f64,
) -> Result<TransformedUninorm> {
    for p in [a, b, c, d, v] {
        check_unit(p)?;
    }
    if !(a <= b && b <= c && c <= d) {
        return Err(construction(
            "summand ordering",
            format!("expected a <= b <= c <= d, got ({a}, {b}, {c}, {d})"),
        ));
    }
    if !(b <= v && v <= c) {
        return Err(construction(
            "summand ordering",
            format!("v = {v} must lie in [{b}, {c}]"),
        ));
    }
    let identity = a == 0.0 && d == 1.0 && b == c && v == b && u.neutral() == b;
    Ok(TransformedUninorm {
        op: u.clone(),
        a,
        b,
        c,
        d,
        v,
        identity,
    })
}

/// What a summand places on its intervals.
#[derive(Debug, Clone)]
pub enum SummandOp {
    Operator(Operator),
    /// Only allowed for empty summands, where just `U_k(0,1)` matters.
    Annihilator(Annihilator),
}

/// `<a, b, c, d, op>`.
#[derive(Debug, Clone)]
pub struct Summand {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub op: SummandOp,
}

impl Summand {
    pub fn new(a: f64, b: f64, c: f64, d: f64, op: Operator) -> Self {
        Self {
            a,
            b,
            c,
            d,
            op: SummandOp::Operator(op),
        }
    }

    pub fn empty(b: f64, c: f64, annihilator: Annihilator) -> Self {
        Self {
            a: b,
            b,
            c,
            d: c,
            op: SummandOp::Annihilator(annihilator),
        }
    }

    pub fn shape(&self) -> Shape {
        match (self.a < self.b, self.c < self.d) {
            (true, true) => Shape::Complete,
            (true, false) => Shape::LowerOnly,
            (false, true) => Shape::UpperOnly,
            (false, false) => Shape::Empty,
        }
    }

    pub fn operator(&self) -> Option<&Operator> {
        match &self.op {
            SummandOp::Operator(op) => Some(op),
            SummandOp::Annihilator(_) => None,
        }
    }

    /// `U_k(1,0)` as conjunctive or disjunctive.
    pub fn character(&self) -> Result<Annihilator> {
        match &self.op {
            SummandOp::Annihilator(bit) => Ok(*bit),
            SummandOp::Operator(op) => match op.kind() {
                OpKind::TNorm => Ok(Annihilator::Conjunctive),
                OpKind::TConorm => Ok(Annihilator::Disjunctive),
                OpKind::Uninorm => classify_conjunctive(op),
            },
        }
    }

    /// True for a proper uninorm on a complete summand, a t-norm on a
    /// lower-only summand, or a t-conorm on an upper-only summand.
    pub fn is_totally_employed(&self) -> bool {
        let Some(op) = self.operator() else {
            return false;
        };
        match self.shape() {
            Shape::Complete => op.is_proper_uninorm(),
            Shape::LowerOnly => op.kind() == OpKind::TNorm,
            Shape::UpperOnly => op.kind() == OpKind::TConorm,
            Shape::Empty => false,
        }
    }

    /// Whether `self` encloses `other`: `b <= other.a` and `c >= other.d`.
    pub fn encloses(&self, other: &Summand) -> bool {
        self.b <= other.a && self.c >= other.d
    }
}

/// Which of the two intervals of a summand are non-empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Empty,
    Complete,
    LowerOnly,
    UpperOnly,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Empty => "empty",
            Shape::Complete => "complete",
            Shape::LowerOnly => "lower-only",
            Shape::UpperOnly => "upper-only",
        })
    }
}

/// The sets `B`, `C` and the map `n` on `B`, indexed by summand.
#[derive(Debug, Clone, PartialEq)]
pub struct Derived {
    /// `{b_k} \ {a_k}`.
    pub b_set: Vec<f64>,
    /// `{c_k} \ {d_k}`.
    pub c_set: Vec<f64>,
    /// `n(b_k)` for every `k` with `b_k` in `B`.
    pub n: Vec<Option<f64>>,
}

impl Derived {
    pub fn in_b(&self, x: f64) -> bool {
        self.b_set.contains(&x)
    }

    pub fn in_c(&self, x: f64) -> bool {
        self.c_set.contains(&x)
    }
}

/// Which branch of the case table produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    NeutralRow,
    NeutralColumn,
    Summand(usize),
    KeepFirst(usize),
    KeepSecond(usize),
    AccumulationMin(usize),
    AccumulationMax(usize),
    Corner(usize),
    OneSidedMin(usize),
    OneSidedMax(usize),
}

/// A validated ordinal sum of uninorms with neutral element `e`.
#[derive(Debug, Clone)]
pub struct OrdinalSumSpec {
    e: f64,
    summands: Vec<Summand>,
    derived: Derived,
    v: Vec<f64>,
    transformed: Vec<Option<TransformedUninorm>>,
}

impl OrdinalSumSpec {
    pub fn new(e: f64, summands: Vec<Summand>) -> Result<Self> {
        check_unit(e)?;
        validate_summands(e, &summands)?;
        let derived = derive(&summands)?;
        let v = (0..summands.len())
            .map(|k| resolve_v_in(&summands, &derived, k))
            .collect::<Result<Vec<_>>>()?;
        let transformed = summands
            .iter()
            .zip(&v)
            .map(|(s, &v_k)| match &s.op {
                SummandOp::Operator(op) if s.shape() != Shape::Empty => {
                    transform_uninorm(op, s.a, s.b, s.c, s.d, v_k).map(Some)
                }
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Self {
            e,
            summands,
            derived,
            v,
            transformed,
        };
        spec.check_coverage()?;
        Ok(spec)
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn derived(&self) -> &Derived {
        &self.derived
    }

    /// The resolved `v_k`.
    pub fn v(&self, k: usize) -> f64 {
        self.v[k]
    }

    pub fn transformed(&self, k: usize) -> Option<&TransformedUninorm> {
        self.transformed[k].as_ref()
    }

    pub fn uses_numeric_inversion(&self) -> bool {
        self.summands
            .iter()
            .filter_map(Summand::operator)
            .any(Operator::uses_numeric_inversion)
    }

    /// Evaluates the case table, reporting the branch taken, or `None`
    /// when no branch applies.
    pub fn classify_point(&self, x: f64, y: f64) -> Option<(Branch, f64)> {
        let e = self.e;
        if x == e {
            return Some((Branch::NeutralRow, y));
        }
        if y == e {
            return Some((Branch::NeutralColumn, x));
        }
        for (k, t) in self.transformed.iter().enumerate() {
            if let Some(t) = t {
                if t.in_open_support(x) && t.in_open_support(y) {
                    return Some((Branch::Summand(k), t.apply(x, y)));
                }
            }
        }
        let between = |s: &Summand, p: f64| s.b <= p && p <= s.c;
        let outside = |s: &Summand, p: f64| s.a <= p && p <= s.d && !(s.b <= p && p <= s.c);
        for (k, s) in self.summands.iter().enumerate() {
            if between(s, y) && outside(s, x) {
                return Some((Branch::KeepFirst(k), x));
            }
        }
        for (k, s) in self.summands.iter().enumerate() {
            if between(s, x) && outside(s, y) {
                return Some((Branch::KeepSecond(k), y));
            }
        }
        let d = &self.derived;
        let on_cell_border = |s: &Summand| {
            between(s, x)
                && between(s, y)
                && !(s.b < x && x < s.c && s.b < y && y < s.c)
                && !((x, y) == (s.b, s.c) || (x, y) == (s.c, s.b))
        };
        for (k, s) in self.summands.iter().enumerate() {
            if d.in_b(s.b) && d.in_c(s.c) && on_cell_border(s) && x + y <= s.c + s.b {
                return Some((Branch::AccumulationMin(k), x.min(y)));
            }
        }
        for (k, s) in self.summands.iter().enumerate() {
            if d.in_b(s.b) && d.in_c(s.c) && on_cell_border(s) && x + y > s.c + s.b {
                return Some((Branch::AccumulationMax(k), x.max(y)));
            }
        }
        for (k, s) in self.summands.iter().enumerate() {
            if d.in_b(s.b) && d.in_c(s.c) && ((x, y) == (s.b, s.c) || (x, y) == (s.c, s.b)) {
                let n = d.n[k].expect("n is defined on B");
                return Some((Branch::Corner(k), n));
            }
        }
        for (k, s) in self.summands.iter().enumerate() {
            let on_row = (x == s.b && between(s, y)) || (y == s.b && between(s, x));
            if d.in_b(s.b) && !d.in_c(s.c) && on_row {
                return Some((Branch::OneSidedMin(k), x.min(y)));
            }
        }
        for (k, s) in self.summands.iter().enumerate() {
            let on_row = (x == s.c && between(s, y)) || (y == s.c && between(s, x));
            if !d.in_b(s.b) && d.in_c(s.c) && on_row {
                return Some((Branch::OneSidedMax(k), x.max(y)));
            }
        }
        None
    }

    /// Evaluates without domain checks.
    ///
    /// # Panics
    ///
    /// When no branch covers `(x, y)`; construction rules this out on the
    /// breakpoint lattice.
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self.classify_point(x, y) {
            Some((_, value)) => value,
            None => panic!("no branch of the ordinal sum covers ({x}, {y})"),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x, y))
    }

    pub fn to_operator(&self) -> Operator {
        let spec = self.clone();
        Operator::new(OpKind::Uninorm, self.e, self.label(), move |x, y| spec.apply(x, y))
            .with_numeric_inversion(self.uses_numeric_inversion())
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let inner = match &s.op {
                    SummandOp::Operator(op) => op.label().to_string(),
                    SummandOp::Annihilator(Annihilator::Conjunctive) => "conjunctive".into(),
                    SummandOp::Annihilator(Annihilator::Disjunctive) => "disjunctive".into(),
                };
                format!("<{}, {}, {}, {}, {inner}>", s.a, s.b, s.c, s.d)
            })
            .collect();
        format!("({})^{}", parts.join(", "), self.e)
    }

    /// Breakpoints and the midpoints between consecutive ones.
    pub fn probe_points(&self) -> Vec<f64> {
        let mut points = vec![0.0, self.e, 1.0];
        for (s, &v) in self.summands.iter().zip(&self.v) {
            points.extend([s.a, s.b, s.c, s.d, v]);
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        let mids: Vec<f64> = points.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        points.extend(mids);
        points.sort_by(f64::total_cmp);
        points
    }

    fn check_coverage(&self) -> Result<()> {
        let points = self.probe_points();
        for &x in &points {
            for &y in &points {
                if self.classify_point(x, y).is_none() {
                    return Err(construction(
                        "case table",
                        format!("no branch covers ({x}, {y})"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn validate_summands(e: f64, summands: &[Summand]) -> Result<()> {
    for s in summands {
        for p in [s.a, s.b, s.c, s.d] {
            check_unit(p)?;
        }
        if !(s.a <= s.b && s.b <= e && e <= s.c && s.c <= s.d) {
            return Err(construction(
                "summand ordering",
                format!(
                    "expected 0 <= a <= b <= e <= c <= d <= 1, got ({}, {}, {}, {}) with e = {e}",
                    s.a, s.b, s.c, s.d
                ),
            ));
        }
        let shape = s.shape();
        match &s.op {
            SummandOp::Annihilator(_) if shape != Shape::Empty => {
                return Err(construction(
                    "summand operation",
                    "a bare conjunctive/disjunctive bit needs an empty summand",
                ));
            }
            SummandOp::Annihilator(_) => {}
            SummandOp::Operator(op) => {
                let ok = match shape {
                    Shape::Complete => op.is_proper_uninorm(),
                    Shape::LowerOnly => op.kind() == OpKind::TNorm || op.is_proper_uninorm(),
                    Shape::UpperOnly => op.kind() == OpKind::TConorm || op.is_proper_uninorm(),
                    Shape::Empty => true,
                };
                if !ok {
                    return Err(construction(
                        "summand operation",
                        format!("a {shape} summand cannot carry the {} {}", op.kind(), op.label()),
                    ));
                }
            }
        }
    }
    check_intervals(
        summands.iter().filter(|s| s.a < s.b).map(|s| (s.a, s.b)).collect(),
        0.0,
        e,
    )?;
    check_intervals(
        summands.iter().filter(|s| s.c < s.d).map(|s| (s.c, s.d)).collect(),
        e,
        1.0,
    )?;
    for (i, si) in summands.iter().enumerate() {
        for sk in &summands[i + 1..] {
            if !(si.encloses(sk) || sk.encloses(si)) {
                return Err(construction(
                    "anti-comonotone systems",
                    format!(
                        "summands ({}, {}, {}, {}) and ({}, {}, {}, {}) are not nested",
                        si.a, si.b, si.c, si.d, sk.a, sk.b, sk.c, sk.d
                    ),
                ));
            }
            if si.shape() == Shape::Empty
                && sk.shape() == Shape::Empty
                && si.b == sk.b
                && si.c == sk.c
            {
                return Err(construction(
                    "empty summands",
                    format!("two empty summands sit at ({}, {})", si.b, si.c),
                ));
            }
        }
    }
    Ok(())
}

/// Disjoint open intervals whose closures cover `[lo, hi]`.
fn check_intervals(mut intervals: Vec<(f64, f64)>, lo: f64, hi: f64) -> Result<()> {
    intervals.sort_by(|p, q| p.0.total_cmp(&q.0));
    for w in intervals.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(Error::Overlap(w[0].0, w[0].1, w[1].0, w[1].1));
        }
    }
    let mut reach = lo;
    for &(a, b) in &intervals {
        if a > reach {
            break;
        }
        reach = reach.max(b);
    }
    if reach < hi {
        return Err(construction(
            "interval coverage",
            format!("the summand intervals leave ({reach}, {hi}) uncovered inside [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

fn derive(summands: &[Summand]) -> Result<Derived> {
    let mut b_set: Vec<f64> = summands
        .iter()
        .map(|s| s.b)
        .filter(|&b| !summands.iter().any(|s| s.a == b))
        .collect();
    b_set.sort_by(f64::total_cmp);
    b_set.dedup();
    let mut c_set: Vec<f64> = summands
        .iter()
        .map(|s| s.c)
        .filter(|&c| !summands.iter().any(|s| s.d == c))
        .collect();
    c_set.sort_by(f64::total_cmp);
    c_set.dedup();
    let n = summands
        .iter()
        .map(|s| {
            if b_set.contains(&s.b) {
                Ok(Some(match s.character()? {
                    Annihilator::Conjunctive => s.b,
                    Annihilator::Disjunctive => s.c,
                }))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Derived { b_set, c_set, n })
}

/// `B`, `C` and `n` of a summand system.
pub fn derive_b_c_n(spec: &OrdinalSumSpec) -> &Derived {
    spec.derived()
}

fn resolve_v_in(summands: &[Summand], derived: &Derived, k: usize) -> Result<f64> {
    let s = &summands[k];
    // The summand directly inside `k` shares both of its outer endpoints
    // with the inner endpoints of `k`.
    let adjacent: Vec<&Summand> = summands
        .iter()
        .enumerate()
        .filter(|&(i, t)| i != k && t.a == s.b && t.d == s.c)
        .map(|(_, t)| t)
        .collect();
    let decisive: Vec<&Summand> = if adjacent.iter().any(|t| t.shape() != Shape::Empty) {
        adjacent.into_iter().filter(|t| t.shape() != Shape::Empty).collect()
    } else {
        adjacent
    };
    if let Some(first) = decisive.first() {
        let character = first.character()?;
        for other in &decisive[1..] {
            if other.character()? != character {
                return Err(construction(
                    "v rule",
                    format!("summands adjacent to ({}, {}) disagree on U(1,0)", s.b, s.c),
                ));
            }
        }
        return Ok(match character {
            Annihilator::Conjunctive => s.b,
            Annihilator::Disjunctive => s.c,
        });
    }
    let in_b = derived.in_b(s.b);
    let in_c = derived.in_c(s.c);
    match (in_b, in_c) {
        (true, true) => Ok(derived.n[k].expect("n is defined on B")),
        (true, false) => Ok(s.b),
        (false, true) => Ok(s.c),
        (false, false) if s.b == s.c => Ok(s.b),
        (false, false) => Err(construction(
            "v rule",
            format!("no rule determines v for the summand at ({}, {})", s.b, s.c),
        )),
    }
}

/// The resolved `v_k` of summand `k`.
pub fn resolve_v(spec: &OrdinalSumSpec, k: usize) -> f64 {
    spec.v(k)
}

/// Evaluates the ordinal sum after checking the domain.
pub fn eval_ordinal_sum_uninorm(spec: &OrdinalSumSpec, x: f64, y: f64) -> Result<f64> {
    spec.eval(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Generator;
    use crate::operator::grid;
    use crate::operators::{probabilistic_sum, product_tnorm};
    use crate::uninorms::make_representable;

    fn logistic() -> Operator {
        make_representable(&Generator::logistic(0.5).unwrap(), Annihilator::Conjunctive).unwrap()
    }

    fn nested_representable() -> OrdinalSumSpec {
        OrdinalSumSpec::new(
            0.5,
            vec![
                Summand::new(0.25, 0.5, 0.5, 0.75, logistic()),
                Summand::new(0.0, 0.25, 0.75, 0.75, product_tnorm()),
                Summand::new(0.0, 0.0, 0.75, 1.0, probabilistic_sum()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn transform_point_examples() {
        assert_eq!(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 0.25), 0.375);
        assert_eq!(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.4, 0.5), 0.4);
        assert_eq!(transform_point(0.25, 0.5, 0.5, 0.75, 0.5, 0.5, 1.0), 0.75);
        assert_eq!(transform_point(0.3, 0.3, 0.5, 0.75, 0.5, 0.5, 0.2), 0.3);
    }

    #[test]
    fn transformed_uninorm_examples() {
        let t = transform_uninorm(&product_tnorm(), 0.0, 0.5, 1.0, 1.0, 1.0).unwrap();
        assert!((t.eval(0.25, 0.25).unwrap() - 0.5 * (0.5 * 0.5)).abs() < 1e-15);
        assert!(matches!(t.eval(0.75, 0.25), Err(Error::OutOfSupport { .. })));
        let u = transform_uninorm(&logistic(), 0.25, 0.5, 0.5, 0.75, 0.5).unwrap();
        for x in [0.25, 0.3, 0.45, 0.55, 0.7, 0.75] {
            assert!((u.eval(0.5, x).unwrap() - x).abs() < 1e-12);
        }
        // The image of an idempotent is idempotent.
        for p in [0.25, 0.75] {
            assert!((u.eval(p, p).unwrap() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn nested_sum_cross_regions() {
        let spec = nested_representable();
        assert_eq!(spec.eval(0.1, 0.6).unwrap(), 0.1);
        assert_eq!(spec.eval(0.1, 0.9).unwrap(), 0.9);
        for y in grid(11) {
            assert_eq!(spec.eval(0.5, y).unwrap(), y);
            assert_eq!(spec.eval(y, 0.5).unwrap(), y);
        }
        // The representable block takes its anti-diagonal to v = 1/2.
        assert!((spec.eval(0.3, 0.7).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn nested_sum_derived_sets_and_v() {
        let spec = nested_representable();
        assert_eq!(spec.derived().b_set, vec![0.5]);
        assert_eq!(spec.derived().c_set, vec![0.5]);
        assert_eq!(spec.v(0), 0.5);
        assert_eq!(spec.v(1), 0.25);
        assert_eq!(spec.v(2), 0.0);
    }

    #[test]
    fn cross_band_sums_match_their_direct_construction() {
        let e = 0.4;
        let u_min = OrdinalSumSpec::new(
            e,
            vec![
                Summand::new(e, e, e, 1.0, probabilistic_sum()),
                Summand::new(0.0, e, 1.0, 1.0, product_tnorm()),
            ],
        )
        .unwrap();
        let direct = crate::uninorms::make_u_min(&product_tnorm(), &probabilistic_sum(), e).unwrap();
        for x in grid(41) {
            for y in grid(41) {
                assert!((u_min.apply(x, y) - direct.apply(x, y)).abs() < 1e-12, "{x} {y}");
            }
        }
        assert_eq!(u_min.derived().b_set, Vec::<f64>::new());
        assert_eq!(u_min.derived().c_set, vec![e]);
    }

    #[test]
    fn single_complete_summand_reproduces_the_uninorm() {
        let spec = OrdinalSumSpec::new(0.5, vec![Summand::new(0.0, 0.5, 0.5, 1.0, logistic())]).unwrap();
        let u = logistic();
        for x in grid(21) {
            for y in grid(21) {
                assert!((spec.apply(x, y) - u.apply(x, y)).abs() < 1e-12, "{x} {y}");
            }
        }
        assert_eq!(spec.v(0), 0.5);
        assert_eq!(spec.derived().b_set, vec![0.5]);
        assert_eq!(spec.derived().c_set, vec![0.5]);
    }

    #[test]
    fn adjacent_conjunctive_summand_sets_v_to_b() {
        let spec = OrdinalSumSpec::new(
            0.5,
            vec![
                Summand::new(0.0, 0.2, 0.8, 1.0, logistic()),
                Summand::new(0.2, 0.5, 0.5, 0.8, logistic()),
            ],
        )
        .unwrap();
        assert_eq!(spec.v(0), 0.2);
        assert_eq!(spec.apply(0.2, 0.8), 0.2);
    }

    #[test]
    fn invalid_systems_are_rejected() {
        let overlap = OrdinalSumSpec::new(
            0.5,
            vec![
                Summand::new(0.0, 0.3, 0.5, 1.0, logistic()),
                Summand::new(0.2, 0.5, 0.5, 0.5, product_tnorm()),
            ],
        );
        assert!(matches!(overlap, Err(Error::Overlap(..))));
        let gap = OrdinalSumSpec::new(0.5, vec![Summand::new(0.1, 0.5, 0.5, 1.0, logistic())]);
        assert!(matches!(gap, Err(Error::Construction { rule: "interval coverage", .. })));
        let wrong_kind = OrdinalSumSpec::new(0.5, vec![Summand::new(0.0, 0.5, 0.5, 1.0, product_tnorm())]);
        assert!(matches!(wrong_kind, Err(Error::Construction { rule: "summand operation", .. })));
        let crossing = OrdinalSumSpec::new(
            0.5,
            vec![
                Summand::new(0.0, 0.25, 0.5, 0.75, logistic()),
                Summand::new(0.25, 0.5, 0.75, 1.0, logistic()),
            ],
        );
        assert!(matches!(crossing, Err(Error::Construction { rule: "anti-comonotone systems", .. })));
        let bare_bit = OrdinalSumSpec::new(
            0.5,
            vec![Summand {
                a: 0.0,
                b: 0.5,
                c: 0.5,
                d: 1.0,
                op: SummandOp::Annihilator(Annihilator::Conjunctive),
            }],
        );
        assert!(bare_bit.is_err());
    }

    #[test]
    fn shapes_and_total_employment() {
        let spec = nested_representable();
        let shapes: Vec<Shape> = spec.summands().iter().map(Summand::shape).collect();
        assert_eq!(shapes, vec![Shape::Complete, Shape::LowerOnly, Shape::UpperOnly]);
        assert!(spec.summands().iter().all(Summand::is_totally_employed));
        let lower_uninorm = Summand::new(0.0, 0.5, 1.0, 1.0, logistic());
        assert!(!lower_uninorm.is_totally_employed());
        assert_eq!(Summand::empty(0.2, 0.8, Annihilator::Disjunctive).shape(), Shape::Empty);
    }

    #[test]
    fn summand_breakpoints_are_idempotent() {
        let spec = nested_representable();
        for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
            assert!((spec.apply(p, p) - p).abs() < 1e-12);
        }
    }
}
