//! t-norms and t-conorms: built-ins, generated operations, duality,
//! ordinal sums and Archimedean classification.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_unit, Error, Result};
use crate::generator::{Generator, GeneratorKind};
use crate::operator::{grid, OpKind, Operator};

/// Default sampling resolution for the classifiers.
pub const CLASSIFY_GRID: usize = 101;

pub fn min_tnorm() -> Operator {
    Operator::new(OpKind::TNorm, 1.0, "min", |x, _| x)
}

pub fn max_tconorm() -> Operator {
    Operator::new(OpKind::TConorm, 0.0, "max", |_, y| y)
}

pub fn product_tnorm() -> Operator {
    Operator::new(OpKind::TNorm, 1.0, "product", |x, y| x * y)
}

pub fn lukasiewicz_tnorm() -> Operator {
    Operator::new(OpKind::TNorm, 1.0, "lukasiewicz", |x, y| (x + y - 1.0).max(0.0))
}

pub fn probabilistic_sum() -> Operator {
    Operator::new(OpKind::TConorm, 0.0, "probabilistic_sum", |x, y| x + y - x * y)
}

pub fn bounded_sum() -> Operator {
    Operator::new(OpKind::TConorm, 0.0, "bounded_sum", |x, y| (x + y).min(1.0))
}

fn require_generator(gen: &Generator, expected: GeneratorKind) -> Result<()> {
    if gen.kind() == expected {
        Ok(())
    } else {
        Err(crate::error::construction(
            "generator kind",
            format!("expected a {expected} generator, found {} ({})", gen.kind(), gen.name()),
        ))
    }
}

/// `t^{-1}(min(t(0), t(x) + t(y)))`.
pub fn eval_generated_tnorm(gen: &Generator, x: f64, y: f64) -> Result<f64> {
    require_generator(gen, GeneratorKind::TNorm)?;
    check_unit(x)?;
    check_unit(y)?;
    Ok(raw_generated_tnorm(gen, x, y))
}

/// `c^{-1}(min(c(1), c(x) + c(y)))`.
pub fn eval_generated_tconorm(gen: &Generator, x: f64, y: f64) -> Result<f64> {
    require_generator(gen, GeneratorKind::TConorm)?;
    check_unit(x)?;
    check_unit(y)?;
    Ok(raw_generated_tconorm(gen, x, y))
}

fn raw_generated_tnorm(gen: &Generator, x: f64, y: f64) -> f64 {
    let (at_zero, _) = gen.endpoint_values();
    gen.inverse(at_zero.min(gen.eval(x) + gen.eval(y)))
}

fn raw_generated_tconorm(gen: &Generator, x: f64, y: f64) -> f64 {
    let (_, at_one) = gen.endpoint_values();
    gen.inverse(at_one.min(gen.eval(x) + gen.eval(y)))
}

/// The t-norm generated by `gen`, as a handle.
pub fn generated_tnorm(gen: &Generator) -> Result<Operator> {
    require_generator(gen, GeneratorKind::TNorm)?;
    let g = gen.clone();
    Ok(Operator::new(OpKind::TNorm, 1.0, format!("tnorm[{}]", gen.name()), move |x, y| {
        raw_generated_tnorm(&g, x, y)
    })
    .with_numeric_inversion(!gen.is_closed_form()))
}

/// The t-conorm generated by `gen`, as a handle.
pub fn generated_tconorm(gen: &Generator) -> Result<Operator> {
    require_generator(gen, GeneratorKind::TConorm)?;
    let g = gen.clone();
    Ok(Operator::new(OpKind::TConorm, 0.0, format!("tconorm[{}]", gen.name()), move |x, y| {
        raw_generated_tconorm(&g, x, y)
    })
    .with_numeric_inversion(!gen.is_closed_form()))
}

pub(crate) fn require_kind(op: &Operator, expected: OpKind) -> Result<()> {
    if op.kind() == expected {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected,
            found: op.kind(),
        })
    }
}

/// `1 - T(1 - x, 1 - y)`, and symmetrically for t-conorms.
///
/// Dualizing a handle that was itself produced by `dualize` returns the
/// original handle, so the involution is exact.
pub fn dualize(op: &Operator) -> Result<Operator> {
    let target = match op.kind() {
        OpKind::TNorm => OpKind::TConorm,
        OpKind::TConorm => OpKind::TNorm,
        OpKind::Uninorm => {
            return Err(Error::KindMismatch {
                expected: OpKind::TNorm,
                found: OpKind::Uninorm,
            })
        }
    };
    if let Some(source) = op.dual_of() {
        return Ok(source.clone());
    }
    let inner = op.clone();
    let neutral = 1.0 - op.neutral();
    Ok(Operator::new(target, neutral, format!("dual({})", op.label()), move |x, y| {
        1.0 - inner.apply(1.0 - x, 1.0 - y)
    })
    .with_numeric_inversion(op.uses_numeric_inversion())
    .with_dual_of(op))
}

/// One rescaled block of an ordinal sum of t-norms or t-conorms.
#[derive(Debug, Clone)]
pub struct OrdinalEntry {
    pub lo: f64,
    pub hi: f64,
    pub op: Operator,
}

impl OrdinalEntry {
    pub fn new(lo: f64, hi: f64, op: Operator) -> Self {
        Self { lo, hi, op }
    }
}

/// A validated list of ordinal-sum blocks, sorted by `lo`, all of one kind.
#[derive(Debug, Clone)]
pub struct SummandList {
    kind: OpKind,
    entries: Arc<[OrdinalEntry]>,
}

impl SummandList {
    /// Blocks of t-norms on `[lo,hi)^2`; `min` elsewhere.
    pub fn tnorm(entries: Vec<OrdinalEntry>) -> Result<Self> {
        Self::build(OpKind::TNorm, entries)
    }

    /// Blocks of t-conorms on `(lo,hi]^2`; `max` elsewhere.
    pub fn tconorm(entries: Vec<OrdinalEntry>) -> Result<Self> {
        Self::build(OpKind::TConorm, entries)
    }

    fn build(kind: OpKind, mut entries: Vec<OrdinalEntry>) -> Result<Self> {
        for entry in &entries {
            require_kind(&entry.op, kind)?;
            check_unit(entry.lo)?;
            check_unit(entry.hi)?;
            if entry.lo >= entry.hi {
                return Err(crate::error::construction(
                    "ordinal sum interval",
                    format!("block [{}, {}] is empty", entry.lo, entry.hi),
                ));
            }
        }
        entries.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for pair in entries.windows(2) {
            if pair[1].lo < pair[0].hi {
                return Err(Error::Overlap(pair[0].lo, pair[0].hi, pair[1].lo, pair[1].hi));
            }
        }
        Ok(Self {
            kind,
            entries: entries.into(),
        })
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn entries(&self) -> &[OrdinalEntry] {
        &self.entries
    }

    fn apply(&self, x: f64, y: f64) -> f64 {
        let (lo_arg, hi_arg) = if x <= y { (x, y) } else { (y, x) };
        for entry in self.entries.iter() {
            let width = entry.hi - entry.lo;
            let inside = match self.kind {
                OpKind::TNorm => lo_arg >= entry.lo && hi_arg < entry.hi,
                _ => lo_arg > entry.lo && hi_arg <= entry.hi,
            };
            if inside {
                let value =
                    entry.lo + width * entry.op.apply((x - entry.lo) / width, (y - entry.lo) / width);
                return value.clamp(entry.lo, entry.hi);
            }
        }
        match self.kind {
            OpKind::TNorm => lo_arg,
            _ => hi_arg,
        }
    }

    fn uses_numeric_inversion(&self) -> bool {
        self.entries.iter().any(|e| e.op.uses_numeric_inversion())
    }
}

/// Evaluates an ordinal sum of t-norms.
pub fn eval_ordinal_sum_tnorm(list: &SummandList, x: f64, y: f64) -> Result<f64> {
    if list.kind != OpKind::TNorm {
        return Err(Error::KindMismatch {
            expected: OpKind::TNorm,
            found: list.kind,
        });
    }
    check_unit(x)?;
    check_unit(y)?;
    Ok(list.apply(x, y))
}

/// Evaluates an ordinal sum of t-conorms.
pub fn eval_ordinal_sum_tconorm(list: &SummandList, x: f64, y: f64) -> Result<f64> {
    if list.kind != OpKind::TConorm {
        return Err(Error::KindMismatch {
            expected: OpKind::TConorm,
            found: list.kind,
        });
    }
    check_unit(x)?;
    check_unit(y)?;
    Ok(list.apply(x, y))
}

/// The ordinal sum as a handle of the list's kind.
pub fn ordinal_sum(list: &SummandList) -> Operator {
    let neutral = if list.kind == OpKind::TNorm { 1.0 } else { 0.0 };
    let label = list
        .entries
        .iter()
        .map(|e| format!("<{}, {}, {}>", e.lo, e.hi, e.op.label()))
        .collect::<Vec<_>>()
        .join(", ");
    let numeric = list.uses_numeric_inversion();
    let inner = list.clone();
    Operator::new(list.kind, neutral, format!("ordinal_sum({label})"), move |x, y| {
        inner.apply(x, y)
    })
    .with_numeric_inversion(numeric)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Archimedean {
    Strict,
    Nilpotent,
    NotArchimedean,
}

impl fmt::Display for Archimedean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Archimedean::Strict => "strict",
            Archimedean::Nilpotent => "nilpotent",
            Archimedean::NotArchimedean => "not-archimedean",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CStrictness {
    CStrict,
    CNilpotent,
}

impl fmt::Display for CStrictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CStrictness::CStrict => "c-strict",
            CStrictness::CNilpotent => "c-nilpotent",
        })
    }
}

const IDEMPOTENT_TOL: f64 = 1e-12;

fn annihilator_of(op: &Operator) -> Result<f64> {
    match op.kind() {
        OpKind::TNorm => Ok(0.0),
        OpKind::TConorm => Ok(1.0),
        OpKind::Uninorm => Err(Error::KindMismatch {
            expected: OpKind::TNorm,
            found: OpKind::Uninorm,
        }),
    }
}

fn interior(n: usize) -> Vec<f64> {
    let g = grid(n);
    g[1..n - 1].to_vec()
}

fn hits_annihilator(op: &Operator, annihilator: f64, points: &[f64]) -> bool {
    points.iter().enumerate().any(|(i, &x)| {
        points[i..]
            .iter()
            .any(|&y| op.apply(x, y) == annihilator)
    })
}

/// Decides whether a sampled interior pair reaches the annihilator,
/// refusing to answer when a four-times finer grid disagrees.
fn interior_annihilation(op: &Operator, grid_n: usize) -> Result<bool> {
    if grid_n < 3 {
        return Err(Error::Inconclusive {
            grid: grid_n,
            detail: "a classification grid needs interior points".into(),
        });
    }
    let annihilator = annihilator_of(op)?;
    if hits_annihilator(op, annihilator, &interior(grid_n)) {
        return Ok(true);
    }
    let fine = 4 * (grid_n - 1) + 1;
    if hits_annihilator(op, annihilator, &interior(fine)) {
        return Err(Error::Inconclusive {
            grid: grid_n,
            detail: format!("interior annihilation only appears at grid {fine}"),
        });
    }
    Ok(false)
}

/// Strict, nilpotent or not Archimedean, decided on sampled interior points.
pub fn classify_archimedean(op: &Operator, grid_n: usize) -> Result<Archimedean> {
    annihilator_of(op)?;
    if grid_n >= 3
        && interior(grid_n)
            .iter()
            .any(|&x| (op.apply(x, x) - x).abs() <= IDEMPOTENT_TOL)
    {
        return Ok(Archimedean::NotArchimedean);
    }
    if interior_annihilation(op, grid_n)? {
        Ok(Archimedean::Nilpotent)
    } else {
        Ok(Archimedean::Strict)
    }
}

/// c-strict when no sampled interior pair reaches the annihilator.
pub fn classify_c_strict(op: &Operator, grid_n: usize) -> Result<CStrictness> {
    if interior_annihilation(op, grid_n)? {
        Ok(CStrictness::CNilpotent)
    } else {
        Ok(CStrictness::CStrict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn generated_tnorm_examples() {
        let product = Generator::product();
        assert!(close(eval_generated_tnorm(&product, 0.5, 0.5).unwrap(), 0.25, 1e-12));
        let luk = Generator::lukasiewicz();
        assert_eq!(eval_generated_tnorm(&luk, 0.3, 0.4).unwrap(), 0.0);
        let hamacher = Generator::hamacher();
        let oracle = |x: f64, y: f64| x * y / (x + y - x * y);
        assert!(close(
            eval_generated_tnorm(&hamacher, 0.5, 0.25).unwrap(),
            oracle(0.5, 0.25),
            1e-12
        ));
        assert!(close(oracle(0.5, 0.25), 0.2, 1e-15));
    }

    #[test]
    fn generated_tconorm_examples() {
        let bounded = Generator::bounded_sum();
        assert!(close(eval_generated_tconorm(&bounded, 0.3, 0.4).unwrap(), 0.7, 1e-12));
        let prob = Generator::probabilistic_sum();
        let oracle = |x: f64, y: f64| x + y - x * y;
        assert!(close(eval_generated_tconorm(&prob, 0.5, 0.5).unwrap(), oracle(0.5, 0.5), 1e-12));
        for y in grid(11) {
            assert!(close(eval_generated_tconorm(&prob, 0.0, y).unwrap(), y, 1e-12));
        }
    }

    #[test]
    fn generator_kind_and_domain_are_checked() {
        let product = Generator::product();
        assert!(matches!(
            eval_generated_tconorm(&product, 0.1, 0.2),
            Err(Error::Construction { .. })
        ));
        assert!(matches!(
            eval_generated_tnorm(&product, 1.2, 0.2),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn duals_of_the_basic_tnorms() {
        let max = dualize(&min_tnorm()).unwrap();
        assert_eq!(max.kind(), OpKind::TConorm);
        for x in grid(11) {
            for y in grid(11) {
                assert!(close(max.apply(x, y), x.max(y), 1e-15));
            }
        }
        assert!(close(dualize(&product_tnorm()).unwrap().apply(0.5, 0.5), 0.75, 1e-15));
        assert!(close(dualize(&lukasiewicz_tnorm()).unwrap().apply(0.3, 0.4), 0.7, 1e-15));
    }

    #[test]
    fn dualize_is_an_involution() {
        let t = generated_tnorm(&Generator::hamacher()).unwrap();
        let back = dualize(&dualize(&t).unwrap()).unwrap();
        assert_eq!(back.kind(), OpKind::TNorm);
        for x in grid(21) {
            for y in grid(21) {
                assert_eq!(back.apply(x, y), t.apply(x, y));
            }
        }
        assert!(dualize(&Operator::new(OpKind::Uninorm, 0.5, "u", f64::min)).is_err());
    }

    #[test]
    fn ordinal_sum_tnorm_examples() {
        let list = SummandList::tnorm(vec![OrdinalEntry::new(0.0, 0.5, product_tnorm())]).unwrap();
        let rescaled = 0.0 + 0.5 * (0.5 * 0.5);
        assert!(close(eval_ordinal_sum_tnorm(&list, 0.25, 0.25).unwrap(), rescaled, 1e-15));
        assert_eq!(eval_ordinal_sum_tnorm(&list, 0.25, 0.75).unwrap(), 0.25);
        let empty = SummandList::tnorm(vec![]).unwrap();
        for x in grid(11) {
            for y in grid(11) {
                assert_eq!(eval_ordinal_sum_tnorm(&empty, x, y).unwrap(), x.min(y));
            }
        }
    }

    #[test]
    fn ordinal_sum_tconorm_uses_max_off_the_blocks() {
        let list = SummandList::tconorm(vec![OrdinalEntry::new(0.5, 1.0, bounded_sum())]).unwrap();
        assert!(close(eval_ordinal_sum_tconorm(&list, 0.6, 0.7).unwrap(), 0.5 + 0.5 * 0.6, 1e-15));
        assert_eq!(eval_ordinal_sum_tconorm(&list, 0.2, 0.7).unwrap(), 0.7);
        assert_eq!(eval_ordinal_sum_tconorm(&list, 0.5, 0.7).unwrap(), 0.7);
        assert!(eval_ordinal_sum_tnorm(&list, 0.1, 0.2).is_err());
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        let err = SummandList::tnorm(vec![
            OrdinalEntry::new(0.0, 0.5, product_tnorm()),
            OrdinalEntry::new(0.4, 0.8, lukasiewicz_tnorm()),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::Overlap(..)));
        let wrong_kind = SummandList::tnorm(vec![OrdinalEntry::new(0.0, 0.5, bounded_sum())]);
        assert!(matches!(wrong_kind, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn archimedean_classes() {
        assert_eq!(classify_archimedean(&product_tnorm(), CLASSIFY_GRID).unwrap(), Archimedean::Strict);
        assert_eq!(
            classify_archimedean(&lukasiewicz_tnorm(), CLASSIFY_GRID).unwrap(),
            Archimedean::Nilpotent
        );
        assert_eq!(
            classify_archimedean(&min_tnorm(), CLASSIFY_GRID).unwrap(),
            Archimedean::NotArchimedean
        );
        assert_eq!(
            classify_archimedean(&bounded_sum(), CLASSIFY_GRID).unwrap(),
            Archimedean::Nilpotent
        );
        assert_eq!(
            classify_archimedean(&probabilistic_sum(), CLASSIFY_GRID).unwrap(),
            Archimedean::Strict
        );
    }

    #[test]
    fn c_strictness_of_ordinal_sums() {
        let upper = SummandList::tnorm(vec![OrdinalEntry::new(0.5, 1.0, lukasiewicz_tnorm())]).unwrap();
        assert_eq!(
            classify_c_strict(&ordinal_sum(&upper), CLASSIFY_GRID).unwrap(),
            CStrictness::CStrict
        );
        let lower = SummandList::tnorm(vec![OrdinalEntry::new(0.0, 0.5, lukasiewicz_tnorm())]).unwrap();
        assert_eq!(
            classify_c_strict(&ordinal_sum(&lower), CLASSIFY_GRID).unwrap(),
            CStrictness::CNilpotent
        );
        assert_eq!(
            classify_c_strict(&lukasiewicz_tnorm(), CLASSIFY_GRID).unwrap(),
            CStrictness::CNilpotent
        );
        assert_eq!(classify_c_strict(&product_tnorm(), CLASSIFY_GRID).unwrap(), CStrictness::CStrict);
    }

    #[test]
    fn coarse_grids_report_inconclusive() {
        // Zeros only where x + y <= 0.2: a 5-point grid misses them.
        let narrow = SummandList::tnorm(vec![OrdinalEntry::new(0.0, 0.2, lukasiewicz_tnorm())]).unwrap();
        let op = ordinal_sum(&narrow);
        assert!(matches!(classify_c_strict(&op, 5), Err(Error::Inconclusive { .. })));
        assert_eq!(classify_c_strict(&op, 101).unwrap(), CStrictness::CNilpotent);
    }
}
