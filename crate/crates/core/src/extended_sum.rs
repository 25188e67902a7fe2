//! Extended ordinal sums: an ordinal sum whose rows through certain
//! degenerate summand points are re-filled with `min`/`max` according to
//! admissible choice functions `g` (on `G`) and `h` (on `H`).

use std::fmt;

use crate::error::{check_unit, Error, Result};
use crate::operator::{grid, OpKind, Operator};
use crate::operators::{classify_c_strict, CStrictness, CLASSIFY_GRID};
use crate::ordinal_sum::{OrdinalSumSpec, Summand};
use crate::uninorms::{underlying_tconorm, underlying_tnorm};

/// The interval `[0, upper)` or `[0, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Choice {
    pub upper: f64,
    pub closed: bool,
}

impl Choice {
    pub fn open(upper: f64) -> Self {
        Self { upper, closed: false }
    }

    pub fn closed(upper: f64) -> Self {
        Self { upper, closed: true }
    }

    pub fn contains(&self, y: f64) -> bool {
        y < self.upper || (self.closed && y == self.upper)
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &Choice) -> bool {
        self.upper < other.upper || (self.upper == other.upper && (!self.closed || other.closed))
    }
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0, {}{}", self.upper, if self.closed { "]" } else { ")" })
    }
}

/// Whether a point's row is re-filled by `g` or by `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    G,
    H,
}

/// The admissible choices for one point of `G` or `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFamily {
    pub point: f64,
    pub side: Side,
    /// Summand indices `k` with `b_k = point` (for `G`) or `c_k = point` (for `H`).
    pub indices: Vec<usize>,
    /// Closure points of `{c_k}` (or `{b_k}`) not equal to any `d_i` (or `a_i`).
    pub starred: Vec<f64>,
    pub admissible: Vec<Choice>,
    /// The admissible choice under which the row agrees with the base sum.
    pub default: Option<Choice>,
}

impl PointFamily {
    pub fn is_admissible(&self, choice: &Choice) -> bool {
        self.admissible.contains(choice)
    }
}

/// All admissible choice families of a base ordinal sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceFamilies {
    pub g: Vec<PointFamily>,
    pub h: Vec<PointFamily>,
}

impl ChoiceFamilies {
    pub fn g_points(&self) -> Vec<f64> {
        self.g.iter().map(|f| f.point).collect()
    }

    pub fn h_points(&self) -> Vec<f64> {
        self.h.iter().map(|f| f.point).collect()
    }

    pub fn family(&self, point: f64) -> Option<&PointFamily> {
        self.g.iter().chain(&self.h).find(|f| f.point == point)
    }
}

fn upper_strictness(s: &Summand, grid_n: usize) -> Result<CStrictness> {
    let op = s.operator().expect("non-empty sides carry an operator");
    let tconorm = if op.kind() == OpKind::TConorm {
        op.clone()
    } else {
        underlying_tconorm(op)?
    };
    classify_c_strict(&tconorm, grid_n)
}

fn lower_strictness(s: &Summand, grid_n: usize) -> Result<CStrictness> {
    let op = s.operator().expect("non-empty sides carry an operator");
    let tnorm = if op.kind() == OpKind::TNorm {
        op.clone()
    } else {
        underlying_tnorm(op)?
    };
    classify_c_strict(&tnorm, grid_n)
}

fn push_unique(list: &mut Vec<Choice>, choice: Choice) {
    if !list.contains(&choice) {
        list.push(choice);
    }
}

/// `G`, `H` and their admissible families; classifications use `grid_n`.
pub fn compute_choice_families(spec: &OrdinalSumSpec, grid_n: usize) -> Result<ChoiceFamilies> {
    let e = spec.e();
    let summands = spec.summands();
    let mut g_points: Vec<f64> = summands
        .iter()
        .filter(|s| s.a == s.b && s.b != e && spec.apply(s.b, s.c) == s.b)
        .map(|s| s.b)
        .collect();
    g_points.sort_by(f64::total_cmp);
    g_points.dedup();
    let mut h_points: Vec<f64> = summands
        .iter()
        .filter(|s| s.c == s.d && s.c != e && spec.apply(s.b, s.c) == s.c)
        .map(|s| s.c)
        .collect();
    h_points.sort_by(f64::total_cmp);
    h_points.dedup();

    let mut g = Vec::new();
    for &x in &g_points {
        let indices: Vec<usize> = (0..summands.len()).filter(|&k| summands[k].b == x).collect();
        let mut admissible = Vec::new();
        for &k in &indices {
            let s = &summands[k];
            if s.c == s.d {
                push_unique(&mut admissible, Choice::closed(s.c));
                continue;
            }
            push_unique(&mut admissible, Choice::closed(s.c));
            if upper_strictness(s, grid_n)? == CStrictness::CStrict {
                push_unique(&mut admissible, Choice::open(s.d));
            }
            push_unique(&mut admissible, Choice::closed(s.d));
        }
        let mut closure: Vec<f64> = indices.iter().map(|&k| summands[k].c).collect();
        closure.sort_by(f64::total_cmp);
        closure.dedup();
        let infimum = closure.first().copied().unwrap_or(e);
        let starred: Vec<f64> = closure
            .into_iter()
            .filter(|&c| !summands.iter().any(|s| s.d == c))
            .collect();
        for &c in &starred {
            if c != infimum {
                push_unique(&mut admissible, Choice::open(c));
            }
            push_unique(&mut admissible, Choice::closed(c));
        }
        admissible.sort_by(|p, q| p.upper.total_cmp(&q.upper).then(p.closed.cmp(&q.closed)));
        let default = base_choice(spec, x, &admissible);
        g.push(PointFamily {
            point: x,
            side: Side::G,
            indices,
            starred,
            admissible,
            default,
        });
    }

    let mut h = Vec::new();
    for &x in &h_points {
        let indices: Vec<usize> = (0..summands.len()).filter(|&k| summands[k].c == x).collect();
        let mut admissible = Vec::new();
        for &k in &indices {
            let s = &summands[k];
            push_unique(&mut admissible, Choice::open(s.a));
            if s.a == s.b {
                continue;
            }
            if lower_strictness(s, grid_n)? == CStrictness::CStrict {
                push_unique(&mut admissible, Choice::closed(s.a));
            }
            push_unique(&mut admissible, Choice::open(s.b));
        }
        let mut closure: Vec<f64> = indices.iter().map(|&k| summands[k].b).collect();
        closure.sort_by(f64::total_cmp);
        closure.dedup();
        let supremum = closure.last().copied().unwrap_or(e);
        let starred: Vec<f64> = closure
            .into_iter()
            .filter(|&b| !summands.iter().any(|s| s.a == b))
            .collect();
        for &b in &starred {
            push_unique(&mut admissible, Choice::open(b));
            if b != supremum {
                push_unique(&mut admissible, Choice::closed(b));
            }
        }
        admissible.sort_by(|p, q| p.upper.total_cmp(&q.upper).then(p.closed.cmp(&q.closed)));
        let default = base_choice(spec, x, &admissible);
        h.push(PointFamily {
            point: x,
            side: Side::H,
            indices,
            starred,
            admissible,
            default,
        });
    }
    Ok(ChoiceFamilies { g, h })
}

/// The admissible choice whose `min`/`max` pattern reproduces the base row
/// through `x` on the breakpoint lattice and a uniform grid.
fn base_choice(spec: &OrdinalSumSpec, x: f64, admissible: &[Choice]) -> Option<Choice> {
    let mut probes = spec.probe_points();
    probes.extend(grid(201));
    admissible.iter().copied().find(|choice| {
        probes.iter().all(|&y| {
            let expected = if choice.contains(y) { x.min(y) } else { x.max(y) };
            spec.apply(x, y) == expected
        })
    })
}

/// A base ordinal sum together with the choice functions `g` and `h`.
#[derive(Debug, Clone)]
pub struct ExtendedOrdinalSumSpec {
    base: OrdinalSumSpec,
    families: ChoiceFamilies,
    g: Vec<(f64, Choice)>,
    h: Vec<(f64, Choice)>,
}

impl ExtendedOrdinalSumSpec {
    /// Points of `G`/`H` missing from `g`/`h` take their default choice.
    pub fn new(base: OrdinalSumSpec, g: &[(f64, Choice)], h: &[(f64, Choice)]) -> Result<Self> {
        Self::with_grid(base, g, h, CLASSIFY_GRID)
    }

    pub fn with_grid(
        base: OrdinalSumSpec,
        g: &[(f64, Choice)],
        h: &[(f64, Choice)],
        grid_n: usize,
    ) -> Result<Self> {
        let families = compute_choice_families(&base, grid_n)?;
        let g = assign(&families.g, g)?;
        let h = assign(&families.h, h)?;
        Ok(Self {
            base,
            families,
            g,
            h,
        })
    }

    pub fn base(&self) -> &OrdinalSumSpec {
        &self.base
    }

    pub fn families(&self) -> &ChoiceFamilies {
        &self.families
    }

    pub fn g(&self) -> &[(f64, Choice)] {
        &self.g
    }

    pub fn h(&self) -> &[(f64, Choice)] {
        &self.h
    }

    fn lookup(list: &[(f64, Choice)], p: f64) -> Option<Choice> {
        list.iter().find(|(q, _)| *q == p).map(|&(_, c)| c)
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        let fill = |choice: Choice, row: f64, other: f64| {
            if choice.contains(other) {
                row.min(other)
            } else {
                row.max(other)
            }
        };
        if let Some(choice) = Self::lookup(&self.g, x) {
            return fill(choice, x, y);
        }
        if let Some(choice) = Self::lookup(&self.g, y) {
            return fill(choice, y, x);
        }
        if let Some(choice) = Self::lookup(&self.h, x) {
            return fill(choice, x, y);
        }
        if let Some(choice) = Self::lookup(&self.h, y) {
            return fill(choice, y, x);
        }
        self.base.apply(x, y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x, y))
    }

    pub fn to_operator(&self) -> Operator {
        let spec = self.clone();
        let choices: Vec<String> = self
            .g
            .iter()
            .map(|(p, c)| format!("g({p}) = {c}"))
            .chain(self.h.iter().map(|(p, c)| format!("h({p}) = {c}")))
            .collect();
        let label = if choices.is_empty() {
            self.base.label()
        } else {
            format!("{} with {}", self.base.label(), choices.join(", "))
        };
        Operator::new(OpKind::Uninorm, self.base.e(), label, move |x, y| spec.apply(x, y))
            .with_numeric_inversion(self.base.uses_numeric_inversion())
    }
}

fn assign(families: &[PointFamily], given: &[(f64, Choice)]) -> Result<Vec<(f64, Choice)>> {
    for (p, _) in given {
        if !families.iter().any(|f| f.point == *p) {
            return Err(Error::InvalidChoice {
                point: *p,
                detail: "the point is not in the domain of this choice function".into(),
            });
        }
    }
    families
        .iter()
        .map(|family| {
            let chosen = given.iter().find(|(p, _)| *p == family.point).map(|&(_, c)| c);
            let choice = match chosen.or(family.default) {
                Some(c) => c,
                None => {
                    return Err(Error::InvalidChoice {
                        point: family.point,
                        detail: "no choice given and none reproduces the base sum".into(),
                    })
                }
            };
            if !family.is_admissible(&choice) {
                let options: Vec<String> = family.admissible.iter().map(Choice::to_string).collect();
                return Err(Error::InvalidChoice {
                    point: family.point,
                    detail: format!("{choice} is not one of {}", options.join(", ")),
                });
            }
            Ok((family.point, choice))
        })
        .collect()
}

/// Evaluates the extended sum after checking the domain.
pub fn eval_extended_sum(espec: &ExtendedOrdinalSumSpec, x: f64, y: f64) -> Result<f64> {
    espec.eval(x, y)
}

/// A sampled point where the extended sum differs from its base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffPoint {
    pub x: f64,
    pub y: f64,
    pub base: f64,
    pub extended: f64,
}

/// Every grid point where the extended sum and its base differ. Each such
/// point must lie on a row or column of `G ∪ H` and satisfy
/// `U(x,y) + V(x,y) = x + y`.
pub fn diff_extended_vs_base(espec: &ExtendedOrdinalSumSpec, grid_n: usize) -> Result<Vec<DiffPoint>> {
    let points = grid(grid_n);
    let special: Vec<f64> = espec
        .g
        .iter()
        .chain(&espec.h)
        .map(|&(p, _)| p)
        .collect();
    let mut diffs = Vec::new();
    for &x in &points {
        for &y in &points {
            let base = espec.base.apply(x, y);
            let extended = espec.apply(x, y);
            if base == extended {
                continue;
            }
            if !(special.contains(&x) || special.contains(&y)) {
                return Err(Error::Invariant {
                    x,
                    y,
                    detail: format!("values {base} and {extended} differ off the rows of G and H"),
                });
            }
            let defect = (base + extended - (x + y)).abs();
            if defect > 1e-12 {
                return Err(Error::Invariant {
                    x,
                    y,
                    detail: format!("U + V - (x + y) = {defect:e}"),
                });
            }
            diffs.push(DiffPoint { x, y, base, extended });
        }
    }
    Ok(diffs)
}
