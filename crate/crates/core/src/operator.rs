//! The black-box operator handle shared by every construction.
//!
//! An [`Operator`] is a binary map on the unit square together with a
//! declared neutral element and a kind tag. Evaluation always orders its
//! arguments before calling the underlying closure, so every handle is
//! exactly commutative by construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_unit, Result};

/// Which family a handle claims to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// Neutral element 1.
    TNorm,
    /// Neutral element 0.
    TConorm,
    /// Neutral element anywhere in the unit interval.
    Uninorm,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::TNorm => "t-norm",
            OpKind::TConorm => "t-conorm",
            OpKind::Uninorm => "uninorm",
        })
    }
}

/// The value a uninorm takes at `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Annihilator {
    /// `U(1, 0) = 0`.
    Conjunctive,
    /// `U(1, 0) = 1`.
    Disjunctive,
}

impl Annihilator {
    pub fn value(self) -> f64 {
        match self {
            Annihilator::Conjunctive => 0.0,
            Annihilator::Disjunctive => 1.0,
        }
    }
}

type BinaryFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A commutative binary operation on `[0,1]` with a declared neutral element.
#[derive(Clone)]
pub struct Operator {
    inner: Arc<BinaryFn>,
    neutral: f64,
    kind: OpKind,
    label: Arc<str>,
    numeric: bool,
    dual_of: Option<Arc<Operator>>,
}

impl Operator {
    /// Wraps `f`, which is only ever called with `x <= y`.
    pub fn new<F>(kind: OpKind, neutral: f64, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            inner: Arc::new(f),
            neutral,
            kind,
            label: Arc::from(label.into()),
            numeric: false,
            dual_of: None,
        }
    }

    pub(crate) fn with_dual_of(mut self, source: &Operator) -> Self {
        self.dual_of = Some(Arc::new(source.clone()));
        self
    }

    pub(crate) fn dual_of(&self) -> Option<&Operator> {
        self.dual_of.as_deref()
    }

    /// Marks the handle as relying on numeric inversion somewhere in its
    /// evaluation path, which widens its default axiom tolerance.
    pub fn with_numeric_inversion(mut self, numeric: bool) -> Self {
        self.numeric = self.numeric || numeric;
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = Arc::from(label.into());
        self
    }

    /// Evaluates without domain checks.
    #[inline]
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            (self.inner)(x, y)
        } else {
            (self.inner)(y, x)
        }
    }

    /// Evaluates after checking both arguments lie in `[0,1]`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        check_unit(x)?;
        check_unit(y)?;
        Ok(self.apply(x, y))
    }

    pub fn neutral(&self) -> f64 {
        self.neutral
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn uses_numeric_inversion(&self) -> bool {
        self.numeric
    }

    /// `1e-9` for closed-form evaluation paths, `1e-7` once bisection is involved.
    pub fn default_tolerance(&self) -> f64 {
        if self.numeric {
            1e-7
        } else {
            1e-9
        }
    }

    /// True when the neutral element lies strictly inside the unit interval.
    pub fn is_proper_uninorm(&self) -> bool {
        self.kind == OpKind::Uninorm && self.neutral > 0.0 && self.neutral < 1.0
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .field("neutral", &self.neutral)
            .field("numeric", &self.numeric)
            .finish()
    }
}

/// `n` uniformly spaced points `i / (n - 1)` covering `[0,1]`.
pub fn grid(n: usize) -> Vec<f64> {
    assert!(n >= 2, "a grid needs at least two points");
    let last = (n - 1) as f64;
    (0..n).map(|i| i as f64 / last).collect()
}
