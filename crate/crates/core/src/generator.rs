//! Additive generators and their pseudo-inverses.
//!
//! Extended-real values are IEEE infinities: a t-norm generator may take
//! `+inf` at 0, and a bipolar generator is `-inf` at 0 and `+inf` at 1.
//! Ordinary float addition already gives `inf + s = inf` for finite `s`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Argument tolerance of the bisection inverse.
pub const INVERSION_TOL: f64 = 1e-12;
/// Iteration cap of the bisection inverse.
pub const INVERSION_MAX_ITER: usize = 200;

const MONOTONICITY_SAMPLES: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Decreasing, `t(1) = 0`; generates t-norms.
    TNorm,
    /// Increasing, `c(0) = 0`; generates t-conorms.
    TConorm,
    /// Increasing, `f(0) = -inf`, `f(1) = +inf`; generates representable uninorms.
    Bipolar,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::TNorm => "t-norm",
            GeneratorKind::TConorm => "t-conorm",
            GeneratorKind::Bipolar => "bipolar",
        })
    }
}

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A continuous strictly monotone map from `[0,1]` into the extended reals.
#[derive(Clone)]
pub struct Generator {
    kind: GeneratorKind,
    name: Arc<str>,
    forward: Arc<ScalarFn>,
    inverse: Option<Arc<ScalarFn>>,
    at_zero: f64,
    at_one: f64,
}

impl Generator {
    /// Builds a generator from its forward map and, when known, a closed-form
    /// inverse. Endpoints and sampled strict monotonicity are validated.
    pub fn new<F>(
        kind: GeneratorKind,
        name: impl Into<String>,
        forward: F,
        inverse: Option<Arc<ScalarFn>>,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name: String = name.into();
        let at_zero = forward(0.0);
        let at_one = forward(1.0);
        let endpoints_ok = match kind {
            GeneratorKind::TNorm => at_one == 0.0 && at_zero > 0.0,
            GeneratorKind::TConorm => at_zero == 0.0 && at_one > 0.0,
            GeneratorKind::Bipolar => at_zero == f64::NEG_INFINITY && at_one == f64::INFINITY,
        };
        if !endpoints_ok {
            return Err(Error::Generator(format!(
                "{name}: endpoint values ({at_zero}, {at_one}) do not fit a {kind} generator"
            )));
        }
        let last = (MONOTONICITY_SAMPLES - 1) as f64;
        let mut prev = at_zero;
        for i in 1..MONOTONICITY_SAMPLES {
            let x = i as f64 / last;
            let value = forward(x);
            let ordered = match kind {
                GeneratorKind::TNorm => value < prev,
                GeneratorKind::TConorm | GeneratorKind::Bipolar => value > prev,
            };
            if !ordered || value.is_nan() {
                return Err(Error::Generator(format!(
                    "{name}: not strictly monotone near x = {x}"
                )));
            }
            prev = value;
        }
        Ok(Self {
            kind,
            name: Arc::from(name),
            forward: Arc::new(forward),
            inverse,
            at_zero,
            at_one,
        })
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `(g(0), g(1))`.
    pub fn endpoint_values(&self) -> (f64, f64) {
        (self.at_zero, self.at_one)
    }

    pub fn is_closed_form(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    /// Pseudo-inverse: values beyond the range clamp to the matching endpoint.
    pub fn inverse(&self, s: f64) -> f64 {
        match self.kind {
            GeneratorKind::TNorm => {
                if s <= 0.0 {
                    return 1.0;
                }
                if s >= self.at_zero {
                    return 0.0;
                }
            }
            GeneratorKind::TConorm => {
                if s <= 0.0 {
                    return 0.0;
                }
                if s >= self.at_one {
                    return 1.0;
                }
            }
            GeneratorKind::Bipolar => {
                if s == f64::NEG_INFINITY {
                    return 0.0;
                }
                if s == f64::INFINITY {
                    return 1.0;
                }
            }
        }
        match &self.inverse {
            Some(inv) => inv(s).clamp(0.0, 1.0),
            None => self.bisect(s),
        }
    }

    fn bisect(&self, s: f64) -> f64 {
        let increasing = self.kind != GeneratorKind::TNorm;
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..INVERSION_MAX_ITER {
            if hi - lo <= INVERSION_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let below = (self.forward)(mid) < s;
            if below == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `x -> t(1 - x)`: the t-conorm generator dual to a t-norm generator.
    pub fn dual(&self) -> Result<Self> {
        if self.kind != GeneratorKind::TNorm {
            return Err(Error::Generator(format!(
                "{}: only t-norm generators have a dual here",
                self.name
            )));
        }
        let forward = Arc::clone(&self.forward);
        let inverse = self.inverse.clone().map(|inv| {
            Arc::new(move |s: f64| 1.0 - inv(s)) as Arc<ScalarFn>
        });
        Self::new(
            GeneratorKind::TConorm,
            format!("dual({})", self.name),
            move |x| forward(1.0 - x),
            inverse,
        )
    }

    /// `-ln x`, generating the product t-norm.
    pub fn product() -> Self {
        closed(GeneratorKind::TNorm, "product", |x: f64| -x.ln(), |s: f64| (-s).exp())
    }

    /// `1 - x`, generating the Łukasiewicz t-norm.
    pub fn lukasiewicz() -> Self {
        closed(GeneratorKind::TNorm, "lukasiewicz", |x: f64| 1.0 - x, |s: f64| 1.0 - s)
    }

    /// `(1 - x) / x`, generating the Hamacher product.
    pub fn hamacher() -> Self {
        closed(
            GeneratorKind::TNorm,
            "hamacher",
            |x: f64| (1.0 - x) / x,
            |s: f64| 1.0 / (1.0 + s),
        )
    }

    /// `(1 - x)^p`, the Yager family; nilpotent for every `p > 0`.
    pub fn yager(p: f64) -> Result<Self> {
        positive_parameter("yager", p)?;
        Ok(closed(
            GeneratorKind::TNorm,
            format!("yager({p})"),
            move |x: f64| (1.0 - x).powf(p),
            move |s: f64| 1.0 - s.powf(1.0 / p),
        ))
    }

    /// `(-ln x)^p`, the Aczél–Alsina family; strict for every `p > 0`.
    pub fn aczel_alsina(p: f64) -> Result<Self> {
        positive_parameter("aczel_alsina", p)?;
        Ok(closed(
            GeneratorKind::TNorm,
            format!("aczel_alsina({p})"),
            move |x: f64| (-x.ln()).powf(p),
            move |s: f64| (-s.powf(1.0 / p)).exp(),
        ))
    }

    /// `-ln x + (1 - x)`: strict, without a closed-form inverse.
    pub fn log_linear() -> Self {
        Self::new(
            GeneratorKind::TNorm,
            "log_linear",
            |x: f64| -x.ln() + (1.0 - x),
            None,
        )
        .expect("log_linear generator is valid")
    }

    /// `-ln(1 - x)`, generating the probabilistic sum.
    pub fn probabilistic_sum() -> Self {
        closed(
            GeneratorKind::TConorm,
            "probabilistic_sum",
            |x: f64| -(1.0 - x).ln(),
            |s: f64| -(-s).exp_m1(),
        )
    }

    /// `x`, generating the bounded sum.
    pub fn bounded_sum() -> Self {
        closed(GeneratorKind::TConorm, "bounded_sum", |x: f64| x, |s: f64| s)
    }

    /// `ln(x (1 - e) / (e (1 - x)))`, whose representable uninorm has neutral element `e`.
    pub fn logistic(e: f64) -> Result<Self> {
        if !(e > 0.0 && e < 1.0) {
            return Err(Error::Generator(format!(
                "logistic: neutral element {e} must lie in (0, 1)"
            )));
        }
        let odds = e / (1.0 - e);
        Ok(closed(
            GeneratorKind::Bipolar,
            format!("logistic({e})"),
            move |x: f64| {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else if x >= 1.0 {
                    f64::INFINITY
                } else {
                    (x / (1.0 - x) / odds).ln()
                }
            },
            move |s: f64| {
                if s == 0.0 {
                    e
                } else if s > 0.0 {
                    1.0 / (1.0 + (-s).exp() / odds)
                } else {
                    let r = odds * s.exp();
                    r / (1.0 + r)
                }
            },
        ))
    }

    /// `ln(x / (1 - x)) + w (2x - 1)`: bipolar with neutral element 1/2,
    /// inverted numerically.
    pub fn log_odds_linear(w: f64) -> Result<Self> {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(Error::Generator(format!(
                "log_odds_linear: weight {w} must be finite and non-negative"
            )));
        }
        Self::new(
            GeneratorKind::Bipolar,
            format!("log_odds_linear({w})"),
            move |x: f64| {
                if x <= 0.0 {
                    f64::NEG_INFINITY
                } else if x >= 1.0 {
                    f64::INFINITY
                } else {
                    (x / (1.0 - x)).ln() + w * (2.0 * x - 1.0)
                }
            },
            None,
        )
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Generator")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("endpoints", &(self.at_zero, self.at_one))
            .field("closed_form", &self.is_closed_form())
            .finish()
    }
}

fn closed<F, G>(kind: GeneratorKind, name: impl Into<String>, forward: F, inverse: G) -> Generator
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    G: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let name = name.into();
    Generator::new(kind, name.clone(), forward, Some(Arc::new(inverse)))
        .unwrap_or_else(|err| panic!("built-in generator {name} is invalid: {err}"))
}

fn positive_parameter(family: &str, p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::Generator(format!(
            "{family}: parameter {p} must be finite and positive"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::grid;

    fn all_families() -> Vec<Generator> {
        vec![
            Generator::product(),
            Generator::lukasiewicz(),
            Generator::hamacher(),
            Generator::yager(2.0).unwrap(),
            Generator::aczel_alsina(0.5).unwrap(),
            Generator::log_linear(),
            Generator::probabilistic_sum(),
            Generator::bounded_sum(),
            Generator::product().dual().unwrap(),
            Generator::logistic(0.5).unwrap(),
            Generator::logistic(0.3).unwrap(),
            Generator::log_odds_linear(1.5).unwrap(),
        ]
    }

    #[test]
    fn inverse_undoes_forward_on_the_grid() {
        for g in all_families() {
            let tol = if g.is_closed_form() { 1e-9 } else { 1e-7 };
            for x in grid(101) {
                let back = g.inverse(g.eval(x));
                assert!((back - x).abs() <= tol, "{}: {x} -> {back}", g.name());
            }
        }
    }

    #[test]
    fn tnorm_inverse_clamps_past_the_zero_value() {
        let g = Generator::lukasiewicz();
        assert_eq!(g.inverse(1.0), 0.0);
        assert_eq!(g.inverse(7.5), 0.0);
        assert_eq!(g.inverse(-1.0), 1.0);
        assert_eq!(Generator::product().inverse(f64::INFINITY), 0.0);
    }

    #[test]
    fn tconorm_inverse_clamps_past_the_one_value() {
        let g = Generator::bounded_sum();
        assert_eq!(g.inverse(1.7), 1.0);
        assert_eq!(g.inverse(0.0), 0.0);
    }

    #[test]
    fn endpoint_values_follow_the_kind() {
        assert_eq!(Generator::product().endpoint_values(), (f64::INFINITY, 0.0));
        assert_eq!(Generator::lukasiewicz().endpoint_values(), (1.0, 0.0));
        let f = Generator::logistic(0.5).unwrap();
        assert_eq!(f.endpoint_values(), (f64::NEG_INFINITY, f64::INFINITY));
        assert_eq!(f.eval(0.5), 0.0);
    }

    #[test]
    fn bad_generators_are_rejected() {
        let not_zero_at_one = Generator::new(GeneratorKind::TNorm, "bad", |x| 2.0 - x, None);
        assert!(not_zero_at_one.is_err());
        let wrong_direction = Generator::new(GeneratorKind::TConorm, "bad", |x| -x, None);
        assert!(wrong_direction.is_err());
        let flat = Generator::new(GeneratorKind::TNorm, "flat", |x| (0.5 - x).max(0.0), None);
        assert!(flat.is_err());
        let finite_bipolar = Generator::new(GeneratorKind::Bipolar, "bad", |x| x - 0.5, None);
        assert!(finite_bipolar.is_err());
        assert!(Generator::logistic(1.0).is_err());
        assert!(Generator::yager(0.0).is_err());
    }

    #[test]
    fn numeric_inverse_respects_the_bisection_tolerance() {
        let g = Generator::log_linear();
        assert!(!g.is_closed_form());
        let x = 0.123_456_789;
        assert!((g.inverse(g.eval(x)) - x).abs() <= 2.0 * INVERSION_TOL);
    }
}
