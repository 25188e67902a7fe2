use std::fmt;

use rayon::prelude::*;

use crate::operator::{grid, Operator};

/// Monotonicity and neutrality are held to this bound even when the
/// associativity tolerance is looser.
const SHAPE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Commutativity,
    Associativity,
    Monotonicity,
    Neutrality,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Neutrality => "neutrality",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The worst sampled violation of one axiom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub max_violation: f64,
    /// `(x, y, z)`; `z` is unused (zero) for the two-argument axioms.
    pub witness: (f64, f64, f64),
    pub tol: f64,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.max_violation <= self.tol
    }

    /// `axiom=<name> max_violation=<v> witness=<x,y,z>`.
    pub fn report_line(&self) -> String {
        let (x, y, z) = self.witness;
        format!(
            "axiom={} max_violation={} witness={},{},{}",
            self.axiom,
            format_sig(self.max_violation),
            format_sig(x),
            format_sig(y),
            format_sig(z)
        )
    }
}

/// Twelve significant digits, trailing zeros dropped.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let s = format!("{:.11e}", v);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

/// Per-axiom outcomes for one handle.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
    pub pair_grid: usize,
    pub triple_grid: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is checked")
    }

    pub fn report_lines(&self) -> Vec<String> {
        self.outcomes.iter().map(AxiomOutcome::report_line).collect()
    }
}

fn worst<I>(items: I) -> (f64, (f64, f64, f64))
where
    I: ParallelIterator<Item = (f64, (f64, f64, f64))>,
{
    items.reduce(
        || (0.0, (0.0, 0.0, 0.0)),
        |p, q| if q.0 > p.0 || q.0.is_nan() { q } else { p },
    )
}

/// Checks the uninorm axioms on sampled points.
///
/// Commutativity must hold exactly; associativity is checked on a
/// `(grid_n + 1) / 2` point ternary grid against `tol`; monotonicity and
/// neutrality on the full pair grid against `min(tol, 1e-9)`. The neutral
/// element is the one the handle declares.
///
/// ```
/// use uninorm::analysis::check_axioms;
/// use uninorm::operators::min_tnorm;
///
/// let report = check_axioms(&min_tnorm(), 101, 1e-9);
/// assert!(report.passed());
/// assert_eq!(report.triple_grid, 51);
/// ```
pub fn check_axioms(op: &Operator, grid_n: usize, tol: f64) -> AxiomReport {
    let pairs = grid(grid_n);
    let triple_grid = grid_n.div_ceil(2);
    let triples = grid(triple_grid.max(2));
    let e = op.neutral();
    let shape_tol = tol.min(SHAPE_TOL);

    let commutativity = worst(pairs.par_iter().flat_map_iter(|&x| {
        pairs.iter().map(move |&y| {
            let v = (op.apply(x, y) - op.apply(y, x)).abs();
            (v, (x, y, 0.0))
        })
    }));

    // Section values are shared between the two sides of each triple.
    let table: Vec<Vec<f64>> = triples
        .par_iter()
        .map(|&x| triples.iter().map(|&y| op.apply(x, y)).collect())
        .collect();
    let n = triples.len();
    let associativity = worst((0..n).into_par_iter().flat_map_iter(|i| {
        let table = &table;
        let triples = &triples;
        (0..n).flat_map(move |j| {
            (0..n).map(move |k| {
                let left = op.apply(table[i][j], triples[k]);
                let right = op.apply(triples[i], table[j][k]);
                ((left - right).abs(), (triples[i], triples[j], triples[k]))
            })
        })
    }));

    let monotonicity = worst(pairs.par_iter().map(|&x| {
        let mut best = (0.0, (x, 0.0, 0.0));
        for w in pairs.windows(2) {
            let drop = op.apply(x, w[0]) - op.apply(x, w[1]);
            if drop > best.0 {
                best = (drop, (x, w[0], w[1]));
            }
        }
        best
    }));

    let neutrality = worst(pairs.par_iter().map(|&x| {
        ((op.apply(e, x) - x).abs(), (e, x, 0.0))
    }));

    let outcome = |axiom, (max_violation, witness), tol| AxiomOutcome {
        axiom,
        max_violation,
        witness,
        tol,
    };
    AxiomReport {
        outcomes: vec![
            outcome(Axiom::Commutativity, commutativity, 0.0),
            outcome(Axiom::Associativity, associativity, tol),
            outcome(Axiom::Monotonicity, monotonicity, shape_tol),
            outcome(Axiom::Neutrality, neutrality, shape_tol),
        ],
        pair_grid: grid_n,
        triple_grid: n,
    }
}
