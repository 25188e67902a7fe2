#![allow(dead_code)]

use uninorm::analysis::SummandKind;
use uninorm::extended_sum::{Choice, ExtendedOrdinalSumSpec};
use uninorm::generator::Generator;
use uninorm::operators::{
    bounded_sum, dualize, generated_tconorm, generated_tnorm, lukasiewicz_tnorm, ordinal_sum,
    probabilistic_sum, product_tnorm, OrdinalEntry, SummandList,
};
use uninorm::ordinal_sum::{OrdinalSumSpec, Summand};
use uninorm::uninorms::{
    border_variant_star, make_representable, make_s_internal, make_u_max, make_u_min, BoundaryRule,
    InternalBoundary, BORDER_GRID,
};
use uninorm::{Annihilator, Operator};

pub const STACKED_E: f64 = 0.4;
pub const STACKED_B: f64 = 0.7;

/// A summand we expect decomposition to recover.
#[derive(Debug, Clone, Copy)]
pub struct Expected {
    pub bounds: (f64, f64, f64, f64),
    pub kind: SummandKind,
}

const fn expect(a: f64, b: f64, c: f64, d: f64, kind: SummandKind) -> Expected {
    Expected {
        bounds: (a, b, c, d),
        kind,
    }
}

pub struct Fixture {
    pub name: String,
    pub op: Operator,
    /// Present for uninorms assembled as ordinal sums on a 1/20 lattice.
    pub summands: Option<Vec<Expected>>,
    /// The `g(0)` choice an extended sum was built with.
    pub g_zero: Option<Choice>,
}

impl Fixture {
    fn new(name: impl Into<String>, op: Operator) -> Self {
        Self {
            name: name.into(),
            op,
            summands: None,
            g_zero: None,
        }
    }

    fn expecting(mut self, summands: Vec<Expected>) -> Self {
        self.summands = Some(summands);
        self
    }

    pub fn is_uninorm(&self) -> bool {
        self.op.is_proper_uninorm()
    }

    pub fn assoc_tol(&self) -> f64 {
        if self.op.uses_numeric_inversion() {
            1e-7
        } else {
            1e-9
        }
    }
}

pub fn logistic_half(policy: Annihilator) -> Operator {
    make_representable(&Generator::logistic(0.5).unwrap(), policy).unwrap()
}

pub fn stacked_base() -> OrdinalSumSpec {
    OrdinalSumSpec::new(
        STACKED_E,
        vec![
            Summand::new(0.0, STACKED_E, STACKED_E, STACKED_E, product_tnorm()),
            Summand::new(0.0, 0.0, STACKED_E, STACKED_B, probabilistic_sum()),
            Summand::new(0.0, 0.0, STACKED_B, 1.0, bounded_sum()),
        ],
    )
    .unwrap()
}

/// The four admissible `g(0)` values, default first.
pub fn stacked_choices() -> [Choice; 4] {
    [
        Choice::closed(STACKED_E),
        Choice::open(STACKED_B),
        Choice::closed(STACKED_B),
        Choice::closed(1.0),
    ]
}

pub fn stacked(choice: Choice) -> ExtendedOrdinalSumSpec {
    ExtendedOrdinalSumSpec::new(stacked_base(), &[(0.0, choice)], &[]).unwrap()
}

pub fn nested_spec() -> OrdinalSumSpec {
    OrdinalSumSpec::new(
        0.5,
        vec![
            Summand::new(0.25, 0.5, 0.5, 0.75, logistic_half(Annihilator::Conjunctive)),
            Summand::new(0.0, 0.25, 0.75, 0.75, product_tnorm()),
            Summand::new(0.0, 0.0, 0.75, 1.0, probabilistic_sum()),
        ],
    )
    .unwrap()
}

/// The construction matrix every acceptance criterion draws from.
pub fn fixtures() -> Vec<Fixture> {
    use SummandKind::*;
    let mut out = vec![
        Fixture::new("product", product_tnorm()),
        Fixture::new("lukasiewicz", lukasiewicz_tnorm()),
        Fixture::new("probabilistic_sum", probabilistic_sum()),
        Fixture::new("bounded_sum", bounded_sum()),
        Fixture::new("yager(2)", generated_tnorm(&Generator::yager(2.0).unwrap()).unwrap()),
        Fixture::new(
            "aczel_alsina(2) dual",
            dualize(&generated_tnorm(&Generator::aczel_alsina(2.0).unwrap()).unwrap()).unwrap(),
        ),
        Fixture::new(
            "hamacher conorm",
            generated_tconorm(&Generator::hamacher().dual().unwrap()).unwrap(),
        ),
        Fixture::new(
            "ordinal sum tnorm",
            ordinal_sum(
                &SummandList::tnorm(vec![
                    OrdinalEntry::new(0.0, 0.3, product_tnorm()),
                    OrdinalEntry::new(0.5, 0.9, lukasiewicz_tnorm()),
                ])
                .unwrap(),
            ),
        ),
        Fixture::new("representable conjunctive", logistic_half(Annihilator::Conjunctive)).expecting(
            vec![expect(0.0, 0.5, 0.5, 1.0, Representable)],
        ),
        Fixture::new("representable disjunctive", logistic_half(Annihilator::Disjunctive)).expecting(
            vec![expect(0.0, 0.5, 0.5, 1.0, Representable)],
        ),
        Fixture::new(
            "log_odds_linear(2) representable",
            make_representable(&Generator::log_odds_linear(2.0).unwrap(), Annihilator::Conjunctive)
                .unwrap(),
        )
        .expecting(vec![expect(0.0, 0.5, 0.5, 1.0, Representable)]),
        Fixture::new(
            "u_min(product, probabilistic_sum, 0.5)",
            make_u_min(&product_tnorm(), &probabilistic_sum(), 0.5).unwrap(),
        )
        .expecting(vec![
            expect(0.0, 0.5, 1.0, 1.0, ArchimedeanTNorm),
            expect(0.5, 0.5, 0.5, 1.0, ArchimedeanTConorm),
        ]),
        Fixture::new(
            "u_max(lukasiewicz, bounded_sum, 0.4)",
            make_u_max(&lukasiewicz_tnorm(), &bounded_sum(), 0.4).unwrap(),
        )
        .expecting(vec![
            expect(0.0, 0.4, 0.4, 0.4, ArchimedeanTNorm),
            expect(0.0, 0.0, 0.4, 1.0, ArchimedeanTConorm),
        ]),
        Fixture::new(
            "s_internal(1 - x)",
            make_s_internal(&InternalBoundary::complement(BoundaryRule::TakeMin)),
        )
        .expecting(vec![expect(0.0, 0.5, 0.5, 1.0, SInternal)]),
        Fixture::new(
            "star(u_min(product, probabilistic_sum, 0.5))",
            border_variant_star(
                &make_u_min(&product_tnorm(), &probabilistic_sum(), 0.5).unwrap(),
                BORDER_GRID,
            )
            .op,
        ),
        Fixture::new("nested representable", nested_spec().to_operator()).expecting(vec![
            expect(0.25, 0.5, 0.5, 0.75, Representable),
            expect(0.0, 0.25, 0.75, 0.75, ArchimedeanTNorm),
            expect(0.0, 0.0, 0.75, 1.0, ArchimedeanTConorm),
        ]),
    ];
    for choice in stacked_choices() {
        let mut fixture = Fixture::new(format!("stacked conorms, g(0) = {choice}"), stacked(choice).to_operator())
            .expecting(vec![
                expect(0.0, STACKED_E, STACKED_E, STACKED_E, ArchimedeanTNorm),
                expect(0.0, 0.0, STACKED_E, STACKED_B, ArchimedeanTConorm),
                expect(0.0, 0.0, STACKED_B, 1.0, ArchimedeanTConorm),
            ]);
        fixture.g_zero = Some(choice);
        out.push(fixture);
    }
    out
}

/// Fixtures whose operator is a proper uninorm with continuous underlying operations.
pub fn uninorm_fixtures() -> Vec<Fixture> {
    fixtures()
        .into_iter()
        .filter(|f| f.is_uninorm() && !f.name.starts_with("star("))
        .collect()
}
