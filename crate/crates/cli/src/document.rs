//! JSON construction documents.
//!
//! A document is either a single construction node or an object with a
//! `root` node and a table of named `definitions` that nodes may point at
//! with `{"kind": "ref", "name": ...}`. Every node carries a `kind`
//! discriminator.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use uninorm::extended_sum::{Choice, ExtendedOrdinalSumSpec};
use uninorm::generator::Generator;
use uninorm::operators::{
    bounded_sum, dualize, generated_tconorm, generated_tnorm, lukasiewicz_tnorm, max_tconorm,
    min_tnorm, ordinal_sum, probabilistic_sum, product_tnorm, OrdinalEntry, SummandList,
};
use uninorm::ordinal_sum::{OrdinalSumSpec, Summand};
use uninorm::uninorms::{
    border_variant_star, border_variant_substar, make_representable, make_s_internal, make_u_max,
    make_u_min, BoundaryRule, InternalBoundary, BORDER_GRID,
};
use uninorm::{Annihilator, Operator};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub definitions: BTreeMap<String, Node>,
    pub root: Node,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Node {
    Min {},
    Max {},
    Product {},
    Lukasiewicz {},
    ProbabilisticSum {},
    BoundedSum {},
    GeneratedTnorm {
        generator: GeneratorSpec,
    },
    GeneratedTconorm {
        generator: GeneratorSpec,
    },
    Dual {
        of: Box<Node>,
    },
    OrdinalSumTnorm {
        entries: Vec<EntrySpec>,
    },
    OrdinalSumTconorm {
        entries: Vec<EntrySpec>,
    },
    Representable {
        generator: GeneratorSpec,
        #[serde(default)]
        annihilator: AnnihilatorSpec,
    },
    UMin {
        tnorm: Box<Node>,
        tconorm: Box<Node>,
        neutral: f64,
    },
    UMax {
        tnorm: Box<Node>,
        tconorm: Box<Node>,
        neutral: f64,
    },
    SInternal {
        curve: CurveSpec,
        #[serde(default)]
        rule: RuleSpec,
    },
    OrdinalSum {
        neutral: f64,
        summands: Vec<SummandSpec>,
    },
    ExtendedSum {
        base: Box<Node>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        g: Vec<ChoiceSpec>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        h: Vec<ChoiceSpec>,
    },
    Star {
        of: Box<Node>,
    },
    Substar {
        of: Box<Node>,
    },
    Ref {
        name: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    Product {},
    Lukasiewicz {},
    Hamacher {},
    Yager { p: f64 },
    AczelAlsina { p: f64 },
    LogLinear {},
    ProbabilisticSum {},
    BoundedSum {},
    Logistic { neutral: f64 },
    LogOddsLinear { weight: f64 },
    Dual { of: Box<GeneratorSpec> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnihilatorSpec {
    #[default]
    Conjunctive,
    Disjunctive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleSpec {
    #[default]
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Complement {},
    Power { p: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub lo: f64,
    pub hi: f64,
    pub op: Node,
}

/// One `<a, b, c, d>` block. Blocks with both sides empty carry only an
/// `annihilator`; every other block carries an `op`. When `v` is given it
/// must match the value the sum derives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<Node>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<AnnihilatorSpec>,
}

/// `[0, upper)` or `[0, upper]` assigned to `point`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChoiceSpec {
    pub point: f64,
    pub upper: f64,
    pub closed: bool,
}

impl From<AnnihilatorSpec> for Annihilator {
    fn from(a: AnnihilatorSpec) -> Self {
        match a {
            AnnihilatorSpec::Conjunctive => Annihilator::Conjunctive,
            AnnihilatorSpec::Disjunctive => Annihilator::Disjunctive,
        }
    }
}

impl ChoiceSpec {
    fn choice(&self) -> (f64, Choice) {
        let c = if self.closed {
            Choice::closed(self.upper)
        } else {
            Choice::open(self.upper)
        };
        (self.point, c)
    }
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Generator, CliError> {
        let g = match self {
            GeneratorSpec::Product {} => Generator::product(),
            GeneratorSpec::Lukasiewicz {} => Generator::lukasiewicz(),
            GeneratorSpec::Hamacher {} => Generator::hamacher(),
            GeneratorSpec::Yager { p } => Generator::yager(*p)?,
            GeneratorSpec::AczelAlsina { p } => Generator::aczel_alsina(*p)?,
            GeneratorSpec::LogLinear {} => Generator::log_linear(),
            GeneratorSpec::ProbabilisticSum {} => Generator::probabilistic_sum(),
            GeneratorSpec::BoundedSum {} => Generator::bounded_sum(),
            GeneratorSpec::Logistic { neutral } => Generator::logistic(*neutral)?,
            GeneratorSpec::LogOddsLinear { weight } => Generator::log_odds_linear(*weight)?,
            GeneratorSpec::Dual { of } => of.build()?.dual()?,
        };
        Ok(g)
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        let doc = if value.get("root").is_some() {
            serde_json::from_value(value)
        } else {
            serde_json::from_value(value).map(|root| Document {
                definitions: BTreeMap::new(),
                root,
            })
        };
        let doc = doc.map_err(|e| CliError::Schema(e.to_string()))?;
        doc.check_refs()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Rejects dangling and cyclic references.
    fn check_refs(&self) -> Result<(), CliError> {
        let mut done = BTreeSet::new();
        for name in self.definitions.keys() {
            self.visit_definition(name, &mut Vec::new(), &mut done)?;
        }
        self.visit_node(&self.root, &mut Vec::new(), &mut done)
    }

    fn visit_definition<'a>(
        &'a self,
        name: &'a str,
        stack: &mut Vec<&'a str>,
        done: &mut BTreeSet<&'a str>,
    ) -> Result<(), CliError> {
        if done.contains(name) {
            return Ok(());
        }
        if stack.contains(&name) {
            stack.push(name);
            return Err(CliError::Schema(format!("reference cycle: {}", stack.join(" -> "))));
        }
        let node = self
            .definitions
            .get(name)
            .ok_or_else(|| CliError::Schema(format!("undefined reference `{name}`")))?;
        stack.push(name);
        self.visit_node(node, stack, done)?;
        stack.pop();
        done.insert(name);
        Ok(())
    }

    fn visit_node<'a>(
        &'a self,
        node: &'a Node,
        stack: &mut Vec<&'a str>,
        done: &mut BTreeSet<&'a str>,
    ) -> Result<(), CliError> {
        if let Node::Ref { name } = node {
            return self.visit_definition(name, stack, done);
        }
        node.children()
            .into_iter()
            .try_for_each(|child| self.visit_node(child, stack, done))
    }

    fn resolve<'a>(&'a self, mut node: &'a Node) -> &'a Node {
        while let Node::Ref { name } = node {
            node = &self.definitions[name];
        }
        node
    }

    /// Builds the root construction.
    pub fn build(&self) -> Result<Operator, CliError> {
        self.build_node(&self.root)
    }

    pub fn build_node(&self, node: &Node) -> Result<Operator, CliError> {
        let op = match self.resolve(node) {
            Node::Min {} => min_tnorm(),
            Node::Max {} => max_tconorm(),
            Node::Product {} => product_tnorm(),
            Node::Lukasiewicz {} => lukasiewicz_tnorm(),
            Node::ProbabilisticSum {} => probabilistic_sum(),
            Node::BoundedSum {} => bounded_sum(),
            Node::GeneratedTnorm { generator } => generated_tnorm(&generator.build()?)?,
            Node::GeneratedTconorm { generator } => generated_tconorm(&generator.build()?)?,
            Node::Dual { of } => dualize(&self.build_node(of)?)?,
            Node::OrdinalSumTnorm { entries } => ordinal_sum(&SummandList::tnorm(self.entries(entries)?)?),
            Node::OrdinalSumTconorm { entries } => {
                ordinal_sum(&SummandList::tconorm(self.entries(entries)?)?)
            }
            Node::Representable { generator, annihilator } => {
                make_representable(&generator.build()?, (*annihilator).into())?
            }
            Node::UMin { tnorm, tconorm, neutral } => {
                make_u_min(&self.build_node(tnorm)?, &self.build_node(tconorm)?, *neutral)?
            }
            Node::UMax { tnorm, tconorm, neutral } => {
                make_u_max(&self.build_node(tnorm)?, &self.build_node(tconorm)?, *neutral)?
            }
            Node::SInternal { curve, rule } => {
                let rule = match rule {
                    RuleSpec::Min => BoundaryRule::TakeMin,
                    RuleSpec::Max => BoundaryRule::TakeMax,
                };
                let boundary = match curve {
                    CurveSpec::Complement {} => InternalBoundary::complement(rule),
                    CurveSpec::Power { p } => InternalBoundary::power(*p, rule)?,
                };
                make_s_internal(&boundary)
            }
            sum @ Node::OrdinalSum { .. } => self.ordinal_sum_spec(sum)?.to_operator(),
            Node::ExtendedSum { base, g, h } => self.extended_spec(base, g, h)?.to_operator(),
            Node::Star { of } => border_variant_star(&self.build_node(of)?, BORDER_GRID).op,
            Node::Substar { of } => border_variant_substar(&self.build_node(of)?, BORDER_GRID).op,
            Node::Ref { .. } => unreachable!("references are resolved"),
        };
        Ok(op)
    }

    fn entries(&self, entries: &[EntrySpec]) -> Result<Vec<OrdinalEntry>, CliError> {
        entries
            .iter()
            .map(|e| Ok(OrdinalEntry::new(e.lo, e.hi, self.build_node(&e.op)?)))
            .collect()
    }

    fn ordinal_sum_spec(&self, node: &Node) -> Result<OrdinalSumSpec, CliError> {
        let Node::OrdinalSum { neutral, summands } = self.resolve(node) else {
            return Err(CliError::Schema(format!(
                "expected an ordinal_sum node, found `{}`",
                self.resolve(node).kind_name()
            )));
        };
        let mut built = Vec::with_capacity(summands.len());
        for (k, s) in summands.iter().enumerate() {
            let summand = match (&s.op, s.annihilator) {
                (Some(op), None) => Summand::new(s.a, s.b, s.c, s.d, self.build_node(op)?),
                (None, Some(annihilator)) => {
                    if s.a != s.b || s.c != s.d {
                        return Err(CliError::Schema(format!(
                            "summand {k}: only blocks with both sides empty may omit `op`"
                        )));
                    }
                    Summand::empty(s.b, s.c, annihilator.into())
                }
                _ => {
                    return Err(CliError::Schema(format!(
                        "summand {k}: exactly one of `op` and `annihilator` is required"
                    )))
                }
            };
            built.push(summand);
        }
        let spec = OrdinalSumSpec::new(*neutral, built)?;
        for (k, s) in summands.iter().enumerate() {
            if let Some(v) = s.v {
                let derived = spec.v(k);
                if v != derived {
                    return Err(CliError::Construction(uninorm::Error::Construction {
                        rule: "summand neutral placement",
                        detail: format!("summand {k} declares v = {v}, the sum places it at {derived}"),
                    }));
                }
            }
        }
        Ok(spec)
    }

    fn extended_spec(
        &self,
        base: &Node,
        g: &[ChoiceSpec],
        h: &[ChoiceSpec],
    ) -> Result<ExtendedOrdinalSumSpec, CliError> {
        let base = self.ordinal_sum_spec(base)?;
        let g: Vec<_> = g.iter().map(ChoiceSpec::choice).collect();
        let h: Vec<_> = h.iter().map(ChoiceSpec::choice).collect();
        Ok(ExtendedOrdinalSumSpec::new(base, &g, &h)?)
    }
}

impl Node {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Node::Min {} => "min",
            Node::Max {} => "max",
            Node::Product {} => "product",
            Node::Lukasiewicz {} => "lukasiewicz",
            Node::ProbabilisticSum {} => "probabilistic_sum",
            Node::BoundedSum {} => "bounded_sum",
            Node::GeneratedTnorm { .. } => "generated_tnorm",
            Node::GeneratedTconorm { .. } => "generated_tconorm",
            Node::Dual { .. } => "dual",
            Node::OrdinalSumTnorm { .. } => "ordinal_sum_tnorm",
            Node::OrdinalSumTconorm { .. } => "ordinal_sum_tconorm",
            Node::Representable { .. } => "representable",
            Node::UMin { .. } => "u_min",
            Node::UMax { .. } => "u_max",
            Node::SInternal { .. } => "s_internal",
            Node::OrdinalSum { .. } => "ordinal_sum",
            Node::ExtendedSum { .. } => "extended_sum",
            Node::Star { .. } => "star",
            Node::Substar { .. } => "substar",
            Node::Ref { .. } => "ref",
        }
    }

    fn children(&self) -> Vec<&Node> {
        match self {
            Node::Dual { of } | Node::Star { of } | Node::Substar { of } => vec![of],
            Node::OrdinalSumTnorm { entries } | Node::OrdinalSumTconorm { entries } => {
                entries.iter().map(|e| &e.op).collect()
            }
            Node::UMin { tnorm, tconorm, .. } | Node::UMax { tnorm, tconorm, .. } => vec![tnorm, tconorm],
            Node::OrdinalSum { summands, .. } => summands.iter().filter_map(|s| s.op.as_ref()).collect(),
            Node::ExtendedSum { base, .. } => vec![base],
            _ => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_nodes_and_documents_both_parse() {
        let bare = Document::parse(r#"{"kind": "product"}"#).unwrap();
        assert_eq!(bare.root, Node::Product {});
        let doc = Document::parse(
            r#"{"definitions": {"t": {"kind": "lukasiewicz"}},
                "root": {"kind": "dual", "of": {"kind": "ref", "name": "t"}}}"#,
        )
        .unwrap();
        let op = doc.build().unwrap();
        assert!((op.apply(0.3, 0.4) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn cycles_and_dangling_refs_are_schema_errors() {
        let cyclic = r#"{"definitions": {"a": {"kind": "dual", "of": {"kind": "ref", "name": "b"}},
                                          "b": {"kind": "ref", "name": "a"}},
                         "root": {"kind": "ref", "name": "a"}}"#;
        match Document::parse(cyclic) {
            Err(CliError::Schema(msg)) => assert!(msg.contains("cycle"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let dangling = r#"{"root": {"kind": "ref", "name": "nowhere"}}"#;
        assert!(matches!(Document::parse(dangling), Err(CliError::Schema(_))));
    }

    #[test]
    fn unknown_fields_and_kinds_are_rejected() {
        assert!(matches!(
            Document::parse(r#"{"kind": "product", "neutral": 1}"#),
            Err(CliError::Schema(_))
        ));
        assert!(matches!(Document::parse(r#"{"kind": "nope"}"#), Err(CliError::Schema(_))));
    }

    #[test]
    fn declared_v_must_match() {
        let text = r#"{"kind": "ordinal_sum", "neutral": 0.5, "summands": [
            {"a": 0, "b": 0.5, "c": 0.5, "d": 1, "v": 0.5,
             "op": {"kind": "representable", "generator": {"family": "logistic", "neutral": 0.5}}}]}"#;
        Document::parse(text).unwrap().build().unwrap();
        let wrong = text.replace("\"v\": 0.5", "\"v\": 0.6");
        assert!(matches!(
            Document::parse(&wrong).unwrap().build(),
            Err(CliError::Construction(_))
        ));
    }
}
