//! Checker for Hilbert-style derivations.
//!
//! Two systems are supported. The full system has propositional axioms,
//! distribution axioms for `X` and `Y` (with the root-vacuity disjuncts on
//! the `Y` side), the partial-reduction axioms for the conditional, and
//! reflection `box α -> α`; its rules are modus ponens, generalization of
//! `X`, `Y` and `box`, and replacement of equivalent subformulas. The
//! one-box subsystem keeps the propositional axioms, seriality `~X~#t`,
//! root reflection `dia Y#f -> (dia α -> α)`, and the `box` distribution
//! and reflection axioms over conditional-free path formulas.
//!
//! Schema matching is syntactic unification over the desugared tree, so the
//! derived connectives appearing in schema statements match through their
//! definitions.

use crate::syntax::fragment::{is_closed, is_nxy, is_xy};
use crate::syntax::{parse, print, Formula, SyntaxError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum System {
    #[serde(rename = "ConSHN-BT")]
    ConShnBt,
    #[serde(rename = "OneBox-XY")]
    OneBoxXy,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("line {line}: formula is not an instance of axiom {schema}: {detail}")]
    BadSchema {
        line: usize,
        schema: String,
        detail: String,
    },
    #[error("line {line}: side condition violated: {var} must be {need}")]
    BadSideCondition {
        line: usize,
        var: String,
        need: String,
    },
    #[error("line {line}: bad reference to line {target}")]
    BadReference { line: usize, target: usize },
    #[error("line {line}: {detail}")]
    ShapeMismatch { line: usize, detail: String },
    #[error("line {line}: unknown axiom '{schema}' in this system")]
    UnknownSchema { line: usize, schema: String },
    #[error("line {line}: cannot parse '{field}': {source}")]
    BadFormula {
        line: usize,
        field: String,
        source: SyntaxError,
    },
    #[error("bad proof document: {0}")]
    BadDocument(String),
}

/// Metavariable side conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Any,
    /// Conditional-free.
    Xy,
    /// Purely propositional.
    Pl,
    /// Conditional-free with homogeneous temporal prefixes.
    NXy,
    /// Boolean combination of conditionals.
    Closed,
}

impl Cond {
    fn holds(self, f: &Formula) -> bool {
        match self {
            Cond::Any => true,
            Cond::Xy => is_xy(f),
            Cond::Pl => is_pl(f),
            Cond::NXy => is_nxy(f),
            Cond::Closed => is_closed(f),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Cond::Any => "any formula",
            Cond::Xy => "in the XY fragment",
            Cond::Pl => "propositional",
            Cond::NXy => "in the NXy fragment",
            Cond::Closed => "a closed formula",
        }
    }
}

fn is_pl(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Bottom => true,
        Formula::Not(g) => is_pl(g),
        Formula::And(a, b) => is_pl(a) && is_pl(b),
        _ => false,
    }
}

/// Schema pattern: a formula tree with metavariable leaves.
#[derive(Debug, Clone)]
enum Pat {
    Var(&'static str),
    Bottom,
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Next(Box<Pat>),
    Yesterday(Box<Pat>),
    Con(Box<Pat>, Box<Pat>),
}

fn v(name: &'static str) -> Pat {
    Pat::Var(name)
}

impl Pat {
    fn not(self) -> Pat {
        Pat::Not(Box::new(self))
    }
    fn and(self, rhs: Pat) -> Pat {
        Pat::And(Box::new(self), Box::new(rhs))
    }
    fn next(self) -> Pat {
        Pat::Next(Box::new(self))
    }
    fn yesterday(self) -> Pat {
        Pat::Yesterday(Box::new(self))
    }
    fn con(a: Pat, b: Pat) -> Pat {
        Pat::Con(Box::new(a), Box::new(b))
    }
    fn top() -> Pat {
        Pat::Bottom.not()
    }
    fn or(self, rhs: Pat) -> Pat {
        self.not().and(rhs.not()).not()
    }
    fn implies(self, rhs: Pat) -> Pat {
        self.and(rhs.not()).not()
    }
    fn iff(self, rhs: Pat) -> Pat {
        self.clone().implies(rhs.clone()).and(rhs.implies(self))
    }
    fn boxed(self) -> Pat {
        Pat::con(Pat::top(), self)
    }
    fn dia(self) -> Pat {
        Pat::con(Pat::top(), self.not()).not()
    }
    fn dual(a: Pat, b: Pat) -> Pat {
        Pat::con(a, b.not()).not()
    }

    fn unify<'f>(&self, f: &'f Formula, out: &mut BTreeMap<&'static str, &'f Formula>) -> bool {
        match (self, f) {
            (Pat::Var(name), _) => match out.get(name) {
                Some(&bound) => bound == f,
                None => {
                    out.insert(name, f);
                    true
                }
            },
            (Pat::Bottom, Formula::Bottom) => true,
            (Pat::Not(p), Formula::Not(g)) => p.unify(g, out),
            (Pat::And(p, q), Formula::And(a, b)) => p.unify(a, out) && q.unify(b, out),
            (Pat::Next(p), Formula::Next(g)) => p.unify(g, out),
            (Pat::Yesterday(p), Formula::Yesterday(g)) => p.unify(g, out),
            (Pat::Con(p, q), Formula::Con(a, b)) => p.unify(a, out) && q.unify(b, out),
            _ => false,
        }
    }

    fn instantiate(&self, bindings: &BTreeMap<String, Formula>) -> Option<Formula> {
        Some(match self {
            Pat::Var(name) => bindings.get(*name)?.clone(),
            Pat::Bottom => Formula::Bottom,
            Pat::Not(p) => p.instantiate(bindings)?.not(),
            Pat::And(p, q) => p.instantiate(bindings)?.and(q.instantiate(bindings)?),
            Pat::Next(p) => p.instantiate(bindings)?.next(),
            Pat::Yesterday(p) => p.instantiate(bindings)?.yesterday(),
            Pat::Con(p, q) => {
                Formula::con(p.instantiate(bindings)?, q.instantiate(bindings)?)
            }
        })
    }
}

struct Schema {
    id: &'static str,
    pattern: Pat,
    conditions: &'static [(&'static str, Cond)],
}

fn full_system_schemas() -> Vec<Schema> {
    let xy3: &'static [(&'static str, Cond)] = &[
        ("alpha", Cond::Xy),
        ("beta", Cond::Xy),
        ("gamma", Cond::Xy),
    ];
    vec![
        Schema {
            id: "pl1",
            pattern: v("phi").implies(v("psi").implies(v("phi"))),
            conditions: &[],
        },
        Schema {
            id: "pl2",
            pattern: v("phi")
                .implies(v("psi").implies(v("rho")))
                .implies(v("phi").implies(v("psi")).implies(v("phi").implies(v("rho")))),
            conditions: &[],
        },
        Schema {
            id: "pl3",
            pattern: v("phi")
                .not()
                .implies(v("psi").not())
                .implies(v("psi").implies(v("phi"))),
            conditions: &[],
        },
        Schema {
            id: "pl4",
            pattern: v("phi").and(v("psi")).implies(v("phi")),
            conditions: &[],
        },
        Schema {
            id: "pl5",
            pattern: v("phi").and(v("psi")).implies(v("psi")),
            conditions: &[],
        },
        Schema {
            id: "pl6",
            pattern: v("phi").implies(v("psi").implies(v("phi").and(v("psi")))),
            conditions: &[],
        },
        Schema {
            id: "pl7",
            pattern: Pat::Bottom.implies(v("phi")),
            conditions: &[],
        },
        Schema {
            id: "2a",
            pattern: v("phi").not().next().iff(v("phi").next().not()),
            conditions: &[],
        },
        Schema {
            id: "2b",
            pattern: v("phi")
                .and(v("psi"))
                .next()
                .iff(v("phi").next().and(v("psi").next())),
            conditions: &[],
        },
        Schema {
            id: "2c",
            pattern: v("phi").yesterday().next().iff(v("phi")),
            conditions: &[],
        },
        Schema {
            id: "2d",
            pattern: Pat::con(v("alpha"), v("phi"))
                .next()
                .iff(Pat::con(v("alpha").next(), v("phi").next())),
            conditions: &[("alpha", Cond::Xy)],
        },
        Schema {
            id: "2e",
            pattern: Pat::top().not().next().not(),
            conditions: &[],
        },
        Schema {
            id: "3a",
            pattern: v("phi")
                .not()
                .yesterday()
                .iff(Pat::Bottom.yesterday().or(v("phi").yesterday().not())),
            conditions: &[],
        },
        Schema {
            id: "3b",
            pattern: v("phi")
                .and(v("psi"))
                .yesterday()
                .iff(v("phi").yesterday().and(v("psi").yesterday())),
            conditions: &[],
        },
        Schema {
            id: "3c",
            pattern: v("phi")
                .next()
                .yesterday()
                .iff(Pat::Bottom.yesterday().or(v("phi"))),
            conditions: &[],
        },
        Schema {
            id: "3d",
            pattern: Pat::con(v("alpha"), v("phi"))
                .yesterday()
                .iff(Pat::con(v("alpha").yesterday(), v("phi").yesterday())),
            conditions: &[("alpha", Cond::Xy)],
        },
        Schema {
            id: "3e",
            pattern: Pat::Bottom
                .yesterday()
                .dia()
                .implies(v("alpha").dia().implies(v("alpha"))),
            conditions: &[("alpha", Cond::Pl)],
        },
        Schema {
            id: "4a",
            pattern: Pat::con(v("alpha"), v("phi").and(v("psi"))).iff(
                Pat::con(v("alpha"), v("phi")).and(Pat::con(v("alpha"), v("psi"))),
            ),
            conditions: &[("alpha", Cond::Xy)],
        },
        Schema {
            id: "4b",
            pattern: Pat::con(v("alpha"), v("phi").or(v("chi"))).iff(
                Pat::con(v("alpha"), v("phi")).or(Pat::con(v("alpha"), v("chi"))),
            ),
            conditions: &[("alpha", Cond::Xy), ("chi", Cond::Closed)],
        },
        Schema {
            id: "4c",
            pattern: Pat::con(v("alpha"), Pat::con(v("beta"), v("gamma")))
                .iff(Pat::con(v("alpha").and(v("beta")), v("gamma"))),
            conditions: xy3,
        },
        // corrected form: the dual collapses only where the update is
        // non-empty, hence the [α]#f disjunct
        Schema {
            id: "4d",
            pattern: Pat::con(v("alpha"), Pat::dual(v("beta"), v("gamma"))).iff(
                Pat::con(v("alpha"), Pat::Bottom)
                    .or(Pat::dual(v("alpha").and(v("beta")), v("gamma"))),
            ),
            conditions: xy3,
        },
        Schema {
            id: "4e",
            pattern: Pat::con(v("alpha"), v("beta"))
                .iff(v("alpha").implies(v("beta")).boxed()),
            conditions: &[("alpha", Cond::Xy), ("beta", Cond::Xy)],
        },
        Schema {
            id: "5",
            pattern: v("alpha").boxed().implies(v("alpha")),
            conditions: &[("alpha", Cond::Xy)],
        },
    ]
}

fn one_box_schemas() -> Vec<Schema> {
    let mut out: Vec<Schema> = full_system_schemas()
        .into_iter()
        .filter(|s| s.id.starts_with("pl"))
        .collect();
    out.push(Schema {
        id: "ob2",
        pattern: Pat::top().not().next().not(),
        conditions: &[],
    });
    out.push(Schema {
        id: "ob3",
        pattern: Pat::Bottom
            .yesterday()
            .dia()
            .implies(v("alpha").dia().implies(v("alpha"))),
        conditions: &[("alpha", Cond::Pl)],
    });
    out.push(Schema {
        id: "ob4a",
        pattern: v("alpha")
            .implies(v("beta"))
            .boxed()
            .implies(v("alpha").boxed().implies(v("beta").boxed())),
        conditions: &[("alpha", Cond::NXy), ("beta", Cond::NXy)],
    });
    out.push(Schema {
        id: "ob4b",
        pattern: v("alpha").boxed().implies(v("alpha")),
        conditions: &[("alpha", Cond::NXy)],
    });
    out
}

fn schemas_for(system: System) -> Vec<Schema> {
    match system {
        System::ConShnBt => full_system_schemas(),
        System::OneBoxXy => one_box_schemas(),
    }
}

/// Uncorrected dual-distribution shape, recognized only to produce a
/// pointed diagnostic: it is falsified when the update empties the set of
/// acceptable timelines.
fn uncorrected_4d() -> Pat {
    Pat::con(v("alpha"), Pat::dual(v("beta"), v("gamma")))
        .iff(Pat::dual(v("alpha").and(v("beta")), v("gamma")))
}

/// All axiom schemas of the system matching `f`, with bindings.
pub fn match_axiom(f: &Formula, system: System) -> Vec<(String, BTreeMap<String, Formula>)> {
    let mut out = Vec::new();
    for schema in schemas_for(system) {
        let mut bindings = BTreeMap::new();
        if schema.pattern.unify(f, &mut bindings) {
            let all_ok = schema
                .conditions
                .iter()
                .all(|(var, cond)| bindings.get(var).is_none_or(|g| cond.holds(g)));
            if all_ok {
                out.push((
                    schema.id.to_string(),
                    bindings
                        .into_iter()
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect(),
                ));
            }
        }
    }
    out
}

/// Proof document: formulas and bindings are carried as formula text.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofDoc {
    pub system: System,
    pub lines: Vec<ProofLineDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofLineDoc {
    pub formula: String,
    pub by: JustificationDoc,
}

/// Line references are 1-based, as printed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum JustificationDoc {
    Axiom {
        axiom: String,
        #[serde(default)]
        bindings: BTreeMap<String, String>,
    },
    Mp([usize; 2]),
    GenX(usize),
    GenY(usize),
    GenBox(usize),
    Replace { from: usize, path: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct Proof {
    pub system: System,
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone)]
pub enum Justification {
    Axiom {
        schema: String,
        bindings: BTreeMap<String, Formula>,
    },
    ModusPonens(usize, usize),
    GenX(usize),
    GenY(usize),
    GenBox(usize),
    ReplaceEquiv { from: usize, path: Vec<usize> },
}

impl Proof {
    pub fn from_doc(doc: &ProofDoc) -> Result<Proof, ProofError> {
        let mut lines = Vec::new();
        for (idx, line) in doc.lines.iter().enumerate() {
            let lineno = idx + 1;
            let formula = parse(&line.formula).map_err(|source| ProofError::BadFormula {
                line: lineno,
                field: line.formula.clone(),
                source,
            })?;
            let justification = match &line.by {
                JustificationDoc::Axiom { axiom, bindings } => {
                    let mut parsed = BTreeMap::new();
                    for (k, text) in bindings {
                        let g = parse(text).map_err(|source| ProofError::BadFormula {
                            line: lineno,
                            field: text.clone(),
                            source,
                        })?;
                        parsed.insert(k.clone(), g);
                    }
                    Justification::Axiom {
                        schema: axiom.clone(),
                        bindings: parsed,
                    }
                }
                JustificationDoc::Mp([i, j]) => Justification::ModusPonens(*i, *j),
                JustificationDoc::GenX(i) => Justification::GenX(*i),
                JustificationDoc::GenY(i) => Justification::GenY(*i),
                JustificationDoc::GenBox(i) => Justification::GenBox(*i),
                JustificationDoc::Replace { from, path } => Justification::ReplaceEquiv {
                    from: *from,
                    path: path.clone(),
                },
            };
            lines.push(ProofLine {
                formula,
                justification,
            });
        }
        Ok(Proof {
            system: doc.system,
            lines,
        })
    }

    pub fn from_json(text: &str) -> Result<Proof, ProofError> {
        let doc: ProofDoc =
            serde_json::from_str(text).map_err(|e| ProofError::BadDocument(e.to_string()))?;
        Proof::from_doc(&doc)
    }
}

/// Check every line; the first failing line is reported.
pub fn check_proof(proof: &Proof) -> Result<(), ProofError> {
    let schemas = schemas_for(proof.system);
    for (idx, line) in proof.lines.iter().enumerate() {
        let lineno = idx + 1;
        check_line(proof, &schemas, idx, line, lineno)?;
    }
    Ok(())
}

fn resolve<'p>(
    proof: &'p Proof,
    current: usize,
    target: usize,
    lineno: usize,
) -> Result<&'p Formula, ProofError> {
    // justifications may only reference strictly earlier lines
    if target == 0 || target > current {
        return Err(ProofError::BadReference {
            line: lineno,
            target,
        });
    }
    Ok(&proof.lines[target - 1].formula)
}

/// Split a desugared biconditional into its two sides.
fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    let Formula::And(l, r) = f else { return None };
    let imp = |g: &Formula| -> Option<(Formula, Formula)> {
        let Formula::Not(inner) = g else { return None };
        let Formula::And(a, b) = &**inner else {
            return None;
        };
        let Formula::Not(c) = &**b else { return None };
        Some(((**a).clone(), (**c).clone()))
    };
    let (la, lb) = imp(l)?;
    let (rb, ra) = imp(r)?;
    if la == ra && lb == rb {
        let Formula::Not(inner) = &**l else {
            return None;
        };
        let Formula::And(a, b) = &**inner else {
            return None;
        };
        let Formula::Not(c) = &**b else { return None };
        Some((a, c))
    } else {
        None
    }
}

fn check_line(
    proof: &Proof,
    schemas: &[Schema],
    idx: usize,
    line: &ProofLine,
    lineno: usize,
) -> Result<(), ProofError> {
    match &line.justification {
        Justification::Axiom { schema, bindings } => {
            let Some(s) = schemas.iter().find(|s| s.id == schema) else {
                return Err(ProofError::UnknownSchema {
                    line: lineno,
                    schema: schema.clone(),
                });
            };
            for (var, cond) in s.conditions {
                if let Some(g) = bindings.get(*var) {
                    if !cond.holds(g) {
                        return Err(ProofError::BadSideCondition {
                            line: lineno,
                            var: var.to_string(),
                            need: cond.describe().to_string(),
                        });
                    }
                }
            }
            let Some(instance) = s.pattern.instantiate(bindings) else {
                return Err(ProofError::BadSchema {
                    line: lineno,
                    schema: schema.clone(),
                    detail: "bindings do not cover every metavariable".into(),
                });
            };
            if instance != line.formula {
                let mut probe = BTreeMap::new();
                let detail = if proof.system == System::ConShnBt
                    && uncorrected_4d().unify(&line.formula, &mut probe)
                {
                    "matches the uncorrected dual-distribution shape, which is \
                     falsifiable when the update empties the acceptable set; the \
                     accepted schema 4d carries the extra [α]#f disjunct"
                        .to_string()
                } else {
                    format!("expected instance '{}'", print(&instance))
                };
                return Err(ProofError::BadSchema {
                    line: lineno,
                    schema: schema.clone(),
                    detail,
                });
            }
            Ok(())
        }
        Justification::ModusPonens(i, j) => {
            let minor = resolve(proof, idx, *i, lineno)?;
            let major = resolve(proof, idx, *j, lineno)?;
            let expected = minor.clone().implies(line.formula.clone());
            if *major != expected {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!(
                        "line {j} is not '{}'",
                        print(&expected)
                    ),
                });
            }
            Ok(())
        }
        Justification::GenX(i) => {
            let premise = resolve(proof, idx, *i, lineno)?;
            if line.formula != premise.clone().next() {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("expected 'X {}'", print(premise)),
                });
            }
            Ok(())
        }
        Justification::GenY(i) => {
            let premise = resolve(proof, idx, *i, lineno)?;
            if line.formula != premise.clone().yesterday() {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("expected 'Y {}'", print(premise)),
                });
            }
            Ok(())
        }
        Justification::GenBox(i) => {
            let premise = resolve(proof, idx, *i, lineno)?;
            if !is_xy(premise) {
                return Err(ProofError::BadSideCondition {
                    line: lineno,
                    var: "premise".into(),
                    need: Cond::Xy.describe().to_string(),
                });
            }
            if line.formula != premise.clone().boxed() {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("expected 'box {}'", print(premise)),
                });
            }
            Ok(())
        }
        Justification::ReplaceEquiv { from, path } => {
            let equivalence = resolve(proof, idx, *from, lineno)?;
            let Some((psi, psi2)) = as_iff(equivalence) else {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("line {from} is not a biconditional"),
                });
            };
            let Some((phi, phi2)) = as_iff(&line.formula) else {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: "conclusion is not a biconditional".into(),
                });
            };
            let Some(at) = phi.subformula_at(path) else {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("no subformula at path {path:?}"),
                });
            };
            if at != psi {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!(
                        "subformula at path is '{}', not '{}'",
                        print(at),
                        print(psi)
                    ),
                });
            }
            let replaced = phi
                .with_replaced(path, psi2.clone())
                .expect("path was just resolved");
            if &replaced != phi2 {
                return Err(ProofError::ShapeMismatch {
                    line: lineno,
                    detail: format!("right side should be '{}'", print(&replaced)),
                });
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axiom_line(formula: &str, axiom: &str, bindings: &[(&str, &str)]) -> ProofLineDoc {
        ProofLineDoc {
            formula: formula.into(),
            by: JustificationDoc::Axiom {
                axiom: axiom.into(),
                bindings: bindings
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
            },
        }
    }

    fn check_doc(doc: &ProofDoc) -> Result<(), ProofError> {
        check_proof(&Proof::from_doc(doc).unwrap())
    }

    #[test]
    fn match_axiom_examples() {
        let hits = match_axiom(&parse("X ~p <-> ~X p").unwrap(), System::ConShnBt);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, "2a");
        assert_eq!(hits[0].1["phi"], parse("p").unwrap());

        let hits = match_axiom(&parse("[p] q <-> box (p -> q)").unwrap(), System::ConShnBt);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, "4e");
        assert_eq!(hits[0].1["alpha"], parse("p").unwrap());
        assert_eq!(hits[0].1["beta"], parse("q").unwrap());

        assert!(match_axiom(&parse("p <-> p").unwrap(), System::ConShnBt).is_empty());
    }

    #[test]
    fn side_conditions_are_enforced() {
        // box α -> α asks for a conditional-free α
        let hits = match_axiom(
            &parse("box ([p] q) -> [p] q").unwrap(),
            System::ConShnBt,
        );
        assert!(hits.iter().all(|(id, _)| id != "5"));
        // and the one-box reflection wants homogeneous prefixes
        let hits = match_axiom(&parse("box X Y p -> X Y p").unwrap(), System::OneBoxXy);
        assert!(hits.iter().all(|(id, _)| id != "ob4b"));
    }

    #[test]
    fn single_axiom_proof_checks() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![axiom_line("box X p -> X p", "5", &[("alpha", "X p")])],
        };
        assert!(check_doc(&doc).is_ok());
    }

    #[test]
    fn corrupted_schema_is_rejected_at_its_line() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![axiom_line("box X p -> X q", "5", &[("alpha", "X p")])],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::BadSchema { line: 1, .. })
        ));
    }

    #[test]
    fn modus_ponens_chain() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line("box X p -> X p", "5", &[("alpha", "X p")]),
                axiom_line(
                    "(box X p -> X p) -> (q -> (box X p -> X p))",
                    "pl1",
                    &[("phi", "box X p -> X p"), ("psi", "q")],
                ),
                ProofLineDoc {
                    formula: "q -> (box X p -> X p)".into(),
                    by: JustificationDoc::Mp([1, 2]),
                },
            ],
        };
        assert!(check_doc(&doc).is_ok());
    }

    #[test]
    fn bad_reference_and_shape() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![ProofLineDoc {
                formula: "p".into(),
                by: JustificationDoc::Mp([1, 1]),
            }],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::BadReference { line: 1, .. })
        ));

        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line("box X p -> X p", "5", &[("alpha", "X p")]),
                ProofLineDoc {
                    formula: "X p".into(),
                    by: JustificationDoc::Mp([1, 1]),
                },
            ],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::ShapeMismatch { line: 2, .. })
        ));
    }

    #[test]
    fn replacement_uses_the_designated_occurrence() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line("X Y p <-> p", "2c", &[("phi", "p")]),
                ProofLineDoc {
                    formula: "(X Y p & q) <-> (p & q)".into(),
                    by: JustificationDoc::Replace {
                        from: 1,
                        path: vec![0],
                    },
                },
            ],
        };
        assert!(check_doc(&doc).is_ok());

        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line("X Y p <-> p", "2c", &[("phi", "p")]),
                ProofLineDoc {
                    formula: "(X Y p & q) <-> (p & p)".into(),
                    by: JustificationDoc::Replace {
                        from: 1,
                        path: vec![0],
                    },
                },
            ],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::ShapeMismatch { line: 2, .. })
        ));
    }

    #[test]
    fn generalization_rules() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line(
                    "p -> (q -> p)",
                    "pl1",
                    &[("phi", "p"), ("psi", "q")],
                ),
                ProofLineDoc {
                    formula: "X (p -> (q -> p))".into(),
                    by: JustificationDoc::GenX(1),
                },
                ProofLineDoc {
                    formula: "Y (p -> (q -> p))".into(),
                    by: JustificationDoc::GenY(1),
                },
                ProofLineDoc {
                    formula: "box (p -> (q -> p))".into(),
                    by: JustificationDoc::GenBox(1),
                },
            ],
        };
        assert!(check_doc(&doc).is_ok());
    }

    #[test]
    fn gen_box_requires_xy_premise() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![
                axiom_line(
                    "[p] q -> (r -> [p] q)",
                    "pl1",
                    &[("phi", "[p] q"), ("psi", "r")],
                ),
                ProofLineDoc {
                    formula: "box ([p] q -> (r -> [p] q))".into(),
                    by: JustificationDoc::GenBox(1),
                },
            ],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::BadSideCondition { line: 2, .. })
        ));
    }

    #[test]
    fn uncorrected_dual_distribution_gets_a_pointed_diagnostic() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![axiom_line(
                "[p] <q> r <-> <p & q> r",
                "4d",
                &[("alpha", "p"), ("beta", "q"), ("gamma", "r")],
            )],
        };
        match check_doc(&doc) {
            Err(ProofError::BadSchema { line: 1, detail, .. }) => {
                assert!(detail.contains("uncorrected"), "got: {detail}");
            }
            other => panic!("expected a schema failure, got {other:?}"),
        }
    }

    #[test]
    fn corrected_dual_distribution_is_accepted() {
        let doc = ProofDoc {
            system: System::ConShnBt,
            lines: vec![axiom_line(
                "[p] <q> r <-> ([p] #f | <p & q> r)",
                "4d",
                &[("alpha", "p"), ("beta", "q"), ("gamma", "r")],
            )],
        };
        assert!(check_doc(&doc).is_ok());
    }

    #[test]
    fn one_box_system_axioms() {
        let doc = ProofDoc {
            system: System::OneBoxXy,
            lines: vec![
                axiom_line(
                    "box ((p & q) -> p) -> (box (p & q) -> box p)",
                    "ob4a",
                    &[("alpha", "p & q"), ("beta", "p")],
                ),
                axiom_line("box ~Y #f -> ~Y #f", "ob4b", &[("alpha", "~Y #f")]),
            ],
        };
        assert!(check_doc(&doc).is_ok());
        // the full-system conditional axioms are not part of the subsystem
        let doc = ProofDoc {
            system: System::OneBoxXy,
            lines: vec![axiom_line(
                "[p] q <-> box (p -> q)",
                "4e",
                &[("alpha", "p"), ("beta", "q")],
            )],
        };
        assert!(matches!(
            check_doc(&doc),
            Err(ProofError::UnknownSchema { line: 1, .. })
        ));
    }
}
