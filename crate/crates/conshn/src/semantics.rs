//! Truth evaluation, rule generation and context update.
//!
//! Evaluation follows the clause-by-clause truth conditions: atoms read the
//! valuation at the timeline's current state, `X` moves one instant forward,
//! `Y` moves one back and is vacuously true at instant 0, and `[α]φ` extends
//! the context with the rule generated by `α` at the current instant and
//! requires `φ` on every acceptable timeline of the extended context.
//!
//! The vacuous reading of `Y` at the root is forced by the axioms for `Y`:
//! it is the unique choice that validates `Y¬φ <-> (Y#f | ~Yφ)` and
//! `YXφ <-> (Y#f | φ)` at instant 0 and makes `Y#f` a root detector.

use crate::model::{acceptable, Context, Model, Point, Rule, TimelineId};
use crate::syntax::{fragment, print, Formula};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(
        "horizon exceeded: instant {instant} plus horizon {horizon} needs depth > {depth}"
    )]
    HorizonExceeded {
        instant: usize,
        horizon: usize,
        depth: usize,
    },
    #[error("conditional antecedent '{0}' is not in the XY fragment")]
    NonXyAntecedent(String),
}

/// Evaluation outcome; the trace, when requested, lists one entry per
/// subformula visit and replays to the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    pub trace: Option<Vec<TraceEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: usize,
    pub instant: usize,
    pub timeline: String,
    pub formula: String,
    pub value: bool,
}

struct EvalState<'a> {
    trace: Option<&'a mut Vec<TraceEntry>>,
    deepest: usize,
}

fn precheck(pt: &Point<'_>, f: &Formula) -> Result<(), EvalError> {
    if !fragment::is_conshn(f) {
        let bad = first_non_xy_antecedent(f).expect("non-conshn formula has one");
        return Err(EvalError::NonXyAntecedent(print(bad)));
    }
    let h = f.horizon();
    if pt.instant() + h > pt.model().depth() {
        return Err(EvalError::HorizonExceeded {
            instant: pt.instant(),
            horizon: h,
            depth: pt.model().depth(),
        });
    }
    Ok(())
}

fn first_non_xy_antecedent(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Atom(_) | Formula::Bottom => None,
        Formula::Not(g) | Formula::Next(g) | Formula::Yesterday(g) => {
            first_non_xy_antecedent(g)
        }
        Formula::And(a, b) => {
            first_non_xy_antecedent(a).or_else(|| first_non_xy_antecedent(b))
        }
        Formula::Con(a, b) => {
            if !fragment::is_xy(a) {
                Some(a)
            } else {
                first_non_xy_antecedent(b)
            }
        }
    }
}

/// Evaluate `f` at `pt`.
pub fn eval(pt: &Point<'_>, f: &Formula) -> Result<Verdict, EvalError> {
    precheck(pt, f)?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    let value = truth(pt.model(), pt.context(), pt.timeline(), pt.instant(), f, 0, &mut st);
    Ok(Verdict { value, trace: None })
}

/// Evaluate with a full visit trace.
pub fn eval_traced(pt: &Point<'_>, f: &Formula) -> Result<Verdict, EvalError> {
    precheck(pt, f)?;
    let mut entries = Vec::new();
    let mut st = EvalState {
        trace: Some(&mut entries),
        deepest: 0,
    };
    let value = truth(pt.model(), pt.context(), pt.timeline(), pt.instant(), f, 0, &mut st);
    Ok(Verdict {
        value,
        trace: Some(entries),
    })
}

/// Evaluate and report the deepest tree level read. Evaluation at instant
/// `i` never reads below `i + f.horizon()`.
pub fn eval_probed(pt: &Point<'_>, f: &Formula) -> Result<(bool, usize), EvalError> {
    precheck(pt, f)?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    let value = truth(pt.model(), pt.context(), pt.timeline(), pt.instant(), f, 0, &mut st);
    Ok((value, st.deepest))
}

fn truth(
    m: &Model,
    c: &Context,
    tl: TimelineId,
    i: usize,
    f: &Formula,
    depth: usize,
    st: &mut EvalState<'_>,
) -> bool {
    let value = match f {
        Formula::Atom(p) => {
            st.deepest = st.deepest.max(i);
            m.holds(m.timeline(tl).path[i], p)
        }
        Formula::Bottom => false,
        Formula::Not(g) => !truth(m, c, tl, i, g, depth + 1, st),
        Formula::And(a, b) => {
            // evaluate both branches so traces cover the whole tree
            let va = truth(m, c, tl, i, a, depth + 1, st);
            let vb = truth(m, c, tl, i, b, depth + 1, st);
            va && vb
        }
        Formula::Next(g) => truth(m, c, tl, i + 1, g, depth + 1, st),
        Formula::Yesterday(g) => {
            if i == 0 {
                true
            } else {
                truth(m, c, tl, i - 1, g, depth + 1, st)
            }
        }
        Formula::Con(alpha, phi) => {
            let updated = update_unchecked(m, c, alpha, i, depth, st);
            acceptable(m, &updated)
                .into_iter()
                .all(|tl2| truth(m, &updated, tl2, i, phi, depth + 1, st))
        }
    };
    if let Some(trace) = st.trace.as_deref_mut() {
        trace.push(TraceEntry {
            depth,
            instant: i,
            timeline: m.leaf_id(tl).to_string(),
            formula: print(f),
            value,
        });
    }
    value
}

fn update_unchecked(
    m: &Model,
    c: &Context,
    alpha: &Formula,
    i: usize,
    depth: usize,
    st: &mut EvalState<'_>,
) -> Context {
    // XY truth is context-independent, so the generated rule ranges over all
    // timelines of the model, not just the acceptable ones
    let members = m
        .all_timelines()
        .into_iter()
        .filter(|&tl| truth(m, c, tl, i, alpha, depth + 1, st))
        .collect();
    let rule = Rule {
        name: format!("[{}]@{}#{}", print(alpha), i, c.rules.len()),
        members,
    };
    c.clone().with_rule(rule)
}

/// The rule generated by `alpha` at instant `i`: all timelines on which
/// `alpha` holds at `i`.
pub fn generated_rule(
    m: &Model,
    c: &Context,
    alpha: &Formula,
    i: usize,
) -> Result<Rule, EvalError> {
    check_xy_rule_input(m, alpha, i)?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    let members = m
        .all_timelines()
        .into_iter()
        .filter(|&tl| truth(m, c, tl, i, alpha, 0, &mut st))
        .collect();
    Ok(Rule {
        name: format!("[{}]@{}", print(alpha), i),
        members,
    })
}

/// The update of `c` with `alpha` at `i`: `c` plus the generated rule under
/// a fresh synthetic name. Always appends, even when the generated rule
/// duplicates an existing one.
pub fn update_context(
    m: &Model,
    c: &Context,
    alpha: &Formula,
    i: usize,
) -> Result<Context, EvalError> {
    let mut rule = generated_rule(m, c, alpha, i)?;
    rule.name = format!("{}#{}", rule.name, c.rules.len());
    Ok(c.clone().with_rule(rule))
}

fn check_xy_rule_input(m: &Model, alpha: &Formula, i: usize) -> Result<(), EvalError> {
    if !fragment::is_xy(alpha) {
        return Err(EvalError::NonXyAntecedent(print(alpha)));
    }
    let h = alpha.horizon();
    if i + h > m.depth() {
        return Err(EvalError::HorizonExceeded {
            instant: i,
            horizon: h,
            depth: m.depth(),
        });
    }
    Ok(())
}

/// Reference implementation of the derived `box` clause: truth on every
/// acceptable timeline of the unchanged context.
pub fn box_clause(pt: &Point<'_>, phi: &Formula) -> Result<bool, EvalError> {
    precheck(pt, phi)?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    Ok(acceptable(pt.model(), pt.context()).into_iter().all(|tl| {
        truth(pt.model(), pt.context(), tl, pt.instant(), phi, 0, &mut st)
    }))
}

/// Reference implementation of the derived `dia` clause.
pub fn dia_clause(pt: &Point<'_>, phi: &Formula) -> Result<bool, EvalError> {
    precheck(pt, phi)?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    Ok(acceptable(pt.model(), pt.context()).into_iter().any(|tl| {
        truth(pt.model(), pt.context(), tl, pt.instant(), phi, 0, &mut st)
    }))
}

/// Reference implementation of the derived `<α>` clause: truth on some
/// acceptable timeline of the updated context.
pub fn dual_clause(pt: &Point<'_>, alpha: &Formula, phi: &Formula) -> Result<bool, EvalError> {
    check_xy_rule_input(pt.model(), alpha, pt.instant())?;
    precheck(pt, phi)?;
    let updated = update_context(pt.model(), pt.context(), alpha, pt.instant())?;
    let mut st = EvalState {
        trace: None,
        deepest: 0,
    };
    Ok(acceptable(pt.model(), &updated).into_iter().any(|tl| {
        truth(pt.model(), &updated, tl, pt.instant(), phi, 0, &mut st)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ContextDoc, Model, ModelDoc, RuleDoc, StateDoc};
    use crate::syntax::parse;

    fn fan_model(leaves: &[(&str, &[&str])]) -> Model {
        let mut states = vec![StateDoc {
            id: "w0_1".into(),
            parent: None,
            atoms: vec![],
        }];
        for (id, atoms) in leaves {
            states.push(StateDoc {
                id: id.to_string(),
                parent: Some("w0_1".into()),
                atoms: atoms.iter().map(|a| a.to_string()).collect(),
            });
        }
        Model::from_doc(&ModelDoc {
            depth: 1,
            root: "w0_1".into(),
            states,
        })
        .unwrap()
    }

    fn tiger() -> (Model, Context) {
        let m = fan_model(&[
            ("w1_1", &[]),
            ("w1_2", &["a"]),
            ("w1_3", &["l"]),
            ("w1_4", &["l", "a"]),
            ("w1_5", &["r", "a"]),
            ("w1_6", &["r"]),
        ]);
        let doc = ContextDoc {
            rules: vec![
                RuleDoc {
                    name: "R1".into(),
                    timelines: ["w1_1", "w1_3", "w1_4", "w1_5", "w1_6"]
                        .map(String::from)
                        .into(),
                },
                RuleDoc {
                    name: "R2".into(),
                    timelines: ["w1_3", "w1_4", "w1_5", "w1_6"].map(String::from).into(),
                },
                RuleDoc {
                    name: "R3".into(),
                    timelines: ["w1_1", "w1_2", "w1_3", "w1_5", "w1_6"]
                        .map(String::from)
                        .into(),
                },
                RuleDoc {
                    name: "R4".into(),
                    timelines: ["w1_1", "w1_2", "w1_3", "w1_4", "w1_5"]
                        .map(String::from)
                        .into(),
                },
            ],
        };
        let c = m.load_context(&doc).unwrap();
        (m, c)
    }

    fn holds(m: &Model, c: &Context, leaf: &str, i: usize, text: &str) -> bool {
        let pt = m.point(c, leaf, i).unwrap();
        eval(&pt, &parse(text).unwrap()).unwrap().value
    }

    #[test]
    fn tiger_example_claims() {
        let (m, c) = tiger();
        assert!(holds(&m, &c, "w1_5", 0, "box X (l | r)"));
        assert!(holds(&m, &c, "w1_5", 0, "[X l] X ~a"));
        assert!(holds(&m, &c, "w1_5", 0, "[X r] X a"));
        assert!(holds(&m, &c, "w1_5", 1, "box (l | r)"));
        assert!(holds(&m, &c, "w1_5", 1, "[l] ~a"));
        assert!(holds(&m, &c, "w1_5", 1, "[r] a"));
    }

    #[test]
    fn tiger_generated_rules_and_updates() {
        let (m, c) = tiger();
        let leaves = |members: &std::collections::BTreeSet<TimelineId>| {
            members
                .iter()
                .map(|&t| m.leaf_id(t).to_string())
                .collect::<Vec<_>>()
        };
        let r = generated_rule(&m, &c, &parse("X l").unwrap(), 0).unwrap();
        assert_eq!(leaves(&r.members), ["w1_3", "w1_4"]);
        let r = generated_rule(&m, &c, &parse("l").unwrap(), 1).unwrap();
        assert_eq!(leaves(&r.members), ["w1_3", "w1_4"]);
        let r = generated_rule(&m, &c, &parse("#t").unwrap(), 0).unwrap();
        assert_eq!(r.members.len(), 6);

        let updated = update_context(&m, &c, &parse("X l").unwrap(), 0).unwrap();
        assert_eq!(updated.rules.len(), 5);
        let at = acceptable(&m, &updated);
        assert_eq!(leaves(&at), ["w1_3"]);

        let top_updated = update_context(&m, &c, &parse("#t").unwrap(), 0).unwrap();
        assert_eq!(acceptable(&m, &top_updated), acceptable(&m, &c));
    }

    #[test]
    fn bottom_is_false_and_y_is_vacuous_at_root() {
        let (m, c) = tiger();
        assert!(!holds(&m, &c, "w1_5", 0, "#f"));
        assert!(holds(&m, &c, "w1_5", 0, "Y #f"));
        assert!(holds(&m, &c, "w1_5", 0, "Y ~r"));
        assert!(!holds(&m, &c, "w1_5", 1, "Y #f"));
        // the axioms that force the vacuous reading, at the root
        assert!(holds(&m, &c, "w1_5", 0, "Y ~a <-> (Y #f | ~Y a)"));
        assert!(holds(&m, &c, "w1_5", 0, "Y X a <-> (Y #f | a)"));
    }

    #[test]
    fn conditional_beats_strict_implication_with_modal_consequents() {
        let m = fan_model(&[("w1_1", &[]), ("w1_2", &["p"])]);
        let c = Context::empty();
        assert!(holds(&m, &c, "w1_1", 1, "[p] box p"));
        assert!(!holds(&m, &c, "w1_1", 1, "box (p -> box p)"));
    }

    #[test]
    fn reasoning_by_case_fails() {
        let m = fan_model(&[("w1_1", &["p"]), ("w1_2", &[])]);
        let c = Context::empty();
        assert!(holds(&m, &c, "w1_1", 1, "[p] p"));
        assert!(holds(&m, &c, "w1_1", 1, "[~p] ~p"));
        assert!(!holds(&m, &c, "w1_1", 1, "box p | box ~p"));
    }

    #[test]
    fn antecedent_strengthening_fails_for_modal_consequents() {
        let m = fan_model(&[("w1_1", &["p"]), ("w1_2", &[])]);
        let c = Context::empty();
        assert!(!holds(&m, &c, "w1_1", 1, "[#t] dia ~p -> [#t & p] dia ~p"));
    }

    #[test]
    fn horizon_and_antecedent_errors() {
        let (m, c) = tiger();
        let pt = m.point(&c, "w1_5", 1).unwrap();
        assert!(matches!(
            eval(&pt, &parse("X l").unwrap()),
            Err(EvalError::HorizonExceeded { .. })
        ));
        let bad = Formula::con(Formula::atom("p").boxed(), Formula::atom("q"));
        assert!(matches!(
            eval(&pt, &bad),
            Err(EvalError::NonXyAntecedent(_))
        ));
    }

    #[test]
    fn trace_replays_to_the_same_value() {
        let (m, c) = tiger();
        let pt = m.point(&c, "w1_5", 0).unwrap();
        let f = parse("[X l] X ~a & box X (l | r)").unwrap();
        let v = eval_traced(&pt, &f).unwrap();
        assert!(v.value);
        let trace = v.trace.unwrap();
        let root = trace.last().unwrap();
        assert_eq!(root.formula, print(&f));
        assert_eq!(root.value, v.value);
        assert!(trace.len() > 5);
    }
}
