//! Element-level satisfiability and the witness construction for core
//! formulas.
//!
//! An atomic sequence picks one normal-form disjunct per diamond plus one
//! for the designated timeline, each conjoined with a disjunct of the box
//! component. A core formula is satisfiable exactly when some atomic
//! sequence admits an evaluation instant at which
//!
//! 1. every element is individually satisfiable on a linear model, and
//! 2. the elements are jointly consistent on the one state all witness
//!    timelines share: at instant 0 their present slots land on the common
//!    root, and at instant `i >= 1` their `Y^i` slots do.
//!
//! Condition 2 is checked at every instant, not only when some element pins
//! the evaluation to the root: the witness timelines all pass through the
//! root regardless.

use super::cores::CoreFormula;
use super::DecideError;
use crate::model::{Context, Model, ModelDoc, StateDoc};
use crate::reduce::{dj, Direction, Element, Payload, Sign};
use crate::semantics::eval;
use crate::syntax::Formula;
use std::collections::{BTreeMap, BTreeSet};

/// A satisfying contextualized point, owning its model. The context is
/// always empty: any definable timeline restriction is already folded into
/// the model.
#[derive(Debug, Clone)]
pub struct SatWitness {
    pub model: Model,
    pub context: Context,
    pub leaf: String,
    pub instant: usize,
}

impl SatWitness {
    pub fn point(&self) -> crate::model::Point<'_> {
        self.model
            .point(&self.context, &self.leaf, self.instant)
            .expect("witness point is admissible by construction")
    }
}

#[derive(Debug, Clone)]
pub enum SatOutcome {
    Witness(SatWitness),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Witness(_))
    }
}

/// Instants `0..=i_max` at which the element is satisfiable on some linear
/// model.
pub fn element_sat_instants(e: &Element, i_max: usize) -> BTreeSet<usize> {
    debug_assert!(e.max_past_offset() <= i_max);
    (0..=i_max).filter(|&i| e.satisfiable_at(i)).collect()
}

/// Positive/negative atoms the elements jointly put on the shared state at
/// evaluation instant `i`; `None` when the union clashes in sign.
fn shared_state_literals(elements: &[Element], i: usize) -> Option<BTreeMap<String, Sign>> {
    let mut union: BTreeMap<String, Sign> = BTreeMap::new();
    for e in elements {
        for lit in e.literals() {
            let on_shared = match (&lit.direction, i) {
                (Direction::Future, 0) => lit.offset == 0,
                (Direction::Past, _) => i >= 1 && lit.offset == i,
                _ => false,
            };
            if !on_shared {
                continue;
            }
            if let Payload::Atom(p) = &lit.payload {
                if let Some(prev) = union.insert(p.clone(), lit.sign) {
                    if prev != lit.sign {
                        return None;
                    }
                }
            }
        }
    }
    Some(union)
}

/// Decide a core formula, searching atomic sequences in normal-form product
/// order and instants in ascending order. `extra_depth` pads the witness so
/// that replaying a formula of that horizon stays within range.
pub fn sat_core_padded(cf: &CoreFormula, extra_depth: usize) -> Result<SatOutcome, DecideError> {
    let dj_h: Vec<Element> = dj(&cf.box_part).into_iter().collect();
    let dj_is: Vec<Vec<Element>> = cf
        .diamonds
        .iter()
        .map(|i| dj(i).into_iter().collect())
        .collect();
    let dj_l: Vec<Element> = dj(&cf.free_part).into_iter().collect();

    let k = cf.diamonds.len();
    // coordinates: (H', I') per diamond, then (H'', L')
    let mut sizes = Vec::new();
    for d in &dj_is {
        sizes.push(dj_h.len());
        sizes.push(d.len());
    }
    sizes.push(dj_h.len());
    sizes.push(dj_l.len());
    if sizes.iter().any(|&s| s == 0) {
        return Ok(SatOutcome::Unsat);
    }

    let mut odometer = vec![0usize; sizes.len()];
    loop {
        let mut elements = Vec::with_capacity(k + 1);
        for (j, d) in dj_is.iter().enumerate() {
            elements.push(dj_h[odometer[2 * j]].merge(&d[odometer[2 * j + 1]]));
        }
        elements.push(dj_h[odometer[2 * k]].merge(&dj_l[odometer[2 * k + 1]]));

        let m = elements
            .iter()
            .map(Element::max_past_offset)
            .max()
            .unwrap_or(0);
        for i in 0..=m + 1 {
            if !elements.iter().all(|e| e.satisfiable_at(i)) {
                continue;
            }
            let Some(shared) = shared_state_literals(&elements, i) else {
                continue;
            };
            return Ok(SatOutcome::Witness(build_witness(
                &elements,
                i,
                &shared,
                extra_depth,
            )));
        }

        // advance odometer, last coordinate fastest
        let mut pos = odometer.len();
        loop {
            if pos == 0 {
                return Ok(SatOutcome::Unsat);
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < sizes[pos] {
                break;
            }
            odometer[pos] = 0;
        }
    }
}

/// Decide a core formula; a returned witness replays the core itself.
pub fn sat_core(cf: &CoreFormula) -> Result<SatOutcome, DecideError> {
    let own_horizon = cf
        .diamonds
        .iter()
        .chain([&cf.box_part, &cf.free_part])
        .map(Formula::horizon)
        .max()
        .unwrap_or(0);
    let outcome = sat_core_padded(cf, own_horizon)?;
    if let SatOutcome::Witness(w) = &outcome {
        let v = eval(&w.point(), &cf.to_formula()).map_err(DecideError::Eval)?;
        if !v.value {
            return Err(DecideError::WitnessVerificationFailed {
                formula: crate::syntax::print(&cf.to_formula()),
            });
        }
    }
    Ok(outcome)
}

/// Materialize the merged-branch model: a shared root carrying the joint
/// slot assignment, one linear branch per element diverging right after the
/// root, padded to uniform depth. The designated timeline is the last
/// branch (the one carrying the free part).
fn build_witness(
    elements: &[Element],
    instant: usize,
    shared: &BTreeMap<String, Sign>,
    extra_depth: usize,
) -> SatWitness {
    let max_x = elements
        .iter()
        .map(Element::max_future_offset)
        .max()
        .unwrap_or(0);
    let depth = (instant + max_x.max(extra_depth)).max(1);

    let root_atoms: Vec<String> = shared
        .iter()
        .filter(|(_, &s)| s == Sign::Pos)
        .map(|(p, _)| p.clone())
        .collect();
    let mut states = vec![StateDoc {
        id: "w0_1".into(),
        parent: None,
        atoms: root_atoms,
    }];

    for (b, e) in elements.iter().enumerate() {
        let mut branch_atoms: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for lit in e.literals() {
            if lit.sign != Sign::Pos {
                continue;
            }
            let Payload::Atom(p) = &lit.payload else {
                continue;
            };
            let level = match lit.direction {
                Direction::Future => instant + lit.offset,
                Direction::Past => {
                    if lit.offset > instant {
                        continue; // vacuous below the root
                    }
                    instant - lit.offset
                }
            };
            if level >= 1 {
                branch_atoms.entry(level).or_default().insert(p.clone());
            }
        }
        for level in 1..=depth {
            let parent = if level == 1 {
                "w0_1".to_string()
            } else {
                format!("w{}_{}", level - 1, b + 1)
            };
            states.push(StateDoc {
                id: format!("w{}_{}", level, b + 1),
                parent: Some(parent),
                atoms: branch_atoms
                    .get(&level)
                    .map(|s| s.iter().cloned().collect())
                    .unwrap_or_default(),
            });
        }
    }

    let doc = ModelDoc {
        depth,
        root: "w0_1".into(),
        states,
    };
    let model = Model::from_doc(&doc).expect("constructed witness model is well formed");
    SatWitness {
        model,
        context: Context::empty(),
        leaf: format!("w{}_{}", depth, elements.len()),
        instant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{kappa, NxyLiteral};
    use crate::syntax::parse;

    fn element_of(text: &str) -> Element {
        let d = dj(&parse(text).unwrap());
        assert_eq!(d.len(), 1, "expected a single disjunct for {text}");
        d.into_iter().next().unwrap()
    }

    fn lit(direction: Direction, offset: usize, payload: Payload, sign: Sign) -> NxyLiteral {
        NxyLiteral {
            direction,
            offset,
            payload,
            sign,
        }
    }

    #[test]
    fn two_sided_past_slot_is_vacuous_only_at_root() {
        let e = Element::from_literals([
            lit(Direction::Past, 1, Payload::Atom("p".into()), Sign::Pos),
            lit(Direction::Past, 1, Payload::Atom("p".into()), Sign::Neg),
        ]);
        assert_eq!(element_sat_instants(&e, 2), [0].into());
    }

    #[test]
    fn present_slot_contradiction_has_no_instants() {
        let e = Element::from_literals([
            lit(Direction::Future, 0, Payload::Atom("p".into()), Sign::Pos),
            lit(Direction::Future, 0, Payload::Atom("p".into()), Sign::Neg),
        ]);
        assert_eq!(element_sat_instants(&e, 2), BTreeSet::new());
    }

    #[test]
    fn past_bottom_guards_cap_the_instant() {
        let e = element_of("X p & Y Y #f");
        assert_eq!(element_sat_instants(&e, 3), [0, 1].into());
        let e = element_of("~Y #f");
        assert_eq!(element_sat_instants(&e, 2), [1, 2].into());
    }

    #[test]
    fn sat_core_finds_root_witness_for_vacuous_past() {
        // the core of ~(box Y X X p -> box X p) after reduction
        let h = kappa(&parse("Y X X p").unwrap()).unwrap();
        let cf = CoreFormula::new(h, vec![parse("~X p").unwrap()], Formula::top());
        match sat_core(&cf).unwrap() {
            SatOutcome::Witness(w) => {
                assert_eq!(w.instant, 0);
                assert!(w.context.rules.is_empty());
                assert!(eval(&w.point(), &cf.to_formula()).unwrap().value);
            }
            SatOutcome::Unsat => panic!("expected a witness"),
        }
    }

    #[test]
    fn sat_core_rejects_jointly_inconsistent_diamonds() {
        // dia (p & Yq & YY#f) & dia (~p & Y~q & YY#f): each element is fine
        // alone, but present slots clash at instant 0 and root slots at 1,
        // and the guards rule out instants past 1
        let i1 = parse("p & Y q & Y Y #f").unwrap();
        let i2 = kappa(&parse("~p & Y ~q & Y Y #f").unwrap()).unwrap();
        let cf = CoreFormula::new(Formula::top(), vec![i1, i2], Formula::top());
        assert!(!sat_core(&cf).unwrap().is_sat());
    }

    #[test]
    fn sat_core_needs_consistent_elements() {
        let cf = CoreFormula::new(
            parse("p").unwrap(),
            vec![parse("~p").unwrap()],
            Formula::top(),
        );
        assert!(!sat_core(&cf).unwrap().is_sat());
    }

    #[test]
    fn witness_pads_to_requested_depth() {
        let cf = CoreFormula::new(Formula::top(), vec![parse("p").unwrap()], Formula::top());
        if let SatOutcome::Witness(w) = sat_core_padded(&cf, 2).unwrap() {
            assert_eq!(w.model.depth(), 2);
        } else {
            panic!("expected a witness");
        }
    }
}
