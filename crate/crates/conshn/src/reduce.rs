//! The two effective reductions and the shared disjunctive normal form.
//!
//! `kappa` pushes `X` and `Y` inward until they sit directly on atoms and
//! `#f`, rewriting with the valid identities
//!
//! ```text
//! X~φ <-> ~Xφ          Y~φ <-> (Y#f | ~Yφ)
//! X(φ&ψ) <-> Xφ & Xψ   Y(φ&ψ) <-> Yφ & Yψ
//! XYφ <-> φ            YXφ <-> (Y#f | φ)
//! X[α]φ <-> [Xα]Xφ     Y[α]φ <-> [Yα]Yφ
//! ```
//!
//! `mu` then eliminates nested conditionals down to boolean combinations of
//! path formulas and `box β`, using
//!
//! ```text
//! [α](φ&ψ)  <-> [α]φ & [α]ψ
//! [α](φ|χ)  <-> [α]φ | [α]χ      (χ closed)
//! [α][β]γ   <-> [α&β]γ
//! [α]<β>γ   <-> [α]#f | <α&β>γ
//! [α]β      <-> box (α -> β)
//! ```
//!
//! The normal form works over slot literals `±X^n l` / `±Y^n l`. A negative
//! past literal asserts its payload false *at the slot* and is vacuous at
//! instants where the slot does not exist; negating `Y^n p` as a formula
//! therefore also emits the guard `~Y^n #f` ("the instant is at least n"),
//! which keeps the normal form faithful near the root.

use crate::syntax::fragment::{is_con_xy, is_conshn, is_nxy, is_one_box, temporal_atom};
use crate::syntax::{print, Formula};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("conditional antecedent '{0}' is not in the XY fragment")]
    NonXyAntecedent(String),
    #[error("formula '{formula}' is not in the {expected} fragment")]
    FragmentViolation { formula: String, expected: String },
}

/// Hard cap on rewrite steps; both reductions terminate well below this and
/// tripping it means a broken rule set.
const STEP_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Future,
    Past,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Payload {
    Bottom,
    Atom(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A slot literal `±X^n l` or `±Y^n l`. Offset 0 is canonically `Future`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NxyLiteral {
    pub direction: Direction,
    pub offset: usize,
    pub payload: Payload,
    pub sign: Sign,
}

/// A conjunction of slot literals. The empty element is `#t`.
///
/// Both signs of one slot may coexist in a raw element; such an element is
/// satisfiable exactly at the instants where the slot does not exist yet.
/// Normal-form construction drops every element that is satisfiable at no
/// instant, so surviving disjuncts carry at most one sign per slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Element {
    lits: BTreeSet<(Direction, usize, Payload, Sign)>,
}

impl Element {
    pub fn empty() -> Element {
        Element::default()
    }

    /// Build from literals; trivially true literals are dropped, offset 0 is
    /// canonicalized to `Future`.
    pub fn from_literals(lits: impl IntoIterator<Item = NxyLiteral>) -> Element {
        let mut e = Element::empty();
        for l in lits {
            e.insert(l);
        }
        e
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = NxyLiteral> + '_ {
        self.lits.iter().map(|(d, n, p, s)| NxyLiteral {
            direction: *d,
            offset: *n,
            payload: p.clone(),
            sign: *s,
        })
    }

    fn insert(&mut self, mut lit: NxyLiteral) {
        if lit.offset == 0 {
            lit.direction = Direction::Future;
        }
        // ~X^n #f is trivially true
        if lit.direction == Direction::Future
            && lit.payload == Payload::Bottom
            && lit.sign == Sign::Neg
        {
            return;
        }
        self.lits
            .insert((lit.direction, lit.offset, lit.payload, lit.sign));
    }

    /// Conjunction of two elements.
    pub fn merge(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for lit in other.literals() {
            out.insert(lit);
        }
        out
    }

    pub fn max_past_offset(&self) -> usize {
        self.lits
            .iter()
            .filter(|(d, _, _, _)| *d == Direction::Past)
            .map(|(_, n, _, _)| *n)
            .max()
            .unwrap_or(0)
    }

    pub fn max_future_offset(&self) -> usize {
        self.lits
            .iter()
            .filter(|(d, _, _, _)| *d == Direction::Future)
            .map(|(_, n, _, _)| *n)
            .max()
            .unwrap_or(0)
    }

    /// Is the element satisfiable on some linear model at instant `i`?
    ///
    /// Guards: `+Y^n #f` needs `i < n`, `~Y^n #f` needs `i >= n`, `+X^n #f`
    /// is false outright. Slot literals landing on an existing state must
    /// agree in sign per atom; past literals whose slot lies below the root
    /// impose nothing.
    pub fn satisfiable_at(&self, i: usize) -> bool {
        // active past slots land strictly below level i and future slots at
        // or beyond it, so a plain level key never aliases across directions
        let mut slots: BTreeMap<usize, BTreeMap<&str, Sign>> = BTreeMap::new();
        for (d, n, p, s) in &self.lits {
            match (d, p) {
                (Direction::Future, Payload::Bottom) => {
                    // the trivially true negative never gets stored
                    debug_assert_eq!(*s, Sign::Pos);
                    return false;
                }
                (Direction::Past, Payload::Bottom) => {
                    let ok = match s {
                        Sign::Pos => i < *n,
                        Sign::Neg => i >= *n,
                    };
                    if !ok {
                        return false;
                    }
                }
                (Direction::Future, Payload::Atom(p)) => {
                    if let Some(prev) = slots.entry(i + n).or_default().insert(p.as_str(), *s)
                    {
                        if prev != *s {
                            return false;
                        }
                    }
                }
                (Direction::Past, Payload::Atom(p)) => {
                    if *n <= i {
                        if let Some(prev) =
                            slots.entry(i - n).or_default().insert(p.as_str(), *s)
                        {
                            if prev != *s {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Satisfiable at no instant at all. Instants beyond the maximal past
    /// offset plus one behave identically, so the check is complete.
    pub fn is_contradictory(&self) -> bool {
        (0..=self.max_past_offset() + 1).all(|i| !self.satisfiable_at(i))
    }

    /// The element as a formula: a conjunction of `X^n l` / `Y^n l` with
    /// negative signs folded into the payload.
    pub fn to_formula(&self) -> Formula {
        let mut parts = Vec::new();
        for lit in self.literals() {
            let core = match (&lit.payload, lit.sign) {
                (Payload::Atom(p), Sign::Pos) => Formula::atom(p.clone()),
                (Payload::Atom(p), Sign::Neg) => Formula::atom(p.clone()).not(),
                (Payload::Bottom, Sign::Pos) => Formula::Bottom,
                (Payload::Bottom, Sign::Neg) => Formula::top(),
            };
            let mut f = core;
            for _ in 0..lit.offset {
                f = match lit.direction {
                    Direction::Future => f.next(),
                    Direction::Past => f.yesterday(),
                };
            }
            parts.push(f);
        }
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", print(&self.to_formula()))
    }
}

fn lit(direction: Direction, offset: usize, payload: Payload, sign: Sign) -> NxyLiteral {
    NxyLiteral {
        direction,
        offset,
        payload,
        sign,
    }
}

/// The set of disjuncts of the disjunctive normal form of an `NXy` formula.
/// Negation is pushed onto the literals; negating a past payload emits the
/// slot guard alongside; contradictory elements are dropped.
pub fn dj(beta: &Formula) -> BTreeSet<Element> {
    assert!(is_nxy(beta), "dj requires an NXy formula, got {beta:?}");
    dnf(beta, true)
}

fn dnf(f: &Formula, positive: bool) -> BTreeSet<Element> {
    let raw = dnf_raw(f, positive);
    raw.into_iter().filter(|e| !e.is_contradictory()).collect()
}

fn dnf_raw(f: &Formula, positive: bool) -> BTreeSet<Element> {
    if let Some(atom) = temporal_atom(f) {
        let direction = if atom.future {
            Direction::Future
        } else {
            Direction::Past
        };
        let payload = match atom.payload {
            Some(p) => Payload::Atom(p),
            None => Payload::Bottom,
        };
        let mut lits = vec![lit(
            direction,
            atom.offset,
            payload.clone(),
            if positive { Sign::Pos } else { Sign::Neg },
        )];
        if !positive && direction == Direction::Past && payload != Payload::Bottom {
            lits.push(lit(Direction::Past, atom.offset, Payload::Bottom, Sign::Neg));
        }
        return [Element::from_literals(lits)].into_iter().collect();
    }
    match f {
        Formula::Not(g) => dnf_raw(g, !positive),
        Formula::And(a, b) => {
            if positive {
                let left = dnf_raw(a, true);
                let right = dnf_raw(b, true);
                let mut out = BTreeSet::new();
                for l in &left {
                    for r in &right {
                        out.insert(l.merge(r));
                    }
                }
                out
            } else {
                let mut out = dnf_raw(a, false);
                out.extend(dnf_raw(b, false));
                out
            }
        }
        _ => unreachable!("non-NXy node under dj: {f:?}"),
    }
}

/// Push `X`/`Y` inward to fixpoint. Accepts the full language (antecedents
/// in the XY fragment) and lands in the conditional-XY fragment.
pub fn kappa(f: &Formula) -> Result<Formula, ReduceError> {
    if !is_conshn(f) {
        return Err(ReduceError::NonXyAntecedent(print(f)));
    }
    let mut cur = f.clone();
    let mut steps = 0usize;
    while let Some(next) = push_step(&cur) {
        cur = next;
        steps += 1;
        assert!(steps < STEP_BOUND, "kappa exceeded its step bound");
    }
    assert!(
        is_con_xy(&cur),
        "kappa output left the conditional-XY fragment: {cur:?}"
    );
    Ok(cur)
}

/// One leftmost-outermost rewrite, or `None` at fixpoint.
fn push_step(f: &Formula) -> Option<Formula> {
    use Formula::*;
    match f {
        Next(inner) => match &**inner {
            Not(g) => return Some((**g).clone().next().not()),
            And(a, b) => return Some((**a).clone().next().and((**b).clone().next())),
            Yesterday(g) => return Some((**g).clone()),
            Con(a, b) => {
                return Some(Formula::con((**a).clone().next(), (**b).clone().next()))
            }
            _ => {}
        },
        Yesterday(inner) => match &**inner {
            Not(g) => {
                return Some(
                    Formula::Bottom
                        .yesterday()
                        .or((**g).clone().yesterday().not()),
                )
            }
            And(a, b) => {
                return Some((**a).clone().yesterday().and((**b).clone().yesterday()))
            }
            Next(g) => return Some(Formula::Bottom.yesterday().or((**g).clone())),
            Con(a, b) => {
                return Some(Formula::con(
                    (**a).clone().yesterday(),
                    (**b).clone().yesterday(),
                ))
            }
            _ => {}
        },
        _ => {}
    }
    match f {
        Atom(_) | Bottom => None,
        Not(g) => push_step(g).map(Formula::not),
        Next(g) => push_step(g).map(Formula::next),
        Yesterday(g) => push_step(g).map(Formula::yesterday),
        And(a, b) => {
            if let Some(a2) = push_step(a) {
                Some(a2.and((**b).clone()))
            } else {
                push_step(b).map(|b2| (**a).clone().and(b2))
            }
        }
        Con(a, b) => {
            if let Some(a2) = push_step(a) {
                Some(Formula::con(a2, (**b).clone()))
            } else {
                push_step(b).map(|b2| Formula::con((**a).clone(), b2))
            }
        }
    }
}

/// A clause of the intermediate conjunctive form: path disjuncts, positive
/// conditional disjuncts and dual disjuncts, all over `NXy` components.
struct Clause {
    nxy: Vec<Formula>,
    boxes: Vec<(Formula, Formula)>,
    dias: Vec<(Formula, Formula)>,
}

fn cnf(f: &Formula, positive: bool) -> Vec<Clause> {
    if f.con_depth() == 0 {
        // a conditional-free chunk stays opaque
        let lit = if positive { f.clone() } else { f.negated() };
        return vec![Clause {
            nxy: vec![lit],
            boxes: Vec::new(),
            dias: Vec::new(),
        }];
    }
    match f {
        Formula::Not(g) => cnf(g, !positive),
        Formula::And(a, b) => {
            if positive {
                let mut out = cnf(a, true);
                out.extend(cnf(b, true));
                out
            } else {
                // ~(a & b) is ~a | ~b: pairwise clause unions
                let left = cnf(a, false);
                let right = cnf(b, false);
                let mut out = Vec::new();
                for l in &left {
                    for r in &right {
                        out.push(Clause {
                            nxy: l.nxy.iter().chain(&r.nxy).cloned().collect(),
                            boxes: l.boxes.iter().chain(&r.boxes).cloned().collect(),
                            dias: l.dias.iter().chain(&r.dias).cloned().collect(),
                        });
                    }
                }
                out
            }
        }
        Formula::Con(a, b) => {
            let clause = if positive {
                Clause {
                    nxy: Vec::new(),
                    boxes: vec![((**a).clone(), (**b).clone())],
                    dias: Vec::new(),
                }
            } else {
                Clause {
                    nxy: Vec::new(),
                    boxes: Vec::new(),
                    dias: vec![((**a).clone(), b.negated())],
                }
            };
            vec![clause]
        }
        _ => unreachable!("temporal prefix over a conditional survived kappa: {f:?}"),
    }
}

/// Rewrite one innermost depth-2 conditional `[α]ψ` into an equivalent
/// conjunction of depth-1 formulas.
fn flatten_once(alpha: &Formula, psi: &Formula) -> Formula {
    let clauses = cnf(psi, true);
    let mut conjuncts = Vec::new();
    for clause in clauses {
        let mut parts = Vec::new();
        if !clause.nxy.is_empty() {
            let b = clause.nxy.into_iter().reduce(|x, y| x.or(y)).unwrap();
            parts.push(Formula::con(alpha.clone(), b));
        }
        for (gamma, zeta) in clause.boxes {
            parts.push(Formula::con(alpha.clone().and(gamma), zeta));
        }
        for (eta, theta) in clause.dias {
            // [α]<η>θ <-> [α]#f | <α&η>θ, with [α]#f lowered immediately
            parts.push(alpha.clone().implies(Formula::Bottom).boxed());
            parts.push(Formula::dual(alpha.clone().and(eta), theta));
        }
        conjuncts.push(parts.into_iter().reduce(|x, y| x.or(y)).unwrap());
    }
    conjuncts
        .into_iter()
        .reduce(Formula::and)
        .unwrap_or_else(Formula::top)
}

/// Path to the leftmost-innermost conditional subformula of nesting depth 2.
fn find_depth2(f: &Formula, path: &mut Vec<usize>) -> bool {
    match f {
        Formula::Atom(_) | Formula::Bottom => false,
        Formula::Not(g) | Formula::Next(g) | Formula::Yesterday(g) => {
            path.push(0);
            if find_depth2(g, path) {
                return true;
            }
            path.pop();
            false
        }
        Formula::And(a, b) => {
            path.push(0);
            if find_depth2(a, path) {
                return true;
            }
            path.pop();
            path.push(1);
            if find_depth2(b, path) {
                return true;
            }
            path.pop();
            false
        }
        Formula::Con(_, b) => {
            path.push(1);
            if find_depth2(b, path) {
                return true;
            }
            path.pop();
            f.con_depth() == 2
        }
    }
}

/// Eliminate nested conditionals: conditional-XY fragment in, one-box
/// fragment out.
pub fn mu(f: &Formula) -> Result<Formula, ReduceError> {
    if !is_con_xy(f) {
        return Err(ReduceError::FragmentViolation {
            formula: print(f),
            expected: "conditional-XY".into(),
        });
    }
    let mut cur = f.clone();
    let mut steps = 0usize;
    loop {
        let mut path = Vec::new();
        if !find_depth2(&cur, &mut path) {
            break;
        }
        let Formula::Con(alpha, psi) = cur.subformula_at(&path).unwrap() else {
            unreachable!()
        };
        let flat = flatten_once(alpha, psi);
        cur = cur.with_replaced(&path, flat).unwrap();
        steps += 1;
        assert!(steps < STEP_BOUND, "mu exceeded its step bound");
    }
    let out = lower_unnested(&cur);
    assert!(
        is_one_box(&out),
        "mu output left the one-box fragment: {out:?}"
    );
    Ok(out)
}

/// Final pass: every remaining `[α]β` with a non-`#t` antecedent becomes
/// `box (α -> β)`.
fn lower_unnested(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Bottom => f.clone(),
        Formula::Not(g) => lower_unnested(g).not(),
        Formula::Next(g) => lower_unnested(g).next(),
        Formula::Yesterday(g) => lower_unnested(g).yesterday(),
        Formula::And(a, b) => lower_unnested(a).and(lower_unnested(b)),
        Formula::Con(a, b) => {
            if **a == Formula::top() {
                (**b).clone().boxed()
            } else {
                (**a).clone().implies((**b).clone()).boxed()
            }
        }
    }
}
