//! Formula AST, concrete syntax, fragment classification and structural metrics.
//!
//! The core connectives are atoms, `⊥`, `¬`, `∧`, the temporal prefixes `X`
//! (next) and `Y` (yesterday), and the conditional necessity `[α]φ`. Every
//! derived connective (`⊤`, `∨`, `->`, `<->`, `box`, `dia`, `<α>`) is
//! desugared at construction time and never appears in the tree.

pub mod fragment;
mod parse;
mod print;

pub use fragment::{FragmentTag, TemporalAtom, fragment_of, temporal_atom};
pub use parse::{SyntaxError, parse};
pub use print::{print, print_sugared};

use std::fmt;

/// A formula over the core connectives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Yesterday(Box<Formula>),
    /// Conditional necessity `[antecedent] consequent`.
    Con(Box<Formula>, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Atom(name.into())
    }

    pub fn not(self) -> Formula {
        Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        And(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Formula {
        Next(Box::new(self))
    }

    pub fn yesterday(self) -> Formula {
        Yesterday(Box::new(self))
    }

    pub fn con(antecedent: Formula, consequent: Formula) -> Formula {
        Con(Box::new(antecedent), Box::new(consequent))
    }

    /// `⊤` as `¬⊥`.
    pub fn top() -> Formula {
        Bottom.not()
    }

    /// `a ∨ b` as `¬(¬a ∧ ¬b)`.
    pub fn or(self, rhs: Formula) -> Formula {
        self.not().and(rhs.not()).not()
    }

    /// `a -> b` as `¬(a ∧ ¬b)`.
    pub fn implies(self, rhs: Formula) -> Formula {
        self.and(rhs.not()).not()
    }

    /// `a <-> b` as `(a -> b) ∧ (b -> a)`.
    pub fn iff(self, rhs: Formula) -> Formula {
        self.clone().implies(rhs.clone()).and(rhs.implies(self))
    }

    /// `box φ` as `[⊤]φ`.
    pub fn boxed(self) -> Formula {
        Formula::con(Formula::top(), self)
    }

    /// `dia φ` as `¬[⊤]¬φ`.
    pub fn dia(self) -> Formula {
        Formula::con(Formula::top(), self.not()).not()
    }

    /// `<α>φ` as `¬[α]¬φ`.
    pub fn dual(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::con(antecedent, consequent.not()).not()
    }

    /// Negation with a top-level double negation collapsed.
    ///
    /// Used by the reductions so that `¬¬φ` never accumulates when a
    /// conditional dual is unfolded; semantically identical to `not`.
    pub fn negated(&self) -> Formula {
        match self {
            Not(g) => (**g).clone(),
            _ => self.clone().not(),
        }
    }

    /// How far past the evaluation instant evaluation can read.
    ///
    /// Evaluating `f` at instant `i` never inspects a state deeper than
    /// `i + f.horizon()`, which is what lets finite uniform-depth trees stand
    /// in for serial models.
    pub fn horizon(&self) -> usize {
        match self {
            Atom(_) | Bottom => 0,
            Not(g) => g.horizon(),
            And(a, b) => a.horizon().max(b.horizon()),
            Next(g) => 1 + g.horizon(),
            Yesterday(g) => g.horizon().saturating_sub(1),
            Con(a, b) => a.horizon().max(b.horizon()),
        }
    }

    /// Maximal `Y`-nesting not cancelled by an inner `X`.
    pub fn ydepth(&self) -> usize {
        match self {
            Atom(_) | Bottom => 0,
            Not(g) => g.ydepth(),
            And(a, b) => a.ydepth().max(b.ydepth()),
            Next(g) => g.ydepth().saturating_sub(1),
            Yesterday(g) => 1 + g.ydepth(),
            Con(a, b) => a.ydepth().max(b.ydepth()),
        }
    }

    /// Nesting depth of conditionals.
    pub fn con_depth(&self) -> usize {
        match self {
            Atom(_) | Bottom => 0,
            Not(g) | Next(g) | Yesterday(g) => g.con_depth(),
            And(a, b) => a.con_depth().max(b.con_depth()),
            Con(a, b) => 1 + a.con_depth().max(b.con_depth()),
        }
    }

    /// All atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Atom(p) => {
                out.insert(p.clone());
            }
            Bottom => {}
            Not(g) | Next(g) | Yesterday(g) => g.collect_atoms(out),
            And(a, b) | Con(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Subformula at a tree path. Unary nodes have child `0`; `And` and `Con`
    /// have children `0` (left / antecedent) and `1` (right / consequent).
    pub fn subformula_at(&self, path: &[usize]) -> Option<&Formula> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(self);
        };
        let child = match (self, step) {
            (Not(g) | Next(g) | Yesterday(g), 0) => g,
            (And(a, _) | Con(a, _), 0) => a,
            (And(_, b) | Con(_, b), 1) => b,
            _ => return None,
        };
        child.subformula_at(rest)
    }

    /// Copy of `self` with the subformula at `path` replaced.
    pub fn with_replaced(&self, path: &[usize], replacement: Formula) -> Option<Formula> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(replacement);
        };
        Some(match (self, step) {
            (Not(g), 0) => g.with_replaced(rest, replacement)?.not(),
            (Next(g), 0) => g.with_replaced(rest, replacement)?.next(),
            (Yesterday(g), 0) => g.with_replaced(rest, replacement)?.yesterday(),
            (And(a, b), 0) => a.with_replaced(rest, replacement)?.and((**b).clone()),
            (And(a, b), 1) => (**a).clone().and(b.with_replaced(rest, replacement)?),
            (Con(a, b), 0) => Formula::con(a.with_replaced(rest, replacement)?, (**b).clone()),
            (Con(a, b), 1) => Formula::con((**a).clone(), b.with_replaced(rest, replacement)?),
            _ => return None,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn horizon_counts_forward_reads() {
        assert_eq!(p().next().next().horizon(), 2);
        assert_eq!(p().next().next().yesterday().horizon(), 1);
        assert_eq!(p().yesterday().horizon(), 0);
        assert_eq!(Formula::con(p().next(), p().yesterday()).horizon(), 1);
    }

    #[test]
    fn ydepth_counts_backward_reads() {
        assert_eq!(p().yesterday().yesterday().ydepth(), 2);
        assert_eq!(p().yesterday().next().ydepth(), 0);
        assert_eq!(p().next().yesterday().ydepth(), 1);
    }

    #[test]
    fn path_navigation_round_trips() {
        let f = Formula::con(p(), p().not().and(Formula::Bottom));
        assert_eq!(f.subformula_at(&[1, 0, 0]), Some(&p()));
        let g = f.with_replaced(&[1, 1], Formula::atom("q")).unwrap();
        assert_eq!(g, Formula::con(p(), p().not().and(Formula::atom("q"))));
        assert!(f.subformula_at(&[0, 0]).is_none());
    }
}
