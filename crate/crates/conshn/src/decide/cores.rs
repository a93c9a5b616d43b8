//! Core formulas: the pivot shape `box H & dia I1 & ... & dia Ik & L` the
//! satisfiability check works over.

use super::DecideError;
use crate::syntax::fragment::{is_nxy, is_one_box};
use crate::syntax::{print, Formula};

/// `box H ∧ dia I1 ∧ … ∧ dia Ik ∧ L`, all components conditional-free path
/// formulas. Missing components default to `#t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreFormula {
    pub box_part: Formula,
    pub diamonds: Vec<Formula>,
    pub free_part: Formula,
}

impl CoreFormula {
    pub fn new(box_part: Formula, diamonds: Vec<Formula>, free_part: Formula) -> CoreFormula {
        debug_assert!(is_nxy(&box_part));
        debug_assert!(diamonds.iter().all(is_nxy));
        debug_assert!(is_nxy(&free_part));
        let diamonds = if diamonds.is_empty() {
            vec![Formula::top()]
        } else {
            diamonds
        };
        CoreFormula {
            box_part,
            diamonds,
            free_part,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let mut f = self.box_part.clone().boxed();
        for d in &self.diamonds {
            f = f.and(d.clone().dia());
        }
        f.and(self.free_part.clone())
    }

    /// `(H ∧ I1, …, H ∧ Ik, H ∧ L)`.
    pub fn basic_sequence(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = self
            .diamonds
            .iter()
            .map(|i| self.box_part.clone().and(i.clone()))
            .collect();
        out.push(self.box_part.clone().and(self.free_part.clone()));
        out
    }
}

enum DisjunctLit {
    Boxed(Formula),
    Diamond(Formula),
    Path(Formula),
}

/// Rewrite a one-box formula into an equivalent disjunction of core
/// formulas: disjunctive normal form over `box β` and path chunks, with
/// `~box β` read as `dia ~β`, box conjuncts merged and defaults inserted.
pub fn to_cores(f: &Formula) -> Result<Vec<CoreFormula>, DecideError> {
    if !is_one_box(f) {
        return Err(DecideError::FragmentViolation {
            formula: print(f),
            expected: "one-box".into(),
        });
    }
    let disjuncts = dnf_atoms(f, true);
    let mut cores = Vec::new();
    for lits in disjuncts {
        let mut boxes = Vec::new();
        let mut diamonds = Vec::new();
        let mut paths = Vec::new();
        for lit in lits {
            match lit {
                DisjunctLit::Boxed(b) => boxes.push(b),
                DisjunctLit::Diamond(d) => diamonds.push(d),
                DisjunctLit::Path(p) => paths.push(p),
            }
        }
        let box_part = boxes
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top);
        let free_part = paths
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top);
        cores.push(CoreFormula::new(box_part, diamonds, free_part));
    }
    Ok(cores)
}

fn dnf_atoms(f: &Formula, positive: bool) -> Vec<Vec<DisjunctLit>> {
    if f.con_depth() == 0 {
        let lit = if positive { f.clone() } else { f.negated() };
        return vec![vec![DisjunctLit::Path(lit)]];
    }
    match f {
        Formula::Not(g) => dnf_atoms(g, !positive),
        Formula::And(a, b) => {
            if positive {
                let left = dnf_atoms(a, true);
                let right = dnf_atoms(b, true);
                let mut out = Vec::new();
                for l in &left {
                    for r in &right {
                        let mut d: Vec<DisjunctLit> = Vec::new();
                        d.extend(l.iter().map(copy_lit));
                        d.extend(r.iter().map(copy_lit));
                        out.push(d);
                    }
                }
                out
            } else {
                let mut out = dnf_atoms(a, false);
                out.extend(dnf_atoms(b, false));
                out
            }
        }
        Formula::Con(_, b) => {
            if positive {
                vec![vec![DisjunctLit::Boxed((**b).clone())]]
            } else {
                vec![vec![DisjunctLit::Diamond(b.negated())]]
            }
        }
        _ => unreachable!("non-one-box node under to_cores: {f:?}"),
    }
}

fn copy_lit(l: &DisjunctLit) -> DisjunctLit {
    match l {
        DisjunctLit::Boxed(f) => DisjunctLit::Boxed(f.clone()),
        DisjunctLit::Diamond(f) => DisjunctLit::Diamond(f.clone()),
        DisjunctLit::Path(f) => DisjunctLit::Path(f.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn negated_box_becomes_a_diamond() {
        let f = parse("box (Y #f | X p) & ~box X p").unwrap();
        let cores = to_cores(&f).unwrap();
        assert_eq!(cores.len(), 1);
        let cf = &cores[0];
        assert_eq!(cf.box_part, parse("Y #f | X p").unwrap());
        assert_eq!(cf.diamonds, vec![parse("~X p").unwrap()]);
        assert_eq!(cf.free_part, Formula::top());
    }

    #[test]
    fn defaults_fill_missing_components() {
        let cores = to_cores(&parse("p").unwrap()).unwrap();
        assert_eq!(cores.len(), 1);
        let cf = &cores[0];
        assert_eq!(cf.box_part, Formula::top());
        assert_eq!(cf.diamonds, vec![Formula::top()]);
        assert_eq!(cf.free_part, parse("p").unwrap());
    }

    #[test]
    fn boxes_merge_into_one_component() {
        let cores = to_cores(&parse("box p & box q & r").unwrap()).unwrap();
        assert_eq!(cores.len(), 1);
        let cf = &cores[0];
        assert_eq!(cf.box_part, parse("p & q").unwrap());
        assert_eq!(cf.diamonds, vec![Formula::top()]);
        assert_eq!(cf.free_part, parse("r").unwrap());
    }

    #[test]
    fn basic_sequence_shape() {
        let cf = CoreFormula::new(
            parse("p").unwrap(),
            vec![parse("q").unwrap()],
            parse("r").unwrap(),
        );
        assert_eq!(
            cf.basic_sequence(),
            vec![parse("p & q").unwrap(), parse("p & r").unwrap()]
        );
        let trivial = CoreFormula::new(Formula::top(), vec![Formula::top()], Formula::top());
        assert_eq!(
            trivial.basic_sequence(),
            vec![
                Formula::top().and(Formula::top()),
                Formula::top().and(Formula::top())
            ]
        );
    }
}
