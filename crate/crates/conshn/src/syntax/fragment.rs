//! Grammar-membership checks for the language fragments the reductions and
//! the decision procedure work over.

use super::Formula;
use Formula::*;

/// Fragments a formula can belong to.
///
/// `ConShn` is the general language: conditionals may nest in consequents but
/// every antecedent is conditional-free. The remaining tags are the
/// reduction targets and the closed-formula class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FragmentTag {
    /// No conditional anywhere.
    Xy,
    /// Boolean combinations of `X^n p`, `X^n #f`, `Y^n p`, `Y^n #f`.
    NXy,
    /// As `NXy` plus conditionals whose antecedents are `NXy`.
    ConXy,
    /// Boolean combinations of `NXy` formulas and `box β` with `β` in `NXy`.
    OneBox,
    /// Antecedents of all conditionals are conditional-free.
    ConShn,
    /// Boolean combinations of conditionals.
    Closed,
}

/// A maximal temporal-prefix atom `X^n p`, `X^n #f`, `Y^n p` or `Y^n #f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalAtom {
    pub future: bool,
    pub offset: usize,
    /// `None` stands for `#f`.
    pub payload: Option<String>,
}

/// Decompose a homogeneous temporal prefix over an atom or `#f`.
/// Offset 0 (a bare atom or `#f`) counts as future.
pub fn temporal_atom(f: &Formula) -> Option<TemporalAtom> {
    fn peel(f: &Formula, future: bool, offset: usize) -> Option<TemporalAtom> {
        match f {
            Atom(p) => Some(TemporalAtom {
                future,
                offset,
                payload: Some(p.clone()),
            }),
            Bottom => Some(TemporalAtom {
                future,
                offset,
                payload: None,
            }),
            Next(g) if future => peel(g, true, offset + 1),
            Yesterday(g) if !future => peel(g, false, offset + 1),
            _ => None,
        }
    }
    match f {
        Next(g) => peel(g, true, 1),
        Yesterday(g) => peel(g, false, 1),
        _ => peel(f, true, 0),
    }
}

pub fn is_xy(f: &Formula) -> bool {
    match f {
        Atom(_) | Bottom => true,
        Not(g) | Next(g) | Yesterday(g) => is_xy(g),
        And(a, b) => is_xy(a) && is_xy(b),
        Con(..) => false,
    }
}

pub fn is_nxy(f: &Formula) -> bool {
    match f {
        Not(g) => is_nxy(g),
        And(a, b) => is_nxy(a) && is_nxy(b),
        _ => temporal_atom(f).is_some(),
    }
}

pub fn is_con_xy(f: &Formula) -> bool {
    match f {
        Not(g) => is_con_xy(g),
        And(a, b) => is_con_xy(a) && is_con_xy(b),
        Con(a, b) => is_nxy(a) && is_con_xy(b),
        _ => temporal_atom(f).is_some(),
    }
}

pub fn is_one_box(f: &Formula) -> bool {
    match f {
        Not(g) => is_one_box(g),
        And(a, b) => is_one_box(a) && is_one_box(b),
        Con(a, b) => matches!(&**a, Not(g) if **g == Bottom) && is_nxy(b),
        _ => is_nxy(f),
    }
}

pub fn is_conshn(f: &Formula) -> bool {
    match f {
        Atom(_) | Bottom => true,
        Not(g) | Next(g) | Yesterday(g) => is_conshn(g),
        And(a, b) => is_conshn(a) && is_conshn(b),
        Con(a, b) => is_xy(a) && is_conshn(b),
    }
}

pub fn is_closed(f: &Formula) -> bool {
    match f {
        Not(g) => is_closed(g),
        And(a, b) => is_closed(a) && is_closed(b),
        Con(a, b) => is_xy(a) && is_conshn(b),
        _ => false,
    }
}

/// Exactly the tags whose grammar admits `f`.
pub fn fragment_of(f: &Formula) -> std::collections::BTreeSet<FragmentTag> {
    let mut tags = std::collections::BTreeSet::new();
    if is_xy(f) {
        tags.insert(FragmentTag::Xy);
    }
    if is_nxy(f) {
        tags.insert(FragmentTag::NXy);
    }
    if is_con_xy(f) {
        tags.insert(FragmentTag::ConXy);
    }
    if is_one_box(f) {
        tags.insert(FragmentTag::OneBox);
    }
    if is_conshn(f) {
        tags.insert(FragmentTag::ConShn);
    }
    if is_closed(f) {
        tags.insert(FragmentTag::Closed);
    }
    tags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn tags(text: &str) -> std::collections::BTreeSet<FragmentTag> {
        fragment_of(&parse(text).unwrap())
    }

    #[test]
    fn temporal_prefix_atoms() {
        let xy = tags("X p");
        assert!(xy.contains(&FragmentTag::Xy));
        assert!(xy.contains(&FragmentTag::NXy));
        assert!(xy.contains(&FragmentTag::ConXy));
        assert!(xy.contains(&FragmentTag::OneBox));
        assert!(xy.contains(&FragmentTag::ConShn));
        assert!(!xy.contains(&FragmentTag::Closed));
    }

    #[test]
    fn mixed_prefixes_leave_nxy() {
        assert!(tags("X Y p").contains(&FragmentTag::Xy));
        assert!(!tags("X Y p").contains(&FragmentTag::NXy));
        assert!(!tags("X (p & q)").contains(&FragmentTag::NXy));
        assert!(tags("X p & ~Y #f").contains(&FragmentTag::NXy));
    }

    #[test]
    fn nested_conditional_over_box() {
        let t = tags("[p] box p");
        assert!(t.contains(&FragmentTag::ConShn));
        assert!(t.contains(&FragmentTag::Closed));
        assert!(t.contains(&FragmentTag::ConXy));
        assert!(!t.contains(&FragmentTag::Xy));
        assert!(!t.contains(&FragmentTag::OneBox));
    }

    #[test]
    fn boolean_combination_of_conditionals_is_closed() {
        let t = tags("~[p] q & [q] p");
        assert!(t.contains(&FragmentTag::Closed));
        assert!(t.contains(&FragmentTag::ConShn));
        assert!(!t.contains(&FragmentTag::Xy));
    }

    #[test]
    fn one_box_requires_top_antecedents() {
        assert!(tags("box (X p & ~p) & ~box Y #f").contains(&FragmentTag::OneBox));
        assert!(!tags("[p] q").contains(&FragmentTag::OneBox));
        assert!(!tags("X box p").contains(&FragmentTag::OneBox));
    }

    #[test]
    fn non_xy_antecedent_is_outside_the_language() {
        let f = Formula::con(Formula::atom("p").boxed(), Formula::atom("q"));
        assert!(fragment_of(&f).is_empty());
    }
}
