//! Canonical text rendering. `print` emits the core connectives only;
//! `print_sugared` folds derived-connective patterns (`#t`, `|`, `->`, `<->`,
//! `box`, `dia`, `<..>`) back into surface syntax. Both renderings reparse to
//! the identical AST.

use super::Formula;
use Formula::*;

const LVL_IFF: u8 = 0;
const LVL_IMP: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_UNARY: u8 = 4;
const LVL_PRIMARY: u8 = 5;

/// Render using core connectives only.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    go(f, 0, false, &mut out);
    out
}

/// Render with derived connectives restored where the tree matches their
/// desugaring.
pub fn print_sugared(f: &Formula) -> String {
    let mut out = String::new();
    go(f, 0, true, &mut out);
    out
}

/// The sugared reading of a node, if any.
enum Sugar<'a> {
    Top,
    Or(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Iff(&'a Formula, &'a Formula),
    Box(&'a Formula),
    Dia(&'a Formula),
    Dual(&'a Formula, &'a Formula),
}

fn is_top(f: &Formula) -> bool {
    matches!(f, Not(g) if **g == Bottom)
}

fn as_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Not(g) = f {
        if let And(a, b) = &**g {
            if let Not(c) = &**b {
                return Some((a, c));
            }
        }
    }
    None
}

fn sugar_of(f: &Formula) -> Option<Sugar<'_>> {
    if is_top(f) {
        return Some(Sugar::Top);
    }
    // a <-> b is (a -> b) & (b -> a)
    if let And(l, r) = f {
        if let (Some((la, lb)), Some((rb, ra))) = (as_imp(l), as_imp(r)) {
            if la == ra && lb == rb {
                return Some(Sugar::Iff(la, lb));
            }
        }
        return None;
    }
    if let Not(g) = f {
        match &**g {
            // dia x / <a> x are ~[..]~x; skipped when the consequent itself
            // reads as an implication or disjunction, so that `~box (a -> b)`
            // wins over `dia (a & ~b)`
            Con(a, c) => {
                if let Not(x) = &**c {
                    if matches!(&**x, And(_, b) if matches!(&**b, Not(_))) {
                        return None;
                    }
                    if is_top(a) {
                        return Some(Sugar::Dia(x));
                    }
                    return Some(Sugar::Dual(a, x));
                }
                return None;
            }
            And(a, b) => {
                if let Not(c) = &**b {
                    // a | b is ~(~a & ~b); otherwise ~(a & ~c) is a -> c
                    if let Not(a_inner) = &**a {
                        return Some(Sugar::Or(a_inner, c));
                    }
                    return Some(Sugar::Imp(a, c));
                }
                return None;
            }
            _ => return None,
        }
    }
    if let Con(a, c) = f {
        if is_top(a) {
            return Some(Sugar::Box(c));
        }
    }
    None
}

fn go(f: &Formula, min_level: u8, sugar: bool, out: &mut String) {
    if sugar {
        if let Some(s) = sugar_of(f) {
            let level = match s {
                Sugar::Top => LVL_PRIMARY,
                Sugar::Iff(..) => LVL_IFF,
                Sugar::Imp(..) => LVL_IMP,
                Sugar::Or(..) => LVL_OR,
                Sugar::Box(_) | Sugar::Dia(_) | Sugar::Dual(..) => LVL_UNARY,
            };
            let parens = level < min_level;
            if parens {
                out.push('(');
            }
            match s {
                Sugar::Top => out.push_str("#t"),
                Sugar::Iff(a, b) => {
                    go(a, LVL_IMP, sugar, out);
                    out.push_str(" <-> ");
                    go(b, LVL_IMP, sugar, out);
                }
                // implication operands keep explicit parentheses around
                // & / | chains for readability
                Sugar::Imp(a, b) => {
                    go(a, LVL_UNARY, sugar, out);
                    out.push_str(" -> ");
                    go(b, LVL_IMP, sugar, out);
                }
                Sugar::Or(a, b) => {
                    go(a, LVL_OR, sugar, out);
                    out.push_str(" | ");
                    go(b, LVL_AND, sugar, out);
                }
                Sugar::Box(c) => {
                    out.push_str("box ");
                    go(c, LVL_UNARY, sugar, out);
                }
                Sugar::Dia(c) => {
                    out.push_str("dia ");
                    go(c, LVL_UNARY, sugar, out);
                }
                Sugar::Dual(a, c) => {
                    out.push('<');
                    go(a, 0, sugar, out);
                    out.push_str("> ");
                    go(c, LVL_UNARY, sugar, out);
                }
            }
            if parens {
                out.push(')');
            }
            return;
        }
    }
    let level = match f {
        Atom(_) | Bottom => LVL_PRIMARY,
        Not(_) | Next(_) | Yesterday(_) | Con(..) => LVL_UNARY,
        And(..) => LVL_AND,
    };
    let parens = level < min_level;
    if parens {
        out.push('(');
    }
    match f {
        Atom(name) => out.push_str(name),
        Bottom => out.push_str("#f"),
        Not(g) => {
            out.push('~');
            go(g, LVL_UNARY, sugar, out);
        }
        Next(g) => {
            out.push_str("X ");
            go(g, LVL_UNARY, sugar, out);
        }
        Yesterday(g) => {
            out.push_str("Y ");
            go(g, LVL_UNARY, sugar, out);
        }
        And(a, b) => {
            go(a, LVL_AND, sugar, out);
            out.push_str(" & ");
            go(b, LVL_UNARY, sugar, out);
        }
        Con(a, c) => {
            out.push('[');
            go(a, 0, sugar, out);
            out.push_str("] ");
            go(c, LVL_UNARY, sugar, out);
        }
    }
    if parens {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn direct_renderings() {
        assert_eq!(print(&Formula::con(atom("p"), atom("q"))), "[p] q");
        assert_eq!(print(&Bottom.not()), "~#f");
        assert_eq!(
            print(&Formula::con(atom("l").next(), atom("a").not().next())),
            "[X l] X ~a"
        );
    }

    #[test]
    fn sugared_restores_derived_forms() {
        assert_eq!(print_sugared(&Formula::top()), "#t");
        assert_eq!(print_sugared(&atom("p").or(atom("q"))), "p | q");
        assert_eq!(
            print_sugared(&atom("p").and(atom("q")).implies(atom("r")).boxed()),
            "box ((p & q) -> r)"
        );
        assert_eq!(print_sugared(&atom("p").dia().not()), "~dia p");
        assert_eq!(
            print_sugared(&Formula::dual(atom("p"), atom("q"))),
            "<p> q"
        );
        assert_eq!(print_sugared(&atom("p").iff(atom("q"))), "p <-> q");
    }

    #[test]
    fn parentheses_follow_precedence() {
        let f = atom("p").and(atom("q").and(atom("r")));
        assert_eq!(print(&f), "p & (q & r)");
        let g = atom("p").and(atom("q")).and(atom("r"));
        assert_eq!(print(&g), "p & q & r");
        let h = Formula::con(atom("p"), atom("q").and(atom("r")));
        assert_eq!(print(&h), "[p] (q & r)");
    }

    #[test]
    fn both_styles_reparse_to_the_same_tree() {
        for text in [
            "[X l] X ~a",
            "box (p -> box p)",
            "~(p & ~q) & ~r",
            "<X p> (q | ~r) <-> dia #t",
            "Y (p -> q) & [~p] Y #f",
        ] {
            let f = parse(text).unwrap();
            assert_eq!(parse(&print(&f)).unwrap(), f, "core: {text}");
            assert_eq!(parse(&print_sugared(&f)).unwrap(), f, "sugar: {text}");
        }
    }
}
