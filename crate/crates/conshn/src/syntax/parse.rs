//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, tightest first: prefix unary (`~`, `X`, `Y`, `[..]`, `<..>`,
//! `box`, `dia`), `&`, `|`, `->` (right-associative), `<->`. `&`, `|` and
//! `<->` associate to the left.

use super::Formula;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    True,
    NextOp,
    YesterdayOp,
    BoxKw,
    DiaKw,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LBracket,
    RBracket,
    Lt,
    Gt,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '~' => {
                toks.push((i, Tok::Tilde));
                i += 1;
            }
            '&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            '|' => {
                toks.push((i, Tok::Pipe));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            '>' => {
                toks.push((i, Tok::Gt));
                i += 1;
            }
            '<' => {
                if bytes[i + 1..].starts_with(b"->") {
                    toks.push((i, Tok::DArrow));
                    i += 3;
                } else {
                    toks.push((i, Tok::Lt));
                    i += 1;
                }
            }
            '-' => {
                if bytes[i + 1..].starts_with(b">") {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return err(i, "expected '->'");
                }
            }
            '#' => {
                match bytes.get(i + 1).copied() {
                    Some(b'f') => toks.push((i, Tok::False)),
                    Some(b't') => toks.push((i, Tok::True)),
                    _ => return err(i, "expected '#f' or '#t'"),
                }
                i += 2;
            }
            'X' => {
                toks.push((i, Tok::NextOp));
                i += 1;
            }
            'Y' => {
                toks.push((i, Tok::YesterdayOp));
                i += 1;
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                toks.push((
                    start,
                    match word {
                        "box" => Tok::BoxKw,
                        "dia" => Tok::DiaKw,
                        _ => Tok::Ident(word.to_string()),
                    },
                ));
            }
            _ => return err(i, format!("unknown token '{c}'")),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    // <-> level, left-associative
    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.implication()?;
        while self.peek() == Some(&Tok::DArrow) {
            self.at += 1;
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    // -> level, right-associative
    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.at += 1;
            let rhs = self.implication()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.at += 1;
            let rhs = self.conjunction()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.at += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::NextOp) => {
                self.at += 1;
                Ok(self.unary()?.next())
            }
            Some(Tok::YesterdayOp) => {
                self.at += 1;
                Ok(self.unary()?.yesterday())
            }
            Some(Tok::BoxKw) => {
                self.at += 1;
                Ok(self.unary()?.boxed())
            }
            Some(Tok::DiaKw) => {
                self.at += 1;
                Ok(self.unary()?.dia())
            }
            Some(Tok::LBracket) => {
                self.at += 1;
                let antecedent = self.formula()?;
                self.expect(Tok::RBracket, "closing ']'")?;
                let consequent = self.unary()?;
                Ok(Formula::con(antecedent, consequent))
            }
            Some(Tok::Lt) => {
                self.at += 1;
                let antecedent = self.formula()?;
                self.expect(Tok::Gt, "closing '>'")?;
                let consequent = self.unary()?;
                Ok(Formula::dual(antecedent, consequent))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(Formula::atom(name)),
            Some(Tok::False) => Ok(Formula::Bottom),
            Some(Tok::True) => Ok(Formula::top()),
            Some(Tok::LParen) => {
                let inner = self.formula()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(inner)
            }
            Some(_) => err(pos, "expected a formula"),
            None => err(pos, "unexpected end of input"),
        }
    }
}

/// Parse formula text into its desugared AST.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.at != p.toks.len() {
        return err(p.pos(), "trailing input after formula");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula::Bottom;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn parses_conditional_with_temporal_prefixes() {
        let f = parse("[X l] X ~a").unwrap();
        assert_eq!(
            f,
            Formula::con(atom("l").next(), atom("a").not().next())
        );
    }

    #[test]
    fn parses_bare_atom() {
        assert_eq!(parse("p").unwrap(), atom("p"));
    }

    #[test]
    fn box_desugars_to_top_conditional() {
        let f = parse("box (p -> box p)").unwrap();
        let expected = atom("p").implies(atom("p").boxed()).boxed();
        assert_eq!(f, expected);
        // the antecedent really is ¬⊥
        if let Formula::Con(a, _) = &f {
            assert_eq!(**a, Formula::top());
        } else {
            panic!("expected a conditional");
        }
    }

    #[test]
    fn dual_and_dia_desugar_to_negated_conditionals() {
        assert_eq!(
            parse("<p> q").unwrap(),
            Formula::dual(atom("p"), atom("q"))
        );
        assert_eq!(parse("dia p").unwrap(), atom("p").dia());
    }

    #[test]
    fn precedence_binds_prefixes_tightest() {
        assert_eq!(
            parse("[p] q & r").unwrap(),
            Formula::con(atom("p"), atom("q")).and(atom("r"))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            atom("p").implies(atom("q").implies(atom("r")))
        );
        assert_eq!(
            parse("~X p | Y #f").unwrap(),
            atom("p").next().not().or(Bottom.yesterday())
        );
    }

    #[test]
    fn iff_inside_dual_brackets() {
        let f = parse("<p <-> q> r").unwrap();
        assert_eq!(f, Formula::dual(atom("p").iff(atom("q")), atom("r")));
    }

    #[test]
    fn reports_error_position() {
        let e = parse("p & (q").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse("p ? q").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.message.contains("unknown token"));
    }
}
