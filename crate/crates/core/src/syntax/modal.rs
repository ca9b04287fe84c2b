use std::fmt;

use super::parse::{Parser, Tok};
use super::{Atom, Formula, PredSym, SyntaxError, Term};

/// Variable attached to predicate occurrences outside every modal operator.
pub const FREE_WORLD_VAR: &str = "w";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModalFormula {
    Prop(PredSym),
    One,
    Zero,
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Box(Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
}

impl ModalFormula {
    pub fn prop(name: &str) -> ModalFormula {
        ModalFormula::Prop(PredSym::new(name))
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn nec(a: ModalFormula) -> ModalFormula {
        ModalFormula::Box(Box::new(a))
    }

    pub fn pos(a: ModalFormula) -> ModalFormula {
        ModalFormula::Diamond(Box::new(a))
    }

    pub fn negate(&self) -> ModalFormula {
        match self {
            ModalFormula::Prop(p) => ModalFormula::Prop(p.dual()),
            ModalFormula::One => ModalFormula::Zero,
            ModalFormula::Zero => ModalFormula::One,
            ModalFormula::And(a, b) => ModalFormula::or(a.negate(), b.negate()),
            ModalFormula::Or(a, b) => ModalFormula::and(a.negate(), b.negate()),
            ModalFormula::Box(a) => ModalFormula::pos(a.negate()),
            ModalFormula::Diamond(a) => ModalFormula::nec(a.negate()),
        }
    }

    /// Every predicate occurrence lies under some modal operator.
    pub fn is_closed(&self) -> bool {
        match self {
            ModalFormula::Prop(_) => false,
            ModalFormula::One | ModalFormula::Zero => true,
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) => a.is_closed() && b.is_closed(),
            ModalFormula::Box(_) | ModalFormula::Diamond(_) => true,
        }
    }

    /// Free of logical constants.
    pub fn is_simple(&self) -> bool {
        match self {
            ModalFormula::Prop(_) => true,
            ModalFormula::One | ModalFormula::Zero => false,
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) => a.is_simple() && b.is_simple(),
            ModalFormula::Box(a) | ModalFormula::Diamond(a) => a.is_simple(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ModalFormula::Or(..) => 1,
            ModalFormula::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, g: &ModalFormula, min: u8) -> fmt::Result {
            if g.precedence() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            ModalFormula::Prop(p) => write!(f, "{p}"),
            ModalFormula::One => write!(f, "1"),
            ModalFormula::Zero => write!(f, "0"),
            ModalFormula::And(a, b) => {
                operand(f, a, 2)?;
                write!(f, " & ")?;
                operand(f, b, 3)
            }
            ModalFormula::Or(a, b) => {
                operand(f, a, 1)?;
                write!(f, " \\/ ")?;
                operand(f, b, 2)
            }
            ModalFormula::Box(a) => {
                write!(f, "[]")?;
                operand(f, a, 3)
            }
            ModalFormula::Diamond(a) => {
                write!(f, "<>")?;
                operand(f, a, 3)
            }
        }
    }
}

/// Name of the k-th bound variable: x, y, z, x1, y1, z1, x2, ...
fn world_var(k: usize) -> String {
    let base = ["x", "y", "z"][k % 3];
    match k / 3 {
        0 => base.to_string(),
        n => format!("{base}{n}"),
    }
}

/// Replaces each modal operator by a quantifier over a fresh variable and
/// each nullary predicate by its application to the innermost such variable.
pub fn modal_to_fo(m: &ModalFormula) -> Formula {
    fn go(m: &ModalFormula, current: &str, counter: &mut usize) -> Formula {
        match m {
            ModalFormula::Prop(p) => Formula::Atom(Atom::new(p.clone(), vec![Term::var(current)])),
            ModalFormula::One => Formula::One,
            ModalFormula::Zero => Formula::Zero,
            ModalFormula::And(a, b) => {
                let a = go(a, current, counter);
                Formula::and(a, go(b, current, counter))
            }
            ModalFormula::Or(a, b) => {
                let a = go(a, current, counter);
                Formula::or(a, go(b, current, counter))
            }
            ModalFormula::Box(a) | ModalFormula::Diamond(a) => {
                let x = world_var(*counter);
                *counter += 1;
                let body = go(a, &x, counter);
                if matches!(m, ModalFormula::Box(_)) {
                    Formula::forall(&x, body)
                } else {
                    Formula::exists(&x, body)
                }
            }
        }
    }
    go(m, FREE_WORLD_VAR, &mut 0)
}

fn modal_or(p: &mut Parser) -> Result<ModalFormula, SyntaxError> {
    let mut lhs = modal_and(p)?;
    while *p.peek() == Tok::Or {
        p.bump();
        lhs = ModalFormula::or(lhs, modal_and(p)?);
    }
    Ok(lhs)
}

fn modal_and(p: &mut Parser) -> Result<ModalFormula, SyntaxError> {
    let mut lhs = modal_unary(p)?;
    while *p.peek() == Tok::And {
        p.bump();
        lhs = ModalFormula::and(lhs, modal_unary(p)?);
    }
    Ok(lhs)
}

fn modal_unary(p: &mut Parser) -> Result<ModalFormula, SyntaxError> {
    match p.peek().clone() {
        Tok::Not => {
            p.bump();
            Ok(modal_unary(p)?.negate())
        }
        Tok::BoxOp => {
            p.bump();
            Ok(ModalFormula::nec(modal_unary(p)?))
        }
        Tok::DiaOp => {
            p.bump();
            Ok(ModalFormula::pos(modal_unary(p)?))
        }
        Tok::LParen => {
            p.bump();
            let f = modal_or(p)?;
            p.expect(Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::One => {
            p.bump();
            Ok(ModalFormula::One)
        }
        Tok::Zero => {
            p.bump();
            Ok(ModalFormula::Zero)
        }
        Tok::Ident(name) => {
            p.bump();
            if *p.peek() == Tok::LParen {
                return Err(p.error("modal predicates take no arguments"));
            }
            Ok(ModalFormula::prop(&name))
        }
        _ => Err(p.error("expected a modal formula")),
    }
}

/// Parses `[]A`, `<>A` (or `□`, `◇`) over nullary predicates, `~`, `&`, `\/`.
pub fn parse_modal(src: &str) -> Result<ModalFormula, SyntaxError> {
    let mut p = Parser::new(src)?;
    let f = modal_or(&mut p)?;
    p.expect_end()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn drinker_translation() {
        let m = parse_modal("<>(~p \\/ []p)").unwrap();
        assert!(m.is_closed() && m.is_simple());
        let f = modal_to_fo(&m);
        assert_eq!(f, parse_formula("ex x. (~p(x) \\/ all y. p(y))").unwrap());
        assert!(f.is_rectified());
    }

    #[test]
    fn open_and_constant_cases() {
        assert_eq!(modal_to_fo(&ModalFormula::prop("p")), parse_formula("p(w)").unwrap());
        assert_eq!(modal_to_fo(&ModalFormula::nec(ModalFormula::One)), parse_formula("all x. 1").unwrap());
        assert!(!parse_modal("~p \\/ []p").unwrap().is_closed());
    }

    #[test]
    fn variable_sequence_wraps() {
        assert_eq!(world_var(0), "x");
        assert_eq!(world_var(2), "z");
        assert_eq!(world_var(3), "x1");
        assert_eq!(world_var(7), "y2");
    }

    #[test]
    fn modal_negation_dualizes_operators() {
        assert_eq!(parse_modal("~[]p").unwrap(), parse_modal("<>~p").unwrap());
        let m = parse_modal("□(p ∧ ◇q)").unwrap();
        assert_eq!(parse_modal(&m.to_string()).unwrap(), m);
    }
}
