use std::collections::HashMap;

use super::{Atom, Formula, PredSym, Sequent, SyntaxError, Term};

#[derive(Clone, Debug, PartialEq)]
pub(super) enum Tok {
    Ident(String),
    One,
    Zero,
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Imp,
    BoxOp,
    DiaOp,
    Eof,
}

pub(super) fn lex(src: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| SyntaxError::Parse { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '1' => Tok::One,
            '0' => Tok::Zero,
            '\\' => {
                if bytes.get(i + 1) == Some(&'/') {
                    i += 1;
                    Tok::Or
                } else {
                    return Err(err(i, "expected `\\/`"));
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Imp
                } else {
                    return Err(err(i, "expected `->`"));
                }
            }
            '[' => {
                if bytes.get(i + 1) == Some(&']') {
                    i += 1;
                    Tok::BoxOp
                } else {
                    return Err(err(i, "expected `[]`"));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::DiaOp
                } else {
                    return Err(err(i, "expected `<>`"));
                }
            }
            '□' => Tok::BoxOp,
            '◇' => Tok::DiaOp,
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == '_' || bytes[i + 1] == '\'')
                {
                    i += 1;
                }
                Tok::Ident(bytes[start..=i].iter().collect())
            }
            _ => return Err(err(i, &format!("unexpected character `{c}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::Eof, bytes.len()));
    Ok(out)
}

pub(super) struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    pred_arity: HashMap<String, usize>,
    fun_arity: HashMap<String, usize>,
}

impl Parser {
    pub(super) fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            pred_arity: HashMap::new(),
            fun_arity: HashMap::new(),
        })
    }

    pub(super) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(super) fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub(super) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(super) fn error(&self, msg: &str) -> SyntaxError {
        SyntaxError::Parse {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    pub(super) fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    pub(super) fn expect_end(&self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    fn check_arity(table: &mut HashMap<String, usize>, sym: &str, n: usize) -> Result<(), SyntaxError> {
        match table.get(sym) {
            Some(&m) if m != n => Err(SyntaxError::Arity {
                symbol: sym.to_string(),
                expected: m,
                found: n,
            }),
            _ => {
                table.insert(sym.to_string(), n);
                Ok(())
            }
        }
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            Ok(Formula::or(lhs.negate(), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.negate())
            }
            Tok::Ident(k) if k == "all" || k == "ex" => {
                self.bump();
                let x = match self.bump() {
                    Tok::Ident(x) if x != "all" && x != "ex" => x,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected a variable after quantifier"));
                    }
                };
                if *self.peek() == Tok::Dot {
                    self.bump();
                }
                let body = self.imp()?;
                Ok(if k == "all" {
                    Formula::forall(&x, body)
                } else {
                    Formula::exists(&x, body)
                })
            }
            Tok::LParen => {
                self.bump();
                let f = self.imp()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::One => {
                self.bump();
                Ok(Formula::One)
            }
            Tok::Zero => {
                self.bump();
                Ok(Formula::Zero)
            }
            Tok::Ident(name) => {
                self.bump();
                let args = self.args()?;
                Self::check_arity(&mut self.pred_arity, &name, args.len())?;
                Ok(Formula::Atom(Atom::new(PredSym::new(&name), args)))
            }
            _ => Err(self.error("expected a formula")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, SyntaxError> {
        let mut args = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => break,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) if name != "all" && name != "ex" => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let args = self.args()?;
                    Self::check_arity(&mut self.fun_arity, &name, args.len())?;
                    Ok(Term::App(name, args))
                } else {
                    Ok(Term::Var(name))
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src)?;
    let f = p.imp()?;
    p.expect_end()?;
    Ok(f)
}

/// Comma-separated formulas sharing one arity table.
pub fn parse_sequent(src: &str) -> Result<Sequent, SyntaxError> {
    let mut p = Parser::new(src)?;
    let mut fs = vec![p.imp()?];
    while *p.peek() == Tok::Comma {
        p.bump();
        fs.push(p.imp()?);
    }
    p.expect_end()?;
    Ok(Sequent(fs))
}

pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}
