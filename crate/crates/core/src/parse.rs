//! The textual knowledge base format.
//!
//! ```text
//! # comments run to the end of the line
//! sub L P                      # L ⊑ P
//! trans P                      # P ∘ P ⊑ P
//! impl F (and I (all P F))     # F ⊑ I ⊓ ∀P.F
//! equiv A (or B C)             # A ≐ B ⊔ C
//! inst b (some L (not I))      # b : ∃L.¬I
//! rel L a b                    # L(a, b)
//! ```
//!
//! Inverse roles take a `-` suffix (`r-`). `and`/`or` take two or more
//! arguments and fold to the right.

use crate::error::{KbError, ParseError};
use crate::kb::KnowledgeBase;
use crate::syntax::{Assertion, Concept, KbSource, RoleAxiom, RoleRef, TBoxAxiom};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, ch)) = chars.peek() {
            let column = line[..start].chars().count() + 1;
            let pos = |tok| Token { tok, line: i + 1, column };
            match ch {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '(' => {
                    chars.next();
                    out.push(pos(Tok::Open));
                }
                ')' => {
                    chars.next();
                    out.push(pos(Tok::Close));
                }
                _ => {
                    let mut end = start;
                    while let Some(&(j, c)) = chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' {
                            break;
                        }
                        end = j + c.len_utf8();
                        chars.next();
                    }
                    out.push(pos(Tok::Word(line[start..end].to_string())));
                }
            }
        }
    }
    out
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    // Where the input ends, for errors at end of input.
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Self {
        let lines: Vec<&str> = text.lines().collect();
        let end = match lines.last() {
            Some(l) => (lines.len(), l.chars().count() + 1),
            None => (1, 1),
        };
        Parser { toks: tokenize(text), pos: 0, end }
    }

    fn error_at(&self, tok: Option<&Token>, message: impl Into<String>) -> ParseError {
        let (line, column) = tok.map_or(self.end, |t| (t.line, t.column));
        ParseError { line, column, message: message.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn word(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        match self.next() {
            Some(t) => match &t.tok {
                Tok::Word(w) => Ok((w.clone(), t.clone())),
                _ => Err(self.error_at(Some(&t), format!("expected {what}"))),
            },
            None => Err(self.error_at(None, format!("expected {what}, found end of input"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        let (w, t) = self.word(what)?;
        if w.ends_with('-') {
            return Err(self.error_at(Some(&t), format!("`{w}` is not a valid {what}")));
        }
        Ok(w)
    }

    fn role(&mut self) -> Result<RoleRef, ParseError> {
        let (w, t) = self.word("a role")?;
        let (name, inverse) = match w.strip_suffix('-') {
            Some(n) => (n, true),
            None => (w.as_str(), false),
        };
        if name.is_empty() || name.contains('-') {
            return Err(self.error_at(Some(&t), format!("`{w}` is not a valid role")));
        }
        Ok(RoleRef { name: name.to_string(), inverse })
    }

    fn concept(&mut self) -> Result<Concept, ParseError> {
        let Some(t) = self.next() else {
            return Err(self.error_at(None, "expected a concept, found end of input"));
        };
        match &t.tok {
            Tok::Close => Err(self.error_at(Some(&t), "expected a concept, found `)`")),
            Tok::Word(w) => match w.as_str() {
                "top" => Ok(Concept::Top),
                "bot" => Ok(Concept::Bot),
                _ if w.ends_with('-') => Err(self.error_at(Some(&t), format!("`{w}` is not a valid concept name"))),
                _ => Ok(Concept::Atom(w.clone())),
            },
            Tok::Open => {
                let (op, op_tok) = self.word("a concept constructor")?;
                let c = match op.as_str() {
                    "not" => Concept::not(self.concept()?),
                    "all" | "some" => {
                        let r = self.role()?;
                        let c = self.concept()?;
                        if op == "all" {
                            Concept::all(r, c)
                        } else {
                            Concept::some(r, c)
                        }
                    }
                    "and" | "or" => {
                        let mut args = vec![self.concept()?];
                        while !matches!(self.peek(), Some(Token { tok: Tok::Close, .. }) | None) {
                            args.push(self.concept()?);
                        }
                        if args.len() < 2 {
                            return Err(self.error_at(Some(&op_tok), format!("`{op}` needs at least two arguments")));
                        }
                        let folded = if op == "and" { Concept::and_all(args) } else { Concept::or_all(args) };
                        folded.expect("non-empty")
                    }
                    _ => return Err(self.error_at(Some(&op_tok), format!("unknown concept constructor `{op}`"))),
                };
                match self.next() {
                    Some(Token { tok: Tok::Close, .. }) => Ok(c),
                    Some(t) => Err(self.error_at(Some(&t), format!("expected `)` to close `{op}`"))),
                    None => Err(self.error_at(None, format!("unclosed `({op}`"))),
                }
            }
        }
    }

    fn statement(&mut self, src: &mut KbSource) -> Result<(), ParseError> {
        let (kw, t) = self.word("a statement")?;
        match kw.as_str() {
            "sub" => {
                let r = self.role()?;
                let s = self.role()?;
                src.role_axioms.push(RoleAxiom::Sub(r, s));
            }
            "trans" => {
                let r = self.role()?;
                src.role_axioms.push(RoleAxiom::Trans(r));
            }
            "impl" | "equiv" => {
                let c = self.concept()?;
                let d = self.concept()?;
                src.tbox.push(if kw == "impl" { TBoxAxiom::Impl(c, d) } else { TBoxAxiom::Equiv(c, d) });
            }
            "inst" => {
                let a = self.name("individual")?;
                let c = self.concept()?;
                src.abox.push(Assertion::Instance(a, c));
            }
            "rel" => {
                let r = self.role()?;
                let a = self.name("individual")?;
                let b = self.name("individual")?;
                src.abox.push(Assertion::Relation(r, a, b));
            }
            _ => return Err(self.error_at(Some(&t), format!("unknown statement `{kw}`"))),
        }
        Ok(())
    }
}

/// Parses a knowledge base without normalizing it.
pub fn parse_source(text: &str) -> Result<KbSource, ParseError> {
    let mut p = Parser::new(text);
    let mut src = KbSource::new();
    while p.peek().is_some() {
        p.statement(&mut src)?;
    }
    Ok(src)
}

/// Parses a single concept.
pub fn parse_concept(text: &str) -> Result<Concept, ParseError> {
    let mut p = Parser::new(text);
    let c = p.concept()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(Some(t), "unexpected input after the concept"));
    }
    Ok(c)
}

/// Parses and normalizes a knowledge base.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, KbError> {
    KnowledgeBase::new(&parse_source(text)?)
}
