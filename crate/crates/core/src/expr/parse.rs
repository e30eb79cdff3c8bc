//! Parser for the expression syntax.
//!
//! ```text
//! expr     := term ('+' term)*
//! term     := factor (('.')? factor)*          — concatenation, left-associative
//! factor   := '<' weight '>' factor | postfix
//! postfix  := base ('*' | '<' weight '>')*
//! base     := letter | '\e' | '\z' | '(' expr ')'
//! ```
//!
//! `\e` denotes 𝟭 and `\z` denotes 𝟬.  A letter is a single ASCII
//! alphanumeric character.  Stars and right weights bind tighter than a
//! prefix weight, so `<1/6>a*` is ⟨1/6⟩(a*).  Whitespace is ignored between
//! tokens.  Bracketing is retained: `a(bc)` and `(ab)c` are different trees.

use std::collections::BTreeSet;

use crate::semiring::{SemiringTag, Weight};
use crate::{Error, Result};

use super::Expr;

/// Parse `text` over the given semiring; the alphabet is inferred from the
/// letters that occur.
pub fn parse(text: &str, tag: SemiringTag) -> Result<Expr> {
    parse_with_alphabet(text, tag, None)
}

/// Parse with a declared alphabet: letters outside it are rejected with
/// [`Error::UnknownLetter`], and the result's alphabet is the declared one.
pub fn parse_with_alphabet(
    text: &str,
    tag: SemiringTag,
    alphabet: Option<&[char]>,
) -> Result<Expr> {
    let mut p = Parser {
        input: text.char_indices().collect(),
        pos: 0,
        tag,
        declared: alphabet.map(|a| a.iter().copied().collect()),
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if let Some((at, c)) = p.peek_full() {
        return Err(Error::Syntax {
            pos: at,
            msg: format!("unexpected '{c}'"),
        });
    }
    Ok(match alphabet {
        Some(a) => e.with_alphabet(a),
        None => e,
    })
}

struct Parser {
    input: Vec<(usize, char)>,
    pos: usize,
    tag: SemiringTag,
    declared: Option<BTreeSet<char>>,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.input.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_full(&self) -> Option<(usize, char)> {
        self.input.get(self.pos).copied()
    }

    fn byte_pos(&self) -> usize {
        self.input
            .get(self.pos)
            .map(|&(b, _)| b)
            .unwrap_or_else(|| {
                self.input
                    .last()
                    .map(|&(b, c)| b + c.len_utf8())
                    .unwrap_or(0)
            })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.byte_pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.bump();
                self.skip_ws();
                acc = acc.sum(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c == '<' || c == '(' || c == '\\' || is_letter(c))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('.') {
                self.bump();
                self.skip_ws();
                acc = acc.prod(self.factor()?);
            } else if self.starts_factor() {
                acc = acc.prod(self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.peek() == Some('<') {
            let k = self.weight()?;
            self.skip_ws();
            if !self.starts_factor() {
                return Err(self.err("expected an expression after a left weight"));
            }
            let body = self.factor()?;
            return Ok(body.lweight(k));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut acc = self.base()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.star();
                }
                Some('<') => {
                    let k = self.weight()?;
                    acc = acc.rweight(k);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn base(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some('\\') => {
                self.bump();
                match self.bump() {
                    Some('e') => Ok(Expr::one(self.tag)),
                    Some('z') => Ok(Expr::zero(self.tag)),
                    _ => Err(self.err("expected \\e or \\z")),
                }
            }
            Some(c) if is_letter(c) => {
                if let Some(declared) = &self.declared {
                    if !declared.contains(&c) {
                        return Err(Error::UnknownLetter(c));
                    }
                }
                self.bump();
                Ok(Expr::atom(c, self.tag))
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn weight(&mut self) -> Result<Weight> {
        // at '<'
        self.bump();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '>' {
                let text: String = self.input[start..self.pos]
                    .iter()
                    .map(|&(_, c)| c)
                    .collect();
                self.bump();
                return Weight::parse(&text, self.tag);
            }
            self.pos += 1;
        }
        Err(self.err("unterminated weight: expected '>'"))
    }
}

fn is_letter(c: char) -> bool {
    c.is_ascii_alphanumeric()
}
