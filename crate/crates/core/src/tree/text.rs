//! Text form: `tree ::= "(" INT { tree } ")"`, whitespace-insensitive
//! between tokens.

use thiserror::Error;

use super::BetaTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl BetaTree {
    /// Canonical text: children separated by single spaces, e.g. `(2 (1) (1))`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_tree(self, &mut out);
        out
    }

    /// Parses the text form. Labels are not checked against the β(1,0)
    /// rules; see [`BetaTree::parse_valid`].
    pub fn from_text(s: &str) -> Result<BetaTree, ParseError> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let tree = p.tree()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("trailing input after tree"));
        }
        Ok(tree)
    }
}

fn write_tree(t: &BetaTree, out: &mut String) {
    out.push('(');
    out.push_str(&t.label.to_string());
    for c in &t.children {
        out.push(' ');
        write_tree(c, out);
    }
    out.push(')');
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer label"));
        }
        // digits are ASCII, so this slice is valid UTF-8
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        digits.parse().map_err(|_| ParseError {
            offset: start,
            message: "label out of range".to_string(),
        })
    }

    // Iterative so that deep paths cannot overflow the stack.
    fn tree(&mut self) -> Result<BetaTree, ParseError> {
        let mut stack: Vec<BetaTree> = Vec::new();
        self.expect(b'(')?;
        stack.push(BetaTree::new(self.int()?, Vec::new()));
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b'(') => {
                    self.pos += 1;
                    stack.push(BetaTree::new(self.int()?, Vec::new()));
                }
                Some(b')') => {
                    self.pos += 1;
                    let done = stack.pop().expect("stack holds the open node");
                    match stack.last_mut() {
                        Some(parent) => parent.children.push(done),
                        None => return Ok(done),
                    }
                }
                Some(_) => return Err(self.error("expected '(' or ')'")),
                None => return Err(self.error("unexpected end of input")),
            }
        }
    }
}
