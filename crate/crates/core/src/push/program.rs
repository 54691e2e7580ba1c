use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::atom::Atom;
use super::instruction::Instruction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected `)` at byte {position}")]
    UnexpectedClose { position: usize },
    #[error("`(` at byte {position} is never closed")]
    Unclosed { position: usize },
    #[error("unknown instruction `{token}` at byte {position}")]
    UnknownInstruction { token: String, position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedClose { position }
            | ParseError::Unclosed { position }
            | ParseError::UnknownInstruction { position, .. } => *position,
        }
    }
}

/// A Push program: the contents of its outermost list.
///
/// Points count every atom and every list, the outer list included, so
/// `(5 3 integer.+)` has four. Points are numbered in pre-order with the
/// outer list as point 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    root: Vec<Atom>,
    points: usize,
}

impl Program {
    pub fn new(root: Vec<Atom>) -> Self {
        let points = 1 + root.iter().map(Atom::points).sum::<usize>();
        Program { root, points }
    }

    pub fn empty() -> Self {
        Program::new(Vec::new())
    }

    pub fn root(&self) -> &[Atom] {
        &self.root
    }

    pub fn into_root(self) -> Vec<Atom> {
        self.root
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Parses whitespace-separated tokens in nested parentheses. A text
    /// holding exactly one top-level list is that list; anything else
    /// (several lists, bare tokens) is wrapped in an outer list. `;` starts
    /// a comment running to the end of the line.
    pub fn parse(text: &str) -> Result<Program, ParseError> {
        let mut stack: Vec<(usize, Vec<Atom>)> = vec![(0, Vec::new())];
        for (position, token) in tokens(text) {
            match token {
                "(" => stack.push((position, Vec::new())),
                ")" => {
                    if stack.len() == 1 {
                        return Err(ParseError::UnexpectedClose { position });
                    }
                    let (_, items) = stack.pop().expect("len > 1");
                    stack.last_mut().expect("non-empty").1.push(Atom::List(items));
                }
                _ => {
                    let atom = parse_token(token)
                        .ok_or_else(|| ParseError::UnknownInstruction {
                            token: token.to_string(),
                            position,
                        })?;
                    stack.last_mut().expect("non-empty").1.push(atom);
                }
            }
        }
        if stack.len() > 1 {
            return Err(ParseError::Unclosed {
                position: stack.last().expect("non-empty").0,
            });
        }
        let (_, mut top) = stack.pop().expect("non-empty");
        let root = match top.as_mut_slice() {
            [Atom::List(items)] => std::mem::take(items),
            _ => top,
        };
        Ok(Program::new(root))
    }

    /// The sub-tree at pre-order index `index` (1-based; 0 is the outer
    /// list, which is not an [`Atom`]).
    pub fn point(&self, index: usize) -> Option<&Atom> {
        if index == 0 {
            return None;
        }
        find(&self.root, index - 1)
    }

    /// A copy with the sub-tree at `index` (≥ 1) replaced by `atom`.
    ///
    /// # Panics
    /// If `index` is 0 or not below [`Program::points`].
    pub fn replace_point(&self, index: usize, atom: Atom) -> Program {
        assert!(index >= 1 && index < self.points, "point {index} out of range");
        let mut root = self.root.clone();
        let slot = find_mut(&mut root, index - 1).expect("index checked");
        *slot = atom;
        Program::new(root)
    }

    /// Every non-list atom, in pre-order.
    pub fn leaves(&self) -> Vec<&Atom> {
        fn walk<'a>(items: &'a [Atom], out: &mut Vec<&'a Atom>) {
            for a in items {
                match a {
                    Atom::List(inner) => walk(inner, out),
                    _ => out.push(a),
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }
}

/// Pre-order search where `offset` 0 is the first item of `items`.
fn find(items: &[Atom], mut offset: usize) -> Option<&Atom> {
    for item in items {
        if offset == 0 {
            return Some(item);
        }
        let size = item.points();
        if offset < size {
            if let Atom::List(inner) = item {
                return find(inner, offset - 1);
            }
        }
        offset -= size;
    }
    None
}

fn find_mut(items: &mut [Atom], mut offset: usize) -> Option<&mut Atom> {
    for item in items {
        if offset == 0 {
            return Some(item);
        }
        let size = item.points();
        if offset < size {
            if let Atom::List(inner) = item {
                return find_mut(inner, offset - 1);
            }
        }
        offset -= size;
    }
    None
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let bytes = text.as_bytes();
    let mut i = 0;
    std::iter::from_fn(move || {
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b';' {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            break;
        }
        if i >= bytes.len() {
            return None;
        }
        let start = i;
        if bytes[i] == b'(' || bytes[i] == b')' {
            i += 1;
        } else {
            while i < bytes.len()
                && !bytes[i].is_ascii_whitespace()
                && !matches!(bytes[i], b'(' | b')' | b';')
            {
                i += 1;
            }
        }
        Some((start, &text[start..i]))
    })
}

fn parse_token(token: &str) -> Option<Atom> {
    match token {
        "true" => return Some(Atom::Boolean(true)),
        "false" => return Some(Atom::Boolean(false)),
        _ => {}
    }
    if let Some(i) = Instruction::from_name(token) {
        return Some(Atom::Instruction(i));
    }
    let numeric_start = token
        .bytes()
        .next()
        .is_some_and(|b| b.is_ascii_digit() || matches!(b, b'-' | b'+' | b'.'));
    if numeric_start || matches!(token, "inf" | "NaN") {
        if let Ok(n) = token.parse::<i64>() {
            return Some(Atom::Integer(n));
        }
        if let Ok(x) = token.parse::<f64>() {
            return Some(Atom::Float(x));
        }
    }
    None
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, item) in self.root.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Program {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Program::parse(s)
    }
}
