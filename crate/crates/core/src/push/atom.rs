use std::fmt;
use std::ops::{Deref, DerefMut};

use super::instruction::Instruction;

/// A fixed-length real vector, typically a point in the search space.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SearchVector(pub Vec<f64>);

impl SearchVector {
    pub fn new(components: Vec<f64>) -> Self {
        SearchVector(components)
    }

    pub fn zeros(dimension: usize) -> Self {
        SearchVector(vec![0.0; dimension])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Euclidean norm.
    pub fn magnitude(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Deref for SearchVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for SearchVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for SearchVector {
    fn from(v: Vec<f64>) -> Self {
        SearchVector(v)
    }
}

impl FromIterator<f64> for SearchVector {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        SearchVector(iter.into_iter().collect())
    }
}

/// A typed value held on the input stack.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Boolean(bool),
    Integer(i64),
    Float(f64),
    Vector(SearchVector),
}

/// One element of a Push program.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    Instruction(Instruction),
    Boolean(bool),
    Integer(i64),
    Float(f64),
    List(Vec<Atom>),
}

impl Atom {
    /// Size in points: 1 for a literal or instruction, 1 plus the contents
    /// for a list.
    pub fn points(&self) -> usize {
        match self {
            Atom::List(items) => 1 + items.iter().map(Atom::points).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn is_list(&self) -> bool {
        matches!(self, Atom::List(_))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Instruction(i) => write!(f, "{i}"),
            Atom::Boolean(b) => write!(f, "{b}"),
            Atom::Integer(n) => write!(f, "{n}"),
            // Debug keeps the fractional part ("5.0") and round-trips exactly.
            Atom::Float(x) => write!(f, "{x:?}"),
            Atom::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}
