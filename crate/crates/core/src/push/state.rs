use super::atom::{Atom, SearchVector, Value};
use crate::rng::{rng_from_seed, Rng};

/// Execution environment shared by all instructions of one state.
#[derive(Clone, Debug)]
pub struct Environment {
    pub dimension: usize,
    pub lower: SearchVector,
    pub upper: SearchVector,
    pub rng: Rng,
}

impl Environment {
    /// # Panics
    /// If the bounds do not both have length `dimension`.
    pub fn new(lower: SearchVector, upper: SearchVector, rng: Rng) -> Self {
        assert_eq!(lower.len(), upper.len(), "bounds differ in length");
        Environment {
            dimension: lower.len(),
            lower,
            upper,
            rng,
        }
    }

    /// Box `[lo, hi]^dimension` with a generator seeded from `seed`.
    pub fn uniform_box(dimension: usize, lo: f64, hi: f64, seed: u64) -> Self {
        Environment::new(
            SearchVector(vec![lo; dimension]),
            SearchVector(vec![hi; dimension]),
            rng_from_seed(seed),
        )
    }
}

/// The typed stacks of a Push interpreter. The top of each stack is the
/// last element of its `Vec`.
///
/// The input stack is not public: instructions only read it, and the host
/// rewrites it between program invocations through [`PushState::clear_input`]
/// and [`PushState::push_input`].
#[derive(Clone, Debug)]
pub struct PushState {
    pub boolean: Vec<bool>,
    pub integer: Vec<i64>,
    pub float: Vec<f64>,
    pub vector: Vec<SearchVector>,
    pub code: Vec<Atom>,
    pub exec: Vec<Atom>,
    input: Vec<Value>,
    pub env: Environment,
}

impl PushState {
    pub fn new(env: Environment) -> Self {
        PushState {
            boolean: Vec::new(),
            integer: Vec::new(),
            float: Vec::new(),
            vector: Vec::new(),
            code: Vec::new(),
            exec: Vec::new(),
            input: Vec::new(),
            env,
        }
    }

    /// Empties every stack, including the input stack.
    pub fn clear_stacks(&mut self) {
        self.boolean.clear();
        self.integer.clear();
        self.float.clear();
        self.vector.clear();
        self.code.clear();
        self.exec.clear();
        self.input.clear();
    }

    pub fn input(&self) -> &[Value] {
        &self.input
    }

    pub fn clear_input(&mut self) {
        self.input.clear();
    }

    /// # Panics
    /// If a vector value has the wrong dimension.
    pub fn push_input(&mut self, value: Value) {
        if let Value::Vector(v) = &value {
            assert_eq!(v.len(), self.env.dimension, "input vector dimension");
        }
        self.input.push(value);
    }

    /// Copies `value` onto the stack matching its type.
    pub(crate) fn push_value(&mut self, value: Value) {
        match value {
            Value::Boolean(b) => self.boolean.push(b),
            Value::Integer(n) => self.integer.push(n),
            Value::Float(x) => self.float.push(x),
            Value::Vector(v) => self.vector.push(v),
        }
    }
}
