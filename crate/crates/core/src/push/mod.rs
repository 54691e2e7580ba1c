//! A Push interpreter with boolean, integer, float, vector, code, exec and
//! input stacks.

mod atom;
mod instruction;
mod interpreter;
mod ops;
mod program;
mod random;
mod state;

pub use atom::{Atom, SearchVector, Value};
pub use instruction::{registry, Instruction, InstructionSet, RegistryEntry};
pub use interpreter::{execute, ExecutionReport, HaltReason};
pub use ops::generic::{FLOAT_ERC_RANGE, INTEGER_ERC_RANGE};
pub use program::{ParseError, Program};
pub use random::{random_atom, random_code, random_program, RandomCodeConfig};
pub use state::{Environment, PushState};
