use super::atom::Atom;
use super::program::Program;
use super::state::PushState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltReason {
    ExecStackEmpty,
    BudgetExhausted,
}

/// Outcome of one [`execute`] call. The final stacks stay in the state that
/// was passed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecutionReport {
    pub instructions_executed: usize,
    pub halted: HaltReason,
}

/// Runs `program` on `state`, popping at most `budget` atoms off the exec
/// stack. Every popped atom costs one unit, whether it is a literal, an
/// instruction, or a list being expanded.
pub fn execute(program: &Program, state: &mut PushState, budget: usize) -> ExecutionReport {
    state.exec.push(Atom::List(program.root().to_vec()));
    let mut machine = Machine {
        state,
        executed: 0,
        budget,
    };
    let halted = if machine.drain() {
        HaltReason::ExecStackEmpty
    } else {
        HaltReason::BudgetExhausted
    };
    let instructions_executed = machine.executed;
    // Anything left over is abandoned; exec is not carried between calls.
    machine.state.exec.clear();
    ExecutionReport {
        instructions_executed,
        halted,
    }
}

/// Interpreter loop state handed to instruction handlers.
pub(crate) struct Machine<'a> {
    pub state: &'a mut PushState,
    executed: usize,
    budget: usize,
}

impl Machine<'_> {
    /// Pops and runs exec atoms until the exec stack is empty (returns true)
    /// or the budget runs out (returns false).
    fn drain(&mut self) -> bool {
        loop {
            if self.state.exec.is_empty() {
                return true;
            }
            if self.executed >= self.budget {
                return false;
            }
            let atom = self.state.exec.pop().expect("checked non-empty");
            self.executed += 1;
            self.step(atom);
        }
    }

    fn step(&mut self, atom: Atom) {
        match atom {
            Atom::Instruction(i) => (i.handler())(self),
            Atom::Boolean(b) => self.state.boolean.push(b),
            Atom::Integer(n) => self.state.integer.push(n),
            Atom::Float(x) => self.state.float.push(x),
            Atom::List(items) => self.state.exec.extend(items.into_iter().rev()),
        }
    }

    /// Runs `code` to completion on a private exec stack, sharing this
    /// machine's budget. Returns false if the budget ran out first.
    pub fn run_nested(&mut self, code: Atom) -> bool {
        let outer = std::mem::replace(&mut self.state.exec, vec![code]);
        let finished = self.drain();
        self.state.exec = outer;
        finished
    }
}
