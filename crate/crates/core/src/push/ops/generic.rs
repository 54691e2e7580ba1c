//! Stack manipulators shared by the boolean, integer, float and vector stacks.

use rand::Rng as _;

use crate::push::atom::SearchVector;
use crate::push::interpreter::Machine;
use crate::push::state::PushState;

/// Range used by `float.erc`, `float.rand` and `vector.rand`.
pub const FLOAT_ERC_RANGE: (f64, f64) = (-10.0, 10.0);
/// Range used by `integer.erc` and `integer.rand`.
pub const INTEGER_ERC_RANGE: (i64, i64) = (-10, 10);

pub(crate) trait StackItem: Clone {
    fn stack(state: &mut PushState) -> &mut Vec<Self>;
    fn random(state: &mut PushState) -> Self;
}

impl StackItem for bool {
    fn stack(state: &mut PushState) -> &mut Vec<Self> {
        &mut state.boolean
    }

    fn random(state: &mut PushState) -> Self {
        state.env.rng.random_bool(0.5)
    }
}

impl StackItem for i64 {
    fn stack(state: &mut PushState) -> &mut Vec<Self> {
        &mut state.integer
    }

    fn random(state: &mut PushState) -> Self {
        let (lo, hi) = INTEGER_ERC_RANGE;
        state.env.rng.random_range(lo..=hi)
    }
}

impl StackItem for f64 {
    fn stack(state: &mut PushState) -> &mut Vec<Self> {
        &mut state.float
    }

    fn random(state: &mut PushState) -> Self {
        let (lo, hi) = FLOAT_ERC_RANGE;
        state.env.rng.random_range(lo..=hi)
    }
}

impl StackItem for SearchVector {
    fn stack(state: &mut PushState) -> &mut Vec<Self> {
        &mut state.vector
    }

    fn random(state: &mut PushState) -> Self {
        let (lo, hi) = FLOAT_ERC_RANGE;
        let rng = &mut state.env.rng;
        (0..state.env.dimension)
            .map(|_| rng.random_range(lo..=hi))
            .collect()
    }
}

/// Converts a Push depth index into a position in `len` items, clamping
/// out-of-range indices onto the nearest end. Depth 0 is the top.
fn clamp_depth(index: i64, len: usize) -> usize {
    let depth = index.clamp(0, len as i64 - 1) as usize;
    len - 1 - depth
}

pub(crate) fn dup<T: StackItem>(m: &mut Machine<'_>) {
    let stack = T::stack(m.state);
    if let Some(top) = stack.last().cloned() {
        stack.push(top);
    }
}

pub(crate) fn flush<T: StackItem>(m: &mut Machine<'_>) {
    T::stack(m.state).clear();
}

pub(crate) fn pop<T: StackItem>(m: &mut Machine<'_>) {
    T::stack(m.state).pop();
}

pub(crate) fn rand<T: StackItem>(m: &mut Machine<'_>) {
    let item = T::random(m.state);
    T::stack(m.state).push(item);
}

/// Moves the third item to the top.
pub(crate) fn rot<T: StackItem>(m: &mut Machine<'_>) {
    let stack = T::stack(m.state);
    let n = stack.len();
    if n >= 3 {
        let third = stack.remove(n - 3);
        stack.push(third);
    }
}

pub(crate) fn swap<T: StackItem>(m: &mut Machine<'_>) {
    let stack = T::stack(m.state);
    let n = stack.len();
    if n >= 2 {
        stack.swap(n - 1, n - 2);
    }
}

pub(crate) fn stackdepth<T: StackItem>(m: &mut Machine<'_>) {
    let depth = T::stack(m.state).len() as i64;
    m.state.integer.push(depth);
}

/// Pops a depth from the integer stack. If the target stack is empty
/// afterwards (possible when it is the integer stack itself) the depth is
/// put back and `None` returned.
fn pop_depth<T: StackItem>(state: &mut PushState) -> Option<i64> {
    let index = state.integer.pop()?;
    if T::stack(state).is_empty() {
        state.integer.push(index);
        return None;
    }
    Some(index)
}

pub(crate) fn yank<T: StackItem>(m: &mut Machine<'_>) {
    let Some(index) = pop_depth::<T>(m.state) else {
        return;
    };
    let stack = T::stack(m.state);
    let pos = clamp_depth(index, stack.len());
    let item = stack.remove(pos);
    stack.push(item);
}

pub(crate) fn yankdup<T: StackItem>(m: &mut Machine<'_>) {
    let Some(index) = pop_depth::<T>(m.state) else {
        return;
    };
    let stack = T::stack(m.state);
    let pos = clamp_depth(index, stack.len());
    let item = stack[pos].clone();
    stack.push(item);
}

/// Pops the top item and reinserts it at the given depth.
pub(crate) fn shove<T: StackItem>(m: &mut Machine<'_>) {
    let Some(index) = pop_depth::<T>(m.state) else {
        return;
    };
    let stack = T::stack(m.state);
    let item = stack.pop().expect("pop_depth checked non-empty");
    let depth = index.clamp(0, stack.len() as i64) as usize;
    let pos = stack.len() - depth;
    stack.insert(pos, item);
}
