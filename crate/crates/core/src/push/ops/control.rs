//! Exec-stack control flow, input access, and no-ops.

use crate::push::atom::Atom;
use crate::push::instruction::Instruction;
use crate::push::interpreter::Machine;

pub(crate) fn noop(_: &mut Machine<'_>) {}

/// Pops the top two exec items and pushes whether they are equal.
pub(crate) fn exec_eq(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    let n = s.exec.len();
    if n >= 2 {
        let r = s.exec[n - 1] == s.exec[n - 2];
        s.exec.truncate(n - 2);
        s.boolean.push(r);
    }
}

/// Keeps the first exec item and drops the second if the popped boolean is
/// true, otherwise drops the first.
pub(crate) fn exec_if(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    let n = s.exec.len();
    if n < 2 || s.boolean.is_empty() {
        return;
    }
    let cond = s.boolean.pop().expect("checked");
    s.exec.remove(if cond { n - 2 } else { n - 1 });
}

/// Like `exec.if`, with the condition being `a < b` for the top two floats
/// (`b` on top).
pub(crate) fn exec_iflt(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    let (ne, nf) = (s.exec.len(), s.float.len());
    if ne < 2 || nf < 2 {
        return;
    }
    let cond = s.float[nf - 2] < s.float[nf - 1];
    s.float.truncate(nf - 2);
    s.exec.remove(if cond { ne - 2 } else { ne - 1 });
}

/// Pushes the loop index and either the body alone (last iteration) or a
/// continuation `(next dest exec.do*range body)` followed by the body.
pub(crate) fn exec_do_range(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.integer.len() < 2 || s.exec.is_empty() {
        return;
    }
    let dest = s.integer.pop().expect("checked");
    let current = s.integer.pop().expect("checked");
    let body = s.exec.pop().expect("checked");
    s.integer.push(current);
    if current != dest {
        let next = if current < dest { current + 1 } else { current - 1 };
        s.exec.push(Atom::List(vec![
            Atom::Integer(next),
            Atom::Integer(dest),
            Atom::Instruction(Instruction::exec_do_range()),
            body.clone(),
        ]));
    }
    s.exec.push(body);
}

fn counted_loop(m: &mut Machine<'_>, wrap_body: bool) {
    let s = &mut *m.state;
    let Some(&count) = s.integer.last() else {
        return;
    };
    if count <= 0 || s.exec.is_empty() {
        return;
    }
    s.integer.pop();
    let mut body = s.exec.pop().expect("checked");
    if wrap_body {
        body = Atom::List(vec![Atom::Instruction(Instruction::integer_pop()), body]);
    }
    s.exec.push(Atom::List(vec![
        Atom::Integer(0),
        Atom::Integer(count - 1),
        Atom::Instruction(Instruction::exec_do_range()),
        body,
    ]));
}

/// Runs the next exec item `n` times, pushing the index 0..n-1 before each
/// iteration. A non-positive count is a no-op.
pub(crate) fn exec_do_count(m: &mut Machine<'_>) {
    counted_loop(m, false);
}

/// As `exec.do*count` without leaving the index behind.
pub(crate) fn exec_do_times(m: &mut Machine<'_>) {
    counted_loop(m, true);
}

/// Pushes a copy of the input item at the popped depth (0 = top),
/// clamping the depth into range.
pub(crate) fn input_index(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    let len = s.input().len();
    if len == 0 {
        return;
    }
    let Some(index) = s.integer.pop() else {
        return;
    };
    let depth = index.clamp(0, len as i64 - 1) as usize;
    let value = s.input()[len - 1 - depth].clone();
    s.push_value(value);
}

/// Pushes every input item, bottom first.
pub(crate) fn input_inall(m: &mut Machine<'_>) {
    let values = m.state.input().to_vec();
    for v in values {
        m.state.push_value(v);
    }
}

pub(crate) fn input_inallrev(m: &mut Machine<'_>) {
    let values = m.state.input().to_vec();
    for v in values.into_iter().rev() {
        m.state.push_value(v);
    }
}
