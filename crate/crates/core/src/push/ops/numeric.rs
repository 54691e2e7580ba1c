//! Boolean, integer and float instructions.
//!
//! Binary operators take the second item as the left operand, so
//! `(7 2 integer.-)` leaves 5. Division, modulo and logarithms with an
//! invalid argument are no-ops.

use crate::push::interpreter::Machine;

fn binary<T: Copy>(stack: &mut Vec<T>, f: impl FnOnce(T, T) -> Option<T>) {
    let n = stack.len();
    if n < 2 {
        return;
    }
    if let Some(r) = f(stack[n - 2], stack[n - 1]) {
        stack.truncate(n - 2);
        stack.push(r);
    }
}

fn unary<T: Copy>(stack: &mut [T], f: impl FnOnce(T) -> Option<T>) {
    if let Some(top) = stack.last_mut() {
        if let Some(r) = f(*top) {
            *top = r;
        }
    }
}

/// Pops two items of one stack and pushes a boolean.
fn compare<T: Copy>(stack: &mut Vec<T>, out: &mut Vec<bool>, f: impl FnOnce(T, T) -> bool) {
    let n = stack.len();
    if n < 2 {
        return;
    }
    let r = f(stack[n - 2], stack[n - 1]);
    stack.truncate(n - 2);
    out.push(r);
}

// float

pub(crate) fn float_add(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a + b));
}

pub(crate) fn float_sub(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a - b));
}

pub(crate) fn float_mul(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a * b));
}

pub(crate) fn float_div(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| (b != 0.0).then(|| a / b));
}

pub(crate) fn float_rem(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| (b != 0.0).then(|| a % b));
}

pub(crate) fn float_max(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a.max(b)));
}

pub(crate) fn float_min(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a.min(b)));
}

pub(crate) fn float_pow(m: &mut Machine<'_>) {
    binary(&mut m.state.float, |a, b| Some(a.powf(b)));
}

pub(crate) fn float_lt(m: &mut Machine<'_>) {
    compare(&mut m.state.float, &mut m.state.boolean, |a, b| a < b);
}

pub(crate) fn float_eq(m: &mut Machine<'_>) {
    compare(&mut m.state.float, &mut m.state.boolean, |a, b| a == b);
}

pub(crate) fn float_gt(m: &mut Machine<'_>) {
    compare(&mut m.state.float, &mut m.state.boolean, |a, b| a > b);
}

pub(crate) fn float_abs(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(x.abs()));
}

pub(crate) fn float_neg(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(-x));
}

pub(crate) fn float_sin(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(x.sin()));
}

pub(crate) fn float_cos(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(x.cos()));
}

pub(crate) fn float_tan(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(x.tan()));
}

pub(crate) fn float_exp(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| Some(x.exp()));
}

pub(crate) fn float_ln(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| (x > 0.0).then(|| x.ln()));
}

pub(crate) fn float_log(m: &mut Machine<'_>) {
    unary(&mut m.state.float, |x| (x > 0.0).then(|| x.log10()));
}

pub(crate) fn float_from_boolean(m: &mut Machine<'_>) {
    if let Some(b) = m.state.boolean.pop() {
        m.state.float.push(if b { 1.0 } else { 0.0 });
    }
}

pub(crate) fn float_from_integer(m: &mut Machine<'_>) {
    if let Some(n) = m.state.integer.pop() {
        m.state.float.push(n as f64);
    }
}

// integer

pub(crate) fn integer_add(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some(a.wrapping_add(b)));
}

pub(crate) fn integer_sub(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some(a.wrapping_sub(b)));
}

pub(crate) fn integer_mul(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some(a.wrapping_mul(b)));
}

pub(crate) fn integer_div(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| (b != 0).then(|| a.wrapping_div(b)));
}

pub(crate) fn integer_rem(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| (b != 0).then(|| a.wrapping_rem(b)));
}

pub(crate) fn integer_max(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some(a.max(b)));
}

pub(crate) fn integer_min(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some(a.min(b)));
}

/// Computed in floating point and saturated back, as Psh does.
pub(crate) fn integer_pow(m: &mut Machine<'_>) {
    binary(&mut m.state.integer, |a, b| Some((a as f64).powf(b as f64) as i64));
}

pub(crate) fn integer_lt(m: &mut Machine<'_>) {
    compare(&mut m.state.integer, &mut m.state.boolean, |a, b| a < b);
}

pub(crate) fn integer_eq(m: &mut Machine<'_>) {
    compare(&mut m.state.integer, &mut m.state.boolean, |a, b| a == b);
}

pub(crate) fn integer_gt(m: &mut Machine<'_>) {
    compare(&mut m.state.integer, &mut m.state.boolean, |a, b| a > b);
}

pub(crate) fn integer_abs(m: &mut Machine<'_>) {
    unary(&mut m.state.integer, |x| Some(x.wrapping_abs()));
}

pub(crate) fn integer_neg(m: &mut Machine<'_>) {
    unary(&mut m.state.integer, |x| Some(x.wrapping_neg()));
}

pub(crate) fn integer_ln(m: &mut Machine<'_>) {
    unary(&mut m.state.integer, |x| (x > 0).then(|| (x as f64).ln() as i64));
}

pub(crate) fn integer_log(m: &mut Machine<'_>) {
    unary(&mut m.state.integer, |x| (x > 0).then(|| (x as f64).log10() as i64));
}

pub(crate) fn integer_from_boolean(m: &mut Machine<'_>) {
    if let Some(b) = m.state.boolean.pop() {
        m.state.integer.push(b as i64);
    }
}

/// Truncates toward zero; NaN becomes 0 and infinities saturate.
pub(crate) fn integer_from_float(m: &mut Machine<'_>) {
    if let Some(x) = m.state.float.pop() {
        m.state.integer.push(x as i64);
    }
}

// boolean

pub(crate) fn boolean_and(m: &mut Machine<'_>) {
    binary(&mut m.state.boolean, |a, b| Some(a && b));
}

pub(crate) fn boolean_or(m: &mut Machine<'_>) {
    binary(&mut m.state.boolean, |a, b| Some(a || b));
}

pub(crate) fn boolean_xor(m: &mut Machine<'_>) {
    binary(&mut m.state.boolean, |a, b| Some(a ^ b));
}

pub(crate) fn boolean_eq(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    let n = s.boolean.len();
    if n >= 2 {
        let r = s.boolean[n - 2] == s.boolean[n - 1];
        s.boolean.truncate(n - 2);
        s.boolean.push(r);
    }
}

pub(crate) fn boolean_not(m: &mut Machine<'_>) {
    unary(&mut m.state.boolean, |b| Some(!b));
}

pub(crate) fn boolean_from_float(m: &mut Machine<'_>) {
    if let Some(x) = m.state.float.pop() {
        m.state.boolean.push(x != 0.0);
    }
}

pub(crate) fn boolean_from_integer(m: &mut Machine<'_>) {
    if let Some(n) = m.state.integer.pop() {
        m.state.boolean.push(n != 0);
    }
}
