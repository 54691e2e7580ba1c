//! Vector-stack instructions.
//!
//! Binary operators follow the numeric convention: the deeper vector is the
//! left operand (`a - b` with `b` on top). Every vector produced here has
//! the environment's dimension.

use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::push::atom::SearchVector;
use crate::push::interpreter::Machine;

fn componentwise(m: &mut Machine<'_>, f: impl Fn(f64, f64) -> f64) {
    let stack = &mut m.state.vector;
    if stack.len() < 2 {
        return;
    }
    let b = stack.pop().expect("checked");
    let mut a = stack.pop().expect("checked");
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x = f(*x, *y);
    }
    stack.push(a);
}

pub(crate) fn add(m: &mut Machine<'_>) {
    componentwise(m, |a, b| a + b);
}

pub(crate) fn sub(m: &mut Machine<'_>) {
    componentwise(m, |a, b| a - b);
}

pub(crate) fn mul(m: &mut Machine<'_>) {
    componentwise(m, |a, b| a * b);
}

/// Components with a zero divisor keep the numerator.
pub(crate) fn div(m: &mut Machine<'_>) {
    componentwise(m, |a, b| if b == 0.0 { a } else { a / b });
}

pub(crate) fn scale(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.vector.is_empty() || s.float.is_empty() {
        return;
    }
    let k = s.float.pop().expect("checked");
    let v = s.vector.last_mut().expect("checked");
    v.iter_mut().for_each(|x| *x *= k);
}

pub(crate) fn dprod(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.vector.len() < 2 {
        return;
    }
    let b = s.vector.pop().expect("checked");
    let a = s.vector.pop().expect("checked");
    s.float.push(a.iter().zip(b.iter()).map(|(x, y)| x * y).sum());
}

pub(crate) fn mag(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if let Some(v) = s.vector.pop() {
        s.float.push(v.magnitude());
    }
}

fn dim_modify(m: &mut Machine<'_>, f: impl Fn(f64, f64) -> f64) {
    let s = &mut *m.state;
    if s.vector.is_empty() || s.float.is_empty() || s.integer.is_empty() {
        return;
    }
    let index = s.integer.pop().expect("checked");
    let x = s.float.pop().expect("checked");
    let v = s.vector.last_mut().expect("checked");
    let d = index.rem_euclid(v.len() as i64) as usize;
    v[d] = f(v[d], x);
}

/// Adds the popped float to the component at the popped integer index
/// (taken modulo the dimension).
pub(crate) fn dim_add(m: &mut Machine<'_>) {
    dim_modify(m, |c, x| c + x);
}

pub(crate) fn dim_mul(m: &mut Machine<'_>) {
    dim_modify(m, |c, x| c * x);
}

/// Maps the top code item over each component: the component is pushed to
/// the float stack, the code runs, and the float on top becomes the new
/// component (or the old one survives if the float stack is empty).
pub(crate) fn apply(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.vector.is_empty() || s.code.is_empty() {
        return;
    }
    let v = s.vector.pop().expect("checked");
    let code = s.code.pop().expect("checked");
    let mut out = Vec::with_capacity(v.len());
    for &x in v.iter() {
        m.state.float.push(x);
        if !m.run_nested(code.clone()) {
            return;
        }
        out.push(m.state.float.pop().unwrap_or(x));
    }
    m.state.vector.push(SearchVector(out));
}

/// Like `apply`, over pairs: the left component is pushed, then the right.
/// When the float stack ends up empty the left component is kept.
pub(crate) fn zip(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.vector.len() < 2 || s.code.is_empty() {
        return;
    }
    let b = s.vector.pop().expect("checked");
    let a = s.vector.pop().expect("checked");
    let code = s.code.pop().expect("checked");
    let mut out = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b.iter()) {
        m.state.float.push(x);
        m.state.float.push(y);
        if !m.run_nested(code.clone()) {
            return;
        }
        out.push(m.state.float.pop().unwrap_or(x));
    }
    m.state.vector.push(SearchVector(out));
}

/// Unit vector with a uniformly distributed direction.
pub(crate) fn urand(m: &mut Machine<'_>) {
    let dim = m.state.env.dimension;
    let rng = &mut m.state.env.rng;
    let v = loop {
        let v: SearchVector = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = v.magnitude();
        if norm > 0.0 && norm.is_finite() {
            break v.iter().map(|x| x / norm).collect::<SearchVector>();
        }
        if dim == 0 {
            break v;
        }
    };
    m.state.vector.push(v);
}

/// Random vector inside the search bounds. When a float is available it is
/// popped and its magnitude `r` narrows each component's range to
/// `[lo, hi] ∩ [-r, r]`; a non-finite `r`, or a narrowed range that is
/// empty, falls back to the full bounds.
pub(crate) fn wrand(m: &mut Machine<'_>) {
    let radius = m.state.float.pop();
    let env = &mut m.state.env;
    let v: SearchVector = (0..env.dimension)
        .map(|d| {
            let (lo, hi) = (env.lower[d], env.upper[d]);
            let (lo, hi) = match radius {
                Some(r) if r.is_finite() => {
                    let r = r.abs();
                    let (a, b) = (lo.max(-r), hi.min(r));
                    if a <= b {
                        (a, b)
                    } else {
                        (lo, hi)
                    }
                }
                _ => (lo, hi),
            };
            env.rng.random_range(lo..=hi)
        })
        .collect();
    m.state.vector.push(v);
}

/// `a + t (b - a)` for the top two vectors (`b` on top) and the popped
/// float `t`; `t` outside `[0, 1]` extrapolates past either end.
pub(crate) fn between(m: &mut Machine<'_>) {
    let s = &mut *m.state;
    if s.vector.len() < 2 || s.float.is_empty() {
        return;
    }
    let t = s.float.pop().expect("checked");
    let b = s.vector.pop().expect("checked");
    let mut a = s.vector.pop().expect("checked");
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x += t * (y - *x);
    }
    s.vector.push(a);
}
