use proptest::prelude::*;
use pushopt_core::push::{execute, Atom, Environment, Program, PushState, SearchVector};

fn state(dimension: usize) -> PushState {
    PushState::new(Environment::uniform_box(dimension, -100.0, 100.0, 17))
}

/// Runs `code` with `vectors` pushed bottom-first and returns the state.
fn run_with(dimension: usize, vectors: &[&[f64]], floats: &[f64], ints: &[i64], code: &str) -> PushState {
    let mut s = state(dimension);
    s.vector.extend(vectors.iter().map(|v| SearchVector(v.to_vec())));
    s.float.extend_from_slice(floats);
    s.integer.extend_from_slice(ints);
    execute(&code.parse().unwrap(), &mut s, 100);
    s
}

fn top(s: &PushState) -> Vec<f64> {
    s.vector.last().expect("a vector").0.clone()
}

#[test]
fn componentwise_arithmetic() {
    assert_eq!(top(&run_with(2, &[&[1.0, 2.0], &[3.0, 4.0]], &[], &[], "(vector.+)")), [4.0, 6.0]);
    assert_eq!(top(&run_with(2, &[&[6.0, 5.0], &[2.0, 0.0]], &[], &[], "(vector./)")), [3.0, 5.0]);
    assert_eq!(top(&run_with(2, &[&[7.0, -1.5], &[7.0, -1.5]], &[], &[], "(vector.-)")), [0.0, 0.0]);
    assert_eq!(top(&run_with(2, &[&[5.0, 1.0], &[2.0, 3.0]], &[], &[], "(vector.-)")), [3.0, -2.0]);
    assert_eq!(top(&run_with(2, &[&[5.0, 1.0], &[2.0, 3.0]], &[], &[], "(vector.*)")), [10.0, 3.0]);
    let s = run_with(2, &[&[1.0, 2.0]], &[], &[], "(vector.+ vector.- vector.* vector./)");
    assert_eq!(s.vector.len(), 1);
}

#[test]
fn scale_dprod_mag() {
    let s = run_with(2, &[&[3.0, 4.0]], &[], &[], "(vector.mag)");
    assert_eq!(s.float, [5.0]);
    assert!(s.vector.is_empty());
    let s = run_with(3, &[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]], &[], &[], "(vector.dprod)");
    assert_eq!(s.float, [32.0]);
    assert_eq!(top(&run_with(2, &[&[1.0, -2.0]], &[2.0], &[], "(vector.scale)")), [2.0, -4.0]);
}

#[test]
fn dim_modify_wraps_the_index() {
    assert_eq!(top(&run_with(2, &[&[2.0, 2.0]], &[3.0], &[5], "(vector.dim*)")), [2.0, 6.0]);
    assert_eq!(top(&run_with(2, &[&[2.0, 2.0]], &[3.0], &[-1], "(vector.dim+)")), [2.0, 5.0]);
    assert_eq!(top(&run_with(3, &[&[0.0; 3]], &[1.5], &[0], "(vector.dim+)")), [1.5, 0.0, 0.0]);
    // missing integer: untouched, float kept
    let s = run_with(2, &[&[2.0, 2.0]], &[3.0], &[], "(vector.dim+)");
    assert_eq!((top(&s), s.float.clone()), (vec![2.0, 2.0], vec![3.0]));
}

fn with_code(vectors: &[&[f64]], code: &str, instruction: &str) -> PushState {
    let mut s = state(vectors[0].len());
    s.vector.extend(vectors.iter().map(|v| SearchVector(v.to_vec())));
    s.code.push(Atom::List(Program::parse(code).unwrap().into_root()));
    execute(&instruction.parse().unwrap(), &mut s, 100);
    s
}

#[test]
fn apply_and_zip() {
    assert_eq!(top(&with_code(&[&[2.0, 3.0]], "(float.dup float.*)", "(vector.apply)")), [4.0, 9.0]);
    assert_eq!(top(&with_code(&[&[1.0, 2.0], &[10.0, 20.0]], "(float.+)", "(vector.zip)")), [11.0, 22.0]);
    assert_eq!(top(&with_code(&[&[5.0, 6.0]], "()", "(vector.apply)")), [5.0, 6.0]);
    // a component whose code empties the float stack passes through
    assert_eq!(top(&with_code(&[&[5.0, 6.0]], "(float.pop)", "(vector.apply)")), [5.0, 6.0]);
}

#[test]
fn apply_out_of_budget_discards_the_result() {
    let mut s = state(3);
    s.vector.push(SearchVector(vec![1.0, 2.0, 3.0]));
    s.code.push(Atom::List(Program::parse("(1000000 exec.do*count ())").unwrap().into_root()));
    execute(&"(vector.apply)".parse().unwrap(), &mut s, 100);
    assert!(s.vector.is_empty());
    assert!(s.code.is_empty());
}

#[test]
fn between_examples() {
    assert_eq!(top(&run_with(2, &[&[0.0, 0.0], &[2.0, 2.0]], &[0.5], &[], "(vector.between)")), [1.0, 1.0]);
    assert_eq!(top(&run_with(2, &[&[3.0, 4.0], &[2.0, 2.0]], &[0.0], &[], "(vector.between)")), [3.0, 4.0]);
    assert_eq!(top(&run_with(2, &[&[0.0, 0.0], &[1.0, 0.0]], &[2.0], &[], "(vector.between)")), [2.0, 0.0]);
}

#[test]
fn urand_is_a_unit_vector() {
    for dim in [1, 2, 10] {
        let s = run_with(dim, &[], &[], &[], "(vector.urand vector.urand vector.urand)");
        for v in &s.vector {
            assert!((v.magnitude() - 1.0).abs() < 1e-12);
            if dim == 1 {
                assert!(v[0] == 1.0 || v[0] == -1.0);
            }
        }
    }
}

#[test]
fn wrand_stays_in_bounds() {
    let mut s = state(2);
    let program: Program = "(vector.wrand)".parse().unwrap();
    let mut sums = [0.0; 2];
    for _ in 0..10_000 {
        execute(&program, &mut s, 100);
        let v = s.vector.pop().unwrap();
        assert!(v.iter().all(|c| (-100.0..=100.0).contains(c)));
        sums[0] += v[0];
        sums[1] += v[1];
    }
    for total in sums {
        assert!((total / 10_000.0).abs() < 3.0, "{total}");
    }
}

#[test]
fn wrand_radius_comes_from_the_float_stack() {
    let mut s = state(3);
    let program: Program = "(0.89 vector.wrand -2.5 vector.wrand 1e9 vector.wrand)".parse().unwrap();
    for _ in 0..1000 {
        execute(&program, &mut s, 100);
        let wide = s.vector.pop().unwrap();
        let negative = s.vector.pop().unwrap();
        let narrow = s.vector.pop().unwrap();
        assert!(narrow.iter().all(|c| c.abs() <= 0.89));
        assert!(negative.iter().all(|c| c.abs() <= 2.5));
        assert!(wide.iter().all(|c| c.abs() <= 100.0));
    }
    assert!(s.float.is_empty());
}

#[test]
fn rand_uses_the_float_erc_range() {
    let s = run_with(50, &[], &[], &[], "(vector.rand)");
    assert!(top(&s).iter().all(|c| (-10.0..=10.0).contains(c)));
}

fn arb_vec(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, dim)
}

fn arb_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..12).prop_flat_map(|d| (arb_vec(d), arb_vec(d)))
}

proptest! {
    #[test]
    fn add_commutes_and_sub_inverts((a, b) in arb_pair()) {
        let d = a.len();
        let ab = top(&run_with(d, &[&a, &b], &[], &[], "(vector.+)"));
        let ba = top(&run_with(d, &[&b, &a], &[], &[], "(vector.+)"));
        prop_assert_eq!(&ab, &ba);
        let back = top(&run_with(d, &[&a, &b], &[], &[], "(vector.+ vector.dup vector.pop)"));
        let mut s = state(d);
        s.vector.push(SearchVector(back));
        s.vector.push(SearchVector(b.clone()));
        execute(&"(vector.-)".parse().unwrap(), &mut s, 100);
        let diff = top(&s);
        for (x, y) in diff.iter().zip(&a) {
            // (a + b) - b equals a up to one rounding of the sum
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs() + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
        }
    }

    #[test]
    fn dprod_is_squared_magnitude(a in (1usize..12).prop_flat_map(arb_vec)) {
        let d = a.len();
        let s = run_with(d, &[&a, &a], &[], &[], "(vector.dprod)");
        let m = run_with(d, &[&a], &[], &[], "(vector.mag)").float[0];
        let dp = s.float[0];
        prop_assert!((dp - m * m).abs() <= 1e-9 * dp.abs().max(1e-300));
    }

    #[test]
    fn between_is_symmetric((a, b) in arb_pair(), t in -3.0f64..3.0) {
        let d = a.len();
        let ab = top(&run_with(d, &[&a, &b], &[t], &[], "(vector.between)"));
        let ba = top(&run_with(d, &[&b, &a], &[1.0 - t], &[], "(vector.between)"));
        for i in 0..d {
            prop_assert!((ab[i] - ba[i]).abs() <= 1e-9 * (1.0 + a[i].abs() + b[i].abs()));
        }
        let at0 = top(&run_with(d, &[&a, &b], &[0.0], &[], "(vector.between)"));
        let at1 = top(&run_with(d, &[&a, &b], &[1.0], &[], "(vector.between)"));
        prop_assert_eq!(at0, a.clone());
        for i in 0..d {
            prop_assert!((at1[i] - b[i]).abs() <= 1e-9 * (1.0 + a[i].abs() + b[i].abs()));
        }
    }

    #[test]
    fn apply_identity(a in (1usize..12).prop_flat_map(arb_vec)) {
        prop_assert_eq!(top(&with_code(&[&a], "()", "(vector.apply)")), a.clone());
    }
}
