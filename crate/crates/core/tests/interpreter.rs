use proptest::prelude::*;
use pushopt_core::push::{
    execute, random_program, registry, Atom, Environment, HaltReason, Instruction, InstructionSet,
    Program, PushState, RandomCodeConfig, SearchVector, Value,
};
use pushopt_core::rng::rng_from_seed;

fn state(dimension: usize, seed: u64) -> PushState {
    PushState::new(Environment::uniform_box(dimension, -100.0, 100.0, seed))
}

/// A state loaded the way the evaluator loads it mid-episode.
fn loaded_state(dimension: usize, seed: u64) -> PushState {
    let mut s = state(dimension, seed);
    let lo = SearchVector(vec![-100.0; dimension]);
    let hi = SearchVector(vec![100.0; dimension]);
    let p = SearchVector((0..dimension).map(|i| i as f64 - 1.5).collect());
    for v in [
        Value::Vector(lo),
        Value::Vector(hi),
        Value::Float(12.5),
        Value::Vector(p.clone()),
        Value::Float(12.5),
    ] {
        s.push_input(v);
    }
    s.vector.push(p);
    s.float.extend([12.5, 12.5]);
    s.integer.push(3);
    s.boolean.push(true);
    s
}

fn run(text: &str) -> (PushState, pushopt_core::push::ExecutionReport) {
    let mut s = state(2, 0);
    let report = execute(&text.parse().unwrap(), &mut s, 100);
    (s, report)
}

#[test]
fn integer_addition() {
    let (s, report) = run("(5 3 integer.+)");
    assert_eq!(s.integer, vec![8]);
    assert_eq!(report.halted, HaltReason::ExecStackEmpty);
    assert_eq!(report.instructions_executed, 4);
}

#[test]
fn underflow_is_a_noop() {
    let (s, report) = run("(float.+)");
    assert!(s.float.is_empty() && s.integer.is_empty() && s.vector.is_empty());
    assert!(s.boolean.is_empty() && s.code.is_empty() && s.exec.is_empty());
    assert_eq!(report.instructions_executed, 2);
}

#[test]
fn infinite_loop_hits_the_budget() {
    // do*times re-pushes its own body forever once the count is huge.
    let (_, report) = run("(1000000000 exec.do*times (1 integer.+))");
    assert_eq!(report.halted, HaltReason::BudgetExhausted);
    assert_eq!(report.instructions_executed, 100);
}

#[test]
fn budget_zero_executes_nothing() {
    let mut s = state(2, 0);
    let report = execute(&"(1 2 3)".parse().unwrap(), &mut s, 0);
    assert_eq!(report.instructions_executed, 0);
    assert_eq!(report.halted, HaltReason::BudgetExhausted);
    assert!(s.integer.is_empty() && s.exec.is_empty());
}

#[test]
fn float_ops_follow_second_operand_first_order() {
    let (s, _) = run("(7.0 2.0 float.- 9.0 3.0 float./ 2.0 0.0 float./)");
    assert_eq!(s.float, vec![5.0, 3.0, 2.0, 0.0]);
}

#[test]
fn protected_logarithms() {
    let (s, _) = run("(-1.0 float.ln 0.0 float.log 100.0 float.log)");
    assert_eq!(s.float, vec![-1.0, 0.0, 2.0]);
}

#[test]
fn non_finite_results_propagate() {
    let (s, _) = run("(1e308 10.0 float.* float.tan)");
    assert!(s.float[0].is_nan());
}

#[test]
fn input_index_reads_from_the_top_and_clamps() {
    let mut s = loaded_state(3, 1);
    s.integer.clear();
    s.float.clear();
    s.vector.clear();
    s.integer.extend([99, 0, 1]);
    let report = execute(&"(input.index input.index input.index)".parse().unwrap(), &mut s, 100);
    assert_eq!(report.halted, HaltReason::ExecStackEmpty);
    // depth 1 is the point, depth 0 the value, depth 99 clamps to the lower bound
    assert_eq!(s.float, vec![12.5]);
    assert_eq!(s.vector.len(), 2);
    assert_eq!(s.vector[0].0, vec![-1.5, -0.5, 0.5]);
    assert_eq!(s.vector[1].0, vec![-100.0; 3]);
}

#[test]
fn exec_do_range_counts_both_ways() {
    let (s, _) = run("(0 3 exec.do*range ())");
    assert_eq!(s.integer, vec![0, 1, 2, 3]);
    let (s, _) = run("(2 0 exec.do*range ())");
    assert_eq!(s.integer, vec![2, 1, 0]);
}

#[test]
fn exec_iflt_and_if() {
    let (s, _) = run("(1.0 2.0 exec.iflt 10 20)");
    assert_eq!(s.integer, vec![10]);
    let (s, _) = run("(false exec.if 10 20)");
    assert_eq!(s.integer, vec![20]);
}

#[test]
fn yank_and_shove_count_from_the_top() {
    let (s, _) = run("(1 2 3 4 2 integer.yank)");
    assert_eq!(s.integer, vec![1, 3, 4, 2]);
    let (s, _) = run("(1 2 3 4 2 integer.shove)");
    assert_eq!(s.integer, vec![1, 4, 2, 3]);
    let (s, _) = run("(1.0 2.0 3.0 float.rot)");
    assert_eq!(s.float, vec![2.0, 3.0, 1.0]);
}

#[test]
fn parse_examples() {
    assert_eq!(Program::parse("(5 3 integer.+)").unwrap().points(), 4);
    let f6 = "(float.tan vector.wrand vector.yank vector.pop vector.- 0.61 vector.wrand vector.-)";
    assert_eq!(Program::parse(f6).unwrap().points(), 9);
    assert!(Program::parse("(foo.bar)").is_err());
    assert_eq!(Program::parse("(5 3 integer.+)").unwrap().to_string(), "(5 3 integer.+)");
    assert_eq!(Program::parse("()").unwrap().to_string(), "()");
    assert_eq!(Program::parse("(0.68)").unwrap().to_string(), "(0.68)");
}

#[test]
fn registry_examples() {
    let names = registry();
    assert!(names.contains(&"vector.between"));
    assert!(names.contains(&"float.tan"));
    assert!(!names.contains(&"string.concat"));
    for n in &names {
        if *n != "true" && *n != "false" {
            assert!(Instruction::from_name(n).is_some(), "{n}");
        }
    }
}

fn arb_program() -> impl Strategy<Value = Program> {
    (any::<u64>(), 1usize..=100).prop_map(|(seed, max)| {
        let set = InstructionSet::standard();
        random_program(max, &set, &RandomCodeConfig::default(), &mut rng_from_seed(seed))
    })
}

fn check_vector_lengths(s: &PushState) -> bool {
    s.vector.iter().all(|v| v.len() == s.env.dimension)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn budget_and_input_are_respected(program in arb_program(), seed in any::<u64>(), dim in 1usize..6) {
        let mut s = loaded_state(dim, seed);
        let input_before = s.input().to_vec();
        let report = execute(&program, &mut s, 100);
        prop_assert!(report.instructions_executed <= 100);
        prop_assert_eq!(s.input(), input_before.as_slice());
        prop_assert!(s.exec.is_empty());
        prop_assert!(check_vector_lengths(&s));
    }

    #[test]
    fn format_parse_round_trip(program in arb_program()) {
        let text = program.to_string();
        let reparsed = Program::parse(&text).unwrap();
        prop_assert_eq!(&reparsed, &program);
        prop_assert_eq!(reparsed.to_string(), text);
    }

    #[test]
    fn execution_is_deterministic(program in arb_program(), seed in any::<u64>()) {
        let mut a = loaded_state(3, seed);
        let mut b = loaded_state(3, seed);
        let ra = execute(&program, &mut a, 100);
        let rb = execute(&program, &mut b, 100);
        prop_assert_eq!(ra, rb);
        prop_assert_eq!(format!("{:?}", (&a.boolean, &a.integer, &a.float, &a.vector, &a.code)),
                        format!("{:?}", (&b.boolean, &b.integer, &b.float, &b.vector, &b.code)));
    }

    #[test]
    fn points_recount(program in arb_program()) {
        fn count(items: &[Atom]) -> usize {
            items.iter().map(|a| match a {
                Atom::List(inner) => 1 + count(inner),
                _ => 1,
            }).sum()
        }
        prop_assert_eq!(program.points(), 1 + count(program.root()));
    }
}

#[test]
fn random_program_bounds_and_census() {
    let set = InstructionSet::standard();
    let cfg = RandomCodeConfig::default();
    let mut rng = rng_from_seed(5);
    let single = random_program(1, &set, &cfg, &mut rng);
    assert_eq!(single.root().len(), 1);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..10_000 {
        let p = random_program(100, &set, &cfg, &mut rng);
        assert!(p.points() <= 100);
        for leaf in p.leaves() {
            match leaf {
                Atom::Instruction(i) => {
                    seen.insert(i.name());
                }
                Atom::Boolean(b) => {
                    seen.insert(if *b { "true" } else { "false" });
                }
                Atom::Float(_) => {
                    seen.insert("float.erc");
                }
                Atom::Integer(_) => {
                    seen.insert("integer.erc");
                }
                Atom::List(_) => unreachable!(),
            }
        }
    }
    for name in set.names() {
        assert!(seen.contains(name), "{name} never generated");
    }
}
