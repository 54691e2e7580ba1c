use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::atom::SearchVector;
use super::interpreter::Machine;
use super::ops::{control, generic, numeric, vector};

pub(crate) type Handler = fn(&mut Machine<'_>);

struct Definition {
    name: &'static str,
    handler: Handler,
    /// Part of the default evolution instruction set.
    default: bool,
}

struct Table {
    defs: Vec<Definition>,
    by_name: HashMap<&'static str, Instruction>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let defs = definitions();
        let by_name = defs
            .iter()
            .enumerate()
            .map(|(i, d)| (d.name, Instruction(i as u16)))
            .collect::<HashMap<_, _>>();
        assert_eq!(by_name.len(), defs.len(), "duplicate instruction name");
        Table { defs, by_name }
    })
}

macro_rules! generic_ops {
    ($defs:ident, $prefix:literal, $t:ty) => {
        $defs.extend([
            def(concat!($prefix, ".dup"), generic::dup::<$t>),
            def(concat!($prefix, ".flush"), generic::flush::<$t>),
            def(concat!($prefix, ".pop"), generic::pop::<$t>),
            def(concat!($prefix, ".rand"), generic::rand::<$t>),
            def(concat!($prefix, ".rot"), generic::rot::<$t>),
            def(concat!($prefix, ".shove"), generic::shove::<$t>),
            def(concat!($prefix, ".stackdepth"), generic::stackdepth::<$t>),
            def(concat!($prefix, ".swap"), generic::swap::<$t>),
            def(concat!($prefix, ".yank"), generic::yank::<$t>),
            def(concat!($prefix, ".yankdup"), generic::yankdup::<$t>),
        ])
    };
}

fn def(name: &'static str, handler: Handler) -> Definition {
    Definition {
        name,
        handler,
        default: true,
    }
}

fn definitions() -> Vec<Definition> {
    let mut defs = Vec::with_capacity(128);
    generic_ops!(defs, "boolean", bool);
    generic_ops!(defs, "float", f64);
    generic_ops!(defs, "integer", i64);
    generic_ops!(defs, "vector", SearchVector);

    defs.extend([
        def("boolean.=", numeric::boolean_eq),
        def("boolean.and", numeric::boolean_and),
        def("boolean.fromfloat", numeric::boolean_from_float),
        def("boolean.frominteger", numeric::boolean_from_integer),
        def("boolean.not", numeric::boolean_not),
        def("boolean.or", numeric::boolean_or),
        def("boolean.xor", numeric::boolean_xor),
    ]);
    defs.extend([
        def("exec.=", control::exec_eq),
        def("exec.do*count", control::exec_do_count),
        def("exec.do*range", control::exec_do_range),
        def("exec.do*times", control::exec_do_times),
        def("exec.if", control::exec_if),
        def("exec.iflt", control::exec_iflt),
        def("exec.noop", control::noop),
    ]);
    defs.extend([
        def("float.%", numeric::float_rem),
        def("float.*", numeric::float_mul),
        def("float.+", numeric::float_add),
        def("float.-", numeric::float_sub),
        def("float./", numeric::float_div),
        def("float.<", numeric::float_lt),
        def("float.=", numeric::float_eq),
        def("float.>", numeric::float_gt),
        def("float.abs", numeric::float_abs),
        def("float.cos", numeric::float_cos),
        // Generators emit a literal in place of an ERC; executing the name
        // directly draws a fresh constant.
        def("float.erc", generic::rand::<f64>),
        def("float.exp", numeric::float_exp),
        def("float.fromboolean", numeric::float_from_boolean),
        def("float.frominteger", numeric::float_from_integer),
        def("float.ln", numeric::float_ln),
        def("float.log", numeric::float_log),
        def("float.max", numeric::float_max),
        def("float.min", numeric::float_min),
        def("float.neg", numeric::float_neg),
        def("float.pow", numeric::float_pow),
        def("float.sin", numeric::float_sin),
        def("float.tan", numeric::float_tan),
    ]);
    defs.extend([
        def("input.inall", control::input_inall),
        def("input.inallrev", control::input_inallrev),
        def("input.index", control::input_index),
    ]);
    defs.extend([
        def("integer.%", numeric::integer_rem),
        def("integer.*", numeric::integer_mul),
        def("integer.+", numeric::integer_add),
        def("integer.-", numeric::integer_sub),
        def("integer./", numeric::integer_div),
        def("integer.<", numeric::integer_lt),
        def("integer.=", numeric::integer_eq),
        def("integer.>", numeric::integer_gt),
        def("integer.abs", numeric::integer_abs),
        def("integer.erc", generic::rand::<i64>),
        def("integer.fromboolean", numeric::integer_from_boolean),
        def("integer.fromfloat", numeric::integer_from_float),
        def("integer.ln", numeric::integer_ln),
        def("integer.log", numeric::integer_log),
        def("integer.max", numeric::integer_max),
        def("integer.min", numeric::integer_min),
        def("integer.neg", numeric::integer_neg),
        def("integer.pow", numeric::integer_pow),
    ]);
    defs.extend([
        def("vector.*", vector::mul),
        def("vector./", vector::div),
        def("vector.+", vector::add),
        def("vector.-", vector::sub),
        def("vector.apply", vector::apply),
        def("vector.between", vector::between),
        def("vector.dim+", vector::dim_add),
        def("vector.dim*", vector::dim_mul),
        def("vector.dprod", vector::dprod),
        def("vector.mag", vector::mag),
        def("vector.scale", vector::scale),
        def("vector.urand", vector::urand),
        def("vector.wrand", vector::wrand),
        def("vector.zip", vector::zip),
    ]);
    // Understood by the parser but not offered to evolution by default.
    defs.push(Definition {
        name: "code.noop",
        handler: control::noop,
        default: false,
    });
    defs
}

/// Handle to one entry of the built-in instruction table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instruction(u16);

impl Instruction {
    pub fn from_name(name: &str) -> Option<Instruction> {
        table().by_name.get(name).copied()
    }

    pub fn name(self) -> &'static str {
        table().defs[self.0 as usize].name
    }

    /// Every instruction the interpreter understands.
    pub fn all() -> impl Iterator<Item = Instruction> {
        (0..table().defs.len()).map(|i| Instruction(i as u16))
    }

    pub(crate) fn handler(self) -> Handler {
        table().defs[self.0 as usize].handler
    }

    pub(crate) fn exec_do_range() -> Instruction {
        Instruction::from_name("exec.do*range").expect("built in")
    }

    pub(crate) fn integer_pop() -> Instruction {
        Instruction::from_name("integer.pop").expect("built in")
    }

    pub fn is_float_erc(self) -> bool {
        self.name() == "float.erc"
    }

    pub fn is_integer_erc(self) -> bool {
        self.name() == "integer.erc"
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One thing a program generator can draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegistryEntry {
    Instruction(Instruction),
    /// The `true` / `false` literals.
    Literal(bool),
}

impl RegistryEntry {
    pub fn name(&self) -> &'static str {
        match self {
            RegistryEntry::Instruction(i) => i.name(),
            RegistryEntry::Literal(true) => "true",
            RegistryEntry::Literal(false) => "false",
        }
    }
}

/// The instruction set offered to program generators and variation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstructionSet {
    entries: Vec<RegistryEntry>,
}

impl Default for InstructionSet {
    fn default() -> Self {
        InstructionSet::standard()
    }
}

impl InstructionSet {
    /// The standard set: the typed stack manipulators, the boolean, exec,
    /// float, input, integer and vector instructions, and both boolean
    /// literals.
    pub fn standard() -> Self {
        let mut entries: Vec<_> = table()
            .defs
            .iter()
            .enumerate()
            .filter(|(_, d)| d.default)
            .map(|(i, _)| RegistryEntry::Instruction(Instruction(i as u16)))
            .collect();
        entries.push(RegistryEntry::Literal(false));
        entries.push(RegistryEntry::Literal(true));
        InstructionSet { entries }
    }

    /// Builds a set from names; `true` and `false` select the literals.
    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Self, String> {
        let mut set = InstructionSet {
            entries: Vec::new(),
        };
        for name in names {
            set.insert(name)?;
        }
        Ok(set)
    }

    /// Adds an instruction by name. Unknown names are rejected.
    pub fn insert(&mut self, name: &str) -> Result<(), String> {
        let entry = match name {
            "true" => RegistryEntry::Literal(true),
            "false" => RegistryEntry::Literal(false),
            _ => RegistryEntry::Instruction(
                Instruction::from_name(name).ok_or_else(|| name.to_string())?,
            ),
        };
        if !self.entries.contains(&entry) {
            self.entries.push(entry);
        }
        Ok(())
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(RegistryEntry::name).collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.iter().any(|e| e.name() == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Names in the standard instruction set.
pub fn registry() -> Vec<&'static str> {
    InstructionSet::standard().names()
}
