//! Interpretations, satisfaction, and the family of stage relations.
//!
//! For interpretations `I`, `J` and a level `a`:
//!
//! * `I =_a J` holds when both agree on which atoms take `T_b` and which take
//!   `F_b`, for every `b <= a`.
//! * `I <_a J` holds when they agree below `a` and, at `a`, `I` has no more
//!   `T_a` atoms and no fewer `F_a` atoms than `J`, with at least one of the
//!   two inclusions strict.
//! * `I <=_inf J` holds when `I = J` or `I <_a J` for some level `a`.
//!
//! `<=_a` is a preorder for each `a`; `<=_inf` is a partial order.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::lang::{AtomId, Clause, Literal, Program};
use crate::truthval::{glb, Order, ThreeValued, TruthValue};

/// A total assignment of truth values to the atoms of a program's base,
/// indexed by [`AtomId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    values: Vec<TruthValue>,
}

impl Interpretation {
    /// The interpretation assigning `F0` to every atom.
    pub fn empty(n_atoms: usize) -> Self {
        Interpretation {
            values: vec![TruthValue::FALSE; n_atoms],
        }
    }

    pub fn from_values(values: Vec<TruthValue>) -> Self {
        Interpretation { values }
    }

    /// Builds an interpretation from `(atom name, value)` pairs that must cover
    /// the program's base exactly.
    pub fn from_pairs<'a, I>(program: &Program, pairs: I) -> Result<Self, InterpError>
    where
        I: IntoIterator<Item = (&'a str, TruthValue)>,
    {
        let mut values: Vec<Option<TruthValue>> = vec![None; program.len()];
        for (name, v) in pairs {
            let id = program
                .find(name)
                .ok_or_else(|| InterpError::UnknownAtom(name.to_string()))?;
            if values[id.index()].replace(v).is_some() {
                return Err(InterpError::Duplicate(name.to_string()));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| InterpError::Missing(program.atom(AtomId(i)).to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Interpretation { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: AtomId) -> TruthValue {
        self.values[id.index()]
    }

    pub fn set(&mut self, id: AtomId, v: TruthValue) {
        self.values[id.index()] = v;
    }

    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (AtomId, TruthValue)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (AtomId(i), v))
    }

    /// Largest finite order among the values, `None` if all are `0` or there are no atoms.
    pub fn max_order(&self) -> Option<u32> {
        self.values.iter().filter_map(|v| v.order().finite()).max()
    }

    /// The pointwise collapse to three-valued logic.
    pub fn collapse(&self) -> ThreeValuedInterpretation {
        ThreeValuedInterpretation(self.values.iter().map(|v| v.collapse()).collect())
    }

    /// Renders as `{atom: "T1", ...}` keyed by atom name.
    pub fn to_json(&self, program: &Program) -> Value {
        let map: Map<String, Value> = self
            .iter()
            .map(|(id, v)| (program.atom(id).to_string(), Value::String(v.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(program: &Program, value: &Value) -> Result<Self, InterpError> {
        let obj = value.as_object().ok_or(InterpError::NotAnObject)?;
        let mut pairs = Vec::with_capacity(obj.len());
        for (k, v) in obj {
            let s = v
                .as_str()
                .ok_or_else(|| InterpError::BadValue(k.clone(), v.to_string()))?;
            let tv = s
                .parse::<TruthValue>()
                .map_err(|_| InterpError::BadValue(k.clone(), s.to_string()))?;
            pairs.push((k.as_str(), tv));
        }
        Interpretation::from_pairs(program, pairs)
    }

    /// `{atom=value, ...}` in atom order, for logs and error messages.
    pub fn display<'a>(&'a self, program: &'a Program) -> impl fmt::Display + 'a {
        DisplayInterp {
            interp: self,
            program,
        }
    }
}

struct DisplayInterp<'a> {
    interp: &'a Interpretation,
    program: &'a Program,
}

impl fmt::Display for DisplayInterp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (id, v)) in self.interp.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.program.atom(id), v)?;
        }
        f.write_str("}")
    }
}

/// A three-valued interpretation, indexed by [`AtomId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeValuedInterpretation(pub Vec<ThreeValued>);

impl ThreeValuedInterpretation {
    pub fn get(&self, id: AtomId) -> ThreeValued {
        self.0[id.index()]
    }

    pub fn to_json(&self, program: &Program) -> Value {
        let map: Map<String, Value> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (
                    program.atom(AtomId(i)).to_string(),
                    Value::String(v.to_string()),
                )
            })
            .collect();
        Value::Object(map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("interpretation must be a JSON object of atom -> value")]
    NotAnObject,
    #[error("atom `{0}` is not in the program's Herbrand base")]
    UnknownAtom(String),
    #[error("atom `{0}` is assigned twice")]
    Duplicate(String),
    #[error("atom `{0}` has no value")]
    Missing(String),
    #[error("atom `{0}`: invalid truth value {1}")]
    BadValue(String, String),
}

/// Value of a body literal. `true` is `T0`, `false` is `F0`.
pub fn eval_literal(i: &Interpretation, lit: Literal) -> TruthValue {
    match lit {
        Literal::Pos(a) => i.get(a),
        Literal::Neg(a) => i.get(a).negate(),
        Literal::True => TruthValue::TRUE,
        Literal::False => TruthValue::FALSE,
    }
}

/// Value of a conjunction: the minimum of its literals.
///
/// # Panics
///
/// If `body` is empty; grounding never produces an empty body.
pub fn eval_body(i: &Interpretation, body: &[Literal]) -> TruthValue {
    glb(body.iter().map(|&l| eval_literal(i, l))).expect("clause body must be nonempty")
}

pub fn satisfies(i: &Interpretation, clause: &Clause) -> bool {
    i.get(clause.head) >= eval_body(i, &clause.body)
}

pub fn is_model(i: &Interpretation, program: &Program) -> bool {
    program.clauses().iter().all(|c| satisfies(i, c))
}

/// Clauses of `program` that `i` does not satisfy.
pub fn violations<'p>(i: &Interpretation, program: &'p Program) -> Vec<&'p Clause> {
    program
        .clauses()
        .iter()
        .filter(|c| !satisfies(i, c))
        .collect()
}

/// The atoms `i` maps to exactly `v`.
pub fn restrict(i: &Interpretation, v: TruthValue) -> BTreeSet<AtomId> {
    i.iter()
        .filter(|&(_, w)| w == v)
        .map(|(id, _)| id)
        .collect()
}

/// The atoms of one order, split by polarity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderSlice {
    pub level: u32,
    pub atoms_true: BTreeSet<AtomId>,
    pub atoms_false: BTreeSet<AtomId>,
}

impl OrderSlice {
    pub fn is_empty(&self) -> bool {
        self.atoms_true.is_empty() && self.atoms_false.is_empty()
    }
}

pub fn slice(i: &Interpretation, level: u32) -> OrderSlice {
    OrderSlice {
        level,
        atoms_true: restrict(i, TruthValue::True(level)),
        atoms_false: restrict(i, TruthValue::False(level)),
    }
}

fn below(v: TruthValue, level: u32) -> bool {
    v.order() < Order::Finite(level)
}

fn agree_below(i: &Interpretation, j: &Interpretation, level: u32) -> bool {
    debug_assert_eq!(i.len(), j.len());
    i.values
        .iter()
        .zip(&j.values)
        .all(|(&a, &b)| a == b || !(below(a, level) || below(b, level)))
}

/// `I =_a J`: identical `T_b` and `F_b` slices for every `b <= a`.
pub fn eq_alpha(i: &Interpretation, j: &Interpretation, level: u32) -> bool {
    agree_below(i, j, level + 1)
}

/// `I <_a J`.
pub fn lt_alpha(i: &Interpretation, j: &Interpretation, level: u32) -> bool {
    if !agree_below(i, j, level) {
        return false;
    }
    let t = TruthValue::True(level);
    let f = TruthValue::False(level);
    let mut strict = false;
    for (&a, &b) in i.values.iter().zip(&j.values) {
        // I || T_a must be a subset of J || T_a
        if a == t && b != t {
            return false;
        }
        // I || F_a must be a superset of J || F_a
        if b == f && a != f {
            return false;
        }
        if (a == t) != (b == t) || (a == f) != (b == f) {
            strict = true;
        }
    }
    strict
}

/// `I <=_a J`: `I =_a J` or `I <_a J`.
pub fn le_alpha(i: &Interpretation, j: &Interpretation, level: u32) -> bool {
    eq_alpha(i, j, level) || lt_alpha(i, j, level)
}

/// The least level at which the slices of `i` and `j` differ, `None` if equal.
pub fn first_difference(i: &Interpretation, j: &Interpretation) -> Option<u32> {
    i.values
        .iter()
        .zip(&j.values)
        .filter(|(a, b)| a != b)
        .filter_map(|(a, b)| a.order().min(b.order()).finite())
        .min()
}

/// `I <=_inf J`.
///
/// `I <_a J` requires agreement below `a`, so it can only hold at the first
/// level where the two differ; that is the only level checked.
pub fn le_infty(i: &Interpretation, j: &Interpretation) -> bool {
    match first_difference(i, j) {
        None => true,
        Some(level) => lt_alpha(i, j, level),
    }
}

/// An interpretation is reasonable when no atom takes `T_a` for a limit
/// ordinal `a`. Natural-number orders are never limit ordinals, so every
/// representable interpretation qualifies.
pub fn is_reasonable(_i: &Interpretation) -> bool {
    true
}
