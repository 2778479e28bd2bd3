//! The immediate consequence operator and the staged construction of the
//! minimum model.
//!
//! The construction runs one stage per order `a = 0, 1, 2, ...`. Stage `a`
//! starts from the previous stage's result and iterates the consequence
//! operator. Values of order below `a` never change during the stage, atoms
//! that ever reach `T_a` keep it, atoms that stay at `F_a` throughout keep it,
//! and everything else is reset to `F_{a+1}` for the next stage. The first
//! stage that fixes no atom at all is the depth of the program; atoms still
//! unresolved at that point receive `0`.
//!
//! Higher-order values can oscillate without bound inside a stage (a
//! self-negating atom cycles `T3, F4, T5, ...`), so a stage is considered
//! converged when its order-`a` slice stops changing, not when the whole
//! interpretation does.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::interp::{eval_body, le_alpha, slice, Interpretation, ThreeValuedInterpretation};
use crate::lang::{AtomId, Program};
use crate::truthval::{lub, Order, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("stage {level}: iterate {step} does not extend the chain")]
    NotAChain { level: u32, step: usize },
    #[error("stage {level}: no convergence within {cap} iterations")]
    IterationCap { level: u32, cap: usize },
    #[error("depth exceeds the size of the Herbrand base ({base_size})")]
    DepthExceeded { base_size: usize },
    #[error("stage {level} past the depth fixed new atoms")]
    BeyondDepth { level: u32 },
}

/// One application of the immediate consequence operator: every atom takes
/// the least upper bound of the values of its clause bodies.
pub fn tp_step(program: &Program, i: &Interpretation) -> Interpretation {
    let values = program
        .atom_ids()
        .map(|a| lub(program.clauses_for(a).map(|c| eval_body(i, &c.body))))
        .collect();
    Interpretation::from_values(values)
}

/// The record of one stage of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub level: u32,
    /// The start interpretation followed by the computed iterates. Unless
    /// all iterates were retained, only the last two are kept.
    pub iterates: Vec<Interpretation>,
    /// Number of consequence-operator applications performed.
    pub steps: usize,
    /// Atoms that took `T_level` in some iterate.
    pub stabilized_true: BTreeSet<AtomId>,
    /// Atoms that held `F_level` in every iterate.
    pub stabilized_false: BTreeSet<AtomId>,
    pub result: Interpretation,
}

impl StageRecord {
    pub fn fixed_nothing(&self) -> bool {
        self.stabilized_true.is_empty() && self.stabilized_false.is_empty()
    }

    pub fn to_json(&self, program: &Program) -> Value {
        let names = |s: &BTreeSet<AtomId>| -> Vec<String> {
            s.iter().map(|&a| program.atom(a).to_string()).collect()
        };
        json!({
            "level": self.level,
            "iterates": self.iterates.iter().map(|i| i.to_json(program)).collect::<Vec<_>>(),
            "stabilized_true": names(&self.stabilized_true),
            "stabilized_false": names(&self.stabilized_false),
        })
    }
}

/// Runs stage `level` from `start`.
///
/// `start` must begin a chain under `<=_level`: the all-`F0` interpretation
/// for level 0, or the previous stage's result. Every step is checked.
pub fn omega_iterate(
    program: &Program,
    start: &Interpretation,
    level: u32,
    retain_all: bool,
) -> Result<StageRecord, EngineError> {
    // The order-`level` slice only grows in T and shrinks in F along the chain.
    let cap = 2 * program.len() + 2;

    let mut current = start.clone();
    let mut current_slice = slice(&current, level);
    let mut union_true = current_slice.atoms_true.clone();
    let mut inter_false = current_slice.atoms_false.clone();
    let mut iterates = vec![current.clone()];
    let mut steps = 0;

    loop {
        if steps == cap {
            return Err(EngineError::IterationCap { level, cap });
        }
        let next = tp_step(program, &current);
        steps += 1;
        if !le_alpha(&current, &next, level) {
            return Err(EngineError::NotAChain { level, step: steps });
        }
        let next_slice = slice(&next, level);
        union_true.extend(next_slice.atoms_true.iter().copied());
        inter_false.retain(|a| next_slice.atoms_false.contains(a));

        if !retain_all && iterates.len() == 2 {
            iterates.remove(0);
        }
        iterates.push(next.clone());

        let converged = next_slice == current_slice;
        current = next;
        current_slice = next_slice;
        if converged {
            break;
        }
    }

    let result = Interpretation::from_values(
        start
            .iter()
            .map(|(a, v)| {
                if v.order() < Order::Finite(level) {
                    v
                } else if union_true.contains(&a) {
                    TruthValue::True(level)
                } else if inter_false.contains(&a) {
                    TruthValue::False(level)
                } else {
                    TruthValue::False(level + 1)
                }
            })
            .collect(),
    );

    Ok(StageRecord {
        level,
        iterates,
        steps,
        stabilized_true: union_true,
        stabilized_false: inter_false,
        result,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Keep every iterate of every stage.
    pub trace: bool,
    /// Run one extra stage past the depth and require that it fixes nothing.
    pub check_beyond_depth: bool,
}

/// The full record of a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace {
    /// Stages `0..=depth`; the last one fixes no atoms.
    pub stages: Vec<StageRecord>,
    pub depth: u32,
    /// The minimum model.
    pub model: Interpretation,
}

impl SolveTrace {
    pub fn well_founded(&self) -> ThreeValuedInterpretation {
        collapse_model(&self.model)
    }

    /// `{"depth", "model", "wfm"}`, plus `"stages"` when `with_stages`.
    pub fn to_json(&self, program: &Program, with_stages: bool) -> Value {
        let mut out = json!({
            "depth": self.depth,
            "model": self.model.to_json(program),
            "wfm": self.well_founded().to_json(program),
        });
        if with_stages {
            out["stages"] = Value::Array(self.stages.iter().map(|s| s.to_json(program)).collect());
        }
        out
    }
}

/// Computes the minimum model with default options.
pub fn solve(program: &Program) -> Result<SolveTrace, EngineError> {
    solve_with(program, SolveOptions::default())
}

pub fn solve_with(program: &Program, options: SolveOptions) -> Result<SolveTrace, EngineError> {
    let mut current = Interpretation::empty(program.len());
    let mut stages = Vec::new();
    let mut level = 0u32;
    loop {
        // Each stage before the depth fixes at least one atom.
        if level as usize > program.len() {
            return Err(EngineError::DepthExceeded {
                base_size: program.len(),
            });
        }
        let stage = omega_iterate(program, &current, level, options.trace)?;
        current = stage.result.clone();
        let done = stage.fixed_nothing();
        stages.push(stage);
        if done {
            break;
        }
        level += 1;
    }
    let depth = level;

    if options.check_beyond_depth {
        let extra = omega_iterate(program, &current, depth + 1, false)?;
        if !extra.fixed_nothing() {
            return Err(EngineError::BeyondDepth { level: depth + 1 });
        }
    }

    let model = Interpretation::from_values(
        current
            .values()
            .iter()
            .map(|&v| {
                if v.order() < Order::Finite(depth) {
                    v
                } else {
                    TruthValue::Zero
                }
            })
            .collect(),
    );
    Ok(SolveTrace {
        stages,
        depth,
        model,
    })
}

/// Collapses every `T_k` to true, every `F_k` to false and `0` to undefined.
pub fn collapse_model(m: &Interpretation) -> ThreeValuedInterpretation {
    m.collapse()
}
