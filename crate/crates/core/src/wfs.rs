//! A separate well-founded model solver based on the alternating fixpoint.
//!
//! `gamma(S)` is the least model of the reduct of the program by `S`. It is
//! antimonotone, so `gamma . gamma` is monotone and its least fixpoint `K`
//! exists. The well-founded model makes `K` true, everything outside
//! `gamma(K)` false, and the rest undefined.
//!
//! Nothing here shares code with [`crate::engine`]; the two are compared to
//! cross-check each other.

use std::collections::BTreeSet;

use crate::interp::ThreeValuedInterpretation;
use crate::lang::{AtomId, Literal, Program};
use crate::truthval::ThreeValued;

/// A two-valued interpretation given by its set of true atoms.
pub type TwoValuedSet = BTreeSet<AtomId>;

/// Body of a negation-free clause.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefiniteBody {
    Atoms(Vec<AtomId>),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DefiniteClause {
    pub head: AtomId,
    pub body: DefiniteBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefiniteProgram {
    pub clauses: Vec<DefiniteClause>,
}

/// The reduct of `program` by `set`: clauses with `not a` for some `a` in
/// `set` are dropped, and the remaining negative literals are deleted.
pub fn reduct(program: &Program, set: &TwoValuedSet) -> DefiniteProgram {
    let mut clauses = Vec::new();
    'clauses: for c in program.clauses() {
        let mut atoms = Vec::new();
        for lit in &c.body {
            match *lit {
                Literal::Neg(a) if set.contains(&a) => continue 'clauses,
                Literal::Neg(_) => {}
                Literal::Pos(a) => atoms.push(a),
                Literal::True => {
                    clauses.push(DefiniteClause {
                        head: c.head,
                        body: DefiniteBody::True,
                    });
                    continue 'clauses;
                }
                Literal::False => {
                    clauses.push(DefiniteClause {
                        head: c.head,
                        body: DefiniteBody::False,
                    });
                    continue 'clauses;
                }
            }
        }
        let body = if atoms.is_empty() {
            DefiniteBody::True
        } else {
            DefiniteBody::Atoms(atoms)
        };
        clauses.push(DefiniteClause { head: c.head, body });
    }
    DefiniteProgram { clauses }
}

/// Least Herbrand model of a negation-free program, by naive saturation.
pub fn least_model(program: &DefiniteProgram) -> TwoValuedSet {
    let mut model = TwoValuedSet::new();
    loop {
        let mut changed = false;
        for c in &program.clauses {
            if model.contains(&c.head) {
                continue;
            }
            let fires = match &c.body {
                DefiniteBody::True => true,
                DefiniteBody::False => false,
                DefiniteBody::Atoms(atoms) => atoms.iter().all(|a| model.contains(a)),
            };
            if fires {
                model.insert(c.head);
                changed = true;
            }
        }
        if !changed {
            return model;
        }
    }
}

/// `gamma(S)`: least model of the reduct by `S`.
pub fn gamma(program: &Program, set: &TwoValuedSet) -> TwoValuedSet {
    least_model(&reduct(program, set))
}

/// The least fixpoint of `gamma . gamma`, starting from the empty set.
pub fn alternating_fixpoint(program: &Program) -> TwoValuedSet {
    let mut k = TwoValuedSet::new();
    loop {
        let next = gamma(program, &gamma(program, &k));
        if next == k {
            return k;
        }
        k = next;
    }
}

pub fn well_founded(program: &Program) -> ThreeValuedInterpretation {
    let true_set = alternating_fixpoint(program);
    let possible = gamma(program, &true_set);
    ThreeValuedInterpretation(
        program
            .atom_ids()
            .map(|a| {
                if true_set.contains(&a) {
                    ThreeValued::True
                } else if possible.contains(&a) {
                    ThreeValued::Undefined
                } else {
                    ThreeValued::False
                }
            })
            .collect(),
    )
}

/// Least model of the program with its negative literals deleted. For a
/// negation-free program this is the classical least Herbrand model.
pub fn classical_least_model(program: &Program) -> TwoValuedSet {
    gamma(program, &TwoValuedSet::new())
}
