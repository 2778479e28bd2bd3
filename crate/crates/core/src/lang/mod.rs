//! Program syntax, the text parser, and grounding to a propositional program.
//!
//! A [`SourceProgram`] is what the parser produces: function-free rules that
//! may mention variables. [`ground`] instantiates it over the constants that
//! occur in the text and normalizes the result into a [`Program`]:
//!
//! * empty bodies become `true`,
//! * every atom of the Herbrand base that heads no clause gains `atom :- false`,
//! * duplicate clauses are dropped.
//!
//! After normalization every atom of the base heads at least one clause, so the
//! immediate consequence operator is total.

mod ground;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use ground::{ground, GROUNDING_LIMIT};
pub use parse::parse_program;

/// A ground atom: a predicate applied to constants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<String>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// Index of an atom in a program's Herbrand base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub usize);

impl AtomId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A body element of a ground clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Pos(AtomId),
    Neg(AtomId),
    /// The constant `true`; only ever the entire body of a clause.
    True,
    /// The constant `false`; only ever the entire body of a clause.
    False,
}

impl Literal {
    pub fn atom(self) -> Option<AtomId> {
        match self {
            Literal::Pos(a) | Literal::Neg(a) => Some(a),
            Literal::True | Literal::False => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    pub head: AtomId,
    pub body: Vec<Literal>,
}

/// A literal over atoms by value, used to assemble a [`Program`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundLiteral {
    Pos(Atom),
    Neg(Atom),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub head: Atom,
    pub body: Vec<GroundLiteral>,
}

/// A normalized ground program together with its finite Herbrand base.
///
/// Atoms are numbered in sorted order and clauses are sorted, so two programs
/// with the same clauses compare and render identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    base: Vec<Atom>,
    clauses: Vec<Clause>,
    by_head: Vec<Vec<usize>>,
}

impl Program {
    /// Builds a program from ground rules over `base` (extended with every atom
    /// the rules mention) and applies the normalization steps of grounding.
    pub fn from_rules<I>(base: I, rules: Vec<GroundRule>) -> Program
    where
        I: IntoIterator<Item = Atom>,
    {
        let mut atoms: BTreeSet<Atom> = base.into_iter().collect();
        for rule in &rules {
            atoms.insert(rule.head.clone());
            for lit in &rule.body {
                if let GroundLiteral::Pos(a) | GroundLiteral::Neg(a) = lit {
                    atoms.insert(a.clone());
                }
            }
        }
        let base: Vec<Atom> = atoms.into_iter().collect();
        let ids: BTreeMap<&Atom, AtomId> = base
            .iter()
            .enumerate()
            .map(|(i, a)| (a, AtomId(i)))
            .collect();

        let mut clauses = BTreeSet::new();
        for rule in &rules {
            let head = ids[&rule.head];
            let mut body = Vec::with_capacity(rule.body.len());
            let mut falsified = false;
            for lit in &rule.body {
                match lit {
                    GroundLiteral::Pos(a) => body.push(Literal::Pos(ids[a])),
                    GroundLiteral::Neg(a) => body.push(Literal::Neg(ids[a])),
                    // min(T0, x) = x
                    GroundLiteral::True => {}
                    // min(F0, x) = F0
                    GroundLiteral::False => falsified = true,
                }
            }
            let body = if falsified {
                vec![Literal::False]
            } else if body.is_empty() {
                vec![Literal::True]
            } else {
                body
            };
            clauses.insert(Clause { head, body });
        }

        let mut headed = vec![false; base.len()];
        for c in &clauses {
            headed[c.head.index()] = true;
        }
        for (i, has_rule) in headed.iter().enumerate() {
            if !has_rule {
                clauses.insert(Clause {
                    head: AtomId(i),
                    body: vec![Literal::False],
                });
            }
        }

        let clauses: Vec<Clause> = clauses.into_iter().collect();
        let mut by_head = vec![Vec::new(); base.len()];
        for (ci, c) in clauses.iter().enumerate() {
            by_head[c.head.index()].push(ci);
        }
        Program {
            base,
            clauses,
            by_head,
        }
    }

    /// Parses and grounds program text.
    pub fn parse(text: &str) -> Result<Program, LangError> {
        ground(&parse_program(text)?)
    }

    pub fn base(&self) -> &[Atom] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn atom(&self, id: AtomId) -> &Atom {
        &self.base[id.index()]
    }

    pub fn atom_ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.base.len()).map(AtomId)
    }

    /// Looks an atom up by its rendered name, e.g. `"p"` or `"e(a,b)"`.
    pub fn find(&self, name: &str) -> Option<AtomId> {
        self.base
            .iter()
            .position(|a| a.to_string() == name)
            .map(AtomId)
    }

    /// Clauses whose head is `id`. Never empty.
    pub fn clauses_for(&self, id: AtomId) -> impl Iterator<Item = &Clause> {
        self.by_head[id.index()].iter().map(|&ci| &self.clauses[ci])
    }

    pub fn has_negation(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| c.body.iter().any(|l| matches!(l, Literal::Neg(_))))
    }

    pub fn display_literal(&self, lit: Literal) -> String {
        match lit {
            Literal::Pos(a) => self.atom(a).to_string(),
            Literal::Neg(a) => format!("not {}", self.atom(a)),
            Literal::True => "true".to_string(),
            Literal::False => "false".to_string(),
        }
    }

    pub fn display_clause(&self, clause: &Clause) -> String {
        let head = self.atom(clause.head);
        if clause.body == [Literal::True] {
            return format!("{head}.");
        }
        let body: Vec<String> = clause
            .body
            .iter()
            .map(|&l| self.display_literal(l))
            .collect();
        format!("{head} :- {}.", body.join(", "))
    }
}

/// Renders the canonical text form: one clause per line, facts as `head.`.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{}", self.display_clause(c))?;
        }
        Ok(())
    }
}

/// A source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => f.write_str(c),
            Term::Var(v) => f.write_str(v),
        }
    }
}

/// An atom that may contain variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceAtom {
    pub predicate: String,
    pub args: Vec<Term>,
    pub pos: Pos,
}

impl SourceAtom {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }
}

impl fmt::Display for SourceAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(Term::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SourceLiteral {
    Pos(SourceAtom),
    Neg(SourceAtom),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceRule {
    pub head: SourceAtom,
    /// Empty for facts.
    pub body: Vec<SourceLiteral>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceProgram {
    pub rules: Vec<SourceRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: predicate `{predicate}` used with arity {found}, previously {expected}")]
    ArityMismatch {
        pos: Pos,
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: unsafe rule: variable `{var}` does not occur in a positive body literal")]
    UnsafeVariable { pos: Pos, var: String },
    #[error("grounding exceeds {limit} clause instances")]
    GroundingTooLarge { limit: usize },
}

impl LangError {
    /// `true` for the resource-guard error as opposed to malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, LangError::GroundingTooLarge { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ruleless_atoms_get_false_rule() {
        let p = Program::parse("p :- not q.").unwrap();
        assert_eq!(p.to_string(), "p :- not q.\nq :- false.\n");
    }

    #[test]
    fn fact_becomes_true_body() {
        let p = Program::parse("p.").unwrap();
        assert_eq!(p.clauses().len(), 1);
        assert_eq!(p.clauses()[0].body, vec![Literal::True]);
        assert_eq!(p.base(), &[Atom::prop("p")]);
    }

    #[test]
    fn constants_in_bodies_are_simplified() {
        let p = Program::parse("p :- q, true.\nr :- q, false.\ns :- true, true.").unwrap();
        let rendered = p.to_string();
        assert!(rendered.contains("p :- q.\n"));
        assert!(rendered.contains("r :- false.\n"));
        assert!(rendered.contains("s.\n"));
    }

    #[test]
    fn duplicate_clauses_are_merged() {
        let p = Program::parse("p :- q.\np :- q.\nq.").unwrap();
        assert_eq!(p.clauses().len(), 2);
    }

    #[test]
    fn every_atom_heads_a_clause() {
        let p = Program::parse("a :- b, not c.\nd :- not e.").unwrap();
        for id in p.atom_ids() {
            assert!(p.clauses_for(id).next().is_some(), "{}", p.atom(id));
        }
    }
}
