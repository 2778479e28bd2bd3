//! Infinite-valued semantics for normal logic programs.
//!
//! Every normal logic program, negation-as-failure included, has a unique
//! minimum model over the truth domain
//! `F0 < F1 < ... < 0 < ... < T1 < T0` with respect to the ordering
//! [`le_infty`](interp::le_infty). This crate computes that model and checks it
//! several independent ways.
//!
//! * [`truthval`]: the truth domain.
//! * [`lang`]: program text, parsing, and grounding.
//! * [`interp`]: interpretations, models, and the stage relations.
//! * [`engine`]: the consequence operator and the staged construction.
//! * [`wfs`]: an alternating-fixpoint well-founded solver for cross-checks.
//! * [`oracle`]: brute-force model enumeration and random generators.
//!
//! ```
//! use infval::{engine::solve, lang::Program};
//!
//! let program = Program::parse("p :- not q.\nq :- false.").unwrap();
//! let trace = solve(&program).unwrap();
//! assert_eq!(trace.model.to_json(&program).to_string(), r#"{"p":"T1","q":"F0"}"#);
//! ```

pub mod engine;
pub mod interp;
pub mod lang;
pub mod oracle;
pub mod truthval;
pub mod wfs;

pub use engine::{solve, SolveTrace};
pub use interp::Interpretation;
pub use lang::Program;
pub use truthval::{ThreeValued, TruthValue};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/truth-values.md")]
    mod truth_values {}
    #[doc = include_str!("../../../book/src/programs.md")]
    mod programs {}
    #[doc = include_str!("../../../book/src/interpretations.md")]
    mod interpretations {}
    #[doc = include_str!("../../../book/src/consequence.md")]
    mod consequence {}
    #[doc = include_str!("../../../book/src/minimum-model.md")]
    mod minimum_model {}
    #[doc = include_str!("../../../book/src/well-founded.md")]
    mod well_founded {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
