//! Brute-force checks over a truncated truth domain.
//!
//! Truncating the domain at order `k` keeps `F0..Fk`, `0` and `Tk..T0`, which
//! makes the set of models of a small program finite. On that set the oracle
//! can check minimality of a candidate under `<=_inf` by comparing it with
//! every model, and can run the model intersection sequence: starting from
//! all models, keep at each level `a` only the models whose order-`a` slice
//! has the fewest `T_a` atoms and the most `F_a` atoms.
//!
//! Results are only claimed for the truncation level used.
//!
//! The module also holds the seeded generators used by the property suites.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::interp::{is_model, le_infty, slice, Interpretation, OrderSlice};
use crate::lang::{Atom, AtomId, GroundLiteral, GroundRule, Program};
use crate::truthval::{Order, TruthValue};

/// Default limit on the number of candidate interpretations enumerated.
pub const DEFAULT_MAX_CANDIDATES: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {candidates} candidates, limit is {limit}")]
    TooManyCandidates { candidates: u128, limit: u64 },
}

/// The truth values of order at most `max_order`, plus `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedDomain {
    pub max_order: u32,
}

impl TruncatedDomain {
    pub fn new(max_order: u32) -> Self {
        TruncatedDomain { max_order }
    }

    /// `F0 < ... < Fk < 0 < Tk < ... < T0`.
    pub fn values(&self) -> Vec<TruthValue> {
        let k = self.max_order;
        (0..=k)
            .map(TruthValue::False)
            .chain(std::iter::once(TruthValue::Zero))
            .chain((0..=k).rev().map(TruthValue::True))
            .collect()
    }

    pub fn size(&self) -> usize {
        2 * self.max_order as usize + 3
    }

    pub fn contains(&self, v: TruthValue) -> bool {
        v.order() <= Order::Finite(self.max_order) || v == TruthValue::Zero
    }
}

/// A finite set of models over a truncated domain, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    pub domain: TruncatedDomain,
    pub models: Vec<Interpretation>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn contains(&self, i: &Interpretation) -> bool {
        self.models.contains(i)
    }

    pub fn is_subset_of(&self, other: &ModelSet) -> bool {
        let theirs: HashSet<&Interpretation> = other.models.iter().collect();
        self.models.iter().all(|m| theirs.contains(m))
    }
}

/// Every model of `program` whose values lie in the domain truncated at `k`.
///
/// Candidates are ordered lexicographically, first atom most significant,
/// values in ascending truth order. They are checked in parallel; the result
/// keeps that order.
pub fn enumerate_models(
    program: &Program,
    k: u32,
    max_candidates: u64,
) -> Result<ModelSet, OracleError> {
    let domain = TruncatedDomain::new(k);
    let values = domain.values();
    let n = program.len();
    let radix = values.len() as u128;
    let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(radix));
    let total = match total {
        Some(t) if t <= u128::from(max_candidates) => t as u64,
        other => {
            return Err(OracleError::TooManyCandidates {
                candidates: other.unwrap_or(u128::MAX),
                limit: max_candidates,
            })
        }
    };

    let radix = values.len() as u64;
    let models = (0..total)
        .into_par_iter()
        .filter_map(|mut index| {
            let mut vals = vec![TruthValue::FALSE; n];
            for slot in vals.iter_mut().rev() {
                *slot = values[(index % radix) as usize];
                index /= radix;
            }
            let candidate = Interpretation::from_values(vals);
            is_model(&candidate, program).then_some(candidate)
        })
        .collect();
    Ok(ModelSet { domain, models })
}

/// Outcome of a minimality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub k: u32,
    pub model_count: usize,
    pub minimal: bool,
    /// The first enumerated model `n` with `m <=_inf n` failing.
    pub counterexample: Option<Interpretation>,
}

impl Minimality {
    pub fn to_json(&self, program: &Program) -> Value {
        json!({
            "k": self.k,
            "model_count": self.model_count,
            "minimal": self.minimal,
            "counterexample": self.counterexample.as_ref().map(|c| c.to_json(program)),
            "intersection": Value::Null,
        })
    }
}

/// First model in `models` that `m` is not below under `<=_inf`.
pub fn find_counterexample<'a>(
    models: &'a ModelSet,
    m: &Interpretation,
) -> Option<&'a Interpretation> {
    models.models.iter().find(|n| !le_infty(m, n))
}

/// Checks `m <=_inf n` for every model `n` over the domain truncated at `k`.
///
/// This is a necessary condition for `m` being the minimum model; it is
/// exact only relative to the truncation.
pub fn verify_minimum(
    program: &Program,
    m: &Interpretation,
    k: u32,
    max_candidates: u64,
) -> Result<Minimality, OracleError> {
    let models = enumerate_models(program, k, max_candidates)?;
    let counterexample = find_counterexample(&models, m).cloned();
    Ok(Minimality {
        k,
        model_count: models.len(),
        minimal: counterexample.is_none(),
        counterexample,
    })
}

/// The atoms that take `T_level` in every member of `set` and those that take
/// `F_level` in some member.
pub fn odot(set: &[Interpretation], level: u32) -> OrderSlice {
    let t = TruthValue::True(level);
    let f = TruthValue::False(level);
    let n = set.first().map_or(0, Interpretation::len);
    let mut out = OrderSlice {
        level,
        ..OrderSlice::default()
    };
    for a in (0..n).map(AtomId) {
        if set.iter().all(|m| m.get(a) == t) {
            out.atoms_true.insert(a);
        }
        if set.iter().any(|m| m.get(a) == f) {
            out.atoms_false.insert(a);
        }
    }
    out
}

/// Result of the model intersection sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub k: u32,
    pub model_count: usize,
    /// `S_0, S_1, ..., S_delta`.
    pub stages: Vec<ModelSet>,
    /// The first level whose selected slice is empty.
    pub delta: u32,
    /// Members of `S_delta` with every value of order `>= delta` set to `0`,
    /// without duplicates.
    pub survivors: Vec<Interpretation>,
}

impl Intersection {
    pub fn singleton(&self) -> Option<&Interpretation> {
        match self.survivors.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }

    pub fn all_nonempty(&self) -> bool {
        self.stages.iter().all(|s| !s.is_empty())
    }

    pub fn nested(&self) -> bool {
        self.stages.windows(2).all(|w| w[1].is_subset_of(&w[0]))
    }

    pub fn to_json(&self, program: &Program) -> Value {
        json!({
            "k": self.k,
            "model_count": self.model_count,
            "minimal": Value::Null,
            "counterexample": Value::Null,
            "intersection": {
                "singleton": self.singleton().is_some(),
                "model": self.singleton().map(|m| m.to_json(program)),
                "delta": self.delta,
                "stage_sizes": self.stages.iter().map(ModelSet::len).collect::<Vec<_>>(),
            },
        })
    }
}

/// Runs the model intersection sequence over the models truncated at `k`.
///
/// `S_0` keeps the models whose order-0 slice equals `odot(all models, 0)`;
/// `S_a` keeps the members of `S_{a-1}` whose order-`a` slice equals
/// `odot(S_{a-1}, a)`. The sequence stops at the first level where that
/// slice is empty, which happens by `k + 1` at the latest.
pub fn intersection_sequence(
    program: &Program,
    k: u32,
    max_candidates: u64,
) -> Result<Intersection, OracleError> {
    let all = enumerate_models(program, k, max_candidates)?;
    let model_count = all.len();
    let mut stages: Vec<ModelSet> = Vec::new();
    let mut level = 0u32;
    let delta = loop {
        let prev = stages.last().unwrap_or(&all);
        let target = odot(&prev.models, level);
        let kept = prev
            .models
            .iter()
            .filter(|m| slice(m, level) == target)
            .cloned()
            .collect();
        stages.push(ModelSet {
            domain: all.domain,
            models: kept,
        });
        if target.is_empty() {
            break level;
        }
        level += 1;
    };

    let mut survivors: Vec<Interpretation> = Vec::new();
    for m in &stages.last().expect("at least one stage").models {
        let reset = Interpretation::from_values(
            m.values()
                .iter()
                .map(|&v| {
                    if v.order() < Order::Finite(delta) {
                        v
                    } else {
                        TruthValue::Zero
                    }
                })
                .collect(),
        );
        if !survivors.contains(&reset) {
            survivors.push(reset);
        }
    }

    Ok(Intersection {
        k,
        model_count,
        stages,
        delta,
        survivors,
    })
}

/// A seeded random propositional program over atoms `a0, a1, ...`.
///
/// Bodies have between 0 and `max_body_len` literals (an empty body is a
/// fact); each literal is negated with probability `neg_prob`.
pub fn random_program(
    seed: u64,
    n_atoms: usize,
    n_clauses: usize,
    max_body_len: usize,
    neg_prob: f64,
) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<Atom> = (0..n_atoms).map(|i| Atom::prop(format!("a{i}"))).collect();
    let mut rules = Vec::with_capacity(n_clauses);
    if !atoms.is_empty() {
        for _ in 0..n_clauses {
            let head = atoms.choose(&mut rng).expect("nonempty").clone();
            let len = rng.gen_range(0..=max_body_len);
            let body = (0..len)
                .map(|_| {
                    let atom = atoms.choose(&mut rng).expect("nonempty").clone();
                    if rng.gen_bool(neg_prob) {
                        GroundLiteral::Neg(atom)
                    } else {
                        GroundLiteral::Pos(atom)
                    }
                })
                .collect();
            rules.push(GroundRule { head, body });
        }
    }
    Program::from_rules(atoms, rules)
}

/// A uniformly random value of order at most `max_order`, or `0`.
pub fn random_value<R: Rng + ?Sized>(rng: &mut R, max_order: u32) -> TruthValue {
    let values = TruncatedDomain::new(max_order).values();
    values[rng.gen_range(0..values.len())]
}

pub fn random_interpretation<R: Rng + ?Sized>(
    rng: &mut R,
    n_atoms: usize,
    max_order: u32,
) -> Interpretation {
    Interpretation::from_values((0..n_atoms).map(|_| random_value(rng, max_order)).collect())
}

/// A random pair `(I, J)` with `I <=_level J` and values of order at most
/// `max_order`. `J` is uniform and `I` comes from [`alpha_below`].
pub fn alpha_comparable_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n_atoms: usize,
    max_order: u32,
    level: u32,
) -> (Interpretation, Interpretation) {
    let j = random_interpretation(rng, n_atoms, max_order);
    (alpha_below(rng, &j, max_order, level), j)
}

/// A random `I` with `I <=_level j`.
///
/// `I` copies `j` below `level`, demotes a random subset of `j`'s `T_level`
/// atoms, promotes a random subset of the other order `>= level` atoms to
/// `F_level`, and redraws the remaining order `>= level` atoms among values of
/// order above `level` or `0`.
pub fn alpha_below<R: Rng + ?Sized>(
    rng: &mut R,
    j: &Interpretation,
    max_order: u32,
    level: u32,
) -> Interpretation {
    let t = TruthValue::True(level);
    let f = TruthValue::False(level);
    let domain = TruncatedDomain::new(max_order.max(level + 1)).values();
    let below_t: Vec<TruthValue> = domain
        .iter()
        .copied()
        .filter(|&v| v < t && v.order() >= Order::Finite(level))
        .collect();
    let above_level: Vec<TruthValue> = domain
        .iter()
        .copied()
        .filter(|&v| v.order() > Order::Finite(level))
        .collect();

    let values = j
        .values()
        .iter()
        .map(|&v| {
            if v.order() < Order::Finite(level) || v == f {
                v
            } else if v == t {
                if rng.gen_bool(0.5) {
                    *below_t.choose(rng).expect("F_level is always available")
                } else {
                    v
                }
            } else if rng.gen_bool(0.3) {
                f
            } else {
                *above_level.choose(rng).expect("0 is always available")
            }
        })
        .collect();
    Interpretation::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::solve;
    use crate::interp::le_alpha;
    use crate::truthval::TruthValue::{False as F, True as T, Zero};

    const MAIN: &str = "p :- not q.\nq :- not r.\ns :- p.\ns :- not s.\nr :- false.";

    fn prog(text: &str) -> Program {
        Program::parse(text).unwrap()
    }

    fn interp(p: &Program, pairs: &[(&str, TruthValue)]) -> Interpretation {
        Interpretation::from_pairs(p, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn domain_layout() {
        let d = TruncatedDomain::new(1);
        assert_eq!(d.values(), vec![F(0), F(1), Zero, T(1), T(0)]);
        assert_eq!(d.size(), 5);
        assert!(d.values().windows(2).all(|w| w[0] < w[1]));
        assert!(d.contains(Zero) && d.contains(T(1)) && !d.contains(F(2)));
    }

    #[test]
    fn enumerate_small_program() {
        let p = prog("p :- not q.\nq :- false.");
        let models = enumerate_models(&p, 2, DEFAULT_MAX_CANDIDATES).unwrap();
        assert!(models.contains(&interp(&p, &[("p", T(1)), ("q", F(0))])));
        assert!(!models.contains(&interp(&p, &[("p", F(0)), ("q", F(0))])));
        assert!(models.models.iter().all(|m| is_model(m, &p)));
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let p = prog("p :- p.\nq :- q.");
        let models = enumerate_models(&p, 0, DEFAULT_MAX_CANDIDATES).unwrap();
        // every candidate is a model; 3 values per atom.
        assert_eq!(models.len(), 9);
        assert_eq!(models.models[0].values(), &[F(0), F(0)]);
        assert_eq!(models.models[1].values(), &[F(0), Zero]);
        assert_eq!(models.models[3].values(), &[Zero, F(0)]);
        assert_eq!(models.models[8].values(), &[T(0), T(0)]);
    }

    #[test]
    fn works_and_tired_have_different_models() {
        let a = prog("works :- not tired.\ntired :- false.");
        let b = prog("tired :- not works.\nworks :- false.");
        let ma = enumerate_models(&a, 2, DEFAULT_MAX_CANDIDATES).unwrap();
        let mb = enumerate_models(&b, 2, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_ne!(ma, mb);
        let min_a = interp(&a, &[("tired", F(0)), ("works", T(1))]);
        assert!(ma.contains(&min_a) && !mb.contains(&min_a));
    }

    #[test]
    fn truncation_is_monotone() {
        let p = prog(MAIN);
        let m0 = enumerate_models(&p, 0, DEFAULT_MAX_CANDIDATES).unwrap();
        let m1 = enumerate_models(&p, 1, DEFAULT_MAX_CANDIDATES).unwrap();
        assert!(m0.is_subset_of(&m1));
        let order0: Vec<_> = m1
            .models
            .iter()
            .filter(|m| m.values().iter().all(|v| m0.domain.contains(*v)))
            .cloned()
            .collect();
        assert_eq!(order0, m0.models);
    }

    #[test]
    fn size_guard() {
        let p = prog(MAIN);
        let err = enumerate_models(&p, 5, 1000).unwrap_err();
        assert_eq!(
            err,
            OracleError::TooManyCandidates {
                candidates: 13u128.pow(4),
                limit: 1000
            }
        );
    }

    #[test]
    fn verify_minimum_examples() {
        let p = prog(MAIN);
        let trace = solve(&p).unwrap();
        let ok = verify_minimum(&p, &trace.model, trace.depth + 2, DEFAULT_MAX_CANDIDATES).unwrap();
        assert!(ok.minimal && ok.counterexample.is_none());

        let not_min = interp(&p, &[("p", F(2)), ("q", T(1)), ("r", F(0)), ("s", T(3))]);
        assert!(is_model(&not_min, &p));
        let res = verify_minimum(&p, &not_min, 4, DEFAULT_MAX_CANDIDATES).unwrap();
        assert!(!res.minimal);
        let cx = res.counterexample.unwrap();
        assert!(is_model(&cx, &p) && !le_infty(&not_min, &cx));

        let p = prog("q :- false.");
        let m = interp(&p, &[("q", F(0))]);
        assert!(
            verify_minimum(&p, &m, 1, DEFAULT_MAX_CANDIDATES)
                .unwrap()
                .minimal
        );
    }

    #[test]
    fn intersection_on_main_example() {
        let p = prog(MAIN);
        let res = intersection_sequence(&p, 5, DEFAULT_MAX_CANDIDATES).unwrap();
        let mp = interp(&p, &[("r", F(0)), ("q", T(1)), ("p", F(2)), ("s", Zero)]);
        assert_eq!(res.singleton(), Some(&mp));
        assert_eq!(res.delta, 3);
        assert!(res.stages.iter().all(|s| s.contains(&mp)));
        assert!(res.all_nonempty() && res.nested());

        let in_s0 = interp(&p, &[("r", F(0)), ("q", T(1)), ("p", T(1)), ("s", T(1))]);
        assert!(res.stages[0].contains(&in_s0));
        let in_s1 = interp(&p, &[("r", F(0)), ("q", T(1)), ("p", T(2)), ("s", T(2))]);
        assert!(res.stages[1].contains(&in_s1) && !res.stages[2].contains(&in_s1));
    }

    #[test]
    fn odot_of_two_models() {
        let a = Interpretation::from_values(vec![T(0), F(0), T(1)]);
        let b = Interpretation::from_values(vec![T(0), T(1), F(0)]);
        let o = odot(&[a, b], 0);
        assert_eq!(
            o.atoms_true.into_iter().collect::<Vec<_>>(),
            vec![AtomId(0)]
        );
        assert_eq!(
            o.atoms_false.into_iter().collect::<Vec<_>>(),
            vec![AtomId(1), AtomId(2)]
        );
    }

    #[test]
    fn random_program_is_deterministic() {
        let a = random_program(1, 3, 3, 2, 0.5);
        let b = random_program(1, 3, 3, 2, 0.5);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert_ne!(
            random_program(2, 5, 8, 3, 0.5),
            random_program(3, 5, 8, 3, 0.5)
        );
    }

    #[test]
    fn random_program_without_clauses() {
        let p = random_program(7, 4, 0, 3, 0.5);
        let trace = solve(&p).unwrap();
        assert_eq!(trace.model, Interpretation::empty(4));
    }

    #[test]
    fn negation_free_programs_are_classical() {
        for seed in 0..20 {
            let p = random_program(seed, 5, 8, 3, 0.0);
            assert!(!p.has_negation());
            let m = solve(&p).unwrap().model;
            assert!(m.values().iter().all(|&v| v == T(0) || v == F(0)));
        }
    }

    #[test]
    fn comparable_pairs_are_comparable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let level = rng.gen_range(0..4);
            let (i, j) = alpha_comparable_pair(&mut rng, 5, 3, level);
            assert!(le_alpha(&i, &j, level));
            let h = alpha_below(&mut rng, &i, 3, level);
            assert!(le_alpha(&h, &i, level) && le_alpha(&h, &j, level));
        }
    }
}
