use std::collections::{BTreeMap, BTreeSet};

use super::{
    Atom, GroundLiteral, GroundRule, LangError, Program, SourceAtom, SourceLiteral, SourceProgram,
    Term,
};

/// Upper bound on the number of clause instances grounding may produce.
pub const GROUNDING_LIMIT: usize = 2_000_000;

/// Instantiates every rule over the constants occurring in the program.
///
/// The Herbrand base is every atom constructible from the program's
/// predicates and constants, including atoms no rule can derive; those are
/// given `atom :- false`.
pub fn ground(program: &SourceProgram) -> Result<Program, LangError> {
    let mut arities: BTreeMap<&str, usize> = BTreeMap::new();
    let mut constants: BTreeSet<&str> = BTreeSet::new();

    let atoms = program.rules.iter().flat_map(|r| {
        std::iter::once(&r.head).chain(r.body.iter().filter_map(|l| match l {
            SourceLiteral::Pos(a) | SourceLiteral::Neg(a) => Some(a),
            SourceLiteral::True | SourceLiteral::False => None,
        }))
    });
    for atom in atoms {
        match arities.get(atom.predicate.as_str()) {
            Some(&expected) if expected != atom.args.len() => {
                return Err(LangError::ArityMismatch {
                    pos: atom.pos,
                    predicate: atom.predicate.clone(),
                    expected,
                    found: atom.args.len(),
                })
            }
            Some(_) => {}
            None => {
                arities.insert(&atom.predicate, atom.args.len());
            }
        }
        for t in &atom.args {
            if let Term::Const(c) = t {
                constants.insert(c);
            }
        }
    }
    let constants: Vec<&str> = constants.into_iter().collect();

    let base_size = arities.values().try_fold(0usize, |acc, &arity| {
        constants
            .len()
            .checked_pow(arity as u32)
            .and_then(|n| acc.checked_add(n))
    });
    if base_size.is_none_or(|n| n > GROUNDING_LIMIT) {
        return Err(LangError::GroundingTooLarge {
            limit: GROUNDING_LIMIT,
        });
    }

    let mut base = Vec::new();
    for (&pred, &arity) in &arities {
        for_each_tuple(&constants, arity, |args| {
            base.push(Atom::new(
                pred,
                args.iter().map(|c| c.to_string()).collect(),
            ));
        });
    }

    let mut rules = Vec::new();
    for rule in &program.rules {
        let positive: BTreeSet<&str> = rule
            .body
            .iter()
            .filter_map(|l| match l {
                SourceLiteral::Pos(a) => Some(a),
                _ => None,
            })
            .flat_map(SourceAtom::vars)
            .collect();
        let negative = rule.body.iter().filter_map(|l| match l {
            SourceLiteral::Neg(a) => Some(a),
            _ => None,
        });
        for atom in std::iter::once(&rule.head).chain(negative) {
            if let Some(var) = atom.vars().find(|v| !positive.contains(v)) {
                return Err(LangError::UnsafeVariable {
                    pos: atom.pos,
                    var: var.to_string(),
                });
            }
        }

        let vars: Vec<&str> = positive.into_iter().collect();
        let instances = constants
            .len()
            .checked_pow(vars.len() as u32)
            .unwrap_or(usize::MAX);
        if instances > GROUNDING_LIMIT.saturating_sub(rules.len()) {
            return Err(LangError::GroundingTooLarge {
                limit: GROUNDING_LIMIT,
            });
        }

        for_each_tuple(&constants, vars.len(), |values| {
            let subst: BTreeMap<&str, &str> =
                vars.iter().copied().zip(values.iter().copied()).collect();
            let inst = |a: &SourceAtom| {
                let args = a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Const(c) => c.clone(),
                        Term::Var(v) => subst[v.as_str()].to_string(),
                    })
                    .collect();
                Atom::new(a.predicate.clone(), args)
            };
            let body = rule
                .body
                .iter()
                .map(|l| match l {
                    SourceLiteral::Pos(a) => GroundLiteral::Pos(inst(a)),
                    SourceLiteral::Neg(a) => GroundLiteral::Neg(inst(a)),
                    SourceLiteral::True => GroundLiteral::True,
                    SourceLiteral::False => GroundLiteral::False,
                })
                .collect();
            rules.push(GroundRule {
                head: inst(&rule.head),
                body,
            });
        });
    }

    Ok(Program::from_rules(base, rules))
}

/// Calls `f` with every tuple of length `len` over `items`, in lexicographic order.
fn for_each_tuple<'a, F>(items: &[&'a str], len: usize, mut f: F)
where
    F: FnMut(&[&'a str]),
{
    if len == 0 {
        f(&[]);
        return;
    }
    if items.is_empty() {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut tuple: Vec<&str> = vec![items[0]; len];
    loop {
        f(&tuple);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < items.len() {
                tuple[i] = items[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = items[0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_program, Literal};

    fn ground_text(text: &str) -> Result<Program, LangError> {
        ground(&parse_program(text).unwrap())
    }

    #[test]
    fn fact_grounds_to_true_rule() {
        let p = ground_text("p.").unwrap();
        assert_eq!(p.to_string(), "p.\n");
        assert_eq!(p.clauses()[0].body, vec![Literal::True]);
    }

    #[test]
    fn underivable_edges_get_false_rules() {
        // Constants {a, b}: 2^2 instances for each binary predicate.
        let p = ground_text("e(a,b). r(X,Y) :- e(X,Y).").unwrap();
        assert_eq!(p.len(), 8);
        let e_atoms = p.base().iter().filter(|a| a.predicate == "e").count();
        let r_atoms = p.base().iter().filter(|a| a.predicate == "r").count();
        assert_eq!((e_atoms, r_atoms), (4, 4));
        let false_rules: Vec<String> = p
            .clauses()
            .iter()
            .filter(|c| c.body == [Literal::False])
            .map(|c| p.atom(c.head).to_string())
            .collect();
        assert_eq!(false_rules, vec!["e(a,a)", "e(b,a)", "e(b,b)"]);
        assert_eq!(p.clauses().len(), 8);
        assert!(p.to_string().contains("r(b,a) :- e(b,a).\n"));
    }

    #[test]
    fn transitive_closure_instances() {
        let p =
            ground_text("e(a,b).\ne(b,c).\nr(X,Y) :- e(X,Y).\nr(X,Y) :- e(X,Z), r(Z,Y).").unwrap();
        // 3 constants: 9 e-atoms, 9 r-atoms.
        assert_eq!(p.len(), 18);
        // 2 facts + 7 false e-rules + 9 + 27 r-rules.
        assert_eq!(p.clauses().len(), 2 + 7 + 9 + 27);
    }

    #[test]
    fn unsafe_head_variable() {
        let err = ground_text("p(X) :- q.").unwrap_err();
        assert!(matches!(err, LangError::UnsafeVariable { ref var, .. } if var == "X"));
    }

    #[test]
    fn unsafe_negated_variable() {
        let err = ground_text("q(a).\np :- not q(X).").unwrap_err();
        assert!(matches!(err, LangError::UnsafeVariable { ref var, .. } if var == "X"));
    }

    #[test]
    fn arity_mismatch() {
        let err = ground_text("p(a).\np(a,b).").unwrap_err();
        assert!(matches!(
            err,
            LangError::ArityMismatch {
                expected: 1,
                found: 2,
                ..
            }
        ));
    }

    #[test]
    fn ground_is_idempotent() {
        let p = ground_text("e(a,b).\nr(X,Y) :- e(X,Y), not s(X).\ns(b).").unwrap();
        let again = Program::parse(&p.to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn tuples_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_tuple(&["a", "b"], 2, |t| seen.push(t.join("")));
        assert_eq!(seen, vec!["aa", "ab", "ba", "bb"]);
        let mut n = 0;
        for_each_tuple(&[], 2, |_| n += 1);
        assert_eq!(n, 0);
        for_each_tuple(&[], 0, |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn grounding_guard() {
        let consts: Vec<String> = (0..50).map(|i| format!("c{i}")).collect();
        let facts: String = consts.iter().map(|c| format!("d({c}).\n")).collect();
        let text = format!("{facts}big(A,B,C,D) :- d(A), d(B), d(C), d(D).");
        let err = ground_text(&text).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
