//! θ-subsumption and the generality relations built on it.

use crate::logic::{Atom, Clause, Program, Term, Var};

type Bindings = Vec<(Var, Term)>;

fn lookup(b: &Bindings, v: Var) -> Option<&Term> {
    b.iter().find(|(w, _)| *w == v).map(|(_, t)| t)
}

/// One-way matching: binds variables of `pattern` only; variables of
/// `target` behave as constants.
fn match_term(pattern: &Term, target: &Term, b: &mut Bindings) -> bool {
    match (pattern, target) {
        (Term::Var(v), t) => match lookup(b, *v) {
            Some(bound) => bound == t,
            None => {
                b.push((*v, t.clone()));
                true
            }
        },
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::Compound(f, xs), Term::Compound(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| match_term(x, y, b))
        }
        _ => false,
    }
}

fn match_atom(pattern: &Atom, target: &Atom, b: &mut Bindings) -> bool {
    pattern.pred == target.pred
        && pattern.args.len() == target.args.len()
        && pattern.args.iter().zip(&target.args).all(|(x, y)| match_term(x, y, b))
}

fn match_body(pattern: &[Atom], target: &[Atom], b: &mut Bindings) -> bool {
    let Some((first, rest)) = pattern.split_first() else { return true };
    for t in target {
        let mark = b.len();
        if match_atom(first, t, b) && match_body(rest, target, b) {
            return true;
        }
        b.truncate(mark);
    }
    false
}

/// Bit per predicate name, for a cheap necessary condition before matching.
fn signature(atoms: &[Atom]) -> u64 {
    atoms.iter().fold(0, |acc, a| acc | 1 << (a.pred.id() % 64))
}

/// True iff some θ maps `c1`'s head onto `c2`'s head and every body
/// literal of `c1` into the body of `c2`.
pub fn theta_subsumes(c1: &Clause, c2: &Clause) -> bool {
    if c1.head.pred != c2.head.pred || signature(&c1.body) & !signature(&c2.body) != 0 {
        return false;
    }
    let mut b = Bindings::new();
    match_atom(&c1.head, &c2.head, &mut b) && match_body(&c1.body, &c2.body, &mut b)
}

/// Every clause of `h2` is subsumed by some clause of `h1`: `h2` is at
/// most as general as `h1`.
pub fn is_specialisation(h1: &Program, h2: &Program) -> bool {
    h2.clauses().iter().all(|c2| h1.clauses().iter().any(|c1| theta_subsumes(c1, c2)))
}

/// Every clause of `h1` is subsumed by some clause of `h2`: `h2` is at
/// least as general as `h1`.
pub fn is_generalisation(h1: &Program, h2: &Program) -> bool {
    h1.clauses().iter().all(|c1| h2.clauses().iter().any(|c2| theta_subsumes(c2, c1)))
}

/// No head predicate of `h` occurs in any body of `h`.
pub fn is_separable(h: &Program) -> bool {
    let heads = h.head_preds();
    h.clauses().iter().flat_map(|c| &c.body).all(|a| !heads.contains(&a.sig()))
}
