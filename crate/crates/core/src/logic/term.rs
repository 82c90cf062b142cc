//! Terms, atoms, definite clauses and programs.
//!
//! Variables are numbered per clause. Display names them `A`, `B`, ... by
//! index, so a canonical clause prints the same way it is stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::symbol::Sym;

/// Body-only variable count above which canonicalization stops trying every
/// permutation and falls back to a first-occurrence naming.
const MAX_PERMUTED_VARS: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 26 {
            write!(f, "{}", (b'A' + self.0 as u8) as char)
        } else {
            write!(f, "V{}", self.0)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    Const(Sym),
    Compound(Sym, Arc<[Term]>),
}

pub(crate) const LIST_CONS: &str = ".";
pub(crate) const LIST_NIL: &str = "[]";

impl Term {
    pub fn var(index: u32) -> Term {
        Term::Var(Var(index))
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Sym::new(name))
    }

    pub fn compound(functor: &str, args: Vec<Term>) -> Term {
        assert!(!args.is_empty(), "compound terms need at least one argument");
        Term::Compound(Sym::new(functor), args.into())
    }

    /// Builds a proper list, optionally with an open tail.
    pub fn list(items: Vec<Term>, tail: Option<Term>) -> Term {
        let mut out = tail.unwrap_or_else(|| Term::constant(LIST_NIL));
        let cons = Sym::new(LIST_CONS);
        for item in items.into_iter().rev() {
            out = Term::Compound(cons, vec![item, out].into());
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v)
                }
            }
            Term::Const(_) => {}
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::Const(_) => false,
            Term::Compound(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::Const(_) => self.clone(),
            Term::Compound(g, args) => Term::Compound(*g, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(v.0),
            Term::Const(_) => None,
            Term::Compound(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    fn as_list(&self) -> Option<(Vec<&Term>, Option<&Term>)> {
        let mut items = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Compound(f, args) if f.as_str() == LIST_CONS && args.len() == 2 => {
                    items.push(&args[0]);
                    cur = &args[1];
                }
                Term::Const(c) if c.as_str() == LIST_NIL => return Some((items, None)),
                _ if items.is_empty() => return None,
                other => return Some((items, Some(other))),
            }
        }
    }
}

fn is_plain_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        Some(c) if c.is_ascii_digit() || c == '-' => {
            let digits = if c == '-' { &s[1..] } else { s };
            !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
        }
        _ => s == LIST_NIL,
    }
}

pub(crate) fn write_symbol(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    if is_plain_symbol(s) {
        f.write_str(s)
    } else {
        f.write_char('\'')?;
        for c in s.chars() {
            match c {
                '\'' => f.write_str("\\'")?,
                '\\' => f.write_str("\\\\")?,
                '\n' => f.write_str("\\n")?,
                c => f.write_char(c)?,
            }
        }
        f.write_char('\'')
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((items, tail)) = self.as_list() {
            f.write_str("[")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{item}")?;
            }
            if let Some(t) = tail {
                write!(f, "|{t}")?;
            }
            return f.write_str("]");
        }
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write_symbol(f, c.as_str()),
            Term::Compound(g, args) => {
                write_symbol(f, g.as_str())?;
                write!(f, "({})", args.iter().join(","))
            }
        }
    }
}

/// Predicate symbol together with its arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PredSig {
    pub name: Sym,
    pub arity: usize,
}

impl PredSig {
    pub fn new(name: &str, arity: usize) -> PredSig {
        PredSig { name: Sym::new(name), arity }
    }
}

impl fmt::Display for PredSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom { pred: Sym::new(pred), args }
    }

    pub fn sig(&self) -> PredSig {
        PredSig { name: self.pred, arity: self.args.len() }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Atom {
        Atom { pred: self.pred, args: self.args.iter().map(|a| a.map_vars(f)).collect() }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbol(f, self.pred.as_str())?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.iter().join(","))?;
        }
        Ok(())
    }
}

/// A definite clause: one head, an ordered body.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Clause {
        Clause { head, body }
    }

    pub fn fact(head: Atom) -> Clause {
        Clause { head, body: Vec::new() }
    }

    /// Total literal count, head included.
    pub fn size(&self) -> usize {
        1 + self.body.len()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.head.collect_vars(&mut out);
        self.body.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }

    /// One past the highest variable index, i.e. the slot count needed to
    /// rename this clause apart.
    pub fn var_span(&self) -> u32 {
        std::iter::once(&self.head)
            .chain(&self.body)
            .flat_map(|a| a.args.iter())
            .filter_map(Term::max_var)
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Clause {
        Clause { head: self.head.map_vars(f), body: self.body.iter().map(|a| a.map_vars(f)).collect() }
    }

    /// Alpha-canonical form: head variables numbered by first occurrence,
    /// body treated as a set, body-only variables named to give the
    /// lexicographically least sorted body.
    pub fn canonical(&self) -> Clause {
        let mut mapping: HashMap<Var, u32> = HashMap::new();
        let mut head_vars = Vec::new();
        self.head.collect_vars(&mut head_vars);
        for v in &head_vars {
            let n = mapping.len() as u32;
            mapping.entry(*v).or_insert(n);
        }
        let head_count = mapping.len() as u32;
        let mut all = Vec::new();
        self.body.iter().for_each(|a| a.collect_vars(&mut all));
        let body_only: Vec<Var> = all.into_iter().filter(|v| !mapping.contains_key(v)).collect();

        let head = self.head.map_vars(&mut |v| Term::Var(Var(mapping[&v])));
        let rename_body = |order: &[Var]| -> Vec<Atom> {
            let mut local = mapping.clone();
            for (i, v) in order.iter().enumerate() {
                local.insert(*v, head_count + i as u32);
            }
            let mut body: Vec<Atom> =
                self.body.iter().map(|a| a.map_vars(&mut |v| Term::Var(Var(local[&v])))).collect();
            body.sort();
            body.dedup();
            body
        };

        let body = if body_only.len() <= 1 {
            rename_body(&body_only)
        } else if body_only.len() <= MAX_PERMUTED_VARS {
            body_only
                .iter()
                .copied()
                .permutations(body_only.len())
                .map(|perm| rename_body(&perm))
                .min()
                .expect("at least one permutation")
        } else {
            // Order body-only variables by the variable-blind shape of the
            // first literal they occur in, then by first occurrence.
            let blind = |a: &Atom| {
                a.map_vars(&mut |v| {
                    if mapping.contains_key(&v) {
                        Term::Var(Var(mapping[&v]))
                    } else {
                        Term::Var(Var(u32::MAX))
                    }
                })
            };
            let mut keyed: Vec<(Atom, usize, Var)> = body_only
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let first = self
                        .body
                        .iter()
                        .filter(|a| a.args.iter().any(|t| t.contains_var(*v)))
                        .map(blind)
                        .min()
                        .expect("body var occurs in body");
                    (first, i, *v)
                })
                .collect();
            keyed.sort();
            let order: Vec<Var> = keyed.into_iter().map(|(_, _, v)| v).collect();
            rename_body(&order)
        };
        Clause { head, body }
    }

    pub fn is_alpha_equivalent(&self, other: &Clause) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.body
            .len()
            .cmp(&other.body.len())
            .then_with(|| self.head.cmp(&other.head))
            .then_with(|| self.body.cmp(&other.body))
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            write!(f, ":-{}", self.body.iter().join(","))?;
        }
        f.write_str(".")
    }
}

/// A definite program. Hypotheses are programs in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Program {
    clauses: Vec<Clause>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    /// Keeps clause order, dropping later alpha-equivalent duplicates.
    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> Program {
        let mut seen = HashSet::new();
        let clauses = clauses.into_iter().filter(|c| seen.insert(c.canonical())).collect();
        Program { clauses }
    }

    /// Wraps clauses that are already canonical and sorted. Used by the
    /// enumerator, which produces them in that form.
    pub(crate) fn from_canonical_unchecked(clauses: Vec<Clause>) -> Program {
        Program { clauses }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Sum of clause sizes.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::size).sum()
    }

    pub fn push(&mut self, clause: Clause) -> bool {
        let canon = clause.canonical();
        if self.clauses.iter().any(|c| c.canonical() == canon) {
            return false;
        }
        self.clauses.push(clause);
        true
    }

    /// Canonical form: every clause canonical, clauses sorted, duplicates
    /// removed. Alpha-equivalent programs share one canonical form.
    pub fn canonical(&self) -> Program {
        let mut clauses: Vec<Clause> = self.clauses.iter().map(Clause::canonical).collect();
        clauses.sort();
        clauses.dedup();
        Program { clauses }
    }

    pub fn head_preds(&self) -> Vec<PredSig> {
        let mut out: Vec<PredSig> = self.clauses.iter().map(|c| c.head.sig()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn body_preds(&self) -> Vec<PredSig> {
        let mut out: Vec<PredSig> = self.clauses.iter().flat_map(|c| c.body.iter().map(Atom::sig)).collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.clauses.iter().join(" "))
    }
}

impl FromIterator<Clause> for Program {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Self {
        Program::from_clauses(iter)
    }
}

/// A variable-to-term mapping.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        t.map_vars(&mut |v| self.bindings.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom { pred: a.pred, args: a.args.iter().map(|t| self.apply(t)).collect() }
    }

    // Follows bindings until an unbound variable or non-variable term.
    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.bindings.get(v) {
                Some(next) => t = next,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: Var, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(w) => *w == v,
            Term::Const(_) => false,
            Term::Compound(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::Compound(f, args) => Term::Compound(*f, args.iter().map(|a| self.resolve(a)).collect()),
            other => other.clone(),
        }
    }
}

/// Most general unifier of two atoms, with occurs check. `None` when the
/// predicates or arities differ or no unifier exists.
pub fn unify(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    let mut s = Substitution::new();
    let mut work: Vec<(Term, Term)> = a.args.iter().cloned().zip(b.args.iter().cloned()).collect();
    while let Some((x, y)) = work.pop() {
        let x = s.walk(&x).clone();
        let y = s.walk(&y).clone();
        match (x, y) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if s.occurs(v, &t) {
                    return None;
                }
                s.bindings.insert(v, t);
            }
            (Term::Const(c), Term::Const(d)) => {
                if c != d {
                    return None;
                }
            }
            (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                work.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            _ => return None,
        }
    }
    // Fully resolve so the result is idempotent.
    let resolved = s.bindings.keys().map(|v| (*v, s.resolve(&Term::Var(*v)))).collect();
    Some(Substitution { bindings: resolved })
}
