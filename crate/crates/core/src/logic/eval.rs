//! Bounded SLD resolution under the closed-world assumption.
//!
//! The prover is a depth-first machine with an explicit choice-point stack:
//! clauses are tried in stored order, body literals left to right. Two
//! limits bound the search. Hitting either one turns an otherwise failed
//! search into [`Entailment::ResourceExhausted`] rather than
//! [`Entailment::Disproved`], so callers can tell genuine finite failure
//! from a search that was cut short.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use thiserror::Error;

use super::term::{Atom, Clause, PredSig, Program, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvalLimits {
    pub max_resolution_steps: u64,
    pub max_derivation_depth: u32,
}

impl EvalLimits {
    /// # Panics
    /// If either limit is zero.
    pub fn new(max_resolution_steps: u64, max_derivation_depth: u32) -> EvalLimits {
        assert!(max_resolution_steps >= 1 && max_derivation_depth >= 1, "limits must be >= 1");
        EvalLimits { max_resolution_steps, max_derivation_depth }
    }
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits { max_resolution_steps: 100_000, max_derivation_depth: 50 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entailment {
    Proved,
    Disproved,
    ResourceExhausted,
}

#[derive(Clone, Debug)]
struct Entry {
    clause: Clause,
    span: u32,
}

impl Entry {
    fn new(clause: Clause) -> Entry {
        let span = clause.var_span();
        Entry { clause, span }
    }
}

/// A program indexed by head predicate, used as background knowledge.
#[derive(Clone, Debug, Default)]
pub struct Database {
    entries: Vec<Entry>,
    index: HashMap<PredSig, Vec<usize>>,
    seen: HashSet<Clause>,
}

impl Database {
    pub fn new() -> Database {
        Database::default()
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        if !self.seen.insert(clause.canonical()) {
            return false;
        }
        self.index.entry(clause.head.sig()).or_default().push(self.entries.len());
        self.entries.push(Entry::new(clause));
        true
    }

    pub fn extend(&mut self, program: &Program) {
        for c in program.clauses() {
            self.insert(c.clone());
        }
    }

    pub fn defines(&self, sig: PredSig) -> bool {
        self.index.contains_key(&sig)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_program(&self) -> Program {
        Program::from_clauses(self.entries.iter().map(|e| e.clause.clone()))
    }

    fn clauses_for(&self, sig: &PredSig) -> &[usize] {
        self.index.get(sig).map_or(&[], Vec::as_slice)
    }
}

impl From<&Program> for Database {
    fn from(p: &Program) -> Self {
        let mut db = Database::new();
        db.extend(p);
        db
    }
}

/// Goal list, shared between choice points.
struct Goal {
    atom: Atom,
    depth: u32,
    next: Option<Rc<Goal>>,
}

struct Choice {
    goals: Rc<Goal>,
    next_clause: usize,
    trail_len: usize,
    var_len: usize,
}

struct Machine<'a> {
    bk: &'a Database,
    hyp: &'a [Entry],
    hyp_index: &'a HashMap<PredSig, Vec<usize>>,
    bindings: Vec<Option<Term>>,
    trail: Vec<u32>,
    choices: Vec<Choice>,
    steps: u64,
    cutoff: bool,
    limits: EvalLimits,
}

impl<'a> Machine<'a> {
    fn candidate(&self, sig: &PredSig, i: usize) -> Option<&'a Entry> {
        let from_bk = self.bk.clauses_for(sig);
        if i < from_bk.len() {
            return Some(&self.bk.entries[from_bk[i]]);
        }
        let from_hyp = self.hyp_index.get(sig)?;
        from_hyp.get(i - from_bk.len()).map(|&j| &self.hyp[j])
    }

    fn deref(&self, t: &Term) -> Term {
        let mut cur = t.clone();
        while let Term::Var(v) = cur {
            match &self.bindings[v.0 as usize] {
                Some(b) => cur = b.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, v: Var, t: &Term) -> bool {
        match self.deref(t) {
            Term::Var(w) => w == v,
            Term::Const(_) => false,
            Term::Compound(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    fn unify_args(&mut self, xs: &[Term], ys: &[Term]) -> bool {
        let mut work: Vec<(Term, Term)> = xs.iter().cloned().zip(ys.iter().cloned()).collect();
        while let Some((x, y)) = work.pop() {
            match (self.deref(&x), self.deref(&y)) {
                (Term::Var(v), Term::Var(w)) if v == w => {}
                (Term::Var(v), t) | (t, Term::Var(v)) => {
                    if self.occurs(v, &t) {
                        return false;
                    }
                    self.bindings[v.0 as usize] = Some(t);
                    self.trail.push(v.0);
                }
                (Term::Const(c), Term::Const(d)) => {
                    if c != d {
                        return false;
                    }
                }
                (Term::Compound(f, xs), Term::Compound(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return false;
                    }
                    work.extend(xs.iter().cloned().zip(ys.iter().cloned()));
                }
                _ => return false,
            }
        }
        true
    }

    fn undo(&mut self, trail_len: usize, var_len: usize) {
        for v in self.trail.drain(trail_len..) {
            if (v as usize) < var_len {
                self.bindings[v as usize] = None;
            }
        }
        self.bindings.truncate(var_len);
    }

    /// Resolves the first goal against candidates from index `from` on.
    /// `Ok(Some(rest))` is the resolvent, `Ok(None)` means no candidate
    /// unified, `Err(())` means the step budget ran out.
    fn expand(&mut self, goals: &Rc<Goal>, from: usize) -> Result<Option<Option<Rc<Goal>>>, ()> {
        let sig = goals.atom.sig();
        let mut i = from;
        while let Some(entry) = self.candidate(&sig, i) {
            self.steps += 1;
            if self.steps > self.limits.max_resolution_steps {
                return Err(());
            }
            let trail_len = self.trail.len();
            let base = self.bindings.len() as u32;
            self.bindings.resize(base as usize + entry.span as usize, None);
            let mut rename = |v: Var| Term::Var(Var(v.0 + base));
            let head = entry.clause.head.map_vars(&mut rename);
            if self.unify_args(&goals.atom.args, &head.args) {
                self.choices.push(Choice {
                    goals: goals.clone(),
                    next_clause: i + 1,
                    trail_len,
                    var_len: base as usize,
                });
                let mut rest = goals.next.clone();
                for atom in entry.clause.body.iter().rev() {
                    rest = Some(Rc::new(Goal { atom: atom.map_vars(&mut rename), depth: goals.depth + 1, next: rest }));
                }
                return Ok(Some(rest));
            }
            self.undo(trail_len, base as usize);
            i += 1;
        }
        Ok(None)
    }

    fn solve(&mut self, query: &Atom) -> Entailment {
        let mut vars = Vec::new();
        query.collect_vars(&mut vars);
        let span = vars.iter().map(|v| v.0 + 1).max().unwrap_or(0);
        self.bindings.resize(span as usize, None);
        let mut current = Some(Rc::new(Goal { atom: query.clone(), depth: 0, next: None }));
        let mut from = 0;
        loop {
            let Some(goals) = current.take() else { return Entailment::Proved };
            let step = if goals.depth >= self.limits.max_derivation_depth {
                self.cutoff = true;
                Ok(None)
            } else {
                self.expand(&goals, from)
            };
            match step {
                Err(()) => return Entailment::ResourceExhausted,
                Ok(Some(rest)) => {
                    current = rest;
                    from = 0;
                    if current.is_none() {
                        return Entailment::Proved;
                    }
                }
                Ok(None) => {
                    let Some(choice) = self.choices.pop() else {
                        return if self.cutoff { Entailment::ResourceExhausted } else { Entailment::Disproved };
                    };
                    self.undo(choice.trail_len, choice.var_len);
                    current = Some(choice.goals);
                    from = choice.next_clause;
                }
            }
        }
    }
}

/// A hypothesis prepared for repeated queries against one database.
pub struct Prover<'a> {
    bk: &'a Database,
    hyp: Vec<Entry>,
    hyp_index: HashMap<PredSig, Vec<usize>>,
    limits: EvalLimits,
}

impl<'a> Prover<'a> {
    pub fn new(bk: &'a Database, hypothesis: &Program, limits: EvalLimits) -> Prover<'a> {
        let hyp: Vec<Entry> = hypothesis.clauses().iter().cloned().map(Entry::new).collect();
        let mut hyp_index: HashMap<PredSig, Vec<usize>> = HashMap::new();
        for (i, e) in hyp.iter().enumerate() {
            hyp_index.entry(e.clause.head.sig()).or_default().push(i);
        }
        Prover { bk, hyp, hyp_index, limits }
    }

    pub fn entails(&self, query: &Atom) -> Entailment {
        let mut m = Machine {
            bk: self.bk,
            hyp: &self.hyp,
            hyp_index: &self.hyp_index,
            bindings: Vec::new(),
            trail: Vec::new(),
            choices: Vec::new(),
            steps: 0,
            cutoff: false,
            limits: self.limits,
        };
        m.solve(query)
    }
}

/// Decides whether `bk ∪ hypothesis` proves `query`.
pub fn entails(bk: &Database, hypothesis: &Program, query: &Atom, limits: EvalLimits) -> Entailment {
    Prover::new(bk, hypothesis, limits).entails(query)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("no positive examples")]
    NoPositives,
    #[error("example {0} is not ground")]
    NonGround(Atom),
    #[error("{0} is both a positive and a negative example")]
    Overlap(Atom),
    #[error("example {found} does not use the target predicate {expected}")]
    WrongPredicate { expected: PredSig, found: Atom },
}

/// Ground positive and negative examples of one target predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleSet {
    pos: Vec<Atom>,
    neg: Vec<Atom>,
}

impl ExampleSet {
    pub fn new(pos: Vec<Atom>, neg: Vec<Atom>) -> Result<ExampleSet, ExampleError> {
        let first = pos.first().ok_or(ExampleError::NoPositives)?;
        let target = first.sig();
        for a in pos.iter().chain(&neg) {
            if !a.is_ground() {
                return Err(ExampleError::NonGround(a.clone()));
            }
            if a.sig() != target {
                return Err(ExampleError::WrongPredicate { expected: target, found: a.clone() });
            }
        }
        let positives: HashSet<&Atom> = pos.iter().collect();
        if let Some(a) = neg.iter().find(|a| positives.contains(a)) {
            return Err(ExampleError::Overlap(a.clone()));
        }
        Ok(ExampleSet { pos, neg })
    }

    pub fn target(&self) -> PredSig {
        self.pos[0].sig()
    }

    pub fn pos(&self) -> &[Atom] {
        &self.pos
    }

    pub fn neg(&self) -> &[Atom] {
        &self.neg
    }
}

/// Per-example test result for one hypothesis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    /// Indices into the positive examples that were proved.
    pub pos_covered: Vec<usize>,
    /// Indices into the negative examples that were proved.
    pub neg_covered: Vec<usize>,
    /// True if any query hit a limit.
    pub exhausted: bool,
}

impl Outcome {
    /// Complete, consistent and decided on every example.
    pub fn is_solution(&self, examples: &ExampleSet) -> bool {
        !self.exhausted && self.neg_covered.is_empty() && self.pos_covered.len() == examples.pos().len()
    }

    pub fn is_consistent(&self) -> bool {
        self.neg_covered.is_empty()
    }
}

/// Tests a hypothesis against every example. Negatives are skipped once
/// one is covered, since a single covered negative already fixes what the
/// learner can derive.
pub fn test_hypothesis(bk: &Database, hypothesis: &Program, examples: &ExampleSet, limits: EvalLimits) -> Outcome {
    let prover = Prover::new(bk, hypothesis, limits);
    let mut out = Outcome::default();
    for (i, e) in examples.pos().iter().enumerate() {
        match prover.entails(e) {
            Entailment::Proved => out.pos_covered.push(i),
            Entailment::Disproved => {}
            Entailment::ResourceExhausted => out.exhausted = true,
        }
    }
    for (i, e) in examples.neg().iter().enumerate() {
        match prover.entails(e) {
            Entailment::Proved => {
                out.neg_covered.push(i);
                break;
            }
            Entailment::Disproved => {}
            Entailment::ResourceExhausted => out.exhausted = true,
        }
    }
    out
}
