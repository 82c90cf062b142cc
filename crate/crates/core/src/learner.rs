//! The single-task generate, test and constrain loop.

use std::time::Instant;

use thiserror::Error;

use crate::constraints::{derive_constraints, ConstraintKind, ConstraintStore};
use crate::logic::{test_hypothesis, Database, EvalLimits, ExampleError, ExampleSet, PredSig, Program};
use crate::space::{CatalogCache, Enumerator, LanguageBias};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error(transparent)]
    Examples(#[from] ExampleError),
    #[error("target {0} is not a declared head predicate")]
    UndeclaredTarget(PredSig),
}

/// One learning problem: examples of a target predicate plus its bias.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    exs: ExampleSet,
    bias: LanguageBias,
}

impl Task {
    pub fn new(exs: ExampleSet, bias: LanguageBias) -> Result<Task, TaskError> {
        let target = exs.target();
        if !bias.head_preds().contains(&target) {
            return Err(TaskError::UndeclaredTarget(target));
        }
        Ok(Task { exs, bias })
    }

    pub fn target(&self) -> PredSig {
        self.exs.target()
    }

    /// The target predicate name, used as the task's identifier.
    pub fn name(&self) -> &'static str {
        self.target().name.as_str()
    }

    pub fn examples(&self) -> &ExampleSet {
        &self.exs
    }

    pub fn bias(&self) -> &LanguageBias {
        &self.bias
    }

    pub fn bias_mut(&mut self) -> &mut LanguageBias {
        &mut self.bias
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LearnEventKind {
    Tested { hypothesis: Program, pos_covered: usize, neg_covered: usize },
    ConstraintAdded { kind: ConstraintKind, pattern: Program },
}

#[derive(Clone, Debug)]
pub struct LearnEvent {
    pub at: Instant,
    pub kind: LearnEventKind,
}

/// Shared search settings plus caches that outlive a single call.
#[derive(Debug, Default)]
pub struct SearchCtx {
    pub limits: EvalLimits,
    /// Checked between candidate tests.
    pub deadline: Option<Instant>,
    /// Collect per-candidate events into [`SearchCtx::take_events`].
    pub record: bool,
    catalogs: CatalogCache,
    events: Vec<LearnEvent>,
}

impl SearchCtx {
    pub fn new(limits: EvalLimits) -> SearchCtx {
        SearchCtx { limits, ..SearchCtx::default() }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> SearchCtx {
        self.deadline = deadline;
        self
    }

    pub fn recording(mut self, record: bool) -> SearchCtx {
        self.record = record;
        self
    }

    pub fn take_events(&mut self) -> Vec<LearnEvent> {
        std::mem::take(&mut self.events)
    }

    pub fn deadline_passed(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn emit(&mut self, kind: LearnEventKind) {
        if self.record {
            self.events.push(LearnEvent { at: Instant::now(), kind });
        }
    }

    pub fn enumerator(&self, bias: &LanguageBias, head: PredSig, size: usize) -> Enumerator {
        Enumerator::new(self.catalogs.get(bias, head), bias.max_clauses(), size)
    }
}

/// Best consistent hypothesis seen so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partial {
    pub hypothesis: Program,
    pub pos_covered: usize,
}

impl Partial {
    /// More positives wins, then fewer literals; earlier wins ties.
    fn beats(&self, other: &Partial) -> bool {
        (self.pos_covered, std::cmp::Reverse(self.hypothesis.size()))
            > (other.pos_covered, std::cmp::Reverse(other.hypothesis.size()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LearnResult {
    pub solution: Option<Program>,
    pub partial_best: Option<Partial>,
    pub tested_count: u64,
    pub deadline_hit: bool,
}

impl LearnResult {
    fn offer(&mut self, p: Partial) {
        if self.partial_best.as_ref().is_none_or(|cur| p.beats(cur)) {
            self.partial_best = Some(p);
        }
    }

    fn absorb(&mut self, other: LearnResult) {
        self.tested_count += other.tested_count;
        self.deadline_hit |= other.deadline_hit;
        if let Some(p) = other.partial_best {
            self.offer(p);
        }
        self.solution = other.solution;
    }
}

/// Searches hypotheses of exactly `size` literals, pruning with and adding
/// to `store`.
pub fn fixed_size_popper(
    task: &Task,
    bk: &Database,
    size: usize,
    store: &mut ConstraintStore,
    ctx: &mut SearchCtx,
) -> LearnResult {
    let mut result = LearnResult::default();
    if size < 2 {
        return result;
    }
    let mut stream = ctx.enumerator(task.bias(), task.target(), size);
    loop {
        if ctx.deadline_passed() {
            result.deadline_hit = true;
            return result;
        }
        let Some(h) = stream.next_accepted(|h| store.prune(h)) else { return result };
        let outcome = test_hypothesis(bk, &h, task.examples(), ctx.limits);
        result.tested_count += 1;
        ctx.emit(LearnEventKind::Tested {
            hypothesis: h.clone(),
            pos_covered: outcome.pos_covered.len(),
            neg_covered: outcome.neg_covered.len(),
        });
        if outcome.is_solution(task.examples()) {
            result.offer(Partial { hypothesis: h.clone(), pos_covered: outcome.pos_covered.len() });
            result.solution = Some(h);
            return result;
        }
        if outcome.is_consistent() && !outcome.exhausted && !outcome.pos_covered.is_empty() {
            result.offer(Partial { hypothesis: h.clone(), pos_covered: outcome.pos_covered.len() });
        }
        for c in derive_constraints(&h, &outcome, task.examples()) {
            let (kind, pattern) = (c.kind, c.pattern.clone());
            if store.add(c) {
                ctx.emit(LearnEventKind::ConstraintAdded { kind, pattern });
            }
        }
    }
}

/// Searches sizes `2..=max_size` in order and returns the first solution,
/// which is therefore of minimal size for this BK and store.
pub fn popper(
    task: &Task,
    bk: &Database,
    max_size: usize,
    store: &mut ConstraintStore,
    ctx: &mut SearchCtx,
) -> LearnResult {
    let mut result = LearnResult::default();
    for size in 2..=max_size {
        result.absorb(fixed_size_popper(task, bk, size, store, ctx));
        if result.solution.is_some() || result.deadline_hit {
            break;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_atom, parse_program, Atom};

    fn kin_task() -> (Task, Database) {
        let bk =
            Database::from(&parse_program("isFather(john,dan). isFather(paul,john). isWife(alice,paul).").unwrap());
        let people = ["john", "dan", "paul", "alice"];
        let pos = vec![parse_atom("isGrandfather(paul,dan)").unwrap()];
        let neg: Vec<Atom> = people
            .iter()
            .flat_map(|a| people.iter().map(move |b| parse_atom(&format!("isGrandfather({a},{b})")).unwrap()))
            .filter(|a| !pos.contains(a))
            .collect();
        let bias = LanguageBias::new(
            vec![PredSig::new("isGrandfather", 2)],
            vec![PredSig::new("isFather", 2), PredSig::new("isWife", 2)],
            3,
            2,
            1,
        )
        .unwrap();
        (Task::new(ExampleSet::new(pos, neg).unwrap(), bias).unwrap(), bk)
    }

    #[test]
    fn learns_grandfather_at_size_three() {
        let (task, bk) = kin_task();
        let mut ctx = SearchCtx::default();
        let r = popper(&task, &bk, 3, &mut ConstraintStore::new(), &mut ctx);
        assert_eq!(r.solution.unwrap().to_string(), "isGrandfather(A,B):-isFather(A,C),isFather(C,B).");
        let r = popper(&task, &bk, 2, &mut ConstraintStore::new(), &mut ctx);
        assert!(r.solution.is_none());
        assert!(r.tested_count > 0);
    }

    #[test]
    fn a_prefilled_store_changes_nothing_but_the_work() {
        let (task, bk) = kin_task();
        let mut ctx = SearchCtx::default();
        let mut store = ConstraintStore::new();
        let first = fixed_size_popper(&task, &bk, 2, &mut store, &mut ctx);
        assert!(first.solution.is_none());
        let fresh = fixed_size_popper(&task, &bk, 3, &mut ConstraintStore::new(), &mut ctx);
        let reused = fixed_size_popper(&task, &bk, 3, &mut store, &mut ctx);
        assert_eq!(fresh.solution, reused.solution);
        assert!(reused.tested_count <= fresh.tested_count);
    }

    #[test]
    fn tested_hypotheses_are_banished() {
        let (task, bk) = kin_task();
        let mut ctx = SearchCtx::default().recording(true);
        let mut store = ConstraintStore::new();
        fixed_size_popper(&task, &bk, 2, &mut store, &mut ctx);
        let tested: Vec<Program> = ctx
            .take_events()
            .into_iter()
            .filter_map(|e| match e.kind {
                LearnEventKind::Tested { hypothesis, .. } => Some(hypothesis),
                _ => None,
            })
            .collect();
        assert!(!tested.is_empty());
        assert!(tested.iter().all(|h| store.prune(h)));
        let again = fixed_size_popper(&task, &bk, 2, &mut store, &mut ctx);
        assert_eq!(again.tested_count, 0);
    }

    #[test]
    fn expired_deadline_stops_before_testing() {
        let (task, bk) = kin_task();
        let mut ctx = SearchCtx::default().with_deadline(Some(Instant::now()));
        let r = popper(&task, &bk, 3, &mut ConstraintStore::new(), &mut ctx);
        assert!(r.deadline_hit);
        assert_eq!(r.tested_count, 0);
    }

    #[test]
    fn undeclared_target_is_rejected() {
        let (task, _) = kin_task();
        let bias =
            LanguageBias::new(vec![PredSig::new("other", 2)], vec![PredSig::new("isFather", 2)], 3, 2, 1).unwrap();
        assert!(matches!(Task::new(task.examples().clone(), bias), Err(TaskError::UndeclaredTarget(_))));
    }
}
