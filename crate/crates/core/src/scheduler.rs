//! Multi-task strategies: how tasks, sizes and solved programs are
//! interleaved across single-task searches.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constraints::ConstraintStore;
use crate::learner::{fixed_size_popper, popper, LearnEventKind, LearnResult, SearchCtx, Task};
use crate::logic::{Database, EvalLimits, PredSig, Program};
use crate::trace::{EventKind, RunTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyKind {
    Naive,
    Id,
    ResetId,
    ResetBfs,
    PrioEx,
    PrioCons,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 6] = [
        StrategyKind::Naive,
        StrategyKind::Id,
        StrategyKind::ResetId,
        StrategyKind::ResetBfs,
        StrategyKind::PrioEx,
        StrategyKind::PrioCons,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Naive => "naive",
            StrategyKind::Id => "id",
            StrategyKind::ResetId => "reset-id",
            StrategyKind::ResetBfs => "reset-bfs",
            StrategyKind::PrioEx => "prio-ex",
            StrategyKind::PrioCons => "prio-cons",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy {0:?}")]
pub struct UnknownStrategy(pub String);

impl FromStr for StrategyKind {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownStrategy(s.to_owned()))
    }
}

#[derive(Clone, Debug)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    pub preserve: bool,
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub limits: EvalLimits,
    /// Largest size searched. Defaults to the largest size any task's bias
    /// admits.
    pub max_size: Option<usize>,
    /// Shuffle the task order with `seed` before running.
    pub shuffle: bool,
    /// Priority strategies drop a task whose step found no partial
    /// solution, instead of re-queueing it with priority zero.
    pub strict_prio: bool,
    /// Record per-candidate and per-constraint trace events.
    pub record_candidates: bool,
}

impl StrategyConfig {
    pub fn new(kind: StrategyKind) -> StrategyConfig {
        StrategyConfig {
            kind,
            preserve: false,
            timeout: None,
            seed: 0,
            limits: EvalLimits::default(),
            max_size: None,
            shuffle: true,
            strict_prio: false,
            record_candidates: false,
        }
    }

    pub fn preserve(mut self, on: bool) -> Self {
        self.preserve = on;
        self
    }

    pub fn timeout(mut self, t: Duration) -> Self {
        self.timeout = Some(t);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn max_size(mut self, size: usize) -> Self {
        self.max_size = Some(size);
        self
    }

    pub fn shuffle(mut self, on: bool) -> Self {
        self.shuffle = on;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("duplicate task {0}")]
    DuplicateTask(PredSig),
    #[error("{0} is already defined in the background knowledge")]
    NameCollision(PredSig),
}

/// Tasks sharing one background knowledge program.
#[derive(Clone, Debug)]
pub struct MultiTaskProblem {
    tasks: Vec<Task>,
    bk: Program,
}

impl MultiTaskProblem {
    pub fn new(tasks: Vec<Task>, bk: Program) -> Result<MultiTaskProblem, ProblemError> {
        let mut seen = HashSet::new();
        let db = Database::from(&bk);
        for t in &tasks {
            if !seen.insert(t.target()) {
                return Err(ProblemError::DuplicateTask(t.target()));
            }
            if db.defines(t.target()) {
                return Err(ProblemError::NameCollision(t.target()));
            }
        }
        Ok(MultiTaskProblem { tasks, bk })
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn bk(&self) -> &Program {
        &self.bk
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedTask {
    pub program: Program,
    /// Literal count of the program.
    pub literals: usize,
    /// The size bound in force when it was found: maxSize for the
    /// iterative-deepening strategies, the exact size otherwise.
    pub search_size: usize,
    pub elapsed: Duration,
}

pub type SolutionMap = BTreeMap<String, SolvedTask>;

#[derive(Clone, Debug, Default)]
pub struct RunOutcome {
    pub solutions: SolutionMap,
    pub trace: RunTrace,
    pub tested: BTreeMap<String, u64>,
    pub timed_out: bool,
    /// Background knowledge at the end of the run, solutions included.
    pub final_bk: Program,
}

impl RunOutcome {
    pub fn tested_count(&self) -> u64 {
        self.tested.values().sum()
    }
}

/// Adds a solution to the BK and exposes its head predicate to every
/// pending task.
pub fn augment_bk(bk: &mut Database, sol: &Program, pending: &mut [&mut Task]) -> Result<(), ProblemError> {
    for head in sol.head_preds() {
        if bk.defines(head) {
            return Err(ProblemError::NameCollision(head));
        }
    }
    bk.extend(sol);
    for head in sol.head_preds() {
        for t in pending.iter_mut() {
            if t.target() != head {
                t.bias_mut().add_body_pred(head);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct QueueEntry {
    task: usize,
    size: usize,
    priority: f64,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    /// Max-heap order: smaller size first, then higher priority, then
    /// lower task index.
    fn cmp(&self, other: &Self) -> Ordering {
        other.size.cmp(&self.size).then(self.priority.total_cmp(&other.priority)).then(other.task.cmp(&self.task))
    }
}

struct Runner {
    cfg: StrategyConfig,
    tasks: Vec<Task>,
    /// Indices of unsolved tasks in scheduling order.
    pending: Vec<usize>,
    bk: Database,
    stores: Vec<ConstraintStore>,
    best_cover: Vec<f64>,
    ctx: SearchCtx,
    start: Instant,
    cap: usize,
    out: RunOutcome,
}

impl Runner {
    fn new(problem: &MultiTaskProblem, cfg: &StrategyConfig) -> Runner {
        let start = Instant::now();
        let tasks = problem.tasks.clone();
        let mut pending: Vec<usize> = (0..tasks.len()).collect();
        if cfg.shuffle {
            pending.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed));
        }
        let cap = cfg.max_size.unwrap_or_else(|| tasks.iter().map(|t| t.bias().max_size()).max().unwrap_or(0));
        let ctx =
            SearchCtx::new(cfg.limits).with_deadline(cfg.timeout.map(|t| start + t)).recording(cfg.record_candidates);
        let out =
            RunOutcome { tested: tasks.iter().map(|t| (t.name().to_owned(), 0)).collect(), ..RunOutcome::default() };
        Runner {
            cfg: cfg.clone(),
            stores: vec![ConstraintStore::new(); tasks.len()],
            best_cover: vec![0.0; tasks.len()],
            bk: Database::from(problem.bk()),
            tasks,
            pending,
            ctx,
            start,
            cap,
            out,
        }
    }

    fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    fn event(&mut self, kind: EventKind, task: Option<usize>, size: usize, detail: impl Into<String>) {
        let name = task.map_or("", |i| self.tasks[i].name());
        let at = self.elapsed();
        self.out.trace.push(at, kind, name, size, detail);
    }

    fn absorb(&mut self, i: usize, size: usize, r: &LearnResult) {
        *self.out.tested.get_mut(self.tasks[i].name()).unwrap() += r.tested_count;
        if let Some(p) = &r.partial_best {
            let cover = p.pos_covered as f64 / self.tasks[i].examples().pos().len() as f64;
            self.best_cover[i] = self.best_cover[i].max(cover);
        }
        for e in self.ctx.take_events() {
            let at = e.at.saturating_duration_since(self.start);
            let name = self.tasks[i].name();
            match e.kind {
                LearnEventKind::Tested { hypothesis, pos_covered, neg_covered } => self.out.trace.push(
                    at,
                    EventKind::Tested,
                    name,
                    hypothesis.size(),
                    format!("{pos_covered}/{neg_covered}\t{hypothesis}"),
                ),
                LearnEventKind::ConstraintAdded { kind, pattern } => self.out.trace.push(
                    at,
                    EventKind::ConstraintAdded,
                    name,
                    pattern.size(),
                    format!("{kind}\t{pattern}"),
                ),
            }
        }
        if r.deadline_hit && !self.out.timed_out {
            self.out.timed_out = true;
            self.event(EventKind::Deadline, Some(i), size, "");
        }
    }

    /// Store to search with: the task's persistent one when preserving,
    /// otherwise a fresh one.
    fn run_search(&mut self, i: usize, size: usize, exact: bool, keep_store: bool) -> LearnResult {
        let mut fresh = ConstraintStore::new();
        let store = if keep_store { &mut self.stores[i] } else { &mut fresh };
        let r = if exact {
            fixed_size_popper(&self.tasks[i], &self.bk, size, store, &mut self.ctx)
        } else {
            popper(&self.tasks[i], &self.bk, size, store, &mut self.ctx)
        };
        self.absorb(i, size, &r);
        r
    }

    fn record_solution(&mut self, i: usize, program: &Program, search_size: usize) {
        let elapsed = self.elapsed();
        self.event(EventKind::Solved, Some(i), search_size, program.to_string());
        self.out.solutions.insert(
            self.tasks[i].name().to_owned(),
            SolvedTask { program: program.clone(), literals: program.size(), search_size, elapsed },
        );
        self.pending.retain(|&j| j != i);
    }

    fn augment(&mut self, i: usize) {
        let program = self.out.solutions[self.tasks[i].name()].program.clone();
        let pending = self.pending.clone();
        let mut refs: Vec<&mut Task> =
            self.tasks.iter_mut().enumerate().filter(|(j, _)| pending.contains(j)).map(|(_, t)| t).collect();
        // Task names are distinct and never BK predicates, so this cannot
        // collide.
        augment_bk(&mut self.bk, &program, &mut refs).expect("solved task collides with BK");
        self.event(EventKind::BkAugmented, Some(i), program.size(), self.tasks[i].target().to_string());
    }

    fn naive(&mut self) {
        for i in self.pending.clone() {
            let r = self.run_search(i, self.cap, false, false);
            if let Some(h) = r.solution {
                self.record_solution(i, &h, h.size());
            }
            if self.out.timed_out {
                return;
            }
        }
    }

    fn iterative_deepening(&mut self, reset: bool) {
        let mut max_size = 1;
        while !self.pending.is_empty() && max_size <= self.cap && !self.out.timed_out {
            self.event(EventKind::Step, None, max_size, "");
            let mut solved = Vec::new();
            for i in self.pending.clone() {
                let r = self.run_search(i, max_size, false, self.cfg.preserve);
                if let Some(h) = r.solution {
                    self.record_solution(i, &h, max_size);
                    solved.push(i);
                }
                if self.out.timed_out {
                    break;
                }
            }
            for &i in &solved {
                self.augment(i);
            }
            max_size = if reset && !solved.is_empty() { 1 } else { max_size + 1 };
        }
    }

    fn reset_bfs(&mut self) {
        let mut size = 1;
        while !self.pending.is_empty() && size <= self.cap && !self.out.timed_out {
            self.event(EventKind::Step, None, size, "");
            let mut solved = None;
            for i in self.pending.clone() {
                let r = self.run_search(i, size, true, self.cfg.preserve);
                if let Some(h) = r.solution {
                    self.record_solution(i, &h, size);
                    solved = Some(i);
                    break;
                }
                if self.out.timed_out {
                    break;
                }
            }
            match solved {
                Some(i) => {
                    self.augment(i);
                    size = 1;
                }
                None => size += 1,
            }
        }
    }

    fn priority(&self, i: usize) -> f64 {
        match self.cfg.kind {
            StrategyKind::PrioCons => self.stores[i].count() as f64,
            _ => self.best_cover[i],
        }
    }

    fn fresh_queue(&self) -> BinaryHeap<QueueEntry> {
        self.pending.iter().map(|&task| QueueEntry { task, size: 1, priority: 1.0 }).collect()
    }

    fn prio(&mut self) {
        let mut queue = self.fresh_queue();
        while let Some(QueueEntry { task: i, size, .. }) = queue.pop() {
            if self.out.timed_out {
                break;
            }
            if size > self.cap {
                continue;
            }
            self.event(EventKind::Step, Some(i), size, "");
            let r = self.run_search(i, size, true, true);
            if let Some(h) = r.solution {
                self.record_solution(i, &h, size);
                self.augment(i);
                if !self.cfg.preserve {
                    self.stores.iter_mut().for_each(|s| *s = ConstraintStore::new());
                }
                queue = self.fresh_queue();
                continue;
            }
            // A task keeps its priority while it has ever had a partial
            // solution; one that never had any drops to zero.
            let had_partial = r.partial_best.is_some() || self.best_cover[i] > 0.0;
            if had_partial || !self.cfg.strict_prio {
                let priority = if had_partial { self.priority(i) } else { 0.0 };
                queue.push(QueueEntry { task: i, size: size + 1, priority });
            }
        }
    }

    fn finish(mut self) -> RunOutcome {
        self.out.final_bk = self.bk.to_program();
        self.out
    }
}

/// Runs one strategy over a problem.
pub fn run(problem: &MultiTaskProblem, cfg: &StrategyConfig) -> RunOutcome {
    let mut runner = Runner::new(problem, cfg);
    match cfg.kind {
        StrategyKind::Naive => runner.naive(),
        StrategyKind::Id => runner.iterative_deepening(false),
        StrategyKind::ResetId => runner.iterative_deepening(true),
        StrategyKind::ResetBfs => runner.reset_bfs(),
        StrategyKind::PrioEx | StrategyKind::PrioCons => runner.prio(),
    }
    runner.finish()
}

pub fn run_naive(p: &MultiTaskProblem, cfg: &StrategyConfig) -> RunOutcome {
    run(p, &StrategyConfig { kind: StrategyKind::Naive, ..cfg.clone() })
}

pub fn run_id(p: &MultiTaskProblem, cfg: &StrategyConfig) -> RunOutcome {
    run(p, &StrategyConfig { kind: StrategyKind::Id, ..cfg.clone() })
}

pub fn run_reset_id(p: &MultiTaskProblem, cfg: &StrategyConfig) -> RunOutcome {
    run(p, &StrategyConfig { kind: StrategyKind::ResetId, ..cfg.clone() })
}

pub fn run_reset_bfs(p: &MultiTaskProblem, cfg: &StrategyConfig) -> RunOutcome {
    run(p, &StrategyConfig { kind: StrategyKind::ResetBfs, ..cfg.clone() })
}

/// `heuristic` must be one of the two priority strategies.
pub fn run_prio(p: &MultiTaskProblem, cfg: &StrategyConfig, heuristic: StrategyKind) -> RunOutcome {
    assert!(matches!(heuristic, StrategyKind::PrioEx | StrategyKind::PrioCons));
    run(p, &StrategyConfig { kind: heuristic, ..cfg.clone() })
}
