//! Constraints learnt from failed hypotheses, and the store that prunes
//! the enumeration with them.

use std::collections::HashSet;
use std::fmt;

use crate::logic::{ExampleSet, Outcome, Program};
use crate::space::{is_generalisation, is_separable, is_specialisation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Generalisation,
    Specialisation,
    Elimination,
    Banish,
}

impl ConstraintKind {
    pub const ALL: [ConstraintKind; 4] = [
        ConstraintKind::Generalisation,
        ConstraintKind::Specialisation,
        ConstraintKind::Elimination,
        ConstraintKind::Banish,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Generalisation => "generalisation",
            ConstraintKind::Specialisation => "specialisation",
            ConstraintKind::Elimination => "elimination",
            ConstraintKind::Banish => "banish",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub kind: ConstraintKind,
    /// Canonical, nonempty.
    pub pattern: Program,
    pub origin_size: usize,
}

impl Constraint {
    pub fn new(kind: ConstraintKind, pattern: &Program, origin_size: usize) -> Constraint {
        assert!(!pattern.is_empty(), "constraint pattern must be nonempty");
        Constraint { kind, pattern: pattern.canonical(), origin_size }
    }
}

/// Constraints implied by testing `h`, which must not be a solution.
///
/// An exhausted evaluation yields only a banish constraint, since missing
/// coverage may be an artifact of the limits.
pub fn derive_constraints(h: &Program, outcome: &Outcome, exs: &ExampleSet) -> Vec<Constraint> {
    let size = h.size();
    let mut out = Vec::new();
    if !outcome.exhausted {
        if !outcome.neg_covered.is_empty() {
            out.push(Constraint::new(ConstraintKind::Generalisation, h, size));
        }
        if outcome.pos_covered.len() < exs.pos().len() {
            out.push(Constraint::new(ConstraintKind::Specialisation, h, size));
        }
        if outcome.pos_covered.is_empty() {
            out.push(Constraint::new(ConstraintKind::Elimination, h, size));
        }
    }
    out.push(Constraint::new(ConstraintKind::Banish, h, size));
    out
}

/// Whether `candidate` (canonical) is ruled out by `c`.
pub fn violates(candidate: &Program, c: &Constraint) -> bool {
    match c.kind {
        ConstraintKind::Generalisation => is_generalisation(&c.pattern, candidate),
        ConstraintKind::Specialisation => is_specialisation(&c.pattern, candidate),
        ConstraintKind::Elimination => {
            is_separable(candidate) && c.pattern.clauses().iter().all(|p| candidate.clauses().contains(p))
        }
        ConstraintKind::Banish => *candidate == c.pattern,
    }
}

/// Events across which a store may be kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateEvent {
    SizeChange,
    BkAugmented,
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintStore {
    rules: Vec<Constraint>,
    keys: HashSet<(ConstraintKind, Program)>,
    banished: HashSet<Program>,
    counts: [usize; 4],
}

impl ConstraintStore {
    pub fn new() -> ConstraintStore {
        ConstraintStore::default()
    }

    /// Adds `c` unless an equal (kind, pattern) pair is present.
    pub fn add(&mut self, c: Constraint) -> bool {
        if !self.keys.insert((c.kind, c.pattern.clone())) {
            return false;
        }
        self.counts[c.kind.index()] += 1;
        if c.kind == ConstraintKind::Banish {
            self.banished.insert(c.pattern);
        } else {
            self.rules.push(c);
        }
        true
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Constraint>) {
        cs.into_iter().for_each(|c| {
            self.add(c);
        });
    }

    /// True iff some stored constraint rules out `candidate`.
    pub fn prune(&self, candidate: &Program) -> bool {
        self.banished.contains(candidate) || self.rules.iter().any(|c| violates(candidate, c))
    }

    pub fn count(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn count_of(&self, kind: ConstraintKind) -> usize {
        self.counts[kind.index()]
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Constraint> + '_ {
        let banished = self.banished.iter().map(|p| Constraint {
            kind: ConstraintKind::Banish,
            origin_size: p.size(),
            pattern: p.clone(),
        });
        self.rules.iter().cloned().chain(banished)
    }

    /// One `kind<TAB>pattern` line per constraint, sorted for diffing.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self.iter().map(|c| format!("{}\t{}", c.kind, c.pattern)).collect();
        lines.sort();
        lines.into_iter().map(|l| l + "\n").collect()
    }
}

/// Keeps every constraint when preservation is on; otherwise starts over.
/// Learnt constraints stay sound across both events because a hypothesis
/// that failed keeps failing.
pub fn preserve_across_update(store: ConstraintStore, _event: UpdateEvent, preserve: bool) -> ConstraintStore {
    if preserve {
        store
    } else {
        ConstraintStore::new()
    }
}
