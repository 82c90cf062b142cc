//! Timestamped record of a multi-task run.

use std::fmt;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// A strategy pass or queue step begins at the given size.
    Step,
    Tested,
    ConstraintAdded,
    Solved,
    BkAugmented,
    Deadline,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::Step => "step",
            EventKind::Tested => "tested",
            EventKind::ConstraintAdded => "constraint",
            EventKind::Solved => "solved",
            EventKind::BkAugmented => "augment",
            EventKind::Deadline => "deadline",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub elapsed: Duration,
    pub kind: EventKind,
    pub task: String,
    pub size: usize,
    pub detail: String,
}

impl TraceEvent {
    /// The event without its timestamp, for comparing runs.
    pub fn untimed(&self) -> (EventKind, &str, usize, &str) {
        (self.kind, &self.task, self.size, &self.detail)
    }
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}\t{}", self.elapsed.as_millis(), self.kind, self.task, self.size, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunTrace {
    pub events: Vec<TraceEvent>,
}

impl RunTrace {
    pub fn push(&mut self, elapsed: Duration, kind: EventKind, task: &str, size: usize, detail: impl Into<String>) {
        self.events.push(TraceEvent { elapsed, kind, task: task.to_owned(), size, detail: detail.into() });
    }

    pub fn of_kind(&self, kind: EventKind) -> impl Iterator<Item = &TraceEvent> {
        self.events.iter().filter(move |e| e.kind == kind)
    }

    /// Times at which tasks were solved, in order.
    pub fn solve_times(&self) -> Vec<Duration> {
        self.of_kind(EventKind::Solved).map(|e| e.elapsed).collect()
    }

    /// One tab-separated line per event.
    pub fn to_lines(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let mut t = RunTrace::default();
        t.push(Duration::from_millis(12), EventKind::Solved, "f", 3, "f(A):-q(A).");
        assert_eq!(t.to_lines(), "12\tsolved\tf\t3\tf(A):-q(A).\n");
        assert_eq!(t.solve_times(), vec![Duration::from_millis(12)]);
    }
}
