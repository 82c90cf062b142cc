//! Problem generators and the on-disk task directory format.
//!
//! ```text
//! dir/manifest.txt      task names, one per line, in order
//! dir/bk.pl             background knowledge clauses
//! dir/<task>/bias.pl    language bias directives
//! dir/<task>/exs.pl     pos(atom). and neg(atom). lines
//! ```

mod kinship;
mod printer;
mod robot;
mod scenario;
mod strings;

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::learner::{Task, TaskError};
use crate::logic::{parse_clauses, Atom, Clause, ExampleSet, ParseError, Program, Term};
use crate::scheduler::{MultiTaskProblem, ProblemError};
use crate::space::{BiasError, LanguageBias};

pub use kinship::gen_kinship;
pub use printer::{gen_printer, pattern_bitmap, Pattern};
pub use robot::gen_robot;
pub use scenario::gen_priority_scenario;
pub use strings::gen_strings;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Bias { path: PathBuf, source: BiasError },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("task {name}: {source}")]
    Task { name: String, source: TaskError },
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// One task as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    pub name: String,
    pub bias: LanguageBias,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl TaskSpec {
    pub fn to_task(&self) -> Result<Task, DatasetError> {
        let err = |source: TaskError| DatasetError::Task { name: self.name.clone(), source };
        let exs = ExampleSet::new(self.pos.clone(), self.neg.clone()).map_err(|e| err(e.into()))?;
        Task::new(exs, self.bias.clone()).map_err(err)
    }
}

/// A dataset held in memory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaskDir {
    pub bk: Vec<Clause>,
    pub tasks: Vec<TaskSpec>,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> DatasetError + '_ {
    move |source| DatasetError::Io { path: path.to_owned(), source }
}

fn read(path: &Path) -> Result<String, DatasetError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn parse_file(path: &Path) -> Result<Vec<Clause>, DatasetError> {
    parse_clauses(&read(path)?).map_err(|source| DatasetError::Parse { path: path.to_owned(), source })
}

fn term_to_atom(t: &Term) -> Option<Atom> {
    match t {
        Term::Const(s) => Some(Atom { pred: *s, args: Vec::new() }),
        Term::Compound(f, args) => Some(Atom { pred: *f, args: args.to_vec() }),
        Term::Var(_) => None,
    }
}

impl TaskDir {
    pub fn task_names(&self) -> Vec<&str> {
        self.tasks.iter().map(|t| t.name.as_str()).collect()
    }

    pub fn bk_program(&self) -> Program {
        Program::from_clauses(self.bk.iter().cloned())
    }

    pub fn to_problem(&self) -> Result<MultiTaskProblem, DatasetError> {
        let tasks = self.tasks.iter().map(TaskSpec::to_task).collect::<Result<Vec<_>, _>>()?;
        Ok(MultiTaskProblem::new(tasks, self.bk_program())?)
    }

    pub fn bk_text(&self) -> String {
        self.bk.iter().map(|c| format!("{c}\n")).collect()
    }

    pub fn examples_text(task: &TaskSpec) -> String {
        let mut s = String::new();
        for a in &task.pos {
            writeln!(s, "pos({a}).").unwrap();
        }
        for a in &task.neg {
            writeln!(s, "neg({a}).").unwrap();
        }
        s
    }

    pub fn write_dir(&self, dir: &Path) -> Result<(), DatasetError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let write = |path: PathBuf, text: String| fs::write(&path, text).map_err(io_err(&path));
        write(dir.join("bk.pl"), self.bk_text())?;
        write(dir.join("manifest.txt"), self.tasks.iter().map(|t| format!("{}\n", t.name)).collect())?;
        for t in &self.tasks {
            let sub = dir.join(&t.name);
            fs::create_dir_all(&sub).map_err(io_err(&sub))?;
            write(sub.join("bias.pl"), t.bias.to_string())?;
            write(sub.join("exs.pl"), Self::examples_text(t))?;
        }
        Ok(())
    }

    /// Loads a task directory. A directory without a manifest holds no
    /// tasks; its `bk.pl` is optional too.
    pub fn load_dir(dir: &Path) -> Result<TaskDir, DatasetError> {
        if !dir.is_dir() {
            return Err(DatasetError::Io {
                path: dir.to_owned(),
                source: io::Error::new(io::ErrorKind::NotFound, "not a directory"),
            });
        }
        let bk_path = dir.join("bk.pl");
        let bk = if bk_path.exists() { parse_file(&bk_path)? } else { Vec::new() };
        let manifest = dir.join("manifest.txt");
        let names: Vec<String> = if manifest.exists() {
            read(&manifest)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_owned).collect()
        } else {
            Vec::new()
        };
        let mut tasks = Vec::new();
        for name in names {
            let bias_path = dir.join(&name).join("bias.pl");
            let bias = LanguageBias::parse(&read(&bias_path)?)
                .map_err(|source| DatasetError::Bias { path: bias_path.clone(), source })?;
            let exs_path = dir.join(&name).join("exs.pl");
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for c in parse_file(&exs_path)? {
                let malformed = || DatasetError::Malformed {
                    path: exs_path.clone(),
                    message: format!("expected pos(atom). or neg(atom)., found {c}"),
                };
                let [arg] = c.head.args.as_slice() else { return Err(malformed()) };
                let atom = term_to_atom(arg).filter(|_| c.body.is_empty()).ok_or_else(malformed)?;
                match c.head.pred.as_str() {
                    "pos" => pos.push(atom),
                    "neg" => neg.push(atom),
                    _ => return Err(malformed()),
                }
            }
            tasks.push(TaskSpec { name, bias, pos, neg });
        }
        Ok(TaskDir { bk, tasks })
    }
}

/// Loads a string-transformation task directory.
pub fn load_strings(dir: &Path) -> Result<TaskDir, DatasetError> {
    TaskDir::load_dir(dir)
}

/// Negatives for a binary target: every pair over `universe` that is not
/// a positive, in a fixed order.
pub(crate) fn all_other_pairs(pred: &str, universe: &[Term], pos: &[Atom]) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in universe {
        for b in universe {
            let atom = Atom::new(pred, vec![a.clone(), b.clone()]);
            if !pos.contains(&atom) {
                out.push(atom);
            }
        }
    }
    out
}
