//! Grid-walking tasks: task `f<d>` moves the robot `d` cells up.
//!
//! States are `pos(X,Y)` with Peano coordinates, so the unit moves are two
//! rules rather than a fact table and the grid is unbounded. Once `f<d>`
//! is known, `f<2d>` is two calls to it, which is what makes the chain
//! shrink under knowledge transfer.

use super::{DatasetError, TaskDir, TaskSpec};
use crate::logic::{parse_clauses, Atom, PredSig, Term};
use crate::space::LanguageBias;

const BK: &str = "\
move_up(pos(X,Y),pos(X,s(Y))).
move_right(pos(X,Y),pos(s(X),Y)).
";

/// Starting cells used for the positive examples.
const STARTS: [(usize, usize); 3] = [(0, 0), (1, 0), (0, 2)];

fn peano(n: usize) -> Term {
    (0..n).fold(Term::constant("z"), |t, _| Term::compound("s", vec![t]))
}

fn state(x: usize, y: usize) -> Term {
    Term::compound("pos", vec![peano(x), peano(y)])
}

pub fn task_name(d: usize) -> String {
    format!("f{d}")
}

pub fn gen_robot(distances: &[usize]) -> Result<TaskDir, DatasetError> {
    if distances.is_empty() || distances.contains(&0) {
        return Err(DatasetError::Infeasible("distances must be nonempty and positive".into()));
    }
    if distances.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DatasetError::Infeasible("distances must be strictly ascending".into()));
    }
    let bk = parse_clauses(BK).expect("robot BK parses");
    let body = vec![PredSig::new("move_up", 2), PredSig::new("move_right", 2)];
    let tasks = distances
        .iter()
        .map(|&d| {
            let name = task_name(d);
            let ex = |x: usize, y: usize, x2: usize, y2: usize| Atom::new(&name, vec![state(x, y), state(x2, y2)]);
            let pos = STARTS.iter().map(|&(x, y)| ex(x, y, x, y + d)).collect();
            let mut neg = Vec::new();
            for &(x, y) in &STARTS {
                neg.push(ex(x, y, x, y + d - 1));
                neg.push(ex(x, y, x, y + d + 1));
                neg.push(ex(x, y, x + 1, y + d));
            }
            let bias = LanguageBias::new(vec![PredSig::new(&name, 2)], body.clone(), 3, 3, 1).unwrap();
            TaskSpec { name, bias, pos, neg }
        })
        .collect();
    Ok(TaskDir { bk, tasks })
}
