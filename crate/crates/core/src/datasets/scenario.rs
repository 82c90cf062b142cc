//! A problem where task order matters a lot.
//!
//! Task `g` is the union of two edge relations `r` and `b` and needs a
//! two-clause program of size 4. Tasks `t1..t4` each compose `g` with a
//! further relation `h_k`, so once `g` is known they take a single size-3
//! clause. Their biases also carry dense noise relations: every clause
//! built only from those covers all positives and some negatives, so
//! nothing prunes its specialisations and each larger size costs far
//! more than the last. Three of `g`'s four positives are `r` edges, so a
//! size-2 partial solution already covers 75% of them, while the `t`
//! tasks' best partials cover two of three. A scheduler that searches
//! `g` first at size 4 skips the size-4 search of every `t` task.

use super::{all_other_pairs, DatasetError, TaskDir, TaskSpec};
use crate::logic::{Atom, Clause, PredSig, Term};
use crate::space::LanguageBias;

const NODES: usize = 8;
const R_EDGES: [(usize, usize); 3] = [(0, 1), (2, 3), (4, 5)];
const B_EDGES: [(usize, usize); 1] = [(6, 7)];
const H_DOMAIN: [usize; 3] = [1, 3, 7];
const NOISE: [&str; 4] = ["e1", "e2", "e3", "e4"];

fn node(i: usize) -> Term {
    Term::constant(&format!("n{i}"))
}

fn edge(pred: &str, (a, b): (usize, usize)) -> Atom {
    Atom::new(pred, vec![node(a), node(b)])
}

pub fn gen_priority_scenario() -> Result<TaskDir, DatasetError> {
    let mut bk: Vec<Clause> = Vec::new();
    bk.extend(R_EDGES.iter().map(|&e| Clause::fact(edge("r", e))));
    bk.extend(B_EDGES.iter().map(|&e| Clause::fact(edge("b", e))));
    // h_k is defined on the targets of two r-edges and the b-edge only.
    for k in 1..=4 {
        for &i in &H_DOMAIN {
            bk.push(Clause::fact(edge(&format!("h{k}"), (i, (i + k) % NODES))));
        }
    }
    // e1 is total, e2 drops the diagonal, e3 and e4 drop one pair each.
    for i in 0..NODES {
        for j in 0..NODES {
            bk.push(Clause::fact(edge(NOISE[0], (i, j))));
            if i != j {
                bk.push(Clause::fact(edge(NOISE[1], (i, j))));
            }
            if (i, j) != (1, 0) {
                bk.push(Clause::fact(edge(NOISE[2], (i, j))));
            }
            if (i, j) != (5, 2) {
                bk.push(Clause::fact(edge(NOISE[3], (i, j))));
            }
        }
    }
    let universe: Vec<Term> = (0..NODES).map(node).collect();
    let task = |name: &str, body: &[&str], pos: Vec<Atom>| {
        let body = body.iter().map(|p| PredSig::new(p, 2)).collect();
        let bias = LanguageBias::new(vec![PredSig::new(name, 2)], body, 3, 3, 2).unwrap();
        let neg = all_other_pairs(name, &universe, &pos);
        TaskSpec { name: name.to_owned(), bias, pos, neg }
    };

    let g_edges: Vec<(usize, usize)> = R_EDGES.iter().chain(&B_EDGES).copied().collect();
    let mut tasks = Vec::new();
    for k in 1..=4 {
        let name = format!("t{k}");
        let h = format!("h{k}");
        let pos = g_edges
            .iter()
            .filter(|(_, b)| H_DOMAIN.contains(b))
            .map(|&(a, b)| edge(&name, (a, (b + k) % NODES)))
            .collect();
        let mut body = vec!["r", "b", h.as_str()];
        body.extend(NOISE);
        tasks.push(task(&name, &body, pos));
    }
    tasks.push(task("g", &["r", "b"], g_edges.iter().map(|&e| edge("g", e)).collect()));
    Ok(TaskDir { bk, tasks })
}
