//! Family-tree tasks over a single paternal line.
//!
//! Two generations give the father/wife facts of the classic grandparent
//! example; three add a mother for the grandmother; each further
//! generation adds another father on top of the line, with a wife who
//! has a mother.

use super::{all_other_pairs, DatasetError, TaskDir, TaskSpec};
use crate::logic::{Atom, Clause, PredSig, Term};
use crate::space::LanguageBias;

const FATHERS: [&str; 8] = ["Dan", "John", "Paul", "Mark", "Luke", "Adam", "Noah", "Owen"];
const WIVES: [&str; 6] = ["Alice", "Eve", "Ruth", "Mary", "Anna", "Lucy"];
const MOTHERS: [&str; 6] = ["Olga", "Rosa", "Vera", "Ida", "Zoe", "Emma"];

/// Largest supported `generations`.
pub const MAX_GENERATIONS: usize = 7;

fn c(name: &str) -> Term {
    Term::constant(name)
}

fn fact(pred: &str, a: &str, b: &str) -> Clause {
    Clause::fact(Atom::new(pred, vec![c(a), c(b)]))
}

pub fn gen_kinship(generations: usize) -> Result<TaskDir, DatasetError> {
    if !(2..=MAX_GENERATIONS).contains(&generations) {
        return Err(DatasetError::Infeasible(format!(
            "generations must be in 2..={MAX_GENERATIONS}, got {generations}"
        )));
    }
    // fathers[k] is the father of fathers[k-1]; fathers[0] is the youngest.
    let line = generations.max(3);
    let fathers = &FATHERS[..line];
    let mut bk = Vec::new();
    let mut wife_of = Vec::new();
    let mut mother_of = Vec::new();
    for k in 1..line {
        bk.push(fact("isFather", fathers[k], fathers[k - 1]));
    }
    for k in 2..line {
        let wife = WIVES[k - 2];
        bk.push(fact("isWife", wife, fathers[k]));
        wife_of.push((wife, k));
        if generations >= 3 {
            let mother = MOTHERS[k - 2];
            bk.push(fact("isMother", mother, wife));
            mother_of.push((mother, k));
        }
    }

    let mut people: Vec<&str> = fathers.to_vec();
    people.extend(wife_of.iter().map(|(w, _)| *w));
    people.extend(mother_of.iter().map(|(m, _)| *m));
    let universe: Vec<Term> = people.iter().map(|p| c(p)).collect();

    let mut body = vec![PredSig::new("isFather", 2), PredSig::new("isWife", 2)];
    if generations >= 3 {
        body.push(PredSig::new("isMother", 2));
    }
    let task = |name: &str, pos: Vec<Atom>| -> TaskSpec {
        let bias = LanguageBias::new(vec![PredSig::new(name, 2)], body.clone(), 4, 3, 1).unwrap();
        let neg = all_other_pairs(name, &universe, &pos);
        TaskSpec { name: name.to_owned(), bias, pos, neg }
    };
    let pair = |pred: &str, a: &str, b: &str| Atom::new(pred, vec![c(a), c(b)]);

    let gf: Vec<Atom> = (2..line).map(|k| pair("isGrandfather", fathers[k], fathers[k - 2])).collect();
    let gm: Vec<Atom> = wife_of.iter().map(|&(w, k)| pair("isGrandmother", w, fathers[k - 2])).collect();
    let mut tasks = vec![task("isGrandfather", gf), task("isGrandmother", gm)];
    if generations >= 3 {
        let ggm: Vec<Atom> = mother_of.iter().map(|&(m, k)| pair("isGrandgrandmother", m, fathers[k - 2])).collect();
        tasks.push(task("isGrandgrandmother", ggm));
    }
    Ok(TaskDir { bk, tasks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generations_is_the_classic_example() {
        let d = gen_kinship(2).unwrap();
        assert_eq!(d.bk_text(), "isFather('John','Dan').\nisFather('Paul','John').\nisWife('Alice','Paul').\n");
        assert_eq!(d.task_names(), vec!["isGrandfather", "isGrandmother"]);
        let pos: Vec<String> = d.tasks[0].pos.iter().map(|a| a.to_string()).collect();
        assert_eq!(pos, vec!["isGrandfather('Paul','Dan')"]);
        assert_eq!(d.tasks[1].pos[0].to_string(), "isGrandmother('Alice','Dan')");
        assert_eq!(d.tasks[0].neg.len(), 4 * 4 - 1);
    }

    #[test]
    fn three_generations_add_a_great_grandmother() {
        let d = gen_kinship(3).unwrap();
        assert!(d.bk_text().contains("isMother('Olga','Alice')."));
        assert_eq!(d.task_names(), vec!["isGrandfather", "isGrandmother", "isGrandgrandmother"]);
        assert_eq!(d.tasks[2].pos[0].to_string(), "isGrandgrandmother('Olga','Dan')");
    }

    #[test]
    fn examples_are_disjoint_and_ground() {
        for g in 2..=MAX_GENERATIONS {
            let d = gen_kinship(g).unwrap();
            for t in &d.tasks {
                assert!(t.pos.iter().chain(&t.neg).all(Atom::is_ground));
                assert!(t.pos.iter().all(|p| !t.neg.contains(p)));
            }
            d.to_problem().unwrap();
        }
        assert!(gen_kinship(1).is_err());
    }
}
