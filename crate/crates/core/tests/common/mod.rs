//! Random desk-scale tasks and brute-force oracles that share no code
//! with the library's enumerator or prover.
//!
//! The oracle enumerates clause bodies as plain literal sets, identifies
//! clauses up to renaming of body-only variables by trying every
//! permutation, and evaluates coverage bottom-up over the fact tables. A
//! program's coverage is the union of its clauses' coverage because the
//! generated tasks are never recursive.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use mtilp::learner::Task;
use mtilp::logic::{parse_atom, parse_clauses, parse_program, Database, ExampleSet, PredSig, Program};
use mtilp::space::LanguageBias;
use rand::seq::IteratorRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Tuple = Vec<usize>;

#[derive(Clone, Debug)]
pub struct OPred {
    pub name: String,
    pub arity: usize,
}

/// A clause body literal: predicate index and variable indices.
pub type OLit = (usize, Vec<u8>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OClause {
    pub body: Vec<OLit>,
}

#[derive(Clone, Debug)]
pub struct World {
    pub consts: usize,
    pub preds: Vec<OPred>,
    pub facts: Vec<HashSet<Tuple>>,
}

#[derive(Clone, Debug)]
pub struct RandomTask {
    pub world: World,
    pub head: String,
    pub head_arity: usize,
    pub v: usize,
    pub m: usize,
    pub n: usize,
    pub pos: BTreeSet<Tuple>,
    pub neg: BTreeSet<Tuple>,
}

fn var_name(v: u8) -> char {
    (b'A' + v) as char
}

pub fn const_name(c: usize) -> String {
    format!("c{c}")
}

fn tuple_text(t: &[usize]) -> String {
    t.iter().map(|&c| const_name(c)).join(",")
}

/// Every argument tuple of `arity` constants below `consts`.
pub fn all_tuples(arity: usize, consts: usize) -> Vec<Tuple> {
    (0..arity).map(|_| 0..consts).multi_cartesian_product().collect()
}

/// Canonical form of a body: the smallest sorted literal list over all
/// permutations of the body-only variables `a..v`.
fn canonical_body(body: &[OLit], a: u8, v: u8) -> Vec<OLit> {
    let free: Vec<u8> = (a..v).collect();
    let mut best: Option<Vec<OLit>> = None;
    for perm in free.iter().copied().permutations(free.len()) {
        let map = |x: u8| if x < a { x } else { perm[(x - a) as usize] };
        let mut b: Vec<OLit> = body.iter().map(|(p, args)| (*p, args.iter().map(|&x| map(x)).collect())).collect();
        b.sort();
        if best.as_ref().is_none_or(|cur| b < *cur) {
            best = Some(b);
        }
    }
    best.unwrap_or_default()
}

/// Clause classes by body length: `out[k-1]` holds every class with `k`
/// body literals.
pub fn oracle_clauses(preds: &[OPred], a: usize, v: usize, m: usize) -> Vec<Vec<OClause>> {
    let mut lits: Vec<OLit> = Vec::new();
    for (i, p) in preds.iter().enumerate() {
        for args in (0..p.arity).map(|_| 0..v as u8).multi_cartesian_product() {
            lits.push((i, args));
        }
    }
    (1..=m)
        .map(|k| {
            let set: BTreeSet<OClause> = lits
                .iter()
                .cloned()
                .combinations(k)
                .map(|body| OClause { body: canonical_body(&body, a as u8, v as u8) })
                .collect();
            set.into_iter().collect()
        })
        .collect()
}

/// Number of programs of exactly `size` literals: sets of at most `n`
/// distinct classes whose sizes `1 + k` add up to `size`.
pub fn oracle_count(classes: &[Vec<OClause>], n: usize, size: usize) -> u128 {
    fn choose(x: u128, k: u128) -> u128 {
        if k > x {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (x - i) / (i + 1))
    }
    // counts[j][s]: programs of j clauses and total size s over levels seen so far.
    let mut counts = vec![vec![0u128; size + 1]; n + 1];
    counts[0][0] = 1;
    for (lvl, cls) in classes.iter().enumerate() {
        let csize = lvl + 2;
        let mut next = counts.clone();
        for (j, row) in counts.iter().enumerate() {
            for (s, &c) in row.iter().enumerate().filter(|(_, &c)| c > 0) {
                for t in 1..=(n - j) {
                    let ns = s + t * csize;
                    if ns > size {
                        break;
                    }
                    next[j + t][ns] += c * choose(cls.len() as u128, t as u128);
                }
            }
        }
        counts = next;
    }
    (1..=n).map(|j| counts[j][size]).sum()
}

pub fn clause_size(c: &OClause) -> usize {
    1 + c.body.len()
}

pub fn clause_text(head: &str, a: usize, c: &OClause, preds: &[OPred]) -> String {
    let head_args = (0..a as u8).map(var_name).join(",");
    let body = c
        .body
        .iter()
        .map(|(p, args)| format!("{}({})", preds[*p].name, args.iter().map(|&x| var_name(x)).join(",")))
        .join(",");
    format!("{head}({head_args}):-{body}.")
}

/// Tuples over the head arguments that the clause covers.
pub fn clause_coverage(c: &OClause, a: usize, v: usize, world: &World) -> BTreeSet<Tuple> {
    let mut out = BTreeSet::new();
    for assign in all_tuples(v, world.consts) {
        let holds = c.body.iter().all(|(p, args)| {
            let t: Tuple = args.iter().map(|&x| assign[x as usize]).collect();
            world.facts[*p].contains(&t)
        });
        if holds {
            out.insert(assign[..a].to_vec());
        }
    }
    out
}

impl RandomTask {
    pub fn classes(&self) -> Vec<Vec<OClause>> {
        oracle_clauses(&self.world.preds, self.head_arity, self.v, self.m)
    }

    pub fn max_size(&self) -> usize {
        self.n * (1 + self.m)
    }

    pub fn bias(&self) -> LanguageBias {
        let body = self.world.preds.iter().map(|p| PredSig::new(&p.name, p.arity)).collect();
        LanguageBias::new(vec![PredSig::new(&self.head, self.head_arity)], body, self.v, self.m, self.n).unwrap()
    }

    pub fn bk_text(&self) -> String {
        let mut s = String::new();
        for (p, facts) in self.world.preds.iter().zip(&self.world.facts) {
            for t in facts.iter().sorted() {
                s += &format!("{}({}).\n", p.name, tuple_text(t));
            }
        }
        s
    }

    pub fn database(&self) -> Database {
        Database::from(&Program::from_clauses(parse_clauses(&self.bk_text()).unwrap()))
    }

    pub fn task(&self) -> Task {
        let atom = |t: &Tuple| parse_atom(&format!("{}({})", self.head, tuple_text(t))).unwrap();
        let exs = ExampleSet::new(self.pos.iter().map(atom).collect(), self.neg.iter().map(atom).collect()).unwrap();
        Task::new(exs, self.bias()).unwrap()
    }

    pub fn program(&self, clauses: &[&OClause]) -> Program {
        let src = clauses.iter().map(|c| clause_text(&self.head, self.head_arity, c, &self.world.preds)).join(" ");
        parse_program(&src).unwrap()
    }

    /// Every oracle solution as clause lists, smallest first. A solution
    /// covers all positives and no negatives.
    pub fn solutions(&self) -> Vec<Vec<OClause>> {
        let classes: Vec<OClause> = self.classes().into_iter().flatten().collect();
        let cover: Vec<BTreeSet<Tuple>> =
            classes.iter().map(|c| clause_coverage(c, self.head_arity, self.v, &self.world)).collect();
        let ok: Vec<usize> = (0..classes.len()).filter(|&i| cover[i].is_disjoint(&self.neg)).collect();
        let mut out = Vec::new();
        for j in 1..=self.n {
            for combo in ok.iter().copied().combinations(j) {
                let covered: BTreeSet<&Tuple> = combo.iter().flat_map(|&i| &cover[i]).collect();
                if self.pos.iter().all(|p| covered.contains(p)) {
                    out.push(combo.iter().map(|&i| classes[i].clone()).collect::<Vec<_>>());
                }
            }
        }
        out.sort_by_key(|s| s.iter().map(clause_size).sum::<usize>());
        out
    }

    /// Whether no proper subset of `sol` is itself a solution.
    pub fn is_reduced(&self, sol: &[OClause]) -> bool {
        if sol.len() < 2 {
            return true;
        }
        sol.iter().all(|c| {
            let cov = clause_coverage(c, self.head_arity, self.v, &self.world);
            !self.pos.iter().all(|p| cov.contains(p))
        }) && (1..sol.len()).all(|k| {
            sol.iter().combinations(k).all(|sub| {
                let covered: BTreeSet<Tuple> =
                    sub.iter().flat_map(|c| clause_coverage(c, self.head_arity, self.v, &self.world)).collect();
                !self.pos.iter().all(|p| covered.contains(p))
            })
        })
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random world with `k` body predicates over `consts` constants.
pub fn random_world(rng: &mut impl Rng, k: usize, consts: usize, max_arity: usize) -> World {
    let preds: Vec<OPred> =
        (0..k).map(|i| OPred { name: format!("p{i}"), arity: rng.random_range(1..=max_arity) }).collect();
    let facts = preds
        .iter()
        .map(|p| {
            let density = rng.random_range(0.2..0.6);
            let mut set: HashSet<Tuple> =
                all_tuples(p.arity, consts).into_iter().filter(|_| rng.random_bool(density)).collect();
            if set.is_empty() {
                set.insert(vec![0; p.arity]);
            }
            set
        })
        .collect();
    World { consts, preds, facts }
}

/// A random bias within desk scale: up to 3 body predicates, `v <= 3`,
/// `m <= 2`, `n <= 2`.
pub fn random_bias_params(rng: &mut impl Rng) -> (usize, usize, usize, usize, usize) {
    let k = rng.random_range(1..=3);
    let head_arity = rng.random_range(1..=2);
    let v = rng.random_range(head_arity.max(2)..=3);
    let m = rng.random_range(1..=2);
    let n = rng.random_range(1..=2);
    (k, head_arity, v, m, n)
}

/// A task over `world` with head `head`. With `random_labels` off the
/// positives are the coverage of a random program in the space, so the
/// task is solvable. Returns `None` when the labels are all or nothing.
#[allow(clippy::too_many_arguments)]
pub fn labelled_task(
    r: &mut impl Rng,
    world: World,
    head: &str,
    head_arity: usize,
    v: usize,
    m: usize,
    n: usize,
    random_labels: bool,
) -> Option<RandomTask> {
    let mut t =
        RandomTask { world, head: head.into(), head_arity, v, m, n, pos: BTreeSet::new(), neg: BTreeSet::new() };
    let tuples = all_tuples(head_arity, t.world.consts);
    let labels: BTreeSet<Tuple> = if random_labels {
        tuples.iter().filter(|_| r.random_bool(0.4)).cloned().collect()
    } else {
        let classes: Vec<OClause> = t.classes().into_iter().flatten().collect();
        let j = r.random_range(1..=n);
        let chosen: Vec<&OClause> = classes.iter().sample(r, j);
        chosen.iter().flat_map(|c| clause_coverage(c, head_arity, v, &t.world)).collect()
    };
    if labels.is_empty() || labels.len() == tuples.len() {
        return None;
    }
    t.neg = tuples.into_iter().filter(|x| !labels.contains(x)).collect();
    t.pos = labels;
    Some(t)
}

/// A random task. Most take their labels from a random program in the
/// space, so they are solvable; every fourth has random labels.
pub fn random_task(seed: u64) -> RandomTask {
    let mut r = rng(seed);
    loop {
        let (k, head_arity, v, m, n) = random_bias_params(&mut r);
        let consts = r.random_range(3..=4);
        let world = random_world(&mut r, k, consts, 2);
        if let Some(t) = labelled_task(&mut r, world, "t", head_arity, v, m, n, seed % 4 == 3) {
            return t;
        }
    }
}

/// Adds a solved task's extension as a new predicate of the world, the
/// way augmenting the background knowledge makes it callable.
pub fn with_solved(world: &World, name: &str, arity: usize, extension: &BTreeSet<Tuple>) -> World {
    let mut w = world.clone();
    w.preds.push(OPred { name: name.into(), arity });
    w.facts.push(extension.iter().cloned().collect());
    w
}

pub fn counts_by_size(classes: &[Vec<OClause>], n: usize, max_size: usize) -> HashMap<usize, u128> {
    (2..=max_size).map(|s| (s, oracle_count(classes, n, s))).collect()
}
