//! Size-stratified hypothesis enumeration.
//!
//! Clauses come from a per-head [`ClauseCatalog`]: level `k` holds every
//! canonical clause with exactly `k` body literals, in sorted order. A
//! hypothesis of size `S` is a set of distinct catalog clauses whose sizes
//! sum to `S`. Enumeration runs over shapes (non-decreasing body-length
//! partitions), and within a shape over index combinations per level, so
//! every hypothesis comes out exactly once and already canonical.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::bias::LanguageBias;
use crate::logic::{Atom, Clause, PredSig, Program, Term};

/// Every canonical clause for one head under one bias, built lazily per
/// body length.
#[derive(Debug)]
pub struct ClauseCatalog {
    head: Atom,
    universe: Vec<Atom>,
    levels: Vec<OnceLock<Vec<Clause>>>,
}

/// All argument tuples of length `arity` over variables `0..vars`.
fn var_tuples(arity: usize, vars: u32) -> Vec<Vec<Term>> {
    (0..arity).map(|_| (0..vars).map(Term::var)).multi_cartesian_product().collect()
}

impl ClauseCatalog {
    pub fn new(bias: &LanguageBias, head: PredSig) -> ClauseCatalog {
        let vars = bias.max_vars() as u32;
        let feasible = head.arity <= bias.max_vars();
        let head_atom = Atom { pred: head.name, args: (0..head.arity as u32).map(Term::var).collect() };
        let mut universe = Vec::new();
        if feasible {
            for p in bias.body_preds_for(head) {
                if p.arity == 0 {
                    universe.push(Atom { pred: p.name, args: Vec::new() });
                } else {
                    universe.extend(var_tuples(p.arity, vars).into_iter().map(|args| Atom { pred: p.name, args }));
                }
            }
            universe.sort();
        }
        let levels = (0..=bias.max_body()).map(|_| OnceLock::new()).collect();
        ClauseCatalog { head: head_atom, universe, levels }
    }

    pub fn max_body(&self) -> usize {
        self.levels.len() - 1
    }

    /// Canonical clauses with exactly `k` body literals, sorted.
    pub fn level(&self, k: usize) -> &[Clause] {
        if k == 0 || k > self.max_body() {
            return &[];
        }
        self.levels[k].get_or_init(|| self.build_level(k))
    }

    fn build_level(&self, k: usize) -> Vec<Clause> {
        let head_vars = self.head.args.len() as u32;
        let mut out = Vec::new();
        let mut used = Vec::new();
        for body in self.universe.iter().combinations(k) {
            // Body-only variables must be exactly head_vars..head_vars+r.
            used.clear();
            body.iter().for_each(|a| a.collect_vars(&mut used));
            used.retain(|v| v.0 >= head_vars);
            used.sort();
            used.dedup();
            if used.iter().enumerate().any(|(i, v)| v.0 != head_vars + i as u32) {
                continue;
            }
            let clause = Clause::new(self.head.clone(), body.into_iter().cloned().collect());
            if used.len() <= 1 || clause.canonical() == clause {
                out.push(clause);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CatalogKey {
    body_preds: Vec<PredSig>,
    max_vars: usize,
    max_body: usize,
    head: PredSig,
}

/// Shares catalogs between enumerators over the same bias and head.
#[derive(Debug, Default)]
pub struct CatalogCache {
    catalogs: Mutex<HashMap<CatalogKey, Arc<ClauseCatalog>>>,
}

impl CatalogCache {
    pub fn new() -> CatalogCache {
        CatalogCache::default()
    }

    pub fn get(&self, bias: &LanguageBias, head: PredSig) -> Arc<ClauseCatalog> {
        let key = CatalogKey {
            body_preds: bias.body_preds_for(head),
            max_vars: bias.max_vars(),
            max_body: bias.max_body(),
            head,
        };
        let mut map = self.catalogs.lock().unwrap();
        map.entry(key).or_insert_with(|| Arc::new(ClauseCatalog::new(bias, head))).clone()
    }
}

/// Non-decreasing lists of `parts` body lengths in `1..=m` summing to `total`.
fn shapes(total: usize, parts: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, lo: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in lo..=m.min(total) {
            cur.push(k);
            go(total - k, parts - 1, k, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, 1, m, &mut Vec::new(), &mut out);
    out
}

/// Advances a strictly increasing index combination over `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let c = idx.len();
    for i in (0..c).rev() {
        if idx[i] < n - c + i {
            idx[i] += 1;
            for j in i + 1..c {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Group {
    k: usize,
    idx: Vec<usize>,
}

/// Deterministic stream of all hypotheses of one exact size.
pub struct Enumerator {
    catalog: Arc<ClauseCatalog>,
    shapes: std::vec::IntoIter<Vec<usize>>,
    groups: Vec<Group>,
    started: bool,
}

impl Enumerator {
    pub fn new(catalog: Arc<ClauseCatalog>, max_clauses: usize, size: usize) -> Enumerator {
        let m = catalog.max_body();
        let all: Vec<Vec<usize>> =
            (1..=max_clauses).filter(|&j| size >= 2 * j).flat_map(|j| shapes(size - j, j, m)).collect();
        Enumerator { catalog, shapes: all.into_iter(), groups: Vec::new(), started: false }
    }

    fn start_shape(&mut self) -> bool {
        for shape in self.shapes.by_ref() {
            let groups: Vec<Group> =
                shape.iter().dedup_with_count().map(|(c, &k)| Group { k, idx: (0..c).collect() }).collect();
            if groups.iter().all(|g| g.idx.len() <= self.catalog.level(g.k).len()) {
                self.groups = groups;
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> bool {
        for g in self.groups.iter_mut().rev() {
            let n = self.catalog.level(g.k).len();
            if next_combination(&mut g.idx, n) {
                return true;
            }
            let c = g.idx.len();
            g.idx.clear();
            g.idx.extend(0..c);
        }
        false
    }

    fn current(&self) -> Program {
        let clauses =
            self.groups.iter().flat_map(|g| g.idx.iter().map(|&i| self.catalog.level(g.k)[i].clone())).collect();
        Program::from_canonical_unchecked(clauses)
    }

    /// Next hypothesis for which `reject` is false.
    pub fn next_accepted(&mut self, mut reject: impl FnMut(&Program) -> bool) -> Option<Program> {
        loop {
            let h = self.next()?;
            if !reject(&h) {
                return Some(h);
            }
        }
    }
}

impl Iterator for Enumerator {
    type Item = Program;

    fn next(&mut self) -> Option<Program> {
        let has = if !self.started {
            self.started = true;
            self.start_shape()
        } else {
            self.advance() || self.start_shape()
        };
        has.then(|| self.current())
    }
}

/// Every hypothesis of exactly `size` literals for `head`.
pub fn enumerate(bias: &LanguageBias, size: usize, head: PredSig) -> Enumerator {
    Enumerator::new(Arc::new(ClauseCatalog::new(bias, head)), bias.max_clauses(), size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_program;
    use std::collections::HashSet;

    fn kin_bias() -> LanguageBias {
        LanguageBias::new(
            vec![PredSig::new("isGrandfather", 2)],
            vec![PredSig::new("isFather", 2), PredSig::new("isWife", 2)],
            3,
            2,
            1,
        )
        .unwrap()
    }

    #[test]
    fn kinship_size_three_contains_the_grandfather_rule() {
        let want = parse_program("isGrandfather(A,B):-isFather(A,C),isFather(C,B).").unwrap().canonical();
        let all: Vec<Program> = enumerate(&kin_bias(), 3, PredSig::new("isGrandfather", 2)).collect();
        assert!(all.contains(&want));
        let unique: HashSet<&Program> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.iter().all(|h| h.canonical() == *h && h.size() == 3));
    }

    #[test]
    fn size_one_is_empty() {
        assert_eq!(enumerate(&kin_bias(), 1, PredSig::new("isGrandfather", 2)).count(), 0);
    }

    #[test]
    fn single_unary_predicate() {
        let b = LanguageBias::new(vec![PredSig::new("f", 1)], vec![PredSig::new("q", 1)], 1, 1, 1).unwrap();
        let all: Vec<String> = enumerate(&b, 2, PredSig::new("f", 1)).map(|h| h.to_string()).collect();
        assert_eq!(all, vec!["f(A):-q(A)."]);
    }

    #[test]
    fn multi_clause_hypotheses_are_sets() {
        let b = LanguageBias::new(vec![PredSig::new("f", 1)], vec![PredSig::new("q", 1)], 2, 1, 2).unwrap();
        // Level 1 clauses: f(A):-q(A). and f(A):-q(B).
        let all: Vec<String> = enumerate(&b, 4, PredSig::new("f", 1)).map(|h| h.to_string()).collect();
        assert_eq!(all, vec!["f(A):-q(A). f(A):-q(B)."]);
    }

    #[test]
    fn shapes_are_non_decreasing() {
        assert_eq!(shapes(4, 2, 3), vec![vec![1, 3], vec![2, 2]]);
        assert!(shapes(7, 2, 3).is_empty());
    }

    #[test]
    fn rejection_skips_candidates() {
        let mut e = enumerate(&kin_bias(), 2, PredSig::new("isGrandfather", 2));
        let first = e.next().unwrap();
        let mut e = enumerate(&kin_bias(), 2, PredSig::new("isGrandfather", 2));
        let second = e.next_accepted(|h| *h == first).unwrap();
        assert_ne!(first, second);
    }
}
