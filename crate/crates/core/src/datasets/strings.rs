//! String transformations over character lists.
//!
//! The bundled sample has three tasks:
//!
//! - `f1` capitalises a word: `f1(A,B):-mk_uppercase(A,B).`
//! - `f2` drops the first word and capitalises the rest, which is
//!   `skip_word` followed by `mk_uppercase` (or by `f1` once known).
//! - `f3` strips a trailing punctuation mark. It needs a recursive
//!   two-clause program of size 9 and is shipped as a stretch task:
//!   `f3(A,B):-not_letter(A),skip1(A,B),is_empty(B).`
//!   `f3(A,B):-same_first(A,B),skip1(A,C),skip1(B,D),f3(C,D).`

use super::{DatasetError, TaskDir, TaskSpec};
use crate::logic::{parse_clauses, Atom, Term};
use crate::space::LanguageBias;

const BK_RULES: &str = "\
mk_uppercase([C|T],[U|T]):-upper(C,U).
skip1([_|T],T).
copyskip1([C,_|T],[C|T]).
skip_word([' '|T],T).
skip_word([C|T],R):-letter(C),skip_word(T,R).
same_first([C|_],[C|_]).
is_empty([]).
is_space([' '|_]).
is_number([C|_]):-digit(C).
not_letter([C|_]):-non_letter(C).
";

const PUNCT: [&str; 7] = [" ", ".", ",", "!", "?", "-", ":"];

fn bk_source() -> String {
    let mut src = String::new();
    for c in 'a'..='z' {
        let u = c.to_ascii_uppercase();
        src += &format!("upper({c},'{u}').\nletter({c}).\nletter('{u}').\n");
    }
    for d in 0..10 {
        src += &format!("digit({d}).\nnon_letter({d}).\n");
    }
    for p in PUNCT {
        src += &format!("non_letter('{p}').\n");
    }
    src + BK_RULES
}

fn chars(s: &str) -> Term {
    Term::list(s.chars().map(|c| Term::constant(&c.to_string())).collect(), None)
}

fn pairs(name: &str, xs: &[(&str, &str)]) -> Vec<Atom> {
    xs.iter().map(|(a, b)| Atom::new(name, vec![chars(a), chars(b)])).collect()
}

fn bias(src: &str) -> LanguageBias {
    LanguageBias::parse(src).expect("bundled bias parses")
}

const WORD_PREDS: &str = "\
body_pred(mk_uppercase,2).
body_pred(skip1,2).
body_pred(copyskip1,2).
body_pred(skip_word,2).
body_pred(is_empty,1).
body_pred(is_space,1).
body_pred(is_number,1).
body_pred(not_letter,1).
max_vars(3).
max_body(2).
max_clauses(1).
";

/// The bundled string sample.
pub fn gen_strings() -> Result<TaskDir, DatasetError> {
    let bk = parse_clauses(&bk_source()).expect("string BK parses");
    let f1 = TaskSpec {
        name: "f1".into(),
        bias: bias(&format!("head_pred(f1,2).\n{WORD_PREDS}")),
        pos: pairs("f1", &[("james", "James"), ("olga", "Olga"), ("dan", "Dan")]),
        neg: pairs("f1", &[("james", "james"), ("olga", "lga"), ("dan", "DAN"), ("dan", "Dn")]),
    };
    let f2 = TaskSpec {
        name: "f2".into(),
        bias: bias(&format!("head_pred(f2,2).\n{WORD_PREDS}")),
        pos: pairs("f2", &[("james bond", "Bond"), ("ada lovelace", "Lovelace")]),
        neg: pairs("f2", &[("james bond", "bond"), ("james bond", "James bond"), ("ada lovelace", "ovelace")]),
    };
    let f3 = TaskSpec {
        name: "f3".into(),
        bias: bias(
            "head_pred(f3,2).\nbody_pred(not_letter,1).\nbody_pred(is_empty,1).\nbody_pred(skip1,2).\n\
             body_pred(same_first,2).\nmax_vars(4).\nmax_body(4).\nmax_clauses(2).\nenable_recursion.\n",
        ),
        pos: pairs("f3", &[("artificial.", "artificial"), ("ok!", "ok"), ("a.", "a")]),
        neg: pairs("f3", &[("artificial.", "artificial."), ("ok!", "k!"), ("a.", "")]),
    };
    Ok(TaskDir { bk, tasks: vec![f1, f2, f3] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{entails, parse_program, Database, Entailment, EvalLimits};

    #[test]
    fn example_encoding() {
        let d = gen_strings().unwrap();
        assert_eq!(d.tasks[0].pos[0].to_string(), "f1([j,a,m,e,s],['J',a,m,e,s])");
        assert_eq!(d.tasks[2].pos[0].to_string(), "f3([a,r,t,i,f,i,c,i,a,l,'.'],[a,r,t,i,f,i,c,i,a,l])");
        d.to_problem().unwrap();
    }

    #[test]
    fn reference_programs_are_solutions() {
        let d = gen_strings().unwrap();
        let db = Database::from(&d.bk_program());
        let reference = [
            "f1(A,B):-mk_uppercase(A,B).",
            "f2(A,B):-skip_word(A,C),mk_uppercase(C,B).",
            "f3(A,B):-not_letter(A),skip1(A,B),is_empty(B). \
             f3(A,B):-same_first(A,B),skip1(A,C),skip1(B,D),f3(C,D).",
        ];
        for (t, src) in d.tasks.iter().zip(reference) {
            let h = parse_program(src).unwrap();
            for p in &t.pos {
                assert_eq!(entails(&db, &h, p, EvalLimits::default()), Entailment::Proved, "{p}");
            }
            for n in &t.neg {
                assert_eq!(entails(&db, &h, n, EvalLimits::default()), Entailment::Disproved, "{n}");
            }
        }
    }
}
