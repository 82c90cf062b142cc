mod common;

use common::*;
use mtilp::logic::{entails, parse_clause, parse_program, Entailment, EvalLimits};
use mtilp::space::{enumerate, theta_subsumes};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn prover_agrees_with_bottom_up_coverage(seed in any::<u64>()) {
        let t = random_task(seed);
        let classes: Vec<OClause> = t.classes().into_iter().flatten().collect();
        let db = t.database();
        let c = &classes[(seed as usize / 7) % classes.len()];
        let h = t.program(&[c]);
        let cov = clause_coverage(c, t.head_arity, t.v, &t.world);
        for tuple in all_tuples(t.head_arity, t.world.consts) {
            let args = tuple.iter().map(|&x| const_name(x)).collect::<Vec<_>>().join(",");
            let q = mtilp::logic::parse_atom(&format!("t({args})")).unwrap();
            let got = entails(&db, &h, &q, EvalLimits::default());
            let want = if cov.contains(&tuple) { Entailment::Proved } else { Entailment::Disproved };
            prop_assert_eq!(got, want, "{} on {}", h, q);
        }
    }

    #[test]
    fn canonical_form_ignores_body_order_and_names(seed in any::<u64>()) {
        let t = random_task(seed);
        let classes: Vec<OClause> = t.classes().into_iter().flatten().collect();
        let c = &classes[(seed as usize / 3) % classes.len()];
        let text = clause_text(&t.head, t.head_arity, c, &t.world.preds);
        let clause = parse_clause(&text).unwrap();
        prop_assert_eq!(clause.canonical(), clause.clone());
        prop_assert_eq!(clause.to_string(), text.clone());
        // Reverse the body and rename the variable C to Z.
        let head_end = text.find(":-").unwrap();
        let body: Vec<&str> = text[head_end + 2..text.len() - 1].split("),").collect();
        let rev: Vec<String> = body.iter().rev().map(|l| l.trim_end_matches(')').to_owned() + ")").collect();
        let shuffled = format!("{}:-{}.", &text[..head_end], rev.join(",")).replace('C', "Z");
        let other = parse_clause(&shuffled).unwrap();
        prop_assert_eq!(other.canonical(), clause.clone());
        prop_assert!(theta_subsumes(&clause, &other) && theta_subsumes(&other, &clause));
    }
}

#[test]
fn enumeration_matches_oracle_on_fixed_biases() {
    for seed in 0..8 {
        let t = random_task(seed);
        let classes = t.classes();
        let bias = t.bias();
        for size in 2..=t.max_size() {
            let got = enumerate(&bias, size, bias.head_preds()[0]).count() as u128;
            assert_eq!(got, oracle_count(&classes, t.n, size), "seed {seed} size {size}");
        }
    }
}

#[test]
fn subsumption_orders_a_clause_below_its_generalisation() {
    let general = parse_clause("t(A,B):-p0(A,C).").unwrap();
    let special = parse_clause("t(A,B):-p0(A,C),p1(C,B).").unwrap();
    assert!(theta_subsumes(&general, &special));
    assert!(!theta_subsumes(&special, &general));
    let h = parse_program("t(A,B):-p0(A,B).").unwrap();
    assert_eq!(h.size(), 2);
}
