//! Closed-form upper bound on the number of hypotheses a bias admits:
//! Σ_{j=1..n} C(|D_h|·v^a · Σ_{i=1..m} C(|D_b|·v^a, i), j).

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::bias::LanguageBias;

fn binomial(n: &BigUint, k: usize) -> BigUint {
    if *n < BigUint::from(k) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// Evaluates the bound from raw parameters.
pub fn upper_bound(heads: usize, bodies: usize, v: usize, a: usize, m: usize, n: usize) -> BigUint {
    let va = BigUint::from(v).pow(a as u32);
    let literals = BigUint::from(bodies) * &va;
    let bodies_sum: BigUint = (1..=m).map(|i| binomial(&literals, i)).sum();
    let clauses = BigUint::from(heads) * &va * bodies_sum;
    (1..=n).map(|j| binomial(&clauses, j)).sum()
}

/// The bound for `bias`. With recursion on, each head predicate also counts
/// as a body predicate.
pub fn hs_upper_bound(bias: &LanguageBias) -> BigUint {
    let mut bodies = bias.body_preds().len();
    if bias.recursion_enabled() {
        bodies += bias.head_preds().iter().filter(|h| !bias.body_preds().contains(h)).count();
    }
    upper_bound(bias.head_preds().len(), bodies, bias.max_vars(), bias.max_arity(), bias.max_body(), bias.max_clauses())
}
