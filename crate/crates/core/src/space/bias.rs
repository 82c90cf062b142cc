//! Language bias: predicate declarations plus the a/v/m/n bounds.

use std::fmt;

use thiserror::Error;

use crate::logic::{parse_clauses, ParseError, PredSig, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiasError {
    #[error("bias syntax: {0}")]
    Parse(#[from] ParseError),
    #[error("unknown bias directive {0}")]
    UnknownDirective(String),
    #[error("malformed directive {0}")]
    Malformed(String),
    #[error("{0} must be at least 1")]
    ZeroBound(&'static str),
    #[error("no {0} predicates declared")]
    NoPredicates(&'static str),
    #[error("{pred} exceeds the maximum arity {max}")]
    ArityTooLarge { pred: PredSig, max: usize },
}

/// Bounds and predicate declarations restricting the hypothesis space.
///
/// `max_arity` defaults to the largest declared arity and grows when a body
/// predicate with a larger arity is added later.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LanguageBias {
    max_arity: usize,
    max_vars: usize,
    max_body: usize,
    max_clauses: usize,
    head_preds: Vec<PredSig>,
    body_preds: Vec<PredSig>,
    enable_recursion: bool,
}

fn sorted_unique(mut v: Vec<PredSig>) -> Vec<PredSig> {
    v.sort();
    v.dedup();
    v
}

impl LanguageBias {
    pub fn new(
        head_preds: Vec<PredSig>,
        body_preds: Vec<PredSig>,
        max_vars: usize,
        max_body: usize,
        max_clauses: usize,
    ) -> Result<LanguageBias, BiasError> {
        let head_preds = sorted_unique(head_preds);
        let body_preds = sorted_unique(body_preds);
        let max_arity = head_preds.iter().chain(&body_preds).map(|p| p.arity).max().unwrap_or(1).max(1);
        let bias = LanguageBias {
            max_arity,
            max_vars,
            max_body,
            max_clauses,
            head_preds,
            body_preds,
            enable_recursion: false,
        };
        bias.validate()?;
        Ok(bias)
    }

    pub fn with_recursion(mut self, enable: bool) -> LanguageBias {
        self.enable_recursion = enable;
        self
    }

    /// Raises the arity bound. Lowering it below a declared arity fails.
    pub fn with_max_arity(mut self, a: usize) -> Result<LanguageBias, BiasError> {
        self.max_arity = a;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), BiasError> {
        for (v, name) in [
            (self.max_arity, "max_arity"),
            (self.max_vars, "max_vars"),
            (self.max_body, "max_body"),
            (self.max_clauses, "max_clauses"),
        ] {
            if v == 0 {
                return Err(BiasError::ZeroBound(name));
            }
        }
        if self.head_preds.is_empty() {
            return Err(BiasError::NoPredicates("head"));
        }
        if self.body_preds.is_empty() {
            return Err(BiasError::NoPredicates("body"));
        }
        if let Some(&pred) = self.head_preds.iter().chain(&self.body_preds).find(|p| p.arity > self.max_arity) {
            return Err(BiasError::ArityTooLarge { pred, max: self.max_arity });
        }
        Ok(())
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn max_vars(&self) -> usize {
        self.max_vars
    }

    pub fn max_body(&self) -> usize {
        self.max_body
    }

    pub fn max_clauses(&self) -> usize {
        self.max_clauses
    }

    pub fn head_preds(&self) -> &[PredSig] {
        &self.head_preds
    }

    pub fn body_preds(&self) -> &[PredSig] {
        &self.body_preds
    }

    pub fn recursion_enabled(&self) -> bool {
        self.enable_recursion
    }

    /// Largest hypothesis size the bias admits, n·(1+m).
    pub fn max_size(&self) -> usize {
        self.max_clauses * (1 + self.max_body)
    }

    /// Body predicates usable in clauses for `head`: the declared ones plus
    /// `head` itself when recursion is on.
    pub fn body_preds_for(&self, head: PredSig) -> Vec<PredSig> {
        let mut out = self.body_preds.clone();
        if self.enable_recursion {
            out.push(head);
        }
        sorted_unique(out)
    }

    /// Adds a body predicate, used when a solved task's head becomes
    /// background knowledge. Returns false if it was already declared.
    pub fn add_body_pred(&mut self, pred: PredSig) -> bool {
        if self.body_preds.contains(&pred) {
            return false;
        }
        self.body_preds.push(pred);
        self.body_preds.sort();
        self.max_arity = self.max_arity.max(pred.arity);
        true
    }

    /// Reads the one-directive-per-line bias format.
    pub fn parse(src: &str) -> Result<LanguageBias, BiasError> {
        let mut heads = Vec::new();
        let mut bodies = Vec::new();
        let (mut v, mut m, mut n, mut a) = (None, None, None, None);
        let mut recursion = false;
        for clause in parse_clauses(src)? {
            let head = &clause.head;
            if !clause.body.is_empty() {
                return Err(BiasError::Malformed(clause.to_string()));
            }
            let malformed = || BiasError::Malformed(clause.to_string());
            let number = |t: &Term| match t {
                Term::Const(s) => s.as_str().parse::<usize>().map_err(|_| malformed()),
                _ => Err(malformed()),
            };
            match (head.pred.as_str(), head.args.as_slice()) {
                ("head_pred" | "body_pred", [Term::Const(name), arity]) => {
                    let sig = PredSig { name: *name, arity: number(arity)? };
                    if head.pred.as_str() == "head_pred" {
                        heads.push(sig)
                    } else {
                        bodies.push(sig)
                    }
                }
                ("max_vars", [x]) => v = Some(number(x)?),
                ("max_body", [x]) => m = Some(number(x)?),
                ("max_clauses", [x]) => n = Some(number(x)?),
                ("max_arity", [x]) => a = Some(number(x)?),
                ("enable_recursion", []) => recursion = true,
                (
                    "head_pred" | "body_pred" | "max_vars" | "max_body" | "max_clauses" | "max_arity"
                    | "enable_recursion",
                    _,
                ) => return Err(malformed()),
                _ => return Err(BiasError::UnknownDirective(head.to_string())),
            }
        }
        let missing = |name: &str| BiasError::Malformed(format!("missing {name}"));
        let mut bias = LanguageBias::new(
            heads,
            bodies,
            v.ok_or_else(|| missing("max_vars"))?,
            m.ok_or_else(|| missing("max_body"))?,
            n.ok_or_else(|| missing("max_clauses"))?,
        )?
        .with_recursion(recursion);
        if let Some(a) = a {
            bias = bias.with_max_arity(a)?;
        }
        Ok(bias)
    }
}

impl fmt::Display for LanguageBias {
    /// Writes the same format [`LanguageBias::parse`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quoted = |p: &PredSig| crate::logic::Atom::new(p.name.as_str(), vec![]).to_string();
        for p in &self.head_preds {
            writeln!(f, "head_pred({},{}).", quoted(p), p.arity)?;
        }
        for p in &self.body_preds {
            writeln!(f, "body_pred({},{}).", quoted(p), p.arity)?;
        }
        writeln!(f, "max_arity({}).", self.max_arity)?;
        writeln!(f, "max_vars({}).", self.max_vars)?;
        writeln!(f, "max_body({}).", self.max_body)?;
        writeln!(f, "max_clauses({}).", self.max_clauses)?;
        if self.enable_recursion {
            writeln!(f, "enable_recursion.")?;
        }
        Ok(())
    }
}
