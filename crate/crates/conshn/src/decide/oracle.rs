//! Bounded brute-force semantic oracle, independent of the reduction
//! pipeline.
//!
//! The oracle decides "does any contextualized point within the bounds
//! falsify the query" by exhausting a reduced enumeration space that is
//! provably counterexample-complete for the full space:
//!
//! - *Truncation.* Truth at instant `i` only reads tree levels up to
//!   `i + horizon`, so models deeper than that are projected away; per
//!   instant the tree depth is exactly `max(1, i + horizon)`.
//! - *Valuation relevance.* Only atoms occurring in the query matter, so
//!   states are labelled with subsets of those.
//! - *Duplicate merging.* Sibling subtrees that are equal as labelled trees
//!   are indistinguishable (quantifiers range over sets), so trees are
//!   enumerated as sets of root-to-leaf label words sharing a root label.
//! - *Witness demand.* Establishing the falsity of the query needs one
//!   timeline per conditional occurring positively in it, plus the
//!   designated one; conditional truth is timeline-independent and context
//!   updates never depend on the designated timeline, so restricting a
//!   falsifying model to those witnesses still falsifies the query. Label
//!   word sets are therefore capped at that size.
//! - *Context folding.* A single-rule context is equivalent to the empty
//!   context on the submodel spanned by the rule, and such submodels are
//!   themselves enumerated. Single-rule mode additionally checks every
//!   nonempty timeline subset as an explicit rule.
//!
//! Enumeration order is deterministic: instants ascend, then root labels in
//! bitmask order, then word sets by size and lexicographic index, then rule
//! subsets by bitmask, then timelines in document order.

use super::DecideError;
use crate::model::{acceptable, Context, Model, ModelDoc, Rule, StateDoc};
use crate::semantics::eval;
use crate::syntax::{fragment, print, Formula};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextMode {
    EmptyOnly,
    SingleRule,
}

#[derive(Debug, Clone)]
pub struct OracleBounds {
    pub max_depth: usize,
    pub max_branch: usize,
    pub atoms: Vec<String>,
    pub context_mode: ContextMode,
    /// Cap on evaluation calls.
    pub budget: u64,
    /// Override for the derived witness-demand cap on timelines per model.
    pub max_timelines: Option<usize>,
}

impl OracleBounds {
    pub fn new(max_depth: usize, max_branch: usize, atoms: &[&str]) -> OracleBounds {
        OracleBounds {
            max_depth,
            max_branch,
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            context_mode: ContextMode::SingleRule,
            budget: 50_000_000,
            max_timelines: None,
        }
    }
}

/// A falsifying contextualized point found by the oracle.
#[derive(Debug, Clone)]
pub struct OraclePoint {
    pub model: Model,
    pub context: Context,
    pub leaf: String,
    pub instant: usize,
}

#[derive(Debug, Clone)]
pub enum OracleOutcome {
    NoCounterexample,
    Counterexample(OraclePoint),
}

impl OracleOutcome {
    pub fn found(&self) -> bool {
        matches!(self, OracleOutcome::Counterexample(_))
    }
}

/// Search the bounded space for a point where `f` evaluates false.
pub fn brute_force(f: &Formula, bounds: &OracleBounds) -> Result<OracleOutcome, DecideError> {
    if !fragment::is_conshn(f) {
        return Err(DecideError::FragmentViolation {
            formula: print(f),
            expected: "conditional antecedents in the XY fragment".into(),
        });
    }
    let h = f.horizon();
    let mut atoms: Vec<String> = f
        .atoms()
        .into_iter()
        .filter(|a| bounds.atoms.iter().any(|b| b == a))
        .collect();
    atoms.sort();
    let letter_count = 1usize << atoms.len();
    let demand = bounds
        .max_timelines
        .unwrap_or_else(|| 1 + positive_conditionals(f, true));

    let mut evals: u64 = 0;
    let mut instant = 0usize;
    while instant + h <= bounds.max_depth {
        let depth = (instant + h).max(1);
        let word_count = letter_count.pow(depth as u32);
        let max_leaves = demand
            .min(word_count)
            .min(bounds.max_branch.saturating_pow(depth as u32));
        // digit expansion of every word, most significant level first
        let all_digits: Vec<Vec<usize>> = (0..word_count)
            .map(|w| {
                let mut d = Vec::with_capacity(depth);
                let mut rest = w;
                for _ in 0..depth {
                    d.push(rest % letter_count);
                    rest /= letter_count;
                }
                d.reverse();
                d
            })
            .collect();
        for root_letter in 0..letter_count {
            let mut combo = Combinations::new(word_count, max_leaves);
            while let Some(words) = combo.next() {
                if !branch_compatible(&all_digits, words, depth, bounds.max_branch) {
                    continue;
                }
                let model =
                    build_trie(root_letter, words, &all_digits, depth, &atoms, bounds.max_branch);
                for context in contexts_for(&model, bounds.context_mode) {
                    for tl in acceptable(&model, &context) {
                        evals += 1;
                        if evals > bounds.budget {
                            return Err(DecideError::BudgetExceeded {
                                evals,
                                budget: bounds.budget,
                            });
                        }
                        let pt = model
                            .point(&context, model.leaf_id(tl), instant)
                            .expect("enumerated point is admissible");
                        let v = eval(&pt, f).map_err(DecideError::Eval)?;
                        if !v.value {
                            let leaf = model.leaf_id(tl).to_string();
                            return Ok(OracleOutcome::Counterexample(OraclePoint {
                                model,
                                context,
                                leaf,
                                instant,
                            }));
                        }
                    }
                }
            }
        }
        instant += 1;
    }
    Ok(OracleOutcome::NoCounterexample)
}

/// Conditional occurrences at positive polarity; each one is a potential
/// existential move when falsifying the formula.
fn positive_conditionals(f: &Formula, positive: bool) -> usize {
    match f {
        Formula::Atom(_) | Formula::Bottom => 0,
        Formula::Not(g) => positive_conditionals(g, !positive),
        Formula::Next(g) | Formula::Yesterday(g) => positive_conditionals(g, positive),
        Formula::And(a, b) => {
            positive_conditionals(a, positive) + positive_conditionals(b, positive)
        }
        Formula::Con(_, b) => {
            usize::from(positive) + positive_conditionals(b, positive)
        }
    }
}

/// Lexicographic fixed-or-smaller-size index combinations: all subsets of
/// `0..n` of size 1..=k, ordered by size then lexicographically.
struct Combinations {
    n: usize,
    k: usize,
    size: usize,
    current: Vec<usize>,
    fresh: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations {
            n,
            k,
            size: 1,
            current: vec![0],
            fresh: true,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.size > self.k || self.n == 0 {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.current);
        }
        // advance within the current size
        let s = self.size;
        let mut pos = s;
        loop {
            if pos == 0 {
                self.size += 1;
                if self.size > self.k || self.size > self.n {
                    return None;
                }
                self.current = (0..self.size).collect();
                return Some(&self.current);
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] <= self.n - (s - pos) {
                for i in pos + 1..s {
                    self.current[i] = self.current[i - 1] + 1;
                }
                return Some(&self.current);
            }
        }
    }
}

/// Materialize the trie of label words as a model, or `None` when some node
/// exceeds the branch bound.
fn build_trie(
    root_letter: usize,
    words: &[usize],
    depth: usize,
    letter_count: usize,
    atoms: &[String],
    max_branch: usize,
) -> Option<Model> {
    // digits[w][l] = letter at level l+1 of word w
    let digits: Vec<Vec<usize>> = words
        .iter()
        .map(|&w| {
            let mut d = Vec::with_capacity(depth);
            let mut rest = w;
            for _ in 0..depth {
                d.push(rest % letter_count);
                rest /= letter_count;
            }
            d.reverse();
            d
        })
        .collect();

    let atoms_of = |letter: usize| -> Vec<String> {
        atoms
            .iter()
            .enumerate()
            .filter(|(j, _)| letter & (1 << j) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    };

    let mut states = vec![StateDoc {
        id: "s0_0".into(),
        parent: None,
        atoms: atoms_of(root_letter),
    }];
    // prefix -> state id, built level by level
    let mut prefix_state: Vec<(Vec<usize>, String)> = vec![(Vec::new(), "s0_0".into())];
    for level in 1..=depth {
        let mut next_prefixes: Vec<(Vec<usize>, String)> = Vec::new();
        let mut counter = 0usize;
        for (prefix, parent_id) in &prefix_state {
            let mut child_letters = BTreeSet::new();
            for d in &digits {
                if d[..level - 1] == prefix[..] {
                    child_letters.insert(d[level - 1]);
                }
            }
            if child_letters.len() > max_branch {
                return None;
            }
            for letter in child_letters {
                let id = format!("s{level}_{counter}");
                counter += 1;
                states.push(StateDoc {
                    id: id.clone(),
                    parent: Some(parent_id.clone()),
                    atoms: atoms_of(letter),
                });
                let mut p = prefix.clone();
                p.push(letter);
                next_prefixes.push((p, id));
            }
        }
        prefix_state = next_prefixes;
    }

    let doc = ModelDoc {
        depth,
        root: "s0_0".into(),
        states,
    };
    Some(Model::from_doc(&doc).expect("trie model is well formed"))
}

fn contexts_for(model: &Model, mode: ContextMode) -> Vec<Context> {
    match mode {
        ContextMode::EmptyOnly => vec![Context::empty()],
        ContextMode::SingleRule => {
            let n = model.timelines().len();
            let mut out = vec![Context::empty()];
            for mask in 1u64..(1u64 << n) {
                let members: BTreeSet<usize> =
                    (0..n).filter(|t| mask & (1 << t) != 0).collect();
                out.push(Context::empty().with_rule(Rule {
                    name: format!("R{mask}"),
                    members,
                }));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn bounds(depth: usize, branch: usize, atoms: &[&str]) -> OracleBounds {
        OracleBounds::new(depth, branch, atoms)
    }

    #[test]
    fn excluded_future_middle_has_no_counterexample() {
        let f = parse("X p | X ~p").unwrap();
        let out = brute_force(&f, &bounds(2, 2, &["p"])).unwrap();
        assert!(!out.found());
    }

    #[test]
    fn necessitated_future_middle_fails() {
        let f = parse("box X p | box X ~p").unwrap();
        let out = brute_force(&f, &bounds(2, 2, &["p"])).unwrap();
        let OracleOutcome::Counterexample(pt) = out else {
            panic!("expected a counterexample");
        };
        let point = pt.model.point(&pt.context, &pt.leaf, pt.instant).unwrap();
        assert!(!eval(&point, &f).unwrap().value);
    }

    #[test]
    fn antecedent_strengthening_counterexample_is_found() {
        let f = parse("[#t] dia ~p -> [#t & p] dia ~p").unwrap();
        let out = brute_force(&f, &bounds(2, 2, &["p"])).unwrap();
        let OracleOutcome::Counterexample(pt) = out else {
            panic!("expected a counterexample");
        };
        let point = pt.model.point(&pt.context, &pt.leaf, pt.instant).unwrap();
        assert!(!eval(&point, &f).unwrap().value);
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = bounds(3, 2, &["p", "q"]);
        b.budget = 10;
        let f = parse("[p] q -> [q] p").unwrap();
        assert!(matches!(
            brute_force(&f, &b),
            Err(DecideError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn combinations_cover_sizes_then_lex() {
        let mut c = Combinations::new(3, 2);
        let mut all = Vec::new();
        while let Some(x) = c.next() {
            all.push(x.to_vec());
        }
        assert_eq!(
            all,
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2]
            ]
        );
    }
}
