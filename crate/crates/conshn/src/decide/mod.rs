//! Satisfiability and validity for the full language.
//!
//! The pipeline is: push temporal operators inward, eliminate nested
//! conditionals, split into core formulas, and decide each core by atomic
//! sequence search. Every satisfying answer is replayed through the
//! evaluator before being returned; a replay failure aborts loudly because
//! it means the procedure itself is broken. The independent brute-force
//! oracle lives in [`oracle`].

mod cores;
mod oracle;
mod sat;

pub use cores::{to_cores, CoreFormula};
pub use oracle::{brute_force, ContextMode, OracleBounds, OracleOutcome, OraclePoint};
pub use sat::{element_sat_instants, sat_core, sat_core_padded, SatOutcome, SatWitness};

use crate::reduce::{kappa, mu, ReduceError};
use crate::semantics::{eval, EvalError};
use crate::syntax::{print, Formula};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Eval(EvalError),
    #[error("formula '{formula}' is not in the {expected} fragment")]
    FragmentViolation { formula: String, expected: String },
    #[error("internal soundness failure: witness does not replay '{formula}'")]
    WitnessVerificationFailed { formula: String },
    #[error("oracle budget exceeded: {evals} evaluations against a budget of {budget}")]
    BudgetExceeded { evals: u64, budget: u64 },
}

#[derive(Debug, Clone)]
pub enum SatResult {
    Sat(SatWitness),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn witness(&self) -> Option<&SatWitness> {
        match self {
            SatResult::Sat(w) => Some(w),
            SatResult::Unsat => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Validity {
    Valid,
    /// The witness satisfies the negated formula.
    Invalid(SatWitness),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn countermodel(&self) -> Option<&SatWitness> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(w) => Some(w),
        }
    }
}

/// Decide satisfiability; a returned witness replays `f` under the
/// evaluator.
pub fn satisfiable(f: &Formula) -> Result<SatResult, DecideError> {
    let reduced = mu(&kappa(f)?)?;
    let cores = to_cores(&reduced)?;
    let pad = f.horizon();
    for cf in &cores {
        let own = cf
            .diamonds
            .iter()
            .chain([&cf.box_part, &cf.free_part])
            .map(Formula::horizon)
            .max()
            .unwrap_or(0);
        if let SatOutcome::Witness(w) = sat_core_padded(cf, pad.max(own))? {
            let v = eval(&w.point(), f).map_err(DecideError::Eval)?;
            if !v.value {
                return Err(DecideError::WitnessVerificationFailed { formula: print(f) });
            }
            return Ok(SatResult::Sat(w));
        }
    }
    Ok(SatResult::Unsat)
}

/// Decide validity via satisfiability of the negation; countermodels replay
/// false under the evaluator.
pub fn valid(f: &Formula) -> Result<Validity, DecideError> {
    match satisfiable(&f.clone().not())? {
        SatResult::Unsat => Ok(Validity::Valid),
        SatResult::Sat(w) => Ok(Validity::Invalid(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval;
    use crate::syntax::parse;

    fn sat(text: &str) -> SatResult {
        satisfiable(&parse(text).unwrap()).unwrap()
    }

    fn validity(text: &str) -> Validity {
        valid(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn contradictions_are_unsat() {
        assert!(!sat("p & ~p").is_sat());
        assert!(!sat("box p & dia ~p").is_sat());
    }

    #[test]
    fn negated_tiger_conditional_is_satisfiable() {
        let f = parse("~([X l] X ~a)").unwrap();
        let r = satisfiable(&f).unwrap();
        let w = r.witness().expect("satisfiable");
        assert!(eval(&w.point(), &f).unwrap().value);
    }

    #[test]
    fn open_future_is_satisfiably_open() {
        assert!(sat("~(box X p | box X ~p)").is_sat());
    }

    #[test]
    fn conditional_reflexivity_is_valid() {
        assert!(validity("[X p] X p").is_valid());
        assert!(validity("[p] p").is_valid());
    }

    #[test]
    fn factual_necessitation_is_invalid() {
        let f = parse("p -> box p").unwrap();
        let v = valid(&f).unwrap();
        let w = v.countermodel().expect("invalid");
        assert!(!eval(&w.point(), &f).unwrap().value);
    }

    #[test]
    fn conditional_differs_from_strict_implication() {
        let v = validity("[p] box p <-> box (p -> box p)");
        assert!(!v.is_valid());
    }

    #[test]
    fn corrected_dual_distribution_axiom() {
        assert!(validity("[#f] <#t> #t <-> ([#f] #f | <#f & #t> #t)").is_valid());
        assert!(!validity("[#f] <#t> #t <-> <#f & #t> #t").is_valid());
    }

    #[test]
    fn past_necessity_schemas_are_valid() {
        assert!(validity("[Y X X p] Y X X p").is_valid());
        assert!(validity("[X p] Y X X p").is_valid());
        assert!(validity("X p -> Y X X p").is_valid());
    }

    #[test]
    fn root_vacuous_past_invalidates_premise_five() {
        let v = validity("box Y X X p -> box X p");
        let w = v.countermodel().expect("fails at the root instant");
        assert_eq!(w.instant, 0);
    }
}
