//! Reduction and decision sweeps: fragment targets, oracle-checked
//! equivalence of the reduction stages, core splitting, witness replay,
//! and agreement between the decision procedure and the oracle.

use conshn::testgen::suites;

fn assert_ok(report: suites::SuiteReport, min_samples: usize) {
    println!("{}", report.summary());
    assert!(report.ok(), "{}", report.summary());
    assert!(
        report.samples >= min_samples,
        "{} ran only {} samples",
        report.name,
        report.samples
    );
}

#[test]
fn reductions_meet_their_contracts() {
    assert_ok(suites::reduction_contract_suite(300, 0x2001), 300);
}

#[test]
fn core_split_preserves_truth() {
    assert_ok(suites::core_split_suite(300, 0x2002), 300);
}

#[test]
fn basic_sequence_entries_are_implied() {
    assert_ok(suites::basic_sequence_suite(300, 0x2003), 300);
}

#[test]
fn antecedent_strengthening_holds() {
    assert_ok(suites::antecedent_strengthening_suite(200, 0x2004), 200);
}

#[test]
fn decision_procedure_agrees_with_oracle() {
    assert_ok(suites::decide_oracle_agreement_suite(300, 0x2005), 300);
}

#[test]
fn witnesses_replay() {
    assert_ok(suites::witness_replay_suite(300, 0x2006), 300);
}

#[test]
fn axiom_schemas_are_valid() {
    assert_ok(suites::axiom_validity_suite(50, 0x2007), 23 * 50);
}
