//! Randomized semantic property suites: the temporal and conditional
//! identities, update identities, closedness, derived clauses, and the
//! evaluation-depth bound.

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
fn temporal_pushing_identities_hold() {
    for report in suites::temporal_identity_suites(500, 0x1001) {
        assert_ok(report, 500);
    }
}

#[test]
fn conditional_reduction_identities_hold() {
    for report in suites::conditional_identity_suites(500, 0x1002) {
        assert_ok(report, 500);
    }
}

#[test]
fn update_identities_hold() {
    assert_ok(suites::update_identity_suite(500, 0x1003), 400);
}

#[test]
fn conditional_free_truth_ignores_context() {
    assert_ok(suites::context_independence_suite(500, 0x1004), 400);
}

#[test]
fn conditional_reflexivity_holds() {
    assert_ok(suites::conditional_reflexivity_suite(500, 0x1005), 500);
}

#[test]
fn strict_implication_correspondence_holds() {
    assert_ok(suites::strict_implication_suite(500, 0x1006), 500);
}

#[test]
fn closed_formulas_ignore_the_timeline() {
    assert_ok(suites::closed_independence_suite(500, 0x1007), 500);
}

#[test]
fn derived_clauses_match_desugaring() {
    assert_ok(suites::derived_clause_suite(500, 0x1008), 500);
}

#[test]
fn evaluation_depth_is_bounded_by_horizon() {
    assert_ok(suites::horizon_probe_suite(500, 0x1009), 500);
}

#[test]
fn single_rule_contexts_fold_into_submodels() {
    assert_ok(suites::single_rule_folding_suite(400, 0x100a), 400);
}

#[test]
fn truth_is_truncation_invariant() {
    assert_ok(suites::truncation_suite(400, 0x100b), 200);
}
