//! Randomized suites behind the integration and acceptance targets.
//!
//! Every suite is deterministic given its seed, runs a stated number of
//! samples, and reports failures as printable descriptions instead of
//! panicking, so callers can assert and print uniformly.

use super::Gen;
use crate::decide::{
    brute_force, satisfiable, to_cores, valid, ContextMode, OracleBounds, OracleOutcome,
};
use crate::model::{acceptable, Context, Model, ModelDoc, Rule, StateDoc};
use crate::reduce::{kappa, mu};
use crate::semantics::{
    box_clause, dia_clause, dual_clause, eval, eval_probed, generated_rule, update_context,
};
use crate::syntax::fragment::{is_con_xy, is_one_box};
use crate::syntax::{parse, print, print_sugared, Formula};

#[derive(Debug)]
pub struct SuiteReport {
    pub name: String,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            samples: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            format!("{}: {} samples, zero failures", self.name, self.samples)
        } else {
            format!(
                "{}: {} samples, {} FAILURES, first: {}",
                self.name,
                self.samples,
                self.failures.len(),
                self.failures[0]
            )
        }
    }
}

const ATOMS: [&str; 2] = ["p", "q"];

/// Evaluate two formulas at one random admissible point and record any
/// disagreement.
fn check_equivalence_sample(
    g: &mut Gen,
    report: &mut SuiteReport,
    lhs: &Formula,
    rhs: &Formula,
) {
    let h = lhs.horizon().max(rhs.horizon());
    let depth = (h + g.range(0, 1)).max(1);
    let model = g.model(&ATOMS, depth, 3);
    let context = g.context(&model, 3);
    let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
    let tl = *g.pick(&at);
    let instant = g.range(0, depth - h);
    let pt = model
        .point(&context, model.leaf_id(tl), instant)
        .expect("timeline drawn from the acceptable set");
    report.samples += 1;
    let lv = eval(&pt, lhs).expect("horizon fits by construction");
    let rv = eval(&pt, rhs).expect("horizon fits by construction");
    if lv.value != rv.value {
        report.failures.push(format!(
            "'{}' = {} but '{}' = {} at (leaf {}, instant {})",
            print(lhs),
            lv.value,
            print(rhs),
            rv.value,
            pt.leaf_id(),
            instant
        ));
    }
}

type PairBuilder = fn(&mut Gen) -> (Formula, Formula);

fn small(g: &mut Gen) -> Formula {
    let size = g.range(0, 3);
    let cons = g.range(0, 1);
    g.formula_within(&ATOMS, size, cons, 2)
}

fn small_xy(g: &mut Gen) -> Formula {
    let size = g.range(0, 2);
    loop {
        let f = g.xy_formula(&ATOMS, size);
        if f.horizon() <= 2 {
            return f;
        }
    }
}

/// The eight temporal-pushing identities.
pub fn temporal_identity_suites(samples: usize, seed: u64) -> Vec<SuiteReport> {
    let builders: [(&str, PairBuilder); 8] = [
        ("next over negation", |g| {
            let phi = small(g);
            (phi.clone().not().next(), phi.next().not())
        }),
        ("next over conjunction", |g| {
            let (phi, psi) = (small(g), small(g));
            (
                phi.clone().and(psi.clone()).next(),
                phi.next().and(psi.next()),
            )
        }),
        ("next cancels yesterday", |g| {
            let phi = small(g);
            (phi.clone().yesterday().next(), phi)
        }),
        ("next over conditional", |g| {
            let (alpha, phi) = (small_xy(g), small(g));
            (
                Formula::con(alpha.clone(), phi.clone()).next(),
                Formula::con(alpha.next(), phi.next()),
            )
        }),
        ("yesterday over negation", |g| {
            let phi = small(g);
            (
                phi.clone().not().yesterday(),
                Formula::Bottom.yesterday().or(phi.yesterday().not()),
            )
        }),
        ("yesterday over conjunction", |g| {
            let (phi, psi) = (small(g), small(g));
            (
                phi.clone().and(psi.clone()).yesterday(),
                phi.yesterday().and(psi.yesterday()),
            )
        }),
        ("yesterday absorbs next", |g| {
            let phi = small(g);
            (
                phi.clone().next().yesterday(),
                Formula::Bottom.yesterday().or(phi),
            )
        }),
        ("yesterday over conditional", |g| {
            let (alpha, phi) = (small_xy(g), small(g));
            (
                Formula::con(alpha.clone(), phi.clone()).yesterday(),
                Formula::con(alpha.yesterday(), phi.yesterday()),
            )
        }),
    ];
    run_pair_suites(&builders, samples, seed)
}

/// The five conditional partial-reduction identities, with the dual
/// distribution in its guarded form.
pub fn conditional_identity_suites(samples: usize, seed: u64) -> Vec<SuiteReport> {
    let builders: [(&str, PairBuilder); 5] = [
        ("conditional over conjunction", |g| {
            let (alpha, phi, psi) = (small_xy(g), small(g), small(g));
            (
                Formula::con(alpha.clone(), phi.clone().and(psi.clone())),
                Formula::con(alpha.clone(), phi).and(Formula::con(alpha, psi)),
            )
        }),
        ("conditional over closed disjunct", |g| {
            let (alpha, phi) = (small_xy(g), small(g));
            let chi = {
                let size = g.range(0, 2);
                g.closed_formula(&ATOMS, size)
            };
            (
                Formula::con(alpha.clone(), phi.clone().or(chi.clone())),
                Formula::con(alpha.clone(), phi).or(Formula::con(alpha, chi)),
            )
        }),
        ("conditional collapse", |g| {
            let (alpha, beta, gamma) = (small_xy(g), small_xy(g), small_xy(g));
            (
                Formula::con(alpha.clone(), Formula::con(beta.clone(), gamma.clone())),
                Formula::con(alpha.and(beta), gamma),
            )
        }),
        ("guarded dual collapse", |g| {
            let (alpha, beta, gamma) = (small_xy(g), small_xy(g), small_xy(g));
            (
                Formula::con(alpha.clone(), Formula::dual(beta.clone(), gamma.clone())),
                Formula::con(alpha.clone(), Formula::Bottom)
                    .or(Formula::dual(alpha.and(beta), gamma)),
            )
        }),
        ("conditional as strict implication", |g| {
            let (alpha, beta) = (small_xy(g), small_xy(g));
            (
                Formula::con(alpha.clone(), beta.clone()),
                alpha.implies(beta).boxed(),
            )
        }),
    ];
    run_pair_suites(&builders, samples, seed)
}

fn run_pair_suites(
    builders: &[(&str, PairBuilder)],
    samples: usize,
    seed: u64,
) -> Vec<SuiteReport> {
    builders
        .iter()
        .enumerate()
        .map(|(i, (name, build))| {
            let mut g = Gen::new(seed ^ (i as u64 + 1) * 0x9e37);
            let mut report = SuiteReport::new(name);
            for _ in 0..samples {
                let (lhs, rhs) = build(&mut g);
                check_equivalence_sample(&mut g, &mut report, &lhs, &rhs);
            }
            report
        })
        .collect()
}

/// The two update identities over acceptable-timeline sets: chained updates
/// at one instant collapse to the conjunction, and an update intersects the
/// current set with the generated rule.
pub fn update_identity_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("update identities over acceptable sets");
    while report.samples < samples {
        let depth = g.range(1, 3);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 3);
        let (alpha, beta) = (small_xy(&mut g), small_xy(&mut g));
        let h = alpha.horizon().max(beta.horizon());
        if h > depth {
            continue;
        }
        let i = g.range(0, depth - h);
        report.samples += 1;

        let step1 = update_context(&model, &context, &alpha, i).unwrap();
        let chained = update_context(&model, &step1, &beta, i).unwrap();
        let joint =
            update_context(&model, &context, &alpha.clone().and(beta.clone()), i).unwrap();
        if acceptable(&model, &chained) != acceptable(&model, &joint) {
            report
                .failures
                .push(format!("chained vs joint update differ for '{}', '{}'", print(&alpha), print(&beta)));
        }

        let gen_rule = generated_rule(&model, &Context::empty(), &alpha, i).unwrap();
        let expected: std::collections::BTreeSet<_> = acceptable(&model, &context)
            .intersection(&gen_rule.members)
            .copied()
            .collect();
        if acceptable(&model, &step1) != expected {
            report.failures.push(format!(
                "update is not intersection with the generated rule for '{}'",
                print(&alpha)
            ));
        }
    }
    report
}

/// Conditional-free truth is independent of the context, so generated
/// rules agree across contexts.
pub fn context_independence_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("conditional-free context independence");
    while report.samples < samples {
        let depth = g.range(1, 3);
        let model = g.model(&ATOMS, depth, 3);
        let alpha = small_xy(&mut g);
        if alpha.horizon() > depth {
            continue;
        }
        let i = g.range(0, depth - alpha.horizon());
        report.samples += 1;
        let c1 = g.context(&model, 3);
        let c2 = g.context(&model, 3);
        let r1 = generated_rule(&model, &c1, &alpha, i).unwrap();
        let r2 = generated_rule(&model, &c2, &alpha, i).unwrap();
        if r1.members != r2.members {
            report.failures.push(format!(
                "generated rule for '{}' at {} depends on the context",
                print(&alpha),
                i
            ));
        }
    }
    report
}

/// `[α]α` holds at every admissible point.
pub fn conditional_reflexivity_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("conditional reflexivity");
    for _ in 0..samples {
        let alpha = small_xy(&mut g);
        let f = Formula::con(alpha.clone(), alpha);
        let tautology = Formula::top();
        check_equivalence_sample(&mut g, &mut report, &f, &tautology);
    }
    report
}

/// `[α]β <-> box (α -> β)` for conditional-free β holds everywhere.
pub fn strict_implication_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("conditional matches strict implication on XY consequents");
    for _ in 0..samples {
        let (alpha, beta) = (small_xy(&mut g), small_xy(&mut g));
        let f = Formula::con(alpha.clone(), beta.clone()).iff(alpha.implies(beta).boxed());
        check_equivalence_sample(&mut g, &mut report, &f, &Formula::top());
    }
    report
}

/// Closed formulas have timeline-independent truth values.
pub fn closed_independence_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("closed formulas ignore the designated timeline");
    for _ in 0..samples {
        let size = g.range(0, 2);
        let chi = g.closed_formula(&ATOMS, size);
        let h = chi.horizon();
        let depth = (h + g.range(0, 1)).max(1);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 3);
        let i = g.range(0, depth - h);
        report.samples += 1;
        let values: Vec<bool> = acceptable(&model, &context)
            .into_iter()
            .map(|tl| {
                let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
                eval(&pt, &chi).unwrap().value
            })
            .collect();
        if values.windows(2).any(|w| w[0] != w[1]) {
            report
                .failures
                .push(format!("'{}' varies across timelines", print(&chi)));
        }
    }
    report
}

/// The quantifier clauses for `box`, `dia` and the conditional dual agree
/// with evaluating their desugared trees.
pub fn derived_clause_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("derived operator clauses match desugaring");
    for _ in 0..samples {
        let phi = small(&mut g);
        let alpha = small_xy(&mut g);
        let h = phi.horizon().max(alpha.horizon());
        let depth = (h + g.range(0, 1)).max(1);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 3);
        let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
        let tl = *g.pick(&at);
        let i = g.range(0, depth - h);
        let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
        report.samples += 1;

        let boxed = eval(&pt, &phi.clone().boxed()).unwrap().value;
        if boxed != box_clause(&pt, &phi).unwrap() {
            report.failures.push(format!("box clause for '{}'", print(&phi)));
        }
        let dia = eval(&pt, &phi.clone().dia()).unwrap().value;
        if dia != dia_clause(&pt, &phi).unwrap() {
            report.failures.push(format!("dia clause for '{}'", print(&phi)));
        }
        let dual = eval(&pt, &Formula::dual(alpha.clone(), phi.clone()))
            .unwrap()
            .value;
        if dual != dual_clause(&pt, &alpha, &phi).unwrap() {
            report.failures.push(format!(
                "dual clause for '<{}> {}'",
                print(&alpha),
                print(&phi)
            ));
        }
    }
    report
}

/// Evaluation reads no state deeper than instant plus horizon.
pub fn horizon_probe_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("evaluation depth bounded by instant plus horizon");
    for _ in 0..samples {
        let f = small(&mut g);
        let h = f.horizon();
        let depth = (h + g.range(0, 2)).max(1);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 2);
        let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
        let tl = *g.pick(&at);
        let i = g.range(0, depth - h);
        let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
        report.samples += 1;
        let (_, deepest) = eval_probed(&pt, &f).unwrap();
        if deepest > i + h {
            report.failures.push(format!(
                "'{}' read level {} from instant {} with horizon {}",
                print(&f),
                deepest,
                i,
                h
            ));
        }
    }
    report
}

/// Parse after print is the identity, in both rendering styles.
pub fn round_trip_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("parse after print is the identity");
    for _ in 0..samples {
        let size = g.range(0, 10);
        let f = g.any_formula(&["p", "q", "r"], size);
        report.samples += 1;
        match parse(&print(&f)) {
            Ok(back) if back == f => {}
            _ => {
                report.failures.push(format!("core style: '{}'", print(&f)));
                continue;
            }
        }
        match parse(&print_sugared(&f)) {
            Ok(back) if back == f => {}
            _ => report
                .failures
                .push(format!("sugared style: '{}'", print_sugared(&f))),
        }
    }
    report
}

/// A single-rule context is the empty context on the submodel spanned by
/// the rule. This is the folding the oracle's enumeration relies on.
pub fn single_rule_folding_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("single-rule contexts fold into submodels");
    for _ in 0..samples {
        let f = small(&mut g);
        let h = f.horizon();
        let depth = (h + g.range(0, 1)).max(1);
        let model = g.model(&ATOMS, depth, 3);
        let n = model.timelines().len();
        let mut members = std::collections::BTreeSet::new();
        for t in 0..n {
            if g.chance(0.5) {
                members.insert(t);
            }
        }
        let anchor = g.range(0, n - 1);
        members.insert(anchor);
        let context = Context::empty().with_rule(Rule {
            name: "R".into(),
            members: members.clone(),
        });
        let i = g.range(0, depth - h);
        report.samples += 1;

        let sub = submodel(&model, &members);
        for &tl in &members {
            let leaf = model.leaf_id(tl);
            let big = model.point(&context, leaf, i).unwrap();
            let small_pt = sub.point(&Context::empty(), leaf, i).unwrap();
            let lv = eval(&big, &f).unwrap().value;
            let rv = eval(&small_pt, &f).unwrap().value;
            if lv != rv {
                report.failures.push(format!(
                    "'{}' differs between rule context and submodel at leaf {leaf}",
                    print(&f)
                ));
            }
        }
    }
    report
}

/// Submodel spanned by a set of timelines.
fn submodel(model: &Model, timelines: &std::collections::BTreeSet<usize>) -> Model {
    let mut keep = std::collections::BTreeSet::new();
    for &tl in timelines {
        for &s in &model.timeline(tl).path {
            keep.insert(s);
        }
    }
    let doc = model.to_doc();
    let kept_ids: std::collections::BTreeSet<String> = keep
        .iter()
        .map(|&s| model.state_id(s).to_string())
        .collect();
    let states: Vec<StateDoc> = doc
        .states
        .into_iter()
        .filter(|s| kept_ids.contains(&s.id))
        .collect();
    Model::from_doc(&ModelDoc {
        depth: doc.depth,
        root: doc.root,
        states,
    })
    .expect("paths of a tree form a tree")
}

/// Truth is invariant under truncating the model below instant + horizon.
pub fn truncation_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("truth is invariant under depth truncation");
    while report.samples < samples {
        let f = small(&mut g);
        let h = f.horizon();
        let depth = (h + g.range(1, 2)).max(1);
        let model = g.model(&ATOMS, depth, 2);
        let context = g.context(&model, 2);
        let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
        let tl = *g.pick(&at);
        let i = g.range(0, depth - h);
        let cut = (i + h).max(1);
        if cut >= depth {
            continue;
        }
        report.samples += 1;

        let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
        let full = eval(&pt, &f).unwrap().value;

        let (small_model, leaf_map) = truncate(&model, cut);
        let projected = Context {
            rules: context
                .rules
                .iter()
                .map(|r| Rule {
                    name: r.name.clone(),
                    members: r.members.iter().map(|t| leaf_map[t]).collect(),
                })
                .collect(),
        };
        let leaf = small_model.leaf_id(leaf_map[&tl]).to_string();
        let spt = small_model.point(&projected, &leaf, i).unwrap();
        let cut_value = eval(&spt, &f).unwrap().value;
        if full != cut_value {
            report.failures.push(format!(
                "'{}' differs after truncating depth {} to {}",
                print(&f),
                depth,
                cut
            ));
        }
    }
    report
}

/// Truncate to the given depth; returns the new model and the map from old
/// timeline ids to new ones.
fn truncate(model: &Model, depth: usize) -> (Model, std::collections::BTreeMap<usize, usize>) {
    let doc = model.to_doc();
    let mut level = std::collections::BTreeMap::new();
    level.insert(doc.root.clone(), 0usize);
    let mut states = Vec::new();
    for s in &doc.states {
        let l = match &s.parent {
            None => 0,
            Some(p) => level[p] + 1,
        };
        level.insert(s.id.clone(), l);
        if l <= depth {
            states.push(s.clone());
        }
    }
    let small = Model::from_doc(&ModelDoc {
        depth,
        root: doc.root,
        states,
    })
    .expect("prefix of a uniform tree is a uniform tree");
    let map = (0..model.timelines().len())
        .map(|tl| {
            let cut_state = model.timeline(tl).path[depth];
            let leaf = model.state_id(cut_state);
            (tl, small.timeline_of_leaf(leaf).unwrap())
        })
        .collect();
    (small, map)
}

fn equivalence_demand(f: &Formula, g: &Formula) -> usize {
    // a separating point falsifies one implication direction; that needs
    // witnesses for the conditionals the failing side evaluates
    // existentially
    fn polarity_count(f: &Formula, positive: bool) -> usize {
        match f {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::Not(g) => polarity_count(g, !positive),
            Formula::Next(g) | Formula::Yesterday(g) => polarity_count(g, positive),
            Formula::And(a, b) => polarity_count(a, positive) + polarity_count(b, positive),
            Formula::Con(_, b) => usize::from(positive) + polarity_count(b, positive),
        }
    }
    let fwd = polarity_count(f, false) + polarity_count(g, true);
    let bwd = polarity_count(g, false) + polarity_count(f, true);
    1 + fwd.max(bwd)
}

fn no_separating_point(f: &Formula, g: &Formula) -> Result<bool, String> {
    let mut bounds = OracleBounds::new(3, 2, &ATOMS);
    bounds.context_mode = ContextMode::EmptyOnly;
    bounds.max_timelines = Some(equivalence_demand(f, g));
    match brute_force(&f.clone().iff(g.clone()), &bounds) {
        Ok(out) => Ok(!out.found()),
        Err(e) => Err(e.to_string()),
    }
}

/// Reduction contracts: fragment targets plus oracle-checked equivalence
/// of input, pushed form, and flattened form.
pub fn reduction_contract_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("reduction fragments and equivalences");
    while report.samples < samples {
        // stratified so oracle spaces stay small: single-atom formulas may
        // use the full horizon, two-atom ones keep conditionals scarce
        let (atoms, cons, horizon): (&[&str], usize, usize) = match report.samples % 3 {
            0 => (&["p"], 2, 2),
            1 => (&["p", "q"], 1, 2),
            _ => (&["p", "q"], 2, 1),
        };
        let size = g.range(2, 6);
        let f = {
            let c = g.range(0, cons);
            g.formula_within(atoms, size, c, horizon)
        };
        report.samples += 1;

        let k = match kappa(&f) {
            Ok(k) => k,
            Err(e) => {
                report.failures.push(format!("kappa failed on '{}': {e}", print(&f)));
                continue;
            }
        };
        if !is_con_xy(&k) {
            report
                .failures
                .push(format!("kappa left the target fragment on '{}'", print(&f)));
            continue;
        }
        let m = match mu(&k) {
            Ok(m) => m,
            Err(e) => {
                report.failures.push(format!("mu failed on '{}': {e}", print(&k)));
                continue;
            }
        };
        if !is_one_box(&m) {
            report
                .failures
                .push(format!("mu left the target fragment on '{}'", print(&k)));
            continue;
        }
        match no_separating_point(&f, &k) {
            Ok(true) => {}
            Ok(false) => report
                .failures
                .push(format!("oracle separated '{}' from its pushed form", print(&f))),
            Err(e) => report.failures.push(format!("oracle error: {e}")),
        }
        match no_separating_point(&k, &m) {
            Ok(true) => {}
            Ok(false) => report.failures.push(format!(
                "oracle separated '{}' from its flattened form",
                print(&k)
            )),
            Err(e) => report.failures.push(format!("oracle error: {e}")),
        }
    }
    report
}

/// Core split preserves truth: a one-box formula agrees pointwise with the
/// disjunction of its cores.
pub fn core_split_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("core split preserves truth");
    while report.samples < samples {
        let size = g.range(1, 4);
        let boxes = g.range(0, 2);
        let mut f = g.nxy_formula(&ATOMS, size, 1);
        for _ in 0..boxes {
            let bsz = g.range(0, 2);
            let b = g.nxy_formula(&ATOMS, bsz, 1);
            let side = if g.chance(0.5) {
                b.boxed()
            } else {
                b.boxed().not()
            };
            f = f.and(side);
        }
        if f.horizon() > 2 {
            continue;
        }
        let cores = match to_cores(&f) {
            Ok(c) => c,
            Err(e) => {
                report.failures.push(format!("to_cores failed: {e}"));
                continue;
            }
        };
        let disjunction = cores
            .iter()
            .map(|c| c.to_formula())
            .reduce(|a, b| a.or(b))
            .unwrap_or(Formula::Bottom);
        let h = f.horizon().max(disjunction.horizon());
        let depth = h.max(1);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 2);
        let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
        let tl = *g.pick(&at);
        let i = g.range(0, depth - h);
        let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
        report.samples += 1;
        let lv = eval(&pt, &f).unwrap().value;
        let rv = eval(&pt, &disjunction).unwrap().value;
        if lv != rv {
            report
                .failures
                .push(format!("cores of '{}' differ at a point", print(&f)));
        }
    }
    report
}

/// Basic-sequence entries are implied: where a core formula holds, each
/// `dia (H & I_j)` and `dia (H & L)` holds.
pub fn basic_sequence_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("basic sequence entries are implied");
    while report.samples < samples {
        let hsz = g.range(0, 2);
        let h_part = g.nxy_formula(&ATOMS, hsz, 1);
        let diamonds: Vec<Formula> = (0..g.range(1, 2))
            .map(|_| {
                let sz = g.range(0, 2);
                g.nxy_formula(&ATOMS, sz, 1)
            })
            .collect();
        let lsz = g.range(0, 2);
        let l_part = g.nxy_formula(&ATOMS, lsz, 1);
        let cf = crate::decide::CoreFormula::new(h_part, diamonds, l_part);
        let f = cf.to_formula();
        let h = f.horizon();
        if h > 2 {
            continue;
        }
        let depth = h.max(1);
        let model = g.model(&ATOMS, depth, 3);
        let context = g.context(&model, 2);
        let at: Vec<_> = acceptable(&model, &context).into_iter().collect();
        let tl = *g.pick(&at);
        let i = g.range(0, depth - h);
        let pt = model.point(&context, model.leaf_id(tl), i).unwrap();
        report.samples += 1;
        if !eval(&pt, &f).unwrap().value {
            continue;
        }
        for entry in cf.basic_sequence() {
            if !eval(&pt, &entry.clone().dia()).unwrap().value {
                report.failures.push(format!(
                    "core holds but 'dia ({})' fails",
                    print(&entry)
                ));
            }
        }
    }
    report
}

/// Antecedent strengthening for conditional-free consequents: when
/// `α -> β` is valid by construction, `[β]γ -> [α]γ` is valid.
pub fn antecedent_strengthening_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("antecedent strengthening on XY consequents");
    for _ in 0..samples {
        let (gamma, delta, zeta) = (small_xy(&mut g), small_xy(&mut g), small_xy(&mut g));
        let alpha = gamma.clone().and(delta); // alpha -> gamma is valid
        let beta = gamma;
        let f = Formula::con(beta, zeta.clone()).implies(Formula::con(alpha, zeta));
        report.samples += 1;
        match valid(&f) {
            Ok(v) if v.is_valid() => {}
            Ok(_) => report
                .failures
                .push(format!("'{}' reported invalid", print(&f))),
            Err(e) => report.failures.push(format!("decide error: {e}")),
        }
    }
    report
}

/// Validity and the bounded oracle never contradict each other; every
/// countermodel replays false.
pub fn decide_oracle_agreement_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("decision procedure agrees with the oracle");
    while report.samples < samples {
        let (atoms, cons, horizon): (&[&str], usize, usize) = match report.samples % 3 {
            0 => (&["p"], 2, 2),
            1 => (&["p", "q"], 1, 1),
            _ => (&["p", "q"], 1, 2),
        };
        let size = g.range(1, 6);
        let f = {
            let c = g.range(0, cons);
            g.formula_within(atoms, size, c, horizon)
        };
        report.samples += 1;
        match valid(&f) {
            Ok(v) => {
                if let Some(w) = v.countermodel() {
                    match eval(&w.point(), &f) {
                        Ok(verdict) if !verdict.value => {}
                        Ok(_) => report.failures.push(format!(
                            "countermodel for '{}' does not replay false",
                            print(&f)
                        )),
                        Err(e) => report
                            .failures
                            .push(format!("countermodel replay error for '{}': {e}", print(&f))),
                    }
                } else {
                    let mut bounds = OracleBounds::new(3, 2, &ATOMS);
                    bounds.context_mode = ContextMode::EmptyOnly;
                    match brute_force(&f, &bounds) {
                        Ok(OracleOutcome::NoCounterexample) => {}
                        Ok(OracleOutcome::Counterexample(_)) => report.failures.push(format!(
                            "'{}' judged valid but the oracle found a counterexample",
                            print(&f)
                        )),
                        Err(e) => report.failures.push(format!("oracle error: {e}")),
                    }
                }
            }
            Err(e) => report
                .failures
                .push(format!("decide error on '{}': {e}", print(&f))),
        }
    }
    report
}

/// Satisfiability witnesses replay true.
pub fn witness_replay_suite(samples: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("satisfiability witnesses replay");
    while report.samples < samples {
        let size = g.range(1, 6);
        let f = {
            let c = g.range(0, 2);
            g.formula_within(&ATOMS, size, c, 2)
        };
        report.samples += 1;
        match satisfiable(&f) {
            Ok(r) => {
                if let Some(w) = r.witness() {
                    match eval(&w.point(), &f) {
                        Ok(v) if v.value => {}
                        other => report.failures.push(format!(
                            "witness for '{}' replays {:?}",
                            print(&f),
                            other
                        )),
                    }
                }
            }
            Err(e) => report
                .failures
                .push(format!("decide error on '{}': {e}", print(&f))),
        }
    }
    report
}

/// Fifty random instances per axiom schema, all judged valid.
pub fn axiom_validity_suite(per_schema: usize, seed: u64) -> SuiteReport {
    let mut g = Gen::new(seed);
    let mut report = SuiteReport::new("axiom schemas instantiate to validities");
    let check = |report: &mut SuiteReport, g: &mut Gen, make: &dyn Fn(&mut Gen) -> Formula| {
        for _ in 0..per_schema {
            let f = make(g);
            report.samples += 1;
            match valid(&f) {
                Ok(v) if v.is_valid() => {}
                Ok(_) => report
                    .failures
                    .push(format!("'{}' reported invalid", print(&f))),
                Err(e) => report
                    .failures
                    .push(format!("decide error on '{}': {e}", print(&f))),
            }
        }
    };

    let tiny = |g: &mut Gen| -> Formula {
        let size = g.range(0, 2);
        g.formula_within(&ATOMS, size, 1, 1)
    };
    let tiny_xy = |g: &mut Gen| -> Formula {
        loop {
            let size = g.range(0, 2);
            let f = g.xy_formula(&ATOMS, size);
            if f.horizon() <= 1 {
                return f;
            }
        }
    };
    let tiny_pl = |g: &mut Gen| -> Formula {
        if g.chance(0.3) {
            Formula::atom("p").not()
        } else {
            Formula::atom(*g.pick(&ATOMS))
        }
    };
    let tiny_closed = |g: &mut Gen| -> Formula {
        let size = g.range(0, 1);
        let f = g.closed_formula(&ATOMS, size);
        if f.horizon() <= 1 {
            f
        } else {
            Formula::con(Formula::atom("p"), Formula::atom("q"))
        }
    };

    type Mk = Box<dyn Fn(&mut Gen) -> Formula>;
    let schemas: Vec<(&str, Mk)> = vec![
        ("pl1", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone().implies(b.implies(a))
        })),
        ("pl2", Box::new(move |g: &mut Gen| {
            let (a, b, c) = (tiny(g), tiny(g), tiny(g));
            a.clone()
                .implies(b.clone().implies(c.clone()))
                .implies(a.clone().implies(b).implies(a.implies(c)))
        })),
        ("pl3", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone()
                .not()
                .implies(b.clone().not())
                .implies(b.implies(a))
        })),
        ("pl4", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone().and(b).implies(a)
        })),
        ("pl5", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.and(b.clone()).implies(b)
        })),
        ("pl6", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone().implies(b.clone().implies(a.and(b)))
        })),
        ("pl7", Box::new(move |g: &mut Gen| Formula::Bottom.implies(tiny(g)))),
        ("2a", Box::new(move |g: &mut Gen| {
            let a = tiny(g);
            a.clone().not().next().iff(a.next().not())
        })),
        ("2b", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone()
                .and(b.clone())
                .next()
                .iff(a.next().and(b.next()))
        })),
        ("2c", Box::new(move |g: &mut Gen| {
            let a = tiny(g);
            a.clone().yesterday().next().iff(a)
        })),
        ("2d", Box::new(move |g: &mut Gen| {
            let (al, a) = (tiny_xy(g), tiny(g));
            Formula::con(al.clone(), a.clone())
                .next()
                .iff(Formula::con(al.next(), a.next()))
        })),
        ("2e", Box::new(move |_g: &mut Gen| Formula::top().not().next().not())),
        ("3a", Box::new(move |g: &mut Gen| {
            let a = tiny(g);
            a.clone()
                .not()
                .yesterday()
                .iff(Formula::Bottom.yesterday().or(a.yesterday().not()))
        })),
        ("3b", Box::new(move |g: &mut Gen| {
            let (a, b) = (tiny(g), tiny(g));
            a.clone()
                .and(b.clone())
                .yesterday()
                .iff(a.yesterday().and(b.yesterday()))
        })),
        ("3c", Box::new(move |g: &mut Gen| {
            let a = tiny(g);
            a.clone()
                .next()
                .yesterday()
                .iff(Formula::Bottom.yesterday().or(a))
        })),
        ("3d", Box::new(move |g: &mut Gen| {
            let (al, a) = (tiny_xy(g), tiny(g));
            Formula::con(al.clone(), a.clone())
                .yesterday()
                .iff(Formula::con(al.yesterday(), a.yesterday()))
        })),
        ("3e", Box::new(move |g: &mut Gen| {
            let a = tiny_pl(g);
            Formula::Bottom
                .yesterday()
                .dia()
                .implies(a.clone().dia().implies(a))
        })),
        ("4a", Box::new(move |g: &mut Gen| {
            let (al, a, b) = (tiny_xy(g), tiny(g), tiny(g));
            Formula::con(al.clone(), a.clone().and(b.clone()))
                .iff(Formula::con(al.clone(), a).and(Formula::con(al, b)))
        })),
        ("4b", Box::new(move |g: &mut Gen| {
            let (al, a, chi) = (tiny_xy(g), tiny(g), tiny_closed(g));
            Formula::con(al.clone(), a.clone().or(chi.clone()))
                .iff(Formula::con(al.clone(), a).or(Formula::con(al, chi)))
        })),
        ("4c", Box::new(move |g: &mut Gen| {
            let (al, be, ga) = (tiny_xy(g), tiny_xy(g), tiny_xy(g));
            Formula::con(al.clone(), Formula::con(be.clone(), ga.clone()))
                .iff(Formula::con(al.and(be), ga))
        })),
        ("4d", Box::new(move |g: &mut Gen| {
            let (al, be, ga) = (tiny_xy(g), tiny_xy(g), tiny_xy(g));
            Formula::con(al.clone(), Formula::dual(be.clone(), ga.clone())).iff(
                Formula::con(al.clone(), Formula::Bottom)
                    .or(Formula::dual(al.and(be), ga)),
            )
        })),
        ("4e", Box::new(move |g: &mut Gen| {
            let (al, be) = (tiny_xy(g), tiny_xy(g));
            Formula::con(al.clone(), be.clone()).iff(al.implies(be).boxed())
        })),
        ("5", Box::new(move |g: &mut Gen| {
            let al = tiny_xy(g);
            al.clone().boxed().implies(al)
        })),
    ];
    for (_, make) in &schemas {
        check(&mut report, &mut g, make.as_ref());
    }
    report
}
