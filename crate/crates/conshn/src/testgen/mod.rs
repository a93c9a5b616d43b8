//! Deterministic random generators for formulas, models and contexts.

use crate::model::{Context, Model, ModelDoc, Rule, StateDoc};
use crate::syntax::Formula;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Conditional-free formula over the given atoms.
    pub fn xy_formula(&mut self, atoms: &[&str], size: usize) -> Formula {
        if size == 0 {
            return if self.chance(0.12) {
                Formula::Bottom
            } else {
                Formula::atom(*self.pick(atoms))
            };
        }
        match self.range(0, 4) {
            0 => self.xy_formula(atoms, size - 1).not(),
            1 => {
                let left = size / 2;
                self.xy_formula(atoms, left)
                    .and(self.xy_formula(atoms, size - 1 - left))
            }
            2 => self.xy_formula(atoms, size - 1).next(),
            3 => self.xy_formula(atoms, size - 1).yesterday(),
            _ => self.xy_formula(atoms, 0),
        }
    }

    /// Formula with conditionals, antecedents conditional-free; at most
    /// `cons` conditional nodes total and antecedent/body sizes bounded.
    pub fn formula(&mut self, atoms: &[&str], size: usize, cons: usize) -> Formula {
        if size == 0 || (cons == 0 && self.chance(0.2)) {
            let sz = self.range(0, 1);
            return self.xy_formula(atoms, sz);
        }
        let choice = self.range(0, if cons > 0 { 5 } else { 3 });
        match choice {
            0 => self.formula(atoms, size - 1, cons).not(),
            1 => {
                let left = size / 2;
                let lc = cons / 2;
                self.formula(atoms, left, lc)
                    .and(self.formula(atoms, size - 1 - left, cons - lc))
            }
            2 => {
                if self.chance(0.5) {
                    self.formula(atoms, size - 1, cons).next()
                } else {
                    self.formula(atoms, size - 1, cons).yesterday()
                }
            }
            3 => {
                let sz = self.range(0, 2);
                self.xy_formula(atoms, sz)
            }
            _ => {
                let asz = self.range(0, 2);
                let antecedent = self.xy_formula(atoms, asz);
                let body = self.formula(atoms, size.saturating_sub(2), cons - 1);
                Formula::con(antecedent, body)
            }
        }
    }

    /// Formula whose forward horizon fits within `max_horizon`, by
    /// resampling.
    pub fn formula_within(
        &mut self,
        atoms: &[&str],
        size: usize,
        cons: usize,
        max_horizon: usize,
    ) -> Formula {
        loop {
            let f = self.formula(atoms, size, cons);
            if f.horizon() <= max_horizon {
                return f;
            }
        }
    }

    /// Conditional-free formula with homogeneous temporal prefixes.
    pub fn nxy_formula(&mut self, atoms: &[&str], size: usize, max_offset: usize) -> Formula {
        if size == 0 {
            let offset = self.range(0, max_offset);
            let future = self.chance(0.5);
            let mut f = if self.chance(0.15) {
                Formula::Bottom
            } else {
                Formula::atom(*self.pick(atoms))
            };
            for _ in 0..offset {
                f = if future { f.next() } else { f.yesterday() };
            }
            return f;
        }
        if self.chance(0.5) {
            self.nxy_formula(atoms, size - 1, max_offset).not()
        } else {
            let left = size / 2;
            self.nxy_formula(atoms, left, max_offset)
                .and(self.nxy_formula(atoms, size - 1 - left, max_offset))
        }
    }

    /// Boolean combination of conditionals with conditional-free
    /// antecedents.
    pub fn closed_formula(&mut self, atoms: &[&str], size: usize) -> Formula {
        if size == 0 {
            let asz = self.range(0, 1);
            let bsz = self.range(0, 1);
            return Formula::con(
                self.xy_formula(atoms, asz),
                self.xy_formula(atoms, bsz),
            );
        }
        match self.range(0, 2) {
            0 => self.closed_formula(atoms, size - 1).not(),
            1 => {
                let left = size / 2;
                self.closed_formula(atoms, left)
                    .and(self.closed_formula(atoms, size - 1 - left))
            }
            _ => self.closed_formula(atoms, 0),
        }
    }

    /// Arbitrary formula tree for round-trip tests, including shapes the
    /// other samplers avoid.
    pub fn any_formula(&mut self, atoms: &[&str], size: usize) -> Formula {
        if size == 0 {
            return if self.chance(0.15) {
                Formula::Bottom
            } else {
                Formula::atom(*self.pick(atoms))
            };
        }
        match self.range(0, 5) {
            0 => self.any_formula(atoms, size - 1).not(),
            1 => {
                let left = size / 2;
                self.any_formula(atoms, left)
                    .and(self.any_formula(atoms, size - 1 - left))
            }
            2 => self.any_formula(atoms, size - 1).next(),
            3 => self.any_formula(atoms, size - 1).yesterday(),
            _ => {
                let left = size / 2;
                Formula::con(
                    self.any_formula(atoms, left),
                    self.any_formula(atoms, size - 1 - left),
                )
            }
        }
    }

    /// Uniform-depth tree with random branching and valuation.
    pub fn model(&mut self, atoms: &[&str], depth: usize, max_branch: usize) -> Model {
        let mut states = Vec::new();
        let label = |rng: &mut Gen| -> Vec<String> {
            atoms
                .iter()
                .filter(|_| rng.chance(0.5))
                .map(|a| a.to_string())
                .collect()
        };
        let root_atoms = label(self);
        states.push(StateDoc {
            id: "n0_0".into(),
            parent: None,
            atoms: root_atoms,
        });
        let mut frontier = vec!["n0_0".to_string()];
        for level in 1..=depth {
            let mut next = Vec::new();
            let mut counter = 0;
            for parent in &frontier {
                let kids = self.range(1, max_branch);
                for _ in 0..kids {
                    let id = format!("n{level}_{counter}");
                    counter += 1;
                    states.push(StateDoc {
                        id: id.clone(),
                        parent: Some(parent.clone()),
                        atoms: label(self),
                    });
                    next.push(id);
                }
            }
            frontier = next;
        }
        Model::from_doc(&ModelDoc {
            depth,
            root: "n0_0".into(),
            states,
        })
        .expect("generated model is well formed")
    }

    /// Random context of up to `max_rules` rules; always leaves at least
    /// one acceptable timeline so points exist.
    pub fn context(&mut self, model: &Model, max_rules: usize) -> Context {
        let n = model.timelines().len();
        let keep = self.range(0, n - 1);
        let mut context = Context::empty();
        let rule_count = self.range(0, max_rules);
        for r in 0..rule_count {
            let members: std::collections::BTreeSet<usize> = (0..n)
                .filter(|&t| t == keep || self.chance(0.6))
                .collect();
            context = context.with_rule(Rule {
                name: format!("G{r}"),
                members,
            });
        }
        context
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::acceptable;

    #[test]
    fn generators_are_deterministic() {
        let mut a = Gen::new(7);
        let mut b = Gen::new(7);
        for _ in 0..50 {
            assert_eq!(
                a.formula(&["p", "q"], 6, 2),
                b.formula(&["p", "q"], 6, 2)
            );
        }
    }

    #[test]
    fn contexts_keep_a_timeline() {
        let mut g = Gen::new(11);
        for _ in 0..100 {
            let m = g.model(&["p"], 2, 3);
            let c = g.context(&m, 3);
            assert!(!acceptable(&m, &c).is_empty());
        }
    }
}

pub mod suites;
