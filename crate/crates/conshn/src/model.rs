//! Finite branching-time models, timelines, rule contexts and their
//! document formats.
//!
//! A model is a rooted tree whose leaves all sit at the same depth; a
//! timeline is a root-to-leaf path and is identified with its leaf. A rule
//! is a named set of timelines, a context is a finite list of rules, and the
//! acceptable timelines of a context are the intersection of its rules
//! (everything, for the empty context).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type StateIdx = usize;
pub type TimelineId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("not a tree: {0}")]
    NonTree(String),
    #[error("ragged depth: state '{state}' is a leaf at depth {found}, expected {expected}")]
    RaggedDepth {
        state: String,
        found: usize,
        expected: usize,
    },
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("state '{0}' is not a leaf")]
    NotALeaf(String),
    #[error("instant {instant} out of range: model depth is {depth}")]
    InstantOutOfRange { instant: usize, depth: usize },
    #[error("timeline through '{leaf}' is not acceptable in this context")]
    TimelineNotAcceptable { leaf: String },
    #[error("model depth must be at least 1")]
    ZeroDepth,
    #[error("bad document: {0}")]
    BadDocument(String),
}

/// On-disk model document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDoc {
    pub depth: usize,
    pub root: String,
    pub states: Vec<StateDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDoc {
    pub id: String,
    pub parent: Option<String>,
    #[serde(default)]
    pub atoms: Vec<String>,
}

/// On-disk context document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextDoc {
    pub rules: Vec<RuleDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleDoc {
    pub name: String,
    pub timelines: Vec<String>,
}

/// A root-to-leaf path; `path[i]` is the state at instant `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub leaf: StateIdx,
    pub path: Vec<StateIdx>,
}

#[derive(Debug, Clone)]
pub struct Model {
    depth: usize,
    ids: Vec<String>,
    index: BTreeMap<String, StateIdx>,
    parent: Vec<Option<StateIdx>>,
    valuation: Vec<BTreeSet<String>>,
    root: StateIdx,
    timelines: Vec<Timeline>,
    leaf_timeline: BTreeMap<StateIdx, TimelineId>,
}

impl Model {
    /// Validate and index a document. States keep document order; timelines
    /// are leaves in document order.
    pub fn from_doc(doc: &ModelDoc) -> Result<Model, ModelError> {
        if doc.depth == 0 {
            return Err(ModelError::ZeroDepth);
        }
        let mut index = BTreeMap::new();
        for (i, s) in doc.states.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(ModelError::NonTree(format!("duplicate state '{}'", s.id)));
            }
        }
        let root = *index
            .get(&doc.root)
            .ok_or_else(|| ModelError::UnknownState(doc.root.clone()))?;

        let n = doc.states.len();
        let mut parent = vec![None; n];
        let mut children: Vec<Vec<StateIdx>> = vec![Vec::new(); n];
        for (i, s) in doc.states.iter().enumerate() {
            match &s.parent {
                None => {
                    if i != root {
                        return Err(ModelError::NonTree(format!(
                            "state '{}' has no parent but is not the root",
                            s.id
                        )));
                    }
                }
                Some(p) => {
                    if i == root {
                        return Err(ModelError::NonTree(format!(
                            "root '{}' must not have a parent",
                            s.id
                        )));
                    }
                    let pi = *index
                        .get(p)
                        .ok_or_else(|| ModelError::UnknownState(p.clone()))?;
                    parent[i] = Some(pi);
                    children[pi].push(i);
                }
            }
        }

        // reachability and per-state depth; parent links are acyclic iff
        // every state reaches the root
        let mut level = vec![usize::MAX; n];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut seen = 1;
        while let Some(s) = queue.pop_front() {
            for &c in &children[s] {
                level[c] = level[s] + 1;
                seen += 1;
                queue.push_back(c);
            }
        }
        if seen != n {
            let orphan = doc
                .states
                .iter()
                .enumerate()
                .find(|(i, _)| level[*i] == usize::MAX)
                .map(|(_, s)| s.id.clone())
                .unwrap_or_default();
            return Err(ModelError::NonTree(format!(
                "state '{orphan}' is not reachable from the root"
            )));
        }

        let mut timelines = Vec::new();
        let mut leaf_timeline = BTreeMap::new();
        for (i, s) in doc.states.iter().enumerate() {
            if level[i] > doc.depth {
                return Err(ModelError::RaggedDepth {
                    state: s.id.clone(),
                    found: level[i],
                    expected: doc.depth,
                });
            }
            if children[i].is_empty() {
                if level[i] != doc.depth {
                    return Err(ModelError::RaggedDepth {
                        state: s.id.clone(),
                        found: level[i],
                        expected: doc.depth,
                    });
                }
                let mut path = vec![i];
                let mut cur = i;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                leaf_timeline.insert(i, timelines.len());
                timelines.push(Timeline { leaf: i, path });
            }
        }

        Ok(Model {
            depth: doc.depth,
            ids: doc.states.iter().map(|s| s.id.clone()).collect(),
            index,
            parent,
            valuation: doc
                .states
                .iter()
                .map(|s| s.atoms.iter().cloned().collect())
                .collect(),
            root,
            timelines,
            leaf_timeline,
        })
    }

    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        let doc: ModelDoc =
            serde_json::from_str(text).map_err(|e| ModelError::BadDocument(e.to_string()))?;
        Model::from_doc(&doc)
    }

    pub fn to_doc(&self) -> ModelDoc {
        ModelDoc {
            depth: self.depth,
            root: self.ids[self.root].clone(),
            states: (0..self.ids.len())
                .map(|i| StateDoc {
                    id: self.ids[i].clone(),
                    parent: self.parent[i].map(|p| self.ids[p].clone()),
                    atoms: self.valuation[i].iter().cloned().collect(),
                })
                .collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn state_id(&self, s: StateIdx) -> &str {
        &self.ids[s]
    }

    pub fn state_count(&self) -> usize {
        self.ids.len()
    }

    pub fn holds(&self, s: StateIdx, atom: &str) -> bool {
        self.valuation[s].contains(atom)
    }

    /// One timeline per leaf, in document order.
    pub fn timelines(&self) -> &[Timeline] {
        &self.timelines
    }

    pub fn timeline(&self, tl: TimelineId) -> &Timeline {
        &self.timelines[tl]
    }

    pub fn timeline_of_leaf(&self, leaf: &str) -> Result<TimelineId, ModelError> {
        let s = *self
            .index
            .get(leaf)
            .ok_or_else(|| ModelError::UnknownState(leaf.to_string()))?;
        self.leaf_timeline
            .get(&s)
            .copied()
            .ok_or_else(|| ModelError::NotALeaf(leaf.to_string()))
    }

    pub fn leaf_id(&self, tl: TimelineId) -> &str {
        &self.ids[self.timelines[tl].leaf]
    }

    pub fn all_timelines(&self) -> BTreeSet<TimelineId> {
        (0..self.timelines.len()).collect()
    }

    pub fn load_context(&self, doc: &ContextDoc) -> Result<Context, ModelError> {
        let mut rules = Vec::new();
        for r in &doc.rules {
            let mut members = BTreeSet::new();
            for leaf in &r.timelines {
                members.insert(self.timeline_of_leaf(leaf)?);
            }
            rules.push(Rule {
                name: r.name.clone(),
                members,
            });
        }
        Ok(Context { rules })
    }

    pub fn context_from_json(&self, text: &str) -> Result<Context, ModelError> {
        let doc: ContextDoc =
            serde_json::from_str(text).map_err(|e| ModelError::BadDocument(e.to_string()))?;
        self.load_context(&doc)
    }

    pub fn context_to_doc(&self, c: &Context) -> ContextDoc {
        ContextDoc {
            rules: c
                .rules
                .iter()
                .map(|r| RuleDoc {
                    name: r.name.clone(),
                    timelines: r.members.iter().map(|&t| self.leaf_id(t).to_string()).collect(),
                })
                .collect(),
        }
    }

    /// Build a contextualized point, verifying admissibility.
    pub fn point<'m>(
        &'m self,
        context: &Context,
        leaf: &str,
        instant: usize,
    ) -> Result<Point<'m>, ModelError> {
        let tl = self.timeline_of_leaf(leaf)?;
        if instant > self.depth {
            return Err(ModelError::InstantOutOfRange {
                instant,
                depth: self.depth,
            });
        }
        if !acceptable(self, context).contains(&tl) {
            return Err(ModelError::TimelineNotAcceptable {
                leaf: leaf.to_string(),
            });
        }
        Ok(Point {
            model: self,
            context: context.clone(),
            timeline: tl,
            instant,
        })
    }
}

/// An indefeasible ontic rule: a named set of timelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub members: BTreeSet<TimelineId>,
}

/// A finite, possibly empty family of rules. Duplicate member sets under
/// distinct names are allowed and collapse semantically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context {
    pub rules: Vec<Rule>,
}

impl Context {
    pub fn empty() -> Context {
        Context::default()
    }

    pub fn with_rule(mut self, rule: Rule) -> Context {
        self.rules.push(rule);
        self
    }
}

/// `AT(C)`: intersection of all rule member sets; all timelines when the
/// context is empty.
pub fn acceptable(m: &Model, c: &Context) -> BTreeSet<TimelineId> {
    let mut at = m.all_timelines();
    for r in &c.rules {
        at = at.intersection(&r.members).copied().collect();
    }
    at
}

/// A contextualized pointed model; the timeline is acceptable by invariant.
#[derive(Debug, Clone)]
pub struct Point<'m> {
    pub(crate) model: &'m Model,
    pub(crate) context: Context,
    pub(crate) timeline: TimelineId,
    pub(crate) instant: usize,
}

impl<'m> Point<'m> {
    pub fn model(&self) -> &'m Model {
        self.model
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn timeline(&self) -> TimelineId {
        self.timeline
    }

    pub fn leaf_id(&self) -> &str {
        self.model.leaf_id(self.timeline)
    }

    pub fn instant(&self) -> usize {
        self.instant
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiger_doc() -> ModelDoc {
        let states = [
            ("w0_1", None, vec![]),
            ("w1_1", Some("w0_1"), vec![]),
            ("w1_2", Some("w0_1"), vec!["a"]),
            ("w1_3", Some("w0_1"), vec!["l"]),
            ("w1_4", Some("w0_1"), vec!["l", "a"]),
            ("w1_5", Some("w0_1"), vec!["r", "a"]),
            ("w1_6", Some("w0_1"), vec!["r"]),
        ];
        ModelDoc {
            depth: 1,
            root: "w0_1".into(),
            states: states
                .iter()
                .map(|(id, parent, atoms)| StateDoc {
                    id: id.to_string(),
                    parent: parent.map(str::to_string),
                    atoms: atoms.iter().map(|a| a.to_string()).collect(),
                })
                .collect(),
        }
    }

    fn fig2_doc() -> ModelDoc {
        let states = [
            ("w0_1", None, vec!["p", "q"]),
            ("w1_1", Some("w0_1"), vec!["p"]),
            ("w1_2", Some("w0_1"), vec!["q"]),
            ("w2_1", Some("w1_1"), vec![]),
            ("w2_2", Some("w1_1"), vec!["p"]),
            ("w2_3", Some("w1_2"), vec!["q"]),
            ("w2_4", Some("w1_2"), vec![]),
        ];
        ModelDoc {
            depth: 2,
            root: "w0_1".into(),
            states: states
                .iter()
                .map(|(id, parent, atoms)| StateDoc {
                    id: id.to_string(),
                    parent: parent.map(str::to_string),
                    atoms: atoms.iter().map(|a| a.to_string()).collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn loads_depth_one_fan() {
        let m = Model::from_doc(&tiger_doc()).unwrap();
        assert_eq!(m.state_count(), 7);
        assert_eq!(m.depth(), 1);
        assert_eq!(m.timelines().len(), 6);
        assert_eq!(m.leaf_id(4), "w1_5");
    }

    #[test]
    fn loads_depth_two_tree() {
        let m = Model::from_doc(&fig2_doc()).unwrap();
        assert_eq!(m.state_count(), 7);
        assert_eq!(m.depth(), 2);
        assert_eq!(m.timelines().len(), 4);
        assert_eq!(m.timeline(1).path.len(), 3);
    }

    #[test]
    fn single_chain_has_one_timeline() {
        let doc = ModelDoc {
            depth: 3,
            root: "a".into(),
            states: vec![
                StateDoc { id: "a".into(), parent: None, atoms: vec![] },
                StateDoc { id: "b".into(), parent: Some("a".into()), atoms: vec![] },
                StateDoc { id: "c".into(), parent: Some("b".into()), atoms: vec![] },
                StateDoc { id: "d".into(), parent: Some("c".into()), atoms: vec![] },
            ],
        };
        assert_eq!(Model::from_doc(&doc).unwrap().timelines().len(), 1);
    }

    #[test]
    fn two_parentless_states_are_rejected() {
        let mut doc = tiger_doc();
        doc.states[1].parent = None;
        assert!(matches!(
            Model::from_doc(&doc),
            Err(ModelError::NonTree(_))
        ));
    }

    #[test]
    fn ragged_leaves_are_rejected() {
        let mut doc = fig2_doc();
        doc.states.truncate(5); // w1_2 becomes a leaf at depth 1
        assert!(matches!(
            Model::from_doc(&doc),
            Err(ModelError::RaggedDepth { .. })
        ));
    }

    #[test]
    fn context_referencing_unknown_leaf_is_rejected() {
        let m = Model::from_doc(&tiger_doc()).unwrap();
        let doc = ContextDoc {
            rules: vec![RuleDoc {
                name: "R".into(),
                timelines: vec!["w9_9".into()],
            }],
        };
        assert!(matches!(
            m.load_context(&doc),
            Err(ModelError::UnknownState(_))
        ));
        let doc = ContextDoc {
            rules: vec![RuleDoc {
                name: "R".into(),
                timelines: vec!["w0_1".into()],
            }],
        };
        assert!(matches!(m.load_context(&doc), Err(ModelError::NotALeaf(_))));
    }

    fn tiger_context(m: &Model) -> Context {
        let rule = |name: &str, leaves: &[&str]| Rule {
            name: name.into(),
            members: leaves
                .iter()
                .map(|l| m.timeline_of_leaf(l).unwrap())
                .collect(),
        };
        Context {
            rules: vec![
                rule("R1", &["w1_1", "w1_3", "w1_4", "w1_5", "w1_6"]),
                rule("R2", &["w1_3", "w1_4", "w1_5", "w1_6"]),
                rule("R3", &["w1_1", "w1_2", "w1_3", "w1_5", "w1_6"]),
                rule("R4", &["w1_1", "w1_2", "w1_3", "w1_4", "w1_5"]),
            ],
        }
    }

    #[test]
    fn acceptable_is_the_rule_intersection() {
        let m = Model::from_doc(&tiger_doc()).unwrap();
        let c = tiger_context(&m);
        let at: Vec<&str> = acceptable(&m, &c).iter().map(|&t| m.leaf_id(t)).collect();
        assert_eq!(at, vec!["w1_3", "w1_5"]);
        assert_eq!(acceptable(&m, &Context::empty()).len(), 6);
    }

    #[test]
    fn acceptable_ignores_rule_order_and_names() {
        let m = Model::from_doc(&tiger_doc()).unwrap();
        let mut c = tiger_context(&m);
        let before = acceptable(&m, &c);
        c.rules.reverse();
        for (i, r) in c.rules.iter_mut().enumerate() {
            r.name = format!("renamed{i}");
        }
        assert_eq!(before, acceptable(&m, &c));
    }

    #[test]
    fn point_admissibility() {
        let m = Model::from_doc(&tiger_doc()).unwrap();
        let c = tiger_context(&m);
        assert!(m.point(&c, "w1_5", 0).is_ok());
        assert!(matches!(
            m.point(&c, "w1_2", 0),
            Err(ModelError::TimelineNotAcceptable { .. })
        ));
        assert!(matches!(
            m.point(&Context::empty(), "w1_2", 2),
            Err(ModelError::InstantOutOfRange { .. })
        ));
    }
}
