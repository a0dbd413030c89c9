//! Independent reference implementation used as a test oracle, plus
//! proptest strategies shared by several test targets.
//!
//! The oracle works on explicit pair sets and evaluates every constructor
//! directly (no desugaring, no bitsets, no memoisation) so that agreement
//! with the library is meaningful.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use epicomm::kripke::Signature;
use epicomm::{AgentSet, Formula, Model, Relation, WorldSet};
use proptest::prelude::*;

pub type Pairs = BTreeSet<(usize, usize)>;

/// A model as plain sets, built from a library model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefModel {
    pub n: usize,
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
    pub rel: Vec<Pairs>,
    pub val: Vec<BTreeSet<usize>>,
}

impl RefModel {
    pub fn from_model(m: &Model) -> Self {
        let sig = m.signature();
        let n = m.world_count();
        let mut rel = Vec::new();
        for i in 0..sig.agents().len() {
            let mut pairs = Pairs::new();
            for w in 0..n {
                for u in 0..n {
                    if m.relation(i).contains(w, u) {
                        pairs.insert((w, u));
                    }
                }
            }
            rel.push(pairs);
        }
        let val = (0..sig.atoms().len())
            .map(|p| (0..n).filter(|&w| m.atom_set(p).contains(w)).collect())
            .collect();
        RefModel {
            n,
            agents: sig.agents().to_vec(),
            atoms: sig.atoms().to_vec(),
            rel,
            val,
        }
    }

    pub fn agent(&self, name: &str) -> usize {
        self.agents.iter().position(|a| a == name).expect("agent in roster")
    }

    pub fn all(&self) -> Pairs {
        (0..self.n).flat_map(|w| (0..self.n).map(move |u| (w, u))).collect()
    }

    /// Intersection of the group's relations; the whole square for `{}`.
    pub fn dist(&self, group: &AgentSet) -> Pairs {
        let mut out = self.all();
        for a in group.iter() {
            out = out.intersection(&self.rel[self.agent(a)]).copied().collect();
        }
        out
    }

    pub fn with_rel(&self, rel: Vec<Pairs>) -> Self {
        RefModel { rel, ..self.clone() }
    }

    pub fn eee(&self) -> Self {
        let all: AgentSet = self.agents.iter().cloned().collect();
        let d = self.dist(&all);
        self.with_rel(vec![d; self.agents.len()])
    }

    pub fn see(&self, s: &AgentSet) -> Self {
        let d = self.dist(s);
        self.with_rel(self.rel.iter().map(|r| r.intersection(&d).copied().collect()).collect())
    }

    /// Subtractive definition: drop every edge crossing the topic that
    /// some sender can already rule out.
    pub fn sse(&self, s: &AgentSet, topic: &BTreeSet<usize>) -> Self {
        let crossing = |w: usize, u: usize| topic.contains(&w) != topic.contains(&u);
        let rel = self
            .rel
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .filter(|&(w, u)| {
                        !(crossing(w, u) && s.iter().any(|j| !self.rel[self.agent(j)].contains(&(w, u))))
                    })
                    .collect()
            })
            .collect();
        self.with_rel(rel)
    }

    pub fn truth(&self, f: &Formula) -> BTreeSet<usize> {
        (0..self.n).filter(|&w| self.holds(w, f)).collect()
    }

    pub fn holds(&self, w: usize, f: &Formula) -> bool {
        use Formula::*;
        let box_over = |pairs: &Pairs, body: &Formula| {
            (0..self.n).all(|u| !pairs.contains(&(w, u)) || self.holds(u, body))
        };
        match f {
            Top => true,
            Bot => false,
            Atom(p) => {
                let i = self.atoms.iter().position(|a| a == p).expect("atom in roster");
                self.val[i].contains(&w)
            }
            Not(a) => !self.holds(w, a),
            And(a, b) => self.holds(w, a) && self.holds(w, b),
            Or(a, b) => self.holds(w, a) || self.holds(w, b),
            Implies(a, b) => !self.holds(w, a) || self.holds(w, b),
            Iff(a, b) => self.holds(w, a) == self.holds(w, b),
            K(i, a) => box_over(&self.rel[self.agent(i)], a),
            D(g, a) => box_over(&self.dist(g), a),
            Dhat(g, chi, a) => {
                let here = self.holds(w, chi);
                let d = self.dist(g);
                (0..self.n).all(|u| !d.contains(&(w, u)) || self.holds(u, chi) != here || self.holds(u, a))
            }
            Eee(a) => self.eee().holds(w, a),
            See(s, a) => self.see(s).holds(w, a),
            Sse(s, chi, a) => self.sse(s, &self.truth(chi)).holds(w, a),
        }
    }
}

/// Triple-loop relation properties.
pub fn ref_properties(n: usize, r: &Pairs) -> (bool, bool, bool, bool) {
    let reflexive = (0..n).all(|w| r.contains(&(w, w)));
    let symmetric = r.iter().all(|&(w, u)| r.contains(&(u, w)));
    let mut transitive = true;
    let mut euclidean = true;
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                if r.contains(&(w, u)) && r.contains(&(u, v)) && !r.contains(&(w, v)) {
                    transitive = false;
                }
                if r.contains(&(w, u)) && r.contains(&(w, v)) && !r.contains(&(u, v)) {
                    euclidean = false;
                }
            }
        }
    }
    (reflexive, symmetric, transitive, euclidean)
}

pub fn ref_set(s: WorldSet) -> BTreeSet<usize> {
    s.iter().collect()
}

// --------------------------------------------------------------- strategies

pub const AGENTS: [&str; 3] = ["a", "b", "c"];
pub const ATOMS: [&str; 2] = ["p", "q"];

pub fn signature(n: usize, agents: &[&str], atoms: &[&str]) -> Arc<Signature> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Arc::new(Signature::numbered(n, &s(agents), &s(atoms)).unwrap())
}

/// Arbitrary models with 1..=`max_worlds` worlds.
pub fn arb_model(max_worlds: usize, agents: &'static [&'static str], atoms: &'static [&'static str]) -> impl Strategy<Value = Model> {
    (1..=max_worlds).prop_flat_map(move |n| {
        let rows = prop::collection::vec(prop::collection::vec(0u64..(1 << n), n), agents.len());
        let vals = prop::collection::vec(0u64..(1 << n), atoms.len());
        (rows, vals).prop_map(move |(rows, vals)| {
            let sig = signature(n, agents, atoms);
            let rels = rows
                .into_iter()
                .map(|r| Relation::from_rows(r.into_iter().map(WorldSet).collect()))
                .collect();
            Model::new(sig, rels, vals.into_iter().map(WorldSet).collect()).unwrap()
        })
    })
}

/// Arbitrary models whose relations are equivalences (random partitions).
pub fn arb_equivalence_model(max_worlds: usize, agents: &'static [&'static str], atoms: &'static [&'static str]) -> impl Strategy<Value = Model> {
    (1..=max_worlds).prop_flat_map(move |n| {
        let labels = prop::collection::vec(prop::collection::vec(0..n, n), agents.len());
        let vals = prop::collection::vec(0u64..(1 << n), atoms.len());
        (labels, vals).prop_map(move |(labels, vals)| {
            let sig = signature(n, agents, atoms);
            let rels = labels
                .into_iter()
                .map(|cls| {
                    Relation::from_pairs(
                        n,
                        (0..n).flat_map(|w| (0..n).map(move |u| (w, u))).filter(|&(w, u)| cls[w] == cls[u]),
                    )
                })
                .collect();
            Model::new(sig, rels, vals.into_iter().map(WorldSet).collect()).unwrap()
        })
    })
}

pub fn arb_group(agents: &'static [&'static str]) -> impl Strategy<Value = AgentSet> + Clone {
    prop::sample::subsequence(agents.to_vec(), 0..=agents.len()).prop_map(|v| v.into_iter().collect())
}

pub fn arb_nonempty_group(agents: &'static [&'static str]) -> impl Strategy<Value = AgentSet> + Clone {
    prop::sample::subsequence(agents.to_vec(), 1..=agents.len()).prop_map(|v| v.into_iter().collect())
}

/// Formulas over every constructor.
pub fn arb_formula(agents: &'static [&'static str], atoms: &'static [&'static str], dynamic: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => prop::sample::select(atoms.to_vec()).prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(4, 32, 2, move |inner| {
        let g = arb_nonempty_group(agents);
        let s = arb_group(agents);
        let agent = prop::sample::select(agents.to_vec());
        let mut options: Vec<BoxedStrategy<Formula>> = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)).boxed(),
            (g.clone(), inner.clone()).prop_map(|(g, a)| Formula::d(g, a)).boxed(),
            (agent, inner.clone()).prop_map(|(i, a)| Formula::k(i, a)).boxed(),
            (g, inner.clone(), inner.clone()).prop_map(|(g, c, a)| Formula::dhat(g, c, a)).boxed(),
        ];
        if dynamic {
            options.push(inner.clone().prop_map(Formula::eee).boxed());
            options.push((s.clone(), inner.clone()).prop_map(|(s, a)| Formula::see(s, a)).boxed());
            options.push((s, inner.clone(), inner).prop_map(|(s, c, a)| Formula::sse(s, c, a)).boxed());
        }
        prop::strategy::Union::new(options)
    })
}
