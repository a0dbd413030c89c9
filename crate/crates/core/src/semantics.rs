//! Satisfaction and truth sets.
//!
//! A formula is desugared and compiled once against a [`Signature`] into a
//! node arena with resolved agent masks and atom indices; the compiled form
//! can then be evaluated on any model over that signature. Dynamic
//! operators build the updated model and evaluate their body there.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Desugarer, Formula};
use crate::kripke::{Model, PointedModel, Signature, WorldSet};
use crate::transforms::{apply_eee, see_mask, sse_mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    D(u64, usize),
    Eee(usize),
    See(u64, usize),
    Sse(u64, usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum UpdateKey {
    Eee,
    See(u64),
    Sse(u64, WorldSet),
}

/// A formula resolved against a signature.
#[derive(Debug, Clone)]
pub struct Compiled {
    sig: Arc<Signature>,
    nodes: Vec<Node>,
    root: usize,
}

struct Compiler<'a> {
    sig: &'a Signature,
    nodes: Vec<Node>,
    by_addr: HashMap<*const Formula, usize>,
    by_node: HashMap<Node, usize>,
}

impl Compiler<'_> {
    fn push(&mut self, node: Node) -> usize {
        if let Some(&i) = self.by_node.get(&node) {
            return i;
        }
        self.nodes.push(node);
        let i = self.nodes.len() - 1;
        self.by_node.insert(node, i);
        i
    }

    fn child(&mut self, f: &Arc<Formula>) -> Result<usize> {
        let key = Arc::as_ptr(f);
        if let Some(&i) = self.by_addr.get(&key) {
            return Ok(i);
        }
        let i = self.compile(f)?;
        self.by_addr.insert(key, i);
        Ok(i)
    }

    fn compile(&mut self, f: &Formula) -> Result<usize> {
        let node = match f {
            Formula::Top => Node::Top,
            Formula::Atom(p) => Node::Atom(self.sig.atom(p)?),
            Formula::Not(a) => Node::Not(self.child(a)?),
            Formula::And(a, b) => Node::And(self.child(a)?, self.child(b)?),
            Formula::D(g, a) => {
                if g.is_empty() {
                    return Err(Error::EmptyGroup);
                }
                Node::D(self.sig.agent_mask(g)?, self.child(a)?)
            }
            Formula::Eee(a) => Node::Eee(self.child(a)?),
            Formula::See(s, a) => Node::See(self.sig.agent_mask(s)?, self.child(a)?),
            Formula::Sse(s, chi, a) => {
                Node::Sse(self.sig.agent_mask(s)?, self.child(chi)?, self.child(a)?)
            }
            other => unreachable!("not desugared: {other:?}"),
        };
        Ok(self.push(node))
    }
}

impl Compiled {
    pub fn new(f: &Formula, sig: &Arc<Signature>) -> Result<Self> {
        let core = Desugarer::default().run(f);
        let mut c = Compiler {
            sig,
            nodes: Vec::new(),
            by_addr: HashMap::new(),
            by_node: HashMap::new(),
        };
        let root = c.compile(&core)?;
        Ok(Compiled {
            sig: Arc::clone(sig),
            nodes: c.nodes,
            root,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    /// Truth set in a model whose signature equals the compiled one.
    pub fn truth_set(&self, model: &Model) -> Result<WorldSet> {
        debug_assert_eq!(**model.signature(), *self.sig, "signature mismatch");
        Context::new(self, model).eval(self.root)
    }

    pub fn holds_everywhere(&self, model: &Model) -> Result<bool> {
        Ok(self.truth_set(model)? == model.all_worlds())
    }
}

struct Context<'a> {
    compiled: &'a Compiled,
    model: &'a Model,
    memo: Vec<Option<WorldSet>>,
    updates: HashMap<UpdateKey, Model>,
}

impl<'a> Context<'a> {
    fn new(compiled: &'a Compiled, model: &'a Model) -> Self {
        Context {
            compiled,
            model,
            memo: vec![None; compiled.nodes.len()],
            updates: HashMap::new(),
        }
    }

    fn in_update(&mut self, key: UpdateKey, body: usize) -> Result<WorldSet> {
        if !self.updates.contains_key(&key) {
            let updated = match key {
                UpdateKey::Eee => apply_eee(self.model),
                UpdateKey::See(s) => see_mask(self.model, s),
                UpdateKey::Sse(s, topic) => sse_mask(self.model, s, topic)?,
            };
            self.updates.insert(key, updated);
        }
        let updated = &self.updates[&key];
        Context::new(self.compiled, updated).eval(body)
    }

    fn eval(&mut self, i: usize) -> Result<WorldSet> {
        if let Some(hit) = self.memo[i] {
            return Ok(hit);
        }
        let n = self.model.world_count();
        let out = match self.compiled.nodes[i] {
            Node::Top => self.model.all_worlds(),
            Node::Atom(p) => self.model.atom_set(p),
            Node::Not(a) => self.eval(a)?.complement(n),
            Node::And(a, b) => {
                let x = self.eval(a)?;
                if x.is_empty() {
                    x
                } else {
                    x.intersection(self.eval(b)?)
                }
            }
            Node::D(g, a) => {
                let body = self.eval(a)?;
                let rel = self.model.group_relation_mask(g);
                WorldSet::from_worlds((0..n).filter(|&w| rel.image(w).is_subset(body)))
            }
            Node::Eee(a) => self.in_update(UpdateKey::Eee, a)?,
            Node::See(s, a) => self.in_update(UpdateKey::See(s), a)?,
            Node::Sse(s, chi, a) => {
                let topic = self.eval(chi)?;
                self.in_update(UpdateKey::Sse(s, topic), a)?
            }
        };
        self.memo[i] = Some(out);
        Ok(out)
    }
}

/// The set of worlds of `model` where `f` holds.
pub fn truth_set(model: &Model, f: &Formula) -> Result<WorldSet> {
    Compiled::new(f, model.signature())?.truth_set(model)
}

/// Whether `f` holds at the pointed model.
pub fn satisfies(pm: &PointedModel, f: &Formula) -> Result<bool> {
    Ok(truth_set(&pm.model, f)?.contains(pm.point))
}
