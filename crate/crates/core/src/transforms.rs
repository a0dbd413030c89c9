//! Communication updates on models.
//!
//! All updates keep the worlds and valuation and only shrink relations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{AgentSet, Model, Relation, WorldSet};
use crate::semantics::truth_set;

/// Pairs of worlds that disagree on the topic.
pub fn full_ignorance_from_set(n: usize, topic: WorldSet) -> Relation {
    let other = topic.complement(n);
    Relation::product(n, topic, other).union(&Relation::product(n, other, topic))
}

/// Pairs of worlds that agree on the topic (two equivalence classes).
pub fn knowing_only_from_set(n: usize, topic: WorldSet) -> Relation {
    let other = topic.complement(n);
    Relation::product(n, topic, topic).union(&Relation::product(n, other, other))
}

/// Relation of full ignorance about `topic`, evaluated in `model`.
pub fn full_ignorance_relation(model: &Model, topic: &Formula) -> Result<Relation> {
    Ok(full_ignorance_from_set(model.world_count(), truth_set(model, topic)?))
}

/// Complement of [`full_ignorance_relation`].
pub fn knowing_only_relation(model: &Model, topic: &Formula) -> Result<Relation> {
    Ok(knowing_only_from_set(model.world_count(), truth_set(model, topic)?))
}

/// Everyone shares everything: every relation becomes the distributed
/// relation of the whole roster.
pub fn apply_eee(model: &Model) -> Model {
    let all = model.group_relation_mask(model.signature().all_agents_mask());
    model.with_relations(vec![all; model.relations().len()])
}

pub(crate) fn see_mask(model: &Model, senders: u64) -> Model {
    let shared = model.group_relation_mask(senders);
    model.with_relations(
        model
            .relations()
            .iter()
            .map(|r| r.intersection(&shared))
            .collect(),
    )
}

/// The senders share everything they know with everyone. An empty group
/// is the identity update.
pub fn apply_see(model: &Model, senders: &AgentSet) -> Result<Model> {
    Ok(see_mask(model, model.signature().agent_mask(senders)?))
}

/// Computes the topic-restricted update both from the subtractive
/// definition and from the intersection form, and insists they agree.
pub(crate) fn sse_mask(model: &Model, senders: u64, topic: WorldSet) -> Result<Model> {
    let n = model.world_count();
    let ignorance = full_ignorance_from_set(n, topic);
    let mut removable = Relation::empty(n);
    let mut bits = senders;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        removable = removable.union(&model.relation(j).complement().intersection(&ignorance));
    }
    let allowed = model
        .group_relation_mask(senders)
        .union(&knowing_only_from_set(n, topic));
    let mut relations = Vec::with_capacity(model.relations().len());
    for r in model.relations() {
        let subtractive = r.difference(&removable);
        if subtractive != r.intersection(&allowed) {
            return Err(Error::DefinitionMismatch);
        }
        relations.push(subtractive);
    }
    Ok(model.with_relations(relations))
}

/// The senders share what they know about `topic`. The topic is evaluated
/// once, in the input model.
pub fn apply_sse(model: &Model, senders: &AgentSet, topic: &Formula) -> Result<Model> {
    let mask = model.signature().agent_mask(senders)?;
    sse_mask(model, mask, truth_set(model, topic)?)
}

/// Which agents each agent reads from. Every agent must read from itself.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReadingAssignment {
    pub sources: BTreeMap<String, AgentSet>,
}

impl ReadingAssignment {
    /// Parses `a:a,b;b:b;c:a,b,c`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut sources = BTreeMap::new();
        for (i, part) in spec.split(';').map(str::trim).enumerate() {
            if part.is_empty() {
                continue;
            }
            let (agent, list) = part.split_once(':').ok_or_else(|| Error::Syntax {
                pos: i,
                msg: format!("expected `agent:sources` in `{part}`"),
            })?;
            let agent = agent.trim();
            if agent.is_empty() {
                return Err(Error::Syntax {
                    pos: i,
                    msg: "missing agent name".into(),
                });
            }
            if sources
                .insert(agent.to_string(), AgentSet::parse_list(list))
                .is_some()
            {
                return Err(Error::DuplicateName(agent.to_string()));
            }
        }
        Ok(ReadingAssignment { sources })
    }

    /// Every agent reads from everyone.
    pub fn everyone(model: &Model) -> Self {
        let all = model.signature().all_agents();
        ReadingAssignment {
            sources: model
                .signature()
                .agents()
                .iter()
                .map(|a| (a.clone(), all.clone()))
                .collect(),
        }
    }
}

/// Each agent's relation becomes the distributed relation of its sources.
pub fn apply_reading_event(model: &Model, alpha: &ReadingAssignment) -> Result<Model> {
    let sig = model.signature();
    for name in alpha.sources.keys() {
        sig.agent(name)?;
    }
    let mut relations = Vec::with_capacity(sig.agents().len());
    for agent in sig.agents() {
        let sources = alpha
            .sources
            .get(agent)
            .filter(|s| s.contains(agent))
            .ok_or_else(|| Error::AlphaNotReflexive(agent.clone()))?;
        relations.push(model.distributed_relation(sources)?);
    }
    Ok(model.with_relations(relations))
}
