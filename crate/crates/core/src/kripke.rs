//! Finite multi-agent relational models.
//!
//! Worlds are indices `0..n` (at most [`MAX_WORLDS`]); display names live in
//! the [`Signature`]. Each relation is a dense bit matrix with one `u64` row
//! per world, so intersections and complements are word operations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_WORLDS: usize = 64;
pub const MAX_AGENTS: usize = 64;

pub type WorldId = usize;

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of worlds of one model.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> Self {
        WorldSet(full_mask(n))
    }

    pub fn from_worlds<I: IntoIterator<Item = WorldId>>(worlds: I) -> Self {
        WorldSet(worlds.into_iter().fold(0, |m, w| m | (1u64 << w)))
    }

    pub fn contains(self, w: WorldId) -> bool {
        self.0 >> w & 1 == 1
    }

    pub fn insert(&mut self, w: WorldId) {
        self.0 |= 1u64 << w;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: WorldSet) -> Self {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> Self {
        WorldSet(self.0 & other.0)
    }

    /// Complement relative to a model with `n` worlds.
    pub fn complement(self, n: usize) -> Self {
        WorldSet(!self.0 & full_mask(n))
    }

    pub fn iter(self) -> impl Iterator<Item = WorldId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w)
            }
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A directed binary relation on `n` worlds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

/// Frame properties of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub euclidean: bool,
}

impl RelationProperties {
    pub fn is_equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, rows: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            n,
            rows: vec![full_mask(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            n,
            rows: (0..n).map(|w| 1u64 << w).collect(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (WorldId, WorldId)>>(n: usize, pairs: I) -> Self {
        let mut r = Relation::empty(n);
        for (w, u) in pairs {
            r.insert(w, u);
        }
        r
    }

    /// Builds a relation from one image set per world.
    pub fn from_rows(rows: Vec<WorldSet>) -> Self {
        let n = rows.len();
        let mask = full_mask(n);
        Relation {
            n,
            rows: rows.into_iter().map(|s| s.0 & mask).collect(),
        }
    }

    /// `(W×A) ∪ (B×B)`-style products: all pairs from `from` to `to`.
    pub fn product(n: usize, from: WorldSet, to: WorldSet) -> Self {
        Relation {
            n,
            rows: (0..n)
                .map(|w| if from.contains(w) { to.0 } else { 0 })
                .collect(),
        }
    }

    pub fn world_count(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, w: WorldId, u: WorldId) {
        assert!(w < self.n && u < self.n, "pair out of range");
        self.rows[w] |= 1u64 << u;
    }

    pub fn contains(&self, w: WorldId, u: WorldId) -> bool {
        w < self.n && u < self.n && self.rows[w] >> u & 1 == 1
    }

    /// The set of worlds reachable from `w` in one step.
    pub fn image(&self, w: WorldId) -> WorldSet {
        WorldSet(self.rows[w])
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (WorldId, WorldId)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(w, &row)| WorldSet(row).iter().map(move |u| (w, u)))
    }

    fn zip(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Relation {
        assert_eq!(self.n, other.n, "relations over different world sets");
        Relation {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Relation {
        let mask = full_mask(self.n);
        Relation {
            n: self.n,
            rows: self.rows.iter().map(|&r| !r & mask).collect(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(&a, &b)| a & !b == 0)
    }

    pub fn converse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(w, u)| (u, w)))
    }

    pub fn properties(&self) -> RelationProperties {
        let reflexive = (0..self.n).all(|w| self.contains(w, w));
        let symmetric = *self == self.converse();
        // transitive: the image of every successor is inside the own image;
        // euclidean: every successor's image contains the whole own image.
        let mut transitive = true;
        let mut euclidean = true;
        for w in 0..self.n {
            let img = self.image(w);
            for u in img.iter() {
                let next = self.image(u);
                transitive &= next.is_subset(img);
                euclidean &= img.is_subset(next);
            }
        }
        RelationProperties {
            reflexive,
            symmetric,
            transitive,
            euclidean,
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// `relation_properties` as a free function.
pub fn relation_properties(rel: &Relation) -> RelationProperties {
    rel.properties()
}

/// A set of agent names.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentSet(BTreeSet<String>);

impl AgentSet {
    pub fn new() -> Self {
        AgentSet(BTreeSet::new())
    }

    pub fn contains(&self, agent: &str) -> bool {
        self.0.contains(agent)
    }

    pub fn insert(&mut self, agent: impl Into<String>) -> bool {
        self.0.insert(agent.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn union(&self, other: &AgentSet) -> AgentSet {
        AgentSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &AgentSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Parses a comma-separated list; blanks are ignored, so `""` is the empty set.
    pub fn parse_list(text: &str) -> AgentSet {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect()
    }
}

impl<S: Into<String>> FromIterator<S> for AgentSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        AgentSet(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().collect();
        f.write_str(&names.join(","))
    }
}

impl fmt::Debug for AgentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Names of worlds, agents and atoms of a model, in declared order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    worlds: Vec<String>,
    agents: Vec<String>,
    atoms: Vec<String>,
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        if n.is_empty() {
            return Err(Error::DuplicateName(String::new()));
        }
        if !seen.insert(n) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

impl Signature {
    pub fn new(worlds: Vec<String>, agents: Vec<String>, atoms: Vec<String>) -> Result<Self> {
        if worlds.is_empty() {
            return Err(Error::EmptyModel);
        }
        if worlds.len() > MAX_WORLDS {
            return Err(Error::TooManyWorlds(worlds.len()));
        }
        if agents.len() > MAX_AGENTS {
            return Err(Error::InvalidBounds(format!("{} agents (max 64)", agents.len())));
        }
        check_unique(&worlds)?;
        check_unique(&agents)?;
        check_unique(&atoms)?;
        Ok(Signature {
            worlds,
            agents,
            atoms,
        })
    }

    /// Signature with worlds named `w0..w{n-1}`.
    pub fn numbered(n: usize, agents: &[String], atoms: &[String]) -> Result<Self> {
        Signature::new(
            (0..n).map(|i| format!("w{i}")).collect(),
            agents.to_vec(),
            atoms.to_vec(),
        )
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world(&self, name: &str) -> Result<WorldId> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn agent(&self, name: &str) -> Result<usize> {
        self.agents
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    pub fn atom(&self, name: &str) -> Result<usize> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    /// Bit mask of roster indices for a group.
    pub fn agent_mask(&self, group: &AgentSet) -> Result<u64> {
        group
            .iter()
            .try_fold(0u64, |m, a| Ok(m | 1u64 << self.agent(a)?))
    }

    pub fn all_agents_mask(&self) -> u64 {
        full_mask(self.agents.len())
    }

    pub fn all_agents(&self) -> AgentSet {
        self.agents.iter().cloned().collect()
    }
}

/// A model ⟨W, R, V⟩. Equality is component-wise on the declared order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Model {
    sig: Arc<Signature>,
    relations: Vec<Relation>,
    valuation: Arc<Vec<WorldSet>>,
}

impl Model {
    /// Relations are given in roster order, valuation in atom order.
    pub fn new(sig: Arc<Signature>, relations: Vec<Relation>, valuation: Vec<WorldSet>) -> Result<Self> {
        Self::with_shared_valuation(sig, relations, Arc::new(valuation))
    }

    pub(crate) fn with_shared_valuation(
        sig: Arc<Signature>,
        relations: Vec<Relation>,
        valuation: Arc<Vec<WorldSet>>,
    ) -> Result<Self> {
        let n = sig.world_count();
        if relations.len() != sig.agents.len() {
            let missing = sig
                .agents
                .get(relations.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::MissingAgentRelation(missing));
        }
        if relations.iter().any(|r| r.n != n) {
            return Err(Error::DanglingWorld("relation size mismatch".into()));
        }
        if valuation.len() != sig.atoms.len() {
            return Err(Error::UnknownAtom("valuation size mismatch".into()));
        }
        if valuation.iter().any(|s| !s.is_subset(WorldSet::full(n))) {
            return Err(Error::DanglingWorld("valuation outside W".into()));
        }
        Ok(Model {
            sig,
            relations,
            valuation,
        })
    }

    /// Same worlds and valuation, new relations.
    pub fn with_relations(&self, relations: Vec<Relation>) -> Model {
        assert_eq!(relations.len(), self.relations.len());
        Model {
            sig: Arc::clone(&self.sig),
            relations,
            valuation: Arc::clone(&self.valuation),
        }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn world_count(&self) -> usize {
        self.sig.world_count()
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.world_count())
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, agent: usize) -> &Relation {
        &self.relations[agent]
    }

    pub fn relation_of(&self, agent: &str) -> Result<&Relation> {
        Ok(&self.relations[self.sig.agent(agent)?])
    }

    pub fn valuation(&self) -> &[WorldSet] {
        &self.valuation
    }

    pub fn atom_set(&self, atom: usize) -> WorldSet {
        self.valuation[atom]
    }

    /// ⋂ of the relations selected by `mask`; the empty mask gives W×W.
    pub fn group_relation_mask(&self, mask: u64) -> Relation {
        let mut rel = Relation::full(self.world_count());
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            rel = rel.intersection(&self.relations[i]);
        }
        rel
    }

    /// The distributed relation of a nonempty group.
    pub fn distributed_relation(&self, group: &AgentSet) -> Result<Relation> {
        if group.is_empty() {
            return Err(Error::EmptyGroup);
        }
        Ok(self.group_relation_mask(self.sig.agent_mask(group)?))
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_model_text(self, None))
    }
}

/// `distributed_relation` as a free function.
pub fn distributed_relation(model: &Model, group: &AgentSet) -> Result<Relation> {
    model.distributed_relation(group)
}

/// `image` as a free function.
pub fn image(rel: &Relation, w: WorldId) -> WorldSet {
    rel.image(w)
}

/// A model with a designated evaluation world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    pub model: Model,
    pub point: WorldId,
}

impl PointedModel {
    pub fn new(model: Model, point: WorldId) -> Result<Self> {
        if point >= model.world_count() {
            return Err(Error::UnknownWorld(format!("#{point}")));
        }
        Ok(PointedModel { model, point })
    }

    pub fn at(model: &Model, world: &str) -> Result<Self> {
        let point = model.signature().world(world)?;
        Ok(PointedModel {
            model: model.clone(),
            point,
        })
    }
}

/// A model described by names, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelSpec {
    pub worlds: Vec<String>,
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
    pub relations: BTreeMap<String, Vec<(String, String)>>,
    pub valuation: BTreeMap<String, Vec<String>>,
}

fn owned(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl ModelSpec {
    pub fn new(worlds: &[&str], agents: &[&str], atoms: &[&str]) -> Self {
        ModelSpec {
            worlds: owned(worlds),
            agents: owned(agents),
            atoms: owned(atoms),
            ..Default::default()
        }
    }

    /// Adds directed pairs for an agent (creating its relation if absent).
    pub fn rel(mut self, agent: &str, pairs: &[(&str, &str)]) -> Self {
        let entry = self.relations.entry(agent.to_string()).or_default();
        entry.extend(pairs.iter().map(|(w, u)| (w.to_string(), u.to_string())));
        self
    }

    /// Adds both directions of each pair.
    pub fn sym(self, agent: &str, pairs: &[(&str, &str)]) -> Self {
        let both: Vec<(&str, &str)> = pairs.iter().flat_map(|&(w, u)| [(w, u), (u, w)]).collect();
        self.rel(agent, &both)
    }

    /// Adds a symmetric edge for each listed agent.
    pub fn edge(mut self, w: &str, u: &str, agents: &[&str]) -> Self {
        for a in agents {
            self = self.sym(a, &[(w, u)]);
        }
        self
    }

    /// Adds a loop at every listed world for every roster agent.
    pub fn loops(mut self, worlds: &[&str]) -> Self {
        let agents = self.agents.clone();
        for a in &agents {
            let pairs: Vec<(&str, &str)> = worlds.iter().map(|&w| (w, w)).collect();
            self = self.rel(a, &pairs);
        }
        self
    }

    /// Loops at every world for every roster agent.
    pub fn loops_everywhere(self) -> Self {
        let worlds = self.worlds.clone();
        let refs: Vec<&str> = worlds.iter().map(String::as_str).collect();
        self.loops(&refs)
    }

    pub fn val(mut self, atom: &str, worlds: &[&str]) -> Self {
        let entry = self.valuation.entry(atom.to_string()).or_default();
        entry.extend(owned(worlds));
        self
    }

    pub fn build(&self) -> Result<Model> {
        validate_model(self)?;
        let sig = Arc::new(Signature::new(
            self.worlds.clone(),
            self.agents.clone(),
            self.atoms.clone(),
        )?);
        let n = sig.world_count();
        let mut relations = Vec::with_capacity(sig.agents.len());
        for agent in &sig.agents {
            let mut rel = Relation::empty(n);
            for (w, u) in &self.relations[agent] {
                rel.insert(sig.world(w)?, sig.world(u)?);
            }
            relations.push(rel);
        }
        let mut valuation = vec![WorldSet::EMPTY; sig.atoms.len()];
        for (atom, worlds) in &self.valuation {
            let i = sig.atom(atom)?;
            for w in worlds {
                valuation[i].insert(sig.world(w)?);
            }
        }
        Model::new(sig, relations, valuation)
    }
}

/// Checks the structural invariants of a named model description.
pub fn validate_model(spec: &ModelSpec) -> Result<()> {
    if spec.worlds.is_empty() {
        return Err(Error::EmptyModel);
    }
    if spec.worlds.len() > MAX_WORLDS {
        return Err(Error::TooManyWorlds(spec.worlds.len()));
    }
    check_unique(&spec.worlds)?;
    check_unique(&spec.agents)?;
    check_unique(&spec.atoms)?;
    let world_ok = |w: &String| spec.worlds.contains(w);
    for (agent, pairs) in &spec.relations {
        if !spec.agents.contains(agent) {
            return Err(Error::UnknownAgent(agent.clone()));
        }
        for (w, u) in pairs {
            for x in [w, u] {
                if !world_ok(x) {
                    return Err(Error::DanglingWorld(x.clone()));
                }
            }
        }
    }
    if let Some(a) = spec.agents.iter().find(|a| !spec.relations.contains_key(*a)) {
        return Err(Error::MissingAgentRelation(a.clone()));
    }
    for (atom, worlds) in &spec.valuation {
        if !spec.atoms.contains(atom) {
            return Err(Error::UnknownAtom(atom.clone()));
        }
        if let Some(w) = worlds.iter().find(|w| !world_ok(w)) {
            return Err(Error::DanglingWorld(w.clone()));
        }
    }
    Ok(())
}

/// A parsed model file: the model and its optional designated point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub model: Model,
    pub point: Option<WorldId>,
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::ModelFormat {
        line,
        msg: msg.into(),
    }
}

/// Parses the line-based model text format.
pub fn parse_model_text(text: &str) -> Result<ModelFile> {
    let mut spec = ModelSpec::default();
    let mut seen = BTreeSet::new();
    let mut point = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| format_err(line_no, "expected `key: values`"))?;
        let key: Vec<&str> = key.split_whitespace().collect();
        let values: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        let key_text = key.join(" ");
        if !seen.insert(key_text.clone()) {
            return Err(format_err(line_no, format!("duplicate key `{key_text}`")));
        }
        match key.as_slice() {
            ["worlds"] => spec.worlds = values,
            ["agents"] => spec.agents = values,
            ["atoms"] => spec.atoms = values,
            ["rel", agent] => {
                let mut pairs = Vec::new();
                for tok in values {
                    let (w, u) = tok
                        .split_once('-')
                        .ok_or_else(|| format_err(line_no, format!("bad pair `{tok}`")))?;
                    pairs.push((w.to_string(), u.to_string()));
                }
                spec.relations.insert(agent.to_string(), pairs);
            }
            ["val", atom] => {
                spec.valuation.insert(atom.to_string(), values);
            }
            ["point"] => match values.as_slice() {
                [w] => point = Some(w.clone()),
                _ => return Err(format_err(line_no, "point takes one world")),
            },
            _ => return Err(format_err(line_no, format!("unknown key `{key_text}`"))),
        }
    }
    let model = spec.build()?;
    let point = point
        .map(|w| model.signature().world(&w))
        .transpose()?;
    Ok(ModelFile { model, point })
}

/// Renders a model in the text format accepted by [`parse_model_text`].
pub fn format_model_text(model: &Model, point: Option<WorldId>) -> String {
    let sig = model.signature();
    let mut out = String::new();
    let line = |key: &str, items: Vec<String>| {
        if items.is_empty() {
            format!("{key}:\n")
        } else {
            format!("{key}: {}\n", items.join(" "))
        }
    };
    out += &line("worlds", sig.worlds().to_vec());
    out += &line("agents", sig.agents().to_vec());
    out += &line("atoms", sig.atoms().to_vec());
    for (i, agent) in sig.agents().iter().enumerate() {
        let pairs = model
            .relation(i)
            .pairs()
            .map(|(w, u)| format!("{}-{}", sig.worlds()[w], sig.worlds()[u]))
            .collect();
        out += &line(&format!("rel {agent}"), pairs);
    }
    for (i, atom) in sig.atoms().iter().enumerate() {
        let worlds = model
            .atom_set(i)
            .iter()
            .map(|w| sig.worlds()[w].clone())
            .collect();
        out += &line(&format!("val {atom}"), worlds);
    }
    if let Some(p) = point {
        out += &line("point", vec![sig.worlds()[p].clone()]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Model {
        ModelSpec::new(&["w0", "w1", "w2"], &["a", "b"], &["p"])
            .rel("a", &[("w0", "w1"), ("w1", "w1")])
            .rel("b", &[("w0", "w1"), ("w0", "w2")])
            .val("p", &["w1"])
            .build()
            .unwrap()
    }

    #[test]
    fn distributed_relation_intersects() {
        let m = sample();
        let d = m.distributed_relation(&AgentSet::parse_list("a,b")).unwrap();
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(
            m.distributed_relation(&AgentSet::new()),
            Err(Error::EmptyGroup)
        );
        assert_eq!(
            m.distributed_relation(&AgentSet::parse_list("z")),
            Err(Error::UnknownAgent("z".into()))
        );
    }

    #[test]
    fn validation_errors() {
        let base = ModelSpec::new(&["w0"], &["a", "c"], &["p"]).rel("a", &[]);
        assert_eq!(
            validate_model(&base),
            Err(Error::MissingAgentRelation("c".into()))
        );
        let dangling = base.clone().rel("c", &[]).val("p", &["w9"]);
        assert_eq!(validate_model(&dangling), Err(Error::DanglingWorld("w9".into())));
        let atom = base.clone().rel("c", &[]).val("q", &["w0"]);
        assert_eq!(validate_model(&atom), Err(Error::UnknownAtom("q".into())));
        assert!(validate_model(&base.rel("c", &[("w0", "w0")])).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let m = sample();
        let text = format_model_text(&m, Some(2));
        let parsed = parse_model_text(&text).unwrap();
        assert_eq!(parsed.model, m);
        assert_eq!(parsed.point, Some(2));
    }

    #[test]
    fn text_rejects_unknown_key() {
        let err = parse_model_text("worlds: w0\nagents: a\nrel a:\ncolour: red\n").unwrap_err();
        assert_eq!(err.code(), "model-format");
    }

    #[test]
    fn text_accepts_comments_and_spacing() {
        let m = parse_model_text(
            "# demo\n  worlds :  w0   w1 \nagents: a\natoms: p\nrel a: w0-w1   # edge\nval p: w1\n",
        )
        .unwrap()
        .model;
        assert!(m.relation(0).contains(0, 1));
        assert_eq!(m.atom_set(0), WorldSet::from_worlds([1]));
    }

    #[test]
    fn properties_of_identity_and_empty() {
        let id = Relation::identity(3).properties();
        assert!(id.reflexive && id.symmetric && id.transitive && id.euclidean);
        let e = Relation::empty(2).properties();
        assert!(!e.reflexive && e.symmetric && e.transitive && e.euclidean);
    }
}
