//! Bounded validity search over enumerated or sampled models, plus
//! generators for axiom instances and random formulas.
//!
//! "Valid up to bound" means no countermodel exists among the models
//! searched; it is evidence, not a proof.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::kripke::{AgentSet, Model, PointedModel, Relation, Signature, WorldSet};
use crate::semantics::{satisfies, Compiled};
use crate::translate::translate;

/// Largest exhaustive search space, in bits of model description.
pub const EXHAUSTIVE_BIT_CAP: u32 = 24;

const SAMPLE_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
    pub mode: SearchMode,
}

impl SearchBounds {
    pub fn exhaustive(max_worlds: usize, agents: &[&str], atoms: &[&str]) -> Self {
        SearchBounds {
            max_worlds,
            agents: agents.iter().map(|s| s.to_string()).collect(),
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            mode: SearchMode::Exhaustive,
        }
    }

    pub fn sampled(mut self, count: usize, seed: u64) -> Self {
        self.mode = SearchMode::Sample { count, seed };
        self
    }

    /// Bits needed to describe one model with `n` worlds.
    pub fn bits(&self, n: usize) -> u32 {
        (n * n * self.agents.len() + n * self.atoms.len()) as u32
    }

    fn validate(&self) -> Result<()> {
        if self.max_worlds == 0 {
            return Err(Error::InvalidBounds("max_worlds must be at least 1".into()));
        }
        if self.agents.is_empty() || self.atoms.is_empty() {
            return Err(Error::InvalidBounds("agent and atom rosters must be nonempty".into()));
        }
        if self.mode == SearchMode::Exhaustive {
            let bits = self.bits(self.max_worlds);
            if bits > EXHAUSTIVE_BIT_CAP {
                return Err(Error::BoundsTooLarge(bits));
            }
        } else if self.max_worlds > crate::kripke::MAX_WORLDS {
            return Err(Error::TooManyWorlds(self.max_worlds));
        }
        Ok(())
    }

    fn signature(&self, n: usize) -> Result<Arc<Signature>> {
        Ok(Arc::new(Signature::numbered(n, &self.agents, &self.atoms)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    ValidUpToBound,
    Countermodel(PointedModel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub models_checked: u64,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.outcome == Outcome::ValidUpToBound
    }

    pub fn countermodel(&self) -> Option<&PointedModel> {
        match &self.outcome {
            Outcome::Countermodel(pm) => Some(pm),
            Outcome::ValidUpToBound => None,
        }
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Decodes a model index: the first agent's relation is most significant,
/// the last atom's valuation least significant. Pair (w,u) is bit `w*n+u`
/// of its relation word; world `w` is bit `w` of a valuation word.
fn decode(sig: &Arc<Signature>, mut index: u64) -> Model {
    let n = sig.world_count();
    let mut valuation = vec![WorldSet::EMPTY; sig.atoms().len()];
    for v in valuation.iter_mut().rev() {
        *v = WorldSet(index & low_mask(n));
        index >>= n;
    }
    let mut relations = vec![Relation::empty(n); sig.agents().len()];
    for r in relations.iter_mut().rev() {
        let word = index & low_mask(n * n);
        index >>= n * n;
        *r = Relation::from_rows((0..n).map(|w| WorldSet(word >> (w * n) & low_mask(n))).collect());
    }
    Model::new(Arc::clone(sig), relations, valuation).expect("decoded model is well formed")
}

/// A uniformly random model with `n` worlds.
pub fn random_model<R: Rng>(rng: &mut R, sig: &Arc<Signature>) -> Model {
    let n = sig.world_count();
    let relations = sig
        .agents()
        .iter()
        .map(|_| Relation::from_rows((0..n).map(|_| WorldSet(rng.gen::<u64>() & low_mask(n))).collect()))
        .collect();
    let valuation = sig
        .atoms()
        .iter()
        .map(|_| WorldSet(rng.gen::<u64>() & low_mask(n)))
        .collect();
    Model::new(Arc::clone(sig), relations, valuation).expect("random model is well formed")
}

/// A random model whose relations are all equivalence relations.
pub fn random_equivalence_model<R: Rng>(rng: &mut R, sig: &Arc<Signature>) -> Model {
    let n = sig.world_count();
    let relations = sig
        .agents()
        .iter()
        .map(|_| {
            let class: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            Relation::from_pairs(
                n,
                (0..n).flat_map(|w| (0..n).map(move |u| (w, u))).filter(|&(w, u)| class[w] == class[u]),
            )
        })
        .collect();
    let valuation = sig
        .atoms()
        .iter()
        .map(|_| WorldSet(rng.gen::<u64>() & low_mask(n)))
        .collect();
    Model::new(Arc::clone(sig), relations, valuation).expect("random model is well formed")
}

fn sample_stream(bounds: &SearchBounds, count: usize, seed: u64) -> Result<impl Iterator<Item = Model>> {
    let sigs = (1..=bounds.max_worlds)
        .map(|n| bounds.signature(n))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |_| {
        let sig = &sigs[rng.gen_range(0..sigs.len())];
        random_model(&mut rng, sig)
    }))
}

/// Models within the bounds. Exhaustive mode lists every labelled model
/// with exactly `max_worlds` worlds, in index order; sample mode draws
/// `count` models with 1..=`max_worlds` worlds from a seeded generator.
pub fn enumerate_models(bounds: &SearchBounds) -> Result<Box<dyn Iterator<Item = Model>>> {
    bounds.validate()?;
    match bounds.mode {
        SearchMode::Exhaustive => {
            let sig = bounds.signature(bounds.max_worlds)?;
            let total = 1u64 << bounds.bits(bounds.max_worlds);
            Ok(Box::new((0..total).map(move |i| decode(&sig, i))))
        }
        SearchMode::Sample { count, seed } => Ok(Box::new(sample_stream(bounds, count, seed)?)),
    }
}

fn first_failure(compiled: &Compiled, model: &Model) -> Result<Option<usize>> {
    let truth = compiled.truth_set(model)?;
    Ok(truth.complement(model.world_count()).iter().next())
}

fn countermodel_verdict(f: &Formula, model: Model, point: usize, checked: u64) -> Result<Verdict> {
    let pm = PointedModel::new(model, point)?;
    assert!(
        !satisfies(&pm, f)?,
        "countermodel failed re-verification for `{f}`"
    );
    Ok(Verdict {
        outcome: Outcome::Countermodel(pm),
        models_checked: checked,
    })
}

/// Searches for a pointed model falsifying `f`. Exhaustive mode tries world
/// counts 1..=`max_worlds` in turn, so the countermodel returned is the
/// first one in (size, index) order.
pub fn check_validity(f: &Formula, bounds: &SearchBounds) -> Result<Verdict> {
    bounds.validate()?;
    let mut checked = 0u64;
    match bounds.mode {
        SearchMode::Exhaustive => {
            for n in 1..=bounds.max_worlds {
                let sig = bounds.signature(n)?;
                let compiled = Compiled::new(f, &sig)?;
                let total = 1u64 << bounds.bits(n);
                let hit = (0..total).into_par_iter().find_map_first(|i| {
                    let model = decode(&sig, i);
                    match first_failure(&compiled, &model) {
                        Ok(Some(w)) => Some(Ok((i, model, w))),
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    }
                });
                if let Some(hit) = hit {
                    let (i, model, w) = hit?;
                    return countermodel_verdict(f, model, w, checked + i + 1);
                }
                checked += total;
            }
        }
        SearchMode::Sample { count, seed } => {
            let compiled: Vec<Compiled> = (1..=bounds.max_worlds)
                .map(|n| Compiled::new(f, &bounds.signature(n)?))
                .collect::<Result<_>>()?;
            let mut stream = sample_stream(bounds, count, seed)?;
            loop {
                let chunk: Vec<Model> = stream.by_ref().take(SAMPLE_CHUNK).collect();
                if chunk.is_empty() {
                    break;
                }
                let hit = chunk.par_iter().enumerate().find_map_first(|(i, model)| {
                    match first_failure(&compiled[model.world_count() - 1], model) {
                        Ok(Some(w)) => Some(Ok((i, w))),
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    }
                });
                if let Some(hit) = hit {
                    let (i, w) = hit?;
                    return countermodel_verdict(f, chunk[i].clone(), w, checked + i as u64 + 1);
                }
                checked += chunk.len() as u64;
            }
        }
    }
    Ok(Verdict {
        outcome: Outcome::ValidUpToBound,
        models_checked: checked,
    })
}

/// Bounded check that two formulas agree at every pointed model.
pub fn check_equivalence(a: &Formula, b: &Formula, bounds: &SearchBounds) -> Result<Verdict> {
    check_validity(&Formula::iff(a.clone(), b.clone()), bounds)
}

// ------------------------------------------------------ formula generation

/// Agents and atoms available to generated formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rosters {
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
}

impl Rosters {
    pub fn new(agents: &[&str], atoms: &[&str]) -> Self {
        Rosters {
            agents: agents.iter().map(|s| s.to_string()).collect(),
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn agent_set(&self) -> AgentSet {
        self.agents.iter().cloned().collect()
    }

    /// All subsets of the agent roster, smallest first.
    pub fn groups(&self) -> Vec<AgentSet> {
        let n = self.agents.len();
        let mut out: Vec<AgentSet> = (0..1u64 << n)
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.agents[i].clone())
                    .collect()
            })
            .collect();
        out.sort_by_key(|g: &AgentSet| g.len());
        out
    }

    pub fn nonempty_groups(&self) -> Vec<AgentSet> {
        self.groups().into_iter().filter(|g| !g.is_empty()).collect()
    }
}

/// Which constructors a random formula may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorMix {
    pub eee: bool,
    pub see: bool,
    pub sse: bool,
    /// Allow `K`, `|`, `->`, `<->`, `true`, `false` and `Dhat`.
    pub derived: bool,
}

impl OperatorMix {
    pub const ALL: OperatorMix = OperatorMix {
        eee: true,
        see: true,
        sse: true,
        derived: true,
    };
    pub const STATIC: OperatorMix = OperatorMix {
        eee: false,
        see: false,
        sse: false,
        derived: true,
    };
}

/// A random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, rosters: &Rosters, mix: OperatorMix) -> Formula {
    let atom = |rng: &mut R| Formula::atom(rosters.atoms.choose(rng).expect("atoms"));
    if depth == 0 {
        if mix.derived && rng.gen_ratio(1, 12) {
            return if rng.gen() { Formula::Top } else { Formula::Bot };
        }
        return atom(rng);
    }
    let groups = rosters.groups();
    let nonempty = rosters.nonempty_groups();
    let group = |rng: &mut R| groups.choose(rng).expect("groups").clone();
    let nonempty_group = |rng: &mut R| nonempty.choose(rng).expect("groups").clone();
    let mut kinds = vec!["atom", "not", "and", "d"];
    if mix.eee {
        kinds.extend(["eee"; 2]);
    }
    if mix.see {
        kinds.extend(["see"; 2]);
    }
    if mix.sse {
        kinds.extend(["sse"; 2]);
    }
    if mix.derived {
        kinds.extend(["k", "or", "implies", "iff", "dhat"]);
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, rosters, mix);
    match *kinds.choose(rng).expect("kinds") {
        "atom" => atom(rng),
        "not" => Formula::not(sub(rng)),
        "and" => Formula::and(sub(rng), sub(rng)),
        "or" => Formula::or(sub(rng), sub(rng)),
        "implies" => Formula::implies(sub(rng), sub(rng)),
        "iff" => Formula::iff(sub(rng), sub(rng)),
        "d" => Formula::d(nonempty_group(rng), sub(rng)),
        "k" => Formula::k(rosters.agents.choose(rng).expect("agents"), sub(rng)),
        "eee" => Formula::eee(sub(rng)),
        "see" => Formula::see(group(rng), sub(rng)),
        "sse" => Formula::sse(group(rng), sub(rng), sub(rng)),
        "dhat" => Formula::dhat(nonempty_group(rng), sub(rng), sub(rng)),
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------- axiom schemas

/// Names accepted by [`axiom_instances`].
pub const SCHEMAS: [&str; 18] = [
    "K_D", "M_D", "G_D", "EEE_p", "EEE_not", "EEE_and", "EEE_D", "RE_EEE", "SEE_p", "SEE_not",
    "SEE_and", "SEE_D", "RE_SEE", "SSE_p", "SSE_not", "SSE_and", "SSE_D", "RE_SSE",
];

#[derive(Clone)]
struct Params {
    phi: Formula,
    psi: Formula,
    chi: Formula,
    atom: String,
    group: AgentSet,
    group2: AgentSet,
    senders: AgentSet,
    variant: usize,
}

#[derive(Clone, Copy)]
enum Op {
    Eee,
    See,
    Sse,
}

fn update(op: Op, p: &Params, body: Formula) -> Formula {
    match op {
        Op::Eee => Formula::eee(body),
        Op::See => Formula::see(p.senders.clone(), body),
        Op::Sse => Formula::sse(p.senders.clone(), p.chi.clone(), body),
    }
}

/// A formula equivalent to `p.phi`, chosen by `p.variant`.
fn equivalent(p: &Params, rosters: &Rosters) -> Formula {
    let phi = p.phi.clone();
    match p.variant % 6 {
        0 => Formula::not(Formula::not(phi)),
        1 => Formula::and(phi.clone(), phi),
        2 => Formula::and(phi, Formula::or(p.psi.clone(), Formula::not(p.psi.clone()))),
        3 => Formula::or(Formula::and(phi.clone(), p.psi.clone()), Formula::and(phi, Formula::not(p.psi.clone()))),
        4 => translate(&phi, &rosters.agent_set()).expect("generated formula uses roster agents"),
        _ => Formula::not(Formula::or(Formula::not(phi), Formula::Bot)),
    }
}

fn instance(schema: &str, p: &Params, rosters: &Rosters) -> Formula {
    let (phi, psi) = (p.phi.clone(), p.psi.clone());
    let d = |g: &AgentSet, f: Formula| Formula::d(g.clone(), f);
    let op_name = schema.strip_prefix("RE_").unwrap_or(schema);
    let op = match &op_name[..3] {
        "EEE" => Some(Op::Eee),
        "SEE" => Some(Op::See),
        "SSE" => Some(Op::Sse),
        _ => None,
    };
    match (schema, op) {
        ("K_D", _) => Formula::implies(
            d(&p.group, Formula::implies(phi.clone(), psi.clone())),
            Formula::implies(d(&p.group, phi), d(&p.group, psi)),
        ),
        ("M_D", _) => Formula::implies(d(&p.group, phi.clone()), d(&p.group.union(&p.group2), phi)),
        ("G_D", _) => {
            let inner = SCHEMAS[3 + p.variant % (SCHEMAS.len() - 3)];
            let valid = match p.variant % 4 {
                0 => Formula::or(phi.clone(), Formula::not(phi)),
                1 => instance("K_D", p, rosters),
                2 => Formula::iff(phi.clone(), equivalent(p, rosters)),
                _ => instance(inner, p, rosters),
            };
            d(&p.group, valid)
        }
        (_, Some(op)) if schema.ends_with("_p") => {
            let atom = Formula::atom(&p.atom);
            Formula::iff(update(op, p, atom.clone()), atom)
        }
        (_, Some(op)) if schema.ends_with("_not") => Formula::iff(
            update(op, p, Formula::not(phi.clone())),
            Formula::not(update(op, p, phi)),
        ),
        (_, Some(op)) if schema.ends_with("_and") => Formula::iff(
            update(op, p, Formula::and(phi.clone(), psi.clone())),
            Formula::and(update(op, p, phi), update(op, p, psi)),
        ),
        ("EEE_D", _) => Formula::iff(
            Formula::eee(d(&p.group, phi.clone())),
            d(&rosters.agent_set(), Formula::eee(phi)),
        ),
        ("SEE_D", _) => Formula::iff(
            Formula::see(p.senders.clone(), d(&p.group, phi.clone())),
            d(&p.senders.union(&p.group), Formula::see(p.senders.clone(), phi)),
        ),
        ("SSE_D", _) => {
            let shared = Formula::sse(p.senders.clone(), p.chi.clone(), phi.clone());
            Formula::iff(
                Formula::sse(p.senders.clone(), p.chi.clone(), d(&p.group, phi)),
                Formula::and(
                    d(&p.senders.union(&p.group), shared.clone()),
                    Formula::dhat(p.group.clone(), p.chi.clone(), shared),
                ),
            )
        }
        (_, Some(op)) if schema.starts_with("RE_") => {
            Formula::iff(update(op, p, phi), update(op, p, equivalent(p, rosters)))
        }
        _ => unreachable!("schema checked by caller"),
    }
}

/// Stream of instances of a named schema.
///
/// The stream starts with every distinct instance whose formula parameters
/// are atoms, then continues forever with seeded random instances whose
/// parameters are formulas of depth at most `depth`. Repeats are skipped
/// while fresh instances can still be found.
pub fn axiom_instances(schema: &str, depth: usize, rosters: &Rosters) -> Result<AxiomInstances> {
    if !SCHEMAS.contains(&schema) {
        return Err(Error::UnknownSchema(schema.to_string()));
    }
    let mut prefix = Vec::new();
    let groups = rosters.groups();
    let nonempty = rosters.nonempty_groups();
    for group in &nonempty {
        for group2 in &nonempty {
            for senders in &groups {
                for phi in &rosters.atoms {
                    for psi in &rosters.atoms {
                        for chi in &rosters.atoms {
                            for variant in 0..6 {
                                prefix.push(Params {
                                    phi: Formula::atom(phi),
                                    psi: Formula::atom(psi),
                                    chi: Formula::atom(chi),
                                    atom: phi.clone(),
                                    group: group.clone(),
                                    group2: group2.clone(),
                                    senders: senders.clone(),
                                    variant,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomInstances {
        schema: schema.to_string(),
        depth,
        rosters: rosters.clone(),
        prefix: prefix.into_iter(),
        rng: ChaCha8Rng::seed_from_u64(0x005e_ed0f_a710),
        seen: HashSet::new(),
    })
}

pub struct AxiomInstances {
    schema: String,
    depth: usize,
    rosters: Rosters,
    prefix: std::vec::IntoIter<Params>,
    rng: ChaCha8Rng,
    seen: HashSet<Formula>,
}

impl AxiomInstances {
    fn random_params(&mut self) -> Params {
        let rng = &mut self.rng;
        let r = &self.rosters;
        let f = |rng: &mut ChaCha8Rng| random_formula(rng, self.depth, r, OperatorMix::ALL);
        let groups = r.groups();
        let nonempty = r.nonempty_groups();
        Params {
            phi: f(rng),
            psi: f(rng),
            chi: f(rng),
            atom: r.atoms.choose(rng).expect("atoms").clone(),
            group: nonempty.choose(rng).expect("groups").clone(),
            group2: nonempty.choose(rng).expect("groups").clone(),
            senders: groups.choose(rng).expect("groups").clone(),
            variant: rng.gen_range(0..1000),
        }
    }
}

impl Iterator for AxiomInstances {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        for p in self.prefix.by_ref() {
            let f = instance(&self.schema, &p, &self.rosters);
            if self.seen.insert(f.clone()) {
                return Some(f);
            }
        }
        let mut last = None;
        for _ in 0..1000 {
            let p = self.random_params();
            let f = instance(&self.schema, &p, &self.rosters);
            if self.seen.insert(f.clone()) {
                return Some(f);
            }
            last = Some(f);
        }
        last
    }
}
