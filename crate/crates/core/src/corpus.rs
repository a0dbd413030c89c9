//! Worked-example models and a ledger of every concrete claim made about
//! them, each re-checkable by evaluation.

use std::fmt;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::formula::{parse, Formula};
use crate::kripke::{AgentSet, Model, ModelSpec, PointedModel, Relation, RelationProperties, WorldSet};
use crate::semantics::{satisfies, truth_set};
use crate::transforms::{apply_eee, apply_see, apply_sse};

/// Four worlds, everyone knows one atom; all relations are equivalences.
pub fn model_m1() -> Model {
    ModelSpec::new(&["w0", "w1", "w2", "w3"], &["a", "b", "c"], &["p", "q", "r"])
        .loops_everywhere()
        .edge("w0", "w1", &["a", "c"])
        .edge("w0", "w2", &["a", "b"])
        .edge("w0", "w3", &["b", "c"])
        .edge("w1", "w2", &["a"])
        .edge("w1", "w3", &["c"])
        .edge("w2", "w3", &["b"])
        .val("p", &["w0", "w1", "w2"])
        .val("q", &["w0", "w2", "w3"])
        .val("r", &["w0", "w1", "w3"])
        .build()
        .expect("m1 is well formed")
}

/// Four worlds where the group as a whole cannot settle `p` and `r`.
pub fn model_m2() -> Model {
    ModelSpec::new(&["w0", "w1", "w2", "w3"], &["a", "b", "c"], &["p", "q", "r"])
        .loops_everywhere()
        .edge("w0", "w1", &["a"])
        .edge("w0", "w2", &["b"])
        .edge("w0", "w3", &["a", "b", "c"])
        .edge("w1", "w3", &["a"])
        .edge("w2", "w3", &["b"])
        .val("p", &["w0", "w1"])
        .val("q", &["w0", "w3"])
        .val("r", &["w0", "w2"])
        .build()
        .expect("m2 is well formed")
}

/// Five worlds with misleading, non-reflexive information at `w0`.
pub fn model_m3() -> Model {
    ModelSpec::new(&["w0", "w1", "w2", "w3", "w4"], &["a", "b"], &["p", "q"])
        .loops(&["w1", "w2", "w3", "w4"])
        .rel("a", &[("w0", "w1"), ("w0", "w2")])
        .rel("b", &[("w0", "w3"), ("w0", "w4")])
        .edge("w1", "w2", &["b"])
        .edge("w3", "w4", &["a"])
        .val("p", &["w0", "w1", "w2", "w3"])
        .val("q", &["w0", "w1", "w3", "w4"])
        .build()
        .expect("m3 is well formed")
}

const CUBE_WORLDS: [&str; 8] = ["w0", "w1", "w2", "w3", "w4", "w5", "w6", "w7"];

fn cube_spec() -> ModelSpec {
    ModelSpec::new(&CUBE_WORLDS, &["a", "b", "c"], &["m_a", "m_b", "m_c"])
        .loops_everywhere()
        .val("m_a", &["w2", "w3", "w6", "w7"])
        .val("m_b", &["w0", "w2", "w4", "w6"])
        .val("m_c", &["w0", "w1", "w2", "w3"])
}

/// Cube-shaped model with one atom per agent and equivalence relations.
pub fn model_cube() -> Model {
    cube_spec()
        .edge("w0", "w2", &["a"])
        .edge("w1", "w3", &["a"])
        .edge("w4", "w6", &["a"])
        .edge("w0", "w1", &["b"])
        .edge("w2", "w3", &["b"])
        .edge("w6", "w7", &["b"])
        .edge("w0", "w4", &["c"])
        .edge("w2", "w6", &["c"])
        .edge("w3", "w7", &["c"])
        .build()
        .expect("cube is well formed")
}

/// Three worlds where sharing about `p` changes nothing although the
/// group knows `p` distributively.
pub fn prop8_countermodel() -> Model {
    ModelSpec::new(&["w0", "w1", "w2"], &["a", "b"], &["p"])
        .rel("a", &[("w0", "w2")])
        .rel("b", &[("w0", "w2"), ("w0", "w1")])
        .val("p", &["w2"])
        .build()
        .expect("three-world model is well formed")
}

/// `K_i m_i | K_i ~m_i`: agent `i` knows the value of its own atom.
pub fn chi(agent: &str) -> Formula {
    f(&format!("K_{agent} m_{agent} | K_{agent} ~m_{agent}"))
}

/// Disjunction of [`chi`] over the three cube agents.
pub fn chi_any() -> Formula {
    Formula::disj(["a", "b", "c"].map(chi))
}

fn f(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("ledger formula `{text}`: {e}"))
}

fn group(list: &str) -> AgentSet {
    AgentSet::parse_list(list)
}

/// What a claim asserts.
#[derive(Debug, Clone)]
pub enum Subject {
    /// The formula holds at the pointed model.
    Holds { at: PointedModel, formula: Formula },
    /// A computed model equals a hand-encoded one.
    SameModel { computed: Result<Model>, expected: Model },
    /// The truth set of a formula is exactly the given set.
    TruthSet { model: Model, formula: Formula, expected: WorldSet },
    /// A relation has (or lacks) all the listed properties.
    Properties { relation: Result<Relation>, check: fn(&RelationProperties) -> bool, what: &'static str },
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    pub source: &'static str,
    pub subject: Subject,
    pub expected: bool,
}

impl Claim {
    pub fn evaluate(&self) -> Result<bool> {
        match &self.subject {
            Subject::Holds { at, formula } => satisfies(at, formula),
            Subject::SameModel { computed, expected } => Ok(computed.as_ref().map_err(Clone::clone)? == expected),
            Subject::TruthSet { model, formula, expected } => Ok(truth_set(model, formula)? == *expected),
            Subject::Properties { relation, check, .. } => Ok(check(&relation.as_ref().map_err(Clone::clone)?.properties())),
        }
    }

    pub fn describe(&self) -> String {
        match &self.subject {
            Subject::Holds { at, formula } => {
                format!("at {}: {}", at.model.signature().worlds()[at.point], formula)
            }
            Subject::SameModel { .. } => "computed model equals encoded model".to_string(),
            Subject::TruthSet { formula, expected, .. } => format!("truth set of {formula} = {expected:?}"),
            Subject::Properties { what, .. } => what.to_string(),
        }
    }
}

struct Ledger(Vec<Claim>);

impl Ledger {
    fn push(&mut self, id: &str, source: &'static str, subject: Subject, expected: bool) {
        self.0.push(Claim {
            id: id.to_string(),
            source,
            subject,
            expected,
        });
    }

    fn holds(&mut self, id: &str, source: &'static str, model: &Model, world: &str, formula: &str, expected: bool) {
        self.holds_formula(id, source, model, world, f(formula), expected);
    }

    fn holds_formula(&mut self, id: &str, source: &'static str, model: &Model, world: &str, formula: Formula, expected: bool) {
        let at = PointedModel::at(model, world).expect("ledger world exists");
        self.push(id, source, Subject::Holds { at, formula }, expected);
    }

    fn same(&mut self, id: &str, source: &'static str, computed: Result<Model>, expected: Model) {
        self.push(id, source, Subject::SameModel { computed, expected }, true);
    }

    fn truth(&mut self, id: &str, source: &'static str, model: &Model, formula: Formula, worlds: &[usize]) {
        let expected = WorldSet::from_worlds(worlds.iter().copied());
        self.push(id, source, Subject::TruthSet { model: model.clone(), formula, expected }, true);
    }
}

fn m1_variant(edges: &[(&str, &str, &[&str])]) -> Model {
    let mut spec = ModelSpec::new(&["w0", "w1", "w2", "w3"], &["a", "b", "c"], &["p", "q", "r"])
        .loops_everywhere()
        .val("p", &["w0", "w1", "w2"])
        .val("q", &["w0", "w2", "w3"])
        .val("r", &["w0", "w1", "w3"]);
    for (w, u, agents) in edges {
        spec = spec.edge(w, u, agents);
    }
    spec.build().expect("encoded model is well formed")
}

fn cube_variant(edges: &[(&str, &str, &str)]) -> Model {
    let mut spec = cube_spec();
    for (w, u, agent) in edges {
        spec = spec.edge(w, u, &[agent]);
    }
    spec.build().expect("encoded model is well formed")
}

/// Every ledgered claim, in a fixed order.
pub fn claims() -> Vec<Claim> {
    let (m1, m2, m3, cube) = (model_m1(), model_m2(), model_m3(), model_cube());
    let mut l = Ledger(Vec::new());

    // Static examples.
    let s = "first static example (M1), agent a";
    l.holds("m1.static.a", s, &m1, "w0", "K_a p & (~K_a q & ~K_a ~q) & (~K_a r & ~K_a ~r)", true);
    let s = "first static example (M1), agent b";
    l.holds("m1.static.b", s, &m1, "w0", "(~K_b p & ~K_b ~p) & K_b q & (~K_b r & ~K_b ~r)", true);
    let s = "first static example (M1), agent c";
    l.holds("m1.static.c", s, &m1, "w0", "(~K_c p & ~K_c ~p) & (~K_c q & ~K_c ~q) & K_c r", true);
    let who_knows = "((K_a p | K_a ~p) & (K_b q | K_b ~q) & (K_c r | K_c ~r))";
    let s = "first static example (M1), everyone knows who knows what";
    l.holds("m1.static.who-knows", s, &m1, "w0", &format!("K_a {who_knows} & K_b {who_knows} & K_c {who_knows}"), true);
    let s = "first static example (M1), distributed knowledge";
    l.holds("m1.static.distributed", s, &m1, "w0", "D{a,b}(p & q) & D{a,c}(p & r) & D{b,c}(q & r) & D{a,b,c}(p & q & r)", true);
    let s = "second static example (M2), agent a";
    l.holds("m2.static.a", s, &m2, "w0", "K_a (p | q) & (~K_a p & ~K_a ~p) & (~K_a q & ~K_a ~q)", true);
    let s = "second static example (M2), agent b";
    l.holds("m2.static.b", s, &m2, "w0", "K_b (q | r) & (~K_b q & ~K_b ~q) & (~K_b r & ~K_b ~r)", true);
    let s = "second static example (M2), agent c";
    l.holds("m2.static.c", s, &m2, "w0", "(~K_c p & ~K_c ~p) & K_c q & (~K_c r & ~K_c ~r)", true);
    let s = "second static example (M2), not enough information collectively";
    l.holds("m2.static.distributed", s, &m2, "w0", "D{a,b} q & D{a,c} q & D{b,c} q & ~D{a,b,c}(p & r)", true);
    let s = "third static example (M3), misleading information";
    l.holds("m3.static.misled", s, &m3, "w0", "K_a p & (~K_a q & ~K_a ~q) & (~K_b p & ~K_b ~p) & K_b q", true);
    l.holds("m3.static.nested", s, &m3, "w0", "K_a (K_b p & (~K_b q & ~K_b ~q)) & K_b ((~K_a p & ~K_a ~p) & K_a q)", true);
    let s = "third static example (M3), the pair would believe inconsistencies";
    l.holds("m3.static.inconsistent", s, &m3, "w0", "D{a,b} false", true);

    // Everyone shares everything.
    let loops_only = m1_variant(&[]);
    let s = "first everyone-shares example, result diagram";
    l.same("m1.eee.model", s, Ok(apply_eee(&m1)), loops_only);
    let s = "first everyone-shares example, displayed formula";
    l.holds("m1.eee.formula", s, &m1, "w0", "D{a,b,c}(p & q & r) & [eee](K_a (p & q & r) & K_b (p & q & r) & K_c (p & q & r))", true);
    let m2_shared = ModelSpec::new(&["w0", "w1", "w2", "w3"], &["a", "b", "c"], &["p", "q", "r"])
        .loops_everywhere()
        .edge("w0", "w3", &["a", "b", "c"])
        .val("p", &["w0", "w1"])
        .val("q", &["w0", "w3"])
        .val("r", &["w0", "w2"])
        .build()
        .expect("encoded model is well formed");
    let s = "second everyone-shares example, result diagram";
    l.same("m2.eee.model", s, Ok(apply_eee(&m2)), m2_shared.clone());
    let s = "second everyone-shares example, displayed formula";
    l.holds("m2.eee.formula", s, &m2, "w0", "D{a,b,c} q & [eee](K_a q & K_b q & K_c q)", true);
    let m3_shared = ModelSpec::new(&["w0", "w1", "w2", "w3", "w4"], &["a", "b"], &["p", "q"])
        .loops(&["w1", "w2", "w3", "w4"])
        .rel("a", &[])
        .rel("b", &[])
        .val("p", &["w0", "w1", "w2", "w3"])
        .val("q", &["w0", "w1", "w3", "w4"])
        .build()
        .expect("encoded model is well formed");
    let s = "third everyone-shares example, result diagram";
    l.same("m3.eee.model", s, Ok(apply_eee(&m3)), m3_shared);
    let s = "third everyone-shares example, displayed formula";
    l.holds("m3.eee.formula", s, &m3, "w0", "D{a,b} false & [eee](K_a false & K_b false)", true);
    let s = "distributed knowledge need not become knowledge after everyone shares";
    l.holds("m1.eee.dk-lost", s, &m1, "w0", "D{a,b,c} ~K_b p & ~[eee] K_a ~K_b p", true);
    l.holds("m1.eee.dk-lost.implication", s, &m1, "w0", "D{a,b,c} ~K_b p -> [eee] K_a ~K_b p", false);

    // A group shares everything.
    let m1_ab = ModelSpec::new(&["w0", "w1", "w2", "w3"], &["a", "b", "c"], &["p", "q", "r"])
        .loops_everywhere()
        .edge("w0", "w2", &["a", "b"])
        .val("p", &["w0", "w1", "w2"])
        .val("q", &["w0", "w2", "w3"])
        .val("r", &["w0", "w1", "w3"])
        .build()
        .expect("encoded model is well formed");
    let s = "first group-shares example, result diagram";
    l.same("m1.see-ab.model", s, apply_see(&m1, &group("a,b")), m1_ab);
    let s = "first group-shares example, displayed formula";
    l.holds(
        "m1.see-ab.formula",
        s,
        &m1,
        "w0",
        "(D{a,b}(p & q) & K_c r) & [see a,b]((K_a (p & q) & (~K_a r & ~K_a ~r)) & (K_b (p & q) & (~K_b r & ~K_b ~r)) & K_c (p & q & r))",
        true,
    );
    let s = "second group-shares example: {a,b} sharing equals c sharing";
    l.same("m2.see-ab.equals-see-c", s, apply_see(&m2, &group("c")), apply_see(&m2, &group("a,b")).expect("roster agents"));
    let s = "second group-shares example: {a,b} sharing equals everyone sharing";
    l.same("m2.see-ab.equals-eee", s, apply_see(&m2, &group("a,b")), apply_eee(&m2));
    let s = "second group-shares example, result diagram";
    l.same("m2.see-ab.model", s, apply_see(&m2, &group("a,b")), m2_shared);
    let s = "second group-shares example: what a,b know together is what c knows";
    l.push(
        "m2.dist-ab.equals-c",
        s,
        Subject::Properties {
            relation: m2.distributed_relation(&group("a,b")).map(|d| {
                // Identity when equal to R_c, otherwise the difference.
                if Ok(&d) == m2.relation_of("c") {
                    Relation::identity(4)
                } else {
                    Relation::empty(4)
                }
            }),
            check: |p| p.reflexive,
            what: "distributed relation of {a,b} equals the relation of c",
        },
        true,
    );
    let s = "second group-shares example, schematic equivalence instantiated";
    for (i, phi) in ["K_a q & ~K_b p", "D{a,b} q", "K_c (q & ~r) | K_a p"].iter().enumerate() {
        l.holds(
            &format!("m2.see-ab.schema.{i}"),
            s,
            &m2,
            "w0",
            &format!("([see a,b]({phi}) <-> [see c]({phi})) & ([see a,b]({phi}) <-> [eee]({phi}))"),
            true,
        );
    }
    let s = "group sharing need not turn distributed knowledge into knowledge";
    l.holds("m1.see-ab.dk-lost", s, &m1, "w0", "D{a,b} ~K_b p & ~[see a,b] K_a ~K_b p", true);
    l.holds("m1.see-ab.dk-lost.implication", s, &m1, "w0", "D{a,b} ~K_b p -> [see a,b] K_a ~K_b p", false);

    // A group shares what it knows about a topic.
    let all = group("a,b,c");
    let s = "topic sharing by everyone, topic p, result diagram";
    l.same(
        "m1.sse-all.p",
        s,
        apply_sse(&m1, &all, &f("p")),
        m1_variant(&[("w0", "w1", &["a", "c"]), ("w0", "w2", &["a", "b"]), ("w1", "w2", &["a"])]),
    );
    let s = "topic sharing by everyone, topic q, result diagram";
    l.same(
        "m1.sse-all.q",
        s,
        apply_sse(&m1, &all, &f("q")),
        m1_variant(&[("w0", "w2", &["a", "b"]), ("w0", "w3", &["b", "c"]), ("w2", "w3", &["b"])]),
    );
    let s = "topic sharing by everyone, topic r, result diagram";
    l.same(
        "m1.sse-all.r",
        s,
        apply_sse(&m1, &all, &f("r")),
        m1_variant(&[("w0", "w1", &["a", "c"]), ("w0", "w3", &["b", "c"]), ("w1", "w3", &["c"])]),
    );
    let s = "topic sharing on p: a learns that b and c now know p's value (interpretation of an informal remark)";
    l.holds("m1.sse-all.p.a-learns", s, &m1, "w0", "[sse a,b,c | p] K_a ((K_b p | K_b ~p) & (K_c p | K_c ~p))", true);
    l.holds("m1.sse-all.p.a-before", s, &m1, "w0", "K_a ((K_b p | K_b ~p) & (K_c p | K_c ~p))", false);
    let s = "topic sharing by {a,b}, topic p & q, result diagram";
    l.same(
        "m1.sse-ab.p-and-q",
        s,
        apply_sse(&m1, &group("a,b"), &f("p & q")),
        m1_variant(&[("w0", "w2", &["a", "b"]), ("w1", "w3", &["c"])]),
    );
    let s = "topic sharing by {a,b}, topic p & r, result diagram";
    l.same(
        "m1.sse-ab.p-and-r",
        s,
        apply_sse(&m1, &group("a,b"), &f("p & r")),
        m1_variant(&[("w0", "w1", &["a", "c"]), ("w0", "w2", &["a", "b"]), ("w2", "w3", &["b"])]),
    );
    let s = "topic sharing by {a,b}, topic q & r, result diagram";
    l.same(
        "m1.sse-ab.q-and-r",
        s,
        apply_sse(&m1, &group("a,b"), &f("q & r")),
        m1_variant(&[("w0", "w2", &["a", "b"]), ("w0", "w3", &["b", "c"]), ("w1", "w2", &["a"])]),
    );
    let s = "topic sharing by {a,b} on p & q: everyone knows p and q, c knows the real situation";
    l.holds(
        "m1.sse-ab.p-and-q.knowledge",
        s,
        &m1,
        "w0",
        "[sse a,b | p & q]((K_a p & K_a q) & (K_b p & K_b q) & (K_c p & K_c q) & K_c r)",
        true,
    );
    let s = "topic sharing by {a,b} on q & r: only a and c know two atoms' values";
    l.holds(
        "m1.sse-ab.q-and-r.knowledge",
        s,
        &m1,
        "w0",
        "[sse a,b | q & r]((K_a p & K_a q & ~K_a r & ~K_a ~r) & (K_c q & K_c r & ~K_c p & ~K_c ~p) & (K_b q & ~K_b p & ~K_b ~p & ~K_b r & ~K_b ~r))",
        true,
    );
    let s = "topic sharing does not preserve transitivity (M1, {a,b}, p & r, agent a)";
    l.push(
        "m1.sse-ab.p-and-r.not-transitive",
        s,
        Subject::Properties {
            relation: apply_sse(&m1, &group("a,b"), &f("p & r")).map(|m| m.relation(0).clone()),
            check: |p| p.reflexive && p.symmetric && !p.transitive,
            what: "agent a's relation is reflexive and symmetric but not transitive",
        },
        true,
    );

    let p8 = prop8_countermodel();
    let s = "distributed knowledge need not survive topic sharing: the group knows p";
    l.holds("three.dk", s, &p8, "w0", "D{a,b} p", true);
    let s = "distributed knowledge need not survive topic sharing: the update changes nothing";
    l.same("three.sse-unchanged", s, apply_sse(&p8, &group("a,b"), &f("p")), p8.clone());
    let s = "distributed knowledge need not survive topic sharing: b still does not know p";
    l.holds("three.sse.b-ignorant", s, &p8, "w0", "[sse a,b | p] K_b p", false);
    let s = "full-ignorance relation on p in the three-world model";
    l.push(
        "three.ignorance-relation",
        s,
        Subject::SameModel {
            computed: crate::transforms::full_ignorance_relation(&p8, &f("p"))
                .map(|r| p8.with_relations(vec![r.clone(), r])),
            expected: {
                let r = Relation::from_pairs(3, [(0, 2), (2, 0), (1, 2), (2, 1)]);
                p8.with_relations(vec![r.clone(), r])
            },
        },
        true,
    );

    // Non-validities for repeated topic sharing (cube).
    let (chi_a, chi_b, chi_c, chi_or) = (chi("a"), chi("b"), chi("c"), chi_any());
    let sse = |g: &str, topic: &Formula, body: Formula| Formula::sse(group(g), topic.clone(), body);
    let s = "cube relations are equivalence relations";
    for (i, agent) in ["a", "b", "c"].iter().enumerate() {
        l.push(
            &format!("cube.equivalence.{agent}"),
            s,
            Subject::Properties {
                relation: Ok(cube.relation(i).clone()),
                check: RelationProperties::is_equivalence,
                what: "relation is an equivalence",
            },
            true,
        );
    }
    let s = "cube: chi_a holds exactly at w5, w7";
    l.truth("cube.chi-a", s, &cube, chi_a.clone(), &[5, 7]);
    let s = "cube: the disjunction fails exactly at w0, w2, w3, w6";
    l.truth("cube.chi-any", s, &cube, Formula::not(chi_or.clone()), &[0, 2, 3, 6]);
    let s = "cube: chi_c holds exactly at w1, w5";
    l.truth("cube.chi-c", s, &cube, chi_c.clone(), &[1, 5]);

    let c_m2 = cube_variant(&[("w0", "w2", "a"), ("w2", "w3", "b"), ("w2", "w6", "c")]);
    let c_m3 = cube_variant(&[]);
    let step1 = apply_sse(&cube, &all, &chi_or);
    let s = "repeated sharing on the disjunction: first result diagram";
    l.same("cube.repeat.first", s, step1.clone(), c_m2.clone());
    let s = "repeated sharing on the disjunction: it now fails only at w2";
    l.truth("cube.repeat.first.truth", s, &c_m2, Formula::not(chi_or.clone()), &[2]);
    let s = "repeated sharing on the disjunction: second result diagram";
    l.same("cube.repeat.second", s, step1.and_then(|m| apply_sse(&m, &all, &chi_or)), c_m3.clone());
    let s = "two sharing acts on the same topic cannot be collapsed into one";
    l.holds_formula("cube.repeat.twice", s, &cube, "w2", sse("a,b,c", &chi_or, sse("a,b,c", &chi_or, chi_a.clone())), true);
    l.holds_formula("cube.repeat.once", s, &cube, "w2", sse("a,b,c", &chi_or, chi_a.clone()), false);
    let s = "topic sharing need not turn distributed knowledge into knowledge, even on reflexive models";
    l.holds_formula(
        "cube.repeat.dk-lost",
        s,
        &cube,
        "w2",
        Formula::and(
            Formula::d(all.clone(), Formula::not(chi_or.clone())),
            Formula::not(sse("a,b,c", &Formula::not(chi_or.clone()), Formula::k("a", Formula::not(chi_or.clone())))),
        ),
        true,
    );

    let c_m2p = cube_variant(&[
        ("w0", "w2", "a"),
        ("w1", "w3", "a"),
        ("w4", "w6", "a"),
        ("w0", "w1", "b"),
        ("w2", "w3", "b"),
        ("w0", "w4", "c"),
        ("w2", "w6", "c"),
    ]);
    let c_m3p = cube_variant(&[
        ("w0", "w2", "a"),
        ("w1", "w3", "a"),
        ("w4", "w6", "a"),
        ("w0", "w4", "c"),
        ("w2", "w6", "c"),
    ]);
    let c_m2pp = cube_variant(&[
        ("w0", "w2", "a"),
        ("w4", "w6", "a"),
        ("w2", "w3", "b"),
        ("w6", "w7", "b"),
        ("w0", "w4", "c"),
        ("w2", "w6", "c"),
        ("w3", "w7", "c"),
    ]);
    let c_m3pp = cube_variant(&[
        ("w0", "w2", "a"),
        ("w4", "w6", "a"),
        ("w0", "w4", "c"),
        ("w2", "w6", "c"),
        ("w3", "w7", "c"),
    ]);
    let s = "non-commuting sharing acts: a on chi_a first, result diagram";
    let first_a = apply_sse(&cube, &group("a"), &chi_a);
    l.same("cube.order.a-first", s, first_a.clone(), c_m2p.clone());
    let s = "non-commuting sharing acts: chi_c after the first act";
    l.truth("cube.order.a-first.truth", s, &c_m2p, chi_c.clone(), &[1, 3, 5, 7]);
    let s = "non-commuting sharing acts: then b,c on chi_c, result diagram";
    l.same("cube.order.a-then-bc", s, first_a.and_then(|m| apply_sse(&m, &group("b,c"), &chi_c)), c_m3p.clone());
    let s = "non-commuting sharing acts: b,c on chi_c first, result diagram";
    let first_bc = apply_sse(&cube, &group("b,c"), &chi_c);
    l.same("cube.order.bc-first", s, first_bc.clone(), c_m2pp.clone());
    let s = "non-commuting sharing acts: chi_a after the first act";
    l.truth("cube.order.bc-first.truth", s, &c_m2pp, chi_a.clone(), &[1, 3, 5, 7]);
    let s = "non-commuting sharing acts: then a on chi_a, result diagram";
    l.same("cube.order.bc-then-a", s, first_bc.and_then(|m| apply_sse(&m, &group("a"), &chi_a)), c_m3pp);
    let s = "topic sharing acts do not commute";
    l.holds_formula("cube.order.a-then-bc.formula", s, &cube, "w3", sse("a", &chi_a, sse("b,c", &chi_c, chi_c.clone())), true);
    l.holds_formula("cube.order.bc-then-a.formula", s, &cube, "w3", sse("b,c", &chi_c, sse("a", &chi_a, chi_c.clone())), false);

    let s = "successive groups on one topic: {a,b} alone also gives the first result";
    let ab_first = apply_sse(&cube, &group("a,b"), &chi_or);
    l.same("cube.groups.ab-first", s, ab_first.clone(), c_m2);
    let s = "successive groups on one topic: then c, giving an extra c-edge w2-w6";
    l.same(
        "cube.groups.ab-then-c",
        s,
        ab_first.and_then(|m| apply_sse(&m, &group("c"), &chi_or)),
        cube_variant(&[("w2", "w6", "c")]),
    );
    let s = "successive groups on one topic cannot be compressed into their union";
    l.holds_formula("cube.groups.successive", s, &cube, "w2", sse("a,b", &chi_or, sse("c", &chi_or, chi_a.clone())), true);
    l.holds_formula("cube.groups.union", s, &cube, "w2", sse("a,b,c", &chi_or, chi_a.clone()), false);

    let s = "successive topics by one group: everyone on chi_a gives the same first result";
    let all_a = apply_sse(&cube, &all, &chi_a);
    l.same("cube.topics.a-first", s, all_a.clone(), c_m2p);
    let s = "successive topics by one group: then everyone on chi_c gives the same second result";
    l.same("cube.topics.a-then-c", s, all_a.and_then(|m| apply_sse(&m, &all, &chi_c)), c_m3p);
    let both = Formula::and(chi_a.clone(), chi_c.clone());
    let s = "successive topics by one group: the conjunction holds only at w5";
    l.truth("cube.topics.conjunction.truth", s, &cube, both.clone(), &[5]);
    let s = "successive topics by one group: sharing on the conjunction changes nothing";
    l.same("cube.topics.conjunction.unchanged", s, apply_sse(&cube, &all, &both), cube.clone());
    let s = "successive topics cannot be compressed into their conjunction";
    l.holds_formula("cube.topics.successive", s, &cube, "w3", sse("a,b,c", &chi_a, sse("a,b,c", &chi_c, chi_b.clone())), true);
    l.holds_formula("cube.topics.conjunction", s, &cube, "w3", sse("a,b,c", &both, chi_b), false);

    l.0
}

/// Outcome of one claim.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: String,
    pub source: &'static str,
    pub description: String,
    pub expected: bool,
    pub got: std::result::Result<bool, String>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.got == Ok(self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct ClaimsReport {
    pub results: Vec<ClaimResult>,
    pub elapsed: Duration,
}

impl ClaimsReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(ClaimResult::passed)
    }

    pub fn first_failure(&self) -> Option<&ClaimResult> {
        self.results.iter().find(|r| !r.passed())
    }

    pub fn passed_count(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }
}

impl fmt::Display for ClaimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let got = match &r.got {
                Ok(b) => b.to_string(),
                Err(e) => format!("error: {e}"),
            };
            writeln!(
                f,
                "{} {:<36} expected {:<5} got {:<5}  {}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.id,
                r.expected,
                got,
                r.source
            )?;
        }
        writeln!(
            f,
            "{}/{} claims agree ({:.1} ms)",
            self.passed_count(),
            self.results.len(),
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

/// Evaluates the whole ledger.
pub fn run_paper_claims() -> ClaimsReport {
    let start = Instant::now();
    let results = claims()
        .into_iter()
        .map(|c| ClaimResult {
            got: c.evaluate().map_err(|e| e.to_string()),
            description: c.describe(),
            id: c.id,
            source: c.source,
            expected: c.expected,
        })
        .collect();
    ClaimsReport {
        results,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_have_expected_shape() {
        let m1 = model_m1();
        assert_eq!(m1.world_count(), 4);
        assert_eq!(m1.relation(0).image(0), WorldSet::from_worlds([0, 1, 2]));
        assert_eq!(model_m3().relation(0).image(0), WorldSet::from_worlds([1, 2]));
        assert!(!model_m3().relation(0).properties().reflexive);
        for i in 0..3 {
            assert!(m1.relation(i).properties().is_equivalence());
        }
    }

    #[test]
    fn ledger_agrees() {
        let report = run_paper_claims();
        assert!(report.all_passed(), "{report}");
    }
}
