//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::RefModel;
use epicomm::corpus::{chi, chi_any, model_cube, model_m1, run_paper_claims};
use epicomm::formula::ndc;
use epicomm::kripke::Signature;
use epicomm::transforms::{apply_eee, apply_see, apply_sse, knowing_only_relation};
use epicomm::translate::translate_traced;
use epicomm::validity::{
    axiom_instances, check_equivalence, check_validity, random_equivalence_model, random_formula, random_model,
    OperatorMix, Rosters, SearchBounds, SCHEMAS,
};
use epicomm::{parse, AgentSet, Formula, Model, PointedModel, Relation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn claims_ledger() -> Outcome {
    let start = Instant::now();
    let report = run_paper_claims();
    let elapsed = start.elapsed();
    let ok = report.all_passed() && elapsed < Duration::from_secs(5);
    let mut detail = format!("{}/{} claims agree in {}", report.passed_count(), report.results.len(), secs(elapsed));
    if let Some(f) = report.first_failure() {
        detail += &format!("; first failure {} ({:?})", f.id, f.got);
    }
    outcome(ok, detail)
}

type Criterion = (&'static str, fn() -> Outcome);

const INSTANCES_PER_SCHEMA: usize = 200;

fn axiom_soundness() -> Outcome {
    let start = Instant::now();
    let rosters = Rosters::new(&["a", "b"], &["p", "q"]);
    let bounds = SearchBounds::exhaustive(2, &["a", "b"], &["p", "q"]);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for schema in SCHEMAS {
        let instances: Vec<Formula> = axiom_instances(schema, 2, &rosters).unwrap().take(INSTANCES_PER_SCHEMA).collect();
        for f in &instances {
            match check_validity(f, &bounds) {
                Ok(v) if v.is_valid() => {}
                other => failures.push(format!("{schema}: {f} -> {other:?}")),
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && checked == SCHEMAS.len() * INSTANCES_PER_SCHEMA && elapsed < Duration::from_secs(60);
    let mut detail = format!(
        "{} schemas x {} instances, {} countermodels, {}",
        SCHEMAS.len(),
        INSTANCES_PER_SCHEMA,
        failures.len(),
        secs(elapsed)
    );
    if let Some(first) = failures.first() {
        detail += &format!("; first: {first}");
    }
    outcome(ok, detail)
}

const TRANSLATED: usize = 1000;

fn translation_correctness() -> Outcome {
    let start = Instant::now();
    let rosters = Rosters::new(&["a", "b"], &["p", "q"]);
    let roster = rosters.agent_set();
    let bounds = SearchBounds::exhaustive(2, &["a", "b"], &["p", "q"]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a05);
    let (mut eee, mut see, mut sse) = (0, 0, 0);
    let mut violations = Vec::new();
    let mut done = 0;
    while done < TRANSLATED {
        let f = random_formula(&mut rng, 4, &rosters, OperatorMix::ALL);
        let text = f.to_string();
        if ndc(&f) == 0 {
            continue;
        }
        eee += usize::from(text.contains("[eee]"));
        see += usize::from(text.contains("[see"));
        sse += usize::from(text.contains("[sse"));
        done += 1;
        match translate_traced(&f, &roster) {
            Ok((t, trace)) => {
                if ndc(&t) != 0 {
                    violations.push(format!("not static: {f}"));
                }
                if !trace.is_strictly_decreasing() {
                    violations.push(format!("measure: {f}"));
                }
                match check_equivalence(&f, &t, &bounds) {
                    Ok(v) if v.is_valid() => {}
                    other => violations.push(format!("inequivalent: {f} -> {other:?}")),
                }
            }
            Err(e) => violations.push(format!("{f}: {e}")),
        }
    }
    let ok = violations.is_empty() && eee > 0 && see > 0 && sse > 0;
    let mut detail = format!(
        "{TRANSLATED} dynamic formulas (eee in {eee}, see in {see}, sse in {sse}), {} violations, {}",
        violations.len(),
        secs(start.elapsed())
    );
    if let Some(first) = violations.first() {
        detail += &format!("; first: {first}");
    }
    outcome(ok, detail)
}

const SAMPLED_MODELS: usize = 1000;
const AGENTS3: [&str; 3] = ["a", "b", "c"];
const ATOMS2: [&str; 2] = ["p", "q"];

fn signatures() -> Vec<Arc<Signature>> {
    (1..=4).map(|n| common::signature(n, &AGENTS3, &ATOMS2)).collect()
}

fn random_group(rng: &mut ChaCha8Rng, nonempty: bool) -> AgentSet {
    loop {
        let g: AgentSet = AGENTS3.iter().copied().filter(|_| rng.gen()).collect();
        if !(nonempty && g.is_empty()) {
            return g;
        }
    }
}

/// `R_{D,G}` with the whole square for the empty group.
fn dist(m: &Model, g: &AgentSet) -> Relation {
    if g.is_empty() {
        Relation::full(m.world_count())
    } else {
        m.distributed_relation(g).unwrap()
    }
}

fn identity_mismatches(m: &Model, rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    let rosters = Rosters::new(&AGENTS3, &ATOMS2);
    let all: AgentSet = AGENTS3.iter().copied().collect();
    let (s1, s2, s) = (random_group(rng, false), random_group(rng, false), random_group(rng, false));
    let g = random_group(rng, true);
    let mut topic = || random_formula(rng, 2, &rosters, OperatorMix::ALL);
    let (chi, chi1, chi2) = (topic(), topic(), topic());
    let mut bad = Vec::new();
    let mut expect = |ok: bool, what: &'static str| {
        if !ok {
            bad.push(what);
        }
    };

    let e = apply_eee(m);
    expect(apply_eee(&e) == e, "eee idempotence");
    for h in Rosters::new(&AGENTS3, &[]).nonempty_groups() {
        expect(dist(&e, &h) == dist(m, &all), "eee distributed relation");
    }

    let see = |m: &Model, s: &AgentSet| apply_see(m, s).unwrap();
    let composed = see(&see(m, &s1), &s2);
    expect(composed == see(m, &s1.union(&s2)), "see composition");
    expect(composed == see(&see(m, &s2), &s1), "see commutation");
    expect(see(m, &all) == e, "see everyone equals eee");

    let sse = |m: &Model, s: &AgentSet, c: &Formula| apply_sse(m, s, c);
    let out = match sse(m, &s, &chi) {
        Ok(out) => out,
        Err(_) => {
            expect(false, "sse definitions agree");
            return bad;
        }
    };
    let k = knowing_only_relation(m, &chi).unwrap();
    let intersection_form: Vec<Relation> = m.relations().iter().map(|r| r.intersection(&dist(m, &s).union(&k))).collect();
    expect(out.relations() == intersection_form.as_slice(), "sse intersection form");
    let r = RefModel::from_model(m);
    expect(RefModel::from_model(&out) == r.sse(&s, &r.truth(&chi)), "sse subtractive form");
    expect(sse(m, &s, &Formula::not(chi.clone())).unwrap() == out, "sse topic negation");

    expect(
        dist(&out, &g) == dist(m, &s.union(&g)).union(&dist(m, &g).intersection(&k)),
        "sse distributed relation",
    );

    let two = sse(&sse(m, &s1, &chi1).unwrap(), &s2, &chi2).unwrap();
    let k1 = knowing_only_relation(m, &chi1).unwrap();
    let k2 = knowing_only_relation(m, &Formula::sse(s1.clone(), chi1.clone(), chi2.clone())).unwrap();
    let allowed = dist(m, &s1.union(&s2))
        .union(&dist(m, &s1).intersection(&k2))
        .union(&dist(m, &s2).intersection(&k1))
        .union(&k1.intersection(&k2));
    for (i, ri) in m.relations().iter().enumerate() {
        expect(*two.relation(i) == ri.intersection(&allowed), "sse two-step expression");
    }
    bad
}

fn algebraic_identities() -> Outcome {
    let start = Instant::now();
    let sigs = signatures();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa1e6);
    let mut mismatches = Vec::new();
    for _ in 0..SAMPLED_MODELS {
        let sig = sigs.choose(&mut rng).unwrap();
        let m = random_model(&mut rng, sig);
        for what in identity_mismatches(&m, &mut rng) {
            mismatches.push(format!("{what} on\n{m:?}"));
        }
    }
    let mut detail = format!("{SAMPLED_MODELS} models, {} mismatches, {}", mismatches.len(), secs(start.elapsed()));
    if let Some(first) = mismatches.first() {
        detail += &format!("; first: {first}");
    }
    outcome(mismatches.is_empty(), detail)
}

fn preservation() -> Outcome {
    let sigs = signatures();
    let rosters = Rosters::new(&AGENTS3, &ATOMS2);
    let mut rng = ChaCha8Rng::seed_from_u64(0xe9);
    let mut failures = 0;
    for _ in 0..SAMPLED_MODELS {
        let sig = sigs.choose(&mut rng).unwrap();
        let m = random_equivalence_model(&mut rng, sig);
        let s = random_group(&mut rng, false);
        let chi = random_formula(&mut rng, 2, &rosters, OperatorMix::ALL);
        let equiv = |x: &Model| x.relations().iter().all(|r| r.properties().is_equivalence());
        if !equiv(&apply_eee(&m)) || !equiv(&apply_see(&m, &s).unwrap()) {
            failures += 1;
        }
        let out = apply_sse(&m, &s, &chi).unwrap();
        if !out.relations().iter().all(|r| r.properties().reflexive && r.properties().symmetric) {
            failures += 1;
        }
    }
    let witness = apply_sse(&model_m1(), &AgentSet::parse_list("a,b"), &parse("p & r").unwrap()).unwrap();
    let props = witness.relation_of("a").unwrap().properties();
    let witnessed = props.reflexive && props.symmetric && !props.transitive && !props.euclidean;
    outcome(
        failures == 0 && witnessed,
        format!("{SAMPLED_MODELS} equivalence models, {failures} failures; transitivity failure witnessed: {witnessed}"),
    )
}

/// Exhaustive at two worlds when the space allows it, then sampling.
fn find_countermodel(f: &Formula, agents: &[&str], atoms: &[&str]) -> Option<(PointedModel, &'static str)> {
    let exhaustive = SearchBounds::exhaustive(2, agents, atoms);
    if let Ok(v) = check_validity(f, &exhaustive) {
        if let Some(pm) = v.countermodel() {
            return Some((pm.clone(), "exhaustive"));
        }
    }
    for (worlds, seed) in [(4, 1), (6, 2), (8, 3)] {
        let sampled = SearchBounds::exhaustive(worlds, agents, atoms).sampled(200_000, seed);
        if let Some(pm) = check_validity(f, &sampled).unwrap().countermodel() {
            return Some((pm.clone(), "sampled"));
        }
    }
    None
}

fn non_validities() -> Outcome {
    let start = Instant::now();
    let (chi_a, chi_b, chi_c, chi_or) = (chi("a"), chi("b"), chi("c"), chi_any());
    let g = AgentSet::parse_list;
    let sse = |s: &str, t: &Formula, body: Formula| Formula::sse(g(s), t.clone(), body);
    let cube_agents = ["a", "b", "c"];
    let cube_atoms = ["m_a", "m_b", "m_c"];
    let schemas: Vec<(&str, Formula, &[&str], &[&str])> = vec![
        (
            "collapse",
            Formula::iff(sse("a,b,c", &chi_or, sse("a,b,c", &chi_or, chi_a.clone())), sse("a,b,c", &chi_or, chi_a.clone())),
            &cube_agents,
            &cube_atoms,
        ),
        (
            "commute",
            Formula::iff(sse("a", &chi_a, sse("b,c", &chi_c, chi_c.clone())), sse("b,c", &chi_c, sse("a", &chi_a, chi_c.clone()))),
            &cube_agents,
            &cube_atoms,
        ),
        (
            "merge groups",
            Formula::iff(sse("a,b", &chi_or, sse("c", &chi_or, chi_a.clone())), sse("a,b,c", &chi_or, chi_a.clone())),
            &cube_agents,
            &cube_atoms,
        ),
        (
            "merge topics",
            Formula::iff(
                sse("a,b,c", &chi_a, sse("a,b,c", &chi_c, chi_b.clone())),
                sse("a,b,c", &Formula::and(chi_a.clone(), chi_c.clone()), chi_b),
            ),
            &cube_agents,
            &cube_atoms,
        ),
        ("group sharing", parse("D{a,b} ~K_b p -> [see a,b] K_a ~K_b p").unwrap(), &["a", "b"], &["p"]),
        ("everyone sharing", parse("D{a,b,c} ~K_b p -> [eee] K_a ~K_b p").unwrap(), &["a", "b", "c"], &["p"]),
    ];
    let mut lines = Vec::new();
    let mut all_found = true;
    for (name, f, agents, atoms) in &schemas {
        match find_countermodel(f, agents, atoms) {
            Some((pm, how)) => {
                let verified = !epicomm::semantics::satisfies(&pm, f).unwrap()
                    && !RefModel::from_model(&pm.model).holds(pm.point, f);
                all_found &= verified;
                lines.push(format!("{name}: {how}, {} worlds", pm.model.world_count()));
            }
            None => {
                all_found = false;
                lines.push(format!("{name}: none found"));
            }
        }
    }
    // The cube itself refutes the four repeated-sharing schemas.
    let cube = model_cube();
    let cube_refutes = schemas[..4].iter().all(|(_, f, _, _)| {
        let truth = epicomm::semantics::truth_set(&cube, f).unwrap();
        truth != cube.all_worlds()
    });
    outcome(
        all_found && cube_refutes,
        format!("{} ({})", lines.join("; "), secs(start.elapsed())),
    )
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("claims ledger", claims_ledger),
        ("axiom soundness", axiom_soundness),
        ("translation correctness", translation_correctness),
        ("algebraic identities", algebraic_identities),
        ("preservation", preservation),
        ("non-validities", non_validities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} criterion {} {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
