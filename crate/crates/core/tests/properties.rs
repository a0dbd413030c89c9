mod common;

use common::*;
use epicomm::formula::{c_greater, complexity, desugar, ssub};
use epicomm::kripke::{format_model_text, parse_model_text};
use epicomm::transforms::{apply_eee, apply_reading_event, apply_see, apply_sse, ReadingAssignment};
use epicomm::{parse, print, AgentSet, Error, Formula, Relation, WorldSet};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_round_trips(f in arb_formula(&AGENTS, &ATOMS, true)) {
        let text = print(&f);
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn desugaring_is_idempotent(f in arb_formula(&AGENTS, &ATOMS, true)) {
        let once = desugar(&f);
        prop_assert_eq!(desugar(&once), once);
    }

    #[test]
    fn strict_subformulas_are_smaller(f in arb_formula(&AGENTS, &ATOMS, true)) {
        let f = desugar(&f);
        for g in ssub(&f) {
            prop_assert!(c_greater(&f, &g), "{} !> {}", f, g);
        }
    }

    #[test]
    fn properties_match_triple_loop(n in 1usize..=6, bits in prop::collection::vec(any::<u64>(), 6)) {
        let rel = Relation::from_rows((0..n).map(|w| WorldSet(bits[w] & ((1 << n) - 1))).collect());
        let pairs: Pairs = rel.pairs().collect();
        let p = rel.properties();
        prop_assert_eq!((p.reflexive, p.symmetric, p.transitive, p.euclidean), ref_properties(n, &pairs));
    }

    #[test]
    fn updates_only_remove_edges(m in arb_model(4, &AGENTS, &ATOMS), s in arb_group(&AGENTS), chi in arb_formula(&AGENTS, &ATOMS, false)) {
        for out in [apply_eee(&m), apply_see(&m, &s).unwrap(), apply_sse(&m, &s, &chi).unwrap()] {
            for i in 0..AGENTS.len() {
                prop_assert!(out.relation(i).is_subset(m.relation(i)));
            }
            prop_assert_eq!(out.valuation(), m.valuation());
        }
    }

    #[test]
    fn reading_events_generalise_group_sharing(m in arb_model(4, &AGENTS, &ATOMS), s in arb_group(&AGENTS)) {
        let spec: Vec<String> = AGENTS
            .iter()
            .map(|i| {
                let mut src = s.clone();
                src.insert(*i);
                format!("{i}:{src}")
            })
            .collect();
        let alpha = ReadingAssignment::parse(&spec.join(";")).unwrap();
        prop_assert_eq!(apply_reading_event(&m, &alpha).unwrap(), apply_see(&m, &s).unwrap());
    }

    #[test]
    fn model_text_round_trips(m in arb_model(5, &AGENTS, &ATOMS), point in 0usize..5) {
        let point = (point < m.world_count()).then_some(point);
        let file = parse_model_text(&format_model_text(&m, point)).unwrap();
        prop_assert_eq!(file.model, m);
        prop_assert_eq!(file.point, point);
    }
}

#[test]
fn complexity_examples() {
    // Hand-computed: nsc(p)=1, [eee] doubles, sse multiplies by 8+nsc(topic).
    let c = |s: &str| complexity(&parse(s).unwrap());
    assert_eq!((c("p").nsc, c("p").ndc), (1, 0));
    assert_eq!((c("[eee] p").nsc, c("[eee] p").ndc), (2, 1));
    assert_eq!((c("[sse a | p] q").nsc, c("[sse a | p] q").ndc), (9, 1));
    assert_eq!((c("[sse a | [eee] p] K_b q").nsc, c("[sse a | [eee] p] K_b q").ndc), (20, 2));
    assert_eq!((c("Dhat{a | p & q} ~q").nsc, c("Dhat{a | p & q} ~q").ndc), (9, 0));
    assert!(c_greater(&parse("[eee] p").unwrap(), &parse("D{a}D{a}D{a} p").unwrap()));
}

#[test]
fn parser_errors() {
    assert_eq!(parse("D{} p"), Err(Error::EmptyGroup));
    for bad in ["", "p &", "(p", "K_ p", "[sse a p] q", "p q", "D{a p", "true_x &"] {
        assert!(matches!(parse(bad), Err(Error::Syntax { .. })), "{bad}");
    }
    assert_eq!(parse("K_a p").unwrap(), Formula::k("a", Formula::atom("p")));
    assert_eq!(
        parse("p -> q -> r").unwrap(),
        parse("p -> (q -> r)").unwrap()
    );
    assert_eq!(parse("[see ] p").unwrap(), Formula::see(AgentSet::new(), Formula::atom("p")));
}
