mod common;

use common::*;
use epicomm::corpus::{model_cube, model_m1, model_m2, model_m3, claims, prop8_countermodel, Subject};
use epicomm::semantics::truth_set;
use epicomm::transforms::{apply_eee, apply_see, apply_sse};
use epicomm::translate::translate;
use epicomm::{parse, AgentSet};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn evaluator_matches_oracle(m in arb_model(4, &AGENTS, &ATOMS), f in arb_formula(&AGENTS, &ATOMS, true)) {
        let got = ref_set(truth_set(&m, &f).unwrap());
        prop_assert_eq!(got, RefModel::from_model(&m).truth(&f), "formula {}", f);
    }

    #[test]
    fn transforms_match_oracle(m in arb_model(4, &AGENTS, &ATOMS), s in arb_group(&AGENTS), chi in arb_formula(&AGENTS, &ATOMS, false)) {
        let r = RefModel::from_model(&m);
        prop_assert_eq!(RefModel::from_model(&apply_eee(&m)), r.eee());
        prop_assert_eq!(RefModel::from_model(&apply_see(&m, &s).unwrap()), r.see(&s));
        let topic = r.truth(&chi);
        prop_assert_eq!(RefModel::from_model(&apply_sse(&m, &s, &chi).unwrap()), r.sse(&s, &topic));
    }

    #[test]
    fn translation_is_equivalent_on_oracle(m in arb_model(3, &AGENTS, &ATOMS), f in arb_formula(&AGENTS, &ATOMS, true)) {
        let roster: AgentSet = AGENTS.iter().copied().collect();
        let t = translate(&f, &roster).unwrap();
        let r = RefModel::from_model(&m);
        prop_assert_eq!(r.truth(&f), r.truth(&t), "{} vs {}", f, t);
    }
}

#[test]
fn ledger_formulas_agree_with_oracle() {
    for claim in claims() {
        if let Subject::Holds { at, formula } = &claim.subject {
            let oracle = RefModel::from_model(&at.model).holds(at.point, formula);
            assert_eq!(oracle, claim.expected, "claim {}", claim.id);
        }
    }
}

#[test]
fn corpus_models_agree_with_oracle_on_spot_formulas() {
    let spots = [
        "K_a p",
        "D{a,b} q",
        "[eee] K_a (p & q)",
        "[see a,b] K_c p",
        "[sse a,b | p & r] K_a r",
        "Dhat{a | p} q",
        "[sse a | K_b p][eee] ~K_c q",
    ];
    for m in [model_m1(), model_m2()] {
        let r = RefModel::from_model(&m);
        for s in spots {
            let f = parse(s).unwrap();
            assert_eq!(ref_set(truth_set(&m, &f).unwrap()), r.truth(&f), "{s}");
        }
    }
    let m3 = model_m3();
    let f = parse("[sse a,b | p] (K_a q | K_b ~q)").unwrap();
    assert_eq!(ref_set(truth_set(&m3, &f).unwrap()), RefModel::from_model(&m3).truth(&f));
    let cube = model_cube();
    let f = parse("[sse a,b | K_a m_a | K_a ~m_a] D{a,c} m_b").unwrap();
    assert_eq!(ref_set(truth_set(&cube, &f).unwrap()), RefModel::from_model(&cube).truth(&f));
    let p8 = prop8_countermodel();
    let f = parse("[sse a,b | p] K_b p").unwrap();
    assert!(!RefModel::from_model(&p8).holds(0, &f));
}
