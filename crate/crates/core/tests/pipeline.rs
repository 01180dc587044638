use boussinesq_core::engine::{lhs_factor, theorem1_inputs};
use boussinesq_core::verify::oracle::{evaluate_symbolic, Oracle};
use boussinesq_core::{Engine, EtaFactor, EtaMultiset, Label, LinComb, UState};
use proptest::prelude::*;

fn arb_state() -> impl Strategy<Value = UState> {
    let eta = (0i64..2, 1u32..4)
        .prop_map(|(m, a)| EtaFactor::new(Label::try_from(m).unwrap(), a).unwrap());
    (
        1u32..3,
        -3i64..2,
        0i64..2,
        -1i64..1,
        proptest::collection::vec(eta, 1..4),
    )
        .prop_map(|(g, dn, m, dp, etas)| {
            UState::new(
                g,
                dn,
                Label::try_from(m).unwrap(),
                dp,
                EtaMultiset::new(etas),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_states_agree_with_the_oracle(s in arb_state(), k0 in 4u64..12) {
        let mut engine = Engine::new();
        let symbolic = engine.reduce(&s).unwrap();
        prop_assert!(symbolic.is_canonical());
        let concrete = Oracle::new().concrete_reduce(&s, k0).unwrap();
        prop_assert_eq!(evaluate_symbolic(&symbolic, k0).unwrap(), concrete);
    }

    #[test]
    fn random_states_are_label_transparent(s in arb_state()) {
        let mut engine = Engine::new();
        let a = engine.reduce(&s.with_label(Label::Zero)).unwrap();
        let b = engine.reduce(&s.with_label(Label::One)).unwrap();
        prop_assert_eq!(a.with_label(Label::One), b);
    }

    #[test]
    fn identity_holds_for_random_states(s in arb_state()) {
        let mut engine = Engine::new();
        let value = engine.reduce(&s).unwrap();
        let mut rhs = LinComb::zero();
        for (c, child) in engine.rules().expand(&s).unwrap() {
            prop_assert!(child.measure() < s.measure());
            rhs += &engine.reduce(&child).unwrap().scale(&c);
        }
        let lhs = value.scale_rational(&(lhs_factor(&s).unwrap() as i64).into());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lincomb_json_round_trips(s in arb_state()) {
        let value = Engine::new().reduce(&s).unwrap();
        let json = serde_json::to_string(&value).unwrap();
        prop_assert_eq!(serde_json::from_str::<LinComb>(&json).unwrap(), value);
        let sj = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<UState>(&sj).unwrap(), s);
    }
}

#[test]
fn pipeline_stays_small() {
    let mut engine = Engine::new();
    for label in Label::ALL {
        engine.theorem1(label).unwrap();
    }
    assert!(engine.cache_len() < 10_000);
    for s in engine.cached_states() {
        assert!(s.genus <= 3);
    }
}

#[test]
fn order_of_evaluation_does_not_matter() {
    let mut forward = Engine::new();
    let mut backward = Engine::new();
    let inputs = theorem1_inputs(Label::Zero);
    let a: Vec<_> = inputs.iter().map(|s| forward.reduce(s).unwrap()).collect();
    let mut b: Vec<_> = inputs
        .iter()
        .rev()
        .map(|s| backward.reduce(s).unwrap())
        .collect();
    b.reverse();
    assert_eq!(a, b);
}
