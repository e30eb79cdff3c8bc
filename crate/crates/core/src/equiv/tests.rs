use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::automaton::tests::{d3, s_e3, s_e4};
use crate::automaton::{Automaton, Order};
use crate::corpus;
use crate::delta::standard_automaton;
use crate::expr::parse;
use crate::gamma;

use super::*;

fn b(text: &str) -> Expr {
    parse(text, SemiringTag::B).unwrap()
}

#[test]
fn snf_pair_is_equivalent() {
    let lhs = standard_automaton(&b("(a*b*)*")).unwrap();
    let rhs = standard_automaton(&b("(a+b)*")).unwrap();
    let v = equivalent_automata(lhs.as_automaton(), rhs.as_automaton()).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.method, Method::BooleanDfa);
    assert!(v.witness.is_none());
}

#[test]
fn boolean_witness_is_shortest() {
    let lhs = standard_automaton(&b("a*")).unwrap();
    let rhs = standard_automaton(&b("(aa)*")).unwrap();
    let v = equivalent_automata(lhs.as_automaton(), rhs.as_automaton()).unwrap();
    assert!(!v.equivalent);
    let w = v.witness.unwrap();
    assert_eq!(w.word, "a");
    assert_eq!(w.left, Weight::B(true));
    assert_eq!(w.right, Weight::B(false));
}

#[test]
fn s_e4_equals_the_unit_series() {
    let one = Weight::one(SemiringTag::Z);
    let unit = Automaton::builder(SemiringTag::Z, &['a'], 1)
        .initial(0, one.clone())
        .final_state(0, one)
        .build()
        .unwrap();
    let v = equivalent_automata(&s_e4(), &unit).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.method, Method::FieldSpan);
}

#[test]
fn field_span_witness_carries_both_weights() {
    let one = Weight::one(SemiringTag::Z);
    let two = Weight::from_i64(2, SemiringTag::Z);
    let a = Automaton::builder(SemiringTag::Z, &['a'], 1)
        .initial(0, one.clone())
        .final_state(0, one.clone())
        .edge(0, crate::automaton::Label::Letter('a'), one.clone(), 0)
        .build()
        .unwrap();
    let b = Automaton::builder(SemiringTag::Z, &['a'], 1)
        .initial(0, one.clone())
        .final_state(0, one)
        .edge(0, crate::automaton::Label::Letter('a'), two, 0)
        .build()
        .unwrap();
    let v = equivalent_automata(&a, &b).unwrap();
    assert!(!v.equivalent);
    let w = v.witness.unwrap();
    assert_eq!(w.word, "a");
    assert_eq!(w.left, Weight::from_i64(1, SemiringTag::Z));
    assert_eq!(w.right, Weight::from_i64(2, SemiringTag::Z));
}

#[test]
fn naturals_are_decided_exactly_via_the_rationals() {
    // aa + ab vs a(a+b): same N-series through different shapes
    let e = parse("aa+ab", SemiringTag::N).unwrap();
    let f = parse("a(a+b)", SemiringTag::N).unwrap();
    let v = equivalent_exprs(&e, &f).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.method, Method::FieldSpan);
    // and multiplicity differences are caught
    let g = parse("aa+aa", SemiringTag::N).unwrap();
    let v = equivalent_exprs(&parse("aa", SemiringTag::N).unwrap(), &g).unwrap();
    assert!(!v.equivalent);
}

#[test]
fn minplus_is_sampled() {
    let e = parse("a*", SemiringTag::MinPlus).unwrap();
    let f = parse("a*a*", SemiringTag::MinPlus).unwrap();
    let v = equivalent_exprs(&e, &f).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.method, Method::Sampled);
    assert!(!v.decided());

    let g = parse("<1>a*", SemiringTag::MinPlus).unwrap();
    let v = equivalent_exprs(&e, &g).unwrap();
    assert!(!v.equivalent);
    assert!(v.decided());
    let w = v.witness.unwrap();
    assert_eq!(w.word, "");
}

#[test]
fn elimination_orders_give_equivalent_expressions() {
    let a = d3();
    let e1 = gamma::state_elimination(&a, &a.parse_order("r,p,q").unwrap()).unwrap();
    let e2 = gamma::state_elimination(&a, &a.parse_order("r,q,p").unwrap()).unwrap();
    let v = equivalent_exprs(&e1, &e2).unwrap();
    assert!(v.equivalent);
}

#[test]
fn expression_is_equivalent_to_itself() {
    let e = b("(a*b+bb*a)*");
    assert!(equivalent_exprs(&e, &e).unwrap().equivalent);
}

#[test]
fn weighted_round_trip_e3() {
    let e3 = parse("(<1/6>a*+<1/3>b*)*", SemiringTag::Q).unwrap();
    let back = gamma::system_solution(&s_e3(), &Order::ascending(3)).unwrap();
    let v = equivalent_exprs(&e3, &back).unwrap();
    assert!(v.equivalent);
    assert_eq!(v.method, Method::FieldSpan);
}

#[test]
fn mismatched_tags_are_rejected() {
    let e = b("a");
    let f = parse("a", SemiringTag::Q).unwrap();
    assert!(matches!(
        equivalent_exprs(&e, &f),
        Err(Error::TagMismatch(SemiringTag::B, SemiringTag::Q))
    ));
}

#[test]
fn epsilon_inputs_are_rejected() {
    let t = crate::delta::thompson(&b("a*")).unwrap();
    assert!(matches!(
        equivalent_automata(&t, &t),
        Err(Error::EpsilonPresent)
    ));
}

#[test]
fn soundness_audit_randomised() {
    let mut rng = StdRng::seed_from_u64(0x50D);
    for tag in [
        SemiringTag::B,
        SemiringTag::N,
        SemiringTag::Z,
        SemiringTag::Q,
    ] {
        for round in 0..40 {
            let n = rng.gen_range(1..=3);
            let a = corpus::random_automaton(&mut rng, tag, n, &['a', 'b']);
            let b = if round % 2 == 0 {
                // a behaviour-preserving transform: quotient of the automaton
                a.minimal_quotient().0
            } else {
                let m = rng.gen_range(1..=3);
                corpus::random_automaton(&mut rng, tag, m, &['a', 'b'])
            };
            let v = equivalent_automata(&a, &b).unwrap();
            if v.equivalent {
                assert_eq!(
                    a.truncated_behaviour(6).unwrap(),
                    b.truncated_behaviour(6).unwrap(),
                    "claimed equivalent over {tag}"
                );
            } else {
                let w = v.witness.expect("inequivalence carries a witness");
                assert_eq!(a.eval(&w.word).unwrap(), w.left);
                assert_eq!(b.eval(&w.word).unwrap(), w.right);
                assert_ne!(w.left, w.right, "witness {w:?} separates nothing");
            }
        }
    }
}

#[test]
fn sampled_audit_randomised() {
    let mut rng = StdRng::seed_from_u64(0x5A5);
    for _ in 0..30 {
        let a = corpus::random_automaton(&mut rng, SemiringTag::MinPlus, 3, &['a', 'b']);
        let b = corpus::random_automaton(&mut rng, SemiringTag::MinPlus, 3, &['a', 'b']);
        let v = equivalent_automata(&a, &b).unwrap();
        match v.witness {
            Some(w) => {
                assert!(!v.equivalent);
                assert_eq!(a.eval(&w.word).unwrap(), w.left);
                assert_eq!(b.eval(&w.word).unwrap(), w.right);
            }
            None => {
                assert!(v.equivalent);
                assert_eq!(
                    a.truncated_behaviour(SAMPLED_DEGREE).unwrap(),
                    b.truncated_behaviour(SAMPLED_DEGREE).unwrap()
                );
            }
        }
    }
}
