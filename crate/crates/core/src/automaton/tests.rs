use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::corpus;
use crate::semiring::{SemiringTag, Weight};

use super::*;

fn one_b() -> Weight {
    Weight::one(SemiringTag::B)
}

/// Three states p, q, r: loops a@p and b@r, p⇄q by b, q⇄r by a; p is both
/// initial and final.
pub(crate) fn d3() -> Automaton {
    Automaton::builder(SemiringTag::B, &['a', 'b'], 3)
        .names(vec!["p".into(), "q".into(), "r".into()])
        .initial(0, one_b())
        .final_state(0, one_b())
        .edge(0, Label::Letter('a'), one_b(), 0)
        .edge(0, Label::Letter('b'), one_b(), 1)
        .edge(1, Label::Letter('b'), one_b(), 0)
        .edge(1, Label::Letter('a'), one_b(), 2)
        .edge(2, Label::Letter('a'), one_b(), 1)
        .edge(2, Label::Letter('b'), one_b(), 2)
        .build()
        .unwrap()
}

/// Two states: loop a@1, 1→2 by b, 2→1 by a, loop b@2; state 1 is initial
/// and final.
pub(crate) fn r1() -> Automaton {
    Automaton::builder(SemiringTag::B, &['a', 'b'], 2)
        .names(vec!["1".into(), "2".into()])
        .initial(0, one_b())
        .final_state(0, one_b())
        .edge(0, Label::Letter('a'), one_b(), 0)
        .edge(0, Label::Letter('b'), one_b(), 1)
        .edge(1, Label::Letter('a'), one_b(), 0)
        .edge(1, Label::Letter('b'), one_b(), 1)
        .build()
        .unwrap()
}

/// The standard ℚ-automaton of (⟨1/6⟩a*+⟨1/3⟩b*)*, built by hand.
pub(crate) fn s_e3() -> Automaton {
    let w = Weight::rat;
    Automaton::builder(SemiringTag::Q, &['a', 'b'], 3)
        .initial(0, Weight::one(SemiringTag::Q))
        .final_state(0, w(2, 1))
        .final_state(1, w(2, 1))
        .final_state(2, w(2, 1))
        .edge(0, Label::Letter('a'), w(1, 3), 1)
        .edge(0, Label::Letter('b'), w(2, 3), 2)
        .edge(1, Label::Letter('a'), w(4, 3), 1)
        .edge(1, Label::Letter('b'), w(2, 3), 2)
        .edge(2, Label::Letter('a'), w(1, 3), 1)
        .edge(2, Label::Letter('b'), w(5, 3), 2)
        .build()
        .unwrap()
}

/// The standard ℤ-automaton of (𝟭+⟨−1⟩a)a*, built by hand.
pub(crate) fn s_e4() -> Automaton {
    let w = |v| Weight::from_i64(v, SemiringTag::Z);
    Automaton::builder(SemiringTag::Z, &['a'], 3)
        .initial(0, w(1))
        .final_state(0, w(1))
        .final_state(1, w(1))
        .final_state(2, w(1))
        .edge(0, Label::Letter('a'), w(-1), 1)
        .edge(0, Label::Letter('a'), w(1), 2)
        .edge(1, Label::Letter('a'), w(1), 2)
        .edge(2, Label::Letter('a'), w(1), 2)
        .build()
        .unwrap()
}

#[test]
fn eval_d3() {
    let a = d3();
    assert_eq!(a.eval("abba").unwrap(), one_b());
    assert_eq!(a.eval("").unwrap(), one_b());
    assert_eq!(a.eval("ab").unwrap(), Weight::zero(SemiringTag::B));
    assert!(matches!(a.eval("ax"), Err(Error::UnknownLetter('x'))));
}

#[test]
fn eval_weighted_standard_automata() {
    assert_eq!(s_e3().eval("a").unwrap(), Weight::rat(2, 3));
    // behaviour of S_E4 telescopes to the series 1
    let s = s_e4().truncated_behaviour(3).unwrap();
    assert_eq!(s.coeff(""), Weight::from_i64(1, SemiringTag::Z));
    assert_eq!(s.iter().count(), 1);
}

#[test]
fn truncated_behaviour_trivial_cases() {
    let single = Automaton::builder(SemiringTag::B, &['a'], 1)
        .initial(0, one_b())
        .final_state(0, one_b())
        .build()
        .unwrap();
    let s = single.truncated_behaviour(2).unwrap();
    assert_eq!(s.coeff(""), one_b());
    assert_eq!(s.iter().count(), 1);
}

#[test]
fn eval_matches_truncated_behaviour() {
    let a = d3();
    let s = a.truncated_behaviour(4).unwrap();
    for w in ["", "a", "bb", "abba", "baab", "abab"] {
        assert_eq!(a.eval(w).unwrap(), s.coeff(w), "word {w}");
    }
}

#[test]
fn closure_of_eps_free_is_identity() {
    let a = d3();
    let c = a.backward_closure().unwrap();
    assert_eq!(a, c);
}

#[test]
fn closure_of_eps_self_loop() {
    let a = Automaton::builder(SemiringTag::B, &['a'], 1)
        .allow_eps()
        .initial(0, one_b())
        .final_state(0, one_b())
        .edge(0, Label::Eps, one_b(), 0)
        .build()
        .unwrap();
    let c = a.backward_closure().unwrap();
    assert_eq!(c.edges().len(), 0);
    assert_eq!(c.eval("").unwrap(), one_b());
}

#[test]
fn closure_rejects_weighted() {
    let a = Automaton::builder(SemiringTag::Q, &['a'], 1)
        .allow_eps()
        .initial(0, Weight::one(SemiringTag::Q))
        .build()
        .unwrap();
    assert!(matches!(
        a.backward_closure(),
        Err(Error::NonBooleanEpsilon(SemiringTag::Q))
    ));
}

#[test]
fn trim_cases() {
    assert_eq!(d3().trim(), d3());

    // a sink that cannot reach a final state disappears
    let a = Automaton::builder(SemiringTag::B, &['a'], 3)
        .initial(0, one_b())
        .final_state(1, one_b())
        .edge(0, Label::Letter('a'), one_b(), 1)
        .edge(1, Label::Letter('a'), one_b(), 2)
        .build()
        .unwrap();
    assert_eq!(a.trim().state_count(), 2);

    // all-zero initial vector: everything goes
    let b = Automaton::builder(SemiringTag::B, &['a'], 2)
        .final_state(1, one_b())
        .edge(0, Label::Letter('a'), one_b(), 1)
        .build()
        .unwrap();
    assert_eq!(b.trim().state_count(), 0);
}

#[test]
fn morphism_checks() {
    let a = d3();
    let id = StateMap((0..3).collect());
    assert!(a.check_morphism(&a, &id, true).unwrap());

    // collapsing the final state p onto q breaks condition (ii)
    let bad = StateMap(vec![1, 1, 2]);
    assert!(!a.check_morphism(&a, &bad, false).unwrap());
}

#[test]
fn minimal_quotient_one_state() {
    let single = Automaton::builder(SemiringTag::B, &['a'], 1)
        .initial(0, one_b())
        .final_state(0, one_b())
        .edge(0, Label::Letter('a'), one_b(), 0)
        .build()
        .unwrap();
    let (q, map) = single.minimal_quotient();
    assert_eq!(q, single);
    assert_eq!(map, StateMap(vec![0]));
}

#[test]
fn minimal_quotient_of_s_e4_has_two_states() {
    let (q, map) = s_e4().minimal_quotient();
    assert_eq!(q.state_count(), 2);
    assert!(s_e4().check_morphism(&q, &map, true).unwrap());
    // states 1 and 2 merge; the initial state, whose outgoing a-weights
    // cancel, stays alone and keeps no outgoing transition
    assert_eq!(map, StateMap(vec![0, 1, 1]));
    assert_eq!(q.edges().len(), 1);
    assert_eq!(
        q.truncated_behaviour(4).unwrap(),
        s_e4().truncated_behaviour(4).unwrap()
    );
}

#[test]
fn minimal_quotient_preserves_behaviour_randomised() {
    let mut rng = StdRng::seed_from_u64(0x9035);
    for tag in SemiringTag::ALL {
        for _ in 0..60 {
            let a = corpus::random_automaton(&mut rng, tag, 4, &['a', 'b']);
            let (q, map) = a.minimal_quotient();
            assert!(q.state_count() <= a.state_count());
            assert!(a.check_morphism(&q, &map, true).unwrap());
            assert_eq!(
                q.truncated_behaviour(4).unwrap(),
                a.truncated_behaviour(4).unwrap()
            );
        }
    }
}

#[test]
fn loop_complexity_cases() {
    // double cycle sharing a state: complexity 1
    let a = Automaton::builder(SemiringTag::B, &['a'], 4)
        .initial(0, one_b())
        .final_state(3, one_b())
        .edge(0, Label::Letter('a'), one_b(), 1)
        .edge(1, Label::Letter('a'), one_b(), 2)
        .edge(2, Label::Letter('a'), one_b(), 0)
        .edge(2, Label::Letter('a'), one_b(), 3)
        .edge(3, Label::Letter('a'), one_b(), 1)
        .build()
        .unwrap();
    assert_eq!(a.loop_complexity().unwrap(), 1);

    let acyclic = Automaton::builder(SemiringTag::B, &['a'], 2)
        .initial(0, one_b())
        .final_state(1, one_b())
        .edge(0, Label::Letter('a'), one_b(), 1)
        .build()
        .unwrap();
    assert_eq!(acyclic.loop_complexity().unwrap(), 0);

    assert_eq!(d3().loop_complexity().unwrap(), 2);
}

#[test]
fn loop_complexity_bound_is_enforced() {
    let n = LOOP_COMPLEXITY_BOUND + 1;
    let mut b = Automaton::builder(SemiringTag::B, &['a'], n).initial(0, one_b());
    b = b.final_state(n - 1, one_b());
    let a = b.build().unwrap();
    assert!(matches!(a.loop_complexity(), Err(Error::TooLarge(..))));
}

#[test]
fn loop_index_cases() {
    let acyclic = Automaton::builder(SemiringTag::B, &['a'], 2)
        .initial(0, one_b())
        .final_state(1, one_b())
        .edge(0, Label::Letter('a'), one_b(), 1)
        .build()
        .unwrap();
    assert_eq!(acyclic.loop_index(&Order::ascending(2)).unwrap(), 0);

    // remove state 2 of the ball first, the loop a@1 remains: 1 + 1
    assert_eq!(
        r1().loop_index(&Order::new(vec![0, 1], 2).unwrap())
            .unwrap(),
        2
    );

    let d3 = d3();
    let min = Order::all(3)
        .into_iter()
        .map(|w| d3.loop_index(&w).unwrap())
        .min()
        .unwrap();
    assert_eq!(min, d3.loop_complexity().unwrap());
}

#[test]
fn generalized_loop_index_depends_on_the_order() {
    // two states p, q: loop a@p, p⇄q by b, and a loop of star height 1 on q
    let edges = vec![(0usize, 0usize, 0usize), (0, 1, 0), (1, 0, 0), (1, 1, 1)];
    let mask = vec![true, true];
    // ω₁ = p<q: remove q first
    assert_eq!(graph_loop_index(2, &edges, &[0, 1], &mask), 2);
    // ω₂ = q<p: remove p first
    assert_eq!(graph_loop_index(2, &edges, &[1, 0], &mask), 3);
}

#[test]
fn generalized_loop_index_counts_edge_heights() {
    // as above, but the p→q transition carries a label of star height 2:
    // whichever state goes first, that edge is adjacent to the removal
    let edges = vec![(0usize, 0usize, 0usize), (0, 1, 2), (1, 0, 0), (1, 1, 1)];
    let mask = vec![true, true];
    assert_eq!(graph_loop_index(2, &edges, &[0, 1], &mask), 3);
    assert_eq!(graph_loop_index(2, &edges, &[1, 0], &mask), 3);
}

#[test]
fn loop_complexity_is_min_loop_index_randomised() {
    let mut rng = StdRng::seed_from_u64(0x1007);
    for _ in 0..40 {
        let a = corpus::random_trim_boolean(&mut rng, 4, &['a', 'b']);
        let lc = a.loop_complexity().unwrap();
        let min = Order::all(a.state_count())
            .into_iter()
            .map(|w| a.loop_index(&w).unwrap())
            .min()
            .unwrap();
        assert_eq!(lc, min, "automaton:\n{}", a.to_text());
    }
}

#[test]
fn text_format_round_trip() {
    for a in [d3(), r1(), s_e3(), s_e4()] {
        let text = a.to_text();
        let back = Automaton::parse_text(&text).unwrap();
        assert_eq!(a, back, "round trip failed for:\n{text}");
    }
}

#[test]
fn text_format_named_states_and_comments() {
    let src = "
# an automaton with named states
semiring B
alphabet a b
states p q r
initial p
final p
edge p a _ p      # loop
edge p b _ q
edge q b _ p
edge q a _ r
edge r a _ q
edge r b _ r
";
    let a = Automaton::parse_text(src).unwrap();
    assert_eq!(a, d3());
    assert_eq!(a.resolve_state("q").unwrap(), 1);
    let order = a.parse_order("r,p,q").unwrap();
    assert_eq!(order.as_slice(), &[2, 0, 1]);
}

#[test]
fn orders_must_be_permutations() {
    assert!(Order::new(vec![0, 0, 1], 3).is_err());
    assert!(Order::new(vec![0, 3, 1], 3).is_err());
    assert!(Order::new(vec![0, 1], 3).is_err());
    let a = d3();
    assert!(a.parse_order("p,q").is_err());
    assert!(a.parse_order("p,q,x").is_err());
}

#[test]
fn text_format_errors() {
    assert!(matches!(
        Automaton::parse_text("semiring B\nalphabet a\nstates 1\nedge 0 a _ 5"),
        Err(Error::AutomatonSyntax { .. })
    ));
    assert!(matches!(
        Automaton::parse_text("alphabet a\nstates 1"),
        Err(Error::AutomatonSyntax { .. })
    ));
    // ε edge without the flag
    assert!(matches!(
        Automaton::parse_text("semiring B\nalphabet a\nstates 2\nedge 0 @ _ 1"),
        Err(Error::AutomatonSyntax { .. })
    ));
}

#[test]
fn dot_output_mentions_every_edge() {
    let dot = d3().to_dot();
    assert!(dot.starts_with("digraph {"));
    assert_eq!(dot.matches(" -> ").count(), 6 + 1 /* initial arrow */);
}

#[test]
fn isomorphism_is_renaming_insensitive() {
    let a = s_e4();
    // same automaton with states 1 and 2 swapped
    let w = |v| Weight::from_i64(v, SemiringTag::Z);
    let b = Automaton::builder(SemiringTag::Z, &['a'], 3)
        .initial(0, w(1))
        .final_state(0, w(1))
        .final_state(1, w(1))
        .final_state(2, w(1))
        .edge(0, Label::Letter('a'), w(-1), 2)
        .edge(0, Label::Letter('a'), w(1), 1)
        .edge(2, Label::Letter('a'), w(1), 1)
        .edge(1, Label::Letter('a'), w(1), 1)
        .build()
        .unwrap();
    assert!(a.isomorphic_to(&b));
    assert!(!a.isomorphic_to(&s_e3()));
    // a weight flip breaks it
    let c = Automaton::builder(SemiringTag::Z, &['a'], 3)
        .initial(0, w(1))
        .final_state(0, w(1))
        .final_state(1, w(1))
        .final_state(2, w(1))
        .edge(0, Label::Letter('a'), w(1), 1)
        .edge(0, Label::Letter('a'), w(1), 2)
        .edge(1, Label::Letter('a'), w(1), 2)
        .edge(2, Label::Letter('a'), w(1), 2)
        .build()
        .unwrap();
    assert!(!a.isomorphic_to(&c));
}

#[test]
fn eval_rejects_eps() {
    let a = Automaton::builder(SemiringTag::B, &['a'], 2)
        .allow_eps()
        .initial(0, one_b())
        .final_state(1, one_b())
        .edge(0, Label::Eps, one_b(), 1)
        .build()
        .unwrap();
    assert!(matches!(a.eval("a"), Err(Error::EpsilonPresent)));
    assert!(matches!(
        a.truncated_behaviour(2),
        Err(Error::EpsilonPresent)
    ));
}
