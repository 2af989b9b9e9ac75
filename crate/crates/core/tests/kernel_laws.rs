//! Trace laws and cross-checks between the kernel's decision procedures and
//! the brute-force trace enumerator.

mod common;

use common::{abc_env, full_depth, hide_traces, interleave_traces, truncate, A, B, C};
use proptest::prelude::*;
use turtle_csp::kernel::{
    has_trace, normalize, refines_traces, traces_upto, Event, EventSet, Lts, ProcessExpr, DEFAULT_STATE_CAP,
};

fn event() -> impl Strategy<Value = turtle_csp::kernel::EventId> {
    prop_oneof![Just(A), Just(B), Just(C)]
}

fn event_set() -> impl Strategy<Value = EventSet> {
    proptest::collection::vec(event(), 0..3).prop_map(|v| v.into_iter().collect())
}

/// Reference-free terms over {a, b, c}.
fn finite_term() -> impl Strategy<Value = ProcessExpr> {
    let leaf = prop_oneof![
        Just(ProcessExpr::Stop),
        Just(ProcessExpr::Skip),
        event().prop_map(|e| ProcessExpr::prefix(e, ProcessExpr::Stop)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (event(), inner.clone()).prop_map(|(e, p)| ProcessExpr::prefix(e, p)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| ProcessExpr::choice(p, q)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| ProcessExpr::interleave(p, q)),
            (inner, event_set()).prop_map(|(p, s)| ProcessExpr::hide(p, s)),
        ]
    })
}

/// Terms that may also call the recursive definitions of `abc_env`.
fn term_with_refs() -> impl Strategy<Value = ProcessExpr> {
    let leaf = prop_oneof![
        Just(ProcessExpr::Stop),
        Just(ProcessExpr::Skip),
        event().prop_map(|e| ProcessExpr::prefix(e, ProcessExpr::Stop)),
        Just(ProcessExpr::reference("Loop", vec![])),
        (0i64..3).prop_map(|n| ProcessExpr::reference("Count", vec![n])),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (event(), inner.clone()).prop_map(|(e, p)| ProcessExpr::prefix(e, p)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| ProcessExpr::choice(p, q)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| ProcessExpr::interleave(p, q)),
            (inner, event_set()).prop_map(|(p, s)| ProcessExpr::hide(p, s)),
        ]
    })
}

const DEPTH: usize = 5;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn choice_is_union(p in finite_term(), q in finite_term()) {
        let env = abc_env();
        let lhs = traces_upto(&ProcessExpr::choice(p.clone(), q.clone()), &env, DEPTH).unwrap();
        let mut rhs = traces_upto(&p, &env, DEPTH).unwrap();
        rhs.extend(traces_upto(&q, &env, DEPTH).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interleave_is_shuffle(p in finite_term(), q in finite_term()) {
        let env = abc_env();
        let lhs = traces_upto(&ProcessExpr::interleave(p.clone(), q.clone()), &env, DEPTH).unwrap();
        let rhs = interleave_traces(
            &traces_upto(&p, &env, DEPTH).unwrap(),
            &traces_upto(&q, &env, DEPTH).unwrap(),
            DEPTH,
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hiding_deletes_events(p in finite_term(), hidden in event_set()) {
        let env = abc_env();
        let lhs = traces_upto(&ProcessExpr::hide(p.clone(), hidden.clone()), &env, DEPTH).unwrap();
        let all = traces_upto(&p, &env, full_depth(&p)).unwrap();
        prop_assert_eq!(lhs, hide_traces(&all, &hidden, DEPTH));
    }

    #[test]
    fn normal_form_has_the_same_traces(p in term_with_refs()) {
        let env = abc_env();
        let dfa = normalize(&p, &env, DEFAULT_STATE_CAP).unwrap();
        for k in 0..=DEPTH {
            prop_assert_eq!(dfa.traces_upto(k), traces_upto(&p, &env, k).unwrap());
        }
    }

    #[test]
    fn has_trace_is_membership(p in term_with_refs(), t in proptest::collection::vec(event(), 0..5)) {
        let env = abc_env();
        let trace: Vec<Event> = t.into_iter().map(Event::Visible).collect();
        let all = traces_upto(&p, &env, trace.len()).unwrap();
        let verdict = has_trace(&p, &env, &trace).unwrap();
        prop_assert_eq!(verdict.holds, all.contains(&trace));
        if let Some(i) = verdict.failure_index {
            prop_assert!(all.contains(&trace[..i]));
            prop_assert!(!all.contains(&trace[..=i]));
        }
    }

    #[test]
    fn refinement_is_trace_inclusion(spec in finite_term(), imp in finite_term()) {
        let env = abc_env();
        let verdict = refines_traces(&spec, &imp, &env, DEFAULT_STATE_CAP).unwrap();
        let spec_states = normalize(&spec, &env, DEFAULT_STATE_CAP).unwrap().len();
        let impl_configs = Lts::new(&env, DEFAULT_STATE_CAP).explore(imp.clone()).unwrap();
        // traces of reference-free terms never exceed full_depth, so the
        // smaller of the two bounds already covers every trace
        let k = (spec_states * impl_configs + 1).min(full_depth(&imp).max(full_depth(&spec)));
        let included = traces_upto(&imp, &env, k)
            .unwrap()
            .is_subset(&traces_upto(&spec, &env, k).unwrap());
        prop_assert_eq!(verdict.holds, included);
        prop_assert_eq!(verdict.holds, verdict.counterexample.is_none());
    }

    #[test]
    fn refinement_with_recursion(spec in term_with_refs(), imp in term_with_refs()) {
        let env = abc_env();
        let verdict = refines_traces(&spec, &imp, &env, DEFAULT_STATE_CAP).unwrap();
        if let Some(cex) = &verdict.counterexample {
            prop_assert!(has_trace(&imp, &env, cex).unwrap().holds);
            prop_assert!(!has_trace(&spec, &env, cex).unwrap().holds);
            // shortest: every proper prefix is accepted by the spec
            prop_assert!(has_trace(&spec, &env, &cex[..cex.len() - 1]).unwrap().holds);
        } else {
            let depth = 6;
            prop_assert!(traces_upto(&imp, &env, depth).unwrap()
                .is_subset(&traces_upto(&spec, &env, depth).unwrap()));
        }
    }

    #[test]
    fn refinement_is_reflexive_and_choice_is_refined_by_branch(p in term_with_refs(), q in term_with_refs()) {
        let env = abc_env();
        prop_assert!(refines_traces(&p, &p, &env, DEFAULT_STATE_CAP).unwrap().holds);
        let both = ProcessExpr::choice(p.clone(), q);
        prop_assert!(refines_traces(&both, &p, &env, DEFAULT_STATE_CAP).unwrap().holds);
    }
}

#[test]
fn truncate_helper_keeps_short_traces() {
    let env = abc_env();
    let p = ProcessExpr::reference("Loop", vec![]);
    let long = traces_upto(&p, &env, 6).unwrap();
    assert_eq!(truncate(&long, 3), traces_upto(&p, &env, 3).unwrap());
}

#[test]
fn count_definition_terminates_after_two_steps() {
    let env = abc_env();
    let p = ProcessExpr::reference("Count", vec![0]);
    let c = Event::Visible(C);
    assert!(has_trace(&p, &env, &[c, c, Event::Tick]).unwrap().holds);
    assert!(!has_trace(&p, &env, &[c, c, c]).unwrap().holds);
}
