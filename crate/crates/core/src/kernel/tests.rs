use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;

fn env() -> (ProcessEnv, EventId, EventId, EventId) {
    let alphabet = Arc::new(Alphabet::new(["a", "b", "c"]).unwrap());
    let a = alphabet.id("a").unwrap();
    let b = alphabet.id("b").unwrap();
    let c = alphabet.id("c").unwrap();
    (ProcessEnv::new(alphabet), a, b, c)
}

fn set(events: &[Event]) -> BTreeSet<Event> {
    events.iter().copied().collect()
}

fn traces(list: &[&[Event]]) -> BTreeSet<Trace> {
    list.iter().map(|t| t.to_vec()).collect()
}

use ProcessExpr::{Skip, Stop};

#[test]
fn initials_follow_operator_rules() {
    let (env, a, _, _) = env();
    let va = Event::Visible(a);
    assert_eq!(initials(&ProcessExpr::prefix(a, Stop), &env).unwrap(), set(&[va]));
    let choice = ProcessExpr::choice(ProcessExpr::prefix(a, Stop), Skip);
    assert_eq!(initials(&choice, &env).unwrap(), set(&[va, Event::Tick]));
    let hidden = ProcessExpr::hide(ProcessExpr::prefix(a, Stop), [a].into_iter().collect());
    assert_eq!(initials(&hidden, &env).unwrap(), set(&[Event::Tau]));
}

#[test]
fn interleave_ticks_only_when_both_sides_tick() {
    let (env, a, _, _) = env();
    let p = ProcessExpr::interleave(Skip, ProcessExpr::prefix(a, Skip));
    assert_eq!(initials(&p, &env).unwrap(), set(&[Event::Visible(a)]));
    let after = step(&p, &env, Event::Visible(a)).unwrap();
    let q = after.into_iter().next().unwrap();
    assert_eq!(initials(&q, &env).unwrap(), set(&[Event::Tick]));
}

#[test]
fn step_examples() {
    let (env, a, b, _) = env();
    let p = ProcessExpr::interleave(ProcessExpr::prefix(a, Stop), ProcessExpr::prefix(b, Stop));
    let expected = ProcessExpr::interleave(Stop, ProcessExpr::prefix(b, Stop));
    assert_eq!(
        step(&p, &env, Event::Visible(a)).unwrap(),
        [expected].into_iter().collect()
    );

    let left = ProcessExpr::prefix(b, Stop);
    let right = ProcessExpr::prefix(a, Skip);
    let nondet = ProcessExpr::choice(
        ProcessExpr::prefix(a, left.clone()),
        ProcessExpr::prefix(a, right.clone()),
    );
    assert_eq!(
        step(&nondet, &env, Event::Visible(a)).unwrap(),
        [left, right].into_iter().collect()
    );

    assert!(step(&ProcessExpr::prefix(a, Stop), &env, Event::Visible(b))
        .unwrap()
        .is_empty());
}

#[test]
fn unresolved_and_unguarded_references() {
    let (mut env, _, _, _) = env();
    let missing = ProcessExpr::reference("P", vec![1]);
    assert_eq!(
        initials(&missing, &env),
        Err(KernelError::UnresolvedReference {
            name: "P".into(),
            arity: 1
        })
    );
    env.define_const("Loop", ProcessExpr::reference("Loop", vec![]));
    assert!(matches!(
        initials(&ProcessExpr::reference("Loop", vec![]), &env),
        Err(KernelError::UnguardedRecursion { .. })
    ));
}

#[test]
fn traces_upto_examples() {
    let (env, a, b, _) = env();
    let (va, vb) = (Event::Visible(a), Event::Visible(b));
    assert_eq!(traces_upto(&Stop, &env, 2).unwrap(), traces(&[&[]]));

    let p = ProcessExpr::interleave(ProcessExpr::prefix(a, Stop), ProcessExpr::prefix(b, Stop));
    assert_eq!(
        traces_upto(&p, &env, 2).unwrap(),
        traces(&[&[], &[va], &[vb], &[va, vb], &[vb, va]])
    );

    let h = ProcessExpr::hide(
        ProcessExpr::prefix(a, ProcessExpr::prefix(b, Stop)),
        [a].into_iter().collect(),
    );
    assert_eq!(traces_upto(&h, &env, 1).unwrap(), traces(&[&[], &[vb]]));
}

#[test]
fn has_trace_examples() {
    let (env, a, b, c) = env();
    let (va, vb) = (Event::Visible(a), Event::Visible(b));
    let p = ProcessExpr::prefix(a, ProcessExpr::prefix(b, Stop));
    assert!(has_trace(&p, &env, &[]).unwrap().holds);
    assert!(has_trace(&Stop, &env, &[]).unwrap().holds);

    let h = ProcessExpr::hide(p.clone(), [a].into_iter().collect());
    assert!(has_trace(&h, &env, &[vb]).unwrap().holds);
    assert!(traces_upto(&h, &env, 1).unwrap().contains(&vec![vb]));

    let v = has_trace(&p, &env, &[va, va]).unwrap();
    assert!(!v.holds);
    assert_eq!(v.failure_index, Some(1));
    assert_eq!(v.enabled_at_failure, Some([b].into_iter().collect()));

    assert_eq!(
        has_trace(&p, &env, &[Event::Tau]),
        Err(KernelError::TauInTrace { index: 0 })
    );
    let _ = c;
}

#[test]
fn has_trace_accepts_final_tick() {
    let (env, a, _, _) = env();
    let p = ProcessExpr::prefix(a, Skip);
    assert!(has_trace(&p, &env, &[Event::Visible(a), Event::Tick]).unwrap().holds);
    assert!(!has_trace(&p, &env, &[Event::Tick]).unwrap().holds);
}

#[test]
fn normalize_examples() {
    let (env, a, b, _) = env();
    let p = ProcessExpr::choice(
        ProcessExpr::prefix(a, Stop),
        ProcessExpr::prefix(a, ProcessExpr::prefix(b, Stop)),
    );
    let dfa = normalize(&p, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(dfa.len(), 3);
    let after_a = dfa.successor(DetAutomaton::INITIAL, a).unwrap();
    assert!(dfa.successor(after_a, b).is_some());
    for k in 0..=4 {
        assert_eq!(dfa.traces_upto(k), traces_upto(&p, &env, k).unwrap());
    }

    let stop = normalize(&Stop, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(stop.len(), 1);
    assert_eq!(stop.transition_count(), 0);

    let hidden = ProcessExpr::hide(ProcessExpr::prefix(a, Stop), [a].into_iter().collect());
    let dfa = normalize(&hidden, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(dfa.len(), 1);
    assert_eq!(dfa.transition_count(), 0);
    assert_eq!(dfa.members(0).len(), 2);
}

#[test]
fn normalize_respects_bound() {
    let (mut env, a, _, _) = env();
    env.define("Count", 1, move |args| {
        ProcessExpr::prefix(a, ProcessExpr::reference("Count", vec![args[0] + 1]))
    });
    let p = ProcessExpr::reference("Count", vec![0]);
    assert_eq!(
        normalize(&p, &env, 50).unwrap_err(),
        KernelError::StateBoundExceeded { bound: 50 }
    );
}

#[test]
fn dump_lists_transitions_in_discovery_order() {
    let (env, a, b, _) = env();
    let p = ProcessExpr::prefix(a, ProcessExpr::choice(ProcessExpr::prefix(b, Stop), Skip));
    let dfa = normalize(&p, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(dfa.dump(), "0 -a-> 1\n1 -b-> 2\n1 -✓-> ⊤\n");
}

#[test]
fn refinement_examples() {
    let (mut env, a, b, _) = env();
    let pa = ProcessExpr::prefix(a, Stop);
    let pb = ProcessExpr::prefix(b, Stop);
    let v = refines_traces(&pa, &pb, &env, DEFAULT_STATE_CAP).unwrap();
    assert!(!v.holds);
    assert_eq!(v.counterexample, Some(vec![Event::Visible(b)]));

    env.define("Ping", 0, move |_| {
        ProcessExpr::prefix(a, ProcessExpr::prefix(b, ProcessExpr::reference("Ping", vec![])))
    });
    let ping = ProcessExpr::reference("Ping", vec![]);
    assert!(refines_traces(&ping, &ping, &env, DEFAULT_STATE_CAP).unwrap().holds);
    assert!(refines_traces(&ping, &pa, &env, DEFAULT_STATE_CAP).unwrap().holds);
}

#[test]
fn refinement_counterexample_is_shortest_and_canonical() {
    let (env, a, b, c) = env();
    // spec: a -> b -> STOP; impl offers c late and b early
    let spec = ProcessExpr::prefix(a, ProcessExpr::prefix(b, Stop));
    let imp = ProcessExpr::choice(
        ProcessExpr::prefix(a, ProcessExpr::prefix(b, ProcessExpr::prefix(c, Stop))),
        ProcessExpr::prefix(a, ProcessExpr::prefix(c, Stop)),
    );
    let v = refines_traces(&spec, &imp, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(v.counterexample, Some(vec![Event::Visible(a), Event::Visible(c)]));
}

#[test]
fn refinement_detects_unexpected_termination() {
    let (env, a, _, _) = env();
    let spec = ProcessExpr::prefix(a, Stop);
    let imp = ProcessExpr::prefix(a, Skip);
    let v = refines_traces(&spec, &imp, &env, DEFAULT_STATE_CAP).unwrap();
    assert_eq!(v.counterexample, Some(vec![Event::Visible(a), Event::Tick]));
}

#[test]
fn shortest_trace_enabling_goes_through_hidden_steps() {
    let (env, a, b, c) = env();
    let p = ProcessExpr::hide(
        ProcessExpr::prefix(a, ProcessExpr::prefix(b, ProcessExpr::prefix(c, Stop))),
        [a].into_iter().collect(),
    );
    assert_eq!(
        shortest_trace_enabling(&p, &env, Event::Visible(c), 100).unwrap(),
        Some(vec![Event::Visible(b)])
    );
    assert_eq!(shortest_trace_enabling(&p, &env, Event::Visible(a), 100).unwrap(), None);
}

#[test]
fn display_uses_cspm_syntax() {
    let (env, a, b, _) = env();
    let p = ProcessExpr::hide(
        ProcessExpr::choice(ProcessExpr::prefix(a, Stop), ProcessExpr::reference("P", vec![1, 2])),
        [a, b].into_iter().collect(),
    );
    assert_eq!(
        p.display(env.alphabet()).to_string(),
        "((a -> STOP [] P(1, 2)) \\ {a, b})"
    );
}

#[test]
fn alphabet_rejects_duplicates() {
    assert_eq!(
        Alphabet::new(["a", "a"]).unwrap_err(),
        AlphabetError::Duplicate("a".into())
    );
    assert_eq!(Alphabet::new([""]).unwrap_err(), AlphabetError::EmptyName);
}
