//! A small finite-state CSP engine.
//!
//! Terms ([`ProcessExpr`]) are given an operational semantics as a labelled
//! transition system. On top of that sit a brute-force trace enumerator, a
//! trace-membership check, a determinizing normalizer, and a traces
//! refinement checker that reports shortest counterexamples.

mod event;
mod normal;
mod process;
mod refine;
mod semantics;
mod traces;

pub use event::{Alphabet, AlphabetError, Event, EventId, EventSet};
pub use normal::{normalize, DetAutomaton};
pub use process::{DisplayExpr, ProcessEnv, ProcessExpr};
pub use refine::{refines_normalized, refines_traces, shortest_trace_enabling, RefinementVerdict};
pub use semantics::{initials, step, transitions, Lts, StateId};
pub use traces::{has_trace, has_trace_within, traces_upto, traces_upto_within, Trace, TraceVerdict};

/// Configurations or macro-states explored before giving up.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unresolved process reference `{name}` with {arity} argument(s)")]
    UnresolvedReference { name: String, arity: usize },
    #[error("state bound of {bound} exceeded")]
    StateBoundExceeded { bound: usize },
    #[error("unguarded recursion through `{name}`")]
    UnguardedRecursion { name: String },
    #[error("trace contains an internal event at index {index}")]
    TauInTrace { index: usize },
}

#[cfg(test)]
mod tests;
