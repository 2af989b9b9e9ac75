use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::event::{Alphabet, EventId, EventSet};
use super::KernelError;

/// A CSP process term.
///
/// Children are shared behind `Arc`, so cloning a term is cheap and terms can
/// be handed to other threads. Equality and hashing are structural, which is
/// what lets terms double as states of the transition system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcessExpr {
    Stop,
    Skip,
    Prefix(EventId, Arc<ProcessExpr>),
    ExtChoice(Arc<ProcessExpr>, Arc<ProcessExpr>),
    Interleave(Arc<ProcessExpr>, Arc<ProcessExpr>),
    Hide(Arc<ProcessExpr>, EventSet),
    Ref(Arc<str>, Vec<i64>),
}

impl ProcessExpr {
    pub fn prefix(event: EventId, cont: ProcessExpr) -> Self {
        ProcessExpr::Prefix(event, Arc::new(cont))
    }

    pub fn choice(left: ProcessExpr, right: ProcessExpr) -> Self {
        ProcessExpr::ExtChoice(Arc::new(left), Arc::new(right))
    }

    /// Right-nested external choice over all branches; `Stop` when empty.
    pub fn choice_all<I: IntoIterator<Item = ProcessExpr>>(branches: I) -> Self {
        let mut branches: Vec<_> = branches.into_iter().collect();
        let Some(mut acc) = branches.pop() else {
            return ProcessExpr::Stop;
        };
        while let Some(branch) = branches.pop() {
            acc = ProcessExpr::choice(branch, acc);
        }
        acc
    }

    pub fn interleave(left: ProcessExpr, right: ProcessExpr) -> Self {
        ProcessExpr::Interleave(Arc::new(left), Arc::new(right))
    }

    pub fn hide(body: ProcessExpr, hidden: EventSet) -> Self {
        ProcessExpr::Hide(Arc::new(body), hidden)
    }

    pub fn reference(name: &str, args: Vec<i64>) -> Self {
        ProcessExpr::Ref(Arc::from(name), args)
    }

    /// As [`ProcessExpr::reference`], reusing an already shared name.
    pub fn reference_shared(name: &Arc<str>, args: Vec<i64>) -> Self {
        ProcessExpr::Ref(name.clone(), args)
    }

    /// Number of nodes in the term, not following references.
    pub fn size(&self) -> usize {
        match self {
            ProcessExpr::Stop | ProcessExpr::Skip | ProcessExpr::Ref(..) => 1,
            ProcessExpr::Prefix(_, p) | ProcessExpr::Hide(p, _) => 1 + p.size(),
            ProcessExpr::ExtChoice(p, q) | ProcessExpr::Interleave(p, q) => 1 + p.size() + q.size(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayExpr<'a> {
        DisplayExpr { expr: self, alphabet }
    }
}

/// Pretty printer in machine-readable CSP syntax.
pub struct DisplayExpr<'a> {
    expr: &'a ProcessExpr,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |p: &'_ Arc<ProcessExpr>| {
            DisplayExpr {
                expr: p.as_ref(),
                alphabet: self.alphabet,
            }
            .to_string()
        };
        match self.expr {
            ProcessExpr::Stop => write!(f, "STOP"),
            ProcessExpr::Skip => write!(f, "SKIP"),
            ProcessExpr::Prefix(a, p) => write!(f, "{} -> {}", self.alphabet.name(*a), sub(p)),
            ProcessExpr::ExtChoice(p, q) => write!(f, "({} [] {})", sub(p), sub(q)),
            ProcessExpr::Interleave(p, q) => write!(f, "({} ||| {})", sub(p), sub(q)),
            ProcessExpr::Hide(p, set) => {
                let names: Vec<_> = set.iter().map(|id| self.alphabet.name(id)).collect();
                write!(f, "({} \\ {{{}}})", sub(p), names.join(", "))
            }
            ProcessExpr::Ref(name, args) if args.is_empty() => write!(f, "{name}"),
            ProcessExpr::Ref(name, args) => {
                let args: Vec<_> = args.iter().map(i64::to_string).collect();
                write!(f, "{name}({})", args.join(", "))
            }
        }
    }
}

type Body = dyn Fn(&[i64]) -> ProcessExpr + Send + Sync;

/// Named, integer-parametrized process definitions over a fixed alphabet.
///
/// A definition body is a function from its integer arguments to a term, so
/// guards and arithmetic on parameters are ordinary Rust.
#[derive(Clone)]
pub struct ProcessEnv {
    alphabet: Arc<Alphabet>,
    definitions: HashMap<Arc<str>, Vec<(usize, Arc<Body>)>>,
}

impl ProcessEnv {
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        ProcessEnv {
            alphabet,
            definitions: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Defines `name` with `arity` integer parameters. Redefinition replaces.
    pub fn define<F>(&mut self, name: &str, arity: usize, body: F)
    where
        F: Fn(&[i64]) -> ProcessExpr + Send + Sync + 'static,
    {
        let overloads = self.definitions.entry(Arc::from(name)).or_default();
        overloads.retain(|(a, _)| *a != arity);
        overloads.push((arity, Arc::new(body)));
    }

    /// Defines a parameterless process.
    pub fn define_const(&mut self, name: &str, body: ProcessExpr) {
        self.define(name, 0, move |_| body.clone());
    }

    pub fn is_defined(&self, name: &str, arity: usize) -> bool {
        self.body(name, arity).is_some()
    }

    fn body(&self, name: &str, arity: usize) -> Option<&Arc<Body>> {
        self.definitions
            .get(name)?
            .iter()
            .find(|(a, _)| *a == arity)
            .map(|(_, body)| body)
    }

    /// Instantiates a definition with concrete arguments.
    pub fn resolve(&self, name: &str, args: &[i64]) -> Result<ProcessExpr, KernelError> {
        self.body(name, args.len())
            .map(|body| body(args))
            .ok_or_else(|| KernelError::UnresolvedReference {
                name: name.to_string(),
                arity: args.len(),
            })
    }
}

impl fmt::Debug for ProcessEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<_> = self
            .definitions
            .iter()
            .flat_map(|(n, overloads)| overloads.iter().map(move |(a, _)| format!("{n}/{a}")))
            .collect();
        names.sort();
        f.debug_struct("ProcessEnv")
            .field("alphabet", &self.alphabet)
            .field("definitions", &names)
            .finish()
    }
}
