use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Index of a visible event in its [`Alphabet`].
///
/// Ordering follows declaration order, which is also the canonical order used
/// when exploring transitions breadth-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub u16);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    Visible(EventId),
    /// Internal step, produced by hiding.
    Tau,
    /// Successful termination.
    Tick,
}

impl Event {
    pub fn visible(self) -> Option<EventId> {
        match self {
            Event::Visible(id) => Some(id),
            _ => None,
        }
    }

    pub fn is_tau(self) -> bool {
        matches!(self, Event::Tau)
    }
}

/// Declared, ordered set of visible event names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<Arc<str>>,
    index: HashMap<Arc<str>, EventId>,
}

impl Alphabet {
    /// Builds an alphabet from names in canonical order. Duplicates and empty
    /// names are rejected.
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if alphabet.index.contains_key(name) {
                return Err(AlphabetError::Duplicate(name.to_string()));
            }
            let id = u16::try_from(alphabet.names.len())
                .map(EventId)
                .map_err(|_| AlphabetError::TooLarge)?;
            let name: Arc<str> = Arc::from(name);
            alphabet.names.push(name.clone());
            alphabet.index.insert(name, id);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<EventId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: EventId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.names.len()).map(|i| EventId(i as u16))
    }

    pub fn contains(&self, id: EventId) -> bool {
        (id.0 as usize) < self.names.len()
    }

    /// Renders an event with this alphabet's names; `τ` and `✓` for the
    /// internal and termination events.
    pub fn display(&self, event: Event) -> String {
        match event {
            Event::Visible(id) => self.name(id).to_string(),
            Event::Tau => "τ".to_string(),
            Event::Tick => "✓".to_string(),
        }
    }

    /// Space-separated rendering of a trace. Tick is omitted.
    pub fn display_trace(&self, trace: &[Event]) -> String {
        trace
            .iter()
            .filter_map(|e| e.visible())
            .map(|id| self.name(id))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("event names must be nonempty")]
    EmptyName,
    #[error("event `{0}` declared twice")]
    Duplicate(String),
    #[error("alphabet exceeds 65536 events")]
    TooLarge,
}

/// A finite set of visible events.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventSet(BTreeSet<EventId>);

impl EventSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, id: EventId) -> bool {
        self.0.contains(&id)
    }

    pub fn insert(&mut self, id: EventId) -> bool {
        self.0.insert(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = EventId> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<EventId> for EventSet {
    fn from_iter<T: IntoIterator<Item = EventId>>(iter: T) -> Self {
        EventSet(iter.into_iter().collect())
    }
}

impl Extend<EventId> for EventSet {
    fn extend<T: IntoIterator<Item = EventId>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}
