//! Node budgets and three-valued search outcomes.

use serde::Serialize;

/// Default node budget for a single subgraph search.
pub const DEFAULT_EMBED_BUDGET: u64 = 100_000_000;
/// Default node budget shared by a whole arrow decision.
pub const DEFAULT_ARROW_BUDGET: u64 = 1_000_000_000;

/// Search ran out of nodes before reaching a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted {
    pub budget: u64,
}

/// A counter of search nodes with a hard limit.
///
/// One budget is threaded through every nested search of a call, so the
/// limit bounds the total work of the call rather than of each sub-search.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted { budget: self.limit });
        }
        self.used += 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_EMBED_BUDGET)
    }
}

/// Result of a search that may prove absence or run out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value")]
pub enum SearchOutcome<T> {
    Found(T),
    /// Exhaustive search proved there is nothing to find.
    Absent,
    Unknown { budget: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown { .. })
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::Unknown { budget } => SearchOutcome::Unknown { budget },
        }
    }
}

impl<T> From<Exhausted> for SearchOutcome<T> {
    fn from(e: Exhausted) -> Self {
        SearchOutcome::Unknown { budget: e.budget }
    }
}

/// Result of a computation that always succeeds given enough budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Bounded<T> {
    Done(T),
    Unknown { budget: u64 },
}

impl<T> Bounded<T> {
    pub fn done(self) -> Option<T> {
        match self {
            Bounded::Done(t) => Some(t),
            Bounded::Unknown { .. } => None,
        }
    }
}

impl<T> From<Result<T, Exhausted>> for Bounded<T> {
    fn from(r: Result<T, Exhausted>) -> Self {
        match r {
            Ok(t) => Bounded::Done(t),
            Err(e) => Bounded::Unknown { budget: e.budget },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_exhausts_at_limit() {
        let mut b = Budget::new(2);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(Exhausted { budget: 2 }));
        assert_eq!(b.used(), 2);
    }
}
