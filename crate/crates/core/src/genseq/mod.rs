//! Test-sequence generation from a model, plus a brute-force enumeration
//! of the concrete event tree.

mod enumerate;
mod long;
mod por;
mod seqfile;

pub use enumerate::{count_all, enumerate_all, enumerate_all_seeded, Enumeration};
pub use long::{gen_long, LongWalks};
pub use por::{for_each_exhaustive, for_each_por, gen_exhaustive, gen_por};
pub use seqfile::{parse_seq_file, render_seq_file, SeqFileError};

use std::fmt;

use thiserror::Error;

use crate::appspec::EventId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Por,
    Long,
    Exhaustive,
    Manual,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Por => "por",
            Origin::Long => "long",
            Origin::Exhaustive => "exhaustive",
            Origin::Manual => "manual",
        })
    }
}

/// A test case: events to fire in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventSeq {
    pub events: Vec<EventId>,
    pub origin: Origin,
}

impl EventSeq {
    pub fn new(events: Vec<EventId>, origin: Origin) -> Self {
        EventSeq { events, origin }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// `A;B;C` using the given id-to-name table.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.events
            .iter()
            .map(|e| names[e.index()].as_ref())
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("the model has no transitions out of its initial state")]
    EmptyModel,
    #[error("sequence length bound must be at least 1")]
    ZeroLength,
    #[error("number of sequences must be at least 1")]
    ZeroCount,
}
