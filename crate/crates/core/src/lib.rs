//! Model-based test generation for event-driven applications.
//!
//! The pipeline mirrors a classic crawler-based tester, minus the browser:
//!
//! 1. [`appspec`] parses an app written in the small `.eda` language.
//! 2. [`depend`] computes which events can influence each other.
//! 3. [`model`] drives the [`engine`] along long random or weighted walks
//!    and folds the visited abstract states into a finite-state machine.
//! 4. [`genseq`] derives test sequences from that machine, either
//!    exhaustively with sleep-set pruning or as long random walks.
//! 5. [`campaign`] replays the sequences and aggregates statement coverage.

pub mod appspec;
pub mod campaign;
pub mod cli;
pub mod corpus;
pub mod depend;
pub mod engine;
pub mod genseq;
pub mod model;
