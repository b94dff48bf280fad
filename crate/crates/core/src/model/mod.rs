//! FSM model construction: state abstraction, event selection and the
//! exploration loop.

mod abstraction;
mod build;
mod fsm;
mod select;

pub use abstraction::{
    abstract_state, abstract_state_debug, canonical_bytes, fnv1a64, AbstractState, Abstraction,
};
pub use build::{build_model, BuildConfig, BuildStats, ConfigError, ModelBuild};
pub use fsm::{Fsm, StateId, Transition};
pub use select::{
    format_weight, parse_weight, select_event, weight, BadWeight, Strategy, Weight, WeightParams,
};
