//! Event selection during model construction.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;

use crate::appspec::EventId;
use crate::depend::DependencyRelation;

pub type Weight = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Uniform over the available events.
    Random,
    /// Uniform over the available events of highest weight.
    #[default]
    Weighted,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Random => "random",
            Strategy::Weighted => "weighted",
        })
    }
}

/// `alpha` rewards events that depend upon the previously selected one,
/// `beta` is the base weight of all others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightParams {
    pub alpha: Weight,
    pub beta: Weight,
}

impl Default for WeightParams {
    fn default() -> Self {
        WeightParams {
            alpha: Ratio::new(7, 10),
            beta: Ratio::new(3, 10),
        }
    }
}

/// `(alpha*x + beta*(1-x)) / (fired[e] + 1)` with `x = 1` iff `prev -> e`.
pub fn weight(
    e: EventId,
    prev: Option<EventId>,
    rel: &DependencyRelation,
    fired: &[u64],
    params: &WeightParams,
) -> Weight {
    let follows = prev.is_some_and(|p| rel.depends(p, e));
    let x: Weight = if follows { One::one() } else { Zero::zero() };
    let numer = params.alpha * x + params.beta * (Weight::one() - x);
    numer / Weight::from_integer(fired[e.index()] as i64 + 1)
}

/// Picks the next event to fire from a non-empty `available` set.
///
/// Candidates are ordered by event name before the random draw so the
/// outcome depends only on the seed.
#[allow(clippy::too_many_arguments)]
pub fn select_event<R: Rng + ?Sized>(
    strategy: Strategy,
    available: &[EventId],
    prev: Option<EventId>,
    rel: &DependencyRelation,
    fired: &[u64],
    params: &WeightParams,
    rng: &mut R,
) -> EventId {
    assert!(
        !available.is_empty(),
        "select_event needs an available event"
    );
    let mut candidates: Vec<EventId> = match strategy {
        Strategy::Random => available.to_vec(),
        Strategy::Weighted => {
            let weights: Vec<Weight> = available
                .iter()
                .map(|e| weight(*e, prev, rel, fired, params))
                .collect();
            let best = *weights.iter().max().expect("non-empty");
            available
                .iter()
                .zip(&weights)
                .filter(|(_, w)| **w == best)
                .map(|(e, _)| *e)
                .collect()
        }
    };
    candidates.sort_by_key(|e| rel.name_rank(*e));
    if candidates.len() == 1 {
        candidates[0]
    } else {
        candidates[rng.gen_range(0..candidates.len())]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a non-negative decimal or fraction")]
pub struct BadWeight(pub String);

/// Parses `0.7`, `7/10` or `1` exactly.
pub fn parse_weight(text: &str) -> Result<Weight, BadWeight> {
    let bad = || BadWeight(text.to_string());
    let t = text.trim();
    let value = if t.contains('/') {
        Ratio::<i64>::from_str(t).map_err(|_| bad())?
    } else {
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 15
        {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let whole: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numer = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(bad)?;
        Ratio::new(numer, den)
    };
    if value < Weight::zero() {
        return Err(bad());
    }
    Ok(value)
}

/// Decimal rendering with four places, e.g. `0.3500`.
pub fn format_weight(w: &Weight) -> String {
    let scaled = (w * Weight::from_integer(10_000)).round().to_integer();
    format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
}
