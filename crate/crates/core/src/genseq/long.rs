use std::collections::BTreeMap;

use rand::Rng;

use super::{EventSeq, GenError, Origin};
use crate::appspec::EventId;
use crate::model::Fsm;

/// Result of [`gen_long`]: distinct walks in sorted order, each with the
/// number of times it was drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongWalks {
    pub sequences: Vec<EventSeq>,
    pub multiplicity: Vec<usize>,
    /// Walks drawn, duplicates included.
    pub walks: usize,
    /// Walks that hit a state without outgoing transitions before `max_len`.
    pub truncated: usize,
}

/// Draws `count` random walks of up to `max_len` transitions from the
/// initial state, choosing uniformly among the outgoing transitions.
pub fn gen_long<R: Rng + ?Sized>(
    fsm: &Fsm,
    max_len: usize,
    count: usize,
    rng: &mut R,
) -> Result<LongWalks, GenError> {
    if max_len == 0 {
        return Err(GenError::ZeroLength);
    }
    if count == 0 {
        return Err(GenError::ZeroCount);
    }
    if fsm.supp(fsm.initial()).is_empty() {
        return Err(GenError::EmptyModel);
    }
    let supp: Vec<_> = (0..fsm.state_count() as u32)
        .map(|s| fsm.supp(crate::model::StateId(s)))
        .collect();

    let mut drawn: BTreeMap<Vec<EventId>, usize> = BTreeMap::new();
    let mut truncated = 0;
    for _ in 0..count {
        let mut state = fsm.initial();
        let mut walk = Vec::with_capacity(max_len);
        while walk.len() < max_len {
            let out = &supp[state.index()];
            if out.is_empty() {
                truncated += 1;
                break;
            }
            let (e, to) = out[rng.gen_range(0..out.len())];
            walk.push(e);
            state = to;
        }
        *drawn.entry(walk).or_default() += 1;
    }

    let (sequences, multiplicity) = drawn
        .into_iter()
        .map(|(w, n)| (EventSeq::new(w, Origin::Long), n))
        .unzip();
    Ok(LongWalks {
        sequences,
        multiplicity,
        walks: count,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::appspec::parse;
    use crate::corpus;
    use crate::depend::analyze;
    use crate::model::{build_model, AbstractState, BuildConfig};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn running_fsm() -> Fsm {
        let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
        let rel = analyze(&spec);
        build_model(spec, &rel, &BuildConfig::new(20, 2).unwrap())
            .unwrap()
            .fsm
    }

    #[test]
    fn walks_reach_the_bound() {
        let fsm = running_fsm();
        let out = gen_long(&fsm, 7, 1, &mut rng(0)).unwrap();
        assert_eq!(out.sequences.len(), 1);
        assert_eq!(out.sequences[0].len(), 7);
        assert_eq!(out.truncated, 0);
    }

    #[test]
    fn multiplicity_sums_to_count() {
        let fsm = running_fsm();
        let out = gen_long(&fsm, 6, 5, &mut rng(3)).unwrap();
        assert_eq!(out.walks, 5);
        assert_eq!(out.multiplicity.iter().sum::<usize>(), 5);
        for s in &out.sequences {
            assert!(fsm.accepts(&s.events));
        }
    }

    #[test]
    fn single_label_repeats() {
        let spec = parse("app t\nevent a { log(\"a\"); }\nevent b { log(\"b\"); }").unwrap();
        let mut fsm = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        fsm.add_transition(fsm.initial(), EventId(0), fsm.initial());
        let out = gen_long(&fsm, 3, 4, &mut rng(1)).unwrap();
        assert_eq!(out.sequences.len(), 1);
        assert_eq!(out.sequences[0].render(&spec.event_names()), "a;a;a");
        assert_eq!(out.multiplicity, vec![4]);
    }

    #[test]
    fn truncation_and_errors() {
        let spec = parse("app t\nevent a { log(\"a\"); }").unwrap();
        let mut fsm = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        assert_eq!(gen_long(&fsm, 3, 1, &mut rng(0)), Err(GenError::EmptyModel));
        let s1 = fsm.add_state(AbstractState::from_digest(1));
        fsm.add_transition(fsm.initial(), EventId(0), s1);
        let out = gen_long(&fsm, 3, 2, &mut rng(0)).unwrap();
        assert_eq!(out.truncated, 2);
        assert_eq!(out.sequences[0].len(), 1);
        assert_eq!(gen_long(&fsm, 0, 1, &mut rng(0)), Err(GenError::ZeroLength));
        assert_eq!(gen_long(&fsm, 1, 0, &mut rng(0)), Err(GenError::ZeroCount));
    }

    #[test]
    fn same_seed_same_walks() {
        let fsm = running_fsm();
        let a = gen_long(&fsm, 10, 8, &mut rng(9)).unwrap();
        let b = gen_long(&fsm, 10, 8, &mut rng(9)).unwrap();
        assert_eq!(a, b);
    }
}
