use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::equivalence_rows;
use super::{SearchBudget, SearchError};
use crate::semantics::{full_set, members, satisfies, Conditions, Frame, WorldSet, MAX_FRAME_WORLDS};
use crate::syntax::System;

/// Attempts at adding extra projection edges before falling back to the
/// plain construction.
const RESAMPLE_LIMIT: usize = 16;

/// A valid frame of `system` with between 1 and `budget.max_worlds` worlds,
/// determined entirely by `budget.seed`.
pub fn random_valid_frame(system: System, budget: &SearchBudget) -> Result<Frame, SearchError> {
    if budget.max_worlds == 0 {
        return Err(SearchError::EmptyBound);
    }
    if budget.max_worlds > MAX_FRAME_WORLDS {
        return Err(SearchError::BoundTooLarge {
            requested: budget.max_worlds,
            max: MAX_FRAME_WORLDS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    Ok(sample(&mut rng, system, budget.max_worlds))
}

fn random_subset<R: Rng>(rng: &mut R, pool: WorldSet) -> WorldSet {
    let picked = members(pool).filter(|_| rng.gen_bool(0.5)).fold(0, |acc, w| acc | 1 << w);
    if picked != 0 {
        return picked;
    }
    let all: Vec<usize> = members(pool).collect();
    1 << all[rng.gen_range(0..all.len())]
}

fn sample<R: Rng>(rng: &mut R, system: System, max_worlds: usize) -> Frame {
    let n = rng.gen_range(1..=max_worlds);
    let mut rgs = Vec::with_capacity(n);
    let mut blocks = 0;
    for _ in 0..n {
        let b = rng.gen_range(0..=blocks);
        blocks = blocks.max(b + 1);
        rgs.push(b);
    }
    let unitary = equivalence_rows(&rgs);

    let mut classical: WorldSet = 0;
    for b in 0..blocks {
        let block = unitary[rgs.iter().position(|&c| c == b).expect("nonempty block")];
        classical |= random_subset(rng, block);
    }
    let base: Vec<WorldSet> = (0..n)
        .map(|v| {
            if classical >> v & 1 == 1 {
                1 << v
            } else {
                random_subset(rng, unitary[v] & classical)
            }
        })
        .collect();

    let meas = match system {
        System::Msqr => base,
        System::Mspqr if rng.gen_bool(0.5) => {
            let conditions = Conditions::of(system);
            let mut chosen = None;
            for _ in 0..RESAMPLE_LIMIT {
                let mut rows = base.clone();
                for v in members(!classical & full_set(n)) {
                    for w in members(unitary[v] & !classical & !(1 << v)) {
                        if rng.gen_bool(1.0 / 3.0) {
                            rows[v] |= 1 << w;
                        }
                    }
                }
                transitive_closure(&mut rows);
                if satisfies(&unitary, &rows, conditions) {
                    chosen = Some(rows);
                    break;
                }
            }
            chosen.unwrap_or(base)
        }
        System::Mspqr => base,
    };
    let frame = Frame::from_rows(system, unitary, meas);
    debug_assert!(crate::semantics::validate_frame(&frame).is_empty(), "{frame}");
    frame
}

fn transitive_closure(rows: &mut [WorldSet]) {
    let n = rows.len();
    for k in 0..n {
        for v in 0..n {
            if rows[v] >> k & 1 == 1 {
                rows[v] |= rows[k];
            }
        }
    }
}
