use std::collections::{BTreeMap, BTreeSet};

use super::enumerate::{check_bound, enumerate_frames_with};
use super::{SearchBudget, SearchError};
use crate::semantics::{full_set, Conditions, Model, Structure, WorldSet};
use crate::syntax::{Formula, Label, System};

/// Valuations are indexed by one bit per (proposition, world) pair.
const MAX_VALUATION_BITS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountermodelResult {
    /// A structure in which every assumption holds and the goal fails.
    Found(Structure),
    /// No countermodel among frames with at most `bound` worlds. This is not
    /// a proof of validity.
    NotFoundWithin {
        bound: usize,
        frames_checked: usize,
        /// The query has more distinct labels than `bound`, so it can only be
        /// refuted by interpretations that identify some labels.
        labels_exceed_bound: bool,
    },
}

impl CountermodelResult {
    pub fn structure(&self) -> Option<&Structure> {
        match self {
            CountermodelResult::Found(s) => Some(s),
            CountermodelResult::NotFoundWithin { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.structure().is_some()
    }
}

/// Searches for a structure satisfying `gamma` and refuting `alpha`.
///
/// Frames are tried by size, then in enumeration order; valuations range
/// over `budget.propositions` (or the propositions of the query when that
/// list is empty), interpretations over all maps from the query's labels to
/// worlds. The first hit is returned.
pub fn find_countermodel(
    system: System,
    gamma: &[Formula],
    alpha: &Formula,
    budget: &SearchBudget,
) -> Result<CountermodelResult, SearchError> {
    find_countermodel_with(system, Conditions::of(system), gamma, alpha, budget)
}

/// Like [`find_countermodel`], over frames satisfying only `conditions`.
pub fn find_countermodel_with(
    system: System,
    conditions: Conditions,
    gamma: &[Formula],
    alpha: &Formula,
    budget: &SearchBudget,
) -> Result<CountermodelResult, SearchError> {
    check_bound(budget.max_worlds)?;
    let query: Vec<&Formula> = gamma.iter().chain(std::iter::once(alpha)).collect();
    if let Some(bad) = query.iter().find(|f| !f.is_legal_in(system)) {
        return Err(SearchError::WrongSystem {
            formula: bad.to_string(),
            system,
        });
    }
    let propositions: Vec<String> = if budget.propositions.is_empty() {
        let set: BTreeSet<String> = query.iter().flat_map(|f| f.propositions()).collect();
        set.into_iter().collect()
    } else {
        budget.propositions.clone()
    };
    let labels: Vec<Label> = query
        .iter()
        .flat_map(|f| f.labels())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if propositions.len() * budget.max_worlds > MAX_VALUATION_BITS {
        return Err(SearchError::TooManyPropositions {
            propositions: propositions.len(),
            worlds: budget.max_worlds,
        });
    }

    let index = |x: &Label| labels.iter().position(|l| l == x).expect("label collected");
    let mut frames_checked = 0;
    for size in 1..=budget.max_worlds {
        let row_mask = full_set(size);
        let interpretations = size.pow(labels.len() as u32);
        for frame in enumerate_frames_with(system, size, conditions)? {
            frames_checked += 1;
            for valuation in 0u64..1 << (size * propositions.len()) {
                let extensions: BTreeMap<String, WorldSet> = propositions
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.clone(), valuation >> (i * size) & row_mask))
                    .collect();
                let model = Model::from_extensions(frame.clone(), extensions)?;
                let truth: Vec<Option<WorldSet>> = query
                    .iter()
                    .map(|f| match f {
                        Formula::Labelled(_, a) => model.truth_set(a).map(Some),
                        Formula::Relational(..) => Ok(None),
                    })
                    .collect::<Result<_, _>>()?;

                let mut assignment = vec![0usize; labels.len()];
                for code in 0..interpretations {
                    let mut rest = code;
                    for slot in assignment.iter_mut().rev() {
                        *slot = rest % size;
                        rest /= size;
                    }
                    let holds = |i: usize| -> bool {
                        match (query[i], truth[i]) {
                            (Formula::Labelled(x, _), Some(set)) => set >> assignment[index(x)] & 1 == 1,
                            (Formula::Relational(x, r, y), _) => frame
                                .related(*r, assignment[index(x)], assignment[index(y)])
                                .unwrap_or(false),
                            _ => unreachable!("labelled formulas have a truth set"),
                        }
                    };
                    let last = query.len() - 1;
                    if !holds(last) && (0..last).all(holds) {
                        let interp = labels.iter().cloned().zip(assignment.iter().copied()).collect();
                        return Ok(CountermodelResult::Found(Structure::new(model, interp)?));
                    }
                }
            }
        }
    }
    Ok(CountermodelResult::NotFoundWithin {
        bound: budget.max_worlds,
        frames_checked,
        labels_exceed_bound: labels.len() > budget.max_worlds,
    })
}
