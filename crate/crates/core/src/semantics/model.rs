use std::collections::{BTreeMap, BTreeSet};

use super::frame::{members, Frame, WorldSet};
use super::SemanticsError;
use crate::syntax::{Formula, Label, MFormula};

/// A frame with a valuation. Propositions without an entry are false
/// everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    frame: Frame,
    extensions: BTreeMap<String, WorldSet>,
}

impl Model {
    /// `valuation[w]` lists the propositions true at world `w`.
    pub fn new(frame: Frame, valuation: Vec<BTreeSet<String>>) -> Result<Model, SemanticsError> {
        if valuation.len() != frame.size() {
            return Err(SemanticsError::ValuationSize {
                expected: frame.size(),
                found: valuation.len(),
            });
        }
        let mut extensions: BTreeMap<String, WorldSet> = BTreeMap::new();
        for (w, props) in valuation.into_iter().enumerate() {
            for p in props {
                *extensions.entry(p).or_default() |= 1 << w;
            }
        }
        Ok(Model { frame, extensions })
    }

    /// Builds a model from the set of worlds at which each proposition holds.
    pub fn from_extensions(frame: Frame, extensions: BTreeMap<String, WorldSet>) -> Result<Model, SemanticsError> {
        let all = frame.all();
        if let Some((_, &ext)) = extensions.iter().find(|(_, &e)| e & !all != 0) {
            return Err(SemanticsError::UnknownWorld((ext & !all).trailing_zeros() as usize));
        }
        let extensions = extensions.into_iter().filter(|(_, e)| *e != 0).collect();
        Ok(Model { frame, extensions })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Worlds at which `prop` is true.
    pub fn extension(&self, prop: &str) -> WorldSet {
        self.extensions.get(prop).copied().unwrap_or(0)
    }

    /// Propositions true at `world`.
    pub fn valuation(&self, world: usize) -> BTreeSet<&str> {
        self.extensions
            .iter()
            .filter(|(_, &e)| e >> world & 1 == 1)
            .map(|(p, _)| p.as_str())
            .collect()
    }

    /// Worlds of the model at which `phi` is true.
    pub fn truth_set(&self, phi: &MFormula) -> Result<WorldSet, SemanticsError> {
        let all = self.frame.all();
        Ok(match phi {
            MFormula::Bottom => 0,
            MFormula::Prop(p) => self.extension(p),
            MFormula::Implies(a, b) => (!self.truth_set(a)? | self.truth_set(b)?) & all,
            MFormula::Modal(r, a) => {
                let rows = self.frame.rows(*r)?;
                let inner = self.truth_set(a)?;
                (0..rows.len())
                    .filter(|&w| rows[w] & !inner == 0)
                    .fold(0, |acc, w| acc | 1 << w)
            }
        })
    }
}

/// A model with an interpretation of labels as worlds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    model: Model,
    interp: BTreeMap<Label, usize>,
}

impl Structure {
    pub fn new(model: Model, interp: BTreeMap<Label, usize>) -> Result<Structure, SemanticsError> {
        if let Some(&w) = interp.values().find(|&&w| w >= model.frame.size()) {
            return Err(SemanticsError::UnknownWorld(w));
        }
        Ok(Structure { model, interp })
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn frame(&self) -> &Frame {
        &self.model.frame
    }

    pub fn interp(&self) -> &BTreeMap<Label, usize> {
        &self.interp
    }

    pub fn world_of(&self, label: &Label) -> Result<usize, SemanticsError> {
        self.interp
            .get(label)
            .copied()
            .ok_or_else(|| SemanticsError::UnboundLabel(label.clone()))
    }
}

/// Truth of `phi` at `world`.
pub fn eval(model: &Model, world: usize, phi: &MFormula) -> Result<bool, SemanticsError> {
    if world >= model.frame.size() {
        return Err(SemanticsError::UnknownWorld(world));
    }
    if let Some(r) = phi.relations().into_iter().find(|r| !model.frame.system().allows(*r)) {
        return Err(SemanticsError::WrongSystem {
            relation: r,
            system: model.frame.system(),
        });
    }
    Ok(model.truth_set(phi)? >> world & 1 == 1)
}

pub fn holds(structure: &Structure, alpha: &Formula) -> Result<bool, SemanticsError> {
    match alpha {
        Formula::Labelled(x, a) => eval(&structure.model, structure.world_of(x)?, a),
        Formula::Relational(x, r, y) => {
            let (v, w) = (structure.world_of(x)?, structure.world_of(y)?);
            structure.frame().related(*r, v, w)
        }
    }
}

/// Whether the structure satisfies `gamma => alpha`. Every label must be
/// interpreted, including those of assumptions.
pub fn entails_in(structure: &Structure, gamma: &[Formula], alpha: &Formula) -> Result<bool, SemanticsError> {
    let mut all_hold = true;
    for g in gamma {
        all_hold &= holds(structure, g)?;
    }
    let conclusion = holds(structure, alpha)?;
    Ok(!all_hold || conclusion)
}

/// Worlds satisfying `phi`, listed in index order.
pub fn satisfying_worlds(model: &Model, phi: &MFormula) -> Result<Vec<usize>, SemanticsError> {
    let set = model.truth_set(phi)?;
    Ok(members(set).collect())
}
