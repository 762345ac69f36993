//! Generators and reference implementations shared by the integration tests.
//!
//! The reference evaluator and validator work on explicit pair sets and follow
//! the truth clauses and frame conditions literally, without bit tricks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mqr_core::semantics::{Frame, Model, Structure};
use mqr_core::{Formula, Label, MFormula, Relation, System};
use proptest::prelude::*;

pub const PROPS: [&str; 3] = ["r0", "r1", "r2"];
pub const LABELS: [&str; 4] = ["x", "y", "z", "w1"];

pub fn relation_for(system: System) -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::U), Just(system.measurement())]
}

pub fn any_relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::U), Just(Relation::M), Just(Relation::P)]
}

/// Modal formulas of depth at most `depth` over [`PROPS`], built partly with
/// the derived connectives so that sugar is exercised too.
pub fn mformula_with(depth: u32, relation: BoxedStrategy<Relation>) -> impl Strategy<Value = MFormula> {
    let leaf = prop_oneof![
        1 => Just(MFormula::Bottom),
        4 => proptest::sample::select(&PROPS[..]).prop_map(MFormula::prop),
    ];
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        let r = relation.clone();
        let r2 = relation.clone();
        prop_oneof![
            3 => (inner.clone(), inner.clone()).prop_map(|(a, b)| MFormula::implies(a, b)),
            3 => (r, inner.clone()).prop_map(|(r, a)| MFormula::boxed(r, a)),
            1 => inner.clone().prop_map(MFormula::not),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| MFormula::and(a, b)),
            1 => (inner.clone(), inner.clone()).prop_map(|(a, b)| MFormula::or(a, b)),
            1 => (r2, inner).prop_map(|(r, a)| MFormula::diamond(r, a)),
        ]
    })
}

pub fn mformula(depth: u32) -> impl Strategy<Value = MFormula> {
    mformula_with(depth, any_relation().boxed())
}

pub fn mformula_for(system: System, depth: u32) -> impl Strategy<Value = MFormula> {
    mformula_with(depth, relation_for(system).boxed())
}

pub fn label() -> impl Strategy<Value = Label> {
    proptest::sample::select(&LABELS[..]).prop_map(Label::new)
}

pub fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    prop_oneof![
        3 => (label(), mformula(depth)).prop_map(|(x, a)| Formula::Labelled(x, a)),
        1 => (label(), any_relation(), label()).prop_map(|(x, r, y)| Formula::Relational(x, r, y)),
    ]
}

/// A frame as explicit pair sets.
pub struct PairFrame {
    pub worlds: Vec<usize>,
    pub u: BTreeSet<(usize, usize)>,
    pub meas: BTreeSet<(usize, usize)>,
    pub system: System,
}

impl PairFrame {
    pub fn of(frame: &Frame) -> PairFrame {
        PairFrame {
            worlds: frame.worlds().collect(),
            u: frame.pairs(Relation::U).unwrap().into_iter().collect(),
            meas: frame.pairs(frame.system().measurement()).unwrap().into_iter().collect(),
            system: frame.system(),
        }
    }

    fn relation(&self, r: Relation) -> &BTreeSet<(usize, usize)> {
        if r == Relation::U {
            &self.u
        } else {
            assert_eq!(r, self.system.measurement(), "relation outside the system");
            &self.meas
        }
    }

    /// The frame conditions, written out as in their definitions.
    pub fn is_valid(&self) -> bool {
        let w = &self.worlds;
        let u = |a: usize, b: usize| self.u.contains(&(a, b));
        let m = |a: usize, b: usize| self.meas.contains(&(a, b));
        let equivalence = w.iter().all(|&a| u(a, a))
            && w.iter().all(|&a| w.iter().all(|&b| !u(a, b) || u(b, a)))
            && w.iter().all(|&a| w.iter().all(|&b| w.iter().all(|&c| !(u(a, b) && u(b, c)) || u(a, c))));
        let sub_u = self.meas.iter().all(|&(a, b)| u(a, b));
        let classical_unique = w.iter().all(|&v| w.iter().all(|&x| !(m(v, v) && m(v, x)) || v == x));
        match self.system {
            System::Msqr => {
                let serial = w.iter().all(|&v| w.iter().any(|&x| m(v, x)));
                let shift = self.meas.iter().all(|&(_, b)| m(b, b));
                equivalence && sub_u && serial && shift && classical_unique
            }
            System::Mspqr => {
                let transitive = w.iter().all(|&a| w.iter().all(|&b| w.iter().all(|&c| !(m(a, b) && m(b, c)) || m(a, c))));
                let reach = w.iter().all(|&v| w.iter().any(|&x| m(v, x) && m(x, x)));
                equivalence && sub_u && transitive && reach && classical_unique
            }
        }
    }
}

/// Truth at a world, by the recursive clauses.
pub fn naive_eval(frame: &PairFrame, val: &[BTreeSet<String>], w: usize, a: &MFormula) -> bool {
    match a {
        MFormula::Bottom => false,
        MFormula::Prop(p) => val[w].contains(p),
        MFormula::Implies(a, b) => !naive_eval(frame, val, w, a) || naive_eval(frame, val, w, b),
        MFormula::Modal(r, a) => frame
            .relation(*r)
            .iter()
            .filter(|(v, _)| *v == w)
            .all(|&(_, v)| naive_eval(frame, val, v, a)),
    }
}

pub fn valuation_of(model: &Model) -> Vec<BTreeSet<String>> {
    model
        .frame()
        .worlds()
        .map(|w| model.valuation(w).into_iter().map(str::to_string).collect())
        .collect()
}

pub fn naive_holds(s: &Structure, alpha: &Formula) -> bool {
    let frame = PairFrame::of(s.frame());
    let val = valuation_of(s.model());
    match alpha {
        Formula::Labelled(x, a) => naive_eval(&frame, &val, s.interp()[x], a),
        Formula::Relational(x, r, y) => frame.relation(*r).contains(&(s.interp()[x], s.interp()[y])),
    }
}

/// All valuations of `props` over the frame's worlds.
pub fn all_models(frame: &Frame, props: &[&str]) -> Vec<Model> {
    let n = frame.size();
    (0u64..1 << (n * props.len()))
        .map(|code| {
            let val = (0..n)
                .map(|w| {
                    props
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| code >> (i * n + w) & 1 == 1)
                        .map(|(_, p)| p.to_string())
                        .collect()
                })
                .collect();
            Model::new(frame.clone(), val).unwrap()
        })
        .collect()
}
