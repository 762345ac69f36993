//! Reference implementations for the acceptance suite.
//!
//! Frames are plain boolean matrices, enumerated by brute force and checked
//! against the frame conditions as written. Truth follows the recursive
//! clauses directly. Nothing here calls into the evaluator or enumerator
//! under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mqr_core::semantics::Frame;
use mqr_core::{Formula, Label, MFormula, Relation, System};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A frame condition that may be switched off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dropped {
    Nothing,
    Serial,
    ShiftReflexive,
    ClassicalReachable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFrame {
    pub system: System,
    pub n: usize,
    pub u: Vec<Vec<bool>>,
    pub meas: Vec<Vec<bool>>,
}

impl OracleFrame {
    pub fn of(frame: &Frame) -> OracleFrame {
        let n = frame.size();
        let mut u = vec![vec![false; n]; n];
        let mut meas = vec![vec![false; n]; n];
        for (a, b) in frame.pairs(Relation::U).unwrap() {
            u[a][b] = true;
        }
        for (a, b) in frame.pairs(frame.system().measurement()).unwrap() {
            meas[a][b] = true;
        }
        OracleFrame {
            system: frame.system(),
            n,
            u,
            meas,
        }
    }

    pub fn relation(&self, r: Relation) -> &Vec<Vec<bool>> {
        if r == Relation::U {
            &self.u
        } else {
            assert_eq!(r, self.system.measurement());
            &self.meas
        }
    }

    pub fn is_valid(&self) -> bool {
        self.is_valid_without(Dropped::Nothing)
    }

    pub fn is_valid_without(&self, dropped: Dropped) -> bool {
        let w = 0..self.n;
        let u = &self.u;
        let m = &self.meas;
        let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
            w.clone().all(|a| w.clone().all(|b| w.clone().all(|c| f(a, b, c))))
        };
        let equivalence = w.clone().all(|a| u[a][a])
            && all3(&|a, b, _| !u[a][b] || u[b][a])
            && all3(&|a, b, c| !(u[a][b] && u[b][c]) || u[a][c]);
        let sub_u = all3(&|a, b, _| !m[a][b] || u[a][b]);
        let classical_unique = all3(&|v, x, _| !(m[v][v] && m[v][x]) || v == x);
        let base = equivalence && sub_u && classical_unique;
        match self.system {
            System::Msqr => {
                let serial = dropped == Dropped::Serial || w.clone().all(|v| w.clone().any(|x| m[v][x]));
                let shift = dropped == Dropped::ShiftReflexive || all3(&|a, b, _| !m[a][b] || m[b][b]);
                base && serial && shift
            }
            System::Mspqr => {
                let transitive = all3(&|a, b, c| !(m[a][b] && m[b][c]) || m[a][c]);
                let reach = dropped == Dropped::ClassicalReachable
                    || w.clone().all(|v| w.clone().any(|x| m[v][x] && m[x][x]));
                base && transitive && reach
            }
        }
    }

    pub fn to_frame(&self) -> Frame {
        let pairs = |r: &Vec<Vec<bool>>| -> Vec<(usize, usize)> {
            (0..self.n)
                .flat_map(|a| (0..self.n).map(move |b| (a, b)))
                .filter(|&(a, b)| r[a][b])
                .collect()
        };
        Frame::from_pairs(self.system, self.n, &pairs(&self.u), &pairs(&self.meas)).unwrap()
    }
}

fn matrix(n: usize, code: u32) -> Vec<Vec<bool>> {
    (0..n).map(|a| (0..n).map(|b| code >> (a * n + b) & 1 == 1).collect()).collect()
}

/// Every frame on `n` worlds meeting the conditions, by trying all pairs of
/// relations.
pub fn frames_of_size(system: System, n: usize, dropped: Dropped) -> Vec<OracleFrame> {
    let cells = (n * n) as u32;
    let mut out = Vec::new();
    for uc in 0..1u32 << cells {
        let u = matrix(n, uc);
        let probe = OracleFrame {
            system,
            n,
            u: u.clone(),
            meas: vec![vec![false; n]; n],
        };
        // cheap pre-filter: U must be an equivalence for any meas
        let w = 0..n;
        let eq = w.clone().all(|a| u[a][a])
            && w.clone().all(|a| w.clone().all(|b| !u[a][b] || u[b][a]))
            && w.clone().all(|a| w.clone().all(|b| w.clone().all(|c| !(u[a][b] && u[b][c]) || u[a][c])));
        if !eq {
            continue;
        }
        for mc in 0..1u32 << cells {
            let f = OracleFrame {
                meas: matrix(n, mc),
                ..probe.clone()
            };
            if f.is_valid_without(dropped) {
                out.push(f);
            }
        }
    }
    out
}

pub fn frames_up_to(system: System, max: usize, dropped: Dropped) -> Vec<OracleFrame> {
    (1..=max).flat_map(|n| frames_of_size(system, n, dropped)).collect()
}

/// Valuation as, per world, the set of true propositions.
pub type Valuation = Vec<BTreeSet<String>>;

pub fn valuations(n: usize, props: &[String]) -> Vec<Valuation> {
    (0u64..1 << (n * props.len()))
        .map(|code| {
            (0..n)
                .map(|w| {
                    props
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| code >> (i * n + w) & 1 == 1)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn eval(frame: &OracleFrame, val: &Valuation, w: usize, a: &MFormula) -> bool {
    match a {
        MFormula::Bottom => false,
        MFormula::Prop(p) => val[w].contains(p),
        MFormula::Implies(a, b) => !eval(frame, val, w, a) || eval(frame, val, w, b),
        MFormula::Modal(r, a) => {
            let rel = frame.relation(*r);
            (0..frame.n).filter(|&v| rel[w][v]).all(|v| eval(frame, val, v, a))
        }
    }
}

pub fn holds(frame: &OracleFrame, val: &Valuation, interp: &BTreeMap<Label, usize>, alpha: &Formula) -> bool {
    match alpha {
        Formula::Labelled(x, a) => eval(frame, val, interp[x], a),
        Formula::Relational(x, r, y) => frame.relation(*r)[interp[x]][interp[y]],
    }
}

/// Every map from `labels` into the worlds of an `n`-world frame.
pub fn interpretations(n: usize, labels: &[Label]) -> Vec<BTreeMap<Label, usize>> {
    let total = n.pow(labels.len() as u32);
    (0..total)
        .map(|mut code| {
            labels
                .iter()
                .map(|l| {
                    let w = code % n;
                    code /= n;
                    (l.clone(), w)
                })
                .collect()
        })
        .collect()
}

/// Random formulas for round-trip tests, using every connective and the
/// sugar forms.
pub struct FormulaGen {
    rng: ChaCha8Rng,
}

const GEN_PROPS: [&str; 4] = ["r0", "r1", "r2", "q_1"];
const GEN_LABELS: [&str; 4] = ["x", "y", "z", "w1"];

impl FormulaGen {
    pub fn new(seed: u64) -> FormulaGen {
        FormulaGen {
            rng: rand::SeedableRng::seed_from_u64(seed),
        }
    }

    fn relation(&mut self) -> Relation {
        [Relation::U, Relation::M, Relation::P][self.rng.gen_range(0..3)]
    }

    fn label(&mut self) -> Label {
        Label::new(GEN_LABELS[self.rng.gen_range(0..GEN_LABELS.len())])
    }

    pub fn mformula(&mut self, depth: u32) -> MFormula {
        if depth == 0 || self.rng.gen_ratio(1, 4) {
            return if self.rng.gen_ratio(1, 6) {
                MFormula::Bottom
            } else {
                MFormula::prop(GEN_PROPS[self.rng.gen_range(0..GEN_PROPS.len())])
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..8) {
            0 | 1 => MFormula::implies(self.mformula(d), self.mformula(d)),
            2 | 3 => {
                let r = self.relation();
                MFormula::boxed(r, self.mformula(d))
            }
            4 => MFormula::not(self.mformula(d)),
            5 => MFormula::and(self.mformula(d), self.mformula(d)),
            6 => MFormula::or(self.mformula(d), self.mformula(d)),
            _ => {
                let r = self.relation();
                MFormula::diamond(r, self.mformula(d))
            }
        }
    }

    pub fn formula(&mut self, depth: u32) -> Formula {
        if self.rng.gen_ratio(1, 5) {
            let (x, r, y) = (self.label(), self.relation(), self.label());
            Formula::Relational(x, r, y)
        } else {
            let x = self.label();
            Formula::Labelled(x, self.mformula(depth))
        }
    }
}
