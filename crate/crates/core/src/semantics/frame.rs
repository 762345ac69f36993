use std::fmt;

use super::SemanticsError;
use crate::syntax::{Relation, System};

/// Largest frame a [`Frame`] can hold; relations are stored as `u64` rows.
pub const MAX_FRAME_WORLDS: usize = 64;

/// Set of worlds, one bit per world index.
pub type WorldSet = u64;

pub(crate) fn full_set(size: usize) -> WorldSet {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

pub(crate) fn members(set: WorldSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(w)
    })
}

/// Worlds `0..size` with the unitary relation and one measurement relation
/// (read as `M` under MSQR and `P` under MSPQR).
///
/// Relations are stored exactly as given: nothing is closed or completed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    system: System,
    names: Vec<String>,
    unitary: Vec<WorldSet>,
    meas: Vec<WorldSet>,
}

impl Frame {
    /// A frame with no edges, worlds named `w0`, `w1`, ...
    pub fn empty(system: System, size: usize) -> Result<Frame, SemanticsError> {
        if size == 0 || size > MAX_FRAME_WORLDS {
            return Err(SemanticsError::FrameSize(size));
        }
        Ok(Frame {
            system,
            names: (0..size).map(|i| format!("w{i}")).collect(),
            unitary: vec![0; size],
            meas: vec![0; size],
        })
    }

    pub fn from_pairs(
        system: System,
        size: usize,
        unitary: &[(usize, usize)],
        meas: &[(usize, usize)],
    ) -> Result<Frame, SemanticsError> {
        let mut frame = Frame::empty(system, size)?;
        for &(v, w) in unitary {
            frame.insert(Relation::U, v, w)?;
        }
        for &(v, w) in meas {
            frame.insert(system.measurement(), v, w)?;
        }
        Ok(frame)
    }

    /// Rows are successor sets; bits beyond `unitary.len()` must be clear.
    pub(crate) fn from_rows(system: System, unitary: Vec<WorldSet>, meas: Vec<WorldSet>) -> Frame {
        debug_assert_eq!(unitary.len(), meas.len());
        Frame {
            system,
            names: (0..unitary.len()).map(|i| format!("w{i}")).collect(),
            unitary,
            meas,
        }
    }

    /// Replaces the display names. Names must be distinct and one per world.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Frame, SemanticsError> {
        if names.len() != self.size() {
            return Err(SemanticsError::NameCount {
                expected: self.size(),
                found: names.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(SemanticsError::DuplicateWorld(n.clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub(crate) fn insert(&mut self, relation: Relation, v: usize, w: usize) -> Result<(), SemanticsError> {
        for x in [v, w] {
            if x >= self.size() {
                return Err(SemanticsError::UnknownWorld(x));
            }
        }
        let rows = self.rows_mut(relation)?;
        rows[v] |= 1 << w;
        Ok(())
    }

    fn rows_mut(&mut self, relation: Relation) -> Result<&mut Vec<WorldSet>, SemanticsError> {
        match relation {
            Relation::U => Ok(&mut self.unitary),
            r if r == self.system.measurement() => Ok(&mut self.meas),
            r => Err(SemanticsError::WrongSystem {
                relation: r,
                system: self.system,
            }),
        }
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn worlds(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn all(&self) -> WorldSet {
        full_set(self.size())
    }

    pub fn name(&self, world: usize) -> &str {
        &self.names[world]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn world(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unitary_rows(&self) -> &[WorldSet] {
        &self.unitary
    }

    pub fn meas_rows(&self) -> &[WorldSet] {
        &self.meas
    }

    /// Successor rows of `relation`, if the frame's system interprets it.
    pub fn rows(&self, relation: Relation) -> Result<&[WorldSet], SemanticsError> {
        match relation {
            Relation::U => Ok(&self.unitary),
            r if r == self.system.measurement() => Ok(&self.meas),
            r => Err(SemanticsError::WrongSystem {
                relation: r,
                system: self.system,
            }),
        }
    }

    pub fn related(&self, relation: Relation, v: usize, w: usize) -> Result<bool, SemanticsError> {
        for x in [v, w] {
            if x >= self.size() {
                return Err(SemanticsError::UnknownWorld(x));
            }
        }
        Ok(self.rows(relation)?[v] >> w & 1 == 1)
    }

    pub fn pairs(&self, relation: Relation) -> Result<Vec<(usize, usize)>, SemanticsError> {
        let rows = self.rows(relation)?;
        Ok(rows
            .iter()
            .enumerate()
            .flat_map(|(v, &row)| members(row).map(move |w| (v, w)))
            .collect())
    }
}

/// Writes the frame part of the model file format.
impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {}", self.system)?;
        writeln!(f, "worlds {}", self.names.join(" "))?;
        for (symbol, rows) in [
            (Relation::U.symbol(), &self.unitary),
            (self.system.measurement().symbol(), &self.meas),
        ] {
            for (v, &row) in rows.iter().enumerate() {
                for w in members(row) {
                    writeln!(f, "{symbol} {} {}", self.names[v], self.names[w])?;
                }
            }
        }
        Ok(())
    }
}

/// The frame conditions, one per reportable failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameProperty {
    /// `U` is reflexive, symmetric and transitive.
    NotEquivalence,
    /// The measurement relation is contained in `U`.
    MeasNotSubU,
    /// Every world has a measurement successor.
    NotSerial,
    /// Measurement outcomes are classical: `v M w` gives `w M w`.
    NotShiftReflexive,
    /// A classical world measures only to itself.
    ClassicalNotUnique,
    /// Projections compose.
    NotTransitive,
    /// Every world reaches some classical world.
    NoClassicalReachable,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 7] = [
        FrameProperty::NotEquivalence,
        FrameProperty::MeasNotSubU,
        FrameProperty::NotSerial,
        FrameProperty::NotShiftReflexive,
        FrameProperty::ClassicalNotUnique,
        FrameProperty::NotTransitive,
        FrameProperty::NoClassicalReachable,
    ];

    pub fn code(self) -> &'static str {
        match self {
            FrameProperty::NotEquivalence => "not-equivalence",
            FrameProperty::MeasNotSubU => "meas-not-sub-U",
            FrameProperty::NotSerial => "not-serial",
            FrameProperty::NotShiftReflexive => "not-shift-reflexive",
            FrameProperty::ClassicalNotUnique => "classical-not-unique",
            FrameProperty::NotTransitive => "not-transitive",
            FrameProperty::NoClassicalReachable => "no-classical-reachable",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A set of frame conditions to enforce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conditions(u8);

impl Conditions {
    /// The conditions defining valid frames of `system`.
    pub fn of(system: System) -> Conditions {
        use FrameProperty::*;
        let props: &[FrameProperty] = match system {
            System::Msqr => &[NotEquivalence, MeasNotSubU, NotSerial, NotShiftReflexive, ClassicalNotUnique],
            System::Mspqr => &[NotEquivalence, MeasNotSubU, NotTransitive, NoClassicalReachable, ClassicalNotUnique],
        };
        Conditions(props.iter().fold(0, |acc, p| acc | p.bit()))
    }

    pub fn none() -> Conditions {
        Conditions(0)
    }

    pub fn with(self, p: FrameProperty) -> Conditions {
        Conditions(self.0 | p.bit())
    }

    pub fn without(self, p: FrameProperty) -> Conditions {
        Conditions(self.0 & !p.bit())
    }

    pub fn contains(self, p: FrameProperty) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = FrameProperty> {
        FrameProperty::ALL.into_iter().filter(move |p| self.contains(*p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameViolation {
    pub property: FrameProperty,
    /// World indices that exhibit the failure.
    pub witnesses: Vec<usize>,
}

impl FrameViolation {
    /// Renders the violation with world names.
    pub fn describe(&self, frame: &Frame) -> String {
        let names: Vec<&str> = self.witnesses.iter().map(|&w| frame.name(w)).collect();
        format!("{} [{}]", self.property, names.join(", "))
    }
}

impl fmt::Display for FrameViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.witnesses.iter().map(|w| w.to_string()).collect();
        write!(f, "{} [{}]", self.property, ws.join(", "))
    }
}

/// Checks the frame conditions of the frame's own system.
pub fn validate_frame(frame: &Frame) -> Vec<FrameViolation> {
    validate_frame_with(frame, Conditions::of(frame.system()))
}

/// Checks an arbitrary selection of frame conditions. Every failing instance
/// is reported.
pub fn validate_frame_with(frame: &Frame, conditions: Conditions) -> Vec<FrameViolation> {
    let mut out = Vec::new();
    for p in conditions.iter() {
        violations_of(frame, p, &mut out);
    }
    out
}

/// Cheaper variant of `validate_frame_with(..).is_empty()`.
pub(crate) fn satisfies(frame_u: &[WorldSet], meas: &[WorldSet], conditions: Conditions) -> bool {
    use FrameProperty::*;
    let n = frame_u.len();
    let classical: WorldSet = (0..n).filter(|&v| meas[v] >> v & 1 == 1).fold(0, |a, v| a | 1 << v);
    conditions.iter().all(|p| match p {
        NotEquivalence => (0..n).all(|v| {
            frame_u[v] >> v & 1 == 1
                && members(frame_u[v]).all(|w| frame_u[w] >> v & 1 == 1 && frame_u[w] & !frame_u[v] == 0)
        }),
        MeasNotSubU => (0..n).all(|v| meas[v] & !frame_u[v] == 0),
        NotSerial => meas.iter().all(|&row| row != 0),
        NotShiftReflexive => meas.iter().all(|&row| row & !classical == 0),
        ClassicalNotUnique => members(classical).all(|v| meas[v] == 1 << v),
        NotTransitive => (0..n).all(|v| members(meas[v]).all(|w| meas[w] & !meas[v] == 0)),
        NoClassicalReachable => meas.iter().all(|&row| row & classical != 0),
    })
}

fn violations_of(frame: &Frame, p: FrameProperty, out: &mut Vec<FrameViolation>) {
    let u = &frame.unitary;
    let m = &frame.meas;
    let mut push = |witnesses: Vec<usize>| {
        out.push(FrameViolation {
            property: p,
            witnesses,
        })
    };
    let classical = |v: usize| m[v] >> v & 1 == 1;
    for v in frame.worlds() {
        match p {
            FrameProperty::NotEquivalence => {
                if u[v] >> v & 1 == 0 {
                    push(vec![v]);
                }
                for w in members(u[v]) {
                    if u[w] >> v & 1 == 0 {
                        push(vec![v, w]);
                    }
                    for z in members(u[w] & !u[v]) {
                        push(vec![v, w, z]);
                    }
                }
            }
            FrameProperty::MeasNotSubU => {
                for w in members(m[v] & !u[v]) {
                    push(vec![v, w]);
                }
            }
            FrameProperty::NotSerial => {
                if m[v] == 0 {
                    push(vec![v]);
                }
            }
            FrameProperty::NotShiftReflexive => {
                for w in members(m[v]).filter(|&w| !classical(w)) {
                    push(vec![v, w]);
                }
            }
            FrameProperty::ClassicalNotUnique => {
                if classical(v) {
                    for w in members(m[v] & !(1 << v)) {
                        push(vec![v, w]);
                    }
                }
            }
            FrameProperty::NotTransitive => {
                for w in members(m[v]) {
                    for z in members(m[w] & !m[v]) {
                        push(vec![v, w, z]);
                    }
                }
            }
            FrameProperty::NoClassicalReachable => {
                if !members(m[v]).any(classical) {
                    push(vec![v]);
                }
            }
        }
    }
}
