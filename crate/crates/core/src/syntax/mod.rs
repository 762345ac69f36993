//! The object language: labels, relation symbols, modal formulas and
//! labelled/relational formulas, together with the ASCII grammar.
//!
//! Only `bot`, propositions, `->` and the three boxes are primitive. Every
//! other connective accepted by the parser is expanded on the way in, so the
//! kernel and the evaluator never see sugar.

mod lexer;
mod parser;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{
    parse_formula, parse_formula_for, parse_mformula, parse_mformula_for, ParseError,
    ParseErrorKind,
};
pub(crate) use parser::{parse_formula_at, Position};

/// Which of the two calculi a formula, rule or frame belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    /// Unitary transformations and total measurements (`U`, `M`).
    Msqr,
    /// Unitary transformations and generic measurements (`U`, `P`).
    Mspqr,
}

impl System {
    pub fn allows(self, relation: Relation) -> bool {
        matches!(
            (self, relation),
            (_, Relation::U) | (System::Msqr, Relation::M) | (System::Mspqr, Relation::P)
        )
    }

    /// The measurement relation of this system.
    pub fn measurement(self) -> Relation {
        match self {
            System::Msqr => Relation::M,
            System::Mspqr => Relation::P,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            System::Msqr => "MSQR",
            System::Mspqr => "MSPQR",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "msqr" => Ok(System::Msqr),
            "mspqr" => Ok(System::Mspqr),
            _ => Err(format!("unknown system `{s}` (expected MSQR or MSPQR)")),
        }
    }
}

/// Accessibility relation symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// Unitary transformation, boxed by `[]`.
    U,
    /// Total measurement, boxed by `[M]`.
    M,
    /// Generic measurement, boxed by `[P]`.
    P,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::U => "U",
            Relation::M => "M",
            Relation::P => "P",
        }
    }

    /// ASCII box operator.
    pub fn box_token(self) -> &'static str {
        match self {
            Relation::U => "[]",
            Relation::M => "[M]",
            Relation::P => "[P]",
        }
    }

    pub(crate) fn from_symbol(s: &str) -> Option<Relation> {
        match s {
            "U" => Some(Relation::U),
            "M" => Some(Relation::M),
            "P" => Some(Relation::P),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A world label. Names are case-sensitive identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid label `{0}`: expected a letter followed by letters, digits or underscores, other than `bot`")]
pub struct InvalidLabel(pub String);

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Label {
    /// Panics if `name` is not an identifier; see [`Label::try_new`].
    pub fn new(name: &str) -> Label {
        Label::try_new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(name: &str) -> Result<Label, InvalidLabel> {
        if is_identifier(name) && name != "bot" {
            Ok(Label(name.to_owned()))
        } else {
            Err(InvalidLabel(name.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Label {
    type Err = InvalidLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::try_new(s)
    }
}

/// Modal formulas in primitive form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MFormula {
    Bottom,
    Prop(String),
    Implies(Box<MFormula>, Box<MFormula>),
    /// `[]A`, `[M]A` or `[P]A` depending on the relation.
    Modal(Relation, Box<MFormula>),
}

impl MFormula {
    pub fn prop(name: &str) -> MFormula {
        MFormula::Prop(name.to_owned())
    }

    pub fn implies(a: MFormula, b: MFormula) -> MFormula {
        MFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn boxed(relation: Relation, a: MFormula) -> MFormula {
        MFormula::Modal(relation, Box::new(a))
    }

    /// `~A` is `A -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: MFormula) -> MFormula {
        MFormula::implies(a, MFormula::Bottom)
    }

    /// `A & B` is `~(A -> ~B)`.
    pub fn and(a: MFormula, b: MFormula) -> MFormula {
        MFormula::not(MFormula::implies(a, MFormula::not(b)))
    }

    /// `A | B` is `~A -> B`.
    pub fn or(a: MFormula, b: MFormula) -> MFormula {
        MFormula::implies(MFormula::not(a), b)
    }

    /// `A <-> B` is `(A -> B) & (B -> A)`.
    pub fn iff(a: MFormula, b: MFormula) -> MFormula {
        MFormula::and(
            MFormula::implies(a.clone(), b.clone()),
            MFormula::implies(b, a),
        )
    }

    /// The dual of the box over `relation`: `~[R]~A`.
    pub fn diamond(relation: Relation, a: MFormula) -> MFormula {
        MFormula::not(MFormula::boxed(relation, MFormula::not(a)))
    }

    /// If this is `~A`, returns `A`.
    pub fn as_negation(&self) -> Option<&MFormula> {
        match self {
            MFormula::Implies(a, b) if **b == MFormula::Bottom => Some(a),
            _ => None,
        }
    }

    /// If this is `A & B` (in its desugared shape), returns `(A, B)`.
    pub fn as_conjunction(&self) -> Option<(&MFormula, &MFormula)> {
        match self.as_negation()? {
            MFormula::Implies(a, not_b) => Some((a, not_b.as_negation()?)),
            _ => None,
        }
    }

    /// Every relation used by a box inside the formula.
    pub fn relations(&self) -> BTreeSet<Relation> {
        let mut out = BTreeSet::new();
        self.collect_relations(&mut out);
        out
    }

    fn collect_relations(&self, out: &mut BTreeSet<Relation>) {
        match self {
            MFormula::Bottom | MFormula::Prop(_) => {}
            MFormula::Implies(a, b) => {
                a.collect_relations(out);
                b.collect_relations(out);
            }
            MFormula::Modal(r, a) => {
                out.insert(*r);
                a.collect_relations(out);
            }
        }
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_propositions(&mut out);
        out
    }

    pub(crate) fn collect_propositions(&self, out: &mut BTreeSet<String>) {
        match self {
            MFormula::Bottom => {}
            MFormula::Prop(p) => {
                out.insert(p.clone());
            }
            MFormula::Implies(a, b) => {
                a.collect_propositions(out);
                b.collect_propositions(out);
            }
            MFormula::Modal(_, a) => a.collect_propositions(out),
        }
    }

    pub fn is_legal_in(&self, system: System) -> bool {
        self.relations().into_iter().all(|r| system.allows(r))
    }

    pub fn depth(&self) -> usize {
        match self {
            MFormula::Bottom | MFormula::Prop(_) => 0,
            MFormula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            MFormula::Modal(_, a) => 1 + a.depth(),
        }
    }
}

/// A labelled formula `x : A` or a relational formula `x R y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Labelled(Label, MFormula),
    Relational(Label, Relation, Label),
}

impl Formula {
    pub fn labelled(label: &str, body: MFormula) -> Formula {
        Formula::Labelled(Label::new(label), body)
    }

    pub fn relational(left: &str, relation: Relation, right: &str) -> Formula {
        Formula::Relational(Label::new(left), relation, Label::new(right))
    }

    /// Labels occurring in the formula, in order of first occurrence.
    pub fn labels(&self) -> Vec<&Label> {
        match self {
            Formula::Labelled(x, _) => vec![x],
            Formula::Relational(x, _, y) if x == y => vec![x],
            Formula::Relational(x, _, y) => vec![x, y],
        }
    }

    pub fn mentions(&self, label: &Label) -> bool {
        self.labels().contains(&label)
    }

    pub fn relations(&self) -> BTreeSet<Relation> {
        match self {
            Formula::Labelled(_, a) => a.relations(),
            Formula::Relational(_, r, _) => BTreeSet::from([*r]),
        }
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        match self {
            Formula::Labelled(_, a) => a.propositions(),
            Formula::Relational(..) => BTreeSet::new(),
        }
    }

    pub fn is_legal_in(&self, system: System) -> bool {
        self.relations().into_iter().all(|r| system.allows(r))
    }

    /// `self` with every occurrence of `from` replaced by `to`.
    pub fn substitute(&self, from: &Label, to: &Label) -> Formula {
        substitute(self, from, to)
    }
}

/// Replaces every occurrence of the label `from` by `to`. Bodies of labelled
/// formulas mention no labels and are left untouched.
pub fn substitute(alpha: &Formula, from: &Label, to: &Label) -> Formula {
    let swap = |l: &Label| if l == from { to.clone() } else { l.clone() };
    match alpha {
        Formula::Labelled(x, body) => Formula::Labelled(swap(x), body.clone()),
        Formula::Relational(x, r, y) => Formula::Relational(swap(x), *r, swap(y)),
    }
}

/// Canonical ASCII rendering; `parse_formula(&print_formula(a)) == Ok(a)`.
pub fn print_formula(alpha: &Formula) -> String {
    alpha.to_string()
}
