use std::fmt;

use super::{Formula, MFormula};

impl fmt::Display for MFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MFormula::Bottom => f.write_str("bot"),
            MFormula::Prop(name) => f.write_str(name),
            MFormula::Implies(a, b) => {
                if matches!(**a, MFormula::Implies(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            MFormula::Modal(r, a) => {
                f.write_str(r.box_token())?;
                match **a {
                    MFormula::Modal(..) => write!(f, "{a}"),
                    MFormula::Implies(..) => write!(f, "({a})"),
                    MFormula::Bottom | MFormula::Prop(_) => write!(f, " {a}"),
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Labelled(x, a) => write!(f, "{x} : {a}"),
            Formula::Relational(x, r, y) => write!(f, "{x} {r} {y}"),
        }
    }
}
