//! Schema checks for the primitive rules.
//!
//! Each check sees one rule application with its premise formulas already
//! resolved. Discharge bookkeeping (which hypotheses are open, whether a
//! discharged id is a hypothesis) happens in the checker; here we only match
//! formulas against the schema and enforce the eigenvariable conditions.

use super::{ReasonCode, RuleName};
use crate::syntax::{substitute, Formula, Label, MFormula, Relation};

pub(crate) struct Instance<'a> {
    pub rule: RuleName,
    pub conclusion: &'a Formula,
    pub premises: Vec<&'a Formula>,
    pub discharged: Vec<&'a Formula>,
    pub fresh: Option<&'a Label>,
    /// Open assumptions of the premises other than the discharged ones.
    pub remaining: Vec<&'a Formula>,
}

#[derive(Debug)]
pub(crate) struct Failure {
    pub code: ReasonCode,
    pub message: String,
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure {
        code: ReasonCode::SchemaMismatch,
        message: message.into(),
    }
}

fn freshness(message: impl Into<String>) -> Failure {
    Failure {
        code: ReasonCode::FreshnessViolation,
        message: message.into(),
    }
}

type Check = Result<(), Failure>;

fn labelled<'a>(alpha: &'a Formula, what: &str) -> Result<(&'a Label, &'a MFormula), Failure> {
    match alpha {
        Formula::Labelled(x, a) => Ok((x, a)),
        _ => Err(mismatch(format!("{what} must be a labelled formula, found `{alpha}`"))),
    }
}

fn relational<'a>(
    alpha: &'a Formula,
    relation: Relation,
    what: &str,
) -> Result<(&'a Label, &'a Label), Failure> {
    match alpha {
        Formula::Relational(x, r, y) if *r == relation => Ok((x, y)),
        _ => Err(mismatch(format!(
            "{what} must have the form `_ {relation} _`, found `{alpha}`"
        ))),
    }
}

fn expect_eq(found: &Formula, expected: &Formula, what: &str) -> Check {
    if found == expected {
        Ok(())
    } else {
        Err(mismatch(format!("{what} should be `{expected}`, found `{found}`")))
    }
}

pub(crate) fn check_instance(inst: &Instance<'_>) -> Check {
    use RuleName::*;
    let p = &inst.premises;
    let c = inst.conclusion;
    match inst.rule {
        ImpI => {
            let (x, body) = labelled(c, "conclusion")?;
            let MFormula::Implies(a, b) = body else {
                return Err(mismatch(format!("conclusion `{c}` is not an implication")));
            };
            expect_eq(p[0], &Formula::Labelled(x.clone(), (**b).clone()), "premise")?;
            let hyp = Formula::Labelled(x.clone(), (**a).clone());
            for d in &inst.discharged {
                expect_eq(d, &hyp, "discharged hypothesis")?;
            }
            Ok(())
        }
        ImpE => {
            let (x, b) = labelled(c, "conclusion")?;
            let (x1, major) = labelled(p[0], "major premise")?;
            match major {
                MFormula::Implies(a, b1) if x1 == x && **b1 == *b => {
                    expect_eq(p[1], &Formula::Labelled(x.clone(), (**a).clone()), "minor premise")
                }
                _ => Err(mismatch(format!(
                    "major premise should be `{x} : _ -> {b}`, found `{}`",
                    p[0]
                ))),
            }
        }
        Raa => {
            let (x, a) = labelled(c, "conclusion")?;
            let (_, bot) = labelled(p[0], "premise")?;
            if *bot != MFormula::Bottom {
                return Err(mismatch(format!("premise `{}` is not a contradiction", p[0])));
            }
            let hyp = Formula::Labelled(x.clone(), MFormula::not(a.clone()));
            for d in &inst.discharged {
                expect_eq(d, &hyp, "discharged hypothesis")?;
            }
            Ok(())
        }
        BotE => {
            let (_, bot) = labelled(p[0], "premise")?;
            if *bot == MFormula::Bottom {
                Ok(())
            } else {
                Err(mismatch(format!("premise `{}` is not a contradiction", p[0])))
            }
        }
        BoxI => {
            let (x, body) = labelled(c, "conclusion")?;
            let MFormula::Modal(relation, a) = body else {
                return Err(mismatch(format!("conclusion `{c}` is not a box formula")));
            };
            let y = match (inst.fresh, p[0]) {
                (Some(y), _) => y,
                (None, Formula::Labelled(y, _)) => y,
                (None, other) => {
                    return Err(mismatch(format!("premise `{other}` is not labelled")))
                }
            };
            if y == x {
                return Err(freshness(format!("eigenvariable `{y}` coincides with `{x}`")));
            }
            if let Some(bad) = inst.remaining.iter().find(|f| f.mentions(y)) {
                return Err(freshness(format!(
                    "eigenvariable `{y}` occurs in open assumption `{bad}`"
                )));
            }
            expect_eq(p[0], &Formula::Labelled(y.clone(), (**a).clone()), "premise")?;
            let hyp = Formula::Relational(x.clone(), *relation, y.clone());
            for d in &inst.discharged {
                expect_eq(d, &hyp, "discharged hypothesis")?;
            }
            Ok(())
        }
        BoxE => {
            let (x, body) = labelled(p[0], "major premise")?;
            let MFormula::Modal(relation, a) = body else {
                return Err(mismatch(format!("major premise `{}` is not a box formula", p[0])));
            };
            let (x1, y) = relational(p[1], *relation, "minor premise")?;
            if x1 != x {
                return Err(mismatch(format!(
                    "minor premise `{}` does not start at `{x}`",
                    p[1]
                )));
            }
            expect_eq(c, &Formula::Labelled(y.clone(), (**a).clone()), "conclusion")
        }
        Urefl => {
            let (x, y) = relational(c, Relation::U, "conclusion")?;
            if x == y {
                Ok(())
            } else {
                Err(mismatch(format!("conclusion `{c}` is not reflexive")))
            }
        }
        Usymm => {
            let (x, y) = relational(p[0], Relation::U, "premise")?;
            expect_eq(c, &Formula::Relational(y.clone(), Relation::U, x.clone()), "conclusion")
        }
        Utrans => transitivity(p, c, Relation::U),
        Ptrans => transitivity(p, c, Relation::P),
        UIfromM => into_unitary(p, c, Relation::M),
        PUI => into_unitary(p, c, Relation::P),
        Msrefl => {
            let (_, y) = relational(p[0], Relation::M, "premise")?;
            expect_eq(c, &Formula::Relational(y.clone(), Relation::M, y.clone()), "conclusion")
        }
        Msub1 => classical_substitution(p, c, Relation::M, true),
        Msub2 => classical_substitution(p, c, Relation::M, false),
        Psub1 => classical_substitution(p, c, Relation::P, true),
        Psub2 => classical_substitution(p, c, Relation::P, false),
        Mser => {
            expect_eq(c, p[0], "conclusion")?;
            let (x, y) = discharged_pair(inst, Relation::M)?;
            eigenvariable_condition(inst, x, y)?;
            if let (Some(x), Some(y)) = (x, y) {
                let hyp = Formula::Relational(x.clone(), Relation::M, y.clone());
                for d in &inst.discharged {
                    expect_eq(d, &hyp, "discharged hypothesis")?;
                }
            }
            Ok(())
        }
        Class => {
            expect_eq(c, p[0], "conclusion")?;
            let (x, y) = discharged_pair(inst, Relation::P)?;
            eigenvariable_condition(inst, x, y)?;
            if let Some(y) = y {
                for d in &inst.discharged {
                    let ok = match d {
                        Formula::Relational(a, Relation::P, b) => {
                            b == y && (a == y || Some(a) == x)
                        }
                        _ => false,
                    };
                    if !ok {
                        return Err(mismatch(format!(
                            "discharged hypothesis `{d}` is neither `_ P {y}` nor `{y} P {y}`"
                        )));
                    }
                }
            }
            Ok(())
        }
        NegI | NegE | IffI | IffE1 | IffE2 | Mtrans | AndI | AndE1 | AndE2 => Err(Failure {
            code: ReasonCode::UnknownDerivedRule,
            message: format!("derived rule {} reached the primitive checker", inst.rule),
        }),
    }
}

fn transitivity(p: &[&Formula], c: &Formula, relation: Relation) -> Check {
    let (x, y) = relational(p[0], relation, "first premise")?;
    let (y1, z) = relational(p[1], relation, "second premise")?;
    if y != y1 {
        return Err(mismatch(format!("premises `{}` and `{}` do not chain", p[0], p[1])));
    }
    expect_eq(c, &Formula::Relational(x.clone(), relation, z.clone()), "conclusion")
}

fn into_unitary(p: &[&Formula], c: &Formula, from: Relation) -> Check {
    let (x, y) = relational(p[0], from, "premise")?;
    expect_eq(c, &Formula::Relational(x.clone(), Relation::U, y.clone()), "conclusion")
}

/// `alpha, x R x, x R y` gives `alpha(y/x)` (`forward`) or `alpha(x/y)`.
fn classical_substitution(p: &[&Formula], c: &Formula, relation: Relation, forward: bool) -> Check {
    let (x, x1) = relational(p[1], relation, "second premise")?;
    if x != x1 {
        return Err(mismatch(format!("second premise `{}` is not a loop", p[1])));
    }
    let (x2, y) = relational(p[2], relation, "third premise")?;
    if x2 != x {
        return Err(mismatch(format!(
            "third premise `{}` does not start at `{x}`",
            p[2]
        )));
    }
    let expected = if forward {
        substitute(p[0], x, y)
    } else {
        substitute(p[0], y, x)
    };
    expect_eq(c, &expected, "conclusion")
}

/// Principal label `x` and eigenvariable `y` of a Mser/Class application.
/// `y` is the declared fresh label when given, otherwise read off the
/// discharged hypotheses; both may be absent for vacuous discharges.
fn discharged_pair<'a>(
    inst: &Instance<'a>,
    relation: Relation,
) -> Result<(Option<&'a Label>, Option<&'a Label>), Failure> {
    let mut x = None;
    let mut y = inst.fresh;
    for d in &inst.discharged {
        let (a, b) = relational(d, relation, "discharged hypothesis")?;
        if a != b && x.is_none() {
            x = Some(a);
        }
        if y.is_none() {
            y = Some(b);
        }
    }
    if x.is_none() && inst.rule == RuleName::Mser {
        x = inst.discharged.first().map(|d| d.labels()[0]);
    }
    Ok((x, y))
}

fn eigenvariable_condition(inst: &Instance<'_>, x: Option<&Label>, y: Option<&Label>) -> Check {
    let Some(y) = y else { return Ok(()) };
    if x == Some(y) {
        return Err(freshness(format!("eigenvariable `{y}` coincides with the principal label")));
    }
    if inst.conclusion.mentions(y) {
        return Err(freshness(format!(
            "eigenvariable `{y}` occurs in the conclusion `{}`",
            inst.conclusion
        )));
    }
    if let Some(bad) = inst.remaining.iter().find(|f| f.mentions(y)) {
        return Err(freshness(format!(
            "eigenvariable `{y}` occurs in open assumption `{bad}`"
        )));
    }
    Ok(())
}
