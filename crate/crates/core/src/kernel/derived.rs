//! Expansion of derived rules into primitive steps.
//!
//! The expansions are ordinary proof fragments: they are checked by the same
//! primitive checker as hand-written steps, so a derived rule adds nothing to
//! the trusted base. The last step of every expansion reuses the id of the
//! derived step; helper steps get ids from the caller's allocator.

use super::{ProofStep, ReasonCode, RuleApplication, RuleName, StepId};
use crate::syntax::{Formula, Label, MFormula, Relation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ExpandError {
    pub code: ReasonCode,
    pub message: String,
}

fn err(code: ReasonCode, message: impl Into<String>) -> ExpandError {
    ExpandError {
        code,
        message: message.into(),
    }
}

fn labelled<'a>(alpha: &'a Formula, what: &str) -> Result<(&'a Label, &'a MFormula), ExpandError> {
    match alpha {
        Formula::Labelled(x, a) => Ok((x, a)),
        _ => Err(err(
            ReasonCode::SchemaMismatch,
            format!("{what} `{alpha}` is not a labelled formula"),
        )),
    }
}

fn conjunction<'a>(
    alpha: &'a Formula,
    what: &str,
) -> Result<(&'a Label, &'a MFormula, &'a MFormula), ExpandError> {
    let (x, body) = labelled(alpha, what)?;
    let (c, d) = body.as_conjunction().ok_or_else(|| {
        err(
            ReasonCode::SchemaMismatch,
            format!("{what} `{alpha}` is not a conjunction"),
        )
    })?;
    Ok((x, c, d))
}

/// Expands one derived step. `premise` resolves the conclusions of earlier
/// steps and `fresh_id` hands out unused step ids.
pub fn expand_derived<'a>(
    step: &ProofStep,
    premise: impl Fn(StepId) -> Option<&'a Formula>,
    mut fresh_id: impl FnMut() -> StepId,
) -> Result<Vec<ProofStep>, ExpandError> {
    let app = step.application().ok_or_else(|| {
        err(ReasonCode::UnknownDerivedRule, "hypotheses are not derived rules")
    })?;
    if !app.rule.is_derived() {
        return Err(err(
            ReasonCode::UnknownDerivedRule,
            format!("{} is a primitive rule", app.rule),
        ));
    }
    if app.premises.len() != app.rule.arity() {
        return Err(err(
            ReasonCode::WrongArity,
            format!(
                "{} takes {} premise(s), got {}",
                app.rule,
                app.rule.arity(),
                app.premises.len()
            ),
        ));
    }
    if !app.discharged.is_empty() && !app.rule.discharges() {
        return Err(err(
            ReasonCode::IllegalDischarge,
            format!("{} does not discharge hypotheses", app.rule),
        ));
    }
    if app.fresh.is_some() {
        return Err(err(
            ReasonCode::SchemaMismatch,
            format!("{} has no eigenvariable", app.rule),
        ));
    }
    let premises: Vec<&Formula> = app
        .premises
        .iter()
        .map(|&id| {
            premise(id).ok_or_else(|| {
                err(ReasonCode::UnknownPremise, format!("step {id} is not available"))
            })
        })
        .collect::<Result<_, _>>()?;

    let id = step.id;
    let conclusion = step.conclusion.clone();
    let rule = |r: RuleName, ps: &[StepId]| RuleApplication::new(r, ps.to_vec());

    let steps = match app.rule {
        RuleName::NegI => {
            // x:A ... y:bot  ==>  x:bot by BotE, then x:A -> bot by ImpI
            let (x, _) = labelled(&conclusion, "conclusion")?;
            let bot = fresh_id();
            vec![
                ProofStep::rule(
                    bot,
                    Formula::Labelled(x.clone(), MFormula::Bottom),
                    rule(RuleName::BotE, &app.premises),
                ),
                ProofStep::rule(
                    id,
                    conclusion,
                    rule(RuleName::ImpI, &[bot]).discharging(app.discharged.clone()),
                ),
            ]
        }
        RuleName::NegE => vec![ProofStep::rule(
            id,
            conclusion,
            rule(RuleName::ImpE, &app.premises),
        )],
        RuleName::AndI | RuleName::IffI => {
            let (x, c, d) = conjunction(&conclusion, "conclusion")?;
            let x = x.clone();
            let at = |a: MFormula| Formula::Labelled(x.clone(), a);
            let (h, s1, s2) = (fresh_id(), fresh_id(), fresh_id());
            vec![
                ProofStep::hypothesis(
                    h,
                    at(MFormula::implies(c.clone(), MFormula::not(d.clone()))),
                ),
                ProofStep::rule(
                    s1,
                    at(MFormula::not(d.clone())),
                    rule(RuleName::ImpE, &[h, app.premises[0]]),
                ),
                ProofStep::rule(
                    s2,
                    at(MFormula::Bottom),
                    rule(RuleName::ImpE, &[s1, app.premises[1]]),
                ),
                ProofStep::rule(
                    id,
                    conclusion.clone(),
                    rule(RuleName::ImpI, &[s2]).discharging([h]),
                ),
            ]
        }
        RuleName::AndE1 | RuleName::IffE1 => {
            let (x, c, d) = conjunction(premises[0], "premise")?;
            let at = |a: MFormula| Formula::Labelled(x.clone(), a);
            let (h1, h2, s1, s2, s3, s4) = (
                fresh_id(),
                fresh_id(),
                fresh_id(),
                fresh_id(),
                fresh_id(),
                fresh_id(),
            );
            vec![
                ProofStep::hypothesis(h1, at(MFormula::not(c.clone()))),
                ProofStep::hypothesis(h2, at(c.clone())),
                ProofStep::rule(s1, at(MFormula::Bottom), rule(RuleName::ImpE, &[h1, h2])),
                ProofStep::rule(s2, at(MFormula::not(d.clone())), rule(RuleName::BotE, &[s1])),
                ProofStep::rule(
                    s3,
                    at(MFormula::implies(c.clone(), MFormula::not(d.clone()))),
                    rule(RuleName::ImpI, &[s2]).discharging([h2]),
                ),
                ProofStep::rule(
                    s4,
                    at(MFormula::Bottom),
                    rule(RuleName::ImpE, &[app.premises[0], s3]),
                ),
                ProofStep::rule(id, conclusion, rule(RuleName::Raa, &[s4]).discharging([h1])),
            ]
        }
        RuleName::AndE2 | RuleName::IffE2 => {
            let (x, c, d) = conjunction(premises[0], "premise")?;
            let at = |a: MFormula| Formula::Labelled(x.clone(), a);
            let (h1, s3, s4) = (fresh_id(), fresh_id(), fresh_id());
            vec![
                ProofStep::hypothesis(h1, at(MFormula::not(d.clone()))),
                ProofStep::rule(
                    s3,
                    at(MFormula::implies(c.clone(), MFormula::not(d.clone()))),
                    rule(RuleName::ImpI, &[h1]),
                ),
                ProofStep::rule(
                    s4,
                    at(MFormula::Bottom),
                    rule(RuleName::ImpE, &[app.premises[0], s3]),
                ),
                ProofStep::rule(id, conclusion, rule(RuleName::Raa, &[s4]).discharging([h1])),
            ]
        }
        RuleName::Mtrans => {
            // x M y, y M z: y M y by Msrefl, then Msub1 rewrites y to z in x M y.
            let Formula::Relational(x, Relation::M, y) = premises[0] else {
                return Err(err(
                    ReasonCode::SchemaMismatch,
                    format!("premise `{}` is not an M-formula", premises[0]),
                ));
            };
            if x == y {
                // x M x, x M z: the conclusion is the second premise. Rewriting
                // x to x with the loop keeps it unchanged; rewriting through
                // Msrefl would also hit the x on the left.
                return Ok(vec![ProofStep::rule(
                    id,
                    conclusion,
                    rule(
                        RuleName::Msub1,
                        &[app.premises[1], app.premises[0], app.premises[0]],
                    ),
                )]);
            }
            let refl = fresh_id();
            vec![
                ProofStep::rule(
                    refl,
                    Formula::Relational(y.clone(), Relation::M, y.clone()),
                    rule(RuleName::Msrefl, &[app.premises[0]]),
                ),
                ProofStep::rule(
                    id,
                    conclusion,
                    rule(
                        RuleName::Msub1,
                        &[app.premises[0], refl, app.premises[1]],
                    ),
                ),
            ]
        }
        _ => unreachable!("is_derived covers exactly the arms above"),
    };
    Ok(steps)
}
