use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use super::derived::expand_derived;
use super::rules::{check_instance, Instance};
use super::{Justification, ProofScript, ProofStep, StepId};
use crate::syntax::{Formula, System};

/// Stable identifiers for rejection reasons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReasonCode {
    WrongArity,
    SchemaMismatch,
    IllegalDischarge,
    FreshnessViolation,
    UndischargedAtTheorem,
    WrongSystem,
    UnknownPremise,
    UnknownDerivedRule,
}

impl ReasonCode {
    pub const ALL: [ReasonCode; 8] = [
        ReasonCode::WrongArity,
        ReasonCode::SchemaMismatch,
        ReasonCode::IllegalDischarge,
        ReasonCode::FreshnessViolation,
        ReasonCode::UndischargedAtTheorem,
        ReasonCode::WrongSystem,
        ReasonCode::UnknownPremise,
        ReasonCode::UnknownDerivedRule,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::WrongArity => "wrong-arity",
            ReasonCode::SchemaMismatch => "schema-mismatch",
            ReasonCode::IllegalDischarge => "illegal-discharge",
            ReasonCode::FreshnessViolation => "freshness-violation",
            ReasonCode::UndischargedAtTheorem => "undischarged-at-theorem",
            ReasonCode::WrongSystem => "wrong-system",
            ReasonCode::UnknownPremise => "unknown-premise",
            ReasonCode::UnknownDerivedRule => "unknown-derived-rule",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ReasonCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReasonCode::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown reason code `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// `None` for problems with the script as a whole.
    pub step: Option<StepId>,
    pub code: ReasonCode,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(id) => write!(f, "step {id}: {}", self.message),
            None => write!(f, "script: {}", self.message),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// Undischarged hypotheses of the final step.
    pub open_assumptions: BTreeSet<Formula>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn first_code(&self) -> Option<ReasonCode> {
        self.diagnostics.first().map(|d| d.code)
    }

    pub fn codes(&self) -> Vec<ReasonCode> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unknown-premise: no step {0}")]
    UnknownStep(StepId),
}

/// Result of replacing derived steps with their expansions. Derived steps
/// whose expansion failed stay in place and are skipped by the checker.
struct Expansion {
    steps: Vec<ProofStep>,
    /// Helper step id to the derived step it came from.
    origin: HashMap<StepId, StepId>,
    failed: Vec<Diagnostic>,
    failed_ids: HashSet<StepId>,
}

fn expand(script: &ProofScript) -> Expansion {
    let mut next = script.max_id();
    let mut formulas: HashMap<StepId, &Formula> = HashMap::new();
    let mut out = Expansion {
        steps: Vec::with_capacity(script.steps.len()),
        origin: HashMap::new(),
        failed: Vec::new(),
        failed_ids: HashSet::new(),
    };
    for step in &script.steps {
        match step.application() {
            Some(app) if app.rule.is_derived() => {
                let result = expand_derived(step, |id| formulas.get(&id).copied(), || {
                    next += 1;
                    next
                });
                match result {
                    Ok(expanded) => {
                        for s in expanded {
                            if s.id != step.id {
                                out.origin.insert(s.id, step.id);
                            }
                            out.steps.push(s);
                        }
                    }
                    Err(e) => {
                        out.failed.push(Diagnostic {
                            step: Some(step.id),
                            code: e.code,
                            message: e.message,
                        });
                        out.failed_ids.insert(step.id);
                        out.steps.push(step.clone());
                    }
                }
            }
            _ => out.steps.push(step.clone()),
        }
        formulas.insert(step.id, &step.conclusion);
    }
    out
}

/// The script with every derived step replaced by primitive steps, or the
/// diagnostics of the derived steps that could not be expanded.
pub fn expand_script(script: &ProofScript) -> Result<ProofScript, Vec<Diagnostic>> {
    let expansion = expand(script);
    if expansion.failed.is_empty() {
        Ok(ProofScript {
            system: script.system,
            theorem: script.theorem.clone(),
            steps: expansion.steps,
        })
    } else {
        Err(expansion.failed)
    }
}

struct Pass {
    diagnostics: Vec<Diagnostic>,
    /// Open hypotheses (by step id) of every step.
    open: HashMap<StepId, BTreeSet<StepId>>,
    formulas: HashMap<StepId, Formula>,
}

fn failure(step: StepId, code: ReasonCode, message: impl Into<String>) -> (StepId, ReasonCode, String) {
    (step, code, message.into())
}

fn run(script: &ProofScript, system: System) -> Pass {
    let Expansion {
        steps,
        origin,
        failed,
        failed_ids,
    } = expand(script);

    let mut pass = Pass {
        diagnostics: Vec::new(),
        open: HashMap::new(),
        formulas: HashMap::new(),
    };
    let mut hypotheses: HashSet<StepId> = HashSet::new();
    let mut reported: HashSet<StepId> = HashSet::new();
    let mut failed = failed.into_iter().peekable();

    for step in &steps {
        let owner = origin.get(&step.id).copied().unwrap_or(step.id);
        let verdict = if failed_ids.contains(&step.id) {
            Ok(())
        } else {
            check_step(step, system, &pass, &hypotheses)
        };

        if failed.peek().is_some_and(|d| d.step == Some(step.id)) {
            pass.diagnostics.extend(failed.next());
            reported.insert(step.id);
        }
        if let Err((_, code, message)) = verdict {
            if reported.insert(owner) {
                pass.diagnostics.push(Diagnostic {
                    step: Some(owner),
                    code,
                    message,
                });
            }
        }

        let open = match &step.justification {
            Justification::Hypothesis => {
                hypotheses.insert(step.id);
                BTreeSet::from([step.id])
            }
            Justification::Rule(app) => {
                let mut open: BTreeSet<StepId> = app
                    .premises
                    .iter()
                    .filter_map(|p| pass.open.get(p))
                    .flatten()
                    .copied()
                    .collect();
                for d in &app.discharged {
                    open.remove(d);
                }
                open
            }
        };
        pass.open.insert(step.id, open);
        pass.formulas.insert(step.id, step.conclusion.clone());
    }
    pass
}

fn check_step(
    step: &ProofStep,
    system: System,
    pass: &Pass,
    hypotheses: &HashSet<StepId>,
) -> Result<(), (StepId, ReasonCode, String)> {
    let id = step.id;
    if !step.conclusion.is_legal_in(system) {
        return Err(failure(
            id,
            ReasonCode::WrongSystem,
            format!("`{}` uses a relation outside {system}", step.conclusion),
        ));
    }
    let Justification::Rule(app) = &step.justification else {
        return Ok(());
    };
    if !app.rule.is_legal_in(system) {
        return Err(failure(
            id,
            ReasonCode::WrongSystem,
            format!("rule {} is not part of {system}", app.rule),
        ));
    }
    if app.premises.len() != app.rule.arity() {
        return Err(failure(
            id,
            ReasonCode::WrongArity,
            format!(
                "{} takes {} premise(s), got {}",
                app.rule,
                app.rule.arity(),
                app.premises.len()
            ),
        ));
    }
    for r in app.premises.iter().chain(&app.discharged) {
        if !pass.formulas.contains_key(r) {
            return Err(failure(
                id,
                ReasonCode::UnknownPremise,
                format!("step {r} does not precede step {id}"),
            ));
        }
    }
    if app.fresh.is_some() && !app.rule.has_freshness_condition() {
        return Err(failure(
            id,
            ReasonCode::SchemaMismatch,
            format!("{} has no eigenvariable", app.rule),
        ));
    }

    let premise_open: BTreeSet<StepId> = app
        .premises
        .iter()
        .filter_map(|p| pass.open.get(p))
        .flatten()
        .copied()
        .collect();
    if !app.discharged.is_empty() && !app.rule.discharges() {
        return Err(failure(
            id,
            ReasonCode::IllegalDischarge,
            format!("{} does not discharge hypotheses", app.rule),
        ));
    }
    let mut seen = HashSet::new();
    for d in &app.discharged {
        if !hypotheses.contains(d) {
            return Err(failure(
                id,
                ReasonCode::IllegalDischarge,
                format!("step {d} is not a hypothesis"),
            ));
        }
        if !seen.insert(*d) || !premise_open.contains(d) {
            return Err(failure(
                id,
                ReasonCode::IllegalDischarge,
                format!("hypothesis {d} is not open in the premise"),
            ));
        }
    }

    let remaining: Vec<&Formula> = premise_open
        .iter()
        .filter(|h| !app.discharged.contains(h))
        .map(|h| &pass.formulas[h])
        .collect();
    let instance = Instance {
        rule: app.rule,
        conclusion: &step.conclusion,
        premises: app.premises.iter().map(|p| &pass.formulas[p]).collect(),
        discharged: app.discharged.iter().map(|d| &pass.formulas[d]).collect(),
        fresh: app.fresh.as_ref(),
        remaining,
    };
    check_instance(&instance).map_err(|f| (id, f.code, f.message))
}

/// Checks `script` against the rules of `system`.
pub fn check(script: &ProofScript, system: System) -> CheckReport {
    let mut diagnostics = Vec::new();
    if script.system != system {
        diagnostics.push(Diagnostic {
            step: None,
            code: ReasonCode::WrongSystem,
            message: format!("script declares {} but is checked under {system}", script.system),
        });
    }
    if let Some(t) = &script.theorem {
        if !t.statement.is_legal_in(system) {
            diagnostics.push(Diagnostic {
                step: None,
                code: ReasonCode::WrongSystem,
                message: format!("statement `{}` uses a relation outside {system}", t.statement),
            });
        }
    }

    let pass = run(script, system);
    diagnostics.extend(pass.diagnostics);

    let Some(last) = script.steps.last() else {
        diagnostics.push(Diagnostic {
            step: None,
            code: ReasonCode::SchemaMismatch,
            message: "script has no steps".into(),
        });
        return CheckReport {
            verdict: Verdict::Rejected,
            open_assumptions: BTreeSet::new(),
            diagnostics,
        };
    };
    let open_assumptions: BTreeSet<Formula> = pass.open[&last.id]
        .iter()
        .map(|h| pass.formulas[h].clone())
        .collect();

    if let Some(t) = &script.theorem {
        if last.conclusion != t.statement {
            diagnostics.push(Diagnostic {
                step: Some(last.id),
                code: ReasonCode::SchemaMismatch,
                message: format!(
                    "final step proves `{}`, theorem states `{}`",
                    last.conclusion, t.statement
                ),
            });
        }
        if !open_assumptions.is_empty() {
            let listed: Vec<String> = open_assumptions.iter().map(|f| f.to_string()).collect();
            diagnostics.push(Diagnostic {
                step: Some(last.id),
                code: ReasonCode::UndischargedAtTheorem,
                message: format!("open assumptions remain: {}", listed.join("; ")),
            });
        }
    }

    CheckReport {
        verdict: if diagnostics.is_empty() {
            Verdict::Accepted
        } else {
            Verdict::Rejected
        },
        open_assumptions,
        diagnostics,
    }
}

/// Undischarged hypotheses on which `step` depends.
pub fn open_assumptions(script: &ProofScript, step: StepId) -> Result<BTreeSet<Formula>, KernelError> {
    if script.step(step).is_none() {
        return Err(KernelError::UnknownStep(step));
    }
    let pass = run(script, script.system);
    Ok(pass.open[&step]
        .iter()
        .map(|h| pass.formulas[h].clone())
        .collect())
}
