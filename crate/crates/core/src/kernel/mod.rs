//! Proof scripts and the checker for labelled natural deduction.
//!
//! A script is checked step by step: every rule application is matched
//! against its schema, discharges are tracked, and eigenvariable conditions
//! are enforced against the hypotheses still open at that point. Derived
//! rules are expanded into primitive steps before checking.

mod check;
mod derived;
mod rules;
mod script;

pub use check::{
    check, expand_script, open_assumptions, CheckReport, Diagnostic, KernelError, ReasonCode,
    Verdict,
};
pub use derived::{expand_derived, ExpandError};
pub use script::{
    parse_script, Justification, ProofScript, ProofStep, RuleApplication, RuleName, ScriptError,
    StepId, Theorem,
};
