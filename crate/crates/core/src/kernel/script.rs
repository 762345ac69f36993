//! Linear proof scripts.
//!
//! ```text
//! system MSQR
//! theorem thm1 : x : [] r0 -> r0
//! 1. x : [] r0 ; hyp
//! 2. x U x ; Urefl
//! 3. x : r0 ; BoxE 1,2
//! 4. x : [] r0 -> r0 ; ImpI 3 discharge 1
//! qed
//! ```
//!
//! Steps may only cite steps that appear earlier in the file. Subproofs are
//! not delimited; they are recovered from the discharge annotations.

use std::collections::HashSet;
use std::fmt;

use crate::syntax::{parse_formula_at, Formula, Label, ParseError, Position, System};

pub type StepId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    ImpI,
    ImpE,
    Raa,
    BotE,
    BoxI,
    BoxE,
    Urefl,
    Usymm,
    Utrans,
    UIfromM,
    Mser,
    Msrefl,
    Msub1,
    Msub2,
    PUI,
    Ptrans,
    Class,
    Psub1,
    Psub2,
    NegI,
    NegE,
    IffI,
    IffE1,
    IffE2,
    Mtrans,
    AndI,
    AndE1,
    AndE2,
}

impl RuleName {
    pub const ALL: [RuleName; 28] = [
        RuleName::ImpI,
        RuleName::ImpE,
        RuleName::Raa,
        RuleName::BotE,
        RuleName::BoxI,
        RuleName::BoxE,
        RuleName::Urefl,
        RuleName::Usymm,
        RuleName::Utrans,
        RuleName::UIfromM,
        RuleName::Mser,
        RuleName::Msrefl,
        RuleName::Msub1,
        RuleName::Msub2,
        RuleName::PUI,
        RuleName::Ptrans,
        RuleName::Class,
        RuleName::Psub1,
        RuleName::Psub2,
        RuleName::NegI,
        RuleName::NegE,
        RuleName::IffI,
        RuleName::IffE1,
        RuleName::IffE2,
        RuleName::Mtrans,
        RuleName::AndI,
        RuleName::AndE1,
        RuleName::AndE2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleName::ImpI => "ImpI",
            RuleName::ImpE => "ImpE",
            RuleName::Raa => "RAA",
            RuleName::BotE => "BotE",
            RuleName::BoxI => "BoxI",
            RuleName::BoxE => "BoxE",
            RuleName::Urefl => "Urefl",
            RuleName::Usymm => "Usymm",
            RuleName::Utrans => "Utrans",
            RuleName::UIfromM => "UIfromM",
            RuleName::Mser => "Mser",
            RuleName::Msrefl => "Msrefl",
            RuleName::Msub1 => "Msub1",
            RuleName::Msub2 => "Msub2",
            RuleName::PUI => "PUI",
            RuleName::Ptrans => "Ptrans",
            RuleName::Class => "Class",
            RuleName::Psub1 => "Psub1",
            RuleName::Psub2 => "Psub2",
            RuleName::NegI => "NegI",
            RuleName::NegE => "NegE",
            RuleName::IffI => "IffI",
            RuleName::IffE1 => "IffE1",
            RuleName::IffE2 => "IffE2",
            RuleName::Mtrans => "Mtrans",
            RuleName::AndI => "AndI",
            RuleName::AndE1 => "AndE1",
            RuleName::AndE2 => "AndE2",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleName> {
        RuleName::ALL.into_iter().find(|r| r.name() == s)
    }

    /// The only system in which the rule may be used, if it is not shared.
    pub fn restricted_to(self) -> Option<System> {
        use RuleName::*;
        match self {
            UIfromM | Mser | Msrefl | Msub1 | Msub2 | Mtrans => Some(System::Msqr),
            PUI | Ptrans | Class | Psub1 | Psub2 => Some(System::Mspqr),
            _ => None,
        }
    }

    pub fn is_legal_in(self, system: System) -> bool {
        self.restricted_to().is_none_or(|s| s == system)
    }

    /// Derived rules are expanded into primitive steps before checking.
    pub fn is_derived(self) -> bool {
        use RuleName::*;
        matches!(
            self,
            NegI | NegE | IffI | IffE1 | IffE2 | Mtrans | AndI | AndE1 | AndE2
        )
    }

    /// Whether the rule closes hypotheses.
    pub fn discharges(self) -> bool {
        use RuleName::*;
        matches!(self, ImpI | Raa | BoxI | Mser | Class | NegI)
    }

    /// Whether the rule carries an eigenvariable condition.
    pub fn has_freshness_condition(self) -> bool {
        matches!(self, RuleName::BoxI | RuleName::Mser | RuleName::Class)
    }

    pub fn arity(self) -> usize {
        use RuleName::*;
        match self {
            Urefl => 0,
            ImpI | Raa | BotE | BoxI | Usymm | UIfromM | Mser | Msrefl | PUI | Class | NegI
            | IffE1 | IffE2 | AndE1 | AndE2 => 1,
            ImpE | BoxE | Utrans | Ptrans | NegE | IffI | Mtrans | AndI => 2,
            Msub1 | Msub2 | Psub1 | Psub2 => 3,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleName,
    pub premises: Vec<StepId>,
    pub discharged: Vec<StepId>,
    pub fresh: Option<Label>,
}

impl RuleApplication {
    pub fn new(rule: RuleName, premises: impl Into<Vec<StepId>>) -> Self {
        RuleApplication {
            rule,
            premises: premises.into(),
            discharged: Vec::new(),
            fresh: None,
        }
    }

    pub fn discharging(mut self, ids: impl Into<Vec<StepId>>) -> Self {
        self.discharged = ids.into();
        self
    }

    pub fn with_fresh(mut self, label: Label) -> Self {
        self.fresh = Some(label);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Hypothesis,
    Rule(RuleApplication),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub id: StepId,
    pub conclusion: Formula,
    pub justification: Justification,
}

impl ProofStep {
    pub fn hypothesis(id: StepId, conclusion: Formula) -> Self {
        ProofStep {
            id,
            conclusion,
            justification: Justification::Hypothesis,
        }
    }

    pub fn rule(id: StepId, conclusion: Formula, app: RuleApplication) -> Self {
        ProofStep {
            id,
            conclusion,
            justification: Justification::Rule(app),
        }
    }

    pub fn application(&self) -> Option<&RuleApplication> {
        match &self.justification {
            Justification::Hypothesis => None,
            Justification::Rule(app) => Some(app),
        }
    }

    /// Steps this one cites, premises first, then discharged hypotheses.
    pub fn references(&self) -> impl Iterator<Item = StepId> + '_ {
        self.application()
            .into_iter()
            .flat_map(|app| app.premises.iter().chain(&app.discharged).copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem {
    pub name: String,
    pub statement: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub system: System,
    /// Without a theorem header the script is a derivation from its open
    /// hypotheses.
    pub theorem: Option<Theorem>,
    pub steps: Vec<ProofStep>,
}

impl ProofScript {
    pub fn step(&self, id: StepId) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn max_id(&self) -> StepId {
        self.steps.iter().map(|s| s.id).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("{0}")]
    Formula(#[from] ParseError),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl ScriptError {
    pub fn line(&self) -> usize {
        match self {
            ScriptError::Formula(e) => e.line,
            ScriptError::Syntax { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(text: &str, line: usize) -> Result<StepId, ScriptError> {
    match text.parse::<StepId>() {
        Ok(id) if id > 0 => Ok(id),
        _ => Err(syntax(line, format!("expected a positive step id, found `{text}`"))),
    }
}

fn parse_id_list(text: &str, line: usize) -> Result<Vec<StepId>, ScriptError> {
    text.split(',').map(|t| parse_id(t.trim(), line)).collect()
}

/// Joins `1, 2 ,3` into `1,2,3` so id lists survive whitespace splitting.
fn normalize_lists(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space && c != ',' && !out.ends_with(',') && !out.is_empty() {
            out.push(' ');
        }
        pending_space = false;
        out.push(c);
    }
    out
}

fn parse_justification(text: &str, line: usize) -> Result<Justification, ScriptError> {
    let normalized = normalize_lists(text);
    let mut words = normalized.split(' ').filter(|w| !w.is_empty());
    let head = words
        .next()
        .ok_or_else(|| syntax(line, "missing justification after `;`"))?;
    if head == "hyp" {
        if let Some(extra) = words.next() {
            return Err(syntax(line, format!("unexpected `{extra}` after `hyp`")));
        }
        return Ok(Justification::Hypothesis);
    }
    let rule = RuleName::from_name(head)
        .ok_or_else(|| syntax(line, format!("unknown rule `{head}`")))?;
    let mut app = RuleApplication::new(rule, Vec::new());
    let mut seen_premises = false;
    while let Some(word) = words.next() {
        match word {
            "discharge" => {
                let list = words
                    .next()
                    .ok_or_else(|| syntax(line, "expected ids after `discharge`"))?;
                app.discharged = parse_id_list(list, line)?;
            }
            "fresh" => {
                let name = words
                    .next()
                    .ok_or_else(|| syntax(line, "expected a label after `fresh`"))?;
                app.fresh = Some(Label::try_new(name).map_err(|e| syntax(line, e.to_string()))?);
            }
            list if !seen_premises && app.discharged.is_empty() && app.fresh.is_none() => {
                app.premises = parse_id_list(list, line)?;
                seen_premises = true;
            }
            other => return Err(syntax(line, format!("unexpected `{other}` in justification"))),
        }
    }
    Ok(Justification::Rule(app))
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Parses a proof script. Formulas are read without system restrictions;
/// system legality is the kernel's business.
pub fn parse_script(src: &str) -> Result<ProofScript, ScriptError> {
    let mut system = None;
    let mut theorem = None;
    let mut steps: Vec<ProofStep> = Vec::new();
    let mut ids = HashSet::new();
    let mut qed_line: Option<usize> = None;

    for (index, raw) in src.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(q) = qed_line {
            return Err(syntax(line_no, format!("content after `qed` on line {q}")));
        }
        let indent = line.len() - line.trim_start().len();

        if let Some(rest) = trimmed.strip_prefix("system ") {
            if system.is_some() || !steps.is_empty() || theorem.is_some() {
                return Err(syntax(line_no, "`system` must be the first statement"));
            }
            system = Some(rest.trim().parse::<System>().map_err(|e| syntax(line_no, e))?);
        } else if let Some(rest) = trimmed.strip_prefix("theorem ") {
            if system.is_none() {
                return Err(syntax(line_no, "`theorem` before `system`"));
            }
            if theorem.is_some() || !steps.is_empty() {
                return Err(syntax(line_no, "`theorem` must precede the steps"));
            }
            let (name, formula) = rest
                .split_once(':')
                .ok_or_else(|| syntax(line_no, "expected `theorem <name> : <formula>`"))?;
            let name = name.trim();
            if !crate::syntax::is_identifier(name) {
                return Err(syntax(line_no, format!("invalid theorem name `{name}`")));
            }
            let offset = line.len() - formula.len();
            let statement = parse_formula_at(
                formula,
                Position {
                    line: line_no,
                    column: column_of(line, offset),
                },
                None,
            )?;
            theorem = Some(Theorem {
                name: name.to_owned(),
                statement,
            });
        } else if trimmed == "qed" {
            if theorem.is_none() {
                return Err(syntax(line_no, "`qed` without a theorem"));
            }
            qed_line = Some(line_no);
        } else {
            if system.is_none() {
                return Err(syntax(line_no, "step before `system` header"));
            }
            let (id_text, rest) = trimmed
                .split_once('.')
                .ok_or_else(|| syntax(line_no, "expected `<id>. <formula> ; <justification>`"))?;
            let id = parse_id(id_text.trim(), line_no)?;
            if !ids.insert(id) {
                return Err(syntax(line_no, format!("duplicate step id {id}")));
            }
            let (formula, justification) = rest
                .split_once(';')
                .ok_or_else(|| syntax(line_no, "missing `;` before the justification"))?;
            let offset = indent + (trimmed.len() - rest.len());
            let conclusion = parse_formula_at(
                formula,
                Position {
                    line: line_no,
                    column: column_of(line, offset),
                },
                None,
            )?;
            let justification = parse_justification(justification, line_no)?;
            steps.push(ProofStep {
                id,
                conclusion,
                justification,
            });
        }
    }

    let system = system.ok_or_else(|| syntax(1, "missing `system` header"))?;
    if theorem.is_some() && qed_line.is_none() {
        return Err(syntax(src.lines().count().max(1), "missing trailing `qed`"));
    }
    Ok(ProofScript {
        system,
        theorem,
        steps,
    })
}

fn write_ids(f: &mut fmt::Formatter<'_>, ids: &[StepId]) -> fmt::Result {
    for (i, id) in ids.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{id}")?;
    }
    Ok(())
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}. {} ; ", self.id, self.conclusion)?;
        match &self.justification {
            Justification::Hypothesis => f.write_str("hyp"),
            Justification::Rule(app) => {
                f.write_str(app.rule.name())?;
                if !app.premises.is_empty() {
                    f.write_str(" ")?;
                    write_ids(f, &app.premises)?;
                }
                if !app.discharged.is_empty() {
                    f.write_str(" discharge ")?;
                    write_ids(f, &app.discharged)?;
                }
                if let Some(y) = &app.fresh {
                    write!(f, " fresh {y}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {}", self.system)?;
        if let Some(t) = &self.theorem {
            writeln!(f, "theorem {} : {}", t.name, t.statement)?;
        }
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        if self.theorem.is_some() {
            writeln!(f, "qed")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{MFormula, Relation};

    const THM1: &str = "\
system MSQR
theorem thm1 : x : [] r0 -> r0   # the identity is unitary
1. x : [] r0 ; hyp
2. x U x ; Urefl
3. x : r0 ; BoxE 1, 2
4. x : [] r0 -> r0 ; ImpI 3 discharge 1
qed
";

    #[test]
    fn parses_and_prints_canonically() {
        let script = parse_script(THM1).unwrap();
        assert_eq!(script.system, System::Msqr);
        assert_eq!(script.steps.len(), 4);
        assert_eq!(
            script.steps[2].justification,
            Justification::Rule(RuleApplication::new(RuleName::BoxE, [1, 2]))
        );
        let printed = script.to_string();
        assert!(printed.contains("3. x : r0 ; BoxE 1,2\n"));
        assert_eq!(parse_script(&printed).unwrap(), script);
    }

    #[test]
    fn full_justification() {
        let j = parse_justification(" BoxI 5 discharge 3 fresh z", 1).unwrap();
        assert_eq!(
            j,
            Justification::Rule(
                RuleApplication::new(RuleName::BoxI, [5])
                    .discharging([3])
                    .with_fresh(Label::new("z"))
            )
        );
        let j = parse_justification("Urefl", 1).unwrap();
        assert_eq!(j, Justification::Rule(RuleApplication::new(RuleName::Urefl, [])));
        let j = parse_justification("Class 9 discharge 2, 3 fresh y", 1).unwrap();
        let Justification::Rule(app) = j else { panic!() };
        assert_eq!(app.discharged, vec![2, 3]);
    }

    #[test]
    fn rejects_malformed_scripts() {
        let cases = [
            ("1. x U x ; Urefl\n", "step before"),
            ("system MSQR\n1. x U x ; Frobnicate\n", "unknown rule"),
            ("system MSQR\n1. x U x ; Urefl\n1. x U x ; Urefl\n", "duplicate"),
            ("system MSQR\n0. x U x ; Urefl\n", "positive"),
            ("system MSQR\ntheorem t : x U x\n1. x U x ; Urefl\n", "qed"),
            ("system MSQR\n1. x U x Urefl\n", "`;`"),
            ("system MSQR\n1. x U x ; hyp 2\n", "after `hyp`"),
            ("system MSQR\n1. x U x ; Usymm 1 fresh\n", "label after"),
        ];
        for (src, needle) in cases {
            let err = parse_script(src).unwrap_err();
            assert!(err.to_string().contains(needle), "{src:?} gave {err}");
        }
    }

    #[test]
    fn formula_errors_carry_script_positions() {
        let src = "system MSQR\n  7. x : r0 -> ; hyp\n";
        let ScriptError::Formula(e) = parse_script(src).unwrap_err() else {
            panic!("expected a formula error")
        };
        assert_eq!((e.line, e.column), (2, 16));
    }

    #[test]
    fn formulas_are_not_system_gated_at_parse_time() {
        let script = parse_script("system MSPQR\n1. x M y ; hyp\n").unwrap();
        assert_eq!(
            script.steps[0].conclusion,
            Formula::relational("x", Relation::M, "y")
        );
        let _ = MFormula::Bottom;
    }

    #[test]
    fn rule_metadata_is_consistent() {
        for rule in RuleName::ALL {
            assert_eq!(RuleName::from_name(rule.name()), Some(rule));
        }
        assert!(!RuleName::Msrefl.is_legal_in(System::Mspqr));
        assert!(!RuleName::Class.is_legal_in(System::Msqr));
        assert!(RuleName::BoxI.is_legal_in(System::Mspqr));
    }
}
