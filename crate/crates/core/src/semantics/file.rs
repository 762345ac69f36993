//! Plain-text model files.
//!
//! ```text
//! system MSQR
//! worlds v w
//! U v v
//! U v w
//! U w v
//! U w w
//! M v w
//! M w w
//! val v:
//! val w: r0
//! interp x = v
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::frame::{validate_frame, Frame, FrameViolation};
use super::model::{Model, Structure};
use super::SemanticsError;
use crate::syntax::{is_identifier, Label, Relation, System};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid frame: {}", .0.join("; "))]
    InvalidFrame(Vec<String>),
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frame = self.frame();
        write!(f, "{frame}")?;
        for w in frame.worlds() {
            let props: Vec<&str> = self.model().valuation(w).into_iter().collect();
            if props.is_empty() {
                writeln!(f, "val {}:", frame.name(w))?;
            } else {
                writeln!(f, "val {}: {}", frame.name(w), props.join(" "))?;
            }
        }
        for (x, &w) in self.interp() {
            writeln!(f, "interp {x} = {}", frame.name(w))?;
        }
        Ok(())
    }
}

/// Parses a model file without checking the frame conditions.
pub fn parse_structure(src: &str) -> Result<Structure, ModelFileError> {
    let mut system: Option<System> = None;
    let mut worlds: Option<Vec<String>> = None;
    let mut edges: Vec<(usize, Relation, String, String)> = Vec::new();
    let mut vals: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut interp: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ModelFileError::Syntax { line, message };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match keyword {
            "system" => {
                if system.is_some() {
                    return Err(err("duplicate `system` line".into()));
                }
                system = Some(rest.parse().map_err(|_| err(format!("unknown system `{rest}`")))?);
            }
            "worlds" => {
                if worlds.is_some() {
                    return Err(err("duplicate `worlds` line".into()));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err("a frame needs at least one world".into()));
                }
                if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                    return Err(err(format!("`{bad}` is not a world name")));
                }
                worlds = Some(names);
            }
            "U" | "M" | "P" => {
                let relation = Relation::from_symbol(keyword).expect("relation symbol");
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [v, w] = parts[..] else {
                    return Err(err(format!("expected `{keyword} <world> <world>`")));
                };
                edges.push((line, relation, v.to_string(), w.to_string()));
            }
            "val" => {
                let Some((world, props)) = rest.split_once(':') else {
                    return Err(err("expected `val <world>: <propositions>`".into()));
                };
                let props: Vec<String> = props.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = props.iter().find(|p| !is_identifier(p) || *p == "bot") {
                    return Err(err(format!("`{bad}` is not a proposition")));
                }
                vals.push((line, world.trim().to_string(), props));
            }
            "interp" => {
                let Some((label, world)) = rest.split_once('=') else {
                    return Err(err("expected `interp <label> = <world>`".into()));
                };
                interp.push((line, label.trim().to_string(), world.trim().to_string()));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let last = src.lines().count().max(1);
    let system = system.ok_or(ModelFileError::Syntax {
        line: last,
        message: "missing `system` line".into(),
    })?;
    let names = worlds.ok_or(ModelFileError::Syntax {
        line: last,
        message: "missing `worlds` line".into(),
    })?;
    let frame_error = |line: usize, e: SemanticsError| ModelFileError::Syntax {
        line,
        message: e.to_string(),
    };
    let mut frame = Frame::empty(system, names.len())
        .and_then(|f| f.with_names(names))
        .map_err(|e| frame_error(1, e))?;
    let lookup = |frame: &Frame, line: usize, name: &str| {
        frame.world(name).ok_or(ModelFileError::Syntax {
            line,
            message: format!("unknown world `{name}`"),
        })
    };

    for (line, relation, v, w) in edges {
        let (v, w) = (lookup(&frame, line, &v)?, lookup(&frame, line, &w)?);
        frame.insert(relation, v, w).map_err(|e| frame_error(line, e))?;
    }

    let mut valuation = vec![BTreeSet::new(); frame.size()];
    let mut seen = BTreeSet::new();
    for (line, world, props) in vals {
        let w = lookup(&frame, line, &world)?;
        if !seen.insert(w) {
            return Err(frame_error(line, SemanticsError::DuplicateWorld(world)));
        }
        valuation[w].extend(props);
    }

    let mut map = BTreeMap::new();
    for (line, label, world) in interp {
        let x = Label::try_new(&label).map_err(|e| ModelFileError::Syntax {
            line,
            message: e.to_string(),
        })?;
        let w = lookup(&frame, line, &world)?;
        if map.insert(x, w).is_some() {
            return Err(ModelFileError::Syntax {
                line,
                message: format!("label `{label}` interpreted twice"),
            });
        }
    }

    let model = Model::new(frame, valuation).map_err(|e| frame_error(last, e))?;
    Structure::new(model, map).map_err(|e| frame_error(last, e))
}

/// Parses a model file and, unless `allow_invalid`, refuses frames that
/// violate their system's conditions.
pub fn load_structure(src: &str, allow_invalid: bool) -> Result<Structure, ModelFileError> {
    let structure = parse_structure(src)?;
    if !allow_invalid {
        let violations: Vec<FrameViolation> = validate_frame(structure.frame());
        if !violations.is_empty() {
            return Err(ModelFileError::InvalidFrame(
                violations.iter().map(|v| v.describe(structure.frame())).collect(),
            ));
        }
    }
    Ok(structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::holds;
    use crate::syntax::parse_formula;

    const TWO: &str = "\
system MSQR
worlds v w
U v v
U v w
U w v
U w w
M v w
M w w
val v:
val w: r0
interp x = v
";

    #[test]
    fn parse_print_round_trip() {
        let s = load_structure(TWO, false).unwrap();
        assert_eq!(s.to_string(), TWO);
        assert!(holds(&s, &parse_formula("x : <M> r0").unwrap()).unwrap());
        assert!(!holds(&s, &parse_formula("x : r0").unwrap()).unwrap());
    }

    #[test]
    fn missing_valuation_lines_mean_empty() {
        let src = "system MSQR\nworlds a\nU a a\nM a a  # classical\n";
        let s = load_structure(src, false).unwrap();
        assert!(s.model().valuation(0).is_empty());
        assert!(s.interp().is_empty());
    }

    #[test]
    fn invalid_frames_need_permission() {
        let src = "system MSQR\nworlds a b\nU a a\nU b b\nM a a\n";
        match load_structure(src, false) {
            Err(ModelFileError::InvalidFrame(v)) => assert_eq!(v, vec!["not-serial [b]".to_string()]),
            other => panic!("{other:?}"),
        }
        assert!(load_structure(src, true).is_ok());
    }

    #[test]
    fn syntax_errors_have_lines() {
        let cases = [
            ("worlds a\n", "missing `system`"),
            ("system MSQR\nworlds a\nM a b\n", "unknown world `b`"),
            ("system MSQR\nworlds a\nP a a\n", "wrong-system"),
            ("system MSQR\nworlds a\nval a r0\n", "expected `val"),
            ("system MSQR\nworlds a a\n", "duplicate world"),
            ("system MSQR\nworlds a\nfoo\n", "unknown directive"),
            ("system MSQR\nworlds a\ninterp bot = a\n", "label"),
        ];
        for (src, needle) in cases {
            let e = parse_structure(src).unwrap_err().to_string();
            assert!(e.contains(needle), "{src:?}: {e}");
        }
        let e = parse_structure("system MSQR\nworlds a\nM a b\n").unwrap_err();
        assert!(matches!(e, ModelFileError::Syntax { line: 3, .. }));
    }
}
