//! Line-oriented text formats for instances and routings.
//!
//! Instance file:
//!
//! ```text
//! clos <N> <R>
//! flow <id> <i> <s> <j> <t> <num>/<den>
//! ```
//!
//! Routing file:
//!
//! ```text
//! routing <instance-id or ->
//! expect congestion <num>/<den>      (optional)
//! assign <flow-id> <m>
//! ```
//!
//! Blank lines and `#` comments are ignored in both. Writers emit a
//! canonical form that parses back to the same value and re-serializes to
//! the same bytes.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::congestion::{list_ids, RoutingError};
use crate::model::{ClosDims, Flow, FlowId, FlowSet, ModelError, Routing};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}` header line")]
    MissingHeader(&'static str),
    #[error("invalid instance: {0}")]
    Model(#[from] ModelError),
    #[error("routing file lists flow {} more than once", .0)]
    DuplicateAssignment(FlowId),
    #[error("routing file is missing flows: {}", list_ids(.0))]
    MissingAssignments(Vec<FlowId>),
    #[error(transparent)]
    Routing(#[from] RoutingError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((idx + 1, line.split_whitespace().collect()))
        }
    })
}

fn parse_usize(line: usize, what: &str, token: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{token}`")))
}

pub fn parse_instance(text: &str) -> Result<FlowSet, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader("clos"))?;
    if header.len() != 3 || header[0] != "clos" {
        return Err(syntax(line, "expected `clos <N> <R>`"));
    }
    let n = parse_usize(line, "N", header[1])?;
    let r = parse_usize(line, "R", header[2])?;
    let dims = ClosDims::new(n, r)?;

    let mut flows: Vec<Flow> = Vec::new();
    for (line, tokens) in lines {
        if tokens[0] != "flow" {
            return Err(syntax(line, format!("unknown directive `{}`", tokens[0])));
        }
        if tokens.len() != 7 {
            return Err(syntax(
                line,
                "expected `flow <id> <i> <s> <j> <t> <num>/<den>`",
            ));
        }
        let id = FlowId(parse_usize(line, "flow id", tokens[1])?);
        let demand: Rational = tokens[6]
            .parse()
            .map_err(|e| syntax(line, format!("bad demand `{}`: {e}", tokens[6])))?;
        flows.push(Flow {
            id,
            input: parse_usize(line, "input switch", tokens[2])?,
            source: parse_usize(line, "source server", tokens[3])?,
            output: parse_usize(line, "output switch", tokens[4])?,
            dest: parse_usize(line, "destination server", tokens[5])?,
            demand,
        });
    }
    flows.sort_by_key(|f| f.id);
    Ok(FlowSet::new(dims, flows)?)
}

pub fn write_instance(fs: &FlowSet) -> String {
    let dims = fs.dims();
    let mut out = format!("clos {} {}\n", dims.n_middle(), dims.n_tor());
    for f in fs.flows() {
        let _ = writeln!(
            out,
            "flow {} {} {} {} {} {}",
            f.id.0, f.input, f.source, f.output, f.dest, f.demand
        );
    }
    out
}

/// Stable short digest of an instance: the first 16 hex digits of the
/// SHA-256 of its canonical text.
pub fn instance_digest(fs: &FlowSet) -> String {
    let hash = Sha256::digest(write_instance(fs).as_bytes());
    hash.iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Parsed routing file, not yet checked against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingFile {
    /// Instance identifier from the header; `None` for `-`.
    pub instance: Option<String>,
    pub expected_congestion: Option<Rational>,
    /// Assignments in file order.
    pub assignments: Vec<(FlowId, usize)>,
}

impl RoutingFile {
    pub fn new(instance: Option<String>, routing: &Routing) -> Self {
        RoutingFile {
            instance,
            expected_congestion: None,
            assignments: routing.assignments().collect(),
        }
    }

    pub fn with_expected(mut self, congestion: Rational) -> Self {
        self.expected_congestion = Some(congestion);
        self
    }

    /// Builds the total routing for `n_flows` flows, listing every missing
    /// flow id in the error.
    pub fn to_routing(&self, n_flows: usize) -> Result<Routing, ParseError> {
        let mut middles: Vec<Option<usize>> = vec![None; n_flows];
        for (id, middle) in &self.assignments {
            if id.0 == 0 || id.0 > n_flows {
                return Err(RoutingError::TooManyAssignments {
                    routed: self.assignments.len(),
                    flows: n_flows,
                }
                .into());
            }
            if middles[id.index()].replace(*middle).is_some() {
                return Err(ParseError::DuplicateAssignment(*id));
            }
        }
        let missing: Vec<FlowId> = middles
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(i, _)| FlowId::from_index(i))
            .collect();
        if !missing.is_empty() {
            return Err(ParseError::MissingAssignments(missing));
        }
        Ok(Routing::new(middles.into_iter().flatten().collect()))
    }
}

pub fn parse_routing(text: &str) -> Result<RoutingFile, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(ParseError::MissingHeader("routing"))?;
    if header.len() != 2 || header[0] != "routing" {
        return Err(syntax(line, "expected `routing <instance-id or ->`"));
    }
    let instance = (header[1] != "-").then(|| header[1].to_string());
    let mut file = RoutingFile {
        instance,
        expected_congestion: None,
        assignments: Vec::new(),
    };
    for (line, tokens) in lines {
        match (tokens[0], tokens.len()) {
            ("assign", 3) => {
                let id = FlowId(parse_usize(line, "flow id", tokens[1])?);
                let m = parse_usize(line, "middle switch", tokens[2])?;
                file.assignments.push((id, m));
            }
            ("expect", 3) if tokens[1] == "congestion" => {
                let value = tokens[2]
                    .parse()
                    .map_err(|e| syntax(line, format!("bad congestion `{}`: {e}", tokens[2])))?;
                file.expected_congestion = Some(value);
            }
            _ => {
                return Err(syntax(
                    line,
                    "expected `assign <flow-id> <m>` or `expect congestion <value>`",
                ))
            }
        }
    }
    Ok(file)
}

pub fn write_routing(file: &RoutingFile) -> String {
    let mut out = format!("routing {}\n", file.instance.as_deref().unwrap_or("-"));
    if let Some(c) = &file.expected_congestion {
        let _ = writeln!(out, "expect congestion {c}");
    }
    for (id, m) in &file.assignments {
        let _ = writeln!(out, "assign {} {}", id.0, m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two flows
clos 2 3

flow 2 2 1 3 2 1/2
flow 1 1 1 1 1 1   # unit demand
";

    #[test]
    fn parses_with_comments_and_unordered_ids() {
        let fs = parse_instance(SAMPLE).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs.flow(FlowId(1)).demand, Rational::one());
        assert_eq!(fs.flow(FlowId(2)).output, 3);
        assert_eq!(
            write_instance(&fs),
            "clos 2 3\nflow 1 1 1 1 1 1/1\nflow 2 2 1 3 2 1/2\n"
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_instance("clos 2 2\nflow 1 1 1 1 1 x\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
        let err = parse_instance("\n\nrouting -\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        assert!(matches!(
            parse_instance("clos 2 2\nflow 1 1 1 1 1 1/2\nflow 3 1 2 1 2 1/2\n"),
            Err(ParseError::Model(_))
        ));
        assert!(matches!(
            parse_instance(""),
            Err(ParseError::MissingHeader("clos"))
        ));
    }

    #[test]
    fn routing_file_lists_missing_ids() {
        let file = parse_routing("routing -\nassign 2 1\n").unwrap();
        assert_eq!(file.instance, None);
        assert_eq!(
            file.to_routing(3).unwrap_err(),
            ParseError::MissingAssignments(vec![FlowId(1), FlowId(3)])
        );
        let dup = parse_routing("routing abc\nassign 1 1\nassign 1 2\n").unwrap();
        assert_eq!(
            dup.to_routing(1).unwrap_err(),
            ParseError::DuplicateAssignment(FlowId(1))
        );
    }

    #[test]
    fn routing_file_with_expectation() {
        let text = "routing 0123\nexpect congestion 3/2\nassign 1 2\nassign 2 1\n";
        let file = parse_routing(text).unwrap();
        assert_eq!(file.expected_congestion, Some(Rational::new(3, 2)));
        assert_eq!(file.to_routing(2).unwrap(), Routing::new(vec![2, 1]));
        assert_eq!(write_routing(&file), text);
    }

    #[test]
    fn digest_is_stable_and_content_sensitive() {
        let a = parse_instance(SAMPLE).unwrap();
        let b = parse_instance(&write_instance(&a)).unwrap();
        assert_eq!(instance_digest(&a), instance_digest(&b));
        assert_eq!(instance_digest(&a).len(), 16);
        let c = parse_instance("clos 2 3\nflow 1 1 1 1 1 1/2\n").unwrap();
        assert_ne!(instance_digest(&a), instance_digest(&c));
    }
}
