//! Reader and writer for the subset of the Hanoi Omega-Automata format used
//! here: explicit labels, state-based acceptance, deterministic and complete.
//!
//! Supported `acc-name`s and the acceptance sets they use:
//!
//! | acc-name               | Acceptance                       | sets                       |
//! |------------------------|----------------------------------|----------------------------|
//! | `Buchi`                | `1 Inf(0)`                       | 0 = accepting              |
//! | `co-Buchi`             | `1 Fin(0)`                       | 0 = rejecting              |
//! | `Rabin 1`              | `2 Fin(0) & Inf(1)`              | 0 = `Q \ F`, 1 = `G`       |
//! | `parity max even <n>`  | `Inf(n-1) \| (Fin(n-2) & ...)`   | one colour per state       |
//! | `safety`               | `0 t`, or `1 Fin(0)` with a sink | 0 = absorbing failure sink |

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::ap::{ApError, ApTable};
use crate::automaton::{
    guards_for_row, Acceptance, DeterministicOmegaAutomaton, Edge, StateSet, ValidationErrors,
};
use crate::boolean::BoolExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported HOA feature: {0}")]
    UnsupportedFeature(String),
    #[error("invalid automaton: {0}")]
    Validation(#[from] ValidationErrors),
    #[error(transparent)]
    Ap(#[from] ApError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Int(usize),
    Str(String),
    Punct(char),
    Body,
    End,
}

fn syntax(line: usize, message: impl Into<String>) -> HoaError {
    HoaError::Syntax {
        line,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, HoaError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            line += 1;
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if text[i..].starts_with("/*") {
            let end = text[i + 2..]
                .find("*/")
                .ok_or_else(|| syntax(line, "unterminated comment"))?;
            line += text[i..i + 2 + end].matches('\n').count();
            i += end + 4;
        } else if text[i..].starts_with("--BODY--") {
            out.push((Tok::Body, line));
            i += 8;
        } else if text[i..].starts_with("--END--") {
            out.push((Tok::End, line));
            i += 7;
        } else if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j] != b'"' {
                if bytes[j] == b'\\' {
                    j += 1;
                }
                j += 1;
            }
            if j >= bytes.len() {
                return Err(syntax(line, "unterminated string"));
            }
            out.push((Tok::Str(text[start..j].to_owned()), line));
            i = j + 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i]
                .parse()
                .map_err(|_| syntax(line, "integer too large"))?;
            out.push((Tok::Int(n), line));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'-')
            {
                i += 1;
            }
            let word = text[start..i].to_owned();
            if i < bytes.len() && bytes[i] == b':' {
                i += 1;
                out.push((Tok::Header(word), line));
            } else {
                out.push((Tok::Ident(word), line));
            }
        } else if "[]{}()!&|@".contains(c) {
            out.push((Tok::Punct(c), line));
            i += 1;
        } else {
            return Err(syntax(line, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |(_, l)| *l)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn int(&mut self, what: &str) -> Result<usize, HoaError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(syntax(line, format!("expected {what}"))),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), HoaError> {
        let line = self.line();
        match self.next() {
            Some(Tok::Punct(p)) if p == c => Ok(()),
            _ => Err(syntax(line, format!("expected '{c}'"))),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Tokens up to the next header, `--BODY--` or `--END--`.
    fn header_args(&mut self) -> Vec<(Tok, usize)> {
        let start = self.pos;
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Header(_) | Tok::Body | Tok::End) {
                break;
            }
            self.pos += 1;
        }
        self.toks[start..self.pos].to_vec()
    }

    /// Integer set `{a b c}`; absent braces give the empty set.
    fn acc_sig(&mut self) -> Result<Vec<usize>, HoaError> {
        let mut ids = Vec::new();
        if self.eat_punct('{') {
            while !self.eat_punct('}') {
                ids.push(self.int("acceptance set id")?);
            }
        }
        Ok(ids)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum AccName {
    Buchi,
    CoBuchi,
    Rabin1,
    Parity(usize),
    Safety,
}

fn render_tokens(toks: &[(Tok, usize)]) -> String {
    toks.iter()
        .map(|(t, _)| match t {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::Punct(c) => c.to_string(),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Header(h) => format!("{h}:"),
            Tok::Body | Tok::End => String::new(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_acc_name(args: &[(Tok, usize)]) -> Result<AccName, HoaError> {
    let words: Vec<String> = args
        .iter()
        .map(|(t, _)| match t {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            _ => String::from("?"),
        })
        .collect();
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["Buchi"] => Ok(AccName::Buchi),
        ["co-Buchi"] => Ok(AccName::CoBuchi),
        ["Rabin", "1"] => Ok(AccName::Rabin1),
        ["safety"] => Ok(AccName::Safety),
        ["parity", "max", "even", n] => n
            .parse()
            .map(AccName::Parity)
            .map_err(|_| HoaError::UnsupportedFeature(format!("acc-name {}", words.join(" ")))),
        _ => Err(HoaError::UnsupportedFeature(format!(
            "acc-name {}",
            render_tokens(args)
        ))),
    }
}

/// Canonical max-even parity condition over `n` colours.
fn parity_condition(n: usize) -> String {
    fn level(c: usize) -> String {
        let atom = if c.is_multiple_of(2) {
            format!("Inf({c})")
        } else {
            format!("Fin({c})")
        };
        let rest = match c {
            0 => return atom,
            1 => level(0),
            _ => format!("({})", level(c - 1)),
        };
        if c.is_multiple_of(2) {
            format!("{atom} | {rest}")
        } else {
            format!("{atom} & {rest}")
        }
    }
    if n == 0 {
        "f".to_owned()
    } else {
        level(n - 1)
    }
}

fn acceptance_line(name: &AccName, safety_with_sink: bool) -> String {
    match name {
        AccName::Buchi => "1 Inf(0)".into(),
        AccName::CoBuchi => "1 Fin(0)".into(),
        AccName::Rabin1 => "2 Fin(0) & Inf(1)".into(),
        AccName::Parity(n) => format!("{n} {}", parity_condition(*n)),
        AccName::Safety if safety_with_sink => "1 Fin(0)".into(),
        AccName::Safety => "0 t".into(),
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Guard grammar: `or := and ('|' and)*`, `and := unary ('&' unary)*`,
/// `unary := '!' unary | 't' | 'f' | int | '(' or ')'`.
fn parse_guard(cur: &mut Cursor) -> Result<BoolExpr, HoaError> {
    let mut lhs = parse_guard_and(cur)?;
    while cur.eat_punct('|') {
        lhs = BoolExpr::or(lhs, parse_guard_and(cur)?);
    }
    Ok(lhs)
}

fn parse_guard_and(cur: &mut Cursor) -> Result<BoolExpr, HoaError> {
    let mut lhs = parse_guard_unary(cur)?;
    while cur.eat_punct('&') {
        lhs = BoolExpr::and(lhs, parse_guard_unary(cur)?);
    }
    Ok(lhs)
}

fn parse_guard_unary(cur: &mut Cursor) -> Result<BoolExpr, HoaError> {
    let line = cur.line();
    match cur.next() {
        Some(Tok::Punct('!')) => Ok(BoolExpr::not(parse_guard_unary(cur)?)),
        Some(Tok::Punct('(')) => {
            let e = parse_guard(cur)?;
            cur.punct(')')?;
            Ok(e)
        }
        Some(Tok::Ident(w)) if w == "t" => Ok(BoolExpr::Const(true)),
        Some(Tok::Ident(w)) if w == "f" => Ok(BoolExpr::Const(false)),
        Some(Tok::Int(n)) => Ok(BoolExpr::Var(n)),
        Some(Tok::Punct('@')) => Err(HoaError::UnsupportedFeature("aliases".into())),
        _ => Err(syntax(line, "malformed guard")),
    }
}

/// Parses an automaton in the supported HOA subset and validates it.
pub fn parse_hoa(text: &str) -> Result<(DeterministicOmegaAutomaton, ApTable), HoaError> {
    let mut cur = Cursor {
        toks: tokenize(text)?,
        pos: 0,
    };

    let mut version = None;
    let mut num_states = None;
    let mut start = None;
    let mut aps = None;
    let mut acc_name = None;
    let mut acceptance = None;

    loop {
        let line = cur.line();
        match cur.next() {
            Some(Tok::Body) => break,
            Some(Tok::Header(h)) => {
                let args = cur.header_args();
                match h.as_str() {
                    "HOA" => version = Some(render_tokens(&args)),
                    "States" => match args.as_slice() {
                        [(Tok::Int(n), _)] => num_states = Some(*n),
                        _ => return Err(syntax(line, "States: expects one integer")),
                    },
                    "Start" => {
                        if start.is_some() {
                            return Err(HoaError::UnsupportedFeature(
                                "multiple initial states".into(),
                            ));
                        }
                        match args.as_slice() {
                            [(Tok::Int(n), _)] => start = Some(*n),
                            _ => {
                                return Err(HoaError::UnsupportedFeature(
                                    "initial state conjunctions".into(),
                                ))
                            }
                        }
                    }
                    "AP" => {
                        let Some((Tok::Int(k), _)) = args.first() else {
                            return Err(syntax(line, "AP: expects a count"));
                        };
                        let names: Vec<String> = args[1..]
                            .iter()
                            .map(|(t, _)| match t {
                                Tok::Str(s) => Ok(s.clone()),
                                _ => Err(syntax(line, "AP names must be quoted")),
                            })
                            .collect::<Result<_, _>>()?;
                        if names.len() != *k {
                            return Err(syntax(
                                line,
                                format!("AP: declares {k} names, found {}", names.len()),
                            ));
                        }
                        aps = Some(ApTable::new(names)?);
                    }
                    "acc-name" => acc_name = Some(parse_acc_name(&args)?),
                    "Acceptance" => acceptance = Some((render_tokens(&args), line)),
                    "Alias" => return Err(HoaError::UnsupportedFeature("aliases".into())),
                    other if other.starts_with(|c: char| c.is_ascii_lowercase()) => {}
                    other => return Err(HoaError::UnsupportedFeature(format!("header {other}"))),
                }
            }
            _ => return Err(syntax(line, "expected a header or --BODY--")),
        }
    }

    let header_line = 1;
    if version.as_deref() != Some("v1") {
        return Err(syntax(
            header_line,
            "missing or unsupported HOA version (expected v1)",
        ));
    }
    let n = num_states.ok_or_else(|| syntax(header_line, "missing States: header"))?;
    let start = start.ok_or_else(|| syntax(header_line, "missing Start: header"))?;
    let aps = aps.unwrap_or_default();
    let acc_name = acc_name.ok_or_else(|| syntax(header_line, "missing acc-name: header"))?;
    let (acc_text, acc_line) =
        acceptance.ok_or_else(|| syntax(header_line, "missing Acceptance: header"))?;
    let with_sink = match acc_name {
        AccName::Safety => squash(&acc_text) == squash(&acceptance_line(&AccName::Safety, true)),
        _ => false,
    };
    if squash(&acc_text) != squash(&acceptance_line(&acc_name, with_sink)) {
        return Err(syntax(acc_line, "Acceptance: does not match acc-name"));
    }

    let mut edges: Vec<Option<Vec<Edge>>> = vec![None; n];
    let mut marks: Vec<Vec<usize>> = vec![Vec::new(); n];
    loop {
        let line = cur.line();
        match cur.next() {
            Some(Tok::End) => break,
            Some(Tok::Header(h)) if h == "State" => {
                if cur.peek() == Some(&Tok::Punct('[')) {
                    return Err(HoaError::UnsupportedFeature("state labels".into()));
                }
                let q = cur.int("state index")?;
                if q >= n {
                    return Err(syntax(line, format!("state {q} out of range")));
                }
                if edges[q].is_some() {
                    return Err(syntax(line, format!("state {q} defined twice")));
                }
                if let Some(Tok::Str(_)) = cur.peek() {
                    cur.next();
                }
                marks[q] = cur.acc_sig()?;
                let mut out = Vec::new();
                while cur.peek() == Some(&Tok::Punct('[')) {
                    cur.next();
                    let guard = parse_guard(&mut cur)?;
                    cur.punct(']')?;
                    let target = cur.int("edge target")?;
                    if cur.peek() == Some(&Tok::Punct('&')) {
                        return Err(HoaError::UnsupportedFeature("alternating edges".into()));
                    }
                    if cur.peek() == Some(&Tok::Punct('{')) {
                        return Err(HoaError::UnsupportedFeature(
                            "transition-based acceptance".into(),
                        ));
                    }
                    out.push(Edge::new(guard, target));
                }
                if let Some(Tok::Int(_)) = cur.peek() {
                    return Err(HoaError::UnsupportedFeature("implicit edge labels".into()));
                }
                edges[q] = Some(out);
            }
            _ => return Err(syntax(line, "expected State: or --END--")),
        }
    }
    if cur.peek().is_some() {
        return Err(syntax(cur.line(), "trailing content after --END--"));
    }

    let in_set = |set: usize| -> StateSet { (0..n).filter(|q| marks[*q].contains(&set)).collect() };
    let num_sets = match &acc_name {
        AccName::Buchi | AccName::CoBuchi => 1,
        AccName::Rabin1 => 2,
        AccName::Parity(k) => *k,
        AccName::Safety => usize::from(with_sink),
    };
    for (q, m) in marks.iter().enumerate() {
        if let Some(&bad) = m.iter().find(|&&s| s >= num_sets) {
            return Err(syntax(
                acc_line,
                format!("state {q} uses undeclared acceptance set {bad}"),
            ));
        }
    }
    let acceptance = match acc_name {
        AccName::Buchi => Acceptance::Buchi {
            accepting: in_set(0),
        },
        AccName::CoBuchi => Acceptance::CoBuchi {
            rejecting: in_set(0),
        },
        AccName::Rabin1 => {
            let fin = in_set(0);
            Acceptance::OnePairRabin {
                allowed: (0..n).filter(|q| !fin.contains(q)).collect(),
                recurring: in_set(1),
            }
        }
        AccName::Safety => Acceptance::Safety {
            sink: if with_sink {
                in_set(0)
            } else {
                BTreeSet::new()
            },
        },
        AccName::Parity(_) => {
            let colours = marks
                .iter()
                .enumerate()
                .map(|(q, m)| match m.as_slice() {
                    [c] => Ok(*c as u32),
                    _ => Err(HoaError::UnsupportedFeature(format!(
                        "parity state {q} must carry exactly one colour"
                    ))),
                })
                .collect::<Result<_, _>>()?;
            Acceptance::Parity { colours }
        }
    };
    let edges = edges.into_iter().map(Option::unwrap_or_default).collect();
    let aut = DeterministicOmegaAutomaton::new(aps.len(), start, edges, acceptance)?;
    Ok((aut, aps))
}

/// Parity automata are written with at least this many colours, so a
/// product always reads `parity max even 5` whichever colours it uses.
pub const MIN_PARITY_COLOURS: usize = 5;

/// Writes `aut` as HOA. Guards are regenerated canonically from the
/// transition function, one edge per distinct successor.
pub fn emit_hoa(aut: &DeterministicOmegaAutomaton, aps: &ApTable) -> Result<String, HoaError> {
    let n = aut.num_states();
    let (name, marks): (AccName, Vec<Vec<usize>>) = match aut.acceptance() {
        Acceptance::Safety { sink } => (
            AccName::Safety,
            (0..n)
                .map(|q| if sink.contains(&q) { vec![0] } else { vec![] })
                .collect(),
        ),
        Acceptance::Buchi { accepting } => (
            AccName::Buchi,
            (0..n)
                .map(|q| {
                    if accepting.contains(&q) {
                        vec![0]
                    } else {
                        vec![]
                    }
                })
                .collect(),
        ),
        Acceptance::CoBuchi { rejecting } => (
            AccName::CoBuchi,
            (0..n)
                .map(|q| {
                    if rejecting.contains(&q) {
                        vec![0]
                    } else {
                        vec![]
                    }
                })
                .collect(),
        ),
        Acceptance::OnePairRabin { allowed, recurring } => (
            AccName::Rabin1,
            (0..n)
                .map(|q| {
                    let mut m = Vec::new();
                    if !allowed.contains(&q) {
                        m.push(0);
                    }
                    if recurring.contains(&q) {
                        m.push(1);
                    }
                    m
                })
                .collect(),
        ),
        Acceptance::Parity { colours } => {
            let needed = colours.iter().max().map_or(0, |&c| c as usize + 1);
            let k = needed.max(MIN_PARITY_COLOURS);
            (
                AccName::Parity(k),
                colours.iter().map(|&c| vec![c as usize]).collect(),
            )
        }
        other => {
            return Err(HoaError::UnsupportedFeature(format!(
                "{} acceptance cannot be written as HOA",
                other.kind()
            )))
        }
    };
    let with_sink = matches!(aut.acceptance(), Acceptance::Safety { sink } if !sink.is_empty());
    let acc_name = match &name {
        AccName::Buchi => "Buchi".to_owned(),
        AccName::CoBuchi => "co-Buchi".to_owned(),
        AccName::Rabin1 => "Rabin 1".to_owned(),
        AccName::Parity(k) => format!("parity max even {k}"),
        AccName::Safety => "safety".to_owned(),
    };

    let mut out = String::new();
    writeln!(out, "HOA: v1").unwrap();
    writeln!(out, "States: {n}").unwrap();
    writeln!(out, "Start: {}", aut.initial()).unwrap();
    write!(out, "AP: {}", aps.len()).unwrap();
    for name in aps.names() {
        write!(out, " \"{name}\"").unwrap();
    }
    out.push('\n');
    writeln!(out, "acc-name: {acc_name}").unwrap();
    writeln!(out, "Acceptance: {}", acceptance_line(&name, with_sink)).unwrap();
    writeln!(
        out,
        "properties: trans-labels explicit-labels state-acc deterministic complete"
    )
    .unwrap();
    writeln!(out, "--BODY--").unwrap();
    for q in 0..n {
        write!(out, "State: {q}").unwrap();
        if !marks[q].is_empty() {
            let ids: Vec<String> = marks[q].iter().map(|m| m.to_string()).collect();
            write!(out, " {{{}}}", ids.join(" ")).unwrap();
        }
        out.push('\n');
        let row: Vec<usize> = aut.row(q).iter().map(|&t| t as usize).collect();
        for edge in guards_for_row(&row) {
            writeln!(out, "[{}] {}", edge.guard.to_hoa(), edge.target).unwrap();
        }
    }
    writeln!(out, "--END--").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ap::Letter;

    const MINIMAL: &str = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"p\"\nacc-name: Buchi\n\
        Acceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n";

    #[test]
    fn minimal_buchi_document() {
        let (aut, aps) = parse_hoa(MINIMAL).unwrap();
        assert_eq!(aut.num_states(), 1);
        assert_eq!(aps.names(), &["p".to_owned()]);
        assert_eq!(
            aut.acceptance(),
            &Acceptance::Buchi {
                accepting: [0].into()
            }
        );
    }

    #[test]
    fn unsupported_acceptance_name() {
        let doc = MINIMAL.replace("acc-name: Buchi", "acc-name: Streett 1");
        assert!(matches!(
            parse_hoa(&doc),
            Err(HoaError::UnsupportedFeature(_))
        ));
        let doc = MINIMAL.replace("acc-name: Buchi", "acc-name: generalized-Buchi 2");
        assert!(matches!(
            parse_hoa(&doc),
            Err(HoaError::UnsupportedFeature(_))
        ));
    }

    #[test]
    fn nondeterministic_document_fails_validation() {
        let doc = MINIMAL.replace("[t] 0\n", "[t] 0\n[0] 0\n");
        assert!(matches!(parse_hoa(&doc), Err(HoaError::Validation(_))));
    }

    #[test]
    fn mismatched_acceptance_line() {
        let doc = MINIMAL.replace("1 Inf(0)", "1 Fin(0)");
        assert!(matches!(parse_hoa(&doc), Err(HoaError::Syntax { .. })));
    }

    #[test]
    fn rejected_features() {
        let trans_acc = MINIMAL.replace("[t] 0\n", "[t] 0 {0}\n");
        assert!(matches!(
            parse_hoa(&trans_acc),
            Err(HoaError::UnsupportedFeature(_))
        ));
        let implicit = MINIMAL.replace("[t] 0\n", "0\n");
        assert!(matches!(
            parse_hoa(&implicit),
            Err(HoaError::UnsupportedFeature(_))
        ));
        let two_starts = MINIMAL.replace("Start: 0\n", "Start: 0\nStart: 0\n");
        assert!(matches!(
            parse_hoa(&two_starts),
            Err(HoaError::UnsupportedFeature(_))
        ));
        let truncated = MINIMAL.replace("--END--\n", "");
        assert!(matches!(
            parse_hoa(&truncated),
            Err(HoaError::Syntax { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let doc = MINIMAL.replace("[t] 0", "[t & ] 0");
        match parse_hoa(&doc) {
            Err(HoaError::Syntax { line, .. }) => assert_eq!(line, 9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parity_condition_shape() {
        assert_eq!(
            parity_condition(5),
            "Inf(4) | (Fin(3) & (Inf(2) | (Fin(1) & Inf(0))))"
        );
        assert_eq!(parity_condition(1), "Inf(0)");
        assert_eq!(parity_condition(2), "Fin(1) & Inf(0)");
    }

    #[test]
    fn rabin_sets_follow_fin_inf_layout() {
        let doc = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"a\"\nacc-name: Rabin 1\n\
            Acceptance: 2 Fin(0) & Inf(1)\n--BODY--\nState: 0 {0}\n[0] 1\n[!0] 0\n\
            State: 1 {1}\n[0] 1\n[!0] 0\n--END--\n";
        let (aut, _) = parse_hoa(doc).unwrap();
        assert_eq!(
            aut.acceptance(),
            &Acceptance::OnePairRabin {
                allowed: [1].into(),
                recurring: [1].into()
            }
        );
        let text = emit_hoa(&aut, &ApTable::new(["a"]).unwrap()).unwrap();
        assert!(text.contains("State: 0 {0}\n"));
        assert!(text.contains("State: 1 {1}\n"));
    }

    #[test]
    fn emitted_guards_use_restricted_grammar() {
        let table: Vec<usize> = (0..4 * 8).map(|i| (i * 7 + i / 8) % 4).collect();
        let aut = DeterministicOmegaAutomaton::from_table(
            3,
            0,
            &table,
            Acceptance::Parity {
                colours: vec![0, 1, 2, 3],
            },
        )
        .unwrap();
        let aps = ApTable::new(["a", "b", "c"]).unwrap();
        let text = emit_hoa(&aut, &aps).unwrap();
        assert!(text.contains("acc-name: parity max even 5\n"));
        let body = &text[text.find("--BODY--").unwrap()..];
        for line in body.lines().filter(|l| l.starts_with('[')) {
            let guard = &line[1..line.find(']').unwrap()];
            assert!(
                guard.chars().all(|c| "t!&|() 0123456789".contains(c)),
                "bad guard {guard}"
            );
        }
        let (back, back_aps) = parse_hoa(&text).unwrap();
        assert_eq!(back_aps, aps);
        for q in 0..4 {
            for l in 0..8 {
                assert_eq!(back.successor(q, Letter(l)), aut.successor(q, Letter(l)));
            }
        }
        assert_eq!(emit_hoa(&back, &back_aps).unwrap(), text);
    }

    #[test]
    fn safety_header_and_sink() {
        let aut = DeterministicOmegaAutomaton::from_table(
            1,
            0,
            &[1, 0, 1, 1],
            Acceptance::Safety { sink: [1].into() },
        )
        .unwrap();
        let aps = ApTable::new(["p"]).unwrap();
        let text = emit_hoa(&aut, &aps).unwrap();
        assert!(text.contains("acc-name: safety\nAcceptance: 1 Fin(0)\n"));
        let (back, _) = parse_hoa(&text).unwrap();
        assert_eq!(back.acceptance(), aut.acceptance());

        let free = aut
            .with_acceptance(Acceptance::Safety {
                sink: StateSet::new(),
            })
            .unwrap();
        let text = emit_hoa(&free, &aps).unwrap();
        assert!(text.contains("acc-name: safety\nAcceptance: 0 t\n"));
        assert_eq!(parse_hoa(&text).unwrap().0.acceptance(), free.acceptance());
    }
}
