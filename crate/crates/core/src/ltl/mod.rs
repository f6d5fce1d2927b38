//! LTL pattern frontend.
//!
//! Accepts a small fragment of LTL whose conjuncts each compile to a
//! deterministic automaton with Rabin index one:
//!
//! ```text
//! conjunct := pattern ('&' pattern)*
//! pattern  := 'G' '(' bool '->' 'X' bool ')'   next-step response
//!           | 'G' '(' bool '->' 'F' bool ')'   eventual response
//!           | 'G' bool                         invariant
//!           | 'G' 'F' bool                     recurrence
//!           | 'F' 'G' bool                     persistence
//!           | bool                             initial-state constraint
//! ```
//!
//! Anything else has to be supplied as a HOA automaton.

mod compile;
mod normalize;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::ap::ApTable;
use crate::boolean::BoolExpr;
use parse::Ltl;

pub use compile::compile_pattern;
pub use normalize::{normalize, ClassifiedConjunct, ConjunctKind, NormalizeError, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtlError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("operator {0} is outside the supported pattern fragment; supply this conjunct as a HOA automaton instead")]
    UnsupportedFragment(String),
    #[error("unknown atomic proposition {0:?}")]
    UnknownProposition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternFormula {
    /// `b` on the first letter.
    StateInit(BoolExpr),
    /// `G b`
    Always(BoolExpr),
    /// `GF b`
    Recurrence(BoolExpr),
    /// `FG b`
    Persistence(BoolExpr),
    /// `G (trigger -> X response)`
    NextResponse(BoolExpr, BoolExpr),
    /// `G (trigger -> F response)`
    Response(BoolExpr, BoolExpr),
}

/// Parses `text` and splits its top-level conjunction into patterns.
pub fn parse_ltl(text: &str, aps: &ApTable) -> Result<Vec<PatternFormula>, LtlError> {
    let formula = parse::parse(text)?;
    let mut conjuncts = Vec::new();
    flatten_and(formula, &mut conjuncts);
    conjuncts.iter().map(|c| classify(c, aps)).collect()
}

fn flatten_and(f: Ltl, out: &mut Vec<Ltl>) {
    match f {
        Ltl::And(a, b) => {
            flatten_and(*a, out);
            flatten_and(*b, out);
        }
        other => out.push(other),
    }
}

fn classify(f: &Ltl, aps: &ApTable) -> Result<PatternFormula, LtlError> {
    use PatternFormula as P;
    match f {
        Ltl::Globally(inner) => match inner.as_ref() {
            Ltl::Finally(b) => Ok(P::Recurrence(boolean(b, aps)?)),
            Ltl::Implies(trigger, rhs) => match rhs.as_ref() {
                Ltl::Next(b) => Ok(P::NextResponse(boolean(trigger, aps)?, boolean(b, aps)?)),
                Ltl::Finally(b) => Ok(P::Response(boolean(trigger, aps)?, boolean(b, aps)?)),
                _ => Ok(P::Always(boolean(inner, aps)?)),
            },
            _ => Ok(P::Always(boolean(inner, aps)?)),
        },
        Ltl::Finally(inner) => match inner.as_ref() {
            Ltl::Globally(b) => Ok(P::Persistence(boolean(b, aps)?)),
            _ => Err(LtlError::UnsupportedFragment("F".into())),
        },
        _ => Ok(P::StateInit(boolean(f, aps)?)),
    }
}

/// Lowers a temporal-operator-free subformula.
fn boolean(f: &Ltl, aps: &ApTable) -> Result<BoolExpr, LtlError> {
    let bin = |a: &Ltl, b: &Ltl, mk: fn(BoolExpr, BoolExpr) -> BoolExpr| {
        Ok(mk(boolean(a, aps)?, boolean(b, aps)?))
    };
    match f {
        Ltl::Const(b) => Ok(BoolExpr::Const(*b)),
        Ltl::Atom(name) => aps
            .index_of(name)
            .map(BoolExpr::Var)
            .ok_or_else(|| LtlError::UnknownProposition(name.clone())),
        Ltl::Not(e) => Ok(BoolExpr::not(boolean(e, aps)?)),
        Ltl::And(a, b) => bin(a, b, BoolExpr::and),
        Ltl::Or(a, b) => bin(a, b, BoolExpr::or),
        Ltl::Implies(a, b) => bin(a, b, BoolExpr::implies),
        Ltl::Iff(a, b) => bin(a, b, BoolExpr::iff),
        Ltl::Next(_) => Err(LtlError::UnsupportedFragment("X".into())),
        Ltl::Finally(_) => Err(LtlError::UnsupportedFragment("F".into())),
        Ltl::Globally(_) => Err(LtlError::UnsupportedFragment("G".into())),
        Ltl::Until(..) => Err(LtlError::UnsupportedFragment("U".into())),
    }
}

impl PatternFormula {
    pub fn display<'a>(&'a self, aps: &'a ApTable) -> PatternDisplay<'a> {
        PatternDisplay { pattern: self, aps }
    }
}

/// Prints a pattern so that `parse_ltl` reads back the same AST.
pub struct PatternDisplay<'a> {
    pattern: &'a PatternFormula,
    aps: &'a ApTable,
}

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let aps = self.aps;
        // Operand of a unary temporal operator: atoms bare, the rest wrapped.
        let operand = |b: &BoolExpr| match b {
            BoolExpr::Var(_) | BoolExpr::Const(_) => b.display_named(aps).to_string(),
            _ => format!("({})", b.display_named(aps)),
        };
        match self.pattern {
            PatternFormula::StateInit(b) => match b {
                BoolExpr::Var(_) | BoolExpr::Const(_) | BoolExpr::Not(_) => {
                    write!(f, "{}", b.display_named(aps))
                }
                _ => write!(f, "({})", b.display_named(aps)),
            },
            PatternFormula::Always(b) => write!(f, "G {}", operand(b)),
            PatternFormula::Recurrence(b) => write!(f, "GF {}", operand(b)),
            PatternFormula::Persistence(b) => write!(f, "FG {}", operand(b)),
            PatternFormula::NextResponse(t, r) => {
                write!(f, "G ({} -> X {})", operand(t), operand(r))
            }
            PatternFormula::Response(t, r) => write!(f, "G ({} -> F {})", operand(t), operand(r)),
        }
    }
}

/// Joins patterns back into a single conjunction.
pub fn print_patterns(patterns: &[PatternFormula], aps: &ApTable) -> String {
    patterns
        .iter()
        .map(|p| p.display(aps).to_string())
        .collect::<Vec<_>>()
        .join(" & ")
}
