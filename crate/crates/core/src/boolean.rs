//! Boolean formulas over AP indices, used both as automaton edge guards and
//! as the propositional layer of the LTL fragment.

use std::fmt;

use crate::ap::{ApTable, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Var(usize),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(index: usize) -> Self {
        BoolExpr::Var(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Iff(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, letter: Letter) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(i) => letter.contains(*i),
            BoolExpr::Not(e) => !e.eval(letter),
            BoolExpr::And(a, b) => a.eval(letter) && b.eval(letter),
            BoolExpr::Or(a, b) => a.eval(letter) || b.eval(letter),
            BoolExpr::Implies(a, b) => !a.eval(letter) || b.eval(letter),
            BoolExpr::Iff(a, b) => a.eval(letter) == b.eval(letter),
        }
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            BoolExpr::Const(_) => None,
            BoolExpr::Var(i) => Some(*i),
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(a, b)
            | BoolExpr::Or(a, b)
            | BoolExpr::Implies(a, b)
            | BoolExpr::Iff(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Renames every variable through `f`.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> BoolExpr {
        match self {
            BoolExpr::Const(b) => BoolExpr::Const(*b),
            BoolExpr::Var(i) => BoolExpr::Var(f(*i)),
            BoolExpr::Not(e) => BoolExpr::not(e.map_vars(f)),
            BoolExpr::And(a, b) => BoolExpr::and(a.map_vars(f), b.map_vars(f)),
            BoolExpr::Or(a, b) => BoolExpr::or(a.map_vars(f), b.map_vars(f)),
            BoolExpr::Implies(a, b) => BoolExpr::implies(a.map_vars(f), b.map_vars(f)),
            BoolExpr::Iff(a, b) => BoolExpr::iff(a.map_vars(f), b.map_vars(f)),
        }
    }

    /// Builds a guard that holds exactly on the letters `l` with
    /// `members[l.index()]`, by Shannon expansion on the lowest variable
    /// first. `members.len()` must be `2^num_vars`.
    pub fn from_letter_set(members: &[bool]) -> BoolExpr {
        debug_assert!(members.len().is_power_of_two());
        let num_vars = members.len().trailing_zeros() as usize;
        shannon(members, 0, num_vars)
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Iff(..) => 1,
            BoolExpr::Implies(..) => 2,
            BoolExpr::Or(..) => 3,
            BoolExpr::And(..) => 4,
            BoolExpr::Not(_) | BoolExpr::Var(_) | BoolExpr::Const(_) => 5,
        }
    }

    /// Renders with proposition names, e.g. `request -> grant`.
    pub fn display_named<'a>(&'a self, aps: &'a ApTable) -> NamedDisplay<'a> {
        NamedDisplay { expr: self, aps }
    }

    /// Renders in HOA label syntax. Implications and equivalences are
    /// expanded since HOA labels only have `!`, `&` and `|`.
    pub fn to_hoa(&self) -> String {
        let mut out = String::new();
        write_hoa(&self.lower(), &mut out);
        out
    }

    /// Rewrites `->` and `<->` into `!`, `&`, `|`.
    fn lower(&self) -> BoolExpr {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => self.clone(),
            BoolExpr::Not(e) => BoolExpr::not(e.lower()),
            BoolExpr::And(a, b) => BoolExpr::and(a.lower(), b.lower()),
            BoolExpr::Or(a, b) => BoolExpr::or(a.lower(), b.lower()),
            BoolExpr::Implies(a, b) => BoolExpr::or(BoolExpr::not(a.lower()), b.lower()),
            BoolExpr::Iff(a, b) => {
                let (a, b) = (a.lower(), b.lower());
                BoolExpr::or(
                    BoolExpr::and(a.clone(), b.clone()),
                    BoolExpr::and(BoolExpr::not(a), BoolExpr::not(b)),
                )
            }
        }
    }
}

fn shannon(members: &[bool], var: usize, num_vars: usize) -> BoolExpr {
    if members.iter().all(|&m| m) {
        return BoolExpr::Const(true);
    }
    if members.iter().all(|&m| !m) {
        return BoolExpr::Const(false);
    }
    debug_assert!(var < num_vars);
    // Letters are indexed with `var` as the lowest remaining bit.
    let low: Vec<bool> = members.iter().step_by(2).copied().collect();
    let high: Vec<bool> = members.iter().skip(1).step_by(2).copied().collect();
    if low == high {
        return shannon(&low, var + 1, num_vars);
    }
    let pos = BoolExpr::Var(var);
    let neg = BoolExpr::not(BoolExpr::Var(var));
    let hi = shannon(&high, var + 1, num_vars);
    let lo = shannon(&low, var + 1, num_vars);
    match (hi, lo) {
        (BoolExpr::Const(true), BoolExpr::Const(false)) => pos,
        (BoolExpr::Const(false), BoolExpr::Const(true)) => neg,
        (BoolExpr::Const(true), lo) => BoolExpr::or(pos, lo),
        (hi, BoolExpr::Const(true)) => BoolExpr::or(neg, hi),
        (BoolExpr::Const(false), lo) => BoolExpr::and(neg, lo),
        (hi, BoolExpr::Const(false)) => BoolExpr::and(pos, hi),
        (hi, lo) => BoolExpr::or(BoolExpr::and(pos, hi), BoolExpr::and(neg, lo)),
    }
}

fn write_hoa(e: &BoolExpr, out: &mut String) {
    let child = |c: &BoolExpr, min: u8, out: &mut String| {
        if c.precedence() < min {
            out.push('(');
            write_hoa(c, out);
            out.push(')');
        } else {
            write_hoa(c, out);
        }
    };
    match e {
        BoolExpr::Const(true) => out.push('t'),
        BoolExpr::Const(false) => out.push('f'),
        BoolExpr::Var(i) => out.push_str(&i.to_string()),
        BoolExpr::Not(inner) => {
            out.push('!');
            child(inner, 5, out);
        }
        BoolExpr::And(a, b) => {
            child(a, 4, out);
            out.push_str(" & ");
            child(b, 5, out);
        }
        BoolExpr::Or(a, b) => {
            child(a, 3, out);
            out.push_str(" | ");
            child(b, 4, out);
        }
        BoolExpr::Implies(..) | BoolExpr::Iff(..) => unreachable!("lowered before printing"),
    }
}

pub struct NamedDisplay<'a> {
    expr: &'a BoolExpr,
    aps: &'a ApTable,
}

impl NamedDisplay<'_> {
    fn write(&self, e: &BoolExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |c: &BoolExpr, min: u8, f: &mut fmt::Formatter<'_>| {
            if c.precedence() < min {
                write!(f, "(")?;
                self.write(c, f)?;
                write!(f, ")")
            } else {
                self.write(c, f)
            }
        };
        // Left-associative operators need a strictly tighter right operand;
        // `->` is right-associative and needs a strictly tighter left one.
        match e {
            BoolExpr::Const(true) => write!(f, "true"),
            BoolExpr::Const(false) => write!(f, "false"),
            BoolExpr::Var(i) => write!(f, "{}", self.aps.name(*i)),
            BoolExpr::Not(inner) => {
                write!(f, "!")?;
                child(inner, 5, f)
            }
            BoolExpr::And(a, b) => {
                child(a, 4, f)?;
                write!(f, " & ")?;
                child(b, 5, f)
            }
            BoolExpr::Or(a, b) => {
                child(a, 3, f)?;
                write!(f, " | ")?;
                child(b, 4, f)
            }
            BoolExpr::Implies(a, b) => {
                child(a, 3, f)?;
                write!(f, " -> ")?;
                child(b, 2, f)
            }
            BoolExpr::Iff(a, b) => {
                child(a, 1, f)?;
                write!(f, " <-> ")?;
                child(b, 2, f)
            }
        }
    }
}

impl fmt::Display for NamedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.expr, f)
    }
}
