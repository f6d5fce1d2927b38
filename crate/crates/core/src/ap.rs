//! Atomic propositions and the letters of the alphabet `2^AP`.

use std::fmt;

use thiserror::Error;

/// Largest AP table accepted. Letters are enumerated explicitly, so anything
/// beyond this is far outside what an explicit-state product can handle.
pub const MAX_APS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("invalid atomic proposition name {0:?}")]
    InvalidName(String),
    #[error("duplicate atomic proposition {0:?}")]
    Duplicate(String),
    #[error("too many atomic propositions ({0}, at most {MAX_APS} supported)")]
    TooMany(usize),
    #[error("unknown atomic proposition {0:?}")]
    Unknown(String),
}

/// A concrete letter: a subset of the AP table, bit `i` standing for `names[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, ap: usize) -> bool {
        self.0 >> ap & 1 == 1
    }

    #[inline]
    pub fn with(self, ap: usize) -> Letter {
        Letter(self.0 | 1 << ap)
    }

    #[inline]
    pub fn union(self, other: Letter) -> Letter {
        Letter(self.0 | other.0)
    }
}

/// Ordered list of distinct proposition names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ApTable {
    names: Vec<String>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ApTable {
    pub fn new<I, S>(names: I) -> Result<Self, ApError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = ApTable::default();
        for name in names {
            table.push(name.into())?;
        }
        Ok(table)
    }

    fn push(&mut self, name: String) -> Result<(), ApError> {
        if !is_valid_name(&name) {
            return Err(ApError::InvalidName(name));
        }
        if self.names.contains(&name) {
            return Err(ApError::Duplicate(name));
        }
        if self.names.len() == MAX_APS {
            return Err(ApError::TooMany(self.names.len() + 1));
        }
        self.names.push(name);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of letters, `2^|AP|`.
    pub fn num_letters(&self) -> usize {
        1 << self.names.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.num_letters() as u32).map(Letter)
    }

    /// Names of the propositions set in `letter`, in table order.
    pub fn letter_names(&self, letter: Letter) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| letter.contains(i))
            .map(|i| self.name(i))
            .collect()
    }

    pub fn letter_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Letter, ApError> {
        names.iter().try_fold(Letter::EMPTY, |acc, name| {
            let name = name.as_ref();
            self.index_of(name)
                .map(|i| acc.with(i))
                .ok_or_else(|| ApError::Unknown(name.to_owned()))
        })
    }

    /// Concatenation `self ++ other`; fails on overlapping names.
    pub fn concat(&self, other: &ApTable) -> Result<ApTable, ApError> {
        ApTable::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    pub fn display_letter(&self, letter: Letter) -> LetterDisplay<'_> {
        LetterDisplay { aps: self, letter }
    }
}

/// Renders a letter as `{a,b}`.
pub struct LetterDisplay<'a> {
    aps: &'a ApTable,
    letter: Letter,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.aps.letter_names(self.letter).join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_validated() {
        assert!(ApTable::new(["request", "grant", "_x1"]).is_ok());
        assert_eq!(
            ApTable::new(["1abc"]),
            Err(ApError::InvalidName("1abc".into()))
        );
        assert_eq!(ApTable::new([""]), Err(ApError::InvalidName("".into())));
        assert_eq!(
            ApTable::new(["a", "b", "a"]),
            Err(ApError::Duplicate("a".into()))
        );
    }

    #[test]
    fn letter_bits_follow_table_order() {
        let aps = ApTable::new(["p", "q", "r"]).unwrap();
        let l = aps.letter_from_names(&["r", "p"]).unwrap();
        assert_eq!(l, Letter(0b101));
        assert_eq!(aps.letter_names(l), vec!["p", "r"]);
        assert_eq!(aps.display_letter(l).to_string(), "{p,r}");
        assert_eq!(aps.num_letters(), 8);
        assert!(aps.letter_from_names(&["z"]).is_err());
    }
}
