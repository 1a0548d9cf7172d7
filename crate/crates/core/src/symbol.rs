//! The three-element symbol semiring `{0, *, ?}`.
//!
//! `0` stands for a fixed zero, `*` for an arbitrary nonzero real and `?` for
//! an arbitrary real. Addition and multiplication are chosen so that the sum
//! (product) of any two reals represented by the operands is represented by
//! the result.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Fixed zero.
    Zero,
    /// Nonzero.
    Star,
    /// Arbitrary (zero or nonzero).
    Quest,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::Star, Symbol::Quest];

    /// `true` for `*` and `?`, the entries that may be nonzero.
    #[inline]
    pub fn may_be_nonzero(self) -> bool {
        self != Symbol::Zero
    }

    /// `true` for `0` and `?`, the entries that may be zero.
    #[inline]
    pub fn may_be_zero(self) -> bool {
        self != Symbol::Star
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::Star => '*',
            Symbol::Quest => '?',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '*' => Some(Symbol::Star),
            '?' => Some(Symbol::Quest),
            _ => None,
        }
    }
}

/// Symbol addition: `0` is the identity, `* + * = ?`, `?` absorbs.
#[inline]
pub fn add_symbol(a: Symbol, b: Symbol) -> Symbol {
    use Symbol::*;
    match (a, b) {
        (Zero, x) | (x, Zero) => x,
        _ => Quest,
    }
}

/// Symbol multiplication: `0` absorbs, `*` is the identity, `? · ? = ?`.
#[inline]
pub fn mul_symbol(a: Symbol, b: Symbol) -> Symbol {
    use Symbol::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (Star, x) | (x, Star) => x,
        (Quest, Quest) => Quest,
    }
}

impl Add for Symbol {
    type Output = Symbol;

    fn add(self, rhs: Symbol) -> Symbol {
        add_symbol(self, rhs)
    }
}

impl Mul for Symbol {
    type Output = Symbol;

    fn mul(self, rhs: Symbol) -> Symbol {
        mul_symbol(self, rhs)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next().and_then(Symbol::from_char), chars.next()) {
            (Some(sym), None) => Ok(sym),
            _ => Err(Error::Input(format!(
                "invalid pattern symbol {s:?}, expected one of 0 * ?"
            ))),
        }
    }
}
