use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A power `X_generator^exponent` of one free generator (1-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i32,
}

impl Letter {
    pub fn new(generator: usize, exponent: i32) -> Self {
        Self {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.generator, -self.exponent)
    }
}

/// A freely reduced word in the generators of a free group.
///
/// Adjacent letters never share a generator and no exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Freely reduces `letters`: merges neighbours on the same generator and
    /// drops zero exponents, cascading as needed.
    ///
    /// Panics on generator index 0; indices are 1-based.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            assert!(letter.generator >= 1, "generator indices are 1-based");
            if letter.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.generator == letter.generator => {
                    last.exponent += letter.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(letter),
            }
        }
        Self { letters: out }
    }

    /// Word from `(generator, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i32)]) -> Self {
        Self::new(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    /// Word from signed single letters: `k` is `X_k`, `-k` is `X_k^-1`.
    pub fn from_signed(tokens: &[i64]) -> Self {
        Self::new(
            tokens
                .iter()
                .map(|&t| Letter::new(t.unsigned_abs() as usize, if t < 0 { -1 } else { 1 })),
        )
    }

    /// Parses whitespace-separated signed generator indices, e.g. `"1 2 -1"`
    /// for `X1 X2 X1^-1`.
    pub fn parse_signed(input: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (pos, tok) in input.split_whitespace().enumerate() {
            let value: i64 = tok.parse().map_err(|_| {
                Error::Parse(format!("token {} `{tok}` is not a signed integer", pos + 1))
            })?;
            if value == 0 {
                return Err(Error::Parse(format!(
                    "token {} `{tok}`: generator indices start at 1",
                    pos + 1
                )));
            }
            tokens.push(value);
        }
        Ok(Self::from_signed(&tokens))
    }

    /// Inverse of [`GroupWord::parse_signed`]; powers are written out as
    /// repeated letters.
    pub fn to_signed_string(&self) -> String {
        self.expanded()
            .map(|(g, s)| (g as i64 * s as i64).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length counted in single letters, `sum |exponent|`.
    pub fn length(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.exponent.unsigned_abs() as usize)
            .sum()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    /// Single letters `(generator, ±1)` in order.
    pub fn expanded(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.letters.iter().flat_map(|l| {
            let sign = if l.exponent < 0 { -1 } else { 1 };
            std::iter::repeat_n((l.generator, sign), l.exponent.unsigned_abs() as usize)
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).copied())
    }

    /// Relabels generators through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(
            self.letters
                .iter()
                .map(|l| Letter::new(f(l.generator), l.exponent)),
        )
    }

    /// Cyclically reduced form: repeatedly folds the last letter into the
    /// first while they share a generator.
    pub fn cyclically_reduced(&self) -> Self {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 && letters[0].generator == letters[letters.len() - 1].generator {
            let last = letters.pop().unwrap();
            letters[0].exponent += last.exponent;
            if letters[0].exponent == 0 {
                letters.remove(0);
            }
        }
        Self { letters }
    }

    /// Rotation by `k` letters: `a_k ... a_n a_1 ... a_{k-1}`.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self::new(letters)
    }

    /// Lexicographically least rotation of the cyclically reduced word.
    /// Cyclically conjugate words share it, and so do their traces.
    pub fn cyclic_normal_form(&self) -> Self {
        let reduced = self.cyclically_reduced();
        let n = reduced.letters.len();
        (0..n.max(1))
            .map(|k| {
                let mut l = reduced.letters.clone();
                if n > 0 {
                    l.rotate_left(k);
                }
                l
            })
            .min()
            .map(|letters| Self { letters })
            .unwrap_or_default()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X{}", l.generator)?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_signed(s)
    }
}
