//! Words in a free group of finite rank.
//!
//! Generators are written as ASCII letters: `a` is the first generator, `b`
//! the second and so on, and the uppercase letter is the inverse. The
//! identity prints as the empty string.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Number of free generators of the ambient free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(u8);

impl Alphabet {
    pub const MAX_RANK: usize = 26;

    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > Self::MAX_RANK {
            return Err(Error::BadAlphabet(rank));
        }
        Ok(Alphabet(rank as u8))
    }

    pub fn rank(self) -> usize {
        self.0 as usize
    }

    /// All letters in the order `1, 1⁻¹, 2, 2⁻¹, …`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (1..=self.rank()).flat_map(|i| [Letter::generator(i), Letter::generator(i).inverse()])
    }

    pub fn check(self, letter: Letter) -> Result<()> {
        if letter.index() > self.rank() {
            return Err(Error::LetterOutOfRange {
                index: letter.index(),
                rank: self.rank(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

/// A generator or its inverse. Stored as a signed, nonzero generator index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i8);

impl Letter {
    /// The `index`-th generator (1-based).
    pub fn generator(index: usize) -> Self {
        assert!(
            (1..=Alphabet::MAX_RANK).contains(&index),
            "generator index {index} out of range"
        );
        Letter(index as i8)
    }

    pub fn new(index: usize, inverse: bool) -> Self {
        let l = Letter::generator(index);
        if inverse {
            l.inverse()
        } else {
            l
        }
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'a'..='z' => Some(Letter::generator(ch as usize - 'a' as usize + 1)),
            'A'..='Z' => Some(Letter::generator(ch as usize - 'A' as usize + 1).inverse()),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.index() as u8 - 1) as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Parses `text` and freely reduces it. The empty string and `"1"` both
    /// denote the identity.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        if text == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            let letter = Letter::from_char(ch).ok_or_else(|| Error::Parse {
                text: text.to_owned(),
                position,
                ch,
            })?;
            alphabet.check(letter)?;
            letters.push(letter);
        }
        Ok(Word::reduce(letters))
    }

    /// Free reduction by a single stack pass.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Largest generator index occurring in the word, 0 for the identity.
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `x · self · x⁻¹`
    pub fn conjugate_by(&self, x: &Word) -> Self {
        x.concat(self).concat(&x.inverse())
    }

    /// Text form; the identity is `"1"` here rather than the empty string.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            "1".to_owned()
        } else {
            self.to_string()
        }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::reduce(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

/// Uniform reduced word of exactly `length` letters, drawn from `rng`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, length: usize, alphabet: Alphabet) -> Word {
    let choices = 2 * alphabet.rank();
    let mut letters: Vec<Letter> = Vec::with_capacity(length);
    for _ in 0..length {
        let letter = match letters.last() {
            None => letter_at(rng.gen_range(0..choices)),
            Some(&prev) => {
                // skip the one letter that would cancel
                let forbidden = slot_of(prev.inverse());
                let mut k = rng.gen_range(0..choices - 1);
                if k >= forbidden {
                    k += 1;
                }
                letter_at(k)
            }
        };
        letters.push(letter);
    }
    Word(letters)
}

/// Seeded version of [`random_word`].
pub fn random_reduced_word(length: usize, alphabet: Alphabet, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word(&mut rng, length, alphabet)
}

fn letter_at(slot: usize) -> Letter {
    Letter::new(slot / 2 + 1, slot % 2 == 1)
}

fn slot_of(l: Letter) -> usize {
    2 * (l.index() - 1) + l.is_inverse() as usize
}
