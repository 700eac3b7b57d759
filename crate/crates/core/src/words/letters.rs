use std::fmt;

use serde::{Deserialize, Serialize};

/// Collapsed letter alphabet Σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sigma {
    P,
    Q,
    U,
    W,
    R,
    X,
    S,
}

impl Sigma {
    pub const ALL: [Sigma; 7] = [Sigma::P, Sigma::Q, Sigma::U, Sigma::W, Sigma::R, Sigma::X, Sigma::S];

    pub fn as_char(self) -> char {
        match self {
            Sigma::P => 'P',
            Sigma::Q => 'Q',
            Sigma::U => 'U',
            Sigma::W => 'W',
            Sigma::R => 'R',
            Sigma::X => 'X',
            Sigma::S => 'S',
        }
    }

    pub fn from_char(c: char) -> Option<Sigma> {
        Sigma::ALL.into_iter().find(|s| s.as_char() == c)
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a Σ-word such as `"PQUWS"`.
pub fn sigma_word(s: &str) -> Option<Vec<Sigma>> {
    s.chars().map(Sigma::from_char).collect()
}

pub fn sigma_string(w: &[Sigma]) -> String {
    w.iter().map(|s| s.as_char()).collect()
}

/// The twelve letter patterns before collapsing primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LetterPattern {
    P,
    Q,
    S,
    Y,
    W1,
    W2,
    U1,
    U2,
    X1,
    X2,
    R1,
    R2,
}

impl LetterPattern {
    pub const ALL: [LetterPattern; 12] = [
        LetterPattern::P,
        LetterPattern::Q,
        LetterPattern::S,
        LetterPattern::Y,
        LetterPattern::W1,
        LetterPattern::W2,
        LetterPattern::U1,
        LetterPattern::U2,
        LetterPattern::X1,
        LetterPattern::X2,
        LetterPattern::R1,
        LetterPattern::R2,
    ];

    /// Drops the prime. `Y` has no image: it never occurs on a path from Λ.
    pub fn collapse(self) -> Option<Sigma> {
        use LetterPattern::*;
        Some(match self {
            P => Sigma::P,
            Q => Sigma::Q,
            S => Sigma::S,
            Y => return None,
            W1 | W2 => Sigma::W,
            U1 | U2 => Sigma::U,
            X1 | X2 => Sigma::X,
            R1 | R2 => Sigma::R,
        })
    }

    /// The single-prime and double-prime variant of a paired letter.
    pub fn primes(s: Sigma) -> Option<(LetterPattern, LetterPattern)> {
        use LetterPattern::*;
        match s {
            Sigma::W => Some((W1, W2)),
            Sigma::U => Some((U1, U2)),
            Sigma::X => Some((X1, X2)),
            Sigma::R => Some((R1, R2)),
            _ => None,
        }
    }
}

impl fmt::Display for LetterPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LetterPattern::*;
        let s = match self {
            P => "P",
            Q => "Q",
            S => "S",
            Y => "Y",
            W1 => "W'",
            W2 => "W''",
            U1 => "U'",
            U2 => "U''",
            X1 => "X'",
            X2 => "X''",
            R1 => "R'",
            R2 => "R''",
        };
        f.write_str(s)
    }
}

/// What sits at the path's end: a number pattern `1..=8`, or `$` for the pac.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Terminal {
    Number(u8),
    Pac,
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Number(k) => write!(f, "{k}"),
            Terminal::Pac => f.write_str("$"),
        }
    }
}

/// Σ-word of the gadgets left of the end, followed by the terminal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PatternWord {
    pub sigma_word: Vec<Sigma>,
    pub terminal: Option<Terminal>,
}

impl fmt::Display for PatternWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&sigma_string(&self.sigma_word))?;
        if let Some(t) = self.terminal {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gamma {
    A,
    T,
    G,
    C,
}

impl Gamma {
    pub fn as_char(self) -> char {
        match self {
            Gamma::A => 'A',
            Gamma::T => 'T',
            Gamma::G => 'G',
            Gamma::C => 'C',
        }
    }
}

/// A word of K = {A,T,G}*{C,ε}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GammaWord(pub Vec<Gamma>);

impl GammaWord {
    pub fn parse(s: &str) -> Option<GammaWord> {
        let v: Option<Vec<Gamma>> = s
            .chars()
            .map(|c| match c {
                'A' => Some(Gamma::A),
                'T' => Some(Gamma::T),
                'G' => Some(Gamma::G),
                'C' => Some(Gamma::C),
                _ => None,
            })
            .collect();
        v.map(GammaWord).filter(|w| w.in_k())
    }

    /// Membership in K: `C` may only appear last.
    pub fn in_k(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &g)| g != Gamma::C || i + 1 == self.0.len())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GammaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|g| g.as_char()).collect();
        f.write_str(&s)
    }
}

impl From<GammaWord> for String {
    fn from(w: GammaWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for GammaWord {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        GammaWord::parse(&s).ok_or_else(|| format!("{s:?} is not a word of K"))
    }
}
