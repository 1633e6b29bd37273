//! Colored braids, their permutations, and the colored Markov moves.
//!
//! Strands run top to bottom. Letter `+i` is `σ_i`: the strand at position
//! `i` passes *under* the strand at `i + 1` and ends at `i + 1`. Letter `-i`
//! is `σ_i⁻¹`: the strand at `i + 1` passes under the one at `i`. Positions and
//! colors are 0-based in memory and 1-based in text.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} is out of range for {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("{found} colors given for {strands} strands")]
    ColorCount { found: usize, strands: usize },
    #[error("cycle {{{}}} carries colors {{{}}}", join1(.cycle), join1(.colors))]
    NotClosable { cycle: Vec<usize>, colors: Vec<usize> },
    #[error("conjugator has {found} strands, expected {expected}")]
    StrandMismatch { found: usize, expected: usize },
    #[error("conjugator bottom colors ({}) differ from braid top colors ({})", join1(.bottom), join1(.top))]
    ColorInterface { bottom: Vec<usize>, top: Vec<usize> },
}

fn join1(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// A braid word on `strands` strands with a color on each strand's top end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredBraid {
    strands: usize,
    word: Vec<i32>,
    colors: Vec<usize>,
}

/// The strand permutation of a braid, its cycles, and the bottom colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationInfo {
    /// `perm[p]` is the bottom position of the strand starting at top position `p`.
    pub perm: Vec<usize>,
    /// Cycles of `perm`, each starting at its smallest element, sorted.
    pub cycles: Vec<Vec<usize>>,
    pub bottom_colors: Vec<usize>,
}

impl ColoredBraid {
    pub fn new(strands: usize, word: Vec<i32>, colors: Vec<usize>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if colors.len() != strands {
            return Err(BraidError::ColorCount { found: colors.len(), strands });
        }
        if let Some(&g) = word.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(BraidError::LetterOutOfRange { letter: g as i64, strands });
        }
        Ok(Self { strands, word, colors })
    }

    /// The identity braid with the given colors.
    pub fn trivial(colors: Vec<usize>) -> Result<Self, BraidError> {
        Self::new(colors.len(), Vec::new(), colors)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn top_colors(&self) -> &[usize] {
        &self.colors
    }

    /// Largest color index used, plus one.
    pub fn colors_needed(&self) -> usize {
        self.colors.iter().max().map_or(0, |c| c + 1)
    }

    /// Walks the word top to bottom, yielding `(level colors, letter)` before
    /// each letter is applied.
    pub fn levels(&self) -> impl Iterator<Item = (Vec<usize>, i32)> + '_ {
        let mut colors = self.colors.clone();
        self.word.iter().map(move |&g| {
            let before = colors.clone();
            let i = g.unsigned_abs() as usize - 1;
            colors.swap(i, i + 1);
            (before, g)
        })
    }

    pub fn permutation_info(&self) -> PermutationInfo {
        // at[pos] = top position of the strand currently at `pos`
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (bottom, &top) in at.iter().enumerate() {
            perm[top] = bottom;
        }
        let bottom_colors = at.iter().map(|&top| self.colors[top]).collect();
        let mut seen = vec![false; self.strands];
        let mut cycles = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = perm[p];
            }
            cycles.push(cycle);
        }
        PermutationInfo { perm, cycles, bottom_colors }
    }

    pub fn bottom_colors(&self) -> Vec<usize> {
        self.permutation_info().bottom_colors
    }

    /// The mirror-in-time braid: reversed, inverted letters, top and bottom swapped.
    pub fn inverse(&self) -> ColoredBraid {
        ColoredBraid {
            strands: self.strands,
            word: self.word.iter().rev().map(|g| -g).collect(),
            colors: self.bottom_colors(),
        }
    }

    /// Stacks `other` below `self`. Requires matching colors at the interface.
    pub fn then(&self, other: &ColoredBraid) -> Result<ColoredBraid, BraidError> {
        if other.strands != self.strands {
            return Err(BraidError::StrandMismatch { found: other.strands, expected: self.strands });
        }
        let bottom = self.bottom_colors();
        if bottom != other.colors {
            return Err(BraidError::ColorInterface { bottom, top: other.colors.clone() });
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(ColoredBraid { strands: self.strands, word, colors: self.colors.clone() })
    }

    /// Places `other` to the right of `self`.
    pub fn beside(&self, other: &ColoredBraid) -> ColoredBraid {
        let shift = self.strands as i32;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&g| g + g.signum() * shift));
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        ColoredBraid { strands: self.strands + other.strands, word, colors }
    }

    pub fn check_closable(self) -> Result<ClosableBraid, BraidError> {
        let info = self.permutation_info();
        for cycle in &info.cycles {
            let mut colors: Vec<usize> = cycle.iter().map(|&p| self.colors[p]).collect();
            colors.sort_unstable();
            colors.dedup();
            if colors.len() > 1 {
                return Err(BraidError::NotClosable { cycle: cycle.clone(), colors });
            }
        }
        Ok(ClosableBraid(self))
    }
}

impl FromStr for ColoredBraid {
    type Err = BraidError;

    /// Parses `strands=<n> word=<i,j,...> colors=<c,...>` with 1-based colors.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut strands = None;
        let mut word = None;
        let mut colors = None;
        let base = s.as_ptr() as usize;
        let col = |t: &str| t.as_ptr() as usize - base + 1;
        let err = |t: &str, msg: String| BraidError::Parse { pos: col(t), msg };

        for field in s.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| err(field, format!("expected key=value, found `{field}`")))?;
            let value_at = &field[key.len() + 1..];
            let list = |v: &str| -> Result<Vec<i64>, BraidError> {
                if v.is_empty() {
                    return Ok(Vec::new());
                }
                v.split(',')
                    .map(|item| item.parse::<i64>().map_err(|_| err(value_at, format!("`{item}` is not an integer"))))
                    .collect()
            };
            let slot = match key {
                "strands" => &mut strands,
                "word" => &mut word,
                "colors" => &mut colors,
                _ => return Err(err(field, format!("unknown key `{key}`"))),
            };
            if slot.is_some() {
                return Err(err(field, format!("duplicate key `{key}`")));
            }
            *slot = Some((list(value)?, value_at));
        }

        let (n, at) = strands.ok_or_else(|| BraidError::Parse { pos: 1, msg: "missing `strands=`".into() })?;
        let n = match n.as_slice() {
            [n] if *n >= 1 => *n as usize,
            _ => return Err(err(at, "strands must be one positive integer".into())),
        };
        let (letters, word_at) = word.unwrap_or((Vec::new(), s));
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= n {
                return Err(err(word_at, format!("generator {g} out of range for {n} strands")));
            }
        }
        let (cs, colors_at) = colors.ok_or_else(|| BraidError::Parse { pos: 1, msg: "missing `colors=`".into() })?;
        if let Some(c) = cs.iter().find(|&&c| c < 1) {
            return Err(err(colors_at, format!("color {c} is not positive")));
        }
        if cs.len() != n {
            return Err(err(colors_at, format!("{} colors given for {n} strands", cs.len())));
        }
        ColoredBraid::new(n, letters.into_iter().map(|g| g as i32).collect(), cs.into_iter().map(|c| c as usize - 1).collect())
    }
}

impl fmt::Display for ColoredBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.word.iter().map(i32::to_string).collect();
        write!(f, "strands={} word={} colors={}", self.strands, word.join(","), join1(&self.colors))
    }
}

/// A colored braid whose colors are constant along each cycle of its
/// permutation, so its closure is a colored link.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosableBraid(ColoredBraid);

impl ClosableBraid {
    pub fn braid(&self) -> &ColoredBraid {
        &self.0
    }

    pub fn into_braid(self) -> ColoredBraid {
        self.0
    }

    /// `t · b · t⁻¹`. The bottom colors of `t` must equal the top colors of `b`.
    pub fn conjugate(&self, t: &ColoredBraid) -> Result<ClosableBraid, BraidError> {
        let conj = t.then(&self.0)?.then(&t.inverse())?;
        Ok(ClosableBraid(conj))
    }

    /// Markov stabilisation: adds a strand on the right carrying the color of
    /// the last strand and appends `σ_n^{±1}` at the bottom.
    pub fn stabilize(&self, sign: Sign) -> ClosableBraid {
        let b = &self.0;
        let n = b.strands as i32;
        let mut word = b.word.clone();
        word.push(if sign.is_positive() { n } else { -n });
        let mut colors = b.colors.clone();
        colors.push(b.colors[b.strands - 1]);
        ClosableBraid(ColoredBraid { strands: b.strands + 1, word, colors })
    }

    pub fn beside(&self, other: &ClosableBraid) -> ClosableBraid {
        ClosableBraid(self.0.beside(&other.0))
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        self.0.permutation_info().cycles.len()
    }
}

impl TryFrom<ColoredBraid> for ClosableBraid {
    type Error = BraidError;

    fn try_from(b: ColoredBraid) -> Result<Self, Self::Error> {
        b.check_closable()
    }
}

impl fmt::Display for ClosableBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
