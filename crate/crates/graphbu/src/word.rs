//! Freely reduced words over an arbitrary generator alphabet.
//!
//! A [`FreeWord`] keeps the invariant that no letter is adjacent to its own
//! inverse, so syntactic equality of words is equality in the free group.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A freely reduced word; the identity is the empty word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord<L> {
    letters: Vec<(L, Sign)>,
}

impl<L> Default for FreeWord<L> {
    fn default() -> Self {
        FreeWord {
            letters: Vec::new(),
        }
    }
}

impl<L: Eq + Clone> FreeWord<L> {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letter(l: L, sign: Sign) -> Self {
        FreeWord {
            letters: vec![(l, sign)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (L, Sign)>) -> Self {
        let mut w = Self::identity();
        for (l, s) in letters {
            w.push(l, s);
        }
        w
    }

    /// Appends one letter, cancelling against the current last letter.
    pub fn push(&mut self, l: L, sign: Sign) {
        match self.letters.last() {
            Some((last, s)) if *last == l && *s == sign.flip() => {
                self.letters.pop();
            }
            _ => self.letters.push((l, sign)),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (l, s) in &other.letters {
            w.push(l.clone(), *s);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(l, s)| (l.clone(), s.flip()))
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut w = Self::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Image under the homomorphism sending each generator `l` to `f(l)`.
    pub fn map<M: Eq + Clone>(&self, mut f: impl FnMut(&L) -> FreeWord<M>) -> FreeWord<M> {
        let mut out = FreeWord::identity();
        for (l, s) in &self.letters {
            let img = f(l);
            let img = if *s == Sign::Minus {
                img.inverse()
            } else {
                img
            };
            out = out.concat(&img);
        }
        out
    }
}

impl<L> FreeWord<L> {
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(L, Sign)> {
        self.letters.iter()
    }

    /// Sum of the exponents; the abelianized image when the alphabet has one letter.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, s)| s.as_i64()).sum()
    }
}

/// Renders a reduced word, collapsing runs of equal letters into powers.
/// The identity renders as `1`.
pub fn format_word<L: Eq>(w: &FreeWord<L>, mut name: impl FnMut(&L) -> String) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut run: Option<(&L, Sign, i64)> = None;
    for (l, s) in w.iter() {
        match &mut run {
            Some((rl, rs, n)) if *rl == l && *rs == *s => *n += 1,
            _ => {
                if let Some((rl, rs, n)) = run.take() {
                    parts.push(render_run(name(rl), rs, n));
                }
                run = Some((l, *s, 1));
            }
        }
    }
    if let Some((rl, rs, n)) = run {
        parts.push(render_run(name(rl), rs, n));
    }
    parts.join("*")
}

fn render_run(name: String, sign: Sign, n: i64) -> String {
    let e = sign.as_i64() * n;
    if e == 1 {
        name
    } else {
        format!("{name}^{e}")
    }
}

impl<L: Eq + fmt::Display> fmt::Display for FreeWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(self, |l| l.to_string()))
    }
}

impl<L: Eq + fmt::Debug> fmt::Debug for FreeWord<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(self, |l| format!("{l:?}")))
    }
}
