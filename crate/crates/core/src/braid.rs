//! Braid words and the length-preserving rewrite moves that act on them.
//!
//! A word is a fixed-length string over `A a B b 1`, where `A`/`a` are the
//! positive/negative crossing of strands 1 and 2, `B`/`b` the same for
//! strands 2 and 3, and `1` is a fragment with no crossing. Every move keeps
//! the length of the word: erasing an inverse pair writes `11` in its place
//! instead of shortening the word.

use std::fmt;

use crate::error::{BraidError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `A`
    SigmaPlus1,
    /// `a`
    SigmaMinus1,
    /// `B`
    SigmaPlus2,
    /// `b`
    SigmaMinus2,
    /// `1`
    Identity,
}

impl Letter {
    pub const ALL: [Letter; 5] = [
        Letter::SigmaPlus1,
        Letter::SigmaMinus1,
        Letter::SigmaPlus2,
        Letter::SigmaMinus2,
        Letter::Identity,
    ];

    pub fn as_char(self) -> char {
        match self {
            Letter::SigmaPlus1 => 'A',
            Letter::SigmaMinus1 => 'a',
            Letter::SigmaPlus2 => 'B',
            Letter::SigmaMinus2 => 'b',
            Letter::Identity => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'A' => Letter::SigmaPlus1,
            'a' => Letter::SigmaMinus1,
            'B' => Letter::SigmaPlus2,
            'b' => Letter::SigmaMinus2,
            '1' => Letter::Identity,
            _ => return None,
        })
    }

    pub fn is_identity(self) -> bool {
        self == Letter::Identity
    }

    /// Signed crossing count of a single letter.
    pub fn exponent(self) -> i64 {
        match self {
            Letter::SigmaPlus1 | Letter::SigmaPlus2 => 1,
            Letter::SigmaMinus1 | Letter::SigmaMinus2 => -1,
            Letter::Identity => 0,
        }
    }

    /// Dense index in `0..5`, following [`Letter::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

use Letter::{Identity as I1, SigmaMinus1 as Lo1, SigmaMinus2 as Lo2, SigmaPlus1 as Up1, SigmaPlus2 as Up2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleVariant {
    /// `1a=a1; 1b=b1; ab=ba=11`
    TwoStrandInverse,
    /// `1a=a1; 1b=b1; aa=bb=11`
    TwoStrandInvolutive,
    /// `Aa=aA=11; Bb=bB=11; X1=1X; ABA=BAB`
    ThreeStrand,
}

/// A move system together with the alphabet it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub variant: RuleVariant,
    /// Also allow `aba <-> bab` under [`RuleVariant::ThreeStrand`].
    pub lowercase_braid_relation: bool,
}

const TWO_STRAND_ALPHABET: [Letter; 3] = [Lo1, Lo2, I1];
const INVERSE_PAIRS: [[Letter; 2]; 2] = [[Lo1, Lo2], [Lo2, Lo1]];
const INVOLUTIVE_PAIRS: [[Letter; 2]; 2] = [[Lo1, Lo1], [Lo2, Lo2]];
const THREE_STRAND_PAIRS: [[Letter; 2]; 4] = [[Up1, Lo1], [Lo1, Up1], [Up2, Lo2], [Lo2, Up2]];

/// Image of a word in the abelianisation of the group its rule set presents.
///
/// Every move preserves it, so it separates words that can never be
/// rewritten into one another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbelianImage {
    /// Image in the integers.
    Integer(i64),
    /// Image in Z/2 x Z/2 (parity of `a` count, parity of `b` count).
    Klein(bool, bool),
}

impl AbelianImage {
    pub fn is_zero(self) -> bool {
        matches!(self, AbelianImage::Integer(0) | AbelianImage::Klein(false, false))
    }
}

impl RuleSet {
    pub const fn new(variant: RuleVariant) -> Self {
        RuleSet { variant, lowercase_braid_relation: false }
    }

    pub const fn two_strand_inverse() -> Self {
        Self::new(RuleVariant::TwoStrandInverse)
    }

    pub const fn two_strand_involutive() -> Self {
        Self::new(RuleVariant::TwoStrandInvolutive)
    }

    pub const fn three_strand() -> Self {
        Self::new(RuleVariant::ThreeStrand)
    }

    pub fn with_lowercase_braid_relation(mut self, on: bool) -> Self {
        self.lowercase_braid_relation = on;
        self
    }

    pub fn alphabet(&self) -> &'static [Letter] {
        match self.variant {
            RuleVariant::ThreeStrand => &Letter::ALL,
            _ => &TWO_STRAND_ALPHABET,
        }
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.alphabet().contains(&letter)
    }

    /// Width of the caret window: 2 for two strands, 3 for three.
    pub fn window(&self) -> usize {
        match self.variant {
            RuleVariant::ThreeStrand => 3,
            _ => 2,
        }
    }

    pub fn strands(&self) -> usize {
        match self.variant {
            RuleVariant::ThreeStrand => 3,
            _ => 2,
        }
    }

    /// Pairs that rewrite to `11`, in canonical order.
    pub fn erasable_pairs(&self) -> &'static [[Letter; 2]] {
        match self.variant {
            RuleVariant::TwoStrandInverse => &INVERSE_PAIRS,
            RuleVariant::TwoStrandInvolutive => &INVOLUTIVE_PAIRS,
            RuleVariant::ThreeStrand => &THREE_STRAND_PAIRS,
        }
    }

    pub fn is_erasable(&self, pair: [Letter; 2]) -> bool {
        self.erasable_pairs().contains(&pair)
    }

    /// A pair may be swapped when it is a commutation with `1` or an
    /// erasable pair whose two letters differ (`Aa <-> aA`).
    pub fn is_swappable(&self, pair: [Letter; 2]) -> bool {
        let [x, y] = pair;
        if x == y {
            return false;
        }
        x.is_identity() || y.is_identity() || self.is_erasable(pair)
    }

    /// The triple a braid relation rewrites `triple` into, if any.
    pub fn braid_partner(&self, triple: [Letter; 3]) -> Option<[Letter; 3]> {
        if self.variant != RuleVariant::ThreeStrand {
            return None;
        }
        match triple {
            [Up1, Up2, Up1] => Some([Up2, Up1, Up2]),
            [Up2, Up1, Up2] => Some([Up1, Up2, Up1]),
            [Lo1, Lo2, Lo1] if self.lowercase_braid_relation => Some([Lo2, Lo1, Lo2]),
            [Lo2, Lo1, Lo2] if self.lowercase_braid_relation => Some([Lo1, Lo2, Lo1]),
            _ => None,
        }
    }

    pub fn abelian_image(&self, word: &BraidWord) -> AbelianImage {
        match self.variant {
            RuleVariant::ThreeStrand => AbelianImage::Integer(exponent_sum(word)),
            RuleVariant::TwoStrandInverse => AbelianImage::Integer(
                word.iter()
                    .map(|l| match l {
                        Lo1 => 1,
                        Lo2 => -1,
                        _ => 0,
                    })
                    .sum(),
            ),
            RuleVariant::TwoStrandInvolutive => {
                let a = word.iter().filter(|&&l| l == Lo1).count();
                let b = word.iter().filter(|&&l| l == Lo2).count();
                AbelianImage::Klein(a % 2 == 1, b % 2 == 1)
            }
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.variant {
            RuleVariant::TwoStrandInverse => "inverse",
            RuleVariant::TwoStrandInvolutive => "involutive",
            RuleVariant::ThreeStrand => "three",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord(Vec<Letter>);

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BraidWord(letters)
    }

    /// The trivial braid `11...1` of length `n`.
    pub fn identity(n: usize) -> Self {
        BraidWord(vec![Letter::Identity; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|l| l.is_identity())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn pair(&self, position: usize) -> Option<[Letter; 2]> {
        match self.0.get(position..position + 2)? {
            &[x, y] => Some([x, y]),
            _ => None,
        }
    }

    pub fn triple(&self, position: usize) -> Option<[Letter; 3]> {
        match self.0.get(position..position + 3)? {
            &[x, y, z] => Some([x, y, z]),
            _ => None,
        }
    }

    /// Base-5 encoding, unique for words of equal length up to 27 letters.
    pub fn code(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, l| acc.wrapping_mul(5).wrapping_add(l.index() as u64))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn parse_word(text: &str, rules: &RuleSet) -> Result<BraidWord> {
    if text.is_empty() {
        return Err(BraidError::EmptyWord);
    }
    text.chars()
        .enumerate()
        .map(|(index, symbol)| match Letter::from_char(symbol) {
            Some(l) if rules.contains(l) => Ok(l),
            _ => Err(BraidError::Parse { index, symbol }),
        })
        .collect::<Result<Vec<_>>>()
        .map(BraidWord)
}

/// Sum of `+1` for `A`/`B`, `-1` for `a`/`b`.
pub fn exponent_sum(word: &BraidWord) -> i64 {
    word.iter().map(|l| l.exponent()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// `xy -> yx` for a swappable pair.
    SwapPair,
    /// Erasable pair `-> 11`.
    ErasePair,
    /// `11 ->` the given erasable pair.
    InsertPair([Letter; 2]),
    /// `ABA <-> BAB` (and the lowercase form when enabled).
    BraidRelation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
}

impl Move {
    pub fn new(kind: MoveKind, position: usize) -> Self {
        Move { kind, position }
    }

    /// Number of letters the move rewrites.
    pub fn width(&self) -> usize {
        match self.kind {
            MoveKind::BraidRelation => 3,
            _ => 2,
        }
    }

    /// The move undoing `self` when `self` is applied to `before`.
    pub fn inverse_on(&self, before: &BraidWord) -> Move {
        let kind = match self.kind {
            MoveKind::ErasePair => {
                let pair = before.pair(self.position).expect("erase position inside word");
                MoveKind::InsertPair(pair)
            }
            MoveKind::InsertPair(_) => MoveKind::ErasePair,
            k => k,
        };
        Move::new(kind, self.position)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MoveKind::SwapPair => write!(f, "swap@{}", self.position),
            MoveKind::ErasePair => write!(f, "erase@{}", self.position),
            MoveKind::InsertPair([x, y]) => write!(f, "insert:{x}{y}@{}", self.position),
            MoveKind::BraidRelation => write!(f, "braid@{}", self.position),
        }
    }
}

/// Every move whose pattern fits at `position`, without the caret-window
/// bound. Pair moves need two letters from `position`, the braid relation
/// three.
pub fn moves_at(word: &BraidWord, position: usize, rules: &RuleSet) -> Vec<Move> {
    let mut out = Vec::new();
    if let Some(pair) = word.pair(position) {
        if rules.is_swappable(pair) {
            out.push(Move::new(MoveKind::SwapPair, position));
        }
        if rules.is_erasable(pair) {
            out.push(Move::new(MoveKind::ErasePair, position));
        }
        if pair == [I1, I1] {
            out.extend(
                rules
                    .erasable_pairs()
                    .iter()
                    .map(|&t| Move::new(MoveKind::InsertPair(t), position)),
            );
        }
    }
    if let Some(triple) = word.triple(position) {
        if rules.braid_partner(triple).is_some() {
            out.push(Move::new(MoveKind::BraidRelation, position));
        }
    }
    out
}

/// Moves available at a caret position, `0 <= position <= n - window`.
pub fn applicable_moves(word: &BraidWord, position: usize, rules: &RuleSet) -> Result<Vec<Move>> {
    let max = word.len().checked_sub(rules.window());
    match max {
        Some(max) if position <= max => Ok(moves_at(word, position, rules)),
        _ => Err(BraidError::PositionOutOfRange { position, max: max.unwrap_or(0) }),
    }
}

/// Every move applicable anywhere in the word.
pub fn all_moves(word: &BraidWord, rules: &RuleSet) -> Vec<Move> {
    (0..word.len()).flat_map(|p| moves_at(word, p, rules)).collect()
}

pub fn apply_move(word: &BraidWord, mv: Move, rules: &RuleSet) -> Result<BraidWord> {
    let reject = || BraidError::MoveNotApplicable(mv.to_string());
    let p = mv.position;
    let mut letters = word.0.clone();
    match mv.kind {
        MoveKind::BraidRelation => {
            let triple = word.triple(p).ok_or_else(reject)?;
            let to = rules.braid_partner(triple).ok_or_else(reject)?;
            letters[p..p + 3].copy_from_slice(&to);
        }
        kind => {
            let pair = word.pair(p).ok_or_else(reject)?;
            let to = match kind {
                MoveKind::SwapPair if rules.is_swappable(pair) => [pair[1], pair[0]],
                MoveKind::ErasePair if rules.is_erasable(pair) => [I1, I1],
                MoveKind::InsertPair(t) if pair == [I1, I1] && rules.is_erasable(t) => t,
                _ => return Err(reject()),
            };
            letters[p..p + 2].copy_from_slice(&to);
        }
    }
    Ok(BraidWord(letters))
}
