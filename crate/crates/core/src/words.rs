//! Words in free groups on single-letter generators.
//!
//! Grammar accepted by [`parse_word`], whitespace optional between terms:
//!
//! ```text
//! word ::= term+
//! term ::= atom ("^" "-"? digits)?
//! atom ::= letter | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! `[u,v]` expands to `u v u^-1 v^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: impl IntoIterator<Item = char>) -> Result<Self> {
        let names: Vec<char> = names.into_iter().collect();
        for (i, c) in names.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(Error::InvalidArgument(format!("generator '{c}' is not a lowercase letter")));
            }
            if names[..i].contains(c) {
                return Err(Error::InvalidArgument(format!("generator '{c}' listed twice")));
            }
        }
        Ok(Self { names })
    }

    pub fn from_str_names(s: &str) -> Result<Self> {
        Self::new(s.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }

    /// `a, b, c, d`: the closed genus-two surface.
    pub fn surface() -> Self {
        Self { names: vec!['a', 'b', 'c', 'd'] }
    }

    /// `a, b, x`: the twice-holed torus obtained by cutting.
    pub fn subsurface() -> Self {
        Self { names: vec!['a', 'b', 'x'] }
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn contains(&self, c: char) -> bool {
        self.names.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.names.iter().flat_map(|&c| [Letter::new(c), Letter::new(c).inverse()]).collect()
    }
}

/// A generator or its inverse. Ordered so that `a < a^-1 < b < b^-1 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub name: char,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(name: char) -> Self {
        Self { name, inverse: false }
    }

    pub const fn inverse(self) -> Self {
        Self { name: self.name, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.name == other.name && self.inverse != other.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        let n = self.letters.len();
        self.is_reduced() && (n < 2 || !self.letters[n - 1].cancels(self.letters[0]))
    }

    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// Free reduction followed by stripping cancelling ends; the result is a
    /// conjugate of `self`.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let n = w.letters.len();
        let mut k = 0;
        while n - 2 * k >= 2 && w.letters[k].cancels(w.letters[n - 1 - k]) {
            k += 1;
        }
        Word { letters: w.letters[k..n - k].to_vec() }
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    pub fn count(&self, l: Letter) -> usize {
        self.letters.iter().filter(|&&m| m == l).count()
    }

    pub fn exponent_sum(&self, name: char) -> i64 {
        self.letters.iter().filter(|l| l.name == name).map(|l| l.sign()).sum()
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for (pos, l) in self.letters.iter().enumerate() {
            if !alphabet.contains(l.name) {
                return Err(Error::UnknownGenerator { name: l.name, pos });
            }
        }
        Ok(())
    }

    /// Compact form without spaces, used for word lists.
    pub fn compact(&self) -> String {
        self.letters.iter().map(|l| l.to_string()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

/// A conjugacy class in the free group, stored as its canonical rotation:
/// the lexicographically least rotation of the cyclic reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord {
    word: Word,
}

impl CyclicWord {
    pub fn new(w: &Word) -> Self {
        Self { word: canonical_rotation(&w.cyclic_reduce()) }
    }

    /// Accepts only words that are already cyclically reduced.
    pub fn from_reduced(w: &Word) -> Result<Self> {
        if !w.is_cyclically_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(Self { word: canonical_rotation(w) })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[Letter] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord { word: canonical_rotation(&self.word.inverse()) }
    }

    /// Representative of the class up to rotation and inversion.
    pub fn unoriented(&self) -> CyclicWord {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }

    /// Smallest `p` such that the word is the `n/p`-th power of its length-`p` prefix.
    pub fn period(&self) -> usize {
        let n = self.word.len();
        let l = self.word.letters();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| l[i] == l[(i + p) % n]))
            .unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && self.period() == self.len()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Least rotation, by the two-pointer minimum-expression scan.
pub fn canonical_rotation(w: &Word) -> Word {
    let s = w.letters();
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (x, y) = (s[(i + k) % n], s[(j + k) % n]);
        if x == y {
            k += 1;
            continue;
        }
        if x > y {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    w.rotate(i.min(j))
}

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars: &chars, pos: 0, alphabet };
    p.skip_ws();
    if p.pos == chars.len() {
        return Ok(Word::empty());
    }
    let w = p.word()?;
    p.skip_ws();
    if p.pos != chars.len() {
        return Err(p.error(format!("unexpected '{}'", chars[p.pos])));
    }
    Ok(w)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Vec::new();
        let mut terms = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_alphabetic() || c == '(' || c == '[' => {
                    out.extend(self.term()?.into_letters());
                    terms += 1;
                }
                _ => break,
            }
        }
        if terms == 0 && !matches!(self.peek(), Some(')') | Some(',') | Some(']')) {
            return Err(self.error("expected a generator, '(' or '['"));
        }
        Ok(Word::new(out))
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(atom);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected exponent digits after '^'"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let e: i64 = digits
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: format!("exponent '{digits}' too large") })?;
        if e > 10_000 {
            return Err(Error::Syntax { pos: start, msg: format!("exponent {e} too large") });
        }
        Ok(atom.pow(if negative { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        match c {
            '(' => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            '[' => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(commutator(&u, &v))
            }
            c if c.is_alphabetic() => {
                if !self.alphabet.contains(c) {
                    return Err(Error::UnknownGenerator { name: c, pos: self.pos });
                }
                self.pos += 1;
                Ok(Word::new(vec![Letter::new(c)]))
            }
            other => Err(self.error(format!("unexpected '{other}'"))),
        }
    }
}

/// `u v u^-1 v^-1`
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.concat(v).concat(&u.inverse()).concat(&v.inverse())
}

/// A substitution of words for generators; generators without an image
/// are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Endomorphism {
    images: BTreeMap<char, Word>,
}

impl Endomorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(images: BTreeMap<char, Word>) -> Self {
        Self { images }
    }

    /// Builds from `(generator, word text)` pairs parsed over `alphabet`.
    pub fn parse<'a>(pairs: impl IntoIterator<Item = (char, &'a str)>, alphabet: &Alphabet) -> Result<Self> {
        let mut images = BTreeMap::new();
        for (g, text) in pairs {
            if !alphabet.contains(g) {
                return Err(Error::UnknownGenerator { name: g, pos: 0 });
            }
            images.insert(g, parse_word(text, alphabet)?);
        }
        Ok(Self { images })
    }

    pub fn image(&self, g: char) -> Word {
        self.images.get(&g).cloned().unwrap_or_else(|| Word::new(vec![Letter::new(g)]))
    }

    pub fn images(&self) -> &BTreeMap<char, Word> {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for l in w.letters() {
            let img = self.image(l.name);
            if l.inverse {
                out.extend(img.inverse().into_letters());
            } else {
                out.extend(img.into_letters());
            }
        }
        Word::new(out).free_reduce()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        let mut names: Vec<char> = self.images.keys().chain(other.images.keys()).copied().collect();
        names.sort_unstable();
        names.dedup();
        let images = names
            .into_iter()
            .map(|g| (g, self.apply(&other.image(g))))
            .collect();
        Endomorphism { images }
    }
}

pub fn apply_endomorphism(phi: &Endomorphism, w: &Word) -> Word {
    phi.apply(w)
}

/// Exponent-sum vector indexed by the alphabet's generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    coords: BTreeMap<char, i64>,
}

impl HomologyClass {
    pub fn zero(alphabet: &Alphabet) -> Self {
        Self { coords: alphabet.names().iter().map(|&c| (c, 0)).collect() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (char, i64)>) -> Self {
        Self { coords: pairs.into_iter().collect() }
    }

    pub fn get(&self, g: char) -> i64 {
        self.coords.get(&g).copied().unwrap_or(0)
    }

    pub fn coords(&self) -> &BTreeMap<char, i64> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|&v| v == 0)
    }

    /// Equality ignoring generators absent from one side with value zero.
    pub fn same_as(&self, other: &HomologyClass) -> bool {
        self.coords.keys().chain(other.coords.keys()).all(|&g| self.get(g) == other.get(g))
    }

    pub fn equals_up_to_sign(&self, other: &HomologyClass) -> bool {
        self.same_as(other) || self.same_as(&-other.clone())
    }
}

impl Add for HomologyClass {
    type Output = HomologyClass;

    fn add(mut self, rhs: HomologyClass) -> HomologyClass {
        for (g, v) in rhs.coords {
            *self.coords.entry(g).or_insert(0) += v;
        }
        self
    }
}

impl Neg for HomologyClass {
    type Output = HomologyClass;

    fn neg(mut self) -> HomologyClass {
        for v in self.coords.values_mut() {
            *v = -*v;
        }
        self
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(g, v)| format!("{g}:{v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn abelianize(w: &Word, alphabet: &Alphabet) -> HomologyClass {
    let mut h = HomologyClass::zero(alphabet);
    for l in w.letters() {
        *h.coords.entry(l.name).or_insert(0) += l.sign();
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd(s: &str) -> Word {
        parse_word(s, &Alphabet::surface()).unwrap()
    }

    fn abx(s: &str) -> Word {
        parse_word(s, &Alphabet::subsurface()).unwrap()
    }

    fn l(c: char) -> Letter {
        Letter::new(c)
    }

    #[test]
    fn parses_alpha_with_commutator() {
        let w = abcd("a b d [d,c^-1] d^-1");
        let expect = [
            l('a'),
            l('b'),
            l('d'),
            l('d'),
            l('c').inverse(),
            l('d').inverse(),
            l('c'),
            l('d').inverse(),
        ];
        assert_eq!(w.letters(), &expect[..]);
        assert!(w.is_reduced());
        assert_eq!(w.free_reduce().len(), 8);
    }

    #[test]
    fn parse_edge_cases() {
        assert!(abcd("").is_empty());
        assert!(abcd("   ").is_empty());
        assert_eq!(abcd("a^-2").letters(), &[l('a').inverse(), l('a').inverse()]);
        assert_eq!(abcd("(ab)^2").to_string(), "a b a b");
        assert_eq!(abcd("(ab)^-1").to_string(), "b^-1 a^-1");
        assert!(abcd("a^0").is_empty());
        assert_eq!(abcd("[a,b]").to_string(), "a b a^-1 b^-1");
        assert_eq!(abcd("abd[d,c^-1]d^-1"), abcd("a b d [d,c^-1] d^-1"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let a = Alphabet::surface();
        assert_eq!(parse_word("a b z", &a), Err(Error::UnknownGenerator { name: 'z', pos: 4 }));
        assert!(matches!(parse_word("a^", &a), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_word("[a b]", &a), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_word("(a", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a)", &a), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_word("a + b", &a), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn reductions() {
        assert_eq!(abcd("a a^-1 b").free_reduce(), abcd("b"));
        assert_eq!(abcd("b^-1 a b").cyclic_reduce(), abcd("a"));
        assert_eq!(abcd("a b b^-1 a^-1").cyclic_reduce(), Word::empty());
        assert_eq!(CyclicWord::new(&abcd("b^-1 a b")).word(), &abcd("a"));
    }

    #[test]
    fn canonical_rotation_is_least() {
        let w = abx("x a b^-1 a");
        let brute = (0..w.len()).map(|k| w.rotate(k)).min().unwrap();
        assert_eq!(canonical_rotation(&w), brute);
        assert_eq!(canonical_rotation(&abx("b a b a")), abx("a b a b"));
    }

    #[test]
    fn letter_order() {
        assert!(l('a') < l('a').inverse());
        assert!(l('a').inverse() < l('b'));
    }

    #[test]
    fn period_and_primitivity() {
        let w = CyclicWord::new(&abx("abab"));
        assert_eq!(w.period(), 2);
        assert!(!w.is_primitive());
        assert!(CyclicWord::new(&abx("abb")).is_primitive());
    }

    #[test]
    fn tau_on_generators() {
        let a = Alphabet::surface();
        let tau = Endomorphism::parse(
            [
                ('a', "a^-1"),
                ('b', "b^-1"),
                ('c', "a c^-1 d c^-1 d^-1 c a^-1"),
                ('d', "b^-1 a d^-1 b a^-1"),
            ],
            &a,
        )
        .unwrap();
        assert_eq!(tau.apply(&abcd("a")), abcd("a^-1"));
        let alpha = abcd("a b d [d,c^-1] d^-1");
        let h = abelianize(&tau.apply(&alpha), &a);
        assert!(h.same_as(&HomologyClass::from_pairs([('a', -1), ('b', -1), ('c', 0), ('d', 0)])));
    }

    #[test]
    fn tau_on_subsurface_alpha() {
        let a = Alphabet::subsurface();
        let tau = Endomorphism::parse([('a', "a^-1"), ('b', "b^-1"), ('x', "b^-1 x^-1 b")], &a).unwrap();
        let alpha = abx("abxaba^-1b^-1x^-1");
        assert_eq!(tau.apply(&alpha), abx("a^-1b^-1b^-1x^-1ba^-1b^-1axb"));
        assert_eq!(Endomorphism::identity().apply(&abx("a a^-1 b")), abx("b"));
    }

    #[test]
    fn abelianization() {
        let a = Alphabet::surface();
        let alpha = abcd("a b d [d,c^-1] d^-1");
        assert!(abelianize(&alpha, &a)
            .same_as(&HomologyClass::from_pairs([('a', 1), ('b', 1), ('c', 0), ('d', 0)])));
        assert!(abelianize(&Word::empty(), &a).is_zero());
        assert_eq!(abelianize(&alpha, &a).to_string(), "(a:1, b:1, c:0, d:0)");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(['a', 'a']).is_err());
        assert!(Alphabet::new(['A']).is_err());
        assert_eq!(Alphabet::from_str_names("a,b,x").unwrap(), Alphabet::subsurface());
    }
}
