//! Index words in the composition encoding (letters y_{s,e}) and the letter encoding
//! (letters x_0, x_e), plus the structural maps between them.
//!
//! Exponents are residues mod N standing for ξ^e; words do not carry their level, so
//! every map that reduces exponents takes it explicitly.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// y_{s, ξ^e}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub s: u32,
    pub e: u32,
}

impl Letter {
    pub fn new(s: u32, e: u32) -> Self {
        assert!(s >= 1, "letter weight must be positive");
        Letter { s, e }
    }
}

/// Word over the y-alphabet. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct YWord {
    letters: Vec<Letter>,
}

impl YWord {
    pub fn empty() -> Self {
        YWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        assert!(letters.iter().all(|l| l.s >= 1), "letter weight must be positive");
        YWord { letters }
    }

    /// From index data (s⃗; e⃗), exponents reduced mod `level`.
    pub fn from_index(s: &[u32], e: &[i64], level: u32) -> Self {
        assert_eq!(s.len(), e.len(), "index lists of different length");
        let n = level as i64;
        YWord::new(
            s.iter()
                .zip(e)
                .map(|(&s, &e)| Letter::new(s, e.rem_euclid(n) as u32))
                .collect(),
        )
    }

    pub fn letter(s: u32, e: u32) -> Self {
        YWord::new(vec![Letter::new(s, e)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.letters.iter().map(|l| l.s).sum()
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    /// In A⁰: empty, or first letter other than y_{1,1}.
    pub fn is_admissible(&self) -> bool {
        self.letters.first().is_none_or(|l| !(l.s == 1 && l.e == 0))
    }

    /// Length of the leading run of y_{1,1}.
    pub fn leading_divergent_run(&self) -> usize {
        self.letters.iter().take_while(|l| l.s == 1 && l.e == 0).count()
    }

    pub fn concat(&self, o: &YWord) -> YWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        YWord { letters }
    }

    pub fn prefix(&self, j: usize) -> YWord {
        YWord { letters: self.letters[..j].to_vec() }
    }

    pub fn suffix(&self, j: usize) -> YWord {
        YWord { letters: self.letters[j..].to_vec() }
    }

    pub fn reversed(&self) -> YWord {
        YWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// Exponents negated mod N.
    pub fn conjugated(&self, level: u32) -> YWord {
        let n = level;
        YWord {
            letters: self.letters.iter().map(|l| Letter::new(l.s, (n - l.e % n) % n)).collect(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.e as i64).sum()
    }

    pub fn is_level_one(&self) -> bool {
        self.letters.iter().all(|l| l.e == 0)
    }

    pub fn weights(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.s).collect()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.e).collect()
    }

    /// Parse `y(s,e) y(s,e) ...`; `1` or the empty string is the empty word.
    pub fn parse(text: &str, level: u32) -> Result<YWord> {
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(YWord::empty());
        }
        let mut letters = Vec::new();
        for tok in split_tokens(t)? {
            let inner = tok
                .strip_prefix("y(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| parse_err(&tok, "expected y(s,e)"))?;
            let (s, e) = inner.split_once(',').ok_or_else(|| parse_err(&tok, "expected two entries"))?;
            let s: u32 = s.trim().parse().map_err(|_| parse_err(&tok, "bad weight"))?;
            let e: i64 = e.trim().parse().map_err(|_| parse_err(&tok, "bad exponent"))?;
            if s == 0 {
                return Err(parse_err(&tok, "weight must be positive"));
            }
            letters.push(Letter::new(s, e.rem_euclid(level as i64) as u32));
        }
        Ok(YWord::new(letters))
    }
}

fn parse_err(tok: &str, msg: &str) -> Error {
    Error::Parse { token: tok.to_string(), message: msg.to_string() }
}

/// Split into `name(...)` or bare tokens, tolerant to whitespace and `·`.
fn split_tokens(t: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in t.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
                if depth == 0 {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if (c.is_whitespace() || c == '·' || c == '*') && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => {
                cur.push(c);
                if depth == 0 && cur == "x0" {
                    out.push(std::mem::take(&mut cur));
                }
            }
        }
    }
    if depth != 0 {
        return Err(parse_err(t, "unbalanced parentheses"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

impl Ord for YWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight()
            .cmp(&o.weight())
            .then(self.depth().cmp(&o.depth()))
            .then_with(|| self.letters.cmp(&o.letters))
    }
}

impl PartialOrd for YWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "y({},{})", l.s, l.e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for YWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[u32; 2]> = self.letters.iter().map(|l| [l.s, l.e]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for YWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let pairs = Vec::<[u32; 2]>::deserialize(d)?;
        if pairs.iter().any(|p| p[0] == 0) {
            return Err(D::Error::custom("letter weight must be positive"));
        }
        Ok(YWord::new(pairs.into_iter().map(|[s, e]| Letter::new(s, e)).collect()))
    }
}

/// x_0 or x_{ξ^e}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XLetter {
    Zero,
    Root(u32),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XWord {
    letters: Vec<XLetter>,
}

impl XWord {
    pub fn empty() -> Self {
        XWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<XLetter>) -> Self {
        XWord { letters }
    }

    pub fn letters(&self) -> &[XLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.letters.len()
    }

    pub fn depth(&self) -> usize {
        self.letters.iter().filter(|l| **l != XLetter::Zero).count()
    }

    pub fn ends_in_zero(&self) -> bool {
        self.letters.last() == Some(&XLetter::Zero)
    }

    pub fn concat(&self, o: &XWord) -> XWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        XWord { letters }
    }

    pub fn prefix(&self, j: usize) -> XWord {
        XWord { letters: self.letters[..j].to_vec() }
    }

    pub fn suffix(&self, j: usize) -> XWord {
        XWord { letters: self.letters[j..].to_vec() }
    }

    pub fn reversed(&self) -> XWord {
        XWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// Parse `x0 x(e) ...`; `1` or the empty string is the empty word.
    pub fn parse(text: &str, level: u32) -> Result<XWord> {
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(XWord::empty());
        }
        let mut letters = Vec::new();
        for tok in split_tokens(t)? {
            if tok == "x0" {
                letters.push(XLetter::Zero);
                continue;
            }
            let inner = tok
                .strip_prefix("x(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| parse_err(&tok, "expected x0 or x(e)"))?;
            let e: i64 = inner.trim().parse().map_err(|_| parse_err(&tok, "bad exponent"))?;
            letters.push(XLetter::Root(e.rem_euclid(level as i64) as u32));
        }
        Ok(XWord { letters })
    }
}

impl Ord for XWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len()
            .cmp(&o.len())
            .then(self.depth().cmp(&o.depth()))
            .then_with(|| self.letters.cmp(&o.letters))
    }
}

impl PartialOrd for XWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l {
                XLetter::Zero => write!(f, "x0")?,
                XLetter::Root(e) => write!(f, "x({e})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// y_{s,e} ↦ x_0^{s-1} x_e.
pub fn to_x(w: &YWord) -> XWord {
    let mut letters = Vec::with_capacity(w.weight() as usize);
    for l in w.letters() {
        letters.extend(std::iter::repeat_n(XLetter::Zero, l.s as usize - 1));
        letters.push(XLetter::Root(l.e));
    }
    XWord { letters }
}

/// Inverse of [`to_x`]; fails on words ending in x_0.
pub fn to_y(x: &XWord) -> Result<YWord> {
    if x.ends_in_zero() {
        return Err(Error::EndsInX0(x.to_string()));
    }
    let mut letters = Vec::with_capacity(x.depth());
    let mut zeros = 0;
    for l in x.letters() {
        match l {
            XLetter::Zero => zeros += 1,
            XLetter::Root(e) => {
                letters.push(Letter::new(zeros + 1, *e));
                zeros = 0;
            }
        }
    }
    Ok(YWord::new(letters))
}

/// Exponents become partial sums: y_{s1,η1} y_{s2,η1η2} ...
pub fn p_map(w: &YWord, level: u32) -> YWord {
    let mut acc = 0u32;
    YWord::new(
        w.letters()
            .iter()
            .map(|l| {
                acc = (acc + l.e) % level;
                Letter::new(l.s, acc)
            })
            .collect(),
    )
}

/// Exponents become successive differences; inverse of [`p_map`].
pub fn q_map(w: &YWord, level: u32) -> YWord {
    let mut prev = 0u32;
    YWord::new(
        w.letters()
            .iter()
            .map(|l| {
                let d = (l.e + level - prev % level) % level;
                prev = l.e;
                Letter::new(l.s, d)
            })
            .collect(),
    )
}

/// Index data (s⃗; e⃗) to the word with exponents (e1, e2-e1, ..., ed-e{d-1}).
pub fn ratio_form(index: &YWord, level: u32) -> YWord {
    q_map(index, level)
}

/// Inverse of [`ratio_form`].
pub fn plain_form(word: &YWord, level: u32) -> YWord {
    p_map(word, level)
}

/// A scalar multiple of a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedWord {
    pub coeff: CycNumber,
    pub word: YWord,
}

/// Level-one reversal with sign (-1)^weight.
pub fn tau(w: &YWord, level: u32) -> Result<SignedWord> {
    if !w.is_level_one() {
        return Err(Error::NotLevelOne(w.to_string()));
    }
    let sign = if w.weight().is_multiple_of(2) { 1 } else { -1 };
    Ok(SignedWord { coeff: CycNumber::from_integer(level, sign), word: w.reversed() })
}

/// (-1)^weight ξ^{-Σe} times the reversed word.
pub fn inv_map(w: &YWord, level: u32) -> SignedWord {
    let sign = if w.weight().is_multiple_of(2) { 1 } else { -1 };
    let coeff = CycNumber::root(level, -w.exponent_sum()).scale(&num_rational::BigRational::from_integer(
        sign.into(),
    ));
    SignedWord { coeff, word: w.reversed() }
}

/// Subtract `eta_exp` from every non-zero letter.
pub fn r_eta(x: &XWord, eta_exp: i64, level: u32) -> XWord {
    let n = level as i64;
    XWord::new(
        x.letters()
            .iter()
            .map(|l| match l {
                XLetter::Zero => XLetter::Zero,
                XLetter::Root(e) => XLetter::Root((*e as i64 - eta_exp).rem_euclid(n) as u32),
            })
            .collect(),
    )
}

/// All compositions of `w`, in lexicographic order.
pub fn compositions(w: u32) -> Vec<Vec<u32>> {
    if w == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for mut rest in compositions(w - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every index word of weight `w` at level `level`, in canonical order.
pub fn all_ywords(w: u32, level: u32) -> Vec<YWord> {
    let mut out = Vec::new();
    for comp in compositions(w) {
        let d = comp.len();
        let total = (level as usize).pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let mut exps = vec![0u32; d];
            for j in (0..d).rev() {
                exps[j] = (c % level as usize) as u32;
                c /= level as usize;
            }
            out.push(YWord::new(
                comp.iter().zip(&exps).map(|(&s, &e)| Letter::new(s, e)).collect(),
            ));
        }
    }
    out.sort();
    out
}

/// Every X-word of length `len` at level `level`, in canonical order.
pub fn all_xwords(len: usize, level: u32) -> Vec<XWord> {
    let alphabet: Vec<XLetter> =
        std::iter::once(XLetter::Zero).chain((0..level).map(XLetter::Root)).collect();
    let mut out = vec![XWord::empty()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut l = w.letters.clone();
                    l.push(a);
                    XWord::new(l)
                })
            })
            .collect();
    }
    out.sort();
    out
}
