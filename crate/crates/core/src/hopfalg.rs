//! Linear combinations of words, the stuffle and shuffle products, deconcatenation, and
//! regularization of words starting with the divergent letter y_{1,1} = x_1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::words::{to_x, to_y, Letter, XLetter, XWord, YWord};

/// Operations shared by both word encodings.
pub trait Word: Clone + Ord + Hash + fmt::Display + fmt::Debug + Send + Sync + 'static {
    fn empty() -> Self;
    /// Number of letters.
    fn len(&self) -> usize;
    fn prefix(&self, j: usize) -> Self;
    fn suffix(&self, j: usize) -> Self;
    fn concat(&self, o: &Self) -> Self;
    fn grade(&self) -> usize;
}

impl Word for YWord {
    fn empty() -> Self {
        YWord::empty()
    }
    fn len(&self) -> usize {
        self.depth()
    }
    fn prefix(&self, j: usize) -> Self {
        YWord::prefix(self, j)
    }
    fn suffix(&self, j: usize) -> Self {
        YWord::suffix(self, j)
    }
    fn concat(&self, o: &Self) -> Self {
        YWord::concat(self, o)
    }
    fn grade(&self) -> usize {
        self.weight() as usize
    }
}

impl Word for XWord {
    fn empty() -> Self {
        XWord::empty()
    }
    fn len(&self) -> usize {
        XWord::len(self)
    }
    fn prefix(&self, j: usize) -> Self {
        XWord::prefix(self, j)
    }
    fn suffix(&self, j: usize) -> Self {
        XWord::suffix(self, j)
    }
    fn concat(&self, o: &Self) -> Self {
        XWord::concat(self, o)
    }
    fn grade(&self) -> usize {
        self.weight()
    }
}

/// Finite Q(ξ_N)-linear combination of words with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<W: Word> {
    level: u32,
    terms: BTreeMap<W, CycNumber>,
}

impl<W: Word> LinComb<W> {
    pub fn zero(level: u32) -> Self {
        LinComb { level, terms: BTreeMap::new() }
    }

    pub fn word(level: u32, w: W) -> Self {
        Self::term(level, w, CycNumber::one(level))
    }

    pub fn term(level: u32, w: W, c: CycNumber) -> Self {
        let mut l = Self::zero(level);
        l.add_term(w, &c);
        l
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, &CycNumber)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &W) -> CycNumber {
        self.terms.get(w).cloned().unwrap_or_else(|| CycNumber::zero(self.level))
    }

    pub fn add_term(&mut self, w: W, c: &CycNumber) {
        assert_eq!(c.level(), self.level, "coefficient level");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &LinComb<W>, c: &CycNumber) {
        assert_eq!(self.level, o.level, "mixing levels");
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (w, d) in &o.terms {
            if one {
                self.add_term(w.clone(), d);
            } else {
                self.add_term(w.clone(), &(d * c));
            }
        }
    }

    pub fn add(&self, o: &LinComb<W>) -> LinComb<W> {
        let mut r = self.clone();
        r.add_scaled(o, &CycNumber::one(self.level));
        r
    }

    pub fn sub(&self, o: &LinComb<W>) -> LinComb<W> {
        let mut r = self.clone();
        r.add_scaled(o, &CycNumber::from_integer(self.level, -1));
        r
    }

    pub fn scale(&self, c: &CycNumber) -> LinComb<W> {
        let mut r = Self::zero(self.level);
        r.add_scaled(self, c);
        r
    }

    pub fn neg(&self) -> LinComb<W> {
        self.scale(&CycNumber::from_integer(self.level, -1))
    }

    /// Weights occurring in the support.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(Word::grade).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grades().len() <= 1
    }

    /// Linear extension of a word map.
    pub fn map<V: Word>(&self, mut f: impl FnMut(&W) -> LinComb<V>) -> LinComb<V> {
        let mut out = LinComb::zero(self.level);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<W, CycNumber> {
        self.terms
    }
}

impl<W: Word> fmt::Display for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{w}")?;
        }
        Ok(())
    }
}

impl<W: Word> fmt::Debug for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb[N={}]({self})", self.level)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    word: YWord,
    coeff: CycNumber,
}

impl Serialize for LinComb<YWord> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> =
            self.terms.iter().map(|(w, c)| TermRepr { word: w.clone(), coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl LinComb<YWord> {
    /// Reads the array form; the level is taken from the coefficients.
    pub fn from_json_terms(level: u32, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermRepr> = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse { token: value.to_string(), message: e.to_string() })?;
        let mut l = LinComb::zero(level);
        for t in terms {
            if t.coeff.level() != level {
                return Err(Error::LevelMismatch(t.coeff.level(), level));
            }
            if t.word.letters().iter().any(|x| x.e >= level) {
                return Err(Error::InvalidArgument(format!("exponent out of range in {}", t.word)));
            }
            l.add_term(t.word, &t.coeff);
        }
        Ok(l)
    }
}

/// Which product regularizes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    Stuffle,
    Shuffle,
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::Stuffle => "stuffle",
            Product::Shuffle => "shuffle",
        })
    }
}

static MEMO_WEIGHT: AtomicU32 = AtomicU32::new(6);

/// Word pairs of total weight up to `w` have their products cached.
pub fn set_product_memo_weight(w: u32) {
    MEMO_WEIGHT.store(w, Ordering::Relaxed);
}

type Expansion<W> = Arc<Vec<(W, u64)>>;

fn stuffle_cache() -> &'static RwLock<HashMap<(u32, YWord, YWord), Expansion<YWord>>> {
    static C: OnceLock<RwLock<HashMap<(u32, YWord, YWord), Expansion<YWord>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn shuffle_cache() -> &'static RwLock<HashMap<(XWord, XWord), Expansion<XWord>>> {
    static C: OnceLock<RwLock<HashMap<(XWord, XWord), Expansion<XWord>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn stuffle_rec(
    a: &[Letter],
    b: &[Letter],
    n: u32,
    memo: &mut HashMap<(usize, usize), Arc<HashMap<Vec<Letter>, u64>>>,
) -> Arc<HashMap<Vec<Letter>, u64>> {
    if let Some(r) = memo.get(&(a.len(), b.len())) {
        return r.clone();
    }
    let mut out: HashMap<Vec<Letter>, u64> = HashMap::new();
    if a.is_empty() || b.is_empty() {
        out.insert(if a.is_empty() { b.to_vec() } else { a.to_vec() }, 1);
    } else {
        let mut push = |head: Letter, tail: &HashMap<Vec<Letter>, u64>| {
            for (w, c) in tail {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(head);
                v.extend_from_slice(w);
                *out.entry(v).or_insert(0) += c;
            }
        };
        let t1 = stuffle_rec(&a[1..], b, n, memo);
        push(a[0], &t1);
        let t2 = stuffle_rec(a, &b[1..], n, memo);
        push(b[0], &t2);
        let t3 = stuffle_rec(&a[1..], &b[1..], n, memo);
        push(Letter::new(a[0].s + b[0].s, (a[0].e + b[0].e) % n), &t3);
    }
    let r = Arc::new(out);
    memo.insert((a.len(), b.len()), r.clone());
    r
}

fn shuffle_rec(
    a: &[XLetter],
    b: &[XLetter],
    memo: &mut HashMap<(usize, usize), Arc<HashMap<Vec<XLetter>, u64>>>,
) -> Arc<HashMap<Vec<XLetter>, u64>> {
    if let Some(r) = memo.get(&(a.len(), b.len())) {
        return r.clone();
    }
    let mut out: HashMap<Vec<XLetter>, u64> = HashMap::new();
    if a.is_empty() || b.is_empty() {
        out.insert(if a.is_empty() { b.to_vec() } else { a.to_vec() }, 1);
    } else {
        for (head, tail) in [(a[0], shuffle_rec(&a[1..], b, memo)), (b[0], shuffle_rec(a, &b[1..], memo))] {
            for (w, c) in tail.iter() {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(head);
                v.extend_from_slice(w);
                *out.entry(v).or_insert(0) += c;
            }
        }
    }
    let r = Arc::new(out);
    memo.insert((a.len(), b.len()), r.clone());
    r
}

/// Quasi-shuffle of two words, as (word, multiplicity) in canonical order.
pub fn stuffle_words(u: &YWord, v: &YWord, level: u32) -> Expansion<YWord> {
    let cacheable = u.weight() + v.weight() <= MEMO_WEIGHT.load(Ordering::Relaxed);
    let key = (level, u.clone(), v.clone());
    if cacheable {
        if let Some(r) = stuffle_cache().read().unwrap().get(&key) {
            return r.clone();
        }
    }
    let raw = stuffle_rec(u.letters(), v.letters(), level, &mut HashMap::new());
    let mut terms: Vec<(YWord, u64)> = raw.iter().map(|(w, &c)| (YWord::new(w.clone()), c)).collect();
    terms.sort();
    let r = Arc::new(terms);
    if cacheable {
        stuffle_cache().write().unwrap().entry(key).or_insert_with(|| r.clone());
    }
    r
}

/// Shuffle of two letter words, as (word, multiplicity) in canonical order.
pub fn shuffle_words(u: &XWord, v: &XWord) -> Expansion<XWord> {
    let cacheable = u.len() + v.len() <= MEMO_WEIGHT.load(Ordering::Relaxed) as usize;
    let key = (u.clone(), v.clone());
    if cacheable {
        if let Some(r) = shuffle_cache().read().unwrap().get(&key) {
            return r.clone();
        }
    }
    let raw = shuffle_rec(u.letters(), v.letters(), &mut HashMap::new());
    let mut terms: Vec<(XWord, u64)> = raw.iter().map(|(w, &c)| (XWord::new(w.clone()), c)).collect();
    terms.sort();
    let r = Arc::new(terms);
    if cacheable {
        shuffle_cache().write().unwrap().entry(key).or_insert_with(|| r.clone());
    }
    r
}

fn int(level: u32, c: u64) -> CycNumber {
    CycNumber::from_rational(level, BigRational::from_integer(BigInt::from(c)))
}

fn bilinear<W: Word>(
    u: &LinComb<W>,
    v: &LinComb<W>,
    f: impl Fn(&W, &W) -> Expansion<W>,
) -> Result<LinComb<W>> {
    if u.level != v.level {
        return Err(Error::LevelMismatch(u.level, v.level));
    }
    let level = u.level;
    let mut out = LinComb::zero(level);
    for (a, ca) in u.iter() {
        for (b, cb) in v.iter() {
            let c = ca * cb;
            for (w, m) in f(a, b).iter() {
                out.add_term(w.clone(), &(&c * &int(level, *m)));
            }
        }
    }
    Ok(out)
}

pub fn stuffle(u: &LinComb<YWord>, v: &LinComb<YWord>) -> Result<LinComb<YWord>> {
    let level = u.level;
    bilinear(u, v, |a, b| stuffle_words(a, b, level))
}

pub fn shuffle(u: &LinComb<XWord>, v: &LinComb<XWord>) -> Result<LinComb<XWord>> {
    bilinear(u, v, shuffle_words)
}

/// Shuffle of y-encoded combinations, computed in the letter encoding.
pub fn shuffle_y(u: &LinComb<YWord>, v: &LinComb<YWord>) -> Result<LinComb<YWord>> {
    let ux = u.map(|w| LinComb::word(u.level, to_x(w)));
    let vx = v.map(|w| LinComb::word(v.level, to_x(w)));
    let p = shuffle(&ux, &vx)?;
    let mut out = LinComb::zero(u.level);
    for (w, c) in p.iter() {
        out.add_term(to_y(w)?, c);
    }
    Ok(out)
}

/// Product of y-encoded combinations.
pub fn product(u: &LinComb<YWord>, v: &LinComb<YWord>, which: Product) -> Result<LinComb<YWord>> {
    match which {
        Product::Stuffle => stuffle(u, v),
        Product::Shuffle => shuffle_y(u, v),
    }
}

/// Element of the tensor square, keyed by (left, right).
pub type Tensor<W> = BTreeMap<(W, W), CycNumber>;

/// All prefix/suffix splittings.
pub fn deconcat<W: Word>(w: &W) -> Vec<(W, W)> {
    (0..=w.len()).map(|j| (w.prefix(j), w.suffix(j))).collect()
}

pub fn deconcat_lin<W: Word>(l: &LinComb<W>) -> Tensor<W> {
    let mut out: Tensor<W> = BTreeMap::new();
    for (w, c) in l.iter() {
        for pair in deconcat(w) {
            let e = out.entry(pair).or_insert_with(|| CycNumber::zero(l.level));
            *e += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// ζ(w;T) = Σ_j T^j/j! ζ(c_j) with every word of every c_j admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct RegDecomposition {
    pub product: Product,
    pub level: u32,
    pub coeffs: Vec<LinComb<YWord>>,
}

impl RegDecomposition {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Σ_j a^{∘j}/j! ∘ c_j with a = y_{1,1}.
    pub fn reassemble(&self) -> Result<LinComb<YWord>> {
        let level = self.level;
        let a = LinComb::word(level, YWord::letter(1, 0));
        let mut power = LinComb::word(level, YWord::empty());
        let mut fact = BigInt::from(1);
        let mut out = LinComb::zero(level);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = product(&power, &a, self.product)?;
                fact *= j;
            }
            let term = product(&power, c, self.product)?;
            out.add_scaled(&term, &CycNumber::from_rational(level, BigRational::new(1.into(), fact.clone())));
        }
        Ok(out)
    }
}

type RegCache = RwLock<HashMap<(u32, Product, YWord), Arc<Vec<LinComb<YWord>>>>>;

fn reg_cache() -> &'static RegCache {
    static C: OnceLock<RegCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Coefficients of T^j (not normalized by j!).
fn reg_monomial(w: &YWord, which: Product, level: u32) -> Result<Arc<Vec<LinComb<YWord>>>> {
    if w.is_admissible() {
        return Ok(Arc::new(vec![LinComb::word(level, w.clone())]));
    }
    let key = (level, which, w.clone());
    if let Some(r) = reg_cache().read().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let k = w.leading_divergent_run();
    let rest = w.suffix(1);
    let a = LinComb::word(level, YWord::letter(1, 0));
    let mut remainder = product(&a, &LinComb::word(level, rest.clone()), which)?;
    remainder.add_term(w.clone(), &CycNumber::from_integer(level, -(k as i64)));
    let inv_k = CycNumber::from_fraction(level, 1, k as i64);
    let minus_inv_k = CycNumber::from_fraction(level, -1, k as i64);
    let mut out = vec![LinComb::zero(level); k + 1];
    for (j, c) in reg_monomial(&rest, which, level)?.iter().enumerate() {
        out[j + 1].add_scaled(c, &inv_k);
    }
    for (u, cu) in remainder.iter() {
        debug_assert!(u.leading_divergent_run() < k);
        let f = cu * &minus_inv_k;
        for (j, c) in reg_monomial(u, which, level)?.iter().enumerate() {
            out[j].add_scaled(c, &f);
        }
    }
    while out.len() > 1 && out.last().is_some_and(LinComb::is_zero) {
        out.pop();
    }
    let r = Arc::new(out);
    reg_cache().write().unwrap().entry(key).or_insert_with(|| r.clone());
    Ok(r)
}

/// Regularization of `w` as a polynomial in the divergent letter.
pub fn reg_decompose(w: &YWord, which: Product, level: u32) -> Result<RegDecomposition> {
    if w.letters().iter().any(|l| l.e >= level) {
        return Err(Error::InvalidArgument(format!("exponent out of range in {w} at level {level}")));
    }
    let mono = reg_monomial(w, which, level)?;
    let mut fact = BigInt::from(1);
    let coeffs = mono
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j > 0 {
                fact *= j;
            }
            c.scale(&CycNumber::from_rational(level, BigRational::from_integer(fact.clone())))
        })
        .collect();
    Ok(RegDecomposition { product: which, level, coeffs })
}

/// One term of a symmetrized sum: coeff · ζ(left) ζ(right).
#[derive(Clone, Debug, PartialEq)]
pub struct SymTerm {
    pub coeff: CycNumber,
    pub left: YWord,
    pub right: YWord,
}

/// Terms (-1)^{s1+..+sj} ξ^{-(e1+..+ej)} ζ(s_j..s_1; -e_j..-e_1) ζ(s_{j+1}..; e_{j+1}..) for j = 0..d.
pub fn symmetrize_word(w: &YWord, level: u32) -> Vec<SymTerm> {
    let mut out = Vec::with_capacity(w.depth() + 1);
    let mut weight = 0i64;
    let mut exps = 0i64;
    for j in 0..=w.depth() {
        if j > 0 {
            let l = w.letters()[j - 1];
            weight += l.s as i64;
            exps += l.e as i64;
        }
        let sign = if weight % 2 == 0 { 1 } else { -1 };
        let coeff = CycNumber::root(level, -exps).scale(&BigRational::from_integer(sign.into()));
        out.push(SymTerm {
            coeff,
            left: w.prefix(j).reversed().conjugated(level),
            right: w.suffix(j),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yw(s: &str, n: u32) -> YWord {
        YWord::parse(s, n).unwrap()
    }

    fn lc(n: u32, terms: &[(&str, i64)]) -> LinComb<YWord> {
        let mut l = LinComb::zero(n);
        for (w, c) in terms {
            l.add_term(yw(w, n), &CycNumber::from_integer(n, *c));
        }
        l
    }

    #[test]
    fn stuffle_depth_one() {
        let n = 4;
        let p = stuffle(&lc(n, &[("y(1,1)", 1)]), &lc(n, &[("y(1,2)", 1)])).unwrap();
        assert_eq!(p, lc(n, &[("y(1,1) y(1,2)", 1), ("y(1,2) y(1,1)", 1), ("y(2,3)", 1)]));
    }

    #[test]
    fn unit_is_neutral() {
        let n = 3;
        let w = lc(n, &[("y(2,1) y(1,2)", 1)]);
        let one = lc(n, &[("1", 1)]);
        assert_eq!(stuffle(&one, &w).unwrap(), w);
        assert_eq!(shuffle_y(&one, &w).unwrap(), w);
    }

    #[test]
    fn shuffle_example() {
        let n = 4;
        let u = LinComb::word(n, XWord::parse("x0 x(1)", n).unwrap());
        let v = LinComb::word(n, XWord::parse("x(1)", n).unwrap());
        let p = shuffle(&u, &v).unwrap();
        let mut expect = LinComb::zero(n);
        expect.add_term(XWord::parse("x0 x(1) x(1)", n).unwrap(), &CycNumber::from_integer(n, 2));
        expect.add_term(XWord::parse("x(1) x0 x(1)", n).unwrap(), &CycNumber::one(n));
        assert_eq!(p, expect);
    }

    #[test]
    fn level_mismatch() {
        let a = lc(3, &[("y(1,1)", 1)]);
        let b = lc(4, &[("y(1,1)", 1)]);
        assert_eq!(stuffle(&a, &b), Err(Error::LevelMismatch(3, 4)));
    }

    #[test]
    fn deconcat_counts() {
        assert_eq!(deconcat(&YWord::empty()), vec![(YWord::empty(), YWord::empty())]);
        let w = yw("y(1,0)", 3);
        assert_eq!(deconcat(&w), vec![(YWord::empty(), w.clone()), (w.clone(), YWord::empty())]);
        assert_eq!(deconcat(&yw("y(1,0) y(2,1)", 3)).len(), 3);
    }

    #[test]
    fn regularize_admissible_and_letter() {
        let n = 4;
        let w = yw("y(2,1)", n);
        let d = reg_decompose(&w, Product::Stuffle, n).unwrap();
        assert_eq!(d.coeffs, vec![LinComb::word(n, w)]);
        let d = reg_decompose(&yw("y(1,0)", n), Product::Shuffle, n).unwrap();
        assert_eq!(d.coeffs, vec![LinComb::zero(n), lc(n, &[("1", 1)])]);
    }

    #[test]
    fn regularize_stuffle_example() {
        let n = 1;
        let d = reg_decompose(&yw("y(1,0) y(2,0)", n), Product::Stuffle, n).unwrap();
        assert_eq!(d.coeffs[0], lc(n, &[("y(2,0) y(1,0)", -1), ("y(3,0)", -1)]));
        assert_eq!(d.coeffs[1], lc(n, &[("y(2,0)", 1)]));
        assert_eq!(d.coeffs.len(), 2);
    }

    #[test]
    fn regularize_reassembles() {
        for which in [Product::Stuffle, Product::Shuffle] {
            for w in ["y(1,0) y(1,0) y(2,1)", "y(1,0) y(1,0) y(1,0)", "y(1,0) y(1,2) y(1,0)"] {
                let w = yw(w, 3);
                let d = reg_decompose(&w, which, 3).unwrap();
                assert_eq!(d.reassemble().unwrap(), LinComb::word(3, w.clone()), "{which} {w}");
                for c in &d.coeffs {
                    assert!(c.words().all(YWord::is_admissible));
                }
            }
        }
    }

    #[test]
    fn symmetrize_depth_two() {
        let n = 4;
        let t = symmetrize_word(&yw("y(2,1) y(1,3)", n), n);
        assert_eq!(t.len(), 3);
        assert!(t[0].coeff.is_one());
        assert_eq!(t[0].right, yw("y(2,1) y(1,3)", n));
        assert_eq!(t[1].coeff, CycNumber::root(n, -1));
        assert_eq!(t[1].left, yw("y(2,3)", n));
        assert_eq!(t[2].coeff, -CycNumber::root(n, -4));
        assert_eq!(t[2].left, yw("y(1,1) y(2,3)", n));
        assert_eq!(symmetrize_word(&YWord::empty(), n).len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let l = lc(4, &[("y(1,2)", 3), ("y(2,0) y(1,1)", -1)]);
        let v = serde_json::to_value(&l).unwrap();
        assert_eq!(LinComb::from_json_terms(4, &v).unwrap(), l);
    }
}
