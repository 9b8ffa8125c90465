//! Sparse row echelon forms over Q(ξ_N) and over finite fields containing ξ_N.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{embed_rational, inv_mod, is_prime, mul_mod, pow_mod, sub_mod, CycNumber, EmbedMode};
use crate::error::{Error, Result};
use crate::hopfalg::LinComb;
use crate::words::YWord;

/// Coefficient arithmetic used by the elimination.
pub trait Scalars {
    type S: Clone;
    fn embed(&self, c: &CycNumber) -> Result<Self::S>;
    fn is_zero(&self, a: &Self::S) -> bool;
    fn mul(&self, a: &Self::S, b: &Self::S) -> Self::S;
    /// a − b
    fn sub(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn neg(&self, a: &Self::S) -> Self::S;
    fn inv(&self, a: &Self::S) -> Self::S;
}

/// Exact arithmetic in Q(ξ_N).
pub struct ExactField;

impl Scalars for ExactField {
    type S = CycNumber;
    fn embed(&self, c: &CycNumber) -> Result<CycNumber> {
        Ok(c.clone())
    }
    fn is_zero(&self, a: &CycNumber) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a * b
    }
    fn sub(&self, a: &CycNumber, b: &CycNumber) -> CycNumber {
        a - b
    }
    fn neg(&self, a: &CycNumber) -> CycNumber {
        -a
    }
    fn inv(&self, a: &CycNumber) -> CycNumber {
        a.inv().expect("nonzero pivot")
    }
}

/// F_q with q ≡ 1 (mod N) and ξ_N mapped to a fixed primitive N-th root of unity.
pub struct ModularField {
    q: u64,
    powers: Vec<u64>,
}

impl ModularField {
    /// The `index`-th prime q ≡ 1 (mod N) below 2^31, counting down.
    pub fn new(level: u32, index: usize) -> Self {
        let n = level as u64;
        let mut q = (1u64 << 31) - ((1u64 << 31) % n) + 1;
        let mut found = 0;
        loop {
            q -= n;
            if is_prime(q) {
                if found == index {
                    break;
                }
                found += 1;
            }
        }
        let factors: Vec<u64> = (2..=n).filter(|r| n.is_multiple_of(*r) && is_prime(*r)).collect();
        let g = (2..q)
            .map(|a| pow_mod(a, (q - 1) / n, q))
            .find(|g| factors.iter().all(|r| pow_mod(*g, n / r, q) != 1))
            .expect("primitive root exists");
        ModularField { q, powers: (0..n).map(|k| pow_mod(g, k, q)).collect() }
    }

    pub fn prime(&self) -> u64 {
        self.q
    }
}

impl Scalars for ModularField {
    type S = u64;
    fn embed(&self, c: &CycNumber) -> Result<u64> {
        let mut acc = 0u64;
        for (k, r) in c.coeffs().iter().enumerate() {
            let v = embed_rational(r, self.q, EmbedMode::Strict)?;
            acc = (acc + mul_mod(v, self.powers[k], self.q)) % self.q;
        }
        Ok(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.q)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.q)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.q)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.q)
    }
}

/// Row echelon form keyed by leading column position; pivot rows have leading entry 1.
pub struct Echelon<F: Scalars> {
    field: F,
    pivots: BTreeMap<usize, Vec<(usize, F::S)>>,
}

impl<F: Scalars> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, pos: usize) -> bool {
        self.pivots.contains_key(&pos)
    }

    /// Reduces a row and adds it; returns whether the rank grew.
    pub fn insert(&mut self, row: Vec<(usize, F::S)>) -> bool {
        let f = &self.field;
        let mut r: BTreeMap<usize, F::S> = row.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        while let Some((&lead, c)) = r.iter().next() {
            let c = c.clone();
            let Some(p) = self.pivots.get(&lead) else {
                let inv = f.inv(&c);
                let normalized: Vec<(usize, F::S)> = r.into_iter().map(|(j, x)| (j, f.mul(&x, &inv))).collect();
                self.pivots.insert(lead, normalized);
                return true;
            };
            for (j, pv) in p {
                let t = f.mul(&c, pv);
                let next = match r.remove(j) {
                    Some(x) => f.sub(&x, &t),
                    None => f.neg(&t),
                };
                if !f.is_zero(&next) {
                    r.insert(*j, next);
                }
            }
        }
        false
    }
}

/// Which arithmetic to eliminate with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Modular,
    /// Exact up to weight 3, modular above.
    #[default]
    Auto,
}

impl RankMode {
    pub fn resolve(self, weight: u32) -> RankMode {
        match self {
            RankMode::Auto if weight <= 3 => RankMode::Exact,
            RankMode::Auto => RankMode::Modular,
            m => m,
        }
    }
}

/// Column positions under a chosen ordering of the words.
pub struct ColumnOrder {
    pos: HashMap<YWord, usize>,
    words: Vec<YWord>,
}

impl ColumnOrder {
    pub fn new(words: Vec<YWord>) -> Self {
        ColumnOrder { pos: words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect(), words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &YWord {
        &self.words[i]
    }

    pub fn words(&self) -> &[YWord] {
        &self.words
    }

    pub fn position(&self, w: &YWord) -> Result<usize> {
        self.pos.get(w).copied().ok_or_else(|| Error::InvalidArgument(format!("{w} is not a column")))
    }

    pub fn row<F: Scalars>(&self, field: &F, l: &LinComb<YWord>) -> Result<Vec<(usize, F::S)>> {
        l.iter().map(|(w, c)| Ok((self.position(w)?, field.embed(c)?))).collect()
    }
}

/// Rank profile of a set of rows: for each row, whether it increased the rank.
pub struct Elimination {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub independent_rows: Vec<usize>,
}

fn eliminate_with<F: Scalars>(field: F, order: &ColumnOrder, rows: &[&LinComb<YWord>]) -> Result<Elimination> {
    let mut ech = Echelon::new(field);
    let mut independent_rows = Vec::new();
    for (i, l) in rows.iter().enumerate() {
        let row = order.row(&ech.field, l)?;
        if ech.insert(row) {
            independent_rows.push(i);
        }
    }
    Ok(Elimination { rank: ech.rank(), pivots: ech.pivot_positions().collect(), independent_rows })
}

/// Echelonizes `rows` over the given column order. Modular mode uses two primes and keeps
/// the larger rank, which can only undercount.
pub fn eliminate(order: &ColumnOrder, rows: &[&LinComb<YWord>], mode: RankMode, weight: u32) -> Result<Elimination> {
    match mode.resolve(weight) {
        RankMode::Exact => eliminate_with(ExactField, order, rows),
        _ => {
            let level = rows.first().map(|l| l.level()).unwrap_or(1);
            let a = eliminate_with(ModularField::new(level, 0), order, rows)?;
            let b = eliminate_with(ModularField::new(level, 1), order, rows)?;
            Ok(if b.rank > a.rank { b } else { a })
        }
    }
}
