//! Generators for the relation families among finite values.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::hopfalg::{shuffle_y, stuffle, LinComb};
use crate::words::{all_ywords, q_map, tau, YWord};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Reversal,
    Homogeneous,
    LinearStuffle,
    LinearShuffle,
    Imported,
}

impl Provenance {
    pub const ALL: [Provenance; 5] = [
        Provenance::Reversal,
        Provenance::Homogeneous,
        Provenance::LinearStuffle,
        Provenance::LinearShuffle,
        Provenance::Imported,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Reversal => "reversal",
            Provenance::Homogeneous => "homogeneous",
            Provenance::LinearStuffle => "linear-stuffle",
            Provenance::LinearShuffle => "linear-shuffle",
            Provenance::Imported => "imported",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), message: "unknown provenance".into() })
    }
}

/// A linear relation among values of one weight, in plain index columns.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationRecord {
    pub weight: u32,
    pub level: u32,
    pub provenance: Provenance,
    pub combo: LinComb<YWord>,
    pub metadata: String,
}

impl RelationRecord {
    pub fn new(level: u32, provenance: Provenance, combo: LinComb<YWord>, metadata: String) -> Result<Self> {
        let grades = combo.grades();
        if grades.len() > 1 {
            return Err(Error::InvalidArgument(format!("inhomogeneous relation {combo}")));
        }
        let weight = grades.first().copied().unwrap_or(0) as u32;
        Ok(RelationRecord { weight, level, provenance, combo, metadata })
    }
}

fn int(level: u32, n: i64) -> CycNumber {
    CycNumber::from_integer(level, n)
}

/// ζ(s⃗ reversed; e⃗ reversed) − (−1)^w ξ^{−Σe} ζ(s⃗; −e⃗) for every index of weight w.
pub fn gen_reversal(w: u32, level: u32) -> Vec<RelationRecord> {
    let sign = if w.is_multiple_of(2) { 1 } else { -1 };
    all_ywords(w, level)
        .into_iter()
        .filter_map(|v| {
            let mut combo = LinComb::word(level, v.reversed());
            let c = CycNumber::root(level, -v.exponent_sum()).scale(&num_rational::BigRational::from_integer(
                (-sign).into(),
            ));
            combo.add_term(v.conjugated(level), &c);
            (!combo.is_zero()).then(|| RelationRecord::new(level, Provenance::Reversal, combo, v.to_string()).unwrap())
        })
        .collect()
}

/// ζ({s}^d; {1}^d) = 0 for s·d = w.
pub fn gen_homogeneous(w: u32, level: u32) -> Vec<RelationRecord> {
    (1..=w)
        .filter(|d| w.is_multiple_of(*d))
        .map(|d| {
            let s = w / d;
            let v = YWord::from_index(&vec![s; d as usize], &vec![0; d as usize], level);
            RelationRecord::new(level, Provenance::Homogeneous, LinComb::word(level, v), format!("s={s} d={d}"))
                .unwrap()
        })
        .collect()
}

/// R ∗ v for each known relation R of weight k < w and each index word v of weight w − k.
pub fn gen_linear_stuffle(w: u32, level: u32, known: &[RelationRecord]) -> Result<Vec<RelationRecord>> {
    let jobs: Vec<(&RelationRecord, YWord)> = known
        .iter()
        .filter(|r| r.weight < w && r.weight > 0)
        .flat_map(|r| all_ywords(w - r.weight, level).into_iter().map(move |v| (r, v)))
        .collect();
    let out: Vec<Option<RelationRecord>> = jobs
        .par_iter()
        .map(|(r, v)| {
            let combo = stuffle(&r.combo, &LinComb::word(level, v.clone()))?;
            if combo.is_zero() {
                return Ok(None);
            }
            let meta = format!("({}) * {v}", r.metadata);
            Ok(Some(RelationRecord::new(level, Provenance::LinearStuffle, combo, meta)?))
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// u ⧢ v − τ(u) v for level-one u ≠ 𝟙 and arbitrary v, mapped to index columns by q.
pub fn gen_linear_shuffle(w: u32, level: u32) -> Result<Vec<RelationRecord>> {
    let mut jobs = Vec::new();
    for a in 1..=w {
        for u in all_ywords(a, 1) {
            for v in all_ywords(w - a, level) {
                jobs.push((u.clone(), v));
            }
        }
    }
    let out: Vec<Option<RelationRecord>> = jobs
        .par_iter()
        .map(|(u, v)| {
            let mut words = shuffle_y(&LinComb::word(level, u.clone()), &LinComb::word(level, v.clone()))?;
            let t = tau(u, level)?;
            words.add_term(t.word.concat(v), &(-t.coeff));
            let mut combo = LinComb::zero(level);
            for (x, c) in words.iter() {
                combo.add_term(q_map(x, level), c);
            }
            if combo.is_zero() {
                return Ok(None);
            }
            Ok(Some(RelationRecord::new(level, Provenance::LinearShuffle, combo, format!("{u} | {v}"))?))
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// Relations taken from known closed forms rather than generated.
pub fn imported_relations(w: u32, level: u32) -> Vec<RelationRecord> {
    let mut out = Vec::new();
    if level == 4 && w == 1 {
        // ζ(1;−1) = 2ζ(1;i) + 2ζ(1;−i), from the depth-one closed forms.
        let mut combo = LinComb::word(level, YWord::letter(1, 2));
        combo.add_term(YWord::letter(1, 1), &int(level, -2));
        combo.add_term(YWord::letter(1, 3), &int(level, -2));
        out.push(RelationRecord::new(level, Provenance::Imported, combo, "depth-one closed forms".into()).unwrap());
    }
    out
}
