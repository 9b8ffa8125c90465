//! Relation families, exact rank computations, basis checks and the finite/symmetrized
//! evidence harness.

mod discover;
mod dual;
mod families;
mod rank;
mod store;

use std::collections::BTreeMap;

use serde::Serialize;

pub use discover::{discover_relations, discovery_primes};
pub use dual::{DualVerdict, DualVerifier, ProjectionBasis};
pub use families::{
    gen_homogeneous, gen_linear_shuffle, gen_linear_stuffle, gen_reversal, imported_relations, Provenance,
    RelationRecord,
};
pub use rank::{eliminate, ColumnOrder, Echelon, Elimination, ExactField, ModularField, RankMode, Scalars};
pub use store::{read_store, StoreEntry, StoreWriter};

use crate::error::Result;
use crate::fcv::FcvEvaluator;
use crate::words::{all_ywords, YWord};

/// Relations of one weight against the canonical index columns.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub level: u32,
    pub weight: u32,
    pub columns: Vec<YWord>,
    pub rows: Vec<RelationRecord>,
}

impl RelationMatrix {
    pub fn new(level: u32, weight: u32, rows: Vec<RelationRecord>) -> Self {
        RelationMatrix { level, weight, columns: all_ywords(weight, level), rows }
    }

    /// `row col coeff` lines, 0-based, preceded by a `% rows cols N` header.
    pub fn to_triplets(&self) -> String {
        let order = ColumnOrder::new(self.columns.clone());
        let mut out = format!("% {} {} {}\n", self.rows.len(), self.columns.len(), self.level);
        for (i, r) in self.rows.iter().enumerate() {
            for (w, c) in r.combo.iter() {
                let j = order.position(w).expect("column");
                out.push_str(&format!("{i}\t{j}\t{c}\n"));
            }
        }
        out
    }
}

/// Rank, dimension bound and spanning quotient words for one weight.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    #[serde(rename = "N")]
    pub level: u32,
    pub weight: u32,
    pub columns: usize,
    pub rows: usize,
    pub rank: usize,
    pub dim_upper_bound: usize,
    pub quotient_words: Vec<YWord>,
    /// Rank lost when one family is left out.
    pub marginals: BTreeMap<String, usize>,
    pub mode: RankMode,
}

pub fn rank_and_bound(m: &RelationMatrix, mode: RankMode) -> Result<BoundReport> {
    let order = ColumnOrder::new(m.columns.clone());
    let rows: Vec<_> = m.rows.iter().map(|r| &r.combo).collect();
    let full = eliminate(&order, &rows, mode, m.weight)?;
    let mut marginals = BTreeMap::new();
    for p in Provenance::ALL {
        if !m.rows.iter().any(|r| r.provenance == p) {
            continue;
        }
        let rest: Vec<_> = m.rows.iter().filter(|r| r.provenance != p).map(|r| &r.combo).collect();
        let e = eliminate(&order, &rest, mode, m.weight)?;
        marginals.insert(p.name().to_string(), full.rank - e.rank);
    }
    let quotient_words =
        (0..order.len()).filter(|i| full.pivots.binary_search(i).is_err()).map(|i| order.word(i).clone()).collect();
    Ok(BoundReport {
        level: m.level,
        weight: m.weight,
        columns: m.columns.len(),
        rows: m.rows.len(),
        rank: full.rank,
        dim_upper_bound: m.columns.len() - full.rank,
        quotient_words,
        marginals,
        mode: mode.resolve(m.weight),
    })
}

/// The conjectured basis ζ({1}^w; ξ, ξ^{δ2}, ..., ξ^{δw}), δ_j ∈ {0, 1}.
pub fn basis_words(w: u32, level: u32) -> Vec<YWord> {
    (0..1u32 << (w - 1))
        .map(|mask| {
            let exps: Vec<i64> =
                std::iter::once(1).chain((0..w - 1).map(|j| ((mask >> (w - 2 - j)) & 1) as i64)).collect();
            YWord::from_index(&vec![1; w as usize], &exps, level)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    #[serde(rename = "N")]
    pub level: u32,
    pub weight: u32,
    pub basis: Vec<YWord>,
    pub spans: bool,
    /// Columns not expressible through the basis modulo the relations.
    pub unreached: Vec<YWord>,
    pub dim_upper_bound: usize,
}

/// Whether the conjectured basis words generate the quotient by `rows`.
pub fn basis_check_rows(level: u32, weight: u32, rows: &[RelationRecord], mode: RankMode) -> Result<BasisReport> {
    let basis = basis_words(weight, level);
    let mut words: Vec<YWord> = all_ywords(weight, level).into_iter().filter(|w| !basis.contains(w)).collect();
    let others = words.len();
    words.extend(basis.iter().cloned());
    let order = ColumnOrder::new(words);
    let combos: Vec<_> = rows.iter().map(|r| &r.combo).collect();
    let e = eliminate(&order, &combos, mode, weight)?;
    let unreached: Vec<YWord> =
        (0..others).filter(|i| e.pivots.binary_search(i).is_err()).map(|i| order.word(i).clone()).collect();
    Ok(BasisReport {
        level,
        weight,
        basis,
        spans: unreached.is_empty(),
        unreached,
        dim_upper_bound: order.len() - e.rank,
    })
}

/// Whether a relation holds in A(N): failures are allowed only at primes p ≤ w + 1, where
/// p − 1 can divide the weight and power sums stop vanishing.
pub fn holds_in_a(report: &crate::fcv::VerifyReport) -> bool {
    !report.checked.is_empty() && report.failing.iter().all(|&p| p <= report.weight as u64 + 1)
}

/// Options for staged generation.
#[derive(Clone, Debug)]
pub struct GenerationOptions {
    pub mode: RankMode,
    /// Verify each record against finite values before it can seed higher weights.
    pub verify: bool,
    /// Add relations found by lattice search at these primes; empty disables the search.
    pub discovery_primes: Vec<u64>,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions { mode: RankMode::Auto, verify: true, discovery_primes: Vec::new() }
    }
}

impl GenerationOptions {
    /// Defaults with the lattice search enabled at [`discovery_primes`].
    pub fn with_discovery(level: u32) -> Self {
        GenerationOptions { discovery_primes: discovery_primes(level), ..Default::default() }
    }
}

/// All records of one weight with their finite-value verdicts.
#[derive(Clone, Debug)]
pub struct WeightStage {
    pub weight: u32,
    pub records: Vec<RelationRecord>,
    /// `None` when verification was skipped.
    pub verdicts: Vec<Option<bool>>,
    pub report: BoundReport,
    /// Indices of an independent subset spanning the verified relations.
    pub independent: Vec<usize>,
}

impl WeightStage {
    /// Records not refuted by the finite-value check.
    pub fn usable(&self) -> Vec<RelationRecord> {
        self.records.iter().zip(&self.verdicts).filter(|(_, v)| **v != Some(false)).map(|(r, _)| r.clone()).collect()
    }

    pub fn matrix(&self, level: u32) -> RelationMatrix {
        RelationMatrix::new(level, self.weight, self.usable())
    }
}

/// Relation families generated weight by weight; linear-stuffle inputs at weight w are the
/// verified independent relations of all lower weights.
pub struct RelationSystem {
    pub level: u32,
    pub stages: Vec<WeightStage>,
}

impl RelationSystem {
    pub fn generate(level: u32, max_weight: u32, fcv: Option<&FcvEvaluator>, opts: &GenerationOptions) -> Result<Self> {
        let mut stages: Vec<WeightStage> = Vec::new();
        for w in 1..=max_weight {
            let known: Vec<RelationRecord> =
                stages.iter().flat_map(|s| s.independent.iter().map(|&i| s.records[i].clone())).collect();
            let mut records = gen_homogeneous(w, level);
            records.extend(gen_reversal(w, level));
            records.extend(gen_linear_shuffle(w, level)?);
            records.extend(imported_relations(w, level));
            records.extend(gen_linear_stuffle(w, level, &known)?);
            if !opts.discovery_primes.is_empty() {
                let order = ColumnOrder::new(all_ywords(w, level));
                let combos: Vec<_> = records.iter().map(|r| &r.combo).collect();
                let e = eliminate(&order, &combos, opts.mode, w)?;
                let free: Vec<YWord> =
                    (0..order.len()).filter(|i| e.pivots.binary_search(i).is_err()).map(|i| order.word(i).clone()).collect();
                let ev = FcvEvaluator::new(level, &opts.discovery_primes)?;
                records.extend(discover_relations(&ev, &free)?);
            }
            let verdicts: Vec<Option<bool>> = match (fcv, opts.verify) {
                (Some(ev), true) => {
                    use rayon::prelude::*;
                    records.par_iter().map(|r| ev.verify(&r.combo).map(|v| Some(holds_in_a(&v)))).collect::<Result<_>>()?
                }
                _ => vec![None; records.len()],
            };
            let usable: Vec<usize> = (0..records.len()).filter(|&i| verdicts[i] != Some(false)).collect();
            let matrix = RelationMatrix::new(level, w, usable.iter().map(|&i| records[i].clone()).collect());
            let report = rank_and_bound(&matrix, opts.mode)?;
            let order = ColumnOrder::new(matrix.columns.clone());
            let combos: Vec<_> = usable.iter().map(|&i| &records[i].combo).collect();
            let e = eliminate(&order, &combos, opts.mode, w)?;
            let independent = e.independent_rows.iter().map(|&k| usable[k]).collect();
            stages.push(WeightStage { weight: w, records, verdicts, report, independent });
        }
        Ok(RelationSystem { level, stages })
    }

    pub fn stage(&self, w: u32) -> Option<&WeightStage> {
        self.stages.iter().find(|s| s.weight == w)
    }

    pub fn basis_check(&self, w: u32, mode: RankMode) -> Result<BasisReport> {
        let s = self.stage(w).expect("weight generated");
        basis_check_rows(self.level, w, &s.usable(), mode)
    }

    /// Quotient words per weight, for projecting symmetrized values.
    pub fn quotient_words(&self) -> BTreeMap<u32, Vec<YWord>> {
        self.stages.iter().map(|s| (s.weight, s.report.quotient_words.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_words_shape() {
        let b = basis_words(3, 4);
        assert_eq!(b.len(), 4);
        assert_eq!(b[0], YWord::parse("y(1,1) y(1,0) y(1,0)", 4).unwrap());
        assert_eq!(b[3], YWord::parse("y(1,1) y(1,1) y(1,1)", 4).unwrap());
        assert_eq!(basis_words(1, 3), vec![YWord::letter(1, 1)]);
    }

    #[test]
    fn empty_matrix_bound_is_column_count() {
        let m = RelationMatrix::new(4, 2, vec![]);
        let r = rank_and_bound(&m, RankMode::Exact).unwrap();
        assert_eq!(r.dim_upper_bound, 20);
    }

    #[test]
    fn triplet_header() {
        let m = RelationMatrix::new(3, 1, gen_homogeneous(1, 3));
        let t = m.to_triplets();
        assert!(t.starts_with("% 1 3 3\n"));
        assert!(t.contains("0\t0\t1"));
    }
}
