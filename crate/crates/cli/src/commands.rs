//! Subcommand bodies. Each returns the process exit code on success.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cmzv_core::catalog::{check_identity, find_identity, known_identities, KnownIdentity};
use cmzv_core::relations::{holds_in_a, read_store, GenerationOptions, StoreEntry, StoreWriter};
use cmzv_core::{
    AssociatorTruncation, DualVerifier, Error, FcvEvaluator, Precision, Product, RankMode, RelationSystem,
    ScvEngine, YWord,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::Sink;
use crate::{UsageError, EXIT_PRECISION, EXIT_USAGE, EXIT_VERIFICATION};

pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionNotAchieved { .. } | Error::TDependence { .. } => EXIT_PRECISION,
        Error::NotGroupLike { .. } => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}

type Outcome = Result<u8, Failure>;

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(1));
    }
    v
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn fcv(cfg: &RunConfig, word: &str, out: &mut Sink) -> Outcome {
    let w = YWord::parse(word, cfg.level)?;
    let v = FcvEvaluator::new(cfg.level, &cfg.primes)?.fcv(&w);
    if out.csv {
        let rows: Vec<Vec<String>> = v
            .components
            .iter()
            .map(|(p, c)| {
                vec![
                    p.to_string(),
                    v.below_threshold.contains(p).to_string(),
                    join(c.coeffs()),
                    join(c.reduce_cyclotomic()),
                ]
            })
            .collect();
        out.table(&["prime", "below_threshold", "coefficients", "reduced"], &rows)?;
    } else {
        out.document(&v.to_json())?;
    }
    Ok(0)
}

pub fn scv(cfg: &RunConfig, word: &str, version: Product, out: &mut Sink) -> Outcome {
    let w = YWord::parse(word, cfg.level)?;
    let e = ScvEngine::new(cfg.level, Precision::digits(cfg.digits));
    let v = e.scv(&w, version)?;
    let rec = e.record(&w, version, &v);
    if out.csv {
        let row = vec![rec.word.clone(), rec.version.clone(), rec.value.re.clone(), rec.value.im.clone(), format!("{:e}", rec.err_bound)];
        out.table(&["word", "version", "re", "im", "err_bound"], &[row])?;
    } else {
        let mut doc = with_schema(serde_json::to_value(&rec).expect("serializable"));
        doc["N"] = json!(cfg.level);
        out.document(&doc)?;
    }
    if v.err() > cfg.tolerance {
        eprintln!("error: {}", Error::PrecisionNotAchieved { bound: v.err(), tolerance: cfg.tolerance });
        return Ok(EXIT_PRECISION);
    }
    Ok(0)
}

fn generate(cfg: &RunConfig, level: u32, weight: u32, discover: bool, mode: RankMode) -> Result<RelationSystem, Failure> {
    let ev = FcvEvaluator::new(level, &cfg.primes_for(level)?)?;
    let mut opts = if discover { GenerationOptions::with_discovery(level) } else { GenerationOptions::default() };
    opts.mode = mode;
    Ok(RelationSystem::generate(level, weight, Some(&ev), &opts)?)
}

struct LevelData {
    fcv: FcvEvaluator,
    scv: Option<(ScvEngine, BTreeMap<u32, Vec<YWord>>, u32)>,
}

pub fn verify(cfg: &RunConfig, file: &Path, dual: bool, out: &mut Sink) -> Outcome {
    let entries = read_store(file)?;
    let mut levels: BTreeMap<u32, u32> = BTreeMap::new();
    for e in &entries {
        let w = levels.entry(e.level).or_insert(0);
        *w = (*w).max(e.weight);
    }
    let mut data = BTreeMap::new();
    for (&level, &max_w) in &levels {
        let fcv = FcvEvaluator::new(level, &cfg.primes_for(level)?)?;
        let scv = if dual {
            if max_w > cfg.max_weight {
                return Err(UsageError(format!("dual check limited to weight {}; file has weight {max_w}", cfg.max_weight)).into());
            }
            let sys = generate(cfg, level, max_w, true, RankMode::Auto)?;
            Some((ScvEngine::new(level, Precision::digits(cfg.digits)), sys.quotient_words(), max_w))
        } else {
            None
        };
        data.insert(level, LevelData { fcv, scv });
    }
    let mut verifiers = BTreeMap::new();
    for (level, d) in &data {
        if let Some((engine, quotient, max_w)) = &d.scv {
            verifiers.insert(*level, DualVerifier::new(&d.fcv, engine, quotient, *max_w)?);
        }
    }
    let mut failed = false;
    let mut rows = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let d = &data[&e.level];
        let report = d.fcv.verify(&e.combo)?;
        let holds = e.combo.is_zero() || holds_in_a(&report);
        let mut line = json!({
            "schema": 1,
            "line": i + 1,
            "N": e.level,
            "weight": e.weight,
            "provenance": e.provenance.name(),
            "fcv_verdict": holds,
            "failing_primes": report.failing,
        });
        failed |= !holds;
        let mut residual = String::new();
        if let Some(v) = verifiers.get(&e.level) {
            let dv = v.verify(&e.to_record()?)?;
            let ok = dv.projected && dv.scv_residual <= cfg.tolerance;
            failed |= !ok;
            line["scv_verdict"] = json!(ok);
            line["scv_residual"] = json!(dv.scv_residual);
            line["corrections"] = serde_json::to_value(&dv.corrections).expect("serializable");
            residual = format!("{:e}", dv.scv_residual);
        }
        if out.csv {
            rows.push(vec![
                (i + 1).to_string(),
                e.level.to_string(),
                e.weight.to_string(),
                e.provenance.name().to_string(),
                holds.to_string(),
                join(&report.failing),
                residual,
            ]);
        } else {
            out.line(&line)?;
        }
    }
    if out.csv {
        out.table(&["line", "N", "weight", "provenance", "fcv_verdict", "failing_primes", "scv_residual"], &rows)?;
    }
    Ok(if failed { EXIT_VERIFICATION } else { 0 })
}

pub fn bound(cfg: &RunConfig, discover: bool, mode: RankMode, relations: Option<PathBuf>, out: &mut Sink) -> Outcome {
    let sys = generate(cfg, cfg.level, cfg.max_weight, discover, mode)?;
    if let Some(path) = relations {
        let mut w = StoreWriter::open(&path)?;
        for s in &sys.stages {
            for (r, v) in s.records.iter().zip(&s.verdicts) {
                w.append(&StoreEntry::from_record(r, *v, None))?;
            }
        }
    }
    let stages: Vec<Value> = sys
        .stages
        .iter()
        .map(|s| {
            let r = &s.report;
            json!({
                "weight": s.weight,
                "columns": r.columns,
                "rows": r.rows,
                "rank": r.rank,
                "dim_upper_bound": r.dim_upper_bound,
                "power_of_two": 1usize << (s.weight - 1),
                "refuted": s.verdicts.iter().filter(|v| **v == Some(false)).count(),
                "marginals": r.marginals,
                "quotient_words": r.quotient_words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    if out.csv {
        let rows: Vec<Vec<String>> = sys
            .stages
            .iter()
            .map(|s| {
                let r = &s.report;
                vec![s.weight.to_string(), r.columns.to_string(), r.rows.to_string(), r.rank.to_string(), r.dim_upper_bound.to_string()]
            })
            .collect();
        out.table(&["weight", "columns", "rows", "rank", "dim_upper_bound"], &rows)?;
    } else {
        let last = sys.stages.last().map(|s| s.report.dim_upper_bound);
        out.document(&json!({
            "schema": 1,
            "N": cfg.level,
            "weight": cfg.max_weight,
            "discovery": discover,
            "primes": cfg.primes.len(),
            "stages": stages,
            "dim_upper_bound": last,
        }))?;
    }
    Ok(0)
}

pub fn basis(cfg: &RunConfig, discover: bool, out: &mut Sink) -> Outcome {
    let sys = generate(cfg, cfg.level, cfg.max_weight, discover, RankMode::Auto)?;
    let b = sys.basis_check(cfg.max_weight, RankMode::Auto)?;
    if out.csv {
        let rows: Vec<Vec<String>> = b.basis.iter().map(|w| vec![w.to_string(), b.spans.to_string()]).collect();
        out.table(&["basis_word", "spans"], &rows)?;
    } else {
        out.document(&with_schema(serde_json::to_value(&b).expect("serializable")))?;
    }
    Ok(if b.spans { 0 } else { EXIT_VERIFICATION })
}

fn identity_report(cfg: &RunConfig, k: &KnownIdentity) -> Result<(bool, Value), Failure> {
    let fcv = FcvEvaluator::new(k.level, &cfg.primes_for(k.level)?)?;
    let scv = ScvEngine::new(k.level, Precision::digits(cfg.digits));
    let r = check_identity(k, &fcv, Some(&scv))?;
    let pass = r.fcv_holds && r.scv_matches(cfg.tolerance);
    let v = json!({
        "id": k.id,
        "source": k.source,
        "N": k.level,
        "weight": k.weight,
        "status": if pass { "PASS" } else { "FAIL" },
        "relation": k.combo,
        "fcv": {
            "primes": r.checked_primes.len(),
            "failing_primes": r.failing_primes,
            "exact": r.fcv_exact,
            "holds_in_a": r.fcv_holds,
        },
        "scv": {
            "stated_correction": k.correction,
            "difference": r.scv_difference,
            "offset_over_2pii": r.offset_over_2pii.as_ref().map(|(a, b)| json!({"re": a, "im": b})),
        },
    });
    Ok((pass, v))
}

pub fn identities(cfg: &RunConfig, id: &str, level: Option<u32>, out: &mut Sink) -> Outcome {
    let catalog = known_identities();
    if id == "list" {
        let items: Vec<Value> =
            catalog.iter().map(|k| json!({"id": k.id, "N": k.level, "weight": k.weight, "source": k.source})).collect();
        out.document(&json!({"schema": 1, "identities": items}))?;
        return Ok(0);
    }
    let chosen: Vec<KnownIdentity> = if id == "all" {
        catalog.into_iter().filter(|k| level.is_none_or(|n| n == k.level)).collect()
    } else {
        vec![find_identity(id).ok_or_else(|| UsageError(format!("unknown identity id `{id}`; try --id list")))?]
    };
    let mut all_pass = true;
    let mut reports = Vec::new();
    for k in &chosen {
        let (pass, v) = identity_report(cfg, k)?;
        all_pass &= pass;
        reports.push(v);
    }
    if out.csv {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|v| {
                vec![
                    v["id"].as_str().unwrap_or_default().to_string(),
                    v["status"].as_str().unwrap_or_default().to_string(),
                    join(v["fcv"]["failing_primes"].as_array().into_iter().flatten()),
                    v["scv"]["difference"].to_string(),
                    v["source"].as_str().unwrap_or_default().to_string(),
                ]
            })
            .collect();
        out.table(&["id", "status", "failing_primes", "scv_difference", "source"], &rows)?;
    } else {
        out.document(&json!({"schema": 1, "identities": reports}))?;
    }
    Ok(if all_pass { 0 } else { EXIT_VERIFICATION })
}

pub fn associator_build(cfg: &RunConfig, cache: Option<PathBuf>, out: &mut Sink) -> Outcome {
    let w = cfg.max_weight as usize;
    let path = cache.unwrap_or_else(|| cfg.out_dir.join(format!("associator-N{}-W{w}-d{}.json", cfg.level, cfg.digits)));
    let engine = ScvEngine::new(cfg.level, Precision::digits(cfg.digits));
    let a = AssociatorTruncation::build(&engine, w)?;
    a.save(&path)?;
    let (defect, _, _) = a.group_like_defect()?;
    let worst_err = a.iter().map(|(_, c)| c.err()).fold(0.0, f64::max);
    let doc = json!({
        "schema": 1,
        "N": cfg.level,
        "max_weight": w,
        "digits": cfg.digits,
        "coefficients": a.len(),
        "max_error_bound": worst_err,
        "group_like_defect": defect,
        "path": path.display().to_string(),
    });
    if out.csv {
        let row = vec![cfg.level.to_string(), w.to_string(), a.len().to_string(), format!("{defect:e}"), path.display().to_string()];
        out.table(&["N", "max_weight", "coefficients", "group_like_defect", "path"], &[row])?;
    } else {
        out.document(&doc)?;
    }
    if worst_err > cfg.tolerance {
        return Ok(EXIT_PRECISION);
    }
    Ok(if defect > cfg.tolerance { EXIT_VERIFICATION } else { 0 })
}
