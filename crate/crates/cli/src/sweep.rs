//! Character sweeps with an append-only JSON-lines cache.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rchi_core::character::characters_of_order;
use rchi_core::{whittaker_dims, Character, CoverDatum, NumericOptions};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::report::group_type;
use crate::spec::ProblemSpec;

pub struct SweepConfig {
    pub max_order: u32,
    pub reducible_only: bool,
    /// Upper bound on `|𝒳_{Q,n}|` times the number of freshly computed characters.
    pub budget: Option<u64>,
    pub numeric_fallback: bool,
}

/// Content hash of the cover description together with one character.
pub fn cache_key(base: &Value, chi: &Character) -> String {
    let doc = json!({"problem": base, "character": {"order": chi.order(), "exps": chi.exps()}});
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

fn record(chi: &Character, opts: &NumericOptions, numeric_fallback: bool) -> Value {
    let head = json!({"order": chi.order(), "basis_exponents": chi.exps()});
    let rep = match whittaker_dims(chi, opts) {
        Ok(r) => r,
        Err(e) => return json!({"character": head, "error": e.to_string()}),
    };
    let numeric = rep.orbits.iter().any(|o| !o.exact || !matches!(o.verdict.as_str(), "holds" | "fails"));
    if numeric && !numeric_fallback {
        return json!({"character": head, "error": "result needs numeric fallback"});
    }
    let labels: Vec<&str> = rep.rgroup.irr.iter().map(|s| s.label.as_str()).collect();
    let dims: serde_json::Map<String, Value> = labels.iter().zip(&rep.dims).map(|(l, d)| (l.to_string(), json!(d))).collect();
    json!({
        "character": head,
        "r_type": group_type(&rep.rgroup.invariant_factors),
        "r_order": rep.rgroup.r_chi.len(),
        "phi_chi": rep.rgroup.phi_chi.len(),
        "dims": dims,
        "verdicts": rep.orbits.iter().map(|o| o.verdict.as_str()).collect::<Vec<_>>(),
        "exact": !numeric,
    })
}

struct Cache {
    file: File,
    entries: HashMap<String, Value>,
}

impl Cache {
    /// Opens `path` under an exclusive lock held until the cache is dropped.
    fn open(path: &Path) -> CliResult<Self> {
        let file = OpenOptions::new().read(true).append(true).create(true).open(path)?;
        file.lock()?;
        let mut entries = HashMap::new();
        for (i, line) in BufReader::new(&file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v: Value = serde_json::from_str(&line)
                .map_err(|e| CliError::Parse(format!("cache line {}: {e}", i + 1)))?;
            if let (Some(k), Some(r)) = (v["key"].as_str(), v.get("record")) {
                entries.insert(k.to_string(), r.clone());
            }
        }
        Ok(Self { file, entries })
    }

    fn append(&mut self, key: &str, rec: &Value) -> CliResult<()> {
        writeln!(self.file, "{}", json!({"key": key, "record": rec}))?;
        self.file.flush()?;
        self.entries.insert(key.to_string(), rec.clone());
        Ok(())
    }
}

pub struct SweepStats {
    pub emitted: usize,
    pub computed: usize,
    pub cached: usize,
}

/// Runs the sweep, writing one JSON line per character to `out`.
pub fn run(
    spec: &ProblemSpec,
    cover: &CoverDatum,
    cfg: &SweepConfig,
    cache_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<SweepStats> {
    let mut base = spec.clone();
    base.character = None;
    let base = serde_json::to_value(&base).map_err(|e| CliError::Parse(e.to_string()))?;
    let opts = spec.numeric();
    let mut cache = cache_path.map(Cache::open).transpose()?;
    let chars: Vec<Character> = (1..=cfg.max_order).flat_map(|m| characters_of_order(cover, m)).collect();
    let unit = cover.x_qn.order.max(1);
    let mut stats = SweepStats { emitted: 0, computed: 0, cached: 0 };
    for (idx, chi) in chars.iter().enumerate() {
        let key = cache_key(&base, chi);
        let rec = match cache.as_ref().and_then(|c| c.entries.get(&key)) {
            Some(r) => {
                stats.cached += 1;
                r.clone()
            }
            None => {
                if let Some(b) = cfg.budget {
                    if (stats.computed as u64 + 1) * unit > b {
                        return Err(CliError::Budget {
                            budget: b,
                            done: idx,
                            total: chars.len(),
                        });
                    }
                }
                let r = record(chi, &opts, cfg.numeric_fallback);
                stats.computed += 1;
                if let Some(c) = cache.as_mut() {
                    c.append(&key, &r)?;
                }
                r
            }
        };
        if cfg.reducible_only && rec["r_order"].as_u64().unwrap_or(1) <= 1 {
            continue;
        }
        writeln!(out, "{rec}")?;
        stats.emitted += 1;
    }
    Ok(stats)
}
