//! JSON and markdown renderings of engine results.

use std::fmt::Write as _;

use rchi_core::character::index_formula_check;
use rchi_core::intlin::IVec;
use rchi_core::{Character, CoverDatum, EvalMatrix, OrbitTable, RGroupData, WhittakerReport};
use serde_json::{json, Value};

/// `s1s3` style name of a Weyl element, 1-based; `e` for the identity.
pub fn word(c: &CoverDatum, w: usize) -> String {
    let rw = &c.datum.weyl.get(w).reduced_word;
    if rw.is_empty() {
        return "e".into();
    }
    rw.iter().map(|i| format!("s{}", i + 1)).collect()
}

pub fn group_type(inv: &[i64]) -> String {
    if inv.is_empty() {
        return "1".into();
    }
    inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
}

pub fn cover_json(c: &CoverDatum) -> Value {
    let table = OrbitTable::new(c);
    let r = c.datum.rank();
    let simple_n: Vec<i64> = (0..r).map(|i| c.n_alpha[c.datum.simple_index(i)]).collect();
    let exceptional = match c.exceptional_points() {
        Ok(p) => json!(p),
        Err(_) => Value::Null,
    };
    let orbits: Vec<Vec<&IVec>> = table
        .orbits
        .iter()
        .map(|o| o.iter().map(|&x| &table.reps[x]).collect())
        .collect();
    json!({
        "datum": c.datum.label,
        "rank_y": c.rank_y(),
        "n": c.n,
        "epsilon": c.eps,
        "bq": c.bq,
        "n_alpha": simple_n,
        "x_qn": {"order": c.x_qn.order, "invariant_factors": c.x_qn.invariant_factors},
        "y_qn_basis": c.y_qn,
        "chi_alpha_usable": Character::from_chi_alpha(c, 1, &vec![0; r]).is_ok(),
        "dual_type": c.dual_label,
        "center_order": c.center_order,
        "saturated": c.saturated,
        "metaplectic": c.metaplectic,
        "exceptional_classes": exceptional,
        "orbits": orbits,
    })
}

pub fn character_json(chi: &Character) -> Value {
    let c = chi.cover;
    let r = c.datum.rank();
    let phi: Vec<&IVec> = chi.phi_chi().iter().map(|&b| &c.datum.pos_coroot_coords[b]).collect();
    json!({
        "order": chi.order(),
        "basis_exponents": chi.exps(),
        "chi_alpha": (0..r).map(|i| chi.chi_root_exp(c.datum.simple_index(i))).collect::<Vec<_>>(),
        "phi_chi": phi,
    })
}

pub fn rgroup_json(chi: &Character, rg: &RGroupData) -> Value {
    let c = chi.cover;
    let irr: Vec<Value> = rg
        .irr
        .iter()
        .enumerate()
        .map(|(s, sigma)| {
            let vals: Vec<String> = (0..rg.r_chi.len()).map(|k| rg.value(s, k).to_string()).collect();
            json!({"label": sigma.label, "values": vals})
        })
        .collect();
    let index = match index_formula_check(chi) {
        Ok((a, b)) => json!({"lhs": a, "rhs": b}),
        Err(_) => Value::Null,
    };
    json!({
        "w_chi_order": rg.w_chi.len(),
        "w_chi_0_order": rg.w_chi_0.len(),
        "r_chi": rg.r_chi.iter().map(|&w| word(c, w)).collect::<Vec<_>>(),
        "r_chi_sc": rg.r_chi_sc.iter().map(|&w| word(c, w)).collect::<Vec<_>>(),
        "type": group_type(&rg.invariant_factors),
        "irreducibles": irr,
        "index_formula": index,
    })
}

fn by_label(rg: &RGroupData, v: &[i64]) -> Value {
    let m: serde_json::Map<String, Value> = rg.irr.iter().zip(v).map(|(s, k)| (s.label.clone(), json!(k))).collect();
    Value::Object(m)
}

/// Per-orbit rows; `full` adds traces, fixed-point counts and verdicts.
pub fn orbits_json(rep: &WhittakerReport, full: bool) -> Vec<Value> {
    rep.orbits
        .iter()
        .map(|o| {
            let mut v = json!({
                "reps": o.reps,
                "sigma_wh": by_label(&rep.rgroup, &o.sigma_wh),
                "exact": o.exact,
            });
            if full {
                let m = v.as_object_mut().expect("object");
                m.insert("sigma_x".into(), by_label(&rep.rgroup, &o.sigma_x));
                m.insert("traces".into(), json!(o.traces.iter().map(|t| t.render()).collect::<Vec<_>>()));
                m.insert("fixed".into(), json!(o.fixed));
                m.insert("verdict".into(), json!(o.verdict.as_str()));
            }
            v
        })
        .collect()
}

pub fn dims_json(rep: &WhittakerReport) -> Value {
    by_label(&rep.rgroup, &rep.dims)
}

pub fn whitrank_json(ms: &[EvalMatrix]) -> Vec<Value> {
    ms.iter()
        .map(|m| {
            let entries = m
                .entries
                .as_ref()
                .map(|e| e.iter().map(|row| row.iter().map(|x| x.render()).collect::<Vec<_>>()).collect::<Vec<_>>());
            json!({
                "orbit": m.orbit,
                "reps": m.reps,
                "rank": m.rank,
                "provenance": m.provenance.as_str(),
                "entries": entries,
            })
        })
        .collect()
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(out: &mut String, head: &[&str], rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", head.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(head.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out.push('\n');
}

/// Markdown tables for a JSON report produced by any command.
pub fn markdown(report: &Value) -> String {
    let mut out = String::new();
    let cmd = report["command"].as_str().unwrap_or("");
    let cov = &report["cover"];
    let _ = writeln!(out, "# rchi {cmd}: {}^({})\n", cell(&cov["datum"]), cell(&cov["n"]));
    let keys = [
        "x_qn",
        "dual_type",
        "saturated",
        "metaplectic",
        "exceptional_classes",
        "y_qn_basis",
        "chi_alpha_usable",
    ];
    let rows: Vec<Vec<String>> = keys
        .iter()
        .map(|k| vec![k.to_string(), cell(&cov[*k])])
        .collect();
    table(&mut out, &["invariant", "value"], &rows);
    if let Some(rg) = report.get("rgroup") {
        let _ = writeln!(out, "R_chi = {} with elements {}\n", cell(&rg["type"]), cell(&rg["r_chi"]));
    }
    let labels: Vec<String> = report
        .get("rgroup")
        .and_then(|rg| rg["irreducibles"].as_array())
        .map(|a| a.iter().map(|s| cell(&s["label"])).collect())
        .unwrap_or_default();
    if let Some(orbits) = report.get("orbits").and_then(Value::as_array) {
        if cmd == "whitrank" {
            let rows: Vec<Vec<String>> = orbits
                .iter()
                .map(|o| vec![cell(&o["orbit"]), cell(&o["reps"]), cell(&o["rank"]), cell(&o["provenance"])])
                .collect();
            table(&mut out, &["orbit", "points", "rank", "provenance"], &rows);
        } else {
            let mut head = vec!["orbit".to_string()];
            head.extend(labels.iter().map(|l| format!("Wh {l}")));
            if cmd == "check" {
                head.extend(labels.iter().map(|l| format!("X {l}")));
                head.push("verdict".into());
            }
            let rows: Vec<Vec<String>> = orbits
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let mut r = vec![format!("O{i} {}", cell(&o["reps"][0]))];
                    r.extend(labels.iter().map(|l| cell(&o["sigma_wh"][l])));
                    if cmd == "check" {
                        r.extend(labels.iter().map(|l| cell(&o["sigma_x"][l])));
                        r.push(cell(&o["verdict"]));
                    }
                    r
                })
                .collect();
            let head: Vec<&str> = head.iter().map(String::as_str).collect();
            table(&mut out, &head, &rows);
        }
    }
    if let Some(d) = report.get("dims") {
        let rows = vec![labels.iter().map(|l| cell(&d[l])).collect::<Vec<_>>()];
        let head: Vec<String> = labels.iter().map(|l| format!("dim Wh(pi_{l})")).collect();
        let head: Vec<&str> = head.iter().map(String::as_str).collect();
        table(&mut out, &head, &rows);
    }
    out
}
