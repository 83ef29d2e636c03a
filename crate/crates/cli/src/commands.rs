use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use golden_core::constructions::{e8_golden_inputs, f4, f4_perp_f4, import_golden_candidate, run_candidate, GoldenCandidate};
use golden_core::hmf::{
    check_nu_bound, extremal_form, parse_table_tsv, table_reproduce_against, TableRow, EXPECTED_TABLE, TSV_HEADER,
};
use golden_core::lattice::{golden_check, goldenex, hilbert_theta, modular_family, theta_valuation, Verdict};
use golden_core::{Error, RGram};
use serde_json::{json, Value};

use crate::render::{self, Report};
use crate::{
    Builtin, Cli, Command, HmfCmd, LatticeCmd, LatticeSource, TableCmd, EXIT_MISMATCH, EXIT_OK, EXIT_RESOURCE,
    EXIT_USAGE,
};

struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Debug for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InsufficientPrecision { .. }) => EXIT_RESOURCE,
        Some(Error::NonUnique { .. } | Error::Internal(_)) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    if !(cli.budget > 0.0 && cli.budget.is_finite()) {
        return Err(usage("--budget must be a positive number of seconds"));
    }
    let budget = Duration::from_secs_f64(cli.budget);
    match &cli.command {
        Command::Hmf(HmfCmd::Extremal { weight }) => hmf_extremal(*weight, hmf_prec(cli)?),
        Command::Table(TableCmd::Reproduce { expected }) => table(hmf_prec(cli)?, expected.as_deref()),
        Command::Lattice(cmd) => {
            let prec = cli.prec.unwrap_or(3);
            if prec < 1 {
                return Err(usage("--prec must be positive"));
            }
            lattice(cmd, prec, budget)
        }
    }
}

fn hmf_prec(cli: &Cli) -> Result<i64> {
    let prec = cli.prec.unwrap_or(8);
    if prec < 3 {
        return Err(usage(format!("--prec {prec}: hmf commands need precision ≥ 3")));
    }
    Ok(prec)
}

fn hmf_extremal(weight: u32, prec: i64) -> Result<Report> {
    if weight < 2 || weight % 2 == 1 {
        return Err(usage(format!("weight {weight} must be even and at least 2")));
    }
    let r = extremal_form(weight, prec)?;
    let bound_ok = check_nu_bound(&r);
    let mut json = r.to_json();
    json["nu_bound_ok"] = json!(bound_ok);
    let row = TableRow::from_result(&r);
    let pretty = format!(
        "weight   {}\nnu       ({},{})\ns_eta    {}\ns_one    {}\nsubset   {}\nunique   {}\nprec     {}",
        r.weight, r.nu.i, r.nu.j, r.s_eta, r.s_one, r.pm, r.unique, prec
    );
    Ok(Report {
        json,
        tsv: format!("{TSV_HEADER}\n{}", row.to_tsv()),
        pretty,
        code: if bound_ok { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn table(prec: i64, expected: Option<&Path>) -> Result<Report> {
    let rows = match expected {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            parse_table_tsv(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => EXPECTED_TABLE.to_vec(),
    };
    let report = table_reproduce_against(prec, &rows)?;
    let mut cells = Vec::new();
    let mut json_rows = Vec::new();
    for (exp, entry) in rows.iter().zip(&report.entries) {
        let (row, status) = match &entry.result {
            Ok(r) => {
                let row = TableRow::from_result(r);
                let ok = !report.mismatches.iter().any(|m| m.weight == exp.weight);
                (Some(row), if ok { "ok".to_string() } else { "MISMATCH".to_string() })
            }
            Err(e) => (None, format!("FAILED: {e}")),
        };
        let mut line = match row {
            Some(r) => r.to_tsv().split('\t').map(String::from).collect(),
            None => vec![exp.weight.to_string(), "-".into(), "-".into(), "-".into(), "-".into()],
        };
        line.push(status.clone());
        cells.push(line);
        json_rows.push(json!({
            "weight": exp.weight,
            "computed": row.map(|r| json!({"nu": [r.nu.0, r.nu.1], "s_eta": r.s_eta, "s_one": r.s_one, "subset": r.pm.to_string()})),
            "status": status,
        }));
    }
    let summary = format!("{}/{} rows match", report.matching_rows(), rows.len());
    let mut pretty = render::table(&["weight", "nu", "s_eta", "s_one", "subset", "status"], &cells);
    for m in &report.mismatches {
        pretty.push_str(&format!("\n  {m}"));
    }
    pretty.push_str(&format!("\n{summary} (precision {prec})"));
    let tsv_rows: Vec<Vec<String>> = cells.iter().map(|c| c[..5].to_vec()).collect();
    let code = if report.all_match() {
        EXIT_OK
    } else if report.mismatches.is_empty()
        && report.failures().all(|(_, e)| matches!(e, Error::InsufficientPrecision { .. }))
    {
        EXIT_RESOURCE
    } else {
        EXIT_MISMATCH
    };
    Ok(Report {
        json: json!({
            "prec": prec,
            "rows": json_rows,
            "mismatches": report.mismatches,
            "matching": report.matching_rows(),
            "total": rows.len(),
        }),
        tsv: render::tsv(&["weight", "nu", "s_eta", "s_one", "subset"], &tsv_rows),
        pretty,
        code,
    })
}

fn builtin(b: Builtin) -> Result<RGram> {
    Ok(match b {
        Builtin::F4 => f4(),
        Builtin::F4perp2 => f4_perp_f4(),
        Builtin::E8Golden => {
            let inputs = e8_golden_inputs()?;
            goldenex(&inputs.gram, &inputs.t)?.gram
        }
    })
}

fn load(source: &LatticeSource) -> Result<RGram> {
    if let Some(b) = source.construct {
        return builtin(b);
    }
    let path = source.file.as_ref().ok_or_else(|| usage("give a lattice file or --construct"))?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = RGram::from_json(&text).map_err(|e| match e {
        Error::Json(j) => anyhow::Error::new(Error::Parse { line: j.line(), msg: j.to_string() }),
        other => anyhow::Error::new(other),
    });
    g.with_context(|| format!("parsing {}", path.display()))
}

fn gram_pretty(g: &RGram) -> String {
    let rows: Vec<Vec<String>> = g.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let header: Vec<String> = (1..=g.n).map(|k| format!("b{k}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    render::table(&header, &rows)
}

fn lattice(cmd: &LatticeCmd, prec: i64, budget: Duration) -> Result<Report> {
    match cmd {
        LatticeCmd::Theta { source } => {
            let g = load(source)?;
            let th = hilbert_theta(&g, prec)?;
            let rows: Vec<Vec<String>> = th.iter().map(|(k, c)| vec![k.i.to_string(), k.j.to_string(), c.to_string()]).collect();
            let coeffs: Vec<Value> = th.iter().map(|(k, c)| json!([k.i, k.j, c.to_string()])).collect();
            let mut pretty = render::table(&["i", "j", "coefficient"], &rows);
            pretty.push_str(&format!(
                "\nrank {}  prec {}  symmetric {}  unit-invariant {}",
                g.n,
                prec,
                th.check_symmetric(),
                th.check_unit_invariant()
            ));
            Ok(Report {
                json: json!({
                    "rank": g.n,
                    "prec": prec,
                    "coefficients": coeffs,
                    "symmetric": th.check_symmetric(),
                    "unit_invariant": th.check_unit_invariant(),
                }),
                tsv: render::tsv(&["i", "j", "coefficient"], &rows),
                pretty,
                code: EXIT_OK,
            })
        }
        LatticeCmd::GoldenCheck { source } => {
            let g = load(source)?;
            let r = golden_check(&g, prec)?;
            let json = r.to_json();
            let fields = [
                "golden",
                "reason",
                "weight",
                "prec",
                "extremal_nu",
                "first_difference",
                "min_eta",
                "kissing_eta",
                "min_one",
                "kissing_one",
                "unimodular_bound",
                "extremal_unimodular",
                "minima_bounds",
            ];
            let rows: Vec<Vec<String>> = fields.iter().map(|f| vec![f.to_string(), json[*f].to_string()]).collect();
            Ok(Report {
                tsv: render::tsv(&["field", "value"], &rows),
                pretty: render::table(&["field", "value"], &rows),
                json,
                code: if r.golden { EXIT_OK } else { EXIT_MISMATCH },
            })
        }
        LatticeCmd::Family { source, a } => {
            if *a < 0 {
                return Err(usage(format!("--a {a} must be non-negative")));
            }
            let g = load(source)?;
            let nu = theta_valuation(&g)?;
            let c = modular_family(&g, *a, Some((nu.i, nu.j)), budget)?;
            let mut json = c.to_json();
            json["nu"] = json!([nu.i, nu.j]);
            json["rank"] = json!(2 * g.n);
            let fields = ["a", "p", "rank", "nu", "min", "min_bound", "kissing", "det", "det_ok", "modular", "evidence"];
            let rows: Vec<Vec<String>> = fields.iter().map(|f| vec![f.to_string(), json[*f].to_string()]).collect();
            let code = match (&c.modular, c.det_ok && c.min_ok() != Some(false)) {
                (_, false) | (Verdict::NotModular { .. }, _) => EXIT_MISMATCH,
                (Verdict::Undecided { .. }, true) => EXIT_RESOURCE,
                (Verdict::Modular { .. }, true) => EXIT_OK,
            };
            Ok(Report {
                tsv: render::tsv(&["field", "value"], &rows),
                pretty: render::table(&["field", "value"], &rows),
                json,
                code,
            })
        }
        LatticeCmd::ImportGolden { file } => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let cand = import_golden_candidate(&text).with_context(|| format!("importing {}", file.display()))?;
            let r = run_candidate(&cand, prec)?;
            let json = r.to_json();
            let ok = r.golden.golden && r.galois != Some(false);
            let mut pretty = format!(
                "label    {}\nrank     {} over ℤ[θ]\ngolden   {}\ngalois   {}\n",
                if r.label.is_empty() { "-" } else { &r.label },
                r.structure.gram.n,
                r.golden.golden,
                r.galois.map_or("not supplied".to_string(), |b| b.to_string())
            );
            if let Some((m, k)) = r.golden.min_eta {
                pretty.push_str(&format!("min_eta  {m} ({k} vectors)\n"));
            }
            if let Some((m, k)) = r.golden.min_one {
                pretty.push_str(&format!("min_one  {m} ({k} vectors)\n"));
            }
            Ok(Report {
                tsv: format!(
                    "label\trank\tgolden\tgalois\n{}\t{}\t{}\t{}",
                    r.label,
                    r.structure.gram.n,
                    r.golden.golden,
                    json["galois"]
                ),
                pretty,
                json,
                code: if ok { EXIT_OK } else { EXIT_MISMATCH },
            })
        }
        LatticeCmd::Construct { name } => {
            if *name == Builtin::E8Golden {
                let c = GoldenCandidate::from_inputs("E8 from F4", &e8_golden_inputs()?);
                let json: Value = serde_json::from_str(&c.to_json())?;
                let text = c.to_json();
                return Ok(Report { json, tsv: text.clone(), pretty: text, code: EXIT_OK });
            }
            let g = builtin(*name)?;
            if !g.is_even_unimodular() {
                bail!("built-in lattice failed its own check");
            }
            let json: Value = serde_json::from_str(&g.to_json())?;
            Ok(Report { json, tsv: g.to_json(), pretty: gram_pretty(&g), code: EXIT_OK })
        }
    }
}
