//! One `[PASS]`/`[FAIL]` line per acceptance criterion; exits non-zero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use golden_core::constructions::{
    e8_golden_inputs, f4, f4_perp_f4, import_golden_candidate, run_candidate, GoldenCandidate,
};
use golden_core::hmf::{
    check_nu_bound, elliptic_delta, elliptic_e4, generators, table_reproduce, ExtremalResult, EXPECTED_TABLE,
};
use golden_core::lattice::{
    enumerate_short, galois_check, golden_check, goldenex, hilbert_theta, minima_bounds_hold, minimum,
    modular_family, modularity_check, trace_identity_check, Verdict,
};
use golden_core::{Error, IndexPair, KElem, QExp, RGram};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let report = table_reproduce(8).map_err(e)?;
    if let Some((w, err)) = report.failures().next() {
        return Err(format!("weight {w}: {err}"));
    }
    ensure(report.mismatches.is_empty(), format!("{:?}", report.mismatches))?;
    ensure(report.rows() == EXPECTED_TABLE.to_vec(), "rows differ from the expected table")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;

    let out = Command::new(env!("CARGO_BIN_EXE_golden"))
        .args(["table", "reproduce", "--prec", "8", "--format", "json"])
        .output()
        .map_err(e)?;
    ensure(out.status.code() == Some(0), format!("CLI exit status {:?}", out.status.code()))?;
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(e)?;
    ensure(json["matching"] == 12, format!("CLI reports {} matching rows", json["matching"]))?;
    Ok(format!("12/12 rows exact at precision 8 in {:.2?}", elapsed))
}

fn generator_cross_validation() -> Outcome {
    let g = generators(8).map_err(e)?;
    ensure(g.a2.restrict_q1() == elliptic_e4(8), "A2(q0,1) ≠ E4")?;
    ensure(g.b6.restrict_q1() == elliptic_delta(8), "B6(q0,1) ≠ Δ")?;
    ensure(g.c10.restrict_q1().is_zero(), "C10(q0,1) ≠ 0")?;
    ensure(g.c10.nu() == Some(IndexPair::new(2, 4)), format!("ν(C10) = {:?}", g.c10.nu()))?;
    let x12 = g.a2.mul(&g.c10).sub(&g.b6.mul(&g.b6));
    ensure(x12.nu() == Some(IndexPair::new(2, 5)), format!("ν(A2·C10 − B6²) = {:?}", x12.nu()))?;
    let e4 = elliptic_e4(8);
    Ok(format!(
        "E4 = 1 + {}q + {}q² + {}q³ …, Δ, 0 through q⁸; ν(C10) = (2,4), ν(A2·C10 − B6²) = (2,5)",
        e4.coeff(1),
        e4.coeff(2),
        e4.coeff(3)
    ))
}

fn f4_pipeline() -> Outcome {
    let start = Instant::now();
    let g = f4();
    ensure(g.is_even_unimodular(), "F4 is not even unimodular")?;
    let r = golden_check(&g, 3).map_err(e)?;
    ensure(r.golden, format!("golden check failed at {:?}", r.first_difference))?;
    let t_eta = g.trace_gram(&KElem::eta_inv()).map_err(e)?;
    ensure(t_eta.is_unimodular(), "L_η⁻¹ not unimodular")?;
    ensure(minimum(&t_eta).map_err(e)? == (1, 240), "L_η⁻¹ minimum/kissing ≠ (1, 240)")?;
    let t_one = g.trace_gram(&KElem::one()).map_err(e)?;
    ensure(t_one.det() == BigInt::from(625), format!("det L_1 = {}", t_one.det()))?;
    let (m1, k1) = minimum(&t_one).map_err(e)?;
    ensure((m1, k1) == (2, 120), format!("L_1 minimum/kissing ({m1}, {k1}) ≠ (2, 120)"))?;
    // extremal for level 5 means minimum 1 + ⌊N/8⌋
    ensure(m1 == 1 + t_one.m as i64 / 8, "L_1 is not extremal 5-modular")?;
    let v = modularity_check(&t_one, 5, Duration::from_secs(10)).map_err(e)?;
    ensure(v.is_modular(), format!("L_1 not certified 5-modular: {v:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("E8 (1, 240); L_1 det 5⁴, (2, 120), 5-modular with witness; {:.2?}", elapsed))
}

fn dual_construction() -> Outcome {
    let th = hilbert_theta(&f4(), 4).map_err(e)?;
    let a2 = generators(4).map_err(e)?.a2;
    if let Some(k) = th.first_difference(&a2) {
        return Err(format!("Θ(F4) and A2 differ at {k}: {} vs {}", th.coeff(k), a2.coeff(k)));
    }
    Ok(format!("Θ(F4) = A2 on all {} coefficients through i = 4", th.iter().count()))
}

fn family() -> Outcome {
    let g = f4();
    let mut parts = Vec::new();
    for a in 0..=3i64 {
        let c = modular_family(&g, a, Some((1, 2)), Duration::from_secs(60)).map_err(e)?;
        let p = a * a + 5 * a + 5;
        ensure(c.p == p, format!("a = {a}: level {}", c.p))?;
        ensure(c.det == BigInt::from(p).pow(4), format!("a = {a}: det {} ≠ {p}⁴", c.det))?;
        ensure(c.min >= 2 + a, format!("a = {a}: minimum {} < {}", c.min, 2 + a))?;
        let verdict = match &c.modular {
            Verdict::Modular { .. } => "modular",
            Verdict::Undecided { .. } if a == 3 => "undecided",
            other => return Err(format!("a = {a}: {other:?}")),
        };
        parts.push(format!("a={a}: p={p} min={} {verdict}", c.min));
    }
    Ok(parts.join("; "))
}

fn goldenex_round_trip() -> Outcome {
    let inputs = e8_golden_inputs().map_err(e)?;
    let s = goldenex(&inputs.gram, &inputs.t).map_err(e)?;
    let th = hilbert_theta(&s.gram, 4).map_err(e)?;
    let a2 = generators(4).map_err(e)?.a2;
    ensure(th == a2, format!("theta differs from A2 at {:?}", th.first_difference(&a2)))?;
    let check = s.gram.trace_gram(&KElem::eta_inv()).map_err(e)?;
    ensure(check == inputs.gram.transform(&s.basis_change), "trace form not recovered")?;
    let sigma = s.transport(&inputs.sigma).map_err(e)?;
    ensure(galois_check(&s.gram, &sigma).map_err(e)?, "Galois check failed on the extracted lattice")?;
    ensure(galois_check(&f4(), &inputs.sigma).map_err(e)?, "Galois check failed on F4")?;
    Ok("goldenex(E8, z + z⁴) has Θ = A2 through i = 4; σ passes".into())
}

fn theta_properties(name: &str, f: &QExp) -> Result<(), String> {
    ensure(f.check_symmetric(), format!("{name} not symmetric"))?;
    ensure(f.check_unit_invariant(), format!("{name} not unit invariant"))
}

fn lattice_properties(name: &str, g: &RGram, bound: i64) -> Result<usize, String> {
    let th = hilbert_theta(g, 3).map_err(e)?;
    theta_properties(name, &th)?;
    let t = g.trace_gram(&KElem::eta_inv()).map_err(e)?;
    let vs: Vec<Vec<i64>> = enumerate_short(&t, bound).map_err(e)?.iter().map(|(x, _)| x).collect();
    ensure(trace_identity_check(g, &vs).map_err(e)?, format!("{name}: trace identity fails"))?;
    let (m_eta, _) = minimum(&t).map_err(e)?;
    let (m_one, _) = minimum(&g.trace_gram(&KElem::one()).map_err(e)?).map_err(e)?;
    ensure(minima_bounds_hold(m_eta, m_one), format!("{name}: minima {m_eta}, {m_one} violate the bounds"))?;
    Ok(vs.len())
}

fn property_suites() -> Outcome {
    let g = generators(8).map_err(e)?;
    let x12 = g.a2.mul(&g.c10).sub(&g.b6.mul(&g.b6));
    for (name, f) in [("A2", &g.a2), ("B6", &g.b6), ("C10", &g.c10), ("A2·C10 − B6²", &x12)] {
        theta_properties(name, f)?;
    }
    let report = table_reproduce(8).map_err(e)?;
    let results: Vec<&ExtremalResult> = report.entries.iter().filter_map(|x| x.result.as_ref().ok()).collect();
    ensure(results.len() == 12, "table incomplete")?;
    for r in &results {
        theta_properties(&format!("extremal form of weight {}", r.weight), &r.form)?;
        ensure(check_nu_bound(r), format!("weight {}: ν = {} violates the bounds", r.weight, r.nu))?;
    }
    let e8g = {
        let inputs = e8_golden_inputs().map_err(e)?;
        goldenex(&inputs.gram, &inputs.t).map_err(e)?.gram
    };
    let mut vectors = 0;
    vectors += lattice_properties("F4", &f4(), 2)?;
    vectors += lattice_properties("F4 ⊥ F4", &f4_perp_f4(), 1)?;
    vectors += lattice_properties("golden E8", &e8g, 2)?;
    Ok(format!("4 generators, 12 extremal forms, 3 lattices, trace identities on {vectors} vectors"))
}

fn leech_import() -> Outcome {
    // rejection paths always run
    let bad_t = r#"{"label":"fixed","gram":{"m":2,"entries":[[2,-1],[-1,2]]},"T":[[1,0],[0,1]]}"#;
    ensure(matches!(import_golden_candidate(bad_t), Err(Error::Precondition(_))), "fixed vector accepted")?;
    let odd = r#"{"gram":{"m":1,"entries":[[2]]},"T":[[1]]}"#;
    ensure(matches!(import_golden_candidate(odd), Err(Error::Precondition(_))), "odd rank accepted")?;
    let inputs = e8_golden_inputs().map_err(e)?;
    let mut broken = GoldenCandidate::from_inputs("broken", &inputs);
    broken.t[0][0] += 1;
    ensure(import_golden_candidate(&broken.to_json()).is_err(), "perturbed T accepted")?;
    let good = import_golden_candidate(&GoldenCandidate::from_inputs("E8", &inputs).to_json()).map_err(e)?;
    ensure(run_candidate(&good, 3).map_err(e)?.golden.golden, "E8 candidate not golden")?;

    let Ok(path) = std::env::var("GOLDEN_LEECH") else {
        return Ok("no Leech data supplied (set GOLDEN_LEECH); import and rejection paths only".into());
    };
    let start = Instant::now();
    let text = std::fs::read_to_string(&path).map_err(e)?;
    let c = import_golden_candidate(&text).map_err(e)?;
    let r = run_candidate(&c, 2).map_err(e)?;
    ensure(r.structure.gram.n == 12, format!("rank {} over ℤ[θ]", r.structure.gram.n))?;
    ensure(r.golden.golden, format!("not golden: {:?}", r.golden.first_difference))?;
    ensure(r.golden.min_eta == Some((2, 196560)), format!("L_η⁻¹ minimum {:?}", r.golden.min_eta))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), format!("took {elapsed:?}"))?;
    Ok(format!("Leech: weight-6 golden, 196560 vectors at minimum 2, {:.1?}", elapsed))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("table reproduction", table_reproduction),
        ("generator cross-validation", generator_cross_validation),
        ("F4 pipeline", f4_pipeline),
        ("dual-construction agreement", dual_construction),
        ("modular family a = 0..3", family),
        ("goldenex round-trip", goldenex_round_trip),
        ("property suites", property_suites),
        ("large golden lattices via import", leech_import),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({:.2?})", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
