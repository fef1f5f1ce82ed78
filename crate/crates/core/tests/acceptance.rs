//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::Value;

use common::*;
use spatial_theta::canon::digest;
use spatial_theta::certify::brunnian_check;
use spatial_theta::cli::run;
use spatial_theta::invariants::{alexander, colorings, determinant, jones, yamada};
use spatial_theta::moves::SearchBudget;
use spatial_theta::surgery::{scan_fillings, scan_specs};
use spatial_theta::{connected_sum, data, parse_diagram, DiagramKind};

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, n: usize, what: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("PASS [{n}] {what}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL [{n}] {what}: {detail}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn theta_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["theta"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "json"]);
    let o = run(argv, None);
    (o.code, serde_json::from_str(&o.stdout).unwrap_or(Value::Null))
}

fn rules<'a>(cert: &'a Value, name: &str) -> Vec<&'a Value> {
    cert["rules"].as_array().map(|rs| rs.iter().filter(|r| r["rule"] == name).collect()).unwrap_or_default()
}

fn premises<'a>(cert: &'a Value, fact: &str) -> Vec<&'a Value> {
    cert["premises"].as_array().map(|ps| ps.iter().filter(|p| p["statement"]["fact"] == fact).collect()).unwrap_or_default()
}

fn brunnian_kinoshita() -> Result<String, String> {
    let k = shipped("kinoshita");
    let t0 = Instant::now();
    let r = brunnian_check(&k, &SearchBudget::for_diagram(&k)).map_err(|e| e.to_string())?;
    let dt = t0.elapsed();
    ensure(r.is_brunnian(), r.to_text())?;
    ensure(dt < Duration::from_secs(60), format!("took {dt:?}"))?;
    let moves: Vec<String> = r.verdicts.iter().map(|v| v.to_string()).collect();
    Ok(format!("{} in {dt:.2?}", moves.join(", ")))
}

fn kappa_construction() -> Result<String, String> {
    let (t, f, k) = (shipped("trefoil"), shipped("fig8"), shipped("kappa"));
    let s = connected_sum(&t, 1, &f, 1).map_err(|e| e.to_string())?;
    ensure(digest(&s) == digest(&k), "kappa differs from connected_sum(trefoil, fig8)")?;
    let det = determinant(&k).unwrap();
    ensure(det == 15, format!("det = {det}"))?;
    let a = alexander(&k).unwrap().poly;
    ensure(a == alexander(&t).unwrap().poly * alexander(&f).unwrap().poly, "alexander not multiplicative")?;
    let j = jones(&k).unwrap().poly;
    ensure(j == jones(&t).unwrap().poly * jones(&f).unwrap().poly, "jones not multiplicative")?;
    Ok(format!("det 15, alexander {a}, jones {j}"))
}

fn surgery_identification(cert1: &Value, verify_time: Duration) -> Result<String, String> {
    let t0 = Instant::now();
    let rec = data::shipped_filling();
    let scan = scan_fillings(&shipped("kinoshita"), rec.edge, &shipped("kappa"), &scan_specs(-3..=3)).map_err(|e| e.to_string())?;
    let hits: Vec<String> = scan.iter().filter(|e| e.matches(15)).map(|e| e.spec.to_string()).collect();
    ensure(!hits.is_empty(), "no filling in [-3,3] matches kappa")?;
    let total = t0.elapsed() + verify_time;
    ensure(total < Duration::from_secs(300), format!("took {total:?}"))?;
    let witness = premises(cert1, "identified").iter().any(|p| p["statement"]["evidence"]["method"] == "witness");
    let verdict = cert1["verdict"].as_str().unwrap_or("?");
    ensure(
        (witness && verdict == "VERIFIED") || (!witness && verdict == "VERIFIED_MODULO_INVARIANTS"),
        format!("witness {witness} but verdict {verdict}"),
    )?;
    Ok(format!("matches {hits:?}, witness {witness}, {verdict}, {total:.1?}"))
}

fn proof1(code: i32, cert1: &Value) -> Result<String, String> {
    ensure(code == 0, format!("exit {code}"))?;
    let verdict = cert1["verdict"].as_str().unwrap_or("?");
    ensure(verdict.starts_with("VERIFIED"), format!("verdict {verdict}"))?;
    ensure(cert1["claim"] == "kinoshita is nontrivial", "claim")?;
    let s = rules(cert1, "schubert");
    ensure(s.len() == 1, "no Schubert step")?;
    let b = &s[0]["conclusion"]["bound"];
    ensure(b["value"] == 3, format!("Schubert value {}", b["value"]))?;
    ensure(b["lower_justification"].as_str().unwrap_or("").contains("2 + 2 - 1"), "Schubert justification")?;
    let (tc, tcert) = theta_json(&["verify", "trivial", "--proof", "1"]);
    ensure(tc == 1, format!("trivial exit {tc}"))?;
    ensure(tcert["failure"]["name"] == "identify-kappa", format!("trivial failed at {}", tcert["failure"]))?;
    Ok(format!("{verdict}, b(kappa) = 2 + 2 - 1 = 3; trivial FAILED at step {}", tcert["failure"]["step"]))
}

fn proof2() -> Result<String, String> {
    let (code, c) = theta_json(&["verify", "kinoshita", "--proof", "2"]);
    ensure(code == 0, format!("exit {code}"))?;
    let id = premises(&c, "identified");
    ensure(id.len() == 1 && id[0]["statement"]["reference"] == "kappa", "no identification with kappa")?;
    let method = id[0]["statement"]["evidence"]["method"].as_str().unwrap_or("?").to_string();
    let nw = rules(&c, "norwood");
    ensure(nw.len() == 1 && nw[0]["conclusion"]["bound"]["value"].as_u64() >= Some(2), "Norwood did not fire")?;
    let nb = premises(&c, "neighbourhood_isotopic");
    ensure(nb.len() == 1 && nb[0]["provenance"]["kind"] == "trusted", "neighbourhood premise not trusted")?;
    let last = c["rules"].as_array().and_then(|r| r.last()).map(|r| r["conclusion"].clone()).unwrap_or(Value::Null);
    ensure(last["fact"] == "graph_nontrivial" && last["graph"] == "kinoshita", "nontriviality not concluded")?;
    let verdict = c["verdict"].as_str().unwrap_or("?");
    Ok(format!("{verdict}; C identified by {method}; t(kappa) >= 2; neighbourhood premise trusted"))
}

fn invariance() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(20261014);
    let (mut knots, mut knot_moves) = (0, 0);
    while knots < 240 {
        let k = random_knot(&mut rng, 8);
        ensure(k.crossing_count() <= 8, "generator exceeded 8 crossings")?;
        knots += 1;
        if let Some((m, next)) = random_move(&k, 8, &mut rng, |_| true) {
            knot_moves += 1;
            ensure(fingerprint(&k) == fingerprint(&next), format!("{m} changed an invariant of\n{k}"))?;
        }
    }
    let mut graph_moves = 0;
    for _ in 0..60 {
        let t = random_theta(&mut rng);
        if let Some((m, next)) = random_move(&t, t.crossing_count() + 1, &mut rng, graph_move) {
            graph_moves += 1;
            ensure(yamada(&t).unwrap() == yamada(&next).unwrap(), format!("{m} changed yamada of\n{t}"))?;
        }
    }
    Ok(format!("{knots} knots / {knot_moves} moves, 60 thetas / {graph_moves} R2-R5 moves, 0 failures"))
}

fn multiplicativity() -> Result<String, String> {
    let ks = [parse_diagram("X 1 2 2 1").unwrap(), shipped("trefoil"), shipped("fig8")];
    let mut pairs = 0;
    for k1 in &ks {
        for k2 in &ks {
            let s = connected_sum(k1, 1, k2, 1).map_err(|e| e.to_string())?;
            ensure(determinant(&s).unwrap() == determinant(k1).unwrap() * determinant(k2).unwrap(), "det")?;
            ensure(alexander(&s).unwrap().poly == alexander(k1).unwrap().poly * alexander(k2).unwrap().poly, "alexander")?;
            ensure(jones(&s).unwrap().poly == jones(k1).unwrap().poly * jones(k2).unwrap().poly, "jones")?;
            for p in [3, 5] {
                ensure(p * colorings(&s, p).unwrap() == colorings(k1, p).unwrap() * colorings(k2, p).unwrap(), "colorings")?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn oracle_equivalence() -> Result<String, String> {
    let mut n = 0;
    for name in data::names() {
        let d = shipped(name);
        let knots = match d.kind {
            DiagramKind::Knot => vec![d],
            DiagramKind::Theta => (0..3).map(|e| d.constituent(e).unwrap()).collect(),
        };
        for k in knots.into_iter().filter(|k| k.crossing_count() <= 6) {
            for p in [3, 5] {
                let (a, b) = (colorings(&k, p).unwrap(), brute_colorings(&k, p));
                ensure(a == b, format!("{name}: colorings({p}) {a} vs enumeration {b}"))?;
            }
            let (a, g) = (det_from_alexander(&k), goeritz_det(&k));
            ensure(a == g, format!("{name}: |alexander(-1)| {a} vs Goeritz {g}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} diagrams"))
}

fn yamada_distinguishes() -> Result<String, String> {
    let (k, t) = (yamada(&shipped("kinoshita")).unwrap(), yamada(&shipped("trivial")).unwrap());
    ensure(k != t, "yamada(kinoshita) = yamada(trivial)")?;
    Ok(format!("{k} vs {t}"))
}

fn tunnel_trefoil_graph() -> Result<String, String> {
    let g = shipped("tunnel_trefoil");
    let r = brunnian_check(&g, &SearchBudget::for_diagram(&g)).map_err(|e| e.to_string())?;
    ensure(r.knotted().len() == 1, r.to_text())?;
    let obstruction = r.verdicts[r.knotted()[0]].obstruction().unwrap();
    ensure(obstruction.contains("3-colorings = 9"), obstruction.clone())?;
    let (code, c) = theta_json(&["verify", "tunnel_trefoil", "--proof", "2"]);
    ensure(code == 1 && c["verdict"] == "FAILED", format!("verify exit {code}"))?;
    ensure(rules(&c, "norwood").is_empty(), "Norwood fired")?;
    Ok(format!("one knotted constituent ({obstruction}); proof 2 FAILED at step {}", c["failure"]["step"]))
}

fn main() {
    let mut r = Report { failures: 0 };
    r.check(1, "brunnian kinoshita", brunnian_kinoshita());
    r.check(2, "kappa construction", kappa_construction());
    let t0 = Instant::now();
    let (code1, cert1) = theta_json(&["verify", "kinoshita", "--proof", "1"]);
    let verify_time = t0.elapsed();
    r.check(3, "surgery identification", surgery_identification(&cert1, verify_time));
    r.check(4, "proof 1 certificate", proof1(code1, &cert1));
    r.check(5, "proof 2 certificate", proof2());
    r.check(6, "invariance suites", invariance());
    r.check(7, "multiplicativity", multiplicativity());
    r.check(8, "oracle equivalence", oracle_equivalence());
    r.check(9, "yamada distinguishes kinoshita", yamada_distinguishes());
    r.check(10, "tunnel_trefoil graph", tunnel_trefoil_graph());
    println!("acceptance: {} of 10 criteria failed", r.failures);
    if r.failures > 0 {
        std::process::exit(1);
    }
}
