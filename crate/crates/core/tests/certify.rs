mod common;

use std::sync::OnceLock;

use common::shipped;
use spatial_theta::canon::digest;
use spatial_theta::certify::*;
use spatial_theta::data;
use spatial_theta::moves::{MoveSequence, SearchBudget};
use spatial_theta::surgery::{fill_edge, scan_fillings, scan_specs, FillingSpec};

fn budget() -> SearchBudget {
    SearchBudget::for_diagram(&shipped("kinoshita"))
}

fn proof1() -> &'static Certificate {
    static C: OnceLock<Certificate> = OnceLock::new();
    C.get_or_init(|| {
        let rec = data::shipped_filling();
        verify_proof1(&shipped("kinoshita"), rec.edge, rec.selected, &budget())
    })
}

fn proof2() -> &'static Certificate {
    static C: OnceLock<Certificate> = OnceLock::new();
    C.get_or_init(|| {
        let premise = NeighbourhoodPremise { graph: "kinoshita".into(), source: "by picture".into() };
        verify_proof2(&shipped("spineG"), 0, &premise, &budget())
    })
}

#[test]
fn filling_record_matches_fresh_scan() {
    let rec = data::shipped_filling();
    let fresh = scan_fillings(&shipped("kinoshita"), rec.edge, &shipped("kappa"), &scan_specs(rec.range.0..=rec.range.1)).unwrap();
    assert_eq!(rec.scan, fresh);
    let first = fresh.iter().find(|e| e.matches(15)).expect("some filling matches kappa");
    assert_eq!(first.spec, rec.selected);
    assert_eq!(rec.selected, FillingSpec::flipped(0));
}

#[test]
fn flagship_certificates_verify() {
    for c in [proof1(), proof2()] {
        assert_eq!(c.claim, "kinoshita is nontrivial");
        assert!(c.verdict.is_success(), "{}", c.to_text());
        assert_eq!(c.check(), Ok(c.verdict));
    }
    assert!(proof2().corollaries.iter().any(|s| s.contains("exterior of kinoshita is not a handlebody")));
}

#[test]
fn schubert_step_gives_three() {
    let r = proof1().rules.iter().find(|r| r.rule == Rule::Schubert).unwrap();
    match &r.conclusion {
        Statement::Bridge { subject, bound } => {
            assert_eq!(subject, "kappa");
            assert_eq!((bound.value, bound.kind), (3, BoundKind::Exact));
            assert!(bound.justification().contains("2 + 2 - 1"));
        }
        s => panic!("unexpected {s}"),
    }
}

#[test]
fn norwood_fires_in_proof2() {
    let c = proof2();
    let r = c.rules.iter().find(|r| r.rule == Rule::Norwood).unwrap();
    assert!(matches!(&r.conclusion, Statement::Tunnel { bound, .. } if bound.value == 2));
    let trusted: Vec<_> = c.premises.iter().filter(|p| p.is_trusted()).collect();
    assert_eq!(trusted.len(), 1);
    assert!(matches!(trusted[0].statement, Statement::NeighbourhoodIsotopic { .. }));
}

#[test]
fn verified_certificates_trust_only_allowed_facts() {
    for c in [proof1(), proof2()] {
        if c.verdict != Verdict::Verified {
            continue;
        }
        for p in c.premises.iter().filter(|p| p.is_trusted()) {
            let ok = match &p.statement {
                Statement::NeighbourhoodIsotopic { .. } => true,
                Statement::Bridge { subject, bound } => {
                    bound.kind == BoundKind::Upper && (subject == "trefoil" || subject == "fig8")
                }
                _ => false,
            };
            assert!(ok, "trusted premise {}", p.statement);
        }
    }
}

#[test]
fn witness_trace_replays_to_kappa() {
    let c = proof1();
    let rec = data::shipped_filling();
    let k = fill_edge(&shipped("kinoshita"), rec.edge, rec.selected).unwrap();
    for trace in c.artifacts.move_traces.values() {
        let seq = MoveSequence::parse_trace(trace).unwrap();
        let end = seq.replay(&k).unwrap();
        assert_eq!(digest(&end), digest(&shipped("kappa")));
    }
}

#[test]
fn json_round_trip() {
    for c in [proof1(), proof2()] {
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(&back, c);
        assert_eq!(back.recheck(), c.verdict);
    }
}

#[test]
fn tampered_premise_fails_recheck() {
    let mut c = proof1().clone();
    if let Some(p) = c.premises.iter_mut().find(|p| matches!(p.statement, Statement::Nontrivial { .. })) {
        p.statement = Statement::Nontrivial { subject: "unknot".into(), obstruction: "none".into() };
    }
    assert_eq!(c.recheck(), Verdict::Failed);
    // a fresh seal does not help: the rule citing it no longer derives
    assert_eq!(c.sealed().recheck(), Verdict::Failed);
}

#[test]
fn tampered_bound_fails_recheck() {
    let mut c = proof1().clone();
    for p in &mut c.premises {
        if let Statement::Bridge { bound, .. } = &mut p.statement {
            bound.value = 3;
        }
    }
    assert_eq!(c.sealed().recheck(), Verdict::Failed);

    let mut c = proof1().clone();
    let r = c.rules.iter_mut().find(|r| r.rule == Rule::Schubert).unwrap();
    r.conclusion = Statement::Bridge { subject: "kappa".into(), bound: BridgeBound::lower(4, "forged") };
    assert_eq!(c.sealed().recheck(), Verdict::Failed);
}

#[test]
fn tampered_verdict_fails_recheck() {
    let mut c = verify_proof1(&shipped("trivial"), 0, FillingSpec::new(0), &budget());
    assert_eq!(c.verdict, Verdict::Failed);
    c.verdict = Verdict::Verified;
    c.failure = None;
    assert_eq!(c.sealed().recheck(), Verdict::Failed);

    let mut c = proof2().clone();
    c.rules.pop();
    assert_eq!(c.sealed().recheck(), Verdict::Failed);
}

#[test]
fn invariant_identification_downgrades() {
    // no search budget: identification falls back to invariants
    let starved = SearchBudget { max_states: 1, ..budget() };
    let rec = data::shipped_filling();
    let c = verify_proof1(&shipped("kinoshita"), rec.edge, rec.selected, &starved);
    assert_eq!(c.verdict, Verdict::VerifiedModuloInvariants, "{}", c.to_text());
    assert_eq!(c.recheck(), Verdict::VerifiedModuloInvariants);
}

#[test]
fn non_kappa_fillings_fail_at_identification() {
    let c = verify_proof1(&shipped("kinoshita"), 0, FillingSpec::new(0), &budget());
    assert_eq!(c.verdict, Verdict::Failed);
    assert_eq!(c.failure.as_ref().unwrap().step, 2);
    let c = verify_proof1(&shipped("kinoshita"), 0, FillingSpec::new(1), &budget());
    assert_eq!(c.failure.as_ref().unwrap().step, 1);
    assert!(c.premises.is_empty());
}

#[test]
fn trivial_and_tunnel_graphs_fail() {
    let b = budget();
    let t = shipped("trivial");
    let prem = |g: &str| NeighbourhoodPremise { graph: g.into(), source: "self".into() };
    for c in [verify_proof1(&t, 0, FillingSpec::new(0), &b), verify_proof2(&t, 0, &prem("trivial"), &b)] {
        assert_eq!(c.verdict, Verdict::Failed);
        assert_eq!(c.failure.as_ref().unwrap().name, "identify-kappa");
        assert_eq!(c.recheck(), Verdict::Failed);
    }
    let c = verify_proof2(&shipped("tunnel_trefoil"), 0, &prem("tunnel_trefoil"), &b);
    let f = c.failure.as_ref().unwrap();
    assert_eq!(f.step, 2);
    assert!(f.reason.contains("determinant(C) = 3"), "{}", f.reason);
    assert!(!c.rules.iter().any(|r| r.rule == Rule::Norwood));
}

#[test]
fn brunnian_reports() {
    let b = budget();
    let k = brunnian_check(&shipped("kinoshita"), &b).unwrap();
    assert!(k.is_brunnian(), "{}", k.to_text());
    assert!(brunnian_check(&shipped("trivial"), &b).unwrap().is_brunnian());
    let t = brunnian_check(&shipped("tunnel_trefoil"), &b).unwrap();
    assert_eq!(t.knotted(), vec![0]);
    assert!(t.verdicts[0].obstruction().unwrap().contains("3-colorings = 9"));
}
