//! Nontriviality certificates built from two classical theorems about
//! composite knots, with an independent checking pass.
//!
//! A certificate is a list of premises (computed here, or trusted with a
//! stated source) followed by rule applications. `Certificate::recheck`
//! re-derives every conclusion from its hypotheses and recomputes the verdict,
//! so a certificate whose content was edited after sealing reports FAILED.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::{canonical, digest};
use crate::diagram::{connected_sum, Diagram, DiagramKind};
use crate::invariants::{alexander, determinant, jones};
use crate::moves::{equivalent, unknot_status, SearchBudget, UnknotVerdict};
use crate::surgery::{fill_edge, FillingSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("bound of kind {0:?} cannot be combined; need exact or lower")]
    UpperBoundInput(BoundKind),
    #[error("no nontriviality obstruction for {0}: {1}")]
    NoObstruction(String, String),
    #[error("premise {0} is not a nontriviality fact")]
    NotNontrivial(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    Upper,
    Lower,
}

/// Bound on bridge number. Exact bounds carry both justifications.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BridgeBound {
    pub value: u32,
    pub kind: BoundKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower_justification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upper_justification: Option<String>,
}

impl BridgeBound {
    pub fn lower(value: u32, why: impl Into<String>) -> Self {
        Self { value, kind: BoundKind::Lower, lower_justification: Some(why.into()), upper_justification: None }
    }

    pub fn upper(value: u32, why: impl Into<String>) -> Self {
        Self { value, kind: BoundKind::Upper, lower_justification: None, upper_justification: Some(why.into()) }
    }

    pub fn exact(value: u32, lower: impl Into<String>, upper: impl Into<String>) -> Self {
        Self {
            value,
            kind: BoundKind::Exact,
            lower_justification: Some(lower.into()),
            upper_justification: Some(upper.into()),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        self.value >= 1
            && match self.kind {
                BoundKind::Exact => self.lower_justification.is_some() && self.upper_justification.is_some(),
                BoundKind::Lower => self.lower_justification.is_some(),
                BoundKind::Upper => self.upper_justification.is_some(),
            }
    }

    pub fn justification(&self) -> String {
        match (&self.lower_justification, &self.upper_justification) {
            (Some(l), Some(u)) => format!("lower: {l}; upper: {u}"),
            (Some(j), None) | (None, Some(j)) => j.clone(),
            (None, None) => String::new(),
        }
    }

    fn is_at_least(&self, v: u32) -> bool {
        matches!(self.kind, BoundKind::Exact | BoundKind::Lower) && self.value >= v
    }
}

impl fmt::Display for BridgeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            BoundKind::Exact => "=",
            BoundKind::Upper => "<=",
            BoundKind::Lower => ">=",
        };
        write!(f, "{op} {}", self.value)
    }
}

/// Lower bound on tunnel number.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TunnelBound {
    pub value: u32,
    pub kind: BoundKind,
    pub justification: String,
}

impl TunnelBound {
    pub fn lower(value: u32, why: impl Into<String>) -> Self {
        Self { value, kind: BoundKind::Lower, justification: why.into() }
    }
}

/// Bridge number of a connected sum: b1 + b2 - 1.
pub fn schubert_bridge(b1: &BridgeBound, b2: &BridgeBound) -> Result<BridgeBound, CertifyError> {
    for b in [b1, b2] {
        if b.kind == BoundKind::Upper {
            return Err(CertifyError::UpperBoundInput(b.kind));
        }
    }
    let value = b1.value + b2.value - 1;
    let why = format!("Schubert: {} + {} - 1", b1.value, b2.value);
    Ok(if b1.kind == BoundKind::Exact && b2.kind == BoundKind::Exact {
        BridgeBound::exact(value, why.clone(), why)
    } else {
        BridgeBound::lower(value, why)
    })
}

/// Bridge number at least 2, from an obstruction to being the unknot.
pub fn nontrivial_bridge_lower(k: &Diagram, budget: &SearchBudget) -> Result<BridgeBound, CertifyError> {
    match unknot_status(k, budget) {
        v @ UnknotVerdict::Knotted { .. } => Ok(bridge_from_obstruction(&v.obstruction().unwrap())),
        v => Err(CertifyError::NoObstruction(k.name.clone().unwrap_or_default(), v.to_string())),
    }
}

fn bridge_from_obstruction(obstruction: &str) -> BridgeBound {
    BridgeBound::lower(2, format!("not the unknot ({obstruction}); bridge number 1 only for the unknot"))
}

/// Tunnel number of a sum of two nontrivial knots is at least 2.
pub fn norwood_tunnel_lower(p1: &Premise, p2: &Premise) -> Result<TunnelBound, CertifyError> {
    let subject = |p: &Premise| match &p.statement {
        Statement::Nontrivial { subject, .. } => Ok(subject.clone()),
        _ => Err(CertifyError::NotNontrivial(p.id.clone())),
    };
    let (a, b) = (subject(p1)?, subject(p2)?);
    Ok(TunnelBound::lower(2, format!("Norwood: {a} and {b} nontrivial")))
}

// ---------------------------------------------------------------------------
// statements

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Origin {
    Fill { graph: String, edge: usize, spec: FillingSpec },
    Constituent { graph: String, deleted_edge: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Evidence {
    /// A replayable move sequence, stored under `trace` in the artifacts.
    Witness { moves: usize, trace: String, mirror: bool },
    Invariants { determinant: u64, alexander: String, jones_mirror: bool },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Statement {
    Diagram { name: String, origin: Origin, digest: String, crossings: usize },
    ConnectedSum { name: String, summands: [String; 2] },
    Identified { subject: String, reference: String, evidence: Evidence },
    Nontrivial { subject: String, obstruction: String },
    Bridge { subject: String, bound: BridgeBound },
    Tunnel { subject: String, bound: TunnelBound },
    /// If `graph` were trivial, `knot` would have bridge number at most `value`.
    TrivialImpliesBridgeAtMost { graph: String, knot: String, value: u32 },
    NeighbourhoodIsotopic { graph: String, spine: String },
    /// `knot` is not a cycle of any theta-graph with handlebody exterior.
    NotHandlebodyCycle { knot: String },
    ExteriorNotHandlebody { graph: String },
    GraphNontrivial { graph: String },
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Diagram { name, origin, digest, crossings } => {
                let o = match origin {
                    Origin::Fill { graph, edge, spec } => format!("fill_edge({graph}, {edge}, {spec})"),
                    Origin::Constituent { graph, deleted_edge } => format!("constituent({graph}, {deleted_edge})"),
                };
                write!(f, "{name} := {o}  [{crossings} crossings, {digest}]")
            }
            Statement::ConnectedSum { name, summands } => write!(f, "{name} = {} # {}", summands[0], summands[1]),
            Statement::Identified { subject, reference, evidence } => match evidence {
                Evidence::Witness { moves, mirror, .. } => {
                    let r = if *mirror { format!("mirror({reference})") } else { reference.clone() };
                    write!(f, "{subject} ≅ {r} by a {moves}-move witness")
                }
                Evidence::Invariants { determinant, alexander, jones_mirror } => write!(
                    f,
                    "{subject} ≅ {reference} up to invariants: det {determinant}, alexander {alexander}, jones {}",
                    if *jones_mirror { "equal to the mirror's" } else { "equal" }
                ),
            },
            Statement::Nontrivial { subject, obstruction } => write!(f, "{subject} is knotted ({obstruction})"),
            Statement::Bridge { subject, bound } => write!(f, "b({subject}) {bound}  [{}]", bound.justification()),
            Statement::Tunnel { subject, bound } => write!(f, "t({subject}) >= {}  [{}]", bound.value, bound.justification),
            Statement::TrivialImpliesBridgeAtMost { graph, knot, value } => {
                write!(f, "{graph} trivial ⇒ b({knot}) <= {value}")
            }
            Statement::NeighbourhoodIsotopic { graph, spine } => write!(f, "N({graph}) is isotopic to N({spine})"),
            Statement::NotHandlebodyCycle { knot } => {
                write!(f, "{knot} is not a cycle of a theta-graph with handlebody exterior")
            }
            Statement::ExteriorNotHandlebody { graph } => write!(f, "exterior of {graph} is not a handlebody"),
            Statement::GraphNontrivial { graph } => write!(f, "{graph} is nontrivial"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Computed { op: String, inputs: Vec<String>, outputs: String },
    Trusted { source: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Premise {
    pub id: String,
    pub statement: Statement,
    pub provenance: Provenance,
}

impl Premise {
    pub fn is_trusted(&self) -> bool {
        matches!(self.provenance, Provenance::Trusted { .. })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Nontrivial knot ⇒ bridge number ≥ 2.
    UnknotIffBridgeOne,
    /// Matching lower and upper bounds ⇒ exact.
    ExactBridge,
    Schubert,
    /// Bridge bounds carry over along an identification.
    TransferBridge,
    /// Gluing the ball of a trivial graph's edge complement to a trivial twist
    /// tangle gives at most two bridges.
    TrivialTangleGluing,
    BridgeContradiction,
    Norwood,
    /// Tunnel number one knots are prime.
    TunnelOnePrime,
    CycleOfSpine,
    NeighbourhoodTransfer,
    /// The trivial graph has handlebody exterior.
    TrivialHasHandlebodyExterior,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::UnknotIffBridgeOne => "unknot-iff-bridge-one",
            Rule::ExactBridge => "exact-bridge",
            Rule::Schubert => "schubert",
            Rule::TransferBridge => "transfer-bridge",
            Rule::TrivialTangleGluing => "trivial-tangle-gluing",
            Rule::BridgeContradiction => "bridge-contradiction",
            Rule::Norwood => "norwood",
            Rule::TunnelOnePrime => "tunnel-one-prime",
            Rule::CycleOfSpine => "cycle-of-spine",
            Rule::NeighbourhoodTransfer => "neighbourhood-transfer",
            Rule::TrivialHasHandlebodyExterior => "trivial-has-handlebody-exterior",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RuleApplication {
    pub id: String,
    pub rule: Rule,
    pub hypotheses: Vec<String>,
    pub conclusion: Statement,
}

/// Conclusion of `rule` from `hyps`, or why it does not apply.
pub fn derive(rule: Rule, hyps: &[&Statement]) -> Result<Statement, String> {
    use Statement as S;
    let bad = || format!("{} does not apply to its hypotheses", rule.name());
    match (rule, hyps) {
        (Rule::UnknotIffBridgeOne, [S::Nontrivial { subject, obstruction }]) => {
            Ok(S::Bridge { subject: subject.clone(), bound: bridge_from_obstruction(obstruction) })
        }
        (Rule::ExactBridge, [S::Bridge { subject: a, bound: lo }, S::Bridge { subject: b, bound: hi }]) => {
            if a != b || lo.kind != BoundKind::Lower || hi.kind != BoundKind::Upper || lo.value != hi.value {
                return Err(bad());
            }
            Ok(S::Bridge {
                subject: a.clone(),
                bound: BridgeBound::exact(
                    lo.value,
                    lo.lower_justification.clone().unwrap_or_default(),
                    hi.upper_justification.clone().unwrap_or_default(),
                ),
            })
        }
        (Rule::Schubert, [S::ConnectedSum { name, summands }, S::Bridge { subject: a, bound: ba }, S::Bridge { subject: b, bound: bb }]) => {
            if [a, b] != [&summands[0], &summands[1]] {
                return Err(bad());
            }
            let bound = schubert_bridge(ba, bb).map_err(|e| e.to_string())?;
            Ok(S::Bridge { subject: name.clone(), bound })
        }
        (Rule::TransferBridge, [S::Identified { subject, reference, .. }, S::Bridge { subject: r, bound }]) => {
            if r != reference {
                return Err(bad());
            }
            Ok(S::Bridge { subject: subject.clone(), bound: bound.clone() })
        }
        (Rule::TrivialTangleGluing, [S::Diagram { name, origin: Origin::Fill { graph, .. }, .. }]) => {
            Ok(S::TrivialImpliesBridgeAtMost { graph: graph.clone(), knot: name.clone(), value: 2 })
        }
        (Rule::BridgeContradiction, [S::Bridge { subject, bound }, S::TrivialImpliesBridgeAtMost { graph, knot, value }]) => {
            if subject != knot || !bound.is_at_least(value + 1) {
                return Err(bad());
            }
            Ok(S::GraphNontrivial { graph: graph.clone() })
        }
        (Rule::Norwood, [S::ConnectedSum { name, summands }, S::Nontrivial { subject: a, .. }, S::Nontrivial { subject: b, .. }]) => {
            if [a, b] != [&summands[0], &summands[1]] {
                return Err(bad());
            }
            Ok(S::Tunnel { subject: name.clone(), bound: TunnelBound::lower(2, format!("Norwood: {a} and {b} nontrivial")) })
        }
        (Rule::TunnelOnePrime, [S::Tunnel { subject, bound }]) => {
            if bound.value < 2 {
                return Err(bad());
            }
            Ok(S::NotHandlebodyCycle { knot: subject.clone() })
        }
        (
            Rule::CycleOfSpine,
            [S::Diagram { name, origin: Origin::Constituent { graph, .. }, .. }, S::Identified { subject, reference, .. }, S::NotHandlebodyCycle { knot }],
        ) => {
            if name != subject || reference != knot {
                return Err(bad());
            }
            Ok(S::ExteriorNotHandlebody { graph: graph.clone() })
        }
        (Rule::NeighbourhoodTransfer, [S::ExteriorNotHandlebody { graph: spine }, S::NeighbourhoodIsotopic { graph, spine: s }]) => {
            if spine != s {
                return Err(bad());
            }
            Ok(S::ExteriorNotHandlebody { graph: graph.clone() })
        }
        (Rule::TrivialHasHandlebodyExterior, [S::ExteriorNotHandlebody { graph }]) => {
            Ok(S::GraphNontrivial { graph: graph.clone() })
        }
        _ => Err(bad()),
    }
}

// ---------------------------------------------------------------------------
// certificates

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "VERIFIED")]
    Verified,
    #[serde(rename = "VERIFIED_MODULO_INVARIANTS")]
    VerifiedModuloInvariants,
    #[serde(rename = "FAILED")]
    Failed,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        self != Verdict::Failed
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "VERIFIED",
            Verdict::VerifiedModuloInvariants => "VERIFIED_MODULO_INVARIANTS",
            Verdict::Failed => "FAILED",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Failure {
    pub step: usize,
    pub name: String,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Artifacts {
    pub move_traces: BTreeMap<String, String>,
    pub invariant_values: BTreeMap<String, String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub corollaries: Vec<String>,
    pub premises: Vec<Premise>,
    pub rules: Vec<RuleApplication>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<Failure>,
    pub artifacts: Artifacts,
    pub seal: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("seal does not match content")]
    Seal,
    #[error("{0}: hypothesis {1} is not an earlier premise or conclusion")]
    MissingHypothesis(String, String),
    #[error("{0}: {1}")]
    Rule(String, String),
    #[error("{0}: stated conclusion differs from the derived one")]
    Conclusion(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("stated verdict {stated} but content supports {derived}")]
    Verdict { stated: Verdict, derived: Verdict },
    #[error("claim '{0}' is not concluded")]
    Unconcluded(String),
}

/// Trusted premises the verdict VERIFIED tolerates.
fn trust_allowed(s: &Statement) -> bool {
    matches!(
        s,
        Statement::NeighbourhoodIsotopic { .. } | Statement::Bridge { bound: BridgeBound { kind: BoundKind::Upper, .. }, .. }
    )
}

impl Certificate {
    fn content_digest(&self) -> String {
        let mut c = self.clone();
        c.seal = String::new();
        let bytes = serde_json::to_vec(&c).expect("certificate serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Recomputes the seal over the current content. The seal only detects
    /// accidental edits; soundness comes from `check` re-deriving every rule.
    pub fn sealed(mut self) -> Self {
        self.seal = self.content_digest();
        self
    }

    /// Replays the proof: seal, every rule against its hypotheses, the claim
    /// and the verdict. Returns the verdict the content supports.
    pub fn check(&self) -> Result<Verdict, CheckError> {
        if self.seal != self.content_digest() {
            return Err(CheckError::Seal);
        }
        let mut known: BTreeMap<&str, &Statement> = BTreeMap::new();
        for p in &self.premises {
            if known.insert(&p.id, &p.statement).is_some() {
                return Err(CheckError::DuplicateId(p.id.clone()));
            }
        }
        for r in &self.rules {
            let hyps = r
                .hypotheses
                .iter()
                .map(|h| known.get(h.as_str()).copied().ok_or_else(|| CheckError::MissingHypothesis(r.id.clone(), h.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            let derived = derive(r.rule, &hyps).map_err(|e| CheckError::Rule(r.id.clone(), e))?;
            if derived != r.conclusion {
                return Err(CheckError::Conclusion(r.id.clone()));
            }
            if known.insert(&r.id, &r.conclusion).is_some() {
                return Err(CheckError::DuplicateId(r.id.clone()));
            }
        }
        let derived = if self.failure.is_some() {
            Verdict::Failed
        } else {
            let concluded = self.rules.iter().any(|r| r.conclusion.to_string() == self.claim);
            if !concluded {
                return Err(CheckError::Unconcluded(self.claim.clone()));
            }
            let by_invariants = self
                .premises
                .iter()
                .any(|p| matches!(p.statement, Statement::Identified { evidence: Evidence::Invariants { .. }, .. }));
            let loose_trust = self.premises.iter().any(|p| p.is_trusted() && !trust_allowed(&p.statement));
            if by_invariants || loose_trust {
                Verdict::VerifiedModuloInvariants
            } else {
                Verdict::Verified
            }
        };
        if derived != self.verdict {
            return Err(CheckError::Verdict { stated: self.verdict, derived });
        }
        Ok(derived)
    }

    /// The verdict after an independent check; FAILED if the check fails.
    pub fn recheck(&self) -> Verdict {
        self.check().unwrap_or(Verdict::Failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("claim: {}\nverdict: {}\n", self.claim, self.verdict);
        if let Some(f) = &self.failure {
            s += &format!("failed at step {} ({}): {}\n", f.step, f.name, f.reason);
        }
        s += "premises:\n";
        for p in &self.premises {
            let how = match &p.provenance {
                Provenance::Computed { op, .. } => format!("computed by {op}"),
                Provenance::Trusted { source } => format!("trusted: {source}"),
            };
            s += &format!("  [{}] {}\n       {}\n", p.id, p.statement, how);
        }
        s += "rules:\n";
        for r in &self.rules {
            s += &format!("  [{}] {}({}) ⇒ {}\n", r.id, r.rule.name(), r.hypotheses.join(", "), r.conclusion);
        }
        for c in &self.corollaries {
            s += &format!("corollary: {c}\n");
        }
        for (k, v) in &self.artifacts.invariant_values {
            s += &format!("value {k} = {v}\n");
        }
        for (k, v) in &self.artifacts.move_traces {
            s += &format!("trace {k}:\n");
            for line in v.lines() {
                s += &format!("    {line}\n");
            }
        }
        s
    }
}

/// Reference knots the certificates identify against.
#[derive(Clone, Debug)]
pub struct References {
    pub trefoil: Diagram,
    pub fig8: Diagram,
    pub kappa: Diagram,
}

impl References {
    pub fn shipped() -> Self {
        let get = |n| crate::data::shipped(n).expect("shipped reference");
        Self { trefoil: get("trefoil"), fig8: get("fig8"), kappa: get("kappa") }
    }
}

struct Builder {
    cert: Certificate,
    step: usize,
}

impl Builder {
    fn new(claim: String) -> Self {
        Self {
            cert: Certificate {
                claim,
                corollaries: vec![],
                premises: vec![],
                rules: vec![],
                verdict: Verdict::Failed,
                failure: None,
                artifacts: Artifacts::default(),
                seal: String::new(),
            },
            step: 0,
        }
    }

    fn begin(&mut self, _name: &str) {
        self.step += 1;
    }

    fn premise(&mut self, statement: Statement, provenance: Provenance) -> String {
        let id = format!("p{}", self.cert.premises.len() + 1);
        self.cert.premises.push(Premise { id: id.clone(), statement, provenance });
        id
    }

    fn computed(&mut self, statement: Statement, op: &str, inputs: &[&str], outputs: String) -> String {
        let inputs = inputs.iter().map(|s| s.to_string()).collect();
        self.premise(statement, Provenance::Computed { op: op.into(), inputs, outputs })
    }

    fn trusted(&mut self, statement: Statement, source: &str) -> String {
        self.premise(statement, Provenance::Trusted { source: source.into() })
    }

    fn apply(&mut self, rule: Rule, hyps: &[&str]) -> Result<String, String> {
        let lookup = |id: &str| {
            self.cert
                .premises
                .iter()
                .find(|p| p.id == id)
                .map(|p| &p.statement)
                .or_else(|| self.cert.rules.iter().find(|r| r.id == id).map(|r| &r.conclusion))
        };
        let hs: Vec<&Statement> = hyps.iter().map(|h| lookup(h).expect("known hypothesis")).collect();
        let conclusion = derive(rule, &hs)?;
        let id = format!("r{}", self.cert.rules.len() + 1);
        self.cert.rules.push(RuleApplication {
            id: id.clone(),
            rule,
            hypotheses: hyps.iter().map(|s| s.to_string()).collect(),
            conclusion,
        });
        Ok(id)
    }

    fn fail(mut self, name: &str, reason: impl Into<String>) -> Certificate {
        self.cert.failure = Some(Failure { step: self.step, name: name.into(), reason: reason.into() });
        self.cert.verdict = Verdict::Failed;
        self.cert.sealed()
    }

    fn finish(mut self) -> Certificate {
        let v = {
            let mut c = self.cert.clone();
            c.verdict = Verdict::Verified;
            c = c.sealed();
            match c.check() {
                Ok(v) => v,
                Err(CheckError::Verdict { derived, .. }) => derived,
                Err(_) => Verdict::Failed,
            }
        };
        self.cert.verdict = v;
        self.cert.sealed()
    }
}

fn name_of(d: &Diagram, fallback: &str) -> String {
    d.name.clone().unwrap_or_else(|| fallback.to_string())
}

/// Identifies `k` with `reference` by canonical equality, a move witness, or
/// failing those by invariant agreement (Jones up to mirror).
fn identify(b: &mut Builder, subject: &str, k: &Diagram, refs: &References, budget: &SearchBudget) -> Result<String, String> {
    let reference = "kappa";
    let (dk, dr) = (determinant(k).map_err(|e| e.to_string())?, determinant(&refs.kappa).map_err(|e| e.to_string())?);
    let (ak, ar) = (alexander(k).map_err(|e| e.to_string())?, alexander(&refs.kappa).map_err(|e| e.to_string())?);
    let jk = jones(k).map_err(|e| e.to_string())?;
    let (jr, jm) = (jones(&refs.kappa).map_err(|e| e.to_string())?, jones(&refs.kappa.mirror()).map_err(|e| e.to_string())?);
    b.cert.artifacts.invariant_values.insert(format!("det({subject})"), dk.to_string());
    b.cert.artifacts.invariant_values.insert(format!("alexander({subject})"), ak.to_string());
    b.cert.artifacts.invariant_values.insert(format!("jones({subject})"), jk.poly.to_string());
    if dk != dr {
        return Err(format!("determinant({subject}) = {dk}, determinant({reference}) = {dr}"));
    }
    if ak != ar {
        return Err(format!("alexander({subject}) = {ak}, alexander({reference}) = {ar}"));
    }
    if jk != jr && jk != jm {
        return Err(format!("jones({subject}) = {} matches neither {reference} nor its mirror", jk.poly));
    }
    let mirror = jk != jr;
    let target = if mirror { refs.kappa.mirror() } else { refs.kappa.clone() };
    let inputs = [subject, reference];
    let witness = if canonical(k).0 == canonical(&target).0 {
        Some(crate::moves::MoveSequence::empty(k))
    } else {
        equivalent(k, &target, budget)
    };
    let statement = match witness {
        Some(w) => {
            let trace = format!("{subject}-to-{reference}");
            b.cert.artifacts.move_traces.insert(trace.clone(), w.to_trace());
            Statement::Identified {
                subject: subject.into(),
                reference: reference.into(),
                evidence: Evidence::Witness { moves: w.len(), trace, mirror },
            }
        }
        None => Statement::Identified {
            subject: subject.into(),
            reference: reference.into(),
            evidence: Evidence::Invariants { determinant: dk, alexander: ak.to_string(), jones_mirror: mirror },
        },
    };
    let op = if matches!(statement, Statement::Identified { evidence: Evidence::Witness { .. }, .. }) {
        "equivalent"
    } else {
        "invariants"
    };
    Ok(b.computed(statement, op, &inputs, format!("det {dk}")))
}

/// Premises that both summands are knotted and that the reference is their sum.
fn summands(b: &mut Builder, refs: &References, budget: &SearchBudget) -> Result<(String, String, String), String> {
    let sum = connected_sum(&refs.trefoil, 1, &refs.fig8, 1).map_err(|e| e.to_string())?;
    if digest(&sum) != digest(&refs.kappa) {
        return Err("kappa is not connected_sum(trefoil, fig8)".into());
    }
    let s = b.computed(
        Statement::ConnectedSum { name: "kappa".into(), summands: ["trefoil".into(), "fig8".into()] },
        "connected_sum",
        &["trefoil", "fig8"],
        digest(&sum),
    );
    let mut ids = vec![];
    for (name, k) in [("trefoil", &refs.trefoil), ("fig8", &refs.fig8)] {
        let v = unknot_status(k, budget);
        let Some(obstruction) = v.obstruction() else {
            return Err(format!("{name}: {v}"));
        };
        b.cert.artifacts.invariant_values.insert(format!("obstruction({name})"), obstruction.clone());
        ids.push(b.computed(
            Statement::Nontrivial { subject: name.into(), obstruction: obstruction.clone() },
            "unknot_status",
            &[name],
            v.to_string(),
        ));
    }
    Ok((s, ids[0].clone(), ids[1].clone()))
}

/// Proof by bridge number: a filling of the graph's edge is kappa, which has
/// three bridges, while a trivial graph would force at most two.
pub fn verify_proof1(t: &Diagram, edge_index: usize, spec: FillingSpec, budget: &SearchBudget) -> Certificate {
    verify_proof1_with(t, edge_index, spec, budget, &References::shipped())
}

pub fn verify_proof1_with(t: &Diagram, edge_index: usize, spec: FillingSpec, budget: &SearchBudget, refs: &References) -> Certificate {
    let graph = name_of(t, "graph");
    let mut b = Builder::new(format!("{graph} is nontrivial"));
    b.cert.artifacts.invariant_values.insert("filling".into(), format!("edge {edge_index}, {spec}"));

    b.begin("fill");
    if t.kind != DiagramKind::Theta {
        return b.fail("fill", "input is not a theta-diagram");
    }
    let k = match fill_edge(t, edge_index, spec) {
        Ok(k) => k,
        Err(e) => return b.fail("fill", e.to_string()),
    };
    let kd = b.computed(
        Statement::Diagram {
            name: "K".into(),
            origin: Origin::Fill { graph: graph.clone(), edge: edge_index, spec },
            digest: digest(&k),
            crossings: k.crossing_count(),
        },
        "fill_edge",
        &[&graph],
        k.to_string().trim().replace('\n', "; "),
    );

    b.begin("identify-kappa");
    let id = match identify(&mut b, "K", &k, refs, budget) {
        Ok(id) => id,
        Err(e) => return b.fail("identify-kappa", e),
    };

    b.begin("summands-nontrivial");
    let (sum, n1, n2) = match summands(&mut b, refs, budget) {
        Ok(x) => x,
        Err(e) => return b.fail("summands-nontrivial", e),
    };
    let mut exact = vec![];
    for (name, n) in [("trefoil", &n1), ("fig8", &n2)] {
        let lo = b.apply(Rule::UnknotIffBridgeOne, &[n]).expect("rule applies");
        let hi = b.trusted(
            Statement::Bridge {
                subject: name.into(),
                bound: BridgeBound::upper(2, "explicit 2-bridge position of shipped diagram"),
            },
            "two-bridge presentation of the shipped diagram",
        );
        exact.push(b.apply(Rule::ExactBridge, &[&lo, &hi]).expect("rule applies"));
    }

    b.begin("schubert");
    let bk = match b.apply(Rule::Schubert, &[&sum, &exact[0], &exact[1]]) {
        Ok(x) => x,
        Err(e) => return b.fail("schubert", e),
    };
    let bkk = b.apply(Rule::TransferBridge, &[&id, &bk]).expect("rule applies");

    b.begin("trivial-tangle-gluing");
    let glue = b.apply(Rule::TrivialTangleGluing, &[&kd]).expect("rule applies");

    b.begin("contradiction");
    if let Err(e) = b.apply(Rule::BridgeContradiction, &[&bkk, &glue]) {
        return b.fail("contradiction", e);
    }
    b.finish()
}

/// Trusted premise that the graph's neighbourhood is isotopic to the spine's.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NeighbourhoodPremise {
    pub graph: String,
    pub source: String,
}

/// Proof by tunnel number: a cycle of a spine of the graph's neighbourhood is
/// kappa, whose tunnel number is at least two, so the exterior is not a handlebody.
pub fn verify_proof2(spine: &Diagram, deleted_edge: usize, premise: &NeighbourhoodPremise, budget: &SearchBudget) -> Certificate {
    verify_proof2_with(spine, deleted_edge, premise, budget, &References::shipped())
}

pub fn verify_proof2_with(
    spine: &Diagram,
    deleted_edge: usize,
    premise: &NeighbourhoodPremise,
    budget: &SearchBudget,
    refs: &References,
) -> Certificate {
    let graph = premise.graph.clone();
    let spine_name = name_of(spine, "spine");
    let mut b = Builder::new(format!("{graph} is nontrivial"));
    b.cert.corollaries = vec![
        format!("exterior of {graph} is not a handlebody"),
        format!("{graph} is not equivalent to any graph with handlebody exterior"),
    ];

    b.begin("constituent");
    let c = match spine.constituent(deleted_edge) {
        Ok(c) if spine.kind == DiagramKind::Theta => c,
        Ok(_) => return b.fail("constituent", "input is not a theta-diagram"),
        Err(e) => return b.fail("constituent", e.to_string()),
    };
    let cd = b.computed(
        Statement::Diagram {
            name: "C".into(),
            origin: Origin::Constituent { graph: spine_name.clone(), deleted_edge },
            digest: digest(&c),
            crossings: c.crossing_count(),
        },
        "constituent",
        &[&spine_name],
        c.to_string().trim().replace('\n', "; "),
    );

    b.begin("identify-kappa");
    let id = match identify(&mut b, "C", &c, refs, budget) {
        Ok(id) => id,
        Err(e) => return b.fail("identify-kappa", e),
    };

    b.begin("summands-nontrivial");
    let (sum, n1, n2) = match summands(&mut b, refs, budget) {
        Ok(x) => x,
        Err(e) => return b.fail("summands-nontrivial", e),
    };

    b.begin("norwood");
    let tun = b.apply(Rule::Norwood, &[&sum, &n1, &n2]).expect("rule applies");
    let prime = b.apply(Rule::TunnelOnePrime, &[&tun]).expect("rule applies");
    let spine_ext = b.apply(Rule::CycleOfSpine, &[&cd, &id, &prime]).expect("rule applies");

    b.begin("neighbourhood");
    let nb = b.trusted(
        Statement::NeighbourhoodIsotopic { graph: graph.clone(), spine: spine_name.clone() },
        &premise.source,
    );
    let ext = b.apply(Rule::NeighbourhoodTransfer, &[&spine_ext, &nb]).expect("rule applies");

    b.begin("conclusion");
    b.apply(Rule::TrivialHasHandlebodyExterior, &[&ext]).expect("rule applies");
    b.finish()
}

/// Unknot verdicts for the three constituents.
#[derive(Clone, Debug)]
pub struct BrunnianReport {
    pub graph: String,
    pub verdicts: Vec<UnknotVerdict>,
}

impl BrunnianReport {
    /// Every constituent shown unknotted within budget.
    pub fn is_brunnian(&self) -> bool {
        self.verdicts.iter().all(UnknotVerdict::is_unknot)
    }

    pub fn knotted(&self) -> Vec<usize> {
        (0..self.verdicts.len()).filter(|&i| self.verdicts[i].is_knotted()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, v) in self.verdicts.iter().enumerate() {
            s += &format!("{}-minus-e{i}: {v}\n", self.graph);
        }
        s += &format!("brunnian: {}\n", if self.is_brunnian() { "yes" } else { "no" });
        s
    }

    pub fn to_json(&self) -> String {
        let items: Vec<_> = self
            .verdicts
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut m = serde_json::Map::new();
                m.insert("edge".into(), i.into());
                m.insert(
                    "verdict".into(),
                    match v {
                        UnknotVerdict::Unknot(_) => "unknot",
                        UnknotVerdict::Knotted { .. } => "knotted",
                        UnknotVerdict::Unknown => "unknown",
                    }
                    .into(),
                );
                match v {
                    UnknotVerdict::Unknot(w) => {
                        m.insert("trace".into(), w.to_trace().into());
                    }
                    UnknotVerdict::Knotted { .. } => {
                        m.insert("obstruction".into(), v.obstruction().unwrap().into());
                    }
                    UnknotVerdict::Unknown => {}
                }
                serde_json::Value::Object(m)
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "graph": self.graph,
            "constituents": items,
            "brunnian": self.is_brunnian(),
        }))
        .expect("report serializes")
    }
}

pub fn brunnian_check(t: &Diagram, budget: &SearchBudget) -> Result<BrunnianReport, crate::diagram::DiagramError> {
    let mut verdicts = Vec::new();
    for i in 0..3 {
        let c = t.constituent(i)?;
        let b = SearchBudget { max_crossings: budget.max_crossings.max(c.crossing_count() + 2), ..*budget };
        verdicts.push(unknot_status(&c, &b));
    }
    Ok(BrunnianReport { graph: name_of(t, "graph"), verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: u32) -> BridgeBound {
        BridgeBound::exact(v, "l", "u")
    }

    #[test]
    fn schubert_values() {
        let b = schubert_bridge(&ex(2), &ex(2)).unwrap();
        assert_eq!((b.value, b.kind), (3, BoundKind::Exact));
        assert!(b.is_well_formed());
        assert_eq!(schubert_bridge(&ex(1), &ex(4)).unwrap().value, 4);
        let l = schubert_bridge(&BridgeBound::lower(2, "x"), &BridgeBound::lower(2, "y")).unwrap();
        assert_eq!((l.value, l.kind), (3, BoundKind::Lower));
        assert!(schubert_bridge(&BridgeBound::upper(2, "x"), &ex(2)).is_err());
    }

    #[test]
    fn schubert_associative() {
        for (a, b, c) in [(1, 2, 3), (2, 2, 2), (3, 1, 5)] {
            let l = schubert_bridge(&ex(a), &schubert_bridge(&ex(b), &ex(c)).unwrap()).unwrap();
            let r = schubert_bridge(&schubert_bridge(&ex(a), &ex(b)).unwrap(), &ex(c)).unwrap();
            assert_eq!(l.value, a + b + c - 2);
            assert_eq!(l.value, r.value);
        }
    }

    #[test]
    fn bridge_lower_bounds() {
        let refs = References::shipped();
        let budget = SearchBudget::for_crossings(4);
        let t = nontrivial_bridge_lower(&refs.trefoil, &budget).unwrap();
        assert!(t.justification().contains("3-colorings = 9"));
        let f = nontrivial_bridge_lower(&refs.fig8, &budget).unwrap();
        assert!(f.justification().contains("determinant = 5"));
        assert!(nontrivial_bridge_lower(&Diagram::unknot(), &budget).is_err());
    }

    #[test]
    fn norwood_needs_nontriviality() {
        let p = |s| Premise {
            id: "p".into(),
            statement: s,
            provenance: Provenance::Trusted { source: "test".into() },
        };
        let a = p(Statement::Nontrivial { subject: "trefoil".into(), obstruction: "x".into() });
        let bound = norwood_tunnel_lower(&a, &a.clone()).unwrap();
        assert_eq!(bound.value, 2);
        let bad = p(Statement::GraphNontrivial { graph: "unknot".into() });
        assert!(norwood_tunnel_lower(&a, &bad).is_err());
    }

    #[test]
    fn trivial_graph_fails_both() {
        let t = crate::data::shipped("trivial").unwrap();
        let budget = SearchBudget::for_crossings(4);
        let c1 = verify_proof1(&t, 0, FillingSpec::new(0), &budget);
        assert_eq!(c1.verdict, Verdict::Failed);
        assert_eq!(c1.failure.as_ref().unwrap().step, 2);
        assert_eq!(c1.recheck(), Verdict::Failed);
        let prem = NeighbourhoodPremise { graph: "trivial".into(), source: "identity".into() };
        let c2 = verify_proof2(&t, 0, &prem, &budget);
        assert_eq!(c2.failure.as_ref().unwrap().step, 2);
        assert!(c2.check().is_ok());
    }
}
