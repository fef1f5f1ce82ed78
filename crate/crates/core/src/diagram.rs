//! Planar-diagram data model for knots and theta-graphs.
//!
//! A diagram is a list of crossings and trivalent vertices whose slots carry
//! arc labels. Slots are listed counterclockwise. At a crossing the under
//! strand occupies slots 0 and 2, the over strand slots 1 and 3.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::planar::{NodeKind, PlanarMap};

pub type ArcLabel = u32;

#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub slots: [ArcLabel; 4],
    pub sign_hint: Option<i8>,
}

impl Crossing {
    pub fn new(slots: [ArcLabel; 4]) -> Self {
        Self { slots, sign_hint: None }
    }

    /// Under strand as (entry, exit).
    pub fn under(&self) -> (ArcLabel, ArcLabel) {
        (self.slots[0], self.slots[2])
    }

    pub fn over(&self) -> (ArcLabel, ArcLabel) {
        (self.slots[1], self.slots[3])
    }

    fn rotated(&self, k: usize) -> [ArcLabel; 4] {
        let s = self.slots;
        [s[k % 4], s[(k + 1) % 4], s[(k + 2) % 4], s[(k + 3) % 4]]
    }
}

// Rotating a crossing by two slots describes the same crossing.
impl PartialEq for Crossing {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots || self.rotated(2) == other.slots
    }
}
impl Eq for Crossing {}

#[derive(Clone, Copy, Debug)]
pub struct Vertex3 {
    pub arcs: [ArcLabel; 3],
}

impl PartialEq for Vertex3 {
    fn eq(&self, other: &Self) -> bool {
        (0..3).any(|k| (0..3).all(|i| self.arcs[(i + k) % 3] == other.arcs[i]))
    }
}
impl Eq for Vertex3 {}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DiagramKind {
    Knot,
    Theta,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pub kind: DiagramKind,
    pub name: Option<String>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex3>,
}

/// The three edges of a theta-diagram, each a list of arcs from one vertex to the other.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgePartition {
    pub edges: [Vec<ArcLabel>; 3],
    /// For each edge, the (vertex, slot) it starts and ends at.
    pub ends: [((usize, usize), (usize, usize)); 3],
}

impl EdgePartition {
    /// Indices of crossings the given edge passes through.
    pub fn crossings_of(&self, d: &Diagram, edge: usize) -> BTreeSet<usize> {
        let arcs: BTreeSet<_> = self.edges[edge].iter().copied().collect();
        d.crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| c.slots.iter().any(|a| arcs.contains(a)))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.violations.join("; "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(ValidationReport),
    #[error("expected a {expected:?} diagram")]
    WrongKind { expected: DiagramKind },
    #[error("trace from vertex {vertex} slot {slot} does not end at a vertex")]
    OpenTrace { vertex: usize, slot: usize },
    #[error("edge from vertex {vertex} returns to the same vertex (loop)")]
    Loop { vertex: usize },
    #[error("arcs {0:?} form a closed loop avoiding both vertices")]
    ClosedLoop(Vec<ArcLabel>),
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("arc {0} not present in diagram")]
    MissingArc(ArcLabel),
}

/// Where the two ends of an arc are attached: (node index, slot). Crossings
/// come first, then vertices.
pub(crate) type Occurrence = (usize, usize);

impl Diagram {
    pub fn unknot() -> Self {
        Self { kind: DiagramKind::Knot, name: None, crossings: vec![], vertices: vec![] }
    }

    pub fn knot(crossings: Vec<[ArcLabel; 4]>) -> Self {
        Self {
            kind: DiagramKind::Knot,
            name: None,
            crossings: crossings.into_iter().map(Crossing::new).collect(),
            vertices: vec![],
        }
    }

    pub fn theta(crossings: Vec<[ArcLabel; 4]>, vertices: Vec<[ArcLabel; 3]>) -> Self {
        Self {
            kind: DiagramKind::Theta,
            name: None,
            crossings: crossings.into_iter().map(Crossing::new).collect(),
            vertices: vertices.into_iter().map(|arcs| Vertex3 { arcs }).collect(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_zero_crossing_unknot(&self) -> bool {
        self.kind == DiagramKind::Knot && self.crossings.is_empty()
    }

    pub(crate) fn node_count(&self) -> usize {
        self.crossings.len() + self.vertices.len()
    }

    pub(crate) fn node_slots(&self, node: usize) -> &[ArcLabel] {
        if node < self.crossings.len() {
            &self.crossings[node].slots
        } else {
            &self.vertices[node - self.crossings.len()].arcs
        }
    }

    pub fn arcs(&self) -> BTreeSet<ArcLabel> {
        (0..self.node_count()).flat_map(|n| self.node_slots(n).iter().copied()).collect()
    }

    pub fn max_label(&self) -> ArcLabel {
        self.arcs().into_iter().next_back().unwrap_or(0)
    }

    pub(crate) fn occurrences(&self) -> BTreeMap<ArcLabel, Vec<Occurrence>> {
        let mut occ: BTreeMap<ArcLabel, Vec<Occurrence>> = BTreeMap::new();
        for n in 0..self.node_count() {
            for (s, &a) in self.node_slots(n).iter().enumerate() {
                occ.entry(a).or_default().push((n, s));
            }
        }
        occ
    }

    fn other_end(occ: &BTreeMap<ArcLabel, Vec<Occurrence>>, a: ArcLabel, here: Occurrence) -> Occurrence {
        let v = &occ[&a];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    }

    /// Every violated invariant; empty iff valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let occ = self.occurrences();
        for (&a, v) in &occ {
            if a == 0 {
                violations.push("arc labels must be positive".to_string());
            }
            if v.len() != 2 {
                violations.push(format!("arc {a} multiplicity {}", v.len()));
            }
        }
        match self.kind {
            DiagramKind::Knot => {
                if !self.vertices.is_empty() {
                    violations.push("knot kind must not have vertices".to_string());
                }
            }
            DiagramKind::Theta => {
                if self.vertices.len() != 2 {
                    violations.push("theta kind requires exactly 2 vertices".to_string());
                }
                for (i, v) in self.vertices.iter().enumerate() {
                    let [a, b, c] = v.arcs;
                    if a == b || b == c || a == c {
                        violations.push(format!("vertex {i} has a loop"));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        match self.kind {
            DiagramKind::Knot => {
                let comps = self.strand_components().len();
                if !self.crossings.is_empty() && comps != 1 {
                    violations.push(format!("knot diagram has {comps} components"));
                }
            }
            DiagramKind::Theta => {
                if let Err(e) = self.trace_edges_unchecked() {
                    violations.push(e.to_string());
                }
            }
        }
        ValidationReport { violations }
    }

    /// Whether the cyclic slot orders describe a diagram on the sphere.
    pub fn is_planar(&self) -> bool {
        let m = crate::planar::PlanarMap::from_diagram(self);
        let v = m.nodes.len() as i64;
        let e = m.occurrences().len() as i64;
        v - e + m.faces().len() as i64 == 2
    }

    pub fn check(&self) -> Result<(), DiagramError> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(r))
        }
    }

    /// Closed strand components of a vertex-free diagram, each as a list of
    /// (crossing, entry slot) visits.
    pub(crate) fn strand_components(&self) -> Vec<Vec<Occurrence>> {
        let occ = self.occurrences();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for n in 0..self.crossings.len() {
            for s in 0..4 {
                if seen.contains(&(n, s)) {
                    continue;
                }
                let mut comp = Vec::new();
                let mut cur = (n, s);
                loop {
                    // enter at cur, leave through the opposite slot
                    seen.insert(cur);
                    let exit = (cur.0, (cur.1 + 2) % 4);
                    seen.insert(exit);
                    comp.push(cur);
                    let a = self.crossings[exit.0].slots[exit.1];
                    cur = Self::other_end(&occ, a, exit);
                    if cur == (n, s) {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
        comps
    }

    /// Oriented traversal of a knot diagram: the sequence of (crossing, entry slot)
    /// visits. The lowest-labelled arc is traversed from its first occurrence
    /// (in crossing order) towards its second.
    pub fn knot_traversal(&self) -> Vec<Occurrence> {
        if self.crossings.is_empty() {
            return vec![];
        }
        let occ = self.occurrences();
        let (&a, v) = occ.iter().next().unwrap();
        let _ = a;
        let start = v[1];
        let mut seq = Vec::new();
        let mut cur = start;
        loop {
            seq.push(cur);
            let exit = (cur.0, (cur.1 + 2) % 4);
            let arc = self.crossings[exit.0].slots[exit.1];
            cur = Self::other_end(&occ, arc, exit);
            if cur == start {
                break;
            }
        }
        seq
    }

    /// Crossing signs (+1/-1) under the traversal orientation.
    pub fn crossing_signs(&self) -> Vec<i8> {
        let trav = self.knot_traversal();
        let mut under_in = vec![usize::MAX; self.crossings.len()];
        let mut over_in = vec![usize::MAX; self.crossings.len()];
        for &(c, s) in &trav {
            if s % 2 == 0 {
                under_in[c] = s;
            } else {
                over_in[c] = s;
            }
        }
        (0..self.crossings.len())
            .map(|c| if (over_in[c] + 4 - under_in[c]) % 4 == 3 { 1 } else { -1 })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_signs().iter().map(|&s| s as i64).sum()
    }

    fn trace_edges_unchecked(&self) -> Result<EdgePartition, DiagramError> {
        let nc = self.crossings.len();
        let occ = self.occurrences();
        let mut edges: Vec<Vec<ArcLabel>> = Vec::new();
        let mut ends = Vec::new();
        let mut used: BTreeSet<ArcLabel> = BTreeSet::new();
        let mut done_vertex_slots = BTreeSet::new();
        for v in 0..self.vertices.len() {
            for s in 0..3 {
                if done_vertex_slots.contains(&(v, s)) {
                    continue;
                }
                let mut arcs = Vec::new();
                let mut here = (nc + v, s);
                let mut steps = 0;
                let end = loop {
                    let a = self.node_slots(here.0)[here.1];
                    arcs.push(a);
                    used.insert(a);
                    let there = Self::other_end(&occ, a, here);
                    if there.0 >= nc {
                        break (there.0 - nc, there.1);
                    }
                    here = (there.0, (there.1 + 2) % 4);
                    steps += 1;
                    if steps > 4 * nc + 4 {
                        return Err(DiagramError::OpenTrace { vertex: v, slot: s });
                    }
                };
                if end.0 == v {
                    return Err(DiagramError::Loop { vertex: v });
                }
                done_vertex_slots.insert((v, s));
                done_vertex_slots.insert(end);
                edges.push(arcs);
                ends.push(((v, s), end));
            }
        }
        let rest: Vec<_> = occ.keys().copied().filter(|a| !used.contains(a)).collect();
        if !rest.is_empty() {
            return Err(DiagramError::ClosedLoop(rest));
        }
        if edges.len() != 3 {
            return Err(DiagramError::WrongKind { expected: DiagramKind::Theta });
        }
        Ok(EdgePartition {
            edges: [edges[0].clone(), edges[1].clone(), edges[2].clone()],
            ends: [ends[0], ends[1], ends[2]],
        })
    }

    /// Partition of the arcs into the three vertex-to-vertex edges. Edge `i`
    /// starts at slot `i` of the first vertex.
    pub fn trace_edges(&self) -> Result<EdgePartition, DiagramError> {
        if self.kind != DiagramKind::Theta || self.vertices.len() != 2 {
            return Err(DiagramError::WrongKind { expected: DiagramKind::Theta });
        }
        self.trace_edges_unchecked()
    }

    /// Knot obtained by deleting one edge of a theta-diagram.
    pub fn constituent(&self, edge_index: usize) -> Result<Diagram, DiagramError> {
        if edge_index > 2 {
            return Err(DiagramError::EdgeIndex(edge_index));
        }
        let part = self.trace_edges()?;
        let deleted: BTreeSet<_> = part.edges[edge_index].iter().copied().collect();
        let mut map = PlanarMap::from_diagram(self);
        for node in map.nodes.iter_mut() {
            match node.kind {
                NodeKind::Crossing => {
                    let s = node.arcs.clone();
                    let under_gone = deleted.contains(&s[0]);
                    let over_gone = deleted.contains(&s[1]);
                    match (under_gone, over_gone) {
                        (true, true) => node.arcs.clear(),
                        (true, false) => {
                            node.kind = NodeKind::Bivalent;
                            node.arcs = vec![s[1], s[3]];
                        }
                        (false, true) => {
                            node.kind = NodeKind::Bivalent;
                            node.arcs = vec![s[0], s[2]];
                        }
                        (false, false) => {}
                    }
                }
                NodeKind::Vertex => {
                    node.kind = NodeKind::Bivalent;
                    node.arcs.retain(|a| !deleted.contains(a));
                }
                NodeKind::Bivalent => {}
            }
        }
        map.nodes.retain(|n| !n.arcs.is_empty());
        let mut k = map.into_diagram(DiagramKind::Knot);
        let base = self.name.clone().unwrap_or_else(|| "theta".to_string());
        k.name = Some(format!("{base}-minus-e{edge_index}"));
        Ok(k)
    }

    /// Crossings swapped over/under.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            let [a, b, cc, dd] = c.slots;
            c.slots = [b, cc, dd, a];
            c.sign_hint = c.sign_hint.map(|s| -s);
        }
        d
    }

    /// The diagram with crossing `i` switched.
    pub fn crossing_changed(&self, i: usize) -> Diagram {
        let mut d = self.clone();
        let c = &mut d.crossings[i];
        let [a, b, cc, dd] = c.slots;
        c.slots = [b, cc, dd, a];
        c.sign_hint = c.sign_hint.map(|s| -s);
        d
    }

    /// Same diagram with every label `x` replaced by `f(x)`.
    pub fn relabel(&self, f: impl Fn(ArcLabel) -> ArcLabel) -> Diagram {
        let mut d = self.clone();
        for c in d.crossings.iter_mut() {
            for s in c.slots.iter_mut() {
                *s = f(*s);
            }
        }
        for v in d.vertices.iter_mut() {
            for s in v.arcs.iter_mut() {
                *s = f(*s);
            }
        }
        d
    }

    /// Arcs renumbered 1..=n in order of first appearance.
    pub fn compact_labels(&self) -> Diagram {
        let mut map = BTreeMap::new();
        for n in 0..self.node_count() {
            for &a in self.node_slots(n) {
                let next = map.len() as ArcLabel + 1;
                map.entry(a).or_insert(next);
            }
        }
        self.relabel(|a| map[&a])
    }
}

/// Diagrammatic connected sum: arcs `a1` of `k1` and `a2` of `k2` are cut and
/// the four ends spliced so the result stays planar.
pub fn connected_sum(k1: &Diagram, a1: ArcLabel, k2: &Diagram, a2: ArcLabel) -> Result<Diagram, DiagramError> {
    for k in [k1, k2] {
        if k.kind != DiagramKind::Knot {
            return Err(DiagramError::WrongKind { expected: DiagramKind::Knot });
        }
    }
    if k1.crossings.is_empty() {
        let mut r = k2.clone();
        r.name = None;
        return Ok(r);
    }
    if k2.crossings.is_empty() {
        let mut r = k1.clone();
        r.name = None;
        return Ok(r);
    }
    let occ1 = k1.occurrences();
    if !occ1.contains_key(&a1) {
        return Err(DiagramError::MissingArc(a1));
    }
    if !k2.occurrences().contains_key(&a2) {
        return Err(DiagramError::MissingArc(a2));
    }
    let offset = k1.max_label();
    let k2s = k2.relabel(|x| x + offset);
    let a2s = a2 + offset;
    let occ2 = k2s.occurrences();
    // darts p1 -> q1 and p2 -> q2; joined arcs are (p1, q2) and (p2, q1)
    let q1 = occ1[&a1][1];
    let q2 = occ2[&a2s][1];
    let mut out = Diagram { kind: DiagramKind::Knot, name: None, crossings: k1.crossings.clone(), vertices: vec![] };
    let n1 = out.crossings.len();
    out.crossings.extend(k2s.crossings.iter().copied());
    // slot q2 gets label a1, slot q1 gets label a2s
    out.crossings[q1.0].slots[q1.1] = a2s;
    out.crossings[n1 + q2.0].slots[q2.1] = a1;
    for c in out.crossings.iter_mut() {
        c.sign_hint = None;
    }
    Ok(out)
}

pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let mut declared: Option<(DiagramKind, Option<String>)> = None;
    let mut crossings = Vec::new();
    let mut vertices = Vec::new();
    let mut saw_u = false;
    let mut content_lines = 0;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for (i, ch) in line.char_indices() {
            let _ = ch;
            if i < col {
                continue;
            }
            let rest = &line[i..];
            if rest.starts_with(char::is_whitespace) {
                continue;
            }
            let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            tokens.push((i + 1, &rest[..len]));
            col = i + len;
        }
        if tokens.is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| ParseError::Syntax { line: line_no, column, message };
        let (c0, head) = tokens[0];
        let nums = |expected: usize| -> Result<Vec<ArcLabel>, ParseError> {
            if tokens.len() != expected + 1 {
                return Err(syntax(c0, format!("'{head}' expects {expected} arc labels, found {}", tokens.len() - 1)));
            }
            tokens[1..]
                .iter()
                .map(|&(c, t)| match t.parse::<ArcLabel>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(syntax(c, format!("expected positive arc label, found '{t}'"))),
                })
                .collect()
        };
        match head {
            "K" | "T" => {
                if content_lines > 0 || declared.is_some() {
                    return Err(syntax(c0, "kind declaration must be the first line".into()));
                }
                let kind = if head == "K" { DiagramKind::Knot } else { DiagramKind::Theta };
                let name = if tokens.len() > 1 {
                    Some(tokens[1..].iter().map(|t| t.1).collect::<Vec<_>>().join(" "))
                } else {
                    None
                };
                declared = Some((kind, name));
                continue;
            }
            "X" => {
                let v = nums(4)?;
                crossings.push([v[0], v[1], v[2], v[3]]);
            }
            "V" => {
                let v = nums(3)?;
                vertices.push([v[0], v[1], v[2]]);
            }
            "U" => {
                if tokens.len() != 1 {
                    return Err(syntax(tokens[1].0, "'U' takes no arguments".into()));
                }
                saw_u = true;
            }
            other => return Err(syntax(c0, format!("unknown line type '{other}'"))),
        }
        content_lines += 1;
    }
    if saw_u && content_lines != 1 {
        return Err(ParseError::Syntax { line: 0, column: 0, message: "'U' must be the only content line".into() });
    }
    if content_lines == 0 {
        return Err(ParseError::Syntax { line: 0, column: 0, message: "empty diagram".into() });
    }
    let (kind, name) = match declared {
        Some((k, n)) => (k, n),
        None => (if vertices.is_empty() { DiagramKind::Knot } else { DiagramKind::Theta }, None),
    };
    if saw_u && kind != DiagramKind::Knot {
        return Err(ParseError::Invalid(ValidationReport {
            violations: vec!["'U' marker is only valid for knot kind".into()],
        }));
    }
    let mut d = Diagram {
        kind,
        name,
        crossings: crossings.into_iter().map(Crossing::new).collect(),
        vertices: vertices.into_iter().map(|arcs| Vertex3 { arcs }).collect(),
    };
    let report = d.validate();
    if !report.is_valid() {
        return Err(ParseError::Invalid(report));
    }
    if d.kind == DiagramKind::Knot {
        d.orient_crossings();
    }
    Ok(d)
}

impl Diagram {
    /// Rotates every crossing of a knot diagram so slot 0 is where the under
    /// strand enters, and records the crossing sign.
    pub fn orient_crossings(&mut self) {
        if self.kind != DiagramKind::Knot || self.crossings.is_empty() {
            return;
        }
        let trav = self.knot_traversal();
        let signs = self.crossing_signs();
        for &(c, s) in &trav {
            if s == 2 {
                let r = self.crossings[c].rotated(2);
                self.crossings[c].slots = r;
            }
        }
        for (c, s) in self.crossings.iter_mut().zip(signs) {
            c.sign_hint = Some(s);
        }
    }
}

pub fn write_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    if let Some(name) = &d.name {
        let k = if d.kind == DiagramKind::Knot { "K" } else { "T" };
        let _ = writeln!(out, "{k} {name}");
    }
    let mut oriented = d.clone();
    oriented.orient_crossings();
    if oriented.is_zero_crossing_unknot() {
        out.push_str("U\n");
        return out;
    }
    for c in &oriented.crossings {
        let [a, b, cc, dd] = c.slots;
        let _ = writeln!(out, "X {a} {b} {cc} {dd}");
    }
    for v in &oriented.vertices {
        let [a, b, c] = v.arcs;
        let _ = writeln!(out, "V {a} {b} {c}");
    }
    out
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_diagram(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        parse_diagram("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").unwrap()
    }

    #[test]
    fn parses_trivial_theta() {
        let d = parse_diagram("V 1 2 3\nV 1 2 3").unwrap();
        assert_eq!(d.kind, DiagramKind::Theta);
        assert_eq!(d.crossing_count(), 0);
        let p = d.trace_edges().unwrap();
        assert_eq!(p.edges, [vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn parses_single_kink() {
        let d = parse_diagram("X 1 2 2 1").unwrap();
        assert_eq!(d.kind, DiagramKind::Knot);
        assert_eq!(d.crossing_count(), 1);
    }

    #[test]
    fn syntax_errors_report_position() {
        let e = parse_diagram("X 1 2 2\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, column: 1, .. }));
        let e = parse_diagram("K k\nX 1 2 q 1").unwrap_err();
        assert_eq!(e, ParseError::Syntax { line: 2, column: 7, message: "expected positive arc label, found 'q'".into() });
        assert!(matches!(parse_diagram("garbage"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn validation_messages() {
        let d = Diagram::knot(vec![[1, 2, 3, 7], [2, 1, 3, 4]]);
        assert!(d.validate().violations.contains(&"arc 7 multiplicity 1".to_string()));
        let t = Diagram::theta(vec![], vec![[1, 2, 3], [1, 2, 3], [4, 5, 6]]);
        assert!(t.validate().violations.contains(&"theta kind requires exactly 2 vertices".to_string()));
        assert!(parse_diagram("V 1 2 3\nV 1 2 3").unwrap().validate().is_valid());
    }

    #[test]
    fn closed_loop_in_theta_is_an_error() {
        // arcs 4,5 form a loop crossing nothing but themselves
        let t = Diagram::theta(vec![[4, 5, 5, 4]], vec![[1, 2, 3], [3, 2, 1]]);
        assert!(matches!(t.trace_edges(), Err(DiagramError::ClosedLoop(_))));
    }

    #[test]
    fn write_unknot_marker() {
        assert_eq!(write_diagram(&Diagram::unknot()), "U\n");
        assert_eq!(parse_diagram("U").unwrap(), Diagram::unknot());
        assert!(parse_diagram("U\nX 1 2 2 1").is_err());
    }

    #[test]
    fn write_trefoil_three_lines() {
        let s = write_diagram(&trefoil());
        assert_eq!(s.lines().filter(|l| l.starts_with('X')).count(), 3);
        assert_eq!(parse_diagram(&s).unwrap(), trefoil());
    }

    #[test]
    fn mirror_involution() {
        let t = trefoil();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(Diagram::unknot().mirror(), Diagram::unknot());
        assert_eq!(t.writhe(), -t.mirror().writhe());
    }

    #[test]
    fn constituents_of_trivial_theta() {
        let t = parse_diagram("V 1 2 3\nV 3 2 1").unwrap();
        for i in 0..3 {
            let k = t.constituent(i).unwrap();
            assert!(k.is_zero_crossing_unknot());
        }
    }

    #[test]
    fn connected_sum_adds_crossings() {
        let t = trefoil();
        let s = connected_sum(&t, 1, &t.mirror(), 2).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert!(s.validate().is_valid());
        assert_eq!(connected_sum(&Diagram::unknot(), 1, &t, 1).unwrap().crossing_count(), 3);
        assert_eq!(connected_sum(&t, 99, &t, 1), Err(DiagramError::MissingArc(99)));
    }
}
