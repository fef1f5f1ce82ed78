//! Reidemeister moves and the vertex moves for trivalent graph diagrams, plus
//! bounded search: simplification, unknot verdicts and equivalence witnesses.
//!
//! Every move is a local rewrite of the planar map. Search states are kept in
//! canonical form, and a move site names arcs of the canonical labelling of the
//! diagram it is applied to.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical, digest};
use crate::diagram::{ArcLabel, Diagram, DiagramKind};
use crate::invariants;
use crate::planar::{Dart, Node, NodeKind, PlanarMap};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
    /// Strand slides across a vertex, one crossing becomes two.
    R4Plus,
    R4Minus,
    /// Half twist at a vertex.
    R5Plus,
    R5Minus,
}

impl MoveKind {
    pub fn crossing_change(self) -> isize {
        match self {
            MoveKind::R1Plus | MoveKind::R4Plus | MoveKind::R5Plus => 1,
            MoveKind::R2Plus => 2,
            MoveKind::R3 => 0,
            MoveKind::R1Minus | MoveKind::R4Minus | MoveKind::R5Minus => -1,
            MoveKind::R2Minus => -2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
            MoveKind::R4Plus => "R4+",
            MoveKind::R4Minus => "R4-",
            MoveKind::R5Plus => "R5+",
            MoveKind::R5Minus => "R5-",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = TraceError;
    fn from_str(s: &str) -> Result<Self, TraceError> {
        use MoveKind::*;
        [R1Plus, R1Minus, R2Plus, R2Minus, R3, R4Plus, R4Minus, R5Plus, R5Minus]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| TraceError::Syntax(format!("unknown move kind '{s}'")))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    pub site: Vec<ArcLabel>,
    /// Distinguishes the local variants at one site (kink side, which strand on top, ...).
    pub variant: u8,
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @", self.kind)?;
        for a in &self.site {
            write!(f, " {a}")?;
        }
        if self.variant != 0 {
            write!(f, " : {}", self.variant)?;
        }
        Ok(())
    }
}

impl FromStr for MoveDescriptor {
    type Err = TraceError;
    fn from_str(line: &str) -> Result<Self, TraceError> {
        let (kind, rest) = line
            .split_once('@')
            .ok_or_else(|| TraceError::Syntax(format!("missing '@' in '{line}'")))?;
        let kind: MoveKind = kind.trim().parse()?;
        let (sites, variant) = match rest.split_once(':') {
            Some((s, v)) => (s, v.trim().parse::<u8>().map_err(|_| TraceError::Syntax(format!("bad variant in '{line}'")))?),
            None => (rest, 0),
        };
        let site = sites
            .split_whitespace()
            .map(|t| t.parse::<ArcLabel>().map_err(|_| TraceError::Syntax(format!("bad arc label '{t}'"))))
            .collect::<Result<_, _>>()?;
        Ok(MoveDescriptor { kind, site, variant })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("trace syntax error: {0}")]
    Syntax(String),
    #[error("step {index} ({step}) does not apply")]
    InapplicableStep { index: usize, step: String },
    #[error("replay ended at {found}, trace claims {expected}")]
    EndMismatch { expected: String, found: String },
    #[error("start diagram digest {found} does not match trace start {expected}")]
    StartMismatch { expected: String, found: String },
}

/// Replayable witness that two diagrams are related by moves.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MoveSequence {
    pub steps: Vec<MoveDescriptor>,
    pub start_hash: String,
    pub end_hash: String,
}

impl MoveSequence {
    pub fn empty(d: &Diagram) -> Self {
        let h = digest(d);
        Self { steps: vec![], start_hash: h.clone(), end_hash: h }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step to the canonical form of `start`; checks both digests.
    pub fn replay(&self, start: &Diagram) -> Result<Diagram, TraceError> {
        let found = digest(start);
        if found != self.start_hash {
            return Err(TraceError::StartMismatch { expected: self.start_hash.clone(), found });
        }
        let mut cur = canonical(start).1;
        for (index, step) in self.steps.iter().enumerate() {
            cur = apply_move(&cur, step)
                .map(|d| canonical(&d).1)
                .ok_or_else(|| TraceError::InapplicableStep { index, step: step.to_string() })?;
        }
        let end = digest(&cur);
        if end != self.end_hash {
            return Err(TraceError::EndMismatch { expected: self.end_hash.clone(), found: end });
        }
        Ok(cur)
    }

    pub fn to_trace(&self) -> String {
        let mut s = format!("# start {}\n# end {}\n", self.start_hash, self.end_hash);
        for step in &self.steps {
            s.push_str(&step.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_trace(text: &str) -> Result<Self, TraceError> {
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                match (it.next(), it.next()) {
                    (Some("start"), Some(h)) => start = Some(h.to_string()),
                    (Some("end"), Some(h)) => end = Some(h.to_string()),
                    _ => {}
                }
                continue;
            }
            steps.push(line.parse()?);
        }
        Ok(Self {
            steps,
            start_hash: start.ok_or_else(|| TraceError::Syntax("missing '# start' line".into()))?,
            end_hash: end.ok_or_else(|| TraceError::Syntax("missing '# end' line".into()))?,
        })
    }

    fn concat(mut self, other: MoveSequence) -> MoveSequence {
        self.steps.extend(other.steps);
        self.end_hash = other.end_hash;
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_states: usize,
    /// States with more crossings than this are not expanded.
    pub max_crossings: usize,
    pub max_depth: usize,
}

impl SearchBudget {
    pub const DEFAULT_MAX_STATES: usize = 500_000;
    pub const DEFAULT_MAX_DEPTH: usize = 24;
    pub const DEFAULT_EXTRA_CROSSINGS: usize = 2;

    /// Defaults for a diagram with `crossings` crossings.
    pub fn for_crossings(crossings: usize) -> Self {
        Self {
            max_states: Self::DEFAULT_MAX_STATES,
            max_crossings: (crossings + Self::DEFAULT_EXTRA_CROSSINGS).max(1),
            max_depth: Self::DEFAULT_MAX_DEPTH,
        }
    }

    pub fn for_diagram(d: &Diagram) -> Self {
        Self::for_crossings(d.crossing_count())
    }

    pub fn is_valid(&self) -> bool {
        self.max_states >= 1 && self.max_crossings >= 1 && self.max_depth >= 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UnknotVerdict {
    Unknot(MoveSequence),
    Knotted { invariant: String, value: u64 },
    Unknown,
}

impl UnknotVerdict {
    pub fn is_unknot(&self) -> bool {
        matches!(self, UnknotVerdict::Unknot(_))
    }
    pub fn is_knotted(&self) -> bool {
        matches!(self, UnknotVerdict::Knotted { .. })
    }
    pub fn obstruction(&self) -> Option<String> {
        match self {
            UnknotVerdict::Knotted { invariant, value } => Some(describe_obstruction(invariant, *value)),
            _ => None,
        }
    }
}

pub fn describe_obstruction(invariant: &str, value: u64) -> String {
    match invariant {
        "3-colorings" => format!("3-colorings = {value} > 3"),
        "5-colorings" => format!("5-colorings = {value} > 5"),
        _ => format!("{invariant} = {value}"),
    }
}

impl fmt::Display for UnknotVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknotVerdict::Unknot(w) => write!(f, "Unknot ({} moves)", w.len()),
            UnknotVerdict::Knotted { .. } => write!(f, "Knotted ({})", self.obstruction().unwrap()),
            UnknotVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

// ---------------------------------------------------------------------------
// local rewrites

fn slot(node: &Node, i: isize) -> ArcLabel {
    let d = node.arcs.len() as isize;
    node.arcs[i.rem_euclid(d) as usize]
}

fn rotate1(v: [ArcLabel; 4]) -> Vec<ArcLabel> {
    vec![v[1], v[2], v[3], v[0]]
}

fn crossing(v: Vec<ArcLabel>) -> Node {
    Node { kind: NodeKind::Crossing, arcs: v }
}

fn bivalent(a: ArcLabel, b: ArcLabel) -> Node {
    Node { kind: NodeKind::Bivalent, arcs: vec![a, b] }
}

fn dart_dir(occ: &std::collections::BTreeMap<ArcLabel, Vec<Dart>>, label: ArcLabel, d: Dart) -> u8 {
    if occ[&label][0] == d {
        0
    } else {
        1
    }
}

fn finish(map: PlanarMap, kind: DiagramKind) -> Option<Diagram> {
    let d = map.into_diagram(kind);
    if d.kind == DiagramKind::Theta && d.vertices.iter().any(|v| {
        let [a, b, c] = v.arcs;
        a == b || b == c || a == c
    }) {
        return None;
    }
    Some(d)
}

struct Enumerator<'a> {
    d: &'a Diagram,
    map: PlanarMap,
    out: Vec<(MoveDescriptor, Diagram)>,
}

impl<'a> Enumerator<'a> {
    fn push(&mut self, kind: MoveKind, site: Vec<ArcLabel>, variant: u8, map: PlanarMap) {
        if let Some(r) = finish(map, self.d.kind) {
            self.out.push((MoveDescriptor { kind, site, variant }, r));
        }
    }

    fn r1_minus(&mut self) {
        for (n, node) in self.map.nodes.clone().iter().enumerate() {
            if node.kind != NodeKind::Crossing {
                continue;
            }
            for k in 0..4isize {
                if slot(node, k) != slot(node, k + 1) {
                    continue;
                }
                let (y, z) = (slot(node, k + 2), slot(node, k + 3));
                let mut m = self.map.clone();
                m.nodes[n] = bivalent(y, z);
                let l = slot(node, k);
                self.push(MoveKind::R1Minus, vec![l], 0, m);
            }
        }
    }

    fn r1_plus(&mut self) {
        let occ = self.map.occurrences();
        for (&x, v) in &occ {
            for variant in 0..4u8 {
                let mut m = self.map.clone();
                let (_, far) = m.subdivide(v[0]);
                let b = m.nodes[far.0].arcs[1];
                let l = m.fresh();
                let arcs = match variant {
                    0 => vec![x, l, l, b],
                    1 => vec![x, b, l, l],
                    2 => vec![l, l, b, x],
                    _ => vec![b, l, l, x],
                };
                m.nodes[far.0] = crossing(arcs);
                self.push(MoveKind::R1Plus, vec![x], variant, m);
            }
        }
    }

    fn r2_minus(&mut self) {
        let occ = self.map.occurrences();
        for face in self.map.faces() {
            if face.len() != 2 {
                continue;
            }
            let (d0, d1) = (face[0], face[1]);
            let (n1, s1) = d0;
            let (n2, t1) = d1;
            if n1 == n2
                || self.map.nodes[n1].kind != NodeKind::Crossing
                || self.map.nodes[n2].kind != NodeKind::Crossing
            {
                continue;
            }
            // p arrives at n2 in the slot just after the one q leaves from
            let t = (t1 + 1) % 4;
            if s1 % 2 != t % 2 {
                continue;
            }
            let (a, b) = (&self.map.nodes[n1], &self.map.nodes[n2]);
            let p = slot(a, s1 as isize);
            let q = slot(b, t1 as isize);
            let _ = &occ;
            let mut m = self.map.clone();
            let n1_nodes = (bivalent(slot(a, s1 as isize + 2), p), bivalent(slot(a, s1 as isize + 3), q));
            let n2_nodes = (bivalent(slot(b, t as isize + 2), p), bivalent(slot(b, t as isize + 1), q));
            m.nodes[n1] = n1_nodes.0;
            m.nodes[n2] = n2_nodes.0;
            m.nodes.push(n1_nodes.1);
            m.nodes.push(n2_nodes.1);
            self.push(MoveKind::R2Minus, vec![p, q], 0, m);
        }
    }

    fn r2_plus(&mut self) {
        let occ = self.map.occurrences();
        let faces = self.map.faces();
        for face in &faces {
            for i in 0..face.len() {
                for j in i..face.len() {
                    let (dx, dy) = (face[i], face[j]);
                    let lx = self.map.nodes[dx.0].arcs[dx.1];
                    let ly = self.map.nodes[dy.0].arcs[dy.1];
                    for over in 0..2u8 {
                        let mut m = self.map.clone();
                        let (xd, yd) = if i == j {
                            let (near, far) = m.subdivide(dx);
                            (near, far)
                        } else if lx == ly {
                            let (near, _) = m.subdivide(dx);
                            (near, dy)
                        } else {
                            (dx, dy)
                        };
                        let o = m.occurrences();
                        let tx = m.head(&o, xd);
                        let ty = m.head(&o, yd);
                        let x1 = m.nodes[xd.0].arcs[xd.1];
                        let y1 = m.nodes[yd.0].arcs[yd.1];
                        let (x2, y2, xm, ym) = (m.fresh(), m.fresh(), m.fresh(), m.fresh());
                        m.nodes[tx.0].arcs[tx.1] = x2;
                        m.nodes[ty.0].arcs[ty.1] = y2;
                        let (c1, c2) = if over == 1 {
                            (vec![ym, xm, y2, x1], vec![y1, xm, ym, x2])
                        } else {
                            (vec![x1, ym, xm, y2], vec![xm, ym, x2, y1])
                        };
                        m.nodes.push(crossing(c1));
                        m.nodes.push(crossing(c2));
                        let variant = over + 2 * dart_dir(&occ, lx, dx) + 4 * dart_dir(&occ, ly, dy);
                        self.push(MoveKind::R2Plus, vec![lx, ly], variant, m);
                    }
                }
            }
        }
    }

    fn r3(&mut self) {
        for face in self.map.faces() {
            if face.len() != 3 {
                continue;
            }
            let nodes = [face[0].0, face[1].0, face[2].0];
            if nodes.iter().any(|&n| self.map.nodes[n].kind != NodeKind::Crossing)
                || nodes[0] == nodes[1]
                || nodes[1] == nodes[2]
                || nodes[0] == nodes[2]
            {
                continue;
            }
            for i in 0..3 {
                let (c2, a) = face[i];
                let (c1, r_start) = face[(i + 1) % 3];
                let (c3, qs) = face[(i + 2) % 3];
                let b = (r_start + 1) % 4;
                if a % 2 != b % 2 {
                    continue;
                }
                let (n1, n2, n3) = (&self.map.nodes[c1], &self.map.nodes[c2], &self.map.nodes[c3]);
                let (b, a, qs) = (b as isize, a as isize, qs as isize);
                let o_r1 = slot(n1, b + 1);
                let o_p1 = slot(n1, b + 2);
                let o_p2 = slot(n2, a + 2);
                let o_q2 = slot(n2, a + 3);
                let o_q3 = slot(n3, qs + 2);
                let o_r3 = slot(n3, qs + 3);
                let site = vec![slot(n2, a), slot(n1, b - 1), slot(n3, qs)];
                let p_under_c2 = a % 2 == 0;
                let p_under_c1 = b % 2 == 0;
                let q_under_c3 = qs % 2 == 0;
                let mut m = self.map.clone();
                let (pn, qn, rn) = (m.fresh(), m.fresh(), m.fresh());
                let orient = |base: [ArcLabel; 4], keep: bool| if keep { base.to_vec() } else { rotate1(base) };
                m.nodes[c2] = crossing(orient([pn, qn, o_p1, o_q3], p_under_c2));
                m.nodes[c1] = crossing(orient([o_p2, rn, pn, o_r3], p_under_c1));
                m.nodes[c3] = crossing(orient([o_q2, o_r1, qn, rn], q_under_c3));
                self.push(MoveKind::R3, site, 0, m);
            }
        }
    }

    fn r4_plus(&mut self) {
        let occ = self.map.occurrences();
        for (c, node) in self.map.nodes.clone().iter().enumerate() {
            if node.kind != NodeKind::Crossing {
                continue;
            }
            for i in 0..4usize {
                let e_in = node.arcs[i];
                let far = PlanarMap::other_end(&occ, e_in, (c, i));
                if self.map.nodes[far.0].kind != NodeKind::Vertex {
                    continue;
                }
                let (v, j) = far;
                let vx = &self.map.nodes[v];
                let s_over = i % 2 == 0;
                let ii = i as isize;
                let (s_lo, e_out, s_hi) = (slot(node, ii + 1), slot(node, ii + 2), slot(node, ii + 3));
                let (f, g) = (slot(vx, j as isize + 1), slot(vx, j as isize + 2));
                let mut m = self.map.clone();
                let (f_in, g_in, s_mid) = (m.fresh(), m.fresh(), m.fresh());
                m.nodes[v] = Node { kind: NodeKind::Vertex, arcs: vec![e_out, f_in, g_in] };
                let cf = [s_hi, f, s_mid, f_in];
                let cg = [g_in, s_mid, g, s_lo];
                m.nodes[c] = crossing(if s_over { rotate1(cf) } else { cf.to_vec() });
                m.nodes.push(crossing(if s_over { cg.to_vec() } else { rotate1(cg) }));
                self.push(MoveKind::R4Plus, vec![e_in], 0, m);
            }
        }
    }

    fn r4_minus(&mut self) {
        let occ = self.map.occurrences();
        for (v, vx) in self.map.nodes.clone().iter().enumerate() {
            if vx.kind != NodeKind::Vertex {
                continue;
            }
            for j in 0..3isize {
                let e = slot(vx, j);
                let (f_in, g_in) = (slot(vx, j + 1), slot(vx, j + 2));
                let (cf, a) = PlanarMap::other_end(&occ, f_in, (v, ((j + 1) % 3) as usize));
                let (cg, b) = PlanarMap::other_end(&occ, g_in, (v, ((j + 2) % 3) as usize));
                if cf == cg
                    || self.map.nodes[cf].kind != NodeKind::Crossing
                    || self.map.nodes[cg].kind != NodeKind::Crossing
                {
                    continue;
                }
                let (nf, ng) = (&self.map.nodes[cf], &self.map.nodes[cg]);
                let (a, b) = (a as isize, b as isize);
                let s_mid = slot(nf, a - 1);
                if slot(ng, b + 1) != s_mid {
                    continue;
                }
                let mid_occ = &occ[&s_mid];
                let want = [(cf, (a - 1).rem_euclid(4) as usize), (cg, ((b + 1) % 4) as usize)];
                if !(mid_occ.contains(&want[0]) && mid_occ.contains(&want[1])) {
                    continue;
                }
                // strand level must agree at both crossings
                if (a + 1) % 2 != (b + 1) % 2 {
                    continue;
                }
                let s_over = (a + 1) % 2 == 1;
                let (s_hi, f_out) = (slot(nf, a + 1), slot(nf, a + 2));
                let (g_out, s_lo) = (slot(ng, b + 2), slot(ng, b + 3));
                let mut m = self.map.clone();
                let e_in = m.fresh();
                m.nodes[v] = Node { kind: NodeKind::Vertex, arcs: vec![e_in, f_out, g_out] };
                let base = [e, s_hi, e_in, s_lo];
                m.nodes[cf] = crossing(if s_over { base.to_vec() } else { rotate1(base) });
                m.nodes[cg] = Node { kind: NodeKind::Bivalent, arcs: vec![] };
                m.nodes.retain(|n| !(n.kind == NodeKind::Bivalent && n.arcs.is_empty()));
                self.push(MoveKind::R4Minus, vec![f_in, g_in], 0, m);
            }
        }
    }

    fn r5_plus(&mut self) {
        for (v, vx) in self.map.nodes.clone().iter().enumerate() {
            if vx.kind != NodeKind::Vertex {
                continue;
            }
            for j in 0..3isize {
                let (e, f, g) = (slot(vx, j), slot(vx, j + 1), slot(vx, j + 2));
                for variant in 0..2u8 {
                    let mut m = self.map.clone();
                    let (fp, gp) = (m.fresh(), m.fresh());
                    m.nodes[v] = Node { kind: NodeKind::Vertex, arcs: vec![e, gp, fp] };
                    let base = [f, g, fp, gp];
                    // variant 0: f passes under
                    m.nodes.push(crossing(if variant == 0 { base.to_vec() } else { rotate1(base) }));
                    self.push(MoveKind::R5Plus, vec![f, g], variant, m);
                }
            }
        }
    }

    fn r5_minus(&mut self) {
        let occ = self.map.occurrences();
        for (v, vx) in self.map.nodes.clone().iter().enumerate() {
            if vx.kind != NodeKind::Vertex {
                continue;
            }
            for j in 0..3isize {
                let (e, x, y) = (slot(vx, j), slot(vx, j + 1), slot(vx, j + 2));
                let (cx, k) = PlanarMap::other_end(&occ, x, (v, ((j + 1) % 3) as usize));
                let (cy, ky) = PlanarMap::other_end(&occ, y, (v, ((j + 2) % 3) as usize));
                if cx != cy || self.map.nodes[cx].kind != NodeKind::Crossing || (k + 3) % 4 != ky {
                    continue;
                }
                let c = &self.map.nodes[cx];
                let (f_out, g_out) = (slot(c, k as isize + 1), slot(c, k as isize + 2));
                let mut m = self.map.clone();
                m.nodes[v] = Node { kind: NodeKind::Vertex, arcs: vec![e, f_out, g_out] };
                m.nodes.remove(cx);
                self.push(MoveKind::R5Minus, vec![x, y], 0, m);
            }
        }
    }
}

/// Every single-move neighbour whose crossing count stays within `max_crossings`.
pub fn enumerate_moves(d: &Diagram, max_crossings: usize) -> Vec<(MoveDescriptor, Diagram)> {
    let n = d.crossing_count();
    let mut e = Enumerator { d, map: PlanarMap::from_diagram(d), out: Vec::new() };
    e.r1_minus();
    e.r2_minus();
    e.r3();
    if !d.vertices.is_empty() {
        e.r4_minus();
        e.r5_minus();
    }
    if n < max_crossings {
        e.r1_plus();
        if !d.vertices.is_empty() {
            e.r4_plus();
            e.r5_plus();
        }
    }
    if n + 2 <= max_crossings {
        e.r2_plus();
    }
    e.out
}

/// Applies one described move, if it exists in `d`.
pub fn apply_move(d: &Diagram, m: &MoveDescriptor) -> Option<Diagram> {
    let limit = (d.crossing_count() as isize + m.kind.crossing_change()).max(0) as usize;
    enumerate_moves(d, limit).into_iter().find(|(desc, _)| desc == m).map(|(_, r)| r)
}

// ---------------------------------------------------------------------------
// search

type Code = Vec<u32>;

struct SearchNode {
    diagram: Diagram,
    parent: Option<(usize, MoveDescriptor)>,
    depth: usize,
}

/// Shared state budget across the phases of one search.
struct Counter {
    left: usize,
}

/// Neighbours in canonical form, ordered by canonical code for determinism.
fn canonical_neighbours(d: &Diagram, limit: usize) -> Vec<(MoveDescriptor, Code, Diagram)> {
    let mut v: Vec<_> = enumerate_moves(d, limit)
        .into_iter()
        .map(|(m, r)| {
            let (code, c) = canonical(&r);
            (m, code, c)
        })
        .collect();
    v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    v
}

fn path_to(nodes: &[SearchNode], mut i: usize) -> Vec<MoveDescriptor> {
    let mut steps = Vec::new();
    while let Some((p, m)) = &nodes[i].parent {
        steps.push(m.clone());
        i = *p;
    }
    steps.reverse();
    steps
}

/// Breadth-first search from canonical `start` for a diagram with fewer crossings.
fn bfs_reduce(start: &Diagram, limit: usize, budget: &SearchBudget, counter: &mut Counter) -> Option<(Vec<MoveDescriptor>, Diagram)> {
    let target = start.crossing_count();
    let mut seen: HashMap<Code, ()> = HashMap::new();
    let mut nodes = vec![SearchNode { diagram: start.clone(), parent: None, depth: 0 }];
    seen.insert(canonical(start).0, ());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if nodes[i].depth >= budget.max_depth {
            continue;
        }
        let depth = nodes[i].depth;
        for (m, code, c) in canonical_neighbours(&nodes[i].diagram, limit) {
            if seen.contains_key(&code) {
                continue;
            }
            if counter.left == 0 {
                return None;
            }
            counter.left -= 1;
            seen.insert(code, ());
            let reduced = c.crossing_count() < target;
            nodes.push(SearchNode { diagram: c, parent: Some((i, m)), depth: depth + 1 });
            let j = nodes.len() - 1;
            if reduced {
                return Some((path_to(&nodes, j), nodes[j].diagram.clone()));
            }
            queue.push_back(j);
        }
    }
    None
}

/// Greedy crossing reduction with breadth-first escapes from local minima.
pub fn simplify(d: &Diagram, budget: &SearchBudget) -> (Diagram, MoveSequence) {
    let start_hash = digest(d);
    let mut cur = canonical(d).1;
    let mut steps = Vec::new();
    let mut counter = Counter { left: budget.max_states };
    loop {
        if cur.crossing_count() == 0 {
            break;
        }
        let n = cur.crossing_count();
        let best = canonical_neighbours(&cur, n)
            .into_iter()
            .filter(|(_, _, c)| c.crossing_count() < n)
            .min_by(|a, b| a.2.crossing_count().cmp(&b.2.crossing_count()).then_with(|| a.1.cmp(&b.1)));
        if let Some((m, _, c)) = best {
            steps.push(m);
            cur = c;
            continue;
        }
        let mut found = None;
        for limit in n..=budget.max_crossings.max(n) {
            if let Some(r) = bfs_reduce(&cur, limit, budget, &mut counter) {
                found = Some(r);
                break;
            }
            if counter.left == 0 {
                break;
            }
        }
        match found {
            Some((path, c)) => {
                steps.extend(path);
                cur = c;
            }
            None => break,
        }
    }
    let end_hash = digest(&cur);
    (cur, MoveSequence { steps, start_hash, end_hash })
}

/// Unknot if simplification reaches zero crossings; knotted if a cheap
/// obstruction differs from the unknot's value.
pub fn unknot_status(k: &Diagram, budget: &SearchBudget) -> UnknotVerdict {
    if k.kind != DiagramKind::Knot {
        return UnknotVerdict::Unknown;
    }
    // an obstruction rules out reaching zero crossings, so check it first
    if let Some(v) = knot_obstruction(k) {
        return v;
    }
    let (end, witness) = simplify(k, budget);
    if end.crossing_count() == 0 {
        return UnknotVerdict::Unknot(witness);
    }
    UnknotVerdict::Unknown
}

fn knot_obstruction(k: &Diagram) -> Option<UnknotVerdict> {
    let c3 = invariants::colorings(k, 3).ok()?;
    if c3 > 3 {
        return Some(UnknotVerdict::Knotted { invariant: "3-colorings".into(), value: c3 });
    }
    let det = invariants::determinant(k).ok()?;
    if det != 1 {
        return Some(UnknotVerdict::Knotted { invariant: "determinant".into(), value: det });
    }
    let c5 = invariants::colorings(k, 5).ok()?;
    if c5 > 5 {
        return Some(UnknotVerdict::Knotted { invariant: "5-colorings".into(), value: c5 });
    }
    None
}

/// Inverse of a replayable sequence.
pub fn invert(seq: &MoveSequence, start: &Diagram) -> Option<MoveSequence> {
    let mut states = vec![canonical(start).1];
    for step in &seq.steps {
        let next = canonical(&apply_move(states.last().unwrap(), step)?).1;
        states.push(next);
    }
    let mut steps = Vec::new();
    for w in states.windows(2).rev() {
        let (prev, next) = (&w[0], &w[1]);
        let target = canonical(prev).0;
        let limit = prev.crossing_count().max(next.crossing_count());
        let inv = canonical_neighbours(next, limit).into_iter().find(|(_, code, _)| *code == target)?;
        steps.push(inv.0);
    }
    Some(MoveSequence { steps, start_hash: seq.end_hash.clone(), end_hash: seq.start_hash.clone() })
}

struct Side {
    nodes: Vec<SearchNode>,
    index: HashMap<Code, usize>,
    frontier: VecDeque<usize>,
}

impl Side {
    fn new(d: &Diagram) -> Self {
        let (code, c) = canonical(d);
        Self {
            nodes: vec![SearchNode { diagram: c, parent: None, depth: 0 }],
            index: HashMap::from([(code, 0)]),
            frontier: VecDeque::from([0]),
        }
    }

    fn sequence_to(&self, i: usize) -> (Vec<MoveDescriptor>, &Diagram) {
        (path_to(&self.nodes, i), &self.nodes[i].diagram)
    }
}

/// Meets two breadth-first searches; returns a witness `a -> ... -> b`.
fn bidirectional(a: &Diagram, b: &Diagram, budget: &SearchBudget, counter: &mut Counter) -> Option<MoveSequence> {
    let limit = budget.max_crossings.max(a.crossing_count()).max(b.crossing_count());
    let mut sides = [Side::new(a), Side::new(b)];
    let meet = |sides: &[Side; 2], code: &Code, from: usize| sides[1 - from].index.get(code).copied();
    if let Some(&j) = sides[1].index.get(&canonical(a).0) {
        let _ = j;
        return Some(MoveSequence::empty(a));
    }
    let mut turn = 0usize;
    loop {
        if sides[0].frontier.is_empty() && sides[1].frontier.is_empty() {
            return None;
        }
        // expand the smaller non-empty frontier one full level
        turn = if sides[turn].frontier.is_empty() { 1 - turn } else { turn };
        let s = turn;
        let level: Vec<usize> = sides[s].frontier.drain(..).collect();
        for i in level {
            if sides[s].nodes[i].depth >= budget.max_depth {
                continue;
            }
            let depth = sides[s].nodes[i].depth;
            for (m, code, c) in canonical_neighbours(&sides[s].nodes[i].diagram, limit) {
                if sides[s].index.contains_key(&code) {
                    continue;
                }
                if counter.left == 0 {
                    return None;
                }
                counter.left -= 1;
                sides[s].nodes.push(SearchNode { diagram: c, parent: Some((i, m)), depth: depth + 1 });
                let j = sides[s].nodes.len() - 1;
                sides[s].index.insert(code.clone(), j);
                if let Some(k) = meet(&sides, &code, s) {
                    let (ia, ib) = if s == 0 { (j, k) } else { (k, j) };
                    let (fwd, mid) = sides[0].sequence_to(ia);
                    let (back, _) = sides[1].sequence_to(ib);
                    let first = MoveSequence { steps: fwd, start_hash: digest(a), end_hash: digest(mid) };
                    let tail = MoveSequence { steps: back, start_hash: digest(b), end_hash: digest(mid) };
                    let tail_inv = invert(&tail, b)?;
                    return Some(first.concat(tail_inv));
                }
                sides[s].frontier.push_back(j);
            }
        }
        if sides[1 - s].frontier.len() <= sides[s].frontier.len() || sides[s].frontier.is_empty() {
            turn = 1 - s;
        }
    }
}

/// Searches for a move sequence `d1 -> d2`. `None` is inconclusive.
pub fn equivalent(d1: &Diagram, d2: &Diagram, budget: &SearchBudget) -> Option<MoveSequence> {
    if d1.kind != d2.kind {
        return None;
    }
    if canonical(d1).0 == canonical(d2).0 {
        return Some(MoveSequence::empty(d1));
    }
    let half = SearchBudget { max_states: budget.max_states / 4, ..*budget };
    let (s1, w1) = simplify(d1, &half);
    let (s2, w2) = simplify(d2, &half);
    let mut counter = Counter { left: budget.max_states / 2 };
    let mid = bidirectional(&s1, &s2, budget, &mut counter)?;
    let w2_inv = invert(&w2, d2)?;
    Some(w1.concat(mid).concat(w2_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::invariants::{alexander, jones, yamada};

    fn trefoil() -> Diagram {
        parse_diagram("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").unwrap()
    }

    fn planar_ok(d: &Diagram) -> bool {
        let m = PlanarMap::from_diagram(d);
        let v = m.nodes.len() as i64;
        let e = m.occurrences().len() as i64;
        v - e + m.faces().len() as i64 == 2
    }

    #[test]
    fn unknot_neighbours_are_additions() {
        let moves = enumerate_moves(&Diagram::unknot(), 3);
        assert!(!moves.is_empty());
        assert!(moves.iter().all(|(m, _)| matches!(m.kind, MoveKind::R1Plus | MoveKind::R2Plus)));
        for (_, d) in &moves {
            assert!(d.validate().is_valid());
            assert!(planar_ok(d));
            assert_eq!(jones(d).unwrap().poly, jones(&Diagram::unknot()).unwrap().poly);
        }
    }

    #[test]
    fn kink_reduces() {
        let k = parse_diagram("X 1 2 2 1").unwrap();
        let moves = enumerate_moves(&k, 1);
        assert!(moves.iter().any(|(m, d)| m.kind == MoveKind::R1Minus && d.is_zero_crossing_unknot()));
        let (end, w) = simplify(&k, &SearchBudget::for_diagram(&k));
        assert!(end.is_zero_crossing_unknot());
        assert_eq!(w.len(), 1);
        assert_eq!(w.replay(&k).unwrap(), end);
    }

    #[test]
    fn paired_moves_invert() {
        let t = parse_diagram("V 1 2 3\nV 3 2 1").unwrap();
        for (m, d) in enumerate_moves(&t, 2).into_iter().filter(|(m, _)| m.kind == MoveKind::R2Plus) {
            let back = enumerate_moves(&d, 2);
            assert!(
                back.iter().any(|(b, r)| b.kind == MoveKind::R2Minus && canonical(r).0 == canonical(&t).0),
                "no inverse for {m}"
            );
        }
    }

    #[test]
    fn moves_preserve_validity_and_planarity() {
        let t = trefoil();
        for (m, d) in enumerate_moves(&t, 5) {
            assert!(d.validate().is_valid(), "{m} broke {d}");
            assert!(planar_ok(&d), "{m} nonplanar");
            assert_eq!(alexander(&d).unwrap(), alexander(&t).unwrap(), "{m}");
            assert_eq!(jones(&d).unwrap(), jones(&t).unwrap(), "{m}");
        }
        let th = parse_diagram("V 1 2 3\nV 3 2 1").unwrap();
        let y0 = yamada(&th).unwrap();
        for (m, d) in enumerate_moves(&th, 2) {
            assert!(d.validate().is_valid(), "{m}");
            assert!(planar_ok(&d), "{m} nonplanar");
            assert_eq!(yamada(&d).unwrap(), y0, "{m}");
        }
    }

    #[test]
    fn trefoil_does_not_simplify() {
        let t = trefoil();
        let budget = SearchBudget { max_states: 20_000, max_crossings: 4, max_depth: 6 };
        let (end, _) = simplify(&t, &budget);
        assert_eq!(end.crossing_count(), 3);
        let v = unknot_status(&t, &budget);
        assert_eq!(v.obstruction().as_deref(), Some("3-colorings = 9 > 3"));
    }

    #[test]
    fn trace_round_trip() {
        let k = parse_diagram("X 1 2 2 1").unwrap();
        let (_, w) = simplify(&k, &SearchBudget::for_diagram(&k));
        let parsed = MoveSequence::parse_trace(&w.to_trace()).unwrap();
        assert_eq!(parsed, w);
        assert!(MoveSequence::parse_trace("R9 @ 1").is_err());
    }
}
