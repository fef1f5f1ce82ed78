//! Excising a crossing-free edge of a theta-diagram and gluing an integer
//! twist tangle into the resulting ball.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcLabel, Crossing, Diagram, DiagramError, DiagramKind};
use crate::planar::{Node, NodeKind, PlanarMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("edge {edge} passes through {crossings} crossing(s); isotope the diagram so the edge is crossing-free first")]
    EdgeHasCrossings { edge: usize, crossings: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("filling {spec} closes to a {components}-component link")]
    Link { spec: FillingSpec, components: usize },
    #[error("bad filling spec '{0}', expected twists=<n>[,flip]")]
    Syntax(String),
}

/// An integer twist tangle: `twists` signed half-twists between two strands.
///
/// With `flip` unset the zero tangle joins the two ends that belonged to the
/// same vertex, so `twists=0` closes to the constituent missing the edge. With
/// `flip` set the tangle is turned a quarter turn and the zero tangle joins
/// ends from different vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct FillingSpec {
    pub twists: i32,
    #[serde(default)]
    pub flip: bool,
}

impl FillingSpec {
    pub fn new(twists: i32) -> Self {
        Self { twists, flip: false }
    }

    pub fn flipped(twists: i32) -> Self {
        Self { twists, flip: true }
    }
}

impl fmt::Display for FillingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "twists={}", self.twists)?;
        if self.flip {
            f.write_str(",flip")?;
        }
        Ok(())
    }
}

impl FromStr for FillingSpec {
    type Err = SurgeryError;
    fn from_str(s: &str) -> Result<Self, SurgeryError> {
        let bad = || SurgeryError::Syntax(s.to_string());
        let mut parts = s.trim().split(',').map(str::trim);
        let twists = parts
            .next()
            .and_then(|p| p.strip_prefix("twists="))
            .and_then(|n| n.parse().ok())
            .ok_or_else(bad)?;
        let flip = match parts.next() {
            None => false,
            Some("flip") => true,
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Self { twists, flip })
    }
}

/// Two strands in a ball. `boundary` lists the four boundary arcs in
/// counterclockwise order as seen from the complementary ball (the one the
/// filling goes into); boundary arcs occur once among the crossings (or
/// twice in `boundary`, for a strand with no crossings), internal arcs twice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tangle2 {
    pub crossings: Vec<Crossing>,
    pub boundary: [ArcLabel; 4],
}

impl Tangle2 {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Glues the filling into the ball complementary to this tangle.
    pub fn close(&self, spec: FillingSpec) -> Result<Diagram, SurgeryError> {
        let mut map = tangle_map(self);
        let [a, b, c, d] = attach_ends(&mut map, self);
        // positions NW, SW, SE, NE, counterclockwise; strands join NW-NE and SW-SE at zero twists
        let [nw, sw, se, ne] = if spec.flip { [a, b, c, d] } else { [b, c, d, a] };
        let n = spec.twists.unsigned_abs() as usize;
        if n == 0 {
            map.nodes.push(Node { kind: NodeKind::Bivalent, arcs: vec![nw, ne] });
            map.nodes.push(Node { kind: NodeKind::Bivalent, arcs: vec![sw, se] });
        } else {
            let mut top = nw;
            let mut bot = sw;
            for k in 0..n {
                let (t2, b2) = if k + 1 == n { (ne, se) } else { (map.fresh(), map.fresh()) };
                let arcs = if spec.twists > 0 { vec![top, bot, b2, t2] } else { vec![bot, b2, t2, top] };
                map.nodes.push(Node { kind: NodeKind::Crossing, arcs });
                top = t2;
                bot = b2;
            }
        }
        let components = components(&map);
        if components != 1 {
            return Err(SurgeryError::Link { spec, components });
        }
        let mut k = map.into_diagram(DiagramKind::Knot).compact_labels();
        k.orient_crossings();
        Ok(k)
    }
}

fn tangle_map(t: &Tangle2) -> PlanarMap {
    let mut map = PlanarMap::from_diagram(&Diagram {
        kind: DiagramKind::Knot,
        name: None,
        crossings: t.crossings.clone(),
        vertices: vec![],
    });
    map.nodes.retain(|n| n.kind == NodeKind::Crossing);
    let max = t
        .boundary
        .iter()
        .copied()
        .chain(t.crossings.iter().flat_map(|c| c.slots))
        .max()
        .unwrap_or(0);
    while map.fresh() <= max {}
    map
}

/// Gives each boundary end its own label, so coinciding arcs stay apart.
fn attach_ends(map: &mut PlanarMap, t: &Tangle2) -> [ArcLabel; 4] {
    let mut ends = [0; 4];
    for (i, &b) in t.boundary.iter().enumerate() {
        let f = map.fresh();
        map.nodes.push(Node { kind: NodeKind::Bivalent, arcs: vec![b, f] });
        ends[i] = f;
    }
    ends
}

/// Closed strands of a map with only crossings and bivalent nodes.
fn components(map: &PlanarMap) -> usize {
    let occ = map.occurrences();
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0;
    for n in 0..map.nodes.len() {
        for s in 0..map.nodes[n].arcs.len() {
            if seen.contains(&(n, s)) {
                continue;
            }
            count += 1;
            let mut cur = (n, s);
            while seen.insert(cur) {
                let deg = map.nodes[cur.0].arcs.len();
                let exit = (cur.0, (cur.1 + deg / 2) % deg);
                seen.insert(exit);
                cur = PlanarMap::other_end(&occ, map.nodes[exit.0].arcs[exit.1], exit);
            }
        }
    }
    count
}

/// Removes a crossing-free edge and both vertices, leaving the tangle of
/// the other two edges.
pub fn excise_edge(t: &Diagram, edge_index: usize) -> Result<Tangle2, SurgeryError> {
    if edge_index > 2 {
        return Err(DiagramError::EdgeIndex(edge_index).into());
    }
    let part = t.trace_edges()?;
    let crossings = part.crossings_of(t, edge_index).len();
    if crossings > 0 {
        return Err(SurgeryError::EdgeHasCrossings { edge: edge_index, crossings });
    }
    let ((v1, s1), (v2, s2)) = part.ends[edge_index];
    let (p, q) = (&t.vertices[v1].arcs, &t.vertices[v2].arcs);
    Ok(Tangle2 {
        crossings: t.crossings.clone(),
        boundary: [p[(s1 + 1) % 3], p[(s1 + 2) % 3], q[(s2 + 1) % 3], q[(s2 + 2) % 3]],
    })
}

/// Knot obtained by replacing the neighbourhood of a crossing-free edge with a twist tangle.
pub fn fill_edge(t: &Diagram, edge_index: usize, spec: FillingSpec) -> Result<Diagram, SurgeryError> {
    let mut k = excise_edge(t, edge_index)?.close(spec)?;
    if let Some(name) = &t.name {
        k.name = Some(format!("{name}-fill-e{edge_index}-{}", spec.to_string().replace([',', '='], "")));
    }
    Ok(k)
}

/// Whitehead (IH) move at a crossing-free edge: the two ends of each new
/// vertex are the ends the zero flipped filling joins. The regular
/// neighbourhood of the graph is unchanged, and deleting the new edge leaves
/// the knot `fill_edge(t, edge_index, twists=0,flip)`.
pub fn ih_move(t: &Diagram, edge_index: usize) -> Result<Diagram, SurgeryError> {
    let tangle = excise_edge(t, edge_index)?;
    let mut map = tangle_map(&tangle);
    let [a, b, c, d] = attach_ends(&mut map, &tangle);
    let x = map.fresh();
    map.nodes.push(Node { kind: NodeKind::Vertex, arcs: vec![x, d, a] });
    map.nodes.push(Node { kind: NodeKind::Vertex, arcs: vec![x, b, c] });
    let mut g = map.into_diagram(DiagramKind::Theta).compact_labels();
    g.name = t.name.as_ref().map(|n| format!("{n}-ih-e{edge_index}"));
    g.check()?;
    Ok(g)
}

/// Every theta-diagram obtained by adding a crossing-free edge inside a face
/// of the knot diagram `k`, joining two distinct arcs. Entries carry the two
/// arcs; deleting the new edge gives back `k`.
pub fn attach_edges(k: &Diagram) -> Vec<(ArcLabel, ArcLabel, Diagram)> {
    let map = PlanarMap::from_diagram(k);
    let mut out = Vec::new();
    for face in map.faces() {
        for i in 0..face.len() {
            for j in i + 1..face.len() {
                let (dx, dy) = (face[i], face[j]);
                let (x, y) = (map.nodes[dx.0].arcs[dx.1], map.nodes[dy.0].arcs[dy.1]);
                if x == y {
                    continue;
                }
                let mut m = map.clone();
                let occ = m.occurrences();
                let (hx, hy) = (m.head(&occ, dx), m.head(&occ, dy));
                let (x2, y2, chord) = (m.fresh(), m.fresh(), m.fresh());
                m.nodes[hx.0].arcs[hx.1] = x2;
                m.nodes[hy.0].arcs[hy.1] = y2;
                // the face lies to the left of each dart, so the chord leaves there
                m.nodes.push(Node { kind: NodeKind::Vertex, arcs: vec![chord, x, x2] });
                m.nodes.push(Node { kind: NodeKind::Vertex, arcs: vec![chord, y, y2] });
                let g = m.into_diagram(DiagramKind::Theta);
                if g.check().is_ok() {
                    out.push((x, y, g));
                }
            }
        }
    }
    out
}

/// Indices of the edges that pass through no crossing.
pub fn crossing_free_edges(t: &Diagram) -> Vec<usize> {
    match t.trace_edges() {
        Ok(p) => (0..3).filter(|&i| p.crossings_of(t, i).is_empty()).collect(),
        Err(_) => vec![],
    }
}

/// Every filling scanned when identifying the surgered knot.
pub fn scan_specs(range: std::ops::RangeInclusive<i32>) -> Vec<FillingSpec> {
    range.flat_map(|n| [FillingSpec::new(n), FillingSpec::flipped(n)]).collect()
}

/// Whether a filled knot's Jones polynomial matches the reference or its mirror.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JonesMatch {
    Exact,
    Mirror,
    None,
}

/// One row of a filling scan.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScanEntry {
    pub spec: FillingSpec,
    /// `None` when the filling closes to a link.
    pub crossings: Option<usize>,
    pub determinant: Option<u64>,
    pub alexander_matches: bool,
    pub jones: JonesMatch,
}

impl ScanEntry {
    pub fn matches(&self, reference_determinant: u64) -> bool {
        self.determinant == Some(reference_determinant) && self.alexander_matches && self.jones != JonesMatch::None
    }
}

/// Fills `edge_index` with every spec and compares the knot with `reference`
/// on determinant, Alexander polynomial and Jones polynomial up to mirror.
pub fn scan_fillings(
    t: &Diagram,
    edge_index: usize,
    reference: &Diagram,
    specs: &[FillingSpec],
) -> Result<Vec<ScanEntry>, SurgeryError> {
    use crate::invariants::{alexander, determinant, jones};
    excise_edge(t, edge_index)?;
    let ref_alex = alexander(reference).ok();
    let ref_jones = jones(reference).ok();
    let ref_mirror = jones(&reference.mirror()).ok();
    let mut out = Vec::new();
    for &spec in specs {
        let entry = match fill_edge(t, edge_index, spec) {
            Ok(k) => {
                let j = jones(&k).ok();
                ScanEntry {
                    spec,
                    crossings: Some(k.crossing_count()),
                    determinant: determinant(&k).ok(),
                    alexander_matches: ref_alex.is_some() && alexander(&k).ok() == ref_alex,
                    jones: if j.is_some() && j == ref_jones {
                        JonesMatch::Exact
                    } else if j.is_some() && j == ref_mirror {
                        JonesMatch::Mirror
                    } else {
                        JonesMatch::None
                    },
                }
            }
            Err(SurgeryError::Link { .. }) => ScanEntry {
                spec,
                crossings: None,
                determinant: None,
                alexander_matches: false,
                jones: JonesMatch::None,
            },
            Err(e) => return Err(e),
        };
        out.push(entry);
    }
    Ok(out)
}
