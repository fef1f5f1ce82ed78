//! Canonical labelling of diagrams up to arc relabelling, node order and the
//! cyclic rotations that describe the same crossing or vertex.

use sha2::{Digest, Sha256};

use crate::diagram::{ArcLabel, Crossing, Diagram, DiagramKind, Vertex3};

const TAG_CROSSING: u32 = 0;
const TAG_VERTEX: u32 = 1;

/// Code sequence and the relabelled diagram it describes.
fn code_from(d: &Diagram, start: usize, rot: usize) -> (Vec<u32>, Diagram) {
    let nn = d.node_count();
    let occ = d.occurrences();
    let mut visited = vec![false; nn];
    let mut ids: std::collections::HashMap<ArcLabel, u32> = Default::default();
    let mut queue = std::collections::VecDeque::new();
    let mut code = Vec::with_capacity(5 * nn + 1);
    code.push(if d.kind == DiagramKind::Knot { 0 } else { 1 });
    let mut out = Diagram { kind: d.kind, name: None, crossings: vec![], vertices: vec![] };
    let nc = d.crossings.len();
    visited[start] = true;
    queue.push_back((start, rot));
    while let Some((n, r)) = queue.pop_front() {
        let slots = d.node_slots(n);
        let deg = slots.len();
        code.push(if n < nc { TAG_CROSSING } else { TAG_VERTEX });
        let mut labels = Vec::with_capacity(deg);
        for i in 0..deg {
            let s = (r + i) % deg;
            let a = slots[s];
            let next_id = ids.len() as u32 + 1;
            let id = *ids.entry(a).or_insert_with(|| {
                let v = &occ[&a];
                let far = if v[0] == (n, s) { v[1] } else { v[0] };
                if !visited[far.0] {
                    visited[far.0] = true;
                    let fr = if far.0 < nc { far.1 - far.1 % 2 } else { far.1 };
                    queue.push_back((far.0, fr));
                }
                next_id
            });
            code.push(id);
            labels.push(id);
        }
        if n < nc {
            out.crossings.push(Crossing::new([labels[0], labels[1], labels[2], labels[3]]));
        } else {
            out.vertices.push(Vertex3 { arcs: [labels[0], labels[1], labels[2]] });
        }
    }
    (code, out)
}

/// Least code over all starting nodes and rotations, with the relabelled diagram.
pub fn canonical(d: &Diagram) -> (Vec<u32>, Diagram) {
    if d.node_count() == 0 {
        return (vec![0], Diagram::unknot());
    }
    let nc = d.crossings.len();
    let mut best: Option<(Vec<u32>, Diagram)> = None;
    for n in 0..d.node_count() {
        let rots: &[usize] = if n < nc { &[0, 2] } else { &[0, 1, 2] };
        for &r in rots {
            let (code, out) = code_from(d, n, r);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, out));
            }
        }
    }
    best.unwrap()
}

pub fn canonical_code(d: &Diagram) -> Vec<u32> {
    canonical(d).0
}

/// Relabelled representative; equal for label-isomorphic inputs.
pub fn canonical_diagram(d: &Diagram) -> Diagram {
    let mut c = canonical(d).1;
    c.name = d.name.clone();
    c
}

pub fn digest(d: &Diagram) -> String {
    let code = canonical_code(d);
    let mut h = Sha256::new();
    for c in code {
        h.update(c.to_le_bytes());
    }
    hex::encode(&h.finalize()[..12])
}

pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    a.kind == b.kind && a.crossings.len() == b.crossings.len() && canonical_code(a) == canonical_code(b)
}
