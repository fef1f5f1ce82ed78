//! Mutable planar-map view of a diagram used while rewriting.
//!
//! Besides crossings and vertices it allows bivalent marker nodes, which let a
//! rewrite subdivide arcs freely; `into_diagram` dissolves them again.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{ArcLabel, Crossing, Diagram, DiagramKind, Vertex3};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum NodeKind {
    Crossing,
    Vertex,
    Bivalent,
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub kind: NodeKind,
    pub arcs: Vec<ArcLabel>,
}

/// A dart leaves `node` through `slot` along the arc stored there.
pub(crate) type Dart = (usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct PlanarMap {
    pub nodes: Vec<Node>,
    next_label: ArcLabel,
}

impl PlanarMap {
    pub fn from_diagram(d: &Diagram) -> Self {
        let mut nodes: Vec<Node> = d
            .crossings
            .iter()
            .map(|c| Node { kind: NodeKind::Crossing, arcs: c.slots.to_vec() })
            .chain(d.vertices.iter().map(|v| Node { kind: NodeKind::Vertex, arcs: v.arcs.to_vec() }))
            .collect();
        let mut next = d.max_label() + 1;
        if nodes.is_empty() {
            // the crossingless unknot is a single loop through one marker
            nodes.push(Node { kind: NodeKind::Bivalent, arcs: vec![next, next] });
            next += 1;
        }
        Self { nodes, next_label: next }
    }

    pub fn fresh(&mut self) -> ArcLabel {
        let l = self.next_label;
        self.next_label += 1;
        l
    }

    pub fn occurrences(&self) -> BTreeMap<ArcLabel, Vec<Dart>> {
        let mut occ: BTreeMap<ArcLabel, Vec<Dart>> = BTreeMap::new();
        for (n, node) in self.nodes.iter().enumerate() {
            for (s, &a) in node.arcs.iter().enumerate() {
                occ.entry(a).or_default().push((n, s));
            }
        }
        occ
    }

    pub fn other_end(occ: &BTreeMap<ArcLabel, Vec<Dart>>, a: ArcLabel, here: Dart) -> Dart {
        let v = &occ[&a];
        if v[0] == here {
            v[1]
        } else {
            v[0]
        }
    }

    pub fn degree(&self, n: usize) -> usize {
        self.nodes[n].arcs.len()
    }

    /// Faces as cyclic lists of darts, each traversed with the face on its left.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let occ = self.occurrences();
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for n in 0..self.nodes.len() {
            for s in 0..self.degree(n) {
                if seen.contains(&(n, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (n, s);
                while seen.insert(d) {
                    face.push(d);
                    let a = self.nodes[d.0].arcs[d.1];
                    let (m, t) = Self::other_end(&occ, a, d);
                    let deg = self.degree(m);
                    d = (m, (t + deg - 1) % deg);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// The dart at the far end of `d`, i.e. `(node, slot)` where its arc arrives.
    pub fn head(&self, occ: &BTreeMap<ArcLabel, Vec<Dart>>, d: Dart) -> Dart {
        Self::other_end(occ, self.nodes[d.0].arcs[d.1], d)
    }

    /// Splits the arc leaving through dart `d` with a bivalent marker. Returns the
    /// darts (near half, far half) that continue in the same direction.
    pub fn subdivide(&mut self, d: Dart) -> (Dart, Dart) {
        let occ = self.occurrences();
        let a = self.nodes[d.0].arcs[d.1];
        let far = Self::other_end(&occ, a, d);
        let b = self.fresh();
        let m = self.nodes.len();
        // marker slot 0 faces `d`, slot 1 faces the far end
        self.nodes.push(Node { kind: NodeKind::Bivalent, arcs: vec![a, b] });
        self.nodes[far.0].arcs[far.1] = b;
        (d, (m, 1))
    }

    /// Merges label `from` into `into` everywhere.
    pub fn rename(&mut self, from: ArcLabel, into: ArcLabel) {
        for n in self.nodes.iter_mut() {
            for a in n.arcs.iter_mut() {
                if *a == from {
                    *a = into;
                }
            }
        }
    }

    pub fn into_diagram(mut self, kind: DiagramKind) -> Diagram {
        loop {
            let Some(i) = self
                .nodes
                .iter()
                .position(|n| n.kind == NodeKind::Bivalent && n.arcs[0] != n.arcs[1])
            else {
                break;
            };
            let node = self.nodes.remove(i);
            let (keep, gone) = (node.arcs[0].min(node.arcs[1]), node.arcs[0].max(node.arcs[1]));
            self.rename(gone, keep);
        }
        // a marker closing on itself is a crossingless loop; only valid alone
        self.nodes.retain(|n| n.kind != NodeKind::Bivalent);
        let mut d = Diagram { kind, name: None, crossings: vec![], vertices: vec![] };
        for n in self.nodes {
            match n.kind {
                NodeKind::Crossing => d.crossings.push(Crossing::new([n.arcs[0], n.arcs[1], n.arcs[2], n.arcs[3]])),
                NodeKind::Vertex => d.vertices.push(Vertex3 { arcs: [n.arcs[0], n.arcs[1], n.arcs[2]] }),
                NodeKind::Bivalent => unreachable!(),
            }
        }
        d
    }
}
