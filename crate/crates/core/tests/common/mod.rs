//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::Rng;

use spatial_theta::canon::canonical;
use spatial_theta::data;
use spatial_theta::invariants::{alexander, colorings, determinant, jones, yamada};
use spatial_theta::moves::{enumerate_moves, MoveDescriptor, MoveKind};
use spatial_theta::poly::NormalizedPolynomial;
use spatial_theta::{parse_diagram, ArcLabel, Diagram};

/// Small knots in the usual table PDs (incoming under-strand first, ccw).
pub const KNOTS: &[(&str, &str)] = &[
    ("3_1", "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3"),
    ("4_1", "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8"),
    ("5_1", "X 1 6 2 7\nX 3 8 4 9\nX 5 10 6 1\nX 7 2 8 3\nX 9 4 10 5"),
    ("5_2", "X 1 4 2 5\nX 3 8 4 9\nX 5 10 6 1\nX 9 6 10 7\nX 7 2 8 3"),
    ("6_1", "X 1 4 2 5\nX 7 10 8 11\nX 3 9 4 8\nX 9 3 10 2\nX 5 12 6 1\nX 11 6 12 7"),
];

pub fn knot(name: &str) -> Diagram {
    let src = KNOTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).unwrap();
    parse_diagram(src).unwrap()
}

pub fn shipped(name: &str) -> Diagram {
    data::shipped(name).unwrap()
}

/// One uniformly chosen move result with at most `cap` crossings.
pub fn random_move(d: &Diagram, cap: usize, rng: &mut StdRng, allow: impl Fn(MoveKind) -> bool) -> Option<(MoveDescriptor, Diagram)> {
    let moves: Vec<_> = enumerate_moves(d, cap).into_iter().filter(|(m, _)| allow(m.kind)).collect();
    if moves.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..moves.len());
    Some(moves[i].clone())
}

pub fn walk(start: &Diagram, steps: usize, cap: usize, rng: &mut StdRng, allow: impl Fn(MoveKind) -> bool + Copy) -> Diagram {
    let mut cur = start.clone();
    for _ in 0..steps {
        match random_move(&cur, cap, rng, allow) {
            Some((_, next)) => cur = canonical(&next).1,
            None => break,
        }
    }
    cur
}

/// A random knot diagram of at most `cap` crossings: a table knot or the
/// unknot, possibly mirrored, pushed through a short random walk.
pub fn random_knot(rng: &mut StdRng, cap: usize) -> Diagram {
    let mut bases: Vec<Diagram> = vec![Diagram::unknot()];
    bases.extend(KNOTS.iter().map(|(_, s)| parse_diagram(s).unwrap()));
    let bases: Vec<Diagram> = bases.into_iter().filter(|d| d.crossing_count() <= cap).collect();
    let mut d = bases[rng.gen_range(0..bases.len())].clone();
    if rng.gen_bool(0.5) {
        d = d.mirror();
    }
    let steps = rng.gen_range(0..6);
    walk(&d, steps, cap, rng, |_| true)
}

pub fn graph_move(k: MoveKind) -> bool {
    !matches!(k, MoveKind::R1Plus | MoveKind::R1Minus)
}

pub fn random_theta(rng: &mut StdRng) -> Diagram {
    let names = ["trivial", "tunnel_trefoil", "kinoshita"];
    let d = shipped(names[rng.gen_range(0..names.len())]);
    let cap = d.crossing_count() + 1;
    let steps = rng.gen_range(0..4);
    walk(&d, steps, cap, rng, graph_move)
}

#[derive(Debug, PartialEq, Eq)]
pub struct KnotFingerprint {
    pub det: u64,
    pub alexander: NormalizedPolynomial,
    pub jones: NormalizedPolynomial,
    pub col3: u64,
    pub col5: u64,
}

pub fn fingerprint(k: &Diagram) -> KnotFingerprint {
    KnotFingerprint {
        det: determinant(k).unwrap(),
        alexander: alexander(k).unwrap(),
        jones: jones(k).unwrap(),
        col3: colorings(k, 3).unwrap(),
        col5: colorings(k, 5).unwrap(),
    }
}

pub fn yamada_of(t: &Diagram) -> NormalizedPolynomial {
    yamada(t).unwrap()
}

// ---------------------------------------------------------------------------
// oracles

fn find(parent: &mut HashMap<ArcLabel, ArcLabel>, a: ArcLabel) -> ArcLabel {
    let p = parent[&a];
    if p == a {
        return a;
    }
    let r = find(parent, p);
    parent.insert(a, r);
    r
}

/// Fox p-colorings by trying every assignment of colors to over-arcs.
pub fn brute_colorings(k: &Diagram, p: u64) -> u64 {
    if k.crossings.is_empty() {
        return p;
    }
    let mut parent: HashMap<ArcLabel, ArcLabel> = HashMap::new();
    for c in &k.crossings {
        for &a in &c.slots {
            parent.insert(a, a);
        }
    }
    for c in &k.crossings {
        let (x, y) = (find(&mut parent, c.slots[1]), find(&mut parent, c.slots[3]));
        parent.insert(x, y);
    }
    let mut class: HashMap<ArcLabel, usize> = HashMap::new();
    let labels: Vec<ArcLabel> = parent.keys().copied().collect();
    for a in labels {
        let r = find(&mut parent, a);
        let n = class.len();
        class.entry(r).or_insert(n);
    }
    let arcs = class.len();
    let eqs: Vec<[usize; 3]> = k
        .crossings
        .iter()
        .map(|c| {
            let mut f = |a| class[&find(&mut parent, a)];
            [f(c.slots[1]), f(c.slots[0]), f(c.slots[2])]
        })
        .collect();
    let mut count = 0;
    let mut col = vec![0u64; arcs];
    loop {
        if eqs.iter().all(|&[o, a, b]| (2 * col[o] + 2 * p - col[a] - col[b]) % p == 0) {
            count += 1;
        }
        let mut i = 0;
        while i < arcs {
            col[i] += 1;
            if col[i] < p {
                break;
            }
            col[i] = 0;
            i += 1;
        }
        if i == arcs {
            return count;
        }
    }
}

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

/// Knot determinant from the Goeritz matrix of a checkerboard shading.
pub fn goeritz_det(k: &Diagram) -> u64 {
    let n = k.crossings.len();
    if n == 0 {
        return 1;
    }
    // dart (c, s): leaving crossing c along the arc in slot s
    let mut ends: HashMap<ArcLabel, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in k.crossings.iter().enumerate() {
        for (s, &a) in x.slots.iter().enumerate() {
            ends.entry(a).or_default().push((c, s));
        }
    }
    let other = |c: usize, s: usize| {
        let e = &ends[&k.crossings[c].slots[s]];
        if e[0] == (c, s) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut face = vec![[usize::MAX; 4]; n];
    let mut faces = 0;
    for c0 in 0..n {
        for s0 in 0..4 {
            if face[c0][s0] != usize::MAX {
                continue;
            }
            let (mut c, mut s) = (c0, s0);
            while face[c][s] == usize::MAX {
                face[c][s] = faces;
                let (c2, s2) = other(c, s);
                (c, s) = (c2, (s2 + 1) % 4);
            }
            faces += 1;
        }
    }
    assert_eq!(faces, n + 2, "diagram is not planar");
    // corner k of crossing c lies in the face of dart (c, k+1)
    let corner = |c: usize, kk: usize| face[c][(kk + 1) % 4];
    let mut color = vec![None; faces];
    color[corner(0, 0)] = Some(0u8);
    let mut changed = true;
    while changed {
        changed = false;
        for c in 0..n {
            for kk in 0..4 {
                let (f, g) = (corner(c, kk), corner(c, (kk + 1) % 4));
                if let (Some(x), None) = (color[f], color[g]) {
                    color[g] = Some(1 - x);
                    changed = true;
                }
                if let (None, Some(y)) = (color[f], color[g]) {
                    color[f] = Some(1 - y);
                    changed = true;
                }
            }
        }
    }
    let shaded: Vec<usize> = (0..faces).filter(|&f| color[f] == Some(0)).collect();
    let index: HashMap<usize, usize> = shaded.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = shaded.len();
    let mut g = vec![vec![0i128; m]; m];
    for c in 0..n {
        let (eta, a, b) = if color[corner(c, 0)] == Some(0) {
            (1, corner(c, 0), corner(c, 2))
        } else {
            (-1, corner(c, 1), corner(c, 3))
        };
        if a != b {
            let (i, j) = (index[&a], index[&b]);
            g[i][j] -= eta;
            g[j][i] -= eta;
        }
    }
    for i in 0..m {
        g[i][i] = -(0..m).filter(|&j| j != i).map(|j| g[i][j]).sum::<i128>();
    }
    let reduced: Vec<Vec<i128>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    cofactor_det(&reduced).unsigned_abs() as u64
}

/// |Δ(-1)|.
pub fn det_from_alexander(k: &Diagram) -> u64 {
    alexander(k).unwrap().poly.eval_unit(-1).unsigned_abs() as u64
}
