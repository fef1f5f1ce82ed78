//! Exact classical invariants: Fox colorings, determinant, Alexander polynomial,
//! Kauffman bracket, Jones polynomial and the Yamada polynomial of theta-graphs.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::diagram::{ArcLabel, Diagram, DiagramKind};
use crate::poly::{Coeff, LaurentPolynomial, Normalization, NormalizedPolynomial};

/// Largest crossing count accepted by the state sums.
pub const MAX_STATESUM_CROSSINGS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("diagram has {0} crossings, state-sum cap is {MAX_STATESUM_CROSSINGS}")]
    TooManyCrossings(usize),
    #[error("expected a {0:?} diagram")]
    WrongKind(DiagramKind),
}

fn require(k: &Diagram, kind: DiagramKind) -> Result<(), InvariantError> {
    if k.kind == kind {
        Ok(())
    } else {
        Err(InvariantError::WrongKind(kind))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn label_index(d: &Diagram) -> HashMap<ArcLabel, usize> {
    d.arcs().into_iter().enumerate().map(|(i, a)| (a, i)).collect()
}

/// Wirtinger arcs: PD labels merged through over-passes. Returns the class of
/// every label and the number of classes.
pub fn wirtinger_arcs(k: &Diagram) -> (HashMap<ArcLabel, usize>, usize) {
    let idx = label_index(k);
    let mut uf = UnionFind::new(idx.len());
    for c in &k.crossings {
        uf.union(idx[&c.slots[1]], idx[&c.slots[3]]);
    }
    let mut class_of_root = HashMap::new();
    let mut out = HashMap::new();
    for (&a, &i) in &idx {
        let r = uf.find(i);
        let next = class_of_root.len();
        let cls = *class_of_root.entry(r).or_insert(next);
        out.insert(a, cls);
    }
    // renumber classes in label order for determinism
    let mut order: Vec<_> = out.iter().map(|(&a, &c)| (a, c)).collect();
    order.sort();
    let mut renum = HashMap::new();
    for (_, c) in &order {
        let next = renum.len();
        renum.entry(*c).or_insert(next);
    }
    let n = renum.len();
    (out.into_iter().map(|(a, c)| (a, renum[&c])).collect(), n)
}

/// Rank of an integer matrix reduced mod a prime `p`.
fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let inv = |a: i64| -> i64 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (a, p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let iv = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * iv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of Fox `p`-colorings, solved as a linear system over Z/p.
pub fn colorings(k: &Diagram, p: u64) -> Result<u64, InvariantError> {
    require(k, DiagramKind::Knot)?;
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p));
    }
    if k.crossings.is_empty() {
        return Ok(p);
    }
    let (arc_of, n) = wirtinger_arcs(k);
    let rows: Vec<Vec<i64>> = k
        .crossings
        .iter()
        .map(|c| {
            let mut row = vec![0i64; n];
            row[arc_of[&c.slots[1]]] += 2;
            row[arc_of[&c.slots[0]]] -= 1;
            row[arc_of[&c.slots[2]]] -= 1;
            row
        })
        .collect();
    let rank = rank_mod_p(rows, p as i64);
    Ok(p.pow((n - rank) as u32))
}

/// Fraction-free determinant over integer Laurent polynomials.
pub(crate) fn bareiss_det(mut m: Vec<Vec<LaurentPolynomial>>, var: char) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one(var);
    }
    let mut sign: Coeff = 1;
    let mut prev = LaurentPolynomial::one(var);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentPolynomial::zero(var),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

/// Alexander polynomial from Fox derivatives of the Wirtinger relators,
/// normalized symmetric with positive value at 1.
pub fn alexander(k: &Diagram) -> Result<NormalizedPolynomial, InvariantError> {
    require(k, DiagramKind::Knot)?;
    let one = LaurentPolynomial::one('t');
    if k.crossings.is_empty() {
        return Ok(NormalizedPolynomial { poly: one, normalization: Normalization::SymmetricAlexander });
    }
    let (arc_of, n) = wirtinger_arcs(k);
    let signs = k.crossing_signs();
    let trav = k.knot_traversal();
    let mut under_in = vec![0usize; k.crossings.len()];
    for &(c, s) in &trav {
        if s % 2 == 0 {
            under_in[c] = s;
        }
    }
    let t = |e: i32, c: Coeff| LaurentPolynomial::monomial('t', c, e);
    let mut mat = vec![vec![LaurentPolynomial::zero('t'); n]; n];
    for (ci, c) in k.crossings.iter().enumerate() {
        let inc = arc_of[&c.slots[under_in[ci]]];
        let out = arc_of[&c.slots[(under_in[ci] + 2) % 4]];
        let over = arc_of[&c.slots[1]];
        let row = &mut mat[ci];
        let entries = if signs[ci] > 0 {
            [(over, &t(0, 1) - &t(1, 1)), (inc, t(1, 1)), (out, t(0, -1))]
        } else {
            [(over, &t(1, 1) - &t(0, 1)), (inc, t(0, 1)), (out, t(1, -1))]
        };
        for (col, v) in entries {
            row[col] = &row[col] + &v;
        }
    }
    let minor: Vec<Vec<_>> = mat[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    let det = bareiss_det(minor, 't');
    let poly = det.symmetrized().expect("Alexander polynomial of a knot is symmetric up to units");
    Ok(NormalizedPolynomial { poly, normalization: Normalization::SymmetricAlexander })
}

/// |Δ(-1)|.
pub fn determinant(k: &Diagram) -> Result<u64, InvariantError> {
    let a = alexander(k)?;
    Ok(a.poly.eval_unit(-1).unsigned_abs() as u64)
}

fn check_cap(d: &Diagram) -> Result<(), InvariantError> {
    if d.crossings.len() > MAX_STATESUM_CROSSINGS {
        Err(InvariantError::TooManyCrossings(d.crossings.len()))
    } else {
        Ok(())
    }
}

/// Kauffman bracket `<K>` normalized so the crossingless loop is 1.
pub fn kauffman_bracket(k: &Diagram) -> Result<LaurentPolynomial, InvariantError> {
    require(k, DiagramKind::Knot)?;
    check_cap(k)?;
    let n = k.crossings.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one('A'));
    }
    let idx = label_index(k);
    let m = idx.len();
    let slots: Vec<[usize; 4]> =
        k.crossings.iter().map(|c| [idx[&c.slots[0]], idx[&c.slots[1]], idx[&c.slots[2]], idx[&c.slots[3]]]).collect();
    // (a - b, loops) -> number of states
    let mut tally: BTreeMap<(i32, usize), Coeff> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(m);
        let mut comps = m;
        let mut ab = 0i32;
        for (i, s) in slots.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                ab += 1;
                [(s[0], s[1]), (s[2], s[3])]
            } else {
                ab -= 1;
                [(s[0], s[3]), (s[1], s[2])]
            };
            for (x, y) in pairs {
                if uf.union(x, y) {
                    comps -= 1;
                }
            }
        }
        *tally.entry((ab, comps)).or_insert(0) += 1;
    }
    // delta = -A^2 - A^-2
    let delta = LaurentPolynomial::from_terms('A', [(2, -1), (-2, -1)]);
    let mut out = LaurentPolynomial::zero('A');
    for ((ab, loops), count) in tally {
        let term = &LaurentPolynomial::monomial('A', count, ab) * &delta.pow((loops - 1) as u32);
        out = &out + &term;
    }
    Ok(out)
}

/// Jones polynomial in `t`, from the writhe-normalized bracket with `t = A^-4`.
pub fn jones(k: &Diagram) -> Result<NormalizedPolynomial, InvariantError> {
    let bracket = kauffman_bracket(k)?;
    let w = k.writhe();
    // (-A^3)^(-w)
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let f = &LaurentPolynomial::monomial('A', sign, (-3 * w) as i32) * &bracket;
    let mut out = LaurentPolynomial::zero('t');
    for (e, c) in f.terms() {
        assert!(e % 4 == 0, "Jones exponent not divisible by 4");
        out.add_term(-e / 4, c);
    }
    Ok(NormalizedPolynomial::exact(out))
}

/// Abstract multigraph with loops; used for the flat-graph evaluation.
#[derive(Clone, Debug)]
struct Multigraph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

/// Yamada's graph polynomial at `x = -1`, as a polynomial in `y` (index = power).
fn flat_eval(g: Multigraph, memo: &mut HashMap<Vec<u64>, Vec<Coeff>>) -> Vec<Coeff> {
    let key = graph_key(&g);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let out = flat_eval_inner(g, memo);
    memo.insert(key, out.clone());
    out
}

fn graph_key(g: &Multigraph) -> Vec<u64> {
    let mut es: Vec<u64> = g.edges.iter().map(|&(a, b)| ((a.min(b) as u64) << 32) | a.max(b) as u64).collect();
    es.sort_unstable();
    es.insert(0, g.nodes as u64);
    es
}

fn poly_mul(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn flat_eval_inner(mut g: Multigraph, memo: &mut HashMap<Vec<u64>, Vec<Coeff>>) -> Vec<Coeff> {
    let mut factor: Vec<Coeff> = vec![1];
    // loops contribute (y + 1)
    let before = g.edges.len();
    g.edges.retain(|&(a, b)| a != b);
    for _ in 0..before - g.edges.len() {
        factor = poly_mul(&factor, &[1, 1]);
    }
    let mut deg = vec![0usize; g.nodes];
    for &(a, b) in &g.edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    // isolated vertices contribute x = -1
    let isolated = deg.iter().filter(|&&d| d == 0).count();
    if isolated > 0 {
        let keep: Vec<usize> = (0..g.nodes).filter(|&v| deg[v] > 0).collect();
        let mut remap = vec![usize::MAX; g.nodes];
        for (i, &v) in keep.iter().enumerate() {
            remap[v] = i;
        }
        g = Multigraph { nodes: keep.len(), edges: g.edges.iter().map(|&(a, b)| (remap[a], remap[b])).collect() };
        if isolated % 2 == 1 {
            factor = factor.iter().map(|c| -c).collect();
        }
        deg = keep.iter().map(|&v| deg[v]).collect();
    }
    if g.edges.is_empty() {
        return factor;
    }
    // a pendant edge is a bridge: the polynomial vanishes
    if deg.iter().any(|&d| d == 1) {
        return vec![];
    }
    let contract = |g: &Multigraph, e: usize| -> Multigraph {
        let (a, b) = g.edges[e];
        let mut edges = g.edges.clone();
        edges.remove(e);
        let edges = edges
            .into_iter()
            .map(|(x, y)| {
                let f = |v: usize| {
                    let v = if v == b { a } else { v };
                    if v > b {
                        v - 1
                    } else {
                        v
                    }
                };
                (f(x), f(y))
            })
            .collect();
        Multigraph { nodes: g.nodes - 1, edges }
    };
    // series edges: contracting through a degree-2 vertex is exact
    if let Some(v) = deg.iter().position(|&d| d == 2) {
        let e = g.edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
        return poly_mul(&factor, &flat_eval(contract(&g, e), memo));
    }
    let e = 0;
    let mut deleted = g.clone();
    deleted.edges.remove(e);
    let sum = poly_add(&flat_eval(contract(&g, e), memo), &flat_eval(deleted, memo));
    poly_mul(&factor, &sum)
}

/// Yamada polynomial of a theta-diagram, unit-reduced.
pub fn yamada(t: &Diagram) -> Result<NormalizedPolynomial, InvariantError> {
    require(t, DiagramKind::Theta)?;
    Ok(NormalizedPolynomial::unit_reduced(&yamada_raw(t)?))
}

/// Yamada state sum before unit normalization.
pub fn yamada_raw(t: &Diagram) -> Result<LaurentPolynomial, InvariantError> {
    check_cap(t)?;
    let idx = label_index(t);
    let m = idx.len();
    let n = t.crossings.len();
    let slots: Vec<[usize; 4]> =
        t.crossings.iter().map(|c| [idx[&c.slots[0]], idx[&c.slots[1]], idx[&c.slots[2]], idx[&c.slots[3]]]).collect();
    // every label occurrence at a graph node: (label index, node id)
    let idx_ref = &idx;
    let vertex_ends: Vec<(usize, usize)> =
        t.vertices.iter().enumerate().flat_map(|(v, vx)| vx.arcs.iter().map(move |a| (idx_ref[a], v))).collect();
    let nv = t.vertices.len();
    let mut memo = HashMap::new();
    let mut tally: BTreeMap<i32, Vec<Coeff>> = BTreeMap::new();
    let total = 3u64.pow(n as u32);
    for mut code in 0..total {
        let mut uf = UnionFind::new(m);
        let mut ends = vertex_ends.clone();
        let mut nodes = nv;
        let mut ab = 0i32;
        for s in &slots {
            let choice = code % 3;
            code /= 3;
            match choice {
                0 => {
                    ab += 1;
                    uf.union(s[0], s[1]);
                    uf.union(s[2], s[3]);
                }
                1 => {
                    ab -= 1;
                    uf.union(s[0], s[3]);
                    uf.union(s[1], s[2]);
                }
                _ => {
                    for &x in s {
                        ends.push((x, nodes));
                    }
                    nodes += 1;
                }
            }
        }
        // each class of labels is an edge between its two node ends, or a free circle
        let mut class_ends: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, node) in ends {
            class_ends.entry(uf.find(x)).or_default().push(node);
        }
        let mut roots: Vec<usize> = (0..m).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut edges = Vec::new();
        let mut circles = 0;
        for r in roots {
            match class_ends.get(&r) {
                Some(e) => {
                    debug_assert_eq!(e.len(), 2);
                    edges.push((e[0], e[1]));
                }
                None => circles += 1,
            }
        }
        let mut h = flat_eval(Multigraph { nodes, edges }, &mut memo);
        // a free circle evaluates to -(y + 1)
        for _ in 0..circles {
            h = poly_mul(&h, &[-1, -1]);
        }
        let slot = tally.entry(ab).or_default();
        *slot = poly_add(slot, &h);
    }
    // y = -(A + 2 + A^-1)
    let y = LaurentPolynomial::from_terms('A', [(1, -1), (0, -2), (-1, -1)]);
    let mut out = LaurentPolynomial::zero('A');
    for (ab, hy) in tally {
        let mut acc = LaurentPolynomial::zero('A');
        for (i, c) in hy.iter().enumerate().rev() {
            acc = &(&acc * &y) + &LaurentPolynomial::constant('A', *c);
            let _ = i;
        }
        out = &out + &acc.shift(ab);
    }
    Ok(out)
}
