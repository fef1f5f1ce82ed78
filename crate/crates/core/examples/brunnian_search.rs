//! Builds theta-diagrams `e ∪ (R1 + R2)` from a crossing-free edge and a sum of
//! two small rational tangles, and keeps those whose constituents are all
//! unknotted while some twist filling of `e` matches trefoil # figure-eight.
//!
//! cargo run --release --example brunnian_search

use spatial_theta::canon::canonical;
use spatial_theta::invariants::{alexander, colorings, determinant, jones, yamada};
use spatial_theta::moves::{simplify, unknot_status, SearchBudget};
use spatial_theta::surgery::{crossing_free_edges, fill_edge, scan_specs};
use spatial_theta::{connected_sum, parse_diagram, ArcLabel, Diagram};

/// Tangle under construction: crossings plus boundary ends NW, SW, SE, NE.
#[derive(Clone)]
struct Builder {
    crossings: Vec<[ArcLabel; 4]>,
    ends: [ArcLabel; 4],
    next: ArcLabel,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    /// half twist of the two eastern ends
    East(bool),
    /// half twist of the two southern ends
    South(bool),
}

impl Builder {
    fn zero() -> Self {
        Self { crossings: vec![], ends: [1, 2, 2, 1], next: 3 }
    }

    fn fresh(&mut self) -> ArcLabel {
        self.next += 1;
        self.next - 1
    }

    fn twist(&mut self, nw: ArcLabel, ne: ArcLabel, positive: bool) -> (ArcLabel, ArcLabel) {
        let (sw, se) = (self.fresh(), self.fresh());
        // ccw at the new crossing: nw, sw, se, ne
        self.crossings.push(if positive { [nw, sw, se, ne] } else { [sw, se, ne, nw] });
        (sw, se)
    }

    fn apply(&mut self, op: Op) {
        let [nw, sw, se, ne] = self.ends;
        match op {
            Op::East(p) => {
                // crossing to the east: its western ends are our NE (top) and SE (bottom)
                let (a, b) = (self.fresh(), self.fresh());
                self.crossings.push(if p { [ne, se, b, a] } else { [se, b, a, ne] });
                self.ends = [nw, sw, b, a];
            }
            Op::South(p) => {
                let (s1, s2) = self.twist(sw, se, p);
                self.ends = [nw, s1, s2, ne];
            }
        }
    }

    /// Horizontal sum: our eastern ends glued to the western ends of `other`.
    fn plus(&self, other: &Builder) -> Builder {
        let off = self.next;
        let shift = |a: ArcLabel| a + off;
        let [onw, osw, ose, one] = other.ends.map(shift);
        let [nw, sw, se, ne] = self.ends;
        let rename = |a: ArcLabel| {
            if a == onw {
                ne
            } else if a == osw {
                se
            } else {
                a
            }
        };
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| c.map(shift).map(rename)));
        Builder { crossings, ends: [nw, sw, rename(ose), rename(one)], next: off + other.next }
    }

    /// Theta-diagram: the edge joins a vertex on ends (r, r+1) to one on (r+2, r+3).
    fn theta(&self, r: usize) -> Diagram {
        let e = self.next;
        let b = |i: usize| self.ends[(r + i) % 4];
        Diagram::theta(self.crossings.clone(), vec![[e, b(1), b(0)], [e, b(3), b(2)]])
    }
}

fn words(len: usize) -> Vec<Vec<Op>> {
    let ops = [Op::East(true), Op::East(false), Op::South(true), Op::South(false)];
    let mut out: Vec<Vec<Op>> = vec![vec![]];
    let mut layer: Vec<Vec<Op>> = vec![vec![]];
    for _ in 0..len {
        let mut next = vec![];
        for w in &layer {
            for &o in &ops {
                let mut v = w.clone();
                v.push(o);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn main() {
    let trefoil = parse_diagram("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").unwrap();
    let fig8 = parse_diagram("X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8").unwrap();
    let kappa = connected_sum(&trefoil, 1, &fig8, 1).unwrap();
    let target_alex = alexander(&kappa).unwrap();
    let (j1, j2) = (jones(&kappa).unwrap(), jones(&kappa.mirror()).unwrap());
    let y_trivial = yamada(&parse_diagram("V 1 2 3\nV 3 2 1").unwrap()).unwrap();

    let build = |w: &[Op]| {
        let mut b = Builder::zero();
        for &o in w {
            b.apply(o);
        }
        b
    };
    let mut seen = std::collections::HashSet::new();
    let mut found = 0;
    let mut stats = [0usize; 5];
    for w1 in words(3).iter().filter(|w| w.len() == 3) {
        for w2 in words(4).iter().filter(|w| w.len() == 4) {
            let t = build(w1).plus(&build(w2));
            for r in 0..4 {
                let th = t.theta(r).compact_labels();
                stats[0] += 1;
                if !th.validate().is_valid() {
                    continue;
                }
                stats[1] += 1;
                if !th.is_planar() || !seen.insert(canonical(&th).0) {
                    continue;
                }
                stats[2] += 1;
                let trivial_constituents = (0..3).all(|i| {
                    let c = th.constituent(i).unwrap();
                    determinant(&c).unwrap() == 1 && colorings(&c, 3).unwrap() == 3
                });
                if !trivial_constituents {
                    continue;
                }
                stats[3] += 1;
                if yamada(&th).unwrap() == y_trivial {
                    continue;
                }
                stats[4] += 1;
                let fills: Vec<String> = crossing_free_edges(&th)
                    .into_iter()
                    .flat_map(|e| scan_specs(-3..=3).into_iter().map(move |s| (e, s)))
                    .filter(|&(e, s)| {
                        fill_edge(&th, e, s).map_or(false, |k| {
                            determinant(&k).unwrap() == 15
                                && alexander(&k).unwrap() == target_alex
                                && [&j1, &j2].contains(&&jones(&k).unwrap())
                        })
                    })
                    .map(|(e, s)| format!("e{e} {s}"))
                    .collect();
                if fills.is_empty() {
                    continue;
                }
                let brunnian = (0..3).all(|i| {
                    let c = th.constituent(i).unwrap();
                    unknot_status(&c, &SearchBudget::for_diagram(&c)).is_unknot()
                });
                let (small, _) = simplify(&th, &SearchBudget { max_states: 100_000, ..SearchBudget::for_diagram(&th) });
                println!(
                    "{w1:?} + {w2:?} rot {r}: brunnian={brunnian} simplifies to {} crossings; fillings {fills:?}",
                    small.crossing_count()
                );
                println!("{th}");
                found += 1;
                if found >= 6 {
                    return;
                }
            }
        }
    }
    println!("{found} candidates; stats {stats:?}");
}
