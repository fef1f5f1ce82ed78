//! Edge surgery: excise a crossing-free edge, fill it with twisted tangles,
//! compare against kappa; the IH move and tunnel attachment.
//!
//! cargo run --release --example surgery

use spatial_theta::data;
use spatial_theta::invariants::determinant;
use spatial_theta::surgery::{attach_edges, crossing_free_edges, excise_edge, ih_move, scan_fillings, scan_specs};

fn main() {
    let k = data::shipped("kinoshita").unwrap();
    let kappa = data::shipped("kappa").unwrap();
    let edges = crossing_free_edges(&k);
    println!("crossing-free edges: {edges:?}");
    let tangle = excise_edge(&k, edges[0]).unwrap();
    println!("excised tangle: {} crossings, boundary {:?}", tangle.crossing_count(), tangle.boundary);

    for e in scan_fillings(&k, edges[0], &kappa, &scan_specs(-3..=3)).unwrap() {
        let det = e.determinant.map_or("link".to_string(), |d| d.to_string());
        println!("  {:<14} det {:>4}  alexander {:<5}  jones {:?}{}", e.spec.to_string(), det, e.alexander_matches, e.jones, if e.matches(15) { "  <- kappa" } else { "" });
    }

    let spine = ih_move(&k, edges[0]).unwrap();
    println!("IH move at e{}: {} crossings; constituents det {:?}", edges[0], spine.crossing_count(),
        (0..3).map(|i| determinant(&spine.constituent(i).unwrap()).unwrap()).collect::<Vec<_>>());

    let trefoil = data::shipped("trefoil").unwrap();
    for (x, y, t) in attach_edges(&trefoil).into_iter().take(3) {
        println!("tunnel between arcs {x} and {y}: {} crossings", t.crossing_count());
    }
}
