//! Diagram equivalence by bidirectional search: the filled Kinoshita knot
//! against the shipped trefoil # figure-eight.
//!
//! cargo run --release --example equivalence

use std::time::Instant;

use spatial_theta::canon::digest;
use spatial_theta::data;
use spatial_theta::moves::{equivalent, SearchBudget};
use spatial_theta::surgery::fill_edge;

fn main() {
    let rec = data::shipped_filling();
    let k = fill_edge(&data::shipped("kinoshita").unwrap(), rec.edge, rec.selected).unwrap();
    let kappa = data::shipped("kappa").unwrap();
    let t0 = Instant::now();
    match equivalent(&k, &kappa, &SearchBudget::for_diagram(&k)) {
        Some(w) => {
            println!("witness of {} moves in {:.1?}", w.len(), t0.elapsed());
            print!("{}", w.to_trace());
            let end = w.replay(&k).unwrap();
            assert_eq!(digest(&end), digest(&kappa));
        }
        None => println!("no witness within budget ({:.1?})", t0.elapsed()),
    }
}
