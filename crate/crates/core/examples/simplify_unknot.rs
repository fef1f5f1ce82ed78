//! Unknot recognition: each constituent of the Kinoshita graph is reduced to
//! the round circle with a replayable witness; the trefoil is obstructed.
//!
//! cargo run --release --example simplify_unknot

use spatial_theta::data;
use spatial_theta::moves::{simplify, unknot_status, SearchBudget, UnknotVerdict};

fn main() {
    let k = data::shipped("kinoshita").unwrap();
    for e in 0..3 {
        let c = k.constituent(e).unwrap();
        let budget = SearchBudget::for_diagram(&c);
        let (small, seq) = simplify(&c, &budget);
        println!("constituent {e}: {} -> {} crossings", c.crossing_count(), small.crossing_count());
        print!("{}", seq.to_trace());
        let end = seq.replay(&c).expect("witness replays");
        assert!(end.is_zero_crossing_unknot());
    }
    for name in ["trefoil", "fig8", "kappa"] {
        let d = data::shipped(name).unwrap();
        match unknot_status(&d, &SearchBudget::for_diagram(&d)) {
            v @ UnknotVerdict::Knotted { .. } => println!("{name}: {v}"),
            v => println!("{name}: unexpected {v}"),
        }
    }
}
