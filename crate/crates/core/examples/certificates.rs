//! Both nontriviality certificates for the shipped Kinoshita diagram, and the
//! failing certificate for the trivial theta-curve.
//!
//! cargo run --release --example certificates

use spatial_theta::certify::{verify_proof1, verify_proof2, NeighbourhoodPremise};
use spatial_theta::data;
use spatial_theta::moves::SearchBudget;
use spatial_theta::surgery::FillingSpec;

fn main() {
    let kin = data::shipped("kinoshita").unwrap();
    let budget = SearchBudget::for_diagram(&kin);
    let rec = data::shipped_filling();

    let c1 = verify_proof1(&kin, rec.edge, rec.selected, &budget);
    print!("{}", c1.to_text());
    println!("recheck: {}\n", c1.recheck());

    let spine = data::shipped("spineG").unwrap();
    let premise = NeighbourhoodPremise {
        graph: "kinoshita".into(),
        source: "spineG is an IH move of kinoshita at its crossing-free edge".into(),
    };
    let c2 = verify_proof2(&spine, 0, &premise, &budget);
    print!("{}", c2.to_text());
    println!("recheck: {}\n", c2.recheck());

    let trivial = data::shipped("trivial").unwrap();
    let c3 = verify_proof1(&trivial, 0, FillingSpec::new(0), &budget);
    print!("{}", c3.to_text());
}
