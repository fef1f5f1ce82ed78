//! Parsing, validation and canonical forms: a relabelled, rotated copy of a
//! diagram has the same digest; a malformed one reports its violations.
//!
//! cargo run --example parse_canon

use spatial_theta::canon::{canonical_diagram, digest, isomorphic};
use spatial_theta::{data, parse_diagram};

fn main() {
    let k = data::shipped("kinoshita").unwrap();
    let shifted = k.relabel(|a| 100 + 3 * a);
    println!("kinoshita  {}", digest(&k));
    println!("relabelled {}", digest(&shifted));
    assert!(isomorphic(&k, &shifted));
    print!("canonical form:\n{}", canonical_diagram(&k));

    let mirror = data::shipped("trefoil").unwrap().mirror();
    println!("trefoil vs its mirror isomorphic: {}", isomorphic(&mirror, &data::shipped("trefoil").unwrap()));

    match parse_diagram("X 1 2 3 4\nV 1 2 5") {
        Ok(d) => println!("parsed, validation: {}", d.validate()),
        Err(e) => println!("rejected: {e}"),
    }
    match parse_diagram("X 1 2 third 4") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
