//! Invariant table for the shipped diagrams.
//!
//! cargo run --release --example invariants

use spatial_theta::invariants::{alexander, colorings, determinant, jones, yamada};
use spatial_theta::{data, DiagramKind};

fn main() {
    for name in data::names() {
        let d = data::shipped(name).unwrap();
        println!("{name} ({} crossings)", d.crossing_count());
        match d.kind {
            DiagramKind::Knot => {
                println!("  det        {}", determinant(&d).unwrap());
                println!("  alexander  {}", alexander(&d).unwrap());
                println!("  jones      {}", jones(&d).unwrap());
                println!("  col3 col5  {} {}", colorings(&d, 3).unwrap(), colorings(&d, 5).unwrap());
            }
            DiagramKind::Theta => {
                println!("  yamada     {}", yamada(&d).unwrap());
                for e in 0..3 {
                    let c = d.constituent(e).unwrap();
                    println!("  minus e{e}   det {} jones {}", determinant(&c).unwrap(), jones(&c).unwrap());
                }
            }
        }
    }
}
