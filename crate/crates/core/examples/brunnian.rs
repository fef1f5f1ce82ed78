//! The almost-trivial property: every constituent unknotted.
//!
//! cargo run --release --example brunnian

use spatial_theta::certify::brunnian_check;
use spatial_theta::data;
use spatial_theta::moves::SearchBudget;

fn main() {
    for name in ["trivial", "kinoshita", "spineG", "tunnel_trefoil"] {
        let t = data::shipped(name).unwrap();
        let report = brunnian_check(&t, &SearchBudget::for_diagram(&t)).unwrap();
        print!("{}", report.to_text());
    }
}
