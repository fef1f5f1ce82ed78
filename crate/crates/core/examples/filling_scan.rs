//! Scans twist fillings of the crossing-free edge of the Kinoshita diagram and
//! prints the record stored in `data/kinoshita_filling.json`.
//!
//! cargo run --release --example filling_scan > data/kinoshita_filling.json

use spatial_theta::data::{shipped, FillingRecord};
use spatial_theta::surgery::{crossing_free_edges, scan_fillings, scan_specs};

fn main() {
    let k = shipped("kinoshita").unwrap();
    let kappa = shipped("kappa").unwrap();
    let det = spatial_theta::invariants::determinant(&kappa).unwrap();
    let edge = crossing_free_edges(&k)[0];
    let (lo, hi) = (-3, 3);
    let scan = scan_fillings(&k, edge, &kappa, &scan_specs(lo..=hi)).unwrap();
    for e in &scan {
        eprintln!("{:<16} crossings {:?} det {:?} alexander {} jones {:?}", e.spec.to_string(), e.crossings, e.determinant, e.alexander_matches, e.jones);
    }
    // prefer an exact Jones match, then the fewest twists
    let selected = scan
        .iter()
        .filter(|e| e.matches(det))
        .min_by_key(|e| (e.jones != spatial_theta::surgery::JonesMatch::Exact, e.spec.twists.abs(), e.spec.flip))
        .expect("some filling matches kappa")
        .spec;
    eprintln!("selected {selected}");
    let record = FillingRecord {
        diagram: "kinoshita".into(),
        edge,
        reference: "kappa".into(),
        range: (lo, hi),
        selected,
        scan,
    };
    println!("{}", serde_json::to_string_pretty(&record).unwrap());
}
