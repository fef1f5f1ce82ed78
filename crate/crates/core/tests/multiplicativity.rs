mod common;

use common::*;
use spatial_theta::invariants::{alexander, colorings, determinant, jones};
use spatial_theta::{connected_sum, parse_diagram, Diagram};

/// Unknot, trefoil and figure-eight; the unknot as a one-crossing kink so it
/// has an arc to splice at.
fn summands() -> Vec<(&'static str, Diagram)> {
    vec![
        ("unknot", parse_diagram("X 1 2 2 1").unwrap()),
        ("trefoil", shipped("trefoil")),
        ("fig8", shipped("fig8")),
    ]
}

#[test]
fn invariants_multiply_under_connected_sum() {
    let ks = summands();
    for (n1, k1) in &ks {
        for (n2, k2) in &ks {
            let s = connected_sum(k1, 1, k2, 1).unwrap();
            let ctx = format!("{n1} # {n2}");
            assert_eq!(determinant(&s).unwrap(), determinant(k1).unwrap() * determinant(k2).unwrap(), "{ctx}");
            assert_eq!(alexander(&s).unwrap().poly, alexander(k1).unwrap().poly * alexander(k2).unwrap().poly, "{ctx}");
            assert_eq!(jones(&s).unwrap().poly, jones(k1).unwrap().poly * jones(k2).unwrap().poly, "{ctx}");
            for p in [3, 5] {
                let c = colorings(&s, p).unwrap();
                assert_eq!(p * c, colorings(k1, p).unwrap() * colorings(k2, p).unwrap(), "{ctx} p={p}");
                assert_eq!(c, brute_colorings(&s, p), "{ctx} p={p}");
            }
        }
    }
}

#[test]
fn kink_unknot_is_unknot() {
    let k = parse_diagram("X 1 2 2 1").unwrap();
    assert_eq!(determinant(&k).unwrap(), 1);
    assert!(jones(&k).unwrap().poly.is_one());
    assert_eq!(colorings(&k, 3).unwrap(), 3);
}

#[test]
fn kappa_is_the_shipped_sum() {
    let s = connected_sum(&shipped("trefoil"), 1, &shipped("fig8"), 1).unwrap();
    assert_eq!(spatial_theta::canon::digest(&s), spatial_theta::canon::digest(&shipped("kappa")));
    assert_eq!(determinant(&s).unwrap(), 15);
}
