//! Name the principal congruence of a few pairs, then check the classifier
//! against closure on every pair of several monoids.
//!
//! Run with `cargo run --release --example classify_pairs`.

use diacong::catalog::classify_pair;
use diacong::diagram::{Diagram, Family};
use diacong::monoid::enumerate;
use diacong::suite::classifier_report;

fn main() {
    let pairs = [
        (Family::P, 3, "[{1,2,3},{-1,-2,-3}]", "[{1,2,3},{-1},{-2,-3}]"),
        (Family::P, 3, "[{1,-2},{2,-1},{3},{-3}]", "[{1,-1},{2,-2},{3},{-3}]"),
        (Family::P, 3, "[{1,-2},{2,-3},{3,-1}]", "[{1,-1},{2,-2},{3,-3}]"),
        (Family::B, 4, "[{1,-2},{2,-1},{3,-4},{4,-3}]", "[{1,-1},{2,-2},{3,-3},{4,-4}]"),
        (Family::J, 4, "[{1,2},{3,4},{-1,-2},{-3,-4}]", "[{1,4},{2,3},{-1,-2},{-3,-4}]"),
    ];
    for (f, n, a, b) in pairs {
        let a = Diagram::parse(a, Some(n)).expect("diagram");
        let b = Diagram::parse(b, Some(n)).expect("diagram");
        let label = classify_pair(f, n, &a, &b).expect("classify");
        println!("{f}_{n}: ({a}, {b}) generates {label}");
    }
    println!();
    let cells = [
        (Family::I, 3),
        (Family::O, 3),
        (Family::P, 2),
        (Family::P, 3),
        (Family::PB, 3),
        (Family::PP, 3),
        (Family::M, 3),
        (Family::B, 3),
        (Family::B, 4),
        (Family::J, 4),
        (Family::J, 5),
        (Family::J, 6),
    ];
    for (f, n) in cells {
        let m = enumerate(f, n).expect("enumerate");
        let report = classifier_report(&m).expect("report");
        println!(
            "{f}_{n}: {} pairs, {} disagreements",
            report.pairs,
            report.mismatches.len()
        );
        for (x, y, label) in report.mismatches.iter().take(5) {
            println!("  {} {} -> {label}", m.element(*x), m.element(*y));
        }
    }
}
