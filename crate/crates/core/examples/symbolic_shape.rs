//! Predicted lattices as pure structure, for degrees far beyond
//! enumeration.
//!
//! Run with `cargo run --example symbolic_shape -- B 12`.

use diacong::catalog::predicted_shape;
use diacong::diagram::Family;

fn main() {
    let mut args = std::env::args().skip(1);
    let f: Family = args.next().as_deref().unwrap_or("P").parse().unwrap();
    let n: usize = args.next().as_deref().unwrap_or("10").parse().unwrap();
    let s = predicted_shape(f, n).unwrap();
    let star = s.nodes.iter().filter(|x| x.star).count();
    println!("{f}_{n}: {} congruences, {star} star-compatible (structure only)", s.nodes.len());
    for (a, b) in &s.hasse {
        println!("  {} < {}", s.name(*a), s.name(*b));
    }
}
