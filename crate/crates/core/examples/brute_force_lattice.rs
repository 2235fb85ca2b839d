//! Compute every congruence of a small monoid by closure and print the
//! Hasse diagram.
//!
//! Run with `cargo run --release --example brute_force_lattice -- PB 2`.

use diacong::congruence::{all_congruences, is_star_congruence};
use diacong::diagram::Family;
use diacong::monoid::enumerate;

fn main() {
    let mut args = std::env::args().skip(1);
    let f: Family = args.next().as_deref().unwrap_or("P").parse().unwrap();
    let n: usize = args.next().as_deref().unwrap_or("2").parse().unwrap();
    let m = enumerate(f, n).unwrap();
    let l = all_congruences(&m).unwrap();
    println!("{f}_{n}: {} elements, {} congruences", m.len(), l.len());
    for (i, c) in l.congruences.iter().enumerate() {
        let star = if is_star_congruence(&m, c) { "*" } else { " " };
        println!("  #{i:<2}{star} {:>3} classes, sizes {:?}", c.num_classes(), c.class_sizes());
    }
    for (a, b) in &l.hasse {
        println!("  #{a} < #{b}");
    }
}
