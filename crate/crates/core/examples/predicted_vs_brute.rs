//! Compare the brute-force congruence lattice of each small diagram monoid
//! with its predicted lattice.
//!
//! Run with `cargo run --release --example predicted_vs_brute`.

use diacong::catalog::{diff_lattices, predicted_shape};
use diacong::congruence::all_congruences;
use diacong::diagram::Family;
use diacong::monoid::enumerate;

fn main() {
    let cells = [
        (Family::O, 3),
        (Family::I, 3),
        (Family::P, 2),
        (Family::P, 3),
        (Family::PB, 2),
        (Family::PB, 3),
        (Family::PP, 2),
        (Family::PP, 3),
        (Family::M, 2),
        (Family::M, 3),
        (Family::B, 3),
        (Family::B, 4),
        (Family::J, 3),
        (Family::J, 4),
        (Family::J, 5),
        (Family::J, 6),
    ];
    for (f, n) in cells {
        let m = enumerate(f, n).expect("enumerate");
        let brute = all_congruences(&m).expect("lattice");
        let shape = predicted_shape(f, n).expect("in range");
        let d = diff_lattices(&m, &brute, &shape).expect("diff");
        let verdict = if d.pass() { "PASS" } else { "FAIL" };
        println!(
            "{f}_{n}: {} elements, brute {} nodes, predicted {} nodes: {verdict}",
            m.len(),
            d.brute_nodes,
            d.predicted_nodes
        );
        if !d.pass() {
            println!("  {d:?}");
        }
    }
}
