//! Enumerate every family at small degree and print sizes, the ranks of the
//! J-classes, and the shape of the minimal ideal.
//!
//! Run with `cargo run --release --example enumerate_families`.

use diacong::diagram::Family;
use diacong::monoid::{check_minimal_ideal, enumerate, green, maximal_subgroup};

fn main() {
    for f in Family::ALL {
        for n in 1..=4 {
            let m = enumerate(f, n).unwrap();
            let g = green(&m);
            let sizes: Vec<String> = g
                .chain
                .iter()
                .zip(&g.chain_ranks)
                .map(|(c, r)| format!("{r}:{}", c.len()))
                .collect();
            let mi = check_minimal_ideal(&m);
            let top = maximal_subgroup(&m, *g.chain_ranks.last().unwrap()).unwrap();
            println!(
                "{f:>2}_{n}: {:>5} elements, J-classes [{}], minimal ideal {} x {}, group of units {}",
                m.len(),
                sizes.join(" "),
                mi.r_classes,
                mi.l_classes,
                top.elements.len()
            );
        }
    }
}
