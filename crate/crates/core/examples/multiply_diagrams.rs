//! Multiply two partitions of degree 6, then look at the statistics,
//! involution and planarity of the factors.
//!
//! Run with `cargo run --example multiply_diagrams`.

use diacong::diagram::{Diagram, Family};

fn main() {
    let alpha: Diagram = "P6 [{1,4},{2,3,-4,-5},{5,6},{-1,-2,-6},{-3}]".parse().unwrap();
    let beta: Diagram = "P6 [{1,2},{3,4,-1},{5,-4,-5,-6},{6},{-2},{-3}]".parse().unwrap();
    let ab = alpha.product(&beta);
    println!("alpha      = {alpha}");
    println!("beta       = {beta}");
    println!("alpha.beta = {ab}");

    let s = alpha.stats();
    println!("rank {}, dom {:?}, codom {:?}", s.rank, s.dom, s.codom);
    println!("ker {:?}, coker {:?}", s.ker, s.coker);

    println!("alpha* = {}", alpha.star());
    println!("(alpha.beta)* = beta*.alpha*: {}", ab.star() == beta.star().product(&alpha.star()));
    for (name, d) in [("alpha", &alpha), ("beta", &beta)] {
        let families: Vec<String> = Family::ALL
            .iter()
            .filter(|f| d.is_member(**f))
            .map(|f| f.to_string())
            .collect();
        println!("{name}: planar {}, member of {}", d.is_planar(), families.join(", "));
    }
}
