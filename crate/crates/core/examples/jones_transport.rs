//! Carry planar partitions into the Jones monoid of twice the degree and
//! partial permutations into the Brauer monoid, then transport congruences
//! along the first embedding.
//!
//! Run with `cargo run --release --example jones_transport`.

use diacong::congruence::{all_congruences, Congruence};
use diacong::diagram::{Diagram, Family};
use diacong::monoid::{enumerate, sandwich_matrix};

fn main() {
    let a: Diagram = "P3 [{1,-1,-2},{2,3},{-3}]".parse().unwrap();
    let t = a.pp_to_jones().unwrap();
    println!("{a} -> {t} (rank {} -> {})", a.rank(), t.rank());
    let p: Diagram = "P3 [{1,-2},{2},{3,-3},{-1}]".parse().unwrap();
    println!("{p} -> {}", p.pperm_to_brauer().unwrap());

    let pp = enumerate(Family::PP, 2).unwrap();
    let j = enumerate(Family::J, 4).unwrap();
    let image: Vec<usize> = pp
        .elements()
        .iter()
        .map(|d| j.require(&d.pp_to_jones().unwrap()).unwrap())
        .collect();
    let target = all_congruences(&j).unwrap();
    for c in &all_congruences(&pp).unwrap().congruences {
        let mut raw = vec![0u32; j.len()];
        for (x, &y) in image.iter().enumerate() {
            raw[y] = c.classes()[x];
        }
        let moved = Congruence::from_classes(&j, &raw).unwrap();
        println!(
            "PP_2 congruence with {:>2} classes -> J_4 congruence #{}",
            c.num_classes(),
            target.position(&moved).unwrap()
        );
    }

    for n in [5, 7] {
        let m = enumerate(Family::J, n).unwrap();
        for q in (n % 2..n).step_by(2) {
            let s = sandwich_matrix(&m, q).unwrap();
            println!(
                "J_{n} rank {q}: {} projections, distinct rows {}, rows without a zero {}",
                s.projections.len(),
                s.distinct_rows(),
                s.full_rows().len()
            );
        }
    }
}
