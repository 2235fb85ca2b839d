//! Retractions, the relations nu_N, and the five congruences of each
//! IN-pair of a monoid.
//!
//! Run with `cargo run --release --example retractions -- B 4`.

use diacong::catalog::{in_pair_congruences, nu_n, retraction};
use diacong::diagram::Family;
use diacong::monoid::enumerate;
use diacong::suite::in_pairs;

fn main() {
    let mut args = std::env::args().skip(1);
    let f: Family = args.next().as_deref().unwrap_or("P").parse().unwrap();
    let n: usize = args.next().as_deref().unwrap_or("3").parse().unwrap();
    let m = enumerate(f, n).unwrap();
    for q in m.ranks_present() {
        match retraction(&m, q).unwrap() {
            Some(r) => {
                let moved = m.ideal(q).iter().filter(|&&x| r.apply(x) != Some(x)).count();
                println!("I_{q} retracts onto the minimal ideal ({moved} elements move)");
            }
            None => println!("I_{q} is not retractable"),
        }
    }
    for p in in_pairs(&m).unwrap() {
        let nu = nu_n(&m, &p.nsub).unwrap();
        let off_diagonal = nu.iter().filter(|(x, y)| x != y).count();
        println!(
            "(I_{}, {}): nu has {off_diagonal} off-diagonal pairs, retractable {}",
            p.ideal_rank, p.nsub, p.retractable
        );
        for (kind, c) in in_pair_congruences(&m, &p).unwrap() {
            println!("    {kind:?}: {} classes", c.num_classes());
        }
    }
}
