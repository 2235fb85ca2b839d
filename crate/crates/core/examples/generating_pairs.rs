//! How many pairs it takes to generate the congruences of the S_2 diamond
//! in P_3. Reports counts rather than asserting anything.
//!
//! Run with `cargo run --release --example generating_pairs`.

use diacong::catalog::{in_pair_congruence, INPair, NormalKind, NormalSubgroupSpec, Relation};
use diacong::congruence::{generated_congruence, Congruence};
use diacong::diagram::Family;
use diacong::monoid::enumerate;

fn pairs_in(c: &Congruence, not_in: &[&Congruence]) -> Vec<(usize, usize)> {
    let n = c.classes().len();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| c.related(x, y) && not_in.iter().all(|d| !d.related(x, y)))
        .collect()
}

fn main() {
    let m = enumerate(Family::P, 3).unwrap();
    let s2 = NormalSubgroupSpec::new(2, NormalKind::Symmetric).unwrap();
    let top = INPair::new(&m, 1, s2).unwrap();
    let low = INPair::new(&m, 1, NormalSubgroupSpec::trivial(2)).unwrap();
    let get = |p: &INPair, k| in_pair_congruence(&m, p, k).unwrap();
    let (lam, rho, mu, r) = (
        get(&top, Relation::Lambda),
        get(&top, Relation::Rho),
        get(&top, Relation::Mu),
        get(&top, Relation::R),
    );
    let (lam1, rho1, r1) = (get(&low, Relation::Lambda), get(&low, Relation::Rho), get(&low, Relation::R));

    // Candidate generating sets: (first pair outside the lower corner,
    // second pair outside the middle).
    let cases = [
        ("rho(S_2)", &rho, pairs_in(&rho, &[&rho1]), pairs_in(&rho, &[&mu])),
        ("lam(S_2)", &lam, pairs_in(&lam, &[&lam1]), pairs_in(&lam, &[&mu])),
        ("R(S_2)", &r, pairs_in(&r, &[&r1]), pairs_in(&r, &[&lam, &rho])),
    ];
    for (name, target, first, second) in cases {
        let all = pairs_in(target, &[]);
        let stride = 1 + first.len() * second.len() / 20_000;
        let (mut tried, mut hit) = (0, 0);
        for (i, &a) in first.iter().enumerate() {
            for (j, &b) in second.iter().enumerate() {
                if (i * second.len() + j) % stride == 0 {
                    tried += 1;
                    hit += (generated_congruence(&m, &[a, b]).unwrap() == *target) as usize;
                }
            }
        }
        // Pairs drawn from the whole congruence, most of which fall short.
        let prescribed = |a, b| first.contains(&a) && second.contains(&b);
        let (mut other_tried, mut other_hit, mut other_form) = (0, 0, 0);
        for (i, &a) in all.iter().enumerate().step_by(37) {
            let b = all[(i * 101 + 7) % all.len()];
            other_tried += 1;
            if generated_congruence(&m, &[a, b]).unwrap() == *target {
                other_hit += 1;
                other_form += (prescribed(a, b) || prescribed(b, a)) as usize;
            }
        }
        let single = all.iter().any(|&p| generated_congruence(&m, &[p]).unwrap() == *target);
        println!("{name}: generated by one pair: {single}");
        println!("  prescribed pairs: {hit}/{tried} sampled combinations generate it");
        println!(
            "  arbitrary pairs:  {other_hit}/{other_tried} sampled combinations generate it, {other_form} of those in the prescribed form"
        );
    }
}
