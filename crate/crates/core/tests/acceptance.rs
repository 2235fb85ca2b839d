//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use diacong::catalog::{
    diff_lattices, predicted_lattice, predicted_shape, CongruenceLabel, NormalKind, NormalSubgroupSpec, Tag,
};
use diacong::congruence::{
    all_congruences, generated_congruence, is_star_congruence, Congruence, CongruenceLattice,
};
use diacong::diagram::{Diagram, Family};
use diacong::monoid::{enumerate, green, green_oracle, sandwich_matrix, Monoid};
use diacong::suite::{self, classifier_report};

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn d(n: usize, blocks: &[&[i32]]) -> Diagram {
    let blocks: Vec<Vec<i32>> = blocks.iter().map(|b| b.to_vec()).collect();
    Diagram::new(n, &blocks).unwrap()
}

/// Brute force against the prediction: the diff, plus equality of the
/// sorted congruence lists and Hasse edges.
fn lattice_matches(o: &mut Outcome, f: Family, n: usize, nodes: Option<usize>) -> (Monoid, CongruenceLattice) {
    let m = enumerate(f, n).unwrap();
    let brute = all_congruences(&m).unwrap();
    let predicted = predicted_lattice(f, n).unwrap();
    let shape = predicted_shape(f, n).unwrap();
    let diff = diff_lattices(&m, &brute, &shape).unwrap();
    o.check(diff.pass(), format!("{f}_{n}: {diff:?}"));
    o.check(
        brute.congruences == predicted.congruences && brute.hasse == predicted.hasse,
        format!("{f}_{n}: lattices differ"),
    );
    if let Some(k) = nodes {
        o.check(brute.len() == k, format!("{f}_{n}: {} nodes, expected {k}", brute.len()));
    }
    (m, predicted)
}

fn label_order(l: &CongruenceLattice) -> HashMap<(String, String), bool> {
    let mut out = HashMap::new();
    for a in 0..l.len() {
        for b in 0..l.len() {
            out.insert((l.name(a), l.name(b)), l.leq[a][b]);
        }
    }
    out
}

fn has(l: &CongruenceLattice, label: CongruenceLabel) -> Option<usize> {
    l.position_of_label(&label)
}

fn criterion_1(o: &mut Outcome) {
    let start = Instant::now();
    let alpha = d(6, &[&[1, 4], &[2, 3, -4, -5], &[5, 6], &[-1, -2, -6], &[-3]]);
    let beta = d(6, &[&[1, 2], &[3, 4, -1], &[5, -4, -5, -6], &[6], &[-2], &[-3]]);
    let ab = alpha.product(&beta);
    let stats = alpha.stats();
    let elapsed = start.elapsed();
    o.check(
        ab == d(6, &[&[1, 4], &[2, 3, -1, -4, -5, -6], &[5, 6], &[-2], &[-3]]),
        format!("product {ab}"),
    );
    o.check(stats.rank == 1, "rank");
    o.check(stats.dom == vec![2, 3] && stats.codom == vec![4, 5], "dom/codom");
    o.check(stats.ker == vec![vec![1, 4], vec![2, 3], vec![5, 6]], "ker");
    o.check(stats.coker == vec![vec![1, 2, 6], vec![3], vec![4, 5]], "coker");
    o.check(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"));
}

fn criterion_2(o: &mut Outcome) {
    let start = Instant::now();
    let cells = [
        (Family::P, 3, Some(203)),
        (Family::PB, 3, None),
        (Family::B, 4, Some(105)),
        (Family::J, 5, Some(42)),
        (Family::M, 3, None),
        (Family::PP, 3, None),
        (Family::I, 3, Some(34)),
        (Family::O, 3, Some(20)),
    ];
    for (f, n, size) in cells {
        let m = enumerate(f, n).unwrap();
        if let Some(k) = size {
            o.check(m.len() == k, format!("{f}_{n} has {} elements", m.len()));
        }
        let (g, h) = (green(&m), green_oracle(&m));
        o.check(
            g.r == h.r && g.l == h.l && g.h == h.h && g.d == h.d && g.j == h.j && g.chain == h.chain,
            format!("{f}_{n}: Green's relations differ from the oracle"),
        );
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"));
}

fn criterion_3(o: &mut Outcome) {
    let start = Instant::now();
    for n in 1..=3 {
        let m = enumerate(Family::O, n).unwrap();
        let l = all_congruences(&m).unwrap();
        let rees: Vec<Congruence> = (0..=n).map(|q| diacong::catalog::rees(&m, q).unwrap()).collect();
        o.check(l.is_chain() && l.len() == n + 1, format!("O_{n}: {} nodes", l.len()));
        o.check(l.congruences == rees, format!("O_{n}: not the Rees chain"));
    }
    let m = enumerate(Family::I, 3).unwrap();
    let l = all_congruences(&m).unwrap();
    o.check(l.is_chain() && l.len() == 7, format!("I_3: {} nodes", l.len()));
    let predicted = predicted_lattice(Family::I, 3).unwrap();
    o.check(predicted.congruences == l.congruences, "I_3: chain differs from prediction");
    // Every pair in a step and not in the step below generates the step.
    for k in 1..l.len() {
        let (hi, lo) = (&l.congruences[k], &l.congruences[k - 1]);
        for x in 0..m.len() {
            for y in x + 1..m.len() {
                if hi.related(x, y) && !lo.related(x, y) {
                    let c = generated_congruence(&m, &[(x, y)]).unwrap();
                    o.check(&c == hi, format!("I_3 step {k}: pair ({x},{y}) generates less"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"));
}

fn criterion_4(o: &mut Outcome) {
    let start = Instant::now();
    lattice_matches(o, Family::P, 2, Some(13));
    let (m, l) = lattice_matches(o, Family::P, 3, Some(16));
    let g = |kind| NormalSubgroupSpec::new(3, kind).unwrap();
    let s2 = NormalSubgroupSpec::new(2, NormalKind::Symmetric).unwrap();
    use CongruenceLabel::*;
    for q in 0..=1 {
        let t = Tag::Rank(q);
        for label in [Mu(t), Lambda(t), Rho(t), Rees(q)] {
            o.check(has(&l, label).is_some(), format!("P_3: no {label}"));
        }
    }
    for label in [Mu(Tag::Group(s2)), Lambda(Tag::Group(s2)), Rho(Tag::Group(s2)), RN(s2)] {
        o.check(has(&l, label).is_some(), format!("P_3: no {label}"));
    }
    let wick = [RN(g(NormalKind::Alternating)), RN(g(NormalKind::Symmetric)), Rees(3)];
    let pos: Vec<Option<usize>> = wick.iter().map(|w| has(&l, *w)).collect();
    if let [Some(a), Some(s), Some(t)] = pos[..] {
        o.check(l.hasse.contains(&(a, s)) && l.hasse.contains(&(s, t)), "P_3: wick covers");
    } else {
        o.check(false, "P_3: wick labels missing");
    }
    let report = classifier_report(&m).unwrap();
    o.check(
        report.pairs == 203 * 202 / 2 && report.mismatches.is_empty(),
        format!("P_3 classifier: {} disagreements", report.mismatches.len()),
    );
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(600), format!("took {elapsed:?}"));
}

fn criterion_5(o: &mut Outcome) {
    for n in 2..=3 {
        let (_, pb) = lattice_matches(o, Family::PB, n, Some(if n == 2 { 13 } else { 16 }));
        let p = predicted_lattice(Family::P, n).unwrap();
        o.check(
            label_order(&pb) == label_order(&p),
            format!("PB_{n} and P_{n} lattices are not isomorphic by label"),
        );
        let m = enumerate(Family::PB, n).unwrap();
        let report = classifier_report(&m).unwrap();
        o.check(report.mismatches.is_empty(), format!("PB_{n} classifier disagrees"));
    }
}

fn criterion_6(o: &mut Outcome) {
    lattice_matches(o, Family::PP, 2, Some(9));
    lattice_matches(o, Family::PP, 3, None);
    lattice_matches(o, Family::M, 2, None);
    lattice_matches(o, Family::M, 3, Some(10));
    let pp = enumerate(Family::PP, 2).unwrap();
    let j = enumerate(Family::J, 4).unwrap();
    let image: Vec<usize> = pp
        .elements()
        .iter()
        .map(|a| j.require(&a.pp_to_jones().unwrap()).unwrap())
        .collect();
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    o.check(seen.len() == pp.len() && pp.len() == j.len(), "PP_2 -> J_4 is not a bijection");
    for x in 0..pp.len() {
        for y in 0..pp.len() {
            o.check(image[pp.mul(x, y)] == j.mul(image[x], image[y]), "PP_2 -> J_4 is not multiplicative");
        }
    }
    let transported: Vec<Congruence> = all_congruences(&pp)
        .unwrap()
        .congruences
        .iter()
        .map(|c| {
            let mut raw = vec![0u32; j.len()];
            for x in 0..pp.len() {
                raw[image[x]] = c.classes()[x];
            }
            Congruence::from_classes(&j, &raw).unwrap()
        })
        .collect();
    let target = all_congruences(&j).unwrap();
    let as_set = |v: &[Congruence]| {
        let mut v: Vec<Vec<u32>> = v.iter().map(|c| c.classes().to_vec()).collect();
        v.sort();
        v
    };
    o.check(as_set(&transported) == as_set(&target.congruences), "Cong(PP_2) does not transport onto Cong(J_4)");
}

fn criterion_7(o: &mut Outcome) {
    let start = Instant::now();
    lattice_matches(o, Family::B, 3, Some(7));
    let (m, l) = lattice_matches(o, Family::B, 4, Some(19));
    use CongruenceLabel::*;
    let s2 = NormalSubgroupSpec::new(2, NormalKind::Symmetric).unwrap();
    let k = NormalSubgroupSpec::new(4, NormalKind::Klein).unwrap();
    for t in [Tag::Rank(0), Tag::Group(s2), Tag::Rank(2), Tag::Group(k)] {
        for label in [Mu(t), Lambda(t), Rho(t)] {
            o.check(has(&l, label).is_some(), format!("B_4: no {label}"));
        }
    }
    let report = classifier_report(&m).unwrap();
    o.check(report.mismatches.is_empty(), format!("B_4 classifier: {} disagreements", report.mismatches.len()));
    let ideal = m.ideal(2);
    let hat = |x: usize| m.require(&m.element(x).hat_brauer().unwrap()).unwrap();
    for &x in &ideal {
        if m.rank(x) == 0 {
            o.check(hat(x) == x, "hat is not the identity on I_0");
        }
        for &y in &ideal {
            o.check(hat(m.mul(x, y)) == m.mul(hat(x), hat(y)), "hat is not multiplicative on I_2");
        }
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"));
}

fn criterion_8(o: &mut Outcome) {
    lattice_matches(o, Family::J, 3, Some(5));
    lattice_matches(o, Family::J, 4, Some(9));
    lattice_matches(o, Family::J, 5, Some(6));
    lattice_matches(o, Family::J, 6, None);
    let pp = enumerate(Family::PP, 3).unwrap();
    for a in pp.elements() {
        let t = a.pp_to_jones().unwrap();
        o.check(t.is_member(Family::J) && t.rank() == 2 * a.rank(), format!("rank doubling fails at {a}"));
    }
    for n in [5usize, 7] {
        let j = enumerate(Family::J, n).unwrap();
        for q in (n % 2..=n).step_by(2) {
            let s = sandwich_matrix(&j, q).unwrap();
            let k = binomial(n + 1, (n - q) / 2) * (q + 1) / (n + 1);
            o.check(s.projections.len() == k, format!("J_{n}: {} projections of rank {q}", s.projections.len()));
            if (3..=n.saturating_sub(2)).contains(&q) {
                o.check(s.full_rows().is_empty(), format!("J_{n} rank {q}: a row has no zero"));
            }
            if (2..=n.saturating_sub(2)).contains(&q) {
                o.check(s.distinct_rows(), format!("J_{n} rank {q}: repeated row"));
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_9(o: &mut Outcome) {
    let checks = suite::run(&suite::default_cells(), |_| {}).unwrap();
    for c in checks.iter().filter(|c| !c.pass) {
        o.check(false, format!("{} {}", c.name, c.detail));
    }
    o.check(checks.len() > 1000, format!("only {} checks ran", checks.len()));
}

fn criterion_10(o: &mut Outcome) {
    // Congruences left after removing every lam and rho from each lattice.
    let census = [
        (Family::O, 3, 4, 4),
        (Family::I, 3, 7, 7),
        (Family::P, 2, 13, 7),
        (Family::P, 3, 16, 10),
        (Family::PB, 2, 13, 7),
        (Family::PB, 3, 16, 10),
        (Family::PP, 2, 9, 5),
        (Family::PP, 3, 10, 6),
        (Family::M, 2, 9, 5),
        (Family::M, 3, 10, 6),
        (Family::B, 3, 7, 5),
        (Family::B, 4, 19, 11),
        (Family::J, 3, 5, 3),
        (Family::J, 4, 9, 5),
        (Family::J, 5, 6, 4),
        (Family::J, 6, 10, 6),
    ];
    for (f, n, total, star) in census {
        let m = enumerate(f, n).unwrap();
        let l = all_congruences(&m).unwrap();
        let found = l.congruences.iter().filter(|c| is_star_congruence(&m, c)).count();
        o.check(
            l.len() == total && found == star,
            format!("{f}_{n}: {found} of {} star-compatible, expected {star} of {total}", l.len()),
        );
        let p = predicted_lattice(f, n).unwrap();
        for (i, c) in p.congruences.iter().enumerate() {
            let lam_or_rho = p.labels[i]
                .iter()
                .all(|x| matches!(x, CongruenceLabel::Lambda(_) | CongruenceLabel::Rho(_)));
            o.check(
                is_star_congruence(&m, c) != lam_or_rho,
                format!("{f}_{n}: {} has the wrong star compatibility", p.name(i)),
            );
        }
    }
}

fn main() {
    let criteria: [(&str, fn(&mut Outcome)); 10] = [
        ("worked product and statistics", criterion_1),
        ("Green's relations against the ideal oracle", criterion_2),
        ("O_n and I_3 chains", criterion_3),
        ("P_2, P_3 lattices and pair classification", criterion_4),
        ("PB_2, PB_3 lattices", criterion_5),
        ("PP_n, M_n lattices and transport to J_4", criterion_6),
        ("B_3, B_4 lattices, classification and hat retraction", criterion_7),
        ("J_3..J_6 lattices, rank doubling and projections", criterion_8),
        ("structural property suite", criterion_9),
        ("star-congruence census", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::new();
        run(&mut o);
        let secs = start.elapsed().as_secs_f64();
        if o.failures.is_empty() {
            println!("PASS {:>2} {name} ({secs:.2}s)", i + 1);
        } else {
            failed += 1;
            println!("FAIL {:>2} {name} ({secs:.2}s)", i + 1);
            for f in o.failures.iter().take(10) {
                println!("     {f}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
