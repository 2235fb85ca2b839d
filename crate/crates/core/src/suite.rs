//! Batch verification: every structural law the library relies on, checked
//! on concrete monoids and reported as a scoreboard.

use rayon::prelude::*;

use crate::catalog::{
    all_retractions, classify_pair, diff_lattices, in_pair_congruence, in_pair_congruences,
    liftable_check, materialize, minimal_ideal_partition, nu_n, nu_oracle, predicted_shape,
    INPair, NormalSubgroupSpec, Relation,
};
use crate::congruence::{all_congruences, join, leq, meet, principal, Congruence};
use crate::diagram::Family;
use crate::error::Result;
use crate::monoid::{self, check_minimal_ideal, check_stability, green, green_oracle, Monoid};

/// One line of the scoreboard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// The cells the default `verify` run covers.
pub fn default_cells() -> Vec<(Family, usize)> {
    let mut cells = Vec::new();
    for f in Family::ALL {
        for n in 1..=3 {
            cells.push((f, n));
        }
    }
    cells.extend([(Family::B, 4), (Family::J, 4), (Family::J, 5)]);
    cells
}

/// Disagreements between the pair classifier and closure.
#[derive(Clone, Debug, Default)]
pub struct ClassifierReport {
    pub pairs: usize,
    /// `(x, y, predicted label)` where the labelled congruence is not the
    /// principal congruence of the pair.
    pub mismatches: Vec<(usize, usize, String)>,
}

/// Classifies every pair `x < y` of `m` and compares with the closure of
/// the pair.
pub fn classifier_report(m: &Monoid) -> Result<ClassifierReport> {
    let shape = predicted_shape(m.family(), m.degree())?;
    let (lattice, _) = materialize(m, &shape)?;
    let pairs: Vec<(usize, usize)> = (0..m.len())
        .flat_map(|x| (x + 1..m.len()).map(move |y| (x, y)))
        .collect();
    let mut mismatches: Vec<(usize, usize, String)> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let label = classify_pair(m.family(), m.degree(), m.element(x), m.element(y));
            let label = match label {
                Ok(l) => l,
                Err(e) => return Some((x, y, format!("error: {e}"))),
            };
            let ok = lattice
                .position_of_label(&label)
                .is_some_and(|i| lattice.congruences[i] == principal(m, x, y));
            (!ok).then(|| (x, y, label.to_string()))
        })
        .collect();
    mismatches.sort();
    Ok(ClassifierReport {
        pairs: pairs.len(),
        mismatches,
    })
}

fn eq(a: &Congruence, b: &Congruence) -> bool {
    a == b
}

/// `eta <= mu = lam ^ rho`, `R = lam v rho`, `eta = mu` when the minimal
/// ideal is H-trivial, and `lam`, `rho` incomparable when it has at least
/// two R- and two L-classes.
pub fn prism_checks(m: &Monoid, p: &INPair) -> Result<Vec<Check>> {
    let c = in_pair_congruences(m, p)?;
    let tag = format!("{}_{} pair (I_{}, {})", m.family(), m.degree(), p.ideal_rank, p.nsub);
    let (r, lam, rho, mu, eta) = (
        &c[&Relation::R],
        &c[&Relation::Lambda],
        &c[&Relation::Rho],
        &c[&Relation::Mu],
        &c[&Relation::Eta],
    );
    let mi = check_minimal_ideal(m);
    let g = green(m);
    let h_trivial = m.j_class(m.min_rank()).iter().all(|&x| {
        m.j_class(m.min_rank())
            .iter()
            .all(|&y| x == y || g.h[x] != g.h[y])
    });
    let mut out = vec![
        Check::new(format!("{tag}: eta <= mu"), leq(eta, mu)?, ""),
        Check::new(format!("{tag}: mu = lam ^ rho"), eq(mu, &meet(lam, rho)?), ""),
        Check::new(format!("{tag}: R = lam v rho"), eq(r, &join(lam, rho)?), ""),
        Check::new(
            format!("{tag}: eta = mu iff H-trivial"),
            eq(eta, mu) == h_trivial,
            format!("H-trivial: {h_trivial}"),
        ),
    ];
    if mi.r_classes >= 2 && mi.l_classes >= 2 {
        out.push(Check::new(
            format!("{tag}: lam, rho incomparable"),
            !leq(lam, rho)? && !leq(rho, lam)?,
            "",
        ));
    }
    Ok(out)
}

/// The nested-pair laws for retractable IN-pairs `C1 <= C2`.
pub fn nested_checks(m: &Monoid, c1: &INPair, c2: &INPair) -> Result<Vec<Check>> {
    let a = in_pair_congruences(m, c1)?;
    let b = in_pair_congruences(m, c2)?;
    let tag = format!(
        "{}_{} pairs (I_{}, {}) <= (I_{}, {})",
        m.family(),
        m.degree(),
        c1.ideal_rank,
        c1.nsub,
        c2.ideal_rank,
        c2.nsub
    );
    use Relation::*;
    let monotone = [Lambda, Rho, Mu, Eta]
        .iter()
        .map(|k| leq(&a[k], &b[k]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);
    let laws: Vec<(&str, bool)> = vec![
        ("monotone lam, rho, mu, eta", monotone),
        ("lam1 ^ rho2 = mu1", eq(&meet(&a[&Lambda], &b[&Rho])?, &a[&Mu])),
        ("rho1 ^ lam2 = mu1", eq(&meet(&a[&Rho], &b[&Lambda])?, &a[&Mu])),
        ("lam1 v rho2 = R2", eq(&join(&a[&Lambda], &b[&Rho])?, &b[&R])),
        ("rho1 v lam2 = R2", eq(&join(&a[&Rho], &b[&Lambda])?, &b[&R])),
        ("lam1 ^ mu2 = mu1", eq(&meet(&a[&Lambda], &b[&Mu])?, &a[&Mu])),
        ("rho1 ^ mu2 = mu1", eq(&meet(&a[&Rho], &b[&Mu])?, &a[&Mu])),
        ("lam1 v mu2 = lam2", eq(&join(&a[&Lambda], &b[&Mu])?, &b[&Lambda])),
        ("rho1 v mu2 = rho2", eq(&join(&a[&Rho], &b[&Mu])?, &b[&Rho])),
        ("R1 ^ mu2 = mu1", eq(&meet(&a[&R], &b[&Mu])?, &a[&Mu])),
        ("R1 v mu2 = R2", eq(&join(&a[&R], &b[&Mu])?, &b[&R])),
    ];
    Ok(laws
        .into_iter()
        .map(|(name, pass)| Check::new(format!("{tag}: {name}"), pass, ""))
        .collect())
}

/// At the bottom pair: `lam = Delta u L^M`, `rho = Delta u R^M`, and
/// `mu = Delta` for an H-trivial minimal ideal.
pub fn base_case_checks(m: &Monoid, p: &INPair) -> Result<Vec<Check>> {
    let g = green(m);
    let min = m.min_rank();
    let restricted = |classes: &[u32]| -> Result<Congruence> {
        let raw: Vec<(bool, usize)> = (0..m.len())
            .map(|x| {
                if m.rank(x) == min {
                    (true, classes[x] as usize)
                } else {
                    (false, x)
                }
            })
            .collect();
        Congruence::from_classes(m, &raw)
    };
    let tag = format!("{}_{} bottom pair", m.family(), m.degree());
    Ok(vec![
        Check::new(
            format!("{tag}: lam = Delta u L^M"),
            in_pair_congruence(m, p, Relation::Lambda)? == restricted(&g.l)?,
            "",
        ),
        Check::new(
            format!("{tag}: rho = Delta u R^M"),
            in_pair_congruence(m, p, Relation::Rho)? == restricted(&g.r)?,
            "",
        ),
        Check::new(
            format!("{tag}: mu = Delta"),
            in_pair_congruence(m, p, Relation::Mu)?.is_diagonal(),
            "",
        ),
    ])
}

/// Every IN-pair of `m` the library can build.
pub fn in_pairs(m: &Monoid) -> Result<Vec<INPair>> {
    let ranks = m.ranks_present();
    let mut out = Vec::new();
    for w in ranks.windows(2) {
        for g in NormalSubgroupSpec::chain(w[1]) {
            if g.is_trivial() || m.family().has_symmetric_subgroups() {
                out.push(INPair::new(m, w[0], g)?);
            }
        }
    }
    Ok(out)
}

/// The per-monoid part of the suite.
pub fn cell_checks(m: &Monoid) -> Result<Vec<Check>> {
    let cell = format!("{}_{}", m.family(), m.degree());
    let mut out = Vec::new();
    let g = green(m);
    let o = green_oracle(m);
    out.push(Check::new(
        format!("{cell}: Green's relations match the ideal oracle"),
        g.r == o.r && g.l == o.l && g.h == o.h && g.d == o.d && g.j == o.j,
        "",
    ));
    out.push(Check::new(format!("{cell}: stability"), check_stability(m), ""));
    let mi = check_minimal_ideal(m);
    // The symmetric group is its own minimal ideal.
    if m.family() != Family::S {
        out.push(Check::new(
            format!("{cell}: minimal ideal is a rectangular band"),
            mi.single_d_class && mi.all_idempotent && mi.is_rectangular_band,
            format!("{} x {}", mi.r_classes, mi.l_classes),
        ));
    }
    for classes in [&g.l, &g.r, &g.h] {
        let xi = minimal_ideal_partition(m, classes);
        out.push(Check::new(
            format!("{cell}: Green's partition of the minimal ideal is liftable"),
            liftable_check(m, &xi)?,
            "",
        ));
    }
    for &q in &m.ranks_present() {
        let found = all_retractions(m, q, 2).len();
        out.push(Check::new(
            format!("{cell}: at most one retraction of I_{q}"),
            found <= 1,
            format!("{found} found"),
        ));
        for spec in NormalSubgroupSpec::chain(q) {
            if !spec.is_trivial() && !m.family().has_symmetric_subgroups() {
                continue;
            }
            if q == 0 && !spec.is_trivial() {
                continue;
            }
            let fast = nu_n(m, &spec)?;
            out.push(Check::new(
                format!("{cell}: nu({spec}) at rank {q} lies in H"),
                fast.iter().all(|&(x, y)| g.h[x] == g.h[y]),
                "",
            ));
            out.push(Check::new(
                format!("{cell}: nu({spec}) at rank {q} matches its definition"),
                fast == nu_oracle(m, &spec)?,
                "",
            ));
        }
    }
    let pairs = in_pairs(m)?;
    let retractable: Vec<&INPair> = pairs.iter().filter(|p| p.retractable).collect();
    for p in &retractable {
        out.extend(prism_checks(m, p)?);
    }
    for (i, a) in retractable.iter().enumerate() {
        for b in &retractable[i + 1..] {
            if a.ideal_rank <= b.ideal_rank {
                out.extend(nested_checks(m, a, b)?);
            }
        }
    }
    if let Some(p) = retractable.first() {
        if p.ideal_rank == m.min_rank() && p.nsub.is_trivial() {
            out.extend(base_case_checks(m, p)?);
        }
    }
    if let Ok(shape) = predicted_shape(m.family(), m.degree()) {
        let brute = all_congruences(m)?;
        let d = diff_lattices(m, &brute, &shape)?;
        out.push(Check::new(
            format!("{cell}: brute-force lattice equals predicted lattice"),
            d.pass(),
            format!("{} brute, {} predicted", d.brute_nodes, d.predicted_nodes),
        ));
    }
    Ok(out)
}

/// Runs [`cell_checks`] on every cell, enumerating each monoid once.
pub fn run(cells: &[(Family, usize)], mut progress: impl FnMut(&str)) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &(f, n) in cells {
        progress(&format!("{f}_{n}"));
        let m = monoid::enumerate(f, n)?;
        out.extend(cell_checks(&m)?);
    }
    Ok(out)
}
