//! Named congruences: Rees congruences, retractions, the relations `nu_N`,
//! IN-pairs with their `R/lam/rho/mu/eta` congruences, the predicted lattice
//! of each family, and the classifier for principal congruences.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::congruence::{covers, Congruence, CongruenceLattice};
use crate::diagram::{Diagram, Family, Permutation};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::monoid::{self, group_element, Monoid};

/// A normal subgroup of the symmetric group `S_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NormalKind {
    Trivial,
    Klein,
    Alternating,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalSubgroupSpec {
    pub q: usize,
    pub kind: NormalKind,
}

impl NormalSubgroupSpec {
    pub fn new(q: usize, kind: NormalKind) -> Result<Self> {
        let ok = match kind {
            NormalKind::Trivial => true,
            NormalKind::Klein => q == 4,
            NormalKind::Alternating => q >= 3,
            NormalKind::Symmetric => q >= 2,
        };
        if ok {
            Ok(NormalSubgroupSpec { q, kind })
        } else {
            Err(Error::UnsupportedSubgroup(format!("{kind:?} in S_{q}")))
        }
    }

    pub fn trivial(q: usize) -> Self {
        NormalSubgroupSpec {
            q,
            kind: NormalKind::Trivial,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == NormalKind::Trivial
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        sigma.degree() == self.q
            && match self.kind {
                NormalKind::Trivial => sigma.is_identity(),
                NormalKind::Klein => sigma.is_klein(),
                NormalKind::Alternating => sigma.is_even(),
                NormalKind::Symmetric => true,
            }
    }

    /// Every normal subgroup of `S_q`, smallest first.
    pub fn chain(q: usize) -> Vec<NormalSubgroupSpec> {
        [
            NormalKind::Trivial,
            NormalKind::Klein,
            NormalKind::Alternating,
            NormalKind::Symmetric,
        ]
        .into_iter()
        .filter_map(|k| NormalSubgroupSpec::new(q, k).ok())
        .collect()
    }

    /// The smallest normal subgroup of `S_q` containing `sigma`.
    pub fn normal_closure(sigma: &Permutation) -> NormalSubgroupSpec {
        let q = sigma.degree();
        let kind = if sigma.is_identity() {
            NormalKind::Trivial
        } else if sigma.is_klein() {
            NormalKind::Klein
        } else if sigma.is_even() {
            NormalKind::Alternating
        } else {
            NormalKind::Symmetric
        };
        NormalSubgroupSpec { q, kind }
    }

    /// Permutations in the subgroup.
    pub fn elements(&self) -> Vec<Permutation> {
        permutations(self.q).into_iter().filter(|p| self.contains(p)).collect()
    }
}

impl fmt::Display for NormalSubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NormalKind::Trivial => write!(f, "1_{}", self.q),
            NormalKind::Klein => f.write_str("K"),
            NormalKind::Alternating => write!(f, "A_{}", self.q),
            NormalKind::Symmetric => write!(f, "S_{}", self.q),
        }
    }
}

fn permutations(q: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let q = used.len();
        if prefix.len() == q {
            out.push(Permutation::new(prefix.clone()).expect("valid"));
            return;
        }
        for i in 0..q {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; q], &mut out);
    out
}

/// Identifies an IN-pair inside a label: the ideal rank for a trivial
/// group, otherwise the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    Rank(usize),
    Group(NormalSubgroupSpec),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Rank(q) => write!(f, "{q}"),
            Tag::Group(g) => write!(f, "{g}"),
        }
    }
}

/// Names of the congruences appearing in the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CongruenceLabel {
    Delta,
    Nabla,
    Rees(usize),
    RN(NormalSubgroupSpec),
    Lambda(Tag),
    Rho(Tag),
    Mu(Tag),
    Eta(Tag),
}

impl fmt::Display for CongruenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceLabel::Delta => f.write_str("Delta"),
            CongruenceLabel::Nabla => f.write_str("Nabla"),
            CongruenceLabel::Rees(q) => write!(f, "R({q})"),
            CongruenceLabel::RN(g) => write!(f, "R({g})"),
            CongruenceLabel::Lambda(t) => write!(f, "lam({t})"),
            CongruenceLabel::Rho(t) => write!(f, "rho({t})"),
            CongruenceLabel::Mu(t) => write!(f, "mu({t})"),
            CongruenceLabel::Eta(t) => write!(f, "eta({t})"),
        }
    }
}

impl CongruenceLabel {
    fn tag_of(ideal_rank: usize, nsub: &NormalSubgroupSpec) -> Tag {
        if nsub.is_trivial() {
            Tag::Rank(ideal_rank)
        } else {
            Tag::Group(*nsub)
        }
    }
}

/// The Rees congruence collapsing `I_q`.
pub fn rees(m: &Monoid, q: usize) -> Result<Congruence> {
    if !m.ranks_present().contains(&q) {
        return Err(Error::RankNotPresent(q));
    }
    let raw: Vec<usize> = (0..m.len())
        .map(|x| if m.rank(x) <= q { usize::MAX } else { x })
        .collect();
    Congruence::from_classes(m, &raw)
}

/// A retraction of `I_q` onto the minimal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retraction {
    pub ideal_rank: usize,
    map: Vec<u32>,
}

impl Retraction {
    pub fn apply(&self, x: usize) -> Option<usize> {
        match self.map[x] {
            u32::MAX => None,
            y => Some(y as usize),
        }
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }
}

/// Identity on the minimal ideal and multiplicative on `I_q`.
pub fn is_retraction(m: &Monoid, r: &Retraction) -> bool {
    let ideal = m.ideal(r.ideal_rank);
    let min = m.min_rank();
    let f = |x: usize| r.map[x] as usize;
    ideal.iter().all(|&x| r.map[x] != u32::MAX && m.rank(f(x)) == min)
        && ideal.iter().filter(|&&x| m.rank(x) == min).all(|&x| f(x) == x)
        && ideal
            .iter()
            .all(|&x| ideal.iter().all(|&y| f(m.mul(x, y)) == m.mul(f(x), f(y))))
}

/// The closed-form retraction candidate for `I_q`, if the family has one.
/// The result is not checked.
pub fn formula_retraction(m: &Monoid, q: usize) -> Option<Retraction> {
    let min = m.min_rank();
    let even = m.degree() % 2 == 0;
    let image = |x: usize| -> Option<usize> {
        let d = m.element(x);
        let y = if q == min {
            d.clone()
        } else {
            match m.family() {
                Family::I | Family::O | Family::S if m.j_class(min).len() == 1 => {
                    return m.j_class(min).first().copied()
                }
                Family::P | Family::PB | Family::PP | Family::M if q <= 1 => d.hat_partition(),
                Family::B | Family::J if even && q <= 2 => d.hat_brauer().ok()?,
                _ => return None,
            }
        };
        m.id_of(&y)
    };
    let mut map = vec![u32::MAX; m.len()];
    for x in m.ideal(q) {
        map[x] = image(x)? as u32;
    }
    Some(Retraction { ideal_rank: q, map })
}

/// Exhaustive search for a retraction of `I_q`.
///
/// Any retraction `f` satisfies `e(xf) = ex` and `(xf)e = xe` for every `e`
/// in the minimal ideal, which cuts the candidates for each `xf` down to a
/// short list; the search backtracks over those lists.
pub fn search_retraction(m: &Monoid, q: usize) -> Option<Retraction> {
    all_retractions(m, q, 1).pop()
}

/// Up to `limit` retractions of `I_q`, found by the same search without
/// the candidate filter, so the count is a genuine count of all of them.
pub fn all_retractions(m: &Monoid, q: usize, limit: usize) -> Vec<Retraction> {
    let min_ideal = m.j_class(m.min_rank());
    let mut ideal = m.ideal(q);
    // Fixed points first, so products with them prune early.
    ideal.sort_by_key(|&x| m.rank(x));
    let filtered = limit == 1;
    let candidates: Vec<Vec<usize>> = ideal
        .iter()
        .map(|&x| {
            min_ideal
                .iter()
                .copied()
                .filter(|&y| {
                    !filtered
                        || min_ideal
                            .iter()
                            .all(|&e| m.mul(e, y) == m.mul(e, x) && m.mul(y, e) == m.mul(x, e))
                })
                .filter(|&y| m.rank(x) != m.min_rank() || y == x)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    if candidates.iter().all(|c: &Vec<usize>| !c.is_empty()) {
        let mut map = vec![u32::MAX; m.len()];
        assign(m, q, &ideal, &candidates, 0, &mut map, limit, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn assign(
    m: &Monoid,
    q: usize,
    ideal: &[usize],
    cands: &[Vec<usize>],
    k: usize,
    map: &mut [u32],
    limit: usize,
    out: &mut Vec<Retraction>,
) {
    if k == ideal.len() {
        out.push(Retraction {
            ideal_rank: q,
            map: map.to_vec(),
        });
        return;
    }
    let x = ideal[k];
    for &y in &cands[k] {
        map[x] = y as u32;
        let consistent = ideal[..=k].iter().all(|&a| {
            ideal[..=k].iter().all(|&b| {
                let ab = map[m.mul(a, b)];
                ab == u32::MAX || ab as usize == m.mul(map[a] as usize, map[b] as usize)
            })
        });
        if consistent {
            assign(m, q, ideal, cands, k + 1, map, limit, out);
            if out.len() >= limit {
                break;
            }
        }
    }
    map[x] = u32::MAX;
}

/// The retraction of `I_q` if `I_q` is retractable.
pub fn retraction(m: &Monoid, q: usize) -> Result<Option<Retraction>> {
    if !m.ranks_present().contains(&q) {
        return Err(Error::RankNotPresent(q));
    }
    if let Some(r) = formula_retraction(m, q) {
        if is_retraction(m, &r) {
            return Ok(Some(r));
        }
    }
    Ok(search_retraction(m, q).filter(|r| is_retraction(m, r)))
}

fn check_spec(m: &Monoid, spec: &NormalSubgroupSpec) -> Result<()> {
    if !m.ranks_present().contains(&spec.q) {
        return Err(Error::RankNotPresent(spec.q));
    }
    if spec.q == 0 && !spec.is_trivial() {
        return Err(Error::UnsupportedSubgroup(spec.to_string()));
    }
    if !spec.is_trivial() && !m.family().has_symmetric_subgroups() {
        return Err(Error::UnsupportedSubgroup(format!(
            "{spec} in {}_{} (trivial subgroups only)",
            m.family(),
            m.degree()
        )));
    }
    Ok(())
}

/// `nu_N` through the permutation `phi`: H-related pairs of rank `q`
/// whose `phi` lies in `N`. Sorted, diagonal included.
pub fn nu_n(m: &Monoid, spec: &NormalSubgroupSpec) -> Result<Vec<(usize, usize)>> {
    check_spec(m, spec)?;
    let class = m.j_class(spec.q);
    let mut by_h: HashMap<_, Vec<usize>> = HashMap::new();
    for &x in &class {
        let d = m.element(x);
        by_h.entry((d.right_key(), d.left_key())).or_default().push(x);
    }
    let mut out = Vec::new();
    for group in by_h.values() {
        for &x in group {
            for &y in group {
                if x == y || (spec.q > 0 && spec.contains(&m.element(x).phi(m.element(y))?)) {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `nu_N` straight from its definition: `S(N x N)S` intersected with
/// `J_q x J_q`, with `N` realized inside the canonical maximal subgroup.
pub fn nu_oracle(m: &Monoid, spec: &NormalSubgroupSpec) -> Result<Vec<(usize, usize)>> {
    check_spec(m, spec)?;
    let n_bar: Vec<usize> = spec
        .elements()
        .iter()
        .map(|s| group_element(m.family(), m.degree(), s).and_then(|d| m.require(&d)))
        .collect::<Result<_>>()?;
    let len = m.len();
    let mut out = HashSet::new();
    for s in 0..len {
        let sx: Vec<usize> = n_bar.iter().map(|&x| m.mul(s, x)).collect();
        for t in 0..len {
            let row: Vec<usize> = sx.iter().map(|&a| m.mul(a, t)).collect();
            if m.rank(row[0]) != spec.q {
                // All of N lies in one H-class, so the whole row shares a rank.
                continue;
            }
            for &a in &row {
                for &b in &row {
                    out.insert((a, b));
                }
            }
        }
    }
    let mut out: Vec<(usize, usize)> = out.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// An ideal `I_r` together with a normal subgroup of the maximal subgroup
/// one J-class above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct INPair {
    pub ideal_rank: usize,
    pub group_rank: usize,
    pub nsub: NormalSubgroupSpec,
    pub retractable: bool,
}

impl INPair {
    /// Validates the pair and decides retractability by direct computation.
    pub fn new(m: &Monoid, ideal_rank: usize, nsub: NormalSubgroupSpec) -> Result<INPair> {
        let ranks = m.ranks_present();
        let k = ranks
            .iter()
            .position(|&r| r == ideal_rank)
            .ok_or(Error::RankNotPresent(ideal_rank))?;
        let group_rank = *ranks
            .get(k + 1)
            .ok_or_else(|| Error::InvalidPair(format!("nothing above I_{ideal_rank}")))?;
        if nsub.q != group_rank {
            return Err(Error::InvalidPair(format!(
                "{nsub} does not live in the J-class of rank {group_rank}"
            )));
        }
        check_spec(m, &nsub)?;
        let retractable = retraction(m, ideal_rank)?.is_some() && acts_uniformly(m, &nsub)?;
        Ok(INPair {
            ideal_rank,
            group_rank,
            nsub,
            retractable,
        })
    }
}

/// `|xN| = |Nx| = 1` for every `x` in the minimal ideal.
fn acts_uniformly(m: &Monoid, nsub: &NormalSubgroupSpec) -> Result<bool> {
    let n_bar: Vec<usize> = nsub
        .elements()
        .iter()
        .map(|s| group_element(m.family(), m.degree(), s).and_then(|d| m.require(&d)))
        .collect::<Result<_>>()?;
    Ok(m.j_class(m.min_rank()).iter().all(|&x| {
        let right: HashSet<usize> = n_bar.iter().map(|&g| m.mul(x, g)).collect();
        let left: HashSet<usize> = n_bar.iter().map(|&g| m.mul(g, x)).collect();
        right.len() == 1 && left.len() == 1
    }))
}

/// The relations attached to an IN-pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Eta,
    Mu,
    Lambda,
    Rho,
    R,
}

impl Relation {
    /// Order inside one diamond: `eta <= mu <= lam, rho <= R`.
    pub fn leq(self, other: Relation) -> bool {
        use Relation::*;
        matches!(
            (self, other),
            (Eta, _) | (Mu, Mu | Lambda | Rho | R) | (Lambda, Lambda | R) | (Rho, Rho | R) | (R, R)
        )
    }
}

/// One of `R_C`, `lam_C`, `rho_C`, `mu_C`, `eta_C`.
pub fn in_pair_congruence(m: &Monoid, p: &INPair, kind: Relation) -> Result<Congruence> {
    let mut dsu = Dsu::new(m.len());
    for (x, y) in nu_n(m, &p.nsub)? {
        dsu.union(x, y);
    }
    let ideal = m.ideal(p.ideal_rank);
    if kind == Relation::R {
        for w in ideal.windows(2) {
            dsu.union(w[0], w[1]);
        }
    } else {
        if !p.retractable {
            return Err(Error::NotRetractable);
        }
        let f = retraction(m, p.ideal_rank)?.ok_or(Error::NotRetractable)?;
        let g = monoid::green(m);
        let mut first: HashMap<u32, usize> = HashMap::new();
        for &x in &ideal {
            let y = f.apply(x).expect("defined on the ideal");
            let key = match kind {
                Relation::Lambda => g.l[y],
                Relation::Rho => g.r[y],
                Relation::Mu => g.h[y],
                _ => y as u32,
            };
            let rep = *first.entry(key).or_insert(x);
            dsu.union(rep, x);
        }
    }
    Congruence::from_classes(m, &dsu.classes())
}

/// `R_C` always; the other four when the pair is retractable.
pub fn in_pair_congruences(m: &Monoid, p: &INPair) -> Result<BTreeMap<Relation, Congruence>> {
    let kinds: &[Relation] = if p.retractable {
        &[Relation::R, Relation::Lambda, Relation::Rho, Relation::Mu, Relation::Eta]
    } else {
        &[Relation::R]
    };
    kinds
        .iter()
        .map(|&k| Ok((k, in_pair_congruence(m, p, k)?)))
        .collect()
}

/// Whether the partition `xi` of the minimal ideal extends by the diagonal
/// to a congruence on the whole monoid.
pub fn liftable_check(m: &Monoid, xi: &[Vec<usize>]) -> Result<bool> {
    let min_ideal = m.j_class(m.min_rank());
    let mut class = vec![u32::MAX; m.len()];
    for (c, block) in xi.iter().enumerate() {
        for &x in block {
            if x >= m.len() || m.rank(x) != m.min_rank() || class[x] != u32::MAX {
                return Err(Error::Construction("not a partition of the minimal ideal".into()));
            }
            class[x] = c as u32;
        }
    }
    if min_ideal.iter().any(|&x| class[x] == u32::MAX) {
        return Err(Error::Construction("partition misses part of the minimal ideal".into()));
    }
    Ok(xi.iter().all(|block| {
        (0..m.len()).all(|s| {
            let right: HashSet<u32> = block.iter().map(|&x| class[m.mul(x, s)]).collect();
            let left: HashSet<u32> = block.iter().map(|&x| class[m.mul(s, x)]).collect();
            right.len() == 1 && left.len() == 1
        })
    }))
}

/// The restriction of a Green's relation class vector to the minimal ideal.
pub fn minimal_ideal_partition(m: &Monoid, classes: &[u32]) -> Vec<Vec<usize>> {
    let mut by: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for x in m.j_class(m.min_rank()) {
        by.entry(classes[x]).or_default().push(x);
    }
    by.into_values().collect()
}

/// A step of the chain of `R_C` congruences: the IN-pair `(I_r, N)`, or
/// the whole monoid at the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChainStep {
    pub ideal_rank: usize,
    pub nsub: Option<NormalSubgroupSpec>,
}

/// A node of a predicted lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeNode {
    pub labels: Vec<CongruenceLabel>,
    /// Index into [`PredictedShape::steps`].
    pub step: usize,
    pub relation: Relation,
    pub star: bool,
}

/// The lattice predicted by the classification, as pure structure.
#[derive(Clone, Debug)]
pub struct PredictedShape {
    pub family: Family,
    pub degree: usize,
    pub steps: Vec<ChainStep>,
    pub nodes: Vec<ShapeNode>,
    pub leq: Vec<Vec<bool>>,
    pub hasse: Vec<(usize, usize)>,
}

impl PredictedShape {
    pub fn name(&self, i: usize) -> String {
        self.nodes[i]
            .labels
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("=")
    }

    pub fn position_of_label(&self, label: &CongruenceLabel) -> Option<usize> {
        self.nodes.iter().position(|n| n.labels.contains(label))
    }
}

fn check_range(f: Family, n: usize) -> Result<()> {
    let (ok, hypothesis) = match f {
        Family::P | Family::PB => (n >= 2, "n >= 2"),
        Family::PP | Family::M => (n >= 2, "n >= 2"),
        Family::B | Family::J => (n >= 3, "n >= 3"),
        Family::I | Family::O => (n >= 1, "n >= 1"),
        Family::S => (false, "no prediction for symmetric groups"),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            family: f,
            degree: n,
            hypothesis,
        })
    }
}

fn family_ranks(f: Family, n: usize) -> Vec<usize> {
    if f.perfect_matching() {
        (n % 2..=n).step_by(2).collect()
    } else {
        (0..=n).collect()
    }
}

/// IN-pairs `(ideal rank, group)` that carry a diamond of `lam/rho/mu`.
fn diamond_pairs(f: Family, n: usize) -> Vec<(usize, NormalSubgroupSpec)> {
    let t = NormalSubgroupSpec::trivial;
    let s2 = NormalSubgroupSpec {
        q: 2,
        kind: NormalKind::Symmetric,
    };
    let k4 = NormalSubgroupSpec {
        q: 4,
        kind: NormalKind::Klein,
    };
    match f {
        Family::P | Family::PB => vec![(0, t(1)), (1, t(2)), (1, s2)],
        Family::PP | Family::M => vec![(0, t(1)), (1, t(2))],
        Family::B if n % 2 == 1 => vec![(1, t(3))],
        Family::B => vec![(0, t(2)), (0, s2), (2, t(4)), (2, k4)],
        Family::J if n % 2 == 1 => vec![(1, t(3))],
        Family::J => vec![(0, t(2)), (2, t(4))],
        // The minimal ideal is a single point, so every diamond collapses.
        Family::I | Family::O | Family::S => vec![],
    }
}

/// The predicted congruence lattice of `f_n` as labels and order only. No
/// enumeration is involved, so this works beyond the size guard.
pub fn predicted_shape(f: Family, n: usize) -> Result<PredictedShape> {
    check_range(f, n)?;
    let ranks = family_ranks(f, n);
    let mut steps = Vec::new();
    for (k, &r) in ranks.iter().enumerate() {
        match ranks.get(k + 1) {
            Some(&g) => {
                for nsub in NormalSubgroupSpec::chain(g) {
                    if nsub.is_trivial() || f.has_symmetric_subgroups() {
                        steps.push(ChainStep {
                            ideal_rank: r,
                            nsub: Some(nsub),
                        });
                    }
                }
            }
            None => steps.push(ChainStep {
                ideal_rank: r,
                nsub: None,
            }),
        }
    }
    let diamonds = diamond_pairs(f, n);
    let mut nodes = Vec::new();
    for (s, step) in steps.iter().enumerate() {
        let r_label = match step.nsub {
            Some(g) if !g.is_trivial() => CongruenceLabel::RN(g),
            _ => CongruenceLabel::Rees(step.ideal_rank),
        };
        let has_diamond = step
            .nsub
            .is_some_and(|g| diamonds.contains(&(step.ideal_rank, g)));
        if has_diamond {
            let tag = CongruenceLabel::tag_of(step.ideal_rank, &step.nsub.expect("checked"));
            for (relation, label, star) in [
                (Relation::Mu, CongruenceLabel::Mu(tag), true),
                (Relation::Lambda, CongruenceLabel::Lambda(tag), false),
                (Relation::Rho, CongruenceLabel::Rho(tag), false),
            ] {
                nodes.push(ShapeNode {
                    labels: vec![label],
                    step: s,
                    relation,
                    star,
                });
            }
        }
        nodes.push(ShapeNode {
            labels: vec![r_label],
            step: s,
            relation: Relation::R,
            star: true,
        });
    }
    nodes[0].labels.insert(0, CongruenceLabel::Delta);
    nodes.last_mut().expect("nonempty").labels.push(CongruenceLabel::Nabla);
    let leq: Vec<Vec<bool>> = nodes
        .iter()
        .map(|a| {
            nodes
                .iter()
                .map(|b| a.step <= b.step && a.relation.leq(b.relation))
                .collect()
        })
        .collect();
    let hasse = covers(&leq);
    Ok(PredictedShape {
        family: f,
        degree: n,
        steps,
        nodes,
        leq,
        hasse,
    })
}

/// The congruence a shape node stands for, built on `m`.
pub fn materialize_node(m: &Monoid, shape: &PredictedShape, i: usize) -> Result<Congruence> {
    let node = &shape.nodes[i];
    let step = shape.steps[node.step];
    match step.nsub {
        None => Ok(Congruence::universal(m)),
        Some(g) => {
            let p = INPair::new(m, step.ideal_rank, g)?;
            in_pair_congruence(m, &p, node.relation)
        }
    }
}

/// Builds every predicted congruence on `m` and assembles the labelled
/// lattice of the distinct results. Nodes predicted distinct that turn out
/// equal end up sharing one lattice node (and [`diff_lattices`] reports it).
pub fn materialize(m: &Monoid, shape: &PredictedShape) -> Result<(CongruenceLattice, Vec<Congruence>)> {
    if shape.family != m.family() || shape.degree != m.degree() {
        return Err(Error::MonoidMismatch);
    }
    let built: Vec<Congruence> = (0..shape.nodes.len())
        .map(|i| materialize_node(m, shape, i))
        .collect::<Result<_>>()?;
    let mut lattice = CongruenceLattice::from_congruences(built.iter().cloned());
    for (i, c) in built.iter().enumerate() {
        let pos = lattice.position(c).expect("present");
        lattice.labels[pos].extend(shape.nodes[i].labels.iter().copied());
    }
    Ok((lattice, built))
}

/// Enumerates `f_n` and materializes its predicted lattice.
pub fn predicted_lattice(f: Family, n: usize) -> Result<CongruenceLattice> {
    let shape = predicted_shape(f, n)?;
    let m = monoid::enumerate(f, n)?;
    Ok(materialize(&m, &shape)?.0)
}

/// Outcome of comparing a brute-force lattice with a prediction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeDiff {
    pub brute_nodes: usize,
    pub predicted_nodes: usize,
    /// Brute-force nodes with no predicted counterpart (by index).
    pub missing: Vec<usize>,
    /// Predicted nodes (by shape index) that are not congruences of the
    /// brute-force lattice.
    pub extra: Vec<usize>,
    /// Pairs of predicted nodes that materialize to the same congruence.
    pub coincident: Vec<(usize, usize)>,
    /// Predicted nodes `(a, b)` whose predicted order disagrees with inclusion.
    pub order: Vec<(usize, usize)>,
    /// Predicted nodes whose star flag disagrees with the direct check.
    pub star: Vec<usize>,
}

impl LatticeDiff {
    pub fn pass(&self) -> bool {
        self.brute_nodes == self.predicted_nodes
            && self.missing.is_empty()
            && self.extra.is_empty()
            && self.coincident.is_empty()
            && self.order.is_empty()
            && self.star.is_empty()
    }
}

/// Compares a brute-force lattice against a prediction built on the same monoid.
pub fn diff_lattices(m: &Monoid, brute: &CongruenceLattice, shape: &PredictedShape) -> Result<LatticeDiff> {
    let (_, built) = materialize(m, shape)?;
    let mut d = LatticeDiff {
        brute_nodes: brute.len(),
        predicted_nodes: shape.nodes.len(),
        ..Default::default()
    };
    let positions: Vec<Option<usize>> = built.iter().map(|c| brute.position(c)).collect();
    for (i, p) in positions.iter().enumerate() {
        if p.is_none() {
            d.extra.push(i);
        }
    }
    for j in 0..brute.len() {
        if !positions.contains(&Some(j)) {
            d.missing.push(j);
        }
    }
    for a in 0..built.len() {
        for b in a + 1..built.len() {
            if built[a] == built[b] {
                d.coincident.push((a, b));
            }
        }
        for b in 0..built.len() {
            let actual = crate::congruence::leq(&built[a], &built[b])?;
            if actual != shape.leq[a][b] {
                d.order.push((a, b));
            }
        }
        if crate::congruence::is_star_congruence(m, &built[a]) != shape.nodes[a].star {
            d.star.push(a);
        }
    }
    Ok(d)
}

/// The label of the principal congruence generated by `(a, b)` in `f_n`.
pub fn classify_pair(f: Family, n: usize, a: &Diagram, b: &Diagram) -> Result<CongruenceLabel> {
    check_range(f, n)?;
    for d in [a, b] {
        if d.degree() != n {
            return Err(Error::DegreeMismatch {
                left: d.degree(),
                right: n,
            });
        }
        if !d.is_member(f) {
            return Err(Error::NotMember(d.to_string()));
        }
    }
    if a == b {
        return Ok(CongruenceLabel::Delta);
    }
    let (a, b) = if a.rank() >= b.rank() { (a, b) } else { (b, a) };
    let q = a.rank();
    let h = a.h_related(b);
    use CongruenceLabel::*;
    // Pairs inside the minimal ideal, or pairs whose images under the
    // retraction are compared: R-related, L-related, or neither.
    let side = |x: &Diagram, y: &Diagram, t: Tag, otherwise: CongruenceLabel| {
        if x.r_related(y) {
            Rho(t)
        } else if x.l_related(y) {
            Lambda(t)
        } else {
            otherwise
        }
    };
    let upper = |q: usize| -> Result<CongruenceLabel> {
        if !h {
            return Ok(Rees(q));
        }
        let g = NormalSubgroupSpec::normal_closure(&a.phi(b)?);
        Ok(RN(g))
    };
    let even = n % 2 == 0;
    Ok(match f {
        Family::I | Family::O => upper(q)?,
        Family::P | Family::PB | Family::PP | Family::M => match q {
            0 => side(a, b, Tag::Rank(0), Rees(0)),
            1 => {
                let (ha, hb) = (a.hat_partition(), b.hat_partition());
                if ha == hb {
                    Mu(Tag::Rank(1))
                } else {
                    side(&ha, &hb, Tag::Rank(1), Rees(1))
                }
            }
            _ if matches!(f, Family::PP | Family::M) => Rees(q),
            2 if h => Mu(Tag::Group(NormalSubgroupSpec {
                q: 2,
                kind: NormalKind::Symmetric,
            })),
            _ => upper(q)?,
        },
        Family::B | Family::J => {
            let z = n % 2;
            if q == z {
                side(a, b, Tag::Rank(z), Rees(z))
            } else if even && q == 2 {
                if h && f == Family::B {
                    Mu(Tag::Group(NormalSubgroupSpec {
                        q: 2,
                        kind: NormalKind::Symmetric,
                    }))
                } else {
                    let (ha, hb) = (a.hat_brauer()?, b.hat_brauer()?);
                    if ha == hb {
                        Mu(Tag::Rank(2))
                    } else {
                        side(&ha, &hb, Tag::Rank(2), Rees(2))
                    }
                }
            } else if f == Family::J {
                Rees(q)
            } else {
                match upper(q)? {
                    RN(g) if g.kind == NormalKind::Klein && even => Mu(Tag::Group(g)),
                    other => other,
                }
            }
        }
        Family::S => unreachable!("rejected by the range check"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{all_congruences, generated_congruence, verify_congruence};
    use crate::monoid::enumerate;

    #[test]
    fn normal_subgroup_rules() {
        assert!(NormalSubgroupSpec::new(3, NormalKind::Klein).is_err());
        assert!(NormalSubgroupSpec::new(2, NormalKind::Alternating).is_err());
        assert!(NormalSubgroupSpec::new(1, NormalKind::Symmetric).is_err());
        assert_eq!(NormalSubgroupSpec::chain(4).len(), 4);
        assert_eq!(NormalSubgroupSpec::chain(5).len(), 3);
        assert_eq!(NormalSubgroupSpec::chain(2).len(), 2);
        assert_eq!(NormalSubgroupSpec::chain(1).len(), 1);
        let sizes: Vec<usize> = NormalSubgroupSpec::chain(4).iter().map(|g| g.elements().len()).collect();
        assert_eq!(sizes, vec![1, 4, 12, 24]);
    }

    #[test]
    fn label_strings() {
        let a3 = NormalSubgroupSpec::new(3, NormalKind::Alternating).unwrap();
        let k = NormalSubgroupSpec::new(4, NormalKind::Klein).unwrap();
        assert_eq!(CongruenceLabel::RN(a3).to_string(), "R(A_3)");
        assert_eq!(CongruenceLabel::Mu(Tag::Group(k)).to_string(), "mu(K)");
        assert_eq!(CongruenceLabel::Lambda(Tag::Rank(0)).to_string(), "lam(0)");
        assert_eq!(CongruenceLabel::Rees(2).to_string(), "R(2)");
    }

    #[test]
    fn rees_sizes() {
        let m = enumerate(Family::P, 3).unwrap();
        assert!(rees(&m, 3).unwrap() == Congruence::universal(&m));
        let r0 = rees(&m, 0).unwrap();
        assert_eq!(r0.num_classes(), 1 + m.len() - m.j_class(0).len());
        assert!(rees(&m, 7).is_err());
    }

    #[test]
    fn p3_retractions() {
        let m = enumerate(Family::P, 3).unwrap();
        let r1 = retraction(&m, 1).unwrap().unwrap();
        for x in m.ideal(1) {
            assert_eq!(m.element(r1.apply(x).unwrap()), &m.element(x).hat_partition());
        }
        assert_eq!(retraction(&m, 2).unwrap(), None);
        assert_eq!(search_retraction(&m, 1), Some(r1.clone()));
        assert_eq!(all_retractions(&m, 1, 2), vec![r1]);
    }

    #[test]
    fn b4_retraction_is_brauer_hat() {
        let m = enumerate(Family::B, 4).unwrap();
        let r = retraction(&m, 2).unwrap().unwrap();
        for x in m.ideal(2) {
            assert_eq!(m.element(r.apply(x).unwrap()), &m.element(x).hat_brauer().unwrap());
        }
        assert_eq!(retraction(&m, 4).unwrap(), None);
    }

    #[test]
    fn nu_fast_matches_oracle_on_p3() {
        let m = enumerate(Family::P, 3).unwrap();
        for q in 1..=3 {
            for g in NormalSubgroupSpec::chain(q) {
                assert_eq!(nu_n(&m, &g).unwrap(), nu_oracle(&m, &g).unwrap(), "{g}");
            }
        }
    }

    #[test]
    fn trivial_nu_is_diagonal() {
        let m = enumerate(Family::P, 3).unwrap();
        let nu = nu_n(&m, &NormalSubgroupSpec::trivial(2)).unwrap();
        assert_eq!(nu, m.j_class(2).iter().map(|&x| (x, x)).collect::<Vec<_>>());
        let j = enumerate(Family::J, 4).unwrap();
        let s2 = NormalSubgroupSpec::new(2, NormalKind::Symmetric).unwrap();
        assert!(nu_n(&j, &s2).is_err());
    }

    #[test]
    fn lambda_zero_on_p3() {
        let m = enumerate(Family::P, 3).unwrap();
        let p = INPair::new(&m, 0, NormalSubgroupSpec::trivial(1)).unwrap();
        assert!(p.retractable);
        let lam = in_pair_congruence(&m, &p, Relation::Lambda).unwrap();
        for x in 0..m.len() {
            for y in 0..m.len() {
                let expect = x == y
                    || (m.rank(x) == 0
                        && m.rank(y) == 0
                        && m.element(x).stats().coker == m.element(y).stats().coker);
                assert_eq!(lam.related(x, y), expect);
            }
        }
    }

    #[test]
    fn non_retractable_pair_refuses_diamond() {
        let m = enumerate(Family::P, 3).unwrap();
        let p = INPair::new(&m, 2, NormalSubgroupSpec::trivial(3)).unwrap();
        assert!(!p.retractable);
        assert_eq!(in_pair_congruence(&m, &p, Relation::Mu), Err(Error::NotRetractable));
        assert_eq!(in_pair_congruence(&m, &p, Relation::R).unwrap(), rees(&m, 2).unwrap());
        assert!(INPair::new(&m, 1, NormalSubgroupSpec::trivial(3)).is_err());
    }

    #[test]
    fn b4_klein_pair() {
        let m = enumerate(Family::B, 4).unwrap();
        let k = NormalSubgroupSpec::new(4, NormalKind::Klein).unwrap();
        let p = INPair::new(&m, 2, k).unwrap();
        assert!(p.retractable);
        let all = in_pair_congruences(&m, &p).unwrap();
        assert_eq!(all.len(), 5);
        for c in all.values() {
            assert!(verify_congruence(&m, c.classes()));
        }
        let mu2 = in_pair_congruence(&m, &INPair::new(&m, 2, NormalSubgroupSpec::trivial(4)).unwrap(), Relation::Mu)
            .unwrap();
        let mut dsu = Dsu::new(m.len());
        for (x, c) in mu2.classes().iter().enumerate() {
            let rep = mu2.classes().iter().position(|d| d == c).unwrap();
            dsu.union(rep, x);
        }
        for (x, y) in nu_n(&m, &k).unwrap() {
            dsu.union(x, y);
        }
        assert_eq!(Congruence::from_classes(&m, &dsu.classes()).unwrap(), all[&Relation::Mu]);
    }

    #[test]
    fn shape_counts() {
        let count = |f, n| predicted_shape(f, n).unwrap().nodes.len();
        assert_eq!(count(Family::O, 3), 4);
        assert_eq!(count(Family::I, 3), 7);
        assert_eq!(count(Family::B, 3), 7);
        assert_eq!(count(Family::B, 4), 19);
        assert_eq!(count(Family::J, 3), 5);
        assert_eq!(count(Family::J, 4), 9);
        assert_eq!(count(Family::J, 5), 6);
        assert_eq!(count(Family::P, 2), 13);
        assert_eq!(count(Family::P, 3), 16);
        assert_eq!(count(Family::PP, 2), 9);
        assert_eq!(count(Family::M, 3), 10);
        assert!(predicted_shape(Family::P, 1).is_err());
        assert!(predicted_shape(Family::B, 2).is_err());
        assert!(predicted_shape(Family::S, 3).is_err());
    }

    #[test]
    fn o3_shape_names() {
        let s = predicted_shape(Family::O, 3).unwrap();
        let names: Vec<String> = (0..s.nodes.len()).map(|i| s.name(i)).collect();
        assert_eq!(names, ["Delta=R(0)", "R(1)", "R(2)", "R(3)=Nabla"]);
    }

    #[test]
    fn p2_prediction_matches_brute_force() {
        let m = enumerate(Family::P, 2).unwrap();
        let brute = all_congruences(&m).unwrap();
        let shape = predicted_shape(Family::P, 2).unwrap();
        let d = diff_lattices(&m, &brute, &shape).unwrap();
        assert!(d.pass(), "{d:?}");
    }

    #[test]
    fn classify_examples() {
        let a = Diagram::parse("[{1,2,-1,-2}]", Some(2)).unwrap();
        let b = Diagram::parse("[{1,2},{-1,-2}]", Some(2)).unwrap();
        assert_eq!(classify_pair(Family::P, 2, &a, &b).unwrap(), CongruenceLabel::Mu(Tag::Rank(1)));
        assert_eq!(classify_pair(Family::P, 2, &a, &a).unwrap(), CongruenceLabel::Delta);
        assert!(classify_pair(Family::P, 1, &a, &b).is_err());
        let m = enumerate(Family::P, 2).unwrap();
        let l = predicted_lattice(Family::P, 2).unwrap();
        let c = generated_congruence(&m, &[(m.id_of(&a).unwrap(), m.id_of(&b).unwrap())]).unwrap();
        let label = CongruenceLabel::Mu(Tag::Rank(1));
        assert_eq!(l.congruences[l.position_of_label(&label).unwrap()], c);
    }

    #[test]
    fn liftability_on_p2() {
        let m = enumerate(Family::P, 2).unwrap();
        let g = monoid::green(&m);
        for classes in [&g.l, &g.r, &g.h] {
            assert!(liftable_check(&m, &minimal_ideal_partition(&m, classes)).unwrap());
        }
        let min = m.j_class(0);
        assert!(liftable_check(&m, &[min.clone()]).unwrap());
        // Merge two elements that are neither L- nor R-related.
        let (x, y) = min
            .iter()
            .flat_map(|&x| min.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| g.l[x] != g.l[y] && g.r[x] != g.r[y])
            .unwrap();
        let mut xi: Vec<Vec<usize>> = min.iter().filter(|&&z| z != x && z != y).map(|&z| vec![z]).collect();
        xi.push(vec![x, y]);
        assert!(!liftable_check(&m, &xi).unwrap());
    }
}
