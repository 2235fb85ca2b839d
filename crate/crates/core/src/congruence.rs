//! Congruences on an enumerated monoid and the lattice they form.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::catalog::CongruenceLabel;
use crate::diagram::Family;
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::monoid::{classes_by_key, Monoid};

/// Default bound on monoid size for [`all_congruences`].
pub const DEFAULT_LATTICE_GUARD: usize = 1200;

/// Identifies the monoid a congruence lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidKey {
    pub family: Family,
    pub degree: usize,
    pub size: usize,
}

impl MonoidKey {
    pub fn of(m: &Monoid) -> Self {
        MonoidKey {
            family: m.family(),
            degree: m.degree(),
            size: m.len(),
        }
    }
}

/// An equivalence on element ids, stored as class ids in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    key: MonoidKey,
    classes: Vec<u32>,
    num_classes: usize,
}

impl Congruence {
    /// Normalizes an arbitrary class labelling. Compatibility is not checked;
    /// use [`verify_congruence`] for that.
    pub fn from_classes<T: Copy + Eq + std::hash::Hash>(m: &Monoid, raw: &[T]) -> Result<Congruence> {
        if raw.len() != m.len() {
            return Err(Error::BadPartition {
                found: raw.len(),
                expected: m.len(),
            });
        }
        Ok(Congruence::normalized(MonoidKey::of(m), classes_by_key(raw.iter().copied())))
    }

    fn normalized(key: MonoidKey, classes: Vec<u32>) -> Congruence {
        let num_classes = classes.iter().max().map_or(0, |&c| c as usize + 1);
        Congruence {
            key,
            classes,
            num_classes,
        }
    }

    pub fn diagonal(m: &Monoid) -> Congruence {
        Congruence::normalized(MonoidKey::of(m), (0..m.len() as u32).collect())
    }

    pub fn universal(m: &Monoid) -> Congruence {
        Congruence::normalized(MonoidKey::of(m), vec![0; m.len()])
    }

    pub fn key(&self) -> MonoidKey {
        self.key
    }

    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.classes[x] == self.classes[y]
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_classes == self.classes.len()
    }

    /// Class sizes in class-id order.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.classes {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// The classes as sorted id lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.classes.iter().enumerate() {
            out[c as usize].push(x);
        }
        out
    }

    /// Number of related ordered pairs, the diagonal included.
    pub fn pair_count(&self) -> usize {
        self.class_sizes().iter().map(|s| s * s).sum()
    }

    fn same_monoid(&self, other: &Congruence) -> Result<()> {
        if self.key == other.key {
            Ok(())
        } else {
            Err(Error::MonoidMismatch)
        }
    }
}

/// Saturates `dsu` under multiplication, starting from `pending`.
///
/// Only generators are used: if a set of merged pairs is closed under
/// translation by generators, its equivalence closure is a congruence, and a
/// pair that is already related never needs to be processed again.
fn saturate(m: &Monoid, dsu: &mut Dsu, mut pending: Vec<(usize, usize)>) {
    let gens = m.generators();
    while let Some((x, y)) = pending.pop() {
        if dsu.union(x, y) {
            for &g in gens {
                let g = g as usize;
                pending.push((m.mul(g, x), m.mul(g, y)));
                pending.push((m.mul(x, g), m.mul(y, g)));
            }
        }
    }
}

/// The least congruence containing `pairs`.
pub fn generated_congruence(m: &Monoid, pairs: &[(usize, usize)]) -> Result<Congruence> {
    for &(x, y) in pairs {
        for id in [x, y] {
            if id >= m.len() {
                return Err(Error::BadId(id));
            }
        }
    }
    let mut dsu = Dsu::new(m.len());
    saturate(m, &mut dsu, pairs.to_vec());
    Ok(Congruence::normalized(MonoidKey::of(m), dsu.classes()))
}

pub(crate) fn principal(m: &Monoid, x: usize, y: usize) -> Congruence {
    let mut dsu = Dsu::new(m.len());
    saturate(m, &mut dsu, vec![(x, y)]);
    Congruence::normalized(MonoidKey::of(m), dsu.classes())
}

/// The least congruence containing both. Also a plain equivalence join,
/// since the join of two congruences is already compatible.
pub fn join(a: &Congruence, b: &Congruence) -> Result<Congruence> {
    a.same_monoid(b)?;
    let mut dsu = Dsu::new(a.classes.len());
    for part in [&a.classes, &b.classes] {
        let mut first = vec![usize::MAX; part.len()];
        for (x, &c) in part.iter().enumerate() {
            let c = c as usize;
            if first[c] == usize::MAX {
                first[c] = x;
            } else {
                dsu.union(first[c], x);
            }
        }
    }
    Ok(Congruence::normalized(a.key, dsu.classes()))
}

pub fn meet(a: &Congruence, b: &Congruence) -> Result<Congruence> {
    a.same_monoid(b)?;
    Ok(Congruence::normalized(
        a.key,
        classes_by_key(a.classes.iter().zip(&b.classes)),
    ))
}

/// Whether `a` refines `b`.
pub fn leq(a: &Congruence, b: &Congruence) -> Result<bool> {
    a.same_monoid(b)?;
    Ok(refines(&a.classes, &b.classes))
}

fn refines(a: &[u32], b: &[u32]) -> bool {
    let mut image = vec![u32::MAX; a.len()];
    a.iter().zip(b).all(|(&ca, &cb)| {
        let slot = &mut image[ca as usize];
        if *slot == u32::MAX {
            *slot = cb;
            true
        } else {
            *slot == cb
        }
    })
}

/// Whether related pairs stay related under the involution.
pub fn is_star_congruence(m: &Monoid, c: &Congruence) -> bool {
    let star_classes: Vec<u32> = (0..m.len()).map(|x| c.classes[m.star_id(x)]).collect();
    refines(&c.classes, &star_classes)
}

/// Exhaustive check that a class vector is compatible with multiplication
/// on both sides.
pub fn verify_congruence(m: &Monoid, classes: &[u32]) -> bool {
    if classes.len() != m.len() {
        return false;
    }
    (0..m.len()).into_par_iter().all(|s| {
        let left: Vec<u32> = (0..m.len()).map(|x| classes[m.mul(s, x)]).collect();
        let right: Vec<u32> = (0..m.len()).map(|x| classes[m.mul(x, s)]).collect();
        refines(classes, &left) && refines(classes, &right)
    })
}

/// Every congruence on `m`, ordered by refinement.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    /// `leq[i][j]` iff congruence `i` refines congruence `j`.
    pub leq: Vec<Vec<bool>>,
    /// Covering pairs `(lower, upper)`.
    pub hasse: Vec<(usize, usize)>,
    /// Names per node; empty when unknown.
    pub labels: Vec<Vec<CongruenceLabel>>,
}

impl CongruenceLattice {
    /// Deduplicates, sorts (most classes first, then by class vector) and
    /// computes the order and its covers.
    pub fn from_congruences(congruences: impl IntoIterator<Item = Congruence>) -> CongruenceLattice {
        let set: HashSet<Congruence> = congruences.into_iter().collect();
        let mut congruences: Vec<Congruence> = set.into_iter().collect();
        congruences.sort_by(|a, b| {
            b.num_classes
                .cmp(&a.num_classes)
                .then_with(|| a.classes.cmp(&b.classes))
        });
        let k = congruences.len();
        let leq: Vec<Vec<bool>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| refines(&congruences[i].classes, &congruences[j].classes))
                    .collect()
            })
            .collect();
        let hasse = covers(&leq);
        CongruenceLattice {
            labels: vec![Vec::new(); k],
            congruences,
            leq,
            hasse,
        }
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn position(&self, c: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|d| d == c)
    }

    /// Node name: its labels joined by `=`, or `#i` when unlabelled.
    pub fn name(&self, i: usize) -> String {
        if self.labels[i].is_empty() {
            format!("#{i}")
        } else {
            self.labels[i]
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join("=")
        }
    }

    pub fn position_of_label(&self, label: &CongruenceLabel) -> Option<usize> {
        self.labels.iter().position(|ls| ls.contains(label))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq[i][j] || self.leq[j][i]))
    }

    /// Closed under pairwise join and meet.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Congruence> = self.congruences.iter().collect();
        self.congruences.iter().all(|a| {
            self.congruences.iter().all(|b| {
                set.contains(&join(a, b).unwrap()) && set.contains(&meet(a, b).unwrap())
            })
        })
    }
}

/// Transitive reduction of a partial order given as a matrix.
pub(crate) fn covers(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let k = leq.len();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b || !leq[a][b] {
                continue;
            }
            let between = (0..k).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if !between {
                out.push((a, b));
            }
        }
    }
    out
}

/// All distinct principal congruences `(x, y)#` with `x != y`.
pub fn principal_congruences(m: &Monoid) -> Vec<Congruence> {
    let len = m.len();
    let set = (0..len)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, x| {
            for y in x + 1..len {
                acc.insert(principal(m, x, y));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<Congruence> = set.into_iter().collect();
    out.sort_by(|a, b| b.num_classes.cmp(&a.num_classes).then_with(|| a.classes.cmp(&b.classes)));
    out
}

/// The whole congruence lattice, with the default size guard.
pub fn all_congruences(m: &Monoid) -> Result<CongruenceLattice> {
    all_congruences_with(m, DEFAULT_LATTICE_GUARD)
}

/// Principal congruences closed under join. Every congruence of a finite
/// monoid is a join of principal ones, so nothing is missed.
pub fn all_congruences_with(m: &Monoid, max_elements: usize) -> Result<CongruenceLattice> {
    if m.len() > max_elements {
        return Err(Error::SizeGuard {
            family: m.family(),
            degree: m.degree(),
            bound: max_elements,
        });
    }
    let mut found = principal_congruences(m);
    found.push(Congruence::diagonal(m));
    let mut seen: HashSet<Congruence> = found.iter().cloned().collect();
    let mut frontier = found.clone();
    while let Some(c) = frontier.pop() {
        let mut fresh = Vec::new();
        for d in &found {
            let j = join(&c, d)?;
            if seen.insert(j.clone()) {
                fresh.push(j);
            }
        }
        found.extend(fresh.iter().cloned());
        frontier.extend(fresh);
    }
    Ok(CongruenceLattice::from_congruences(found))
}
