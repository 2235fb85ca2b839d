//! Enumerated diagram monoids, Green's relations and ideal structure.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::diagram::{Diagram, Family, Permutation};
use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// Limits applied while enumerating.
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Refuse monoids with more elements than this.
    pub max_elements: usize,
    /// Build a Cayley table when `len^2` is at most this.
    pub max_table_entries: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_elements: 1_000_000,
            max_table_entries: 64_000_000,
        }
    }
}

/// A fully enumerated diagram monoid. Element ids index `elements()`, which
/// is sorted by canonical serialization.
#[derive(Clone, Debug)]
pub struct Monoid {
    family: Family,
    degree: usize,
    elements: Vec<Diagram>,
    index: HashMap<Diagram, u32>,
    identity: usize,
    ranks: Vec<u8>,
    stars: Vec<u32>,
    table: Option<Vec<u32>>,
    generators: Vec<u32>,
}

/// Enumerates `f_n` with default limits.
pub fn enumerate(f: Family, n: usize) -> Result<Monoid> {
    enumerate_with(f, n, &EnumerateOptions::default())
}

pub fn enumerate_with(f: Family, n: usize, opts: &EnumerateOptions) -> Result<Monoid> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > 16 {
        return Err(Error::SizeGuard {
            family: f,
            degree: n,
            bound: opts.max_elements,
        });
    }
    let mut found = Vec::new();
    let mut gen = RgsWalk {
        n,
        family: f,
        labels: vec![0; 2 * n],
        sizes: Vec::with_capacity(2 * n),
        out: &mut found,
        bound: opts.max_elements,
        overflow: false,
    };
    gen.walk(0);
    if gen.overflow {
        return Err(Error::SizeGuard {
            family: f,
            degree: n,
            bound: opts.max_elements,
        });
    }
    let mut keyed: Vec<(String, Diagram)> = found.into_iter().map(|d| (d.to_string(), d)).collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let elements: Vec<Diagram> = keyed.into_iter().map(|(_, d)| d).collect();
    Ok(Monoid::from_elements(f, n, elements, opts.max_table_entries))
}

struct RgsWalk<'a> {
    n: usize,
    family: Family,
    labels: Vec<u8>,
    sizes: Vec<usize>,
    out: &'a mut Vec<Diagram>,
    bound: usize,
    overflow: bool,
}

impl RgsWalk<'_> {
    fn walk(&mut self, p: usize) {
        if self.overflow {
            return;
        }
        let two_n = 2 * self.n;
        if p == two_n {
            let d = Diagram::from_rgs(self.n, &self.labels);
            if d.is_member(self.family) {
                if self.out.len() == self.bound {
                    self.overflow = true;
                    return;
                }
                self.out.push(d);
            }
            return;
        }
        let cap = self.family.max_block().unwrap_or(usize::MAX);
        let pperm = matches!(self.family, Family::I | Family::O | Family::S);
        let nb = self.sizes.len();
        for l in 0..=nb {
            if l < nb {
                if self.sizes[l] >= cap {
                    continue;
                }
                // Partial permutations never join two upper points.
                if pperm && p < self.n {
                    continue;
                }
            }
            if l == nb {
                self.sizes.push(1);
            } else {
                self.sizes[l] += 1;
            }
            let feasible = if self.family.perfect_matching() {
                let open = self.sizes.iter().filter(|&&s| s == 1).count();
                open < two_n - p
            } else {
                true
            };
            if feasible {
                self.labels[p] = l as u8;
                self.walk(p + 1);
            }
            if l == nb {
                self.sizes.pop();
            } else {
                self.sizes[l] -= 1;
            }
        }
    }
}

impl Monoid {
    fn from_elements(family: Family, degree: usize, elements: Vec<Diagram>, max_table: usize) -> Monoid {
        let index: HashMap<Diagram, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i as u32))
            .collect();
        let identity = index[&Diagram::identity(degree)] as usize;
        let ranks = elements.iter().map(|d| d.rank() as u8).collect();
        let stars = elements.iter().map(|d| index[&d.star()]).collect();
        let len = elements.len();
        let table = if len.saturating_mul(len) <= max_table {
            let rows: Vec<Vec<u32>> = elements
                .par_iter()
                .map(|a| elements.iter().map(|b| index[&a.product(b)]).collect())
                .collect();
            Some(rows.concat())
        } else {
            None
        };
        let mut m = Monoid {
            family,
            degree,
            elements,
            index,
            identity,
            ranks,
            stars,
            table,
            generators: Vec::new(),
        };
        m.generators = if m.table.is_some() {
            m.greedy_generators()
        } else {
            (0..len as u32).collect()
        };
        m
    }

    /// Greedy generating set: scan by descending rank and keep every element
    /// not already generated.
    fn greedy_generators(&self) -> Vec<u32> {
        let len = self.len();
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.ranks[i]), i));
        let mut gens: Vec<u32> = Vec::new();
        let mut inside = vec![false; len];
        inside[self.identity] = true;
        for &e in &order {
            if inside[e] {
                continue;
            }
            gens.push(e as u32);
            inside.fill(false);
            inside[self.identity] = true;
            let mut queue = vec![self.identity];
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = self.mul(x, g as usize);
                    if !inside[y] {
                        inside[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Diagram] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Diagram {
        &self.elements[id]
    }

    pub fn id_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).map(|&i| i as usize)
    }

    /// Like [`Monoid::id_of`], with an error naming the diagram.
    pub fn require(&self, d: &Diagram) -> Result<usize> {
        self.id_of(d).ok_or_else(|| Error::NotMember(d.to_string()))
    }

    pub fn identity_id(&self) -> usize {
        self.identity
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.len() + b] as usize,
            None => self.index[&self.elements[a].product(&self.elements[b])] as usize,
        }
    }

    pub fn star_id(&self, a: usize) -> usize {
        self.stars[a] as usize
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a] as usize
    }

    /// A generating set (all elements when no Cayley table was built).
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Ranks that occur, ascending.
    pub fn ranks_present(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree + 1];
        for &r in &self.ranks {
            seen[r as usize] = true;
        }
        (0..=self.degree).filter(|&r| seen[r]).collect()
    }

    fn check_rank(&self, q: usize) -> Result<()> {
        if self.ranks_present().contains(&q) {
            Ok(())
        } else {
            Err(Error::RankNotPresent(q))
        }
    }

    /// The ideal `I_q` of elements of rank at most `q`.
    pub fn ideal(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank(i) <= q).collect()
    }

    /// The J-class `D_q` of elements of rank exactly `q`.
    pub fn j_class(&self, q: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank(i) == q).collect()
    }

    pub fn min_rank(&self) -> usize {
        self.ranks_present()[0]
    }

    /// Two-sided ideal test by exhaustive multiplication.
    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &x in set {
            inside[x] = true;
        }
        set.iter().all(|&x| (0..self.len()).all(|s| inside[self.mul(s, x)] && inside[self.mul(x, s)]))
    }
}

/// Class-id vectors for Green's relations, plus the J-class chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    pub r: Vec<u32>,
    pub l: Vec<u32>,
    pub h: Vec<u32>,
    pub d: Vec<u32>,
    pub j: Vec<u32>,
    /// J-classes from the minimal ideal upwards.
    pub chain: Vec<Vec<usize>>,
    /// Rank of each entry of `chain`.
    pub chain_ranks: Vec<usize>,
}

impl GreenStructure {
    /// Elements of the ideal made of the first `k + 1` chain entries.
    pub fn ideal(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.chain[..=k].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

pub(crate) fn classes_by_key<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Vec<u32> {
    let mut ids: HashMap<K, u32> = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let next = ids.len() as u32;
            *ids.entry(k).or_insert(next)
        })
        .collect()
}

fn meet_classes(a: &[u32], b: &[u32]) -> Vec<u32> {
    classes_by_key(a.iter().zip(b))
}

fn join_classes(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len();
    let mut dsu = Dsu::new(n);
    for part in [a, b] {
        let mut first = HashMap::new();
        for (x, &c) in part.iter().enumerate() {
            let f = *first.entry(c).or_insert(x);
            dsu.union(f, x);
        }
    }
    dsu.classes()
}

/// Green's relations from kernels, domains and ranks.
pub fn green(m: &Monoid) -> GreenStructure {
    let r = classes_by_key(m.elements().iter().map(|d| d.right_key()));
    let l = classes_by_key(m.elements().iter().map(|d| d.left_key()));
    let h = meet_classes(&r, &l);
    let j = classes_by_key((0..m.len()).map(|i| m.rank(i)));
    let ranks = m.ranks_present();
    let chain = ranks.iter().map(|&q| m.j_class(q)).collect();
    GreenStructure {
        r,
        l,
        h,
        d: j.clone(),
        j,
        chain,
        chain_ranks: ranks,
    }
}

type Bits = Vec<u64>;

fn bitset(len: usize, items: impl IntoIterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; len.div_ceil(64)];
    for i in items {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

/// Green's relations by comparing principal ideals directly. Test oracle.
pub fn green_oracle(m: &Monoid) -> GreenStructure {
    let len = m.len();
    let right: Vec<Bits> = (0..len)
        .into_par_iter()
        .map(|a| bitset(len, (0..len).map(|s| m.mul(a, s))))
        .collect();
    let left: Vec<Bits> = (0..len)
        .into_par_iter()
        .map(|a| bitset(len, (0..len).map(|s| m.mul(s, a))))
        .collect();
    let two: Vec<Bits> = (0..len)
        .into_par_iter()
        .map(|a| {
            let mut acc = vec![0u64; len.div_ceil(64)];
            for (w, word) in left[a].iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let x = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (t, s) in acc.iter_mut().zip(&right[x]) {
                        *t |= s;
                    }
                }
            }
            acc
        })
        .collect();
    let r = classes_by_key(right.iter());
    let l = classes_by_key(left.iter());
    let h = meet_classes(&r, &l);
    let d = join_classes(&r, &l);
    let j = classes_by_key(two.iter());
    let count = j.iter().max().map_or(0, |&c| c as usize + 1);
    let mut reps = vec![usize::MAX; count];
    let mut chain = vec![Vec::new(); count];
    for (x, &c) in j.iter().enumerate() {
        if reps[c as usize] == usize::MAX {
            reps[c as usize] = x;
        }
        chain[c as usize].push(x);
    }
    let size = |x: usize| two[x].iter().map(|w| w.count_ones()).sum::<u32>();
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&c| size(reps[c]));
    GreenStructure {
        r,
        l,
        h,
        d,
        j,
        chain: order.iter().map(|&c| chain[c].clone()).collect(),
        chain_ranks: order.iter().map(|&c| m.rank(reps[c])).collect(),
    }
}

/// Idempotents and projections (idempotents fixed by the involution).
pub fn idempotents_and_projections(m: &Monoid) -> (Vec<usize>, Vec<usize>) {
    let idem: Vec<usize> = (0..m.len()).filter(|&a| m.mul(a, a) == a).collect();
    let proj = idem.iter().copied().filter(|&a| m.star_id(a) == a).collect();
    (idem, proj)
}

/// Projections of rank `q` together with the 0/1 matrix whose `(i, j)`
/// entry records whether `rank(p_i p_j) = q`.
#[derive(Clone, Debug)]
pub struct SandwichMatrix {
    pub rank: usize,
    pub projections: Vec<usize>,
    pub rows: Vec<Vec<bool>>,
}

impl SandwichMatrix {
    pub fn distinct_rows(&self) -> bool {
        let mut rows = self.rows.clone();
        rows.sort();
        rows.dedup();
        rows.len() == self.rows.len()
    }

    /// Rows with no zero entry.
    pub fn full_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].iter().all(|&b| b)).collect()
    }
}

pub fn sandwich_matrix(m: &Monoid, q: usize) -> Result<SandwichMatrix> {
    m.check_rank(q)?;
    let (_, proj) = idempotents_and_projections(m);
    let projections: Vec<usize> = proj.into_iter().filter(|&p| m.rank(p) == q).collect();
    let rows = projections
        .iter()
        .map(|&a| projections.iter().map(|&b| m.rank(m.mul(a, b)) == q).collect())
        .collect();
    Ok(SandwichMatrix {
        rank: q,
        projections,
        rows,
    })
}

/// The canonical rank-`q` idempotent of `f_n`: a partial identity, or for
/// Brauer and Jones monoids `{i,i'}` for `i <= q` followed by arcs
/// `{q+1,q+2}, ...` on both rows.
pub fn canonical_idempotent(f: Family, n: usize, q: usize) -> Result<Diagram> {
    group_element(f, n, &Permutation::identity(q))
}

/// The element `sigma-bar` of the maximal subgroup at the canonical
/// rank-`q` idempotent, where `q` is the degree of `sigma`.
pub fn group_element(f: Family, n: usize, sigma: &Permutation) -> Result<Diagram> {
    let q = sigma.degree();
    if q > n || (f == Family::S && q != n) {
        return Err(Error::RankNotPresent(q));
    }
    let mut blocks: Vec<Vec<i32>> = (1..=q).map(|i| vec![i as i32, -(sigma.apply(i) as i32)]).collect();
    if f.perfect_matching() {
        if (n - q) % 2 != 0 {
            return Err(Error::RankNotPresent(q));
        }
        for i in (q + 1..=n).step_by(2) {
            let i = i as i32;
            blocks.push(vec![i, i + 1]);
            blocks.push(vec![-i, -(i + 1)]);
        }
    } else {
        for i in q + 1..=n {
            blocks.push(vec![i as i32]);
            blocks.push(vec![-(i as i32)]);
        }
    }
    let d = Diagram::new(n, &blocks)?;
    if !d.is_member(f) {
        return Err(Error::NotMember(d.to_string()));
    }
    Ok(d)
}

/// The maximal subgroup at the canonical rank-`q` idempotent.
#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    pub rank: usize,
    pub idempotent: usize,
    /// Sorted element ids.
    pub elements: Vec<usize>,
    /// `perms[k]` is the permutation `sigma` with `elements[k] = sigma-bar`.
    pub perms: Vec<Permutation>,
}

pub fn maximal_subgroup(m: &Monoid, q: usize) -> Result<MaximalSubgroup> {
    m.check_rank(q)?;
    let e = canonical_idempotent(m.family(), m.degree(), q)?;
    let idempotent = m.require(&e)?;
    let n = m.degree();
    let mut elements = Vec::new();
    let mut perms = Vec::new();
    for (id, d) in m.elements().iter().enumerate() {
        if !d.h_related(&e) {
            continue;
        }
        let labels = d.labels();
        let images = (0..q)
            .map(|i| (n..2 * n).find(|&p| labels[p] == labels[i]).map(|p| p - n + 1).unwrap_or(0))
            .collect();
        elements.push(id);
        perms.push(Permutation::new(images)?);
    }
    Ok(MaximalSubgroup {
        rank: q,
        idempotent,
        elements,
        perms,
    })
}

/// Checks that `xa J x` implies `xa R x` and `ax J x` implies `ax L x`.
pub fn check_stability(m: &Monoid) -> bool {
    let g = green(m);
    (0..m.len()).into_par_iter().all(|x| {
        (0..m.len()).all(|a| {
            let xa = m.mul(x, a);
            let ax = m.mul(a, x);
            (g.j[xa] != g.j[x] || g.r[xa] == g.r[x]) && (g.j[ax] != g.j[x] || g.l[ax] == g.l[x])
        })
    })
}

/// Facts about the minimal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalIdeal {
    pub rank: usize,
    pub elements: Vec<usize>,
    pub all_idempotent: bool,
    pub single_d_class: bool,
    pub is_rectangular_band: bool,
    pub r_classes: usize,
    pub l_classes: usize,
}

pub fn check_minimal_ideal(m: &Monoid) -> MinimalIdeal {
    let rank = m.min_rank();
    let elements = m.j_class(rank);
    let g = green_oracle(m);
    let all_idempotent = elements.iter().all(|&x| m.mul(x, x) == x);
    let single_d_class = elements.iter().all(|&x| g.d[x] == g.d[elements[0]]);
    let sandwich = elements
        .iter()
        .all(|&x| elements.iter().all(|&y| m.mul(m.mul(x, y), x) == x));
    let count = |v: &[u32]| {
        let mut c: Vec<u32> = elements.iter().map(|&x| v[x]).collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    MinimalIdeal {
        rank,
        all_idempotent,
        single_d_class,
        is_rectangular_band: all_idempotent && single_d_class && sandwich,
        r_classes: count(&g.r),
        l_classes: count(&g.l),
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jones_rank_two_has_one_full_row() {
        for n in [4, 6] {
            let m = enumerate(Family::J, n).unwrap();
            let s = sandwich_matrix(&m, 2).unwrap();
            let full = s.full_rows();
            assert_eq!(full.len(), 1);
            let expect = if n == 4 { "P4 [{1,-1},{2,3},{4,-4},{-2,-3}]" } else { "P6 [{1,-1},{2,3},{4,5},{6,-6},{-2,-3},{-4,-5}]" };
            assert_eq!(m.element(s.projections[full[0]]).to_string(), expect);
            assert!(s.distinct_rows());
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(Family::P, 1).unwrap().len(), 2);
        assert_eq!(enumerate(Family::P, 2).unwrap().len(), 15);
        assert_eq!(enumerate(Family::S, 3).unwrap().len(), 6);
        assert_eq!(enumerate(Family::J, 4).unwrap().len(), 14);
    }

    #[test]
    fn elements_sorted_by_serialization() {
        let m = enumerate(Family::PB, 2).unwrap();
        let s: Vec<String> = m.elements().iter().map(|d| d.to_string()).collect();
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn size_guard_names_bound() {
        let opts = EnumerateOptions {
            max_elements: 10,
            ..Default::default()
        };
        assert_eq!(
            enumerate_with(Family::P, 2, &opts).unwrap_err(),
            Error::SizeGuard {
                family: Family::P,
                degree: 2,
                bound: 10
            }
        );
    }

    #[test]
    fn generators_generate() {
        for (f, n) in [(Family::P, 3), (Family::B, 4), (Family::J, 5), (Family::O, 3)] {
            let m = enumerate(f, n).unwrap();
            let mut inside = vec![false; m.len()];
            inside[m.identity_id()] = true;
            let mut queue = vec![m.identity_id()];
            while let Some(x) = queue.pop() {
                for &g in m.generators() {
                    let y = m.mul(x, g as usize);
                    if !inside[y] {
                        inside[y] = true;
                        queue.push(y);
                    }
                }
            }
            assert!(inside.iter().all(|&b| b), "{f}{n}");
        }
    }

    #[test]
    fn table_agrees_with_direct_products() {
        let m = enumerate(Family::PB, 2).unwrap();
        let opts = EnumerateOptions {
            max_table_entries: 0,
            ..Default::default()
        };
        let lazy = enumerate_with(Family::PB, 2, &opts).unwrap();
        assert!(!lazy.has_table());
        for a in 0..m.len() {
            for b in 0..m.len() {
                assert_eq!(m.mul(a, b), lazy.mul(a, b));
            }
        }
    }

    #[test]
    fn subgroup_orders() {
        let p3 = enumerate(Family::P, 3).unwrap();
        assert_eq!(maximal_subgroup(&p3, 3).unwrap().elements.len(), 6);
        assert_eq!(maximal_subgroup(&p3, 2).unwrap().elements.len(), 2);
        let b4 = enumerate(Family::B, 4).unwrap();
        let h = maximal_subgroup(&b4, 2).unwrap();
        assert_eq!(h.elements.len(), 2);
        assert!(maximal_subgroup(&b4, 1).is_err());
        let j4 = enumerate(Family::J, 4).unwrap();
        assert_eq!(maximal_subgroup(&j4, 2).unwrap().elements.len(), 1);
    }

    #[test]
    fn group_elements_match_their_permutations() {
        let p3 = enumerate(Family::P, 3).unwrap();
        let h = maximal_subgroup(&p3, 3).unwrap();
        for (&id, sigma) in h.elements.iter().zip(&h.perms) {
            assert_eq!(&group_element(Family::P, 3, sigma).unwrap(), p3.element(id));
        }
    }

    #[test]
    fn trivial_monoid_green() {
        let m = enumerate(Family::S, 1).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(green(&m), green_oracle(&m));
    }
}
