//! Partition diagrams and the operations on single diagrams.
//!
//! A diagram of degree `n` is a set partition of the upper points `1..=n`
//! and the lower points `1'..=n'`. Lower points are written as negative
//! integers, so `-3` is `3'`.
//!
//! Internally the `2n` points are indexed `0..2n` (upper points first) and a
//! diagram stores one block label per point. Labels are assigned in order of
//! first occurrence, which makes the label vector a restricted-growth string
//! and a canonical representative: two diagrams are equal iff their vectors
//! are equal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// A signed vertex: `i > 0` is the upper point `i`, `-i` is the lower point `i'`.
pub type Vertex = i32;

/// Largest supported degree. Labels are stored as bytes.
pub const MAX_DEGREE: usize = 100;

/// The diagram families handled by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Partition monoid.
    P,
    /// Partial Brauer monoid.
    PB,
    /// Brauer monoid.
    B,
    /// Planar partition monoid.
    PP,
    /// Motzkin monoid.
    M,
    /// Jones (Temperley-Lieb) monoid.
    J,
    /// Symmetric inverse monoid.
    I,
    /// Order-preserving partial permutations.
    O,
    /// Symmetric group.
    S,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::P,
        Family::PB,
        Family::B,
        Family::PP,
        Family::M,
        Family::J,
        Family::I,
        Family::O,
        Family::S,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::PB => "PB",
            Family::B => "B",
            Family::PP => "PP",
            Family::M => "M",
            Family::J => "J",
            Family::I => "I",
            Family::O => "O",
            Family::S => "S",
        }
    }

    /// Largest block size allowed, if bounded.
    pub(crate) fn max_block(self) -> Option<usize> {
        match self {
            Family::P | Family::PP => None,
            _ => Some(2),
        }
    }

    /// Every block has exactly two points.
    pub(crate) fn perfect_matching(self) -> bool {
        matches!(self, Family::B | Family::J)
    }

    /// Maximal subgroups are full symmetric groups (as opposed to trivial).
    pub fn has_symmetric_subgroups(self) -> bool {
        matches!(self, Family::P | Family::PB | Family::B | Family::I | Family::S)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// A permutation of `1..=q`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let q = images.len();
        let mut seen = vec![false; q + 1];
        for &i in &images {
            if i == 0 || i > q || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(q: usize) -> Self {
        Permutation {
            images: (1..=q).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let q = self.degree();
        let mut seen = vec![false; q];
        let mut out = Vec::new();
        for start in 0..q {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] - 1;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Member of the Klein four-group {id, (12)(34), (13)(24), (14)(23)}.
    pub fn is_klein(&self) -> bool {
        if self.degree() != 4 {
            return false;
        }
        let mut t = self.cycle_type();
        t.sort_unstable();
        t == [1, 1, 1, 1] || t == [2, 2]
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let q = self.degree();
        let mut seen = vec![false; q + 1];
        for start in 1..=q {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.apply(i);
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Rank, domain, codomain, kernel and cokernel of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub rank: usize,
    pub dom: Vec<usize>,
    pub codom: Vec<usize>,
    pub ker: Vec<Vec<usize>>,
    pub coker: Vec<Vec<usize>>,
}

/// A partition diagram in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    labels: Box<[u8]>,
}

/// Validated constructor; blocks may be listed in any order.
pub fn make_diagram(n: usize, blocks: &[Vec<Vertex>]) -> Result<Diagram> {
    Diagram::new(n, blocks)
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    Ok(())
}

impl Diagram {
    pub fn new(n: usize, blocks: &[Vec<Vertex>]) -> Result<Diagram> {
        check_degree(n)?;
        let mut labels = vec![usize::MAX; 2 * n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &v in block {
                let p = point_of(n, v).ok_or(Error::VertexOutOfRange { vertex: v, degree: n })?;
                if labels[p] != usize::MAX {
                    return Err(Error::DuplicateVertex(v));
                }
                labels[p] = b;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MissingVertex(vertex_of(n, p)));
        }
        Ok(Diagram::from_labels(n, &labels))
    }

    /// Canonicalizes an arbitrary labelling of the `2n` points.
    pub(crate) fn from_labels(n: usize, raw: &[usize]) -> Diagram {
        debug_assert_eq!(raw.len(), 2 * n);
        let mut map: Vec<(usize, u8)> = Vec::with_capacity(raw.len());
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let l = match map.iter().find(|(k, _)| *k == r) {
                Some(&(_, l)) => l,
                None => {
                    let l = map.len() as u8;
                    map.push((r, l));
                    l
                }
            };
            labels.push(l);
        }
        Diagram {
            n,
            labels: labels.into_boxed_slice(),
        }
    }

    /// Wraps labels already in restricted-growth form.
    pub(crate) fn from_rgs(n: usize, labels: &[u8]) -> Diagram {
        Diagram {
            n,
            labels: labels.into(),
        }
    }

    pub fn identity(n: usize) -> Diagram {
        let labels: Vec<u8> = (0..n).chain(0..n).map(|i| i as u8).collect();
        Diagram::from_rgs(n, &labels)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Block label of each point, upper points first.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Blocks in canonical order, each listed in canonical vertex order.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(vertex_of(self.n, p));
        }
        out
    }

    /// Per block: (has an upper point, has a lower point, size).
    fn block_profile(&self) -> Vec<(bool, bool, usize)> {
        let mut prof = vec![(false, false, 0); self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            let e = &mut prof[l as usize];
            if p < self.n {
                e.0 = true;
            } else {
                e.1 = true;
            }
            e.2 += 1;
        }
        prof
    }

    fn transversal_mask(&self) -> Vec<bool> {
        self.block_profile().iter().map(|&(u, l, _)| u && l).collect()
    }

    pub fn rank(&self) -> usize {
        self.block_profile().iter().filter(|&&(u, l, _)| u && l).count()
    }

    /// Diagram product (`self` on top).
    ///
    /// # Panics
    /// If the degrees differ; see [`multiply`] for the checked version.
    pub fn product(&self, other: &Diagram) -> Diagram {
        assert_eq!(self.n, other.n, "degree mismatch");
        let n = self.n;
        // Product graph on 3n vertices: top row 0..n, middle n..2n, bottom 2n..3n.
        // Point p of `self` is vertex p; point p of `other` is vertex n + p.
        let mut dsu = Dsu::new(3 * n);
        let mut first = [u16::MAX; 2 * MAX_DEGREE];
        for (p, &l) in self.labels.iter().enumerate() {
            let l = l as usize;
            if first[l] == u16::MAX {
                first[l] = p as u16;
            } else {
                dsu.union(first[l] as usize, p);
            }
        }
        first[..2 * n].fill(u16::MAX);
        for (p, &l) in other.labels.iter().enumerate() {
            let l = l as usize;
            if first[l] == u16::MAX {
                first[l] = (n + p) as u16;
            } else {
                dsu.union(first[l] as usize, n + p);
            }
        }
        let mut id = vec![u8::MAX; 3 * n];
        let mut labels = Vec::with_capacity(2 * n);
        let mut next = 0u8;
        for v in (0..n).chain(2 * n..3 * n) {
            let r = dsu.find(v);
            if id[r] == u8::MAX {
                id[r] = next;
                next += 1;
            }
            labels.push(id[r]);
        }
        Diagram::from_rgs(n, &labels)
    }

    /// Reflection in the horizontal axis.
    pub fn star(&self) -> Diagram {
        let n = self.n;
        let raw: Vec<usize> = (0..2 * n)
            .map(|p| self.labels[if p < n { p + n } else { p - n }] as usize)
            .collect();
        Diagram::from_labels(n, &raw)
    }

    pub fn stats(&self) -> Stats {
        let n = self.n;
        let tr = self.transversal_mask();
        let nb = self.num_blocks();
        let mut upper = vec![Vec::new(); nb];
        let mut lower = vec![Vec::new(); nb];
        for (p, &l) in self.labels.iter().enumerate() {
            if p < n {
                upper[l as usize].push(p + 1);
            } else {
                lower[l as usize].push(p - n + 1);
            }
        }
        let dom = (0..n).filter(|&p| tr[self.labels[p] as usize]).map(|p| p + 1).collect();
        let codom = (n..2 * n)
            .filter(|&p| tr[self.labels[p] as usize])
            .map(|p| p - n + 1)
            .collect();
        let mut coker: Vec<Vec<usize>> = lower.into_iter().filter(|c| !c.is_empty()).collect();
        coker.sort();
        Stats {
            rank: tr.iter().filter(|&&t| t).count(),
            dom,
            codom,
            ker: upper.into_iter().filter(|c| !c.is_empty()).collect(),
            coker,
        }
    }

    /// Kernel as a restricted-growth string over the upper points, with the
    /// domain as a bitmask. Equal keys are exactly R-related pairs.
    pub fn right_key(&self) -> (Vec<u8>, u128) {
        self.row_key(0)
    }

    /// Cokernel and codomain; equal keys are exactly L-related pairs.
    pub fn left_key(&self) -> (Vec<u8>, u128) {
        self.row_key(self.n)
    }

    fn row_key(&self, offset: usize) -> (Vec<u8>, u128) {
        let n = self.n;
        let tr = self.transversal_mask();
        let row = &self.labels[offset..offset + n];
        let raw: Vec<usize> = row.iter().map(|&l| l as usize).collect();
        let mut mask = 0u128;
        for (i, &l) in row.iter().enumerate() {
            if tr[l as usize] {
                mask |= 1 << i;
            }
        }
        (rgs(&raw), mask)
    }

    pub fn r_related(&self, other: &Diagram) -> bool {
        self.right_key() == other.right_key()
    }

    pub fn l_related(&self, other: &Diagram) -> bool {
        self.left_key() == other.left_key()
    }

    pub fn h_related(&self, other: &Diagram) -> bool {
        self.r_related(other) && self.l_related(other)
    }

    /// Noncrossing test in the circular order `1..n, n'..1'`.
    pub fn is_planar(&self) -> bool {
        let n = self.n;
        let point_at = |pos: usize| if pos < n { pos } else { 3 * n - 1 - pos };
        let nb = self.num_blocks();
        let mut last = vec![0usize; nb];
        for pos in 0..2 * n {
            last[self.labels[point_at(pos)] as usize] = pos;
        }
        let mut open = vec![false; nb];
        let mut stack: Vec<usize> = Vec::new();
        for pos in 0..2 * n {
            let b = self.labels[point_at(pos)] as usize;
            if open[b] {
                if stack.last() != Some(&b) {
                    return false;
                }
            } else {
                open[b] = true;
                stack.push(b);
            }
            if last[b] == pos {
                stack.pop();
            }
        }
        true
    }

    pub fn is_member(&self, f: Family) -> bool {
        let prof = self.block_profile();
        let max2 = prof.iter().all(|&(_, _, s)| s <= 2);
        match f {
            Family::P => true,
            Family::PB => max2,
            Family::B => prof.iter().all(|&(_, _, s)| s == 2),
            Family::PP => self.is_planar(),
            Family::M => max2 && self.is_planar(),
            Family::J => prof.iter().all(|&(_, _, s)| s == 2) && self.is_planar(),
            Family::I => self.is_partial_permutation(),
            Family::S => self.is_partial_permutation() && self.rank() == self.n,
            Family::O => self.is_partial_permutation() && self.is_order_preserving(),
        }
    }

    fn is_partial_permutation(&self) -> bool {
        self.block_profile()
            .iter()
            .all(|&(u, l, s)| s == 1 || (s == 2 && u && l))
    }

    /// Transversals `i -> j'` of a partial permutation, sorted by `i`.
    fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let tr = self.transversal_mask();
        let mut lower_of = vec![0usize; self.num_blocks()];
        for p in n..2 * n {
            lower_of[self.labels[p] as usize] = p - n + 1;
        }
        (0..n)
            .filter(|&p| tr[self.labels[p] as usize])
            .map(|p| (p + 1, lower_of[self.labels[p] as usize]))
            .collect()
    }

    fn is_order_preserving(&self) -> bool {
        self.arrows().windows(2).all(|w| w[0].1 < w[1].1)
    }

    /// Splits every transversal into its upper and lower parts.
    pub fn hat_partition(&self) -> Diagram {
        let n = self.n;
        let tr = self.transversal_mask();
        let nb = self.num_blocks();
        let raw: Vec<usize> = (0..2 * n)
            .map(|p| {
                let l = self.labels[p] as usize;
                if p >= n && tr[l] {
                    l + nb
                } else {
                    l
                }
            })
            .collect();
        Diagram::from_labels(n, &raw)
    }

    /// Replaces the two transversals `{i,j'}, {k,l'}` of a rank-2 Brauer
    /// diagram by `{i,k}, {j',l'}`. Rank-0 Brauer diagrams are fixed.
    pub fn hat_brauer(&self) -> Result<Diagram> {
        if !self.is_member(Family::B) {
            return Err(Error::NotBrauer);
        }
        match self.rank() {
            0 => Ok(self.clone()),
            2 => {
                let n = self.n;
                let tr = self.transversal_mask();
                let t: Vec<usize> = (0..tr.len()).filter(|&b| tr[b]).collect();
                let raw: Vec<usize> = (0..2 * n)
                    .map(|p| {
                        let l = self.labels[p] as usize;
                        if tr[l] {
                            if p < n {
                                t[0]
                            } else {
                                t[1]
                            }
                        } else {
                            l
                        }
                    })
                    .collect();
                Ok(Diagram::from_labels(n, &raw))
            }
            r => Err(Error::BadHatRank(r)),
        }
    }

    /// The permutation comparing two H-related diagrams of positive rank.
    ///
    /// With `A_1..A_q` the transversal kernel classes of `self` ordered by
    /// their minima, `self * other.star()` joins `A_i` to `A_{i sigma}'`.
    pub fn phi(&self, other: &Diagram) -> Result<Permutation> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if !self.h_related(other) {
            return Err(Error::NotHRelated);
        }
        let q = self.rank();
        if q == 0 {
            return Err(Error::RankZero);
        }
        let n = self.n;
        let tr = self.transversal_mask();
        // Class index of each transversal block, ordered by minimum upper point.
        let mut class_of = vec![usize::MAX; self.num_blocks()];
        let mut mins = Vec::with_capacity(q);
        for p in 0..n {
            let l = self.labels[p] as usize;
            if tr[l] && class_of[l] == usize::MAX {
                class_of[l] = mins.len();
                mins.push(p);
            }
        }
        let c = self.product(&other.star());
        let mut images = Vec::with_capacity(q);
        for &m in &mins {
            let block = c.labels[m];
            let lower = (n..2 * n)
                .find(|&p| c.labels[p] == block)
                .ok_or(Error::NotHRelated)?;
            let j = class_of[self.labels[lower - n] as usize];
            images.push(j + 1);
        }
        Permutation::new(images)
    }

    /// Embedding of a planar diagram of degree `m` into the Jones monoid of
    /// degree `2m`, obtained by tracing the boundary of each block.
    pub fn pp_to_jones(&self) -> Result<Diagram> {
        if !self.is_planar() {
            return Err(Error::NotPlanar);
        }
        let m = self.n as i32;
        // Each point is thickened into (minus, plus) in the doubled diagram,
        // listed so that walking the circle visits minus before plus.
        let thick = |v: Vertex| -> (Vertex, Vertex) {
            if v > 0 {
                (2 * v - 1, 2 * v)
            } else {
                (2 * v, 2 * v + 1)
            }
        };
        let mut arcs: Vec<Vec<Vertex>> = Vec::with_capacity(2 * self.n);
        for block in self.blocks() {
            // Circular order: upper ascending, then lower descending.
            let mut ring: Vec<Vertex> = block.iter().copied().filter(|&v| v > 0).collect();
            let mut low: Vec<Vertex> = block.iter().copied().filter(|&v| v < 0).collect();
            low.sort_unstable();
            ring.extend(low);
            for (k, &v) in ring.iter().enumerate() {
                let w = ring[(k + 1) % ring.len()];
                arcs.push(vec![thick(v).1, thick(w).0]);
            }
        }
        Diagram::new(2 * m as usize, &arcs)
    }

    /// Embedding of a partial permutation of degree `m` into the Brauer
    /// monoid of degree `2m`.
    pub fn pperm_to_brauer(&self) -> Result<Diagram> {
        if !self.is_partial_permutation() {
            return Err(Error::NotPartialPermutation);
        }
        let n = self.n;
        let arrows = self.arrows();
        let mut up = vec![false; n + 1];
        let mut down = vec![false; n + 1];
        let mut blocks = Vec::with_capacity(2 * n);
        for &(i, j) in &arrows {
            up[i] = true;
            down[j] = true;
            let (i, j) = (i as i32, j as i32);
            blocks.push(vec![2 * i - 1, -(2 * j - 1)]);
            blocks.push(vec![2 * i, -(2 * j)]);
        }
        for i in 1..=n {
            let k = i as i32;
            if !up[i] {
                blocks.push(vec![2 * k - 1, 2 * k]);
            }
            if !down[i] {
                blocks.push(vec![-(2 * k - 1), -(2 * k)]);
            }
        }
        Diagram::new(2 * n, &blocks)
    }

    /// Parses `P6 [{1,4},{2,-1}]` or, given a degree, a bare `[{1,-1}]`.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Diagram> {
        let s = s.trim();
        let open = s
            .find('[')
            .ok_or_else(|| Error::Parse("missing '['".into()))?;
        let prefix = s[..open].trim();
        let digits = prefix.trim_start_matches(|c: char| c.is_ascii_alphabetic());
        let stated = if digits.is_empty() {
            if prefix.is_empty() {
                None
            } else {
                return Err(Error::Parse(format!("bad prefix {prefix:?}")));
            }
        } else {
            Some(
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad degree {digits:?}")))?,
            )
        };
        let n = match (stated, degree) {
            (Some(a), Some(b)) if a != b => return Err(Error::DegreeMismatch { left: a, right: b }),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::Parse("degree not given".into())),
        };
        let body = s[open + 1..]
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("missing ']'".into()))?;
        let mut blocks = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("expected '{{' at {rest:?}")))?;
            let close = inner
                .find('}')
                .ok_or_else(|| Error::Parse("unterminated block".into()))?;
            let mut block = Vec::new();
            for tok in inner[..close].split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                block.push(
                    tok.parse::<Vertex>()
                        .map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?,
                );
            }
            blocks.push(block);
            rest = inner[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            }
        }
        Diagram::new(n, &blocks)
    }
}

/// Checked product.
pub fn multiply(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if a.n != b.n {
        return Err(Error::DegreeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(a.product(b))
}

fn point_of(n: usize, v: Vertex) -> Option<usize> {
    let a = v.unsigned_abs() as usize;
    if a == 0 || a > n {
        None
    } else if v > 0 {
        Some(a - 1)
    } else {
        Some(n + a - 1)
    }
}

fn vertex_of(n: usize, p: usize) -> Vertex {
    if p < n {
        (p + 1) as Vertex
    } else {
        -((p - n + 1) as Vertex)
    }
}

fn rgs(raw: &[usize]) -> Vec<u8> {
    let mut seen: Vec<usize> = Vec::new();
    raw.iter()
        .map(|r| match seen.iter().position(|s| s == r) {
            Some(i) => i as u8,
            None => {
                seen.push(*r);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{} [", self.n)?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Diagram::parse(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, blocks: &[&[i32]]) -> Diagram {
        let blocks: Vec<Vec<i32>> = blocks.iter().map(|b| b.to_vec()).collect();
        Diagram::new(n, &blocks).unwrap()
    }

    fn sample_alpha() -> Diagram {
        d(6, &[&[1, 4], &[2, 3, -4, -5], &[5, 6], &[-1, -2, -6], &[-3]])
    }

    fn sample_beta() -> Diagram {
        d(6, &[&[1, 2], &[3, 4, -1], &[5, -4, -5, -6], &[6], &[-2], &[-3]])
    }

    #[test]
    fn canonical_serialization() {
        let a = sample_alpha();
        assert_eq!(a.to_string(), "P6 [{1,4},{2,3,-4,-5},{5,6},{-1,-2,-6},{-3}]");
        let shuffled = d(6, &[&[-3], &[-6, -1, -2], &[6, 5], &[-5, 3, -4, 2], &[4, 1]]);
        assert_eq!(a, shuffled);
        assert_eq!(a.to_string().parse::<Diagram>().unwrap(), a);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Diagram::new(2, &[vec![1], vec![1, -1], vec![2, -2]]),
            Err(Error::DuplicateVertex(1))
        );
        assert_eq!(
            Diagram::new(2, &[vec![1, -1], vec![2]]),
            Err(Error::MissingVertex(-2))
        );
        assert_eq!(
            Diagram::new(2, &[vec![1, -1], vec![2, -3]]),
            Err(Error::VertexOutOfRange { vertex: -3, degree: 2 })
        );
        assert_eq!(Diagram::new(0, &[]), Err(Error::ZeroDegree));
    }

    #[test]
    fn identity_forms() {
        assert_eq!(Diagram::identity(1).to_string(), "P1 [{1,-1}]");
        assert_eq!(Diagram::identity(3).to_string(), "P3 [{1,-1},{2,-2},{3,-3}]");
    }

    #[test]
    fn worked_example_product() {
        let ab = sample_alpha().product(&sample_beta());
        assert_eq!(ab, d(6, &[&[1, 4], &[2, 3, -1, -4, -5, -6], &[5, 6], &[-2], &[-3]]));
        assert_eq!(ab.to_string(), "P6 [{1,4},{2,3,-1,-4,-5,-6},{5,6},{-2},{-3}]");
    }

    #[test]
    fn worked_example_stats() {
        let s = sample_alpha().stats();
        assert_eq!(s.rank, 1);
        assert_eq!(s.dom, vec![2, 3]);
        assert_eq!(s.codom, vec![4, 5]);
        assert_eq!(s.ker, vec![vec![1, 4], vec![2, 3], vec![5, 6]]);
        assert_eq!(s.coker, vec![vec![1, 2, 6], vec![3], vec![4, 5]]);
    }

    #[test]
    fn idempotent_in_pb3() {
        let a = d(3, &[&[1, 2], &[3, -3], &[-1, -2]]);
        assert_eq!(a.product(&a), a);
    }

    #[test]
    fn star_antihomomorphism_on_worked_example() {
        let (a, b) = (sample_alpha(), sample_beta());
        assert_eq!(a.product(&b).star(), b.star().product(&a.star()));
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn planarity_of_worked_example() {
        assert!(sample_beta().is_planar());
        assert!(!sample_alpha().is_planar());
    }

    #[test]
    fn crossing_transposition() {
        let a = d(3, &[&[1, -2], &[2, -1], &[3, -3]]);
        for f in [Family::B, Family::I, Family::S, Family::P, Family::PB] {
            assert!(a.is_member(f), "{f}");
        }
        for f in [Family::J, Family::O, Family::PP, Family::M] {
            assert!(!a.is_member(f), "{f}");
        }
    }

    #[test]
    fn hat_partition_of_worked_example() {
        let h = sample_alpha().hat_partition();
        assert_eq!(h, d(6, &[&[1, 4], &[2, 3], &[5, 6], &[-1, -2, -6], &[-3], &[-4, -5]]));
        assert_eq!(h.hat_partition(), h);
    }

    #[test]
    fn hat_brauer_of_rank_two() {
        // Upper arcs {1,2},{4,5}; lower arcs {3',4'},{2',5'}; 3 -> 1', 6 -> 6'.
        let a = d(6, &[&[1, 2], &[4, 5], &[-3, -4], &[-2, -5], &[3, -1], &[6, -6]]);
        let h = a.hat_brauer().unwrap();
        assert_eq!(h, d(6, &[&[1, 2], &[4, 5], &[-3, -4], &[-2, -5], &[3, 6], &[-1, -6]]));
        assert_eq!(Diagram::identity(3).hat_brauer(), Err(Error::BadHatRank(3)));
        assert_eq!(sample_alpha().hat_brauer(), Err(Error::NotBrauer));
    }

    #[test]
    fn phi_transposition() {
        let id = Diagram::identity(2);
        let t = d(2, &[&[1, -2], &[2, -1]]);
        assert_eq!(id.phi(&t).unwrap().images(), &[2, 1]);
        assert!(id.phi(&id).unwrap().is_identity());
        let r0 = d(2, &[&[1, 2], &[-1, -2]]);
        assert_eq!(id.phi(&r0), Err(Error::NotHRelated));
        assert_eq!(r0.phi(&r0), Err(Error::RankZero));
    }

    #[test]
    fn jones_embedding_of_the_planar_example() {
        let a = d(
            8,
            &[&[1, 4, -1, -2, -4], &[7, -8], &[2, 3], &[5], &[6], &[8], &[-3], &[-5, -6, -7]],
        );
        let expected = d(
            16,
            &[
                &[2, 7],
                &[3, 6],
                &[4, 5],
                &[9, 10],
                &[11, 12],
                &[15, 16],
                &[1, -1],
                &[8, -8],
                &[13, -15],
                &[14, -16],
                &[-2, -3],
                &[-4, -7],
                &[-5, -6],
                &[-9, -14],
                &[-10, -11],
                &[-12, -13],
            ],
        );
        let j = a.pp_to_jones().unwrap();
        assert_eq!(j, expected);
        assert!(j.is_member(Family::J));
        assert_eq!(j.rank(), 2 * a.rank());
        assert_eq!(Diagram::identity(3).pp_to_jones().unwrap(), Diagram::identity(6));
        assert_eq!(sample_alpha().pp_to_jones(), Err(Error::NotPlanar));
    }

    #[test]
    fn brauer_embedding_of_the_partial_permutation() {
        // 1 -> 3', 3 -> 6', 4 -> 2', 5 -> 5'.
        let a = d(6, &[&[1, -3], &[3, -6], &[4, -2], &[5, -5], &[2], &[6], &[-1], &[-4]]);
        let b = a.pperm_to_brauer().unwrap();
        let expected = d(
            12,
            &[
                &[1, -5],
                &[2, -6],
                &[5, -11],
                &[6, -12],
                &[7, -3],
                &[8, -4],
                &[9, -9],
                &[10, -10],
                &[3, 4],
                &[11, 12],
                &[-1, -2],
                &[-7, -8],
            ],
        );
        assert_eq!(b, expected);
        assert_eq!(Diagram::identity(2).pperm_to_brauer().unwrap(), Diagram::identity(4));
        assert_eq!(sample_alpha().pperm_to_brauer(), Err(Error::NotPartialPermutation));
    }

    #[test]
    fn parse_variants() {
        let a = Diagram::parse("[{1,2,-1,-2}]", Some(2)).unwrap();
        assert_eq!(a.to_string(), "P2 [{1,2,-1,-2}]");
        let b = Diagram::parse(" J2 [ {-1,-2} , {2,1} ] ", None).unwrap();
        assert_eq!(b.to_string(), "P2 [{1,2},{-1,-2}]");
        assert!(Diagram::parse("[{1,-1}]", None).is_err());
        assert!(Diagram::parse("P3 [{1,-1}]", Some(2)).is_err());
        assert!(Diagram::parse("P1 {1,-1}", None).is_err());
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![2, 1, 4, 3]).unwrap();
        assert!(p.is_klein() && p.is_even());
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        let c = Permutation::new(vec![2, 3, 1, 4]).unwrap();
        assert!(c.is_even() && !c.is_klein());
        assert!(c.then(&c.inverse()).is_identity());
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
