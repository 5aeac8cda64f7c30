//! Orbits of chains in the partition lattice, stored as canonical leveled forests.
//!
//! A chain `0̂ < π_1 < … < π_t < 1̂` of set partitions, taken up to the action of
//! `S_λ`, is the same thing as a rooted tree whose depth-`d` nodes are the blocks
//! of the `d`-th coarsest partition, each labelled by its letter content. Sorting
//! children recursively gives a canonical form, so two chains lie in one orbit
//! exactly when their canonical forests are equal.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{BlockContent, Shape};

/// Which poset the ranks of a [`RankSet`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Ranks of `Π_n` (number of blocks is `n − r`).
    Primal,
    /// Ranks of the order dual `Π_n^*` (number of blocks is `r + 1`).
    Dual,
}

/// A subset of `[1, n−2]`, tagged with the poset it is measured in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankSet {
    n: usize,
    ranks: Vec<usize>,
    basis: Basis,
}

impl RankSet {
    pub fn new(n: usize, ranks: &[usize], basis: Basis) -> Result<Self> {
        let mut r = ranks.to_vec();
        r.sort_unstable();
        r.dedup();
        if let Some(&bad) = r.iter().find(|&&x| x == 0 || x + 2 > n) {
            return Err(Error::InvalidRankSet(format!("rank {bad} is outside [1, {}]", n.saturating_sub(2))));
        }
        Ok(RankSet { n, ranks: r, basis })
    }

    pub fn primal(n: usize, ranks: &[usize]) -> Result<Self> {
        Self::new(n, ranks, Basis::Primal)
    }

    pub fn dual(n: usize, ranks: &[usize]) -> Result<Self> {
        Self::new(n, ranks, Basis::Dual)
    }

    pub fn empty(n: usize, basis: Basis) -> Self {
        RankSet { n, ranks: Vec::new(), basis }
    }

    /// All of `[1, n−2]`.
    pub fn full(n: usize, basis: Basis) -> Self {
        RankSet { n, ranks: (1..n.saturating_sub(1)).collect(), basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.ranks.binary_search(&r).is_ok()
    }

    /// `r ↦ n − 1 − r`, flipping the basis.
    pub fn dualize(&self) -> RankSet {
        let mut ranks: Vec<usize> = self.ranks.iter().map(|&r| self.n - 1 - r).collect();
        ranks.sort_unstable();
        let basis = match self.basis {
            Basis::Primal => Basis::Dual,
            Basis::Dual => Basis::Primal,
        };
        RankSet { n: self.n, ranks, basis }
    }

    pub fn to_primal(&self) -> RankSet {
        match self.basis {
            Basis::Primal => self.clone(),
            Basis::Dual => self.dualize(),
        }
    }

    pub fn to_dual(&self) -> RankSet {
        match self.basis {
            Basis::Dual => self.clone(),
            Basis::Primal => self.dualize(),
        }
    }

    /// Every subset of `[1, n−2]` in the given basis, ordered by size then lexicographically.
    pub fn all(n: usize, basis: Basis) -> Vec<RankSet> {
        let top = n.saturating_sub(2);
        let mut out: Vec<RankSet> = (0u32..(1u32 << top))
            .map(|bits| RankSet { n, ranks: (1..=top).filter(|r| bits >> (r - 1) & 1 == 1).collect(), basis })
            .collect();
        out.sort_by(|a, b| a.ranks.len().cmp(&b.ranks.len()).then_with(|| a.ranks.cmp(&b.ranks)));
        out
    }

    /// All subsets of this set, same basis.
    pub fn subsets(&self) -> Vec<RankSet> {
        let k = self.ranks.len();
        (0u32..(1u32 << k))
            .map(|bits| RankSet {
                n: self.n,
                ranks: (0..k).filter(|i| bits >> i & 1 == 1).map(|i| self.ranks[i]).collect(),
                basis: self.basis,
            })
            .collect()
    }

    pub fn is_subset_of(&self, other: &RankSet) -> bool {
        self.ranks.iter().all(|r| other.contains(*r))
    }

    pub(crate) fn mask(&self) -> u32 {
        self.ranks.iter().fold(0, |m, r| m | 1 << (r - 1))
    }
}

impl fmt::Display for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.ranks.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", r.join(","))
    }
}

/// Free-function form of [`RankSet::dualize`].
pub fn dualize(s: &RankSet) -> RankSet {
    s.dualize()
}

/// One block of one partition in the chain, with the blocks of the next finer
/// partition that it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub content: BlockContent,
    pub children: Vec<Node>,
}

impl Node {
    fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children.sort();
    }

    fn count_at_depth(&self, depth: usize) -> usize {
        if depth == 0 {
            1
        } else {
            self.children.iter().map(|c| c.count_at_depth(depth - 1)).sum()
        }
    }
}

/// The `S_λ`-orbit of a chain of `Π_n`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainType {
    shape: Shape,
    /// Support in `Π_n` ranks, strictly increasing.
    ranks: Vec<usize>,
    /// Blocks of the coarsest partition (rank `ranks.last()`).
    roots: Vec<Node>,
}

/// A concrete chain: element colors plus its partitions as block bitmasks,
/// ordered from coarsest to finest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteChain {
    pub colors: Vec<u8>,
    pub levels: Vec<Vec<u32>>,
}

impl ConcreteChain {
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// `Π_n` rank of each level, coarse to fine.
    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| self.n() - l.len()).collect()
    }

    /// Apply a permutation of the elements (`perm[e]` is the image of `e`).
    pub fn permuted(&self, perm: &[usize]) -> ConcreteChain {
        let map = |m: u32| {
            let mut out = 0u32;
            let mut x = m;
            while x != 0 {
                let e = x.trailing_zeros() as usize;
                out |= 1 << perm[e];
                x &= x - 1;
            }
            out
        };
        let mut colors = vec![0u8; self.colors.len()];
        for (e, &c) in self.colors.iter().enumerate() {
            colors[perm[e]] = c;
        }
        ConcreteChain {
            colors,
            levels: self
                .levels
                .iter()
                .map(|l| {
                    let mut v: Vec<u32> = l.iter().map(|&b| map(b)).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        }
    }

    /// Same chain with only the levels whose ranks satisfy `keep`.
    pub fn filter_ranks(&self, keep: impl Fn(usize) -> bool) -> ConcreteChain {
        let n = self.n();
        ConcreteChain {
            colors: self.colors.clone(),
            levels: self.levels.iter().filter(|l| keep(n - l.len())).cloned().collect(),
        }
    }
}

/// Parse `"12|3|4"` style partitions (1-based single-digit elements, or
/// comma-separated elements when a block needs two digits: `"1,10|2"`).
pub fn parse_partition(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split('|')
        .map(|blk| {
            let blk = blk.trim();
            let items: Result<Vec<usize>> = if blk.contains(',') {
                blk.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))).collect()
            } else {
                blk.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad element {c:?}"))))
                    .collect()
            };
            let items = items?;
            if items.contains(&0) {
                return Err(Error::Parse("elements are 1-based".into()));
            }
            Ok(items.into_iter().map(|e| e - 1).collect())
        })
        .collect()
}

fn masks_of(partition: &[Vec<usize>], n: usize) -> Result<Vec<u32>> {
    let mut seen = 0u32;
    let mut out = Vec::with_capacity(partition.len());
    for blk in partition {
        if blk.is_empty() {
            return Err(Error::MalformedChain("empty block".into()));
        }
        let mut m = 0u32;
        for &e in blk {
            if e >= n {
                return Err(Error::MalformedChain(format!("element {} out of range for n = {n}", e + 1)));
            }
            if (seen | m) >> e & 1 == 1 {
                return Err(Error::MalformedChain(format!("element {} repeated", e + 1)));
            }
            m |= 1 << e;
        }
        seen |= m;
        out.push(m);
    }
    if seen != full_mask(n) {
        return Err(Error::MalformedChain("partition does not cover the ground set".into()));
    }
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Canonical form of a chain given as explicit partitions of `0..n` (colored
/// by the standard coloring of `shape`). The partitions may be listed in any
/// order but must form a chain under refinement.
pub fn canonicalize(chain: &[Vec<Vec<usize>>], shape: &Shape) -> Result<ChainType> {
    let n = shape.n();
    let levels: Result<Vec<Vec<u32>>> = chain.iter().map(|p| masks_of(p, n)).collect();
    ChainType::from_concrete(shape, &ConcreteChain { colors: shape.colors(), levels: levels? })
}

impl ChainType {
    /// The empty chain `0̂ < 1̂`.
    pub fn empty(shape: &Shape) -> Self {
        ChainType { shape: shape.clone(), ranks: Vec::new(), roots: Vec::new() }
    }

    /// Canonicalize a concrete chain. Levels may be given in any order.
    pub fn from_concrete(shape: &Shape, chain: &ConcreteChain) -> Result<Self> {
        let n = shape.n();
        if chain.colors.len() != n {
            return Err(Error::MalformedChain(format!("{} colors for n = {n}", chain.colors.len())));
        }
        let mut counts = vec![0usize; shape.letters()];
        for &c in &chain.colors {
            if c as usize >= counts.len() {
                return Err(Error::MalformedChain(format!("letter {c} not in shape {shape}")));
            }
            counts[c as usize] += 1;
        }
        if counts != shape.parts() {
            return Err(Error::MalformedChain(format!("coloring does not match shape {shape}")));
        }
        let mut levels: Vec<&Vec<u32>> = chain.levels.iter().collect();
        levels.sort_by_key(|l| l.len());
        for l in &levels {
            if l.len() < 2 || l.len() >= n {
                return Err(Error::MalformedChain(format!(
                    "partition with {} blocks is not strictly between 0̂ and 1̂",
                    l.len()
                )));
            }
            let union = l.iter().fold(0u32, |a, &b| a | b);
            let total: u32 = l.iter().map(|b| b.count_ones()).sum();
            if union != full_mask(n) || total as usize != n {
                return Err(Error::MalformedChain("level is not a partition of the ground set".into()));
            }
        }
        for w in levels.windows(2) {
            if w[0].len() == w[1].len() {
                return Err(Error::MalformedChain("two partitions of the same rank".into()));
            }
            for &fine in w[1].iter() {
                if !w[0].iter().any(|&coarse| fine & !coarse == 0) {
                    return Err(Error::MalformedChain("partitions are not ordered by refinement".into()));
                }
            }
        }
        fn build(mask: u32, depth: usize, levels: &[&Vec<u32>], colors: &[u8], k: usize) -> Node {
            let content = BlockContent::of_mask(mask, colors, k);
            let children = if depth + 1 < levels.len() {
                levels[depth + 1].iter().filter(|&&b| b & !mask == 0).map(|&b| build(b, depth + 1, levels, colors, k)).collect()
            } else {
                Vec::new()
            };
            Node { content, children }
        }
        let mut roots: Vec<Node> = match levels.first() {
            None => Vec::new(),
            Some(top) => top.iter().map(|&b| build(b, 0, &levels, &chain.colors, shape.letters())).collect(),
        };
        for r in &mut roots {
            r.canonicalize();
        }
        roots.sort();
        let mut ranks: Vec<usize> = levels.iter().map(|l| n - l.len()).collect();
        ranks.reverse();
        Ok(ChainType { shape: shape.clone(), ranks, roots })
    }

    pub(crate) fn from_parts(shape: Shape, ranks: Vec<usize>, mut roots: Vec<Node>) -> Self {
        for r in &mut roots {
            r.canonicalize();
        }
        roots.sort();
        ChainType { shape, ranks, roots }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// Support in `Π_n` ranks.
    pub fn support(&self) -> RankSet {
        RankSet { n: self.n(), ranks: self.ranks.clone(), basis: Basis::Primal }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn roots(&self) -> &[Node] {
        &self.roots
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.ranks.len() + 2 == self.n().max(2)
    }

    /// Depth of the level with `Π_n` rank `rank` (0 = coarsest).
    pub fn depth_of(&self, rank: usize) -> Option<usize> {
        self.ranks.iter().rposition(|&r| r == rank).map(|i| self.ranks.len() - 1 - i)
    }

    /// Contents of the blocks at a level, sorted.
    pub fn level_contents(&self, rank: usize) -> Option<Vec<BlockContent>> {
        let depth = self.depth_of(rank)?;
        fn walk(nodes: &[Node], depth: usize, out: &mut Vec<BlockContent>) {
            for nd in nodes {
                if depth == 0 {
                    out.push(nd.content.clone());
                } else {
                    walk(&nd.children, depth - 1, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.roots, depth, &mut out);
        out.sort();
        Some(out)
    }

    /// Checks content conservation and the block count of every level.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        if self.ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedChain("support is not strictly increasing".into()));
        }
        if self.ranks.iter().any(|&r| r == 0 || r + 2 > n) {
            return Err(Error::MalformedChain("rank outside [1, n-2]".into()));
        }
        fn conserve(nd: &Node, depth: usize, last: usize) -> bool {
            if depth == last {
                return nd.children.is_empty();
            }
            if nd.children.is_empty() {
                return false;
            }
            let mut sum = BlockContent::zero(nd.content.counts().len());
            for c in &nd.children {
                sum = sum.concat(&c.content);
            }
            sum == nd.content && nd.children.iter().all(|c| conserve(c, depth + 1, last))
        }
        if self.ranks.is_empty() {
            return if self.roots.is_empty() { Ok(()) } else { Err(Error::MalformedChain("empty chain with blocks".into())) };
        }
        let last = self.ranks.len() - 1;
        let mut total = BlockContent::zero(self.shape.letters());
        for r in &self.roots {
            total = total.concat(&r.content);
            if !conserve(r, 0, last) {
                return Err(Error::MalformedChain("content is not conserved".into()));
            }
        }
        if total != self.shape.whole() {
            return Err(Error::MalformedChain("top level does not cover the shape".into()));
        }
        for (depth, &rank) in self.ranks.iter().rev().enumerate() {
            let count: usize = self.roots.iter().map(|r| r.count_at_depth(depth)).sum();
            if count != n - rank {
                return Err(Error::MalformedChain(format!("rank {rank} has {count} blocks, expected {}", n - rank)));
            }
        }
        Ok(())
    }

    /// A concrete chain in this orbit, using the standard coloring.
    pub fn representative(&self) -> ConcreteChain {
        let colors = self.shape.colors();
        let mut pools: Vec<Vec<usize>> = vec![Vec::new(); self.shape.letters()];
        for (e, &c) in colors.iter().enumerate().rev() {
            pools[c as usize].push(e);
        }
        let depth_count = self.ranks.len();
        let mut levels = vec![Vec::new(); depth_count];
        fn assign(nd: &Node, depth: usize, last: usize, pools: &mut [Vec<usize>], levels: &mut [Vec<u32>]) -> u32 {
            let mask = if depth == last {
                let mut m = 0u32;
                for (letter, &cnt) in nd.content.counts().iter().enumerate() {
                    for _ in 0..cnt {
                        m |= 1 << pools[letter].pop().expect("pool sized by shape");
                    }
                }
                m
            } else {
                nd.children.iter().fold(0u32, |m, c| m | assign(c, depth + 1, last, pools, levels))
            };
            levels[depth].push(mask);
            mask
        }
        if depth_count > 0 {
            for r in &self.roots {
                assign(r, 0, depth_count - 1, &mut pools, &mut levels);
            }
        }
        for l in &mut levels {
            l.sort_unstable();
        }
        ConcreteChain { colors, levels }
    }

    /// Explicit partitions of a representative, coarse to fine, 0-based elements.
    pub fn any_representative(&self) -> Vec<Vec<Vec<usize>>> {
        self.representative()
            .levels
            .iter()
            .map(|l| {
                l.iter().map(|&m| (0..self.n()).filter(|e| m >> e & 1 == 1).collect()).collect()
            })
            .collect()
    }

    /// The face of this chain with support `keep` (a subset of the support).
    pub fn restrict(&self, keep: &RankSet) -> Result<ChainType> {
        let keep = keep.to_primal();
        if !keep.ranks.iter().all(|r| self.ranks.contains(r)) {
            return Err(Error::NotInSupport { requested: keep.ranks.clone(), support: self.ranks.clone() });
        }
        let keep_depth: Vec<bool> = self.ranks.iter().rev().map(|r| keep.contains(*r)).collect();
        fn go(nodes: &[Node], depth: usize, keep: &[bool], out: &mut Vec<Node>) {
            for nd in nodes {
                if keep[depth] {
                    let mut children = Vec::new();
                    if depth + 1 < keep.len() {
                        go(&nd.children, depth + 1, keep, &mut children);
                    }
                    children.sort();
                    out.push(Node { content: nd.content.clone(), children });
                } else if depth + 1 < keep.len() {
                    go(&nd.children, depth + 1, keep, out);
                }
            }
        }
        let mut roots = Vec::new();
        if !self.ranks.is_empty() {
            go(&self.roots, 0, &keep_depth, &mut roots);
        }
        roots.sort();
        Ok(ChainType { shape: self.shape.clone(), ranks: keep.ranks.clone(), roots })
    }

    /// Restriction by a bitmask over ranks `1..=n-2` that is known to lie in
    /// the support.
    pub(crate) fn restrict_mask(&self, mask: u32) -> ChainType {
        let ranks: Vec<usize> = self.ranks.iter().copied().filter(|r| mask >> (r - 1) & 1 == 1).collect();
        let keep = RankSet { n: self.n(), ranks, basis: Basis::Primal };
        self.restrict(&keep).expect("mask within support")
    }

    /// Stab-orbits of the blocks at level `rank`: blocks are equivalent when
    /// an automorphism of the leveled forest maps one onto the other.
    pub fn block_orbits(&self, rank: usize) -> Result<Vec<BlockOrbit>> {
        let depth = self
            .depth_of(rank)
            .ok_or_else(|| Error::NotInSupport { requested: vec![rank], support: self.ranks.clone() })?;
        let rep = self.representative();
        let ids = concrete_orbit_ids(&rep, self.shape.letters());
        let mut by_id: HashMap<usize, BlockOrbit> = HashMap::new();
        for &blk in &rep.levels[depth] {
            let id = ids[depth][&blk];
            let e = by_id.entry(id).or_insert_with(|| BlockOrbit {
                content: BlockContent::of_mask(blk, &rep.colors, self.shape.letters()),
                blocks: Vec::new(),
            });
            e.blocks.push((0..self.n()).filter(|x| blk >> x & 1 == 1).collect());
        }
        let mut out: Vec<BlockOrbit> = by_id.into_values().collect();
        for o in &mut out {
            o.blocks.sort();
        }
        out.sort_by(|a, b| a.content.cmp(&b.content).then_with(|| a.blocks.cmp(&b.blocks)));
        Ok(out)
    }

    /// Canonical serialization; equal strings iff equal orbits.
    pub fn serialize(&self) -> String {
        fn emit(nd: &Node, depth: usize, ranks: &[usize], out: &mut String) {
            out.push_str(&nd.content.encode());
            out.push('@');
            out.push_str(&ranks[ranks.len() - 1 - depth].to_string());
            if !nd.children.is_empty() {
                out.push('(');
                for (i, c) in nd.children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    emit(c, depth + 1, ranks, out);
                }
                out.push(')');
            }
        }
        let mut out = String::new();
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            emit(r, 0, &self.ranks, &mut out);
        }
        out
    }

    /// Inverse of [`ChainType::serialize`].
    pub fn parse(shape: &Shape, s: &str) -> Result<ChainType> {
        struct P<'a> {
            s: &'a [u8],
            i: usize,
            k: usize,
        }
        impl P<'_> {
            fn node(&mut self) -> Result<(Node, Vec<usize>)> {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i] != b'@' {
                    self.i += 1;
                }
                let content = std::str::from_utf8(&self.s[start..self.i]).map_err(|e| Error::Parse(e.to_string()))?;
                let content = BlockContent::decode(content, self.k)?;
                self.i += 1;
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let level: usize = std::str::from_utf8(&self.s[start..self.i])
                    .ok()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("missing level at byte {start}")))?;
                let mut children = Vec::new();
                let mut below: Option<Vec<usize>> = None;
                if self.i < self.s.len() && self.s[self.i] == b'(' {
                    self.i += 1;
                    loop {
                        let (c, r) = self.node()?;
                        match &below {
                            None => below = Some(r),
                            Some(b) if *b != r => return Err(Error::Parse("inconsistent levels".into())),
                            _ => {}
                        }
                        children.push(c);
                        match self.s.get(self.i) {
                            Some(b',') => self.i += 1,
                            Some(b')') => {
                                self.i += 1;
                                break;
                            }
                            _ => return Err(Error::Parse("unterminated child list".into())),
                        }
                    }
                }
                let mut ranks = below.unwrap_or_default();
                if ranks.last().is_some_and(|&r| r >= level) {
                    return Err(Error::Parse("child level must be below its parent".into()));
                }
                ranks.push(level);
                Ok((Node { content, children }, ranks))
            }
        }
        if s.is_empty() {
            return Ok(ChainType::empty(shape));
        }
        let mut p = P { s: s.as_bytes(), i: 0, k: shape.letters() };
        let mut roots = Vec::new();
        let mut ranks: Option<Vec<usize>> = None;
        loop {
            let (nd, r) = p.node()?;
            match &ranks {
                None => ranks = Some(r),
                Some(x) if *x != r => return Err(Error::Parse("roots at different levels".into())),
                _ => {}
            }
            roots.push(nd);
            match p.s.get(p.i) {
                None => break,
                Some(b',') => p.i += 1,
                Some(c) => return Err(Error::Parse(format!("unexpected {:?}", *c as char))),
            }
        }
        let c = ChainType::from_parts(shape.clone(), ranks.unwrap_or_default(), roots);
        c.check_invariants().map_err(|e| Error::Parse(e.to_string()))?;
        if c.serialize() != s {
            return Err(Error::Parse("input is not in canonical order".into()));
        }
        Ok(c)
    }
}

impl fmt::Display for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// One Stab-orbit of blocks at a fixed level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOrbit {
    pub content: BlockContent,
    /// Blocks of the chain's representative in this orbit (0-based elements).
    pub blocks: Vec<Vec<usize>>,
}

impl BlockOrbit {
    pub fn is_nontrivial(&self) -> bool {
        self.content.size() >= 2
    }
}

/// Orbit ids of the blocks of a concrete chain, per level (coarse to fine).
/// Two blocks at the same level share an id iff a color-preserving
/// automorphism of the whole chain maps one onto the other.
pub fn concrete_orbit_ids(chain: &ConcreteChain, letters: usize) -> Vec<HashMap<u32, usize>> {
    let levels = &chain.levels;
    let mut subtree: Vec<HashMap<u32, Node>> = vec![HashMap::new(); levels.len()];
    for d in (0..levels.len()).rev() {
        for &b in &levels[d] {
            let mut children: Vec<Node> = if d + 1 < levels.len() {
                levels[d + 1].iter().filter(|&&c| c & !b == 0).map(|c| subtree[d + 1][c].clone()).collect()
            } else {
                Vec::new()
            };
            children.sort();
            subtree[d].insert(b, Node { content: BlockContent::of_mask(b, &chain.colors, letters), children });
        }
    }
    let mut out: Vec<HashMap<u32, usize>> = vec![HashMap::new(); levels.len()];
    let mut intern: HashMap<(usize, Node), usize> = HashMap::new();
    for d in 0..levels.len() {
        for &b in &levels[d] {
            let parent = if d == 0 {
                usize::MAX
            } else {
                let p = *levels[d - 1].iter().find(|&&p| b & !p == 0).expect("refinement");
                out[d - 1][&p]
            };
            let next = intern.len();
            let id = *intern.entry((parent, subtree[d][&b].clone())).or_insert(next);
            out[d].insert(b, id);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize, parts: &[&str]) -> ChainType {
        let raw: Vec<_> = parts.iter().map(|p| parse_partition(p).unwrap()).collect();
        canonicalize(&raw, &Shape::full(n).unwrap()).unwrap()
    }

    #[test]
    fn relabeling_gives_same_type() {
        assert_eq!(chain(4, &["12|3|4", "12|34"]), chain(4, &["13|2|4", "13|24"]));
    }

    #[test]
    fn distinct_chains_differ() {
        assert_ne!(chain(4, &["12|3|4", "12|34"]), chain(4, &["12|3|4", "123|4"]));
    }

    #[test]
    fn level_order_irrelevant() {
        assert_eq!(chain(4, &["12|34", "12|3|4"]), chain(4, &["12|3|4", "12|34"]));
    }

    #[test]
    fn malformed_chains_rejected() {
        let s = Shape::full(4).unwrap();
        let raw = vec![parse_partition("12|3|4").unwrap(), parse_partition("13|24").unwrap()];
        assert!(matches!(canonicalize(&raw, &s), Err(Error::MalformedChain(_))));
        let raw = vec![parse_partition("12|3").unwrap()];
        assert!(matches!(canonicalize(&raw, &s), Err(Error::MalformedChain(_))));
        let raw = vec![parse_partition("1234").unwrap()];
        assert!(matches!(canonicalize(&raw, &s), Err(Error::MalformedChain(_))));
    }

    #[test]
    fn idempotent_through_representative() {
        let c = chain(6, &["12|34|5|6", "12|3456"]);
        let again = canonicalize(&c.any_representative(), c.shape()).unwrap();
        assert_eq!(again, c);
        c.check_invariants().unwrap();
    }

    #[test]
    fn restrict_basics() {
        let c = chain(4, &["12|3|4", "12|34"]);
        assert_eq!(c.restrict(&c.support()).unwrap(), c);
        assert!(c.restrict(&RankSet::primal(4, &[]).unwrap()).unwrap().is_empty());
        let r = c.restrict(&RankSet::primal(4, &[2]).unwrap()).unwrap();
        assert_eq!(r, chain(4, &["12|34"]));
        let other = chain(4, &["12|3|4"]);
        assert!(matches!(
            other.restrict(&RankSet::primal(4, &[2]).unwrap()),
            Err(Error::NotInSupport { .. })
        ));
    }

    #[test]
    fn dualize_examples() {
        let s = RankSet::primal(10, &[1, 2, 7]).unwrap();
        assert_eq!(s.dualize().ranks(), &[2, 7, 8]);
        assert_eq!(s.dualize().basis(), Basis::Dual);
        assert_eq!(s.dualize().dualize(), s);
        let d = RankSet::dual(8, &[1, 4, 5]).unwrap();
        assert_eq!(d.dualize().ranks(), &[2, 3, 6]);
    }

    #[test]
    fn rank_set_bounds() {
        assert!(RankSet::primal(5, &[3]).is_ok());
        assert!(RankSet::primal(5, &[4]).is_err());
        assert!(RankSet::primal(5, &[0]).is_err());
    }

    #[test]
    fn block_orbit_examples() {
        let c = chain(5, &["12|34|5"]);
        let orbits = c.block_orbits(2).unwrap();
        assert_eq!(orbits.iter().filter(|o| o.is_nontrivial()).count(), 1);
        let c = chain(6, &["12|34|5|6", "12|3456"]);
        let orbits = c.block_orbits(2).unwrap();
        assert_eq!(orbits.iter().filter(|o| o.is_nontrivial()).count(), 2);
        let c = chain(5, &["123|4|5"]);
        assert_eq!(c.block_orbits(2).unwrap().iter().filter(|o| o.is_nontrivial()).count(), 1);
    }

    #[test]
    fn serialization_round_trip() {
        let c = chain(6, &["12|34|5|6", "12|3456"]);
        let s = c.serialize();
        assert_eq!(s, "2@4(2@2),4@4(1@2,1@2,2@2)");
        assert_eq!(ChainType::parse(c.shape(), &s).unwrap(), c);
        let e = ChainType::empty(c.shape());
        assert_eq!(ChainType::parse(c.shape(), &e.serialize()).unwrap(), e);
        assert!(ChainType::parse(c.shape(), "4@4(2@2),2@4(2@2)").is_err());
    }
}
