//! Facets of `Δ(Π_n^*)/S_λ` as sequences of bar insertions into a row of balls.
//!
//! Step `t` (the cover ending at dual rank `t`) inserts one bar and splits one
//! block in two. A facet is stored as its final letter row plus the gap
//! position of each bar, which fixes every intermediate ordered partition.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::{Basis, ChainType, ConcreteChain, RankSet};
use crate::error::{Error, Result};
use crate::order::BlockOrder;
use crate::shape::{BlockContent, Shape};

/// One bar insertion, with the bookkeeping the labels and descents need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Dual rank reached by this step, `1..=n-1`.
    pub rank: usize,
    /// Gap position of the bar, `1..=n-1`.
    pub gap: usize,
    /// Number of bars already to the left of the new one.
    pub block_index: usize,
    pub parent: usize,
    /// Step at which the split block was created (0 for the whole row).
    pub parent_birth: usize,
    pub left: BlockContent,
    pub right: BlockContent,
    pub left_id: usize,
    pub right_id: usize,
    /// Contents of all blocks left of the new bar, in row order.
    pub prefix: Vec<BlockContent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InsertionFacet {
    shape: Shape,
    row: Vec<u8>,
    gaps: Vec<usize>,
}

/// Label of one cover relation. `position`, `bars` and `parent_birth` are the
/// `(i, w, r)` triple for one-letter shapes; `left` and `prefix` are the
/// `w_B` and `W` components used for general shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverLabel {
    pub position: usize,
    pub bars_left: usize,
    pub bars: Vec<usize>,
    pub left: BlockContent,
    pub prefix: Vec<BlockContent>,
    pub parent_birth: usize,
}

impl CoverLabel {
    /// Precedence `(i, w_B, W, r)` with `i` the number of bars to the left.
    pub fn compare(&self, other: &CoverLabel, order: &BlockOrder) -> Ordering {
        self.bars_left
            .cmp(&other.bars_left)
            .then_with(|| order.compare_total(&self.left, &other.left))
            .then_with(|| {
                for (a, b) in self.prefix.iter().zip(&other.prefix) {
                    let c = order.compare_total(a, b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                self.prefix.len().cmp(&other.prefix.len())
            })
            .then_with(|| self.parent_birth.cmp(&other.parent_birth))
    }
}

impl InsertionFacet {
    /// A facet from its final letter row and bar positions.
    pub fn new(shape: &Shape, row: Vec<u8>, gaps: Vec<usize>) -> Result<Self> {
        let n = shape.n();
        if row.len() != n {
            return Err(Error::InvalidInsertions(format!("row has {} letters, shape has {n}", row.len())));
        }
        let mut counts = vec![0usize; shape.letters()];
        for &c in &row {
            *counts.get_mut(c as usize).ok_or_else(|| Error::InvalidInsertions(format!("letter {c} not in {shape}")))? += 1;
        }
        if counts != shape.parts() {
            return Err(Error::InvalidInsertions(format!("row letters do not match {shape}")));
        }
        if gaps.len() + 1 != n.max(1) {
            return Err(Error::InvalidInsertions(format!("{} bars for n = {n}", gaps.len())));
        }
        let mut seen = vec![false; n];
        for &g in &gaps {
            if g == 0 || g >= n || seen[g] {
                return Err(Error::InvalidInsertions(format!("{gaps:?} is not a permutation of 1..{}", n - 1)));
            }
            seen[g] = true;
        }
        Ok(InsertionFacet { shape: shape.clone(), row, gaps })
    }

    /// One-letter shape `(n)`: a row of identical balls.
    pub fn from_gaps(n: usize, gaps: &[usize]) -> Result<Self> {
        let shape = Shape::full(n)?;
        Self::new(&shape, vec![0; n], gaps.to_vec())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[u8] {
        &self.row
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Replays the insertions.
    pub fn steps(&self) -> Vec<Step> {
        let k = self.shape.letters();
        let content = |a: usize, b: usize| {
            let mut c = vec![0u8; k];
            for &l in &self.row[a..b] {
                c[l as usize] += 1;
            }
            BlockContent::new(c)
        };
        // (start, end, id, birth)
        let mut segs: Vec<(usize, usize, usize, usize)> = vec![(0, self.n(), 0, 0)];
        let mut out = Vec::with_capacity(self.gaps.len());
        for (t0, &g) in self.gaps.iter().enumerate() {
            let t = t0 + 1;
            let bi = segs.iter().position(|&(a, b, _, _)| a < g && g < b).expect("gap lies inside a block");
            let (a, b, id, birth) = segs[bi];
            let (lid, rid) = (2 * t - 1, 2 * t);
            let left = content(a, g);
            let mut prefix: Vec<BlockContent> = segs[..bi].iter().map(|&(x, y, _, _)| content(x, y)).collect();
            prefix.push(left.clone());
            out.push(Step {
                rank: t,
                gap: g,
                block_index: bi,
                parent: id,
                parent_birth: birth,
                left,
                right: content(g, b),
                left_id: lid,
                right_id: rid,
                prefix,
            });
            segs.splice(bi..=bi, [(a, g, lid, t), (g, b, rid, t)]);
        }
        out
    }

    /// Step at which each block id is split, if ever.
    fn split_times(steps: &[Step]) -> Vec<Option<usize>> {
        let mut out = vec![None; 2 * steps.len() + 1];
        for s in steps {
            out[s.parent] = Some(s.rank);
        }
        out
    }

    /// The ordered partitions after steps `1..=n-2`, as a concrete chain on
    /// row positions.
    pub fn concrete_chain(&self) -> ConcreteChain {
        let n = self.n();
        let mut bars: Vec<usize> = Vec::new();
        let mut levels = Vec::new();
        for &g in self.gaps.iter().take(n.saturating_sub(2)) {
            bars.push(g);
            bars.sort_unstable();
            let mut blocks = Vec::with_capacity(bars.len() + 1);
            let mut start = 0;
            for &b in bars.iter().chain(std::iter::once(&n)) {
                blocks.push(crate::chain::full_mask(b) & !crate::chain::full_mask(start));
                start = b;
            }
            blocks.sort_unstable();
            levels.push(blocks);
        }
        ConcreteChain { colors: self.row.clone(), levels }
    }

    /// The maximal chain orbit this facet represents.
    pub fn chain_type(&self) -> ChainType {
        ChainType::from_concrete(&self.shape, &self.concrete_chain()).expect("insertions give a maximal chain")
    }

    /// The normalized representative of the same orbit.
    pub fn normalize(&self, order: &BlockOrder) -> Result<InsertionFacet> {
        facet_to_insertions(&self.chain_type(), order)
    }

    /// Left child never exceeds the right child, and of two equal siblings the
    /// left one is refined first.
    pub fn is_normalized(&self, order: &BlockOrder) -> bool {
        let steps = self.steps();
        let split = Self::split_times(&steps);
        steps.iter().all(|s| match order.compare_total(&s.left, &s.right) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (split[s.left_id], split[s.right_id]) {
                (Some(a), Some(b)) => a < b,
                (None, Some(_)) => false,
                _ => true,
            },
        })
    }

    pub fn cover_labels(&self) -> Vec<CoverLabel> {
        let mut bars = Vec::new();
        self.steps()
            .into_iter()
            .map(|s| {
                bars.push(s.gap);
                bars.sort_unstable();
                CoverLabel {
                    position: s.gap,
                    bars_left: s.block_index,
                    bars: bars.clone(),
                    left: s.left,
                    prefix: s.prefix,
                    parent_birth: s.parent_birth,
                }
            })
            .collect()
    }

    /// Dual ranks `p` at which steps `p` and `p+1` form a topological descent.
    pub fn descent_set(&self, order: &BlockOrder) -> RankSet {
        let steps = self.steps();
        let split = Self::split_times(&steps);
        let n = self.n();
        let mut d = Vec::new();
        for p in 1..n.saturating_sub(1) {
            let (a, b) = (&steps[p - 1], &steps[p]);
            let same_block = b.parent == a.right_id;
            let right_to_left = a.gap > b.gap;
            let shrinking = same_block && order.compare_total(&a.left, &b.left) == Ordering::Greater;
            let pair_first = same_block
                && a.left.size() == 2
                && b.left.size() == 2
                && a.left == b.left
                && split[b.left_id] < split[a.left_id];
            if right_to_left || shrinking || pair_first {
                d.push(p);
            }
        }
        RankSet::dual(n, &d).expect("descents lie in [1, n-2]")
    }

    pub fn descent_word(&self, order: &BlockOrder) -> DescentWord {
        let d = self.descent_set(order);
        DescentWord::from_set(&d)
    }

    /// Pairs of equal blocks created from one parent, in one step or in two
    /// consecutive steps. Returns the largest size among such pairs, or 0.
    pub fn largest_equal_pair(&self) -> usize {
        let steps = self.steps();
        let mut worst = 0;
        for (t, s) in steps.iter().enumerate() {
            if s.left == s.right {
                worst = worst.max(s.left.size());
            }
            if let Some(b) = steps.get(t + 1) {
                let other = if b.parent == s.left_id {
                    &s.right
                } else if b.parent == s.right_id {
                    &s.left
                } else {
                    continue;
                };
                for x in [&b.left, &b.right] {
                    if x == other {
                        worst = worst.max(x.size());
                    }
                }
                if b.left == b.right {
                    worst = worst.max(b.left.size());
                }
            }
        }
        worst
    }

    /// ASCII diagram: balls `o` separated by `|` and the dual rank of each bar.
    pub fn render(&self) -> String {
        let n = self.n();
        let mut rank_of = vec![0; n];
        for (t, &g) in self.gaps.iter().enumerate() {
            rank_of[g] = t + 1;
        }
        let mut out = String::from("o");
        for r in rank_of.iter().skip(1) {
            out.push('|');
            out.push_str(&r.to_string());
            out.push('o');
        }
        out
    }

    /// Diagram with letters instead of balls (`a` for letter 0, `b` for 1, ...).
    pub fn render_letters(&self) -> String {
        let mut rank_of = vec![0; self.n()];
        for (t, &g) in self.gaps.iter().enumerate() {
            rank_of[g] = t + 1;
        }
        let mut out = String::new();
        for (p, &l) in self.row.iter().enumerate() {
            if p > 0 {
                out.push('|');
                out.push_str(&rank_of[p].to_string());
            }
            out.push((b'a' + l) as char);
        }
        out
    }
}

/// Parses the ASCII diagram `o|8o|1o|…` back into a one-letter facet.
pub fn parse_diagram(s: &str) -> Result<InsertionFacet> {
    let parts: Vec<&str> = s.split('|').collect();
    let n = parts.len();
    if parts[0] != "o" {
        return Err(Error::Parse(format!("diagram must start with a ball: {s:?}")));
    }
    let mut gaps = vec![0; n.saturating_sub(1)];
    for (g, p) in parts.iter().enumerate().skip(1) {
        let r: usize = p
            .strip_suffix('o')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad bar {p:?}")))?;
        if r == 0 || r > gaps.len() || gaps[r - 1] != 0 {
            return Err(Error::Parse(format!("bad rank {r}")));
        }
        gaps[r - 1] = g;
    }
    InsertionFacet::from_gaps(n, &gaps)
}

/// Normalized insertion sequence of a maximal chain orbit.
pub fn facet_to_insertions(c: &ChainType, order: &BlockOrder) -> Result<InsertionFacet> {
    let n = c.n();
    if !c.is_maximal() {
        return Err(Error::NotMaximal(c.ranks().to_vec()));
    }
    order.check_shape(c.shape())?;
    let k = c.shape().letters();
    struct A {
        content: BlockContent,
        children: Vec<usize>,
    }
    let mut arena: Vec<A> = Vec::new();
    fn add(arena: &mut Vec<A>, nd: &crate::chain::Node, k: usize) -> usize {
        let id = arena.len();
        arena.push(A { content: nd.content.clone(), children: Vec::new() });
        let mut kids: Vec<usize> = nd.children.iter().map(|ch| add(arena, ch, k)).collect();
        if nd.children.is_empty() && nd.content.size() == 2 {
            for (letter, &cnt) in nd.content.counts().iter().enumerate() {
                for _ in 0..cnt {
                    let kid = arena.len();
                    arena.push(A { content: BlockContent::singleton(k, letter as u8), children: Vec::new() });
                    kids.push(kid);
                }
            }
        }
        arena[id].children = kids;
        id
    }
    let virtual_root = crate::chain::Node { content: c.shape().whole(), children: c.roots().to_vec() };
    add(&mut arena, &virtual_root, k);
    // depth at which the block starting at this node splits, counted in steps from it
    fn first_split(arena: &[A], mut id: usize) -> Option<usize> {
        let mut d = 0;
        loop {
            match arena[id].children.len() {
                0 => return None,
                1 => {
                    id = arena[id].children[0];
                    d += 1;
                }
                _ => return Some(d),
            }
        }
    }
    let mut row: Vec<usize> = vec![0];
    let mut gaps = Vec::with_capacity(n - 1);
    for _ in 0..n.saturating_sub(1) {
        let at = row
            .iter()
            .position(|&id| arena[id].children.len() == 2)
            .ok_or_else(|| Error::MalformedChain("no block splits at this step".into()))?;
        for (i, id) in row.iter_mut().enumerate() {
            if i != at {
                match arena[*id].children.len() {
                    0 => {}
                    1 => *id = arena[*id].children[0],
                    _ => return Err(Error::MalformedChain("two blocks split in one step".into())),
                }
            }
        }
        let (x, y) = (arena[row[at]].children[0], arena[row[at]].children[1]);
        let ord = order
            .compare_total(&arena[x].content, &arena[y].content)
            .then_with(|| match (first_split(&arena, x), first_split(&arena, y)) {
                (Some(a), Some(b)) => a.cmp(&b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            });
        let (l, r) = if ord == Ordering::Greater { (y, x) } else { (x, y) };
        let offset: usize = row[..at].iter().map(|&id| arena[id].content.size()).sum();
        gaps.push(offset + arena[l].content.size());
        row.splice(at..=at, [l, r]);
    }
    let letters: Vec<u8> = row
        .iter()
        .map(|&id| arena[id].content.word().first().copied().expect("singleton"))
        .collect();
    InsertionFacet::new(c.shape(), letters, gaps)
}

/// Lexicographically least facet (under the label order) containing `c`.
pub fn min_extension(c: &ChainType, order: &BlockOrder) -> Result<InsertionFacet> {
    let shape = c.shape();
    if shape.n() <= 9 {
        let index = crate::partition::face_index(shape, order)?;
        let j = index
            .first_facet(c)
            .ok_or_else(|| Error::MalformedChain(format!("{c} is not a face of {shape}")))?;
        return Ok(index.facets[j].clone());
    }
    let facets = crate::partition::ordered_facets(shape, order)?;
    let support = c.support();
    facets
        .iter()
        .find(|f| f.chain_type().restrict(&support).as_ref() == Ok(c))
        .cloned()
        .ok_or_else(|| Error::MalformedChain(format!("{c} is not a face of {shape}")))
}

/// Block conditions evaluated on `min_extension(c)`:
/// `(non_equal, nontrivial_non_equal)`.
pub fn block_conditions(c: &ChainType, order: &BlockOrder) -> Result<(bool, bool)> {
    let pair = min_extension(c, order)?.largest_equal_pair();
    Ok((pair < 2, pair < 3))
}

/// Every normalized facet, in label order, by depth-first bar insertion.
pub fn enumerate_facets(shape: &Shape, order: &BlockOrder) -> Result<Vec<InsertionFacet>> {
    order.check_shape(shape)?;
    let n = shape.n();
    if n < 2 {
        return Err(Error::Domain("facets need n >= 2".into()));
    }
    #[derive(Clone)]
    struct Blk {
        content: BlockContent,
        parent: usize,
        birth: usize,
        id: usize,
    }
    struct Ctx<'a> {
        order: &'a BlockOrder,
        n: usize,
        out: Vec<(Vec<usize>, Vec<Blk>)>,
    }
    fn rec(ctx: &mut Ctx, row: Vec<Blk>, gaps: &mut Vec<usize>, next_id: usize) {
        if gaps.len() + 1 == ctx.n {
            ctx.out.push((gaps.clone(), row));
            return;
        }
        let t = gaps.len() + 1;
        let mut offset = 0;
        let mut moves: Vec<(usize, BlockContent, BlockContent, usize)> = Vec::new();
        for (bi, b) in row.iter().enumerate() {
            let size = b.content.size();
            let blocked = row[..bi]
                .iter()
                .any(|o| o.parent == b.parent && o.birth == b.birth && o.content == b.content && o.content.size() >= 2);
            if size >= 2 && !blocked {
                for l in b.content.sub_contents() {
                    if l == b.content {
                        continue;
                    }
                    let r = b.content.minus(&l).expect("sub-content");
                    if ctx.order.compare_total(&l, &r) == Ordering::Greater {
                        continue;
                    }
                    moves.push((bi, l, r, offset));
                }
            }
            offset += size;
        }
        moves.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| ctx.order.compare_total(&a.1, &b.1)));
        for (bi, l, r, off) in moves {
            let p = &row[bi];
            let left = Blk { content: l.clone(), parent: p.id, birth: t, id: next_id };
            let right = Blk { content: r, parent: p.id, birth: t, id: next_id + 1 };
            let mut nrow = row.clone();
            nrow.splice(bi..=bi, [left, right]);
            gaps.push(off + l.size());
            rec(ctx, nrow, gaps, next_id + 2);
            gaps.pop();
        }
    }
    let root = Blk { content: shape.whole(), parent: usize::MAX, birth: 0, id: 0 };
    let mut ctx = Ctx { order, n, out: Vec::new() };
    rec(&mut ctx, vec![root], &mut Vec::new(), 1);
    ctx.out
        .into_iter()
        .map(|(gaps, row)| {
            let letters = row.iter().map(|b| b.content.word()[0]).collect();
            InsertionFacet::new(shape, letters, gaps)
        })
        .collect()
}

/// Word in `{A, D}` of length `n − 2`; position `p` describes steps `p, p+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentWord {
    letters: Vec<bool>,
}

impl DescentWord {
    pub fn from_set(d: &RankSet) -> Self {
        let d = d.to_dual();
        DescentWord { letters: (1..=d.n().saturating_sub(2)).map(|p| d.contains(p)).collect() }
    }

    /// `true` marks a descent.
    pub fn from_bools(letters: Vec<bool>) -> Self {
        DescentWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Ground-set size the word belongs to.
    pub fn n(&self) -> usize {
        self.letters.len() + 2
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    pub fn ends_in_ascent(&self) -> bool {
        self.letters.last() == Some(&false)
    }

    /// Descent positions as a dual rank set.
    pub fn to_set(&self) -> RankSet {
        let d: Vec<usize> = self.letters.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i + 1).collect();
        RankSet::new(self.n(), &d, Basis::Dual).expect("positions in range")
    }

    /// Word of a primal rank set `S`, i.e. the word of `S*`.
    pub fn of_primal(s: &RankSet) -> Self {
        Self::from_set(&s.to_dual())
    }

    /// Run-length form such as `D^3AD^4A`.
    pub fn compact(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let x = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == x {
                j += 1;
            }
            out.push(if x { 'D' } else { 'A' });
            if j - i > 1 {
                out.push('^');
                out.push_str(&(j - i).to_string());
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for DescentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.letters {
            f.write_str(if x { "D" } else { "A" })?;
        }
        Ok(())
    }
}

impl FromStr for DescentWord {
    type Err = Error;

    /// Accepts `DDDA`, `D3AD4A` and `D^3AD^4A`.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.trim().as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let x = match b[i] {
                b'D' | b'd' => true,
                b'A' | b'a' => false,
                c => return Err(Error::Parse(format!("unexpected {:?} in word {s:?}", c as char))),
            };
            i += 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
            }
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let reps = if start == i {
                1
            } else {
                std::str::from_utf8(&b[start..i]).expect("digits").parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?
            };
            letters.extend(std::iter::repeat_n(x, reps));
        }
        Ok(DescentWord { letters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_facet_orbits;

    fn ll() -> BlockOrder {
        BlockOrder::LengthLex
    }

    #[test]
    fn descending_run_descents() {
        let f = InsertionFacet::from_gaps(10, &[2, 4, 6, 8, 7, 5, 3, 1, 9]).unwrap();
        assert_eq!(f.descent_set(&ll()).ranks(), &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(f.descent_word(&ll()).to_string(), "DDDDDDDA");
        assert_eq!(f.render(), "o|8o|1o|7o|2o|6o|3o|5o|4o|9o");
        assert!(f.is_normalized(&ll()));
    }

    #[test]
    fn descents_two_seven_eight() {
        let f = InsertionFacet::from_gaps(10, &[2, 5, 3, 6, 7, 8, 9, 4, 1]).unwrap();
        assert_eq!(f.descent_set(&ll()).ranks(), &[2, 7, 8]);
    }

    #[test]
    fn small_facets() {
        let f = InsertionFacet::from_gaps(3, &[1, 2]).unwrap();
        assert!(f.descent_set(&ll()).is_empty());
        assert_eq!(f.descent_word(&ll()).to_string(), "A");
        let c = enumerate_facet_orbits(&Shape::full(3).unwrap()).unwrap();
        assert_eq!(facet_to_insertions(&c[0], &ll()).unwrap().gaps(), &[1, 2]);
    }

    #[test]
    fn pi4_through_two_two() {
        let f = InsertionFacet::from_gaps(4, &[2, 1, 3]).unwrap();
        assert_eq!(facet_to_insertions(&f.chain_type(), &ll()).unwrap(), f);
        let labels = f.cover_labels();
        assert_eq!(labels.iter().map(|l| l.position).collect::<Vec<_>>(), vec![2, 1, 3]);
        assert_eq!(labels[1].parent_birth, 1);
        assert_eq!(labels[0].parent_birth, 0);
        assert_eq!(labels[1].bars, vec![1, 2]);
    }

    #[test]
    fn mirrored_bar_normalizes_left() {
        let f = InsertionFacet::from_gaps(4, &[3, 1, 2]).unwrap();
        assert!(!f.is_normalized(&ll()));
        assert_eq!(f.normalize(&ll()).unwrap().gaps(), &[1, 2, 3]);
    }

    #[test]
    fn enumeration_matches_orbits() {
        for n in 2..=7 {
            let s = Shape::full(n).unwrap();
            let facets = enumerate_facets(&s, &ll()).unwrap();
            let mut types: Vec<ChainType> = facets.iter().map(|f| f.chain_type()).collect();
            types.sort();
            types.dedup();
            assert_eq!(types.len(), facets.len());
            assert_eq!(types, enumerate_facet_orbits(&s).unwrap());
            for f in &facets {
                assert!(f.is_normalized(&ll()));
                assert_eq!(&facet_to_insertions(&f.chain_type(), &ll()).unwrap(), f);
            }
        }
    }

    #[test]
    fn word_parsing() {
        let w: DescentWord = "D^3AD^4A".parse().unwrap();
        assert_eq!(w.to_string(), "DDDADDDDA");
        assert_eq!("D3AD4A".parse::<DescentWord>().unwrap(), w);
        assert_eq!(w.compact(), "D^3AD^4A");
        assert_eq!(w.n(), 11);
        assert!("DXA".parse::<DescentWord>().is_err());
    }

    #[test]
    fn diagram_round_trip() {
        let f = parse_diagram("o|8o|1o|7o|2o|6o|3o|5o|4o|9o").unwrap();
        assert_eq!(f.gaps(), &[2, 4, 6, 8, 7, 5, 3, 1, 9]);
    }

    #[test]
    fn equal_pairs() {
        assert_eq!(InsertionFacet::from_gaps(4, &[2, 1, 3]).unwrap().largest_equal_pair(), 2);
        assert_eq!(InsertionFacet::from_gaps(4, &[1, 2, 3]).unwrap().largest_equal_pair(), 1);
        assert_eq!(InsertionFacet::from_gaps(6, &[3, 1, 2, 4, 5]).unwrap().largest_equal_pair(), 3);
    }
}
