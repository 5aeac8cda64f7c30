//! Vanishing rules for `b_S(n)`, the chain conditions behind positivity, and
//! the block-orbit count that decides the skeleton homology.

use std::collections::HashSet;

use serde::Serialize;

use crate::bars::block_conditions;
use crate::chain::{concrete_orbit_ids, ChainType, ConcreteChain, RankSet};
use crate::construct::split_initial;
use crate::enumerate::faces_with_support;
use crate::error::{Error, Result};
use crate::order::BlockOrder;
use crate::shape::Shape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `S = [1, i]`, `i ≥ 1`.
    Initial,
    /// `[1, ⌊(n+1)/2⌋] ⊆ S`.
    Halfset,
    /// `S = [1, r] − k` with `k > r/2`.
    Gap,
    /// `S = [1, r] ∪ {a}` with `a ∉ [C(r+2, 2), n − r − 1]`.
    SingleA,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// `1 ∉ S`.
    No1,
    /// `S = [1, i]`.
    InitialSegment,
    /// `S = {1..i, j_1..j_l}` with `l ≥ 1`, `j_1 > i + 1`.
    InitialPlusTail,
}

/// Classification of a primal rank set with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankSetShape {
    pub kind: Kind,
    pub i: usize,
    pub tail: Vec<usize>,
    /// `(r, k)` when `S = [1, r] − k` for some `1 ≤ k ≤ r`.
    pub gap: Option<(usize, usize)>,
    /// `(r, a)` when `S = [1, r] ∪ {a}` with `r ≥ 1`, `a > r`.
    pub single_a: Option<(usize, usize)>,
}

impl RankSetShape {
    pub fn l(&self) -> usize {
        self.tail.len()
    }

    pub fn j_l(&self) -> Option<usize> {
        self.tail.last().copied()
    }
}

pub fn classify(s: &RankSet) -> RankSetShape {
    let s = s.to_primal();
    let (i, tail) = split_initial(&s);
    let kind = if i == 0 {
        Kind::No1
    } else if tail.is_empty() {
        Kind::InitialSegment
    } else {
        Kind::InitialPlusTail
    };
    // [1, r] − k: one hole below the maximum, or a plain segment (k = r)
    let gap = match s.ranks().last() {
        None => None,
        Some(&m) => {
            let holes: Vec<usize> = (1..=m).filter(|r| !s.contains(*r)).collect();
            match holes.len() {
                0 => Some((m + 1, m + 1)),
                1 => Some((m, holes[0])),
                _ => None,
            }
        }
    };
    let gap = gap.filter(|&(r, _)| r + 2 <= s.n());
    let single_a = (tail.len() == 1 && i >= 1).then(|| (i, tail[0]));
    RankSetShape { kind, i, tail, gap, single_a }
}

fn binom2(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Rules whose hypotheses hold for `S`. Each one asserts `b_S(n) = 0`.
pub fn vanishing_predicates(s: &RankSet, n: usize) -> Vec<Rule> {
    let s = s.to_primal();
    let shape = classify(&s);
    let mut out = Vec::new();
    if shape.kind == Kind::InitialSegment {
        out.push(Rule::Initial);
    }
    let half = n.div_ceil(2);
    if half >= 1 && (1..=half).all(|r| s.contains(r)) {
        out.push(Rule::Halfset);
    }
    // k ≥ 2 keeps the degenerate r = k = 1 case (S = ∅) out
    let gap_fires = |r: usize, k: usize| k >= 2 && 2 * k > r && k <= r && r + 2 <= n;
    if let Some((r, k)) = shape.gap {
        if r == k {
            // plain segment [1, r − 1]: also [1, r] − r for the single r
            if gap_fires(r, k) {
                out.push(Rule::Gap);
            }
        } else if gap_fires(r, k) {
            out.push(Rule::Gap);
        }
    }
    // [1, r] ∪ {a}: any r ≥ 1 with S − [1, r] a single rank a > r
    let m = s.ranks().last().copied().unwrap_or(0);
    for r in 1..m {
        if (1..=r).all(|x| s.contains(x)) && s.len() == r + 1 {
            let a = m;
            if a < binom2(r + 2) || a + r + 1 > n {
                out.push(Rule::SingleA);
                break;
            }
        }
    }
    out
}

/// Orbit count `j` and α-capacity `Σ ⌊|C|/2⌋` over the nontrivial blocks of
/// the finest level of `beta`.
pub fn beta_orbit_stats(beta: &ChainType) -> (usize, usize) {
    let Some(&low) = beta.ranks().first() else {
        return (0, 0);
    };
    let orbits = beta.block_orbits(low).expect("lowest rank in support");
    let nontrivial: Vec<_> = orbits.iter().filter(|o| o.is_nontrivial()).collect();
    let cap = nontrivial.iter().map(|o| o.blocks.len() * (o.content.size() / 2)).sum();
    (nontrivial.len(), cap)
}

/// `j > i` (and room for `i` disjoint pairs): the invariant homology of the
/// `(i−1)`-skeleton of a `(j−1)`-simplex on the block orbits is nonzero.
pub fn delta_beta_nonvanishing(beta: &ChainType, i: usize) -> bool {
    let (j, cap) = beta_orbit_stats(beta);
    j > i && cap >= i
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessChain {
    /// Full chain of support `S`.
    pub chain: ChainType,
    /// The `β` part (support `{j_1..j_l}`).
    pub beta: ChainType,
    /// Stab-orbits of nontrivial blocks of `β_1`.
    pub orbit_count: usize,
}

fn precondition(s: &RankSet, n: usize) -> Result<(usize, Vec<usize>)> {
    let s = s.to_primal();
    if s.n() != n {
        return Err(Error::InvalidRankSet(format!("rank set is for n = {}", s.n())));
    }
    Ok(split_initial(&s))
}

/// Adds `α_1 ≺ … ≺ α_i` below `beta`: the `r`-th new level pairs up two
/// elements of `blocks[r]` (listed as element sets of `β_1` blocks), and
/// every earlier pair stays.
fn with_alpha(beta: &ConcreteChain, pair_hosts: &[Vec<usize>]) -> Option<ConcreteChain> {
    let n = beta.n();
    let mut used: HashSet<usize> = HashSet::new();
    let mut pairs: Vec<u32> = Vec::new();
    for host in pair_hosts {
        let free: Vec<usize> = host.iter().copied().filter(|e| !used.contains(e)).take(2).collect();
        if free.len() < 2 {
            return None;
        }
        used.extend(free.iter().copied());
        pairs.push(1 << free[0] | 1 << free[1]);
    }
    let mut levels = beta.levels.clone();
    for r in 1..=pairs.len() {
        let mut blocks: Vec<u32> = pairs[..r].to_vec();
        let covered = blocks.iter().fold(0u32, |a, b| a | b);
        blocks.extend((0..n).filter(|e| covered >> e & 1 == 0).map(|e| 1u32 << e));
        blocks.sort_unstable();
        levels.push(blocks);
    }
    Some(ConcreteChain { colors: beta.colors.clone(), levels })
}

/// Searches the `β` chains of support `{j_1..j_l}` for one with at least
/// `i + 1` nontrivial block orbits at `β_1` and room for `i` pairs.
pub fn chain_condition_search(s: &RankSet, n: usize) -> Result<Option<WitnessChain>> {
    let (i, tail) = precondition(s, n)?;
    if tail.is_empty() {
        return Ok(None);
    }
    let shape = Shape::full(n)?;
    let tail_set = RankSet::primal(n, &tail)?;
    for beta in faces_with_support(&shape, &tail_set)? {
        let (j, cap) = beta_orbit_stats(&beta);
        if j < i + 1 || cap < i {
            continue;
        }
        let rep = beta.representative();
        let low = rep.levels.len() - 1;
        let mut hosts: Vec<Vec<usize>> = Vec::new();
        let ids = concrete_orbit_ids(&rep, 1);
        let mut blocks: Vec<u32> = rep.levels[low].iter().copied().filter(|b| b.count_ones() >= 2).collect();
        // one pair per distinct orbit first, then fill by capacity
        blocks.sort_by_key(|b| ids[low][b]);
        let mut seen = HashSet::new();
        let (firsts, rest): (Vec<u32>, Vec<u32>) = blocks.iter().partition(|b| seen.insert(ids[low][*b]));
        for b in firsts.iter().chain(rest.iter()) {
            let elems: Vec<usize> = (0..n).filter(|e| b >> e & 1 == 1).collect();
            for _ in 0..elems.len() / 2 {
                hosts.push(elems.clone());
            }
        }
        hosts.truncate(i);
        let chain = with_alpha(&rep, &hosts).ok_or_else(|| Error::Construction("capacity accounting".into()))?;
        let chain = ChainType::from_concrete(&shape, &chain)?;
        return Ok(Some(WitnessChain { chain, beta, orbit_count: j }));
    }
    Ok(None)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if m < k {
        return Vec::new();
    }
    let mut out = subsets(m - 1, k);
    for mut s in subsets(m - 1, k - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// A chain of support `S` meeting every positivity hypothesis: `α_i` has `i`
/// pairs `B_r`, `β_1` has `i + 1` nontrivial blocks `C_r` in distinct orbits
/// with `B_r ⊆ C_r`, and the chain satisfies the non-equal block condition.
pub fn sufficient_witness(s: &RankSet, n: usize) -> Result<Option<ChainType>> {
    let (i, tail) = precondition(s, n)?;
    if tail.is_empty() {
        return Ok(None);
    }
    let shape = Shape::full(n)?;
    let order = BlockOrder::LengthLex;
    let tail_set = RankSet::primal(n, &tail)?;
    for beta in faces_with_support(&shape, &tail_set)? {
        let (j, _) = beta_orbit_stats(&beta);
        if j < i + 1 {
            continue;
        }
        let rep = beta.representative();
        let low = rep.levels.len() - 1;
        let ids = concrete_orbit_ids(&rep, 1);
        let mut reps: Vec<(usize, u32)> = Vec::new();
        for &b in &rep.levels[low] {
            let id = ids[low][&b];
            if b.count_ones() >= 2 && !reps.iter().any(|&(x, _)| x == id) {
                reps.push((id, b));
            }
        }
        reps.sort_unstable();
        for chosen in subsets(reps.len(), i) {
            for perm in permutations(&chosen) {
                let hosts: Vec<Vec<usize>> = perm
                    .iter()
                    .map(|&k| (0..n).filter(|e| reps[k].1 >> e & 1 == 1).collect())
                    .collect();
                let Some(c) = with_alpha(&rep, &hosts) else { continue };
                let c = ChainType::from_concrete(&shape, &c)?;
                if block_conditions(&c, &order)?.0 {
                    return Ok(Some(c));
                }
            }
        }
    }
    Ok(None)
}
