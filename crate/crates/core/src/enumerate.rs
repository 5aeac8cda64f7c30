//! Enumeration of chain orbits with a prescribed support, level by level.

use std::collections::BTreeSet;

use crate::chain::{ChainType, Node, RankSet};
use crate::error::{Error, Result};
use crate::shape::{vector_partitions, Shape};

/// Every way to refine the leaves of `nodes` (which sit at `leaf_depth`
/// below the current depth) into more blocks, using at most `budget` extra
/// blocks. Returns (new node list, blocks added).
fn expand(nodes: &[Node], depth: usize, leaf_depth: usize, budget: usize) -> Vec<(Vec<Node>, usize)> {
    let Some((first, rest)) = nodes.split_first() else {
        return vec![(Vec::new(), 0)];
    };
    let mut heads: Vec<(Node, usize)> = Vec::new();
    if depth == leaf_depth {
        for k in 1..=first.content.size().min(budget + 1) {
            for parts in vector_partitions(&first.content, k) {
                let children = parts.into_iter().map(|c| Node { content: c, children: Vec::new() }).collect();
                heads.push((Node { content: first.content.clone(), children }, k - 1));
            }
        }
    } else {
        for (children, used) in expand(&first.children, depth + 1, leaf_depth, budget) {
            heads.push((Node { content: first.content.clone(), children }, used));
        }
    }
    let mut out = Vec::new();
    for (head, used) in heads {
        for (mut tail, more) in expand(rest, depth, leaf_depth, budget - used) {
            tail.insert(0, head.clone());
            out.push((tail, used + more));
        }
    }
    out
}

/// All orbit types of support exactly `s`, found by refining from the
/// coarsest level down. Sorted canonically.
pub fn faces_with_support(shape: &Shape, s: &RankSet) -> Result<Vec<ChainType>> {
    let n = shape.n();
    let s = s.to_primal();
    if s.n() != n {
        return Err(Error::InvalidRankSet(format!("rank set for n = {} used with n = {n}", s.n())));
    }
    let mut ranks = s.ranks().to_vec();
    if ranks.is_empty() {
        return Ok(vec![ChainType::empty(shape)]);
    }
    ranks.reverse();
    let top = n - ranks[0];
    let mut level: BTreeSet<Vec<Node>> = vector_partitions(&shape.whole(), top)
        .into_iter()
        .map(|p| p.into_iter().map(|c| Node { content: c, children: Vec::new() }).collect())
        .collect();
    let mut blocks = top;
    for (d, &r) in ranks.iter().enumerate().skip(1) {
        let target = n - r;
        let mut next = BTreeSet::new();
        for roots in &level {
            let virtual_root = [Node { content: shape.whole(), children: roots.clone() }];
            for (expanded, used) in expand(&virtual_root, 0, d, target - blocks) {
                if used == target - blocks {
                    let mut e = expanded.into_iter().next().expect("single root").children;
                    canonical(&mut e);
                    next.insert(e);
                }
            }
        }
        level = next;
        blocks = target;
    }
    let support = s.ranks().to_vec();
    let mut out: Vec<ChainType> =
        level.into_iter().map(|roots| ChainType::from_parts(shape.clone(), support.clone(), roots)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn canonical(nodes: &mut [Node]) {
    for nd in nodes.iter_mut() {
        canonical(&mut nd.children);
    }
    nodes.sort();
}

/// Maximal chain orbits, by direct enumeration with full support.
pub fn enumerate_facet_orbits(shape: &Shape) -> Result<Vec<ChainType>> {
    if shape.n() < 2 {
        return Err(Error::Domain("facet enumeration needs n >= 2".into()));
    }
    faces_with_support(shape, &RankSet::full(shape.n(), crate::chain::Basis::Primal))
}

/// Orbit types of support `s` obtained by restricting each facet and
/// removing duplicates. Independent of [`faces_with_support`].
pub fn faces_from_facets(facets: &[ChainType], s: &RankSet) -> Result<Vec<ChainType>> {
    let mut out = BTreeSet::new();
    for f in facets {
        out.insert(f.restrict(s)?);
    }
    Ok(out.into_iter().collect())
}

/// Total number of face orbits (empty face included), by direct enumeration.
pub fn total_face_orbits(shape: &Shape) -> Result<u64> {
    let n = shape.n();
    let mut total = 0u64;
    for s in RankSet::all(n, crate::chain::Basis::Primal) {
        total += faces_with_support(shape, &s)?.len() as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{canonicalize, parse_partition, Basis};

    fn full(n: usize) -> Shape {
        Shape::full(n).unwrap()
    }

    #[test]
    fn facet_counts_small() {
        assert_eq!(enumerate_facet_orbits(&full(3)).unwrap().len(), 1);
        assert_eq!(enumerate_facet_orbits(&full(4)).unwrap().len(), 2);
        assert_eq!(enumerate_facet_orbits(&full(5)).unwrap().len(), 5);
    }

    #[test]
    fn support_examples() {
        let s = full(4);
        let one = faces_with_support(&s, &RankSet::primal(4, &[1]).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
        let two = faces_with_support(&s, &RankSet::primal(4, &[2]).unwrap()).unwrap();
        assert_eq!(two.len(), 2);
        let e = faces_with_support(&s, &RankSet::empty(4, Basis::Primal)).unwrap();
        assert_eq!(e, vec![ChainType::empty(&s)]);
    }

    #[test]
    fn unquotiented_rank_one() {
        let s = Shape::trivial(4).unwrap();
        assert_eq!(faces_with_support(&s, &RankSet::primal(4, &[1]).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn brute_force_pi4_facets() {
        // all 18 maximal chains of Π_4, deduplicated by canonical form
        let s = full(4);
        let mut seen = BTreeSet::new();
        let mut count = 0;
        let doubles = ["12|3|4", "13|2|4", "14|2|3", "23|1|4", "24|1|3", "34|1|2"];
        let twos = ["12|34", "13|24", "14|23", "123|4", "124|3", "134|2", "234|1"];
        for a in doubles {
            let pa = parse_partition(a).unwrap();
            for b in twos {
                let pb = parse_partition(b).unwrap();
                if let Ok(c) = canonicalize(&[pa.clone(), pb], &s) {
                    count += 1;
                    seen.insert(c);
                }
            }
        }
        assert_eq!(count, 18);
        let direct: BTreeSet<_> = enumerate_facet_orbits(&s).unwrap().into_iter().collect();
        assert_eq!(seen, direct);
    }

    #[test]
    fn two_routes_agree_small() {
        for n in 3..=6 {
            let s = full(n);
            let facets = enumerate_facet_orbits(&s).unwrap();
            for rs in RankSet::all(n, Basis::Primal) {
                assert_eq!(faces_with_support(&s, &rs).unwrap(), faces_from_facets(&facets, &rs).unwrap());
            }
        }
    }
}
