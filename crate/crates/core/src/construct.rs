//! Explicit facets realizing prescribed descent words.

use serde::Serialize;

use crate::bars::{DescentWord, InsertionFacet};
use crate::chain::RankSet;
use crate::error::{Error, Result};
use crate::order::BlockOrder;
use crate::partition::ordered_facets;
use crate::shape::Shape;

/// A built facet and the procedure that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    #[serde(serialize_with = "ser_facet")]
    pub facet: InsertionFacet,
    pub method: &'static str,
}

fn ser_facet<S: serde::Serializer>(f: &InsertionFacet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(f.gaps())
}

/// Normalizes `gaps` on `row` and checks the resulting descent word.
fn verified(shape: &Shape, row: Vec<u8>, gaps: Vec<usize>, target: &DescentWord, order: &BlockOrder) -> Result<InsertionFacet> {
    let f = InsertionFacet::new(shape, row, gaps)?.normalize(order)?;
    let got = f.descent_word(order);
    if &got != target {
        return Err(Error::Construction(format!("insertions {:?} give {got}, wanted {target}", f.gaps())));
    }
    Ok(f)
}

/// Bars for `D^m A` on `m + 3` balls: even positions left to right, then odd
/// positions right to left, then the last gap.
fn run_gaps(m: usize) -> Vec<usize> {
    let n = m + 3;
    let k = n / 2;
    let mut g: Vec<usize> = (1..k).map(|x| 2 * x).collect();
    if n.is_multiple_of(2) {
        g.extend((1..=2 * k - 3).rev().step_by(2));
        g.push(2 * k - 1);
    } else {
        g.extend((1..=2 * k - 1).rev().step_by(2));
        g.push(2 * k);
    }
    g
}

/// Concatenates standalone pieces: every piece but the last contributes its
/// first `len` bars, shifted past the pieces before it.
fn glue(pieces: &[(Vec<usize>, usize)]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, (g, len)) in pieces.iter().enumerate() {
        let take = if i + 1 == pieces.len() { g.len() } else { *len };
        out.extend(g.iter().take(take).map(|x| x + start));
        start += len;
    }
    out
}

/// Splits a word ending in `A` into `D^m A` pieces.
fn run_pieces(w: &[bool]) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    let mut m = 0;
    for &x in w {
        if x {
            m += 1;
        } else {
            out.push((run_gaps(m), m + 1));
            m = 0;
        }
    }
    out
}

/// `D^{n−3}A` on `n` balls.
pub fn build_descending_run(n: usize) -> Result<InsertionFacet> {
    if n < 4 {
        return Err(Error::Domain(format!("descending run needs n >= 4, got {n}")));
    }
    let target = DescentWord::from_bools([vec![true; n - 3], vec![false]].concat());
    verified(&Shape::full(n)?, vec![0; n], run_gaps(n - 3), &target, &BlockOrder::LengthLex)
}

/// Any word ending in an ascent, by gluing descending runs left to right.
pub fn build_word(w: &DescentWord) -> Result<InsertionFacet> {
    if !w.ends_in_ascent() {
        return Err(Error::UnsupportedWord(w.to_string()));
    }
    let n = w.n();
    verified(&Shape::full(n)?, vec![0; n], glue(&run_pieces(w.letters())), w, &BlockOrder::LengthLex)
}

/// Word with `i` descents among its first letters, an ascent, then `D^i`:
/// blocks of size 2 (descent) or 1 (ascent) left to right, then the `i + 1`
/// blocks of size 2 split right to left.
fn pairs_gaps(w: &[bool], i: usize) -> Result<Vec<usize>> {
    let n = w.len() + 2;
    let head = &w[..w.len() - i];
    let mut gaps = Vec::new();
    let mut pairs = Vec::new();
    let mut offset = 0;
    for &x in head {
        if x {
            pairs.push(offset);
            offset += 2;
        } else {
            offset += 1;
        }
        gaps.push(offset);
    }
    if n != offset + 2 || pairs.len() != i {
        return Err(Error::Construction(format!("word {} is not of the paired form", DescentWord::from_bools(w.to_vec()))));
    }
    pairs.push(offset);
    gaps.extend(pairs.iter().rev().map(|p| p + 1));
    Ok(gaps)
}

/// Initial run length `i` and tail `j_1 < … < j_l` of a primal rank set.
pub fn split_initial(s: &RankSet) -> (usize, Vec<usize>) {
    let s = s.to_primal();
    let mut i = 0;
    while s.contains(i + 1) {
        i += 1;
    }
    (i, s.ranks()[i..].to_vec())
}

/// Facet whose descent word is `w(S*)` for `S = {1..i, j_1..j_l}` with `i ≤ l`.
pub fn build_initial_tail(s: &RankSet, n: usize) -> Result<Construction> {
    let s = s.to_primal();
    if s.n() != n {
        return Err(Error::InvalidRankSet(format!("rank set is for n = {}", s.n())));
    }
    let (i, js) = split_initial(&s);
    let l = js.len();
    if i > l {
        return Err(Error::Domain(format!("needs i <= l, got i = {i}, l = {l}")));
    }
    let w = DescentWord::of_primal(&s);
    let order = BlockOrder::LengthLex;
    let shape = Shape::full(n)?;
    if i == 0 {
        return Ok(Construction { facet: build_word(&w)?, method: "descending-runs" });
    }
    let letters = w.letters();
    if l == i {
        let gaps = pairs_gaps(letters, i)?;
        return Ok(Construction { facet: verified(&shape, vec![0; n], gaps, &w, &order)?, method: "paired-blocks" });
    }
    // w = w1 ∘ w2 with exactly l − i descents in w1, the last letter of w1 a descent
    let mut seen = 0;
    let cut = letters
        .iter()
        .position(|&x| {
            seen += x as usize;
            x && seen == l - i
        })
        .expect("enough descents")
        + 1;
    let (w1, w2) = letters.split_at(cut);
    if !w2[0] {
        let mut head = w1.to_vec();
        head.push(false);
        let mut pieces = run_pieces(&head);
        let tail = &w2[1..];
        pieces.push((pairs_gaps(tail, i)?, tail.len()));
        let gaps = glue(&pieces);
        return Ok(Construction { facet: verified(&shape, vec![0; n], gaps, &w, &order)?, method: "split-ascent" });
    }
    // w1 = w1' D^{r1}; realize w1' by runs, then the remainder by local search
    let keep = w1.iter().rposition(|&x| !x).map_or(0, |p| p + 1);
    let pieces = run_pieces(&w1[..keep]);
    let rest = DescentWord::from_bools(letters[keep..].to_vec());
    let local = Shape::full(rest.n())?;
    for cand in ordered_facets(&local, &order)?.iter() {
        if cand.descent_word(&order) != rest {
            continue;
        }
        let mut all = pieces.clone();
        all.push((cand.gaps().to_vec(), rest.len()));
        if let Ok(f) = verified(&shape, vec![0; n], glue(&all), &w, &order) {
            return Ok(Construction { facet: f, method: "split-descent-search" });
        }
    }
    Err(Error::Construction(format!("no facet found for {}", w.compact())))
}

/// Greedy facets for `λ = (n−1, 1)` under the distinguished order. One facet
/// when `S = {1..i}`, otherwise two distinct facets with descent set `S*`.
pub fn build_bprime(s: &RankSet, n: usize) -> Result<Vec<Construction>> {
    let s = s.to_primal();
    if s.n() != n {
        return Err(Error::InvalidRankSet(format!("rank set is for n = {}", s.n())));
    }
    let shape = Shape::hook(n)?;
    let order = BlockOrder::distinguished_for(&shape)?;
    let mut row = vec![0u8; n];
    row[0] = 1;
    let w = DescentWord::of_primal(&s);
    let letters = w.letters();
    // groups of (ascents, then one descent); the trailing ascents stay separate
    let mut groups: Vec<usize> = Vec::new();
    let mut run = 0;
    for &x in letters {
        run += 1;
        if x {
            groups.push(run);
            run = 0;
        }
    }
    let greedy = |shifted: Option<usize>| {
        let mut free: Vec<usize> = (1..n).collect();
        let mut gaps = Vec::with_capacity(n - 1);
        for (gi, &k) in groups.iter().enumerate() {
            let end = if shifted == Some(gi) { free.len() - 1 } else { free.len() };
            let take: Vec<usize> = free.drain(end - k..end).collect();
            gaps.extend(take);
        }
        gaps.append(&mut free);
        gaps
    };
    let first = verified(&shape, row.clone(), greedy(None), &w, &order)?;
    let mut out = vec![Construction { facet: first.clone(), method: "greedy" }];
    let initial = split_initial(&s).1.is_empty();
    if initial {
        return Ok(out);
    }
    // a descent immediately followed by an ascent: its bar moves one spot left
    let mut pos = 0;
    for (gi, &k) in groups.iter().enumerate() {
        pos += k;
        if letters.get(pos) == Some(&false) {
            if let Ok(f) = verified(&shape, row.clone(), greedy(Some(gi)), &w, &order) {
                if f.chain_type() != first.chain_type() {
                    out.push(Construction { facet: f, method: "shifted-descent" });
                    return Ok(out);
                }
            }
        }
    }
    for cand in ordered_facets(&shape, &order)?.iter() {
        if cand.descent_word(&order) == w && cand.chain_type() != first.chain_type() {
            out.push(Construction { facet: cand.clone(), method: "search" });
            return Ok(out);
        }
    }
    Err(Error::Construction(format!("no second facet for {}", w.compact())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs() {
        assert_eq!(run_gaps(7), vec![2, 4, 6, 8, 7, 5, 3, 1, 9]);
        assert_eq!(run_gaps(8), vec![2, 4, 6, 8, 9, 7, 5, 3, 1, 10]);
        assert_eq!(run_gaps(0), vec![1, 2]);
        assert_eq!(build_descending_run(10).unwrap().gaps(), &[2, 4, 6, 8, 7, 5, 3, 1, 9]);
        assert_eq!(build_descending_run(4).unwrap().descent_word(&BlockOrder::LengthLex).to_string(), "DA");
        assert!(build_descending_run(3).is_err());
    }

    #[test]
    fn glued_runs() {
        let w: DescentWord = "D3AD4A".parse().unwrap();
        assert_eq!(glue(&run_pieces(w.letters())), vec![2, 4, 3, 1, 6, 8, 9, 7, 5, 10]);
        assert!(build_word(&w).is_ok());
        assert!(matches!(build_word(&"AD".parse().unwrap()), Err(Error::UnsupportedWord(_))));
    }

    #[test]
    fn paired_blocks() {
        assert_eq!(pairs_gaps(&[false, true, false, true], 1).unwrap(), vec![1, 3, 4, 5, 2]);
        let c = build_initial_tail(&RankSet::primal(6, &[1, 3]).unwrap(), 6).unwrap();
        assert_eq!(c.method, "paired-blocks");
    }

    #[test]
    fn bprime_example() {
        let s = RankSet::dual(8, &[1, 4, 5]).unwrap();
        let out = build_bprime(&s, 8).unwrap();
        assert_eq!(out[0].facet.gaps(), &[7, 4, 5, 6, 3, 1, 2]);
        assert_eq!(out[0].facet.render_letters(), "b|6a|7a|5a|2a|3a|4a|1a");
        assert_eq!(out.len(), 2);
        assert_eq!(build_bprime(&RankSet::primal(8, &[1, 2]).unwrap(), 8).unwrap().len(), 1);
        assert_eq!(build_bprime(&RankSet::primal(8, &[]).unwrap(), 8).unwrap().len(), 1);
    }
}
