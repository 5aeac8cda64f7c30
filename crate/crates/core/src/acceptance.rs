//! The acceptance suite as library code, shared by the `acceptance` test
//! target and `rsl verify-all`.

use std::collections::HashSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bars::DescentWord;
use crate::chain::{dualize, Basis, ChainType, ConcreteChain, RankSet};
use crate::construct::{build_bprime, build_descending_run, build_initial_tail, build_word, split_initial};
use crate::enumerate::{faces_from_facets, faces_with_support};
use crate::error::Result;
use crate::flag::{b, b_prime, facet_orbits, flag_h, full_table};
use crate::order::{verify_lengthening, BlockOrder};
use crate::partition::{build_scheme, verify_partitioning, PartitionReport};
use crate::shape::Shape;
use crate::vanish::{chain_condition_search, classify, sufficient_witness, vanishing_predicates, Kind};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("[{status}] {:>2} {} ({} checks, {} ms)", self.id, self.name, self.checked, self.millis);
        if !self.failures.is_empty() {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            s.push_str(&format!(": {} failure(s): {}", self.failures.len(), shown.join("; ")));
        }
        s
    }
}

pub const NAMES: [&str; 13] = [
    "initial-segment vanishing",
    "words without rank 1 are realized",
    "initial run plus long tail is realized",
    "vanishing predicates",
    "stability",
    "partitioning",
    "h-agreement",
    "descent characterization",
    "hook multiplicities",
    "chain-condition necessity and sufficiency",
    "descending runs and glued words",
    "oracle cross-checks",
    "lengthening condition",
];

/// Upper bounds on `n`, each clipped by the criterion's own range.
#[derive(Clone, Copy, Debug)]
pub struct Scope {
    pub max_n: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope { max_n: 9 }
    }
}

impl Scope {
    fn upto(&self, limit: usize) -> std::ops::RangeInclusive<usize> {
        3..=limit.min(self.max_n)
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

pub fn run(id: usize, scope: Scope) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => initial_segments(scope, &mut t)?,
        2 => no_rank_one(scope, &mut t)?,
        3 => initial_plus_tail(scope, &mut t)?,
        4 => predicates(scope, &mut t)?,
        5 => stability(scope, &mut t)?,
        6 => partitioning(scope, &mut t)?,
        7 => h_agreement(scope, &mut t)?,
        8 => descent_characterization(scope, &mut t)?,
        9 => hook(scope, &mut t)?,
        10 => chain_conditions(scope, &mut t)?,
        11 => runs(&mut t)?,
        12 => oracles(scope, &mut t)?,
        13 => lengthening(scope, &mut t)?,
        _ => return Err(crate::Error::Domain(format!("no criterion {id}"))),
    }
    Ok(CriterionResult {
        id,
        name: NAMES[id - 1],
        passed: t.failures.is_empty(),
        checked: t.checked,
        failures: t.failures,
        millis: start.elapsed().as_millis(),
    })
}

pub fn run_all(scope: Scope) -> Result<Vec<CriterionResult>> {
    (1..=NAMES.len()).map(|id| run(id, scope)).collect()
}

fn initial_segments(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(9) {
        for i in 1..=n - 2 {
            let ranks: Vec<usize> = (1..=i).collect();
            let h = b(n, &ranks)?;
            t.check(h == 0, || format!("n={n} i={i} h={h}"));
        }
    }
    Ok(())
}

fn no_rank_one(scope: Scope, t: &mut Tally) -> Result<()> {
    let order = BlockOrder::LengthLex;
    for n in scope.upto(8) {
        let table = full_table(&Shape::full(n)?)?;
        for s in RankSet::all(n, Basis::Primal) {
            if s.contains(1) {
                continue;
            }
            let h = table.h(&s)?;
            let w = DescentWord::of_primal(&s);
            let built = build_word(&w).map(|f| (f.descent_word(&order), f.descent_set(&order)));
            let ok = h >= 1 && matches!(&built, Ok((got, d)) if *got == w && *d == dualize(&s));
            t.check(ok, || format!("n={n} S={s} h={h} word={w} built={built:?}"));
        }
    }
    Ok(())
}

fn initial_plus_tail(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(9) {
        let table = full_table(&Shape::full(n)?)?;
        for s in RankSet::all(n, Basis::Primal) {
            let (i, js) = split_initial(&s);
            if i == 0 || js.is_empty() || i > js.len() {
                continue;
            }
            let h = table.h(&s)?;
            let built = build_initial_tail(&s, n);
            let ok = h >= 1
                && matches!(&built, Ok(c) if c.facet.descent_set(&BlockOrder::LengthLex) == dualize(&s));
            t.check(ok, || format!("n={n} S={s} h={h} built={:?}", built.map(|c| c.facet.gaps().to_vec())));
        }
    }
    Ok(())
}

fn predicates(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(9) {
        let table = full_table(&Shape::full(n)?)?;
        for s in RankSet::all(n, Basis::Primal) {
            let rules = vanishing_predicates(&s, n);
            if rules.is_empty() {
                continue;
            }
            let h = table.h(&s)?;
            t.check(h == 0, || format!("n={n} S={s} rules={rules:?} h={h}"));
        }
    }
    Ok(())
}

fn stability(scope: Scope, t: &mut Tally) -> Result<()> {
    if scope.max_n < 9 {
        return Ok(());
    }
    for s in RankSet::full(5, Basis::Primal).subsets() {
        let ranks = s.ranks().to_vec();
        if 7 <= 2 * ranks.iter().copied().max().unwrap_or(0) {
            continue;
        }
        let hs: Vec<i64> = [7, 8, 9].iter().map(|&n| b(n, &ranks)).collect::<Result<_>>()?;
        t.check(hs[0] == hs[1] && hs[1] == hs[2], || format!("S={s} h(7,8,9)={hs:?}"));
    }
    Ok(())
}

fn schemes(scope: Scope) -> Result<Vec<PartitionReport>> {
    let mut out = Vec::new();
    for n in scope.upto(7) {
        out.push(verify_partitioning(&build_scheme(&Shape::full(n)?, &BlockOrder::LengthLex)?)?);
    }
    for n in scope.upto(6) {
        let shape = Shape::hook(n)?;
        out.push(verify_partitioning(&build_scheme(&shape, &BlockOrder::distinguished_for(&shape)?)?)?);
    }
    Ok(out)
}

fn partitioning(scope: Scope, t: &mut Tally) -> Result<()> {
    for r in schemes(scope)? {
        let ok = r.verified && r.witnesses.is_empty() && r.interval_sum == r.face_orbits;
        t.check(ok, || {
            format!(
                "λ={:?} order={} sum={} faces={} witnesses={}",
                r.lambda,
                r.order,
                r.interval_sum,
                r.face_orbits,
                r.witnesses.len()
            )
        });
    }
    Ok(())
}

fn h_agreement(scope: Scope, t: &mut Tally) -> Result<()> {
    for r in schemes(scope)? {
        let shape = Shape::new(&r.lambda)?;
        for s in RankSet::all(r.n, Basis::Dual) {
            let via = r.h_map.get(s.ranks()).copied().unwrap_or(0) as i64;
            let h = flag_h(&shape, &s)?;
            t.check(via == h, || format!("λ={:?} S*={s} partition={via} flag={h}", r.lambda));
        }
    }
    Ok(())
}

fn descent_characterization(scope: Scope, t: &mut Tally) -> Result<()> {
    for r in schemes(scope)? {
        for f in r.per_facet.iter().filter(|f| f.nontrivial_non_equal) {
            t.check(f.descents == f.minimal_support, || {
                format!("λ={:?} facet {:?} G={:?} D={:?}", r.lambda, f.insertions, f.minimal_support, f.descents)
            });
        }
    }
    Ok(())
}

fn hook(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(8) {
        let shape = Shape::hook(n)?;
        let order = BlockOrder::distinguished_for(&shape)?;
        for s in RankSet::all(n, Basis::Primal) {
            let initial = split_initial(&s).1.is_empty();
            let h = b_prime(n, s.ranks())?;
            let built = build_bprime(&s, n);
            let ok = match &built {
                Ok(v) => {
                    let distinct: HashSet<ChainType> = v.iter().map(|c| c.facet.chain_type()).collect();
                    let words = v.iter().all(|c| c.facet.descent_set(&order) == dualize(&s));
                    words && distinct.len() == v.len() && v.len() == if initial { 1 } else { 2 }
                }
                Err(_) => false,
            };
            let value_ok = if initial { h == 1 } else { h >= 2 };
            t.check(ok && value_ok, || format!("n={n} S={s} h'={h} built={:?}", built.map(|v| v.len())));
        }
    }
    Ok(())
}

fn chain_conditions(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(8) {
        let table = full_table(&Shape::full(n)?)?;
        for s in RankSet::all(n, Basis::Primal) {
            if classify(&s).kind != Kind::InitialPlusTail {
                continue;
            }
            let h = table.h(&s)?;
            if h > 0 {
                let found = chain_condition_search(&s, n)?.is_some();
                t.check(found, || format!("necessity: n={n} S={s} h={h} but no chain"));
            }
            if sufficient_witness(&s, n)?.is_some() {
                t.check(h > 0, || format!("sufficiency: n={n} S={s} witness found but h={h}"));
            }
        }
    }
    Ok(())
}

fn runs(t: &mut Tally) -> Result<()> {
    let order = BlockOrder::LengthLex;
    let ten = build_descending_run(10)?;
    t.check(ten.gaps() == [2, 4, 6, 8, 7, 5, 3, 1, 9], || format!("n=10 insertions {:?}", ten.gaps()));
    let w = ten.descent_word(&order).compact();
    t.check(w == "D^7A", || format!("n=10 word {w}"));
    t.check(ten.render() == "o|8o|1o|7o|2o|6o|3o|5o|4o|9o", || format!("n=10 diagram {}", ten.render()));
    let eleven = build_descending_run(11)?;
    let w = eleven.descent_word(&order).compact();
    t.check(w == "D^8A", || format!("n=11 word {w}"));
    let target: DescentWord = "D^3AD^4A".parse()?;
    let glued = build_word(&target);
    let ok = matches!(&glued, Ok(f) if f.n() == 11 && f.descent_word(&order) == target);
    t.check(ok, || format!("D^3AD^4A gave {:?}", glued.map(|f| f.gaps().to_vec())));
    Ok(())
}

/// All permutations of `0..n` that preserve `colors`.
fn color_preserving(colors: &[u8]) -> Vec<Vec<usize>> {
    fn go(colors: &[u8], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let e = cur.len();
        if e == colors.len() {
            out.push(cur.clone());
            return;
        }
        for img in 0..colors.len() {
            if !used[img] && colors[img] == colors[e] {
                used[img] = true;
                cur.push(img);
                go(colors, cur, used, out);
                cur.pop();
                used[img] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(colors, &mut Vec::new(), &mut vec![false; colors.len()], &mut out);
    out
}

/// Orbit equality by brute force over `S_λ`.
pub fn orbit_equal_by_search(a: &ConcreteChain, b: &ConcreteChain) -> bool {
    a.colors == b.colors
        && a.levels.len() == b.levels.len()
        && color_preserving(&a.colors).iter().any(|p| a.permuted(p).levels == b.levels)
}

/// A uniformly random merge sequence restricted to `keep` (primal mask).
pub fn random_chain(shape: &Shape, keep: u32, rng: &mut impl Rng) -> ConcreteChain {
    let n = shape.n();
    let mut blocks: Vec<u32> = (0..n).map(|e| 1u32 << e).collect();
    let mut levels = Vec::new();
    for rank in 1..n.saturating_sub(1) {
        let i = rng.gen_range(0..blocks.len());
        let mut j = rng.gen_range(0..blocks.len() - 1);
        if j >= i {
            j += 1;
        }
        let (bi, bj) = (blocks[i], blocks[j]);
        blocks.retain(|&x| x != bi && x != bj);
        blocks.push(bi | bj);
        if keep >> (rank - 1) & 1 == 1 {
            let mut l = blocks.clone();
            l.sort_unstable();
            levels.push(l);
        }
    }
    levels.reverse();
    ConcreteChain { colors: shape.colors(), levels }
}

fn oracles(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in scope.upto(8) {
        for shape in [Shape::full(n)?, Shape::hook(n)?] {
            let facets = facet_orbits(&shape)?;
            for s in RankSet::all(n, Basis::Primal) {
                let direct = faces_with_support(&shape, &s)?;
                let via = faces_from_facets(&facets, &s)?;
                t.check(direct == via, || format!("{shape} S={s}: {} direct vs {} from facets", direct.len(), via.len()));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in scope.upto(6) {
        let shapes = Shape::all(n)?;
        let mut equal = 0;
        for _ in 0..1000 {
            let shape = shapes.choose(&mut rng).expect("nonempty").clone();
            let keep = rng.gen_range(0..1u32 << (n - 2));
            let a = random_chain(&shape, keep, &mut rng);
            let b = if rng.gen_bool(0.5) {
                let perms = color_preserving(&a.colors);
                a.permuted(perms.choose(&mut rng).expect("identity"))
            } else {
                random_chain(&shape, keep, &mut rng)
            };
            let canon = ChainType::from_concrete(&shape, &a)? == ChainType::from_concrete(&shape, &b)?;
            let search = orbit_equal_by_search(&a, &b);
            equal += usize::from(search);
            t.check(canon == search, || format!("{shape} {:?} vs {:?}: canonical {canon}, search {search}", a.levels, b.levels));
        }
        t.check(equal > 0 && equal < 1000, || format!("n={n}: degenerate sample, {equal} equal pairs"));
    }
    Ok(())
}

fn lengthening(scope: Scope, t: &mut Tally) -> Result<()> {
    for n in 1..=8.min(scope.max_n) {
        for shape in Shape::all(n)? {
            t.check(verify_lengthening(&BlockOrder::LengthLex, &shape), || format!("length-lex fails on {shape}"));
            if let Ok(order) = BlockOrder::distinguished_for(&shape) {
                t.check(verify_lengthening(&order, &shape), || format!("distinguished fails on {shape}"));
            }
            if n >= 2 {
                let rev = verify_lengthening(&BlockOrder::reverse_length(), &shape);
                t.check(!rev, || format!("reverse-length accepted on {shape}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scope_passes() {
        let scope = Scope { max_n: 5 };
        for id in [1, 2, 3, 6, 7, 8, 9, 10, 11, 13] {
            let r = run(id, scope).unwrap();
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn search_oracle_sees_identity() {
        let shape = Shape::new(&[2, 1]).unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        let a = random_chain(&shape, 1, &mut rng);
        assert!(orbit_equal_by_search(&a, &a));
        assert_eq!(color_preserving(&shape.colors()).len(), 2);
    }
}
