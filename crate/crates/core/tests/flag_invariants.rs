use rsl::chain::Basis;
use rsl::flag::{b, b_prime, check_stability, full_table, reduced_euler};
use rsl::{Error, RankSet, Shape};

#[test]
fn h_sums_to_facet_count() {
    for n in 4..=7 {
        for shape in [Shape::full(n).unwrap(), Shape::hook(n).unwrap(), Shape::new(&[n - 2, 2]).unwrap()] {
            let t = full_table(&shape).unwrap();
            assert!(t.check_inversion());
            let full = RankSet::full(n, Basis::Primal);
            let sum: i64 = RankSet::all(n, Basis::Primal).iter().map(|s| t.h(s).unwrap()).sum();
            assert_eq!(sum, t.f(&full).unwrap() as i64, "{shape}");
            assert_eq!(t.f(&RankSet::empty(n, Basis::Primal)).unwrap(), 1);
        }
    }
}

#[test]
fn f_is_monotone_under_inclusion() {
    let t = full_table(&Shape::full(7).unwrap()).unwrap();
    for s in RankSet::all(7, Basis::Primal) {
        for sub in s.subsets() {
            assert!(t.f(&sub).unwrap() <= t.f(&s).unwrap(), "{sub} in {s}");
        }
    }
}

#[test]
fn single_rank_h_counts_integer_partitions() {
    fn p(n: usize, k: usize) -> i64 {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) => 0,
            _ if n < k => 0,
            _ => p(n - 1, k - 1) + p(n - k, k),
        }
    }
    for n in 3..=9 {
        for r in 1..=n - 2 {
            assert_eq!(b(n, &[r]).unwrap(), p(n, n - r) - 1, "n={n} r={r}");
        }
    }
}

#[test]
fn unquotiented_top_h_is_mobius() {
    for n in 3..=6usize {
        let t = full_table(&Shape::trivial(n).unwrap()).unwrap();
        let top = t.h(&RankSet::full(n, Basis::Primal)).unwrap();
        assert_eq!(top, (1..n as i64).product::<i64>(), "n = {n}");
    }
}

#[test]
fn euler_characteristic_matches_h() {
    let shape = Shape::full(7).unwrap();
    let t = full_table(&shape).unwrap();
    for s in RankSet::all(7, Basis::Primal) {
        let sign = if s.len() % 2 == 1 { 1 } else { -1 };
        assert_eq!(reduced_euler(&shape, &s).unwrap(), sign * t.h(&s).unwrap(), "{s}");
    }
}

#[test]
fn dual_lookup_is_consistent() {
    let t = full_table(&Shape::full(6).unwrap()).unwrap();
    for s in RankSet::all(6, Basis::Primal) {
        assert_eq!(t.h(&s).unwrap(), t.h(&s.to_dual()).unwrap());
    }
}

#[test]
fn small_values() {
    assert_eq!(b(4, &[2]).unwrap(), 1);
    assert_eq!(b_prime(6, &[1, 2]).unwrap(), 1);
    assert_eq!(b(6, &[1, 2, 3, 4]).unwrap(), 0);
    assert!(check_stability(&[2], 5, 6).unwrap());
    assert!(matches!(check_stability(&[3], 6, 7), Err(Error::Domain(_))));
    assert!(matches!(b(5, &[4]), Err(Error::InvalidRankSet(_))));
}

#[test]
fn full_shape_h_is_nonnegative_and_inverts() {
    for n in 3..=8 {
        for shape in [Shape::full(n).unwrap(), Shape::hook(n).unwrap()] {
            let t = full_table(&shape).unwrap();
            assert!(t.check_inversion(), "{shape}");
            if shape.letters() == 1 {
                assert!(t.entries().iter().all(|e| e.h >= 0), "{shape}");
            }
        }
    }
}

/// Set partitions of `0..n` as sorted block masks.
fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::<u32>::new()];
    for e in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i] |= 1 << e;
                next.push(q);
            }
            let mut q = p.clone();
            q.push(1 << e);
            next.push(q);
        }
        out = next;
    }
    for p in &mut out {
        p.sort_unstable();
    }
    out
}

fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    fine.iter().all(|b| coarse.iter().any(|c| b & !c == 0))
}

#[test]
fn unquotiented_table_counts_chains() {
    for n in 3..=5 {
        let parts = set_partitions(n);
        let t = full_table(&Shape::trivial(n).unwrap()).unwrap();
        for s in RankSet::all(n, Basis::Primal) {
            // chains with one partition at each rank of S, finest first
            let mut layers: Vec<Vec<&Vec<u32>>> = Vec::new();
            for &r in s.ranks() {
                layers.push(parts.iter().filter(|p| p.len() == n - r).collect());
            }
            let mut counts: Vec<u64> = vec![1; layers.first().map_or(0, |l| l.len())];
            for k in 1..layers.len() {
                counts = layers[k]
                    .iter()
                    .map(|c| layers[k - 1].iter().zip(&counts).filter(|(f, _)| refines(f, c)).map(|(_, x)| x).sum())
                    .collect();
            }
            let total = if s.is_empty() { 1 } else { counts.iter().sum() };
            assert_eq!(t.f(&s).unwrap(), total, "n={n} S={s}");
        }
    }
}
