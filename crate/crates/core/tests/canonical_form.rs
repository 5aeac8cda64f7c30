use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use rsl::acceptance::{orbit_equal_by_search, random_chain};
use rsl::chain::ConcreteChain;
use rsl::{ChainType, Shape};

fn shape_for(n: usize, pick: usize) -> Shape {
    let all = Shape::all(n).unwrap();
    all[pick % all.len()].clone()
}

/// A random element of `S_λ` for the given colors.
fn color_perm(colors: &[u8], rng: &mut StdRng) -> Vec<usize> {
    let mut perm = vec![0; colors.len()];
    for c in 0..=colors.iter().copied().max().unwrap_or(0) {
        let idx: Vec<usize> = (0..colors.len()).filter(|&e| colors[e] == c).collect();
        let mut img = idx.clone();
        img.shuffle(rng);
        for (a, b) in idx.into_iter().zip(img) {
            perm[a] = b;
        }
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_invariant(n in 3usize..=7, pick in 0usize..20, keep in 0u32..32, seed in any::<u64>()) {
        let shape = shape_for(n, pick);
        let mut rng = StdRng::seed_from_u64(seed);
        let keep = keep & ((1 << (n - 2)) - 1);
        let a = random_chain(&shape, keep, &mut rng);
        let b = a.permuted(&color_perm(&a.colors, &mut rng));
        prop_assert_eq!(ChainType::from_concrete(&shape, &a).unwrap(), ChainType::from_concrete(&shape, &b).unwrap());
    }

    #[test]
    fn canonical_form_agrees_with_search(n in 3usize..=6, pick in 0usize..20, keep in 0u32..16, seed in any::<u64>()) {
        let shape = shape_for(n, pick);
        let mut rng = StdRng::seed_from_u64(seed);
        let keep = keep & ((1 << (n - 2)) - 1);
        let a = random_chain(&shape, keep, &mut rng);
        let b = random_chain(&shape, keep, &mut rng);
        let canon = ChainType::from_concrete(&shape, &a).unwrap() == ChainType::from_concrete(&shape, &b).unwrap();
        prop_assert_eq!(canon, orbit_equal_by_search(&a, &b));
    }

    #[test]
    fn serialization_round_trips(n in 2usize..=8, pick in 0usize..30, keep in 0u32..64, seed in any::<u64>()) {
        let shape = shape_for(n, pick);
        let mut rng = StdRng::seed_from_u64(seed);
        let keep = keep & ((1u32 << n.saturating_sub(2)) - 1);
        let c = ChainType::from_concrete(&shape, &random_chain(&shape, keep, &mut rng)).unwrap();
        c.check_invariants().unwrap();
        let text = c.serialize();
        prop_assert_eq!(ChainType::parse(&shape, &text).unwrap(), c.clone());
        let rep = c.representative();
        prop_assert_eq!(ChainType::from_concrete(&shape, &rep).unwrap(), c);
    }
}

#[test]
fn representative_levels_match_support() {
    let shape = Shape::new(&[3, 2]).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let a: ConcreteChain = random_chain(&shape, 0b101, &mut rng);
    assert_eq!(a.ranks(), vec![3, 1]);
    let c = ChainType::from_concrete(&shape, &a).unwrap();
    assert_eq!(c.ranks(), &[1, 3]);
}
