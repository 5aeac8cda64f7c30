//! Flag f- and h-vectors of `Δ(Π_n)/S_λ`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::bars::enumerate_facets;
use crate::chain::{Basis, ChainType, RankSet};
use crate::error::{Error, Result};
use crate::order::BlockOrder;
use crate::shape::Shape;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagEntry {
    /// Π_n ranks.
    #[serde(rename = "S")]
    pub ranks: Vec<usize>,
    pub f: u64,
    pub h: i64,
}

/// Flag f and h for every `S ⊆ [1, n−2]`, in Π_n ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagTable {
    shape: Shape,
    /// Indexed by the bitmask of `S` (bit `r−1` for rank `r`).
    f: Vec<u64>,
    h: Vec<i64>,
}

impl FlagTable {
    /// Builds the table from face counts indexed by rank mask.
    pub fn from_f(shape: &Shape, f: Vec<u64>) -> Result<Self> {
        let top = shape.n().saturating_sub(2);
        if f.len() != 1 << top {
            return Err(Error::Domain(format!("{} counts for {} rank sets", f.len(), 1u64 << top)));
        }
        let mut h = vec![0i64; f.len()];
        for (s, hs) in h.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            let mut t = s;
            loop {
                let ft = i64::try_from(f[t]).map_err(|_| Error::Overflow("converting f".into()))?;
                let sign = if (s ^ t).count_ones() % 2 == 0 { 1 } else { -1 };
                acc = acc.checked_add(sign * ft).ok_or_else(|| Error::Overflow("summing h".into()))?;
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            *hs = acc;
        }
        Ok(FlagTable { shape: shape.clone(), f, h })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    fn index(&self, s: &RankSet) -> Result<usize> {
        if s.n() != self.n() {
            return Err(Error::InvalidRankSet(format!("rank set for n = {} used with n = {}", s.n(), self.n())));
        }
        Ok(s.to_primal().mask() as usize)
    }

    pub fn f(&self, s: &RankSet) -> Result<u64> {
        Ok(self.f[self.index(s)?])
    }

    pub fn h(&self, s: &RankSet) -> Result<i64> {
        Ok(self.h[self.index(s)?])
    }

    pub fn entries(&self) -> Vec<FlagEntry> {
        RankSet::all(self.n(), Basis::Primal)
            .into_iter()
            .map(|s| {
                let i = s.mask() as usize;
                FlagEntry { ranks: s.ranks().to_vec(), f: self.f[i], h: self.h[i] }
            })
            .collect()
    }

    /// `f_S = Σ_{T⊆S} h_T` for every `S`.
    pub fn check_inversion(&self) -> bool {
        (0..self.f.len()).all(|s| {
            let mut acc = 0i64;
            let mut t = s;
            loop {
                acc += self.h[t];
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
            acc == self.f[s] as i64
        })
    }

    /// Total number of face orbits, empty face included.
    pub fn total_faces(&self) -> u64 {
        self.f.iter().sum()
    }
}

static FACETS: Lazy<Mutex<HashMap<Shape, Arc<Vec<ChainType>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static TABLES: Lazy<Mutex<HashMap<Shape, Arc<FlagTable>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Maximal chain orbits of `Δ(Π_n)/S_λ`, canonically sorted. Memoized.
pub fn facet_orbits(shape: &Shape) -> Result<Arc<Vec<ChainType>>> {
    if let Some(v) = FACETS.lock().expect("memo lock").get(shape) {
        return Ok(v.clone());
    }
    let mut v: Vec<ChainType> = enumerate_facets(shape, &BlockOrder::LengthLex)?.iter().map(|f| f.chain_type()).collect();
    v.sort();
    let v = Arc::new(v);
    FACETS.lock().expect("memo lock").insert(shape.clone(), v.clone());
    Ok(v)
}

/// Installs a facet list (e.g. read from the on-disk cache) into the memo.
pub fn seed_facet_orbits(shape: &Shape, facets: Vec<ChainType>) {
    FACETS.lock().expect("memo lock").insert(shape.clone(), Arc::new(facets));
}

/// Whether the facet list for `shape` is already memoized.
pub fn facets_memoized(shape: &Shape) -> bool {
    FACETS.lock().expect("memo lock").contains_key(shape)
}

/// Flag table from a facet list: `f_S` is the number of distinct restrictions.
pub fn table_from_facets(shape: &Shape, facets: &[ChainType]) -> Result<FlagTable> {
    let top = shape.n().saturating_sub(2);
    let mut seen: Vec<HashSet<ChainType>> = vec![HashSet::new(); 1 << top];
    for c in facets {
        for (mask, set) in seen.iter_mut().enumerate() {
            set.insert(c.restrict_mask(mask as u32));
        }
    }
    FlagTable::from_f(shape, seen.iter().map(|s| s.len() as u64).collect())
}

/// The full table for `shape`. Memoized.
pub fn full_table(shape: &Shape) -> Result<Arc<FlagTable>> {
    if let Some(t) = TABLES.lock().expect("memo lock").get(shape) {
        return Ok(t.clone());
    }
    let facets = facet_orbits(shape)?;
    let t = Arc::new(table_from_facets(shape, &facets)?);
    TABLES.lock().expect("memo lock").insert(shape.clone(), t.clone());
    Ok(t)
}

pub fn flag_f(shape: &Shape, s: &RankSet) -> Result<u64> {
    full_table(shape)?.f(s)
}

pub fn flag_h(shape: &Shape, s: &RankSet) -> Result<i64> {
    full_table(shape)?.h(s)
}

/// `b_S(n)`: the trivial multiplicity for `S_n`. `ranks` are Π_n ranks.
pub fn b(n: usize, ranks: &[usize]) -> Result<i64> {
    flag_h(&Shape::full(n)?, &RankSet::primal(n, ranks)?)
}

/// `b'_S(n)`: the trivial multiplicity for `S_{n−1} × S_1`.
pub fn b_prime(n: usize, ranks: &[usize]) -> Result<i64> {
    flag_h(&Shape::hook(n)?, &RankSet::primal(n, ranks)?)
}

/// `b_S(n) = b_S(m)`, asserted only for `n, m > 2 max(S)`.
pub fn check_stability(ranks: &[usize], n: usize, m: usize) -> Result<bool> {
    let top = ranks.iter().copied().max().unwrap_or(0);
    if n <= 2 * top || m <= 2 * top {
        return Err(Error::Domain(format!("stability needs n, m > {}", 2 * top)));
    }
    Ok(b(n, ranks)? == b(m, ranks)?)
}

/// Reduced Euler characteristic of the rank-selected quotient,
/// `−1 + Σ_{∅≠T⊆S} (−1)^{|T|−1} f_T`. Equals `(−1)^{|S|−1} h_S`.
pub fn reduced_euler(shape: &Shape, s: &RankSet) -> Result<i64> {
    let t = full_table(shape)?;
    let mut acc = -1i64;
    for sub in s.to_primal().subsets() {
        if sub.is_empty() {
            continue;
        }
        let sign = if sub.len() % 2 == 1 { 1 } else { -1 };
        acc += sign * t.f(&sub)? as i64;
    }
    Ok(acc)
}
