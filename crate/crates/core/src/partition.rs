//! Lexicographic facet order, minimal new faces, and the interval
//! partitioning `Δ = ⊔ [G_j, F_j]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;

use crate::bars::{enumerate_facets, InsertionFacet};
use crate::chain::{Basis, ChainType, RankSet};
use crate::enumerate::total_face_orbits;
use crate::error::{Error, Result};
use crate::order::{verify_lengthening, BlockOrder};
use crate::shape::Shape;

type Key = (Shape, String);

static ORDERED: Lazy<Mutex<HashMap<Key, Arc<Vec<InsertionFacet>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static INDEX: Lazy<Mutex<HashMap<Key, Arc<FaceIndex>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Facets sorted by their cover-label sequences. Refuses orders that fail
/// the lengthening condition.
pub fn order_facets(shape: &Shape, order: &BlockOrder) -> Result<Vec<InsertionFacet>> {
    if !verify_lengthening(order, shape) {
        return Err(Error::LengtheningFailed(shape.to_string()));
    }
    let facets = enumerate_facets(shape, order)?;
    let mut keyed: Vec<_> = facets.into_iter().map(|f| (f.cover_labels(), f)).collect();
    let cmp = |a: &Vec<crate::bars::CoverLabel>, b: &Vec<crate::bars::CoverLabel>| {
        for (x, y) in a.iter().zip(b) {
            let c = x.compare(y, order);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    };
    keyed.sort_by(|a, b| cmp(&a.0, &b.0));
    for w in keyed.windows(2) {
        if cmp(&w[0].0, &w[1].0) == Ordering::Equal {
            return Err(Error::LabelTie(format!("{:?}", w[0].1.gaps()), format!("{:?}", w[1].1.gaps())));
        }
    }
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}

/// Memoized [`order_facets`].
pub fn ordered_facets(shape: &Shape, order: &BlockOrder) -> Result<Arc<Vec<InsertionFacet>>> {
    let key = (shape.clone(), order.name());
    if let Some(v) = ORDERED.lock().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(order_facets(shape, order)?);
    ORDERED.lock().expect("memo lock").insert(key, v.clone());
    Ok(v)
}

/// For every face orbit, the index of the first facet containing it.
pub struct FaceIndex {
    pub facets: Arc<Vec<InsertionFacet>>,
    pub types: Vec<ChainType>,
    pub first: HashMap<ChainType, usize>,
}

impl FaceIndex {
    pub fn build(facets: Arc<Vec<InsertionFacet>>) -> Self {
        let types: Vec<ChainType> = facets.iter().map(|f| f.chain_type()).collect();
        let top = types.first().map_or(0, |t| t.n().saturating_sub(2));
        let mut first = HashMap::new();
        for (j, t) in types.iter().enumerate() {
            for mask in 0..(1u32 << top) {
                first.entry(t.restrict_mask(mask)).or_insert(j);
            }
        }
        FaceIndex { facets, types, first }
    }

    pub fn first_facet(&self, c: &ChainType) -> Option<usize> {
        self.first.get(c).copied()
    }
}

/// Memoized face index for `(shape, order)`.
pub fn face_index(shape: &Shape, order: &BlockOrder) -> Result<Arc<FaceIndex>> {
    let key = (shape.clone(), order.name());
    if let Some(v) = INDEX.lock().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(FaceIndex::build(ordered_facets(shape, order)?));
    INDEX.lock().expect("memo lock").insert(key, v.clone());
    Ok(v)
}

fn primal_to_dual_mask(mask: u32, n: usize) -> u32 {
    (1..=n.saturating_sub(2)).filter(|r| mask >> (r - 1) & 1 == 1).fold(0, |m, r| m | 1 << (n - 1 - r - 1))
}

fn mask_ranks(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// A facet order together with each facet's minimal new face.
#[derive(Clone)]
pub struct PartitionScheme {
    pub shape: Shape,
    pub order: BlockOrder,
    pub index: Arc<FaceIndex>,
    pub minimal: Vec<MinimalFace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalFace {
    /// Support of G in Π_n ranks (bitmask), from the codimension-one rule.
    pub support: u32,
    /// Support masks of every face first appearing in this facet.
    pub new_faces: Vec<u32>,
    /// True when the new faces are exactly the faces containing `G`.
    pub unique_minimal: bool,
}

impl MinimalFace {
    pub fn dual_support(&self, n: usize) -> RankSet {
        RankSet::new(n, &mask_ranks(primal_to_dual_mask(self.support, n)), Basis::Dual).expect("in range")
    }
}

pub fn build_scheme(shape: &Shape, order: &BlockOrder) -> Result<PartitionScheme> {
    let index = face_index(shape, order)?;
    let minimal = minimal_new_faces(&index);
    Ok(PartitionScheme { shape: shape.clone(), order: order.clone(), index, minimal })
}

/// `G_j = {r : dropping r from F_j gives a face of an earlier facet}`, checked
/// against the set of faces that first appear in `F_j`.
pub fn minimal_new_faces(index: &FaceIndex) -> Vec<MinimalFace> {
    let n = index.types.first().map_or(0, |t| t.n());
    let top = n.saturating_sub(2);
    let full = (1u32 << top) - 1;
    index
        .types
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let support = (0..top)
                .filter(|&b| index.first[&f.restrict_mask(full & !(1 << b))] < j)
                .fold(0u32, |m, b| m | 1 << b);
            let new_faces: Vec<u32> = (0..=full).filter(|&m| index.first[&f.restrict_mask(m)] == j).collect();
            let expected = 1usize << (top - support.count_ones() as usize);
            let unique_minimal = new_faces.len() == expected && new_faces.iter().all(|&m| m & support == support);
            MinimalFace { support, new_faces, unique_minimal }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetReport {
    pub index: usize,
    pub insertions: Vec<usize>,
    pub diagram: String,
    pub facet: String,
    pub minimal_face: String,
    /// Dual ranks.
    pub minimal_support: Vec<usize>,
    pub descent_word: String,
    pub descents: Vec<usize>,
    pub non_equal: bool,
    pub nontrivial_non_equal: bool,
    pub unique_minimal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub facet_index: usize,
    pub insertions: Vec<usize>,
    /// Dual supports of the faces first appearing in this facet.
    pub new_faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub n: usize,
    pub lambda: Vec<usize>,
    pub order: String,
    pub facets: usize,
    pub face_orbits: u64,
    pub interval_sum: u64,
    pub verified: bool,
    pub witnesses: Vec<Witness>,
    /// Dual support → number of facets with that minimal-face support.
    pub h_via_partitioning: BTreeMap<String, u64>,
    #[serde(skip)]
    pub h_map: BTreeMap<Vec<usize>, u64>,
    pub per_facet: Vec<FacetReport>,
}

/// Checks that the intervals `[G_j, F_j]` are disjoint and cover every face orbit.
pub fn verify_partitioning(scheme: &PartitionScheme) -> Result<PartitionReport> {
    let n = scheme.shape.n();
    let top = n.saturating_sub(2);
    let total = total_face_orbits(&scheme.shape)?;
    let mut witnesses = Vec::new();
    let mut interval_sum = 0u64;
    let mut h_map: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut per_facet = Vec::new();
    for (j, (m, f)) in scheme.minimal.iter().zip(scheme.index.facets.iter()).enumerate() {
        let ty = &scheme.index.types[j];
        interval_sum += 1u64 << (top - m.support.count_ones() as usize);
        let g = m.dual_support(n);
        *h_map.entry(g.ranks().to_vec()).or_default() += 1;
        if !m.unique_minimal {
            witnesses.push(Witness {
                facet_index: j,
                insertions: f.gaps().to_vec(),
                new_faces: m.new_faces.iter().map(|&x| mask_ranks(primal_to_dual_mask(x, n))).collect(),
            });
        }
        let d = f.descent_set(&scheme.order);
        let pair = f.largest_equal_pair();
        per_facet.push(FacetReport {
            index: j,
            insertions: f.gaps().to_vec(),
            diagram: if scheme.shape.letters() == 1 { f.render() } else { f.render_letters() },
            facet: ty.serialize(),
            minimal_face: ty.restrict_mask(m.support).serialize(),
            minimal_support: g.ranks().to_vec(),
            descent_word: f.descent_word(&scheme.order).to_string(),
            descents: d.ranks().to_vec(),
            non_equal: pair < 2,
            nontrivial_non_equal: pair < 3,
            unique_minimal: m.unique_minimal,
        });
    }
    let covered = scheme.index.first.len() as u64;
    let verified = witnesses.is_empty() && interval_sum == total && covered == total;
    Ok(PartitionReport {
        n,
        lambda: scheme.shape.parts(),
        order: scheme.order.name(),
        facets: scheme.index.facets.len(),
        face_orbits: total,
        interval_sum,
        verified,
        witnesses,
        h_via_partitioning: h_map.iter().map(|(k, v)| (format!("{k:?}"), *v)).collect(),
        h_map,
        per_facet,
    })
}
