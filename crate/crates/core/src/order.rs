//! Block orders on contents, and the lengthening condition `B ≤ B' ⇒ B ≤ BB'`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shape::{BlockContent, Shape};

type CmpFn = dyn Fn(&BlockContent, &BlockContent) -> Ordering + Send + Sync;

/// A user-supplied comparator. The name keys caches, so distinct comparators
/// should carry distinct names.
#[derive(Clone)]
pub struct CustomOrder {
    name: String,
    cmp: Arc<CmpFn>,
}

impl CustomOrder {
    pub fn new(name: impl Into<String>, cmp: impl Fn(&BlockContent, &BlockContent) -> Ordering + Send + Sync + 'static) -> Self {
        CustomOrder { name: name.into(), cmp: Arc::new(cmp) }
    }
}

impl fmt::Debug for CustomOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomOrder({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub enum BlockOrder {
    /// Size first, then the sorted letter word lexicographically.
    LengthLex,
    /// Blocks containing `letter` come first; otherwise length-lex.
    Distinguished { letter: u8 },
    Custom(CustomOrder),
}

impl PartialEq for BlockOrder {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}

impl Eq for BlockOrder {}

/// Length-lex comparison. `word()` is the weakly increasing letter sequence.
fn length_lex(a: &BlockContent, b: &BlockContent) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| a.word().cmp(&b.word()))
}

impl BlockOrder {
    /// The distinguished order for a shape whose last letter has multiplicity one.
    pub fn distinguished_for(shape: &Shape) -> Result<Self> {
        let last = shape.letters() - 1;
        if shape.multiplicity(last) != 1 || shape.letters() < 2 {
            return Err(Error::BlockOrder(format!("shape {shape} has no distinguished letter")));
        }
        Ok(BlockOrder::Distinguished { letter: last as u8 })
    }

    /// Larger blocks first: violates the lengthening condition.
    pub fn reverse_length() -> Self {
        BlockOrder::Custom(CustomOrder::new("reverse-length", |a, b| length_lex(b, a)))
    }

    pub fn name(&self) -> String {
        match self {
            BlockOrder::LengthLex => "length-lex".into(),
            BlockOrder::Distinguished { letter } => format!("distinguished-{letter}"),
            BlockOrder::Custom(c) => format!("custom-{}", c.name),
        }
    }

    /// Compares two blocks that can coexist in one partition.
    pub fn compare(&self, a: &BlockContent, b: &BlockContent) -> Result<Ordering> {
        if let BlockOrder::Distinguished { letter } = self {
            let s = *letter as usize;
            if a.contains(s) && b.contains(s) {
                return Err(Error::Domain(format!(
                    "distinguished order cannot compare {a} and {b}: both contain the distinguished letter"
                )));
            }
        }
        Ok(self.compare_total(a, b))
    }

    /// Total extension of [`BlockOrder::compare`] used when comparing labels of
    /// different facets, where two contents holding the distinguished letter can
    /// meet. Such pairs fall back to length-lex.
    pub fn compare_total(&self, a: &BlockContent, b: &BlockContent) -> Ordering {
        match self {
            BlockOrder::LengthLex => length_lex(a, b),
            BlockOrder::Distinguished { letter } => {
                let s = *letter as usize;
                match (a.contains(s), b.contains(s)) {
                    (true, false) => Ordering::Less,
                    (false, true) => Ordering::Greater,
                    _ => length_lex(a, b),
                }
            }
            BlockOrder::Custom(c) => (c.cmp)(a, b),
        }
    }

    /// Whether this order is usable for `shape`.
    pub fn check_shape(&self, shape: &Shape) -> Result<()> {
        if let BlockOrder::Distinguished { letter } = self {
            if shape.multiplicity(*letter as usize) != 1 {
                return Err(Error::BlockOrder(format!("letter {letter} does not have multiplicity one in {shape}")));
            }
        }
        Ok(())
    }
}

/// Checks `B ≤ B' ⇒ B ≤ BB'` for every pair of disjoint blocks realizable in `shape`.
pub fn verify_lengthening(order: &BlockOrder, shape: &Shape) -> bool {
    if order.check_shape(shape).is_err() {
        return false;
    }
    let whole = shape.whole();
    let contents = shape.realizable_contents();
    for a in &contents {
        for b in &contents {
            let ab = a.concat(b);
            if !ab.fits_in(&whole) {
                continue;
            }
            if order.compare_total(a, b) != Ordering::Greater && order.compare_total(a, &ab) == Ordering::Greater {
                return false;
            }
        }
    }
    true
}

/// Antisymmetry, totality and transitivity on all realizable contents.
pub fn is_total_order(order: &BlockOrder, shape: &Shape) -> bool {
    let c = shape.realizable_contents();
    for a in &c {
        for b in &c {
            let ab = order.compare_total(a, b);
            if ab != order.compare_total(b, a).reverse() || (ab == Ordering::Equal) != (a == b) {
                return false;
            }
            for d in &c {
                if ab != Ordering::Greater
                    && order.compare_total(b, d) != Ordering::Greater
                    && order.compare_total(a, d) == Ordering::Greater
                {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u8]) -> BlockContent {
        BlockContent::new(v.to_vec())
    }

    #[test]
    fn length_lex_examples() {
        let o = BlockOrder::LengthLex;
        assert_eq!(o.compare(&c(&[2, 0]), &c(&[1, 1])).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&c(&[0, 3]), &c(&[2, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn distinguished_examples() {
        let o = BlockOrder::Distinguished { letter: 1 };
        assert_eq!(o.compare(&c(&[0, 1]), &c(&[2, 0])).unwrap(), Ordering::Less);
        assert!(o.compare(&c(&[1, 1]), &c(&[0, 1])).is_err());
    }

    #[test]
    fn lengthening() {
        for n in 2..=8 {
            let s = Shape::full(n).unwrap();
            assert!(verify_lengthening(&BlockOrder::LengthLex, &s));
            let h = Shape::hook(n).unwrap();
            assert!(verify_lengthening(&BlockOrder::distinguished_for(&h).unwrap(), &h));
        }
        assert!(!verify_lengthening(&BlockOrder::reverse_length(), &Shape::full(4).unwrap()));
    }

    #[test]
    fn totality() {
        let s = Shape::new(&[3, 2, 1]).unwrap();
        assert!(is_total_order(&BlockOrder::LengthLex, &s));
        assert!(is_total_order(&BlockOrder::Distinguished { letter: 2 }, &s));
    }
}
