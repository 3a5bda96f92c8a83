//! Markov triples `x² + y² + z² = 3xyz`, the Markov tree, and the
//! uniqueness scan on the arithmetic side.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("({x}, {y}, {z}) is not a Markov triple")]
    NotATriple { x: BigUint, y: BigUint, z: BigUint },
}

/// A positive solution of `x² + y² + z² = 3xyz`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple {
    x: BigUint,
    y: BigUint,
    z: BigUint,
}

pub fn is_markov_triple(x: &BigUint, y: &BigUint, z: &BigUint) -> bool {
    let lhs = x * x + y * y + z * z;
    let rhs = x * y * z * 3u32;
    lhs == rhs
}

impl MarkovTriple {
    pub fn new(x: BigUint, y: BigUint, z: BigUint) -> Result<Self, MarkovError> {
        if !is_markov_triple(&x, &y, &z) {
            return Err(MarkovError::NotATriple { x, y, z });
        }
        let mut v = [x, y, z];
        v.sort();
        let [x, y, z] = v;
        Ok(MarkovTriple { x, y, z })
    }

    pub fn root() -> Self {
        MarkovTriple {
            x: BigUint::one(),
            y: BigUint::one(),
            z: BigUint::one(),
        }
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    /// The largest coordinate, the Markov number of the triple.
    pub fn z(&self) -> &BigUint {
        &self.z
    }

    /// The three Vieta neighbours, replacing `x`, `y`, `z` in turn by
    /// `3·(product of the other two) − itself`.
    pub fn children(&self) -> [MarkovTriple; 3] {
        let flip = |c: &BigUint, p: &BigUint, q: &BigUint| p * q * 3u32 - c;
        let make = |a: BigUint, b: BigUint, c: BigUint| {
            MarkovTriple::new(a, b, c).expect("Vieta involution preserves the equation")
        };
        [
            make(flip(&self.x, &self.y, &self.z), self.y.clone(), self.z.clone()),
            make(self.x.clone(), flip(&self.y, &self.x, &self.z), self.z.clone()),
            make(self.x.clone(), self.y.clone(), flip(&self.z, &self.x, &self.y)),
        ]
    }

    /// The neighbour with smaller maximum; `None` only at (1,1,1).
    pub fn parent(&self) -> Option<MarkovTriple> {
        let [.., down] = self.children();
        (down.z < self.z).then_some(down)
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// All triples with largest coordinate `<= bound`, sorted, by breadth-first
/// expansion of the tree from (1,1,1).
pub fn markov_triples(bound: &BigUint) -> Vec<MarkovTriple> {
    let mut seen = BTreeSet::new();
    let root = MarkovTriple::root();
    if root.z > *bound {
        return Vec::new();
    }
    let mut queue = VecDeque::from([root.clone()]);
    seen.insert(root);
    while let Some(t) = queue.pop_front() {
        for child in t.children() {
            if child.z <= t.z {
                continue;
            }
            // Every larger neighbour has `t` as its unique parent, so the
            // maximum grows along each branch and pruning loses nothing.
            debug_assert_eq!(child.parent().as_ref(), Some(&t));
            if child.z <= *bound && seen.insert(child.clone()) {
                queue.push_back(child);
            }
        }
    }
    seen.into_iter().collect()
}

/// Distinct Markov numbers `<= bound`, ascending.
pub fn markov_numbers(bound: &BigUint) -> Vec<BigUint> {
    let numbers: BTreeSet<BigUint> = markov_triples(bound).into_iter().map(|t| t.z).collect();
    numbers.into_iter().collect()
}

/// Two or more distinct triples with the same Markov number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub markov_number: BigUint,
    pub triples: Vec<MarkovTriple>,
}

/// Every Markov number `<= bound` carried by more than one triple.
pub fn uniqueness_scan(bound: &BigUint) -> Vec<Collision> {
    let mut by_max: BTreeMap<BigUint, Vec<MarkovTriple>> = BTreeMap::new();
    for t in markov_triples(bound) {
        by_max.entry(t.z.clone()).or_default().push(t);
    }
    by_max
        .into_iter()
        .filter(|(_, ts)| ts.len() > 1)
        .map(|(markov_number, triples)| Collision { markov_number, triples })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn t(x: u64, y: u64, z: u64) -> MarkovTriple {
        MarkovTriple::new(b(x), b(y), b(z)).unwrap()
    }

    #[test]
    fn triple_predicate() {
        assert!(is_markov_triple(&b(1), &b(1), &b(1)));
        assert!(is_markov_triple(&b(1), &b(2), &b(5)));
        assert!(!is_markov_triple(&b(1), &b(2), &b(3)));
        assert!(MarkovTriple::new(b(1), b(2), b(3)).is_err());
        assert_eq!(MarkovTriple::new(b(5), b(1), b(2)).unwrap(), t(1, 2, 5));
    }

    #[test]
    fn children_examples() {
        assert!(MarkovTriple::root().children().contains(&t(1, 1, 2)));
        assert!(t(1, 1, 2).children().contains(&t(1, 2, 5)));
        let c = t(1, 2, 5).children();
        assert!(c.contains(&t(2, 5, 29)));
        assert!(c.contains(&t(1, 5, 13)));
        assert!(c.contains(&t(1, 1, 2)));
    }

    #[test]
    fn numbers_examples() {
        let nums = |bound: u64| {
            markov_numbers(&b(bound))
                .into_iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        assert_eq!(nums(10), "1,2,5");
        assert_eq!(nums(1000), "1,2,5,13,29,34,89,169,194,233,433,610,985");
        assert_eq!(nums(1), "1");
        assert!(markov_numbers(&b(0)).is_empty());
    }

    #[test]
    fn uniqueness_examples() {
        assert!(uniqueness_scan(&b(1_000_000)).is_empty());
        assert!(uniqueness_scan(&b(5)).is_empty());
        assert!(uniqueness_scan(&b(1)).is_empty());
    }

    #[test]
    fn parents_are_unique_and_lead_to_the_root() {
        let triples = markov_triples(&b(10_000_000));
        let set: BTreeSet<_> = triples.iter().cloned().collect();
        for tr in &triples {
            assert!(is_markov_triple(tr.x(), tr.y(), tr.z()));
            if tr.z <= b(2) {
                continue;
            }
            let p = tr.parent().expect("non-root triples have a parent");
            assert!(set.contains(&p));
            let ups: Vec<_> = tr.children().into_iter().filter(|c| c.z < tr.z).collect();
            assert_eq!(ups.len(), 1, "{tr}");
        }
        assert_eq!(t(1, 1, 2).parent(), Some(MarkovTriple::root()));
        assert_eq!(MarkovTriple::root().parent(), None);
    }

    #[test]
    fn numbers_are_prefix_consistent() {
        let big = markov_numbers(&b(1_000_000));
        for bound in [1u64, 2, 30, 1000, 50_000] {
            let small = markov_numbers(&b(bound));
            let expected: Vec<_> = big.iter().filter(|v| **v <= b(bound)).cloned().collect();
            assert_eq!(small, expected);
        }
    }
}
