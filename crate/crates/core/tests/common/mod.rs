//! Brute-force oracles that work from morphism labels alone, without
//! consulting any table the library computed.
#![allow(dead_code)]

use std::collections::BTreeSet;

use parcat_core::{FinCategory, MorId};

pub type Map = Vec<Option<usize>>;

/// Parse a partial map written as `[0,-,1]`.
pub fn parse_map(s: &str) -> Map {
    let inner = s.trim_start_matches('[').trim_end_matches(']');
    if inner.is_empty() {
        return Vec::new();
    }
    inner
        .split(',')
        .map(|x| {
            if x == "-" {
                None
            } else {
                Some(x.parse().unwrap())
            }
        })
        .collect()
}

/// The partial map in a label such as `A->B[0,-]` or `[1,0]`.
pub fn map_of(c: &FinCategory, f: MorId) -> Map {
    let label = c.label(f);
    let start = label.find('[').expect("label carries a map");
    parse_map(&label[start..])
}

/// Diagrammatic composite: first `f`, then `g`.
pub fn then(f: &Map, g: &Map) -> Map {
    f.iter().map(|x| x.and_then(|i| g[i])).collect()
}

pub fn domain(f: &Map) -> Map {
    f.iter().enumerate().map(|(i, x)| x.map(|_| i)).collect()
}

pub fn is_injective(f: &Map) -> bool {
    let image: Vec<usize> = f.iter().flatten().copied().collect();
    image.iter().collect::<BTreeSet<_>>().len() == image.len()
}

pub fn agree(f: &Map, g: &Map) -> bool {
    f.iter()
        .zip(g)
        .all(|(x, y)| x.is_none() || y.is_none() || x == y)
}

/// Pointwise union of pairwise agreeing maps on a domain of size `n`.
pub fn union(n: usize, family: &[Map]) -> Map {
    (0..n).map(|i| family.iter().find_map(|f| f[i])).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Every subset of `items`, smallest first.
pub fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}
