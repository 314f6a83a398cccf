//! Subsets of the positive roots closed under adding roots: validation,
//! upper closures, and exhaustive enumeration via antichains.

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// Subset of a root system's positive roots, as a bitmask over storage
/// indices.  Systems handled here have at most 120 positive roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSubset {
    mask: u128,
    len: usize,
}

impl RootSubset {
    pub fn empty(rs: &RootSystem) -> Self {
        RootSubset { mask: 0, len: rs.num_positive_roots() }
    }

    /// Empty set over the same universe as `other`.
    pub fn empty_like(other: &Self) -> Self {
        RootSubset { mask: 0, len: other.len }
    }

    pub fn full(rs: &RootSystem) -> Self {
        let len = rs.num_positive_roots();
        RootSubset { mask: ones(len), len }
    }

    pub fn from_indices(rs: &RootSystem, indices: &[usize]) -> Self {
        let len = rs.num_positive_roots();
        let mut mask = 0u128;
        for &i in indices {
            assert!(i < len, "root index out of range");
            mask |= 1 << i;
        }
        RootSubset { mask, len }
    }

    pub(crate) fn from_mask(mask: u128, len: usize) -> Self {
        debug_assert_eq!(mask & !ones(len), 0);
        RootSubset { mask, len }
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.mask >> i & 1 == 1
    }

    pub fn card(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len);
        self.mask |= 1 << i;
    }

    pub fn complement(&self) -> Self {
        RootSubset { mask: !self.mask & ones(self.len), len: self.len }
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        RootSubset { mask: self.mask | other.mask, len: self.len }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        RootSubset { mask: self.mask & other.mask, len: self.len }
    }

    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        RootSubset { mask: self.mask & !other.mask, len: self.len }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.len == other.len && self.mask & !other.mask == 0
    }

    /// Indices of the members, ascending (i.e. in (height, lex) root order).
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.len).filter(move |i| mask >> i & 1 == 1)
    }
}

fn ones(len: usize) -> u128 {
    if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

/// An ad-nilpotent ideal: a subset Φ ⊆ Δ⁺ closed under adding positive
/// roots, together with its antichain of minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdNilpotentIdeal {
    phi: RootSubset,
    generators: Vec<usize>,
}

impl AdNilpotentIdeal {
    pub fn phi(&self) -> &RootSubset {
        &self.phi
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The complement E = Δ⁺ ∖ Φ.
    pub fn complement(&self) -> RootSubset {
        self.phi.complement()
    }

    /// Canonical text encoding: semicolon-separated minimal generators in
    /// coordinate form, in (height, lex) order; empty string for Φ = ∅.
    pub fn key(&self, rs: &RootSystem) -> String {
        self.generators
            .iter()
            .map(|&g| rs.root(g).text())
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// True iff the subset is closed under addition of arbitrary positive roots.
pub fn is_ad_nilpotent_ideal(rs: &RootSystem, s: &RootSubset) -> bool {
    let n = rs.num_positive_roots();
    s.iter().all(|a| (0..n).all(|g| match rs.add_idx(a, g) {
        Some(k) => s.contains(k),
        None => true,
    }))
}

/// True iff the subset is an upper set for ≤ (the equivalent combinatorial
/// characterization of the ideal condition).
pub fn is_upper_set(rs: &RootSystem, s: &RootSubset) -> bool {
    let n = rs.num_positive_roots();
    s.iter().all(|a| (0..n).all(|b| !rs.leq_idx(a, b) || s.contains(b)))
}

/// Smallest ad-nilpotent ideal containing the given roots.
pub fn upper_closure(rs: &RootSystem, gens: &[usize]) -> AdNilpotentIdeal {
    let n = rs.num_positive_roots();
    let mut mask = 0u128;
    for b in 0..n {
        if gens.iter().any(|&g| rs.leq_idx(g, b)) {
            mask |= 1 << b;
        }
    }
    let phi = RootSubset::from_mask(mask, n);
    let generators = minimal_elements(rs, &phi);
    AdNilpotentIdeal { phi, generators }
}

fn minimal_elements(rs: &RootSystem, s: &RootSubset) -> Vec<usize> {
    s.iter()
        .filter(|&a| s.iter().all(|b| b == a || !rs.leq_idx(b, a)))
        .collect()
}

/// Every ad-nilpotent ideal exactly once, by depth-first search over
/// antichains of the root poset (each antichain maps to its upper closure).
pub fn enumerate_ideals(rs: &RootSystem) -> Vec<AdNilpotentIdeal> {
    let n = rs.num_positive_roots();
    let up_masks: Vec<u128> = (0..n)
        .map(|i| {
            let mut m = 0u128;
            for b in 0..n {
                if rs.leq_idx(i, b) {
                    m |= 1 << b;
                }
            }
            m
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        rs: &RootSystem,
        up_masks: &[u128],
        chosen: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<AdNilpotentIdeal>,
    ) {
        let n = rs.num_positive_roots();
        let mask = chosen.iter().fold(0u128, |m, &i| m | up_masks[i]);
        out.push(AdNilpotentIdeal {
            phi: RootSubset::from_mask(mask, n),
            generators: chosen.clone(),
        });
        for i in start..n {
            let incomparable =
                chosen.iter().all(|&j| !rs.leq_idx(i, j) && !rs.leq_idx(j, i));
            if incomparable {
                chosen.push(i);
                rec(rs, up_masks, chosen, i + 1, out);
                chosen.pop();
            }
        }
    }
    rec(rs, &up_masks, &mut chosen, 0, &mut out);
    out
}

/// Parses the ideal grammar `gen (";" gen)*`; the empty string denotes Φ = ∅.
pub fn parse_ideal(rs: &RootSystem, text: &str) -> Result<AdNilpotentIdeal> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(upper_closure(rs, &[]));
    }
    let gens: Vec<usize> = t
        .split(';')
        .map(|g| {
            let g = g.trim();
            if g.is_empty() {
                Err(Error::Parse("empty generator in ideal string".into()))
            } else {
                rs.parse_root(g)
            }
        })
        .collect::<Result<_>>()?;
    Ok(upper_closure(rs, &gens))
}
