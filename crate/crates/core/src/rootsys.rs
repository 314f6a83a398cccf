//! Simple root systems of types A–G: positive roots, the coordinatewise
//! partial order, compatible total orders, and integer structure constants.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        })
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TypeLabel::A),
            "B" | "b" => Ok(TypeLabel::B),
            "C" | "c" => Ok(TypeLabel::C),
            "D" | "d" => Ok(TypeLabel::D),
            "E" | "e" => Ok(TypeLabel::E),
            "F" | "f" => Ok(TypeLabel::F),
            "G" | "g" => Ok(TypeLabel::G),
            other => Err(Error::Parse(format!("unknown type label {other:?}"))),
        }
    }
}

/// Sign-fixing scheme for the structure constants.  Both choices fix
/// extraspecial pairs to |N| = p+1; they differ only in the chosen sign and
/// give bracket tables related by a diagonal basis rescaling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Plus,
    Minus,
}

impl Convention {
    pub fn id(self) -> &'static str {
        match self {
            Convention::Plus => "extraspecial-plus",
            Convention::Minus => "extraspecial-minus",
        }
    }

    fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plus" | "+" | "extraspecial-plus" => Ok(Convention::Plus),
            "minus" | "-" | "extraspecial-minus" => Ok(Convention::Minus),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

/// A positive root, stored as coefficients on the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn text(&self) -> String {
        self.coords.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Total orders on the positive roots refining the partial order ≤,
/// largest elements first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderScheme {
    /// Descending height, ties broken lexicographically (largest coordinate
    /// vector first).  Available in every type.
    HeightLex,
    /// Type A only: sort α_{i,j} by first index ascending, then last index
    /// descending, so α_{1,ℓ} comes first and α_{ℓ,ℓ} last.
    PanovTypeA,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    type_label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    norms: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    sum_table: HashMap<(usize, usize), usize>,
    leq_table: Vec<Vec<bool>>,
}

fn cartan_and_norms(type_label: TypeLabel, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    let l = rank;
    let valid = match type_label {
        TypeLabel::A => l >= 1,
        TypeLabel::B => l >= 2,
        TypeLabel::C => l >= 3,
        TypeLabel::D => l >= 4,
        TypeLabel::E => matches!(l, 6 | 7 | 8),
        TypeLabel::F => l == 4,
        TypeLabel::G => l == 2,
    };
    if !valid {
        return Err(Error::InvalidSystem(format!(
            "rank {l} is not valid for type {type_label}"
        )));
    }
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edge = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    let norms = match type_label {
        TypeLabel::A => {
            for i in 0..l - 1 {
                edge(&mut c, i, i + 1);
            }
            vec![1; l]
        }
        TypeLabel::B => {
            for i in 0..l - 1 {
                edge(&mut c, i, i + 1);
            }
            c[l - 1][l - 2] = -2; // last simple root short
            let mut d = vec![2; l];
            d[l - 1] = 1;
            d
        }
        TypeLabel::C => {
            for i in 0..l - 1 {
                edge(&mut c, i, i + 1);
            }
            c[l - 2][l - 1] = -2; // last simple root long
            let mut d = vec![1; l];
            d[l - 1] = 2;
            d
        }
        TypeLabel::D => {
            for i in 0..l - 3 {
                edge(&mut c, i, i + 1);
            }
            edge(&mut c, l - 3, l - 2);
            edge(&mut c, l - 3, l - 1);
            vec![1; l]
        }
        TypeLabel::E => {
            let chain = &[0usize, 2, 3, 4, 5, 6, 7][..l - 1];
            for w in chain.windows(2) {
                edge(&mut c, w[0], w[1]);
            }
            edge(&mut c, 1, 3);
            vec![1; l]
        }
        TypeLabel::F => {
            edge(&mut c, 0, 1);
            edge(&mut c, 1, 2);
            edge(&mut c, 2, 3);
            c[1][2] = -1;
            c[2][1] = -2;
            vec![2, 2, 1, 1]
        }
        TypeLabel::G => {
            c[0][1] = -3;
            c[1][0] = -1;
            vec![1, 3]
        }
    };
    for i in 0..l {
        for j in 0..l {
            debug_assert_eq!(norms[i] * c[i][j], norms[j] * c[j][i]);
        }
    }
    Ok((c, norms))
}

/// Closure of the simple roots under root strings: r + α_i is a root iff
/// q = p − ⟨r, α_i^∨⟩ ≥ 1, where p counts how far the string extends downward.
fn build_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut roots: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut frontier: Vec<Vec<i64>> = Vec::new();
    for i in 0..l {
        let mut v = vec![0i64; l];
        v[i] = 1;
        roots.insert(v.clone());
        frontier.push(v);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for i in 0..l {
                let mut p = 0i64;
                let mut v = r.clone();
                loop {
                    v[i] -= 1;
                    if v.iter().all(|&x| x == 0) {
                        break; // hit zero, not a root
                    }
                    if roots.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| r[j] * cartan[i][j]).sum();
                if p - pairing >= 1 {
                    let mut w = r.clone();
                    w[i] += 1;
                    if roots.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

impl RootSystem {
    pub fn build(type_label: TypeLabel, rank: usize) -> Result<Self> {
        let (cartan, norms) = cartan_and_norms(type_label, rank)?;
        let coords = build_positive_roots(&cartan);
        let index: HashMap<Vec<i64>, usize> =
            coords.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let n = coords.len();
        let mut sum_table = HashMap::new();
        for i in 0..n {
            for j in i..n {
                let s: Vec<i64> = coords[i].iter().zip(&coords[j]).map(|(a, b)| a + b).collect();
                if let Some(&k) = index.get(&s) {
                    sum_table.insert((i, j), k);
                    sum_table.insert((j, i), k);
                }
            }
        }
        let leq_table: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| coords[j].iter().zip(&coords[i]).all(|(b, a)| b - a >= 0))
                    .collect()
            })
            .collect();
        let roots = coords.into_iter().map(|coords| Root { coords }).collect();
        Ok(RootSystem { type_label, rank, cartan, norms, roots, index, sum_table, leq_table })
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of the simple root α_i (0-based).
    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut v = vec![0i64; self.rank];
        v[i] = 1;
        self.index[&v]
    }

    /// For type A, the index of α_{i,j} = α_i + ⋯ + α_j (1-based, i ≤ j).
    pub fn interval_root_index(&self, i: usize, j: usize) -> Result<usize> {
        if self.type_label != TypeLabel::A {
            return Err(Error::UnsupportedScheme(
                "interval roots i,j exist only in type A".into(),
            ));
        }
        if i < 1 || j < i || j > self.rank {
            return Err(Error::Parse(format!(
                "interval 1 ≤ i ≤ j ≤ {} violated by ({i},{j})",
                self.rank
            )));
        }
        let v: Vec<i64> =
            (0..self.rank).map(|k| i64::from(i - 1 <= k && k <= j - 1)).collect();
        Ok(self.index[&v])
    }

    /// Invariant bilinear form, normalized so short roots have squared length 2.
    pub fn bilinear(&self, a: &[i64], b: &[i64]) -> i64 {
        let l = self.rank;
        (0..l)
            .map(|i| (0..l).map(|j| a[i] * b[j] * self.norms[i] * self.cartan[i][j]).sum::<i64>())
            .sum()
    }

    /// Value of the root with coordinates `coords` on the simple coroot H_i.
    pub fn cartan_eval(&self, i: usize, coords: &[i64]) -> i64 {
        (0..self.rank).map(|j| coords[j] * self.cartan[i][j]).sum()
    }

    fn is_root_any_sign(&self, v: &[i64]) -> bool {
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    /// Partial order on positive roots: a ≤ b iff b − a has nonnegative
    /// coordinates (equivalently, b − a is a sum of positive roots).
    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq_table[a][b]
    }

    pub fn leq(&self, a: &[i64], b: &[i64]) -> Result<bool> {
        let ai = self
            .index_of(a)
            .ok_or_else(|| Error::UnknownRoot(format!("{a:?} is not a positive root")))?;
        let bi = self
            .index_of(b)
            .ok_or_else(|| Error::UnknownRoot(format!("{b:?} is not a positive root")))?;
        Ok(self.leq_idx(ai, bi))
    }

    /// Sum of two positive roots when the sum is again a positive root.
    pub fn add_idx(&self, a: usize, b: usize) -> Option<usize> {
        self.sum_table.get(&(a, b)).copied()
    }

    /// All positive roots in a total order refining ≤, largest first.
    pub fn compatible_total_order(&self, scheme: OrderScheme) -> Result<Vec<usize>> {
        let mut idx: Vec<usize> = (0..self.roots.len()).collect();
        match scheme {
            OrderScheme::HeightLex => {
                idx.sort_by_key(|&i| {
                    (
                        -self.roots[i].height(),
                        self.roots[i].coords().iter().map(|&x| -x).collect::<Vec<_>>(),
                    )
                });
            }
            OrderScheme::PanovTypeA => {
                if self.type_label != TypeLabel::A {
                    return Err(Error::UnsupportedScheme(format!(
                        "panov order requires type A, got {}",
                        self.type_label
                    )));
                }
                idx.sort_by_key(|&i| self.panov_key(i));
            }
        }
        Ok(idx)
    }

    /// Sort key for the type-A order: (first index ascending, last index
    /// descending) of the interval α_{i,j}.
    pub(crate) fn panov_key(&self, root_idx: usize) -> (usize, i64) {
        let coords = self.roots[root_idx].coords();
        let first = coords.iter().position(|&x| x != 0).expect("nonzero root");
        let last = coords.iter().rposition(|&x| x != 0).expect("nonzero root");
        (first, -(last as i64))
    }

    /// Parses a root from text: either "c1 c2 … cℓ" coordinates, or the
    /// type-A shorthand "i,j" for α_{i,j}.  Returns the storage index.
    pub fn parse_root(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty root text".into()));
        }
        if t.contains(',') {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("malformed interval root {t:?}")));
            }
            let i: usize =
                parts[0].parse().map_err(|_| Error::Parse(format!("bad index {:?}", parts[0])))?;
            let j: usize =
                parts[1].parse().map_err(|_| Error::Parse(format!("bad index {:?}", parts[1])))?;
            return self.interval_root_index(i, j);
        }
        let coords: Vec<i64> = t
            .split_whitespace()
            .map(|p| p.parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate {p:?}"))))
            .collect::<Result<_>>()?;
        if coords.len() != self.rank {
            return Err(Error::Parse(format!(
                "expected {} coordinates, got {}",
                self.rank,
                coords.len()
            )));
        }
        self.index_of(&coords)
            .ok_or_else(|| Error::UnknownRoot(format!("{t:?} is not a positive root")))
    }

    /// Largest p with b − p·a a root (of either sign): the downward extent of
    /// the a-string through b.
    pub fn string_down(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut p = 0;
        let mut v = b.to_vec();
        loop {
            for (x, y) in v.iter_mut().zip(a) {
                *x -= y;
            }
            if self.is_root_any_sign(&v) {
                p += 1;
            } else {
                break;
            }
        }
        p
    }

    /// Structure constants for a Chevalley basis under the given convention.
    pub fn chevalley_constants(&self, convention: Convention) -> ChevalleyConstants {
        let sign = convention.sign();
        let n = self.roots.len();
        let mut table: HashMap<(usize, usize), i64> = HashMap::new();
        let norm = |v: &[i64]| self.bilinear(v, v);
        for g in self.roots.iter() {
            if g.height() == 1 {
                continue;
            }
            let gc = g.coords();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a_i in 0..n {
                let a = self.roots[a_i].coords();
                let b: Vec<i64> = gc.iter().zip(a).map(|(x, y)| x - y).collect();
                if let Some(&b_i) = self.index.get(&b) {
                    if a_i < b_i {
                        pairs.push((a_i, b_i));
                    }
                }
            }
            pairs.sort_unstable();
            let (xi_i, eta_i) = pairs[0]; // extraspecial pair
            let p = self.string_down(self.roots[xi_i].coords(), self.roots[eta_i].coords());
            table.insert((xi_i, eta_i), sign * (p + 1));

            let n_pos = |table: &HashMap<(usize, usize), i64>, i: usize, j: usize| -> i64 {
                if i < j {
                    table.get(&(i, j)).copied().unwrap_or(0)
                } else {
                    -table.get(&(j, i)).copied().unwrap_or(0)
                }
            };
            // N(root_x, -root_y) for distinct positive roots, via the string
            // identities relating mixed-sign constants to positive ones.
            let n_mixed = |table: &HashMap<(usize, usize), i64>,
                           x_i: usize,
                           y_i: usize|
             -> Rational64 {
                let x = self.roots[x_i].coords();
                let y = self.roots[y_i].coords();
                let delta: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                assert!(delta.iter().any(|&v| v != 0), "opposite pair");
                let val = if let Some(&d_i) = self.index.get(&delta) {
                    Rational64::new(norm(&delta) * -n_pos(table, y_i, d_i), norm(x))
                } else {
                    let dp: Vec<i64> = delta.iter().map(|v| -v).collect();
                    if let Some(&dp_i) = self.index.get(&dp) {
                        Rational64::new(norm(&dp) * -n_pos(table, x_i, dp_i), norm(y))
                    } else {
                        return Rational64::zero();
                    }
                };
                assert!(val.is_integer() || val.is_zero());
                val
            };
            for &(a_i, b_i) in &pairs[1..] {
                // remaining special pairs from the extraspecial one, via the
                // quadruple identity on (ξ, η, −a, −b)
                let xi = self.roots[xi_i].coords();
                let eta = self.roots[eta_i].coords();
                let a = self.roots[a_i].coords();
                let mut t2 = n_mixed(&table, eta_i, a_i) * n_mixed(&table, xi_i, b_i);
                if !t2.is_zero() {
                    let da: Vec<i64> = eta.iter().zip(a).map(|(x, y)| x - y).collect();
                    t2 /= Rational64::from_integer(norm(&da));
                }
                let mut t3 = -n_mixed(&table, xi_i, a_i) * n_mixed(&table, eta_i, b_i);
                if !t3.is_zero() {
                    let dxa: Vec<i64> = xi.iter().zip(a).map(|(x, y)| x - y).collect();
                    t3 /= Rational64::from_integer(norm(&dxa));
                }
                let val = Rational64::from_integer(norm(gc)) * (t2 + t3)
                    / Rational64::from_integer(table[&(xi_i, eta_i)]);
                assert!(val.is_integer() && !val.is_zero(), "derived constant must be a nonzero integer");
                table.insert((a_i, b_i), val.to_integer());
            }
        }
        ChevalleyConstants { convention, table }
    }
}

/// Structure constants N(α,β) for pairs of positive roots with α+β ∈ Δ⁺,
/// keyed by storage indices (i, j) with i < j; N(j,i) = −N(i,j).
#[derive(Clone, Debug)]
pub struct ChevalleyConstants {
    convention: Convention,
    table: HashMap<(usize, usize), i64>,
}

impl ChevalleyConstants {
    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Antisymmetric lookup; 0 when root_i + root_j is not a positive root.
    pub fn n(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else if i < j {
            self.table.get(&(i, j)).copied().unwrap_or(0)
        } else {
            -self.table.get(&(j, i)).copied().unwrap_or(0)
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<i64> {
        if i < j {
            self.table.get(&(i, j)).copied()
        } else {
            self.table.get(&(j, i)).map(|v| -v)
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(type_label: TypeLabel, rank: usize) -> usize {
        match type_label {
            TypeLabel::A => rank * (rank + 1) / 2,
            TypeLabel::B | TypeLabel::C => rank * rank,
            TypeLabel::D => rank * (rank - 1),
            TypeLabel::E => [36, 63, 120][rank - 6],
            TypeLabel::F => 24,
            TypeLabel::G => 6,
        }
    }

    #[test]
    fn positive_root_counts() {
        for (t, l) in [
            (TypeLabel::A, 1),
            (TypeLabel::A, 2),
            (TypeLabel::A, 6),
            (TypeLabel::B, 2),
            (TypeLabel::B, 4),
            (TypeLabel::C, 3),
            (TypeLabel::C, 7),
            (TypeLabel::D, 4),
            (TypeLabel::D, 5),
            (TypeLabel::E, 6),
            (TypeLabel::F, 4),
            (TypeLabel::G, 2),
        ] {
            let rs = RootSystem::build(t, l).unwrap();
            assert_eq!(rs.num_positive_roots(), counts(t, l), "{t}{l}");
        }
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::build(TypeLabel::B, 1).is_err());
        assert!(RootSystem::build(TypeLabel::C, 2).is_err());
        assert!(RootSystem::build(TypeLabel::D, 3).is_err());
        assert!(RootSystem::build(TypeLabel::E, 5).is_err());
        assert!(RootSystem::build(TypeLabel::F, 3).is_err());
        assert!(RootSystem::build(TypeLabel::G, 3).is_err());
    }

    #[test]
    fn a2_roots_and_leq() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        assert_eq!(rs.num_positive_roots(), 3);
        assert!(rs.leq(&[1, 0], &[1, 1]).unwrap());
        assert!(rs.leq(&[1, 0], &[1, 0]).unwrap());
        assert!(!rs.leq(&[1, 1], &[1, 0]).unwrap());
        assert!(rs.leq(&[2, 0], &[1, 1]).is_err());
    }

    #[test]
    fn a6_interval_incomparability() {
        let rs = RootSystem::build(TypeLabel::A, 6).unwrap();
        let a13 = rs.interval_root_index(1, 3).unwrap();
        let a25 = rs.interval_root_index(2, 5).unwrap();
        assert!(!rs.leq_idx(a13, a25));
        assert!(!rs.leq_idx(a25, a13));
    }

    #[test]
    fn g2_has_height_five_root() {
        let rs = RootSystem::build(TypeLabel::G, 2).unwrap();
        assert_eq!(rs.positive_roots().iter().map(Root::height).max(), Some(5));
    }

    #[test]
    fn leq_is_a_partial_order() {
        let rs = RootSystem::build(TypeLabel::B, 3).unwrap();
        let n = rs.num_positive_roots();
        for i in 0..n {
            assert!(rs.leq_idx(i, i));
            for j in 0..n {
                if i != j && rs.leq_idx(i, j) {
                    assert!(!rs.leq_idx(j, i));
                }
                for k in 0..n {
                    if rs.leq_idx(i, j) && rs.leq_idx(j, k) {
                        assert!(rs.leq_idx(i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn leq_agrees_with_simple_root_reachability() {
        // b − a has nonnegative coordinates iff b is reachable from a by
        // adding simple roots while staying inside the coordinate cone.
        let rs = RootSystem::build(TypeLabel::C, 3).unwrap();
        let n = rs.num_positive_roots();
        for i in 0..n {
            for j in 0..n {
                let a = rs.root(i).coords();
                let b = rs.root(j).coords();
                let diff: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let reachable = diff.iter().all(|&x| x >= 0);
                assert_eq!(rs.leq_idx(i, j), reachable);
            }
        }
    }

    #[test]
    fn sum_table_consistent() {
        let rs = RootSystem::build(TypeLabel::F, 4).unwrap();
        let n = rs.num_positive_roots();
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = rs.add_idx(i, j) {
                    assert_eq!(rs.add_idx(j, i), Some(k));
                    let sum: Vec<i64> = rs
                        .root(i)
                        .coords()
                        .iter()
                        .zip(rs.root(j).coords())
                        .map(|(a, b)| a + b)
                        .collect();
                    assert_eq!(rs.root(k).coords(), &sum[..]);
                }
            }
        }
    }

    #[test]
    fn total_orders_refine_leq() {
        for (rs, scheme) in [
            (RootSystem::build(TypeLabel::A, 4).unwrap(), OrderScheme::PanovTypeA),
            (RootSystem::build(TypeLabel::A, 4).unwrap(), OrderScheme::HeightLex),
            (RootSystem::build(TypeLabel::G, 2).unwrap(), OrderScheme::HeightLex),
            (RootSystem::build(TypeLabel::B, 3).unwrap(), OrderScheme::HeightLex),
        ] {
            let order = rs.compatible_total_order(scheme).unwrap();
            assert_eq!(order.len(), rs.num_positive_roots());
            for (p, &a) in order.iter().enumerate() {
                for &b in &order[p + 1..] {
                    // a precedes b, so a must not be strictly below b
                    assert!(!(rs.leq_idx(a, b) && a != b));
                }
            }
        }
    }

    #[test]
    fn panov_order_golden() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let order = rs.compatible_total_order(OrderScheme::PanovTypeA).unwrap();
        let coords: Vec<&[i64]> = order.iter().map(|&i| rs.root(i).coords()).collect();
        assert_eq!(coords, [&[1, 1][..], &[1, 0], &[0, 1]]);

        let rs6 = RootSystem::build(TypeLabel::A, 6).unwrap();
        let order6 = rs6.compatible_total_order(OrderScheme::PanovTypeA).unwrap();
        assert_eq!(order6[0], rs6.interval_root_index(1, 6).unwrap());
        assert_eq!(*order6.last().unwrap(), rs6.interval_root_index(6, 6).unwrap());

        let hl = rs.compatible_total_order(OrderScheme::HeightLex).unwrap();
        assert_eq!(rs.root(hl[0]).coords(), &[1, 1]);

        assert!(RootSystem::build(TypeLabel::B, 2)
            .unwrap()
            .compatible_total_order(OrderScheme::PanovTypeA)
            .is_err());
    }

    #[test]
    fn parse_root_forms() {
        let rs = RootSystem::build(TypeLabel::A, 6).unwrap();
        assert_eq!(rs.parse_root("0 1 1 1 1 0").unwrap(), rs.interval_root_index(2, 5).unwrap());
        assert_eq!(rs.parse_root("2,5").unwrap(), rs.interval_root_index(2, 5).unwrap());
        assert!(rs.parse_root("1 0").is_err());
        assert!(rs.parse_root("7,9").is_err());
        assert!(rs.parse_root("2 0 0 0 0 0").is_err());
        let rb = RootSystem::build(TypeLabel::B, 2).unwrap();
        assert!(rb.parse_root("1,2").is_err());
        assert_eq!(rb.parse_root("1 2").unwrap(), rb.index_of(&[1, 2]).unwrap());
    }

    fn string_p_between(rs: &RootSystem, i: usize, j: usize) -> i64 {
        rs.string_down(rs.root(i).coords(), rs.root(j).coords())
    }

    fn check_constants(rs: &RootSystem, cc: &ChevalleyConstants) {
        // |N(i,j)| = p+1 for every stored pair
        let n = rs.num_positive_roots();
        for i in 0..n {
            for j in i + 1..n {
                match (rs.add_idx(i, j).is_some(), cc.entry(i, j)) {
                    (true, Some(v)) => {
                        assert_eq!(v.abs(), string_p_between(rs, i, j) + 1);
                    }
                    (false, None) => {}
                    (sum, ent) => panic!("domain mismatch {i} {j}: sum={sum} entry={ent:?}"),
                }
            }
        }
        // Jacobi identity on positive-root triples
        let term = |i: usize, j: usize, k: usize| -> i64 {
            match rs.add_idx(i, j) {
                Some(s) => cc.n(i, j) * cc.n(s, k),
                None => 0,
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    assert_eq!(term(i, j, k) + term(j, k, i) + term(k, i, j), 0);
                }
            }
        }
    }

    #[test]
    fn chevalley_constants_valid() {
        for (t, l) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
        ] {
            let rs = RootSystem::build(t, l).unwrap();
            check_constants(&rs, &rs.chevalley_constants(Convention::Plus));
            check_constants(&rs, &rs.chevalley_constants(Convention::Minus));
        }
    }

    #[test]
    fn chevalley_golden_values() {
        let rs = RootSystem::build(TypeLabel::A, 2).unwrap();
        let cc = rs.chevalley_constants(Convention::Plus);
        let i1 = rs.index_of(&[1, 0]).unwrap();
        let i2 = rs.index_of(&[0, 1]).unwrap();
        assert_eq!(cc.n(i1, i2).abs(), 1);

        // B2 with the first simple root long: |N(α₂, α₁+α₂)| = 2
        let rb = RootSystem::build(TypeLabel::B, 2).unwrap();
        let cb = rb.chevalley_constants(Convention::Plus);
        let a2 = rb.index_of(&[0, 1]).unwrap();
        let a12 = rb.index_of(&[1, 1]).unwrap();
        assert_eq!(cb.n(a2, a12).abs(), 2);

        let pair_absent = cb.entry(a2, a2.max(a12));
        assert!(pair_absent.is_some() || rb.add_idx(a2, a12).is_none());
    }
}
