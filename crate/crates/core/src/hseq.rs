//! Sequences (θ₁,…,θ_r) that peel a set E of positive roots into blocks
//! Γ_i = H(E_{i−1}, θ_i), the statistics (length, span dimension d, pair
//! count t, bound value c = ℓ + r − 2d), and exact minimization of length
//! and c over all such sequences.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Subspace};
use crate::ideals::RootSubset;
use crate::rootsys::{OrderScheme, RootSystem, TypeLabel};

const INF: i64 = i64::MAX / 4;

/// H(E, γ) = {α ∈ E : γ − α ∈ E ∪ {0}}.
pub fn h_set(rs: &RootSystem, e: &RootSubset, gamma: usize) -> Result<RootSubset> {
    if !e.contains(gamma) {
        return Err(Error::Parameter(format!(
            "root {} is not in the given set",
            rs.root(gamma).text()
        )));
    }
    Ok(h_set_unchecked(rs, e, gamma))
}

fn h_set_unchecked(rs: &RootSystem, e: &RootSubset, gamma: usize) -> RootSubset {
    let gc = rs.root(gamma).coords();
    let mut out = RootSubset::empty_like(e);
    for a in e.iter() {
        if a == gamma {
            out.insert(a);
            continue;
        }
        let diff: Vec<i64> =
            gc.iter().zip(rs.root(a).coords()).map(|(g, x)| g - x).collect();
        if let Some(d) = rs.index_of(&diff) {
            if e.contains(d) {
                out.insert(a);
            }
        }
    }
    out
}

/// Elements of E with nothing strictly above them in E, ascending storage order.
pub fn maximal_elements(rs: &RootSystem, e: &RootSubset) -> Vec<usize> {
    e.iter()
        .filter(|&a| e.iter().all(|b| b == a || !rs.leq_idx(a, b)))
        .collect()
}

/// A validated peeling sequence with its blocks and statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSequence {
    rank: usize,
    thetas: Vec<usize>,
    gamma_blocks: Vec<RootSubset>,
    d: usize,
    t_blocks: Vec<usize>,
    t: usize,
    c: i64,
}

impl HSequence {
    fn assemble(rs: &RootSystem, e: &RootSubset, thetas: Vec<usize>, blocks: Vec<RootSubset>) -> Self {
        let rank = rs.rank();
        let rows: Vec<Vec<i64>> =
            thetas.iter().map(|&i| rs.root(i).coords().to_vec()).collect();
        let d = if rows.is_empty() { 0 } else { IntMatrix::from_i64_rows(&rows).rank() };
        let t_blocks: Vec<usize> = blocks.iter().map(|g| (g.card() - 1) / 2).collect();
        let t = t_blocks.iter().sum();
        let c = rank as i64 + thetas.len() as i64 - 2 * d as i64;
        let h = HSequence { rank, thetas, gamma_blocks: blocks, d, t_blocks, t, c };
        debug_assert!(h.verify_invariants(rs, e).is_ok());
        h
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[usize] {
        &self.thetas
    }

    pub fn gamma_blocks(&self) -> &[RootSubset] {
        &self.gamma_blocks
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t_blocks(&self) -> &[usize] {
        &self.t_blocks
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// Comma-separated root texts, in peeling order.
    pub fn to_text(&self, rs: &RootSystem) -> String {
        self.thetas.iter().map(|&i| rs.root(i).text()).collect::<Vec<_>>().join(",")
    }

    /// Checks every structural invariant against the set the sequence peels.
    pub fn verify_invariants(&self, rs: &RootSystem, e: &RootSubset) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        let r = self.thetas.len();
        if self.gamma_blocks.len() != r || self.t_blocks.len() != r {
            return fail("block/theta count mismatch".into());
        }
        // partition of E
        let mut union = RootSubset::empty_like(e);
        let mut total = 0;
        for g in &self.gamma_blocks {
            total += g.card();
            union = union.union(g);
        }
        if union != *e || total != e.card() {
            return fail("blocks do not partition the set".into());
        }
        for (k, (&th, g)) in self.thetas.iter().zip(&self.gamma_blocks).enumerate() {
            if !g.contains(th) {
                return fail(format!("theta {k} outside its block"));
            }
            // α ↦ θ − α is a fixed-point-free involution on the block minus θ
            if (g.card() - 1) % 2 != 0 || self.t_blocks[k] != (g.card() - 1) / 2 {
                return fail(format!("block {k} has no pairing structure"));
            }
            let tc = rs.root(th).coords();
            for a in g.iter() {
                if a == th {
                    continue;
                }
                let diff: Vec<i64> =
                    tc.iter().zip(rs.root(a).coords()).map(|(t, x)| t - x).collect();
                match rs.index_of(&diff) {
                    Some(b) if g.contains(b) && b != a && b != th => {}
                    _ => return fail(format!("involution fails in block {k}")),
                }
            }
        }
        // sums of block members may only land on earlier-or-equal thetas
        let theta_pos: HashMap<usize, usize> =
            self.thetas.iter().enumerate().map(|(k, &th)| (th, k)).collect();
        let block_of: HashMap<usize, usize> = self
            .gamma_blocks
            .iter()
            .enumerate()
            .flat_map(|(k, g)| g.iter().map(move |a| (a, k)))
            .collect();
        for a in e.iter() {
            for b in e.iter() {
                if b > a {
                    continue;
                }
                if let Some(s) = rs.add_idx(a, b) {
                    if let Some(&k) = theta_pos.get(&s) {
                        let (i, j) = (block_of[&a], block_of[&b]);
                        if k < i.min(j) {
                            return fail(format!(
                                "sum lands on a later theta: blocks {i},{j} -> {k}"
                            ));
                        }
                    }
                }
            }
        }
        for (i, &ti) in self.thetas.iter().enumerate() {
            for &tj in &self.thetas[i + 1..] {
                if let Some(s) = rs.add_idx(ti, tj) {
                    if theta_pos.contains_key(&s) {
                        return fail("sum of two thetas is a theta".into());
                    }
                }
            }
        }
        // statistics
        let rows: Vec<Vec<i64>> =
            self.thetas.iter().map(|&i| rs.root(i).coords().to_vec()).collect();
        let d = if rows.is_empty() { 0 } else { IntMatrix::from_i64_rows(&rows).rank() };
        if d != self.d || self.t != self.t_blocks.iter().sum::<usize>() {
            return fail("stale statistics".into());
        }
        if self.c != self.rank as i64 + r as i64 - 2 * d as i64 {
            return fail("stale bound value".into());
        }
        if e.card() != r + 2 * self.t {
            return fail("set size is not length + 2t".into());
        }
        if d > r.min(self.rank) || self.c < self.rank as i64 - d as i64 {
            return fail("span dimension out of range".into());
        }
        Ok(())
    }
}

/// Why a candidate sequence failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// θ at `step` is not in the residual set (not in E, repeated, or
    /// already swallowed by an earlier block).
    HeadNotInResidual { step: usize },
    /// θ at `step` is not maximal in the residual set.
    HeadNotMaximal { step: usize },
    /// The sequence ended with roots still unpeeled.
    ResidualNotExhausted { remaining: RootSubset },
}

#[derive(Clone, Debug)]
pub enum ValidationOutcome {
    Valid(HSequence),
    Rejected(Rejection),
}

impl ValidationOutcome {
    pub fn into_valid(self) -> Option<HSequence> {
        match self {
            ValidationOutcome::Valid(h) => Some(h),
            ValidationOutcome::Rejected(_) => None,
        }
    }
}

/// Checks the defining recursion: each θ_i must be maximal in the residual
/// set, whose Γ_i = H(residual, θ_i) block is then removed; the final
/// residual must be empty.  (For the final step, maximality is implied
/// whenever the block exhausts the residual.)
pub fn validate_hsequence(
    rs: &RootSystem,
    e: &RootSubset,
    seq: &[usize],
) -> Result<ValidationOutcome> {
    let n = rs.num_positive_roots();
    if e.universe_len() != n {
        return Err(Error::Parameter("subset does not match the root system".into()));
    }
    if seq.iter().any(|&i| i >= n) {
        return Err(Error::Parameter("root index out of range".into()));
    }
    let mut cur = *e;
    let mut thetas = Vec::with_capacity(seq.len());
    let mut blocks = Vec::with_capacity(seq.len());
    for (step, &th) in seq.iter().enumerate() {
        if !cur.contains(th) {
            return Ok(ValidationOutcome::Rejected(Rejection::HeadNotInResidual { step }));
        }
        if cur.iter().any(|b| b != th && rs.leq_idx(th, b)) {
            return Ok(ValidationOutcome::Rejected(Rejection::HeadNotMaximal { step }));
        }
        let g = h_set_unchecked(rs, &cur, th);
        cur = cur.minus(&g);
        thetas.push(th);
        blocks.push(g);
    }
    if !cur.is_empty() {
        return Ok(ValidationOutcome::Rejected(Rejection::ResidualNotExhausted {
            remaining: cur,
        }));
    }
    Ok(ValidationOutcome::Valid(HSequence::assemble(rs, e, thetas, blocks)))
}

/// Candidate heads for the next peeling step, in descending height-lex order
/// (the deterministic tie-break used by every search here).
fn candidates(rs: &RootSystem, cur: &RootSubset) -> Vec<usize> {
    let mut m = maximal_elements(rs, cur);
    m.reverse(); // storage order is (height, lex) ascending
    m
}

/// All peeling sequences of E by backtracking, up to `budget` search nodes.
/// The flag reports whether the enumeration is exhaustive.
pub fn enumerate_hsequences(
    rs: &RootSystem,
    e: &RootSubset,
    budget: u64,
) -> Result<(Vec<HSequence>, bool)> {
    if budget == 0 {
        return Err(Error::Parameter("budget must be positive".into()));
    }
    struct St<'a> {
        rs: &'a RootSystem,
        e: &'a RootSubset,
        spent: u64,
        budget: u64,
        complete: bool,
        out: Vec<HSequence>,
    }
    fn rec(st: &mut St, cur: RootSubset, thetas: &mut Vec<usize>, blocks: &mut Vec<RootSubset>) {
        if st.spent >= st.budget {
            st.complete = false;
            return;
        }
        st.spent += 1;
        if cur.is_empty() {
            st.out.push(HSequence::assemble(st.rs, st.e, thetas.clone(), blocks.clone()));
            return;
        }
        for th in candidates(st.rs, &cur) {
            let g = h_set_unchecked(st.rs, &cur, th);
            thetas.push(th);
            blocks.push(g);
            rec(st, cur.minus(&g), thetas, blocks);
            thetas.pop();
            blocks.pop();
        }
    }
    let mut st = St { rs, e, spent: 0, budget, complete: true, out: Vec::new() };
    rec(&mut st, *e, &mut Vec::new(), &mut Vec::new());
    Ok((st.out, st.complete))
}

/// Result of a minimization search: the optimum (when any sequence completed
/// within budget), a witness achieving it, and whether the search was
/// exhaustive so the value is certified globally minimal.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub value: Option<i64>,
    pub witness: Option<HSequence>,
    pub exhaustive: bool,
}

/// Minimum sequence length over all peelings of E.  Memoized on the residual
/// bitmask: suffix sequences depend only on the residual set.
pub fn min_length(rs: &RootSystem, e: &RootSubset, budget: u64) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::Parameter("budget must be positive".into()));
    }
    struct St<'a> {
        rs: &'a RootSystem,
        spent: u64,
        budget: u64,
        memo: HashMap<u128, i64>, // exact values only
    }
    fn rec(st: &mut St, cur: RootSubset) -> (i64, bool) {
        if cur.is_empty() {
            return (0, true);
        }
        if let Some(&v) = st.memo.get(&cur.mask()) {
            return (v, true);
        }
        if st.spent >= st.budget {
            return (INF, false);
        }
        st.spent += 1;
        let mut best = INF;
        let mut exact = true;
        for th in candidates(st.rs, &cur) {
            let g = h_set_unchecked(st.rs, &cur, th);
            let (v, ex) = rec(st, cur.minus(&g));
            exact &= ex;
            best = best.min(1 + v);
        }
        if exact {
            st.memo.insert(cur.mask(), best);
        }
        (best, exact)
    }
    let mut st = St { rs, spent: 0, budget, memo: HashMap::new() };
    let (value, exact) = rec(&mut st, *e);
    let witness = if exact {
        let mut thetas = Vec::new();
        let mut cur = *e;
        while !cur.is_empty() {
            let target = st.memo[&cur.mask()];
            let mut advanced = false;
            for th in candidates(rs, &cur) {
                let g = h_set_unchecked(rs, &cur, th);
                let next = cur.minus(&g);
                let v = if next.is_empty() { 0 } else { st.memo[&next.mask()] };
                if 1 + v == target {
                    thetas.push(th);
                    cur = next;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "memoized optimum must be reachable");
        }
        validate_hsequence(rs, e, &thetas)?.into_valid()
    } else {
        None
    };
    Ok(SearchOutcome {
        value: (value < INF).then_some(value),
        witness,
        exhaustive: exact,
    })
}

/// Minimum of c = ℓ + length − 2d over all peelings of E.  The search state
/// is (residual bitmask, rational span of the chosen θ's): d is a
/// whole-sequence quantity, so the span rides along in canonical echelon
/// form and the memo key includes it.
pub fn min_c(rs: &RootSystem, e: &RootSubset, budget: u64) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::Parameter("budget must be positive".into()));
    }
    let l = rs.rank();
    let theta_vec = |th: usize| -> Vec<BigRational> {
        rs.root(th).coords().iter().map(|&x| BigRational::from_integer(x.into())).collect()
    };
    struct St<'a> {
        rs: &'a RootSystem,
        spent: u64,
        budget: u64,
        memo: HashMap<(u128, Subspace), i64>,
    }
    // value = min over completions of (#thetas added − 2·dim of the final span)
    fn rec(
        st: &mut St,
        cur: RootSubset,
        span: &Subspace,
        theta_vec: &dyn Fn(usize) -> Vec<BigRational>,
    ) -> (i64, bool) {
        if cur.is_empty() {
            return (-2 * span.dim() as i64, true);
        }
        let key = (cur.mask(), span.clone());
        if let Some(&v) = st.memo.get(&key) {
            return (v, true);
        }
        if st.spent >= st.budget {
            return (INF, false);
        }
        st.spent += 1;
        let mut best = INF;
        let mut exact = true;
        for th in candidates(st.rs, &cur) {
            let g = h_set_unchecked(st.rs, &cur, th);
            let nspan = span
                .sum(&Subspace::span(span.ambient_dim(), &[theta_vec(th)]))
                .expect("ambient dims agree");
            let (v, ex) = rec(st, cur.minus(&g), &nspan, theta_vec);
            exact &= ex;
            best = best.min(1 + v);
        }
        if exact {
            st.memo.insert(key, best);
        }
        (best, exact)
    }
    let mut st = St { rs, spent: 0, budget, memo: HashMap::new() };
    let root_span = Subspace::zero(l);
    let (raw, exact) = rec(&mut st, *e, &root_span, &theta_vec);
    let value = (raw < INF).then_some(l as i64 + raw);
    let witness = if exact && !e.is_empty() {
        let mut thetas = Vec::new();
        let mut cur = *e;
        let mut span = root_span;
        while !cur.is_empty() {
            let target = st.memo[&(cur.mask(), span.clone())];
            let mut advanced = false;
            for th in candidates(rs, &cur) {
                let g = h_set_unchecked(rs, &cur, th);
                let next = cur.minus(&g);
                let nspan = span
                    .sum(&Subspace::span(span.ambient_dim(), &[theta_vec(th)]))
                    .expect("ambient dims agree");
                let v = if next.is_empty() {
                    -2 * nspan.dim() as i64
                } else {
                    st.memo[&(next.mask(), nspan.clone())]
                };
                if 1 + v == target {
                    thetas.push(th);
                    cur = next;
                    span = nspan;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "memoized optimum must be reachable");
        }
        validate_hsequence(rs, e, &thetas)?.into_valid()
    } else if exact {
        validate_hsequence(rs, e, &[])?.into_valid()
    } else {
        None
    };
    if let (Some(v), Some(w)) = (value, witness.as_ref()) {
        debug_assert_eq!(w.c(), v);
    }
    Ok(SearchOutcome { value, witness, exhaustive: exact })
}

/// Peels greedily, always taking the first element of `order` present in the
/// residual set.  `order` must list roots largest-first refining ≤, so the
/// greedy head is always maximal.  The result is validated before return;
/// a rejection carries the stuck residual set.
pub fn greedy_sequence(
    rs: &RootSystem,
    e: &RootSubset,
    order: &[usize],
) -> Result<ValidationOutcome> {
    let n = rs.num_positive_roots();
    if e.universe_len() != n {
        return Err(Error::Parameter("subset does not match the root system".into()));
    }
    let mut seen = vec![false; n];
    for (p, &a) in order.iter().enumerate() {
        if a >= n || seen[a] {
            return Err(Error::Parameter("order is not a list of distinct roots".into()));
        }
        seen[a] = true;
        for &b in &order[p + 1..] {
            if b < n && a != b && rs.leq_idx(a, b) {
                return Err(Error::Parameter(
                    "order does not refine the partial order (largest first)".into(),
                ));
            }
        }
    }
    if e.iter().any(|a| !seen[a]) {
        return Err(Error::Parameter("order does not cover the set".into()));
    }
    let mut cur = *e;
    let mut thetas = Vec::new();
    while !cur.is_empty() {
        let th = order.iter().copied().find(|&a| cur.contains(a)).expect("order covers set");
        let g = h_set_unchecked(rs, &cur, th);
        thetas.push(th);
        cur = cur.minus(&g);
    }
    validate_hsequence(rs, e, &thetas)
}

/// The unique peeling sequence decreasing along the type-A interval order
/// (first index ascending, last index descending).  Greedy construction,
/// then full validation; a greedy result failing validation is an internal
/// invariant violation, never returned silently.
pub fn panov_sequence(rs: &RootSystem, e: &RootSubset) -> Result<HSequence> {
    if rs.type_label() != TypeLabel::A {
        return Err(Error::UnsupportedScheme(format!(
            "the interval order requires type A, got {}",
            rs.type_label()
        )));
    }
    let order = rs.compatible_total_order(OrderScheme::PanovTypeA)?;
    match greedy_sequence(rs, e, &order)? {
        ValidationOutcome::Valid(h) => Ok(h),
        ValidationOutcome::Rejected(r) => Err(Error::Invariant(format!(
            "greedy interval-order sequence failed validation: {r:?}"
        ))),
    }
}

/// Parity forcing: an exhaustive bound in {0,1} pins the index exactly
/// (the index and the bound always share parity and 0 ≤ index ≤ bound).
pub fn conclude_index_from_bound(minc: i64) -> Option<i64> {
    matches!(minc, 0 | 1).then_some(minc)
}

/// The pairs (α, β) with α + β equal to one of the θ's: `pairs` holds the
/// same-block ones (α, β ∈ Γ_i with α+β = θ_i, exactly t of them), `z_pairs`
/// every such pair in E×E regardless of blocks.
#[derive(Clone, Debug)]
pub struct PairSet {
    pub pairs: Vec<(usize, usize, usize)>,
    pub z_pairs: Vec<(usize, usize)>,
}

pub fn pair_set(rs: &RootSystem, e: &RootSubset, h: &HSequence) -> PairSet {
    let theta_pos: HashMap<usize, usize> =
        h.thetas().iter().enumerate().map(|(k, &th)| (th, k)).collect();
    let block_of: HashMap<usize, usize> = h
        .gamma_blocks()
        .iter()
        .enumerate()
        .flat_map(|(k, g)| g.iter().map(move |a| (a, k)))
        .collect();
    let mut pairs = Vec::new();
    let mut z_pairs = Vec::new();
    for a in e.iter() {
        for b in e.iter() {
            if b <= a {
                continue;
            }
            if let Some(s) = rs.add_idx(a, b) {
                if let Some(&k) = theta_pos.get(&s) {
                    z_pairs.push((a, b));
                    if block_of[&a] == k && block_of[&b] == k {
                        pairs.push((a, b, k));
                    }
                }
            }
        }
    }
    debug_assert_eq!(pairs.len(), h.t());
    PairSet { pairs, z_pairs }
}
