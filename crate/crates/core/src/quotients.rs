//! Finite-dimensional quotients attached to an ad-nilpotent ideal Φ of the
//! Borel: the quotient of the Borel by [n, n_Φ] + n_Φ (basis: Cartan vectors
//! H₁…H_ℓ plus root vectors X_α for α in E = Δ⁺ ∖ Φ) and the corresponding
//! quotient of the nilradical (root vectors only), together with linear
//! forms, their alternating form matrices, and the block decomposition used
//! by the rank bounds.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::hseq::{pair_set, HSequence};
use crate::ideals::{is_ad_nilpotent_ideal, RootSubset};
use crate::rootsys::{ChevalleyConstants, Convention, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    /// Cartan plus surviving root vectors.
    BorelQuotient,
    /// Surviving root vectors only.
    NilradicalQuotient,
}

/// A Lie algebra on basis (H₁…H_ℓ, X_α for α ∈ E) — or just the X_α — with
/// multiplication truncated to E: [X_α, X_β] = N_{α,β} X_{α+β} when
/// α + β ∈ E, zero when α + β escapes E.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    kind: QuotientKind,
    nh: usize,
    e_subset: RootSubset,
    e_roots: Vec<usize>,
    dim: usize,
    // basis pairs a < b with nonzero bracket -> (coefficient, target basis index)
    table: HashMap<(usize, usize), (i64, usize)>,
    convention: Convention,
}

/// Builds the quotient for the ideal Φ.  The surviving roots E = Δ⁺ ∖ Φ
/// index the basis in storage order after the `nh` Cartan vectors
/// (`nh` = rank for the Borel quotient, 0 for the nilradical one).
pub fn build_quotient(
    rs: &RootSystem,
    phi: &RootSubset,
    kind: QuotientKind,
    nc: &ChevalleyConstants,
) -> Result<QuotientAlgebra> {
    if phi.universe_len() != rs.num_positive_roots() {
        return Err(Error::Parameter("subset does not match the root system".into()));
    }
    if !is_ad_nilpotent_ideal(rs, phi) {
        return Err(Error::Parameter("the given set is not an ad-nilpotent ideal".into()));
    }
    let e_subset = phi.complement();
    let e_roots: Vec<usize> = e_subset.iter().collect();
    let nh = match kind {
        QuotientKind::BorelQuotient => rs.rank(),
        QuotientKind::NilradicalQuotient => 0,
    };
    let dim = nh + e_roots.len();
    let mut table = HashMap::new();
    let e_pos: HashMap<usize, usize> =
        e_roots.iter().enumerate().map(|(k, &r)| (r, nh + k)).collect();
    for i in 0..nh {
        for (k, &r) in e_roots.iter().enumerate() {
            let v = rs.cartan_eval(i, rs.root(r).coords());
            if v != 0 {
                table.insert((i, nh + k), (v, nh + k));
            }
        }
    }
    for (ka, &a) in e_roots.iter().enumerate() {
        for &b in &e_roots[ka + 1..] {
            if let Some(s) = rs.add_idx(a, b) {
                if let Some(&pos) = e_pos.get(&s) {
                    let n = nc.n(a, b);
                    assert!(n != 0, "structure constant vanishes on a root sum");
                    table.insert((e_pos[&a], e_pos[&b]), (n, pos));
                }
            }
        }
    }
    Ok(QuotientAlgebra { kind, nh, e_subset, e_roots, dim, table, convention: nc.convention() })
}

impl QuotientAlgebra {
    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of Cartan basis vectors preceding the root vectors.
    pub fn num_cartan(&self) -> usize {
        self.nh
    }

    pub fn e_subset(&self) -> &RootSubset {
        &self.e_subset
    }

    /// Surviving roots in basis order; basis index of the k-th is nh + k.
    pub fn e_roots(&self) -> &[usize] {
        &self.e_roots
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Basis index of the root vector X_α, if α survives.
    pub fn root_position(&self, root: usize) -> Option<usize> {
        self.e_roots.iter().position(|&r| r == root).map(|k| self.nh + k)
    }

    /// [b_a, b_b] as (coefficient, basis index); None when zero.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(i64, usize)> {
        assert!(a < self.dim && b < self.dim, "basis index out of range");
        if a == b {
            return None;
        }
        if a < b {
            self.table.get(&(a, b)).copied()
        } else {
            self.table.get(&(b, a)).map(|&(n, k)| (-n, k))
        }
    }

    /// Human-readable basis vector name for diagnostics.
    pub fn basis_name(&self, rs: &RootSystem, i: usize) -> String {
        if i < self.nh {
            format!("H{}", i + 1)
        } else {
            format!("X[{}]", rs.root(self.e_roots[i - self.nh]).text())
        }
    }

    /// Exhaustive Jacobi check over basis triples.
    pub fn jacobi_identity_holds(&self) -> bool {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for c in b + 1..self.dim {
                    acc.clear();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        if let Some((n1, k)) = self.bracket(x, y) {
                            if let Some((n2, m)) = self.bracket(k, z) {
                                *acc.entry(m).or_insert(0) += n1 * n2;
                            }
                        }
                    }
                    if acc.values().any(|&v| v != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A linear functional on a quotient algebra, as values on its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    values: Vec<BigRational>,
}

impl LinearForm {
    pub fn zero(dim: usize) -> Self {
        LinearForm { values: vec![BigRational::zero(); dim] }
    }

    pub fn from_values(values: Vec<BigRational>) -> Self {
        LinearForm { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    pub fn set(&mut self, i: usize, v: BigRational) {
        self.values[i] = v;
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// The alternating matrix M[a][b] = f([b_a, b_b]), cleared to integers by one
/// global denominator (so ranks are unchanged).
pub fn form_matrix(alg: &QuotientAlgebra, f: &LinearForm) -> Result<IntMatrix> {
    if f.dim() != alg.dim {
        return Err(Error::Parameter(format!(
            "form has {} values, algebra has dimension {}",
            f.dim(),
            alg.dim
        )));
    }
    let rows: Vec<Vec<BigRational>> = (0..alg.dim)
        .map(|a| {
            (0..alg.dim)
                .map(|b| match alg.bracket(a, b) {
                    Some((n, k)) => f.value(k) * BigRational::from_integer(n.into()),
                    None => BigRational::zero(),
                })
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rational_rows(&rows);
    debug_assert!(m.is_antisymmetric());
    Ok(m)
}

/// f = Σ_i a_i · X_{θ_i}^*: supported on the heads of the peeling sequence.
/// All coefficients must be nonzero and every θ must survive in the algebra.
pub fn special_form(
    alg: &QuotientAlgebra,
    h: &HSequence,
    coeffs: &[BigRational],
) -> Result<LinearForm> {
    if coeffs.len() != h.len() {
        return Err(Error::Parameter(format!(
            "{} coefficients for {} sequence heads",
            coeffs.len(),
            h.len()
        )));
    }
    if coeffs.iter().any(BigRational::is_zero) {
        return Err(Error::Parameter("special form coefficients must be nonzero".into()));
    }
    let mut f = LinearForm::zero(alg.dim);
    for (&th, a) in h.thetas().iter().zip(coeffs) {
        let pos = alg
            .root_position(th)
            .ok_or_else(|| Error::Parameter("sequence head outside the algebra".into()))?;
        f.set(pos, a.clone());
    }
    Ok(f)
}

/// Block decomposition of the special form's matrix on the Borel quotient:
/// the Cartan-against-heads block (rank d for generic coefficients), the
/// root-against-root block, and the exact form values on the pairs whose sum
/// is a head.
#[derive(Clone, Debug)]
pub struct FormDecomposition {
    /// Scaled integral matrix of the whole form.
    pub full: IntMatrix,
    /// Cartan rows against head columns (ℓ × length).
    pub theta_block: IntMatrix,
    /// Root rows against root columns (|E| × |E|).
    pub psi_block: IntMatrix,
    /// (α, β, f([X_α, X_β])) for root pairs α < β with α + β a head — exact,
    /// unscaled values.
    pub lambda_entries: Vec<(usize, usize, BigRational)>,
}

pub fn form_decomposition(
    rs: &RootSystem,
    alg: &QuotientAlgebra,
    h: &HSequence,
    coeffs: &[BigRational],
) -> Result<FormDecomposition> {
    if alg.kind != QuotientKind::BorelQuotient {
        return Err(Error::Parameter("block decomposition needs the Borel quotient".into()));
    }
    let mut union = RootSubset::empty_like(&alg.e_subset);
    for g in h.gamma_blocks() {
        union = union.union(g);
    }
    if union != alg.e_subset {
        return Err(Error::Parameter(
            "sequence does not peel the algebra's surviving roots".into(),
        ));
    }
    let f = special_form(alg, h, coeffs)?;
    let full = form_matrix(alg, &f)?;
    let nh = alg.nh;
    let head_cols: Vec<usize> = h
        .thetas()
        .iter()
        .map(|&th| alg.root_position(th).expect("heads survive"))
        .collect();
    let theta_rows: Vec<Vec<BigRational>> = (0..nh)
        .map(|i| {
            head_cols
                .iter()
                .map(|&c| BigRational::from_integer(full.get(i, c).clone()))
                .collect()
        })
        .collect();
    let theta_block = if theta_rows.is_empty() {
        IntMatrix::zero(0, head_cols.len())
    } else {
        IntMatrix::from_rational_rows(&theta_rows)
    };
    let psi_rows: Vec<Vec<BigRational>> = (nh..alg.dim)
        .map(|i| {
            (nh..alg.dim)
                .map(|j| BigRational::from_integer(full.get(i, j).clone()))
                .collect()
        })
        .collect();
    let psi_block = if psi_rows.is_empty() {
        IntMatrix::zero(0, 0)
    } else {
        IntMatrix::from_rational_rows(&psi_rows)
    };
    let ps = pair_set(rs, &alg.e_subset, h);
    let lambda_entries = ps
        .z_pairs
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (
                alg.root_position(a).expect("pair roots survive"),
                alg.root_position(b).expect("pair roots survive"),
            );
            let (n, k) = alg.bracket(pa, pb).expect("pair sum survives");
            let v = f.value(k) * BigRational::from_integer(n.into());
            (a, b, v)
        })
        .collect();
    Ok(FormDecomposition { full, theta_block, psi_block, lambda_entries })
}

/// Matrix of x ↦ f([x, ·]) for the Borel quotient acting on the nilradical
/// quotient of the same ideal: rows over the acting algebra's basis, columns
/// over the module's, entries f([b_i, c_j]) for a form f on the module.
pub fn action_matrix(
    q: &QuotientAlgebra,
    m: &QuotientAlgebra,
    f: &LinearForm,
) -> Result<IntMatrix> {
    if q.kind != QuotientKind::BorelQuotient || m.kind != QuotientKind::NilradicalQuotient {
        return Err(Error::Parameter(
            "action needs a Borel quotient acting on a nilradical quotient".into(),
        ));
    }
    if q.e_roots != m.e_roots || q.convention != m.convention {
        return Err(Error::Parameter("algebra and module built from different data".into()));
    }
    if f.dim() != m.dim {
        return Err(Error::Parameter(format!(
            "form has {} values, module has dimension {}",
            f.dim(),
            m.dim
        )));
    }
    let shift = q.nh;
    let rows: Vec<Vec<BigRational>> = (0..q.dim)
        .map(|i| {
            (0..m.dim)
                .map(|j| match q.bracket(i, shift + j) {
                    // bracket targets are always root vectors, never Cartan
                    Some((n, k)) => f.value(k - shift) * BigRational::from_integer(n.into()),
                    None => BigRational::zero(),
                })
                .collect()
        })
        .collect();
    Ok(IntMatrix::from_rational_rows(&rows))
}
