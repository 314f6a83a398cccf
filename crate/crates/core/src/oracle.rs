//! Randomized index estimation over the exact rational kernel machinery:
//! the index of a quotient algebra is dim − max rank of the form matrix
//! over sampled functionals, the module index likewise over sampled module
//! functionals; plus form stabilizers, the stability test, the Cartan-kernel
//! containment check, and the block-rank report backing the lower bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, IntMatrix, Subspace};
use crate::hseq::{pair_set, HSequence};
use crate::quotients::{
    action_matrix, form_decomposition, form_matrix, special_form, LinearForm, QuotientAlgebra,
    QuotientKind,
};
use crate::rootsys::{ChevalleyConstants, RootSystem};

/// How sure the estimate is: `ForcedByParityAndBound` means the sampled
/// value pins the true index exactly (the estimate is always an upper bound;
/// for an algebra the index shares the dimension's parity, so 0 or 1 forces
/// it; for a module only 0 does).  Otherwise the true index could still be
/// smaller than reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Probabilistic,
    ForcedByParityAndBound,
}

#[derive(Clone, Debug)]
pub struct IndexEstimate {
    pub value: i64,
    /// A sampled functional achieving the maximal rank.
    pub witness: LinearForm,
    pub samples: u32,
    pub coeff_bound: u64,
    pub seed: u64,
    pub certainty: Certainty,
}

fn check_sampling_params(trials: u32, coeff_bound: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Parameter("need at least one trial".into()));
    }
    if coeff_bound < 2 {
        return Err(Error::Parameter("coefficient bound must be at least 2".into()));
    }
    Ok(())
}

/// One stream of positive integer coefficients per trial, all reproducible
/// from (seed, trial).
fn trial_rng(seed: u64, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize, coeff_bound: u64) -> LinearForm {
    LinearForm::from_values(
        (0..dim)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=coeff_bound))))
            .collect(),
    )
}

/// Index of the algebra: dim − max over sampled f of rank f([·,·]).
pub fn index_of(
    alg: &QuotientAlgebra,
    trials: u32,
    coeff_bound: u64,
    seed: u64,
) -> Result<IndexEstimate> {
    check_sampling_params(trials, coeff_bound)?;
    let dim = alg.dim();
    let mut best_rank = 0;
    let mut witness = LinearForm::zero(dim);
    for t in 0..trials {
        let f = random_form(&mut trial_rng(seed, t), dim, coeff_bound);
        let r = form_matrix(alg, &f)?.rank();
        if r > best_rank || t == 0 {
            best_rank = r;
            witness = f;
        }
    }
    if best_rank % 2 != 0 {
        return Err(Error::Invariant("alternating form matrix has odd rank".into()));
    }
    let value = dim as i64 - best_rank as i64;
    let certainty = if value == 0 || value == 1 {
        Certainty::ForcedByParityAndBound
    } else {
        Certainty::Probabilistic
    };
    Ok(IndexEstimate { value, witness, samples: trials, coeff_bound, seed, certainty })
}

/// Index of the module: dim m − max over sampled f ∈ m* of the rank of
/// (x, v) ↦ f([x, v]).
pub fn module_index(
    q: &QuotientAlgebra,
    m: &QuotientAlgebra,
    trials: u32,
    coeff_bound: u64,
    seed: u64,
) -> Result<IndexEstimate> {
    check_sampling_params(trials, coeff_bound)?;
    let dim = m.dim();
    let mut best_rank = 0;
    let mut witness = LinearForm::zero(dim);
    for t in 0..trials {
        let f = random_form(&mut trial_rng(seed, t), dim, coeff_bound);
        let r = action_matrix(q, m, &f)?.rank();
        if r > best_rank || t == 0 {
            best_rank = r;
            witness = f;
        }
    }
    let value = dim as i64 - best_rank as i64;
    let certainty = if value == 0 {
        Certainty::ForcedByParityAndBound
    } else {
        Certainty::Probabilistic
    };
    Ok(IndexEstimate { value, witness, samples: trials, coeff_bound, seed, certainty })
}

/// Stabilizer of f: {x : f([x, y]) = 0 for all y}, the (left = right) kernel
/// of the alternating form matrix.
pub fn stabilizer(alg: &QuotientAlgebra, f: &LinearForm) -> Result<Subspace> {
    Ok(kernel_basis(&form_matrix(alg, f)?))
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub stabilizer: Subspace,
    /// Span of [x, k] over basis x and stabilizer basis k.
    pub bracket_span: Subspace,
    pub intersection_dim: usize,
    pub stable: bool,
}

/// f is stable when [algebra, stabilizer] meets the stabilizer only in 0.
pub fn is_stable(alg: &QuotientAlgebra, f: &LinearForm) -> Result<StabilityReport> {
    let dim = alg.dim();
    let stab = stabilizer(alg, f)?;
    let mut vectors: Vec<Vec<BigRational>> = Vec::new();
    for k in stab.basis() {
        for a in 0..dim {
            let mut w = vec![BigRational::zero(); dim];
            let mut nonzero = false;
            for (j, kj) in k.iter().enumerate() {
                if kj.is_zero() {
                    continue;
                }
                if let Some((n, tgt)) = alg.bracket(a, j) {
                    w[tgt] += kj * BigRational::from_integer(n.into());
                    nonzero = true;
                }
            }
            if nonzero && w.iter().any(|x| !x.is_zero()) {
                vectors.push(w);
            }
        }
    }
    let bracket_span = Subspace::span(dim, &vectors);
    let inter = stab.intersect(&bracket_span)?;
    let intersection_dim = inter.dim();
    Ok(StabilityReport { stabilizer: stab, bracket_span, intersection_dim, stable: intersection_dim == 0 })
}

/// The Cartan vectors annihilated by every head span a space of dimension
/// rank − d, and it must sit inside the stabilizer of every special form.
/// Verified here on a few sampled coefficient vectors.
pub fn cartan_kernel_check(
    rs: &RootSystem,
    alg: &QuotientAlgebra,
    h: &HSequence,
    seed: u64,
) -> Result<bool> {
    if alg.kind() != QuotientKind::BorelQuotient {
        return Err(Error::Parameter("Cartan kernel lives in the Borel quotient".into()));
    }
    let l = rs.rank();
    let s = h.len();
    let kernel = if s == 0 {
        Subspace::full(l)
    } else {
        let rows: Vec<Vec<i64>> = h
            .thetas()
            .iter()
            .map(|&th| (0..l).map(|j| rs.cartan_eval(j, rs.root(th).coords())).collect())
            .collect();
        kernel_basis(&IntMatrix::from_i64_rows(&rows))
    };
    if kernel.dim() != l - h.d() {
        return Ok(false);
    }
    for t in 0..3u32 {
        let mut rng = trial_rng(seed, t);
        let coeffs: Vec<BigRational> = (0..s)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(1..=50u64))))
            .collect();
        let f = special_form(alg, h, &coeffs)?;
        let stab = stabilizer(alg, &f)?;
        for v in kernel.basis() {
            let mut embedded = v.clone();
            embedded.resize(alg.dim(), BigRational::zero());
            if !stab.contains(&embedded)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ranks of the blocks of a special form's matrix, with the expected
/// relations reported as flags (they can legitimately fail for special
/// coefficient choices, so violations are data, not errors).
#[derive(Clone, Debug)]
pub struct BlockRankReport {
    pub theta_rank: usize,
    pub psi_rank: usize,
    pub full_rank: usize,
    pub d: usize,
    pub t: usize,
    pub theta_rank_matches_d: bool,
    pub psi_rank_at_least_2t: bool,
    pub full_rank_at_least_2dt: bool,
    /// Root-against-root entries vanish away from pairs summing to a head.
    pub psi_supported_on_pairs: bool,
    /// Form values on those pairs equal structure constant × head coefficient.
    pub lambda_entries_match: bool,
}

impl BlockRankReport {
    pub fn all_ok(&self) -> bool {
        self.theta_rank_matches_d
            && self.psi_rank_at_least_2t
            && self.full_rank_at_least_2dt
            && self.psi_supported_on_pairs
            && self.lambda_entries_match
    }
}

pub fn block_rank_report(
    rs: &RootSystem,
    alg: &QuotientAlgebra,
    nc: &ChevalleyConstants,
    h: &HSequence,
    coeffs: &[BigRational],
) -> Result<BlockRankReport> {
    if nc.convention() != alg.convention() {
        return Err(Error::Parameter("constants and algebra use different conventions".into()));
    }
    let dec = form_decomposition(rs, alg, h, coeffs)?;
    let theta_rank = dec.theta_block.rank();
    let psi_rank = dec.psi_block.rank();
    let full_rank = dec.full.rank();
    let (d, t) = (h.d(), h.t());

    let ps = pair_set(rs, alg.e_subset(), h);
    let mut lambda_entries_match = true;
    for &(a, b, ref v) in &dec.lambda_entries {
        let sum = rs.add_idx(a, b).expect("pair sums to a root");
        let k = h.thetas().iter().position(|&th| th == sum).expect("pair sums to a head");
        let expected = &coeffs[k] * BigRational::from_integer(nc.n(a, b).into());
        if *v != expected {
            lambda_entries_match = false;
        }
    }

    let e_roots = alg.e_roots();
    let nh = alg.num_cartan();
    let mut psi_supported_on_pairs = true;
    for i in 0..e_roots.len() {
        for j in i + 1..e_roots.len() {
            let nonzero = !dec.psi_block.get(i, j).is_zero();
            let is_pair = ps.z_pairs.contains(&(e_roots[i], e_roots[j]));
            if nonzero != is_pair {
                psi_supported_on_pairs = false;
            }
        }
    }
    debug_assert_eq!(dec.full.rows(), nh + e_roots.len());

    Ok(BlockRankReport {
        theta_rank,
        psi_rank,
        full_rank,
        d,
        t,
        theta_rank_matches_d: theta_rank == d,
        psi_rank_at_least_2t: psi_rank >= 2 * t,
        full_rank_at_least_2dt: full_rank >= 2 * (d + t),
        psi_supported_on_pairs,
        lambda_entries_match,
    })
}
