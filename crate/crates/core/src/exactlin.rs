//! Exact linear algebra over the integers and rationals: fraction-free rank,
//! kernels, and canonical echelon-form subspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix with arbitrary-precision integer entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Clears a rational matrix to an integer one by a single global scaling
    /// (the lcm of all denominators), which leaves the rank unchanged.
    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Self {
        let mut scale = BigInt::one();
        for row in rows {
            for x in row {
                scale = scale.lcm(x.denom());
            }
        }
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|x| (x * &scale).to_integer()).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    /// Exact rank over the rationals by Bareiss fraction-free elimination.
    pub fn rank(&self) -> usize {
        let r = self.rank_bareiss();
        #[cfg(debug_assertions)]
        {
            // Residue cross-check: rank mod p never exceeds the rational rank,
            // and for large primes the max over two of them recovers it.
            let r1 = self.rank_mod(2_305_843_009_213_693_951); // 2^61 - 1
            let r2 = self.rank_mod(9_223_372_036_854_775_783); // largest prime < 2^63
            debug_assert!(r1 <= r && r2 <= r && r1.max(r2) == r, "modular rank mismatch");
        }
        r
    }

    fn rank_bareiss(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| self.data[i * cols..(i + 1) * cols].to_vec())
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = num / &prev; // exact by the Bareiss identity
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    #[cfg(debug_assertions)]
    fn rank_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let mut v = self.get(i, j) % &pb;
                        if v.is_negative() {
                            v += &pb;
                        }
                        u64::try_from(v).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        };
        let mut r = 0;
        for c in 0..self.cols {
            let Some(piv) = (r..self.rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = powmod(m[r][c], p - 2);
            for i in r + 1..self.rows {
                if m[i][c] != 0 {
                    let f = mulmod(m[i][c], inv);
                    for j in c..self.cols {
                        let sub = mulmod(f, m[r][j]);
                        m[i][j] = (m[i][j] + p - sub) % p;
                    }
                }
            }
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }
}

/// A rational subspace of ℚ^ambient in canonical reduced row-echelon form,
/// so equal subspaces are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<BigRational>>,
}

fn rref(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in &mut rows[r] {
            *x /= &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn span(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "ambient mismatch");
        Subspace { ambient, basis: rref(vectors.to_vec()) }
    }

    pub fn span_i64(ambient: usize, vectors: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::span(ambient, &rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Parameter(format!(
                "vector length {} does not match ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(rref(rows).len() == self.basis.len())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Parameter("ambient dimension mismatch in sum".into()));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace { ambient: self.ambient, basis: rref(rows) })
    }

    /// Intersection via the kernel of the stacked bases: coefficients (x, y)
    /// with x·A = y·B give the common vectors x·A.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Parameter("ambient dimension mismatch in intersect".into()));
        }
        let (k, m) = (self.basis.len(), other.basis.len());
        if k == 0 || m == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Columns of the stacked matrix are the coefficient unknowns.
        let stacked: Vec<Vec<BigRational>> = (0..self.ambient)
            .map(|j| {
                (0..k + m)
                    .map(|i| {
                        if i < k {
                            self.basis[i][j].clone()
                        } else {
                            -other.basis[i - k][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = kernel_basis(&IntMatrix::from_rational_rows(&stacked));
        let vectors: Vec<Vec<BigRational>> = ker
            .basis
            .iter()
            .map(|coef| {
                (0..self.ambient)
                    .map(|j| {
                        (0..k).map(|i| &coef[i] * &self.basis[i][j]).sum::<BigRational>()
                    })
                    .collect()
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }
}

/// Canonical basis of the right kernel {x : m·x = 0}.
pub fn kernel_basis(m: &IntMatrix) -> Subspace {
    let cols = m.cols();
    if m.rows() == 0 || cols == 0 {
        return Subspace::full(cols);
    }
    let rows: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| (0..cols).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let red = rref(rows);
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in &red {
        while c < cols && row[c].is_zero() {
            c += 1;
        }
        if c < cols {
            pivots.push(c);
            c += 1;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|j| !pivots.contains(j)).collect();
    let vectors: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[i][fc].clone();
            }
            v
        })
        .collect();
    Subspace::span(cols, &vectors)
}
