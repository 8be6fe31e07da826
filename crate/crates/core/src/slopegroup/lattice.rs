//! Integer lattices in row Hermite normal form.
//!
//! Rows span the lattice; the HNF is the unique canonical basis (positive
//! pivots, entries above a pivot reduced into `[0, pivot)`), so lattice
//! equality is row-wise equality of the normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// A sublattice of ℤ^dim given by its HNF basis rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

/// Index of a sublattice: the order of the quotient group when finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Row-style Hermite normal form of a set of integer vectors.
fn hnf(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut rank = 0usize;
    for col in 0..dim {
        // eliminate below `rank` in this column by gcd steps
        loop {
            let mut best: Option<usize> = None;
            for i in rank..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(j) if rows[i][col].abs() < rows[j][col].abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(pivot) = best else { break };
            rows.swap(rank, pivot);
            let mut reduced_all = true;
            for i in rank + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][col], &rows[rank][col]);
                for c in 0..dim {
                    let sub = &q * &rows[rank][c];
                    rows[i][c] -= sub;
                }
                if !rows[i][col].is_zero() {
                    reduced_all = false;
                }
            }
            if reduced_all {
                break;
            }
        }
        if rank < rows.len() && !rows[rank][col].is_zero() {
            if rows[rank][col].is_negative() {
                for c in 0..dim {
                    rows[rank][c] = -rows[rank][c].clone();
                }
            }
            // reduce the entries above the pivot into [0, pivot)
            for i in 0..rank {
                let q = rows[i][col].div_floor(&rows[rank][col]);
                if !q.is_zero() {
                    for c in 0..dim {
                        let sub = &q * &rows[rank][c];
                        rows[i][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
    }
    rows.truncate(rank);
    rows
}

/// Quotient rounded to nearest (ties toward even), for gcd-style reduction.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

impl Lattice {
    /// The lattice generated by the given vectors in ℤ^dim.
    pub fn image(vectors: &[Vec<BigInt>], dim: usize) -> Result<Lattice> {
        for v in vectors {
            if v.len() != dim {
                return Err(Error::IncompatibleBases);
            }
        }
        Ok(Lattice {
            dim,
            rows: hnf(vectors.to_vec(), dim),
        })
    }

    pub fn zero(dim: usize) -> Lattice {
        Lattice {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Coordinates of `v` over the HNF basis, when `v` lies in the lattice.
    fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let col = row.iter().position(|x| !x.is_zero())?;
            let (q, r) = v[col].div_rem(&row[col]);
            if !r.is_zero() {
                return None;
            }
            for c in 0..self.dim {
                let sub = &q * &row[c];
                v[c] -= sub;
            }
            out.push(q);
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    pub fn member(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::IncompatibleBases);
        }
        Ok(self.coords(v).is_some())
    }

    /// Index `[self : sub]` for a sublattice `sub ⊆ self`.
    pub fn index_of(&self, sub: &Lattice) -> Result<LatticeIndex> {
        if sub.dim != self.dim {
            return Err(Error::IncompatibleBases);
        }
        let mut coeffs: Vec<Vec<BigInt>> = Vec::with_capacity(sub.rows.len());
        for row in &sub.rows {
            match self.coords(row) {
                Some(c) => coeffs.push(c),
                None => {
                    return Err(Error::BadParameter(
                        "index requires the second lattice to be a sublattice of the first".into(),
                    ))
                }
            }
        }
        if sub.rank() < self.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        // square coefficient matrix: index is |det|
        let d = det(coeffs);
        Ok(LatticeIndex::Finite(d.abs()))
    }

    /// Smallest lattice containing both.
    pub fn join(&self, other: &Lattice) -> Result<Lattice> {
        if other.dim != self.dim {
            return Err(Error::IncompatibleBases);
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Lattice {
            dim: self.dim,
            rows: hnf(rows, self.dim),
        })
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
