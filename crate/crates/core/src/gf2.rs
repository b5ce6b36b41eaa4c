//! Bit-packed vectors and Gaussian elimination over GF(2).

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

const LIMB: usize = 64;

/// A vector over GF(2), packed into 64-bit limbs. Unused high bits of the
/// last limb are always zero, so the derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    limbs: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            limbs: vec![0; len.div_ceil(LIMB)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.limbs[i / LIMB] >> (i % LIMB) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % LIMB);
        if value {
            self.limbs[i / LIMB] |= mask;
        } else {
            self.limbs[i / LIMB] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.limbs[i / LIMB] ^= 1u64 << (i % LIMB);
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    /// Standard dot product `Σ x_i y_i`.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.limbs
            .iter()
            .zip(&other.limbs)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Symplectic pairing for coordinates ordered as (α1, β1, α2, β2, ...):
    /// `Σ_i x_{α_i} y_{β_i} + x_{β_i} y_{α_i}`.
    pub fn symplectic(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        const EVEN: u64 = 0x5555_5555_5555_5555;
        self.limbs
            .iter()
            .zip(&other.limbs)
            .fold(0, |acc, (&a, &b)| {
                let swapped = ((b & EVEN) << 1) | ((b >> 1) & EVEN);
                acc ^ (a & swapped).count_ones()
            })
            & 1
            == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

impl BitXorAssign<&Gf2Vec> for Gf2Vec {
    fn bitxor_assign(&mut self, rhs: &Gf2Vec) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *a ^= b;
        }
    }
}

impl BitXor<&Gf2Vec> for Gf2Vec {
    type Output = Gf2Vec;

    fn bitxor(mut self, rhs: &Gf2Vec) -> Gf2Vec {
        self ^= rhs;
        self
    }
}

/// Row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Self { cols, rows }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| Gf2Vec::unit(n, i)).collect())
    }

    pub fn push_row(&mut self, row: Gf2Vec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vec] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &Gf2Vec) -> Gf2Vec {
        Gf2Vec::from_bits(self.rows.iter().map(|r| r.dot(x)))
    }

    pub fn rank(&self) -> usize {
        let mut basis: Vec<Gf2Vec> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            for b in &basis {
                if r.get(b.first_one().unwrap()) {
                    r ^= b;
                }
            }
            if let Some(p) = r.first_one() {
                for b in basis.iter_mut() {
                    if b.get(p) {
                        *b ^= &r;
                    }
                }
                basis.push(r);
            }
        }
        basis.len()
    }
}

/// Outcome of [`gf2_solve`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Gf2Solution {
    /// A solution `x` with `Ax = b`; free variables are set to zero.
    Solution(Gf2Vec),
    /// Sorted row indices whose rows sum to zero while their right-hand
    /// sides sum to one.
    Inconsistent(Vec<usize>),
}

impl Gf2Solution {
    pub fn solution(&self) -> Option<&Gf2Vec> {
        match self {
            Gf2Solution::Solution(x) => Some(x),
            Gf2Solution::Inconsistent(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&[usize]> {
        match self {
            Gf2Solution::Solution(_) => None,
            Gf2Solution::Inconsistent(rows) => Some(rows),
        }
    }
}

/// Solves `Ax = b` by elimination that records which original rows each
/// working row is built from.
pub fn gf2_solve(a: &Gf2Matrix, b: &Gf2Vec) -> Gf2Solution {
    assert_eq!(a.nrows(), b.len(), "rhs length must match row count");
    let m = a.nrows();

    struct Row {
        coeffs: Gf2Vec,
        rhs: bool,
        combo: Gf2Vec,
    }

    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for (i, row) in a.rows().iter().enumerate() {
        let mut r = Row {
            coeffs: row.clone(),
            rhs: b.get(i),
            combo: Gf2Vec::unit(m, i),
        };
        for (col, p) in &pivots {
            if r.coeffs.get(*col) {
                r.coeffs ^= &p.coeffs;
                r.rhs ^= p.rhs;
                r.combo ^= &p.combo;
            }
        }
        match r.coeffs.first_one() {
            Some(col) => {
                for (_, p) in pivots.iter_mut() {
                    if p.coeffs.get(col) {
                        p.coeffs ^= &r.coeffs;
                        p.rhs ^= r.rhs;
                        p.combo ^= &r.combo;
                    }
                }
                pivots.push((col, r));
            }
            None if r.rhs => return Gf2Solution::Inconsistent(r.combo.ones().collect()),
            None => {}
        }
    }

    let mut x = Gf2Vec::zeros(a.ncols());
    for (col, p) in &pivots {
        x.set(*col, p.rhs);
    }
    Gf2Solution::Solution(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> Gf2Vec {
        Gf2Vec::from_bits(bits.iter().map(|&b| b == 1))
    }

    #[test]
    fn identity_system() {
        let b = v(&[1, 0, 1, 1]);
        assert_eq!(
            gf2_solve(&Gf2Matrix::identity(4), &b),
            Gf2Solution::Solution(b)
        );
    }

    #[test]
    fn duplicate_rows_with_different_rhs() {
        let a = Gf2Matrix::from_rows(2, vec![v(&[1, 0]), v(&[1, 0])]);
        assert_eq!(
            gf2_solve(&a, &v(&[1, 0])),
            Gf2Solution::Inconsistent(vec![0, 1])
        );
    }

    #[test]
    fn empty_system_is_consistent() {
        let a = Gf2Matrix::new(3);
        assert_eq!(
            gf2_solve(&a, &Gf2Vec::zeros(0)),
            Gf2Solution::Solution(Gf2Vec::zeros(3))
        );
    }

    #[test]
    fn zero_row_with_one_rhs() {
        let a = Gf2Matrix::from_rows(2, vec![v(&[1, 1]), v(&[0, 0])]);
        assert_eq!(
            gf2_solve(&a, &v(&[0, 1])),
            Gf2Solution::Inconsistent(vec![1])
        );
    }

    #[test]
    fn symplectic_pairing() {
        // α1·β1 = 1, α1·α2 = 0, β1+β2 · β1 = 0
        assert!(v(&[1, 0, 0, 0]).symplectic(&v(&[0, 1, 0, 0])));
        assert!(!v(&[1, 0, 0, 0]).symplectic(&v(&[0, 0, 1, 0])));
        assert!(!v(&[0, 1, 0, 1]).symplectic(&v(&[0, 1, 0, 0])));
        let long = Gf2Vec::unit(130, 128);
        assert!(long.symplectic(&Gf2Vec::unit(130, 129)));
    }

    #[test]
    fn bits_past_64() {
        let mut x = Gf2Vec::zeros(100);
        x.set(70, true);
        x.flip(99);
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![70, 99]);
        assert_eq!(x.count_ones(), 2);
    }

    #[test]
    fn rank_counts_independent_rows() {
        let a = Gf2Matrix::from_rows(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 1])]);
        assert_eq!(a.rank(), 2);
    }
}
