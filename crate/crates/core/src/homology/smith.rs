//! Smith normal form over the integers.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! arbitrary-precision integers if any intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

trait Coeff: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// `a − q·b` or `None` on overflow.
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self>;
    fn quotient(a: &Self, b: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| a.checked_sub(p))
    }
    fn quotient(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sub_mul(a: &Self, q: &Self, b: &Self) -> Option<Self> {
        Some(a - q * b)
    }
    fn quotient(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalises the matrix by unimodular row and column operations and
/// returns the diagonal, or `None` on overflow.
fn diagonalise<T: Coeff>(mut m: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        'scan: for (i, row) in m.iter().enumerate().skip(t) {
            for (j, e) in row.iter().enumerate().skip(t) {
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !e.magnitude_lt(&m[bi][bj]) => {}
                    _ => {
                        best = Some((i, j));
                        if e.is_unit() {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in (t + 1)..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = T::quotient(&m[i][t], &m[t][t]);
                let (head, tail) = m.split_at_mut(i);
                let pivot_row = &head[t];
                let target = &mut tail[0];
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        target[j] = T::sub_mul(&target[j], &q, &pivot_row[j])?;
                    }
                }
                if !target[t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = T::quotient(&m[t][j], &m[t][t]);
                for row in m.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = T::sub_mul(&row[j], &q, &row[t])?;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // A nonzero remainder is smaller than the pivot: move it in.
            let mut swap_in: Option<(usize, usize)> = None;
            for i in (t + 1)..rows {
                if !m[i][t].is_zero() && swap_in.is_none_or(|(a, b)| m[i][t].magnitude_lt(&m[a][b])) {
                    swap_in = Some((i, t));
                }
            }
            for j in (t + 1)..cols {
                if !m[t][j].is_zero() && swap_in.is_none_or(|(a, b)| m[t][j].magnitude_lt(&m[a][b])) {
                    swap_in = Some((t, j));
                }
            }
            match swap_in {
                Some((i, _)) if i != t => m.swap(t, i),
                Some((_, j)) => {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    Some(diag)
}

/// Smith form of a matrix given as rows of small integers.
pub fn smith_form(rows: &[Vec<i64>], cols: usize) -> SmithForm {
    let diag: Vec<BigInt> = match diagonalise::<i64>(rows.to_vec(), cols) {
        Some(d) => d.iter().map(Coeff::to_big).collect(),
        None => {
            let big = rows
                .iter()
                .map(|r| r.iter().map(|&v| <BigInt as Coeff>::from_i64(v)).collect())
                .collect();
            diagonalise::<BigInt>(big, cols).expect("big integer arithmetic cannot overflow")
        }
    };
    let mut factors: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).filter(|d| !Zero::is_zero(d)).collect();
    let rank = factors.len();
    // Normalise the diagonal into a divisibility chain.
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            let g = factors[i].gcd(&factors[j]);
            let l = factors[i].lcm(&factors[j]);
            factors[i] = g;
            factors[j] = l;
        }
    }
    let torsion = factors
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion coefficient exceeds u64"))
        .collect();
    SmithForm { rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_normalisation() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith_form(&m, 2), SmithForm { rank: 2, torsion: vec![6] });
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_form(&m, 3), SmithForm { rank: 3, torsion: vec![2, 6, 12] });
    }

    #[test]
    fn zero_and_empty_matrices() {
        assert_eq!(smith_form(&[], 0), SmithForm { rank: 0, torsion: vec![] });
        assert_eq!(smith_form(&[vec![0, 0]], 2), SmithForm { rank: 0, torsion: vec![] });
    }

    #[test]
    fn big_entries_fall_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
        // det = big(big-2) - (big-1)^2 = -1, so the form is the identity.
        assert_eq!(smith_form(&m, 2), SmithForm { rank: 2, torsion: vec![] });
    }
}
