//! Exact linear algebra over the prime field F_p.
//!
//! Everything here works on plain `Vec<u64>` rows with entries already
//! reduced modulo `p`. Ranks and memberships are exact; there is no
//! tolerance anywhere.

/// a^e mod p by square and multiply.
pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    a %= p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue, via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A row space kept in reduced row echelon form.
///
/// `insert` returns whether the vector enlarged the space, which makes
/// this double as an incremental rank computation and a membership test.
#[derive(Debug, Clone)]
pub struct RowSpace {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(p: u64, cols: usize) -> Self {
        RowSpace {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Reduce `v` against the stored rows; the result has zeros in every
    /// pivot column.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let mut out: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = out[piv];
            if c != 0 {
                let mul = self.p - c;
                for (o, r) in out.iter_mut().zip(row) {
                    *o = (*o + mul * r) % self.p;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Insert a vector, returning true when it was independent of the
    /// current rows.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut red = self.reduce(v);
        let Some(piv) = red.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv_mod(red[piv], self.p);
        for x in red.iter_mut() {
            *x = *x * scale % self.p;
        }
        // Clear the new pivot column from the existing rows to stay reduced.
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            let c = row[piv];
            if c != 0 {
                let mul = self.p - c;
                for (r, n) in row.iter_mut().zip(&red) {
                    *r = (*r + mul * n) % self.p;
                }
            }
        }
        let at = self.pivots.partition_point(|&x| x < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, red);
        true
    }

    /// Two row spaces are equal iff they have the same dimension and each
    /// spans the other.
    pub fn same_span(&self, other: &RowSpace) -> bool {
        self.dim() == other.dim() && other.rows.iter().all(|r| self.contains(r))
    }
}

/// Rank of an iterator of rows.
pub fn rank<I>(p: u64, cols: usize, rows: I) -> usize
where
    I: IntoIterator,
    I::Item: AsRef<[u64]>,
{
    let mut space = RowSpace::new(p, cols);
    for r in rows {
        space.insert(r.as_ref());
    }
    space.dim()
}

/// Solve the square system `m x = rhs` mod p by Gaussian elimination on a
/// scratch copy. Returns `None` when the matrix is singular. `m` is row
/// major with `n` rows of length `n`.
pub fn solve_square(p: u64, n: usize, m: &[u64], rhs: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(m.len(), n * n);
    assert_eq!(rhs.len(), n);
    let mut a = m.to_vec();
    let mut b = rhs.to_vec();
    solve_square_in_place(p, n, &mut a, &mut b).then_some(b)
}

/// In-place variant for hot enumeration loops: clobbers `a`, leaves the
/// solution in `b`. Returns false when singular.
pub fn solve_square_in_place(p: u64, n: usize, a: &mut [u64], b: &mut [u64]) -> bool {
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a[r * n + col].is_multiple_of(p)) else {
            return false;
        };
        if pivot_row != col {
            for c in 0..n {
                a.swap(pivot_row * n + c, col * n + c);
            }
            b.swap(pivot_row, col);
        }
        let inv = inv_mod(a[col * n + col] % p, p);
        for c in col..n {
            a[col * n + c] = a[col * n + c] % p * inv % p;
        }
        b[col] = b[col] % p * inv % p;
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r * n + col] % p;
            if factor == 0 {
                continue;
            }
            let mul = p - factor;
            for c in col..n {
                a[r * n + c] = (a[r * n + c] + mul * a[col * n + c]) % p;
            }
            b[r] = (b[r] + mul * b[col]) % p;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_inverse() {
        for p in [3u64, 5, 7, 13] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn rank_and_membership() {
        // Rows over F_3: (1,2,0), (0,1,1), and their sum.
        let mut s = RowSpace::new(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1])); // (1,2,0)+(0,1,1) = (1,0,1)
        assert_eq!(s.dim(), 2);
        // 2*(1,2,0) + (0,1,1) = (2,2,1) mod 3.
        assert!(s.contains(&[2, 2, 1]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn solve_invertible_and_singular() {
        // Over F_5: [[1,2],[3,4]] is invertible (det = -2).
        let x = solve_square(5, 2, &[1, 2, 3, 4], &[1, 0]).unwrap();
        // Verify m x = rhs.
        assert_eq!((x[0] + 2 * x[1]) % 5, 1);
        assert_eq!((3 * x[0] + 4 * x[1]) % 5, 0);
        // [[1,2],[2,4]] is singular.
        assert!(solve_square(5, 2, &[1, 2, 2, 4], &[1, 0]).is_none());
    }

    #[test]
    fn same_span_detects_equality() {
        let mut a = RowSpace::new(3, 3);
        a.insert(&[1, 1, 0]);
        a.insert(&[0, 0, 1]);
        let mut b = RowSpace::new(3, 3);
        b.insert(&[2, 2, 1]);
        b.insert(&[0, 0, 2]);
        assert!(a.same_span(&b));
        let mut c = RowSpace::new(3, 3);
        c.insert(&[1, 0, 0]);
        c.insert(&[0, 0, 1]);
        assert!(!a.same_span(&c));
    }
}
