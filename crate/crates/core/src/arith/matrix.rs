/// A small square matrix over `Z/m`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    n: usize,
    modulus: u64,
    data: Vec<u64>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl ModMatrix {
    pub fn zero(n: usize, modulus: u64) -> Self {
        ModMatrix {
            n,
            modulus,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zero(n, modulus);
        for i in 0..n {
            m.set(i, i, 1 % modulus);
        }
        m
    }

    pub fn from_entries(n: usize, modulus: u64, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        ModMatrix {
            n,
            modulus,
            data: entries.into_iter().map(|x| x % modulus).collect(),
        }
    }

    /// Builds from signed integer rows, reducing each entry.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(modulus as i64) as u64);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v % self.modulus;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n, self.modulus);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.modulus, other.modulus);
        let m = self.modulus;
        let mut out = Self::zero(self.n, m);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = 0u64;
                for k in 0..self.n {
                    acc = (acc + mulmod(self.get(i, k), other.get(k, j), m)) % m;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0u64, |acc, k| (acc + mulmod(self.get(i, k), v[k] % m, m)) % m)
            })
            .collect()
    }

    /// Determinant by cofactor expansion (n is at most 8 here).
    pub fn det(&self) -> u64 {
        fn rec(a: &ModMatrix, row: usize, cols: &mut Vec<usize>) -> u64 {
            let m = a.modulus;
            if cols.is_empty() {
                return 1 % m;
            }
            let mut acc = 0u64;
            for idx in 0..cols.len() {
                let c = cols.remove(idx);
                let v = a.get(row, c);
                if v != 0 {
                    let minor = rec(a, row + 1, cols);
                    let term = mulmod(v, minor, m);
                    acc = if idx % 2 == 0 {
                        (acc + term) % m
                    } else {
                        (acc + m - term) % m
                    };
                }
                cols.insert(idx, c);
            }
            acc
        }
        rec(self, 0, &mut (0..self.n).collect())
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det(), self.modulus) == 1
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.modulus)
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let m = self.modulus;
        let mut a = self.clone();
        let mut inv = Self::identity(n, m);
        for col in 0..n {
            let (pivot_row, pivot_inv) = (col..n)
                .find_map(|r| inv_mod(a.get(r, col), m).map(|iv| (r, iv)))?;
            if pivot_row != col {
                for j in 0..n {
                    a.data.swap(pivot_row * n + j, col * n + j);
                    inv.data.swap(pivot_row * n + j, col * n + j);
                }
            }
            for j in 0..n {
                a.set(col, j, mulmod(a.get(col, j), pivot_inv, m));
                inv.set(col, j, mulmod(inv.get(col, j), pivot_inv, m));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let av = (a.get(r, j) + m - mulmod(factor, a.get(col, j), m)) % m;
                    a.set(r, j, av);
                    let iv = (inv.get(r, j) + m - mulmod(factor, inv.get(col, j), m)) % m;
                    inv.set(r, j, iv);
                }
            }
        }
        Some(inv)
    }

    /// Rows as signed vectors, for JSON output.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let a = ModMatrix::from_rows(&[vec![2, -1], vec![-1, -1]], 27);
        assert_eq!(a.det(), 24); // -3 mod 27
        assert!(!a.is_invertible());
        let b = ModMatrix::from_rows(&[vec![2, -1], vec![-1, -1]], 16);
        let bi = b.inverse().unwrap();
        assert!(b.mul(&bi).is_identity());
        assert!(bi.mul(&b).is_identity());
        let sing = ModMatrix::from_rows(&[vec![2, 0], vec![0, 1]], 8);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn inv_mod_small() {
        assert_eq!(inv_mod(3, 32), Some(11));
        assert_eq!(inv_mod(2, 32), None);
        assert_eq!(inv_mod(0, 1), Some(0));
    }
}
