//! Prime-field linear algebra for the Burnside–Dixon character table
//! computation: class structure matrices, simultaneous eigenspace
//! splitting, and the degree/value recovery mod p.

use super::conjugacy::ConjugacyData;
use super::group::FiniteGroup;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
    pub fn from_usize(self, a: usize) -> u64 {
        a as u64 % self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod conductor)` with `p > 2 |G|`.
pub(crate) fn choose_prime(conductor: usize, order: usize) -> u64 {
    let m = conductor as u64;
    let mut p = m + 1;
    while p <= 2 * order as u64 || !is_prime(p) {
        p += m;
    }
    p
}

/// An element of exact multiplicative order `m` in `F_p` (`m | p - 1`).
pub(crate) fn primitive_root_of_unity(fp: Fp, m: u64) -> u64 {
    let prime_factors: Vec<u64> = {
        let mut fs = Vec::new();
        let mut n = m;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                fs.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            fs.push(n);
        }
        fs
    };
    let cofactor = (fp.p - 1) / m;
    for a in 2..fp.p {
        let z = fp.pow(a, cofactor);
        if prime_factors.iter().all(|&q| fp.pow(z, m / q) != 1) {
            return z;
        }
    }
    1
}

/// `M_j[i][k] = #{x ∈ C_i : x^-1 z_k ∈ C_j}` for a fixed `z_k ∈ C_k`,
/// i.e. the structure constants of multiplication by the j-th class sum.
pub(crate) fn class_matrix(group: &FiniteGroup, cd: &ConjugacyData, j: usize, fp: Fp) -> Vec<Vec<u64>> {
    let r = cd.len();
    let mut m = vec![vec![0u64; r]; r];
    for k in 0..r {
        let z = cd.rep(k);
        for x in group.elements() {
            if cd.class_of(group.mul(group.inv(x), z)) == j {
                let i = cd.class_of(x);
                m[i][k] += 1;
            }
        }
    }
    for row in &mut m {
        for v in row.iter_mut() {
            *v %= fp.p;
        }
    }
    m
}

/// A subspace of `F_p^r` kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub(crate) struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(r: usize) -> Self {
        let basis = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
        Subspace { basis, pivots: (0..r).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn from_vectors(vectors: Vec<Vec<u64>>, fp: Fp) -> Self {
        let (basis, pivots) = rref(vectors, fp);
        Subspace { basis, pivots }
    }
}

/// Row-reduces and drops zero rows.
pub(crate) fn rref(mut rows: Vec<Vec<u64>>, fp: Fp) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = fp.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = fp.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (a, &b) in row.iter_mut().zip(&pivot_row) {
                    *a = fp.sub(*a, fp.mul(f, b));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Null space of a square matrix, as a list of column vectors.
fn null_space(a: &[Vec<u64>], fp: Fp) -> Vec<Vec<u64>> {
    let n = a.len();
    let (rows, pivots) = rref(a.to_vec(), fp);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = fp.sub(0, row[f]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
fn char_poly(a: &[Vec<u64>], fp: Fp) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else { continue };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = fp.inv(h[col + 1][col]);
        for i in col + 2..n {
            let f = fp.mul(h[i][col], inv);
            if f == 0 {
                continue;
            }
            // row_i -= f row_{col+1}; col_{col+1} += f col_i
            for c in 0..n {
                let t = fp.mul(f, h[col + 1][c]);
                h[i][c] = fp.sub(h[i][c], t);
            }
            for row in h.iter_mut() {
                let t = fp.mul(f, row[i]);
                row[col + 1] = fp.add(row[col + 1], t);
            }
        }
    }
    // p_k: char poly of the leading k×k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let hkk = h[k - 1][k - 1];
        let prev = &polys[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = fp.add(pk[d + 1], c);
            pk[d] = fp.sub(pk[d], fp.mul(hkk, c));
        }
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = fp.mul(prod, h[i][i - 1]);
            let coef = fp.mul(h[i - 1][k - 1], prod);
            if coef != 0 {
                for (d, &c) in polys[i - 1].iter().enumerate() {
                    pk[d] = fp.sub(pk[d], fp.mul(coef, c));
                }
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

fn eval_poly(poly: &[u64], x: u64, fp: Fp) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, x), c))
}

/// Splits `space` into eigenspaces of `m` (which must leave it invariant).
/// Returns `None` when the eigenspaces do not span the space, i.e. `m`
/// is not diagonalizable over `F_p` on it.
pub(crate) fn split(space: &Subspace, m: &[Vec<u64>], fp: Fp) -> Option<Vec<Subspace>> {
    let d = space.dim();
    if d == 1 {
        return Some(vec![space.clone()]);
    }
    let r = m.len();
    // restricted[a][b]: coordinate a of m · basis_b
    let mut restricted = vec![vec![0u64; d]; d];
    for (b, v) in space.basis.iter().enumerate() {
        let img: Vec<u64> = (0..r).map(|i| (0..r).fold(0, |acc, k| fp.add(acc, fp.mul(m[i][k], v[k])))).collect();
        for (a, &pc) in space.pivots.iter().enumerate() {
            restricted[a][b] = img[pc];
        }
    }
    let poly = char_poly(&restricted, fp);
    let mut pieces = Vec::new();
    let mut total = 0;
    for lambda in 0..fp.p {
        if eval_poly(&poly, lambda, fp) != 0 {
            continue;
        }
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = fp.sub(row[i], lambda);
        }
        let kernel = null_space(&shifted, fp);
        total += kernel.len();
        let vectors = kernel
            .iter()
            .map(|coords| {
                (0..r)
                    .map(|i| coords.iter().zip(&space.basis).fold(0, |acc, (&c, v)| fp.add(acc, fp.mul(c, v[i]))))
                    .collect()
            })
            .collect();
        pieces.push(Subspace::from_vectors(vectors, fp));
        if total == d {
            break;
        }
    }
    (total == d).then_some(pieces)
}
