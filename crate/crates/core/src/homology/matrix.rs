use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![BTreeMap::new(); cols] }
    }

    pub fn from_columns(rows: usize, cols: Vec<BTreeMap<usize, BigInt>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let ncols = dense.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, ncols);
        for (i, row) in dense.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.add(i, j, &BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, BigInt> {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.cols[j].get(&i).cloned().unwrap_or_default()
    }

    /// Adds `v` to entry `(i, j)`, dropping it if it becomes zero.
    pub fn add(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let e = self.cols[j].entry(i).or_default();
        *e += v;
        if e.is_zero() {
            self.cols[j].remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let mut out = SparseMatrix::zeros(self.rows, other.cols());
        for (j, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    out.add(*i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn identity(n: usize) -> SparseMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add(i, i, &BigInt::one());
        }
        m
    }
}

/// Diagonal of the Smith normal form: the invariant factors
/// `d_1 | d_2 | … | d_r`, all positive, `r` the rank.
pub fn smith_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    // row-major working copy plus column occupancy
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (j, col) in m.cols.iter().enumerate() {
        for (i, v) in col {
            rows[*i].insert(j, v.clone());
            col_rows[j].insert(*i);
        }
    }
    let mut diagonal = Vec::new();
    let mut live_rows: BTreeSet<usize> = (0..m.rows()).filter(|&i| !rows[i].is_empty()).collect();
    while let Some((r, c)) = choose_pivot(&rows, &col_rows, &live_rows) {
        loop {
            // clear column c below/above the pivot with row operations
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let a = rows[r][&c].clone();
                let b = match rows[i].get(&c) {
                    Some(b) => b.clone(),
                    None => continue,
                };
                if (&b % &a).is_zero() {
                    let q = &b / &a;
                    row_axpy(&mut rows, &mut col_rows, i, r, &(-q));
                } else {
                    // replace (row r, row i) by a unimodular combination
                    // with gcd(a, b) in the pivot position
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let old_r = rows[r].clone();
                    let old_i = rows[i].clone();
                    let new_r = combine(&old_r, &x, &old_i, &y);
                    let new_i = combine(&old_r, &(-&bg), &old_i, &ag);
                    set_row(&mut rows, &mut col_rows, r, new_r);
                    set_row(&mut rows, &mut col_rows, i, new_i);
                }
            }
            // clear row r with column operations; they only touch row r
            // because column c is now zero off the pivot
            let a = rows[r][&c].clone();
            let entries: Vec<(usize, BigInt)> = rows[r].iter().filter(|(&j, _)| j != c).map(|(&j, v)| (j, v.clone())).collect();
            let mut refilled = false;
            for (j, b) in entries {
                if (&b % &a).is_zero() {
                    rows[r].remove(&j);
                    col_rows[j].remove(&r);
                } else {
                    // column combination of c and j; it changes column c
                    // in every row where column j is non-zero
                    let a = rows[r][&c].clone();
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let rows_j: Vec<usize> = col_rows[j].iter().copied().collect();
                    let rows_c: Vec<usize> = col_rows[c].iter().copied().collect();
                    let touched: BTreeSet<usize> = rows_j.into_iter().chain(rows_c).collect();
                    for i in touched {
                        let vc = rows[i].get(&c).cloned().unwrap_or_default();
                        let vj = rows[i].get(&j).cloned().unwrap_or_default();
                        let new_c = &vc * &x + &vj * &y;
                        let new_j = -&vc * &bg + &vj * &ag;
                        set_entry(&mut rows, &mut col_rows, i, c, new_c);
                        set_entry(&mut rows, &mut col_rows, i, j, new_j);
                    }
                    refilled = true;
                    break;
                }
            }
            if !refilled && rows[r].len() == 1 && col_rows[c].len() == 1 {
                break;
            }
        }
        let a = rows[r].remove(&c).expect("pivot present");
        col_rows[c].remove(&r);
        live_rows.remove(&r);
        diagonal.push(a.abs());
        live_rows.retain(|&i| !rows[i].is_empty());
    }
    normalize_diagonal(diagonal)
}

fn set_entry(rows: &mut [BTreeMap<usize, BigInt>], col_rows: &mut [BTreeSet<usize>], i: usize, j: usize, v: BigInt) {
    if v.is_zero() {
        rows[i].remove(&j);
        col_rows[j].remove(&i);
    } else {
        rows[i].insert(j, v);
        col_rows[j].insert(i);
    }
}

fn set_row(rows: &mut [BTreeMap<usize, BigInt>], col_rows: &mut [BTreeSet<usize>], i: usize, new: BTreeMap<usize, BigInt>) {
    for j in rows[i].keys() {
        col_rows[*j].remove(&i);
    }
    for j in new.keys() {
        col_rows[*j].insert(i);
    }
    rows[i] = new;
}

fn combine(a: &BTreeMap<usize, BigInt>, x: &BigInt, b: &BTreeMap<usize, BigInt>, y: &BigInt) -> BTreeMap<usize, BigInt> {
    let mut out = BTreeMap::new();
    for (j, v) in a {
        out.insert(*j, v * x);
    }
    for (j, v) in b {
        *out.entry(*j).or_insert_with(BigInt::zero) += v * y;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `row_i += q · row_r`
fn row_axpy(rows: &mut [BTreeMap<usize, BigInt>], col_rows: &mut [BTreeSet<usize>], i: usize, r: usize, q: &BigInt) {
    let src: Vec<(usize, BigInt)> = rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
    for (j, v) in src {
        let cur = rows[i].get(&j).cloned().unwrap_or_default();
        set_entry(rows, col_rows, i, j, cur + &v * q);
    }
}

/// Smallest absolute value first, then the fewest fill-in candidates.
fn choose_pivot(
    rows: &[BTreeMap<usize, BigInt>],
    col_rows: &[BTreeSet<usize>],
    live_rows: &BTreeSet<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for &i in live_rows {
        let rl = rows[i].len() - 1;
        for (&j, v) in &rows[i] {
            let a = v.abs();
            let cost = rl * (col_rows[j].len() - 1);
            let better = match &best {
                None => true,
                Some((ba, bc, _, _)) => a < *ba || (a == *ba && cost < *bc),
            };
            if better {
                let unit_cost0 = a.is_one() && cost == 0;
                best = Some((a, cost, i, j));
                if unit_cost0 {
                    return best.map(|b| (b.2, b.3));
                }
            }
        }
    }
    best.map(|b| (b.2, b.3))
}

/// Turns an arbitrary diagonal into the divisibility chain with the same
/// cokernel.
fn normalize_diagonal(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.retain(|x| !x.is_zero());
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

/// Rank over Q by fraction-free row elimination with primitive rows.
/// Shares no code with [`smith_invariants`].
pub fn rational_rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    for (j, col) in m.cols.iter().enumerate() {
        for (i, v) in col {
            rows[*i].insert(j, v.clone());
        }
    }
    rows.retain(|r| !r.is_empty());
    // pivot column -> reduced row with that leading column
    let mut basis: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else { break };
            match basis.get(&lead) {
                None => {
                    make_primitive(&mut row);
                    basis.insert(lead, row);
                    break;
                }
                Some(piv) => {
                    // row := p·row − a·piv, cancelling the leading entry
                    let p = piv[&lead].clone();
                    let a = row[&lead].clone();
                    let g = p.gcd(&a);
                    let (p, a) = (&p / &g, &a / &g);
                    let mut next = BTreeMap::new();
                    for (j, v) in &row {
                        next.insert(*j, v * &p);
                    }
                    for (j, v) in piv {
                        *next.entry(*j).or_insert_with(BigInt::zero) -= v * &a;
                    }
                    next.retain(|_, v| !v.is_zero());
                    make_primitive(&mut next);
                    row = next;
                }
            }
        }
    }
    basis.len()
}

fn make_primitive(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g > BigInt::one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small() {
        let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_invariants(&m), ints(&[2, 6, 12]));
        assert_eq!(rational_rank(&m), 3);
    }

    #[test]
    fn snf_needs_gcd_steps() {
        let m = SparseMatrix::from_dense(&[vec![2, 3], vec![0, 0]]);
        assert_eq!(smith_invariants(&m), ints(&[1]));
        let m = SparseMatrix::from_dense(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(smith_invariants(&m), ints(&[2, 12]));
    }

    #[test]
    fn rank_deficient() {
        let m = SparseMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rational_rank(&m), 2);
        assert_eq!(smith_invariants(&m).len(), 2);
        assert!(SparseMatrix::zeros(3, 2).is_zero());
        assert!(smith_invariants(&SparseMatrix::zeros(3, 2)).is_empty());
    }
}
