//! Exact simplicial (co)homology via Smith normal forms, chain maps of
//! group elements, Euler characteristics and rational K-ranks.

mod matrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcomplex::{compute_orbits, GSimplicialComplex, SimplicialComplex};

pub use matrix::{rational_rank, smith_invariants, SparseMatrix};

/// Boundary matrices `∂_k : C_k → C_{k-1}` for `k = 1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// Ranks of the chain groups `C_0, …, C_dim`.
    pub ranks: Vec<usize>,
    /// `boundaries[k - 1]` is `∂_k`.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `∂_k`, or `None` outside `1..=dim`.
    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn satisfies_dd_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Simplicial chain complex with `∂[v_0…v_k] = Σ (-1)^i [… v̂_i …]`.
pub fn chain_complex(x: &SimplicialComplex) -> ChainComplex {
    let ranks = x.counts();
    let boundaries = (1..ranks.len())
        .map(|k| {
            let cols = x
                .simplices(k)
                .iter()
                .map(|s| {
                    SimplicialComplex::faces(s)
                        .enumerate()
                        .map(|(i, f)| {
                            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                            (x.index_of(&f).expect("closed under faces"), sign)
                        })
                        .collect::<BTreeMap<_, _>>()
                })
                .collect();
            SparseMatrix::from_columns(ranks[k - 1], cols)
        })
        .collect();
    ChainComplex { ranks, boundaries }
}

/// Per-degree Betti numbers and torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.betti)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Integral cohomology by universal coefficients:
    /// `H^k ≅ Z^{b_k} ⊕ tors H_{k-1}`.
    pub fn cohomology(&self) -> HomologyResult {
        let torsion = (0..self.betti.len()).map(|k| if k == 0 { Vec::new() } else { self.torsion[k - 1].clone() }).collect();
        HomologyResult { betti: self.betti.clone(), torsion }
    }

    pub fn k_ranks(&self) -> KRanks {
        KRanks {
            even: self.betti.iter().step_by(2).sum(),
            odd: self.betti.iter().skip(1).step_by(2).sum(),
        }
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// Ranks of `K^0` and `K^1` tensored with the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct KRanks {
    pub even: usize,
    pub odd: usize,
}

impl KRanks {
    pub fn euler(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }
}

impl std::ops::Add for KRanks {
    type Output = KRanks;
    fn add(self, o: KRanks) -> KRanks {
        KRanks { even: self.even + o.even, odd: self.odd + o.odd }
    }
}

impl std::iter::Sum for KRanks {
    fn sum<I: Iterator<Item = KRanks>>(iter: I) -> KRanks {
        iter.fold(KRanks::default(), |a, b| a + b)
    }
}

/// Integral homology from Smith normal forms, checked against the
/// independent rational rank and the Euler–Poincaré formula.
pub fn homology_integral(x: &SimplicialComplex) -> Result<HomologyResult> {
    if x.is_empty() {
        return Ok(HomologyResult { betti: vec![0], torsion: vec![Vec::new()] });
    }
    let cc = chain_complex(x);
    let top = cc.ranks.len();
    // invariants[k] for ∂_{k}, k = 1..top-1
    let mut ranks = vec![0usize; top + 1];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    for k in 1..top {
        let d = cc.boundary(k).expect("in range");
        let inv = smith_invariants(d);
        let oracle = rational_rank(d);
        if inv.len() != oracle {
            return Err(Error::InternalInconsistency(format!(
                "boundary {k}: Smith rank {} but rational rank {oracle}",
                inv.len()
            )));
        }
        ranks[k] = inv.len();
        factors[k] = inv.into_iter().filter(|f| !f.is_one()).collect();
    }
    let betti: Vec<usize> = (0..top).map(|k| cc.ranks[k] - ranks[k] - ranks[k + 1]).collect();
    let torsion = (0..top).map(|k| factors[k + 1].clone()).collect();
    let h = HomologyResult { betti, torsion };
    if h.euler_characteristic() != x.euler_characteristic() {
        return Err(Error::InternalInconsistency("Euler–Poincaré check failed".into()));
    }
    Ok(h)
}

/// Rational homology ranks only, via the fraction-free rank.
pub fn rational_betti(x: &SimplicialComplex) -> Vec<usize> {
    if x.is_empty() {
        return vec![0];
    }
    let cc = chain_complex(x);
    let top = cc.ranks.len();
    let mut ranks = vec![0usize; top + 1];
    for (k, r) in ranks.iter_mut().enumerate().take(top).skip(1) {
        *r = rational_rank(cc.boundary(k).expect("in range"));
    }
    (0..top).map(|k| cc.ranks[k] - ranks[k] - ranks[k + 1]).collect()
}

/// `(Σ even Betti, Σ odd Betti)`.
pub fn k_ranks(x: &SimplicialComplex) -> Result<KRanks> {
    Ok(homology_integral(x)?.k_ranks())
}

/// Alternating simplex count.
pub fn euler_characteristic(x: &SimplicialComplex) -> i64 {
    x.euler_characteristic()
}

/// Sign of the permutation sorting `v`.
fn sort_sign(v: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Orientation sign of `g` on simplex `i` of dimension `k`.
pub fn orientation_sign(x: &GSimplicialComplex, g: usize, k: usize, i: usize) -> i64 {
    let img: Vec<usize> = x.complex().simplex(k, i).iter().map(|&v| x.act_vertex(g, v)).collect();
    sort_sign(&img)
}

/// The chain map of `g` in degree `k` (columns: source simplices).
pub fn chain_map(x: &GSimplicialComplex, g: usize, k: usize) -> SparseMatrix {
    let n = x.complex().count(k);
    let cols = (0..n)
        .map(|i| BTreeMap::from([(x.act_simplex(g, k, i), BigInt::from(orientation_sign(x, g, k, i)))]))
        .collect();
    SparseMatrix::from_columns(n, cols)
}

/// Lefschetz number of `g` at the chain level: `Σ (-1)^k tr(g_k)`.
pub fn chain_lefschetz(x: &GSimplicialComplex, g: usize) -> i64 {
    let c = x.complex();
    (0..=c.dim())
        .map(|k| {
            let tr: i64 = (0..c.count(k)).filter(|&i| x.act_simplex(g, k, i) == i).map(|i| orientation_sign(x, g, k, i)).sum();
            if k % 2 == 0 {
                tr
            } else {
                -tr
            }
        })
        .sum()
}

/// Dimensions of the invariant part of `H^k(X; Q)`.
///
/// Over Q the averaging idempotent splits off the invariant subcomplex,
/// spanned by signed orbit sums, and its homology is the invariant part of
/// the homology; cohomology has the same dimensions.
pub fn invariant_cohomology_dims(x: &GSimplicialComplex) -> Result<Vec<usize>> {
    x.require_admissible()?;
    let c = x.complex();
    if c.is_empty() {
        return Ok(vec![0]);
    }
    let orbits = compute_orbits(x);
    let cc = chain_complex(c);
    let top = c.dim() + 1;
    // orbit ids per dimension, and each orbit's signed sum as a column
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); top];
    let mut position = vec![0usize; orbits.len()];
    for o in orbits.orbits() {
        position[o.id] = local[o.dim].len();
        local[o.dim].push(o.id);
    }
    let mut ranks = vec![0usize; top + 1];
    for k in 1..top {
        let d = cc.boundary(k).expect("in range");
        let mut cols = Vec::with_capacity(local[k].len());
        for &oid in &local[k] {
            let o = orbits.orbit(oid);
            let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&m, &t) in o.members.iter().zip(&o.transporters) {
                let eps = BigInt::from(orientation_sign(x, t, k, o.rep));
                for (row, v) in d.column(m) {
                    // coefficient on the orbit sum of the face orbit, read at its representative
                    let fo = orbits.orbit(orbits.orbit_of(k - 1, *row));
                    if fo.rep == *row {
                        *col.entry(position[fo.id]).or_default() += v * &eps;
                    }
                }
            }
            col.retain(|_, v| v != &BigInt::from(0));
            cols.push(col);
        }
        ranks[k] = rational_rank(&SparseMatrix::from_columns(local[k - 1].len(), cols));
    }
    Ok((0..top).map(|k| local[k].len() - ranks[k] - ranks[k + 1]).collect())
}
