use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouptheory::{multiplicity, CharacterTable, FiniteGroup, Subgroup};

/// One matrix block of the fiber over an orbit with stabilizer `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberBlock {
    pub irrep: usize,
    pub degree: usize,
    pub block_dim: usize,
    pub multiplicity: usize,
}

/// Block decomposition of the fiber algebra over an orbit `G/K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberDecomposition {
    pub group_order: usize,
    pub stabilizer: Subgroup,
    pub index: usize,
    pub blocks: Vec<FiberBlock>,
}

impl FiberDecomposition {
    /// `Σ block_dim · multiplicity`, which equals `|G|`.
    pub fn total(&self) -> usize {
        self.blocks.iter().map(|b| b.block_dim * b.multiplicity).sum()
    }
}

/// One block of size `[G:K]·d_σ`, repeated `d_σ` times, per irrep σ of `K`.
pub fn fiber_decomposition(group: &FiniteGroup, k: &Subgroup) -> Result<FiberDecomposition> {
    let k = group.as_subgroup(k.elements())?;
    let table = CharacterTable::of_subgroup(group, &k)?;
    let index = group.order() / k.order();
    let blocks = table
        .irreps()
        .iter()
        .map(|irr| FiberBlock { irrep: irr.id, degree: irr.degree, block_dim: index * irr.degree, multiplicity: irr.degree })
        .collect();
    let fd = FiberDecomposition { group_order: group.order(), stabilizer: k, index, blocks };
    if fd.total() != group.order() {
        return Err(Error::InternalInconsistency(format!("fiber blocks sum to {} not {}", fd.total(), group.order())));
    }
    Ok(fd)
}

/// `m[σ][τ]`: multiplicity of the irrep σ of `L` in the restriction of the
/// irrep τ of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionMultiplicityMatrix {
    pub ambient: Subgroup,
    pub sub: Subgroup,
    pub sub_degrees: Vec<usize>,
    pub ambient_degrees: Vec<usize>,
    pub entries: Vec<Vec<u64>>,
}

impl InclusionMultiplicityMatrix {
    pub fn get(&self, sigma: usize, tau: usize) -> u64 {
        self.entries[sigma][tau]
    }
}

/// Restriction multiplicities for `L ⊆ K ⊆ G`; the degree identity
/// `d_τ = Σ_σ m[σ][τ] d_σ` is checked before returning.
pub fn inclusion_multiplicities(group: &FiniteGroup, l: &Subgroup, k: &Subgroup) -> Result<InclusionMultiplicityMatrix> {
    let k = group.as_subgroup(k.elements())?;
    let l = group.as_subgroup(l.elements())?;
    if !l.is_subgroup_of(&k) {
        return Err(Error::NotSubgroup(l.elements().to_vec()));
    }
    let kt = CharacterTable::of_subgroup(group, &k)?;
    let lt = CharacterTable::of_subgroup(group, &l)?;
    let mut entries = vec![vec![0u64; kt.len()]; lt.len()];
    for tau in 0..kt.len() {
        let chi = kt.character(tau);
        for (sigma, row) in entries.iter_mut().enumerate() {
            row[tau] = multiplicity(&kt, &chi, &lt, sigma)?;
        }
        let total: u64 = (0..lt.len()).map(|s| entries[s][tau] * lt.degree(s) as u64).sum();
        if total != kt.degree(tau) as u64 {
            return Err(Error::InternalInconsistency(format!("degree identity fails for irrep {tau}")));
        }
    }
    Ok(InclusionMultiplicityMatrix {
        ambient: k,
        sub: l,
        sub_degrees: (0..lt.len()).map(|s| lt.degree(s)).collect(),
        ambient_degrees: (0..kt.len()).map(|t| kt.degree(t)).collect(),
        entries,
    })
}
