//! Rational equivariant K-ranks by localization at conjugacy classes,
//! equivariant Euler characteristics, and integral K-groups when the
//! singular orbits are isolated.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcomplex::{
    centralizer_fixed_action, compute_orbits, fixed_subcomplex, quotient_complex_with, GSimplicialComplex,
    SubdivisionPolicy,
};
use crate::grouptheory::{character_table, conjugacy_data, CharacterTable, Subgroup};
use crate::homology::{homology_integral, invariant_cohomology_dims, KRanks};

/// Contribution of one conjugacy class `[g]`: the ranks of `K^*(Z^g \ X^g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BCComponent {
    pub class: usize,
    pub rep: usize,
    pub rep_name: String,
    pub class_size: usize,
    pub centralizer_order: usize,
    /// Simplex counts of `X^g` and of its orbit space.
    pub fixed_counts: Vec<usize>,
    pub quotient_counts: Vec<usize>,
    pub quotient_betti: Vec<usize>,
    pub subdivisions: usize,
    pub ranks: KRanks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BCDecomposition {
    pub components: Vec<BCComponent>,
    pub totals: KRanks,
}

impl BCDecomposition {
    pub fn component_by_name(&self, name: &str) -> Option<&BCComponent> {
        self.components.iter().find(|c| c.rep_name == name)
    }
}

pub fn bc_decomposition(x: &GSimplicialComplex) -> Result<BCDecomposition> {
    bc_decomposition_with(x, SubdivisionPolicy::Auto)
}

/// Sums, over class representatives `g`, the K-ranks of the orbit space of
/// the centralizer acting on the fixed complex of `g`.
pub fn bc_decomposition_with(x: &GSimplicialComplex, policy: SubdivisionPolicy) -> Result<BCDecomposition> {
    x.require_admissible()?;
    let group = x.group();
    let cd = conjugacy_data(group);
    let mut components = Vec::with_capacity(cd.len());
    for k in 0..cd.len() {
        let g = cd.rep(k);
        let y = centralizer_fixed_action(x, g)?;
        let q = quotient_complex_with(&y, policy)?;
        let h = homology_integral(&q.complex)?;
        components.push(BCComponent {
            class: k,
            rep: g,
            rep_name: group.name(g),
            class_size: cd.class_size(k),
            centralizer_order: cd.centralizer(k).order(),
            fixed_counts: y.complex().counts(),
            quotient_counts: q.complex.counts(),
            quotient_betti: h.betti.clone(),
            subdivisions: q.subdivisions,
            ranks: h.k_ranks(),
        });
    }
    let totals = components.iter().map(|c| c.ranks).sum();
    Ok(BCDecomposition { components, totals })
}

/// Which formula to use for the equivariant Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EulerMethod {
    Bc,
    CommutingPairs,
    Isolated,
}

impl std::str::FromStr for EulerMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bc" => Ok(EulerMethod::Bc),
            "pairs" | "commuting-pairs" | "commuting_pairs" => Ok(EulerMethod::CommutingPairs),
            "isolated" => Ok(EulerMethod::Isolated),
            other => Err(Error::Parse { line: 0, msg: format!("unknown Euler method '{other}'") }),
        }
    }
}

pub fn equivariant_euler(x: &GSimplicialComplex, method: EulerMethod) -> Result<i64> {
    equivariant_euler_with(x, method, SubdivisionPolicy::Auto)
}

pub fn equivariant_euler_with(x: &GSimplicialComplex, method: EulerMethod, policy: SubdivisionPolicy) -> Result<i64> {
    x.require_admissible()?;
    match method {
        EulerMethod::Bc => Ok(bc_decomposition_with(x, policy)?.totals.euler()),
        EulerMethod::CommutingPairs => {
            let group = x.group();
            let mut sum = 0i64;
            for (a, b) in group.commuting_pairs() {
                sum += fixed_subcomplex(x, &[a, b])?.euler_characteristic();
            }
            exact_div(sum, group.order() as i64)
        }
        EulerMethod::Isolated => {
            let singular = isolated_singular_orbits(x)?;
            let q = quotient_complex_with(x, policy)?;
            let extra: usize = singular.iter().map(|s| s.extra_irreps).sum();
            Ok(q.complex.euler_characteristic() + extra as i64)
        }
    }
}

fn exact_div(a: i64, b: i64) -> Result<i64> {
    if a % b != 0 {
        return Err(Error::NonIntegralResult(format!("{a}/{b}")));
    }
    Ok(a / b)
}

/// An orbit with non-trivial stabilizer in the isolated regime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularOrbit {
    pub orbit: usize,
    pub vertex: usize,
    pub stabilizer: Subgroup,
    /// Number of non-trivial irreps of the stabilizer.
    pub extra_irreps: usize,
}

/// Singular orbits, after checking that every simplex of positive
/// dimension is free.
pub fn isolated_singular_orbits(x: &GSimplicialComplex) -> Result<Vec<SingularOrbit>> {
    x.require_admissible()?;
    let orbits = compute_orbits(x);
    let group = x.group();
    let mut out = Vec::new();
    for o in orbits.orbits() {
        if o.stabilizer.is_trivial() {
            continue;
        }
        let simplex = x.complex().simplex(o.dim, o.rep).to_vec();
        if o.dim > 0 {
            return Err(Error::NotIsolated { simplex });
        }
        let table = CharacterTable::of_subgroup(group, &o.stabilizer)?;
        out.push(SingularOrbit { orbit: o.id, vertex: simplex[0], stabilizer: o.stabilizer.clone(), extra_irreps: table.len() - 1 });
    }
    Ok(out)
}

/// `lhs = χ(G\X)` against `rhs = (1/|G|) Σ_g χ(X^g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientEulerCheck {
    pub lhs: i64,
    pub fixed_sum: i64,
    pub group_order: usize,
    /// `None` when the sum is not divisible by `|G|`.
    pub rhs: Option<i64>,
    pub equal: bool,
}

pub fn euler_quotient_check(x: &GSimplicialComplex) -> Result<QuotientEulerCheck> {
    euler_quotient_check_with(x, SubdivisionPolicy::Auto)
}

pub fn euler_quotient_check_with(x: &GSimplicialComplex, policy: SubdivisionPolicy) -> Result<QuotientEulerCheck> {
    x.require_admissible()?;
    let lhs = quotient_complex_with(x, policy)?.complex.euler_characteristic();
    let group = x.group();
    let mut fixed_sum = 0;
    for g in group.elements() {
        fixed_sum += fixed_subcomplex(x, &[g])?.euler_characteristic();
    }
    let n = group.order() as i64;
    let rhs = (fixed_sum % n == 0).then_some(fixed_sum / n);
    Ok(QuotientEulerCheck { lhs, fixed_sum, group_order: group.order(), rhs, equal: rhs == Some(lhs) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

/// `Σ_{[g] ≠ [1]} #(Z^g \ X^g)` against `Σ_{singular orbits} (|irreps(G_x)| − 1)`;
/// requires every non-identity element to have a finite fixed set.
pub fn bc_vs_count_identity(x: &GSimplicialComplex) -> Result<IdentityCheck> {
    x.require_admissible()?;
    let group = x.group();
    for g in group.elements().filter(|&g| g != group.identity()) {
        let f = fixed_subcomplex(x, &[g])?;
        if f.count(1) > 0 {
            return Err(Error::NotApplicable(format!(
                "fixed set of {} has dimension {} > 0",
                group.name(g),
                f.dim()
            )));
        }
    }
    let cd = conjugacy_data(group);
    let mut lhs = 0i64;
    for k in 0..cd.len() {
        let g = cd.rep(k);
        if g == group.identity() {
            continue;
        }
        let y = centralizer_fixed_action(x, g)?;
        lhs += compute_orbits(&y).of_dim(0).count() as i64;
    }
    let rhs: i64 = isolated_singular_orbits(x)?.iter().map(|s| s.extra_irreps as i64).sum();
    Ok(IdentityCheck { lhs, rhs, equal: lhs == rhs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsCheck {
    pub invariant_dims: Vec<usize>,
    pub quotient_betti: Vec<usize>,
    pub equal: bool,
}

/// Invariant rational cohomology of `X` against the Betti numbers of the
/// orbit space, degree by degree.
pub fn invariants_check(x: &GSimplicialComplex) -> Result<InvariantsCheck> {
    invariants_check_with(x, SubdivisionPolicy::Auto)
}

pub fn invariants_check_with(x: &GSimplicialComplex, policy: SubdivisionPolicy) -> Result<InvariantsCheck> {
    let mut invariant_dims = invariant_cohomology_dims(x)?;
    let q = quotient_complex_with(x, policy)?;
    let mut quotient_betti = homology_integral(&q.complex)?.betti;
    let n = invariant_dims.len().max(quotient_betti.len());
    invariant_dims.resize(n, 0);
    quotient_betti.resize(n, 0);
    let equal = invariant_dims == quotient_betti;
    Ok(InvariantsCheck { invariant_dims, quotient_betti, equal })
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`, or only its rank
/// when the torsion is not determined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Option<Vec<u64>>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Some(Vec::new()) }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.as_ref().is_some_and(Vec::is_empty)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if let Some(t) = &self.torsion {
            parts.extend(t.iter().map(|d| format!("Z/{d}")));
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.torsion.is_none() {
            write!(f, "{body} (rank only)")
        } else {
            write!(f, "{body}")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryStatus {
    /// The boundary map vanishes: its image is torsion inside a
    /// torsion-free group.
    ProvablyZero,
    /// Only known to have torsion image of order dividing the stabilizer
    /// orders.
    TorsionBounded,
}

impl fmt::Display for BoundaryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryStatus::ProvablyZero => "provably-zero",
            BoundaryStatus::TorsionBounded => "torsion-bounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatedKResult {
    pub singular_orbits: Vec<SingularOrbit>,
    pub quotient_betti: Vec<usize>,
    pub quotient_k0: AbelianGroup,
    pub quotient_k1: AbelianGroup,
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    pub boundary_status: BoundaryStatus,
    /// `|G_x|` per singular orbit.
    pub torsion_bounds: Vec<usize>,
    pub caveat: Option<String>,
}

fn torsion_u64(v: &[num_bigint::BigInt]) -> Result<Vec<u64>> {
    v.iter().map(|d| d.to_u64().ok_or_else(|| Error::InternalInconsistency(format!("torsion coefficient {d} too large")))).collect()
}

pub fn isolated_k_theory(x: &GSimplicialComplex) -> Result<IsolatedKResult> {
    isolated_k_theory_with(x, SubdivisionPolicy::Auto)
}

/// Integral K-theory of the crossed product from the six-term sequence of
/// the free part and the singular orbits.
pub fn isolated_k_theory_with(x: &GSimplicialComplex, policy: SubdivisionPolicy) -> Result<IsolatedKResult> {
    let singular = isolated_singular_orbits(x)?;
    let extra: usize = singular.iter().map(|s| s.extra_irreps).sum();
    let q = quotient_complex_with(x, policy)?;
    let h = homology_integral(&q.complex)?;
    let co = h.cohomology();
    let ranks = h.k_ranks();
    let (quotient_k0, quotient_k1, caveat) = if q.complex.dim() <= 2 {
        let mut t0 = Vec::new();
        if co.torsion.len() > 2 {
            t0.extend(torsion_u64(&co.torsion[2])?);
        }
        let t1 = if co.torsion.len() > 1 { torsion_u64(&co.torsion[1])? } else { Vec::new() };
        (
            AbelianGroup { rank: ranks.even, torsion: Some(t0) },
            AbelianGroup { rank: ranks.odd, torsion: Some(t1) },
            None,
        )
    } else {
        (
            AbelianGroup { rank: ranks.even, torsion: None },
            AbelianGroup { rank: ranks.odd, torsion: None },
            Some(format!("orbit space has dimension {} > 2; torsion is not determined", q.complex.dim())),
        )
    };
    let provably_zero = quotient_k0.torsion.is_some() && quotient_k1.is_torsion_free();
    let (k0, k1, boundary_status) = if provably_zero {
        let mut t = quotient_k0.torsion.clone().unwrap_or_default();
        t.sort_unstable();
        (AbelianGroup { rank: ranks.even + extra, torsion: Some(t) }, quotient_k1.clone(), BoundaryStatus::ProvablyZero)
    } else {
        (
            AbelianGroup { rank: ranks.even + extra, torsion: None },
            AbelianGroup { rank: ranks.odd, torsion: None },
            BoundaryStatus::TorsionBounded,
        )
    };
    Ok(IsolatedKResult {
        torsion_bounds: singular.iter().map(|s| s.stabilizer.order()).collect(),
        singular_orbits: singular,
        quotient_betti: h.betti,
        quotient_k0,
        quotient_k1,
        k0,
        k1,
        boundary_status,
        caveat,
    })
}

/// Checks that the trivial action reproduces `K^*(X) ⊗ Rep(G)` ranks.
pub fn trivial_action_ranks(x: &GSimplicialComplex) -> Result<KRanks> {
    let r = character_table(x.group())?.len();
    let k = homology_integral(x.complex())?.k_ranks();
    Ok(KRanks { even: k.even * r, odd: k.odd * r })
}
