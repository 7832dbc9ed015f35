use serde::Serialize;

use super::action::GSimplicialComplex;
use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::grouptheory::Subgroup;

/// One orbit of simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexOrbit {
    pub id: usize,
    pub dim: usize,
    /// Index (within `dim`) of the lexicographically least member.
    pub rep: usize,
    /// Member indices within `dim`, increasing.
    pub members: Vec<usize>,
    /// For each member, the least group element carrying `rep` onto it.
    pub transporters: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// The simplex orbits of an admissible action, ordered by dimension and
/// then by representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    orbits: Vec<SimplexOrbit>,
    orbit_of: Vec<Vec<usize>>,
}

impl OrbitData {
    pub fn orbits(&self) -> &[SimplexOrbit] {
        &self.orbits
    }

    pub fn orbit(&self, id: usize) -> &SimplexOrbit {
        &self.orbits[id]
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit id of simplex `i` of dimension `k`.
    pub fn orbit_of(&self, k: usize, i: usize) -> usize {
        self.orbit_of[k][i]
    }

    /// Orbit ids of the given dimension, in order.
    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &SimplexOrbit> {
        self.orbits.iter().filter(move |o| o.dim == k)
    }
}

/// Orbits with lex-minimal representatives and setwise stabilizers.
pub fn orbits_and_stabilizers(x: &GSimplicialComplex) -> Result<OrbitData> {
    x.require_admissible()?;
    Ok(compute_orbits(x))
}

pub(crate) fn compute_orbits(x: &GSimplicialComplex) -> OrbitData {
    let c = x.complex();
    let g = x.group();
    let mut orbits = Vec::new();
    let mut orbit_of: Vec<Vec<usize>> = (0..=c.dim()).map(|k| vec![usize::MAX; c.count(k)]).collect();
    for k in 0..=c.dim() {
        for rep in 0..c.count(k) {
            if orbit_of[k][rep] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            let mut stab = Vec::new();
            for e in g.elements() {
                let j = x.act_simplex(e, k, rep);
                if j == rep {
                    stab.push(e);
                }
                if orbit_of[k][j] == usize::MAX {
                    orbit_of[k][j] = id;
                    pairs.push((j, e));
                }
            }
            pairs.sort_unstable();
            orbits.push(SimplexOrbit {
                id,
                dim: k,
                rep,
                members: pairs.iter().map(|p| p.0).collect(),
                transporters: pairs.iter().map(|p| p.1).collect(),
                stabilizer: Subgroup::from_sorted_unchecked(stab),
            });
        }
    }
    OrbitData { orbits, orbit_of }
}

/// Vertices fixed by every element of `elements`, as a mask.
pub fn fixed_vertex_mask(x: &GSimplicialComplex, elements: &[usize]) -> Vec<bool> {
    (0..x.complex().vertex_count()).map(|v| elements.iter().all(|&g| x.act_vertex(g, v) == v)).collect()
}

/// The full subcomplex on vertices fixed by every element of `elements`,
/// relabelled in increasing order of the original vertex index.
pub fn fixed_subcomplex(x: &GSimplicialComplex, elements: &[usize]) -> Result<SimplicialComplex> {
    x.require_admissible()?;
    Ok(x.complex().full_subcomplex(&fixed_vertex_mask(x, elements)).0)
}

/// What to do when the quotient condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubdivisionPolicy {
    /// Subdivide up to [`MAX_AUTO_SUBDIVISIONS`] times.
    #[default]
    Auto,
    Forbid,
}

pub const MAX_AUTO_SUBDIVISIONS: usize = 2;

/// The orbit space as a simplicial complex.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    pub complex: SimplicialComplex,
    /// The complex actually quotiented (after any subdivision).
    pub source: GSimplicialComplex,
    pub subdivisions: usize,
    /// Quotient vertex of each source vertex.
    pub vertex_projection: Vec<usize>,
    /// Quotient simplex index of each source simplex, per dimension.
    pub simplex_projection: Vec<Vec<usize>>,
}

/// Whether the naive orbit complex is a faithful model of the orbit space:
/// no simplex meets a vertex orbit twice, and distinct simplex orbits have
/// distinct vertex-orbit images.
pub fn is_bredon_regular(x: &GSimplicialComplex) -> bool {
    let orbits = compute_orbits(x);
    let c = x.complex();
    let vorb = |v: usize| orbits.orbit_of(0, v);
    for k in 1..=c.dim() {
        let mut images = std::collections::HashSet::new();
        for o in orbits.of_dim(k) {
            let mut img: Vec<usize> = c.simplex(k, o.rep).iter().map(|&v| vorb(v)).collect();
            img.sort_unstable();
            if img.windows(2).any(|w| w[0] == w[1]) || !images.insert(img) {
                return false;
            }
        }
    }
    true
}

pub fn quotient_complex(x: &GSimplicialComplex) -> Result<QuotientComplex> {
    quotient_complex_with(x, SubdivisionPolicy::Auto)
}

pub fn quotient_complex_with(x: &GSimplicialComplex, policy: SubdivisionPolicy) -> Result<QuotientComplex> {
    let limit = match policy {
        SubdivisionPolicy::Auto => MAX_AUTO_SUBDIVISIONS,
        SubdivisionPolicy::Forbid => 0,
    };
    let mut current = x.clone();
    let mut subdivisions = 0;
    while !is_bredon_regular(&current) {
        if subdivisions == limit {
            return Err(Error::NotRegular { subdivisions });
        }
        current = current.barycentric_subdivide();
        subdivisions += 1;
    }
    let orbits = compute_orbits(&current);
    let c = current.complex();
    let vertex_projection: Vec<usize> = (0..c.vertex_count()).map(|v| orbits.orbit_of(0, v)).collect();
    let maximal: Vec<Vec<usize>> = (0..=c.dim())
        .flat_map(|k| orbits.of_dim(k).map(move |o| (k, o.rep)))
        .map(|(k, rep)| c.simplex(k, rep).iter().map(|&v| vertex_projection[v]).collect())
        .collect();
    let q = SimplicialComplex::from_maximal(orbits.of_dim(0).count(), &maximal)?;
    let simplex_projection = (0..=c.dim())
        .map(|k| {
            c.simplices(k)
                .iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| vertex_projection[v]).collect();
                    img.sort_unstable();
                    q.index_of(&img).expect("image simplex present")
                })
                .collect()
        })
        .collect();
    Ok(QuotientComplex { complex: q, source: current, subdivisions, vertex_projection, simplex_projection })
}

/// The fixed complex of `g` with the restricted action of its centralizer.
///
/// The centralizer acts through its local indexing (`0..|Z|` in increasing
/// order of ambient index).
pub fn centralizer_fixed_action(x: &GSimplicialComplex, g: usize) -> Result<GSimplicialComplex> {
    x.require_admissible()?;
    let group = x.group();
    let z = group.centralizer(g);
    let (fixed, vertices) = x.complex().full_subcomplex(&fixed_vertex_mask(x, &[g]));
    let mut local = vec![usize::MAX; x.complex().vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let action = z.elements().iter().map(|&h| vertices.iter().map(|&v| local[x.act_vertex(h, v)]).collect()).collect();
    GSimplicialComplex::new(fixed, z.to_group(group), action)
}

/// A maximal connected union of simplex orbits with conjugate stabilizers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyStratum {
    pub id: usize,
    /// Stabilizer of the first orbit of the stratum.
    pub stabilizer: Subgroup,
    pub simplex_orbits: Vec<usize>,
    pub connected: bool,
}

/// Strata: connected components of the orbit graph whose edges join an
/// orbit to a codimension-one face orbit with conjugate stabilizer.
///
/// Stabilizers shrink along cofaces, so codimension-one adjacency generates
/// the same components as arbitrary face adjacency.
pub fn isotropy_strata(x: &GSimplicialComplex) -> Result<Vec<IsotropyStratum>> {
    let orbits = orbits_and_stabilizers(x)?;
    Ok(strata_from_orbits(x, &orbits))
}

pub(crate) fn strata_from_orbits(x: &GSimplicialComplex, orbits: &OrbitData) -> Vec<IsotropyStratum> {
    let c = x.complex();
    let n = orbits.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for k in 1..=c.dim() {
        for (i, s) in c.simplices(k).iter().enumerate() {
            let a = orbits.orbit_of(k, i);
            for face in SimplicialComplex::faces(s) {
                let b = orbits.orbit_of(k - 1, c.index_of(&face).expect("face present"));
                let (sa, sb) = (&orbits.orbit(a).stabilizer, &orbits.orbit(b).stabilizer);
                if sa.is_conjugate_to(x.group(), sb) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut strata: Vec<IsotropyStratum> = Vec::new();
    let mut stratum_of_root = vec![usize::MAX; n];
    for o in 0..n {
        let r = find(&mut parent, o);
        if stratum_of_root[r] == usize::MAX {
            stratum_of_root[r] = strata.len();
            strata.push(IsotropyStratum {
                id: strata.len(),
                stabilizer: orbits.orbit(o).stabilizer.clone(),
                simplex_orbits: Vec::new(),
                connected: true,
            });
        }
        strata[stratum_of_root[r]].simplex_orbits.push(o);
    }
    strata
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptheory::FiniteGroup;

    fn swap_points() -> GSimplicialComplex {
        let c = SimplicialComplex::from_maximal(2, &[]).unwrap();
        GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2).unwrap(), &[(1, vec![1, 0])]).unwrap()
    }

    #[test]
    fn free_swap_of_two_points() {
        let o = orbits_and_stabilizers(&swap_points()).unwrap();
        assert_eq!(o.len(), 1);
        assert!(o.orbit(0).stabilizer.is_trivial());
        assert_eq!(o.orbit(0).members, vec![0, 1]);
    }

    #[test]
    fn quotient_of_trivial_action_is_identity() {
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).unwrap();
        let q = quotient_complex(&GSimplicialComplex::trivial(c.clone())).unwrap();
        assert_eq!(q.complex, c);
        assert_eq!(q.subdivisions, 0);
    }

    #[test]
    fn forbidding_subdivision_reports_not_regular() {
        // rotation of a triangle boundary: one orbit per dimension, so the
        // naive quotient collapses an edge onto a single vertex
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let x = GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(3).unwrap(), &[(1, vec![1, 2, 0])]).unwrap();
        assert_eq!(quotient_complex_with(&x, SubdivisionPolicy::Forbid).unwrap_err(), Error::NotRegular { subdivisions: 0 });
        let q = quotient_complex(&x).unwrap();
        assert!(q.subdivisions > 0);
        assert_eq!(q.complex.euler_characteristic(), 0);
    }
}
