use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcomplex::{compute_orbits, GSimplicialComplex, IsotropyStratum, OrbitData, SimplicialComplex};
use crate::grouptheory::{conjugate_irrep, multiplicity, CharacterTable, FiniteGroup, Subgroup};

/// Whether nodes sit over simplex orbits or over aggregated strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeLevel {
    Orbit,
    Stratum,
}

/// A point of the finite primitive-ideal model: an orbit (or stratum)
/// together with an irrep of its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimNode {
    pub id: usize,
    /// Orbit id or stratum id, depending on the poset level.
    pub location: usize,
    pub irrep: usize,
    pub degree: usize,
    pub stabilizer: Subgroup,
}

/// The specialization preorder: `leq(a, b)` iff `a` lies in the closure
/// of `{b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimPoset {
    pub level: NodeLevel,
    pub group_order: usize,
    pub nodes: Vec<PrimNode>,
    relation: Vec<Vec<bool>>,
}

impl PrimPoset {
    fn new(level: NodeLevel, group_order: usize, nodes: Vec<PrimNode>, relation: Vec<Vec<bool>>) -> Result<Self> {
        let p = PrimPoset { level, group_order, nodes, relation };
        if !p.is_reflexive() || !p.is_transitive() {
            return Err(Error::InternalInconsistency("specialization relation is not a preorder".into()));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation[a][b]
    }

    /// Node at a location with a given irrep.
    pub fn find(&self, location: usize, irrep: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.location == location && n.irrep == irrep)
    }

    /// Strict relations `a ⪯ b`, `a ≠ b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b))).filter(|&(a, b)| self.relation[a][b]).collect()
    }

    /// All nodes in the closure of `set`, increasing.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&a| set.iter().any(|&b| self.relation[a][b])).collect()
    }

    /// `set` is open iff its complement is closed.
    pub fn is_open(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        for &a in set {
            inside[a] = true;
        }
        let complement: Vec<usize> = (0..self.len()).filter(|&a| !inside[a]).collect();
        self.closure(&complement).iter().all(|&a| !inside[a])
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|a| self.relation[a][a])
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).filter(|&b| self.relation[a][b]).all(|b| (0..n).all(|c| !self.relation[b][c] || self.relation[a][c])))
    }

    /// Antisymmetry, i.e. the finite space is T0.
    pub fn is_t0(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| !(self.relation[a][b] && self.relation[b][a])))
    }
}

/// Character tables of subgroups, computed once each.
pub(crate) struct Tables<'a> {
    group: &'a FiniteGroup,
    cache: HashMap<Subgroup, CharacterTable>,
}

impl<'a> Tables<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        Tables { group, cache: HashMap::new() }
    }

    pub fn get(&mut self, k: &Subgroup) -> Result<&CharacterTable> {
        if !self.cache.contains_key(k) {
            let t = CharacterTable::of_subgroup(self.group, k)?;
            self.cache.insert(k.clone(), t);
        }
        Ok(&self.cache[k])
    }
}

fn orbit_nodes(orbits: &OrbitData, tables: &mut Tables) -> Result<(Vec<PrimNode>, Vec<usize>)> {
    let mut nodes = Vec::new();
    let mut start = Vec::with_capacity(orbits.len());
    for o in orbits.orbits() {
        start.push(nodes.len());
        let t = tables.get(&o.stabilizer)?;
        for irr in t.irreps() {
            nodes.push(PrimNode {
                id: nodes.len(),
                location: o.id,
                irrep: irr.id,
                degree: irr.degree,
                stabilizer: o.stabilizer.clone(),
            });
        }
    }
    Ok((nodes, start))
}

/// One node per simplex orbit and irrep of its stabilizer.
pub fn prim_nodes(x: &GSimplicialComplex) -> Result<Vec<PrimNode>> {
    x.require_admissible()?;
    let orbits = compute_orbits(x);
    Ok(orbit_nodes(&orbits, &mut Tables::new(x.group()))?.0)
}

/// The orbit-level specialization preorder.
///
/// `(s, σ) ⪯ (t, τ)` iff some translate `g·t` has `s` as a face and the
/// restriction of `σ` to `G_{g·t}` contains `g·τ`. Translates are taken
/// over distinct simplices `g·t`; elements of `G_t` fix `τ`.
pub fn specialization(x: &GSimplicialComplex) -> Result<PrimPoset> {
    x.require_admissible()?;
    let group = x.group();
    let c = x.complex();
    let orbits = compute_orbits(x);
    let mut tables = Tables::new(group);
    let (nodes, start) = orbit_nodes(&orbits, &mut tables)?;
    let n = nodes.len();
    let mut relation = vec![vec![false; n]; n];
    for t in orbits.orbits() {
        let t_table = tables.get(&t.stabilizer)?.clone();
        for (&m, &g) in t.members.iter().zip(&t.transporters) {
            let gm = t.stabilizer.conjugate(group, g);
            let m_table = tables.get(&gm)?.clone();
            let moved: Vec<usize> =
                (0..t_table.len()).map(|tau| conjugate_irrep(group, g, &t_table, tau, &m_table)).collect::<Result<_>>()?;
            for (fk, fi) in all_faces(c, t.dim, m) {
                let s = orbits.orbit(orbits.orbit_of(fk, fi));
                if s.rep != fi {
                    continue;
                }
                let s_table = tables.get(&s.stabilizer)?.clone();
                for sigma in 0..s_table.len() {
                    let chi = s_table.character(sigma);
                    for (tau, &gtau) in moved.iter().enumerate() {
                        if multiplicity(&s_table, &chi, &m_table, gtau)? > 0 {
                            relation[start[s.id] + sigma][start[t.id] + tau] = true;
                        }
                    }
                }
            }
        }
    }
    PrimPoset::new(NodeLevel::Orbit, group.order(), nodes, relation)
}

/// Every face (including the simplex itself) as `(dim, index)`.
fn all_faces(c: &SimplicialComplex, k: usize, i: usize) -> Vec<(usize, usize)> {
    let s = c.simplex(k, i);
    let n = s.len();
    (1u32..(1 << n))
        .map(|mask| {
            let f: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect();
            (f.len() - 1, c.index_of(&f).expect("closed under faces"))
        })
        .collect()
}

/// Merges the nodes of each stratum.
///
/// Starting from the representative of the stratum's first orbit, a search
/// along face and coface relations through simplices of the stratum whose
/// stabilizer literally equals the seed's picks one member of every orbit.
/// Irreps are transported to the seed stabilizer through those members.
/// The search must reach every orbit of the stratum and every orbit it
/// reaches twice must induce the same identification of irreps; otherwise
/// the stratum has no constant stabilizer and aggregation is refused.
pub fn aggregate_strata(x: &GSimplicialComplex, poset: &PrimPoset, strata: &[IsotropyStratum]) -> Result<PrimPoset> {
    if poset.level != NodeLevel::Orbit {
        return Err(Error::InternalInconsistency("aggregation expects an orbit-level poset".into()));
    }
    let group = x.group();
    let c = x.complex();
    let orbits = compute_orbits(x);
    let cofaces = coface_lists(c);
    let mut tables = Tables::new(group);
    // raw node -> aggregated node
    let mut target = vec![usize::MAX; poset.len()];
    let mut nodes = Vec::new();
    let mut stratum_of = vec![usize::MAX; orbits.len()];
    for s in strata {
        for &o in &s.simplex_orbits {
            stratum_of[o] = s.id;
        }
    }
    for s in strata {
        let seed = orbits.orbit(s.simplex_orbits[0]);
        let h = seed.stabilizer.clone();
        let h_table = tables.get(&h)?.clone();
        let base = nodes.len();
        for irr in h_table.irreps() {
            nodes.push(PrimNode { id: nodes.len(), location: s.id, irrep: irr.id, degree: irr.degree, stabilizer: h.clone() });
        }
        // chosen[o] = transporter of the member reached first
        let mut chosen: HashMap<usize, usize> = HashMap::new();
        let mut visited: HashMap<(usize, usize), ()> = HashMap::new();
        let mut queue = VecDeque::from([(seed.dim, seed.rep)]);
        visited.insert((seed.dim, seed.rep), ());
        while let Some((k, i)) = queue.pop_front() {
            let o = orbits.orbit(orbits.orbit_of(k, i));
            let pos = o.members.binary_search(&i).expect("member");
            let g = o.transporters[pos];
            match chosen.get(&o.id) {
                None => {
                    chosen.insert(o.id, g);
                }
                Some(&g0) => {
                    // n = g g0^-1 normalizes h; it must fix every irrep of h
                    let n = group.mul(g, group.inv(g0));
                    for sigma in 0..h_table.len() {
                        if conjugate_irrep(group, n, &h_table, sigma, &h_table)? != sigma {
                            return Err(Error::NonConstantStabilizer(s.id));
                        }
                    }
                }
            }
            let mut neighbours: Vec<(usize, usize)> = Vec::new();
            if k > 0 {
                for f in SimplicialComplex::faces(c.simplex(k, i)) {
                    neighbours.push((k - 1, c.index_of(&f).expect("face")));
                }
            }
            if let Some(list) = cofaces.get(k).and_then(|l| l.get(i)) {
                neighbours.extend(list.iter().map(|&j| (k + 1, j)));
            }
            for (nk, ni) in neighbours {
                if visited.contains_key(&(nk, ni)) {
                    continue;
                }
                let no = orbits.orbit(orbits.orbit_of(nk, ni));
                if stratum_of[no.id] != s.id {
                    continue;
                }
                let npos = no.members.binary_search(&ni).expect("member");
                if no.stabilizer.conjugate(group, no.transporters[npos]) != h {
                    continue;
                }
                visited.insert((nk, ni), ());
                queue.push_back((nk, ni));
            }
        }
        for &o in &s.simplex_orbits {
            let g = *chosen.get(&o).ok_or(Error::NonConstantStabilizer(s.id))?;
            let orbit = orbits.orbit(o);
            let o_table = tables.get(&orbit.stabilizer)?.clone();
            for raw in poset.nodes.iter().filter(|nd| nd.location == o) {
                let sigma = conjugate_irrep(group, g, &o_table, raw.irrep, &h_table)?;
                target[raw.id] = base + sigma;
            }
        }
    }
    if target.contains(&usize::MAX) {
        return Err(Error::InternalInconsistency("strata do not cover every orbit".into()));
    }
    let n = nodes.len();
    let mut relation = vec![vec![false; n]; n];
    for (a, b) in (0..poset.len()).flat_map(|a| (0..poset.len()).map(move |b| (a, b))) {
        if poset.leq(a, b) {
            relation[target[a]][target[b]] = true;
        }
    }
    PrimPoset::new(NodeLevel::Stratum, poset.group_order, nodes, relation)
}

/// `cofaces[k][i]`: indices of the (k+1)-simplices having simplex `(k, i)`
/// as a face.
fn coface_lists(c: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = (0..=c.dim()).map(|k| vec![Vec::new(); c.count(k)]).collect();
    for k in 1..=c.dim() {
        for (j, s) in c.simplices(k).iter().enumerate() {
            for f in SimplicialComplex::faces(s) {
                out[k - 1][c.index_of(&f).expect("face")].push(j);
            }
        }
    }
    out
}

/// The nodes carrying the trivial irrep, with the openness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IxNodes {
    pub nodes: Vec<usize>,
    pub open: bool,
}

pub fn ix_nodes(poset: &PrimPoset) -> Result<IxNodes> {
    let nodes: Vec<usize> = poset.nodes.iter().filter(|n| n.irrep == 0).map(|n| n.id).collect();
    if !poset.is_open(&nodes) {
        return Err(Error::NotOpen(0));
    }
    Ok(IxNodes { nodes, open: true })
}
