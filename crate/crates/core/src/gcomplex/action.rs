use std::collections::VecDeque;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::grouptheory::FiniteGroup;

/// A finite group acting simplicially on a finite complex.
///
/// The action is stored as a vertex permutation per group element, together
/// with the induced permutation of simplices in every dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSimplicialComplex {
    complex: SimplicialComplex,
    group: FiniteGroup,
    vertex_action: Vec<Vec<usize>>,
    simplex_action: Vec<Vec<Vec<usize>>>,
    admissible: bool,
}

impl GSimplicialComplex {
    /// Builds the action from a vertex permutation for every group element.
    pub fn new(complex: SimplicialComplex, group: FiniteGroup, vertex_action: Vec<Vec<usize>>) -> Result<Self> {
        let n = complex.vertex_count();
        if vertex_action.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} vertex permutations for a group of order {}",
                vertex_action.len(),
                group.order()
            )));
        }
        for (g, perm) in vertex_action.iter().enumerate() {
            check_permutation(perm, n).map_err(|m| Error::InvalidAction(format!("element {g}: {m}")))?;
        }
        if vertex_action[group.identity()].iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|v| vertex_action[gh][v] != vertex_action[g][vertex_action[h][v]]) {
                    return Err(Error::InvalidAction(format!("action is not a homomorphism at ({g}, {h})")));
                }
            }
        }
        let mut simplex_action = Vec::with_capacity(group.order());
        for (g, perm) in vertex_action.iter().enumerate() {
            let mut per_dim = Vec::with_capacity(complex.dim() + 1);
            for k in 0..=complex.dim() {
                let mut images = Vec::with_capacity(complex.count(k));
                for s in complex.simplices(k) {
                    let mut img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
                    img.sort_unstable();
                    let j = complex.index_of(&img).ok_or_else(|| {
                        Error::InvalidAction(format!("element {g} maps simplex {s:?} to non-simplex {img:?}"))
                    })?;
                    images.push(j);
                }
                per_dim.push(images);
            }
            simplex_action.push(per_dim);
        }
        let mut x = GSimplicialComplex { complex, group, vertex_action, simplex_action, admissible: false };
        x.admissible = x.check_admissible().is_none();
        Ok(x)
    }

    /// Builds the action from images of generators; the remaining elements
    /// are derived through the multiplication table.
    pub fn from_generators(complex: SimplicialComplex, group: FiniteGroup, generators: &[(usize, Vec<usize>)]) -> Result<Self> {
        let n = complex.vertex_count();
        let order = group.order();
        let mut action: Vec<Option<Vec<usize>>> = vec![None; order];
        for (g, perm) in generators {
            if *g >= order {
                return Err(Error::InvalidAction(format!("element {g} out of range")));
            }
            check_permutation(perm, n).map_err(|m| Error::InvalidAction(format!("element {g}: {m}")))?;
        }
        action[group.identity()] = Some((0..n).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let ax = action[x].clone().unwrap();
            for (g, perm) in generators {
                let gx = group.mul(*g, x);
                let img: Vec<usize> = ax.iter().map(|&v| perm[v]).collect();
                match &action[gx] {
                    Some(existing) if *existing != img => {
                        return Err(Error::InvalidAction(format!(
                            "generator images do not define a homomorphism (conflict at element {gx})"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[gx] = Some(img);
                        queue.push_back(gx);
                    }
                }
            }
        }
        let vertex_action = action
            .into_iter()
            .enumerate()
            .map(|(g, a)| a.ok_or_else(|| Error::InvalidAction(format!("element {g} is not generated by the given elements"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(complex, group, vertex_action)
    }

    /// The trivial action of the one-element group.
    pub fn trivial(complex: SimplicialComplex) -> Self {
        let n = complex.vertex_count();
        Self::new(complex, FiniteGroup::trivial(), vec![(0..n).collect()]).expect("identity action is valid")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn vertex_action(&self) -> &[Vec<usize>] {
        &self.vertex_action
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    /// Image of vertex `v` under `g`.
    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.vertex_action[g][v]
    }

    /// Index of `g · s` where `s` is simplex `i` of dimension `k`.
    pub fn act_simplex(&self, g: usize, k: usize, i: usize) -> usize {
        self.simplex_action[g][k][i]
    }

    /// Returns a violating pair `(g, simplex)` if some element fixes a
    /// simplex setwise without fixing all of its vertices.
    pub fn check_admissible(&self) -> Option<(usize, Vec<usize>)> {
        for g in self.group.elements() {
            for k in 1..=self.complex.dim() {
                for (i, s) in self.complex.simplices(k).iter().enumerate() {
                    if self.simplex_action[g][k][i] == i && s.iter().any(|&v| self.vertex_action[g][v] != v) {
                        return Some((g, s.clone()));
                    }
                }
            }
        }
        None
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        match self.check_admissible() {
            None => Ok(()),
            Some((element, simplex)) => Err(Error::NotAdmissible { element, simplex }),
        }
    }

    /// Generator lines `act <g> : <perm>` for a generating set of the group.
    pub fn action_text(&self) -> String {
        let mut out = String::new();
        for g in generating_set(&self.group) {
            let perm: Vec<String> = self.vertex_action[g].iter().map(usize::to_string).collect();
            out.push_str(&format!("act {g} : {}\n", perm.join(" ")));
        }
        out
    }

    /// Barycentric subdivision with the induced action.
    ///
    /// New vertices are the simplices of `self` ordered by dimension and then
    /// lexicographically, so vertex `v` of the input keeps index `v`.
    pub fn barycentric_subdivide(&self) -> GSimplicialComplex {
        let c = &self.complex;
        let offsets: Vec<usize> = (0..=c.dim())
            .scan(0, |acc, k| {
                let o = *acc;
                *acc += c.count(k);
                Some(o)
            })
            .collect();
        let new_count = c.total_count();
        let mut flags = Vec::new();
        for top in c.maximal_simplices() {
            for_each_permutation(&top, &mut |order: &[usize]| {
                let mut prefix: Vec<usize> = Vec::with_capacity(order.len());
                let mut flag = Vec::with_capacity(order.len());
                for &v in order {
                    let pos = prefix.binary_search(&v).unwrap_err();
                    prefix.insert(pos, v);
                    let k = prefix.len() - 1;
                    flag.push(offsets[k] + c.index_of(&prefix).expect("faces of a simplex are simplices"));
                }
                flags.push(flag);
            });
        }
        let complex = SimplicialComplex::from_maximal(new_count, &flags).expect("flags form a simplicial complex");
        let vertex_action = self
            .group
            .elements()
            .map(|g| {
                let mut perm = Vec::with_capacity(new_count);
                for k in 0..=c.dim() {
                    for i in 0..c.count(k) {
                        perm.push(offsets[k] + self.simplex_action[g][k][i]);
                    }
                }
                perm
            })
            .collect();
        GSimplicialComplex::new(complex, self.group.clone(), vertex_action).expect("induced action is simplicial")
    }
}

fn check_permutation(perm: &[usize], n: usize) -> std::result::Result<(), String> {
    if perm.len() != n {
        return Err(format!("permutation has length {}, expected {n}", perm.len()));
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || seen[v] {
            return Err(format!("not a permutation of 0..{n}"));
        }
        seen[v] = true;
    }
    Ok(())
}

/// A small generating set: greedily add the least element not yet generated.
pub(crate) fn generating_set(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = group.subgroup(&[]);
    for g in group.elements() {
        if !current.contains(g) {
            gens.push(g);
            current = group.subgroup(&gens);
        }
    }
    gens
}

fn for_each_permutation(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn rec(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(&mut items.to_vec(), 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflected_square() -> GSimplicialComplex {
        // 4-cycle with the reflection i -> 1 - i, which flips edges {0,1} and {2,3}
        let c = SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2).unwrap(), &[(1, vec![1, 0, 3, 2])]).unwrap()
    }

    #[test]
    fn reflection_flipping_an_edge_is_not_admissible() {
        let x = reflected_square();
        assert!(!x.is_admissible());
        assert_eq!(x.check_admissible(), Some((1, vec![0, 1])));
    }

    #[test]
    fn one_subdivision_makes_it_admissible() {
        let y = reflected_square().barycentric_subdivide();
        assert!(y.is_admissible());
        assert_eq!(y.complex().counts(), vec![8, 8]);
    }

    #[test]
    fn subdivided_triangle_counts() {
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).unwrap();
        let y = GSimplicialComplex::trivial(c).barycentric_subdivide();
        assert_eq!(y.complex().counts(), vec![7, 12, 6]);
        assert_eq!(y.complex().euler_characteristic(), 1);
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        // a 3-cycle cannot be the image of an element of order 2
        let err = GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2).unwrap(), &[(1, vec![1, 2, 0])]);
        assert!(matches!(err, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn non_simplicial_map_is_rejected() {
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let err = GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2).unwrap(), &[(1, vec![1, 0, 2])]);
        assert!(matches!(err, Err(Error::InvalidAction(_))));
    }
}
