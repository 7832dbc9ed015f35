use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite abstract simplicial complex.
///
/// Simplices are strictly increasing vertex tuples, stored per dimension in
/// lexicographic order. Every vertex `0..vertex_count` is a 0-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Builds the closure of the given simplices (usually the maximal ones).
    /// Vertices that occur in no simplex are kept as isolated points.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for v in 0..vertex_count {
            by_dim[0].insert(vec![v]);
        }
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in simplex {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidComplex(format!("vertex {v} out of range 0..{vertex_count}")));
            }
            // all non-empty subsets
            let k = s.len();
            if k > 20 {
                return Err(Error::InvalidComplex("simplex of dimension > 19".into()));
            }
            while by_dim.len() < k {
                by_dim.push(BTreeSet::new());
            }
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        Ok(Self::from_sorted(vertex_count, by_dim.into_iter().map(|s| s.into_iter().collect()).collect()))
    }

    fn from_sorted(vertex_count: usize, simplices: Vec<Vec<Vec<usize>>>) -> Self {
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertex_count, simplices, index }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension; 0 for a set of points, and also for the empty complex.
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    /// Index of a sorted vertex tuple within its dimension.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.index.get(k)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Simplices not contained in a larger one.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut is_face: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for k in 1..self.simplices.len() {
            for s in &self.simplices[k] {
                for drop in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    let fi = self.index[k - 1][&face];
                    is_face[k - 1][fi] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                if !is_face[k][i] {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Full subcomplex on the given vertices, relabelled `0..m` in
    /// increasing order of the original index. Returns the complex and the
    /// new-to-old vertex map.
    pub fn full_subcomplex(&self, keep: &[bool]) -> (SimplicialComplex, Vec<usize>) {
        let old: Vec<usize> = (0..self.vertex_count).filter(|&v| keep[v]).collect();
        let mut new_index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for list in &self.simplices {
            let kept: Vec<Vec<usize>> = list
                .iter()
                .filter(|s| s.iter().all(|&v| keep[v]))
                .map(|s| s.iter().map(|&v| new_index[v]).collect())
                .collect();
            if kept.is_empty() {
                break;
            }
            simplices.push(kept);
        }
        if simplices.is_empty() {
            simplices.push(Vec::new());
        }
        // relabelling is monotone, so lexicographic order is preserved
        (Self::from_sorted(old.len(), simplices), old)
    }

    /// Text form used by the complex file: `vertices <n>` then one
    /// `simplex ...` line per maximal simplex.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for s in self.maximal_simplices() {
            let vs: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&format!("simplex {}\n", vs.join(" ")));
        }
        out
    }

    /// The boundary faces of `s` in the order `d_0, d_1, …` (face `i` drops
    /// vertex `i`).
    pub fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..s.len()).map(move |drop| s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect())
    }
}

/// Whether `small ⊆ big` for sorted vertex tuples.
pub fn is_face(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &v in small {
        while j < big.len() && big[j] < v {
            j += 1;
        }
        if j == big.len() || big[j] != v {
            return false;
        }
        j += 1;
    }
    true
}
