use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest order for which associativity is verified on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_BOUND: usize = 512;
/// Seed of the associativity spot-check used above the exhaustive bound.
pub const ASSOCIATIVITY_SEED: u64 = 0x6f72_6269_6b74;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..order`. `mul(a, b)` is the product `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            mult.extend_from_slice(row);
        }
        Self::from_flat(n, mult)
    }

    fn from_flat(n: usize, mult: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = mult.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range 0..{n}")));
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = mult[i * n + j];
                if seen[x] {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
                seen[x] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = mult[j * n + i];
                if seen[x] {
                    return Err(Error::InvalidGroup(format!("column {i} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mult[e * n + g] == g && mult[g * n + e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            // latin square: exactly one h with gh = e
            inv[g] = (0..n).find(|&h| mult[g * n + h] == identity).unwrap();
            if mult[inv[g] * n + g] != identity {
                return Err(Error::InvalidGroup(format!("element {g} has no two-sided inverse")));
            }
        }
        let group = FiniteGroup { order: n, mult, inv, identity, names: None };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| Err(Error::InvalidGroup(format!("not associative on ({a}, {b}, {c})")));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    /// Group generated by permutations of `0..degree` in one-line image
    /// notation. Elements are numbered in breadth-first order from the
    /// identity, applying generators in the order given.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for (i, p) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let (elements, _) = close_permutations(degree, generators);
        let index: HashMap<&Vec<usize>, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut mult = vec![0; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                // (ab)(x) = a(b(x)): apply b first
                let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                mult[i * n + j] = index[&ab];
            }
        }
        Self::from_flat(n, mult)
    }

    /// Cyclic group of order `n`; element `i` is `r^i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mult = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let names = (0..n).map(|i| power_name("R", i)).collect();
        Ok(Self::from_flat(n, mult)?.with_names(names))
    }

    /// Dihedral group of order `2n`, `<R, S | R^n = S^2 = 1, S R S = R^-1>`.
    /// Element `i < n` is `R^i`, element `n + i` is `S R^i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group with n = 0".into()));
        }
        let order = 2 * n;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            let (a, i) = (x / n, x % n);
            for y in 0..order {
                let (b, j) = (y / n, y % n);
                // S^a R^i S^b R^j = S^(a+b) R^((-1)^b i + j)
                let exp = if b == 0 { (i + j) % n } else { (j + n - i) % n };
                mult[x * order + y] = ((a + b) % 2) * n + exp;
            }
        }
        let names = (0..order)
            .map(|x| match x {
                x if x < n => power_name("R", x),
                x if x == n => "S".to_string(),
                x => format!("S{}", power_name("R", x - n)),
            })
            .collect();
        Ok(Self::from_flat(order, mult)?.with_names(names))
    }

    /// Direct product; the pair `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (n, m) = (g.order, h.order);
        let order = n * m;
        let mut mult = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                mult[x * order + y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
            }
        }
        let group = Self::from_flat(order, mult)?;
        let names = match (&g.names, &h.names) {
            (Some(a), Some(b)) => Some((0..order).map(|x| format!("({},{})", a[x / m], b[x % m])).collect()),
            _ => None,
        };
        Ok(FiniteGroup { names, ..group })
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mult: vec![0], inv: vec![0], identity: 0, names: Some(vec!["E".into()]) }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.order {
            self.names = Some(names);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g h g^-1`
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv[g])
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Resolves an element given either by name or by index.
    pub fn lookup(&self, token: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Some(i);
            }
        }
        token.parse().ok().filter(|&i| i < self.order)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All ordered pairs `(a, b)` with `ab = ba`.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                if self.mul(a, b) == self.mul(b, a) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Closure of `generators` under multiplication.
    pub fn subgroup(&self, generators: &[usize]) -> Subgroup {
        let mut members = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup { elements: members.into_iter().collect() }
    }

    /// Checks that `elements` is a subgroup and wraps it.
    pub fn as_subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        let closed = set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order && set.contains(&self.inv[a]))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))));
        if !closed {
            return Err(Error::NotSubgroup(set.into_iter().collect()));
        }
        Ok(Subgroup { elements: set.into_iter().collect() })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    /// Centralizer of `g`.
    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup { elements: (0..self.order).filter(|&h| self.mul(g, h) == self.mul(h, g)).collect() }
    }

    /// Text form used by the group input file (`group <n>` / `table`).
    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\ntable\n", self.order);
        for row in self.mult.chunks(self.order) {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if let Some(names) = &self.names {
            out.push_str("names ");
            out.push_str(&names.join(" "));
            out.push('\n');
        }
        out
    }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "E".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn close_permutations(degree: usize, generators: &[Vec<usize>]) -> (Vec<Vec<usize>>, usize) {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(id.clone(), 0)]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    (elements, n)
}

/// A subgroup, stored as the sorted list of its elements in the ambient
/// group's indexing. The ambient group is passed alongside where needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `g K g^-1`
    pub fn conjugate(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&k| group.conjugate(g, k)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_conjugate_to(&self, group: &FiniteGroup, other: &Subgroup) -> bool {
        self.order() == other.order() && group.elements().any(|g| &self.conjugate(group, g) == other)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    /// The subgroup as a group in its own right, with local indices
    /// `0..|K|` in the order of `elements()`.
    pub fn to_group(&self, group: &FiniteGroup) -> FiniteGroup {
        let local: HashMap<usize, usize> = self.elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = self.elements.len();
        let mut mult = vec![0; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                mult[i * n + j] = local[&group.mul(a, b)];
            }
        }
        let inv = self.elements.iter().map(|&a| local[&group.inv(a)]).collect();
        let names = group.names.as_ref().map(|names| self.elements.iter().map(|&g| names[g].clone()).collect());
        FiniteGroup { order: n, mult, inv, identity: local[&group.identity()], names }
    }
}
