use num_rational::Rational64;

use super::action::GSimplicialComplex;
use super::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::grouptheory::FiniteGroup;

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: [&str; 5] = ["d4-torus", "z4-torus", "z2-flip-torus", "z2-circle", "trivial-on(X)"];

/// Spaces accepted by `trivial-on(X)`.
pub const TRIVIAL_SPACES: [&str; 6] = ["point", "interval", "circle", "disk", "sphere", "torus"];

/// A named example action. Coordinates document the vertices of the base
/// triangulation (before any subdivision) and play no computational role.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub action: GSimplicialComplex,
    pub coordinates: Vec<Vec<Rational64>>,
    pub subdivisions: usize,
}

/// Builds a fixture by name; see [`FIXTURE_NAMES`].
pub fn fixture(name: &str) -> Result<Fixture> {
    let (action, coordinates) = match name {
        "d4-torus" => torus_fixture(FiniteGroup::dihedral(4)?, |x| (x / 4, x % 4))?,
        "z4-torus" => torus_fixture(FiniteGroup::cyclic(4)?, |x| (0, x))?,
        "z2-flip-torus" => torus_fixture(FiniteGroup::cyclic(2)?.with_names(vec!["E".into(), "R^2".into()]), |x| (0, 2 * x))?,
        "z2-circle" => {
            let c = cycle(4);
            let coords = (0..4).map(|i| angle(i, 4)).collect();
            let x = GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2)?.with_names(vec!["E".into(), "F".into()]), &[(1, vec![0, 3, 2, 1])])?;
            (x, coords)
        }
        other => {
            let space = other
                .strip_prefix("trivial-on(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| other.strip_prefix("trivial-on:"))
                .ok_or_else(|| Error::UnknownFixture(other.to_string()))?;
            let (c, coords) = trivial_space(space).ok_or_else(|| Error::UnknownFixture(other.to_string()))?;
            (GSimplicialComplex::trivial(c), coords)
        }
    };
    let mut current = action;
    let mut subdivisions = 0;
    while !current.is_admissible() {
        if subdivisions == 2 {
            return Err(Error::InternalInconsistency(format!("fixture {name} not admissible after 2 subdivisions")));
        }
        current = current.barycentric_subdivide();
        subdivisions += 1;
    }
    Ok(Fixture { name: name.to_string(), action: current, coordinates, subdivisions })
}

fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_maximal(n, &edges).expect("cycle")
}

fn angle(i: i64, n: i64) -> Vec<Rational64> {
    vec![Rational64::new(i, n)]
}

fn trivial_space(name: &str) -> Option<(SimplicialComplex, Vec<Vec<Rational64>>)> {
    let c = match name {
        "point" => SimplicialComplex::from_maximal(1, &[]).ok()?,
        "interval" => SimplicialComplex::from_maximal(2, &[vec![0, 1]]).ok()?,
        "circle" => cycle(4),
        "disk" => SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).ok()?,
        "sphere" => SimplicialComplex::from_maximal(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).ok()?,
        "torus" => return Some(torus()),
        _ => return None,
    };
    Some((c, Vec::new()))
}

/// Grid index of the point `(a/8, b/8)`; grid points have even
/// coordinates, square centres odd ones.
fn torus_vertex(a: i64, b: i64) -> usize {
    let (a, b) = (a.rem_euclid(8) as usize, b.rem_euclid(8) as usize);
    if a % 2 == 0 {
        debug_assert!(b % 2 == 0);
        (a / 2) * 4 + b / 2
    } else {
        16 + (a / 2) * 4 + b / 2
    }
}

/// The torus `R²/Z²` triangulated by the quarter grid with every square
/// coned at its centre: 32 vertices, 96 edges, 64 triangles.
fn torus() -> (SimplicialComplex, Vec<Vec<Rational64>>) {
    let mut coords = vec![Vec::new(); 32];
    for a in 0..8i64 {
        for b in 0..8i64 {
            if a % 2 == b % 2 {
                coords[torus_vertex(a, b)] = vec![Rational64::new(a, 8), Rational64::new(b, 8)];
            }
        }
    }
    let mut triangles = Vec::new();
    for i in 0..4i64 {
        for j in 0..4i64 {
            let centre = torus_vertex(2 * i + 1, 2 * j + 1);
            let corners = [(0, 0), (1, 0), (1, 1), (0, 1)].map(|(di, dj)| torus_vertex(2 * (i + di), 2 * (j + dj)));
            for k in 0..4 {
                triangles.push(vec![centre, corners[k], corners[(k + 1) % 4]]);
            }
        }
    }
    (SimplicialComplex::from_maximal(32, &triangles).expect("torus"), coords)
}

/// `S^s R^r` with `R` the quarter turn and `S` the reflection `y ↦ -y`.
fn matrix(s: usize, r: usize) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..r % 4 {
        // left-multiply by R = [[0,-1],[1,0]]
        m = [[-m[1][0], -m[1][1]], [m[0][0], m[0][1]]];
    }
    if s % 2 == 1 {
        m = [m[0], [-m[1][0], -m[1][1]]];
    }
    m
}

/// Torus fixture for a group whose element `x` acts by `S^s R^r` where
/// `(s, r) = word(x)`.
fn torus_fixture(group: FiniteGroup, word: impl Fn(usize) -> (usize, usize)) -> Result<(GSimplicialComplex, Vec<Vec<Rational64>>)> {
    let (c, coords) = torus();
    let mut action = Vec::with_capacity(group.order());
    for x in group.elements() {
        let (s, r) = word(x);
        let m = matrix(s, r);
        let perm = (0..32)
            .map(|v| {
                let p = &coords[v];
                let (a, b) = ((p[0] * 8).to_integer(), (p[1] * 8).to_integer());
                torus_vertex(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
            })
            .collect();
        action.push(perm);
    }
    Ok((GSimplicialComplex::new(c, group, action)?, coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_counts() {
        let (t, _) = torus();
        assert_eq!(t.counts(), vec![32, 96, 64]);
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn all_fixtures_build() {
        for name in ["d4-torus", "z4-torus", "z2-flip-torus", "z2-circle", "trivial-on(torus)", "trivial-on:point"] {
            let f = fixture(name).unwrap();
            assert!(f.action.is_admissible(), "{name}");
        }
        assert!(matches!(fixture("klein-bottle"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("trivial-on(moebius)"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn d4_torus_needs_no_subdivision() {
        assert_eq!(fixture("d4-torus").unwrap().subdivisions, 0);
    }
}
