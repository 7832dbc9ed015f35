//! Simplicial complexes with simplicial actions of finite groups.

mod action;
mod complex;
mod fixtures;
mod io;
mod orbits;

pub use action::GSimplicialComplex;
pub use complex::{is_face, SimplicialComplex};
pub use fixtures::{fixture, Fixture, FIXTURE_NAMES, TRIVIAL_SPACES};
pub use io::{parse_action, parse_complex, to_text, GeneratorImages};
pub use orbits::{
    centralizer_fixed_action, fixed_subcomplex, fixed_vertex_mask, is_bredon_regular, isotropy_strata,
    orbits_and_stabilizers, quotient_complex, quotient_complex_with, IsotropyStratum, OrbitData, QuotientComplex,
    SimplexOrbit, SubdivisionPolicy, MAX_AUTO_SUBDIVISIONS,
};
pub(crate) use orbits::compute_orbits;

/// `Some((g, s))` names an element fixing simplex `s` setwise but not
/// pointwise; `None` means the action is admissible.
pub fn check_admissible(x: &GSimplicialComplex) -> Option<(usize, Vec<usize>)> {
    x.check_admissible()
}

pub fn barycentric_subdivide(x: &GSimplicialComplex) -> GSimplicialComplex {
    x.barycentric_subdivide()
}
