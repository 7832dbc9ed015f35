use num_bigint::BigInt;
use orbikt::gcomplex::{fixed_subcomplex, fixture, quotient_complex};
use orbikt::homology::{
    chain_complex, chain_lefschetz, chain_map, homology_integral, invariant_cohomology_dims, k_ranks, rational_rank,
    smith_invariants, KRanks, SparseMatrix,
};

const FIXTURES: [&str; 5] = ["d4-torus", "z4-torus", "z2-flip-torus", "z2-circle", "trivial-on(sphere)"];

#[test]
fn torus_homology() {
    let x = fixture("trivial-on(torus)").unwrap().action;
    let h = homology_integral(x.complex()).unwrap();
    assert_eq!(h.betti, vec![1, 2, 1]);
    assert!(h.is_torsion_free());
    assert_eq!(k_ranks(x.complex()).unwrap(), KRanks { even: 2, odd: 2 });
}

#[test]
fn sphere_quotient_of_z4_torus() {
    let q = quotient_complex(&fixture("z4-torus").unwrap().action).unwrap();
    assert_eq!(homology_integral(&q.complex).unwrap().betti, vec![1, 0, 1]);
    assert_eq!(k_ranks(&q.complex).unwrap(), KRanks { even: 2, odd: 0 });
    let d4 = quotient_complex(&fixture("d4-torus").unwrap().action).unwrap();
    assert_eq!(homology_integral(&d4.complex).unwrap().betti, vec![1, 0, 0]);
}

#[test]
fn invariant_dims() {
    assert_eq!(invariant_cohomology_dims(&fixture("d4-torus").unwrap().action).unwrap(), vec![1, 0, 0]);
    assert_eq!(invariant_cohomology_dims(&fixture("z2-flip-torus").unwrap().action).unwrap(), vec![1, 0, 1]);
    assert_eq!(invariant_cohomology_dims(&fixture("trivial-on(torus)").unwrap().action).unwrap(), vec![1, 2, 1]);
}

#[test]
fn invariants_match_quotient_betti() {
    for name in FIXTURES {
        let x = fixture(name).unwrap().action;
        let q = quotient_complex(&x).unwrap();
        let betti = homology_integral(&q.complex).unwrap().betti;
        assert_eq!(invariant_cohomology_dims(&x).unwrap(), betti, "{name}");
    }
}

#[test]
fn chain_maps_commute_with_boundary_and_have_finite_order() {
    for name in FIXTURES {
        let x = fixture(name).unwrap().action;
        let cc = chain_complex(x.complex());
        assert!(cc.satisfies_dd_zero());
        for g in x.group().elements() {
            for k in 1..=x.complex().dim() {
                let d = cc.boundary(k).unwrap();
                assert_eq!(d.mul(&chain_map(&x, g, k)), chain_map(&x, g, k - 1).mul(d), "{name} g={g} k={k}");
            }
            let order = x.group().element_order(g);
            for k in 0..=x.complex().dim() {
                let m = chain_map(&x, g, k);
                let mut p = SparseMatrix::identity(m.rows());
                for _ in 0..order {
                    p = m.mul(&p);
                }
                assert_eq!(p, SparseMatrix::identity(m.rows()));
            }
        }
    }
}

#[test]
fn lefschetz_equals_fixed_euler_characteristic() {
    for name in FIXTURES {
        let x = fixture(name).unwrap().action;
        for g in x.group().elements() {
            let fixed = fixed_subcomplex(&x, &[g]).unwrap();
            assert_eq!(chain_lefschetz(&x, g), fixed.euler_characteristic(), "{name} g={g}");
        }
    }
}

#[test]
fn two_oracle_rank_agreement_on_fixture_boundaries() {
    for name in FIXTURES {
        let x = fixture(name).unwrap().action;
        let q = quotient_complex(&x).unwrap();
        for c in [x.complex(), &q.complex, q.source.complex()] {
            let cc = chain_complex(c);
            assert!(cc.satisfies_dd_zero());
            for d in &cc.boundaries {
                assert_eq!(smith_invariants(d).len(), rational_rank(d));
            }
        }
    }
}

#[test]
fn smith_form_of_known_matrix() {
    // diag(2, 3) is equivalent to diag(1, 6)
    let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(smith_invariants(&m), vec![BigInt::from(1), BigInt::from(6)]);
}
