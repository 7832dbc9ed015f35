use orbikt::crossed::{aggregate_strata, specialization};
use orbikt::gcomplex::{barycentric_subdivide, isotropy_strata, GSimplicialComplex, SimplicialComplex};
use orbikt::grouptheory::{
    character_table, conjugate_irrep, multiplicity, CharacterTable, Cyclotomic, CyclotomicField, FiniteGroup,
};
use orbikt::homology::{chain_complex, homology_integral, rational_rank, smith_invariants, SparseMatrix};
use orbikt::ktheory::bc_decomposition;
use num_integer::Integer;
use proptest::prelude::*;

fn cyclotomic(conductor: usize) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-3i64..4, conductor).prop_map(move |c| Cyclotomic::from_exponent_counts(&CyclotomicField::new(conductor), &c))
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(vec![1usize, 2, 3, 4, 5, 6, 8, 12]).prop_flat_map(|m| (cyclotomic(m), cyclotomic(m), cyclotomic(m)))
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..13).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
        (2usize..7).prop_map(|n| FiniteGroup::dihedral(n).unwrap()),
        ((1usize..4), (2usize..4)).prop_map(|(a, b)| FiniteGroup::product(&FiniteGroup::cyclic(a).unwrap(), &FiniteGroup::dihedral(b).unwrap()).unwrap()),
    ]
}

/// A group with a chain `L ⊆ K` given by random generators and a
/// conjugating element.
fn subgroup_pair() -> impl Strategy<Value = (FiniteGroup, Vec<usize>, Vec<usize>, usize)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, 1..3), prop::collection::vec(0..n, 0..2), 0..n)
    })
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..8).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..4), 1..10).prop_map(move |sets| {
            SimplicialComplex::from_maximal(n, &sets.into_iter().map(|s| s.into_iter().collect()).collect::<Vec<_>>()).unwrap()
        })
    })
}

/// A random complex made invariant under a random involution.
fn z2_complex() -> impl Strategy<Value = GSimplicialComplex> {
    (2usize..7).prop_flat_map(|n| {
        (Just(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(prop::collection::btree_set(0..n, 1..4), 1..6))
    })
    .prop_map(|(n, shuffled, sets)| {
        let mut inv: Vec<usize> = (0..n).collect();
        for pair in shuffled.chunks(2) {
            if let [a, b] = *pair {
                inv[a] = b;
                inv[b] = a;
            }
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            let s: Vec<usize> = s.into_iter().collect();
            let mut t: Vec<usize> = s.iter().map(|&v| inv[v]).collect();
            t.sort_unstable();
            maximal.push(s);
            maximal.push(t);
        }
        let c = SimplicialComplex::from_maximal(n, &maximal).unwrap();
        let x = GSimplicialComplex::from_generators(c, FiniteGroup::cyclic(2).unwrap(), &[(1, inv)]).unwrap();
        if x.is_admissible() {
            x
        } else {
            barycentric_subdivide(&x)
        }
    })
}

fn assert_two_oracles(m: &SparseMatrix) -> Result<(), TestCaseError> {
    let inv = smith_invariants(m);
    prop_assert_eq!(inv.len(), rational_rank(m));
    for w in inv.windows(2) {
        prop_assert!(w[1].is_multiple_of(&w[0]));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cyclotomic_ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Cyclotomic::zero(a.field()));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn orthogonality_and_degree_sum(g in small_group()) {
        let ct = character_table(&g).unwrap();
        let sum: usize = ct.irreps().iter().map(|i| i.degree * i.degree).sum();
        prop_assert_eq!(sum, g.order());
        prop_assert_eq!(ct.len(), ct.classes().len());
        for i in 0..ct.len() {
            for j in 0..ct.len() {
                let ip = ct.inner_product(&ct.character(i), &ct.character(j));
                prop_assert_eq!(ip, Cyclotomic::from_integer(ct.field(), i64::from(i == j)));
            }
        }
    }

    #[test]
    fn frobenius_reciprocity_and_conjugation((g, kgens, lextra, x) in subgroup_pair()) {
        let k = g.subgroup(&kgens);
        // L is generated by powers of K's generators plus elements of K
        let mut lgens: Vec<usize> = kgens.iter().map(|&a| g.mul(a, a)).collect();
        lgens.extend(lextra.iter().map(|&i| k.elements()[i % k.order()]));
        let l = g.subgroup(&lgens);
        prop_assert!(l.is_subgroup_of(&k));
        let kt = CharacterTable::of_subgroup(&g, &k).unwrap();
        let lt = CharacterTable::of_subgroup(&g, &l).unwrap();
        let (kc, lc) = (k.conjugate(&g, x), l.conjugate(&g, x));
        let kct = CharacterTable::of_subgroup(&g, &kc).unwrap();
        let lct = CharacterTable::of_subgroup(&g, &lc).unwrap();
        for psi in 0..lt.len() {
            let ind = kt.induce(&lt.character(psi), &lt);
            let psi_c = conjugate_irrep(&g, x, &lt, psi, &lct).unwrap();
            for chi in 0..kt.len() {
                let res = kt.restrict(&kt.character(chi), &lt).unwrap();
                prop_assert_eq!(kt.inner_product(&ind, &kt.character(chi)), lt.inner_product(&lt.character(psi), &res));
                let chi_c = conjugate_irrep(&g, x, &kt, chi, &kct).unwrap();
                prop_assert_eq!(
                    multiplicity(&kt, &kt.character(chi), &lt, psi).unwrap(),
                    multiplicity(&kct, &kct.character(chi_c), &lct, psi_c).unwrap()
                );
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero_and_oracles_agree(c in random_complex()) {
        let cc = chain_complex(&c);
        prop_assert!(cc.satisfies_dd_zero());
        for m in &cc.boundaries {
            assert_two_oracles(m)?;
        }
    }

    #[test]
    fn integer_matrix_oracles(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..6)) {
        assert_two_oracles(&SparseMatrix::from_dense(&rows))?;
    }

    #[test]
    fn homology_survives_subdivision(c in random_complex()) {
        let sd = barycentric_subdivide(&GSimplicialComplex::trivial(c.clone()));
        prop_assert_eq!(homology_integral(&c).unwrap(), homology_integral(sd.complex()).unwrap());
    }

    #[test]
    fn bc_totals_survive_subdivision(x in z2_complex()) {
        let sd = barycentric_subdivide(&x);
        prop_assert_eq!(bc_decomposition(&x).unwrap().totals, bc_decomposition(&sd).unwrap().totals);
    }

    #[test]
    fn specialization_is_a_preorder(x in z2_complex()) {
        let p = specialization(&x).unwrap();
        prop_assert!(p.is_reflexive() && p.is_transitive());
        if let Ok(a) = aggregate_strata(&x, &p, &isotropy_strata(&x).unwrap()) {
            prop_assert!(a.is_reflexive() && a.is_transitive());
        }
    }
}
