use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::conjugacy::ConjugacyData;
use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::dixon::{self, Fp, Subspace};
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Default bound on the order of groups whose character table is computed.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// An irreducible character: degree and one exact value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irrep {
    pub id: usize,
    pub degree: usize,
    pub values: Vec<Cyclotomic>,
}

/// A class function on the group of some character table, one value per
/// class of that table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

/// Exact character table of a group, or of a subgroup viewed inside an
/// ambient group.
///
/// For a subgroup `K ⊆ G`, the local group has indices `0..|K|` in the order
/// of `K.elements()`, and all values live in `Q(ζ_m)` with `m = exp(G)` so
/// that tables of different subgroups of `G` share one arithmetic domain.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: FiniteGroup,
    embedding: Vec<usize>,
    ambient_to_local: HashMap<usize, usize>,
    classes: ConjugacyData,
    field: Arc<CyclotomicField>,
    irreps: Vec<Irrep>,
}

/// Character table of `group` with the default order bound.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    CharacterTable::compute(group, DEFAULT_MAX_ORDER)
}

impl CharacterTable {
    pub fn compute(group: &FiniteGroup, max_order: usize) -> Result<Self> {
        if group.order() > max_order {
            return Err(Error::BoundExceeded { order: group.order(), bound: max_order });
        }
        let embedding = group.elements().collect();
        Self::build(group.clone(), embedding, group.exponent())
    }

    /// Table of the subgroup `sub` of `ambient`, with values in the
    /// cyclotomic field of conductor `exp(ambient)`.
    pub fn of_subgroup(ambient: &FiniteGroup, sub: &Subgroup) -> Result<Self> {
        Self::of_subgroup_with_conductor(ambient, sub, ambient.exponent())
    }

    pub fn of_subgroup_with_conductor(ambient: &FiniteGroup, sub: &Subgroup, conductor: usize) -> Result<Self> {
        ambient.as_subgroup(sub.elements())?;
        Self::build(sub.to_group(ambient), sub.elements().to_vec(), conductor)
    }

    fn build(group: FiniteGroup, embedding: Vec<usize>, conductor: usize) -> Result<Self> {
        let classes = ConjugacyData::new(&group);
        if !conductor.is_multiple_of(group.exponent()) {
            return Err(Error::InternalInconsistency(format!(
                "conductor {conductor} is not a multiple of the exponent {}",
                group.exponent()
            )));
        }
        let field = CyclotomicField::new(conductor);
        let mut irreps = dixon_irreps(&group, &classes, &field)?;
        let trivial = Cyclotomic::from_integer(&field, 1);
        irreps.sort_by(|a, b| {
            let ta = a.values.iter().all(|v| *v == trivial);
            let tb = b.values.iter().all(|v| *v == trivial);
            tb.cmp(&ta).then(a.degree.cmp(&b.degree)).then_with(|| a.values.cmp(&b.values))
        });
        for (i, irr) in irreps.iter_mut().enumerate() {
            irr.id = i;
        }
        let ambient_to_local = embedding.iter().enumerate().map(|(l, &a)| (a, l)).collect();
        let table = CharacterTable { group, embedding, ambient_to_local, classes, field, irreps };
        table.verify()?;
        Ok(table)
    }

    /// Exact checks of the table invariants; a failure is a bug.
    fn verify(&self) -> Result<()> {
        let n = self.group.order();
        let r = self.classes.len();
        if self.irreps.len() != r {
            return Err(Error::InternalInconsistency(format!("{} irreps for {r} classes", self.irreps.len())));
        }
        if self.irreps.iter().map(|i| i.degree * i.degree).sum::<usize>() != n {
            return Err(Error::InternalInconsistency("sum of squared degrees differs from |G|".into()));
        }
        for a in &self.irreps {
            if !n.is_multiple_of(a.degree) {
                return Err(Error::InternalInconsistency(format!("degree {} does not divide {n}", a.degree)));
            }
            for b in &self.irreps {
                let ip = self.inner_product(&self.character(a.id), &self.character(b.id));
                let expected = Cyclotomic::from_integer(&self.field, i64::from(a.id == b.id));
                if ip != expected {
                    return Err(Error::InternalInconsistency(format!(
                        "orthogonality fails for irreps {} and {}: {ip}",
                        a.id, b.id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn degree(&self, irrep: usize) -> usize {
        self.irreps[irrep].degree
    }

    /// The subgroup of the ambient group this table describes.
    pub fn subgroup(&self) -> Subgroup {
        let mut e = self.embedding.clone();
        e.sort_unstable();
        Subgroup::from_sorted_unchecked(e)
    }

    pub fn ambient_element(&self, local: usize) -> usize {
        self.embedding[local]
    }

    pub fn local_element(&self, ambient: usize) -> Option<usize> {
        self.ambient_to_local.get(&ambient).copied()
    }

    /// Class (of this table) of an ambient element lying in the subgroup.
    pub fn class_of_ambient(&self, ambient: usize) -> Option<usize> {
        self.local_element(ambient).map(|l| self.classes.class_of(l))
    }

    /// Value of an irrep at an ambient element of the subgroup.
    pub fn value(&self, irrep: usize, ambient: usize) -> &Cyclotomic {
        let class = self.class_of_ambient(ambient).expect("element outside the subgroup");
        &self.irreps[irrep].values[class]
    }

    pub fn character(&self, irrep: usize) -> ClassFunction {
        ClassFunction { values: self.irreps[irrep].values.clone() }
    }

    /// Index of the irrep whose values equal `chi`, if any.
    pub fn find_irrep(&self, chi: &ClassFunction) -> Option<usize> {
        self.irreps.iter().position(|i| i.values == chi.values)
    }

    /// `(1/|K|) Σ_k chi(k) conj(psi(k))`
    pub fn inner_product(&self, chi: &ClassFunction, psi: &ClassFunction) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(&self.field);
        for k in 0..self.classes.len() {
            let term = &chi.values[k] * &psi.values[k].conj();
            acc += &term.scale(&BigRational::from_integer(self.classes.class_size(k).into()));
        }
        acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.group.order())))
    }

    /// Restriction of a class function of this table to the subgroup
    /// described by `sub`.
    pub fn restrict(&self, chi: &ClassFunction, sub: &CharacterTable) -> Result<ClassFunction> {
        let values = (0..sub.classes.len())
            .map(|k| {
                let a = sub.ambient_element(sub.classes.rep(k));
                self.class_of_ambient(a)
                    .map(|c| chi.values[c].clone())
                    .ok_or_else(|| Error::NotSubgroup(sub.subgroup().elements().to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { values })
    }

    /// Induced class function from the subgroup table `sub` to this table:
    /// `ind(psi)(g) = (1/|L|) Σ_{x ∈ K, x g x^-1 ∈ L} psi(x g x^-1)`.
    pub fn induce(&self, psi: &ClassFunction, sub: &CharacterTable) -> ClassFunction {
        let values = (0..self.classes.len())
            .map(|k| {
                let g = self.classes.rep(k);
                let mut acc = Cyclotomic::zero(&self.field);
                for x in self.group.elements() {
                    let c = self.ambient_element(self.group.conjugate(x, g));
                    if let Some(cl) = sub.class_of_ambient(c) {
                        acc += &psi.values[cl];
                    }
                }
                acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(sub.group.order())))
            })
            .collect();
        ClassFunction { values }
    }
}

/// Multiplicity `<res^K_L chi, psi>_L` of the irrep `psi` of `L` in the
/// restriction of the character `chi` of `K`.
pub fn multiplicity(
    k_table: &CharacterTable,
    chi: &ClassFunction,
    l_table: &CharacterTable,
    psi: usize,
) -> Result<u64> {
    let res = k_table.restrict(chi, l_table)?;
    let ip = l_table.inner_product(&res, &l_table.character(psi));
    nonnegative_integer(&ip)
}

pub(crate) fn nonnegative_integer(x: &Cyclotomic) -> Result<u64> {
    match x.to_integer() {
        Some(n) if !n.is_negative() => n.to_u64().ok_or_else(|| Error::NonIntegralMultiplicity(x.to_string())),
        _ => Err(Error::NonIntegralMultiplicity(x.to_string())),
    }
}

/// The irrep `g·sigma = sigma ∘ C_g^-1` of `g K g^-1`, located in
/// `conj_table` (the table of `g K g^-1`) by exact character match.
pub fn conjugate_irrep(
    ambient: &FiniteGroup,
    g: usize,
    k_table: &CharacterTable,
    sigma: usize,
    conj_table: &CharacterTable,
) -> Result<usize> {
    let gi = ambient.inv(g);
    let values = (0..conj_table.classes.len())
        .map(|c| {
            let h = conj_table.ambient_element(conj_table.classes.rep(c));
            let back = ambient.conjugate(gi, h);
            k_table
                .class_of_ambient(back)
                .map(|kc| k_table.irreps[sigma].values[kc].clone())
                .ok_or_else(|| Error::InternalInconsistency("conjugate table does not match gKg^-1".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    conj_table
        .find_irrep(&ClassFunction { values })
        .ok_or_else(|| Error::InternalInconsistency("conjugated character is not irreducible".into()))
}

/// Burnside–Dixon: simultaneous eigenvectors of the class matrices over
/// `F_p`, then exact lift of each character value from its eigenvalue
/// multiplicities.
fn dixon_irreps(group: &FiniteGroup, cd: &ConjugacyData, field: &Arc<CyclotomicField>) -> Result<Vec<Irrep>> {
    let n = group.order();
    let r = cd.len();
    let conductor = field.conductor();
    let fp = Fp { p: dixon::choose_prime(conductor, n) };
    let id_class = cd.class_of(group.identity());

    let mut spaces = vec![Subspace::full(r)];
    for j in 0..r {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        if j == id_class {
            continue;
        }
        let m = dixon::class_matrix(group, cd, j, fp);
        let mut next = Vec::new();
        for s in &spaces {
            let pieces = dixon::split(s, &m, fp)
                .ok_or_else(|| Error::InternalInconsistency(format!("class matrix {j} not diagonalizable mod {}", fp.p)))?;
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::InternalInconsistency("class matrices did not separate the characters".into()));
    }

    let inverse_class: Vec<usize> = (0..r).map(|k| cd.class_of(group.inv(cd.rep(k)))).collect();
    let z = dixon::primitive_root_of_unity(fp, conductor as u64);
    let mut irreps = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s.basis[0];
        let scale = fp.inv(v[id_class]);
        let omega: Vec<u64> = v.iter().map(|&x| fp.mul(x, scale)).collect();
        // Σ_k ω_k ω_{k*} / |C_k| = |G| / χ(1)^2
        let s_sum = (0..r).fold(0, |acc, k| {
            let t = fp.mul(omega[k], omega[inverse_class[k]]);
            fp.add(acc, fp.mul(t, fp.inv(fp.from_usize(cd.class_size(k)))))
        });
        if s_sum == 0 {
            return Err(Error::InternalInconsistency("degenerate eigenvector".into()));
        }
        let d2 = fp.mul(fp.from_usize(n), fp.inv(s_sum));
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|&d| (d * d) as u64 == d2)
            .ok_or_else(|| Error::InternalInconsistency("no integral degree".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| fp.mul(fp.mul(omega[k], fp.from_usize(degree)), fp.inv(fp.from_usize(cd.class_size(k)))))
            .collect();

        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let g = cd.rep(k);
            let o = group.element_order(g);
            let step = conductor / o;
            let zo = fp.pow(z, step as u64);
            let zo_inv = fp.inv(zo);
            let powers: Vec<u64> = (0..o).map(|l| chi_mod[cd.class_of(group.pow(g, l))]).collect();
            let inv_o = fp.inv(o as u64 % fp.p);
            let mut counts = vec![0i64; conductor];
            let mut total = 0;
            for jj in 0..o {
                let base = fp.pow(zo_inv, jj as u64);
                let mut acc = 0;
                let mut w = 1;
                for &c in &powers {
                    acc = fp.add(acc, fp.mul(c, w));
                    w = fp.mul(w, base);
                }
                let mult = fp.mul(acc, inv_o) as usize;
                if mult > degree {
                    return Err(Error::InternalInconsistency(format!("eigenvalue multiplicity {mult} exceeds degree")));
                }
                counts[jj * step] = mult as i64;
                total += mult;
            }
            if total != degree {
                return Err(Error::InternalInconsistency("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclotomic::from_exponent_counts(field, &counts));
        }
        irreps.push(Irrep { id: 0, degree, values });
    }
    Ok(irreps)
}
