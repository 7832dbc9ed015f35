use super::group::{FiniteGroup, Subgroup};

/// Conjugacy classes, ordered by their minimal element, with centralizers
/// of the representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    centralizers: Vec<Subgroup>,
}

impl ConjugacyData {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = group.elements().map(|g| group.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        let centralizers = classes.iter().map(|c| group.centralizer(c[0])).collect();
        ConjugacyData { classes, class_of, centralizers }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &[usize] {
        &self.classes[k]
    }

    /// Representative of class `k`: its minimal element.
    pub fn rep(&self, k: usize) -> usize {
        self.classes[k][0]
    }

    pub fn reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    pub fn centralizer(&self, k: usize) -> &Subgroup {
        &self.centralizers[k]
    }
}

/// Conjugacy data of `group`: classes with minimal representatives and
/// centralizers computed by direct scan.
pub fn conjugacy_data(group: &FiniteGroup) -> ConjugacyData {
    ConjugacyData::new(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_has_singleton_classes() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let cd = conjugacy_data(&g);
        assert_eq!(cd.len(), 4);
        for k in 0..4 {
            assert_eq!(cd.class_size(k), 1);
            assert_eq!(cd.centralizer(k).order(), 4);
        }
    }

    #[test]
    fn dihedral_eight_classes() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let cd = conjugacy_data(&g);
        let named: Vec<Vec<String>> =
            cd.classes().iter().map(|c| c.iter().map(|&x| g.name(x)).collect()).collect();
        assert_eq!(
            named,
            vec![
                vec!["E".to_string()],
                vec!["R".into(), "R^3".into()],
                vec!["R^2".into()],
                vec!["S".into(), "SR^2".into()],
                vec!["SR".into(), "SR^3".into()],
            ]
        );
        let s = g.lookup("S").unwrap();
        let z: Vec<String> = cd.centralizer(cd.class_of(s)).elements().iter().map(|&x| g.name(x)).collect();
        assert_eq!(z, vec!["E", "R^2", "S", "SR^2"]);
    }

    #[test]
    fn class_equation() {
        for g in [FiniteGroup::dihedral(5).unwrap(), FiniteGroup::dihedral(6).unwrap(), FiniteGroup::cyclic(7).unwrap()] {
            let cd = conjugacy_data(&g);
            for k in 0..cd.len() {
                assert_eq!(cd.class_size(k) * cd.centralizer(k).order(), g.order());
            }
            assert_eq!(cd.classes().iter().map(Vec::len).sum::<usize>(), g.order());
        }
    }
}
