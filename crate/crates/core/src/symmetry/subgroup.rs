use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{same_group, GroupElement, SymmetryGroup};
use crate::intmat::VarSet;
use crate::{Caps, Error, Result};

/// A subgroup of a [`SymmetryGroup`], stored as the sorted list of element
/// indices (equivalently, elements in lexicographic order of `k`).
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<SymmetryGroup>,
    members: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(group: &Arc<SymmetryGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            members: vec![0],
        }
    }

    pub fn full(group: &Arc<SymmetryGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            members: (0..group.order() as u32).collect(),
        }
    }

    /// Wraps an index list already known to be a sorted subgroup.
    pub(crate) fn from_sorted_members(group: &Arc<SymmetryGroup>, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.first(), Some(&0));
        Subgroup {
            group: Arc::clone(group),
            members,
        }
    }

    /// `⟨g⟩`
    pub fn cyclic(group: &Arc<SymmetryGroup>, g: usize) -> Self {
        let mut members = vec![0u32];
        let mut x = g;
        while x != 0 {
            members.push(x as u32);
            x = group.add(x, g);
        }
        members.sort_unstable();
        Subgroup {
            group: Arc::clone(group),
            members,
        }
    }

    /// Smallest subgroup containing the given element indices.
    pub fn generated_by(group: &Arc<SymmetryGroup>, gens: &[usize]) -> Self {
        gens.iter().fold(Self::trivial(group), |acc, &g| {
            if acc.contains_index(g) {
                acc
            } else {
                acc.sum_unchecked(&Self::cyclic(group, g))
            }
        })
    }

    pub fn group(&self) -> &Arc<SymmetryGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.group.order()
    }

    /// Sorted element indices.
    pub fn indices(&self) -> &[u32] {
        &self.members
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.members.binary_search(&(idx as u32)).is_ok()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        same_group(&self.group, g.group()).is_ok() && self.contains_index(g.index())
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.members.iter().map(|&i| self.group.element(i as usize))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        same_group(&self.group, &other.group).is_ok()
            && self
                .members
                .iter()
                .all(|&i| other.contains_index(i as usize))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(&self.group);
        for &m in &self.members {
            if span.order() == self.order() {
                break;
            }
            if !span.contains_index(m as usize) {
                gens.push(m as usize);
                span = span.sum_unchecked(&Subgroup::cyclic(&self.group, m as usize));
            }
        }
        gens
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        self.generator_indices()
            .into_iter()
            .map(|i| self.group.element(i))
            .collect()
    }

    /// `A + B`, the subgroup generated by `A ∪ B`.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        same_group(&self.group, &other.group)?;
        Ok(self.sum_unchecked(other))
    }

    fn sum_unchecked(&self, other: &Subgroup) -> Subgroup {
        // A + B = {a + b}; both are subgroups so the sumset is closed.
        let mut members: Vec<u32> = self
            .members
            .iter()
            .flat_map(|&a| {
                other
                    .members
                    .iter()
                    .map(move |&b| self.group.add(a as usize, b as usize) as u32)
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        Subgroup {
            group: Arc::clone(&self.group),
            members,
        }
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        same_group(&self.group, &other.group)?;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| other.contains_index(i as usize))
            .collect();
        Ok(Subgroup {
            group: Arc::clone(&self.group),
            members,
        })
    }

    /// Elements acting trivially on every coordinate in `vars`, i.e. the
    /// isotropy subgroup of the coordinate torus `(ℂ*)^vars`.
    pub fn isotropy(&self, vars: VarSet) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| vars.is_subset(self.group.fixed_coordinates(i as usize)))
            .collect();
        Subgroup {
            group: Arc::clone(&self.group),
            members,
        }
    }

    /// `|{g ∈ self : vars ⊆ fixed(g)}|` without materialising the subgroup.
    pub fn isotropy_order(&self, vars: VarSet) -> usize {
        self.members
            .iter()
            .filter(|&&i| vars.is_subset(self.group.fixed_coordinates(i as usize)))
            .count()
    }

    /// Every subgroup of `self` exactly once, ordered by order and then by
    /// element list. Built by closing sums of cyclic subgroups breadth-first.
    pub fn all_subgroups(&self, caps: &Caps) -> Result<Vec<Subgroup>> {
        if self.order() as u64 > caps.subgroup_enum {
            return Err(Error::too_large(
                "subgroup enumeration",
                self.order(),
                caps.subgroup_enum,
            ));
        }
        let mut cyclics: Vec<Subgroup> = Vec::new();
        let mut seen_cyclic = BTreeSet::new();
        for &m in &self.members {
            let c = Subgroup::cyclic(&self.group, m as usize);
            if seen_cyclic.insert(c.members.clone()) {
                cyclics.push(c);
            }
        }

        let trivial = Subgroup::trivial(&self.group);
        let mut seen: HashSet<Vec<u32>> = HashSet::from([trivial.members.clone()]);
        let mut queue = VecDeque::from([trivial.clone()]);
        let mut found = vec![trivial];
        while let Some(s) = queue.pop_front() {
            for c in &cyclics {
                if c.is_subgroup_of(&s) {
                    continue;
                }
                let t = s.sum_unchecked(c);
                if seen.insert(t.members.clone()) {
                    queue.push_back(t.clone());
                    found.push(t);
                }
            }
        }
        found.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(found)
    }
}

/// Builds `⟨gens⟩` inside `group`, checking that every generator belongs to it.
pub fn subgroup_from_generators(
    group: &Arc<SymmetryGroup>,
    gens: &[GroupElement],
) -> Result<Subgroup> {
    let mut idx = Vec::with_capacity(gens.len());
    for g in gens {
        if same_group(group, g.group()).is_err() {
            return Err(Error::ElementNotInGroup(g.to_string()));
        }
        idx.push(g.index());
    }
    Ok(Subgroup::generated_by(group, &idx))
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group).is_ok() && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subgroup", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &self.generators())?;
        st.serialize_field("elements", &self.elements().collect::<Vec<_>>())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::ExponentMatrix;

    fn group(rows: Vec<Vec<u64>>) -> Arc<SymmetryGroup> {
        SymmetryGroup::new(&ExponentMatrix::new(rows).unwrap(), &Caps::default()).unwrap()
    }

    fn elem(g: &Arc<SymmetryGroup>, q: &[(i64, u64)]) -> usize {
        g.element_from_fractions(q).unwrap().index()
    }

    /// Subgroups found by testing every subset of a small group for closure.
    fn brute_force_count(g: &Arc<SymmetryGroup>) -> usize {
        let order = g.order();
        assert!(order <= 16);
        (0u32..1 << order)
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                let has = |i: usize| mask >> i & 1 == 1;
                (0..order).all(|a| !has(a) || (0..order).all(|b| !has(b) || has(g.add(a, b))))
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        let klein = group(vec![vec![2, 0], vec![0, 2]]);
        let subs = Subgroup::full(&klein)
            .all_subgroups(&Caps::default())
            .unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs[0].is_trivial() && subs[4].is_full());

        let z4 = group(vec![vec![2, 1], vec![0, 2]]);
        assert_eq!(
            Subgroup::full(&z4)
                .all_subgroups(&Caps::default())
                .unwrap()
                .len(),
            3
        );

        let trivial = group(vec![vec![1]]);
        assert_eq!(
            Subgroup::full(&trivial)
                .all_subgroups(&Caps::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for rows in [
            vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
            vec![vec![2, 0], vec![0, 4]],
            vec![vec![3, 0], vec![0, 3]],
            vec![vec![2, 0], vec![0, 6]],
            vec![vec![4, 0], vec![0, 4]],
        ] {
            let g = group(rows.clone());
            let subs = Subgroup::full(&g).all_subgroups(&Caps::default()).unwrap();
            assert_eq!(subs.len(), brute_force_count(&g), "{rows:?}");
        }
    }

    #[test]
    fn subgroups_of_a_subgroup() {
        let g = group(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let h = Subgroup::generated_by(
            &g,
            &[
                elem(&g, &[(1, 2), (0, 1), (0, 1)]),
                elem(&g, &[(0, 1), (1, 2), (0, 1)]),
            ],
        );
        let subs = h.all_subgroups(&Caps::default()).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| s.is_subgroup_of(&h)));
    }

    #[test]
    fn enumeration_cap() {
        let g = group(vec![vec![2, 0], vec![0, 2]]);
        let caps = Caps {
            subgroup_enum: 3,
            ..Caps::default()
        };
        assert!(matches!(
            Subgroup::full(&g).all_subgroups(&caps),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn generation() {
        let g = group(vec![vec![2, 0], vec![0, 2]]);
        let h =
            subgroup_from_generators(&g, &[g.element_from_fractions(&[(1, 2), (1, 2)]).unwrap()])
                .unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.to_string(), "{(0, 0), (1/2, 1/2)}");
        assert!(subgroup_from_generators(&g, &[]).unwrap().is_trivial());

        let z4 = group(vec![vec![2, 1], vec![0, 2]]);
        let gen = z4.element_from_fractions(&[(1, 4), (1, 2)]).unwrap();
        assert!(subgroup_from_generators(&z4, &[gen]).unwrap().is_full());

        let wrong = z4.identity();
        assert!(matches!(
            subgroup_from_generators(&g, &[wrong]),
            Err(Error::ElementNotInGroup(_))
        ));
    }

    #[test]
    fn isotropy_examples() {
        let g = group(vec![vec![2, 0], vec![0, 2]]);
        let full = Subgroup::full(&g);
        let iso = full.isotropy(VarSet::from_indices([0]));
        assert_eq!(iso.to_string(), "{(0, 0), (0, 1/2)}");
        assert!(full.isotropy(VarSet::full(2)).is_trivial());
        assert_eq!(full.isotropy(VarSet::EMPTY), full);
        assert_eq!(full.isotropy_order(VarSet::from_indices([0])), 2);
    }

    #[test]
    fn sums_and_intersections() {
        let g = group(vec![vec![2, 0], vec![0, 2]]);
        let a = Subgroup::cyclic(&g, elem(&g, &[(0, 1), (1, 2)]));
        let b = Subgroup::cyclic(&g, elem(&g, &[(1, 2), (0, 1)]));
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.sum(&Subgroup::trivial(&g)).unwrap(), a);
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert!(a.intersection(&b).unwrap().is_trivial());

        let other = group(vec![vec![3]]);
        assert_eq!(
            a.sum(&Subgroup::trivial(&other)),
            Err(Error::MismatchedOwners)
        );
    }

    #[test]
    fn generators_span() {
        let g = group(vec![vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 6]]);
        for s in Subgroup::full(&g).all_subgroups(&Caps::default()).unwrap() {
            let again = Subgroup::generated_by(&g, &s.generator_indices());
            assert_eq!(again, s);
            assert_eq!(g.order() % s.order(), 0);
        }
    }
}
