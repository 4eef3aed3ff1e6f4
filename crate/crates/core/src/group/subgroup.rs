use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use super::Group;
use crate::error::{Error, Result};

/// A subgroup stored as its sorted member indices in a parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
    is_normal: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask[x as usize]
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

/// A subgroup realised as a group of its own, with `embedding[i]` the parent
/// index of the subgroup's element `i`.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: Group,
    pub embedding: Vec<u32>,
    pub subgroup: Subgroup,
    local: Vec<u32>,
}

impl Embedded {
    /// Local index of a parent element contained in the subgroup.
    pub fn local(&self, parent_index: u32) -> Option<u32> {
        let l = self.local[parent_index as usize];
        (l != u32::MAX).then_some(l)
    }
}

impl Group {
    fn subgroup_from_mask(&self, mask: Vec<bool>) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&x| mask[x as usize])
            .collect();
        let is_normal = members
            .iter()
            .all(|&x| self.generators().iter().all(|&g| mask[self.conj(x, g) as usize]));
        Subgroup {
            members,
            mask,
            is_normal,
        }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_mask(vec![true; self.order()])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        self.subgroup_from_mask(mask)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated(&self, gens: &[u32]) -> Subgroup {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g) as usize;
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y as u32);
                }
            }
        }
        self.subgroup_from_mask(mask)
    }

    /// Validates that `members` is closed under products and inverses.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Result<Subgroup> {
        let mut mask = vec![false; self.order()];
        for &x in members {
            if x as usize >= self.order() {
                return Err(Error::NotSubgroup(format!("index {x} out of range")));
            }
            mask[x as usize] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in members {
            if !mask[self.inv(a) as usize] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in members {
                if !mask[self.mul(a, b) as usize] {
                    return Err(Error::NotSubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(self.subgroup_from_mask(mask))
    }

    pub fn cyclic_subgroup(&self, x: u32) -> Subgroup {
        self.generated(&[x])
    }

    /// Greedy generating set: members in index order that enlarge the span.
    pub fn subgroup_generators(&self, u: &Subgroup) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for &x in u.members() {
            if !span.contains(x) {
                gens.push(x);
                span = self.generated(&gens);
                if span.order() == u.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn intersect(&self, u: &Subgroup, v: &Subgroup) -> Subgroup {
        let mask = (0..self.order()).map(|x| u.mask[x] && v.mask[x]).collect();
        self.subgroup_from_mask(mask)
    }

    pub fn join(&self, u: &Subgroup, v: &Subgroup) -> Subgroup {
        let mut gens = self.subgroup_generators(u);
        gens.extend(self.subgroup_generators(v));
        self.generated(&gens)
    }

    /// `U^g = g^{-1} U g`.
    pub fn conjugate_subgroup(&self, u: &Subgroup, g: u32) -> Subgroup {
        let mut mask = vec![false; self.order()];
        for &x in u.members() {
            mask[self.conj(x, g) as usize] = true;
        }
        self.subgroup_from_mask(mask)
    }

    /// The set `UV` and whether it is a subgroup.
    pub fn product_set(&self, u: &Subgroup, v: &Subgroup) -> (Vec<u32>, bool) {
        let mut mask = vec![false; self.order()];
        for &a in u.members() {
            for &b in v.members() {
                mask[self.mul(a, b) as usize] = true;
            }
        }
        let set: Vec<u32> = (0..self.order() as u32).filter(|&x| mask[x as usize]).collect();
        // UV is a subgroup iff VU ⊆ UV
        let is_subgroup = v
            .members()
            .iter()
            .all(|&b| u.members().iter().all(|&a| mask[self.mul(b, a) as usize]));
        (set, is_subgroup)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[u32]) -> Subgroup {
        let mut current: Vec<u32> = gens.to_vec();
        let mut sub = self.generated(&current);
        loop {
            let extra: Vec<u32> = self
                .subgroup_generators(&sub)
                .iter()
                .flat_map(|&x| self.generators().iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !sub.contains(y))
                .collect();
            if extra.is_empty() {
                return sub;
            }
            current.extend(extra);
            sub = self.generated(&current);
        }
    }

    /// All normal subgroups containing the normal subgroup `base` whose order
    /// divides `max_order`, sorted by order and then members.
    pub fn normal_subgroups_over(&self, base: &Subgroup, max_order: usize) -> Vec<Subgroup> {
        use std::collections::HashSet;
        let reps = self.conjugacy_classes().reps().to_vec();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        let mut frontier = vec![base.clone()];
        seen.insert(base.members().to_vec());
        while let Some(s) = frontier.pop() {
            let mut gens = self.subgroup_generators(&s);
            for &r in &reps {
                if s.contains(r) {
                    continue;
                }
                gens.push(r);
                let t = self.normal_closure(&gens);
                gens.pop();
                if max_order.is_multiple_of(t.order()) && seen.insert(t.members().to_vec()) {
                    frontier.push(t);
                }
            }
            out.push(s);
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        out
    }

    pub fn is_normal_subgroup(&self, u: &Subgroup) -> bool {
        u.is_normal
    }

    pub fn centralizer_of_element(&self, x: u32) -> Result<Subgroup> {
        if x as usize >= self.order() {
            return Err(Error::InvalidInput(format!("element {x} out of range")));
        }
        let mask = (0..self.order() as u32)
            .map(|g| self.mul(x, g) == self.mul(g, x))
            .collect();
        Ok(self.subgroup_from_mask(mask))
    }

    pub fn centralizer_of_subgroup(&self, u: &Subgroup) -> Subgroup {
        let gens = self.subgroup_generators(u);
        let mask = (0..self.order() as u32)
            .map(|g| gens.iter().all(|&x| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.subgroup_from_mask(mask)
    }

    pub fn center(&self) -> Subgroup {
        let mask = (0..self.order() as u32)
            .map(|z| self.generators().iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        self.subgroup_from_mask(mask)
    }

    /// `[U, V]` for normal subgroups `U` and `V`.
    pub fn commutator_subgroup(&self, u: &Subgroup, v: &Subgroup) -> Subgroup {
        let ug = self.subgroup_generators(u);
        let vg = self.subgroup_generators(v);
        let comms: Vec<u32> = ug
            .iter()
            .flat_map(|&a| vg.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != 0)
            .collect();
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let w = self.whole();
        self.commutator_subgroup(&w, &w)
    }

    /// Realises `U` as a standalone group on its own indices.
    pub fn subgroup_as_group(&self, u: &Subgroup) -> Embedded {
        let gens = self.subgroup_generators(u);
        let (group, embedding) = Group::closure(0u32, &gens, |&a, &b| self.mul(a, b), usize::MAX)
            .expect("a subgroup closes within its parent");
        let mut local = vec![u32::MAX; self.order()];
        for (i, &e) in embedding.iter().enumerate() {
            local[e as usize] = i as u32;
        }
        Embedded {
            group,
            embedding,
            subgroup: u.clone(),
            local,
        }
    }

    /// All subgroups containing `base` whose order divides `max_order`,
    /// each given once, found by adjoining one element at a time.
    pub fn subgroups_over(&self, base: &Subgroup, max_order: usize, keep: impl Fn(&Subgroup) -> bool) -> Vec<Subgroup> {
        use std::collections::HashSet;
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        let mut frontier = vec![base.clone()];
        seen.insert(base.members().to_vec());
        while let Some(s) = frontier.pop() {
            out.push(s.clone());
            let mut gens = self.subgroup_generators(&s);
            let mut covered = vec![false; self.order()];
            for x in 0..self.order() as u32 {
                if s.contains(x) || covered[x as usize] {
                    continue;
                }
                for &y in s.members() {
                    covered[self.mul(y, x) as usize] = true;
                }
                gens.push(x);
                let t = self.generated(&gens);
                gens.pop();
                if t.order() > max_order || !max_order.is_multiple_of(t.order()) || !keep(&t) {
                    continue;
                }
                if seen.insert(t.members().to_vec()) {
                    frontier.push(t);
                }
            }
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_CAP;

    fn d16() -> (Group, Vec<Vec<u32>>) {
        let r = vec![1, 2, 3, 4, 5, 6, 7, 0];
        let s = vec![0, 7, 6, 5, 4, 3, 2, 1];
        Group::from_permutations(8, &[r, s], DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn find(elems: &[Vec<u32>], p: &[u32]) -> u32 {
        elems.iter().position(|e| e == p).unwrap() as u32
    }

    #[test]
    fn normal_subgroups_of_d16() {
        let (g, _) = d16();
        let all = g.normal_subgroups_over(&g.trivial_subgroup(), 16);
        let orders: Vec<usize> = all.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4, 8, 8, 8, 16]);
        assert!(all.iter().all(Subgroup::is_normal));
        let over_center = g.normal_subgroups_over(&g.center(), 4);
        assert_eq!(over_center.len(), 2);
    }

    #[test]
    fn centralizers_in_d16() {
        let (g, el) = d16();
        assert_eq!(g.centralizer_of_element(0).unwrap().order(), 16);
        let r = find(&el, &[1, 2, 3, 4, 5, 6, 7, 0]);
        let c = g.centralizer_of_element(r).unwrap();
        assert_eq!(c.order(), 8);
        assert_eq!(c, g.cyclic_subgroup(r));
        assert!(g.centralizer_of_element(99).is_err());
        assert_eq!(g.center().order(), 2);
    }

    #[test]
    fn subgroup_algebra_in_d16() {
        let (g, el) = d16();
        let r = find(&el, &[1, 2, 3, 4, 5, 6, 7, 0]);
        let s = find(&el, &[0, 7, 6, 5, 4, 3, 2, 1]);
        let u = g.cyclic_subgroup(s);
        assert_eq!(g.intersect(&u, &u), u);
        let r2s = g.mul(g.mul(r, r), s);
        let c = g.cyclic_subgroup(r2s);
        assert_eq!(c.order(), 2);
        assert!(!c.is_normal());
        let cr = g.conjugate_subgroup(&c, r);
        assert_ne!(cr, c);
        assert!(g.intersect(&c, &cr).is_trivial());
        let rot = g.cyclic_subgroup(r);
        assert!(rot.is_normal());
        assert_eq!(g.normal_closure(&[r]), rot);
        let (set, is_sub) = g.product_set(&rot, &u);
        assert_eq!(set.len(), 16);
        assert!(is_sub);
        let (set, is_sub) = g.product_set(&c, &cr);
        assert_eq!(set.len(), 4);
        assert!(!is_sub);
        assert_eq!(g.derived_subgroup().order(), 4);
        assert!(g.subgroup_from_members(&[0, s, r]).is_err());
    }

    #[test]
    fn subgroup_as_group_embeds() {
        let (g, el) = d16();
        let r = find(&el, &[1, 2, 3, 4, 5, 6, 7, 0]);
        let e = g.subgroup_as_group(&g.cyclic_subgroup(r));
        assert_eq!(e.group.order(), 8);
        for a in 0..8u32 {
            for b in 0..8u32 {
                let ab = e.group.mul(a, b);
                assert_eq!(e.embedding[ab as usize], g.mul(e.embedding[a as usize], e.embedding[b as usize]));
            }
        }
    }

    #[test]
    fn enumerating_subgroups_of_d16() {
        let (g, _) = d16();
        let all = g.subgroups_over(&g.trivial_subgroup(), 16, |_| true);
        // 1 + 9 (order 2) + 5 (order 4) + 3 (order 8) + 1
        assert_eq!(all.len(), 19);
    }
}
