use super::{Group, Subgroup};

/// Lower central and derived series with the invariants read off them.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    /// `γ_1 = G ⊇ γ_2 = [G, G] ⊇ …` until the series stabilises.
    pub lower_central: Vec<Subgroup>,
    /// `G ⊇ G' ⊇ G'' ⊇ …` until the series stabilises.
    pub derived: Vec<Subgroup>,
    /// `None` when the lower central series stops above the trivial group.
    pub nilpotence_class: Option<usize>,
    /// `None` when the derived series stops above the trivial group.
    pub derived_length: Option<usize>,
    pub is_metabelian: bool,
    pub class_at_most_3: bool,
    pub center: Subgroup,
}

impl Group {
    pub fn series_report(&self) -> SeriesReport {
        let whole = self.whole();
        let mut lower = vec![whole.clone()];
        loop {
            let last = lower.last().expect("non-empty");
            let next = self.commutator_subgroup(last, &whole);
            if &next == last {
                break;
            }
            let done = next.is_trivial();
            lower.push(next);
            if done {
                break;
            }
        }
        let mut derived = vec![whole.clone()];
        loop {
            let last = derived.last().expect("non-empty");
            let next = self.commutator_subgroup(last, last);
            if &next == last {
                break;
            }
            let done = next.is_trivial();
            derived.push(next);
            if done {
                break;
            }
        }
        let reaches_one = |s: &[Subgroup]| s.last().is_some_and(Subgroup::is_trivial);
        let nilpotence_class = reaches_one(&lower).then(|| lower.len() - 1);
        let derived_length = reaches_one(&derived).then(|| derived.len() - 1);
        SeriesReport {
            is_metabelian: derived_length.is_some_and(|d| d <= 2),
            class_at_most_3: nilpotence_class.is_some_and(|c| c <= 3),
            nilpotence_class,
            derived_length,
            lower_central: lower,
            derived,
            center: self.center(),
        }
    }

    /// A chief series `G = N_0 > N_1 > … > N_n = 1` with every factor of
    /// prime order, for a p-group, by refining the lower central series.
    pub fn chief_series(&self) -> Vec<Subgroup> {
        let p = match self.prime() {
            Some(p) => p as i64,
            None => return vec![self.whole()],
        };
        let lower = self.series_report().lower_central;
        let mut ascending = vec![self.trivial_subgroup()];
        for w in lower.windows(2).rev() {
            let (upper, lower_term) = (&w[0], &w[1]);
            let mut cur = lower_term.clone();
            while cur.order() < upper.order() {
                let x = upper
                    .members()
                    .iter()
                    .copied()
                    .find(|&x| !cur.contains(x) && cur.contains(self.pow(x, p)))
                    .expect("p-group factor has an element of order p");
                let mut gens = self.subgroup_generators(&cur);
                gens.push(x);
                cur = self.generated(&gens);
                ascending.push(cur.clone());
            }
        }
        if ascending.last().map(Subgroup::order) != Some(self.order()) {
            ascending.push(self.whole());
        }
        ascending.dedup();
        ascending.reverse();
        ascending
    }
}

#[cfg(test)]
mod tests {
    use crate::group::{Group, DEFAULT_CLOSURE_CAP};

    #[test]
    fn abelian_series() {
        let g = Group::direct_product(&Group::cyclic(9), &Group::cyclic(3));
        let s = g.series_report();
        assert_eq!(s.nilpotence_class, Some(1));
        assert_eq!(s.derived_length, Some(1));
        assert!(s.is_metabelian);
        assert_eq!(s.center.order(), 27);
    }

    #[test]
    fn dihedral_16_series() {
        let r = vec![1, 2, 3, 4, 5, 6, 7, 0];
        let s = vec![0, 7, 6, 5, 4, 3, 2, 1];
        let (g, _) = Group::from_permutations(8, &[r, s], DEFAULT_CLOSURE_CAP).unwrap();
        let rep = g.series_report();
        assert_eq!(rep.nilpotence_class, Some(3));
        assert_eq!(rep.derived_length, Some(2));
        assert!(rep.is_metabelian && rep.class_at_most_3);
        let orders: Vec<usize> = rep.lower_central.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![16, 4, 2, 1]);
        for term in rep.lower_central.iter().chain(&rep.derived) {
            assert!(term.is_normal());
        }
        let chief = g.chief_series();
        let orders: Vec<usize> = chief.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![16, 8, 4, 2, 1]);
        assert!(chief.iter().all(|s| s.is_normal()));
    }

    #[test]
    fn symmetric_group_is_not_nilpotent() {
        let (g, _) = Group::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap();
        let s = g.series_report();
        assert_eq!(s.nilpotence_class, None);
        assert_eq!(s.derived_length, Some(2));
    }
}
