use crate::character::CharacterTable;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::Subgroup;

/// `(G, K, L, θ, φ)` with `θ` and `φ` given as row indices in the tables of
/// `K` and `L`.
#[derive(Clone, Debug)]
pub struct CharacterFive {
    pub k: Subgroup,
    pub l: Subgroup,
    pub theta: usize,
    pub phi: usize,
}

impl CharacterTable {
    /// Value of row `row` of the table of normal subgroup `n` at the
    /// G-element `x`, embedded in the conductor of this table.
    fn normal_value(&self, n: &Subgroup, row: usize, x: u32) -> Result<Cyclo> {
        let sub = self.normal_table(n)?;
        let local = sub.embedded.local(x).ok_or_else(|| Error::InvalidInput("element outside the subgroup".into()))?;
        let t = &sub.table;
        t.row(row).value(t.classes().class_of(local)).embed(self.conductor())
    }

    fn invariant(&self, n: &Subgroup, row: usize) -> Result<bool> {
        let g = self.group();
        for &x in n.members() {
            let v = self.normal_value(n, row, x)?;
            for &s in g.generators() {
                if self.normal_value(n, row, g.conj(x, s))? != v {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks the definition of a character five.
    pub fn validate_five(&self, five: &CharacterFive) -> Result<()> {
        let bad = |m: &str| Err(Error::NotCharacterFive(m.into()));
        if !five.k.is_normal() || !five.l.is_normal() {
            return bad("K and L must be normal");
        }
        if !five.l.is_subset_of(&five.k) {
            return bad("L must lie in K");
        }
        let kt = self.normal_table(&five.k)?;
        let lt = self.normal_table(&five.l)?;
        if five.theta >= kt.table.len() || five.phi >= lt.table.len() {
            return bad("character index out of range");
        }
        if !self.invariant(&five.k, five.theta)? || !self.invariant(&five.l, five.phi)? {
            return bad("θ and φ must be G-invariant");
        }
        let e = kt.table.row(five.theta).degree() / lt.table.row(five.phi).degree();
        if (e * e) as usize * five.l.order() != five.k.order() {
            return bad("θ is not fully ramified over φ");
        }
        for &x in five.l.members() {
            let theta = self.normal_value(&five.k, five.theta, x)?;
            let phi = self.normal_value(&five.l, five.phi, x)?;
            if theta != phi.scale(e as i64, 1) {
                return bad("θ_L is not a multiple of φ");
            }
        }
        Ok(())
    }

    /// A subgroup `U` with `KU = G`, `K ∩ U = L` and every `χ ∈ Irr(G|θ)` of
    /// degree `|K:L|^{1/2}` nonvanishing on `U`, first in the order of
    /// subgroups; `None` when no subgroup qualifies.
    pub fn frc_witness_search(&self, five: &CharacterFive, cap: usize) -> Result<Option<Subgroup>> {
        let g = self.group();
        if g.order() > cap {
            return Err(Error::CapExceeded { cap });
        }
        self.validate_five(five)?;
        if !g.commutator_subgroup(&five.k, &five.k).is_subset_of(&five.l) {
            return Err(Error::InvalidInput("K/L must be abelian".into()));
        }
        let index = five.k.order() / five.l.order();
        if index.is_multiple_of(2) {
            return Err(Error::InvalidInput("|K:L| must be odd".into()));
        }
        let mut rows = Vec::new();
        for chi in 0..self.len() {
            if (self.row(chi).degree() * self.row(chi).degree()) as usize != index {
                continue;
            }
            let parts = self.constituents_over_normal(chi, &five.k)?.parts;
            if parts.iter().any(|&(j, _)| j == five.theta) {
                rows.push(chi);
            }
        }
        Ok(self.frc_candidates(&five.k, &five.l, &rows).into_iter().next())
    }

    /// Subgroups `U ⊇ L` of order `|G:K||L|` meeting `K` in `L`, on which
    /// every character in `rows` is nonvanishing.
    pub(crate) fn frc_candidates(&self, k: &Subgroup, l: &Subgroup, rows: &[usize]) -> Vec<Subgroup> {
        let g = self.group();
        let target = g.order() / k.order() * l.order();
        let cp = self.classes();
        let mut vanishing = vec![false; cp.len()];
        for &chi in rows {
            for (c, v) in vanishing.iter_mut().enumerate() {
                *v |= self.row(chi).value(c).is_zero();
            }
        }
        let keep = |t: &Subgroup| {
            t.members().iter().all(|&x| !vanishing[cp.class_of(x)]) && g.intersect(t, k).order() == l.order()
        };
        g.subgroups_over(l, target, keep).into_iter().filter(|u| u.order() == target).collect()
    }

    /// Classes meeting `u`, i.e. those of the union of its conjugates.
    pub(crate) fn classes_meeting(&self, u: &Subgroup) -> Vec<bool> {
        let cp = self.classes();
        let mut mask = vec![false; cp.len()];
        for &x in u.members() {
            mask[cp.class_of(x)] = true;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};
    use std::sync::Arc;

    #[test]
    fn extraspecial_five_over_center() {
        let g = Arc::new(build_family(&FamilySpec::Extraspecial { p: 3, exponent_power: 1 }).unwrap());
        let t = CharacterTable::compute(g.clone()).unwrap();
        let z = g.center();
        let chi = (0..t.len()).find(|&i| t.row(i).degree() == 3).unwrap();
        let whole = g.whole();
        let theta = t.constituents_over_normal(chi, &whole).unwrap().parts[0].0;
        let parts = t.constituents_over_normal(chi, &z).unwrap().parts;
        assert_eq!(parts.len(), 1);
        let five = CharacterFive {
            k: whole.clone(),
            l: z.clone(),
            theta,
            phi: parts[0].0,
        };
        let u = t.frc_witness_search(&five, 729).unwrap().expect("witness");
        assert_eq!(u, z);

        let degenerate = CharacterFive {
            k: z.clone(),
            l: z.clone(),
            theta: parts[0].0,
            phi: parts[0].0,
        };
        assert_eq!(t.frc_witness_search(&degenerate, 729).unwrap(), Some(whole.clone()));
        assert!(t.frc_witness_search(&five, 26).is_err());

        let bad = CharacterFive {
            k: whole,
            l: g.trivial_subgroup(),
            theta,
            phi: 0,
        };
        assert!(matches!(t.validate_five(&bad), Err(Error::NotCharacterFive(_))));
    }
}
