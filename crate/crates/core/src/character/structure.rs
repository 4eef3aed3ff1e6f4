use num_rational::Ratio;

use super::CharacterTable;
use crate::cyclo::{minimal_prime_power_field, Cyclo, FieldTag};
use crate::error::{Error, Result};
use crate::group::Subgroup;

#[derive(Clone, Debug)]
pub struct CharacterStructure {
    pub kernel: Subgroup,
    /// `Z(χ) = {g : |χ(g)| = χ(1)}`.
    pub center: Subgroup,
    pub faithful: bool,
    /// `χ(1)² = |G : Z(χ)|`.
    pub central_type: bool,
    /// `Q(χ) = Q(ζ_{p^r})`; `None` outside p-groups.
    pub field: Option<FieldTag>,
}

/// Decomposition of `χ_N` into irreducible characters of `N`.
#[derive(Clone, Debug)]
pub struct Constituents {
    /// Row indices in the table of `N` with their multiplicities.
    pub parts: Vec<(usize, u64)>,
    pub homogeneous: bool,
    pub irreducible_restriction: bool,
    /// `χ_N = eφ` with `e² = |G : N|`.
    pub fully_ramified: bool,
}

impl CharacterTable {
    pub fn character_structure(&self, chi: usize) -> CharacterStructure {
        let g = self.group();
        let row = self.row(chi);
        let d = row.degree() as i64;
        let e = self.conductor();
        let deg = Cyclo::from_int(e, d);
        let deg_sq = Cyclo::from_int(e, d * d);
        let cp = self.classes();
        let in_kernel: Vec<bool> = row.values().iter().map(|v| *v == deg).collect();
        let in_center: Vec<bool> = row.values().iter().map(|v| (v * &v.conj()) == deg_sq).collect();
        let collect = |flags: &[bool]| -> Subgroup {
            let members: Vec<u32> = (0..g.order() as u32).filter(|&x| flags[cp.class_of(x)]).collect();
            g.subgroup_from_members(&members).expect("kernels and centers are subgroups")
        };
        let kernel = collect(&in_kernel);
        let center = collect(&in_center);
        let field = g
            .prime()
            .and_then(|p| minimal_prime_power_field(row.values(), p).ok());
        CharacterStructure {
            faithful: kernel.is_trivial(),
            central_type: (d * d) as usize * center.order() == g.order(),
            kernel,
            center,
            field,
        }
    }

    pub fn constituents_over_normal(&self, chi: usize, n: &Subgroup) -> Result<Constituents> {
        let sub = self.normal_table(n)?;
        let row = self.row(chi);
        let e = self.conductor();
        let emb = &sub.embedded;
        let cp_n = sub.table.classes();
        let mut parts = Vec::new();
        let mut counts = vec![0i64; cp_n.len()];
        let mut restricted: Vec<Option<Cyclo>> = vec![None; cp_n.len()];
        for (i, &x) in emb.embedding.iter().enumerate() {
            let c = cp_n.class_of(i as u32);
            counts[c] += 1;
            if restricted[c].is_none() {
                restricted[c] = Some(row.value(self.classes().class_of(x)).clone());
            }
        }
        for (j, psi) in sub.table.rows().iter().enumerate() {
            let mut acc = Cyclo::zero(e);
            for c in 0..cp_n.len() {
                let v = restricted[c].as_ref().expect("every class met");
                let w = psi.value(c).embed(e)?.conj();
                acc.add_product(v, &w, counts[c]);
            }
            let m = acc
                .as_rational()
                .map(|r| r / Ratio::from_integer(n.order() as i64))
                .filter(|r| r.is_integer() && *r.numer() >= 0)
                .ok_or_else(|| Error::Internal("restriction multiplicity is not a natural number".into()))?;
            if *m.numer() > 0 {
                parts.push((j, *m.numer() as u64));
            }
        }
        let homogeneous = parts.len() == 1;
        let index = (self.group().order() / n.order()) as u64;
        Ok(Constituents {
            irreducible_restriction: homogeneous && parts[0].1 == 1,
            fully_ramified: homogeneous && parts[0].1 * parts[0].1 == index,
            homogeneous,
            parts,
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::character::tests::d16;
    use crate::character::CharacterTable;

    #[test]
    fn d16_structure() {
        let g = d16();
        let t = CharacterTable::compute(g.clone()).unwrap();
        let one = (0..t.len()).find(|&i| t.row(i).values().iter().all(|v| v.as_integer() == Some(1))).unwrap();
        let triv = t.character_structure(one);
        assert_eq!(triv.kernel.order(), 16);
        assert_eq!(triv.center.order(), 16);
        let faithful: Vec<usize> = (0..t.len()).filter(|&i| t.character_structure(i).faithful).collect();
        assert_eq!(faithful.len(), 2);
        for &i in &faithful {
            let s = t.character_structure(i);
            assert_eq!(s.center, g.center());
            assert!(!s.central_type);
            let x = (0..16).find(|&x| g.element_order(x) == 8).unwrap();
            let rot = g.cyclic_subgroup(x);
            let c = t.constituents_over_normal(i, &rot).unwrap();
            assert_eq!(c.parts.len(), 2);
            assert!(!c.homogeneous);
            let all = t.constituents_over_normal(i, &g.whole()).unwrap();
            assert!(all.irreducible_restriction);
            assert_eq!(all.parts.len(), 1);
        }
        let s = g.cyclic_subgroup((0..16).find(|&x| g.element_order(x) == 2 && !g.center().contains(x)).unwrap());
        assert!(t.constituents_over_normal(one, &s).is_err());
    }
}
