use std::collections::HashMap;
use std::sync::Arc;

use super::{Character, CharacterTable};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ClassPartition, Group, Subgroup};

/// All linear characters of `g`, each as exponents `k(x)` with
/// `λ(x) = ζ_e^{k(x)}` for every element index `x`. `e` must be a multiple of
/// the exponent of `G/G'`.
pub fn linear_characters(g: &Group, e: u32) -> Vec<Vec<u32>> {
    let derived = g.derived_subgroup();
    let quotient = g.quotient(&derived).expect("the derived subgroup is normal");
    let q = &quotient.group;
    let m = q.order();
    let mut mask = vec![false; m];
    mask[0] = true;
    let mut members = vec![0u32];
    let mut chars: Vec<Vec<u32>> = vec![vec![0; m]];
    for &x in q.generators() {
        if mask[x as usize] {
            continue;
        }
        let mut rel = 1u32;
        let mut power = x;
        while !mask[power as usize] {
            power = q.mul(power, x);
            rel += 1;
        }
        let step = e / rel;
        let mut next = Vec::with_capacity(chars.len() * rel as usize);
        for lam in &chars {
            let a = lam[power as usize];
            debug_assert_eq!(a % rel, 0, "linear characters of a subgroup extend");
            for s in 0..rel {
                let t = (a / rel + step * s) % e;
                let mut ext = lam.clone();
                let mut xi = 0u32;
                for i in 0..rel {
                    for &y in &members {
                        ext[q.mul(y, xi) as usize] = (lam[y as usize] + i * t) % e;
                    }
                    xi = q.mul(xi, x);
                }
                next.push(ext);
            }
        }
        chars = next;
        let mut grown = Vec::with_capacity(members.len() * rel as usize);
        let mut xi = 0u32;
        for _ in 0..rel {
            for &y in &members {
                let z = q.mul(y, xi);
                mask[z as usize] = true;
                grown.push(z);
            }
            xi = q.mul(xi, x);
        }
        members = grown;
    }
    chars
        .into_iter()
        .map(|lam| quotient.projection.iter().map(|&c| lam[c as usize]).collect())
        .collect()
}

/// `Irr(G)` of an abelian group, with each row checked to be a homomorphism.
pub(crate) fn abelian_irreducibles(g: &Group, cp: &ClassPartition) -> Result<Vec<Character>> {
    let e = g.exponent();
    let mut rows = Vec::with_capacity(g.order());
    for lam in linear_characters(g, e) {
        for x in 0..g.order() as u32 {
            for &s in g.generators() {
                if lam[g.mul(x, s) as usize] != (lam[x as usize] + lam[s as usize]) % e {
                    return Err(Error::Internal("linear character is not a homomorphism".into()));
                }
            }
        }
        rows.push(Character::new(
            (0..cp.len()).map(|c| Cyclo::root(e, lam[cp.rep(c) as usize] as i64)).collect(),
        ));
    }
    if rows.len() != g.order() || cp.len() != g.order() {
        return Err(Error::Internal("abelian group with too few linear characters".into()));
    }
    Ok(rows)
}

/// A normal subgroup `A ⊇ G'` with a linear character `λ` (exponents over
/// the table conductor, in member order) such that `λ^G = χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWitness {
    pub subgroup: Subgroup,
    pub exps: Vec<u32>,
}

impl CharacterTable {
    /// First witness in the order of subgroups (by order, then members) and
    /// of the linear characters of each subgroup; `None` for groups that are
    /// not metabelian.
    pub fn monomial_normal_witness(&self, chi: usize) -> Option<MonomialWitness> {
        let all = {
            let mut cache = self.monomial.lock().expect("cache lock");
            cache.get_or_insert_with(|| Arc::new(self.monomial_witnesses())).clone()
        };
        all[chi].clone()
    }

    fn monomial_witnesses(&self) -> Vec<Option<MonomialWitness>> {
        let g = self.group();
        let n = g.order();
        let e = self.conductor();
        let mut out: Vec<Option<MonomialWitness>> = vec![None; self.len()];
        let derived = g.derived_subgroup();
        if !g.commutator_subgroup(&derived, &derived).is_trivial() {
            return out;
        }
        let root_text: HashMap<String, u32> = (0..e).map(|k| (Cyclo::root(e, k as i64).canonical_text(), k)).collect();
        let whole = g.whole();
        for (i, row) in self.rows().iter().enumerate() {
            if row.degree() == 1 {
                let exps = whole
                    .members()
                    .iter()
                    .map(|&x| root_text[&row.value(self.classes().class_of(x)).canonical_text()])
                    .collect();
                out[i] = Some(MonomialWitness {
                    subgroup: whole.clone(),
                    exps,
                });
            }
        }
        let mut wanted: HashMap<Vec<String>, Vec<usize>> = HashMap::new();
        let mut orders: Vec<usize> = Vec::new();
        for (i, row) in self.rows().iter().enumerate() {
            if row.degree() > 1 {
                let text = row.values().iter().map(Cyclo::canonical_text).collect();
                wanted.entry(text).or_default().push(i);
                orders.push(n / row.degree() as usize);
            }
        }
        if wanted.is_empty() {
            return out;
        }
        orders.sort_unstable();
        orders.dedup();
        let top = *orders.last().expect("non-empty");
        let bound = if orders.iter().all(|o| top.is_multiple_of(*o)) { top } else { n };
        for a in g.subgroups_over(&derived, bound, |_| true) {
            if !orders.contains(&a.order()) {
                continue;
            }
            let emb = g.subgroup_as_group(&a);
            for lam in linear_characters(&emb.group, e) {
                let exps: Vec<u32> = a
                    .members()
                    .iter()
                    .map(|&x| lam[emb.local(x).expect("member") as usize])
                    .collect();
                let induced = self.induce_linear(&a, &exps);
                let text: Vec<String> = induced.values.iter().map(Cyclo::canonical_text).collect();
                if let Some(rows) = wanted.remove(&text) {
                    for r in rows {
                        out[r] = Some(MonomialWitness {
                            subgroup: a.clone(),
                            exps: exps.clone(),
                        });
                    }
                    if wanted.is_empty() {
                        return out;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::tests::d16;

    #[test]
    fn linear_characters_of_d16() {
        let g = d16();
        let chars = linear_characters(&g, 8);
        assert_eq!(chars.len(), 4);
        for lam in &chars {
            for x in 0..16u32 {
                for y in 0..16u32 {
                    assert_eq!(lam[g.mul(x, y) as usize], (lam[x as usize] + lam[y as usize]) % 8);
                }
            }
        }
        let cyc = linear_characters(&Group::cyclic(9), 9);
        assert_eq!(cyc.len(), 9);
        let mut at_one: Vec<u32> = cyc.iter().map(|l| l[1]).collect();
        at_one.sort();
        assert_eq!(at_one, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn d16_faithful_is_induced_from_rotations() {
        let g = d16();
        let t = CharacterTable::compute(g.clone()).unwrap();
        for i in 0..t.len() {
            let w = t.monomial_normal_witness(i).expect("D16 is metabelian");
            let chi = t.row(i);
            assert_eq!(w.subgroup.order() as u64, 16 / chi.degree());
            assert_eq!(t.induce_linear(&w.subgroup, &w.exps).values, chi.values());
            if chi.degree() == 2 && t.character_structure(i).faithful {
                assert!(w.subgroup.members().iter().any(|&x| g.element_order(x) == 8));
            }
        }
    }
}
