//! Irreducible characters with exact cyclotomic values.

mod dixon;
mod linear;
mod modular;
mod structure;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ClassPartition, Embedded, Group, Subgroup};

pub use dixon::{dixon_prime, DIXON_PRIME_BOUND};
pub use linear::{linear_characters, MonomialWitness};
pub use structure::{CharacterStructure, Constituents};

/// Default largest group order for which tables are computed.
pub const DEFAULT_TABLE_CAP: usize = 8192;

/// Values of a class function, one per class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Cyclo>,
}

/// An irreducible character.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    values: Vec<Cyclo>,
    degree: u64,
}

impl Character {
    pub(crate) fn new(values: Vec<Cyclo>) -> Character {
        let degree = values[0]
            .as_integer()
            .filter(|&d| d > 0)
            .expect("a character has positive integer degree") as u64;
        Character { values, degree }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclo {
        &self.values[class]
    }

    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.clone(),
        }
    }

    fn sort_key(&self) -> (u64, Vec<String>) {
        (self.degree, self.values.iter().map(Cyclo::canonical_text).collect())
    }
}

/// The table of a normal subgroup realised as a group of its own.
#[derive(Debug)]
pub struct SubTable {
    pub embedded: Embedded,
    pub table: CharacterTable,
}

/// `Irr(G)` with rows ordered by degree, then by the canonical text of the
/// values, over the conductor `exp(G)`.
#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<Group>,
    classes: ClassPartition,
    rows: Vec<Character>,
    modulus: Option<u64>,
    sub_tables: Mutex<HashMap<Vec<u32>, Arc<SubTable>>>,
    monomial: Mutex<Option<Arc<Vec<Option<MonomialWitness>>>>>,
}

impl CharacterTable {
    pub fn compute(group: Arc<Group>) -> Result<CharacterTable> {
        Self::compute_with_cap(group, DEFAULT_TABLE_CAP)
    }

    pub fn compute_with_cap(group: Arc<Group>, cap: usize) -> Result<CharacterTable> {
        if group.order() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let classes = group.conjugacy_classes();
        let (rows, modulus) = if group.is_abelian() {
            (linear::abelian_irreducibles(&group, &classes)?, None)
        } else {
            let (rows, q) = dixon::irreducible_characters(&group, &classes)?;
            (rows, Some(q))
        };
        let mut keyed: Vec<_> = rows.into_iter().map(|r| (r.sort_key(), r)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let table = CharacterTable {
            group,
            classes,
            rows: keyed.into_iter().map(|(_, r)| r).collect(),
            modulus,
            sub_tables: Mutex::new(HashMap::new()),
            monomial: Mutex::new(None),
        };
        if table.modulus.is_some() {
            table.verify()?;
        } else if table.rows.windows(2).any(|w| w[0].values == w[1].values) {
            return Err(Error::Internal("repeated linear character".into()));
        }
        Ok(table)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn rows(&self) -> &[Character] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Character {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Conductor of every value: the exponent of the group.
    pub fn conductor(&self) -> u32 {
        self.group.exponent()
    }

    /// The prime used for the modular eigenvector computation; `None` for
    /// abelian groups, whose irreducible characters are the linear ones.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows.iter().map(Character::degree).collect()
    }

    fn verify(&self) -> Result<()> {
        let n = self.group.order() as u64;
        let k = self.classes.len();
        if self.rows.len() != k {
            return Err(Error::Internal("row count differs from class count".into()));
        }
        if self.rows.iter().map(|r| r.degree * r.degree).sum::<u64>() != n {
            return Err(Error::Internal("squared degrees do not sum to the order".into()));
        }
        let e = self.conductor();
        let conj: Vec<Vec<Cyclo>> = self
            .rows
            .iter()
            .map(|r| r.values.iter().map(Cyclo::conj).collect())
            .collect();
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclo::zero(e);
                for l in 0..k {
                    acc.add_product(&self.rows[a].values[l], &conj[b][l], self.classes.size(l) as i64);
                }
                let expected = if a == b { n as i64 } else { 0 };
                if acc != Cyclo::from_int(e, expected) {
                    return Err(Error::Internal(format!("rows {a} and {b} are not orthogonal")));
                }
            }
        }
        for l in 0..k {
            for m in l..k {
                let mut acc = Cyclo::zero(e);
                for (r, c) in self.rows.iter().zip(&conj) {
                    acc.add_product(&r.values[l], &c[m], 1);
                }
                let expected = if l == m { (n / self.classes.size(l) as u64) as i64 } else { 0 };
                if acc != Cyclo::from_int(e, expected) {
                    return Err(Error::Internal(format!("columns {l} and {m} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    fn check_len(&self, values: &[Cyclo]) -> Result<()> {
        if values.len() != self.classes.len() {
            return Err(Error::InvalidInput(format!(
                "class function has {} values for {} classes",
                values.len(),
                self.classes.len()
            )));
        }
        Ok(())
    }

    /// `[a, b] = (1/|G|) Σ_g a(g) conj(b(g))`.
    pub fn inner_product(&self, a: &[Cyclo], b: &[Cyclo]) -> Result<Cyclo> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut acc = Cyclo::zero(self.conductor());
        for l in 0..a.len() {
            acc.add_product(&a[l], &b[l].conj(), self.classes.size(l) as i64);
        }
        Ok(acc.scale(1, self.group.order() as i64))
    }

    /// `[a_H, b_H]_H` by summing over the elements of `h`.
    pub fn inner_product_on(&self, a: &[Cyclo], b: &[Cyclo], h: &Subgroup) -> Result<Cyclo> {
        self.check_len(a)?;
        self.check_len(b)?;
        let k = self.classes.len();
        let mut counts = vec![0i64; k];
        for &x in h.members() {
            counts[self.classes.class_of(x)] += 1;
        }
        let mut acc = Cyclo::zero(self.conductor());
        for l in 0..k {
            if counts[l] != 0 {
                acc.add_product(&a[l], &b[l].conj(), counts[l]);
            }
        }
        Ok(acc.scale(1, h.order() as i64))
    }

    /// Values of `chi` at the members of `h`, in member order.
    pub fn restrict(&self, chi: &[Cyclo], h: &Subgroup) -> Vec<Cyclo> {
        h.members()
            .iter()
            .map(|&x| chi[self.classes.class_of(x)].clone())
            .collect()
    }

    /// Induces a class function of `h`, given at its members in member
    /// order: `λ^G(g) = (|G| / (h(g) |H|)) Σ_{x ∈ H ∩ g^G} λ(x)`.
    pub fn induce(&self, h: &Subgroup, lambda: &[Cyclo]) -> Result<ClassFunction> {
        if lambda.len() != h.order() {
            return Err(Error::InvalidInput("values do not match the subgroup".into()));
        }
        if h.members().iter().any(|&x| x as usize >= self.group.order()) {
            return Err(Error::NotSubgroup("members outside the group".into()));
        }
        let e = self.conductor();
        let mut acc = vec![Cyclo::zero(e); self.classes.len()];
        for (&x, v) in h.members().iter().zip(lambda) {
            let c = self.classes.class_of(x);
            acc[c] = &acc[c] + v;
        }
        Ok(self.scale_induced(acc, h.order()))
    }

    fn scale_induced(&self, acc: Vec<Cyclo>, h_order: usize) -> ClassFunction {
        let n = self.group.order() as i64;
        let values = acc
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.scale(n, self.classes.size(c) as i64 * h_order as i64))
            .collect();
        ClassFunction { values }
    }

    /// Induces the linear character `x ↦ ζ_e^{exps[i]}` of `h`, where `e` is
    /// the conductor and `exps` follows member order.
    pub fn induce_linear(&self, h: &Subgroup, exps: &[u32]) -> ClassFunction {
        let e = self.conductor() as usize;
        let mut counts = vec![vec![0i64; e]; self.classes.len()];
        for (&x, &k) in h.members().iter().zip(exps) {
            counts[self.classes.class_of(x)][k as usize % e] += 1;
        }
        let acc = counts
            .iter()
            .map(|c| Cyclo::from_exponent_counts(e as u32, c))
            .collect();
        self.scale_induced(acc, h.order())
    }

    /// Table of a normal subgroup, computed once per subgroup.
    pub fn normal_table(&self, n: &Subgroup) -> Result<Arc<SubTable>> {
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        if let Some(t) = self.sub_tables.lock().expect("cache lock").get(n.members()) {
            return Ok(t.clone());
        }
        let embedded = self.group.subgroup_as_group(n);
        let table = CharacterTable::compute_with_cap(Arc::new(embedded.group.clone()), usize::MAX)?;
        let entry = Arc::new(SubTable { embedded, table });
        self.sub_tables
            .lock()
            .expect("cache lock")
            .insert(n.members().to_vec(), entry.clone());
        Ok(entry)
    }

    /// Header line plus one line per character.
    pub fn render(&self) -> String {
        let mut out = String::from("classes:");
        for c in 0..self.classes.len() {
            let _ = write!(out, " {}/{}", self.classes.rep_order(c), self.classes.size(c));
        }
        out.push('\n');
        for (i, r) in self.rows.iter().enumerate() {
            let _ = write!(out, "chi{} deg={} :", i + 1, r.degree);
            for v in &r.values {
                let _ = write!(out, " {}", v.canonical_text());
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_CAP;

    pub(crate) fn d16() -> Arc<Group> {
        let r = vec![1, 2, 3, 4, 5, 6, 7, 0];
        let s = vec![0, 7, 6, 5, 4, 3, 2, 1];
        Arc::new(Group::from_permutations(8, &[r, s], DEFAULT_CLOSURE_CAP).unwrap().0)
    }

    #[test]
    fn cyclic_three() {
        let t = CharacterTable::compute(Arc::new(Group::cyclic(3))).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        let mut seen: Vec<Cyclo> = t.rows().iter().map(|r| r.value(1).clone()).collect();
        seen.sort_by_key(Cyclo::canonical_text);
        let mut roots = vec![Cyclo::one(3), Cyclo::root(3, 1), Cyclo::root(3, 2)];
        roots.sort_by_key(Cyclo::canonical_text);
        assert_eq!(seen, roots);
    }

    #[test]
    fn trivial_group() {
        let t = CharacterTable::compute(Arc::new(Group::trivial())).unwrap();
        assert_eq!(t.degrees(), vec![1]);
    }

    #[test]
    fn dihedral_sixteen() {
        let g = d16();
        let t = CharacterTable::compute(g.clone()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2, 2, 2]);
        let cp = t.classes();
        let sqrt2 = &Cyclo::root(8, 1) + &Cyclo::root(8, -1);
        let x = (0..cp.len()).find(|&c| cp.rep_order(c) == 8).unwrap();
        let x2 = cp.power_class(&g, x, 2);
        assert!(t.rows().iter().any(|r| r.degree() == 2 && *r.value(x) == sqrt2 && r.value(x2).is_zero()));
        for r in t.rows() {
            assert_eq!(t.inner_product(r.values(), r.values()).unwrap(), Cyclo::one(8));
        }
        let text = t.render();
        assert_eq!(text.lines().count(), 8);
        assert!(text.starts_with("classes: 1/1 "));
    }

    #[test]
    fn induction_from_rotations() {
        let g = d16();
        let t = CharacterTable::compute(g.clone()).unwrap();
        let cp = t.classes();
        let x = (0..cp.len()).find(|&c| cp.rep_order(c) == 8).unwrap();
        let r = g.cyclic_subgroup(cp.rep(x));
        // faithful linear character of ⟨r⟩: r^i ↦ ζ_8^i
        let exps: Vec<u32> = r
            .members()
            .iter()
            .map(|&m| (0..8).find(|&i| g.pow(cp.rep(x), i as i64) == m).unwrap())
            .collect();
        let induced = t.induce_linear(&r, &exps);
        let values: Vec<Cyclo> = exps.iter().map(|&k| Cyclo::root(8, k as i64)).collect();
        assert_eq!(t.induce(&r, &values).unwrap(), induced);
        assert_eq!(t.inner_product(&induced.values, &induced.values).unwrap(), Cyclo::one(8));
        assert!(t.rows().iter().any(|row| row.values() == induced.values.as_slice()));
        let regular = t.induce(&g.trivial_subgroup(), &[Cyclo::one(8)]).unwrap();
        assert_eq!(regular.values[0], Cyclo::from_int(8, 16));
        let one = vec![Cyclo::one(8); t.len()];
        assert_eq!(t.inner_product(&regular.values, &one).unwrap(), Cyclo::one(8));
    }
}
