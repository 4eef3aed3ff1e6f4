//! Constructors for the standard families of p-groups and the bundled corpus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{prime_of_power, Action, Group, DEFAULT_CLOSURE_CAP};
use crate::presentation::{parse_group_file, realize};

#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// Dihedral group of the given order (a power of 2, at least 4).
    Dihedral { order: usize },
    /// Generalized quaternion group (order a power of 2, at least 8).
    Quaternion { order: usize },
    /// Semidihedral group (order a power of 2, at least 16).
    Semidihedral { order: usize },
    /// `C_{d1} × … × C_{dk}`.
    Abelian { invariants: Vec<usize> },
    /// Extraspecial group of order `p³` (odd `p`) and exponent `p^exponent_power`.
    Extraspecial { p: u32, exponent_power: u32 },
    /// Upper unitriangular `n × n` matrices over `Z/p`, `n ∈ {3, 4}`.
    Unitriangular { n: usize, p: u32 },
    /// `(C_{p^k})^p ⋊ C_p` with `C_p` permuting the factors cyclically.
    WreathCyclic { p: u32, k: u32 },
    Semidirect(Box<Action>),
}

impl FamilySpec {
    /// The family named on the command line, with `k` as its secondary
    /// parameter: the order exponent for dihedral, quaternion and
    /// semidihedral groups, the rank of an elementary abelian group, the
    /// exponent power of an extraspecial group, the matrix size of a
    /// unitriangular group and the base exponent of a cyclic wreath product.
    pub fn from_name(name: &str, p: u32, k: Option<u32>) -> Result<FamilySpec> {
        if prime_of_power(p as usize) != Some(p) {
            return Err(Error::InvalidFamily(format!("{p} is not prime")));
        }
        let two = |what: &str| {
            if p == 2 {
                Ok(())
            } else {
                Err(Error::InvalidFamily(format!("{what} groups need p=2")))
            }
        };
        let pow2 = |default: u32| -> Result<usize> {
            let k = k.unwrap_or(default);
            1usize
                .checked_shl(k)
                .filter(|_| k < 32)
                .ok_or_else(|| Error::InvalidFamily(format!("k={k} too large")))
        };
        let spec = match name {
            "dihedral" => {
                two("dihedral")?;
                FamilySpec::Dihedral { order: pow2(4)? }
            }
            "quaternion" => {
                two("quaternion")?;
                FamilySpec::Quaternion { order: pow2(3)? }
            }
            "semidihedral" => {
                two("semidihedral")?;
                FamilySpec::Semidihedral { order: pow2(4)? }
            }
            "abelian" => FamilySpec::Abelian {
                invariants: vec![p as usize; k.unwrap_or(2) as usize],
            },
            "extraspecial" => FamilySpec::Extraspecial {
                p,
                exponent_power: k.unwrap_or(1),
            },
            "unitriangular" => FamilySpec::Unitriangular {
                n: k.unwrap_or(3) as usize,
                p,
            },
            "wreath_cyclic" => FamilySpec::WreathCyclic { p, k: k.unwrap_or(1) },
            "semidirect" => {
                return Err(Error::InvalidFamily(
                    "semidirect products need an explicit action".into(),
                ))
            }
            other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFamily(m));
        let pow2 = |n: usize| n.is_power_of_two();
        match *self {
            FamilySpec::Dihedral { order } if !pow2(order) || order < 4 => {
                bad(format!("dihedral order {order} must be a power of 2, at least 4"))
            }
            FamilySpec::Quaternion { order } if !pow2(order) || order < 8 => {
                bad(format!("quaternion order {order} must be a power of 2, at least 8"))
            }
            FamilySpec::Semidihedral { order } if !pow2(order) || order < 16 => {
                bad(format!("semidihedral order {order} must be a power of 2, at least 16"))
            }
            FamilySpec::Abelian { ref invariants } if invariants.contains(&0) => {
                bad("invariants must be positive".into())
            }
            FamilySpec::Extraspecial { p, exponent_power } if p == 2 || !(1..=2).contains(&exponent_power) => bad(
                format!("extraspecial needs odd p and exponent power 1 or 2, got p={p} k={exponent_power}"),
            ),
            FamilySpec::Unitriangular { n, .. } if !(3..=4).contains(&n) => {
                bad(format!("unitriangular size {n} must be 3 or 4"))
            }
            FamilySpec::WreathCyclic { k: 0, .. } => bad("wreath_cyclic needs k ≥ 1".into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Dihedral { order } => write!(f, "dihedral_{order}"),
            FamilySpec::Quaternion { order } => write!(f, "quaternion_{order}"),
            FamilySpec::Semidihedral { order } => write!(f, "semidihedral_{order}"),
            FamilySpec::Abelian { invariants } => {
                let parts: Vec<String> = invariants.iter().map(|d| d.to_string()).collect();
                write!(f, "abelian_{}", parts.join("x"))
            }
            FamilySpec::Extraspecial { p, exponent_power } => {
                write!(f, "extraspecial_{}_exp{}", p.pow(3), p.pow(*exponent_power))
            }
            FamilySpec::Unitriangular { n, p } => write!(f, "unitriangular_{n}_{p}"),
            FamilySpec::WreathCyclic { p, k } => write!(f, "wreath_c{}_c{p}", p.pow(*k)),
            FamilySpec::Semidirect(a) => write!(f, "semidirect_{}_{}", a.target().order(), a.acting().order()),
        }
    }
}

/// `⟨x, y⟩` with `x` of order `m`, `y⁻¹ x y = x^t` and `y² = x^s`, on
/// normal forms `x^i y^j`.
fn metacyclic(m: usize, t: usize, s: usize) -> Group {
    let compose = |&(i, j): &(usize, usize), &(a, b): &(usize, usize)| {
        let moved = if j == 1 { a * t % m } else { a };
        let wrap = if j + b == 2 { s } else { 0 };
        ((i + moved + wrap) % m, (j + b) % 2)
    };
    Group::closure((0, 0), &[(1, 0), (0, 1)], compose, usize::MAX)
        .expect("metacyclic normal forms close")
        .0
}

fn cyclic_power_map(m: usize, mult: usize) -> Vec<u32> {
    (0..m).map(|a| (a * mult % m) as u32).collect()
}

fn unitriangular(n: usize, p: u32) -> Result<Group> {
    let p = p as u16;
    let identity: Vec<u16> = (0..n * n).map(|i| u16::from(i % (n + 1) == 0)).collect();
    let gens: Vec<Vec<u16>> = (0..n - 1)
        .map(|i| {
            let mut m = identity.clone();
            m[i * n + i + 1] = 1;
            m
        })
        .collect();
    let product = |a: &Vec<u16>, b: &Vec<u16>| -> Vec<u16> {
        let mut c = vec![0u16; n * n];
        for i in 0..n {
            for j in i..n {
                let mut s = 0u32;
                for l in i..=j {
                    s += a[i * n + l] as u32 * b[l * n + j] as u32;
                }
                c[i * n + j] = (s % p as u32) as u16;
            }
        }
        c
    };
    Ok(Group::closure(identity, &gens, product, DEFAULT_CLOSURE_CAP)?.0)
}

fn wreath_cyclic(p: u32, k: u32) -> Result<Group> {
    let m = (p as usize).pow(k);
    let copies = p as usize;
    let order = m
        .checked_pow(copies as u32)
        .filter(|&o| o.saturating_mul(copies) <= DEFAULT_CLOSURE_CAP)
        .ok_or(Error::CapExceeded {
            cap: DEFAULT_CLOSURE_CAP,
        })?;
    let c = Group::cyclic(m);
    let mut base = c.clone();
    for _ in 1..copies {
        base = Group::direct_product(&base, &c);
    }
    // index Σ a_i m^i; the shift sends coordinate i to i + 1
    let shift: Vec<u32> = (0..order)
        .map(|x| {
            let mut digits: Vec<usize> = (0..copies).map(|i| x / m.pow(i as u32) % m).collect();
            digits.rotate_right(1);
            digits.iter().rev().fold(0, |acc, &d| acc * m + d) as u32
        })
        .collect();
    let h = Group::cyclic(copies);
    let act = Action::new(h.clone(), base.clone(), vec![shift])?;
    Group::semidirect_product(&base, &h, &act)
}

pub fn build_family(spec: &FamilySpec) -> Result<Group> {
    spec.validate()?;
    match spec {
        FamilySpec::Dihedral { order } => Ok(metacyclic(order / 2, order / 2 - 1, 0)),
        FamilySpec::Quaternion { order } => Ok(metacyclic(order / 2, order / 2 - 1, order / 4)),
        FamilySpec::Semidihedral { order } => Ok(metacyclic(order / 2, order / 4 - 1, 0)),
        FamilySpec::Abelian { invariants } => {
            let total = invariants.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
            if total.is_none_or(|t| t > DEFAULT_CLOSURE_CAP) {
                return Err(Error::CapExceeded {
                    cap: DEFAULT_CLOSURE_CAP,
                });
            }
            Ok(invariants
                .iter()
                .fold(Group::trivial(), |acc, &d| Group::direct_product(&acc, &Group::cyclic(d))))
        }
        FamilySpec::Extraspecial { p, exponent_power } => {
            let p = *p as usize;
            let h = Group::cyclic(p);
            if *exponent_power == 1 {
                // (C_p × C_p) ⋊ C_p with the shear (a, b) ↦ (a + b, b)
                let a = Group::direct_product(&Group::cyclic(p), &Group::cyclic(p));
                let shear: Vec<u32> = (0..p * p).map(|x| (((x % p) + x / p) % p + p * (x / p)) as u32).collect();
                let act = Action::new(h.clone(), a.clone(), vec![shear])?;
                Group::semidirect_product(&a, &h, &act)
            } else {
                let a = Group::cyclic(p * p);
                let act = Action::new(h.clone(), a.clone(), vec![cyclic_power_map(p * p, p + 1)])?;
                Group::semidirect_product(&a, &h, &act)
            }
        }
        FamilySpec::Unitriangular { n, p } => unitriangular(*n, *p),
        FamilySpec::WreathCyclic { p, k } => wreath_cyclic(*p, *k),
        FamilySpec::Semidirect(act) => Group::semidirect_product(act.target(), act.acting(), act),
    }
}

/// Structural invariants a family member is documented to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub order: usize,
    pub exponent: u32,
    pub nilpotence_class: usize,
    pub derived_length: usize,
}

impl FamilySpec {
    /// Documented invariants, independent of the constructed group.
    pub fn certificate(&self) -> Option<Certificate> {
        let log2 = |n: usize| n.trailing_zeros() as usize;
        let cert = |order, exponent, nilpotence_class, derived_length| Certificate {
            order,
            exponent,
            nilpotence_class,
            derived_length,
        };
        Some(match *self {
            FamilySpec::Dihedral { order: 4 } => cert(4, 2, 1, 1),
            FamilySpec::Dihedral { order } | FamilySpec::Quaternion { order } | FamilySpec::Semidihedral { order } => {
                cert(order, (order / 2) as u32, log2(order) - 1, 2)
            }
            FamilySpec::Abelian { ref invariants } => {
                let exponent = invariants.iter().fold(1usize, |l, &d| num_integer::lcm(l, d));
                let trivial = invariants.iter().all(|&d| d == 1);
                cert(
                    invariants.iter().product(),
                    exponent as u32,
                    usize::from(!trivial),
                    usize::from(!trivial),
                )
            }
            FamilySpec::Extraspecial { p, exponent_power } => cert(p.pow(3) as usize, p.pow(exponent_power), 2, 2),
            FamilySpec::Unitriangular { n, p } => {
                let mut exponent = p;
                while (exponent as usize) < n {
                    exponent *= p;
                }
                cert((p as usize).pow((n * (n - 1) / 2) as u32), exponent, n - 1, 2)
            }
            FamilySpec::WreathCyclic { p, k } => cert(
                (p as usize).pow(k * p + 1),
                p.pow(k + 1),
                (k * (p - 1) + 1) as usize,
                2,
            ),
            FamilySpec::Semidirect(_) => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Profile> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::InvalidInput(format!("unknown corpus profile `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusMember {
    pub id: String,
    pub group: Arc<Group>,
}

/// Bundled group files as `(id, text)`.
pub const FIXTURES: [(&str, &str); 5] = [
    ("dihedral16", include_str!("../../../fixtures/dihedral16.perm")),
    ("extraspecial27_exp3", include_str!("../../../fixtures/extraspecial27_exp3.pc")),
    ("extraspecial27_exp9", include_str!("../../../fixtures/extraspecial27_exp9.pc")),
    ("ut4_3", include_str!("../../../fixtures/ut4_3.pc")),
    ("smallgroup_512_2015", include_str!("../../../fixtures/smallgroup_512_2015.pc")),
];

/// Family members of a profile, in corpus order.
pub fn corpus_specs(profile: Profile) -> Vec<FamilySpec> {
    use FamilySpec::*;
    let mut specs = Vec::new();
    for k in 3..=9 {
        specs.push(Dihedral { order: 1 << k });
    }
    for k in 3..=9 {
        specs.push(Quaternion { order: 1 << k });
    }
    for k in 4..=9 {
        specs.push(Semidihedral { order: 1 << k });
    }
    for inv in [vec![2, 2], vec![4, 2], vec![2, 2, 2, 2], vec![3, 3], vec![9, 3], vec![3, 3, 3]] {
        specs.push(Abelian { invariants: inv });
    }
    specs.push(Extraspecial { p: 3, exponent_power: 1 });
    specs.push(Extraspecial { p: 3, exponent_power: 2 });
    specs.push(Unitriangular { n: 3, p: 3 });
    specs.push(Unitriangular { n: 4, p: 2 });
    specs.push(Unitriangular { n: 4, p: 3 });
    specs.push(WreathCyclic { p: 2, k: 1 });
    specs.push(WreathCyclic { p: 2, k: 2 });
    specs.push(WreathCyclic { p: 2, k: 3 });
    specs.push(WreathCyclic { p: 3, k: 1 });
    if profile == Profile::Full {
        specs.push(Abelian { invariants: vec![5, 5] });
        specs.push(Extraspecial { p: 5, exponent_power: 1 });
        specs.push(Extraspecial { p: 5, exponent_power: 2 });
        specs.push(Unitriangular { n: 3, p: 5 });
        specs.push(WreathCyclic { p: 3, k: 2 });
    }
    specs
}

pub fn corpus(profile: Profile) -> Result<Vec<CorpusMember>> {
    let mut out = Vec::new();
    for spec in corpus_specs(profile) {
        out.push(CorpusMember {
            id: spec.to_string(),
            group: Arc::new(build_family(&spec)?),
        });
    }
    if profile == Profile::Full {
        for (id, text) in FIXTURES {
            out.push(CorpusMember {
                id: id.to_string(),
                group: Arc::new(realize(&parse_group_file(text)?)?),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates_match_series() {
        for spec in corpus_specs(Profile::Full) {
            let g = build_family(&spec).unwrap();
            let rep = g.series_report();
            let got = Certificate {
                order: g.order(),
                exponent: g.exponent(),
                nilpotence_class: rep.nilpotence_class.unwrap(),
                derived_length: rep.derived_length.unwrap(),
            };
            assert_eq!(Some(got), spec.certificate(), "{spec}");
        }
    }

    #[test]
    fn names_and_validation() {
        let d = FamilySpec::from_name("dihedral", 2, Some(4)).unwrap();
        assert_eq!(d.to_string(), "dihedral_16");
        assert_eq!(build_family(&d).unwrap().conjugacy_classes().len(), 7);
        assert!(FamilySpec::from_name("dihedral", 3, None).is_err());
        assert!(FamilySpec::from_name("extraspecial", 2, None).is_err());
        assert!(FamilySpec::from_name("unitriangular", 3, Some(5)).is_err());
        assert!(FamilySpec::from_name("semidirect", 3, None).is_err());
        assert!(FamilySpec::from_name("nonsense", 3, None).is_err());
        assert!(FamilySpec::from_name("abelian", 4, None).is_err());
        let a = build_family(&FamilySpec::from_name("abelian", 3, Some(2)).unwrap()).unwrap();
        assert_eq!(a.conjugacy_classes().len(), 9);
    }

    #[test]
    fn construction_is_deterministic() {
        let spec = FamilySpec::Unitriangular { n: 4, p: 2 };
        let a = build_family(&spec).unwrap();
        let b = build_family(&spec).unwrap();
        for x in 0..a.order() as u32 {
            for y in 0..a.order() as u32 {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn semidirect_extraspecial_has_class_two() {
        let g = build_family(&FamilySpec::Extraspecial { p: 3, exponent_power: 1 }).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.series_report().nilpotence_class, Some(2));
        assert_eq!(g.conjugacy_classes().len(), 11);
    }
}
