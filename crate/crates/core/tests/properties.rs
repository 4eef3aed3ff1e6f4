use std::sync::Arc;

use charsupp_core::cyclo::{relative_trace, FieldTag};
use charsupp_core::families::{build_family, FamilySpec};
use charsupp_core::support::{random_instances, sigma, trace_character, verify_group, VerifyOptions};
use charsupp_core::{CharacterTable, Controls, Cyclo, Group};
use proptest::prelude::*;

fn cyclo(n: u32) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((0..n as i64, -3i64..=3), 0..6).prop_map(move |terms| {
        terms
            .iter()
            .fold(Cyclo::zero(n), |acc, &(k, c)| &acc + &Cyclo::root(n, k).scale(c, 1))
    })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 8, 9, 12, 16, 25, 27, 36])
}

fn triple() -> impl Strategy<Value = (u32, Cyclo, Cyclo, Cyclo)> {
    conductor().prop_flat_map(|n| (Just(n), cyclo(n), cyclo(n), cyclo(n)))
}

/// Abelian-by-abelian p-groups `A ⋊ H` drawn from the σ sampler.
fn semidirect() -> impl Strategy<Value = Arc<Group>> {
    (any::<u64>(), 0usize..8).prop_map(|(seed, i)| {
        let x = random_instances(i + 1, seed, 243).unwrap().pop().unwrap();
        let act = &x.action;
        Arc::new(Group::semidirect_product(act.target(), act.acting(), act).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws((n, a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &Cyclo::zero(n));
        prop_assert_eq!(&a * &Cyclo::one(n), a.clone());
    }

    #[test]
    fn galois_action_is_a_ring_automorphism((n, a, b, _c) in triple(), j in 1i64..200) {
        prop_assume!(num_integer::gcd(j, n as i64) == 1);
        let s = |x: &Cyclo| x.galois(j).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
    }

    #[test]
    fn embedding_round_trips((n, a, b, _c) in triple(), m in 1u32..4) {
        let big = n * m;
        let up = a.embed(big).unwrap();
        prop_assert_eq!(up.try_restrict(n), Some(a.clone()));
        prop_assert_eq!(&up * &b.embed(big).unwrap(), (&a * &b).embed(big).unwrap());
        let z = a.to_complex() * b.to_complex();
        prop_assert!((z - (&a * &b).to_complex()).norm() < 1e-6);
    }

    #[test]
    fn relative_trace_scales_on_the_base_field(p in prop::sample::select(vec![3u32, 5]), r in 2u32..4, s in 1u32..2, k in 0i64..25, c in -4i64..5) {
        let small = p.pow(s);
        let x = Cyclo::root(small, k).scale(c, 1);
        let t = relative_trace(&x, FieldTag::new(p, r), FieldTag::new(p, s)).unwrap();
        prop_assert_eq!(t, x.scale(p.pow(r - s) as i64, 1));
    }

    #[test]
    fn tables_of_random_metabelian_groups(g in semidirect()) {
        let t = CharacterTable::compute(g.clone()).unwrap();
        let n = g.order() as u64;
        let p = g.prime().map_or(n.max(2), u64::from);
        prop_assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u64>(), n);
        for i in 0..t.len() {
            let d = t.row(i).degree();
            let mut q = d;
            while q.is_multiple_of(p) {
                q /= p;
            }
            prop_assert_eq!(q, 1);
            let k = t.row(i).values().iter().filter(|v| !v.is_zero()).count() as u64;
            prop_assert!(k * d * d <= n);
        }
        let a = t.row(t.len() - 1).values().to_vec();
        let b = t.row(t.len() / 2).values().to_vec();
        let product: Vec<Cyclo> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let mut total = 0i64;
        for i in 0..t.len() {
            let m = t.inner_product(&product, t.row(i).values()).unwrap();
            let m = m.as_integer().expect("integral multiplicity");
            prop_assert!(m >= 0);
            total += m * t.row(i).degree() as i64;
        }
        prop_assert_eq!(total as u64, t.row(t.len() - 1).degree() * t.row(t.len() / 2).degree());
        let entries = verify_group("random", &t, &VerifyOptions::default(), &Controls::default()).unwrap();
        prop_assert!(entries.iter().all(|e| !e.is_unexpected_failure()));
    }

    #[test]
    fn sigma_inequality_holds(seed in any::<u64>(), max in 1usize..800) {
        for x in random_instances(16, seed, max).unwrap() {
            let r = sigma(&x.action, &x.lambda, x.conductor).unwrap();
            prop_assert!(r.asserted && r.holds, "{}: {} > {}", x.label, r.sigma, r.bound);
            prop_assert!(r.sigma >= r.stabilizer_order.min(r.h_order));
            if r.h_order == 1 {
                prop_assert_eq!(r.sigma, r.a_order);
            }
        }
    }

    #[test]
    fn trace_is_restriction_of_the_induced_character(seed in any::<u64>()) {
        let x = random_instances(2, seed, 128).unwrap().pop().unwrap();
        let act = &x.action;
        let g = Arc::new(Group::semidirect_product(act.target(), act.acting(), act).unwrap());
        let t = CharacterTable::compute(g.clone()).unwrap();
        let e = t.conductor();
        prop_assert_eq!(e % x.conductor, 0);
        let a = g.subgroup_from_members(&(0..act.target().order() as u32).collect::<Vec<_>>()).unwrap();
        let exps: Vec<u32> = a.members().iter().map(|&m| x.lambda[m as usize] * (e / x.conductor)).collect();
        let induced = t.induce_linear(&a, &exps);
        let tr = trace_character(act, &x.lambda, x.conductor).unwrap();
        for y in 0..act.target().order() as u32 {
            let v = induced.values[t.classes().class_of(y)].clone();
            prop_assert_eq!(v, tr.values[y as usize].embed(e).unwrap());
        }
    }
}

#[test]
fn abelian_tables_are_the_dual_group() {
    for inv in [vec![2, 2, 2, 2], vec![8, 4], vec![27], vec![9, 9], vec![5, 5]] {
        let g = Arc::new(build_family(&FamilySpec::Abelian { invariants: inv.clone() }).unwrap());
        let t = CharacterTable::compute(g.clone()).unwrap();
        assert_eq!(t.len(), g.order());
        assert_eq!(t.modulus(), None);
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = t.inner_product(t.row(i).values(), t.row(j).values()).unwrap();
                assert_eq!(ip.as_integer(), Some(i64::from(i == j)), "{inv:?}");
            }
        }
    }
    let d16 = Arc::new(build_family(&FamilySpec::Dihedral { order: 16 }).unwrap());
    assert!(CharacterTable::compute(d16).unwrap().modulus().is_some());
}
