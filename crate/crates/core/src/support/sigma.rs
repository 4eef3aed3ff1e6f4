use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::ClassFunction;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{Action, Group};

fn check_linear(a: &Group, lambda: &[u32], e: u32) -> Result<()> {
    if e == 0 || lambda.len() != a.order() {
        return Err(Error::NotLinear);
    }
    if !lambda[0].is_multiple_of(e) {
        return Err(Error::NotLinear);
    }
    for x in 0..a.order() as u32 {
        for &g in a.generators() {
            if lambda[a.mul(x, g) as usize] % e != (lambda[x as usize] + lambda[g as usize]) % e {
                return Err(Error::NotLinear);
            }
        }
    }
    Ok(())
}

/// `tr_H(λ) = Σ_{h ∈ H} λ^h` on `A`, where `λ(x) = ζ_e^{lambda[x]}`. The
/// values are indexed by the elements of `A`.
pub fn trace_character(act: &Action, lambda: &[u32], e: u32) -> Result<ClassFunction> {
    let a = act.target();
    check_linear(a, lambda, e)?;
    let h = act.acting().order() as u32;
    let values = (0..a.order() as u32)
        .map(|x| {
            let mut counts = vec![0i64; e as usize];
            for k in 0..h {
                counts[(lambda[act.apply(k, x) as usize] % e) as usize] += 1;
            }
            Cyclo::from_exponent_counts(e, &counts)
        })
        .collect();
    Ok(ClassFunction { values })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub a_order: usize,
    pub h_order: usize,
    /// `|C_H(λ)|`.
    pub stabilizer_order: usize,
    /// `σ(A, λ, H) = Σ_{x : tr_H(λ)(x) ≠ 0} |C_H(x)|`.
    pub sigma: usize,
    /// `|A| |C_H(λ)|`.
    pub bound: usize,
    /// Whether the inequality is claimed, i.e. whether `H` is abelian.
    pub asserted: bool,
    pub holds: bool,
}

pub fn sigma(act: &Action, lambda: &[u32], e: u32) -> Result<SigmaReport> {
    let a = act.target();
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let tr = trace_character(act, lambda, e)?;
    let hs = act.acting().order() as u32;
    let n = a.order() as u32;
    let fixes_lambda = |k: u32| (0..n).all(|x| lambda[act.apply(k, x) as usize] % e == lambda[x as usize] % e);
    let stabilizer_order = (0..hs).filter(|&k| fixes_lambda(k)).count();
    let sigma = (0..n)
        .filter(|&x| !tr.values[x as usize].is_zero())
        .map(|x| (0..hs).filter(|&k| act.apply(k, x) == x).count())
        .sum();
    let bound = a.order() * stabilizer_order;
    Ok(SigmaReport {
        a_order: a.order(),
        h_order: hs as usize,
        stabilizer_order,
        sigma,
        bound,
        asserted: act.acting().is_abelian(),
        holds: sigma <= bound,
    })
}

/// A sampled triple `(A, λ, H)` with `A` and `H` abelian p-groups.
#[derive(Clone, Debug)]
pub struct SigmaInstance {
    pub label: String,
    pub action: Action,
    pub lambda: Vec<u32>,
    pub conductor: u32,
}

/// `count` instances with `|A||H| ≤ max` drawn from a ChaCha8 stream seeded
/// with `seed`. `A` is a product of cyclic p-groups, `H` is abelian and acts
/// through powers of one unipotent shear, and every eighth instance (the
/// first included) has `H = 1`.
pub fn random_instances(count: usize, seed: u64, max: usize) -> Result<Vec<SigmaInstance>> {
    if max == 0 {
        return Err(Error::InvalidInput("the size bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| sample(&mut rng, max, i % 8 == 0)).collect()
}

fn sample(rng: &mut ChaCha8Rng, max: usize, trivial_h: bool) -> Result<SigmaInstance> {
    let primes: Vec<usize> = [2, 3, 5, 7].into_iter().filter(|&p| p <= max).collect();
    let p = if primes.is_empty() { 2 } else { primes[rng.gen_range(0..primes.len())] };
    let mut logs: Vec<u32> = Vec::new();
    let mut size = 1usize;
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=3u32);
        if size * p.pow(k) <= max {
            logs.push(k);
            size *= p.pow(k);
        }
    }
    let mods: Vec<usize> = logs.iter().map(|&k| p.pow(k)).collect();
    let a = mods
        .iter()
        .fold(Group::trivial(), |acc, &m| Group::direct_product(&acc, &Group::cyclic(m)));
    let digits = |mut x: usize| -> Vec<usize> {
        mods.iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    };
    let index = |v: &[usize]| -> u32 { v.iter().zip(&mods).rev().fold(0, |acc, (&d, &m)| acc * m + d) as u32 };

    // φ(e_i) = e_i + Σ_{j>i} c_ij e_j, with c_ij chosen so that the image has order dividing |e_i|
    let r = mods.len();
    let mut shear = vec![vec![0usize; r]; r];
    for i in 0..r {
        shear[i][i] = 1;
        for j in i + 1..r {
            let step = p.pow(logs[j].saturating_sub(logs[i]));
            shear[i][j] = rng.gen_range(0..mods[j]) * step % mods[j];
        }
    }
    let apply_matrix = |m: &[Vec<usize>], x: u32| -> u32 {
        let v = digits(x as usize);
        let mut w = vec![0usize; r];
        for i in 0..r {
            for j in 0..r {
                w[j] = (w[j] + v[i] * m[i][j]) % mods[j];
            }
        }
        index(&w)
    };
    let phi: Vec<u32> = (0..size as u32).map(|x| apply_matrix(&shear, x)).collect();
    let compose = |f: &[u32], g: &[u32]| -> Vec<u32> { f.iter().map(|&y| g[y as usize]).collect() };
    let identity: Vec<u32> = (0..size as u32).collect();
    let power = |f: &[u32], k: usize| -> Vec<u32> { (0..k).fold(identity.clone(), |acc, _| compose(&acc, f)) };
    let mut phi_order = 1;
    let mut cur = phi.clone();
    while cur != identity {
        cur = compose(&cur, &phi);
        phi_order += 1;
    }

    let (h, images, h_inv): (Group, Vec<Vec<u32>>, Vec<usize>) = if trivial_h {
        (Group::trivial(), Vec::new(), Vec::new())
    } else {
        let room = max / size;
        let mut psi = phi.clone();
        let mut o = phi_order;
        while o > room {
            psi = power(&psi, p);
            o /= p;
        }
        let mut m = o;
        if m * p <= room && (m == 1 || rng.gen_bool(0.5)) {
            m *= p;
        }
        let second = m > 1 && m * p <= room && rng.gen_range(0..3) == 0;
        let mut factors = vec![m];
        let mut gen_maps = vec![psi.clone()];
        if second {
            let low = if o >= p { power(&psi, o / p) } else { identity.clone() };
            gen_maps.push(power(&low, rng.gen_range(0..p)));
            factors.push(p);
        }
        factors.retain(|&f| f > 1);
        gen_maps.truncate(factors.len());
        let h = factors
            .iter()
            .fold(Group::trivial(), |acc, &f| Group::direct_product(&acc, &Group::cyclic(f)));
        // H is C_m (× C_p): element i + m j acts as ψ^i χ^j
        let images = h
            .generators()
            .iter()
            .map(|&g| {
                let (i, j) = (g as usize % m.max(1), g as usize / m.max(1));
                let mut f = power(&gen_maps[0], i);
                if j > 0 {
                    f = compose(&f, &power(&gen_maps[1], j));
                }
                f
            })
            .collect();
        (h, images, factors)
    };
    let action = Action::new(h, a, images)?;

    let e = mods.iter().copied().max().unwrap_or(1);
    let coeffs: Vec<usize> = mods.iter().map(|&m| rng.gen_range(0..m) * (e / m)).collect();
    let lambda = (0..size)
        .map(|x| (digits(x).iter().zip(&coeffs).map(|(d, c)| d * c).sum::<usize>() % e) as u32)
        .collect();

    let show = |v: &[usize]| -> String {
        if v.is_empty() {
            "1".to_string()
        } else {
            v.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
        }
    };
    Ok(SigmaInstance {
        label: format!("p{p}_A{}_H{}", show(&mods), show(&h_inv)),
        action,
        lambda,
        conductor: e as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::CharacterTable;
    use std::sync::Arc;

    fn inversion_on_c8() -> Action {
        let a = Group::cyclic(8);
        let inv: Vec<u32> = (0..8).map(|x| (8 - x) % 8).collect();
        Action::new(Group::cyclic(2), a, vec![inv]).unwrap()
    }

    #[test]
    fn trace_under_inversion() {
        let act = inversion_on_c8();
        let lambda: Vec<u32> = (0..8).collect();
        let tr = trace_character(&act, &lambda, 8).unwrap();
        for x in 0..8 {
            assert_eq!(tr.values[x], &Cyclo::root(8, x as i64) + &Cyclo::root(8, -(x as i64)));
        }
        let s = sigma(&act, &lambda, 8).unwrap();
        // tr vanishes at the two elements of order 4; 0 and 4 are fixed by H
        assert_eq!(s.sigma, 2 + 2 + 4);
        assert_eq!(s.bound, 8);
        assert_eq!(s.stabilizer_order, 1);
        assert!(s.asserted && s.holds);
    }

    #[test]
    fn trace_is_restriction_of_induced() {
        let act = inversion_on_c8();
        let g = Arc::new(Group::semidirect_product(act.target(), act.acting(), &act).unwrap());
        let t = CharacterTable::compute(g.clone()).unwrap();
        let a_sub = g.subgroup_from_members(&(0..8).collect::<Vec<_>>()).unwrap();
        for k in 0..8u32 {
            let lambda: Vec<u32> = (0..8).map(|x| x * k % 8).collect();
            let tr = trace_character(&act, &lambda, 8).unwrap();
            let induced = t.induce_linear(&a_sub, &lambda);
            for x in 0..8u32 {
                let v = induced.values[t.classes().class_of(x)].embed(8).unwrap();
                assert_eq!(v, tr.values[x as usize]);
            }
        }
    }

    #[test]
    fn trivial_and_invariant_cases() {
        let a = Group::cyclic(9);
        let lambda: Vec<u32> = (0..9).map(|x| 3 * x % 9).collect();
        let act = Action::trivial(Group::trivial(), a.clone());
        let tr = trace_character(&act, &lambda, 9).unwrap();
        assert_eq!(tr.values[1], Cyclo::root(9, 3));
        let s = sigma(&act, &lambda, 9).unwrap();
        assert_eq!((s.sigma, s.bound), (9, 9));
        let act3 = Action::trivial(Group::cyclic(3), a);
        let tr3 = trace_character(&act3, &lambda, 9).unwrap();
        assert_eq!(tr3.values[1], Cyclo::root(9, 3).scale(3, 1));
        assert!(trace_character(&act3, &[1; 9], 9).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_bounded() {
        let a = random_instances(40, 7, 243).unwrap();
        let b = random_instances(40, 7, 243).unwrap();
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            assert_eq!(x.label, y.label);
            assert_eq!(x.lambda, y.lambda);
            assert!(x.action.target().order() * x.action.acting().order() <= 243);
            assert!(i % 8 != 0 || x.action.acting().order() == 1);
        }
        assert!(a.iter().any(|x| x.action.acting().order() > 1 && x.action.kernel().order() < x.action.acting().order()));
        assert!(random_instances(1, 0, 0).is_err());
    }
}
