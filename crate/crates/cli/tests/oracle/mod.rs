//! Brute-force reference computations that share nothing with the library
//! beyond group multiplication and cyclotomic arithmetic.

use std::collections::{HashMap, HashSet, VecDeque};

use charsupp_core::{Cyclo, Group};

/// Members of `⟨gens⟩`, sorted.
pub fn closure(g: &Group, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    let mut out = vec![0u32];
    while let Some(y) = queue.pop_front() {
        for &s in gens {
            let z = g.mul(y, s);
            if !seen[z as usize] {
                seen[z as usize] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Normal closure of `gens`: the smallest set containing 1 that is closed
/// under right multiplication by `gens` and conjugation by generators of G.
pub fn normal_closure(g: &Group, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    let mut out = vec![0u32];
    while let Some(y) = queue.pop_front() {
        let next = gens
            .iter()
            .map(|&l| g.mul(y, l))
            .chain(g.generators().iter().map(|&s| g.conj(y, s)))
            .collect::<Vec<_>>();
        for z in next {
            if !seen[z as usize] {
                seen[z as usize] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let set: HashSet<u32> = b.iter().copied().collect();
    a.iter().all(|x| set.contains(x))
}

/// Every subgroup as `(generators, members)`, built from cyclic subgroups
/// by repeated joins.
pub fn all_subgroups(g: &Group) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in 0..g.order() as u32 {
        let c = closure(g, &[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut out: Vec<(Vec<u32>, Vec<u32>)> = cyclic.iter().map(|(x, c)| (vec![*x], c.clone())).collect();
    let mut i = 0;
    while i < out.len() {
        let (gens, members) = out[i].clone();
        for (x, c) in &cyclic {
            if is_subset(c, &members) {
                continue;
            }
            let mut more = gens.clone();
            more.push(*x);
            let t = closure(g, &more);
            if seen.insert(t.clone()) {
                out.push((more, t));
            }
        }
        i += 1;
    }
    out
}

/// Every normal subgroup, as sorted member lists.
pub fn normal_subgroups(g: &Group) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for x in 0..g.order() as u32 {
        let n = normal_closure(g, &[x]);
        if seen.insert(n.clone()) {
            out.push((vec![x], n));
        }
    }
    let mut i = 0;
    while i < out.len() {
        let (gens, members) = out[i].clone();
        let mut j = 0;
        while j < out.len() {
            let (other_gens, other) = out[j].clone();
            j += 1;
            if is_subset(&other, &members) || is_subset(&members, &other) {
                continue;
            }
            let mut both = gens.clone();
            both.extend(other_gens);
            let t = normal_closure(g, &both);
            if seen.insert(t.clone()) {
                out.push((both, t));
            }
        }
        i += 1;
    }
    out.into_iter().map(|(_, m)| m).collect()
}

/// Homomorphisms from `⟨gens⟩` to `Z/e`, as maps element → exponent.
/// Generators are assigned one at a time and each partial assignment is
/// checked on the subgroup generated so far.
pub fn linear_characters(g: &Group, gens: &[u32], e: u32) -> Vec<HashMap<u32, u32>> {
    fn extend(g: &Group, gens: &[u32], imgs: &[u32], e: u32) -> Option<HashMap<u32, u32>> {
        let mut f = HashMap::from([(0u32, 0u32)]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(y) = queue.pop_front() {
            let fy = f[&y];
            for (&s, &v) in gens.iter().zip(imgs) {
                let z = g.mul(y, s);
                let fz = (fy + v) % e;
                match f.get(&z) {
                    Some(&old) if old != fz => return None,
                    Some(_) => {}
                    None => {
                        f.insert(z, fz);
                        queue.push_back(z);
                    }
                }
            }
        }
        Some(f)
    }
    let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 0..gens.len() {
        let o = g.element_order(gens[i]);
        let mut next = Vec::new();
        for imgs in &partial {
            for m in 0..o {
                let mut more = imgs.clone();
                more.push(m * (e / o));
                if extend(g, &gens[..=i], &more, e).is_some() {
                    next.push(more);
                }
            }
        }
        partial = next;
    }
    partial
        .iter()
        .map(|imgs| extend(g, gens, imgs, e).expect("checked above"))
        .collect()
}

/// `λ^G` at every element of G, with `λ(y) = ζ_e^{f(y)}` on the subgroup.
pub fn induce(g: &Group, order_h: usize, f: &HashMap<u32, u32>, e: u32) -> Vec<Cyclo> {
    (0..g.order() as u32)
        .map(|x| {
            let mut counts = vec![0i64; e as usize];
            for t in 0..g.order() as u32 {
                if let Some(&k) = f.get(&g.conj(x, t)) {
                    counts[k as usize] += 1;
                }
            }
            Cyclo::from_exponent_counts(e, &counts).scale(1, order_h as i64)
        })
        .collect()
}

/// Irreducible characters as element-indexed value vectors, found among
/// characters induced from linear characters of subgroups.
pub fn irreducible_characters(g: &Group) -> Vec<Vec<Cyclo>> {
    let e = g.exponent();
    let n = g.order() as i64;
    let mut subgroups = all_subgroups(g);
    subgroups.sort_by_key(|(_, m)| std::cmp::Reverse(m.len()));
    let mut found: Vec<Vec<Cyclo>> = Vec::new();
    let mut keys: HashSet<Vec<String>> = HashSet::new();
    let mut total = 0i64;
    'outer: for (gens, members) in &subgroups {
        for f in linear_characters(g, gens, e) {
            let chi = induce(g, members.len(), &f, e);
            let mut norm = Cyclo::zero(e);
            for v in &chi {
                norm = &norm + &(v * &v.conj());
            }
            if norm != Cyclo::from_int(e, n) {
                continue;
            }
            let key: Vec<String> = chi.iter().map(Cyclo::canonical_text).collect();
            if keys.insert(key) {
                let d = chi[0].as_integer().expect("degree");
                total += d * d;
                found.push(chi);
                if total == n {
                    break 'outer;
                }
            }
        }
    }
    found
}
