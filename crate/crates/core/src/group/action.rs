use super::{Group, Subgroup};
use crate::error::{Error, Result};

/// An action of `acting` on `target` by automorphisms, given by the images
/// of the acting generators and extended to a homomorphism
/// `H → Aut(A)` with `act(h1 h2) = act(h1) ∘ act(h2)`.
#[derive(Clone, Debug)]
pub struct Action {
    acting: Group,
    target: Group,
    images: Vec<Vec<u32>>,
    full: Vec<Vec<u32>>,
}

fn is_automorphism(a: &Group, map: &[u32]) -> bool {
    let n = a.order();
    if map.len() != n || map[0] != 0 {
        return false;
    }
    let mut seen = vec![false; n];
    if map
        .iter()
        .any(|&y| y as usize >= n || std::mem::replace(&mut seen[y as usize], true))
    {
        return false;
    }
    // multiplicative on (x, generator) pairs suffices by induction on words
    (0..n as u32).all(|x| {
        a.generators()
            .iter()
            .all(|&g| map[a.mul(x, g) as usize] == a.mul(map[x as usize], map[g as usize]))
    })
}

impl Action {
    /// `images[k]` is the automorphism (a permutation of target indices)
    /// attached to the `k`-th generator of `acting`.
    pub fn new(acting: Group, target: Group, images: Vec<Vec<u32>>) -> Result<Action> {
        if images.len() != acting.num_generators() {
            return Err(Error::InvalidAction(format!(
                "{} images for {} generators",
                images.len(),
                acting.num_generators()
            )));
        }
        for (k, img) in images.iter().enumerate() {
            if !is_automorphism(&target, img) {
                return Err(Error::InvalidAction(format!("image {k} is not an automorphism")));
            }
        }
        let n = target.order();
        let mut full = vec![Vec::new(); acting.order()];
        full[0] = (0..n as u32).collect();
        for &h in &acting.bfs_order()[1..] {
            let (p, k) = acting.parent(h);
            full[h as usize] = full[p as usize].iter().map(|_| 0).collect();
            for a in 0..n {
                full[h as usize][a] = full[p as usize][images[k][a] as usize];
            }
        }
        for h in 0..acting.order() {
            for (k, img) in images.iter().enumerate() {
                let hk = acting.right_action(k)[h] as usize;
                if (0..n).any(|a| full[hk][a] != full[h][img[a] as usize]) {
                    return Err(Error::InvalidAction(
                        "images do not respect the relations of the acting group".into(),
                    ));
                }
            }
        }
        Ok(Action {
            acting,
            target,
            images,
            full,
        })
    }

    pub fn trivial(acting: Group, target: Group) -> Action {
        let id: Vec<u32> = (0..target.order() as u32).collect();
        let images = vec![id; acting.num_generators()];
        Action::new(acting, target, images).expect("identity action")
    }

    pub fn acting(&self) -> &Group {
        &self.acting
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn generator_images(&self) -> &[Vec<u32>] {
        &self.images
    }

    /// `act(h)(a)`.
    #[inline]
    pub fn apply(&self, h: u32, a: u32) -> u32 {
        self.full[h as usize][a as usize]
    }

    /// `C_H(a)`: elements of the acting group fixing `a`.
    pub fn stabilizer(&self, a: u32) -> Subgroup {
        let fixed: Vec<u32> = (0..self.acting.order() as u32)
            .filter(|&h| self.apply(h, a) == a)
            .collect();
        self.acting
            .subgroup_from_members(&fixed)
            .expect("a stabilizer is a subgroup")
    }

    /// Elements acting trivially on all of the target.
    pub fn kernel(&self) -> Subgroup {
        let n = self.target.order() as u32;
        let fixed: Vec<u32> = (0..self.acting.order() as u32)
            .filter(|&h| (0..n).all(|a| self.apply(h, a) == a))
            .collect();
        self.acting
            .subgroup_from_members(&fixed)
            .expect("a kernel is a subgroup")
    }
}

/// `G/N` with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<u32>,
}

impl Group {
    /// `A ⋊ H` on pairs `(a, h)` stored at index `a + |A| h`, with
    /// `(a1, h1)(a2, h2) = (a1 · act(h1)(a2), h1 h2)`.
    pub fn semidirect_product(a: &Group, h: &Group, act: &Action) -> Result<Group> {
        if act.target().order() != a.order() || act.acting().order() != h.order() {
            return Err(Error::InvalidAction("action does not match the factors".into()));
        }
        let na = a.order();
        let nh = h.order();
        let pair = |x: usize| (x % na, x / na);
        let mut right = Vec::new();
        for &g in a.generators() {
            right.push(
                (0..na * nh)
                    .map(|x| {
                        let (ax, hx) = pair(x);
                        (a.mul(ax as u32, act.apply(hx as u32, g)) as usize + na * hx) as u32
                    })
                    .collect(),
            );
        }
        for k in 0..h.num_generators() {
            right.push(
                (0..na * nh)
                    .map(|x| {
                        let (ax, hx) = pair(x);
                        (ax + na * h.right_action(k)[hx] as usize) as u32
                    })
                    .collect(),
            );
        }
        Group::from_cayley(right)
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() as u32 {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &m in n.members() {
                coset[self.mul(x, m) as usize] = id;
            }
        }
        let mut right: Vec<Vec<u32>> = Vec::new();
        for &g in self.generators() {
            let r: Vec<u32> = reps.iter().map(|&x| coset[self.mul(x, g) as usize]).collect();
            if r[0] != 0 && !right.iter().any(|s| s[0] == r[0]) {
                right.push(r);
            }
        }
        Ok(Quotient {
            group: Group::from_cayley(right)?,
            projection: coset,
        })
    }
}
