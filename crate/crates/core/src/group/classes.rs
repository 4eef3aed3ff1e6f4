use std::collections::VecDeque;

use super::Group;

/// Conjugacy classes in a deterministic order: by element order, then class
/// size, then smallest member index. The identity class comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<u32>>,
    reps: Vec<u32>,
    sizes: Vec<usize>,
    rep_orders: Vec<u32>,
    class_of: Vec<u32>,
    inverse_class: Vec<u32>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[u32] {
        &self.classes[c]
    }

    pub fn reps(&self) -> &[u32] {
        &self.reps
    }

    pub fn rep(&self, c: usize) -> u32 {
        self.reps[c]
    }

    /// `h(x)` for each class.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn rep_order(&self, c: usize) -> u32 {
        self.rep_orders[c]
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c] as usize
    }

    /// Class of `rep(c)^k`.
    pub fn power_class(&self, g: &Group, c: usize, k: i64) -> usize {
        self.class_of(g.pow(self.reps[c], k))
    }
}

impl Group {
    pub fn conjugacy_classes(&self) -> ClassPartition {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut orbit = vec![x];
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &g in self.generators() {
                    let z = self.conj(y, g);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        orbit.push(z);
                        queue.push_back(z);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
        let mut class_of = vec![0u32; n];
        for (i, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i as u32;
            }
        }
        let reps: Vec<u32> = raw.iter().map(|c| c[0]).collect();
        let inverse_class = reps.iter().map(|&r| class_of[self.inv(r) as usize]).collect();
        ClassPartition {
            sizes: raw.iter().map(Vec::len).collect(),
            rep_orders: reps.iter().map(|&r| self.element_order(r)).collect(),
            reps,
            classes: raw,
            class_of,
            inverse_class,
        }
    }
}
