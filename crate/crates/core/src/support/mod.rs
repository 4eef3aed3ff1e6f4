//! Supports of irreducible characters, the trace/σ machinery for abelian
//! groups under an action, and the verification suites built on them.

mod frc;
mod report;
mod sigma;
mod suites;

use num_rational::Ratio;

use crate::character::CharacterTable;

pub use frc::CharacterFive;
pub use report::{CheckEntry, Controls, Outcome, Summary, BUNDLED_CONTROLS, KNOWN_CHECKS};
pub use sigma::{random_instances, sigma, trace_character, SigmaInstance, SigmaReport};
pub use suites::{verify_group, Suite, SuiteSelection, VerifyOptions, DEFAULT_WITNESS_CAP};

/// A bound `p^(twice_log / 2)`, kept as an exponent so that half-integral
/// powers compare exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerBound {
    pub p: u32,
    pub twice_log: i64,
}

impl std::fmt::Display for PowerBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice_log % 2 == 0 {
            write!(f, "{}^{}", self.p, self.twice_log / 2)
        } else {
            write!(f, "{}^({}/2)", self.p, self.twice_log)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SupportProfile {
    pub chi: usize,
    /// Classes on which `χ` is nonzero, ascending; always contains class 0.
    pub support_classes: Vec<usize>,
    pub k_supp: usize,
    pub max_order: u32,
    /// `|G| / χ(1)²`.
    pub bound_a1: Ratio<u64>,
    /// `|P| / χ(1)^{3/2}` for p-groups.
    pub bound_a2: Option<PowerBound>,
    /// `|G| / χ(1)²`, the modulus that support orders should divide.
    pub bound_b4: Ratio<u64>,
    /// Support equal to `Z(χ)`.
    pub gvz: bool,
}

/// `(n, a)` with `|G| = p^n` and `χ(1) = p^a`, for p-groups.
pub(crate) fn log_pair(table: &CharacterTable, chi: usize) -> Option<(u32, i64, i64)> {
    let g = table.group();
    let p = g.prime()?;
    let n = g.prime_exponent()? as i64;
    let a = log_p(table.row(chi).degree(), p)?;
    Some((p, n, a))
}

pub(crate) fn log_p(mut x: u64, p: u32) -> Option<i64> {
    let mut k = 0;
    while x > 1 {
        if !x.is_multiple_of(p as u64) {
            return None;
        }
        x /= p as u64;
        k += 1;
    }
    Some(k)
}

impl CharacterTable {
    pub fn support_profile(&self, chi: usize) -> SupportProfile {
        let row = self.row(chi);
        let cp = self.classes();
        let support_classes: Vec<usize> = (0..cp.len()).filter(|&c| !row.value(c).is_zero()).collect();
        let max_order = support_classes.iter().map(|&c| cp.rep_order(c)).max().unwrap_or(1);
        let d = row.degree();
        let order = self.group().order() as u64;
        let bound = Ratio::new(order, d * d);
        let center = self.character_structure(chi).center;
        let gvz = support_classes.iter().all(|&c| center.contains(cp.rep(c)))
            && support_classes.iter().map(|&c| cp.size(c)).sum::<usize>() == center.order();
        SupportProfile {
            chi,
            k_supp: support_classes.len(),
            support_classes,
            max_order,
            bound_a1: bound,
            bound_a2: log_pair(self, chi).map(|(p, n, a)| PowerBound { p, twice_log: 2 * n - 3 * a }),
            bound_b4: bound,
            gvz,
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::character::tests::d16;
    use crate::character::CharacterTable;

    #[test]
    fn d16_supports() {
        let t = CharacterTable::compute(d16()).unwrap();
        for i in 0..t.len() {
            let s = t.support_profile(i);
            assert_eq!(s.support_classes[0], 0);
            assert!(s.k_supp as u64 * t.row(i).degree() <= 16);
            if t.row(i).degree() == 1 {
                assert_eq!(s.k_supp, 7);
                assert!(s.gvz);
            }
            if t.character_structure(i).faithful {
                assert_eq!(s.k_supp, 4);
                assert_eq!(s.max_order, 8);
                assert!(!s.gvz);
                let orders: Vec<u32> = s.support_classes.iter().map(|&c| t.classes().rep_order(c)).collect();
                assert_eq!(orders, vec![1, 2, 8, 8]);
                assert_eq!(s.bound_a2.unwrap().to_string(), "2^(5/2)");
            }
        }
    }
}
