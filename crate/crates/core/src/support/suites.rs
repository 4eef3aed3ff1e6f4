use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Ratio;

use super::report::{CheckEntry, Controls, Outcome, KNOWN_CHECKS};
use super::{log_p, SupportProfile};
use crate::character::CharacterTable;
use crate::cyclo::{minimal_prime_power_field, Cyclo};
use crate::error::{Error, Result};
use crate::group::{SeriesReport, Subgroup};

/// Largest group order for which the witness search of `B.frc_witness` runs.
pub const DEFAULT_WITNESS_CAP: usize = 729;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    A,
    B,
    C,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::A, Suite::B, Suite::C, Suite::Lemmas];

    pub fn name(self) -> &'static str {
        match self {
            Suite::A => "A",
            Suite::B => "B",
            Suite::C => "C",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteSelection(Vec<Suite>);

impl SuiteSelection {
    pub fn all() -> SuiteSelection {
        SuiteSelection(Suite::ALL.to_vec())
    }

    pub fn only(s: Suite) -> SuiteSelection {
        SuiteSelection(vec![s])
    }

    pub fn contains(&self, s: Suite) -> bool {
        self.0.contains(&s)
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteSelection> {
        if s == "all" {
            Ok(SuiteSelection::all())
        } else {
            s.parse().map(SuiteSelection::only)
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suites: SuiteSelection,
    pub witness_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suites: SuiteSelection::all(),
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

/// Runs the selected suites on one group. Entries come group-level first,
/// then by character, then in the order of [`KNOWN_CHECKS`].
pub fn verify_group(id: &str, table: &CharacterTable, opts: &VerifyOptions, controls: &Controls) -> Result<Vec<CheckEntry>> {
    let mut ctx = Ctx::new(id, table, opts, controls);
    if opts.suites.contains(Suite::A) {
        ctx.suite_a()?;
    }
    if opts.suites.contains(Suite::B) {
        ctx.suite_b()?;
    }
    if opts.suites.contains(Suite::C) {
        ctx.suite_c()?;
    }
    if opts.suites.contains(Suite::Lemmas) {
        ctx.suite_lemmas()?;
    }
    let mut out = ctx.out;
    out.sort_by_key(|(key, _)| *key);
    Ok(out.into_iter().map(|(_, e)| e).collect())
}

struct Hyp {
    met: bool,
    name: &'static str,
    /// Cannot be evaluated without it, even as a declared control.
    hard: bool,
}

fn soft(met: bool, name: &'static str) -> Hyp {
    Hyp { met, name, hard: false }
}

fn hard(met: bool, name: &'static str) -> Hyp {
    Hyp { met, name, hard: true }
}

/// `(passed, expected, got)`.
type Verdict = (bool, String, String);

struct Ctx<'a> {
    id: &'a str,
    t: &'a CharacterTable,
    controls: &'a Controls,
    opts: &'a VerifyOptions,
    p: u32,
    n: i64,
    p_group: bool,
    series: SeriesReport,
    profiles: Vec<SupportProfile>,
    faithful: Vec<bool>,
    /// `|χ(c)|²` per character and class.
    norms: Vec<Vec<Cyclo>>,
    normals: OnceLock<Vec<Subgroup>>,
    out: Vec<((usize, usize), CheckEntry)>,
}

impl<'a> Ctx<'a> {
    fn new(id: &'a str, t: &'a CharacterTable, opts: &'a VerifyOptions, controls: &'a Controls) -> Self {
        let g = t.group();
        let profiles = (0..t.len()).map(|i| t.support_profile(i)).collect();
        let faithful = (0..t.len()).map(|i| t.character_structure(i).faithful).collect();
        let norms = t
            .rows()
            .iter()
            .map(|r| r.values().iter().map(|v| v * &v.conj()).collect())
            .collect();
        Ctx {
            id,
            t,
            controls,
            opts,
            p: g.prime().unwrap_or(0),
            n: g.prime_exponent().unwrap_or(0) as i64,
            p_group: g.prime().is_some(),
            series: g.series_report(),
            profiles,
            faithful,
            norms,
            normals: OnceLock::new(),
            out: Vec::new(),
        }
    }

    fn record(
        &mut self,
        check: &'static str,
        chi: Option<usize>,
        hyps: &[Hyp],
        eval: impl FnOnce(&Self) -> Result<Verdict>,
    ) -> Result<()> {
        let declared = self.controls.declares(self.id, check);
        let p_group = hard(self.p_group, "p-group");
        let unmet = std::iter::once(&p_group)
            .chain(hyps)
            .find(|h| !h.met && (h.hard || !declared));
        let (outcome, expected, got) = match unmet {
            Some(h) => (Outcome::Skip, format!("hyp:{}", h.name), "-".to_string()),
            None => {
                let (ok, e, g) = eval(self)?;
                (if ok { Outcome::Pass } else { Outcome::Fail }, e, g)
            }
        };
        let idx = KNOWN_CHECKS.iter().position(|&k| k == check).expect("known check");
        let key = (chi.map_or(0, |c| c + 1), idx);
        self.out.push((
            key,
            CheckEntry {
                check,
                group: self.id.to_string(),
                chi,
                outcome,
                declared,
                expected,
                got,
            },
        ));
        Ok(())
    }

    fn order(&self) -> u64 {
        self.t.group().order() as u64
    }

    fn degree(&self, chi: usize) -> u64 {
        self.t.row(chi).degree()
    }

    /// `|G| / χ(1)²`, an integer for p-groups.
    fn bound(&self, chi: usize) -> u64 {
        self.order() / (self.degree(chi) * self.degree(chi))
    }

    fn log(&self, x: u64) -> i64 {
        log_p(x, self.p).expect("p-power")
    }

    fn normals(&self) -> &[Subgroup] {
        self.normals.get_or_init(|| {
            let g = self.t.group();
            g.normal_subgroups_over(&g.trivial_subgroup(), g.order())
        })
    }

    fn class_label(c: usize) -> String {
        format!("class{}", c + 1)
    }

    fn suite_a(&mut self) -> Result<()> {
        let meta = self.series.is_metabelian;
        let odd = self.p != 2;
        self.record(
            "A.order_exponent",
            None,
            &[soft(meta, "metabelian"), soft(odd, "p_odd")],
            |c| {
                // largest c with max_order <= |P| / χ(1)^c for every nonlinear χ
                let tightest = (0..c.t.len())
                    .filter(|&i| c.degree(i) > 1)
                    .map(|i| {
                        let e = c.log(c.profiles[i].max_order as u64);
                        Ratio::new(c.n - e, c.log(c.degree(i)))
                    })
                    .min();
                Ok(match tightest {
                    Some(r) => (r >= Ratio::new(3, 2), ">=3/2".into(), format!("c={r}")),
                    None => (true, ">=3/2".into(), "c=none".into()),
                })
            },
        )?;
        for chi in 0..self.t.len() {
            self.record("A.k_supp_bound", Some(chi), &[soft(meta, "metabelian")], |c| {
                let k = c.profiles[chi].k_supp as u64;
                let d2 = c.degree(chi) * c.degree(chi);
                Ok((
                    k * d2 <= c.order(),
                    format!("k_supp*d^2<={}", c.order()),
                    format!("{k}*{d2}={}", k * d2),
                ))
            })?;
            self.record(
                "A.order_bound",
                Some(chi),
                &[soft(meta, "metabelian"), soft(odd, "p_odd")],
                |c| {
                    let e = c.log(c.profiles[chi].max_order as u64);
                    let rhs = 2 * c.n - 3 * c.log(c.degree(chi));
                    Ok((2 * e <= rhs, format!("2e<=2n-3a={rhs}"), format!("2e={}", 2 * e)))
                },
            )?;
            self.record("A.monomial_witness", Some(chi), &[soft(meta, "metabelian")], |c| {
                let expected = "normal_A_with_linear_lambda^G=chi".to_string();
                Ok(match c.t.monomial_normal_witness(chi) {
                    Some(w) => {
                        let induced = c.t.induce_linear(&w.subgroup, &w.exps);
                        let ok = induced.values == c.t.row(chi).values();
                        (ok, expected, format!("|A|={}", w.subgroup.order()))
                    }
                    None => (false, expected, "none".into()),
                })
            })?;
        }
        Ok(())
    }

    fn suite_b(&mut self) -> Result<()> {
        let class3 = self.series.class_at_most_3;
        let odd = self.p != 2;
        let small = self.t.group().order() <= self.opts.witness_cap;
        for chi in 0..self.t.len() {
            let faithful = self.faithful[chi];
            let b12 = [soft(class3, "class<=3"), soft(faithful, "faithful")];
            let b34 = [soft(class3, "class<=3"), soft(odd, "p_odd")];
            self.record("B.abs_square", Some(chi), &b12, |c| {
                let d2 = (c.degree(chi) * c.degree(chi)) as i64;
                let e = c.t.conductor();
                let bad = c.profiles[chi].support_classes.iter().copied().find(|&l| {
                    c.norms[chi][l].scale(c.t.classes().size(l) as i64, 1) != Cyclo::from_int(e, d2)
                });
                Ok((
                    bad.is_none(),
                    format!("|chi(x)|^2*h(x)={d2}"),
                    bad.map_or_else(|| "ok".into(), Self::class_label),
                ))
            })?;
            self.record("B.root_of_unity", Some(chi), &b12, |c| {
                let d2 = (c.degree(chi) * c.degree(chi)) as i64;
                let row = c.t.row(chi);
                let bad = c.profiles[chi].support_classes.iter().copied().find(|&l| {
                    let v = row.value(l);
                    !(v * v).scale(c.t.classes().size(l) as i64, d2).is_root_of_unity()
                });
                Ok((
                    bad.is_none(),
                    "chi(x)^2*h(x)/d^2_root_of_unity".into(),
                    bad.map_or_else(|| "ok".into(), Self::class_label),
                ))
            })?;
            self.record("B.class_count", Some(chi), &b12, |c| {
                let k = c.profiles[chi].k_supp as u64;
                Ok((k == c.bound(chi), format!("k_supp={}", c.bound(chi)), format!("k_supp={k}")))
            })?;
            self.record("B.power_closure", Some(chi), &b34, |c| {
                let bad = c.power_closure_failure(chi);
                Ok((
                    bad.is_none(),
                    "x^m_in_support".into(),
                    bad.map_or_else(|| "ok".into(), |(l, m)| format!("{}^{m}:zero", Self::class_label(l))),
                ))
            })?;
            self.record("B.order_divides", Some(chi), &b34, |c| Ok(c.order_divides(chi)))?;
            let fives = if class3 && odd && small && self.p_group {
                self.fives(chi)
            } else {
                Vec::new()
            };
            let hyps = [
                hard(class3, "class<=3"),
                hard(odd, "p_odd"),
                hard(small, "order<=witness_cap"),
                hard(!fives.is_empty(), "character_five"),
            ];
            self.record("B.frc_witness", Some(chi), &hyps, |c| Ok(c.frc_verdict(chi, &fives)))?;
        }
        Ok(())
    }

    fn power_closure_failure(&self, chi: usize) -> Option<(usize, u32)> {
        let cp = self.t.classes();
        let row = self.t.row(chi);
        let g = self.t.group();
        for &l in &self.profiles[chi].support_classes {
            for m in 2..cp.rep_order(l) {
                if row.value(cp.power_class(g, l, m as i64)).is_zero() {
                    return Some((l, m));
                }
            }
        }
        None
    }

    fn order_divides(&self, chi: usize) -> Verdict {
        let b = self.bound(chi);
        let o = self.profiles[chi].max_order as u64;
        (b.is_multiple_of(o), format!("order|{b}"), format!("max_order={o}"))
    }

    /// Normal `N ⊇ Z(G)` with `N/Z(G)` abelian, `|N : Z(G)| = χ(1)²` and
    /// `χ_N` irreducible; `(G, N, Z(G), χ_N, φ)` is then a character five.
    fn fives(&self, chi: usize) -> Vec<Subgroup> {
        let g = self.t.group();
        let z = g.center();
        let d = self.degree(chi) as usize;
        let target = z.order() * d * d;
        self.normals()
            .iter()
            .filter(|n| n.order() == target && z.is_subset_of(n))
            .filter(|n| g.commutator_subgroup(n, n).is_subset_of(&z))
            .filter(|n| self.restriction_is_irreducible(chi, n))
            .cloned()
            .collect()
    }

    fn restriction_is_irreducible(&self, chi: usize, n: &Subgroup) -> bool {
        let cp = self.t.classes();
        let mut acc = Cyclo::zero(self.t.conductor());
        let one = Cyclo::one(self.t.conductor());
        let mut counts = vec![0i64; cp.len()];
        for &x in n.members() {
            counts[cp.class_of(x)] += 1;
        }
        for (l, &k) in counts.iter().enumerate() {
            if k != 0 {
                acc.add_product(&self.norms[chi][l], &one, k);
            }
        }
        acc == Cyclo::from_int(self.t.conductor(), n.order() as i64)
    }

    /// Passes when every five has a witness `U` whose conjugates cover
    /// exactly the support.
    fn frc_verdict(&self, chi: usize, fives: &[Subgroup]) -> Verdict {
        let g = self.t.group();
        let z = g.center();
        let cp = self.t.classes();
        let row = self.t.row(chi);
        let support: Vec<bool> = (0..cp.len()).map(|l| !row.value(l).is_zero()).collect();
        let expected = "U:KU=G,K^U=L,support=union_of_conjugates".to_string();
        for n in fives {
            // characters over χ_N of the same degree are exactly those agreeing with χ on N
            let agree: Vec<usize> = (0..self.t.len())
                .filter(|&j| {
                    self.degree(j) == self.degree(chi)
                        && n.members().iter().all(|&x| {
                            let c = cp.class_of(x);
                            self.t.row(j).value(c) == row.value(c)
                        })
                })
                .collect();
            let candidates = self.t.frc_candidates(n, &z, &agree);
            let hit = candidates.iter().find(|u| self.t.classes_meeting(u) == support);
            if hit.is_none() {
                let got = if candidates.is_empty() { "none" } else { "support_mismatch" };
                return (false, expected, format!("|N|={},{got}", n.order()));
            }
        }
        let u = g.order() / fives[0].order() * z.order();
        (true, expected, format!("fives={},|U|={u}", fives.len()))
    }

    fn suite_c(&mut self) -> Result<()> {
        let odd = self.p != 2;
        for chi in 0..self.t.len() {
            let d = self.degree(chi);
            let p4 = (self.p as u64).saturating_pow(4);
            let outside = d < p4 || self.n < 10;
            let hyps = [soft(odd, "p_odd"), soft(outside, "d<p^4_or_|P|<p^10")];
            self.record("C.order_divides", Some(chi), &hyps, |c| Ok(c.order_divides(chi)))?;
        }
        Ok(())
    }

    fn suite_lemmas(&mut self) -> Result<()> {
        let odd = self.p != 2;
        let lem1 = if self.p_group { self.lem1_results() } else { Vec::new() };
        let ilem = if self.p_group { self.ilem_results()? } else { Vec::new() };
        for chi in 0..self.t.len() {
            self.record("lemmas.lem1_formula", Some(chi), &[], |_| {
                let (checked, bad) = &lem1[chi];
                let expected = "|chi(x)|^2=(d/|N|)sum_N_chi([x,g])".to_string();
                Ok(match bad {
                    None => (true, expected, format!("normal_subgroups={checked}")),
                    Some(b) => (false, expected, b.clone()),
                })
            })?;
            self.record("lemmas.cyclic_divides", Some(chi), &[], |c| Ok(c.cyclic_divides(chi)))?;
            self.record("lemmas.power_into_normal", Some(chi), &[], |_| {
                let (checked, bad) = &ilem[chi];
                let expected = "x^m_in_N,m=|P:N|phi(1)/d".to_string();
                Ok(match bad {
                    None => (true, expected, format!("pairs={checked}")),
                    Some(b) => (false, expected, b.clone()),
                })
            })?;
            let faithful = self.faithful[chi];
            self.record(
                "lemmas.corefree",
                Some(chi),
                &[soft(odd, "p_odd"), soft(faithful, "faithful")],
                |c| Ok(c.corefree(chi)),
            )?;
            self.record("lemmas.field_bound", Some(chi), &[soft(odd, "p_odd")], |c| {
                let tag = minimal_prime_power_field(c.t.row(chi).values(), c.p)?;
                let pr = (tag.p as u64).pow(tag.r);
                Ok((pr <= c.bound(chi), format!("p^r<={}", c.bound(chi)), format!("p^r={pr}")))
            })?;
            self.record("lemmas.baseline_classes", Some(chi), &[], |c| {
                let k = c.profiles[chi].k_supp as u64;
                let b = c.order() / c.degree(chi);
                Ok((k <= b, format!("k_supp<={b}"), format!("k_supp={k}")))
            })?;
            self.record("lemmas.norm", Some(chi), &[], |c| {
                let cp = c.t.classes();
                let mut acc = Cyclo::zero(c.t.conductor());
                let one = Cyclo::one(c.t.conductor());
                for l in 0..cp.len() {
                    acc.add_product(&c.norms[chi][l], &one, cp.size(l) as i64);
                }
                let ok = acc == Cyclo::from_int(c.t.conductor(), c.order() as i64);
                Ok((ok, format!("sum_h|chi|^2={}", c.order()), format!("sum={}", acc.canonical_text())))
            })?;
        }
        Ok(())
    }

    /// For each character: the number of normal `N` with `χ_N` irreducible,
    /// and the first class where the commutator formula fails. Both sides are
    /// class functions of `x`, so class representatives suffice.
    fn lem1_results(&self) -> Vec<(usize, Option<String>)> {
        let g = self.t.group();
        let cp = self.t.classes();
        let e = self.t.conductor();
        let mut out = vec![(0usize, None); self.t.len()];
        for n in self.normals() {
            let live: Vec<usize> = (0..self.t.len())
                .filter(|&chi| out[chi].1.is_none() && self.restriction_is_irreducible(chi, n))
                .collect();
            if live.is_empty() {
                continue;
            }
            let hist: Vec<Vec<(usize, i64)>> = (0..cp.len())
                .map(|l| {
                    let x = cp.rep(l);
                    let mut counts = std::collections::BTreeMap::new();
                    for &y in n.members() {
                        *counts.entry(cp.class_of(g.commutator(x, y))).or_insert(0i64) += 1;
                    }
                    counts.into_iter().collect()
                })
                .collect();
            for chi in live {
                out[chi].0 += 1;
                let row = self.t.row(chi);
                let d = self.degree(chi) as i64;
                let one = Cyclo::one(e);
                for (l, h) in hist.iter().enumerate() {
                    let mut sum = Cyclo::zero(e);
                    for &(c, k) in h {
                        sum.add_product(row.value(c), &one, k);
                    }
                    if self.norms[chi][l].scale(n.order() as i64, 1) != sum.scale(d, 1) {
                        out[chi].1 = Some(format!("|N|={},{}", n.order(), Self::class_label(l)));
                        break;
                    }
                }
            }
        }
        out
    }

    /// For each character: the number of (chief series term, constituent)
    /// pairs checked, and the first violation of `x^m ∈ N`.
    fn ilem_results(&self) -> Result<Vec<(usize, Option<String>)>> {
        let g = self.t.group();
        let cp = self.t.classes();
        let mut out = vec![(0usize, None); self.t.len()];
        let complex: Vec<Vec<Complex64>> = self
            .t
            .rows()
            .iter()
            .map(|r| r.values().iter().map(Cyclo::to_complex).collect())
            .collect();
        for n in g.chief_series() {
            let sub = self.t.normal_table(&n)?;
            let st = &sub.table;
            let ncp = st.classes();
            let to_g: Vec<usize> = (0..ncp.len())
                .map(|c| cp.class_of(sub.embedded.embedding[ncp.rep(c) as usize]))
                .collect();
            let psi: Vec<Vec<Complex64>> = st
                .rows()
                .iter()
                .map(|r| r.values().iter().map(|v| v.to_complex().conj()).collect())
                .collect();
            let index = (g.order() / n.order()) as u64;
            for chi in 0..self.t.len() {
                if out[chi].1.is_some() {
                    continue;
                }
                let d = self.degree(chi);
                let mut degree_sum = 0u64;
                let mut constituent_degrees = Vec::new();
                for (j, ps) in psi.iter().enumerate() {
                    let ip: Complex64 = (0..ncp.len())
                        .map(|c| complex[chi][to_g[c]] * ps[c] * ncp.size(c) as f64)
                        .sum::<Complex64>()
                        / n.order() as f64;
                    let m = ip.re.round();
                    if (ip - Complex64::new(m, 0.0)).norm() > 1e-6 || m < 0.0 {
                        return Err(Error::Internal("restriction multiplicity is not a natural number".into()));
                    }
                    if m > 0.0 {
                        degree_sum += m as u64 * st.row(j).degree();
                        constituent_degrees.push(st.row(j).degree());
                    }
                }
                if degree_sum != d {
                    return Err(Error::Internal("restriction degrees do not add up".into()));
                }
                for f in constituent_degrees {
                    out[chi].0 += 1;
                    if !(index * f).is_multiple_of(d) {
                        out[chi].1 = Some(format!("|N|={},m_not_integral", n.order()));
                        break;
                    }
                    let m = (index * f / d) as i64;
                    let bad = self.profiles[chi]
                        .support_classes
                        .iter()
                        .find(|&&l| !n.contains(g.pow(cp.rep(l), m)));
                    if let Some(&l) = bad {
                        out[chi].1 = Some(format!("|N|={},{}^{m}", n.order(), Self::class_label(l)));
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Cyclic subgroups of support elements on which `χ` never vanishes
    /// have order dividing `|P|/χ(1)²`.
    fn cyclic_divides(&self, chi: usize) -> Verdict {
        let cp = self.t.classes();
        let g = self.t.group();
        let row = self.t.row(chi);
        let b = self.bound(chi);
        let mut checked = 0;
        for &l in &self.profiles[chi].support_classes {
            let o = cp.rep_order(l);
            if (1..o).all(|m| !row.value(cp.power_class(g, l, m as i64)).is_zero()) {
                checked += 1;
                if !b.is_multiple_of(o as u64) {
                    return (false, format!("|<x>||{b}"), format!("{}:order={o}", Self::class_label(l)));
                }
            }
        }
        (true, format!("|<x>||{b}"), format!("cyclic={checked}"))
    }

    fn corefree(&self, chi: usize) -> Verdict {
        let cp = self.t.classes();
        let g = self.t.group();
        let b = self.bound(chi);
        let mut instances = 0;
        for &l in &self.profiles[chi].support_classes {
            if b.is_multiple_of(cp.rep_order(l) as u64) {
                continue;
            }
            instances += 1;
            let c = g.cyclic_subgroup(cp.rep(l));
            let found = (0..g.order() as u32).any(|y| g.intersect(&c, &g.conjugate_subgroup(&c, y)).is_trivial());
            if !found {
                return (false, "C^C^g=1_for_some_g".into(), Self::class_label(l));
            }
        }
        (true, "C^C^g=1_for_some_g".into(), format!("instances={instances}"))
    }
}
