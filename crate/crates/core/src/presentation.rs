//! Line-based group description files: permutation generators or
//! polycyclic presentations of p-groups.
//!
//! ```text
//! group pc ngens=3 prime=3
//! conj g2^g1 = g2^1 g3^1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_CLOSURE_CAP};

/// A normal-form word `g_{i1}^{e1} g_{i2}^{e2} …` with strictly increasing
/// 0-based generator indices and exponents in `1..p`.
pub type Word = Vec<(usize, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermSpec {
    pub degree: usize,
    /// 0-based images of `0..degree`, one row per generator.
    pub gens: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcSpec {
    pub ngens: usize,
    pub prime: u32,
    /// `g_i^p = word`, keyed by 0-based `i`.
    pub powers: BTreeMap<usize, Word>,
    /// `g_j^{g_i} = word`, keyed by 0-based `(i, j)` with `i < j`.
    pub conjugates: BTreeMap<(usize, usize), Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Perm(PermSpec),
    Pc(PcSpec),
}

#[derive(Clone, Copy, Debug)]
pub struct RealizeOptions {
    pub cap: usize,
    /// Realize pc presentations by closing exponent vectors under plain
    /// symbolic collection instead of the table-driven collector.
    pub via_closure: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            cap: DEFAULT_CLOSURE_CAP,
            via_closure: false,
        }
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(col),
                (true, Some(s)) => {
                    tokens.push((s, &body[s..col]));
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            // report columns as 1-based character positions
            let tokens = tokens
                .into_iter()
                .map(|(b, t)| (body[..b].chars().count() + 1, t))
                .collect();
            out.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn header_value(line: &Line, idx: usize, key: &str) -> Result<usize> {
    let (col, tok) = *line
        .tokens
        .get(idx)
        .ok_or_else(|| err(line.number, 1, format!("missing `{key}=`")))?;
    let value = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| err(line.number, col, format!("expected `{key}=<n>`")))?;
    value
        .parse::<usize>()
        .map_err(|_| err(line.number, col + key.len() + 1, format!("invalid {key} `{value}`")))
}

fn parse_generator(line: usize, col: usize, tok: &str, ngens: usize) -> Result<usize> {
    let idx = tok
        .strip_prefix('g')
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| err(line, col, format!("expected a generator `g<i>`, found `{tok}`")))?;
    if idx == 0 || idx > ngens {
        return Err(err(line, col, format!("generator g{idx} out of range 1..{ngens}")));
    }
    Ok(idx - 1)
}

fn parse_word(line: usize, tokens: &[(usize, &str)], spec: &PcSpec, above: usize) -> Result<Word> {
    if let [(_, "1")] = tokens {
        return Ok(Vec::new());
    }
    if tokens.is_empty() {
        return Err(err(line, 1, "missing word after `=`"));
    }
    let mut word: Word = Vec::new();
    for &(col, tok) in tokens {
        let (g, e) = match tok.split_once('^') {
            Some((g, e)) => {
                let e = e
                    .parse::<u32>()
                    .map_err(|_| err(line, col + g.len() + 1, format!("invalid exponent `{e}`")))?;
                (g, e)
            }
            None => (tok, 1),
        };
        let idx = parse_generator(line, col, g, spec.ngens)?;
        if idx <= above {
            return Err(err(
                line,
                col,
                format!("word may only use generators after g{}", above + 1),
            ));
        }
        if word.last().is_some_and(|&(last, _)| last >= idx) {
            return Err(err(line, col, "generators in a word must be strictly increasing"));
        }
        if e == 0 || e >= spec.prime {
            return Err(err(line, col, format!("exponent must lie in 1..{}", spec.prime - 1)));
        }
        word.push((idx, e));
    }
    Ok(word)
}

fn parse_perm(lines: &[Line], degree: usize) -> Result<PermSpec> {
    let mut gens = Vec::new();
    for line in lines {
        let (col, head) = line.tokens[0];
        if head != "gen" {
            return Err(err(line.number, col, format!("expected `gen`, found `{head}`")));
        }
        let images = &line.tokens[1..];
        if images.len() != degree {
            return Err(err(
                line.number,
                col,
                format!("expected {degree} images, found {}", images.len()),
            ));
        }
        let mut row = Vec::with_capacity(degree);
        let mut seen = vec![false; degree];
        for &(c, tok) in images {
            let v: usize = tok
                .parse()
                .map_err(|_| err(line.number, c, format!("invalid image `{tok}`")))?;
            if v == 0 || v > degree {
                return Err(err(line.number, c, format!("image {v} out of range 1..{degree}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(err(line.number, c, "row not a bijection"));
            }
            row.push((v - 1) as u32);
        }
        gens.push(row);
    }
    Ok(PermSpec { degree, gens })
}

fn parse_pc(lines: &[Line], ngens: usize, prime: u32) -> Result<PcSpec> {
    let mut spec = PcSpec {
        ngens,
        prime,
        powers: BTreeMap::new(),
        conjugates: BTreeMap::new(),
    };
    for line in lines {
        let n = line.number;
        let (col, head) = line.tokens[0];
        let eq = line.tokens.iter().position(|&(_, t)| t == "=");
        let Some(eq) = eq.filter(|&e| e == 2) else {
            return Err(err(n, col, "expected `<relation> <lhs> = <word>`"));
        };
        let (lcol, lhs) = line.tokens[1];
        let word_tokens = &line.tokens[eq + 1..];
        match head {
            "power" => {
                let i = parse_generator(n, lcol, lhs, ngens)?;
                let word = parse_word(n, word_tokens, &spec, i)?;
                if spec.powers.insert(i, word).is_some() {
                    return Err(err(n, lcol, format!("duplicate power relation for g{}", i + 1)));
                }
            }
            "conj" => {
                let (gj, gi) = lhs
                    .split_once('^')
                    .ok_or_else(|| err(n, lcol, "expected `g<j>^g<i>`"))?;
                let j = parse_generator(n, lcol, gj, ngens)?;
                let i = parse_generator(n, lcol + gj.len() + 1, gi, ngens)?;
                if i >= j {
                    return Err(err(n, lcol, "conjugate relation needs g<j>^g<i> with i < j"));
                }
                let word = parse_word(n, word_tokens, &spec, i)?;
                if spec.conjugates.insert((i, j), word).is_some() {
                    return Err(err(n, lcol, format!("duplicate relation for g{}^g{}", j + 1, i + 1)));
                }
            }
            other => return Err(err(n, col, format!("unknown relation `{other}`"))),
        }
    }
    Ok(spec)
}

/// Parses a group file, reporting errors with 1-based line and column.
pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let lines = tokenize(text);
    let first = lines.first().ok_or_else(|| err(1, 1, "empty group file"))?;
    let tok = |i: usize| first.tokens.get(i).map(|&(_, t)| t);
    if tok(0) != Some("group") {
        return Err(err(first.number, first.tokens[0].0, "expected `group`"));
    }
    match tok(1) {
        Some("perm") => {
            if first.tokens.len() != 3 {
                return Err(err(first.number, 1, "expected `group perm degree=<d>`"));
            }
            let degree = header_value(first, 2, "degree")?;
            if degree == 0 {
                return Err(err(first.number, first.tokens[2].0, "degree must be positive"));
            }
            Ok(GroupSpec::Perm(parse_perm(&lines[1..], degree)?))
        }
        Some("pc") => {
            if first.tokens.len() != 4 {
                return Err(err(first.number, 1, "expected `group pc ngens=<n> prime=<p>`"));
            }
            let ngens = header_value(first, 2, "ngens")?;
            let prime = header_value(first, 3, "prime")?;
            if crate::group::prime_of_power(prime) != Some(prime as u32) {
                return Err(err(first.number, first.tokens[3].0, format!("{prime} is not prime")));
            }
            if ngens > u8::MAX as usize {
                return Err(err(first.number, first.tokens[2].0, "too many generators"));
            }
            Ok(GroupSpec::Pc(parse_pc(&lines[1..], ngens, prime as u32)?))
        }
        _ => {
            let col = first.tokens.get(1).map_or(first.tokens[0].0, |t| t.0);
            Err(err(first.number, col, "expected `perm` or `pc`"))
        }
    }
}

fn write_word(out: &mut String, word: &Word) {
    if word.is_empty() {
        out.push_str(" 1");
    }
    for &(g, e) in word {
        let _ = write!(out, " g{}^{e}", g + 1);
    }
}

/// Canonical serialization; `parse_group_file` inverts it exactly.
pub fn emit_group_file(spec: &GroupSpec) -> String {
    let mut out = String::new();
    match spec {
        GroupSpec::Perm(p) => {
            let _ = writeln!(out, "group perm degree={}", p.degree);
            for row in &p.gens {
                out.push_str("gen");
                for &y in row {
                    let _ = write!(out, " {}", y + 1);
                }
                out.push('\n');
            }
        }
        GroupSpec::Pc(pc) => {
            let _ = writeln!(out, "group pc ngens={} prime={}", pc.ngens, pc.prime);
            for (&i, w) in &pc.powers {
                let _ = write!(out, "power g{} =", i + 1);
                write_word(&mut out, w);
                out.push('\n');
            }
            for (&(i, j), w) in &pc.conjugates {
                let _ = write!(out, "conj g{}^g{} =", j + 1, i + 1);
                write_word(&mut out, w);
                out.push('\n');
            }
        }
    }
    out
}

impl PcSpec {
    fn order(&self) -> Option<usize> {
        (self.prime as usize).checked_pow(self.ngens as u32)
    }

    fn power_word(&self, i: usize) -> &[(usize, u32)] {
        self.powers.get(&i).map_or(&[], Vec::as_slice)
    }

    fn conj_word(&self, i: usize, j: usize) -> Word {
        self.conjugates
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vec![(j, 1)])
    }

    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().fold(0u32, |acc, &e| acc * self.prime + e)
    }

    fn decode(&self, mut x: u32) -> Vec<u32> {
        let mut v = vec![0; self.ngens];
        for slot in v.iter_mut().rev() {
            *slot = x % self.prime;
            x /= self.prime;
        }
        v
    }

    /// `v ← v · g_k` by collection from the left: the uncollected tail
    /// `g_{k+1}^{v_{k+1}} …` is conjugated past `g_k`.
    fn collect_generator(&self, v: &mut [u32], k: usize) {
        let mut tail: Vec<(usize, u32)> = Vec::new();
        for j in k + 1..self.ngens {
            if v[j] != 0 {
                tail.push((j, std::mem::take(&mut v[j])));
            }
        }
        v[k] += 1;
        if v[k] == self.prime {
            v[k] = 0;
            for &(m, e) in self.power_word(k) {
                for _ in 0..e {
                    self.collect_generator(v, m);
                }
            }
        }
        for (j, r) in tail {
            let w = self.conj_word(k, j);
            for _ in 0..r {
                for &(m, e) in &w {
                    for _ in 0..e {
                        self.collect_generator(v, m);
                    }
                }
            }
        }
    }

    fn collect_product(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut v = a.to_vec();
        for (k, &e) in b.iter().enumerate() {
            for _ in 0..e {
                self.collect_generator(&mut v, k);
            }
        }
        v
    }

    /// Right multiplication tables for `g_n, …, g_1`, each built from the
    /// tables already known for later generators.
    fn collector_tables(&self) -> Vec<Vec<u32>> {
        let n = self.ngens;
        let size = self.order().expect("order checked by caller");
        let mut tables: Vec<Vec<u32>> = vec![Vec::new(); n];
        for k in (0..n).rev() {
            let mut table = Vec::with_capacity(size);
            let conj: Vec<Word> = (0..n).map(|j| if j > k { self.conj_word(k, j) } else { Vec::new() }).collect();
            for x in 0..size as u32 {
                let v = self.decode(x);
                let mut head = v.clone();
                head[k + 1..].iter_mut().for_each(|e| *e = 0);
                head[k] += 1;
                let wrapped = head[k] == self.prime;
                if wrapped {
                    head[k] = 0;
                }
                let mut y = self.encode(&head);
                let apply = |y: &mut u32, m: usize, e: u32| {
                    for _ in 0..e {
                        *y = tables[m][*y as usize];
                    }
                };
                if wrapped {
                    for &(m, e) in self.power_word(k) {
                        apply(&mut y, m, e);
                    }
                }
                for j in k + 1..n {
                    for _ in 0..v[j] {
                        for &(m, e) in &conj[j] {
                            apply(&mut y, m, e);
                        }
                    }
                }
                table.push(y);
            }
            tables[k] = table;
        }
        tables
    }

    fn check_relations(&self, g: &Group, gens: &[u32], word_elem: impl Fn(&[(usize, u32)]) -> u32) -> Result<()> {
        let p = self.prime as i64;
        for i in 0..self.ngens {
            if g.pow(gens[i], p) != word_elem(self.power_word(i)) {
                return Err(Error::Inconsistent(format!("power relation of g{} fails", i + 1)));
            }
            for j in i + 1..self.ngens {
                if g.conj(gens[j], gens[i]) != word_elem(&self.conj_word(i, j)) {
                    return Err(Error::Inconsistent(format!(
                        "relation for g{}^g{} fails",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn realize_tables(&self, cap: usize) -> Result<Group> {
        let size = self.order().filter(|&s| s <= cap).ok_or(Error::CapExceeded { cap })?;
        if self.ngens == 0 {
            return Ok(Group::trivial());
        }
        let tables = self.collector_tables();
        // the tables define a group of order p^n iff they generate a regular
        // permutation group; anything larger means the relations clash
        match Group::from_permutations(size, &tables, size) {
            Err(Error::CapExceeded { .. }) | Err(Error::NonInvertible { .. }) => {
                return Err(Error::Inconsistent(format!(
                    "collected group is larger than {}^{}",
                    self.prime, self.ngens
                )))
            }
            Err(e) => return Err(e),
            Ok(_) => {}
        }
        let group = Group::from_cayley(tables)?;
        let gens: Vec<u32> = (0..self.ngens).map(|k| group.right_action(k)[0]).collect();
        self.check_relations(&group, &gens, |w| {
            let mut v = vec![0; self.ngens];
            for &(m, e) in w {
                v[m] = e;
            }
            self.encode(&v)
        })?;
        Ok(group)
    }

    fn realize_closure(&self, cap: usize) -> Result<Group> {
        let size = self.order().filter(|&s| s <= cap).ok_or(Error::CapExceeded { cap })?;
        let gens: Vec<Vec<u32>> = (0..self.ngens)
            .map(|k| {
                let mut v = vec![0; self.ngens];
                v[k] = 1;
                v
            })
            .collect();
        let identity = vec![0; self.ngens];
        let (group, elems) = Group::closure(identity, &gens, |a, b| self.collect_product(a, b), cap)
            .map_err(|e| match e {
                Error::CapExceeded { .. } => e,
                other => Error::Inconsistent(other.to_string()),
            })?;
        if group.order() != size {
            return Err(Error::Inconsistent(format!(
                "collected group has order {} instead of {size}",
                group.order()
            )));
        }
        let index = |v: &[u32]| elems.iter().position(|e| e == v).expect("normal forms enumerate the group") as u32;
        let gen_idx: Vec<u32> = gens.iter().map(|v| index(v)).collect();
        self.check_relations(&group, &gen_idx, |w| {
            let mut v = vec![0; self.ngens];
            for &(m, e) in w {
                v[m] = e;
            }
            index(&v)
        })?;
        Ok(group)
    }
}

pub fn realize(spec: &GroupSpec) -> Result<Group> {
    realize_with(spec, &RealizeOptions::default())
}

pub fn realize_with(spec: &GroupSpec, opts: &RealizeOptions) -> Result<Group> {
    match spec {
        GroupSpec::Perm(p) => {
            if p.gens.is_empty() {
                return Ok(Group::trivial());
            }
            Ok(Group::from_permutations(p.degree, &p.gens, opts.cap)?.0)
        }
        GroupSpec::Pc(pc) if opts.via_closure => pc.realize_closure(opts.cap),
        GroupSpec::Pc(pc) => pc.realize_tables(opts.cap),
    }
}

/// A pc presentation of a p-group along a chief series, omitting the
/// relations that hold by default.
pub fn pc_presentation_of(g: &Group) -> Result<PcSpec> {
    let p = g.prime().ok_or_else(|| Error::InvalidInput("not a p-group".into()))?;
    let series = g.chief_series();
    let n = series.len() - 1;
    let gens: Vec<u32> = (0..n)
        .map(|i| {
            *series[i]
                .members()
                .iter()
                .find(|&&x| !series[i + 1].contains(x))
                .expect("chief factors are nontrivial")
        })
        .collect();
    let inv_gens: Vec<u32> = gens.iter().map(|&x| g.inv(x)).collect();
    let normal_form = |mut x: u32| -> Vec<u32> {
        let mut v = vec![0; n];
        for i in 0..n {
            while !series[i + 1].contains(x) {
                x = g.mul(inv_gens[i], x);
                v[i] += 1;
            }
        }
        v
    };
    let to_word = |v: Vec<u32>| -> Word { v.into_iter().enumerate().filter(|&(_, e)| e != 0).collect() };
    let mut spec = PcSpec {
        ngens: n,
        prime: p,
        powers: BTreeMap::new(),
        conjugates: BTreeMap::new(),
    };
    for i in 0..n {
        let w = to_word(normal_form(g.pow(gens[i], p as i64)));
        if !w.is_empty() {
            spec.powers.insert(i, w);
        }
        for j in i + 1..n {
            let w = to_word(normal_form(g.conj(gens[j], gens[i])));
            if w != [(j, 1)] {
                spec.conjugates.insert((i, j), w);
            }
        }
    }
    Ok(spec)
}

/// A file describing `g`: a pc presentation for p-groups, otherwise the
/// right regular permutation representation.
pub fn spec_of(g: &Group) -> GroupSpec {
    if g.order() > 1 {
        if let Ok(pc) = pc_presentation_of(g) {
            return GroupSpec::Pc(pc);
        }
    }
    GroupSpec::Perm(PermSpec {
        degree: g.order(),
        gens: (0..g.num_generators()).map(|k| g.right_action(k).to_vec()).collect(),
    })
}
