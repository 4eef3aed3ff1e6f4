use charsupp_bench::{counterexample, family};
use charsupp_core::families::FamilySpec;
use charsupp_core::support::{verify_group, VerifyOptions};
use charsupp_core::{CharacterTable, Controls};
use criterion::{criterion_group, criterion_main, Criterion};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("table");
    g.sample_size(10);
    for spec in [
        FamilySpec::Dihedral { order: 128 },
        FamilySpec::Extraspecial { p: 5, exponent_power: 1 },
        FamilySpec::Unitriangular { n: 4, p: 3 },
    ] {
        let group = family(spec.clone());
        g.bench_function(spec.to_string(), |b| b.iter(|| CharacterTable::compute(group.clone()).unwrap()));
    }
    let group = counterexample();
    g.bench_function("smallgroup_512_2015", |b| b.iter(|| CharacterTable::compute(group.clone()).unwrap()));
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    let controls = Controls::bundled();
    for spec in [FamilySpec::Dihedral { order: 64 }, FamilySpec::Extraspecial { p: 5, exponent_power: 2 }] {
        let table = CharacterTable::compute(family(spec.clone())).unwrap();
        let id = spec.to_string();
        g.bench_function(&id, |b| b.iter(|| verify_group(&id, &table, &VerifyOptions::default(), &controls).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, tables, suites);
criterion_main!(benches);
