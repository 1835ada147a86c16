use criterion::{black_box, criterion_group, criterion_main, Criterion};
use sr_chroma::search::{search_action, SearchOptions};
use sr_chroma::{build_complex, chromatic_number, span_chromatic_number, Family, Graph, SrRing};
use sr_chroma_bench::{mycielski, petersen};

fn chromatic(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic");
    for (name, g) in [("petersen", petersen()), ("grotzsch", mycielski(2)), ("k7", Graph::complete(7))] {
        group.bench_function(name, |b| b.iter(|| chromatic_number(black_box(&g))));
    }
    group.finish();
}

fn span(c: &mut Criterion) {
    let mut group = c.benchmark_group("span_chromatic");
    group.sample_size(10);
    for p in [2, 3, 5] {
        let g = petersen();
        group.bench_function(format!("petersen_p{p}"), |b| b.iter(|| span_chromatic_number(black_box(&g), p).unwrap()));
        let g = Graph::cycle(7);
        group.bench_function(format!("c7_p{p}"), |b| b.iter(|| span_chromatic_number(black_box(&g), p).unwrap()));
    }
    group.finish();
}

fn action_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("action_search");
    group.sample_size(10);
    let opts = SearchOptions { cap: None, ..SearchOptions::default() };
    for (name, family, g) in [
        ("b2_c5", Family::B { n: 2 }, Graph::cycle(5)),
        ("b2_c4", Family::B { n: 2 }, Graph::cycle(4)),
        ("b3_k3", Family::B { n: 3 }, Graph::complete(3)),
    ] {
        let ring = SrRing::new(build_complex(&family, &g).unwrap(), 3).unwrap();
        group.bench_function(name, |b| b.iter(|| search_action(black_box(&ring), &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, chromatic, span, action_search);
criterion_main!(benches);
