use criterion::{black_box, criterion_group, criterion_main, Criterion};
use veerkit::census::{match_census, parse_census, MatchQuery};
use veerkit::flow::{build_flow_graph, enumerate_cycles, reduce};
use veerkit::geodesic::{build_markov_graph, doubled_punctured_grid, hexagon_decomposition, reduce_markov};
use veerkit::surgery::{predict_stats, MontesinosParams};
use veerkit::{decode_isosig, VeeringTriangulation};

const ENTRY: &str = "qvvLLMLzQQQkfgfjiloknoplmnoppaaaavvavaaavvaaav_1020212211211200";

fn triangulations(c: &mut Criterion) {
    let sig = ENTRY.split('_').next().unwrap();
    c.bench_function("decode_isosig 16 tets", |b| b.iter(|| decode_isosig(black_box(sig)).unwrap()));
    c.bench_function("veering structure 16 tets", |b| b.iter(|| VeeringTriangulation::from_entry(black_box(ENTRY)).unwrap()));
    let vt = VeeringTriangulation::from_entry(ENTRY).unwrap();
    let g = build_flow_graph(&vt);
    c.bench_function("flow graph reduce", |b| b.iter(|| reduce(black_box(&g))));
    c.bench_function("flow graph cycles <= 6", |b| b.iter(|| enumerate_cycles(black_box(&g), 6)));
}

fn markov(c: &mut Criterion) {
    let g5 = hexagon_decomposition(5).unwrap();
    c.bench_function("markov graph genus 5 hexagons", |b| b.iter(|| build_markov_graph(black_box(&g5))));
    let grid = doubled_punctured_grid(9, 9, &[(0, 0), (3, 3), (6, 6)]).unwrap();
    let mg = build_markov_graph(&grid);
    c.bench_function("markov reduce 9x9 grid", |b| b.iter(|| reduce_markov(black_box(&mg))));
}

fn counting(c: &mut Criterion) {
    let p: MontesinosParams = "2,3,5,7,11,13,17".parse().unwrap();
    c.bench_function("predict_stats n=7", |b| b.iter(|| predict_stats(black_box(&p)).unwrap()));
    let census = parse_census(&[
        "oLLvAwQMLQcbeehgiijjlnlmnnxxxavccaaaxcavc_21112002212120",
        "ovvLALQLQQchgggkijmnllnmnmaaaaaggaaggaaaa_10000111111100",
        "qvLAMAwPLzQkdcegfghiklmonppopbbbahabhbhabbhhga_2011022001120201",
        ENTRY,
    ]
    .join("\n"));
    let q = MatchQuery::new("2,2,4,4".parse().unwrap(), 4);
    c.bench_function("census match cold", |b| {
        b.iter_batched(|| census.clone(), |cs| match_census(&q, &cs).unwrap(), criterion::BatchSize::SmallInput)
    });
}

criterion_group!(benches, triangulations, markov, counting);
criterion_main!(benches);
