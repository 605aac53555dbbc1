use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use weblab::catalog::{catalog, six_web_factor};
use weblab::exactalg::{gcd, squarefree_split};
use weblab::monodromy::web_monodromy;
use weblab::parse::{parse_form, parse_map, parse_poly};
use weblab::planemaps::pullback;
use weblab::webgeom::discriminant_degree_check;
use weblab::{PlaneMap, RatFunc2};

fn discriminants(c: &mut Criterion) {
    let dual = parse_form("(x - y*x^2)*dy^2 + 2*x*y^2*dx*dy - y^3*dx^2").unwrap();
    c.bench_function("discriminant/dual-web", |b| b.iter(|| black_box(&dual).discriminant().unwrap()));
    let quartic = parse_form(
        "(3*x^3 - 7*y + 2*x*y^2)*dx^4 + (x^2*y - 9 + 5*y^3)*dx^3*dy + (8*x*y - x^3 + 4)*dx^2*dy^2 \
         + (y^2 - 6*x^2*y + 10*x)*dx*dy^3 + (2*x^3 + y^3 - 3*x*y)*dy^4",
    )
    .unwrap();
    c.bench_function("discriminant/random-quartic", |b| b.iter(|| black_box(&quartic).discriminant().unwrap()));
    let six = catalog().into_iter().find(|e| e.name == "h-six-web").unwrap().web.unwrap();
    let mut group = c.benchmark_group("discriminant");
    group.sample_size(10);
    group.bench_function("six-web-degree-check", |b| b.iter(|| discriminant_degree_check(black_box(&six), 1).unwrap()));
    group.finish();
}

fn pullbacks(c: &mut Criterion) {
    let pi = parse_map("map((x+y)^2, (x-y)^2)").unwrap();
    let w = parse_form("x*dy^2 - y*dx^2").unwrap();
    c.bench_function("pullback/quotient", |b| b.iter(|| pullback(black_box(&pi), black_box(&w)).unwrap()));
    let f = six_web_factor();
    let g = RatFunc2::new(f.numer().swap_xy(), f.denom().swap_xy()).unwrap();
    let phi = PlaneMap::new(f, g).unwrap();
    let six = parse_form("y^3*(1+y)^4*dx^6 + 2*x^3*(1+x)^4*dy^6").unwrap();
    let mut group = c.benchmark_group("pullback");
    group.sample_size(10);
    group.bench_function("six-web", |b| b.iter(|| pullback(black_box(&phi), black_box(&six)).unwrap()));
    group.finish();
}

fn gcds(c: &mut Criterion) {
    let a = parse_poly("(x^3*y - 2*x + y^2 + 1)^2*(x*y + 3)*(x^2 - y^3 + 5*x)").unwrap();
    let b = parse_poly("(x^3*y - 2*x + y^2 + 1)*(x*y + 3)^2*(y^2 + x - 7)").unwrap();
    c.bench_function("gcd/bivariate", |bench| bench.iter(|| gcd(black_box(&a), black_box(&b))));
    c.bench_function("squarefree/bivariate", |bench| bench.iter(|| squarefree_split(black_box(&a))));
}

fn monodromy(c: &mut Criterion) {
    let conic = parse_form("y*dx^2 - x*dx*dy + dy^2").unwrap();
    c.bench_function("monodromy/dual-conic", |b| b.iter(|| web_monodromy(black_box(&conic), 1).unwrap()));
    let cubic = parse_form("dx^3 - x*dy^3 + y*dx*dy^2").unwrap();
    c.bench_function("monodromy/cubic", |b| b.iter(|| web_monodromy(black_box(&cubic), 1).unwrap()));
}

criterion_group!(benches, discriminants, pullbacks, gcds, monodromy);
criterion_main!(benches);
