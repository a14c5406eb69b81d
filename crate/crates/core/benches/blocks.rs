use criterion::{criterion_group, criterion_main, Criterion};

use hopfcyc::cohomology::{self, Bicomplex, Kind};
use hopfcyc::faa::FContext;
use hopfcyc::hopf::Hn;
use hopfcyc::par;

fn hc_blocks(c: &mut Criterion) {
    let w_max = 6;
    let mut group = c.benchmark_group("hc_h1_w6");
    group.sample_size(10);
    let threads = par::available_threads();
    for (label, t) in [("sequential", 1), ("parallel", threads)] {
        group.bench_function(label, |b| {
            b.iter(|| {
                par::with_threads(t, || {
                    // fresh context per run so memo tables do not carry over
                    let f = FContext::new(Hn::new(1), cohomology::required_order(w_max)).unwrap();
                    let bc = Bicomplex::new(f, Kind::Absolute);
                    cohomology::cyclic_cohomology(&bc, &[0, 1, 2], w_max).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, hc_blocks);
criterion_main!(benches);
