use badlocus::cocycle_lab::{torsion_h1, Presentation};
use badlocus::group_engine::{centralizer, conjugate_to_normal_form};
use badlocus::modp_module::{snf, sp_orbits_on_hyperplane_pairs};
use badlocus::proj_matrix::{mat_d_xi, mat_mc, vandermonde};
use badlocus::pseudo_components::invariant_subgroups;
use badlocus::singularity_probe::{
    invariant_min_generators, psl2z_report, sample_bad_reps, singular_verdict, GroupFamily, WeightProfile,
};
use badlocus::{CycNum, ProjMat};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;

fn cyclotomic(c: &mut Criterion) {
    let a = CycNum::zeta(15, 1) + CycNum::from_integer(15, 3);
    let b = CycNum::zeta(15, 7) + CycNum::zeta(15, 2);
    c.bench_function("cyc_mul_q15", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyc_invert_q15", |bch| bch.iter(|| black_box(&a).invert().unwrap()));
}

fn centralizers(c: &mut Criterion) {
    let mut g = c.benchmark_group("centralizer");
    for p in [3usize, 5, 7] {
        let gens = vec![mat_d_xi(p).unwrap(), mat_mc(p).unwrap()];
        g.bench_with_input(BenchmarkId::from_parameter(p), &gens, |bch, gens| bch.iter(|| centralizer(gens).unwrap()));
    }
    g.finish();
    let v = vandermonde(5).unwrap();
    let gens: Vec<ProjMat> = [mat_d_xi(5).unwrap(), mat_mc(5).unwrap()].iter().map(|x| x.conj(&v)).collect();
    c.bench_function("normal_form_p5", |bch| bch.iter(|| conjugate_to_normal_form(&gens).unwrap()));
    c.bench_function("invariant_subgroups_p3_m6", |bch| bch.iter(|| invariant_subgroups(3, 6, 100_000).unwrap()));
}

fn integer_kernels(c: &mut Criterion) {
    let m: Vec<Vec<BigInt>> =
        (0..8).map(|i| (0..10).map(|j| BigInt::from(((i * 7 + j * 13) % 11) as i64 - 5)).collect()).collect();
    c.bench_function("snf_8x10", |bch| bch.iter(|| snf(black_box(&m))));
    c.bench_function("torsion_h1_surface2_p3", |bch| {
        bch.iter(|| torsion_h1(&Presentation::surface(2), &[1, 0, 0, 0], 3, 3).unwrap())
    });
    c.bench_function("sp_orbits_g2_p3", |bch| bch.iter(|| sp_orbits_on_hyperplane_pairs(2, 3).unwrap()));
}

fn singularity(c: &mut Criterion) {
    let w = WeightProfile::cyclic(5, vec![4, 3, 3, 3, 3]).unwrap();
    c.bench_function("min_generators_p5_n16", |bch| bch.iter(|| invariant_min_generators(&w).unwrap()));
    let rep = sample_bad_reps(GroupFamily::Surface(2), 3, 1, 1).unwrap().remove(0);
    c.bench_function("verdict_surface2_p3", |bch| {
        bch.iter(|| singular_verdict(GroupFamily::Surface(2), &rep).unwrap())
    });
    c.bench_function("psl2z_p3", |bch| bch.iter(|| psl2z_report(3).unwrap()));
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = cyclotomic, centralizers, integer_kernels, singularity
}
criterion_main!(kernels);
