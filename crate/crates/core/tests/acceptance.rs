use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use badlocus::cocycle_lab::{block_cohomology, cocycle_dims, cyclic_h1_by_norm_trace, torsion_h1, Presentation};
use badlocus::cyclo_field::same_value;
use badlocus::group_engine::{centralizer, closure, conjugators_between, is_irreducible};
use badlocus::modp_module::{hyperplanes, pair_degeneracy, sp_orbits_on_hyperplane_pairs, SymplecticSpace};
use badlocus::proj_matrix::{mat_d_xi, mat_mc, mat_s, vandermonde};
use badlocus::pseudo_components::{
    abelian_irreducible_oracle, components_through_abelian, count_abelian_irreducible, count_pseudo_components,
    expected_euler_profile, free_rep_from_layer, hyperplanes_through_kernels, intersection_count,
    intersection_euler_profile, intersection_euler_profile_by_matrices, intersection_oracle, invariant_subgroups,
    random_sl2_rational, sl2_lift, vogt_coordinates, TorsionDiag,
};
use badlocus::singularity_probe::{
    abelian_irreducible_rep, fixed_codim, invariant_min_generators, invariant_min_generators_by_monomials,
    psl2z_report, sample_bad_reps, sample_good_rep, singular_verdict, GroupFamily, Verdict, WeightProfile,
};
use badlocus::{closure_cap, CycMat, CycNum, ProjMat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// (name, time limit in seconds, check)
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn commutator_identities() -> Outcome {
    for p in [2usize, 3, 5, 7] {
        let d = CycMat::diagonal(&(0..p).map(|i| CycNum::zeta(p, i as i64)).collect::<Vec<_>>());
        let m = CycMat::from_fn(p, p, p, |i, j| CycNum::from_integer(p, ((j + 1) % p == i) as i64));
        for k in 0..p as i64 {
            let mk = m.pow(k).map_err(err)?;
            let c = d.mul(&mk).and_then(|x| x.mul(&d.inverse()?)).and_then(|x| x.mul(&mk.inverse()?)).map_err(err)?;
            let s = c.as_scalar().ok_or(format!("p={p} k={k}: not scalar"))?;
            ensure!(same_value(&s, &CycNum::zeta(p, k)), "p={p} k={k}: got {s:?}");
        }
    }
    Ok("p in {2,3,5,7}, all k".into())
}

fn centralizer_sweep() -> Outcome {
    let mut checked = 0;
    for p in [2usize, 3, 5] {
        let d = mat_d_xi(p).map_err(err)?;
        let dm = closure(&[d.clone(), mat_mc(p).map_err(err)?], 1000).map_err(err)?;
        let dd = closure(std::slice::from_ref(&d), 1000).map_err(err)?;
        for m in [p as u64, 2 * p as u64] {
            for k in invariant_subgroups(p, m, closure_cap()).map_err(err)? {
                let z = centralizer(&k.semidirect_generators()).map_err(err)?;
                if k.is_d_xi_group() {
                    ensure!(z.order() == p * p && z.same_elements(&dm), "p={p} m={m}: <D> gave order {}", z.order());
                } else {
                    ensure!(
                        z.order() == p && z.same_elements(&dd),
                        "p={p} m={m} K of order {}: {}",
                        k.order(),
                        z.order()
                    );
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} invariant subgroups"))
}

fn normalizer_action() -> Outcome {
    for p in [3usize, 5, 7] {
        let (d, mc) = (mat_d_xi(p).map_err(err)?, mat_mc(p).map_err(err)?);
        let (v, s) = (vandermonde(p).map_err(err)?, mat_s(p).map_err(err)?);
        ensure!(d.conj(&v).same_class(&mc.inv()), "p={p}: V D V^-1");
        ensure!(mc.conj(&v).same_class(&d), "p={p}: V M V^-1");
        ensure!(mc.conj(&s).same_class(&d.mul(&mc)), "p={p}: S M S^-1");
        ensure!(d.conj(&s).same_class(&d), "p={p}: S D S^-1");
        // exponent action (a, b) -> D^a M^b, as integer matrices mod p
        let pm = p as i64;
        let mv = [[0i64, 1], [-1, 0]];
        let ms = [[1i64, 1], [0, 1]];
        let elem = |a: i64, b: i64| d.pow(a).mul(&mc.pow(b));
        for a in 0..pm {
            for b in 0..pm {
                let x = elem(a, b);
                for (g, mat) in [(&v, mv), (&s, ms)] {
                    let (a2, b2) = (mat[0][0] * a + mat[0][1] * b, mat[1][0] * a + mat[1][1] * b);
                    ensure!(x.conj(g).same_class(&elem(a2.rem_euclid(pm), b2.rem_euclid(pm))), "p={p} ({a},{b})");
                }
            }
        }
        let mut seen: HashSet<[i64; 4]> = HashSet::new();
        let mut stack = vec![[1i64, 0, 0, 1]];
        seen.insert(stack[0]);
        while let Some(x) = stack.pop() {
            for g in [mv, ms] {
                let y = [
                    (g[0][0] * x[0] + g[0][1] * x[2]).rem_euclid(pm),
                    (g[0][0] * x[1] + g[0][1] * x[3]).rem_euclid(pm),
                    (g[1][0] * x[0] + g[1][1] * x[2]).rem_euclid(pm),
                    (g[1][0] * x[1] + g[1][1] * x[3]).rem_euclid(pm),
                ];
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        ensure!(seen.len() == p * (p * p - 1), "p={p}: generated {} elements", seen.len());
    }
    Ok("p in {3,5,7}; generated group = SL(2, F_p)".into())
}

fn component_counts() -> Outcome {
    let mut summary = String::new();
    for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let hs = hyperplanes(r, p);
        let comps = count_pseudo_components(p, r as u32);
        ensure!(hs.len() as u64 == comps, "({p},{r}) components {} vs {comps}", hs.len());
        let ab = count_abelian_irreducible(p, r as u32);
        let oracle = abelian_irreducible_oracle(p, r).map_err(err)?;
        ensure!(ab == oracle, "({p},{r}) abelian {ab} vs oracle {oracle}");
        let through = hyperplanes_through_kernels(p, r).map_err(err)?;
        ensure!(through.iter().all(|&n| n as u64 == components_through_abelian(p)), "({p},{r}) through {through:?}");
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i + 1..] {
                let n = intersection_oracle(a, b).map_err(err)?;
                ensure!(n == intersection_count(p), "({p},{r}) intersection {n}");
            }
        }
        if (p, r) == (2, 2) {
            let got = (comps, ab, intersection_count(p), components_through_abelian(p));
            ensure!(got == (3, 1, 1, 3), "(2,2) gave {got:?}");
            summary = format!("(2,2) -> {}/{}/{}/{}", got.0, got.1, got.2, got.3);
        }
    }
    Ok(summary)
}

fn sp_orbits() -> Outcome {
    for (g, p) in [(2usize, 2u64), (2, 3)] {
        let r = sp_orbits_on_hyperplane_pairs(g, p).map_err(err)?;
        ensure!(r.orbit_count == 2, "(g,p)=({g},{p}): {} orbits", r.orbit_count);
        let types: HashSet<_> = r.orbit_types.iter().map(|t| t.ok_or("mixed orbit")).collect::<Result<_, _>>()?;
        ensure!(types.len() == 2, "(g,p)=({g},{p}): orbit types {:?}", r.orbit_types);
    }
    Ok("2 orbits, one per degeneracy type".into())
}

fn euler_table() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    let mut pairs_checked = 0;
    for p in [2u64, 3, 5] {
        for g in [2usize, 3] {
            let v = SymplecticSpace::standard(g, p);
            let hs = hyperplanes(2 * g, p);
            let mut seen_types = HashSet::new();
            let mut tries = 0;
            while tries < 60 || seen_types.len() < 2 {
                tries += 1;
                ensure!(tries < 10_000, "p={p} g={g}: only found {seen_types:?}");
                let (i, j) = (rng.gen_range(0..hs.len()), rng.gen_range(0..hs.len()));
                if i == j {
                    continue;
                }
                let t = pair_degeneracy(&hs[i], &hs[j], &v).map_err(err)?;
                seen_types.insert(t);
                let prof = intersection_euler_profile(&hs[i], &hs[j], &v).map_err(err)?;
                ensure!(prof == expected_euler_profile(p, t), "p={p} g={g} {t:?}: {prof:?}");
                ensure!(prof.values().sum::<u64>() == p - 1, "p={p} g={g}: total");
                if p <= 3 && tries % 10 == 0 {
                    let by_mat = intersection_euler_profile_by_matrices(&hs[i], &hs[j], &v).map_err(err)?;
                    ensure!(by_mat == prof, "p={p} g={g}: matrix spot-check {by_mat:?}");
                }
                pairs_checked += 1;
            }
        }
    }
    Ok(format!("{pairs_checked} hyperplane pairs"))
}

fn adjoint_cohomology() -> Outcome {
    for p in [2usize, 3] {
        for r in [2usize, 3] {
            let rep = &sample_bad_reps(GroupFamily::Free(r), p, 1, 17).map_err(err)?[0];
            let dims: Vec<usize> =
                block_cohomology(&rep.presentation, &rep.images).map_err(err)?.iter().map(|c| c.dim_h1).collect();
            ensure!(dims[1..].iter().all(|&d| d == (r - 1) * p), "F_{r} p={p}: {dims:?}");
            ensure!(dims.iter().sum::<usize>() == (r - 1) * (p * p - 1), "F_{r} p={p}: total {dims:?}");
        }
        let g = 2;
        let rep = &sample_bad_reps(GroupFamily::Surface(g), p, 1, 17).map_err(err)?[0];
        let dims: Vec<usize> =
            block_cohomology(&rep.presentation, &rep.images).map_err(err)?.iter().map(|c| c.dim_h1).collect();
        ensure!(dims[1..].iter().all(|&d| d == (2 * g - 2) * p), "surface p={p}: {dims:?}");
        ensure!(dims.iter().sum::<usize>() == (2 * g - 2) * (p * p - 1), "surface p={p}: total {dims:?}");
    }
    Ok("free r in {2,3}, surface g = 2, p in {2,3}".into())
}

fn torsion_cohomology() -> Outcome {
    for (p, m) in [(2usize, 2u64), (2, 4), (3, 3)] {
        for l in [2usize, 3] {
            let mut shifts = vec![0; l];
            shifts[0] = 1;
            let h = torsion_h1(&Presentation::free(l), &shifts, p, m).map_err(err)?;
            let want = vec![m; (p - 1) * (l - 1)];
            ensure!(h.torus_invariants == want, "F_{l} (p,m)=({p},{m}): {:?}", h.torus_invariants);
            let g = l;
            let mut shifts = vec![0; 2 * g];
            shifts[0] = 1;
            let h = torsion_h1(&Presentation::surface(g), &shifts, p, m).map_err(err)?;
            let mut want = vec![p as u64];
            want.extend(vec![m; 2 * (g - 1) * (p - 1)]);
            ensure!(h.torus_invariants == want, "surface {g} (p,m)=({p},{m}): {:?}", h.torus_invariants);
        }
        let h = torsion_h1(&Presentation::cyclic(p), &[1], p, m).map_err(err)?;
        let oracle = cyclic_h1_by_norm_trace(p, m, true).map_err(err)?;
        ensure!(h.invariants == oracle, "<t|t^{p}> m={m}: {:?} vs {oracle:?}", h.invariants);
    }
    Ok("free and surface invariant factors; norm/trace oracle".into())
}

fn modular_group() -> Outcome {
    for p in [5usize, 7] {
        let r = psl2z_report(p).map_err(err)?;
        ensure!(r.index_p_subgroups == 0 && r.bad_classes == 0, "p={p}: {r:?}");
    }
    for (p, verdict) in [(3usize, Verdict::AlgebraicSingularity), (2, Verdict::Smooth)] {
        let r = psl2z_report(p).map_err(err)?;
        ensure!(r.bad_classes == 1, "p={p}: {} classes", r.bad_classes);
        ensure!(r.reports[0].verdict == verdict, "p={p}: {:?}", r.reports[0].verdict);
        ensure!(r.block_dims[1..].iter().all(|&d| d == 1), "p={p}: blocks {:?}", r.block_dims);
    }
    Ok("p=2 smooth point, p=3 singular point, p=5,7 empty".into())
}

fn singular_verdicts() -> Outcome {
    let mut n = 0;
    for fam in [GroupFamily::Free(2), GroupFamily::Free(3), GroupFamily::Surface(2)] {
        for p in [2usize, 3] {
            let bad = sample_bad_reps(fam, p, 3, 23).map_err(err)?;
            ensure!(!bad.is_empty(), "{fam:?} p={p}: no samples");
            for rep in &bad {
                let r = singular_verdict(fam, rep).map_err(err)?;
                ensure!(r.verdict == Verdict::AlgebraicSingularity, "{fam:?} p={p}: bad rep gave {:?}", r.verdict);
                n += 1;
            }
            let good = singular_verdict(fam, &sample_good_rep(fam, p).map_err(err)?).map_err(err)?;
            ensure!(good.centralizer_order == 1 && good.verdict == Verdict::Smooth, "{fam:?} p={p}: good rep");
        }
    }
    let rep = abelian_irreducible_rep(Presentation::z3xz3(), 3).map_err(err)?;
    let adj = badlocus::cocycle_lab::full_adjoint(&rep.images).map_err(err)?;
    ensure!(cocycle_dims(&rep.presentation, &adj, "sl3").map_err(err)?.dim_h1 == 0, "Z/3 x Z/3: H^1 != 0");
    let r = singular_verdict(GroupFamily::Presented, &rep).map_err(err)?;
    ensure!(r.verdict == Verdict::Smooth && r.h1_dim == 0, "Z/3 x Z/3: {r:?}");
    Ok(format!("{n} bad classes singular, good classes smooth, Z/3 x Z/3 smooth"))
}

fn trace_cone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let (a, b) = (random_sl2_rational(&mut rng), random_sl2_rational(&mut rng));
        ensure!(a.det().map_err(err)?.is_one() && b.det().map_err(err)?.is_one(), "pair {i}: det");
        ensure!(vogt_coordinates(&a, &b).map_err(err)?.on_cone(), "pair {i}: off the cone");
    }
    let mut hit = BTreeMap::new();
    for (layer, axis) in [([1usize, 0], 1usize), ([0, 1], 0), ([1, 1], 2)] {
        for _ in 0..10 {
            let parts: Vec<TorsionDiag> =
                (0..2).map(|_| TorsionDiag::new(2, 4, &[0, rng.gen_range(0..4)]).unwrap()).collect();
            let rep = free_rep_from_layer(2, &layer, &parts).map_err(err)?;
            if !is_irreducible(&rep.images) {
                continue;
            }
            let (a, b) = (sl2_lift(&rep.images[0]).map_err(err)?, sl2_lift(&rep.images[1]).map_err(err)?);
            let c = vogt_coordinates(&a, &b).map_err(err)?;
            let z = c.zero_pattern();
            ensure!(z[3] && (0..3).filter(|&i| i != axis).all(|i| z[i]), "layer {layer:?}: {z:?}");
            if !z[axis] {
                *hit.entry(axis).or_insert(0) += 1;
            }
        }
    }
    ensure!(hit.len() == 3, "axes reached: {hit:?}");
    let ab = [sl2_lift(&mat_d_xi(2).map_err(err)?).map_err(err)?, sl2_lift(&mat_mc(2).map_err(err)?).map_err(err)?];
    ensure!(vogt_coordinates(&ab[0], &ab[1]).map_err(err)?.zero_pattern() == [true; 4], "abelian pair not at origin");
    Ok("100 random pairs on T^2 = XYZ; three axes; origin".into())
}

fn fiber_conjugators() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut pairs, mut found) = (0, 0);
    while pairs < 50 {
        let p = if pairs % 2 == 0 { 2 } else { 3 };
        let m = 2 * p as u64;
        let layer: Vec<usize> = loop {
            let l: Vec<usize> = (0..2).map(|_| rng.gen_range(0..p)).collect();
            if l.iter().any(|&x| x != 0) {
                break l;
            }
        };
        let parts = |rng: &mut ChaCha8Rng| -> Vec<TorsionDiag> {
            (0..2)
                .map(|_| {
                    TorsionDiag::new(p, m, &(0..p).map(|_| rng.gen_range(0..m as i64)).collect::<Vec<_>>()).unwrap()
                })
                .collect()
        };
        let a = free_rep_from_layer(p, &layer, &parts(&mut rng)).map_err(err)?;
        let b_images: Vec<ProjMat> = if rng.gen_bool(0.5) {
            // a conjugate inside the same fiber
            let t = parts(&mut rng)[0].to_projmat().mul(&mat_mc(p).map_err(err)?.pow(rng.gen_range(0..p as i64)));
            a.images.iter().map(|x| x.conj(&t)).collect()
        } else {
            free_rep_from_layer(p, &layer, &parts(&mut rng)).map_err(err)?.images
        };
        if !is_irreducible(&a.images) || !is_irreducible(&b_images) {
            continue;
        }
        pairs += 1;
        for g in conjugators_between(&a.images, &b_images).map_err(err)? {
            ensure!(g.is_monomial_cyclic(), "p={p}: conjugator {g:?} is not monomial");
            found += 1;
        }
    }
    ensure!(found > 0, "no conjugators found at all");
    Ok(format!("{pairs} pairs, {found} conjugators, all monomial"))
}

/// All multiplicity vectors of length `len` with total at most `max`.
fn bounded_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for head in 0..=max {
        for mut rest in bounded_vectors(len - 1, max - head) {
            rest.insert(0, head);
            out.push(rest);
        }
    }
    out
}

fn quotient_criterion() -> Outcome {
    let mut profiles = 0;
    for p in [2usize, 3, 5] {
        for m in bounded_vectors(p, 8) {
            let w = WeightProfile::cyclic(p, m.clone()).map_err(err)?;
            let gens = invariant_min_generators_by_monomials(&w, 8).map_err(err)?.len() as u64;
            ensure!(gens == invariant_min_generators(&w).map_err(err)?, "p={p} {m:?}: counts differ");
            ensure!((fixed_codim(&w) > 1) == (gens > w.total() as u64), "p={p} {m:?}: criteria disagree");
            profiles += 1;
        }
    }
    Ok(format!("{profiles} weight profiles"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("commutator identities", 1, commutator_identities),
        ("centralizers of invariant subgroups", 60, centralizer_sweep),
        ("normalizer action", 5, normalizer_action),
        ("component counts vs oracles", 120, component_counts),
        ("Sp-orbits on hyperplane pairs", 120, sp_orbits),
        ("Euler profiles of intersections", 30, euler_table),
        ("adjoint cohomology dimensions", 60, adjoint_cohomology),
        ("torsion cohomology", 30, torsion_cohomology),
        ("modular group", 10, modular_group),
        ("bad iff singular", 60, singular_verdicts),
        ("trace coordinates", 5, trace_cone),
        ("same-fiber conjugators", 60, fiber_conjugators),
        ("quotient singularity criteria", 120, quotient_criterion),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(d) if t > Duration::from_secs(*limit) => Err(format!("{d}; took {t:.2?}, limit {limit}s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
