use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::Context;
use badlocus::cocycle_lab::{block_cohomology, RepAssignment};
use badlocus::group_engine::{centralizer, closure};
use badlocus::modp_module::{hyperplanes, pair_degeneracy, PairType, SymplecticSpace};
use badlocus::proj_matrix::{mat_d_xi, mat_mc};
use badlocus::pseudo_components::{
    abelian_irreducible_oracle, components_through_abelian, count_abelian_irreducible, count_pseudo_components,
    expected_euler_profile, free_rep_from_layer, hyperplanes_through_kernels, intersection_count,
    intersection_euler_profile, intersection_oracle, invariant_subgroups, random_sl2_rational, sl2_lift,
    vogt_coordinates, TorsionDiag,
};
use badlocus::singularity_probe::{
    psl2z_report, sample_bad_reps, sample_good_rep, singular_verdict, GroupFamily, Verdict,
};
use badlocus::{is_prime, Error};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "badlocus", about = "Checks on bad representations into PSL(p, C)")]
struct Cli {
    /// Write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Evaluate independent parameter points in parallel.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Centralizers of K x| <M_c> for every M_c-invariant K in Dbar[level].
    VerifyCentralizers {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        level: u64,
        /// Closure and enumeration cap (defaults to BADLOCUS_CAP or 100000).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Component counts for the free group of rank R.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        rank: usize,
    },
    /// Euler profiles of intersections of two components, surface of genus G.
    Intersections {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        genus: usize,
    },
    /// Adjoint cohomology of a bad representation, block by block.
    Cohomology {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        p: usize,
    },
    /// Singular or smooth verdicts for bad and good representations.
    Singularity {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        p: usize,
    },
    /// The PSL(2, C) character variety of F_2 as the cone T^2 = XYZ.
    ExamplePsl2,
    /// Bad representations of the modular group.
    Psl2z {
        #[arg(long)]
        p: usize,
    },
}

#[derive(Clone, Copy, Debug)]
enum GroupSpec {
    Free(usize),
    Surface(usize),
    Psl2z,
}

impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid group '{s}': expected free:L, surface:G or psl2z");
        match s.split_once(':') {
            None if s == "psl2z" => Ok(GroupSpec::Psl2z),
            Some(("free", n)) => n.parse().ok().filter(|&r| r >= 2).map(GroupSpec::Free).ok_or_else(bad),
            Some(("surface", n)) => n.parse().ok().filter(|&g| g >= 2).map(GroupSpec::Surface).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl GroupSpec {
    fn family(self) -> GroupFamily {
        match self {
            GroupSpec::Free(r) => GroupFamily::Free(r),
            GroupSpec::Surface(g) => GroupFamily::Surface(g),
            GroupSpec::Psl2z => GroupFamily::ModularPsl2z,
        }
    }

    fn label(self) -> String {
        match self {
            GroupSpec::Free(r) => format!("free:{r}"),
            GroupSpec::Surface(g) => format!("surface:{g}"),
            GroupSpec::Psl2z => "psl2z".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Check {
    id: String,
    expected: Value,
    computed: Value,
    pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Report {
    command: String,
    parameters: BTreeMap<String, Value>,
    checks: Vec<Check>,
    runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Self { command: command.into(), parameters: BTreeMap::new(), checks: vec![], runtime_ms: 0, error: None }
    }

    fn param(&mut self, k: &str, v: impl Serialize) {
        self.parameters.insert(k.into(), json!(v));
    }

    fn check(&mut self, id: impl Into<String>, expected: impl Serialize, computed: impl Serialize) {
        let (expected, computed) = (json!(expected), json!(computed));
        let pass = expected == computed;
        self.checks.push(Check { id: id.into(), expected, computed, pass });
    }
}

/// Usage problems found after parsing (exit code 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn need_prime(p: usize) -> anyhow::Result<()> {
    if !is_prime(p) {
        return Err(usage(format!("p = {p} is not prime")));
    }
    Ok(())
}

fn verify_centralizers(r: &mut Report, p: usize, level: u64, cap: usize, parallel: bool) -> anyhow::Result<()> {
    need_prime(p)?;
    if level == 0 {
        return Err(usage("level must be positive"));
    }
    r.param("p", p);
    r.param("level", level);
    r.param("cap", cap);
    let subs = invariant_subgroups(p, level, cap)?;
    let d = mat_d_xi(p)?;
    let full = closure(&[d.clone(), mat_mc(p)?], cap)?;
    let cyc = closure(&[d], cap)?;
    let run = |k: &badlocus::pseudo_components::DiagSubgroup| -> anyhow::Result<(String, usize, usize, bool)> {
        let z = centralizer(&k.semidirect_generators())?;
        let (want, same) = if k.is_d_xi_group() { (p * p, z.same_elements(&full)) } else { (p, z.same_elements(&cyc)) };
        Ok((format!("centralizer-order/K{}", k.order()), want, z.order(), same))
    };
    let results: Vec<_> = if parallel {
        subs.par_iter().map(run).collect::<anyhow::Result<_>>()?
    } else {
        subs.iter().map(run).collect::<anyhow::Result<_>>()?
    };
    for (i, (id, want, got, same)) in results.into_iter().enumerate() {
        r.check(format!("{id}#{i}"), want, got);
        r.check(format!("centralizer-elements#{i}"), true, same);
    }
    Ok(())
}

fn count(r: &mut Report, p: u64, rank: usize) -> anyhow::Result<()> {
    need_prime(p as usize)?;
    if rank < 2 {
        return Err(usage("rank must be at least 2"));
    }
    r.param("p", p);
    r.param("rank", rank);
    let hs = hyperplanes(rank, p);
    r.check("components", count_pseudo_components(p, rank as u32), hs.len());
    // the oracles enumerate all maps F_p^rank -> F_p^2
    let small = (p as f64).powi(2 * rank as i32) <= 2e6;
    if small {
        r.check("abelian", count_abelian_irreducible(p, rank as u32), abelian_irreducible_oracle(p, rank)?);
        r.check("intersection", intersection_count(p), intersection_oracle(&hs[0], &hs[1])?);
        let through = hyperplanes_through_kernels(p, rank)?;
        let want = components_through_abelian(p) as usize;
        r.check("through", want, if through.iter().all(|&n| n == want) { want } else { through[0] });
    }
    r.param("oracle", small);
    Ok(())
}

fn intersections(r: &mut Report, p: u64, genus: usize, parallel: bool) -> anyhow::Result<()> {
    need_prime(p as usize)?;
    if genus == 0 {
        return Err(usage("genus must be positive"));
    }
    r.param("p", p);
    r.param("genus", genus);
    let v = SymplecticSpace::standard(genus, p);
    let hs = hyperplanes(2 * genus, p);
    let mut found: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    'outer: for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let t = pair_degeneracy(&hs[i], &hs[j], &v)?;
            found.entry(format!("{t:?}")).or_insert((i, j));
            if found.len() == 2 {
                break 'outer;
            }
        }
    }
    let run = |(name, (i, j)): (&String, &(usize, usize))| -> anyhow::Result<(String, Value, Value)> {
        let t = if name == "Degenerate" { PairType::Degenerate } else { PairType::NonDegenerate };
        let got = intersection_euler_profile(&hs[*i], &hs[*j], &v)?;
        Ok((name.clone(), json!(expected_euler_profile(p, t)), json!(got)))
    };
    let rows: Vec<_> = if parallel {
        found.par_iter().map(run).collect::<anyhow::Result<_>>()?
    } else {
        found.iter().map(run).collect::<anyhow::Result<_>>()?
    };
    for (name, want, got) in rows {
        r.check(format!("euler-profile/{}", name.to_lowercase()), want, got);
    }
    r.check("pair-types-found", 2, found.len());
    Ok(())
}

fn cohomology(r: &mut Report, group: GroupSpec, p: usize) -> anyhow::Result<()> {
    need_prime(p)?;
    r.param("group", group.label());
    r.param("p", p);
    let (rep, per_block) = match group {
        GroupSpec::Free(l) => (first_bad(group, p)?, (l - 1) * p),
        GroupSpec::Surface(g) => (first_bad(group, p)?, (2 * g - 2) * p),
        GroupSpec::Psl2z => {
            let report = psl2z_report(p)?;
            if report.bad_classes == 0 {
                r.check("bad-classes", 0, 0);
                return Ok(());
            }
            r.check("block-dims", vec![1; p - 1], report.block_dims[1..].to_vec());
            return Ok(());
        }
    };
    let (_, nf) = badlocus::group_engine::conjugate_to_normal_form(&rep.images)?;
    let dims: Vec<usize> = block_cohomology(&rep.presentation, &nf)?.iter().map(|c| c.dim_h1).collect();
    for (k, &d) in dims.iter().enumerate().skip(1) {
        r.check(format!("h1-block-d{k}"), per_block, d);
    }
    let total = per_block / p * (p * p - 1);
    r.check("h1-total", total, dims.iter().sum::<usize>());
    Ok(())
}

fn first_bad(group: GroupSpec, p: usize) -> anyhow::Result<RepAssignment> {
    sample_bad_reps(group.family(), p, 1, 1)?.into_iter().next().context("no bad representation found")
}

fn singularity(r: &mut Report, group: GroupSpec, p: usize, parallel: bool) -> anyhow::Result<()> {
    need_prime(p)?;
    r.param("group", group.label());
    r.param("p", p);
    if let GroupSpec::Psl2z = group {
        return psl2z(r, p);
    }
    let fam = group.family();
    let bad = sample_bad_reps(fam, p, 3, 7)?;
    let verdicts: Vec<Verdict> = if parallel {
        bad.par_iter().map(|rep| Ok(singular_verdict(fam, rep)?.verdict)).collect::<anyhow::Result<_>>()?
    } else {
        bad.iter().map(|rep| Ok(singular_verdict(fam, rep)?.verdict)).collect::<anyhow::Result<_>>()?
    };
    for (i, v) in verdicts.iter().enumerate() {
        r.check(format!("bad-is-singular#{i}"), Verdict::AlgebraicSingularity, v);
    }
    let good = singular_verdict(fam, &sample_good_rep(fam, p)?)?;
    r.check("good-is-smooth", Verdict::Smooth, good.verdict);
    Ok(())
}

fn example_psl2(r: &mut Report) -> anyhow::Result<()> {
    r.check("components", 3, hyperplanes(2, 2).len());
    r.check("abelian", 1, abelian_irreducible_oracle(2, 2)?);
    r.check("intersection", 1, intersection_oracle(&hyperplanes(2, 2)[0], &hyperplanes(2, 2)[1])?);
    r.check("through", 3, hyperplanes_through_kernels(2, 2)?[0]);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(14);
    let on_cone = (0..100).all(|_| {
        let (a, b) = (random_sl2_rational(&mut rng), random_sl2_rational(&mut rng));
        vogt_coordinates(&a, &b).map(|c| c.on_cone()).unwrap_or(false)
    });
    r.check("random-pairs-on-cone", true, on_cone);
    for (layer, axis) in [([1usize, 0], "Y"), ([0, 1], "X"), ([1, 1], "Z")] {
        let parts = [TorsionDiag::identity(2, 4), TorsionDiag::new(2, 4, &[0, 1])?];
        let parts = if layer == [0, 1] { [parts[1].clone(), parts[0].clone()] } else { parts };
        let rep = free_rep_from_layer(2, &layer, &parts)?;
        let c = vogt_coordinates(&sl2_lift(&rep.images[0])?, &sl2_lift(&rep.images[1])?)?;
        let got = c.coordinate_axis().map(|i| ["X", "Y", "Z"][i]);
        r.check(format!("bad-component-axis/{}{}", layer[0], layer[1]), Some(axis), got);
    }
    let c = vogt_coordinates(&sl2_lift(&mat_d_xi(2)?)?, &sl2_lift(&mat_mc(2)?)?)?;
    r.check("abelian-at-origin", [true; 4], c.zero_pattern());
    Ok(())
}

fn psl2z(r: &mut Report, p: usize) -> anyhow::Result<()> {
    need_prime(p)?;
    r.param("p", p);
    let rep = psl2z_report(p)?;
    let expected_classes = usize::from(p <= 3);
    r.check("index-p-quotients", expected_classes, rep.index_p_subgroups);
    r.check("singular-locus-size", expected_classes, rep.bad_classes);
    if let Some(first) = rep.reports.first() {
        let want = if p == 3 { Verdict::AlgebraicSingularity } else { Verdict::Smooth };
        r.check("verdict", want, first.verdict);
        r.check("block-dims", vec![1; p - 1], rep.block_dims[1..].to_vec());
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut r = match &cli.command {
        Command::VerifyCentralizers { .. } => Report::new("verify-centralizers"),
        Command::Count { .. } => Report::new("count"),
        Command::Intersections { .. } => Report::new("intersections"),
        Command::Cohomology { .. } => Report::new("cohomology"),
        Command::Singularity { .. } => Report::new("singularity"),
        Command::ExamplePsl2 => Report::new("example-psl2"),
        Command::Psl2z { .. } => Report::new("psl2z"),
    };
    let outcome = match &cli.command {
        Command::VerifyCentralizers { p, level, cap } => {
            verify_centralizers(&mut r, *p, *level, cap.unwrap_or_else(badlocus::closure_cap), cli.parallel)
        }
        Command::Count { p, rank } => count(&mut r, *p, *rank),
        Command::Intersections { p, genus } => intersections(&mut r, *p, *genus, cli.parallel),
        Command::Cohomology { group, p } => cohomology(&mut r, *group, *p),
        Command::Singularity { group, p } => singularity(&mut r, *group, *p, cli.parallel),
        Command::ExamplePsl2 => example_psl2(&mut r),
        Command::Psl2z { p } => psl2z(&mut r, *p),
    };
    match outcome {
        Err(e) if e.is::<Usage>() => return Err(e),
        Err(e) => match e.downcast_ref::<Error>() {
            Some(Error::TooLarge(cap)) => r.error = Some(format!("too large: enumeration cap {cap} exceeded")),
            _ => return Err(e),
        },
        Ok(()) => {}
    }
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

fn print_human(r: &Report) {
    let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("{} {}", r.command, params.join(" "));
    for c in &r.checks {
        println!(
            "  {} {}: expected {}, computed {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.id,
            c.expected,
            c.computed
        );
    }
    if let Some(e) = &r.error {
        println!("  {e}");
    }
    let passed = r.checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} checks passed in {} ms", r.checks.len(), r.runtime_ms);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(if e.is::<Usage>() { 2 } else { 1 });
        }
    };
    print_human(&report);
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if report.error.is_some() {
        return ExitCode::from(3);
    }
    if report.checks.iter().all(|c| c.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
