//! Singularity test for quotients C^N / A by a finite abelian group A of
//! exponent p acting diagonally, applied to the adjoint cohomology of bad
//! representations. Weights come from the eigenspaces of the centralizer on
//! sl_p; multiplicities are H^1 dimensions of the eigen-submodules.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cocycle_lab::{cocycle_dims, exponent_sums, Presentation, RepAssignment};
use crate::cyclo_field::{lcm, CycNum};
use crate::error::{Error, Result};
use crate::group_engine::{centralizer, conjugators_between, is_irreducible, FinMatrixGroup};
use crate::linalg::CycMat;
use crate::modp_module::FpSubspace;
use crate::proj_matrix::{mat_mc, ProjMat};
use crate::pseudo_components::{build_free_bad_rep, build_surface_bad_rep, TorsionDiag};

/// Default bound on the number of variables for monomial-by-monomial
/// enumeration.
pub const MONOMIAL_VAR_BOUND: usize = 12;

/// Multiplicities of the characters of (Z/p)^rank on C^N. Character w is
/// stored at index w_0 + w_1 p + ...; rank 1 gives (m_0, ..., m_{p-1}).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub p: usize,
    pub rank: usize,
    pub multiplicities: Vec<usize>,
}

impl WeightProfile {
    pub fn cyclic(p: usize, multiplicities: Vec<usize>) -> Result<Self> {
        Self::new(p, 1, multiplicities)
    }

    pub fn new(p: usize, rank: usize, multiplicities: Vec<usize>) -> Result<Self> {
        if !crate::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if rank == 0 || multiplicities.len() != p.pow(rank as u32) {
            return Err(Error::DimensionMismatch(format!("need {} multiplicities", p.pow(rank as u32))));
        }
        Ok(Self { p, rank, multiplicities })
    }

    /// Builds the profile from the weight of each coordinate (rank 1).
    pub fn from_weights(p: usize, weights: &[usize]) -> Result<Self> {
        let mut m = vec![0; p];
        for &w in weights {
            m[w % p] += 1;
        }
        Self::cyclic(p, m)
    }

    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn weight(&self, index: usize) -> Vec<usize> {
        (0..self.rank).map(|t| index / self.p.pow(t as u32) % self.p).collect()
    }

    fn index(&self, w: &[usize]) -> usize {
        w.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    /// One weight per coordinate.
    pub fn weights(&self) -> Vec<Vec<usize>> {
        self.multiplicities.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(self.weight(i), m)).collect()
    }

    pub fn group_order(&self) -> usize {
        self.p.pow(self.rank as u32)
    }
}

/// Number of coordinates moved by the group; for rank 1 this is codim Fix(g)
/// for any generator g.
pub fn fixed_codim(w: &WeightProfile) -> usize {
    w.total() - w.multiplicities[0]
}

/// Minimal generators of the monoid of invariant monomials, counted through
/// minimal zero-sum weight patterns: a monomial is decomposable exactly when
/// its multiset of weights is, and a pattern with c_k factors of weight k is
/// realized by prod C(m_k + c_k - 1, c_k) monomials.
pub fn invariant_min_generators(w: &WeightProfile) -> Result<u64> {
    let present: Vec<usize> = (1..w.multiplicities.len()).filter(|&i| w.multiplicities[i] > 0).collect();
    let q = w.group_order();
    let neg = |i: usize| w.index(&w.weight(i).iter().map(|&x| (w.p - x) % w.p).collect::<Vec<_>>());
    let add = |a: usize, b: usize| {
        let (wa, wb) = (w.weight(a), w.weight(b));
        w.index(&wa.iter().zip(&wb).map(|(x, y)| x + y).collect::<Vec<_>>())
    };
    // zero-sum-free multisets S (nondecreasing in weight index), tracked with
    // the set of their nonempty subsums; S + (-sum S) is then a minimal
    // zero-sum pattern and every minimal pattern arises this way
    let cap = crate::closure_cap().max(1_000_000);
    let mut patterns: HashSet<Vec<usize>> = HashSet::new();
    let mut visited = 0usize;
    let mut stack: Vec<(Vec<usize>, usize, Vec<bool>, usize)> = vec![(vec![0; q], 0, vec![false; q], 0)];
    while let Some((counts, sum, subsums, start)) = stack.pop() {
        visited += 1;
        if visited > cap {
            return Err(Error::TooLarge(cap));
        }
        let closing = neg(sum);
        if counts.iter().any(|&c| c > 0) && w.multiplicities[closing] > 0 {
            let mut t = counts.clone();
            t[closing] += 1;
            patterns.insert(t);
        }
        for (pos, &g) in present.iter().enumerate().skip(start) {
            // adding g keeps S zero-sum-free unless -g is already a subsum
            if subsums[neg(g)] {
                continue;
            }
            let mut next = subsums.clone();
            next[g] = true;
            for (s, &hit) in subsums.iter().enumerate() {
                if hit {
                    next[add(s, g)] = true;
                }
            }
            if next[0] {
                continue;
            }
            let mut c = counts.clone();
            c[g] += 1;
            stack.push((c, add(sum, g), next, pos));
        }
    }
    let mut total = w.multiplicities[0] as u64;
    for t in &patterns {
        let degree: usize = t.iter().sum();
        debug_assert!(degree <= q);
        let mut prod = 1u64;
        for (i, &c) in t.iter().enumerate().filter(|(_, &c)| c > 0) {
            prod = prod
                .checked_mul(binomial(w.multiplicities[i] as u64 + c as u64 - 1, c as u64))
                .ok_or(Error::Overflow(i))?;
        }
        total = total.checked_add(prod).ok_or(Error::Overflow(0))?;
    }
    Ok(total)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The same count by listing every invariant monomial of degree at most the
/// group order and discarding those with a proper invariant divisor.
pub fn invariant_min_generators_by_monomials(w: &WeightProfile, var_bound: usize) -> Result<Vec<Vec<usize>>> {
    let n = w.total();
    if n > var_bound {
        return Err(Error::TooLarge(var_bound));
    }
    let weights = w.weights();
    let bound = w.group_order();
    let invariant =
        |e: &[usize]| (0..w.rank).all(|t| e.iter().zip(&weights).map(|(x, wt)| x * wt[t]).sum::<usize>() % w.p == 0);
    let mut gens = Vec::new();
    let mut e = vec![0usize; n];
    for degree in 1..=bound {
        for_each_monomial(&mut e, 0, degree, &mut |e| {
            if invariant(e) && !has_proper_invariant_divisor(e, &invariant) {
                gens.push(e.to_vec());
            }
        });
    }
    Ok(gens)
}

fn for_each_monomial(e: &mut Vec<usize>, pos: usize, left: usize, f: &mut impl FnMut(&[usize])) {
    if pos == e.len() {
        if left == 0 {
            f(e);
        }
        return;
    }
    for x in (0..=left).rev() {
        e[pos] = x;
        for_each_monomial(e, pos + 1, left - x, f);
    }
    e[pos] = 0;
}

fn has_proper_invariant_divisor(e: &[usize], invariant: &impl Fn(&[usize]) -> bool) -> bool {
    let mut f = vec![0usize; e.len()];
    loop {
        let mut i = 0;
        while i < e.len() && f[i] == e[i] {
            f[i] = 0;
            i += 1;
        }
        if i == e.len() {
            return false;
        }
        f[i] += 1;
        if f.as_slice() != e && invariant(&f) {
            return true;
        }
    }
}

/// Chevalley-Shephard-Todd side: the quotient is smooth iff the image of the
/// group is generated by pseudo-reflections. For rank 1 this is
/// fixed_codim <= 1.
fn generated_by_reflections(w: &WeightProfile) -> bool {
    let weights: Vec<Vec<usize>> =
        (0..w.multiplicities.len()).filter(|&i| w.multiplicities[i] > 0).map(|i| w.weight(i)).collect();
    let mut useful = Vec::new();
    for gi in 0..w.group_order() {
        let g = w.weight(gi);
        let moved = weights
            .iter()
            .zip((0..w.multiplicities.len()).filter(|&i| w.multiplicities[i] > 0))
            .filter(|(wt, _)| wt.iter().zip(&g).map(|(a, b)| a * b).sum::<usize>() % w.p != 0)
            .map(|(_, i)| w.multiplicities[i])
            .sum::<usize>();
        if moved <= 1 {
            useful.push(g.iter().map(|&x| x as u64).collect::<Vec<u64>>());
        }
    }
    FpSubspace::span(w.p as u64, w.rank, &useful).map(|s| s.dim() == w.rank).unwrap_or(false)
}

/// Whether the origin of C^N / A is singular. Both criteria are evaluated and
/// must agree.
pub fn is_singular_origin(w: &WeightProfile) -> Result<bool> {
    let by_group = if w.rank == 1 { fixed_codim(w) > 1 } else { !generated_by_reflections(w) };
    let by_generators = invariant_min_generators(w)? > w.total() as u64;
    if by_group != by_generators {
        return Err(Error::CriterionMismatch(format!("weight profile {:?}", w.multiplicities)));
    }
    Ok(by_group)
}

/// Matrix of Ad(a) on sl_p in the basis E_ij (i != j, row-major) followed by
/// E_ii - E_{i+1,i+1}.
pub fn adjoint_matrix(a: &ProjMat) -> Result<CycMat> {
    let p = a.dim();
    let l = a.lift();
    let order = l.order();
    let inv = l.inverse()?;
    let basis = sl_basis(p, order);
    let cols: Vec<Vec<CycNum>> = basis.iter().map(|b| Ok(sl_coords(&l.mul(b)?.mul(&inv)?))).collect::<Result<_>>()?;
    let dim = p * p - 1;
    Ok(CycMat::from_fn(dim, dim, order, |r, c| cols[c][r].clone()))
}

fn sl_basis(p: usize, order: usize) -> Vec<CycMat> {
    let mut out = Vec::new();
    for i in 0..p {
        for j in 0..p {
            if i != j {
                let mut m = CycMat::zeros(p, p, order);
                m.set(i, j, CycNum::one(order));
                out.push(m);
            }
        }
    }
    for i in 0..p - 1 {
        let mut m = CycMat::zeros(p, p, order);
        m.set(i, i, CycNum::one(order));
        m.set(i + 1, i + 1, CycNum::from_integer(order, -1));
        out.push(m);
    }
    out
}

fn sl_coords(x: &CycMat) -> Vec<CycNum> {
    let p = x.rows();
    let mut out = Vec::with_capacity(p * p - 1);
    for i in 0..p {
        for j in 0..p {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    let mut acc = CycNum::zero(x.order());
    for i in 0..p - 1 {
        acc = &acc + x.get(i, i);
        out.push(acc.clone());
    }
    out
}

/// Restriction of each map to the invariant subspace spanned by `basis`.
fn restrict(maps: &[CycMat], basis: &[Vec<CycNum>]) -> Result<Vec<CycMat>> {
    let d = basis.len();
    let n = basis[0].len();
    let order = maps.iter().fold(basis.iter().flatten().fold(1, |o, x| lcm(o, x.order())), |o, m| lcm(o, m.order()));
    let b = CycMat::from_fn(n, d, order, |r, c| basis[c][r].lift(order));
    let (_, pivots) = b.transpose().rref();
    let bp = CycMat::from_fn(d, d, order, |r, c| b.get(pivots[r], c).clone()).inverse()?;
    maps.iter()
        .map(|m| {
            let ab = m.lift(order).mul(&b)?;
            let r = bp.mul(&CycMat::from_fn(d, d, order, |i, j| ab.get(pivots[i], j).clone()))?;
            if b.mul(&r)? != ab {
                return Err(Error::CriterionMismatch("subspace is not invariant".into()));
            }
            Ok(r)
        })
        .collect()
}

/// Weight profile of H^1(Gamma, sl_p) under an abelian group of exponent p
/// commuting with the image, given by independent generators.
pub fn adjoint_weight_profile(
    pres: &Presentation,
    images: &[ProjMat],
    central_gens: &[ProjMat],
) -> Result<WeightProfile> {
    let p = images[0].dim();
    let rank = central_gens.len();
    let ads: Vec<CycMat> = images.iter().map(adjoint_matrix).collect::<Result<_>>()?;
    let cads: Vec<CycMat> = central_gens.iter().map(adjoint_matrix).collect::<Result<_>>()?;
    let dim = p * p - 1;
    let mut profile = WeightProfile::new(p, rank, vec![0; p.pow(rank as u32)])?;
    let mut seen = 0;
    for idx in 0..profile.multiplicities.len() {
        let w = profile.weight(idx);
        let order = cads.iter().fold(p, |o, m| lcm(o, m.order()));
        let stacked = CycMat::from_fn(dim * rank, dim, order, |r, c| {
            let (t, i) = (r / dim, r % dim);
            let mut v = cads[t].get(i, c).lift(order);
            if i == c {
                v = &v - &CycNum::zeta(p, w[t] as i64).lift(order);
            }
            v
        });
        let basis = stacked.kernel();
        if basis.is_empty() {
            continue;
        }
        seen += basis.len();
        let local = restrict(&ads, &basis)?;
        profile.multiplicities[idx] = cocycle_dims(pres, &local, "eigen")?.dim_h1;
    }
    if seen != dim {
        return Err(Error::CriterionMismatch("centralizer is not diagonalizable on sl_p".into()));
    }
    Ok(profile)
}

/// dim H^1(Gamma, sl_p) for the adjoint action.
pub fn adjoint_h1(pres: &Presentation, images: &[ProjMat]) -> Result<usize> {
    let ads: Vec<CycMat> = images.iter().map(adjoint_matrix).collect::<Result<_>>()?;
    Ok(cocycle_dims(pres, &ads, "sl")?.dim_h1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupFamily {
    Free(usize),
    Surface(usize),
    ModularPsl2z,
    /// Any other presentation, taken as given.
    Presented,
}

impl GroupFamily {
    pub fn presentation(&self) -> Option<Presentation> {
        match *self {
            GroupFamily::Free(r) => Some(Presentation::free(r)),
            GroupFamily::Surface(g) => Some(Presentation::surface(g)),
            GroupFamily::ModularPsl2z => Some(Presentation::psl2z()),
            GroupFamily::Presented => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AlgebraicSingularity,
    Smooth,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularityReport {
    pub family: GroupFamily,
    pub p: usize,
    pub centralizer_order: usize,
    pub h1_dim: usize,
    pub profile: Option<WeightProfile>,
    /// Embedding dimension of the quotient at the image of rho.
    pub tangent_dim: u64,
    pub verdict: Verdict,
    /// Set when the verdict comes from the (Z/p)^2 quotient of an abelian
    /// irreducible representation; `expected` then holds the verdict obtained
    /// by approximating with nonabelian bad representations.
    pub extension: bool,
    pub expected: Option<Verdict>,
}

/// Two independent generators of an elementary abelian centralizer.
fn centralizer_basis(z: &FinMatrixGroup) -> Vec<ProjMat> {
    let mut gens: Vec<ProjMat> = Vec::new();
    let mut span = vec![ProjMat::identity(z.p())];
    for e in z.elements() {
        if span.iter().any(|s| s.same_class(e)) {
            continue;
        }
        gens.push(e.clone());
        let mut next = Vec::new();
        for s in &span {
            for k in 0..z.p() as i64 {
                next.push(s.mul(&e.pow(k)));
            }
        }
        span = next;
    }
    gens
}

pub fn singular_verdict(family: GroupFamily, rep: &RepAssignment) -> Result<SingularityReport> {
    if let Some(pres) = family.presentation() {
        if pres != rep.presentation {
            return Err(Error::InvalidArgument("presentation does not match the group family".into()));
        }
    }
    let p = rep.p();
    if !is_irreducible(&rep.images) {
        return Err(Error::ReducibleInput);
    }
    let z = centralizer(&rep.images)?;
    let h1_dim = adjoint_h1(&rep.presentation, &rep.images)?;
    let n = z.order();
    if n == 1 {
        return Ok(SingularityReport {
            family,
            p,
            centralizer_order: 1,
            h1_dim,
            profile: None,
            tangent_dim: h1_dim as u64,
            verdict: Verdict::Smooth,
            extension: false,
            expected: None,
        });
    }
    if n != p && n != p * p {
        return Err(Error::UnsupportedCentralizer(n));
    }
    let gens = centralizer_basis(&z);
    if gens.len() * (if n == p { 2 } else { 1 }) != 2 {
        return Err(Error::UnsupportedCentralizer(n));
    }
    let profile = adjoint_weight_profile(&rep.presentation, &rep.images, &gens)?;
    debug_assert_eq!(profile.total(), h1_dim);
    let singular = is_singular_origin(&profile)?;
    let abelian = n == p * p;
    let expected = match (abelian, family) {
        (true, GroupFamily::Free(_) | GroupFamily::Surface(_)) => Some(Verdict::AlgebraicSingularity),
        _ => None,
    };
    Ok(SingularityReport {
        family,
        p,
        centralizer_order: n,
        h1_dim,
        tangent_dim: invariant_min_generators(&profile)?,
        profile: Some(profile),
        verdict: if singular { Verdict::AlgebraicSingularity } else { Verdict::Smooth },
        extension: expected.is_some(),
        expected,
    })
}

fn random_diag<R: Rng>(rng: &mut R, p: usize, m: u64) -> TorsionDiag {
    let e: Vec<i64> = (0..p).map(|_| rng.gen_range(0..m as i64)).collect();
    TorsionDiag::new(p, m, &e).expect("shape")
}

/// Nonabelian bad representations (centralizer of order p) from the free and
/// surface constructors, with diagonal data at level 2p.
pub fn sample_bad_reps(family: GroupFamily, p: usize, count: usize, seed: u64) -> Result<Vec<RepAssignment>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 * p as u64;
    let mut out = Vec::new();
    for _ in 0..count * 50 {
        if out.len() == count {
            break;
        }
        let rep = match family {
            GroupFamily::Free(r) => {
                let data: Vec<TorsionDiag> = (1..r).map(|_| random_diag(&mut rng, p, m)).collect();
                build_free_bad_rep(p, m, &data)?
            }
            GroupFamily::Surface(g) => {
                let data: Vec<_> = (1..g).map(|_| (random_diag(&mut rng, p, m), random_diag(&mut rng, p, m))).collect();
                build_surface_bad_rep(p, m, rng.gen_range(0..p), &data)?
            }
            _ => return Err(Error::InvalidArgument("free or surface group expected".into())),
        };
        if is_irreducible(&rep.images) && centralizer(&rep.images)?.order() == p {
            out.push(rep);
        }
    }
    Ok(out)
}

/// Unitriangular upper and lower matrices with all ones; they generate an
/// irreducible group with trivial centralizer.
pub fn unipotent_pair(p: usize) -> (ProjMat, ProjMat) {
    let up = CycMat::from_fn(p, p, 1, |i, j| CycNum::from_integer(1, (i <= j) as i64));
    let lo = up.transpose();
    (ProjMat::new(up).expect("invertible"), ProjMat::new(lo).expect("invertible"))
}

/// A representation with trivial centralizer.
pub fn sample_good_rep(family: GroupFamily, p: usize) -> Result<RepAssignment> {
    let (a, b) = unipotent_pair(p);
    match family {
        GroupFamily::Free(r) => {
            let mut images = vec![a, b.clone()];
            images.extend(std::iter::repeat_n(b, r.saturating_sub(2)));
            images.truncate(r);
            RepAssignment::new(Presentation::free(r), images)
        }
        GroupFamily::Surface(g) if g >= 2 => {
            // [a, b][b, a] = 1
            let mut images = vec![a.clone(), b.clone(), b, a];
            images.extend((4..2 * g).map(|_| ProjMat::identity(p)));
            RepAssignment::new(Presentation::surface(g), images)
        }
        _ => Err(Error::InvalidArgument("free group or surface of genus >= 2 expected".into())),
    }
}

/// The abelian irreducible representation x_1 -> D(xi), x_2 -> M_c (other
/// generators trivial).
pub fn abelian_irreducible_rep(pres: Presentation, p: usize) -> Result<RepAssignment> {
    let mut images = vec![crate::proj_matrix::mat_d_xi(p)?, mat_mc(p)?];
    images.extend((2..pres.ngens()).map(|_| ProjMat::identity(p)));
    RepAssignment::new(pres, images)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Psl2zReport {
    pub p: usize,
    /// Number of normal subgroups of index p.
    pub index_p_subgroups: usize,
    /// Conjugacy classes of bad representations found among assignments
    /// into D[6] x| <M_c>; every bad class has a representative there.
    pub bad_classes: usize,
    pub reports: Vec<SingularityReport>,
    /// dim H^1 of the blocks d_0, ..., d_{p-1} for the bad class.
    pub block_dims: Vec<usize>,
}

/// Number of surjections onto Z/p up to automorphism, from the exponent sums
/// of the relators.
pub fn index_p_normal_subgroups(pres: &Presentation, p: usize) -> Result<usize> {
    let rows: Vec<Vec<u64>> = pres
        .relators
        .iter()
        .map(|r| exponent_sums(r, pres.ngens()).iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let homs = FpSubspace::kernel(p as u64, pres.ngens(), &rows)?;
    Ok((p.pow(homs.dim() as u32) - 1) / (p - 1))
}

/// Elements of D[m] x| <M_c> of projective order dividing k.
fn elements_of_order_dividing(p: usize, m: u64, k: i64) -> Result<Vec<ProjMat>> {
    let mc = mat_mc(p)?;
    let mut out = Vec::new();
    let count = (m as usize).pow(p as u32 - 1);
    for mut idx in 0..count {
        let mut e = vec![0i64; p];
        for slot in e.iter_mut().skip(1) {
            *slot = (idx % m as usize) as i64;
            idx /= m as usize;
        }
        let t = TorsionDiag::new(p, m, &e)?.to_projmat();
        for s in 0..p as i64 {
            let g = t.mul(&mc.pow(s));
            if g.pow(k).is_identity() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

pub fn psl2z_report(p: usize) -> Result<Psl2zReport> {
    if !crate::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pres = Presentation::psl2z();
    let index_p = index_p_normal_subgroups(&pres, p)?;
    if index_p == 0 {
        return Ok(Psl2zReport { p, index_p_subgroups: 0, bad_classes: 0, reports: vec![], block_dims: vec![] });
    }
    let a_cands = elements_of_order_dividing(p, 6, 2)?;
    let b_cands = elements_of_order_dividing(p, 6, 3)?;
    let mut classes: Vec<Vec<ProjMat>> = Vec::new();
    for a in &a_cands {
        for b in &b_cands {
            let pair = vec![a.clone(), b.clone()];
            if !is_irreducible(&pair) || centralizer(&pair)?.order() == 1 {
                continue;
            }
            let mut known = false;
            for c in &classes {
                if !conjugators_between(c, &pair)?.is_empty() {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(pair);
            }
        }
    }
    let mut reports = Vec::new();
    for c in &classes {
        reports.push(singular_verdict(GroupFamily::ModularPsl2z, &RepAssignment::new(pres.clone(), c.clone())?)?);
    }
    let block_dims = match classes.first() {
        Some(c) => {
            let (_, nf) = crate::group_engine::conjugate_to_normal_form(c)?;
            crate::cocycle_lab::block_cohomology(&pres, &nf)?.iter().map(|r| r.dim_h1).collect()
        }
        None => vec![],
    };
    Ok(Psl2zReport { p, index_p_subgroups: index_p, bad_classes: classes.len(), reports, block_dims })
}

/// The bad class of the modular group for p = 3: a -> diag(-1, -1, 1), b -> M_c.
pub fn beta3() -> Result<RepAssignment> {
    let d = crate::proj_matrix::diag(&[CycNum::from_integer(1, -1), CycNum::from_integer(1, -1), CycNum::one(1)])?;
    RepAssignment::new(Presentation::psl2z(), vec![d, mat_mc(3)?])
}

/// The bad class for p = 2: a -> M_c, b -> diag(1, zeta_3).
pub fn beta2() -> Result<RepAssignment> {
    let d = crate::proj_matrix::diag(&[CycNum::one(3), CycNum::zeta(3, 1)])?;
    RepAssignment::new(Presentation::psl2z(), vec![mat_mc(2)?, d])
}
