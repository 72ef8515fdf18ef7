//! Torsion points of the diagonal torus modulo scalars, their shift-invariant
//! subgroups, constructors of bad representations of free and surface groups,
//! Euler classes, the component counts with enumeration oracles, Euler
//! profiles of intersections and the trace coordinates for p = 2.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cocycle_lab::{Presentation, RepAssignment};
use crate::cyclo_field::{kth_root, CycNum};
use crate::error::{Error, Result};
use crate::linalg::CycMat;
use crate::modp_module::{
    howell_contains, howell_form, howell_order, normalized_covectors, pair_degeneracy, rref_mod_p, FpSubspace,
    PairType, SymplecticSpace,
};
use crate::proj_matrix::{mat_mc, ProjMat};

/// A torsion point of the diagonal torus modulo scalars: diag(zeta_m^{e_i})
/// with e in (Z/m)^p taken modulo constant vectors (first coordinate 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionDiag {
    p: usize,
    m: u64,
    exponents: Vec<u64>,
}

impl TorsionDiag {
    pub fn new(p: usize, m: u64, e: &[i64]) -> Result<Self> {
        if e.len() != p || m == 0 {
            return Err(Error::DimensionMismatch(format!("need {p} exponents and m > 0")));
        }
        let mm = m as i64;
        let base = e[0];
        let exponents = e.iter().map(|x| (x - base).rem_euclid(mm) as u64).collect();
        Ok(Self { p, m, exponents })
    }

    pub fn from_u64(p: usize, m: u64, e: &[u64]) -> Result<Self> {
        let v: Vec<i64> = e.iter().map(|&x| (x % m) as i64).collect();
        Self::new(p, m, &v)
    }

    pub fn identity(p: usize, m: u64) -> Self {
        Self { p, m, exponents: vec![0; p] }
    }

    /// The class of D(xi); needs p | m.
    pub fn d_xi(p: usize, m: u64) -> Result<Self> {
        if !m.is_multiple_of(p as u64) {
            return Err(Error::InvalidArgument(format!("level {m} is not a multiple of {p}")));
        }
        let step = (m / p as u64) as i64;
        Self::new(p, m, &(0..p as i64).map(|i| i * step).collect::<Vec<_>>())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&x| x == 0)
    }

    /// Conjugation by M_c^r: (S t)_i = t_{i-r}.
    pub fn shift(&self, r: usize) -> Self {
        let p = self.p;
        let e: Vec<i64> = (0..p).map(|i| self.exponents[(i + p * p - r % p) % p] as i64).collect();
        Self::new(p, self.m, &e).expect("same shape")
    }

    pub fn add(&self, other: &Self) -> Self {
        let e: Vec<i64> = self.exponents.iter().zip(&other.exponents).map(|(a, b)| (a + b) as i64).collect();
        Self::new(self.p, self.m, &e).expect("same shape")
    }

    pub fn scale(&self, k: i64) -> Self {
        let e: Vec<i64> = self.exponents.iter().map(|&a| a as i64 * k).collect();
        Self::new(self.p, self.m, &e).expect("same shape")
    }

    pub fn to_projmat(&self) -> ProjMat {
        let d: Vec<CycNum> = self.exponents.iter().map(|&e| CycNum::zeta(self.m as usize, e as i64)).collect();
        ProjMat::new(CycMat::diagonal(&d)).expect("diagonal of roots of unity")
    }

    /// Additive order in Dbar[m].
    pub fn order(&self) -> u64 {
        (1..=self.m).find(|&k| self.scale(k as i64).is_identity()).unwrap_or(self.m)
    }
}

/// A shift-invariant subgroup of Dbar[m], stored as the Howell form of its
/// preimage in (Z/m)^p (which always contains the constant vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagSubgroup {
    p: usize,
    m: u64,
    form: Vec<Vec<u64>>,
}

impl DiagSubgroup {
    pub fn generated_by(p: usize, m: u64, gens: &[TorsionDiag]) -> Self {
        let mut rows = vec![vec![1u64; p]];
        for g in gens {
            for r in 0..p {
                rows.push(g.shift(r).exponents.clone());
            }
        }
        Self { p, m, form: howell_form(&rows, p, m) }
    }

    pub fn trivial(p: usize, m: u64) -> Self {
        Self::generated_by(p, m, &[])
    }

    pub fn all(p: usize, m: u64) -> Self {
        let gens: Vec<TorsionDiag> = (0..p)
            .map(|i| {
                let mut e = vec![0; p];
                e[i] = 1;
                TorsionDiag::new(p, m, &e).unwrap()
            })
            .collect();
        Self::generated_by(p, m, &gens)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u64 {
        howell_order(&self.form, self.m) / self.m
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, t: &TorsionDiag) -> bool {
        howell_contains(&self.form, &t.exponents, self.m)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let rows: Vec<Vec<u64>> = self.form.iter().chain(&other.form).cloned().collect();
        Self { p: self.p, m: self.m, form: howell_form(&rows, self.p, self.m) }
    }

    /// Nonzero generators as torsion points.
    pub fn generators(&self) -> Vec<TorsionDiag> {
        let mut out: Vec<TorsionDiag> = Vec::new();
        for row in &self.form {
            let t = TorsionDiag::from_u64(self.p, self.m, row).unwrap();
            if !t.is_identity() && !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    pub fn elements(&self) -> Vec<TorsionDiag> {
        let mut seen: HashSet<TorsionDiag> = HashSet::new();
        let mut frontier = vec![TorsionDiag::identity(self.p, self.m)];
        seen.insert(frontier[0].clone());
        let gens = self.generators();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.add(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut v: Vec<TorsionDiag> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// The group K x| <M_c> as projective generators.
    pub fn semidirect_generators(&self) -> Vec<ProjMat> {
        let mut g: Vec<ProjMat> = self.generators().iter().map(|t| t.to_projmat()).collect();
        g.push(mat_mc(self.p).expect("prime"));
        g
    }

    pub fn is_d_xi_group(&self) -> bool {
        match TorsionDiag::d_xi(self.p, self.m) {
            Ok(d) => *self == Self::generated_by(self.p, self.m, &[d]),
            Err(_) => false,
        }
    }
}

/// All nontrivial shift-invariant subgroups of Dbar[m].
pub fn invariant_subgroups(p: usize, m: u64, cap: usize) -> Result<Vec<DiagSubgroup>> {
    let count = (m as usize).checked_pow(p as u32 - 1).ok_or(Error::TooLarge(cap))?;
    if count > cap {
        return Err(Error::TooLarge(cap));
    }
    let mut cyclic: HashSet<DiagSubgroup> = HashSet::new();
    let mut e = vec![0u64; p];
    for mut idx in 0..count {
        for slot in e.iter_mut().skip(1) {
            *slot = idx as u64 % m;
            idx /= m as usize;
        }
        let t = TorsionDiag::from_u64(p, m, &e)?;
        cyclic.insert(DiagSubgroup::generated_by(p, m, &[t]));
    }
    let mut all: HashSet<DiagSubgroup> = cyclic.clone();
    let mut frontier: Vec<DiagSubgroup> = all.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for b in &cyclic {
            let s = a.sum(b);
            if all.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut out: Vec<DiagSubgroup> = all.into_iter().filter(|k| !k.is_trivial()).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then(a.form.cmp(&b.form)));
    Ok(out)
}

/// x_j -> diag(t_j) M_c^{layer_j} on the free group of rank layer.len().
pub fn free_rep_from_layer(p: usize, layer: &[usize], diag_parts: &[TorsionDiag]) -> Result<RepAssignment> {
    if layer.len() != diag_parts.len() || layer.is_empty() {
        return Err(Error::DimensionMismatch("one layer entry per diagonal part".into()));
    }
    let mc = mat_mc(p)?;
    let images = layer.iter().zip(diag_parts).map(|(&k, t)| t.to_projmat().mul(&mc.pow(k as i64))).collect();
    RepAssignment::new(Presentation::free(layer.len()), images)
}

/// x_1 -> M_c and x_j -> diag(t_j) for j >= 2.
pub fn build_free_bad_rep(p: usize, m: u64, data: &[TorsionDiag]) -> Result<RepAssignment> {
    let mut layer = vec![1];
    layer.extend(std::iter::repeat_n(0, data.len()));
    let mut parts = vec![TorsionDiag::identity(p, m)];
    parts.extend(data.iter().cloned());
    free_rep_from_layer(p, &layer, &parts)
}

/// a_1 -> M_c, b_1 -> D(xi)^k, a_j -> t_j, b_j -> u_j on the genus-g surface
/// group.
pub fn build_surface_bad_rep(p: usize, m: u64, k: usize, data: &[(TorsionDiag, TorsionDiag)]) -> Result<RepAssignment> {
    let g = data.len() + 1;
    let d = TorsionDiag::d_xi(p, m)?;
    let mut images = vec![mat_mc(p)?, d.scale(k as i64).to_projmat()];
    for (t, u) in data {
        images.push(t.to_projmat());
        images.push(u.to_projmat());
    }
    RepAssignment::new(Presentation::surface(g), images)
}

/// e = k means the product of commutators of lifts is xi^k I.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerClass {
    pub k: usize,
}

pub fn euler_invariant(rep: &RepAssignment) -> Result<EulerClass> {
    let p = rep.p();
    let n = rep.presentation.ngens();
    if !n.is_multiple_of(2) || rep.presentation != Presentation::surface(n / 2) {
        return Err(Error::InvalidArgument("not a standard surface presentation".into()));
    }
    let lifts: Vec<CycMat> = rep.images.iter().map(|m| m.lift().clone()).collect();
    let order = lifts.iter().fold(p, |o, m| crate::cyclo_field::lcm(o, m.order()));
    let mut acc = CycMat::identity(p, order);
    for i in 0..n / 2 {
        let a = lifts[2 * i].lift(order);
        let b = lifts[2 * i + 1].lift(order);
        let c = a.mul(&b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)?;
        acc = acc.mul(&c)?;
    }
    let c = acc.as_scalar().ok_or(Error::NotScalarResult)?;
    (0..p)
        .find(|&k| crate::cyclo_field::same_value(&c, &CycNum::zeta(p, k as i64)))
        .map(|k| EulerClass { k })
        .ok_or(Error::NotScalarResult)
}

pub fn count_pseudo_components(p: u64, r: u32) -> u64 {
    (p.pow(r) - 1) / (p - 1)
}

pub fn count_abelian_irreducible(p: u64, r: u32) -> u64 {
    (p.pow(r) - 1) * (p.pow(r - 1) - 1) / (p * p - 1)
}

pub fn intersection_count(p: u64) -> u64 {
    p - 1
}

pub fn components_through_abelian(p: u64) -> u64 {
    p + 1
}

/// 2 x r matrix over F_p stored as its r columns.
pub type Surj = Vec<[u64; 2]>;

pub fn sl2_elements(p: u64) -> Vec<[[u64; 2]; 2]> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn apply2(g: &[[u64; 2]; 2], v: [u64; 2], p: u64) -> [u64; 2] {
    [(g[0][0] * v[0] + g[0][1] * v[1]) % p, (g[1][0] * v[0] + g[1][1] * v[1]) % p]
}

fn rank2(cols: &Surj, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..2).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    rref_mod_p(&mut rows, p).len()
}

fn all_surjections(r: usize, p: u64, cap: usize) -> Result<Vec<Surj>> {
    let total = (p as usize).checked_pow(2 * r as u32).ok_or(Error::TooLarge(cap))?;
    if total > cap {
        return Err(Error::TooLarge(cap));
    }
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut cols = vec![[0u64; 2]; r];
        for c in cols.iter_mut() {
            c[0] = idx as u64 % p;
            idx /= p as usize;
            c[1] = idx as u64 % p;
            idx /= p as usize;
        }
        if rank2(&cols, p) == 2 {
            out.push(cols);
        }
    }
    Ok(out)
}

/// Orbits of surjections under post-composition with SL(2, F_p); each orbit
/// is returned as its minimal element. Errors if some stabilizer is
/// nontrivial.
fn sl2_orbit_reps(surjs: &[Surj], p: u64) -> Result<Vec<Surj>> {
    let group = sl2_elements(p);
    let mut seen: HashSet<Surj> = HashSet::new();
    let mut reps = Vec::new();
    for s in surjs {
        if seen.contains(s) {
            continue;
        }
        let orbit: HashSet<Surj> = group.iter().map(|g| s.iter().map(|&c| apply2(g, c, p)).collect()).collect();
        if orbit.len() != group.len() {
            return Err(Error::CriterionMismatch("SL(2) action is not free".into()));
        }
        reps.push(orbit.iter().min().unwrap().clone());
        seen.extend(orbit);
    }
    Ok(reps)
}

/// Counts surjections F_p^r -> F_p^2 up to SL(2, F_p) by enumeration.
pub fn abelian_irreducible_oracle(p: u64, r: usize) -> Result<u64> {
    let surjs = all_surjections(r, p, 2_000_000)?;
    Ok(sl2_orbit_reps(&surjs, p)?.len() as u64)
}

fn kernel_of(s: &Surj, p: u64) -> FpSubspace {
    let rows: Vec<Vec<u64>> = (0..2).map(|i| s.iter().map(|c| c[i]).collect()).collect();
    FpSubspace::kernel(p, s.len(), &rows).expect("consistent")
}

/// Number of hyperplanes containing the kernel of each surjection (one value
/// per SL(2)-orbit).
pub fn hyperplanes_through_kernels(p: u64, r: usize) -> Result<Vec<usize>> {
    let surjs = all_surjections(r, p, 2_000_000)?;
    let reps = sl2_orbit_reps(&surjs, p)?;
    let covs = normalized_covectors(r, p);
    Ok(reps
        .iter()
        .map(|s| {
            let k = kernel_of(s, p);
            covs.iter()
                .filter(|c| k.basis().iter().all(|v| v.iter().zip(c.iter()).map(|(a, b)| a * b).sum::<u64>() % p == 0))
                .count()
        })
        .collect())
}

/// Abelian irreducible classes lying on both hyperplanes: SL(2)-orbits of
/// surjections whose kernel is the intersection.
pub fn intersection_oracle(e: &FpSubspace, e2: &FpSubspace) -> Result<u64> {
    Ok(classes_with_kernel(&e.intersect(e2)?)?.len() as u64)
}

fn classes_with_kernel(w: &FpSubspace) -> Result<Vec<Surj>> {
    let p = w.p();
    let r = w.ambient_dim();
    if w.dim() + 2 != r {
        return Err(Error::InvalidArgument("kernel must have codimension 2".into()));
    }
    let surjs: Vec<Surj> = all_surjections(r, p, 2_000_000)?.into_iter().filter(|s| &kernel_of(s, p) == w).collect();
    sl2_orbit_reps(&surjs, p)
}

/// Euler class of the abelian representation x_i -> D^a M^b with (a, b) =
/// psi(x_i): sum over handles of det(psi(x_i), psi(y_i)).
pub fn commutator_pairing(s: &[[u64; 2]], p: u64) -> u64 {
    s.chunks(2).map(|h| (h[0][0] * h[1][1] + p * p - h[0][1] * h[1][0]) % p).sum::<u64>() % p
}

/// The p - 1 classes of surjections F_p^r -> F_p^2 with kernel E /\ E':
/// rows (alpha, lambda beta) for the covectors of E and E', one per
/// determinant class.
pub fn classes_on_pair(e: &FpSubspace, e2: &FpSubspace) -> Result<Vec<Surj>> {
    let (a, b) = match (e.normalized_covector(), e2.normalized_covector()) {
        (Some(a), Some(b)) if a != b => (a, b),
        _ => return Err(Error::InvalidArgument("two distinct hyperplanes expected".into())),
    };
    let p = e.p();
    Ok((1..p).map(|l| a.iter().zip(&b).map(|(&x, &y)| [x, l * y % p]).collect()).collect())
}

fn tally(classes: &[Surj], p: u64, euler: impl Fn(&Surj) -> Result<u64>) -> Result<BTreeMap<u64, u64>> {
    let mut t: BTreeMap<u64, u64> = (0..p).map(|k| (k, 0)).collect();
    for s in classes {
        *t.get_mut(&euler(s)?).unwrap() += 1;
    }
    Ok(t)
}

/// Tally of Euler classes over the abelian irreducible classes on E and E'.
pub fn intersection_euler_profile(e: &FpSubspace, e2: &FpSubspace, v: &SymplecticSpace) -> Result<BTreeMap<u64, u64>> {
    pair_degeneracy(e, e2, v)?;
    tally(&classes_on_pair(e, e2)?, v.p, |s| Ok(commutator_pairing(s, v.p)))
}

/// Same tally with the classes found by enumerating all surjections.
pub fn intersection_euler_profile_by_enumeration(
    e: &FpSubspace,
    e2: &FpSubspace,
    v: &SymplecticSpace,
) -> Result<BTreeMap<u64, u64>> {
    pair_degeneracy(e, e2, v)?;
    tally(&classes_with_kernel(&e.intersect(e2)?)?, v.p, |s| Ok(commutator_pairing(s, v.p)))
}

/// The surface representation a_i -> D^{a} M^{b}, b_i -> D^{c} M^{d} read off
/// from a surjection, as actual matrices.
pub fn surface_rep_from_surjection(s: &[[u64; 2]], p: usize) -> Result<RepAssignment> {
    let d = crate::proj_matrix::mat_d_xi(p)?;
    let mc = mat_mc(p)?;
    let images = s.iter().map(|c| d.pow(c[0] as i64).mul(&mc.pow(c[1] as i64))).collect();
    RepAssignment::new(Presentation::surface(s.len() / 2), images)
}

/// Euler classes of the same classes computed from the matrices themselves.
pub fn intersection_euler_profile_by_matrices(
    e: &FpSubspace,
    e2: &FpSubspace,
    v: &SymplecticSpace,
) -> Result<BTreeMap<u64, u64>> {
    pair_degeneracy(e, e2, v)?;
    let p = v.p;
    // [D, M] = xi^{-1} in the lifts, so the pairing carries a sign
    tally(&classes_on_pair(e, e2)?, p, |s| {
        let k = euler_invariant(&surface_rep_from_surjection(s, p as usize)?)?.k as u64;
        Ok((p - k) % p)
    })
}

/// Expected tally: nondegenerate pairs put one class at each k != 0,
/// degenerate pairs put all p - 1 classes at k = 0.
pub fn expected_euler_profile(p: u64, t: PairType) -> BTreeMap<u64, u64> {
    (0..p)
        .map(|k| {
            let c = match (t, k) {
                (PairType::NonDegenerate, 0) => 0,
                (PairType::NonDegenerate, _) => 1,
                (PairType::Degenerate, 0) => p - 1,
                (PairType::Degenerate, _) => 0,
            };
            (k, c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCoordinates {
    pub x: CycNum,
    pub y: CycNum,
    pub z: CycNum,
    pub t: CycNum,
}

impl TraceCoordinates {
    pub fn on_cone(&self) -> bool {
        (&self.t * &self.t) == (&(&self.x * &self.y) * &self.z)
    }

    pub fn zero_pattern(&self) -> [bool; 4] {
        [self.x.is_zero(), self.y.is_zero(), self.z.is_zero(), self.t.is_zero()]
    }

    /// Index of the coordinate axis (0 = X, 1 = Y, 2 = Z) the point lies on,
    /// if t and the other two coordinates vanish and this one does not.
    pub fn coordinate_axis(&self) -> Option<usize> {
        let z = self.zero_pattern();
        if !z[3] {
            return None;
        }
        let nonzero: Vec<usize> = (0..3).filter(|&i| !z[i]).collect();
        (nonzero.len() == 1).then(|| nonzero[0])
    }
}

/// (tr(A)^2, tr(B)^2, tr(AB)^2, tr(A) tr(B) tr(AB)) for 2x2 matrices.
pub fn vogt_coordinates(a: &CycMat, b: &CycMat) -> Result<TraceCoordinates> {
    if a.rows() != 2 || b.rows() != 2 || !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch("2 x 2 matrices expected".into()));
    }
    let (ta, tb, tab) = (a.trace(), b.trace(), a.mul(b)?.trace());
    let c = TraceCoordinates { x: &ta * &ta, y: &tb * &tb, z: &tab * &tab, t: &(&ta * &tb) * &tab };
    debug_assert!(c.on_cone());
    Ok(c)
}

/// Determinant-1 lift of a class in PGL(2).
pub fn sl2_lift(m: &ProjMat) -> Result<CycMat> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch("2 x 2 expected".into()));
    }
    let l = m.lift();
    let det = l.det()?;
    let r = kth_root(&det, 2).ok_or(Error::ScalarRootUnavailable)?;
    let order = crate::cyclo_field::lcm(l.order(), r.order());
    Ok(l.lift(order).scale(&r.lift(order).invert()?))
}

/// Random 2 x 2 rational matrix of determinant 1.
pub fn random_sl2_rational<R: Rng>(rng: &mut R) -> CycMat {
    loop {
        let a = rng.gen_range(-6i64..=6);
        let b = rng.gen_range(-6i64..=6);
        let c = rng.gen_range(-6i64..=6);
        if a == 0 {
            continue;
        }
        // d = (1 + b c) / a
        let d = num_rational::BigRational::new((1 + b * c).into(), a.into());
        let num = |v: i64| CycNum::from_integer(1, v);
        return CycMat::from_rows(vec![vec![num(a), num(b)], vec![num(c), CycNum::from_rational(1, &d)]])
            .expect("2 x 2");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::{centralizer, conjugators_between, is_irreducible};
    use crate::modp_module::hyperplanes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn torsion_diag_basics() {
        let t = TorsionDiag::new(3, 6, &[2, 3, 5]).unwrap();
        assert_eq!(t.exponents(), &[0, 1, 3]);
        assert_eq!(t.shift(1).exponents(), &[0, 3, 4]);
        assert_eq!(t.shift(3), t);
        let d = TorsionDiag::d_xi(3, 3).unwrap();
        assert!(d.to_projmat().same_class(&crate::proj_matrix::mat_d_xi(3).unwrap()));
        assert!(TorsionDiag::d_xi(2, 4).unwrap().to_projmat().same_class(&crate::proj_matrix::mat_d_xi(2).unwrap()));
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn shift_matches_conjugation() {
        let t = TorsionDiag::new(3, 6, &[0, 1, 4]).unwrap();
        let mc = mat_mc(3).unwrap();
        assert!(t.to_projmat().conj(&mc).same_class(&t.shift(1).to_projmat()));
    }

    #[test]
    fn subgroup_counts() {
        // level p: the only nontrivial invariant subgroups are the powers of
        // (x - 1) in F_p[x]/(x^p - 1) containing the constants
        for p in [2usize, 3, 5] {
            let subs = invariant_subgroups(p, p as u64, 100_000).unwrap();
            assert_eq!(subs.len(), p - 1);
            assert!(subs.iter().any(|k| k.is_d_xi_group()));
            assert!(subs.iter().any(|k| *k == DiagSubgroup::all(p, p as u64)));
        }
        let full = DiagSubgroup::all(3, 6);
        assert_eq!(full.order(), 36);
        assert_eq!(full.elements().len(), 36);
    }

    #[test]
    fn sweep_small_levels() {
        for (p, m) in [(2usize, 2u64), (2, 4), (3, 3), (3, 6)] {
            for k in invariant_subgroups(p, m, 100_000).unwrap() {
                let gens = k.semidirect_generators();
                assert!(is_irreducible(&gens));
                let z = centralizer(&gens).unwrap();
                if k.is_d_xi_group() {
                    assert_eq!(z.order(), p * p);
                } else {
                    assert_eq!(z.order(), p);
                    let d = crate::proj_matrix::mat_d_xi(p).unwrap();
                    assert!(z.contains(&d));
                }
            }
        }
    }

    #[test]
    fn free_constructor_examples() {
        let r = build_free_bad_rep(3, 3, &[TorsionDiag::d_xi(3, 3).unwrap()]).unwrap();
        assert!(is_irreducible(&r.images));
        assert_eq!(centralizer(&r.images).unwrap().order(), 9);
        let r = build_free_bad_rep(3, 3, &[TorsionDiag::identity(3, 3)]).unwrap();
        assert!(!is_irreducible(&r.images));
        let r = build_free_bad_rep(2, 4, &[TorsionDiag::new(2, 4, &[0, 1]).unwrap()]).unwrap();
        assert!(is_irreducible(&r.images));
        let z = centralizer(&r.images).unwrap();
        assert_eq!(z.order(), 2);
        assert!(z.contains(&crate::proj_matrix::mat_d_xi(2).unwrap()));
    }

    #[test]
    fn surface_constructor_and_euler() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, m) in [(2usize, 4u64), (3, 3), (3, 6)] {
            for k in 0..p {
                let data: Vec<(TorsionDiag, TorsionDiag)> = (0..2)
                    .map(|_| {
                        let mut r = || (0..p).map(|_| rng.gen_range(0..m as i64)).collect::<Vec<_>>();
                        (TorsionDiag::new(p, m, &r()).unwrap(), TorsionDiag::new(p, m, &r()).unwrap())
                    })
                    .collect();
                let rep = build_surface_bad_rep(p, m, k, &data).unwrap();
                assert_eq!(euler_invariant(&rep).unwrap().k, (p - k) % p);
            }
        }
        let triv =
            build_surface_bad_rep(3, 3, 0, &[(TorsionDiag::identity(3, 3), TorsionDiag::identity(3, 3))]).unwrap();
        assert!(!is_irreducible(&triv.images));
        let ab = build_surface_bad_rep(3, 3, 1, &[(TorsionDiag::identity(3, 3), TorsionDiag::identity(3, 3))]).unwrap();
        assert!(is_irreducible(&ab.images));
    }

    #[test]
    fn diagonal_images_have_zero_euler_class() {
        let t = TorsionDiag::new(3, 6, &[0, 1, 5]).unwrap();
        let u = TorsionDiag::new(3, 6, &[0, 2, 3]).unwrap();
        let rep = RepAssignment::new(
            Presentation::surface(2),
            vec![t.to_projmat(), u.to_projmat(), u.to_projmat(), t.to_projmat()],
        )
        .unwrap();
        assert_eq!(euler_invariant(&rep).unwrap().k, 0);
    }

    #[test]
    fn counts_match_oracles() {
        for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2)] {
            assert_eq!(abelian_irreducible_oracle(p, r).unwrap(), count_abelian_irreducible(p, r as u32));
            assert_eq!(hyperplanes(r, p).len() as u64, count_pseudo_components(p, r as u32));
            assert!(hyperplanes_through_kernels(p, r)
                .unwrap()
                .iter()
                .all(|&n| n as u64 == components_through_abelian(p)));
            let hs = hyperplanes(r, p);
            assert_eq!(intersection_oracle(&hs[0], &hs[1]).unwrap(), intersection_count(p));
        }
        assert_eq!(count_pseudo_components(2, 2), 3);
        assert_eq!(count_abelian_irreducible(2, 2), 1);
    }

    #[test]
    fn euler_profiles() {
        for p in [2u64, 3] {
            let v = SymplecticSpace::standard(2, p);
            let hs = hyperplanes(4, p);
            for a in hs.iter().take(4) {
                for b in hs.iter().filter(|b| *b != a) {
                    let t = pair_degeneracy(a, b, &v).unwrap();
                    let prof = intersection_euler_profile(a, b, &v).unwrap();
                    assert_eq!(prof, expected_euler_profile(p, t));
                    assert_eq!(prof, intersection_euler_profile_by_matrices(a, b, &v).unwrap());
                    assert_eq!(prof, intersection_euler_profile_by_enumeration(a, b, &v).unwrap());
                }
            }
        }
    }

    #[test]
    fn trace_coordinates() {
        let id = CycMat::identity(2, 1);
        let c = vogt_coordinates(&id, &id).unwrap();
        assert_eq!(c.x, CycNum::from_integer(1, 4));
        assert_eq!(c.t, CycNum::from_integer(1, 8));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = random_sl2_rational(&mut rng);
            let b = random_sl2_rational(&mut rng);
            assert!(a.det().unwrap().is_one());
            assert!(vogt_coordinates(&a, &b).unwrap().on_cone());
        }
        let d = sl2_lift(&crate::proj_matrix::mat_d_xi(2).unwrap()).unwrap();
        let m = sl2_lift(&mat_mc(2).unwrap()).unwrap();
        assert!(vogt_coordinates(&d, &m).unwrap().zero_pattern().iter().all(|&z| z));
    }

    #[test]
    fn same_fiber_conjugators_are_monomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, m) in [(2usize, 4u64), (3, 3)] {
            for _ in 0..4 {
                let parts = |rng: &mut ChaCha8Rng| -> Vec<TorsionDiag> {
                    (0..2)
                        .map(|_| {
                            TorsionDiag::new(p, m, &(0..p).map(|_| rng.gen_range(0..m as i64)).collect::<Vec<_>>())
                                .unwrap()
                        })
                        .collect()
                };
                let a = free_rep_from_layer(p, &[1, 0], &parts(&mut rng)).unwrap();
                let b = free_rep_from_layer(p, &[1, 0], &parts(&mut rng)).unwrap();
                if !is_irreducible(&a.images) || !is_irreducible(&b.images) {
                    continue;
                }
                for g in conjugators_between(&a.images, &b.images).unwrap() {
                    assert!(g.is_monomial_cyclic());
                }
            }
        }
    }

    #[test]
    fn layer_twist_by_sigma() {
        let p = 5;
        let l = 2;
        let s = crate::proj_matrix::sigma_mult(p, l).unwrap();
        let t = TorsionDiag::new(p, 5, &[0, 1, 3, 0, 2]).unwrap();
        let rep = free_rep_from_layer(p, &[1, 0], &[TorsionDiag::identity(p, 5), t]).unwrap();
        let twisted: Vec<ProjMat> = rep.images.iter().map(|x| x.conj(&s)).collect();
        let layers: Vec<usize> = twisted.iter().map(|x| x.monomial_layer().unwrap().0).collect();
        assert_eq!(layers, vec![l, 0]);
    }
}
