//! Finite projective matrix groups: closure, irreducibility, centralizers,
//! intertwiners and the normal form of bad subgroups.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::cyclo_field::{kth_root, lcm, CycNum};
use crate::error::{Error, Result};
use crate::linalg::{CycMat, SpanBuilder};
use crate::proj_matrix::{scalar_commutator, Commutator, ProjMat};

#[derive(Clone, Debug)]
pub struct FinMatrixGroup {
    p: usize,
    elements: Vec<ProjMat>,
    index: HashMap<ProjMat, usize>,
    generators: Vec<ProjMat>,
}

impl FinMatrixGroup {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMat] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProjMat] {
        &self.generators
    }

    pub fn field_order(&self) -> usize {
        self.elements[0].order_of_field()
    }

    pub fn contains(&self, m: &ProjMat) -> bool {
        let l = self.field_order();
        if !l.is_multiple_of(m.order_of_field()) {
            return self.elements.iter().any(|e| e.same_class(m));
        }
        self.index.contains_key(&m.lift_field(l))
    }

    /// Same element set, regardless of generators.
    pub fn same_elements(&self, other: &Self) -> bool {
        self.order() == other.order() && other.elements.iter().all(|e| self.contains(e))
    }
}

fn common_order<'a>(ms: impl IntoIterator<Item = &'a ProjMat>) -> usize {
    ms.into_iter().fold(1, |o, m| lcm(o, m.order_of_field()))
}

/// Breadth-first product closure.
pub fn closure(gens: &[ProjMat], cap: usize) -> Result<FinMatrixGroup> {
    let p = gens
        .first()
        .map(|g| g.dim())
        .ok_or_else(|| Error::InvalidArgument("closure of an empty generating set".into()))?;
    let l = common_order(gens);
    let gens: Vec<ProjMat> = gens.iter().map(|g| g.lift_field(l)).collect();
    let id = ProjMat::identity(p).lift_field(l);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let y = elements[i].mul(g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::TooLarge(cap));
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    Ok(FinMatrixGroup { p, elements, index, generators: gens })
}

/// Burnside test: the lifts span the full matrix algebra.
pub fn is_irreducible(gens: &[ProjMat]) -> bool {
    let Some(p) = gens.first().map(|g| g.dim()) else {
        return false;
    };
    let l = common_order(gens);
    let lifts: Vec<CycMat> = gens.iter().map(|g| g.lift().lift(l)).collect();
    let mut span = SpanBuilder::new(p * p, l);
    let id = CycMat::identity(p, l);
    span.insert(&id.flatten());
    let mut queue = VecDeque::from([id]);
    while let Some(b) = queue.pop_front() {
        for g in &lifts {
            let c = b.mul(g).expect("square");
            if span.insert(&c.flatten()) {
                if span.dim() == p * p {
                    return true;
                }
                queue.push_back(c);
            }
        }
    }
    span.dim() == p * p
}

/// How the scalar ratio for one generator is pinned down.
enum Ratio {
    /// exact, no root of unity freedom left
    Fixed(CycNum),
    /// known up to a p-th root of unity
    UpToRoots(CycNum),
    /// the pair cannot be projectively conjugate
    Impossible,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn scalar_ratio(a: &CycMat, b: &CycMat, p: usize) -> Result<Ratio> {
    if a == b {
        return Ok(Ratio::UpToRoots(CycNum::one(a.order())));
    }
    let det_a = a.det()?;
    let det_b = b.det()?;
    let delta = &det_a * &det_b.invert()?;
    let (mut pa, mut pb) = (a.clone(), b.clone());
    for j in 1..p {
        let (ta, tb) = (pa.trace(), pb.trace());
        if !tb.is_zero() {
            if ta.is_zero() {
                return Ok(Ratio::Impossible);
            }
            // lambda^j = tau and lambda^p = delta, with gcd(j, p) = 1
            let tau = &ta * &tb.invert()?;
            let (_, u, v) = ext_gcd(j as i64, p as i64);
            let lam = &tau.pow(u)? * &delta.pow(v)?;
            return Ok(Ratio::Fixed(lam));
        }
        if !ta.is_zero() {
            return Ok(Ratio::Impossible);
        }
        pa = pa.mul(a)?;
        pb = pb.mul(b)?;
    }
    match kth_root(&delta, p as u32) {
        Some(r) => Ok(Ratio::UpToRoots(r)),
        None => Err(Error::ScalarRootUnavailable),
    }
}

/// Restricts the span of `basis` to {X : X A = c B X}.
fn restrict(basis: &[CycMat], a: &CycMat, b: &CycMat, c: &CycNum) -> Vec<CycMat> {
    if basis.is_empty() {
        return Vec::new();
    }
    let p = a.rows();
    let order = basis[0].order();
    let cb = b.scale(c);
    let cols: Vec<Vec<CycNum>> =
        basis.iter().map(|y| y.mul(a).unwrap().sub(&cb.mul(y).unwrap()).unwrap().flatten()).collect();
    let sys = CycMat::from_fn(p * p, basis.len(), order, |i, j| cols[j][i].clone());
    sys.kernel()
        .into_iter()
        .map(|coef| {
            let mut acc = CycMat::zeros(p, p, order);
            for (y, c) in basis.iter().zip(&coef) {
                if !c.is_zero() {
                    acc = acc.add(&y.scale(c)).unwrap();
                }
            }
            acc
        })
        .collect()
}

/// All g with g rho(x) g^-1 = rho'(x) for every generator x.
pub fn conjugators_between(rho: &[ProjMat], rho2: &[ProjMat]) -> Result<Vec<ProjMat>> {
    conjugators_between_opts(rho, rho2, false)
}

pub fn conjugators_between_opts(rho: &[ProjMat], rho2: &[ProjMat], parallel: bool) -> Result<Vec<ProjMat>> {
    if rho.len() != rho2.len() || rho.is_empty() {
        return Err(Error::DimensionMismatch("generator lists differ".into()));
    }
    let p = rho[0].dim();
    if rho.iter().chain(rho2).any(|m| m.dim() != p) {
        return Err(Error::DimensionMismatch("mixed matrix sizes".into()));
    }
    if !is_irreducible(rho) || !is_irreducible(rho2) {
        return Err(Error::ReducibleInput);
    }
    let mut l = lcm(common_order(rho.iter().chain(rho2)), p);
    let mut pairs = Vec::with_capacity(rho.len());
    for (x, y) in rho.iter().zip(rho2) {
        let (a, b) = (x.lift().lift(l), y.lift().lift(l));
        match scalar_ratio(&a, &b, p)? {
            Ratio::Impossible => return Ok(Vec::new()),
            Ratio::Fixed(c) => pairs.push((a, b, c, true)),
            Ratio::UpToRoots(c) => pairs.push((a, b, c, false)),
        }
    }
    l = pairs.iter().fold(l, |o, t| lcm(o, t.2.order()));
    // exact ratios first: they prune without branching
    pairs.sort_by_key(|t| !t.3);
    let pairs: Vec<(CycMat, CycMat, CycNum, bool)> =
        pairs.into_iter().map(|(a, b, c, f)| (a.lift(l), b.lift(l), c.lift(l), f)).collect();
    let roots: Vec<CycNum> = (0..p).map(|k| CycNum::zeta(p, k as i64).lift(l)).collect();

    let mut start = Vec::with_capacity(p * p);
    for i in 0..p {
        for j in 0..p {
            let mut e = CycMat::zeros(p, p, l);
            e.set(i, j, CycNum::one(l));
            start.push(e);
        }
    }

    fn search(
        basis: Vec<CycMat>,
        depth: usize,
        pairs: &[(CycMat, CycMat, CycNum, bool)],
        roots: &[CycNum],
        out: &mut Vec<CycMat>,
    ) {
        if basis.is_empty() {
            return;
        }
        if depth == pairs.len() {
            out.extend(basis);
            return;
        }
        let (a, b, c, fixed) = &pairs[depth];
        if *fixed {
            let next = restrict(&basis, a, b, c);
            search(next, depth + 1, pairs, roots, out);
        } else {
            for w in roots {
                let next = restrict(&basis, a, b, &(c * w));
                search(next, depth + 1, pairs, roots, out);
            }
        }
    }

    let found: Vec<CycMat> = if parallel && !pairs[0].3 {
        let (a, b, c, _) = &pairs[0];
        roots
            .par_iter()
            .map(|w| {
                let mut out = Vec::new();
                let next = restrict(&start, a, b, &(c * w));
                search(next, 1, &pairs, &roots, &mut out);
                out
            })
            .flatten()
            .collect()
    } else {
        let mut out = Vec::new();
        search(start, 0, &pairs, &roots, &mut out);
        out
    };
    let mut result: Vec<ProjMat> = Vec::new();
    for x in found {
        // Schur: every nonzero intertwiner of irreducibles is invertible
        let g = ProjMat::new(x)?;
        if !result.contains(&g) {
            result.push(g);
        }
    }
    Ok(result)
}

/// Projective centralizer of an irreducible group.
pub fn centralizer(gens: &[ProjMat]) -> Result<FinMatrixGroup> {
    let c = conjugators_between(gens, gens)?;
    let g = closure(&c, c.len().max(1))?;
    debug_assert_eq!(g.order(), c.len());
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BadnessKind {
    Good,
    BadZp,
    BadZpZp,
    NotIrreducible,
}

#[derive(Clone, Debug)]
pub struct BadnessVerdict {
    pub kind: BadnessKind,
    /// None for reducible input, where the centralizer is infinite.
    pub centralizer: Option<FinMatrixGroup>,
    pub conjugator: Option<ProjMat>,
}

pub fn classify(gens: &[ProjMat]) -> Result<BadnessVerdict> {
    if !is_irreducible(gens) {
        return Ok(BadnessVerdict { kind: BadnessKind::NotIrreducible, centralizer: None, conjugator: None });
    }
    let p = gens[0].dim();
    let z = centralizer(gens)?;
    let kind = match z.order() {
        1 => BadnessKind::Good,
        n if n == p => BadnessKind::BadZp,
        n if n == p * p => BadnessKind::BadZpZp,
        n => return Err(Error::UnsupportedCentralizer(n)),
    };
    let conjugator = if kind == BadnessKind::Good { None } else { conjugate_to_normal_form(gens).ok().map(|(c, _)| c) };
    Ok(BadnessVerdict { kind, centralizer: Some(z), conjugator })
}

/// Conjugates a bad irreducible group into monomial form with cyclic-shift
/// support. Returns (P, images) with images[i] = P gens[i] P^-1.
pub fn conjugate_to_normal_form(gens: &[ProjMat]) -> Result<(ProjMat, Vec<ProjMat>)> {
    let p = gens[0].dim();
    if gens.iter().all(|g| g.is_monomial_cyclic()) && is_irreducible(gens) {
        let id = ProjMat::identity(p);
        return Ok((id, gens.to_vec()));
    }
    let z = centralizer(gens)?;
    if z.order() == 1 {
        return Err(Error::NotBad);
    }
    // any non-identity centralizer element whose p-th power scalar has a
    // recognizable root
    let mut picked = None;
    for u in z.elements().iter().filter(|e| !e.is_identity()) {
        let up = u.lift().pow(p as i64)?;
        let Some(c) = up.as_scalar() else { continue };
        if let Some(alpha) = kth_root(&c, p as u32) {
            picked = Some((u.clone(), alpha));
            break;
        }
    }
    let (u, alpha) = picked.ok_or(Error::ScalarRootUnavailable)?;
    let mut l = lcm(lcm(common_order(gens), z.field_order()), alpha.order());
    let ul = u.lift().lift(l);
    let shifted = ul.sub(&CycMat::scalar(p, &alpha.lift(l)))?;
    let w0 = shifted.kernel().into_iter().next().ok_or_else(|| Error::NotFound("eigenvector".into()))?;

    // a generator that moves the eigenlines of u
    let h = gens
        .iter()
        .find(|g| matches!(scalar_commutator(&u, g), Commutator::Scalar(k) if k != 0))
        .ok_or(Error::NotBad)?;
    let mut hl = h.lift().lift(l);
    let hp = hl.pow(p as i64)?;
    if let Some(ch) = hp.as_scalar() {
        if let Some(mu) = kth_root(&ch, p as u32) {
            let l2 = lcm(l, mu.order());
            l = l2;
            hl = hl.lift(l).scale(&mu.lift(l).invert()?);
        }
    }
    let mut cols = vec![w0.iter().map(|x| x.lift(l)).collect::<Vec<_>>()];
    for j in 1..p {
        let next = hl.mul_vec(&cols[j - 1]);
        cols.push(next);
    }
    let g = CycMat::from_fn(p, p, l, |i, j| cols[j][i].clone());
    let gp = ProjMat::new(g)?;
    let conj = gp.inv();
    let images: Vec<ProjMat> = gens.iter().map(|x| x.lift_field(l).conj(&conj)).collect();
    if images.iter().any(|m| !m.is_monomial_cyclic()) {
        return Err(Error::NotMonomial);
    }
    Ok((conj, images))
}

/// The p layers d_j of X = sum_j diag(d_j) M_c^j.
pub fn monomial_layers(x: &CycMat) -> Vec<Vec<CycNum>> {
    let p = x.rows();
    (0..p).map(|j| (0..p).map(|r| x.get(r, (r + p - j) % p).clone()).collect()).collect()
}

/// Writes g (projectively commuting with M_c) as P(M_c) D(xi)^k, returning
/// k and the coefficients of P.
pub fn poly_in_mc_times_d(g: &ProjMat) -> Option<(usize, Vec<CycNum>)> {
    let p = g.dim();
    let l = lcm(g.order_of_field(), p);
    let mc = crate::proj_matrix::mat_mc(p).ok()?.lift().lift(l);
    let d = crate::proj_matrix::mat_d_xi(p).ok()?.lift().lift(l);
    let target = g.lift().lift(l);
    for k in 0..p {
        // columns: M_c^j D^k for j < p
        let dk = d.pow(k as i64).ok()?;
        let cands: Vec<Vec<CycNum>> = (0..p).map(|j| mc.pow(j as i64).unwrap().mul(&dk).unwrap().flatten()).collect();
        let t = target.flatten();
        let aug = CycMat::from_fn(p * p, p + 1, l, |i, j| if j < p { cands[j][i].clone() } else { t[i].clone() });
        let (r, piv) = aug.rref();
        if piv.contains(&p) {
            continue;
        }
        let mut coef = vec![CycNum::zero(l); p];
        for (row, &pc) in piv.iter().enumerate() {
            coef[pc] = r.get(row, p).clone();
        }
        return Some((k, coef));
    }
    None
}
