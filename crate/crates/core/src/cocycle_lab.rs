//! Group cohomology of finitely presented groups: Fox calculus over the
//! cyclotomic fields, the adjoint blocks of monomial representations, and
//! first cohomology with coefficients in the m-torsion of the diagonal torus.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo_field::{lcm, CycNum};
use crate::error::{Error, Result};
use crate::linalg::CycMat;
use crate::modp_module::{integer_kernel, snf, solve_integer};
use crate::proj_matrix::ProjMat;
use crate::pseudo_components::TorsionDiag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Self { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }
}

pub type Word = Vec<Letter>;

pub fn reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.flipped()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.flipped()).collect()
}

pub fn commutator(a: usize, b: usize) -> Word {
    vec![Letter::new(a), Letter::new(b), Letter::inv(a), Letter::inv(b)]
}

fn power(gen: usize, n: usize) -> Word {
    vec![Letter::new(gen); n]
}

/// Exponent sum of each generator in `w`.
pub fn exponent_sums(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut s = vec![0; ngens];
    for l in w {
        s[l.gen] += if l.inverse { -1 } else { 1 };
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        if relators.iter().flatten().any(|l| l.gen >= n) {
            return Err(Error::InvalidArgument("relator uses an unknown generator".into()));
        }
        let relators = relators.iter().map(|r| reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(Self { generators, relators })
    }

    pub fn free(r: usize) -> Self {
        Self { generators: (1..=r).map(|i| format!("x{i}")).collect(), relators: Vec::new() }
    }

    /// Generators a_1, b_1, ..., a_g, b_g and one relator [a_1,b_1]...[a_g,b_g].
    pub fn surface(g: usize) -> Self {
        let generators = (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
        let rel = (0..g).flat_map(|i| commutator(2 * i, 2 * i + 1)).collect();
        Self { generators, relators: vec![rel] }
    }

    /// Z/2 * Z/3 = <a, b | a^2, b^3>.
    pub fn psl2z() -> Self {
        Self { generators: vec!["a".into(), "b".into()], relators: vec![power(0, 2), power(1, 3)] }
    }

    /// <a, b | a^3, b^3, [a, b]>.
    pub fn z3xz3() -> Self {
        Self { generators: vec!["a".into(), "b".into()], relators: vec![power(0, 3), power(1, 3), commutator(0, 1)] }
    }

    /// <t | t^n>.
    pub fn cyclic(n: usize) -> Self {
        Self { generators: vec!["t".into()], relators: vec![power(0, n)] }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let name = &self.generators[l.gen];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Formal integer combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: &[Letter]) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn one() -> Self {
        Self::word(&[])
    }

    pub fn add_term(&mut self, w: &[Letter], c: i64) {
        let w = reduce(w);
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &i64)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(&w, a * b);
            }
        }
        out
    }

    /// Image under the trivial representation.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|l| format!("x{}{}", l.gen, if l.inverse { "'" } else { "" })).collect::<String>()
                };
                format!("{c}*{word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn fox_derivative(w: &[Letter], x: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    for (k, l) in w.iter().enumerate() {
        if l.gen != x {
            continue;
        }
        if l.inverse {
            out.add_term(&w[..=k], -1);
        } else {
            out.add_term(&w[..k], 1);
        }
    }
    out
}

/// Fox Jacobian of the relators under a matrix representation: block (i, j)
/// is the image of d(R_i)/d(x_j).
pub fn fox_jacobian(pres: &Presentation, images: &[CycMat]) -> Result<Vec<Vec<CycMat>>> {
    let d = images[0].rows();
    let order = images.iter().fold(1, |o, m| lcm(o, m.order()));
    let imgs: Vec<CycMat> = images.iter().map(|m| m.lift(order)).collect();
    let invs: Vec<CycMat> = imgs.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(pres.relators.len());
    for rel in &pres.relators {
        let mut blocks = vec![CycMat::zeros(d, d, order); pres.ngens()];
        let mut prefix = CycMat::identity(d, order);
        for l in rel {
            if l.inverse {
                prefix = prefix.mul(&invs[l.gen])?;
                blocks[l.gen] = blocks[l.gen].sub(&prefix)?;
            } else {
                blocks[l.gen] = blocks[l.gen].add(&prefix)?;
                prefix = prefix.mul(&imgs[l.gen])?;
            }
        }
        out.push(blocks);
    }
    Ok(out)
}

pub fn eval_word(w: &[Letter], images: &[CycMat]) -> Result<CycMat> {
    let d = images[0].rows();
    let order = images.iter().fold(1, |o, m| lcm(o, m.order()));
    let mut acc = CycMat::identity(d, order);
    for l in w {
        let m = images[l.gen].lift(order);
        acc = acc.mul(&if l.inverse { m.inverse()? } else { m })?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub label: String,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
}

/// Dimensions of Z^1, B^1, H^1 for a linear representation of a presented
/// group (images of the generators as d x d matrices).
pub fn cocycle_dims(pres: &Presentation, images: &[CycMat], label: &str) -> Result<CohomologyReport> {
    if images.len() != pres.ngens() || images.is_empty() {
        return Err(Error::DimensionMismatch("one image per generator".into()));
    }
    let d = images[0].rows();
    for (i, r) in pres.relators.iter().enumerate() {
        if !eval_word(r, images)?.is_identity() {
            return Err(Error::RelatorNotSatisfied(i));
        }
    }
    let n = pres.ngens();
    let order = images.iter().fold(1, |o, m| lcm(o, m.order()));
    let jac = fox_jacobian(pres, images)?;
    let rank_j = if jac.is_empty() {
        0
    } else {
        CycMat::from_fn(d * jac.len(), d * n, order, |r, c| jac[r / d][c / d].get(r % d, c % d).clone()).rank()
    };
    let id = CycMat::identity(d, order);
    let cob = CycMat::from_fn(d * n, d, order, |r, c| {
        let a = images[r / d].lift(order);
        a.get(r % d, c) - id.get(r % d, c)
    });
    let dim_z1 = d * n - rank_j;
    let dim_b1 = cob.rank();
    Ok(CohomologyReport { label: label.into(), dim_z1, dim_b1, dim_h1: dim_z1 - dim_b1 })
}

/// Matrices of Ad(rho) on the blocks d_0 (traceless diagonal, basis
/// E_ii - E_{i+1,i+1}) and d_k = span(E_{i,i+k}) for k = 1..p-1. Entry k of
/// the result lists the matrices of all generators on block k.
pub fn ad_blocks(images: &[ProjMat]) -> Result<Vec<Vec<CycMat>>> {
    let p = images[0].dim();
    let order = images.iter().fold(1, |o, m| lcm(o, m.order_of_field()));
    let layers: Vec<(usize, Vec<CycNum>)> =
        images.iter().map(|m| m.monomial_layer().ok_or(Error::NotMonomial)).collect::<Result<_>>()?;
    let mut blocks = Vec::with_capacity(p);
    // d_0: E_ii -> E_{i+s,i+s}
    let mut b0 = Vec::new();
    for (s, _) in &layers {
        let mut m = CycMat::zeros(p - 1, p - 1, order);
        for i in 0..p - 1 {
            let mut diag = vec![0i64; p];
            diag[(i + s) % p] += 1;
            diag[(i + 1 + s) % p] -= 1;
            let mut acc = 0;
            for r in 0..p - 1 {
                acc += diag[r];
                m.set(r, i, CycNum::from_integer(order, acc));
            }
        }
        b0.push(m);
    }
    blocks.push(b0);
    for k in 1..p {
        let mut bk = Vec::new();
        for (s, d) in &layers {
            let mut m = CycMat::zeros(p, p, order);
            for i in 0..p {
                let (a, b) = (&d[(i + s) % p], &d[(i + s + k) % p]);
                let ratio = (a * &b.invert()?).lift(order);
                m.set((i + s) % p, i, ratio);
            }
            bk.push(m);
        }
        blocks.push(bk);
    }
    Ok(blocks)
}

/// The whole traceless adjoint representation as a direct sum of the blocks.
pub fn full_adjoint(images: &[ProjMat]) -> Result<Vec<CycMat>> {
    let blocks = ad_blocks(images)?;
    let p = images[0].dim();
    let dim = p * p - 1;
    let order = blocks.iter().flatten().fold(1, |o, m| lcm(o, m.order()));
    let mut out = Vec::new();
    for g in 0..images.len() {
        let mut m = CycMat::zeros(dim, dim, order);
        let mut off = 0;
        for b in &blocks {
            let mat = b[g].lift(order);
            for i in 0..mat.rows() {
                for j in 0..mat.cols() {
                    m.set(off + i, off + j, mat.get(i, j).clone());
                }
            }
            off += mat.rows();
        }
        out.push(m);
    }
    Ok(out)
}

/// Cohomology of every adjoint block; also returns the total dimension.
pub fn block_cohomology(pres: &Presentation, images: &[ProjMat]) -> Result<Vec<CohomologyReport>> {
    ad_blocks(images)?.iter().enumerate().map(|(k, b)| cocycle_dims(pres, b, &format!("d{k}"))).collect()
}

/// A representation of a presented group in PGL(p), given by generator images.
#[derive(Clone, Debug)]
pub struct RepAssignment {
    pub presentation: Presentation,
    pub images: Vec<ProjMat>,
    /// M_c-layer of each image when every image is monomial with cyclic support.
    pub mc_exponent: Option<Vec<usize>>,
}

impl RepAssignment {
    /// Checks every relator against the images.
    pub fn new(presentation: Presentation, images: Vec<ProjMat>) -> Result<Self> {
        if images.len() != presentation.ngens() || images.is_empty() {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        for (i, r) in presentation.relators.iter().enumerate() {
            if !eval_proj_word(r, &images).is_identity() {
                return Err(Error::RelatorNotSatisfied(i));
            }
        }
        let mc_exponent = images.iter().map(|m| m.monomial_layer().map(|(k, _)| k)).collect();
        Ok(Self { presentation, images, mc_exponent })
    }

    pub fn p(&self) -> usize {
        self.images[0].dim()
    }
}

pub fn eval_proj_word(w: &[Letter], images: &[ProjMat]) -> ProjMat {
    let mut acc = ProjMat::identity(images[0].dim());
    for l in w {
        let m = &images[l.gen];
        acc = acc.mul(&if l.inverse { m.inv() } else { m.clone() });
    }
    acc
}

/// Shift on (Z/m)^p induced by conjugating a diagonal matrix by M_c:
/// (S t)_i = t_{i-1}.
fn shift_vec(v: &[BigInt], r: usize) -> Vec<BigInt> {
    let p = v.len();
    (0..p).map(|i| v[(i + p * r - r) % p].clone()).collect()
}

fn shift_matrix(p: usize, r: usize) -> Vec<Vec<i64>> {
    (0..p).map(|i| (0..p).map(|j| ((j + r) % p == i) as i64).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionH1 {
    pub p: usize,
    pub m: u64,
    /// Invariant factors (not equal to 1) of H^1(G, Dbar[m]).
    pub invariants: Vec<u64>,
    /// Invariant factors of the image in H^1(G, Dbar), i.e. after dividing out
    /// the classes coming from the invariants of the full torus.
    pub torus_invariants: Vec<u64>,
    /// Lattice basis of integer cocycle lifts (columns; length p * #generators).
    pub cocycle_basis: Vec<Vec<BigInt>>,
    /// Shift action in the cocycle basis: S Z = Z T.
    pub shift_action: Vec<Vec<BigInt>>,
    pub order: BigInt,
    pub torus_order: BigInt,
}

fn invariants_of(snf_diag: &[BigInt], rank: usize, k: usize) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for d in snf_diag.iter().take(rank) {
        if *d != BigInt::from(1) {
            out.push(d.to_u64().ok_or(Error::Overflow(0))?);
        }
    }
    // free summands would be reported as zeros
    out.extend(std::iter::repeat_n(0, k - rank));
    Ok(out)
}

/// H^1 of Z/p acting on (Z/m)^p by the shift, as Ker(Norm) / im(1 - S),
/// by listing elements. With `mod_constants` the module is Dbar[m].
pub fn cyclic_h1_by_norm_trace(p: usize, m: u64, mod_constants: bool) -> Result<Vec<u64>> {
    let size = (m as usize).checked_pow(p as u32).filter(|&s| s <= 1 << 20).ok_or(Error::TooLarge(1 << 20))?;
    let canon = |v: &[u64]| -> Vec<u64> {
        let base = if mod_constants { v[0] } else { 0 };
        v.iter().map(|x| (x + m - base) % m).collect()
    };
    let elems: std::collections::BTreeSet<Vec<u64>> = (0..size)
        .map(|mut i| {
            let v: Vec<u64> = (0..p)
                .map(|_| {
                    let x = (i % m as usize) as u64;
                    i /= m as usize;
                    x
                })
                .collect();
            canon(&v)
        })
        .collect();
    let shift = |v: &[u64]| -> Vec<u64> { (0..p).map(|i| v[(i + p - 1) % p]).collect() };
    let add = |a: &[u64], b: &[u64]| canon(&a.iter().zip(b).map(|(x, y)| (x + y) % m).collect::<Vec<_>>());
    let zero = canon(&vec![0; p]);
    let kernel: Vec<Vec<u64>> = elems
        .iter()
        .filter(|v| {
            let mut acc = zero.clone();
            let mut w = v.to_vec();
            for _ in 0..p {
                acc = add(&acc, &w);
                w = shift(&w);
            }
            acc == zero
        })
        .cloned()
        .collect();
    let image: std::collections::BTreeSet<Vec<u64>> =
        elems.iter().map(|v| add(v, &shift(v).iter().map(|x| (m - x) % m).collect::<Vec<_>>())).collect();
    // |Q[d]| = #{x in Ker : d x in Im} / |Im|
    let killed = |d: u64| -> u64 {
        let n =
            kernel.iter().filter(|v| image.contains(&canon(&v.iter().map(|x| x * d % m).collect::<Vec<_>>()))).count();
        (n / image.len()) as u64
    };
    Ok(invariants_from_torsion_counts(m, killed))
}

/// Invariant factors of a finite abelian group of exponent dividing m from
/// the sizes of its d-torsion subgroups.
pub fn invariants_from_torsion_counts(m: u64, killed: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut factors: Vec<u64> = Vec::new();
    let mut rest = m;
    let mut q = 2;
    while rest > 1 {
        if !rest.is_multiple_of(q) {
            q += 1;
            continue;
        }
        let mut qk = 1;
        let mut prev = 1;
        let mut counts = Vec::new();
        while rest.is_multiple_of(q) {
            rest /= q;
            qk *= q;
            let now = killed(qk);
            let mut e = 0;
            let mut r = now / prev;
            while r > 1 {
                r /= q;
                e += 1;
            }
            counts.push(e);
            prev = now;
        }
        // counts[k] = number of factors divisible by q^(k+1)
        let len = counts.first().copied().unwrap_or(0);
        if factors.len() < len {
            factors.resize(len, 1);
        }
        for j in 0..len {
            let power = counts.iter().filter(|&&c| c > j).count() as u32;
            let idx = factors.len() - 1 - j;
            factors[idx] *= q.pow(power);
        }
    }
    factors.retain(|&f| f > 1);
    factors.sort();
    factors
}

/// H^1(G, Dbar[m]) with Dbar[m] = (Z/m)^p modulo constants and G acting
/// through `shifts` (generator -> power of the cyclic shift).
pub fn torsion_h1(pres: &Presentation, shifts: &[usize], p: usize, m: u64) -> Result<TorsionH1> {
    let n = pres.ngens();
    if shifts.len() != n {
        return Err(Error::DimensionMismatch("one shift per generator".into()));
    }
    for r in &pres.relators {
        let e = exponent_sums(r, n);
        let tot: i64 = e.iter().zip(shifts).map(|(a, &b)| a * b as i64).sum();
        if tot.rem_euclid(p as i64) != 0 {
            return Err(Error::NotHomomorphism);
        }
    }
    let mb = BigInt::from(m);
    let nrel = pres.relators.len();
    let width = n * p;

    // Fox Jacobian through the shift representation, as integer blocks
    let mut jac = vec![vec![BigInt::zero(); width]; nrel * p];
    for (ri, rel) in pres.relators.iter().enumerate() {
        for j in 0..n {
            for (w, c) in fox_derivative(rel, j).terms() {
                let s = exponent_sums(w, n).iter().zip(shifts).map(|(a, &b)| a * b as i64).sum::<i64>();
                let sm = shift_matrix(p, s.rem_euclid(p as i64) as usize);
                for a in 0..p {
                    for b in 0..p {
                        if sm[a][b] != 0 {
                            jac[ri * p + a][j * p + b] += c * sm[a][b];
                        }
                    }
                }
            }
        }
    }
    // unknowns: cocycle x, then per relator block m*e_a and N multipliers
    let extra = nrel * (p + 1);
    let mut system = vec![vec![BigInt::zero(); width + extra]; nrel * p];
    for r in 0..nrel * p {
        system[r][..width].clone_from_slice(&jac[r]);
        let blk = r / p;
        system[r][width + blk * (p + 1) + r % p] = -mb.clone();
        system[r][width + blk * (p + 1) + p] = BigInt::from(-1);
    }
    let gens_lattice: Vec<Vec<BigInt>> = if nrel == 0 {
        (0..width).map(|j| (0..width).map(|i| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        integer_kernel(&system, width + extra).into_iter().map(|c| c[..width].to_vec()).collect()
    };
    let zb = lattice_basis(&gens_lattice, width);
    let k = zb.len();

    // subgroup: m e_i and N per generator block, plus coboundaries
    let mut sub: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        for a in 0..p {
            let mut v = vec![BigInt::zero(); width];
            v[j * p + a] = mb.clone();
            sub.push(v);
        }
        let mut v = vec![BigInt::zero(); width];
        for a in 0..p {
            v[j * p + a] = BigInt::from(1);
        }
        sub.push(v);
    }
    for a in 0..p {
        let mut e = vec![BigInt::zero(); p];
        e[a] = BigInt::from(1);
        let mut v = Vec::with_capacity(width);
        for &s in shifts {
            let se = shift_vec(&e, s);
            v.extend(se.iter().zip(&e).map(|(x, y)| x - y));
        }
        sub.push(v);
    }
    let mut torus_sub = sub.clone();
    if shifts.iter().any(|&s| s % p != 0) {
        // connecting image of D(xi): coboundary of its m-th root, divided by p
        let s0: Vec<BigInt> = (0..p).map(BigInt::from).collect();
        let mut v = Vec::with_capacity(width);
        for &s in shifts {
            let d: Vec<BigInt> = shift_vec(&s0, s).iter().zip(&s0).map(|(x, y)| x - y).collect();
            let base = d[0].clone();
            v.extend(d.iter().map(|x| (x - &base) / BigInt::from(p as i64)));
        }
        torus_sub.push(v);
    }
    let zrows: Vec<Vec<BigInt>> = (0..width).map(|i| zb.iter().map(|c| c[i].clone()).collect()).collect();
    let coords = |vs: &[Vec<BigInt>]| -> Result<Vec<Vec<BigInt>>> {
        vs.iter()
            .map(|v| solve_integer(&zrows, k, v).ok_or_else(|| Error::NotFound("subgroup outside cocycles".into())))
            .collect()
    };
    let quotient = |cols: &[Vec<BigInt>]| -> Result<(Vec<u64>, BigInt)> {
        if k == 0 {
            return Ok((Vec::new(), BigInt::from(1)));
        }
        let c: Vec<Vec<BigInt>> = (0..k).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
        let s = snf(&c);
        let inv = invariants_of(&s.diagonal, s.rank, k)?;
        let order = if s.rank < k { BigInt::zero() } else { s.diagonal.iter().take(s.rank).product() };
        Ok((inv, order))
    };
    let (invariants, order) = quotient(&coords(&sub)?)?;
    let (torus_invariants, torus_order) = quotient(&coords(&torus_sub)?)?;
    let shifted: Vec<Vec<BigInt>> =
        zb.iter().map(|z| z.chunks(p).flat_map(|blk| shift_vec(blk, 1)).collect()).collect();
    let t_cols = coords(&shifted)?;
    let shift_action = (0..k).map(|i| t_cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(TorsionH1 { p, m, invariants, torus_invariants, cocycle_basis: zb, shift_action, order, torus_order })
}

/// Basis of the lattice spanned by the given integer vectors.
fn lattice_basis(vecs: &[Vec<BigInt>], len: usize) -> Vec<Vec<BigInt>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    // columns of X V for the nonzero part of the Smith form
    let x: Vec<Vec<BigInt>> = (0..len).map(|i| vecs.iter().map(|v| v[i].clone()).collect()).collect();
    let s = snf(&x);
    (0..s.rank).map(|j| (0..len).map(|i| x[i].iter().zip(&s.v).map(|(a, row)| a * &row[j]).sum()).collect()).collect()
}

/// Value of an integer cocycle (generator values as vectors mod m) on a word,
/// using z(ab) = z(a) + a z(b).
pub fn cocycle_eval(values: &[Vec<i64>], shifts: &[usize], w: &[Letter], p: usize, m: u64) -> Vec<i64> {
    let mut acc = vec![0i64; p];
    let mut pos = 0usize;
    let mm = m as i64;
    for l in w {
        let s = shifts[l.gen] % p;
        let val: Vec<i64> = if l.inverse {
            // z(x^-1) = -x^-1 z(x)
            let back = (pos + p - s) % p;
            let v = &values[l.gen];
            (0..p).map(|i| -v[(i + p * p - back) % p]).collect::<Vec<_>>()
        } else {
            let v = &values[l.gen];
            (0..p).map(|i| v[(i + p * p - pos) % p]).collect()
        };
        for i in 0..p {
            acc[i] = (acc[i] + val[i]).rem_euclid(mm);
        }
        pos = if l.inverse { (pos + p - s) % p } else { (pos + s) % p };
    }
    acc
}

/// Values of a homomorphism K -> Dbar[m] on the kernel of the shift
/// character: f(g0^p), and for each extra generator x the orbit
/// f(g0^i x g0^-i), i = 0..p-1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelHomData {
    pub power_value: TorsionDiag,
    pub orbits: Vec<Vec<TorsionDiag>>,
}

/// Obstruction to extending an equivariant homomorphism on the kernel to a
/// class on the whole group: the value on g0^p.
pub fn transgression_obstruction(data: &KernelHomData) -> Result<TorsionDiag> {
    let pv = &data.power_value;
    if pv.shift(1) != *pv {
        return Err(Error::NotEquivariant);
    }
    for orbit in &data.orbits {
        let p = orbit.len();
        if p != pv.p() {
            return Err(Error::DimensionMismatch("orbit length must be p".into()));
        }
        for i in 0..p {
            if orbit[(i + 1) % p] != orbit[i].shift(1) {
                return Err(Error::NotEquivariant);
            }
        }
    }
    Ok(pv.clone())
}

/// Restriction of a cocycle on a presented group to the kernel generators
/// g0^p and g0^i x g0^-i, where g0 = generator `g0` with shift 1.
pub fn restrict_to_kernel(values: &[Vec<i64>], shifts: &[usize], g0: usize, p: usize, m: u64) -> Result<KernelHomData> {
    if shifts[g0] % p != 1 {
        return Err(Error::InvalidArgument("g0 must have shift 1".into()));
    }
    let to_diag = |v: Vec<i64>| TorsionDiag::new(p, m, &v);
    let power_value = to_diag(cocycle_eval(values, shifts, &vec![Letter::new(g0); p], p, m))?;
    let mut orbits = Vec::new();
    for x in (0..shifts.len()).filter(|&x| x != g0 && shifts[x].is_multiple_of(p)) {
        let mut orbit = Vec::new();
        for i in 0..p {
            let mut w = vec![Letter::new(g0); i];
            w.push(Letter::new(x));
            w.extend(vec![Letter::inv(g0); i]);
            orbit.push(to_diag(cocycle_eval(values, shifts, &w, p, m))?);
        }
        orbits.push(orbit);
    }
    Ok(KernelHomData { power_value, orbits })
}
