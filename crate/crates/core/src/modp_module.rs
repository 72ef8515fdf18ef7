//! Linear algebra over F_p and Z/m, integer Smith normal form, symplectic
//! forms over F_p and orbit counts of the symplectic group on hyperplane pairs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd_i128(a as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u64)
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd_i128(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Row-reduces in place; returns pivot columns.
pub fn rref_mod_p(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c] % p, p).expect("prime modulus");
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_multiple_of(p) {
                let f = rows[i][c] % p;
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpSubspace {
    p: u64,
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
}

impl FpSubspace {
    pub fn span(p: u64, ambient_dim: usize, vecs: &[Vec<u64>]) -> Result<Self> {
        if vecs.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {ambient_dim}")));
        }
        let mut rows: Vec<Vec<u64>> = vecs.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
        rref_mod_p(&mut rows, p);
        Ok(Self { p, ambient_dim, basis: rows })
    }

    pub fn zero(p: u64, n: usize) -> Self {
        Self { p, ambient_dim: n, basis: Vec::new() }
    }

    pub fn full(p: u64, n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
        Self { p, ambient_dim: n, basis: rows }
    }

    /// Right kernel of a matrix given by rows (each of length `cols`).
    pub fn kernel(p: u64, cols: usize, matrix: &[Vec<u64>]) -> Result<Self> {
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        let mut rows: Vec<Vec<u64>> = matrix.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let pivots = rref_mod_p(&mut rows, p);
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][free]) % p;
            }
            out.push(v);
        }
        Self::span(p, cols, &out)
    }

    /// Column space of a matrix given by rows.
    pub fn image(p: u64, matrix: &[Vec<u64>]) -> Result<Self> {
        let n = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        let columns: Vec<Vec<u64>> = (0..cols).map(|j| (0..n).map(|i| matrix[i][j]).collect()).collect();
        Self::span(p, n, &columns)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Self::span(self.p, self.ambient_dim, &rows).is_ok_and(|s| s.dim() == self.dim())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch("subspaces live in different spaces".into()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let rows: Vec<Vec<u64>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.p, self.ambient_dim, &rows)
    }

    /// Linear conditions cutting out the subspace (a basis of its annihilator).
    pub fn annihilator(&self) -> Self {
        Self::kernel(self.p, self.ambient_dim, &self.basis).expect("consistent sizes")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let conds: Vec<Vec<u64>> = self.annihilator().basis.into_iter().chain(other.annihilator().basis).collect();
        Self::kernel(self.p, self.ambient_dim, &conds)
    }

    pub fn is_hyperplane(&self) -> bool {
        self.ambient_dim > 0 && self.dim() + 1 == self.ambient_dim
    }

    /// The covector with first nonzero coordinate 1 whose kernel is this
    /// hyperplane.
    pub fn normalized_covector(&self) -> Option<Vec<u64>> {
        if !self.is_hyperplane() {
            return None;
        }
        self.annihilator().basis.into_iter().next()
    }

    pub fn from_covector(p: u64, covector: &[u64]) -> Result<Self> {
        if covector.iter().all(|x| x % p == 0) {
            return Err(Error::InvalidArgument("zero covector".into()));
        }
        Self::kernel(p, covector.len(), &[covector.to_vec()])
    }
}

/// Nonzero covectors with first nonzero coordinate equal to 1.
pub fn normalized_covectors(r: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let tail = r - lead - 1;
        let count = (p as usize).pow(tail as u32);
        for mut idx in 0..count {
            let mut v = vec![0; r];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = idx as u64 % p;
                idx /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

pub fn hyperplanes(r: usize, p: u64) -> Vec<FpSubspace> {
    normalized_covectors(r, p).iter().map(|c| FpSubspace::from_covector(p, c).expect("nonzero")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    /// Diagonal of D, length min(rows, cols); zeros at the end.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// U * M * V = D with U, V unimodular.
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// The invariant factors different from 1 and 0.
    pub fn nontrivial_invariants(&self) -> Vec<BigInt> {
        self.diagonal[..self.rank].iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn identity_big(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn snf(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity_big(rows);
    let mut v = identity_big(cols);

    fn row_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        let (s, d) = if src < dst {
            let (lo, hi) = a.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = a.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }
    fn col_axpy(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        for r in a.iter_mut() {
            if !r[src].is_zero() {
                let t = q * &r[src];
                r[dst] -= t;
            }
        }
    }
    fn col_swap(a: &mut [Vec<BigInt>], i: usize, j: usize) {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
    }

    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_zero() {
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        rank = t + 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, rank, u, v }
}

pub fn mat_mul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Basis (as columns) of the integer kernel {x : M x = 0}.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return identity_big(cols);
    }
    let s = snf(m);
    (s.rank..cols).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Integer solutions y of A y = b, if any.
pub fn solve_integer(a: &[Vec<BigInt>], cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(vec![BigInt::zero(); cols]);
    }
    let s = snf(a);
    let ub: Vec<BigInt> =
        s.u.iter().map(|row| row.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect();
    let mut z = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ubi.div_rem(&s.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(s.v.iter().map(|row| row.iter().zip(&z).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)).collect())
}

/// Howell normal form of the Z/m-span of `rows`: a canonical generating set
/// (so two spans are equal iff their forms are equal).
pub fn howell_form(rows: &[Vec<u64>], n: usize, m: u64) -> Vec<Vec<u64>> {
    let mm = m as i128;
    let mut work: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(mm)).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<(usize, Vec<i128>)> = Vec::new();
    for col in 0..n {
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::new();
        for r in work.drain(..) {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(pv) => {
                    let (g, s, t) = ext_gcd_i128(pv[col], r[col]);
                    let (a, b) = (pv[col] / g, r[col] / g);
                    let comb: Vec<i128> = pv.iter().zip(&r).map(|(x, y)| (s * x + t * y).rem_euclid(mm)).collect();
                    let elim: Vec<i128> = pv.iter().zip(&r).map(|(x, y)| (b * x - a * y).rem_euclid(mm)).collect();
                    if elim.iter().any(|&x| x != 0) {
                        rest.push(elim);
                    }
                    pivot = Some(comb);
                }
            }
        }
        if let Some(mut pv) = pivot {
            let g = num_integer::gcd(pv[col], mm);
            let unit = unit_to_gcd(pv[col], mm);
            for x in pv.iter_mut() {
                *x = (*x * unit).rem_euclid(mm);
            }
            debug_assert_eq!(pv[col], g % mm);
            if pv[col] != 0 {
                let ann: Vec<i128> = pv.iter().map(|x| (x * (mm / g)).rem_euclid(mm)).collect();
                if ann.iter().any(|&x| x != 0) {
                    rest.push(ann);
                }
                out.push((col, pv));
            } else if pv.iter().any(|&x| x != 0) {
                rest.push(pv);
            }
        }
        work = rest;
    }
    // reduce entries above each pivot
    for i in 0..out.len() {
        let (c, d) = (out[i].0, out[i].1[out[i].0]);
        for j in 0..i {
            let q = out[j].1[c].div_euclid(d);
            if q != 0 {
                let src = out[i].1.clone();
                for (x, y) in out[j].1.iter_mut().zip(&src) {
                    *x = (*x - q * y).rem_euclid(mm);
                }
            }
        }
    }
    out.into_iter().map(|(_, r)| r.into_iter().map(|x| x as u64).collect()).collect()
}

/// A unit u mod m with u a = gcd(a, m) mod m.
fn unit_to_gcd(a: i128, m: i128) -> i128 {
    let g = num_integer::gcd(a, m);
    let (a1, m1) = (a / g, m / g);
    let base = if m1 == 1 { 0 } else { ext_gcd_i128(a1.rem_euclid(m1), m1).1.rem_euclid(m1) };
    let mut u = base;
    while num_integer::gcd(u, m) != 1 {
        u += m1;
    }
    u
}

/// Membership in the span described by a Howell form.
pub fn howell_contains(form: &[Vec<u64>], v: &[u64], m: u64) -> bool {
    let mm = m as i128;
    let mut w: Vec<i128> = v.iter().map(|&x| (x as i128).rem_euclid(mm)).collect();
    for row in form {
        let c = row.iter().position(|&x| x != 0).expect("nonzero row");
        let d = row[c] as i128;
        if w[c] % d != 0 {
            return false;
        }
        let q = w[c] / d;
        for (x, y) in w.iter_mut().zip(row) {
            *x = (*x - q * *y as i128).rem_euclid(mm);
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Order of the span described by a Howell form.
pub fn howell_order(form: &[Vec<u64>], m: u64) -> u64 {
    form.iter().map(|row| m / row.iter().copied().find(|&x| x != 0).expect("nonzero row")).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    pub g: usize,
    pub p: u64,
    pub form: Vec<Vec<u64>>,
}

impl SymplecticSpace {
    /// Standard form in the basis (x_1, y_1, ..., x_g, y_g).
    pub fn standard(g: usize, p: u64) -> Self {
        let n = 2 * g;
        let mut form = vec![vec![0; n]; n];
        for i in 0..g {
            form[2 * i][2 * i + 1] = 1;
            form[2 * i + 1][2 * i] = p - 1;
        }
        Self { g, p, form }
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn omega(&self, x: &[u64], y: &[u64]) -> u64 {
        let p = self.p;
        let mut s = 0;
        for i in 0..self.dim() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim() {
                s = (s + x[i] * self.form[i][j] % p * y[j]) % p;
            }
        }
        s
    }

    /// The vector v with omega(x, v) = alpha(x) for all x.
    pub fn dual_vector(&self, alpha: &[u64]) -> Vec<u64> {
        // omega(x, v) = sum_i x_i (form v)_i, so form v = alpha
        let p = self.p;
        let mut v = vec![0; self.dim()];
        for i in 0..self.g {
            // (form v)_{2i} = v_{2i+1}, (form v)_{2i+1} = -v_{2i}
            v[2 * i + 1] = alpha[2 * i] % p;
            v[2 * i] = (p - alpha[2 * i + 1] % p) % p;
        }
        v
    }

    /// Transvection x -> x + omega(x, v) v, as a row-major matrix acting on
    /// column vectors.
    pub fn transvection(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let n = self.dim();
        let p = self.p;
        let mut t = vec![vec![0; n]; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let c = self.omega(&e, v);
            for i in 0..n {
                t[i][j] = ((i == j) as u64 + c * v[i]) % p;
            }
        }
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairType {
    Degenerate,
    NonDegenerate,
}

/// Radical of the form restricted to `sub`.
pub fn radical(sub: &FpSubspace, v: &SymplecticSpace) -> FpSubspace {
    let b = sub.basis();
    let gram: Vec<Vec<u64>> = b.iter().map(|x| b.iter().map(|y| v.omega(x, y)).collect()).collect();
    let coeffs = FpSubspace::kernel(v.p, b.len(), &gram).expect("square gram matrix");
    let vecs: Vec<Vec<u64>> = coeffs
        .basis()
        .iter()
        .map(|c| (0..v.dim()).map(|k| c.iter().zip(b).fold(0, |acc, (ci, bi)| (acc + ci * bi[k]) % v.p)).collect())
        .collect();
    FpSubspace::span(v.p, v.dim(), &vecs).expect("consistent sizes")
}

pub fn pair_degeneracy(e: &FpSubspace, e2: &FpSubspace, v: &SymplecticSpace) -> Result<PairType> {
    if e.ambient_dim() != v.dim() || e2.ambient_dim() != v.dim() {
        return Err(Error::DimensionMismatch("hyperplanes must live in the symplectic space".into()));
    }
    if !e.is_hyperplane() || !e2.is_hyperplane() {
        return Err(Error::InvalidArgument("inputs must be hyperplanes".into()));
    }
    if e == e2 {
        return Err(Error::InvalidArgument("hyperplanes must be distinct".into()));
    }
    let rad = radical(&e.intersect(e2)?, v);
    Ok(if rad.dim() > 0 { PairType::Degenerate } else { PairType::NonDegenerate })
}

/// Same classification from the two covectors: degenerate iff their dual
/// vectors are orthogonal.
pub fn pair_degeneracy_by_covectors(a: &[u64], b: &[u64], v: &SymplecticSpace) -> PairType {
    if v.omega(&v.dual_vector(a), &v.dual_vector(b)) == 0 {
        PairType::Degenerate
    } else {
        PairType::NonDegenerate
    }
}

type FpMat = Vec<Vec<u64>>;

fn mat_mul_mod(a: &FpMat, b: &FpMat, p: u64) -> FpMat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut c = vec![vec![0; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                c[i][j] = (c[i][j] + a[i][t] * b[t][j]) % p;
            }
        }
    }
    c
}

/// One transvection per normalized vector; they generate Sp(2g, F_p).
pub fn transvection_generators(v: &SymplecticSpace) -> Vec<FpMat> {
    normalized_covectors(v.dim(), v.p).iter().map(|w| v.transvection(w)).collect()
}

/// Closure of the transvections, as flattened matrices.
pub fn symplectic_group(v: &SymplecticSpace, cap: usize) -> Result<Vec<FpMat>> {
    let gens = transvection_generators(v);
    let n = v.dim();
    let id: FpMat = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    let mut seen: HashSet<FpMat> = HashSet::from([id.clone()]);
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let y = mat_mul_mod(&elems[i], g, v.p);
            if seen.insert(y.clone()) {
                if elems.len() >= cap {
                    return Err(Error::TooLarge(cap));
                }
                elems.push(y);
            }
        }
        i += 1;
    }
    Ok(elems)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    /// Degeneracy type of each orbit, with None if an orbit mixes types.
    pub orbit_types: Vec<Option<PairType>>,
}

fn normalize_covector(a: &[u64], p: u64) -> Vec<u64> {
    let lead = a.iter().copied().find(|&x| x != 0).expect("nonzero covector");
    let inv = inv_mod(lead, p).expect("prime");
    a.iter().map(|x| x * inv % p).collect()
}

/// Orbits of Sp(2g, F_p) on ordered pairs of distinct hyperplanes.
pub fn sp_orbits_on_hyperplane_pairs(g: usize, p: u64) -> Result<OrbitReport> {
    if g == 0 || (p as usize).pow(2 * g as u32) > 10_000 {
        return Err(Error::TooLarge(10_000));
    }
    let v = SymplecticSpace::standard(g, p);
    let covs = normalized_covectors(v.dim(), p);
    let index: HashMap<Vec<u64>, usize> = covs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let h = covs.len();
    // T(ker alpha) = ker(alpha T^-1); the inverse of a transvection by w is
    // the transvection by -w, so act with those
    let actions: Vec<Vec<usize>> = normalized_covectors(v.dim(), p)
        .iter()
        .map(|w| {
            let neg: Vec<u64> = w.iter().map(|x| (p - x) % p).collect();
            let tinv = v.transvection(&neg);
            covs.iter()
                .map(|a| {
                    let row = mat_mul_mod(&vec![a.clone()], &tinv, p).remove(0);
                    index[&normalize_covector(&row, p)]
                })
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..h * h).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..h {
        for b in (0..h).filter(|&b| b != a) {
            for act in &actions {
                let (x, y) = (find(&mut parent, a * h + b), find(&mut parent, act[a] * h + act[b]));
                if x != y {
                    parent[x] = y;
                }
            }
        }
    }
    let mut orbits: HashMap<usize, (usize, Option<PairType>, bool)> = HashMap::new();
    let spaces: Vec<FpSubspace> = covs.iter().map(|c| FpSubspace::from_covector(p, c).unwrap()).collect();
    for a in 0..h {
        for b in (0..h).filter(|&b| b != a) {
            let root = find(&mut parent, a * h + b);
            let t = pair_degeneracy(&spaces[a], &spaces[b], &v)?;
            let e = orbits.entry(root).or_insert((0, Some(t), true));
            e.0 += 1;
            if e.1 != Some(t) {
                e.2 = false;
            }
        }
    }
    let mut entries: Vec<(usize, Option<PairType>)> =
        orbits.into_values().map(|(n, t, pure)| (n, if pure { t } else { None })).collect();
    entries.sort_by_key(|e| e.0);
    Ok(OrbitReport {
        orbit_count: entries.len(),
        orbit_sizes: entries.iter().map(|e| e.0).collect(),
        orbit_types: entries.iter().map(|e| e.1).collect(),
    })
}

pub fn sp_orbit_count_on_hyperplane_pairs(g: usize, p: u64) -> Result<usize> {
    Ok(sp_orbits_on_hyperplane_pairs(g, p)?.orbit_count)
}

/// A hyperplane meeting both E and E' in the type opposite to (E, E').
pub fn find_e0(e: &FpSubspace, e2: &FpSubspace, v: &SymplecticSpace) -> Result<FpSubspace> {
    let target = match pair_degeneracy(e, e2, v)? {
        PairType::Degenerate => PairType::NonDegenerate,
        PairType::NonDegenerate => PairType::Degenerate,
    };
    for h in hyperplanes(v.dim(), v.p) {
        if &h == e || &h == e2 {
            continue;
        }
        if pair_degeneracy(e, &h, v)? == target && pair_degeneracy(e2, &h, v)? == target {
            return Ok(h);
        }
    }
    Err(Error::NotFound("hyperplane with the opposite intersection type".into()))
}
