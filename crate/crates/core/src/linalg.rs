//! Dense matrices over a single cyclotomic field.

use std::fmt;

use crate::cyclo_field::{lcm, CycNum};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycMat {
    rows: usize,
    cols: usize,
    order: usize,
    data: Vec<CycNum>,
}

impl CycMat {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        CycMat { rows, cols, order, data: vec![CycNum::zero(order); rows * cols] }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one(order);
        }
        m
    }

    pub fn scalar(n: usize, c: &CycNum) -> Self {
        let mut m = Self::zeros(n, n, c.order());
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[CycNum]) -> Self {
        let order = entries.iter().fold(1, |o, e| lcm(o, e.order()));
        let n = entries.len();
        let mut m = Self::zeros(n, n, order);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.lift(order);
        }
        m
    }

    /// Builds from rows; entries are lifted to the least common order.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let order = rows.iter().flatten().fold(1, |o, e| lcm(o, e.order()));
        let data = rows.into_iter().flatten().map(|e| e.lift(order)).collect();
        Ok(CycMat { rows: r, cols: c, order, data })
    }

    pub fn from_ints(rows: &[Vec<i64>], order: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flatten().map(|&v| CycNum::from_integer(order, v)).collect();
        CycMat { rows: r, cols: c, order, data }
    }

    pub fn from_fn(rows: usize, cols: usize, order: usize, f: impl Fn(usize, usize) -> CycNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).lift(order));
            }
        }
        CycMat { rows, cols, order, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        let l = lcm(self.order, v.order());
        if l != self.order {
            *self = self.lift(l);
        }
        self.data[i * self.cols + j] = v.lift(l);
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<CycNum> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn lift(&self, to: usize) -> Self {
        if to == self.order {
            return self.clone();
        }
        CycMat { rows: self.rows, cols: self.cols, order: to, data: self.data.iter().map(|e| e.lift(to)).collect() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.order, b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            let (a, b) = Self::common(self, other);
            return a.mul(&b);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let t = a * b;
                    out.data[idx] = &out.data[idx] + &t;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let (a, b) = Self::common(self, other);
        let data = a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect();
        Ok(CycMat { data, ..a })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycMat { data: self.data.iter().map(|x| -x).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let l = lcm(self.order, c.order());
        let c = c.lift(l);
        let data = self.data.iter().map(|x| &x.lift(l) * &c).collect();
        CycMat { rows: self.rows, cols: self.cols, order: l, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.order, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> CycNum {
        let mut t = CycNum::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Returns c when the matrix equals c times the identity.
    pub fn as_scalar(&self) -> Option<CycNum> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if *e != c {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.order);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).invert().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = &m.data[idx] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.data[r * m.cols + j].clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &(&f * &pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : M x = 0}.
    pub fn kernel(&self) -> Vec<Vec<CycNum>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycNum::zero(self.order); self.cols];
                v[f] = CycNum::one(self.order);
                for (i, &pc) in pivots.iter().enumerate() {
                    let e = r.get(i, f);
                    if !e.is_zero() {
                        v[pc] = -e;
                    }
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        if let Some(inv) = self.monomial_inverse() {
            return Ok(inv);
        }
        let aug = Self::from_fn(n, 2 * n, self.order, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                CycNum::one(self.order)
            } else {
                CycNum::zero(self.order)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, self.order, |i, j| r.get(i, j + n).clone()))
    }

    /// Support of a matrix with exactly one nonzero entry per row and column:
    /// `perm[j]` is the row holding the entry of column j.
    pub fn monomial_support(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut row_used = vec![false; n];
        for j in 0..n {
            for i in 0..n {
                if !self.get(i, j).is_zero() {
                    if perm[j] != usize::MAX || row_used[i] {
                        return None;
                    }
                    perm[j] = i;
                    row_used[i] = true;
                }
            }
            if perm[j] == usize::MAX {
                return None;
            }
        }
        Some(perm)
    }

    fn monomial_inverse(&self) -> Option<Self> {
        let perm = self.monomial_support()?;
        let n = self.rows;
        let mut inv = Self::zeros(n, n, self.order);
        for (j, &i) in perm.iter().enumerate() {
            inv.data[j * n + i] = self.get(i, j).invert().ok()?;
        }
        Some(inv)
    }

    pub fn det(&self) -> Result<CycNum> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = CycNum::one(self.order);
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(CycNum::zero(self.order));
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.invert()?;
            for i in c + 1..n {
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let f = &f * &inv;
                for j in c..n {
                    let pv = m.get(c, j).clone();
                    if pv.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    m.data[idx] = &m.data[idx] - &(&f * &pv);
                }
            }
        }
        Ok(det)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.rows, self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Row-major entries as one vector, used for span computations.
    pub fn flatten(&self) -> Vec<CycNum> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, order: usize, v: &[CycNum]) -> Self {
        CycMat { rows, cols, order, data: v.iter().map(|x| x.lift(order)).collect() }
    }
}

impl fmt::Debug for CycMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[order {}]", self.order)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace of K^n.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    len: usize,
    order: usize,
    /// (pivot column, row with 1 at pivot and zeros before it), sorted by pivot.
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl SpanBuilder {
    pub fn new(len: usize, order: usize) -> Self {
        SpanBuilder { len, order, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn reduce(&self, v: &[CycNum]) -> Vec<CycNum> {
        let mut v: Vec<CycNum> = v.iter().map(|x| x.lift(self.order)).collect();
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for j in *p..self.len {
                if !row[j].is_zero() {
                    v[j] = &v[j] - &(&f * &row[j]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds v; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[CycNum]) -> bool {
        let l = v.iter().fold(self.order, |o, x| lcm(o, x.order()));
        if l != self.order {
            self.order = l;
            for (_, row) in self.rows.iter_mut() {
                for x in row.iter_mut() {
                    *x = x.lift(l);
                }
            }
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].invert().expect("nonzero");
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, k: i64) -> CycNum {
        CycNum::zeta(n, k)
    }

    #[test]
    fn inverse_and_det() {
        let m = CycMat::from_ints(&[vec![2, 1], vec![1, 1]], 1);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(m.det().unwrap().is_one());
        let v = CycMat::from_fn(3, 3, 3, |i, j| z(3, (i * j) as i64));
        let vi = v.inverse().unwrap();
        assert!(vi.mul(&v).unwrap().is_identity());
        let s = CycMat::from_ints(&[vec![1, 2], vec![2, 4]], 1);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.det().unwrap().is_zero());
    }

    #[test]
    fn kernel_dimension() {
        let m = CycMat::from_ints(&[vec![1, 2, 3], vec![2, 4, 6]], 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn span_builder_tracks_dimension() {
        let mut s = SpanBuilder::new(3, 3);
        assert!(s.insert(&[z(3, 0), z(3, 1), z(3, 2)]));
        assert!(!s.insert(&[z(3, 1), z(3, 2), z(3, 0)].map(|x| &x * &z(3, 2))));
        assert!(s.insert(&[z(3, 0), z(3, 0), z(3, 0)]));
        assert_eq!(s.dim(), 2);
    }
}
