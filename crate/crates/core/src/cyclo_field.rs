//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is a polynomial in zeta_n of degree below phi(n), stored as
//! integer numerators over one positive common denominator.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) struct CycloData {
    pub phi: usize,
    /// Monic Phi_n, low degree first, length phi + 1.
    pub poly: Vec<i64>,
    /// zeta^k reduced, for 0 <= k < n.
    pub powers: Vec<Vec<i64>>,
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    data(n).poly.clone()
}

fn build(n: usize) -> CycloData {
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div(&poly, &data(d).poly);
        }
    }
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n);
    let mut cur = vec![0i64; phi];
    if phi > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] -= top * poly[j];
            }
        }
    }
    CycloData { phi, poly, powers }
}

pub(crate) fn data(n: usize) -> Arc<CycloData> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(d) = cache().read().unwrap().get(&n) {
        return d.clone();
    }
    let built = Arc::new(build(n));
    cache().write().unwrap().entry(n).or_insert(built).clone()
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    data(n).phi
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / a.gcd(&b) * b
}

#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    order: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycNum {
    fn normalized(order: usize, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return CycNum { order, num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        CycNum { order, num, den }
    }

    pub fn zero(n: usize) -> Self {
        let phi = totient(n);
        CycNum { order: n, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: usize, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = BigInt::from(v);
        Self::normalized(n, z.num, z.den)
    }

    pub fn from_rational(n: usize, q: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = q.numer().clone();
        Self::normalized(n, z.num, q.denom().clone())
    }

    /// Builds an element from rational coordinates in the power basis.
    pub fn from_coeffs(n: usize, coeffs: &[BigRational]) -> Result<Self> {
        let phi = totient(n);
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch(format!("order {n} needs {phi} coefficients, got {}", coeffs.len())));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::normalized(n, num, den))
    }

    /// zeta_n^k.
    pub fn zeta(n: usize, k: i64) -> Self {
        let d = data(n);
        let e = k.rem_euclid(n as i64) as usize;
        let num = d.powers[e].iter().map(|&c| BigInt::from(c)).collect();
        CycNum { order: n, num, den: BigInt::one() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Embeds into Q(zeta_to); `to` must be a multiple of the current order.
    pub fn lift(&self, to: usize) -> Self {
        if to == self.order {
            return self.clone();
        }
        assert!(to.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, to);
        let step = to / self.order;
        let d = data(to);
        let mut num = vec![BigInt::zero(); d.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &w) in d.powers[j * step].iter().enumerate() {
                if w != 0 {
                    num[t] += c * w;
                }
            }
        }
        Self::normalized(to, num, self.den.clone())
    }

    pub fn lift_to_common_order(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm(a.order, b.order);
        (a.lift(l), b.lift(l))
    }

    fn reduce(order: usize, prod: Vec<BigInt>) -> Vec<BigInt> {
        let d = data(order);
        let phi = d.phi;
        let mut prod = prod;
        if prod.len() > phi {
            for i in (phi..prod.len()).rev() {
                let c = std::mem::take(&mut prod[i]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..phi {
                    let w = d.poly[j];
                    if w != 0 {
                        prod[i - phi + j] -= &c * w;
                    }
                }
            }
            prod.truncate(phi);
        }
        prod
    }

    fn mul_same(&self, other: &Self) -> Self {
        let phi = self.num.len();
        if phi == 1 {
            return Self::normalized(self.order, vec![&self.num[0] * &other.num[0]], &self.den * &other.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = Self::reduce(self.order, prod);
        Self::normalized(self.order, num, &self.den * &other.den)
    }

    fn add_same(&self, other: &Self) -> Self {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Self::normalized(self.order, num, self.den.clone());
        }
        let num = self.num.iter().zip(&other.num).map(|(a, b)| a * &other.den + b * &self.den).collect();
        Self::normalized(self.order, num, &self.den * &other.den)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::normalized(self.order, num, self.den.clone())
    }

    /// Multiplicative inverse via extended Euclid against Phi_n.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nonzero: Vec<usize> = (0..self.num.len()).filter(|&i| !self.num[i].is_zero()).collect();
        if nonzero.len() == 1 {
            // c * zeta^j
            let j = nonzero[0];
            let c = BigRational::new(self.num[j].clone(), self.den.clone());
            let inv = Self::zeta(self.order, -(j as i64));
            return Ok(inv.mul_rational(&c.recip()));
        }
        let d = data(self.order);
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = d.poly.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let (g, s) = poly_ext_gcd(&a, &m);
        // g is a nonzero constant since Phi_n is irreducible
        assert_eq!(poly_degree(&g), Some(0), "Phi_n not coprime to input");
        let ginv = g[0].recip();
        let mut coeffs: Vec<BigRational> = s.iter().map(|c| c * &ginv).collect();
        coeffs.resize(d.phi, BigRational::zero());
        Self::from_coeffs(self.order, &coeffs)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.order, num, &self.den * q.denom())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Returns k with self = zeta_n^k, if self is an n-th root of unity
    /// where n is the current order.
    pub fn root_of_unity_index(&self) -> Option<usize> {
        if !self.den.is_one() {
            return None;
        }
        let d = data(self.order);
        (0..self.order).find(|&k| d.powers[k].iter().zip(&self.num).all(|(&w, c)| BigInt::from(w) == *c))
    }
}

fn poly_degree(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // a - q*b
    let n = a.len().max(q.len() + b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    poly_trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (j, y) in b.iter().enumerate().take(db + 1) {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
    }
    (poly_trim(q), poly_trim(r))
}

/// Returns (g, s) with s*a = g mod m.
fn poly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = poly_trim(m.to_vec());
    let mut r1 = poly_trim(a.to_vec());
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            self.add_same(rhs)
        } else {
            let (a, b) = CycNum::lift_to_common_order(self, rhs);
            a.add_same(&b)
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            self.mul_same(rhs)
        } else {
            let (a, b) = CycNum::lift_to_common_order(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            terms.push(match i {
                0 => format!("{q}"),
                1 => format!("{q}*z{}", self.order),
                _ => format!("{q}*z{}^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Values compare after lifting to a common order.
pub fn same_value(a: &CycNum, b: &CycNum) -> bool {
    if a.order == b.order {
        a == b
    } else {
        let (x, y) = CycNum::lift_to_common_order(a, b);
        x == y
    }
}

fn int_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return int_root(&-v, k).map(|r| -r);
    }
    let r = v.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *v {
        Some(r)
    } else {
        None
    }
}

fn rational_root(q: &BigRational, k: u32) -> Option<BigRational> {
    Some(BigRational::new(int_root(q.numer(), k)?, int_root(q.denom(), k)?))
}

/// Finds some r with r^k = a, when a is a root of unity times a rational
/// k-th power. The result may live in a larger cyclotomic field.
pub fn kth_root(a: &CycNum, k: u32) -> Option<CycNum> {
    if a.is_zero() {
        return Some(a.clone());
    }
    let n = a.order;
    let l = lcm(2, n);
    // every root of unity in Q(zeta_n) lies in mu_l, so a^l is rational
    let al = a.lift(l);
    let q_l = al.pow(l as i64).ok()?.as_rational()?;
    let abs = rational_root(&q_l.abs(), l as u32)?;
    // l is even, so -1 is absorbed into the root of unity
    let unit = al.mul_rational(&abs.recip());
    let e = unit.root_of_unity_index()?;
    let qr = rational_root(&abs, k)?;
    let lk = l * k as usize;
    Some(CycNum::zeta(lk, e as i64).mul_rational(&qr))
}
