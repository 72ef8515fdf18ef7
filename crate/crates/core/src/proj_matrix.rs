//! Invertible matrices modulo scalars, as a model of PSL(p, C).
//!
//! The stored lift is divided by its first nonzero entry in row-major order,
//! so two matrices define the same class iff their stored lifts agree.
//! All standard matrices for a prime p live over Q(zeta_p).

use std::fmt;

use crate::cyclo_field::{lcm, CycNum};
use crate::error::{Error, Result};
use crate::is_prime;
use crate::linalg::CycMat;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMat {
    p: usize,
    mat: CycMat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Commutator {
    /// ABA^-1B^-1 = xi^k I
    Scalar(usize),
    NotScalar,
}

fn check_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

impl ProjMat {
    /// Class of an invertible square matrix.
    pub fn new(lift: CycMat) -> Result<Self> {
        if !lift.is_square() {
            return Err(Error::DimensionMismatch("projective class of non-square matrix".into()));
        }
        if lift.monomial_support().is_none() && lift.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::canonical(lift))
    }

    fn canonical(lift: CycMat) -> Self {
        let p = lift.rows();
        let first =
            lift.entries().iter().find(|x| !x.is_zero()).expect("invertible matrix has a nonzero entry").clone();
        let mat = if first.is_one() { lift } else { lift.scale(&first.invert().unwrap()) };
        ProjMat { p, mat }
    }

    pub fn identity(p: usize) -> Self {
        ProjMat { p, mat: CycMat::identity(p, p) }
    }

    pub fn dim(&self) -> usize {
        self.p
    }

    pub fn order_of_field(&self) -> usize {
        self.mat.order()
    }

    /// The canonical lift.
    pub fn lift(&self) -> &CycMat {
        &self.mat
    }

    /// Same class, with entries embedded in Q(zeta_to).
    pub fn lift_field(&self, to: usize) -> Self {
        ProjMat { p: self.p, mat: self.mat.lift(to) }
    }

    /// Class equality across different field orders.
    pub fn same_class(&self, other: &Self) -> bool {
        if self.mat.order() == other.mat.order() {
            return self == other;
        }
        let l = lcm(self.mat.order(), other.mat.order());
        self.lift_field(l) == other.lift_field(l)
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "dimension mismatch");
        Self::canonical(self.mat.mul(&other.mat).expect("square"))
    }

    pub fn inv(&self) -> Self {
        Self::canonical(self.mat.inverse().expect("invertible"))
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::canonical(self.mat.pow(e).expect("invertible"))
    }

    pub fn conj(&self, by: &Self) -> Self {
        by.mul(self).mul(&by.inv())
    }

    /// Least k >= 1 with A^k = 1, or Overflow past cap.
    pub fn proj_order(&self, cap: usize) -> Result<usize> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(self);
        }
        Err(Error::Overflow(cap))
    }

    /// (k, d) with A proportional to diag(d) M_c^k, when A is monomial with
    /// cyclic-shift support.
    pub fn monomial_layer(&self) -> Option<(usize, Vec<CycNum>)> {
        let perm = self.mat.monomial_support()?;
        let p = self.p;
        let k = (perm[0] + p) % p;
        if (0..p).any(|j| perm[j] != (j + k) % p) {
            return None;
        }
        let mut d = vec![CycNum::zero(self.mat.order()); p];
        for j in 0..p {
            d[(j + k) % p] = self.mat.get((j + k) % p, j).clone();
        }
        Some((k, d))
    }

    pub fn is_monomial_cyclic(&self) -> bool {
        self.monomial_layer().is_some()
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.monomial_layer(), Some((0, _)))
    }
}

impl fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMat{:?}", self.mat)
    }
}

/// D(xi) = diag(xi^i); for p = 2 the class of diag(i, -i), i.e. diag(1, -1).
pub fn mat_d_xi(p: usize) -> Result<ProjMat> {
    check_prime(p)?;
    let d: Vec<CycNum> = (0..p).map(|i| CycNum::zeta(p, i as i64)).collect();
    ProjMat::new(CycMat::diagonal(&d))
}

/// Permutation matrix with M e_i = e_{sigma(i)}.
pub fn mat_perm(sigma: &[usize]) -> Result<ProjMat> {
    let p = sigma.len();
    let mut seen = vec![false; p];
    for &s in sigma {
        if s >= p || seen[s] {
            return Err(Error::NotPermutation(p));
        }
        seen[s] = true;
    }
    let mut m = CycMat::zeros(p, p, p.max(1));
    for (i, &s) in sigma.iter().enumerate() {
        m.set(s, i, CycNum::one(p.max(1)));
    }
    ProjMat::new(m)
}

/// M_c for the cycle c = (0, 1, ..., p-1).
pub fn mat_mc(p: usize) -> Result<ProjMat> {
    check_prime(p)?;
    let c: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    mat_perm(&c)
}

/// sigma_l(i) = l i.
pub fn sigma_mult(p: usize, l: usize) -> Result<ProjMat> {
    check_prime(p)?;
    if l.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("{l} is not a unit mod {p}")));
    }
    let s: Vec<usize> = (0..p).map(|i| (i * l) % p).collect();
    mat_perm(&s)
}

/// (xi^{ij}).
pub fn vandermonde(p: usize) -> Result<ProjMat> {
    check_prime(p)?;
    ProjMat::new(CycMat::from_fn(p, p, p, |i, j| CycNum::zeta(p, (i * j) as i64)))
}

/// diag(xi^{i(i+1)/2}), p odd.
pub fn mat_s(p: usize) -> Result<ProjMat> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument("S needs an odd prime".into()));
    }
    let d: Vec<CycNum> = (0..p).map(|i| CycNum::zeta(p, (i * (i + 1) / 2) as i64)).collect();
    ProjMat::new(CycMat::diagonal(&d))
}

/// Diagonal class with the given entries.
pub fn diag(entries: &[CycNum]) -> Result<ProjMat> {
    ProjMat::new(CycMat::diagonal(entries))
}

/// Returns k when ABA^-1B^-1 = xi^k I on any lifts.
pub fn scalar_commutator(a: &ProjMat, b: &ProjMat) -> Commutator {
    let p = a.p;
    let (x, y) = (a.lift(), b.lift());
    let c = (|| -> Result<CycMat> { x.mul(y)?.mul(&x.inverse()?)?.mul(&y.inverse()?) })();
    let Some(s) = c.ok().and_then(|c| c.as_scalar()) else {
        return Commutator::NotScalar;
    };
    let l = lcm(s.order(), p);
    let s = s.lift(l);
    for k in 0..p {
        if CycNum::zeta(p, k as i64).lift(l) == s {
            return Commutator::Scalar(k);
        }
    }
    Commutator::NotScalar
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> CycNum {
        CycNum::from_rational(1, &BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    #[test]
    fn d_xi_shapes() {
        let d3 = mat_d_xi(3).unwrap();
        for i in 0..3 {
            assert_eq!(d3.lift().get(i, i), &CycNum::zeta(3, i as i64));
        }
        let d2 = mat_d_xi(2).unwrap();
        assert_eq!(d2.lift().get(1, 1), &CycNum::from_integer(2, -1));
        let i = CycNum::zeta(4, 1);
        let from_i = diag(&[i.clone(), -&i]).unwrap();
        assert!(from_i.same_class(&d2));
        let mc_i = ProjMat::new(
            CycMat::from_rows(vec![vec![CycNum::zero(4), i.clone()], vec![i.clone(), CycNum::zero(4)]]).unwrap(),
        )
        .unwrap();
        assert!(mc_i.same_class(&mat_mc(2).unwrap()));
        for p in [2, 3, 5, 7] {
            assert!(mat_d_xi(p).unwrap().pow(p as i64).is_identity());
        }
        assert_eq!(mat_d_xi(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn normalizer_identities() {
        for p in [3, 5, 7] {
            let v = vandermonde(p).unwrap();
            let d = mat_d_xi(p).unwrap();
            let mc = mat_mc(p).unwrap();
            assert_eq!(d.conj(&v), mc.inv());
            assert_eq!(mc.conj(&v), d);
            let s = mat_s(p).unwrap();
            assert_eq!(mc.conj(&s), d.mul(&mc));
            for l in 1..p {
                let sl = sigma_mult(p, l).unwrap();
                assert_eq!(mc.conj(&sl), mc.pow(l as i64));
            }
        }
        assert!(mat_s(2).is_err());
        assert_eq!(mat_perm(&[0, 0, 1]), Err(Error::NotPermutation(3)));
    }

    #[test]
    fn commutator_table() {
        for p in [2, 3, 5, 7] {
            let d = mat_d_xi(p).unwrap();
            let mc = mat_mc(p).unwrap();
            for k in 0..p {
                assert_eq!(scalar_commutator(&d, &mc.pow(k as i64)), Commutator::Scalar(k));
            }
        }
        let a = diag(&[q(1, 1), q(2, 1), q(1, 2)]).unwrap();
        assert_eq!(scalar_commutator(&mat_mc(3).unwrap(), &a), Commutator::NotScalar);
        assert_eq!(scalar_commutator(&a, &a), Commutator::Scalar(0));
    }

    #[test]
    fn orders() {
        assert_eq!(mat_mc(5).unwrap().proj_order(10), Ok(5));
        assert_eq!(mat_d_xi(3).unwrap().proj_order(10), Ok(3));
        let a = diag(&[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(a.proj_order(16), Err(Error::Overflow(16)));
    }

    #[test]
    fn layers() {
        let mc = mat_mc(5).unwrap();
        let d = mat_d_xi(5).unwrap();
        assert_eq!(mc.pow(3).monomial_layer().unwrap().0, 3);
        assert_eq!(d.mul(&mc.pow(2)).monomial_layer().unwrap().0, 2);
        assert!(d.is_diagonal());
        assert!(!vandermonde(5).unwrap().is_monomial_cyclic());
        // a transposition is monomial but not a cyclic shift
        assert!(!mat_perm(&[1, 0, 2]).unwrap().is_monomial_cyclic());
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_scalars(entries in prop::collection::vec(-5i64..6, 9), s in 1i64..7, sk in 0i64..3) {
            let m = CycMat::from_fn(3, 3, 3, |i, j| CycNum::from_integer(3, entries[3 * i + j]));
            prop_assume!(!m.det().unwrap().is_zero());
            let lam = CycNum::zeta(3, sk).scale_int(s);
            let a = ProjMat::new(m.clone()).unwrap();
            let b = ProjMat::new(m.scale(&lam)).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(ProjMat::new(a.lift().clone()).unwrap(), a);
        }

        #[test]
        fn commutator_antisymmetry(p in prop::sample::select(vec![2usize, 3, 5]), a in 0i64..5, b in 0i64..5, c in 0i64..5, d in 0i64..5) {
            let dx = mat_d_xi(p).unwrap();
            let mc = mat_mc(p).unwrap();
            let x = dx.pow(a).mul(&mc.pow(b));
            let y = dx.pow(c).mul(&mc.pow(d));
            match (scalar_commutator(&x, &y), scalar_commutator(&y, &x)) {
                (Commutator::Scalar(k1), Commutator::Scalar(k2)) => prop_assert_eq!((k1 + k2) % p, 0),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
