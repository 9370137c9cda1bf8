//! Exact arithmetic in the cyclotomic field Q(zeta_n), plus the
//! q-combinatorics (q-numbers, q-factorials, Gaussian binomials) used by the
//! Taft algebra.
//!
//! An element is stored as its unique reduced residue modulo the n-th
//! cyclotomic polynomial Phi_n(x), with arbitrary-precision rational
//! coefficients. Residues mod Phi_n (rather than mod x^n - 1) make the
//! representation a field with canonical forms, so equality and zero-testing
//! are plain coefficient comparisons.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::traits::{One, Zero};
use num::{BigInt, BigRational};

use crate::error::{Error, Result};

fn cyclotomic_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the n-th cyclotomic polynomial Phi_n(x), ascending degree.
///
/// Computed by the recursive exact integer division
/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, memoized globally.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial requires n >= 1");
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            poly = int_poly_exact_div(&poly, &phi_d);
        }
    }
    let arc = Arc::new(poly);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(arc)
        .clone()
}

/// Degree of Q(zeta_n) over Q, i.e. Euler's phi(n).
pub fn field_degree(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Exact division of integer polynomials; `den` must be monic and divide
/// `num` exactly.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// An exact element of Q(zeta_n): the reduced residue mod Phi_n(x).
///
/// The coefficient vector always has length phi(n), so two elements are
/// equal iff their coefficient vectors are identical. The order n is fixed
/// at construction; mixed-order arithmetic is rejected.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloNum {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    /// The zero element of Q(zeta_n).
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        CycloNum {
            order,
            coeffs: vec![BigRational::zero(); field_degree(order)],
        }
    }

    /// The unit element of Q(zeta_n).
    pub fn one(order: usize) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: usize, value: i64) -> Self {
        Self::from_rational(order, BigRational::from(BigInt::from(value)))
    }

    pub fn from_rational(order: usize, value: BigRational) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    /// Builds the residue of the polynomial with the given ascending
    /// coefficients, reduced mod Phi_n.
    pub fn from_residue(order: usize, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1, "order must be positive");
        CycloNum {
            order,
            coeffs: reduce_mod_phi(order, coeffs),
        }
    }

    /// zeta_n^k, i.e. the residue of x^k.
    pub fn root_of_unity(order: usize, k: usize) -> Self {
        let k = k % order;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Self::from_residue(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order == rhs.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.order));
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Ok(Self::from_residue(self.order, prod))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let inv = rhs.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm on
    /// (self, Phi_n) over Q[x].
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        // Invariant: r_i = t_i * Phi + s_i * self for unrecorded t_i.
        let mut r0 = phi;
        let mut r1 = rat_poly_trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r2) = rat_poly_divmod(&r0, &r1);
            let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // Phi_n is irreducible, so the gcd is a nonzero constant.
        assert_eq!(
            r0.len(),
            1,
            "gcd with the cyclotomic polynomial not constant"
        );
        let g = r0[0].clone();
        let coeffs = s0.into_iter().map(|c| c / &g).collect();
        Ok(Self::from_residue(self.order, coeffs))
    }

    /// Integer power, with negative exponents going through the inverse.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Ok(Self::one(self.order));
        }
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Coefficients as exact "p/q" strings, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeff_strings()
                .into_iter()
                .map(serde_json::Value::String)
                .collect(),
        )
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_strings().join(", "))
    }
}

impl std::ops::Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.checked_add(rhs).expect("order mismatch in +")
    }
}

impl std::ops::Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.checked_sub(rhs).expect("order mismatch in -")
    }
}

impl std::ops::Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.checked_mul(rhs).expect("order mismatch in *")
    }
}

impl std::ops::Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Reduce ascending rational coefficients mod Phi_order and pad to length
/// phi(order).
fn reduce_mod_phi(order: usize, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    while coeffs.len() > deg {
        let k = coeffs.len() - 1;
        let lead = coeffs.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        // Subtract lead * x^(k-deg) * Phi; the x^k term cancels since Phi is monic.
        for (j, pj) in phi.iter().take(deg).enumerate() {
            if !pj.is_zero() {
                coeffs[k - deg + j] -= &lead * BigRational::from(pj.clone());
            }
        }
    }
    coeffs.resize(deg, BigRational::zero());
    coeffs
}

fn rat_poly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    rat_poly_trim(out)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    rat_poly_trim(out)
}

/// Division with remainder in Q[x]; `den` must be nonzero (trimmed).
fn rat_poly_divmod(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    let lead_inv = BigRational::one() / den[dd].clone();
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![], rat_poly_trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let t = &c * dj;
            rem[k + j] -= t;
        }
        quot[k] = c;
    }
    (rat_poly_trim(quot), rat_poly_trim(rem))
}

/// The canonical primitive n-th root of unity q = zeta_n.
///
/// q^n = 1 and q^m != 1 for 0 < m < n.
pub fn primitive_root(n: usize) -> Result<CycloNum> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(CycloNum::root_of_unity(n, 1))
}

/// The q-number (m)_q = 1 + q + ... + q^(m-1), with (0)_q = 0.
pub fn q_number(m: usize, q: &CycloNum) -> CycloNum {
    let mut sum = CycloNum::zero(q.order());
    let mut power = CycloNum::one(q.order());
    for _ in 0..m {
        sum = &sum + &power;
        power = &power * q;
    }
    sum
}

/// The q-factorial (m)!_q = (m)_q (m-1)_q ... (1)_q, with (0)!_q = 1.
pub fn q_factorial(m: usize, q: &CycloNum) -> CycloNum {
    let mut prod = CycloNum::one(q.order());
    for j in 1..=m {
        prod = &prod * &q_number(j, q);
    }
    prod
}

/// The Gaussian binomial coefficient, by the inductive rule
/// binom(m, i)_q = q^i binom(m-1, i)_q + binom(m-1, i-1)_q
/// with binom(m, 0)_q = binom(m, m)_q = 1. No division is performed.
pub fn q_binomial(m: usize, i: usize, q: &CycloNum) -> Result<CycloNum> {
    if i > m {
        return Err(Error::InvalidArgument(format!(
            "q-binomial index {i} out of range 0..={m}"
        )));
    }
    let order = q.order();
    // Row-by-row DP over the recursion, with q-powers built incrementally.
    let mut row = vec![CycloNum::one(order)];
    for n in 1..=m {
        let mut next = Vec::with_capacity(n + 1);
        next.push(CycloNum::one(order));
        let mut q_pow = CycloNum::one(order);
        for k in 1..n {
            q_pow = &q_pow * q;
            next.push(&(&q_pow * &row[k]) + &row[k - 1]);
        }
        next.push(CycloNum::one(order));
        row = next;
    }
    Ok(row[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int_vec(p: &[i64]) -> Vec<BigInt> {
        p.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), int_vec(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), int_vec(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), int_vec(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), int_vec(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), int_vec(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(8), int_vec(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), int_vec(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn field_degrees() {
        for (n, d) in [(2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (7, 6), (8, 4)] {
            assert_eq!(field_degree(n), d);
        }
    }

    #[test]
    fn primitive_root_order_two_is_minus_one() {
        let q = primitive_root(2).unwrap();
        assert_eq!(q, CycloNum::from_int(2, -1));
    }

    #[test]
    fn primitive_root_order_four_squares_to_minus_one() {
        let q = primitive_root(4).unwrap();
        assert_eq!(q.pow(2).unwrap(), CycloNum::from_int(4, -1));
    }

    #[test]
    fn primitive_root_has_exact_order_n() {
        for n in 2..=12 {
            let q = primitive_root(n).unwrap();
            assert!(q.pow(n as i64).unwrap().is_one(), "q^{n} != 1");
            for m in 1..n {
                assert!(!q.pow(m as i64).unwrap().is_one(), "q^{m} = 1 at n = {n}");
            }
        }
    }

    #[test]
    fn inverse_of_root_is_last_power() {
        for n in 2..=9 {
            let q = primitive_root(n).unwrap();
            assert_eq!(q.inv().unwrap(), q.pow(n as i64 - 1).unwrap());
        }
    }

    #[test]
    fn primitive_root_rejects_small_order() {
        assert_eq!(primitive_root(1), Err(Error::InvalidOrder(1)));
        assert_eq!(primitive_root(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn add_with_negation_cancels() {
        let q = primitive_root(5).unwrap();
        assert!(q.checked_add(&-&q).unwrap().is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let q = primitive_root(3).unwrap();
        assert_eq!(
            q.checked_div(&CycloNum::zero(3)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(CycloNum::zero(3).inv(), Err(Error::DivisionByZero));
        assert_eq!(CycloNum::zero(3).pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = primitive_root(3).unwrap();
        let b = primitive_root(4).unwrap();
        assert_eq!(
            a.checked_add(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn rational_scalars_reduce() {
        let a = CycloNum::from_rational(6, rat(2, 4));
        let b = CycloNum::from_rational(6, rat(1, 2));
        assert_eq!(a, b);
        assert_eq!(a.coeff_strings()[0], "1/2");
    }

    #[test]
    fn q_number_basics() {
        let n = 5;
        let q = primitive_root(n).unwrap();
        assert!(q_number(0, &q).is_zero());
        let expected = q.checked_add(&CycloNum::one(n)).unwrap();
        assert_eq!(q_number(2, &q), expected);
        assert!(q_number(n, &q).is_zero());
        // at q = 1 the q-number collapses to m
        let one = CycloNum::one(n);
        assert_eq!(q_number(7, &one), CycloNum::from_int(n, 7));
    }

    #[test]
    fn q_factorial_basics() {
        for n in 2..=8 {
            let q = primitive_root(n).unwrap();
            assert!(q_factorial(0, &q).is_one());
            for i in 1..n {
                assert!(!q_factorial(i, &q).is_zero(), "({i})!_q = 0 at n = {n}");
            }
            assert!(q_factorial(n, &q).is_zero());
        }
    }

    #[test]
    fn q_binomial_edges_and_one_step() {
        let q = primitive_root(6).unwrap();
        for m in 0..=6 {
            assert!(q_binomial(m, 0, &q).unwrap().is_one());
            assert!(q_binomial(m, m, &q).unwrap().is_one());
        }
        let one_plus_q = q.checked_add(&CycloNum::one(6)).unwrap();
        assert_eq!(q_binomial(2, 1, &q).unwrap(), one_plus_q);
        assert!(q_binomial(3, 4, &q).is_err());
    }

    #[test]
    fn q_binomial_at_one_is_ordinary_binomial() {
        let one = CycloNum::one(3);
        let binom = |m: usize, i: usize| -> i64 {
            (1..=i).fold(1i64, |acc, k| acc * (m - i + k) as i64 / k as i64)
        };
        for m in 0..=8 {
            for i in 0..=m {
                assert_eq!(
                    q_binomial(m, i, &one).unwrap(),
                    CycloNum::from_int(3, binom(m, i))
                );
            }
        }
    }

    #[test]
    fn q_binomial_vanishing_at_the_order() {
        // At a primitive n-th root, binom(n, i)_q = 0 for 0 < i < n while
        // binom(m, i)_q != 0 for m < n. The vanishing is what makes the
        // n-th power of the skew-primitive generator compatible with the
        // coalgebra structure.
        for n in 2..=8 {
            let q = primitive_root(n).unwrap();
            for i in 1..n {
                assert!(q_binomial(n, i, &q).unwrap().is_zero());
            }
            for m in 1..n {
                for i in 0..=m {
                    assert!(!q_binomial(m, i, &q).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn q_binomial_factorial_identity() {
        // binom(m, i)_q (i)!_q (m-i)!_q = (m)!_q whenever (m-1)!_q != 0
        for n in [4usize, 5, 7] {
            let q = primitive_root(n).unwrap();
            for m in 1..=n {
                if q_factorial(m - 1, &q).is_zero() {
                    continue;
                }
                for i in 1..m {
                    let lhs = q_binomial(m, i, &q)
                        .unwrap()
                        .checked_mul(&q_factorial(i, &q))
                        .unwrap()
                        .checked_mul(&q_factorial(m - i, &q))
                        .unwrap();
                    assert_eq!(lhs, q_factorial(m, &q));
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyclo(order: usize) -> impl Strategy<Value = CycloNum> {
            let deg = field_degree(order);
            proptest::collection::vec((-6i64..=6, 1i64..=4), deg).prop_map(move |cs| {
                CycloNum::from_residue(order, cs.into_iter().map(|(p, q)| rat(p, q)).collect())
            })
        }

        fn arb_order() -> impl Strategy<Value = usize> {
            prop_oneof![Just(2usize), Just(3), Just(4), Just(5), Just(6), Just(8)]
        }

        proptest! {
            #[test]
            fn field_axioms((a, b, c) in arb_order().prop_flat_map(|n| {
                (arb_cyclo(n), arb_cyclo(n), arb_cyclo(n))
            })) {
                let ab_c = (&(&a + &b) + &c).clone();
                let a_bc = (&a + &(&b + &c)).clone();
                prop_assert_eq!(&ab_c, &a_bc);

                let dist_l = &a * &(&b + &c);
                let dist_r = &(&a * &b) + &(&a * &c);
                prop_assert_eq!(&dist_l, &dist_r);

                let mul_assoc_l = &(&a * &b) * &c;
                let mul_assoc_r = &a * &(&b * &c);
                prop_assert_eq!(&mul_assoc_l, &mul_assoc_r);

                prop_assert_eq!(&(&a * &b), &(&b * &a));

                if !a.is_zero() {
                    let inv = a.inv().unwrap();
                    prop_assert!((&a * &inv).is_one());
                }
            }
        }
    }
}
