//! The presentation Z[y,z]/(y^n - 1, (z-y-1) f_n(y,z)) of the Green ring:
//! generalized Fibonacci polynomials, normal forms on the basis y^i z^j
//! with 0 <= i, j < n, and the maps phi/psi realizing the isomorphism with
//! the basis of module classes.
//!
//! Reduction eliminates z-degrees first through the single rewrite
//! z^n -> z^n - (z-y-1)f_n(y,z), whose right side has z-degree < n because
//! (z-y-1)f_n is monic in z of degree n; the z-degree strictly drops, and
//! y-exponents are folded mod n afterwards.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::green::GreenElement;

/// A sparse integer polynomial in y and z, keyed by (y-degree, z-degree).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(y_deg: usize, z_deg: usize, coeff: BigInt) -> Self {
        let mut out = Self::zero();
        if !coeff.is_zero() {
            out.terms.insert((y_deg, z_deg), coeff);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, y_deg: usize, z_deg: usize) -> BigInt {
        self.terms
            .get(&(y_deg, z_deg))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (usize, usize), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert(k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ya, za), ca) in &self.terms {
            for (&(yb, zb), cb) in &rhs.terms {
                out.insert((ya + yb, za + zb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    /// Highest z-degree, or None for the zero polynomial.
    pub fn z_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, z)| z).max()
    }

    /// Integer evaluation, mainly for sequence sanity checks.
    pub fn eval(&self, y: &BigInt, z: &BigInt) -> BigInt {
        let mut s = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            s += c * y.pow(a as u32) * z.pow(b as u32);
        }
        s
    }

    /// Sparse term list {"y", "z", "coeff"} with z-degree major order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut keys: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(y, z)| (z, y));
        serde_json::Value::Array(
            keys.into_iter()
                .map(|(y, z)| {
                    serde_json::json!({ "y": y, "z": z, "coeff": self.terms[&(y, z)].to_string() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(y, z)| std::cmp::Reverse((z, y)));
        let mut first = true;
        for (y, z) in keys {
            let c = &self.terms[&(y, z)];
            let mono = match (y, z) {
                (0, 0) => String::new(),
                (0, 1) => "z".into(),
                (0, z) => format!("z^{z}"),
                (1, 0) => "y".into(),
                (y, 0) => format!("y^{y}"),
                (1, 1) => "yz".into(),
                (1, z) => format!("yz^{z}"),
                (y, 1) => format!("y^{y}z"),
                (y, z) => format!("y^{y}z^{z}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}{mono}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// The generalized Fibonacci polynomial f_m: f_1 = 1, f_2 = z,
/// f_m = z f_(m-1) - y f_(m-2).
pub fn fib_poly(m: usize) -> Result<BivariatePoly> {
    if m < 1 {
        return Err(Error::InvalidArgument(
            "fibonacci polynomial index must be >= 1".into(),
        ));
    }
    let y = BivariatePoly::monomial(1, 0, BigInt::one());
    let z = BivariatePoly::monomial(0, 1, BigInt::one());
    let mut prev = BivariatePoly::one();
    if m == 1 {
        return Ok(prev);
    }
    let mut cur = z.clone();
    for _ in 3..=m {
        let next = z.mul(&cur).sub(&y.mul(&prev));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Closed form of f_m: sum over i of (-1)^i C(m-1-i, i) y^i z^(m-1-2i).
pub fn fib_poly_closed(m: usize) -> Result<BivariatePoly> {
    if m < 1 {
        return Err(Error::InvalidArgument(
            "fibonacci polynomial index must be >= 1".into(),
        ));
    }
    let mut out = BivariatePoly::zero();
    for i in 0..=(m - 1) / 2 {
        let mut c = num::integer::binomial(BigInt::from(m - 1 - i), BigInt::from(i));
        if i % 2 == 1 {
            c = -c;
        }
        out.insert((i, m - 1 - 2 * i), c);
    }
    Ok(out)
}

/// The standard generalized Fibonacci polynomial F_m with the plus-sign
/// recursion F_m = z F_(m-1) + y F_(m-2).
pub fn standard_fib(m: usize) -> Result<BivariatePoly> {
    if m < 1 {
        return Err(Error::InvalidArgument(
            "fibonacci polynomial index must be >= 1".into(),
        ));
    }
    let y = BivariatePoly::monomial(1, 0, BigInt::one());
    let z = BivariatePoly::monomial(0, 1, BigInt::one());
    let mut prev = BivariatePoly::one();
    if m == 1 {
        return Ok(prev);
    }
    let mut cur = z.clone();
    for _ in 3..=m {
        let next = z.mul(&cur).add(&y.mul(&prev));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The two ideal generators (y^n - 1, (z-y-1) f_n(y,z)), fully expanded.
pub fn presentation_relations(n: usize) -> Result<(BivariatePoly, BivariatePoly)> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let y_rel = BivariatePoly::monomial(n, 0, BigInt::one()).sub(&BivariatePoly::one());
    let z_minus_y_minus_1 = BivariatePoly::monomial(0, 1, BigInt::one())
        .sub(&BivariatePoly::monomial(1, 0, BigInt::one()))
        .sub(&BivariatePoly::one());
    let z_rel = z_minus_y_minus_1.mul(&fib_poly(n)?);
    Ok((y_rel, z_rel))
}

/// A residue of Z[y,z]/(y^n - 1, (z-y-1)f_n) on the monomial basis
/// y^i z^j, 0 <= i, j < n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    order: usize,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl NormalForm {
    pub fn zero(order: usize) -> Self {
        NormalForm {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut out = Self::zero(order);
        out.terms.insert((0, 0), BigInt::one());
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, y_deg: usize, z_deg: usize) -> BigInt {
        self.terms
            .get(&(y_deg, z_deg))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn to_poly(&self) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&k, c) in &self.terms {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        normal_form(&self.to_poly().add(&rhs.to_poly()), self.order)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        normal_form(&self.to_poly().mul(&rhs.to_poly()), self.order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut keys: Vec<(usize, usize)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(y, z)| (z, y));
        serde_json::Value::Array(
            keys.into_iter()
                .map(|(y, z)| {
                    serde_json::json!({ "y": y, "z": z, "coeff": self.terms[&(y, z)].to_string() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Reduces a polynomial modulo (y^n - 1, (z-y-1)f_n) to its normal form.
pub fn normal_form(p: &BivariatePoly, n: usize) -> Result<NormalForm> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    // z^n rewrites to z^n - (z-y-1)f_n, which has z-degree < n.
    let z_minus_y_minus_1 = BivariatePoly::monomial(0, 1, BigInt::one())
        .sub(&BivariatePoly::monomial(1, 0, BigInt::one()))
        .sub(&BivariatePoly::one());
    let rewrite =
        BivariatePoly::monomial(0, n, BigInt::one()).sub(&z_minus_y_minus_1.mul(&fib_poly(n)?));
    debug_assert!(rewrite.z_degree().is_none_or(|d| d < n));

    let mut work = p.clone();
    loop {
        let high: Vec<((usize, usize), BigInt)> = work
            .terms
            .iter()
            .filter(|(&(_, z), _)| z >= n)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        if high.is_empty() {
            break;
        }
        for ((y_deg, z_deg), c) in high {
            work.insert((y_deg, z_deg), -c.clone());
            let shifted = BivariatePoly::monomial(y_deg, z_deg - n, c).mul(&rewrite);
            work = work.add(&shifted);
        }
    }

    let mut out = NormalForm::zero(n);
    for (&(y_deg, z_deg), c) in &work.terms {
        let key = (y_deg % n, z_deg);
        match out.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
    Ok(out)
}

/// Expresses a Green-ring element in the presentation:
/// [M(l, r)] -> normal_form(y^(n-r) f_l), extended linearly. This is a ring
/// isomorphism onto Z[y,z]/I.
pub fn phi(u: &GreenElement) -> Result<NormalForm> {
    let n = u.order();
    let mut acc = BivariatePoly::zero();
    for (label, c) in u.terms() {
        let image = BivariatePoly::monomial(n - label.twist(), 0, BigInt::one())
            .mul(&fib_poly(label.length())?);
        acc = acc.add(&image.scale(c));
    }
    normal_form(&acc, n)
}

/// Sends the basis monomial y^i z^j to a^i x^j in the Green ring, extended
/// linearly; inverse of [`phi`] on the n^2-dimensional lattice.
pub fn psi(nf: &NormalForm) -> Result<GreenElement> {
    let n = nf.order();
    let a = GreenElement::gen_a(n)?;
    let x = GreenElement::gen_x(n)?;
    // Power tables a^i, x^j for 0 <= i, j < n.
    let mut a_pows = Vec::with_capacity(n);
    let mut x_pows = Vec::with_capacity(n);
    a_pows.push(GreenElement::one(n)?);
    x_pows.push(GreenElement::one(n)?);
    for i in 1..n {
        a_pows.push(a_pows[i - 1].mul(&a)?);
        x_pows.push(x_pows[i - 1].mul(&x)?);
    }
    let mut out = GreenElement::zero(n);
    for (&(i, j), c) in nf.terms() {
        let monom = a_pows[i].mul(&x_pows[j])?;
        out = out.add(&monom.scale(c))?;
    }
    Ok(out)
}
