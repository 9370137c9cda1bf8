//! The Taft algebra H_n(q): generators g, h with g^n = 1, h^n = 0,
//! hg = q g h, together with its Hopf structure.
//!
//! Elements are stored on the monomial basis g^i h^j, 0 <= i, j < n, with
//! g-powers to the left of h-powers. The commutation h^j g^i = q^(ij) g^i h^j
//! is applied eagerly during multiplication, so every element has a unique
//! canonical form and equality is a map comparison.

use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use num::BigRational;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

type Monomial = (usize, usize);

/// An element of H_n(q) as a sparse combination of basis monomials g^i h^j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaftElement {
    order: usize,
    terms: BTreeMap<Monomial, CycloNum>,
}

/// An element of H_n(q) (x) H_n(q), keyed by pairs of basis monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaftTensorElement {
    order: usize,
    terms: BTreeMap<(Monomial, Monomial), CycloNum>,
}

impl TaftElement {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 2, "Taft algebra needs order >= 2");
        TaftElement {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 0, CycloNum::one(order))
    }

    /// The grouplike generator g.
    pub fn gen_g(order: usize) -> Self {
        Self::monomial(order, 1, 0, CycloNum::one(order))
    }

    /// The skew-primitive generator h.
    pub fn gen_h(order: usize) -> Self {
        Self::monomial(order, 0, 1, CycloNum::one(order))
    }

    /// coeff * g^i h^j with exponent normalization (g^n -> 1, h^n -> 0).
    pub fn monomial(order: usize, g_exp: usize, h_exp: usize, coeff: CycloNum) -> Self {
        assert!(order >= 2, "Taft algebra needs order >= 2");
        assert_eq!(coeff.order(), order, "coefficient order mismatch");
        let mut out = Self::zero(order);
        if h_exp < order && !coeff.is_zero() {
            out.terms.insert((g_exp % order, h_exp), coeff);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &CycloNum)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, g_exp: usize, h_exp: usize) -> CycloNum {
        self.terms
            .get(&(g_exp, h_exp))
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(self.order))
    }

    /// All n^2 basis monomials in canonical order.
    pub fn basis_monomials(order: usize) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                out.push((i, j));
            }
        }
        out
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

    fn insert_term(&mut self, m: Monomial, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.insert_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&CycloNum::from_int(rhs.order, -1)))
    }

    pub fn scale(&self, s: &CycloNum) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        TaftElement {
            order: self.order,
            terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect(),
        }
    }

    /// Product in H_n(q): bilinear extension of
    /// (g^a h^b)(g^c h^d) = q^(bc) g^(a+c) h^(b+d).
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let n = self.order;
        let mut out = Self::zero(n);
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &rhs.terms {
                if b + d >= n {
                    continue; // h^n = 0
                }
                let twist = CycloNum::root_of_unity(n, (b * c) % n);
                let coeff = &(ca * cb) * &twist;
                out.insert_term(((a + c) % n, b + d), coeff);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The coproduct, extended multiplicatively from
    /// Delta(g) = g (x) g and Delta(h) = 1 (x) h + h (x) g.
    pub fn coproduct(&self) -> TaftTensorElement {
        let n = self.order;
        let delta_h = {
            let mut t = TaftTensorElement::zero(n);
            t.insert_term(((0, 0), (0, 1)), CycloNum::one(n));
            t.insert_term(((0, 1), (1, 0)), CycloNum::one(n));
            t
        };
        let mut out = TaftTensorElement::zero(n);
        for (&(i, j), c) in &self.terms {
            // Delta(g^i h^j) = (g^i (x) g^i) * Delta(h)^j
            let mut term = TaftTensorElement::zero(n);
            term.insert_term(((i, 0), (i, 0)), c.clone());
            for _ in 0..j {
                term = term.mul(&delta_h).expect("orders agree");
            }
            out = out.add(&term).expect("orders agree");
        }
        out
    }

    /// The counit: eps(g^i h^j) = 1 if j = 0 else 0, extended linearly.
    pub fn counit(&self) -> CycloNum {
        let mut s = CycloNum::zero(self.order);
        for (&(_, j), c) in &self.terms {
            if j == 0 {
                s = &s + c;
            }
        }
        s
    }

    /// The antipode: anti-algebra map with S(g) = g^(n-1) and
    /// S(h) = -q^(-1) g^(n-1) h.
    pub fn antipode(&self) -> Self {
        let n = self.order;
        let q = CycloNum::root_of_unity(n, 1);
        let s_h = Self::monomial(n, n - 1, 1, -&q.inv().expect("root of unity is invertible"));
        let mut out = Self::zero(n);
        for (&(i, j), c) in &self.terms {
            // S(g^i h^j) = S(h)^j g^(n-i)
            let mut term = s_h.pow(j).expect("same order");
            term = term
                .mul(&Self::monomial(n, (n - i) % n, 0, CycloNum::one(n)))
                .expect("same order");
            out = out.add(&term.scale(c)).expect("same order");
        }
        out
    }

    /// The orthogonal idempotent e_i = (1/n) * sum_j q^(-ij) g^j.
    pub fn idempotent(order: usize, i: usize) -> Self {
        assert!(i < order, "idempotent index out of range");
        let inv_n = BigRational::new(BigInt::from(1), BigInt::from(order as i64));
        let mut out = Self::zero(order);
        for j in 0..order {
            let root = CycloNum::root_of_unity(order, (order - i % order) * j % order);
            out.insert_term((j, 0), root.scale(&inv_n));
        }
        out
    }

    /// Matrix of left multiplication by self on the monomial basis,
    /// basis index (i, j) -> i*n + j.
    pub fn left_mul_matrix(&self) -> Matrix {
        let n = self.order;
        let mut m = Matrix::zero(n, n * n, n * n);
        for (col, &(i, j)) in Self::basis_monomials(n).iter().enumerate() {
            let prod = self
                .mul(&Self::monomial(n, i, j, CycloNum::one(n)))
                .expect("same order");
            for (&(a, b), c) in &prod.terms {
                m.set(a * n + b, col, c.clone());
            }
        }
        m
    }

    /// Coassociativity on this element: (Delta (x) id)Delta = (id (x) Delta)Delta.
    pub fn satisfies_coassociativity(&self) -> bool {
        let delta = self.coproduct();
        let mut left: BTreeMap<(Monomial, Monomial, Monomial), CycloNum> = BTreeMap::new();
        let mut right: BTreeMap<(Monomial, Monomial, Monomial), CycloNum> = BTreeMap::new();
        let n = self.order;
        for (&(m1, m2), c) in &delta.terms {
            let inner1 = Self::monomial(n, m1.0, m1.1, CycloNum::one(n)).coproduct();
            for (&(a, b), d) in &inner1.terms {
                add_triple(&mut left, (a, b, m2), &(c * d));
            }
            let inner2 = Self::monomial(n, m2.0, m2.1, CycloNum::one(n)).coproduct();
            for (&(a, b), d) in &inner2.terms {
                add_triple(&mut right, (m1, a, b), &(c * d));
            }
        }
        left == right
    }

    /// Counit axiom on this element: (eps (x) id)Delta = id = (id (x) eps)Delta.
    pub fn satisfies_counit_axiom(&self) -> bool {
        let delta = self.coproduct();
        let n = self.order;
        let mut left = Self::zero(n);
        let mut right = Self::zero(n);
        for (&(m1, m2), c) in &delta.terms {
            let eps1 = Self::monomial(n, m1.0, m1.1, CycloNum::one(n)).counit();
            left = left
                .add(&Self::monomial(n, m2.0, m2.1, &eps1 * c))
                .expect("same order");
            let eps2 = Self::monomial(n, m2.0, m2.1, CycloNum::one(n)).counit();
            right = right
                .add(&Self::monomial(n, m1.0, m1.1, &eps2 * c))
                .expect("same order");
        }
        left == *self && right == *self
    }

    /// Antipode axiom on this element:
    /// m(S (x) id)Delta(a) = eps(a) 1 = m(id (x) S)Delta(a).
    pub fn satisfies_antipode_axiom(&self) -> bool {
        let delta = self.coproduct();
        let n = self.order;
        let mut left = Self::zero(n);
        let mut right = Self::zero(n);
        for (&(m1, m2), c) in &delta.terms {
            let a1 = Self::monomial(n, m1.0, m1.1, c.clone());
            let a2 = Self::monomial(n, m2.0, m2.1, CycloNum::one(n));
            left = left
                .add(&a1.antipode().mul(&a2).expect("same order"))
                .expect("same order");
            right = right
                .add(&a1.mul(&a2.antipode()).expect("same order"))
                .expect("same order");
        }
        let expected = Self::one(n).scale(&self.counit());
        left == expected && right == expected
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| serde_json::json!({ "g": i, "h": j, "coeff": c.to_json() }))
            .collect();
        serde_json::json!({ "n": self.order, "terms": terms })
    }
}

fn add_triple(
    map: &mut BTreeMap<(Monomial, Monomial, Monomial), CycloNum>,
    key: (Monomial, Monomial, Monomial),
    c: &CycloNum,
) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl fmt::Display for TaftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mono = match (i, j) {
                    (0, 0) => "1".to_string(),
                    (i, 0) => format!("g^{i}"),
                    (0, j) => format!("h^{j}"),
                    (i, j) => format!("g^{i} h^{j}"),
                };
                format!("{c}*{mono}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TaftTensorElement {
    pub fn zero(order: usize) -> Self {
        TaftTensorElement {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((Monomial, Monomial), &CycloNum)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    fn insert_term(&mut self, key: (Monomial, Monomial), c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.insert_term(k, c.clone());
        }
        Ok(out)
    }

    /// Componentwise product (a (x) b)(c (x) d) = ac (x) bd.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let n = self.order;
        let mut out = Self::zero(n);
        for (&(l1, l2), c1) in &self.terms {
            for (&(r1, r2), c2) in &rhs.terms {
                let left = mono_mul(n, l1, r1);
                let right = mono_mul(n, l2, r2);
                if let (Some((lm, lc)), Some((rm, rc))) = (left, right) {
                    let coeff = &(&(c1 * c2) * &lc) * &rc;
                    out.insert_term((lm, rm), coeff);
                }
            }
        }
        Ok(out)
    }
}

/// Product of basis monomials: (g^a h^b)(g^c h^d) =
/// q^(bc) g^(a+c) h^(b+d), or None when h^n = 0 kills it.
fn mono_mul(n: usize, l: Monomial, r: Monomial) -> Option<(Monomial, CycloNum)> {
    let (a, b) = l;
    let (c, d) = r;
    if b + d >= n {
        return None;
    }
    let coeff = CycloNum::root_of_unity(n, (b * c) % n);
    Some((((a + c) % n, b + d), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::primitive_root;

    #[test]
    fn defining_relations() {
        for n in 2..=6 {
            let g = TaftElement::gen_g(n);
            let h = TaftElement::gen_h(n);
            let q = primitive_root(n).unwrap();
            // hg = q gh
            let hg = h.mul(&g).unwrap();
            let gh = g.mul(&h).unwrap();
            assert_eq!(hg, gh.scale(&q));
            // g^n = 1
            assert_eq!(g.pow(n).unwrap(), TaftElement::one(n));
            // g^(n-1) g = 1
            assert_eq!(g.pow(n - 1).unwrap().mul(&g).unwrap(), TaftElement::one(n));
            // h^(n-1) h = 0, h^(n-1) != 0
            assert!(!h.pow(n - 1).unwrap().is_zero());
            assert!(h.pow(n - 1).unwrap().mul(&h).unwrap().is_zero());
        }
    }

    #[test]
    fn coproduct_on_generators() {
        let n = 4;
        let g = TaftElement::gen_g(n);
        let h = TaftElement::gen_h(n);
        let dg = g.coproduct();
        let terms: Vec<_> = dg.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, ((1, 0), (1, 0)));
        assert!(terms[0].1.is_one());

        let dh = h.coproduct();
        let terms: Vec<_> = dh.terms().collect();
        assert_eq!(terms.len(), 2);
        // 1 (x) h + h (x) g
        assert_eq!(terms[0].0, ((0, 0), (0, 1)));
        assert_eq!(terms[1].0, ((0, 1), (1, 0)));

        let one = TaftElement::one(n);
        let d1 = one.coproduct();
        let terms: Vec<_> = d1.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, ((0, 0), (0, 0)));
    }

    #[test]
    fn coproduct_is_algebra_map() {
        for n in 2..=5 {
            let g = TaftElement::gen_g(n);
            let h = TaftElement::gen_h(n);
            for (a, b) in [(&g, &h), (&h, &h), (&g, &g), (&h, &g)] {
                let lhs = a.mul(b).unwrap().coproduct();
                let rhs = a.coproduct().mul(&b.coproduct()).unwrap();
                assert_eq!(lhs, rhs, "Delta not multiplicative at n = {n}");
            }
        }
    }

    #[test]
    fn counit_values() {
        let n = 5;
        for i in 0..n {
            for j in 0..n {
                let m = TaftElement::monomial(n, i, j, CycloNum::one(n));
                let e = m.counit();
                if j == 0 {
                    assert!(e.is_one());
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn antipode_on_generators() {
        for n in 2..=6 {
            let g = TaftElement::gen_g(n);
            let h = TaftElement::gen_h(n);
            let q = primitive_root(n).unwrap();
            assert_eq!(
                g.antipode(),
                TaftElement::monomial(n, n - 1, 0, CycloNum::one(n))
            );
            let expected = TaftElement::monomial(n, n - 1, 1, -&q.inv().unwrap());
            assert_eq!(h.antipode(), expected);
        }
    }

    #[test]
    fn antipode_is_anti_multiplicative() {
        for n in 2..=5 {
            let g = TaftElement::gen_g(n);
            let h = TaftElement::gen_h(n);
            for (a, b) in [(&g, &h), (&h, &g), (&h, &h)] {
                let lhs = a.mul(b).unwrap().antipode();
                let rhs = b.antipode().mul(&a.antipode()).unwrap();
                assert_eq!(lhs, rhs, "S not anti-multiplicative at n = {n}");
            }
        }
    }

    #[test]
    fn hopf_axioms_on_all_basis_monomials() {
        for n in 2..=4 {
            for (i, j) in TaftElement::basis_monomials(n) {
                let m = TaftElement::monomial(n, i, j, CycloNum::one(n));
                assert!(
                    m.satisfies_coassociativity(),
                    "coassoc fails at {n} {i} {j}"
                );
                assert!(m.satisfies_counit_axiom(), "counit fails at {n} {i} {j}");
                assert!(
                    m.satisfies_antipode_axiom(),
                    "antipode fails at {n} {i} {j}"
                );
            }
        }
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        for n in 2..=5 {
            let q = primitive_root(n).unwrap();
            let mut sum = TaftElement::zero(n);
            for i in 0..n {
                let ei = TaftElement::idempotent(n, i);
                sum = sum.add(&ei).unwrap();
                for j in 0..n {
                    let ej = TaftElement::idempotent(n, j);
                    let prod = ei.mul(&ej).unwrap();
                    if i == j {
                        assert_eq!(prod, ei, "e_{i} not idempotent at n = {n}");
                    } else {
                        assert!(prod.is_zero(), "e_{i} e_{j} != 0 at n = {n}");
                    }
                }
                // g e_i = q^i e_i
                let g = TaftElement::gen_g(n);
                let gei = g.mul(&ei).unwrap();
                assert_eq!(gei, ei.scale(&q.pow(i as i64).unwrap()));
                // h^(n-1) e_i != 0
                let h = TaftElement::gen_h(n);
                assert!(!h.pow(n - 1).unwrap().mul(&ei).unwrap().is_zero());
            }
            assert_eq!(sum, TaftElement::one(n), "idempotents do not sum to 1");
        }
    }

    #[test]
    fn radical_power_vanishing() {
        // (h)^(n-1) != 0 but (h)^n = 0; the ideal power is spanned by h^m.
        for n in 2..=6 {
            let h = TaftElement::gen_h(n);
            assert!(!h.pow(n - 1).unwrap().is_zero());
            assert!(h.pow(n).unwrap().is_zero());
        }
    }

    #[test]
    fn coproduct_of_h_power_n_vanishes() {
        // Delta is an algebra map, so Delta(h)^n = Delta(h^n) = 0; this is
        // where the vanishing Gaussian binomials enter.
        for n in 2..=5 {
            let h = TaftElement::gen_h(n);
            let mut acc = TaftElement::one(n).coproduct();
            for _ in 0..n {
                acc = acc.mul(&h.coproduct()).unwrap();
            }
            assert!(acc.is_zero(), "Delta(h)^{n} != 0");
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TaftElement::gen_g(2);
        let b = TaftElement::gen_g(3);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn left_multiplication_matrix_of_g_permutes_basis() {
        let n = 3;
        let g = TaftElement::gen_g(n);
        let m = g.left_mul_matrix();
        // g * g^i h^j = g^(i+1) h^j: a permutation matrix.
        for col in 0..n * n {
            let nonzero: Vec<usize> = (0..n * n).filter(|&r| !m.at(r, col).is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
        }
        assert!(m.pow(n).unwrap().is_identity());
    }
}
