//! The Green ring r(H_n(q)): the free Z-module on the n^2 classes
//! [M(l, r)] with multiplication given by the closed-form decomposition of
//! tensor products.
//!
//! Basis products dispatch through exactly one of four cases:
//! a simple factor twists the other label; a projective factor spreads into
//! projectives; and two middle lengths split by whether l + l' exceeds n.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::error::{Error, Result};
use crate::oracle::ModuleMultiset;
use crate::reps::ModuleLabel;

/// An element of the Green ring: an integer combination of classes
/// [M(l, r)] in canonical label order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GreenElement {
    order: usize,
    terms: BTreeMap<ModuleLabel, BigInt>,
}

impl GreenElement {
    pub fn zero(order: usize) -> Self {
        GreenElement {
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The unit class [S_0] = [M(1, 0)].
    pub fn one(order: usize) -> Result<Self> {
        Self::basis(order, ModuleLabel::new(order, 1, 0)?)
    }

    /// The generator a = [S_(-1)] = [M(1, n-1)].
    pub fn gen_a(order: usize) -> Result<Self> {
        Self::basis(order, ModuleLabel::new(order, 1, -1)?)
    }

    /// The generator x = [M(2, 0)].
    pub fn gen_x(order: usize) -> Result<Self> {
        Self::basis(order, ModuleLabel::new(order, 2, 0)?)
    }

    pub fn basis(order: usize, label: ModuleLabel) -> Result<Self> {
        if !label.is_valid_for(order) {
            return Err(Error::InvalidArgument(format!(
                "label {label} invalid for order {order}"
            )));
        }
        let mut terms = BTreeMap::new();
        terms.insert(label, BigInt::one());
        Ok(GreenElement { order, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &ModuleLabel) -> BigInt {
        self.terms.get(label).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModuleLabel, &BigInt)> {
        self.terms.iter()
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

    fn insert(&mut self, label: ModuleLabel, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
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

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.insert(*l, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.insert(*l, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        GreenElement {
            order: self.order,
            terms: self.terms.iter().map(|(l, c)| (*l, c * s)).collect(),
        }
    }

    /// Bilinear extension of [`basis_product`].
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let mut out = Self::zero(self.order);
        for (la, ca) in &self.terms {
            for (lb, cb) in &rhs.terms {
                let prod = basis_product(self.order, *la, *lb)?;
                let c = ca * cb;
                for (l, m) in prod.terms {
                    out.insert(l, &c * m);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        let mut acc = Self::one(self.order)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// A multiset view; `None` if any coefficient is negative or does not
    /// fit a multiplicity.
    pub fn to_multiset(&self) -> Option<ModuleMultiset> {
        let mut out = ModuleMultiset::empty(self.order);
        for (l, c) in &self.terms {
            if c.is_negative() {
                return None;
            }
            let m: u64 = c.try_into().ok()?;
            out.insert(*l, m);
        }
        Some(out)
    }

    pub fn from_multiset(ms: &ModuleMultiset) -> Self {
        let mut out = Self::zero(ms.order());
        for (l, &m) in ms.iter() {
            out.insert(*l, BigInt::from(m));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(l, c)| {
                serde_json::json!({
                    "l": l.length(),
                    "r": l.twist(),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.order, "terms": terms })
    }
}

impl fmt::Display for GreenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
            if first {
                if c.is_one() {
                    write!(f, "[{l}]")?;
                } else {
                    write!(f, "{c}[{l}]")?;
                }
                first = false;
            } else if c.is_negative() {
                let abs = -c;
                if abs.is_one() {
                    write!(f, " - [{l}]")?;
                } else {
                    write!(f, " - {abs}[{l}]")?;
                }
            } else if c.is_one() {
                write!(f, " + [{l}]")?;
            } else {
                write!(f, " + {c}[{l}]")?;
            }
        }
        Ok(())
    }
}

/// The class of M(l, r) (x) M(l', r') as a sum of basis labels, by the
/// closed decomposition formulas. Dispatch order: simple factor, then
/// projective factor, then comparison of l + l' with n.
pub fn basis_product(order: usize, p: ModuleLabel, p2: ModuleLabel) -> Result<GreenElement> {
    if !p.is_valid_for(order) || !p2.is_valid_for(order) {
        return Err(Error::InvalidArgument(format!(
            "labels {p}, {p2} invalid for order {order}"
        )));
    }
    let n = order as i64;
    let (l, r) = (p.length() as i64, p.twist() as i64);
    let (l2, r2) = (p2.length() as i64, p2.twist() as i64);
    let mut out = GreenElement::zero(order);

    if l == 1 || l2 == 1 {
        // A simple factor only twists: M(l, r) (x) S_(r') = M(l, r + r').
        let keep = l.max(l2);
        out.insert(
            ModuleLabel::new(order, keep as usize, r + r2)?,
            BigInt::one(),
        );
        return Ok(out);
    }
    if l == n || l2 == n {
        // Projective factor: sum of l projectives, l the other length
        // (both projective: l = n, and the formulas coincide).
        let other = if l == n { l2 } else { l };
        for i in 1..=other {
            out.insert(
                ModuleLabel::new(order, n as usize, r + r2 + i - other)?,
                BigInt::one(),
            );
        }
        return Ok(out);
    }

    let l0 = l.min(l2);
    let l1 = l.max(l2);
    if l + l2 <= n {
        for i in 1..=l0 {
            out.insert(
                ModuleLabel::new(
                    order,
                    ((l - l2).abs() - 1 + 2 * i) as usize,
                    r + r2 + i - l0,
                )?,
                BigInt::one(),
            );
        }
    } else {
        for i in 1..=(n - l1) {
            out.insert(
                ModuleLabel::new(
                    order,
                    ((l - l2).abs() - 1 + 2 * i) as usize,
                    r + r2 + i - l0,
                )?,
                BigInt::one(),
            );
        }
        for i in 1..=(l + l2 - n) {
            out.insert(
                ModuleLabel::new(order, n as usize, r + r2 + 1 - i)?,
                BigInt::one(),
            );
        }
    }
    Ok(out)
}

/// The recursive elements u_1 = 1, u_2 = x, u_l = x u_(l-1) - a u_(l-2);
/// u_l equals [M(l, 0)].
pub fn u_sequence(order: usize, l: usize) -> Result<GreenElement> {
    if l < 1 || l > order {
        return Err(Error::InvalidArgument(format!(
            "u-sequence index {l} out of range 1..={order}"
        )));
    }
    let a = GreenElement::gen_a(order)?;
    let x = GreenElement::gen_x(order)?;
    let mut prev = GreenElement::one(order)?;
    if l == 1 {
        return Ok(prev);
    }
    let mut cur = x.clone();
    for _ in 3..=l {
        let next = x.mul(&cur)?.sub(&a.mul(&prev)?)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The ring homomorphism r(H_n(q)) -> Z sending [M(l, r)] to l.
pub fn dimension_character(u: &GreenElement) -> BigInt {
    let mut s = BigInt::zero();
    for (l, c) in u.terms() {
        s += c * BigInt::from(l.length() as u64);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::enumerate;

    fn label(n: usize, l: usize, r: i64) -> ModuleLabel {
        ModuleLabel::new(n, l, r).unwrap()
    }

    fn basis(n: usize, l: usize, r: i64) -> GreenElement {
        GreenElement::basis(n, label(n, l, r)).unwrap()
    }

    #[test]
    fn addition_is_the_free_abelian_group() {
        let n = 4;
        let u = basis(n, 2, 1);
        assert_eq!(u.add(&GreenElement::zero(n)).unwrap(), u);
        let doubled = u.add(&u).unwrap();
        assert_eq!(doubled.coeff(&label(n, 2, 1)), BigInt::from(2));
        let v = basis(n, 3, 0);
        assert_eq!(u.add(&v).unwrap().sub(&v).unwrap(), u);
    }

    #[test]
    fn simple_factor_twists() {
        let n = 5;
        for l in 1..=n {
            for r in 0..n {
                for r2 in 0..n {
                    let prod =
                        basis_product(n, label(n, l, r as i64), label(n, 1, r2 as i64)).unwrap();
                    assert_eq!(prod, basis(n, l, (r + r2) as i64));
                    let flipped =
                        basis_product(n, label(n, 1, r2 as i64), label(n, l, r as i64)).unwrap();
                    assert_eq!(prod, flipped);
                }
            }
        }
    }

    #[test]
    fn projective_factor_case() {
        // [M(2,0)][M(n,0)] = [M(n, n-1)] + [M(n, 0)]
        for n in 2..=6 {
            let prod = basis_product(n, label(n, 2, 0), label(n, n, 0)).unwrap();
            let expected = basis(n, n, n as i64 - 1).add(&basis(n, n, 0)).unwrap();
            assert_eq!(prod, expected);
        }
    }

    #[test]
    fn middle_lengths_below_n() {
        // n >= 4: [M(2,0)]^2 = [M(1, n-1)] + [M(3, 0)]
        for n in 4..=7 {
            let prod = basis_product(n, label(n, 2, 0), label(n, 2, 0)).unwrap();
            let expected = basis(n, 1, n as i64 - 1).add(&basis(n, 3, 0)).unwrap();
            assert_eq!(prod, expected);
        }
    }

    #[test]
    fn middle_lengths_above_n() {
        // n = 3: [M(2,0)]^2 = [M(1, 2)] + [M(3, 0)]
        let n = 3;
        let prod = basis_product(n, label(n, 2, 0), label(n, 2, 0)).unwrap();
        let expected = basis(n, 1, 2).add(&basis(n, 3, 0)).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn simple_classes_form_the_cyclic_group() {
        let n = 5;
        for r in 0..n {
            for r2 in 0..n {
                let prod = basis(n, 1, r as i64).mul(&basis(n, 1, r2 as i64)).unwrap();
                assert_eq!(prod, basis(n, 1, (r + r2) as i64));
            }
        }
        let a = GreenElement::gen_a(n).unwrap();
        assert_eq!(a.pow(n as u64).unwrap(), GreenElement::one(n).unwrap());
    }

    #[test]
    fn x_eats_projectives() {
        // x [M(n,0)] = (a + 1)[M(n,0)]
        for n in 2..=6 {
            let x = GreenElement::gen_x(n).unwrap();
            let proj = basis(n, n, 0);
            let lhs = x.mul(&proj).unwrap();
            let a_plus_1 = GreenElement::gen_a(n)
                .unwrap()
                .add(&GreenElement::one(n).unwrap())
                .unwrap();
            let rhs = a_plus_1.mul(&proj).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn twists_factor_through_a() {
        // [M(l, r)] = a^(n-r) [M(l, 0)]
        for n in 2..=5 {
            let a = GreenElement::gen_a(n).unwrap();
            for l in 1..=n {
                for r in 0..n {
                    let lhs = basis(n, l, r as i64);
                    let rhs = a.pow((n - r) as u64).unwrap().mul(&basis(n, l, 0)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn u_sequence_reproduces_basis_classes() {
        for n in 2..=6 {
            for l in 1..=n {
                assert_eq!(
                    u_sequence(n, l).unwrap(),
                    basis(n, l, 0),
                    "u_{l} at n = {n}"
                );
            }
            assert!(u_sequence(n, 0).is_err());
            assert!(u_sequence(n, n + 1).is_err());
        }
    }

    #[test]
    fn u_n_is_killed_by_x_minus_a_minus_one() {
        for n in 2..=6 {
            let x = GreenElement::gen_x(n).unwrap();
            let a = GreenElement::gen_a(n).unwrap();
            let one = GreenElement::one(n).unwrap();
            let factor = x.sub(&a).unwrap().sub(&one).unwrap();
            let u_n = u_sequence(n, n).unwrap();
            assert!(factor.mul(&u_n).unwrap().is_zero());
        }
    }

    #[test]
    fn products_commute_on_all_basis_pairs() {
        for n in 2..=5 {
            for la in enumerate(n).unwrap() {
                for lb in enumerate(n).unwrap() {
                    let ab = basis_product(n, la, lb).unwrap();
                    let ba = basis_product(n, lb, la).unwrap();
                    assert_eq!(ab, ba, "product not symmetric at {la}, {lb}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn identity_class_is_neutral() {
        let n = 4;
        let one = GreenElement::one(n).unwrap();
        for l in enumerate(n).unwrap() {
            let u = GreenElement::basis(n, l).unwrap();
            assert_eq!(u.mul(&one).unwrap(), u);
            assert_eq!(one.mul(&u).unwrap(), u);
        }
    }

    #[test]
    fn dimension_character_is_a_ring_map() {
        for n in 2..=5 {
            for la in enumerate(n).unwrap() {
                for lb in enumerate(n).unwrap() {
                    let a = GreenElement::basis(n, la).unwrap();
                    let b = GreenElement::basis(n, lb).unwrap();
                    let prod = a.mul(&b).unwrap();
                    assert_eq!(
                        dimension_character(&prod),
                        dimension_character(&a) * dimension_character(&b)
                    );
                }
            }
        }
        assert_eq!(
            dimension_character(&GreenElement::gen_a(5).unwrap().pow(5).unwrap()),
            BigInt::one()
        );
    }

    #[test]
    fn order_mismatch_rejected() {
        let u = GreenElement::one(2).unwrap();
        let v = GreenElement::one(3).unwrap();
        assert!(matches!(u.add(&v), Err(Error::OrderMismatch { .. })));
        assert!(matches!(u.mul(&v), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn json_terms_carry_coefficient_strings() {
        let n = 3;
        let u = basis(n, 2, 1)
            .scale(&BigInt::from(-7))
            .add(&basis(n, 1, 0))
            .unwrap();
        assert_eq!(
            u.to_json(),
            serde_json::json!({
                "n": 3,
                "terms": [
                    { "l": 1, "r": 0, "coeff": "1" },
                    { "l": 2, "r": 1, "coeff": "-7" },
                ],
            })
        );
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_label(n: usize) -> impl Strategy<Value = ModuleLabel> {
            (1..=n, 0..n).prop_map(move |(l, r)| ModuleLabel::new(n, l, r as i64).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(256))]
            #[test]
            fn associativity_on_basis_triples(
                (n, la, lb, lc) in (2usize..=6).prop_flat_map(|n| {
                    (Just(n), arb_label(n), arb_label(n), arb_label(n))
                })
            ) {
                let a = GreenElement::basis(n, la).unwrap();
                let b = GreenElement::basis(n, lb).unwrap();
                let c = GreenElement::basis(n, lc).unwrap();
                let left = a.mul(&b).unwrap().mul(&c).unwrap();
                let right = a.mul(&b.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
