//! Verification sweeps over the whole engine, grouped into the suites the
//! CLI exposes: `hopf` (Hopf-algebra axioms), `oracle` (representation
//! theory and oracle-vs-formula equivalence), `iso` (Green ring vs
//! presentation), and `fib` (Fibonacci polynomial identities).
//!
//! Each check reports pass/fail plus the first counterexample found, so a
//! failing sweep is directly actionable.

use num::traits::{One, Signed};
use num::BigInt;

use crate::cyclotomic::CycloNum;
use crate::error::Result;
use crate::green::{basis_product, dimension_character, u_sequence, GreenElement};
use crate::matrix::Matrix;
use crate::oracle::{decompose, tensor_reps, ModuleMultiset};
use crate::presentation::{
    fib_poly, fib_poly_closed, normal_form, phi, presentation_relations, psi, standard_fib,
    BivariatePoly,
};
use crate::reps::{
    build_rep, classify, eigenspace_basis, enumerate, loewy_length, regular_rep, socle_head,
    socle_head_from_rep, ModuleLabel,
};
use crate::taft::TaftElement;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckReport {
    fn run(name: &str, f: impl FnOnce() -> Result<Option<String>>) -> Self {
        match f() {
            Ok(None) => CheckReport {
                name: name.into(),
                passed: true,
                detail: None,
            },
            Ok(Some(counterexample)) => CheckReport {
                name: name.into(),
                passed: false,
                detail: Some(counterexample),
            },
            Err(e) => CheckReport {
                name: name.into(),
                passed: false,
                detail: Some(format!("error: {e}")),
            },
        }
    }
}

/// All n^2 x n^2 ordered label pairs in canonical order.
pub fn ordered_label_pairs(n: usize) -> Result<Vec<(ModuleLabel, ModuleLabel)>> {
    let labels = enumerate(n)?;
    let mut out = Vec::with_capacity(labels.len() * labels.len());
    for &a in &labels {
        for &b in &labels {
            out.push((a, b));
        }
    }
    Ok(out)
}

/// Oracle decomposition of M(a) (x) M(b).
pub fn oracle_product(n: usize, a: ModuleLabel, b: ModuleLabel) -> Result<ModuleMultiset> {
    let ra = build_rep(n, a)?;
    let rb = build_rep(n, b)?;
    decompose(&tensor_reps(&ra, &rb)?)
}

/// Compares the oracle decomposition with the closed-form product for one
/// ordered pair; `None` means they agree.
pub fn tensor_pair_mismatch(n: usize, a: ModuleLabel, b: ModuleLabel) -> Result<Option<String>> {
    let via_oracle = oracle_product(n, a, b)?;
    let via_formula = basis_product(n, a, b)?
        .to_multiset()
        .expect("basis products have non-negative multiplicities");
    if via_oracle == via_formula {
        Ok(None)
    } else {
        Ok(Some(format!(
            "{a} ⊗ {b}: oracle {via_oracle} vs formula {via_formula}"
        )))
    }
}

/// Maps `f` over `items` on `jobs` threads, preserving order. `jobs <= 1`
/// runs inline.
pub fn run_chunked<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut out: Vec<Option<R>> = Vec::new();
    out.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        let mut rest = out.as_mut_slice();
        let mut offset = 0;
        while offset < items.len() {
            let take = chunk.min(items.len() - offset);
            let (head, tail) = rest.split_at_mut(take);
            rest = tail;
            let slice = &items[offset..offset + take];
            let f = &f;
            scope.spawn(move || {
                for (slot, item) in head.iter_mut().zip(slice) {
                    *slot = Some(f(item));
                }
            });
            offset += take;
        }
    });
    out.into_iter()
        .map(|r| r.expect("worker filled slot"))
        .collect()
}

fn first_failure(results: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    results.into_iter().flatten().next()
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Hopf-algebra axioms, idempotents, and the radical filtration.
pub fn hopf_suite(n: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();

    out.push(CheckReport::run("hopf.dimension", || {
        let count = TaftElement::basis_monomials(n).len();
        Ok((count != n * n).then(|| format!("{count} basis monomials, expected {}", n * n)))
    }));

    out.push(CheckReport::run("hopf.coassociativity", || {
        Ok(first_failure(TaftElement::basis_monomials(n).iter().map(
            |&(i, j)| {
                let m = TaftElement::monomial(n, i, j, CycloNum::one(n));
                (!m.satisfies_coassociativity()).then(|| format!("fails on g^{i} h^{j}"))
            },
        )))
    }));

    out.push(CheckReport::run("hopf.counit-axiom", || {
        Ok(first_failure(TaftElement::basis_monomials(n).iter().map(
            |&(i, j)| {
                let m = TaftElement::monomial(n, i, j, CycloNum::one(n));
                (!m.satisfies_counit_axiom()).then(|| format!("fails on g^{i} h^{j}"))
            },
        )))
    }));

    out.push(CheckReport::run("hopf.antipode-axiom", || {
        Ok(first_failure(TaftElement::basis_monomials(n).iter().map(
            |&(i, j)| {
                let m = TaftElement::monomial(n, i, j, CycloNum::one(n));
                (!m.satisfies_antipode_axiom()).then(|| format!("fails on g^{i} h^{j}"))
            },
        )))
    }));

    out.push(CheckReport::run("hopf.algebra-maps", || {
        let monomials = TaftElement::basis_monomials(n);
        for &(i, j) in &monomials {
            let a = TaftElement::monomial(n, i, j, CycloNum::one(n));
            for &(k, l) in &monomials {
                let b = TaftElement::monomial(n, k, l, CycloNum::one(n));
                let ab = a.mul(&b)?;
                if ab.coproduct() != a.coproduct().mul(&b.coproduct())? {
                    return Ok(Some(format!(
                        "Delta not multiplicative on g^{i}h^{j}, g^{k}h^{l}"
                    )));
                }
                if ab.counit() != &a.counit() * &b.counit() {
                    return Ok(Some(format!(
                        "counit not multiplicative on g^{i}h^{j}, g^{k}h^{l}"
                    )));
                }
                if ab.antipode() != b.antipode().mul(&a.antipode())? {
                    return Ok(Some(format!(
                        "antipode not anti-multiplicative on g^{i}h^{j}, g^{k}h^{l}"
                    )));
                }
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("hopf.idempotents", || {
        let q = CycloNum::root_of_unity(n, 1);
        let h = TaftElement::gen_h(n);
        let g = TaftElement::gen_g(n);
        let mut sum = TaftElement::zero(n);
        for i in 0..n {
            let ei = TaftElement::idempotent(n, i);
            sum = sum.add(&ei)?;
            for j in 0..n {
                let ej = TaftElement::idempotent(n, j);
                let prod = ei.mul(&ej)?;
                let expected = if i == j {
                    ei.clone()
                } else {
                    TaftElement::zero(n)
                };
                if prod != expected {
                    return Ok(Some(format!("e_{i} e_{j} wrong")));
                }
            }
            if g.mul(&ei)? != ei.scale(&q.pow(i as i64)?) {
                return Ok(Some(format!("g e_{i} != q^{i} e_{i}")));
            }
            if h.pow(n - 1)?.mul(&ei)?.is_zero() {
                return Ok(Some(format!("h^(n-1) e_{i} = 0")));
            }
        }
        if sum != TaftElement::one(n) {
            return Ok(Some("idempotents do not sum to 1".into()));
        }
        Ok(None)
    }));

    out.push(CheckReport::run("hopf.radical", || {
        let h = TaftElement::gen_h(n);
        if h.pow(n - 1)?.is_zero() {
            return Ok(Some(format!("h^{} = 0", n - 1)));
        }
        if !h.pow(n)?.is_zero() {
            return Ok(Some(format!("h^{n} != 0")));
        }
        Ok(None)
    }));

    out
}

/// Representation-theory checks plus the full oracle-vs-formula sweep.
pub fn oracle_suite(n: usize, jobs: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();

    out.push(CheckReport::run("reps.relations", || {
        for label in enumerate(n)? {
            if let Err(e) = build_rep(n, label)?.check_relations() {
                return Ok(Some(format!("{label}: {e}")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("reps.loewy-length", || {
        for label in enumerate(n)? {
            let got = loewy_length(&build_rep(n, label)?)?;
            if got != label.length() {
                return Ok(Some(format!("{label}: loewy length {got}")));
            }
        }
        let reg = loewy_length(&regular_rep(n)?)?;
        Ok((reg != n).then(|| format!("regular representation: loewy length {reg}")))
    }));

    out.push(CheckReport::run("reps.socle-head", || {
        for label in enumerate(n)? {
            let expected = (
                (label.twist() as i64 - label.length() as i64 + 1).rem_euclid(n as i64) as usize,
                label.twist(),
            );
            let formula = socle_head(n, label)?;
            let matrix_route = socle_head_from_rep(&build_rep(n, label)?)?;
            if formula != expected || matrix_route != expected {
                return Ok(Some(format!(
                    "{label}: formula {formula:?}, matrices {matrix_route:?}, expected {expected:?}"
                )));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("reps.classification", || {
        for label in enumerate(n)? {
            let f = classify(n, label)?;
            let ok = f.simple == (label.length() == 1)
                && f.projective == (label.length() == n)
                && f.injective == (label.length() == n);
            if !ok {
                return Ok(Some(format!("{label}: flags {f:?}")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("reps.radical-layers", || {
        for label in enumerate(n)? {
            let rep = build_rep(n, label)?;
            for s in 0..=n {
                let got = rep.h_matrix().pow(s)?.rank();
                if got != label.length().saturating_sub(s) {
                    return Ok(Some(format!("{label}: dim h^{s}M = {got}")));
                }
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("reps.regular-decomposition", || {
        let dec = decompose(&regular_rep(n)?)?;
        let expected = ModuleMultiset::from_counts(
            n,
            (0..n).map(|i| (ModuleLabel::new(n, n, i as i64).unwrap(), 1)),
        )?;
        Ok((dec != expected).then(|| format!("regular representation: {dec}")))
    }));

    out.push(CheckReport::run("oracle.idempotent-splitting", || {
        let reg = regular_rep(n)?;
        for i in 0..n {
            let via_projector = eigenspace_basis(&reg, i)?;
            let qi = CycloNum::root_of_unity(n, i);
            let shifted = reg
                .g_matrix()
                .sub(&Matrix::identity(n, reg.dim()).scale(&qi))?;
            let direct = shifted.kernel_basis();
            let same = via_projector.cols() == direct.cols()
                && via_projector.hstack(&direct)?.rank() == direct.cols();
            if !same {
                return Ok(Some(format!("grade {i}: projector image != eigenspace")));
            }
        }
        Ok(None)
    }));

    // One sweep over all ordered pairs feeds the three pair-level checks.
    let pairs = match ordered_label_pairs(n) {
        Ok(p) => p,
        Err(e) => {
            out.push(CheckReport {
                name: "oracle.formula-equivalence".into(),
                passed: false,
                detail: Some(format!("error: {e}")),
            });
            return out;
        }
    };
    let results: Vec<Result<(ModuleMultiset, Option<String>)>> =
        run_chunked(&pairs, jobs, |&(a, b)| {
            let dec = oracle_product(n, a, b)?;
            let formula = basis_product(n, a, b)?
                .to_multiset()
                .expect("basis products have non-negative multiplicities");
            let mismatch =
                (dec != formula).then(|| format!("{a} ⊗ {b}: oracle {dec} vs formula {formula}"));
            Ok((dec, mismatch))
        });

    let mut table = std::collections::BTreeMap::new();
    let mut sweep_error = None;
    let mut first_mismatch = None;
    for (pair, res) in pairs.iter().zip(results) {
        match res {
            Ok((dec, mismatch)) => {
                if first_mismatch.is_none() {
                    first_mismatch = mismatch;
                }
                table.insert(*pair, dec);
            }
            Err(e) => {
                if sweep_error.is_none() {
                    sweep_error = Some(format!("{} ⊗ {}: error: {e}", pair.0, pair.1));
                }
            }
        }
    }

    out.push(CheckReport {
        name: "oracle.formula-equivalence".into(),
        passed: sweep_error.is_none() && first_mismatch.is_none(),
        detail: sweep_error.clone().or(first_mismatch),
    });

    out.push(CheckReport::run("oracle.commutativity", || {
        if let Some(e) = &sweep_error {
            return Ok(Some(e.clone()));
        }
        for (&(a, b), dec) in &table {
            if table.get(&(b, a)) != Some(dec) {
                return Ok(Some(format!("{a} ⊗ {b} differs from {b} ⊗ {a}")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("oracle.simple-summand", || {
        if let Some(e) = &sweep_error {
            return Ok(Some(e.clone()));
        }
        for (&(a, b), dec) in &table {
            if a.length() == n || b.length() == n {
                continue;
            }
            let has_simple = dec.iter().any(|(l, _)| l.length() == 1);
            if has_simple != (a.length() == b.length()) {
                return Ok(Some(format!(
                    "{a} ⊗ {b}: simple summand iff lengths equal fails"
                )));
            }
        }
        Ok(None)
    }));

    out
}

/// Green ring structure and the isomorphism with the presentation.
pub fn iso_suite(n: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();

    out.push(CheckReport::run("iso.presentation-relations", || {
        let (y_rel, z_rel) = presentation_relations(n)?;
        let expected_y = BivariatePoly::monomial(n, 0, BigInt::one()).sub(&BivariatePoly::one());
        let factor = BivariatePoly::monomial(0, 1, BigInt::one())
            .sub(&BivariatePoly::monomial(1, 0, BigInt::one()))
            .sub(&BivariatePoly::one());
        let expected_z = factor.mul(&fib_poly_closed(n)?);
        if y_rel != expected_y {
            return Ok(Some(format!("y-relation: {y_rel}")));
        }
        Ok((z_rel != expected_z).then(|| format!("z-relation: {z_rel}")))
    }));

    out.push(CheckReport::run("iso.relations-vanish", || {
        let (y_rel, z_rel) = presentation_relations(n)?;
        if !normal_form(&y_rel, n)?.is_zero() {
            return Ok(Some("y^n - 1 does not reduce to 0".into()));
        }
        if !normal_form(&z_rel, n)?.is_zero() {
            return Ok(Some("(z-y-1)f_n does not reduce to 0".into()));
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.phi-ring-map", || {
        for (a, b) in ordered_label_pairs(n)? {
            let u = GreenElement::basis(n, a)?;
            let v = GreenElement::basis(n, b)?;
            let lhs = phi(&u.mul(&v)?)?;
            let rhs = phi(&u)?.mul(&phi(&v)?)?;
            if lhs != rhs {
                return Ok(Some(format!("phi([{a}][{b}]) != phi([{a}])phi([{b}])")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.psi-phi-identity", || {
        for label in enumerate(n)? {
            let u = GreenElement::basis(n, label)?;
            if psi(&phi(&u)?)? != u {
                return Ok(Some(format!("psi(phi([{label}])) != [{label}]")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.green-commutativity", || {
        for (a, b) in ordered_label_pairs(n)? {
            if basis_product(n, a, b)? != basis_product(n, b, a)? {
                return Ok(Some(format!("[{a}][{b}] != [{b}][{a}]")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.green-associativity", || {
        let labels = enumerate(n)?;
        let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (n as u64);
        for _ in 0..1000 {
            let pick = |s: &mut u64| labels[(xorshift(s) % labels.len() as u64) as usize];
            let (la, lb, lc) = (pick(&mut state), pick(&mut state), pick(&mut state));
            let a = GreenElement::basis(n, la)?;
            let b = GreenElement::basis(n, lb)?;
            let c = GreenElement::basis(n, lc)?;
            if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? {
                return Ok(Some(format!(
                    "([{la}][{lb}])[{lc}] != [{la}]([{lb}][{lc}])"
                )));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.green-structure", || {
        let a = GreenElement::gen_a(n)?;
        let x = GreenElement::gen_x(n)?;
        let one = GreenElement::one(n)?;
        if a.pow(n as u64)? != one {
            return Ok(Some("a^n != 1".into()));
        }
        for l in 1..=n {
            let expected = GreenElement::basis(n, ModuleLabel::new(n, l, 0)?)?;
            if u_sequence(n, l)? != expected {
                return Ok(Some(format!("u_{l} != [M({l},0)]")));
            }
        }
        let u_n = u_sequence(n, n)?;
        if !x.sub(&a)?.sub(&one)?.mul(&u_n)?.is_zero() {
            return Ok(Some("(x - a - 1) u_n != 0".into()));
        }
        let proj = GreenElement::basis(n, ModuleLabel::new(n, n, 0)?)?;
        if x.mul(&proj)? != a.add(&one)?.mul(&proj)? {
            return Ok(Some("x[M(n,0)] != (a+1)[M(n,0)]".into()));
        }
        for label in enumerate(n)? {
            let lhs = GreenElement::basis(n, label)?;
            let base = GreenElement::basis(n, ModuleLabel::new(n, label.length(), 0)?)?;
            let rhs = a.pow((n - label.twist()) as u64)?.mul(&base)?;
            if lhs != rhs {
                return Ok(Some(format!("[{label}] != a^(n-r)[M(l,0)]")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("iso.dimension-character", || {
        for (la, lb) in ordered_label_pairs(n)? {
            let a = GreenElement::basis(n, la)?;
            let b = GreenElement::basis(n, lb)?;
            let prod = a.mul(&b)?;
            if dimension_character(&prod) != dimension_character(&a) * dimension_character(&b) {
                return Ok(Some(format!("dim character fails on [{la}][{lb}]")));
            }
        }
        Ok(None)
    }));

    out
}

/// Fibonacci polynomial identities (order-independent).
pub fn fib_suite() -> Vec<CheckReport> {
    let mut out = Vec::new();

    out.push(CheckReport::run("fib.closed-form", || {
        for m in 1..=64 {
            if fib_poly(m)? != fib_poly_closed(m)? {
                return Ok(Some(format!("f_{m} differs from its closed form")));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("fib.monic-in-z", || {
        for m in 1..=64 {
            let f = fib_poly(m)?;
            if f.z_degree() != Some(m - 1) || !f.coeff(0, m - 1).is_one() {
                return Ok(Some(format!("f_{m} is not monic of z-degree {}", m - 1)));
            }
        }
        Ok(None)
    }));

    out.push(CheckReport::run("fib.standard-magnitude", || {
        for m in 1..=32 {
            let signed = fib_poly(m)?;
            let standard = standard_fib(m)?;
            let same_support = signed.terms().count() == standard.terms().count();
            let same_magnitudes = standard
                .terms()
                .all(|(&(y, z), c)| signed.coeff(y, z).abs() == *c);
            if !same_support || !same_magnitudes {
                return Ok(Some(format!("coefficient magnitudes differ at m = {m}")));
            }
        }
        Ok(None)
    }));

    out
}

/// The available suite names, in the order `all` runs them.
pub const SUITES: [&str; 4] = ["hopf", "oracle", "iso", "fib"];

/// Runs one named suite (or all of them) for the given order.
pub fn run_suite(n: usize, suite: &str, jobs: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let run_one = |name: &str, out: &mut Vec<CheckReport>| match name {
        "hopf" => out.extend(hopf_suite(n)),
        "oracle" => out.extend(oracle_suite(n, jobs)),
        "iso" => out.extend(iso_suite(n)),
        "fib" => out.extend(fib_suite()),
        _ => unreachable!(),
    };
    if suite == "all" {
        for name in SUITES {
            run_one(name, &mut out);
        }
    } else if SUITES.contains(&suite) {
        run_one(suite, &mut out);
    } else {
        return Err(crate::error::Error::InvalidArgument(format!(
            "unknown suite {suite}"
        )));
    }
    Ok(out)
}
