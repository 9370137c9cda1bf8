//! Ground-truth tensor products and decomposition of matrix representations.
//!
//! `tensor_reps` builds the module structure on a tensor product through the
//! coproduct (g acts as g (x) g, h as 1 (x) h + h (x) g), and `decompose`
//! splits any representation satisfying the Taft relations into
//! indecomposables by exact rank bookkeeping: every indecomposable is
//! uniserial with one basis vector per g-grade, so socle vectors of
//! length-l strings in grade s are exactly ker h ∩ im h^(l-1) \ im h^l
//! inside the eigenspace V_s.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reps::{eigenspace_basis, MatrixRep, ModuleLabel};

/// A formal non-negative combination of module labels; the output of
/// decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleMultiset {
    order: usize,
    counts: BTreeMap<ModuleLabel, u64>,
}

impl ModuleMultiset {
    pub fn empty(order: usize) -> Self {
        ModuleMultiset {
            order,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts(
        order: usize,
        counts: impl IntoIterator<Item = (ModuleLabel, u64)>,
    ) -> Result<Self> {
        let mut out = Self::empty(order);
        for (label, mult) in counts {
            if !label.is_valid_for(order) {
                return Err(Error::InvalidArgument(format!(
                    "label {label} invalid for order {order}"
                )));
            }
            out.insert(label, mult);
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, label: ModuleLabel, mult: u64) {
        if mult > 0 {
            *self.counts.entry(label).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, label: &ModuleLabel) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModuleLabel, &u64)> {
        self.counts.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of length * multiplicity; equals the dimension of the
    /// decomposed representation.
    pub fn total_dimension(&self) -> u64 {
        self.counts
            .iter()
            .map(|(l, &m)| l.length() as u64 * m)
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let summands: Vec<serde_json::Value> = self
            .counts
            .iter()
            .map(|(l, m)| serde_json::json!({ "l": l.length(), "r": l.twist(), "mult": m }))
            .collect();
        serde_json::json!({ "n": self.order, "summands": summands })
    }
}

impl fmt::Display for ModuleMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(l, &m)| {
                if m == 1 {
                    l.to_string()
                } else {
                    format!("{m}·{l}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Tensor product module: g acts as g_A (x) g_B and
/// h as 1 (x) h_B + h_A (x) g_B.
pub fn tensor_reps(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    let g = a.g_matrix().kron(b.g_matrix())?;
    let ia = Matrix::identity(a.order(), a.dim());
    let h = ia
        .kron(b.h_matrix())?
        .add(&a.h_matrix().kron(b.g_matrix())?)?;
    MatrixRep::new(a.order(), g, h)
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    MatrixRep::new(
        a.order(),
        a.g_matrix().block_diag(b.g_matrix())?,
        a.h_matrix().block_diag(b.h_matrix())?,
    )
}

/// When g is diagonal its eigenspaces are coordinate subspaces and the
/// projector images can be read off without elimination. Returns one basis
/// matrix per residue, or None when g is not diagonal.
fn diagonal_eigenbases(rep: &MatrixRep) -> Option<Vec<Matrix>> {
    let n = rep.order();
    let d = rep.dim();
    let g = rep.g_matrix();
    for r in 0..d {
        for c in 0..d {
            if r != c && !g.at(r, c).is_zero() {
                return None;
            }
        }
    }
    let roots: Vec<CycloNum> = (0..n).map(|k| CycloNum::root_of_unity(n, k)).collect();
    let mut grades: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in 0..d {
        let i = (0..n).find(|&k| *g.at(t, t) == roots[k])?;
        grades[i].push(t);
    }
    let bases = grades
        .into_iter()
        .map(|idx| {
            let cols = idx
                .into_iter()
                .map(|t| {
                    let mut v = vec![CycloNum::zero(n); d];
                    v[t] = CycloNum::one(n);
                    v
                })
                .collect();
            Matrix::from_columns(n, d, cols)
        })
        .collect();
    Some(bases)
}

/// Decomposes a representation satisfying the Taft relations into the
/// multiset of indecomposables M(l, i).
///
/// The multiplicity of M(l, s+l-1) is
/// dim(ker h ∩ im h^(l-1) ∩ V_s) - dim(ker h ∩ im h^l ∩ V_s),
/// with every intersection computed by exact kernel/column-space
/// arithmetic inside the grade blocks.
pub fn decompose(rep: &MatrixRep) -> Result<ModuleMultiset> {
    let n = rep.order();
    let d = rep.dim();
    if d == 0 {
        return Ok(ModuleMultiset::empty(n));
    }
    rep.check_relations()?;

    // Grade bases V_i (eigenspace of g for q^i), fast path for diagonal g.
    let bases: Vec<Matrix> = match diagonal_eigenbases(rep) {
        Some(b) => b,
        None => (0..n)
            .map(|i| eigenspace_basis(rep, i))
            .collect::<Result<_>>()?,
    };
    let total: usize = bases.iter().map(Matrix::cols).sum();
    if total != d {
        return Err(Error::InvalidRepresentation(format!(
            "g is not diagonalizable with n-th-root-of-unity eigenvalues \
             (eigenspaces cover {total} of {d} dimensions)"
        )));
    }

    // Block maps H_i: V_i -> V_(i-1) with h B_i = B_(i-1) H_i; a failed
    // solve means h does not respect the grading.
    let mut blocks: Vec<Matrix> = Vec::with_capacity(n);
    for i in 0..n {
        let hb = rep.h_matrix().mul(&bases[i])?;
        let target = &bases[(i + n - 1) % n];
        let block = target.solve(&hb)?.ok_or_else(|| {
            Error::InvalidRepresentation(format!(
                "h does not map the grade-{i} eigenspace into grade {}",
                (i + n - 1) % n
            ))
        })?;
        blocks.push(block);
    }

    // K_s: basis of ker h ∩ V_s in block coordinates.
    let kernels: Vec<Matrix> = blocks.iter().map(Matrix::kernel_basis).collect();

    // W_(j,s): basis of im h^j ∩ V_s, i.e. the image of the composite
    // V_(s+j) -> V_s; built by one extra block application per step.
    // images[j][s] has the columns of that basis.
    let mut images: Vec<Vec<Matrix>> = Vec::with_capacity(n + 1);
    let identity_row: Vec<Matrix> = (0..n)
        .map(|s| Matrix::identity(n, bases[s].cols()))
        .collect();
    images.push(identity_row);
    for j in 1..=n {
        let prev = &images[j - 1];
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            // im h^j ∩ V_s = H_(s+1) (im h^(j-1) ∩ V_(s+1))
            let up = (s + 1) % n;
            let mapped = blocks[up].mul(&prev[up])?;
            row.push(mapped.column_space_basis());
        }
        images.push(row);
    }

    // dim(ker h ∩ im h^j ∩ V_s) via dim(X ∩ Y) = dim X + dim Y - dim(X + Y).
    let inter_dim = |s: usize, j: usize| -> Result<usize> {
        let k = &kernels[s];
        let w = &images[j][s];
        if k.cols() == 0 || w.cols() == 0 {
            return Ok(0);
        }
        let joint = k.hstack(w)?.rank();
        Ok(k.cols() + w.cols() - joint)
    };

    let mut out = ModuleMultiset::empty(n);
    for l in 1..=n {
        for s in 0..n {
            let with = inter_dim(s, l - 1)?;
            let without = inter_dim(s, l)?;
            if with > without {
                let label = ModuleLabel::new(n, l, (s + l - 1) as i64)?;
                out.insert(label, (with - without) as u64);
            }
        }
    }

    if out.total_dimension() != d as u64 {
        return Err(Error::InvalidRepresentation(format!(
            "decomposition accounts for {} of {} dimensions",
            out.total_dimension(),
            d
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{build_rep, enumerate, regular_rep};

    fn label(n: usize, l: usize, r: i64) -> ModuleLabel {
        ModuleLabel::new(n, l, r).unwrap()
    }

    fn multiset(n: usize, parts: &[(usize, i64, u64)]) -> ModuleMultiset {
        ModuleMultiset::from_counts(n, parts.iter().map(|&(l, r, m)| (label(n, l, r), m))).unwrap()
    }

    #[test]
    fn tensor_dimensions_multiply() {
        let n = 4;
        let a = build_rep(n, label(n, 2, 0)).unwrap();
        let b = build_rep(n, label(n, 3, 1)).unwrap();
        let t = tensor_reps(&a, &b).unwrap();
        assert_eq!(t.dim(), 6);
        t.check_relations().unwrap();
    }

    #[test]
    fn tensor_g_eigenvalues_add() {
        let n = 5;
        let a = build_rep(n, label(n, 1, 2)).unwrap();
        let b = build_rep(n, label(n, 1, 4)).unwrap();
        let t = tensor_reps(&a, &b).unwrap();
        assert_eq!(
            *t.g_matrix().at(0, 0),
            CycloNum::root_of_unity(n, (2 + 4) % n)
        );
    }

    #[test]
    fn indecomposables_decompose_to_themselves() {
        for n in 2..=4 {
            for lab in enumerate(n).unwrap() {
                let rep = build_rep(n, lab).unwrap();
                let dec = decompose(&rep).unwrap();
                assert_eq!(dec, multiset(n, &[(lab.length(), lab.twist() as i64, 1)]));
            }
        }
    }

    #[test]
    fn tensor_with_simple_twists() {
        // M(1, r) (x) M(l, r') ≅ M(l, r + r')
        for n in [3usize, 5] {
            for r in 0..n {
                for l in 1..=n {
                    let a = build_rep(n, label(n, 1, r as i64)).unwrap();
                    let b = build_rep(n, label(n, l, 1)).unwrap();
                    let dec = decompose(&tensor_reps(&a, &b).unwrap()).unwrap();
                    assert_eq!(dec, multiset(n, &[(l, r as i64 + 1, 1)]));
                }
            }
        }
    }

    #[test]
    fn tensor_with_projective_splits_projectively() {
        // M(2, 0) (x) M(n, 0) ≅ M(n, -1) ⊕ M(n, 0)
        for n in 2..=5 {
            let a = build_rep(n, label(n, 2, 0)).unwrap();
            let b = build_rep(n, label(n, n, 0)).unwrap();
            let dec = decompose(&tensor_reps(&a, &b).unwrap()).unwrap();
            assert_eq!(dec, multiset(n, &[(n, n as i64 - 1, 1), (n, 0, 1)]));
        }
    }

    #[test]
    fn two_strings_of_length_two_at_n_three() {
        // n = 3: M(2,0) (x) M(2,0) ≅ M(1,2) ⊕ M(3,0)
        let n = 3;
        let a = build_rep(n, label(n, 2, 0)).unwrap();
        let dec = decompose(&tensor_reps(&a, &a).unwrap()).unwrap();
        assert_eq!(dec, multiset(n, &[(1, 2, 1), (3, 0, 1)]));
    }

    #[test]
    fn clebsch_gordan_below_the_order() {
        // n >= 4: M(2,0) (x) M(2,0) ≅ M(1, n-1) ⊕ M(3, 0)
        for n in 4..=6 {
            let a = build_rep(n, label(n, 2, 0)).unwrap();
            let dec = decompose(&tensor_reps(&a, &a).unwrap()).unwrap();
            assert_eq!(dec, multiset(n, &[(1, n as i64 - 1, 1), (3, 0, 1)]));
        }
    }

    #[test]
    fn regular_representation_splits_into_projectives() {
        for n in 2..=4 {
            let reg = regular_rep(n).unwrap();
            let dec = decompose(&reg).unwrap();
            let expected: Vec<(usize, i64, u64)> = (0..n).map(|i| (n, i as i64, 1)).collect();
            assert_eq!(dec, multiset(n, &expected));
        }
    }

    #[test]
    fn direct_sum_adds_multiplicities() {
        let n = 3;
        let a = build_rep(n, label(n, 2, 1)).unwrap();
        let s = direct_sum(&a, &a).unwrap();
        assert_eq!(s.dim(), 4);
        let dec = decompose(&s).unwrap();
        assert_eq!(dec, multiset(n, &[(2, 1, 2)]));
    }

    #[test]
    fn direct_sum_with_zero_module_is_neutral() {
        let n = 3;
        let a = build_rep(n, label(n, 2, 1)).unwrap();
        let zero = MatrixRep::new(n, Matrix::zero(n, 0, 0), Matrix::zero(n, 0, 0)).unwrap();
        let s = direct_sum(&a, &zero).unwrap();
        assert_eq!(s, a);
        assert!(decompose(&zero).unwrap().is_empty());
    }

    #[test]
    fn dimension_is_conserved() {
        let n = 4;
        for la in enumerate(n).unwrap() {
            let a = build_rep(n, la).unwrap();
            let b = build_rep(n, label(n, 3, 2)).unwrap();
            let t = tensor_reps(&a, &b).unwrap();
            let dec = decompose(&t).unwrap();
            assert_eq!(dec.total_dimension(), t.dim() as u64);
        }
    }

    #[test]
    fn oracle_commutes() {
        let n = 4;
        for la in enumerate(n).unwrap() {
            for lb in enumerate(n).unwrap() {
                let a = build_rep(n, la).unwrap();
                let b = build_rep(n, lb).unwrap();
                let ab = decompose(&tensor_reps(&a, &b).unwrap()).unwrap();
                let ba = decompose(&tensor_reps(&b, &a).unwrap()).unwrap();
                assert_eq!(ab, ba, "A⊗B != B⊗A for {la}, {lb}");
            }
        }
    }

    #[test]
    fn invalid_representations_are_rejected() {
        let n = 3;
        // g = identity fails g^n = 1? No: identity passes that, but h = identity
        // fails both nilpotency and the commutation relation.
        let bad = MatrixRep::new(n, Matrix::identity(n, 2), Matrix::identity(n, 2)).unwrap();
        assert!(matches!(
            decompose(&bad),
            Err(Error::InvalidRepresentation(_))
        ));
        // g without root-of-unity eigenvalues fails g^n = 1.
        let g = Matrix::from_fn(n, 1, 1, |_, _| CycloNum::from_int(n, 2));
        let bad = MatrixRep::new(n, g, Matrix::zero(n, 1, 1)).unwrap();
        assert!(matches!(
            decompose(&bad),
            Err(Error::InvalidRepresentation(_))
        ));
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = build_rep(2, label(2, 1, 0)).unwrap();
        let b = build_rep(3, label(3, 1, 0)).unwrap();
        assert!(matches!(
            tensor_reps(&a, &b),
            Err(Error::OrderMismatch { .. })
        ));
        assert!(matches!(
            direct_sum(&a, &b),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn projector_image_equals_direct_eigenspace() {
        // im rho(e_i) computed by projectors equals ker(g - q^i) for the
        // regular representation, where g is not diagonal.
        let n = 3;
        let reg = regular_rep(n).unwrap();
        for i in 0..n {
            let via_projector = eigenspace_basis(&reg, i).unwrap();
            let qi = CycloNum::root_of_unity(n, i);
            let shifted = reg
                .g_matrix()
                .sub(&Matrix::identity(n, reg.dim()).scale(&qi))
                .unwrap();
            let direct = shifted.kernel_basis();
            assert_eq!(via_projector.cols(), direct.cols());
            let joint = via_projector.hstack(&direct).unwrap();
            assert_eq!(joint.rank(), direct.cols(), "spans differ at grade {i}");
        }
    }

    #[test]
    fn multiset_json_uses_canonical_label_order() {
        let ms = multiset(3, &[(3, 0, 1), (1, 2, 2)]);
        let v = ms.to_json();
        assert_eq!(
            v,
            serde_json::json!({
                "n": 3,
                "summands": [
                    { "l": 1, "r": 2, "mult": 2 },
                    { "l": 3, "r": 0, "mult": 1 },
                ],
            })
        );
    }

    #[test]
    fn decompose_is_basis_independent() {
        // Conjugating by an invertible matrix must not change the answer.
        // P = elementary row ops applied to the standard rep of M(2,0)+M(1,1).
        let n = 3;
        let a = build_rep(n, label(n, 2, 0)).unwrap();
        let b = build_rep(n, label(n, 1, 1)).unwrap();
        let s = direct_sum(&a, &b).unwrap();
        // Conjugate: x -> P x P^-1 with P = I + E_(0,2)
        let mut p = Matrix::identity(n, 3);
        p.set(0, 2, CycloNum::one(n));
        let mut p_inv = Matrix::identity(n, 3);
        p_inv.set(0, 2, CycloNum::from_int(n, -1));
        let conj = |m: &Matrix| p.mul(m).unwrap().mul(&p_inv).unwrap();
        let twisted = MatrixRep::new(n, conj(s.g_matrix()), conj(s.h_matrix())).unwrap();
        let dec = decompose(&twisted).unwrap();
        assert_eq!(dec, multiset(n, &[(1, 1, 1), (2, 0, 1)]));
    }
}
