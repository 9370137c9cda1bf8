//! The n^2 indecomposable H_n(q)-modules M(l, r) as explicit matrix
//! representations, together with socle/head data, Loewy length, and the
//! classification flags.

use std::fmt;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::taft::TaftElement;

/// Label (l, r) of the indecomposable module M(l, r): length l in [1, n],
/// twist r stored as the canonical residue in [0, n).
///
/// The derived ordering (length, then twist) is the canonical label order
/// used for every basis and every serialization downstream.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ModuleLabel {
    length: usize,
    twist: usize,
}

impl ModuleLabel {
    /// Validates 1 <= length <= n and reduces the twist into [0, n).
    pub fn new(order: usize, length: usize, twist: i64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        if length < 1 || length > order {
            return Err(Error::InvalidArgument(format!(
                "module length {length} out of range 1..={order}"
            )));
        }
        let n = order as i64;
        let twist = twist.rem_euclid(n) as usize;
        Ok(ModuleLabel { length, twist })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn twist(&self) -> usize {
        self.twist
    }

    pub fn is_valid_for(&self, order: usize) -> bool {
        self.length >= 1 && self.length <= order && self.twist < order
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.length, self.twist)
    }
}

/// A finite-dimensional H_n(q)-module given by the matrices of g and h.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixRep {
    order: usize,
    dim: usize,
    g: Matrix,
    h: Matrix,
}

impl MatrixRep {
    pub fn new(order: usize, g: Matrix, h: Matrix) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        if g.order() != order || h.order() != order {
            return Err(Error::OrderMismatch {
                left: g.order(),
                right: order,
            });
        }
        let dim = g.rows();
        if g.cols() != dim || h.rows() != dim || h.cols() != dim {
            return Err(Error::InvalidArgument(
                "g and h must be square matrices of equal size".into(),
            ));
        }
        Ok(MatrixRep { order, dim, g, h })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g_matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn h_matrix(&self) -> &Matrix {
        &self.h
    }

    /// Checks the defining relations g^n = 1, h^n = 0, hg = q gh.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.order;
        if !self.g.pow(n)?.is_identity() {
            return Err(Error::InvalidRepresentation("g^n != identity".into()));
        }
        if !self.h.pow(n)?.is_zero() {
            return Err(Error::InvalidRepresentation("h^n != 0".into()));
        }
        let q = CycloNum::root_of_unity(n, 1);
        let hg = self.h.mul(&self.g)?;
        let qgh = self.g.mul(&self.h)?.scale(&q);
        if hg != qgh {
            return Err(Error::InvalidRepresentation("hg != q gh".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump = |m: &Matrix| -> serde_json::Value {
            let rows: Vec<serde_json::Value> = (0..m.rows())
                .map(|r| {
                    serde_json::Value::Array((0..m.cols()).map(|c| m.at(r, c).to_json()).collect())
                })
                .collect();
            serde_json::Value::Array(rows)
        };
        serde_json::json!({
            "n": self.order,
            "dim": self.dim,
            "g": dump(&self.g),
            "h": dump(&self.h),
        })
    }
}

/// The standard matrix model of M(l, r): g acts by
/// diag(q^r, q^(r-1), ..., q^(r-l+1)) and h by the subdiagonal of ones, so
/// the standard basis satisfies v_(j+1) = h . v_j.
pub fn build_rep(order: usize, label: ModuleLabel) -> Result<MatrixRep> {
    if !label.is_valid_for(order) {
        return Err(Error::InvalidArgument(format!(
            "label {label} invalid for order {order}"
        )));
    }
    let l = label.length();
    let r = label.twist() as i64;
    let mut g = Matrix::zero(order, l, l);
    for j in 0..l {
        let e = (r - j as i64).rem_euclid(order as i64) as usize;
        g.set(j, j, CycloNum::root_of_unity(order, e));
    }
    let mut h = Matrix::zero(order, l, l);
    for j in 0..l.saturating_sub(1) {
        h.set(j + 1, j, CycloNum::one(order));
    }
    MatrixRep::new(order, g, h)
}

/// Socle and head residues of M(l, r): (r - l + 1, r) mod n.
pub fn socle_head(order: usize, label: ModuleLabel) -> Result<(usize, usize)> {
    if !label.is_valid_for(order) {
        return Err(Error::InvalidArgument(format!(
            "label {label} invalid for order {order}"
        )));
    }
    let n = order as i64;
    let soc = (label.twist() as i64 - label.length() as i64 + 1).rem_euclid(n) as usize;
    Ok((soc, label.twist()))
}

/// Socle and head residues recovered from the matrices of an indecomposable
/// representation: the socle is the g-eigenline ker h, the head is the
/// g-grade not covered by im h.
pub fn socle_head_from_rep(rep: &MatrixRep) -> Result<(usize, usize)> {
    let n = rep.order();
    let kernel = rep.h_matrix().kernel_basis();
    if kernel.cols() != 1 {
        return Err(Error::InvalidRepresentation(format!(
            "ker h has dimension {}, expected 1 for an indecomposable",
            kernel.cols()
        )));
    }
    let gv = rep.g_matrix().mul(&kernel)?;
    let soc = (0..n)
        .find(|&s| {
            let qs = CycloNum::root_of_unity(n, s);
            gv == kernel.scale(&qs)
        })
        .ok_or_else(|| {
            Error::InvalidRepresentation("socle is not a g-eigenline at a power of q".into())
        })?;

    // Head: the unique residue i with V_i not contained in im h.
    let image = rep.h_matrix().column_space_basis();
    let mut head = None;
    for i in 0..n {
        let proj = eigenspace_basis(rep, i)?;
        if proj.cols() == 0 {
            continue;
        }
        let combined = image.hstack(&proj)?;
        if combined.rank() > image.rank() {
            if head.is_some() {
                return Err(Error::InvalidRepresentation(
                    "head is not simple; representation is decomposable".into(),
                ));
            }
            head = Some(i);
        }
    }
    let head = head.ok_or_else(|| {
        Error::InvalidRepresentation("no head residue found (zero module?)".into())
    })?;
    Ok((soc, head))
}

/// Basis of the g-eigenspace for eigenvalue q^i, via the exact projector
/// rho(e_i) = (1/n) sum_j q^(-ij) rho(g)^j.
pub fn eigenspace_basis(rep: &MatrixRep, i: usize) -> Result<Matrix> {
    let n = rep.order();
    let inv_n = CycloNum::from_rational(
        n,
        num::BigRational::new(num::BigInt::from(1), num::BigInt::from(n as i64)),
    );
    let mut proj = Matrix::zero(n, rep.dim(), rep.dim());
    let mut g_pow = Matrix::identity(n, rep.dim());
    for j in 0..n {
        let w = CycloNum::root_of_unity(n, (n - i) * j % n); // q^(-ij)
        proj = proj.add(&g_pow.scale(&w))?;
        if j + 1 < n {
            g_pow = g_pow.mul(rep.g_matrix())?;
        }
    }
    proj = proj.scale(&inv_n);
    Ok(proj.column_space_basis())
}

/// Loewy length: the smallest s with h^s = 0.
pub fn loewy_length(rep: &MatrixRep) -> Result<usize> {
    let mut power = Matrix::identity(rep.order(), rep.dim());
    for s in 0..=rep.dim() {
        if power.is_zero() {
            return Ok(s);
        }
        power = power.mul(rep.h_matrix())?;
    }
    // A nilpotent d x d matrix has h^d = 0, so reaching this point means
    // h is not nilpotent at all.
    Err(Error::InvalidRepresentation("h is not nilpotent".into()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassFlags {
    pub simple: bool,
    pub projective: bool,
    pub injective: bool,
}

/// M(l, r) is simple iff l = 1 and projective = injective iff l = n.
pub fn classify(order: usize, label: ModuleLabel) -> Result<ClassFlags> {
    if !label.is_valid_for(order) {
        return Err(Error::InvalidArgument(format!(
            "label {label} invalid for order {order}"
        )));
    }
    Ok(ClassFlags {
        simple: label.length() == 1,
        projective: label.length() == order,
        injective: label.length() == order,
    })
}

/// All n^2 labels in canonical order: length ascending, then twist ascending.
pub fn enumerate(order: usize) -> Result<Vec<ModuleLabel>> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    let mut out = Vec::with_capacity(order * order);
    for l in 1..=order {
        for r in 0..order {
            out.push(ModuleLabel::new(order, l, r as i64)?);
        }
    }
    Ok(out)
}

/// The left regular representation of H_n(q) on its monomial basis.
pub fn regular_rep(order: usize) -> Result<MatrixRep> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    let g = TaftElement::gen_g(order).left_mul_matrix();
    let h = TaftElement::gen_h(order).left_mul_matrix();
    MatrixRep::new(order, g, h)
}
