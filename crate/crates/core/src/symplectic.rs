//! Exact symplectic similitude linear algebra, on both sides of the modular
//! embedding: `GSp(2g)` over `Q` with its principal congruence subgroups
//! `Gamma(n)`, and 2x2 matrices over a totally real field `F` with the
//! membership tests for `G'(Q)` (rational determinant), `SL(D^-1 (+) O)` and
//! `Gamma'(n)`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Mat, RatMatrix};
use crate::numfield::{FieldElement, NumberField};

/// The standard symplectic form `[[0, I_g], [-I_g, 0]]` on `Q^2g`.
pub fn standard_form(g: usize) -> RatMatrix {
    assert!(g >= 1);
    Mat::from_fn(2 * g, 2 * g, |i, j| {
        if j == i + g {
            BigRational::one()
        } else if i == j + g {
            -BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// The similitude factor `nu` with `m^t psi m = nu psi`, if one exists.
/// `nu` is nonzero by definition; a degenerate product yields `None`.
pub fn similitude(m: &RatMatrix) -> Result<Option<BigRational>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_multiple_of(2) || m.rows() == 0 {
        return Err(Error::OddDimension(m.rows()));
    }
    let g = m.rows() / 2;
    let psi = standard_form(g);
    let s = m.transpose().matmul(&psi).matmul(m);
    // psi has a 1 at (0, g); read the candidate factor there
    let nu = s.get(0, g).clone();
    if nu.is_zero() {
        return Ok(None);
    }
    if s == psi.scalar_mul(&nu) {
        Ok(Some(nu))
    } else {
        Ok(None)
    }
}

/// Integral symplectic similitude together with its factor. The constructor
/// verifies the defining identity exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSpElement {
    mat: RatMatrix,
    nu: BigRational,
}

impl GSpElement {
    pub fn new(mat: RatMatrix) -> Result<Self> {
        let nu = similitude(&mat)?.ok_or(Error::NotSymplectic)?;
        Ok(GSpElement { mat, nu })
    }

    pub fn identity(g: usize) -> Self {
        GSpElement {
            mat: RatMatrix::identity(2 * g),
            nu: BigRational::one(),
        }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn nu(&self) -> &BigRational {
        &self.nu
    }

    pub fn genus(&self) -> usize {
        self.mat.rows() / 2
    }

    pub fn mul(&self, other: &GSpElement) -> GSpElement {
        GSpElement {
            mat: self.mat.matmul(&other.mat),
            nu: &self.nu * &other.nu,
        }
    }

    pub fn inverse(&self) -> GSpElement {
        let inv = self.mat.inverse().expect("symplectic similitudes are invertible");
        GSpElement {
            mat: inv,
            nu: BigRational::one() / &self.nu,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.mat.is_integral()
    }
}

/// Membership in `Gamma(n)`: integral entries, `nu = 1`, congruent to the
/// identity mod `n`. Levels below 3 are rejected (neatness hypothesis).
pub fn in_gamma(m: &RatMatrix, n: u32) -> Result<bool> {
    if n < 3 {
        return Err(Error::LevelTooSmall(n));
    }
    if !m.is_integral() {
        return Ok(false);
    }
    if similitude(m)? != Some(BigRational::one()) {
        return Ok(false);
    }
    let nq = BigRational::from_integer(n.into());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let delta = if i == j { BigRational::one() } else { BigRational::zero() };
            if !((m.get(i, j) - delta) / &nq).is_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// 2x2 matrix `[[a, b], [c, d]]` over `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBMatrix {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl HBMatrix {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        HBMatrix { a, b, c, d }
    }

    pub fn identity(nf: &NumberField) -> Self {
        HBMatrix::new(nf.one(), nf.zero(), nf.zero(), nf.one())
    }

    pub fn det(&self, nf: &NumberField) -> FieldElement {
        nf.sub(&nf.mul(&self.a, &self.d), &nf.mul(&self.b, &self.c))
    }

    pub fn mul(&self, nf: &NumberField, other: &HBMatrix) -> HBMatrix {
        HBMatrix::new(
            nf.add(&nf.mul(&self.a, &other.a), &nf.mul(&self.b, &other.c)),
            nf.add(&nf.mul(&self.a, &other.b), &nf.mul(&self.b, &other.d)),
            nf.add(&nf.mul(&self.c, &other.a), &nf.mul(&self.d, &other.c)),
            nf.add(&nf.mul(&self.c, &other.b), &nf.mul(&self.d, &other.d)),
        )
    }

    /// `(1/det) [[d, -b], [-c, a]]`; fails when the determinant is not
    /// invertible.
    pub fn inverse(&self, nf: &NumberField) -> Result<HBMatrix> {
        let det = self.det(nf);
        let inv_det = nf.inv(&det)?;
        Ok(HBMatrix::new(
            nf.mul(&self.d, &inv_det),
            nf.neg(&nf.mul(&self.b, &inv_det)),
            nf.neg(&nf.mul(&self.c, &inv_det)),
            nf.mul(&self.a, &inv_det),
        ))
    }
}

/// Membership in `G'(Q)`: the determinant must be a nonzero rational. The
/// rational is returned; `None` otherwise.
pub fn rational_det(nf: &NumberField, h: &HBMatrix) -> Option<BigRational> {
    let det = h.det(nf);
    let coords = det.coords();
    if coords[1..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let q = coords[0].clone();
    if q.is_zero() {
        None
    } else {
        Some(q)
    }
}

/// Membership in `SL(D^-1 (+) O)`: determinant 1, `a, d` in `O`, `b` in
/// `D^-1`, `c` in `D`.
pub fn in_sl_lattice(nf: &NumberField, h: &HBMatrix) -> bool {
    h.det(nf) == nf.one()
        && nf.is_in_order(&h.a)
        && nf.is_in_order(&h.d)
        && nf.is_in_inverse_different(&h.b)
        && nf.is_in_different(&h.c)
}

/// Membership in `Gamma'(n)`: determinant 1, `a, d` in `1 + nO`, `b` in
/// `nD^-1`, `c` in `nD`.
pub fn in_gamma_prime(nf: &NumberField, h: &HBMatrix, n: u32) -> Result<bool> {
    if n < 3 {
        return Err(Error::LevelTooSmall(n));
    }
    let inv_n = BigRational::new(1.into(), n.into());
    let shift = |x: &FieldElement| nf.scale(&nf.sub(x, &nf.one()), &inv_n);
    Ok(h.det(nf) == nf.one()
        && nf.is_in_order(&shift(&h.a))
        && nf.is_in_order(&shift(&h.d))
        && nf.is_in_inverse_different(&nf.scale(&h.b, &inv_n))
        && nf.is_in_different(&nf.scale(&h.c, &inv_n)))
}

/// Gram matrix of the trace symplectic form
/// `psi'((x1, y1), (x2, y2)) = Tr(x1 y2 - y1 x2)` on `D^-1 (+) O` in the
/// ordered basis `(e_1*, ..., e_g*, e_1, ..., e_g)`. Equality with
/// [`standard_form`] is exactly the statement that the dual-plus-order
/// lattice is standard in the trace coordinates.
pub fn trace_form_gram(nf: &NumberField) -> RatMatrix {
    let g = nf.degree();
    let first = |j: usize| -> (Option<&FieldElement>, Option<&FieldElement>) {
        if j < g {
            (Some(&nf.dual_basis()[j]), None)
        } else {
            (None, Some(&nf.basis()[j - g]))
        }
    };
    Mat::from_fn(2 * g, 2 * g, |j, k| {
        let (x1, y1) = first(j);
        let (x2, y2) = first(k);
        let mut acc = BigRational::zero();
        if let (Some(x1), Some(y2)) = (x1, y2) {
            acc += nf.trace(&nf.mul(x1, y2));
        }
        if let (Some(y1), Some(x2)) = (y1, x2) {
            acc -= nf.trace(&nf.mul(y1, x2));
        }
        acc
    })
}
