//! The modular embedding. The group map sends `[[a, b], [c, d]]` over `F`
//! (with rational determinant) to the exact rational `2g x 2g` matrix whose
//! four `g x g` blocks are the multiplication operators of `a, b, c, d`
//! between the dual-basis and order-basis coordinates of `D^-1 (+) O`; the
//! point map sends `tau` in the product upper half-plane to the Siegel point
//! with entries `Tr(tau e_j e_k)` over `Q(i)`.
//!
//! Both maps are computed exactly through the trace pairing. The classical
//! description by conjugation with `diag(R', R)`, where `R = (sigma_i(e_j))`
//! and `R' = (sigma_i(e_j*)) = (R^t)^-1`, is verified separately at interval
//! precision as a certified cross-check.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gaussian::{cmatrix_from_parts, cmatrix_parts, CMatrix};
use crate::interval::{
    encloses_exact, interval_of_exact, matrices_intersect, IntervalMatrix, QInterval,
};
use crate::matrix::{Mat, RatMatrix};
use crate::numfield::{FieldElement, NumberField, RealEmbeddingSet, Sign};
use crate::symplectic::{rational_det, GSpElement, HBMatrix};

/// Which component of the doubled half-space a point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Upper,
    Lower,
}

/// Point `tau = re + i im` of `F (x) Q(i)` with `im` totally positive
/// (orientation `Upper`) or totally negative (`Lower`), certified at
/// construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBPoint {
    re: FieldElement,
    im: FieldElement,
    orientation: Orientation,
}

impl HBPoint {
    pub fn new(
        nf: &NumberField,
        re: FieldElement,
        im: FieldElement,
        orientation: Orientation,
    ) -> Result<Self> {
        let signs = nf.embedding_signs(&im);
        let ok = match orientation {
            Orientation::Upper => signs.iter().all(|s| *s == Sign::Positive),
            Orientation::Lower => signs.iter().all(|s| *s == Sign::Negative),
        };
        if !ok {
            return Err(Error::NotUpperHalf);
        }
        Ok(HBPoint { re, im, orientation })
    }

    pub fn re(&self) -> &FieldElement {
        &self.re
    }

    pub fn im(&self) -> &FieldElement {
        &self.im
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

/// Siegel point `tau = re + i im` with symmetric rational matrices and
/// (for orientation `Upper`) positive definite imaginary part, checked by
/// exact leading principal minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelPoint {
    re: RatMatrix,
    im: RatMatrix,
    orientation: Orientation,
}

fn is_positive_definite(m: &RatMatrix) -> bool {
    debug_assert!(m.is_square());
    (1..=m.rows()).all(|k| {
        let minor = Mat::from_fn(k, k, |i, j| m.get(i, j).clone());
        minor.det().is_positive()
    })
}

impl SiegelPoint {
    pub fn new(re: RatMatrix, im: RatMatrix, orientation: Orientation) -> Result<Self> {
        if !re.is_symmetric() || !im.is_symmetric() {
            return Err(Error::BadInput("Siegel point matrices must be symmetric".into()));
        }
        if re.rows() != im.rows() {
            return Err(Error::BadInput("Siegel point parts differ in size".into()));
        }
        let definite = match orientation {
            Orientation::Upper => is_positive_definite(&im),
            Orientation::Lower => is_positive_definite(&im.scalar_mul(&-BigRational::one())),
        };
        if !definite {
            return Err(Error::NotUpperHalf);
        }
        Ok(SiegelPoint { re, im, orientation })
    }

    pub fn re(&self) -> &RatMatrix {
        &self.re
    }

    pub fn im(&self) -> &RatMatrix {
        &self.im
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn genus(&self) -> usize {
        self.re.rows()
    }

    pub fn as_cmatrix(&self) -> CMatrix {
        cmatrix_from_parts(&self.re, &self.im)
    }
}

// ---- exact arithmetic in F (x) Q(i) ----

#[derive(Debug, Clone, PartialEq, Eq)]
struct Cfe {
    re: FieldElement,
    im: FieldElement,
}

impl Cfe {
    fn from_point(tau: &HBPoint) -> Self {
        Cfe {
            re: tau.re.clone(),
            im: tau.im.clone(),
        }
    }

    fn real(x: &FieldElement, nf: &NumberField) -> Self {
        Cfe {
            re: x.clone(),
            im: nf.zero(),
        }
    }

    fn add(&self, nf: &NumberField, other: &Cfe) -> Cfe {
        Cfe {
            re: nf.add(&self.re, &other.re),
            im: nf.add(&self.im, &other.im),
        }
    }

    fn mul(&self, nf: &NumberField, other: &Cfe) -> Cfe {
        Cfe {
            re: nf.sub(&nf.mul(&self.re, &other.re), &nf.mul(&self.im, &other.im)),
            im: nf.add(&nf.mul(&self.re, &other.im), &nf.mul(&self.im, &other.re)),
        }
    }

    /// Inverse through the conjugate: `1/(u + iv) = (u - iv)/(u^2 + v^2)`.
    fn inv(&self, nf: &NumberField) -> Result<Cfe> {
        let norm = nf.add(&nf.mul(&self.re, &self.re), &nf.mul(&self.im, &self.im));
        let inv = nf.inv(&norm).map_err(|_| Error::SingularDenominator)?;
        Ok(Cfe {
            re: nf.mul(&self.re, &inv),
            im: nf.neg(&nf.mul(&self.im, &inv)),
        })
    }
}

// ---- interval data for R and R' ----

/// Interval enclosures of the embedding matrices `R = (sigma_i(e_j))` and
/// `R' = (sigma_i(e_j*))`, certified to satisfy `R^t R'` containing the
/// identity.
#[derive(Debug, Clone)]
pub struct EmbeddingData {
    embeddings: RealEmbeddingSet,
    r: IntervalMatrix,
    rstar: IntervalMatrix,
}

impl EmbeddingData {
    pub fn embeddings(&self) -> &RealEmbeddingSet {
        &self.embeddings
    }

    pub fn r(&self) -> &IntervalMatrix {
        &self.r
    }

    pub fn rstar(&self) -> &IntervalMatrix {
        &self.rstar
    }

    /// The certified enclosure `R^t R'`.
    pub fn enclosure_product(&self) -> IntervalMatrix {
        self.r.transpose().matmul(&self.rstar)
    }
}

/// Build interval matrices for `R` and `R'` at precision `p`, refining until
/// the enclosure of `R^t R'` contains the identity (it does at any precision,
/// because the exact product is the identity; the loop certifies it).
pub fn compute_embedding_data(nf: &NumberField, p: u32) -> EmbeddingData {
    let g = nf.degree();
    let mut prec = p.max(1);
    loop {
        let emb = nf.real_embeddings(prec);
        let col_evals: Vec<Vec<QInterval>> = nf
            .basis()
            .iter()
            .map(|e| nf.eval_at_embeddings(e, &emb))
            .collect();
        let dual_evals: Vec<Vec<QInterval>> = nf
            .dual_basis()
            .iter()
            .map(|e| nf.eval_at_embeddings(e, &emb))
            .collect();
        let r = Mat::from_fn(g, g, |i, j| col_evals[j][i].clone());
        let rstar = Mat::from_fn(g, g, |i, j| dual_evals[j][i].clone());
        let data = EmbeddingData {
            embeddings: emb,
            r,
            rstar,
        };
        if encloses_exact(&data.enclosure_product(), &RatMatrix::identity(g)) {
            return data;
        }
        prec = prec.saturating_mul(2);
    }
}

// ---- the embedding itself ----

/// Group map into `GSp(2g)`. The block at `(j, k)` is the trace pairing of
/// the corresponding entry against the bases:
///
/// * top-left     `Tr(a e_k* e_j)`  (mult by `a`, dual to dual),
/// * top-right    `Tr(b e_k  e_j)`  (mult by `b`, order to dual),
/// * bottom-left  `Tr(c e_k* e_j*)` (mult by `c`, dual to order),
/// * bottom-right `Tr(d e_k  e_j*)` (mult by `d`, order to order).
///
/// The similitude factor is the rational determinant of the input.
pub fn embed_matrix(nf: &NumberField, h: &HBMatrix) -> Result<GSpElement> {
    let q = rational_det(nf, h).ok_or(Error::NotInGPrime)?;
    let g = nf.degree();
    let basis = nf.basis();
    let dual = nf.dual_basis();
    let pair = |x: &FieldElement, from: &FieldElement, to: &FieldElement| {
        nf.trace(&nf.mul(&nf.mul(x, from), to))
    };
    let tl = Mat::from_fn(g, g, |j, k| pair(&h.a, &dual[k], &basis[j]));
    let tr = Mat::from_fn(g, g, |j, k| pair(&h.b, &basis[k], &basis[j]));
    let bl = Mat::from_fn(g, g, |j, k| pair(&h.c, &dual[k], &dual[j]));
    let br = Mat::from_fn(g, g, |j, k| pair(&h.d, &basis[k], &dual[j]));
    let mat = Mat::block2x2(&tl, &tr, &bl, &br);
    let out = GSpElement::new(mat)?;
    debug_assert_eq!(out.nu(), &q);
    Ok(out)
}

/// Point map into the Siegel half-space: entry `(j, k)` is `Tr(tau e_j e_k)`
/// computed in `Q(i)`.
pub fn embed_point(nf: &NumberField, tau: &HBPoint) -> Result<SiegelPoint> {
    if tau.orientation() != Orientation::Upper {
        return Err(Error::NotUpperHalf);
    }
    let g = nf.degree();
    let basis = nf.basis();
    let entry = |x: &FieldElement, j: usize, k: usize| {
        nf.trace(&nf.mul(&nf.mul(x, &basis[j]), &basis[k]))
    };
    let re = Mat::from_fn(g, g, |j, k| entry(tau.re(), j, k));
    let im = Mat::from_fn(g, g, |j, k| entry(tau.im(), j, k));
    SiegelPoint::new(re, im, Orientation::Upper)
}

/// Moebius action `(a tau + b)(c tau + d)^-1` on the product upper
/// half-plane, exactly in `F (x) Q(i)`. Requires a positive rational
/// determinant so that components are preserved.
pub fn hb_action(nf: &NumberField, h: &HBMatrix, tau: &HBPoint) -> Result<HBPoint> {
    let q = rational_det(nf, h).ok_or(Error::NotInGPrime)?;
    if !q.is_positive() {
        return Err(Error::NonPositiveSimilitude);
    }
    let t = Cfe::from_point(tau);
    let num = Cfe::real(&h.a, nf).mul(nf, &t).add(nf, &Cfe::real(&h.b, nf));
    let den = Cfe::real(&h.c, nf).mul(nf, &t).add(nf, &Cfe::real(&h.d, nf));
    let out = num.mul(nf, &den.inv(nf)?);
    HBPoint::new(nf, out.re, out.im, tau.orientation())
}

/// Moebius action `(A tau + B)(C tau + D)^-1` on the Siegel half-space,
/// exactly over `Q(i)`.
pub fn siegel_action(m: &GSpElement, tau: &SiegelPoint) -> Result<SiegelPoint> {
    if !m.nu().is_positive() {
        return Err(Error::NonPositiveSimilitude);
    }
    let (a, b, c, d) = m.matrix().split2x2();
    let real = |x: &RatMatrix| cmatrix_from_parts(x, &RatMatrix::zeros(x.rows(), x.cols()));
    let t = tau.as_cmatrix();
    let num = real(&a).matmul(&t).add_mat(&real(&b));
    let den = real(&c).matmul(&t).add_mat(&real(&d));
    let den_inv = den.inverse().ok_or(Error::SingularDenominator)?;
    let out = num.matmul(&den_inv);
    let (re, im) = cmatrix_parts(&out);
    SiegelPoint::new(re, im, tau.orientation())
}

/// Exact commutation of the square: embedding the acted point equals acting
/// on the embedded point by the embedded matrix.
pub fn check_equivariance(nf: &NumberField, h: &HBMatrix, tau: &HBPoint) -> Result<bool> {
    let lhs = embed_point(nf, &hb_action(nf, h, tau)?)?;
    let rhs = siegel_action(&embed_matrix(nf, h)?, &embed_point(nf, tau)?)?;
    Ok(lhs == rhs)
}

/// The trace symplectic form on `D^-1 (+) O` written in the dual-plus-order
/// basis equals the standard form; this is the identity that makes the group
/// map land in `GSp(2g)`.
pub fn check_symplectic_compat(nf: &NumberField) -> bool {
    crate::symplectic::trace_form_gram(nf) == crate::symplectic::standard_form(nf.degree())
}

/// Certified interval cross-check of the conjugation description: the
/// enclosures of `diag(R', R) * embed(h)` and `diag(a*, b*; c*, d*) *
/// diag(R', R)` must meet entrywise (both enclose the same exact matrix).
pub fn check_conjugation_intervals(nf: &NumberField, h: &HBMatrix, p: u32) -> Result<bool> {
    let g = nf.degree();
    let data = compute_embedding_data(nf, p);
    let big = Mat::block_diag(data.rstar(), data.r());
    let lhs = big.matmul(&interval_of_exact(embed_matrix(nf, h)?.matrix()));
    let diag = |x: &FieldElement| -> IntervalMatrix {
        let evals = nf.eval_at_embeddings(x, data.embeddings());
        Mat::from_fn(g, g, |i, j| {
            if i == j {
                evals[i].clone()
            } else {
                QInterval::zero()
            }
        })
    };
    let hstar = Mat::block2x2(&diag(&h.a), &diag(&h.b), &diag(&h.c), &diag(&h.d));
    let rhs = hstar.matmul(&big);
    Ok(matrices_intersect(&lhs, &rhs))
}
