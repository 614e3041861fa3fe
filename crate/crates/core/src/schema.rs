//! JSON wire formats. All numbers cross the boundary as exact rational
//! strings (`"num"` or `"num/den"`, reduced, positive denominator);
//! serialization is deterministic (row-major, struct field order).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Mat, RatMatrix};
use crate::modembed::{HBPoint, Orientation, SiegelPoint};
use crate::numfield::{FieldElement, NumberField};
use crate::rational::{parse_rational, parse_rational_vec, rational_string};
use crate::symplectic::{GSpElement, HBMatrix};
use crate::symrep::SymTensor;
use crate::torsion::{HBTorsionPoint, TorsionPoint};

/// Input description of a field: ascending minimal-polynomial coefficients
/// and the order basis in power coordinates.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldDescription {
    pub minpoly: Vec<String>,
    pub basis: Vec<Vec<String>>,
}

impl FieldDescription {
    pub fn to_field(&self) -> Result<NumberField> {
        let minpoly = parse_rational_vec(&self.minpoly)?;
        let basis = self
            .basis
            .iter()
            .map(|v| parse_rational_vec(v))
            .collect::<Result<Vec<_>>>()?;
        NumberField::new(minpoly, basis)
    }

    pub fn from_field(nf: &NumberField) -> Self {
        FieldDescription {
            minpoly: nf.minpoly().coeffs().iter().map(rational_string).collect(),
            basis: nf.basis().iter().map(|e| element_strings(e)).collect(),
        }
    }
}

pub fn element_strings(x: &FieldElement) -> Vec<String> {
    x.coords().iter().map(rational_string).collect()
}

pub fn element_from_strings(nf: &NumberField, s: &[String]) -> Result<FieldElement> {
    nf.element(parse_rational_vec(s)?)
}

pub fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| rational_string(m.get(i, j))).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<String>]) -> Result<RatMatrix> {
    if rows.is_empty() {
        return Err(Error::BadInput("matrix needs at least one row".into()));
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::BadInput("matrix rows differ in length".into()));
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        for s in r {
            data.push(parse_rational(s)?);
        }
    }
    Ok(Mat::new(rows.len(), cols, data))
}

/// 2x2 matrix over the field, the four entries in power coordinates.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HBMatrixJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub d: Vec<String>,
}

impl HBMatrixJson {
    pub fn to_matrix(&self, nf: &NumberField) -> Result<HBMatrix> {
        Ok(HBMatrix::new(
            element_from_strings(nf, &self.a)?,
            element_from_strings(nf, &self.b)?,
            element_from_strings(nf, &self.c)?,
            element_from_strings(nf, &self.d)?,
        ))
    }

    pub fn from_matrix(h: &HBMatrix) -> Self {
        HBMatrixJson {
            a: element_strings(&h.a),
            b: element_strings(&h.b),
            c: element_strings(&h.c),
            d: element_strings(&h.d),
        }
    }
}

/// Point of the product upper half-plane, `re` and `im` in power
/// coordinates; parsing certifies total positivity of `im`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HBPointJson {
    pub re: Vec<String>,
    pub im: Vec<String>,
}

impl HBPointJson {
    pub fn to_point(&self, nf: &NumberField) -> Result<HBPoint> {
        HBPoint::new(
            nf,
            element_from_strings(nf, &self.re)?,
            element_from_strings(nf, &self.im)?,
            Orientation::Upper,
        )
    }

    pub fn from_point(p: &HBPoint) -> Self {
        HBPointJson {
            re: element_strings(p.re()),
            im: element_strings(p.im()),
        }
    }
}

/// Siegel point as two symmetric row-major matrices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SiegelPointJson {
    pub re: Vec<Vec<String>>,
    pub im: Vec<Vec<String>>,
}

impl SiegelPointJson {
    pub fn to_point(&self) -> Result<SiegelPoint> {
        SiegelPoint::new(
            matrix_from_rows(&self.re)?,
            matrix_from_rows(&self.im)?,
            Orientation::Upper,
        )
    }

    pub fn from_point(p: &SiegelPoint) -> Self {
        SiegelPointJson {
            re: matrix_rows(p.re()),
            im: matrix_rows(p.im()),
        }
    }
}

/// Field-side torsion input: `x` and `y` in power coordinates plus the level.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HBTorsionJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub n: u32,
}

impl HBTorsionJson {
    pub fn to_torsion(&self, nf: &NumberField) -> Result<HBTorsionPoint> {
        HBTorsionPoint::new(
            nf,
            element_from_strings(nf, &self.x)?,
            element_from_strings(nf, &self.y)?,
            self.n,
        )
    }

    pub fn from_torsion(t: &HBTorsionPoint) -> Self {
        HBTorsionJson {
            x: element_strings(t.x()),
            y: element_strings(t.y()),
            n: t.level(),
        }
    }
}

pub fn torsion_point_strings(v: &TorsionPoint) -> Vec<String> {
    v.coords().iter().map(rational_string).collect()
}

/// One monomial of a symmetric tensor; a tensor serializes as a list of
/// these, in the canonical exponent order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SymTermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
    pub twist: i64,
}

pub fn tensor_terms(t: &SymTensor) -> Vec<SymTermJson> {
    t.terms()
        .map(|(exps, coeff)| SymTermJson {
            exponents: exps.clone(),
            coeff: rational_string(coeff),
            twist: t.twist(),
        })
        .collect()
}

pub fn tensor_from_terms(g: usize, k: u32, terms: &[SymTermJson]) -> Result<SymTensor> {
    let twist = terms.first().map_or(0, |t| t.twist);
    if terms.iter().any(|t| t.twist != twist) {
        return Err(Error::BadInput("tensor terms carry different twists".into()));
    }
    let parsed = terms
        .iter()
        .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymTensor::from_terms(g, k, parsed)?.with_twist(twist))
}

/// Embedded matrix with its similitude factor.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GSpJson {
    pub matrix: Vec<Vec<String>>,
    pub nu: String,
}

impl GSpJson {
    pub fn from_element(m: &GSpElement) -> Self {
        GSpJson {
            matrix: matrix_rows(m.matrix()),
            nu: rational_string(m.nu()),
        }
    }
}
