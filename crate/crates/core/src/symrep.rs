//! Symmetric powers of the standard `2g`-dimensional representation, their
//! duals and the contraction map, plus the finite weight-parity check that
//! rules out morphisms of Shimura data from the zero-dimensional datum into
//! any symplectic one.
//!
//! Tensors are sparse: a map from exponent multi-indices of total degree `k`
//! to rational coefficients. Tate twists are carried as a formal integer tag,
//! never as transcendental scalars. The contraction uses the derivation
//! normalization `x^a (x) phi -> sum_i a_i phi_i x^(a - d_i)`, under which
//! equivariance holds with the inverse-transpose action on the dual and all
//! coefficients stay integral on integral input.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;

/// Sparse element of `Sym^k(Q^2g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    g: usize,
    k: u32,
    twist: i64,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SymTensor {
    pub fn zero(g: usize, k: u32) -> Self {
        SymTensor {
            g,
            k,
            twist: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(g: usize, exps: Vec<u32>, coeff: BigRational) -> Result<Self> {
        let mut t = SymTensor::zero(g, exps.iter().sum());
        if exps.len() != 2 * g {
            return Err(Error::BadCoordinateLength {
                got: exps.len(),
                expected: 2 * g,
            });
        }
        if !coeff.is_zero() {
            t.terms.insert(exps, coeff);
        }
        Ok(t)
    }

    pub fn from_terms<I>(g: usize, k: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = SymTensor::zero(g, k);
        for (exps, coeff) in terms {
            if exps.len() != 2 * g {
                return Err(Error::BadCoordinateLength {
                    got: exps.len(),
                    expected: 2 * g,
                });
            }
            if exps.iter().sum::<u32>() != k {
                return Err(Error::DegreeMismatch(format!(
                    "monomial of degree {} in a degree-{k} tensor",
                    exps.iter().sum::<u32>()
                )));
            }
            if !coeff.is_zero() {
                let entry = out.terms.entry(exps).or_insert_with(BigRational::zero);
                *entry += coeff;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.g != other.g || self.k != other.k || self.twist != other.twist {
            return Err(Error::DegreeMismatch("tensor shapes differ".into()));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SymTensor {
            g: self.g,
            k: self.k,
            twist: self.twist,
            terms,
        })
    }

    pub fn scale(&self, q: &BigRational) -> SymTensor {
        let mut out = self.clone();
        if q.is_zero() {
            out.terms.clear();
        } else {
            for c in out.terms.values_mut() {
                *c *= q;
            }
        }
        out
    }
}

/// Element of the dual of the standard representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVector {
    pub components: Vec<BigRational>,
}

impl DualVector {
    pub fn new(components: Vec<BigRational>) -> Self {
        DualVector { components }
    }

    pub fn basis(g: usize, i: usize) -> Self {
        let mut v = vec![BigRational::zero(); 2 * g];
        v[i] = BigRational::from_integer(1.into());
        DualVector::new(v)
    }
}

/// `dim Sym^k(Q^2g) = C(2g + k - 1, k)`.
pub fn sym_dim(g: usize, k: u32) -> u64 {
    num_integer::binomial((2 * g as u64) + u64::from(k) - 1, u64::from(k))
}

/// Substitution action of an invertible matrix: `x_i -> sum_j m_ji x_j`,
/// expanded and collected exactly. This is `Sym^k` of the left action on
/// column vectors, so it is a homomorphism in the matrix argument.
pub fn sym_action(m: &RatMatrix, v: &SymTensor) -> Result<SymTensor> {
    let n = 2 * v.g;
    if !m.is_square() || m.rows() != n {
        return Err(Error::DegreeMismatch(format!(
            "matrix of size {} acting on {n} variables",
            m.rows()
        )));
    }
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut out = SymTensor::zero(v.g, v.k);
    out.twist = v.twist;
    for (exps, coeff) in &v.terms {
        // expand prod_i (sum_j m_ji x_j)^(a_i)
        let mut poly: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        poly.insert(vec![0; n], coeff.clone());
        for (i, &a) in exps.iter().enumerate() {
            for _ in 0..a {
                let mut next: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
                for (e, c) in &poly {
                    for j in 0..n {
                        let mji = m.get(j, i);
                        if mji.is_zero() {
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2[j] += 1;
                        let entry = next.entry(e2).or_insert_with(BigRational::zero);
                        *entry += c * mji;
                    }
                }
                poly = next;
            }
        }
        for (e, c) in poly {
            let entry = out.terms.entry(e).or_insert_with(BigRational::zero);
            *entry += c;
        }
    }
    out.terms.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Inverse-transpose action on the dual, the partner of [`sym_action`] under
/// which [`contraction`] is equivariant.
pub fn dual_action(m: &RatMatrix, phi: &DualVector) -> Result<DualVector> {
    if !m.is_square() || m.rows() != phi.components.len() {
        return Err(Error::DegreeMismatch(format!(
            "matrix of size {} acting on a dual vector of length {}",
            m.rows(),
            phi.components.len()
        )));
    }
    let inv = m.inverse().ok_or(Error::SingularMatrix)?;
    Ok(DualVector::new(inv.transpose().mul_vec(&phi.components)))
}

/// Contraction `Sym^(k+1) (x) dual -> Sym^k` in the derivation normalization:
/// `x^a (x) phi -> sum_i a_i phi_i x^(a - d_i)`. Linear in both arguments.
pub fn contraction(v: &SymTensor, phi: &DualVector) -> Result<SymTensor> {
    if v.k == 0 {
        return Err(Error::DegreeZero);
    }
    if phi.components.len() != 2 * v.g {
        return Err(Error::BadCoordinateLength {
            got: phi.components.len(),
            expected: 2 * v.g,
        });
    }
    let mut out = SymTensor::zero(v.g, v.k - 1);
    out.twist = v.twist;
    for (exps, coeff) in &v.terms {
        for (i, &a) in exps.iter().enumerate() {
            if a == 0 || phi.components[i].is_zero() {
                continue;
            }
            let mut e2 = exps.clone();
            e2[i] -= 1;
            let add = coeff * &phi.components[i] * BigRational::from_integer(a.into());
            let entry = out.terms.entry(e2).or_insert_with(BigRational::zero);
            *entry += add;
        }
    }
    out.terms.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Projection of a degree-indexed product of tensors onto one degree; absent
/// components project to zero.
pub fn product_projection(
    g: usize,
    components: &BTreeMap<u32, SymTensor>,
    k: u32,
) -> SymTensor {
    match components.get(&k) {
        Some(t) => {
            debug_assert_eq!(t.degree(), k);
            t.clone()
        }
        None => SymTensor::zero(g, k),
    }
}

/// Weight multiset of a hypothetical cocharacter into `GSp(2r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharacterWeights {
    pub weights: Vec<i64>,
}

impl CocharacterWeights {
    pub fn new(weights: Vec<i64>) -> Self {
        CocharacterWeights { weights }
    }
}

/// Outcome of the parity check: precomposing with the norm cocharacter
/// doubles every weight, while factoring the standard Hodge cocharacter
/// would force every weight to equal 1. A multiset of even integers never
/// equals the all-ones multiset, so the report always records a
/// contradiction; the comparison is nevertheless computed, not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub doubled_weights: Vec<i64>,
    pub required_weights: Vec<i64>,
    pub contradiction: bool,
}

pub fn parity_obstruction(w: &CocharacterWeights, r: usize) -> Result<ObstructionReport> {
    if w.weights.len() != 2 * r {
        return Err(Error::WrongLength {
            got: w.weights.len(),
            expected: 2 * r,
        });
    }
    let mut doubled: Vec<i64> = w.weights.iter().map(|x| 2 * x).collect();
    doubled.sort_unstable();
    let required = vec![1i64; 2 * r];
    Ok(ObstructionReport {
        contradiction: doubled != required,
        doubled_weights: doubled,
        required_weights: required,
    })
}
