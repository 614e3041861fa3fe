//! A totally real number field `F = Q[x]/(m)` of degree `g`, presented by a
//! monic squarefree minimal polynomial together with a Z-basis of an order
//! `O`. Elements are stored in power-basis coordinates; the order basis and
//! its trace-dual basis (a Z-basis of the inverse different `D^-1`) are
//! derived views through the trace pairing.
//!
//! Membership in the fractional ideals that drive all group-theoretic checks
//! is decided by exact trace pairing:
//!
//! * `x` in `O`    iff `Tr(x e_j*)` is an integer for all `j`;
//! * `x` in `D^-1` iff `Tr(x e_j)`  is an integer for all `j`;
//! * `x` in `D`    iff `x e_j*` lies in `O` for all `j`.
//!
//! Real embeddings are certified by Sturm-sequence isolation and bisection;
//! they are ordered ascendingly by root, which makes every matrix built from
//! them well defined and reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::QInterval;
use crate::matrix::{Mat, RatMatrix};
use crate::poly::{QPoly, SturmSequence};
use crate::rational::two_pow_neg;

/// Exact field element in power-basis coordinates `(c_0, ..., c_{g-1})`
/// representing `c_0 + c_1 t + ... + c_{g-1} t^{g-1}` for the root `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }
}

/// Exact sign of a real embedding value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Isolating intervals for the `g` real roots of the minimal polynomial,
/// sorted ascendingly, pairwise disjoint, of width at most `2^-precision`.
/// Interval endpoints are never roots.
#[derive(Debug, Clone)]
pub struct RealEmbeddingSet {
    intervals: Vec<QInterval>,
    precision: u32,
}

impl RealEmbeddingSet {
    pub fn intervals(&self) -> &[QInterval] {
        &self.intervals
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

#[derive(Debug, Clone)]
pub struct NumberField {
    minpoly: QPoly,
    degree: usize,
    basis: Vec<FieldElement>,
    dual: Vec<FieldElement>,
    basis_mat: RatMatrix,
    basis_mat_inv: RatMatrix,
    gram: RatMatrix,
    gram_inv: RatMatrix,
    disc: BigRational,
    power_traces: Vec<BigRational>,
    base_isolation: Vec<QInterval>,
    different: Vec<FieldElement>,
}

impl NumberField {
    /// Build the field and verify the order axioms. `minpoly` is the
    /// ascending coefficient list of a monic degree-`g` polynomial; `basis`
    /// holds `g` power-basis coordinate vectors spanning the order.
    pub fn new(minpoly: Vec<BigRational>, basis: Vec<Vec<BigRational>>) -> Result<Self> {
        if minpoly.len() < 2 {
            return Err(Error::BadInput("minimal polynomial must have degree >= 1".into()));
        }
        if minpoly.last().is_none_or(|c| !c.is_one()) {
            return Err(Error::BadInput("minimal polynomial must be monic".into()));
        }
        let g = minpoly.len() - 1;
        let minpoly = QPoly::new(minpoly);
        debug_assert_eq!(minpoly.degree(), Some(g));

        if !minpoly.is_squarefree() {
            return Err(Error::RepeatedRoots);
        }
        let sturm = SturmSequence::new(&minpoly);
        let found = sturm.count_real_roots();
        if found != g {
            return Err(Error::NotTotallyReal { degree: g, found });
        }

        if basis.len() != g {
            return Err(Error::BadInput(format!(
                "expected {g} basis vectors, got {}",
                basis.len()
            )));
        }
        for v in &basis {
            if v.len() != g {
                return Err(Error::BadCoordinateLength { got: v.len(), expected: g });
            }
        }
        let basis: Vec<FieldElement> = basis
            .into_iter()
            .map(|coords| FieldElement { coords })
            .collect();
        // column j holds the power coordinates of e_j
        let basis_mat = Mat::from_fn(g, g, |i, j| basis[j].coords[i].clone());
        let basis_mat_inv = basis_mat.inverse().ok_or(Error::SingularBasis)?;

        let mut nf = NumberField {
            minpoly,
            degree: g,
            basis,
            dual: vec![],
            basis_mat,
            basis_mat_inv,
            gram: RatMatrix::identity(g),
            gram_inv: RatMatrix::identity(g),
            disc: BigRational::one(),
            power_traces: vec![],
            base_isolation: vec![],
            different: vec![],
        };

        // traces of 1, t, t^2, ... make the trace form a fast linear map
        let mut power = nf.one();
        let theta = nf.theta();
        let mut power_traces = Vec::with_capacity(g);
        for _ in 0..g {
            power_traces.push(mat_trace(&nf.mult_matrix(&power)));
            power = nf.mul(&power, &theta);
        }
        nf.power_traces = power_traces;

        // ring closure: 1 and every product e_j e_k must be Z-combinations
        let one_coords = nf.basis_mat_inv.mul_vec(nf.one().coords());
        if !one_coords.iter().all(|c| c.is_integer()) {
            return Err(Error::NotAnOrder("1 is not in the Z-span of the basis".into()));
        }
        for j in 0..g {
            for k in j..g {
                let prod = nf.mul(&nf.basis[j].clone(), &nf.basis[k].clone());
                let coords = nf.basis_mat_inv.mul_vec(prod.coords());
                if !coords.iter().all(|c| c.is_integer()) {
                    return Err(Error::NotAnOrder(format!(
                        "product e_{}*e_{} leaves the Z-span",
                        j + 1,
                        k + 1
                    )));
                }
            }
        }

        let gram = Mat::from_fn(g, g, |j, k| {
            nf.trace(&nf.mul(&nf.basis[j].clone(), &nf.basis[k].clone()))
        });
        let disc = gram.det();
        // nondegenerate because the minimal polynomial is separable
        let gram_inv = gram.inverse().ok_or(Error::SingularBasis)?;

        // e_j* = sum_l (T^-1)_{jl} e_l
        let dual = (0..g)
            .map(|j| {
                let row: Vec<BigRational> = (0..g).map(|l| gram_inv.get(j, l).clone()).collect();
                FieldElement {
                    coords: nf.basis_mat.mul_vec(&row),
                }
            })
            .collect();

        nf.gram = gram;
        nf.gram_inv = gram_inv;
        nf.disc = disc;
        nf.dual = dual;
        nf.base_isolation = nf.isolate_roots();
        nf.different = nf.compute_different_basis();
        Ok(nf)
    }

    /// Z-basis of the different `D = {x in O : x D^-1 inside O}`, computed as
    /// the integer kernel of the congruence conditions
    /// `Tr(x e_j* e_k*) in Z` on the order coordinates of `x`.
    fn compute_different_basis(&self) -> Vec<FieldElement> {
        let g = self.degree;
        // condition matrix over Q: row (j, k), column l
        let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(g * g);
        for j in 0..g {
            for k in 0..g {
                let prod = self.mul(&self.dual[j], &self.dual[k]);
                a.push(
                    (0..g)
                        .map(|l| self.trace(&self.mul(&self.basis[l], &prod)))
                        .collect(),
                );
            }
        }
        let mut den = BigInt::one();
        for row in &a {
            for q in row {
                den = num_integer::lcm(den, q.denom().clone());
            }
        }
        // kernel of [N | -den I] over Z, projected to the first g coordinates
        let mut mat: Vec<Vec<BigInt>> = Vec::with_capacity(g * g);
        for (r, row) in a.iter().enumerate() {
            let mut m_row: Vec<BigInt> = row
                .iter()
                .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
                .collect();
            m_row.extend((0..g * g).map(|c| {
                if c == r {
                    -den.clone()
                } else {
                    BigInt::zero()
                }
            }));
            mat.push(m_row);
        }
        crate::zlattice::integer_kernel(&mat)
            .iter()
            .map(|v| {
                let coords: Vec<BigRational> = v[..g]
                    .iter()
                    .map(|z| BigRational::from_integer(z.clone()))
                    .collect();
                self.from_basis_coords(&coords)
            })
            .collect()
    }

    /// The cached Z-basis of the different; every element passes
    /// [`NumberField::is_in_different`].
    pub fn different_basis(&self) -> &[FieldElement] {
        &self.different
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    /// Gram matrix `T_{jk} = Tr(e_j e_k)` of the trace form on the order.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// `det T`, the discriminant of the order.
    pub fn discriminant(&self) -> &BigRational {
        &self.disc
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// The trace-dual basis `(e_1*, ..., e_g*)`, a Z-basis of `D^-1`.
    pub fn dual_basis(&self) -> &[FieldElement] {
        &self.dual
    }

    // ---- element construction ----

    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::BadCoordinateLength {
                got: coords.len(),
                expected: self.degree,
            });
        }
        Ok(FieldElement { coords })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.rational(BigRational::one())
    }

    pub fn rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[0] = q;
        FieldElement { coords }
    }

    /// The class of `x` (the root) itself.
    pub fn theta(&self) -> FieldElement {
        if self.degree == 1 {
            // x = -c for m = x + c
            return self.rational(-self.minpoly.coeffs()[0].clone());
        }
        let mut coords = vec![BigRational::zero(); self.degree];
        coords[1] = BigRational::one();
        FieldElement { coords }
    }

    /// `sum_j c_j e_j` from order-basis coordinates.
    pub fn from_basis_coords(&self, c: &[BigRational]) -> FieldElement {
        assert_eq!(c.len(), self.degree);
        FieldElement {
            coords: self.basis_mat.mul_vec(c),
        }
    }

    /// `sum_j c_j e_j*` from dual-basis coordinates.
    pub fn from_dual_coords(&self, c: &[BigRational]) -> FieldElement {
        assert_eq!(c.len(), self.degree);
        let mut acc = self.zero();
        for (cj, ej) in c.iter().zip(&self.dual) {
            acc = self.add(&acc, &self.scale(ej, cj));
        }
        acc
    }

    // ---- arithmetic ----

    fn reduce(&self, p: QPoly) -> FieldElement {
        let r = p.rem(&self.minpoly);
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.degree, BigRational::zero());
        FieldElement { coords }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            coords: x.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.reduce(x.as_poly().mul(&y.as_poly()))
    }

    pub fn scale(&self, x: &FieldElement, q: &BigRational) -> FieldElement {
        FieldElement {
            coords: x.coords.iter().map(|a| a * q).collect(),
        }
    }

    /// Division via the multiplication operator of the divisor. A divisor
    /// whose operator is singular (only zero, when the minimal polynomial is
    /// irreducible) is reported as a division by zero.
    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mult_matrix(y);
        let coords = m.solve(&x.coords).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { coords })
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.div(&self.one(), x)
    }

    /// Matrix of multiplication by `x` on the power basis.
    pub fn mult_matrix(&self, x: &FieldElement) -> RatMatrix {
        let g = self.degree;
        let theta = self.theta();
        let mut col = x.clone();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(g);
        for _ in 0..g {
            cols.push(col.coords.clone());
            col = self.mul(&col, &theta);
        }
        Mat::from_fn(g, g, |i, j| cols[j][i].clone())
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        x.coords
            .iter()
            .zip(&self.power_traces)
            .map(|(c, t)| c * t)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        self.mult_matrix(x).det()
    }

    // ---- trace-pairing coordinates and memberships ----

    /// `(Tr(x e_1), ..., Tr(x e_g))` — the coordinates of `x` in the dual
    /// basis, so `x = sum_k Tr(x e_k) e_k*`.
    pub fn coords_in_dual(&self, x: &FieldElement) -> Vec<BigRational> {
        self.basis
            .iter()
            .map(|e| self.trace(&self.mul(x, e)))
            .collect()
    }

    /// `(Tr(x e_1*), ..., Tr(x e_g*))` — the coordinates of `x` in the order
    /// basis, so `x = sum_k Tr(x e_k*) e_k`.
    pub fn coords_in_basis(&self, x: &FieldElement) -> Vec<BigRational> {
        self.dual
            .iter()
            .map(|e| self.trace(&self.mul(x, e)))
            .collect()
    }

    pub fn is_in_order(&self, x: &FieldElement) -> bool {
        self.coords_in_basis(x).iter().all(|c| c.is_integer())
    }

    pub fn is_in_inverse_different(&self, x: &FieldElement) -> bool {
        self.coords_in_dual(x).iter().all(|c| c.is_integer())
    }

    pub fn is_in_different(&self, x: &FieldElement) -> bool {
        self.dual.iter().all(|e| self.is_in_order(&self.mul(x, e)))
    }

    // ---- real embeddings ----

    fn split_point(&self, iv: &QInterval) -> BigRational {
        // the candidates are distinct, so at most `degree` of them are roots
        for d in 2..(self.degree + 3) {
            let t = iv.lo() + iv.width() / BigRational::from_integer((d as i64).into());
            if !self.minpoly.eval(&t).is_zero() {
                return t;
            }
        }
        unreachable!("more split candidates than roots");
    }

    fn isolate_roots(&self) -> Vec<QInterval> {
        let sturm = SturmSequence::new(&self.minpoly);
        let bound = self.minpoly.root_bound();
        let mut work = vec![QInterval::new(-bound.clone(), bound)];
        let mut isolated = Vec::with_capacity(self.degree);
        while let Some(iv) = work.pop() {
            match sturm.count_roots_between(iv.lo(), iv.hi()) {
                0 => {}
                1 => isolated.push(iv),
                _ => {
                    let s = self.split_point(&iv);
                    work.push(QInterval::new(iv.lo().clone(), s.clone()));
                    work.push(QInterval::new(s, iv.hi().clone()));
                }
            }
        }
        isolated.sort_by(|a, b| a.lo().cmp(b.lo()));
        debug_assert_eq!(isolated.len(), self.degree);
        isolated
    }

    /// Shrink an isolating interval below `target` width by sign bisection.
    fn refine_interval(&self, iv: &QInterval, target: &BigRational) -> QInterval {
        let m = &self.minpoly;
        let mut lo = iv.lo().clone();
        let mut hi = iv.hi().clone();
        let lo_positive = m.eval(&lo).is_positive();
        while &(&hi - &lo) > target {
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            let v = m.eval(&mid);
            if v.is_zero() {
                // hit the (rational) root exactly; clamp a tiny box around it
                let gap = [target.clone(), &hi - &mid, &mid - &lo]
                    .into_iter()
                    .min()
                    .unwrap()
                    / BigRational::from_integer(4.into());
                return QInterval::new(&mid - &gap, &mid + &gap);
            }
            if v.is_positive() == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        QInterval::new(lo, hi)
    }

    /// Certified isolating intervals of width at most `2^-p` for the ordered
    /// embeddings, pairwise disjoint.
    pub fn real_embeddings(&self, p: u32) -> RealEmbeddingSet {
        let target = two_pow_neg(p);
        let mut intervals: Vec<QInterval> = self
            .base_isolation
            .iter()
            .map(|iv| self.refine_interval(iv, &target))
            .collect();
        // distinct roots eventually separate the boxes
        let mut shrink = target;
        loop {
            let overlap = (1..intervals.len())
                .any(|i| intervals[i - 1].hi() >= intervals[i].lo());
            if !overlap {
                break;
            }
            shrink /= BigRational::from_integer(2.into());
            intervals = intervals
                .iter()
                .map(|iv| self.refine_interval(iv, &shrink))
                .collect();
        }
        RealEmbeddingSet {
            intervals,
            precision: p,
        }
    }

    /// Interval enclosures of `(sigma_1(x), ..., sigma_g(x))`.
    pub fn eval_at_embeddings(&self, x: &FieldElement, emb: &RealEmbeddingSet) -> Vec<QInterval> {
        let p = x.as_poly();
        emb.intervals.iter().map(|iv| p.eval_interval(iv)).collect()
    }

    /// Exact signs of all embedding values of `x`. Decidable because an
    /// embedding kills `x` exactly when its root divides `gcd(m, x)`.
    pub fn embedding_signs(&self, x: &FieldElement) -> Vec<Sign> {
        let px = x.as_poly();
        if px.is_zero() {
            return vec![Sign::Zero; self.degree];
        }
        let d = self.minpoly.gcd(&px);
        let dsturm = match d.degree() {
            Some(deg) if deg >= 1 => Some(SturmSequence::new(&d)),
            _ => None,
        };
        self.base_isolation
            .iter()
            .map(|base| {
                let mut iv = base.clone();
                let mut p = 8u32;
                loop {
                    let e = px.eval_interval(&iv);
                    if e.is_strictly_positive() {
                        return Sign::Positive;
                    }
                    if e.is_strictly_negative() {
                        return Sign::Negative;
                    }
                    if let Some(ds) = &dsturm {
                        if ds.count_roots_in(&iv) == 1 {
                            return Sign::Zero;
                        }
                    }
                    iv = self.refine_interval(&iv, &two_pow_neg(p));
                    p = p.saturating_mul(2);
                }
            })
            .collect()
    }

    pub fn is_totally_positive(&self, x: &FieldElement) -> bool {
        self.embedding_signs(x).iter().all(|s| *s == Sign::Positive)
    }
}

fn mat_trace(m: &RatMatrix) -> BigRational {
    let mut tr = BigRational::zero();
    for i in 0..m.rows() {
        tr += m.get(i, i);
    }
    tr
}


#[cfg(test)]
mod tests {
    use super::test_fields::*;
    use super::*;
    use crate::rational::{rat, ratio};

    /// Independent oracle: trace of the multiplication operator rebuilt from
    /// scratch with raw polynomial arithmetic.
    fn trace_oracle(nf: &NumberField, x: &FieldElement) -> BigRational {
        let m = nf.minpoly().clone();
        let g = nf.degree();
        let mut tr = BigRational::zero();
        for j in 0..g {
            // x * t^j mod m, coefficient of t^j
            let mut tj = vec![BigRational::zero(); j + 1];
            tj[j] = BigRational::one();
            let prod = QPoly::new(x.coords().to_vec()).mul(&QPoly::new(tj)).rem(&m);
            if let Some(c) = prod.coeffs().get(j) {
                tr += c;
            }
        }
        tr
    }

    #[test]
    fn gram_matrices_match_trace_oracle() {
        let nf = golden_ratio_field();
        assert_eq!(nf.gram(), &Mat::new(2, 2, vec![rat(2), rat(1), rat(1), rat(3)]));
        assert_eq!(nf.discriminant(), &rat(5));

        let nf = sqrt2_field();
        assert_eq!(nf.gram(), &Mat::new(2, 2, vec![rat(2), rat(0), rat(0), rat(4)]));
        assert_eq!(nf.discriminant(), &rat(8));

        let nf = rational_field();
        assert_eq!(nf.gram(), &Mat::new(1, 1, vec![rat(1)]));
        assert_eq!(nf.discriminant(), &rat(1));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            field(&["1", "-2", "1"], &[&["1", "0"], &["0", "1"]]).unwrap_err(),
            Error::RepeatedRoots
        );
        assert!(matches!(
            field(&["1", "0", "1"], &[&["1", "0"], &["0", "1"]]).unwrap_err(),
            Error::NotTotallyReal { degree: 2, found: 0 }
        ));
        assert_eq!(
            field(&["-1", "-1", "1"], &[&["1", "0"], &["2", "0"]]).unwrap_err(),
            Error::SingularBasis
        );
        // e_1 = 2: the span misses 1
        assert!(matches!(
            field(&["-1", "-1", "1"], &[&["2", "0"], &["0", "1"]]).unwrap_err(),
            Error::NotAnOrder(_)
        ));
        // e_2 = t/2: products escape the span
        assert!(matches!(
            field(&["-1", "-1", "1"], &[&["1", "0"], &["0", "1/2"]]).unwrap_err(),
            Error::NotAnOrder(_)
        ));
        assert!(matches!(
            field(&["-1", "-1", "2"], &[&["1", "0"], &["0", "1"]]).unwrap_err(),
            Error::BadInput(_)
        ));
    }

    #[test]
    fn arithmetic_in_golden_field() {
        let nf = golden_ratio_field();
        let phi = nf.theta();
        // phi^2 = phi + 1
        assert_eq!(
            nf.mul(&phi, &phi),
            nf.element(vec![rat(1), rat(1)]).unwrap()
        );
        // 1/phi = phi - 1
        assert_eq!(
            nf.inv(&phi).unwrap(),
            nf.element(vec![rat(-1), rat(1)]).unwrap()
        );
        assert_eq!(nf.div(&nf.one(), &nf.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn zero_divisors_report_division_by_zero() {
        // (x - 1)(x - 2): t - 1 is a nonzero zero divisor
        let nf = field(&["2", "-3", "1"], &[&["1", "0"], &["0", "1"]]).unwrap();
        let zd = nf.sub(&nf.theta(), &nf.one());
        assert!(!zd.is_zero());
        assert_eq!(nf.inv(&zd).unwrap_err(), Error::DivisionByZero);
        // while honest units still invert
        let u = nf.theta();
        assert_eq!(nf.mul(&nf.inv(&u).unwrap(), &u), nf.one());
    }

    #[test]
    fn arithmetic_in_sqrt2_field() {
        let nf = sqrt2_field();
        let s = nf.theta();
        assert_eq!(nf.mul(&s, &s), nf.rational(rat(2)));
        assert_eq!(nf.norm(&s), rat(-2));
        assert_eq!(nf.trace(&s), rat(0));
    }

    #[test]
    fn traces_match_independent_oracle() {
        let nf = golden_ratio_field();
        let phi = nf.theta();
        assert_eq!(nf.trace(&nf.one()), rat(2));
        assert_eq!(nf.trace(&phi), rat(1));
        assert_eq!(nf.trace(&nf.mul(&phi, &phi)), rat(3));
        for el in [
            nf.one(),
            phi.clone(),
            nf.mul(&phi, &phi),
            nf.element(vec![ratio(2, 3), ratio(-5, 7)]).unwrap(),
        ] {
            assert_eq!(nf.trace(&el), trace_oracle(&nf, &el));
        }
        // trace(1) = g in any degree
        let cubic = field(
            &["-1", "-3", "0", "1"],
            &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
        )
        .unwrap();
        assert_eq!(cubic.trace(&cubic.one()), rat(3));
    }

    #[test]
    fn dual_basis_duality() {
        let nf = golden_ratio_field();
        // e_1* = (3 - phi)/5, e_2* = (2 phi - 1)/5
        assert_eq!(
            nf.dual_basis()[0],
            nf.element(vec![ratio(3, 5), ratio(-1, 5)]).unwrap()
        );
        assert_eq!(
            nf.dual_basis()[1],
            nf.element(vec![ratio(-1, 5), ratio(2, 5)]).unwrap()
        );
        let nf = sqrt2_field();
        assert_eq!(
            nf.dual_basis()[0],
            nf.element(vec![ratio(1, 2), rat(0)]).unwrap()
        );
        assert_eq!(
            nf.dual_basis()[1],
            nf.element(vec![rat(0), ratio(1, 4)]).unwrap()
        );
        let nf = rational_field();
        assert_eq!(nf.dual_basis()[0], nf.one());

        for nf in [golden_ratio_field(), sqrt2_field(), rational_field()] {
            for (j, ej_star) in nf.dual_basis().iter().enumerate() {
                for (k, ek) in nf.basis().iter().enumerate() {
                    let expected = if j == k { rat(1) } else { rat(0) };
                    assert_eq!(nf.trace(&nf.mul(ej_star, ek)), expected);
                }
            }
        }
    }

    #[test]
    fn dual_of_dual_recovers_the_order() {
        for nf in [golden_ratio_field(), sqrt2_field()] {
            let g = nf.degree();
            // Gram of the duals, inverted, applied to the duals again
            let dual_gram = Mat::from_fn(g, g, |j, k| {
                nf.trace(&nf.mul(&nf.dual_basis()[j], &nf.dual_basis()[k]))
            });
            let inv = dual_gram.inverse().unwrap();
            let mut re_derived = Vec::new();
            for j in 0..g {
                let mut acc = nf.zero();
                for l in 0..g {
                    acc = nf.add(&acc, &nf.scale(&nf.dual_basis()[l], inv.get(j, l)));
                }
                re_derived.push(acc);
            }
            // change of basis from e to the re-derived family is integral
            // with determinant +-1
            let b = Mat::from_fn(g, g, |i, j| re_derived[j].coords()[i].clone());
            let u = nf.basis_mat_inv.matmul(&b);
            assert!(u.is_integral());
            assert!(u.det().abs() == rat(1));
        }
    }

    #[test]
    fn coordinate_round_trips() {
        let nf = golden_ratio_field();
        let e1_star = nf.dual_basis()[0].clone();
        assert_eq!(nf.coords_in_dual(&e1_star), vec![rat(1), rat(0)]);
        assert_eq!(nf.coords_in_basis(&nf.basis()[1]), vec![rat(0), rat(1)]);
        let phi = nf.theta();
        let phi2 = nf.mul(&phi, &phi);
        assert_eq!(nf.coords_in_basis(&phi2), vec![rat(1), rat(1)]);

        let x = nf.element(vec![ratio(3, 7), ratio(-2, 5)]).unwrap();
        assert_eq!(nf.from_dual_coords(&nf.coords_in_dual(&x)), x);
        assert_eq!(nf.from_basis_coords(&nf.coords_in_basis(&x)), x);
    }

    #[test]
    fn embeddings_isolate_and_refine() {
        let nf = golden_ratio_field();
        let emb = nf.real_embeddings(10);
        let ivs = emb.intervals();
        assert_eq!(ivs.len(), 2);
        let tol = two_pow_neg(10);
        for iv in ivs {
            assert!(iv.width() <= tol);
            // genuine sign change across each interval
            let m = nf.minpoly();
            assert!(m.eval(iv.lo()).is_positive() != m.eval(iv.hi()).is_positive());
        }
        // roots (1 - sqrt5)/2 ~ -0.618 and (1 + sqrt5)/2 ~ 1.618
        assert!(ivs[0].contains(&ratio(-618, 1000)) || ivs[0].lo() > &ratio(-619, 1000));
        assert!(ivs[0].lo() > &ratio(-62, 100) && ivs[0].hi() < &ratio(-61, 100));
        assert!(ivs[1].lo() > &ratio(161, 100) && ivs[1].hi() < &ratio(162, 100));

        let nf = sqrt2_field();
        let emb = nf.real_embeddings(20);
        let ivs = emb.intervals();
        assert!(ivs[0].lo() > &ratio(-141422, 100000) && ivs[0].hi() < &ratio(-141421, 100000));
        assert!(ivs[1].lo() > &ratio(141421, 100000) && ivs[1].hi() < &ratio(141422, 100000));
        assert!(ivs[0].width() <= two_pow_neg(20));

        // rational root found exactly
        let nf = field(&["-3/2", "1"], &[&["1"]]).unwrap();
        let emb = nf.real_embeddings(12);
        assert!(emb.intervals()[0].contains(&ratio(3, 2)));
    }

    #[test]
    fn interval_gram_encloses_exact_gram() {
        for nf in [golden_ratio_field(), sqrt2_field()] {
            let emb = nf.real_embeddings(24);
            let g = nf.degree();
            for j in 0..g {
                for k in 0..g {
                    let ev_j = nf.eval_at_embeddings(&nf.basis()[j], &emb);
                    let ev_k = nf.eval_at_embeddings(&nf.basis()[k], &emb);
                    let mut acc = QInterval::point(rat(0));
                    for i in 0..g {
                        acc = acc.add(&ev_j[i].mul(&ev_k[i]));
                    }
                    assert!(acc.contains(nf.gram().get(j, k)));
                }
            }
        }
    }

    #[test]
    fn embedding_signs_are_exact() {
        let nf = golden_ratio_field();
        let phi = nf.theta();
        assert_eq!(nf.embedding_signs(&phi), vec![Sign::Negative, Sign::Positive]);
        assert!(!nf.is_totally_positive(&phi));
        // 2 - phi is totally positive: 2 - 1.618 > 0 and 2 + 0.618 > 0
        let x = nf.sub(&nf.rational(rat(2)), &phi);
        assert!(nf.is_totally_positive(&x));
        assert_eq!(nf.embedding_signs(&nf.zero()), vec![Sign::Zero, Sign::Zero]);

        // reducible minimal polynomial: (x-1)(x-2); x - 1 vanishes at one root
        let nf = field(&["2", "-3", "1"], &[&["1", "0"], &["0", "1"]]).unwrap();
        let x = nf.sub(&nf.theta(), &nf.one());
        assert_eq!(nf.embedding_signs(&x), vec![Sign::Zero, Sign::Positive]);
    }

    #[test]
    fn trace_form_is_positive_on_nonzero_elements() {
        let nf = golden_ratio_field();
        let samples = [
            nf.element(vec![rat(1), rat(0)]).unwrap(),
            nf.element(vec![rat(0), rat(1)]).unwrap(),
            nf.element(vec![ratio(-7, 3), ratio(2, 9)]).unwrap(),
            nf.element(vec![rat(5), rat(-8)]).unwrap(),
        ];
        for x in &samples {
            assert!(nf.trace(&nf.mul(x, x)).is_positive());
            // and the interval route agrees
            let emb = nf.real_embeddings(24);
            let evs = nf.eval_at_embeddings(x, &emb);
            let mut acc = QInterval::point(rat(0));
            for e in &evs {
                acc = acc.add(&e.mul(e));
            }
            assert!(acc.contains(&nf.trace(&nf.mul(x, x))));
        }
        // symmetry of the pairing
        let x = &samples[2];
        let y = &samples[3];
        assert_eq!(nf.trace(&nf.mul(x, y)), nf.trace(&nf.mul(y, x)));
    }

    #[test]
    fn different_basis_is_exact() {
        // every basis vector passes the independent trace-pairing membership
        // test, and the index [O : D] equals |disc| on the test fields
        for nf in [
            golden_ratio_field(),
            sqrt2_field(),
            rational_field(),
            cubic49_field(),
            cubic81_field(),
        ] {
            let g = nf.degree();
            let basis = nf.different_basis();
            assert_eq!(basis.len(), g);
            for b in basis {
                assert!(nf.is_in_different(b));
                assert!(nf.is_in_order(b));
            }
            let coords = Mat::from_fn(g, g, |i, j| nf.coords_in_basis(&basis[j])[i].clone());
            assert_eq!(coords.det().abs(), nf.discriminant().abs());
        }
        // Q(phi): sqrt5 generates the different, so sqrt5 must be an integral
        // combination of the computed basis
        let nf = golden_ratio_field();
        let sqrt5 = nf.sub(&nf.scale(&nf.theta(), &rat(2)), &nf.one());
        let b = Mat::from_fn(2, 2, |i, j| {
            nf.coords_in_basis(&nf.different_basis()[j])[i].clone()
        });
        let sol = b.solve(&nf.coords_in_basis(&sqrt5)).unwrap();
        assert!(sol.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn membership_by_trace_pairing() {
        let nf = golden_ratio_field();
        let phi = nf.theta();
        assert!(nf.is_in_order(&phi));
        assert!(!nf.is_in_order(&nf.dual_basis()[0]));
        assert!(nf.is_in_inverse_different(&nf.dual_basis()[0]));
        assert!(nf.is_in_inverse_different(&phi)); // O inside D^-1
        // sqrt5 = 2 phi - 1 generates the different
        let sqrt5 = nf.sub(&nf.scale(&phi, &rat(2)), &nf.one());
        assert!(nf.is_in_different(&sqrt5));
        assert!(!nf.is_in_different(&nf.one()));
        // and in the rational field everything collapses
        let q = rational_field();
        assert!(q.is_in_different(&q.one()));
        assert!(q.is_in_inverse_different(&q.one()));
    }
}
