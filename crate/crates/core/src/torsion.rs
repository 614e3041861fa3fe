//! n-torsion of the two universal families and its exact transport.
//!
//! Fiber points are kept in lattice coordinates: a torsion point of the
//! Siegel-side fiber is a rational `2g`-vector modulo `Z^2g`, a torsion point
//! of the Hilbert-Blumenthal fiber is a pair `(x, y)` with `nx` in `D^-1` and
//! `ny` in `O`, reduced modulo `D^-1 (+) O`. In these coordinates the
//! real-analytic identification of the two fibers is the identity, and
//! transport becomes the trace-pairing coordinate map
//! `(x, y) -> (Tr(x e_j), Tr(y e_j*))_j` reduced mod `Z^2g`.
//!
//! Convention, fixed once for the whole crate: matrices act on the left of
//! column vectors, `(x, y) -> (ax + by, cx + dy)`. This is the action under
//! which `SL(D^-1 (+) O)` preserves `D^-1 (+) O` and which matches the block
//! conjugation defining the group embedding, so the transport square and the
//! semidirect products below all commute exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matrix::RatMatrix;
use crate::modembed::{embed_matrix, embed_point, HBPoint, Orientation, SiegelPoint};
use crate::numfield::{FieldElement, NumberField};
use crate::rational::frac_part;
use crate::symplectic::{in_gamma, in_gamma_prime, in_sl_lattice, GSpElement, HBMatrix};

/// Torsion point of the genus-`g` Siegel fiber: a vector in
/// `(1/n) Z^2g / Z^2g`, stored by its representative in `[0, 1)^2g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionPoint {
    v: Vec<BigRational>,
    n: u32,
}

impl TorsionPoint {
    pub fn new(v: Vec<BigRational>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("torsion level must be positive".into()));
        }
        let nq = BigRational::from_integer(n.into());
        let v: Vec<BigRational> = v.iter().map(frac_part).collect();
        if v.iter().any(|c| !(c * &nq).is_integer()) {
            return Err(Error::BadInput(format!("vector is not {n}-torsion")));
        }
        Ok(TorsionPoint { v, n })
    }

    pub fn zero(g: usize, n: u32) -> Self {
        TorsionPoint {
            v: vec![BigRational::zero(); 2 * g],
            n,
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.v
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.v.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|c| c.is_zero())
    }

    /// Exact order: the least `k` with `k v` integral.
    pub fn order(&self) -> u32 {
        (1..=self.n)
            .find(|k| {
                let kq = BigRational::from_integer((*k).into());
                self.v.iter().all(|c| (c * &kq).is_integer())
            })
            .expect("order divides the level")
    }

    pub fn add(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        if self.n != other.n || self.v.len() != other.v.len() {
            return Err(Error::BadInput("torsion points of different shape".into()));
        }
        let v = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(a, b)| frac_part(&(a + b)))
            .collect();
        TorsionPoint::new(v, self.n)
    }

    /// Left action of an integral matrix, descending mod `Z^2g`.
    pub fn apply_integral(&self, m: &RatMatrix) -> Result<TorsionPoint> {
        if !m.is_integral() {
            return Err(Error::NotInLattice);
        }
        if m.cols() != self.v.len() {
            return Err(Error::DegreeMismatch(format!(
                "matrix of size {} on a vector of length {}",
                m.cols(),
                self.v.len()
            )));
        }
        TorsionPoint::new(m.mul_vec(&self.v), self.n)
    }
}

/// Stream of all `n^2g` torsion points in lexicographic order of numerators.
pub fn enumerate_torsion(n: u32, g: usize) -> TorsionEnumerator {
    assert!(n >= 1);
    TorsionEnumerator {
        n,
        g,
        next: Some(vec![0; 2 * g]),
    }
}

pub struct TorsionEnumerator {
    n: u32,
    g: usize,
    next: Option<Vec<u32>>,
}

impl Iterator for TorsionEnumerator {
    type Item = TorsionPoint;

    fn next(&mut self) -> Option<TorsionPoint> {
        let digits = self.next.take()?;
        let nq = BigInt::from(self.n);
        let v = digits
            .iter()
            .map(|&a| BigRational::new(a.into(), nq.clone()))
            .collect();
        // odometer step, rightmost digit fastest
        let mut succ = digits;
        let mut pos = 2 * self.g;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.n {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(TorsionPoint { v, n: self.n })
    }
}

/// Torsion point of the Hilbert-Blumenthal fiber: `nx` in `D^-1`, `ny` in
/// `O`, stored reduced modulo `D^-1 (+) O`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBTorsionPoint {
    x: FieldElement,
    y: FieldElement,
    n: u32,
}

impl HBTorsionPoint {
    pub fn new(nf: &NumberField, x: FieldElement, y: FieldElement, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadInput("torsion level must be positive".into()));
        }
        let nq = BigRational::from_integer(n.into());
        if !nf.is_in_inverse_different(&nf.scale(&x, &nq)) {
            return Err(Error::BadInput(format!("n*x does not lie in D^-1 for n = {n}")));
        }
        if !nf.is_in_order(&nf.scale(&y, &nq)) {
            return Err(Error::BadInput(format!("n*y does not lie in O for n = {n}")));
        }
        let xr: Vec<BigRational> = nf.coords_in_dual(&x).iter().map(frac_part).collect();
        let yr: Vec<BigRational> = nf.coords_in_basis(&y).iter().map(frac_part).collect();
        Ok(HBTorsionPoint {
            x: nf.from_dual_coords(&xr),
            y: nf.from_basis_coords(&yr),
            n,
        })
    }

    pub fn zero(nf: &NumberField, n: u32) -> Self {
        HBTorsionPoint {
            x: nf.zero(),
            y: nf.zero(),
            n,
        }
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn add(&self, nf: &NumberField, other: &HBTorsionPoint) -> Result<HBTorsionPoint> {
        if self.n != other.n {
            return Err(Error::BadInput("torsion points of different level".into()));
        }
        HBTorsionPoint::new(
            nf,
            nf.add(&self.x, &other.x),
            nf.add(&self.y, &other.y),
            self.n,
        )
    }

    /// Least `k` with `kx` in `D^-1` and `ky` in `O`, found by enumeration.
    pub fn order(&self, nf: &NumberField) -> u32 {
        (1..=self.n)
            .find(|k| {
                let kq = BigRational::from_integer((*k).into());
                nf.is_in_inverse_different(&nf.scale(&self.x, &kq))
                    && nf.is_in_order(&nf.scale(&self.y, &kq))
            })
            .expect("order divides the level")
    }
}

/// Lattice-coordinate transport of a torsion point across the embedding:
/// `(Tr(x e_1), ..., Tr(x e_g), Tr(y e_1*), ..., Tr(y e_g*))` mod `Z^2g`.
pub fn transport(nf: &NumberField, t: &HBTorsionPoint) -> TorsionPoint {
    let mut v = nf.coords_in_dual(&t.x);
    v.extend(nf.coords_in_basis(&t.y));
    TorsionPoint::new(v, t.n).expect("transport preserves the torsion level")
}

/// Inverse of [`transport`]: rebuild the field-side point from lattice
/// coordinates, `x` from the dual basis and `y` from the order basis.
pub fn hb_torsion_from_lattice(nf: &NumberField, v: &TorsionPoint) -> Result<HBTorsionPoint> {
    let g = nf.degree();
    if v.coords().len() != 2 * g {
        return Err(Error::BadCoordinateLength {
            got: v.coords().len(),
            expected: 2 * g,
        });
    }
    HBTorsionPoint::new(
        nf,
        nf.from_dual_coords(&v.coords()[..g]),
        nf.from_basis_coords(&v.coords()[g..]),
        v.level(),
    )
}

/// Value of the section at the fiber over `tau`: `v_1 + tau v_2` in `Q(i)^g`.
pub fn section_value(v: &TorsionPoint, tau: &SiegelPoint) -> Vec<GaussianRational> {
    assert_eq!(tau.orientation(), Orientation::Upper);
    let g = tau.genus();
    assert_eq!(v.coords().len(), 2 * g);
    let (v1, v2) = v.coords().split_at(g);
    (0..g)
        .map(|j| {
            let mut acc = GaussianRational::from_real(v1[j].clone());
            for k in 0..g {
                let t = GaussianRational::new(
                    tau.re().get(j, k).clone(),
                    tau.im().get(j, k).clone(),
                );
                acc = acc + t * GaussianRational::from_real(v2[k].clone());
            }
            acc
        })
        .collect()
}

/// Exact membership of `delta` in the fiber lattice `Z^g + tau Z^g`: solve
/// `delta = p + tau q` by splitting into real and imaginary parts
/// (`q = Im(tau)^-1 Im(delta)`, then `p = Re(delta) - Re(tau) q`) and check
/// that both solutions are integral.
pub fn in_fiber_lattice(tau: &SiegelPoint, delta: &[GaussianRational]) -> bool {
    assert_eq!(tau.orientation(), Orientation::Upper);
    let delta_im: Vec<BigRational> = delta.iter().map(|z| z.im.clone()).collect();
    let delta_re: Vec<BigRational> = delta.iter().map(|z| z.re.clone()).collect();
    let y_inv = tau
        .im()
        .inverse()
        .expect("positive definite imaginary part is invertible");
    let q = y_inv.mul_vec(&delta_im);
    if q.iter().any(|c| !c.is_integer()) {
        return false;
    }
    let xq = tau.re().mul_vec(&q);
    delta_re
        .iter()
        .zip(&xq)
        .all(|(r, s)| (r - s).is_integer())
}

/// Operational form of the cartesian-square compatibility: the section value
/// of the field-side point (dual-basis coordinates of `x` plus the embedded
/// point times the order-basis coordinates of `y`) agrees with the section
/// value of the transported point at the embedded base point, modulo the
/// fiber lattice.
pub fn check_cartesian_transport(
    nf: &NumberField,
    t: &HBTorsionPoint,
    tau: &HBPoint,
) -> Result<bool> {
    let stau = embed_point(nf, tau)?;
    let g = nf.degree();
    let c = nf.coords_in_dual(&t.x);
    let d = nf.coords_in_basis(&t.y);
    let lhs: Vec<GaussianRational> = (0..g)
        .map(|j| {
            let mut acc = GaussianRational::from_real(c[j].clone());
            for k in 0..g {
                let tjk = GaussianRational::new(
                    stau.re().get(j, k).clone(),
                    stau.im().get(j, k).clone(),
                );
                acc = acc + tjk * GaussianRational::from_real(d[k].clone());
            }
            acc
        })
        .collect();
    let rhs = section_value(&transport(nf, t), &stau);
    let delta: Vec<GaussianRational> = lhs
        .into_iter()
        .zip(rhs)
        .map(|(a, b)| a - b)
        .collect();
    Ok(in_fiber_lattice(&stau, &delta))
}

/// Action of `SL(D^-1 (+) O)` on field-side torsion, `(x, y) -> (ax + by,
/// cx + dy)`.
pub fn lattice_act(nf: &NumberField, h: &HBMatrix, t: &HBTorsionPoint) -> Result<HBTorsionPoint> {
    if !in_sl_lattice(nf, h) {
        return Err(Error::NotInLattice);
    }
    HBTorsionPoint::new(
        nf,
        nf.add(&nf.mul(&h.a, &t.x), &nf.mul(&h.b, &t.y)),
        nf.add(&nf.mul(&h.c, &t.x), &nf.mul(&h.d, &t.y)),
        t.n,
    )
}

/// Transport intertwines the two lattice actions: transporting the acted
/// point equals acting on the transported point by the embedded matrix.
pub fn check_lattice_equivariance(
    nf: &NumberField,
    t: &HBTorsionPoint,
    h: &HBMatrix,
) -> Result<bool> {
    let lhs = transport(nf, &lattice_act(nf, h, t)?);
    let m = embed_matrix(nf, h)?;
    let rhs = transport(nf, t).apply_integral(m.matrix())?;
    Ok(lhs == rhs)
}

// ---- semidirect products ----

/// Element of `Z^2g x| Gamma(n)` with the product
/// `(v_1, g_1)(v_2, g_2) = (v_1 + g_1 v_2, g_1 g_2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiegelSemidirect {
    v: Vec<BigInt>,
    gamma: GSpElement,
    level: u32,
}

fn integral_vec(v: &[BigRational]) -> Vec<BigInt> {
    v.iter().map(|q| q.to_integer()).collect()
}

fn rational_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|z| BigRational::from_integer(z.clone())).collect()
}

impl SiegelSemidirect {
    pub fn new(v: Vec<BigInt>, gamma: GSpElement, level: u32) -> Result<Self> {
        if !in_gamma(gamma.matrix(), level)? {
            return Err(Error::NotInLattice);
        }
        if v.len() != 2 * gamma.genus() {
            return Err(Error::BadCoordinateLength {
                got: v.len(),
                expected: 2 * gamma.genus(),
            });
        }
        Ok(SiegelSemidirect { v, gamma, level })
    }

    pub fn identity(g: usize, level: u32) -> Self {
        SiegelSemidirect {
            v: vec![BigInt::zero(); 2 * g],
            gamma: GSpElement::identity(g),
            level,
        }
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.v
    }

    pub fn transform(&self) -> &GSpElement {
        &self.gamma
    }

    pub fn mul(&self, other: &SiegelSemidirect) -> SiegelSemidirect {
        let moved = self.gamma.matrix().mul_vec(&rational_vec(&other.v));
        let v = self
            .v
            .iter()
            .zip(integral_vec(&moved))
            .map(|(a, b)| a + b)
            .collect();
        SiegelSemidirect {
            v,
            gamma: self.gamma.mul(&other.gamma),
            level: self.level,
        }
    }

    pub fn inverse(&self) -> SiegelSemidirect {
        let gamma_inv = self.gamma.inverse();
        let moved = gamma_inv.matrix().mul_vec(&rational_vec(&self.v));
        SiegelSemidirect {
            v: integral_vec(&moved).iter().map(|z| -z).collect(),
            gamma: gamma_inv,
            level: self.level,
        }
    }
}

/// Element of `(D^-1 (+) O) x| Gamma'(n)`, the lattice part stored in its
/// integral `(e*, e)` coordinates; the group part acts through the embedded
/// matrix, consistently with the convention above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBSemidirect {
    v: Vec<BigInt>,
    gamma: HBMatrix,
    level: u32,
}

impl HBSemidirect {
    pub fn new(nf: &NumberField, v: Vec<BigInt>, gamma: HBMatrix, level: u32) -> Result<Self> {
        if !in_gamma_prime(nf, &gamma, level)? {
            return Err(Error::NotInLattice);
        }
        if v.len() != 2 * nf.degree() {
            return Err(Error::BadCoordinateLength {
                got: v.len(),
                expected: 2 * nf.degree(),
            });
        }
        Ok(HBSemidirect { v, gamma, level })
    }

    pub fn identity(nf: &NumberField, level: u32) -> Self {
        HBSemidirect {
            v: vec![BigInt::zero(); 2 * nf.degree()],
            gamma: HBMatrix::identity(nf),
            level,
        }
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.v
    }

    pub fn transform(&self) -> &HBMatrix {
        &self.gamma
    }

    pub fn mul(&self, nf: &NumberField, other: &HBSemidirect) -> Result<HBSemidirect> {
        let m = embed_matrix(nf, &self.gamma)?;
        let moved = m.matrix().mul_vec(&rational_vec(&other.v));
        let v = self
            .v
            .iter()
            .zip(integral_vec(&moved))
            .map(|(a, b)| a + b)
            .collect();
        Ok(HBSemidirect {
            v,
            gamma: self.gamma.mul(nf, &other.gamma),
            level: self.level,
        })
    }

    pub fn inverse(&self, nf: &NumberField) -> Result<HBSemidirect> {
        let gamma_inv = self.gamma.inverse(nf)?;
        let m = embed_matrix(nf, &gamma_inv)?;
        let moved = m.matrix().mul_vec(&rational_vec(&self.v));
        Ok(HBSemidirect {
            v: integral_vec(&moved).iter().map(|z| -z).collect(),
            gamma: gamma_inv,
            level: self.level,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::numfield::test_fields::*;
    use crate::rational::{rat, ratio};
    use num_traits::Zero;
    use std::collections::BTreeSet;

    fn e1_star_third(nf: &NumberField) -> HBTorsionPoint {
        let x = nf.scale(&nf.dual_basis()[0], &ratio(1, 3));
        HBTorsionPoint::new(nf, x, nf.zero(), 3).unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_torsion(1, 2).count(), 1);
        assert_eq!(enumerate_torsion(2, 1).count(), 4);
        let pts: Vec<TorsionPoint> = enumerate_torsion(3, 2).collect();
        assert_eq!(pts.len(), 81);
        let set: BTreeSet<TorsionPoint> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 81);
        // lexicographic start: zero, then last coordinate moves first
        assert!(pts[0].is_zero());
        assert_eq!(pts[1].coords()[3], ratio(1, 3));
        assert_eq!(pts[1].coords()[0], rat(0));
    }

    #[test]
    fn torsion_point_reduction_and_order() {
        let t = TorsionPoint::new(vec![ratio(4, 3), ratio(-1, 3)], 3).unwrap();
        assert_eq!(t.coords(), &[ratio(1, 3), ratio(2, 3)]);
        assert_eq!(t.order(), 3);
        assert_eq!(TorsionPoint::zero(1, 3).order(), 1);
        let t6 = TorsionPoint::new(vec![ratio(1, 2), ratio(1, 3)], 6).unwrap();
        assert_eq!(t6.order(), 6);
        assert!(TorsionPoint::new(vec![ratio(1, 2)], 3).is_err());
    }

    #[test]
    fn transport_goldens() {
        let nf = golden_ratio_field();
        let zero = HBTorsionPoint::zero(&nf, 3);
        assert!(transport(&nf, &zero).is_zero());

        let t = e1_star_third(&nf);
        assert_eq!(
            transport(&nf, &t).coords(),
            &[ratio(1, 3), rat(0), rat(0), rat(0)]
        );

        let y = nf.scale(&nf.theta(), &ratio(1, 3));
        let t = HBTorsionPoint::new(&nf, nf.zero(), y, 3).unwrap();
        assert_eq!(
            transport(&nf, &t).coords(),
            &[rat(0), rat(0), rat(0), ratio(1, 3)]
        );
    }

    #[test]
    fn transport_is_a_bijection_on_full_torsion() {
        let nf = golden_ratio_field();
        let mut images = BTreeSet::new();
        for v in enumerate_torsion(3, nf.degree()) {
            let t = hb_torsion_from_lattice(&nf, &v).unwrap();
            let back = transport(&nf, &t);
            assert_eq!(back, v, "transport round trip failed");
            assert_eq!(t.order(&nf), v.order());
            images.insert(back);
        }
        assert_eq!(images.len(), 81);
    }

    #[test]
    fn transport_is_additive() {
        let nf = sqrt2_field();
        let pts: Vec<TorsionPoint> = enumerate_torsion(3, 2).collect();
        for (i, j) in [(5, 17), (80, 3), (40, 40), (7, 22)] {
            let a = hb_torsion_from_lattice(&nf, &pts[i]).unwrap();
            let b = hb_torsion_from_lattice(&nf, &pts[j]).unwrap();
            let lhs = transport(&nf, &a.add(&nf, &b).unwrap());
            let rhs = transport(&nf, &a).add(&transport(&nf, &b)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn section_value_goldens() {
        let tau = SiegelPoint::new(
            RatMatrix::zeros(1, 1),
            RatMatrix::identity(1),
            Orientation::Upper,
        )
        .unwrap();
        let zero = TorsionPoint::zero(1, 3);
        assert!(section_value(&zero, &tau).iter().all(|z| z.is_zero()));

        let v = TorsionPoint::new(vec![ratio(1, 3), rat(0)], 3).unwrap();
        assert_eq!(
            section_value(&v, &tau)[0],
            GaussianRational::from_real(ratio(1, 3))
        );
        let v = TorsionPoint::new(vec![rat(0), ratio(1, 3)], 3).unwrap();
        assert_eq!(
            section_value(&v, &tau)[0],
            GaussianRational::new(rat(0), ratio(1, 3))
        );
    }

    #[test]
    fn fiber_lattice_membership() {
        let nf = golden_ratio_field();
        let tau = SiegelPoint::new(
            RatMatrix::zeros(2, 2),
            nf.gram().clone(),
            Orientation::Upper,
        )
        .unwrap();
        // p + tau q for integral p, q lies in the lattice
        let p = [rat(2), rat(-1)];
        let q = [rat(1), rat(3)];
        let tq = tau.as_cmatrix().mul_vec(&[
            GaussianRational::from_real(q[0].clone()),
            GaussianRational::from_real(q[1].clone()),
        ]);
        let delta: Vec<GaussianRational> = (0..2)
            .map(|j| GaussianRational::from_real(p[j].clone()) + tq[j].clone())
            .collect();
        assert!(in_fiber_lattice(&tau, &delta));
        // a third of a lattice vector is not
        let delta = vec![
            GaussianRational::from_real(ratio(1, 3)),
            GaussianRational::zero(),
        ];
        assert!(!in_fiber_lattice(&tau, &delta));
        // non-integral q detected through the imaginary part
        let half_tq: Vec<GaussianRational> = tq
            .iter()
            .map(|z| z.clone() * GaussianRational::from_real(ratio(1, 2)))
            .collect();
        assert!(!in_fiber_lattice(&tau, &half_tq));
    }

    #[test]
    fn cartesian_transport_holds_on_full_torsion() {
        let nf = golden_ratio_field();
        let tau1 = HBPoint::new(&nf, nf.zero(), nf.one(), Orientation::Upper).unwrap();
        let im2 = nf.sub(&nf.rational(rat(2)), &nf.theta()); // totally positive
        let tau2 = HBPoint::new(&nf, nf.theta(), im2, Orientation::Upper).unwrap();
        for v in enumerate_torsion(3, nf.degree()) {
            let t = hb_torsion_from_lattice(&nf, &v).unwrap();
            for tau in [&tau1, &tau2] {
                assert!(check_cartesian_transport(&nf, &t, tau).unwrap());
            }
        }
    }

    #[test]
    fn congruence_elements_act_trivially_on_torsion() {
        let nf = golden_ratio_field();
        let e1s = nf.dual_basis()[0].clone();
        let h = HBMatrix::new(nf.one(), nf.scale(&e1s, &rat(3)), nf.zero(), nf.one());
        assert!(in_gamma_prime(&nf, &h, 3).unwrap());
        for v in enumerate_torsion(3, nf.degree()).take(20) {
            let t = hb_torsion_from_lattice(&nf, &v).unwrap();
            assert_eq!(lattice_act(&nf, &h, &t).unwrap(), t);
            assert!(check_lattice_equivariance(&nf, &t, &h).unwrap());
        }
    }

    #[test]
    fn lattice_equivariance_curated_cases() {
        let nf = golden_ratio_field();
        let sqrt5 = nf.sub(&nf.scale(&nf.theta(), &rat(2)), &nf.one());
        let upper = HBMatrix::new(nf.one(), nf.dual_basis()[0].clone(), nf.zero(), nf.one());
        let lower = HBMatrix::new(nf.one(), nf.zero(), sqrt5, nf.one());
        let word = upper.mul(&nf, &lower).mul(&nf, &upper);
        let t = e1_star_third(&nf);
        for h in [upper, lower, word, HBMatrix::identity(&nf)] {
            assert!(check_lattice_equivariance(&nf, &t, &h).unwrap());
        }
        // non-members are rejected
        let bad = HBMatrix::new(nf.one(), nf.zero(), nf.one(), nf.one());
        assert_eq!(
            lattice_act(&nf, &bad, &t).unwrap_err(),
            Error::NotInLattice
        );
    }

    #[test]
    fn semidirect_products_are_groups() {
        // Siegel side, g = 1, level 3
        let u = GSpElement::new(Mat::new(2, 2, vec![rat(1), rat(3), rat(0), rat(1)])).unwrap();
        let l = GSpElement::new(Mat::new(2, 2, vec![rat(1), rat(0), rat(3), rat(1)])).unwrap();
        let a = SiegelSemidirect::new(vec![BigInt::from(1), BigInt::from(-2)], u, 3).unwrap();
        let b = SiegelSemidirect::new(vec![BigInt::from(0), BigInt::from(4)], l, 3).unwrap();
        let c = SiegelSemidirect::new(
            vec![BigInt::from(-3), BigInt::from(5)],
            GSpElement::identity(1),
            3,
        )
        .unwrap();
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&a.inverse()), SiegelSemidirect::identity(1, 3));
        assert_eq!(a.inverse().mul(&a), SiegelSemidirect::identity(1, 3));

        // field side over Q(phi), level 3
        let nf = golden_ratio_field();
        let e1s = nf.dual_basis()[0].clone();
        let sqrt5 = nf.sub(&nf.scale(&nf.theta(), &rat(2)), &nf.one());
        let g1 = HBMatrix::new(nf.one(), nf.scale(&e1s, &rat(3)), nf.zero(), nf.one());
        let g2 = HBMatrix::new(nf.one(), nf.zero(), nf.scale(&sqrt5, &rat(3)), nf.one());
        let s1 = HBSemidirect::new(&nf, vec![BigInt::from(2); 4], g1, 3).unwrap();
        let s2 = HBSemidirect::new(&nf, vec![BigInt::from(-1); 4], g2, 3).unwrap();
        let s3 = HBSemidirect::identity(&nf, 3);
        let lhs = s1.mul(&nf, &s2).unwrap().mul(&nf, &s3).unwrap();
        let rhs = s1.mul(&nf, &s2.mul(&nf, &s3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let inv = s1.inverse(&nf).unwrap();
        assert_eq!(s1.mul(&nf, &inv).unwrap(), HBSemidirect::identity(&nf, 3));
        // group part must be a genuine congruence element
        let loose = HBMatrix::new(nf.one(), e1s, nf.zero(), nf.one());
        assert_eq!(
            HBSemidirect::new(&nf, vec![BigInt::from(0); 4], loose, 3).unwrap_err(),
            Error::NotInLattice
        );
    }
}
