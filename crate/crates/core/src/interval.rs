//! Closed rational intervals. Used as a certification layer on top of the
//! exact arithmetic: every interval operation returns an enclosure of the
//! exact image, so a containment statement checked on intervals is a proof.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::Mat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QInterval {
    lo: BigRational,
    hi: BigRational,
}

impl QInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        QInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        QInterval { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn intersects(&self, other: &QInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo > BigRational::zero()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < BigRational::zero()
    }

    pub fn add(&self, other: &QInterval) -> QInterval {
        QInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &QInterval) -> QInterval {
        QInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> QInterval {
        QInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &QInterval) -> QInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        QInterval::new(lo, hi)
    }

    pub fn scale(&self, q: &BigRational) -> QInterval {
        self.mul(&QInterval::point(q.clone()))
    }
}

impl Add for QInterval {
    type Output = QInterval;
    fn add(self, rhs: QInterval) -> QInterval {
        QInterval::add(&self, &rhs)
    }
}

impl Sub for QInterval {
    type Output = QInterval;
    fn sub(self, rhs: QInterval) -> QInterval {
        QInterval::sub(&self, &rhs)
    }
}

impl Mul for QInterval {
    type Output = QInterval;
    fn mul(self, rhs: QInterval) -> QInterval {
        QInterval::mul(&self, &rhs)
    }
}

impl Neg for QInterval {
    type Output = QInterval;
    fn neg(self) -> QInterval {
        QInterval::neg(&self)
    }
}

impl Zero for QInterval {
    fn zero() -> Self {
        QInterval::point(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl One for QInterval {
    fn one() -> Self {
        QInterval::point(BigRational::one())
    }
}

pub type IntervalMatrix = Mat<QInterval>;

/// Point-interval image of an exact matrix.
pub fn interval_of_exact(m: &Mat<BigRational>) -> IntervalMatrix {
    m.map(|q| QInterval::point(q.clone()))
}

/// Does every entry of `m` contain the corresponding entry of `exact`?
pub fn encloses_exact(m: &IntervalMatrix, exact: &Mat<BigRational>) -> bool {
    assert_eq!((m.rows(), m.cols()), (exact.rows(), exact.cols()));
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).contains(exact.get(i, j))))
}

/// Entrywise nonempty intersection of two interval enclosures.
pub fn matrices_intersect(a: &IntervalMatrix, b: &IntervalMatrix) -> bool {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j).intersects(b.get(i, j))))
}

/// Largest width among off-diagonal entries.
pub fn max_offdiagonal_width(m: &IntervalMatrix) -> BigRational {
    let mut w = BigRational::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                let ww = m.get(i, j).width();
                if ww > w {
                    w = ww;
                }
            }
        }
    }
    w
}

/// Largest width among all entries.
pub fn max_width(m: &IntervalMatrix) -> BigRational {
    let mut w = BigRational::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let ww = m.get(i, j).width();
            if ww > w {
                w = ww;
            }
        }
    }
    w
}
