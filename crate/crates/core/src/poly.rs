//! Univariate polynomials over the rationals, with the Sturm-sequence
//! machinery used for counting and isolating real roots.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::QInterval;

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in interval arithmetic; encloses the exact value on
    /// the whole input interval.
    pub fn eval_interval(&self, x: &QInterval) -> QInterval {
        let mut acc = QInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QInterval::point(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect();
        QPoly::new(coeffs)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(c * &factor);
                }
                quo[k] = factor;
            }
            rem.pop();
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    pub fn rem(&self, div: &QPoly) -> QPoly {
        self.div_rem(div).1
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = BigRational::one() / l;
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// `gcd(p, p')` is constant exactly when `p` is squarefree.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Strict bound `B` with every real root in `(-B, B)` (Cauchy bound for a
    /// monic polynomial).
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("root bound of zero polynomial");
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = (c / lead).abs();
            if a > m {
                m = a;
            }
        }
        m + BigRational::one()
    }
}

fn sign_of(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<QPoly>,
}

impl SturmSequence {
    pub fn new(p: &QPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        SturmSequence { seq }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_changes(self.seq.iter().map(|p| sign_of(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.seq.iter().map(|p| match p.degree() {
            None => 0,
            Some(d) => {
                let s = sign_of(p.leading().unwrap());
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }))
    }

    /// Number of real roots in `(a, b)`; requires `p(a) != 0 != p(b)`.
    pub fn count_roots_between(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a < b);
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Roots inside a closed interval whose endpoints are not roots.
    pub fn count_roots_in(&self, iv: &QInterval) -> usize {
        if iv.lo() == iv.hi() {
            return usize::from(self.seq[0].eval(iv.lo()).is_zero());
        }
        self.count_roots_between(iv.lo(), iv.hi())
    }
}
