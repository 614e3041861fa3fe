//! Dense matrices over an exact scalar type (rationals, Gaussian rationals,
//! rational intervals). Everything is computed exactly; inversion uses
//! Gauss-Jordan elimination with an exact nonzero pivot.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Mat<BigRational>;

impl<T> Mat<T> {
    /// Row-major construction; panics if the data length is inconsistent.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Mat<T> {
    pub fn from_fn<F: Fn(usize, usize) -> T>(rows: usize, cols: usize, f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// 2x2 block assembly `[[a, b], [c, d]]`; all blocks must agree in size.
    pub fn block2x2(a: &Mat<T>, b: &Mat<T>, c: &Mat<T>, d: &Mat<T>) -> Mat<T> {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Mat::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - a.cols).clone(),
                (false, true) => c.get(i - a.rows, j).clone(),
                (false, false) => d.get(i - a.rows, j - a.cols).clone(),
            }
        })
    }

    /// The four g x g blocks of a 2g x 2g matrix, as `(a, b, c, d)`.
    pub fn split2x2(&self) -> (Mat<T>, Mat<T>, Mat<T>, Mat<T>) {
        assert!(self.is_square() && self.rows.is_multiple_of(2));
        let g = self.rows / 2;
        let block = |ri: usize, ci: usize| {
            Mat::from_fn(g, g, |i, j| self.get(ri * g + i, ci * g + j).clone())
        };
        (block(0, 0), block(0, 1), block(1, 0), block(1, 1))
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
        let zt = Mat::zeros(a.rows, b.cols);
        let zb = Mat::zeros(b.rows, a.cols);
        Mat::block2x2(a, &zt, &zb, b)
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc + self.get(i, k).clone() * vk.clone();
                }
                acc
            })
            .collect()
    }

    pub fn scalar_mul(&self, c: &T) -> Mat<T> {
        self.map(|x| c.clone() * x.clone())
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn add_mat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn sub_mat(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    /// Determinant by cofactor expansion. No divisions, so it also works for
    /// interval entries; intended for small sizes only.
    pub fn det_laplace(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            panic!("determinant of empty matrix");
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = T::zero();
        let mut negate = false;
        for j in 0..n {
            let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
                self.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = self.get(0, j).clone() * minor.det_laplace();
            acc = if negate { acc - term } else { acc + term };
            negate = !negate;
        }
        acc
    }
}

impl<T> Mat<T>
where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>,
{
    /// Exact Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Mat<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::<T>::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot, j).clone());
                    a.set(pivot, j, tmp);
                    let tmp = inv.get(col, j).clone();
                    inv.set(col, j, inv.get(pivot, j).clone());
                    inv.set(pivot, j, tmp);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j).clone() / p.clone());
                inv.set(col, j, inv.get(col, j).clone() / p.clone());
            }
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    for j in 0..n {
                        let av = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                        a.set(r, j, av);
                        let iv = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                        inv.set(r, j, iv);
                    }
                }
            }
        }
        Some(inv)
    }

    /// Exact determinant by elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a.get(r, col).is_zero()) {
                Some(p) => p,
                None => return T::zero(),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(col, j).clone();
                    a.set(col, j, a.get(pivot, j).clone());
                    a.set(pivot, j, tmp);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = det * p.clone();
            for r in (col + 1)..n {
                if !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone() / p.clone();
                    for j in col..n {
                        let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                        a.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    /// Solve `self * x = b` for a single right-hand column.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let inv = self.inverse()?;
        Some(inv.mul_vec(b))
    }
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|q| q.is_integer())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}
