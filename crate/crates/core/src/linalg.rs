//! Small dense complex matrices: enough for the rank checks that back the
//! injectivity and surjectivity criteria.

use num_complex::Complex;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::default(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Complex<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Complex::default(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Rank by Gaussian elimination with partial pivoting.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let scale = m.iter().fold(T::zero(), |s, c| s.max(c.norm()));
        if scale == T::zero() {
            return 0;
        }
        let tol = T::pivot_tol() * scale * T::from_f64_lossy((self.rows.max(self.cols)) as f64);
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let (best, mag) = (rank..rows)
                .map(|r| (r, m[r * cols + c].norm()))
                .fold((rank, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag <= tol {
                continue;
            }
            for k in 0..cols {
                m.swap(rank * cols + k, best * cols + k);
            }
            let p = m[rank * cols + c];
            for r in rank + 1..rows {
                let f = m[r * cols + c] / p;
                if f.norm() == T::zero() {
                    continue;
                }
                for k in c..cols {
                    let v = m[rank * cols + k];
                    m[r * cols + k] = m[r * cols + k] - f * v;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let mut m = CMatrix::<f64>::zeros(3, 3);
        assert_eq!(m.rank(), 0);
        m.set(0, 0, Complex::new(1.0, 0.0));
        m.set(1, 1, Complex::new(0.0, 1.0));
        assert_eq!(m.rank(), 2);
        m.set(2, 0, Complex::new(0.0, 2.0));
        assert_eq!(m.rank(), 2);
        m.set(2, 2, Complex::new(-1.0, 0.0));
        assert_eq!(m.rank(), 3);
        let v = m.mul_vec(&[Complex::new(1.0, 0.0); 3]);
        assert_eq!(v[2], Complex::new(-1.0, 2.0));
    }
}
