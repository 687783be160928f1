//! Cyclic Jacobi diagonalisation of small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a
//! diagonal unitary, then applies the real symmetric Jacobi rotation that
//! annihilates it. Sweeps continue until every off-diagonal magnitude is
//! below the convergence threshold.

use num_traits::Zero;

use super::matrix::Matrix;
use super::scalar::{Real, C};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

fn off_diagonal_max<T: Real>(m: &Matrix<T>) -> T {
    let n = m.dim();
    let mut worst = T::zero();
    for r in 0..n {
        for c in (r + 1)..n {
            worst = worst.max(m[(r, c)].norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues<T: Real>(m: &Matrix<T>) -> Result<Vec<T>> {
    let scale = m.as_slice().iter().fold(T::one(), |acc, z| acc.max(z.norm()));
    let deviation = m.hermitian_deviation();
    if deviation > T::derived_tol() * scale {
        return Err(Error::NotHermitian(deviation.to_f64().unwrap_or(f64::NAN)));
    }
    let n = m.dim();
    // Symmetrise so the rotations see an exactly Hermitian input.
    let mut a = Matrix::from_fn(n, |r, c| {
        if r == c {
            C::new(m[(r, r)].re, T::zero())
        } else {
            (m[(r, c)] + m[(c, r)].conj()) * T::lit(0.5)
        }
    });
    let threshold = T::lit(1e-13).max(T::epsilon() * T::lit(4.0)) * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_max(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

fn rotate<T: Real>(a: &mut Matrix<T>, p: usize, q: usize) {
    let n = a.dim();
    let g = a[(p, q)];
    let mag = g.norm();
    if mag.is_zero() {
        return;
    }
    // D† A D with D = diag(.., e^{-iφ} at q, ..) makes a_pq real positive.
    let phase = g / mag;
    for k in 0..n {
        a[(k, q)] = a[(k, q)] * phase.conj();
    }
    for k in 0..n {
        a[(q, k)] = a[(q, k)] * phase;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = if theta.is_zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    for k in 0..n {
        let kp = a[(k, p)];
        let kq = a[(k, q)];
        a[(k, p)] = kp * c - kq * s;
        a[(k, q)] = kp * s + kq * c;
    }
    for k in 0..n {
        let pk = a[(p, k)];
        let qk = a[(q, k)];
        a[(p, k)] = pk * c - qk * s;
        a[(q, k)] = pk * s + qk * c;
    }
    a[(p, q)] = C::zero();
    a[(q, p)] = C::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::scalar::re;

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let m = Matrix::<f64>::diagonal(&[0.25, 0.5, 0.25]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(ev, vec![0.5, 0.25, 0.25]);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let mut m = Matrix::<f64>::identity(2).scale(2.0);
        m[(0, 1)] = C::new(0.0, 1.0);
        m[(1, 0)] = C::new(0.0, -1.0);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] - 3.0).abs() < 1e-12);
        assert!((ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = Matrix::<f64>::identity(2);
        m[(0, 1)] = re(1.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn pure_projector_in_single_precision() {
        let v = [C::new(0.6f32, 0.0), C::new(0.0, 0.8)];
        let ev = hermitian_eigenvalues(&Matrix::outer(&v, &v)).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-5);
        assert!(ev[1].abs() < 1e-5);
    }
}
