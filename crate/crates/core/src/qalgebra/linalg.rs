// Copyright 2026 The ionlc Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra used across the crate.
//!
//! Matrix exponential is the scaling-and-squaring Padé method (Higham 2005);
//! the logarithm is inverse scaling-and-squaring with Denman–Beavers square
//! roots. Hermitian eigendecomposition is delegated to `nalgebra`.

use ndarray::{Array1, Array2, Zip};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

pub fn commutator(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    a.dot(b) - b.dot(a)
}

pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    let mut worst: f64 = 0.0;
    Zip::from(a).and(b).for_each(|x, y| worst = worst.max((x - y).norm()));
    worst
}

pub fn trace(m: &Array2<C64>) -> C64 {
    m.diag().iter().sum()
}

pub fn frobenius_inner(a: &Array2<C64>, b: &Array2<C64>) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    Zip::from(a).and(b).for_each(|x, y| acc += x.conj() * y);
    acc
}

/// Largest absolute column sum.
pub fn norm1(m: &Array2<C64>) -> f64 {
    m.columns()
        .into_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// LU factorisation with partial pivoting, stored compactly.
pub struct Lu {
    lu: Array2<C64>,
    perm: Vec<usize>,
}

impl Lu {
    pub fn new(a: &Array2<C64>) -> Result<Self> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
        }
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[[i, k]].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                return Err(Error::NonConvergence { what: "LU factorisation", detail: "singular matrix".into() });
            }
            if p != k {
                for j in 0..n {
                    lu.swap([k, j], [p, j]);
                }
                perm.swap(k, p);
            }
            let pivot = lu[[k, k]];
            for i in (k + 1)..n {
                let f = lu[[i, k]] / pivot;
                lu[[i, k]] = f;
                if f != C64::new(0.0, 0.0) {
                    for j in (k + 1)..n {
                        let u = lu[[k, j]];
                        lu[[i, j]] -= f * u;
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    /// Solve `A X = B` for a matrix right-hand side.
    pub fn solve(&self, b: &Array2<C64>) -> Array2<C64> {
        let n = self.lu.nrows();
        let mut x = Array2::zeros(b.raw_dim());
        for (i, &p) in self.perm.iter().enumerate() {
            x.row_mut(i).assign(&b.row(p));
        }
        for col in 0..x.ncols() {
            for i in 0..n {
                let mut s = x[[i, col]];
                for k in 0..i {
                    s -= self.lu[[i, k]] * x[[k, col]];
                }
                x[[i, col]] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[[i, col]];
                for k in (i + 1)..n {
                    s -= self.lu[[i, k]] * x[[k, col]];
                }
                x[[i, col]] = s / self.lu[[i, i]];
            }
        }
        x
    }

    pub fn inverse(&self) -> Array2<C64> {
        self.solve(&identity(self.lu.nrows()))
    }
}

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Backward-error bounds for each Padé degree in double precision.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539398330063230e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068),
];
const THETA_13: f64 = 5.371920351148152;

fn scaled(m: &Array2<C64>, s: f64) -> Array2<C64> {
    m.mapv(|z| z * s)
}

/// Matrix exponential `exp(A)`.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return Array2::zeros((0, 0));
    }
    let norm = norm1(a);
    let eye = identity(n);
    if norm == 0.0 {
        return eye;
    }

    for &(m, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match m {
                3 => &PADE_3,
                5 => &PADE_5,
                7 => &PADE_7,
                _ => &PADE_9,
            };
            return pade_low(a, coeffs, &eye);
        }
    }

    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil().max(0.0) as i32 } else { 0 };
    let a = scaled(a, 0.5f64.powi(s));
    let b = &PADE_13;
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);
    let u_inner = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let u = a.dot(&(a6.dot(&u_inner) + scaled(&a6, b[7]) + scaled(&a4, b[5]) + scaled(&a2, b[3]) + scaled(&eye, b[1])));
    let v_inner = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let v = a6.dot(&v_inner) + scaled(&a6, b[6]) + scaled(&a4, b[4]) + scaled(&a2, b[2]) + scaled(&eye, b[0]);
    let mut r = pade_solve(&u, &v);
    for _ in 0..s {
        r = r.dot(&r);
    }
    r
}

fn pade_low(a: &Array2<C64>, b: &[f64], eye: &Array2<C64>) -> Array2<C64> {
    let a2 = a.dot(a);
    let mut power = eye.clone();
    let mut u_acc = Array2::<C64>::zeros(a.raw_dim());
    let mut v_acc = Array2::<C64>::zeros(a.raw_dim());
    for k in 0..b.len() / 2 {
        v_acc = v_acc + scaled(&power, b[2 * k]);
        u_acc = u_acc + scaled(&power, b[2 * k + 1]);
        power = power.dot(&a2);
    }
    let u = a.dot(&u_acc);
    pade_solve(&u, &v_acc)
}

fn pade_solve(u: &Array2<C64>, v: &Array2<C64>) -> Array2<C64> {
    let q = v - u;
    let p = v + u;
    Lu::new(&q).expect("Padé denominator is nonsingular inside the theta bound").solve(&p)
}

/// Principal square root by the Denman–Beavers iteration.
pub fn sqrtm(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = identity(n);
    for _ in 0..100 {
        let y_inv = Lu::new(&y)?.inverse();
        let z_inv = Lu::new(&z)?.inverse();
        let y_next = (&y + &z_inv).mapv(|v| v * 0.5);
        let z_next = (&z + &y_inv).mapv(|v| v * 0.5);
        let delta = max_abs_diff(&y_next, &y);
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * max_abs(&y).max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::NonConvergence { what: "matrix square root", detail: "Denman–Beavers stalled".into() })
}

/// Principal matrix logarithm for matrices with no eigenvalues on the
/// closed negative real axis.
pub fn logm(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.nrows();
    let eye = identity(n);
    let mut x = a.clone();
    let mut k = 0;
    while norm1(&(&x - &eye)) > 0.25 {
        x = sqrtm(&x)?;
        k += 1;
        if k > 60 {
            return Err(Error::NonConvergence { what: "matrix logarithm", detail: "too many square roots".into() });
        }
    }
    // log(I + Y) = Y - Y²/2 + Y³/3 - ...
    let y = &x - &eye;
    let mut term = y.clone();
    let mut acc = y.clone();
    for j in 2..200 {
        term = term.dot(&y);
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let contrib = scaled(&term, sign / j as f64);
        acc = acc + &contrib;
        if max_abs(&contrib) < 1e-17 {
            break;
        }
    }
    Ok(scaled(&acc, 2f64.powi(k)))
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching eigenvectors as columns.
pub fn eigh(a: &Array2<C64>) -> (Array1<f64>, Array2<C64>) {
    let n = a.nrows();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (a[[i, j]] + a[[j, i]].conj()));
    let eig = m.clone().symmetric_eigen();
    let (raw_values, raw_vectors) = if eig.eigenvalues.iter().chain(eig.eigenvectors.iter().map(|z| &z.re)).all(|v| v.is_finite()) {
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), Array2::from_shape_fn((n, n), |(r, c)| eig.eigenvectors[(r, c)]))
    } else {
        // The tridiagonal QR path can break down on very sparse input.
        jacobi_eigh(&Array2::from_shape_fn((n, n), |(i, j)| m[(i, j)]))
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_values[i].total_cmp(&raw_values[j]));
    let values = Array1::from_iter(order.iter().map(|&i| raw_values[i]));
    let vectors = Array2::from_shape_fn((n, n), |(r, c)| raw_vectors[[r, order[c]]]);
    (values, vectors)
}

/// Cyclic complex Jacobi on a Hermitian matrix; unsorted.
fn jacobi_eigh(h: &Array2<C64>) -> (Vec<f64>, Array2<C64>) {
    let n = h.nrows();
    let mut a = h.clone();
    let mut v = Array2::<C64>::eye(n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let off: f64 = a.indexed_iter().filter(|((i, j), _)| i != j).map(|(_, z)| z.norm_sqr()).sum::<f64>().sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a[[p, q]].norm();
                if b <= 1e-300 {
                    continue;
                }
                let phase = a[[p, q]] / b;
                let theta = (a[[q, q]].re - a[[p, p]].re) / (2.0 * b);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Columns p, q of the unitary diag(1, phase*) · [[c, s], [-s, c]].
                let (vpp, vpq, vqp, vqq) = (C64::new(c, 0.0), C64::new(s, 0.0), -phase.conj() * s, phase.conj() * c);
                for k in 0..n {
                    let (x, y) = (a[[k, p]], a[[k, q]]);
                    a[[k, p]] = x * vpp + y * vqp;
                    a[[k, q]] = x * vpq + y * vqq;
                    let (x, y) = (v[[k, p]], v[[k, q]]);
                    v[[k, p]] = x * vpp + y * vqp;
                    v[[k, q]] = x * vpq + y * vqq;
                }
                for k in 0..n {
                    let (x, y) = (a[[p, k]], a[[q, k]]);
                    a[[p, k]] = vpp.conj() * x + vqp.conj() * y;
                    a[[q, k]] = vpq.conj() * x + vqq.conj() * y;
                }
                a[[p, q]] = C64::new(0.0, 0.0);
                a[[q, p]] = C64::new(0.0, 0.0);
                a[[p, p]] = C64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = C64::new(a[[q, q]].re, 0.0);
            }
        }
    }
    ((0..n).map(|i| a[[i, i]].re).collect(), v)
}

/// Apply a real function to a Hermitian matrix through its spectrum.
pub fn hermitian_map(a: &Array2<C64>, f: impl Fn(f64) -> f64) -> Array2<C64> {
    let (vals, vecs) = eigh(a);
    let scaled_vecs = Array2::from_shape_fn(vecs.raw_dim(), |(r, c)| vecs[[r, c]] * f(vals[c]));
    scaled_vecs.dot(&dagger(&vecs))
}
