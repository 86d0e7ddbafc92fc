use super::linalg::{max_abs_c, norm1_c, CMatrix4, C64, ONE, ZERO};
use crate::error::{Error, Result};

const N: usize = 4;
const MAX_SWEEPS: usize = 60;
/// Eigenvector-matrix condition number above which the input is treated as
/// defective.
const MAX_EIGVEC_CONDITION: f64 = 1e8;

/// Eigenpairs of a complex 4×4 matrix. `vectors` holds unit-norm right
/// eigenvectors as columns, in the order of `values`.
#[derive(Debug, Clone)]
pub struct Eigen4 {
    pub values: [C64; 4],
    pub vectors: CMatrix4,
    /// `‖X‖₁‖X⁻¹‖₁` of the eigenvector matrix.
    pub condition: f64,
}

/// Complex Schur decomposition by Householder reduction to Hessenberg form
/// followed by Wilkinson-shifted QR sweeps; eigenvectors by back-substitution
/// on the triangular factor.
pub fn eig4(m: &CMatrix4) -> Result<Eigen4> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFiniteInput { name: "eig4" });
    }
    let scale = norm1_c(m);
    if scale == 0.0 {
        return Ok(Eigen4 {
            values: [ZERO; 4],
            vectors: CMatrix4::identity(),
            condition: 1.0,
        });
    }
    let (mut h, mut q) = hessenberg(m);
    schur_qr(&mut h, &mut q, scale)?;
    let mut values = [ZERO; 4];
    for (k, v) in values.iter_mut().enumerate() {
        *v = h[(k, k)];
    }
    let vectors = q * triangular_eigenvectors(&h, scale);

    let condition = match vectors.try_inverse() {
        Some(inv) => norm1_c(&vectors) * norm1_c(&inv),
        None => f64::INFINITY,
    };
    if !(condition <= MAX_EIGVEC_CONDITION) {
        return Err(Error::NearDefective { condition });
    }
    Ok(Eigen4 {
        values,
        vectors,
        condition,
    })
}

fn hessenberg(m: &CMatrix4) -> (CMatrix4, CMatrix4) {
    let mut h = *m;
    let mut q = CMatrix4::identity();
    for k in 0..N - 2 {
        let tail: f64 = (k + 2..N).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let norm = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 {
            ONE
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;

        let mut v = [ZERO; N];
        for i in k + 1..N {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // H ← P H P, Q ← Q P with P = I − 2vv†.
        for j in 0..N {
            let dot: C64 = (k + 1..N).map(|i| v[i].conj() * h[(i, j)]).sum();
            for i in k + 1..N {
                h[(i, j)] -= v[i] * dot * 2.0;
            }
        }
        for i in 0..N {
            let dot: C64 = (k + 1..N).map(|j| h[(i, j)] * v[j]).sum();
            for j in k + 1..N {
                h[(i, j)] -= dot * v[j].conj() * 2.0;
            }
            let dot: C64 = (k + 1..N).map(|j| q[(i, j)] * v[j]).sum();
            for j in k + 1..N {
                q[(i, j)] -= dot * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..N {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Rotation `G = [[c, s], [−s̄, c]]` with `G·(a, b)ᵀ = (r, 0)ᵀ`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, ONE);
    }
    let nu = na.hypot(nb);
    (na / nu, (a / na) * b.conj() / nu)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let disc = (p * p + b * c).sqrt();
    let den = if (p + disc).norm() >= (p - disc).norm() {
        p + disc
    } else {
        p - disc
    };
    if den.norm() == 0.0 {
        d
    } else {
        d - b * c / den
    }
}

fn schur_qr(h: &mut CMatrix4, q: &mut CMatrix4, scale: f64) -> Result<()> {
    let eps = f64::EPSILON;
    let mut hi = N - 1;
    let mut sweeps = 0;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(Error::NonConvergence);
        }
        let shift = if sweeps % 11 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        let mut rotations = [(1.0, ZERO); N];
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rotations[k] = (c, s);
            for j in k..N {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = ZERO;
        }
        for k in lo..hi {
            let (c, s) = rotations[k];
            for i in 0..=(k + 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..N {
                let x = q[(i, k)];
                let y = q[(i, k + 1)];
                q[(i, k)] = x * c + y * s.conj();
                q[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(())
}

/// Unit eigenvectors of an upper-triangular matrix, one per diagonal entry.
fn triangular_eigenvectors(t: &CMatrix4, scale: f64) -> CMatrix4 {
    let small = f64::EPSILON * scale.max(max_abs_c(t));
    let mut y = CMatrix4::zeros();
    for k in 0..N {
        let lambda = t[(k, k)];
        y[(k, k)] = ONE;
        for j in (0..k).rev() {
            let rhs: C64 = (j + 1..=k).map(|l| t[(j, l)] * y[(l, k)]).sum();
            let mut den = t[(j, j)] - lambda;
            if den.norm() < small {
                den = C64::new(small, 0.0);
            }
            y[(j, k)] = -rhs / den;
        }
        let norm = (0..N).map(|i| y[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..N {
            y[(i, k)] /= norm;
        }
    }
    y
}
