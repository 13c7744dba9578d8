use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{MatrixClass, Quality};
use crate::error::{Error, Result};
use crate::linalg::{perron_root, qr, rho_estimate};
use crate::matrix::Matrix;

const STREAM_LEFT: u64 = 1;
const STREAM_RIGHT: u64 = 2;
const STREAM_SCALING: u64 = 3;

const RHO_AIM: f64 = 0.95;
const RHO_MAX: f64 = 0.97;
const PERRON_MIN: f64 = 1.1;
/// Largest diagonal scaling factor for ill-scaled matrices.
const SCALING_SPAN: f64 = 1e10;

/// An in-regime matrix `A = c (M + s I)` with its measured certificates.
#[derive(Clone, Debug)]
pub struct GeneratedMatrix {
    pub a: Matrix,
    /// `rho_estimate(A)`.
    pub rho: f64,
    /// `perron_root(|A|)`.
    pub perron_abs: f64,
    pub shift: f64,
    pub factor: f64,
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Orthogonal factor of a standard-normal matrix, column signs chosen so the
/// triangular factor has a positive diagonal.
pub fn random_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::Empty);
    }
    let g = Matrix::from_fn(d, d, |_, _| rng.sample(StandardNormal));
    let f = qr(&g)?;
    let mut q = f.q;
    for j in 0..d {
        if f.r[(j, j)] < 0.0 {
            for i in 0..d {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    Ok(q)
}

/// randsvd-style matrix of the given class, shifted and scaled into the
/// wrapping regime `ρ(A) ≤ 0.97`, `ρ(|A|) ≥ 1.1`.
///
/// Singular values decay geometrically from 1 to `1/cond`. Ill-scaled
/// matrices get a similarity `D M D⁻¹` with `D` log-uniform in `[1, 1e10]`.
/// The shift `s` runs over `0, 0.1, …, 2` and `c` is chosen so that
/// `ρ(c (M + sI)) ≈ 0.95`; the first candidate meeting both targets wins.
pub fn gen_matrix(dim: usize, class: MatrixClass, seed: u64) -> Result<GeneratedMatrix> {
    if dim == 0 {
        return Err(Error::Empty);
    }
    let u = random_orthogonal(dim, &mut stream(seed, STREAM_LEFT))?;
    let v = random_orthogonal(dim, &mut stream(seed, STREAM_RIGHT))?;
    let cond = class.condition();
    let sigma: Vec<f64> = (0..dim)
        .map(|i| {
            if dim == 1 {
                1.0
            } else {
                cond.powf(-(i as f64) / (dim - 1) as f64)
            }
        })
        .collect();
    let mut m = u.matmul(&Matrix::diag(&sigma)).matmul(&v.transpose());
    if class.scale == Quality::Ill {
        let mut rng = stream(seed, STREAM_SCALING);
        let d: Vec<f64> = (0..dim)
            .map(|_| SCALING_SPAN.powf(rng.random::<f64>()))
            .collect();
        m = Matrix::from_fn(dim, dim, |i, j| d[i] * m[(i, j)] / d[j]);
    }
    tune(&m)
}

/// Measured certificates of a given matrix, without any tuning.
pub fn certify(a: Matrix) -> Result<GeneratedMatrix> {
    let rho = rho_estimate(&a)?.value;
    let perron_abs = perron_root(&a.abs())?.value;
    Ok(GeneratedMatrix {
        a,
        rho,
        perron_abs,
        shift: 0.0,
        factor: 1.0,
    })
}

/// Searches the shift grid; errors when no candidate is in regime.
pub(crate) fn tune(m: &Matrix) -> Result<GeneratedMatrix> {
    for step in 0..=20 {
        let shift = step as f64 * 0.1;
        let shifted = m.shifted(shift);
        let rho = rho_estimate(&shifted)?.value;
        if !(rho > 0.0 && rho.is_finite()) {
            continue;
        }
        let factor = RHO_AIM / rho;
        let a = shifted.scaled(factor);
        let rho = rho_estimate(&a)?.value;
        let perron_abs = perron_root(&a.abs())?.value;
        if rho <= RHO_MAX && perron_abs >= PERRON_MIN {
            return Ok(GeneratedMatrix {
                a,
                rho,
                perron_abs,
                shift,
                factor,
            });
        }
    }
    Err(Error::OutOfRegime(format!(
        "no shift in [0, 2] gives rho(A) <= {RHO_MAX} and rho(|A|) >= {PERRON_MIN}"
    )))
}
