//! Geometry backends: eigenvalues, fusion tensors, point evaluation,
//! quadrature projection and isometry actions for T^d, S^2 and SU(2).

pub mod quadrature;
pub mod rotation;
pub mod wigner;

mod sphere;
mod su2;
mod torus;

pub use sphere::{sph_harm, SphereBasis};
pub use su2::Su2Basis;
pub use torus::TorusBasis;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{BackendId, CoeffVec, FusionTensor, Spectrum};

/// A metric-preserving map of the underlying geometry, given in the
/// backend's natural parameters.
#[derive(Debug, Clone)]
pub enum IsometryAction {
    /// x -> A x + v with A an integer lattice automorphism satisfying
    /// `A^T diag(a) A = diag(a)`.
    TorusMap {
        matrix: Vec<Vec<i64>>,
        translation: Vec<f64>,
    },
    /// ZYZ Euler rotation of the sphere.
    SphereRotation { alpha: f64, beta: f64, gamma: f64 },
    /// Left/right translation by maximal-torus elements of SU(2).
    Su2Translation { left: f64, right: f64 },
}

impl IsometryAction {
    pub fn translation(v: Vec<f64>) -> IsometryAction {
        let d = v.len();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        IsometryAction::TorusMap {
            matrix,
            translation: v,
        }
    }

    pub fn z_rotation(phi0: f64) -> IsometryAction {
        IsometryAction::SphereRotation {
            alpha: phi0,
            beta: 0.0,
            gamma: 0.0,
        }
    }
}

/// Dynamic selection over the three shipped geometries.
#[derive(Debug, Clone)]
pub enum AnyBasis {
    Torus(TorusBasis),
    Sphere(SphereBasis),
    Su2(Su2Basis),
}

impl From<TorusBasis> for AnyBasis {
    fn from(b: TorusBasis) -> AnyBasis {
        AnyBasis::Torus(b)
    }
}

impl From<SphereBasis> for AnyBasis {
    fn from(b: SphereBasis) -> AnyBasis {
        AnyBasis::Sphere(b)
    }
}

impl From<Su2Basis> for AnyBasis {
    fn from(b: Su2Basis) -> AnyBasis {
        AnyBasis::Su2(b)
    }
}

impl AnyBasis {
    pub fn id(&self) -> BackendId {
        match self {
            AnyBasis::Torus(_) => BackendId::Torus,
            AnyBasis::Sphere(_) => BackendId::Sphere,
            AnyBasis::Su2(_) => BackendId::Su2,
        }
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        match self {
            AnyBasis::Torus(b) => b.spectrum(),
            AnyBasis::Sphere(b) => b.spectrum(),
            AnyBasis::Su2(b) => b.spectrum(),
        }
    }

    pub fn build_fusion(&self, drop_tol: f64) -> FusionTensor {
        match self {
            AnyBasis::Torus(b) => b.build_fusion(drop_tol),
            AnyBasis::Sphere(b) => b.build_fusion(drop_tol),
            AnyBasis::Su2(b) => b.build_fusion(drop_tol),
        }
    }

    /// Band-limiting degree of a mode: infinity-norm of the lattice vector,
    /// the degree l, or the doubled spin 2l.
    pub fn mode_degree(&self, id: usize) -> u32 {
        match self {
            AnyBasis::Torus(b) => b.mode_degree(id),
            AnyBasis::Sphere(b) => b.mode_degree(id),
            AnyBasis::Su2(b) => b.mode_degree(id),
        }
    }

    pub fn max_degree(&self) -> u32 {
        match self {
            AnyBasis::Torus(b) => b.max_degree(),
            AnyBasis::Sphere(b) => b.max_degree(),
            AnyBasis::Su2(b) => b.max_degree(),
        }
    }

    /// Dimension of the underlying manifold (sets the s > n/2 regime).
    pub fn manifold_dim(&self) -> usize {
        match self {
            AnyBasis::Torus(b) => b.dim(),
            AnyBasis::Sphere(_) => 2,
            AnyBasis::Su2(_) => 3,
        }
    }

    pub fn evaluate(&self, id: usize, point: &[f64]) -> Result<Complex64> {
        match self {
            AnyBasis::Torus(b) => b.evaluate(id, point),
            AnyBasis::Sphere(b) => b.evaluate(id, point),
            AnyBasis::Su2(b) => b.evaluate(id, point),
        }
    }

    pub fn synthesize(&self, f: &CoeffVec, point: &[f64]) -> Result<Complex64> {
        match self {
            AnyBasis::Torus(b) => b.synthesize(f, point),
            AnyBasis::Sphere(b) => b.synthesize(f, point),
            AnyBasis::Su2(b) => b.synthesize(f, point),
        }
    }

    pub fn project_fn<F>(&self, f: F) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        match self {
            AnyBasis::Torus(b) => b.project_fn(f),
            AnyBasis::Sphere(b) => b.project_fn(f),
            AnyBasis::Su2(b) => b.project_fn(f),
        }
    }

    /// Projection on a finer grid: `oversample` scales the minimum exact
    /// resolution (use 2 when projecting pointwise products).
    pub fn project_fn_oversampled<F>(&self, f: F, oversample: usize) -> Result<CoeffVec>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        match self {
            AnyBasis::Torus(b) => {
                let n = oversample * (2 * b.nmax() as usize + 1);
                b.project_fn_with(f, n)
            }
            AnyBasis::Sphere(b) => {
                let nt = oversample * (b.lmax() as usize + 1) + 1;
                let np = oversample * (2 * b.lmax() as usize + 1);
                b.project_fn_with(f, nt, np)
            }
            AnyBasis::Su2(b) => {
                let nt = oversample * (b.two_lmax() as usize / 2 + 1) + 1;
                let na = oversample * (2 * b.two_lmax() as usize + 1);
                b.project_fn_with(f, nt, na)
            }
        }
    }

    pub fn act(&self, h: &IsometryAction, f: &CoeffVec) -> Result<CoeffVec> {
        match (self, h) {
            (
                AnyBasis::Torus(b),
                IsometryAction::TorusMap {
                    matrix,
                    translation,
                },
            ) => b.act(matrix, translation, f),
            (AnyBasis::Sphere(b), IsometryAction::SphereRotation { alpha, beta, gamma }) => {
                b.act(*alpha, *beta, *gamma, f)
            }
            (AnyBasis::Su2(b), IsometryAction::Su2Translation { left, right }) => {
                b.act(*left, *right, f)
            }
            _ => Err(Error::InvalidIsometry(format!(
                "action {h:?} does not apply to the {} backend",
                self.id()
            ))),
        }
    }

    /// Sparse blockwise coefficient unitary of the pullback; row per input
    /// mode id, entries `(output id, weight)`.
    pub fn coefficient_matrix(&self, h: &IsometryAction) -> Result<Vec<Vec<(usize, Complex64)>>> {
        match (self, h) {
            (
                AnyBasis::Torus(b),
                IsometryAction::TorusMap {
                    matrix,
                    translation,
                },
            ) => b.coefficient_matrix(matrix, translation),
            (AnyBasis::Sphere(b), IsometryAction::SphereRotation { alpha, beta, gamma }) => {
                Ok(b.coefficient_matrix(*alpha, *beta, *gamma))
            }
            (AnyBasis::Su2(b), IsometryAction::Su2Translation { left, right }) => {
                Ok(b.coefficient_matrix(*left, *right))
            }
            _ => Err(Error::InvalidIsometry(format!(
                "action {h:?} does not apply to the {} backend",
                self.id()
            ))),
        }
    }
}
