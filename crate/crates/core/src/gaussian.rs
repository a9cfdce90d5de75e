//! Symplectic linear algebra for two-mode Gaussian covariance matrices.
//!
//! Quadratures are ordered `(q₋, p₋, q₊, p₊)` and the vacuum has variance
//! 1/2 in every quadrature, so a physical state has both symplectic
//! eigenvalues at least 1/2.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Round-off tolerance for symmetry and shape checks.
pub const TOL_NUM: f64 = 1e-12;

/// Default slack on the uncertainty relation `ν₋ ≥ 1/2`.
pub const TOL_PHYS: f64 = 1e-9;

/// One of the two output modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Lower sideband ω₋, quadratures 0 and 1.
    Minus,
    /// Upper sideband ω₊, quadratures 2 and 3.
    Plus,
}

impl Mode {
    fn q_index(self) -> usize {
        match self {
            Mode::Minus => 0,
            Mode::Plus => 2,
        }
    }

    fn p_index(self) -> usize {
        self.q_index() + 1
    }
}

impl TryFrom<usize> for Mode {
    type Error = Error;

    fn try_from(index: usize) -> Result<Self> {
        match index {
            0 => Ok(Mode::Minus),
            1 => Ok(Mode::Plus),
            _ => Err(Error::argument(format!(
                "mode index {index} out of range (expected 0 or 1)"
            ))),
        }
    }
}

/// Real symmetric 4×4 covariance matrix of two bosonic modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMatrix2Mode {
    entries: Matrix4<f64>,
}

impl CovMatrix2Mode {
    /// Accepts `m` if it is symmetric to within [`TOL_NUM`] (relative to its
    /// largest entry) and stores the exactly symmetrized matrix.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidState("non-finite covariance entry".into()));
        }
        let scale = m.amax().max(1.0);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let gap = (m[(i, j)] - m[(j, i)]).abs();
                if gap > TOL_NUM * scale {
                    return Err(Error::InvalidState(format!(
                        "covariance matrix not symmetric: |V[{i}][{j}] - V[{j}][{i}]| = {gap:e}"
                    )));
                }
            }
        }
        Ok(Self {
            entries: (m + m.transpose()) * 0.5,
        })
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    /// Assembles `(A, C; Cᵀ, B)` from 2×2 blocks.
    pub fn from_blocks(a: Matrix2<f64>, b: Matrix2<f64>, c: Matrix2<f64>) -> Result<Self> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        Self::new(m)
    }

    pub fn vacuum() -> Self {
        Self::diagonal([0.5; 4])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        Self {
            entries: Matrix4::from_diagonal(&d.into()),
        }
    }

    pub fn entries(&self) -> &Matrix4<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entries[(i, j)];
            }
        }
        rows
    }

    /// Local block of the `−` mode.
    pub fn block_a(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Local block of the `+` mode.
    pub fn block_b(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Correlation block (rows of the `−` mode, columns of the `+` mode).
    pub fn block_c(&self) -> Matrix2<f64> {
        self.entries.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Relabels the modes, i.e. reorders quadratures to `(q₊, p₊, q₋, p₋)`.
    pub fn swap_modes(&self) -> Self {
        let perm = [2, 3, 0, 1];
        Self {
            entries: Matrix4::from_fn(|i, j| self.entries[(perm[i], perm[j])]),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.entries.cholesky().is_some()
    }
}

/// The two-mode symplectic form Ω = diag(J, J) with J = (0, 1; −1, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticForm {
    omega: Matrix4<f64>,
}

impl SymplecticForm {
    pub fn two_mode() -> Self {
        let mut omega = Matrix4::zeros();
        omega[(0, 1)] = 1.0;
        omega[(1, 0)] = -1.0;
        omega[(2, 3)] = 1.0;
        omega[(3, 2)] = -1.0;
        Self { omega }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.omega
    }
}

impl Default for SymplecticForm {
    fn default() -> Self {
        Self::two_mode()
    }
}

/// Determinants of the 2×2 blocks (`i1`, `i2`, `i3`) and of the full matrix (`i4`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

impl BlockInvariants {
    /// Δ = I₁ + I₂ + 2I₃, the second symplectic invariant.
    pub fn seralian(&self) -> f64 {
        self.i1 + self.i2 + 2.0 * self.i3
    }
}

pub fn block_invariants(v: &CovMatrix2Mode) -> BlockInvariants {
    BlockInvariants {
        i1: v.block_a().determinant(),
        i2: v.block_b().determinant(),
        i3: v.block_c().determinant(),
        i4: v.entries.determinant(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

/// Symplectic eigenvalues from the closed form
/// `ν²_± = (Δ ± √(Δ² − 4 det V)) / 2`.
///
/// The discriminant is evaluated as `(I₁ − I₂)² + 4 det(AJC + CJB)`, an
/// equivalent local-symplectic invariant that stays exact when the two
/// eigenvalues coincide (e.g. equal thermal occupations).
pub fn symplectic_eigenvalues(v: &CovMatrix2Mode) -> Result<SymplecticSpectrum> {
    if !v.is_positive_definite() {
        return Err(Error::InvalidState(
            "covariance matrix is not positive definite".into(),
        ));
    }
    let inv = block_invariants(v);
    let delta = inv.seralian();
    let j = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    let (a, b, c) = (v.block_a(), v.block_b(), v.block_c());
    let mixed = (a * j * c + c * j * b).determinant();
    let mut disc = (inv.i1 - inv.i2).powi(2) + 4.0 * mixed;
    if disc < 0.0 {
        if disc < -TOL_NUM * (delta * delta).max(1.0) {
            return Err(Error::Degenerate(format!(
                "negative discriminant {disc:e} in symplectic eigenvalue formula"
            )));
        }
        disc = 0.0;
    }
    let big = 0.5 * (delta + disc.sqrt());
    if big.is_nan() || big <= 0.0 || inv.i4 <= 0.0 {
        return Err(Error::Degenerate(format!(
            "non-positive symplectic invariants: delta = {delta:e}, det = {:e}",
            inv.i4
        )));
    }
    // ν₋² = det V / ν₊² avoids cancellation in (Δ − √disc)/2.
    let small = inv.i4 / big;
    let (lo, hi) = (small.sqrt(), big.sqrt());
    Ok(SymplecticSpectrum {
        nu_minus: lo.min(hi),
        nu_plus: lo.max(hi),
    })
}

/// Mirror reflection `p → −p` on one mode: the Gaussian partial transpose.
pub fn partial_transpose(v: &CovMatrix2Mode, mode: Mode) -> CovMatrix2Mode {
    let p = mode.p_index();
    let mut m = v.entries;
    for k in 0..4 {
        if k != p {
            m[(p, k)] = -m[(p, k)];
            m[(k, p)] = -m[(k, p)];
        }
    }
    CovMatrix2Mode { entries: m }
}

/// True iff the smallest symplectic eigenvalue is at least `1/2 − tol_phys`.
/// Indefinite input gives `false`.
pub fn is_physical(v: &CovMatrix2Mode, tol_phys: f64) -> bool {
    symplectic_eigenvalues(v)
        .map(|s| s.nu_minus >= 0.5 - tol_phys)
        .unwrap_or(false)
}

/// Rewrites a `c·σ_x` correlation block as `c·σ_z` by a quarter-turn phase
/// rotation of the `+` mode. The rotation is symplectic with entries in
/// {0, ±1}, so the spectrum and all block invariants are preserved exactly.
pub fn standardize(v: &CovMatrix2Mode) -> Result<CovMatrix2Mode> {
    let c = v.block_c();
    let scale = v.entries.amax().max(1.0);
    let tol = TOL_NUM * scale;
    if c[(0, 0)].abs() > tol || c[(1, 1)].abs() > tol || (c[(0, 1)] - c[(1, 0)]).abs() > tol {
        return Err(Error::Shape(format!(
            "correlation block is not proportional to sigma_x: {:?}",
            c.as_slice()
        )));
    }
    let q = Mode::Plus.q_index();
    let p = Mode::Plus.p_index();
    // q₊ → p₊, p₊ → −q₊
    let mut rot = Matrix4::identity();
    rot[(q, q)] = 0.0;
    rot[(p, p)] = 0.0;
    rot[(q, p)] = 1.0;
    rot[(p, q)] = -1.0;
    let mut m = rot * v.entries * rot.transpose();
    // Clean up the ±0 left by the σ_x diagonal within tolerance.
    m[(0, 3)] = 0.0;
    m[(3, 0)] = 0.0;
    m[(1, 2)] = 0.0;
    m[(2, 1)] = 0.0;
    CovMatrix2Mode::new(m)
}
