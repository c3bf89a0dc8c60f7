//! Finite truncation of the array and exact diagonalization in the
//! single-excitation sector.
//!
//! Basis ordering: sites `1..=N` occupy indices `0..N`, the excited emitter
//! `|e0⟩` is the last basis vector (index `N`). The hard wall is the absence
//! of a site 0; the far end of the truncation is a second hard wall.

use nalgebra::{DMatrix, DVectorView, SymmetricEigen};

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Out-of-band classification margin, in units of ξ.
pub const DEFAULT_OOB_MARGIN: f64 = 1e-6;
/// Energy window around Ω for the numeric BIC search.
pub const BIC_ENERGY_TOL: f64 = 1e-6;
/// Largest photon weight beyond the coupled site a BIC may carry.
pub const BIC_LEAKAGE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    params: SystemParams,
    matrix: DMatrix<f64>,
}

impl HamiltonianMatrix {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn emitter_index(&self) -> usize {
        self.params.n_sites
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn nonzero_off_diagonal(&self) -> usize {
        let n = self.dimension();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.matrix[(i, j)] != 0.0)
            .count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    /// Ascending eigenvalues without eigenvectors.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

/// Assembles the truncated single-excitation Hamiltonian.
pub fn build_hamiltonian(params: &SystemParams) -> Result<HamiltonianMatrix> {
    let p = params.validate()?;
    let n = p.n_sites;
    let mut matrix = DMatrix::zeros(n + 1, n + 1);
    for j in 0..n {
        matrix[(j, j)] = p.omega_c;
        if j + 1 < n {
            matrix[(j, j + 1)] = -p.xi;
            matrix[(j + 1, j)] = -p.xi;
        }
    }
    matrix[(n, n)] = p.omega();
    if p.g != 0.0 {
        matrix[(p.d - 1, n)] = p.g;
        matrix[(n, p.d - 1)] = p.g;
    }
    Ok(HamiltonianMatrix { params: p, matrix })
}

#[derive(Debug, Clone)]
pub struct EigenSolution {
    /// Ascending eigenvalues.
    pub energies: Vec<f64>,
    /// `|⟨e0|E_m⟩|²` per eigenvalue.
    pub emitter_weights: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered like `energies`; each
    /// column's largest-magnitude component is positive.
    pub states: DMatrix<f64>,
    emitter_index: usize,
}

impl EigenSolution {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn state(&self, m: usize) -> DVectorView<'_, f64> {
        self.states.column(m)
    }

    /// `⟨e0|E_m⟩`.
    pub fn emitter_amplitude(&self, m: usize) -> f64 {
        self.states[(self.emitter_index, m)]
    }

    /// Photon amplitude of eigenvector `m` at site `j` (1-based).
    pub fn site_amplitude(&self, m: usize, j: usize) -> f64 {
        self.states[(j - 1, m)]
    }

    /// Photon weight of eigenvector `m` on sites `j > d`.
    pub fn weight_beyond(&self, m: usize, d: usize) -> f64 {
        (d..self.emitter_index).map(|i| self.states[(i, m)].powi(2)).sum()
    }
}

/// Full eigendecomposition of a real symmetric Hamiltonian.
pub fn diagonalize(h: &HamiltonianMatrix) -> Result<EigenSolution> {
    let dim = h.dimension();
    let eig = SymmetricEigen::try_new(h.matrix.clone(), f64::EPSILON, 100 * dim)
        .ok_or_else(|| Error::Numerical(format!("symmetric eigensolver did not converge (dim {dim})")))?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut states = DMatrix::zeros(dim, dim);
    let mut energies = Vec::with_capacity(dim);
    let mut emitter_weights = Vec::with_capacity(dim);
    for (col, &src) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(src);
        let peak = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        let sign = if peak < 0.0 { -1.0 } else { 1.0 };
        states.set_column(col, &(v * sign));
        energies.push(eig.eigenvalues[src]);
        emitter_weights.push(v[h.emitter_index()].powi(2));
    }
    Ok(EigenSolution {
        energies,
        emitter_weights,
        states,
        emitter_index: h.emitter_index(),
    })
}

/// `DEFAULT_OOB_MARGIN` expressed in the units of `params`.
pub fn default_margin(params: &SystemParams) -> f64 {
    DEFAULT_OOB_MARGIN * params.xi
}

/// Number of eigenvalues with `|E − ω_c| > 2ξ + margin`.
pub fn count_out_of_band(sol: &EigenSolution, params: &SystemParams, margin: f64) -> usize {
    count_out_of_band_values(&sol.energies, params, margin)
}

pub fn count_out_of_band_values(energies: &[f64], params: &SystemParams, margin: f64) -> usize {
    let edge = 2.0 * params.xi + margin.max(0.0);
    energies.iter().filter(|&&e| (e - params.omega_c).abs() > edge).count()
}

/// Index of the eigenvector realizing the BIC: in-band, within
/// [`BIC_ENERGY_TOL`] of Ω, and with photon weight beyond the coupled site
/// below [`BIC_LEAKAGE_TOL`].
pub fn locate_bic_numeric(sol: &EigenSolution, params: &SystemParams) -> Option<usize> {
    if params.g == 0.0 || params.delta_c.abs() >= 2.0 * params.xi {
        return None;
    }
    let omega = params.omega();
    let tol = BIC_ENERGY_TOL * params.xi;
    (0..sol.len())
        .filter(|&m| (sol.energies[m] - omega).abs() < tol)
        .find(|&m| sol.weight_beyond(m, params.d) < BIC_LEAKAGE_TOL)
}
