#pragma once

#include "plasma/forward.hpp"
#include "plasma/winding.hpp"

namespace plasma {

struct SpectralOptions {
    /// Dirichlet box [-R, R] and the number of interior finite-difference nodes.
    double box_radius = 12.0;
    int nodes = 4001;
    /// Eigenvalues in (-eps, eps) are borderline and refuse classification.
    double eps_spec = 1e-8;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    /// Relative agreement required between the derivative formula and the residue of r.
    double residue_tol = 1e-4;
    /// Largest admissible |Im s| / |s|.
    double imag_tol = 1e-6;
    WindingOptions winding;
    JostOptions jost{4, 25.0};
};

struct LineSpectrum {
    int J = 0;
    std::vector<double> eigenvalues;  ///< the negative ones, ascending
    std::vector<double> bound_k;      ///< sqrt(-lambda_j), descending
};

struct KappaPair {
    double kappa0 = 0.0;  ///< lowest Dirichlet eigenvalue on the half-line x > 0
    double kappa1 = 0.0;  ///< lowest eigenvalue on the line
};

struct JostIndices {
    int ind_f = 0;
    int ind_g = 0;
};

struct NormingConstant {
    double k = 0.0;            ///< Newton-refined zero ik of a
    double s = 0.0;            ///< -i b(ik) / a'(ik)
    double s_residue = 0.0;    ///< -i Res_{ik} r, contour estimate
    double s_eigenvector = 0.0;  ///< 1 / \int g(x, ik)^2 dx with g shaped by the FD eigenvector
    double a_residual = 0.0;   ///< |a(ik)| after refinement
    double imag_part = 0.0;    ///< discarded imaginary part of s
};

struct SpectrumReport {
    int J = 0;
    double kappa0 = 0.0;
    double kappa1 = 0.0;
    int ind_a = 0;
    int ind_f = 0;
    int ind_g = 0;
    int ind_m = 0;
    std::vector<double> bound_k;
    std::vector<NormingConstant> norming;
};

/// Negative eigenvalues of -d^2/dx^2 + q on [-R, R] (3-point Laplacian, Dirichlet
/// ends, cell-averaged q). Throws SolverError when an eigenvalue sits inside
/// the (-eps_spec, eps_spec) deadband.
LineSpectrum count_negative_eigenvalues_line(const Potential& q, const SpectralOptions& opts = {});

/// The half-line problem uses the x > 0 nodes of the same grid, so the discrete
/// comparison kappa1 <= kappa0 follows from eigenvalue interlacing.
KappaPair kappa_pair(const Potential& q, const SpectralOptions& opts = {});

/// Winding indices of k -> f(0,k) and k -> g(0,k) over the symmetric grid.
JostIndices jost_indices(const ScatteringCoefficients& sc, const SpectralOptions& opts = {});
JostIndices jost_indices(const Potential& q, const KGrid& grid, const SpectralOptions& opts = {});

/// Winding index of a(k) along the real line indented above k = 0.
int index_of_a(const ScatteringCoefficients& sc, const SpectralOptions& opts = {});

/// s_j = -i b(ik_j)/a'(ik_j) after Newton refinement of each k_j, with the
/// residue and eigenvector cross-checks. Throws SolverError when a root cannot
/// be refined, b(ik_j) vanishes, s_j is not real and positive, or the residue
/// check fails.
std::vector<NormingConstant> norming_constants(const Potential& q, const std::vector<double>& bound_k,
                                               const SpectralOptions& opts = {});

/// Everything above on one potential; ind_m comes from the Riemann coefficients
/// of the synthesized boundary data.
SpectrumReport diagnose(const Potential& q, const KGrid& grid, const SpectralOptions& opts = {},
                        const ForwardOptions& forward = {});

}  // namespace plasma
