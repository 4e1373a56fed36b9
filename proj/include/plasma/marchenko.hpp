#pragma once

#include "plasma/types.hpp"

namespace plasma {

struct MarchenkoOptions {
    double x_lo = -1.5;
    double x_hi = 1.5;
    double dx = 0.01;
    /// Raised-cosine taper applied over this trailing fraction of [k_min, k_max].
    double taper_fraction = 0.15;
    /// The y-integral runs to 2 - x + margin; K(x, y) vanishes beyond 2 - x.
    double truncation_margin = 0.5;
    double imag_tol = 1e-9;
    double residual_tol = 1e-8;
    double condition_limit = 1e12;
};

/// F(s) = (1/2 pi) \int r(k) w(k) e^{iks} dk sampled on s_n = s0 + n ds,
/// w being the high-k taper.
struct FourierKernel {
    double s0 = 0.0;
    double ds = 0.0;
    std::vector<double> values;
    double max_imag = 0.0;  ///< largest discarded imaginary part

    double at(std::size_t n) const { return values.at(n); }
};

/// One row K(x, y_j), y_j = x + j dx, of the Marchenko kernel.
struct MarchenkoRow {
    double x = 0.0;
    std::vector<double> K;
    double residual = 0.0;   ///< max discrete residual at the collocation nodes
    double condition = 0.0;  ///< estimated 1-norm condition number of the Nystrom matrix
};

struct MarchenkoKernel {
    std::vector<double> x;
    double dx = 0.0;
    std::vector<MarchenkoRow> rows;
    FourierKernel F;
    double max_residual = 0.0;
    double tail = 0.0;  ///< max |K(x, y_end)|, truncation adequacy
};

struct Reconstruction {
    Potential q{std::vector<double>(3, 0.0)};  ///< resampled onto the requested [-1, 1] grid
    std::vector<double> x;       ///< Marchenko grid
    std::vector<double> q_wide;  ///< reconstruction on the Marchenko grid
    double leakage = 0.0;        ///< ||q|| outside [-1, 1] relative to ||q|| inside
};

/// Transform of r on the symmetric grid; throws SolverError if the imaginary
/// residue exceeds imag_tol (broken conjugate symmetry).
FourierKernel kernel_from_reflection(const ComplexSamples& r, double s_lo, double s_hi, double ds,
                                     const MarchenkoOptions& opts = {});

/// Nystrom (trapezoid) solution of
///     K(x,y) + F(x+y) + \int_x^Y K(x,t) F(t+y) dt = 0,  x <= y <= Y.
MarchenkoRow solve_marchenko(const FourierKernel& F, double x, double y_max, const MarchenkoOptions& opts = {});

/// Kernel rows over [x_lo, x_hi] from a reflection coefficient r = b/a.
MarchenkoKernel solve_kernel(const ComplexSamples& r, const MarchenkoOptions& opts = {});

/// q(x) from the diagonal of the kernel, resampled onto n_x nodes of [-1, 1].
///
/// r = b/a is the reflection coefficient for incidence from the left, so the
/// half-line equation above reconstructs the mirrored potential q(-x); the
/// result is reflected back before it is returned.
Reconstruction recover_q(const MarchenkoKernel& kernel, int n_x);

/// Relative L2[-1,1] distance between two potentials on the same grid.
double relative_l2_error(const Potential& estimate, const Potential& truth);

}  // namespace plasma
