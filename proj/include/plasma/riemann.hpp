#pragma once

#include "plasma/types.hpp"
#include "plasma/winding.hpp"

namespace plasma {

struct RiemannOptions {
    WindingOptions winding;
    double residual_tol = 1e-6;        ///< max |a - m a(-k) - n| after the solve
    double cross_check_tol = 1e-6;     ///< max residual of the companion identity for b
    double analyticity_tol = 1e-3;     ///< RMS of the lower-half-plane projection of A - 1
    double modulus_tol = 1e-6;         ///< slack in |a| >= 1 and |r| <= 1
};

/// h1 = g(0,k)/a(k), h2 = f(0,k)/a(k) on k > 0.
struct DataFunctions {
    KGrid grid;
    std::vector<cplx> h1;
    std::vector<cplx> h2;
};

/// h1, h2 on the symmetric grid (-k_max..-k_min, k_min..k_max).
struct FullLineData {
    std::vector<double> k;
    std::vector<cplx> h1;
    std::vector<cplx> h2;
};

/// Jump data of a(k) = m(k) a(-k) + n(k) on the symmetric grid.
struct RiemannCoefficients {
    std::vector<double> k;
    std::vector<cplx> m;
    std::vector<cplx> n;
    /// Combined order of the zeros of h1 and h2 at k = 0 (generically 2, since
    /// a(k) has a simple pole there; 0 for a zero-energy resonance).
    int origin_order = 0;
    int ind_h1 = 0;
    int ind_h2 = 0;
    /// Index of m counted on the real axis indented above k = 0; equals
    /// the raw real-line winding of m plus origin_order.
    int ind_m = 0;
    double modulus_defect = 0.0;  ///< max | |m| - 1 |
};

struct RiemannSolution {
    ComplexSamples a;               ///< a(k) on the symmetric grid
    double residual = 0.0;          ///< max |a(k) - m(k) a(-k) - n(k)|
    double analyticity_defect = 0.0;
};

struct RecoveredB {
    ComplexSamples b;
    double cross_check_residual = 0.0;
};

/// Full recovered spectrum with every diagnostic gathered along the way.
struct RecoveredSpectrum {
    ComplexSamples a;
    ComplexSamples b;
    ComplexSamples r;
    RiemannCoefficients coefficients;
    double residual = 0.0;
    double cross_check_residual = 0.0;
    double analyticity_defect = 0.0;
    double unitarity_defect = 0.0;
};

/// h = -2ik e^{-ik} u: u(1,k) carries g(0,k)/a(k), u(-1,k) carries f(0,k)/a(k).
/// Throws SolverError naming the offending k when |u| is numerically zero.
DataFunctions data_to_h(const BoundaryData& data, const RiemannOptions& opts = {});

/// Conjugate extension to negative k (q is real, so h(-k) = conj h(k)).
FullLineData extend_symmetric(const DataFunctions& h);

/// m = -h1(-k) h2(-k) / (h1(k) h2(k)), n = h1(-k)/h2(k) + h2(-k)/h1(k), with indices.
RiemannCoefficients rh_coefficients(const FullLineData& h, const RiemannOptions& opts = {});

/// Solves a(k) = m(k) a(-k) + n(k) for the a analytic in the upper half-plane
/// with a -> 1, by multiplicative Plemelj factorization of the symbol reduced
/// at k = 0. Throws HypothesisError when ind m != 0 (bound states present) and
/// AccuracyError when the residual exceeds its tolerance.
RiemannSolution solve_riemann(const RiemannCoefficients& coeffs, const RiemannOptions& opts = {});

/// b(k) = (h2(k) - a(-k) h1(-k)) / h1(k), cross-checked against
/// -b(-k) h2(k) + h2(-k) a(-k) = h1(k).
RecoveredB recover_b(const ComplexSamples& a, const FullLineData& h, const RiemannOptions& opts = {});

/// r = b / a on the symmetric grid.
ComplexSamples reflection(const ComplexSamples& a, const ComplexSamples& b, const RiemannOptions& opts = {});

/// data -> h -> (m, n) -> a -> b -> r.
RecoveredSpectrum recover_spectrum(const BoundaryData& data, const RiemannOptions& opts = {});

}  // namespace plasma
