#pragma once

#include "plasma/types.hpp"

namespace plasma {

enum class Side {
    from_right,  ///< f(x,k) = e^{ikx} for x >= 1
    from_left,   ///< g(x,k) = e^{-ikx} for x <= -1
};

/// Jost solution and its x-derivative on the potential grid.
struct JostField {
    std::vector<double> x;
    std::vector<cplx> value;
    std::vector<cplx> derivative;
    cplx k;
    Side side;
};

struct JostOptions {
    /// Magnus steps per potential cell.
    int substeps = 1;
    double max_abs_imag_k = 25.0;
};

struct ForwardOptions {
    JostOptions jost;
    double unitarity_tol = 1e-8;
    /// Substep doubling stops once a(k) at the probe nodes moves less than this.
    double refine_tol = 1e-11;
    int max_substeps = 64;
};

/// w and w' at a single abscissa.
struct JostPoint {
    cplx value;
    cplx derivative;
};

/// Integrates -w'' + q w = k^2 w across [-1, 1] from the seed at the support edge.
JostField solve_jost(const Potential& q, cplx k, Side side, const JostOptions& opts = {});

/// Same solution, evaluated at one point only.
JostPoint jost_at(const Potential& q, cplx k, Side side, double x, const JostOptions& opts = {});

struct WronskianValue {
    cplx value;        ///< f g' - f' g at x = 0 (nearest node when 0 is not a node)
    double deviation;  ///< max |W(x_c) - W(0)| over three interior checkpoints
};

WronskianValue wronskian(const JostField& wf, const JostField& wg);

/// a(k) and b(k) at one (possibly complex) wavenumber.
struct Transition {
    cplx a;
    cplx b;
};

Transition transition(const Potential& q, cplx k, const JostOptions& opts = {});

/// Jost data at x = 0 for a single wavenumber.
struct OriginValues {
    JostPoint f;
    JostPoint g;
    cplx a;
    cplx b;
};

OriginValues origin_values(const Potential& q, cplx k, const JostOptions& opts = {});

struct ScatteringCoefficients {
    KGrid grid;
    std::vector<cplx> a;
    std::vector<cplx> b;
    std::vector<cplx> f0;  ///< f(0,k)
    std::vector<cplx> g0;  ///< g(0,k)
    double unitarity_defect = 0.0;
    int substeps = 1;
};

/// a(k) = [f,g]/(-2ik), b(k) = [f(.,k), g(.,-k)]/(2ik) on every node.
/// Throws SolverError when | |a|^2 - |b|^2 - 1 | exceeds the unitarity tolerance.
ScatteringCoefficients scattering_coefficients(const Potential& q, const KGrid& grid,
                                               const ForwardOptions& opts = {});

/// u(-1,k) and u(1,k) of the outgoing point-source solution.
BoundaryData boundary_data(const ScatteringCoefficients& sc);
BoundaryData boundary_data(const Potential& q, const KGrid& grid, const ForwardOptions& opts = {});

}  // namespace plasma
