#pragma once

#include "plasma/types.hpp"

#include <span>
#include <vector>

namespace plasma::detail {

/// Quadrature over the real line sampled on -k_max..-k_min, k_min..k_max.
///
/// Each half is uniform and carries end-corrected trapezoid (Gregory) weights;
/// the gap (-k_min, k_min) is covered by Gauss-Legendre nodes whose values come
/// from a cubic bridge through the two innermost samples on either side.
struct SymmetricQuadrature {
    explicit SymmetricQuadrature(std::vector<double> nodes);

    std::vector<double> t;
    std::vector<double> w;
    std::vector<double> gap_t;
    std::vector<double> gap_w;
    double step = 0.0;
    std::size_t half = 0;

    std::vector<cplx> bridge(std::span<const cplx> phi) const;
};

}  // namespace plasma::detail
