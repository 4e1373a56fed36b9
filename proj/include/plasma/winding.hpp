#pragma once

#include "plasma/types.hpp"

#include <cmath>

namespace plasma {

struct WindingOptions {
    /// Samples below this fraction of the median magnitude count as zeros.
    double zero_threshold = 1e-10;
    /// Largest admissible wrapped phase increment between adjacent nodes.
    double max_phase_step = M_PI / 2;
    /// Close the curve with the chord from the last sample to the first; exact
    /// when each tail beyond the grid turns by less than pi/2.
    bool close_curve = true;
};

struct WindingResult {
    int index = 0;
    double raw = 0.0;     ///< total argument change / 2 pi before rounding
    double defect = 0.0;  ///< |raw - index|
};

/// Order p of the zero (p > 0) or pole (p < 0) at k = 0, estimated from the
/// log-slope of |v| over the innermost nodes on each side of the origin.
int origin_order(const ComplexSamples& s);

/// Winding number of the sampled curve, i.e. (1/2 pi) times the unwrapped
/// argument change across the grid.
///
/// When the grid straddles k = 0 the gap is crossed along a small semicircle
/// in the upper half-plane: a local behaviour k^p contributes -p pi, and the
/// remainder must be a small phase step. The result then counts zeros minus
/// poles of the analytic continuation lying strictly above the real axis.
///
/// Throws SolverError on near-zero samples, on steps above max_phase_step
/// (grid too coarse), and when the rounding defect exceeds 1/4.
WindingResult winding_index(const ComplexSamples& s, const WindingOptions& opts = {});

/// Median of |v|; reference scale for the relative zero threshold.
double median_magnitude(const std::vector<cplx>& v);

}  // namespace plasma
