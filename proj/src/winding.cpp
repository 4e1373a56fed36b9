#include "plasma/winding.hpp"

#include <algorithm>
#include <sstream>

namespace plasma {

namespace {

std::size_t origin_crossing(const std::vector<double>& k)
{
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] < 0.0 && k[i + 1] > 0.0)
            return i;
    return k.size();
}

double log_slope(const ComplexSamples& s, std::size_t inner, std::size_t outer)
{
    return std::log(std::abs(s.values[outer]) / std::abs(s.values[inner])) /
           std::log(std::abs(s.k[outer]) / std::abs(s.k[inner]));
}

}  // namespace

double median_magnitude(const std::vector<cplx>& v)
{
    if (v.empty())
        return 0.0;
    std::vector<double> mag(v.size());
    std::transform(v.begin(), v.end(), mag.begin(), [](cplx z) { return std::abs(z); });
    auto mid = mag.begin() + static_cast<std::ptrdiff_t>(mag.size() / 2);
    std::nth_element(mag.begin(), mid, mag.end());
    return *mid;
}

int origin_order(const ComplexSamples& s)
{
    const std::size_t c = origin_crossing(s.k);
    if (c == s.k.size() || c < 1 || c + 2 >= s.k.size())
        throw SolverError("origin_order: samples do not straddle k = 0 with two nodes per side");
    const double slope = 0.5 * (log_slope(s, c + 1, c + 2) + log_slope(s, c, c - 1));
    const double p = std::round(slope);
    if (std::abs(slope - p) > 0.3) {
        std::ostringstream msg;
        msg << "cannot classify the behaviour at k = 0 (log-slope " << slope
            << "); refine the grid near k_min";
        throw SolverError(msg.str());
    }
    return static_cast<int>(p);
}

WindingResult winding_index(const ComplexSamples& s, const WindingOptions& opts)
{
    const std::size_t n = s.size();
    if (n < 2)
        throw SolverError("winding_index: need at least two samples");
    const double floor = opts.zero_threshold * median_magnitude(s.values);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(s.values[i]) > floor)) {
            std::ostringstream msg;
            msg << "winding_index: sample at k = " << s.k[i] << " is numerically zero";
            throw SolverError(msg.str());
        }
    }
    const std::size_t gap = origin_crossing(s.k);
    const int p = gap < n ? origin_order(s) : 0;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double step = std::arg(s.values[i + 1] / s.values[i]);
        double detour = 0.0;
        double limit = opts.max_phase_step;
        if (i == gap) {
            // conjugate symmetry splits the crossing into two equal halves at k = 0
            limit = 2.0 * opts.max_phase_step;
            // semicircle above the origin: k^p turns by -p pi
            detour = -p * M_PI;
            step = std::arg(s.values[i + 1] / s.values[i] * std::polar(1.0, -detour));
        }
        if (std::abs(step) > limit) {
            std::ostringstream msg;
            msg << "winding_index: phase step " << step << " between k = " << s.k[i] << " and " << s.k[i + 1]
                << " exceeds " << limit << " (grid too coarse)";
            throw SolverError(msg.str());
        }
        total += step + detour;
    }
    // the tails beyond +-k_max: conjugate symmetry makes the chord back to the
    // first sample equal to the rotation still owed on the way to the real limit
    if (opts.close_curve) {
        const double closing = std::arg(s.values.front() / s.values.back());
        total += closing;
    }
    WindingResult r;
    r.raw = total / (2.0 * M_PI);
    r.index = static_cast<int>(std::lround(r.raw));
    r.defect = std::abs(r.raw - r.index);
    if (r.defect > 0.25) {
        std::ostringstream msg;
        msg << "winding_index: total turn " << r.raw << " is not close to an integer";
        throw SolverError(msg.str());
    }
    return r;
}

}  // namespace plasma
