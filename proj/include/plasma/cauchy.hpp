#pragma once

#include "plasma/types.hpp"

#include <memory>
#include <span>
#include <vector>

namespace plasma {

/// Hilbert transform H[phi](x) = (1/pi) PV \int phi(t)/(x - t) dt on a symmetric
/// wavenumber grid, and the Plemelj boundary values of the Cauchy integral
///
///     C[phi](z) = 1/(2 pi i) \int phi(t)/(t - z) dt,   C+- = +-phi/2 + (i/2) H[phi].
///
/// The grid must be the mirror image of a uniform positive grid. The gap
/// (-k_min, k_min) is bridged by cubic interpolation, the subtracted integrand
/// is integrated with end-corrected trapezoid weights, and beyond k_max the
/// density is modelled as c/t with c matched at each end.
class CauchyTransform {
public:
    explicit CauchyTransform(std::vector<double> nodes);

    std::size_t size() const noexcept;
    std::span<const double> nodes() const noexcept;

    std::vector<cplx> hilbert(std::span<const cplx> phi) const;
    std::vector<cplx> plus(std::span<const cplx> phi) const;
    std::vector<cplx> minus(std::span<const cplx> phi) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace plasma
