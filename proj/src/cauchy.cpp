#include "plasma/cauchy.hpp"

#include "plasma/parallel.hpp"
#include "symmetric_quadrature.hpp"

#include <cmath>

namespace plasma {

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

struct CauchyTransform::Impl {
    detail::SymmetricQuadrature quad;
    std::vector<double> log_span;  // PV \int_{-K}^{K} dt/(t-x); endpoint limits handled with the tails
};

CauchyTransform::CauchyTransform(std::vector<double> nodes)
{
    detail::SymmetricQuadrature quad(std::move(nodes));
    const auto& t = quad.t;
    const double K = t.back();
    std::vector<double> log_span(t.size(), 0.0);
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        log_span[i] = std::log((K - t[i]) / (K + t[i]));
    impl_ = std::make_shared<const Impl>(Impl{std::move(quad), std::move(log_span)});
}

std::size_t CauchyTransform::size() const noexcept { return impl_->quad.t.size(); }

std::span<const double> CauchyTransform::nodes() const noexcept { return impl_->quad.t; }

std::vector<cplx> CauchyTransform::hilbert(std::span<const cplx> phi) const
{
    const auto& quad = impl_->quad;
    const auto& t = quad.t;
    const auto& w = quad.w;
    const std::size_t n = t.size();
    if (phi.size() != n)
        throw ConfigError("Cauchy transform: density length does not match grid");
    const double K = t.back();
    const double h = quad.step;
    const std::size_t half = quad.half;
    const std::vector<cplx> gap_phi = quad.bridge(phi);

    // phi(t) ~ c/t beyond the grid ends
    const cplx c_plus = K * phi[n - 1];
    const cplx c_minus = -K * phi[0];

    // the subtracted integrand (phi(t) - phi(x))/(t - x) tends to phi'(x) at t = x
    auto derivative = [&](std::size_t i) -> cplx {
        const bool pos = i >= half;
        const std::size_t lo = pos ? half : 0;
        const std::size_t hi = pos ? n - 1 : half - 1;
        if (i >= lo + 2 && i + 2 <= hi)
            return (phi[i - 2] - 8.0 * phi[i - 1] + 8.0 * phi[i + 1] - phi[i + 2]) / (12.0 * h);
        if (i + 2 <= hi)
            return (-3.0 * phi[i] + 4.0 * phi[i + 1] - phi[i + 2]) / (2.0 * h);
        return (3.0 * phi[i] - 4.0 * phi[i - 1] + phi[i - 2]) / (2.0 * h);
    };

    std::vector<cplx> out(n);
    parallel_for(n, [&](std::size_t i) {
        const double x = t[i];
        const cplx px = phi[i];
        cplx total = w[i] * derivative(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i)
                total += w[j] * (phi[j] - px) / (t[j] - x);
        }
        for (std::size_t g = 0; g < quad.gap_t.size(); ++g)
            total += quad.gap_w[g] * (gap_phi[g] - px) / (quad.gap_t[g] - x);

        const cplx tail_plus = c_plus * (-std::log1p(-x / K) / x);
        const cplx tail_minus = c_minus * (std::log1p(x / K) / x);
        if (i + 1 == n) {
            // phi(K) ln((K-x)/(K+x)) + c+ (ln K - ln(K-x))/x  ->  -phi(K) ln 2
            total += -px * std::log(2.0) + tail_minus;
        } else if (i == 0) {
            total += px * std::log(2.0) + tail_plus;
        } else {
            total += px * impl_->log_span[i] + tail_plus + tail_minus;
        }
        out[i] = -total / M_PI;
    });
    return out;
}

std::vector<cplx> CauchyTransform::plus(std::span<const cplx> phi) const
{
    auto h = hilbert(phi);
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = 0.5 * phi[i] + 0.5 * I * h[i];
    return h;
}

std::vector<cplx> CauchyTransform::minus(std::span<const cplx> phi) const
{
    auto h = hilbert(phi);
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = -0.5 * phi[i] + 0.5 * I * h[i];
    return h;
}

}  // namespace plasma
