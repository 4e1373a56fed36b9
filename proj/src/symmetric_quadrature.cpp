#include "symmetric_quadrature.hpp"

#include <array>
#include <cmath>

namespace plasma::detail {

namespace {

constexpr std::size_t kGapNodes = 12;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w)
{
    x.resize(n);
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (std::size_t j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

}  // namespace

SymmetricQuadrature::SymmetricQuadrature(std::vector<double> nodes) : t(std::move(nodes))
{
    const std::size_t n = t.size();
    if (n < 16 || n % 2 != 0)
        throw ConfigError("expected a symmetric grid with at least 8 positive nodes");
    half = n / 2;
    const double k0 = t[half];
    const double K = t.back();
    if (!(k0 > 0.0))
        throw ConfigError("symmetric grid must exclude k = 0");
    step = (K - k0) / static_cast<double>(half - 1);
    for (std::size_t i = 0; i < half; ++i) {
        if (std::abs(t[half + i] + t[half - 1 - i]) > 1e-12 * K)
            throw ConfigError("grid is not symmetric about k = 0");
        if (std::abs(t[half + i] - (k0 + static_cast<double>(i) * step)) > 1e-9 * K)
            throw ConfigError("grid must be uniform on each half-line");
    }

    static constexpr std::array<double, 3> ends{3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    std::vector<double> half_w(half, step);
    for (std::size_t e = 0; e < ends.size(); ++e) {
        half_w[e] = ends[e] * step;
        half_w[half - 1 - e] = ends[e] * step;
    }
    w.resize(n);
    for (std::size_t i = 0; i < half; ++i) {
        w[half + i] = half_w[i];
        w[half - 1 - i] = half_w[i];
    }

    gauss_legendre(kGapNodes, gap_t, gap_w);
    for (std::size_t i = 0; i < kGapNodes; ++i) {
        gap_t[i] *= k0;
        gap_w[i] *= k0;
    }
}

std::vector<cplx> SymmetricQuadrature::bridge(std::span<const cplx> phi) const
{
    const std::array<double, 4> bt{t[half - 2], t[half - 1], t[half], t[half + 1]};
    const std::array<cplx, 4> bv{phi[half - 2], phi[half - 1], phi[half], phi[half + 1]};
    std::vector<cplx> out(gap_t.size());
    for (std::size_t g = 0; g < gap_t.size(); ++g) {
        cplx acc = 0.0;
        for (std::size_t a = 0; a < 4; ++a) {
            double l = 1.0;
            for (std::size_t b = 0; b < 4; ++b)
                if (b != a)
                    l *= (gap_t[g] - bt[b]) / (bt[a] - bt[b]);
            acc += l * bv[a];
        }
        out[g] = acc;
    }
    return out;
}

}  // namespace plasma::detail
