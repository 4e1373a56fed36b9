#include "plasma/types.hpp"

#include <algorithm>
#include <cmath>

namespace plasma {

namespace {

bool all_finite(std::span<const cplx> v)
{
    return std::all_of(v.begin(), v.end(), [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double param(const FamilyParams& params, const std::string& family, const std::string& name)
{
    auto it = params.find(name);
    if (it == params.end())
        throw ConfigError("potential family '" + family + "' requires parameter '" + name + "'");
    if (!std::isfinite(it->second))
        throw ConfigError("parameter '" + name + "' must be finite");
    return it->second;
}

}  // namespace

Potential::Potential(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.size() < 3)
        throw ConfigError("potential needs at least 3 samples, got " + std::to_string(samples_.size()));
    for (double q : samples_)
        if (!std::isfinite(q))
            throw ConfigError("potential samples must be finite");
}

double Potential::node(std::size_t i) const noexcept
{
    // last node pinned so that the grid ends exactly at x_max
    if (i + 1 == samples_.size())
        return x_max;
    return x_min + static_cast<double>(i) * spacing();
}

double Potential::operator()(double x) const noexcept
{
    if (x < x_min || x > x_max)
        return 0.0;
    const double t = (x - x_min) / spacing();
    const std::size_t n = samples_.size();
    std::size_t i = static_cast<std::size_t>(t);
    if (i >= n - 1)
        return samples_.back();
    const double w = t - static_cast<double>(i);
    return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

double Potential::integral(double lo, double hi) const noexcept
{
    lo = std::max(lo, x_min);
    hi = std::min(hi, x_max);
    if (hi <= lo)
        return 0.0;
    const double h = spacing();
    const std::size_t last = samples_.size() - 2;
    auto cell_of = [&](double x) { return std::min(static_cast<std::size_t>(std::max(0.0, (x - x_min) / h)), last); };
    double total = 0.0;
    for (std::size_t c = cell_of(lo); c <= cell_of(hi); ++c) {
        const double a = std::max(lo, x_min + static_cast<double>(c) * h);
        const double b = std::min(hi, c == last ? x_max : x_min + static_cast<double>(c + 1) * h);
        if (b > a)
            total += 0.5 * (b - a) * ((*this)(a) + (*this)(b));
    }
    return total;
}

KGrid::KGrid(std::vector<double> k, double k_min_floor) : k_(std::move(k))
{
    if (k_.empty())
        throw ConfigError("k-grid is empty");
    if (!(k_.front() > 0.0))
        throw ConfigError("k-grid must be positive (k = 0 is a pole of the Green's function)");
    if (k_.front() < k_min_floor)
        throw ConfigError("k-grid starts below the configured floor " + std::to_string(k_min_floor));
    for (std::size_t i = 0; i < k_.size(); ++i) {
        if (!std::isfinite(k_[i]))
            throw ConfigError("k-grid values must be finite");
        if (i > 0 && !(k_[i] > k_[i - 1]))
            throw ConfigError("k-grid must be strictly increasing");
    }
}

std::vector<double> KGrid::symmetric() const
{
    std::vector<double> out;
    out.reserve(2 * k_.size());
    for (auto it = k_.rbegin(); it != k_.rend(); ++it)
        out.push_back(-*it);
    out.insert(out.end(), k_.begin(), k_.end());
    return out;
}

KGrid build_kgrid(double k_min, double k_max, int n_k, double k_min_floor)
{
    if (!std::isfinite(k_min) || !std::isfinite(k_max))
        throw ConfigError("k-grid bounds must be finite");
    if (!(k_min > 0.0))
        throw ConfigError("k_min must be positive (k = 0 is a pole of the Green's function)");
    if (!(k_min < k_max))
        throw ConfigError("k-grid requires k_min < k_max");
    if (n_k < 2)
        throw ConfigError("k-grid requires at least 2 points");
    std::vector<double> k(static_cast<std::size_t>(n_k));
    const double dk = (k_max - k_min) / static_cast<double>(n_k - 1);
    for (int i = 0; i < n_k; ++i)
        k[static_cast<std::size_t>(i)] = k_min + i * dk;
    k.back() = k_max;
    return KGrid(std::move(k), k_min_floor);
}

ComplexSamples::ComplexSamples(std::vector<double> k_, std::vector<cplx> values_)
    : k(std::move(k_)), values(std::move(values_))
{
    if (k.size() != values.size())
        throw ConfigError("sample grid and values differ in length");
    if (!all_finite(values))
        throw SolverError("complex samples contain non-finite values");
}

BoundaryData::BoundaryData(KGrid grid_, std::vector<cplx> um, std::vector<cplx> up)
    : grid(std::move(grid_)), u_minus(std::move(um)), u_plus(std::move(up))
{
    if (u_minus.size() != grid.size() || u_plus.size() != grid.size())
        throw ConfigError("boundary data length does not match its k-grid");
    if (!all_finite(u_minus) || !all_finite(u_plus))
        throw ConfigError("boundary data contain non-finite values");
}

Potential sample_potential(const std::string& family, const FamilyParams& params, int n_x)
{
    if (n_x < 3)
        throw ConfigError("potential grid needs at least 3 nodes");
    std::vector<double> q(static_cast<std::size_t>(n_x), 0.0);
    const double h = 2.0 / (n_x - 1);
    if (family == "zero") {
        // nothing to fill
    } else if (family == "square_well") {
        std::fill(q.begin(), q.end(), param(params, family, "q0"));
    } else if (family == "bump") {
        const double c = param(params, family, "c");
        for (int i = 0; i < n_x; ++i) {
            const double x = (i + 1 == n_x) ? 1.0 : -1.0 + i * h;
            const double s = 1.0 - x * x;
            q[static_cast<std::size_t>(i)] = c * s * s;
        }
    } else {
        throw ConfigError("unknown potential family '" + family + "'");
    }
    return Potential(std::move(q));
}

ComplexSamples extend_conjugate(const KGrid& grid, std::span<const cplx> positive)
{
    if (positive.size() != grid.size())
        throw ConfigError("samples do not match k-grid length");
    std::vector<cplx> v;
    v.reserve(2 * positive.size());
    for (auto it = positive.rbegin(); it != positive.rend(); ++it)
        v.push_back(std::conj(*it));
    v.insert(v.end(), positive.begin(), positive.end());
    return ComplexSamples(grid.symmetric(), std::move(v));
}

}  // namespace plasma
