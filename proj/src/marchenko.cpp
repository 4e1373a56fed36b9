#include "plasma/marchenko.hpp"

#include "plasma/parallel.hpp"
#include "symmetric_quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace plasma {

namespace {

double taper(double k, double k_lo, double k_hi, double fraction)
{
    const double start = k_hi - fraction * (k_hi - k_lo);
    const double ak = std::abs(k);
    if (ak <= start || fraction <= 0.0)
        return 1.0;
    if (ak >= k_hi)
        return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI * (ak - start) / (k_hi - start)));
}

// local cubic Lagrange interpolation on a uniform grid
double interpolate(const std::vector<double>& v, double x0, double dx, double x)
{
    const double u = (x - x0) / dx;
    const auto n = static_cast<long>(v.size());
    long i = static_cast<long>(std::floor(u)) - 1;
    i = std::clamp(i, 0L, n - 4);
    double acc = 0.0;
    for (long a = 0; a < 4; ++a) {
        double l = 1.0;
        for (long b = 0; b < 4; ++b)
            if (b != a)
                l *= (u - static_cast<double>(i + b)) / static_cast<double>(a - b);
        acc += l * v[static_cast<std::size_t>(i + a)];
    }
    return acc;
}

}  // namespace

FourierKernel kernel_from_reflection(const ComplexSamples& r, double s_lo, double s_hi, double ds,
                                     const MarchenkoOptions& opts)
{
    if (!(ds > 0.0) || !(s_hi > s_lo))
        throw ConfigError("kernel_from_reflection: bad s-grid");
    const detail::SymmetricQuadrature quad(r.k);
    const std::size_t n = quad.t.size();
    const double k_lo = quad.t[quad.half];
    const double k_hi = quad.t.back();

    std::vector<cplx> rw(n);
    for (std::size_t i = 0; i < n; ++i)
        rw[i] = r.values[i] * taper(quad.t[i], k_lo, k_hi, opts.taper_fraction);
    const std::vector<cplx> gap = quad.bridge(rw);

    FourierKernel F;
    F.s0 = s_lo;
    F.ds = ds;
    const auto count = static_cast<std::size_t>(std::llround((s_hi - s_lo) / ds)) + 1;
    F.values.resize(count);
    std::vector<double> imag(count);
    parallel_for(count, [&](std::size_t m) {
        const double s = s_lo + static_cast<double>(m) * ds;
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += quad.w[i] * rw[i] * std::polar(1.0, quad.t[i] * s);
        for (std::size_t g = 0; g < gap.size(); ++g)
            acc += quad.gap_w[g] * gap[g] * std::polar(1.0, quad.gap_t[g] * s);
        acc /= 2.0 * M_PI;
        F.values[m] = acc.real();
        imag[m] = std::abs(acc.imag());
    });
    F.max_imag = *std::max_element(imag.begin(), imag.end());
    if (F.max_imag > opts.imag_tol)
        throw SolverError("Fourier kernel has imaginary part " + std::to_string(F.max_imag) +
                          "; reflection data are not conjugate-symmetric");
    return F;
}

MarchenkoRow solve_marchenko(const FourierKernel& F, double x, double y_max, const MarchenkoOptions& opts)
{
    const double dx = F.ds;
    const auto m = static_cast<std::size_t>(std::max(1L, std::lround((y_max - x) / dx))) + 1;
    // F(x + y_i) and F(y_i + y_j) both land on s0 + n ds when 2x is on the s-grid
    const double base = (2.0 * x - F.s0) / dx;
    const long b = std::lround(base);
    if (std::abs(base - static_cast<double>(b)) > 1e-6 || b < 0 ||
        static_cast<std::size_t>(b) + 2 * (m - 1) >= F.values.size())
        throw ConfigError("solve_marchenko: x is not aligned with the Fourier kernel grid");
    auto Fs = [&](std::size_t n) { return F.values[static_cast<std::size_t>(b) + n]; };

    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        rhs(i) = -Fs(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double w = (j == 0 || j + 1 == m) ? 0.5 * dx : dx;
            A(i, j) = w * Fs(i + j) + (i == j ? 1.0 : 0.0);
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    MarchenkoRow row;
    row.x = x;
    row.condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
    if (!(row.condition < opts.condition_limit))
        throw SolverError("Marchenko system is ill-conditioned at x = " + std::to_string(x));
    const Eigen::VectorXd K = lu.solve(rhs);
    row.residual = (A * K - rhs).lpNorm<Eigen::Infinity>();
    if (!(row.residual <= opts.residual_tol))
        throw AccuracyError("Marchenko residual " + std::to_string(row.residual) + " at x = " + std::to_string(x));
    row.K.assign(K.data(), K.data() + m);
    return row;
}

MarchenkoKernel solve_kernel(const ComplexSamples& r, const MarchenkoOptions& opts)
{
    if (!(opts.x_hi > opts.x_lo) || !(opts.dx > 0.0))
        throw ConfigError("Marchenko x-grid is empty");
    const auto nx = static_cast<std::size_t>(std::lround((opts.x_hi - opts.x_lo) / opts.dx)) + 1;
    const double dx = (opts.x_hi - opts.x_lo) / static_cast<double>(nx - 1);

    MarchenkoKernel kernel;
    kernel.dx = dx;
    kernel.x.resize(nx);
    std::vector<double> y_end(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        const double x = opts.x_lo + static_cast<double>(i) * dx;
        kernel.x[i] = x;
        const double span = std::max(opts.truncation_margin, 2.0 - 2.0 * x + opts.truncation_margin);
        y_end[i] = x + dx * std::ceil(span / dx - 1e-9);
    }
    // s = t + y with t, y in [x, y_end]
    const double s_hi = 2.0 * *std::max_element(y_end.begin(), y_end.end());
    kernel.F = kernel_from_reflection(r, 2.0 * opts.x_lo, s_hi + dx, dx, opts);

    kernel.rows.resize(nx);
    parallel_for(nx, [&](std::size_t i) { kernel.rows[i] = solve_marchenko(kernel.F, kernel.x[i], y_end[i], opts); });
    for (const auto& row : kernel.rows) {
        kernel.max_residual = std::max(kernel.max_residual, row.residual);
        kernel.tail = std::max(kernel.tail, std::abs(row.K.back()));
    }
    return kernel;
}

Reconstruction recover_q(const MarchenkoKernel& kernel, int n_x)
{
    const std::size_t n = kernel.rows.size();
    if (n < 5)
        throw ConfigError("recover_q: kernel grid too short");
    if (kernel.x.front() > -1.0 || kernel.x.back() < 1.0)
        throw ConfigError("recover_q: kernel grid must cover [-1, 1]");
    const double h = kernel.dx;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = kernel.rows[i].K.front();

    // q(-x) = -2 d/dx K(x, x); 4th-order central differences, one-sided at the ends
    std::vector<double> mirrored(n);
    for (std::size_t i = 0; i < n; ++i) {
        double deriv;
        if (i >= 2 && i + 2 < n)
            deriv = (d[i - 2] - 8.0 * d[i - 1] + 8.0 * d[i + 1] - d[i + 2]) / (12.0 * h);
        else if (i < 2)
            deriv = (-25.0 * d[i] + 48.0 * d[i + 1] - 36.0 * d[i + 2] + 16.0 * d[i + 3] - 3.0 * d[i + 4]) / (12.0 * h);
        else
            deriv = (25.0 * d[i] - 48.0 * d[i - 1] + 36.0 * d[i - 2] - 16.0 * d[i - 3] + 3.0 * d[i - 4]) / (12.0 * h);
        mirrored[i] = -2.0 * deriv;
    }

    Reconstruction out;
    out.x.resize(n);
    out.q_wide.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.x[i] = -kernel.x[n - 1 - i];
        out.q_wide[i] = mirrored[n - 1 - i];
    }

    if (n_x < 3)
        throw ConfigError("recover_q: need at least 3 output nodes");
    std::vector<double> samples(static_cast<std::size_t>(n_x));
    const double step = 2.0 / (n_x - 1);
    for (int i = 0; i < n_x; ++i)
        samples[static_cast<std::size_t>(i)] = interpolate(out.q_wide, out.x.front(), h, -1.0 + i * step);
    out.q = Potential(std::move(samples));

    // trapezoid norms on the Marchenko grid
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = out.q_wide[i] * out.q_wide[i] * h;
        const double x = out.x[i];
        if (std::abs(x) <= 1.0 + 1e-12)
            inside += (std::abs(std::abs(x) - 1.0) < 1e-9 ? 0.5 : 1.0) * v;
        if (x >= 1.0 - 1e-12)
            outside += (std::abs(x - 1.0) < 1e-9 || i + 1 == n ? 0.5 : 1.0) * v;
    }
    // relative unless the reconstruction itself is numerically zero
    out.leakage = std::sqrt(inside) > 1e-10 ? std::sqrt(outside / inside) : std::sqrt(outside);
    return out;
}

double relative_l2_error(const Potential& estimate, const Potential& truth)
{
    if (estimate.size() != truth.size())
        throw ConfigError("relative_l2_error: potentials are on different grids");
    const auto e = estimate.samples();
    const auto t = truth.samples();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double w = (i == 0 || i + 1 == e.size()) ? 0.5 : 1.0;
        num += w * (e[i] - t[i]) * (e[i] - t[i]);
        den += w * t[i] * t[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace plasma
