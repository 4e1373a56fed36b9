#include "plasma/riemann.hpp"

#include "plasma/cauchy.hpp"

#include <cmath>
#include <sstream>

namespace plasma {

namespace {

constexpr cplx I{0.0, 1.0};

std::size_t mirror(std::size_t j, std::size_t n) { return n - 1 - j; }

void require_nonzero(const std::vector<cplx>& v, const std::vector<double>& k, double rel, const char* name)
{
    const double floor = rel * median_magnitude(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(std::abs(v[i]) > floor)) {
            std::ostringstream msg;
            msg << name << " vanishes numerically at k = " << k[i]
                << " (possible real zero of f(0,k) or g(0,k))";
            throw SolverError(msg.str());
        }
    }
}

void require_symmetric(const std::vector<double>& k)
{
    const std::size_t n = k.size();
    if (n < 4 || n % 2 != 0)
        throw ConfigError("expected samples on a symmetric grid");
    for (std::size_t j = 0; j < n / 2; ++j)
        if (std::abs(k[j] + k[mirror(j, n)]) > 1e-12 * std::abs(k.back()) || !(k[mirror(j, n)] > 0.0))
            throw ConfigError("expected samples on a symmetric grid");
}

}  // namespace

DataFunctions data_to_h(const BoundaryData& data, const RiemannOptions& opts)
{
    const std::size_t n = data.grid.size();
    std::vector<double> k(data.grid.values().begin(), data.grid.values().end());
    require_nonzero(data.u_plus, k, opts.winding.zero_threshold, "u(1,k)");
    require_nonzero(data.u_minus, k, opts.winding.zero_threshold, "u(-1,k)");
    DataFunctions h{data.grid, std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx factor = -2.0 * I * k[i] * std::exp(-I * k[i]);
        h.h1[i] = factor * data.u_plus[i];
        h.h2[i] = factor * data.u_minus[i];
    }
    return h;
}

FullLineData extend_symmetric(const DataFunctions& h)
{
    const ComplexSamples h1 = extend_conjugate(h.grid, h.h1);
    const ComplexSamples h2 = extend_conjugate(h.grid, h.h2);
    return {h1.k, h1.values, h2.values};
}

RiemannCoefficients rh_coefficients(const FullLineData& h, const RiemannOptions& opts)
{
    require_symmetric(h.k);
    require_nonzero(h.h1, h.k, opts.winding.zero_threshold, "h1");
    require_nonzero(h.h2, h.k, opts.winding.zero_threshold, "h2");
    const std::size_t n = h.k.size();
    RiemannCoefficients c;
    c.k = h.k;
    c.m.resize(n);
    c.n.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = mirror(j, n);
        c.m[j] = -(h.h1[r] * h.h2[r]) / (h.h1[j] * h.h2[j]);
        c.n[j] = h.h1[r] / h.h2[j] + h.h2[r] / h.h1[j];
        c.modulus_defect = std::max(c.modulus_defect, std::abs(std::abs(c.m[j]) - 1.0));
    }
    const ComplexSamples s1(h.k, h.h1), s2(h.k, h.h2);
    c.origin_order = origin_order(s1) + origin_order(s2);
    c.ind_h1 = winding_index(s1, opts.winding).index;
    c.ind_h2 = winding_index(s2, opts.winding).index;
    c.ind_m = winding_index(ComplexSamples(h.k, c.m), opts.winding).index + c.origin_order;
    return c;
}

RiemannSolution solve_riemann(const RiemannCoefficients& coeffs, const RiemannOptions& opts)
{
    require_symmetric(coeffs.k);
    if (coeffs.ind_m != 0) {
        std::ostringstream msg;
        msg << "ind_m = " << coeffs.ind_m << ": the Riemann problem has nonzero index (bound states present); "
            << "inversion refused";
        throw HypothesisError(msg.str(), coeffs.ind_m);
    }
    const std::size_t n = coeffs.k.size();
    const std::size_t half = n / 2;
    const int P = coeffs.origin_order;

    // Reduced problem for A(k) = (k/(k+i))^P a(k), bounded and analytic above:
    //   A(k) = m(k) ((k-i)/(k+i))^P A(-k) + n(k) (k/(k+i))^P.
    std::vector<cplx> mr(n), nr(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = coeffs.k[j];
        mr[j] = coeffs.m[j] * std::pow((k - I) / (k + I), P);
        nr[j] = coeffs.n[j] * std::pow(k / (k + I), P);
    }

    // Continuous branch psi = log(-m_r), anchored near 0 at k_max and extended
    // to negative k by oddness (m_r(-k) = 1/m_r(k)).
    std::vector<cplx> psi(n);
    psi[n - 1] = std::log(-mr[n - 1]);
    for (std::size_t j = n - 1; j-- > half;)
        psi[j] = psi[j + 1] + std::log(mr[j] / mr[j + 1]);
    if (std::abs(psi[half].imag()) > M_PI / 2) {
        std::ostringstream msg;
        msg << "log m has no continuous odd branch through k = 0 (phase " << psi[half].imag() << ")";
        throw SolverError(msg.str());
    }
    for (std::size_t j = 0; j < half; ++j)
        psi[j] = -psi[mirror(j, n)];

    const CauchyTransform cauchy(coeffs.k);
    const std::vector<cplx> gamma_plus = cauchy.plus(psi);
    std::vector<cplx> x_plus(n), jump(n);
    for (std::size_t j = 0; j < n; ++j) {
        x_plus[j] = std::exp(gamma_plus[j]);
        jump[j] = nr[j] / x_plus[j] - 2.0;
    }
    // W = A/X above and -A(-z)/X below has jump n_r/X+ and tends to +1 / -1.
    const std::vector<cplx> w_plus = cauchy.plus(jump);

    RiemannSolution sol;
    std::vector<cplx> reduced(n), a(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = coeffs.k[j];
        reduced[j] = x_plus[j] * (1.0 + w_plus[j]);
        a[j] = std::pow((k + I) / k, P) * reduced[j];
    }
    for (std::size_t j = 0; j < n; ++j)
        sol.residual = std::max(sol.residual, std::abs(a[j] - coeffs.m[j] * a[mirror(j, n)] - coeffs.n[j]));

    std::vector<cplx> centered(n);
    for (std::size_t j = 0; j < n; ++j)
        centered[j] = reduced[j] - 1.0;
    const std::vector<cplx> below = cauchy.minus(centered);
    double ss = 0.0;
    for (cplx v : below)
        ss += std::norm(v);
    sol.analyticity_defect = std::sqrt(ss / static_cast<double>(n));
    sol.a = ComplexSamples(coeffs.k, std::move(a));

    if (!(sol.residual <= opts.residual_tol)) {
        std::ostringstream msg;
        msg << "Riemann residual " << sol.residual << " exceeds tolerance " << opts.residual_tol;
        throw AccuracyError(msg.str());
    }
    if (!(sol.analyticity_defect <= opts.analyticity_tol)) {
        std::ostringstream msg;
        msg << "recovered a(k) fails the upper-half-plane analyticity check (defect " << sol.analyticity_defect
            << ", tolerance " << opts.analyticity_tol << ")";
        throw AccuracyError(msg.str());
    }
    return sol;
}

RecoveredB recover_b(const ComplexSamples& a, const FullLineData& h, const RiemannOptions& opts)
{
    require_symmetric(a.k);
    if (a.k != h.k)
        throw ConfigError("recover_b: a and h live on different grids");
    require_nonzero(h.h1, h.k, opts.winding.zero_threshold, "h1");
    const std::size_t n = a.size();
    std::vector<cplx> b(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = mirror(j, n);
        b[j] = (h.h2[j] - a.values[r] * h.h1[r]) / h.h1[j];
    }
    RecoveredB out;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = mirror(j, n);
        const cplx defect = -b[r] * h.h2[j] + h.h2[r] * a.values[r] - h.h1[j];
        out.cross_check_residual = std::max(out.cross_check_residual, std::abs(defect));
    }
    out.b = ComplexSamples(a.k, std::move(b));
    if (!(out.cross_check_residual <= opts.cross_check_tol)) {
        std::ostringstream msg;
        msg << "cross-check residual for b(k) " << out.cross_check_residual << " exceeds tolerance "
            << opts.cross_check_tol;
        throw AccuracyError(msg.str());
    }
    return out;
}

ComplexSamples reflection(const ComplexSamples& a, const ComplexSamples& b, const RiemannOptions& opts)
{
    if (a.k != b.k)
        throw ConfigError("reflection: a and b live on different grids");
    std::vector<cplx> r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (std::abs(a.values[j]) < 1.0 - opts.modulus_tol) {
            std::ostringstream msg;
            msg << "|a(k)| = " << std::abs(a.values[j]) << " < 1 at k = " << a.k[j];
            throw AccuracyError(msg.str());
        }
        r[j] = b.values[j] / a.values[j];
        if (std::abs(r[j]) > 1.0 + opts.modulus_tol) {
            std::ostringstream msg;
            msg << "|r(k)| = " << std::abs(r[j]) << " > 1 at k = " << a.k[j];
            throw AccuracyError(msg.str());
        }
    }
    return ComplexSamples(a.k, std::move(r));
}

RecoveredSpectrum recover_spectrum(const BoundaryData& data, const RiemannOptions& opts)
{
    const FullLineData h = extend_symmetric(data_to_h(data, opts));
    RecoveredSpectrum out;
    out.coefficients = rh_coefficients(h, opts);
    RiemannSolution sol = solve_riemann(out.coefficients, opts);
    out.residual = sol.residual;
    out.analyticity_defect = sol.analyticity_defect;
    RecoveredB rb = recover_b(sol.a, h, opts);
    out.cross_check_residual = rb.cross_check_residual;
    out.a = std::move(sol.a);
    out.b = std::move(rb.b);
    for (std::size_t j = 0; j < out.a.size(); ++j)
        out.unitarity_defect =
            std::max(out.unitarity_defect, std::abs(std::norm(out.a.values[j]) - std::norm(out.b.values[j]) - 1.0));
    out.r = reflection(out.a, out.b, opts);
    return out;
}

}  // namespace plasma
