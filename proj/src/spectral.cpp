#include "plasma/spectral.hpp"

#include "plasma/parallel.hpp"
#include "plasma/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plasma {

namespace {

constexpr cplx I{0.0, 1.0};

// -d^2/dx^2 + q on the interior nodes of [-R, R]; constant off-diagonal -1/h^2
struct Tridiagonal {
    std::vector<double> x;
    std::vector<double> diag;
    double off = 0.0;

    Tridiagonal slice(std::size_t from) const
    {
        Tridiagonal t;
        t.x.assign(x.begin() + static_cast<std::ptrdiff_t>(from), x.end());
        t.diag.assign(diag.begin() + static_cast<std::ptrdiff_t>(from), diag.end());
        t.off = off;
        return t;
    }

    // number of eigenvalues below lambda (Sturm sequence of LDL^T pivots)
    std::size_t count_below(double lambda) const
    {
        std::size_t count = 0;
        double p = 1.0;
        const double e2 = off * off;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            p = diag[i] - lambda - (i == 0 ? 0.0 : e2 / p);
            if (p == 0.0)
                p = -1e-300;
            if (p < 0.0)
                ++count;
        }
        return count;
    }

    double lower_bound() const { return *std::min_element(diag.begin(), diag.end()) - 2.0 * std::abs(off); }

    // j-th smallest eigenvalue (j from 0) by bisection
    double eigenvalue(std::size_t j) const
    {
        double lo = lower_bound();
        double hi = *std::max_element(diag.begin(), diag.end()) + 2.0 * std::abs(off);
        for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(mid) > j)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    // eigenvector for a converged eigenvalue by inverse iteration, unit discrete L2 norm
    std::vector<double> eigenvector(double lambda) const
    {
        const std::size_t n = diag.size();
        const double h = x[1] - x[0];
        const double shift = lambda - 1e-10 * std::max(1.0, std::abs(lambda));
        std::vector<double> v(n, 1.0), c(n), d(n);
        for (int it = 0; it < 4; ++it) {
            // Thomas algorithm on (T - shift) w = v
            c[0] = off / (diag[0] - shift);
            d[0] = v[0] / (diag[0] - shift);
            for (std::size_t i = 1; i < n; ++i) {
                const double m = diag[i] - shift - off * c[i - 1];
                c[i] = off / m;
                d[i] = (v[i] - off * d[i - 1]) / m;
            }
            v[n - 1] = d[n - 1];
            for (std::size_t i = n - 1; i-- > 0;)
                v[i] = d[i] - c[i] * v[i + 1];
            double norm = 0.0;
            for (double e : v)
                norm += e * e;
            norm = std::sqrt(norm * h);
            for (double& e : v)
                e /= norm;
        }
        return v;
    }
};

Tridiagonal discretize(const Potential& q, const SpectralOptions& opts)
{
    if (opts.nodes < 5 || opts.nodes % 2 == 0)
        throw ConfigError("spectral grid needs an odd number (>= 5) of interior nodes so that x = 0 is a node");
    if (!(opts.box_radius > 1.0))
        throw ConfigError("spectral box must contain the support [-1, 1]");
    const auto n = static_cast<std::size_t>(opts.nodes);
    const double R = opts.box_radius;
    const double h = 2.0 * R / static_cast<double>(n + 1);
    Tridiagonal t;
    t.x.resize(n);
    t.diag.resize(n);
    t.off = -1.0 / (h * h);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -R + static_cast<double>(i + 1) * h;
        t.x[i] = x;
        // the cell average keeps second order across jumps of q
        t.diag[i] = 2.0 / (h * h) + q.integral(x - 0.5 * h, x + 0.5 * h) / h;
    }
    return t;
}

cplx derivative_of_a(const Potential& q, cplx k, const JostOptions& jo)
{
    const double d = 1e-3 * std::max(0.1, std::abs(k));
    auto a = [&](double s) { return transition(q, k + s, jo).a; };
    return (-a(2 * d) + 8.0 * a(d) - 8.0 * a(-d) + a(-2 * d)) / (12.0 * d);
}

// Newton on a(k) from the guess ik, with step halving on |a|
cplx refine_zero(const Potential& q, double kappa, const SpectralOptions& opts)
{
    cplx k = I * kappa;
    cplx ak = transition(q, k, opts.jost).a;
    for (int it = 0; it < opts.newton_max_iter; ++it) {
        const cplx step = -ak / derivative_of_a(q, k, opts.jost);
        double t = 1.0;
        cplx next = k + step;
        cplx an = transition(q, next, opts.jost).a;
        for (int h = 0; h < 30 && std::abs(an) >= std::abs(ak) && std::abs(ak) > 0.0; ++h) {
            t *= 0.5;
            next = k + t * step;
            an = transition(q, next, opts.jost).a;
        }
        const bool done = std::abs(t * step) <= opts.newton_tol * std::abs(k);
        k = next;
        ak = an;
        if (done)
            return k;
    }
    if (std::abs(ak) > 1e-8) {
        std::ostringstream msg;
        msg << "Newton refinement of the zero of a near i*" << kappa << " did not converge (|a| = " << std::abs(ak) << ")";
        throw SolverError(msg.str());
    }
    return k;
}

}  // namespace

LineSpectrum count_negative_eigenvalues_line(const Potential& q, const SpectralOptions& opts)
{
    const Tridiagonal t = discretize(q, opts);
    const std::size_t below = t.count_below(-opts.eps_spec);
    const std::size_t nonpositive = t.count_below(opts.eps_spec);
    if (below != nonpositive) {
        std::ostringstream msg;
        msg << "eigenvalue within " << opts.eps_spec << " of zero; bound-state count is indeterminate";
        throw SolverError(msg.str());
    }
    LineSpectrum out;
    out.J = static_cast<int>(below);
    for (std::size_t j = 0; j < below; ++j) {
        const double lambda = t.eigenvalue(j);
        out.eigenvalues.push_back(lambda);
        out.bound_k.push_back(std::sqrt(-lambda));
    }
    return out;
}

KappaPair kappa_pair(const Potential& q, const SpectralOptions& opts)
{
    const Tridiagonal line = discretize(q, opts);
    const Tridiagonal half = line.slice(line.x.size() / 2 + 1);
    return {half.eigenvalue(0), line.eigenvalue(0)};
}

JostIndices jost_indices(const ScatteringCoefficients& sc, const SpectralOptions& opts)
{
    return {winding_index(extend_conjugate(sc.grid, sc.f0), opts.winding).index,
            winding_index(extend_conjugate(sc.grid, sc.g0), opts.winding).index};
}

JostIndices jost_indices(const Potential& q, const KGrid& grid, const SpectralOptions& opts)
{
    return jost_indices(scattering_coefficients(q, grid), opts);
}

int index_of_a(const ScatteringCoefficients& sc, const SpectralOptions& opts)
{
    return winding_index(extend_conjugate(sc.grid, sc.a), opts.winding).index;
}

std::vector<NormingConstant> norming_constants(const Potential& q, const std::vector<double>& bound_k,
                                               const SpectralOptions& opts)
{
    for (double k : bound_k)
        if (!(k > 0.0))
            throw ConfigError("norming_constants: bound-state wavenumbers must be positive");

    std::vector<cplx> roots(bound_k.size());
    parallel_for(bound_k.size(), [&](std::size_t j) { roots[j] = refine_zero(q, bound_k[j], opts); });

    const Tridiagonal line = discretize(q, opts);
    std::vector<NormingConstant> out(bound_k.size());
    parallel_for(bound_k.size(), [&](std::size_t j) {
        const cplx k = roots[j];
        NormingConstant& nc = out[j];
        nc.k = k.imag();
        const Transition tr = transition(q, k, opts.jost);
        nc.a_residual = std::abs(tr.a);
        const double b_scale = std::abs(transition(q, k + 0.1 * nc.k, opts.jost).b);
        if (std::abs(tr.b) < 1e-8 * std::max(1.0, b_scale)) {
            std::ostringstream msg;
            msg << "b(ik) vanishes at k = " << nc.k << "; the refined point is not a bound state";
            throw SolverError(msg.str());
        }
        const cplx s = -I * tr.b / derivative_of_a(q, k, opts.jost);
        nc.s = s.real();
        nc.imag_part = std::abs(s.imag());

        // residue of r = b/a from the contour integral over a small circle
        double rho = 0.25 * nc.k;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (i != j)
                rho = std::min(rho, 0.4 * std::abs(roots[i] - k));
        constexpr int M = 128;
        cplx res = 0.0;
        for (int m = 0; m < M; ++m) {
            const cplx e = std::polar(1.0, 2.0 * M_PI * m / M);
            const Transition t = transition(q, k + rho * e, opts.jost);
            res += t.b / t.a * e;
        }
        res *= rho / M;
        nc.s_residue = (-I * res).real();

        // 1 / \int g^2 with g proportional to the eigenvector; match at the peak of |v|
        const std::size_t idx = static_cast<std::size_t>(j);
        const double lambda = line.eigenvalue(idx);
        const std::vector<double> v = line.eigenvector(lambda);
        std::size_t peak = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(line.x[i]) <= 1.0 && std::abs(v[i]) > std::abs(v[peak]))
                peak = i;
        const double g_peak = jost_at(q, k, Side::from_left, line.x[peak], opts.jost).value.real();
        nc.s_eigenvector = v[peak] * v[peak] / (g_peak * g_peak);
    });

    for (const auto& nc : out) {
        std::ostringstream msg;
        if (nc.imag_part > opts.imag_tol * std::abs(nc.s))
            msg << "norming constant at k = " << nc.k << " is not real (imaginary part " << nc.imag_part << ")";
        else if (!(nc.s > 0.0))
            msg << "norming constant at k = " << nc.k << " is not positive (" << nc.s << ")";
        else if (std::abs(nc.s - nc.s_residue) > opts.residue_tol * std::abs(nc.s))
            msg << "norming constant " << nc.s << " disagrees with the residue estimate " << nc.s_residue;
        if (!msg.str().empty())
            throw SolverError(msg.str());
    }
    return out;
}

SpectrumReport diagnose(const Potential& q, const KGrid& grid, const SpectralOptions& opts,
                        const ForwardOptions& forward)
{
    const ScatteringCoefficients sc = scattering_coefficients(q, grid, forward);
    const LineSpectrum line = count_negative_eigenvalues_line(q, opts);
    const KappaPair kp = kappa_pair(q, opts);
    const JostIndices ji = jost_indices(sc, opts);

    RiemannOptions ro;
    ro.winding = opts.winding;
    const RiemannCoefficients rc = rh_coefficients(extend_symmetric(data_to_h(boundary_data(sc), ro)), ro);

    SpectrumReport rep;
    rep.J = line.J;
    rep.kappa0 = kp.kappa0;
    rep.kappa1 = kp.kappa1;
    rep.ind_a = index_of_a(sc, opts);
    rep.ind_f = ji.ind_f;
    rep.ind_g = ji.ind_g;
    rep.ind_m = rc.ind_m;
    rep.bound_k = line.bound_k;
    if (line.J > 0)
        rep.norming = norming_constants(q, line.bound_k, opts);
    return rep;
}

}  // namespace plasma
