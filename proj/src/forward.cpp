#include "plasma/forward.hpp"

#include "plasma/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace plasma {

namespace {

constexpr cplx I{0.0, 1.0};

struct State {
    cplx w;
    cplx dw;
};

void check_k(cplx k, const JostOptions& opts)
{
    if (k == cplx{0.0, 0.0})
        throw SolverError("Jost solutions are not normalized at k = 0");
    if (std::abs(k.imag()) > opts.max_abs_imag_k) {
        std::ostringstream msg;
        msg << "|Im k| = " << std::abs(k.imag()) << " exceeds the supported bound " << opts.max_abs_imag_k;
        throw SolverError(msg.str());
    }
    if (opts.substeps < 1)
        throw ConfigError("substeps must be positive");
}

State seed(cplx k, Side side)
{
    const cplx e = std::exp(I * k);
    if (side == Side::from_right)
        return {e, I * k * e};
    return {e, -I * k * e};
}

// One fourth-order Magnus step for y' = A(x) y, A = [[0, 1], [q(x) - k^2, 0]].
// The step must not cross a potential node, so q is linear on it and the two
// Gauss samples are exact. When q is constant on the step the update is exact.
void magnus_step(const Potential& q, cplx k2, double x0, double h, State& s)
{
    static const double c = std::sqrt(3.0) / 6.0;
    const cplx v1 = q(x0 + (0.5 - c) * h) - k2;
    const cplx v2 = q(x0 + (0.5 + c) * h) - k2;
    const cplx vbar = 0.5 * (v1 + v2);
    const cplx alpha = (std::sqrt(3.0) / 12.0) * h * h * (v1 - v2);
    // Omega = [[alpha, h], [h vbar, -alpha]], Omega^2 = sigma^2 I
    const cplx sigma2 = alpha * alpha + h * h * vbar;
    const cplx sigma = std::sqrt(sigma2);
    cplx ch;
    cplx shc;  // sinh(sigma)/sigma
    if (std::abs(sigma) < 1e-4) {
        ch = 1.0 + sigma2 / 2.0 + sigma2 * sigma2 / 24.0;
        shc = 1.0 + sigma2 / 6.0 + sigma2 * sigma2 / 120.0;
    } else {
        ch = std::cosh(sigma);
        shc = std::sinh(sigma) / sigma;
    }
    const cplx w = (ch + shc * alpha) * s.w + shc * h * s.dw;
    const cplx dw = shc * h * vbar * s.w + (ch - shc * alpha) * s.dw;
    s.w = w;
    s.dw = dw;
}

void advance(const Potential& q, cplx k2, double from, double to, int substeps, State& s)
{
    if (from == to)
        return;
    const double h = (to - from) / substeps;
    for (int j = 0; j < substeps; ++j)
        magnus_step(q, k2, from + j * h, h, s);
}

// Walks from the seed edge to x, splitting at every potential node.
State propagate_to(const Potential& q, cplx k, Side side, double x, int substeps)
{
    State s = seed(k, side);
    const cplx k2 = k * k;
    const std::size_t n = q.size();
    if (side == Side::from_right) {
        double pos = 1.0;
        for (std::size_t i = n - 1; i-- > 0;) {
            const double next = q.node(i);
            if (next <= x) {
                advance(q, k2, pos, x, substeps, s);
                return s;
            }
            advance(q, k2, pos, next, substeps, s);
            pos = next;
        }
        advance(q, k2, pos, x, substeps, s);
    } else {
        double pos = -1.0;
        for (std::size_t i = 1; i < n; ++i) {
            const double next = q.node(i);
            if (next >= x) {
                advance(q, k2, pos, x, substeps, s);
                return s;
            }
            advance(q, k2, pos, next, substeps, s);
            pos = next;
        }
        advance(q, k2, pos, x, substeps, s);
    }
    return s;
}

std::size_t origin_node(const JostField& f)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.x.size(); ++i)
        if (std::abs(f.x[i]) < std::abs(f.x[best]))
            best = i;
    return best;
}

cplx bracket(const JostPoint& f, const JostPoint& g)
{
    return f.value * g.derivative - f.derivative * g.value;
}

}  // namespace

JostField solve_jost(const Potential& q, cplx k, Side side, const JostOptions& opts)
{
    check_k(k, opts);
    const std::size_t n = q.size();
    JostField out{std::vector<double>(n), std::vector<cplx>(n), std::vector<cplx>(n), k, side};
    for (std::size_t i = 0; i < n; ++i)
        out.x[i] = q.node(i);
    const cplx k2 = k * k;
    State s = seed(k, side);
    if (side == Side::from_right) {
        out.value[n - 1] = s.w;
        out.derivative[n - 1] = s.dw;
        for (std::size_t i = n - 1; i-- > 0;) {
            advance(q, k2, out.x[i + 1], out.x[i], opts.substeps, s);
            out.value[i] = s.w;
            out.derivative[i] = s.dw;
        }
    } else {
        out.value[0] = s.w;
        out.derivative[0] = s.dw;
        for (std::size_t i = 1; i < n; ++i) {
            advance(q, k2, out.x[i - 1], out.x[i], opts.substeps, s);
            out.value[i] = s.w;
            out.derivative[i] = s.dw;
        }
    }
    return out;
}

JostPoint jost_at(const Potential& q, cplx k, Side side, double x, const JostOptions& opts)
{
    check_k(k, opts);
    if (x < Potential::x_min || x > Potential::x_max)
        throw ConfigError("jost_at: x must lie in [-1, 1]");
    const State s = propagate_to(q, k, side, x, opts.substeps);
    return {s.w, s.dw};
}

WronskianValue wronskian(const JostField& wf, const JostField& wg)
{
    if (wf.k != wg.k)
        throw ConfigError("wronskian: fields were computed at different k");
    if (wf.x != wg.x)
        throw ConfigError("wronskian: fields live on different grids");
    if (wf.side == wg.side)
        throw ConfigError("wronskian: fields must come from opposite sides");
    const JostField& f = wf.side == Side::from_right ? wf : wg;
    const JostField& g = wf.side == Side::from_right ? wg : wf;
    auto at = [&](std::size_t i) {
        return bracket({f.value[i], f.derivative[i]}, {g.value[i], g.derivative[i]});
    };
    const std::size_t mid = origin_node(f);
    const cplx w0 = at(mid);
    const std::size_t n = f.x.size();
    double dev = 0.0;
    for (std::size_t i : {n / 4, n / 2, (3 * n) / 4})
        dev = std::max(dev, std::abs(at(i) - w0));
    return {w0, dev};
}

OriginValues origin_values(const Potential& q, cplx k, const JostOptions& opts)
{
    const JostPoint f = jost_at(q, k, Side::from_right, 0.0, opts);
    const JostPoint g = jost_at(q, k, Side::from_left, 0.0, opts);
    const JostPoint gm = jost_at(q, -k, Side::from_left, 0.0, opts);
    const cplx a = bracket(f, g) / (-2.0 * I * k);
    const cplx b = bracket(f, gm) / (2.0 * I * k);
    return {f, g, a, b};
}

Transition transition(const Potential& q, cplx k, const JostOptions& opts)
{
    const OriginValues o = origin_values(q, k, opts);
    return {o.a, o.b};
}

ScatteringCoefficients scattering_coefficients(const Potential& q, const KGrid& grid, const ForwardOptions& opts)
{
    // Substep doubling at the hardest (largest) wavenumbers until a(k) settles.
    JostOptions jo = opts.jost;
    const std::array<double, 2> probes{grid.back(), grid[grid.size() / 2]};
    auto probe_values = [&](const JostOptions& o) {
        std::array<cplx, 2> v{};
        for (std::size_t i = 0; i < probes.size(); ++i)
            v[i] = transition(q, probes[i], o).a;
        return v;
    };
    auto current = probe_values(jo);
    while (jo.substeps < opts.max_substeps) {
        JostOptions finer = jo;
        finer.substeps *= 2;
        const auto next = probe_values(finer);
        double change = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i)
            change = std::max(change, std::abs(next[i] - current[i]));
        if (change < opts.refine_tol)
            break;
        jo = finer;
        current = next;
    }

    const std::size_t n = grid.size();
    ScatteringCoefficients sc{grid, std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n),
                              std::vector<cplx>(n), 0.0, jo.substeps};
    parallel_for(n, [&](std::size_t i) {
        const OriginValues o = origin_values(q, grid[i], jo);
        sc.a[i] = o.a;
        sc.b[i] = o.b;
        sc.f0[i] = o.f.value;
        sc.g0[i] = o.g.value;
    });
    for (std::size_t i = 0; i < n; ++i)
        sc.unitarity_defect = std::max(sc.unitarity_defect, std::abs(std::norm(sc.a[i]) - std::norm(sc.b[i]) - 1.0));
    if (!(sc.unitarity_defect <= opts.unitarity_tol)) {
        std::ostringstream msg;
        msg << "unitarity defect " << sc.unitarity_defect << " exceeds tolerance " << opts.unitarity_tol;
        throw SolverError(msg.str());
    }
    return sc;
}

BoundaryData boundary_data(const ScatteringCoefficients& sc)
{
    const std::size_t n = sc.grid.size();
    std::vector<cplx> um(n), up(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = sc.grid[i];
        const cplx e = std::exp(I * k);  // f(1,k) = g(-1,k) = e^{ik}
        const cplx w = -2.0 * I * k * sc.a[i];  // [f, g]
        up[i] = sc.g0[i] * e / w;
        um[i] = sc.f0[i] * e / w;
    }
    return BoundaryData(sc.grid, std::move(um), std::move(up));
}

BoundaryData boundary_data(const Potential& q, const KGrid& grid, const ForwardOptions& opts)
{
    return boundary_data(scattering_coefficients(q, grid, opts));
}

}  // namespace plasma
