#include "plasma/forward.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace plasma;

namespace {

const KGrid& default_grid()
{
    static const KGrid g = build_kgrid(0.05, 60.0, 4096);
    return g;
}

Potential well(double q0) { return sample_potential("square_well", {{"q0", q0}}, 401); }

// an asymmetric profile, so that left and right are distinguishable
Potential lopsided()
{
    std::vector<double> s(401);
    for (int i = 0; i < 401; ++i) {
        const double x = -1.0 + i * 0.005;
        s[i] = 1.5 * std::exp(-20.0 * (x - 0.4) * (x - 0.4)) * (1.0 - x * x);
    }
    return Potential(s);
}

}  // namespace

TEST_CASE("zero potential gives the free Green's function")
{
    const BoundaryData d = boundary_data(sample_potential("zero", {}, 101), default_grid());
    double err = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
        const double k = d.grid[i];
        const cplx free = cplx(0, 1) * std::exp(cplx(0, k)) / (2.0 * k);
        err = std::max({err, std::abs(d.u_plus[i] - free), std::abs(d.u_minus[i] - free)});
    }
    CHECK(err <= 1e-12);
}

TEST_CASE("square well matches plane-wave matching")
{
    for (double q0 : {1.0, -2.0, 7.5}) {
        CAPTURE(q0);
        const oracle::SquareWell w{q0};
        const ScatteringCoefficients sc = scattering_coefficients(well(q0), default_grid());
        const BoundaryData d = boundary_data(sc);
        double ea = 0.0, eb = 0.0, eu = 0.0;
        for (std::size_t i = 0; i < sc.grid.size(); i += 7) {
            const double k = sc.grid[i];
            ea = std::max(ea, std::abs(sc.a[i] - w.a(k)) / std::abs(w.a(k)));
            eb = std::max(eb, std::abs(sc.b[i] - w.b(k)));
            eu = std::max(eu, std::abs(d.u_plus[i] - w.u_plus(k)) + std::abs(d.u_minus[i] - w.u_minus(k)));
        }
        CHECK(ea <= 1e-10);
        CHECK(eb <= 1e-10);
        CHECK(eu <= 1e-10);
    }
}

TEST_CASE("unitarity |a|^2 = 1 + |b|^2 on the default grid")
{
    const std::vector<Potential> qs{sample_potential("zero", {}, 401), well(1.0),
                                    sample_potential("bump", {{"c", 2.0}}, 401), well(-2.0), lopsided()};
    for (const auto& q : qs) {
        const ScatteringCoefficients sc = scattering_coefficients(q, default_grid());
        double defect = 0.0;
        for (std::size_t i = 0; i < sc.grid.size(); ++i)
            defect = std::max(defect, std::abs(std::norm(sc.a[i]) - 1.0 - std::norm(sc.b[i])));
        CHECK(defect < 1e-8);
        CHECK(sc.unitarity_defect == doctest::Approx(defect).epsilon(1e-6));
    }
}

TEST_CASE("Wronskian is constant in x")
{
    const Potential q = lopsided();
    for (double k : {0.05, 1.0, 25.0}) {
        const WronskianValue w = wronskian(solve_jost(q, k, Side::from_right), solve_jost(q, k, Side::from_left));
        CHECK(w.deviation <= 1e-12 * std::max(1.0, std::abs(w.value)));
    }
}

TEST_CASE("reality: a(-k) = conj a(k), b(-k) = conj b(k)")
{
    const Potential q = lopsided();
    for (double k : {0.1, 2.3, 17.0}) {
        const Transition p = transition(q, k);
        const Transition m = transition(q, -k);
        CHECK(std::abs(m.a - std::conj(p.a)) <= 1e-12 * std::abs(p.a));
        CHECK(std::abs(m.b - std::conj(p.b)) <= 1e-12);
    }
}

TEST_CASE("transition coefficients at complex k")
{
    const oracle::SquareWell w{-2.0};
    for (cplx k : {cplx(0.3, 0.7), cplx(-1.0, 2.0), cplx(0.0, 1.0)}) {
        const Transition t = transition(well(-2.0), k);
        CHECK(std::abs(t.a - w.a(k)) <= 1e-10 * std::max(1.0, std::abs(w.a(k))));
        CHECK(std::abs(t.b - w.b(k)) <= 1e-10 * std::max(1.0, std::abs(w.b(k))));
    }
}

TEST_CASE("mirroring q swaps u(-1,k) and u(1,k)")
{
    const Potential q = lopsided();
    std::vector<double> rev(q.samples().rbegin(), q.samples().rend());
    const Potential qm(rev);
    const KGrid g = build_kgrid(0.05, 30.0, 512);
    const BoundaryData d = boundary_data(q, g);
    const BoundaryData dm = boundary_data(qm, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(d.u_plus[i] - dm.u_minus[i]) <= 1e-12 * std::abs(d.u_plus[i]));
        CHECK(std::abs(d.u_minus[i] - dm.u_plus[i]) <= 1e-12 * std::abs(d.u_minus[i]));
    }
}

TEST_CASE("connection identities at the origin")
{
    // [f, g] = -2ik a and f(0,k) = a g(0,-k) + b g(0,k)
    const Potential q = lopsided();
    for (double k : {0.2, 3.0, 40.0}) {
        const OriginValues o = origin_values(q, k);
        const cplx W = o.f.value * o.g.derivative - o.f.derivative * o.g.value;
        CHECK(std::abs(W - cplx(0, -2.0 * k) * o.a) <= 1e-11 * std::abs(W));
        const JostPoint gm = jost_at(q, -k, Side::from_left, 0.0);
        CHECK(std::abs(o.f.value - (o.a * gm.value + o.b * o.g.value)) <= 1e-11);
        CHECK(std::abs(o.f.derivative - (o.a * gm.derivative + o.b * o.g.derivative)) <= 1e-10 * k);
    }
}

TEST_CASE("large-k behaviour")
{
    // a -> 1 with a - 1 = O(1/k); b decays at least as fast
    const ScatteringCoefficients sc = scattering_coefficients(well(1.0), build_kgrid(10.0, 200.0, 64));
    for (std::size_t i = 0; i < sc.grid.size(); ++i) {
        const double k = sc.grid[i];
        CHECK(std::abs(sc.a[i] - 1.0) * k <= 1.5);
        CHECK(std::abs(sc.b[i]) * k <= 1.5);
    }
}

TEST_CASE("refinement leaves smooth-potential results unchanged")
{
    const Potential q = sample_potential("bump", {{"c", 2.0}}, 401);
    JostOptions fine;
    fine.substeps = 8;
    for (double k : {0.05, 5.0, 60.0}) {
        const Transition c = transition(q, k);
        const Transition f = transition(q, k, fine);
        CHECK(std::abs(c.a - f.a) <= 1e-8);
        CHECK(std::abs(c.b - f.b) <= 1e-8);
    }
}
